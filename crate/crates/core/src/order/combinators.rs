//! Cartesian product, linear sum and vertical sum of lattices.
//!
//! Linear sum stacks the second lattice strictly above the first (ordinal
//! sum). Vertical sum does the same but glues the top of the first lattice
//! to the bottom of the second. Results remember their operands so that
//! the screen can propagate verdicts through them.

use super::lattice::{Construction, Lattice};
use super::Poset;

pub fn product(l1: &Lattice, l2: &Lattice) -> Lattice {
    let p = l1.poset().product(l2.poset(), "|");
    let labels =
        (0..l1.len() * l2.len()).map(|i| format!("({},{})", l1.label(i / l2.len()), l2.label(i % l2.len()))).collect();
    let p = p.with_labels(labels).expect("pair labels are distinct");
    Lattice::new_unchecked(p, None).with_construction(Construction::Product(l1.clone(), l2.clone()))
}

pub fn linear_sum(l1: &Lattice, l2: &Lattice) -> Lattice {
    let n1 = l1.len();
    let mut labels: Vec<String> = l1.poset().labels().iter().map(|s| format!("0:{s}")).collect();
    labels.extend(l2.poset().labels().iter().map(|s| format!("1:{s}")));
    let mut rel: Vec<(usize, usize)> = l1.poset().covers();
    rel.extend(l2.poset().covers().into_iter().map(|(a, b)| (a + n1, b + n1)));
    rel.push((l1.top(), l2.bottom() + n1));
    let p = Poset::from_relation(labels, &rel).expect("ordinal sum is a poset");
    Lattice::new_unchecked(p, None).with_construction(Construction::LinearSum(l1.clone(), l2.clone()))
}

pub fn vertical_sum(l1: &Lattice, l2: &Lattice) -> Lattice {
    let n1 = l1.len();
    // Elements of l2 other than its bottom follow those of l1.
    let rest: Vec<usize> = (0..l2.len()).filter(|&b| b != l2.bottom()).collect();
    let pos = |b: usize| {
        if b == l2.bottom() {
            l1.top()
        } else {
            n1 + rest.iter().position(|&r| r == b).unwrap()
        }
    };
    let mut labels: Vec<String> = l1.poset().labels().iter().map(|s| format!("0:{s}")).collect();
    labels.extend(rest.iter().map(|&b| format!("1:{}", l2.label(b))));
    let mut rel: Vec<(usize, usize)> = l1.poset().covers();
    rel.extend(l2.poset().covers().into_iter().map(|(a, b)| (pos(a), pos(b))));
    let p = Poset::from_relation(labels, &rel).expect("glued sum is a poset");
    Lattice::new_unchecked(p, None).with_construction(Construction::VerticalSum(l1.clone(), l2.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{boolean_poset, chain, is_distributive, is_distributive_exhaustive, iso};

    fn lat(p: Poset) -> Lattice {
        Lattice::from_poset(p).unwrap()
    }

    #[test]
    fn sizes() {
        let a = lat(chain(3));
        let b = lat(boolean_poset(2));
        assert_eq!(product(&a, &b).len(), 12);
        assert_eq!(linear_sum(&a, &b).len(), 7);
        assert_eq!(vertical_sum(&a, &b).len(), 6);
    }

    #[test]
    fn results_are_distributive_lattices() {
        let a = lat(chain(3));
        let b = lat(boolean_poset(2));
        for l in [product(&a, &b), linear_sum(&a, &b), vertical_sum(&a, &b)] {
            let checked = Lattice::from_poset(l.poset().clone()).unwrap();
            assert!(is_distributive(&checked));
            assert!(is_distributive_exhaustive(&checked));
        }
    }

    #[test]
    fn vertical_sum_of_cubes() {
        let b3 = lat(boolean_poset(3));
        let v = vertical_sum(&b3, &b3);
        assert_eq!(v.len(), 15);
        assert!(is_distributive(&v));
        assert_eq!(v.label(b3.top()), "0:111");
        assert_eq!(v.poset().upper_covers(b3.top()).len(), 3);
        assert_eq!(v.construction().unwrap().name(), "vertical-sum");
    }

    #[test]
    fn product_of_two_chains_is_boolean() {
        let c2 = lat(chain(2));
        let b2 = product(&c2, &c2);
        let b4 = product(&b2, &b2);
        assert!(iso(b4.poset(), &boolean_poset(4)).unwrap().is_some());
    }

    #[test]
    fn linear_sum_of_chains_is_chain() {
        let l = linear_sum(&lat(chain(2)), &lat(chain(3)));
        assert!(iso(l.poset(), &chain(5)).unwrap().is_some());
    }
}
