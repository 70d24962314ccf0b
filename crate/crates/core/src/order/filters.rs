//! Filter (up-set) lattices and the Birkhoff correspondence.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::lattice::{join_irreducibles, Construction, Lattice};
use super::{OrderError, Poset};

pub const DEFAULT_FILTER_LIMIT: usize = 1_000_000;

/// Walks the elements from the top down; an element may join the current
/// up-set only when all of its upper covers already have.
fn walk_filters(p: &Poset, limit: usize, visit: &mut dyn FnMut(&FixedBitSet)) -> bool {
    let mut order = p.linear_extension();
    order.reverse();
    let mut current = FixedBitSet::with_capacity(p.len());
    let mut count = 0usize;

    fn rec(
        p: &Poset,
        order: &[usize],
        k: usize,
        current: &mut FixedBitSet,
        count: &mut usize,
        limit: usize,
        visit: &mut dyn FnMut(&FixedBitSet),
    ) -> bool {
        if k == order.len() {
            *count += 1;
            if *count > limit {
                return false;
            }
            visit(current);
            return true;
        }
        let x = order[k];
        if !rec(p, order, k + 1, current, count, limit, visit) {
            return false;
        }
        if p.upper_covers(x).iter().all(|&u| current.contains(u)) {
            current.insert(x);
            let ok = rec(p, order, k + 1, current, count, limit, visit);
            current.set(x, false);
            return ok;
        }
        true
    }

    rec(p, &order, 0, &mut current, &mut count, limit, visit)
}

/// Number of filters of `p`, or `None` once it exceeds `limit`.
pub fn count_filters(p: &Poset, limit: usize) -> Option<usize> {
    let mut n = 0;
    walk_filters(p, limit, &mut |_| n += 1).then_some(n)
}

/// All filters, largest first, ties broken by member list.
pub fn enumerate_filters(p: &Poset, limit: usize) -> Result<Vec<FixedBitSet>, OrderError> {
    let mut out = Vec::new();
    if !walk_filters(p, limit, &mut |f| out.push(f.clone())) {
        return Err(OrderError::TooLarge { what: "filter lattice", limit });
    }
    out.sort_by(|a, b| b.count_ones(..).cmp(&a.count_ones(..)).then_with(|| a.ones().cmp(b.ones())));
    Ok(out)
}

fn filter_label(p: &Poset, f: &FixedBitSet) -> String {
    let members: Vec<&str> = f.ones().map(|x| p.label(x)).collect();
    format!("{{{}}}", members.join(","))
}

/// Filter lattice under reverse inclusion: the bottom is the whole poset,
/// the top is the empty filter.
pub fn filters(p: &Poset) -> Result<Lattice, OrderError> {
    filters_bounded(p, DEFAULT_FILTER_LIMIT)
}

pub fn filters_bounded(p: &Poset, limit: usize) -> Result<Lattice, OrderError> {
    let sets = enumerate_filters(p, limit)?;
    let mut covers = Vec::new();
    let index: HashMap<&FixedBitSet, usize> = sets.iter().enumerate().map(|(i, f)| (f, i)).collect();
    for (i, f) in sets.iter().enumerate() {
        for x in f.ones() {
            if p.lower_covers(x).iter().any(|&y| f.contains(y)) {
                continue;
            }
            let mut g = f.clone();
            g.set(x, false);
            covers.push((i, index[&g]));
        }
    }
    let labels = sets.iter().map(|f| filter_label(p, f)).collect();
    let poset = Poset::from_relation(labels, &covers)?;
    Ok(Lattice::new_unchecked(poset, Some(Construction::Filters { base: p.clone(), sets })))
}

/// Join-irreducibles of `l` with the induced order, plus the lattice index
/// of each. When `l` is a filter lattice, each join-irreducible `P \ ↓y` is
/// labelled by `y`.
pub fn join_irreducible_poset(l: &Lattice) -> (Poset, Vec<usize>) {
    let j = join_irreducibles(l);
    let mut jp = l.poset().induced(&j);
    if let Some(Construction::Filters { base, sets }) = l.construction() {
        let labels: Vec<String> = j
            .iter()
            .map(|&f| {
                let lower = l.poset().lower_covers(f)[0];
                let mut diff = sets[lower].clone();
                diff.difference_with(&sets[f]);
                let gen = diff.ones().next().expect("cover removes one element");
                base.label(gen).to_string()
            })
            .collect();
        jp = jp.with_labels(labels).expect("generators are distinct");
    }
    (jp, j)
}

/// Verified Birkhoff isomorphism `x ↦ { j ∈ J : j ≰ x }` from `l` onto the
/// filter lattice of its join-irreducibles.
#[derive(Clone, Debug)]
pub struct BirkhoffMap {
    pub join_irreducibles: Poset,
    /// Lattice index of each element of `join_irreducibles`.
    pub embedding: Vec<usize>,
    pub filter_lattice: Lattice,
    /// `image[x]` is the index in `filter_lattice` of the filter assigned to `x`.
    pub image: Vec<usize>,
}

pub fn birkhoff_map(l: &Lattice) -> Result<BirkhoffMap, OrderError> {
    let (jp, j) = join_irreducible_poset(l);
    let limit = l.len();
    let flat = match filters_bounded(&jp, limit) {
        Ok(f) if f.len() == l.len() => f,
        _ => return Err(OrderError::NotDistributive),
    };
    let sets = enumerate_filters(&jp, limit)?;
    let index: HashMap<&FixedBitSet, usize> = sets.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut image = Vec::with_capacity(l.len());
    let mut hit = vec![false; l.len()];
    for x in 0..l.len() {
        let mut f = FixedBitSet::with_capacity(j.len());
        for (k, &jx) in j.iter().enumerate() {
            if !l.leq(jx, x) {
                f.insert(k);
            }
        }
        let Some(&i) = index.get(&f) else {
            return Err(OrderError::NotDistributive);
        };
        if std::mem::replace(&mut hit[i], true) {
            return Err(OrderError::NotDistributive);
        }
        image.push(i);
    }
    // enumerate_filters and filters_bounded share the same ordering.
    for x in 0..l.len() {
        for y in 0..l.len() {
            if l.leq(x, y) != flat.leq(image[x], image[y]) {
                return Err(OrderError::NotDistributive);
            }
        }
    }
    Ok(BirkhoffMap { join_irreducibles: jp, embedding: j, filter_lattice: flat, image })
}

/// The Birkhoff poset `J(l)`, after verifying `l ≅ filters(J(l))`.
pub fn birkhoff(l: &Lattice) -> Result<Poset, OrderError> {
    birkhoff_map(l).map(|m| m.join_irreducibles)
}
