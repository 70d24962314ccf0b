use fixedbitset::FixedBitSet;

use super::{OrderError, Poset};

pub const DEFAULT_ISO_LIMIT: usize = 10_000;

type Signature = (usize, usize, usize, usize);

fn signature(p: &Poset, a: usize) -> Signature {
    (p.up_set(a).count_ones(..), p.down_set(a).count_ones(..), p.upper_covers(a).len(), p.lower_covers(a).len())
}

/// Order isomorphism `p → q` as `map[i] = image of i`, if one exists.
pub fn iso(p: &Poset, q: &Poset) -> Result<Option<Vec<usize>>, OrderError> {
    iso_bounded(p, q, DEFAULT_ISO_LIMIT)
}

pub fn iso_bounded(p: &Poset, q: &Poset, limit: usize) -> Result<Option<Vec<usize>>, OrderError> {
    if p.len() > limit || q.len() > limit {
        return Err(OrderError::TooLarge { what: "isomorphism search", limit });
    }
    if p.len() != q.len() || p.cover_count() != q.cover_count() {
        return Ok(None);
    }
    let sp: Vec<Signature> = (0..p.len()).map(|a| signature(p, a)).collect();
    let sq: Vec<Signature> = (0..q.len()).map(|a| signature(q, a)).collect();
    let (mut a, mut b) = (sp.clone(), sq.clone());
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Ok(None);
    }
    let order = p.linear_extension();
    let mut map = vec![usize::MAX; p.len()];
    let mut used = FixedBitSet::with_capacity(q.len());

    #[allow(clippy::too_many_arguments)]
    fn extend(
        k: usize,
        order: &[usize],
        p: &Poset,
        q: &Poset,
        sp: &[Signature],
        sq: &[Signature],
        map: &mut [usize],
        used: &mut FixedBitSet,
    ) -> bool {
        let Some(&x) = order.get(k) else {
            return true;
        };
        for y in 0..q.len() {
            if used.contains(y) || sp[x] != sq[y] {
                continue;
            }
            let consistent = order[..k].iter().all(|&a| {
                let fa = map[a];
                p.leq(a, x) == q.leq(fa, y) && p.leq(x, a) == q.leq(y, fa)
            });
            if !consistent {
                continue;
            }
            map[x] = y;
            used.insert(y);
            if extend(k + 1, order, p, q, sp, sq, map, used) {
                return true;
            }
            used.set(y, false);
            map[x] = usize::MAX;
        }
        false
    }

    Ok(extend(0, &order, p, q, &sp, &sq, &mut map, &mut used).then_some(map))
}

/// `map` is a bijection that preserves and reflects the order.
pub fn is_isomorphism(p: &Poset, q: &Poset, map: &[usize]) -> bool {
    if p.len() != q.len() || map.len() != p.len() {
        return false;
    }
    let mut seen = vec![false; q.len()];
    for &y in map {
        if y >= q.len() || std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    (0..p.len()).all(|a| (0..p.len()).all(|b| p.leq(a, b) == q.leq(map[a], map[b])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{antichain, boolean_poset, chain};

    #[test]
    fn self_iso_exists() {
        let p = boolean_poset(3);
        let m = iso(&p, &p).unwrap().unwrap();
        assert!(is_isomorphism(&p, &p, &m));
    }

    #[test]
    fn chain_is_not_antichain() {
        assert!(iso(&chain(3), &antichain(3)).unwrap().is_none());
    }

    #[test]
    fn dual_chain_is_chain() {
        let c = chain(5);
        let m = iso(&c.dual(), &c).unwrap().unwrap();
        assert!(is_isomorphism(&c.dual(), &c, &m));
    }

    #[test]
    fn permuted_poset_is_isomorphic() {
        let p = boolean_poset(3);
        let perm = [5, 2, 7, 0, 1, 6, 3, 4];
        let q = p.permuted(&perm);
        let m = iso(&q, &p).unwrap().unwrap();
        assert!(is_isomorphism(&q, &p, &m));
    }

    #[test]
    fn size_bound() {
        assert!(matches!(iso_bounded(&chain(4), &chain(4), 3), Err(OrderError::TooLarge { .. })));
    }
}
