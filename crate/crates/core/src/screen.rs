//! Non-matchability screen for finite lattices.
//!
//! A verdict is either `NotFlagged` or `NonMatchable` with a reason that
//! [`verify_verdict`] can re-check without trusting the screen.

use serde_json::{json, Map, Value};

use crate::order::{
    distributivity_counterexample, is_distributive, join_irreducible_poset, Construction, Lattice, OrderError, Poset,
};

/// Host size above which [`contains_convex_subposet`] refuses to search.
pub const DEFAULT_CONVEX_LIMIT: usize = 4096;

const DELTA_LABELS: [&str; 11] = ["0", "1", "2", "3", "4", "5", "6", "7", "8", "9", "a"];

/// Top `0`, middle `1..4`, and one bottom element below each pair of
/// middle elements.
pub fn delta_poset() -> Poset {
    let labels = DELTA_LABELS.iter().map(|s| s.to_string()).collect();
    let mut covers = vec![(1, 0), (2, 0), (3, 0), (4, 0)];
    let mut bottom = 5;
    for i in 1..=4 {
        for j in i + 1..=4 {
            covers.push((bottom, i));
            covers.push((bottom, j));
            bottom += 1;
        }
    }
    Poset::from_covers(labels, &covers).expect("delta is reduced")
}

/// An element with at least three upper covers and at least three
/// meet-irreducible lower covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K33Witness {
    pub element: usize,
    pub label: String,
    pub upper_covers: Vec<usize>,
    pub irreducible_lower_covers: Vec<usize>,
}

/// First element, in index order, that satisfies the three-covers criterion.
pub fn k33_test(l: &Lattice) -> Result<Option<K33Witness>, OrderError> {
    if !is_distributive(l) {
        return Err(OrderError::NotDistributive);
    }
    Ok(k33_scan(l))
}

fn k33_scan(l: &Lattice) -> Option<K33Witness> {
    let p = l.poset();
    (0..l.len()).find_map(|x| {
        let up = p.upper_covers(x);
        if up.len() < 3 {
            return None;
        }
        let irr: Vec<usize> = p.lower_covers(x).iter().copied().filter(|&y| p.upper_covers(y).len() == 1).collect();
        (irr.len() >= 3).then(|| K33Witness {
            element: x,
            label: l.label(x).to_string(),
            upper_covers: up.to_vec(),
            irreducible_lower_covers: irr,
        })
    })
}

/// Recounts the witness's covers from the raw cover pairs of `l`.
pub fn check_k33_witness(l: &Lattice, w: &K33Witness) -> bool {
    let covers = l.poset().covers();
    let uppers = |x: usize| -> Vec<usize> { covers.iter().filter(|c| c.0 == x).map(|c| c.1).collect() };
    let x = w.element;
    if x >= l.len() || l.label(x) != w.label {
        return false;
    }
    let up = uppers(x);
    let mut claimed_up = w.upper_covers.clone();
    claimed_up.sort_unstable();
    let mut claimed_low = w.irreducible_lower_covers.clone();
    claimed_low.dedup();
    up.len() >= 3
        && claimed_up == up
        && claimed_low.len() >= 3
        && claimed_low.len() == w.irreducible_lower_covers.len()
        && claimed_low.iter().all(|&y| covers.contains(&(y, x)) && uppers(y) == [x])
}

/// An order-embedding `pattern → host` with convex image, as
/// `map[i] = host element of pattern element i`.
pub fn contains_convex_subposet(host: &Poset, pattern: &Poset) -> Result<Option<Vec<usize>>, OrderError> {
    contains_convex_subposet_bounded(host, pattern, DEFAULT_CONVEX_LIMIT)
}

pub fn contains_convex_subposet_bounded(
    host: &Poset,
    pattern: &Poset,
    limit: usize,
) -> Result<Option<Vec<usize>>, OrderError> {
    if host.len() > limit {
        return Err(OrderError::TooLarge { what: "convex subposet search", limit });
    }
    if pattern.len() > host.len() {
        return Ok(None);
    }
    let k = pattern.len();
    // Pattern elements in an order where each one after the first of its
    // component touches an earlier one by a cover.
    let mut order = Vec::with_capacity(k);
    let mut anchor: Vec<Option<usize>> = vec![None; k];
    let mut placed = vec![false; k];
    for start in 0..k {
        if placed[start] {
            continue;
        }
        placed[start] = true;
        order.push(start);
        let mut i = order.len() - 1;
        while i < order.len() {
            let v = order[i];
            for &w in pattern.upper_covers(v).iter().chain(pattern.lower_covers(v)) {
                if !placed[w] {
                    placed[w] = true;
                    anchor[w] = Some(v);
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    let interval = |p: &Poset, a: usize, b: usize| {
        let mut s = p.up_set(a).clone();
        s.intersect_with(p.down_set(b));
        s.count_ones(..)
    };
    let fits = |x: usize, y: usize| {
        host.upper_covers(y).len() >= pattern.upper_covers(x).len()
            && host.lower_covers(y).len() >= pattern.lower_covers(x).len()
            && host.up_set(y).count_ones(..) >= pattern.up_set(x).count_ones(..)
            && host.down_set(y).count_ones(..) >= pattern.down_set(x).count_ones(..)
    };

    struct Search<'a> {
        host: &'a Poset,
        pattern: &'a Poset,
        order: &'a [usize],
        anchor: &'a [Option<usize>],
        map: Vec<usize>,
        used: Vec<bool>,
    }

    fn extend(
        s: &mut Search<'_>,
        depth: usize,
        fits: &dyn Fn(usize, usize) -> bool,
        interval: &dyn Fn(&Poset, usize, usize) -> usize,
    ) -> bool {
        let Some(&x) = s.order.get(depth) else {
            return true;
        };
        let candidates: Vec<usize> = match s.anchor[x] {
            Some(a) => {
                let ya = s.map[a];
                if s.pattern.upper_covers(a).contains(&x) {
                    s.host.upper_covers(ya).to_vec()
                } else {
                    s.host.lower_covers(ya).to_vec()
                }
            }
            None => (0..s.host.len()).collect(),
        };
        for y in candidates {
            if s.used[y] || !fits(x, y) {
                continue;
            }
            let ok = s.order[..depth].iter().all(|&a| {
                let ya = s.map[a];
                let (pl, pg) = (s.pattern.leq(a, x), s.pattern.leq(x, a));
                if pl != s.host.leq(ya, y) || pg != s.host.leq(y, ya) {
                    return false;
                }
                // Equal interval sizes force the host interval to lie in the image.
                match (pl, pg) {
                    (true, _) => interval(s.pattern, a, x) == interval(s.host, ya, y),
                    (_, true) => interval(s.pattern, x, a) == interval(s.host, y, ya),
                    _ => true,
                }
            });
            if !ok {
                continue;
            }
            s.map[x] = y;
            s.used[y] = true;
            if extend(s, depth + 1, fits, interval) {
                return true;
            }
            s.used[y] = false;
        }
        false
    }

    let mut s = Search {
        host,
        pattern,
        order: &order,
        anchor: &anchor,
        map: vec![usize::MAX; k],
        used: vec![false; host.len()],
    };
    if !extend(&mut s, 0, &fits, &interval) {
        return Ok(None);
    }
    debug_assert!(is_convex_embedding(host, pattern, &s.map));
    Ok(Some(s.map))
}

/// Injective, order-preserving and -reflecting, with a convex image.
pub fn is_convex_embedding(host: &Poset, pattern: &Poset, map: &[usize]) -> bool {
    if map.len() != pattern.len() {
        return false;
    }
    let mut in_image = vec![false; host.len()];
    for &y in map {
        if y >= host.len() || std::mem::replace(&mut in_image[y], true) {
            return false;
        }
    }
    for a in 0..pattern.len() {
        for b in 0..pattern.len() {
            if pattern.leq(a, b) != host.leq(map[a], map[b]) {
                return false;
            }
        }
    }
    for &x in map {
        for &z in map {
            if x == z || !host.leq(x, z) {
                continue;
            }
            if (0..host.len()).any(|y| host.lt(x, y) && host.lt(y, z) && !in_image[y]) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Primal,
    Dual,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Primal => "primal",
            Side::Dual => "dual",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reason {
    /// The pair lacks a meet or a join.
    NotALattice {
        a: String,
        b: String,
    },
    /// `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`.
    NotDistributive {
        x: usize,
        y: usize,
        z: usize,
    },
    K33Criterion {
        side: Side,
        witness: K33Witness,
    },
    /// Pairs `(Δ label, J(L) label)`, sorted by Δ label.
    DeltaConvex {
        embedding: Vec<(String, String)>,
    },
    FactorPropagation {
        construction: &'static str,
        factor: usize,
        inner: Box<ScreenVerdict>,
    },
}

impl Reason {
    pub fn name(&self) -> &'static str {
        match self {
            Reason::NotALattice { .. } => "not-a-lattice",
            Reason::NotDistributive { .. } => "not-distributive",
            Reason::K33Criterion { .. } => "k33-criterion",
            Reason::DeltaConvex { .. } => "delta-convex",
            Reason::FactorPropagation { .. } => "factor-propagation",
        }
    }

    /// Whether the reason ultimately rests on a convex copy of Δ.
    fn is_delta_backed(&self) -> bool {
        match self {
            Reason::DeltaConvex { .. } => true,
            Reason::FactorPropagation { inner, .. } => match inner.as_ref() {
                ScreenVerdict::NonMatchable(r) => r.is_delta_backed(),
                ScreenVerdict::NotFlagged => false,
            },
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScreenVerdict {
    NonMatchable(Reason),
    NotFlagged,
}

impl ScreenVerdict {
    pub fn is_non_matchable(&self) -> bool {
        matches!(self, ScreenVerdict::NonMatchable(_))
    }

    pub fn reason(&self) -> Option<&Reason> {
        match self {
            ScreenVerdict::NonMatchable(r) => Some(r),
            ScreenVerdict::NotFlagged => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let ScreenVerdict::NonMatchable(reason) = self else {
            return json!({"status": "not-flagged"});
        };
        let mut obj = Map::new();
        obj.insert("status".into(), json!("non-matchable"));
        obj.insert("reason".into(), json!(reason.name()));
        match reason {
            Reason::NotALattice { a, b } => {
                obj.insert("pair".into(), json!([a, b]));
            }
            Reason::NotDistributive { x, y, z } => {
                obj.insert("triple".into(), json!([x, y, z]));
            }
            Reason::K33Criterion { side, witness } => {
                obj.insert("side".into(), json!(side.as_str()));
                obj.insert("witness".into(), json!(witness.label));
                obj.insert("witness_index".into(), json!(witness.element));
                obj.insert("upper_covers".into(), json!(witness.upper_covers));
                obj.insert("irreducible_lower_covers".into(), json!(witness.irreducible_lower_covers));
            }
            Reason::DeltaConvex { embedding } => {
                let map: Map<String, Value> = embedding.iter().map(|(d, j)| (d.clone(), json!(j))).collect();
                obj.insert("embedding".into(), Value::Object(map));
            }
            Reason::FactorPropagation { construction, factor, inner } => {
                obj.insert("construction".into(), json!(construction));
                obj.insert("factor".into(), json!(factor));
                obj.insert("inner".into(), inner.to_json());
            }
        }
        Value::Object(obj)
    }
}

/// Screens a poset that is supposed to be a lattice. Non-lattices are
/// reported with a pair lacking a meet or join.
pub fn screen_poset(p: &Poset) -> ScreenVerdict {
    match Lattice::from_poset(p.clone()) {
        Ok(l) => screen(&l),
        Err(OrderError::NotALattice(a, b)) => ScreenVerdict::NonMatchable(Reason::NotALattice { a, b }),
        // The empty poset has no perfect-matching model either.
        Err(_) => ScreenVerdict::NonMatchable(Reason::NotALattice { a: String::new(), b: String::new() }),
    }
}

/// Distributivity, then the three-covers criterion on `l` and its dual, then
/// a convex Δ in the Birkhoff poset, then the factors of a combinator-built
/// lattice. The first hit wins.
pub fn screen(l: &Lattice) -> ScreenVerdict {
    if !is_distributive(l) {
        let (x, y, z) = distributivity_counterexample(l).expect("non-distributive lattices have a failing triple");
        return ScreenVerdict::NonMatchable(Reason::NotDistributive { x, y, z });
    }
    if let Some(witness) = k33_scan(l) {
        return ScreenVerdict::NonMatchable(Reason::K33Criterion { side: Side::Primal, witness });
    }
    if let Some(witness) = k33_scan(&l.dual()) {
        return ScreenVerdict::NonMatchable(Reason::K33Criterion { side: Side::Dual, witness });
    }
    if let Some(embedding) = delta_embedding(l) {
        return ScreenVerdict::NonMatchable(Reason::DeltaConvex { embedding });
    }
    screen_factors(l)
}

fn delta_embedding(l: &Lattice) -> Option<Vec<(String, String)>> {
    let (jp, _) = join_irreducible_poset(l);
    let delta = delta_poset();
    let map = contains_convex_subposet(&jp, &delta).ok()??;
    let mut pairs: Vec<(String, String)> =
        map.iter().enumerate().map(|(d, &j)| (delta.label(d).to_string(), jp.label(j).to_string())).collect();
    pairs.sort();
    Some(pairs)
}

/// Propagates a Δ-backed verdict from an operand of a product, linear sum or
/// vertical sum. Other verdicts are not propagated.
pub fn screen_factors(l: &Lattice) -> ScreenVerdict {
    let Some(c) = l.construction() else {
        return ScreenVerdict::NotFlagged;
    };
    if matches!(c, Construction::Filters { .. }) {
        return ScreenVerdict::NotFlagged;
    }
    for (i, f) in c.factors().into_iter().enumerate() {
        let inner = screen(f);
        if inner.reason().is_some_and(Reason::is_delta_backed) {
            return ScreenVerdict::NonMatchable(Reason::FactorPropagation {
                construction: c.name(),
                factor: i,
                inner: Box::new(inner),
            });
        }
    }
    ScreenVerdict::NotFlagged
}

/// Re-checks a verdict's certificate against `l` from first principles.
/// `NotFlagged` always verifies.
pub fn verify_verdict(l: &Lattice, v: &ScreenVerdict) -> bool {
    let ScreenVerdict::NonMatchable(reason) = v else {
        return true;
    };
    match reason {
        Reason::NotALattice { .. } => false,
        Reason::NotDistributive { x, y, z } => {
            let n = l.len();
            *x < n && *y < n && *z < n && l.meet(*x, l.join(*y, *z)) != l.join(l.meet(*x, *y), l.meet(*x, *z))
        }
        Reason::K33Criterion { side: Side::Primal, witness } => check_k33_witness(l, witness),
        Reason::K33Criterion { side: Side::Dual, witness } => check_k33_witness(&l.dual(), witness),
        Reason::DeltaConvex { embedding } => {
            let delta = delta_poset();
            let (jp, _) = join_irreducible_poset(l);
            if embedding.len() != delta.len() {
                return false;
            }
            let mut map = vec![usize::MAX; delta.len()];
            for (d, j) in embedding {
                match (delta.index_of(d), jp.index_of(j)) {
                    (Some(di), Some(ji)) if map[di] == usize::MAX => map[di] = ji,
                    _ => return false,
                }
            }
            is_convex_embedding(&jp, &delta, &map)
        }
        Reason::FactorPropagation { construction, factor, inner } => match l.construction() {
            Some(c) if c.name() == *construction => c
                .factors()
                .get(*factor)
                .is_some_and(|f| inner.reason().is_some_and(Reason::is_delta_backed) && verify_verdict(f, inner)),
            _ => false,
        },
    }
}

/// Checks a non-lattice verdict against the raw poset.
pub fn verify_poset_verdict(p: &Poset, v: &ScreenVerdict) -> bool {
    match v {
        ScreenVerdict::NonMatchable(Reason::NotALattice { a, b }) => {
            if p.is_empty() {
                return a.is_empty() && b.is_empty();
            }
            let (Some(a), Some(b)) = (p.index_of(a), p.index_of(b)) else {
                return false;
            };
            let least_upper = |q: &Poset| {
                let common: Vec<usize> = (0..q.len()).filter(|&u| q.leq(a, u) && q.leq(b, u)).collect();
                common.iter().any(|&u| common.iter().all(|&w| q.leq(u, w)))
            };
            !least_upper(p) || !least_upper(&p.dual())
        }
        _ => match Lattice::from_poset(p.clone()) {
            Ok(l) => verify_verdict(&l, v),
            Err(_) => false,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{
        boolean_poset, chain, chain_product, filters, iso, linear_sum, meet_irreducibles, product, vertical_sum,
    };

    fn lat(p: Poset) -> Lattice {
        Lattice::from_poset(p).unwrap()
    }

    #[test]
    fn delta_shape() {
        let d = delta_poset();
        assert_eq!(d.len(), 11);
        assert_eq!(d.cover_count(), 16);
        for i in 1..=4 {
            for j in i + 1..=4 {
                let common: Vec<usize> =
                    (5..11).filter(|&b| d.upper_covers(b).contains(&i) && d.upper_covers(b).contains(&j)).collect();
                assert_eq!(common.len(), 1);
            }
        }
        let b4 = boolean_poset(4);
        let upper: Vec<usize> = (0..16).filter(|&i| b4.label(i).matches('1').count() >= 2).collect();
        assert!(iso(&d, &b4.induced(&upper)).unwrap().is_some());
    }

    #[test]
    fn k33_on_glued_cubes() {
        let b3 = lat(boolean_poset(3));
        let v = vertical_sum(&b3, &b3);
        let w = k33_test(&v).unwrap().unwrap();
        assert_eq!(w.label, "0:111");
        assert_eq!(w.upper_covers.len(), 3);
        assert_eq!(w.irreducible_lower_covers.len(), 3);
        assert!(check_k33_witness(&v, &w));
        let mut forged = w.clone();
        forged.irreducible_lower_covers.pop();
        assert!(!check_k33_witness(&v, &forged));
    }

    #[test]
    fn k33_misses_chains_and_filters_of_delta() {
        for n in 1..=10 {
            assert!(k33_test(&lat(chain(n))).unwrap().is_none());
        }
        let fd = filters(&delta_poset()).unwrap();
        assert_eq!(fd.len(), 114);
        assert_eq!(meet_irreducibles(&fd).len(), 11);
        assert!(k33_test(&fd).unwrap().is_none());
        assert!(k33_test(&fd.dual()).unwrap().is_none());
    }

    #[test]
    fn k33_rejects_non_distributive() {
        let labels = (0..5).map(|i| i.to_string()).collect();
        let m3 = lat(Poset::from_covers(labels, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap());
        assert_eq!(k33_test(&m3), Err(OrderError::NotDistributive));
        let v = screen(&m3);
        assert_eq!(v.reason().unwrap().name(), "not-distributive");
        assert!(verify_verdict(&m3, &v));
    }

    #[test]
    fn convex_search() {
        let d = delta_poset();
        let b4 = boolean_poset(4);
        let m = contains_convex_subposet(&b4, &d).unwrap().unwrap();
        assert!(is_convex_embedding(&b4, &d, &m));
        assert!(m.iter().all(|&y| b4.label(y).matches('1').count() >= 2));
        let c = contains_convex_subposet(&chain(5), &chain(3)).unwrap().unwrap();
        assert!(is_convex_embedding(&chain(5), &chain(3), &c));
        assert!(contains_convex_subposet(&boolean_poset(3), &d).unwrap().is_none());
        // Chain 0<2 inside a 3-chain is an order embedding but not convex.
        let two = Poset::from_covers(vec!["a".into(), "b".into()], &[(0, 1)]).unwrap();
        assert!(!is_convex_embedding(&chain(3), &two, &[0, 2]));
        assert!(matches!(contains_convex_subposet_bounded(&chain(5), &chain(2), 4), Err(OrderError::TooLarge { .. })));
    }

    #[test]
    fn screens() {
        let fd = filters(&delta_poset()).unwrap();
        let v = screen(&fd);
        assert_eq!(v.reason().unwrap().name(), "delta-convex");
        assert!(verify_verdict(&fd, &v));

        let fb = filters(&boolean_poset(4)).unwrap();
        assert_eq!(fb.len(), 168);
        let v = screen(&fb);
        assert!(v.is_non_matchable());
        assert!(verify_verdict(&fb, &v));
        let json = v.to_json();
        assert_eq!(json["embedding"]["0"], "1111");

        let c7 = lat(chain(7));
        assert_eq!(screen(&c7), ScreenVerdict::NotFlagged);
        assert_eq!(screen(&c7).to_json(), json!({"status": "not-flagged"}));
    }

    #[test]
    fn four_chains_product() {
        let f = filters(&chain_product(&[2, 2, 2, 3])).unwrap();
        assert_eq!(f.len(), 887);
        let v = screen(&f);
        assert_eq!(v.reason().unwrap().name(), "delta-convex");
        assert!(verify_verdict(&f, &v));
    }

    #[test]
    fn propagation_through_combinators() {
        let fd = filters(&delta_poset()).unwrap();
        let c2 = lat(chain(2));
        for l in [product(&fd, &c2), linear_sum(&c2, &fd), vertical_sum(&fd, &c2)] {
            let v = screen_factors(&l);
            let Some(Reason::FactorPropagation { inner, .. }) = v.reason() else {
                panic!("expected propagation, got {v:?}");
            };
            assert_eq!(inner.reason().unwrap().name(), "delta-convex");
            assert!(verify_verdict(&l, &v));
            assert!(screen(&l).is_non_matchable());
        }
        assert_eq!(screen_factors(&product(&c2, &c2)), ScreenVerdict::NotFlagged);
    }

    #[test]
    fn forged_certificates_fail() {
        let fd = filters(&delta_poset()).unwrap();
        let ScreenVerdict::NonMatchable(Reason::DeltaConvex { mut embedding }) = screen(&fd) else { panic!() };
        embedding.swap(0, 1);
        let (a, b) = (embedding[0].1.clone(), embedding[1].1.clone());
        embedding[0].1 = b;
        embedding[1].1 = a;
        let forged = ScreenVerdict::NonMatchable(Reason::DeltaConvex { embedding });
        assert!(!verify_verdict(&fd, &forged));
        let c = lat(chain(3));
        let bogus = ScreenVerdict::NonMatchable(Reason::NotDistributive { x: 0, y: 1, z: 2 });
        assert!(!verify_verdict(&c, &bogus));
    }

    #[test]
    fn non_lattice_poset() {
        let labels = (0..4).map(|i| i.to_string()).collect();
        let p = Poset::from_covers(labels, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let v = screen_poset(&p);
        assert_eq!(v.reason().unwrap().name(), "not-a-lattice");
        assert!(verify_poset_verdict(&p, &v));
        assert!(!verify_poset_verdict(
            &chain(3),
            &ScreenVerdict::NonMatchable(Reason::NotALattice { a: "0".into(), b: "1".into() })
        ));
    }
}
