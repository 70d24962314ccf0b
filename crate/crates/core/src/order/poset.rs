use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use super::OrderError;

/// Finite poset. The order is materialised as up-sets and down-sets (one
/// bitset per element); the cover relation is its transitive reduction.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<(&str, &str)> =
            self.covers().into_iter().map(|(a, b)| (self.label(a), self.label(b))).collect();
        f.debug_struct("Poset").field("elements", &self.labels).field("covers", &covers).finish()
    }
}

fn check_labels(labels: &[String]) -> Result<(), OrderError> {
    let mut seen = HashMap::with_capacity(labels.len());
    for l in labels {
        if seen.insert(l.as_str(), ()).is_some() {
            return Err(OrderError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

impl Poset {
    /// Builds the poset generated by `relation` (pairs `(lower, upper)`),
    /// taking the reflexive-transitive closure. Fails on cycles.
    pub fn from_relation(labels: Vec<String>, relation: &[(usize, usize)]) -> Result<Poset, OrderError> {
        check_labels(&labels)?;
        let n = labels.len();
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in relation {
            if a >= n || b >= n {
                return Err(OrderError::UnknownElement(a.max(b).to_string()));
            }
            if a == b {
                continue;
            }
            succ[a].push(b);
        }
        let topo = topological_order(&succ).ok_or(OrderError::Cyclic)?;
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &v in topo.iter().rev() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(v);
            for &w in &succ[v] {
                set.union_with(&up[w]);
            }
            up[v] = set;
        }
        Ok(Poset::from_up_sets(labels, up))
    }

    /// Like [`Poset::from_relation`] but requires the input pairs to be exactly
    /// the cover relation.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Poset, OrderError> {
        let p = Poset::from_relation(labels, covers)?;
        let mut given: Vec<(usize, usize)> = covers.to_vec();
        given.sort_unstable();
        let before = given.len();
        given.dedup();
        if given.len() != before {
            let (a, b) = covers[0];
            return Err(OrderError::NotReduced(p.label(a).to_string(), p.label(b).to_string()));
        }
        for &(a, b) in &given {
            if a == b || !p.upper_covers[a].contains(&b) {
                return Err(OrderError::NotReduced(p.label(a).to_string(), p.label(b).to_string()));
            }
        }
        Ok(p)
    }

    /// `up[i]` must contain `i` and be transitively closed.
    pub(crate) fn from_up_sets(labels: Vec<String>, up: Vec<FixedBitSet>) -> Poset {
        let n = labels.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, set) in up.iter().enumerate() {
            for b in set.ones() {
                down[b].insert(a);
            }
        }
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for a in 0..n {
            let mut strict = up[a].clone();
            strict.set(a, false);
            let mut beyond = FixedBitSet::with_capacity(n);
            for k in strict.ones() {
                let mut s = up[k].clone();
                s.set(k, false);
                beyond.union_with(&s);
            }
            strict.difference_with(&beyond);
            for b in strict.ones() {
                upper_covers[a].push(b);
                lower_covers[b].push(a);
            }
        }
        Poset { labels, up, down, upper_covers, lower_covers }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// `{ b : a <= b }`
    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    /// `{ b : b <= a }`
    pub fn down_set(&self, a: usize) -> &FixedBitSet {
        &self.down[a]
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower_covers[a]
    }

    /// Sorted `(lower, upper)` cover pairs.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> =
            self.upper_covers.iter().enumerate().flat_map(|(a, ups)| ups.iter().map(move |&b| (a, b))).collect();
        out.sort_unstable();
        out
    }

    pub fn cover_count(&self) -> usize {
        self.upper_covers.iter().map(Vec::len).sum()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.upper_covers[a].is_empty()).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| self.lower_covers[a].is_empty()).collect()
    }

    /// Order reversed; labels kept.
    pub fn dual(&self) -> Poset {
        Poset {
            labels: self.labels.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            upper_covers: self.lower_covers.clone(),
            lower_covers: self.upper_covers.clone(),
        }
    }

    /// Induced subposet on `elements` (in the given order).
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let k = elements.len();
        let up = elements
            .iter()
            .map(|&a| {
                let mut s = FixedBitSet::with_capacity(k);
                for (j, &b) in elements.iter().enumerate() {
                    if self.leq(a, b) {
                        s.insert(j);
                    }
                }
                s
            })
            .collect();
        let labels = elements.iter().map(|&a| self.labels[a].clone()).collect();
        Poset::from_up_sets(labels, up)
    }

    /// New poset whose element `i` is the old element `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Poset {
        self.induced(perm)
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Poset, OrderError> {
        assert_eq!(labels.len(), self.len());
        check_labels(&labels)?;
        Ok(Poset { labels, ..self.clone() })
    }

    /// Elements in a linear extension (every element after all elements below it).
    pub fn linear_extension(&self) -> Vec<usize> {
        topological_order(&self.upper_covers).expect("poset is acyclic")
    }

    /// Length of the longest chain ending at each element.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.len()];
        for v in self.linear_extension() {
            rank[v] = self.lower_covers[v].iter().map(|&w| rank[w] + 1).max().unwrap_or(0);
        }
        rank
    }

    /// Cartesian product with componentwise order; labels are concatenated
    /// with `sep`.
    pub fn product(&self, other: &Poset, sep: &str) -> Poset {
        let (n1, n2) = (self.len(), other.len());
        let labels = (0..n1 * n2).map(|i| format!("{}{}{}", self.labels[i / n2], sep, other.labels[i % n2])).collect();
        let mut relation = Vec::new();
        for a in 0..n1 {
            for b in 0..n2 {
                for &a2 in &self.upper_covers[a] {
                    relation.push((a * n2 + b, a2 * n2 + b));
                }
                for &b2 in &other.upper_covers[b] {
                    relation.push((a * n2 + b, a * n2 + b2));
                }
            }
        }
        Poset::from_relation(labels, &relation).expect("product of posets is a poset")
    }
}

/// Kahn's algorithm; `None` on a cycle. Ties broken by index.
fn topological_order(succ: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for outs in succ {
        for &w in outs {
            indeg[w] += 1;
        }
    }
    let mut ready: std::collections::BinaryHeap<std::cmp::Reverse<usize>> =
        (0..n).filter(|&v| indeg[v] == 0).map(std::cmp::Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(std::cmp::Reverse(v)) = ready.pop() {
        order.push(v);
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(std::cmp::Reverse(w));
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Chain `0 < 1 < ... < n-1`.
pub fn chain(n: usize) -> Poset {
    let labels = (0..n).map(|i| i.to_string()).collect();
    let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Poset::from_relation(labels, &covers).unwrap()
}

pub fn antichain(n: usize) -> Poset {
    Poset::from_relation((0..n).map(|i| i.to_string()).collect(), &[]).unwrap()
}

/// Product of chains with the given element counts. Labels are the
/// coordinate digits, e.g. `"0102"`; coordinates are comma-separated once
/// any chain has more than ten elements.
pub fn chain_product(sizes: &[usize]) -> Poset {
    let wide = sizes.iter().any(|&s| s > 10);
    let sep = if wide { "," } else { "" };
    let mut acc = Poset::from_relation(vec![String::new()], &[]).unwrap();
    for (k, &s) in sizes.iter().enumerate() {
        let sep = if k == 0 { "" } else { sep };
        acc = acc.product(&chain(s), sep);
    }
    acc
}

/// `2^k` as a poset: bit strings ordered componentwise.
pub fn boolean_poset(k: usize) -> Poset {
    chain_product(&vec![2; k])
}
