use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;

use super::{OrderError, Poset};

/// Meet/join tables are only materialised up to this many elements.
pub const TABLE_LIMIT: usize = 1024;

/// How a lattice was built, when it came out of one of the constructors.
#[derive(Clone, Debug)]
pub enum Construction {
    /// `sets[i]` is the filter (over `base`) at lattice index `i`.
    Filters {
        base: Poset,
        sets: Vec<FixedBitSet>,
    },
    Product(Lattice, Lattice),
    LinearSum(Lattice, Lattice),
    VerticalSum(Lattice, Lattice),
}

impl Construction {
    pub fn name(&self) -> &'static str {
        match self {
            Construction::Filters { .. } => "filters",
            Construction::Product(..) => "product",
            Construction::LinearSum(..) => "linear-sum",
            Construction::VerticalSum(..) => "vertical-sum",
        }
    }

    /// Lattice operands of a binary construction.
    pub fn factors(&self) -> Vec<&Lattice> {
        match self {
            Construction::Filters { .. } => Vec::new(),
            Construction::Product(a, b) | Construction::LinearSum(a, b) | Construction::VerticalSum(a, b) => vec![a, b],
        }
    }
}

#[derive(Debug)]
struct Tables {
    meet: Vec<u32>,
    join: Vec<u32>,
}

/// Finite lattice over a [`Poset`]. Meets and joins are looked up in tables
/// for small lattices and computed from the up/down bitsets otherwise.
#[derive(Clone, Debug)]
pub struct Lattice {
    poset: Poset,
    top: usize,
    bottom: usize,
    up_count: Vec<usize>,
    down_count: Vec<usize>,
    tables: Arc<OnceLock<Option<Tables>>>,
    construction: Option<Arc<Construction>>,
}

impl Lattice {
    /// Validates that every pair has a meet and a join.
    pub fn from_poset(poset: Poset) -> Result<Lattice, OrderError> {
        if poset.is_empty() {
            return Err(OrderError::Empty);
        }
        let l = Lattice::new_unchecked(poset, None);
        let n = l.len();
        for a in 0..n {
            for b in a + 1..n {
                if l.join_slow(a, b).is_none() || l.meet_slow(a, b).is_none() {
                    return Err(OrderError::NotALattice(l.poset.label(a).to_string(), l.poset.label(b).to_string()));
                }
            }
        }
        Ok(l)
    }

    /// The caller guarantees that `poset` is a non-empty lattice.
    pub(crate) fn new_unchecked(poset: Poset, construction: Option<Construction>) -> Lattice {
        let up_count: Vec<usize> = (0..poset.len()).map(|a| poset.up_set(a).count_ones(..)).collect();
        let down_count: Vec<usize> = (0..poset.len()).map(|a| poset.down_set(a).count_ones(..)).collect();
        let n = poset.len();
        let top = (0..n).find(|&a| down_count[a] == n).unwrap_or(0);
        let bottom = (0..n).find(|&a| up_count[a] == n).unwrap_or(0);
        Lattice {
            poset,
            top,
            bottom,
            up_count,
            down_count,
            tables: Arc::new(OnceLock::new()),
            construction: construction.map(Arc::new),
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn into_poset(self) -> Poset {
        self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn label(&self, a: usize) -> &str {
        self.poset.label(a)
    }

    pub fn construction(&self) -> Option<&Construction> {
        self.construction.as_deref()
    }

    pub(crate) fn with_construction(mut self, c: Construction) -> Lattice {
        self.construction = Some(Arc::new(c));
        self
    }

    fn join_slow(&self, a: usize, b: usize) -> Option<usize> {
        let mut common = self.poset.up_set(a).clone();
        common.intersect_with(self.poset.up_set(b));
        let size = common.count_ones(..);
        common.ones().find(|&u| self.up_count[u] == size)
    }

    fn meet_slow(&self, a: usize, b: usize) -> Option<usize> {
        let mut common = self.poset.down_set(a).clone();
        common.intersect_with(self.poset.down_set(b));
        let size = common.count_ones(..);
        common.ones().find(|&u| self.down_count[u] == size)
    }

    fn tables(&self) -> Option<&Tables> {
        self.tables
            .get_or_init(|| {
                let n = self.len();
                if n > TABLE_LIMIT {
                    return None;
                }
                let mut meet = vec![0u32; n * n];
                let mut join = vec![0u32; n * n];
                for a in 0..n {
                    for b in a..n {
                        let m = self.meet_slow(a, b).expect("lattice has meets") as u32;
                        let j = self.join_slow(a, b).expect("lattice has joins") as u32;
                        meet[a * n + b] = m;
                        meet[b * n + a] = m;
                        join[a * n + b] = j;
                        join[b * n + a] = j;
                    }
                }
                Some(Tables { meet, join })
            })
            .as_ref()
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        match self.tables() {
            Some(t) => t.meet[a * self.len() + b] as usize,
            None => self.meet_slow(a, b).expect("lattice has meets"),
        }
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        match self.tables() {
            Some(t) => t.join[a * self.len() + b] as usize,
            None => self.join_slow(a, b).expect("lattice has joins"),
        }
    }

    /// Order-reversed lattice. Construction provenance is dropped.
    pub fn dual(&self) -> Lattice {
        Lattice::new_unchecked(self.poset.dual(), None)
    }
}

/// Elements with exactly one upper cover.
pub fn meet_irreducibles(l: &Lattice) -> Vec<usize> {
    (0..l.len()).filter(|&a| l.poset().upper_covers(a).len() == 1).collect()
}

/// Elements with exactly one lower cover.
pub fn join_irreducibles(l: &Lattice) -> Vec<usize> {
    (0..l.len()).filter(|&a| l.poset().lower_covers(a).len() == 1).collect()
}

/// Triple check of `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`; returns a failing
/// triple if there is one.
pub fn distributivity_counterexample(l: &Lattice) -> Option<(usize, usize, usize)> {
    let n = l.len();
    for x in 0..n {
        for y in 0..n {
            for z in y + 1..n {
                if l.meet(x, l.join(y, z)) != l.join(l.meet(x, y), l.meet(x, z)) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Exhaustive distributive-law check over all triples.
pub fn is_distributive_exhaustive(l: &Lattice) -> bool {
    distributivity_counterexample(l).is_none()
}

/// A finite lattice embeds into the down-sets of its join-irreducibles via
/// `x ↦ ↓x ∩ J`; it is distributive exactly when that embedding is onto,
/// i.e. when `J` has as many down-sets as the lattice has elements.
pub fn is_distributive(l: &Lattice) -> bool {
    let j = join_irreducibles(l);
    let jp = l.poset().induced(&j);
    match super::filters::count_filters(&jp, l.len() + 1) {
        Some(count) => count == l.len(),
        None => false,
    }
}
