//! Independent oracles for the integration tests. Nothing here calls into
//! the library's enumeration, order or planarity engines; inputs are read
//! through plain accessors only.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use matchlat::geometry::Color;
use matchlat::{Graph, PlaneGraph, Poset};

/// Seed for randomized tests; override with `MATCHLAT_TEST_SEED`.
pub fn test_seed() -> u64 {
    std::env::var("MATCHLAT_TEST_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20)
}

/// `leq` as a dense matrix, read once from the poset.
pub fn leq_matrix(p: &Poset) -> Vec<Vec<bool>> {
    (0..p.len()).map(|a| (0..p.len()).map(|b| p.leq(a, b)).collect()).collect()
}

/// Counts up-sets by testing every subset. Feasible up to about 24 elements.
pub fn count_up_sets_brute(p: &Poset) -> u64 {
    let n = p.len();
    assert!(n <= 24, "brute force over {n} elements");
    let up: Vec<u32> = (0..n).map(|a| (0..n).filter(|&b| p.leq(a, b)).fold(0u32, |m, b| m | 1 << b)).collect();
    let mut count = 0;
    for s in 0u32..1 << n {
        if (0..n).all(|a| s >> a & 1 == 0 || up[a] & !s == 0) {
            count += 1;
        }
    }
    count
}

/// Counts antichains, which are in bijection with up-sets (minimal elements).
pub fn count_antichains(p: &Poset) -> u64 {
    let n = p.len();
    let m = leq_matrix(p);
    fn go(cands: &[usize], m: &[Vec<bool>]) -> u64 {
        let mut total = 1;
        for (i, &x) in cands.iter().enumerate() {
            let rest: Vec<usize> = cands[i + 1..].iter().copied().filter(|&y| !m[x][y] && !m[y][x]).collect();
            total += go(&rest, m);
        }
        total
    }
    go(&(0..n).collect::<Vec<_>>(), &m)
}

/// Number of perfect matchings by a DP over subsets of black vertices.
pub fn count_perfect_matchings(g: &PlaneGraph) -> u64 {
    let white: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.color(v) == Color::White).collect();
    let black: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.color(v) == Color::Black).collect();
    if white.len() != black.len() {
        return 0;
    }
    let pos: HashMap<usize, usize> = black.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let mut dp: HashMap<u64, u64> = HashMap::from([(0, 1)]);
    for &w in &white {
        let mut next = HashMap::new();
        for (&used, &ways) in &dp {
            for &b in &black {
                let bit = 1u64 << pos[&b];
                if used & bit == 0 && g.has_edge(w, b) {
                    *next.entry(used | bit).or_insert(0) += ways;
                }
            }
        }
        dp = next;
    }
    dp.values().sum()
}

/// Transitive reduction of a reflexive order matrix as `(lower, upper)` pairs.
pub fn reduction(m: &[Vec<bool>]) -> BTreeSet<(usize, usize)> {
    let n = m.len();
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && m[a][b] && !(0..n).any(|c| c != a && c != b && m[a][c] && m[c][b]) {
                out.insert((a, b));
            }
        }
    }
    out
}

/// `reach[a][b]`: a directed path from `a` to `b` exists (reflexive).
pub fn reachability(n: usize, arcs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in arcs {
        adj[a].push(b);
    }
    (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for &w in &adj[v] {
                    if !std::mem::replace(&mut seen[w], true) {
                        q.push_back(w);
                    }
                }
            }
            seen
        })
        .collect()
}

pub fn upper_cover_counts(m: &[Vec<bool>]) -> Vec<usize> {
    let mut c = vec![0; m.len()];
    for (a, _) in reduction(m) {
        c[a] += 1;
    }
    c
}

pub fn lower_cover_counts(m: &[Vec<bool>]) -> Vec<usize> {
    let mut c = vec![0; m.len()];
    for (_, b) in reduction(m) {
        c[b] += 1;
    }
    c
}

fn bound(m: &[Vec<bool>], a: usize, b: usize, lower: bool) -> Option<usize> {
    let n = m.len();
    let cands: Vec<usize> = (0..n).filter(|&c| if lower { m[c][a] && m[c][b] } else { m[a][c] && m[b][c] }).collect();
    cands.iter().copied().find(|&c| cands.iter().all(|&d| if lower { m[d][c] } else { m[c][d] }))
}

/// Meet from the order matrix alone.
pub fn meet(m: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    bound(m, a, b, true)
}

pub fn join(m: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    bound(m, a, b, false)
}

/// Every pair has a meet and a join, and meets distribute over joins.
pub fn is_distributive_lattice(m: &[Vec<bool>]) -> bool {
    let n = m.len();
    let mut mt = vec![vec![0; n]; n];
    let mut jn = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            match (meet(m, a, b), join(m, a, b)) {
                (Some(x), Some(y)) => {
                    mt[a][b] = x;
                    jn[a][b] = y;
                }
                _ => return false,
            }
        }
    }
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| mt[x][jn[y][z]] == jn[mt[x][y]][mt[x][z]])))
}

/// Whether `map` is an order isomorphism between two order matrices.
pub fn preserves_order(p: &[Vec<bool>], q: &[Vec<bool>], map: &[usize]) -> bool {
    let n = p.len();
    if q.len() != n || map.len() != n || map.iter().collect::<BTreeSet<_>>().len() != n {
        return false;
    }
    (0..n).all(|a| (0..n).all(|b| p[a][b] == q[map[a]][map[b]]))
}

/// Planarity by exhaustive search over rotation systems. Edges are added
/// in BFS order, each new edge inserted at every pair of angular positions,
/// and partial embeddings are kept only while Euler's formula holds. Only
/// suitable for small graphs.
pub fn planar_by_rotations(g: &Graph) -> bool {
    g.components().iter().all(|comp| {
        let edges = bfs_edges(g, comp[0]);
        let mut rot: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
        extend(&mut rot, &edges, 0)
    })
}

fn bfs_edges(g: &Graph, root: usize) -> Vec<(usize, usize)> {
    let mut seen = vec![false; g.vertex_count()];
    let mut done = BTreeSet::new();
    let mut out = Vec::new();
    seen[root] = true;
    let mut q = VecDeque::from([root]);
    while let Some(v) = q.pop_front() {
        let mut nbrs: Vec<usize> = g.neighbors(v).collect();
        nbrs.sort_unstable();
        for w in nbrs {
            if done.insert((v.min(w), v.max(w))) {
                out.push((v, w));
            }
            if !std::mem::replace(&mut seen[w], true) {
                q.push_back(w);
            }
        }
    }
    out
}

fn face_count(rot: &[Vec<usize>]) -> usize {
    let mut seen = BTreeSet::new();
    let mut faces = 0;
    for (u, nb) in rot.iter().enumerate() {
        for &v in nb {
            if seen.contains(&(u, v)) {
                continue;
            }
            faces += 1;
            let (mut a, mut b) = (u, v);
            while seen.insert((a, b)) {
                let r = &rot[b];
                let i = r.iter().position(|&x| x == a).unwrap();
                let c = r[(i + 1) % r.len()];
                (a, b) = (b, c);
            }
        }
    }
    faces
}

fn euler_ok(rot: &[Vec<usize>], edges: usize) -> bool {
    let v = rot.iter().filter(|r| !r.is_empty()).count();
    v + face_count(rot) == edges + 2
}

fn extend(rot: &mut Vec<Vec<usize>>, edges: &[(usize, usize)], k: usize) -> bool {
    if k == edges.len() {
        return true;
    }
    let (u, v) = edges[k];
    let pu = rot[u].len().max(1);
    let pv = rot[v].len().max(1);
    for i in 0..pu {
        for j in 0..pv {
            rot[u].insert(i, v);
            rot[v].insert(j, u);
            if euler_ok(rot, k + 1) && extend(rot, edges, k + 1) {
                return true;
            }
            rot[u].remove(i);
            rot[v].remove(j);
        }
    }
    false
}

/// Checks that `edges` form a subdivision of K5 or K3,3 by walking the
/// paths between branch vertices. Returns `"K5"`, `"K33"` or `None`.
pub fn subdivision_kind(edges: &[(usize, usize)]) -> Option<&'static str> {
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.values().any(|n| n.len() < 2) {
        return None;
    }
    let branch: BTreeSet<usize> = adj.iter().filter(|(_, n)| n.len() > 2).map(|(&v, _)| v).collect();
    let mut pairs = BTreeSet::new();
    let mut used = BTreeSet::new();
    for &b in &branch {
        for &first in &adj[&b] {
            let (mut prev, mut cur) = (b, first);
            used.insert((prev.min(cur), prev.max(cur)));
            while !branch.contains(&cur) {
                let next = *adj[&cur].iter().find(|&&x| x != prev)?;
                (prev, cur) = (cur, next);
                used.insert((prev.min(cur), prev.max(cur)));
            }
            if cur == b {
                return None;
            }
            pairs.insert((b.min(cur), b.max(cur)));
        }
    }
    if used.len() != edges.len() {
        return None;
    }
    let degs: Vec<usize> = branch.iter().map(|v| adj[v].len()).collect();
    let all_pairs = branch.len() * (branch.len() - 1) / 2;
    if branch.len() == 5 && degs.iter().all(|&d| d == 4) && pairs.len() == all_pairs {
        return Some("K5");
    }
    if branch.len() == 6 && degs.iter().all(|&d| d == 3) && pairs.len() == 9 {
        // Bipartition check on the branch-level graph.
        let bs: Vec<usize> = branch.iter().copied().collect();
        let side: Vec<&usize> = bs.iter().filter(|&&x| !pairs.contains(&(bs[0].min(x), bs[0].max(x)))).collect();
        let other: Vec<&usize> = bs.iter().filter(|x| !side.contains(x)).collect();
        let ok = side.len() == 3
            && other.len() == 3
            && side.iter().all(|&&a| other.iter().all(|&&b| pairs.contains(&(a.min(b), a.max(b)))));
        return ok.then_some("K33");
    }
    None
}
