use std::collections::HashMap;

use super::{components, EdgeSet, Graph};

/// Edge-induced subgraph isomorphism. Isolated vertices are ignored.
///
/// Paths and cycles use the component-length shortcut: every proper edge
/// subset of a path or cycle is a disjoint union of paths, so two subsets are
/// isomorphic iff their multisets of component sizes agree.
pub fn subgraphs_isomorphic(g: &Graph, e1: &EdgeSet, e2: &EdgeSet) -> bool {
    if e1.len() != e2.len() {
        return false;
    }
    if g.is_path_like() {
        return path_like_signature(g, e1) == path_like_signature(g, e2);
    }
    subgraphs_isomorphic_general(g, e1, e2)
}

/// Sorted component sizes, with a trailing marker when the set is the whole cycle.
fn path_like_signature(g: &Graph, set: &EdgeSet) -> Vec<usize> {
    let m = g.edge_count();
    if set.len() == m && g.family() == super::Family::Cycle {
        return vec![usize::MAX];
    }
    let mut sizes = Vec::new();
    if g.family() == super::Family::Cycle {
        // Walk runs around the cycle starting just after an uncoloured edge.
        let start = (0..m).find(|&e| !set.contains(e)).expect("proper subset");
        let mut run = 0;
        for k in 1..=m {
            let e = (start + k) % m;
            if set.contains(e) {
                run += 1;
            } else if run > 0 {
                sizes.push(run);
                run = 0;
            }
        }
        if run > 0 {
            sizes.push(run);
        }
    } else {
        let mut run = 0;
        for e in 0..m {
            if set.contains(e) {
                run += 1;
            } else if run > 0 {
                sizes.push(run);
                run = 0;
            }
        }
        if run > 0 {
            sizes.push(run);
        }
    }
    sizes.sort_unstable();
    sizes
}

/// A small graph rebuilt from an edge set on compact vertex labels.
struct Compact {
    n: usize,
    adj: Vec<Vec<bool>>,
    degree: Vec<usize>,
}

impl Compact {
    fn new(g: &Graph, set: &EdgeSet) -> Self {
        let mut label: HashMap<usize, usize> = HashMap::new();
        let mut pairs = Vec::new();
        for e in set.iter() {
            let (u, v) = g.edge(e);
            let next = label.len();
            let a = *label.entry(u).or_insert(next);
            let next = label.len();
            let b = *label.entry(v).or_insert(next);
            pairs.push((a, b));
        }
        let n = label.len();
        let mut adj = vec![vec![false; n]; n];
        let mut degree = vec![0; n];
        for (a, b) in pairs {
            adj[a][b] = true;
            adj[b][a] = true;
            degree[a] += 1;
            degree[b] += 1;
        }
        Compact { n, adj, degree }
    }
}

/// Backtracking isomorphism test with degree-sequence and component-size pruning.
pub fn subgraphs_isomorphic_general(g: &Graph, e1: &EdgeSet, e2: &EdgeSet) -> bool {
    if e1.len() != e2.len() {
        return false;
    }
    let comp_sizes = |s: &EdgeSet| {
        let mut v: Vec<(usize, usize)> =
            components(g, s).iter().map(|c| (c.size(), c.vertices.len())).collect();
        v.sort_unstable();
        v
    };
    if comp_sizes(e1) != comp_sizes(e2) {
        return false;
    }
    let a = Compact::new(g, e1);
    let b = Compact::new(g, e2);
    if a.n != b.n {
        return false;
    }
    let mut da = a.degree.clone();
    let mut db = b.degree.clone();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    // Map high-degree vertices first; they constrain the search most.
    let mut order: Vec<usize> = (0..a.n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(a.degree[v]));
    let mut image = vec![usize::MAX; a.n];
    let mut used = vec![false; b.n];
    backtrack(&a, &b, &order, 0, &mut image, &mut used)
}

fn backtrack(
    a: &Compact,
    b: &Compact,
    order: &[usize],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..b.n {
        if used[w] || b.degree[w] != a.degree[v] {
            continue;
        }
        let ok = order[..depth].iter().all(|&u| a.adj[u][v] == b.adj[image[u]][w]);
        if !ok {
            continue;
        }
        image[v] = w;
        used[w] = true;
        if backtrack(a, b, order, depth + 1, image, used) {
            return true;
        }
        used[w] = false;
        image[v] = usize::MAX;
    }
    false
}

/// Canonical form of an edge-induced subgraph: equal codes iff isomorphic.
/// Components are limited to 16 vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgraphCode(Vec<(u8, u128)>);

pub fn subgraph_code(g: &Graph, set: &EdgeSet) -> SubgraphCode {
    let mut parts: Vec<(u8, u128)> = components(g, set)
        .iter()
        .map(|c| {
            let sub = EdgeSet::from_edges(g.edge_count(), c.edges.iter().copied());
            let compact = Compact::new(g, &sub);
            assert!(compact.n <= 16, "canonical code limited to 16-vertex components");
            (compact.n as u8, canonical_bits(&compact))
        })
        .collect();
    parts.sort_unstable();
    SubgraphCode(parts)
}

/// Colour refinement, then the minimum adjacency string over all
/// class-respecting orders. Twins are never permuted among themselves.
fn canonical_bits(c: &Compact) -> u128 {
    let n = c.n;
    let mut color: Vec<usize> = c.degree.clone();
    loop {
        let mut sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&w| c.adj[v][w]).map(|w| color[w]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> =
            sigs.iter().map(|s| distinct.binary_search(s).expect("present")).collect();
        let classes_before = {
            let mut c = color.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        sigs.clear();
        color = next;
        if distinct.len() == classes_before {
            break;
        }
    }
    // Twin groups: vertices with equal open or equal closed neighbourhoods.
    let mut twin = vec![usize::MAX; n];
    let mut groups = 0;
    for v in 0..n {
        if twin[v] != usize::MAX {
            continue;
        }
        twin[v] = groups;
        for w in v + 1..n {
            if twin[w] == usize::MAX && color[w] == color[v] && are_twins(c, v, w) {
                twin[w] = groups;
            }
        }
        groups += 1;
    }
    let mut classes: Vec<usize> = color.clone();
    classes.sort_unstable();
    classes.dedup();
    // Per colour class: the multiset of twin-group labels to permute.
    let class_members: Vec<Vec<usize>> =
        classes.iter().map(|&k| (0..n).filter(|&v| color[v] == k).collect()).collect();
    let mut best = u128::MAX;
    let mut order = Vec::with_capacity(n);
    enumerate_orders(c, &class_members, &twin, 0, &mut order, &mut best);
    best
}

fn are_twins(c: &Compact, v: usize, w: usize) -> bool {
    (0..c.n).all(|x| x == v || x == w || c.adj[v][x] == c.adj[w][x])
}

fn enumerate_orders(
    c: &Compact,
    classes: &[Vec<usize>],
    twin: &[usize],
    k: usize,
    order: &mut Vec<usize>,
    best: &mut u128,
) {
    if k == classes.len() {
        let bits = adjacency_bits(c, order);
        if bits < *best {
            *best = bits;
        }
        return;
    }
    // Distinct arrangements of the class: permute twin-group labels as a multiset.
    let members = &classes[k];
    let mut labels: Vec<usize> = members.iter().map(|&v| twin[v]).collect();
    labels.sort_unstable();
    loop {
        let mut pools: HashMap<usize, Vec<usize>> = HashMap::new();
        for &v in members {
            pools.entry(twin[v]).or_default().push(v);
        }
        let base = order.len();
        for &lab in &labels {
            let v = pools.get_mut(&lab).expect("label").remove(0);
            order.push(v);
        }
        enumerate_orders(c, classes, twin, k + 1, order, best);
        order.truncate(base);
        if !next_permutation(&mut labels) {
            break;
        }
    }
}

fn adjacency_bits(c: &Compact, order: &[usize]) -> u128 {
    let mut bits = 0u128;
    let mut pos = 0;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if c.adj[order[i]][order[j]] {
                bits |= 1 << pos;
            }
            pos += 1;
        }
    }
    bits
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(g: &Graph, one_based: &[usize]) -> EdgeSet {
        EdgeSet::from_edges(g.edge_count(), one_based.iter().map(|e| e - 1))
    }

    #[test]
    fn single_edges_are_isomorphic() {
        let g = Graph::path(9).unwrap();
        assert!(subgraphs_isomorphic(&g, &set(&g, &[3]), &set(&g, &[7])));
    }

    #[test]
    fn path_versus_matching() {
        let g = Graph::path(9).unwrap();
        assert!(!subgraphs_isomorphic(&g, &set(&g, &[1, 2]), &set(&g, &[4, 6])));
        assert!(!subgraphs_isomorphic_general(&g, &set(&g, &[1, 2]), &set(&g, &[4, 6])));
    }

    #[test]
    fn size_mismatch() {
        let g = Graph::complete(5).unwrap();
        assert!(!subgraphs_isomorphic(&g, &set(&g, &[1]), &set(&g, &[2, 3])));
    }

    #[test]
    fn cycle_runs_wrap_around() {
        let g = Graph::cycle(7).unwrap();
        // edges 7 and 1 are adjacent through vertex 0
        assert!(subgraphs_isomorphic(&g, &set(&g, &[7, 1]), &set(&g, &[3, 4])));
        assert!(subgraphs_isomorphic(&g, &EdgeSet::from_edges(7, 0..7), &EdgeSet::from_edges(7, 0..7)));
    }

    #[test]
    fn codes_separate_triangle_and_star() {
        let g = Graph::complete(4).unwrap();
        // K4 edges: 0:(0,1) 1:(0,2) 2:(0,3) 3:(1,2) 4:(1,3) 5:(2,3)
        let triangle = EdgeSet::from_edges(6, [0, 1, 3]);
        let star = EdgeSet::from_edges(6, [0, 1, 2]);
        let other_triangle = EdgeSet::from_edges(6, [3, 4, 5]);
        assert_ne!(subgraph_code(&g, &triangle), subgraph_code(&g, &star));
        assert_eq!(subgraph_code(&g, &triangle), subgraph_code(&g, &other_triangle));
    }

    #[test]
    fn permutation_helper() {
        let mut v = vec![0, 0, 1];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(seen, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }
}
