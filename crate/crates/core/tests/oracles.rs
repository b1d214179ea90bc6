//! Library results against small independent reference implementations.

use std::collections::HashMap;

use proptest::prelude::*;

use symgame::fo::{evaluate, random_sentence, Formula};
use symgame::game::Variant;
use symgame::graph::{subgraphs_isomorphic, EdgeSet, Family, Graph};
use symgame::solver::{solve_ef, solve_sym, Order, Reduction};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Isomorphism of edge-induced subgraphs by trying every vertex relabelling.
fn perm_isomorphic(edges: &[(usize, usize)], n: usize, x: u64, y: u64) -> bool {
    if x.count_ones() != y.count_ones() {
        return false;
    }
    let pick = |mask: u64| -> Vec<(usize, usize)> {
        edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect()
    };
    let (ex, ey) = (pick(x), pick(y));
    let norm = |(a, b): (usize, usize)| (a.min(b), a.max(b));
    let mut target: Vec<_> = ey.iter().map(|&e| norm(e)).collect();
    target.sort_unstable();
    permutations(n).iter().any(|p| {
        let mut img: Vec<_> = ex.iter().map(|&(a, b)| norm((p[a], p[b]))).collect();
        img.sort_unstable();
        img == target
    })
}

/// Sorted run lengths of an edge subset of `C_m`, with a marker for the
/// whole cycle.
fn cycle_runs(m: usize, mask: u64) -> Vec<usize> {
    if mask.count_ones() as usize == m {
        return vec![usize::MAX];
    }
    let bit = |i: usize| mask >> (i % m) & 1 == 1;
    // start just after a free edge so no run wraps
    let start = (0..m).find(|&i| !bit(i)).unwrap();
    let mut out = Vec::new();
    let mut run = 0;
    for k in 1..=m {
        if bit(start + k) {
            run += 1;
        } else if run > 0 {
            out.push(run);
            run = 0;
        }
    }
    out.sort_unstable();
    out
}

fn path_runs(m: usize, mask: u64) -> Vec<usize> {
    let mut out = Vec::new();
    let mut run = 0;
    for i in 0..=m {
        if i < m && mask >> i & 1 == 1 {
            run += 1;
        } else if run > 0 {
            out.push(run);
            run = 0;
        }
    }
    out.sort_unstable();
    out
}

struct NaiveSym<F: Fn(u64, u64) -> bool> {
    m: usize,
    iso: F,
    memo: HashMap<(u64, u64), usize>,
}

impl<F: Fn(u64, u64) -> bool> NaiveSym<F> {
    /// Rounds `B` still survives from `(red, blue)` with `A` to move.
    fn value(&mut self, red: u64, blue: u64) -> usize {
        if let Some(&v) = self.memo.get(&(red, blue)) {
            return v;
        }
        let free: Vec<usize> = (0..self.m).filter(|&e| (red | blue) >> e & 1 == 0).collect();
        let mut best = usize::MAX;
        for &a in &free {
            let r = red | 1 << a;
            let mut here = 0;
            for &b in &free {
                if b != a && (self.iso)(r, blue | 1 << b) {
                    here = here.max(1 + self.value(r, blue | 1 << b));
                }
            }
            best = best.min(here);
        }
        let v = if free.is_empty() { 0 } else { best };
        self.memo.insert((red, blue), v);
        v
    }
}

fn naive_value(g: &Graph) -> usize {
    let m = g.edge_count();
    match g.family() {
        Family::Path => NaiveSym { m, iso: |x, y| path_runs(m, x) == path_runs(m, y), memo: HashMap::new() }.value(0, 0),
        Family::Cycle => {
            NaiveSym { m, iso: |x, y| cycle_runs(m, x) == cycle_runs(m, y), memo: HashMap::new() }.value(0, 0)
        }
        _ => {
            let edges = g.edges().to_vec();
            let n = g.vertex_count();
            // canonical form per subset, by relabelling
            let perms = permutations(n);
            let canon: Vec<Vec<(usize, usize)>> = (0..1u64 << m)
                .map(|mask| {
                    perms
                        .iter()
                        .map(|p| {
                            let mut img: Vec<_> = edges
                                .iter()
                                .enumerate()
                                .filter(|(i, _)| mask >> i & 1 == 1)
                                .map(|(_, &(a, b))| (p[a].min(p[b]), p[a].max(p[b])))
                                .collect();
                            img.sort_unstable();
                            img
                        })
                        .min()
                        .unwrap()
                })
                .collect();
            NaiveSym { m, iso: |x, y| canon[x as usize] == canon[y as usize], memo: HashMap::new() }.value(0, 0)
        }
    }
}

#[test]
fn sym_values_match_the_naive_game_tree() {
    let mut graphs: Vec<Graph> = (2..=10).map(|n| Graph::path(n).unwrap()).collect();
    graphs.extend((3..=9).map(|n| Graph::cycle(n).unwrap()));
    graphs.extend((3..=5).map(|n| Graph::complete(n).unwrap()));
    for (m, l) in [(1, 3), (2, 3), (3, 3)] {
        graphs.push(Graph::complete_bipartite(m, l).unwrap());
    }
    for g in &graphs {
        let lib = solve_sym(g, Variant::Sym, Order::Maxmin, Reduction::Automorphism).unwrap().value.rounds;
        assert_eq!(lib, naive_value(g), "{}", g.name());
    }
}

#[test]
fn recorded_values_match_the_naive_game_tree() {
    let paths = [1, 1, 2, 2, 3, 2, 4, 3, 5];
    for (i, &v) in paths.iter().enumerate() {
        assert_eq!(naive_value(&Graph::path(i + 2).unwrap()), v, "P{}", i + 2);
    }
    let cycles = [1, 2, 2, 3, 3, 4, 3];
    for (i, &v) in cycles.iter().enumerate() {
        assert_eq!(naive_value(&Graph::cycle(i + 3).unwrap()), v, "C{}", i + 3);
    }
    for (n, v) in [(3, 1), (4, 2), (5, 3)] {
        assert_eq!(naive_value(&Graph::complete(n).unwrap()), v, "K{n}");
    }
}

#[test]
fn run_lengths_split_at_the_wrap() {
    // edges 0,1 and 4 of C5 form one run of three through the wrap
    assert_eq!(cycle_runs(5, 0b10011), vec![3]);
    assert_eq!(cycle_runs(5, 0b00101), vec![1, 1]);
    assert_eq!(path_runs(5, 0b10011), vec![1, 2]);
}

type EfMemo = HashMap<(Vec<(usize, usize)>, usize), bool>;

/// Duplicator survives `k` more rounds from `pairs`, by plain recursion.
fn dup_survives(
    g0: &Graph,
    g1: &Graph,
    pairs: &mut Vec<(usize, usize)>,
    k: usize,
    memo: &mut EfMemo,
) -> bool {
    if k == 0 {
        return true;
    }
    let mut key = pairs.clone();
    key.sort_unstable();
    key.dedup();
    if let Some(&v) = memo.get(&(key.clone(), k)) {
        return v;
    }
    let adj = |g: &Graph, a: usize, b: usize| g.edge_between(a, b).is_some();
    let ok = |pairs: &[(usize, usize)]| {
        pairs.iter().all(|&(a, b)| {
            pairs.iter().all(|&(c, d)| (a == c) == (b == d) && adj(g0, a, c) == adj(g1, b, d))
        })
    };
    let mut result = true;
    'outer: for side in 0..2 {
        let (from, to) = if side == 0 { (g0.vertex_count(), g1.vertex_count()) } else { (g1.vertex_count(), g0.vertex_count()) };
        for v in 0..from {
            let mut answered = false;
            for w in 0..to {
                let p = if side == 0 { (v, w) } else { (w, v) };
                pairs.push(p);
                let good = ok(pairs) && dup_survives(g0, g1, pairs, k - 1, memo);
                pairs.pop();
                if good {
                    answered = true;
                    break;
                }
            }
            if !answered {
                result = false;
                break 'outer;
            }
        }
    }
    memo.insert((key, k), result);
    result
}

fn naive_ef(g0: &Graph, g1: &Graph) -> usize {
    let mut memo = HashMap::new();
    let mut k = 0;
    while dup_survives(g0, g1, &mut Vec::new(), k + 1, &mut memo) {
        k += 1;
    }
    k
}

#[test]
fn ef_values_match_plain_recursion() {
    for n in 2..=6 {
        let (g0, g1) = (Graph::path(n).unwrap(), Graph::path(n + 1).unwrap());
        assert_eq!(solve_ef(&g0, &g1).unwrap().value.rounds, naive_ef(&g0, &g1), "P{n}");
    }
    for n in 3..=6 {
        let (g0, g1) = (Graph::cycle(n).unwrap(), Graph::cycle(n + 1).unwrap());
        assert_eq!(solve_ef(&g0, &g1).unwrap().value.rounds, naive_ef(&g0, &g1), "C{n}");
    }
    let (k3, k13) = (Graph::complete(3).unwrap(), Graph::complete_bipartite(1, 3).unwrap());
    assert_eq!(solve_ef(&k3, &k13).unwrap().value.rounds, naive_ef(&k3, &k13));
}

/// Direct evaluation with an explicit assignment map.
fn naive_eval(f: &Formula, g: &Graph, env: &mut HashMap<String, usize>) -> bool {
    match f {
        Formula::Forall(x, body) | Formula::Exists(x, body) => {
            let saved = env.get(x).copied();
            let mut results = (0..g.vertex_count()).map(|v| {
                env.insert(x.clone(), v);
                naive_eval(body, g, env)
            });
            let r = if matches!(f, Formula::Forall(..)) { results.all(|b| b) } else { results.any(|b| b) };
            match saved {
                Some(v) => env.insert(x.clone(), v),
                None => env.remove(x),
            };
            r
        }
        Formula::Edge(x, y) => g.edge_between(env[x], env[y]).is_some(),
        Formula::Eq(x, y) => env[x] == env[y],
        Formula::Not(a) => !naive_eval(a, g, env),
        Formula::And(parts) => parts.iter().all(|p| naive_eval(p, g, env)),
        Formula::Or(parts) => parts.iter().any(|p| naive_eval(p, g, env)),
        Formula::Implies(a, b) => !naive_eval(a, g, env) || naive_eval(b, g, env),
        Formula::Iff(a, b) => naive_eval(a, g, env) == naive_eval(b, g, env),
    }
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..=6).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::sample::subsequence(pairs.clone(), 0..=pairs.len())
            .prop_map(move |edges| Graph::new(n, edges, Family::Other).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn isomorphism_matches_relabelling(g in small_graph(), x in any::<u64>(), y in any::<u64>()) {
        let m = g.edge_count();
        let full = if m == 0 { 0 } else { u64::MAX >> (64 - m) };
        let (x, y) = (x & full, y & full);
        let fast = subgraphs_isomorphic(&g, &EdgeSet::from_mask(m, x), &EdgeSet::from_mask(m, y));
        prop_assert_eq!(fast, perm_isomorphic(g.edges(), g.vertex_count(), x, y));
    }

    #[test]
    fn sizes_equal_subsets_agree_with_relabelling(g in small_graph(), seed in any::<u64>()) {
        // same-size pairs are where a fast test can go wrong
        let m = g.edge_count();
        prop_assume!(m >= 2);
        let k = (seed % m as u64) as u32 + 1;
        let subsets: Vec<u64> = (0..1u64 << m).filter(|s| s.count_ones() == k).collect();
        let x = subsets[(seed >> 8) as usize % subsets.len()];
        let y = subsets[(seed >> 24) as usize % subsets.len()];
        let fast = subgraphs_isomorphic(&g, &EdgeSet::from_mask(m, x), &EdgeSet::from_mask(m, y));
        prop_assert_eq!(fast, perm_isomorphic(g.edges(), g.vertex_count(), x, y));
    }

    #[test]
    fn evaluation_matches_direct_assignment(g in small_graph(), seed in any::<u64>(), q in 1usize..=4) {
        let f = random_sentence(seed, q, 3);
        prop_assert_eq!(evaluate(&f, &g).unwrap(), naive_eval(&f, &g, &mut HashMap::new()));
    }
}
