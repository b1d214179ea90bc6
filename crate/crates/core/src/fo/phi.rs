//! The sentence `Φ_k` with `4k` quantifiers that holds on a graph with at
//! least `2k` edges exactly when `B` survives `k` rounds of `Sym(G)`.

use super::Formula;
use crate::error::{Error, Result};

/// Largest `k` for which `Φ_k` is materialised.
pub const PHI_MAX_K: usize = 3;

fn var(side: char, i: usize, a: usize) -> String {
    format!("{side}{i}_{a}")
}

/// Pairs `{x1, x2}` and `{y1, y2}` differ as unordered pairs.
fn dist(x: (&str, &str), y: (&str, &str)) -> Formula {
    Formula::not(Formula::Or(vec![
        Formula::And(vec![Formula::eq(x.0, y.0), Formula::eq(x.1, y.1)]),
        Formula::And(vec![Formula::eq(x.0, y.1), Formula::eq(x.1, y.0)]),
    ]))
}

fn pair(side: char, i: usize) -> (String, String) {
    (var(side, i, 1), var(side, i, 2))
}

/// The `j`-th chosen edge is an edge and differs from every earlier choice.
fn fresh_edge(side: char, j: usize) -> Formula {
    let (x1, x2) = pair(side, j);
    let mut parts = vec![Formula::edge(&x1, &x2)];
    // B's j-th edge must also avoid A's j-th edge
    let a_upto = if side == 'u' { j - 1 } else { j };
    for i in 1..=a_upto {
        let (y1, y2) = pair('u', i);
        parts.push(dist((&x1, &x2), (&y1, &y2)));
    }
    for i in 1..j {
        let (y1, y2) = pair('v', i);
        parts.push(dist((&x1, &x2), (&y1, &y2)));
    }
    Formula::And(parts)
}

fn permutations(j: usize) -> Vec<Vec<usize>> {
    if j == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(j - 1) {
        for slot in 0..=p.len() {
            let mut q = p.clone();
            q.insert(slot, j);
            out.push(q);
        }
    }
    out
}

/// Number of edge-respecting index permutations in `ISO_j`: `j! * 2^j`.
pub fn iso_disjunct_count(j: usize) -> usize {
    (1..=j).product::<usize>() << j
}

/// The first `j` red and blue edges span isomorphic subgraphs.
fn iso(j: usize) -> Formula {
    let index: Vec<(usize, usize)> = (1..=j).flat_map(|i| [(i, 1), (i, 2)]).collect();
    let mut disjuncts = Vec::with_capacity(iso_disjunct_count(j));
    for sigma in permutations(j) {
        for flips in 0..1usize << j {
            // f(i, 1) = (sigma(i), a) and f(i, 2) = (sigma(i), 3 - a)
            let f = |(i, a): (usize, usize)| {
                let flipped = flips >> (i - 1) & 1 == 1;
                (sigma[i - 1], if flipped { 3 - a } else { a })
            };
            let mut parts = Vec::with_capacity(index.len() * index.len());
            for &p in &index {
                for &q in &index {
                    let (fp, fq) = (f(p), f(q));
                    parts.push(Formula::iff(
                        Formula::eq(var('u', p.0, p.1), var('u', q.0, q.1)),
                        Formula::eq(var('v', fp.0, fp.1), var('v', fq.0, fq.1)),
                    ));
                }
            }
            disjuncts.push(Formula::And(parts));
        }
    }
    Formula::Or(disjuncts)
}

/// Builds `Φ_k` for `1 <= k <= PHI_MAX_K`.
pub fn build_phi_k(k: usize) -> Result<Formula> {
    if k == 0 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    if k > PHI_MAX_K {
        let disjuncts: usize = (1..=k).map(iso_disjunct_count).sum();
        return Err(Error::Capability(format!(
            "Φ_{k} needs {disjuncts} isomorphism disjuncts; the limit is k = {PHI_MAX_K}"
        )));
    }
    let antecedent = Formula::And((1..=k).map(|j| fresh_edge('u', j)).collect());
    let mut consequent: Vec<Formula> = (1..=k).map(|j| fresh_edge('v', j)).collect();
    consequent.extend((1..=k).map(iso));
    let mut f = Formula::implies(antecedent, Formula::And(consequent));
    for j in (1..=k).rev() {
        f = Formula::exists(var('v', j, 1), Formula::exists(var('v', j, 2), f));
        f = Formula::forall(var('u', j, 1), Formula::forall(var('u', j, 2), f));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantifiers_and_disjuncts() {
        for k in 1..=PHI_MAX_K {
            let phi = build_phi_k(k).unwrap();
            assert_eq!(phi.quantifier_count(), 4 * k);
            assert!(phi.is_closed());
        }
        assert_eq!(iso_disjunct_count(1), 2);
        assert_eq!(iso_disjunct_count(2), 8);
        assert!(build_phi_k(4).is_err());
    }

    #[test]
    fn iso_two_has_eight_distinct_disjuncts() {
        let Formula::Or(ds) = iso(2) else { panic!("ISO is a disjunction") };
        assert_eq!(ds.len(), 8);
        let distinct: std::collections::HashSet<String> = ds.iter().map(ToString::to_string).collect();
        assert_eq!(distinct.len(), 8);
    }

    #[test]
    fn prefix_alternates_in_pairs() {
        let phi = build_phi_k(2).unwrap();
        let mut kinds = String::new();
        let mut f = &phi;
        loop {
            match f {
                Formula::Forall(_, g) => {
                    kinds.push('A');
                    f = g;
                }
                Formula::Exists(_, g) => {
                    kinds.push('E');
                    f = g;
                }
                _ => break,
            }
        }
        assert_eq!(kinds, "AAEEAAEE");
    }
}
