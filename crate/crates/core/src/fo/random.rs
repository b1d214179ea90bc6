//! Seeded random sentences for spot checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Formula;

/// A random closed sentence with exactly `quantifiers` quantifiers, built
/// from a quantifier-free body of depth at most `depth`. Quantifiers are
/// spread between the prefix and nested subformulas.
pub fn random_sentence(seed: u64, quantifiers: usize, depth: usize) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut scope = Vec::new();
    build(&mut rng, quantifiers, depth, &mut scope)
}

fn build(rng: &mut ChaCha8Rng, quantifiers: usize, depth: usize, scope: &mut Vec<String>) -> Formula {
    if quantifiers > 0 && (scope.is_empty() || depth == 0 || rng.gen_bool(0.6)) {
        let x = format!("x{}", scope.len());
        scope.push(x.clone());
        let body = build(rng, quantifiers - 1, depth, scope);
        scope.pop();
        return if rng.gen_bool(0.5) { Formula::forall(x, body) } else { Formula::exists(x, body) };
    }
    if depth == 0 || (quantifiers == 0 && rng.gen_bool(0.3)) {
        if scope.is_empty() {
            return Formula::And(vec![]);
        }
        let x = scope[rng.gen_range(0..scope.len())].clone();
        let y = scope[rng.gen_range(0..scope.len())].clone();
        return if rng.gen_bool(0.6) { Formula::edge(x, y) } else { Formula::eq(x, y) };
    }
    // split the remaining quantifiers between two children
    let left = rng.gen_range(0..=quantifiers);
    let a = build(rng, left, depth - 1, scope);
    let b = build(rng, quantifiers - left, depth - 1, scope);
    match rng.gen_range(0..5) {
        0 => Formula::not(Formula::And(vec![a, b])),
        1 => Formula::And(vec![a, b]),
        2 => Formula::Or(vec![a, b]),
        3 => Formula::implies(a, b),
        _ => Formula::iff(a, b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sentences_are_closed_and_counted() {
        for seed in 0..200 {
            let q = (seed % 5) as usize;
            let f = random_sentence(seed, q, 3);
            assert!(f.is_closed(), "{f}");
            assert_eq!(f.quantifier_count(), q, "{f}");
            assert_eq!(random_sentence(seed, q, 3), f);
        }
    }
}
