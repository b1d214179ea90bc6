//! Tarskian evaluation by expanding every quantifier over all vertices.

use super::Formula;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest `|V|^q` the evaluator accepts by default.
pub const DEFAULT_EVAL_BUDGET: f64 = 1e9;

enum Node {
    Forall(usize, Box<Node>),
    Exists(usize, Box<Node>),
    Edge(usize, usize),
    Eq(usize, usize),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
}

/// Resolves names to slots; a rebound name gets a fresh slot.
fn compile(f: &Formula, scope: &mut Vec<String>, slots: &mut usize) -> Result<Node> {
    let find = |scope: &[String], x: &str| {
        scope
            .iter()
            .rposition(|y| y == x)
            .ok_or_else(|| Error::Parameter(format!("free variable {x:?}; only closed formulas are evaluated")))
    };
    Ok(match f {
        Formula::Forall(x, g) | Formula::Exists(x, g) => {
            let slot = scope.len();
            scope.push(x.clone());
            let body = Box::new(compile(g, scope, slots)?);
            scope.pop();
            *slots = (*slots).max(slot + 1);
            if matches!(f, Formula::Forall(..)) {
                Node::Forall(slot, body)
            } else {
                Node::Exists(slot, body)
            }
        }
        Formula::Edge(x, y) => Node::Edge(find(scope, x)?, find(scope, y)?),
        Formula::Eq(x, y) => Node::Eq(find(scope, x)?, find(scope, y)?),
        Formula::Not(g) => Node::Not(Box::new(compile(g, scope, slots)?)),
        Formula::And(gs) => Node::And(gs.iter().map(|g| compile(g, scope, slots)).collect::<Result<_>>()?),
        Formula::Or(gs) => Node::Or(gs.iter().map(|g| compile(g, scope, slots)).collect::<Result<_>>()?),
        Formula::Implies(a, b) => Node::Implies(Box::new(compile(a, scope, slots)?), Box::new(compile(b, scope, slots)?)),
        Formula::Iff(a, b) => Node::Iff(Box::new(compile(a, scope, slots)?), Box::new(compile(b, scope, slots)?)),
    })
}

struct Model {
    n: usize,
    adj: Vec<bool>,
}

impl Model {
    fn holds(&self, node: &Node, env: &mut [usize]) -> bool {
        match node {
            Node::Forall(s, body) => (0..self.n).all(|v| {
                env[*s] = v;
                self.holds(body, env)
            }),
            Node::Exists(s, body) => (0..self.n).any(|v| {
                env[*s] = v;
                self.holds(body, env)
            }),
            Node::Edge(x, y) => self.adj[env[*x] * self.n + env[*y]],
            Node::Eq(x, y) => env[*x] == env[*y],
            Node::Not(f) => !self.holds(f, env),
            Node::And(fs) => fs.iter().all(|f| self.holds(f, env)),
            Node::Or(fs) => fs.iter().any(|f| self.holds(f, env)),
            Node::Implies(a, b) => !self.holds(a, env) || self.holds(b, env),
            Node::Iff(a, b) => self.holds(a, env) == self.holds(b, env),
        }
    }
}

/// Truth value of a closed formula on `g`.
pub fn evaluate(f: &Formula, g: &Graph) -> Result<bool> {
    evaluate_with_budget(f, g, DEFAULT_EVAL_BUDGET)
}

/// As [`evaluate`], refusing when `|V|^q` exceeds `budget`.
pub fn evaluate_with_budget(f: &Formula, g: &Graph, budget: f64) -> Result<bool> {
    let n = g.vertex_count();
    let q = f.quantifier_count();
    let cost = (n as f64).powi(q as i32);
    if cost > budget {
        return Err(Error::Capability(format!("{n}^{q} = {cost:.3e} assignments exceeds the budget {budget:.0e}")));
    }
    let mut slots = 0;
    let node = compile(f, &mut Vec::new(), &mut slots)?;
    let mut adj = vec![false; n * n];
    for &(u, v) in g.edges() {
        adj[u * n + v] = true;
        adj[v * n + u] = true;
    }
    Ok(Model { n, adj }.holds(&node, &mut vec![0; slots]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    #[test]
    fn basic_sentences() {
        let some_edge = Formula::parse("(exists x (exists y (E x y)))").unwrap();
        let edgeless = Graph::new(3, vec![], Family::Other).unwrap();
        assert!(!evaluate(&some_edge, &edgeless).unwrap());
        assert!(evaluate(&some_edge, &Graph::path(1).unwrap()).unwrap());
        // every vertex has a neighbour: true on C_4, false on P_2 plus an isolated vertex
        let no_isolated = Formula::parse("(forall x (exists y (E x y)))").unwrap();
        assert!(evaluate(&no_isolated, &Graph::cycle(4).unwrap()).unwrap());
        let lonely = Graph::new(4, vec![(0, 1), (1, 2)], Family::Other).unwrap();
        assert!(!evaluate(&no_isolated, &lonely).unwrap());
    }

    #[test]
    fn shadowed_names_and_errors() {
        let f = Formula::parse("(exists x (and (forall x (= x x)) (exists y (E x y))))").unwrap();
        assert!(evaluate(&f, &Graph::path(2).unwrap()).unwrap());
        assert!(evaluate(&Formula::parse("(E x y)").unwrap(), &Graph::path(2).unwrap()).is_err());
        let deep = Formula::parse("(forall a (forall b (forall c (= a b))))").unwrap();
        assert!(matches!(evaluate_with_budget(&deep, &Graph::path(9).unwrap(), 100.0), Err(Error::Capability(_))));
    }
}
