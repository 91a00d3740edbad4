//! Orbits of invariant tuples under type-I transformations.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::invariants::{lemma1, lift_paper, lift_with, InvariantTuple, PyPivot, SignConvention};
use crate::lpdo::Direction;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitNode {
    pub id: usize,
    #[serde(rename = "invariants")]
    pub tuple: InvariantTuple,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbitEdge {
    pub from: usize,
    pub to: usize,
    pub direction: Direction,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitGraph {
    pub schema: u32,
    pub nodes: Vec<OrbitNode>,
    pub edges: Vec<OrbitEdge>,
    pub seed_id: usize,
    pub truncated: bool,
}

impl OrbitGraph {
    pub fn node(&self, id: usize) -> &OrbitNode {
        &self.nodes[id]
    }

    pub fn find(&self, t: &InvariantTuple) -> Option<usize> {
        self.nodes.iter().find(|n| n.tuple.eq_checked(t)).map(|n| n.id)
    }

    pub fn successor(&self, from: usize, dir: Direction) -> Option<usize> {
        self.edges
            .iter()
            .find(|e| e.from == from && e.direction == dir)
            .map(|e| e.to)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }

    pub fn from_json(s: &str) -> Result<OrbitGraph, Error> {
        serde_json::from_str(s).map_err(|e| {
            Error::Parse(crate::error::ParseError {
                line: e.line(),
                column: e.column(),
                token: String::new(),
                message: format!("invalid orbit JSON: {e}"),
            })
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph orbit {\n");
        for n in &self.nodes {
            let label = format!("({})", n.tuple).replace('\\', "\\\\").replace('"', "\\\"");
            let _ = writeln!(out, "  n{} [label=\"{}\"];", n.id, label);
        }
        for e in &self.edges {
            let _ = writeln!(out, "  n{} -> n{} [label=\"{}\"];", e.from, e.to, e.direction.label());
        }
        out.push_str("}\n");
        out
    }
}

/// Breadth-first exploration from `seed`.
///
/// Nodes at depth `max_depth` are discovered but not expanded; at most
/// `max_nodes` nodes are discovered. Either limit sets `truncated`.
pub fn explore(
    seed: &InvariantTuple,
    max_depth: usize,
    max_nodes: usize,
    sign: SignConvention,
) -> Result<OrbitGraph, Error> {
    let sign = sign.resolved();
    explore_by(seed, max_depth, max_nodes, |t, dir| {
        if !lemma1(t, sign).holds(dir) {
            return Ok(None);
        }
        match lift_with(t, dir, sign) {
            Ok(l) => Ok(Some(l.tuple)),
            Err(Error::ZeroPivot) => Ok(None),
            Err(e) => Err(e),
        }
    })
}

/// Exploration in the `paper` orientation with a chosen p_y pivot.
pub(crate) fn explore_with_pivot(
    seed: &InvariantTuple,
    max_depth: usize,
    max_nodes: usize,
    py: PyPivot,
) -> Result<OrbitGraph, Error> {
    explore_by(seed, max_depth, max_nodes, |t, dir| {
        if !lemma1(t, SignConvention::Paper).holds(dir) {
            return Ok(None);
        }
        match lift_paper(t, dir, py) {
            Ok(l) => Ok(Some(l.tuple)),
            Err(Error::ZeroPivot) => Ok(None),
            Err(e) => Err(e),
        }
    })
}

fn explore_by<F>(seed: &InvariantTuple, max_depth: usize, max_nodes: usize, step: F) -> Result<OrbitGraph, Error>
where
    F: Fn(&InvariantTuple, Direction) -> Result<Option<InvariantTuple>, Error>,
{
    let mut nodes = vec![OrbitNode { id: 0, tuple: seed.clone() }];
    let mut index: HashMap<InvariantTuple, usize> = HashMap::from([(seed.clone(), 0)]);
    let mut depth = vec![0usize];
    let mut edges = Vec::new();
    let mut truncated = false;
    let mut queue = VecDeque::from([0usize]);

    while let Some(id) = queue.pop_front() {
        if depth[id] >= max_depth {
            truncated = true;
            continue;
        }
        let t = nodes[id].tuple.clone();
        for dir in Direction::ALL {
            let Some(image) = step(&t, dir)? else { continue };
            // Canonical forms make hashing an exact dedup.
            let to = match index.get(&image) {
                Some(&to) => to,
                None => {
                    if nodes.len() >= max_nodes {
                        truncated = true;
                        continue;
                    }
                    let to = nodes.len();
                    nodes.push(OrbitNode { id: to, tuple: image.clone() });
                    index.insert(image, to);
                    depth.push(depth[id] + 1);
                    queue.push_back(to);
                    to
                }
            };
            edges.push(OrbitEdge { from: id, to, direction: dir });
        }
    }
    Ok(OrbitGraph { schema: 1, nodes, edges, seed_id: 0, truncated })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitKind {
    Finite,
    TruncatedInfinite,
}

/// A closed walk, listed from its smallest node id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub nodes: Vec<usize>,
    pub word: Vec<Direction>,
}

impl Cycle {
    pub fn word_string(&self) -> String {
        let w: Vec<&str> = self.word.iter().map(|d| d.label()).collect();
        format!("{{{}}}", w.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub kind: OrbitKind,
    pub cycles: Vec<Cycle>,
}

/// Finite iff exploration closed; cycles are the elementary cycles of length
/// at most `max_cycle_len` (self-loops included).
pub fn classify(g: &OrbitGraph, max_cycle_len: usize) -> Classification {
    let kind = if g.truncated { OrbitKind::TruncatedInfinite } else { OrbitKind::Finite };
    let mut adj: Vec<Vec<&OrbitEdge>> = vec![Vec::new(); g.nodes.len()];
    for e in &g.edges {
        adj[e.from].push(e);
    }
    let mut cycles = Vec::new();
    for start in 0..g.nodes.len() {
        let mut path_nodes = vec![start];
        let mut path_word = Vec::new();
        dfs_cycles(start, start, &adj, max_cycle_len, &mut path_nodes, &mut path_word, &mut cycles);
    }
    Classification { kind, cycles }
}

fn dfs_cycles(
    start: usize,
    at: usize,
    adj: &[Vec<&OrbitEdge>],
    max_len: usize,
    nodes: &mut Vec<usize>,
    word: &mut Vec<Direction>,
    out: &mut Vec<Cycle>,
) {
    for e in &adj[at] {
        if e.to == start {
            let mut w = word.clone();
            w.push(e.direction);
            out.push(Cycle { nodes: nodes.clone(), word: w });
            continue;
        }
        // Only nodes above the start, so each cycle is found once.
        if e.to < start || nodes.contains(&e.to) || word.len() + 1 >= max_len {
            continue;
        }
        nodes.push(e.to);
        word.push(e.direction);
        dfs_cycles(start, e.to, adj, max_len, nodes, word, out);
        nodes.pop();
        word.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::tuple;

    #[test]
    fn zero_seed_has_no_edges() {
        let g = explore(&InvariantTuple::zero(), 5, 10, SignConvention::Auto).unwrap();
        assert_eq!((g.nodes.len(), g.edges.len(), g.truncated), (1, 0, false));
        assert_eq!(g.to_dot(), "digraph orbit {\n  n0 [label=\"(0, 0, 0, 0, 0)\"];\n}\n");
    }

    #[test]
    fn x_orbit() {
        let g = explore(&tuple("0,0,0,0,x"), 2, 50, SignConvention::Auto).unwrap();
        assert_eq!(g.nodes.len(), 3);
        assert!(!g.truncated);
        let left = g.find(&tuple("-1/x,0,0,0,x")).unwrap();
        let right = g.find(&tuple("1/x,0,0,-1/x^2,x")).unwrap();
        assert_eq!(g.successor(0, Direction::Px), Some(left));
        assert_eq!(g.successor(left, Direction::Pxy), Some(0));
        for id in 0..3 {
            assert_eq!(g.successor(id, Direction::Py), Some(id));
        }
        let c = classify(&g, 4);
        assert_eq!(c.kind, OrbitKind::Finite);
        assert!(c.cycles.iter().any(|c| c.nodes == vec![0, left] && c.word == vec![Direction::Px, Direction::Pxy]));
        assert!(c.cycles.iter().any(|c| c.nodes == vec![0, right]));
    }

    #[test]
    fn json_round_trip() {
        let g = explore(&tuple("0,0,x,0,1"), 3, 50, SignConvention::Auto).unwrap();
        assert!(g.truncated);
        assert_eq!(OrbitGraph::from_json(&g.to_json()).unwrap(), g);
        assert_eq!(classify(&g, 4).kind, OrbitKind::TruncatedInfinite);
    }

    #[test]
    fn node_budget() {
        let g = explore(&tuple("0,0,x,0,1"), 10, 2, SignConvention::Auto).unwrap();
        assert_eq!(g.nodes.len(), 2);
        assert!(g.truncated);
    }
}
