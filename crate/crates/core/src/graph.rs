//! The degeneration order on the catalog: edges from verified witnesses plus
//! `X → C5` for every `X`, with closure, Hasse reduction and comparison
//! against a reference edge list.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::catalog::{self, ZERO_ALGEBRA};
use crate::degeneration::Verdict;

pub type Edge = (String, String);
pub type EdgeSet = BTreeSet<Edge>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("cycle through {0:?}")]
    Cycle(Vec<String>),
    #[error("verdict {0} is not VERIFIED")]
    Unverified(String),
    #[error("unknown algebra `{0}`")]
    UnknownNode(String),
    #[error("malformed graph document: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Witness(String),
    TrivialToZero,
    Transitive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub name: String,
    pub dim_der: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub source: String,
    pub target: String,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerationGraph {
    pub nodes: Vec<Node>,
    pub edges: Vec<GraphEdge>,
}

fn catalog_nodes() -> Vec<Node> {
    catalog::entries().iter().map(|e| Node { name: e.name.clone(), dim_der: e.expected_der_dim }).collect()
}

/// Graph of the verified witnesses plus the trivial edges to the zero
/// algebra. Self-degenerations are dropped.
pub fn build(verified: &[Verdict]) -> Result<DegenerationGraph, GraphError> {
    let mut edges: BTreeMap<Edge, Provenance> = BTreeMap::new();
    for v in verified {
        if !v.is_verified() {
            return Err(GraphError::Unverified(v.id()));
        }
        if v.source != v.target {
            edges.entry((v.source.clone(), v.target.clone())).or_insert_with(|| Provenance::Witness(v.id()));
        }
    }
    for name in catalog::names().filter(|&n| n != ZERO_ALGEBRA) {
        edges.entry((name.to_string(), ZERO_ALGEBRA.to_string())).or_insert(Provenance::TrivialToZero);
    }
    let g = DegenerationGraph {
        nodes: catalog_nodes(),
        edges: edges
            .into_iter()
            .map(|((source, target), provenance)| GraphEdge { source, target, provenance })
            .collect(),
    };
    if let Some(cycle) = find_cycle(&g.edge_set()) {
        return Err(GraphError::Cycle(cycle));
    }
    Ok(g)
}

impl DegenerationGraph {
    pub fn edge_set(&self) -> EdgeSet {
        self.edges.iter().map(|e| (e.source.clone(), e.target.clone())).collect()
    }

    fn with_edges(&self, edges: &EdgeSet) -> DegenerationGraph {
        let direct: BTreeMap<Edge, &Provenance> =
            self.edges.iter().map(|e| ((e.source.clone(), e.target.clone()), &e.provenance)).collect();
        DegenerationGraph {
            nodes: self.nodes.clone(),
            edges: edges
                .iter()
                .map(|(s, t)| GraphEdge {
                    source: s.clone(),
                    target: t.clone(),
                    provenance: direct.get(&(s.clone(), t.clone())).map_or(Provenance::Transitive, |p| (*p).clone()),
                })
                .collect(),
        }
    }

    pub fn closure_graph(&self) -> DegenerationGraph {
        self.with_edges(&transitive_closure(self))
    }

    pub fn hasse_graph(&self) -> DegenerationGraph {
        self.with_edges(&hasse_reduction(self))
    }

    /// Nodes without incoming edges.
    pub fn sources(&self) -> Vec<String> {
        let targets: BTreeSet<&str> = self.edges.iter().map(|e| e.target.as_str()).collect();
        self.nodes.iter().filter(|n| !targets.contains(n.name.as_str())).map(|n| n.name.clone()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<DegenerationGraph, GraphError> {
        serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))
    }

    /// DOT with one `rank=same` group per `dim Der` value.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph degenerations {\n");
        if !self.nodes.is_empty() {
            out.push_str("  rankdir=TB;\n  node [shape=box];\n");
        }
        let mut levels: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
        for n in &self.nodes {
            levels.entry(n.dim_der).or_default().push(&n.name);
        }
        for (level, names) in &levels {
            let quoted: Vec<String> = names.iter().map(|n| format!("\"{n}\";")).collect();
            let _ = writeln!(out, "  {{ rank=same; /* dim Der = {level} */ {} }}", quoted.join(" "));
        }
        for e in &self.edges {
            let style = match e.provenance {
                Provenance::Witness(_) => "",
                Provenance::TrivialToZero => " [style=dotted]",
                Provenance::Transitive => " [style=dashed]",
            };
            let _ = writeln!(out, "  \"{}\" -> \"{}\"{style};", e.source, e.target);
        }
        out.push_str("}\n");
        out
    }
}

/// A cycle in the graph given by `edges`, if there is one.
pub fn find_cycle(edges: &EdgeSet) -> Option<Vec<String>> {
    let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (s, t) in edges {
        adj.entry(s).or_default().push(t);
    }
    // 0 unvisited, 1 on stack, 2 done
    let mut state: BTreeMap<&str, u8> = BTreeMap::new();
    fn visit<'a>(
        v: &'a str,
        adj: &BTreeMap<&'a str, Vec<&'a str>>,
        state: &mut BTreeMap<&'a str, u8>,
        stack: &mut Vec<&'a str>,
    ) -> Option<Vec<String>> {
        state.insert(v, 1);
        stack.push(v);
        for &w in adj.get(v).map(Vec::as_slice).unwrap_or(&[]) {
            match state.get(w).copied().unwrap_or(0) {
                1 => {
                    let from = stack.iter().position(|&x| x == w).expect("on stack");
                    return Some(stack[from..].iter().map(|s| s.to_string()).collect());
                }
                0 => {
                    if let Some(c) = visit(w, adj, state, stack) {
                        return Some(c);
                    }
                }
                _ => {}
            }
        }
        stack.pop();
        state.insert(v, 2);
        None
    }
    let starts: Vec<&str> = adj.keys().copied().collect();
    for v in starts {
        if state.get(v).copied().unwrap_or(0) == 0 {
            if let Some(c) = visit(v, &adj, &mut state, &mut Vec::new()) {
                return Some(c);
            }
        }
    }
    None
}

/// All pairs joined by a nonempty path.
pub fn closure_of(edges: &EdgeSet) -> EdgeSet {
    let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (s, t) in edges {
        adj.entry(s).or_default().push(t);
    }
    let mut out = EdgeSet::new();
    for &start in adj.keys() {
        let mut stack: Vec<&str> = adj[start].clone();
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        while let Some(v) = stack.pop() {
            if seen.insert(v) {
                out.insert((start.to_string(), v.to_string()));
                if let Some(next) = adj.get(v) {
                    stack.extend(next);
                }
            }
        }
    }
    out
}

/// Edges of an acyclic relation not implied by two others.
pub fn reduction_of(edges: &EdgeSet) -> EdgeSet {
    let closure = closure_of(edges);
    let mut succ: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for (s, t) in &closure {
        succ.entry(s).or_default().insert(t);
    }
    closure
        .iter()
        .filter(|(s, t)| {
            !succ[s.as_str()]
                .iter()
                .any(|&w| w != t && succ.get(w).is_some_and(|next| next.contains(t.as_str())))
        })
        .cloned()
        .collect()
}

pub fn transitive_closure(g: &DegenerationGraph) -> EdgeSet {
    closure_of(&g.edge_set())
}

pub fn hasse_reduction(g: &DegenerationGraph) -> EdgeSet {
    reduction_of(&g.edge_set())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GraphDiff {
    /// In the reference closure but not ours.
    pub closure_missing: Vec<Edge>,
    /// In our closure but not the reference's.
    pub closure_extra: Vec<Edge>,
    /// Reference edges absent from our Hasse reduction.
    pub reduction_missing: Vec<Edge>,
    /// Hasse edges absent from the reference.
    pub reduction_extra: Vec<Edge>,
    /// Reference edges implied by other reference edges.
    pub reference_redundant: Vec<Edge>,
}

impl GraphDiff {
    pub fn closure_equal(&self) -> bool {
        self.closure_missing.is_empty() && self.closure_extra.is_empty()
    }

    pub fn reduction_equal(&self) -> bool {
        self.reduction_missing.is_empty() && self.reduction_extra.is_empty()
    }
}

pub fn compare_with_reference(g: &DegenerationGraph, reference: &EdgeSet) -> GraphDiff {
    let ours = transitive_closure(g);
    let theirs = closure_of(reference);
    let hasse = hasse_reduction(g);
    let ref_reduced = reduction_of(reference);
    let minus = |a: &EdgeSet, b: &EdgeSet| a.difference(b).cloned().collect::<Vec<_>>();
    GraphDiff {
        closure_missing: minus(&theirs, &ours),
        closure_extra: minus(&ours, &theirs),
        reduction_missing: minus(reference, &hasse),
        reduction_extra: minus(&hasse, reference),
        reference_redundant: minus(reference, &ref_reduced),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(edges: &[(&str, &str)]) -> EdgeSet {
        edges.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn chain_reduction() {
        let e = set(&[("a", "b"), ("b", "c"), ("a", "c")]);
        assert_eq!(reduction_of(&e), set(&[("a", "b"), ("b", "c")]));
        assert_eq!(closure_of(&e), e);
        assert_eq!(closure_of(&closure_of(&e)), closure_of(&e));
    }

    #[test]
    fn cycles_found() {
        assert!(find_cycle(&set(&[("a", "b"), ("b", "a")])).is_some());
        assert!(find_cycle(&set(&[("a", "b"), ("b", "c"), ("a", "c")])).is_none());
    }

    #[test]
    fn empty_input_gives_trivial_edges() {
        let g = build(&[]).unwrap();
        assert_eq!(g.nodes.len(), 25);
        assert_eq!(g.edges.len(), 24);
        assert!(g.edges.iter().all(|e| e.provenance == Provenance::TrivialToZero));
        assert_eq!(DegenerationGraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn empty_graph_documents() {
        let g = DegenerationGraph::default();
        assert_eq!(g.to_dot(), "digraph degenerations {\n}\n");
        assert_eq!(DegenerationGraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn reference_with_removed_edge() {
        let g = build(&[]).unwrap();
        let mut reference = g.edge_set();
        let dropped = ("A_05".to_string(), ZERO_ALGEBRA.to_string());
        reference.remove(&dropped);
        let diff = compare_with_reference(&g, &reference);
        assert_eq!(diff.reduction_extra, vec![dropped.clone()]);
        assert_eq!(diff.closure_extra, vec![dropped]);
        assert!(diff.reduction_missing.is_empty());
    }
}
