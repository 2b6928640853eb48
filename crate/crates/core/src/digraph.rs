//! Labelled simple digraphs with the structural queries used for braid graphs
//! and `G_R`: acyclicity with a witness cycle, sources and sinks, and the
//! diameter of the underlying undirected graph.

use std::collections::{HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use petgraph::algo::{is_isomorphic, toposort};
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::EdgeRef;
use petgraph::Direction;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Digraph<T, E = ()> {
    graph: DiGraph<T, E>,
    index: HashMap<T, NodeIndex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigraphReport<T> {
    pub acyclic: bool,
    pub sources: Vec<T>,
    pub sinks: Vec<T>,
    /// `None` when the graph is empty or disconnected.
    pub undirected_diameter: Option<usize>,
}

impl<T: Clone + Eq + Hash + Ord + Debug, E: Clone> Default for Digraph<T, E> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Clone + Eq + Hash + Ord + Debug, E: Clone> Digraph<T, E> {
    pub fn new() -> Self {
        Digraph {
            graph: DiGraph::new(),
            index: HashMap::new(),
        }
    }

    pub fn add_node(&mut self, label: T) -> NodeIndex {
        if let Some(&i) = self.index.get(&label) {
            return i;
        }
        let i = self.graph.add_node(label.clone());
        self.index.insert(label, i);
        i
    }

    /// Adds `a → b`; an existing arc keeps its original weight.
    pub fn add_arc(&mut self, a: &T, b: &T, weight: E) -> Result<bool> {
        let ia = *self
            .index
            .get(a)
            .ok_or_else(|| Error::UnknownLabel(format!("{a:?}")))?;
        let ib = *self
            .index
            .get(b)
            .ok_or_else(|| Error::UnknownLabel(format!("{b:?}")))?;
        if self.graph.contains_edge(ia, ib) {
            return Ok(false);
        }
        self.graph.add_edge(ia, ib, weight);
        Ok(true)
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn arc_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn nodes(&self) -> impl Iterator<Item = &T> {
        self.graph.node_weights()
    }

    pub fn contains_arc(&self, a: &T, b: &T) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&ia), Some(&ib)) => self.graph.contains_edge(ia, ib),
            _ => false,
        }
    }

    pub fn arcs(&self) -> Vec<(T, T, E)> {
        let mut out: Vec<(T, T, E)> = self
            .graph
            .edge_references()
            .map(|e| {
                (
                    self.graph[e.source()].clone(),
                    self.graph[e.target()].clone(),
                    e.weight().clone(),
                )
            })
            .collect();
        out.sort_by(|x, y| (&x.0, &x.1).cmp(&(&y.0, &y.1)));
        out
    }

    pub fn is_acyclic(&self) -> bool {
        toposort(&self.graph, None).is_ok()
    }

    /// A directed cycle `[c0, c1, ..., c0]`, if any.
    pub fn find_cycle(&self) -> Option<Vec<T>> {
        let m = self.graph.node_count();
        let succ: Vec<Vec<usize>> = (0..m)
            .map(|i| {
                self.graph
                    .neighbors_directed(NodeIndex::new(i), Direction::Outgoing)
                    .map(|j| j.index())
                    .collect()
            })
            .collect();
        crate::poset::topological_order(&succ)
            .err()
            .map(|c| c.into_iter().map(|i| self.graph[NodeIndex::new(i)].clone()).collect())
    }

    pub fn sources(&self) -> Vec<T> {
        self.extremes(Direction::Incoming)
    }

    pub fn sinks(&self) -> Vec<T> {
        self.extremes(Direction::Outgoing)
    }

    fn extremes(&self, dir: Direction) -> Vec<T> {
        let mut out: Vec<T> = self
            .graph
            .node_indices()
            .filter(|&i| self.graph.neighbors_directed(i, dir).next().is_none())
            .map(|i| self.graph[i].clone())
            .collect();
        out.sort();
        out
    }

    /// Diameter of the underlying undirected graph, by BFS from every node.
    pub fn undirected_diameter(&self) -> Result<usize> {
        let m = self.graph.node_count();
        if m == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut best = 0;
        for s in self.graph.node_indices() {
            let mut dist = vec![usize::MAX; m];
            dist[s.index()] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in self.graph.neighbors_undirected(u) {
                    if dist[v.index()] == usize::MAX {
                        dist[v.index()] = dist[u.index()] + 1;
                        queue.push_back(v);
                    }
                }
            }
            if let Some(t) = (0..m).find(|&t| dist[t] == usize::MAX) {
                return Err(Error::Disconnected(
                    format!("{:?}", self.graph[s]),
                    format!("{:?}", self.graph[NodeIndex::new(t)]),
                ));
            }
            best = best.max(*dist.iter().max().unwrap());
        }
        Ok(best)
    }

    pub fn checks(&self) -> DigraphReport<T> {
        DigraphReport {
            acyclic: self.is_acyclic(),
            sources: self.sources(),
            sinks: self.sinks(),
            undirected_diameter: self.undirected_diameter().ok(),
        }
    }

    /// Hint-free directed isomorphism test (VF2), ignoring arc weights.
    pub fn is_isomorphic_to<U, F>(&self, other: &Digraph<U, F>) -> bool {
        is_isomorphic(&self.graph, &other.graph)
    }

    /// Whether `hint` maps nodes bijectively onto `other` and arcs onto arcs.
    pub fn is_isomorphic_with<U, F>(&self, other: &Digraph<U, F>, hint: impl Fn(&T) -> U) -> Result<bool>
    where
        U: Clone + Eq + Hash + Ord + Debug,
        F: Clone,
    {
        if self.node_count() != other.node_count() {
            return Ok(false);
        }
        let mut hit = vec![false; other.node_count()];
        let mut image = HashMap::new();
        for i in self.graph.node_indices() {
            let u = hint(&self.graph[i]);
            let j = *other
                .index
                .get(&u)
                .ok_or_else(|| Error::BadHint(format!("{:?} maps outside the target", self.graph[i])))?;
            if std::mem::replace(&mut hit[j.index()], true) {
                return Err(Error::BadHint(format!("{u:?} is hit twice")));
            }
            image.insert(i, j);
        }
        if self.arc_count() != other.arc_count() {
            return Ok(false);
        }
        Ok(self
            .graph
            .edge_references()
            .all(|e| other.graph.contains_edge(image[&e.source()], image[&e.target()])))
    }

    /// Graphviz rendering. `node_label` names nodes; `arc_attrs` returns extra
    /// attributes (without brackets) for each arc.
    pub fn to_dot(
        &self,
        name: &str,
        directed: bool,
        node_label: impl Fn(&T) -> String,
        arc_attrs: impl Fn(&E) -> String,
    ) -> String {
        let (kind, arrow) = if directed { ("digraph", "->") } else { ("graph", "--") };
        let mut nodes: Vec<NodeIndex> = self.graph.node_indices().collect();
        nodes.sort_by(|a, b| self.graph[*a].cmp(&self.graph[*b]));
        let pos: HashMap<NodeIndex, usize> = nodes.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let mut s = format!("{kind} {name} {{\n");
        for (p, &i) in nodes.iter().enumerate() {
            s.push_str(&format!("  n{p} [label=\"{}\"];\n", node_label(&self.graph[i])));
        }
        let mut arcs: Vec<(usize, usize, String)> = self
            .graph
            .edge_references()
            .map(|e| (pos[&e.source()], pos[&e.target()], arc_attrs(e.weight())))
            .collect();
        arcs.sort();
        for (a, b, attrs) in arcs {
            if attrs.is_empty() {
                s.push_str(&format!("  n{a} {arrow} n{b};\n"));
            } else {
                s.push_str(&format!("  n{a} {arrow} n{b} [{attrs}];\n"));
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(nodes: &[&'static str], arcs: &[(&'static str, &'static str)]) -> Digraph<&'static str> {
        let mut g = Digraph::new();
        for n in nodes {
            g.add_node(*n);
        }
        for (a, b) in arcs {
            g.add_arc(a, b, ()).unwrap();
        }
        g
    }

    #[test]
    fn structural_checks() {
        let single = graph(&["a"], &[]);
        assert_eq!(single.undirected_diameter().unwrap(), 0);
        let cyc = graph(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert!(!cyc.is_acyclic());
        assert_eq!(cyc.find_cycle().unwrap().len(), 3);
        let path = graph(&["a", "b", "c"], &[("a", "b"), ("c", "b")]);
        let r = path.checks();
        assert!(r.acyclic);
        assert_eq!(r.sources, vec!["a", "c"]);
        assert_eq!(r.sinks, vec!["b"]);
        assert_eq!(r.undirected_diameter, Some(2));
        let split = graph(&["a", "b"], &[]);
        assert!(matches!(split.undirected_diameter(), Err(Error::Disconnected(_, _))));
    }

    #[test]
    fn duplicate_arcs_collapse() {
        let mut g = graph(&["a", "b"], &[("a", "b")]);
        assert!(!g.add_arc(&"a", &"b", ()).unwrap());
        assert_eq!(g.arc_count(), 1);
        assert!(g.add_arc(&"a", &"z", ()).is_err());
    }

    #[test]
    fn isomorphism_with_hint() {
        let g = graph(&["a", "b"], &[("a", "b")]);
        let h = graph(&["x", "y"], &[("y", "x")]);
        assert!(g.is_isomorphic_to(&h));
        assert!(g.is_isomorphic_with(&h, |&t| if t == "a" { "y" } else { "x" }).unwrap());
        assert!(!g.is_isomorphic_with(&h, |&t| if t == "a" { "x" } else { "y" }).unwrap());
    }
}
