//! Degeneration graphs: verified contraction edges between atlas classes,
//! their reachability closure, transitive reduction and DOT export.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use petgraph::algo::{has_path_connecting, is_cyclic_directed};
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::EdgeRef;
use petgraph::Direction;
use rayon::prelude::*;
use serde::Serialize;

use crate::atlas::canonical;
use crate::catalog::{j3_families, j4_deformations, j4_families, DeformationSpec, FamilySpec};
use crate::classify::ClassId;
use crate::degeneration::{limit_of_family, scaling_family, verify_polynomial_deformation};
use crate::error::{Error, ParseError, Result};
use crate::invariants::profile;

/// What establishes an edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Evidence {
    /// A verified contraction family.
    Family(String),
    /// A verified polynomial deformation, read backwards.
    Deformation(String),
    /// `x_i = t e_i`.
    Scaling,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub source: ClassId,
    pub target: ClassId,
    pub evidence: Evidence,
}

/// A family or deformation that did not establish its edge.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub name: String,
    pub source: ClassId,
    pub target: ClassId,
    pub reason: String,
}

/// Classes as nodes and verified contractions as edges.
#[derive(Clone, Debug)]
pub struct DegenerationGraph {
    graph: DiGraph<ClassId, Evidence>,
    index: HashMap<ClassId, NodeIndex>,
    failures: Vec<Failure>,
}

impl DegenerationGraph {
    pub fn new(nodes: &[ClassId]) -> Self {
        let mut graph = DiGraph::new();
        let mut index = HashMap::new();
        for &c in nodes {
            index.entry(c).or_insert_with(|| graph.add_node(c));
        }
        DegenerationGraph {
            graph,
            index,
            failures: Vec::new(),
        }
    }

    /// Adds an edge unless one already joins the same classes. Returns
    /// whether an edge was inserted.
    pub fn add_edge(&mut self, source: ClassId, target: ClassId, evidence: Evidence) -> Result<bool> {
        let node = |c: ClassId| {
            self.index
                .get(&c)
                .copied()
                .ok_or_else(|| Error::Precondition(format!("{c} is not a node")))
        };
        let (a, b) = (node(source)?, node(target)?);
        if self.graph.find_edge(a, b).is_some() {
            return Ok(false);
        }
        self.graph.add_edge(a, b, evidence);
        Ok(true)
    }

    pub fn nodes(&self) -> Vec<ClassId> {
        let mut v: Vec<ClassId> = self.graph.node_weights().copied().collect();
        v.sort();
        v
    }

    pub fn edges(&self) -> Vec<GraphEdge> {
        let mut v: Vec<GraphEdge> = self
            .graph
            .edge_references()
            .map(|e| GraphEdge {
                source: self.graph[e.source()],
                target: self.graph[e.target()],
                evidence: e.weight().clone(),
            })
            .collect();
        v.sort_by_key(|e| (e.source, e.target));
        v
    }

    pub fn edge_pairs(&self) -> BTreeSet<(ClassId, ClassId)> {
        self.edges().into_iter().map(|e| (e.source, e.target)).collect()
    }

    pub fn failures(&self) -> &[Failure] {
        &self.failures
    }

    pub fn is_acyclic(&self) -> bool {
        !is_cyclic_directed(&self.graph)
    }

    /// Whether `b` lies in the reflexive-transitive closure of `a`.
    pub fn reaches(&self, a: ClassId, b: ClassId) -> bool {
        match (self.index.get(&a), self.index.get(&b)) {
            (Some(&x), Some(&y)) => has_path_connecting(&self.graph, x, y, None),
            _ => false,
        }
    }

    /// Classes reachable from `a` by at least one edge.
    pub fn closure_of(&self, a: ClassId) -> BTreeSet<ClassId> {
        self.nodes()
            .into_iter()
            .filter(|&b| b != a && self.reaches(a, b))
            .collect()
    }

    /// All pairs `(a, b)`, `a ≠ b`, with `b` reachable from `a`.
    pub fn closure(&self) -> BTreeSet<(ClassId, ClassId)> {
        let nodes = self.nodes();
        let mut out = BTreeSet::new();
        for &a in &nodes {
            for b in self.closure_of(a) {
                out.insert((a, b));
            }
        }
        out
    }

    /// Nodes without incoming edges.
    pub fn sources(&self) -> Vec<ClassId> {
        let mut v: Vec<ClassId> = self
            .graph
            .node_indices()
            .filter(|&n| {
                self.graph
                    .neighbors_directed(n, Direction::Incoming)
                    .next()
                    .is_none()
            })
            .map(|n| self.graph[n])
            .collect();
        v.sort();
        v
    }

    /// The minimal edge set with the same reachability; defined for acyclic
    /// graphs, where it is unique.
    pub fn transitive_reduction(&self) -> BTreeSet<(ClassId, ClassId)> {
        let closure = self.closure();
        let nodes = self.nodes();
        closure
            .iter()
            .copied()
            .filter(|&(a, b)| {
                !nodes
                    .iter()
                    .any(|&m| m != a && m != b && closure.contains(&(a, m)) && closure.contains(&(m, b)))
            })
            .collect()
    }

    /// DOT rendering of the transitive reduction, one rank per orbit dimension.
    pub fn to_dot(&self, name: &str) -> String {
        let mut ranks: BTreeMap<std::cmp::Reverse<usize>, Vec<ClassId>> = BTreeMap::new();
        for c in self.nodes() {
            let orbit = profile(&canonical(c)).map_or(0, |p| p.dim_orbit);
            ranks.entry(std::cmp::Reverse(orbit)).or_default().push(c);
        }
        let mut out = String::new();
        let _ = writeln!(out, "digraph {name} {{");
        let _ = writeln!(out, "  rankdir=TB;");
        for (std::cmp::Reverse(orbit), classes) in &ranks {
            let members: Vec<String> = classes.iter().map(|c| format!("\"{c}\";")).collect();
            let _ = writeln!(out, "  {{ rank=same; /* orbit {orbit} */ {} }}", members.join(" "));
        }
        for (a, b) in self.transitive_reduction() {
            let _ = writeln!(out, "  \"{a}\" -> \"{b}\";");
        }
        out.push_str("}\n");
        out
    }
}

/// The edge set of a DOT digraph as written by [`DegenerationGraph::to_dot`].
pub fn parse_dot(text: &str) -> std::result::Result<BTreeSet<(ClassId, ClassId)>, ParseError> {
    let mut out = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let Some((lhs, rhs)) = raw.split_once("->") else {
            continue;
        };
        let clean = |s: &str| {
            s.trim()
                .trim_end_matches(';')
                .trim()
                .trim_matches('"')
                .parse::<ClassId>()
                .map_err(|e| e.at(idx + 1))
        };
        out.insert((clean(lhs)?, clean(rhs)?));
    }
    Ok(out)
}

fn add_scaling_edges(g: &mut DegenerationGraph, nodes: &[ClassId]) {
    for &c in nodes {
        if c.is_abelian() {
            continue;
        }
        let ab = ClassId::abelian(c.dim());
        let phi = canonical(c);
        match limit_of_family(&phi, &scaling_family(c.dim())) {
            Ok(l) if l.is_zero() => {
                let _ = g.add_edge(c, ab, Evidence::Scaling);
            }
            other => g.failures.push(Failure {
                name: "scaling".into(),
                source: c,
                target: ab,
                reason: format!("{other:?}"),
            }),
        }
    }
}

/// Verifies every family and deformation concurrently and assembles the
/// graph on `nodes`. Failures are collected, not raised.
pub fn build_graph(
    nodes: &[ClassId],
    families: &[FamilySpec],
    deformations: &[DeformationSpec],
) -> DegenerationGraph {
    let mut g = DegenerationGraph::new(nodes);
    add_scaling_edges(&mut g, nodes);
    let outcomes: Vec<(usize, std::result::Result<bool, Error>)> =
        families.par_iter().enumerate().map(|(i, s)| (i, s.verify())).collect();
    for (i, outcome) in outcomes {
        let s = &families[i];
        let reason = match outcome {
            Ok(true) => match g.add_edge(s.source, s.target, Evidence::Family(s.name.into())) {
                Ok(_) => continue,
                Err(e) => e.to_string(),
            },
            Ok(false) => "inequalities fail".to_string(),
            Err(e) => e.to_string(),
        };
        g.failures.push(Failure {
            name: s.name.into(),
            source: s.source,
            target: s.target,
            reason,
        });
    }
    let reports: Vec<_> = deformations
        .par_iter()
        .map(|d| verify_polynomial_deformation(&d.base_tensor(), &d.direction()))
        .collect();
    for (d, report) in deformations.iter().zip(reports) {
        let reason = match report {
            Ok(r) if r.is_deformation() => {
                match g.add_edge(r.class_at_one, r.base_class, Evidence::Deformation(d.name.into())) {
                    Ok(_) if r.class_at_one == d.claimed => continue,
                    Ok(_) => format!("deforms into {} rather than {}", r.class_at_one, d.claimed),
                    Err(e) => e.to_string(),
                }
            }
            Ok(r) => format!("not a deformation: class at t=1 is {}", r.class_at_one),
            Err(e) => e.to_string(),
        };
        g.failures.push(Failure {
            name: d.name.into(),
            source: d.claimed,
            target: d.base,
            reason,
        });
    }
    g
}

/// The graph of `J3` from the shipped families.
pub fn j3_graph() -> DegenerationGraph {
    build_graph(&ClassId::complex_classes(3), &j3_families(), &[])
}

/// The graph of `J4` from the shipped families and deformations.
pub fn j4_graph() -> DegenerationGraph {
    build_graph(&ClassId::complex_classes(4), &j4_families(), &j4_deformations())
}

/// Necessary conditions for rigidity, per class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityEvidence {
    pub class_id: ClassId,
    /// No verified edge ends at the class.
    pub no_incoming: bool,
    /// Largest orbit dimension among the nodes.
    pub maximal_orbit: bool,
    /// Characteristic sequence strictly larger than every other node's.
    pub unique_max_char_seq: bool,
}

pub fn rigidity_screen(graph: &DegenerationGraph) -> Result<Vec<RigidityEvidence>> {
    let nodes = graph.nodes();
    let profiles = nodes
        .iter()
        .map(|&c| profile(&canonical(c)))
        .collect::<Result<Vec<_>>>()?;
    let sources = graph.sources();
    let max_orbit = profiles.iter().map(|p| p.dim_orbit).max().unwrap_or(0);
    Ok(nodes
        .iter()
        .zip(&profiles)
        .map(|(&c, p)| RigidityEvidence {
            class_id: c,
            no_incoming: sources.contains(&c),
            maximal_orbit: p.dim_orbit == max_orbit,
            unique_max_char_seq: profiles
                .iter()
                .zip(&nodes)
                .all(|(q, &d)| d == c || q.char_seq < p.char_seq),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_family_list_gives_scaling_edges_only() {
        let g = build_graph(&ClassId::complex_classes(3), &[], &[]);
        let ab = ClassId::abelian(3);
        let want: BTreeSet<_> = (1..=3).map(|i| (ClassId::j3(i), ab)).collect();
        assert_eq!(g.edge_pairs(), want);
        assert!(g.failures().is_empty());
    }

    #[test]
    fn single_node_is_trivially_maximal() {
        let g = DegenerationGraph::new(&[ClassId::j3(2)]);
        let r = rigidity_screen(&g).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].no_incoming && r[0].maximal_orbit && r[0].unique_max_char_seq);
    }

    #[test]
    fn j3_closure() {
        let g = j3_graph();
        let ab = ClassId::abelian(3);
        assert_eq!(
            g.closure_of(ClassId::j3(1)),
            [ClassId::j3(2), ClassId::j3(3), ab].into_iter().collect()
        );
        assert_eq!(g.sources(), vec![ClassId::j3(1)]);
        assert!(g.is_acyclic());
    }

    #[test]
    fn reduction_drops_composite_edges() {
        let mut g = DegenerationGraph::new(&ClassId::complex_classes(3));
        let (a, b, c) = (ClassId::j3(1), ClassId::j3(2), ClassId::j3(3));
        g.add_edge(a, b, Evidence::Scaling).unwrap();
        g.add_edge(b, c, Evidence::Scaling).unwrap();
        g.add_edge(a, c, Evidence::Scaling).unwrap();
        assert_eq!(g.transitive_reduction(), [(a, b), (b, c)].into_iter().collect());
        assert_eq!(parse_dot(&g.to_dot("J3")).unwrap(), g.transitive_reduction());
    }

    #[test]
    fn j4_components() {
        let g = j4_graph();
        let j = ClassId::j4;
        assert!(g.is_acyclic());
        assert_eq!(g.sources(), vec![j(1), j(2)]);
        let mut want: BTreeSet<_> = [7, 9, 10, 11, 12].into_iter().map(j).collect();
        want.insert(ClassId::abelian(4));
        assert_eq!(g.closure_of(j(1)), want);
        let mut want: BTreeSet<_> = (3..=12).map(j).collect();
        want.insert(ClassId::abelian(4));
        assert_eq!(g.closure_of(j(2)), want);
        let failed: Vec<&str> = g.failures().iter().map(|f| f.name.as_str()).collect();
        assert_eq!(
            failed,
            ["phi9_phi11", "phi10_phi11", "phi3_phi6", "phi4_phi8", "phi4_phi10", "phi4+t*mu2"]
        );
    }
}
