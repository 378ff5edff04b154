//! The labelled digraph `E_w` of a sum-of-words unitary and its path condition.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::endo::IndexPairSet;
use crate::error::{Error, Result};
use crate::word::MultiIndex;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    /// Sorted distinct tails of the class, comma separated.
    pub name: String,
    pub tails: Vec<MultiIndex>,
    /// `psi_1 = |alpha| - |beta|`, shared by every pair of the class.
    pub label: i32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EwGraph {
    pub vertices: Vec<Vertex>,
    pub edges: BTreeSet<(usize, usize)>,
    succ: Vec<Vec<usize>>,
}

impl EwGraph {
    /// Builds a graph from labelled vertices and index edges.
    pub fn new(vertices: Vec<Vertex>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges: BTreeSet<(usize, usize)> = edges.into_iter().collect();
        let mut succ = vec![Vec::new(); vertices.len()];
        for &(a, b) in &edges {
            succ[a].push(b);
        }
        Self {
            vertices,
            edges,
            succ,
        }
    }

    /// An anonymous labelled graph; vertex `i` is named `v{i}`.
    pub fn from_labels(labels: &[i32], edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let vertices = labels
            .iter()
            .enumerate()
            .map(|(i, &label)| Vertex {
                name: format!("v{i}"),
                tails: Vec::new(),
                label,
            })
            .collect();
        Self::new(vertices, edges)
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    /// Edges as `(from name, to name)`.
    pub fn named_edges(&self) -> Vec<(String, String)> {
        self.edges
            .iter()
            .map(|&(a, b)| (self.vertices[a].name.clone(), self.vertices[b].name.clone()))
            .collect()
    }

    /// Graphviz rendering with deterministic vertex and edge order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph E_w {\n");
        for v in &self.vertices {
            let label = match v.label {
                l if l > 0 => format!("+{l}"),
                l => l.to_string(),
            };
            writeln!(out, "  \"{}\" [label=\"{} : {}\"];", v.name, v.name, label).unwrap();
        }
        for (a, b) in self.named_edges() {
            writeln!(out, "  \"{a}\" -> \"{b}\";").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

impl Serialize for EwGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            vertices: &'a [Vertex],
            edges: Vec<(String, String)>,
        }
        Repr {
            vertices: &self.vertices,
            edges: self.named_edges(),
        }
        .serialize(s)
    }
}

/// `E_w` together with the data it was built from.
#[derive(Clone, Debug)]
pub struct EwBuild {
    pub profile: IndexPairSet,
    /// Vertex of each pair, indexed like `profile.pairs()`.
    pub class_of: Vec<usize>,
    pub graph: EwGraph,
    /// Pairs `(alpha, beta)` with some tail strictly extending `alpha`. The
    /// edge rule only sees tails that are prefixes of `alpha`, so the graph
    /// describes `w` faithfully only when this is empty.
    pub uncovered: Vec<usize>,
}

impl EwBuild {
    pub fn is_complete(&self) -> bool {
        self.uncovered.is_empty()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Builds `E_w` from the index pairs of `w`.
///
/// Pairs whose tails overlap are merged into one vertex; every degree must
/// lie in `{-1, 0, 1}` and be constant on each vertex.
pub fn build_ew(profile: &IndexPairSet) -> Result<EwBuild> {
    let pairs = profile.pairs();
    if let Some((a, b)) = pairs
        .iter()
        .find(|(a, b)| (a.len() as i32 - b.len() as i32).abs() > 1)
    {
        return Err(Error::DegreeOutOfRange {
            alpha: a.to_string(),
            beta: b.to_string(),
            degree: a.len() as i32 - b.len() as i32,
        });
    }
    let tails = profile.tails();
    let m = pairs.len();
    let mut parent: Vec<usize> = (0..m).collect();
    for i in 0..m {
        for j in i + 1..m {
            if tails[i].is_comparable(&tails[j]) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..m {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut classes: Vec<(String, Vec<MultiIndex>, Vec<usize>)> = groups
        .into_values()
        .map(|members| {
            let set: BTreeSet<MultiIndex> = members.iter().map(|&i| tails[i].clone()).collect();
            let ts: Vec<MultiIndex> = set.into_iter().collect();
            let name = ts
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",");
            (name, ts, members)
        })
        .collect();
    classes.sort_by(|x, y| x.0.cmp(&y.0));

    let degree = |i: usize| pairs[i].0.len() as i32 - pairs[i].1.len() as i32;
    let mut class_of = vec![0; m];
    let mut vertices = Vec::with_capacity(classes.len());
    for (c, (name, ts, members)) in classes.into_iter().enumerate() {
        let labels: BTreeSet<i32> = members.iter().map(|&i| degree(i)).collect();
        if labels.len() > 1 {
            return Err(Error::Psi1NotConstant {
                class: name,
                labels: labels.into_iter().collect(),
            });
        }
        for &i in &members {
            class_of[i] = c;
        }
        vertices.push(Vertex {
            name,
            tails: ts,
            label: degree(members[0]),
        });
    }

    let mut edges = BTreeSet::new();
    let mut uncovered = Vec::new();
    for (i, (alpha, _)) in pairs.iter().enumerate() {
        for (j, t) in tails.iter().enumerate() {
            if t.is_prefix_of(alpha) {
                edges.insert((class_of[i], class_of[j]));
            } else if alpha.is_prefix_of(t) && !uncovered.contains(&i) {
                uncovered.push(i);
            }
        }
    }
    Ok(EwBuild {
        profile: profile.clone(),
        class_of,
        graph: EwGraph::new(vertices, edges),
        uncovered,
    })
}

/// Two equal-length walks from a common start ending on differently labelled vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathWitness {
    pub start: String,
    pub length: usize,
    pub ends: (String, String),
    pub labels: (i32, i32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathCondition {
    pub holds: bool,
    pub witness: Option<PathWitness>,
    /// Unordered vertex pairs reached.
    pub pair_states: usize,
    /// Longest walk length that produced a new pair.
    pub max_depth: usize,
    /// Checking `F_n^r` suffices: `r = max_depth + 1`.
    pub bound_r: usize,
}

/// Checks that any two walks of equal length from a common vertex end on
/// vertices with equal labels.
///
/// Breadth-first search over unordered vertex pairs, seeded with the
/// diagonal; at most `|V| (|V| + 1) / 2` states.
pub fn path_condition(g: &EwGraph) -> PathCondition {
    let n = g.vertices.len();
    let label = |v: usize| g.vertices[v].label;
    let key = |a: usize, b: usize| if a <= b { (a, b) } else { (b, a) };
    let mut origin: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    let mut queue = VecDeque::new();
    for a in 0..n {
        origin.insert((a, a), (a, 0));
        queue.push_back((a, a));
    }
    let mut max_depth = 0;
    while let Some((b, c)) = queue.pop_front() {
        let (start, depth) = origin[&(b, c)];
        if label(b) != label(c) {
            return PathCondition {
                holds: false,
                witness: Some(PathWitness {
                    start: g.vertices[start].name.clone(),
                    length: depth,
                    ends: (g.vertices[b].name.clone(), g.vertices[c].name.clone()),
                    labels: (label(b), label(c)),
                }),
                pair_states: origin.len(),
                max_depth: depth,
                bound_r: depth + 1,
            };
        }
        max_depth = max_depth.max(depth);
        for &b2 in g.successors(b) {
            for &c2 in g.successors(c) {
                let k = key(b2, c2);
                if let std::collections::hash_map::Entry::Vacant(e) = origin.entry(k) {
                    e.insert((start, depth + 1));
                    queue.push_back(k);
                }
            }
        }
    }
    PathCondition {
        holds: true,
        witness: None,
        pair_states: origin.len(),
        max_depth,
        bound_r: max_depth + 1,
    }
}
