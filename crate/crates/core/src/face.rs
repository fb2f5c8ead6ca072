//! Face criterion for Minkowski sums of coordinate simplices.
//!
//! Pick a face `F_i` of every summand simplex `conv{e_a : a in lambda_i}`,
//! recorded by its vertex set `V(F_i)`. Merge coordinates that appear together
//! in some `V(F_i)` into classes, and draw an edge from the class of `V(F_i)`
//! to the class of every `b in lambda_i \ V(F_i)`. The sum of the chosen faces
//! is a face of the whole polytope exactly when this graph has no directed
//! cycle (a loop counts as one), and then its dimension is `d - #classes`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::WindowFamily;

/// A choice of one nonempty face per window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSelection<'a> {
    family: &'a WindowFamily,
    chosen: Vec<Vec<usize>>,
}

impl<'a> FaceSelection<'a> {
    pub fn new(family: &'a WindowFamily, chosen: Vec<Vec<usize>>) -> Result<Self> {
        if chosen.len() != family.len() {
            return Err(Error::InvalidSelection(format!(
                "{} faces given for {} windows",
                chosen.len(),
                family.len()
            )));
        }
        let mut sorted = Vec::with_capacity(chosen.len());
        for (i, mut face) in chosen.into_iter().enumerate() {
            face.sort_unstable();
            face.dedup();
            if face.is_empty() {
                return Err(Error::InvalidSelection(format!("face {i} is empty")));
            }
            let window = family.window(i);
            if let Some(a) = face.iter().find(|a| window.binary_search(a).is_err()) {
                return Err(Error::InvalidSelection(format!("{a} is not in window {i}")));
            }
            sorted.push(face);
        }
        Ok(Self {
            family,
            chosen: sorted,
        })
    }

    /// The whole polytope: every window chooses itself.
    pub fn full(family: &'a WindowFamily) -> Self {
        Self {
            family,
            chosen: family.windows().to_vec(),
        }
    }

    pub fn family(&self) -> &'a WindowFamily {
        self.family
    }

    pub fn chosen(&self) -> &[Vec<usize>] {
        &self.chosen
    }
}

/// A selection of one vertex per window, i.e. a word `(i_0, .., i_{n-1})`
/// with `i_j in lambda_j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSelection {
    word: Vec<usize>,
}

impl VertexSelection {
    pub fn new(family: &WindowFamily, word: Vec<usize>) -> Result<Self> {
        if word.len() != family.len() {
            return Err(Error::InvalidSelection(format!(
                "word of length {} for {} windows",
                word.len(),
                family.len()
            )));
        }
        for (i, a) in word.iter().enumerate() {
            if family.window(i).binary_search(a).is_err() {
                return Err(Error::InvalidSelection(format!("{a} is not in window {i}")));
            }
        }
        Ok(Self { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<usize>) -> Self {
        Self { word }
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// The point `sum_j e_{i_j}` in `R^d`.
    pub fn point(&self, ambient: usize) -> Vec<i64> {
        let mut p = vec![0i64; ambient];
        for &a in &self.word {
            p[a] += 1;
        }
        p
    }

    pub fn to_face_selection<'a>(&self, family: &'a WindowFamily) -> Result<FaceSelection<'a>> {
        FaceSelection::new(family, self.word.iter().map(|&a| vec![a]).collect())
    }
}

/// The directed graph on coordinate classes induced by a face selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionGraph {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    edges: BTreeSet<(usize, usize)>,
    acyclic: bool,
}

impl SelectionGraph {
    /// Classes ordered by their minimum element; each class is sorted.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    /// Deduplicated edges between class ids, loops included.
    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn is_acyclic(&self) -> bool {
        self.acyclic
    }

    /// Acyclicity of the subgraph left after deleting every sink class.
    pub fn acyclic_without_sinks(&self) -> bool {
        let mut has_out = vec![false; self.classes.len()];
        for &(u, _) in &self.edges {
            has_out[u] = true;
        }
        let kept: Vec<(usize, usize)> = self
            .edges
            .iter()
            .copied()
            .filter(|&(u, v)| has_out[u] && has_out[v])
            .collect();
        is_dag(self.classes.len(), &kept)
    }
}

/// Builds the graph for windows paired with chosen faces. Only the listed
/// pairs contribute; coordinates they never touch stay isolated singletons.
pub(crate) fn graph_of<'w, I>(ambient: usize, pairs: I) -> SelectionGraph
where
    I: IntoIterator<Item = (&'w [usize], &'w [usize])> + Clone,
{
    let mut uf = UnionFind::new(ambient);
    for (_, face) in pairs.clone() {
        for &a in &face[1..] {
            uf.union(face[0], a);
        }
    }

    let mut class_of = vec![usize::MAX; ambient];
    let mut root_class = vec![usize::MAX; ambient];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..ambient {
        let root = uf.find(a);
        if root_class[root] == usize::MAX {
            root_class[root] = classes.len();
            classes.push(Vec::new());
        }
        class_of[a] = root_class[root];
        classes[root_class[root]].push(a);
    }

    let mut edges = BTreeSet::new();
    for (window, face) in pairs {
        let source = class_of[face[0]];
        for b in window.iter().filter(|b| face.binary_search(b).is_err()) {
            edges.insert((source, class_of[*b]));
        }
    }
    let edge_list: Vec<(usize, usize)> = edges.iter().copied().collect();
    let acyclic = is_dag(classes.len(), &edge_list);
    SelectionGraph {
        classes,
        class_of,
        edges,
        acyclic,
    }
}

/// Kahn's algorithm; a loop leaves its node with positive in-degree forever.
fn is_dag(nodes: usize, edges: &[(usize, usize)]) -> bool {
    let mut indegree = vec![0usize; nodes];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    for &(u, v) in edges {
        indegree[v] += 1;
        out[u].push(v);
    }
    let mut stack: Vec<usize> = (0..nodes).filter(|&v| indegree[v] == 0).collect();
    let mut seen = 0;
    while let Some(u) = stack.pop() {
        seen += 1;
        for &v in &out[u] {
            indegree[v] -= 1;
            if indegree[v] == 0 {
                stack.push(v);
            }
        }
    }
    seen == nodes
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

pub fn build_selection_graph(sel: &FaceSelection<'_>) -> SelectionGraph {
    let pairs = sel
        .family
        .windows()
        .iter()
        .zip(&sel.chosen)
        .map(|(w, f)| (w.as_slice(), f.as_slice()));
    graph_of(sel.family.ambient_size(), pairs)
}

pub fn is_face(sel: &FaceSelection<'_>) -> bool {
    build_selection_graph(sel).is_acyclic()
}

/// `d - #classes` when the selection is a face.
pub fn face_dimension(sel: &FaceSelection<'_>) -> Result<usize> {
    let graph = build_selection_graph(sel);
    if !graph.is_acyclic() {
        return Err(Error::NotAFace);
    }
    Ok(sel.family.ambient_size() - graph.classes().len())
}

/// Normal cone of a face in `R^d / R(1, .., 1)`.
///
/// `equalities` holds `(a, b)` for `x_a = x_b`, `inequalities` holds `(a, b)`
/// for `x_a <= x_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeDescription {
    pub ambient: usize,
    pub equalities: Vec<(usize, usize)>,
    pub inequalities: Vec<(usize, usize)>,
}

impl ConeDescription {
    /// Whether a functional satisfies every relation.
    pub fn contains(&self, h: &[f64]) -> bool {
        self.equalities.iter().all(|&(a, b)| h[a] == h[b])
            && self.inequalities.iter().all(|&(a, b)| h[a] <= h[b])
    }
}

/// Equalities for every pair inside a class; one inequality per edge
/// `b -> a`, using minimum-index class representatives.
pub fn normal_cone(sel: &FaceSelection<'_>) -> Result<ConeDescription> {
    let graph = build_selection_graph(sel);
    if !graph.is_acyclic() {
        return Err(Error::NotAFace);
    }
    let mut equalities = Vec::new();
    for class in graph.classes() {
        for (i, &a) in class.iter().enumerate() {
            for &b in &class[i + 1..] {
                equalities.push((a, b));
            }
        }
    }
    let rep = |c: usize| graph.classes()[c][0];
    let inequalities: BTreeSet<(usize, usize)> = graph
        .edges()
        .iter()
        .map(|&(src, dst)| (rep(dst), rep(src)))
        .collect();
    Ok(ConeDescription {
        ambient: sel.family.ambient_size(),
        equalities,
        inequalities: inequalities.into_iter().collect(),
    })
}
