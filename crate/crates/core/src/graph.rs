//! Monoid-metrised graphs.
//!
//! A graph is a finite set `X` with an idempotent root map `r` and an
//! involution `i` whose fixed points are exactly the fixed points of `r`.
//! Fixed points are vertices, the rest are half-edges, and an edge is an
//! orbit `{e, i(e)}`. Lengths live in a [`MonoidSpec`] and vanish exactly on
//! vertices.
//!
//! [`MetrisedGraph`] stores the edge list form; [`HalfEdgeGraph`] is the raw
//! `(X, r, i, l)` tuple and is what [`validate_graph`] checks. Half-edge ids
//! are derived from edge ids as `<edge>:0` (rooted at the first end) and
//! `<edge>:1`.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Axiom, Error, Result, Violation};
use crate::monoid::{MonoidHom, MonoidSpec};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub ends: [usize; 2],
    pub length: Vec<i64>,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    /// The endpoint other than `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

/// An element of `X`: a vertex, or a half-edge `2 * edge + side`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Vertex(usize),
    HalfEdge(usize),
}

#[derive(Debug, Clone)]
pub struct MetrisedGraph {
    monoid: MonoidSpec,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    index: HashMap<String, usize>,
}

impl PartialEq for MetrisedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.monoid == other.monoid && self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for MetrisedGraph {}

pub fn half_edge_id(edge: &str, side: usize) -> String {
    format!("{edge}:{side}")
}

impl MetrisedGraph {
    /// Builds and validates a graph from vertex ids and
    /// `(edge id, [end, end], length)` triples.
    pub fn new(
        monoid: MonoidSpec,
        vertices: Vec<String>,
        edges: Vec<(String, [String; 2], Vec<i64>)>,
    ) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Violation::new(Axiom::DuplicateId, Some(v), "repeated vertex id").into());
            }
        }
        let mut resolved = Vec::with_capacity(edges.len());
        for (id, ends, length) in edges {
            let mut idx = [0; 2];
            for (slot, end) in idx.iter_mut().zip(&ends) {
                *slot = *index.get(end).ok_or_else(|| {
                    Violation::new(Axiom::UnknownId, Some(&id), format!("unknown end vertex {end}"))
                })?;
            }
            resolved.push(Edge {
                id,
                ends: idx,
                length,
            });
        }
        Self::from_parts(monoid, vertices, resolved)
    }

    pub(crate) fn from_parts(monoid: MonoidSpec, vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let index = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let g = MetrisedGraph {
            monoid,
            vertices,
            edges,
            index,
        };
        g.check()?;
        Ok(g)
    }

    fn check(&self) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Violation::new(Axiom::Disconnected, None, "graph has no vertices").into());
        }
        let mut ids: HashSet<&str> = HashSet::new();
        for v in &self.vertices {
            if !ids.insert(v) {
                return Err(Violation::new(Axiom::DuplicateId, Some(v), "repeated vertex id").into());
            }
        }
        let mut edge_ids: HashSet<&str> = HashSet::new();
        for e in &self.edges {
            if !edge_ids.insert(&e.id) {
                return Err(Violation::new(Axiom::DuplicateId, Some(&e.id), "repeated edge id").into());
            }
            for side in 0..2 {
                if ids.contains(half_edge_id(&e.id, side).as_str()) {
                    return Err(Violation::new(
                        Axiom::DuplicateId,
                        Some(&e.id),
                        "half-edge id collides with a vertex id",
                    )
                    .into());
                }
            }
            if e.ends.iter().any(|&v| v >= self.vertices.len()) {
                return Err(Violation::new(Axiom::UnknownId, Some(&e.id), "end out of range").into());
            }
        }
        self.to_half_edge_graph().validate()?;
        Ok(())
    }

    pub fn monoid(&self) -> &MonoidSpec {
        &self.monoid
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn vertex_id(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    /// Looks up a vertex or half-edge id.
    pub fn element(&self, id: &str) -> Option<Element> {
        if let Some(v) = self.vertex_index(id) {
            return Some(Element::Vertex(v));
        }
        let (edge, side) = id.rsplit_once(':')?;
        let side: usize = match side {
            "0" => 0,
            "1" => 1,
            _ => return None,
        };
        let e = self.edges.iter().position(|e| e.id == edge)?;
        Some(Element::HalfEdge(2 * e + side))
    }

    pub fn element_id(&self, x: Element) -> String {
        match x {
            Element::Vertex(v) => self.vertices[v].clone(),
            Element::HalfEdge(h) => half_edge_id(&self.edges[h / 2].id, h % 2),
        }
    }

    pub fn half_edge_count(&self) -> usize {
        2 * self.edges.len()
    }

    /// `r(h)` for a half-edge.
    pub fn root(&self, h: usize) -> usize {
        self.edges[h / 2].ends[h % 2]
    }

    /// `i(h)` for a half-edge.
    pub fn twin(h: usize) -> usize {
        h ^ 1
    }

    pub fn half_edge_length(&self, h: usize) -> &[i64] {
        &self.edges[h / 2].length
    }

    /// Half-edges rooted at `v` (both halves of a loop at `v`).
    pub fn half_edges_at(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.half_edge_count()).filter(move |&h| self.root(h) == v)
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    pub fn is_unit_length(&self) -> bool {
        self.monoid.is_free() && self.monoid.rank() == 1 && self.edges.iter().all(|e| e.length == [1])
    }

    /// Multigraph adjacency: `adj[u]` lists `(v, edge index)` for every
    /// non-loop edge at `u`.
    pub fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            if !e.is_loop() {
                adj[e.ends[0]].push((e.ends[1], i));
                adj[e.ends[1]].push((e.ends[0], i));
            }
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// No cycles: connected, loopless, and `|E| = |V| - 1`.
    pub fn is_tree(&self) -> bool {
        !self.has_loops() && self.edges.len() + 1 == self.vertices.len()
    }

    pub fn with_monoid(&self, monoid: MonoidSpec) -> Result<Self> {
        Self::from_parts(monoid, self.vertices.clone(), self.edges.clone())
    }

    /// The raw `(X, r, i, l)` tuple. Elements are ordered vertices first,
    /// then half-edges `e:0, e:1` per edge.
    pub fn to_half_edge_graph(&self) -> HalfEdgeGraph {
        let n = self.vertices.len();
        let mut elements = self.vertices.clone();
        let mut root: Vec<usize> = (0..n).collect();
        let mut involution: Vec<usize> = (0..n).collect();
        let mut length = vec![self.monoid.zero(); n];
        for (i, e) in self.edges.iter().enumerate() {
            for side in 0..2 {
                elements.push(half_edge_id(&e.id, side));
                root.push(e.ends[side]);
                involution.push(n + 2 * i + (1 - side));
                length.push(e.length.clone());
            }
        }
        HalfEdgeGraph {
            monoid: self.monoid.clone(),
            elements,
            root,
            involution,
            length,
        }
    }
}

/// The literal `(X, r, i, l)` presentation of a metrised graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfEdgeGraph {
    pub monoid: MonoidSpec,
    pub elements: Vec<String>,
    pub root: Vec<usize>,
    pub involution: Vec<usize>,
    pub length: Vec<Vec<i64>>,
}

impl HalfEdgeGraph {
    /// Checks every graph and metric axiom, plus connectivity.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let n = self.elements.len();
        let id = |x: usize| Some(self.elements[x].as_str());
        let mut seen = HashSet::new();
        for x in 0..n {
            if !seen.insert(&self.elements[x]) {
                return Err(Violation::new(Axiom::DuplicateId, id(x), "repeated element id"));
            }
        }
        if self.root.len() != n || self.involution.len() != n || self.length.len() != n {
            return Err(Violation::new(Axiom::UnknownId, None, "maps must be defined on every element"));
        }
        for x in 0..n {
            let (r, i) = (self.root[x], self.involution[x]);
            if r >= n || i >= n {
                return Err(Violation::new(Axiom::UnknownId, id(x), "map leaves X"));
            }
            if self.root[r] != r {
                return Err(Violation::new(Axiom::RootIdempotent, id(x), "r(r(x)) != r(x)"));
            }
            if self.involution[i] != x {
                return Err(Violation::new(Axiom::Involution, id(x), "i(i(x)) != x"));
            }
            if (i == x) != (r == x) {
                return Err(Violation::new(Axiom::FixedPoints, id(x), "i(x) = x must hold iff r(x) = x"));
            }
        }
        for x in 0..n {
            let l = &self.length[x];
            if l.len() != self.monoid.rank() {
                return Err(Violation::new(
                    Axiom::LengthDimension,
                    id(x),
                    format!("length has {} coordinates, monoid rank is {}", l.len(), self.monoid.rank()),
                ));
            }
            if *l != self.length[self.involution[x]] {
                return Err(Violation::new(Axiom::LengthSymmetry, id(x), "l(i(x)) != l(x)"));
            }
            let is_vertex = self.involution[x] == x;
            let is_zero = l.iter().all(|&c| c == 0);
            if is_vertex != is_zero {
                return Err(Violation::new(
                    Axiom::LengthAxiom,
                    id(x),
                    "l(x) = 0 must hold exactly on vertices",
                ));
            }
            if !is_zero && !self.monoid.is_member(l).unwrap_or(false) {
                return Err(Violation::new(
                    Axiom::LengthMembership,
                    id(x),
                    format!("length {l:?} is not in the monoid"),
                ));
            }
        }
        // connectivity over vertices
        let vertices: Vec<usize> = (0..n).filter(|&x| self.involution[x] == x).collect();
        let Some(&start) = vertices.first() else {
            return Err(Violation::new(Axiom::Disconnected, None, "graph has no vertices"));
        };
        let mut reached = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for h in (0..n).filter(|&h| self.involution[h] != h && self.root[h] == v) {
                let w = self.root[self.involution[h]];
                if reached.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        if let Some(&v) = vertices.iter().find(|v| !reached.contains(v)) {
            return Err(Violation::new(Axiom::Disconnected, id(v), "vertex not reachable"));
        }
        Ok(())
    }

    /// Converts back to edge-list form. Edge ids are taken from half-edge
    /// ids of the form `<edge>:0`, falling back to the half-edge id itself.
    pub fn to_metrised(&self) -> Result<MetrisedGraph> {
        self.validate()?;
        let n = self.elements.len();
        let vertices: Vec<usize> = (0..n).filter(|&x| self.involution[x] == x).collect();
        let pos: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut edges = Vec::new();
        for h in 0..n {
            let t = self.involution[h];
            if t <= h {
                continue;
            }
            let id = self.elements[h]
                .strip_suffix(":0")
                .map(str::to_owned)
                .unwrap_or_else(|| self.elements[h].clone());
            edges.push(Edge {
                id,
                ends: [pos[&self.root[h]], pos[&self.root[t]]],
                length: self.length[h].clone(),
            });
        }
        let ids = vertices.iter().map(|&x| self.elements[x].clone()).collect();
        MetrisedGraph::from_parts(self.monoid.clone(), ids, edges)
    }
}

/// Report-style validation of a graph's `(X, r, i, l)` presentation.
pub fn validate_graph(g: &MetrisedGraph) -> std::result::Result<(), Violation> {
    g.to_half_edge_graph().validate()
}

/// Replaces every edge of length `n` by a path of `n` unit edges.
///
/// Fresh vertices on edge `e` are `e.1, ..., e.(n-1)` counted from the first
/// end; fresh edges are `e/1, ..., e/n`. Edges of length 1 keep their id.
pub fn subdivide_to_unit(g: &MetrisedGraph) -> Result<MetrisedGraph> {
    if !(g.monoid().is_free() && g.monoid().rank() == 1) {
        return Err(Error::MonoidMode("subdivision needs N-valued lengths".into()));
    }
    let mut vertices = g.vertices().to_vec();
    let mut edges = Vec::new();
    for e in g.edges() {
        let n = e.length[0];
        if n == 1 {
            edges.push(Edge {
                id: e.id.clone(),
                ends: e.ends,
                length: vec![1],
            });
            continue;
        }
        let mut prev = e.ends[0];
        for step in 1..=n {
            let next = if step == n {
                e.ends[1]
            } else {
                vertices.push(format!("{}.{}", e.id, step));
                vertices.len() - 1
            };
            edges.push(Edge {
                id: format!("{}/{}", e.id, step),
                ends: [prev, next],
                length: vec![1],
            });
            prev = next;
        }
    }
    MetrisedGraph::from_parts(MonoidSpec::free(1), vertices, edges)
}

/// Deletes every loop.
pub fn remove_loops(g: &MetrisedGraph) -> MetrisedGraph {
    let edges = g.edges().iter().filter(|e| !e.is_loop()).cloned().collect();
    MetrisedGraph::from_parts(g.monoid().clone(), g.vertices().to_vec(), edges)
        .expect("removing loops keeps a valid graph")
}

/// The same combinatorial graph with every edge of length 1 over `N`.
pub fn underlying_graph(g: &MetrisedGraph) -> MetrisedGraph {
    let edges = g
        .edges()
        .iter()
        .map(|e| Edge {
            id: e.id.clone(),
            ends: e.ends,
            length: vec![1],
        })
        .collect();
    MetrisedGraph::from_parts(MonoidSpec::free(1), g.vertices().to_vec(), edges)
        .expect("unit relabelling keeps a valid graph")
}

/// The surjection `V(source) -> V(target)` produced by a contraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    pub source: Vec<String>,
    pub target: Vec<String>,
    pub map: Vec<usize>,
}

impl VertexMap {
    pub fn identity(ids: &[String]) -> Self {
        VertexMap {
            source: ids.to_vec(),
            target: ids.to_vec(),
            map: (0..ids.len()).collect(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len() && {
            let mut seen = vec![false; self.target.len()];
            self.map.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
        }
    }
}

/// Edge contraction along a monoid homomorphism: lengths become `f(l(e))`
/// and every edge whose new length is zero is collapsed.
///
/// Each merged vertex keeps the id of its first member in source order.
pub fn contract(g: &MetrisedGraph, f: &MonoidHom) -> Result<(MetrisedGraph, VertexMap)> {
    if f.source().rank() != g.monoid().rank() {
        return Err(Error::Dimension {
            expected: g.monoid().rank(),
            actual: f.source().rank(),
        });
    }
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    let mut images = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        let image = f.apply(&e.length)?;
        if image.iter().all(|&x| x == 0) {
            let (a, b) = (find(&mut parent, e.ends[0]), find(&mut parent, e.ends[1]));
            // keep the smaller index as the class root
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi] = lo;
            images.push(None);
        } else {
            if !f.target().is_member(&image)? {
                return Err(Error::HomRange {
                    element: e.id.clone(),
                    image,
                });
            }
            images.push(Some(image));
        }
    }
    let roots: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    let mut new_index = vec![usize::MAX; n];
    let mut target_ids = Vec::new();
    for v in 0..n {
        if roots[v] == v {
            new_index[v] = target_ids.len();
            target_ids.push(g.vertex_id(v).to_owned());
        }
    }
    let map: Vec<usize> = roots.iter().map(|&r| new_index[r]).collect();
    let edges = g
        .edges()
        .iter()
        .zip(images)
        .filter_map(|(e, image)| {
            image.map(|length| Edge {
                id: e.id.clone(),
                ends: [map[e.ends[0]], map[e.ends[1]]],
                length,
            })
        })
        .collect();
    let contracted = MetrisedGraph::from_parts(f.target().clone(), target_ids.clone(), edges)?;
    Ok((
        contracted,
        VertexMap {
            source: g.vertices().to_vec(),
            target: target_ids,
            map,
        },
    ))
}

/// Convenience builder used by the catalog, corpus generator and tests.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    monoid: MonoidSpec,
    vertices: Vec<String>,
    edges: Vec<(String, [String; 2], Vec<i64>)>,
}

impl GraphBuilder {
    pub fn new(monoid: MonoidSpec) -> Self {
        GraphBuilder {
            monoid,
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn vertex(mut self, id: impl Into<String>) -> Self {
        self.vertices.push(id.into());
        self
    }

    pub fn vertices<S: Into<String>>(mut self, ids: impl IntoIterator<Item = S>) -> Self {
        self.vertices.extend(ids.into_iter().map(Into::into));
        self
    }

    pub fn edge(mut self, id: impl Into<String>, u: impl Into<String>, v: impl Into<String>, length: &[i64]) -> Self {
        self.edges.push((id.into(), [u.into(), v.into()], length.to_vec()));
        self
    }

    pub fn build(self) -> Result<MetrisedGraph> {
        MetrisedGraph::new(self.monoid, self.vertices, self.edges)
    }
}
