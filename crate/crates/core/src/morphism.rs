//! Morphisms of metrised graphs, harmonicity, and pullback/pushforward of
//! divisors and piecewise linear functions.
//!
//! A morphism is a map on elements `X -> X'`. Vertices go to vertices; an
//! edge goes either to an edge, with the target length a positive multiple
//! of the source length, or is contracted onto a single vertex. Halves of an
//! edge always go to the two halves of one target edge, so `phi` commutes
//! with the involutions.

use std::collections::BTreeMap;

use crate::divisor::{laplacian, Divisor, PlFunction};
use crate::error::{Axiom, Error, Result, Violation};
use crate::graph::{Element, MetrisedGraph};
use crate::monoid::divide;

/// Horizontal multiplicities `m_phi(v)` per source vertex and the degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicData {
    pub multiplicities: Vec<i64>,
    pub degree: i64,
}

impl HarmonicData {
    pub fn is_nondegenerate(&self) -> bool {
        self.multiplicities.iter().all(|&m| m > 0)
    }
}

#[derive(Debug, Clone)]
pub struct GraphMorphism {
    source: MetrisedGraph,
    target: MetrisedGraph,
    vertex_map: Vec<usize>,
    /// image of half-edge `h` of the source
    half_edge_map: Vec<Element>,
    /// `mu_phi(h)`, zero on contracted half-edges
    slopes: Vec<i64>,
    harmonic: Option<HarmonicData>,
}

/// Checks the morphism axioms for a map given on vertices and half-edges.
pub fn validate_morphism(
    source: &MetrisedGraph,
    target: &MetrisedGraph,
    vertex_map: &[Element],
    half_edge_map: &[Element],
) -> Result<(), Violation> {
    if vertex_map.len() != source.vertex_count() || half_edge_map.len() != source.half_edge_count() {
        return Err(Violation::new(Axiom::MissingImage, None, "map is not defined on every element"));
    }
    if source.monoid().rank() != target.monoid().rank() {
        return Err(Violation::new(
            Axiom::LengthDimension,
            None,
            format!("source rank {} but target rank {}", source.monoid().rank(), target.monoid().rank()),
        ));
    }
    let mut vm = Vec::with_capacity(vertex_map.len());
    for (v, img) in vertex_map.iter().enumerate() {
        match *img {
            Element::Vertex(w) if w < target.vertex_count() => vm.push(w),
            Element::Vertex(_) => {
                return Err(Violation::new(Axiom::UnknownId, Some(source.vertex_id(v)), "image out of range"))
            }
            Element::HalfEdge(_) => {
                return Err(Violation::new(Axiom::VertexImage, Some(source.vertex_id(v)), "vertex mapped to a half-edge"))
            }
        }
    }
    for (h, img) in half_edge_map.iter().enumerate() {
        let id = source.element_id(Element::HalfEdge(h));
        let twin = half_edge_map[MetrisedGraph::twin(h)];
        let (u, w) = (vm[source.root(h)], vm[source.root(MetrisedGraph::twin(h))]);
        match *img {
            Element::Vertex(x) => {
                if x >= target.vertex_count() {
                    return Err(Violation::new(Axiom::UnknownId, Some(&id), "image out of range"));
                }
                if twin != Element::Vertex(x) {
                    return Err(Violation::new(Axiom::InvolutionCompat, Some(&id), "twin is not contracted to the same vertex"));
                }
                if u != x || w != x {
                    return Err(Violation::new(
                        Axiom::ContractedEnds,
                        Some(&id),
                        format!("contracted onto {} but its ends go elsewhere", target.vertex_id(x)),
                    ));
                }
            }
            Element::HalfEdge(k) => {
                if k >= target.half_edge_count() {
                    return Err(Violation::new(Axiom::UnknownId, Some(&id), "image out of range"));
                }
                if twin != Element::HalfEdge(MetrisedGraph::twin(k)) {
                    return Err(Violation::new(Axiom::InvolutionCompat, Some(&id), "twin does not go to the twin of the image"));
                }
                if target.root(k) != u || target.root(MetrisedGraph::twin(k)) != w {
                    return Err(Violation::new(
                        Axiom::HalfEdgeRoots,
                        Some(&id),
                        format!("image {} does not join the images of the ends", target.element_id(*img)),
                    ));
                }
                let ok = matches!(divide(target.half_edge_length(k), source.half_edge_length(h)), Ok(Some(_)));
                if !ok {
                    return Err(Violation::new(
                        Axiom::Divisibility,
                        Some(&id),
                        format!(
                            "length {:?} of {} is not a positive multiple of {:?}",
                            target.half_edge_length(k),
                            target.element_id(*img),
                            source.half_edge_length(h)
                        ),
                    ));
                }
            }
        }
    }
    Ok(())
}

impl GraphMorphism {
    /// Validates the map and computes slopes and multiplicities.
    pub fn new(
        source: MetrisedGraph,
        target: MetrisedGraph,
        vertex_map: Vec<usize>,
        half_edge_map: Vec<Element>,
    ) -> Result<Self, Violation> {
        let vm: Vec<Element> = vertex_map.iter().map(|&v| Element::Vertex(v)).collect();
        validate_morphism(&source, &target, &vm, &half_edge_map)?;
        let slopes = half_edge_map
            .iter()
            .enumerate()
            .map(|(h, img)| match *img {
                Element::HalfEdge(k) => divide(target.half_edge_length(k), source.half_edge_length(h))
                    .ok()
                    .flatten()
                    .expect("divisibility was validated"),
                Element::Vertex(_) => 0,
            })
            .collect();
        let mut phi = GraphMorphism {
            source,
            target,
            vertex_map,
            half_edge_map,
            slopes,
            harmonic: None,
        };
        phi.harmonic = phi.compute_harmonic();
        Ok(phi)
    }

    /// Builds a morphism from an id map. Keys may be vertex ids, half-edge
    /// ids, or edge ids; an edge id maps onto a target edge id (oriented to
    /// match the vertex images) or onto a target vertex.
    pub fn from_ids(
        source: MetrisedGraph,
        target: MetrisedGraph,
        map: &BTreeMap<String, String>,
    ) -> Result<Self, Violation> {
        let unknown = |id: &str, what: &str| Violation::new(Axiom::UnknownId, Some(id), format!("no such {what}"));
        let mut vertex_map = vec![None; source.vertex_count()];
        let mut half_edge_map = vec![None; source.half_edge_count()];
        let mut edge_keys = Vec::new();
        for (key, value) in map {
            let image = target.element(value);
            match source.element(key) {
                Some(Element::Vertex(v)) => {
                    vertex_map[v] = Some(image.ok_or_else(|| unknown(value, "target element"))?);
                }
                Some(Element::HalfEdge(h)) => {
                    half_edge_map[h] = Some(image.ok_or_else(|| unknown(value, "target element"))?);
                }
                None => {
                    let e = source.edges().iter().position(|e| &e.id == key).ok_or_else(|| unknown(key, "source element"))?;
                    edge_keys.push((e, value));
                }
            }
        }
        let vertex_images: Vec<Element> = vertex_map
            .iter()
            .enumerate()
            .map(|(v, x)| x.ok_or_else(|| Violation::new(Axiom::MissingImage, Some(source.vertex_id(v)), "vertex has no image")))
            .collect::<Result<_, _>>()?;
        for (e, value) in edge_keys {
            let (h0, h1) = (2 * e, 2 * e + 1);
            if let Some(w) = target.vertex_index(value) {
                half_edge_map[h0] = Some(Element::Vertex(w));
                half_edge_map[h1] = Some(Element::Vertex(w));
                continue;
            }
            let f = target.edges().iter().position(|f| &f.id == value).ok_or_else(|| unknown(value, "target element"))?;
            let forward = vertex_images[source.root(h0)] == Element::Vertex(target.root(2 * f));
            let (k0, k1) = if forward { (2 * f, 2 * f + 1) } else { (2 * f + 1, 2 * f) };
            half_edge_map[h0] = Some(Element::HalfEdge(k0));
            half_edge_map[h1] = Some(Element::HalfEdge(k1));
        }
        let half_edge_images: Vec<Element> = half_edge_map
            .iter()
            .enumerate()
            .map(|(h, x)| {
                x.ok_or_else(|| {
                    Violation::new(Axiom::MissingImage, Some(&source.element_id(Element::HalfEdge(h))), "half-edge has no image")
                })
            })
            .collect::<Result<_, _>>()?;
        validate_morphism(&source, &target, &vertex_images, &half_edge_images)?;
        let vm = vertex_images
            .iter()
            .map(|x| match x {
                Element::Vertex(w) => *w,
                Element::HalfEdge(_) => unreachable!(),
            })
            .collect();
        Self::new(source, target, vm, half_edge_images)
    }

    /// Identity morphism of a graph.
    pub fn identity(g: &MetrisedGraph) -> Self {
        let vm = (0..g.vertex_count()).collect();
        let hm = (0..g.half_edge_count()).map(Element::HalfEdge).collect();
        Self::new(g.clone(), g.clone(), vm, hm).expect("identity is a morphism")
    }

    pub fn source(&self) -> &MetrisedGraph {
        &self.source
    }

    pub fn target(&self) -> &MetrisedGraph {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn half_edge_map(&self) -> &[Element] {
        &self.half_edge_map
    }

    pub fn slopes(&self) -> &[i64] {
        &self.slopes
    }

    pub fn image(&self, x: Element) -> Element {
        match x {
            Element::Vertex(v) => Element::Vertex(self.vertex_map[v]),
            Element::HalfEdge(h) => self.half_edge_map[h],
        }
    }

    /// Every element id of the source with its image id.
    pub fn id_map(&self) -> BTreeMap<String, String> {
        let vs = (0..self.source.vertex_count()).map(Element::Vertex);
        let hs = (0..self.source.half_edge_count()).map(Element::HalfEdge);
        vs.chain(hs)
            .map(|x| (self.source.element_id(x), self.target.element_id(self.image(x))))
            .collect()
    }

    /// `m_{phi,v}(e')` for every target half-edge `e'` rooted at `phi(v)`.
    pub fn multiplicity_table(&self, v: usize) -> BTreeMap<usize, i64> {
        let mut table: BTreeMap<usize, i64> =
            self.target.half_edges_at(self.vertex_map[v]).map(|k| (k, 0)).collect();
        for h in self.source.half_edges_at(v) {
            if let Element::HalfEdge(k) = self.half_edge_map[h] {
                *table.get_mut(&k).expect("roots were validated") += self.slopes[h];
            }
        }
        table
    }

    fn compute_harmonic(&self) -> Option<HarmonicData> {
        if self.target.half_edge_count() == 0 {
            return None;
        }
        let mut multiplicities = Vec::with_capacity(self.source.vertex_count());
        for v in 0..self.source.vertex_count() {
            let table = self.multiplicity_table(v);
            let mut values = table.values();
            // a target vertex without half-edges only occurs for a single-vertex target
            let first = *values.next()?;
            if values.any(|&m| m != first) {
                return None;
            }
            multiplicities.push(first);
        }
        let mut per_half_edge = vec![0i64; self.target.half_edge_count()];
        for (v, &m) in multiplicities.iter().enumerate() {
            for k in self.target.half_edges_at(self.vertex_map[v]) {
                per_half_edge[k] += m;
            }
        }
        let degree = per_half_edge[0];
        assert!(
            per_half_edge.iter().all(|&m| m == degree),
            "harmonic morphism with inconsistent edge multiplicities {per_half_edge:?}"
        );
        Some(HarmonicData { multiplicities, degree })
    }

    /// Horizontal multiplicities and degree, if the morphism is harmonic.
    pub fn harmonic(&self) -> Result<Option<&HarmonicData>> {
        if self.target.half_edge_count() == 0 {
            return Err(Error::SingleVertexTarget);
        }
        Ok(self.harmonic.as_ref())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.harmonic.as_ref().is_some_and(HarmonicData::is_nondegenerate)
    }

    fn harmonic_data(&self) -> Result<&HarmonicData> {
        self.harmonic()?.ok_or(Error::NotHarmonic)
    }

    /// `D' -> sum_v D'(phi(v)) m_phi(v) [v]`.
    pub fn pullback_divisor(&self, d: &Divisor) -> Result<Divisor> {
        self.check_len(d.len(), self.target.vertex_count())?;
        let h = self.harmonic_data()?;
        Ok(Divisor(
            self.vertex_map.iter().zip(&h.multiplicities).map(|(&w, &m)| d[w] * m).collect(),
        ))
    }

    /// `D -> sum_v D(v) [phi(v)]`.
    pub fn pushforward_divisor(&self, d: &Divisor) -> Result<Divisor> {
        self.check_len(d.len(), self.source.vertex_count())?;
        let mut out = vec![0; self.target.vertex_count()];
        for (v, &w) in self.vertex_map.iter().enumerate() {
            out[w] += d[v];
        }
        Ok(Divisor(out))
    }

    /// `h -> h o phi`.
    pub fn pullback_pl(&self, h: &PlFunction) -> Result<PlFunction> {
        h.slopes(&self.target)?;
        let g = PlFunction {
            values: self.vertex_map.iter().map(|&w| h.values[w].clone()).collect(),
        };
        assert!(g.is_piecewise_linear(&self.source), "pullback of a PL function is not PL");
        Ok(g)
    }

    /// Evaluates `phi^*(Delta'(h))` and `Delta(phi^*(h))` and compares them.
    pub fn check_commuting_square(&self, h: &PlFunction) -> Result<bool> {
        let left = self.pullback_divisor(&laplacian(&self.target, h)?)?;
        let right = laplacian(&self.source, &self.pullback_pl(h)?)?;
        Ok(left == right)
    }

    fn check_len(&self, actual: usize, expected: usize) -> Result<()> {
        if actual != expected {
            return Err(Error::Dimension { expected, actual });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;
    use crate::monoid::MonoidSpec;

    fn banana() -> GraphMorphism {
        let src = GraphBuilder::new(MonoidSpec::free(1))
            .vertices(["u", "v"])
            .edge("a", "u", "v", &[1])
            .edge("b", "u", "v", &[1])
            .build()
            .unwrap();
        let tgt = GraphBuilder::new(MonoidSpec::free(1))
            .vertices(["s", "t"])
            .edge("f", "s", "t", &[1])
            .build()
            .unwrap();
        let map = [("u", "s"), ("v", "t"), ("a", "f"), ("b", "f")];
        GraphMorphism::from_ids(src, tgt, &map.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()).unwrap()
    }

    fn ids(pairs: &[(&str, &str)]) -> BTreeMap<String, String> {
        pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
    }

    #[test]
    fn identity_is_harmonic_of_degree_one() {
        let g = GraphBuilder::new(MonoidSpec::free(1))
            .vertices(["x", "y", "z"])
            .edge("p", "x", "y", &[2])
            .edge("q", "y", "z", &[3])
            .edge("r", "z", "x", &[1])
            .build()
            .unwrap();
        let id = GraphMorphism::identity(&g);
        let h = id.harmonic().unwrap().unwrap();
        assert_eq!(h.multiplicities, vec![1, 1, 1]);
        assert_eq!(h.degree, 1);
        assert!(id.is_nondegenerate());
        let d = Divisor(vec![2, -1, 0]);
        assert_eq!(id.pullback_divisor(&d).unwrap(), d);
        assert_eq!(id.pushforward_divisor(&d).unwrap(), d);
        let f = PlFunction { values: vec![vec![0], vec![2], vec![-1]] };
        assert_eq!(id.pullback_pl(&f).unwrap(), f);
        assert!(id.check_commuting_square(&f).unwrap());
    }

    #[test]
    fn banana_map() {
        let phi = banana();
        let h = phi.harmonic().unwrap().unwrap();
        assert_eq!(h.multiplicities, vec![2, 2]);
        assert_eq!(h.degree, 2);
        assert!(phi.is_nondegenerate());
        assert_eq!(phi.pullback_divisor(&Divisor(vec![1, 0])).unwrap(), Divisor(vec![2, 0]));
        assert_eq!(phi.pullback_divisor(&Divisor(vec![0, 0])).unwrap(), Divisor(vec![0, 0]));
        assert_eq!(phi.pushforward_divisor(&Divisor(vec![1, 1])).unwrap(), Divisor(vec![1, 1]));
        assert_eq!(phi.pushforward_divisor(&Divisor(vec![3, 0])).unwrap(), Divisor(vec![3, 0]));
        let f = PlFunction { values: vec![vec![0], vec![1]] };
        let g = phi.pullback_pl(&f).unwrap();
        assert_eq!(g.values, vec![vec![0], vec![1]]);
        assert_eq!(g.slopes(phi.source()).unwrap(), vec![-1, -1]);
        // Delta'(h) = -[s] + [t]; each of the two edges at u has slope -1
        assert_eq!(laplacian(phi.target(), &f).unwrap(), Divisor(vec![-1, 1]));
        assert_eq!(phi.pullback_divisor(&laplacian(phi.target(), &f).unwrap()).unwrap(), Divisor(vec![-2, 2]));
        assert_eq!(laplacian(phi.source(), &g).unwrap(), Divisor(vec![-2, 2]));
        assert!(phi.check_commuting_square(&f).unwrap());
        assert_eq!(phi.id_map().get("b:1").map(String::as_str), Some("f:1"));
    }

    #[test]
    fn incompatible_lengths_are_rejected() {
        let src = GraphBuilder::new(MonoidSpec::free(2))
            .vertices(["u", "v"])
            .edge("a", "u", "v", &[1, 0])
            .edge("b", "u", "v", &[0, 1])
            .build()
            .unwrap();
        for len in [[1, 0], [0, 1], [1, 1], [2, 3]] {
            let tgt = GraphBuilder::new(MonoidSpec::free(2))
                .vertices(["s", "t"])
                .edge("f", "s", "t", &len)
                .build()
                .unwrap();
            let err = GraphMorphism::from_ids(src.clone(), tgt, &ids(&[("u", "s"), ("v", "t"), ("a", "f"), ("b", "f")]))
                .unwrap_err();
            assert_eq!(err.axiom, Axiom::Divisibility);
        }
    }

    #[test]
    fn uneven_star_is_not_harmonic() {
        let src = GraphBuilder::new(MonoidSpec::free(1))
            .vertices(["c", "x", "y", "z"])
            .edge("a", "c", "x", &[1])
            .edge("b", "c", "y", &[1])
            .edge("d", "c", "z", &[1])
            .build()
            .unwrap();
        let tgt = GraphBuilder::new(MonoidSpec::free(1))
            .vertices(["o", "p", "q"])
            .edge("f", "o", "p", &[1])
            .edge("g", "o", "q", &[1])
            .build()
            .unwrap();
        let map = ids(&[("c", "o"), ("x", "p"), ("y", "p"), ("z", "q"), ("a", "f"), ("b", "f"), ("d", "g")]);
        let phi = GraphMorphism::from_ids(src, tgt, &map).unwrap();
        assert_eq!(phi.multiplicity_table(0).values().copied().collect::<Vec<_>>(), vec![2, 1]);
        assert!(phi.harmonic().unwrap().is_none());
        assert!(matches!(phi.pullback_divisor(&Divisor::zero(3)), Err(Error::NotHarmonic)));
    }

    #[test]
    fn contraction_and_degeneracy() {
        // a path x - y - z folded onto one edge, with y - z contracted
        let src = GraphBuilder::new(MonoidSpec::free(1))
            .vertices(["x", "y", "z"])
            .edge("a", "x", "y", &[1])
            .edge("b", "y", "z", &[1])
            .build()
            .unwrap();
        let tgt = GraphBuilder::new(MonoidSpec::free(1))
            .vertices(["s", "t"])
            .edge("f", "s", "t", &[1])
            .build()
            .unwrap();
        let phi = GraphMorphism::from_ids(src.clone(), tgt.clone(), &ids(&[("x", "s"), ("y", "t"), ("z", "t"), ("a", "f"), ("b", "t")]))
            .unwrap();
        let h = phi.harmonic().unwrap().unwrap();
        assert_eq!(h.multiplicities, vec![1, 1, 0]);
        assert!(!phi.is_nondegenerate());
        // contracting an edge whose ends go to different vertices
        let err = GraphMorphism::from_ids(src.clone(), tgt.clone(), &ids(&[("x", "s"), ("y", "t"), ("z", "s"), ("a", "f"), ("b", "t")]))
            .unwrap_err();
        assert_eq!(err.axiom, Axiom::ContractedEnds);
        // halves of one edge sent to different places
        let err = GraphMorphism::from_ids(
            src.clone(),
            tgt.clone(),
            &ids(&[("x", "s"), ("y", "t"), ("z", "t"), ("a:0", "f:0"), ("a:1", "t"), ("b", "t")]),
        )
        .unwrap_err();
        assert_eq!(err.axiom, Axiom::InvolutionCompat);
        let err = GraphMorphism::from_ids(src, tgt, &ids(&[("x", "s"), ("y", "t"), ("a", "f"), ("b", "t")])).unwrap_err();
        assert_eq!(err.axiom, Axiom::MissingImage);
    }

    #[test]
    fn single_vertex_target() {
        let src = GraphBuilder::new(MonoidSpec::free(1))
            .vertices(["x", "y"])
            .edge("a", "x", "y", &[1])
            .build()
            .unwrap();
        let tgt = GraphBuilder::new(MonoidSpec::free(1)).vertex("o").build().unwrap();
        let phi = GraphMorphism::from_ids(src, tgt, &ids(&[("x", "o"), ("y", "o"), ("a", "o")])).unwrap();
        assert!(matches!(phi.harmonic(), Err(Error::SingleVertexTarget)));
    }
}
