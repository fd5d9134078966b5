//! The combinatorial lower bound: remove loops, restrict to the monoid of
//! edge lengths, contract along a strictly positive functional, subdivide to
//! unit lengths, and compute the gonality of the resulting graph `H`.
//! Also the aggregated bounds report.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dhar::dhar_dgon;
use crate::divisor::{dgon, Divisor};
use crate::error::Result;
use crate::ggon::{ggon, GonalityResult};
use crate::graph::{contract, remove_loops, subdivide_to_unit, underlying_graph, MetrisedGraph};
use crate::monoid::{find_positive_functional, MonoidSpec};
use crate::treewidth::treewidth_with_limit;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineTrace {
    pub loops_removed: Vec<String>,
    /// Generators of the restricted monoid: the distinct edge lengths.
    pub generators: Vec<Vec<i64>>,
    pub functional: Vec<i64>,
    pub contracted_edges: usize,
    /// `f(l(e))` per edge.
    pub lengths: BTreeMap<String, i64>,
    /// Fresh vertices inserted on each edge.
    pub subdivisions: BTreeMap<String, i64>,
    pub h_vertices: usize,
    pub h_edges: usize,
}

#[derive(Debug, Clone)]
pub struct LowerBound {
    pub h: MetrisedGraph,
    pub dgon_h: i64,
    pub witness: Divisor,
    pub trace: PipelineTrace,
}

pub fn combinatorial_lower_bound(g: &MetrisedGraph) -> Result<LowerBound> {
    let loops_removed = g.edges().iter().filter(|e| e.is_loop()).map(|e| e.id.clone()).collect();
    let g1 = remove_loops(g);

    let mut generators: Vec<Vec<i64>> = g1.edges().iter().map(|e| e.length.clone()).collect();
    generators.sort();
    generators.dedup();
    let g2 = if generators.is_empty() {
        g1
    } else {
        g1.with_monoid(MonoidSpec::generated(g1.monoid().rank(), generators.clone())?)?
    };

    let f = find_positive_functional(g2.monoid());
    let (g3, vm) = contract(&g2, &f)?;
    let contracted_edges = g2.edge_count() - g3.edge_count();
    assert_eq!(contracted_edges, 0, "a strictly positive functional contracted an edge");
    assert!(vm.is_bijective(), "contraction merged vertices");
    let lengths: BTreeMap<String, i64> = g3.edges().iter().map(|e| (e.id.clone(), e.length[0])).collect();

    let h = subdivide_to_unit(&g3)?;
    let subdivisions = lengths.iter().map(|(id, &l)| (id.clone(), l - 1)).collect();
    let (dgon_h, witness) = dhar_dgon(&h)?;
    let trace = PipelineTrace {
        loops_removed,
        generators,
        functional: f.matrix()[0].clone(),
        contracted_edges,
        lengths,
        subdivisions,
        h_vertices: h.vertex_count(),
        h_edges: h.edge_count(),
    };
    Ok(LowerBound { h, dgon_h, witness, trace })
}

/// Geometric gonality as it appears in a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GgonSummary {
    Finite { degree: i64 },
    Infinite,
    Exceeded { cap: u32, lower_bound: i64 },
}

impl From<&GonalityResult> for GgonSummary {
    fn from(r: &GonalityResult) -> Self {
        match r {
            GonalityResult::Finite { degree, .. } => GgonSummary::Finite { degree: *degree },
            GonalityResult::Infinite { .. } => GgonSummary::Infinite,
            GonalityResult::Exceeded { cap, lower_bound, .. } => GgonSummary::Exceeded {
                cap: *cap,
                lower_bound: *lower_bound,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub dgon: i64,
    pub dgon_h: i64,
    /// Gonality of the underlying graph with all lengths 1.
    pub dgon_underlying: i64,
    pub treewidth: usize,
    pub ggon: GgonSummary,
    /// `tw(G) <= dgon`
    pub treewidth_bound: bool,
    /// `dgon_h <= dgon`
    pub pipeline_bound: bool,
    /// `dgon <= ggon`, vacuous unless ggon is finite
    pub geometric_bound: bool,
}

impl BoundsReport {
    pub fn chain_holds(&self) -> bool {
        self.treewidth_bound && self.pipeline_bound && self.geometric_bound
    }
}

pub fn bounds_report(g: &MetrisedGraph, cap: u32, treewidth_limit: usize) -> Result<BoundsReport> {
    let treewidth = treewidth_with_limit(g, treewidth_limit)?;
    let (dgon_g, _) = dgon(g);
    let lower = combinatorial_lower_bound(g)?;
    let (dgon_underlying, _) = dhar_dgon(&remove_loops(&underlying_graph(g)))?;
    let ggon = GgonSummary::from(&ggon(g, cap));
    let geometric_bound = match ggon {
        GgonSummary::Finite { degree } => dgon_g <= degree,
        _ => true,
    };
    Ok(BoundsReport {
        dgon: dgon_g,
        dgon_h: lower.dgon_h,
        dgon_underlying,
        treewidth,
        treewidth_bound: treewidth as i64 <= dgon_g,
        pipeline_bound: lower.dgon_h <= dgon_g,
        geometric_bound,
        ggon,
    })
}
