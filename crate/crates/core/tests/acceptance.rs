//! Acceptance criteria, one test each. Every test prints a single
//! `criterion N: PASS|FAIL ...` line before asserting.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use gonlab::catalog;
use gonlab::corpus::{add_loops, exhaustive, generate_corpus, morphism_corpus, random_hom, random_pl, CorpusBounds, LengthPool};
use gonlab::dhar::{dhar_dgon, dhar_rank};
use gonlab::divisor::{dgon, laplacian, prin_basis, push_pl, pushforward_contraction, LinearSystems};
use gonlab::ggon::{ggon, GonalityResult, DEFAULT_CAP};
use gonlab::graph::{contract, remove_loops, underlying_graph};
use gonlab::pipeline::combinatorial_lower_bound;
use gonlab::treewidth::treewidth;
use gonlab::{Divisor, MetrisedGraph, MonoidSpec};

fn report(n: u32, ok: bool, detail: String) {
    println!("criterion {n}: {} {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {n} failed: {detail}");
}

/// Divisors with coefficients in `lo..=hi` and degree in `deg_lo..=deg_hi`.
fn divisors(n: usize, lo: i64, hi: i64, deg_lo: i64, deg_hi: i64) -> Vec<Divisor> {
    let mut out = Vec::new();
    let mut d = vec![lo; n];
    loop {
        let deg: i64 = d.iter().sum();
        if (deg_lo..=deg_hi).contains(&deg) {
            out.push(Divisor(d.clone()));
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if d[i] < hi {
                d[i] += 1;
                break;
            }
            d[i] = lo;
            i += 1;
        }
    }
}

fn effective(n: usize, max_degree: i64) -> Vec<Divisor> {
    divisors(n, 0, max_degree, 0, max_degree)
}

fn corpus() -> Vec<MetrisedGraph> {
    generate_corpus(0, &CorpusBounds::standard()).graphs
}

#[test]
fn criterion_01_orthogonal_two_gon() {
    let start = Instant::now();
    let g = catalog::orthogonal_two_gon();
    let prin_empty = prin_basis(&g).is_empty();
    let (d, _) = dgon(&g);
    // with no nonzero principal divisors a class is a single divisor, so
    // rank >= 1 needs D >= [u] + [v], and the least such degree is |V|
    let oracle = (1..=3)
        .find(|&k| effective(2, k).iter().any(|e| e.degree() == k && e.0.iter().all(|&c| c >= 1)))
        .unwrap();
    let infinite = ggon(&g, DEFAULT_CAP).is_infinite();
    let secs = start.elapsed().as_secs_f64();
    report(
        1,
        prin_empty && d == 2 && oracle == 2 && infinite && secs < 1.0,
        format!("prin empty {prin_empty}, dgon {d} (oracle {oracle}), ggon infinite {infinite}, {secs:.3}s"),
    );
}

#[test]
fn criterion_02_dgon_at_most_ggon() {
    let start = Instant::now();
    let mut graphs = exhaustive(4, 5, &LengthPool::free1());
    graphs.extend(exhaustive(4, 5, &LengthPool::free2()));
    let outcomes: Vec<(bool, bool)> = graphs
        .par_iter()
        .map(|g| {
            let (d, _) = dgon(g);
            match ggon(g, DEFAULT_CAP) {
                GonalityResult::Finite { degree, .. } => (true, d <= degree),
                _ => (false, d <= g.vertex_count() as i64),
            }
        })
        .collect();
    let finite = outcomes.iter().filter(|o| o.0).count();
    let violations = outcomes.iter().filter(|o| !o.1).count();
    let secs = start.elapsed().as_secs_f64();
    report(
        2,
        violations == 0 && secs < 600.0,
        format!("{} graphs, {finite} with finite ggon, {violations} violations, {secs:.1}s", graphs.len()),
    );
}

#[test]
fn criterion_03_pullback_commutes_with_laplacian() {
    let morphisms = morphism_corpus(0, 100);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checks = 0;
    let mut failures = 0;
    for phi in &morphisms {
        assert!(phi.is_nondegenerate());
        for _ in 0..20 {
            let h = random_pl(&mut rng, phi.target());
            checks += 1;
            if !phi.check_commuting_square(&h).unwrap() {
                failures += 1;
            }
        }
    }
    report(
        3,
        morphisms.len() == 100 && failures == 0,
        format!("{} morphisms, {checks} squares, {failures} failures", morphisms.len()),
    );
}

#[test]
fn criterion_04_pullback_rank_and_push_pull() {
    let morphisms = morphism_corpus(0, 100);
    let results: Vec<(usize, usize)> = morphisms
        .par_iter()
        .map(|phi| {
            let (src, tgt) = (phi.source(), phi.target());
            let mut ls_src = LinearSystems::new(src);
            let mut ls_tgt = LinearSystems::new(tgt);
            let mut checks = 0;
            let mut bad = 0;
            for d in effective(tgt.vertex_count(), 3) {
                let r = ls_tgt.rank(&d);
                let pulled = phi.pullback_divisor(&d).unwrap();
                checks += 1;
                if !ls_src.rank_at_least(&pulled, r) {
                    bad += 1;
                }
            }
            for f in effective(src.vertex_count(), 3) {
                let back = phi.pullback_divisor(&phi.pushforward_divisor(&f).unwrap()).unwrap();
                checks += 1;
                if !back.dominates(&f) {
                    bad += 1;
                }
            }
            (checks, bad)
        })
        .collect();
    let checks: usize = results.iter().map(|r| r.0).sum();
    let bad: usize = results.iter().map(|r| r.1).sum();
    report(4, bad == 0, format!("{} morphisms, {checks} checks, {bad} violations", morphisms.len()));
}

#[test]
fn criterion_05_glued_cycles() {
    let start = Instant::now();
    let g = catalog::glued_cycles(2);
    let v1 = g.vertex_index("v1").unwrap();
    let w2 = g.vertex_index("w2").unwrap();
    let mut d = Divisor::zero(g.vertex_count());
    d.0[v1] = 3;
    d.0[w2] = -3;
    let prin = prin_basis(&g);
    let certificate = prin.certificate(&d);
    // the certificate recombines the basis into D
    let certified = certificate.as_ref().is_some_and(|c| {
        let mut sum = Divisor::zero(g.vertex_count());
        for (k, b) in c.iter().zip(prin.divisors()) {
            for (s, x) in sum.0.iter_mut().zip(&b.0) {
                *s += k * x;
            }
        }
        sum == d
    });
    let mut ls = LinearSystems::new(&g);
    let rank_ok = ls.rank_at_least(&Divisor::point(g.vertex_count(), v1, 3), 1);

    let mut detail = format!("3[v1]-3[w2] principal {certified}, r(3[v1]) >= 1 {rank_ok}");
    let mut ok = certified && rank_ok;
    // stated values of the unit underlying graph: floor(k/2) + 1
    for k in [2, 3, 4] {
        let u = underlying_graph(&catalog::glued_cycles(k));
        let (burning, _) = dhar_dgon(&u).unwrap();
        let (lattice, _) = dgon(&u);
        let stated = k as i64 / 2 + 1;
        ok &= burning == stated && lattice == stated;
        detail.push_str(&format!(", dgon(G_{k}) burning {burning} lattice {lattice} stated {stated}"));
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 300.0;
    detail.push_str(&format!(", {secs:.1}s"));
    report(5, ok, detail);
}

#[test]
fn criterion_06_pipeline_lower_bound() {
    let graphs = corpus();
    let results: Vec<(bool, usize)> = graphs
        .par_iter()
        .map(|g| {
            let lb = combinatorial_lower_bound(g).unwrap();
            let (d, _) = dgon(g);
            (lb.dgon_h <= d, lb.trace.contracted_edges)
        })
        .collect();
    let violations = results.iter().filter(|r| !r.0).count();
    let contracted: usize = results.iter().map(|r| r.1).sum();
    report(
        6,
        violations == 0 && contracted == 0,
        format!("{} graphs, {violations} violations, {contracted} contracted edges", graphs.len()),
    );
}

#[derive(Default)]
struct Tally {
    pairs: usize,
    checks: usize,
    violations: usize,
}

impl Tally {
    fn add(&mut self, other: Tally) {
        self.pairs += other.pairs;
        self.checks += other.checks;
        self.violations += other.violations;
    }
}

#[test]
fn criterion_07_contraction_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut graphs = generate_corpus(1, &CorpusBounds::new(3, 4).with_random(30)).graphs;
    graphs.retain(|g| g.edge_count() > 0 && g.vertex_count() <= 5);
    // (graph, hom) pairs: every graph with one random hom into N and one
    // into N^2, then one injective hom each
    let mut pairs = Vec::new();
    let mut injective = Vec::new();
    for g in &graphs {
        pairs.push((g.clone(), random_hom(&mut rng, g.monoid(), 1)));
        pairs.push((g.clone(), random_hom(&mut rng, g.monoid(), 2)));
        let inj = loop {
            let h = random_hom(&mut rng, g.monoid(), g.monoid().rank());
            if h.is_injective() {
                break h;
            }
        };
        injective.push((g.clone(), inj));
    }
    let run = |pairs: &[(MetrisedGraph, gonlab::MonoidHom)], exact: bool| -> [Tally; 3] {
        let per: Vec<[Tally; 3]> = pairs
            .par_iter()
            .enumerate()
            .map(|(i, (g, h))| {
                let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
                let (c, vm) = contract(g, h).unwrap();
                let mut pl = Tally { pairs: 1, ..Tally::default() };
                for _ in 0..10 {
                    let f = random_pl(&mut rng, g);
                    let lhs = laplacian(&c, &push_pl(&vm, h, &f).unwrap()).unwrap();
                    let rhs = pushforward_contraction(&vm, &laplacian(g, &f).unwrap()).unwrap();
                    pl.checks += 1;
                    pl.violations += usize::from(lhs != rhs);
                }
                let mut ranks = Tally { pairs: 1, ..Tally::default() };
                let mut ls_g = LinearSystems::new(g);
                let mut ls_c = LinearSystems::new(&c);
                for d in divisors(g.vertex_count(), -1, 3, -1, 3) {
                    let r = ls_g.rank(&d);
                    let r2 = ls_c.rank(&pushforward_contraction(&vm, &d).unwrap());
                    ranks.checks += 1;
                    ranks.violations += usize::from(if exact { r2 != r } else { r2 < r });
                }
                let mut gon = Tally { pairs: 1, checks: 1, violations: 0 };
                gon.violations += usize::from(ls_c.dgon().0 > ls_g.dgon().0);
                [pl, ranks, gon]
            })
            .collect();
        let mut total = [Tally::default(), Tally::default(), Tally::default()];
        for t in per {
            for (a, b) in total.iter_mut().zip(t) {
                a.add(b);
            }
        }
        total
    };
    let [pl, ranks, gon] = run(&pairs, false);
    let [_, exact, _] = run(&injective, true);
    let ok = [&pl, &ranks, &gon, &exact].iter().all(|t| t.pairs >= 50 && t.violations == 0);
    report(
        7,
        ok,
        format!(
            "laplacian {}/{}/{}, rank {}/{}/{}, dgon {}/{}/{}, injective rank {}/{}/{} (pairs/checks/violations)",
            pl.pairs, pl.checks, pl.violations, ranks.pairs, ranks.checks, ranks.violations, gon.pairs, gon.checks,
            gon.violations, exact.pairs, exact.checks, exact.violations
        ),
    );
}

#[test]
fn criterion_08_lattice_rank_matches_burning() {
    let graphs = exhaustive(5, 6, &LengthPool::unit());
    let results: Vec<(usize, usize)> = graphs
        .par_iter()
        .map(|g| {
            let mut ls = LinearSystems::new(g);
            let mut checks = 0;
            let mut bad = 0;
            for d in divisors(g.vertex_count(), -2, 4, -1, 4) {
                checks += 1;
                if ls.rank(&d) != dhar_rank(g, &d).unwrap() {
                    bad += 1;
                }
            }
            (checks, bad)
        })
        .collect();
    let checks: usize = results.iter().map(|r| r.0).sum();
    let bad: usize = results.iter().map(|r| r.1).sum();
    report(8, bad == 0, format!("{} graphs, {checks} divisors, {bad} disagreements", graphs.len()));
}

#[test]
fn criterion_09_loop_removal() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let graphs: Vec<MetrisedGraph> = generate_corpus(2, &CorpusBounds::new(3, 4).with_random(20))
        .graphs
        .iter()
        .map(|g| add_loops(&mut rng, g, 1 + g.edge_count() % 2))
        .collect();
    let results: Vec<(bool, usize, usize)> = graphs
        .par_iter()
        .map(|g| {
            assert!(g.has_loops());
            let h = remove_loops(g);
            let same_prin = prin_basis(g) == prin_basis(&h);
            let mut a = LinearSystems::new(g);
            let mut b = LinearSystems::new(&h);
            let mut checks = 0;
            let mut bad = 0;
            for d in divisors(g.vertex_count(), -1, 3, -1, 3) {
                checks += 1;
                bad += usize::from(a.rank(&d) != b.rank(&d));
            }
            (same_prin && a.dgon().0 == b.dgon().0, checks, bad)
        })
        .collect();
    let structural = results.iter().filter(|r| !r.0).count();
    let checks: usize = results.iter().map(|r| r.1).sum();
    let bad: usize = results.iter().map(|r| r.2).sum();
    report(
        9,
        structural == 0 && bad == 0,
        format!("{} graphs with loops, {structural} prin/dgon differences, {checks} ranks, {bad} differences", graphs.len()),
    );
}

#[test]
fn criterion_10_treewidth_bound() {
    let graphs = corpus();
    let violations = graphs
        .par_iter()
        .filter(|g| treewidth(g).unwrap() as i64 > dgon(g).0)
        .count();
    let tree = gonlab::GraphBuilder::new(MonoidSpec::free(1))
        .vertices(["a", "b", "c", "d"])
        .edge("p", "a", "b", &[1])
        .edge("q", "b", "c", &[2])
        .edge("r", "b", "d", &[3])
        .build()
        .unwrap();
    let spots = [
        treewidth(&tree).unwrap(),
        treewidth(&catalog::cycle(5)).unwrap(),
        treewidth(&catalog::complete(4)).unwrap(),
    ];
    report(
        10,
        violations == 0 && spots == [1, 2, 3],
        format!("{} graphs, {violations} violations, tw(tree, C5, K4) = {spots:?}", graphs.len()),
    );
}
