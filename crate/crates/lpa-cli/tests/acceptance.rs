//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! and enforcing its runtime budget. The shipped corpus under `corpus/` at
//! the workspace root is the fixture; exact arithmetic means every assertion
//! is zero-tolerance.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use lpa_cli::battery::{self, BatteryConfig};
use lpa_cli::corpus_files;
use lpa_core::algebra::{Element, LeavittAlgebra};
use lpa_core::centroid::{
    comet_centralizer_from_laurent, laurent_extract, omega, s_collapse, seed_space,
    CentralizerSeed, CollapseOutcome, LaurentExtract, SMapContext,
};
use lpa_core::classify::{certify, classify_with_seed, CertifyOptions, Verdict};
use lpa_core::graph::{cycles, is_comet, mt3, Graph};
use lpa_core::laurent::{
    comet_iso, corner_tower, inverse_limit_stabilize, matrix_center, sigma_map, CornerEmbedding,
    LaurentMatrix, LimitKind,
};
use lpa_core::rng::SplitMix64;
use lpa_core::sample::{random_corner_walk, random_element};

const SEED: u64 = 0xACCE97;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn load_corpus() -> Vec<(String, Graph)> {
    let files = corpus_files(&corpus_dir()).expect("corpus directory");
    files
        .iter()
        .map(|f| {
            let name = f.file_name().unwrap().to_string_lossy().to_string();
            let text = std::fs::read_to_string(f).expect("readable corpus file");
            (name, Graph::parse(&text).expect("well-formed corpus file"))
        })
        .collect()
}

fn finish(criterion: &str, started: Instant, budget: Duration, pass: bool, detail: &str) {
    let elapsed = started.elapsed();
    println!(
        "criterion {criterion}: {} ({detail}; {:.2}s, budget {:.0}s)",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
    assert!(
        elapsed <= budget,
        "criterion {criterion} exceeded its budget: {elapsed:?} > {budget:?}"
    );
}

/// Criterion 1: classification and certification over the whole corpus, with
/// the seed-dimension formulas pinned at degrees 3 and 4, and every reachable
/// decision-tree leaf covered.
#[test]
fn criterion_1_main_theorem_conformance() {
    let started = Instant::now();
    let graphs = load_corpus();
    let mut pass = graphs.len() >= 20;
    let mut detail = format!("{} corpus graphs", graphs.len());

    let mut leaves: std::collections::BTreeSet<String> = std::collections::BTreeSet::new();
    for (name, g) in &graphs {
        let cl = classify_with_seed(g, SEED);
        let report = certify(
            g,
            &cl,
            &CertifyOptions {
                degree: 3,
                dim_check_max_vertices: 10,
            },
        );
        if !report.passed() {
            pass = false;
            detail = format!("{name} failed certification");
            break;
        }
        leaves.insert(match (&cl.verdict, cl.branch) {
            (Verdict::NotPrime, _) => "not_prime".to_string(),
            (v, Some(b)) => format!("{}::{}", v.name(), b.name()),
            (v, None) => v.name().to_string(),
        });
        // Dimension formulas for every small row-finite graph.
        if g.is_row_finite() && g.vertex_count() <= 10 {
            let (dim3, dim4) = report.seed_dims.expect("dims computed");
            let expected = match cl.verdict {
                Verdict::SimpleK | Verdict::PrimeK => Some((1, 1)),
                Verdict::PrimeLaurent => Some((7, 9)),
                _ => None,
            };
            if let Some(exp) = expected {
                if (dim3, dim4) != exp {
                    pass = false;
                    detail = format!("{name} dims {dim3}/{dim4}, expected {exp:?}");
                    break;
                }
            }
        }
        // Graded simple but not simple forces the comet branch and the
        // Laurent verdict on row-finite graphs.
        if cl.graded_simple == Some(true) && cl.simple == Some(false) {
            let comet = is_comet(g).expect("row-finite").comet;
            if !comet || cl.verdict != Verdict::PrimeLaurent {
                pass = false;
                detail = format!("{name}: graded simple non-simple must be a Laurent comet");
                break;
            }
        }
        // Simplicity forces the scalar verdict.
        if cl.simple == Some(true) && cl.verdict != Verdict::SimpleK {
            pass = false;
            detail = format!("{name}: simple graph must carry the scalar verdict");
            break;
        }
    }

    // The corpus must ship the reference families: the chain-into-two-loops
    // stages, the chain comets, the two-petal rose, the flagged comet and
    // non-directed controls.
    for fixture in [
        "e1.lpa",
        "e2.lpa",
        "a2_comet.lpa",
        "a3_comet.lpa",
        "rose2.lpa",
        "flag_comet.lpa",
        "two_sinks.lpa",
        "vee.lpa",
    ] {
        if !graphs.iter().any(|(name, _)| name == fixture) {
            pass = false;
            detail = format!("missing corpus fixture {fixture}");
        }
    }

    // Reachable decision-tree leaves: simple, prime acyclic, prime with a
    // cycle exit, prime via an infinite emitter, Laurent comets, and the
    // non-prime terminal. The row-finite non-comet leaf has no finite model.
    for leaf in [
        "simple_k::acyclic",
        "simple_k::cycle_with_exits",
        "prime_k::acyclic",
        "prime_k::cycle_with_exits",
        "prime_k::infinite_emitter",
        "prime_laurent",
        "not_prime",
    ] {
        if !leaves.contains(leaf) {
            pass = false;
            detail = format!("missing decision-tree leaf {leaf}");
        }
    }

    finish(
        "1 (main theorem conformance)",
        started,
        Duration::from_secs(60),
        pass,
        &detail,
    );
}

/// Criterion 2: relation families and exact associativity on 300 random
/// triples per graph of degree at most 4.
#[test]
fn criterion_2_relations_and_ring_axioms() {
    let started = Instant::now();
    let graphs = load_corpus();
    let mut pass = true;
    let mut detail = String::from("relations + 300 triples per graph");
    let cfg = BatteryConfig {
        seed: SEED,
        assoc_triples: 300,
        ..BatteryConfig::default()
    };
    for (name, g) in &graphs {
        for c in battery::check_relations(name, g) {
            if !c.passed {
                pass = false;
                detail = format!("{name}: {}", c.detail);
            }
        }
        let assoc = battery::check_associativity(name, g, &cfg);
        if !assoc.passed {
            pass = false;
            detail = format!("{name}: {}", assoc.detail);
        }
    }
    finish(
        "2 (relations and ring axioms)",
        started,
        Duration::from_secs(30),
        pass,
        &detail,
    );
}

/// Criterion 3: the centroid law on every solved basis seed, 200 random
/// pairs each, plus agreement of seeds equal on the vertex set.
#[test]
fn criterion_3_centroid_law_and_uniqueness() {
    let started = Instant::now();
    let graphs = load_corpus();
    let mut pass = true;
    let mut detail = String::from("law and uniqueness on all solved seeds");
    let mut rng = SplitMix64::new(SEED ^ 3);
    for (name, g) in &graphs {
        let Ok(alg) = LeavittAlgebra::new(g) else {
            continue;
        };
        let space = seed_space(&alg, 3);
        for seed in &space.basis {
            if seed.validate(&alg).is_err() {
                pass = false;
                detail = format!("{name}: solver produced an invalid seed");
                continue;
            }
            let twin =
                CentralizerSeed::new(g, seed.values().map(|(&v, x)| (v, x.clone())).collect());
            for _ in 0..200 {
                let x = random_element(&alg, &mut rng, 3, 3);
                let y = random_element(&alg, &mut rng, 3, 3);
                let xy = alg.multiply(&x, &y);
                let t = seed.evaluate(&alg, &xy);
                if t != alg.multiply(&seed.evaluate(&alg, &x), &y)
                    || t != alg.multiply(&x, &seed.evaluate(&alg, &y))
                    || twin.evaluate(&alg, &xy) != t
                {
                    pass = false;
                    detail = format!("{name}: centroid law violated");
                }
            }
        }
    }
    finish(
        "3 (centroid law and uniqueness)",
        started,
        Duration::from_secs(30),
        pass,
        &detail,
    );
}

/// Criterion 4: the constructive comet centralizer for the four sample
/// polynomials: validity, exact round trip, multiplicativity.
#[test]
fn criterion_4_constructive_comet_centroid() {
    let started = Instant::now();
    let graphs = load_corpus();
    let mut pass = true;
    let mut detail = String::from("4 polynomials per comet");
    let polys = battery::sample_polynomials();
    let mut comets = 0usize;
    for (name, g) in &graphs {
        let Ok(alg) = LeavittAlgebra::new(g) else {
            continue;
        };
        let Ok(check) = is_comet(g) else { continue };
        if !check.comet {
            continue;
        }
        comets += 1;
        let cycle = check.cycle.expect("comet");
        let base = cycle.base();
        let mut seeds = Vec::new();
        for p in &polys {
            match comet_centralizer_from_laurent(&alg, p) {
                Ok(seed) => {
                    match laurent_extract(&alg, &cycle, omega(&seed, base)) {
                        LaurentExtract::Poly(q) if &q == p => {}
                        _ => {
                            pass = false;
                            detail = format!("{name}: round trip failed");
                        }
                    }
                    seeds.push((p.clone(), seed));
                }
                Err(e) => {
                    pass = false;
                    detail = format!("{name}: construction failed: {e}");
                }
            }
        }
        for (p, sp) in &seeds {
            for (q, sq) in &seeds {
                let composed = sp.evaluate(&alg, omega(sq, base));
                let direct = comet_centralizer_from_laurent(&alg, &p.mul(q))
                    .map(|s| omega(&s, base).clone());
                if direct.as_ref() != Ok(&composed) {
                    pass = false;
                    detail = format!("{name}: p ↦ τ not multiplicative");
                }
            }
        }
    }
    if comets < 5 {
        pass = false;
        detail = format!("only {comets} comets in the corpus");
    }
    finish(
        "4 (constructive comet centroid)",
        started,
        Duration::from_secs(10),
        pass,
        &detail,
    );
}

/// Criterion 5: collapse of 100 random corner walks per cyclic graph within
/// the stated bound, landing on pure cycle powers.
#[test]
fn criterion_5_smap_collapse() {
    let started = Instant::now();
    let graphs = load_corpus();
    let mut pass = true;
    let mut detail = String::from("100 walks per cyclic graph");
    let mut rng = SplitMix64::new(SEED ^ 5);
    for (name, g) in &graphs {
        let Ok(alg) = LeavittAlgebra::new(g) else {
            continue;
        };
        let Some(cycle) = cycles(g).into_iter().next() else {
            continue;
        };
        let base = cycle.base();
        let ctx = SMapContext::new(cycle);
        for _ in 0..100 {
            let Some(w) = random_corner_walk(g, &mut rng, base, 4) else {
                continue;
            };
            let bound = 2 * w.alpha().len().max(w.beta().len()) + 2;
            match s_collapse(&alg, &ctx, &w, bound) {
                Ok(CollapseOutcome::Collapses { .. }) | Ok(CollapseOutcome::Dies { .. }) => {}
                other => {
                    pass = false;
                    detail = format!("{name}: walk neither died nor collapsed: {other:?}");
                }
            }
        }
    }
    finish(
        "5 (S-map collapse)",
        started,
        Duration::from_secs(10),
        pass,
        &detail,
    );
}

/// Criterion 6: the entry-path identity on every admissible pair of the
/// small corpus graphs.
#[test]
fn criterion_6_pi_identity() {
    let started = Instant::now();
    let graphs = load_corpus();
    let mut pass = true;
    let mut detail = String::from("all admissible (v, H) pairs");
    for (name, g) in &graphs {
        let c = battery::check_pi_identity(name, g);
        if !c.passed {
            pass = false;
            detail = format!("{name}: {}", c.detail);
        }
    }
    finish(
        "6 (entry-path identity)",
        started,
        Duration::from_secs(10),
        pass,
        &detail,
    );
}

/// Criterion 7: the Laurent corner tower stabilizes, transfer maps compose,
/// and matrix centers are scalar.
#[test]
fn criterion_7_limits() {
    let started = Instant::now();
    let mut pass = true;
    let mut detail = String::from("tower, composition, centers");

    match inverse_limit_stabilize(&corner_tower(5), 2) {
        Ok(report) => {
            if !(report.stabilized && report.limit == LimitKind::LaurentRing) {
                pass = false;
                detail = String::from("corner tower did not stabilize to the Laurent ring");
            }
        }
        Err(e) => {
            pass = false;
            detail = format!("tower failed: {e}");
        }
    }

    let p = lpa_core::laurent::laurent_from_integers(&[(2, 3), (-1, 1)]);
    for i in 1..=4usize {
        for j in (i + 1)..=4 {
            for k in (j + 1)..=4 {
                let i1 = CornerEmbedding::new(i, j).unwrap();
                let i2 = CornerEmbedding::new(j, k).unwrap();
                let comp = i1.compose(&i2).unwrap();
                let direct = sigma_map(&comp, &p, 2);
                let chained = sigma_map(&i2, &p, 2).and_then(|q| sigma_map(&i1, &q, 2));
                if direct.is_err() || direct != chained {
                    pass = false;
                    detail = format!("composition law failed at {i}->{j}->{k}");
                }
            }
        }
    }

    for n in 1..=3usize {
        for d in 1..=3i64 {
            match matrix_center(n, d) {
                Ok(basis) => {
                    if basis.len() != (2 * d + 1) as usize
                        || basis.iter().any(|m| m.as_scalar().is_none())
                    {
                        pass = false;
                        detail = format!("matrix center wrong at n={n}, d={d}");
                    }
                }
                Err(e) => {
                    pass = false;
                    detail = format!("matrix center failed at n={n}, d={d}: {e}");
                }
            }
        }
    }

    finish(
        "7 (limits)",
        started,
        Duration::from_secs(10),
        pass,
        &detail,
    );
}

/// Criterion 8: the comet matrix picture is multiplicative on 200 random
/// pairs per comet, injective on the degree-3 basis, and sends constructed
/// centralizer values to Laurent scalars.
#[test]
fn criterion_8_comet_isomorphism() {
    let started = Instant::now();
    let graphs = load_corpus();
    let mut pass = true;
    let mut detail = String::from("200 pairs per comet, degree-3 injectivity");
    let cfg = BatteryConfig {
        seed: SEED ^ 8,
        iso_pairs: 200,
        ..BatteryConfig::default()
    };
    let mut comets = 0usize;
    for (name, g) in &graphs {
        let Ok(alg) = LeavittAlgebra::new(g) else {
            continue;
        };
        if comet_iso(&alg).is_err() {
            continue;
        }
        comets += 1;
        for c in battery::check_comet_iso(name, g, &cfg) {
            if !c.passed {
                pass = false;
                detail = format!("{name}: {} failed: {}", c.name, c.detail);
            }
        }
    }
    if comets < 5 {
        pass = false;
        detail = format!("only {comets} comets in the corpus");
    }

    // The base-corner image of the constructed centralizer is p(x) times the
    // corner identity, tying the matrix picture to the construction.
    let g = Graph::parse("vertex v1\nvertex v2\nedge e v1 v2\nedge c v2 v2\n").unwrap();
    let alg = LeavittAlgebra::new(&g).unwrap();
    let iso = comet_iso(&alg).unwrap();
    for p in battery::sample_polynomials() {
        let seed = comet_centralizer_from_laurent(&alg, &p).unwrap();
        let mut total = Element::zero();
        for (_, x) in seed.values() {
            total = total.add(x);
        }
        if iso.map(&alg, &total) != LaurentMatrix::scalar(iso.matrix_size(), &p) {
            pass = false;
            detail = String::from("seed image is not p(x) times the identity");
        }
    }

    finish(
        "8 (comet isomorphism)",
        started,
        Duration::from_secs(10),
        pass,
        &detail,
    );
}

/// Criterion 9: exact corner centers on acyclic corpus graphs — scalar under
/// downward directedness, diagonal normal forms otherwise.
#[test]
fn criterion_9_acyclic_corners() {
    let started = Instant::now();
    let graphs = load_corpus();
    let mut pass = true;
    let mut detail = String::from("corner centers on acyclic graphs");
    let mut acyclic_mt3 = 0usize;
    let mut acyclic_non_mt3 = 0usize;
    for (name, g) in &graphs {
        if LeavittAlgebra::new(g).is_err() || !cycles(g).is_empty() {
            continue;
        }
        if mt3(g).holds() {
            acyclic_mt3 += 1;
        } else {
            acyclic_non_mt3 += 1;
        }
        for c in battery::check_acyclic_corners(name, g) {
            if !c.passed {
                pass = false;
                detail = format!("{name}: {} failed", c.name);
            }
        }
    }
    if acyclic_mt3 == 0 || acyclic_non_mt3 == 0 {
        pass = false;
        detail =
            format!("{acyclic_mt3} downward-directed / {acyclic_non_mt3} other acyclic graphs");
    }
    finish(
        "9 (acyclic corners)",
        started,
        Duration::from_secs(10),
        pass,
        &detail,
    );
}
