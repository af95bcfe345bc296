//! Command implementations. Each returns its text output and an [`Outcome`];
//! `main` prints and exits. JSON output carries no timings so identical
//! inputs serialize identically; the corpus text table reports wall times.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use lpa_core::algebra::LeavittAlgebra;
use lpa_core::classify::{certify, classify_with_seed, CertifyOptions};
use lpa_core::graph::Graph;
use lpa_core::laurent::comet_iso;

use crate::battery::{run_battery, BatteryConfig};
use crate::report::{self, to_json};
use crate::{corpus_files, load_graph, CliError, Outcome};

const CLASSIFY_SEED: u64 = 0x1ea_5eed;

pub struct CommandOutput {
    pub text: String,
    pub outcome: Outcome,
}

fn ok(text: String) -> CommandOutput {
    CommandOutput {
        text,
        outcome: Outcome::Ok,
    }
}

pub fn cmd_analyze(path: &Path, json: bool) -> Result<CommandOutput, CliError> {
    let g = load_graph(path)?;
    let props = report::properties_json(&g);
    let payload = report::AnalyzeJson {
        graph: report::GraphJson::new(&path.display().to_string(), &g),
        properties: props,
    };
    if json {
        return Ok(ok(to_json(&payload)));
    }
    let p = &payload.properties;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "graph: {} ({} vertices, {} edges{})",
        path.display(),
        payload.graph.vertices,
        payload.graph.edges,
        if payload.graph.row_finite {
            ""
        } else {
            ", flagged"
        }
    );
    let _ = writeln!(
        out,
        "kinds: sinks=[{}] regular=[{}] infinite=[{}]",
        p.sinks.join(", "),
        p.regular.join(", "),
        p.infinite_emitters.join(", ")
    );
    let no_exit = p.cycles.iter().filter(|c| c.exits == 0).count();
    let _ = writeln!(
        out,
        "cycles: {}{}",
        p.cycles.len(),
        if p.cycles.is_empty() {
            String::new()
        } else if no_exit == p.cycles.len() {
            " (no exits)".to_string()
        } else {
            let exits: Vec<String> = p
                .cycles
                .iter()
                .filter(|c| c.exits > 0)
                .map(|c| format!("exit at {}", c.base))
                .collect();
            format!("; {}", exits.join("; "))
        }
    );
    for c in &p.cycles {
        let _ = writeln!(
            out,
            "  cycle {} at {} (length {}): {} exits",
            c.rep, c.base, c.length, c.exits
        );
    }
    let _ = writeln!(
        out,
        "condition (L): {}",
        if p.condition_l { "yes" } else { "no" }
    );
    match &p.mt3_witness {
        None => {
            let _ = writeln!(out, "MT3: yes");
        }
        Some([v, w]) => {
            let _ = writeln!(out, "MT3: no ({v},{w})");
        }
    }
    if let Some(n) = p.hs_subsets {
        let _ = writeln!(out, "hereditary saturated subsets: {n}");
    }
    if let Some(c) = p.comet {
        let _ = writeln!(out, "comet: {}", if c { "yes" } else { "no" });
    }
    if let (Some(gs), Some(s)) = (p.graded_simple, p.simple) {
        let _ = writeln!(
            out,
            "graded simple: {}; simple: {}",
            if gs { "yes" } else { "no" },
            if s { "yes" } else { "no" }
        );
    }
    Ok(ok(out))
}

pub fn cmd_centroid(
    path: &Path,
    do_certify: bool,
    degree: u32,
    json: bool,
) -> Result<CommandOutput, CliError> {
    let g = load_graph(path)?;
    let cl = classify_with_seed(&g, CLASSIFY_SEED);
    let report_opt = do_certify.then(|| {
        certify(
            &g,
            &cl,
            &CertifyOptions {
                degree,
                ..CertifyOptions::default()
            },
        )
    });
    let payload = report::centroid_json(
        &path.display().to_string(),
        &g,
        &cl,
        report_opt.as_ref(),
        degree,
    );
    let failed = report_opt.as_ref().map(|r| !r.passed()).unwrap_or(false);
    let outcome = if failed {
        Outcome::VerificationFailed
    } else {
        Outcome::Ok
    };
    if json {
        return Ok(CommandOutput {
            text: to_json(&payload),
            outcome,
        });
    }
    let mut out = String::new();
    let _ = writeln!(out, "graph: {}", path.display());
    let _ = writeln!(
        out,
        "verdict: {}{}",
        payload.verdict,
        payload
            .centroid
            .as_deref()
            .map(|c| format!(" (centroid {c})"))
            .unwrap_or_default()
    );
    if let Some(b) = &payload.branch {
        let _ = writeln!(out, "branch: {b}");
    }
    if let Some([v, w]) = &payload.certificate.mt3_witness {
        let _ = writeln!(out, "not prime: no common descendant for ({v},{w})");
    }
    if let (Some(gs), Some(s)) = (payload.properties.graded_simple, payload.properties.simple) {
        let _ = writeln!(
            out,
            "graded simple: {}; simple: {}",
            if gs { "yes" } else { "no" },
            if s { "yes" } else { "no" }
        );
    }
    if let Some(dims) = &payload.seed_dims {
        let _ = writeln!(
            out,
            "seed dimensions: d={} -> {}, d={} -> {}{}",
            dims.degree,
            dims.dim,
            dims.degree + 1,
            dims.dim_next,
            match payload.stable {
                Some(true) => " (stable)",
                Some(false) => " (UNSTABLE)",
                None => "",
            }
        );
    }
    if let Some(r) = &report_opt {
        let _ = writeln!(
            out,
            "certify: {} ({} checks)",
            if r.passed() { "PASS" } else { "FAIL" },
            r.checks.len()
        );
        for c in &r.checks {
            if !c.passed {
                let _ = writeln!(out, "  FAIL {}: {}", c.name, c.detail);
            }
        }
    }
    Ok(CommandOutput { text: out, outcome })
}

pub fn cmd_eval(path: &Path, lhs: &str, rhs: &str, json: bool) -> Result<CommandOutput, CliError> {
    let g = load_graph(path)?;
    let alg =
        LeavittAlgebra::new(&g).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let x = alg
        .parse_element(lhs)
        .map_err(|e| CliError::Input(format!("left expression: {e}")))?;
    let y = alg
        .parse_element(rhs)
        .map_err(|e| CliError::Input(format!("right expression: {e}")))?;
    let product = alg.multiply(&x, &y);
    let grading = product
        .grade_split()
        .into_iter()
        .map(|(deg, part)| (deg, alg.format_element(&part)))
        .collect();
    let basis = alg
        .special_edges()
        .iter()
        .map(|(&v, &e)| (g.vertex_name(v).to_string(), g.edge_name(e).to_string()))
        .collect();
    let payload = report::EvalJson {
        graph: report::GraphJson::new(&path.display().to_string(), &g),
        lhs: alg.format_element(&x),
        rhs: alg.format_element(&y),
        product: alg.format_element(&product),
        grading,
        partial_b: product.partial_b(),
        basis,
    };
    if json {
        return Ok(ok(to_json(&payload)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "lhs: {}", payload.lhs);
    let _ = writeln!(out, "rhs: {}", payload.rhs);
    let _ = writeln!(out, "product: {}", payload.product);
    let _ = writeln!(out, "grading:");
    for (deg, part) in &payload.grading {
        let _ = writeln!(out, "  {deg}: {part}");
    }
    let _ = writeln!(out, "partial_B: {}", payload.partial_b);
    for (v, e) in &payload.basis {
        let _ = writeln!(out, "basis: special edge at {v} = {e}");
    }
    Ok(ok(out))
}

pub fn cmd_comet_iso(path: &Path, element: &str, json: bool) -> Result<CommandOutput, CliError> {
    let g = load_graph(path)?;
    let alg =
        LeavittAlgebra::new(&g).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let iso = comet_iso(&alg).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let x = alg
        .parse_element(element)
        .map_err(|e| CliError::Input(format!("element: {e}")))?;
    let m = iso.map(&alg, &x);
    let payload = report::CometIsoJson {
        graph: report::GraphJson::new(&path.display().to_string(), &g),
        element: alg.format_element(&x),
        size: iso.matrix_size(),
        lambda: iso
            .lambda()
            .iter()
            .map(|p| report::path_string(&g, p))
            .collect(),
        matrix: m.to_string(),
    };
    if json {
        return Ok(ok(to_json(&payload)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "element: {}", payload.element);
    let _ = writeln!(
        out,
        "index paths ({}): [{}]",
        payload.size,
        payload.lambda.join(", ")
    );
    let _ = writeln!(out, "matrix: {}", payload.matrix);
    Ok(ok(out))
}

pub fn cmd_corpus(dir: &Path, degree: u32, json: bool) -> Result<CommandOutput, CliError> {
    let files = corpus_files(dir)?;
    let mut rows = Vec::new();
    let mut timings: Vec<(String, u128)> = Vec::new();
    let mut all_certified = true;
    for file in &files {
        let name = file
            .file_name()
            .map(|n| n.to_string_lossy().to_string())
            .unwrap_or_else(|| file.display().to_string());
        let started = Instant::now();
        match load_graph(file) {
            Err(e) => {
                all_certified = false;
                rows.push(report::CorpusRowJson {
                    file: name.clone(),
                    status: "error".into(),
                    error: Some(e.to_string()),
                    verdict: None,
                    branch: None,
                    centroid: None,
                    certificate_status: None,
                    seed_dims: None,
                    stable: None,
                });
            }
            Ok(g) => {
                let cl = classify_with_seed(&g, CLASSIFY_SEED);
                let rep = certify(
                    &g,
                    &cl,
                    &CertifyOptions {
                        degree,
                        ..CertifyOptions::default()
                    },
                );
                if !rep.passed() {
                    all_certified = false;
                }
                rows.push(report::CorpusRowJson {
                    file: name.clone(),
                    status: "ok".into(),
                    error: None,
                    verdict: Some(cl.verdict.name().to_string()),
                    branch: cl.branch.map(|b| b.name().to_string()),
                    centroid: cl.verdict.centroid().map(str::to_string),
                    certificate_status: Some(
                        if rep.passed() { "verified" } else { "failed" }.into(),
                    ),
                    seed_dims: rep.seed_dims.map(|(dim, dim_next)| report::SeedDimsJson {
                        degree,
                        dim,
                        dim_next,
                    }),
                    stable: rep.stable,
                });
            }
        }
        timings.push((name, started.elapsed().as_millis()));
    }
    let payload = report::CorpusJson {
        directory: dir.display().to_string(),
        degree,
        rows,
        all_certified,
    };
    let outcome = if all_certified {
        Outcome::Ok
    } else {
        Outcome::VerificationFailed
    };
    if json {
        return Ok(CommandOutput {
            text: to_json(&payload),
            outcome,
        });
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<24} {:<14} {:<10} {:<12} {:<10} {:>8}",
        "file", "verdict", "centroid", "certificate", "dims", "ms"
    );
    for (row, (_, ms)) in payload.rows.iter().zip(&timings) {
        let dims = row
            .seed_dims
            .as_ref()
            .map(|d| format!("{}/{}", d.dim, d.dim_next))
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{:<24} {:<14} {:<10} {:<12} {:<10} {:>8}",
            row.file,
            row.verdict.clone().unwrap_or_else(|| "error".into()),
            row.centroid.clone().unwrap_or_else(|| "-".into()),
            row.certificate_status
                .clone()
                .unwrap_or_else(|| row.status.clone()),
            dims,
            ms
        );
    }
    if payload.rows.is_empty() {
        let _ = writeln!(out, "(empty corpus)");
    }
    let _ = writeln!(
        out,
        "all certified: {}",
        if all_certified { "yes" } else { "no" }
    );
    Ok(CommandOutput { text: out, outcome })
}

pub fn cmd_verify(
    dir: &Path,
    degree: u32,
    seed: u64,
    json: bool,
) -> Result<CommandOutput, CliError> {
    let files = corpus_files(dir)?;
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    let mut load_failures: Vec<(String, String)> = Vec::new();
    for file in &files {
        let name = file
            .file_name()
            .map(|n| n.to_string_lossy().to_string())
            .unwrap_or_else(|| file.display().to_string());
        match load_graph(file) {
            Ok(g) => graphs.push((name, g)),
            Err(e) => load_failures.push((name, e.to_string())),
        }
    }

    let cfg = BatteryConfig {
        degree,
        seed,
        ..BatteryConfig::default()
    };
    let mut checks = run_battery(&graphs, &cfg);
    for (name, err) in &load_failures {
        checks.insert(
            0,
            crate::battery::Check {
                graph: Some(name.clone()),
                name: "load",
                passed: false,
                detail: err.clone(),
            },
        );
    }
    let pass = checks.iter().all(|c| c.passed);
    let payload = report::VerifyJson {
        directory: dir.display().to_string(),
        degree,
        seed,
        graphs: graphs.len(),
        checks: checks
            .iter()
            .map(|c| report::VerifyCheckJson {
                graph: c.graph.clone(),
                name: c.name.to_string(),
                passed: c.passed,
                detail: c.detail.clone(),
            })
            .collect(),
        pass,
    };
    let outcome = if pass {
        Outcome::Ok
    } else {
        Outcome::VerificationFailed
    };
    if json {
        return Ok(CommandOutput {
            text: to_json(&payload),
            outcome,
        });
    }
    let mut out = String::new();
    if graphs.is_empty() && load_failures.is_empty() {
        let _ = writeln!(out, "warning: empty corpus at {}", dir.display());
    }
    let mut current: Option<&str> = None;
    for c in &checks {
        let scope = c.graph.as_deref();
        if scope != current {
            match scope {
                Some(s) => {
                    let _ = writeln!(out, "[{s}]");
                }
                None => {
                    let _ = writeln!(out, "[global]");
                }
            }
            current = scope;
        }
        let _ = writeln!(
            out,
            "  {} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    let _ = writeln!(
        out,
        "result: {} ({} checks, seed {seed}, degree {degree})",
        if pass { "PASS" } else { "FAIL" },
        checks.len()
    );
    Ok(CommandOutput { text: out, outcome })
}
