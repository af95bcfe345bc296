//! Serializable report types. JSON field order is fixed by struct order and
//! all collections are ordered, so output is byte-stable across runs.

use serde::Serialize;

use lpa_core::classify::{Certificate, CertifyReport, Classification};
use lpa_core::graph::{
    condition_l, cycle_exits, cycles, hs_subsets, is_comet, is_graded_simple, is_simple, mt3,
    ExitWitness, Graph, Mt3,
};

#[derive(Serialize, Clone, Debug)]
pub struct GraphJson {
    pub file: String,
    pub vertices: usize,
    pub edges: usize,
    pub row_finite: bool,
}

impl GraphJson {
    pub fn new(file: &str, g: &Graph) -> GraphJson {
        GraphJson {
            file: file.to_string(),
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            row_finite: g.is_row_finite(),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct CycleJson {
    pub rep: String,
    pub base: String,
    pub length: u32,
    pub exits: usize,
}

#[derive(Serialize, Clone, Debug)]
pub struct PropertiesJson {
    pub sinks: Vec<String>,
    pub regular: Vec<String>,
    pub infinite_emitters: Vec<String>,
    pub cycles: Vec<CycleJson>,
    pub condition_l: bool,
    pub mt3: bool,
    pub mt3_witness: Option<[String; 2]>,
    /// Row-finite graphs only.
    pub comet: Option<bool>,
    pub graded_simple: Option<bool>,
    pub simple: Option<bool>,
    /// Size of the hereditary saturated lattice, for small graphs.
    pub hs_subsets: Option<usize>,
}

pub fn properties_json(g: &Graph) -> PropertiesJson {
    let kinds = g.vertex_kinds();
    let name = |v: lpa_core::graph::VertexId| g.vertex_name(v).to_string();
    let cycle_list = cycles(g)
        .into_iter()
        .map(|c| CycleJson {
            rep: path_string(g, c.rep()),
            base: name(c.base()),
            length: c.len(),
            exits: cycle_exits(g, &c).len(),
        })
        .collect();
    let (mt3_ok, witness) = match mt3(g) {
        Mt3::Holds => (true, None),
        Mt3::Fails { witness: (v, w) } => (false, Some([name(v), name(w)])),
    };
    PropertiesJson {
        sinks: kinds.sinks.iter().map(|&v| name(v)).collect(),
        regular: kinds.regular.iter().map(|&v| name(v)).collect(),
        infinite_emitters: kinds.infinite.iter().map(|&v| name(v)).collect(),
        cycles: cycle_list,
        condition_l: condition_l(g),
        mt3: mt3_ok,
        mt3_witness: witness,
        comet: is_comet(g).ok().map(|c| c.comet),
        graded_simple: is_graded_simple(g).ok(),
        simple: is_simple(g).ok(),
        hs_subsets: if g.vertex_count() <= 8 {
            hs_subsets(g).ok().map(|v| v.len())
        } else {
            None
        },
    }
}

pub fn path_string(g: &Graph, p: &lpa_core::graph::Path) -> String {
    p.display(g).to_string()
}

#[derive(Serialize, Clone, Debug)]
pub struct ExitJson {
    pub at: String,
    /// Edge name, or null for the implicit infinite-emitter exit.
    pub edge: Option<String>,
}

fn exit_json(g: &Graph, e: &ExitWitness) -> ExitJson {
    match *e {
        ExitWitness::Edge { at, edge } => ExitJson {
            at: g.vertex_name(at).to_string(),
            edge: Some(g.edge_name(edge).to_string()),
        },
        ExitWitness::InfiniteEmitter { at } => ExitJson {
            at: g.vertex_name(at).to_string(),
            edge: None,
        },
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct CertCheckJson {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct CertificateJson {
    pub mt3_witness: Option<[String; 2]>,
    pub mt3_samples: usize,
    pub cycle: Option<String>,
    pub exit: Option<ExitJson>,
    pub emitter: Option<String>,
    pub comet_cycle: Option<String>,
    pub comet_reach: Option<std::collections::BTreeMap<String, String>>,
    pub non_comet_witness: Option<String>,
    /// "verified", "failed", or "unchecked".
    pub status: String,
    pub checks: Vec<CertCheckJson>,
}

pub fn certificate_json(
    g: &Graph,
    cert: &Certificate,
    report: Option<&CertifyReport>,
) -> CertificateJson {
    let name = |v: lpa_core::graph::VertexId| g.vertex_name(v).to_string();
    CertificateJson {
        mt3_witness: cert.mt3_witness.map(|(v, w)| [name(v), name(w)]),
        mt3_samples: cert.mt3_samples.len(),
        cycle: cert.cycle.as_ref().map(|c| path_string(g, c.rep())),
        exit: cert.exit.as_ref().map(|e| exit_json(g, e)),
        emitter: cert.emitter.map(name),
        comet_cycle: cert.comet.as_ref().map(|c| path_string(g, c.cycle.rep())),
        comet_reach: cert.comet.as_ref().map(|c| {
            c.reach
                .iter()
                .map(|(&v, p)| (name(v), path_string(g, p)))
                .collect()
        }),
        non_comet_witness: cert.non_comet_witness.map(name),
        status: match report {
            None => "unchecked".to_string(),
            Some(r) if r.passed() => "verified".to_string(),
            Some(_) => "failed".to_string(),
        },
        checks: report
            .map(|r| {
                r.checks
                    .iter()
                    .map(|c| CertCheckJson {
                        name: c.name.to_string(),
                        passed: c.passed,
                        detail: c.detail.clone(),
                    })
                    .collect()
            })
            .unwrap_or_default(),
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct SeedDimsJson {
    pub degree: u32,
    pub dim: usize,
    pub dim_next: usize,
}

#[derive(Serialize, Clone, Debug)]
pub struct CentroidJson {
    pub graph: GraphJson,
    pub properties: PropertiesJson,
    pub verdict: String,
    pub branch: Option<String>,
    pub centroid: Option<String>,
    pub certificate: CertificateJson,
    pub seed_dims: Option<SeedDimsJson>,
    pub stable: Option<bool>,
    /// Solved seed basis at the report degree: one vertex -> canonical
    /// element document per basis centralizer.
    pub seed_basis: Option<Vec<std::collections::BTreeMap<String, String>>>,
}

pub fn centroid_json(
    file: &str,
    g: &Graph,
    cl: &Classification,
    report: Option<&CertifyReport>,
    degree: u32,
) -> CentroidJson {
    let seed_basis = report.and_then(|r| r.seed_dims.map(|_| solved_seed_basis(g, degree)));
    CentroidJson {
        graph: GraphJson::new(file, g),
        properties: properties_json(g),
        verdict: cl.verdict.name().to_string(),
        branch: cl.branch.map(|b| b.name().to_string()),
        centroid: cl.verdict.centroid().map(str::to_string),
        certificate: certificate_json(g, &cl.certificate, report),
        seed_dims: report.and_then(|r| {
            r.seed_dims.map(|(dim, dim_next)| SeedDimsJson {
                degree,
                dim,
                dim_next,
            })
        }),
        stable: report.and_then(|r| r.stable),
        seed_basis,
    }
}

/// Serialize the solved seed basis as vertex -> canonical element documents.
fn solved_seed_basis(g: &Graph, degree: u32) -> Vec<std::collections::BTreeMap<String, String>> {
    let alg = lpa_core::algebra::LeavittAlgebra::new(g).expect("caller checked row-finiteness");
    lpa_core::centroid::seed_space(&alg, degree)
        .basis
        .iter()
        .map(|seed| {
            seed.values()
                .map(|(&v, x)| (g.vertex_name(v).to_string(), alg.format_element(x)))
                .collect()
        })
        .collect()
}

#[derive(Serialize, Clone, Debug)]
pub struct CorpusRowJson {
    pub file: String,
    pub status: String,
    pub error: Option<String>,
    pub verdict: Option<String>,
    pub branch: Option<String>,
    pub centroid: Option<String>,
    pub certificate_status: Option<String>,
    pub seed_dims: Option<SeedDimsJson>,
    pub stable: Option<bool>,
}

#[derive(Serialize, Clone, Debug)]
pub struct CorpusJson {
    pub directory: String,
    pub degree: u32,
    pub rows: Vec<CorpusRowJson>,
    pub all_certified: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct EvalJson {
    pub graph: GraphJson,
    pub lhs: String,
    pub rhs: String,
    pub product: String,
    pub grading: std::collections::BTreeMap<i64, String>,
    pub partial_b: u32,
    /// Basis convention: special edge per regular vertex.
    pub basis: std::collections::BTreeMap<String, String>,
}

#[derive(Serialize, Clone, Debug)]
pub struct CometIsoJson {
    pub graph: GraphJson,
    pub element: String,
    pub size: usize,
    pub lambda: Vec<String>,
    pub matrix: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct VerifyCheckJson {
    pub graph: Option<String>,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize, Clone, Debug)]
pub struct VerifyJson {
    pub directory: String,
    pub degree: u32,
    pub seed: u64,
    pub graphs: usize,
    pub checks: Vec<VerifyCheckJson>,
    pub pass: bool,
}

#[derive(Serialize, Clone, Debug)]
pub struct AnalyzeJson {
    pub graph: GraphJson,
    pub properties: PropertiesJson,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialization cannot fail")
}
