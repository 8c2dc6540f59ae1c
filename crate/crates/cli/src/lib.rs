//! Report types and command implementations behind the `bipolar` binary.
//!
//! Every command returns its rendered output together with the exit code,
//! so the binary only parses arguments and prints.

use std::fmt::Write as _;
use std::path::Path;

use coxeter_bipolar::catalog::{self, CatalogError};
use coxeter_bipolar::census::{
    domination_probe_in, involution_census, pole_census, Ball, CensusError, CensusParams, CensusReport,
    DominationReport, PoleEstimate,
};
use coxeter_bipolar::criteria::{bipolar_verdict, corollary_2sph_check, CriteriaOptions, VertexChecker, VertexOutcome};
use coxeter_bipolar::{
    CoxeterInput, CoxeterMatrix, CoxeterType, DefaultLabel, DiagramError, Element, GeneratorSet, Reflection, Verdict,
    WallDistance, WordEngine, WordError, Witness,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Version of the JSON layout in `schema/analysis-report.schema.json`.
pub const SCHEMA_VERSION: u32 = 1;
/// Nothing in the tool is random; the seed is recorded for report stability.
pub const RUN_SEED: u64 = 0;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_BIPOLAR: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_UNSTABLE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("cannot write {path}: {message}")]
    Write { path: String, message: String },
}

/// Rendered output and the exit code that goes with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

pub fn load(input: &str) -> Result<CoxeterMatrix, CliError> {
    Ok(catalog::resolve(input)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSummary {
    pub generators: GeneratorSet,
    #[serde(rename = "type")]
    pub kind: CoxeterType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramSummary {
    pub rank: usize,
    pub names: Vec<String>,
    pub irreducible_components: Vec<FactorSummary>,
    pub odd_components: Vec<GeneratorSet>,
    pub spherical_factors: Vec<GeneratorSet>,
    pub two_spherical: bool,
    pub corollary_applies: bool,
}

impl DiagramSummary {
    pub fn of(m: &CoxeterMatrix) -> Self {
        DiagramSummary {
            rank: m.rank(),
            names: m.names().to_vec(),
            irreducible_components: m
                .irreducible_components(m.generators())
                .into_iter()
                .map(|c| FactorSummary {
                    generators: c,
                    kind: m.classify_irreducible(c).expect("components are irreducible"),
                })
                .collect(),
            odd_components: m.odd_components(),
            spherical_factors: m.spherical_factors(),
            two_spherical: m.is_2_spherical(m.generators()),
            corollary_applies: corollary_2sph_check(m),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorCensus {
    pub generator: String,
    pub report: CensusReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub seed: u64,
    pub input: CoxeterInput,
    pub diagram: DiagramSummary,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub census: Option<Vec<GeneratorCensus>>,
}

#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    pub criteria: CriteriaOptions,
    /// Census of every generator with these parameters, if requested.
    pub census: Option<CensusParams>,
}

pub fn analysis_report(m: &CoxeterMatrix, options: AnalyzeOptions) -> Result<AnalysisReport, CliError> {
    let verdict = bipolar_verdict(m, options.criteria)?;
    let census = match options.census {
        None => None,
        Some(params) => {
            let engine = WordEngine::new(m);
            let mut out = Vec::new();
            for s in 0..m.rank() {
                out.push(GeneratorCensus {
                    generator: m.name(s).to_string(),
                    report: pole_census(&engine, &Reflection::generator(s), params)?,
                });
            }
            Some(out)
        }
    };
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        seed: RUN_SEED,
        input: m.to_input(DefaultLabel::Two),
        diagram: DiagramSummary::of(m),
        verdict,
        census,
    })
}

fn set_names(m: &CoxeterMatrix, set: GeneratorSet) -> String {
    let names: Vec<&str> = set.iter().map(|i| m.name(i)).collect();
    format!("{{{}}}", names.join(", "))
}

fn describe_witness(m: &CoxeterMatrix, w: &Witness) -> String {
    let mut out = format!("condition {}: T = {}", w.condition, set_names(m, w.t));
    if let Some(i) = w.i {
        let _ = write!(out, ", I = {}", set_names(m, i));
    }
    if let Some(o) = w.o {
        let _ = write!(out, ", O = {}", set_names(m, o));
    }
    if let Some((a, b)) = w.separated_pair {
        let _ = write!(out, ", separates {} from {}", m.name(a), m.name(b));
    }
    if let Some((a, b)) = w.missing_adjacency {
        let _ = write!(out, ", {} not adjacent to {}", m.name(a), m.name(b));
    }
    out
}

pub fn render_analysis(m: &CoxeterMatrix, report: &AnalysisReport) -> String {
    let d = &report.diagram;
    let mut out = String::new();
    let _ = writeln!(out, "rank {}", d.rank);
    for c in &d.irreducible_components {
        let _ = writeln!(out, "component {} type {}", set_names(m, c.generators), c.kind);
    }
    let odd: Vec<String> = d.odd_components.iter().map(|o| set_names(m, *o)).collect();
    let _ = writeln!(out, "odd components {}", odd.join(" "));
    let _ = writeln!(out, "2-spherical {}", d.two_spherical);
    let v = &report.verdict;
    if v.bipolar {
        let _ = writeln!(out, "bipolar");
    } else {
        let _ = writeln!(out, "not bipolar");
        if let Some(w) = &v.witness {
            let _ = writeln!(out, "  {}", describe_witness(m, w));
        }
        for w in v.all_witnesses.iter().skip(1) {
            let _ = writeln!(out, "  {}", describe_witness(m, w));
        }
    }
    if let Some(census) = &report.census {
        for g in census {
            let _ = writeln!(out, "census {}: {}", g.generator, census_line(&g.report));
        }
    }
    out
}

pub fn cmd_analyze(input: &str, options: AnalyzeOptions, json: bool) -> Result<Outcome, CliError> {
    let m = load(input)?;
    let report = analysis_report(&m, options)?;
    let output = if json {
        to_json(&report)
    } else {
        render_analysis(&m, &report)
    };
    Ok(Outcome {
        output,
        code: if report.verdict.bipolar { EXIT_OK } else { EXIT_NOT_BIPOLAR },
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
    s.push('\n');
    s
}

fn census_line(r: &CensusReport) -> String {
    let estimate = match r.pole_estimate {
        PoleEstimate::Count(n) => format!("{n} poles"),
        PoleEstimate::Unstable => "unstable".to_string(),
    };
    format!(
        "{estimate} (essential {} at R={}, {} at R={})",
        r.essential_count, r.radius, r.smaller.essential_count, r.smaller.radius
    )
}

pub fn render_census(m: &CoxeterMatrix, r: &CensusReport) -> String {
    let mut out = String::new();
    let walls: Vec<String> = r.walls.iter().map(|w| w.display(m).to_string()).collect();
    let _ = writeln!(out, "walls {}", walls.join(", "));
    let _ = writeln!(out, "k {} radius {} margin {}", r.k, r.radius, r.margin);
    let _ = writeln!(out, "{:>10} {:>10} {:>9}", "vertices", "max dist", "boundary");
    for c in r.components.iter().filter(|c| c.essential) {
        let _ = writeln!(
            out,
            "{:>10} {:>10} {:>9}",
            c.vertex_count,
            c.max_wall_distance.to_string(),
            if c.touches_ball_boundary { "yes" } else { "no" },
        );
    }
    let minor: Vec<_> = r.components.iter().filter(|c| !c.essential).collect();
    if let Some(far) = minor.iter().map(|c| c.max_wall_distance).max() {
        let _ = writeln!(
            out,
            "{} inessential components, {} vertices, max dist {}",
            minor.len(),
            minor.iter().map(|c| c.vertex_count).sum::<usize>(),
            far
        );
    }
    let _ = writeln!(out, "{} components, {}", r.components.len(), census_line(r));
    out
}

fn census_outcome(m: &CoxeterMatrix, report: &CensusReport, json: bool) -> Outcome {
    Outcome {
        output: if json { to_json(report) } else { render_census(m, report) },
        code: if report.stable { EXIT_OK } else { EXIT_UNSTABLE },
    }
}

pub fn cmd_census(input: &str, generator: &str, params: CensusParams, json: bool) -> Result<Outcome, CliError> {
    let m = load(input)?;
    let s = m
        .index_of(generator)
        .ok_or_else(|| CliError::UnknownGenerator(generator.to_string()))?;
    let engine = WordEngine::new(&m);
    let report = pole_census(&engine, &Reflection::generator(s), params)?;
    Ok(census_outcome(&m, &report, json))
}

/// The probes reachable from `bipolar probe`.
#[derive(Clone, Debug)]
pub enum Probe {
    Dominate { r: String, t: String, k: u32, radius: u32 },
    Involution { w: String, params: CensusParams },
    Jtu { v: String, r: String },
    Nearly { v: String, r: String },
    Bipolar { v: String, r: String },
}

fn reflection(engine: &WordEngine, text: &str) -> Result<Reflection, CliError> {
    let w = engine.parse_word(text)?;
    engine
        .is_reflection(&w)
        .ok_or_else(|| WordError::NotReflection(w.display(engine.matrix()).to_string()).into())
}

#[derive(Serialize)]
struct DominationProbe {
    r: String,
    t: String,
    runs: Vec<DominationReport>,
    escape_bounded: bool,
}

#[derive(Serialize)]
struct VertexProbe<'a> {
    v: String,
    r: String,
    translated: String,
    wall_distance: WallDistance,
    #[serde(flatten)]
    outcome: &'a VertexOutcome,
}

fn render_vertex(m: &CoxeterMatrix, p: &VertexProbe<'_>, checked: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "v = {}", p.v);
    let _ = writeln!(out, "r = {}", p.r);
    let _ = writeln!(out, "v^-1 r v = {} (distance {})", p.translated, p.wall_distance);
    let jtu = &p.outcome.jtu;
    let _ = writeln!(out, "J = {}", set_names(m, jtu.j));
    let _ = writeln!(out, "T = {}", set_names(m, jtu.t));
    let _ = writeln!(out, "U = {}", set_names(m, jtu.u));
    if checked {
        match &p.outcome.witness {
            None => {
                let _ = writeln!(out, "pass");
            }
            Some(w) => {
                let _ = writeln!(out, "fail, {}", describe_witness(m, w));
            }
        }
    } else {
        let i = jtu.j.union(jtu.u.intersection(jtu.t));
        let _ = writeln!(out, "J u (U n T) = {} spherical {}", set_names(m, i), m.is_spherical(i));
    }
    out
}

pub fn cmd_probe(input: &str, probe: &Probe, json: bool, vertex_cap: usize) -> Result<Outcome, CliError> {
    let m = load(input)?;
    let engine = WordEngine::new(&m);
    let shown = |e: &Element| e.display(&m).to_string();
    match probe {
        Probe::Dominate { r, t, k, radius } => {
            let r = reflection(&engine, r)?;
            let t = reflection(&engine, t)?;
            let mut runs = Vec::new();
            for radius in [radius.saturating_sub(2), *radius] {
                let ball = Ball::build(&engine, radius, vertex_cap)?;
                runs.push(domination_probe_in(&ball, &engine, &r, &t, *k)?);
            }
            let report = DominationProbe {
                r: shown(r.element()),
                t: shown(t.element()),
                escape_bounded: runs[0].max_escape_distance == runs[1].max_escape_distance,
                runs,
            };
            let output = if json {
                to_json(&report)
            } else {
                let mut out = format!("r = {}\nt = {}\n", report.r, report.t);
                for run in &report.runs {
                    let _ = writeln!(
                        out,
                        "R={} adjacent {} max escape {} dominated_within_ball {}",
                        run.radius, run.adjacent_vertices, run.max_escape_distance, run.dominated_within_ball
                    );
                }
                let _ = writeln!(out, "escape bounded {}", report.escape_bounded);
                out
            };
            Ok(Outcome { output, code: EXIT_OK })
        }
        Probe::Involution { w, params } => {
            let w = engine.parse_word(w)?;
            let report = involution_census(&engine, &w, *params)?;
            let mut outcome = census_outcome(&m, &report, json);
            if !json {
                outcome.output = format!("w = {}\n{}", shown(&w), outcome.output);
            }
            Ok(outcome)
        }
        Probe::Jtu { v, r } | Probe::Nearly { v, r } | Probe::Bipolar { v, r } => {
            let v = engine.parse_word(v)?;
            let r = reflection(&engine, r)?;
            let mut checker = VertexChecker::new(&engine);
            let outcome = match probe {
                Probe::Nearly { .. } => checker.nearly_bipolar(&v, &r),
                Probe::Bipolar { .. } => checker.bipolar(&v, &r),
                _ => VertexOutcome {
                    jtu: engine.jtu_sets(&v, &r),
                    passed: true,
                    witness: None,
                },
            };
            let report = VertexProbe {
                v: shown(&v),
                r: shown(r.element()),
                translated: shown(&engine.conjugate(r.element(), &v)),
                wall_distance: engine.wall_distance(&v, &r),
                outcome: &outcome,
            };
            let checked = !matches!(probe, Probe::Jtu { .. });
            let output = if json {
                to_json(&report)
            } else {
                render_vertex(&m, &report, checked)
            };
            Ok(Outcome {
                output,
                code: if outcome.passed { EXIT_OK } else { EXIT_NOT_BIPOLAR },
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmitFormat {
    Json,
    Dot,
}

/// The Coxeter graph in DOT: finite labels above 2 are printed and odd edges
/// are drawn bold.
pub fn render_dot(m: &CoxeterMatrix) -> String {
    let mut out = String::from("graph coxeter {\n");
    for i in 0..m.rank() {
        let _ = writeln!(out, "  {i} [label=\"{}\"];", m.name(i));
    }
    for (i, j) in m.diagram().edges() {
        let label = m.order(i, j).expect("edges have finite labels");
        let mut attrs = vec![format!("label=\"{label}\"")];
        if label % 2 == 1 {
            attrs.push("style=bold".to_string());
        }
        let _ = writeln!(out, "  {i} -- {j} [{}];", attrs.join(", "));
    }
    out.push_str("}\n");
    out
}

pub fn cmd_emit(input: &str, format: EmitFormat, target: Option<&Path>) -> Result<Outcome, CliError> {
    let m = load(input)?;
    let text = match format {
        EmitFormat::Dot => render_dot(&m),
        EmitFormat::Json => to_json(&analysis_report(
            &m,
            AnalyzeOptions {
                criteria: CriteriaOptions::default(),
                census: None,
            },
        )?),
    };
    match target {
        None => Ok(Outcome {
            output: text,
            code: EXIT_OK,
        }),
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Write {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            Ok(Outcome {
                output: String::new(),
                code: EXIT_OK,
            })
        }
    }
}
