//! Command implementations. Each builds a report from `lelong-core` results.

use std::time::Instant;

use lelong_core::convex::{Direction, PLConvexFunction, SiuCheck};
use lelong_core::diagram::{IndicatorDiagram, MassBounds, MassMethod, MassResult, Tau};
use lelong_core::estimate::{compare_exact_numeric, estimate_directional, estimate_indicator, CompareReport, EstimateReport, WLadder};
use lelong_core::exact::{format_q, q};
use lelong_core::green1d::{certify, counterexample_report, polydisk_selfgreen_check, CounterexampleOptions, GreenReport, PoleSystem, SelfGreenReport};
use lelong_core::poly::parse_polynomial;
use lelong_core::psh::{ModulusPoint, PshModel};
use num_complex::Complex64;
use serde::Serialize;

use crate::input::{complex_point, direction, json_arg, max_variable, reals};
use crate::output::{Failure, Report};
use crate::{Cli, Command, Method};

/// Monte Carlo samples used by the self-Green certificate.
const SELFGREEN_MC_SAMPLES: u64 = 200_000;

pub fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Analyze { poly, dim, at, dirs, timing } => analyze(poly, *dim, at.as_deref(), dirs, *timing),
        Command::Estimate { spec, dirs, probes, last_decade, normalize, exact_compare } => {
            estimate(cli, spec, dirs, probes, *last_decade, *normalize, *exact_compare)
        }
        Command::Green1d { system, samples, selfgreen } => green1d(cli, system.as_deref(), *samples, selfgreen.as_deref()),
        Command::Counterexample { t_grid, samples } => counterexample(cli, t_grid.as_deref(), *samples),
        Command::Mass { diagram, method, samples } => mass(cli, diagram, *method, *samples),
    }
}

#[derive(Serialize)]
struct AnalysisInput {
    poly: String,
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    at: Option<String>,
}

#[derive(Serialize)]
struct DirectionIndex {
    direction: Direction,
    index: String,
}

#[derive(Serialize)]
struct AnalysisReport {
    input: AnalysisInput,
    polynomial: String,
    support: Vec<Vec<u32>>,
    diagram: IndicatorDiagram,
    directions: Vec<DirectionIndex>,
    lelong_number: String,
    partial_numbers: Vec<String>,
    siu: SiuCheck,
    mass: MassResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    mass_bound: Option<MassBounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<f64>,
}

fn analyze(text: &str, dim: Option<usize>, at: Option<&str>, dirs: &[String], timing: bool) -> Result<Report, Failure> {
    let start = Instant::now();
    let dim = dim.unwrap_or_else(|| max_variable(text).max(1));
    let mut f = parse_polynomial(text, dim)?;
    if let Some(point) = at {
        f = f.taylor_shift(&complex_point(point)?)?;
    }
    let diagram = IndicatorDiagram::from_polynomial(&f);
    let directions: Vec<Direction> = if dirs.is_empty() {
        vec![Direction::ones(dim)]
    } else {
        dirs.iter().map(|d| direction(d, dim)).collect::<Result<_, _>>()?
    };
    let h = PLConvexFunction::from_pairs(diagram.generators().iter().map(|g| (q(0), g.clone())).collect())?;
    let partial_numbers = (1..=dim).map(|j| h.partial_number(j).map(|v| format_q(&v))).collect::<Result<_, _>>()?;
    let siu = h.siu_check();
    let mass = diagram.residual_mass();
    let mass_bound = if mass.tau.is_infinite() { None } else { Some(diagram.mass_bounds_check()?) };
    let rows = directions
        .iter()
        .map(|a| DirectionIndex { direction: a.clone(), index: format_q(&diagram.index(a)) })
        .collect::<Vec<_>>();
    let csv_rows = rows.iter().map(|r| vec![r.direction.to_string(), r.index.clone()]).collect();
    let siu_ok = siu.holds;
    let bound_ok = mass_bound.as_ref().is_none_or(|b| b.holds);
    let report = AnalysisReport {
        input: AnalysisInput { poly: text.to_string(), dim, at: at.map(str::to_string) },
        polynomial: f.to_string(),
        support: f.support().into_iter().map(|m| m.0).collect(),
        lelong_number: format_q(&h.lelong_number()),
        diagram,
        directions: rows,
        partial_numbers,
        siu,
        mass,
        mass_bound,
        timing_ms: timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    };
    Ok(Report::new("analyze", &report)?
        .table(vec!["direction", "index"], csv_rows)
        .check(siu_ok, "sum of partial numbers exceeds the Lelong number")
        .check(bound_ok, "residual mass below the Lelong number power"))
}

#[derive(Serialize)]
struct LadderEcho {
    scales: Vec<f64>,
    base: Vec<[f64; 2]>,
    nodes: usize,
}

#[derive(Serialize)]
struct EstimateOutput {
    model: PshModel,
    normalized: bool,
    ladder: LadderEcho,
    directional: Vec<EstimateReport>,
    indicator: Vec<EstimateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    compare: Option<CompareReport>,
}

fn estimate(
    cli: &Cli,
    spec: &str,
    dirs: &[String],
    probes: &[String],
    last_decade: i32,
    normalize: bool,
    exact_compare: bool,
) -> Result<Report, Failure> {
    let mut model: PshModel = json_arg(spec)?;
    let dim = model.dim();
    if last_decade < 1 {
        return Err(Failure::Input("--last-decade must be at least 1".into()));
    }
    let ladder = WLadder::decades(dim, last_decade).with_nodes(cli.nodes);
    if normalize {
        model = model.normalized(ladder.nodes_for(dim))?;
    }
    let directions: Vec<Direction> = if dirs.is_empty() && probes.is_empty() {
        vec![Direction::ones(dim)]
    } else {
        dirs.iter().map(|d| direction(d, dim)).collect::<Result<_, _>>()?
    };
    let directional = directions.iter().map(|a| estimate_directional(&model, a, &ladder)).collect::<Result<Vec<_>, _>>()?;
    let mut indicator = Vec::with_capacity(probes.len());
    for p in probes {
        let y = reals(p)?;
        if y.len() != dim {
            return Err(Failure::Input(format!("probe {p:?} has {} entries, expected {dim}", y.len())));
        }
        indicator.push(estimate_indicator(&model, &ModulusPoint::new(y)?, &ladder)?);
    }
    let compare = if exact_compare {
        let poly = match &model {
            PshModel::LogAbsPoly(f) => f.clone(),
            PshModel::Sum(t) => match t.as_slice() {
                [PshModel::LogAbsPoly(f), PshModel::Constant { .. }] => f.clone(),
                _ => return Err(Failure::Input("--exact-compare needs a logabs model".into())),
            },
            _ => return Err(Failure::Input("--exact-compare needs a logabs model".into())),
        };
        Some(compare_exact_numeric(&poly, &directions, &ladder)?)
    } else {
        None
    };
    let mut rows = Vec::new();
    for (kind, reports) in [("directional", &directional), ("indicator", &indicator)] {
        for r in reports.iter() {
            for (k, (scale, quotient)) in r.scales.iter().zip(&r.quotients).enumerate() {
                let secant = if k == 0 { String::new() } else { r.secants[k - 1].to_string() };
                rows.push(vec![
                    kind.to_string(),
                    r.target.join(","),
                    k.to_string(),
                    scale.to_string(),
                    quotient.to_string(),
                    secant,
                    r.estimate.to_string(),
                    r.error_bound.to_string(),
                ]);
            }
        }
    }
    let out = EstimateOutput {
        model,
        normalized: normalize,
        ladder: LadderEcho {
            scales: ladder.scales().to_vec(),
            base: ladder.base().iter().map(|z| [z.re, z.im]).collect(),
            nodes: ladder.nodes_for(dim),
        },
        directional,
        indicator,
        compare,
    };
    Ok(Report::new("estimate", &out)?.table(
        vec!["kind", "target", "rung", "scale", "quotient", "secant", "estimate", "error_bound"],
        rows,
    ))
}

#[derive(Serialize)]
struct GreenOutput {
    green: GreenReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    selfgreen: Option<SelfGreenReport>,
}

fn green1d(cli: &Cli, system: Option<&str>, samples: usize, selfgreen: Option<&str>) -> Result<Report, Failure> {
    let system = match system {
        Some(arg) => json_arg(arg)?,
        None => PoleSystem::new(vec![Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.0)], vec![1.0, 1.0])?,
    };
    let green = certify(&system, samples, cli.seed)?;
    let selfgreen = match selfgreen {
        Some(arg) => {
            let diagram: IndicatorDiagram = json_arg(arg)?;
            let ys = boundary_probe_points(diagram.dim());
            Some(polydisk_selfgreen_check(&diagram, &ys, SELFGREEN_MC_SAMPLES, cli.seed)?)
        }
        None => None,
    };
    let mut rows = vec![
        vec!["negative".into(), green.interior_max.to_string(), green.negative_ok.to_string()],
        vec!["boundary".into(), green.boundary_max.to_string(), green.boundary_ok.to_string()],
    ];
    for f in &green.fluxes {
        rows.push(vec![format!("flux({},{})", f.pole[0], f.pole[1]), f.flux.to_string(), (f.error <= lelong_core::green1d::FLUX_TOL).to_string()]);
    }
    rows.push(vec!["schwarz".into(), green.schwarz.max_excess.to_string(), green.schwarz.passed.to_string()]);
    if let Some(s) = &selfgreen {
        rows.push(vec!["selfgreen".into(), s.max_interior_value.to_string(), s.passed.to_string()]);
    }
    let ok = green.passed;
    let self_ok = selfgreen.as_ref().is_none_or(|s| s.passed);
    Ok(Report::new("green1d", &GreenOutput { green, selfgreen })?
        .table(vec!["check", "value", "passed"], rows)
        .check(ok, "Green function certificate failed")
        .check(self_ok, "polydisk self-Green certificate failed"))
}

/// Diagonal and off-diagonal moduli in the open polydisk.
fn boundary_probe_points(dim: usize) -> Vec<Vec<f64>> {
    let levels = [0.1, 0.5, 0.9];
    let mut pts: Vec<Vec<f64>> = levels.iter().map(|&r| vec![r; dim]).collect();
    for (k, &r) in levels.iter().enumerate() {
        pts.push((0..dim).map(|j| levels[(k + j) % levels.len()].min(r + 0.05)).collect());
    }
    pts
}

fn counterexample(cli: &Cli, t_grid: Option<&str>, samples: usize) -> Result<Report, Failure> {
    let mut opts = CounterexampleOptions { sphere_samples: samples, seed: cli.seed, ..Default::default() };
    opts.ladder = opts.ladder.with_nodes(cli.nodes);
    if let Some(text) = t_grid {
        let ts = reals(text)?;
        if ts.iter().any(|t| !(*t > 0.0 && *t < 1.0)) {
            return Err(Failure::Input("curve parameters must lie in (0, 1)".into()));
        }
        opts.t_grid = ts;
    }
    let report = counterexample_report(&opts)?;
    let rows = report
        .curve
        .iter()
        .map(|p| vec![p.t.to_string(), p.f.to_string(), p.v.to_string(), p.v_minus_f.to_string(), p.f_over_log_t.to_string()])
        .collect();
    let ok = report.passed;
    Ok(Report::new("counterexample", &report)?
        .table(vec!["t", "f", "v", "v_minus_f", "f_over_log_t"], rows)
        .check(ok, "counterexample certificate failed"))
}

#[derive(Serialize)]
struct MassOutput {
    #[serde(flatten)]
    diagram: IndicatorDiagram,
    #[serde(flatten)]
    mass: MassResult,
}

fn mass(cli: &Cli, diagram: &str, method: Method, samples: u64) -> Result<Report, Failure> {
    let diagram: IndicatorDiagram = json_arg(diagram)?;
    let method = match method {
        Method::Exact => MassMethod::Exact,
        Method::Montecarlo => MassMethod::MonteCarlo,
    };
    let mass = diagram.residual_mass_with(method, samples, cli.seed);
    let tau = match &mass.tau {
        Tau::Exact(t) => format_q(t),
        Tau::Estimate(v) => v.to_string(),
        Tau::Infinite => "inf".to_string(),
    };
    let method_name = match mass.method {
        MassMethod::Exact => "exact",
        MassMethod::MonteCarlo => "montecarlo",
    };
    let stderr = mass.mc_stderr.map_or(String::new(), |s| s.to_string());
    let row = vec![tau, method_name.to_string(), stderr];
    Ok(Report::new("mass", &MassOutput { diagram, mass })?.table(vec!["tau", "method", "stderr"], vec![row]))
}
