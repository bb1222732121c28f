use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::{Command, CommonArgs, Scheme, EXIT_CRITERIA_FAIL, EXIT_DEGENERATE, EXIT_GAP, EXIT_MAX_ITER, EXIT_OK};
use crate::criteria::{
    check_boundedness, check_eq29, check_hyp02, check_hyp03, check_positivity, check_radial, construct_hyp02_witness,
    CriteriaReport, Hyp02Verdict, Hyp03Outcome,
};
use crate::extnum::ExtReal;
use crate::fortet::{
    extract_solution, sinkhorn_baseline, solve_fortet, solve_untruncated, warm_ceiling, FixedPointResult, FortetError,
    FortetOperator, Potential, SchrodingerSolution, SolveOptions, Status, TraceRow,
};
use crate::gaussian::{discretize_gaussian, matrix_criterion, GaussianProblem};
use crate::problem::{
    problem_from_json, save_problem, validate_reduction, DiscreteProblem, Kernel, ProblemFormat, ReducedProblem,
};
use crate::Error;

const DEFAULT_TOL: f64 = 1e-10;
/// `compare` needs the potentials themselves, not only the coupling, to
/// settle; the truncated scheme approaches them at a geometric rate close
/// to 1, so its default stopping tolerance is tighter.
const COMPARE_TOL: f64 = 1e-13;
const RADIAL_SAMPLES: usize = 10_001;

/// Ceiling (or starting point) selection.
#[derive(Debug, Clone, PartialEq)]
pub enum CeilingChoice {
    Ones,
    Warm,
    Values(Vec<ExtReal>),
}

impl CeilingChoice {
    pub fn parse(spec: &str) -> Result<Self, Error> {
        match spec {
            "ones" => Ok(CeilingChoice::Ones),
            "warm" => Ok(CeilingChoice::Warm),
            path => read_values(Path::new(path)).map(CeilingChoice::Values),
        }
    }
}

fn read_values(path: &Path) -> Result<Vec<ExtReal>, Error> {
    let text = fs::read_to_string(path)?;
    if ProblemFormat::infer(path) == ProblemFormat::Json {
        return Ok(serde_json::from_str(&text)?);
    }
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(k, l)| {
            l.parse::<ExtReal>()
                .or_else(|_| {
                    l.parse::<f64>()
                        .map_err(|e| e.to_string())
                        .and_then(|x| ExtReal::new(x).map_err(|e| e.to_string()))
                })
                .map_err(|e| Error::Usage(format!("{}:{}: {e}", path.display(), k + 1)))
        })
        .collect()
}

/// Validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: &'static str,
    pub input: PathBuf,
    pub output: Option<PathBuf>,
    pub tol: f64,
    pub max_iter: usize,
    pub scheme: Scheme,
    pub ceiling: CeilingChoice,
    pub trace: bool,
    pub seed: u64,
    pub points: Option<usize>,
    pub half_width: f64,
}

impl RunConfig {
    fn new(
        command: &'static str,
        common: &CommonArgs,
        scheme: Scheme,
        trace: bool,
        default_tol: f64,
    ) -> Result<Self, Error> {
        let tol = common.tol.unwrap_or(default_tol);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Usage(format!("--tol must be positive, got {tol}")));
        }
        if common.max_iter == 0 {
            return Err(Error::Usage("--max-iter must be at least 1".into()));
        }
        Ok(RunConfig {
            command,
            input: common.input.clone(),
            output: common.output.clone(),
            tol,
            max_iter: common.max_iter,
            scheme,
            ceiling: CeilingChoice::parse(&common.ceiling)?,
            trace,
            seed: common.seed,
            points: common.points,
            half_width: common.half_width,
        })
    }

    fn options(&self) -> SolveOptions {
        SolveOptions {
            tol: self.tol,
            max_iter: self.max_iter,
            ..SolveOptions::default()
        }
    }
}

/// A loaded problem, with its Gaussian description when it came from one.
#[derive(Debug, Clone)]
pub struct Input {
    pub problem: DiscreteProblem,
    pub gaussian: Option<GaussianProblem>,
}

/// Grid points per dimension used when a Gaussian spec gives none.
pub fn default_points(dim: usize) -> usize {
    match dim {
        1 => 201,
        2 => 31,
        _ => 11,
    }
}

fn discretize(gp: GaussianProblem, points: Option<usize>, half_width: f64) -> Result<Input, Error> {
    let problem = discretize_gaussian(&gp, half_width, points.unwrap_or_else(|| default_points(gp.dim())))?;
    Ok(Input {
        problem,
        gaussian: Some(gp),
    })
}

/// Reads a problem file, a CSV bundle, or a Gaussian spec (`a`, `b`, `c`
/// keys) which is discretized.
pub fn load_input(path: &Path, points: Option<usize>, half_width: f64) -> Result<Input, Error> {
    if ProblemFormat::infer(path) == ProblemFormat::CsvBundle {
        return Ok(Input {
            problem: crate::problem::load_problem(path, ProblemFormat::CsvBundle)?,
            gaussian: None,
        });
    }
    let text = fs::read_to_string(path)?;
    let is_gaussian = serde_json::from_str::<serde_json::Value>(&text)
        .ok()
        .and_then(|v| {
            v.as_object()
                .map(|o| ["a", "b", "c"].iter().all(|k| o.contains_key(*k)) && !o.contains_key("kernel"))
        })
        .unwrap_or(false);
    if is_gaussian {
        let gp: GaussianProblem = serde_json::from_str(&text)?;
        return discretize(gp, points, half_width);
    }
    Ok(Input {
        problem: problem_from_json(&text, &path.display().to_string())?,
        gaussian: None,
    })
}

/// Restricts values over the original source points to the reduced ones.
fn restrict(values: &[ExtReal], reduced: &ReducedProblem) -> Result<Vec<ExtReal>, Error> {
    let original = reduced
        .x_index()
        .last()
        .map_or(0, |&i| i + 1)
        .max(reduced.problem().nx());
    if values.len() < original || reduced.x_index().iter().any(|&i| i >= values.len()) {
        return Err(Error::Usage(format!(
            "--U has {} entries, the problem has at least {original} source points",
            values.len()
        )));
    }
    Ok(reduced.x_index().iter().map(|&i| values[i]).collect())
}

fn ceiling_values(cfg: &RunConfig, op: &FortetOperator<'_>) -> Result<Vec<ExtReal>, Error> {
    let reduced = op.problem();
    Ok(match &cfg.ceiling {
        CeilingChoice::Ones => vec![ExtReal::ONE; reduced.nx()],
        CeilingChoice::Warm => {
            let tol = (cfg.tol * 1e-2).max(1e-14);
            warm_ceiling(op, tol, cfg.max_iter)?
                .into_iter()
                .map(ExtReal::Finite)
                .collect()
        }
        CeilingChoice::Values(v) => restrict(v, reduced)?,
    })
}

fn finite_ceiling(values: Vec<ExtReal>) -> Result<Vec<f64>, Error> {
    values
        .iter()
        .map(|v| v.finite().filter(|&x| x > 0.0))
        .collect::<Option<Vec<f64>>>()
        .ok_or_else(|| Error::Usage("--U must be positive and finite for the truncated scheme".into()))
}

fn write_report<T: Serialize>(value: &T, output: Option<&Path>, out: &mut dyn Write) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match output {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn trace_csv(trace: &[TraceRow]) -> String {
    let mut text = String::from(TraceRow::CSV_HEADER);
    text.push('\n');
    for row in trace {
        text.push_str(&row.csv_line());
        text.push('\n');
    }
    text
}

fn trace_path(output: &Path) -> PathBuf {
    output.with_extension("trace.csv")
}

#[derive(Debug, Clone, Serialize)]
struct SolveReport {
    scheme: &'static str,
    status: Status,
    iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<ExtReal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rel_change: Option<ExtReal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    early_exit_index: Option<usize>,
    log_domain: bool,
    /// Original indices of the points kept by the reduction.
    x_index: Vec<usize>,
    y_index: Vec<usize>,
    u_star: Potential,
    #[serde(skip_serializing_if = "Option::is_none")]
    solution: Option<SchrodingerSolution>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    trace: Vec<TraceRow>,
}

fn exit_for(status: Status) -> i32 {
    match status {
        Status::ConvergedPositive => EXIT_OK,
        Status::DegenerateZero | Status::Divergent => EXIT_DEGENERATE,
        Status::MaxIter => EXIT_MAX_ITER,
    }
}

fn fixed_point_report(
    scheme: Scheme,
    op: &FortetOperator<'_>,
    result: FixedPointResult,
    keep_trace: bool,
) -> Result<SolveReport, Error> {
    let solution = match result.status {
        Status::ConvergedPositive => Some(extract_solution(op, &result.u_star)?),
        _ => None,
    };
    let reduced = op.problem();
    Ok(SolveReport {
        scheme: scheme.as_str(),
        status: result.status,
        iterations: result.iterations,
        residual: Some(result.residual),
        rel_change: Some(result.rel_change),
        early_exit_index: result.early_exit_index,
        log_domain: op.log_domain(),
        x_index: reduced.x_index().to_vec(),
        y_index: reduced.y_index().to_vec(),
        u_star: result.u_star,
        solution,
        trace: if keep_trace { result.trace } else { Vec::new() },
    })
}

fn solve_report(cfg: &RunConfig, reduced: &ReducedProblem) -> Result<SolveReport, Error> {
    let op = FortetOperator::new(reduced);
    let opts = cfg.options();
    match cfg.scheme {
        Scheme::Truncated => {
            let ceiling = finite_ceiling(ceiling_values(cfg, &op)?)?;
            let result = solve_fortet(&op, Some(&ceiling), &opts)?;
            fixed_point_report(cfg.scheme, &op, result, cfg.trace)
        }
        Scheme::Untruncated => {
            let start = Potential(ceiling_values(cfg, &op)?);
            let result = solve_untruncated(&op, &start, &opts)?;
            fixed_point_report(cfg.scheme, &op, result, cfg.trace)
        }
        Scheme::Sinkhorn => {
            let (status, iterations, u_star, solution) = match sinkhorn_baseline(reduced, cfg.tol, cfg.max_iter) {
                Ok(o) => (
                    Status::ConvergedPositive,
                    o.iterations,
                    Potential::from_finite(&o.potential)?,
                    Some(o.solution),
                ),
                Err(FortetError::MaxIterExceeded { iterations, .. }) => {
                    (Status::MaxIter, iterations, Potential::ones(reduced.nx()), None)
                }
                Err(e) => return Err(e.into()),
            };
            Ok(SolveReport {
                scheme: cfg.scheme.as_str(),
                status,
                iterations,
                residual: None,
                rel_change: None,
                early_exit_index: None,
                log_domain: false,
                x_index: reduced.x_index().to_vec(),
                y_index: reduced.y_index().to_vec(),
                u_star,
                solution,
                trace: Vec::new(),
            })
        }
    }
}

fn cmd_solve(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Error> {
    let input = load_input(&cfg.input, cfg.points, cfg.half_width)?;
    let reduced = validate_reduction(&input.problem)?;
    let report = solve_report(cfg, &reduced)?;
    write_report(&report, cfg.output.as_deref(), out)?;
    if let (true, Some(path)) = (cfg.trace && !report.trace.is_empty(), &cfg.output) {
        fs::write(trace_path(path), trace_csv(&report.trace))?;
    }
    Ok(exit_for(report.status))
}

struct CheckFlags {
    hyp03: bool,
    r: f64,
    x_o: usize,
    hyp02_k: Vec<usize>,
    hyp02_x: Vec<usize>,
    hyp02_c: Vec<f64>,
    radial: bool,
}

fn to_reduced(indices: &[usize], reduced: &ReducedProblem, name: &str) -> Result<Vec<usize>, Error> {
    indices
        .iter()
        .map(|&i| {
            reduced
                .x_index()
                .iter()
                .position(|&k| k == i)
                .ok_or_else(|| Error::Usage(format!("{name}: source point {i} is not in the reduced problem")))
        })
        .collect()
}

fn to_original(verdict: &mut Hyp02Verdict, reduced: &ReducedProblem) {
    if let Some(w) = verdict.witness.as_mut() {
        for i in w.k_indices.iter_mut().chain(w.x_indices.iter_mut()) {
            *i = reduced.x_index()[*i];
        }
    }
    if let Some(v) = verdict.violation.as_mut() {
        v.y_index = reduced.y_index()[v.y_index];
    }
}

fn radial_samples(problem: &DiscreteProblem) -> Result<(Vec<f64>, Vec<f64>), Error> {
    let Kernel::Radial { profile, .. } = &problem.kernel else {
        return Err(Error::Usage(format!(
            "--radial needs a radial kernel, got {}",
            problem.kernel.kind_name()
        )));
    };
    let mut reach = 0.0f64;
    for x in &problem.x_space.points {
        for y in &problem.y_space.points {
            let d: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
            reach = reach.max(d);
        }
    }
    let reach = if reach > 0.0 { reach } else { 1.0 };
    let t: Vec<f64> = (0..RADIAL_SAMPLES)
        .map(|k| reach * k as f64 / (RADIAL_SAMPLES - 1) as f64)
        .collect();
    let theta = t.iter().map(|&s| profile.eval(s)).collect();
    Ok((t, theta))
}

fn criteria_report(
    cfg: &RunConfig,
    flags: &CheckFlags,
    input: &Input,
    reduced: &ReducedProblem,
) -> Result<CriteriaReport, Error> {
    let eq = check_eq29(reduced);
    let gaussian = input.gaussian.as_ref().map(matrix_criterion).transpose()?;
    let hyp03 = if flags.hyp03 {
        let op = FortetOperator::new(reduced);
        let u = ceiling_values(cfg, &op)?;
        let x_o = to_reduced(&[flags.x_o], reduced, "--x-o")?[0];
        Some(Hyp03Outcome::from_result(check_hyp03(reduced, &u, flags.r, x_o))?)
    } else {
        None
    };
    let hyp02 = if flags.hyp02_k.is_empty() {
        None
    } else {
        let k = to_reduced(&flags.hyp02_k, reduced, "--hyp02-k")?;
        let x = to_reduced(&flags.hyp02_x, reduced, "--hyp02-x")?;
        let mut verdict = if flags.hyp02_c.is_empty() {
            construct_hyp02_witness(reduced, &k, (!x.is_empty()).then_some(x.as_slice()), cfg.seed)?
        } else {
            check_hyp02(reduced, &k, &x, &flags.hyp02_c)?
        };
        to_original(&mut verdict, reduced);
        Some(verdict)
    };
    let radial = if flags.radial {
        let (t, theta) = radial_samples(&input.problem)?;
        Some(check_radial(&t, &theta, &t)?)
    } else {
        None
    };
    Ok(CriteriaReport {
        eq29_xy: eq.eq29_xy,
        eq29_yx: eq.eq29_yx,
        hyp02,
        hyp03,
        radial,
        gaussian,
        positivity: check_positivity(reduced),
        boundedness: check_boundedness(reduced),
    })
}

fn cmd_check(cfg: &RunConfig, flags: &CheckFlags, out: &mut dyn Write) -> Result<i32, Error> {
    let input = load_input(&cfg.input, cfg.points, cfg.half_width)?;
    let reduced = validate_reduction(&input.problem)?;
    let report = criteria_report(cfg, flags, &input, &reduced)?;
    out.write_all(report.render_table().as_bytes())?;
    if let Some(path) = &cfg.output {
        write_report(&report, Some(path), out)?;
    }
    Ok(if report.any_sufficient() {
        EXIT_OK
    } else {
        EXIT_CRITERIA_FAIL
    })
}

#[derive(Debug, Serialize)]
struct CompareReport {
    converged: bool,
    fortet_status: Status,
    fortet_iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    sinkhorn_iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    potential_gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    potential_rel_gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coupling_gap: Option<f64>,
    gap_tol: f64,
}

/// Sup-norm gaps between potentials normalized at index 0, relative gap,
/// and coupling gap.
pub(crate) fn potential_gaps(u: &[f64], v: &[f64]) -> (f64, f64) {
    let (u0, v0) = (u[0], v[0]);
    u.iter().zip(v).fold((0.0f64, 0.0f64), |(abs, rel), (&a, &b)| {
        let (a, b) = (a / u0, b / v0);
        (abs.max((a - b).abs()), rel.max((a - b).abs() / b.abs()))
    })
}

fn cmd_compare(cfg: &RunConfig, gap_tol: f64, out: &mut dyn Write) -> Result<i32, Error> {
    let input = load_input(&cfg.input, cfg.points, cfg.half_width)?;
    let reduced = validate_reduction(&input.problem)?;
    let op = FortetOperator::new(&reduced);
    let ceiling = finite_ceiling(ceiling_values(cfg, &op)?)?;
    let fortet = solve_fortet(&op, Some(&ceiling), &cfg.options())?;
    let mut report = CompareReport {
        converged: false,
        fortet_status: fortet.status,
        fortet_iterations: fortet.iterations,
        sinkhorn_iterations: None,
        failure: None,
        potential_gap: None,
        potential_rel_gap: None,
        coupling_gap: None,
        gap_tol,
    };
    let sinkhorn = sinkhorn_baseline(&reduced, cfg.tol, cfg.max_iter);
    let outcome = match (fortet.status, sinkhorn) {
        (Status::ConvergedPositive, Ok(s)) => Some(s),
        (status, Ok(s)) => {
            report.sinkhorn_iterations = Some(s.iterations);
            report.failure = Some(format!("fortet: {}", status.as_str()));
            None
        }
        (_, Err(e)) => {
            report.failure = Some(format!("sinkhorn: {e}"));
            None
        }
    };
    let Some(sinkhorn) = outcome else {
        write_report(&report, cfg.output.as_deref(), out)?;
        return Ok(EXIT_DEGENERATE);
    };
    let u = fortet
        .positive_u()
        .ok_or_else(|| Error::Usage("fortet potential is not positive".into()))?;
    let solution = extract_solution(&op, &fortet.u_star)?;
    let (abs, rel) = potential_gaps(&u, &sinkhorn.potential);
    let coupling = solution
        .pi
        .as_slice()
        .iter()
        .zip(sinkhorn.solution.pi.as_slice())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    report.converged = true;
    report.sinkhorn_iterations = Some(sinkhorn.iterations);
    report.potential_gap = Some(abs);
    report.potential_rel_gap = Some(rel);
    report.coupling_gap = Some(coupling);
    write_report(&report, cfg.output.as_deref(), out)?;
    Ok(if abs <= gap_tol { EXIT_OK } else { EXIT_GAP })
}

fn cmd_gaussian_gen(
    spec: Option<PathBuf>,
    scalars: (Option<f64>, Option<f64>, Option<f64>),
    points: Option<usize>,
    half_width: f64,
    output: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32, Error> {
    let gp = match (spec, scalars) {
        (Some(path), _) => serde_json::from_str(&fs::read_to_string(path)?)?,
        (None, (Some(a), Some(b), Some(c))) => GaussianProblem::scalar(a, b, c)?,
        _ => return Err(Error::Usage("give --spec or all of --a, --b, --c".into())),
    };
    let input = discretize(gp, points, half_width)?;
    match output {
        Some(path) => save_problem(&input.problem, &path, ProblemFormat::infer(&path))?,
        None => write_report(&input.problem, None, out)?,
    }
    Ok(EXIT_OK)
}

fn csv_table(header: &str, rows: impl Iterator<Item = Vec<String>>) -> String {
    let mut text = format!("{header}\n");
    for row in rows {
        let _ = writeln!(text, "{}", row.join(","));
    }
    text
}

fn cmd_report(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Error> {
    let dir = cfg
        .output
        .clone()
        .ok_or_else(|| Error::Usage("report needs --output DIR".into()))?;
    let input = load_input(&cfg.input, cfg.points, cfg.half_width)?;
    let reduced = validate_reduction(&input.problem)?;
    fs::create_dir_all(&dir)?;
    let cfg = RunConfig {
        trace: true,
        ..cfg.clone()
    };
    let solved = solve_report(&cfg, &reduced)?;
    let flags = CheckFlags {
        hyp03: false,
        r: 2.0,
        x_o: 0,
        hyp02_k: Vec::new(),
        hyp02_x: Vec::new(),
        hyp02_c: Vec::new(),
        radial: false,
    };
    let criteria = criteria_report(&cfg, &flags, &input, &reduced)?;
    write_report(&solved, Some(&dir.join("solution.json")), out)?;
    write_report(&criteria, Some(&dir.join("criteria.json")), out)?;
    fs::write(dir.join("trace.csv"), trace_csv(&solved.trace))?;
    if let Some(s) = &solved.solution {
        let pi = &s.pi;
        let potential = csv_table(
            "i,u,a,mu,row_sum",
            (0..reduced.nx()).map(|i| {
                vec![
                    reduced.x_index()[i].to_string(),
                    solved.u_star.0[i].to_string(),
                    format!("{:?}", s.a[i]),
                    format!("{:?}", reduced.mu()[i]),
                    format!("{:?}", pi.row(i).iter().sum::<f64>()),
                ]
            }),
        );
        fs::write(dir.join("potential.csv"), potential)?;
        let dual = csv_table(
            "j,b,nu,col_sum",
            (0..reduced.ny()).map(|j| {
                vec![
                    reduced.y_index()[j].to_string(),
                    format!("{:?}", s.b[j]),
                    format!("{:?}", reduced.nu()[j]),
                    format!("{:?}", (0..reduced.nx()).map(|i| pi.get(i, j)).sum::<f64>()),
                ]
            }),
        );
        fs::write(dir.join("dual.csv"), dual)?;
        let coupling = csv_table(
            "i,j,pi",
            (0..reduced.nx()).flat_map(|i| {
                (0..reduced.ny()).map(move |j| vec![i.to_string(), j.to_string(), format!("{:?}", pi.get(i, j))])
            }),
        );
        fs::write(dir.join("coupling.csv"), coupling)?;
    }
    writeln!(
        out,
        "{}: {} after {} iterations; report in {}",
        solved.scheme,
        solved.status.as_str(),
        solved.iterations,
        dir.display()
    )?;
    out.write_all(criteria.render_table().as_bytes())?;
    Ok(exit_for(solved.status))
}

pub(super) fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Error> {
    match command {
        Command::Solve { common, scheme, trace } => {
            let cfg = RunConfig::new("solve", &common, scheme, trace, DEFAULT_TOL)?;
            cmd_solve(&cfg, out)
        }
        Command::Check {
            common,
            hyp03,
            r,
            x_o,
            hyp02_k,
            hyp02_x,
            hyp02_c,
            radial,
        } => {
            let cfg = RunConfig::new("check", &common, Scheme::Truncated, false, DEFAULT_TOL)?;
            let flags = CheckFlags {
                hyp03,
                r,
                x_o,
                hyp02_k,
                hyp02_x,
                hyp02_c,
                radial,
            };
            cmd_check(&cfg, &flags, out)
        }
        Command::Compare { common, gap_tol } => {
            let cfg = RunConfig::new("compare", &common, Scheme::Truncated, false, COMPARE_TOL)?;
            cmd_compare(&cfg, gap_tol, out)
        }
        Command::GaussianGen {
            spec,
            a,
            b,
            c,
            points,
            half_width,
            output,
        } => cmd_gaussian_gen(spec, (a, b, c), points, half_width, output, out),
        Command::Report { common, scheme } => {
            let cfg = RunConfig::new("report", &common, scheme, true, DEFAULT_TOL)?;
            cmd_report(&cfg, out)
        }
    }
}
