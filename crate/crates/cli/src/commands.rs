use std::fmt;

use rayon::prelude::*;
use trigfrac_core::prelude::*;
use trigfrac_core::problems::ProblemSource;
use trigfrac_core::Error;

use crate::output::{self, ConvergeBlock, ConvergeRow, Profile, SolveOutput};
use crate::{ConvergeArgs, ProblemSelector, SolveArgs, StabilityArgs};

/// Order used for built-in problems when `--gamma` is absent.
const DEFAULT_GAMMA: f64 = 1.5;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numerical(String),
    /// Number of bound violations with `γ < 2`.
    Unstable(usize),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Numerical(_) => 2,
            Failure::Unstable(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) | Failure::Numerical(msg) => f.write_str(msg),
            Failure::Unstable(n) => write!(f, "{n} stability bound violation(s) with gamma < 2"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SingularPivot { .. }
            | Error::DegenerateSymbol { .. }
            | Error::LengthMismatch { .. }
            | Error::Precondition(_) => Failure::Numerical(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("i/o: {e}"))
    }
}

fn load(selector: &ProblemSelector) -> Result<(ProblemSource, f64), Failure> {
    match (&selector.problem, &selector.config) {
        (Some(id), None) => {
            if !(1..=3).contains(id) {
                return Err(Error::UnknownExample(*id).into());
            }
            Ok((ProblemSource::builtin(*id), DEFAULT_GAMMA))
        }
        (None, Some(path)) => {
            let cfg = ProblemConfig::from_file(path)?;
            Ok((cfg.source()?, cfg.gamma))
        }
        _ => Err(Failure::Usage("give exactly one of --problem or --config".into())),
    }
}

fn set_horizon(source: &mut ProblemSource, horizon: Option<f64>) -> Result<(), Failure> {
    if let Some(t) = horizon {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Failure::Usage(format!("--T must be positive, got {t}")));
        }
        source.set_horizon(t);
    }
    Ok(())
}

fn run(problem: &ProblemSpec, n: usize, m: usize) -> Result<SolutionHistory, Failure> {
    let sol = solve(problem, n, m)?;
    if sol.levels().iter().flatten().any(|v| !v.is_finite()) {
        return Err(Failure::Numerical(format!(
            "{} produced non-finite values (N = {n}, M = {m})",
            problem.name
        )));
    }
    Ok(sol)
}

pub fn solve_run(args: &SolveArgs) -> Result<SolveOutput, Failure> {
    let (mut source, default_gamma) = load(&args.selector)?;
    set_horizon(&mut source, args.horizon)?;
    let gamma = FractionalOrder::new(args.gamma.unwrap_or(default_gamma))?;
    let problem = source.build(gamma)?;
    let sol = run(&problem, args.n, args.m)?;

    let times = match &args.times {
        Some(list) if list.0.is_empty() => {
            return Err(Failure::Usage("--times needs at least one value".into()))
        }
        Some(list) => list.0.clone(),
        None => vec![problem.horizon],
    };
    let knots = sol.grid().knots();
    let mut profiles = Vec::with_capacity(times.len());
    let mut errors = Vec::new();
    for t in times {
        let level = sol.nearest_level(t).ok_or_else(|| {
            Failure::Usage(format!("report time {t} lies outside [0, {}]", problem.horizon))
        })?;
        let at = sol.time(level);
        if (at - t).abs() > 1e-9 * (1.0 + t.abs()) {
            eprintln!("note: report time {t} is not a time level, using t = {at}");
        }
        let exact = problem
            .exact
            .as_ref()
            .map(|u| knots.iter().map(|&x| u(x, at)).collect::<Vec<_>>());
        if exact.is_some() {
            errors.push(sol.error_report(level, &problem)?);
        }
        profiles.push(Profile { t: at, x: knots.clone(), numeric: sol.level(level).to_vec(), exact });
    }
    Ok(SolveOutput {
        problem: problem.name.clone(),
        gamma: gamma.value(),
        alpha: problem.alpha,
        n: args.n,
        m: args.m,
        profiles,
        errors,
    })
}

pub fn cmd_solve(args: &SolveArgs) -> Result<(), Failure> {
    let out = solve_run(args)?;
    output::write_solve(&out, args.output.format, args.output.out.as_deref())?;
    Ok(())
}

pub fn converge_run(args: &ConvergeArgs) -> Result<Vec<ConvergeBlock>, Failure> {
    let (mut source, default_gamma) = load(&args.selector)?;
    set_horizon(&mut source, args.horizon)?;
    if args.n.0.len() != args.m.0.len() {
        return Err(Failure::Usage(format!(
            "--N has {} entries but --M has {}",
            args.n.0.len(),
            args.m.0.len()
        )));
    }
    let resolutions: Vec<(usize, usize)> = args.n.0.iter().copied().zip(args.m.0.iter().copied()).collect();
    if resolutions.len() < 2 {
        return Err(Failure::Usage("convergence needs at least two (N, M) resolutions".into()));
    }
    let gammas = match &args.gamma {
        Some(list) if list.0.is_empty() => return Err(Failure::Usage("--gamma list is empty".into())),
        Some(list) => list.0.clone(),
        None => vec![default_gamma],
    };
    let problems = gammas
        .iter()
        .map(|&g| Ok(source.build(FractionalOrder::new(g)?)?))
        .collect::<Result<Vec<_>, Failure>>()?;
    if problems.iter().any(|p| p.exact.is_none()) {
        return Err(Failure::Usage("convergence needs a problem with a known exact solution".into()));
    }

    let jobs: Vec<(usize, usize)> =
        (0..problems.len()).flat_map(|g| (0..resolutions.len()).map(move |r| (g, r))).collect();
    // collect keeps job order, whatever order the solves finish in
    let reports = jobs
        .par_iter()
        .map(|&(g, r)| {
            let (n, m) = resolutions[r];
            let problem = &problems[g];
            let sol = run(problem, n, m)?;
            Ok(sol.error_report(sol.steps(), problem)?)
        })
        .collect::<Result<Vec<ErrorReport>, Failure>>()?;

    let blocks = gammas
        .iter()
        .zip(reports.chunks(resolutions.len()))
        .map(|(&gamma, block)| {
            let rows = block
                .iter()
                .enumerate()
                .map(|(k, e)| {
                    let prev = k.checked_sub(1).map(|p| &block[p]);
                    ConvergeRow {
                        n: e.n,
                        m: e.m,
                        l2: e.l2,
                        linf: e.linf,
                        order_l2: prev.map(|p| (p.l2 / e.l2).log2()),
                        order_linf: prev.map(|p| (p.linf / e.linf).log2()),
                    }
                })
                .collect();
            ConvergeBlock { gamma, rows }
        })
        .collect();
    Ok(blocks)
}

pub fn cmd_converge(args: &ConvergeArgs) -> Result<(), Failure> {
    let blocks = converge_run(args)?;
    output::write_converge(&blocks, args.output.format, args.output.out.as_deref())?;
    Ok(())
}

pub fn cmd_stability(args: &StabilityArgs) -> Result<(), Failure> {
    let mut ranges = ScanRanges { start_rule: args.start_rule, ..ScanRanges::default() };
    let pick = |list: &Option<crate::FloatList>, into: &mut Vec<f64>| {
        if let Some(l) = list {
            *into = l.0.clone();
        }
    };
    pick(&args.gammas, &mut ranges.gammas);
    pick(&args.hs, &mut ranges.hs);
    pick(&args.dts, &mut ranges.dts);
    pick(&args.alphas, &mut ranges.alphas);
    pick(&args.beta_h, &mut ranges.beta_h);
    if let Some(n) = args.n_max {
        ranges.n_max = n;
    }

    let report = empirical_stability_scan(&ranges)?;
    output::write_stability(&report, args.output.format, args.output.out.as_deref())?;

    let corner = report.violations().filter(|p| p.is_wave_corner()).count();
    if corner > 0 {
        eprintln!("note: {corner} violation(s) at the gamma = 2 wave corner (nu = 1 modes grow linearly)");
    }
    match report.fractional_violations().count() {
        0 => Ok(()),
        n => Err(Failure::Unstable(n)),
    }
}

pub fn cmd_list_problems() -> Result<(), Failure> {
    let descriptions = [
        "u = (t^2 - t) sin(pi x), zero initial displacement, u_t(x, 0) = -sin(pi x)",
        "u = t^2 x (1 - x), homogeneous data, reaction term u",
        "u = t^2 sinh(x), boundary data u(1, t) = t^2 sinh(1), reaction term u",
    ];
    println!("id,name,alpha,domain,T,exact_solution");
    for (id, text) in (1..=3).zip(descriptions) {
        let p = builtin_example(id, FractionalOrder::new(DEFAULT_GAMMA)?)?;
        println!(
            "{id},{},{},[{};{}],{},\"{text}\"",
            p.name, p.alpha, p.domain.0, p.domain.1, p.horizon
        );
    }
    Ok(())
}
