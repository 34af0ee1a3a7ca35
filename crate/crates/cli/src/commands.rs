use serde::Serialize;
use serde_json::json;

use lowerset::bounds::{verify_sandwich, BoundsReport};
use lowerset::discretization::{
    lower_set_family, sample_points, search_minimal_m, tensor_grid, universal_over, DiscretizationReport,
    PointSetTorus, Probe, SearchConfig,
};
use lowerset::{count_lower_sets, enumerate_lower_sets, Error};

use crate::args::{CountArgs, DiscretizeArgs, EnumerateArgs, Format};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;
pub const EXIT_UNMET: u8 = 3;

/// What a subcommand produced: the main output, an optional point-set CSV,
/// and the exit status.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub points_csv: Option<String>,
    pub exit: u8,
}

impl Outcome {
    fn new(output: String, exit: u8) -> Self {
        Outcome { output, points_csv: None, exit }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub message: String,
    pub exit: u8,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { message: message.into(), exit: EXIT_USAGE }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::SearchExhausted(_) => EXIT_UNMET,
            _ => EXIT_USAGE,
        };
        Failure { message: e.to_string(), exit }
    }
}

fn render_json<T: Serialize>(rows: &[T], format: Format) -> String {
    match format {
        Format::Jsonl => {
            let mut out = String::new();
            for r in rows {
                out.push_str(&serde_json::to_string(r).expect("serializable"));
                out.push('\n');
            }
            out
        }
        _ => serde_json::to_string_pretty(rows).expect("serializable") + "\n",
    }
}

fn render_one<T: Serialize>(value: &T, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(value).expect("serializable") + "\n"),
        Format::Jsonl => Ok(serde_json::to_string(value).expect("serializable") + "\n"),
        Format::Csv => Err(Failure::usage("discretize reports are JSON only (use --format json or jsonl)")),
    }
}

#[derive(Serialize)]
struct CountRow {
    d: usize,
    n: usize,
    p_d_n: lowerset::BigCount,
}

pub fn run_count(args: &CountArgs, budget: u64) -> Result<Outcome, Failure> {
    let mut rows = Vec::new();
    for d in args.d.iter() {
        for n in args.n.iter() {
            let p = count_lower_sets(d, n, args.method.into(), budget)?;
            rows.push(CountRow { d, n, p_d_n: p });
        }
    }
    let output = match args.format {
        Format::Csv => {
            let mut s = String::from("d,n,p_d_n\n");
            for r in &rows {
                s.push_str(&format!("{},{},{}\n", r.d, r.n, r.p_d_n));
            }
            s
        }
        f => render_json(&rows, f),
    };
    Ok(Outcome::new(output, EXIT_OK))
}

pub fn run_enumerate(args: &EnumerateArgs) -> Result<Outcome, Failure> {
    let mut out = String::new();
    for q in enumerate_lower_sets(args.d, args.n)? {
        out.push_str(&q.to_json());
        out.push('\n');
    }
    Ok(Outcome::new(out, EXIT_OK))
}

pub fn run_bounds(args: &CountArgs, budget: u64) -> Result<Outcome, Failure> {
    let mut reports: Vec<BoundsReport> = Vec::new();
    for d in args.d.iter() {
        for n in args.n.iter() {
            let exact = count_lower_sets(d, n, args.method.into(), budget)?;
            reports.push(verify_sandwich(d as u64, n as u64, &exact));
        }
    }
    let exit = if reports.iter().all(BoundsReport::all_pass) { EXIT_OK } else { EXIT_UNMET };
    let output = match args.format {
        Format::Csv => {
            let mut s = String::from(BoundsReport::CSV_HEADER);
            s.push('\n');
            for r in &reports {
                s.push_str(&r.csv_row());
                s.push('\n');
            }
            s
        }
        f => render_json(&reports, f),
    };
    Ok(Outcome::new(output, exit))
}

#[derive(Serialize)]
struct SearchSummary<'a> {
    m_found: usize,
    trial: usize,
    trials: usize,
    seed: u64,
    c1_target: f64,
    c2_target: f64,
    m_max: usize,
    probes: &'a [Probe],
}

#[derive(Serialize)]
struct SearchReport<'a> {
    #[serde(flatten)]
    report: &'a DiscretizationReport,
    targets_met: bool,
    search: SearchSummary<'a>,
}

#[derive(Serialize)]
struct CertifyReport<'a> {
    #[serde(flatten)]
    report: &'a DiscretizationReport,
    targets_met: bool,
    c1_target: f64,
    c2_target: f64,
    points: &'static str,
}

fn integer_root(m: usize, d: usize) -> Option<usize> {
    let r = (m as f64).powf(1.0 / d as f64).round() as usize;
    (r.saturating_sub(1)..=r + 1).find(|&k| k >= 1 && k.checked_pow(d as u32) == Some(m))
}

pub fn run_discretize(args: &DiscretizeArgs, budget: u64) -> Result<Outcome, Failure> {
    if args.d == 0 || args.n == 0 {
        return Err(Failure::usage("--d and --n must be positive"));
    }
    if args.format == Format::Csv {
        return Err(Failure::usage("discretize reports are JSON only (use --format json or jsonl)"));
    }
    if args.search {
        return run_search(args, budget);
    }

    let family = lower_set_family(args.d, args.n, budget)?;
    let (xs, kind): (PointSetTorus, &'static str) = if args.grid {
        let per_axis = match args.m {
            Some(m) => integer_root(m, args.d)
                .ok_or_else(|| Failure::usage(format!("--grid needs m to be a perfect {}-th power", args.d)))?,
            None => args.n,
        };
        (tensor_grid(args.d, &vec![per_axis; args.d])?, "grid")
    } else {
        let m = args.m.ok_or_else(|| Failure::usage("discretize needs --m, --grid or --search"))?;
        if m == 0 {
            return Err(Failure::usage("--m must be positive"));
        }
        let seed = args.seed.ok_or_else(|| Failure::usage("random point sets need an explicit --seed"))?;
        (sample_points(args.d, m, seed), "random")
    };

    let report = universal_over(&family, &xs)?;
    let met = report.meets(args.c1, args.c2);
    let body = CertifyReport { report: &report, targets_met: met, c1_target: args.c1, c2_target: args.c2, points: kind };
    Ok(Outcome {
        output: render_one(&body, args.format)?,
        points_csv: Some(xs.to_csv()),
        exit: if met { EXIT_OK } else { EXIT_UNMET },
    })
}

fn run_search(args: &DiscretizeArgs, budget: u64) -> Result<Outcome, Failure> {
    let seed = args.seed.ok_or_else(|| Failure::usage("--search needs an explicit --seed"))?;
    let subspaces = lower_set_family(args.d, args.n, budget)?.len();
    let cfg = SearchConfig {
        c1_target: args.c1,
        c2_target: args.c2,
        trials_per_m: args.trials,
        seed,
        m_max: args.m_max.unwrap_or_else(|| SearchConfig::default_m_max(args.n, subspaces)),
    };
    match search_minimal_m(args.d, args.n, &cfg, budget) {
        Ok(found) => {
            let body = SearchReport {
                report: &found.report,
                targets_met: true,
                search: SearchSummary {
                    m_found: found.m_found,
                    trial: found.trial,
                    trials: cfg.trials_per_m,
                    seed,
                    c1_target: cfg.c1_target,
                    c2_target: cfg.c2_target,
                    m_max: cfg.m_max,
                    probes: &found.probes,
                },
            };
            Ok(Outcome {
                output: render_one(&body, args.format)?,
                points_csv: Some(found.witness.to_csv()),
                exit: EXIT_OK,
            })
        }
        Err(Error::SearchExhausted(failure)) => {
            let body = json!({
                "d": args.d,
                "n": args.n,
                "targets_met": false,
                "search": {
                    "seed": seed,
                    "trials": cfg.trials_per_m,
                    "c1_target": cfg.c1_target,
                    "c2_target": cfg.c2_target,
                    "failure": *failure,
                },
            });
            Ok(Outcome::new(render_one(&body, args.format)?, EXIT_UNMET))
        }
        Err(e) => Err(e.into()),
    }
}
