//! Universal sampling discretization for exponential subspaces indexed by
//! lower sets.
//!
//! For a lower set `Q` the subspace is spanned by `exp(2 pi i <k, x>)`,
//! `k in Q`, on the torus with the uniform measure. A point set certifies the
//! two-sided `L_2` equivalence for that subspace with the extreme eigenvalues
//! of its sampling Gram matrix; it is universal for size `n` when the worst
//! eigenvalues over every lower set of size `n` stay within the targets.

mod basis;
mod gram;
mod hyperbolic;
mod points;

pub use basis::{basis_value, condition_e_bound, condition_e_sum};
pub use gram::{extreme_eigenvalues, gram_matrix, gram_spectrum, GramSpectrum};
pub use hyperbolic::{
    hyperbolic_cross_bound, hyperbolic_cross_size, in_hyperbolic_cross, regime_table, Regime, RegimeLabel,
};
pub use points::{sample_points, tensor_grid, PointSetTorus};

use rayon::prelude::*;
use serde::Serialize;

use crate::count::BigCount;
use crate::enumerate::{count_dfs, enumerate_lower_sets};
use crate::error::{Error, Result};
use crate::lattice::LowerSet;

pub const DEFAULT_C1: f64 = 0.5;
pub const DEFAULT_C2: f64 = 1.5;

/// Reference point counts printed next to measured ones. No constant is fitted.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscretizationBounds {
    /// `n ln(n p_d(n))`.
    pub thm5: f64,
    /// `n^2 ln d`.
    pub thm6: f64,
    /// `n^(2 - 1/d) d^(ln d)`.
    pub thm6_b: f64,
    pub hyperbolic_size: BigCount,
    /// `n (1 + ln n)^(d - 1)`.
    pub hyperbolic_bound: f64,
}

impl DiscretizationBounds {
    pub fn new(d: usize, n: usize, subspaces: usize) -> Self {
        let (df, nf) = (d as f64, n as f64);
        let ld = df.ln();
        let nn = n.max(1) as u64;
        DiscretizationBounds {
            thm5: nf * (nf * subspaces as f64).ln(),
            thm6: nf * nf * ld,
            thm6_b: nf.powf(2.0 - 1.0 / df) * (ld * ld).exp(),
            hyperbolic_size: hyperbolic_cross_size(d, nn),
            hyperbolic_bound: hyperbolic_cross_bound(d, nn),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witnesses {
    /// The lower set attaining the universal `c1`.
    pub c1: LowerSet,
    /// The lower set attaining the universal `c2`.
    pub c2: LowerSet,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscretizationReport {
    pub d: usize,
    pub n: usize,
    pub m: usize,
    pub seed: Option<u64>,
    /// Number of lower sets covered, `p_d(n)`.
    pub subspaces: usize,
    pub c1: f64,
    pub c2: f64,
    pub witness_sets: Witnesses,
    pub bounds: DiscretizationBounds,
    pub regime: RegimeLabel,
}

impl DiscretizationReport {
    pub fn meets(&self, c1_target: f64, c2_target: f64) -> bool {
        self.c1 >= c1_target && self.c2 <= c2_target
    }
}

/// All lower sets of size `n`, refusing when counting alone exceeds the node budget.
pub fn lower_set_family(d: usize, n: usize, node_budget: u64) -> Result<Vec<LowerSet>> {
    if n == 0 {
        return Err(Error::InvalidArgument("subspace dimension n must be at least 1".into()));
    }
    count_dfs(d, n, node_budget)?;
    Ok(enumerate_lower_sets(d, n)?.collect())
}

/// Universal constants of `xs` over a given family (all of one size). Ties
/// for the witness go to the earliest set in family order.
pub fn universal_over(family: &[LowerSet], xs: &PointSetTorus) -> Result<DiscretizationReport> {
    let first = family.first().ok_or_else(|| Error::InvalidArgument("empty family".into()))?;
    let (d, n) = (first.dim(), first.len());
    let spectra: Vec<GramSpectrum> = family.par_iter().map(|q| gram_spectrum(q, xs)).collect::<Result<_>>()?;

    let mut lo = &spectra[0];
    let mut hi = &spectra[0];
    for s in &spectra[1..] {
        if s.lambda_min < lo.lambda_min {
            lo = s;
        }
        if s.lambda_max > hi.lambda_max {
            hi = s;
        }
    }
    Ok(DiscretizationReport {
        d,
        n,
        m: xs.len(),
        seed: xs.seed(),
        subspaces: family.len(),
        c1: lo.lambda_min,
        c2: hi.lambda_max,
        witness_sets: Witnesses { c1: lo.set.clone(), c2: hi.set.clone() },
        bounds: DiscretizationBounds::new(d, n, family.len()),
        regime: regime_table(d, n as u64).label,
    })
}

/// Universal constants of `xs` for every lower set in `L_d(n)`.
pub fn universal_constants(d: usize, n: usize, xs: &PointSetTorus, node_budget: u64) -> Result<DiscretizationReport> {
    if xs.dim() != d {
        return Err(Error::InconsistentDimension { expected: d, found: xs.dim() });
    }
    universal_over(&lower_set_family(d, n, node_budget)?, xs)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchConfig {
    pub c1_target: f64,
    pub c2_target: f64,
    pub trials_per_m: usize,
    pub seed: u64,
    pub m_max: usize,
}

impl SearchConfig {
    /// `ceil(32 n ln(n p_d(n)))`, a generous multiple of the `n ln(n |A|)` scale.
    pub fn default_m_max(n: usize, subspaces: usize) -> usize {
        (32.0 * n as f64 * (n as f64 * subspaces as f64).ln()).ceil().max(n as f64) as usize
    }

    fn validate(&self) -> Result<()> {
        if !(0.0 < self.c1_target && self.c1_target < 1.0 && 1.0 < self.c2_target) {
            return Err(Error::InvalidArgument("targets must satisfy 0 < c1 < 1 < c2".into()));
        }
        if self.trials_per_m == 0 {
            return Err(Error::InvalidArgument("need at least one trial per m".into()));
        }
        if self.m_max == 0 {
            return Err(Error::InvalidArgument("m_max must be positive".into()));
        }
        Ok(())
    }
}

/// One probed `m` in the search.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Probe {
    pub m: usize,
    pub qualified: bool,
    /// Best trial at this `m`: largest `c1`, then smallest `c2`.
    pub best_c1: f64,
    pub best_c2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchOutcome {
    pub m_found: usize,
    pub trial: usize,
    #[serde(skip)]
    pub witness: PointSetTorus,
    pub report: DiscretizationReport,
    pub probes: Vec<Probe>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchFailure {
    pub m_max: usize,
    pub best_m: usize,
    pub best_c1: f64,
    pub best_c2: f64,
    pub probes: Vec<Probe>,
}

/// Seed for trial `t`: root seed plus trial index.
pub fn trial_seed(root: u64, trial: usize) -> u64 {
    root.wrapping_add(trial as u64)
}

struct Evaluation {
    probe: Probe,
    hit: Option<(usize, PointSetTorus, DiscretizationReport)>,
}

fn evaluate(family: &[LowerSet], d: usize, m: usize, cfg: &SearchConfig) -> Result<Evaluation> {
    let reports: Vec<(PointSetTorus, DiscretizationReport)> = (0..cfg.trials_per_m)
        .into_par_iter()
        .map(|t| {
            let xs = sample_points(d, m, trial_seed(cfg.seed, t));
            let r = universal_over(family, &xs)?;
            Ok((xs, r))
        })
        .collect::<Result<_>>()?;

    let best = reports
        .iter()
        .map(|(_, r)| r)
        .fold(None::<&DiscretizationReport>, |acc, r| match acc {
            Some(b) if (b.c1, -b.c2) >= (r.c1, -r.c2) => Some(b),
            _ => Some(r),
        })
        .expect("at least one trial");
    let probe = Probe { m, qualified: false, best_c1: best.c1, best_c2: best.c2 };
    let hit = reports
        .into_iter()
        .enumerate()
        .find(|(_, (_, r))| r.meets(cfg.c1_target, cfg.c2_target))
        .map(|(t, (xs, r))| (t, xs, r));
    Ok(Evaluation { probe: Probe { qualified: hit.is_some(), ..probe }, hit })
}

/// Smallest `m` (up to doubling-then-bisection) for which some of
/// `trials_per_m` seeded random point sets is universal for `L_d(n)` with
/// `c1 >= c1_target` and `c2 <= c2_target`.
///
/// Sizes below `n` are never probed: the Gram matrix then has rank `< n`.
pub fn search_minimal_m(d: usize, n: usize, cfg: &SearchConfig, node_budget: u64) -> Result<SearchOutcome> {
    cfg.validate()?;
    let family = lower_set_family(d, n, node_budget)?;
    let mut probes = Vec::new();
    let mut best: Option<Probe> = None;
    let mut record = |probes: &mut Vec<Probe>, p: &Probe| {
        if best.as_ref().is_none_or(|b| (p.best_c1, -p.best_c2) > (b.best_c1, -b.best_c2)) {
            best = Some(p.clone());
        }
        probes.push(p.clone());
    };

    let mut lo = n - 1;
    let mut m = n.min(cfg.m_max);
    let mut hit;
    loop {
        let e = evaluate(&family, d, m, cfg)?;
        record(&mut probes, &e.probe);
        if let Some(h) = e.hit {
            hit = (m, h);
            break;
        }
        if m >= cfg.m_max {
            let b = best.expect("probed at least once");
            return Err(Error::SearchExhausted(Box::new(SearchFailure {
                m_max: cfg.m_max,
                best_m: b.m,
                best_c1: b.best_c1,
                best_c2: b.best_c2,
                probes,
            })));
        }
        lo = m;
        m = (m * 2).min(cfg.m_max);
    }

    while hit.0 - lo > 1 {
        let mid = lo + (hit.0 - lo) / 2;
        let e = evaluate(&family, d, mid, cfg)?;
        record(&mut probes, &e.probe);
        match e.hit {
            Some(h) => hit = (mid, h),
            None => lo = mid,
        }
    }

    let (m_found, (trial, witness, report)) = hit;
    Ok(SearchOutcome { m_found, trial, witness, report, probes })
}
