//! Probability bounds, the union-bound chain for nontrivial automorphisms,
//! prime selection for the order bound, and seeded Monte-Carlo drivers.

use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::autsolver::{automorphism_group, brute_force_aut, dichotomy_check, equals_k, Dichotomy};
use crate::cayley::{trial_rng, CayleyGraph, ConnectionSet};
use crate::colorings::exact_chromatic_number;
use crate::distinguishing::{chi_d_exceeds_q_small, chi_d_upper_certificate};
use crate::error::{Error, Result};
use crate::field::{gl_order, is_prime, Space};
use crate::geometry::{LineUniverse, ProjPoint};

/// Largest trial count for which binomial tails are summed exactly.
pub const EXACT_TAIL_LIMIT: u64 = 2048;

/// `log2` of a positive big integer, accurate to about 1e-16 relative.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        return (x.iter_u64_digits().next().unwrap_or(0) as f64).log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).iter_u64_digits().next().unwrap_or(0);
    (top as f64).log2() + shift as f64
}

/// `P(X <= k_max)` for `X ~ Binomial(trials, 1/2)`.
#[derive(Clone, Debug, Serialize)]
pub struct BinomialTail {
    pub trials: u64,
    /// Largest count included in the tail; `None` means the tail is empty.
    pub k_max: Option<u64>,
    pub log2: f64,
    pub value: f64,
    /// Numerator over `2^trials`, when computed exactly.
    pub exact_numerator: Option<String>,
}

/// Exact tail by summing binomial coefficients with big integers.
pub fn binomial_half_tail_exact(trials: u64, k_max: Option<u64>) -> BinomialTail {
    let mut sum = BigUint::from(0u32);
    if let Some(k_max) = k_max {
        let mut c = BigUint::from(1u32);
        for k in 0..=k_max.min(trials) {
            sum += &c;
            c = c * (trials - k) / (k + 1);
        }
    }
    let log2 = log2_big(&sum) - trials as f64;
    BinomialTail { trials, k_max, log2, value: log2.exp2(), exact_numerator: Some(sum.to_string()) }
}

/// Tail in log scale using the ratio recurrence for binomial coefficients.
/// Relative error grows like `k_max` machine epsilons.
pub fn binomial_half_tail_log(trials: u64, k_max: Option<u64>) -> BinomialTail {
    let Some(k_max) = k_max else {
        return BinomialTail { trials, k_max, log2: f64::NEG_INFINITY, value: 0.0, exact_numerator: None };
    };
    let k_max = k_max.min(trials);
    // ln C(trials, k) for k = k_max down to 0, summed relative to the largest term
    let mut ln_c = vec![0.0f64; k_max as usize + 1];
    for k in 0..k_max {
        ln_c[k as usize + 1] = ln_c[k as usize] + ((trials - k) as f64).ln() - ((k + 1) as f64).ln();
    }
    let top = ln_c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let s: f64 = ln_c.iter().map(|&l| (l - top).exp()).sum();
    let ln_tail = top + s.ln() - trials as f64 * std::f64::consts::LN_2;
    let log2 = ln_tail / std::f64::consts::LN_2;
    BinomialTail { trials, k_max: Some(k_max), log2, value: log2.exp2(), exact_numerator: None }
}

pub fn binomial_half_tail(trials: u64, k_max: Option<u64>) -> BinomialTail {
    if trials <= EXACT_TAIL_LIMIT {
        binomial_half_tail_exact(trials, k_max)
    } else {
        binomial_half_tail_log(trials, k_max)
    }
}

/// Largest integer `k` with `k * scale * 2 < twice_threshold`.
fn largest_below(twice_threshold: u64, scale: u64) -> Option<u64> {
    if twice_threshold == 0 {
        return None;
    }
    Some((twice_threshold - 1) / (2 * scale))
}

#[derive(Clone, Debug, Serialize)]
pub struct ChernoffReport {
    pub q: u32,
    pub n: usize,
    /// Number of candidate lines, `q^{n-1}`.
    pub universe: u64,
    /// `(q^{n-1} - q^{n-2}) / 2`.
    pub threshold: f64,
    /// `exp(-q^{n-3} / 4)`.
    pub chernoff_bound: f64,
    /// Tail when the count below the threshold is the number of chosen lines.
    pub line_tail: BinomialTail,
    /// Tail when the count is the number of elements, `(q-1)` per line.
    pub element_tail: BinomialTail,
    pub line_tail_within_bound: bool,
    pub element_tail_within_bound: bool,
    pub trials: u64,
    pub seed: u64,
    pub line_violations: u64,
    pub element_violations: u64,
    pub line_frequency: f64,
    pub element_frequency: f64,
}

/// Tail probabilities for a small connection set and their empirical frequency.
pub fn chernoff_report(q: u32, n: usize, trials: u64, seed: u64) -> Result<ChernoffReport> {
    if q == 2 || !is_prime(q as u64) || n < 3 {
        return Err(Error::InvalidParameter("need an odd prime q and n >= 3".into()));
    }
    let space = Space::new(q, n)?;
    let universe = (q as u64).pow(n as u32 - 1);
    let twice_threshold = universe - universe / q as u64;
    let line_tail = binomial_half_tail(universe, largest_below(twice_threshold, 1));
    let element_tail = binomial_half_tail(universe, largest_below(twice_threshold, q as u64 - 1));
    let chernoff_bound = (-((q as f64).powi(n as i32 - 3)) / 4.0).exp();
    let counts: Vec<u64> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            ConnectionSet::sample(&space, 0.5, &mut rng).map(|c| c.chosen_lines().len() as u64)
        })
        .collect::<Result<_>>()?;
    let line_violations = counts.iter().filter(|&&c| 2 * c < twice_threshold).count() as u64;
    let element_violations = counts.iter().filter(|&&c| 2 * c * (q as u64 - 1) < twice_threshold).count() as u64;
    let freq = |v: u64| if trials == 0 { 0.0 } else { v as f64 / trials as f64 };
    Ok(ChernoffReport {
        q,
        n,
        universe,
        threshold: twice_threshold as f64 / 2.0,
        chernoff_bound,
        line_tail_within_bound: line_tail.value <= chernoff_bound,
        element_tail_within_bound: element_tail.value <= chernoff_bound,
        line_tail,
        element_tail,
        trials,
        seed,
        line_violations,
        element_violations,
        line_frequency: freq(line_violations),
        element_frequency: freq(element_violations),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct UnionBoundReport {
    pub q: u32,
    pub n: usize,
    /// `n^2 log2 q - (q^{n-1} - q^{n-2} - 1) / 2`.
    pub lhs_log2: f64,
    /// `-q^{n-1} / 3`.
    pub rhs_log2: f64,
    /// The strict inequality, decided with exact integer arithmetic.
    pub holds: bool,
    /// Same chain with `|GL(n, q)|` in place of `q^{n^2}`.
    pub gl_lhs_log2: f64,
    pub gl_holds: bool,
    /// `q >= 5` and `n >= 5`.
    pub statement_regime: bool,
    /// `q >= 5` and `n >= 6`.
    pub proof_regime: bool,
}

/// Evaluates the union bound over nonscalar linear maps.
///
/// Multiplying the chain by 6, it holds iff `count^6 < 2^E` with
/// `E = q^{n-1} - 3 q^{n-2} - 3`, where `count` is `q^{n^2}` or `|GL(n, q)|`.
pub fn aut_union_bound(q: u32, n: usize) -> Result<UnionBoundReport> {
    if !is_prime(q as u64) || n < 2 {
        return Err(Error::InvalidParameter("need a prime q and n >= 2".into()));
    }
    let qb = BigUint::from(q);
    let top = qb.pow(n as u32 - 1);
    let mid = qb.pow(n as u32 - 2);
    let three_mid_plus_3 = &mid * 3u32 + 3u32;
    let exponent = (top > three_mid_plus_3).then(|| &top - &three_mid_plus_3);
    let within = |count: &BigUint| match &exponent {
        None => false,
        Some(e) => {
            let e: u64 = e.try_into().unwrap_or(u64::MAX);
            // x < 2^e iff x has at most e bits
            count.pow(6).bits() <= e
        }
    };
    let all = qb.pow((n * n) as u32);
    let gl = gl_order(q, n as u32);
    let top_f = log2_big(&top).exp2();
    let mid_f = log2_big(&mid).exp2();
    let half = (top_f - mid_f - 1.0) / 2.0;
    Ok(UnionBoundReport {
        q,
        n,
        lhs_log2: (n * n) as f64 * (q as f64).log2() - half,
        rhs_log2: -top_f / 3.0,
        holds: within(&all),
        gl_lhs_log2: log2_big(&gl) - half,
        gl_holds: within(&gl),
        statement_regime: q >= 5 && n >= 5,
        proof_regime: q >= 5 && n >= 6,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderBoundParams {
    pub k: u64,
    /// Smallest prime in `(k, 2k)`.
    pub q: u64,
    /// `q - 1 < 2k`, equivalently `|K| < 2k |V|`.
    pub check: bool,
}

pub fn order_bound_params(k: u64) -> Result<OrderBoundParams> {
    if k < 4 {
        return Err(Error::InvalidParameter(format!("k = {k} must be at least 4")));
    }
    let q = (k + 1..2 * k)
        .find(|&c| is_prime(c))
        .ok_or_else(|| Error::Invariant(format!("no prime strictly between {k} and {}", 2 * k)))?;
    Ok(OrderBoundParams { k, q, check: q - 1 < 2 * k })
}

/// `(|K|, 2k |V|)` for dimension `n`, both as exact integers.
pub fn order_bound_check(params: &OrderBoundParams, n: u32) -> (BigUint, BigUint) {
    let v = BigUint::from(params.q).pow(n);
    (&v * (params.q - 1), v * (2 * params.k))
}

/// Solver budgets for experiments.
#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub nodes: u64,
    pub enumeration: u64,
}

/// One Monte-Carlo trial. `runtime_ms` is absent when metadata is suppressed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub seed: u64,
    pub lines: usize,
    pub s_size: usize,
    pub chi_lower: usize,
    pub chi_upper: usize,
    pub aut_order: Option<String>,
    #[serde(rename = "equals_K")]
    pub equals_k: Option<bool>,
    #[serde(rename = "chiD_cert")]
    pub chid_cert: Option<bool>,
    pub budget_exceeded: bool,
    pub runtime_ms: Option<u64>,
}

pub fn run_trial(space: &Space, p: f64, seed: u64, trial: u64, budgets: Budgets, meta: bool) -> Result<TrialRecord> {
    let start = Instant::now();
    let conn = ConnectionSet::sample(space, p, &mut trial_rng(seed, trial))?;
    let g = CayleyGraph::new(conn);
    let chi = exact_chromatic_number(&g, budgets.nodes)?;
    let aut = automorphism_group(&g, budgets.nodes)?;
    let mut budget_exceeded = !chi.proved || !aut.complete;
    let (aut_order, equals, cert) = if aut.complete {
        let e = equals_k(&aut, space)?;
        let cert = if e {
            match chi_d_upper_certificate(&g, &aut) {
                Ok(c) => Some(c.is_some()),
                Err(Error::BudgetExceeded(_)) => {
                    budget_exceeded = true;
                    None
                }
                Err(err) => return Err(err),
            }
        } else {
            None
        };
        (Some(aut.group.order().to_string()), Some(e), cert)
    } else {
        (None, None, None)
    };
    Ok(TrialRecord {
        trial,
        seed,
        lines: g.connection().chosen_lines().len(),
        s_size: g.connection().len(),
        chi_lower: chi.lower,
        chi_upper: chi.upper,
        aut_order,
        equals_k: equals,
        chid_cert: cert,
        budget_exceeded,
        runtime_ms: meta.then(|| start.elapsed().as_millis() as u64),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MonteCarloSummary {
    pub q: u32,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub trials: u64,
    pub nonempty: u64,
    /// Among nonempty instances, the fraction with `chi_lower == chi_upper == q`.
    pub chi_equals_q_fraction: f64,
    pub solved: u64,
    pub equals_k: u64,
    pub equals_k_frequency: f64,
    /// Among `equals_K` instances, how many had a verified `q + 1` certificate.
    pub certificates: u64,
    pub budget_exceeded: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonteCarloReport {
    pub summary: MonteCarloSummary,
    pub records: Vec<TrialRecord>,
}

/// Runs `trials` independent trials on a pool of `jobs` threads. Records come
/// back in trial order and depend only on `(seed, trial)`.
pub fn monte_carlo_pipeline(
    q: u32,
    n: usize,
    p: f64,
    trials: u64,
    seed: u64,
    budgets: Budgets,
    jobs: usize,
    meta: bool,
) -> Result<MonteCarloReport> {
    let space = Space::new(q, n)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
    let records: Vec<TrialRecord> = pool.install(|| {
        (0..trials)
            .into_par_iter()
            .map(|t| run_trial(&space, p, seed, t, budgets, meta))
            .collect::<Result<_>>()
    })?;
    let nonempty = records.iter().filter(|r| r.s_size > 0).count() as u64;
    let chi_q = records
        .iter()
        .filter(|r| r.s_size > 0 && r.chi_lower == q as usize && r.chi_upper == q as usize)
        .count() as u64;
    let solved = records.iter().filter(|r| r.equals_k.is_some()).count() as u64;
    let eq = records.iter().filter(|r| r.equals_k == Some(true)).count() as u64;
    let summary = MonteCarloSummary {
        q,
        n,
        p,
        seed,
        trials,
        nonempty,
        chi_equals_q_fraction: if nonempty == 0 { 0.0 } else { chi_q as f64 / nonempty as f64 },
        solved,
        equals_k: eq,
        equals_k_frequency: if solved == 0 { 0.0 } else { eq as f64 / solved as f64 },
        certificates: records.iter().filter(|r| r.chid_cert == Some(true)).count() as u64,
        budget_exceeded: records.iter().filter(|r| r.budget_exceeded).count() as u64,
    };
    Ok(MonteCarloReport { summary, records })
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

pub const TRIAL_CSV_HEADER: &str =
    "trial,seed,lines,s_size,chi_lower,chi_upper,aut_order,equals_K,chiD_cert,budget_exceeded,runtime_ms";

pub fn records_to_csv(records: &[TrialRecord]) -> String {
    let mut out = String::from(TRIAL_CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.trial,
            r.seed,
            r.lines,
            r.s_size,
            r.chi_lower,
            r.chi_upper,
            opt(&r.aut_order),
            opt(&r.equals_k),
            opt(&r.chid_cert),
            r.budget_exceeded,
            opt(&r.runtime_ms)
        ));
    }
    out
}

/// One row of the exhaustive sweep over nonempty line subsets.
#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub lines: Vec<ProjPoint>,
    pub s_size: usize,
    pub chi: Option<usize>,
    pub aut_order: String,
    pub brute_force_order: Option<String>,
    #[serde(rename = "equals_K")]
    pub equals_k: bool,
    pub dichotomy: Option<Dichotomy>,
    pub proper_q_partitions: usize,
    /// Every proper q-partition is fixed by a non-identity automorphism.
    pub chi_d_exceeds_q: bool,
    #[serde(rename = "chiD_cert")]
    pub chid_cert: bool,
}

/// Exact analysis of every nonempty subset of the line universe. Meant for
/// `q = 3, n = 2`; refuses universes with more than 6 lines.
pub fn census(q: u32, n: usize, budgets: Budgets) -> Result<Vec<CensusRow>> {
    let space = Space::new(q, n)?;
    let universe = LineUniverse::new(&space)?;
    if universe.len() > 6 {
        return Err(Error::BudgetExceeded(format!("2^{} line subsets", universe.len())));
    }
    let mut rows = Vec::new();
    for mask in 1u32..(1 << universe.len()) {
        let lines: Vec<ProjPoint> =
            universe.lines.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, l)| l.clone()).collect();
        let g = CayleyGraph::new(ConnectionSet::from_lines(&space, &lines)?);
        let chi = exact_chromatic_number(&g, budgets.nodes)?;
        let aut = automorphism_group(&g, budgets.nodes)?;
        if !aut.complete {
            return Err(Error::BudgetExceeded("automorphism search".into()));
        }
        let brute = if space.size() <= 9 { Some(brute_force_aut(&g)?.0.order().to_string()) } else { None };
        let dichotomy = match dichotomy_check(&g, &aut, budgets.enumeration) {
            Ok(d) => Some(d.verdict),
            Err(Error::BudgetExceeded(_)) => None,
            Err(e) => return Err(e),
        };
        let exhaustive = chi_d_exceeds_q_small(&g, &aut, budgets.enumeration as usize)?;
        rows.push(CensusRow {
            s_size: g.connection().len(),
            lines,
            chi: chi.exact(),
            aut_order: aut.group.order().to_string(),
            brute_force_order: brute,
            equals_k: equals_k(&aut, &space)?,
            dichotomy,
            proper_q_partitions: exhaustive.partitions.len(),
            chi_d_exceeds_q: exhaustive.exceeds_q,
            chid_cert: chi_d_upper_certificate(&g, &aut)?.is_some(),
        });
    }
    Ok(rows)
}

pub const CENSUS_CSV_HEADER: &str =
    "lines,s_size,chi,aut_order,brute_force_order,equals_K,dichotomy,proper_q_partitions,chiD_exceeds_q,chiD_cert";

pub fn census_to_csv(rows: &[CensusRow]) -> String {
    let mut out = String::from(CENSUS_CSV_HEADER);
    out.push('\n');
    for r in rows {
        let lines: Vec<String> = r
            .lines
            .iter()
            .map(|l| l.rep().coords().iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        let dichotomy = match r.dichotomy {
            Some(Dichotomy::EqualsK) => "i",
            Some(Dichotomy::Normalizing) => "ii",
            Some(Dichotomy::Violated) => "violated",
            None => "",
        };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            lines.join(";"),
            r.s_size,
            opt(&r.chi),
            r.aut_order,
            opt(&r.brute_force_order),
            r.equals_k,
            dichotomy,
            r.proper_q_partitions,
            r.chi_d_exceeds_q,
            r.chid_cert
        ));
    }
    out
}
