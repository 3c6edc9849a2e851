//! The elimination run, the verification suite and their reports.

use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigInt;
use num_traits::Zero;
use qcurve_core::arith::{primes_between, trial_factor};
use qcurve_core::curve::RationalCurve;
use qcurve_core::frey::{
    cocycle_value, isogeny_check, rational_frey_local, verify_valuations, Solution,
};
use qcurve_core::newform::{t_value_charpoly, NewformClass};
use qcurve_core::quadfield::{
    congruent_mod, constants, PrimeIdealM, QuadInt, Splitting, SUPPORTED_Q,
};
use qcurve_core::reference::{self, ExpectedOutcome};
use qcurve_core::sieve::{
    self, hasse_a3_check, multi_frey, obstruction_check, power_of_two_search, primes_in_range,
    sieve_class, trace_set, verify_known_solutions, EliminationRecord, MultiFreyReport,
    ObstructionReport, ParityMode, Status, TraceOptions, TraceSet,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{Result, StoreError};
use crate::snapshot::{enforce_summary, JsonInt, Snapshot};
use crate::source::{self, Origin, SourceOptions};

const FIXTURE: &str = include_str!("../../../data/expected_outcomes.toml");

#[derive(Debug, Deserialize)]
struct Fixture {
    version: u32,
    case: Vec<FixtureCase>,
}

#[derive(Debug, Deserialize)]
struct FixtureCase {
    q: u32,
    outcome: String,
    survivors: Option<usize>,
    solution: Option<[i64; 5]>,
}

/// The expected outcome for `q` from the shipped fixture.
pub fn expected_outcome(q: u32) -> Result<ExpectedOutcome> {
    let f: Fixture =
        toml::from_str(FIXTURE).map_err(|e| StoreError::Config(format!("outcome fixture: {e}")))?;
    if f.version != 1 {
        return Err(StoreError::Config(format!(
            "outcome fixture version {}",
            f.version
        )));
    }
    let c = f
        .case
        .iter()
        .find(|c| c.q == q)
        .ok_or_else(|| StoreError::Config(format!("no expected outcome for q = {q}")))?;
    match c.outcome.as_str() {
        "all_eliminated" => Ok(ExpectedOutcome::AllEliminated),
        "multi_frey" => Ok(ExpectedOutcome::MultiFrey {
            survivors: c.survivors.unwrap_or(0),
        }),
        "obstructed" => {
            let sol = reference::obstructing_solution(q);
            let listed = c
                .solution
                .map(|s| (s[0] as u32, s[1], s[2], s[3] as u32, s[4] as u32));
            if sol != listed {
                return Err(StoreError::Config(format!(
                    "fixture solution for q = {q} disagrees with reference"
                )));
            }
            Ok(ExpectedOutcome::Obstructed)
        }
        o => Err(StoreError::Config(format!("unknown outcome {o:?}"))),
    }
}

fn outcome_name(o: ExpectedOutcome) -> String {
    match o {
        ExpectedOutcome::AllEliminated => "all_eliminated".into(),
        ExpectedOutcome::MultiFrey { survivors } => format!("multi_frey({survivors})"),
        ExpectedOutcome::Obstructed => "obstructed".into(),
    }
}

fn parity_name(p: ParityMode) -> &'static str {
    match p {
        ParityMode::Even => "even",
        ParityMode::Odd => "odd",
        ParityMode::Both => "both",
    }
}

fn big(n: &BigInt) -> JsonInt {
    JsonInt(n.clone())
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceSetOut {
    pub p: u64,
    pub splitting: &'static str,
    pub norm: u64,
    pub values: Vec<i64>,
    pub additive_classes: usize,
}

impl From<&TraceSet> for TraceSetOut {
    fn from(t: &TraceSet) -> Self {
        Self {
            p: t.prime.p(),
            splitting: match t.prime.kind() {
                Splitting::Split => "split",
                Splitting::Inert => "inert",
                Splitting::Ramified => "ramified",
            },
            norm: t.prime.norm(),
            values: t.values_vec(),
            additive_classes: t.additive_classes,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeValue {
    pub p: u64,
    pub b: JsonInt,
}

#[derive(Clone, Debug, Serialize)]
pub struct RecordOut {
    pub label: String,
    pub dim: usize,
    pub per_prime: Vec<PrimeValue>,
    pub b_f: JsonInt,
    pub small_factors: Vec<(u64, u32)>,
    pub cofactor: JsonInt,
    pub status: &'static str,
    pub max_factor: Option<u64>,
}

impl From<&EliminationRecord> for RecordOut {
    fn from(r: &EliminationRecord) -> Self {
        Self {
            label: r.label.clone(),
            dim: r.dim,
            per_prime: r
                .per_prime
                .iter()
                .map(|(p, b)| PrimeValue { p: *p, b: big(b) })
                .collect(),
            b_f: big(&r.b_f),
            small_factors: r.small_factors.clone(),
            cofactor: big(&r.cofactor),
            status: r.status.name(),
            max_factor: r.max_factor(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SummaryOut {
    pub total_dim: usize,
    pub class_count: usize,
    pub sizes: Vec<(usize, usize)>,
    pub reference_sizes: Vec<(usize, usize)>,
    pub matches: bool,
    pub matches_up_to_transposition: bool,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurvivorOut {
    pub label: String,
    pub t_values: Vec<i64>,
    pub exact_b: JsonInt,
    pub prime_factors: Vec<u64>,
    pub stated_divisor: u64,
    pub stated_divides_exact: bool,
    pub primes_within_stated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiFreyOut {
    pub g_traces: Vec<Vec<i64>>,
    pub kappa_independent: bool,
    pub f_label: String,
    pub f_trace: i64,
    pub allowed_chi: Vec<i64>,
    pub restricted_e_traces: Vec<i64>,
    pub survivors: Vec<SurvivorOut>,
    pub stated: String,
    pub contradiction: bool,
    pub conclusion: String,
}

impl From<&MultiFreyReport> for MultiFreyOut {
    fn from(m: &MultiFreyReport) -> Self {
        let stated = m
            .survivors
            .iter()
            .map(|s| format!("n | {}", s.stated_divisor))
            .collect::<Vec<_>>()
            .join(" or ");
        Self {
            g_traces: m.g_traces.clone(),
            kappa_independent: m.kappa_independent,
            f_label: m.f_label.clone(),
            f_trace: m.f_trace,
            allowed_chi: m.allowed_chi.clone(),
            restricted_e_traces: m.restricted_e_traces.clone(),
            survivors: m
                .survivors
                .iter()
                .map(|s| SurvivorOut {
                    label: s.label.clone(),
                    t_values: s.t_values.clone(),
                    exact_b: big(&s.exact_b),
                    prime_factors: s.prime_factors.clone(),
                    stated_divisor: s.stated_divisor,
                    stated_divides_exact: s.stated_divides_exact,
                    primes_within_stated: s.primes_within_stated,
                })
                .collect(),
            stated,
            contradiction: m.contradiction,
            conclusion: m.conclusion.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionOut {
    pub label: String,
    pub solution: (u32, i64, i64, u32, u32),
    pub primes_checked: Vec<u64>,
    pub mismatches: Vec<u64>,
    pub missing: Vec<u64>,
    pub coefficient_field_q_sqrt_minus_2: bool,
    pub matches: bool,
}

impl From<&ObstructionReport> for ObstructionOut {
    fn from(o: &ObstructionReport) -> Self {
        Self {
            label: o.label.clone(),
            solution: o.solution,
            primes_checked: o.primes_checked.clone(),
            mismatches: o.mismatches.clone(),
            missing: o.missing.clone(),
            coefficient_field_q_sqrt_minus_2: o.field_is_q_sqrt_minus_2,
            matches: o.matches(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EliminateReport {
    pub q: u32,
    pub primes: Vec<u64>,
    pub n_bound: u64,
    pub parity: &'static str,
    pub chi_restrict: Option<Vec<i64>>,
    pub source: &'static str,
    pub summary: Option<SummaryOut>,
    pub trace_sets: Vec<TraceSetOut>,
    pub records: Vec<RecordOut>,
    pub eliminated: usize,
    pub survivors: Vec<String>,
    /// Largest prime factor over all eliminated `B_f`.
    pub max_eliminated_factor: Option<u64>,
    pub observed_factor_bound: u64,
    pub multi_frey: Option<MultiFreyOut>,
    pub obstruction: Vec<ObstructionOut>,
    pub expected: String,
    pub outcome_ok: bool,
    pub conclusion: String,
    pub warnings: Vec<String>,
    pub generated_at: u64,
}

/// Trace sets for each prime and one record per class, in parallel.
pub fn sieve_space(
    classes: &[NewformClass],
    primes: &[PrimeIdealM],
    opts: &TraceOptions,
    n_bound: u64,
) -> qcurve_core::Result<(Vec<TraceSet>, Vec<EliminationRecord>)> {
    let sets = primes
        .par_iter()
        .map(|p| trace_set(p, opts))
        .collect::<qcurve_core::Result<Vec<_>>>()?;
    let mut records = classes
        .par_iter()
        .map(|f| sieve_class(f, &sets, n_bound))
        .collect::<qcurve_core::Result<Vec<_>>>()?;
    records.sort_by(|a, b| a.label.cmp(&b.label));
    Ok((sets, records))
}

/// Run the sieve on a loaded space and grade the result.
pub fn eliminate_space(
    cfg: &RunConfig,
    space: &Snapshot,
    origin: Origin,
) -> Result<EliminateReport> {
    cfg.validate()?;
    let q = cfg.q;
    if space.q != q {
        return Err(StoreError::Malformed(format!(
            "space holds q = {}, not {q}",
            space.q
        )));
    }
    let mut warnings = Vec::new();
    let summary = enforce_summary(space, cfg.summary_policy)?.map(|c| {
        if !c.ok() {
            warnings.push(c.describe());
        }
        SummaryOut {
            total_dim: c.found.total_dim,
            class_count: c.found.class_count,
            sizes: c.found.sizes.clone(),
            reference_sizes: c.printed.clone(),
            matches: c.ok(),
            matches_up_to_transposition: c.ok_up_to_transposition(),
            note: c.describe(),
        }
    });
    let primes = primes_in_range(q as u64, cfg.primes.0, cfg.primes.1)?;
    let opts = cfg.trace_options();
    let (sets, records) = sieve_space(&space.classes, &primes, &opts, cfg.n_bound)?;
    for s in &sets {
        if s.values.is_empty() {
            warnings.push(format!(
                "empty trace set at p = {}: the χ restriction is inconsistent",
                s.prime.p()
            ));
        }
    }
    let survivors: Vec<&EliminationRecord> = records
        .iter()
        .filter(|r| r.status != Status::Eliminated)
        .collect();
    let survivor_classes: Vec<&NewformClass> = survivors
        .iter()
        .filter_map(|r| space.class(&r.label))
        .collect();
    let max_eliminated_factor = records
        .iter()
        .filter_map(EliminationRecord::max_factor)
        .max();

    let expected = expected_outcome(q)?;
    let mut multi = None;
    let mut obstruction = Vec::new();
    let (outcome_ok, conclusion) = match expected {
        ExpectedOutcome::AllEliminated => {
            let ok = survivors.is_empty();
            let c = if ok {
                format!("all {} classes eliminated", records.len())
            } else {
                format!("{} classes survive", survivors.len())
            };
            (ok, c)
        }
        ExpectedOutcome::MultiFrey { survivors: want } => {
            let zero = survivors.iter().all(|r| r.status == Status::SurvivesZero);
            if survivors.len() == want && zero && want > 0 {
                let m = multi_frey(&survivor_classes, cfg.n_bound)?;
                let traces_ok = reference::MULTI_FREY_SURVIVOR_TRACES
                    .iter()
                    .all(|t| m.survivors.iter().any(|s| s.t_values.contains(t)));
                let ok = m.contradiction
                    && m.kappa_independent
                    && m.allowed_chi == [reference::MULTI_FREY_CHI]
                    && m.restricted_e_traces == [reference::MULTI_FREY_E_TRACE]
                    && traces_ok
                    && m.survivors.iter().all(|s| s.primes_within_stated);
                let out = MultiFreyOut::from(&m);
                let c = format!(
                    "{} classes eliminated; {} survive with B_f = 0; multi-Frey: {} (stated), {}",
                    records.len() - survivors.len(),
                    survivors.len(),
                    out.stated,
                    m.conclusion
                );
                multi = Some(out);
                (ok, c)
            } else {
                (
                    false,
                    format!(
                        "expected {want} classes with B_f = 0, found {} survivors",
                        survivors.len()
                    ),
                )
            }
        }
        ExpectedOutcome::Obstructed => {
            for f in &survivor_classes {
                obstruction.push(ObstructionOut::from(&obstruction_check(
                    q as u64,
                    f,
                    cfg.obstruction_p_max,
                )?));
            }
            let ok = obstruction.len() == 1
                && obstruction[0].matches
                && obstruction[0].coefficient_field_q_sqrt_minus_2;
            let c = match obstruction.first() {
                Some(o) if ok => format!(
                    "one obstructing class {} matching the curve from {:?} at {} primes, coefficient field Q(sqrt(-2))",
                    o.label,
                    o.solution,
                    o.primes_checked.len()
                ),
                _ => format!("{} survivors, expected one obstructing class", obstruction.len()),
            };
            (ok, c)
        }
    };

    Ok(EliminateReport {
        q,
        primes: primes.iter().map(|p| p.p()).collect(),
        n_bound: cfg.n_bound,
        parity: parity_name(cfg.parity),
        chi_restrict: cfg.chi_restrict.clone(),
        source: origin.name(),
        summary,
        trace_sets: sets.iter().map(TraceSetOut::from).collect(),
        eliminated: records.len() - survivors.len(),
        survivors: survivors.iter().map(|r| r.label.clone()).collect(),
        records: records.iter().map(RecordOut::from).collect(),
        max_eliminated_factor,
        observed_factor_bound: reference::OBSERVED_FACTOR_BOUND,
        multi_frey: multi,
        obstruction,
        expected: outcome_name(expected),
        outcome_ok,
        conclusion,
        warnings,
        generated_at: now(),
    })
}

fn now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

pub fn eliminate(cfg: &RunConfig, src: &SourceOptions) -> Result<EliminateReport> {
    cfg.validate()?;
    let (space, origin) = source::load(cfg.q as u64, src)?;
    eliminate_space(cfg, &space, origin)
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOut {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> CheckOut {
    CheckOut {
        name: name.into(),
        ok,
        detail: detail.into(),
    }
}

fn failed(name: impl Into<String>, e: impl std::fmt::Display) -> CheckOut {
    check(name, false, format!("error: {e}"))
}

/// `N(γ) = −2`, `γ̄ ≡ −1` and `√q ≡ −1 (mod γ²)` for every supported `q`.
pub fn gamma_constants() -> Vec<CheckOut> {
    SUPPORTED_Q
        .iter()
        .map(|&q| {
            let name = format!("gamma constants q={q}");
            let run = || -> qcurve_core::Result<(bool, String)> {
                let c = constants(q as u64)?;
                let g2 = c.gamma.pow(2);
                let minus_one = QuadInt::integer(q, -1);
                let norm = c.gamma.norm();
                let a = congruent_mod(&c.gamma_bar, &minus_one, &g2)?;
                let b = congruent_mod(&QuadInt::sqrt_q(q), &minus_one, &g2)?;
                Ok((
                    norm == BigInt::from(-2) && a && b,
                    format!("γ = {}, N(γ) = {norm}, γ̄ ≡ −1: {a}, √q ≡ −1: {b}", c.gamma),
                ))
            };
            match run() {
                Ok((ok, d)) => check(name, ok, d),
                Err(e) => failed(name, e),
            }
        })
        .collect()
}

/// Traces of `G_{χ,κ}` at 7 for `q = 41`, every `κ ∈ [0, 5]`.
pub fn g_traces_at_seven() -> CheckOut {
    let name = "traces of G at 7, q=41";
    let rows: qcurve_core::Result<Vec<Vec<i64>>> = (0..6)
        .map(|kappa| {
            (0..7)
                .map(|chi| rational_frey_local(chi, kappa, 41, 7)?.reduction_trace())
                .collect()
        })
        .collect();
    match rows {
        Ok(rows) => {
            let ok = rows
                .iter()
                .all(|r| r.as_slice() == reference::G_TRACES_AT_7);
            check(name, ok, format!("{:?} for κ = 0..5", rows[0]))
        }
        Err(e) => failed(name, e),
    }
}

/// `a_p(F_q)` by character sum against a naive point count, `p ≤ p_max`,
/// plus `a_7(F_41) = −4`.
pub fn target_curve_traces(p_max: u64) -> Vec<CheckOut> {
    let mut out = Vec::new();
    for (q, label, a) in reference::FREY_TARGETS {
        let name = format!("a_p({label}) vs point count, p ≤ {p_max}");
        let e = RationalCurve::new(a[0], a[1], a[2], a[3], a[4]);
        let mut bad = Vec::new();
        let mut n = 0;
        for p in primes_between(2, p_max) {
            match e.ap(p) {
                Ok(ap) => {
                    n += 1;
                    match e.count_points_naive(p) {
                        Ok(c) if ap == p as i64 + 1 - c as i64 => {}
                        _ => bad.push(p),
                    }
                }
                Err(qcurve_core::Error::BadReduction(_)) => {}
                Err(e) => {
                    out.push(failed(name.clone(), e));
                    continue;
                }
            }
        }
        out.push(check(
            name,
            bad.is_empty() && n > 0,
            format!("q={q}: {n} primes, mismatches {bad:?}"),
        ));
    }
    let a7 = RationalCurve::new(1, 0, 1, -2, 0).ap(7);
    out.push(check("a_7(82a1) = -4", a7 == Ok(-4), format!("{a7:?}")));
    out
}

pub fn known_solutions(x_max: u64, k_max: u32, n_max: u32) -> CheckOut {
    let r = verify_known_solutions(x_max, k_max, n_max);
    check(
        format!("listed solutions, sweep x ≤ {x_max}, k ≤ {k_max}, n ≤ {n_max}"),
        r.ok(),
        format!(
            "found {} tuples, extra {:?}, missing {:?}",
            r.found.len(),
            r.extra,
            r.missing
        ),
    )
}

/// Valuation and κ checks on every listed small-exponent solution.
pub fn valuations() -> Vec<CheckOut> {
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for &(q, x, y, k, n) in reference::POWER_OF_TWO_IDENTITIES
        .iter()
        .chain(&reference::SMALL_EXPONENT_SOLUTIONS)
    {
        if seen.contains(&(q, x, y, k, n)) {
            continue;
        }
        seen.push((q, x, y, k, n));
        let name = format!("valuations ({q}, {x}, {y}, {k}, {n})");
        let r = Solution::new(q as u64, x, y, k, n).and_then(|s| verify_valuations(&s));
        match r {
            Ok(rep) => {
                let detail = match rep.first_failure() {
                    Some(e) => e.to_string(),
                    None => format!("{} checks, r = {}", rep.checks.len(), rep.decomposition.r),
                };
                out.push(check(name, rep.all_ok(), detail));
            }
            Err(e) => out.push(failed(name, e)),
        }
    }
    out
}

/// The isogeny `Ē → E` and the cocycle `−2` at the split primes below 30
/// of good reduction, for each power-of-two identity.
pub fn isogenies() -> Vec<CheckOut> {
    let mut out = Vec::new();
    for &(q, x, y, k, n) in &reference::POWER_OF_TWO_IDENTITIES {
        let name = format!("isogeny and cocycle q={q}");
        let run = || -> qcurve_core::Result<(bool, Vec<u64>)> {
            let sol = Solution::new(q as u64, x, y, k, n)?;
            let mut ok = true;
            let mut used = Vec::new();
            for p in primes_between(3, 30) {
                if p == q as u64 {
                    continue;
                }
                let prime = PrimeIdealM::canonical(q as u64, p)?;
                match (isogeny_check(&sol, &prime), cocycle_value(&sol, &prime)) {
                    (Ok(iso), Ok(c)) => {
                        ok &= iso && c == Some(-2);
                        used.push(p);
                    }
                    (Err(qcurve_core::Error::BadReduction(_)), _)
                    | (_, Err(qcurve_core::Error::BadReduction(_))) => {}
                    (Err(e), _) | (_, Err(e)) => return Err(e),
                }
            }
            Ok((ok && !used.is_empty(), used))
        };
        match run() {
            Ok((ok, used)) => out.push(check(name, ok, format!("primes {used:?}"))),
            Err(e) => out.push(failed(name, e)),
        }
    }
    out
}

pub fn hasse_checks() -> Vec<CheckOut> {
    SUPPORTED_Q
        .iter()
        .map(|&q| match hasse_a3_check(q as u64) {
            Ok(r) => check(
                format!("0 < |4 ± a_3({})| < 11", r.label),
                r.ok,
                format!("a_3 = {}, values {:?}", r.a3, r.values),
            ),
            Err(e) => failed(format!("hasse q={q}"), e),
        })
        .collect()
}

pub fn power_of_two(s_max: u32, n_max: u32) -> CheckOut {
    let mut ok = true;
    let mut detail = Vec::new();
    for &(q, x, _, _, n) in &reference::POWER_OF_TWO_IDENTITIES {
        let hits = power_of_two_search(q as u64, s_max, n_max);
        let want = BigInt::from(x.abs());
        let hit = hits.iter().any(|(hx, s, hn)| *hx == want && s * hn == n);
        ok &= hit;
        detail.push(format!("q={q}: {} hits", hits.len()));
    }
    check("x² = 2^(ns) + q search", ok, detail.join(", "))
}

/// Residue class of a solution at `𝔭` lies in the trace set, and for each
/// class of `space` realized by the solution every `B_{f,𝔭}` is divisible by
/// the true exponent.
#[derive(Clone, Debug, Serialize)]
pub struct SoundnessOut {
    pub solution: (u32, i64, i64, u32, u32),
    pub primes: Vec<u64>,
    pub own_trace_outside: Vec<u64>,
    pub realized: Vec<String>,
    pub violations: Vec<(String, u64)>,
    pub ok: bool,
}

fn smallest_prime_factor(n: u32) -> u64 {
    let (f, _) = trial_factor(&BigInt::from(n), n as u64 + 1);
    f.first().map_or(n as u64, |x| x.0)
}

/// Whether `ℓ | Norm(T(a_𝔭(E)))` at every good `p < p_max` with data.
fn realizes(sol: &Solution, f: &NewformClass, ell: u64, p_max: u64) -> qcurve_core::Result<bool> {
    let q = sol.q as u64;
    let model = sol.qcurve();
    let mut any = false;
    for p in primes_between(3, p_max.saturating_sub(1)) {
        if p == q || p == ell {
            continue;
        }
        let t = match t_value_charpoly(f, p, q) {
            Ok(t) => t,
            Err(qcurve_core::Error::MissingCoefficients { .. })
            | Err(qcurve_core::Error::NumericOnly { .. }) => continue,
            Err(e) => return Err(e),
        };
        let local = model.reduce(&PrimeIdealM::canonical(q, p)?);
        if local.is_singular() {
            continue;
        }
        let v = t.eval(&BigInt::from(local.trace_of_frobenius()?));
        if !(v % ell).is_zero() {
            return Ok(false);
        }
        any = true;
    }
    Ok(any)
}

pub fn soundness(
    sol_t: (u32, i64, i64, u32, u32),
    space: Option<&Snapshot>,
    p_hi: u64,
    opts: &TraceOptions,
) -> qcurve_core::Result<SoundnessOut> {
    let (q, x, y, k, n) = sol_t;
    let sol = Solution::new(q as u64, x, y, k, n)?;
    let primes = primes_in_range(q as u64, 3, p_hi)?;
    let sets = primes
        .iter()
        .map(|p| trace_set(p, opts))
        .collect::<qcurve_core::Result<Vec<_>>>()?;
    let mut outside = Vec::new();
    for set in &sets {
        let prime = &set.prime;
        let chi = qcurve_core::frey::residue_of(&sol.x, prime.p());
        let mu = sol.m() % sieve::mu_count(prime, opts.mu_range);
        let own = qcurve_core::frey::qcurve_local(chi, mu, sol.parity(), prime)?;
        if own.reduction_type() != qcurve_core::curve::ReductionType::Additive
            && !set.values.contains(&own.reduction_trace()?)
        {
            outside.push(prime.p());
        }
    }
    let mut realized = Vec::new();
    let mut violations = Vec::new();
    if let Some(space) = space {
        let ell = smallest_prime_factor(n);
        let refs: Vec<&TraceSet> = sets.iter().collect();
        for f in &space.classes {
            if !realizes(&sol, f, ell, 100)? {
                continue;
            }
            realized.push(f.label.clone());
            for (p, b) in sieve::b_f(f, &refs, 1 << 20)?.per_prime {
                if !(b % n).is_zero() {
                    violations.push((f.label.clone(), p));
                }
            }
        }
    }
    let ok = outside.is_empty() && violations.is_empty();
    Ok(SoundnessOut {
        solution: sol_t,
        primes: primes.iter().map(|p| p.p()).collect(),
        own_trace_outside: outside,
        realized,
        violations,
        ok,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckOut>,
    pub all_ok: bool,
    pub generated_at: u64,
}

/// Everything that needs no newform data, plus soundness where data loads.
pub fn verify(cfg: &RunConfig, src: &SourceOptions) -> VerifyReport {
    let mut checks = gamma_constants();
    checks.push(g_traces_at_seven());
    checks.extend(target_curve_traces(31));
    checks.push(known_solutions(
        cfg.sweep_x_max,
        cfg.sweep_k_max,
        cfg.sweep_n_max,
    ));
    checks.extend(valuations());
    checks.extend(isogenies());
    checks.extend(hasse_checks());
    checks.push(power_of_two(cfg.power_two_s_max, cfg.power_two_n_max));
    for &sol in &reference::POWER_OF_TWO_IDENTITIES {
        let name = format!("sieve soundness on {sol:?}");
        let space = source::load(
            sol.0 as u64,
            &SourceOptions {
                snapshot: cfg.snapshot.clone().filter(|_| cfg.q == sol.0),
                ..src.clone()
            },
        )
        .ok()
        .map(|(s, _)| s);
        match soundness(sol, space.as_ref(), 31, &cfg.trace_options()) {
            Ok(s) => {
                let detail = format!(
                    "realized by {:?}, violations {:?}, own trace outside {:?}{}",
                    s.realized,
                    s.violations,
                    s.own_trace_outside,
                    if space.is_none() {
                        " (no newform data)"
                    } else {
                        ""
                    }
                );
                checks.push(check(name, s.ok, detail));
            }
            Err(e) => checks.push(failed(name, e)),
        }
    }
    let all_ok = checks.iter().all(|c| c.ok);
    VerifyReport {
        checks,
        all_ok,
        generated_at: now(),
    }
}

pub fn eliminate_text(r: &EliminateReport) -> String {
    let mut s = format!(
        "q = {}  primes {:?}  n bound {}  source {}\n",
        r.q, r.primes, r.n_bound, r.source
    );
    if let Some(sm) = &r.summary {
        s.push_str(&format!("space: {}\n", sm.note));
    }
    for t in &r.trace_sets {
        s.push_str(&format!(
            "  A at p = {:>2} ({}): {:?}\n",
            t.p, t.splitting, t.values
        ));
    }
    for rec in &r.records {
        s.push_str(&format!(
            "  {:<16} dim {:>3}  {:<14} B_f = {}\n",
            rec.label, rec.dim, rec.status, rec.b_f.0
        ));
    }
    if let Some(m) = &r.multi_frey {
        s.push_str(&format!(
            "multi-Frey: traces of G at 7 {:?}; a_7({}) = {}; x ≡ {:?} (mod 7); E traces {:?}\n",
            m.g_traces[0], m.f_label, m.f_trace, m.allowed_chi, m.restricted_e_traces
        ));
        for sv in &m.survivors {
            s.push_str(&format!(
                "  {} t = {:?}: exact {} (primes {:?}), stated n | {} (divides exact: {}, primes within: {})\n",
                sv.label, sv.t_values, sv.exact_b.0, sv.prime_factors, sv.stated_divisor, sv.stated_divides_exact, sv.primes_within_stated
            ));
        }
    }
    for o in &r.obstruction {
        s.push_str(&format!(
            "obstruction: {} vs {:?}: {} primes, mismatches {:?}, Q(sqrt(-2)) {}\n",
            o.label,
            o.solution,
            o.primes_checked.len(),
            o.mismatches,
            o.coefficient_field_q_sqrt_minus_2
        ));
    }
    for w in &r.warnings {
        s.push_str(&format!("warning: {w}\n"));
    }
    s.push_str(&format!(
        "{}: {} (expected {})\n",
        if r.outcome_ok { "OK" } else { "MISMATCH" },
        r.conclusion,
        r.expected
    ));
    s
}

pub fn verify_text(r: &VerifyReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        s.push_str(&format!(
            "{} {}: {}\n",
            if c.ok { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    s
}
