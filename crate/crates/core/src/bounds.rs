//! Nordhaus-Gaddum type eigenvalue inequalities, evaluated on one graph and
//! its complement.
//!
//! Every check is stored as `lhs <= rhs` with `slack = rhs - lhs`; a check
//! passes when `slack >= -tol`. Strict inequalities are checked non-strictly.

use std::fmt;

use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exec;
use crate::graph::{pair_count, Graph, GraphError};
use crate::numfmt;
use crate::spectra::{adjacency_spectrum, trace_square_identity, Spectrum, SpectrumError};

/// Absolute slack on eigenvalue comparisons.
pub const BOUND_TOL: f64 = 1e-9;
/// The constant `c` of the `(sqrt 2 - c) n` bound on `mu_1(G) + mu_1(complement G)`.
pub const MU1_SUM_GAP: f64 = 8e-7;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("index k={k} outside 2 < k < n for n={n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckId {
    TraceSquare,
    TraceSquareComplement,
    NosalLower,
    NosalUpper,
    CliqueWeighted,
    SpreadLower,
    SpreadUpper,
    MinSum,
    Mu1SumUpper,
    ImprovedLower,
    WeylStep,
    WeylStepComplement,
    F2Upper,
    FnSquare,
    FnSum,
    /// `|mu_k(G)| <= sqrt(2 e(G) / k)`
    FkAbs(usize),
    FkAbsComplement(usize),
    FkSum(usize),
    /// Same three at index `n - k`.
    FnkAbs(usize),
    FnkAbsComplement(usize),
    FnkSum(usize),
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CheckId::*;
        match self {
            TraceSquare => f.write_str("trace_square"),
            TraceSquareComplement => f.write_str("trace_square.complement"),
            NosalLower => f.write_str("nosal.lower"),
            NosalUpper => f.write_str("nosal.upper"),
            CliqueWeighted => f.write_str("clique_weighted.upper"),
            SpreadLower => f.write_str("spread.lower"),
            SpreadUpper => f.write_str("spread.upper"),
            MinSum => f.write_str("min_sum.upper"),
            Mu1SumUpper => f.write_str("f1.upper"),
            ImprovedLower => f.write_str("f1.improved_lower"),
            WeylStep => f.write_str("weyl_step"),
            WeylStepComplement => f.write_str("weyl_step.complement"),
            F2Upper => f.write_str("f2.upper"),
            FnSquare => f.write_str("fn.square_sum"),
            FnSum => f.write_str("fn.upper"),
            FkAbs(k) => write!(f, "fk.abs[k={k}]"),
            FkAbsComplement(k) => write!(f, "fk.abs_complement[k={k}]"),
            FkSum(k) => write!(f, "fk.upper[k={k}]"),
            FnkAbs(k) => write!(f, "fnk.abs[k={k}]"),
            FnkAbsComplement(k) => write!(f, "fnk.abs_complement[k={k}]"),
            FnkSum(k) => write!(f, "fnk.upper[k={k}]"),
        }
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: CheckId,
    #[serde(serialize_with = "numfmt::sig12_opt")]
    pub lhs: Option<f64>,
    #[serde(serialize_with = "numfmt::sig12_opt")]
    pub rhs: Option<f64>,
    #[serde(serialize_with = "numfmt::sig12_opt")]
    pub slack: Option<f64>,
    pub tol: f64,
    pub verdict: Verdict,
    /// Inapplicable records are either skipped or evaluated for information
    /// only; they never fail a report.
    pub applicable: bool,
    pub note: Option<&'static str>,
}

impl CheckRecord {
    fn le(id: CheckId, lhs: f64, rhs: f64, tol: f64) -> Self {
        let slack = rhs - lhs;
        CheckRecord {
            id,
            lhs: Some(lhs),
            rhs: Some(rhs),
            slack: Some(slack),
            tol,
            verdict: if slack >= -tol {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            applicable: true,
            note: None,
        }
    }

    fn skipped(id: CheckId, reason: &'static str) -> Self {
        CheckRecord {
            id,
            lhs: None,
            rhs: None,
            slack: None,
            tol: BOUND_TOL,
            verdict: Verdict::Skipped,
            applicable: false,
            note: Some(reason),
        }
    }

    fn informational(mut self, reason: &'static str) -> Self {
        self.applicable = false;
        self.note = Some(reason);
        self
    }

    /// An applicable check that failed.
    pub fn is_violation(&self) -> bool {
        self.applicable && self.verdict == Verdict::Fail
    }
}

/// A graph, its complement and both spectra.
#[derive(Debug, Clone)]
pub struct SpectralPair {
    pub graph: Graph,
    pub complement: Graph,
    pub spectrum: Spectrum,
    pub complement_spectrum: Spectrum,
}

impl SpectralPair {
    pub fn new(g: &Graph) -> Result<Self, SpectrumError> {
        let complement = g.complement();
        Ok(SpectralPair {
            spectrum: adjacency_spectrum(g)?,
            complement_spectrum: adjacency_spectrum(&complement)?,
            graph: g.clone(),
            complement,
        })
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    /// `|mu_k(G)| + |mu_k(complement G)|`, 1-based `k`.
    pub fn abs_sum(&self, k: usize) -> f64 {
        self.spectrum.values()[k - 1].abs() + self.complement_spectrum.values()[k - 1].abs()
    }

    fn mu1_sum(&self) -> f64 {
        self.spectrum.largest() + self.complement_spectrum.largest()
    }

    fn deviation(&self) -> f64 {
        self.graph
            .degree_deviation()
            .to_f64()
            .expect("rational converts to f64")
    }
}

const N_AT_LEAST_2: &str = "needs n >= 2";
const LARGE_N_ONLY: &str = "holds for n > 2k only; evaluated for information";

pub fn check_trace_square(p: &SpectralPair) -> [CheckRecord; 2] {
    let rec = |id, g: &Graph, s: &Spectrum| {
        let r = trace_square_identity(g, s);
        CheckRecord::le(id, r.residual, r.threshold, 0.0)
    };
    [
        rec(CheckId::TraceSquare, &p.graph, &p.spectrum),
        rec(
            CheckId::TraceSquareComplement,
            &p.complement,
            &p.complement_spectrum,
        ),
    ]
}

/// `n - 1 <= mu_1(G) + mu_1(complement G) < sqrt(2) n`
pub fn check_nosal(p: &SpectralPair) -> [CheckRecord; 2] {
    let n = p.order() as f64;
    let sum = p.mu1_sum();
    [
        CheckRecord::le(CheckId::NosalLower, n - 1.0, sum, BOUND_TOL),
        CheckRecord::le(CheckId::NosalUpper, sum, 2f64.sqrt() * n, BOUND_TOL),
    ]
}

/// `mu_1(G) + mu_1(complement G) <= sqrt((2 - 1/omega(G) - 1/omega(complement G)) n (n - 1))`
pub fn check_clique_weighted(p: &SpectralPair) -> CheckRecord {
    let n = p.order();
    if n < 2 {
        return CheckRecord::skipped(CheckId::CliqueWeighted, N_AT_LEAST_2);
    }
    let w = p.graph.clique_number() as f64;
    let wc = p.complement.clique_number() as f64;
    let n = n as f64;
    let rhs = ((2.0 - 1.0 / w - 1.0 / wc) * n * (n - 1.0)).sqrt();
    CheckRecord::le(CheckId::CliqueWeighted, p.mu1_sum(), rhs, BOUND_TOL)
}

/// `s^2 / (2 n^2 sqrt(2m)) <= mu_1(G) - 2m/n <= sqrt(s)`. The left term is 0
/// when `m = 0`.
pub fn check_degree_spread(p: &SpectralPair) -> [CheckRecord; 2] {
    let n = p.order() as f64;
    let m = p.graph.edge_count() as f64;
    let s = p.deviation();
    let excess = p.spectrum.largest() - 2.0 * m / n;
    let lower = if m == 0.0 {
        0.0
    } else {
        s * s / (2.0 * n * n * (2.0 * m).sqrt())
    };
    [
        CheckRecord::le(CheckId::SpreadLower, lower, excess, BOUND_TOL),
        CheckRecord::le(CheckId::SpreadUpper, excess, s.sqrt(), BOUND_TOL),
    ]
}

/// `mu_n(G) + mu_n(complement G) <= -1 - s^2 / n^3`
pub fn check_min_sum(p: &SpectralPair) -> CheckRecord {
    if p.order() < 2 {
        return CheckRecord::skipped(CheckId::MinSum, N_AT_LEAST_2);
    }
    let n = p.order() as f64;
    let s = p.deviation();
    let lhs = p.spectrum.smallest() + p.complement_spectrum.smallest();
    CheckRecord::le(CheckId::MinSum, lhs, -1.0 - s * s / (n * n * n), BOUND_TOL)
}

/// `mu_1(G) + mu_1(complement G) <= (sqrt 2 - 8e-7) n`
pub fn check_mu1_sum_upper(p: &SpectralPair) -> CheckRecord {
    let n = p.order() as f64;
    CheckRecord::le(
        CheckId::Mu1SumUpper,
        p.mu1_sum(),
        (2f64.sqrt() - MU1_SUM_GAP) * n,
        BOUND_TOL,
    )
}

/// `mu_1(G) + mu_1(complement G) >= n - 1 + sqrt(2) s^2 / n^3`
pub fn check_improved_lower(p: &SpectralPair) -> CheckRecord {
    let n = p.order() as f64;
    let s = p.deviation();
    CheckRecord::le(
        CheckId::ImprovedLower,
        n - 1.0 + 2f64.sqrt() * s * s / (n * n * n),
        p.mu1_sum(),
        BOUND_TOL,
    )
}

/// `mu_2(G) + mu_n(complement G) <= -1`, and the same with `G` and its
/// complement swapped.
pub fn check_weyl_step(p: &SpectralPair) -> [CheckRecord; 2] {
    if p.order() < 2 {
        return [
            CheckRecord::skipped(CheckId::WeylStep, N_AT_LEAST_2),
            CheckRecord::skipped(CheckId::WeylStepComplement, N_AT_LEAST_2),
        ];
    }
    let (s, c) = (&p.spectrum, &p.complement_spectrum);
    [
        CheckRecord::le(
            CheckId::WeylStep,
            s.values()[1] + c.smallest(),
            -1.0,
            BOUND_TOL,
        ),
        CheckRecord::le(
            CheckId::WeylStepComplement,
            c.values()[1] + s.smallest(),
            -1.0,
            BOUND_TOL,
        ),
    ]
}

/// `|mu_2(G)| + |mu_2(complement G)| <= n / sqrt(2)`
pub fn check_f2_upper(p: &SpectralPair) -> CheckRecord {
    if p.order() < 2 {
        return CheckRecord::skipped(CheckId::F2Upper, N_AT_LEAST_2);
    }
    let n = p.order() as f64;
    CheckRecord::le(CheckId::F2Upper, p.abs_sum(2), n / 2f64.sqrt(), BOUND_TOL)
}

/// `mu_n(G)^2 + mu_n(complement G)^2 <= 3 n^2 / 8` and
/// `|mu_n(G)| + |mu_n(complement G)| <= (sqrt 3 / 2) n`.
pub fn check_fn_square(p: &SpectralPair) -> [CheckRecord; 2] {
    if p.order() < 2 {
        return [
            CheckRecord::skipped(CheckId::FnSquare, N_AT_LEAST_2),
            CheckRecord::skipped(CheckId::FnSum, N_AT_LEAST_2),
        ];
    }
    let n = p.order() as f64;
    let (a, b) = (p.spectrum.smallest(), p.complement_spectrum.smallest());
    [
        CheckRecord::le(CheckId::FnSquare, a * a + b * b, 0.375 * n * n, BOUND_TOL),
        CheckRecord::le(
            CheckId::FnSum,
            a.abs() + b.abs(),
            3f64.sqrt() / 2.0 * n,
            BOUND_TOL,
        ),
    ]
}

/// For `2 < k < n`: `|mu_k(G)| <= sqrt(2 e(G) / k)`, the same for the
/// complement, and `|mu_k(G)| + |mu_k(complement G)| <= sqrt(2/k) n`; then all
/// three again at index `n - k`. Outside `n > 2k` the records are
/// informational.
pub fn check_fk(p: &SpectralPair, k: usize) -> Result<[CheckRecord; 6], BoundsError> {
    let n = p.order();
    if k <= 2 || k >= n {
        return Err(BoundsError::IndexOutOfRange { k, n });
    }
    let kf = k as f64;
    let m = p.graph.edge_count() as f64;
    let mc = p.complement.edge_count() as f64;
    let in_regime = n > 2 * k;
    let mut records = Vec::with_capacity(6);
    for (index, ids) in [
        (
            k,
            [
                CheckId::FkAbs(k),
                CheckId::FkAbsComplement(k),
                CheckId::FkSum(k),
            ],
        ),
        (
            n - k,
            [
                CheckId::FnkAbs(k),
                CheckId::FnkAbsComplement(k),
                CheckId::FnkSum(k),
            ],
        ),
    ] {
        let a = p.spectrum.values()[index - 1].abs();
        let b = p.complement_spectrum.values()[index - 1].abs();
        records.push(CheckRecord::le(ids[0], a, (2.0 * m / kf).sqrt(), BOUND_TOL));
        records.push(CheckRecord::le(
            ids[1],
            b,
            (2.0 * mc / kf).sqrt(),
            BOUND_TOL,
        ));
        records.push(CheckRecord::le(
            ids[2],
            a + b,
            (2.0 / kf).sqrt() * n as f64,
            BOUND_TOL,
        ));
    }
    if !in_regime {
        for r in &mut records {
            *r = r.clone().informational(LARGE_N_ONLY);
        }
    }
    Ok(records.try_into().expect("six records"))
}

/// Number of records in a report for a graph of order `n`.
pub const fn record_count(n: usize) -> usize {
    15 + 6 * n.saturating_sub(3)
}

/// All checks in their fixed order.
pub fn evaluate(p: &SpectralPair) -> Vec<CheckRecord> {
    let n = p.order();
    let mut out = Vec::with_capacity(record_count(n));
    out.extend(check_trace_square(p));
    out.extend(check_nosal(p));
    out.push(check_clique_weighted(p));
    out.extend(check_degree_spread(p));
    out.push(check_min_sum(p));
    out.push(check_mu1_sum_upper(p));
    out.push(check_improved_lower(p));
    out.extend(check_weyl_step(p));
    out.push(check_f2_upper(p));
    out.extend(check_fn_square(p));
    for k in 3..n {
        out.extend(check_fk(p, k).expect("2 < k < n"));
    }
    debug_assert_eq!(out.len(), record_count(n));
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub records: Vec<CheckRecord>,
}

impl BoundReport {
    /// No applicable check failed.
    pub fn passed(&self) -> bool {
        !self.records.iter().any(CheckRecord::is_violation)
    }

    pub fn violations(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.is_violation())
    }
}

pub fn full_report(g: &Graph) -> Result<BoundReport, BoundsError> {
    let p = SpectralPair::new(g)?;
    Ok(BoundReport {
        graph: g.to_graph6(),
        n: g.order(),
        m: g.edge_count(),
        records: evaluate(&p),
    })
}

/// Per-check counts over a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckTally {
    pub id: CheckId,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    /// Informational records whose inequality did not hold.
    pub informational_violations: u64,
    /// Smallest slack among applicable records.
    #[serde(serialize_with = "numfmt::sig12_opt")]
    pub min_slack: Option<f64>,
}

impl CheckTally {
    fn new(id: CheckId) -> Self {
        CheckTally {
            id,
            passed: 0,
            failed: 0,
            skipped: 0,
            informational_violations: 0,
            min_slack: None,
        }
    }

    fn add(&mut self, r: &CheckRecord) {
        match (r.applicable, r.verdict) {
            (_, Verdict::Skipped) => self.skipped += 1,
            (true, Verdict::Pass) => self.passed += 1,
            (true, Verdict::Fail) => self.failed += 1,
            (false, Verdict::Fail) => self.informational_violations += 1,
            (false, Verdict::Pass) => {}
        }
        if r.applicable {
            if let Some(s) = r.slack {
                self.min_slack = Some(self.min_slack.map_or(s, |m| m.min(s)));
            }
        }
    }

    fn merge(&mut self, other: &CheckTally) {
        self.passed += other.passed;
        self.failed += other.failed;
        self.skipped += other.skipped;
        self.informational_violations += other.informational_violations;
        self.min_slack = match (self.min_slack, other.min_slack) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }
}

/// Result of evaluating every check on every labelled graph of one order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub n: usize,
    pub graphs: u64,
    pub tallies: Vec<CheckTally>,
    /// Reports of failing graphs, lowest edge mask first, capped at
    /// [`MAX_KEPT_FAILURES`].
    pub failures: Vec<BoundReport>,
}

impl SweepSummary {
    pub fn passed(&self) -> bool {
        self.tallies.iter().all(|t| t.failed == 0)
    }
}

pub const MAX_KEPT_FAILURES: usize = 16;
const SWEEP_CHUNK: u64 = 1 << 12;

/// Largest order accepted by [`sweep_exhaustive`].
pub const SWEEP_MAX_ORDER: usize = 8;

/// Evaluates every check on all `2^(n(n-1)/2)` labelled graphs of order `n`.
pub fn sweep_exhaustive(n: usize, jobs: usize) -> Result<SweepSummary, BoundsError> {
    if n == 0 || n > SWEEP_MAX_ORDER {
        return Err(GraphError::OrderOutOfRange(n).into());
    }
    let total = 1u64 << pair_count(n);
    let template: Vec<CheckTally> = {
        let p = SpectralPair::new(&Graph::empty(n)?)?;
        evaluate(&p).iter().map(|r| CheckTally::new(r.id)).collect()
    };
    let chunks = exec::chunk_count(total, SWEEP_CHUNK);
    let partials = exec::map_chunks(chunks, jobs, |c| {
        let mut tallies = template.clone();
        let mut failures = Vec::new();
        for mask in exec::chunk_range(total, SWEEP_CHUNK, c) {
            let g = Graph::from_edge_mask(n, mask)?;
            let p = SpectralPair::new(&g)?;
            let records = evaluate(&p);
            for (t, r) in tallies.iter_mut().zip(&records) {
                t.add(r);
            }
            if failures.len() < MAX_KEPT_FAILURES && records.iter().any(CheckRecord::is_violation) {
                failures.push(BoundReport {
                    graph: g.to_graph6(),
                    n,
                    m: g.edge_count(),
                    records,
                });
            }
        }
        Ok::<_, BoundsError>((tallies, failures))
    });
    let mut tallies = template;
    let mut failures = Vec::new();
    for part in partials {
        let (t, f) = part?;
        for (acc, x) in tallies.iter_mut().zip(&t) {
            acc.merge(x);
        }
        failures.extend(f);
    }
    failures.truncate(MAX_KEPT_FAILURES);
    Ok(SweepSummary {
        n,
        graphs: total,
        tallies,
        failures,
    })
}
