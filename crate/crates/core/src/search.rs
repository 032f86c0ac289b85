//! Exact `f_k(n) = max |mu_k(G)| + |mu_k(complement G)|` over all labelled
//! graphs of small order, and randomized probing at larger orders.
//!
//! The objective is symmetric under complementation, so the exact scan only
//! visits edge masks whose highest pair bit is clear; the complement of each
//! visited graph covers the other half.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{SpectralPair, MU1_SUM_GAP};
use crate::exec;
use crate::families::{complete_split, construction_lower_bound_f1, four_block, turan};
use crate::graph::{pair_count, Graph, GraphError, MAX_ORDER};
use crate::numfmt;
use crate::spectra::SpectrumError;

/// Largest order scanned without the long-running override.
pub const EXACT_MAX_ORDER: usize = 7;
/// Largest order scanned with the override (`2^28` labelled graphs).
pub const FORCED_MAX_ORDER: usize = 8;
/// Values within this distance of the maximum are kept as witnesses.
pub const TIE_TOL: f64 = 1e-9;

const SCAN_CHUNK: u64 = 1 << 12;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("exact search supports 2 <= n <= {max}, got n={n}{hint}")]
    OrderUnsupported {
        n: usize,
        max: usize,
        hint: &'static str,
    },
    #[error("index k={k} is outside 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("probe order {0} is outside 1..=64")]
    ProbeOrder(usize),
    #[error("probe needs at least one trial")]
    NoTrials,
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchOptions {
    /// Worker threads; `0` uses every core, `1` runs sequentially.
    pub jobs: usize,
    /// Permit `n = 8`.
    pub allow_long: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub k: usize,
    #[serde(serialize_with = "numfmt::sig12")]
    pub value: f64,
    /// graph6 witnesses, one per complement pair and spectrum class.
    pub witnesses: Vec<String>,
    /// Labelled graphs covered by the scan.
    pub scanned: u64,
    /// Wall time in seconds.
    #[serde(serialize_with = "numfmt::sig12")]
    pub seconds: f64,
}

/// Running maximum plus every mask within [`TIE_TOL`] of it.
#[derive(Debug, Clone)]
struct Best {
    value: f64,
    hits: Vec<(u64, f64)>,
}

impl Best {
    fn new() -> Self {
        Best {
            value: f64::NEG_INFINITY,
            hits: Vec::new(),
        }
    }

    fn offer(&mut self, mask: u64, value: f64) {
        if value >= self.value - TIE_TOL {
            if value > self.value {
                self.value = value;
                let floor = value - TIE_TOL;
                self.hits.retain(|&(_, v)| v >= floor);
            }
            self.hits.push((mask, value));
        }
    }

    /// Associative and commutative up to the final sort in [`Best::finish`].
    fn merge(&mut self, other: Best) {
        self.value = self.value.max(other.value);
        self.hits.extend(other.hits);
    }

    fn finish(mut self) -> (f64, Vec<u64>) {
        let floor = self.value - TIE_TOL;
        self.hits.retain(|&(_, v)| v >= floor);
        let mut masks: Vec<u64> = self.hits.into_iter().map(|(m, _)| m).collect();
        masks.sort_unstable();
        (self.value, masks)
    }
}

fn check_order(n: usize, allow_long: bool) -> Result<(), SearchError> {
    let max = if allow_long {
        FORCED_MAX_ORDER
    } else {
        EXACT_MAX_ORDER
    };
    if n < 2 || n > max {
        let hint = if n == FORCED_MAX_ORDER && !allow_long {
            " (n = 8 needs the long-running override)"
        } else {
            ""
        };
        return Err(SearchError::OrderUnsupported { n, max, hint });
    }
    Ok(())
}

/// Per-index maxima and witness masks (sorted, not yet deduplicated).
fn scan(n: usize, ks: &[usize], jobs: usize) -> Result<Vec<(f64, Vec<u64>)>, SearchError> {
    let half = 1u64 << (pair_count(n) - 1);
    let chunks = exec::chunk_count(half, SCAN_CHUNK);
    let partials = exec::map_chunks(chunks, jobs, |c| {
        let mut best = vec![Best::new(); ks.len()];
        for mask in exec::chunk_range(half, SCAN_CHUNK, c) {
            let p = SpectralPair::new(&Graph::from_edge_mask(n, mask)?)?;
            for (b, &k) in best.iter_mut().zip(ks) {
                b.offer(mask, p.abs_sum(k));
            }
        }
        Ok::<_, SearchError>(best)
    });
    let mut total = vec![Best::new(); ks.len()];
    for part in partials {
        for (acc, b) in total.iter_mut().zip(part?) {
            acc.merge(b);
        }
    }
    Ok(total.into_iter().map(Best::finish).collect())
}

/// Keeps the first witness of every class of graphs whose spectrum pair
/// (graph, complement), taken unordered, agrees within [`TIE_TOL`].
fn dedup_witnesses(n: usize, masks: &[u64]) -> Result<Vec<String>, SearchError> {
    let same = |x: &[f64], y: &[f64]| x.iter().zip(y).all(|(u, v)| (u - v).abs() <= TIE_TOL);
    let mut kept: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
    let mut out = Vec::new();
    for &mask in masks {
        let g = Graph::from_edge_mask(n, mask)?;
        let p = SpectralPair::new(&g)?;
        let a = p.spectrum.values().to_vec();
        let b = p.complement_spectrum.values().to_vec();
        let key = if lex_le(&a, &b) { (a, b) } else { (b, a) };
        if !kept.iter().any(|(x, y)| same(x, &key.0) && same(y, &key.1)) {
            kept.push(key);
            // report the denser member of the complement pair
            let rep = if p.complement.edge_count() > g.edge_count() {
                &p.complement
            } else {
                &g
            };
            out.push(rep.to_graph6());
        }
    }
    Ok(out)
}

fn lex_le(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > TIE_TOL {
            return x < y;
        }
    }
    true
}

/// Exact `f_k(n)` by scanning every labelled graph of order `n`.
pub fn f_k_exact(n: usize, k: usize, opts: SearchOptions) -> Result<SearchResult, SearchError> {
    Ok(f_exact_many(n, &[k], opts)?.remove(0))
}

/// Exact values for several indices from one scan.
pub fn f_exact_many(
    n: usize,
    ks: &[usize],
    opts: SearchOptions,
) -> Result<Vec<SearchResult>, SearchError> {
    check_order(n, opts.allow_long)?;
    if let Some(&k) = ks.iter().find(|&&k| k == 0 || k > n) {
        return Err(SearchError::IndexOutOfRange { k, n });
    }
    let start = Instant::now();
    let scanned = scan(n, ks, opts.jobs)?;
    let seconds = start.elapsed().as_secs_f64();
    ks.iter()
        .zip(scanned)
        .map(|(&k, (value, masks))| {
            Ok(SearchResult {
                n,
                k,
                value,
                witnesses: dedup_witnesses(n, &masks)?,
                scanned: 1u64 << pair_count(n),
                seconds,
            })
        })
        .collect()
}

/// A named reference value next to an exact result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedBound {
    pub label: String,
    #[serde(serialize_with = "numfmt::sig12")]
    pub value: f64,
    /// Whether the bound is proven at this order (upper bounds only; a
    /// construction value is always a valid lower bound).
    pub proven: bool,
}

impl NamedBound {
    fn new(label: impl Into<String>, value: f64, proven: bool) -> Self {
        NamedBound {
            label: label.into(),
            value,
            proven,
        }
    }
}

/// Best known construction value for index `k` at order `n`: the complete
/// split graphs for `k = 1`, the four-block graph for `k = 2` and `k = n`,
/// and the Turán graph `T_k(n)` otherwise.
pub fn construction_value(n: usize, k: usize) -> Result<Option<NamedBound>, SearchError> {
    if k == 0 || k > n {
        return Err(SearchError::IndexOutOfRange { k, n });
    }
    let eval = |g: Graph| -> Result<f64, SearchError> { Ok(SpectralPair::new(&g)?.abs_sum(k)) };
    let bound = if k == 1 {
        if n < 2 {
            return Ok(None);
        }
        let b = construction_lower_bound_f1(n).expect("n >= 2");
        NamedBound::new(format!("complete_split(r={})", b.best_r), b.value, true)
    } else if (k == 2 || k == n) && n >= 4 {
        NamedBound::new("four_block", eval(four_block(n).expect("n >= 4"))?, true)
    } else if k > 2 && k < n {
        NamedBound::new(
            format!("turan(k={k})"),
            eval(turan(n, k).expect("k <= n"))?,
            true,
        )
    } else {
        return Ok(None);
    };
    Ok(Some(bound))
}

/// The lower bound formula stated for index `k` (asymptotic; reported only).
pub fn stated_lower_bound(n: usize, k: usize) -> Option<NamedBound> {
    let nf = n as f64;
    if k == 1 {
        Some(NamedBound::new("4n/3 - 2", 4.0 * nf / 3.0 - 2.0, false))
    } else if k == 2 || k == n {
        Some(NamedBound::new(
            "n/sqrt(2) - 3",
            nf / 2f64.sqrt() - 3.0,
            false,
        ))
    } else if k > 2 && k < n {
        Some(NamedBound::new(
            "floor(n/k) - 1",
            (n / k) as f64 - 1.0,
            false,
        ))
    } else {
        None
    }
}

/// Smallest stated upper bound on `f_k(n)`; `proven` is false when the only
/// candidates need a larger order than `n`.
pub fn upper_bound(n: usize, k: usize) -> Option<NamedBound> {
    let nf = n as f64;
    let mut candidates = Vec::new();
    if k == 1 {
        candidates.push(NamedBound::new(
            "(sqrt(2) - 8e-7) n",
            (2f64.sqrt() - MU1_SUM_GAP) * nf,
            true,
        ));
    }
    if k == 2 && n >= 2 {
        candidates.push(NamedBound::new("n/sqrt(2)", nf / 2f64.sqrt(), true));
    }
    if k == n && n >= 2 {
        candidates.push(NamedBound::new(
            "(sqrt(3)/2) n",
            3f64.sqrt() / 2.0 * nf,
            true,
        ));
    }
    if k > 2 && k < n {
        candidates.push(NamedBound::new(
            format!("sqrt(2/{k}) n"),
            (2.0 / k as f64).sqrt() * nf,
            n > 2 * k,
        ));
    }
    // index k = n - j for the mirrored bound at j
    if k < n && n - k > 2 {
        let j = n - k;
        candidates.push(NamedBound::new(
            format!("sqrt(2/{j}) n"),
            (2.0 / j as f64).sqrt() * nf,
            n > 2 * j,
        ));
    }
    let best_of = |proven: bool| {
        candidates
            .iter()
            .filter(|b| b.proven == proven)
            .min_by(|a, b| a.value.total_cmp(&b.value))
            .cloned()
    };
    best_of(true).or_else(|| best_of(false))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepCell {
    pub result: SearchResult,
    pub construction: Option<NamedBound>,
    pub stated_lower: Option<NamedBound>,
    pub upper: Option<NamedBound>,
    /// `value - construction`
    #[serde(serialize_with = "numfmt::sig12_opt")]
    pub lower_margin: Option<f64>,
    /// `upper - value`
    #[serde(serialize_with = "numfmt::sig12_opt")]
    pub upper_margin: Option<f64>,
}

/// Which eigenvalue index a sweep column tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KIndex {
    /// `mu_k`
    Index(usize),
    /// `mu_{n-j}`; `FromEnd(0)` is the smallest eigenvalue.
    FromEnd(usize),
}

impl KIndex {
    pub fn resolve(self, n: usize) -> Option<usize> {
        match self {
            KIndex::Index(k) if (1..=n).contains(&k) => Some(k),
            KIndex::FromEnd(j) if j < n => Some(n - j),
            _ => None,
        }
    }
}

/// Exact values with reference bounds for every order in `orders` and every
/// index in `ks` that resolves at that order. Indices that coincide at some
/// order are reported once.
pub fn sweep_table(
    orders: std::ops::RangeInclusive<usize>,
    ks: &[KIndex],
    opts: SearchOptions,
) -> Result<Vec<SweepCell>, SearchError> {
    let mut cells = Vec::new();
    for n in orders {
        let mut idx: Vec<usize> = ks.iter().filter_map(|k| k.resolve(n)).collect();
        idx.sort_unstable();
        idx.dedup();
        if idx.is_empty() {
            continue;
        }
        for result in f_exact_many(n, &idx, opts)? {
            let k = result.k;
            let construction = construction_value(n, k)?;
            let upper = upper_bound(n, k);
            cells.push(SweepCell {
                lower_margin: construction.as_ref().map(|c| result.value - c.value),
                upper_margin: upper.as_ref().map(|u| u.value - result.value),
                construction,
                stated_lower: stated_lower_bound(n, k),
                upper,
                result,
            });
        }
    }
    Ok(cells)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeResult {
    pub n: usize,
    pub k: usize,
    pub trials: u64,
    pub seed: u64,
    #[serde(serialize_with = "numfmt::sig12")]
    pub value: f64,
    pub witness: String,
    /// Which candidate produced the maximum.
    pub source: String,
}

/// Uniform random graph `G(n, 1/2)` for trial `trial` of stream `seed`.
pub fn random_graph(n: usize, seed: u64, trial: u64) -> Result<Graph, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut g = Graph::empty(n)?;
    for v in 1..n {
        for u in 0..v {
            if rng.random_bool(0.5) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

enum Candidate {
    Split(usize),
    FourBlock,
    Random(u64),
}

/// Best `|mu_k(G)| + |mu_k(complement G)|` among the planted complete split
/// graphs, the four-block graph, and `trials` seeded random graphs. This is
/// an empirical lower bound on `f_k(n)`, nothing more.
pub fn probe_random(
    n: usize,
    k: usize,
    trials: u64,
    seed: u64,
    jobs: usize,
) -> Result<ProbeResult, SearchError> {
    if n == 0 || n > MAX_ORDER {
        return Err(SearchError::ProbeOrder(n));
    }
    if k == 0 || k > n {
        return Err(SearchError::IndexOutOfRange { k, n });
    }
    if trials == 0 {
        return Err(SearchError::NoTrials);
    }
    let mut pool: Vec<Candidate> = (1..n).map(Candidate::Split).collect();
    if n >= 4 {
        pool.push(Candidate::FourBlock);
    }
    pool.extend((0..trials).map(Candidate::Random));

    let build = |c: &Candidate| -> Result<(Graph, String), SearchError> {
        Ok(match *c {
            Candidate::Split(r) => (
                complete_split(n, r).expect("1 <= r < n"),
                format!("complete_split(r={r})"),
            ),
            Candidate::FourBlock => (four_block(n).expect("n >= 4"), "four_block".to_string()),
            Candidate::Random(t) => (random_graph(n, seed, t)?, format!("random(trial={t})")),
        })
    };
    let values = exec::map_chunks(pool.len(), jobs, |i| {
        let (g, _) = build(&pool[i])?;
        Ok::<_, SearchError>(SpectralPair::new(&g)?.abs_sum(k))
    });
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in values.into_iter().enumerate() {
        let v = v?;
        // first candidate wins ties
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    let (i, value) = best.expect("pool is non-empty");
    let (g, source) = build(&pool[i])?;
    Ok(ProbeResult {
        n,
        k,
        trials,
        seed,
        value,
        witness: g.to_graph6(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq() -> SearchOptions {
        SearchOptions {
            jobs: 1,
            allow_long: false,
        }
    }

    #[test]
    fn tiny_exact_values() {
        let r = f_k_exact(2, 1, seq()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        assert_eq!(r.scanned, 2);
        assert_eq!(r.witnesses.len(), 1);

        let r = f_k_exact(3, 1, seq()).unwrap();
        assert!((r.value - (1.0 + 2f64.sqrt())).abs() < 1e-9);
        assert_eq!(r.witnesses.len(), 1);
        let w = Graph::from_graph6(&r.witnesses[0]).unwrap();
        let mut degrees = w.degrees();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![1, 1, 2]);

        let r = f_k_exact(4, 2, seq()).unwrap();
        assert!((r.value - (5f64.sqrt() - 1.0)).abs() < 1e-9);
    }

    #[test]
    fn order_and_index_errors() {
        assert!(matches!(
            f_k_exact(8, 1, seq()),
            Err(SearchError::OrderUnsupported { n: 8, max: 7, .. })
        ));
        assert!(matches!(
            f_k_exact(1, 1, seq()),
            Err(SearchError::OrderUnsupported { .. })
        ));
        assert!(matches!(
            f_k_exact(4, 5, seq()),
            Err(SearchError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            f_k_exact(4, 0, seq()),
            Err(SearchError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            probe_random(4, 1, 0, 1, 1),
            Err(SearchError::NoTrials)
        ));
        assert!(matches!(
            probe_random(65, 1, 1, 1, 1),
            Err(SearchError::ProbeOrder(65))
        ));
    }

    #[test]
    fn pruned_scan_matches_full_scan() {
        for n in 2..=5 {
            let full: Vec<f64> = (1..=n)
                .map(|k| {
                    (0..1u64 << pair_count(n))
                        .map(|m| {
                            let g = Graph::from_edge_mask(n, m).unwrap();
                            SpectralPair::new(&g).unwrap().abs_sum(k)
                        })
                        .fold(f64::NEG_INFINITY, f64::max)
                })
                .collect();
            let ks: Vec<usize> = (1..=n).collect();
            let pruned = f_exact_many(n, &ks, seq()).unwrap();
            for (a, r) in full.iter().zip(&pruned) {
                assert!((a - r.value).abs() < 1e-12, "n={n} k={}", r.k);
            }
        }
    }

    #[test]
    fn witnesses_reproduce_value() {
        for k in 1..=6 {
            let r = f_k_exact(6, k, seq()).unwrap();
            assert!(!r.witnesses.is_empty());
            for w in &r.witnesses {
                let g = Graph::from_graph6(w).unwrap();
                let v = SpectralPair::new(&g).unwrap().abs_sum(k);
                assert!((v - r.value).abs() <= 1e-8);
            }
        }
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let a = f_k_exact(6, 2, seq()).unwrap();
        let b = f_k_exact(
            6,
            2,
            SearchOptions {
                jobs: 8,
                allow_long: false,
            },
        )
        .unwrap();
        assert_eq!((a.value, &a.witnesses), (b.value, &b.witnesses));
    }

    #[test]
    fn index_resolution() {
        assert_eq!(KIndex::FromEnd(0).resolve(5), Some(5));
        assert_eq!(KIndex::FromEnd(5).resolve(5), None);
        assert_eq!(KIndex::Index(6).resolve(5), None);
        assert_eq!(KIndex::Index(2).resolve(5), Some(2));
    }

    #[test]
    fn upper_bound_selection() {
        let u = upper_bound(7, 1).unwrap();
        assert!(u.proven && (u.value - (2f64.sqrt() - 8e-7) * 7.0).abs() < 1e-12);
        let u = upper_bound(7, 7).unwrap();
        assert!((u.value - 3f64.sqrt() / 2.0 * 7.0).abs() < 1e-12);
        // k = 3 at n = 7 is in regime
        assert!(upper_bound(7, 3).unwrap().proven);
        // k = 6 at n = 7 is not
        assert!(!upper_bound(7, 6).unwrap().proven);
        // n = 2, k = 2 has both the second and the last index bound
        assert!((upper_bound(2, 2).unwrap().value - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn probe_is_reproducible_and_dominates_planted() {
        let a = probe_random(12, 1, 20, 7, 1).unwrap();
        let b = probe_random(12, 1, 20, 7, 4).unwrap();
        assert_eq!(a, b);
        assert!(a.value >= construction_lower_bound_f1(12).unwrap().value - 1e-9);
        let g = Graph::from_graph6(&a.witness).unwrap();
        assert!((SpectralPair::new(&g).unwrap().abs_sum(1) - a.value).abs() < 1e-12);
        assert_eq!(
            random_graph(9, 3, 5).unwrap(),
            random_graph(9, 3, 5).unwrap()
        );
        assert_ne!(
            random_graph(9, 3, 5).unwrap(),
            random_graph(9, 3, 6).unwrap()
        );
    }
}
