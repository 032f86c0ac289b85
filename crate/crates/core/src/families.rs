//! Named graph families with closed-form eigenvalues.

use std::ops::Range;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("complete_split needs 1 <= r < n, got n={n}, r={r}")]
    SplitParameter { n: usize, r: usize },
    #[error("turan needs 1 <= k <= n, got n={n}, k={k}")]
    TuranParameter { n: usize, k: usize },
    #[error("four_block needs n >= 4, got {0}")]
    FourBlockOrder(usize),
    #[error("closed form is only available for n divisible by 4, got {0}")]
    NotDivisibleByFour(usize),
    #[error("order {0} too small for this construction")]
    OrderTooSmall(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Parameters of one family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    Complete { n: usize },
    Empty { n: usize },
    CompleteSplit { n: usize, r: usize },
    Turan { n: usize, k: usize },
    FourBlock { n: usize },
}

impl FamilySpec {
    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::Complete { n }
            | FamilySpec::Empty { n }
            | FamilySpec::CompleteSplit { n, .. }
            | FamilySpec::Turan { n, .. }
            | FamilySpec::FourBlock { n } => n,
        }
    }

    pub fn build(&self) -> Result<Graph, FamilyError> {
        match *self {
            FamilySpec::Complete { n } => Ok(Graph::complete(n)?),
            FamilySpec::Empty { n } => Ok(Graph::empty(n)?),
            FamilySpec::CompleteSplit { n, r } => complete_split(n, r),
            FamilySpec::Turan { n, k } => turan(n, k),
            FamilySpec::FourBlock { n } => four_block(n),
        }
    }
}

/// Join of a clique `K_r` with `n - r` independent vertices. The clique
/// occupies vertices `0..r`.
pub fn complete_split(n: usize, r: usize) -> Result<Graph, FamilyError> {
    if r == 0 || r >= n {
        return Err(FamilyError::SplitParameter { n, r });
    }
    let mut g = Graph::empty(n)?;
    for u in 0..r {
        for v in u + 1..n {
            g.add_edge(u, v)?;
        }
    }
    Ok(g)
}

/// `mu_1(K_r + co-K_{n-r}) = (r-1)/2 + sqrt(nr - (3r^2 + 2r - 1)/4)`.
pub fn split_mu1_closed_form(n: usize, r: usize) -> f64 {
    let (n, r) = (n as f64, r as f64);
    (r - 1.0) / 2.0 + (n * r - (3.0 * r * r + 2.0 * r - 1.0) / 4.0).sqrt()
}

/// `mu_1(G) + mu_1(complement G)` for `G = K_r + co-K_{n-r}`. The complement is
/// `K_{n-r}` plus `r` isolated vertices, contributing `n - r - 1`.
pub fn split_mu1_sum(n: usize, r: usize) -> f64 {
    split_mu1_closed_form(n, r) + (n - r) as f64 - 1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SplitLowerBound {
    pub n: usize,
    pub best_r: usize,
    pub value: f64,
    /// `4n/3 - 2`
    pub trend: f64,
}

/// Best `mu_1(G) + mu_1(complement G)` over the complete split graphs of order `n`.
pub fn construction_lower_bound_f1(n: usize) -> Result<SplitLowerBound, FamilyError> {
    if n < 2 {
        return Err(FamilyError::OrderTooSmall(n));
    }
    let (best_r, value) =
        (1..n)
            .map(|r| (r, split_mu1_sum(n, r)))
            .fold(
                (0, f64::NEG_INFINITY),
                |acc, c| if c.1 > acc.1 { c } else { acc },
            );
    Ok(SplitLowerBound {
        n,
        best_r,
        value,
        trend: 4.0 * n as f64 / 3.0 - 2.0,
    })
}

/// Sizes of `k` near-equal classes, larger classes first.
pub fn balanced_classes(n: usize, k: usize) -> Vec<Range<usize>> {
    let (q, rem) = (n / k, n % k);
    let mut start = 0;
    (0..k)
        .map(|i| {
            let len = q + usize::from(i < rem);
            let r = start..start + len;
            start += len;
            r
        })
        .collect()
}

/// Turán graph `T_k(n)`: complete `k`-partite with near-equal classes.
pub fn turan(n: usize, k: usize) -> Result<Graph, FamilyError> {
    if k == 0 || k > n {
        return Err(FamilyError::TuranParameter { n, k });
    }
    let classes = balanced_classes(n, k);
    let mut class_of = vec![0; n];
    for (c, range) in classes.iter().enumerate() {
        for v in range.clone() {
            class_of[v] = c;
        }
    }
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in u + 1..n {
            if class_of[u] != class_of[v] {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Vertex ranges of the classes `A, B, C, D` of [`four_block`]. Remainder
/// vertices go to `A`, then `B`, then `C`.
pub fn four_block_classes(n: usize) -> Result<[Range<usize>; 4], FamilyError> {
    if n < 4 {
        return Err(FamilyError::FourBlockOrder(n));
    }
    let c = balanced_classes(n, 4);
    Ok([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()])
}

/// `A` and `D` are cliques, `B` and `C` independent, with complete joins
/// `A-B`, `B-C` and `C-D`.
pub fn four_block(n: usize) -> Result<Graph, FamilyError> {
    let [a, b, c, d] = four_block_classes(n)?;
    let mut g = Graph::empty(n)?;
    for clique in [&a, &d] {
        for u in clique.clone() {
            for v in u + 1..clique.end {
                g.add_edge(u, v)?;
            }
        }
    }
    for (x, y) in [(&a, &b), (&b, &c), (&c, &d)] {
        for u in x.clone() {
            for v in y.clone() {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

fn four_block_radical(q: usize) -> f64 {
    let q = q as f64;
    (0.25 + 2.0 * q * q - q).sqrt()
}

/// `mu_2` of `four_block(4q)`.
pub fn four_block_mu2_at(q: usize) -> f64 {
    -0.5 + four_block_radical(q)
}

/// Smallest eigenvalue of `four_block(4q)`.
pub fn four_block_mun_at(q: usize) -> f64 {
    -0.5 - four_block_radical(q)
}

pub fn four_block_mu2_closed_form(n: usize) -> Result<f64, FamilyError> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(FamilyError::NotDivisibleByFour(n));
    }
    Ok(four_block_mu2_at(n / 4))
}

pub fn four_block_mun_closed_form(n: usize) -> Result<f64, FamilyError> {
    if n == 0 || !n.is_multiple_of(4) {
        return Err(FamilyError::NotDivisibleByFour(n));
    }
    Ok(four_block_mun_at(n / 4))
}

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    fn between(a: f64, b: f64) -> Self {
        Bracket {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub fn contains(&self, x: f64, slack: f64) -> bool {
        self.lo - slack <= x && x <= self.hi + slack
    }
}

/// Interlacing brackets for `mu_2` and `mu_n` of `four_block(n)`, from the
/// nested induced subgraphs `four_block(4 floor(n/4)) ⊆ four_block(n) ⊆ four_block(4 ceil(n/4))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourBlockBrackets {
    pub mu2: Bracket,
    pub mun: Bracket,
}

pub fn four_block_brackets(n: usize) -> Result<FourBlockBrackets, FamilyError> {
    if n < 4 {
        return Err(FamilyError::FourBlockOrder(n));
    }
    let (lo, hi) = (n / 4, n.div_ceil(4));
    Ok(FourBlockBrackets {
        mu2: Bracket::between(four_block_mu2_at(lo), four_block_mu2_at(hi)),
        mun: Bracket::between(four_block_mun_at(lo), four_block_mun_at(hi)),
    })
}
