//! Spectra of balanced block graphs through their quotient matrix.
//!
//! A block graph has `k` classes of equal size `t`; each class is a clique or
//! an independent set, and each pair of classes is either completely joined
//! or not joined at all. Its spectrum is the spectrum of the `k x k` quotient
//! matrix `R` together with `0` (multiplicity `t - 1` per independent class)
//! and `-1` (multiplicity `t - 1` per clique class).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, MAX_ORDER};
use crate::spectra::{symmetric_eigenvalues, Spectrum, SpectrumError, OFF_DIAGONAL_TOL};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern needs at least one class")]
    NoClasses,
    #[error("class size must be at least 1")]
    ZeroClassSize,
    #[error("pattern realizes {0} vertices, more than 64")]
    TooLarge(usize),
    #[error("join ({0}, {1}) refers to a class outside 1..={2}")]
    ClassOutOfRange(usize, usize, usize),
    #[error("class {0} cannot be joined to itself")]
    SelfJoin(usize),
    #[error("invalid class kind {0:?}, expected C or I")]
    BadKind(char),
    #[error("invalid join item {0:?}, expected two digits like 12 or a pair like 3-11")]
    BadJoin(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassKind {
    Clique,
    Independent,
}

impl ClassKind {
    fn letter(self) -> char {
        match self {
            ClassKind::Clique => 'C',
            ClassKind::Independent => 'I',
        }
    }
}

/// `k` classes of size `t` with all-or-nothing edges inside and between classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockPattern {
    class_size: usize,
    inner: Vec<ClassKind>,
    /// row-major `k x k`, symmetric, false diagonal
    join: Vec<bool>,
}

impl BlockPattern {
    /// `joins` holds 0-based class pairs.
    pub fn new(
        class_size: usize,
        inner: Vec<ClassKind>,
        joins: &[(usize, usize)],
    ) -> Result<Self, PatternError> {
        let k = inner.len();
        if k == 0 {
            return Err(PatternError::NoClasses);
        }
        if class_size == 0 {
            return Err(PatternError::ZeroClassSize);
        }
        if k * class_size > MAX_ORDER {
            return Err(PatternError::TooLarge(k * class_size));
        }
        let mut join = vec![false; k * k];
        for &(i, j) in joins {
            if i >= k || j >= k {
                return Err(PatternError::ClassOutOfRange(i + 1, j + 1, k));
            }
            if i == j {
                return Err(PatternError::SelfJoin(i + 1));
            }
            join[i * k + j] = true;
            join[j * k + i] = true;
        }
        Ok(BlockPattern {
            class_size,
            inner,
            join,
        })
    }

    /// Parses the command-line notation: `inner` is a string over `{C, I}`,
    /// `joins` a comma separated list of 1-based class pairs (`12,23` or `1-2,2-3`).
    pub fn parse(class_size: usize, inner: &str, joins: &str) -> Result<Self, PatternError> {
        let kinds = inner
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'C' => Ok(ClassKind::Clique),
                'I' => Ok(ClassKind::Independent),
                other => Err(PatternError::BadKind(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut pairs = Vec::new();
        for item in joins.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let bad = || PatternError::BadJoin(item.to_string());
            let (a, b) = if let Some((a, b)) = item.split_once('-') {
                (
                    usize::from_str(a.trim()).map_err(|_| bad())?,
                    usize::from_str(b.trim()).map_err(|_| bad())?,
                )
            } else {
                let digits: Vec<u32> = item
                    .chars()
                    .map(|c| c.to_digit(10))
                    .collect::<Option<_>>()
                    .ok_or_else(bad)?;
                match digits[..] {
                    [a, b] => (a as usize, b as usize),
                    _ => return Err(bad()),
                }
            };
            if a == 0 || b == 0 {
                return Err(PatternError::ClassOutOfRange(a, b, kinds.len()));
            }
            pairs.push((a - 1, b - 1));
        }
        BlockPattern::new(class_size, kinds, &pairs)
    }

    /// Pattern whose realization is `four_block(4t)`.
    pub fn four_block(class_size: usize) -> Result<Self, PatternError> {
        use ClassKind::*;
        BlockPattern::new(
            class_size,
            vec![Clique, Independent, Independent, Clique],
            &[(0, 1), (1, 2), (2, 3)],
        )
    }

    pub fn classes(&self) -> usize {
        self.inner.len()
    }

    pub fn class_size(&self) -> usize {
        self.class_size
    }

    pub fn order(&self) -> usize {
        self.classes() * self.class_size
    }

    pub fn kind(&self, class: usize) -> ClassKind {
        self.inner[class]
    }

    pub fn joined(&self, i: usize, j: usize) -> bool {
        self.join[i * self.classes() + j]
    }

    /// Number of independent classes.
    pub fn independent_classes(&self) -> usize {
        self.inner
            .iter()
            .filter(|&&c| c == ClassKind::Independent)
            .count()
    }

    /// Forced eigenvalue multiplicities `(zeros, minus_ones)`.
    pub fn forced_multiplicities(&self) -> (usize, usize) {
        let p = self.independent_classes();
        let t = self.class_size - 1;
        (p * t, (self.classes() - p) * t)
    }

    /// The graph with classes occupying consecutive vertex ranges in index order.
    pub fn realize(&self) -> Result<Graph, PatternError> {
        let t = self.class_size;
        let k = self.classes();
        let mut g = Graph::empty(self.order()).map_err(|_| PatternError::TooLarge(self.order()))?;
        let mut add = |u: usize, v: usize| g.add_edge(u, v).expect("vertices in range");
        for i in 0..k {
            if self.inner[i] == ClassKind::Clique {
                for u in i * t..(i + 1) * t {
                    for v in u + 1..(i + 1) * t {
                        add(u, v);
                    }
                }
            }
            for j in i + 1..k {
                if self.joined(i, j) {
                    for u in i * t..(i + 1) * t {
                        for v in j * t..(j + 1) * t {
                            add(u, v);
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn quotient_matrix(&self) -> QuotientMatrix {
        let k = self.classes();
        let t = self.class_size as f64;
        let mut entries = vec![0.0; k * k];
        for i in 0..k {
            for j in 0..k {
                entries[i * k + j] = if i == j {
                    match self.inner[i] {
                        ClassKind::Clique => t - 1.0,
                        ClassKind::Independent => 0.0,
                    }
                } else if self.joined(i, j) {
                    t
                } else {
                    0.0
                };
            }
        }
        QuotientMatrix {
            k,
            entries,
            independent: self.independent_classes(),
        }
    }

    pub fn spectrum_via_quotient(&self) -> Result<Spectrum, SpectrumError> {
        let mut values = self.quotient_matrix().eigenvalues()?;
        let (zeros, minus_ones) = self.forced_multiplicities();
        values.extend(std::iter::repeat_n(0.0, zeros));
        values.extend(std::iter::repeat_n(-1.0, minus_ones));
        Ok(Spectrum::from_values(values, OFF_DIAGONAL_TOL))
    }
}

impl fmt::Display for BlockPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: String = self.inner.iter().map(|c| c.letter()).collect();
        let k = self.classes();
        let joins: Vec<String> = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .filter(|&(i, j)| self.joined(i, j))
            .map(|(i, j)| format!("{}-{}", i + 1, j + 1))
            .collect();
        write!(
            f,
            "t={} inner={} join={}",
            self.class_size,
            inner,
            joins.join(",")
        )
    }
}

/// The `k x k` reduced matrix `R`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuotientMatrix {
    pub k: usize,
    /// row-major
    pub entries: Vec<f64>,
    /// number of independent classes
    pub independent: usize,
}

impl QuotientMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.k + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.k).map(<[f64]>::to_vec).collect()
    }

    /// Eigenvalues of `R`, descending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>, SpectrumError> {
        symmetric_eigenvalues(&self.entries, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::four_block;
    use crate::spectra::adjacency_spectrum;
    use ClassKind::*;

    #[test]
    fn four_block_pattern_realizes_family() {
        for t in 1..=10 {
            let p = BlockPattern::four_block(t).unwrap();
            assert_eq!(p.realize().unwrap(), four_block(4 * t).unwrap());
        }
    }

    #[test]
    fn single_clique_and_bipartite() {
        let p = BlockPattern::new(6, vec![Clique], &[]).unwrap();
        assert_eq!(p.realize().unwrap(), Graph::complete(6).unwrap());
        assert_eq!(p.quotient_matrix().entries, vec![5.0]);
        let s = p.spectrum_via_quotient().unwrap();
        assert_eq!(s.values(), &[5.0, -1.0, -1.0, -1.0, -1.0, -1.0]);

        let k33 = BlockPattern::new(3, vec![Independent, Independent], &[(0, 1)]).unwrap();
        assert_eq!(k33.realize().unwrap().edge_count(), 9);
        assert_eq!(k33.quotient_matrix().entries, vec![0.0, 3.0, 3.0, 0.0]);
        let ev = k33.quotient_matrix().eigenvalues().unwrap();
        assert!((ev[0] - 3.0).abs() < 1e-14 && (ev[1] + 3.0).abs() < 1e-14);
    }

    #[test]
    fn four_block_quotient_t2() {
        let r = BlockPattern::four_block(2).unwrap().quotient_matrix();
        assert_eq!(
            r.rows(),
            vec![
                vec![1.0, 2.0, 0.0, 0.0],
                vec![2.0, 0.0, 2.0, 0.0],
                vec![0.0, 2.0, 0.0, 2.0],
                vec![0.0, 0.0, 2.0, 1.0],
            ]
        );
        let ev = r.eigenvalues().unwrap();
        let s17 = 17f64.sqrt();
        let expected = [(3.0 + s17) / 2.0, 2.0, (3.0 - s17) / 2.0, -3.0];
        for (a, b) in ev.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12);
        }
        let via = BlockPattern::four_block(2)
            .unwrap()
            .spectrum_via_quotient()
            .unwrap();
        let direct = adjacency_spectrum(&four_block(8).unwrap()).unwrap();
        for (a, b) in via.values().iter().zip(direct.values()) {
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn multiplicities_account_for_every_vertex() {
        let p = BlockPattern::parse(5, "CICII", "12,35,4-5").unwrap();
        let (z, m) = p.forced_multiplicities();
        assert_eq!(p.classes() + z + m, p.order());
        assert_eq!((z, m), (12, 8));
    }

    #[test]
    fn parse_and_display() {
        let p = BlockPattern::parse(2, "CIIC", "12,23,34").unwrap();
        assert_eq!(p, BlockPattern::four_block(2).unwrap());
        assert_eq!(p.to_string(), "t=2 inner=CIIC join=1-2,2-3,3-4");
        assert_eq!(
            BlockPattern::parse(2, "CX", ""),
            Err(PatternError::BadKind('X'))
        );
        assert!(matches!(
            BlockPattern::parse(2, "CI", "123"),
            Err(PatternError::BadJoin(_))
        ));
        assert_eq!(
            BlockPattern::parse(2, "CI", "13"),
            Err(PatternError::ClassOutOfRange(1, 3, 2))
        );
        assert_eq!(
            BlockPattern::parse(2, "CI", "11"),
            Err(PatternError::SelfJoin(1))
        );
        assert_eq!(BlockPattern::parse(2, "", ""), Err(PatternError::NoClasses));
        assert_eq!(
            BlockPattern::parse(0, "C", ""),
            Err(PatternError::ZeroClassSize)
        );
        assert_eq!(
            BlockPattern::parse(13, "CIIIC", ""),
            Err(PatternError::TooLarge(65))
        );
    }
}
