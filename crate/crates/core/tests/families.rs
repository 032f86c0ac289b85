use ngbounds::families::{
    complete_split, four_block, four_block_brackets, four_block_classes,
    four_block_mu2_closed_form, four_block_mun_closed_form, split_mu1_closed_form, split_mu1_sum,
    turan,
};
use ngbounds::quotient::{BlockPattern, ClassKind};
use ngbounds::{adjacency_spectrum, Graph};
use proptest::prelude::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.order();
    if n != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let ok =
            (0..n).all(|u| (u + 1..n).all(|v| a.has_edge(u, v) == b.has_edge(perm[u], perm[v])));
        if ok {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

#[test]
fn split_closed_form_matches_eigensolver() {
    for n in 2..=12 {
        for r in 1..n {
            let g = complete_split(n, r).unwrap();
            let mu1 = adjacency_spectrum(&g).unwrap().largest();
            assert!(close(mu1, split_mu1_closed_form(n, r), 1e-9), "n={n} r={r}");
            let c = adjacency_spectrum(&g.complement()).unwrap().largest();
            assert!(close(mu1 + c, split_mu1_sum(n, r), 1e-9));
        }
    }
}

#[test]
fn four_block_closed_forms() {
    for n in (4..=40).step_by(4) {
        let s = adjacency_spectrum(&four_block(n).unwrap()).unwrap();
        assert!(
            close(
                s.mu(2).unwrap(),
                four_block_mu2_closed_form(n).unwrap(),
                1e-8
            ),
            "n={n}"
        );
        assert!(
            close(s.smallest(), four_block_mun_closed_form(n).unwrap(), 1e-8),
            "n={n}"
        );
    }
}

#[test]
fn four_block_brackets_contain_spectrum() {
    for n in 4..=40 {
        let s = adjacency_spectrum(&four_block(n).unwrap()).unwrap();
        let b = four_block_brackets(n).unwrap();
        assert!(b.mu2.contains(s.mu(2).unwrap(), 1e-9), "n={n}");
        assert!(b.mun.contains(s.smallest(), 1e-9), "n={n}");
    }
}

#[test]
fn four_block_is_self_complementary_when_divisible() {
    for n in [4, 8, 12] {
        let g = four_block(n).unwrap();
        let a = adjacency_spectrum(&g).unwrap();
        let b = adjacency_spectrum(&g.complement()).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!(close(*x, *y, 1e-9), "n={n}");
        }
        if n <= 8 {
            assert!(isomorphic(&g, &g.complement()), "n={n}");
        }
    }
    // the explicit map sends classes A, B, C, D to B, D, A, C
    let g = four_block(12).unwrap();
    let [a, b, c, d] = four_block_classes(12).unwrap();
    let mut perm = [0; 12];
    for (from, to) in [
        (a.clone(), b.clone()),
        (b, d.clone()),
        (c.clone(), a),
        (d, c),
    ] {
        for (u, v) in from.zip(to) {
            perm[u] = v;
        }
    }
    let gc = g.complement();
    for u in 0..12 {
        for v in u + 1..12 {
            assert_eq!(g.has_edge(u, v), gc.has_edge(perm[u], perm[v]));
        }
    }
}

#[test]
fn turan_spectrum() {
    for n in 2..=20 {
        for k in 2..=n.min(8) {
            let g = turan(n, k).unwrap();
            assert_eq!(g.clique_number(), k);
            if n % k == 0 {
                // (n - n/k, 0^{n-k}, (-n/k)^{k-1})
                let s = adjacency_spectrum(&g).unwrap();
                let q = (n / k) as f64;
                assert!(close(s.largest(), n as f64 - q, 1e-9));
                assert!(s.values()[1..=n - k].iter().all(|x| close(*x, 0.0, 1e-9)));
                assert!(s.values()[n - k + 1..].iter().all(|x| close(*x, -q, 1e-9)));
            }
        }
    }
}

/// Direct construction, independent of `BlockPattern::realize`.
fn block_graph(t: usize, inner: &[ClassKind], joins: &[(usize, usize)]) -> Graph {
    let k = inner.len();
    let mut g = Graph::empty(k * t).unwrap();
    let class = |v: usize| v / t;
    for u in 0..k * t {
        for v in u + 1..k * t {
            let (a, b) = (class(u), class(v));
            let edge = if a == b {
                inner[a] == ClassKind::Clique
            } else {
                joins.contains(&(a.min(b), a.max(b)))
            };
            if edge {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn check_pattern(t: usize, inner: Vec<ClassKind>, joins: Vec<(usize, usize)>) {
    let p = BlockPattern::new(t, inner.clone(), &joins).unwrap();
    let g = block_graph(t, &inner, &joins);
    assert_eq!(p.realize().unwrap(), g);
    let direct = adjacency_spectrum(&g).unwrap();
    let via = p.spectrum_via_quotient().unwrap();
    assert_eq!(via.order(), g.order());
    for (x, y) in direct.values().iter().zip(via.values()) {
        assert!(
            close(*x, *y, 1e-8),
            "{p}: {:?} vs {:?}",
            direct.values(),
            via.values()
        );
    }
}

fn decode_pattern(k: usize, bits: u32) -> (Vec<ClassKind>, Vec<(usize, usize)>) {
    let inner = (0..k)
        .map(|i| {
            if bits >> i & 1 == 1 {
                ClassKind::Clique
            } else {
                ClassKind::Independent
            }
        })
        .collect();
    let mut joins = Vec::new();
    let mut b = k;
    for i in 0..k {
        for j in i + 1..k {
            if bits >> b & 1 == 1 {
                joins.push((i, j));
            }
            b += 1;
        }
    }
    (inner, joins)
}

#[test]
fn quotient_spectrum_exhaustive_small_patterns() {
    for k in 1..=4 {
        let bits = k + k * (k - 1) / 2;
        for t in 1..=4 {
            for code in 0..1u32 << bits {
                let (inner, joins) = decode_pattern(k, code);
                check_pattern(t, inner, joins);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quotient_spectrum_random_patterns(k in 1usize..=6, t in 1usize..=6, code in any::<u32>()) {
        let (inner, joins) = decode_pattern(k, code);
        check_pattern(t, inner, joins);
    }
}
