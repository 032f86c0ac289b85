//! Independent check of the Jacobi eigensolver: exact characteristic
//! polynomials, squarefree factorisation over the rationals, and root
//! isolation by bisection between the critical points.

use ngbounds::graph::pair_count;
use ngbounds::{adjacency_spectrum, Graph};
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

type Q = Ratio<i128>;
/// Coefficients, lowest degree first, no trailing zeros.
type Poly = Vec<Q>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn degree(p: &Poly) -> usize {
    p.len().saturating_sub(1)
}

fn derivative(p: &Poly) -> Poly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Q::from(i as i128))
            .collect(),
    )
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let len = a.len().max(b.len());
    trim(
        (0..len)
            .map(|i| {
                a.get(i).copied().unwrap_or_else(Q::zero)
                    - b.get(i).copied().unwrap_or_else(Q::zero)
            })
            .collect(),
    )
}

fn monic(p: Poly) -> Poly {
    let lead = *p.last().expect("nonzero polynomial");
    p.into_iter().map(|c| c / lead).collect()
}

/// Quotient and remainder of `a / b`.
fn divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut r = a.clone();
    let db = degree(b);
    let lead = *b.last().unwrap();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![Q::zero(); r.len() - b.len() + 1];
    while !r.is_empty() && r.len() >= b.len() {
        let shift = degree(&r) - db;
        let c = *r.last().unwrap() / lead;
        q[shift] = c;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= c * bc;
        }
        r = trim(r);
    }
    (trim(q), r)
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let (_, r) = divmod(&x, &y);
        x = y;
        y = r;
    }
    monic(x)
}

/// Faddeev-LeVerrier recursion; exact for integer matrices.
fn charpoly(g: &Graph) -> Poly {
    let n = g.order();
    let a: Vec<i128> = g.adjacency_matrix().iter().map(|&x| x as i128).collect();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut m = vec![0i128; n * n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![0i128; n * n];
        for i in 0..n {
            for j in 0..n {
                next[i * n + j] = (0..n).map(|l| a[i * n + l] * m[l * n + j]).sum();
            }
            next[i * n + i] += coeffs[n - k + 1];
        }
        m = next;
        let tr: i128 = (0..n)
            .map(|i| (0..n).map(|l| a[i * n + l] * m[l * n + i]).sum::<i128>())
            .sum();
        assert_eq!(tr % k as i128, 0);
        coeffs[n - k] = -tr / k as i128;
    }
    coeffs.into_iter().map(Q::from).collect()
}

/// Yun's algorithm: `p = prod_i a_i^i` with each `a_i` squarefree.
fn squarefree_factors(p: &Poly) -> Vec<(Poly, usize)> {
    let p = monic(p.clone());
    let dp = derivative(&p);
    let a0 = gcd(&p, &dp);
    let mut b = divmod(&p, &a0).0;
    let mut c = divmod(&dp, &a0).0;
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut mult = 1;
    while degree(&b) > 0 {
        let a = gcd(&b, &d);
        b = divmod(&b, &a).0;
        c = divmod(&d, &a).0;
        d = sub(&c, &derivative(&b));
        if degree(&a) > 0 {
            out.push((a, mult));
        }
        mult += 1;
    }
    out
}

fn eval(p: &[f64], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

fn bisect(p: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = eval(p, lo);
    if flo == 0.0 {
        return lo;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = eval(p, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Roots of a real-rooted squarefree polynomial, ascending. Consecutive
/// critical points bracket exactly one root each.
fn real_roots(p: &Poly) -> Vec<f64> {
    let d = degree(p);
    if d == 0 {
        return vec![];
    }
    let lead = p.last().unwrap();
    let bound = 1.0
        + p.iter()
            .map(|c| (c / lead).abs().to_f64().unwrap())
            .fold(0.0, f64::max);
    let crit = real_roots(&derivative(p));
    let pf: Vec<f64> = p.iter().map(|c| c.to_f64().unwrap()).collect();
    let mut edges = vec![-bound];
    edges.extend(crit);
    edges.push(bound);
    edges.windows(2).map(|w| bisect(&pf, w[0], w[1])).collect()
}

fn oracle_spectrum(g: &Graph) -> Vec<f64> {
    let mut roots = Vec::with_capacity(g.order());
    for (factor, mult) in squarefree_factors(&charpoly(g)) {
        for r in real_roots(&factor) {
            roots.extend(std::iter::repeat_n(r, mult));
        }
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    roots
}

#[test]
fn charpoly_of_small_graphs() {
    // K3: x^3 - 3x - 2 = (x - 2)(x + 1)^2
    let k3 = charpoly(&Graph::complete(3).unwrap());
    let want: Poly = [-2, -3, 0, 1].into_iter().map(Q::from).collect();
    assert_eq!(k3, want);
    let factors = squarefree_factors(&k3);
    assert_eq!(factors.len(), 2);
    assert_eq!(factors[0].1, 1);
    assert_eq!(factors[1], (vec![Q::one(), Q::one()], 2));
    let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    let want: Poly = [1, 0, -3, 0, 1].into_iter().map(Q::from).collect();
    assert_eq!(charpoly(&p4), want);
}

#[test]
fn charpoly_coefficients_count_edges_and_triangles() {
    // c_{n-2} = -m and c_{n-3} = -2 * triangles
    for mask in 0..1u64 << pair_count(5) {
        let g = Graph::from_edge_mask(5, mask).unwrap();
        let p = charpoly(&g);
        let mut triangles = 0;
        for a in 0..5 {
            for b in a + 1..5 {
                for c in b + 1..5 {
                    triangles += (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) as i128;
                }
            }
        }
        assert_eq!(p[3], Q::from(-(g.edge_count() as i128)));
        assert_eq!(p[2], Q::from(-2 * triangles));
    }
}

#[test]
fn jacobi_matches_oracle_for_all_graphs_up_to_six() {
    let mut worst = 0.0f64;
    for n in 1..=6 {
        for mask in 0..1u64 << pair_count(n) {
            let g = Graph::from_edge_mask(n, mask).unwrap();
            let want = oracle_spectrum(&g);
            let got = adjacency_spectrum(&g).unwrap();
            assert_eq!(want.len(), n, "{g:?}");
            for (a, b) in got.values().iter().zip(&want) {
                worst = worst.max((a - b).abs());
                assert!(
                    (a - b).abs() < 1e-7,
                    "{g:?}: {:?} vs {want:?}",
                    got.values()
                );
            }
        }
    }
    assert!(worst < 1e-7);
}

#[test]
fn jacobi_matches_oracle_on_larger_structured_graphs() {
    use ngbounds::families::{complete_split, four_block, turan};
    let graphs = [
        four_block(8).unwrap(),
        four_block(9).unwrap(),
        turan(9, 3).unwrap(),
        complete_split(9, 3).unwrap(),
        Graph::from_graph6("IheA@GUAo").unwrap(),
    ];
    for g in graphs {
        let want = oracle_spectrum(&g);
        let got = adjacency_spectrum(&g).unwrap();
        for (a, b) in got.values().iter().zip(&want) {
            assert!(
                (a - b).abs() < 1e-7,
                "{g:?}: {:?} vs {want:?}",
                got.values()
            );
        }
    }
}
