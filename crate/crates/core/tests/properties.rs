use std::f64::consts::PI;

use arspec_core::antiregular::{
    big_f_even, big_f_odd, brackets, f1, f2, solve_spectrum, theta_of_lambda, Parity, SolverConfig,
    OMEGA_HIGH, OMEGA_LOW,
};
use arspec_core::chebyshev::{chebyshev_u, chebyshev_u_trig, path_matrix, toeplitz_char_poly};
use arspec_core::graph::{
    adjacency_from_sequence, antiregular_sequence, block_adjacency, block_permutation,
    inverse_block_adjacency, laplacian, CreationSequence, Permutation,
};
use arspec_core::matrix::{IntMatrix, RealMatrix};
use arspec_core::oracle::{char_poly_eval, determinant, jacobi_eigenvalues};
use arspec_core::threshold::{connected_sequence_at, omega_scan, scan_with_threads};
use proptest::prelude::*;

fn sym_matrix(max_n: usize) -> impl Strategy<Value = RealMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-5.0f64..5.0, n * n).prop_map(move |v| {
            RealMatrix::from_fn(n, |i, j| {
                let (a, b) = if i <= j { (i, j) } else { (j, i) };
                v[a * n + b]
            })
        })
    })
}

fn shuffle(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recurrence_matches_trig_form(m in 0usize..=50, theta in 0.01f64..(PI - 0.01)) {
        let rec = chebyshev_u(m, theta.cos());
        let trig = chebyshev_u_trig(m, theta).unwrap();
        prop_assert!((rec - trig).abs() <= 1e-9 * (m as f64 + 1.0));
    }

    #[test]
    fn chebyshev_bounded_on_unit_interval(m in 0usize..=50, x in -1.0f64..=1.0) {
        prop_assert!(chebyshev_u(m, x).abs() <= m as f64 + 1.0 + 1e-9);
    }

    #[test]
    fn path_char_poly_matches_lu(m in 1usize..=20, t in -2.5f64..2.5) {
        let lu = char_poly_eval(&path_matrix(m).to_real(), t);
        let cheb = toeplitz_char_poly(m, t);
        prop_assert!((lu - cheb).abs() <= 1e-9 * cheb.abs().max(1.0));
    }

    #[test]
    fn jacobi_preserves_trace_and_squared_norm(m in sym_matrix(12)) {
        let r = jacobi_eigenvalues(&m, 1e-12).unwrap();
        let trace: f64 = r.eigenvalues.iter().sum();
        let sq: f64 = r.eigenvalues.iter().map(|x| x * x).sum();
        let f = m.frobenius_norm();
        prop_assert!((trace - m.trace()).abs() <= 1e-9 * f.max(1.0));
        prop_assert!((sq - f * f).abs() <= 1e-9 * (f * f).max(1.0));
    }

    #[test]
    fn jacobi_product_matches_determinant(m in sym_matrix(8)) {
        let r = jacobi_eigenvalues(&m, 1e-12).unwrap();
        let prod: f64 = r.eigenvalues.iter().product();
        let det = determinant(&m);
        let scale = r.eigenvalues.iter().map(|x| x.abs().max(1.0)).product::<f64>();
        prop_assert!((prod - det).abs() <= 1e-9 * scale);
    }

    #[test]
    fn jacobi_invariant_under_relabeling((m, p) in sym_matrix(10).prop_flat_map(|m| {
        let n = m.order();
        (Just(m), shuffle(n))
    })) {
        let a = jacobi_eigenvalues(&m, 1e-12).unwrap().eigenvalues;
        let b = jacobi_eigenvalues(&m.relabel(&p), 1e-12).unwrap().eigenvalues;
        let scale = m.frobenius_norm().max(1.0);
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn conjugation_by_inverse_round_trips(p in shuffle(9)) {
        let perm = Permutation::new(p).unwrap();
        let a = adjacency_from_sequence(&antiregular_sequence(9).unwrap());
        prop_assert_eq!(perm.inverse().conjugate(&perm.conjugate(&a)), a);
    }

    #[test]
    fn threshold_adjacency_degrees(bits in prop::collection::vec(any::<bool>(), 1..30)) {
        let mut full = vec![false];
        full.extend(bits);
        let b = CreationSequence::new(full.clone()).unwrap();
        let a = adjacency_from_sequence(&b);
        prop_assert!(a.is_symmetric());
        // vertex i is adjacent to j < i iff b_i = 1, to j > i iff b_j = 1
        let n = full.len();
        for i in 0..n {
            let later = full[i + 1..].iter().filter(|&&x| x).count();
            let deg = if full[i] { i } else { 0 } + later;
            prop_assert_eq!(a.row(i).iter().sum::<i64>(), deg as i64);
        }
    }

    #[test]
    fn theta_inverts_both_branches(lambda in 0.2072f64..50.0) {
        let t = theta_of_lambda(lambda).unwrap();
        prop_assert!((f1(t) - lambda).abs() <= 1e-9 * lambda.max(1.0));
        let neg = -1.0 - lambda;
        let t2 = theta_of_lambda(neg).unwrap();
        prop_assert!((t - t2).abs() < 1e-12);
        prop_assert!((f2(t2) - neg).abs() <= 1e-9 * lambda.max(1.0));
    }

    #[test]
    fn even_f_decreases_inside_brackets(k in 2usize..40, j_frac in 0.0f64..0.999, a in 0.05f64..0.45) {
        let set = brackets(k, Parity::Even).unwrap();
        let j = 1 + (k as f64 * j_frac) as usize;
        let (lo, hi) = set.interval(j);
        let w = hi - lo;
        let x = lo + a * w;
        let y = lo + (a + 0.5) * w;
        prop_assert!(big_f_even(x, k).unwrap() > big_f_even(y, k).unwrap());
    }

    #[test]
    fn odd_f_increases_inside_brackets(k in 2usize..40, j_frac in 0.0f64..0.999, a in 0.05f64..0.45) {
        let set = brackets(k, Parity::Odd).unwrap();
        let j = 1 + (k as f64 * j_frac) as usize;
        let (lo, hi) = set.interval(j);
        let w = hi - lo;
        let x = lo + a * w;
        let y = lo + (a + 0.5) * w;
        prop_assert!(big_f_odd(x, k).unwrap() < big_f_odd(y, k).unwrap());
    }

    #[test]
    fn spectrum_avoids_forbidden_interval(n in 2usize..400) {
        let s = solve_spectrum(n, &SolverConfig::default()).unwrap();
        prop_assert_eq!(s.eigenvalues().len(), n);
        for l in s.nontrivial() {
            prop_assert!(l <= OMEGA_LOW || l >= OMEGA_HIGH, "n = {}: {}", n, l);
        }
        let trace: f64 = s.eigenvalues().iter().sum();
        prop_assert!(trace.abs() < 1e-8 * n as f64);
    }

    #[test]
    fn enumeration_index_round_trip(n in 2usize..=26, raw in any::<u64>()) {
        let count = 1u64 << (n - 2);
        let idx = raw % count;
        let b = connected_sequence_at(n, idx).unwrap();
        let back = b.bits()[1..n - 1].iter().fold(0u64, |acc, &x| 2 * acc + u64::from(x));
        prop_assert_eq!(back, idx);
        prop_assert!(b.is_connected());
    }
}

#[test]
fn block_inverse_is_exact() {
    for k in 1..=60 {
        let a = block_adjacency(k).unwrap();
        let inv = inverse_block_adjacency(k).unwrap();
        assert_eq!(
            a.matmul(&inv).unwrap(),
            IntMatrix::identity(2 * k),
            "k = {k}"
        );
    }
}

#[test]
fn relabeling_gives_block_form() {
    for k in 1..=60 {
        let a = adjacency_from_sequence(&antiregular_sequence(2 * k).unwrap());
        let p = block_permutation(2 * k).unwrap();
        assert_eq!(p.conjugate(&a), block_adjacency(k).unwrap(), "k = {k}");
    }
}

#[test]
fn laplacian_spectrum_is_integer_with_one_gap() {
    for n in 2..=30 {
        let a = adjacency_from_sequence(&antiregular_sequence(n).unwrap());
        let l = laplacian(&a).unwrap().to_real();
        let got = jacobi_eigenvalues(&l, 1e-12).unwrap().eigenvalues;
        let missing = n.div_ceil(2);
        let want: Vec<f64> = (0..=n)
            .filter(|&x| x != missing)
            .map(|x| x as f64)
            .collect();
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).abs() < 1e-6, "n = {n}: {got:?}");
        }
    }
}

#[test]
fn scans_are_deterministic_across_pool_sizes() {
    let a = omega_scan(11).unwrap();
    let b = omega_scan(11).unwrap();
    let c = scan_with_threads(11, 1).unwrap();
    let d = scan_with_threads(11, 3).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert_eq!(a, d);
    assert_eq!(a.to_json().to_string(), d.to_json().to_string());
}
