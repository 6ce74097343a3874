use arspec_core::antiregular::{solve_spectrum, SolverConfig};
use arspec_core::graph::{adjacency_from_sequence, antiregular_sequence};
use arspec_core::oracle::{jacobi_eigenvalues, DEFAULT_TOLERANCE};
use arspec_core::threshold::{
    enumerate_connected_threshold, quotient_matrix, run_length_encode, threshold_spectrum,
    SpectrumMethod,
};

fn dense_spectrum(n: usize) -> Vec<f64> {
    let a = adjacency_from_sequence(&antiregular_sequence(n).unwrap()).to_real();
    jacobi_eigenvalues(&a, DEFAULT_TOLERANCE)
        .unwrap()
        .eigenvalues
}

fn max_delta(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, |m: f64, d| if d > m || d.is_nan() { d } else { m })
}

#[test]
fn solver_matches_jacobi_small_orders() {
    let cfg = SolverConfig::default();
    for n in 2..=80 {
        let cheb = solve_spectrum(n, &cfg).unwrap().eigenvalues();
        let dense = dense_spectrum(n);
        let d = max_delta(&cheb, &dense);
        assert!(d < 1e-8, "n = {n}: max delta {d:e}");
    }
}

#[test]
fn solver_matches_jacobi_larger_odd_and_even() {
    let cfg = SolverConfig::default();
    for n in [101, 128, 151, 199, 200] {
        let cheb = solve_spectrum(n, &cfg).unwrap().eigenvalues();
        let d = max_delta(&cheb, &dense_spectrum(n));
        assert!(d < 1e-8, "n = {n}: max delta {d:e}");
    }
}

#[test]
fn solver_residuals_are_tiny() {
    let cfg = SolverConfig::default();
    for n in [2, 3, 50, 51, 333, 1000, 1001] {
        let s = solve_spectrum(n, &cfg).unwrap();
        assert!(s.max_residual() < 1e-9, "n = {n}: {:e}", s.max_residual());
    }
}

#[test]
fn quotient_agrees_with_full_for_every_small_threshold_graph() {
    for n in 2..=12 {
        for b in enumerate_connected_threshold(n).unwrap() {
            let full = threshold_spectrum(&b, SpectrumMethod::Full).unwrap();
            let quot = threshold_spectrum(&b, SpectrumMethod::Quotient).unwrap();
            let d = max_delta(&full, &quot);
            assert!(d < 1e-8, "{b}: {d:e}");
        }
    }
}

#[test]
fn quotient_is_symmetrizable_for_every_enumerated_sequence() {
    for n in 2..=12 {
        for b in enumerate_connected_threshold(n).unwrap() {
            let q = quotient_matrix(&run_length_encode(&b).unwrap());
            let m = q.matrix.order();
            for i in 0..m {
                for j in 0..m {
                    let ci = q.cell_sizes[i] as f64;
                    let cj = q.cell_sizes[j] as f64;
                    let sij = q.matrix.get(i, j) * (ci / cj).sqrt();
                    let sji = q.matrix.get(j, i) * (cj / ci).sqrt();
                    assert!((sij - sji).abs() < 1e-10, "{b} ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn antiregular_quotient_is_the_adjacency_itself() {
    for k in 1..=20 {
        let b = antiregular_sequence(2 * k).unwrap();
        let q = quotient_matrix(&run_length_encode(&b).unwrap());
        assert_eq!(q.matrix, adjacency_from_sequence(&b).to_real());
        assert!(q.cell_sizes.iter().all(|&c| c == 1));
    }
}

#[test]
fn odd_quotient_is_even_adjacency_with_doubled_first_column() {
    // A_9: cells {v1, v2}, {v3}, ..., {v9}.
    let b = antiregular_sequence(9).unwrap();
    let q = quotient_matrix(&run_length_encode(&b).unwrap());
    let a8 = adjacency_from_sequence(&antiregular_sequence(8).unwrap());
    assert_eq!(q.matrix.order(), 8);
    for i in 0..8 {
        for j in 0..8 {
            let want = if j == 0 {
                2 * a8.get(i, j)
            } else {
                a8.get(i, j)
            };
            assert_eq!(q.matrix.get(i, j), want as f64, "({i},{j})");
        }
    }
    let quot = threshold_spectrum(&b, SpectrumMethod::Quotient).unwrap();
    let cheb = solve_spectrum(9, &SolverConfig::default())
        .unwrap()
        .eigenvalues();
    assert!(max_delta(&quot, &cheb) < 1e-9);
}
