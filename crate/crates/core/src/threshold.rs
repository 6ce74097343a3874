//! General threshold graphs: degree-partition quotients, exhaustive
//! enumeration of connected creation sequences, and scans of every threshold
//! graph on `n` vertices against the anti-regular graph.

use std::cmp::Ordering;
use std::io;

use rayon::prelude::*;
use serde::Serialize;

use crate::antiregular::{OMEGA_HIGH, OMEGA_LOW};
use crate::error::{Error, Result};
use crate::graph::{adjacency_from_sequence, antiregular_sequence, CreationSequence};
use crate::matrix::RealMatrix;
use crate::oracle::{jacobi_eigenvalues, quotient_eigenvalues, DEFAULT_TOLERANCE};

/// Eigenvalues this close to 0 or -1 are treated as trivial.
pub const TRIVIAL_TOLERANCE: f64 = 1e-9;
pub const MIN_SCAN_ORDER: usize = 2;
pub const MAX_SCAN_ORDER: usize = 26;

/// `s` isolated vertices followed by `t` dominating ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Run {
    pub zeros: usize,
    pub ones: usize,
}

/// Creation sequence `0^{s_1} 1^{t_1} ... 0^{s_k} 1^{t_k}` of a connected
/// threshold graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunLengthSequence {
    runs: Vec<Run>,
}

impl RunLengthSequence {
    /// Requires `s_1 >= 1` and every `t_i >= 1`; later `s_i` may be 0.
    pub fn new(runs: Vec<Run>) -> Result<Self> {
        match runs.first() {
            None => return Err(Error::InvalidSequence("no runs".into())),
            Some(r) if r.zeros == 0 => {
                return Err(Error::InvalidSequence(
                    "first run must start with a 0".into(),
                ))
            }
            _ => {}
        }
        if runs.iter().any(|r| r.ones == 0) {
            return Err(Error::InvalidSequence(
                "every run needs at least one 1".into(),
            ));
        }
        if runs.iter().map(|r| r.zeros + r.ones).sum::<usize>() < 2 {
            return Err(Error::InvalidSequence("fewer than two vertices".into()));
        }
        Ok(RunLengthSequence { runs })
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    /// Number of `0^s 1^t` blocks.
    pub fn blocks(&self) -> usize {
        self.runs.len()
    }

    pub fn order(&self) -> usize {
        self.runs.iter().map(|r| r.zeros + r.ones).sum()
    }

    pub fn expand(&self) -> CreationSequence {
        let bits = self
            .runs
            .iter()
            .flat_map(|r| {
                std::iter::repeat_n(false, r.zeros).chain(std::iter::repeat_n(true, r.ones))
            })
            .collect();
        CreationSequence::new(bits).expect("validated runs expand to a valid sequence")
    }
}

/// Maximal-run encoding of a connected creation sequence.
pub fn run_length_encode(b: &CreationSequence) -> Result<RunLengthSequence> {
    if !b.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut runs = Vec::new();
    let mut cur = Run { zeros: 0, ones: 0 };
    for &bit in b.bits() {
        if bit {
            cur.ones += 1;
        } else {
            if cur.ones > 0 {
                runs.push(cur);
                cur = Run { zeros: 0, ones: 0 };
            }
            cur.zeros += 1;
        }
    }
    runs.push(cur);
    RunLengthSequence::new(runs)
}

/// Quotient matrix of the degree partition, with the cell bookkeeping needed
/// to reconstruct the trivial eigenvalues.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Quotient {
    /// Entry `(i, j)` counts the neighbours a vertex of cell `i` has in cell `j`.
    pub matrix: RealMatrix,
    pub cell_sizes: Vec<usize>,
    /// `true` for cells of dominating vertices.
    pub dominating: Vec<bool>,
}

/// Quotient of the partition into runs `(C_1, ..., C_2k) = (0^{s_1}, 1^{t_1}, ...)`.
/// Empty cells (`s_i = 0`) are dropped. For the even anti-regular sequence this
/// is the canonical adjacency matrix of `A_{2k}` itself.
pub fn quotient_matrix(rl: &RunLengthSequence) -> Quotient {
    let mut cell_sizes = Vec::with_capacity(2 * rl.blocks());
    let mut dominating = Vec::with_capacity(2 * rl.blocks());
    for r in rl.runs() {
        if r.zeros > 0 {
            cell_sizes.push(r.zeros);
            dominating.push(false);
        }
        cell_sizes.push(r.ones);
        dominating.push(true);
    }
    let matrix = RealMatrix::from_fn(cell_sizes.len(), |i, j| {
        if i == j {
            if dominating[i] {
                (cell_sizes[i] - 1) as f64
            } else {
                0.0
            }
        } else if dominating[i.max(j)] {
            cell_sizes[j] as f64
        } else {
            0.0
        }
    });
    Quotient {
        matrix,
        cell_sizes,
        dominating,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumMethod {
    /// Jacobi on the full `n x n` adjacency matrix.
    Full,
    /// Quotient eigenvalues plus trivial eigenvalues from the cell sizes.
    Quotient,
}

/// Adjacency spectrum of a threshold graph, ascending.
///
/// The quotient method adds `c - 1` copies of `0` for every isolated cell of
/// size `c` and `c - 1` copies of `-1` for every dominating cell.
pub fn threshold_spectrum(b: &CreationSequence, method: SpectrumMethod) -> Result<Vec<f64>> {
    match method {
        SpectrumMethod::Full => {
            let a = adjacency_from_sequence(b).to_real();
            Ok(jacobi_eigenvalues(&a, DEFAULT_TOLERANCE)?.eigenvalues)
        }
        SpectrumMethod::Quotient => {
            let q = quotient_matrix(&run_length_encode(b)?);
            let mut values =
                quotient_eigenvalues(&q.matrix, &q.cell_sizes, DEFAULT_TOLERANCE)?.eigenvalues;
            for (&size, &dom) in q.cell_sizes.iter().zip(&q.dominating) {
                let trivial = if dom { -1.0 } else { 0.0 };
                values.extend(std::iter::repeat_n(trivial, size - 1));
            }
            if values.len() != b.len() {
                return Err(Error::Consistency(format!(
                    "quotient bookkeeping produced {} eigenvalues for {} vertices",
                    values.len(),
                    b.len()
                )));
            }
            values.sort_by(f64::total_cmp);
            Ok(values)
        }
    }
}

fn check_scan_order(n: usize) -> Result<()> {
    if !(MIN_SCAN_ORDER..=MAX_SCAN_ORDER).contains(&n) {
        return Err(Error::OrderOutOfRange {
            n,
            min: MIN_SCAN_ORDER,
            max: MAX_SCAN_ORDER,
        });
    }
    Ok(())
}

/// Number of connected threshold creation sequences of length `n`: `2^{n-2}`.
pub fn connected_count(n: usize) -> Result<u64> {
    check_scan_order(n)?;
    Ok(1u64 << (n - 2))
}

/// The `index`-th connected sequence of length `n` in lexicographic order:
/// the interior bits `b_2 .. b_{n-1}` spell `index` in binary, `b_2` most
/// significant.
pub fn connected_sequence_at(n: usize, index: u64) -> Result<CreationSequence> {
    let count = connected_count(n)?;
    if index >= count {
        return Err(Error::IndexOutOfRange {
            index: index as usize,
            max: count as usize - 1,
        });
    }
    let interior = n - 2;
    let bits = std::iter::once(false)
        .chain((0..interior).map(|i| (index >> (interior - 1 - i)) & 1 == 1))
        .chain(std::iter::once(true))
        .collect();
    CreationSequence::new(bits)
}

/// Iterator over all connected threshold creation sequences of length `n`.
#[derive(Debug, Clone)]
pub struct ConnectedSequences {
    n: usize,
    next: u64,
    end: u64,
}

impl Iterator for ConnectedSequences {
    type Item = CreationSequence;

    fn next(&mut self) -> Option<CreationSequence> {
        if self.next >= self.end {
            return None;
        }
        let s = connected_sequence_at(self.n, self.next).expect("index in range");
        self.next += 1;
        Some(s)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for ConnectedSequences {}

/// All `2^{n-2}` sequences with `b_1 = 0`, `b_n = 1`, lexicographic in the
/// interior bits. Supported for `2 <= n <= 26`.
pub fn enumerate_connected_threshold(n: usize) -> Result<ConnectedSequences> {
    let end = connected_count(n)?;
    Ok(ConnectedSequences { n, next: 0, end })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OmegaViolation {
    pub sequence: String,
    pub eigenvalue: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extremum {
    pub sequence: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub n: usize,
    pub graphs_scanned: u64,
    pub omega_violations: Vec<OmegaViolation>,
    /// Smallest positive eigenvalue over all graphs.
    pub min_positive: Option<Extremum>,
    /// Largest negative eigenvalue other than -1 over all graphs.
    pub max_nontrivial_negative: Option<Extremum>,
    pub antiregular_min_positive: Option<f64>,
    pub antiregular_max_negative: Option<f64>,
}

impl ScanReport {
    pub fn omega_passed(&self) -> bool {
        self.omega_violations.is_empty()
    }

    /// Whether `A_n` attains both extremes (ties within [`TRIVIAL_TOLERANCE`]).
    pub fn extremes_attained(&self) -> bool {
        let pos_ok = match (&self.min_positive, self.antiregular_min_positive) {
            (Some(m), Some(a)) => m.value >= a - TRIVIAL_TOLERANCE,
            (None, None) => true,
            _ => false,
        };
        let neg_ok = match (&self.max_nontrivial_negative, self.antiregular_max_negative) {
            (Some(m), Some(a)) => m.value <= a + TRIVIAL_TOLERANCE,
            (None, None) => true,
            _ => false,
        };
        pos_ok && neg_ok
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("scan report serializes");
        v["omega_passed"] = self.omega_passed().into();
        v["extremes_attained"] = self.extremes_attained().into();
        v
    }

    /// Columns `sequence_string, eigenvalue`.
    pub fn write_violations_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["sequence_string", "eigenvalue"])?;
        for v in &self.omega_violations {
            w.write_record([v.sequence.clone(), v.eigenvalue.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn is_trivial(l: f64) -> bool {
    l.abs() <= TRIVIAL_TOLERANCE || (l + 1.0).abs() <= TRIVIAL_TOLERANCE
}

fn smallest_positive(values: &[f64]) -> Option<f64> {
    values
        .iter()
        .copied()
        .filter(|&l| l > TRIVIAL_TOLERANCE)
        .reduce(f64::min)
}

fn largest_nontrivial_negative(values: &[f64]) -> Option<f64> {
    values
        .iter()
        .copied()
        .filter(|&l| l < -TRIVIAL_TOLERANCE && !is_trivial(l))
        .reduce(f64::max)
}

/// Per-graph findings, merged associatively. Ties on value go to the
/// lexicographically smaller sequence, so the merge is order independent.
#[derive(Default)]
struct Partial {
    scanned: u64,
    violations: Vec<(u64, OmegaViolation)>,
    min_positive: Option<(f64, String)>,
    max_negative: Option<(f64, String)>,
}

fn pick(
    a: Option<(f64, String)>,
    b: Option<(f64, String)>,
    prefer_smaller: bool,
) -> Option<(f64, String)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => {
            let ord = x.0.total_cmp(&y.0);
            let ord = if prefer_smaller { ord } else { ord.reverse() };
            match ord.then_with(|| x.1.cmp(&y.1)) {
                Ordering::Greater => Some(y),
                _ => Some(x),
            }
        }
    }
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.scanned += other.scanned;
        self.violations.extend(other.violations);
        self.min_positive = pick(self.min_positive, other.min_positive, true);
        self.max_negative = pick(self.max_negative, other.max_negative, false);
        self
    }
}

fn scan_one(n: usize, index: u64) -> Result<Partial> {
    let b = connected_sequence_at(n, index)?;
    let values = threshold_spectrum(&b, SpectrumMethod::Full)?;
    let name = b.to_string();
    let violations = values
        .iter()
        .filter(|&&l| {
            l > OMEGA_LOW + TRIVIAL_TOLERANCE
                && l < OMEGA_HIGH - TRIVIAL_TOLERANCE
                && !is_trivial(l)
        })
        .map(|&l| {
            (
                index,
                OmegaViolation {
                    sequence: name.clone(),
                    eigenvalue: l,
                },
            )
        })
        .collect();
    Ok(Partial {
        scanned: 1,
        violations,
        min_positive: smallest_positive(&values).map(|v| (v, name.clone())),
        max_negative: largest_nontrivial_negative(&values).map(|v| (v, name)),
    })
}

/// Scans every connected threshold graph on `n` vertices with the full
/// Jacobi spectrum. Runs on the current rayon pool.
pub fn scan(n: usize) -> Result<ScanReport> {
    let count = connected_count(n)?;
    let merged = (0..count as usize)
        .into_par_iter()
        .with_min_len(16)
        .map(|i| scan_one(n, i as u64))
        .try_reduce(Partial::default, |a, b| Ok(a.merge(b)))?;

    let mut violations = merged.violations;
    violations.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then(a.1.eigenvalue.total_cmp(&b.1.eigenvalue))
    });

    let ar = threshold_spectrum(&antiregular_sequence(n)?, SpectrumMethod::Full)?;
    Ok(ScanReport {
        n,
        graphs_scanned: merged.scanned,
        omega_violations: violations.into_iter().map(|(_, v)| v).collect(),
        min_positive: merged
            .min_positive
            .map(|(value, sequence)| Extremum { sequence, value }),
        max_nontrivial_negative: merged
            .max_negative
            .map(|(value, sequence)| Extremum { sequence, value }),
        antiregular_min_positive: smallest_positive(&ar),
        antiregular_max_negative: largest_nontrivial_negative(&ar),
    })
}

/// As [`scan`], on a dedicated pool of `threads` workers.
pub fn scan_with_threads(n: usize, threads: usize) -> Result<ScanReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Consistency(format!("thread pool: {e}")))?;
    pool.install(|| scan(n))
}

/// Looks for nontrivial eigenvalues inside the forbidden interval.
pub fn omega_scan(n: usize) -> Result<ScanReport> {
    scan(n)
}

/// Compares the extreme nontrivial eigenvalues against those of `A_n`.
pub fn extremal_scan(n: usize) -> Result<ScanReport> {
    scan(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> CreationSequence {
        s.parse().unwrap()
    }

    fn runs(v: &[(usize, usize)]) -> Vec<Run> {
        v.iter().map(|&(zeros, ones)| Run { zeros, ones }).collect()
    }

    #[test]
    fn encode_examples() {
        let rl = run_length_encode(&seq("010101")).unwrap();
        assert_eq!(rl.runs(), runs(&[(1, 1), (1, 1), (1, 1)]).as_slice());
        assert_eq!(rl.blocks(), 3);
        assert_eq!(
            run_length_encode(&seq("0011")).unwrap().runs(),
            runs(&[(2, 2)]).as_slice()
        );
        assert_eq!(
            run_length_encode(&seq("00101")).unwrap().runs(),
            runs(&[(2, 1), (1, 1)]).as_slice()
        );
        assert_eq!(
            run_length_encode(&seq("0110")).unwrap_err(),
            Error::Disconnected
        );
        assert_eq!(
            run_length_encode(&seq("0011101")).unwrap().expand(),
            seq("0011101")
        );
    }

    #[test]
    fn run_validation() {
        assert!(RunLengthSequence::new(vec![]).is_err());
        assert!(RunLengthSequence::new(runs(&[(0, 2)])).is_err());
        assert!(RunLengthSequence::new(runs(&[(1, 0)])).is_err());
        assert!(RunLengthSequence::new(runs(&[(1, 1), (0, 2)])).is_ok());
    }

    #[test]
    fn quotient_of_0011() {
        let q = quotient_matrix(&run_length_encode(&seq("0011")).unwrap());
        assert_eq!(q.cell_sizes, vec![2, 2]);
        assert_eq!(q.matrix.to_rows(), vec![vec![0.0, 2.0], vec![2.0, 1.0]]);
        // eigenvalues (1 +- sqrt 17) / 2 together with 0 and -1
        let s = threshold_spectrum(&seq("0011"), SpectrumMethod::Quotient).unwrap();
        let r = 17f64.sqrt();
        let want = [(1.0 - r) / 2.0, -1.0, 0.0, (1.0 + r) / 2.0];
        for (g, w) in s.iter().zip(want) {
            assert!((g - w).abs() < 1e-10, "{s:?}");
        }
    }

    #[test]
    fn empty_cells_are_dropped() {
        let rl = RunLengthSequence::new(runs(&[(1, 1), (0, 2)])).unwrap();
        let q = quotient_matrix(&rl);
        assert_eq!(q.cell_sizes, vec![1, 1, 2]);
        assert_eq!(q.dominating, vec![false, true, true]);
        let full = threshold_spectrum(&rl.expand(), SpectrumMethod::Full).unwrap();
        let mut quot = quotient_eigenvalues(&q.matrix, &q.cell_sizes, 1e-12)
            .unwrap()
            .eigenvalues;
        quot.push(-1.0);
        quot.sort_by(f64::total_cmp);
        for (a, b) in full.iter().zip(&quot) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn spectra_of_small_graphs() {
        let k2 = threshold_spectrum(&seq("01"), SpectrumMethod::Full).unwrap();
        assert!((k2[0] + 1.0).abs() < 1e-12 && (k2[1] - 1.0).abs() < 1e-12);
        let r3 = 3f64.sqrt();
        for m in [SpectrumMethod::Full, SpectrumMethod::Quotient] {
            let s = threshold_spectrum(&seq("0001"), m).unwrap();
            for (g, w) in s.iter().zip([-r3, 0.0, 0.0, r3]) {
                assert!((g - w).abs() < 1e-8, "{m:?} {s:?}");
            }
        }
        assert!(threshold_spectrum(&seq("010"), SpectrumMethod::Quotient).is_err());
        assert_eq!(
            threshold_spectrum(&seq("010"), SpectrumMethod::Full)
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn enumeration_order_and_counts() {
        let three: Vec<String> = enumerate_connected_threshold(3)
            .unwrap()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(three, vec!["001", "011"]);
        assert_eq!(enumerate_connected_threshold(4).unwrap().len(), 4);
        let twelve: Vec<String> = enumerate_connected_threshold(12)
            .unwrap()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(twelve.len(), 1024);
        assert!(twelve.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(enumerate_connected_threshold(2).unwrap().count(), 1);
        assert!(enumerate_connected_threshold(1).is_err());
        assert!(enumerate_connected_threshold(27).is_err());
        assert!(connected_sequence_at(4, 4).is_err());
    }

    #[test]
    fn small_scans() {
        let r = omega_scan(4).unwrap();
        assert_eq!(r.graphs_scanned, 4);
        assert!(r.omega_passed() && r.extremes_attained());
        assert_eq!(r.min_positive.as_ref().unwrap().sequence, "0101");

        let r = scan(2).unwrap();
        assert_eq!(r.graphs_scanned, 1);
        assert!(r.max_nontrivial_negative.is_none());
        assert!(r.extremes_attained());

        let r = scan(3).unwrap();
        assert_eq!(r.graphs_scanned, 2);
        assert!(r.omega_passed());
    }

    #[test]
    fn report_serialization() {
        let r = scan(5).unwrap();
        let v = r.to_json();
        assert_eq!(v["graphs_scanned"], 8);
        assert_eq!(v["omega_passed"], true);
        let mut buf = Vec::new();
        r.write_violations_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "sequence_string,eigenvalue\n"
        );
    }

    #[test]
    fn extremes_detect_a_beaten_antiregular() {
        let mut r = scan(6).unwrap();
        r.antiregular_min_positive = Some(r.min_positive.as_ref().unwrap().value + 0.1);
        assert!(!r.extremes_attained());
    }
}
