//! Plot data. Every figure is a CSV with header `curve,x,y`; a blank line
//! separates curve segments, including the breaks at asymptotes.

use std::f64::consts::PI;

use arspec_core::antiregular::{
    big_f_even, big_f_odd, brackets, f1, f2, g1, g2, solve_spectrum, theta_of_lambda, Parity,
    SolverConfig, OMEGA_HIGH, OMEGA_LOW,
};

use crate::{CliError, Figure, Report};

const THETA_PLOT_LOW: f64 = -5.0;
const THETA_PLOT_HIGH: f64 = 4.0;

struct Segments {
    done: Vec<Vec<u8>>,
    current: Option<csv::Writer<Vec<u8>>>,
}

impl Segments {
    fn new() -> Self {
        Segments {
            done: Vec::new(),
            current: None,
        }
    }

    fn push(&mut self, curve: &str, x: f64, y: f64) -> Result<(), CliError> {
        let w = self
            .current
            .get_or_insert_with(|| csv::Writer::from_writer(Vec::new()));
        w.write_record([curve, &x.to_string(), &y.to_string()])?;
        Ok(())
    }

    fn gap(&mut self) -> Result<(), CliError> {
        if let Some(w) = self.current.take() {
            self.done.push(
                w.into_inner()
                    .map_err(|e| CliError::Internal(e.to_string()))?,
            );
        }
        Ok(())
    }

    fn finish(mut self) -> Result<Vec<u8>, CliError> {
        self.gap()?;
        let mut out = b"curve,x,y\n".to_vec();
        for (i, seg) in self.done.iter().enumerate() {
            if i > 0 {
                out.push(b'\n');
            }
            out.extend_from_slice(seg);
        }
        Ok(out)
    }

    /// Samples `f` on `xs`, breaking the segment at each of the sorted
    /// `breaks` and wherever `f` is undefined or leaves `[-clip, clip]`.
    fn curve(
        &mut self,
        name: &str,
        xs: &[f64],
        breaks: &[f64],
        clip: f64,
        f: impl Fn(f64) -> Option<f64>,
    ) -> Result<(), CliError> {
        let mut next_break = 0;
        for &x in xs {
            while next_break < breaks.len() && x >= breaks[next_break] {
                next_break += 1;
                self.gap()?;
            }
            match f(x) {
                Some(y) if y.is_finite() && y.abs() <= clip => self.push(name, x, y)?,
                _ => self.gap()?,
            }
        }
        self.gap()
    }
}

fn linspace(a: f64, b: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| a + (b - a) * i as f64 / (points - 1) as f64)
        .collect()
}

fn theta_figure(points: usize) -> Result<Vec<u8>, CliError> {
    let left = points / 2;
    let mut s = Segments::new();
    let sample = |l: f64| theta_of_lambda(l).ok();
    s.curve(
        "theta",
        &linspace(THETA_PLOT_LOW, OMEGA_LOW, left),
        &[],
        f64::INFINITY,
        sample,
    )?;
    s.curve(
        "theta",
        &linspace(OMEGA_HIGH, THETA_PLOT_HIGH, points - left),
        &[],
        f64::INFINITY,
        sample,
    )?;
    s.finish()
}

fn curve_figure(odd: bool, k: usize, points: usize) -> Result<Vec<u8>, CliError> {
    let grid = linspace(0.0, PI, points);
    let clip = 4.0 * (k as f64 + 2.0);
    let parity = if odd { Parity::Odd } else { Parity::Even };
    let asymptotes: Vec<f64> = brackets(k, parity)?.gammas[1..].to_vec();
    let mut s = Segments::new();
    if odd {
        s.curve("F", &grid, &asymptotes, clip, |t| big_f_odd(t, k).ok())?;
        s.curve("g1", &grid, &[], clip, |t| Some(g1(t)))?;
        s.curve("g2", &grid, &[], clip, |t| Some(g2(t)))?;
    } else {
        s.curve("F", &grid, &asymptotes, clip, |t| big_f_even(t, k).ok())?;
        s.curve("f1", &grid, &[], clip, |t| Some(f1(t)))?;
        s.curve("f2", &grid, &[], clip, |t| Some(f2(t)))?;
    }
    s.finish()
}

fn density_figure(k: usize) -> Result<Vec<u8>, CliError> {
    let values = solve_spectrum(2 * k, &SolverConfig::default())?.eigenvalues();
    let mut s = Segments::new();
    for (i, l) in values.iter().enumerate() {
        s.push("spectrum", i as f64, *l)?;
    }
    s.finish()
}

pub fn figure_data(which: Figure, k: usize, points: usize) -> Result<Report, CliError> {
    let body = match which {
        Figure::Theta => theta_figure(points)?,
        Figure::EvenCurves => curve_figure(false, k, points)?,
        Figure::OddCurves => curve_figure(true, k, points)?,
        Figure::Density => density_figure(k)?,
    };
    Ok(Report { body, passed: true })
}
