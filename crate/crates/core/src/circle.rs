//! The multiplicative group `C^×` with `L = {±1}` and `H = {±1, ±i}`.
//!
//! `f = P_L φ` for a radial tent `φ`, summed with counting measure on `L`, and
//! `R_{L,H} f(zH) = ½ (f(zL) + f(izL))` with the normalized measure on the two-point
//! space `H/L = {L, iL}`. This is the only floating-point part of the crate.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// A function of `|z|` that vanishes for `|z| >= support`.
#[derive(Clone, Copy)]
pub struct RadialFunction {
    evaluator: fn(f64) -> f64,
    support: f64,
}

impl fmt::Debug for RadialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadialFunction(support {})", self.support)
    }
}

impl RadialFunction {
    pub fn new(evaluator: fn(f64) -> f64, support: f64) -> Self {
        RadialFunction { evaluator, support }
    }

    pub fn support(&self) -> f64 {
        self.support
    }

    pub fn at_radius(&self, r: f64) -> f64 {
        if r >= self.support {
            0.0
        } else {
            (self.evaluator)(r)
        }
    }

    pub fn at(&self, z: Complex64) -> f64 {
        self.at_radius(z.norm())
    }
}

fn tent(r: f64) -> f64 {
    1.0 - r
}

/// `φ(z) = 1 − |z|` on the open unit disc, 0 outside.
pub fn tent_phi() -> RadialFunction {
    RadialFunction::new(tent, 1.0)
}

/// Elements of `L`.
pub const L_ELEMENTS: [Complex64; 2] = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)];
/// Elements of `H`.
pub const H_ELEMENTS: [Complex64; 4] =
    [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, -1.0)];
/// Representatives of `H/L`.
pub const FIBER_REPS: [Complex64; 2] = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)];

fn nonzero(z: Complex64) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        Err(Error::ZeroSample)
    } else {
        Ok(z)
    }
}

/// `f(zL) = P_L φ(zL) = Σ_{l ∈ L} φ(zl)`.
pub fn example_f(phi: &RadialFunction, z: Complex64) -> Result<f64> {
    let z = nonzero(z)?;
    Ok(L_ELEMENTS.iter().map(|&l| phi.at(z * l)).sum())
}

/// `R_{L,H} f(zH) = Σ_{hL ∈ H/L} f(zhL) η(hL)` with `η` of total mass 1.
pub fn example_radon(f: impl Fn(Complex64) -> Result<f64>, z: Complex64) -> Result<f64> {
    let z = nonzero(z)?;
    let weight = 1.0 / FIBER_REPS.len() as f64;
    FIBER_REPS.iter().map(|&h| f(z * h).map(|v| v * weight)).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleRow {
    pub r: f64,
    pub angle: f64,
    pub f: f64,
    pub rf: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub samples: usize,
    pub tolerance: f64,
    /// Largest `|f(zhL) − f(zL)|` over `h ∈ H`.
    pub max_invariance_deviation: f64,
    /// Largest `|R f(zH) − f(zL)|`.
    pub max_deviation: f64,
    /// Samples with `|z| >= 1` where `R f` did not vanish.
    pub support_violations: usize,
    pub passed: bool,
    pub rows: Vec<ExampleRow>,
}

/// `n_radii` logarithmically spaced radii in `[0.01, 2]` times `n_angles` equally spaced angles.
pub fn standard_grid(n_radii: usize, n_angles: usize) -> Vec<Complex64> {
    let (lo, hi) = (0.01f64.ln(), 2.0f64.ln());
    let mut grid = Vec::with_capacity(n_radii * n_angles);
    for i in 0..n_radii {
        let t = if n_radii > 1 { i as f64 / (n_radii - 1) as f64 } else { 0.0 };
        let r = (lo + t * (hi - lo)).exp();
        for k in 0..n_angles {
            let angle = 2.0 * PI * k as f64 / n_angles as f64;
            grid.push(Complex64::from_polar(r, angle));
        }
    }
    grid
}

/// Checks membership of `f` in `C(G/L : H)` and the reconstruction identity at every sample.
pub fn verify_example(grid: &[Complex64], tolerance: f64, exec: Execution) -> Result<ExampleReport> {
    if grid.iter().any(|z| z.norm() == 0.0) {
        return Err(Error::ZeroSample);
    }
    let phi = tent_phi();
    let f = |z: Complex64| example_f(&phi, z);
    let rows = par::map(exec, grid, |&z| -> Result<(ExampleRow, f64, bool)> {
        let fz = f(z)?;
        let invariance = H_ELEMENTS
            .iter()
            .map(|&h| f(z * h).map(|v| (v - fz).abs()))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        let rf = example_radon(f, z)?;
        let support_ok = z.norm() < phi.support() || rf == 0.0;
        let row = ExampleRow { r: z.norm(), angle: z.arg(), f: fz, rf, deviation: (rf - fz).abs() };
        Ok((row, invariance, support_ok))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let max_deviation = rows.iter().map(|(r, _, _)| r.deviation).fold(0.0, f64::max);
    let max_invariance_deviation = rows.iter().map(|(_, i, _)| *i).fold(0.0, f64::max);
    let support_violations = rows.iter().filter(|(_, _, ok)| !ok).count();
    let passed = max_deviation < tolerance && max_invariance_deviation < tolerance && support_violations == 0;
    Ok(ExampleReport {
        samples: rows.len(),
        tolerance,
        max_invariance_deviation,
        max_deviation,
        support_violations,
        passed,
        rows: rows.into_iter().map(|(r, _, _)| r).collect(),
    })
}
