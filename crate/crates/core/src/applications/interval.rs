//! A normalized tight frame of `C([0,1])` as a module over itself, sampled
//! on a grid in `(0, 1]`.
//!
//! `x₁(t) = √(2t − 1)` on `[1/2, 1]`, and for `j ≥ 2` the tent
//! `x_j(t)² = j(j+1)t − j` on `[1/(j+1), 1/j]`, `−j(j−1)t + j` on
//! `[1/j, 1/(j−1)]`, zero elsewhere. Consecutive squares add up to one, so
//! `Σ_{j≤J} x_j(t)² = 1` for `t ≥ 1/J`.

use num_complex::Complex64;

use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::error::{Error, Result};
use crate::frame::ModuleFrame;
use crate::module::ModuleElement;

/// `x_j(t)`, `j ≥ 1`.
pub fn interval_function(j: usize, t: f64) -> f64 {
    assert!(j >= 1);
    let jf = j as f64;
    let square = if j == 1 {
        if t >= 0.5 {
            2.0 * t - 1.0
        } else {
            0.0
        }
    } else if t >= 1.0 / (jf + 1.0) && t <= 1.0 / jf {
        jf * (jf + 1.0) * t - jf
    } else if t > 1.0 / jf && t <= 1.0 / (jf - 1.0) {
        -jf * (jf - 1.0) * t + jf
    } else {
        0.0
    };
    square.max(0.0).sqrt()
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidSpec("empty grid".into()));
    }
    for (index, &t) in grid.iter().enumerate() {
        if !(t > 0.0 && t <= 1.0) {
            return Err(Error::GridOutOfRange { value: t });
        }
        if index > 0 && t <= grid[index - 1] {
            return Err(Error::UnsortedGrid { index });
        }
    }
    Ok(())
}

fn sampled(spec: &AlgebraSpec, grid: &[f64], f: impl Fn(f64) -> f64) -> ModuleElement {
    let values: Vec<Complex64> = grid.iter().map(|&t| Complex64::new(f(t), 0.0)).collect();
    let a = AlgebraElement::from_values(spec, &values).expect("one value per grid point");
    ModuleElement::from_entries(spec, &[a]).expect("same spec")
}

/// `{x_1, …, x_J}` sampled on a strictly increasing grid in `(0, 1]`, a
/// frame of `A¹` with `A = ℂ^{|grid|}`. Needs `J ≥ ⌈1/min(grid)⌉`.
pub fn sampled_interval_frame(grid: &[f64], count: usize) -> Result<ModuleFrame> {
    check_grid(grid)?;
    let required = (1.0 / grid[0]).ceil() as usize;
    if count < required {
        return Err(Error::InsufficientJ {
            given: count,
            required,
        });
    }
    let spec = AlgebraSpec::commutative(grid.len())?;
    let elements = (1..=count)
        .map(|j| sampled(&spec, grid, |t| interval_function(j, t)))
        .collect();
    ModuleFrame::in_free_module(elements)
}

/// `f(t) = t` on the grid.
pub fn identity_function(grid: &[f64]) -> Result<ModuleElement> {
    check_grid(grid)?;
    let spec = AlgebraSpec::commutative(grid.len())?;
    Ok(sampled(&spec, grid, |t| t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{classify_frame, frame_bounds};

    fn geometric_grid() -> Vec<f64> {
        let mut grid: Vec<f64> = (0..32).map(|k| 0.9f64.powi(k)).collect();
        grid.reverse();
        grid
    }

    #[test]
    fn point_values() {
        assert_eq!(interval_function(1, 1.0), 1.0);
        assert!((interval_function(2, 0.4).powi(2) - 0.4).abs() < 1e-15);
        assert!((interval_function(3, 0.4).powi(2) - 0.6).abs() < 1e-15);
        assert_eq!(interval_function(4, 0.4), 0.0);
        let f = sampled_interval_frame(&[1.0], 1).unwrap();
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn squares_sum_to_one() {
        for k in 1..200 {
            let t = k as f64 / 200.0;
            let total: f64 = (1..=200).map(|j| interval_function(j, t).powi(2)).sum();
            assert!((total - 1.0).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn geometric_grid_frame() {
        let grid = geometric_grid();
        let f = sampled_interval_frame(&grid, 30).unwrap();
        let a = classify_frame(&f).unwrap();
        assert!(a.is_normalized_tight);
        assert!((a.lower_bound - 1.0).abs() < 1e-10 && (a.upper_bound - 1.0).abs() < 1e-10);

        let with_identity = f.with_leading(identity_function(&grid).unwrap()).unwrap();
        let b = frame_bounds(&with_identity).unwrap();
        let lo = grid[0] * grid[0] + 1.0;
        let hi = grid[31] * grid[31] + 1.0;
        assert!((b.lower - lo).abs() < 1e-10 && (b.upper - hi).abs() < 1e-10);
        assert!(!classify_frame(&with_identity).unwrap().is_tight);
    }

    #[test]
    fn grid_errors() {
        assert_eq!(
            sampled_interval_frame(&[0.0, 0.5], 4).unwrap_err(),
            Error::GridOutOfRange { value: 0.0 }
        );
        assert_eq!(
            sampled_interval_frame(&[0.5, 1.5], 4).unwrap_err(),
            Error::GridOutOfRange { value: 1.5 }
        );
        assert_eq!(
            sampled_interval_frame(&[0.5, 0.25], 4).unwrap_err(),
            Error::UnsortedGrid { index: 1 }
        );
        assert_eq!(
            sampled_interval_frame(&[0.1, 1.0], 9).unwrap_err(),
            Error::InsufficientJ {
                given: 9,
                required: 10
            }
        );
    }
}
