//! Conditional expectations of `B = M_n(ℂ)` and their quasi-bases.
//!
//! `B` is a left Hilbert module over the range `A` of `E` with
//! `⟨x, y⟩ = E(x·y*)`. It is encoded in a free module over `A`:
//!
//! * traces, `A = ℂ`: `x` becomes its `n²` entries (divided by `√n` for the
//!   normalized trace), row by row;
//! * diagonal, `A = ℂⁿ`: `x` becomes the `n`-tuple of its columns, entry
//!   `x_{cd}` sitting in coordinate `d` at point `c`.

use std::fmt;

use num_complex::Complex64;

use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::error::{Error, Result};
use crate::frame::ModuleFrame;
use crate::linalg::{real, spectral_norm, CMat};
use crate::module::ModuleElement;
use crate::oracle::SplitMix64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectationKind {
    NormalizedTrace,
    UnnormalizedTrace,
    Diagonal,
}

impl ExpectationKind {
    pub fn name(self) -> &'static str {
        match self {
            ExpectationKind::NormalizedTrace => "normalized_trace",
            ExpectationKind::UnnormalizedTrace => "unnormalized_trace",
            ExpectationKind::Diagonal => "diagonal",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "normalized_trace" => Some(ExpectationKind::NormalizedTrace),
            "unnormalized_trace" => Some(ExpectationKind::UnnormalizedTrace),
            "diagonal" => Some(ExpectationKind::Diagonal),
            _ => None,
        }
    }
}

impl fmt::Display for ExpectationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `E: M_n(ℂ) → A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConditionalExpectation {
    pub kind: ExpectationKind,
    pub n: usize,
}

impl ConditionalExpectation {
    pub fn new(kind: ExpectationKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("matrix size must be positive".into()));
        }
        Ok(Self { kind, n })
    }

    /// The range algebra as a spec.
    pub fn range_spec(&self) -> AlgebraSpec {
        match self.kind {
            ExpectationKind::Diagonal => AlgebraSpec::commutative(self.n).expect("n > 0"),
            _ => AlgebraSpec::scalars(),
        }
    }

    /// `E(x)` as an element of `M_n(ℂ)`.
    pub fn apply(&self, x: &CMat) -> CMat {
        let n = self.n;
        match self.kind {
            ExpectationKind::Diagonal => CMat::from_diagonal(&x.diagonal()),
            ExpectationKind::UnnormalizedTrace => CMat::identity(n, n) * x.trace(),
            ExpectationKind::NormalizedTrace => CMat::identity(n, n) * (x.trace() / n as f64),
        }
    }

    /// `E(x·y*)` in the range algebra.
    pub fn inner(&self, x: &CMat, y: &CMat) -> AlgebraElement {
        let e = self.apply(&(x * y.adjoint()));
        let spec = self.range_spec();
        match self.kind {
            ExpectationKind::Diagonal => {
                let values: Vec<Complex64> = e.diagonal().iter().copied().collect();
                AlgebraElement::from_values(&spec, &values).expect("one value per point")
            }
            _ => AlgebraElement::scalar(&spec, e[(0, 0)]),
        }
    }

    /// Coordinates of `x` in the free module over the range.
    pub fn encode(&self, x: &CMat) -> ModuleElement {
        let n = self.n;
        let spec = self.range_spec();
        match self.kind {
            ExpectationKind::Diagonal => {
                let entries: Vec<AlgebraElement> = (0..n)
                    .map(|d| {
                        let column: Vec<Complex64> = (0..n).map(|c| x[(c, d)]).collect();
                        AlgebraElement::from_values(&spec, &column).expect("one value per point")
                    })
                    .collect();
                ModuleElement::from_entries(&spec, &entries).expect("same spec")
            }
            kind => {
                let w = if kind == ExpectationKind::NormalizedTrace {
                    1.0 / (n as f64).sqrt()
                } else {
                    1.0
                };
                let entries: Vec<AlgebraElement> = (0..n * n)
                    .map(|k| AlgebraElement::scalar(&spec, x[(k / n, k % n)] * w))
                    .collect();
                ModuleElement::from_entries(&spec, &entries).expect("same spec")
            }
        }
    }
}

/// Families with `x = Σ_i u_i·E(v_i·x)` for every `x ∈ M_n(ℂ)`.
#[derive(Debug, Clone)]
pub struct QuasiBasis {
    pub u: Vec<CMat>,
    pub v: Vec<CMat>,
    /// `‖x − Σ u_i·E(v_i·x)‖` on the random probe used for verification.
    pub residual: f64,
}

impl QuasiBasis {
    /// `Σ_i u_i·E(v_i·x)`.
    pub fn expand(&self, e: &ConditionalExpectation, x: &CMat) -> CMat {
        let n = e.n;
        self.u
            .iter()
            .zip(&self.v)
            .fold(CMat::zeros(n, n), |acc, (u, v)| acc + u * e.apply(&(v * x)))
    }
}

fn matrix_unit(n: usize, i: usize, j: usize) -> CMat {
    let mut m = CMat::zeros(n, n);
    m[(i, j)] = real(1.0);
    m
}

/// Matrix units `e_{ij}` (row-major order), scaled by `√n` for the
/// normalized trace, with `v_i = u_i*`. Checked on a random probe.
pub fn quasi_basis(e: &ConditionalExpectation) -> Result<QuasiBasis> {
    let n = e.n;
    let w = if e.kind == ExpectationKind::NormalizedTrace {
        (n as f64).sqrt()
    } else {
        1.0
    };
    let u: Vec<CMat> = (0..n * n)
        .map(|k| matrix_unit(n, k / n, k % n) * real(w))
        .collect();
    let v: Vec<CMat> = u.iter().map(|m| m.adjoint()).collect();
    let mut basis = QuasiBasis {
        u,
        v,
        residual: 0.0,
    };

    let mut rng = SplitMix64::new(n as u64);
    let probe = CMat::from_fn(n, n, |_, _| rng.complex());
    let residual = spectral_norm(&(basis.expand(e, &probe) - &probe));
    if residual > 1e-12 * spectral_norm(&probe).max(1.0) {
        return Err(Error::IdentityFailed { residual });
    }
    basis.residual = residual;
    Ok(basis)
}

/// The quasi-basis `u` as a frame of the encoded module, together with
/// `w_i = v_i*`, the family that reconstructs against it:
/// `x = Σ_i ⟨x, w_i⟩·u_i`.
#[derive(Debug, Clone)]
pub struct ExpectationFrame {
    pub frame: ModuleFrame,
    pub dual: ModuleFrame,
    pub quasi_basis: QuasiBasis,
}

pub fn expectation_module_frame(e: &ConditionalExpectation) -> Result<ExpectationFrame> {
    let qb = quasi_basis(e)?;
    let frame = ModuleFrame::in_free_module(qb.u.iter().map(|m| e.encode(m)).collect())?;
    let dual = ModuleFrame::in_free_module(qb.v.iter().map(|m| e.encode(&m.adjoint())).collect())?;
    Ok(ExpectationFrame {
        frame,
        dual,
        quasi_basis: qb,
    })
}
