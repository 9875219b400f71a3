//! Finite-dimensional C*-algebras `A = M_{n₁}(ℂ) ⊕ … ⊕ M_{n_k}(ℂ)`.
//!
//! An element is stored as one square complex matrix per block. All
//! arithmetic, the order structure and the continuous functional calculus
//! act block by block. A commutative algebra `C(X)` sampled at `m` points is
//! the algebra with `m` blocks of size one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, jacobi_eigen, real, CMat, HermitianEigen};
use crate::tol;

/// Block dimensions `(n₁, …, n_k)` of the algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    blocks: Vec<usize>,
}

impl AlgebraSpec {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidSpec("no blocks".into()));
        }
        if let Some(pos) = blocks.iter().position(|&n| n == 0) {
            return Err(Error::InvalidSpec(format!("block {pos} has size 0")));
        }
        Ok(Self { blocks })
    }

    /// `C(X)` sampled at `points` points.
    pub fn commutative(points: usize) -> Result<Self> {
        Self::new(vec![1; points])
    }

    /// The complex numbers, `M₁(ℂ)`.
    pub fn scalars() -> Self {
        Self { blocks: vec![1] }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Dimension `d = Σ nᵢ` of the faithful block-diagonal representation.
    pub fn rep_dim(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn is_commutative(&self) -> bool {
        self.blocks.iter().all(|&n| n == 1)
    }

    pub(crate) fn check_same(&self, other: &AlgebraSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpecMismatch {
                left: self.blocks.clone(),
                right: other.blocks.clone(),
            })
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|n| format!("M{n}")).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// An element of `A`, one `nᵢ×nᵢ` complex matrix per block.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    spec: AlgebraSpec,
    blocks: Vec<CMat>,
}

impl AlgebraElement {
    pub fn from_blocks(spec: &AlgebraSpec, blocks: Vec<CMat>) -> Result<Self> {
        if blocks.len() != spec.num_blocks() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} blocks, found {}",
                spec.num_blocks(),
                blocks.len()
            )));
        }
        for (i, (b, &n)) in blocks.iter().zip(spec.blocks()).enumerate() {
            if b.nrows() != n || b.ncols() != n {
                return Err(Error::ShapeMismatch(format!(
                    "block {i} is {}x{}, expected {n}x{n}",
                    b.nrows(),
                    b.ncols()
                )));
            }
        }
        Ok(Self {
            spec: spec.clone(),
            blocks,
        })
    }

    pub(crate) fn from_blocks_unchecked(spec: &AlgebraSpec, blocks: Vec<CMat>) -> Self {
        debug_assert_eq!(blocks.len(), spec.num_blocks());
        Self {
            spec: spec.clone(),
            blocks,
        }
    }

    pub fn zero(spec: &AlgebraSpec) -> Self {
        Self::scalar(spec, Complex64::new(0.0, 0.0))
    }

    pub fn one(spec: &AlgebraSpec) -> Self {
        Self::scalar(spec, Complex64::new(1.0, 0.0))
    }

    /// `λ·1_A`.
    pub fn scalar(spec: &AlgebraSpec, lambda: Complex64) -> Self {
        let blocks = spec
            .blocks()
            .iter()
            .map(|&n| CMat::identity(n, n) * lambda)
            .collect();
        Self::from_blocks_unchecked(spec, blocks)
    }

    /// Commutative element from its values at the sample points.
    pub fn from_values(spec: &AlgebraSpec, values: &[Complex64]) -> Result<Self> {
        if !spec.is_commutative() {
            return Err(Error::NotCommutative(spec.blocks().to_vec()));
        }
        if values.len() != spec.num_blocks() {
            return Err(Error::LengthMismatch {
                expected: spec.num_blocks(),
                found: values.len(),
            });
        }
        let blocks = values
            .iter()
            .map(|&v| CMat::from_element(1, 1, v))
            .collect();
        Ok(Self::from_blocks_unchecked(spec, blocks))
    }

    /// Matrix unit `e_{rc}` inside block `block`.
    pub fn matrix_unit(spec: &AlgebraSpec, block: usize, row: usize, col: usize) -> Self {
        let mut out = Self::zero(spec);
        out.blocks[block][(row, col)] = Complex64::new(1.0, 0.0);
        out
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &CMat {
        &self.blocks[i]
    }

    pub fn adjoint(&self) -> Self {
        self.map_blocks(|b| b.adjoint())
    }

    pub fn scale(&self, lambda: Complex64) -> Self {
        self.map_blocks(|b| b * lambda)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_blocks(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_blocks(other, |a, b| a - b)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.zip_blocks(other, |a, b| a * b)
    }

    /// Operator norm: the largest singular value over all blocks.
    pub fn norm(&self) -> f64 {
        self.blocks
            .iter()
            .map(linalg::spectral_norm)
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.norm() <= tol
    }

    /// `‖a − a*‖ ≤ tol·‖a‖`.
    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.self_adjoint_residual() <= tol * self.norm()
    }

    fn self_adjoint_residual(&self) -> f64 {
        self.blocks
            .iter()
            .map(linalg::hermitian_residual)
            .fold(0.0, f64::max)
    }

    /// Block-wise unitary diagonalization of a self-adjoint element.
    pub fn hermitian_eigen(&self) -> Result<SelfAdjointSpectrum> {
        let residual = self.self_adjoint_residual();
        if residual > tol::HERMITIAN * self.norm() {
            return Err(Error::NotSelfAdjoint { residual });
        }
        self.eigen_unchecked()
    }

    fn eigen_unchecked(&self) -> Result<SelfAdjointSpectrum> {
        let blocks = self
            .blocks
            .iter()
            .map(jacobi_eigen)
            .collect::<Result<Vec<_>>>()?;
        Ok(SelfAdjointSpectrum {
            spec: self.spec.clone(),
            blocks,
        })
    }

    /// Self-adjoint within `tol` and every eigenvalue `≥ −tol·max(1, ‖a‖)`.
    pub fn is_positive(&self, tol: f64) -> bool {
        let norm = self.norm();
        if self.self_adjoint_residual() > tol * norm.max(1.0) {
            return false;
        }
        match self.eigen_unchecked() {
            Ok(spec) => spec.min() >= -tol * norm.max(1.0),
            Err(_) => false,
        }
    }

    /// `self ≤ other` in the order of `A`.
    pub fn le(&self, other: &Self, tol: f64) -> Result<bool> {
        Ok(other.try_sub(self)?.is_positive(tol))
    }

    /// Continuous functional calculus on a positive element.
    pub fn apply(&self, func: SpectralFunction, cutoff: f64) -> Result<Self> {
        let spectrum = self.hermitian_eigen()?;
        let norm = self.norm();
        let min = spectrum.min();
        if min < -tol::DEFAULT * norm.max(1.0) {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        if matches!(func, SpectralFunction::Inv | SpectralFunction::InvSqrt) && min <= cutoff {
            return Err(Error::SingularBelowCutoff {
                eigenvalue: min,
                cutoff,
            });
        }
        Ok(match func {
            SpectralFunction::Sqrt => spectrum.map(|x| x.max(0.0).sqrt()),
            SpectralFunction::Inv => spectrum.map(|x| 1.0 / x),
            SpectralFunction::InvSqrt => spectrum.map(|x| 1.0 / x.sqrt()),
            SpectralFunction::SupportProjection => {
                spectrum.map(|x| if x > cutoff { 1.0 } else { 0.0 })
            }
        })
    }

    pub fn sqrt(&self) -> Result<Self> {
        self.apply(SpectralFunction::Sqrt, 0.0)
    }

    fn map_blocks(&self, f: impl Fn(&CMat) -> CMat) -> Self {
        Self::from_blocks_unchecked(&self.spec, self.blocks.iter().map(f).collect())
    }

    fn zip_blocks(&self, other: &Self, f: impl Fn(&CMat, &CMat) -> CMat) -> Result<Self> {
        self.spec.check_same(&other.spec)?;
        Ok(Self::from_blocks_unchecked(
            &self.spec,
            self.blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| f(a, b))
                .collect(),
        ))
    }
}

// Operator sugar for same-spec arithmetic. These panic on a spec mismatch;
// use the `try_*` methods when specs come from untrusted input.
impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_add(rhs).expect("algebra spec mismatch")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_sub(rhs).expect("algebra spec mismatch")
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_mul(rhs).expect("algebra spec mismatch")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(real(-1.0))
    }
}

/// Binary and unary element operations, as a single entry point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ElementOp {
    Add,
    Sub,
    Mul,
    Adjoint,
    Scalar(Complex64),
}

/// Apply `op` to `a` (and `b` for the binary cases).
pub fn element_arithmetic(
    a: &AlgebraElement,
    b: &AlgebraElement,
    op: ElementOp,
) -> Result<AlgebraElement> {
    match op {
        ElementOp::Add => a.try_add(b),
        ElementOp::Sub => a.try_sub(b),
        ElementOp::Mul => a.try_mul(b),
        ElementOp::Adjoint => Ok(a.adjoint()),
        ElementOp::Scalar(lambda) => Ok(a.scale(lambda)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralFunction {
    Sqrt,
    Inv,
    InvSqrt,
    /// Eigenvalues above the cutoff go to 1, the rest to 0.
    SupportProjection,
}

/// Eigenvalues (ascending) and eigenvectors (unitary) per block.
#[derive(Debug, Clone)]
pub struct SelfAdjointSpectrum {
    spec: AlgebraSpec,
    blocks: Vec<HermitianEigen>,
}

impl SelfAdjointSpectrum {
    pub fn eigenvalues(&self, block: usize) -> &[f64] {
        &self.blocks[block].values
    }

    pub fn eigenvectors(&self, block: usize) -> &CMat {
        &self.blocks[block].vectors
    }

    /// All eigenvalues, block by block.
    pub fn all_eigenvalues(&self) -> impl Iterator<Item = f64> + '_ {
        self.blocks.iter().flat_map(|b| b.values.iter().copied())
    }

    pub fn min(&self) -> f64 {
        self.all_eigenvalues().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.all_eigenvalues().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `U·diag(f(λ))·U*` in every block.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> AlgebraElement {
        AlgebraElement::from_blocks_unchecked(
            &self.spec,
            self.blocks.iter().map(|b| b.map(&f)).collect(),
        )
    }

    pub fn reconstruct(&self) -> AlgebraElement {
        self.map(|x| x)
    }
}
