//! Free Hilbert modules `A^N`, their projective summands `P·A^N`, and
//! adjointable operators written as matrices over `A`.
//!
//! Elements are row vectors and operators act from the right, `x ↦ x·T`, so
//! the left `A`-action commutes with every operator and the adjoint is the
//! conjugate transpose over `A`. Internally both are stored block by block:
//! in block `b` (size `n`) an element is an `n × N·n` complex matrix and an
//! `N×M` operator is an `N·n × M·n` complex matrix, with coordinate `i`
//! occupying columns `i·n..(i+1)·n`.

use num_complex::Complex64;

use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::error::{Error, Result};
use crate::linalg::{self, jacobi_eigen, CMat};

/// An `N`-tuple over `A`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleElement {
    spec: AlgebraSpec,
    len: usize,
    blocks: Vec<CMat>,
}

impl ModuleElement {
    pub fn from_entries(spec: &AlgebraSpec, entries: &[AlgebraElement]) -> Result<Self> {
        for e in entries {
            spec.check_same(e.spec())?;
        }
        let len = entries.len();
        let blocks = spec
            .blocks()
            .iter()
            .enumerate()
            .map(|(b, &n)| {
                let mut m = CMat::zeros(n, len * n);
                for (i, e) in entries.iter().enumerate() {
                    m.view_mut((0, i * n), (n, n)).copy_from(e.block(b));
                }
                m
            })
            .collect();
        Ok(Self {
            spec: spec.clone(),
            len,
            blocks,
        })
    }

    pub(crate) fn from_blocks(spec: &AlgebraSpec, len: usize, blocks: Vec<CMat>) -> Self {
        debug_assert!(blocks
            .iter()
            .zip(spec.blocks())
            .all(|(m, &n)| m.nrows() == n && m.ncols() == len * n));
        Self {
            spec: spec.clone(),
            len,
            blocks,
        }
    }

    pub fn zero(spec: &AlgebraSpec, len: usize) -> Self {
        let blocks = spec
            .blocks()
            .iter()
            .map(|&n| CMat::zeros(n, len * n))
            .collect();
        Self::from_blocks(spec, len, blocks)
    }

    /// The standard basis vector `e_i = (0, …, 1_A, …, 0)`.
    pub fn unit(spec: &AlgebraSpec, len: usize, i: usize) -> Self {
        let mut out = Self::zero(spec, len);
        for (b, &n) in spec.blocks().iter().enumerate() {
            out.blocks[b]
                .view_mut((0, i * n), (n, n))
                .copy_from(&CMat::identity(n, n));
        }
        out
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn entry(&self, i: usize) -> AlgebraElement {
        let blocks = self
            .spec
            .blocks()
            .iter()
            .zip(&self.blocks)
            .map(|(&n, m)| m.view((0, i * n), (n, n)).into_owned())
            .collect();
        AlgebraElement::from_blocks_unchecked(&self.spec, blocks)
    }

    pub fn entries(&self) -> Vec<AlgebraElement> {
        (0..self.len).map(|i| self.entry(i)).collect()
    }

    pub(crate) fn block(&self, b: usize) -> &CMat {
        &self.blocks[b]
    }

    /// `⟨x, y⟩ = Σᵢ xᵢ·yᵢ*`.
    pub fn inner(&self, other: &Self) -> Result<AlgebraElement> {
        self.check_compatible(other)?;
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(x, y)| x * y.adjoint())
            .collect();
        Ok(AlgebraElement::from_blocks_unchecked(&self.spec, blocks))
    }

    /// `‖x‖ = ‖⟨x, x⟩‖^{1/2}`.
    pub fn norm(&self) -> f64 {
        self.blocks
            .iter()
            .map(linalg::spectral_norm)
            .fold(0.0, f64::max)
    }

    /// Left module action `a·x`.
    pub fn left_mul(&self, a: &AlgebraElement) -> Result<Self> {
        self.spec.check_same(a.spec())?;
        let blocks = a
            .blocks()
            .iter()
            .zip(&self.blocks)
            .map(|(a, x)| a * x)
            .collect();
        Ok(Self::from_blocks(&self.spec, self.len, blocks))
    }

    pub fn scale(&self, lambda: Complex64) -> Self {
        Self::from_blocks(
            &self.spec,
            self.len,
            self.blocks.iter().map(|m| m * lambda).collect(),
        )
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    /// `‖x − y‖`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.try_sub(other)?.norm())
    }

    /// Concatenation `x ⊕ y ∈ A^{N+M}`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.spec.check_same(&other.spec)?;
        let mut entries = self.entries();
        entries.extend(other.entries());
        Self::from_entries(&self.spec, &entries)
    }

    fn zip(&self, other: &Self, f: impl Fn(&CMat, &CMat) -> CMat) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self::from_blocks(
            &self.spec,
            self.len,
            self.blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| f(a, b))
                .collect(),
        ))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.spec.check_same(&other.spec)?;
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(())
    }
}

/// `⟨x, y⟩` as a free function.
pub fn inner_product(x: &ModuleElement, y: &ModuleElement) -> Result<AlgebraElement> {
    x.inner(y)
}

/// The standard orthonormal basis `e₁, …, e_N` of `A^N`.
pub fn orthonormal_basis(len: usize, spec: &AlgebraSpec) -> Vec<ModuleElement> {
    (0..len)
        .map(|i| ModuleElement::unit(spec, len, i))
        .collect()
}

/// An adjointable map `A^N → A^M`, an `N×M` matrix over `A` acting by
/// `x ↦ x·T`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleOperator {
    spec: AlgebraSpec,
    rows: usize,
    cols: usize,
    blocks: Vec<CMat>,
}

impl ModuleOperator {
    pub fn from_entries(spec: &AlgebraSpec, rows: &[Vec<AlgebraElement>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {ncols}",
                    row.len()
                )));
            }
            for e in row {
                spec.check_same(e.spec())?;
            }
        }
        let blocks = spec
            .blocks()
            .iter()
            .enumerate()
            .map(|(b, &n)| {
                let mut m = CMat::zeros(nrows * n, ncols * n);
                for (i, row) in rows.iter().enumerate() {
                    for (k, e) in row.iter().enumerate() {
                        m.view_mut((i * n, k * n), (n, n)).copy_from(e.block(b));
                    }
                }
                m
            })
            .collect();
        Ok(Self {
            spec: spec.clone(),
            rows: nrows,
            cols: ncols,
            blocks,
        })
    }

    pub(crate) fn from_blocks(
        spec: &AlgebraSpec,
        rows: usize,
        cols: usize,
        blocks: Vec<CMat>,
    ) -> Self {
        debug_assert!(blocks
            .iter()
            .zip(spec.blocks())
            .all(|(m, &n)| m.nrows() == rows * n && m.ncols() == cols * n));
        Self {
            spec: spec.clone(),
            rows,
            cols,
            blocks,
        }
    }

    pub fn identity(spec: &AlgebraSpec, n: usize) -> Self {
        let blocks = spec
            .blocks()
            .iter()
            .map(|&d| CMat::identity(n * d, n * d))
            .collect();
        Self::from_blocks(spec, n, n, blocks)
    }

    pub fn zero(spec: &AlgebraSpec, rows: usize, cols: usize) -> Self {
        let blocks = spec
            .blocks()
            .iter()
            .map(|&d| CMat::zeros(rows * d, cols * d))
            .collect();
        Self::from_blocks(spec, rows, cols, blocks)
    }

    /// Diagonal operator `diag(a₁, …, a_N)`.
    pub fn diagonal(spec: &AlgebraSpec, diag: &[AlgebraElement]) -> Result<Self> {
        let n = diag.len();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| {
                        if i == k {
                            diag[i].clone()
                        } else {
                            AlgebraElement::zero(spec)
                        }
                    })
                    .collect()
            })
            .collect::<Vec<Vec<_>>>();
        Self::from_entries(spec, &rows)
    }

    /// The operator whose `j`-th row is `rows[j]`, so that `e_j·T = rows[j]`.
    pub fn from_row_elements(spec: &AlgebraSpec, rows: &[ModuleElement]) -> Result<Self> {
        let cols = rows.first().map_or(0, ModuleElement::len);
        for r in rows {
            spec.check_same(r.spec())?;
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        let blocks = spec
            .blocks()
            .iter()
            .enumerate()
            .map(|(b, &n)| {
                let mut m = CMat::zeros(rows.len() * n, cols * n);
                for (j, r) in rows.iter().enumerate() {
                    m.view_mut((j * n, 0), (n, cols * n)).copy_from(r.block(b));
                }
                m
            })
            .collect();
        Ok(Self::from_blocks(spec, rows.len(), cols, blocks))
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entry(&self, i: usize, k: usize) -> AlgebraElement {
        let blocks = self
            .spec
            .blocks()
            .iter()
            .zip(&self.blocks)
            .map(|(&n, m)| m.view((i * n, k * n), (n, n)).into_owned())
            .collect();
        AlgebraElement::from_blocks_unchecked(&self.spec, blocks)
    }

    pub fn entries(&self) -> Vec<Vec<AlgebraElement>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|k| self.entry(i, k)).collect())
            .collect()
    }

    /// Row `i` as an element of `A^M`; equals `e_i·T`.
    pub fn row(&self, i: usize) -> ModuleElement {
        let blocks = self
            .spec
            .blocks()
            .iter()
            .zip(&self.blocks)
            .map(|(&n, m)| m.view((i * n, 0), (n, self.cols * n)).into_owned())
            .collect();
        ModuleElement::from_blocks(&self.spec, self.cols, blocks)
    }

    pub(crate) fn block(&self, b: usize) -> &CMat {
        &self.blocks[b]
    }

    pub(crate) fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    /// `(x·T)_k = Σᵢ xᵢ·T_{ik}`.
    pub fn apply(&self, x: &ModuleElement) -> Result<ModuleElement> {
        self.spec.check_same(x.spec())?;
        if x.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "element of length {} cannot be fed to a {}x{} operator",
                x.len(),
                self.rows,
                self.cols
            )));
        }
        let blocks = x
            .blocks
            .iter()
            .zip(&self.blocks)
            .map(|(x, t)| x * t)
            .collect();
        Ok(ModuleElement::from_blocks(&self.spec, self.cols, blocks))
    }

    /// Conjugate transpose over `A`: `adj(T)_{ki} = (T_{ik})*`.
    pub fn adjoint(&self) -> Self {
        Self::from_blocks(
            &self.spec,
            self.cols,
            self.rows,
            self.blocks.iter().map(|m| m.adjoint()).collect(),
        )
    }

    /// Matrix product. Applying the result equals applying `self`, then
    /// `next`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        self.spec.check_same(&next.spec)?;
        if self.cols != next.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, next.rows, next.cols
            )));
        }
        Ok(Self::from_blocks(
            &self.spec,
            self.rows,
            next.cols,
            self.blocks
                .iter()
                .zip(&next.blocks)
                .map(|(a, b)| a * b)
                .collect(),
        ))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, lambda: Complex64) -> Self {
        Self::from_blocks(
            &self.spec,
            self.rows,
            self.cols,
            self.blocks.iter().map(|m| m * lambda).collect(),
        )
    }

    /// Operator norm on `A^N`.
    pub fn norm(&self) -> f64 {
        self.blocks
            .iter()
            .map(linalg::spectral_norm)
            .fold(0.0, f64::max)
    }

    /// `‖T − S‖`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.try_sub(other)?.norm())
    }

    /// `diag(T, S)` acting on `A^{N+N'}`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.spec.check_same(&other.spec)?;
        let blocks = self
            .spec
            .blocks()
            .iter()
            .enumerate()
            .map(|(b, &n)| {
                let mut m = CMat::zeros((self.rows + other.rows) * n, (self.cols + other.cols) * n);
                m.view_mut((0, 0), (self.rows * n, self.cols * n))
                    .copy_from(&self.blocks[b]);
                m.view_mut(
                    (self.rows * n, self.cols * n),
                    (other.rows * n, other.cols * n),
                )
                .copy_from(&other.blocks[b]);
                m
            })
            .collect();
        Ok(Self::from_blocks(
            &self.spec,
            self.rows + other.rows,
            self.cols + other.cols,
            blocks,
        ))
    }

    /// `⟨T(x), x⟩ ≥ 0` for every `x`, decided by the Hermitian spectrum of
    /// each block.
    pub fn is_positive(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        let scale = self.norm().max(1.0);
        self.blocks.iter().all(|m| {
            if linalg::hermitian_residual(m) > tol * scale {
                return false;
            }
            match jacobi_eigen(m) {
                Ok(eig) => eig.values.first().is_none_or(|&v| v >= -tol * scale),
                Err(_) => false,
            }
        })
    }

    fn zip(&self, other: &Self, f: impl Fn(&CMat, &CMat) -> CMat) -> Result<Self> {
        self.spec.check_same(&other.spec)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_blocks(
            &self.spec,
            self.rows,
            self.cols,
            self.blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| f(a, b))
                .collect(),
        ))
    }
}

/// Free-function form of [`ModuleOperator::apply`].
pub fn apply_operator(t: &ModuleOperator, x: &ModuleElement) -> Result<ModuleElement> {
    t.apply(x)
}

/// Free-function form of [`ModuleOperator::adjoint`].
pub fn operator_adjoint(t: &ModuleOperator) -> ModuleOperator {
    t.adjoint()
}

/// Free-function form of [`ModuleOperator::is_positive`].
pub fn operator_is_positive(t: &ModuleOperator, tol: f64) -> bool {
    t.is_positive(tol)
}

/// `H = P·A^N` for an orthogonal projection `P`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveModule {
    projection: ModuleOperator,
}

impl ProjectiveModule {
    /// Validates `P = P* = P²` within `tol·max(1, ‖P‖)`.
    pub fn new(projection: ModuleOperator, tol: f64) -> Result<Self> {
        if !projection.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "projection must be square, got {}x{}",
                projection.rows(),
                projection.cols()
            )));
        }
        let residual = projection_residual(&projection);
        if residual > tol * projection.norm().max(1.0) {
            return Err(Error::NotAProjection { residual });
        }
        Ok(Self { projection })
    }

    /// The whole free module `A^N`.
    pub fn free(spec: &AlgebraSpec, rank: usize) -> Self {
        Self {
            projection: ModuleOperator::identity(spec, rank),
        }
    }

    pub fn spec(&self) -> &AlgebraSpec {
        self.projection.spec()
    }

    pub fn ambient_rank(&self) -> usize {
        self.projection.rows()
    }

    pub fn projection(&self) -> &ModuleOperator {
        &self.projection
    }

    /// `x·P = x` within `tol·max(1, ‖x‖)`.
    pub fn contains(&self, x: &ModuleElement, tol: f64) -> Result<bool> {
        Ok(self.membership_residual(x)? <= tol * x.norm().max(1.0))
    }

    pub(crate) fn membership_residual(&self, x: &ModuleElement) -> Result<f64> {
        x.distance(&self.projection.apply(x)?)
    }

    pub fn project(&self, x: &ModuleElement) -> Result<ModuleElement> {
        self.projection.apply(x)
    }

    /// Complex rank of `P` in every block. For a commutative algebra these
    /// are the pointwise fibre dimensions.
    pub fn block_ranks(&self) -> Vec<usize> {
        self.projection
            .blocks()
            .iter()
            .map(|m| m.trace().re.round().max(0.0) as usize)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.block_ranks().iter().all(|&r| r == 0)
    }

    /// Same module as `other`, judged by `‖P − Q‖`.
    pub fn same_as(&self, other: &Self, tol: f64) -> bool {
        self.projection
            .distance(&other.projection)
            .is_ok_and(|d| d <= tol)
    }

    /// Orthonormal columns spanning the range of `P` in block `b`.
    pub(crate) fn range_basis(&self, b: usize) -> Result<CMat> {
        let eig = jacobi_eigen(self.projection.block(b))?;
        Ok(eig.select_vectors(|v| v > 0.5))
    }

    /// `I − P` on the same ambient module.
    pub fn complement(&self) -> Self {
        let id = ModuleOperator::identity(self.spec(), self.ambient_rank());
        Self {
            projection: id.try_sub(&self.projection).expect("same shape"),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            projection: self.projection.direct_sum(&other.projection)?,
        })
    }
}

/// `max(‖P − P*‖, ‖P − P²‖)`.
pub(crate) fn projection_residual(p: &ModuleOperator) -> f64 {
    p.blocks()
        .iter()
        .map(|m| {
            let sa = linalg::spectral_norm(&(m - m.adjoint()));
            let idem = linalg::spectral_norm(&(m - m * m));
            sa.max(idem)
        })
        .fold(0.0, f64::max)
}

/// Validate `P` and build `P·A^N`.
pub fn make_projective_module(p: ModuleOperator, tol: f64) -> Result<ProjectiveModule> {
    ProjectiveModule::new(p, tol)
}
