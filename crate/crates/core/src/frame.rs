//! Frames of projective modules: optimal bounds in the order of `A`, the
//! frame transform, canonical duals, tightening and reconstruction.
//!
//! For a family `{x_j}` in `H = P·A^N` the analysis map is
//! `θ(x) = (⟨x, x_j⟩)_j`, represented by the `N×|J|` matrix
//! `Θ_{ij} = ((x_j)_i)*`. Its Gram operator `G = θ*θ` is `Θ·Θ*`, and
//! `Σ_j ⟨x, x_j⟩⟨x_j, x⟩ = ⟨x·G, x⟩`. The frame inequality
//! `C·⟨x,x⟩ ≤ ⟨x·G, x⟩ ≤ D·⟨x,x⟩` holds for all `x ∈ H` exactly when
//! `P(G − C)P` and `P(D − G)P` are positive, so the optimal constants are
//! the extreme eigenvalues of `G` compressed to the range of `P`.
//!
//! A frame of the zero module is *vacuous*: every constant satisfies the
//! inequality. It is reported with bounds `(1, 1)` and every flag set, which
//! keeps it a fixed point of dualizing and tightening.

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::linalg::{jacobi_eigen, real, CMat, HermitianEigen};
use crate::module::{ModuleElement, ModuleOperator, ProjectiveModule};
use crate::tol;

/// A finite family `{x_j}` inside a projective module.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleFrame {
    module: ProjectiveModule,
    elements: Vec<ModuleElement>,
}

impl ModuleFrame {
    /// Checks that the family is non-empty and lies in `module`.
    pub fn new(module: ProjectiveModule, elements: Vec<ModuleElement>) -> Result<Self> {
        Self::with_tolerance(module, elements, tol::DEFAULT)
    }

    pub fn with_tolerance(
        module: ProjectiveModule,
        elements: Vec<ModuleElement>,
        tol: f64,
    ) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyFrame);
        }
        for (index, x) in elements.iter().enumerate() {
            module.spec().check_same(x.spec())?;
            if x.len() != module.ambient_rank() {
                return Err(Error::LengthMismatch {
                    expected: module.ambient_rank(),
                    found: x.len(),
                });
            }
            let residual = module.membership_residual(x)?;
            if residual > tol * x.norm().max(1.0) {
                return Err(Error::ElementOutsideModule { index, residual });
            }
        }
        Ok(Self { module, elements })
    }

    /// A frame of the free module `A^N`, `N` taken from the elements.
    pub fn in_free_module(elements: Vec<ModuleElement>) -> Result<Self> {
        let first = elements.first().ok_or(Error::EmptyFrame)?;
        let module = ProjectiveModule::free(first.spec(), first.len());
        Self::new(module, elements)
    }

    pub fn module(&self) -> &ProjectiveModule {
        &self.module
    }

    pub fn elements(&self) -> &[ModuleElement] {
        &self.elements
    }

    pub fn element(&self, j: usize) -> &ModuleElement {
        &self.elements[j]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Images `x_j·T`, kept in the same module. `T` must map the module
    /// into itself.
    pub fn map(&self, t: &ModuleOperator) -> Result<Self> {
        let elements = self
            .elements
            .iter()
            .map(|x| t.apply(x))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.module.clone(), elements)
    }

    /// Reordered copy, `perm[k]` is the old index of the new `k`-th element.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            module: self.module.clone(),
            elements: perm.iter().map(|&j| self.elements[j].clone()).collect(),
        }
    }

    /// Each element multiplied by the real scalar `lambda`.
    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            module: self.module.clone(),
            elements: self
                .elements
                .iter()
                .map(|x| x.scale(real(lambda)))
                .collect(),
        }
    }

    /// Same module, one extra element in front.
    pub fn with_leading(&self, x: ModuleElement) -> Result<Self> {
        let mut elements = Vec::with_capacity(self.len() + 1);
        elements.push(x);
        elements.extend(self.elements.iter().cloned());
        Self::new(self.module.clone(), elements)
    }

    /// The `|J|×|J|` matrix of inner products `[⟨x_k, x_j⟩]_{kj}`.
    pub fn gram_matrix(&self) -> ModuleOperator {
        self.analysis_matrix()
            .adjoint()
            .then(&self.analysis_matrix())
            .expect("shapes agree")
    }

    /// `Θ` with `Θ_{ij} = ((x_j)_i)*`; `x·Θ = θ(x)`.
    pub(crate) fn analysis_matrix(&self) -> ModuleOperator {
        // Rows of Θ* are the frame elements.
        ModuleOperator::from_row_elements(self.module.spec(), &self.elements)
            .expect("frame elements share a spec and length")
            .adjoint()
    }

    pub(crate) fn gram_operator(&self) -> ModuleOperator {
        let theta = self.analysis_matrix();
        theta.then(&theta.adjoint()).expect("shapes agree")
    }
}

/// Optimal frame constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
}

impl FrameBounds {
    pub fn as_tuple(self) -> (f64, f64) {
        (self.lower, self.upper)
    }
}

/// Per-block spectral data of `G` compressed to the module.
#[derive(Debug, Clone)]
struct CompressedGram {
    // orthonormal basis of the range of P, one per block
    range: Vec<CMat>,
    // eigen-decomposition of range*·G·range
    eigen: Vec<HermitianEigen>,
    gram_norm: f64,
}

impl CompressedGram {
    fn new(frame: &ModuleFrame) -> Result<Self> {
        let gram = frame.gram_operator();
        let gram_norm = gram.norm();
        let mut range = Vec::new();
        let mut eigen = Vec::new();
        for b in 0..frame.module.spec().num_blocks() {
            let q = frame.module.range_basis(b)?;
            let compressed = q.adjoint() * gram.block(b) * &q;
            eigen.push(jacobi_eigen(&compressed)?);
            range.push(q);
        }
        Ok(Self {
            range,
            eigen,
            gram_norm,
        })
    }

    fn cutoff(&self) -> f64 {
        tol::PSEUDO_INVERSE * self.gram_norm
    }

    fn bounds(&self) -> FrameBounds {
        let values = || self.eigen.iter().flat_map(|e| e.values.iter().copied());
        if values().next().is_none() {
            return FrameBounds {
                lower: 1.0,
                upper: 1.0,
            };
        }
        let lower = values().fold(f64::INFINITY, f64::min);
        let upper = values().fold(f64::NEG_INFINITY, f64::max);
        FrameBounds {
            lower: if lower <= self.cutoff() { 0.0 } else { lower },
            upper,
        }
    }

    /// `Q·f(Q*GQ)·Q*` in every block; zero off the module.
    fn calculus(&self, frame: &ModuleFrame, f: impl Fn(f64) -> f64) -> ModuleOperator {
        let blocks = self
            .range
            .iter()
            .zip(&self.eigen)
            .map(|(q, eig)| q * eig.map(&f) * q.adjoint())
            .collect();
        let n = frame.module.ambient_rank();
        ModuleOperator::from_blocks(frame.module.spec(), n, n, blocks)
    }
}

/// Optimal `(C, D)` in the order of `A`.
///
/// `C` is reported as 0 when the compressed Gram operator has an eigenvalue
/// below `1e-10·‖G‖`, i.e. when the family does not generate the module.
pub fn frame_bounds(frame: &ModuleFrame) -> Result<FrameBounds> {
    Ok(CompressedGram::new(frame)?.bounds())
}

/// Every classification flag at once.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameAnalysis {
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub is_vacuous: bool,
    pub is_frame: bool,
    pub is_tight: bool,
    pub is_normalized_tight: bool,
    pub is_orthogonal: bool,
    pub inner_products_are_projections: bool,
    pub is_riesz_basis: bool,
    pub is_orthonormal_basis: bool,
}

pub fn classify_frame(frame: &ModuleFrame) -> Result<FrameAnalysis> {
    classify_frame_with(frame, tol::DEFAULT)
}

pub fn classify_frame_with(frame: &ModuleFrame, tol: f64) -> Result<FrameAnalysis> {
    let compressed = CompressedGram::new(frame)?;
    let FrameBounds { lower, upper } = compressed.bounds();
    let is_vacuous = frame.module.is_zero();
    let is_frame = is_vacuous || lower > 0.0;
    let is_tight = is_frame && (upper - lower).abs() <= tol * upper;
    let is_normalized_tight = is_tight && (lower - 1.0).abs() <= tol && (upper - 1.0).abs() <= tol;

    let norms: Vec<AlgebraElement> = frame
        .elements
        .iter()
        .map(|x| x.inner(x))
        .collect::<Result<_>>()?;
    let scale = norms.iter().map(AlgebraElement::norm).fold(1.0, f64::max);

    let mut is_orthogonal = true;
    'outer: for (i, x) in frame.elements.iter().enumerate() {
        for y in &frame.elements[i + 1..] {
            if x.inner(y)?.norm() > tol * scale {
                is_orthogonal = false;
                break 'outer;
            }
        }
    }

    let inner_products_are_projections = norms.iter().all(|p| {
        let p2 = p * p;
        (&p2 - p).norm() <= tol * p.norm().max(1.0)
    });

    let is_riesz_basis =
        is_frame && decompositions_of_zero_are_trivial(frame, compressed.cutoff(), tol)?;
    let is_orthonormal_basis = is_riesz_basis && is_normalized_tight;

    Ok(FrameAnalysis {
        lower_bound: lower,
        upper_bound: upper,
        is_vacuous,
        is_frame,
        is_tight,
        is_normalized_tight,
        is_orthogonal,
        inner_products_are_projections,
        is_riesz_basis,
        is_orthonormal_basis,
    })
}

/// Every coefficient tuple with `Σ a_j·x_j = 0` has `a_j·x_j = 0` for each
/// `j`. Checked on a basis of the complex kernel of the synthesis map, one
/// coefficient row at a time.
fn decompositions_of_zero_are_trivial(frame: &ModuleFrame, cutoff: f64, tol: f64) -> Result<bool> {
    let spec = frame.module.spec();
    let count = frame.len();
    let scale = frame
        .elements
        .iter()
        .map(ModuleElement::norm)
        .fold(1.0, f64::max);
    for (b, &n) in spec.blocks().iter().enumerate() {
        let width = frame.module.ambient_rank() * n;
        let mut stacked = CMat::zeros(count * n, width);
        for (j, x) in frame.elements.iter().enumerate() {
            stacked
                .view_mut((j * n, 0), (n, width))
                .copy_from(x.block(b));
        }
        let eig = jacobi_eigen(&(&stacked * stacked.adjoint()))?;
        let kernel = eig.select_vectors(|v| v <= cutoff);
        for k in kernel.column_iter() {
            let row = k.adjoint();
            for (j, x) in frame.elements.iter().enumerate() {
                let piece = row.columns(j * n, n) * x.block(b);
                if piece.norm() > tol * scale {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `θ`, `G = θ*θ` and `S = G⁻¹` on the module, computed once.
#[derive(Debug, Clone)]
pub struct FrameTransform {
    theta: ModuleOperator,
    gram: ModuleOperator,
    frame_operator: ModuleOperator,
    bounds: FrameBounds,
    compressed: CompressedGram,
    frame: ModuleFrame,
}

pub fn frame_transform(frame: &ModuleFrame) -> Result<FrameTransform> {
    let compressed = CompressedGram::new(frame)?;
    let bounds = compressed.bounds();
    if !frame.module.is_zero() && bounds.lower <= 0.0 {
        return Err(Error::NotAFrame {
            lower_bound: bounds.lower,
        });
    }
    let theta = frame.analysis_matrix();
    let gram = theta.then(&theta.adjoint())?;
    let frame_operator = compressed.calculus(frame, |x| 1.0 / x);
    Ok(FrameTransform {
        theta,
        gram,
        frame_operator,
        bounds,
        compressed,
        frame: frame.clone(),
    })
}

impl FrameTransform {
    /// `θ` as an `N×|J|` matrix over `A`.
    pub fn theta(&self) -> &ModuleOperator {
        &self.theta
    }

    /// `G = θ*θ`.
    pub fn gram(&self) -> &ModuleOperator {
        &self.gram
    }

    /// `S = (θ*θ)⁻¹` on the module, zero on its complement.
    pub fn frame_operator(&self) -> &ModuleOperator {
        &self.frame_operator
    }

    pub fn bounds(&self) -> FrameBounds {
        self.bounds
    }

    pub fn frame(&self) -> &ModuleFrame {
        &self.frame
    }

    /// `θ(x) = (⟨x, x_j⟩)_j`.
    pub fn analysis(&self, x: &ModuleElement) -> Result<ModuleElement> {
        self.theta.apply(x)
    }

    /// `(θ*θ)^{1/2}` on the module.
    pub fn gram_sqrt(&self) -> ModuleOperator {
        self.compressed.calculus(&self.frame, |x| x.max(0.0).sqrt())
    }

    /// `(θ*θ)^{-1/2}` on the module.
    pub fn gram_inv_sqrt(&self) -> ModuleOperator {
        self.compressed.calculus(&self.frame, |x| 1.0 / x.sqrt())
    }

    /// `θ·S·θ*`, the projection onto the range of `θ` in `A^{|J|}`.
    pub fn range_projection(&self) -> ModuleOperator {
        self.theta
            .adjoint()
            .then(&self.frame_operator)
            .and_then(|t| t.then(&self.theta))
            .expect("shapes agree")
    }
}

/// `Σ_j a_j·x_j`.
pub fn synthesis(transform: &FrameTransform, coeffs: &ModuleElement) -> Result<ModuleElement> {
    transform.theta.adjoint().apply(coeffs)
}

/// `{S(x_j)}`.
pub fn canonical_dual(frame: &ModuleFrame) -> Result<ModuleFrame> {
    let t = frame_transform(frame)?;
    frame.map(&t.frame_operator)
}

/// `x̂ = Σ_j ⟨x, y_j⟩·x_j` and `‖x − x̂‖`.
pub fn reconstruct(
    frame: &ModuleFrame,
    dual: &ModuleFrame,
    x: &ModuleElement,
) -> Result<(ModuleElement, f64)> {
    if frame.len() != dual.len() {
        return Err(Error::LengthMismatch {
            expected: frame.len(),
            found: dual.len(),
        });
    }
    let spec = frame.module.spec();
    let mut sum = ModuleElement::zero(spec, frame.module.ambient_rank());
    for (xj, yj) in frame.elements.iter().zip(&dual.elements) {
        sum = sum.try_add(&xj.left_mul(&x.inner(yj)?)?)?;
    }
    let error = x.distance(&sum)?;
    Ok((sum, error))
}

/// `{(θ*θ)^{-1/2}(x_j)}`, a normalized tight frame of the same module.
pub fn tighten(frame: &ModuleFrame) -> Result<ModuleFrame> {
    let t = frame_transform(frame)?;
    frame.map(&t.gram_inv_sqrt())
}

/// `x = Σ_j ⟨x, g_j⟩ f_j` for every `x` in the module.
pub fn is_dual_pair(f: &ModuleFrame, g: &ModuleFrame) -> Result<bool> {
    is_dual_pair_with(f, g, tol::DEFAULT)
}

pub fn is_dual_pair_with(f: &ModuleFrame, g: &ModuleFrame, tol: f64) -> Result<bool> {
    Ok(dual_pair_residual(f, g)? <= tol * dual_pair_scale(f, g))
}

/// `‖P·θ_g·θ_f* − P‖`.
pub fn dual_pair_residual(f: &ModuleFrame, g: &ModuleFrame) -> Result<f64> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch {
            expected: f.len(),
            found: g.len(),
        });
    }
    if !f.module.same_as(&g.module, tol::PROJECTION_EQUALITY) {
        return Err(Error::ModuleMismatch);
    }
    let p = f.module.projection();
    let composite = p
        .then(&g.analysis_matrix())?
        .then(&f.analysis_matrix().adjoint())?;
    composite.distance(p)
}

fn dual_pair_scale(f: &ModuleFrame, g: &ModuleFrame) -> f64 {
    (f.analysis_matrix().norm() * g.analysis_matrix().norm()).max(1.0)
}

/// `Σ_j a_j a_j* − Σ_j c_j c_j*` where `c_j = ⟨x, S(x_j)⟩` are the canonical
/// coefficients. Positive whenever `Σ_j a_j x_j = x`.
pub fn dual_optimality_gap(
    frame: &ModuleFrame,
    x: &ModuleElement,
    alt_coeffs: &ModuleElement,
) -> Result<AlgebraElement> {
    let t = frame_transform(frame)?;
    let synthesized = synthesis(&t, alt_coeffs)?;
    let residual = synthesized.distance(x)?;
    if residual > tol::DEFAULT * x.norm().max(1.0) {
        return Err(Error::NotADecomposition { residual });
    }
    let canonical = canonical_coefficients(&t, x)?;
    alt_coeffs
        .inner(alt_coeffs)?
        .try_sub(&canonical.inner(&canonical)?)
}

/// `(⟨x, S(x_j)⟩)_j`.
pub fn canonical_coefficients(
    transform: &FrameTransform,
    x: &ModuleElement,
) -> Result<ModuleElement> {
    transform.theta.apply(&transform.frame_operator.apply(x)?)
}

/// Whether the normalized tight `frame` stays normalized tight for the inner
/// product `⟨x, y⟩_W = ⟨x·W, y⟩`. Only `W = P` on the module passes.
pub fn inner_product_uniqueness_check(
    frame: &ModuleFrame,
    weight: &ModuleOperator,
) -> Result<bool> {
    inner_product_uniqueness_check_with(frame, weight, tol::DEFAULT)
}

pub fn inner_product_uniqueness_check_with(
    frame: &ModuleFrame,
    weight: &ModuleOperator,
    tol: f64,
) -> Result<bool> {
    let analysis = classify_frame_with(frame, tol)?;
    if !analysis.is_normalized_tight {
        return Err(Error::NotNormalizedTight {
            lower_bound: analysis.lower_bound,
            upper_bound: analysis.upper_bound,
        });
    }
    let n = frame.module.ambient_rank();
    if weight.rows() != n || weight.cols() != n {
        return Err(Error::ShapeMismatch(format!(
            "weight must be {n}x{n}, got {}x{}",
            weight.rows(),
            weight.cols()
        )));
    }
    if !weight.is_positive(tol) {
        return Err(Error::InvalidInnerProduct("weight is not positive".into()));
    }
    let p = frame.module.projection();
    let pwp = p.then(weight)?.then(p)?;
    for b in 0..frame.module.spec().num_blocks() {
        let q = frame.module.range_basis(b)?;
        let compressed = q.adjoint() * pwp.block(b) * &q;
        let eig = jacobi_eigen(&compressed)?;
        if eig
            .values
            .first()
            .is_some_and(|&v| v <= tol::PSEUDO_INVERSE * weight.norm())
        {
            return Err(Error::InvalidInnerProduct(
                "weight is singular on the module".into(),
            ));
        }
    }
    let g = frame.gram_operator();
    let frame_sum = pwp.then(&g)?.then(&pwp)?;
    let residual = frame_sum.distance(&pwp)?;
    Ok(residual <= tol * pwp.norm().max(1.0))
}
