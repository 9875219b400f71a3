//! Frames as pieces of orthonormal and Riesz bases of `A^{|J|}`, and the
//! classification of frames by the range projection of their transform.
//!
//! For a normalized tight frame the Gram matrix `Q = [⟨x_k, x_j⟩]` over `A`
//! is a projection, `θ(x_j)` is row `j` of `Q` and the rows `y_j` of `I − Q`
//! complete the family to the standard basis: `x_j ⊕ y_j` is orthonormal in
//! `H ⊕ (I − Q)·A^{|J|}`.

use crate::error::{Error, Result};
use crate::frame::{classify_frame, frame_transform, tighten, FrameAnalysis, ModuleFrame};
use crate::linalg::real;
use crate::module::{ModuleElement, ModuleOperator, ProjectiveModule};
use crate::tol;

/// A frame together with its complement inside `A^{|J|}`.
#[derive(Debug, Clone)]
pub struct DilationResult {
    /// Range of `θ` in `A^{|J|}`.
    pub ambient: ProjectiveModule,
    /// `θ(x_j)`.
    pub embedded: ModuleFrame,
    /// `y_j`, a frame of the complement of `ambient`.
    pub complement: ModuleFrame,
    /// `x_j ⊕ y_j` in `H ⊕ M ⊂ A^{N+|J|}`.
    pub combined: ModuleFrame,
    /// Deviation of the combined Gram matrix from the expected one.
    pub gram_residual: f64,
}

fn require_normalized_tight(frame: &ModuleFrame) -> Result<FrameAnalysis> {
    let a = classify_frame(frame)?;
    if !a.is_normalized_tight {
        return Err(Error::NotNormalizedTight {
            lower_bound: a.lower_bound,
            upper_bound: a.upper_bound,
        });
    }
    Ok(a)
}

fn rows(op: &ModuleOperator) -> Vec<ModuleElement> {
    (0..op.rows()).map(|j| op.row(j)).collect()
}

/// `x_j ⊕ y_j` with `y_j = (I − Q)(e_j)` and `Q` the Gram matrix.
pub fn complement_frame(frame: &ModuleFrame) -> Result<DilationResult> {
    require_normalized_tight(frame)?;
    dilate(frame, frame, 1.0)
}

/// Builds the dilation of `target` from the complement of the normalized
/// tight frame `tight`, scaling the complement by `sqrt(weight)`.
fn dilate(target: &ModuleFrame, tight: &ModuleFrame, weight: f64) -> Result<DilationResult> {
    let spec = target.module().spec().clone();
    let count = target.len();
    let q = tight.gram_matrix();
    let id = ModuleOperator::identity(&spec, count);
    let complement_projection = id.try_sub(&q)?;

    let ambient = ProjectiveModule::new(q.clone(), tol::PROJECTION_EQUALITY)?;
    let complement_module =
        ProjectiveModule::new(complement_projection.clone(), tol::PROJECTION_EQUALITY)?;
    let complement = ModuleFrame::new(complement_module.clone(), rows(&complement_projection))?;

    let theta = target.analysis_matrix();
    let embedded_elements = target
        .elements()
        .iter()
        .map(|x| theta.apply(x))
        .collect::<Result<Vec<_>>>()?;
    let embedded =
        ModuleFrame::with_tolerance(ambient.clone(), embedded_elements, tol::PROJECTION_EQUALITY)?;

    let scale = real(weight.sqrt());
    let combined_elements = target
        .elements()
        .iter()
        .zip(complement.elements())
        .map(|(x, y)| x.direct_sum(&y.scale(scale)))
        .collect::<Result<Vec<_>>>()?;
    let combined_module = target.module().direct_sum(&complement_module)?;
    let combined =
        ModuleFrame::with_tolerance(combined_module, combined_elements, tol::PROJECTION_EQUALITY)?;

    // Gram of x_j ⊕ √w·y_j is Gram(x) + w·(I − Q).
    let expected = target
        .gram_matrix()
        .try_add(&complement_projection.scale(real(weight)))?;
    let gram_residual = combined.gram_matrix().distance(&expected)?;
    Ok(DilationResult {
        ambient,
        embedded,
        complement,
        combined,
        gram_residual,
    })
}

/// Realizes a frame as the first components of a Riesz basis of
/// `H ⊕ M` with the same optimal bounds.
///
/// With `u_j` the tightened frame and `y_j` its complement, the family
/// `x_j ⊕ √c·y_j` is the image of the orthonormal basis `u_j ⊕ y_j` under
/// `G^{1/2} ⊕ √c`, so its bounds are `(min(C, c), max(D, c))`. The weight
/// `c` is chosen inside `[C, D]`, which keeps them at `(C, D)`; `c = 1`
/// whenever `1 ∈ [C, D]`.
pub fn riesz_dilation(frame: &ModuleFrame) -> Result<DilationResult> {
    let t = frame_transform(frame)?;
    let bounds = t.bounds();
    let tight = tighten(frame)?;
    let weight = 1.0f64.clamp(bounds.lower, bounds.upper);
    dilate(frame, &tight, weight)
}

/// `θ·S·θ*` on `A^{|J|}`.
pub fn similarity_projection(frame: &ModuleFrame) -> Result<ModuleOperator> {
    let p = frame_transform(frame)?.range_projection();
    ProjectiveModule::new(p.clone(), tol::PROJECTION_EQUALITY)?;
    Ok(p)
}

/// Which notion of equivalence to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceMode {
    Unitary,
    Similar,
}

/// Strongest relation between two frames of equal length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equivalence {
    Unitary,
    Similar,
    Distinct,
}

impl Equivalence {
    pub fn label(self) -> &'static str {
        match self {
            Equivalence::Unitary => "UNITARY",
            Equivalence::Similar => "SIMILAR",
            Equivalence::Distinct => "DISTINCT",
        }
    }
}

fn same_projection(f: &ModuleFrame, g: &ModuleFrame) -> Result<bool> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch {
            expected: f.len(),
            found: g.len(),
        });
    }
    f.module().spec().check_same(g.module().spec())?;
    let p = similarity_projection(f)?;
    let q = similarity_projection(g)?;
    Ok(p.distance(&q)? <= tol::PROJECTION_EQUALITY)
}

pub fn are_equivalent(f: &ModuleFrame, g: &ModuleFrame, mode: EquivalenceMode) -> Result<bool> {
    if mode == EquivalenceMode::Unitary {
        require_normalized_tight(f)?;
        require_normalized_tight(g)?;
    }
    same_projection(f, g)
}

pub fn classify_equivalence(f: &ModuleFrame, g: &ModuleFrame) -> Result<Equivalence> {
    if !same_projection(f, g)? {
        return Ok(Equivalence::Distinct);
    }
    let tight = classify_frame(f)?.is_normalized_tight && classify_frame(g)?.is_normalized_tight;
    Ok(if tight {
        Equivalence::Unitary
    } else {
        Equivalence::Similar
    })
}

/// `θ(x_j)` as the average of `e_j` and `e_j·(2Q − I)`.
pub fn average_of_bases(frame: &ModuleFrame) -> Result<(Vec<ModuleElement>, Vec<ModuleElement>)> {
    require_normalized_tight(frame)?;
    let spec = frame.module().spec();
    let count = frame.len();
    let q = frame.gram_matrix();
    let id = ModuleOperator::identity(spec, count);
    let reflection = q.scale(real(2.0)).try_sub(&id)?;
    Ok((rows(&id), rows(&reflection)))
}

/// `{x_j·V}` as a frame of the range of `V`, for an orthonormal basis
/// `{x_j}` and a partial isometry `V` supported on its module.
pub fn compress_by_partial_isometry(
    basis: &ModuleFrame,
    v: &ModuleOperator,
) -> Result<ModuleFrame> {
    if !classify_frame(basis)?.is_orthonormal_basis {
        return Err(Error::NotOrthonormalBasis);
    }
    let p = basis.module().projection();
    if v.rows() != p.rows() || v.cols() != p.cols() {
        return Err(Error::ShapeMismatch(format!(
            "partial isometry must be {}x{}, got {}x{}",
            p.rows(),
            p.cols(),
            v.rows(),
            v.cols()
        )));
    }
    let scale = v.norm().max(1.0);
    let support = p.then(v)?.then(p)?.distance(v)?;
    if support > tol::DEFAULT * scale {
        return Err(Error::NotAPartialIsometry { residual: support });
    }
    let initial = v.then(&v.adjoint())?;
    let range = v.adjoint().then(v)?;
    for q in [&initial, &range] {
        let residual = q.then(q)?.distance(q)?;
        if residual > tol::DEFAULT * scale {
            return Err(Error::NotAPartialIsometry { residual });
        }
    }
    let module = ProjectiveModule::new(range, tol::DEFAULT * scale)?;
    let elements = basis
        .elements()
        .iter()
        .map(|x| v.apply(x))
        .collect::<Result<Vec<_>>>()?;
    ModuleFrame::new(module, elements)
}
