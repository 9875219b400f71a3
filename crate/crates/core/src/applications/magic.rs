use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::frame::{classify_frame, ModuleFrame};
use crate::module::ModuleOperator;
use crate::tol;

fn require_commutative_tight(frame: &ModuleFrame) -> Result<()> {
    let spec = frame.module().spec();
    if !spec.is_commutative() {
        return Err(Error::NotCommutative(spec.blocks().to_vec()));
    }
    let a = classify_frame(frame)?;
    if !a.is_normalized_tight {
        return Err(Error::NotNormalizedTight {
            lower_bound: a.lower_bound,
            upper_bound: a.upper_bound,
        });
    }
    Ok(())
}

/// `Σ_j ⟨x_j, x_j⟩` for a normalized tight frame over `C(X)`, read off as
/// one non-negative integer per point.
pub fn magic_sum(frame: &ModuleFrame) -> Result<Vec<usize>> {
    require_commutative_tight(frame)?;
    let spec = frame.module().spec();
    let mut total = AlgebraElement::zero(spec);
    for x in frame.elements() {
        total = total.try_add(&x.inner(x)?)?;
    }
    total
        .blocks()
        .iter()
        .enumerate()
        .map(|(index, m)| {
            let value = m[(0, 0)];
            let rounded = value.re.round();
            if rounded < 0.0
                || (value.re - rounded).abs() > tol::INTEGER
                || value.im.abs() > tol::INTEGER
            {
                return Err(Error::NotInteger {
                    index,
                    value: value.re,
                });
            }
            Ok(rounded as usize)
        })
        .collect()
}

/// `Σ_j ⟨x_j·T, x_j·T⟩` with `T` compressed to the module, `P·T·P`.
pub fn hs_sum(t: &ModuleOperator, frame: &ModuleFrame) -> Result<AlgebraElement> {
    require_commutative_tight(frame)?;
    let p = frame.module().projection();
    if t.rows() != p.rows() || t.cols() != p.cols() {
        return Err(Error::ShapeMismatch(format!(
            "operator must be {}x{}, got {}x{}",
            p.rows(),
            p.cols(),
            t.rows(),
            t.cols()
        )));
    }
    let compressed = p.then(t)?.then(p)?;
    let mut total = AlgebraElement::zero(p.spec());
    for x in frame.elements() {
        let y = compressed.apply(x)?;
        total = total.try_add(&y.inner(&y)?)?;
    }
    Ok(total)
}
