//! Regenerates the shipped fixtures: `cargo run --example make_fixtures -- fixtures`.

use std::path::PathBuf;

use cstar_frames::applications::{
    expectation_module_frame, identity_function, sampled_interval_frame, ConditionalExpectation,
    ExpectationKind,
};
use cstar_frames::cli::problem::ProblemFile;
use cstar_frames::{AlgebraSpec, ModuleElement, ModuleFrame, ProjectiveModule};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir)?;

    let spec = AlgebraSpec::new(vec![2, 1])?;
    let e1 = ModuleElement::unit(&spec, 2, 0);
    let e2 = ModuleElement::unit(&spec, 2, 1);
    let onb = ModuleFrame::in_free_module(vec![e1.clone(), e2.clone()])?;
    let redundant = ModuleFrame::in_free_module(vec![e1.clone(), e1.clone(), e2.clone()])?;
    let stretched = ModuleFrame::in_free_module(vec![e1.scale(Complex64::new(2.0, 0.0)), e2])?;
    let file = ProblemFile::new(ProjectiveModule::free(&spec, 2))
        .with_frame("onb", &onb)
        .with_frame("redundant", &redundant)
        .with_frame("stretched", &stretched);
    std::fs::write(dir.join("orthonormal_basis.json"), file.write())?;

    let mut grid: Vec<f64> = (0..32).map(|k| 0.9f64.powi(k)).collect();
    grid.reverse();
    let tight = sampled_interval_frame(&grid, 30)?;
    let with_identity = tight.with_leading(identity_function(&grid)?)?;
    let file = ProblemFile::new(tight.module().clone())
        .with_frame("tight", &tight)
        .with_frame("with_identity_fn", &with_identity);
    std::fs::write(dir.join("interval_sampling.json"), file.write())?;

    let e = ConditionalExpectation::new(ExpectationKind::Diagonal, 2)?;
    let ef = expectation_module_frame(&e)?;
    let file = ProblemFile::new(ef.frame.module().clone())
        .with_frame("u", &ef.frame)
        .with_frame("v", &ef.dual);
    std::fs::write(dir.join("matrix_units.json"), file.write())?;

    Ok(())
}
