//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the console.
//! Set `UPDATE_GOLDEN=1` to rewrite the CLI golden reports.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use cstar_frames::algebra::{AlgebraElement, AlgebraSpec};
use cstar_frames::applications::{
    expectation_module_frame, hs_sum, identity_function, magic_sum, quasi_basis,
    sampled_interval_frame, ConditionalExpectation, ExpectationKind,
};
use cstar_frames::dilation::{
    are_equivalent, classify_equivalence, complement_frame, compress_by_partial_isometry,
    riesz_dilation, Equivalence, EquivalenceMode,
};
use cstar_frames::frame::{
    canonical_dual, classify_frame, dual_optimality_gap, frame_bounds, frame_transform,
    is_dual_pair, reconstruct, tighten, ModuleFrame,
};
use cstar_frames::module::{ModuleElement, ModuleOperator, ProjectiveModule};
use cstar_frames::oracle::{
    brute_force_bounds, random_instance, represent, Instance, Limits, SplitMix64,
};
use num_complex::Complex64;

const SEEDS: u64 = 200;
const TIME_LIMIT: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;

fn instances() -> Vec<Instance> {
    (0..SEEDS)
        .map(|seed| random_instance(seed, Limits::standard()).expect("instance"))
        .collect()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn probe(rng: &mut SplitMix64, module: &ProjectiveModule) -> ModuleElement {
    module
        .project(&rng.module_element(module.spec(), module.ambient_rank()))
        .unwrap()
}

fn bounds_oracle(all: &[Instance]) -> Outcome {
    let mut worst: f64 = 0.0;
    for (seed, inst) in all.iter().enumerate() {
        let fast = frame_bounds(&inst.frame).map_err(|e| e.to_string())?;
        let slow = brute_force_bounds(&inst.frame).map_err(|e| e.to_string())?;
        let dev = (fast.lower - slow.lower)
            .abs()
            .max((fast.upper - slow.upper).abs());
        worst = worst.max(dev);
        check(dev <= 1e-9, || format!("seed {seed}: deviation {dev:e}"))?;
    }
    Ok(format!(
        "{} instances, max deviation {worst:.1e}",
        all.len()
    ))
}

fn reconstruction(all: &[Instance]) -> Outcome {
    let mut worst: f64 = 0.0;
    for (seed, inst) in all.iter().enumerate() {
        let dual = canonical_dual(&inst.frame).map_err(|e| e.to_string())?;
        let mut rng = SplitMix64::new(1000 + seed as u64);
        for _ in 0..5 {
            let x = probe(&mut rng, &inst.module);
            let (_, err) = reconstruct(&inst.frame, &dual, &x).map_err(|e| e.to_string())?;
            let rel = err / x.norm().max(f64::MIN_POSITIVE);
            worst = worst.max(rel);
            check(err <= 1e-8 * x.norm(), || {
                format!("seed {seed}: error {err:e}")
            })?;
        }
    }
    Ok(format!(
        "{} vectors, max relative error {worst:.1e}",
        5 * all.len()
    ))
}

fn tightening(all: &[Instance]) -> Outcome {
    let mut worst: f64 = 0.0;
    for (seed, inst) in all.iter().enumerate() {
        let a = classify_frame(&tighten(&inst.frame).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let dev = (a.lower_bound - 1.0).abs().max((a.upper_bound - 1.0).abs());
        worst = worst.max(dev);
        check(dev <= 1e-8, || {
            format!("seed {seed}: bounds ({}, {})", a.lower_bound, a.upper_bound)
        })?;
    }
    Ok(format!("max deviation from (1,1) {worst:.1e}"))
}

fn dilation(all: &[Instance]) -> Outcome {
    let (mut gram_worst, mut bound_worst) = (0.0f64, 0.0f64);
    for (seed, inst) in all.iter().enumerate() {
        let u = tighten(&inst.frame).map_err(|e| e.to_string())?;
        let d = complement_frame(&u).map_err(|e| e.to_string())?;
        let id = ModuleOperator::identity(&inst.spec, u.len());
        let dev = d.combined.gram_matrix().distance(&id).unwrap();
        gram_worst = gram_worst.max(dev);
        check(dev <= 1e-8, || format!("seed {seed}: ‖Gram − I‖ = {dev:e}"))?;

        let b = frame_bounds(&inst.frame).unwrap();
        let r = riesz_dilation(&inst.frame).map_err(|e| e.to_string())?;
        let a = classify_frame(&r.combined).unwrap();
        let dev = (a.lower_bound - b.lower)
            .abs()
            .max((a.upper_bound - b.upper).abs());
        bound_worst = bound_worst.max(dev);
        check(dev <= 1e-8, || {
            format!(
                "seed {seed}: bounds ({}, {}) became ({}, {})",
                b.lower, b.upper, a.lower_bound, a.upper_bound
            )
        })?;
        check(a.is_riesz_basis, || {
            format!("seed {seed}: dilation is not a Riesz basis")
        })?;
    }
    Ok(format!(
        "max ‖Gram − I‖ {gram_worst:.1e}, max bound change {bound_worst:.1e}"
    ))
}

fn bidual(all: &[Instance]) -> Outcome {
    let mut worst: f64 = 0.0;
    for (seed, inst) in all.iter().enumerate() {
        let dual = canonical_dual(&inst.frame).map_err(|e| e.to_string())?;
        let back = canonical_dual(&dual).map_err(|e| e.to_string())?;
        for (x, y) in inst.frame.elements().iter().zip(back.elements()) {
            let d = x.distance(y).unwrap();
            worst = worst.max(d);
            check(d <= 1e-8, || format!("seed {seed}: element moved by {d:e}"))?;
        }
    }
    Ok(format!("max elementwise deviation {worst:.1e}"))
}

fn dual_pairs(all: &[Instance]) -> Outcome {
    for (seed, inst) in all.iter().enumerate() {
        let f = &inst.frame;
        let dual = canonical_dual(f).map_err(|e| e.to_string())?;
        check(is_dual_pair(f, &dual).unwrap(), || {
            format!("seed {seed}: canonical dual rejected")
        })?;
        // perturb the dual where the frame element is largest
        let j = (0..f.len())
            .max_by(|&a, &b| f.element(a).norm().total_cmp(&f.element(b).norm()))
            .unwrap();
        let mut rng = SplitMix64::new(5000 + seed as u64);
        let mut direction = probe(&mut rng, &inst.module);
        direction = direction.scale(real(1.0 / direction.norm()));
        let mut elements = dual.elements().to_vec();
        elements[j] = elements[j].try_add(&direction.scale(real(1e-3))).unwrap();
        let perturbed = ModuleFrame::new(inst.module.clone(), elements).unwrap();
        check(!is_dual_pair(f, &perturbed).unwrap(), || {
            format!("seed {seed}: perturbed dual accepted")
        })?;
    }
    Ok(format!(
        "{} canonical duals accepted, {} perturbed duals rejected",
        all.len(),
        all.len()
    ))
}

fn optimality(all: &[Instance]) -> Outcome {
    let mut worst = f64::INFINITY;
    for (seed, inst) in all.iter().enumerate() {
        let f = &inst.frame;
        let t = frame_transform(f).map_err(|e| e.to_string())?;
        let q = t.range_projection();
        let id = ModuleOperator::identity(&inst.spec, f.len());
        let kernel = id.try_sub(&q).unwrap();
        let dual = canonical_dual(f).unwrap();
        let mut rng = SplitMix64::new(9000 + seed as u64);
        for _ in 0..3 {
            let x = probe(&mut rng, &inst.module);
            let canonical = ModuleElement::from_entries(
                &inst.spec,
                &dual
                    .elements()
                    .iter()
                    .map(|y| x.inner(y).unwrap())
                    .collect::<Vec<_>>(),
            )
            .unwrap();
            let w = kernel
                .apply(&rng.module_element(&inst.spec, f.len()))
                .unwrap();
            let alt = canonical.try_add(&w).unwrap();
            let gap = dual_optimality_gap(f, &x, &alt).map_err(|e| format!("seed {seed}: {e}"))?;
            let rep = represent(&gap).matrix;
            let herm = (&rep + rep.adjoint()) * real(0.5);
            let min = herm.symmetric_eigenvalues_min();
            worst = worst.min(min);
            check(min >= -1e-9, || {
                format!("seed {seed}: gap has eigenvalue {min:e}")
            })?;
        }
    }
    Ok(format!(
        "{} alternate decompositions, min gap eigenvalue {worst:.1e}",
        3 * all.len()
    ))
}

trait MinEigen {
    fn symmetric_eigenvalues_min(&self) -> f64;
}

impl MinEigen for nalgebra::DMatrix<Complex64> {
    fn symmetric_eigenvalues_min(&self) -> f64 {
        cstar_frames::oracle::hermitian_eigenvalues(self)[0]
    }
}

fn random_unitary(rng: &mut SplitMix64, spec: &AlgebraSpec, n: usize) -> ModuleOperator {
    // Cayley transform of a random self-adjoint operator
    let r = rng.module_operator(spec, n, n);
    let h = r.try_add(&r.adjoint()).unwrap();
    let i = ModuleOperator::identity(spec, n).scale(Complex64::new(0.0, 1.0));
    let minus = h.try_sub(&i).unwrap();
    let plus = h.try_add(&i).unwrap();
    let entries = plus.entries();
    let mats: Vec<nalgebra::DMatrix<Complex64>> = spec
        .blocks()
        .iter()
        .enumerate()
        .map(|(b, &d)| {
            let mut m = nalgebra::DMatrix::zeros(n * d, n * d);
            for (row, es) in entries.iter().enumerate() {
                for (col, e) in es.iter().enumerate() {
                    m.view_mut((row * d, col * d), (d, d)).copy_from(e.block(b));
                }
            }
            m.try_inverse().unwrap()
        })
        .collect();
    let inverse_entries: Vec<Vec<AlgebraElement>> = (0..n)
        .map(|row| {
            (0..n)
                .map(|col| {
                    let blocks = spec
                        .blocks()
                        .iter()
                        .zip(&mats)
                        .map(|(&d, m)| m.view((row * d, col * d), (d, d)).into_owned())
                        .collect();
                    AlgebraElement::from_blocks(spec, blocks).unwrap()
                })
                .collect()
        })
        .collect();
    let inverse = ModuleOperator::from_entries(spec, &inverse_entries).unwrap();
    minus.then(&inverse).unwrap()
}

fn random_spec(rng: &mut SplitMix64) -> AlgebraSpec {
    let k = rng.range(1, 3);
    AlgebraSpec::new((0..k).map(|_| rng.range(1, 3)).collect()).unwrap()
}

fn orthonormal_derived(rng: &mut SplitMix64, variant: usize) -> ModuleFrame {
    let spec = random_spec(rng);
    let n = rng.range(1, 4);
    let basis: Vec<ModuleElement> = (0..n).map(|i| ModuleElement::unit(&spec, n, i)).collect();
    let u = random_unitary(rng, &spec, n);
    let rotated: Vec<ModuleElement> = basis.iter().map(|e| u.apply(e).unwrap()).collect();
    match variant {
        // rotated basis padded with zeros
        0 => {
            let mut elements = rotated;
            for _ in 0..rng.range(0, 2) {
                elements.push(ModuleElement::zero(&spec, n));
            }
            ModuleFrame::in_free_module(elements).unwrap()
        }
        // each basis vector split by a projection of A
        1 => {
            let mut elements = Vec::new();
            for x in &rotated {
                let a = rng.algebra_element(&spec);
                let p = (&a + &a.adjoint()).hermitian_eigen().unwrap().map(|x| {
                    if x > 0.0 {
                        1.0
                    } else {
                        0.0
                    }
                });
                let q = &AlgebraElement::one(&spec) - &p;
                elements.push(x.left_mul(&p).unwrap());
                elements.push(x.left_mul(&q).unwrap());
            }
            ModuleFrame::in_free_module(elements).unwrap()
        }
        // basis compressed onto a random submodule
        _ => {
            let frame = ModuleFrame::in_free_module(rotated).unwrap();
            let module = rng.projective_module(&spec, n).unwrap();
            compress_by_partial_isometry(&frame, module.projection()).unwrap()
        }
    }
}

fn orthonormal_basis_identity() -> Outcome {
    let mut rng = SplitMix64::new(42);
    let mut families = Vec::new();
    for k in 0..50 {
        families.push(orthonormal_derived(&mut rng, k % 3));
    }
    for seed in 0..50 {
        let inst = random_instance(10_000 + seed, Limits::standard()).unwrap();
        let first = inst.frame.element(0).clone();
        families.push(inst.frame.with_leading(first).unwrap());
    }
    let (mut exceptions, mut bases) = (0, 0);
    for f in &families {
        let a = classify_frame(f).map_err(|e| e.to_string())?;
        let lhs = a.is_riesz_basis && a.is_normalized_tight;
        let rhs = a.is_orthogonal && a.inner_products_are_projections && a.is_frame;
        if lhs != rhs {
            exceptions += 1;
        }
        if lhs {
            bases += 1;
        }
    }
    check(exceptions == 0, || format!("{exceptions} exceptions"))?;
    check(bases > 0 && bases < families.len(), || {
        format!("degenerate family: {bases} bases")
    })?;
    Ok(format!(
        "{} frames ({bases} orthonormal bases), 0 exceptions",
        families.len()
    ))
}

fn commutative_module(rng: &mut SplitMix64) -> (AlgebraSpec, ProjectiveModule) {
    let points = rng.range(1, 16);
    let rank = rng.range(1, 4);
    let spec = AlgebraSpec::commutative(points).unwrap();
    let module = rng.projective_module(&spec, rank).unwrap();
    (spec, module)
}

fn tight_frame(
    rng: &mut SplitMix64,
    module: &ProjectiveModule,
    size: usize,
) -> Result<ModuleFrame, String> {
    let elements = (0..size).map(|_| probe(rng, module)).collect();
    let f = ModuleFrame::new(module.clone(), elements).map_err(|e| e.to_string())?;
    tighten(&f).map_err(|e| e.to_string())
}

fn magic() -> Outcome {
    let mut rng = SplitMix64::new(77);
    for k in 0..50 {
        let (_, module) = commutative_module(&mut rng);
        let expected = module.block_ranks();
        let rank = module.ambient_rank();
        for size in [rank, rank + 1, rank + 3] {
            let f = tight_frame(&mut rng, &module, size)?;
            let m = magic_sum(&f).map_err(|e| format!("instance {k}: {e}"))?;
            check(m == expected, || {
                format!("instance {k}: {m:?} vs ranks {expected:?}")
            })?;
        }
    }
    Ok("50 modules, 3 frames each, sums equal pointwise ranks".into())
}

fn hilbert_schmidt() -> Outcome {
    let mut rng = SplitMix64::new(78);
    let mut worst: f64 = 0.0;
    for k in 0..50 {
        let (spec, module) = commutative_module(&mut rng);
        let rank = module.ambient_rank();
        let f = tight_frame(&mut rng, &module, rank + 1)?;
        let g = tight_frame(&mut rng, &module, rank + 2)?;
        let t = rng.module_operator(&spec, rank, rank);
        let tf = hs_sum(&t, &f).map_err(|e| e.to_string())?;
        let tg = hs_sum(&t, &g).map_err(|e| e.to_string())?;
        let sf = hs_sum(&t.adjoint(), &f).map_err(|e| e.to_string())?;
        for b in 0..spec.num_blocks() {
            let d1 = (tf.block(b)[(0, 0)] - tg.block(b)[(0, 0)]).norm();
            let d2 = (tf.block(b)[(0, 0)] - sf.block(b)[(0, 0)]).norm();
            worst = worst.max(d1).max(d2);
            check(d1 <= 1e-9 && d2 <= 1e-9, || {
                format!("instance {k}, point {b}: {d1:e}, {d2:e}")
            })?;
        }
    }
    Ok(format!(
        "50 modules, max componentwise deviation {worst:.1e}"
    ))
}

fn quasi_bases() -> Outcome {
    let mut worst: f64 = 0.0;
    for kind in [
        ExpectationKind::Diagonal,
        ExpectationKind::UnnormalizedTrace,
        ExpectationKind::NormalizedTrace,
    ] {
        for n in 1..=6 {
            let e = ConditionalExpectation::new(kind, n).unwrap();
            let qb = quasi_basis(&e).map_err(|e| e.to_string())?;
            worst = worst.max(qb.residual);
            check(qb.residual <= 1e-12, || {
                format!("{kind} n={n}: residual {:e}", qb.residual)
            })?;
            let ef = expectation_module_frame(&e).map_err(|e| e.to_string())?;
            check(classify_frame(&ef.frame).unwrap().is_frame, || {
                format!("{kind} n={n}: not a frame")
            })?;
            check(is_dual_pair(&ef.frame, &ef.dual).unwrap(), || {
                format!("{kind} n={n}: not a dual pair")
            })?;
        }
    }
    Ok(format!("3 kinds, n = 1..6, max residual {worst:.1e}"))
}

fn interval() -> Outcome {
    let mut grid: Vec<f64> = (0..32).map(|k| 0.9f64.powi(k)).collect();
    grid.reverse();
    let f = sampled_interval_frame(&grid, 30).map_err(|e| e.to_string())?;
    let b = frame_bounds(&f).unwrap();
    check(
        (b.lower - 1.0).abs() <= 1e-10 && (b.upper - 1.0).abs() <= 1e-10,
        || format!("bounds ({}, {})", b.lower, b.upper),
    )?;
    let g = f.with_leading(identity_function(&grid).unwrap()).unwrap();
    let b = frame_bounds(&g).unwrap();
    let lo = grid
        .iter()
        .map(|t| t * t + 1.0)
        .fold(f64::INFINITY, f64::min);
    let hi = grid
        .iter()
        .map(|t| t * t + 1.0)
        .fold(f64::NEG_INFINITY, f64::max);
    check(
        (b.lower - lo).abs() <= 1e-10 && (b.upper - hi).abs() <= 1e-10,
        || format!("bounds ({}, {}) vs ({lo}, {hi})", b.lower, b.upper),
    )?;
    Ok(format!(
        "32-point grid: (1, 1); with f(t) = t: ({:.12}, {:.12})",
        b.lower, b.upper
    ))
}

fn scalar_frame(values: &[f64]) -> ModuleFrame {
    let spec = AlgebraSpec::scalars();
    let elements = values
        .iter()
        .map(|&v| {
            ModuleElement::from_entries(&spec, &[AlgebraElement::scalar(&spec, real(v))]).unwrap()
        })
        .collect();
    ModuleFrame::in_free_module(elements).unwrap()
}

fn classification(all: &[Instance]) -> Outcome {
    let h = 0.5f64.sqrt();
    let t = (1.0f64 / 3.0).sqrt();
    let fixtures = [
        scalar_frame(&[1.0, 0.0, 0.0]),
        scalar_frame(&[h, h, 0.0]),
        scalar_frame(&[t, t, t]),
    ];
    for (i, f) in fixtures.iter().enumerate() {
        for (j, g) in fixtures.iter().enumerate() {
            let rel = classify_equivalence(f, g).map_err(|e| e.to_string())?;
            let expected = if i == j {
                Equivalence::Unitary
            } else {
                Equivalence::Distinct
            };
            check(rel == expected, || {
                format!("fixtures {i}, {j}: {}", rel.label())
            })?;
            let unitary = are_equivalent(f, g, EquivalenceMode::Unitary).unwrap();
            check(unitary == (i == j), || {
                format!("fixtures {i}, {j}: unitary = {unitary}")
            })?;
        }
    }
    let mut similar = 0;
    for (seed, inst) in all.iter().enumerate() {
        let t = tighten(&inst.frame).unwrap();
        check(
            are_equivalent(&inst.frame, &t, EquivalenceMode::Similar).unwrap(),
            || format!("seed {seed}: not similar to its tightening"),
        )?;
        let rel = classify_equivalence(&inst.frame, &t).unwrap();
        let tight = classify_frame(&inst.frame).unwrap().is_normalized_tight;
        let expected = if tight {
            Equivalence::Unitary
        } else {
            Equivalence::Similar
        };
        check(rel == expected, || format!("seed {seed}: {}", rel.label()))?;
        similar += usize::from(rel == Equivalence::Similar);
    }
    Ok(format!(
        "3 fixtures separated; {similar}/{} instances SIMILAR to their tightening",
        all.len()
    ))
}

struct GoldenCase {
    name: &'static str,
    args: &'static [&'static str],
}

const GOLDEN: &[GoldenCase] = &[
    GoldenCase {
        name: "analyze_onb",
        args: &["analyze", "@orthonormal_basis.json", "--frame", "onb"],
    },
    GoldenCase {
        name: "analyze_redundant",
        args: &["analyze", "@orthonormal_basis.json", "--frame", "redundant"],
    },
    GoldenCase {
        name: "analyze_interval",
        args: &["analyze", "@interval_sampling.json", "--frame", "tight"],
    },
    GoldenCase {
        name: "analyze_interval_identity",
        args: &[
            "analyze",
            "@interval_sampling.json",
            "--frame",
            "with_identity_fn",
        ],
    },
    GoldenCase {
        name: "analyze_units",
        args: &["analyze", "@matrix_units.json", "--frame", "u"],
    },
    GoldenCase {
        name: "analyze_units_json",
        args: &["analyze", "@matrix_units.json", "--frame", "u", "--json"],
    },
    GoldenCase {
        name: "dual_redundant",
        args: &["dual", "@orthonormal_basis.json", "--frame", "redundant"],
    },
    GoldenCase {
        name: "dual_interval",
        args: &["dual", "@interval_sampling.json", "--frame", "tight"],
    },
    GoldenCase {
        name: "dual_units",
        args: &["dual", "@matrix_units.json", "--frame", "u"],
    },
    GoldenCase {
        name: "tighten_stretched",
        args: &["tighten", "@orthonormal_basis.json", "--frame", "stretched"],
    },
    GoldenCase {
        name: "tighten_interval_identity",
        args: &[
            "tighten",
            "@interval_sampling.json",
            "--frame",
            "with_identity_fn",
        ],
    },
    GoldenCase {
        name: "dilate_redundant",
        args: &["dilate", "@orthonormal_basis.json", "--frame", "redundant"],
    },
    GoldenCase {
        name: "dilate_interval",
        args: &["dilate", "@interval_sampling.json", "--frame", "tight"],
    },
    GoldenCase {
        name: "dilate_units",
        args: &["dilate", "@matrix_units.json", "--frame", "u"],
    },
    GoldenCase {
        name: "equiv_onb_stretched",
        args: &[
            "equiv",
            "@orthonormal_basis.json",
            "--frame",
            "onb",
            "--with",
            "stretched",
        ],
    },
    GoldenCase {
        name: "equiv_interval",
        args: &[
            "equiv",
            "@interval_sampling.json",
            "--frame",
            "tight",
            "--with",
            "tight",
        ],
    },
    GoldenCase {
        name: "equiv_units",
        args: &["equiv", "@matrix_units.json", "--frame", "u", "--with", "v"],
    },
    GoldenCase {
        name: "magic_interval",
        args: &["magic", "@interval_sampling.json", "--frame", "tight"],
    },
    GoldenCase {
        name: "magic_units",
        args: &["magic", "@matrix_units.json", "--frame", "u"],
    },
    GoldenCase {
        name: "expectation_diagonal",
        args: &["expectation", "--kind", "diagonal", "--n", "2"],
    },
    GoldenCase {
        name: "expectation_normalized_trace",
        args: &["expectation", "--kind", "normalized-trace", "--n", "3"],
    },
];

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run_cli(args: &[String]) -> Result<(i32, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_cstar-frames"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "{args:?} exited with {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok((out.status.code().unwrap_or(-1), stdout))
}

fn expand(arg: &str, fixtures: &Path) -> String {
    match arg.strip_prefix('@') {
        Some(name) => fixtures.join(name).display().to_string(),
        None => arg.to_string(),
    }
}

fn cli_goldens() -> Outcome {
    let fixtures = crate_dir().join("fixtures");
    let golden_dir = crate_dir().join("tests").join("golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for case in GOLDEN {
        let args: Vec<String> = case.args.iter().map(|a| expand(a, &fixtures)).collect();
        let (_, stdout) = run_cli(&args)?;
        let path = golden_dir.join(format!("{}.txt", case.name));
        if update {
            std::fs::create_dir_all(&golden_dir).map_err(|e| e.to_string())?;
            std::fs::write(&path, &stdout).map_err(|e| e.to_string())?;
        }
        let expected =
            std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        check(stdout == expected, || {
            format!("{} differs from its golden report", case.name)
        })?;
    }

    // regenerated fixture matches the shipped one
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let units = tmp.path().join("units.json");
    run_cli(&[
        "expectation".into(),
        "--kind".into(),
        "diagonal".into(),
        "--n".into(),
        "2".into(),
        "--out".into(),
        units.display().to_string(),
    ])?;
    let shipped = std::fs::read_to_string(fixtures.join("matrix_units.json")).unwrap();
    check(std::fs::read_to_string(&units).unwrap() == shipped, || {
        "expectation --out differs from matrix_units.json".into()
    })?;

    // a frame is SIMILAR to its own tightening
    let tight = tmp.path().join("tight.json");
    run_cli(&[
        "tighten".into(),
        fixtures
            .join("orthonormal_basis.json")
            .display()
            .to_string(),
        "--frame".into(),
        "redundant".into(),
        "--out".into(),
        tight.display().to_string(),
    ])?;
    let (_, report) = run_cli(&[
        "equiv".into(),
        fixtures
            .join("orthonormal_basis.json")
            .display()
            .to_string(),
        "--frame".into(),
        "redundant".into(),
        "--with-file".into(),
        tight.display().to_string(),
        "--with".into(),
        "redundant_tight".into(),
    ])?;
    check(report.contains("relation: SIMILAR\n"), || {
        format!("tightened frame not SIMILAR:\n{report}")
    })?;

    // the dual of a normalized tight frame is the frame itself
    let (_, report) = run_cli(&[
        "dual".into(),
        fixtures
            .join("interval_sampling.json")
            .display()
            .to_string(),
        "--frame".into(),
        "tight".into(),
    ])?;
    check(report.contains("max_distance_to_input: 0\n"), || {
        format!("dual moved the frame:\n{report}")
    })?;

    Ok(format!(
        "{} golden reports match, fixture regeneration and tightening equivalence verified",
        GOLDEN.len()
    ))
}

fn main() {
    let start = Instant::now();
    let all = instances();
    let generation = start.elapsed();

    type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        (
            "bounds agree with the brute-force oracle",
            Box::new(|| bounds_oracle(&all)),
        ),
        (
            "reconstruction through the canonical dual",
            Box::new(|| reconstruction(&all)),
        ),
        (
            "tightening gives bounds (1, 1)",
            Box::new(|| tightening(&all)),
        ),
        ("complement and Riesz dilation", Box::new(|| dilation(&all))),
        ("dual of the dual is the frame", Box::new(|| bidual(&all))),
        (
            "dual-pair criterion and its sensitivity",
            Box::new(|| dual_pairs(&all)),
        ),
        (
            "canonical coefficients have minimal norm",
            Box::new(|| optimality(&all)),
        ),
        (
            "orthonormal bases: riesz ∧ tight ⟺ orthogonal ∧ projections",
            Box::new(orthonormal_basis_identity),
        ),
        ("magic sums equal pointwise ranks", Box::new(magic)),
        (
            "Hilbert–Schmidt sums are frame and adjoint invariant",
            Box::new(hilbert_schmidt),
        ),
        (
            "quasi-bases of conditional expectations",
            Box::new(quasi_bases),
        ),
        ("sampled interval frame", Box::new(interval)),
        (
            "equivalence classification",
            Box::new(|| classification(&all)),
        ),
        (
            "command line fixtures and golden reports",
            Box::new(cli_goldens),
        ),
    ];

    println!(
        "acceptance: {} random instances generated in {:.2?}",
        all.len(),
        generation
    );
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run));
        let elapsed = t.elapsed();
        let outcome = match outcome {
            Ok(Ok(msg)) if elapsed < TIME_LIMIT => Ok(msg),
            Ok(Ok(msg)) => Err(format!("{msg}, but took {elapsed:.2?}")),
            Ok(Err(msg)) => Err(msg),
            Err(_) => Err("panicked".to_string()),
        };
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name} [{elapsed:.2?}]: {msg}", i + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL {:>2} {name} [{elapsed:.2?}]: {msg}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
