//! Brute-force cross-checks and the random instance generator.
//!
//! Everything here works on the faithful block-diagonal representation
//! `A ⊂ M_d(ℂ)`, `d = Σ nᵢ`, and never touches the block layout used by the
//! main code. Module operators become `N·d × N·d` matrices whose index
//! `i·d + p` is coordinate `i`, representation row `p`. Eigenvalues are taken
//! from the real symmetric embedding `[[Re, −Im], [Im, Re]]` with nalgebra's
//! own solver, so the bounds oracle shares no numerics with the Jacobi code.
//!
//! The generator is SplitMix64:
//!
//! ```text
//! state += 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! out = z ^ (z >> 31)
//! ```
//!
//! with wrapping arithmetic. A float in `[0, 1)` is `(out >> 11) · 2⁻⁵³`, a
//! symmetric float is `2u − 1`, a complex number draws the real part first,
//! and an integer in `lo..=hi` is `lo + out mod (hi − lo + 1)`.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::error::{Error, Result};
use crate::frame::{FrameBounds, ModuleFrame};
use crate::linalg::{jacobi_eigen, CMat, ONE, ZERO};
use crate::module::{ModuleElement, ModuleOperator, ProjectiveModule};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[−1, 1)`.
    pub fn symmetric(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }

    /// Integer in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        assert!(lo <= hi);
        lo + (self.next_u64() % (hi - lo + 1) as u64) as usize
    }

    pub fn complex(&mut self) -> Complex64 {
        let re = self.symmetric();
        let im = self.symmetric();
        Complex64::new(re, im)
    }

    fn matrix(&mut self, rows: usize, cols: usize) -> CMat {
        // row-major draw order
        let mut m = CMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self.complex();
            }
        }
        m
    }

    pub fn algebra_element(&mut self, spec: &AlgebraSpec) -> AlgebraElement {
        let blocks = spec.blocks().iter().map(|&n| self.matrix(n, n)).collect();
        AlgebraElement::from_blocks_unchecked(spec, blocks)
    }

    pub fn module_element(&mut self, spec: &AlgebraSpec, len: usize) -> ModuleElement {
        let blocks = spec
            .blocks()
            .iter()
            .map(|&n| self.matrix(n, len * n))
            .collect();
        ModuleElement::from_blocks(spec, len, blocks)
    }

    pub fn module_operator(
        &mut self,
        spec: &AlgebraSpec,
        rows: usize,
        cols: usize,
    ) -> ModuleOperator {
        let blocks = spec
            .blocks()
            .iter()
            .map(|&n| self.matrix(rows * n, cols * n))
            .collect();
        ModuleOperator::from_blocks(spec, rows, cols, blocks)
    }

    /// Spectral projection of a random Hermitian operator onto eigenvalues
    /// above zero, i.e. the spectrum of `(H + ‖H‖)/(2‖H‖)` rounded at `0.5`.
    pub fn projective_module(
        &mut self,
        spec: &AlgebraSpec,
        rank: usize,
    ) -> Result<ProjectiveModule> {
        let blocks = spec
            .blocks()
            .iter()
            .map(|&n| {
                let m = self.matrix(rank * n, rank * n);
                let eig = jacobi_eigen(&(&m + m.adjoint()))?;
                let q = eig.select_vectors(|v| v > 0.0);
                Ok(&q * q.adjoint())
            })
            .collect::<Result<Vec<_>>>()?;
        ProjectiveModule::new(
            ModuleOperator::from_blocks(spec, rank, rank, blocks),
            tol::DEFAULT,
        )
    }
}

/// A complex square matrix standing for an algebra element or an operator.
#[derive(Debug, Clone, PartialEq)]
pub struct Represented {
    pub dim: usize,
    pub matrix: DMatrix<Complex64>,
}

fn represent_blocks(spec: &AlgebraSpec, a: &AlgebraElement) -> DMatrix<Complex64> {
    let d = spec.rep_dim();
    let mut out = DMatrix::from_element(d, d, ZERO);
    let mut offset = 0;
    for (b, &n) in spec.blocks().iter().enumerate() {
        let block = a.block(b);
        for r in 0..n {
            for c in 0..n {
                out[(offset + r, offset + c)] = block[(r, c)];
            }
        }
        offset += n;
    }
    out
}

/// Block-diagonal `d×d` matrix of `a`.
pub fn represent(a: &AlgebraElement) -> Represented {
    let matrix = represent_blocks(a.spec(), a);
    Represented {
        dim: matrix.nrows(),
        matrix,
    }
}

/// `rows·d × cols·d` matrix of `T`, entry `T_{ik}` in the `(i, k)` tile.
pub fn represent_operator(t: &ModuleOperator) -> Represented {
    let spec = t.spec();
    let d = spec.rep_dim();
    let mut matrix = DMatrix::from_element(t.rows() * d, t.cols() * d, ZERO);
    for i in 0..t.rows() {
        for k in 0..t.cols() {
            let tile = represent_blocks(spec, &t.entry(i, k));
            matrix.view_mut((i * d, k * d), (d, d)).copy_from(&tile);
        }
    }
    Represented {
        dim: matrix.nrows(),
        matrix,
    }
}

/// `d × N·d` matrix of a row vector `x`, so `⟨x, y⟩ ↦ R(x)·R(y)†`.
pub fn represent_element(x: &ModuleElement) -> DMatrix<Complex64> {
    let spec = x.spec();
    let d = spec.rep_dim();
    let mut out = DMatrix::from_element(d, x.len() * d, ZERO);
    for (i, e) in x.entries().iter().enumerate() {
        out.view_mut((0, i * d), (d, d))
            .copy_from(&represent_blocks(spec, e));
    }
    out
}

/// Eigenvalues of a Hermitian matrix through its real symmetric embedding.
/// Each eigenvalue appears twice.
pub fn hermitian_eigenvalues(h: &DMatrix<Complex64>) -> Vec<f64> {
    let n = h.nrows();
    let mut real = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
            real[(i, j)] = z.re;
            real[(i + n, j + n)] = z.re;
            real[(i, j + n)] = -z.im;
            real[(i + n, j)] = z.im;
        }
    }
    let mut values: Vec<f64> = SymmetricEigen::new(real)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Optimal frame bounds from the spectrum of `PGP − (I − P)` in the
/// representation: the range of `P` carries the compressed Gram operator,
/// its complement sits at `−1`.
pub fn brute_force_bounds(frame: &ModuleFrame) -> Result<FrameBounds> {
    let module = frame.module();
    let p = represent_operator(module.projection()).matrix;
    let dim = p.nrows();
    let mut g = DMatrix::from_element(dim, dim, ZERO);
    for x in frame.elements() {
        let r = represent_element(x);
        g += r.adjoint() * r;
    }
    let id = DMatrix::from_diagonal_element(dim, dim, ONE);
    let shifted = &p * &g * &p - (&id - &p);
    let kept: Vec<f64> = hermitian_eigenvalues(&shifted)
        .into_iter()
        .filter(|&v| v >= -0.5)
        .collect();
    if kept.is_empty() {
        return Ok(FrameBounds {
            lower: 1.0,
            upper: 1.0,
        });
    }
    Ok(FrameBounds {
        lower: kept[0],
        upper: kept[kept.len() - 1],
    })
}

/// Size caps for [`random_instance`]. Every field must be positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_blocks: usize,
    pub max_block_dim: usize,
    pub max_rank: usize,
    pub max_frame_size: usize,
}

impl Limits {
    pub const fn new(
        max_blocks: usize,
        max_block_dim: usize,
        max_rank: usize,
        max_frame_size: usize,
    ) -> Self {
        Self {
            max_blocks,
            max_block_dim,
            max_rank,
            max_frame_size,
        }
    }

    /// Three blocks of size up to three, rank up to four, six elements.
    pub const fn standard() -> Self {
        Self::new(3, 3, 4, 6)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub spec: AlgebraSpec,
    pub module: ProjectiveModule,
    pub frame: ModuleFrame,
}

/// Attempts per stage before giving up.
const MAX_ATTEMPTS: usize = 64;

/// Lower bound a generated frame must clear according to the oracle.
const MIN_LOWER_BOUND: f64 = 0.01;

/// Deterministic random frame. Zero modules are redrawn, and so are frames
/// whose oracle lower bound is below `0.01`.
pub fn random_instance(seed: u64, limits: Limits) -> Result<Instance> {
    if limits.max_blocks == 0
        || limits.max_block_dim == 0
        || limits.max_rank == 0
        || limits.max_frame_size == 0
    {
        return Err(Error::InvalidSpec("limits must be positive".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let num_blocks = rng.range(1, limits.max_blocks);
    let blocks = (0..num_blocks)
        .map(|_| rng.range(1, limits.max_block_dim))
        .collect();
    let spec = AlgebraSpec::new(blocks)?;
    let rank = rng.range(1, limits.max_rank);

    let mut module = None;
    for _ in 0..MAX_ATTEMPTS {
        let candidate = rng.projective_module(&spec, rank)?;
        if !candidate.is_zero() {
            module = Some(candidate);
            break;
        }
    }
    let module = module.ok_or(Error::DegenerateInstance {
        attempts: MAX_ATTEMPTS,
    })?;

    for _ in 0..MAX_ATTEMPTS {
        let size = rng.range(1, limits.max_frame_size);
        let elements = (0..size)
            .map(|_| module.project(&rng.module_element(&spec, rank)))
            .collect::<Result<Vec<_>>>()?;
        let frame = ModuleFrame::new(module.clone(), elements)?;
        if brute_force_bounds(&frame)?.lower > MIN_LOWER_BOUND {
            return Ok(Instance {
                spec,
                module,
                frame,
            });
        }
    }
    Err(Error::DegenerateInstance {
        attempts: MAX_ATTEMPTS,
    })
}
