//! Construction of the hypercube transfer unitary and its subgraph
//! generalization, plus the dense complex-matrix type they live in.
//!
//! Three independent routes build the bare-hypercube unitary and are kept
//! deliberately separate so they can cross-check each other:
//!
//! * [`build_tensor`]: the d-fold tensor power of the balanced two-mode
//!   coupler, scaled by `1/sqrt(n)`;
//! * [`build_closed_form`]: per-element evaluation from the Rademacher
//!   sign sums (every entry is `i^q / sqrt(n)` for an integer `q`);
//! * [`build_spectral`]: evolution `exp(i*kappa*t*A)` of the adjacency
//!   matrix through its analytic Walsh-Hadamard eigenbasis, which at the
//!   quarter-period `t = pi/(4*kappa)` lands on the same unitary with no
//!   global-phase adjustment.
//!
//! Index convention for the generalized graph: the hypercube vertex is the
//! slow index and the subgraph slot the fast one, i.e. mode `j` (1-based)
//! belongs to vertex `ceil(j/m)` and slot `1 + (j-1) mod m`.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symmetry::rademacher;

/// Largest supported hypercube dimension for full-matrix work.
pub const MAX_HC_DIMENSION: usize = 12;
/// Largest supported total mode count (4096 = 2^12).
pub const MAX_TOTAL_MODES: usize = 1 << MAX_HC_DIMENSION;
/// Unitarity tolerance required of user-supplied subunitaries.
pub const SUBUNITARY_TOLERANCE: f64 = 1e-8;

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::ONE);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
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

    /// 0-based element access.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.cols + col] = value;
    }

    pub fn scale(&mut self, factor: Complex64) {
        for v in &mut self.data {
            *v *= factor;
        }
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Max-norm of `A†A - I`.
    pub fn unitarity_residual(&self) -> f64 {
        assert!(self.is_square());
        let product = self.dagger().matmul(self);
        let mut residual = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expect = if i == j {
                    Complex64::ONE
                } else {
                    Complex64::ZERO
                };
                residual = residual.max((product.get(i, j) - expect).norm());
            }
        }
        residual
    }

    pub fn require_unitary(&self, tolerance: f64) -> Result<()> {
        let residual = self.unitarity_residual();
        if residual > tolerance {
            return Err(Error::NotUnitary {
                residual,
                tolerance,
            });
        }
        Ok(())
    }

    /// Largest entrywise absolute difference between two same-shape matrices.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl std::fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows.min(8) {
            write!(f, "  ")?;
            for c in 0..self.cols.min(8) {
                let v = self.get(r, c);
                write!(f, "{:+.3}{:+.3}i ", v.re, v.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Exact power of the imaginary unit: `1, i, -1, -i` by quarter turns.
fn quarter_turn(q: i64) -> Complex64 {
    match q.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn check_dimension(hc_dimension: usize) -> Result<()> {
    if !(1..=MAX_HC_DIMENSION).contains(&hc_dimension) {
        return Err(Error::DimensionBound {
            dimension: hc_dimension,
            max: MAX_HC_DIMENSION,
        });
    }
    Ok(())
}

/// Hypercube unitary as the d-fold tensor power of the balanced coupler.
pub fn build_tensor(hc_dimension: usize) -> Result<ComplexMatrix> {
    check_dimension(hc_dimension)?;
    let coupler = ComplexMatrix::from_fn(2, 2, |r, c| {
        if r == c {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 1.0)
        }
    });
    let mut matrix = ComplexMatrix::identity(1);
    for _ in 0..hc_dimension {
        matrix = matrix.kron(&coupler);
    }
    let n = 1usize << hc_dimension;
    matrix.scale(Complex64::new(1.0 / (n as f64).sqrt(), 0.0));
    Ok(matrix)
}

/// Phase sum underlying the closed-form element: quarter turns accumulated
/// from the Rademacher sign products of row and column, with `modes` as the
/// modulus (equal to `2^d` on the bare graph, `2^d * m` on generalized ones).
fn phase_quarter_turns(row: usize, col: usize, hc_dimension: usize, modes: usize) -> Result<i64> {
    let mut sign_sum: i64 = 0;
    for l in 1..=hc_dimension {
        let p = 1usize << l;
        sign_sum += (rademacher(row, p, modes)? * rademacher(col, p, modes)?) as i64;
    }
    // d - sum is always even, so the phase is an exact quarter-turn count.
    Ok((hc_dimension as i64 - sign_sum) / 2)
}

/// Closed-form matrix element of the bare hypercube unitary; `row` and
/// `col` are 1-based mode numbers.
pub fn closed_form_element(row: usize, col: usize, hc_dimension: usize) -> Result<Complex64> {
    check_dimension(hc_dimension)?;
    let n = 1usize << hc_dimension;
    if row < 1 || row > n {
        return Err(Error::ModeOutOfRange {
            mode: row,
            modes: n,
        });
    }
    if col < 1 || col > n {
        return Err(Error::ModeOutOfRange {
            mode: col,
            modes: n,
        });
    }
    let q = phase_quarter_turns(row, col, hc_dimension, n)?;
    Ok(quarter_turn(q) / (n as f64).sqrt())
}

/// Hypercube unitary assembled entirely from closed-form elements.
pub fn build_closed_form(hc_dimension: usize) -> Result<ComplexMatrix> {
    check_dimension(hc_dimension)?;
    let n = 1usize << hc_dimension;
    let scale = 1.0 / (n as f64).sqrt();
    let mut matrix = ComplexMatrix::zeros(n, n);
    for row in 1..=n {
        for col in 1..=n {
            let q = phase_quarter_turns(row, col, hc_dimension, n)?;
            matrix.set(row - 1, col - 1, quarter_turn(q) * scale);
        }
    }
    Ok(matrix)
}

/// In-place unnormalized Walsh-Hadamard butterfly.
fn walsh_hadamard_transform(data: &mut [Complex64]) {
    let n = data.len();
    let mut h = 1;
    while h < n {
        let mut i = 0;
        while i < n {
            for j in i..i + h {
                let x = data[j];
                let y = data[j + h];
                data[j] = x + y;
                data[j + h] = x - y;
            }
            i += 2 * h;
        }
        h *= 2;
    }
}

/// Evolution `exp(i * kappa * t * A)` of the hypercube adjacency matrix,
/// evaluated through its analytic spectral decomposition: the eigenvectors
/// are the Walsh-Hadamard vectors and the eigenvalue of vector `v` is
/// `d - 2*popcount(v)`. At `t = pi/(4*kappa)` this reproduces the transfer
/// unitary entrywise, with no global-phase adjustment.
pub fn build_spectral(hc_dimension: usize, kappa: f64, time: f64) -> Result<ComplexMatrix> {
    check_dimension(hc_dimension)?;
    if kappa <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "coupling rate must be positive, got {}",
            kappa
        )));
    }
    if time < 0.0 {
        return Err(Error::InvalidInput(format!(
            "evolution time must be non-negative, got {}",
            time
        )));
    }
    let n = 1usize << hc_dimension;
    // Only d + 1 distinct eigenphases exist, one per popcount.
    let eigenphase: Vec<Complex64> = (0..=hc_dimension)
        .map(|ones| {
            let eigenvalue = hc_dimension as f64 - 2.0 * ones as f64;
            Complex64::from_polar(1.0, kappa * time * eigenvalue)
        })
        .collect();
    let mut matrix = ComplexMatrix::zeros(n, n);
    let mut column = vec![Complex64::ZERO; n];
    for k in 0..n {
        column.fill(Complex64::ZERO);
        column[k] = Complex64::ONE;
        walsh_hadamard_transform(&mut column);
        for (v, value) in column.iter_mut().enumerate() {
            *value *= eigenphase[v.count_ones() as usize];
        }
        walsh_hadamard_transform(&mut column);
        let scale = 1.0 / n as f64;
        for (j, value) in column.iter().enumerate() {
            matrix.set(j, k, value * scale);
        }
    }
    Ok(matrix)
}

/// The quarter-period evolution time `pi / (4 * kappa)` at which the
/// spectral route lands on the transfer unitary.
pub fn quarter_period(kappa: f64) -> f64 {
    FRAC_PI_4 / kappa
}

/// Geometry of a (possibly subgraph-decorated) hypercube interferometer.
#[derive(Clone, Debug)]
pub struct HypercubeSpec {
    hc_dimension: usize,
    subgraph_modes: usize,
    subunitary: Option<ComplexMatrix>,
}

impl HypercubeSpec {
    /// Bare hypercube of the given dimension.
    pub fn bare(hc_dimension: usize) -> Result<Self> {
        Self::new(hc_dimension, 1, None)
    }

    pub fn new(
        hc_dimension: usize,
        subgraph_modes: usize,
        subunitary: Option<ComplexMatrix>,
    ) -> Result<Self> {
        check_dimension(hc_dimension)?;
        if subgraph_modes == 0 {
            return Err(Error::InvalidInput(
                "subgraph size must be at least 1".into(),
            ));
        }
        let modes = (1usize << hc_dimension) * subgraph_modes;
        if modes > MAX_TOTAL_MODES {
            return Err(Error::DimensionBound {
                dimension: modes,
                max: MAX_TOTAL_MODES,
            });
        }
        match (&subunitary, subgraph_modes) {
            (None, 1) => {}
            (Some(_), 1) | (None, _) => {
                return Err(Error::InvalidInput(
                    "a subunitary is required exactly when the subgraph has more than one mode"
                        .into(),
                ));
            }
            (Some(sub), m) => {
                if sub.rows() != m || sub.cols() != m {
                    return Err(Error::MatrixShape {
                        rows: sub.rows(),
                        cols: sub.cols(),
                        expected_rows: m,
                        expected_cols: m,
                    });
                }
                sub.require_unitary(SUBUNITARY_TOLERANCE)?;
            }
        }
        Ok(Self {
            hc_dimension,
            subgraph_modes,
            subunitary,
        })
    }

    pub fn hc_dimension(&self) -> usize {
        self.hc_dimension
    }

    pub fn subgraph_modes(&self) -> usize {
        self.subgraph_modes
    }

    pub fn subunitary(&self) -> Option<&ComplexMatrix> {
        self.subunitary.as_ref()
    }

    /// Total mode count `2^d * m`.
    pub fn modes(&self) -> usize {
        (1usize << self.hc_dimension) * self.subgraph_modes
    }

    /// Subgraph slot of a 1-based mode: `1 + (j-1) mod m`.
    pub fn slot(&self, mode: usize) -> usize {
        1 + (mode - 1) % self.subgraph_modes
    }

    /// Hypercube vertex of a 1-based mode: `ceil(j/m)`.
    pub fn vertex(&self, mode: usize) -> usize {
        (mode - 1) / self.subgraph_modes + 1
    }
}

/// Transfer unitary of a generalized hypercube: element `(j,k)` is the
/// subunitary element of the two slots times the closed-form hypercube
/// phase of the two vertices. Reduces to [`build_tensor`] when `m = 1`.
pub fn build_generalized(spec: &HypercubeSpec) -> Result<ComplexMatrix> {
    let n = spec.modes();
    let d = spec.hc_dimension();
    let scale = 1.0 / ((1usize << d) as f64).sqrt();
    let mut matrix = ComplexMatrix::zeros(n, n);
    for j in 1..=n {
        for k in 1..=n {
            let sub = match spec.subunitary() {
                Some(a) => a.get(spec.slot(j) - 1, spec.slot(k) - 1),
                None => Complex64::ONE,
            };
            if sub == Complex64::ZERO {
                continue;
            }
            let q = phase_quarter_turns(j, k, d, n)?;
            matrix.set(j - 1, k - 1, sub * quarter_turn(q) * scale);
        }
    }
    Ok(matrix)
}

/// Haar-random unitary drawn from a seeded deterministic generator, via QR
/// orthonormalization of a complex Gaussian matrix.
#[allow(clippy::needless_range_loop)]
pub fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    assert!(dim >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gauss = || {
        // Box-Muller transform from two uniforms.
        let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
        let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        (-2.0 * u1.ln()).sqrt() * u2.cos()
    };
    let mut columns: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| (0..dim).map(|_| Complex64::new(gauss(), gauss())).collect())
        .collect();
    // Modified Gram-Schmidt, run twice for orthogonality at machine
    // precision. The resulting triangular diagonal is real positive, which
    // is the normalization that makes the distribution Haar.
    for _pass in 0..2 {
        for k in 0..dim {
            for prev in 0..k {
                let overlap: Complex64 = (0..dim)
                    .map(|i| columns[prev][i].conj() * columns[k][i])
                    .sum();
                for i in 0..dim {
                    let adjustment = overlap * columns[prev][i];
                    columns[k][i] -= adjustment;
                }
            }
            let norm: f64 = columns[k].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            for v in &mut columns[k] {
                *v /= norm;
            }
        }
    }
    ComplexMatrix::from_fn(dim, dim, |r, c| columns[c][r])
}

/// JSON schema for matrices on disk: row-major real and imaginary grids,
/// the subgraph size `m`, and for built unitaries the dimension `d`.
#[derive(Serialize, Deserialize)]
pub struct MatrixFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub m: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixFile {
    /// Wrap a subunitary (`m x m`, no hypercube dimension recorded).
    pub fn subunitary(matrix: &ComplexMatrix) -> Self {
        Self::wrap(matrix, None, matrix.rows())
    }

    /// Wrap a full built unitary together with its geometry.
    pub fn built(matrix: &ComplexMatrix, hc_dimension: usize, subgraph_modes: usize) -> Self {
        Self::wrap(matrix, Some(hc_dimension), subgraph_modes)
    }

    fn wrap(matrix: &ComplexMatrix, d: Option<usize>, m: usize) -> Self {
        let re = (0..matrix.rows())
            .map(|r| (0..matrix.cols()).map(|c| matrix.get(r, c).re).collect())
            .collect();
        let im = (0..matrix.rows())
            .map(|r| (0..matrix.cols()).map(|c| matrix.get(r, c).im).collect())
            .collect();
        Self { d, m, re, im }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let rows = self.re.len();
        if rows == 0 || self.im.len() != rows {
            return Err(Error::InvalidInput(
                "re and im grids must be non-empty and of equal shape".into(),
            ));
        }
        let cols = self.re[0].len();
        for row in self.re.iter().chain(self.im.iter()) {
            if row.len() != cols {
                return Err(Error::InvalidInput("ragged matrix rows".into()));
            }
        }
        Ok(ComplexMatrix::from_fn(rows, cols, |r, c| {
            Complex64::new(self.re[r][c], self.im[r][c])
        }))
    }
}

/// One route for constructing the bare hypercube transfer unitary.
pub trait UnitaryBuilder: Send + Sync {
    fn name(&self) -> &'static str;
    fn describe(&self) -> &'static str;
    fn build(&self, hc_dimension: usize) -> Result<ComplexMatrix>;
}

pub struct TensorProductBuilder;

impl UnitaryBuilder for TensorProductBuilder {
    fn name(&self) -> &'static str {
        "tensor"
    }

    fn describe(&self) -> &'static str {
        "d-fold tensor power of the balanced two-mode coupler"
    }

    fn build(&self, hc_dimension: usize) -> Result<ComplexMatrix> {
        build_tensor(hc_dimension)
    }
}

pub struct ClosedFormBuilder;

impl UnitaryBuilder for ClosedFormBuilder {
    fn name(&self) -> &'static str {
        "closed-form"
    }

    fn describe(&self) -> &'static str {
        "per-element Rademacher phase sums"
    }

    fn build(&self, hc_dimension: usize) -> Result<ComplexMatrix> {
        build_closed_form(hc_dimension)
    }
}

pub struct SpectralEvolutionBuilder;

impl UnitaryBuilder for SpectralEvolutionBuilder {
    fn name(&self) -> &'static str {
        "spectral"
    }

    fn describe(&self) -> &'static str {
        "adjacency-matrix evolution at the quarter period via the Walsh-Hadamard eigenbasis"
    }

    fn build(&self, hc_dimension: usize) -> Result<ComplexMatrix> {
        build_spectral(hc_dimension, 1.0, quarter_period(1.0))
    }
}

/// Name-keyed registry of unitary construction routes.
pub struct BuilderRegistry {
    builders: BTreeMap<&'static str, Box<dyn UnitaryBuilder>>,
}

impl BuilderRegistry {
    pub fn empty() -> Self {
        Self {
            builders: BTreeMap::new(),
        }
    }

    /// Registry pre-loaded with the three built-in routes.
    pub fn builtin() -> Self {
        let mut registry = Self::empty();
        registry.register(Box::new(TensorProductBuilder));
        registry.register(Box::new(ClosedFormBuilder));
        registry.register(Box::new(SpectralEvolutionBuilder));
        registry
    }

    pub fn register(&mut self, builder: Box<dyn UnitaryBuilder>) {
        self.builders.insert(builder.name(), builder);
    }

    pub fn get(&self, name: &str) -> Option<&dyn UnitaryBuilder> {
        self.builders.get(name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.builders.keys().copied().collect()
    }
}

impl Default for BuilderRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}
