//! Constructors for the named state families and seeded random generators.
//!
//! Random generation uses a local splitmix64 stream plus Box-Muller so that
//! fixtures are bit-reproducible across platforms and dependency versions;
//! every generator takes an explicit seed and PRNG state is never shared.

use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix, DensityMatrix, PureState};

/// Symbolic `(d, F)` representative of a state's isotropic-twirl equivalence
/// class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicClass {
    pub d: usize,
    pub fraction: f64,
}

impl IsotropicClass {
    pub fn new(d: usize, fraction: f64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension { dim: d });
        }
        if !(0.0..=1.0).contains(&fraction) || !fraction.is_finite() {
            return Err(Error::InvalidFraction { fraction });
        }
        Ok(Self { d, fraction })
    }

    /// Materialize the class representative as an explicit density matrix.
    pub fn materialize(&self) -> DensityMatrix {
        isotropic(self.d, self.fraction).expect("fields validated at construction")
    }
}

/// Maximally entangled state `|φ+_d⟩ = (1/√d) Σ_i |ii⟩`.
pub fn phi_plus(d: usize) -> Result<PureState> {
    if d < 2 {
        return Err(Error::InvalidDimension { dim: d });
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); d * d];
    let amp = 1.0 / (d as f64).sqrt();
    for i in 0..d {
        amplitudes[i * d + i] = Complex64::new(amp, 0.0);
    }
    PureState::new(amplitudes)
}

/// Isotropic state with entanglement fraction `F`:
/// `F |φ+⟩⟨φ+| + (1-F) (I - |φ+⟩⟨φ+|) / (d² - 1)`.
pub fn isotropic(d: usize, fraction: f64) -> Result<DensityMatrix> {
    if d < 2 {
        return Err(Error::InvalidDimension { dim: d });
    }
    if !(0.0..=1.0).contains(&fraction) || !fraction.is_finite() {
        return Err(Error::InvalidFraction { fraction });
    }
    let n = d * d;
    let projector = phi_plus(d)?.projector();
    let rest = (1.0 - fraction) / ((n - 1) as f64);
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let p = projector.get(i, j);
            let mut v = p * Complex64::new(fraction - rest, 0.0);
            if i == j {
                v += Complex64::new(rest, 0.0);
            }
            m.set(i, j, v);
        }
    }
    DensityMatrix::new(d, d, m)
}

/// Pure state in Schmidt form `Σ_i c_i |ii⟩` as a projector, for fixtures
/// with a known entanglement fraction.
pub fn pure_schmidt(coeffs: &[f64]) -> Result<DensityMatrix> {
    let psi = pure_schmidt_state(coeffs)?;
    let d = coeffs.len();
    DensityMatrix::from_pure(&psi, d, d)
}

/// The Schmidt-form amplitude vector itself.
pub fn pure_schmidt_state(coeffs: &[f64]) -> Result<PureState> {
    let d = coeffs.len();
    if d < 2 {
        return Err(Error::InvalidDimension { dim: d });
    }
    let sum_sq: f64 = coeffs.iter().map(|c| c * c).sum();
    if coeffs.iter().any(|&c| !c.is_finite() || c < 0.0) || (sum_sq - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidSchmidtCoefficients { sum_sq });
    }
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); d * d];
    for (i, &c) in coeffs.iter().enumerate() {
        amplitudes[i * d + i] = Complex64::new(c, 0.0);
    }
    PureState::new(amplitudes)
}

/// Ginibre-induced random density matrix `G G† / tr(G G†)` where `G` has
/// `rank` columns of iid standard complex Gaussian entries. Deterministic
/// for a fixed seed.
pub fn random_density(dim_a: usize, dim_b: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    let n = dim_a * dim_b;
    if dim_a < 1 || dim_b < 1 || n < 2 {
        return Err(Error::InvalidDimension { dim: n });
    }
    if rank < 1 || rank > n {
        return Err(Error::InvalidRank { rank, max_rank: n });
    }
    let mut rng = SplitMix64::new(seed);
    let g = ginibre(n, rank, &mut rng);
    let mut m = g.matmul(&g.adjoint());
    let trace = m.trace().re;
    m = m.scale(Complex64::new(1.0 / trace, 0.0));
    // symmetrize rounding noise so construction tolerances never bite
    let herm = m.add(&m.adjoint()).scale(Complex64::new(0.5, 0.0));
    DensityMatrix::new(dim_a, dim_b, herm)
}

/// Haar-style random unitary: QR of a Ginibre matrix by modified
/// Gram-Schmidt (the positive-diagonal `R` fixes the phase gauge).
pub fn random_unitary(d: usize, seed: u64) -> ComplexMatrix {
    let mut rng = SplitMix64::new(seed);
    let g = ginibre(d, d, &mut rng);
    let mut cols: Vec<Vec<Complex64>> = (0..d)
        .map(|j| (0..d).map(|i| g.get(i, j)).collect())
        .collect();
    for j in 0..d {
        for k in 0..j {
            let proj: Complex64 = (0..d).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            let scaled: Vec<Complex64> = cols[k].iter().map(|z| proj * z).collect();
            for (z, s) in cols[j].iter_mut().zip(&scaled) {
                *z -= s;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    let mut u = ComplexMatrix::zeros(d, d);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            u.set(i, j, z);
        }
    }
    u
}

/// Random normalized pure state on `dim` amplitudes.
pub fn random_pure(dim: usize, seed: u64) -> PureState {
    let mut rng = SplitMix64::new(seed);
    let mut amplitudes: Vec<Complex64> = (0..dim)
        .map(|_| {
            let (x, y) = rng.normal_pair();
            Complex64::new(x, y)
        })
        .collect();
    let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in amplitudes.iter_mut() {
        *z /= norm;
    }
    PureState::new(amplitudes).expect("normalized by construction")
}

fn ginibre(rows: usize, cols: usize, rng: &mut SplitMix64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let (x, y) = rng.normal_pair();
            m.set(i, j, Complex64::new(x, y));
        }
    }
    m
}

/// splitmix64: tiny, seedable, platform-independent PRNG stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `(0, 1)` with 53 random bits (never exactly zero, which
    /// keeps Box-Muller's logarithm finite).
    pub fn next_f64(&mut self) -> f64 {
        let bits = self.next_u64() >> 11;
        (bits as f64 + 0.5) * (1.0 / 9007199254740992.0)
    }

    /// Pair of independent standard normals via Box-Muller.
    pub fn normal_pair(&mut self) -> (f64, f64) {
        let u1 = self.next_f64();
        let u2 = self.next_f64();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        (r * theta.cos(), r * theta.sin())
    }
}
