//! Reduction criterion, entanglement fraction, isotropic twirl, and the
//! one-sided local filter.
//!
//! The pipeline implemented here maps any state violating the reduction
//! criterion (the operator `I⊗ρ_B - ρ` not positive semi-definite) onto an
//! isotropic class with entanglement fraction strictly above `1/d`:
//! a witness vector with negative expectation defines a filter
//! `F_B = √d Σ conj(α_ij) |i⟩⟨j|` on Bob's side, and filtering followed by
//! twirling can only land above the `1/d` line.

use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, tensor, Complex64, ComplexMatrix, DensityMatrix, HermitianOperator, PureState,
    TOL_PSD, TOL_TRACE,
};
use crate::states::{phi_plus, IsotropicClass, SplitMix64};

/// Outcome of the reduction-criterion check.
#[derive(Debug, Clone)]
pub struct ReductionVerdict {
    /// Minimal eigenvalue of `I⊗ρ_B - ρ`.
    pub min_eigenvalue: f64,
    /// Eigenvector of the minimal eigenvalue, phase-fixed so the
    /// largest-magnitude amplitude is real positive.
    pub witness: PureState,
    /// True iff `min_eigenvalue < -TOL_PSD`.
    pub violated: bool,
}

/// The operator `I_d ⊗ ρ_B - ρ` for a square bipartition.
pub fn reduction_operator(rho: &DensityMatrix) -> Result<HermitianOperator> {
    if rho.dim_a() != rho.dim_b() {
        return Err(Error::NonSquareBipartition {
            dim_a: rho.dim_a(),
            dim_b: rho.dim_b(),
        });
    }
    let d = rho.dim_a();
    let rho_b = rho.partial_trace_a();
    let op = tensor(&ComplexMatrix::identity(d), &rho_b).sub(rho.matrix());
    HermitianOperator::new(op)
}

/// Check whether `rho` violates the reduction criterion.
///
/// With a degenerate minimal eigenvalue the witness is the first eigenvector
/// in the solver's ascending output, which is deterministic.
pub fn reduction_check(rho: &DensityMatrix) -> Result<ReductionVerdict> {
    let op = reduction_operator(rho)?;
    let decomp = eig_hermitian(&op);
    let min_eigenvalue = decomp.eigenvalues[0];
    let witness = PureState::new(decomp.eigenvector(0))?.phase_normalized();
    Ok(ReductionVerdict {
        min_eigenvalue,
        witness,
        violated: min_eigenvalue < -TOL_PSD,
    })
}

/// Overlap `⟨φ+_d| ρ |φ+_d⟩` with the canonical maximally entangled state.
pub fn fidelity_phi_plus(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim_a() != rho.dim_b() {
        return Err(Error::NonSquareBipartition {
            dim_a: rho.dim_a(),
            dim_b: rho.dim_b(),
        });
    }
    let psi = phi_plus(rho.dim_a())?;
    Ok(expectation(rho.matrix(), psi.amplitudes()))
}

fn expectation(m: &ComplexMatrix, v: &[Complex64]) -> f64 {
    let mv = m.matvec(v);
    v.iter()
        .zip(&mv)
        .map(|(a, b)| (a.conj() * b).re)
        .sum::<f64>()
}

/// Zero-pad the smaller side of a non-square bipartition up to
/// `max(dim_a, dim_b)`, so the square-bipartition pipeline applies.
pub fn embed_square(rho: &DensityMatrix) -> DensityMatrix {
    let da = rho.dim_a();
    let db = rho.dim_b();
    if da == db {
        return rho.clone();
    }
    let m = da.max(db);
    let mut out = ComplexMatrix::zeros(m * m, m * m);
    for i in 0..da {
        for j in 0..db {
            for k in 0..da {
                for l in 0..db {
                    out.set(
                        i * m + j,
                        k * m + l,
                        rho.matrix().get(i * db + j, k * db + l),
                    );
                }
            }
        }
    }
    DensityMatrix::new(m, m, out).expect("embedding preserves all density-matrix invariants")
}

/// Options for the entanglement-fraction search.
#[derive(Debug, Clone)]
pub struct OptimizerOptions {
    /// Number of seeded restarts; the canonical start at the identity is
    /// always included as the first one.
    pub restarts: usize,
    /// Iteration cap per restart.
    pub max_iterations: usize,
    /// Convergence threshold on the simplex value spread.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            restarts: 32,
            max_iterations: 5000,
            tolerance: 1e-10,
            seed: 0,
        }
    }
}

/// Result of the maximal-entanglement-fraction search.
#[derive(Debug, Clone)]
pub struct MaxFractionResult {
    pub fraction: f64,
    pub unitary_a: ComplexMatrix,
    pub unitary_b: ComplexMatrix,
    /// False when no restart met the convergence threshold within the
    /// iteration cap; the value reported is still the best one found.
    pub converged: bool,
}

/// Maximal overlap of `rho` with any maximally entangled state, searched
/// over local unitaries `U_A ⊗ U_B`.
///
/// Each unitary is parameterized by `d²-1` real coefficients on a traceless
/// Hermitian generator basis; the search is a deterministic multi-start
/// Nelder-Mead over the joint parameter vector, merged by maximum.
pub fn max_entanglement_fraction(
    rho: &DensityMatrix,
    opts: &OptimizerOptions,
) -> Result<MaxFractionResult> {
    if rho.dim_a() != rho.dim_b() {
        return Err(Error::NonSquareBipartition {
            dim_a: rho.dim_a(),
            dim_b: rho.dim_b(),
        });
    }
    let d = rho.dim_a();
    let generators = traceless_hermitian_basis(d);
    let p = generators.len();
    let scale = 1.0 / (d as f64).sqrt();

    let objective = |x: &[f64]| -> f64 {
        let ua = exp_i_combination(&generators, &x[..p], d);
        let ub = exp_i_combination(&generators, &x[p..], d);
        // (U_A ⊗ U_B)|φ+⟩ has amplitudes (U_A U_B^T)_{ij} / √d
        let w = ua.matmul(&ub.transpose());
        let phi: Vec<Complex64> = w
            .entries()
            .iter()
            .map(|z| z * Complex64::new(scale, 0.0))
            .collect();
        -expectation(rho.matrix(), &phi)
    };

    let mut rng = SplitMix64::new(opts.seed);
    let mut best_x = vec![0.0; 2 * p];
    let mut best_value = objective(&best_x);
    let mut any_converged = false;

    for restart in 0..opts.restarts.max(1) {
        let start: Vec<f64> = if restart == 0 {
            vec![0.0; 2 * p]
        } else {
            (0..2 * p)
                .map(|_| (rng.next_f64() * 2.0 - 1.0) * std::f64::consts::PI)
                .collect()
        };
        let outcome = nelder_mead(
            &objective,
            &start,
            0.25,
            opts.max_iterations,
            opts.tolerance,
        );
        any_converged |= outcome.converged;
        if outcome.value < best_value {
            best_value = outcome.value;
            best_x = outcome.point;
        }
        // fidelity cannot exceed one, so stop once the bound is met
        if -best_value >= 1.0 - 1e-12 {
            break;
        }
    }

    // tighten locally around the best point found
    let polish = nelder_mead(&objective, &best_x, 0.02, opts.max_iterations, 1e-12);
    if polish.value < best_value {
        best_value = polish.value;
        best_x = polish.point;
    }

    let unitary_a = exp_i_combination(&generators, &best_x[..p], d);
    let unitary_b = exp_i_combination(&generators, &best_x[p..], d);
    Ok(MaxFractionResult {
        fraction: -best_value,
        unitary_a,
        unitary_b,
        converged: any_converged,
    })
}

/// Isotropic twirl with optimal local pre-alignment: the resulting class has
/// the maximal entanglement fraction of `rho`.
pub fn isotropic_twirl(rho: &DensityMatrix, opts: &OptimizerOptions) -> Result<TwirlOutcome> {
    let result = max_entanglement_fraction(rho, opts)?;
    let class = IsotropicClass::new(rho.dim_a(), result.fraction.clamp(0.0, 1.0))?;
    Ok(TwirlOutcome {
        class,
        optimizer_converged: result.converged,
    })
}

/// Isotropic twirl without pre-alignment: the class carries the canonical
/// fidelity `⟨φ+|ρ|φ+⟩` instead of the optimized fraction.
pub fn isotropic_twirl_canonical(rho: &DensityMatrix) -> Result<IsotropicClass> {
    let f = fidelity_phi_plus(rho)?;
    IsotropicClass::new(rho.dim_a(), f.clamp(0.0, 1.0))
}

#[derive(Debug, Clone)]
pub struct TwirlOutcome {
    pub class: IsotropicClass,
    pub optimizer_converged: bool,
}

/// One-sided local filter `F_B` on Bob's system.
#[derive(Debug, Clone)]
pub struct FilterOperator {
    d: usize,
    matrix: ComplexMatrix,
}

impl FilterOperator {
    #[inline]
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Rebuild the defining witness through `(I ⊗ F_B†)|φ+_d⟩`; this equals
    /// the phase-fixed witness the filter was built from.
    pub fn reconstructed_witness(&self) -> Result<PureState> {
        let d = self.d;
        let phi = phi_plus(d)?;
        let big = tensor(&ComplexMatrix::identity(d), &self.matrix.adjoint());
        PureState::new(big.matvec(phi.amplitudes()))
    }
}

/// Filter matrix from witness amplitudes, `(F_B)_{ij} = √d conj(α_ij)`.
///
/// This is the raw construction; `build_filter` adds the negativity
/// precondition of the reduction witness.
pub fn filter_from_witness(psi: &PureState, d: usize) -> Result<FilterOperator> {
    if psi.dim() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            actual: psi.dim(),
        });
    }
    let normalized = psi.phase_normalized();
    let sqrt_d = (d as f64).sqrt();
    let mut matrix = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let alpha = normalized.amplitude_bipartite(i, j, d);
            matrix.set(i, j, alpha.conj() * Complex64::new(sqrt_d, 0.0));
        }
    }
    Ok(FilterOperator { d, matrix })
}

/// Build the local filter for a reduction-violating witness of `rho`.
///
/// Rejects witnesses whose expectation on `I⊗ρ_B - ρ` is not negative,
/// since only those certify that filtering lifts the fidelity above `1/d`.
pub fn build_filter(psi: &PureState, rho: &DensityMatrix) -> Result<FilterOperator> {
    let op = reduction_operator(rho)?;
    if psi.dim() != op.dim() {
        return Err(Error::DimensionMismatch {
            expected: op.dim(),
            actual: psi.dim(),
        });
    }
    let expectation = expectation(op.matrix(), psi.amplitudes());
    if expectation >= 0.0 {
        return Err(Error::FilterPrecondition { expectation });
    }
    filter_from_witness(psi, rho.dim_a())
}

/// Apply `(I ⊗ F_B) ρ (I ⊗ F_B†)` and renormalize.
pub fn apply_filter(rho: &DensityMatrix, filter: &FilterOperator) -> Result<DensityMatrix> {
    if filter.dim() != rho.dim_b() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim_b(),
            actual: filter.dim(),
        });
    }
    let big = tensor(&ComplexMatrix::identity(rho.dim_a()), filter.matrix());
    let filtered = big.matmul(rho.matrix()).matmul(&big.adjoint());
    let trace = filtered.trace().re;
    if trace <= TOL_TRACE {
        return Err(Error::VanishingFilterNorm {
            trace,
            tolerance: TOL_TRACE,
        });
    }
    let normalized = filtered.scale(Complex64::new(1.0 / trace, 0.0));
    let symmetrized = normalized
        .add(&normalized.adjoint())
        .scale(Complex64::new(0.5, 0.0));
    DensityMatrix::new(rho.dim_a(), rho.dim_b(), symmetrized)
}

/// Unnormalized post-filter weight `tr((I⊗F_B) ρ (I⊗F_B†))`; equals
/// `d · tr(ρ_B ψ_B)` for a filter built from witness `ψ`.
pub fn filter_weight(rho: &DensityMatrix, filter: &FilterOperator) -> Result<f64> {
    if filter.dim() != rho.dim_b() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim_b(),
            actual: filter.dim(),
        });
    }
    let big = tensor(&ComplexMatrix::identity(rho.dim_a()), filter.matrix());
    Ok(big.matmul(rho.matrix()).matmul(&big.adjoint()).trace().re)
}

/// Traceless Hermitian generator basis of `su(d)`, `d²-1` matrices:
/// symmetric and antisymmetric pair matrices plus diagonal ladder matrices.
fn traceless_hermitian_basis(d: usize) -> Vec<ComplexMatrix> {
    let mut basis = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in j + 1..d {
            let mut sym = ComplexMatrix::zeros(d, d);
            sym.set(j, k, Complex64::new(1.0, 0.0));
            sym.set(k, j, Complex64::new(1.0, 0.0));
            basis.push(sym);
            let mut asym = ComplexMatrix::zeros(d, d);
            asym.set(j, k, Complex64::new(0.0, -1.0));
            asym.set(k, j, Complex64::new(0.0, 1.0));
            basis.push(asym);
        }
    }
    for l in 1..d {
        let mut diag = ComplexMatrix::zeros(d, d);
        for i in 0..l {
            diag.set(i, i, Complex64::new(1.0, 0.0));
        }
        diag.set(l, l, Complex64::new(-(l as f64), 0.0));
        basis.push(diag);
    }
    basis
}

/// `exp(i Σ_a x_a G_a)` through the eigendecomposition of the Hermitian
/// combination.
fn exp_i_combination(generators: &[ComplexMatrix], coeffs: &[f64], d: usize) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(d, d);
    for (g, &x) in generators.iter().zip(coeffs) {
        if x != 0.0 {
            h = h.add(&g.scale(Complex64::new(x, 0.0)));
        }
    }
    let herm = HermitianOperator::new(h).expect("generator combinations are exactly Hermitian");
    let decomp = eig_hermitian(&herm);
    let phases: Vec<Complex64> = decomp
        .eigenvalues
        .iter()
        .map(|&lambda| Complex64::new(lambda.cos(), lambda.sin()))
        .collect();
    let v = &decomp.eigenvectors;
    v.matmul(&ComplexMatrix::diagonal(&phases))
        .matmul(&v.adjoint())
}

struct NelderMeadOutcome {
    point: Vec<f64>,
    value: f64,
    converged: bool,
}

/// Plain Nelder-Mead on `f`, minimizing. Deterministic for a fixed start.
fn nelder_mead(
    f: &dyn Fn(&[f64]) -> f64,
    start: &[f64],
    initial_step: f64,
    max_iterations: usize,
    tolerance: f64,
) -> NelderMeadOutcome {
    let n = start.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(start.to_vec());
    for i in 0..n {
        let mut v = start.to_vec();
        v[i] += initial_step;
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|x| f(x)).collect();
    let mut converged = false;

    for _ in 0..max_iterations {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let best = order[0];
        let worst = order[n];
        let second_worst = order[n - 1];

        if values[worst] - values[best] <= tolerance {
            converged = true;
            break;
        }

        let mut centroid = vec![0.0; n];
        for &idx in &order[..n] {
            for (c, x) in centroid.iter_mut().zip(&simplex[idx]) {
                *c += x / n as f64;
            }
        }

        let blend = |a: f64, b: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[worst])
                .map(|(c, w)| a * c + b * w)
                .collect()
        };

        let reflected = blend(2.0, -1.0);
        let f_reflected = f(&reflected);
        if f_reflected < values[best] {
            let expanded = blend(3.0, -2.0);
            let f_expanded = f(&expanded);
            if f_expanded < f_reflected {
                simplex[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                simplex[worst] = reflected;
                values[worst] = f_reflected;
            }
        } else if f_reflected < values[second_worst] {
            simplex[worst] = reflected;
            values[worst] = f_reflected;
        } else {
            let contracted = if f_reflected < values[worst] {
                blend(1.5, -0.5)
            } else {
                blend(0.5, 0.5)
            };
            let f_contracted = f(&contracted);
            if f_contracted < values[worst].min(f_reflected) {
                simplex[worst] = contracted;
                values[worst] = f_contracted;
            } else {
                // shrink toward the best vertex
                let anchor = simplex[best].clone();
                for idx in 0..=n {
                    if idx == best {
                        continue;
                    }
                    for (x, a) in simplex[idx].iter_mut().zip(&anchor) {
                        *x = 0.5 * (*x + a);
                    }
                    values[idx] = f(&simplex[idx]);
                }
            }
        }
    }

    let mut best_idx = 0;
    for i in 1..=n {
        if values[i] < values[best_idx] {
            best_idx = i;
        }
    }
    NelderMeadOutcome {
        point: simplex[best_idx].clone(),
        value: values[best_idx],
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::partial_trace_a;
    use crate::states::{isotropic, pure_schmidt, random_density, random_pure, random_unitary};
    use approx::assert_abs_diff_eq;

    #[test]
    fn reduction_of_phi_plus_is_violated() {
        let rho = DensityMatrix::from_pure(&phi_plus(2).unwrap(), 2, 2).unwrap();
        let verdict = reduction_check(&rho).unwrap();
        assert!(verdict.violated);
        assert_abs_diff_eq!(verdict.min_eigenvalue, -0.5, epsilon = 1e-12);
        // the minimal eigenvector is φ+ itself
        let overlap: Complex64 = verdict.witness.inner(&phi_plus(2).unwrap());
        assert_abs_diff_eq!(overlap.norm(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn reduction_of_separable_product_is_satisfied() {
        let mut m = ComplexMatrix::zeros(4, 4);
        m.set(0, 0, Complex64::new(1.0, 0.0));
        let rho = DensityMatrix::new(2, 2, m).unwrap();
        let verdict = reduction_check(&rho).unwrap();
        assert!(!verdict.violated);
        assert!(verdict.min_eigenvalue.abs() < 1e-12);
    }

    #[test]
    fn reduction_of_isotropic_flips_at_one_over_d() {
        for d in [2usize, 3] {
            for step in 0..=10 {
                let f = step as f64 / 10.0;
                let rho = isotropic(d, f).unwrap();
                let verdict = reduction_check(&rho).unwrap();
                let expect_violation = f > 1.0 / d as f64 + 1e-12;
                assert_eq!(
                    verdict.violated, expect_violation,
                    "d={d} F={f} min_eig={}",
                    verdict.min_eigenvalue
                );
            }
        }
    }

    #[test]
    fn reduction_rejects_non_square_bipartition() {
        let rho = random_density(2, 3, 6, 1).unwrap();
        assert!(matches!(
            reduction_check(&rho),
            Err(Error::NonSquareBipartition { .. })
        ));
    }

    #[test]
    fn fidelity_of_isotropic_matches_fraction() {
        let rho = isotropic(2, 0.7).unwrap();
        assert_abs_diff_eq!(fidelity_phi_plus(&rho).unwrap(), 0.7, epsilon = 1e-12);
    }

    #[test]
    fn fidelity_of_maximally_mixed_is_one_over_d_squared() {
        let m = ComplexMatrix::identity(4).scale(Complex64::new(0.25, 0.0));
        let rho = DensityMatrix::new(2, 2, m).unwrap();
        assert_abs_diff_eq!(fidelity_phi_plus(&rho).unwrap(), 0.25, epsilon = 1e-12);
    }

    #[test]
    fn fidelity_of_product_basis_state() {
        let mut m = ComplexMatrix::zeros(4, 4);
        m.set(0, 0, Complex64::new(1.0, 0.0));
        let rho = DensityMatrix::new(2, 2, m).unwrap();
        assert_abs_diff_eq!(fidelity_phi_plus(&rho).unwrap(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn embed_square_pads_the_smaller_side() {
        let rho = random_density(2, 3, 6, 77).unwrap();
        let embedded = embed_square(&rho);
        assert_eq!(embedded.dim_a(), 3);
        assert_eq!(embedded.dim_b(), 3);
        assert_abs_diff_eq!(embedded.matrix().trace().re, 1.0, epsilon = 1e-12);
        // original entry (i=0,j=1),(k=1,l=2) preserved at the same labels
        assert_abs_diff_eq!(
            embedded.matrix().get(1, 5).re,
            rho.matrix().get(1, 5).re,
            epsilon = 1e-15
        );
    }

    #[test]
    fn max_fraction_recovers_isotropic_fraction() {
        let opts = OptimizerOptions {
            restarts: 8,
            ..OptimizerOptions::default()
        };
        for (d, f) in [(2usize, 0.6f64), (3, 0.5)] {
            let rho = isotropic(d, f).unwrap();
            let result = max_entanglement_fraction(&rho, &opts).unwrap();
            assert_abs_diff_eq!(result.fraction, f, epsilon = 1e-6);
        }
    }

    #[test]
    fn max_fraction_on_schmidt_states_matches_closed_form() {
        let opts = OptimizerOptions {
            restarts: 8,
            ..OptimizerOptions::default()
        };
        let coeffs = [0.9f64.sqrt(), 0.1f64.sqrt()];
        let rho = pure_schmidt(&coeffs).unwrap();
        let expected = coeffs.iter().sum::<f64>().powi(2) / 2.0;
        let result = max_entanglement_fraction(&rho, &opts).unwrap();
        assert_abs_diff_eq!(result.fraction, expected, epsilon = 1e-6);
    }

    #[test]
    fn max_fraction_of_rotated_phi_plus_is_one() {
        let psi = phi_plus(2).unwrap();
        let rho = DensityMatrix::from_pure(&psi, 2, 2).unwrap();
        let ua = random_unitary(2, 5);
        let ub = random_unitary(2, 6);
        let big = tensor(&ua, &ub);
        let rotated =
            DensityMatrix::new(2, 2, big.matmul(rho.matrix()).matmul(&big.adjoint())).unwrap();
        let result = max_entanglement_fraction(&rotated, &OptimizerOptions::default()).unwrap();
        assert_abs_diff_eq!(result.fraction, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn max_fraction_invariant_under_local_unitaries() {
        let rho = random_density(2, 2, 4, 3).unwrap();
        let opts = OptimizerOptions::default();
        let base = max_entanglement_fraction(&rho, &opts).unwrap().fraction;
        assert!(base >= fidelity_phi_plus(&rho).unwrap() - 1e-9);
        assert!(base >= 0.25 - 1e-9);
        for seed in [41u64, 42] {
            let ua = random_unitary(2, seed);
            let ub = random_unitary(2, seed + 10);
            let big = tensor(&ua, &ub);
            let rotated =
                DensityMatrix::new(2, 2, big.matmul(rho.matrix()).matmul(&big.adjoint())).unwrap();
            let value = max_entanglement_fraction(&rotated, &opts).unwrap().fraction;
            assert_abs_diff_eq!(value, base, epsilon = 2e-6);
        }
    }

    #[test]
    fn max_fraction_never_falls_below_the_twirl_average() {
        // every state reaches at least 1/d² (the maximally mixed value) and
        // at least its own canonical fidelity
        let opts = OptimizerOptions {
            restarts: 4,
            ..OptimizerOptions::default()
        };
        for seed in [11u64, 12, 13, 14, 15] {
            let rho = random_density(2, 2, 4, seed).unwrap();
            let value = max_entanglement_fraction(&rho, &opts).unwrap().fraction;
            assert!(value >= 0.25 - 1e-9, "seed {seed}: {value} below 1/d²");
            assert!(value >= fidelity_phi_plus(&rho).unwrap() - 1e-9);
        }
    }

    #[test]
    fn filter_from_phi_plus_witness_is_identity() {
        let psi = phi_plus(2).unwrap();
        let filter = filter_from_witness(&psi, 2).unwrap();
        assert!(filter.matrix().max_abs_diff(&ComplexMatrix::identity(2)) < 1e-14);
    }

    #[test]
    fn filter_from_product_witness_is_scaled_projector() {
        let mut amps = vec![Complex64::new(0.0, 0.0); 4];
        amps[0] = Complex64::new(1.0, 0.0);
        let psi = PureState::new(amps).unwrap();
        let filter = filter_from_witness(&psi, 2).unwrap();
        let mut expected = ComplexMatrix::zeros(2, 2);
        expected.set(0, 0, Complex64::new(2f64.sqrt(), 0.0));
        assert!(filter.matrix().max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn filter_reconstructs_its_witness() {
        for seed in 0..100u64 {
            let d = if seed % 2 == 0 { 2 } else { 3 };
            let psi = random_pure(d * d, 1000 + seed).phase_normalized();
            let filter = filter_from_witness(&psi, d).unwrap();
            let rebuilt = filter.reconstructed_witness().unwrap();
            let dist: f64 = rebuilt
                .amplitudes()
                .iter()
                .zip(psi.amplitudes())
                .map(|(a, b)| (a - b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(dist <= 1e-10, "witness reconstruction off by {dist}");
        }
    }

    #[test]
    fn filter_identity_on_witness_reduced_state() {
        // F_B† F_B = d ψ_B where ψ_B is the witness's reduced state on B
        let d = 3usize;
        let psi = random_pure(d * d, 4242).phase_normalized();
        let filter = filter_from_witness(&psi, d).unwrap();
        let product = filter.matrix().adjoint().matmul(filter.matrix());
        let psi_b = partial_trace_a(&psi.projector(), d, d).unwrap();
        assert!(product.max_abs_diff(&psi_b.scale(Complex64::new(d as f64, 0.0))) < 1e-12);
    }

    #[test]
    fn build_filter_rejects_non_violating_witness() {
        let m = ComplexMatrix::identity(4).scale(Complex64::new(0.25, 0.0));
        let rho = DensityMatrix::new(2, 2, m).unwrap();
        let psi = phi_plus(2).unwrap();
        assert!(matches!(
            build_filter(&psi, &rho),
            Err(Error::FilterPrecondition { .. })
        ));
    }

    #[test]
    fn apply_identity_filter_leaves_state_unchanged() {
        let rho = isotropic(2, 0.6).unwrap();
        let filter = FilterOperator {
            d: 2,
            matrix: ComplexMatrix::identity(2),
        };
        let filtered = apply_filter(&rho, &filter).unwrap();
        assert!(filtered.matrix().max_abs_diff(rho.matrix()) < 1e-14);
    }

    #[test]
    fn apply_filter_rejects_annihilating_filter() {
        let mut m = ComplexMatrix::zeros(4, 4);
        m.set(0, 0, Complex64::new(1.0, 0.0));
        let rho = DensityMatrix::new(2, 2, m).unwrap();
        let mut fm = ComplexMatrix::zeros(2, 2);
        fm.set(1, 1, Complex64::new(2f64.sqrt(), 0.0));
        let filter = FilterOperator { d: 2, matrix: fm };
        assert!(matches!(
            apply_filter(&rho, &filter),
            Err(Error::VanishingFilterNorm { .. })
        ));
    }

    #[test]
    fn schmidt_state_filter_pipeline_lifts_fidelity() {
        let rho = pure_schmidt(&[0.9f64.sqrt(), 0.1f64.sqrt()]).unwrap();
        let verdict = reduction_check(&rho).unwrap();
        assert!(verdict.violated);
        let filter = build_filter(&verdict.witness, &rho).unwrap();
        let filtered = apply_filter(&rho, &filter).unwrap();
        let fidelity = fidelity_phi_plus(&filtered).unwrap();
        assert!(
            fidelity > 0.5 + 1e-9,
            "filtered fidelity {fidelity} not above 1/2"
        );
    }

    #[test]
    fn filter_weight_matches_witness_overlap_identity() {
        // tr((I⊗F_B) ρ (I⊗F_B†)) = d tr(ρ_B ψ_B)
        for seed in [0u64, 1, 2, 3, 4] {
            let rho = random_density(2, 2, 4, 900 + seed).unwrap();
            let verdict = reduction_check(&rho).unwrap();
            if !verdict.violated {
                continue;
            }
            let filter = build_filter(&verdict.witness, &rho).unwrap();
            let weight = filter_weight(&rho, &filter).unwrap();
            let rho_b = rho.partial_trace_a();
            let psi_b = partial_trace_a(&verdict.witness.projector(), 2, 2).unwrap();
            let overlap = rho_b.matmul(&psi_b).trace().re;
            assert_abs_diff_eq!(weight, 2.0 * overlap, epsilon = 1e-9);
        }
    }

    #[test]
    fn random_violating_states_filter_above_one_half() {
        let mut checked = 0u32;
        let mut seed = 0u64;
        while checked < 100 {
            let rho = random_density(2, 2, 4, 5000 + seed).unwrap();
            seed += 1;
            let verdict = reduction_check(&rho).unwrap();
            if verdict.min_eigenvalue >= -1e-6 {
                continue;
            }
            let filter = build_filter(&verdict.witness, &rho).unwrap();
            let filtered = apply_filter(&rho, &filter).unwrap();
            let fidelity = fidelity_phi_plus(&filtered).unwrap();
            assert!(fidelity > 0.5, "fidelity {fidelity} for seed {seed}");
            checked += 1;
        }
    }

    #[test]
    fn twirl_is_idempotent() {
        let rho = pure_schmidt(&[0.8f64.sqrt(), 0.2f64.sqrt()]).unwrap();
        let first = isotropic_twirl_canonical(&rho).unwrap();
        let second = isotropic_twirl_canonical(&first.materialize()).unwrap();
        assert_eq!(first.d, second.d);
        assert_abs_diff_eq!(first.fraction, second.fraction, epsilon = 1e-9);

        let opts = OptimizerOptions {
            restarts: 4,
            ..OptimizerOptions::default()
        };
        let opt_first = isotropic_twirl(&rho, &opts).unwrap();
        let opt_second = isotropic_twirl(&opt_first.class.materialize(), &opts).unwrap();
        assert_abs_diff_eq!(
            opt_first.class.fraction,
            opt_second.class.fraction,
            epsilon = 1e-9
        );
    }

    #[test]
    fn filtered_twirl_of_schmidt_state_lands_above_line() {
        let rho = pure_schmidt(&[0.95f64.sqrt(), 0.05f64.sqrt()]).unwrap();
        let verdict = reduction_check(&rho).unwrap();
        let filter = build_filter(&verdict.witness, &rho).unwrap();
        let filtered = apply_filter(&rho, &filter).unwrap();
        let class = isotropic_twirl_canonical(&filtered).unwrap();
        assert_eq!(class.d, 2);
        assert!(class.fraction > 0.5);
    }

    #[test]
    fn exp_of_zero_coefficients_is_identity() {
        let basis = traceless_hermitian_basis(3);
        let u = exp_i_combination(&basis, &vec![0.0; basis.len()], 3);
        assert!(u.max_abs_diff(&ComplexMatrix::identity(3)) < 1e-14);
    }

    #[test]
    fn exp_produces_unitaries() {
        let basis = traceless_hermitian_basis(2);
        let coeffs = [0.3, -1.2, 0.7];
        let u = exp_i_combination(&basis, &coeffs, 2);
        let product = u.adjoint().matmul(&u);
        assert!(product.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
    }
}
