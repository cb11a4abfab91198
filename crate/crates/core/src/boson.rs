//! Truncated bosonic coherent states and fermion–boson super states.
//!
//! The fermionic factor is produced by integrating a weighted two-level
//! Grassmannian coherent state; the bosonic factor lives in the span of two
//! coherent states, orthonormalized by Gram–Schmidt.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::{Context, Element, Variable};
use crate::entangle::{apply_weight_and_integrate, purity_viola, IntegralSpec};
use crate::error::{Error, Result};
use crate::qstate::{coherent_state, PlainState};

/// Fock cutoff; Poissonian tails are below 1e-12 for |α| ≤ 2.
pub const DEFAULT_CUTOFF: usize = 40;

const DEGENERATE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct FockVector {
    amps: Vec<Complex64>,
}

impl FockVector {
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        Ok(FockVector { amps })
    }

    pub fn cutoff(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &FockVector) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).re.sqrt()
    }

    fn axpy(&self, c: Complex64, other: &FockVector) -> FockVector {
        FockVector { amps: self.amps.iter().zip(&other.amps).map(|(a, b)| a + c * b).collect() }
    }

    fn scale(&self, c: Complex64) -> FockVector {
        FockVector { amps: self.amps.iter().map(|a| a * c).collect() }
    }
}

/// e^{−|α|²/2} Σ_{m<D} α^m/√m! |m⟩.
pub fn coherent_fock(alpha: Complex64, cutoff: usize) -> Result<FockVector> {
    if cutoff == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let mut amps = Vec::with_capacity(cutoff);
    let mut term = Complex64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    for m in 0..cutoff {
        amps.push(term);
        term *= alpha / ((m + 1) as f64).sqrt();
    }
    FockVector::new(amps)
}

/// ⟨α|β⟩ = exp(−(|α|² + |β|² − 2ᾱβ)/2).
pub fn overlap_exact(alpha: Complex64, beta: Complex64) -> Complex64 {
    (-(alpha.norm_sqr() + beta.norm_sqr() - 2.0 * alpha.conj() * beta) / 2.0).exp()
}

/// |0⟩_b = |α⟩ and |1⟩_b = (|β⟩ − ⟨α|β⟩|α⟩)/N₁.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthonormalPair {
    pub b0: FockVector,
    pub b1: FockVector,
    /// Normalization used, ‖|β⟩ − ⟨α|β⟩|α⟩‖ = √(1 − |⟨α|β⟩|²).
    pub n1: f64,
    /// The printed value √(1 − |⟨α|β⟩|), kept for comparison.
    pub n1_printed: f64,
}

/// Gram–Schmidt on the truncated pair. Both vectors are normalized on the
/// truncated space first so orthonormality holds to rounding.
pub fn orthonormal_pair(alpha: Complex64, beta: Complex64, cutoff: usize) -> Result<OrthonormalPair> {
    if (alpha - beta).norm() < DEGENERATE_TOL {
        return Err(Error::DegeneratePair);
    }
    let a = coherent_fock(alpha, cutoff)?;
    let b = coherent_fock(beta, cutoff)?;
    let b0 = a.scale(Complex64::new(1.0 / a.norm(), 0.0));
    let b = b.scale(Complex64::new(1.0 / b.norm(), 0.0));
    let s = b0.inner(&b);
    let residual = b.axpy(-s, &b0);
    let n1 = residual.norm();
    if n1 < DEGENERATE_TOL {
        return Err(Error::DegeneratePair);
    }
    Ok(OrthonormalPair {
        b1: residual.scale(Complex64::new(1.0 / n1, 0.0)),
        b0,
        n1,
        n1_printed: (1.0 - overlap_exact(alpha, beta).norm()).sqrt(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuperKind {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

impl SuperKind {
    fn sign(self) -> f64 {
        match self {
            SuperKind::PsiPlus | SuperKind::PhiPlus => 1.0,
            SuperKind::PsiMinus | SuperKind::PhiMinus => -1.0,
        }
    }

    fn is_psi(self) -> bool {
        matches!(self, SuperKind::PsiPlus | SuperKind::PsiMinus)
    }
}

/// Fermion amplitudes (on |0⟩_f, |1⟩_f) of ∫dθ (a + bθ)|θ⟩ for the
/// two-level coherent state |θ⟩ = |0⟩ − θ|1⟩.
pub fn fermion_from_weight(constant: Complex64, linear: Complex64) -> Result<[Complex64; 2]> {
    let ctx = Context::new(2)?;
    let th = Variable::theta(1);
    let weight = Element::scalar(&ctx, constant).try_add(&Element::var(&ctx, th).scale(linear))?;
    let spec = IntegralSpec::new(weight, vec![th])?;
    let out = apply_weight_and_integrate(&spec, &coherent_state(&ctx, th, 2, Complex64::new(1.0, 0.0))?)?;
    Ok([out.amplitude(&[0]), out.amplitude(&[1])])
}

/// A state Σ amps[f][b] |f⟩_f|b⟩_b over an orthonormal bosonic pair.
#[derive(Clone, Debug, PartialEq)]
pub struct HybridState {
    pub basis: OrthonormalPair,
    pub amps: [[Complex64; 2]; 2],
}

impl HybridState {
    /// Amplitudes ordered |0_f 0_b⟩, |0_f 1_b⟩, |1_f 0_b⟩, |1_f 1_b⟩.
    pub fn flat(&self) -> [Complex64; 4] {
        [self.amps[0][0], self.amps[0][1], self.amps[1][0], self.amps[1][1]]
    }

    pub fn as_two_qubit(&self) -> PlainState {
        PlainState::from_amplitudes(&[2, 2], self.flat().to_vec()).expect("four amplitudes")
    }

    /// The state expanded in the truncated Fock space, fermion-major.
    pub fn to_fock_matrix(&self) -> DMatrix<Complex64> {
        let d = self.basis.b0.cutoff();
        DMatrix::from_fn(2, d, |f, m| {
            self.amps[f][0] * self.basis.b0.amps()[m] + self.amps[f][1] * self.basis.b1.amps()[m]
        })
    }
}

/// (1/√2)(|0⟩_f|1⟩_b ± |1⟩_f|0⟩_b) or (1/√2)(|0⟩_f|0⟩_b ± |1⟩_f|1⟩_b), with the
/// fermion factors produced by weights θ/√2 (→ |0⟩_f) and ∓1/√2 (→ ±|1⟩_f).
pub fn super_state(kind: SuperKind, alpha: Complex64, beta: Complex64, cutoff: usize) -> Result<HybridState> {
    let basis = orthonormal_pair(alpha, beta, cutoff)?;
    let h = Complex64::new(0.5f64.sqrt(), 0.0);
    let zero = Complex64::default();
    let upper = fermion_from_weight(zero, h)?;
    let lower = fermion_from_weight(-h * kind.sign(), zero)?;
    // boson index carrying |0⟩_f, then the one carrying |1⟩_f
    let (b_upper, b_lower) = if kind.is_psi() { (1, 0) } else { (0, 1) };
    let mut amps = [[zero; 2]; 2];
    for f in 0..2 {
        amps[f][b_upper] += upper[f];
        amps[f][b_lower] += lower[f];
    }
    Ok(HybridState { basis, amps })
}

/// The φ± recipe exactly as printed: (−1/√2) attached to the α → 0 factor
/// (|0⟩_b) and ±θ/√2 to the β → ∞ factor (|1⟩_b).
pub fn super_state_phi_as_printed(plus: bool, alpha: Complex64, beta: Complex64, cutoff: usize) -> Result<HybridState> {
    let basis = orthonormal_pair(alpha, beta, cutoff)?;
    let h = Complex64::new(0.5f64.sqrt(), 0.0);
    let sign = if plus { 1.0 } else { -1.0 };
    let zero = Complex64::default();
    let on_b0 = fermion_from_weight(-h, zero)?;
    let on_b1 = fermion_from_weight(zero, h * sign)?;
    let amps = [[on_b0[0], on_b1[0]], [on_b0[1], on_b1[1]]];
    Ok(HybridState { basis, amps })
}

/// Viola purity of the effective two-qubit state.
pub fn hybrid_purity(state: &HybridState) -> Result<f64> {
    purity_viola(&state.as_two_qubit())
}

/// The ψ± recipe with raw (non-orthogonalized) coherent states:
/// ∫dθ(θ/√2)|θ⟩|α⟩ ∓ ∫dθ(1/√2)|θ⟩|β⟩, as a 2 × D amplitude matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct NaiveSuperState {
    pub amps: DMatrix<Complex64>,
}

pub fn naive_super_state(plus: bool, alpha: Complex64, beta: Complex64, cutoff: usize) -> Result<NaiveSuperState> {
    let h = Complex64::new(0.5f64.sqrt(), 0.0);
    let sign = if plus { 1.0 } else { -1.0 };
    let zero = Complex64::default();
    let fa = fermion_from_weight(zero, h)?;
    let fb = fermion_from_weight(-h * sign, zero)?;
    let a = coherent_fock(alpha, cutoff)?;
    let b = coherent_fock(beta, cutoff)?;
    let amps = DMatrix::from_fn(2, cutoff, |f, m| fa[f] * a.amps()[m] + fb[f] * b.amps()[m]);
    Ok(NaiveSuperState { amps })
}

impl NaiveSuperState {
    /// Normalized Schmidt coefficients across the fermion/boson cut, with
    /// vanishing ones dropped.
    pub fn schmidt(&self) -> Result<Vec<f64>> {
        let norm = self.amps.norm();
        if norm < DEGENERATE_TOL {
            return Err(Error::ZeroState);
        }
        let mut sv: Vec<f64> =
            (&self.amps / Complex64::new(norm, 0.0)).singular_values().iter().copied().filter(|&s| s > 1e-7).collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        Ok(sv)
    }

    /// 2 tr ρ_f² − 1, the two-party Viola purity.
    pub fn purity(&self) -> Result<f64> {
        let p: f64 = self.schmidt()?.iter().map(|s| s.powi(4)).sum();
        Ok(2.0 * p - 1.0)
    }
}

/// Purity of the naive ψ+ construction for β = 0 and each α, paired with
/// |⟨α|β⟩|. Purity falls to 0 as the overlap vanishes.
pub fn convergence_sweep(alphas: &[f64], cutoff: usize) -> Result<Vec<(f64, f64)>> {
    alphas
        .iter()
        .map(|&a| {
            let alpha = Complex64::new(a, 0.0);
            let zero = Complex64::default();
            let s = naive_super_state(true, alpha, zero, cutoff)?;
            Ok((overlap_exact(alpha, zero).norm(), s.purity()?))
        })
        .collect()
}
