//! Reduced density matrices, purity, Schmidt spectra and the comparison
//! ladder used to match computed states against reference targets.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::algebra::PRUNE_TOL;
use crate::error::{Error, Result};
use crate::qstate::PlainState;

/// Tolerance used by the entanglement predicates.
pub const MEASURE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (&self.entries - self.entries.adjoint()).norm() <= tol
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.entries.clone()).eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        ev
    }

    /// tr ρ².
    pub fn purity(&self) -> f64 {
        (&self.entries * &self.entries).trace().re
    }

    pub fn is_maximally_mixed(&self, tol: f64) -> bool {
        let target = 1.0 / self.dim() as f64;
        self.eigenvalues().iter().all(|e| (e - target).abs() <= tol)
    }
}

fn check_cut(state: &PlainState, sites: &[usize]) -> Result<Vec<usize>> {
    let mut s = sites.to_vec();
    s.sort_unstable();
    s.dedup();
    if let Some(&bad) = s.iter().find(|&&i| i >= state.num_sites()) {
        return Err(Error::SiteOutOfRange(bad));
    }
    Ok(s)
}

/// The normalized state reshaped into a (kept sites) × (other sites) matrix.
fn reshape(state: &PlainState, keep: &[usize]) -> Result<DMatrix<Complex64>> {
    let state = state.normalized()?;
    let keep = check_cut(&state, keep)?;
    let dims = state.dims();
    let rest: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
    let rows: usize = keep.iter().map(|&i| dims[i]).product();
    let cols: usize = rest.iter().map(|&i| dims[i]).product();
    let flat = |ket: &[usize], sites: &[usize]| sites.iter().fold(0, |acc, &s| acc * dims[s] + ket[s]);
    let mut m = DMatrix::zeros(rows, cols);
    for (i, &a) in state.amps().iter().enumerate() {
        if a == Complex64::default() {
            continue;
        }
        let ket = state.ket_of(i);
        m[(flat(&ket, &keep), flat(&ket, &rest))] = a;
    }
    Ok(m)
}

/// Partial trace onto `keep` (0-based sites) of the normalized state.
pub fn reduced_density(state: &PlainState, keep: &[usize]) -> Result<DensityMatrix> {
    let m = reshape(state, keep)?;
    Ok(DensityMatrix { entries: &m * m.adjoint() })
}

/// Schmidt coefficients across `cut` versus its complement, descending,
/// with zero coefficients dropped.
pub fn bipartition_spectrum(state: &PlainState, cut: &[usize]) -> Result<Vec<f64>> {
    let m = reshape(state, cut)?;
    let mut sv: Vec<f64> = m.singular_values().iter().copied().filter(|&s| s > PRUNE_TOL.sqrt()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

/// p = (2/N)Σ_i tr ρ_i² − 1 for N qubits.
pub fn purity_viola(state: &PlainState) -> Result<f64> {
    if let Some(&d) = state.dims().iter().find(|&&d| d != 2) {
        return Err(Error::InvalidDimension(d));
    }
    purity_generalized(state)
}

/// Average over sites of (d/(d−1))(tr ρ_i² − 1/d); equals the qubit formula
/// when every site is a qubit.
pub fn purity_generalized(state: &PlainState) -> Result<f64> {
    let n = state.num_sites();
    let mut total = 0.0;
    for site in 0..n {
        let rho = reduced_density(state, &[site])?;
        let d = rho.dim() as f64;
        total += d / (d - 1.0) * (rho.purity() - 1.0 / d);
    }
    Ok(total / n as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PurityKind {
    Viola,
    Generalized,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntanglementReport {
    pub purity: f64,
    pub purity_kind: PurityKind,
    pub per_site_rdm_spectra: Vec<Vec<f64>>,
    /// Schmidt coefficients keyed by the cut's sites (0-based). Each
    /// bipartition appears once.
    pub bipartition_schmidt: BTreeMap<Vec<usize>, Vec<f64>>,
    pub max_entangled: bool,
}

/// One representative per bipartition: subsets of at most half the sites,
/// and at exactly half only those containing site 0.
pub fn bipartitions(sites: usize) -> Vec<Vec<usize>> {
    let mut cuts = Vec::new();
    for mask in 1u64..(1 << sites) - 1 {
        let cut: Vec<usize> = (0..sites).filter(|i| mask >> i & 1 == 1).collect();
        let k = cut.len();
        if 2 * k < sites || (2 * k == sites && mask & 1 == 1) {
            cuts.push(cut);
        }
    }
    cuts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    cuts
}

pub fn entanglement_report(state: &PlainState) -> Result<EntanglementReport> {
    let n = state.num_sites();
    let all_qubits = state.dims().iter().all(|&d| d == 2);
    let purity = purity_generalized(state)?;
    let mut spectra = Vec::with_capacity(n);
    let mut mixed = true;
    for site in 0..n {
        let rho = reduced_density(state, &[site])?;
        mixed &= rho.is_maximally_mixed(MEASURE_TOL);
        spectra.push(rho.eigenvalues());
    }
    let mut schmidt = BTreeMap::new();
    for cut in bipartitions(n) {
        let s = bipartition_spectrum(state, &cut)?;
        schmidt.insert(cut, s);
    }
    Ok(EntanglementReport {
        purity,
        purity_kind: if all_qubits { PurityKind::Viola } else { PurityKind::Generalized },
        per_site_rdm_spectra: spectra,
        bipartition_schmidt: schmidt,
        max_entangled: n > 1 && mixed,
    })
}

/// True iff every single-site reduced density matrix is maximally mixed.
pub fn is_maximally_entangled(state: &PlainState) -> Result<(bool, EntanglementReport)> {
    let report = entanglement_report(state)?;
    Ok((report.max_entangled, report))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MatchLevel {
    Exact,
    UpToGlobalPhase,
    UpToSignature,
    Mismatch,
}

impl MatchLevel {
    pub fn as_str(self) -> &'static str {
        match self {
            MatchLevel::Exact => "exact",
            MatchLevel::UpToGlobalPhase => "up_to_global_phase",
            MatchLevel::UpToSignature => "up_to_signature",
            MatchLevel::Mismatch => "mismatch",
        }
    }
}

/// Termwise magnitudes and every bipartition spectrum agree.
pub fn signature_equal(a: &PlainState, b: &PlainState, tol: f64) -> Result<bool> {
    if a.dims() != b.dims() {
        return Ok(false);
    }
    let (a, b) = (a.normalized()?, b.normalized()?);
    let mags = a.amps().iter().zip(b.amps()).all(|(x, y)| (x.norm() - y.norm()).abs() <= tol);
    if !mags {
        return Ok(false);
    }
    for cut in bipartitions(a.num_sites()) {
        let (sa, sb) = (bipartition_spectrum(&a, &cut)?, bipartition_spectrum(&b, &cut)?);
        if sa.len() != sb.len() || sa.iter().zip(&sb).any(|(x, y)| (x - y).abs() > tol) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compares normalized states along exact → global phase → signature.
pub fn compare_states(computed: &PlainState, target: &PlainState, tol: f64) -> Result<MatchLevel> {
    if computed.dims() != target.dims() {
        return Ok(MatchLevel::Mismatch);
    }
    let (c, t) = (computed.normalized()?, target.normalized()?);
    if c.distance(&t) <= tol {
        return Ok(MatchLevel::Exact);
    }
    let overlap: Complex64 = t.amps().iter().zip(c.amps()).map(|(x, y)| x.conj() * y).sum();
    if overlap.norm() > PRUNE_TOL {
        let phase = overlap / overlap.norm();
        if c.distance(&t.scale(phase)) <= tol {
            return Ok(MatchLevel::UpToGlobalPhase);
        }
    }
    if signature_equal(&c, &t, tol)? {
        return Ok(MatchLevel::UpToSignature);
    }
    Ok(MatchLevel::Mismatch)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn state(dims: &[usize], terms: &[(f64, &[usize])]) -> PlainState {
        PlainState::from_terms(dims, terms.iter().map(|&(a, k)| (c(a), k))).unwrap()
    }

    #[test]
    fn ghz_and_w_partial_traces() {
        let ghz = state(&[2, 2, 2], &[(1.0, &[0, 0, 0]), (1.0, &[1, 1, 1])]);
        let rho = reduced_density(&ghz, &[0]).unwrap();
        assert!(rho.is_maximally_mixed(1e-12));
        let w = state(&[2, 2, 2], &[(1.0, &[1, 0, 0]), (1.0, &[0, 1, 0]), (1.0, &[0, 0, 1])]);
        let ev = reduced_density(&w, &[0]).unwrap().eigenvalues();
        assert!((ev[0] - 2.0 / 3.0).abs() < 1e-12 && (ev[1] - 1.0 / 3.0).abs() < 1e-12);
        let prod = state(&[2, 2], &[(1.0, &[0, 0])]);
        let ev = reduced_density(&prod, &[0]).unwrap().eigenvalues();
        assert!((ev[0] - 1.0).abs() < 1e-12 && ev[1].abs() < 1e-12);
    }

    #[test]
    fn density_invariants() {
        let s = state(&[3, 2], &[(0.3, &[0, 1]), (-1.2, &[2, 0]), (0.5, &[1, 1])]);
        let rho = reduced_density(&s, &[1]).unwrap();
        assert!(rho.is_hermitian(1e-12));
        assert!((rho.trace() - c(1.0)).norm() < 1e-12);
        assert!(rho.eigenvalues().iter().all(|&e| e > -1e-10));
    }

    #[test]
    fn purity_values() {
        let prod = state(&[2, 2], &[(1.0, &[0, 0])]);
        assert!((purity_viola(&prod).unwrap() - 1.0).abs() < 1e-12);
        let bell = state(&[2, 2], &[(1.0, &[0, 0]), (1.0, &[1, 1])]);
        assert!(purity_viola(&bell).unwrap().abs() < 1e-12);
        let qutrit = state(&[3, 3], &[(1.0, &[0, 0]), (1.0, &[1, 1]), (1.0, &[2, 2])]);
        assert!(purity_viola(&qutrit).is_err());
        assert!(purity_generalized(&qutrit).unwrap().abs() < 1e-12);
    }

    #[test]
    fn schmidt_examples() {
        let h = 0.5f64.sqrt();
        let bell = state(&[2, 2], &[(1.0, &[0, 0]), (1.0, &[1, 1])]);
        let s = bipartition_spectrum(&bell, &[0]).unwrap();
        assert!(s.iter().all(|x| (x - h).abs() < 1e-12) && s.len() == 2);
        let bisep = state(&[2, 2, 2], &[(1.0, &[0, 0, 0]), (1.0, &[0, 1, 1])]);
        assert_eq!(bipartition_spectrum(&bisep, &[0]).unwrap().len(), 1);
        let s3 = bipartition_spectrum(&bisep, &[2]).unwrap();
        assert!(s3.len() == 2 && (s3[0] - h).abs() < 1e-12);
        assert!(matches!(bipartition_spectrum(&PlainState::zeros(&[2, 2]).unwrap(), &[0]), Err(Error::ZeroState)));
    }

    #[test]
    fn mes_predicate() {
        let qutrit = state(&[3, 3], &[(1.0, &[0, 0]), (1.0, &[1, 1]), (1.0, &[2, 2])]);
        assert!(is_maximally_entangled(&qutrit).unwrap().0);
        let w = state(&[2, 2, 2], &[(1.0, &[1, 0, 0]), (1.0, &[0, 1, 0]), (1.0, &[0, 0, 1])]);
        assert!(!is_maximally_entangled(&w).unwrap().0);
        assert!(!is_maximally_entangled(&state(&[2, 2], &[(1.0, &[0, 0])])).unwrap().0);
    }

    #[test]
    fn bipartition_representatives() {
        assert_eq!(bipartitions(2), vec![vec![0]]);
        assert_eq!(bipartitions(3), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(bipartitions(4).len(), 7);
    }

    #[test]
    fn match_ladder() {
        let a = state(&[2, 2], &[(1.0, &[0, 1]), (1.0, &[1, 0])]);
        let minus = state(&[2, 2], &[(1.0, &[0, 1]), (-1.0, &[1, 0])]);
        let flipped = a.scale(Complex64::new(0.0, 1.0));
        assert_eq!(compare_states(&a.scale(c(3.0)), &a, 1e-9).unwrap(), MatchLevel::Exact);
        assert_eq!(compare_states(&flipped, &a, 1e-9).unwrap(), MatchLevel::UpToGlobalPhase);
        assert_eq!(compare_states(&minus, &a, 1e-9).unwrap(), MatchLevel::UpToSignature);
        let other = state(&[2, 2], &[(1.0, &[0, 0])]);
        assert_eq!(compare_states(&other, &a, 1e-9).unwrap(), MatchLevel::Mismatch);
    }
}
