use gcs_core::boson::{
    coherent_fock, hybrid_purity, orthonormal_pair, overlap_exact, super_state, SuperKind, DEFAULT_CUTOFF,
};
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn truncated_overlaps_match_closed_form_on_grid() {
    let grid: Vec<Complex64> = (-4..=4)
        .flat_map(|a| (-4..=4).map(move |b| Complex64::new(f64::from(a) * 0.5, f64::from(b) * 0.5)))
        .filter(|z| z.norm() <= 2.0)
        .collect();
    let vecs: Vec<_> = grid.iter().map(|&z| coherent_fock(z, DEFAULT_CUTOFF).unwrap()).collect();
    for (i, &a) in grid.iter().enumerate() {
        for (j, &b) in grid.iter().enumerate() {
            let err = (vecs[i].inner(&vecs[j]) - overlap_exact(a, b)).norm();
            assert!(err < 1e-9, "alpha={a} beta={b} err={err}");
        }
    }
}

proptest! {
    #[test]
    fn pair_is_orthonormal(ar in -2.0f64..2.0, ai in -2.0f64..2.0, br in -2.0f64..2.0, bi in -2.0f64..2.0) {
        let (a, b) = (Complex64::new(ar, ai), Complex64::new(br, bi));
        prop_assume!((a - b).norm() > 1e-3);
        let p = orthonormal_pair(a, b, DEFAULT_CUTOFF).unwrap();
        prop_assert!(p.b0.inner(&p.b1).norm() < 1e-9);
        prop_assert!((p.b0.norm() - 1.0).abs() < 1e-9);
        prop_assert!((p.b1.norm() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn super_state_purity_ignores_alpha_beta(ar in -2.0f64..2.0, br in -2.0f64..2.0, k in 0usize..4) {
        prop_assume!((ar - br).abs() > 1e-2);
        let kind = [SuperKind::PsiPlus, SuperKind::PsiMinus, SuperKind::PhiPlus, SuperKind::PhiMinus][k];
        let s = super_state(kind, Complex64::new(ar, 0.0), Complex64::new(br, 0.3), DEFAULT_CUTOFF).unwrap();
        prop_assert!(hybrid_purity(&s).unwrap().abs() < 1e-9);
    }
}
