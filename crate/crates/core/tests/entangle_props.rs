use gcs_core::algebra::{random_element, Context, Monomial, Variable};
use gcs_core::entangle::{
    apply_weight_and_integrate, bipartition_spectrum, catalog_construct, is_maximally_entangled,
    measures::bipartitions, purity_viola, solve_weight, CatalogParams, Factor, IntegralSpec, ProductRecipe,
};
use gcs_core::qstate::PlainState;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn uniform_diagonal(n: usize) -> PlainState {
    let h = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    let kets: Vec<[usize; 2]> = (0..n).map(|i| [i, i]).collect();
    PlainState::from_terms(&[n, n], kets.iter().map(|k| (h, &k[..]))).unwrap()
}

#[test]
fn ghz_and_w_purities() {
    for n in 2..=6 {
        let ghz = catalog_construct("ghz_n", &CatalogParams::with_n(n)).unwrap();
        assert!(purity_viola(&ghz.computed).unwrap().abs() < 1e-9, "GHZ n={n}");
        let w = catalog_construct("w_n", &CatalogParams::with_n(n)).unwrap();
        let expected = ((f64::from(n) - 2.0) / f64::from(n)).powi(2);
        assert!((purity_viola(&w.computed).unwrap() - expected).abs() < 1e-9, "W n={n}");
    }
}

#[test]
fn diagonal_support_lemma() {
    for n in 2..=5u32 {
        let ctx = Context::new(n).unwrap();
        let (t1, t2) = (Variable::theta(1), Variable::theta(2));
        let d = n as usize;
        let state = ProductRecipe::product(vec![Factor::coherent(t1, d), Factor::coherent(t2, d)]).build(&ctx).unwrap();
        let sol = solve_weight(&state, &[t1, t2], &uniform_diagonal(d), &ctx.all_monomials(&[t1, t2])).unwrap();
        assert!(sol.feasible, "n={n} residual {}", sol.residual);
        assert!(sol.max_coefficient_outside(|m: &Monomial| m.exponent(t1) == m.exponent(t2)) < 1e-9);
    }
}

#[test]
fn cluster_single_site_marginals_are_maximally_mixed() {
    for sign in [1, -1] {
        let r = catalog_construct("cluster4_pm", &CatalogParams::with_sign(sign)).unwrap();
        let (mes, report) = is_maximally_entangled(&r.computed).unwrap();
        assert!(mes);
        for spec in &report.per_site_rdm_spectra {
            assert!(spec.iter().all(|e| (e - 0.5).abs() < 1e-9));
        }
    }
}

proptest! {
    #[test]
    fn spectra_ignore_local_phases(seed: u64, phases in prop::collection::vec(0.0f64..std::f64::consts::TAU, 9)) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims = [3usize, 3];
        let amps: Vec<Complex64> = (0..9).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let s = PlainState::from_amplitudes(&dims, amps).unwrap();
        // diag(e^{iφ_a}) ⊗ diag(e^{iφ_b})
        let rotated: Vec<Complex64> = (0..9)
            .map(|i| {
                let ket = s.ket_of(i);
                s.amps()[i] * Complex64::from_polar(1.0, phases[ket[0]] + phases[3 + ket[1]])
            })
            .collect();
        let r = PlainState::from_amplitudes(&dims, rotated).unwrap();
        for cut in bipartitions(2) {
            let (a, b) = (bipartition_spectrum(&s, &cut).unwrap(), bipartition_spectrum(&r, &cut).unwrap());
            prop_assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x - y).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn solver_round_trip(n in 2u32..=4, seed: u64) {
        let ctx = Context::new(n).unwrap();
        let (t1, t2) = (Variable::theta(1), Variable::theta(2));
        let d = n as usize;
        let state = ProductRecipe::product(vec![Factor::coherent(t1, d), Factor::coherent(t2, d)]).build(&ctx).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_element(&ctx, &[t1, t2], 6, &mut rng);
        let spec = IntegralSpec::new(w, vec![t1, t2]).unwrap();
        let target = apply_weight_and_integrate(&spec, &state).unwrap();
        prop_assume!(target.norm() > 1e-6);
        let sol = solve_weight(&state, &[t1, t2], &target, &ctx.all_monomials(&[t1, t2])).unwrap();
        prop_assert!(sol.feasible);
        let again = apply_weight_and_integrate(&IntegralSpec::new(sol.weight.clone(), vec![t1, t2]).unwrap(), &state).unwrap();
        prop_assert!(again.distance(&target) < 1e-9);
    }
}
