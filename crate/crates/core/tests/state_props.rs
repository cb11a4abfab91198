use gcs_core::algebra::{Context, Variable};
use gcs_core::qstate::{coherent_state, eigenstate_check, GradedState, Segment};
use num_complex::Complex64;
use proptest::prelude::*;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn factorial(m: usize) -> f64 {
    (1..=m).map(|k| k as f64).product()
}

#[test]
fn coherent_product_coefficients_match_closed_form() {
    // |θ_1⟩|θ_2⟩ = Σ c_ij θ_1^iθ_2^j |i⟩|j⟩ with c_ij = q^{((j−i)−(i+j)²)/2}/√(i!j!)
    for n in 2..=6u32 {
        let ctx = Context::new(n).unwrap();
        let (t1, t2) = (Variable::theta(1), Variable::theta(2));
        let d = n as usize;
        let pair =
            coherent_state(&ctx, t1, d, one()).unwrap().tensor(&coherent_state(&ctx, t2, d, one()).unwrap()).unwrap();
        for i in 0..d {
            for j in 0..d {
                let word: Vec<_> = [(t1, i as u32), (t2, j as u32)].into_iter().filter(|&(_, e)| e > 0).collect();
                let (_, mono) = ctx.normal_order(&word).unwrap();
                let (ii, jj) = (i as i64, j as i64);
                let expected = ctx.q_power(((jj - ii) - (ii + jj).pow(2)) / 2) / (factorial(i) * factorial(j)).sqrt();
                let got = pair.coeff(&mono, &[i, j]);
                assert!((got - expected).norm() < 1e-12, "n={n} i={i} j={j}");
                assert!((got.norm() - 1.0 / (factorial(i) * factorial(j)).sqrt()).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn coherent_states_are_eigenstates_for_all_grades() {
    for n in 2..=6u32 {
        let ctx = Context::new(n).unwrap();
        for v in [Variable::theta(1), Variable::theta_bar(1)] {
            let s = coherent_state(&ctx, v, n as usize, one()).unwrap();
            assert!(eigenstate_check(&s, v).unwrap() < 1e-12, "n={n} {v}");
        }
    }
}

proptest! {
    #[test]
    fn tensor_is_associative(n in 2u32..=5, s1 in 1u32..=3, s2 in 1u32..=3, s3 in 1u32..=3) {
        let ctx = Context::new(n).unwrap();
        let d = n as usize;
        let a = coherent_state(&ctx, Variable::theta(s1), d, one()).unwrap();
        let b = coherent_state(&ctx, Variable::theta_bar(s2), d, one()).unwrap();
        let c = coherent_state(&ctx, Variable::theta(s3), d, one()).unwrap();
        let left = a.tensor(&b).unwrap().tensor(&c).unwrap();
        let right = a.tensor(&b.tensor(&c).unwrap()).unwrap();
        prop_assert!(left.distance(&right) < 1e-12);
    }

    #[test]
    fn canonical_form_is_idempotent(n in 2u32..=5, s1 in 1u32..=2, s2 in 1u32..=2) {
        let ctx = Context::new(n).unwrap();
        let d = n as usize;
        let state = coherent_state(&ctx, Variable::theta(s1), d, one())
            .unwrap()
            .tensor(&coherent_state(&ctx, Variable::theta(s2), d, one()).unwrap())
            .unwrap();
        let words = state.terms().iter().map(|((m, k), c)| {
            let mut w = vec![Segment::Grassmann(m.clone())];
            w.extend(k.iter().map(|&l| Segment::Ket(l)));
            (*c, w)
        });
        let again = GradedState::from_words(&ctx, state.dims(), words).unwrap();
        prop_assert!(again.distance(&state) < 1e-15);
    }

    #[test]
    fn integration_clears_coherent_products(n in 2u32..=4) {
        // ∫dθ_1dθ_2 of |θ_1⟩|θ_2⟩ is plain and lands on |n−1, n−1⟩.
        let ctx = Context::new(n).unwrap();
        let d = n as usize;
        let (t1, t2) = (Variable::theta(1), Variable::theta(2));
        let pair = coherent_state(&ctx, t1, d, one()).unwrap().tensor(&coherent_state(&ctx, t2, d, one()).unwrap()).unwrap();
        let out = pair.integrate(&[t1, t2]).unwrap().to_plain().unwrap();
        let support = out.support(1e-12);
        prop_assert_eq!(support.len(), 1);
        prop_assert_eq!(&support[0].0, &vec![d - 1, d - 1]);
    }
}
