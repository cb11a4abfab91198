//! Weighted Berezin integration of graded states, entanglement measures,
//! the weight-function solver and the catalog of known constructions.

use std::sync::Arc;

use num_complex::Complex64;

use crate::algebra::{check_distinct, same_context, Context, Element, Variable};
use crate::error::{Error, Result};
use crate::qstate::{GradedState, PlainState};

pub mod catalog;
pub mod measures;
pub mod solver;

pub use catalog::{catalog_construct, catalog_ids, CatalogParams, ConstructionResult};
pub use measures::{
    bipartition_spectrum, compare_states, entanglement_report, is_maximally_entangled, purity_generalized,
    purity_viola, reduced_density, signature_equal, DensityMatrix, EntanglementReport, MatchLevel, PurityKind,
};
pub use solver::{solve_weight, Factor, FactorKind, ProductRecipe, WeightSolution};

/// A weight w together with the differentials dv_1 … dv_k of ∫dv_1…dv_k w|ψ⟩.
#[derive(Clone, Debug)]
pub struct IntegralSpec {
    weight: Element,
    differentials: Vec<Variable>,
}

impl IntegralSpec {
    pub fn new(weight: Element, differentials: Vec<Variable>) -> Result<Self> {
        check_distinct(&differentials)?;
        Ok(IntegralSpec { weight, differentials })
    }

    pub fn weight(&self) -> &Element {
        &self.weight
    }

    pub fn differentials(&self) -> &[Variable] {
        &self.differentials
    }
}

/// w·|ψ⟩ integrated right to left; Grassmann content may remain.
pub fn integrate_weighted(spec: &IntegralSpec, state: &GradedState) -> Result<GradedState> {
    if !same_context(spec.weight.context(), state.context()) {
        return Err(Error::ContextMismatch);
    }
    state.left_multiply(&spec.weight)?.integrate(&spec.differentials)
}

/// w·|ψ⟩ integrated right to left, which must leave a plain state.
pub fn apply_weight_and_integrate(spec: &IntegralSpec, state: &GradedState) -> Result<PlainState> {
    integrate_weighted(spec, state)?.to_plain()
}

/// Convenience for a scalar weight on a fresh context.
pub fn scalar_spec(ctx: &Arc<Context>, c: Complex64, differentials: Vec<Variable>) -> Result<IntegralSpec> {
    IntegralSpec::new(Element::scalar(ctx, c), differentials)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Monomial;
    use crate::qstate::{coherent_state, GradedState};

    #[test]
    fn w2_recipe_magnitudes() {
        let ctx = Context::new(2).unwrap();
        let t = Variable::theta(1);
        let g = coherent_state(&ctx, t, 2, Complex64::new(1.0, 0.0)).unwrap();
        let pair = g.tensor(&g).unwrap();
        let spec = scalar_spec(&ctx, Complex64::new(-0.5f64.sqrt(), 0.0), vec![t]).unwrap();
        let out = apply_weight_and_integrate(&spec, &pair).unwrap();
        let h = 0.5f64.sqrt();
        assert!((out.amplitude(&[0, 1]).norm() - h).abs() < 1e-12);
        assert!((out.amplitude(&[1, 0]).norm() - h).abs() < 1e-12);
        assert!(out.amplitude(&[0, 0]).norm() < 1e-12 && out.amplitude(&[1, 1]).norm() < 1e-12);
    }

    #[test]
    fn trivial_weights() {
        let ctx = Context::new(2).unwrap();
        let t = Variable::theta(1);
        let plain = PlainState::from_terms(
            &[2],
            [(Complex64::new(0.6, 0.0), &[0usize][..]), (Complex64::new(0.8, 0.0), &[1][..])],
        )
        .unwrap();
        let lifted = GradedState::from_plain(&ctx, &plain).unwrap();
        let id = IntegralSpec::new(Element::one(&ctx), vec![]).unwrap();
        assert_eq!(apply_weight_and_integrate(&id, &lifted).unwrap(), plain);

        let vac = GradedState::from_terms(&ctx, &[2], [(Complex64::new(1.0, 0.0), Monomial::one(), vec![0])]).unwrap();
        let spec = IntegralSpec::new(Element::var(&ctx, t), vec![t]).unwrap();
        let out = apply_weight_and_integrate(&spec, &vac).unwrap();
        assert!((out.amplitude(&[0]) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn incomplete_differentials_error() {
        let ctx = Context::new(2).unwrap();
        let (t1, t2) = (Variable::theta(1), Variable::theta(2));
        let a = coherent_state(&ctx, t1, 2, Complex64::new(1.0, 0.0)).unwrap();
        let b = coherent_state(&ctx, t2, 2, Complex64::new(1.0, 0.0)).unwrap();
        let spec = IntegralSpec::new(Element::var(&ctx, t1), vec![t1]).unwrap();
        let err = apply_weight_and_integrate(&spec, &a.tensor(&b).unwrap()).unwrap_err();
        assert!(matches!(err, Error::ResidualGrassmann { .. }));
        assert!(IntegralSpec::new(Element::one(&ctx), vec![t1, t1]).is_err());
    }
}
