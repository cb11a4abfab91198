//! Least-squares synthesis of weight functions.
//!
//! For a fixed product state and differential list the map from weight
//! coefficients to integrated output is linear, so the best weight over a
//! monomial basis is a minimum-norm least-squares solution.

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector, SVD};
use num_complex::Complex64;

use super::{integrate_weighted, IntegralSpec};
use crate::algebra::{Context, Element, Monomial, Variable, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::qstate::{coherent_state, squeezed_state_exp, squeezed_state_symmetric, GradedState, PlainState};

#[derive(Clone, Debug, PartialEq)]
pub enum FactorKind {
    Coherent { scale: Complex64 },
    SqueezedSymmetric,
    SqueezedExp,
}

/// One single-site state in a product recipe.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    pub kind: FactorKind,
    pub var: Variable,
    pub dim: usize,
}

impl Factor {
    pub fn coherent(var: Variable, dim: usize) -> Self {
        Self::coherent_scaled(var, dim, Complex64::new(1.0, 0.0))
    }

    pub fn coherent_scaled(var: Variable, dim: usize, scale: Complex64) -> Self {
        Factor { kind: FactorKind::Coherent { scale }, var, dim }
    }

    pub fn squeezed_symmetric(var: Variable) -> Self {
        Factor { kind: FactorKind::SqueezedSymmetric, var, dim: 3 }
    }

    pub fn squeezed_exp(var: Variable, dim: usize) -> Self {
        Factor { kind: FactorKind::SqueezedExp, var, dim }
    }

    pub fn build(&self, ctx: &Arc<Context>) -> Result<GradedState> {
        match self.kind {
            FactorKind::Coherent { scale } => coherent_state(ctx, self.var, self.dim, scale),
            FactorKind::SqueezedSymmetric => squeezed_state_symmetric(ctx, self.var),
            FactorKind::SqueezedExp => squeezed_state_exp(ctx, self.var, self.dim),
        }
    }

    /// Variables the built state depends on.
    pub fn variables(&self) -> Vec<Variable> {
        match self.kind {
            FactorKind::SqueezedSymmetric => vec![self.var, self.var.toggled()],
            _ => vec![self.var],
        }
    }
}

/// A linear combination of tensor products of factors.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductRecipe {
    terms: Vec<(Complex64, Vec<Factor>)>,
}

impl ProductRecipe {
    pub fn product(factors: Vec<Factor>) -> Self {
        ProductRecipe { terms: vec![(Complex64::new(1.0, 0.0), factors)] }
    }

    pub fn sum(terms: Vec<(Complex64, Vec<Factor>)>) -> Result<Self> {
        let first = terms.first().ok_or_else(|| Error::InvalidParameter("empty product recipe".into()))?;
        let dims: Vec<usize> = first.1.iter().map(|f| f.dim).collect();
        for (_, fs) in &terms {
            if fs.is_empty() || fs.iter().map(|f| f.dim).ne(dims.iter().copied()) {
                return Err(Error::DimensionMismatch("recipe terms act on different spaces".into()));
            }
        }
        Ok(ProductRecipe { terms })
    }

    pub fn terms(&self) -> &[(Complex64, Vec<Factor>)] {
        &self.terms
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms[0].1.iter().map(|f| f.dim).collect()
    }

    /// Every variable used by any factor, in canonical order.
    pub fn variables(&self) -> Vec<Variable> {
        let mut vs: Vec<Variable> =
            self.terms.iter().flat_map(|(_, fs)| fs.iter().flat_map(Factor::variables)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn build(&self, ctx: &Arc<Context>) -> Result<GradedState> {
        let mut total = GradedState::new(ctx, &self.dims())?;
        for (c, factors) in &self.terms {
            let states = factors.iter().map(|f| f.build(ctx)).collect::<Result<Vec<_>>>()?;
            let product = crate::qstate::tensor_all(&states)?;
            total = total.try_add(&product.scale(*c))?;
        }
        Ok(total)
    }
}

#[derive(Clone, Debug)]
pub struct WeightSolution {
    pub weight: Element,
    pub basis: Vec<Monomial>,
    pub coefficients: Vec<Complex64>,
    /// ‖∫ w·ψ − target‖ recomputed through the integration path, counting
    /// leftover Grassmann terms as error.
    pub residual: f64,
    pub feasible: bool,
    pub rank: usize,
    /// Target kets with nonzero amplitude that no basis monomial can reach.
    pub unreachable: Vec<Vec<usize>>,
}

impl WeightSolution {
    /// Largest coefficient modulus on basis monomials rejected by `keep`.
    pub fn max_coefficient_outside<F: Fn(&Monomial) -> bool>(&self, keep: F) -> f64 {
        self.basis.iter().zip(&self.coefficients).filter(|(m, _)| !keep(m)).map(|(_, c)| c.norm()).fold(0.0, f64::max)
    }
}

/// Finds the minimum-norm weight Σ x_b b over `basis` that brings
/// ∫ d(differentials) w·state closest to `target`.
pub fn solve_weight(
    state: &GradedState,
    differentials: &[Variable],
    target: &PlainState,
    basis: &[Monomial],
) -> Result<WeightSolution> {
    if basis.is_empty() {
        return Err(Error::EmptyBasis);
    }
    if state.dims() != target.dims() {
        return Err(Error::DimensionMismatch(format!(
            "state space {:?}, target space {:?}",
            state.dims(),
            target.dims()
        )));
    }
    let ctx = state.context();
    if let Some(m) = basis.iter().find(|m| m.blocks().iter().any(|&(_, e)| e >= ctx.n())) {
        return Err(Error::InvalidParameter(format!("basis monomial {m} vanishes at grade {}", ctx.n())));
    }

    let mut columns = Vec::with_capacity(basis.len());
    for m in basis {
        let w = Element::from_terms(ctx, [(m.clone(), Complex64::new(1.0, 0.0))]);
        let spec = IntegralSpec::new(w, differentials.to_vec())?;
        columns.push(integrate_weighted(&spec, state)?);
    }

    let target_terms = target.support(0.0);
    let mut rows: BTreeMap<(Monomial, Vec<usize>), usize> = BTreeMap::new();
    for (ket, _) in &target_terms {
        let next = rows.len();
        rows.entry((Monomial::one(), ket.clone())).or_insert(next);
    }
    for col in &columns {
        for key in col.terms().keys() {
            let next = rows.len();
            rows.entry(key.clone()).or_insert(next);
        }
    }

    let mut a = DMatrix::<Complex64>::zeros(rows.len(), basis.len());
    for (j, col) in columns.iter().enumerate() {
        for (key, c) in col.terms() {
            a[(rows[key], j)] = *c;
        }
    }
    let mut t = DVector::<Complex64>::zeros(rows.len());
    for (ket, c) in &target_terms {
        t[rows[&(Monomial::one(), ket.clone())]] = *c;
    }

    let svd = SVD::new(a.clone(), true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cutoff = (smax * 1e-10).max(1e-14);
    let rank = svd.rank(cutoff);
    let x = svd.solve(&t, cutoff).map_err(|e| Error::InvalidParameter(format!("least squares failed: {e}")))?;

    let coefficients: Vec<Complex64> = x.iter().copied().collect();
    let weight = Element::from_terms(ctx, basis.iter().cloned().zip(coefficients.iter().copied()));
    let spec = IntegralSpec::new(weight.clone(), differentials.to_vec())?;
    let produced = integrate_weighted(&spec, state)?;
    let residual = produced.distance(&GradedState::from_plain(ctx, target)?);

    let unreachable = target_terms
        .iter()
        .filter(|(ket, c)| {
            c.norm() > DEFAULT_TOL && {
                let r = rows[&(Monomial::one(), ket.clone())];
                a.row(r).iter().all(|v| v.norm() <= DEFAULT_TOL)
            }
        })
        .map(|(ket, _)| ket.clone())
        .collect();

    Ok(WeightSolution {
        weight,
        basis: basis.to_vec(),
        coefficients,
        residual,
        feasible: residual < DEFAULT_TOL,
        rank,
        unreachable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform_diagonal(n: usize) -> PlainState {
        let h = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
        let kets: Vec<[usize; 2]> = (0..n).map(|i| [i, i]).collect();
        PlainState::from_terms(&[n, n], kets.iter().map(|k| (h, &k[..]))).unwrap()
    }

    #[test]
    fn qutrit_diagonal_target_is_feasible_with_diagonal_support() {
        let ctx = Context::new(3).unwrap();
        let (t1, t2) = (Variable::theta(1), Variable::theta(2));
        let recipe = ProductRecipe::product(vec![Factor::coherent(t1, 3), Factor::coherent(t2, 3)]);
        let state = recipe.build(&ctx).unwrap();
        let basis = ctx.all_monomials(&[t1, t2]);
        assert_eq!(basis.len(), 9);
        let sol = solve_weight(&state, &[t1, t2], &uniform_diagonal(3), &basis).unwrap();
        assert!(sol.feasible, "residual {}", sol.residual);
        assert!(sol.max_coefficient_outside(|m| m.exponent(t1) == m.exponent(t2)) < 1e-9);
        assert!(sol.unreachable.is_empty());
    }

    #[test]
    fn single_variable_coherent_pair_cannot_reach_02_20() {
        let ctx = Context::new(3).unwrap();
        let t = Variable::theta(1);
        let recipe = ProductRecipe::product(vec![Factor::coherent(t, 3), Factor::coherent(t, 3)]);
        let state = recipe.build(&ctx).unwrap();
        let h = Complex64::new(0.5f64.sqrt(), 0.0);
        let target = PlainState::from_terms(&[3, 3], [(h, &[0usize, 2][..]), (h, &[2, 0][..])]).unwrap();
        let sol = solve_weight(&state, &[t], &target, &ctx.all_monomials(&[t])).unwrap();
        assert!(!sol.feasible);
        assert!(sol.residual > 0.5);
    }

    #[test]
    fn empty_basis_and_dimension_errors() {
        let ctx = Context::new(2).unwrap();
        let t = Variable::theta(1);
        let state = Factor::coherent(t, 2).build(&ctx).unwrap();
        let target = PlainState::from_terms(&[2], [(Complex64::new(1.0, 0.0), &[0usize][..])]).unwrap();
        assert_eq!(solve_weight(&state, &[t], &target, &[]).unwrap_err(), Error::EmptyBasis);
        let wrong = PlainState::zeros(&[2, 2]).unwrap();
        assert!(solve_weight(&state, &[t], &wrong, &[Monomial::one()]).is_err());
    }

    #[test]
    fn recipe_sum_checks_dims() {
        let t = Variable::theta(1);
        let one = Complex64::new(1.0, 0.0);
        assert!(
            ProductRecipe::sum(vec![(one, vec![Factor::coherent(t, 2)]), (one, vec![Factor::coherent(t, 3)])]).is_err()
        );
        assert!(ProductRecipe::sum(vec![]).is_err());
    }
}
