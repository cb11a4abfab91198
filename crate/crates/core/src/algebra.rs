//! Z_n-graded Grassmann algebra.
//!
//! Generators θ_i and θ̄_i satisfy θ^n = 0 and reorder with powers of the
//! primitive root q = exp(2πi/n). Products are stored in a canonical order
//! θ̄_1 < θ_1 < θ̄_2 < θ_2 < …, and every reordering phase is tracked as an
//! integer exponent of q so that no floating-point drift accumulates.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Coefficients below this magnitude are dropped when an element is built.
pub const PRUNE_TOL: f64 = 1e-12;
/// Default tolerance for equality checks.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Barred,
    Plain,
}

/// A generator θ_i (plain) or θ̄_i (barred). The derived ordering is the
/// canonical one: by index, barred before plain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub index: u32,
    pub kind: Kind,
}

impl Variable {
    pub const fn theta(index: u32) -> Self {
        Variable { index, kind: Kind::Plain }
    }

    pub const fn theta_bar(index: u32) -> Self {
        Variable { index, kind: Kind::Barred }
    }

    pub fn is_barred(&self) -> bool {
        self.kind == Kind::Barred
    }

    /// θ_i ↔ θ̄_i.
    pub fn toggled(&self) -> Self {
        let kind = match self.kind {
            Kind::Barred => Kind::Plain,
            Kind::Plain => Kind::Barred,
        };
        Variable { index: self.index, kind }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Plain => write!(f, "t{}", self.index),
            Kind::Barred => write!(f, "tb{}", self.index),
        }
    }
}

impl FromStr for Variable {
    type Err = Error;

    /// Parses `t3` (θ_3) or `tb3` (θ̄_3).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, rest) = if let Some(rest) = s.strip_prefix("tb") {
            (Kind::Barred, rest)
        } else if let Some(rest) = s.strip_prefix('t') {
            (Kind::Plain, rest)
        } else {
            return Err(Error::InvalidParameter(format!("bad variable `{s}`")));
        };
        let index: u32 = rest.parse().map_err(|_| Error::InvalidParameter(format!("bad variable `{s}`")))?;
        if index == 0 {
            return Err(Error::InvalidParameter("variable indices start at 1".into()));
        }
        Ok(Variable { index, kind })
    }
}

/// Nilpotency order n and the root q = exp(2πi/n).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradeConfig {
    n: u32,
}

impl GradeConfig {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGrade(n));
        }
        Ok(GradeConfig { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> Complex64 {
        self.q_power(1)
    }

    /// q^k, with k reduced mod n before the exponential is evaluated.
    pub fn q_power(&self, k: i64) -> Complex64 {
        q_power(*self, k)
    }
}

/// exp(2πik/n) computed from k mod n.
pub fn q_power(cfg: GradeConfig, k: i64) -> Complex64 {
    let n = cfg.n as i64;
    let r = k.rem_euclid(n);
    // exact quarter turns keep the common cases free of rounding noise
    if r == 0 {
        Complex64::new(1.0, 0.0)
    } else if 2 * r == n {
        Complex64::new(-1.0, 0.0)
    } else if 4 * r == n {
        Complex64::new(0.0, 1.0)
    } else if 4 * r == 3 * n {
        Complex64::new(0.0, -1.0)
    } else {
        Complex64::from_polar(1.0, TAU * r as f64 / n as f64)
    }
}

/// Reordering exponents: x·y = q^{eps(x,y)} y·x.
///
/// `eps` is antisymmetric by construction; only pairs in canonical order are
/// stored. The defaults reproduce θ_iθ_j = qθ_jθ_i, θ̄_iθ̄_j = qθ̄_jθ̄_i and
/// θθ̄ = q̄θ̄θ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseTable {
    same_kind: i64,
    same_index: i64,
    mixed_index: i64,
    overrides: BTreeMap<(Variable, Variable), i64>,
}

impl Default for PhaseTable {
    fn default() -> Self {
        PhaseTable { same_kind: 1, same_index: 1, mixed_index: 1, overrides: BTreeMap::new() }
    }
}

impl PhaseTable {
    /// A table under which conjugation is an anti-automorphism for every
    /// grade: the θ̄_i/θ_i phase is real (−1 for even n, +1 for odd n).
    pub fn conjugation_compatible(n: u32) -> Self {
        let same_index = if n.is_multiple_of(2) { n as i64 / 2 } else { 0 };
        PhaseTable { same_index, ..PhaseTable::default() }
    }

    /// Exponent for θ̄_i·θ_i = q^{eps} θ_i·θ̄_i.
    pub fn with_same_index(mut self, eps: i64) -> Self {
        self.same_index = eps;
        self
    }

    /// Exponent for barred/plain pairs with different indices.
    pub fn with_mixed_index(mut self, eps: i64) -> Self {
        self.mixed_index = eps;
        self
    }

    /// Sets eps(x, y) (and hence eps(y, x) = −eps) for one pair.
    pub fn with_override(mut self, x: Variable, y: Variable, eps: i64) -> Self {
        if x < y {
            self.overrides.insert((x, y), eps);
        } else if y < x {
            self.overrides.insert((y, x), -eps);
        }
        self
    }

    pub fn eps(&self, x: Variable, y: Variable) -> i64 {
        use std::cmp::Ordering::*;
        match x.cmp(&y) {
            Equal => 0,
            Less => self.ordered(x, y),
            Greater => -self.ordered(y, x),
        }
    }

    fn ordered(&self, x: Variable, y: Variable) -> i64 {
        if let Some(&e) = self.overrides.get(&(x, y)) {
            return e;
        }
        if x.index == y.index {
            self.same_index
        } else if x.kind == y.kind {
            self.same_kind
        } else {
            self.mixed_index
        }
    }
}

/// Grade plus reordering rules. Elements carry an `Arc<Context>`; operands of
/// a binary operation must agree on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Context {
    grade: GradeConfig,
    phases: PhaseTable,
}

impl Context {
    pub fn new(n: u32) -> Result<Arc<Self>> {
        Self::with_phases(n, PhaseTable::default())
    }

    pub fn with_phases(n: u32, phases: PhaseTable) -> Result<Arc<Self>> {
        Ok(Arc::new(Context { grade: GradeConfig::new(n)?, phases }))
    }

    pub fn grade(&self) -> GradeConfig {
        self.grade
    }

    pub fn n(&self) -> u32 {
        self.grade.n
    }

    pub fn phases(&self) -> &PhaseTable {
        &self.phases
    }

    pub fn q_power(&self, k: i64) -> Complex64 {
        self.grade.q_power(k)
    }

    pub fn eps(&self, x: Variable, y: Variable) -> i64 {
        self.phases.eps(x, y)
    }

    /// Brings a word of variable powers into canonical order.
    ///
    /// Returns the accumulated phase exponent and the canonical monomial, or
    /// `None` when some exponent reaches n.
    pub fn normal_order(&self, word: &[(Variable, u32)]) -> Option<(i64, Monomial)> {
        let mut blocks: Vec<(Variable, u32)> = Vec::with_capacity(word.len());
        let mut phase = 0i64;
        for &(v, e) in word {
            if e == 0 {
                continue;
            }
            let mut pos = blocks.len();
            while pos > 0 && blocks[pos - 1].0 > v {
                let (x, a) = blocks[pos - 1];
                phase += a as i64 * e as i64 * self.eps(x, v);
                pos -= 1;
            }
            if pos > 0 && blocks[pos - 1].0 == v {
                blocks[pos - 1].1 += e;
            } else {
                blocks.insert(pos, (v, e));
            }
        }
        if blocks.iter().any(|&(_, e)| e >= self.n()) {
            return None;
        }
        Some((phase, Monomial(blocks)))
    }

    /// Every canonical monomial over `vars` with exponents below n.
    pub fn all_monomials(&self, vars: &[Variable]) -> Vec<Monomial> {
        let mut vars = vars.to_vec();
        vars.sort();
        vars.dedup();
        let n = self.n();
        let mut out = vec![Monomial::one()];
        for &v in &vars {
            let mut next = Vec::with_capacity(out.len() * n as usize);
            for m in &out {
                for e in 0..n {
                    let mut blocks = m.0.clone();
                    if e > 0 {
                        blocks.push((v, e));
                    }
                    next.push(Monomial(blocks));
                }
            }
            out = next;
        }
        out
    }
}

pub(crate) fn same_context(a: &Arc<Context>, b: &Arc<Context>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A canonical product of variable powers; the empty monomial is 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<(Variable, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// Single block v^e (e = 0 gives 1). No grade check.
    pub fn power(v: Variable, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn blocks(&self) -> &[(Variable, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.0.iter().find(|(x, _)| *x == v).map(|&(_, e)| e).unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Finite sum of complex coefficients times canonical monomials.
#[derive(Clone, Debug)]
pub struct Element {
    ctx: Arc<Context>,
    terms: BTreeMap<Monomial, Complex64>,
}

impl Element {
    pub fn zero(ctx: &Arc<Context>) -> Self {
        Element { ctx: Arc::clone(ctx), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Arc<Context>) -> Self {
        Self::scalar(ctx, Complex64::new(1.0, 0.0))
    }

    pub fn scalar(ctx: &Arc<Context>, c: Complex64) -> Self {
        Self::from_terms(ctx, [(Monomial::one(), c)])
    }

    pub fn var(ctx: &Arc<Context>, v: Variable) -> Self {
        Self::word(ctx, Complex64::new(1.0, 0.0), &[(v, 1)])
    }

    /// c times an arbitrary (not necessarily ordered) word of powers.
    pub fn word(ctx: &Arc<Context>, c: Complex64, word: &[(Variable, u32)]) -> Self {
        let mut out = Self::zero(ctx);
        if let Some((phase, m)) = ctx.normal_order(word) {
            out.terms.insert(m, c * ctx.q_power(phase));
        }
        out.prune();
        out
    }

    /// Builds from canonical monomials; terms whose exponents reach n vanish.
    pub fn from_terms<I>(ctx: &Arc<Context>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Complex64)>,
    {
        let mut out = Self::zero(ctx);
        for (m, c) in terms {
            if m.0.iter().any(|&(_, e)| e >= ctx.n()) {
                continue;
            }
            *out.terms.entry(m).or_default() += c;
        }
        out.prune();
        out
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Complex64> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Complex64 {
        self.terms.get(m).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= PRUNE_TOL);
    }

    fn check(&self, other: &Element) -> Result<()> {
        if same_context(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            *out.terms.entry(m.clone()).or_default() += c;
        }
        out.prune();
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> Element {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out.prune();
        out
    }

    pub fn multiply(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        let mut out = Self::zero(&self.ctx);
        let mut word = Vec::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                word.clear();
                word.extend_from_slice(&ma.0);
                word.extend_from_slice(&mb.0);
                if let Some((phase, m)) = self.ctx.normal_order(&word) {
                    *out.terms.entry(m).or_default() += ca * cb * self.ctx.q_power(phase);
                }
            }
        }
        out.prune();
        Ok(out)
    }

    /// Hermitian conjugate: reverse each word, toggle bars, conjugate the
    /// scalar, renormal-order.
    pub fn conjugate(&self) -> Element {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            let word: Vec<_> = m.0.iter().rev().map(|&(v, e)| (v.toggled(), e)).collect();
            if let Some((phase, cm)) = self.ctx.normal_order(&word) {
                *out.terms.entry(cm).or_default() += c.conj() * self.ctx.q_power(phase);
            }
        }
        out.prune();
        out
    }

    /// Substitutes v → c·v.
    pub fn scale_variable(&self, v: Variable, c: Complex64) -> Element {
        let mut out = self.clone();
        for (m, coeff) in out.terms.iter_mut() {
            let e = m.exponent(v);
            if e > 0 {
                *coeff *= c.powu(e);
            }
        }
        out.prune();
        out
    }

    /// Berezin integral ∫dv: v is commuted to the far left, then the term
    /// survives (with v removed) only if v carries the top power n − 1.
    pub fn integrate(&self, v: Variable) -> Element {
        let mut out = Self::zero(&self.ctx);
        for (m, c) in &self.terms {
            if let Some((phase, rest)) = berezin_term(&self.ctx, m, v) {
                *out.terms.entry(rest).or_default() += c * self.ctx.q_power(phase);
            }
        }
        out.prune();
        out
    }

    /// ∫dv_1 … dv_k, applied right to left (the innermost differential first).
    pub fn integrate_many(&self, order: &[Variable]) -> Result<Element> {
        check_distinct(order)?;
        Ok(order.iter().rev().fold(self.clone(), |acc, &v| acc.integrate(v)))
    }

    /// Largest coefficient difference against `other`.
    pub fn distance(&self, other: &Element) -> f64 {
        let mut d: f64 = 0.0;
        for (m, c) in &self.terms {
            d = d.max((c - other.coeff(m)).norm());
        }
        for (m, c) in &other.terms {
            if !self.terms.contains_key(m) {
                d = d.max(c.norm());
            }
        }
        d
    }

    pub fn approx_eq(&self, other: &Element, tol: f64) -> bool {
        same_context(&self.ctx, &other.ctx) && self.distance(other) <= tol
    }
}

/// Phase exponent and remainder of ∫dv applied to one monomial, or `None`
/// when the term integrates to zero.
pub(crate) fn berezin_term(ctx: &Context, m: &Monomial, v: Variable) -> Option<(i64, Monomial)> {
    let pos = m.0.iter().position(|&(x, _)| x == v)?;
    let e = m.0[pos].1;
    if e != ctx.n() - 1 {
        return None;
    }
    let phase = m.0[..pos].iter().map(|&(x, a)| a as i64 * e as i64 * ctx.eps(x, v)).sum();
    let mut rest = m.0.clone();
    rest.remove(pos);
    Some((phase, Monomial(rest)))
}

pub(crate) fn check_distinct(order: &[Variable]) -> Result<()> {
    for (i, v) in order.iter().enumerate() {
        if order[..i].contains(v) {
            return Err(Error::RepeatedVariable(*v));
        }
    }
    Ok(())
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.6}{:+.6}i)·{}", c.re, c.im, m)?;
        }
        Ok(())
    }
}

impl Add for &Element {
    type Output = Element;

    /// # Panics
    /// On operands from different contexts; use [`Element::try_add`] to get an error instead.
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("adding elements of different contexts")
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self + &(-rhs)
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Mul for &Element {
    type Output = Element;

    /// # Panics
    /// On operands from different contexts; use [`Element::multiply`] to get an error instead.
    fn mul(self, rhs: &Element) -> Element {
        self.multiply(rhs).expect("multiplying elements of different contexts")
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        &self * &rhs
    }
}

impl Mul<Complex64> for &Element {
    type Output = Element;
    fn mul(self, rhs: Complex64) -> Element {
        self.scale(rhs)
    }
}

impl Mul<Complex64> for Element {
    type Output = Element;
    fn mul(self, rhs: Complex64) -> Element {
        self.scale(rhs)
    }
}

/// Random element over `vars`: up to `max_terms` words, each a shuffled
/// product of random powers, with coefficients in the unit square.
pub fn random_element<R: Rng + ?Sized>(
    ctx: &Arc<Context>,
    vars: &[Variable],
    max_terms: usize,
    rng: &mut R,
) -> Element {
    let n = ctx.n();
    let mut out = Element::zero(ctx);
    let terms = rng.gen_range(1..=max_terms.max(1));
    for _ in 0..terms {
        let mut word: Vec<(Variable, u32)> = Vec::new();
        for &v in vars {
            if rng.gen_bool(0.6) {
                word.push((v, rng.gen_range(1..n)));
            }
        }
        for i in (1..word.len()).rev() {
            let j = rng.gen_range(0..=i);
            word.swap(i, j);
        }
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        out = &out + &Element::word(ctx, c, &word);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn q_power_examples() {
        let g3 = GradeConfig::new(3).unwrap();
        assert_eq!(q_power(g3, 0), c(1.0, 0.0));
        assert_eq!(q_power(g3, 3), c(1.0, 0.0));
        assert_eq!(q_power(g3, -3), c(1.0, 0.0));
        let g4 = GradeConfig::new(4).unwrap();
        assert_eq!(q_power(g4, 1), c(0.0, 1.0));
        assert!(close(q_power(g3, 1) * q_power(g3, 2), c(1.0, 0.0)));
        assert!(close(q_power(g3, -1), q_power(g3, 1).conj()));
    }

    #[test]
    fn q_is_primitive() {
        for n in 2..=8 {
            let g = GradeConfig::new(n).unwrap();
            assert!(close(g.q().powu(n), c(1.0, 0.0)));
            for k in 1..n {
                assert!((g.q().powu(k) - c(1.0, 0.0)).norm() > 1e-6);
            }
        }
    }

    #[test]
    fn grade_below_two_rejected() {
        assert_eq!(GradeConfig::new(1), Err(Error::InvalidGrade(1)));
        assert!(Context::new(0).is_err());
    }

    #[test]
    fn canonical_order_barred_first() {
        let mut vs = vec![Variable::theta(2), Variable::theta_bar(2), Variable::theta(1), Variable::theta_bar(1)];
        vs.sort();
        assert_eq!(vs, vec![Variable::theta_bar(1), Variable::theta(1), Variable::theta_bar(2), Variable::theta(2)]);
    }

    #[test]
    fn variable_parse_roundtrip() {
        for v in [Variable::theta(3), Variable::theta_bar(12)] {
            assert_eq!(v.to_string().parse::<Variable>().unwrap(), v);
        }
        assert!("x1".parse::<Variable>().is_err());
        assert!("t0".parse::<Variable>().is_err());
    }

    #[test]
    fn swap_gives_q_bar() {
        let ctx = Context::new(3).unwrap();
        let t1 = Element::var(&ctx, Variable::theta(1));
        let t2 = Element::var(&ctx, Variable::theta(2));
        let p = &t2 * &t1;
        let m = Monomial(vec![(Variable::theta(1), 1), (Variable::theta(2), 1)]);
        assert_eq!(p.len(), 1);
        assert!(close(p.coeff(&m), ctx.q_power(-1)));
        // θ_1θ_2 = q θ_2θ_1
        let back = &t1 * &t2;
        assert!(close(back.coeff(&m), p.coeff(&m) * ctx.q_power(1)));
    }

    #[test]
    fn barred_relations_hold() {
        let ctx = Context::new(5).unwrap();
        let tb1 = Element::var(&ctx, Variable::theta_bar(1));
        let tb2 = Element::var(&ctx, Variable::theta_bar(2));
        let t1 = Element::var(&ctx, Variable::theta(1));
        let q = ctx.q_power(1);
        // θ̄_1θ̄_2 = q θ̄_2θ̄_1
        assert!((&tb1 * &tb2).approx_eq(&(&tb2 * &tb1).scale(q), 1e-12));
        // θθ̄ = q̄ θ̄θ
        assert!((&t1 * &tb1).approx_eq(&(&tb1 * &t1).scale(q.conj()), 1e-12));
    }

    #[test]
    fn nilpotent_square_at_grade_two() {
        let ctx = Context::new(2).unwrap();
        let t = Element::var(&ctx, Variable::theta(1));
        assert!((&t * &t).is_zero());
    }

    #[test]
    fn reorder_oracle_for_repeated_variable() {
        // θ_1θ_2·θ_1 at n = 3: move the trailing θ_1 left past θ_2 one
        // transposition at a time: θ_2θ_1 = q̄ θ_1θ_2.
        let ctx = Context::new(3).unwrap();
        let (t1, t2) = (Variable::theta(1), Variable::theta(2));
        let lhs = Element::word(&ctx, c(1.0, 0.0), &[(t1, 1), (t2, 1)]);
        let p = &lhs * &Element::var(&ctx, t1);
        let m = Monomial(vec![(t1, 2), (t2, 1)]);
        assert!(close(p.coeff(&m), ctx.q_power(-1)));
    }

    #[test]
    fn conjugate_examples() {
        let ctx = Context::new(3).unwrap();
        let (t1, t2) = (Variable::theta(1), Variable::theta(2));
        let t = Element::var(&ctx, t1);
        assert!(t.conjugate().approx_eq(&Element::var(&ctx, t1.toggled()), 0.0));
        let one = Element::one(&ctx);
        assert!(one.conjugate().approx_eq(&one, 0.0));
        // (q θ_1θ_2)† = q̄ θ̄_2θ̄_1 = q̄ · q̄ θ̄_1θ̄_2
        let a = Element::word(&ctx, ctx.q_power(1), &[(t1, 1), (t2, 1)]);
        let m = Monomial(vec![(t1.toggled(), 1), (t2.toggled(), 1)]);
        assert!(close(a.conjugate().coeff(&m), ctx.q_power(-2)));
    }

    #[test]
    fn scale_variable_examples() {
        let ctx = Context::new(2).unwrap();
        let t = Variable::theta(1);
        let a = &Element::one(&ctx) + &Element::var(&ctx, t);
        let flipped = a.scale_variable(t, c(-1.0, 0.0));
        assert!(flipped.approx_eq(&(&Element::one(&ctx) - &Element::var(&ctx, t)), 0.0));
        assert!(a.scale_variable(t, c(1.0, 0.0)).approx_eq(&a, 0.0));

        let ctx3 = Context::new(3).unwrap();
        let sq = Element::word(&ctx3, c(1.0, 0.0), &[(t, 2)]);
        let scaled = sq.scale_variable(t, ctx3.q_power(1));
        assert!(close(scaled.coeff(&Monomial::power(t, 2)), ctx3.q_power(2)));
    }

    #[test]
    fn berezin_examples() {
        let ctx = Context::new(3).unwrap();
        let (t1, t2) = (Variable::theta(1), Variable::theta(2));
        let top = Element::word(&ctx, c(1.0, 0.0), &[(t1, 2)]);
        assert!(top.integrate(t1).approx_eq(&Element::one(&ctx), 0.0));
        assert!(Element::var(&ctx, t1).integrate(t1).is_zero());
        // ∫dθ_2 θ_1θ_2²: θ_2² moves past θ_1 with q^{1·2·eps(θ_1,θ_2)}
        let a = Element::word(&ctx, c(1.0, 0.0), &[(t1, 1), (t2, 2)]);
        let r = a.integrate(t2);
        assert!(close(r.coeff(&Monomial::power(t1, 1)), ctx.q_power(2 * ctx.eps(t1, t2))));
        assert_eq!(r.len(), 1);
    }

    #[test]
    fn multi_integrate_examples() {
        let ctx = Context::new(2).unwrap();
        let (t1, t2) = (Variable::theta(1), Variable::theta(2));
        let a = Element::word(&ctx, c(1.0, 0.0), &[(t1, 1), (t2, 1)]);
        // ∫dθ_1(∫dθ_2 θ_1θ_2) = ∫dθ_1 (−θ_1) = −1
        let r = a.integrate_many(&[t1, t2]).unwrap();
        assert!(close(r.coeff(&Monomial::one()), c(-1.0, 0.0)));
        assert!(a.integrate_many(&[]).unwrap().approx_eq(&a, 0.0));
        let lone = Element::var(&ctx, t1);
        assert!(lone.integrate_many(&[t1, t2]).unwrap().is_zero());
        assert_eq!(a.integrate_many(&[t1, t1]).unwrap_err(), Error::RepeatedVariable(t1));
    }

    #[test]
    fn mixed_contexts_rejected() {
        let a = Element::one(&Context::new(2).unwrap());
        let b = Element::one(&Context::new(3).unwrap());
        assert_eq!(a.multiply(&b).unwrap_err(), Error::ContextMismatch);
        // structurally equal contexts are interchangeable
        let c2 = Element::one(&Context::new(2).unwrap());
        assert!(a.multiply(&c2).is_ok());
    }

    #[test]
    fn all_monomials_counts() {
        let ctx = Context::new(3).unwrap();
        let ms = ctx.all_monomials(&[Variable::theta(2), Variable::theta(1)]);
        assert_eq!(ms.len(), 9);
        assert!(ms.contains(&Monomial::one()));
    }

    #[test]
    fn compatible_table_is_real_on_same_index() {
        for n in 2..=6 {
            let t = PhaseTable::conjugation_compatible(n);
            let g = GradeConfig::new(n).unwrap();
            let z = g.q_power(t.eps(Variable::theta_bar(1), Variable::theta(1)));
            assert!(z.im.abs() < 1e-12);
        }
    }
}
