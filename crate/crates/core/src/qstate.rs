//! Multi-qudit kets with Grassmann-valued coefficients.
//!
//! A [`GradedState`] stores terms `c · m |k⟩` with the monomial `m` always to
//! the left of the ket. Moving a monomial past a number state uses the
//! quantization rule θ|m⟩ = q^{m−1}|m⟩θ (conjugate phase for θ̄).

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::{berezin_term, check_distinct, same_context, Context, Element, Monomial, Variable, PRUNE_TOL};
use crate::error::{Error, Result};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn check_dims(dims: &[usize]) -> Result<()> {
    match dims.iter().find(|&&d| d < 2) {
        Some(&d) => Err(Error::InvalidDimension(d)),
        None => Ok(()),
    }
}

fn check_ket(dims: &[usize], ket: &[usize]) -> Result<()> {
    if ket.len() != dims.len() {
        return Err(Error::DimensionMismatch(format!("ket has {} sites, space has {}", ket.len(), dims.len())));
    }
    if let Some((s, _)) = ket.iter().zip(dims).enumerate().find(|(_, (k, d))| k >= d) {
        return Err(Error::SiteOutOfRange(s));
    }
    Ok(())
}

fn factorial(m: usize) -> f64 {
    (1..=m).map(|k| k as f64).product()
}

/// Exponent p with m·|level⟩ = q^p |level⟩·m.
pub fn ket_relation_exponent(m: &Monomial, level: usize) -> i64 {
    m.blocks()
        .iter()
        .map(|&(v, e)| {
            let sign = if v.is_barred() { -1 } else { 1 };
            sign * (level as i64 - 1) * e as i64
        })
        .sum()
}

/// The factor f in m·|level⟩ = f·|level⟩·m (θ|0⟩ = q̄|0⟩θ, θ|1⟩ = |1⟩θ, …).
pub fn ket_relation_phase(ctx: &Context, m: &Monomial, level: usize) -> Complex64 {
    ctx.q_power(ket_relation_exponent(m, level))
}

/// The factor f in |ket⟩·m = f·m·|ket⟩, i.e. the phase picked up when a
/// monomial standing right of a product ket is moved to its left.
pub fn quantize_swap(ctx: &Context, m: &Monomial, ket: &[usize]) -> Complex64 {
    let p: i64 = ket.iter().map(|&l| ket_relation_exponent(m, l)).sum();
    ctx.q_power(-p)
}

/// One piece of an interleaved product: a Grassmann monomial or a single-site
/// number state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Segment {
    Grassmann(Monomial),
    Ket(usize),
}

/// A dense Grassmann-free state on a product of qudit sites.
///
/// Amplitudes are stored row-major with site 0 most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct PlainState {
    dims: Vec<usize>,
    amps: Vec<Complex64>,
}

impl PlainState {
    pub fn zeros(dims: &[usize]) -> Result<Self> {
        check_dims(dims)?;
        Ok(PlainState { dims: dims.to_vec(), amps: vec![Complex64::default(); dims.iter().product()] })
    }

    pub fn from_terms<'a, I>(dims: &[usize], terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Complex64, &'a [usize])>,
    {
        let mut s = Self::zeros(dims)?;
        for (c, ket) in terms {
            check_ket(dims, ket)?;
            let i = s.index_of(ket);
            s.amps[i] += c;
        }
        Ok(s)
    }

    pub fn from_amplitudes(dims: &[usize], amps: Vec<Complex64>) -> Result<Self> {
        check_dims(dims)?;
        let len: usize = dims.iter().product();
        if amps.len() != len {
            return Err(Error::DimensionMismatch(format!("{} amplitudes for a space of dimension {len}", amps.len())));
        }
        Ok(PlainState { dims: dims.to_vec(), amps })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_sites(&self) -> usize {
        self.dims.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn index_of(&self, ket: &[usize]) -> usize {
        ket.iter().zip(&self.dims).fold(0, |acc, (&k, &d)| acc * d + k)
    }

    pub fn ket_of(&self, mut index: usize) -> Vec<usize> {
        let mut ket = vec![0; self.dims.len()];
        for (slot, &d) in ket.iter_mut().zip(&self.dims).rev() {
            *slot = index % d;
            index /= d;
        }
        ket
    }

    pub fn amplitude(&self, ket: &[usize]) -> Complex64 {
        self.amps[self.index_of(ket)]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<PlainState> {
        let n = self.norm();
        if n < PRUNE_TOL {
            return Err(Error::ZeroState);
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> PlainState {
        PlainState { dims: self.dims.clone(), amps: self.amps.iter().map(|a| a * c).collect() }
    }

    pub fn try_add(&self, other: &PlainState) -> Result<PlainState> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch("adding states on different spaces".into()));
        }
        Ok(PlainState {
            dims: self.dims.clone(),
            amps: self.amps.iter().zip(&other.amps).map(|(a, b)| a + b).collect(),
        })
    }

    /// Euclidean distance; infinite for states on different spaces.
    pub fn distance(&self, other: &PlainState) -> f64 {
        if self.dims != other.dims {
            return f64::INFINITY;
        }
        self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt()
    }

    /// Kets with |amplitude| above `tol`, in index order.
    pub fn support(&self, tol: f64) -> Vec<(Vec<usize>, Complex64)> {
        self.amps.iter().enumerate().filter(|(_, a)| a.norm() > tol).map(|(i, &a)| (self.ket_of(i), a)).collect()
    }
}

/// Finite sum of `c · monomial · |ket⟩` over a multi-qudit space.
#[derive(Clone, Debug)]
pub struct GradedState {
    ctx: Arc<Context>,
    dims: Vec<usize>,
    terms: BTreeMap<(Monomial, Vec<usize>), Complex64>,
}

impl GradedState {
    pub fn new(ctx: &Arc<Context>, dims: &[usize]) -> Result<Self> {
        check_dims(dims)?;
        Ok(GradedState { ctx: Arc::clone(ctx), dims: dims.to_vec(), terms: BTreeMap::new() })
    }

    pub fn from_terms<I>(ctx: &Arc<Context>, dims: &[usize], terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Complex64, Monomial, Vec<usize>)>,
    {
        let mut s = Self::new(ctx, dims)?;
        for (c, m, ket) in terms {
            check_ket(dims, &ket)?;
            if m.blocks().iter().any(|&(_, e)| e >= ctx.n()) {
                continue;
            }
            s.push(m, ket, c);
        }
        s.prune();
        Ok(s)
    }

    /// Builds a state from interleaved words such as θ^a |i⟩ θ^b |j⟩,
    /// moving every monomial to the far left.
    pub fn from_words<I>(ctx: &Arc<Context>, dims: &[usize], words: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Complex64, Vec<Segment>)>,
    {
        let mut s = Self::new(ctx, dims)?;
        for (c, word) in words {
            let mut phase = ONE;
            let mut grass: Vec<(Variable, u32)> = Vec::new();
            let mut ket = Vec::new();
            for seg in word {
                match seg {
                    Segment::Ket(l) => ket.push(l),
                    Segment::Grassmann(m) => {
                        phase *= quantize_swap(ctx, &m, &ket);
                        grass.extend_from_slice(m.blocks());
                    }
                }
            }
            check_ket(dims, &ket)?;
            if let Some((p, m)) = ctx.normal_order(&grass) {
                s.push(m, ket, c * phase * ctx.q_power(p));
            }
        }
        s.prune();
        Ok(s)
    }

    /// Grassmann-free state lifted into the graded setting.
    pub fn from_plain(ctx: &Arc<Context>, plain: &PlainState) -> Result<Self> {
        let terms = plain.support(0.0).into_iter().map(|(k, c)| (c, Monomial::one(), k));
        Self::from_terms(ctx, plain.dims(), terms)
    }

    fn push(&mut self, m: Monomial, ket: Vec<usize>, c: Complex64) {
        *self.terms.entry((m, ket)).or_default() += c;
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() >= PRUNE_TOL);
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn terms(&self) -> &BTreeMap<(Monomial, Vec<usize>), Complex64> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial, ket: &[usize]) -> Complex64 {
        self.terms.get(&(m.clone(), ket.to_vec())).copied().unwrap_or_default()
    }

    pub fn is_plain(&self) -> bool {
        self.terms.keys().all(|(m, _)| m.is_one())
    }

    fn check(&self, other: &GradedState) -> Result<()> {
        if !same_context(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &GradedState) -> Result<GradedState> {
        self.check(other)?;
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch("adding states on different spaces".into()));
        }
        let mut out = self.clone();
        for ((m, k), c) in &other.terms {
            out.push(m.clone(), k.clone(), *c);
        }
        out.prune();
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> GradedState {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out.prune();
        out
    }

    /// Substitutes v → c·v in every coefficient monomial.
    pub fn scale_variable(&self, v: Variable, c: Complex64) -> GradedState {
        let mut out = self.clone();
        for ((m, _), coeff) in out.terms.iter_mut() {
            let e = m.exponent(v);
            if e > 0 {
                *coeff *= c.powu(e);
            }
        }
        out.prune();
        out
    }

    /// Formal product of two states (sites concatenate), brought back into
    /// canonical form with [`quantize_swap`].
    pub fn tensor(&self, other: &GradedState) -> Result<GradedState> {
        self.check(other)?;
        let dims: Vec<usize> = self.dims.iter().chain(&other.dims).copied().collect();
        let mut out = GradedState::new(&self.ctx, &dims)?;
        let mut word = Vec::new();
        for ((ma, ka), ca) in &self.terms {
            for ((mb, kb), cb) in &other.terms {
                word.clear();
                word.extend_from_slice(ma.blocks());
                word.extend_from_slice(mb.blocks());
                if let Some((p, m)) = self.ctx.normal_order(&word) {
                    let phase = quantize_swap(&self.ctx, mb, ka) * self.ctx.q_power(p);
                    let ket: Vec<usize> = ka.iter().chain(kb).copied().collect();
                    out.push(m, ket, ca * cb * phase);
                }
            }
        }
        out.prune();
        Ok(out)
    }

    /// Left multiplication by an algebra element, w·|ψ⟩.
    pub fn left_multiply(&self, w: &Element) -> Result<GradedState> {
        if !same_context(&self.ctx, w.context()) {
            return Err(Error::ContextMismatch);
        }
        let mut out = GradedState::new(&self.ctx, &self.dims)?;
        let mut word = Vec::new();
        for (mw, cw) in w.terms() {
            for ((ms, k), cs) in &self.terms {
                word.clear();
                word.extend_from_slice(mw.blocks());
                word.extend_from_slice(ms.blocks());
                if let Some((p, m)) = self.ctx.normal_order(&word) {
                    out.push(m, k.clone(), cw * cs * self.ctx.q_power(p));
                }
            }
        }
        out.prune();
        Ok(out)
    }

    /// ∫dv_1 … dv_k applied right to left to every coefficient.
    pub fn integrate(&self, order: &[Variable]) -> Result<GradedState> {
        check_distinct(order)?;
        let mut cur = self.clone();
        for &v in order.iter().rev() {
            let mut next = GradedState::new(&self.ctx, &self.dims)?;
            for ((m, k), c) in &cur.terms {
                if let Some((p, rest)) = berezin_term(&self.ctx, m, v) {
                    next.push(rest, k.clone(), c * self.ctx.q_power(p));
                }
            }
            next.prune();
            cur = next;
        }
        Ok(cur)
    }

    /// The Grassmann-free terms.
    pub fn plain_part(&self) -> PlainState {
        let mut s = PlainState::zeros(&self.dims).expect("dims validated at construction");
        for ((m, k), c) in &self.terms {
            if m.is_one() {
                let i = s.index_of(k);
                s.amps[i] += c;
            }
        }
        s
    }

    /// Number of Grassmann-valued terms and their Euclidean weight.
    pub fn grassmann_residual(&self) -> (usize, f64) {
        let (count, sq) = self
            .terms
            .iter()
            .filter(|((m, _), _)| !m.is_one())
            .fold((0, 0.0), |(n, s), (_, c)| (n + 1, s + c.norm_sqr()));
        (count, sq.sqrt())
    }

    /// The state as a plain ket, failing if any Grassmann content remains.
    pub fn to_plain(&self) -> Result<PlainState> {
        let (terms, norm) = self.grassmann_residual();
        if terms > 0 {
            return Err(Error::ResidualGrassmann { terms, norm });
        }
        Ok(self.plain_part())
    }

    /// Euclidean distance over all (monomial, ket) coordinates.
    pub fn distance(&self, other: &GradedState) -> f64 {
        let mut sq = 0.0;
        for (key, c) in &self.terms {
            sq += (c - other.terms.get(key).copied().unwrap_or_default()).norm_sqr();
        }
        for (key, c) in &other.terms {
            if !self.terms.contains_key(key) {
                sq += c.norm_sqr();
            }
        }
        sq.sqrt()
    }
}

/// Tensor product of a sequence of states, left to right.
pub fn tensor_all(states: &[GradedState]) -> Result<GradedState> {
    let (first, rest) = states.split_first().ok_or_else(|| Error::InvalidParameter("empty tensor product".into()))?;
    rest.iter().try_fold(first.clone(), |acc, s| acc.tensor(s))
}

/// Grassmannian coherent state Σ_m q̄^{m(m+1)/2}/√m! (scale·v)^m |m⟩ on d levels.
/// For a barred variable the phase is conjugated, which keeps it an eigenstate
/// of b under the barred commutation rule.
pub fn coherent_state(ctx: &Arc<Context>, v: Variable, d: usize, scale: Complex64) -> Result<GradedState> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    if d > ctx.n() as usize {
        return Err(Error::LevelsExceedGrade { levels: d, grade: ctx.n() });
    }
    let terms = (0..d).map(|m| {
        let tri = (m * (m + 1) / 2) as i64;
        let c = ctx.q_power(if v.is_barred() { tri } else { -tri }) / factorial(m).sqrt() * scale.powu(m as u32);
        (c, Monomial::power(v, m as u32), vec![m])
    });
    GradedState::from_terms(ctx, &[d], terms)
}

/// ‖b|ψ⟩ − v|ψ⟩‖ for a single-site state, with b passing Grassmann
/// monomials by [b, θ]_q = 0 (and its conjugate for θ̄).
pub fn eigenstate_check(state: &GradedState, v: Variable) -> Result<f64> {
    if state.dims().len() != 1 {
        return Err(Error::DimensionMismatch("eigenstate check needs a single site".into()));
    }
    let ctx = state.context();
    let mut lowered = GradedState::new(ctx, state.dims())?;
    for ((m, k), c) in state.terms() {
        if k[0] == 0 {
            continue;
        }
        let pass: i64 = m.blocks().iter().map(|&(x, e)| if x.is_barred() { -(e as i64) } else { e as i64 }).sum();
        let amp = c * ctx.q_power(pass) * (k[0] as f64).sqrt();
        lowered.push(m.clone(), vec![k[0] - 1], amp);
    }
    lowered.prune();
    let shifted = state.left_multiply(&Element::var(ctx, v))?;
    Ok(lowered.distance(&shifted))
}

/// b, b†, b_z = [b,b†]_q, b², b†² and b′_z = [b†², b²] on d levels.
#[derive(Clone, Debug)]
pub struct LadderSet {
    pub d: usize,
    pub q: Complex64,
    pub b: DMatrix<Complex64>,
    pub b_dag: DMatrix<Complex64>,
    pub b_z: DMatrix<Complex64>,
    pub b_sq: DMatrix<Complex64>,
    pub b_dag_sq: DMatrix<Complex64>,
    pub bz_prime: DMatrix<Complex64>,
}

impl LadderSet {
    pub fn new(d: usize, q: Complex64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension(d));
        }
        let b = DMatrix::from_fn(d, d, |r, c| {
            if c == r + 1 {
                Complex64::new((c as f64).sqrt(), 0.0)
            } else {
                Complex64::default()
            }
        });
        let b_dag = b.adjoint();
        let b_z = q_commutator(&b, &b_dag, q)?;
        let b_sq = &b * &b;
        let b_dag_sq = &b_dag * &b_dag;
        let bz_prime = q_commutator(&b_dag_sq, &b_sq, ONE)?;
        Ok(LadderSet { d, q, b, b_dag, b_z, b_sq, b_dag_sq, bz_prime })
    }

    /// Default root q = exp(2πi/d).
    pub fn with_default_q(d: usize) -> Result<Self> {
        let q = Complex64::from_polar(1.0, std::f64::consts::TAU / d as f64);
        Self::new(d, q)
    }
}

/// [A, B]_q = AB − qBA.
pub fn q_commutator(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, q: Complex64) -> Result<DMatrix<Complex64>> {
    if a.shape() != b.shape() || a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch(format!("q-commutator of {:?} and {:?}", a.shape(), b.shape())));
    }
    Ok(a * b - b * a * q)
}

/// Least-squares fit X ≈ λ·B.
#[derive(Clone, Debug, PartialEq)]
pub struct ProportionalityFit {
    pub relation: &'static str,
    pub constant: Complex64,
    /// Frobenius norm of X − λB.
    pub residual: f64,
    /// `residual` / ‖X‖.
    pub relative_residual: f64,
    /// The constant printed in the literature for this relation, if any.
    pub printed: Option<Complex64>,
}

impl ProportionalityFit {
    fn new(relation: &'static str, x: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Result<Self> {
        let bb = b.dotc(b);
        if bb.norm() < PRUNE_TOL {
            return Err(Error::InvalidParameter(format!("{relation}: reference operator vanishes")));
        }
        let constant = b.dotc(x) / bb;
        let residual = (x - b * constant).norm();
        let xn = x.norm();
        let relative_residual = if xn > 0.0 { residual / xn } else { 0.0 };
        Ok(ProportionalityFit { relation, constant, residual, relative_residual, printed: None })
    }

    fn printed(mut self, c: Complex64) -> Self {
        self.printed = Some(c);
        self
    }

    /// Whether the fitted constant agrees with the printed one (true when
    /// nothing is printed).
    pub fn agrees_with_printed(&self, tol: f64) -> bool {
        self.printed.is_none_or(|p| (p - self.constant).norm() <= tol)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClosureReport {
    pub d: usize,
    pub q: Complex64,
    pub fits: Vec<ProportionalityFit>,
    pub closes: bool,
}

impl ClosureReport {
    pub fn max_residual(&self) -> f64 {
        self.fits.iter().map(|f| f.residual).fold(0.0, f64::max)
    }
}

const CLOSURE_TOL: f64 = 1e-9;

/// Tests whether b, b†, b_z = [b,b†]_q close: [b_z,b]_q ∝ b and [b†,b_z]_q ∝ b†.
pub fn check_su_q2_closure(d: usize, q: Option<Complex64>) -> Result<ClosureReport> {
    let ladder = match q {
        Some(q) => LadderSet::new(d, q)?,
        None => LadderSet::with_default_q(d)?,
    };
    let q = ladder.q;
    let lower = q_commutator(&ladder.b_z, &ladder.b, q)?;
    let raise = q_commutator(&ladder.b_dag, &ladder.b_z, q)?;
    let mut fits = vec![
        ProportionalityFit::new("[b_z,b]_q = λ b", &lower, &ladder.b)?,
        ProportionalityFit::new("[b†,b_z]_q = λ b†", &raise, &ladder.b_dag)?,
    ];
    if d == 3 {
        fits = fits.into_iter().map(|f| f.printed(-3.0 * q)).collect();
    }
    let closes = fits.iter().all(|f| f.residual < CLOSURE_TOL);
    Ok(ClosureReport { d, q, fits, closes })
}

/// Tests the closure of b², b†² and b′_z = [b†², b²] under ordinary commutators.
pub fn check_squeeze_closure(d: usize) -> Result<ClosureReport> {
    if d < 3 {
        return Err(Error::InvalidDimension(d));
    }
    let ladder = LadderSet::with_default_q(d)?;
    let lower = q_commutator(&ladder.bz_prime, &ladder.b_sq, ONE)?;
    let raise = q_commutator(&ladder.bz_prime, &ladder.b_dag_sq, ONE)?;
    let mut fits = vec![
        ProportionalityFit::new("[b'_z,b²] = μ b²", &lower, &ladder.b_sq)?,
        ProportionalityFit::new("[b'_z,b†²] = ν b†²", &raise, &ladder.b_dag_sq)?,
    ];
    if d == 3 {
        fits[0] = fits[0].clone().printed(Complex64::new(-8.0, 0.0));
        fits[1] = fits[1].clone().printed(Complex64::new(8.0, 0.0));
    }
    let closes = fits.iter().all(|f| f.residual < CLOSURE_TOL);
    Ok(ClosureReport { d, q: ladder.q, fits, closes })
}

/// S(ξ)|0⟩ on a qutrit for the symmetric squeezing operator
/// exp[(ξb†² − ξ̄b²)/2], using its terminating expansion
/// I + ½(ξb†² − ξ̄b²) − (q̄/8)ξξ̄(b†²b² + q b²b†²).
pub fn squeezed_state_symmetric(ctx: &Arc<Context>, v: Variable) -> Result<GradedState> {
    if ctx.n() != 3 {
        return Err(Error::InvalidParameter(format!("symmetric squeezing is defined for grade 3, got {}", ctx.n())));
    }
    let ladder = LadderSet::new(3, ctx.q_power(1))?;
    let half = Complex64::new(0.5, 0.0);
    let id = DMatrix::<Complex64>::identity(3, 3);
    let quad = &ladder.b_dag_sq * &ladder.b_sq + &ladder.b_sq * &ladder.b_dag_sq * ctx.q_power(1);
    let expansion: [(Element, DMatrix<Complex64>); 4] = [
        (Element::one(ctx), id),
        (Element::var(ctx, v).scale(half), ladder.b_dag_sq.clone()),
        (Element::var(ctx, v.toggled()).scale(-half), ladder.b_sq.clone()),
        (Element::word(ctx, ctx.q_power(-1) * -0.125, &[(v, 1), (v.toggled(), 1)]), quad),
    ];
    let mut terms = Vec::new();
    for (coef, op) in &expansion {
        for level in 0..3 {
            let amp = op[(level, 0)];
            if amp.norm() < PRUNE_TOL {
                continue;
            }
            for (m, c) in coef.terms() {
                terms.push((c * amp, m.clone(), vec![level]));
            }
        }
    }
    GradedState::from_terms(ctx, &[3], terms)
}

/// e^{v b†²}|0⟩ = Σ_i q̄^{i(i−1)}/i! v^i |2i⟩, keeping i ≤ n − 1 and 2i ≤ d − 1.
pub fn squeezed_state_exp(ctx: &Arc<Context>, v: Variable, d: usize) -> Result<GradedState> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let top = (ctx.n() as usize - 1).min((d - 1) / 2);
    let terms = (0..=top).map(|i| {
        let c = ctx.q_power(-((i * (i.saturating_sub(1))) as i64)) / factorial(i);
        (c, Monomial::power(v, i as u32), vec![2 * i])
    });
    GradedState::from_terms(ctx, &[d], terms)
}

/// F(σ⁺_1, σ⁺_2)|00⟩ with F = a_0 + a_1σ⁺_1 + a_2σ⁺_2 + a_3σ⁺_1σ⁺_2.
pub fn nilpotent_polynomial_state(coeffs: [Complex64; 4]) -> PlainState {
    let raise = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 0.0]).map(|x| Complex64::new(x, 0.0));
    let id = DMatrix::<Complex64>::identity(2, 2);
    let s1 = raise.kronecker(&id);
    let s2 = id.kronecker(&raise);
    let op =
        DMatrix::<Complex64>::identity(4, 4) * coeffs[0] + &s1 * coeffs[1] + &s2 * coeffs[2] + &s1 * &s2 * coeffs[3];
    let amps = op.column(0).iter().copied().collect();
    PlainState::from_amplitudes(&[2, 2], amps).expect("4 amplitudes on two qubits")
}
