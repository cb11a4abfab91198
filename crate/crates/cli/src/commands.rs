//! The `construct`, `solve-weight`, `closure` and `verify` commands, each
//! producing a [`Report`].

use std::path::Path;
use std::sync::Arc;

use gcs_core::algebra::{random_element, Context, Monomial, Variable};
use gcs_core::entangle::{
    apply_weight_and_integrate, catalog_construct, solve_weight, CatalogParams, Factor, IntegralSpec, ProductRecipe,
};
use gcs_core::ledger::Discrepancy;
use gcs_core::qstate::{check_squeeze_closure, check_su_q2_closure, ClosureReport, PlainState};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::report::{Item, Report};
use crate::schema::{ClosureDto, ConstructionDto, StateDto, WeightSolutionDto};
use crate::verify::{run_suite, Suite};
use crate::CliError;

pub const DEFAULT_GRADE: u32 = 3;

/// Runs one catalog entry. The item passes (or is flagged) iff the
/// computed state is at least signature-equal to the printed target and
/// agrees with it on maximal entanglement.
pub fn construct(
    command: Vec<String>,
    cfg: &RunConfig,
    id: &str,
    sign: i32,
    omega: u32,
    dim: Option<usize>,
) -> Result<Report, CliError> {
    let params = CatalogParams { n: cfg.n, sign, omega, dim };
    let r = catalog_construct(id, &params)?;
    let mes_agrees = r.computed_max_entangled() == r.target_max_entangled;
    let ok = r.matches() && mes_agrees;
    let detail = format!(
        "match {}, MES computed {} / printed {}",
        r.match_level.as_str(),
        r.computed_max_entangled(),
        r.target_max_entangled
    );
    let item = match (ok, r.flags.is_empty()) {
        (true, true) => Item::pass(id, detail),
        (true, false) => Item::flagged(id, detail, &r.flags),
        (false, _) => Item::fail(id, detail).noting(&r.flags),
    };
    let mut item = item.with("match", r.match_level.as_str()).with("computed_norm", r.computed_norm);
    if let Some(rep) = &r.report {
        item = item.with("purity", rep.purity);
    }
    let payload = serde_json::to_value(ConstructionDto::from_result(&r))?;
    Ok(Report::new(command, cfg.clone(), vec![item], Some(payload)))
}

pub fn verify(command: Vec<String>, cfg: &RunConfig, suite: Suite) -> Result<Report, CliError> {
    let items = run_suite(suite, cfg)?;
    Ok(Report::new(command, cfg.clone(), items, None))
}

pub fn closure(command: Vec<String>, cfg: &RunConfig, kind: &str, d: usize) -> Result<Report, CliError> {
    let mut items = Vec::new();
    let mut payload = Vec::new();
    let mut add = |name: &str, r: ClosureReport, flag: Option<Discrepancy>| {
        let detail = r
            .fits
            .iter()
            .map(|f| format!("{}: {:.6} (residual {:.1e})", f.relation, f.constant, f.residual))
            .collect::<Vec<_>>()
            .join("; ");
        let status = if r.closes { "closes" } else { "does not close" };
        items.push(
            Item::pass(format!("closure.{name}.d{d}"), format!("{status}; {detail}"))
                .with("closes", r.closes)
                .with("max_residual", r.max_residual()),
        );
        if r.fits.iter().any(|f| f.printed.is_some()) {
            let agrees = r.fits.iter().all(|f| f.agrees_with_printed(cfg.tol));
            let id = format!("closure.{name}.d{d}.printed");
            let detail = "fitted constants against the printed ones";
            items.push(match flag {
                Some(flag) => Item::check_or_flag(id, agrees, detail, &[flag]),
                None => Item::check(id, agrees, detail),
            });
        }
        payload.push(ClosureDto::from_report(&r));
    };
    match kind {
        "su_q2" => add("su_q2", check_su_q2_closure(d, None)?, None),
        "squeeze" => add("squeeze", check_squeeze_closure(d)?, Some(Discrepancy::SqueezeConstant)),
        "both" => {
            add("su_q2", check_su_q2_closure(d, None)?, None);
            add("squeeze", check_squeeze_closure(d)?, Some(Discrepancy::SqueezeConstant));
        }
        other => return Err(CliError::Usage(format!("unknown closure kind `{other}` (su_q2, squeeze, both)"))),
    }
    Ok(Report::new(command, cfg.clone(), items, Some(serde_json::to_value(payload)?)))
}

pub struct SolveArgs<'a> {
    pub factors: &'a str,
    pub target: &'a str,
    pub basis: &'a str,
    pub differentials: Option<&'a str>,
    /// `Some(true)` requires a feasible solve, `Some(false)` an infeasible one.
    pub expect: Option<bool>,
}

pub fn solve(command: Vec<String>, cfg: &RunConfig, args: &SolveArgs) -> Result<Report, CliError> {
    let n = cfg.n.unwrap_or(DEFAULT_GRADE);
    let ctx = Context::new(n)?;
    let factors = parse_factors(args.factors, n as usize)?;
    let recipe = ProductRecipe::product(factors);
    let state = recipe.build(&ctx)?;
    let dims = recipe.dims();
    let differentials = match args.differentials {
        Some(s) => parse_variables(s)?,
        None => recipe.variables(),
    };
    if differentials.is_empty() {
        return Err(CliError::Usage("no differentials".into()));
    }
    let basis = parse_basis(&ctx, args.basis, &differentials)?;
    let target = parse_target(&ctx, args.target, &dims, &state, &differentials, cfg.seed)?;
    let sol = solve_weight(&state, &differentials, &target, &basis)?;

    let detail = format!(
        "{} (residual {:.3e}, rank {} of {})",
        if sol.feasible { "feasible" } else { "infeasible" },
        sol.residual,
        sol.rank,
        basis.len()
    );
    let item = match args.expect {
        Some(want) => Item::check("solve", sol.feasible == want, detail),
        None => Item::pass("solve", detail),
    }
    .with("feasible", sol.feasible)
    .with("residual", sol.residual)
    .with("rank", sol.rank);
    let payload = serde_json::json!({
        "target": StateDto::from_plain(n, &target),
        "differentials": differentials.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "solution": WeightSolutionDto::from_solution(&sol),
    });
    Ok(Report::new(command, cfg.clone(), vec![item], Some(payload)))
}

pub fn parse_variables(s: &str) -> Result<Vec<Variable>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<Variable>().map_err(|_| CliError::Usage(format!("bad variable `{t}`"))))
        .collect()
}

fn parse_usize(s: &str, what: &str) -> Result<usize, CliError> {
    s.trim().parse().map_err(|_| CliError::Usage(format!("bad {what} `{s}`")))
}

/// `kind:var[:dim]` separated by commas; kinds are `coherent`, `squeezed`
/// (symmetric, qutrit only) and `squeezed_exp`. The dimension defaults to
/// the grade.
pub fn parse_factors(s: &str, default_dim: usize) -> Result<Vec<Factor>, CliError> {
    let mut out = Vec::new();
    for spec in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() < 2 || parts.len() > 3 {
            return Err(CliError::Usage(format!("factor `{spec}` is not kind:var[:dim]")));
        }
        let var: Variable = parts[1].parse().map_err(|_| CliError::Usage(format!("bad variable in `{spec}`")))?;
        let dim = match parts.get(2) {
            Some(d) => parse_usize(d, "dimension")?,
            None => default_dim,
        };
        out.push(match parts[0] {
            "coherent" => Factor::coherent(var, dim),
            "squeezed" => {
                if dim != 3 {
                    return Err(CliError::Usage(format!("symmetric squeezing needs dimension 3 in `{spec}`")));
                }
                Factor::squeezed_symmetric(var)
            }
            "squeezed_exp" => Factor::squeezed_exp(var, dim),
            other => return Err(CliError::Usage(format!("unknown factor kind `{other}`"))),
        });
    }
    if out.is_empty() {
        return Err(CliError::Usage("no factors".into()));
    }
    Ok(out)
}

/// `full` (every monomial in the differentials), `diag` (equal exponents
/// on every differential), or a comma-separated list such as `1, t1^2 t2^2`.
pub fn parse_basis(ctx: &Arc<Context>, s: &str, differentials: &[Variable]) -> Result<Vec<Monomial>, CliError> {
    let mut sorted = differentials.to_vec();
    sorted.sort();
    sorted.dedup();
    match s.trim() {
        "full" => Ok(ctx.all_monomials(&sorted)),
        "diag" => Ok(ctx
            .all_monomials(&sorted)
            .into_iter()
            .filter(|m| sorted.windows(2).all(|w| m.exponent(w[0]) == m.exponent(w[1])))
            .collect()),
        list => list.split(',').map(|t| parse_monomial(ctx, t)).collect(),
    }
}

/// A whitespace-separated product like `t1^2 tb1` or `1`, brought to
/// canonical order. The reordering phase is dropped: basis elements are
/// only defined up to scale.
pub fn parse_monomial(ctx: &Context, s: &str) -> Result<Monomial, CliError> {
    let s = s.trim();
    if s == "1" {
        return Ok(Monomial::one());
    }
    let mut word = Vec::new();
    for tok in s.split_whitespace() {
        let (name, exp) = match tok.split_once('^') {
            Some((v, e)) => (v, e.parse::<u32>().map_err(|_| CliError::Usage(format!("bad exponent in `{tok}`")))?),
            None => (tok, 1),
        };
        let v: Variable = name.parse().map_err(|_| CliError::Usage(format!("bad variable `{name}`")))?;
        word.push((v, exp));
    }
    if word.is_empty() {
        return Err(CliError::Usage("empty monomial".into()));
    }
    ctx.normal_order(&word)
        .map(|(_, m)| m)
        .ok_or_else(|| CliError::Usage(format!("monomial `{s}` vanishes at grade {}", ctx.n())))
}

fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let s = s.trim();
    let bad = || CliError::Usage(format!("bad coefficient `{s}` (use re or re,im)"));
    match s.split_once(',') {
        Some((re, im)) => {
            Ok(Complex64::new(re.trim().parse().map_err(|_| bad())?, im.trim().parse().map_err(|_| bad())?))
        }
        None => Ok(Complex64::new(s.parse().map_err(|_| bad())?, 0.0)),
    }
}

/// `diag` (uniform Σ|i…i⟩), `random` (the integral of a seeded random
/// weight), `@path` (a state JSON file), or explicit terms `0 2:1; 2 0:1`
/// with coefficients `re` or `re,im`. Targets are normalized.
pub fn parse_target(
    ctx: &Arc<Context>,
    s: &str,
    dims: &[usize],
    state: &gcs_core::qstate::GradedState,
    differentials: &[Variable],
    seed: u64,
) -> Result<PlainState, CliError> {
    let s = s.trim();
    let raw = if s == "diag" {
        let d = *dims.iter().min().expect("at least one factor");
        let kets: Vec<Vec<usize>> = (0..d).map(|i| vec![i; dims.len()]).collect();
        PlainState::from_terms(dims, kets.iter().map(|k| (Complex64::new(1.0, 0.0), k.as_slice())))?
    } else if s == "random" {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut vars = differentials.to_vec();
        vars.sort();
        let w = random_element(ctx, &vars, 6, &mut rng);
        apply_weight_and_integrate(&IntegralSpec::new(w, differentials.to_vec())?, state)?
    } else if let Some(path) = s.strip_prefix('@') {
        let text = std::fs::read_to_string(Path::new(path))?;
        let dto: StateDto = serde_json::from_str(&text)?;
        let plain = dto.to_plain()?;
        if plain.dims() != dims {
            return Err(CliError::Usage(format!("target sites {:?} do not match factors {dims:?}", plain.dims())));
        }
        plain
    } else {
        let mut terms = Vec::new();
        for part in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let (ket, coeff) = part.split_once(':').unwrap_or((part, "1"));
            let ket: Vec<usize> = ket.split_whitespace().map(|l| parse_usize(l, "level")).collect::<Result<_, _>>()?;
            if ket.len() != dims.len() || ket.iter().zip(dims).any(|(l, d)| l >= d) {
                return Err(CliError::Usage(format!("ket {ket:?} does not fit sites {dims:?}")));
            }
            terms.push((parse_complex(coeff)?, ket));
        }
        if terms.is_empty() {
            return Err(CliError::Usage("empty target".into()));
        }
        PlainState::from_terms(dims, terms.iter().map(|(c, k)| (*c, k.as_slice())))?
    };
    raw.normalized().map_err(|_| CliError::Usage("target state vanishes".into()))
}
