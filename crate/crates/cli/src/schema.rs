//! JSON data shapes. States serialize as
//! `{"grade_n", "sites", "terms": [{"coeff": [re, im], "monomial": {"t1": 2}, "ket": [..]}]}`.
//! A monomial map stands for the product of its variables in canonical
//! order (θ̄_1 < θ_1 < θ̄_2 < …), whatever the key order in the JSON.

use std::collections::BTreeMap;
use std::sync::Arc;

use gcs_core::algebra::{Context, Element, Monomial, Variable};
use gcs_core::boson::HybridState;
use gcs_core::entangle::{ConstructionResult, EntanglementReport, PurityKind, WeightSolution};
use gcs_core::qstate::{ClosureReport, GradedState, PlainState, ProportionalityFit};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub fn complex_pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

fn monomial_map(m: &Monomial) -> BTreeMap<String, u32> {
    m.blocks().iter().map(|(v, e)| (v.to_string(), *e)).collect()
}

fn monomial_from_map(ctx: &Context, map: &BTreeMap<String, u32>) -> Result<Monomial, CliError> {
    let mut word = Vec::with_capacity(map.len());
    for (name, &e) in map {
        let v: Variable = name.parse().map_err(|_| CliError::Usage(format!("bad variable `{name}`")))?;
        if e > 0 {
            word.push((v, e));
        }
    }
    word.sort();
    match ctx.normal_order(&word) {
        Some((_, m)) => Ok(m),
        None => Err(CliError::Usage(format!("monomial {map:?} vanishes at grade {}", ctx.n()))),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDto {
    pub coeff: [f64; 2],
    pub monomial: BTreeMap<String, u32>,
    pub ket: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateDto {
    pub grade_n: u32,
    pub sites: Vec<usize>,
    pub terms: Vec<TermDto>,
}

impl StateDto {
    pub fn from_graded(s: &GradedState) -> Self {
        StateDto {
            grade_n: s.context().n(),
            sites: s.dims().to_vec(),
            terms: s
                .terms()
                .iter()
                .map(|((m, k), c)| TermDto { coeff: complex_pair(*c), monomial: monomial_map(m), ket: k.clone() })
                .collect(),
        }
    }

    pub fn from_plain(grade_n: u32, s: &PlainState) -> Self {
        StateDto {
            grade_n,
            sites: s.dims().to_vec(),
            terms: s
                .support(0.0)
                .into_iter()
                .map(|(k, c)| TermDto { coeff: complex_pair(c), monomial: BTreeMap::new(), ket: k })
                .collect(),
        }
    }

    pub fn to_graded(&self, ctx: &Arc<Context>) -> Result<GradedState, CliError> {
        if self.grade_n != ctx.n() {
            return Err(CliError::Usage(format!("state has grade {}, expected {}", self.grade_n, ctx.n())));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let m = monomial_from_map(ctx, &t.monomial)?;
            terms.push((Complex64::new(t.coeff[0], t.coeff[1]), m, t.ket.clone()));
        }
        Ok(GradedState::from_terms(ctx, &self.sites, terms)?)
    }

    pub fn to_plain(&self) -> Result<PlainState, CliError> {
        let ctx = Context::new(self.grade_n)?;
        Ok(self.to_graded(&ctx)?.to_plain()?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementTermDto {
    pub coeff: [f64; 2],
    pub monomial: BTreeMap<String, u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementDto {
    pub grade_n: u32,
    pub terms: Vec<ElementTermDto>,
}

impl ElementDto {
    pub fn from_element(e: &Element) -> Self {
        ElementDto {
            grade_n: e.context().n(),
            terms: e
                .terms()
                .iter()
                .map(|(m, c)| ElementTermDto { coeff: complex_pair(*c), monomial: monomial_map(m) })
                .collect(),
        }
    }

    pub fn to_element(&self, ctx: &Arc<Context>) -> Result<Element, CliError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let m = monomial_from_map(ctx, &t.monomial)?;
            terms.push((m, Complex64::new(t.coeff[0], t.coeff[1])));
        }
        Ok(Element::from_terms(ctx, terms))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightSolutionDto {
    pub weight: ElementDto,
    pub basis: Vec<BTreeMap<String, u32>>,
    pub coefficients: Vec<[f64; 2]>,
    pub residual: f64,
    pub feasible: bool,
    pub rank: usize,
    pub unreachable: Vec<Vec<usize>>,
}

impl WeightSolutionDto {
    pub fn from_solution(s: &WeightSolution) -> Self {
        WeightSolutionDto {
            weight: ElementDto::from_element(&s.weight),
            basis: s.basis.iter().map(monomial_map).collect(),
            coefficients: s.coefficients.iter().map(|c| complex_pair(*c)).collect(),
            residual: s.residual,
            feasible: s.feasible,
            rank: s.rank,
            unreachable: s.unreachable.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutDto {
    pub cut: Vec<usize>,
    pub coefficients: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntanglementDto {
    pub purity: f64,
    pub purity_kind: String,
    pub per_site_rdm_spectra: Vec<Vec<f64>>,
    pub bipartition_schmidt: Vec<CutDto>,
    pub max_entangled: bool,
}

impl EntanglementDto {
    pub fn from_report(r: &EntanglementReport) -> Self {
        EntanglementDto {
            purity: r.purity,
            purity_kind: match r.purity_kind {
                PurityKind::Viola => "viola",
                PurityKind::Generalized => "generalized",
            }
            .into(),
            per_site_rdm_spectra: r.per_site_rdm_spectra.clone(),
            bipartition_schmidt: r
                .bipartition_schmidt
                .iter()
                .map(|(cut, s)| CutDto { cut: cut.clone(), coefficients: s.clone() })
                .collect(),
            max_entangled: r.max_entangled,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamsDto {
    pub n: Option<u32>,
    pub sign: i32,
    pub omega: u32,
    pub dim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionDto {
    pub id: String,
    pub params: ParamsDto,
    pub weight: ElementDto,
    pub differentials: Vec<String>,
    pub computed: StateDto,
    pub computed_norm: f64,
    pub grassmann_residual_terms: usize,
    pub grassmann_residual_norm: f64,
    pub printed_target: StateDto,
    #[serde(rename = "match")]
    pub match_level: String,
    pub report: Option<EntanglementDto>,
    pub target_max_entangled: bool,
    pub solver_cross_check: WeightSolutionDto,
    pub flags: Vec<String>,
    pub notes: Vec<String>,
}

impl ConstructionDto {
    pub fn from_result(r: &ConstructionResult) -> Self {
        let grade = r.weight.context().n();
        ConstructionDto {
            id: r.id.clone(),
            params: ParamsDto { n: r.params.n, sign: r.params.sign, omega: r.params.omega, dim: r.params.dim },
            weight: ElementDto::from_element(&r.weight),
            differentials: r.differentials.iter().map(|v| v.to_string()).collect(),
            computed: StateDto::from_plain(grade, &r.computed),
            computed_norm: r.computed_norm,
            grassmann_residual_terms: r.grassmann_residual.0,
            grassmann_residual_norm: r.grassmann_residual.1,
            printed_target: StateDto::from_plain(grade, &r.printed_target),
            match_level: r.match_level.as_str().into(),
            report: r.report.as_ref().map(EntanglementDto::from_report),
            target_max_entangled: r.target_max_entangled,
            solver_cross_check: WeightSolutionDto::from_solution(&r.solver_cross_check),
            flags: r.flags.iter().map(|f| f.id().to_string()).collect(),
            notes: r.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitDto {
    pub relation: String,
    pub constant: [f64; 2],
    pub residual: f64,
    pub relative_residual: f64,
    pub printed: Option<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosureDto {
    pub d: usize,
    pub q: [f64; 2],
    pub fits: Vec<FitDto>,
    pub closes: bool,
}

impl ClosureDto {
    pub fn from_report(r: &ClosureReport) -> Self {
        let fit = |f: &ProportionalityFit| FitDto {
            relation: f.relation.to_string(),
            constant: complex_pair(f.constant),
            residual: f.residual,
            relative_residual: f.relative_residual,
            printed: f.printed.map(complex_pair),
        };
        ClosureDto { d: r.d, q: complex_pair(r.q), fits: r.fits.iter().map(fit).collect(), closes: r.closes }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HybridDto {
    /// Amplitudes on |0_f 0_b⟩, |0_f 1_b⟩, |1_f 0_b⟩, |1_f 1_b⟩.
    pub amps: Vec<[f64; 2]>,
    pub n1: f64,
    pub n1_printed: f64,
}

impl HybridDto {
    pub fn from_state(s: &HybridState) -> Self {
        HybridDto {
            amps: s.flat().iter().map(|c| complex_pair(*c)).collect(),
            n1: s.basis.n1,
            n1_printed: s.basis.n1_printed,
        }
    }
}
