//! Report assembly for `analyze`, `table` and `verify`.
//!
//! Every report is a plain serde structure with a fixed field order; exact
//! rationals are carried as `"p/q"` strings.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use symgap_core::homology::{CochainComplex, HodgeDims, OracleOutcome};
use symgap_core::kostant::{harmonic_modules, hasse_words, is_hasse_word, mu1_sign_pattern, HarmonicModule, HasseWord2};
use symgap_core::model::{
    canonical_model_exclusion, split_real_sign_check, twistor_check, verify_algebraic_model, AlgebraicModel,
    Check, Status, WeightLatticeSpec,
};
use symgap_core::parabolic::ParabolicData;
use symgap_core::prolong::{annihilator, annihilator_closed_form, mu2_holds, mu2_witness, prolong_module, upper_bounds};
use symgap_core::scalar::to_string_exact;
use symgap_core::{ChevalleyAlgebra, Family, LieError, Rational, SimpleType};

pub const ANALYZE_SCHEMA: &str = "symgap.analyze/1";
pub const TABLE_SCHEMA: &str = "symgap.table/1";
pub const VERIFY_SCHEMA: &str = "symgap.verify/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RealForm {
    Complex,
    Split,
}

#[derive(Clone, Debug)]
pub struct AnalysisRequest {
    pub algebra: SimpleType,
    pub cross: Vec<usize>,
    pub module: Option<(usize, usize)>,
    pub real_form: RealForm,
    pub lattice: WeightLatticeSpec,
    pub oracle_cap: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub algebra: String,
    pub cross: Vec<usize>,
    pub dim_g: usize,
    pub graded_dims: BTreeMap<i32, usize>,
    pub real_form: RealForm,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<WeightLatticeSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub modules: Vec<ModuleReport>,
    #[serde(rename = "U")]
    pub u: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hodge_oracle: Option<OracleReport>,
}

#[derive(Debug, Serialize)]
pub struct ModuleReport {
    pub word: String,
    pub mu_fw: Vec<String>,
    pub mu_roots: Vec<String>,
    pub degree: i64,
    #[serde(rename = "J_mu")]
    pub j_mu: Vec<usize>,
    pub dim: u64,
    pub regular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a0_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prolongation_dims: Option<BTreeMap<i32, usize>>,
    #[serde(rename = "U_mu")]
    pub u_mu: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twistor: Option<TwistorSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<ModelSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split_real: Option<SplitRealSummary>,
}

#[derive(Debug, Serialize)]
pub struct TwistorSummary {
    pub nodes: Vec<usize>,
    pub degree_q: i64,
    pub degree_p: i64,
    pub dim_q: usize,
    pub dim_p: usize,
    pub positive_dim_p: usize,
}

#[derive(Debug, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum ModelSummary {
    Built {
        dim: usize,
        checks: BTreeMap<String, Check>,
        gr_equals_a: Option<bool>,
    },
    Unsupported {
        reason: String,
    },
}

#[derive(Debug, Serialize)]
pub struct SplitRealSummary {
    pub unique: bool,
    pub lattice: WeightLatticeSpec,
    pub exponents: Vec<i64>,
    pub witness: Option<Vec<i8>>,
    pub weyl_stabilizer: Vec<usize>,
    pub note: String,
}

#[derive(Debug, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum OracleReport {
    Computed {
        dim_c2: usize,
        im_del: usize,
        ker_box: usize,
        im_delstar: usize,
        ker_del_cap_ker_delstar: usize,
        kostant_sum: u64,
        consistent: bool,
    },
    Skipped {
        dim_c2: usize,
        cap: usize,
    },
}

impl OracleReport {
    pub fn is_skipped(&self) -> bool {
        matches!(self, OracleReport::Skipped { .. })
    }

    pub fn passed(&self) -> bool {
        match self {
            OracleReport::Computed {
                ker_box,
                kostant_sum,
                consistent,
                ..
            } => *consistent && *ker_box as u64 == *kostant_sum,
            OracleReport::Skipped { .. } => false,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

pub fn parabolic(t: SimpleType, cross: &[usize]) -> Result<ParabolicData, ReportError> {
    let alg = Arc::new(ChevalleyAlgebra::of_type(t)?);
    ParabolicData::new(alg, cross).map_err(|e| match e {
        LieError::NodeOutOfRange { .. } | LieError::EmptyCross => ReportError::Invalid(e.to_string()),
        other => ReportError::Lie(other),
    })
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(to_string_exact).collect()
}

fn oracle(pd: &ParabolicData, cap: usize) -> Result<OracleReport, ReportError> {
    let cx = CochainComplex::new(pd)?;
    Ok(match cx.hodge_oracle(cap)? {
        OracleOutcome::Skipped { dim_c2, cap } => OracleReport::Skipped { dim_c2, cap },
        OracleOutcome::Computed(h) => {
            let kostant_sum = harmonic_modules::<Rational>(pd)?.iter().map(|m| m.dim).sum();
            let HodgeDims {
                dim_c2,
                im_del,
                ker_box,
                im_delstar,
                ker_del_cap_ker_delstar,
                ..
            } = h;
            OracleReport::Computed {
                dim_c2,
                im_del,
                ker_box,
                im_delstar,
                ker_del_cap_ker_delstar,
                kostant_sum,
                consistent: h.consistent(),
            }
        }
    })
}

fn model_summary(
    pd: &ParabolicData,
    cx: &CochainComplex,
    m: &HarmonicModule<Rational>,
) -> Result<ModelSummary, ReportError> {
    if let Some(reason) = canonical_model_exclusion(pd) {
        return Ok(ModelSummary::Unsupported { reason });
    }
    let a = prolong_module(cx, m)?;
    let am = AlgebraicModel::new(pd, &a.basis(), m.phi0.clone())?;
    let rep = verify_algebraic_model(&am)?;
    Ok(ModelSummary::Built {
        dim: am.dim(),
        checks: rep.checks,
        gr_equals_a: rep.gr_equals_a,
    })
}

pub fn analyze(req: &AnalysisRequest) -> Result<AnalysisReport, ReportError> {
    let pd = parabolic(req.algebra, &req.cross)?;
    let mut modules = harmonic_modules::<Rational>(&pd)?;
    if let Some((j, k)) = req.module {
        let words = hasse_words(&pd);
        // (jk) and (kj) name the same Weyl element when the nodes commute
        let w = [HasseWord2::new(j, k), HasseWord2::new(k, j)]
            .into_iter()
            .find(|w| words.contains(w) && is_hasse_word(&pd, HasseWord2::new(j, k)))
            .ok_or_else(|| ReportError::Invalid(format!("({j}{k}) is not a length-2 Hasse word of {pd}")))?;
        modules.retain(|m| m.word == w);
    }
    let note = hasse_words(&pd)
        .is_empty()
        .then(|| "no length-2 Hasse words".to_string());
    let bounds = if note.is_some() { None } else { Some(upper_bounds::<Rational>(&pd)?) };
    let cx = CochainComplex::new(&pd)?;
    let mut out = Vec::new();
    for m in &modules {
        let b = bounds
            .as_ref()
            .and_then(|b| b.modules.iter().find(|b| b.module == m.word));
        let regular = m.is_regular();
        let twistor = if regular {
            let t = twistor_check(&pd, m)?;
            Some(TwistorSummary {
                nodes: t.descent.nodes,
                degree_q: t.descent.degree_q,
                degree_p: t.descent.degree_p,
                dim_q: t.dim_q,
                dim_p: t.dim_p,
                positive_dim_p: t.positive_dim_p,
            })
        } else {
            None
        };
        let model = if regular { Some(model_summary(&pd, &cx, m)?) } else { None };
        let split_real = if regular && req.real_form == RealForm::Split {
            let v = split_real_sign_check(&pd, m, req.lattice)?;
            Some(SplitRealSummary {
                unique: v.equivalent,
                lattice: v.lattice,
                exponents: v.exponents,
                witness: v.witness,
                weyl_stabilizer: v.weyl_stabilizer,
                note: v.note,
            })
        } else {
            None
        };
        out.push(ModuleReport {
            word: m.word.to_string(),
            mu_fw: strings(&m.mu_fw),
            mu_roots: strings(m.mu.coeffs_simple()),
            degree: m.degree,
            j_mu: m.j_mu.clone(),
            dim: m.dim,
            regular,
            a0_dim: b.map(|b| b.a0_dim),
            prolongation_dims: b.and_then(|b| b.regular.then(|| b.prolongation_dims.clone())),
            u_mu: b.and_then(|b| b.u_mu),
            twistor,
            model,
            split_real,
        });
    }
    let hodge_oracle = match req.oracle_cap {
        Some(cap) => Some(oracle(&pd, cap)?),
        None => None,
    };
    Ok(AnalysisReport {
        schema: ANALYZE_SCHEMA,
        algebra: req.algebra.to_string(),
        cross: pd.cross().to_vec(),
        dim_g: pd.algebra().dim(),
        graded_dims: pd.graded_dims(),
        real_form: req.real_form,
        lattice: (req.real_form == RealForm::Split).then_some(req.lattice),
        note,
        modules: out,
        u: bounds.and_then(|b| b.overall),
        hodge_oracle,
    })
}

impl AnalysisReport {
    /// Any model check, twistor condition or split-real computation failed.
    pub fn failed(&self) -> bool {
        self.modules.iter().any(|m| {
            let model_bad = matches!(&m.model, Some(ModelSummary::Built { checks, .. })
                if checks.values().any(|c| c.status == Status::Fail));
            let twistor_bad = m
                .twistor
                .as_ref()
                .is_some_and(|t| t.degree_p <= 0 || t.positive_dim_p != 0 || t.dim_p != t.dim_q);
            model_bad || twistor_bad
        }) || self.hodge_oracle.as_ref().is_some_and(|o| !o.is_skipped() && !o.passed())
    }

    pub fn oracle_skipped(&self) -> bool {
        self.hodge_oracle.as_ref().is_some_and(|o| o.is_skipped())
    }
}

// ---------------------------------------------------------------- table

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Formula {
    Projective,
    Ode,
    Conformal,
    Contact,
}

impl std::str::FromStr for Formula {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "projective" => Ok(Self::Projective),
            "ode" => Ok(Self::Ode),
            "conformal" => Ok(Self::Conformal),
            "contact" => Ok(Self::Contact),
            _ => Err(format!("unknown formula '{s}' (projective, ode, conformal, contact)")),
        }
    }
}

impl Formula {
    /// Expected `U_μ` per module word, or for the overall bound under `"U"`.
    fn expected(self, t: SimpleType, regular: &[String]) -> Result<BTreeMap<String, usize>, String> {
        let l = t.rank();
        let mut out = BTreeMap::new();
        match (self, t.family()) {
            (Self::Projective, Family::A) => {
                out.insert("U".into(), (l - 1).pow(2) + 4);
            }
            (Self::Ode, Family::A) => {
                let m = l - 1;
                out.insert("(21)".into(), m * m + 5);
                out.insert("(12)".into(), m * m + 4);
            }
            (Self::Conformal, Family::B | Family::D) => {
                let n = if t.family() == Family::B { 2 * l - 1 } else { 2 * l - 2 };
                out.insert("U".into(), (n - 1) * (n - 2) / 2 + 6);
            }
            (Self::Contact, Family::A) => {
                let n = l - 1;
                for w in regular {
                    out.insert(w.clone(), n * n + 4);
                }
            }
            _ => return Err(format!("formula {self:?} does not apply to {t}")),
        }
        Ok(out)
    }
}

#[derive(Debug, Serialize)]
pub struct TableReport {
    pub schema: &'static str,
    pub family: String,
    pub cross: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula: Option<Formula>,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Serialize)]
pub struct TableRow {
    pub algebra: String,
    pub rank: usize,
    pub cross: Vec<usize>,
    pub modules: Vec<TableEntry>,
    #[serde(rename = "U")]
    pub u: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<BTreeMap<String, usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct TableEntry {
    pub word: String,
    pub degree: i64,
    #[serde(rename = "U_mu")]
    pub u_mu: Option<usize>,
}

pub fn table(
    family: Family,
    ranks: &[usize],
    pattern: &str,
    formula: Option<Formula>,
) -> Result<TableReport, ReportError> {
    let jobs: Vec<(SimpleType, Vec<usize>)> = ranks
        .iter()
        .map(|&l| {
            let t = SimpleType::new(family, l)
                .map_err(|_| ReportError::Invalid(format!("no simple Lie algebra {}{l}", family.letter())))?;
            let cross = crate::args::parse_nodes("cross", pattern, Some(l)).map_err(|e| ReportError::Invalid(e.to_string()))?;
            Ok((t, cross))
        })
        .collect::<Result<_, ReportError>>()?;
    let rows = jobs
        .par_iter()
        .map(|(t, cross)| table_row(*t, cross, formula))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TableReport {
        schema: TABLE_SCHEMA,
        family: family.letter().to_string(),
        cross: pattern.to_string(),
        formula,
        rows,
    })
}

fn table_row(t: SimpleType, cross: &[usize], formula: Option<Formula>) -> Result<TableRow, ReportError> {
    let pd = parabolic(t, cross)?;
    let b = upper_bounds::<Rational>(&pd)?;
    let modules: Vec<TableEntry> = b
        .modules
        .iter()
        .map(|m| TableEntry {
            word: m.module.to_string(),
            degree: m.degree,
            u_mu: m.u_mu,
        })
        .collect();
    let (expected, matches) = match formula {
        Some(f) => {
            let regular: Vec<String> = modules.iter().filter(|m| m.degree > 0).map(|m| m.word.clone()).collect();
            let exp = f.expected(t, &regular).map_err(ReportError::Invalid)?;
            let ok = exp.iter().all(|(k, v)| {
                if k == "U" {
                    b.overall == Some(*v)
                } else {
                    modules.iter().any(|m| &m.word == k && m.u_mu == Some(*v))
                }
            });
            (Some(exp), Some(ok))
        }
        None => (None, None),
    };
    Ok(TableRow {
        algebra: t.to_string(),
        rank: t.rank(),
        cross: pd.cross().to_vec(),
        modules,
        u: b.overall,
        expected,
        matches,
    })
}

// ---------------------------------------------------------------- verify

pub const ALL_CHECKS: [&str; 8] = [
    "jacobi",
    "complex",
    "harmonic",
    "hodge",
    "annihilator",
    "mu",
    "twistor",
    "model",
];

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub algebra: String,
    pub cross: Vec<usize>,
    pub checks: Vec<NamedCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hodge_oracle: Option<OracleReport>,
}

#[derive(Debug, Serialize)]
pub struct NamedCheck {
    pub name: String,
    #[serde(flatten)]
    pub check: Check,
}

impl VerifyReport {
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.check.status == Status::Fail)
    }

    pub fn oracle_skipped(&self) -> bool {
        self.hodge_oracle.as_ref().is_some_and(|o| o.is_skipped())
    }
}

pub fn parse_checks(s: &str) -> Result<Vec<String>, ReportError> {
    let mut out = Vec::new();
    for c in s.split(',').map(str::trim) {
        if c == "all" {
            out.extend(ALL_CHECKS.iter().map(|s| s.to_string()));
        } else if ALL_CHECKS.contains(&c) {
            out.push(c.to_string());
        } else {
            return Err(ReportError::Invalid(format!(
                "unknown check '{c}' (expected all or one of {})",
                ALL_CHECKS.join(", ")
            )));
        }
    }
    out.dedup();
    Ok(out)
}

fn pass() -> Check {
    Check {
        status: Status::Pass,
        witness: None,
    }
}

fn fail(w: String) -> Check {
    Check {
        status: Status::Fail,
        witness: Some(w),
    }
}

fn skipped(w: &str) -> Check {
    Check {
        status: Status::Skipped,
        witness: Some(w.to_string()),
    }
}

/// Runs `f` on every module; the first failure is the witness.
fn per_module(
    modules: &[HarmonicModule<Rational>],
    only_regular: bool,
    mut f: impl FnMut(&HarmonicModule<Rational>) -> Result<Option<String>, ReportError>,
) -> Result<Check, ReportError> {
    let mut ran = false;
    for m in modules {
        if only_regular && !m.is_regular() {
            continue;
        }
        ran = true;
        if let Some(w) = f(m)? {
            return Ok(fail(format!("{}: {w}", m.word)));
        }
    }
    Ok(if ran { pass() } else { skipped("no applicable module") })
}

pub fn verify(t: SimpleType, cross: &[usize], checks: &[String], cap: usize) -> Result<VerifyReport, ReportError> {
    let pd = parabolic(t, cross)?;
    let cx = CochainComplex::new(&pd)?;
    let modules = harmonic_modules::<Rational>(&pd)?;
    let mut out = Vec::new();
    let mut hodge_oracle = None;
    for name in checks {
        let check = match name.as_str() {
            "jacobi" => match pd.algebra().verify_jacobi() {
                Ok(()) => pass(),
                Err(e) => fail(e.to_string()),
            },
            "complex" => complex_check(&pd, &cx, cap)?,
            "harmonic" => per_module(&modules, false, |m| {
                let lap = cx.laplacian(&m.phi0)?;
                let d = cx.del(&m.phi0)?;
                let ds = cx.delstar(&m.phi0)?;
                Ok(if !lap.is_zero() {
                    Some("□φ₀ ≠ 0".into())
                } else if !d.is_zero() || !ds.is_zero() {
                    Some("φ₀ not closed and coclosed".into())
                } else {
                    None
                })
            })?,
            "hodge" => {
                let o = oracle(&pd, cap)?;
                let c = match &o {
                    OracleReport::Skipped { dim_c2, cap } => {
                        skipped(&format!("dim C² = {dim_c2} exceeds the oracle cap {cap}"))
                    }
                    OracleReport::Computed { ker_box, kostant_sum, .. } if !o.passed() => {
                        fail(format!("dim ker □ = {ker_box}, Kostant sum = {kostant_sum}"))
                    }
                    OracleReport::Computed { .. } => pass(),
                };
                hodge_oracle = Some(o);
                c
            }
            "annihilator" => per_module(&modules, false, |m| {
                let direct = annihilator(&cx, &m.phi0)?;
                Ok((direct != annihilator_closed_form(&pd, m)).then(|| "direct and closed-form annihilators differ".into()))
            })?,
            "mu" => {
                if t.rank() < 3 {
                    skipped("rank < 3")
                } else {
                    per_module(&modules, true, |m| {
                        let mu = m.mu_ints();
                        if !mu1_sign_pattern(m) {
                            return Ok(Some("MU1 sign pattern fails".into()));
                        }
                        let h = mu2_witness(&pd, &mu)?;
                        Ok((!mu2_holds(&pd, &mu, &h)).then(|| "MU2 witness rejected".into()))
                    })?
                }
            }
            "twistor" => per_module(&modules, true, |m| {
                let r = twistor_check(&pd, m)?;
                Ok(if r.descent.degree_p <= 0 {
                    Some(format!("Z̄(μ) = {} after descent", r.descent.degree_p))
                } else if r.positive_dim_p != 0 {
                    Some(format!("positive part of dimension {} after descent", r.positive_dim_p))
                } else if r.dim_p != r.dim_q {
                    Some(format!("dimension {} before and {} after descent", r.dim_q, r.dim_p))
                } else {
                    None
                })
            })?,
            "model" => match canonical_model_exclusion(&pd) {
                Some(reason) => skipped(&reason),
                None => per_module(&modules, true, |m| {
                    Ok(match model_summary(&pd, &cx, m)? {
                        ModelSummary::Built { checks, .. } => checks
                            .iter()
                            .find(|(_, c)| c.status == Status::Fail)
                            .map(|(k, c)| format!("{k}: {}", c.witness.clone().unwrap_or_default())),
                        ModelSummary::Unsupported { reason } => Some(reason),
                    })
                })?,
            },
            other => return Err(ReportError::Invalid(format!("unknown check '{other}'"))),
        };
        out.push(NamedCheck {
            name: name.clone(),
            check,
        });
    }
    Ok(VerifyReport {
        schema: VERIFY_SCHEMA,
        algebra: t.to_string(),
        cross: pd.cross().to_vec(),
        checks: out,
        hodge_oracle,
    })
}

/// `∂² = 0` on every basis 0- and 1-cochain, `(∂*)² = 0` on basis
/// 2-cochains (every one up to `cap`, an even stride beyond it).
fn complex_check(pd: &ParabolicData, cx: &CochainComplex, cap: usize) -> Result<Check, ReportError> {
    use symgap_core::homology::Cochain;
    let ty = pd.algebra().simple_type();
    let dim = pd.algebra().dim();
    let n = cx.dim_minus();
    let one = Rational::from_integer(1.into());
    for v in 0..dim {
        let mut c = Cochain::<Rational>::zero(ty, 0);
        c.add_coord(0, v, one.clone());
        if !cx.del(&cx.del(&c)?)?.is_zero() {
            return Ok(fail(format!("∂∂ ≠ 0 on the 0-cochain {v}")));
        }
        for a in 0..n {
            let mut c = Cochain::<Rational>::zero(ty, 1);
            c.add_coord(1 << a, v, one.clone());
            if !cx.del(&cx.del(&c)?)?.is_zero() {
                return Ok(fail(format!("∂∂ ≠ 0 on the 1-cochain ω{a} ⊗ {v}")));
            }
        }
    }
    let stride = cx.dim_c2().div_ceil(cap.max(1)).max(1);
    let mut i = 0usize;
    for a in 0..n {
        for b in a + 1..n {
            for v in 0..dim {
                i += 1;
                if !i.is_multiple_of(stride) {
                    continue;
                }
                let mut c = Cochain::<Rational>::zero(ty, 2);
                c.add_coord(1 << a | 1 << b, v, one.clone());
                if !cx.delstar(&cx.delstar(&c)?)?.is_zero() {
                    return Ok(fail(format!("∂*∂* ≠ 0 on ω{a}∧ω{b} ⊗ {v}")));
                }
            }
        }
    }
    Ok(pass())
}
