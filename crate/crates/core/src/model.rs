//! Algebraic models `(𝔣; 𝔤, 𝔭)`, the canonical curved model, twistor descent
//! and the split-real `±φ₀` decision.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::chevalley::AlgebraElement;
use crate::error::{LieError, Result};
use crate::homology::{Cochain, CochainComplex, Mask};
use crate::kostant::{harmonic_module, is_hasse_word, HarmonicModule, HasseWord2};
use crate::linalg::canonical_basis;
use crate::parabolic::ParabolicData;
use crate::prolong::{annihilator, prolong_module, tanaka_prolong, GradedSubalgebra};
use crate::rootsystem::{Family, SimpleType};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn pass() -> Self {
        Self {
            status: Status::Pass,
            witness: None,
        }
    }

    fn fail(w: impl Into<String>) -> Self {
        Self {
            status: Status::Fail,
            witness: Some(w.into()),
        }
    }

    fn skipped(reason: impl Into<String>) -> Self {
        Self {
            status: Status::Skipped,
            witness: Some(reason.into()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Outcome of [`verify_algebraic_model`]. Keys: `jacobi`, `filtration`,
/// `M1`, `M2`, `M3`, `f0_kappa`, `gr_in_a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelReport {
    pub checks: BTreeMap<String, Check>,
    /// `gr(𝔣) = 𝔞^{κ_H}`, when the comparison could be made.
    pub gr_equals_a: Option<bool>,
}

impl ModelReport {
    /// No check failed (skipped checks are allowed).
    pub fn all_pass(&self) -> bool {
        self.checks.values().all(|c| c.status != Status::Fail)
    }

    pub fn first_failure(&self) -> Option<(&str, &Check)> {
        self.checks
            .iter()
            .find(|(_, c)| c.status == Status::Fail)
            .map(|(k, c)| (k.as_str(), c))
    }
}

type Row<S> = Vec<(usize, S)>;

/// A subspace `𝔣 ⊆ 𝔤` with bracket `[x, y]_𝔣 = [x, y] - κ(x, y)`.
///
/// The basis is kept in reduced echelon form with columns ordered by degree,
/// so each basis vector's pivot sits in its lowest degree and the filtration
/// `𝔣^i = 𝔣 ∩ 𝔤^i` is spanned by the basis vectors of filtration degree `>= i`.
#[derive(Clone, Debug)]
pub struct AlgebraicModel<S> {
    pd: ParabolicData,
    basis: Vec<AlgebraElement<S>>,
    pivots: Vec<usize>,
    filt: Vec<i32>,
    kappa: Cochain<S>,
    // [b_i, b_j]_𝔣 in 𝔣-coordinates for i < j; None if it leaves 𝔣
    table: Vec<Option<Row<S>>>,
}

impl<S: Scalar> AlgebraicModel<S> {
    pub fn new(pd: &ParabolicData, f: &[AlgebraElement<S>], kappa: Cochain<S>) -> Result<Self> {
        if kappa.degree() != 2 {
            return Err(LieError::UnsupportedDegree(kappa.degree()));
        }
        let dim = pd.algebra().dim();
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by_key(|&b| (pd.basis_degree(b), b));
        let rows: Vec<Vec<S>> = f
            .iter()
            .map(|x| order.iter().map(|&b| x.coeff(b)).collect())
            .collect();
        let ty = pd.algebra().simple_type();
        let mut basis = Vec::new();
        let mut pivots = Vec::new();
        for r in canonical_basis(&rows, dim) {
            let p = r.iter().position(|x| !x.is_zero()).expect("nonzero row");
            pivots.push(order[p]);
            basis.push(AlgebraElement::from_terms(
                ty,
                order.iter().zip(r).map(|(&b, x)| (b, x)),
            ));
        }
        let filt = pivots.iter().map(|&p| pd.basis_degree(p)).collect();
        let mut am = Self {
            pd: pd.clone(),
            basis,
            pivots,
            filt,
            kappa,
            table: Vec::new(),
        };
        am.table = am.build_table()?;
        Ok(am)
    }

    /// The flat model `𝔣 = 𝔤`, `κ = 0`.
    pub fn flat(pd: &ParabolicData) -> Result<Self> {
        let ty = pd.algebra().simple_type();
        let f: Vec<AlgebraElement<S>> = (0..pd.algebra().dim()).map(|b| AlgebraElement::basis(ty, b)).collect();
        Self::new(pd, &f, Cochain::zero(ty, 2))
    }

    /// Same subspace, different curvature.
    pub fn with_kappa(&self, kappa: Cochain<S>) -> Result<Self> {
        Self::new(&self.pd, &self.basis, kappa)
    }

    pub fn parabolic(&self) -> &ParabolicData {
        &self.pd
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[AlgebraElement<S>] {
        &self.basis
    }

    pub fn kappa(&self) -> &Cochain<S> {
        &self.kappa
    }

    /// Filtration degree of each basis vector.
    pub fn filtration(&self) -> &[i32] {
        &self.filt
    }

    /// Coordinates of `y` on the basis, or `None` if `y ∉ 𝔣`.
    pub fn coords_of(&self, y: &AlgebraElement<S>) -> Option<Row<S>> {
        let c: Row<S> = self
            .pivots
            .iter()
            .enumerate()
            .map(|(k, &p)| (k, y.coeff(p)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        let mut r = y.clone();
        for (k, x) in &c {
            r.add_scaled(&self.basis[*k], &-x.clone());
        }
        r.is_zero().then_some(c)
    }

    pub fn kappa_eval(&self, cx: &CochainComplex, x: &AlgebraElement<S>, y: &AlgebraElement<S>) -> AlgebraElement<S> {
        cx.evaluate(&self.kappa, x, y)
    }

    /// `[x, y]_𝔣` for arbitrary `x, y ∈ 𝔤`.
    pub fn deformed_bracket(
        &self,
        cx: &CochainComplex,
        x: &AlgebraElement<S>,
        y: &AlgebraElement<S>,
    ) -> Result<AlgebraElement<S>> {
        Ok(self.pd.algebra().bracket(x, y)?.sub(&self.kappa_eval(cx, x, y)))
    }

    fn build_table(&self) -> Result<Vec<Option<Row<S>>>> {
        let cx = CochainComplex::new(&self.pd)?;
        let n = self.dim();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        pairs
            .par_iter()
            .map(|&(i, j)| {
                let z = self.deformed_bracket(&cx, &self.basis[i], &self.basis[j])?;
                Ok(self.coords_of(&z))
            })
            .collect()
    }

    fn table_index(&self, i: usize, j: usize) -> usize {
        let n = self.dim();
        i * n - i * (i + 1) / 2 + (j - i - 1)
    }

    /// `[b_i, b_j]_𝔣` in 𝔣-coordinates; `None` if it leaves 𝔣.
    pub fn structure(&self, i: usize, j: usize) -> Option<Row<S>> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Some(Vec::new()),
            Less => self.table[self.table_index(i, j)].clone(),
            Greater => self.table[self.table_index(j, i)]
                .as_ref()
                .map(|r| r.iter().map(|(k, x)| (*k, -x.clone())).collect()),
        }
    }

    fn to_element(&self, r: &Row<S>) -> AlgebraElement<S> {
        let mut out = AlgebraElement::zero(self.pd.algebra().simple_type());
        for (k, x) in r {
            out.add_scaled(&self.basis[*k], x);
        }
        out
    }
}

fn describe<S: Scalar>(x: &AlgebraElement<S>) -> String {
    x.to_string()
}

fn check_closure<S: Scalar>(am: &AlgebraicModel<S>) -> Option<String> {
    let n = am.dim();
    for i in 0..n {
        for j in i + 1..n {
            if am.table[am.table_index(i, j)].is_none() {
                return Some(format!("[b{i}, b{j}]_f leaves f"));
            }
        }
    }
    None
}

fn check_jacobi<S: Scalar>(am: &AlgebraicModel<S>) -> Check {
    if let Some(w) = check_closure(am) {
        return Check::fail(w);
    }
    let n = am.dim();
    let rows: Vec<Vec<Row<S>>> = (0..n)
        .map(|i| (0..n).map(|j| am.structure(i, j).unwrap()).collect())
        .collect();
    let bad = (0..n).into_par_iter().find_map_first(|i| {
        for j in i + 1..n {
            for k in j + 1..n {
                let mut acc: HashMap<usize, S> = HashMap::new();
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for (m, x) in &rows[a][b] {
                        for (q, y) in &rows[*m][c] {
                            let e = acc.entry(*q).or_insert_with(S::zero);
                            *e = e.clone() + x.clone() * y.clone();
                        }
                    }
                }
                if acc.values().any(|v| !v.is_zero()) {
                    return Some((i, j, k));
                }
            }
        }
        None
    });
    match bad {
        None => Check::pass(),
        Some((i, j, k)) => Check::fail(format!(
            "Jacobi fails on ({}, {}, {})",
            describe(&am.basis[i]),
            describe(&am.basis[j]),
            describe(&am.basis[k])
        )),
    }
}

fn check_filtration<S: Scalar>(am: &AlgebraicModel<S>) -> Check {
    let n = am.dim();
    let nu = am.pd.depth();
    for i in 0..n {
        for j in i + 1..n {
            let Some(r) = am.structure(i, j) else {
                return Check::fail(format!("[b{i}, b{j}]_f leaves f"));
            };
            let need = (am.filt[i] + am.filt[j]).min(nu + 1);
            if r.iter().any(|(m, _)| am.filt[*m] < need) {
                return Check::fail(format!(
                    "[{}, {}]_f not in f^{need}",
                    describe(&am.basis[i]),
                    describe(&am.basis[j])
                ));
            }
        }
    }
    Check::pass()
}

fn check_m1<S: Scalar>(am: &AlgebraicModel<S>) -> Check {
    for k in 1..=am.pd.depth() {
        let have = am.filt.iter().filter(|&&d| d == -k).count();
        let want = am.pd.graded_piece(-k).len();
        if have != want {
            return Check::fail(format!("dim gr_{}(f) = {have}, dim g_{} = {want}", -k, -k));
        }
    }
    Check::pass()
}

fn check_m2<S: Scalar>(am: &AlgebraicModel<S>) -> Check {
    let alg = am.pd.algebra();
    let n = am.dim();
    for z in (0..n).filter(|&z| am.filt[z] >= 0) {
        for y in 0..n {
            let Some(r) = am.structure(z, y) else {
                return Check::fail(format!("[b{z}, b{y}]_f leaves f"));
            };
            let plain = alg.bracket_unchecked(&am.basis[z], &am.basis[y]);
            if plain != am.to_element(&r) {
                return Check::fail(format!(
                    "κ̃({}, {}) ≠ 0",
                    describe(&am.basis[z]),
                    describe(&am.basis[y])
                ));
            }
        }
    }
    Check::pass()
}

fn check_m3<S: Scalar>(am: &AlgebraicModel<S>, cx: &CochainComplex) -> Check {
    match cx.regularity_normality(&am.kappa) {
        Err(e) => Check::fail(e.to_string()),
        Ok(r) if r.regular && r.normal => Check::pass(),
        Ok(r) => Check::fail(format!(
            "regular = {}, normal = {}, degrees {:?}",
            r.regular, r.normal, r.degrees
        )),
    }
}

fn check_f0_kappa<S: Scalar>(am: &AlgebraicModel<S>, cx: &CochainComplex) -> Check {
    let alg = am.pd.algebra();
    let n = am.dim();
    // only basis vectors with a 𝔤₋ component feed κ, and 𝔣⁰ preserves 𝔤⁰
    let neg: Vec<usize> = (0..n).filter(|&i| am.filt[i] < 0).collect();
    let zs: Vec<usize> = (0..n).filter(|&i| am.filt[i] >= 0).collect();
    let bad = zs.par_iter().find_map_first(|&z| {
        let bz = &am.basis[z];
        for (p, &x) in neg.iter().enumerate() {
            let bx = &am.basis[x];
            let zx = alg.bracket_unchecked(bz, bx);
            for &y in &neg[p + 1..] {
                let by = &am.basis[y];
                let zy = alg.bracket_unchecked(bz, by);
                let lhs = alg
                    .bracket_unchecked(bz, &am.kappa_eval(cx, bx, by))
                    .sub(&am.kappa_eval(cx, &zx, by))
                    .sub(&am.kappa_eval(cx, bx, &zy));
                if !lhs.is_zero() {
                    return Some((z, x, y));
                }
            }
        }
        None
    });
    match bad {
        None => Check::pass(),
        Some((z, x, y)) => Check::fail(format!(
            "z = {} moves κ on ({}, {})",
            describe(&am.basis[z]),
            describe(&am.basis[x]),
            describe(&am.basis[y])
        )),
    }
}

/// `gr(𝔣)` as a graded subspace: leading parts of the basis vectors.
pub fn associated_graded<S: Scalar>(am: &AlgebraicModel<S>) -> Result<BTreeMap<i32, Vec<AlgebraElement<S>>>> {
    let mut out: BTreeMap<i32, Vec<AlgebraElement<S>>> = BTreeMap::new();
    for (x, &d) in am.basis.iter().zip(&am.filt) {
        out.entry(d).or_default().push(am.pd.leading_part(x, d)?);
    }
    Ok(out)
}

fn check_gr_in_a<S: Scalar>(am: &AlgebraicModel<S>, cx: &CochainComplex) -> (Check, Option<bool>) {
    let gr = match associated_graded(am) {
        Ok(g) => g,
        Err(e) => return (Check::fail(e.to_string()), None),
    };
    let a: GradedSubalgebra<S> = if am.kappa.is_zero() {
        let ty = am.pd.algebra().simple_type();
        let g0: Vec<AlgebraElement<S>> = am.pd.g0().iter().map(|&b| AlgebraElement::basis(ty, b)).collect();
        match tanaka_prolong(&am.pd, &g0) {
            Ok(a) => a,
            Err(e) => return (Check::fail(e.to_string()), None),
        }
    } else {
        let harmonic = cx.del(&am.kappa).map(|c| c.is_zero()).unwrap_or(false)
            && cx.delstar(&am.kappa).map(|c| c.is_zero()).unwrap_or(false);
        if !harmonic {
            return (Check::skipped("κ is not harmonic; κ_H not formed"), None);
        }
        // for harmonic κ the class is κ itself and its annihilator is ann(κ)
        match annihilator(cx, &am.kappa).and_then(|a0| tanaka_prolong(&am.pd, &a0)) {
            Ok(a) => a,
            Err(e) => return (Check::fail(e.to_string()), None),
        }
    };
    let mut equal = true;
    for (d, xs) in &gr {
        let mut ech = crate::linalg::SparseEchelon::new();
        for y in a.piece(*d) {
            ech.insert(y.terms().map(|(b, c)| (b, c.clone())));
        }
        for x in xs {
            if !ech.contains(x.terms().map(|(b, c)| (b, c.clone()))) {
                return (Check::fail(format!("gr_{d} element {} not in a", describe(x))), Some(false));
            }
        }
        equal &= xs.len() == a.piece(*d).len();
    }
    equal &= gr.values().map(Vec::len).sum::<usize>() == a.dim();
    (Check::pass(), Some(equal))
}

/// Runs every model check; each failure carries a witness.
pub fn verify_algebraic_model<S: Scalar>(am: &AlgebraicModel<S>) -> Result<ModelReport> {
    let cx = CochainComplex::new(&am.pd)?;
    let mut checks = BTreeMap::new();
    checks.insert("jacobi".to_string(), check_jacobi(am));
    checks.insert("filtration".to_string(), check_filtration(am));
    checks.insert("M1".to_string(), check_m1(am));
    checks.insert("M2".to_string(), check_m2(am));
    checks.insert("M3".to_string(), check_m3(am, &cx));
    checks.insert("f0_kappa".to_string(), check_f0_kappa(am, &cx));
    let (gr, eq) = check_gr_in_a(am, &cx);
    checks.insert("gr_in_a".to_string(), gr);
    Ok(ModelReport {
        checks,
        gr_equals_a: eq,
    })
}

/// Why `(𝔤, 𝔭)` has no canonical model, if it is excluded.
pub fn canonical_model_exclusion(pd: &ParabolicData) -> Option<String> {
    let t = pd.algebra().simple_type();
    let cross = pd.cross();
    match (t.family(), t.rank(), cross) {
        (_, 1, _) => Some(format!("{t} has rank 1; canonical models need rank >= 2")),
        (Family::A, 2, _) => Some("A2 is excluded from canonical models (submaximal models are not unique)".into()),
        (Family::B, 2, [1]) | (Family::B, 2, [1, 2]) => Some(format!(
            "({t}, P{}) is excluded from canonical models (submaximal models are not unique)",
            cross.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
        )),
        (Family::C, 2, [2]) | (Family::C, 2, [1, 2]) => Some(format!(
            "({t}, P{}) is isomorphic to an excluded B2 case and has no canonical model",
            cross.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
        )),
        _ => None,
    }
}

/// The canonical curved model `𝔣 = 𝔞^{φ₀}`, `κ = sign · φ₀`, verified on construction.
pub fn build_canonical_model<S: Scalar>(
    pd: &ParabolicData,
    m: &HarmonicModule<S>,
    sign: i64,
) -> Result<(AlgebraicModel<S>, ModelReport)> {
    if sign != 1 && sign != -1 {
        return Err(LieError::Unsupported(format!("sign must be ±1, got {sign}")));
    }
    if let Some(msg) = canonical_model_exclusion(pd) {
        return Err(LieError::Unsupported(msg));
    }
    if !m.is_regular() {
        return Err(LieError::Unsupported(format!(
            "module {} has degree {} <= 0; canonical models need a regular module",
            m.word, m.degree
        )));
    }
    let cx = CochainComplex::new(pd)?;
    let a = prolong_module(&cx, m)?;
    let kappa = m.phi0.scale(&S::from_int(sign));
    let am = AlgebraicModel::new(pd, &a.basis(), kappa)?;
    let report = verify_algebraic_model(&am)?;
    if let Some((name, c)) = report.first_failure() {
        return Err(LieError::Internal(format!(
            "canonical model for {pd} {} fails {name}: {}",
            m.word,
            c.witness.clone().unwrap_or_default()
        )));
    }
    Ok((am, report))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistorDescent {
    pub nodes: Vec<usize>,
    /// `Z(μ)` at the original parabolic.
    pub degree_q: i64,
    /// `Z̄(μ)` at the descended parabolic.
    pub degree_p: i64,
}

/// `I_p = {j}` if `c_jk < 0`, else `{j, k}`; checks that regularity descends.
pub fn twistor_descend(t: SimpleType, i_q: &[usize], w: HasseWord2) -> Result<TwistorDescent> {
    let alg = std::sync::Arc::new(crate::chevalley::ChevalleyAlgebra::of_type(t)?);
    let pd_q = ParabolicData::new(alg, i_q)?;
    twistor_descend_pd(&pd_q, w)
}

pub fn twistor_descend_pd(pd_q: &ParabolicData, w: HasseWord2) -> Result<TwistorDescent> {
    if !is_hasse_word(pd_q, w) {
        return Err(LieError::NotHasseWord { j: w.j, k: w.k });
    }
    let rs = pd_q.algebra().root_system();
    let nodes = if rs.c(w.j, w.k) < 0 {
        vec![w.j]
    } else {
        let mut v = vec![w.j, w.k];
        v.sort_unstable();
        v
    };
    let mu = crate::kostant::mu_closed_form(rs, w);
    let degree_q = pd_q.weight_degree(&mu);
    let degree_p: i64 = nodes.iter().map(|&i| mu[i - 1]).sum();
    if degree_q > 0 && degree_p <= 0 {
        return Err(LieError::Internal(format!(
            "regularity lost in twistor descent: Z(μ) = {degree_q}, Z̄(μ) = {degree_p}"
        )));
    }
    Ok(TwistorDescent {
        nodes,
        degree_q,
        degree_p,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistorReport {
    pub descent: TwistorDescent,
    pub dim_q: usize,
    pub dim_p: usize,
    /// `dim 𝔞^{φ₀}₊` at the descended parabolic; expected to be 0.
    pub positive_dim_p: usize,
}

/// Prolongation data before and after descent, for a regular module.
pub fn twistor_check<S: Scalar>(pd_q: &ParabolicData, m: &HarmonicModule<S>) -> Result<TwistorReport> {
    let descent = twistor_descend_pd(pd_q, m.word)?;
    let cx_q = CochainComplex::new(pd_q)?;
    let dim_q = prolong_module(&cx_q, m)?.dim();
    let pd_p = ParabolicData::new(pd_q.algebra_arc().clone(), &descent.nodes)?;
    let m_p: HarmonicModule<S> = harmonic_module(&pd_p, m.word)?;
    let cx_p = CochainComplex::new(&pd_p)?;
    let a_p = prolong_module(&cx_p, &m_p)?;
    Ok(TwistorReport {
        descent,
        dim_q,
        dim_p: a_p.dim(),
        positive_dim_p: a_p.positive_dim(),
    })
}

/// Which characters of the split torus are group characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WeightLatticeSpec {
    /// Weight lattice; coordinates on the fundamental weights.
    #[serde(rename = "sc")]
    SimplyConnected,
    /// Root lattice; coordinates on the simple roots.
    #[serde(rename = "adjoint")]
    Adjoint,
    /// `SL(n+1)`: diagonal `diag(a_1..a_{n+1})` with an even number of negative entries.
    #[serde(rename = "sl")]
    MatrixSl,
    /// `PGL(n+1)`: any diagonal sign pattern.
    #[serde(rename = "pgl")]
    MatrixPgl,
    /// Split `SO`: coordinates `ε_1..ε_ℓ`, any signs.
    #[serde(rename = "so-split")]
    MatrixSoSplit,
}

impl fmt::Display for WeightLatticeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::SimplyConnected => "sc",
            Self::Adjoint => "adjoint",
            Self::MatrixSl => "sl",
            Self::MatrixPgl => "pgl",
            Self::MatrixSoSplit => "so-split",
        })
    }
}

impl FromStr for WeightLatticeSpec {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sc" => Self::SimplyConnected,
            "adjoint" => Self::Adjoint,
            "sl" => Self::MatrixSl,
            "pgl" => Self::MatrixPgl,
            "so-split" => Self::MatrixSoSplit,
            _ => return Err(LieError::Unsupported(format!("unknown lattice '{s}'"))),
        })
    }
}

/// Exponents `n_i` of the character `μ` in the coordinates of `spec`.
pub fn character_exponents(t: SimpleType, spec: WeightLatticeSpec, mu: &[i64]) -> Result<Vec<i64>> {
    let l = t.rank();
    let m = |i: usize| if i == 0 || i > l { 0 } else { mu[i - 1] };
    match spec {
        WeightLatticeSpec::SimplyConnected => {
            let c = crate::rootsystem::cartan_matrix(t);
            Ok((0..l)
                .map(|j| (0..l).map(|i| mu[i] * c[i][j]).sum())
                .collect())
        }
        WeightLatticeSpec::Adjoint => Ok(mu.to_vec()),
        WeightLatticeSpec::MatrixSl | WeightLatticeSpec::MatrixPgl => {
            if t.family() != Family::A {
                return Err(LieError::Unsupported(format!("lattice {spec} needs type A, got {t}")));
            }
            // α_i = ε_i - ε_{i+1}
            Ok((1..=l + 1).map(|i| m(i) - m(i - 1)).collect())
        }
        WeightLatticeSpec::MatrixSoSplit => match t.family() {
            Family::B => Ok((1..=l).map(|i| m(i) - m(i - 1)).collect()),
            Family::D => {
                // α_{ℓ-1} = ε_{ℓ-1} - ε_ℓ, α_ℓ = ε_{ℓ-1} + ε_ℓ
                let mut e: Vec<i64> = (1..=l).map(|i| m(i) - m(i - 1)).collect();
                e[l - 2] += m(l);
                e[l - 1] = m(l) - m(l - 1);
                Ok(e)
            }
            _ => Err(LieError::Unsupported(format!("lattice {spec} needs type B or D, got {t}"))),
        },
    }
}

/// Value `prod ε_i^{n_i}` of the character on a sign vector.
pub fn character_sign(exponents: &[i64], eps: &[i8]) -> i8 {
    exponents
        .iter()
        .zip(eps)
        .filter(|(n, e)| **e < 0 && *n % 2 != 0)
        .fold(1, |s, _| -s)
}

fn admissible(spec: WeightLatticeSpec, eps: &[i8]) -> bool {
    spec != WeightLatticeSpec::MatrixSl || eps.iter().filter(|&&e| e < 0).count() % 2 == 0
}

/// Whether a sign vector is a group element of `spec` acting on `φ₀` by `-1`.
pub fn is_sign_witness(t: SimpleType, spec: WeightLatticeSpec, mu: &[i64], eps: &[i8]) -> Result<bool> {
    let e = character_exponents(t, spec, mu)?;
    Ok(eps.len() == e.len() && admissible(spec, eps) && character_sign(&e, eps) == -1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitRealVerdict {
    pub equivalent: bool,
    pub lattice: WeightLatticeSpec,
    pub exponents: Vec<i64>,
    /// Sign vector in the lattice coordinates.
    pub witness: Option<Vec<i8>>,
    /// Simple reflections of 𝔤₀ fixing `μ`; their lifts act trivially on `φ₀`.
    pub weyl_stabilizer: Vec<usize>,
    pub note: String,
}

/// Decides whether `-φ₀` is reached from `φ₀` by torus sign elements
/// (composed with line-stabilizing Weyl elements of 𝔤₀).
///
/// A lift of a simple reflection `s_i` of 𝔤₀ with `<μ, α_i^∨> = 0` fixes the
/// lowest weight vector, whose `sl_2`-string is trivial, so only the torus
/// signs can contribute.
pub fn split_real_sign_check<S: Scalar>(
    pd: &ParabolicData,
    m: &HarmonicModule<S>,
    spec: WeightLatticeSpec,
) -> Result<SplitRealVerdict> {
    if !m.is_regular() {
        return Err(LieError::Unsupported(format!("module {} is not regular", m.word)));
    }
    let t = pd.algebra().simple_type();
    let rs = pd.algebra().root_system();
    let mu = m.mu_ints();
    let exponents = character_exponents(t, spec, &mu)?;
    let weyl_stabilizer: Vec<usize> = (1..=rs.rank())
        .filter(|&i| !pd.is_crossed(i) && rs.coroot_pairing_int(&mu, i) == 0)
        .collect();
    let r = exponents.len();
    let mut vectors: Vec<Vec<i8>> = (0u32..1 << r)
        .map(|bits| (0..r).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect())
        .collect();
    // fewest sign flips first, then lexicographic on flipped positions
    vectors.sort_by_key(|v| {
        let flips: Vec<usize> = v.iter().enumerate().filter(|(_, e)| **e < 0).map(|(i, _)| i).collect();
        (flips.len(), flips)
    });
    let witness = vectors
        .into_iter()
        .find(|v| admissible(spec, v) && character_sign(&exponents, v) == -1);
    let equivalent = witness.is_some();
    let note = if equivalent {
        "torus sign element maps φ₀ to -φ₀".to_string()
    } else {
        "not reachable by torus/Weyl witnesses".to_string()
    };
    Ok(SplitRealVerdict {
        equivalent,
        lattice: spec,
        exponents,
        witness,
        weyl_stabilizer,
        note,
    })
}

/// Support of `κ` as `(covector positions, value basis index)` pairs.
pub fn kappa_support<S: Scalar>(k: &Cochain<S>) -> Vec<(Mask, usize)> {
    k.coords().map(|(m, b, _)| (m, b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::ChevalleyAlgebra;
    use crate::kostant::harmonic_modules;
    use num_traits::Zero;
    use crate::Rational;
    use std::sync::Arc;

    fn pd(t: &str, cross: &[usize]) -> ParabolicData {
        let alg = Arc::new(ChevalleyAlgebra::of_type(t.parse().unwrap()).unwrap());
        ParabolicData::new(alg, cross).unwrap()
    }

    fn g2_module(p: &ParabolicData) -> HarmonicModule<Rational> {
        harmonic_module(p, HasseWord2::new(2, 1)).unwrap()
    }

    #[test]
    fn g2_canonical_model_both_signs() {
        let p = pd("G2", &[2]);
        let m = g2_module(&p);
        for sign in [1, -1] {
            let (am, rep) = build_canonical_model(&p, &m, sign).unwrap();
            assert_eq!(am.dim(), 7);
            assert!(rep.all_pass(), "{rep:?}");
            assert!(rep.checks.values().all(Check::passed));
            assert_eq!(rep.gr_equals_a, Some(true));
        }
    }

    #[test]
    fn g2_kappa_evaluation() {
        let p = pd("G2", &[2]);
        let m = g2_module(&p);
        let cx = CochainComplex::new(&p).unwrap();
        let alg = p.algebra();
        let e = |c: &[i64]| alg.root_vector::<Rational>(c).unwrap();
        let v = cx.evaluate(&m.phi0, &e(&[0, -1]), &e(&[-1, -1]));
        assert_eq!(v.len(), 1);
        assert!(!v.coeff(alg.root_vector_index(&[-3, -1]).unwrap()).is_zero());
        let minus: Vec<usize> = p.g_minus().to_vec();
        let ty = alg.simple_type();
        let mut nonzero = 0;
        for (i, &a) in minus.iter().enumerate() {
            for &b in &minus[i + 1..] {
                let x = AlgebraElement::basis(ty, a);
                let y = AlgebraElement::basis(ty, b);
                if !cx.evaluate(&m.phi0, &x, &y).is_zero() {
                    nonzero += 1;
                }
            }
        }
        assert_eq!(nonzero, 1);
    }

    #[test]
    fn flat_model_passes() {
        for (t, cross) in [("G2", vec![2]), ("A3", vec![1, 2])] {
            let p = pd(t, &cross);
            let am = AlgebraicModel::<Rational>::flat(&p).unwrap();
            let rep = verify_algebraic_model(&am).unwrap();
            assert!(rep.checks.values().all(Check::passed), "{rep:?}");
            assert_eq!(rep.gr_equals_a, Some(true));
        }
    }

    #[test]
    fn fault_injection_is_caught() {
        let p = pd("G2", &[2]);
        let m = g2_module(&p);
        let (am, _) = build_canonical_model(&p, &m, 1).unwrap();
        // scale one extra slot: same value on a different covector pair
        let (mask, b, x) = {
            let (m0, b0, x0) = am.kappa().coords().next().unwrap();
            (m0, b0, x0.clone())
        };
        let other: Mask = if mask == 0b11 { 0b101 } else { 0b11 };
        let mut bad = am.kappa().clone();
        bad.add_coord(other, b, x * Rational::from_int(3));
        let mutated = am.with_kappa(bad).unwrap();
        let rep = verify_algebraic_model(&mutated).unwrap();
        let f0 = &rep.checks["f0_kappa"];
        assert_eq!(f0.status, Status::Fail);
        assert!(f0.witness.as_ref().unwrap().starts_with("z = "));
        assert!(!rep.all_pass());
    }

    #[test]
    fn exclusions_refuse_to_build() {
        for (t, cross) in [("A2", vec![1, 2]), ("B2", vec![1]), ("B2", vec![1, 2]), ("C2", vec![2])] {
            let p = pd(t, &cross);
            for m in harmonic_modules::<Rational>(&p).unwrap().iter().filter(|m| m.is_regular()) {
                assert!(matches!(build_canonical_model(&p, m, 1), Err(LieError::Unsupported(_))), "{t}");
            }
        }
        let p = pd("G2", &[1]);
        let m = harmonic_modules::<Rational>(&p).unwrap().into_iter().find(|m| m.is_regular()).unwrap();
        let (am, _) = build_canonical_model(&p, &m, 1).unwrap();
        assert_eq!(am.dim(), 7);
    }

    #[test]
    fn twistor_examples() {
        let g2: SimpleType = "G2".parse().unwrap();
        let d = twistor_descend(g2, &[1, 2], HasseWord2::new(2, 1)).unwrap();
        assert_eq!(d.nodes, vec![2]);
        assert_eq!(d.degree_p, 1);
        let a3: SimpleType = "A3".parse().unwrap();
        assert_eq!(twistor_descend(a3, &[1, 2, 3], HasseWord2::new(1, 3)).unwrap().nodes, vec![1, 3]);
        let a5: SimpleType = "A5".parse().unwrap();
        let d = twistor_descend(a5, &[1, 2], HasseWord2::new(2, 1)).unwrap();
        assert_eq!(d.nodes, vec![2]);
        assert!(d.degree_p > 0);
        assert!(matches!(
            twistor_descend(a3, &[1], HasseWord2::new(2, 1)),
            Err(LieError::NotHasseWord { .. })
        ));
    }

    #[test]
    fn twistor_preserves_prolongation_dimension() {
        for (t, cross) in [("A4", vec![1, 2]), ("B3", vec![1, 2, 3]), ("C3", vec![1, 2])] {
            let p = pd(t, &cross);
            for m in harmonic_modules::<Rational>(&p).unwrap().iter().filter(|m| m.is_regular()) {
                let r = twistor_check(&p, m).unwrap();
                assert_eq!(r.dim_q, r.dim_p, "{t} {}", m.word);
                assert_eq!(r.positive_dim_p, 0);
            }
        }
    }

    #[test]
    fn g2_sign_check() {
        let p = pd("G2", &[2]);
        let v = split_real_sign_check(&p, &g2_module(&p), WeightLatticeSpec::Adjoint).unwrap();
        assert!(v.equivalent);
        assert!(matches!(
            split_real_sign_check(&p, &g2_module(&p), WeightLatticeSpec::MatrixSl),
            Err(LieError::Unsupported(_))
        ));
    }

    #[test]
    fn ode_m2_sign_depends_on_group() {
        let p = pd("A3", &[1, 2]);
        let m: HarmonicModule<Rational> = harmonic_module(&p, HasseWord2::new(2, 1)).unwrap();
        let sl = split_real_sign_check(&p, &m, WeightLatticeSpec::MatrixSl).unwrap();
        assert!(!sl.equivalent);
        assert_eq!(sl.note, "not reachable by torus/Weyl witnesses");
        let pgl = split_real_sign_check(&p, &m, WeightLatticeSpec::MatrixPgl).unwrap();
        assert!(pgl.equivalent);
        assert!(is_sign_witness(p.algebra().simple_type(), WeightLatticeSpec::MatrixPgl, &m.mu_ints(), &[1, 1, 1, -1]).unwrap());
    }

    #[test]
    fn conformal_weyl_module_has_even_so_exponents() {
        for (t, l) in [("B", 3), ("B", 4), ("B", 5), ("D", 4), ("D", 5), ("D", 6)] {
            let p = pd(&format!("{t}{l}"), &[1]);
            let m: HarmonicModule<Rational> = harmonic_module(&p, HasseWord2::new(1, 2)).unwrap();
            let v = split_real_sign_check(&p, &m, WeightLatticeSpec::MatrixSoSplit).unwrap();
            assert!(v.exponents.iter().all(|e| e % 2 == 0), "{t}{l}: {:?}", v.exponents);
            assert!(!v.equivalent && v.witness.is_none(), "{t}{l}");
        }
    }

    #[test]
    fn character_sign_counts_odd_exponents() {
        assert_eq!(character_sign(&[2, -1, 3], &[-1, 1, 1]), 1);
        assert_eq!(character_sign(&[2, -1, 3], &[-1, -1, 1]), -1);
        assert_eq!(character_sign(&[2, -1, 3], &[1, -1, -1]), 1);
    }
}
