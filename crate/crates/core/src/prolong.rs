//! Annihilators, Tanaka prolongation and the upper bounds `𝔘_μ`, `𝔘`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::chevalley::AlgebraElement;
use crate::error::{LieError, Result};
use crate::homology::{Cochain, CochainComplex};
use crate::kostant::{harmonic_modules, HarmonicModule, HasseWord2};
use crate::linalg::{canonical_basis, KeyIndex, Matrix, SparseEchelon};
use crate::parabolic::ParabolicData;
use crate::scalar::Scalar;

/// Coordinates of `x` on the basis indices `coords`; other components are dropped.
fn restrict<S: Scalar>(x: &AlgebraElement<S>, coords: &[usize]) -> Vec<S> {
    coords.iter().map(|&b| x.coeff(b)).collect()
}

fn lift<S: Scalar>(pd: &ParabolicData, v: &[S], coords: &[usize]) -> AlgebraElement<S> {
    AlgebraElement::from_terms(
        pd.algebra().simple_type(),
        coords.iter().zip(v).map(|(&b, x)| (b, x.clone())),
    )
}

/// Canonical (reduced row echelon) basis of `span(elems)` inside the span of
/// the basis indices `coords`. Equal subspaces give equal results.
pub fn canonical_span<S: Scalar>(
    pd: &ParabolicData,
    elems: &[AlgebraElement<S>],
    coords: &[usize],
) -> Vec<AlgebraElement<S>> {
    let rows: Vec<Vec<S>> = elems.iter().map(|e| restrict(e, coords)).collect();
    canonical_basis(&rows, coords.len())
        .into_iter()
        .map(|r| lift(pd, &r, coords))
        .collect()
}

/// `𝔞𝔫𝔫(c) = { x ∈ 𝔤₀ : x · c = 0 }`, as a canonical basis.
pub fn annihilator<S: Scalar>(cx: &CochainComplex, c: &Cochain<S>) -> Result<Vec<AlgebraElement<S>>> {
    if c.is_zero() {
        return Err(LieError::ZeroCochain);
    }
    let pd = cx.parabolic();
    let g0 = pd.g0();
    let images: Vec<Cochain<S>> = g0.iter().map(|&g| cx.act_basis(g, c)).collect();
    let mut keys: KeyIndex<(u128, usize)> = KeyIndex::default();
    let mut entries: Vec<(usize, usize, S)> = Vec::new();
    for (col, img) in images.iter().enumerate() {
        for (m, b, x) in img.coords() {
            entries.push((keys.id(&(m, b)), col, x.clone()));
        }
    }
    let mut mat = Matrix::zeros(keys.len(), g0.len());
    for (r, col, x) in entries {
        mat[(r, col)] = x;
    }
    let null: Vec<AlgebraElement<S>> = mat.nullspace().iter().map(|v| lift(pd, v, g0)).collect();
    Ok(canonical_span(pd, &null, g0))
}

/// `ker μ ⊕ ⊕ 𝔤_γ` over roots `γ` of 𝔤₀ with `Z_{J_μ}(γ) <= 0`.
pub fn annihilator_closed_form<S: Scalar>(
    pd: &ParabolicData,
    m: &HarmonicModule<S>,
) -> Vec<AlgebraElement<S>> {
    let alg = pd.algebra();
    let rs = alg.root_system();
    let mut elems = ker_mu(pd, &m.mu_ints());
    for &b in pd.g0() {
        if alg.is_cartan(b) {
            continue;
        }
        let zj: i64 = m.j_mu.iter().map(|&i| rs.root(b)[i - 1]).sum();
        if zj <= 0 {
            elems.push(AlgebraElement::basis(alg.simple_type(), b));
        }
    }
    canonical_span(pd, &elems, pd.g0())
}

/// The annihilator of `φ₀`, computed directly and by the closed form; the two must agree.
pub fn checked_annihilator<S: Scalar>(
    cx: &CochainComplex,
    m: &HarmonicModule<S>,
) -> Result<Vec<AlgebraElement<S>>> {
    let direct = annihilator(cx, &m.phi0)?;
    let closed = annihilator_closed_form(cx.parabolic(), m);
    if direct != closed {
        return Err(LieError::Internal(format!(
            "annihilator mismatch for {} module {}: direct dim {}, closed form dim {}",
            cx.parabolic(),
            m.word,
            direct.len(),
            closed.len()
        )));
    }
    Ok(direct)
}

/// A basis of `ker μ ⊂ 𝔥`, with `μ(h_i) = <μ, α_i^∨>`.
pub fn ker_mu<S: Scalar>(pd: &ParabolicData, mu: &[i64]) -> Vec<AlgebraElement<S>> {
    let alg = pd.algebra();
    let rs = alg.root_system();
    let l = rs.rank();
    let row: Vec<S> = (1..=l).map(|i| S::from_int(rs.coroot_pairing_int(mu, i))).collect();
    let cartan: Vec<usize> = (1..=l).map(|i| alg.cartan_index(i)).collect();
    Matrix::from_rows(vec![row], l)
        .nullspace()
        .iter()
        .map(|v| lift(pd, v, &cartan))
        .collect()
}

/// A graded subalgebra of 𝔤, stored degreewise.
#[derive(Clone, Debug)]
pub struct GradedSubalgebra<S> {
    pieces: BTreeMap<i32, Vec<AlgebraElement<S>>>,
}

impl<S: Scalar> GradedSubalgebra<S> {
    pub fn piece(&self, k: i32) -> &[AlgebraElement<S>] {
        self.pieces.get(&k).map_or(&[], |v| v.as_slice())
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.pieces.iter().map(|(k, v)| (*k, v.len())).collect()
    }

    pub fn dim(&self) -> usize {
        self.pieces.values().map(Vec::len).sum()
    }

    pub fn positive_dim(&self) -> usize {
        self.pieces.range(1..).map(|(_, v)| v.len()).sum()
    }

    /// All basis elements, by increasing degree.
    pub fn basis(&self) -> Vec<AlgebraElement<S>> {
        self.pieces.values().flatten().cloned().collect()
    }

    /// Basis elements paired with their degree, by increasing degree.
    pub fn graded_basis(&self) -> Vec<(i32, AlgebraElement<S>)> {
        self.pieces
            .iter()
            .flat_map(|(k, v)| v.iter().map(move |x| (*k, x.clone())))
            .collect()
    }
}

fn echelon_of<S: Scalar>(elems: &[AlgebraElement<S>]) -> SparseEchelon<S> {
    let mut e = SparseEchelon::new();
    for x in elems {
        e.insert(x.terms().map(|(b, c)| (b, c.clone())));
    }
    e
}

/// Checks that `a0 ⊆ 𝔤₀` is closed under the bracket.
pub fn check_subalgebra_of_g0<S: Scalar>(pd: &ParabolicData, a0: &[AlgebraElement<S>]) -> Result<()> {
    let alg = pd.algebra();
    for x in a0 {
        if x.terms().any(|(b, _)| pd.basis_degree(b) != 0) {
            return Err(LieError::NotSubalgebra("element outside 𝔤₀".into()));
        }
    }
    let ech = echelon_of(a0);
    for (i, x) in a0.iter().enumerate() {
        for y in &a0[i + 1..] {
            let z = alg.bracket(x, y)?;
            if !ech.contains(z.terms().map(|(b, c)| (b, c.clone()))) {
                return Err(LieError::NotSubalgebra(format!("[{x}, {y}] = {z} leaves a0")));
            }
        }
    }
    Ok(())
}

/// `pr(𝔤₋, 𝔞₀)`: `𝔞_k = { X ∈ 𝔤_k : [X, 𝔤_{-1}] ⊆ 𝔞_{k-1} }` for `k > 0`.
pub fn tanaka_prolong<S: Scalar>(
    pd: &ParabolicData,
    a0: &[AlgebraElement<S>],
) -> Result<GradedSubalgebra<S>> {
    check_subalgebra_of_g0(pd, a0)?;
    let alg = pd.algebra();
    let ty = alg.simple_type();
    let mut pieces = BTreeMap::new();
    for k in 1..=pd.depth() {
        let basis = pd
            .graded_piece(-k)
            .iter()
            .map(|&b| AlgebraElement::basis(ty, b))
            .collect();
        pieces.insert(-k, basis);
    }
    pieces.insert(0, canonical_span(pd, a0, pd.g0()));
    let gm1 = pd.graded_piece(-1);
    for k in 1..=pd.depth() {
        let prev: &Vec<AlgebraElement<S>> = &pieces[&(k - 1)];
        let gk = pd.graded_piece(k);
        if prev.is_empty() {
            for j in k..=pd.depth() {
                pieces.insert(j, Vec::new());
            }
            break;
        }
        let prev_coords = pd.graded_piece(k - 1);
        let rows: Vec<Vec<S>> = prev.iter().map(|x| restrict(x, prev_coords)).collect();
        // functionals vanishing exactly on span(prev)
        let funcs = Matrix::from_rows(rows, prev_coords.len()).nullspace();
        let next = if funcs.is_empty() {
            gk.iter().map(|&b| AlgebraElement::basis(ty, b)).collect()
        } else {
            let mut mat_rows: Vec<Vec<S>> = Vec::new();
            let images: Vec<Vec<Vec<S>>> = gk
                .iter()
                .map(|&xk| {
                    gm1.iter()
                        .map(|&y| {
                            let z = alg.bracket_basis_left(xk, &AlgebraElement::basis(ty, y));
                            restrict(&z, prev_coords)
                        })
                        .collect()
                })
                .collect();
            for (bi, _) in gm1.iter().enumerate() {
                for f in &funcs {
                    let row: Vec<S> = images
                        .iter()
                        .map(|img| {
                            f.iter()
                                .zip(&img[bi])
                                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                                .fold(S::zero(), |s, (a, b)| s + a.clone() * b.clone())
                        })
                        .collect();
                    if row.iter().any(|x| !x.is_zero()) {
                        mat_rows.push(row);
                    }
                }
            }
            let sol = if mat_rows.is_empty() {
                gk.iter()
                    .map(|&b| AlgebraElement::basis(ty, b))
                    .collect::<Vec<_>>()
            } else {
                Matrix::from_rows(mat_rows, gk.len())
                    .nullspace()
                    .iter()
                    .map(|v| lift(pd, v, gk))
                    .collect()
            };
            canonical_span(pd, &sol, gk)
        };
        pieces.insert(k, next);
    }
    Ok(GradedSubalgebra { pieces })
}

/// Exhaustive check that `[𝔞_i, 𝔞_j] ⊆ 𝔞_{i+j}` on basis pairs.
pub fn verify_graded_closure<S: Scalar>(pd: &ParabolicData, a: &GradedSubalgebra<S>) -> Result<()> {
    let alg = pd.algebra();
    let echelons: BTreeMap<i32, SparseEchelon<S>> =
        a.pieces.iter().map(|(k, v)| (*k, echelon_of(v))).collect();
    let gb = a.graded_basis();
    for (i, (di, x)) in gb.iter().enumerate() {
        for (dj, y) in &gb[i + 1..] {
            let z = alg.bracket(x, y)?;
            if z.is_zero() {
                continue;
            }
            let ok = echelons
                .get(&(di + dj))
                .is_some_and(|e| e.contains(z.terms().map(|(b, c)| (b, c.clone()))));
            if !ok {
                return Err(LieError::NotSubalgebra(format!(
                    "bracket of degree {di} and {dj} elements leaves the prolongation"
                )));
            }
        }
    }
    Ok(())
}

/// The prolongation `𝔞^{φ₀}` of a harmonic module.
pub fn prolong_module<S: Scalar>(
    cx: &CochainComplex,
    m: &HarmonicModule<S>,
) -> Result<GradedSubalgebra<S>> {
    let a0 = annihilator(cx, &m.phi0)?;
    tanaka_prolong(cx.parabolic(), &a0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleBound {
    pub module: HasseWord2,
    pub degree: i64,
    pub regular: bool,
    pub a0_dim: usize,
    /// Degree → dimension of `𝔞_k`, for regular modules.
    pub prolongation_dims: BTreeMap<i32, usize>,
    #[serde(rename = "U_mu")]
    pub u_mu: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpperBounds {
    pub modules: Vec<ModuleBound>,
    /// `𝔘`; `None` when there is no regular module.
    #[serde(rename = "U")]
    pub overall: Option<usize>,
}

pub fn upper_bounds<S: Scalar>(pd: &ParabolicData) -> Result<UpperBounds> {
    let cx = CochainComplex::new(pd)?;
    let mods: Vec<HarmonicModule<S>> = harmonic_modules(pd)?;
    let mut out = Vec::new();
    for m in &mods {
        let a0 = checked_annihilator(&cx, m)?;
        let (dims, u) = if m.is_regular() {
            let a = tanaka_prolong(pd, &a0)?;
            (a.dims(), Some(a.dim()))
        } else {
            (BTreeMap::new(), None)
        };
        out.push(ModuleBound {
            module: m.word,
            degree: m.degree,
            regular: m.is_regular(),
            a0_dim: a0.len(),
            prolongation_dims: dims,
            u_mu: u,
        });
    }
    let overall = out.iter().filter_map(|b| b.u_mu).max();
    Ok(UpperBounds {
        modules: out,
        overall,
    })
}

/// An integral `H₀ ∈ ker μ` with `(α + β)(H₀) ≠ 0` for all `α ∈ Δ⁺` and
/// `β ∈ Δ⁺ ∪ {0}`. Returned as coefficients on `h_1..h_l`.
///
/// Points are taken along the moment curve `H(t) = sum_i t^i b_i` over an
/// integral basis `b_i` of `ker μ`; each constraint is a polynomial in `t`
/// that is either identically zero or has fewer roots than `dim ker μ`.
pub fn mu2_witness(pd: &ParabolicData, mu: &[i64]) -> Result<Vec<BigInt>> {
    use crate::Rational;
    let rs = pd.algebra().root_system();
    let l = rs.rank();
    let basis: Vec<Vec<BigInt>> = ker_mu::<Rational>(pd, mu)
        .iter()
        .map(|h| {
            let v: Vec<Rational> = (1..=l).map(|i| h.coeff(pd.algebra().cartan_index(i))).collect();
            let den = v
                .iter()
                .fold(BigInt::one(), |d, x| num_integer::Integer::lcm(&d, x.denom()));
            v.iter()
                .map(|x| (x * Rational::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    // functionals f = α + β evaluated on h_i: <f, α_i^∨>
    let np = rs.num_positive();
    let mut funcs: Vec<Vec<i64>> = Vec::new();
    for a in 0..np {
        let fa: Vec<i64> = (1..=l).map(|i| rs.coroot_pairing_int(rs.root(a), i)).collect();
        funcs.push(fa.clone());
        for b in a..np {
            funcs.push(
                fa.iter()
                    .zip((1..=l).map(|i| rs.coroot_pairing_int(rs.root(b), i)))
                    .map(|(x, y)| x + y)
                    .collect(),
            );
        }
    }
    funcs.sort();
    funcs.dedup();
    let on_basis: Vec<Vec<BigInt>> = funcs
        .iter()
        .map(|f| {
            basis
                .iter()
                .map(|b| b.iter().zip(f).map(|(x, y)| x * BigInt::from(*y)).sum())
                .collect()
        })
        .collect();
    if let Some(i) = on_basis.iter().position(|v| v.iter().all(Zero::is_zero)) {
        return Err(LieError::Internal(format!(
            "functional {:?} vanishes on ker μ: no MU2 witness",
            funcs[i]
        )));
    }
    let bound = funcs.len() * basis.len() + 1;
    for t in 1..=bound as i64 {
        let powers: Vec<BigInt> = (0..basis.len() as u32).map(|e| BigInt::from(t).pow(e)).collect();
        let ok = on_basis.iter().all(|v| {
            let s: BigInt = v.iter().zip(&powers).map(|(a, p)| a * p).sum();
            !s.is_zero()
        });
        if ok {
            let mut h = vec![BigInt::zero(); l];
            for (b, p) in basis.iter().zip(&powers) {
                for (hi, bi) in h.iter_mut().zip(b) {
                    *hi += bi * p;
                }
            }
            let g = h.iter().fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x));
            if !g.is_zero() && !g.is_one() {
                for x in h.iter_mut() {
                    *x /= &g;
                }
            }
            return Ok(h);
        }
    }
    Err(LieError::Internal("MU2 search bound exhausted".into()))
}

/// Independent check of an MU2 witness.
pub fn mu2_holds(pd: &ParabolicData, mu: &[i64], h: &[BigInt]) -> bool {
    let rs = pd.algebra().root_system();
    let l = rs.rank();
    let eval = |coords: &[i64]| -> BigInt {
        (1..=l)
            .map(|i| &h[i - 1] * BigInt::from(rs.coroot_pairing_int(coords, i)))
            .sum()
    };
    if !eval(mu).is_zero() {
        return false;
    }
    let np = rs.num_positive();
    let vals: Vec<BigInt> = (0..np).map(|a| eval(rs.root(a))).collect();
    vals.iter().all(|v| !v.is_zero())
        && (0..np).all(|a| (a..np).all(|b| !(&vals[a] + &vals[b]).is_zero()))
}

/// Small helper for reports: `|x|` of a big integer as `u64` when it fits.
pub fn witness_height(h: &[BigInt]) -> Option<u64> {
    h.iter().map(|x| x.abs().to_u64()).max().flatten()
}
