//! Kostant's description of `H²(𝔤₋, 𝔤)` for the adjoint representation.
//!
//! Each length-2 element `w = (jk) = σ_j ∘ σ_k` of `W^𝔭` contributes one
//! irreducible 𝔤₀-module with lowest weight `μ = -w•λ`, where `λ` is the
//! highest root. Its lowest weight vector is the harmonic cochain
//! `φ₀ = ω_{-α_j} ∧ ω_{-σ_j(α_k)} ⊗ e_{w(-λ)}`, the covectors being Killing
//! duals of `e_{α_j}` and `e_{σ_j(α_k)}`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{LieError, Result};
use crate::homology::{Cochain, CochainComplex};
use crate::parabolic::ParabolicData;
use crate::rootsystem::{RootSystem, Weight};
use crate::scalar::Scalar;
use crate::chevalley::AlgebraElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HasseWord2 {
    pub j: usize,
    pub k: usize,
}

impl HasseWord2 {
    pub fn new(j: usize, k: usize) -> Self {
        Self { j, k }
    }

    /// The word as a list of reflections, leftmost applied last.
    pub fn word(&self) -> [usize; 2] {
        [self.j, self.k]
    }
}

impl fmt::Display for HasseWord2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}{})", self.j, self.k)
    }
}

pub fn is_hasse_word(pd: &ParabolicData, w: HasseWord2) -> bool {
    let rs = pd.algebra().root_system();
    let n = rs.rank();
    let (j, k) = (w.j, w.k);
    (1..=n).contains(&j)
        && (1..=n).contains(&k)
        && j != k
        && pd.is_crossed(j)
        && (pd.is_crossed(k) || rs.c(j, k) < 0)
}

/// All of `W^𝔭(2)`, ordered by `(j, k)`.
///
/// When `σ_j` and `σ_k` commute, `(jk)` and `(kj)` are the same element;
/// only the word with `j < k` is listed.
pub fn hasse_words(pd: &ParabolicData) -> Vec<HasseWord2> {
    let rs = pd.algebra().root_system();
    let n = rs.rank();
    let mut out = Vec::new();
    for j in 1..=n {
        for k in 1..=n {
            let w = HasseWord2::new(j, k);
            let duplicate = j > k && rs.c(j, k) == 0 && pd.is_crossed(k);
            if is_hasse_word(pd, w) && !duplicate {
                out.push(w);
            }
        }
    }
    out
}

/// `μ = -λ + (r_j+1) α_j + (r_k+1)(α_k - c_{kj} α_j)`, `λ = sum r_i λ_i`.
pub fn mu_closed_form(rs: &RootSystem, w: HasseWord2) -> Vec<i64> {
    let lam = rs.root(rs.highest_root_index());
    let r: Vec<i64> = (1..=rs.rank()).map(|i| rs.coroot_pairing_int(lam, i)).collect();
    let (j, k) = (w.j, w.k);
    let mut mu: Vec<i64> = lam.iter().map(|x| -x).collect();
    mu[j - 1] += r[j - 1] + 1;
    mu[k - 1] += r[k - 1] + 1;
    mu[j - 1] -= (r[k - 1] + 1) * rs.c(k, j);
    mu
}

/// `μ = -w•λ` through the affine action.
pub fn mu_affine<S: Scalar>(rs: &RootSystem, w: HasseWord2) -> Result<Weight<S>> {
    let lam = rs.highest_root::<S>();
    Ok(-&rs.affine_action(&w.word(), &lam)?)
}

#[derive(Clone, Debug)]
pub struct HarmonicModule<S> {
    pub word: HasseWord2,
    pub mu: Weight<S>,
    pub mu_fw: Vec<S>,
    /// `Z(μ)`; the module is regular iff this is positive.
    pub degree: i64,
    pub j_mu: Vec<usize>,
    pub dim: u64,
    pub phi0: Cochain<S>,
}

impl<S: Scalar> HarmonicModule<S> {
    pub fn is_regular(&self) -> bool {
        self.degree > 0
    }

    /// Integer simple-root coordinates of `μ`.
    pub fn mu_ints(&self) -> Vec<i64> {
        self.mu.to_ints().expect("μ is integral")
    }
}

pub fn harmonic_module<S: Scalar>(pd: &ParabolicData, w: HasseWord2) -> Result<HarmonicModule<S>> {
    if !is_hasse_word(pd, w) {
        return Err(LieError::NotHasseWord { j: w.j, k: w.k });
    }
    let rs = pd.algebra().root_system();
    let closed = mu_closed_form(rs, w);
    let mu: Weight<S> = mu_affine(rs, w)?;
    if mu.to_ints().as_deref() != Some(closed.as_slice()) {
        return Err(LieError::Internal(format!(
            "μ for {w}: closed form {closed:?} disagrees with -w•λ = {:?}",
            mu.coeffs_simple()
        )));
    }
    let mu_fw = rs.to_fundamental(&mu);
    let degree = pd.weight_degree(&closed);
    let j_mu = (1..=rs.rank())
        .filter(|&i| !pd.is_crossed(i) && rs.coroot_pairing_int(&closed, i) != 0)
        .collect();
    let dim = module_dim(pd, &closed)?;
    let phi0 = phi0_lowest_weight_vector(pd, w)?;
    let cx = CochainComplex::new(pd)?;
    if cx.weight(&phi0).as_deref() != Some(closed.as_slice()) {
        return Err(LieError::Internal(format!("weight of φ₀ for {w} is not μ")));
    }
    Ok(HarmonicModule {
        word: w,
        mu,
        mu_fw,
        degree,
        j_mu,
        dim,
        phi0,
    })
}

/// Every module of `H²(𝔤₋, 𝔤)`, in Hasse-word order.
pub fn harmonic_modules<S: Scalar>(pd: &ParabolicData) -> Result<Vec<HarmonicModule<S>>> {
    hasse_words(pd).into_iter().map(|w| harmonic_module(pd, w)).collect()
}

/// Weyl dimension formula for the 𝔤₀-module with lowest weight `μ`, i.e.
/// highest weight `-μ` for the semisimple part of 𝔤₀.
pub fn module_dim(pd: &ParabolicData, mu: &[i64]) -> Result<u64> {
    let rs = pd.algebra().root_system();
    let neg: Weight<BigRational> = Weight::from_ints(&mu.iter().map(|x| -x).collect::<Vec<_>>());
    for i in (1..=rs.rank()).filter(|&i| !pd.is_crossed(i)) {
        if rs.coroot_pairing(&neg, i) < BigRational::zero() {
            return Err(LieError::Internal(format!(
                "-μ = {:?} is not 𝔤₀-dominant at node {i}",
                neg.coeffs_simple()
            )));
        }
    }
    let rho = rs.rho::<BigRational>();
    let shifted = &neg + &rho;
    let mut d = BigRational::from_int(1);
    for r in 0..rs.num_positive() {
        if pd.basis_degree(r) != 0 {
            continue;
        }
        let a: Weight<BigRational> = Weight::from_ints(rs.root(r));
        d = d * rs.inner(&shifted, &a) / rs.inner(&rho, &a);
    }
    if !d.is_integer() {
        return Err(LieError::Internal(format!("non-integral module dimension {d}")));
    }
    d.to_integer()
        .to_u64()
        .ok_or_else(|| LieError::Internal("module dimension overflow".into()))
}

/// `φ₀ = ω_{-α_j} ∧ ω_{-σ_j(α_k)} ⊗ e_{w(-λ)}`.
pub fn phi0_lowest_weight_vector<S: Scalar>(pd: &ParabolicData, w: HasseWord2) -> Result<Cochain<S>> {
    let alg = pd.algebra();
    let rs = alg.root_system();
    let n = rs.rank();
    let mut aj = vec![0i64; n];
    aj[w.j - 1] = -1;
    let ak = Weight::<S>::simple_root(n, w.k);
    let sak = rs
        .simple_reflection(w.j, &ak)?
        .to_ints()
        .expect("integral");
    let sak_neg: Vec<i64> = sak.iter().map(|x| -x).collect();
    let pos = |coords: &[i64]| -> Result<usize> {
        let b = alg.root_vector_index(coords)?;
        pd.minus_position(b)
            .ok_or_else(|| LieError::Internal(format!("{coords:?} is not in 𝔤₋")))
    };
    let p1 = pos(&aj)?;
    let p2 = pos(&sak_neg)?;
    let lam = rs.highest_root::<S>();
    let target = rs
        .weyl_action(&w.word(), &-&lam)?
        .to_ints()
        .expect("integral");
    let b = alg
        .root_vector_index(&target)
        .map_err(|_| LieError::NotRootVectorForm)?;
    Ok(Cochain::from_wedge(&[p1, p2], &AlgebraElement::basis(alg.simple_type(), b)))
}

/// Sign pattern of the simple-root coordinates `m_i` of `μ` for rank >= 3:
/// `m_i < 0` off `{j, k}`, and `m_j > 0` or `m_k > 0` when `Z(μ) > 0`.
pub fn mu1_sign_pattern<S: Scalar>(m: &HarmonicModule<S>) -> bool {
    let mu = m.mu_ints();
    let (j, k) = (m.word.j, m.word.k);
    let off = mu
        .iter()
        .enumerate()
        .all(|(i, &x)| i + 1 == j || i + 1 == k || x < 0);
    let on = m.degree <= 0 || mu[j - 1] > 0 || mu[k - 1] > 0;
    off && on
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::ChevalleyAlgebra;
    use crate::homology::DEFAULT_ORACLE_CAP;
    use crate::homology::OracleOutcome;
    use crate::Rational;
    use std::sync::Arc;

    fn pd(t: &str, cross: &[usize]) -> ParabolicData {
        let alg = Arc::new(ChevalleyAlgebra::of_type(t.parse().unwrap()).unwrap());
        ParabolicData::new(alg, cross).unwrap()
    }

    fn ints(v: &[Rational]) -> Vec<i64> {
        v.iter().map(|x| x.to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn g2_p2_module() {
        let p = pd("G2", &[2]);
        assert_eq!(hasse_words(&p), vec![HasseWord2::new(2, 1)]);
        let m: HarmonicModule<Rational> = harmonic_module(&p, HasseWord2::new(2, 1)).unwrap();
        assert_eq!(ints(&m.mu_fw), vec![-7, 4]);
        assert_eq!(m.mu_ints(), vec![-2, 1]);
        assert_eq!(m.degree, 1);
        assert!(m.is_regular());
        // φ₀ = e_{α2} ∧ e_{α1+α2} ⊗ e_{-3α1-α2}
        let alg = p.algebra();
        let a = p.minus_position(alg.root_vector_index(&[0, -1]).unwrap()).unwrap();
        let b = p.minus_position(alg.root_vector_index(&[-1, -1]).unwrap()).unwrap();
        let v = m.phi0.value(&[a.min(b), a.max(b)]);
        let e = alg.root_vector_index(&[-3, -1]).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(m.phi0.num_coords(), 1);
        let sign = if a < b { 1 } else { -1 };
        assert_eq!(v.coeff(e), Rational::from_int(sign));
    }

    #[test]
    fn e8_p8_module() {
        let p = pd("E8", &[8]);
        let m: HarmonicModule<Rational> = harmonic_module(&p, HasseWord2::new(8, 7)).unwrap();
        assert_eq!(ints(&m.mu_fw), vec![0, 0, 0, 0, 0, -1, -1, 4]);
        assert_eq!(m.j_mu, vec![6, 7]);
        assert_eq!(m.degree, 1);
    }

    #[test]
    fn ode_modules() {
        for mm in 2..=4 {
            let t = format!("A{}", mm + 1);
            let p = pd(&t, &[1, 2]);
            let ws = hasse_words(&p);
            assert!(ws.contains(&HasseWord2::new(2, 1)) && ws.contains(&HasseWord2::new(1, 2)));
            let m1: HarmonicModule<Rational> = harmonic_module(&p, HasseWord2::new(2, 1)).unwrap();
            let m2: HarmonicModule<Rational> = harmonic_module(&p, HasseWord2::new(1, 2)).unwrap();
            let mut want1 = vec![0i64; mm + 1];
            want1[1] = 4;
            want1[2] -= 3;
            want1[mm] -= 1;
            let mut want2 = vec![0i64; mm + 1];
            want2[0] = 4;
            want2[1] = -1;
            want2[2] -= 1;
            want2[mm] -= 1;
            assert_eq!(ints(&m1.mu_fw), want1, "{t}");
            assert_eq!(ints(&m2.mu_fw), want2, "{t}");
            assert_eq!((m1.degree, m2.degree), (3, 2));
        }
    }

    #[test]
    fn rank_one_has_no_words() {
        assert!(hasse_words(&pd("A1", &[1])).is_empty());
    }

    #[test]
    fn rejects_non_hasse_words() {
        let p = pd("A3", &[1]);
        assert!(matches!(
            harmonic_module::<Rational>(&p, HasseWord2::new(1, 3)),
            Err(LieError::NotHasseWord { .. })
        ));
    }

    #[test]
    fn phi0_is_harmonic() {
        for (t, cross) in [("G2", vec![2]), ("A3", vec![1]), ("B3", vec![1, 2]), ("F4", vec![4])] {
            let p = pd(t, &cross);
            let cx = CochainComplex::new(&p).unwrap();
            for m in harmonic_modules::<Rational>(&p).unwrap() {
                assert!(cx.del(&m.phi0).unwrap().is_zero(), "{t} {}", m.word);
                assert!(cx.delstar(&m.phi0).unwrap().is_zero(), "{t} {}", m.word);
                assert!(cx.laplacian(&m.phi0).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn module_dims_sum_to_harmonic_dimension() {
        for (t, cross) in [
            ("G2", vec![2]),
            ("A3", vec![1]),
            ("G2", vec![1]),
            ("B2", vec![1, 2]),
            ("A3", vec![1, 3]),
            ("B3", vec![1, 3]),
        ] {
            let p = pd(t, &cross);
            let total: u64 = harmonic_modules::<Rational>(&p).unwrap().iter().map(|m| m.dim).sum();
            let cx = CochainComplex::new(&p).unwrap();
            let OracleOutcome::Computed(h) = cx.hodge_oracle(DEFAULT_ORACLE_CAP).unwrap() else {
                panic!()
            };
            assert_eq!(h.ker_box as u64, total, "{t} {cross:?}");
        }
    }

    #[test]
    fn trivial_semisimple_part_gives_dimension_one() {
        // Borel: 𝔤₀ = 𝔥
        let p = pd("A3", &[1, 2, 3]);
        for m in harmonic_modules::<Rational>(&p).unwrap() {
            assert_eq!(m.dim, 1);
        }
    }
}
