//! Chevalley bases.
//!
//! The basis of 𝔤 is indexed densely: indices `0..2N` are the root vectors
//! `e_r` in the order of [`RootSystem::roots`] (positive roots first), and
//! `2N..2N+l` are the Cartan generators `h_1..h_l` (the simple coroots).
//!
//! Structure constants `N_{r,s}` are fixed by Carter's algorithm: for each
//! positive root the extraspecial pair gets the sign `+`, and everything else
//! follows from the Jacobi identity. The result is verified on all basis
//! triples before an algebra is handed out.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{LieError, Result};
use crate::rootsystem::{RootSystem, SimpleType, Weight};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    /// `h_i`, 1-based node index.
    Cartan(usize),
    /// `e_r`, global root index.
    RootVector(usize),
}

/// A sparse element of 𝔤. Terms are keyed by dense basis index and never
/// store zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement<S> {
    ty: SimpleType,
    terms: BTreeMap<usize, S>,
}

impl<S: Scalar> AlgebraElement<S> {
    pub fn zero(ty: SimpleType) -> Self {
        Self {
            ty,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(ty: SimpleType, index: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(index, S::one());
        Self { ty, terms }
    }

    pub fn from_terms(ty: SimpleType, terms: impl IntoIterator<Item = (usize, S)>) -> Self {
        let mut e = Self::zero(ty);
        for (i, c) in terms {
            e.add_term(i, c);
        }
        e
    }

    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &S)> {
        self.terms.iter().map(|(i, c)| (*i, c))
    }

    pub fn coeff(&self, index: usize) -> S {
        self.terms.get(&index).cloned().unwrap_or_else(S::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, index: usize, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(index) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = o.get().clone() + c;
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        if c.is_zero() {
            return;
        }
        for (i, x) in &other.terms {
            self.add_term(*i, x.clone() * c.clone());
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.ty);
        }
        Self {
            ty: self.ty,
            terms: self
                .terms
                .iter()
                .map(|(i, x)| (*i, x.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &S::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &-S::one());
        out
    }

    /// Dense coordinate vector of length `dim`.
    pub fn to_dense(&self, dim: usize) -> Vec<S> {
        let mut v = vec![S::zero(); dim];
        for (i, c) in &self.terms {
            v[*i] = c.clone();
        }
        v
    }

    pub fn from_dense(ty: SimpleType, v: &[S]) -> Self {
        Self::from_terms(ty, v.iter().cloned().enumerate())
    }
}

impl<S: Scalar> fmt::Display for AlgebraElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(i, c)| format!("{c}*b{i}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Integer sparse vector: basis index and coefficient.
pub type IntTerms = Vec<(usize, i64)>;

#[derive(Debug)]
pub struct ChevalleyAlgebra {
    rs: RootSystem,
    dim: usize,
    n_roots: usize,
    // N_{r,s} for all root pairs; zero when r+s is not a root.
    n: Vec<i64>,
    // bracket of basis elements, dim x dim
    table: Vec<IntTerms>,
    // B(e_r, e_{-r}) per root r
    killing_root: Vec<i64>,
    // B(h_i, h_j)
    killing_h: Vec<Vec<i64>>,
}

impl ChevalleyAlgebra {
    /// Builds the algebra and verifies the Jacobi identity on all basis triples.
    pub fn new(rs: RootSystem) -> Result<Self> {
        let alg = Self::build_unchecked(rs)?;
        alg.verify_jacobi()?;
        Ok(alg)
    }

    pub fn of_type(t: SimpleType) -> Result<Self> {
        Self::new(RootSystem::new(t))
    }

    fn build_unchecked(rs: RootSystem) -> Result<Self> {
        let n = structure_constants(&rs)?;
        let n_roots = rs.num_roots();
        let l = rs.rank();
        let dim = n_roots + l;
        let mut table = vec![Vec::new(); dim * dim];
        let coroots: Vec<Vec<i64>> = (0..n_roots).map(|r| rs.coroot_coords(r)).collect();
        for r in 0..n_roots {
            for s in 0..n_roots {
                let entry = &mut table[r * dim + s];
                let sum: Vec<i64> = rs.root(r).iter().zip(rs.root(s)).map(|(a, b)| a + b).collect();
                if sum.iter().all(|&x| x == 0) {
                    *entry = coroots[r]
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(k, &c)| (n_roots + k, c))
                        .collect();
                } else if let Some(t) = rs.root_index(&sum) {
                    entry.push((t, n[r * n_roots + s]));
                }
            }
            for i in 0..l {
                let a = rs.coroot_pairing_int(rs.root(r), i + 1);
                if a != 0 {
                    table[(n_roots + i) * dim + r] = vec![(r, a)];
                    table[r * dim + n_roots + i] = vec![(r, -a)];
                }
            }
        }
        let mut alg = ChevalleyAlgebra {
            rs,
            dim,
            n_roots,
            n,
            table,
            killing_root: Vec::new(),
            killing_h: Vec::new(),
        };
        alg.killing_root = (0..n_roots)
            .map(|r| alg.trace_form(r, alg.neg_index(r)))
            .collect::<Result<_>>()?;
        alg.killing_h = (0..l)
            .map(|i| {
                (0..l)
                    .map(|j| alg.trace_form(n_roots + i, n_roots + j))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(alg)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn simple_type(&self) -> SimpleType {
        self.rs.simple_type()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn num_roots(&self) -> usize {
        self.n_roots
    }

    pub fn is_cartan(&self, index: usize) -> bool {
        index >= self.n_roots
    }

    /// Basis index of `h_i` (1-based node).
    pub fn cartan_index(&self, node: usize) -> usize {
        self.n_roots + node - 1
    }

    /// Basis index of `e_r` for a root given by simple-root coordinates.
    pub fn root_vector_index(&self, coords: &[i64]) -> Result<usize> {
        self.rs
            .root_index(coords)
            .ok_or_else(|| LieError::NotARoot(format!("{coords:?}")))
    }

    pub fn basis_element(&self, index: usize) -> BasisElement {
        if index < self.n_roots {
            BasisElement::RootVector(index)
        } else {
            BasisElement::Cartan(index - self.n_roots + 1)
        }
    }

    /// Basis index of the root vector of weight `-r`, for a root index `r`.
    pub fn neg_index(&self, r: usize) -> usize {
        self.rs.negate(r)
    }

    /// 𝔥-weight of a basis element, as integer simple-root coordinates.
    pub fn basis_weight(&self, index: usize) -> Vec<i64> {
        if index < self.n_roots {
            self.rs.root(index).to_vec()
        } else {
            vec![0; self.rank()]
        }
    }

    /// `N_{r,s}` for root indices; zero if `r + s` is not a root.
    pub fn structure_constant(&self, r: usize, s: usize) -> i64 {
        self.n[r * self.n_roots + s]
    }

    /// Bracket of two basis elements as integer terms.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.table[a * self.dim + b]
    }

    pub fn element<S: Scalar>(&self, b: BasisElement) -> AlgebraElement<S> {
        let idx = match b {
            BasisElement::Cartan(i) => self.n_roots + i - 1,
            BasisElement::RootVector(r) => r,
        };
        AlgebraElement::basis(self.simple_type(), idx)
    }

    pub fn root_vector<S: Scalar>(&self, coords: &[i64]) -> Result<AlgebraElement<S>> {
        Ok(AlgebraElement::basis(self.simple_type(), self.root_vector_index(coords)?))
    }

    fn check_operand<S: Scalar>(&self, x: &AlgebraElement<S>) -> Result<()> {
        if x.ty != self.simple_type() {
            return Err(LieError::MixedAlgebra(
                x.ty.to_string(),
                self.simple_type().to_string(),
            ));
        }
        Ok(())
    }

    pub fn bracket<S: Scalar>(
        &self,
        x: &AlgebraElement<S>,
        y: &AlgebraElement<S>,
    ) -> Result<AlgebraElement<S>> {
        self.check_operand(x)?;
        self.check_operand(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked<S: Scalar>(
        &self,
        x: &AlgebraElement<S>,
        y: &AlgebraElement<S>,
    ) -> AlgebraElement<S> {
        let mut out = AlgebraElement::zero(self.simple_type());
        for (a, xa) in &x.terms {
            for (b, yb) in &y.terms {
                let prod = xa.clone() * yb.clone();
                for &(c, n) in self.bracket_basis(*a, *b) {
                    out.add_term(c, prod.clone() * S::from_int(n));
                }
            }
        }
        out
    }

    /// `[e_a, y]` for a basis element `a`.
    pub(crate) fn bracket_basis_left<S: Scalar>(
        &self,
        a: usize,
        y: &AlgebraElement<S>,
    ) -> AlgebraElement<S> {
        let mut out = AlgebraElement::zero(self.simple_type());
        for (b, yb) in &y.terms {
            for &(c, n) in self.bracket_basis(a, *b) {
                out.add_term(c, yb.clone() * S::from_int(n));
            }
        }
        out
    }

    /// Killing form on basis elements.
    pub fn killing_basis(&self, a: usize, b: usize) -> i64 {
        let r = self.n_roots;
        match (a < r, b < r) {
            (true, true) if self.rs.negate(a) == b => self.killing_root[a],
            (false, false) => self.killing_h[a - r][b - r],
            _ => 0,
        }
    }

    pub fn killing_pairing<S: Scalar>(
        &self,
        x: &AlgebraElement<S>,
        y: &AlgebraElement<S>,
    ) -> Result<S> {
        self.check_operand(x)?;
        self.check_operand(y)?;
        let mut s = S::zero();
        for (a, xa) in &x.terms {
            if *a < self.n_roots {
                let b = self.rs.negate(*a);
                if let Some(yb) = y.terms.get(&b) {
                    s = s + xa.clone() * yb.clone() * S::from_int(self.killing_root[*a]);
                }
            } else {
                for (b, yb) in y.terms.range(self.n_roots..) {
                    let k = self.killing_h[a - self.n_roots][b - self.n_roots];
                    if k != 0 {
                        s = s + xa.clone() * yb.clone() * S::from_int(k);
                    }
                }
            }
        }
        Ok(s)
    }

    /// `B(e_r, e_{-r})` for a root index `r`.
    pub fn killing_root(&self, r: usize) -> i64 {
        self.killing_root[r]
    }

    /// The Killing dual `(e_α)* = e_{-α} / B(e_{-α}, e_α)`, which pairs to
    /// exactly 1 against `e_α` and to 0 against every other basis element.
    pub fn dual_root_vector<S: Scalar>(&self, alpha: &Weight<S>) -> Result<AlgebraElement<S>> {
        let coords = alpha
            .to_ints()
            .ok_or_else(|| LieError::NotARoot(format!("{:?}", alpha.coeffs_simple())))?;
        let r = self.root_vector_index(&coords)?;
        let nr = self.rs.negate(r);
        Ok(AlgebraElement::basis(self.simple_type(), nr)
            .scale(&S::from_ratio(1, self.killing_root[nr])))
    }

    /// `tr(ad a ad b)` for basis elements.
    pub fn trace_form(&self, a: usize, b: usize) -> Result<i64> {
        let mut tr: i64 = 0;
        for c in 0..self.dim {
            for &(d, x) in self.bracket_basis(b, c) {
                for &(e, y) in self.bracket_basis(a, d) {
                    if e == c {
                        tr = x
                            .checked_mul(y)
                            .and_then(|p| tr.checked_add(p))
                            .ok_or_else(|| LieError::Construction("overflow in trace form".into()))?;
                    }
                }
            }
        }
        Ok(tr)
    }

    /// Checks `[a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0` on all basis triples.
    pub fn verify_jacobi(&self) -> Result<()> {
        use rayon::prelude::*;
        let dim = self.dim;
        (0..dim).into_par_iter().try_for_each(|a| {
            let mut acc = vec![0i64; dim];
            let mut touched: Vec<usize> = Vec::new();
            for b in a + 1..dim {
                for c in b + 1..dim {
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        for &(d, p) in self.bracket_basis(y, z) {
                            for &(e, q) in self.bracket_basis(x, d) {
                                let v = p
                                    .checked_mul(q)
                                    .and_then(|m| acc[e].checked_add(m))
                                    .ok_or_else(|| {
                                        LieError::Construction("overflow in Jacobi check".into())
                                    })?;
                                acc[e] = v;
                                touched.push(e);
                            }
                        }
                    }
                    for &e in &touched {
                        if acc[e] != 0 {
                            return Err(LieError::Construction(format!(
                                "Jacobi identity fails on basis triple ({a}, {b}, {c}) in {}",
                                self.simple_type()
                            )));
                        }
                    }
                    touched.clear();
                }
            }
            Ok(())
        })
    }
}

/// Carter's algorithm. Returns the dense `N_{r,s}` table over all root pairs.
fn structure_constants(rs: &RootSystem) -> Result<Vec<i64>> {
    let nr = rs.num_roots();
    let np = rs.num_positive();
    let norms: Vec<BigRational> = (0..nr).map(|r| rs.root_norm(r)).collect();
    let mut table: Vec<Option<i64>> = vec![None; nr * nr];
    let sum_index = |r: usize, s: usize| -> Option<usize> {
        let v: Vec<i64> = rs.root(r).iter().zip(rs.root(s)).map(|(a, b)| a + b).collect();
        rs.root_index(&v)
    };
    let diff_index = |r: usize, s: usize| -> Option<usize> {
        let v: Vec<i64> = rs.root(r).iter().zip(rs.root(s)).map(|(a, b)| a - b).collect();
        rs.root_index(&v)
    };

    // N_{r,s} for arbitrary signs, given all positive pairs of smaller height.
    fn get(
        rs: &RootSystem,
        table: &[Option<i64>],
        norms: &[BigRational],
        r: usize,
        s: usize,
    ) -> BigRational {
        let nr = rs.num_roots();
        let (rp, sp) = (rs.is_positive(r), rs.is_positive(s));
        match (rp, sp) {
            (true, true) => BigRational::from_int(
                table[r * nr + s].expect("positive pair computed before use"),
            ),
            (false, false) => -get(rs, table, norms, rs.negate(r), rs.negate(s)),
            (false, true) => -get(rs, table, norms, rs.negate(r), rs.negate(s)),
            (true, false) => {
                let x = r;
                let y = rs.negate(s);
                let d: Vec<i64> = rs.root(x).iter().zip(rs.root(y)).map(|(a, b)| a - b).collect();
                let di = rs.root_index(&d).expect("x - y is a root");
                if rs.is_positive(di) {
                    // x - y = z > 0: N_{x,-y} = -(z,z)/(x,x) N_{y,z}
                    let z = di;
                    -norms[z].clone() / norms[x].clone() * get(rs, table, norms, y, z)
                } else {
                    // y - x = w > 0: N_{x,-y} = (w,w)/(y,y) N_{w,x}
                    let w = rs.negate(di);
                    norms[w].clone() / norms[y].clone() * get(rs, table, norms, w, x)
                }
            }
        }
    }

    let to_int = |q: BigRational, what: &str| -> Result<i64> {
        if !q.is_integer() {
            return Err(LieError::Construction(format!("non-integral structure constant {q} ({what})")));
        }
        q.to_integer()
            .to_i64()
            .ok_or_else(|| LieError::Construction("structure constant overflow".into()))
    };

    for xi in 0..np {
        if rs.height(xi) < 2 {
            continue;
        }
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for a in 0..xi {
            if let Some(b) = diff_index(xi, a) {
                if rs.is_positive(b) && a < b {
                    pairs.push((a, b));
                }
            }
        }
        // roots of smaller height come first, so the first pair has the
        // smallest first entry; for height >= 2 that entry is simple
        let (a0, b0) = pairs[0];
        let mut p = 0;
        let mut cur = b0;
        while let Some(next) = diff_index(cur, a0) {
            p += 1;
            cur = next;
        }
        table[a0 * nr + b0] = Some(p + 1);
        table[b0 * nr + a0] = Some(-(p + 1));
        let n0 = BigRational::from_int(p + 1);
        for &(a, b) in &pairs[1..] {
            let mut acc = BigRational::zero();
            let na0 = rs.negate(a0);
            if let Some(d) = diff_index(b, a0) {
                let t = get(rs, &table, &norms, b, na0)
                    * get(rs, &table, &norms, a, rs.negate(b0));
                acc += t / norms[d].clone();
            }
            if let Some(d) = diff_index(a, a0) {
                let t = get(rs, &table, &norms, na0, a)
                    * get(rs, &table, &norms, b, rs.negate(b0));
                acc += t / norms[d].clone();
            }
            let v = to_int(norms[xi].clone() / n0.clone() * acc, "special pair")?;
            table[a * nr + b] = Some(v);
            table[b * nr + a] = Some(-v);
        }
    }

    let mut out = vec![0i64; nr * nr];
    for r in 0..nr {
        for s in 0..nr {
            if sum_index(r, s).is_some() {
                out[r * nr + s] = to_int(get(rs, &table, &norms, r, s), "mixed pair")?;
            }
        }
    }
    Ok(out)
}
