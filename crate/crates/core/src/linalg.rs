//! Exact linear algebra over a [`Scalar`] field.
//!
//! Two tools live here: a small dense [`Matrix`] with reduced row echelon
//! form and nullspaces (used for annihilators and prolongation steps), and
//! an incremental [`SparseEchelon`] basis used for the large, very sparse
//! rank computations of the cochain complex. [`IntEchelon`] is the
//! fraction-free integer variant behind the Hodge oracle.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed};
use rustc_hash::FxHashMap;

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r);
        }
        Self {
            rows: n,
            cols,
            data,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = S::one() / self[(r, c)].clone();
            for j in c..self.cols {
                if !self[(r, j)].is_zero() {
                    self[(r, j)] = self[(r, j)].clone() * inv.clone();
                }
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if !self[(r, j)].is_zero() {
                        self[(i, j)] = self[(i, j)].clone() - f.clone() * self[(r, j)].clone();
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{ x : A x = 0 }`, one vector per free column, in RREF-derived
    /// canonical form (the free coordinate is 1, other free coordinates 0).
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![S::zero(); self.cols];
            v[free] = S::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<S> std::ops::Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> std::ops::IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

/// Reduced row echelon basis of the span of `vectors` (zero rows dropped).
/// Two families span the same space iff their canonical bases are equal.
pub fn canonical_basis<S: Scalar>(vectors: &[Vec<S>], dim: usize) -> Vec<Vec<S>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_rows(vectors.to_vec(), dim);
    let r = m.rref().len();
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

pub fn span_rank<S: Scalar>(vectors: &[Vec<S>], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec(), dim).rank()
}

/// Incrementally maintained row echelon basis of sparse vectors.
///
/// Rows are kept with a unit leading coefficient; a new vector is reduced
/// against existing leading columns in ascending order.
#[derive(Clone, Debug)]
pub struct SparseEchelon<S> {
    pivots: HashMap<usize, BTreeMap<usize, S>>,
}

impl<S: Scalar> Default for SparseEchelon<S> {
    fn default() -> Self {
        Self {
            pivots: HashMap::new(),
        }
    }
}

impl<S: Scalar> SparseEchelon<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn reduce(&self, mut v: BTreeMap<usize, S>) -> BTreeMap<usize, S> {
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, f)) = next else { break };
            let row = &self.pivots[&c];
            for (j, a) in row {
                let entry = v.entry(*j).or_insert_with(S::zero);
                *entry = entry.clone() - f.clone() * a.clone();
                if entry.is_zero() {
                    v.remove(j);
                }
            }
            cursor = c + 1;
        }
        v
    }

    /// Adds `v` to the basis. Returns `true` if it was independent.
    pub fn insert(&mut self, v: impl IntoIterator<Item = (usize, S)>) -> bool {
        let mut map = BTreeMap::new();
        for (i, x) in v {
            if x.is_zero() {
                continue;
            }
            let e = map.entry(i).or_insert_with(S::zero);
            *e = e.clone() + x;
        }
        map.retain(|_, x| !x.is_zero());
        let r = self.reduce(map);
        let Some((&lead, a)) = r.iter().next() else {
            return false;
        };
        let inv = S::one() / a.clone();
        let row = r.into_iter().map(|(j, x)| (j, x * inv.clone())).collect();
        self.pivots.insert(lead, row);
        true
    }

    pub fn contains(&self, v: impl IntoIterator<Item = (usize, S)>) -> bool {
        let map: BTreeMap<usize, S> = v.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        self.reduce(map).is_empty()
    }
}

trait Ring: Clone + Integer + Signed + CheckedMul + CheckedSub {}

impl Ring for i128 {}
impl Ring for BigInt {}

type IntRow<T> = Vec<(usize, T)>;

fn make_primitive<T: Ring>(v: &mut IntRow<T>) {
    let g = v.iter().fold(T::zero(), |g, (_, x)| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for (_, x) in v.iter_mut() {
            *x = x.clone() / g.clone();
        }
    }
}

/// Eliminates pivot columns from `v`; `None` on overflow.
fn reduce_int<T: Ring>(pivots: &HashMap<usize, IntRow<T>>, mut v: IntRow<T>) -> Option<IntRow<T>> {
    let mut i = 0;
    while i < v.len() {
        let c = v[i].0;
        let Some(row) = pivots.get(&c) else {
            i += 1;
            continue;
        };
        let g = row[0].1.gcd(&v[i].1);
        let sv = row[0].1.clone() / g.clone();
        let sr = v[i].1.clone() / g;
        let mut out = Vec::with_capacity(v.len() + row.len());
        let (mut x, mut y) = (0, 0);
        while x < v.len() || y < row.len() {
            let cx = v.get(x).map_or(usize::MAX, |e| e.0);
            let cy = row.get(y).map_or(usize::MAX, |e| e.0);
            let (col, val) = if cx < cy {
                x += 1;
                (cx, v[x - 1].1.checked_mul(&sv)?)
            } else if cy < cx {
                y += 1;
                (cy, T::zero().checked_sub(&row[y - 1].1.checked_mul(&sr)?)?)
            } else {
                x += 1;
                y += 1;
                let a = v[x - 1].1.checked_mul(&sv)?;
                (cx, a.checked_sub(&row[y - 1].1.checked_mul(&sr)?)?)
            };
            if !val.is_zero() {
                out.push((col, val));
            }
        }
        make_primitive(&mut out);
        v = out;
    }
    Some(v)
}

fn store<T: Ring>(pivots: &mut HashMap<usize, IntRow<T>>, mut r: IntRow<T>) -> bool {
    let Some(lead) = r.first() else { return false };
    let col = lead.0;
    if lead.1.is_negative() {
        for (_, x) in r.iter_mut() {
            *x = -x.clone();
        }
    }
    pivots.insert(col, r);
    true
}

/// Fraction-free row echelon basis over ℤ of sparse integer vectors.
///
/// Rows are primitive with a positive leading entry. Arithmetic runs in
/// `i128` and the whole basis is promoted to `BigInt` on the first overflow,
/// so ranks are exact over ℚ.
#[derive(Clone, Debug, Default)]
pub struct IntEchelon {
    small: HashMap<usize, IntRow<i128>>,
    big: Option<HashMap<usize, IntRow<BigInt>>>,
}

impl IntEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.big.as_ref().map_or(self.small.len(), |b| b.len())
    }

    pub fn is_promoted(&self) -> bool {
        self.big.is_some()
    }

    /// Adds `v` to the basis. Returns `true` if it was independent.
    pub fn insert(&mut self, v: impl IntoIterator<Item = (usize, i128)>) -> bool {
        let mut v: IntRow<i128> = v.into_iter().collect();
        v.sort_unstable_by_key(|e| e.0);
        let mut merged: IntRow<i128> = Vec::with_capacity(v.len());
        for (c, x) in v {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 += x,
                _ => merged.push((c, x)),
            }
        }
        merged.retain(|e| e.1 != 0);
        make_primitive(&mut merged);
        if self.big.is_none() {
            if let Some(r) = reduce_int(&self.small, merged.clone()) {
                return store(&mut self.small, r);
            }
            let promoted = std::mem::take(&mut self.small)
                .into_iter()
                .map(|(c, row)| (c, row.into_iter().map(|(j, x)| (j, BigInt::from(x))).collect()))
                .collect();
            self.big = Some(promoted);
        }
        let big = self.big.as_mut().expect("promoted");
        let v = merged.into_iter().map(|(j, x)| (j, BigInt::from(x))).collect();
        let r = reduce_int(big, v).expect("BigInt arithmetic does not overflow");
        store(big, r)
    }
}

/// Row echelon basis over 𝔽_p with `p = 2⁶¹ - 1`.
///
/// For integer vectors the rank over 𝔽_p is a lower bound for the rank over ℚ,
/// which makes this a cheap certificate when an upper bound is known.
#[derive(Clone, Debug, Default)]
pub struct ModEchelon {
    pivots: Vec<Option<Vec<(usize, u64)>>>,
    rank: usize,
    acc: Vec<u64>,
}

const MOD_P: u64 = (1 << 61) - 1;

fn mod_mul(a: u64, b: u64) -> u64 {
    let x = a as u128 * b as u128;
    let r = (x as u64 & MOD_P) + (x >> 61) as u64;
    let r = (r & MOD_P) + (r >> 61);
    if r >= MOD_P {
        r - MOD_P
    } else {
        r
    }
}

fn mod_pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mod_mul(r, a);
        }
        a = mod_mul(a, a);
        e >>= 1;
    }
    r
}

impl ModEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn insert(&mut self, v: impl IntoIterator<Item = (usize, i128)>) -> bool {
        let acc = &mut self.acc;
        let (mut lo, mut hi) = (usize::MAX, 0);
        for (c, x) in v {
            if acc.len() <= c {
                acc.resize(c + 1, 0);
            }
            acc[c] = (acc[c] + x.rem_euclid(MOD_P as i128) as u64) % MOD_P;
            lo = lo.min(c);
            hi = hi.max(c);
        }
        if lo > hi {
            return false;
        }
        let mut lead = None;
        let mut c = lo;
        while c <= hi {
            if acc[c] != 0 {
                match self.pivots.get(c) {
                    Some(Some(row)) => {
                        let f = MOD_P - acc[c];
                        for &(j, a) in row {
                            if acc.len() <= j {
                                acc.resize(j + 1, 0);
                            }
                            let x = acc[j] + mod_mul(f, a);
                            acc[j] = if x >= MOD_P { x - MOD_P } else { x };
                            hi = hi.max(j);
                        }
                    }
                    _ => {
                        lead = Some(c);
                        break;
                    }
                }
            }
            c += 1;
        }
        let Some(lead) = lead else {
            acc[lo..=hi].fill(0);
            return false;
        };
        let inv = mod_pow(acc[lead], MOD_P - 2);
        let row: Vec<(usize, u64)> = (lead..=hi)
            .filter(|&j| acc[j] != 0)
            .map(|j| (j, mod_mul(acc[j], inv)))
            .collect();
        acc[lo..=hi].fill(0);
        if self.pivots.len() <= lead {
            self.pivots.resize(lead + 1, None);
        }
        self.pivots[lead] = Some(row);
        self.rank += 1;
        true
    }
}

/// Exact rank over ℚ of integer vectors, given an a priori upper bound.
/// The 𝔽_p rank is tried first and accepted when it meets the bound.
pub fn bounded_int_rank(rows: &[Vec<(usize, i128)>], upper: usize) -> usize {
    let mut m = ModEchelon::new();
    for r in rows {
        m.insert(r.iter().copied());
        if m.rank() == upper {
            return upper;
        }
    }
    let mut e = IntEchelon::new();
    for r in rows {
        e.insert(r.iter().copied());
    }
    e.rank()
}

/// Assigns dense column ids to arbitrary hashable coordinate keys.
#[derive(Clone, Debug)]
pub struct KeyIndex<K> {
    ids: FxHashMap<K, usize>,
}

impl<K: Hash + Eq + Clone> Default for KeyIndex<K> {
    fn default() -> Self {
        Self {
            ids: FxHashMap::default(),
        }
    }
}

impl<K: Hash + Eq + Clone> KeyIndex<K> {
    pub fn id(&mut self, k: &K) -> usize {
        let n = self.ids.len();
        *self.ids.entry(k.clone()).or_insert(n)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// Rank of a family of sparse vectors with arbitrary coordinate keys.
pub fn sparse_rank<S: Scalar, K: Hash + Eq + Clone>(
    vectors: impl IntoIterator<Item = Vec<(K, S)>>,
) -> usize {
    let mut keys = KeyIndex::default();
    let mut ech = SparseEchelon::new();
    for v in vectors {
        let v: Vec<(usize, S)> = v.into_iter().map(|(k, x)| (keys.id(&k), x)).collect();
        ech.insert(v);
    }
    ech.rank()
}
