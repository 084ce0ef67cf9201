//! Root systems of the complex simple Lie algebras.
//!
//! Simple roots are numbered as in LiE (equivalently Bourbaki):
//!
//! | type  | diagram / numbering                                        |
//! |-------|------------------------------------------------------------|
//! | A_l   | 1 - 2 - ... - l                                             |
//! | B_l   | 1 - 2 - ... - (l-1) => l, with alpha_l short                |
//! | C_l   | 1 - 2 - ... - (l-1) <= l, with alpha_l long                 |
//! | D_l   | 1 - ... - (l-2), and (l-2) joined to both l-1 and l         |
//! | E_l   | 1 - 3 - 4 - 5 - ... - l, with 2 attached to 4               |
//! | F_4   | 1 - 2 => 3 - 4, with alpha_1, alpha_2 long                  |
//! | G_2   | 1 <= 2, with alpha_1 short                                  |
//!
//! The Cartan matrix is `c[i][j] = <alpha_i, alpha_j^vee>`, so that
//! `alpha_i = sum_j c[i][j] lambda_j`.
//!
//! Roots are stored as integer coordinate vectors in the simple-root basis.
//! Positive roots are ordered by height, then by descending lexicographic
//! order of coordinates (so `alpha_1` precedes `alpha_2`); the negative roots
//! follow in the same order. This order is fixed once and every downstream
//! basis inherits it.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LieError, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 4,
            Family::E => 6,
            Family::F => 4,
            Family::G => 2,
        }
    }

    pub fn max_rank(self) -> Option<usize> {
        match self {
            Family::E => Some(8),
            Family::F => Some(4),
            Family::G => Some(2),
            _ => None,
        }
    }
}

impl FromStr for Family {
    type Err = LieError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(LieError::InvalidType(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = rank >= family.min_rank()
            && match family {
                Family::E => (6..=8).contains(&rank),
                _ => family.max_rank().is_none_or(|m| rank == m),
            };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(LieError::InvalidType(format!("{}{}", family.letter(), rank)))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = LieError;

    /// Parses descriptors such as `"A3"`, `"g2"`, `"E8"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || LieError::InvalidType(s.to_string());
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(bad)?;
        let family: Family = letter.to_string().parse().map_err(|_| bad())?;
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        SimpleType::new(family, rank).map_err(|_| bad())
    }
}

impl Serialize for SimpleType {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SimpleType {
    fn deserialize<De: serde::Deserializer<'de>>(d: De) -> std::result::Result<Self, De::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Cartan matrix in LiE node ordering.
pub fn cartan_matrix(t: SimpleType) -> Vec<Vec<i64>> {
    let n = t.rank;
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i - 1][j - 1] = -1;
        c[j - 1][i - 1] = -1;
    };
    match t.family {
        Family::A | Family::B | Family::C => {
            for i in 1..n {
                link(i, i + 1);
            }
        }
        Family::D => {
            for i in 1..n - 1 {
                link(i, i + 1);
            }
            link(n - 2, n);
        }
        Family::E => {
            link(1, 3);
            link(2, 4);
            for i in 3..n {
                link(i, i + 1);
            }
        }
        Family::F => {
            link(1, 2);
            link(2, 3);
            link(3, 4);
        }
        Family::G => link(1, 2),
    }
    match t.family {
        // alpha_n short: <alpha_{n-1}, alpha_n^vee> = -2
        Family::B => c[n - 2][n - 1] = -2,
        // alpha_n long
        Family::C => c[n - 1][n - 2] = -2,
        Family::F => c[1][2] = -2,
        Family::G => c[1][0] = -3,
        _ => {}
    }
    c
}

/// A weight in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Weight<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        Self { coeffs }
    }

    pub fn zero(rank: usize) -> Self {
        Self {
            coeffs: vec![S::zero(); rank],
        }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self {
            coeffs: coeffs.iter().map(|&c| S::from_int(c)).collect(),
        }
    }

    /// The `i`-th simple root (1-based node index).
    pub fn simple_root(rank: usize, node: usize) -> Self {
        let mut v = vec![0; rank];
        v[node - 1] = 1;
        Self::from_ints(&v)
    }

    pub fn coeffs_simple(&self) -> &[S] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Integer simple-root coordinates, if all coordinates are integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| {
                let q = c.to_rational();
                if q.is_integer() {
                    q.numer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn scale(&self, s: &S) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }
}

impl<S: Scalar> std::ops::Add for &Weight<S> {
    type Output = Weight<S>;
    fn add(self, rhs: &Weight<S>) -> Weight<S> {
        Weight {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<S: Scalar> std::ops::Sub for &Weight<S> {
    type Output = Weight<S>;
    fn sub(self, rhs: &Weight<S>) -> Weight<S> {
        Weight {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<S: Scalar> std::ops::Neg for &Weight<S> {
    type Output = Weight<S>;
    fn neg(self) -> Weight<S> {
        Weight {
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: SimpleType,
    cartan: Vec<Vec<i64>>,
    // symmetrized form (alpha_i, alpha_j) = sym_num[i][j] / sym_den
    sym_num: Vec<Vec<i64>>,
    sym_den: i64,
    // inverse Cartan matrix = inv_num / inv_den
    inv_num: Vec<Vec<i64>>,
    inv_den: i64,
    roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    n_pos: usize,
    highest: usize,
}

impl RootSystem {
    pub fn new(ty: SimpleType) -> Self {
        let cartan = cartan_matrix(ty);
        let n = ty.rank;

        // squared lengths d_i, propagated along the (connected) diagram:
        // c_ij d_j = c_ji d_i
        let mut d: Vec<Option<BigRational>> = vec![None; n];
        d[0] = Some(BigRational::one());
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..n {
                for j in 0..n {
                    if i == j || cartan[i][j] == 0 {
                        continue;
                    }
                    if let (Some(di), None) = (d[i].clone(), &d[j]) {
                        d[j] = Some(
                            di * BigRational::from_int(cartan[j][i])
                                / BigRational::from_int(cartan[i][j]),
                        );
                        changed = true;
                    }
                }
            }
        }
        let d: Vec<BigRational> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
        let max = d.iter().cloned().fold(BigRational::zero(), |a, b| if b > a { b } else { a });
        let two = BigRational::from_int(2);
        let d: Vec<BigRational> = d.into_iter().map(|x| x * two.clone() / max.clone()).collect();
        let sym: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from_int(cartan[i][j]) * d[j].clone() / two.clone())
                    .collect()
            })
            .collect();
        let (sym_num, sym_den) = integerize(&sym);

        let cm: Matrix<BigRational> = Matrix::from_rows(
            cartan
                .iter()
                .map(|r| r.iter().map(|&x| BigRational::from_int(x)).collect())
                .collect(),
            n,
        );
        let inv = invert(&cm);
        let (inv_num, inv_den) = integerize(&inv.row_vecs());

        let mut rs = RootSystem {
            ty,
            cartan,
            sym_num,
            sym_den,
            inv_num,
            inv_den,
            roots: Vec::new(),
            index: HashMap::new(),
            n_pos: 0,
            highest: 0,
        };
        rs.enumerate_roots();
        rs
    }

    fn enumerate_roots(&mut self) {
        let n = self.ty.rank;
        let mut by_height: Vec<Vec<Vec<i64>>> = vec![(0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect()];
        let mut known: std::collections::HashSet<Vec<i64>> =
            by_height[0].iter().cloned().collect();
        loop {
            let mut next: Vec<Vec<i64>> = Vec::new();
            for beta in by_height.last().unwrap() {
                for i in 0..n {
                    // alpha_i-string through beta: p - q = <beta, alpha_i^vee>
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..n).map(|k| beta[k] * self.cartan[k][i]).sum();
                    let q = p - pairing;
                    if q > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !next.contains(&up) {
                            next.push(up);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            for r in &next {
                known.insert(r.clone());
            }
            by_height.push(next);
        }
        let mut pos: Vec<Vec<i64>> = Vec::new();
        for mut level in by_height {
            level.sort_by(|a, b| b.cmp(a));
            pos.extend(level);
        }
        let n_pos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        self.index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        self.roots = roots;
        self.n_pos = n_pos;
        self.highest = n_pos - 1;
    }

    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `c_ij` with 1-based node indices.
    pub fn c(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// Integer simple-root coordinates of root `i` (global root index).
    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_pos
    }

    pub fn negate(&self, i: usize) -> usize {
        if i < self.n_pos {
            i + self.n_pos
        } else {
            i - self.n_pos
        }
    }

    pub fn height(&self, i: usize) -> i64 {
        self.roots[i].iter().sum()
    }

    /// Positive roots as weights, in the fixed order.
    pub fn positive_roots<S: Scalar>(&self) -> Vec<Weight<S>> {
        self.roots[..self.n_pos].iter().map(|r| Weight::from_ints(r)).collect()
    }

    pub fn highest_root_index(&self) -> usize {
        self.highest
    }

    pub fn highest_root<S: Scalar>(&self) -> Weight<S> {
        Weight::from_ints(&self.roots[self.highest])
    }

    /// Index of the simple root `alpha_node` (1-based node).
    pub fn simple_index(&self, node: usize) -> usize {
        let mut v = vec![0; self.rank()];
        v[node - 1] = 1;
        self.index[&v]
    }

    pub fn check_node(&self, node: usize) -> Result<()> {
        if node == 0 || node > self.rank() {
            Err(LieError::NodeOutOfRange {
                node,
                rank: self.rank(),
            })
        } else {
            Ok(())
        }
    }

    /// `<x, alpha_j^vee>` for a 1-based node `j`.
    pub fn coroot_pairing<S: Scalar>(&self, x: &Weight<S>, j: usize) -> S {
        let mut s = S::zero();
        for (i, xi) in x.coeffs.iter().enumerate() {
            let c = self.cartan[i][j - 1];
            if c != 0 && !xi.is_zero() {
                s = s + xi.clone() * S::from_int(c);
            }
        }
        s
    }

    /// Integer version for integral simple-root coordinates.
    pub fn coroot_pairing_int(&self, x: &[i64], j: usize) -> i64 {
        x.iter().enumerate().map(|(i, xi)| xi * self.cartan[i][j - 1]).sum()
    }

    /// Coordinates in the fundamental-weight basis.
    pub fn to_fundamental<S: Scalar>(&self, x: &Weight<S>) -> Vec<S> {
        (1..=self.rank()).map(|j| self.coroot_pairing(x, j)).collect()
    }

    pub fn from_fundamental<S: Scalar>(&self, fw: &[S]) -> Weight<S> {
        let n = self.rank();
        let den = S::from_int(self.inv_den);
        let coeffs = (0..n)
            .map(|i| {
                // x_i = sum_j fw_j (C^{-1})_{j i}
                let mut s = S::zero();
                for (j, f) in fw.iter().enumerate() {
                    let a = self.inv_num[j][i];
                    if a != 0 && !f.is_zero() {
                        s = s + f.clone() * S::from_int(a);
                    }
                }
                s / den.clone()
            })
            .collect();
        Weight::new(coeffs)
    }

    /// The fundamental weight `lambda_node` in simple-root coordinates.
    pub fn fundamental_weight<S: Scalar>(&self, node: usize) -> Weight<S> {
        let mut fw = vec![S::zero(); self.rank()];
        fw[node - 1] = S::one();
        self.from_fundamental(&fw)
    }

    pub fn rho<S: Scalar>(&self) -> Weight<S> {
        self.from_fundamental(&vec![S::one(); self.rank()])
    }

    /// Symmetrized invariant form with long roots of squared length 2.
    pub fn inner<S: Scalar>(&self, x: &Weight<S>, y: &Weight<S>) -> S {
        let mut s = S::zero();
        for (i, xi) in x.coeffs.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coeffs.iter().enumerate() {
                let b = self.sym_num[i][j];
                if b != 0 && !yj.is_zero() {
                    s = s + xi.clone() * yj.clone() * S::from_int(b);
                }
            }
        }
        s / S::from_int(self.sym_den)
    }

    pub fn symmetrized_form<S: Scalar>(&self) -> Vec<Vec<S>> {
        self.sym_num
            .iter()
            .map(|r| r.iter().map(|&b| S::from_ratio(b, self.sym_den)).collect())
            .collect()
    }

    /// Squared length of root `i`, as a rational `num / sym_den`.
    pub fn root_norm<S: Scalar>(&self, i: usize) -> S {
        let w: Weight<S> = Weight::from_ints(&self.roots[i]);
        self.inner(&w, &w)
    }

    /// Coordinates of the coroot of root `i` in the basis of simple coroots.
    pub fn coroot_coords(&self, i: usize) -> Vec<i64> {
        let norm: BigRational = self.root_norm(i);
        self.roots[i]
            .iter()
            .enumerate()
            .map(|(k, &a)| {
                let dk = BigRational::new(
                    BigInt::from(self.sym_num[k][k]),
                    BigInt::from(self.sym_den),
                );
                let v = dk / norm.clone() * BigRational::from_int(a);
                assert!(v.is_integer(), "coroot coordinates are integral");
                v.numer().to_i64().unwrap()
            })
            .collect()
    }

    /// `sigma_j(x) = x - <x, alpha_j^vee> alpha_j`, 1-based node `j`.
    pub fn simple_reflection<S: Scalar>(&self, j: usize, x: &Weight<S>) -> Result<Weight<S>> {
        self.check_node(j)?;
        let p = self.coroot_pairing(x, j);
        let mut out = x.clone();
        out.coeffs[j - 1] = out.coeffs[j - 1].clone() - p;
        Ok(out)
    }

    /// Applies the Weyl group element `word = (j1 j2 ... jr) = sigma_{j1} o ... o sigma_{jr}`.
    pub fn weyl_action<S: Scalar>(&self, word: &[usize], x: &Weight<S>) -> Result<Weight<S>> {
        let mut y = x.clone();
        for &j in word.iter().rev() {
            y = self.simple_reflection(j, &y)?;
        }
        Ok(y)
    }

    /// The dot action `w . x = w(x + rho) - rho`.
    pub fn affine_action<S: Scalar>(&self, word: &[usize], x: &Weight<S>) -> Result<Weight<S>> {
        let rho = self.rho::<S>();
        let shifted = x + &rho;
        let moved = self.weyl_action(word, &shifted)?;
        Ok(&moved - &rho)
    }

    /// Reflection of an integral vector in root `i`.
    pub fn reflect_int(&self, i: usize, x: &[i64]) -> Vec<i64> {
        // sigma_alpha(x) = x - <x, alpha^vee> alpha, with <x, alpha^vee> = sum_k coroot_k <x, alpha_k^vee>
        let co = self.coroot_coords(i);
        let p: i64 = (1..=self.rank())
            .map(|k| co[k - 1] * self.coroot_pairing_int(x, k))
            .sum();
        x.iter().zip(&self.roots[i]).map(|(a, r)| a - p * r).collect()
    }
}

fn integerize(m: &[Vec<BigRational>]) -> (Vec<Vec<i64>>, i64) {
    let mut den = BigInt::one();
    for r in m {
        for x in r {
            den = num_integer::Integer::lcm(&den, x.denom());
        }
    }
    let num = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let v = x * BigRational::from_integer(den.clone());
                    v.numer().to_i64().expect("small entries")
                })
                .collect()
        })
        .collect();
    (num, den.abs().to_i64().expect("small denominator"))
}

fn invert(m: &Matrix<BigRational>) -> Matrix<BigRational> {
    let n = m.rows();
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n + i)] = BigRational::one();
    }
    let piv = aug.rref();
    assert_eq!(piv.len(), n, "Cartan matrix is invertible");
    let mut inv = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = aug[(i, n + j)].clone();
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    #[test]
    fn g2_cartan_and_roots() {
        let g2 = rs("G2");
        assert_eq!(g2.cartan(), &[vec![2, -1], vec![-3, 2]]);
        let pos: Vec<&[i64]> = (0..g2.num_positive()).map(|i| g2.root(i)).collect();
        assert_eq!(
            pos,
            vec![&[1, 0][..], &[0, 1], &[1, 1], &[2, 1], &[3, 1], &[3, 2]]
        );
        assert_eq!(g2.root(g2.highest_root_index()), &[3, 2]);
    }

    #[test]
    fn a2_cartan() {
        assert_eq!(cartan_matrix("A2".parse().unwrap()), vec![vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn e8_cartan_matches_bourbaki_table() {
        let c = cartan_matrix("E8".parse().unwrap());
        let expected = [
            [2, 0, -1, 0, 0, 0, 0, 0],
            [0, 2, 0, -1, 0, 0, 0, 0],
            [-1, 0, 2, -1, 0, 0, 0, 0],
            [0, -1, -1, 2, -1, 0, 0, 0],
            [0, 0, 0, -1, 2, -1, 0, 0],
            [0, 0, 0, 0, -1, 2, -1, 0],
            [0, 0, 0, 0, 0, -1, 2, -1],
            [0, 0, 0, 0, 0, 0, -1, 2],
        ];
        for i in 0..8 {
            assert_eq!(c[i], expected[i].to_vec());
        }
    }

    #[test]
    fn rejects_bad_types() {
        for s in ["A0", "B1", "D3", "E5", "E9", "F3", "G3", "X2", "", "A"] {
            assert!(s.parse::<SimpleType>().is_err(), "{s}");
        }
        assert_eq!("e8".parse::<SimpleType>().unwrap().to_string(), "E8");
    }

    #[test]
    fn root_counts() {
        for (t, n) in [
            ("A1", 1),
            ("A3", 6),
            ("B3", 9),
            ("C4", 16),
            ("D4", 12),
            ("D5", 20),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
        ] {
            assert_eq!(rs(t).num_positive(), n, "{t}");
        }
    }

    #[test]
    fn highest_roots_in_fundamental_coordinates() {
        let cases: &[(&str, &[i64])] = &[
            ("A1", &[2]),
            ("A4", &[1, 0, 0, 1]),
            ("B4", &[0, 1, 0, 0]),
            ("C3", &[2, 0, 0]),
            ("D5", &[0, 1, 0, 0, 0]),
            ("E6", &[0, 1, 0, 0, 0, 0]),
            ("E7", &[1, 0, 0, 0, 0, 0, 0]),
            ("E8", &[0, 0, 0, 0, 0, 0, 0, 1]),
            ("F4", &[1, 0, 0, 0]),
            ("G2", &[0, 1]),
        ];
        for (t, fw) in cases {
            let r = rs(t);
            let hr = r.to_fundamental(&r.highest_root::<Rational>());
            let want: Vec<Rational> = fw.iter().map(|&x| Rational::from_int(x)).collect();
            assert_eq!(hr, want, "{t}");
        }
    }

    #[test]
    fn g2_reflections() {
        let g2 = rs("G2");
        let a1: Weight<Rational> = Weight::simple_root(2, 1);
        assert_eq!(g2.simple_reflection(2, &a1).unwrap(), Weight::from_ints(&[1, 1]));
        assert_eq!(g2.simple_reflection(1, &a1).unwrap(), Weight::from_ints(&[-1, 0]));
        assert!(g2.simple_reflection(3, &a1).is_err());
    }

    #[test]
    fn a3_sigma2_fixes_lambda1() {
        let a3 = rs("A3");
        let l1 = a3.fundamental_weight::<Rational>(1);
        assert_eq!(a3.simple_reflection(2, &l1).unwrap(), l1);
    }

    #[test]
    fn g2_dot_action() {
        let g2 = rs("G2");
        let lam = g2.highest_root::<Rational>();
        let mu = -&g2.affine_action(&[2, 1], &lam).unwrap();
        let fw = g2.to_fundamental(&mu);
        assert_eq!(fw, vec![Rational::from_int(-7), Rational::from_int(4)]);
        assert_eq!(mu, Weight::from_ints(&[-2, 1]));
        assert_eq!(g2.affine_action(&[], &lam).unwrap(), lam);
    }

    #[test]
    fn e8_dot_action() {
        let e8 = rs("E8");
        let lam = e8.highest_root::<Rational>();
        let mu = -&e8.affine_action(&[8, 7], &lam).unwrap();
        let fw: Vec<i64> = e8
            .to_fundamental(&mu)
            .iter()
            .map(|x| x.to_integer().try_into().unwrap())
            .collect();
        assert_eq!(fw, vec![0, 0, 0, 0, 0, -1, -1, 4]);
    }

    #[test]
    fn coroots_of_long_and_short_roots() {
        let g2 = rs("G2");
        // alpha_1 short: coroot of 3a1+a2 (short) is a1^v + a2^v
        let i = g2.root_index(&[2, 1]).unwrap();
        assert_eq!(g2.coroot_coords(i), vec![2, 3]);
        let i = g2.root_index(&[3, 2]).unwrap();
        assert_eq!(g2.coroot_coords(i), vec![1, 2]);
    }
}
