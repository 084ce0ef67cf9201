//! Parabolic subalgebras and the gradings they induce.
//!
//! A parabolic is given by its crossed nodes `I`. The grading element is
//! `Z = sum_{i in I} Z_i` with `Z_i` dual to the simple roots, so a root
//! vector `e_α` sits in degree `sum_{i in I} m_i` where `α = sum m_i α_i`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::chevalley::{AlgebraElement, ChevalleyAlgebra};
use crate::error::{LieError, Result};
use crate::scalar::Scalar;

/// Degree of an element: homogeneous, or the list of degrees present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degree {
    Homogeneous(i32),
    Mixed(Vec<i32>),
}

#[derive(Clone, Debug)]
pub struct ParabolicData {
    alg: Arc<ChevalleyAlgebra>,
    cross: Vec<usize>,
    // degree of every basis element
    degree: Vec<i32>,
    depth: i32,
    graded: BTreeMap<i32, Vec<usize>>,
    // basis indices of g_-, in global order, and the inverse map
    minus: Vec<usize>,
    minus_pos: Vec<Option<usize>>,
}

impl ParabolicData {
    /// `cross` holds 1-based node indices, in any order.
    pub fn new(alg: Arc<ChevalleyAlgebra>, cross: &[usize]) -> Result<Self> {
        if cross.is_empty() {
            return Err(LieError::EmptyCross);
        }
        let rs = alg.root_system();
        for &i in cross {
            rs.check_node(i)?;
        }
        let mut cross = cross.to_vec();
        cross.sort_unstable();
        cross.dedup();

        let dim = alg.dim();
        let degree: Vec<i32> = (0..dim)
            .map(|b| {
                if alg.is_cartan(b) {
                    0
                } else {
                    cross.iter().map(|&i| rs.root(b)[i - 1] as i32).sum()
                }
            })
            .collect();
        let depth = degree[rs.highest_root_index()];
        let mut graded: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (b, &d) in degree.iter().enumerate() {
            graded.entry(d).or_default().push(b);
        }
        let minus: Vec<usize> = (0..dim).filter(|&b| degree[b] < 0).collect();
        let mut minus_pos = vec![None; dim];
        for (p, &b) in minus.iter().enumerate() {
            minus_pos[b] = Some(p);
        }
        Ok(Self {
            alg,
            cross,
            degree,
            depth,
            graded,
            minus,
            minus_pos,
        })
    }

    pub fn algebra(&self) -> &ChevalleyAlgebra {
        &self.alg
    }

    pub fn algebra_arc(&self) -> &Arc<ChevalleyAlgebra> {
        &self.alg
    }

    pub fn cross(&self) -> &[usize] {
        &self.cross
    }

    pub fn is_crossed(&self, node: usize) -> bool {
        self.cross.contains(&node)
    }

    /// The depth `ν = Z(λ)`.
    pub fn depth(&self) -> i32 {
        self.depth
    }

    pub fn basis_degree(&self, b: usize) -> i32 {
        self.degree[b]
    }

    /// `Z(x)` for an integral weight in simple-root coordinates.
    pub fn weight_degree(&self, coords: &[i64]) -> i64 {
        self.cross.iter().map(|&i| coords[i - 1]).sum()
    }

    /// Basis indices of `𝔤_i`, in global order.
    pub fn graded_piece(&self, i: i32) -> &[usize] {
        self.graded.get(&i).map_or(&[], |v| v.as_slice())
    }

    pub fn graded_dims(&self) -> BTreeMap<i32, usize> {
        self.graded.iter().map(|(d, v)| (*d, v.len())).collect()
    }

    /// Basis of `𝔤₋`, in global order. Positions in this list index cochain slots.
    pub fn g_minus(&self) -> &[usize] {
        &self.minus
    }

    pub fn minus_position(&self, b: usize) -> Option<usize> {
        self.minus_pos[b]
    }

    /// Basis of `𝔤₀`: Cartan generators and degree-zero root vectors.
    pub fn g0(&self) -> &[usize] {
        self.graded_piece(0)
    }

    pub fn p_plus(&self) -> Vec<usize> {
        (0..self.alg.dim()).filter(|&b| self.degree[b] > 0).collect()
    }

    /// `Z_i = sum_k (C^{-1})_{k i} h_k`, 1-based node.
    pub fn z_i<S: Scalar>(&self, node: usize) -> AlgebraElement<S> {
        let rs = self.alg.root_system();
        // (C^{-1})_{k i} is the i-th simple-root coordinate of lambda_k
        AlgebraElement::from_terms(
            self.alg.simple_type(),
            (1..=rs.rank()).map(|k| {
                let fw = rs.fundamental_weight::<S>(k);
                (self.alg.cartan_index(k), fw.coeffs_simple()[node - 1].clone())
            }),
        )
    }

    /// `Z_J = sum_{i in J} Z_i` for an arbitrary node set.
    pub fn z_of<S: Scalar>(&self, nodes: &[usize]) -> AlgebraElement<S> {
        let mut z = AlgebraElement::zero(self.alg.simple_type());
        for &i in nodes {
            z.add_scaled(&self.z_i(i), &S::one());
        }
        z
    }

    /// The grading element `Z`.
    pub fn grading_element<S: Scalar>(&self) -> AlgebraElement<S> {
        self.z_of(&self.cross)
    }

    pub fn degree<S: Scalar>(&self, x: &AlgebraElement<S>) -> Result<Degree> {
        if x.is_zero() {
            return Err(LieError::ZeroElement);
        }
        let mut ds: Vec<i32> = x.terms().map(|(b, _)| self.degree[b]).collect();
        ds.sort_unstable();
        ds.dedup();
        Ok(if ds.len() == 1 {
            Degree::Homogeneous(ds[0])
        } else {
            Degree::Mixed(ds)
        })
    }

    /// Lowest degree present in `x`, i.e. the largest `i` with `x ∈ 𝔤^i`.
    pub fn filtration_degree<S: Scalar>(&self, x: &AlgebraElement<S>) -> Option<i32> {
        x.terms().map(|(b, _)| self.degree[b]).min()
    }

    /// `gr_i(x)` for `x ∈ 𝔤^i`.
    pub fn leading_part<S: Scalar>(&self, x: &AlgebraElement<S>, i: i32) -> Result<AlgebraElement<S>> {
        if let Some(low) = self.filtration_degree(x) {
            if low < i {
                return Err(LieError::BelowFiltrand {
                    found: low,
                    required: i,
                });
            }
        }
        Ok(AlgebraElement::from_terms(
            x.simple_type(),
            x.terms()
                .filter(|(b, _)| self.degree[*b] == i)
                .map(|(b, c)| (b, c.clone())),
        ))
    }
}

impl fmt::Display for ParabolicData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nodes: Vec<String> = self.cross.iter().map(|i| i.to_string()).collect();
        write!(f, "{}/P{}", self.alg.simple_type(), nodes.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn pd(t: &str, cross: &[usize]) -> ParabolicData {
        let alg = Arc::new(ChevalleyAlgebra::of_type(t.parse().unwrap()).unwrap());
        ParabolicData::new(alg, cross).unwrap()
    }

    #[test]
    fn g2_p2_grading() {
        let p = pd("G2", &[2]);
        assert_eq!(p.depth(), 2);
        let dims: Vec<usize> = (-2..=2).map(|i| p.graded_piece(i).len()).collect();
        assert_eq!(dims, vec![1, 4, 4, 4, 1]);
        let alg = p.algebra();
        let mut g0: Vec<_> = p.g0().to_vec();
        g0.sort();
        let mut want = vec![
            alg.root_vector_index(&[1, 0]).unwrap(),
            alg.root_vector_index(&[-1, 0]).unwrap(),
            alg.cartan_index(1),
            alg.cartan_index(2),
        ];
        want.sort();
        assert_eq!(g0, want);
        let x: AlgebraElement<Rational> = alg.root_vector(&[-3, -2]).unwrap();
        assert_eq!(p.degree(&x).unwrap(), Degree::Homogeneous(-2));
    }

    #[test]
    fn z_is_dual_to_crossed_simple_roots() {
        let p = pd("G2", &[2]);
        let alg = p.algebra();
        let z: AlgebraElement<Rational> = p.grading_element();
        for r in 0..alg.num_roots() {
            let e = AlgebraElement::basis(alg.simple_type(), r);
            let br = alg.bracket(&z, &e).unwrap();
            let d = Rational::from_int(p.basis_degree(r) as i64);
            assert_eq!(br, e.scale(&d));
        }
        // Z_1 + 2 Z_2 = 4 h_1 + 7 h_2
        let z12 = p.z_i::<Rational>(1).add(&p.z_i(2).scale(&Rational::from_int(2)));
        assert_eq!(z12.coeff(alg.cartan_index(1)), Rational::from_int(4));
        assert_eq!(z12.coeff(alg.cartan_index(2)), Rational::from_int(7));
    }

    #[test]
    fn borel_puts_positive_roots_in_p_plus() {
        let p = pd("A3", &[1, 2, 3]);
        assert_eq!(p.p_plus().len(), 6);
        assert_eq!(p.g0().len(), 3);
    }

    #[test]
    fn degrees_and_leading_parts() {
        let p = pd("A3", &[1]);
        let alg = p.algebra();
        let x: AlgebraElement<Rational> = alg.root_vector(&[1, 1, 0]).unwrap();
        assert_eq!(p.degree(&x).unwrap(), Degree::Homogeneous(1));
        let h = alg.element::<Rational>(crate::BasisElement::Cartan(2));
        assert_eq!(p.degree(&h).unwrap(), Degree::Homogeneous(0));
        let lo: AlgebraElement<Rational> = alg.root_vector(&[-1, 0, 0]).unwrap();
        let hi: AlgebraElement<Rational> = alg.root_vector(&[1, 0, 0]).unwrap();
        let mix = lo.add(&hi);
        assert_eq!(p.degree(&mix).unwrap(), Degree::Mixed(vec![-1, 1]));
        assert_eq!(p.leading_part(&mix, -1).unwrap(), lo);
        assert!(p.leading_part(&mix, 0).is_err());
        assert!(p.leading_part(&hi, 0).unwrap().is_zero());
        assert_eq!(p.leading_part(&hi, 1).unwrap(), hi);
        assert!(matches!(p.degree(&AlgebraElement::<Rational>::zero(alg.simple_type())), Err(LieError::ZeroElement)));
    }

    #[test]
    fn rejects_bad_cross() {
        let alg = Arc::new(ChevalleyAlgebra::of_type("A2".parse().unwrap()).unwrap());
        assert!(matches!(ParabolicData::new(alg.clone(), &[]), Err(LieError::EmptyCross)));
        assert!(ParabolicData::new(alg, &[3]).is_err());
    }
}
