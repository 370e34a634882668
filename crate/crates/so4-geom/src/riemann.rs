//! Curvature of the left-invariant metric making the coframe orthonormal.

use crate::exterior::{basis_masks, endo_to_two_form, Form};
use crate::liealg::{LieAlgebra, LieError};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::torsion::levi_civita_endos;

#[derive(Debug, Clone)]
pub struct CurvatureData {
    /// R(e_i, e_j) as endomorphisms, indexed by i < j in lexicographic order
    pub operators: Vec<((usize, usize), Matrix)>,
    pub ric: Matrix,
    pub scal: Scalar,
}

impl CurvatureData {
    pub fn is_flat(&self) -> bool {
        self.operators.iter().all(|(_, m)| m.is_zero())
    }

    pub fn is_einstein(&self) -> bool {
        let n = self.ric.rows();
        let c = &self.scal * &Scalar::ratio(1, n as i64);
        self.ric == Matrix::identity(n).scale(&c)
    }

    /// The Einstein constant, when ric is a multiple of the identity.
    pub fn einstein_constant(&self) -> Option<Scalar> {
        self.is_einstein().then(|| self.ric[(0, 0)].clone())
    }

    /// The curvature as a symmetric table on Λ²: entry (I, J) is the coefficient of
    /// e^I ⊗ e^J in Σ_{i<j} e^{ij} ⊗ R(e_i, e_j).
    pub fn form_table(&self) -> Matrix {
        let n = self.ric.rows();
        let masks = basis_masks(n, 2);
        let mut t = Matrix::zeros(masks.len(), masks.len());
        for (row, (_, op)) in self.operators.iter().enumerate() {
            let f = endo_to_two_form(op).expect("curvature is skew");
            for (col, &m) in masks.iter().enumerate() {
                t[(row, col)] = f.coeff(m);
            }
        }
        t
    }

    /// Σ_cyclic R(e_i,e_j)e_k = 0.
    pub fn bianchi_holds(&self) -> bool {
        let n = self.ric.rows();
        let op = |i: usize, j: usize| -> Matrix {
            if i == j {
                return Matrix::zeros(n, n);
            }
            let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
            let m = &self.operators.iter().find(|(k, _)| *k == (a, b)).unwrap().1;
            if sign > 0 {
                m.clone()
            } else {
                m.scale(&Scalar::from_int(-1))
            }
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (a, b, c) = (op(i, j), op(j, k), op(k, i));
                    for l in 0..n {
                        let s = &(&a[(l, k)] + &b[(l, i)]) + &c[(l, j)];
                        if !s.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// R(e_i,e_j) = [Γ_i, Γ_j] − Σ_k c_ij^k Γ_k, Ric(e_j,e_l) = Σ_i R(e_i,e_j)[i][l].
pub fn curvature(g: &LieAlgebra) -> Result<CurvatureData, LieError> {
    let gamma = levi_civita_endos(g)?;
    let n = g.dim();
    let mut operators = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut r = gamma[i].commutator(&gamma[j]);
            for (k, gk) in gamma.iter().enumerate() {
                let c = g.structure_constant(i, j, k);
                if !c.is_zero() {
                    r = r.sub(&gk.scale(&c));
                }
            }
            operators.push(((i, j), r));
        }
    }
    let get = |i: usize, j: usize| -> Option<(Matrix, bool)> {
        if i == j {
            return None;
        }
        let key = if i < j { (i, j) } else { (j, i) };
        let m = operators.iter().find(|(k, _)| *k == key).unwrap().1.clone();
        Some((m, i < j))
    };
    let mut ric = Matrix::zeros(n, n);
    for j in 0..n {
        for l in 0..n {
            let mut s = Scalar::zero();
            for i in 0..n {
                if let Some((m, pos)) = get(i, j) {
                    if pos {
                        s += &m[(i, l)];
                    } else {
                        s -= &m[(i, l)];
                    }
                }
            }
            ric[(j, l)] = s;
        }
    }
    let scal = ric.trace();
    Ok(CurvatureData { operators, ric, scal })
}

pub fn ricci(g: &LieAlgebra) -> Result<Matrix, LieError> {
    Ok(curvature(g)?.ric)
}

pub fn scalar_curvature(g: &LieAlgebra) -> Result<Scalar, LieError> {
    Ok(curvature(g)?.scal)
}

pub fn is_einstein(g: &LieAlgebra) -> Result<bool, LieError> {
    Ok(curvature(g)?.is_einstein())
}

/// The symmetric table Σ c_k γ_k ⊗ γ_k on Λ² for comparison with [`CurvatureData::form_table`].
pub fn symmetric_table(terms: &[(Scalar, Form)]) -> Matrix {
    let n = terms[0].1.dim();
    let masks = basis_masks(n, 2);
    Matrix::from_fn(masks.len(), masks.len(), |r, c| {
        terms
            .iter()
            .map(|(k, f)| &(k * &f.coeff(masks[r])) * &f.coeff(masks[c]))
            .sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_is_flat() {
        let c = curvature(&LieAlgebra::abelian(5)).unwrap();
        assert!(c.is_flat() && c.is_einstein());
        assert!(c.scal.is_zero());
    }

    #[test]
    fn hyperbolic_plane_has_negative_curvature() {
        // de^2 = e^{12}: the solvable model of the hyperbolic plane
        let g = LieAlgebra::parse_salamon("(0,12)").unwrap();
        let c = curvature(&g).unwrap();
        assert_eq!(c.scal, Scalar::from_int(-2));
        assert!(c.is_einstein());
        assert!(c.bianchi_holds());
    }

    #[test]
    fn su2_has_positive_curvature() {
        let g = LieAlgebra::parse_salamon("(23,31,12)").unwrap();
        let c = curvature(&g).unwrap();
        assert!(c.scal.is_positive());
        assert!(c.is_einstein());
        assert!(c.ric.is_symmetric());
        assert!(c.bianchi_holds());
    }

    #[test]
    fn heisenberg_ricci() {
        let g = LieAlgebra::parse_salamon("(0,0,12)").unwrap();
        let c = curvature(&g).unwrap();
        let h = Scalar::ratio(1, 2);
        assert_eq!(c.ric[(0, 0)], -&h);
        assert_eq!(c.ric[(1, 1)], -&h);
        assert_eq!(c.ric[(2, 2)], h);
        assert!(c.bianchi_holds());
    }
}
