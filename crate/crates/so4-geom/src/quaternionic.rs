//! Sp(2)Sp(1)-structures on R ⊕ g: hyper-Kähler and HKT tests, the EH/KH split of the
//! intrinsic torsion, and infinitesimal deformations of Ω.

use thiserror::Error;

use crate::canon::{self, project_onto, quaternion_triple, so_basis, CanonicalForms, Subalgebra};
use crate::exterior::{endo_act, endo_to_two_form, Form};
use crate::liealg::{LieAlgebra, LieError};
use crate::linalg::{span_rank, Matrix};
use crate::scalar::Scalar;
use crate::torsion::{levi_civita, Connection};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuatError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("the 4-form is not closed")]
    NotClosed,
    #[error("structure must come from a 7-dimensional algebra")]
    WrongDimension,
}

#[derive(Debug, Clone)]
pub struct ProductStructure {
    pub g8: LieAlgebra,
    pub omega: Form,
    pub sigma: [Form; 3],
    pub i: [Matrix; 3],
}

/// R ⊕ g with the canonical Ω, σ_s in the adapted coframe (rows in native coordinates).
pub fn build_product(g7: &LieAlgebra, coframe: Option<&Matrix>) -> Result<ProductStructure, QuatError> {
    if g7.dim() != 7 {
        return Err(QuatError::WrongDimension);
    }
    let adapted = match coframe {
        Some(m) => g7.change_coframe(m)?,
        None => g7.clone(),
    };
    let c = CanonicalForms::new();
    Ok(ProductStructure {
        g8: adapted.product_with_line(),
        omega: c.big_omega,
        sigma: c.sigma,
        i: quaternion_triple(),
    })
}

impl ProductStructure {
    pub fn d_omega(&self) -> Form {
        self.g8.d(&self.omega)
    }

    pub fn d_sigma(&self) -> [Form; 3] {
        self.sigma.clone().map(|s| self.g8.d(&s))
    }
}

pub fn hyperkaehler_check(ps: &ProductStructure) -> bool {
    ps.d_sigma().iter().all(Form::is_zero)
}

/// (Iγ)(X,Y,Z) = −γ(IX,IY,IZ).
pub fn complex_action(i: &Matrix, gamma: &Form) -> Form {
    -gamma.pullback(i)
}

/// I₁dσ₁ = I₂dσ₂ = I₃dσ₃.
pub fn hkt_check(ps: &ProductStructure) -> bool {
    let ds = ps.d_sigma();
    let acted: Vec<Form> = ps.i.iter().zip(&ds).map(|(i, d)| complex_action(i, d)).collect();
    acted[0] == acted[1] && acted[1] == acted[2]
}

/// Whether every dσ_s lies in the ideal generated by σ₁, σ₂, σ₃.
pub fn sigma_ideal_is_differential(ps: &ProductStructure) -> bool {
    let gens: Vec<Vec<Scalar>> = ps
        .sigma
        .iter()
        .flat_map(|s| (1..=8).map(move |i| s.wedge(&Form::e(8, i)).coords(3)))
        .collect();
    let base = span_rank(&gens);
    ps.d_sigma().iter().all(|d| {
        let mut with = gens.clone();
        with.push(d.coords(3));
        span_rank(&with) == base
    })
}

/// sp(1) = span{I_s} and its centralizer sp(2) in so(8).
pub fn sp2sp1_subalg(_ps: &ProductStructure) -> (Subalgebra, Subalgebra) {
    canon::sp2sp1()
}

/// −ξ's skew-symmetrization split against the EH image.
#[derive(Debug, Clone)]
pub struct EhReport {
    pub xi: Connection,
    pub skew: Form,
    pub eh_part: Form,
    /// eh_part as a multiple of Σ w^s∧σ_s, when it is one
    pub coef: Option<Scalar>,
    pub remainder: Form,
    /// the remainder's KH component
    pub kh_part: Form,
    /// the remainder's ES³H component
    pub es3h_part: Form,
}

impl EhReport {
    pub fn remainder_in_kh(&self) -> bool {
        self.remainder == self.kh_part
    }
}

/// Span of (v⌟σ_s)∧σ_s over the frame vectors, as coordinate vectors in Λ³.
pub fn eh_image() -> Vec<Vec<Scalar>> {
    let sigma = CanonicalForms::new().sigma;
    (1..=8)
        .map(|j| {
            sigma
                .iter()
                .fold(Form::zero(8), |acc, s| &acc + &s.contract(j).wedge(s))
                .coords(3)
        })
        .collect()
}

/// The intrinsic torsion: the (sp(2)⊕sp(1))^⊥-part of the Levi-Civita connection.
pub fn intrinsic_torsion8(ps: &ProductStructure) -> Result<Connection, QuatError> {
    let (sp1, sp2) = canon::sp2sp1();
    let stab: Vec<Vec<Scalar>> = sp1
        .basis
        .iter()
        .chain(&sp2.basis)
        .map(|m| endo_to_two_form(m).expect("skew").coords(2))
        .collect();
    let nabla = levi_civita(&ps.g8)?;
    Ok(nabla.map(|c| c - &project_onto(c, 2, &stab)))
}

pub fn eh_component(ps: &ProductStructure) -> Result<EhReport, QuatError> {
    let xi = intrinsic_torsion8(ps)?;
    let skew = xi.alternation();
    let eh_part = project_onto(&skew, 3, &eh_image());
    let sigma = &ps.sigma;
    let reference = (0..3).fold(Form::zero(8), |acc, s| &acc + &Form::e(8, 5 + s).wedge(&sigma[s]));
    let c = &eh_part.inner(&reference) * &reference.norm_sq().inv().unwrap();
    let coef = (reference.scale(&c) == eh_part).then_some(c);
    let remainder = &skew - &eh_part;
    let kh_part = canon::sp2sp1_component(&remainder, "K", 1);
    let es3h_part = canon::sp2sp1_component(&remainder, "E", 3);
    Ok(EhReport {
        xi,
        skew,
        eh_part,
        coef,
        remainder,
        kh_part,
        es3h_part,
    })
}

/// dim({A·Ω : A ∈ so(8)} ∩ ker d).
pub fn infinitesimal_closed_dim(ps: &ProductStructure) -> Result<usize, QuatError> {
    if !ps.d_omega().is_zero() {
        return Err(QuatError::NotClosed);
    }
    let images: Vec<Form> = so_basis(8).iter().map(|a| endo_act(a, &ps.omega)).collect();
    let v: Vec<Vec<Scalar>> = images.iter().map(|f| f.coords(4)).collect();
    let dv: Vec<Vec<Scalar>> = images.iter().map(|f| ps.g8.d(f).coords(5)).collect();
    Ok(span_rank(&v) - span_rank(&dv))
}

/// The traceless part of ric commuting with every I_s.
pub fn sp1_commuting_traceless_ricci(ric: &Matrix) -> Matrix {
    let n = ric.rows();
    let trace = ric.trace() * Scalar::ratio(1, n as i64);
    let traceless = ric.sub(&Matrix::identity(n).scale(&trace));
    // average over the quaternion group {±1, ±I_s}: X ↦ ¼(X + Σ I_s X I_sᵀ)
    let mut avg = traceless.clone();
    for i in quaternion_triple() {
        avg = avg.add(&i.mul(&traceless).mul(&i.transpose()));
    }
    avg.scale(&Scalar::ratio(1, 4))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_product() {
        let ps = build_product(&LieAlgebra::abelian(7), None).unwrap();
        assert!(hyperkaehler_check(&ps) && hkt_check(&ps) && sigma_ideal_is_differential(&ps));
        let eh = eh_component(&ps).unwrap();
        assert!(eh.skew.is_zero());
        assert_eq!(eh.coef, Some(Scalar::zero()));
        assert_eq!(infinitesimal_closed_dim(&ps).unwrap(), 15);
    }

    #[test]
    fn eh_image_is_eight_dimensional() {
        assert_eq!(span_rank(&eh_image()), 8);
    }

    #[test]
    fn omega_squared_is_positive_volume() {
        let ps = build_product(&LieAlgebra::abelian(7), None).unwrap();
        let top = ps.omega.wedge(&ps.omega);
        assert!(top.coeff_of(&[1, 2, 3, 4, 5, 6, 7, 8]).is_positive());
    }
}
