//! Canonical SO(4)- and Sp(2)Sp(1)-forms, stabilizers, invariant forms and
//! Casimir isotypic decompositions.

use thiserror::Error;

use crate::exterior::{basis_masks, endo_act, two_form_to_endo, Form};
use crate::linalg::{span_rank, Matrix};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CanonError {
    #[error("the two triples do not commute")]
    NonCommuting,
    #[error("rescaling factor must be nonzero")]
    ZeroScale,
    #[error("eigenspaces of the Casimir operators do not exhaust the space ({found} of {total})")]
    Incomplete { found: usize, total: usize },
    #[error("unknown canonical form `{0}`")]
    UnknownName(String),
}

fn f7(text: &str) -> Form {
    Form::parse(7, text).expect("canonical literal")
}

fn f8(text: &str) -> Form {
    Form::parse(8, text).expect("canonical literal")
}

/// The forms ω_s, ϖ_s on the base, α, β, υ, *υ in dimension 7 and σ_s, Ω in dimension 8.
#[derive(Debug, Clone)]
pub struct CanonicalForms {
    pub alpha: Form,
    pub beta: Form,
    pub omega: [Form; 3],
    pub varpi: [Form; 3],
    pub upsilon: Form,
    pub star_upsilon: Form,
    pub sigma: [Form; 3],
    pub big_omega: Form,
}

/// w^1, w^2, w^3 as 1-forms in dimension 7.
pub fn fibre_coframe() -> [Form; 3] {
    [Form::e(7, 5), Form::e(7, 6), Form::e(7, 7)]
}

/// w^{23}, w^{31}, w^{12}.
pub fn fibre_pairs() -> [Form; 3] {
    [f7("67"), f7("75"), f7("56")]
}

pub fn omegas() -> [Form; 3] {
    [f7("12 - 34"), f7("13 - 42"), f7("14 - 23")]
}

pub fn varpis() -> [Form; 3] {
    [f7("12 + 34"), f7("13 + 42"), f7("14 + 23")]
}

/// Σ ω_s∧w^s − 3λ³w^{123} and −λ²Σ ω_s∧w^{s+1,s+2} − 3e^{1234}.
fn alpha_beta(scale: &Scalar) -> (Form, Form) {
    let omega = omegas();
    let w = fibre_coframe();
    let pairs = fibre_pairs();
    let mut alpha = f7("567").scale(&(Scalar::from_int(-3) * scale.pow(3)));
    let mut beta = f7("1234").scale(&Scalar::from_int(-3));
    let sq = scale * scale;
    for s in 0..3 {
        alpha.add_scaled(&omega[s].wedge(&w[s]), scale);
        beta.add_scaled(&omega[s].wedge(&pairs[s]), &-&sq);
    }
    (alpha, beta)
}

impl CanonicalForms {
    pub fn new() -> Self {
        let (alpha, beta) = alpha_beta(&Scalar::one());
        let omega = omegas();
        let sigma = [
            &omega[0].extend_dim(8) + &f8("58 - 67"),
            &omega[1].extend_dim(8) + &f8("68 - 75"),
            &omega[2].extend_dim(8) + &f8("78 - 56"),
        ];
        let big_omega = &alpha.extend_dim(8).wedge(&Form::e(8, 8)) + &beta.extend_dim(8);
        CanonicalForms {
            alpha,
            beta,
            omega,
            varpi: varpis(),
            upsilon: f7("1234"),
            star_upsilon: f7("567"),
            sigma,
            big_omega,
        }
    }

    /// Looks up a form by its command-line identifier.
    pub fn by_name(&self, name: &str) -> Result<&Form, CanonError> {
        Ok(match name {
            "alpha" => &self.alpha,
            "beta" => &self.beta,
            "Omega" => &self.big_omega,
            "upsilon" => &self.upsilon,
            "star_upsilon" => &self.star_upsilon,
            "sigma1" => &self.sigma[0],
            "sigma2" => &self.sigma[1],
            "sigma3" => &self.sigma[2],
            "omega1" => &self.omega[0],
            "omega2" => &self.omega[1],
            "omega3" => &self.omega[2],
            "varpi1" => &self.varpi[0],
            "varpi2" => &self.varpi[1],
            "varpi3" => &self.varpi[2],
            _ => return Err(CanonError::UnknownName(name.to_string())),
        })
    }

    pub const NAMES: [&'static str; 14] = [
        "alpha",
        "beta",
        "Omega",
        "upsilon",
        "star_upsilon",
        "sigma1",
        "sigma2",
        "sigma3",
        "omega1",
        "omega2",
        "omega3",
        "varpi1",
        "varpi2",
        "varpi3",
    ];
}

impl Default for CanonicalForms {
    fn default() -> Self {
        Self::new()
    }
}

/// The pair (α̃, β̃) after rescaling the fibre by λ.
pub fn rescale_structure(lambda: &Scalar) -> Result<(Form, Form), CanonError> {
    if lambda.is_zero() {
        return Err(CanonError::ZeroScale);
    }
    Ok(alpha_beta(lambda))
}

/// A Lie subalgebra of gl(n) given by a basis of matrices.
#[derive(Debug, Clone)]
pub struct Subalgebra {
    pub n: usize,
    pub basis: Vec<Matrix>,
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

impl Subalgebra {
    pub fn new(n: usize, basis: Vec<Matrix>) -> Self {
        Subalgebra { n, basis }
    }

    pub fn dim(&self) -> usize {
        span_rank(&self.basis.iter().map(flatten).collect::<Vec<_>>())
    }

    pub fn contains(&self, x: &Matrix) -> bool {
        let mut vs: Vec<Vec<Scalar>> = self.basis.iter().map(flatten).collect();
        let before = span_rank(&vs);
        vs.push(flatten(x));
        span_rank(&vs) == before
    }

    pub fn is_closed(&self) -> bool {
        self.basis
            .iter()
            .enumerate()
            .all(|(i, x)| self.basis[i + 1..].iter().all(|y| self.contains(&x.commutator(y))))
    }

    pub fn is_skew(&self) -> bool {
        self.basis.iter().all(Matrix::is_skew)
    }

    /// Whether both subalgebras span the same space.
    pub fn same_span(&self, other: &Subalgebra) -> bool {
        let d = self.dim();
        if d != other.dim() {
            return false;
        }
        let all: Vec<Vec<Scalar>> = self.basis.iter().chain(other.basis.iter()).map(flatten).collect();
        span_rank(&all) == d
    }

    pub fn intersect_so(&self) -> Subalgebra {
        // x = Σ c_a X_a with x + xᵀ = 0
        let cols: Vec<Vec<Scalar>> = self.basis.iter().map(|x| flatten(&x.add(&x.transpose()))).collect();
        let kernel = Matrix::from_columns(self.n * self.n, &cols).nullspace();
        Subalgebra::new(self.n, combine(&self.basis, &kernel))
    }
}

fn combine(basis: &[Matrix], coeffs: &[Vec<Scalar>]) -> Vec<Matrix> {
    coeffs
        .iter()
        .map(|c| {
            let n = basis[0].rows();
            let mut m = Matrix::zeros(n, n);
            for (x, k) in basis.iter().zip(c) {
                if !k.is_zero() {
                    m = m.add(&x.scale(k));
                }
            }
            m
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    Gl,
    So,
}

fn ambient_basis(n: usize, ambient: Ambient) -> Vec<Matrix> {
    match ambient {
        Ambient::Gl => (0..n * n)
            .map(|k| {
                let mut m = Matrix::zeros(n, n);
                m[(k / n, k % n)] = Scalar::one();
                m
            })
            .collect(),
        Ambient::So => so_basis(n),
    }
}

/// The endomorphisms corresponding to e^{ij}, i < j, in lexicographic order.
pub fn so_basis(n: usize) -> Vec<Matrix> {
    basis_masks(n, 2)
        .into_iter()
        .map(|m| two_form_to_endo(&Form::monomial(n, m, Scalar::one())).unwrap())
        .collect()
}

/// Elements of the ambient algebra annihilating every form in the list.
pub fn stabilizer(forms: &[Form], ambient: Ambient) -> Subalgebra {
    let n = forms[0].dim();
    let basis = ambient_basis(n, ambient);
    let cols: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|x| {
            forms
                .iter()
                .flat_map(|f| {
                    let k = f.degree().unwrap_or(0);
                    endo_act(x, f).coords(k)
                })
                .collect()
        })
        .collect();
    let rows = cols[0].len();
    let kernel = Matrix::from_columns(rows, &cols).nullspace();
    Subalgebra::new(n, combine(&basis, &kernel))
}

/// The so(4) ⊂ so(7) spanned by ϖ_s and ω_s − 2w^{s+1,s+2}, as 2-forms.
pub fn so4_generators() -> Vec<Form> {
    let pairs = fibre_pairs();
    let mut gens: Vec<Form> = varpis().to_vec();
    for (om, p) in omegas().iter().zip(&pairs) {
        gens.push(om - &p.scale(&Scalar::from_int(2)));
    }
    gens
}

pub fn so4() -> Subalgebra {
    Subalgebra::new(
        7,
        so4_generators().iter().map(|g| two_form_to_endo(g).unwrap()).collect(),
    )
}

/// The two commuting sp(1) factors of so(4): (ϖ-triple, fibre-acting triple).
pub fn so4_factors() -> (Vec<Matrix>, Vec<Matrix>) {
    let gens: Vec<Matrix> = so4().basis;
    (gens[..3].to_vec(), gens[3..].to_vec())
}

/// Matrix of the induced action of an endomorphism on Λ^k (lexicographic basis).
pub fn form_rep(x: &Matrix, k: usize) -> Matrix {
    let n = x.rows();
    let masks = basis_masks(n, k);
    let cols: Vec<Vec<Scalar>> = masks
        .iter()
        .map(|&m| endo_act(x, &Form::monomial(n, m, Scalar::one())).coords(k))
        .collect();
    Matrix::from_columns(masks.len(), &cols)
}

/// Kernel of the action of h on Λ^k.
pub fn invariant_forms(h: &Subalgebra, k: usize) -> Vec<Form> {
    let mut stacked: Option<Matrix> = None;
    for x in &h.basis {
        let r = form_rep(x, k);
        stacked = Some(match stacked {
            None => r,
            Some(s) => s.vstack(&r),
        });
    }
    let Some(m) = stacked else {
        return basis_masks(h.n, k)
            .into_iter()
            .map(|mask| Form::monomial(h.n, mask, Scalar::one()))
            .collect();
    };
    m.nullspace().iter().map(|v| Form::from_coords(h.n, k, v)).collect()
}

/// The action a ⊗ 1 + 1 ⊗ b on a tensor product, basis index i·dim(b) + j.
pub fn kron_sum(a: &Matrix, b: &Matrix) -> Matrix {
    let (p, q) = (a.rows(), b.rows());
    let mut out = Matrix::zeros(p * q, p * q);
    for i in 0..p {
        for k in 0..p {
            let v = &a[(i, k)];
            if v.is_zero() {
                continue;
            }
            for j in 0..q {
                out[(i * q + j, k * q + j)] += v;
            }
        }
    }
    for i in 0..p {
        for j in 0..q {
            for l in 0..q {
                let v = &b[(j, l)];
                if !v.is_zero() {
                    out[(i * q + j, i * q + l)] += v;
                }
            }
        }
    }
    out
}

/// Action of a 2-form endomorphism on a mutually orthogonal family of invariant 2-forms,
/// expressed in that family.
pub fn restrict_orthogonal(x: &Matrix, basis: &[Form]) -> Matrix {
    let norms: Vec<Scalar> = basis.iter().map(|b| b.norm_sq().inv().unwrap()).collect();
    let mut out = Matrix::zeros(basis.len(), basis.len());
    for (j, b) in basis.iter().enumerate() {
        let img = endo_act(x, b);
        for (i, c) in basis.iter().enumerate() {
            let v = img.inner(c);
            if !v.is_zero() {
                out[(i, j)] = &v * &norms[i];
            }
        }
    }
    out
}

/// Casimir operator Σ (G⁻¹)_ab ρ(X_a)ρ(X_b), with G the trace form of the defining matrices.
pub fn casimir(defining: &[Matrix], rep: &[Matrix]) -> Matrix {
    let m = defining.len();
    let gram = Matrix::from_fn(m, m, |a, b| defining[a].mul(&defining[b]).trace());
    let ginv = gram.inverse().expect("nondegenerate trace form");
    let n = rep[0].rows();
    let mut c = Matrix::zeros(n, n);
    for a in 0..m {
        for b in 0..m {
            let g = &ginv[(a, b)];
            if !g.is_zero() {
                c = c.add(&rep[a].mul(&rep[b]).scale(g));
            }
        }
    }
    c
}

pub fn check_commuting(plus: &[Matrix], minus: &[Matrix]) -> Result<(), CanonError> {
    for x in plus {
        for y in minus {
            if !x.commutator(y).is_zero() {
                return Err(CanonError::NonCommuting);
            }
        }
    }
    Ok(())
}

/// A simultaneous eigenspace of two commuting Casimirs: indices into the candidate lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotypicBlock {
    pub plus: usize,
    pub minus: usize,
    pub dim: usize,
}

fn shifted(c: &Matrix, lambda: &Scalar) -> Matrix {
    c.sub(&Matrix::identity(c.rows()).scale(lambda))
}

/// Simultaneous eigenspace dimensions for the candidate eigenvalue pairs.
pub fn isotypic_blocks(
    c_plus: &Matrix,
    c_minus: &Matrix,
    cand_plus: &[Scalar],
    cand_minus: &[Scalar],
) -> Result<Vec<IsotypicBlock>, CanonError> {
    let total = c_plus.rows();
    let mut blocks = Vec::new();
    let mut found = 0;
    for (i, lp) in cand_plus.iter().enumerate() {
        let kernel = shifted(c_plus, lp).nullspace();
        if kernel.is_empty() {
            continue;
        }
        let kmat = Matrix::from_columns(total, &kernel);
        for (j, lm) in cand_minus.iter().enumerate() {
            let image = shifted(c_minus, lm).mul(&kmat);
            let dim = kernel.len() - image.rank();
            if dim > 0 {
                found += dim;
                blocks.push(IsotypicBlock { plus: i, minus: j, dim });
            }
        }
    }
    if found != total {
        return Err(CanonError::Incomplete { found, total });
    }
    Ok(blocks)
}

/// An S^{p,q} summand with multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct So4Summand {
    pub p: usize,
    pub q: usize,
    pub mult: usize,
}

impl std::fmt::Display for So4Summand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = if self.p == 0 && self.q == 0 {
            "R".to_string()
        } else {
            format!("S^{{{},{}}}", self.p, self.q)
        };
        if self.mult == 1 {
            write!(f, "{name}")
        } else {
            write!(f, "{}{name}", self.mult)
        }
    }
}

const MAX_SPIN: usize = 8;

/// Decomposes a representation of so(4) given by the images of the ϖ-triple and the
/// fibre-acting triple. Labels are calibrated by T = S^{1,1} ⊕ S^{0,2}.
pub fn so4_isotypic(rep_plus: &[Matrix], rep_minus: &[Matrix]) -> Result<Vec<So4Summand>, CanonError> {
    let (plus, minus) = so4_factors();
    check_commuting(&plus, &minus)?;
    // Casimir of sp(1) on S^p is κ·p(p+2); on T the traces are 12κ₊ and 36κ₋
    let kappa_plus = casimir(&plus, &plus).trace() * Scalar::ratio(1, 12);
    let kappa_minus = casimir(&minus, &minus).trace() * Scalar::ratio(1, 36);
    let cand = |kappa: &Scalar| -> Vec<Scalar> {
        (0..=MAX_SPIN)
            .map(|p| kappa * &Scalar::from_int((p * (p + 2)) as i64))
            .collect()
    };
    let c_plus = casimir(&plus, rep_plus);
    let c_minus = casimir(&minus, rep_minus);
    let blocks = isotypic_blocks(&c_plus, &c_minus, &cand(&kappa_plus), &cand(&kappa_minus))?;
    let mut out: Vec<So4Summand> = blocks
        .into_iter()
        .map(|b| So4Summand {
            p: b.plus,
            q: b.minus,
            mult: b.dim / ((b.plus + 1) * (b.minus + 1)),
        })
        .collect();
    out.sort();
    Ok(out)
}

/// so(4)-isotypic decomposition of Λ^k T*.
pub fn so4_isotypic_forms(k: usize) -> Result<Vec<So4Summand>, CanonError> {
    let (plus, minus) = so4_factors();
    let rp: Vec<Matrix> = plus.iter().map(|x| form_rep(x, k)).collect();
    let rm: Vec<Matrix> = minus.iter().map(|x| form_rep(x, k)).collect();
    so4_isotypic(&rp, &rm)
}

/// A mutually orthogonal basis of so(4)^⊥ ⊂ Λ²: the mixed monomials e^{i}∧w^{s}
/// followed by ω_s + w^{s+1,s+2}.
pub fn so4_perp_basis() -> Vec<Form> {
    let mut out = Vec::new();
    for i in 1..=4 {
        for s in 5..=7 {
            out.push(Form::basis(7, &[i, s]));
        }
    }
    for (om, p) in omegas().iter().zip(&fibre_pairs()) {
        out.push(om + p);
    }
    out
}

/// so(4)-isotypic decomposition of T*⊗so(4)^⊥.
pub fn so4_isotypic_torsion_space() -> Result<Vec<So4Summand>, CanonError> {
    let (plus, minus) = so4_factors();
    let perp = so4_perp_basis();
    let rep = |x: &Matrix| kron_sum(&form_rep(x, 1), &restrict_orthogonal(x, &perp));
    let rp: Vec<Matrix> = plus.iter().map(rep).collect();
    let rm: Vec<Matrix> = minus.iter().map(rep).collect();
    so4_isotypic(&rp, &rm)
}

/// The almost complex structures I_s, with σ_s corresponding to −I_s, so I₁I₂ = I₃.
pub fn quaternion_triple() -> [Matrix; 3] {
    let c = CanonicalForms::new();
    c.sigma
        .clone()
        .map(|s| two_form_to_endo(&s).unwrap().scale(&Scalar::from_int(-1)))
}

/// sp(1) = span{I_s} and its centralizer sp(2) in so(8).
pub fn sp2sp1() -> (Subalgebra, Subalgebra) {
    let triple = quaternion_triple();
    let basis = so_basis(8);
    let cols: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|x| triple.iter().flat_map(|i| flatten(&x.commutator(i))).collect())
        .collect();
    let kernel = Matrix::from_columns(3 * 64, &cols).nullspace();
    (
        Subalgebra::new(8, triple.to_vec()),
        Subalgebra::new(8, combine(&basis, &kernel)),
    )
}

/// Irreducible sp(2)-modules by (name, complex dimension, Casimir on E normalised to 5).
pub const SP2_IRREPS: [(&str, usize, i64); 5] = [("1", 1, 0), ("E", 4, 5), ("L", 5, 8), ("S2E", 10, 12), ("K", 16, 15)];

/// An sp(2)⊕sp(1) summand [V ⊗ S^p H] with its real dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuatBlock {
    pub sp2: &'static str,
    pub p: usize,
    pub dim: usize,
}

impl std::fmt::Display for QuatBlock {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let h = match self.p {
            0 => String::new(),
            1 => "H".into(),
            p => format!("S{p}H"),
        };
        let v = if self.sp2 == "1" && !h.is_empty() { "" } else { self.sp2 };
        write!(f, "{v}{h}({})", self.dim)
    }
}

/// sp(2)⊕sp(1) decomposition of Λ^k R⁸, calibrated on R⁸ = EH.
pub fn sp2sp1_isotypic_forms(k: usize) -> Result<Vec<QuatBlock>, CanonError> {
    let (sp1, sp2) = sp2sp1();
    check_commuting(&sp2.basis, &sp1.basis)?;
    // traces on R⁸: 8·5c for sp(2), 8·3κ for sp(1)
    let c = casimir(&sp2.basis, &sp2.basis).trace() * Scalar::ratio(1, 40);
    let kappa = casimir(&sp1.basis, &sp1.basis).trace() * Scalar::ratio(1, 24);
    let cand_sp2: Vec<Scalar> = SP2_IRREPS.iter().map(|(_, _, e)| &c * &Scalar::from_int(*e)).collect();
    let cand_sp1: Vec<Scalar> = (0..=4)
        .map(|p| &kappa * &Scalar::from_int((p * (p + 2)) as i64))
        .collect();
    let r2: Vec<Matrix> = sp2.basis.iter().map(|x| form_rep(x, k)).collect();
    let r1: Vec<Matrix> = sp1.basis.iter().map(|x| form_rep(x, k)).collect();
    let blocks = isotypic_blocks(
        &casimir(&sp2.basis, &r2),
        &casimir(&sp1.basis, &r1),
        &cand_sp2,
        &cand_sp1,
    )?;
    Ok(blocks
        .into_iter()
        .map(|b| QuatBlock {
            sp2: SP2_IRREPS[b.plus].0,
            p: b.minus,
            dim: b.dim,
        })
        .collect())
}

/// Casimir eigen-projection: the component of a k-form in the (sp2 label, p) block.
pub fn sp2sp1_component(gamma: &Form, sp2_label: &str, p: usize) -> Form {
    let k = gamma.degree().unwrap_or(0);
    let (sp1, sp2) = sp2sp1();
    let c = casimir(&sp2.basis, &sp2.basis).trace() * Scalar::ratio(1, 40);
    let kappa = casimir(&sp1.basis, &sp1.basis).trace() * Scalar::ratio(1, 24);
    let r2: Vec<Matrix> = sp2.basis.iter().map(|x| form_rep(x, k)).collect();
    let r1: Vec<Matrix> = sp1.basis.iter().map(|x| form_rep(x, k)).collect();
    let c2 = casimir(&sp2.basis, &r2);
    let c1 = casimir(&sp1.basis, &r1);
    let target2 = SP2_IRREPS
        .iter()
        .find(|(n, _, _)| *n == sp2_label)
        .map(|(_, _, e)| *e)
        .unwrap_or(0);
    let l2 = &c * &Scalar::from_int(target2);
    let l1 = &kappa * &Scalar::from_int((p * (p + 2)) as i64);
    let m = shifted(&c2, &l2).vstack(&shifted(&c1, &l1));
    let block = m.nullspace();
    project_onto(gamma, k, &block)
}

/// Orthogonal projection of a k-form onto the span of coordinate vectors.
pub fn project_onto(gamma: &Form, k: usize, span: &[Vec<Scalar>]) -> Form {
    let n = gamma.dim();
    if span.is_empty() {
        return Form::zero(n);
    }
    let forms: Vec<Form> = span.iter().map(|v| Form::from_coords(n, k, v)).collect();
    let m = forms.len();
    let gram = Matrix::from_fn(m, m, |i, j| forms[i].inner(&forms[j]));
    let rhs: Vec<Scalar> = forms.iter().map(|f| f.inner(gamma)).collect();
    let coeffs = gram.solve(&rhs).expect("independent span");
    let mut out = Form::zero(n);
    for (f, c) in forms.iter().zip(&coeffs) {
        out.add_scaled(f, c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_coefficients() {
        let c = CanonicalForms::new();
        assert_eq!(c.alpha.coeff_of(&[5, 6, 7]), Scalar::from_int(-3));
        assert_eq!(c.beta.coeff_of(&[1, 2, 3, 4]), Scalar::from_int(-3));
        let half_sum = c
            .sigma
            .iter()
            .fold(Form::zero(8), |acc, s| &acc + &s.wedge(s))
            .scale(&Scalar::ratio(1, 2));
        assert_eq!(half_sum, c.big_omega);
    }

    #[test]
    fn alpha_star_is_beta() {
        let c = CanonicalForms::new();
        assert_eq!(c.alpha.hodge_star().unwrap(), c.beta);
        let top = c.alpha.wedge(&c.beta);
        assert_eq!(top, Form::volume(7).scale(&Scalar::from_int(15)));
        assert_eq!(c.alpha.norm_sq(), Scalar::from_int(15));
    }

    #[test]
    fn quaternion_relations() {
        let [i1, i2, i3] = quaternion_triple();
        let minus_id = Matrix::identity(8).scale(&Scalar::from_int(-1));
        for i in [&i1, &i2, &i3] {
            assert_eq!(i.mul(i), minus_id);
        }
        assert_eq!(i1.mul(&i2), i3);
    }

    #[test]
    fn so4_annihilates_pair() {
        let c = CanonicalForms::new();
        for x in so4().basis {
            assert!(endo_act(&x, &c.alpha).is_zero());
            assert!(endo_act(&x, &c.beta).is_zero());
        }
        assert!(so4().is_closed());
    }

    #[test]
    fn stabilizer_of_alpha_is_nonsemisimple_in_so7() {
        let c = CanonicalForms::new();
        let h = stabilizer(std::slice::from_ref(&c.alpha), Ambient::Gl);
        assert_eq!(h.dim(), 14);
        assert!(h.is_closed());
        assert_eq!(h.intersect_so().dim(), 6);
    }

    #[test]
    fn rescaling_matches_fibre_pullback() {
        let lambda = Scalar::from_int(2);
        let (a, b) = rescale_structure(&lambda).unwrap();
        assert_eq!(a.coeff_of(&[5, 6, 7]), Scalar::from_int(-24));
        let scale = Matrix::from_fn(7, 7, |i, j| {
            if i != j {
                Scalar::zero()
            } else if i >= 4 {
                lambda.clone()
            } else {
                Scalar::one()
            }
        });
        let c = CanonicalForms::new();
        assert_eq!(c.alpha.pullback(&scale), a);
        assert_eq!(c.beta.pullback(&scale), b);
        let (a1, b1) = rescale_structure(&Scalar::one()).unwrap();
        assert_eq!((a1, b1), (c.alpha, c.beta));
        assert_eq!(rescale_structure(&Scalar::zero()), Err(CanonError::ZeroScale));
    }

    #[test]
    fn perp_basis_is_orthogonal_complement() {
        let perp = so4_perp_basis();
        let gens = so4_generators();
        assert_eq!(perp.len(), 15);
        for (i, p) in perp.iter().enumerate() {
            for g in &gens {
                assert!(p.inner(g).is_zero());
            }
            for q in &perp[i + 1..] {
                assert!(p.inner(q).is_zero());
            }
        }
    }

    #[test]
    fn tangent_space_labels() {
        let got = so4_isotypic_forms(1).unwrap();
        assert_eq!(
            got,
            vec![So4Summand { p: 0, q: 2, mult: 1 }, So4Summand { p: 1, q: 1, mult: 1 }]
        );
    }

    #[test]
    fn kron_sum_is_derivation() {
        let a = Matrix::from_rows(vec![vec![Scalar::zero(), Scalar::one()], vec![Scalar::zero(); 2]]);
        let b = Matrix::identity(3);
        let k = kron_sum(&a, &b);
        assert_eq!(k.rows(), 6);
        assert_eq!(k[(0, 0)], Scalar::one());
        assert_eq!(k[(0, 3)], Scalar::one());
    }
}
