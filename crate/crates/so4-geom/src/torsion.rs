//! Levi-Civita connections, intrinsic torsion of SO(4)-structures and the invariant-torsion
//! families.

use thiserror::Error;

use crate::canon::{self, fibre_coframe, fibre_pairs, omegas, so4_generators, so4_perp_basis, varpis, CanonicalForms};
use crate::exterior::{basis_masks, endo_act, endo_to_two_form, two_form_to_endo, Form};
use crate::liealg::{LieAlgebra, LieError};
use crate::linalg::{span_rank, Matrix};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorsionError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("torsion is not invariant")]
    NotInvariant,
    #[error("parameters violate pq = 0 = pr = r(q+2r)")]
    ConstraintViolated,
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("structure must be 7-dimensional")]
    WrongDimension,
}

/// An element Σ e^i ⊗ comps[i] of T*⊗Λ², read as T*⊗so(n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    pub comps: Vec<Form>,
}

impl Connection {
    pub fn zero(n: usize) -> Self {
        Connection {
            comps: vec![Form::zero(n); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Form::is_zero)
    }

    pub fn endo(&self, i: usize) -> Matrix {
        two_form_to_endo(&self.comps[i]).expect("2-form components")
    }

    /// a(x·γ) = Σ e^i ∧ (x_i · γ).
    pub fn act_alternate(&self, gamma: &Form) -> Form {
        let n = self.dim();
        let mut out = Form::zero(n);
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let acted = endo_act(&self.endo(i), gamma);
            out = &out + &Form::e(n, i + 1).wedge(&acted);
        }
        out
    }

    /// The skew-symmetrization Σ e^i ∧ comps[i] ∈ Λ³.
    pub fn alternation(&self) -> Form {
        let n = self.dim();
        self.comps
            .iter()
            .enumerate()
            .fold(Form::zero(n), |acc, (i, c)| &acc + &Form::e(n, i + 1).wedge(c))
    }

    pub fn map(&self, f: impl Fn(&Form) -> Form) -> Connection {
        Connection {
            comps: self.comps.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Connection {
        self.map(|f| f.scale(c))
    }

    pub fn add(&self, other: &Connection) -> Connection {
        Connection {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn coords(&self) -> Vec<Scalar> {
        self.comps.iter().flat_map(|c| c.coords(2)).collect()
    }
}

impl std::fmt::Display for Connection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("e{} (x) ({})", i + 1, c))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Γ_i with Γ_i[k][j] = ½(c_ij^k − c_jk^i + c_ki^j), so that dγ = Σ e^i ∧ (Γ_i·γ).
pub fn levi_civita_endos(g: &LieAlgebra) -> Result<Vec<Matrix>, LieError> {
    g.require_jacobi()?;
    let n = g.dim();
    let half = Scalar::ratio(1, 2);
    Ok((0..n)
        .map(|i| {
            Matrix::from_fn(n, n, |k, j| {
                let v = g.structure_constant(i, j, k) - g.structure_constant(j, k, i) + g.structure_constant(k, i, j);
                &v * &half
            })
        })
        .collect())
}

pub fn levi_civita(g: &LieAlgebra) -> Result<Connection, LieError> {
    Ok(Connection {
        comps: levi_civita_endos(g)?
            .iter()
            .map(|m| endo_to_two_form(m).expect("metric connection"))
            .collect(),
    })
}

/// Orthogonal projection of a 2-form onto so(4) and its complement.
pub fn so4_split(omega: &Form) -> (Form, Form) {
    let mut part = Form::zero(7);
    for g in so4_generators() {
        let c = &omega.inner(&g) * &g.norm_sq().inv().unwrap();
        part.add_scaled(&g, &c);
    }
    let perp = omega - &part;
    (part, perp)
}

pub fn perp_projection(x: &Connection) -> Connection {
    x.map(|c| so4_split(c).1)
}

/// Coordinates of an element of T*⊗so(4)^⊥ in the orthogonal basis e^i ⊗ b_m.
pub fn perp_coords(x: &Connection) -> Vec<Scalar> {
    let basis = so4_perp_basis();
    let norms: Vec<Scalar> = basis.iter().map(|b| b.norm_sq().inv().unwrap()).collect();
    x.comps
        .iter()
        .flat_map(|c| {
            basis
                .iter()
                .zip(&norms)
                .map(|(b, n)| &c.inner(b) * n)
                .collect::<Vec<_>>()
        })
        .collect()
}

pub fn from_perp_coords(v: &[Scalar]) -> Connection {
    let basis = so4_perp_basis();
    let m = basis.len();
    Connection {
        comps: (0..7)
            .map(|i| {
                let mut f = Form::zero(7);
                for (b, c) in basis.iter().zip(&v[i * m..(i + 1) * m]) {
                    f.add_scaled(b, c);
                }
                f
            })
            .collect(),
    }
}

/// Σ_s w^s ⊗ (w_s ⌟ w^{123}).
pub fn tau2() -> Connection {
    let mut x = Connection::zero(7);
    let w123 = Form::basis(7, &[5, 6, 7]);
    for s in 0..3 {
        x.comps[4 + s] = w123.contract(5 + s);
    }
    x
}

/// Σ_i e^i ⊗ (e_i ⌟ α) + τ₂.
pub fn tau1() -> Connection {
    let alpha = CanonicalForms::new().alpha;
    let raw = Connection {
        comps: (1..=7).map(|i| alpha.contract(i)).collect(),
    };
    raw.add(&tau2())
}

#[derive(Debug, Clone)]
pub struct IntrinsicTorsion {
    pub xi: Connection,
    pub in_w: bool,
    /// (λ, μ) with ξ = λπτ₁ + μπτ₂, when invariant
    pub lambda_mu: Option<(Scalar, Scalar)>,
}

impl IntrinsicTorsion {
    pub fn invariant(&self) -> bool {
        self.lambda_mu.is_some()
    }
}

/// Solves x = λ·u + μ·v exactly.
fn solve_pair(x: &Connection, u: &Connection, v: &Connection) -> Option<(Scalar, Scalar)> {
    let target = x.coords();
    let m = Matrix::from_columns(target.len(), &[u.coords(), v.coords()]);
    let sol = m.solve(&target)?;
    Some((sol[0].clone(), sol[1].clone()))
}

pub fn intrinsic_torsion(g: &LieAlgebra) -> Result<IntrinsicTorsion, TorsionError> {
    if g.dim() != 7 {
        return Err(TorsionError::WrongDimension);
    }
    let xi = perp_projection(&levi_civita(g)?);
    let c = CanonicalForms::new();
    let in_w = xi.act_alternate(&c.alpha).is_zero() && xi.act_alternate(&c.beta).is_zero();
    let lambda_mu = solve_pair(&xi, &perp_projection(&tau1()), &perp_projection(&tau2()));
    Ok(IntrinsicTorsion { xi, in_w, lambda_mu })
}

#[derive(Debug, Clone)]
pub struct HarmonicReport {
    pub adapted: LieAlgebra,
    pub dalpha: Form,
    pub dbeta: Form,
    pub dupsilon: Form,
    pub dstar_upsilon: Form,
}

impl HarmonicReport {
    pub fn harmonic(&self) -> bool {
        self.dalpha.is_zero() && self.dbeta.is_zero()
    }
}

/// Rewrites g in the adapted coframe (rows in native coordinates) and differentiates the
/// canonical forms.
pub fn harmonic_check(g: &LieAlgebra, coframe: Option<&Matrix>) -> Result<HarmonicReport, TorsionError> {
    if g.dim() != 7 {
        return Err(TorsionError::WrongDimension);
    }
    let adapted = match coframe {
        Some(m) => g.change_coframe(m)?,
        None => g.clone(),
    };
    let c = CanonicalForms::new();
    Ok(HarmonicReport {
        dalpha: adapted.d(&c.alpha),
        dbeta: adapted.d(&c.beta),
        dupsilon: adapted.d(&c.upsilon),
        dstar_upsilon: adapted.d(&c.star_upsilon),
        adapted,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankReport {
    /// rank of e^i⊗A ↦ (e^i∧A·α, e^i∧A·β) on T*⊗so(7)
    pub rank_full: usize,
    /// kernel of the same map on T*⊗so(4)^⊥
    pub kernel_perp: usize,
    pub rank_upsilon_on_w: usize,
    pub rank_star_upsilon_on_w: usize,
    /// dim of W ∩ span{πτ₁, πτ₂}
    pub w_meets_invariant: usize,
}

fn elementary(i: usize, f: &Form) -> Connection {
    let mut x = Connection::zero(7);
    x.comps[i] = f.clone();
    x
}

/// A basis of W ⊂ T*⊗so(4)^⊥.
pub fn module_w_basis() -> Vec<Connection> {
    let c = CanonicalForms::new();
    let perp = so4_perp_basis();
    let domain: Vec<Connection> = (0..7)
        .flat_map(|i| perp.iter().map(move |b| elementary(i, b)))
        .collect();
    let cols: Vec<Vec<Scalar>> = domain
        .iter()
        .map(|x| {
            let mut v = x.act_alternate(&c.alpha).coords(4);
            v.extend(x.act_alternate(&c.beta).coords(5));
            v
        })
        .collect();
    let kernel = Matrix::from_columns(56, &cols).nullspace();
    kernel
        .iter()
        .map(|k| {
            let mut x = Connection::zero(7);
            for (d, c) in domain.iter().zip(k) {
                if !c.is_zero() {
                    x = x.add(&d.scale(c));
                }
            }
            x
        })
        .collect()
}

pub fn rank_checks() -> RankReport {
    let c = CanonicalForms::new();
    let so7 = basis_masks(7, 2);
    let full_cols: Vec<Vec<Scalar>> = (0..7)
        .flat_map(|i| {
            so7.iter()
                .map(move |&m| elementary(i, &Form::monomial(7, m, Scalar::one())))
        })
        .map(|x| {
            let mut v = x.act_alternate(&c.alpha).coords(4);
            v.extend(x.act_alternate(&c.beta).coords(5));
            v
        })
        .collect();
    let rank_full = span_rank(&full_cols);
    let w = module_w_basis();
    let ups: Vec<Vec<Scalar>> = w.iter().map(|x| x.act_alternate(&c.upsilon).coords(5)).collect();
    let sups: Vec<Vec<Scalar>> = w.iter().map(|x| x.act_alternate(&c.star_upsilon).coords(4)).collect();
    let mut with_tau: Vec<Vec<Scalar>> = w.iter().map(perp_coords).collect();
    with_tau.push(perp_coords(&perp_projection(&tau1())));
    with_tau.push(perp_coords(&perp_projection(&tau2())));
    let w_meets_invariant = w.len() + 2 - span_rank(&with_tau);
    RankReport {
        rank_full,
        kernel_perp: w.len(),
        rank_upsilon_on_w: span_rank(&ups),
        rank_star_upsilon_on_w: span_rank(&sups),
        w_meets_invariant,
    }
}

/// An element Σ_k F_k ⊗ e_k of Λ²⊗T.
pub type TwoFormValued = Vec<Form>;

fn flatten_valued(x: &TwoFormValued) -> Vec<Scalar> {
    x.iter().flat_map(|f| f.coords(2)).collect()
}

/// ∂(e^i ⊗ A) = Σ_{k,j} A_kj e^{ij} ⊗ e_k.
pub fn partial(i: usize, a: &Matrix) -> TwoFormValued {
    let n = a.rows();
    let ei = Form::e(n, i + 1);
    (0..n)
        .map(|k| {
            let mut f = Form::zero(n);
            for j in 0..n {
                if !a[(k, j)].is_zero() {
                    f.add_scaled(&ei.wedge(&Form::e(n, j + 1)), &a[(k, j)]);
                }
            }
            f
        })
        .collect()
}

/// The torsion Σ_k de^k ⊗ e_k of the flat connection.
pub fn flat_torsion(g: &LieAlgebra) -> TwoFormValued {
    g.differentials().to_vec()
}

/// ϑ₁ = ω_s ⊗ w^s and ϑ₂ = (e_j⌟ω_s ∧ w^s) ⊗ e^j.
pub fn theta_basis() -> (TwoFormValued, TwoFormValued) {
    let om = omegas();
    let w = fibre_coframe();
    let mut t1 = vec![Form::zero(7); 7];
    let mut t2 = vec![Form::zero(7); 7];
    t1[4..7].clone_from_slice(&om);
    for (j, slot) in t2.iter_mut().enumerate().take(4) {
        for s in 0..3 {
            *slot = &*slot + &om[s].contract(j + 1).wedge(&w[s]);
        }
    }
    (t1, t2)
}

/// The 42 images ∂(e^i ⊗ g) for g in so(4).
pub fn partial_so4_images() -> Vec<TwoFormValued> {
    let gens: Vec<Matrix> = canon::so4().basis;
    (0..7).flat_map(|i| gens.iter().map(move |a| partial(i, a))).collect()
}

/// Finds (a, c) with τ − aϑ₁ − cϑ₂ ∈ ∂(T*⊗so(4)).
pub fn invariant_torsion_decompose(g: &LieAlgebra) -> Result<(Scalar, Scalar), TorsionError> {
    g.require_jacobi()?;
    if g.dim() != 7 {
        return Err(TorsionError::WrongDimension);
    }
    let (t1, t2) = theta_basis();
    let mut cols = vec![flatten_valued(&t1), flatten_valued(&t2)];
    cols.extend(partial_so4_images().iter().map(flatten_valued));
    let target = flatten_valued(&flat_torsion(g));
    let m = Matrix::from_columns(target.len(), &cols);
    let sol = m.solve(&target).ok_or(TorsionError::NotInvariant)?;
    Ok((sol[0].clone(), sol[1].clone()))
}

/// λ = −a/2, μ = a − 2c.
pub fn lambda_mu_from_theta(a: &Scalar, c: &Scalar) -> (Scalar, Scalar) {
    (-(a * &Scalar::ratio(1, 2)), a - &(c * &Scalar::from_int(2)))
}

/// de^j = r·e_j⌟ω_s∧w^s, dw^s = p·ω_s + q·w_s⌟w^{123}, without checking the constraint.
pub fn invariant_family_data(p: &Scalar, q: &Scalar, r: &Scalar) -> Vec<Form> {
    let om = omegas();
    let w = fibre_coframe();
    let w123 = Form::basis(7, &[5, 6, 7]);
    let mut de = Vec::with_capacity(7);
    for j in 1..=4 {
        let mut f = Form::zero(7);
        for s in 0..3 {
            f = &f + &om[s].contract(j).wedge(&w[s]);
        }
        de.push(f.scale(r));
    }
    for (s, o) in om.iter().enumerate() {
        de.push(&o.scale(p) + &w123.contract(5 + s).scale(q));
    }
    de
}

/// The invariant-torsion family at (p, q, r); rejects parameters off pq = 0 = pr = r(q+2r).
pub fn build_invariant_family(p: &Scalar, q: &Scalar, r: &Scalar) -> Result<LieAlgebra, TorsionError> {
    let two = Scalar::from_int(2);
    let ok = (p * q).is_zero() && (p * r).is_zero() && (r * &(q + &(&two * r))).is_zero();
    if !ok {
        return Err(TorsionError::ConstraintViolated);
    }
    Ok(LieAlgebra::new(
        format!("invariant family p={p} q={q} r={r}"),
        invariant_family_data(p, q, r),
    )?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionFamily {
    H1,
    H2,
    H3,
    H4,
    H5,
    H6,
    H7,
    H8,
}

impl TorsionFamily {
    pub const ALL: [TorsionFamily; 8] = [
        TorsionFamily::H1,
        TorsionFamily::H2,
        TorsionFamily::H3,
        TorsionFamily::H4,
        TorsionFamily::H5,
        TorsionFamily::H6,
        TorsionFamily::H7,
        TorsionFamily::H8,
    ];

    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "h1" => TorsionFamily::H1,
            "h2" => TorsionFamily::H2,
            "h3" => TorsionFamily::H3,
            "h4" => TorsionFamily::H4,
            "h5" => TorsionFamily::H5,
            "h6" => TorsionFamily::H6,
            "h7" => TorsionFamily::H7,
            "h8" => TorsionFamily::H8,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            TorsionFamily::H1 => "h1",
            TorsionFamily::H2 => "h2",
            TorsionFamily::H3 => "h3",
            TorsionFamily::H4 => "h4",
            TorsionFamily::H5 => "h5",
            TorsionFamily::H6 => "h6",
            TorsionFamily::H7 => "h7",
            TorsionFamily::H8 => "h8",
        }
    }

    /// Names of the parameters the family depends on.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            TorsionFamily::H5 | TorsionFamily::H6 => &["a"],
            TorsionFamily::H7 | TorsionFamily::H8 => &["a", "kappa"],
            _ => &[],
        }
    }
}

fn e7(text: &str) -> Form {
    Form::parse(7, text).expect("literal")
}

/// The Maurer–Cartan data of the invariant-torsion list.
pub fn build_table2(which: TorsionFamily, a: &Scalar, kappa: &Scalar) -> Result<LieAlgebra, TorsionError> {
    let om = omegas();
    let vp = varpis();
    let w = fibre_coframe();
    let pairs = fibre_pairs();
    let w123 = Form::basis(7, &[5, 6, 7]);
    let zero = Scalar::zero();
    let one = Scalar::one();
    let two = Scalar::from_int(2);
    let de: Vec<Form> = match which {
        TorsionFamily::H1 => {
            let mut de = Vec::new();
            for i in 1..=4 {
                let mut f = Form::zero(7);
                for v in &vp {
                    for ws in &w {
                        f = &f + &v.contract(i).wedge(ws);
                    }
                }
                de.push(f);
            }
            de.extend((0..3).map(|_| Form::zero(7)));
            de
        }
        TorsionFamily::H2 => return build_invariant_family(&zero, &one, &zero).map(|g| g.with_label("h2")),
        TorsionFamily::H3 => return build_invariant_family(&one, &zero, &zero).map(|g| g.with_label("h3")),
        TorsionFamily::H4 => return build_invariant_family(&zero, &-&two, &one).map(|g| g.with_label("h4")),
        TorsionFamily::H5 | TorsionFamily::H6 => {
            let base: Vec<Form> = if which == TorsionFamily::H5 {
                om.iter().map(|o| o.scale(a)).collect()
            } else {
                pairs.iter().map(|p| p.scale(a)).collect()
            };
            vec![
                Form::zero(7),
                Form::zero(7),
                e7("14"),
                e7("-13"),
                base[0].clone(),
                &base[1] + &e7("17"),
                &base[2] - &e7("16"),
            ]
        }
        TorsionFamily::H7 | TorsionFamily::H8 => {
            if a.is_zero() {
                return Err(TorsionError::BadParam("a must be nonzero".into()));
            }
            let ainv = a.inv().unwrap();
            let e = |i: usize| Form::e(7, i);
            let mut de = if which == TorsionFamily::H7 {
                vec![
                    Form::zero(7),
                    e7("12"),
                    &e7("13") + &e7("14").scale(kappa),
                    &e7("14") - &e7("13").scale(kappa),
                ]
            } else {
                vec![
                    Form::zero(7),
                    &e7("12") + &e7("13").scale(kappa),
                    &e7("13") - &e7("12").scale(kappa),
                    vp[2].scale(&two),
                ]
            };
            for (s, o) in om.iter().enumerate() {
                let ws = |f: &Form| f.contract(5 + s);
                let f = if which == TorsionFamily::H7 {
                    let mut f = &o.scale(a) - &ws(&w123).scale(&ainv);
                    f = &f + &(&e(1).scale(kappa) - &e(2)).wedge(&ws(&pairs[0]));
                    f = &f - &e(3).wedge(&ws(&pairs[1]));
                    &f - &e(4).wedge(&ws(&pairs[2]))
                } else {
                    let mut f = &o.scale(a) - &ws(&w123).scale(&(&two * &ainv));
                    f = &f + &(&e(1).scale(kappa) - &e(4)).wedge(&ws(&pairs[2]));
                    f = &f - &e(3).wedge(&ws(&pairs[1])).scale(&two);
                    &f - &e(2).wedge(&ws(&pairs[0])).scale(&two)
                };
                de.push(f);
            }
            de
        }
    };
    let label = match which.params() {
        [] => which.name().to_string(),
        [_] => format!("{}^{}", which.name(), a),
        _ => format!("{}^({}, {})", which.name(), a, kappa),
    };
    Ok(LieAlgebra::new(label, de)?)
}

/// The maps φ, ψ: R³ → R⁴ of a self-dual Einstein base, with the constant pq.
#[derive(Debug, Clone)]
pub struct SelfDualData {
    pub phi: [Form; 3],
    pub psi: [Form; 3],
    pub pq: Scalar,
}

fn v4(c: &[(usize, Scalar)]) -> Form {
    let mut f = Form::zero(4);
    for (i, x) in c {
        f.add_term(1 << (i - 1), x);
    }
    f
}

/// φ, ψ and pq for h5/h6 (flat base), h7 (hyperbolic base) and h8.
pub fn self_dual_data(which: TorsionFamily, kappa: &Scalar) -> Option<SelfDualData> {
    let h = Scalar::ratio(1, 2);
    let mh = Scalar::ratio(-1, 2);
    let k2 = kappa * &h;
    let z = || Form::zero(4);
    Some(match which {
        TorsionFamily::H5 | TorsionFamily::H6 => SelfDualData {
            phi: [v4(&[(1, h.clone())]), z(), z()],
            psi: [v4(&[(1, mh.clone())]), z(), z()],
            pq: Scalar::zero(),
        },
        TorsionFamily::H7 => SelfDualData {
            phi: [
                v4(&[(1, k2.clone()), (2, mh.clone())]),
                v4(&[(3, mh.clone())]),
                v4(&[(4, mh.clone())]),
            ],
            psi: [
                v4(&[(1, -&k2), (2, mh.clone())]),
                v4(&[(3, mh.clone())]),
                v4(&[(4, mh.clone())]),
            ],
            pq: Scalar::from_int(-1),
        },
        TorsionFamily::H8 => SelfDualData {
            phi: [
                v4(&[(2, Scalar::from_int(-1))]),
                v4(&[(3, Scalar::from_int(-1))]),
                v4(&[(1, k2.clone()), (4, mh.clone())]),
            ],
            psi: [z(), z(), v4(&[(1, -&k2), (4, Scalar::ratio(-3, 2))])],
            pq: Scalar::from_int(-2),
        },
        _ => return None,
    })
}

fn restrict4(f: &Form) -> Form {
    let mut out = Form::zero(4);
    for (m, c) in f.terms() {
        out.add_term(m, c);
    }
    out
}

/// Checks Σ_t [φ(w_t)∧φ(w_s)⌟ω_t + ψ(w_t)∧φ(w_s)⌟ϖ_t] = 2φ(w_{s+1})∧φ(w_{s+2}) − ½pq·ω_s.
pub fn check_self_dual_relation(data: &SelfDualData) -> bool {
    let om: Vec<Form> = omegas().iter().map(restrict4).collect();
    let vp: Vec<Form> = varpis().iter().map(restrict4).collect();
    let contract = |x: &Form, f: &Form| {
        let v: Vec<Scalar> = (1..=4).map(|i| x.coeff_of(&[i])).collect();
        f.contract_vec(&v).unwrap()
    };
    (0..3).all(|s| {
        let mut lhs = Form::zero(4);
        for t in 0..3 {
            lhs = &lhs + &data.phi[t].wedge(&contract(&data.phi[s], &om[t]));
            lhs = &lhs + &data.psi[t].wedge(&contract(&data.phi[s], &vp[t]));
        }
        let (a, b) = ((s + 1) % 3, (s + 2) % 3);
        let rhs = &data.phi[a].wedge(&data.phi[b]).scale(&Scalar::from_int(2))
            - &om[s].scale(&(&data.pq * &Scalar::ratio(1, 2)));
        lhs == rhs
    })
}

/// The 4-dimensional base algebra spanned by e^1..e^4.
pub fn base_algebra(g: &LieAlgebra) -> Result<LieAlgebra, LieError> {
    let de: Vec<Form> = (1..=4)
        .map(|i| {
            let f = g.de(i);
            if f.terms().any(|(m, _)| m >> 4 != 0) {
                Err(LieError::Syntax(format!("de^{i} involves the fibre")))
            } else {
                Ok(restrict4(f))
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(LieAlgebra::new(format!("base of {}", g.label()), de)?.with_label(format!("base of {}", g.label())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so4_split_of_omega() {
        let om = omegas();
        let (part, perp) = so4_split(&om[0]);
        let expected = (&om[0] - &fibre_pairs()[0].scale(&Scalar::from_int(2))).scale(&Scalar::ratio(1, 3));
        assert_eq!(part, expected);
        assert_eq!(&part + &perp, om[0]);
        let (p, q) = so4_split(&varpis()[0]);
        assert_eq!(p, varpis()[0]);
        assert!(q.is_zero());
    }

    #[test]
    fn abelian_connection_vanishes() {
        assert!(levi_civita(&LieAlgebra::abelian(7)).unwrap().is_zero());
        let t = intrinsic_torsion(&LieAlgebra::abelian(7)).unwrap();
        assert!(t.xi.is_zero() && t.in_w);
        assert_eq!(t.lambda_mu, Some((Scalar::zero(), Scalar::zero())));
    }

    #[test]
    fn alternation_reproduces_differential() {
        let g = LieAlgebra::parse_salamon("(0,0,0,12,23,-13,26-34-16+25)").unwrap();
        let nabla = levi_civita(&g).unwrap();
        for k in 1..=7 {
            assert_eq!(nabla.act_alternate(&Form::e(7, k)), *g.de(k));
        }
    }

    #[test]
    fn tau_alternations() {
        let c = CanonicalForms::new();
        let six = Scalar::from_int(6);
        let two = Scalar::from_int(2);
        let b2 = c.beta.scale(&two);
        let u6 = c.upsilon.scale(&six);
        assert_eq!(tau1().act_alternate(&c.alpha), &u6 - &b2);
        assert_eq!(tau2().act_alternate(&c.alpha), &b2 + &u6);
        assert_eq!(tau1().act_alternate(&c.star_upsilon), &b2 + &u6);
        assert!(tau2().act_alternate(&c.star_upsilon).is_zero());
    }

    #[test]
    fn family_constraints() {
        let one = Scalar::one();
        let zero = Scalar::zero();
        assert_eq!(
            build_invariant_family(&one, &one, &zero),
            Err(TorsionError::ConstraintViolated)
        );
        assert!(build_invariant_family(&zero, &Scalar::from_int(-2), &one)
            .unwrap()
            .check_jacobi());
    }

    #[test]
    fn table2_rejects_zero_denominator() {
        let z = Scalar::zero();
        assert!(matches!(
            build_table2(TorsionFamily::H7, &z, &z),
            Err(TorsionError::BadParam(_))
        ));
    }
}
