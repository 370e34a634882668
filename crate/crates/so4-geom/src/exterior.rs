//! Exterior forms on an oriented orthonormal coframe e^1..e^n, n ≤ 8.
//!
//! A monomial e^{i_1 … i_k} with i_1 < … < i_k is keyed by the bitmask with
//! bits i_1 - 1, …, i_k - 1 set.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalar::{Scalar, ScalarError};

pub const MAX_DIM: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("form is not homogeneous")]
    NonHomogeneous,
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("expected a form of degree {expected}")]
    WrongDegree { expected: usize },
    #[error("bad form literal `{text}`: {msg}")]
    Parse { text: String, msg: String },
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Sign of e^I ∧ e^J relative to e^{I∪J}; zero when the sets meet.
pub fn wedge_sign(i: u16, j: u16) -> i32 {
    if i & j != 0 {
        return 0;
    }
    let mut swaps = 0;
    let mut rest = j;
    while rest != 0 {
        let b = rest.trailing_zeros();
        swaps += (i >> (b + 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Masks of all k-subsets of {1..n}, ordered lexicographically by index tuple.
pub fn basis_masks(n: usize, k: usize) -> Vec<u16> {
    fn rec(start: usize, n: usize, k: usize, acc: u16, out: &mut Vec<u16>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

pub fn mask_indices(mask: u16) -> Vec<usize> {
    (0..16).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect()
}

fn sort_sign(indices: &[usize]) -> Option<(u16, i32)> {
    let mut mask = 0u16;
    let mut sign = 1;
    for &i in indices {
        let bit = 1u16 << (i - 1);
        if mask & bit != 0 {
            return None;
        }
        sign *= wedge_sign(mask, bit);
        mask |= bit;
    }
    Some((mask, sign))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    dim: usize,
    terms: BTreeMap<u16, Scalar>,
}

impl Form {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Form {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Scalar) -> Self {
        Self::monomial(dim, 0, c)
    }

    pub fn monomial(dim: usize, mask: u16, c: Scalar) -> Self {
        let mut f = Self::zero(dim);
        assert!(mask >> dim == 0, "index out of range");
        if !c.is_zero() {
            f.terms.insert(mask, c);
        }
        f
    }

    /// e^{i_1} ∧ … ∧ e^{i_k} for 1-based indices in any order.
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        assert!(indices.iter().all(|&i| (1..=dim).contains(&i)), "index out of range");
        match sort_sign(indices) {
            Some((mask, s)) => Self::monomial(dim, mask, Scalar::from_int(s as i64)),
            None => Self::zero(dim),
        }
    }

    /// e^i for a 1-based index.
    pub fn e(dim: usize, i: usize) -> Self {
        Self::basis(dim, &[i])
    }

    /// Parses a literal such as `12 - 34`, `sqrt3*567` or `(1/2 + sqrt5)*12`.
    pub fn parse(dim: usize, text: &str) -> Result<Self, ExteriorError> {
        let perr = |msg: &str| ExteriorError::Parse {
            text: text.to_string(),
            msg: msg.to_string(),
        };
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(perr("empty literal"));
        }
        if trimmed == "0" {
            return Ok(Self::zero(dim));
        }
        let mut out = Self::zero(dim);
        for (negative, term) in split_terms(trimmed).map_err(|m| perr(&m))? {
            let (coef_text, index_text) = match term.rfind('*') {
                Some(p) => (Some(term[..p].trim()), term[p + 1..].trim()),
                None => (None, term.trim()),
            };
            let indices: Vec<usize> = if index_text == "()" {
                Vec::new()
            } else {
                if index_text.is_empty() || !index_text.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(perr(&format!("`{index_text}` is not an index string")));
                }
                index_text.bytes().map(|b| (b - b'0') as usize).collect()
            };
            if indices.iter().any(|&i| i == 0 || i > dim) {
                return Err(perr(&format!("index out of range in `{index_text}`")));
            }
            let mut coef = match coef_text {
                Some(c) => Scalar::parse(c)?,
                None => Scalar::one(),
            };
            if negative {
                coef = -coef;
            }
            let Some((mask, s)) = sort_sign(&indices) else {
                continue;
            };
            out.add_term(mask, &(coef * Scalar::from_int(s as i64)));
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u16, &Scalar)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: u16) -> Scalar {
        self.terms.get(&mask).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficient of e^{i_1 … i_k} for 1-based indices, with permutation sign.
    pub fn coeff_of(&self, indices: &[usize]) -> Scalar {
        match sort_sign(indices) {
            Some((mask, s)) => self.coeff(mask) * Scalar::from_int(s as i64),
            None => Scalar::zero(),
        }
    }

    /// Degree if the form is homogeneous; `Some(0)` for the zero form.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|m| m.count_ones() as usize);
        let first = degs.next().unwrap_or(0);
        degs.all(|d| d == first).then_some(first)
    }

    pub fn add_term(&mut self, mask: u16, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add_scaled(&mut self, other: &Form, c: &Scalar) {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(*m, &(x * c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        let mut out = Form::zero(self.dim);
        out.add_scaled(self, c);
        out
    }

    /// Degree-k part.
    pub fn part(&self, k: usize) -> Form {
        Form {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.count_ones() as usize == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn checked_wedge(&self, other: &Form) -> Result<Form, ExteriorError> {
        if self.dim != other.dim {
            return Err(ExteriorError::DimMismatch(self.dim, other.dim));
        }
        let mut out = Form::zero(self.dim);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let s = wedge_sign(*a, *b);
                if s == 0 {
                    continue;
                }
                let p = x * y;
                out.add_term(a | b, &if s > 0 { p } else { -p });
            }
        }
        Ok(out)
    }

    /// Panics on dimension mismatch; see [`Form::checked_wedge`].
    pub fn wedge(&self, other: &Form) -> Form {
        self.checked_wedge(other)
            .expect("wedge of forms of different dimension")
    }

    /// Interior product with the frame vector e_i (1-based).
    pub fn contract(&self, i: usize) -> Form {
        assert!((1..=self.dim).contains(&i), "index out of range");
        let bit = 1u16 << (i - 1);
        let mut out = Form::zero(self.dim);
        for (m, c) in &self.terms {
            if m & bit == 0 {
                continue;
            }
            let below = (m & (bit - 1)).count_ones();
            let v = if below.is_multiple_of(2) { c.clone() } else { -c };
            out.add_term(m & !bit, &v);
        }
        out
    }

    /// Interior product with Σ v_i e_i.
    pub fn contract_vec(&self, v: &[Scalar]) -> Result<Form, ExteriorError> {
        if v.len() != self.dim {
            return Err(ExteriorError::DimMismatch(self.dim, v.len()));
        }
        let mut out = Form::zero(self.dim);
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                out.add_scaled(&self.contract(i + 1), x);
            }
        }
        Ok(out)
    }

    /// Hodge star with e^1 ∧ … ∧ e^n positive: γ ∧ *γ = |γ|² vol.
    pub fn hodge_star(&self) -> Result<Form, ExteriorError> {
        self.degree().ok_or(ExteriorError::NonHomogeneous)?;
        let full: u16 = ((1u32 << self.dim) - 1) as u16;
        let mut out = Form::zero(self.dim);
        for (m, c) in &self.terms {
            let comp = full & !m;
            let s = wedge_sign(*m, comp);
            out.add_term(comp, &if s > 0 { c.clone() } else { -c });
        }
        Ok(out)
    }

    pub fn volume(dim: usize) -> Form {
        Form::monomial(dim, ((1u32 << dim) - 1) as u16, Scalar::one())
    }

    /// Inner product making the monomials e^I orthonormal.
    pub fn inner(&self, other: &Form) -> Scalar {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.terms
            .iter()
            .filter_map(|(m, x)| other.terms.get(m).map(|y| x * y))
            .sum()
    }

    pub fn checked_inner(&self, other: &Form) -> Result<Scalar, ExteriorError> {
        if self.dim != other.dim {
            return Err(ExteriorError::DimMismatch(self.dim, other.dim));
        }
        Ok(self.inner(other))
    }

    pub fn norm_sq(&self) -> Scalar {
        self.inner(self)
    }

    /// Coordinates in the lexicographic basis of Λ^k.
    pub fn coords(&self, k: usize) -> Vec<Scalar> {
        basis_masks(self.dim, k).into_iter().map(|m| self.coeff(m)).collect()
    }

    pub fn from_coords(dim: usize, k: usize, coords: &[Scalar]) -> Form {
        let masks = basis_masks(dim, k);
        assert_eq!(masks.len(), coords.len());
        let mut out = Form::zero(dim);
        for (m, c) in masks.into_iter().zip(coords) {
            out.add_term(m, c);
        }
        out
    }

    /// Substitutes e^k ↦ Σ_j M_kj e^j, where M is square of size n.
    pub fn pullback(&self, m: &Matrix) -> Form {
        assert!(m.is_square() && m.rows() == self.dim);
        let images: Vec<Form> = (0..self.dim)
            .map(|k| {
                let mut f = Form::zero(self.dim);
                for j in 0..self.dim {
                    f.add_term(1 << j, &m[(k, j)]);
                }
                f
            })
            .collect();
        let mut out = Form::zero(self.dim);
        for (mask, c) in &self.terms {
            let mut t = Form::constant(self.dim, c.clone());
            for i in mask_indices(*mask) {
                t = t.wedge(&images[i - 1]);
                if t.is_zero() {
                    break;
                }
            }
            out.add_scaled(&t, &Scalar::one());
        }
        out
    }

    /// Reinterprets the form in a larger dimension.
    pub fn extend_dim(&self, dim: usize) -> Form {
        assert!(dim >= self.dim);
        Form {
            dim,
            terms: self.terms.clone(),
        }
    }

    /// Renumbers frame indices: e^i ↦ e^{perm[i-1]} (1-based targets).
    pub fn relabel(&self, dim: usize, perm: &[usize]) -> Form {
        assert_eq!(perm.len(), self.dim);
        let mut out = Form::zero(dim);
        for (m, c) in &self.terms {
            let idx: Vec<usize> = mask_indices(*m).into_iter().map(|i| perm[i - 1]).collect();
            if let Some((mask, s)) = sort_sign(&idx) {
                out.add_term(mask, &(c * &Scalar::from_int(s as i64)));
            }
        }
        out
    }
}

fn split_terms(text: &str) -> Result<Vec<(bool, &str)>, String> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut negative = false;
    let mut i = 0;
    // a leading sign belongs to the first term
    while i < bytes.len() && bytes[i].is_ascii_whitespace() {
        i += 1;
    }
    if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
        negative = bytes[i] == b'-';
        i += 1;
        start = i;
    }
    while i < bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                // a sign directly after '*' or '/' is part of the factor
                let prev = text[..i].trim_end().bytes().last();
                if !matches!(prev, Some(b'*') | Some(b'/')) {
                    let piece = text[start..i].trim();
                    if piece.is_empty() {
                        return Err("empty term".into());
                    }
                    out.push((negative, piece));
                    negative = bytes[i] == b'-';
                    start = i + 1;
                }
            }
            _ => {}
        }
        if depth < 0 {
            return Err("unbalanced parentheses".into());
        }
        i += 1;
    }
    if depth != 0 {
        return Err("unbalanced parentheses".into());
    }
    let piece = text[start..].trim();
    if piece.is_empty() {
        return Err("empty term".into());
    }
    out.push((negative, piece));
    Ok(out)
}

impl Add for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Scalar::one());
        out
    }
}

impl Add for Form {
    type Output = Form;
    fn add(self, rhs: Form) -> Form {
        &self + &rhs
    }
}

impl Sub for Form {
    type Output = Form;
    fn sub(self, rhs: Form) -> Form {
        &self - &rhs
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.scale(&-Scalar::one())
    }
}

impl Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        -&self
    }
}

impl Mul<&Form> for &Scalar {
    type Output = Form;
    fn mul(self, rhs: &Form) -> Form {
        rhs.scale(self)
    }
}

impl Mul<Form> for Scalar {
    type Output = Form;
    fn mul(self, rhs: Form) -> Form {
        rhs.scale(&self)
    }
}

fn index_string(mask: u16) -> String {
    if mask == 0 {
        return "()".into();
    }
    mask_indices(mask).iter().map(|i| i.to_string()).collect()
}

impl fmt::Display for Form {
    /// Renders in the literal grammar accepted by [`Form::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<u16> = self.terms.keys().copied().collect();
        keys.sort_by_key(|m| (m.count_ones(), mask_indices(*m)));
        for (n, m) in keys.iter().enumerate() {
            let c = &self.terms[m];
            let text = c.to_string();
            let single_term = !text[1..].contains([' ']);
            let (neg, body) = if single_term && text.starts_with('-') {
                (true, text[1..].to_string())
            } else if single_term {
                (false, text)
            } else {
                (false, format!("({text})"))
            };
            match (n == 0, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if body == "1" && *m != 0 {
                write!(f, "{}", index_string(*m))?;
            } else {
                write!(f, "{}*{}", body, index_string(*m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[{}]({})", self.dim, self)
    }
}

/// The endomorphism v ↦ v ⌟ ω of a 2-form: the matrix A with A_kj = ω(e_j, e_k).
pub fn two_form_to_endo(omega: &Form) -> Result<Matrix, ExteriorError> {
    if !matches!(omega.degree(), Some(2)) && !omega.is_zero() {
        return Err(ExteriorError::WrongDegree { expected: 2 });
    }
    let n = omega.dim();
    let mut a = Matrix::zeros(n, n);
    for (m, c) in omega.terms() {
        let idx = mask_indices(m);
        let (j, k) = (idx[0] - 1, idx[1] - 1);
        a[(k, j)] = c.clone();
        a[(j, k)] = -c;
    }
    Ok(a)
}

/// Inverse of [`two_form_to_endo`] on skew matrices.
pub fn endo_to_two_form(a: &Matrix) -> Result<Form, ExteriorError> {
    if !a.is_skew() {
        return Err(ExteriorError::NotSkew);
    }
    let n = a.rows();
    let mut out = Form::zero(n);
    for j in 0..n {
        for k in j + 1..n {
            out.add_term((1 << j) | (1 << k), &a[(k, j)]);
        }
    }
    Ok(out)
}

/// Action of gl(n) on forms: e^k ↦ -Σ_j A_kj e^j on covectors, extended as a derivation.
pub fn endo_act(a: &Matrix, gamma: &Form) -> Form {
    let n = gamma.dim();
    assert!(a.is_square() && a.rows() == n, "dimension mismatch");
    let mut out = Form::zero(n);
    for (m, c) in gamma.terms() {
        for (p, k) in mask_indices(m).into_iter().enumerate() {
            let rest = m & !(1u16 << (k - 1));
            let front = if p % 2 == 0 { 1 } else { -1 };
            for j in 0..n {
                let ajk = &a[(k - 1, j)];
                if ajk.is_zero() {
                    continue;
                }
                let s = wedge_sign(1 << j, rest);
                if s == 0 {
                    continue;
                }
                let v = c * ajk;
                out.add_term(rest | (1 << j), &if front * s > 0 { -v } else { v });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(dim: usize, t: &str) -> Form {
        Form::parse(dim, t).unwrap()
    }

    #[test]
    fn literal_round_trip() {
        let x = f(7, "12 - 34 + sqrt3*567 - 1/2*25 + (1 + sqrt2)*146");
        assert_eq!(f(7, &x.to_string()), x);
        assert_eq!(f(7, "42"), -f(7, "24"));
        assert_eq!(f(7, "11"), Form::zero(7));
        assert!(Form::parse(4, "15").is_err());
        assert!(Form::parse(4, "2*").is_err());
    }

    #[test]
    fn wedge_basics() {
        let e1 = Form::e(7, 1);
        assert!(e1.wedge(&e1).is_zero());
        let om1 = f(7, "12 - 34");
        assert_eq!(om1.wedge(&om1), f(7, "-2*1234"));
        assert!(Form::zero(4).checked_wedge(&Form::zero(5)).is_err());
    }

    #[test]
    fn contraction() {
        assert_eq!(f(7, "12").contract(1), Form::e(7, 2));
        assert_eq!(f(7, "567").contract(5), f(7, "67"));
        assert_eq!(f(7, "567").contract(6), f(7, "-57"));
    }

    #[test]
    fn hodge_star_basics() {
        assert_eq!(f(7, "1234").hodge_star().unwrap(), f(7, "567"));
        assert_eq!(Form::constant(7, Scalar::one()).hodge_star().unwrap(), Form::volume(7));
        assert_eq!(f(7, "12 + 123").hodge_star(), Err(ExteriorError::NonHomogeneous));
    }

    #[test]
    fn endo_identification() {
        let a = two_form_to_endo(&f(4, "12")).unwrap();
        // e_1 ↦ e_2 and e_2 ↦ -e_1
        assert_eq!(a[(1, 0)], Scalar::one());
        assert_eq!(a[(0, 1)], -Scalar::one());
        assert_eq!(endo_to_two_form(&a).unwrap(), f(4, "12"));
        assert!(two_form_to_endo(&Form::zero(4)).unwrap().is_zero());
        assert_eq!(endo_to_two_form(&Matrix::identity(3)), Err(ExteriorError::NotSkew));
    }

    #[test]
    fn euler_operator() {
        let g = f(6, "123 - 2*456 + sqrt2*135");
        assert_eq!(endo_act(&Matrix::identity(6), &g), g.scale(&Scalar::from_int(-3)));
    }

    #[test]
    fn pullback_matches_substitution() {
        let mut m = Matrix::identity(3);
        m[(0, 1)] = Scalar::from_int(2);
        // e^1 ↦ e^1 + 2e^2
        assert_eq!(f(3, "13").pullback(&m), f(3, "13 + 2*23"));
    }
}
