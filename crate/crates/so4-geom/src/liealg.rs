//! Lie algebras given by Maurer–Cartan data and their Chevalley–Eilenberg complex.

use thiserror::Error;

use crate::exterior::{basis_masks, endo_act, mask_indices, wedge_sign, ExteriorError, Form};
use crate::linalg::{inertia, span_rank, Matrix};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("Jacobi identity fails for `{0}`")]
    JacobiFail(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not a derivation")]
    NotADerivation,
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
}

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    de: Vec<Form>,
    label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraInvariants {
    pub b1: usize,
    /// dims of g, [g,g], [g,[g,g]], … down to the first repeat
    pub lower_central: Vec<usize>,
    /// dim of the span of all de^i ∧ de^j
    pub dsq_span: usize,
    /// dim of the derivation algebra
    pub der_dim: usize,
    /// (n₊, n₋) of ω ↦ ω∧ω on span{de^i} with n₊ ≥ n₋, when its values span a line
    pub square_inertia: Option<(usize, usize)>,
}

impl LieAlgebra {
    pub fn new(label: impl Into<String>, de: Vec<Form>) -> Result<Self, LieError> {
        let dim = de.len();
        for f in &de {
            if f.dim() != dim {
                return Err(LieError::DimMismatch(f.dim(), dim));
            }
            if !f.is_zero() && f.degree() != Some(2) {
                return Err(ExteriorError::WrongDegree { expected: 2 }.into());
            }
        }
        Ok(LieAlgebra {
            dim,
            de,
            label: label.into(),
        })
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebra {
            dim: n,
            de: vec![Form::zero(n); n],
            label: format!("R{n}"),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// de^i for a 1-based index.
    pub fn de(&self, i: usize) -> &Form {
        &self.de[i - 1]
    }

    pub fn differentials(&self) -> &[Form] {
        &self.de
    }

    /// Parses Salamon's tuple shorthand, e.g. `(0,0,0,12,13,23+14)`.
    pub fn parse_salamon(text: &str) -> Result<Self, LieError> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| LieError::Syntax(format!("expected a parenthesised tuple, got `{t}`")))?;
        let entries: Vec<&str> = inner.split(',').map(str::trim).collect();
        let dim = entries.len();
        let mut de = Vec::with_capacity(dim);
        for e in entries {
            if e.is_empty() {
                return Err(LieError::Syntax("empty entry".into()));
            }
            for d in e.bytes().filter(u8::is_ascii_digit) {
                let idx = (d - b'0') as usize;
                if idx > dim {
                    return Err(LieError::IndexOutOfRange { index: idx, dim });
                }
            }
            de.push(Form::parse(dim, e)?);
        }
        LieAlgebra::new(t, de)
    }

    /// Parses the text format: `dim N`, optional `label ...`, then `d eI = <form>`
    /// lines or one `salamon (...)` line. `#` starts a comment.
    pub fn parse_file(text: &str) -> Result<Self, LieError> {
        let mut dim: Option<usize> = None;
        let mut label = String::new();
        let mut de: Vec<Option<Form>> = Vec::new();
        let mut from_salamon: Option<LieAlgebra> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |m: &str| LieError::Syntax(format!("line {}: {m}", lineno + 1));
            if let Some(rest) = line.strip_prefix("dim") {
                let n: usize = rest.trim().parse().map_err(|_| err("bad dimension"))?;
                if !(1..=8).contains(&n) {
                    return Err(err("dimension must be between 1 and 8"));
                }
                dim = Some(n);
                de = vec![None; n];
            } else if let Some(rest) = line.strip_prefix("label") {
                label = rest.trim().to_string();
            } else if let Some(rest) = line.strip_prefix("salamon") {
                let g = Self::parse_salamon(rest)?;
                if let Some(n) = dim {
                    if n != g.dim {
                        return Err(LieError::DimMismatch(n, g.dim));
                    }
                }
                from_salamon = Some(g);
            } else if let Some(rest) = line.strip_prefix('d') {
                let n = dim.ok_or_else(|| err("`dim` must come first"))?;
                let (lhs, rhs) = rest.split_once('=').ok_or_else(|| err("expected `=`"))?;
                let idx: usize = lhs
                    .trim()
                    .strip_prefix('e')
                    .ok_or_else(|| err("expected `d eI`"))?
                    .trim()
                    .parse()
                    .map_err(|_| err("bad index"))?;
                if idx == 0 || idx > n {
                    return Err(LieError::IndexOutOfRange { index: idx, dim: n });
                }
                de[idx - 1] = Some(Form::parse(n, rhs)?);
            } else {
                return Err(err("unrecognised line"));
            }
        }
        if let Some(g) = from_salamon {
            let name = if label.is_empty() { g.label.clone() } else { label };
            return Ok(g.with_label(name));
        }
        let n = dim.ok_or_else(|| LieError::Syntax("missing `dim` line".into()))?;
        let de = de.into_iter().map(|f| f.unwrap_or_else(|| Form::zero(n))).collect();
        LieAlgebra::new(label, de)
    }

    /// Renders the algebra in the text format read by [`LieAlgebra::parse_file`].
    pub fn to_file_string(&self) -> String {
        let mut out = format!("dim {}\n", self.dim);
        if !self.label.is_empty() {
            out.push_str(&format!("label {}\n", self.label));
        }
        for (i, f) in self.de.iter().enumerate() {
            out.push_str(&format!("d e{} = {}\n", i + 1, f));
        }
        out
    }

    /// Chevalley–Eilenberg differential.
    pub fn d(&self, gamma: &Form) -> Form {
        assert_eq!(gamma.dim(), self.dim, "dimension mismatch");
        let mut out = Form::zero(self.dim);
        for (m, c) in gamma.terms() {
            for (p, k) in mask_indices(m).into_iter().enumerate() {
                let bit = 1u16 << (k - 1);
                let prefix = m & (bit - 1);
                let suffix = m & !(bit | (bit - 1));
                let sign = if p % 2 == 0 { 1 } else { -1 };
                for (dm, dc) in self.de[k - 1].terms() {
                    let s1 = wedge_sign(prefix, dm);
                    if s1 == 0 {
                        continue;
                    }
                    let s2 = wedge_sign(prefix | dm, suffix);
                    if s2 == 0 {
                        continue;
                    }
                    let v = c * dc;
                    out.add_term(prefix | dm | suffix, &if sign * s1 * s2 > 0 { v } else { -v });
                }
            }
        }
        out
    }

    pub fn check_jacobi(&self) -> bool {
        self.de.iter().all(|f| self.d(f).is_zero())
    }

    /// The Jacobi identity checked on brackets of frame vectors, independently of d.
    pub fn jacobi_on_brackets(&self) -> bool {
        let n = self.dim;
        let unit = |i: usize| -> Vec<Scalar> {
            (0..n)
                .map(|j| if j == i { Scalar::one() } else { Scalar::zero() })
                .collect()
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (x, y, z) = (unit(i), unit(j), unit(k));
                    let a = self.bracket(&self.bracket(&x, &y), &z);
                    let b = self.bracket(&self.bracket(&y, &z), &x);
                    let c = self.bracket(&self.bracket(&z, &x), &y);
                    if (0..n).any(|t| !(&(&a[t] + &b[t]) + &c[t]).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn require_jacobi(&self) -> Result<(), LieError> {
        if self.check_jacobi() {
            Ok(())
        } else {
            Err(LieError::JacobiFail(self.label.clone()))
        }
    }

    /// c_ij^k with [e_i, e_j] = Σ_k c_ij^k e_k (0-based), from de^k(e_i, e_j) = -c_ij^k.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        if i == j {
            return Scalar::zero();
        }
        let v = self.de[k].coeff((1 << i) | (1 << j));
        if i < j {
            -v
        } else {
            v
        }
    }

    /// [x, y] for vectors in frame coordinates.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate().take(n) {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate().take(n) {
                if yj.is_zero() || i == j {
                    continue;
                }
                let xy = xi * yj;
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        *slot += &xy * &c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of d: Λ^k → Λ^{k+1} in lexicographic bases.
    pub fn d_matrix(&self, k: usize) -> Matrix {
        let src = basis_masks(self.dim, k);
        let cols: Vec<Vec<Scalar>> = src
            .iter()
            .map(|&m| self.d(&Form::monomial(self.dim, m, Scalar::one())).coords(k + 1))
            .collect();
        Matrix::from_columns(basis_masks(self.dim, k + 1).len(), &cols)
    }

    pub fn betti(&self, k: usize) -> Result<usize, LieError> {
        self.require_jacobi()?;
        if k > self.dim {
            return Ok(0);
        }
        let dim_k = basis_masks(self.dim, k).len();
        let rank_out = if k < self.dim { self.d_matrix(k).rank() } else { 0 };
        let rank_in = if k > 0 { self.d_matrix(k - 1).rank() } else { 0 };
        Ok(dim_k - rank_out - rank_in)
    }

    pub fn betti_numbers(&self) -> Result<Vec<usize>, LieError> {
        self.require_jacobi()?;
        let ranks: Vec<usize> = (0..self.dim).map(|k| self.d_matrix(k).rank()).collect();
        Ok((0..=self.dim)
            .map(|k| {
                let dim_k = basis_masks(self.dim, k).len();
                let out = if k < self.dim { ranks[k] } else { 0 };
                let inc = if k > 0 { ranks[k - 1] } else { 0 };
                dim_k - out - inc
            })
            .collect())
    }

    /// Rewrites the algebra in the coframe e^i = Σ_j M_ij f^j, where f is the current coframe.
    pub fn change_coframe(&self, m: &Matrix) -> Result<LieAlgebra, LieError> {
        if m.rows() != self.dim || !m.is_square() {
            return Err(LieError::DimMismatch(m.rows(), self.dim));
        }
        let inv = m.inverse().ok_or(LieError::Singular)?;
        let de = (0..self.dim)
            .map(|i| {
                let mut df = Form::zero(self.dim);
                for j in 0..self.dim {
                    df.add_scaled(&self.de[j], &m[(i, j)]);
                }
                df.pullback(&inv)
            })
            .collect();
        LieAlgebra::new(self.label.clone(), de)
    }

    /// R ⊕ g with a closed extra coframe element appended.
    pub fn product_with_line(&self) -> LieAlgebra {
        let n = self.dim + 1;
        let mut de: Vec<Form> = self.de.iter().map(|f| f.extend_dim(n)).collect();
        de.push(Form::zero(n));
        LieAlgebra {
            dim: n,
            de,
            label: format!("R x {}", self.label),
        }
    }

    /// Reorders the coframe: old e^i becomes new e^{perm[i-1]}.
    pub fn relabel(&self, perm: &[usize]) -> LieAlgebra {
        let mut de = vec![Form::zero(self.dim); self.dim];
        for (i, f) in self.de.iter().enumerate() {
            de[perm[i] - 1] = f.relabel(self.dim, perm);
        }
        LieAlgebra {
            dim: self.dim,
            de,
            label: self.label.clone(),
        }
    }

    /// Whether the endomorphism b (acting on vectors) is a derivation.
    pub fn is_derivation(&self, b: &Matrix) -> bool {
        (1..=self.dim).all(|k| {
            let ek = Form::e(self.dim, k);
            endo_act(b, &self.de[k - 1]) == self.d(&endo_act(b, &ek))
        })
    }

    /// The semidirect product n ⋊_b R with coframe (E^1..E^m, η), dη = 0 and
    /// dχ = scale·η ∧ (b·χ) + d_n χ.
    pub fn semidirect_extend(&self, b: &Matrix, scale: &Scalar) -> Result<LieAlgebra, LieError> {
        if !b.is_square() || b.rows() != self.dim {
            return Err(LieError::DimMismatch(b.rows(), self.dim));
        }
        if !self.is_derivation(b) {
            return Err(LieError::NotADerivation);
        }
        let n = self.dim + 1;
        let eta = Form::e(n, n);
        let mut de: Vec<Form> = (1..=self.dim)
            .map(|i| {
                let bchi = endo_act(b, &Form::e(self.dim, i)).extend_dim(n);
                &eta.wedge(&bchi).scale(scale) + &self.de[i - 1].extend_dim(n)
            })
            .collect();
        de.push(Form::zero(n));
        LieAlgebra::new(format!("{} x_b R", self.label), de)
    }

    /// Inverse of [`LieAlgebra::semidirect_extend`] when the last coframe element is
    /// closed: returns the ideal n and the derivation b.
    pub fn semidirect_split(&self, scale: &Scalar) -> Result<(LieAlgebra, Matrix), LieError> {
        let n = self.dim;
        let m = n - 1;
        if !self.de[m].is_zero() {
            return Err(LieError::Syntax("the last coframe element is not closed".into()));
        }
        let inv_scale = scale.inv().map_err(|_| LieError::Singular)?;
        let eta_bit = 1u16 << m;
        let mut b = Matrix::zeros(m, m);
        let mut de_n = Vec::with_capacity(m);
        for k in 0..m {
            let mut rest = Form::zero(m);
            for (mask, c) in self.de[k].terms() {
                if mask & eta_bit != 0 {
                    // c e^{j} ∧ η = -c η ∧ e^j, and η ∧ b·e^k carries -b_kj
                    let j = (mask & !eta_bit).trailing_zeros() as usize;
                    b[(k, j)] = c * &inv_scale;
                } else {
                    rest.add_term(mask, c);
                }
            }
            de_n.push(rest);
        }
        let ideal = LieAlgebra::new(format!("ideal of {}", self.label), de_n)?;
        Ok((ideal, b))
    }

    pub fn invariants(&self) -> Result<AlgebraInvariants, LieError> {
        self.require_jacobi()?;
        let n = self.dim;
        let b1 = self.betti(1)?;
        let unit = |i: usize| -> Vec<Scalar> {
            (0..n)
                .map(|j| if j == i { Scalar::one() } else { Scalar::zero() })
                .collect()
        };
        let mut lower = vec![n];
        let mut current: Vec<Vec<Scalar>> = (0..n).map(unit).collect();
        loop {
            let mut next = Vec::new();
            for i in 0..n {
                for v in &current {
                    let w = self.bracket(&unit(i), v);
                    if w.iter().any(|x| !x.is_zero()) {
                        next.push(w);
                    }
                }
            }
            let basis = independent_subset(&next);
            let d = basis.len();
            if d == *lower.last().unwrap() {
                break;
            }
            lower.push(d);
            if d == 0 {
                break;
            }
            current = basis;
        }
        let mut products = Vec::new();
        for i in 0..n {
            for j in i..n {
                let w = self.de[i].wedge(&self.de[j]);
                if !w.is_zero() {
                    products.push(w.coords(4));
                }
            }
        }
        Ok(AlgebraInvariants {
            b1,
            lower_central: lower,
            dsq_span: span_rank(&products),
            der_dim: self.derivation_dim(),
            square_inertia: self.square_inertia(),
        })
    }

    fn square_inertia(&self) -> Option<(usize, usize)> {
        let coords: Vec<Vec<Scalar>> = self.de.iter().map(|f| f.coords(2)).collect();
        let basis: Vec<Form> = independent_subset(&coords)
            .iter()
            .map(|c| Form::from_coords(self.dim, 2, c))
            .collect();
        let n = basis.len();
        let mut products = vec![vec![Form::zero(self.dim); n]; n];
        let mut generator = None;
        for a in 0..n {
            for b in a..n {
                let w = basis[a].wedge(&basis[b]);
                if generator.is_none() && !w.is_zero() {
                    generator = Some(w.clone());
                }
                products[a][b] = w.clone();
                products[b][a] = w;
            }
        }
        let Some(g) = generator else {
            return Some((0, 0));
        };
        let norm = g.norm_sq().inv().ok()?;
        let mut gram = Matrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                let c = &products[a][b].inner(&g) * &norm;
                if products[a][b] != g.scale(&c) {
                    return None;
                }
                gram[(a, b)] = c;
            }
        }
        let (p, q, _) = inertia(&gram);
        Some((p.max(q), p.min(q)))
    }

    /// dim Der(g), as the kernel of b ↦ (b·de^k − d(b·e^k))_k.
    pub fn derivation_dim(&self) -> usize {
        let n = self.dim;
        let columns: Vec<Vec<Scalar>> = (0..n * n)
            .map(|idx| {
                let mut b = Matrix::zeros(n, n);
                b[(idx / n, idx % n)] = Scalar::one();
                (1..=n)
                    .flat_map(|k| {
                        let defect = &endo_act(&b, &self.de[k - 1]) - &self.d(&endo_act(&b, &Form::e(n, k)));
                        defect.coords(2)
                    })
                    .collect()
            })
            .collect();
        n * n - span_rank(&columns)
    }

    /// Whether M (acting on vectors, columns are images of e_j) is an automorphism.
    pub fn is_automorphism(&self, m: &Matrix) -> Result<bool, LieError> {
        if !m.is_square() || m.rows() != self.dim {
            return Err(LieError::DimMismatch(m.rows(), self.dim));
        }
        if m.det().is_zero() {
            return Err(LieError::Singular);
        }
        Ok((1..=self.dim).all(|k| {
            let pulled = Form::e(self.dim, k).pullback(m);
            self.d(&pulled) == self.de[k - 1].pullback(m)
        }))
    }
}

/// A maximal linearly independent subset, in order.
fn independent_subset(vs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut kept: Vec<Vec<Scalar>> = Vec::new();
    for v in vs {
        let mut trial = kept.clone();
        trial.push(v.clone());
        if span_rank(&trial) == trial.len() {
            kept = trial;
        }
    }
    kept
}

impl std::fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.de.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl std::fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieAlgebra[{}] {}", self.label, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(n: usize, t: &str) -> Form {
        Form::parse(n, t).unwrap()
    }

    #[test]
    fn salamon_parsing() {
        let g = LieAlgebra::parse_salamon("(0,0,0,0,0,12,13)").unwrap();
        assert_eq!(g.de(6), &form(7, "12"));
        assert_eq!(g.de(7), &form(7, "13"));
        let g = LieAlgebra::parse_salamon("(0,0,0,0,0,13+42,14+23)").unwrap();
        assert_eq!(g.de(6), &form(7, "13 - 24"));
        assert!(matches!(
            LieAlgebra::parse_salamon("(0,0,19)"),
            Err(LieError::IndexOutOfRange { index: 9, dim: 3 })
        ));
        assert!(LieAlgebra::parse_salamon("0,0").is_err());
    }

    #[test]
    fn differential_of_products() {
        let g = LieAlgebra::parse_salamon("(0,0,0,0,0,12,13)").unwrap();
        let e67 = form(7, "67");
        let expected = &g.de(6).wedge(&Form::e(7, 7)) - &Form::e(7, 6).wedge(g.de(7));
        assert_eq!(g.d(&e67), expected);
        assert_eq!(g.d(&e67), form(7, "127 - 136"));
        assert!(LieAlgebra::abelian(7).d(&form(7, "123 + 45")).is_zero());
    }

    #[test]
    fn jacobi_detection() {
        assert!(!LieAlgebra::parse_salamon("(0,12,23,0)").unwrap().check_jacobi());
        assert!(LieAlgebra::parse_salamon("(0,0,12,13)").unwrap().check_jacobi());
        let bad = LieAlgebra::parse_salamon("(0,12,23,0)").unwrap();
        assert!(matches!(bad.betti(1), Err(LieError::JacobiFail(_))));
    }

    #[test]
    fn betti_of_small_algebras() {
        assert_eq!(LieAlgebra::abelian(7).betti(3).unwrap(), 35);
        let heis = LieAlgebra::parse_salamon("(0,0,12)").unwrap();
        assert_eq!(heis.betti_numbers().unwrap(), vec![1, 2, 2, 1]);
        let g = LieAlgebra::parse_salamon("(0,0,0,0,0,12,13)").unwrap();
        assert_eq!(g.product_with_line().betti(1).unwrap(), g.betti(1).unwrap() + 1);
    }

    #[test]
    fn file_format_round_trip() {
        let g = LieAlgebra::parse_salamon("(0,0,12,13)").unwrap().with_label("test");
        let h = LieAlgebra::parse_file(&g.to_file_string()).unwrap();
        assert_eq!(g, h);
        let s = LieAlgebra::parse_file("dim 4\nlabel x\nsalamon (0,0,12,13)\n").unwrap();
        assert_eq!(s.differentials(), g.differentials());
        assert!(LieAlgebra::parse_file("d e1 = 12").is_err());
        assert!(LieAlgebra::parse_file("dim 3\nd e4 = 12").is_err());
    }

    #[test]
    fn coframe_change_inverts() {
        let g = LieAlgebra::parse_salamon("(0,0,12,13)").unwrap();
        let mut m = Matrix::identity(4);
        m[(0, 1)] = Scalar::from_int(1);
        m[(3, 3)] = Scalar::sqrt(3).unwrap();
        let h = g.change_coframe(&m).unwrap();
        assert!(h.check_jacobi());
        let back = h.change_coframe(&m.inverse().unwrap()).unwrap();
        assert_eq!(back.differentials(), g.differentials());
        assert_eq!(g.change_coframe(&Matrix::zeros(4, 4)), Err(LieError::Singular));
    }

    #[test]
    fn semidirect_round_trip() {
        let g = LieAlgebra::parse_salamon("(0,0,12,0)").unwrap();
        let zero = Matrix::zeros(4, 4);
        let p = g.semidirect_extend(&zero, &Scalar::one()).unwrap();
        assert_eq!(p.differentials(), g.product_with_line().differentials());
        let mut b = Matrix::zeros(4, 4);
        b[(0, 0)] = Scalar::one();
        b[(2, 2)] = Scalar::one();
        let ext = g.semidirect_extend(&b, &Scalar::ratio(1, 2)).unwrap();
        assert!(ext.check_jacobi());
        let (ideal, b2) = ext.semidirect_split(&Scalar::ratio(1, 2)).unwrap();
        assert_eq!(ideal.differentials(), g.differentials());
        assert_eq!(b2, b);
        let mut not_der = Matrix::zeros(4, 4);
        not_der[(0, 0)] = Scalar::one();
        assert_eq!(
            g.semidirect_extend(&not_der, &Scalar::one()),
            Err(LieError::NotADerivation)
        );
    }

    #[test]
    fn heisenberg_invariants_and_automorphisms() {
        let g = LieAlgebra::parse_salamon("(0,0,12)").unwrap();
        let inv = g.invariants().unwrap();
        assert_eq!(inv.b1, 2);
        assert_eq!(inv.lower_central, vec![3, 1, 0]);
        assert!(g.is_automorphism(&Matrix::identity(3)).unwrap());
        let mut swap = Matrix::zeros(3, 3);
        swap[(0, 2)] = Scalar::one();
        swap[(2, 0)] = Scalar::one();
        swap[(1, 1)] = Scalar::one();
        assert!(!g.is_automorphism(&swap).unwrap());
    }
}
