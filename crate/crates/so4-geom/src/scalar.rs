//! Exact arithmetic in Q(√2, √3, √5).
//!
//! An element is stored as a sparse list of rational coefficients keyed by a
//! radical mask: bit 0 stands for √2, bit 1 for √3, bit 2 for √5, so mask 3 is
//! √6 and mask 7 is √30.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

const PRIMES: [u32; 3] = [2, 3, 5];

/// Masks listed in canonical print order: 1, √2, √3, √5, √6, √10, √15, √30.
const PRINT_ORDER: [u8; 8] = [0, 1, 2, 4, 3, 5, 6, 7];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    // sorted by mask, no zero coefficients
    terms: Vec<(u8, BigRational)>,
}

fn radicand(mask: u8) -> u32 {
    (0..3).filter(|b| mask & (1 << b) != 0).map(|b| PRIMES[b]).product()
}

fn mask_of_radicand(n: u32) -> Option<u8> {
    match n {
        1 => Some(0),
        2 => Some(1),
        3 => Some(2),
        5 => Some(4),
        6 => Some(3),
        10 => Some(5),
        15 => Some(6),
        30 => Some(7),
        _ => None,
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            Scalar { terms: vec![(0, q)] }
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as a scalar. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The square root of a non-negative integer whose square-free part divides 30.
    pub fn sqrt(n: u64) -> Option<Self> {
        if n == 0 {
            return Some(Self::zero());
        }
        let mut rest = n;
        let mut outside: u64 = 1;
        let mut inside: u32 = 1;
        for p in PRIMES {
            let p = p as u64;
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            outside *= p.pow(e / 2);
            if e % 2 == 1 {
                inside *= p as u32;
            }
        }
        let r = rest.sqrt();
        if r * r != rest {
            return None;
        }
        outside *= r;
        let mask = mask_of_radicand(inside)?;
        let coeff = BigRational::from_integer(BigInt::from(outside));
        Some(Scalar {
            terms: vec![(mask, coeff)],
        })
    }

    /// Coefficient of the radical √m for m in {1,2,3,5,6,10,15,30}.
    pub fn coeff(&self, radical: u32) -> BigRational {
        let Some(mask) = mask_of_radicand(radical) else {
            return BigRational::zero();
        };
        self.terms
            .iter()
            .find(|(m, _)| *m == mask)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|(m, _)| *m == 0)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(0, q)] => Some(q.clone()),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| c.to_f64().unwrap_or(f64::NAN) * (radicand(*m) as f64).sqrt())
            .sum()
    }

    /// Galois conjugate flipping the sign of √p for the prime with index `bit`.
    fn conjugate(&self, bit: u8) -> Self {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| if m & (1 << bit) != 0 { (*m, -c) } else { (*m, c.clone()) })
                .collect(),
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        let c2 = self.conjugate(0);
        let n1 = self * &c2;
        let c3 = n1.conjugate(1);
        let n2 = &n1 * &c3;
        let c5 = n2.conjugate(2);
        let n3 = &n2 * &c5;
        let norm = n3.to_rational().expect("norm lies in Q");
        Ok(&(&c2 * &c3) * &c5 * &Self::from_rational(norm.recip()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Exact sign, decided by interval evaluation with growing precision.
    pub fn signum(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        if let Some(q) = self.to_rational() {
            return if q.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            };
        }
        let mut bits = 32u32;
        loop {
            let (lo, hi) = self.interval(bits);
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            bits *= 2;
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    fn interval(&self, bits: u32) -> (BigRational, BigRational) {
        let scale = BigInt::one() << bits;
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (m, c) in &self.terms {
            let n = BigInt::from(radicand(*m));
            let root_floor = (n * &scale * &scale).sqrt();
            let r_lo = BigRational::new(root_floor.clone(), scale.clone());
            let r_hi = BigRational::new(root_floor + 1, scale.clone());
            if c.is_positive() {
                lo += c * &r_lo;
                hi += c * &r_hi;
            } else {
                lo += c * &r_hi;
                hi += c * &r_lo;
            }
        }
        (lo, hi)
    }

    pub fn parse(text: &str) -> Result<Self, ScalarError> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(v)
    }
}

fn mul_terms(a: &[(u8, BigRational)], b: &[(u8, BigRational)]) -> Scalar {
    let mut acc: [Option<BigRational>; 8] = Default::default();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = ma ^ mb;
            let shared = radicand(ma & mb);
            let mut prod = ca * cb;
            if shared != 1 {
                prod *= BigRational::from_integer(BigInt::from(shared));
            }
            match &mut acc[m as usize] {
                Some(x) => *x += prod,
                slot => *slot = Some(prod),
            }
        }
    }
    let terms = acc
        .into_iter()
        .enumerate()
        .filter_map(|(m, c)| c.filter(|c| !c.is_zero()).map(|c| (m as u8, c)))
        .collect();
    Scalar { terms }
}

fn add_terms(a: &[(u8, BigRational)], b: &[(u8, BigRational)], negate_b: bool) -> Scalar {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
            out.push((b[j].0, c));
            j += 1;
        } else {
            let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
            if !c.is_zero() {
                out.push((a[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    Scalar { terms: out }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        add_terms(&self.terms, &rhs.terms, false)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        add_terms(&self.terms, &rhs.terms, true)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        mul_terms(&self.terms, &rhs.terms)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::inv`] to handle that case.
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(mut self) -> Scalar {
        for (_, c) in &mut self.terms {
            *c = -&*c;
        }
        self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                self.$f(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl std::str::FromStr for Scalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scalar::parse(s)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for mask in PRINT_ORDER {
            let Some((_, c)) = self.terms.iter().find(|(m, _)| *m == mask) else {
                continue;
            };
            let negative = c.is_negative();
            let abs = c.abs();
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            if mask == 0 {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "sqrt{}", radicand(mask))?;
            } else {
                write!(f, "{}*sqrt{}", fmt_rational(&abs), radicand(mask))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == b'+' { acc + t } else { acc - t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.unary()?;
            if op == b'*' {
                acc = acc * rhs;
            } else {
                let inv = rhs.inv().map_err(|_| ScalarError::Syntax {
                    pos: at,
                    msg: "division by zero".into(),
                })?;
                acc = acc * inv;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.atom()
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b's') => {
                if !self.src[self.pos..].starts_with(b"sqrt") {
                    return Err(self.err("expected 'sqrt'"));
                }
                self.pos += 4;
                let at = self.pos;
                let n = self.digits().ok_or_else(|| self.err("expected radicand"))?;
                let n: u64 = n.parse().map_err(|_| self.err("radicand too large"))?;
                Scalar::sqrt(n).ok_or(ScalarError::Syntax {
                    pos: at,
                    msg: format!("sqrt{n} is outside Q(sqrt2, sqrt3, sqrt5)"),
                })
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().unwrap();
                let n: BigInt = d.parse().map_err(|_| self.err("bad integer"))?;
                Ok(Scalar::from_rational(BigRational::from_integer(n)))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        Scalar::parse(t).unwrap()
    }

    #[test]
    fn radical_products() {
        assert_eq!(s("sqrt2") * s("sqrt3"), s("sqrt6"));
        assert_eq!(s("1 + sqrt2") * s("1 - sqrt2"), s("-1"));
        assert_eq!(s("1/2*(3+sqrt5)") * s("1/2*(3-sqrt5)"), Scalar::one());
        assert_eq!(s("sqrt6") * s("sqrt10"), s("2*sqrt15"));
        assert_eq!(s("sqrt30") * s("sqrt30"), Scalar::from_int(30));
    }

    #[test]
    fn inverses() {
        assert_eq!(s("sqrt5").inv().unwrap(), s("1/5*sqrt5"));
        assert_eq!(Scalar::one().inv().unwrap(), Scalar::one());
        assert_eq!(s("1+sqrt2").inv().unwrap(), s("-1+sqrt2"));
        assert_eq!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero));
        let x = s("1 + sqrt2 - 3*sqrt15 + 1/7*sqrt30");
        assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn parsing_and_format() {
        assert_eq!(s("1/2*sqrt3").coeff(3), BigRational::new(1.into(), 2.into()));
        assert_eq!(s("-3"), Scalar::from_int(-3));
        assert_eq!(s("1/2 + 1/2*sqrt5").to_string(), "1/2 + 1/2*sqrt5");
        assert_eq!(s("sqrt12"), s("2*sqrt3"));
        assert_eq!(s(" - sqrt2 ").to_string(), "-sqrt2");
        assert_eq!(s("4/6").to_string(), "2/3");
        assert!(matches!(
            Scalar::parse("sqrt7"),
            Err(ScalarError::Syntax { pos: 4, .. })
        ));
        assert!(matches!(Scalar::parse("1 +"), Err(ScalarError::Syntax { .. })));
        assert!(matches!(Scalar::parse("1/0"), Err(ScalarError::Syntax { .. })));
    }

    #[test]
    fn exact_sign() {
        assert_eq!(s("sqrt2 - 1").signum(), Ordering::Greater);
        assert_eq!(s("3 - sqrt10").signum(), Ordering::Less);
        // √2 + √3 = 3.1462643...
        assert_eq!((s("sqrt2 + sqrt3") - s("3146264/1000000")).signum(), Ordering::Greater);
        assert_eq!((s("sqrt2 + sqrt3") - s("3146265/1000000")).signum(), Ordering::Less);
        assert_eq!(Scalar::zero().signum(), Ordering::Equal);
    }
}
