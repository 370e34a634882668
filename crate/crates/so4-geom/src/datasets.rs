//! Builtin algebras: the eleven nilpotent examples and their native families with adapted
//! coframes, the two solvable families, the invariant-torsion list and the lattice data.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exterior::Form;
use crate::liealg::{LieAlgebra, LieError};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::torsion::{self, TorsionError, TorsionFamily};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DatasetError {
    #[error("unknown builtin `{0}`")]
    Unknown(String),
    #[error("builtin `{name}` has no parameter `{param}`")]
    UnknownParam { name: String, param: String },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Torsion(#[from] TorsionError),
}

/// One row of the nilpotent list: Salamon string and (b₁, b₂, b₃).
#[derive(Debug, Clone, Copy)]
pub struct NilpotentEntry {
    pub name: &'static str,
    pub salamon: &'static str,
    pub betti: [usize; 3],
}

pub const NILPOTENT: [NilpotentEntry; 11] = [
    NilpotentEntry {
        name: "n1",
        salamon: "(0,0,0,12,23,-13,26-34-16+25)",
        betti: [3, 7, 10],
    },
    NilpotentEntry {
        name: "n2",
        salamon: "(0,0,0,0,0,12,13)",
        betti: [5, 13, 21],
    },
    NilpotentEntry {
        name: "n3",
        salamon: "(0,0,0,0,12-34,13+24,14)",
        betti: [4, 11, 16],
    },
    NilpotentEntry {
        name: "n4",
        salamon: "(0,0,0,0,12+34,23,24)",
        betti: [4, 11, 17],
    },
    NilpotentEntry {
        name: "n5",
        salamon: "(0,0,0,0,12,13,34)",
        betti: [4, 11, 16],
    },
    NilpotentEntry {
        name: "n6",
        salamon: "(0,0,0,12,13,23+14,25+34)",
        betti: [3, 6, 10],
    },
    NilpotentEntry {
        name: "n7",
        salamon: "(0,0,0,12,13,15+35,25+34)",
        betti: [3, 6, 10],
    },
    NilpotentEntry {
        name: "n8",
        salamon: "(0,0,0,0,0,12,34)",
        betti: [5, 12, 18],
    },
    NilpotentEntry {
        name: "n9",
        salamon: "(0,0,0,0,0,12,14+23)",
        betti: [5, 12, 18],
    },
    NilpotentEntry {
        name: "n10",
        salamon: "(0,0,0,0,0,13+42,14+23)",
        betti: [5, 12, 18],
    },
    NilpotentEntry {
        name: "n11",
        salamon: "(0,0,0,0,12,13,14+25)",
        betti: [4, 9, 13],
    },
];

pub fn nilpotent_entry(name: &str) -> Option<&'static NilpotentEntry> {
    NILPOTENT.iter().find(|e| e.name == name)
}

pub fn nilpotent_table_algebra(entry: &NilpotentEntry) -> LieAlgebra {
    LieAlgebra::parse_salamon(entry.salamon)
        .expect("table entry")
        .with_label(entry.name)
}

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// Σ c·f^{ij} from (coefficient, "ij") pairs in dimension 7.
fn lin(terms: &[(Scalar, &str)]) -> Form {
    let mut f = Form::zero(7);
    for (c, idx) in terms {
        f.add_scaled(&Form::parse(7, idx).expect("index literal"), c);
    }
    f
}

fn one() -> Scalar {
    Scalar::one()
}

fn algebra(label: String, de: Vec<Form>) -> LieAlgebra {
    LieAlgebra::new(label, de).expect("well-formed data")
}

/// Coframe rows as sparse (column, coefficient) lists, 1-based columns, times a common factor.
fn coframe(rows: &[&[(usize, Scalar)]], factor: &Scalar) -> Matrix {
    let mut m = Matrix::zeros(7, 7);
    for (i, row) in rows.iter().enumerate() {
        for (j, c) in row.iter() {
            m[(i, j - 1)] = c * factor;
        }
    }
    m
}

fn s3() -> Scalar {
    Scalar::sqrt(3).unwrap()
}

fn inv_s2() -> Scalar {
    Scalar::sqrt(2).unwrap().inv().unwrap()
}

fn inv_s3() -> Scalar {
    s3().inv().unwrap()
}

pub fn n1_native() -> LieAlgebra {
    let z = Form::zero(7);
    algebra(
        "n1 (native)".into(),
        vec![
            z.clone(),
            z.clone(),
            lin(&[(one(), "27")]),
            lin(&[(one(), "27"), (one(), "17")]),
            lin(&[(one(), "12")]),
            lin(&[(one(), "14"), (one(), "23"), (one(), "57")]),
            z,
        ],
    )
}

pub fn n1_coframe() -> Matrix {
    let r3 = s3();
    coframe(
        &[
            &[(1, one()), (2, one())],
            &[(6, one())],
            &[(5, int(-1))],
            &[(3, one())],
            &[(4, r3.clone())],
            &[(1, -&r3)],
            &[(7, r3.clone())],
        ],
        &one(),
    )
}

pub fn n2_native() -> LieAlgebra {
    let z = Form::zero(7);
    algebra(
        "n2 (native)".into(),
        vec![
            z.clone(),
            z.clone(),
            z.clone(),
            z.clone(),
            lin(&[(one(), "27"), (one(), "12")]),
            lin(&[(one(), "37"), (one(), "13")]),
            z,
        ],
    )
}

pub fn n2_coframe() -> Matrix {
    let r3 = s3();
    coframe(
        &[
            &[(2, one()), (6, int(-1))],
            &[(1, one())],
            &[(4, int(-1))],
            &[(5, one())],
            &[(3, r3.clone())],
            &[(6, -&r3)],
            &[(7, r3.clone())],
        ],
        &one(),
    )
}

/// The three-parameter family realising n3, …, n7.
pub fn family_n3_7(a: &Scalar, b: &Scalar, c: &Scalar) -> LieAlgebra {
    let z = Form::zero(7);
    let de = vec![
        z.clone(),
        z.clone(),
        lin(&[(c.clone(), "17"), (-b, "27")]),
        lin(&[(b * &int(3), "27"), (c * &int(-2), "17"), (one(), "12")]),
        lin(&[
            (a.clone(), "17"),
            (int(3), "27"),
            (b * &int(-3), "37"),
            (-b, "47"),
            (one(), "13"),
        ]),
        lin(&[
            (int(-3), "17"),
            (-a, "27"),
            (-c, "47"),
            (c * &int(-2), "37"),
            (one(), "23"),
        ]),
        z,
    ];
    algebra(format!("n3-7 family (a={a}, b={b}, c={c})"), de)
}

pub fn coframe_n3_7() -> Matrix {
    let t = inv_s3();
    coframe(
        &[
            &[(2, one()), (5, int(-1))],
            &[(6, one()), (1, int(-1))],
            &[(3, int(-1))],
            &[(7, int(2))],
            &[(3, &t * &int(-5)), (4, &t * &int(-2))],
            &[(1, t.clone()), (6, t.clone())],
            &[(2, t.clone()), (5, t.clone())],
        ],
        &inv_s2(),
    )
}

/// The one-parameter family realising n8, n9, n10.
pub fn family_n8_10(a: &Scalar) -> LieAlgebra {
    let z = Form::zero(7);
    let de = vec![
        z.clone(),
        z.clone(),
        z.clone(),
        z.clone(),
        lin(&[(a.clone(), "27"), (one(), "12"), (int(2), "37")]),
        lin(&[(-a, "37"), (one(), "13"), (int(-2), "27")]),
        z,
    ];
    algebra(format!("n8-10 family (a={a})"), de)
}

pub fn coframe_n8_10() -> Matrix {
    let t = inv_s3();
    coframe(
        &[
            &[(3, one()), (5, int(-1))],
            &[(6, one()), (2, int(-1))],
            &[(1, one())],
            &[(7, int(2))],
            &[(1, -&t), (4, &t * &int(-2))],
            &[(2, t.clone()), (6, t.clone())],
            &[(3, t.clone()), (5, t.clone())],
        ],
        &inv_s2(),
    )
}

/// The two-parameter family realising n11 (a ≠ 0).
pub fn family_n11(a: &Scalar, b: &Scalar) -> LieAlgebra {
    let z = Form::zero(7);
    let de = vec![
        lin(&[(-a, "27")]),
        z.clone(),
        lin(&[(a.clone(), "27")]),
        z.clone(),
        lin(&[(-b, "47"), (-a, "17"), (-a, "37"), (int(-1), "27")]),
        lin(&[(b.clone(), "27"), (one(), "47"), (one(), "12")]),
        z,
    ];
    algebra(format!("n11 family (a={a}, b={b})"), de)
}

pub fn coframe_n11() -> Matrix {
    let t = inv_s3();
    coframe(
        &[
            &[(4, one()), (6, int(-1))],
            &[(5, one()), (2, int(-1))],
            &[(1, one())],
            &[(7, int(2))],
            &[(1, -&t), (3, &t * &int(-2))],
            &[(2, t.clone()), (5, t.clone())],
            &[(4, t.clone()), (6, t.clone())],
        ],
        &inv_s2(),
    )
}

pub fn solv1(a: &Scalar, b: &Scalar, c: &Scalar) -> LieAlgebra {
    let de = vec![
        lin(&[(c.clone(), "27"), (int(-4), "17")]),
        lin(&[(int(4), "27")]),
        lin(&[(int(-4), "37")]),
        lin(&[(int(4), "47"), (-a, "37")]),
        lin(&[(b.clone(), "27"), (a.clone(), "17"), (one(), "12"), (one(), "37")]),
        lin(&[(one(), "34"), (-b, "37"), (-c, "47"), (int(-1), "27")]),
        Form::zero(7),
    ];
    algebra(format!("solv1 (a={a}, b={b}, c={c})"), de)
}

pub fn coframe_solv1() -> Matrix {
    let t = inv_s3();
    coframe(
        &[
            &[(5, one()), (3, int(-1))],
            &[(2, one()), (6, int(-1))],
            &[(1, one()), (4, int(-1))],
            &[(7, int(2))],
            &[(1, -&t), (4, -&t)],
            &[(2, t.clone()), (6, t.clone())],
            &[(3, t.clone()), (5, t.clone())],
        ],
        &inv_s2(),
    )
}

pub fn solv2(a: &Scalar, b: &Scalar) -> LieAlgebra {
    let de = vec![
        lin(&[(int(2), "17")]),
        lin(&[(int(-4), "27")]),
        lin(&[(-a, "27"), (int(-2), "37"), (int(-1), "17"), (-b, "47")]),
        lin(&[(int(6), "47")]),
        lin(&[(one(), "12"), (b.clone(), "17"), (int(-2), "57")]),
        lin(&[(a.clone(), "17"), (one(), "27"), (one(), "15")]),
        Form::zero(7),
    ];
    algebra(format!("solv2 (a={a}, b={b})"), de)
}

pub fn coframe_solv2() -> Matrix {
    let t = inv_s3();
    coframe(
        &[
            &[(6, one()), (2, int(-1))],
            &[(5, one()), (4, int(-1))],
            &[(1, one()), (3, int(-1))],
            &[(7, int(2))],
            &[(1, -&t), (3, -&t)],
            &[(4, t.clone()), (5, t.clone())],
            &[(2, t.clone()), (6, t.clone())],
        ],
        &inv_s2(),
    )
}

/// The 6-dimensional nilradical with [f̃₁,f̃₂] = 4f̃₅, [f̃₃,f̃₄] = 4f̃₆.
pub fn lattice_algebra() -> LieAlgebra {
    let z = Form::zero(6);
    let de = vec![
        z.clone(),
        z.clone(),
        z.clone(),
        z.clone(),
        Form::parse(6, "-4*12").unwrap(),
        Form::parse(6, "-4*34").unwrap(),
    ];
    algebra("lattice nilradical".into(), de)
}

/// The integer matrix of exp(t₁A) in the basis f̃₁..f̃₆.
pub fn lattice_matrix() -> Matrix {
    let rows: [[i64; 6]; 6] = [
        [3, 1, 0, 0, 0, 0],
        [-1, 0, 0, 0, 0, 0],
        [0, 0, 3, 1, 0, 0],
        [0, 0, -1, 0, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
    ];
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
}

/// A harmonic example: an algebra in native coordinates with its adapted coframe.
#[derive(Debug, Clone)]
pub struct HarmonicExample {
    /// which nilpotent algebra (or solvable family) it realises
    pub target: &'static str,
    pub algebra: LieAlgebra,
    pub coframe: Matrix,
}

fn ex(target: &'static str, algebra: LieAlgebra, coframe: Matrix) -> HarmonicExample {
    HarmonicExample {
        target,
        algebra,
        coframe,
    }
}

/// Parameter samples for each nilpotent algebra; the isomorphism type fixes the range.
pub fn nilpotent_examples() -> Vec<HarmonicExample> {
    let mut out = vec![ex("n1", n1_native(), n1_coframe()), ex("n2", n2_native(), n2_coframe())];
    let f37 = |a: i64, b: i64, c: i64| family_n3_7(&int(a), &int(b), &int(c));
    type Samples = &'static [(i64, i64, i64)];
    let samples_37: [(&str, Samples); 5] = [
        ("n3", &[(0, 0, 0), (1, 0, 0), (-2, 0, 0)]),
        ("n4", &[(3, 0, 0), (-3, 0, 0)]),
        ("n5", &[(4, 0, 0), (5, 0, 0), (-7, 0, 0)]),
        ("n6", &[(0, 1, 0), (1, 0, 1), (2, -3, 0)]),
        ("n7", &[(1, 1, 1), (2, 1, 3), (0, -1, 2)]),
    ];
    for (name, pts) in samples_37 {
        for &(a, b, c) in pts {
            out.push(ex(name, f37(a, b, c), coframe_n3_7()));
        }
    }
    let samples_810: [(&str, &[i64]); 3] = [("n8", &[3, 4, -5]), ("n9", &[2, -2]), ("n10", &[0, 1, -1])];
    for (name, pts) in samples_810 {
        for &a in pts {
            out.push(ex(name, family_n8_10(&int(a)), coframe_n8_10()));
        }
    }
    for (a, b) in [(1, 0), (1, 1), (-2, 3)] {
        out.push(ex("n11", family_n11(&int(a), &int(b)), coframe_n11()));
    }
    out
}

pub fn solvable_examples() -> Vec<HarmonicExample> {
    let mut out = Vec::new();
    for (a, b, c) in [(0, 0, 0), (1, 2, 3), (-1, 1, 0)] {
        out.push(ex("solv1", solv1(&int(a), &int(b), &int(c)), coframe_solv1()));
    }
    for (a, b) in [(0, 0), (1, 2), (-1, 3)] {
        out.push(ex("solv2", solv2(&int(a), &int(b)), coframe_solv2()));
    }
    out
}

pub type Params = BTreeMap<String, Scalar>;

fn take(params: &Params, name: &str, allowed: &[&str], key: &str, default: i64) -> Result<Scalar, DatasetError> {
    if let Some(bad) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(DatasetError::UnknownParam {
            name: name.into(),
            param: bad.clone(),
        });
    }
    Ok(params.get(key).cloned().unwrap_or_else(|| int(default)))
}

/// Every builtin name accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 24] = [
    "n1", "n2", "n3", "n4", "n5", "n6", "n7", "n8", "n9", "n10", "n11", "solv1", "solv2", "h1", "h2", "h3", "h4", "h5",
    "h6", "h7", "h8", "abelian7", "f1", "lattice",
];

/// Where each builtin comes from, one line per name.
pub fn origin(name: &str) -> Option<&'static str> {
    Some(match name {
        "n1" | "n2" => "nilpotent list, explicit algebra with adapted coframe",
        "n3" | "n4" | "n5" | "n6" | "n7" => "nilpotent list, three-parameter family (a, b, c)",
        "n8" | "n9" | "n10" => "nilpotent list, one-parameter family (a)",
        "n11" => "nilpotent list, two-parameter family (a, b)",
        "f1" => "example F1, the family realising n8, n9, n10",
        "solv1" => "first solvable family (a, b, c)",
        "solv2" => "second solvable family (a, b)",
        "h1" | "h2" | "h3" | "h4" => "invariant-torsion list, parameter-free algebra",
        "h5" | "h6" => "invariant-torsion list, flat-base family (a)",
        "h7" => "invariant-torsion list, hyperbolic-base family (a, kappa)",
        "h8" => "invariant-torsion list, non-conformally-flat base family (a, kappa)",
        "abelian7" => "abelian R^7, the torsion-free model",
        "lattice" => "nilradical carrying the integral lattice automorphism",
        _ => return None,
    })
}

/// A builtin algebra with its adapted coframe, if it is not already adapted.
/// Family parameters default to a sample realising the named algebra.
pub fn builtin(name: &str, params: &Params) -> Result<(LieAlgebra, Option<Matrix>), DatasetError> {
    let none: &[&str] = &[];
    let default_37 = |n: &str| match n {
        "n3" => (0, 0, 0),
        "n4" => (3, 0, 0),
        "n5" => (4, 0, 0),
        "n6" => (0, 1, 0),
        _ => (1, 1, 1),
    };
    Ok(match name {
        "n1" => {
            take(params, name, none, "", 0)?;
            (n1_native().with_label("n1"), Some(n1_coframe()))
        }
        "n2" => {
            take(params, name, none, "", 0)?;
            (n2_native().with_label("n2"), Some(n2_coframe()))
        }
        "n3" | "n4" | "n5" | "n6" | "n7" => {
            let keys = &["a", "b", "c"];
            let (da, db, dc) = default_37(name);
            let a = take(params, name, keys, "a", da)?;
            let b = take(params, name, keys, "b", db)?;
            let c = take(params, name, keys, "c", dc)?;
            (family_n3_7(&a, &b, &c), Some(coframe_n3_7()))
        }
        "n8" | "n9" | "n10" | "f1" => {
            let d = match name {
                "n8" => 3,
                "n9" => 2,
                _ => 0,
            };
            let a = take(params, name, &["a"], "a", d)?;
            (family_n8_10(&a), Some(coframe_n8_10()))
        }
        "n11" => {
            let a = take(params, name, &["a", "b"], "a", 1)?;
            let b = take(params, name, &["a", "b"], "b", 0)?;
            (family_n11(&a, &b), Some(coframe_n11()))
        }
        "solv1" => {
            let keys = &["a", "b", "c"];
            let a = take(params, name, keys, "a", 0)?;
            let b = take(params, name, keys, "b", 0)?;
            let c = take(params, name, keys, "c", 0)?;
            (solv1(&a, &b, &c), Some(coframe_solv1()))
        }
        "solv2" => {
            let a = take(params, name, &["a", "b"], "a", 0)?;
            let b = take(params, name, &["a", "b"], "b", 0)?;
            (solv2(&a, &b), Some(coframe_solv2()))
        }
        "abelian7" => {
            take(params, name, none, "", 0)?;
            (LieAlgebra::abelian(7).with_label("abelian7"), None)
        }
        "lattice" => {
            take(params, name, none, "", 0)?;
            (lattice_algebra(), None)
        }
        _ => {
            let which = TorsionFamily::parse(name).ok_or_else(|| DatasetError::Unknown(name.into()))?;
            let keys = which.params();
            let a = take(params, name, keys, "a", 1)?;
            let kappa = take(params, name, keys, "kappa", 0)?;
            (torsion::build_table2(which, &a, &kappa)?, None)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_resolves() {
        for name in BUILTIN_NAMES {
            assert!(origin(name).is_some(), "{name}");
            let (g, m) = builtin(name, &Params::new()).unwrap();
            assert!(g.check_jacobi(), "{name}");
            if let Some(m) = m {
                assert!(!m.det().is_zero(), "{name}");
            }
        }
        assert!(matches!(builtin("n12", &Params::new()), Err(DatasetError::Unknown(_))));
        let mut p = Params::new();
        p.insert("z".into(), Scalar::one());
        assert!(matches!(builtin("n3", &p), Err(DatasetError::UnknownParam { .. })));
    }

    #[test]
    fn lattice_matrix_is_unimodular() {
        assert_eq!(lattice_matrix().det(), Scalar::one());
    }
}
