use proptest::prelude::*;
use so4_geom::canon::so4_generators;
use so4_geom::exterior::basis_masks;
use so4_geom::torsion::so4_split;
use so4_geom::{Form, LieAlgebra, Matrix, Scalar};

fn rational() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (
        rational(),
        rational(),
        prop::sample::select(vec![2u64, 3, 5, 6, 10, 15, 30]),
    )
        .prop_map(|(a, b, r)| &a + &(&b * &Scalar::sqrt(r).unwrap()))
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

fn form(dim: usize, k: usize) -> impl Strategy<Value = Form> {
    let masks = basis_masks(dim, k);
    prop::collection::vec(prop::option::weighted(0.4, -3i64..=3), masks.len()).prop_map(move |cs| {
        let mut f = Form::zero(dim);
        for (m, c) in masks.iter().zip(cs) {
            if let Some(c) = c {
                f.add_term(*m, &Scalar::from_int(c));
            }
        }
        f
    })
}

fn mixed_form(dim: usize) -> impl Strategy<Value = Form> {
    (0..=dim).prop_flat_map(move |k| form(dim, k))
}

/// Sparse structure equations in dimension 4 or 5; a good share satisfy Jacobi.
fn algebra() -> impl Strategy<Value = LieAlgebra> {
    (4usize..=5).prop_flat_map(|n| {
        prop::collection::vec(form(n, 2).prop_map(|f| sparse(&f)), n)
            .prop_map(|de| LieAlgebra::new("random", de).unwrap())
    })
}

fn sparse(f: &Form) -> Form {
    let mut out = Form::zero(f.dim());
    for (m, c) in f.terms().take(1) {
        out.add_term(m, c);
    }
    out
}

/// Unit lower triangular times a diagonal of small nonzero integers.
fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    (
        prop::collection::vec(-2i64..=2, n * n),
        prop::collection::vec(prop::sample::select(vec![-2i64, -1, 1, 3]), n),
    )
        .prop_map(move |(low, diag)| {
            Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
                std::cmp::Ordering::Greater => Scalar::from_int(low[i * n + j]),
                std::cmp::Ordering::Equal => Scalar::from_int(diag[i]),
                std::cmp::Ordering::Less => Scalar::zero(),
            })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_display_round_trips(x in scalar()) {
        prop_assert_eq!(Scalar::parse(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn scalar_field_axioms(x in scalar(), y in scalar(), z in nonzero_scalar()) {
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &z) * &z.inv().unwrap(), x.clone());
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn form_display_round_trips(f in mixed_form(7)) {
        prop_assert_eq!(Form::parse(7, &f.to_string()).unwrap(), f);
    }

    #[test]
    fn hodge_star_squares_to_sign(n in 1usize..=8, k in 0usize..=8, seed in any::<u64>()) {
        prop_assume!(k <= n);
        let masks = basis_masks(n, k);
        let mut f = Form::zero(n);
        for (i, m) in masks.iter().enumerate() {
            let c = ((seed >> (i % 60)) & 7) as i64 - 3;
            f.add_term(*m, &Scalar::from_int(c));
        }
        let sign = if (k * (n - k)) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(f.hodge_star().unwrap().hodge_star().unwrap(), f.scale(&Scalar::from_int(sign)));
    }

    #[test]
    fn wedge_is_associative(a in mixed_form(6), b in mixed_form(6), c in mixed_form(6)) {
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn wedge_is_graded_commutative(
        (k, l, a, b) in (0usize..=4, 0usize..=4)
            .prop_flat_map(|(k, l)| (Just(k), Just(l), form(6, k), form(6, l)))
    ) {
        let sign = if (k * l) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(a.wedge(&b), b.wedge(&a).scale(&Scalar::from_int(sign)));
    }

    #[test]
    fn d_squared_vanishes_exactly_for_lie_brackets(g in algebra()) {
        let d_squared_zero = (1..=g.dim()).all(|k| g.d(g.de(k)).is_zero());
        prop_assert_eq!(d_squared_zero, g.jacobi_on_brackets());
        prop_assert_eq!(g.check_jacobi(), g.jacobi_on_brackets());
    }

    #[test]
    fn coframe_change_is_invertible(g in algebra(), m in invertible(5)) {
        let n = g.dim();
        let m = Matrix::from_fn(n, n, |i, j| m[(i, j)].clone());
        let there = g.change_coframe(&m).unwrap();
        let back = there.change_coframe(&m.inverse().unwrap()).unwrap();
        prop_assert_eq!(back.differentials(), g.differentials());
        prop_assert_eq!(there.jacobi_on_brackets(), g.jacobi_on_brackets());
    }

    #[test]
    fn so4_split_reconstructs(w in form(7, 2)) {
        let (part, perp) = so4_split(&w);
        prop_assert_eq!(&part + &perp, w);
        for g in so4_generators() {
            prop_assert!(perp.inner(&g).is_zero());
        }
        let (again, rest) = so4_split(&part);
        prop_assert_eq!(again, part);
        prop_assert!(rest.is_zero());
    }
}

#[test]
fn random_algebras_cover_both_outcomes() {
    use proptest::strategy::ValueTree;
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let verdicts: Vec<bool> = (0..200)
        .map(|_| algebra().new_tree(&mut runner).unwrap().current().jacobi_on_brackets())
        .collect();
    assert!(verdicts.iter().any(|&v| v) && verdicts.iter().any(|&v| !v));
}
