use so4_geom::canon::{self, so_basis};
use so4_geom::datasets::{self, Params, NILPOTENT};
use so4_geom::exterior::endo_act;
use so4_geom::linalg::span_rank;
use so4_geom::quaternionic::{self, build_product};
use so4_geom::torsion::{self, TorsionFamily};
use so4_geom::{Form, LieAlgebra, Matrix, Scalar};

fn int(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn f1(a: i64) -> quaternionic::ProductStructure {
    let mut p = Params::new();
    p.insert("a".into(), int(a));
    let (g, m) = datasets::builtin("f1", &p).unwrap();
    build_product(&g, m.as_ref()).unwrap()
}

fn table2(which: TorsionFamily, a: i64) -> LieAlgebra {
    torsion::build_table2(which, &int(a), &int(0)).unwrap()
}

#[test]
fn listed_betti_numbers() {
    for e in NILPOTENT.iter() {
        let g = datasets::nilpotent_table_algebra(e);
        assert!(g.check_jacobi(), "{}", e.name);
        let b = g.betti_numbers().unwrap();
        assert_eq!(&b[1..4], &e.betti, "{}", e.name);
        // Poincaré duality for a unimodular algebra
        for k in 0..=7 {
            assert_eq!(b[k], b[7 - k]);
        }
    }
}

#[test]
fn listed_algebras_are_pairwise_distinguished() {
    let invs: Vec<_> = NILPOTENT
        .iter()
        .map(|e| {
            let g = datasets::nilpotent_table_algebra(e);
            (g.betti_numbers().unwrap(), g.invariants().unwrap())
        })
        .collect();
    for i in 0..invs.len() {
        for j in i + 1..invs.len() {
            assert_ne!(invs[i], invs[j], "{} vs {}", NILPOTENT[i].name, NILPOTENT[j].name);
        }
    }
}

#[test]
fn samples_are_harmonic_and_of_the_right_type() {
    for x in datasets::nilpotent_examples() {
        let entry = datasets::nilpotent_entry(x.target).unwrap();
        let want = datasets::nilpotent_table_algebra(entry).invariants().unwrap();
        let h = torsion::harmonic_check(&x.algebra, Some(&x.coframe)).unwrap();
        assert!(h.harmonic(), "{}", x.algebra.label());
        assert_eq!(h.adapted.invariants().unwrap(), want, "{}", x.algebra.label());
    }
}

#[test]
fn adapted_coframes_are_invertible() {
    let frames = [
        datasets::n1_coframe(),
        datasets::n2_coframe(),
        datasets::coframe_n3_7(),
        datasets::coframe_n8_10(),
        datasets::coframe_n11(),
        datasets::coframe_solv1(),
        datasets::coframe_solv2(),
    ];
    for m in frames {
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(7));
    }
}

#[test]
fn solvable_samples() {
    for x in datasets::solvable_examples() {
        let h = torsion::harmonic_check(&x.algebra, Some(&x.coframe)).unwrap();
        assert!(x.algebra.check_jacobi() && h.harmonic(), "{}", x.algebra.label());
        // only the direction transverse to the nilradical is closed
        assert_eq!(x.algebra.betti(1).unwrap(), 1);
    }
}

#[test]
fn lattice_automorphism() {
    let g = datasets::lattice_algebra();
    let m = datasets::lattice_matrix();
    assert!(g.is_automorphism(&m).unwrap());
    assert!(g.is_automorphism(&m.inverse().unwrap()).unwrap());
    let square = m.mul(&m);
    assert!(g.is_automorphism(&square).unwrap());
    assert_eq!(m.det(), int(1));
}

#[test]
fn hkt_verdicts() {
    let h2 = build_product(&table2(TorsionFamily::H2, 1), None).unwrap();
    let h3 = build_product(&table2(TorsionFamily::H3, 1), None).unwrap();
    assert!(quaternionic::hkt_check(&h2));
    assert!(!quaternionic::hkt_check(&h3));
    assert!(!quaternionic::hyperkaehler_check(&h2));
    assert!(!quaternionic::sigma_ideal_is_differential(&h2));
}

#[test]
fn eh_components_of_the_parameter_free_algebras() {
    let coef = |which| {
        let ps = build_product(&table2(which, 1), None).unwrap();
        let eh = quaternionic::eh_component(&ps).unwrap();
        assert!(eh.remainder_in_kh() && !eh.kh_part.is_zero() && eh.es3h_part.is_zero());
        eh.coef.unwrap()
    };
    // frozen outputs of the pipeline: +projection of ∇, alternation e^i∧ξ_i, orthogonal EH split
    assert_eq!(coef(TorsionFamily::H2), Scalar::ratio(1, 40));
    assert_eq!(coef(TorsionFamily::H3), Scalar::ratio(-3, 20));
    assert_eq!(coef(TorsionFamily::H4), Scalar::ratio(1, 20));
}

#[test]
fn eh_image_matches_its_casimir_block() {
    let image = quaternionic::eh_image();
    let blocks = canon::sp2sp1_isotypic_forms(3).unwrap();
    let eh = blocks.iter().find(|b| b.sp2 == "E" && b.p == 1).unwrap();
    assert_eq!(eh.dim, span_rank(&image));
    for v in &image {
        let f = Form::from_coords(8, 3, v);
        assert_eq!(canon::sp2sp1_component(&f, "E", 1), f);
    }
}

#[test]
fn flat_base_family_at_zero() {
    let h5 = table2(TorsionFamily::H5, 0);
    let ps = build_product(&h5, None).unwrap();
    assert!(ps.d_omega().is_zero());
    let eh = quaternionic::eh_component(&ps).unwrap();
    assert!(eh.skew.is_zero());
    // by hand from de3 = e14, de4 = -e13, dw2 = e1∧w3, dw3 = -e1∧w2
    let ds = ps.d_sigma();
    assert!(ds[0].is_zero());
    assert_eq!(ds[1], Form::parse(8, "-123 - 156 + 178").unwrap());
}

#[test]
fn orbit_dims_equal_automorphisms_modulo_the_stabilizer() {
    let (sp1, sp2) = canon::sp2sp1();
    let sp: Vec<Matrix> = sp1.basis.iter().chain(&sp2.basis).cloned().collect();
    for a in [0, 1, 2, 4] {
        let ps = f1(a);
        let g8 = &ps.g8;
        let defect = |b: &Matrix| -> Vec<Scalar> {
            (1..=8)
                .flat_map(|k| (&endo_act(b, g8.de(k)) - &g8.d(&endo_act(b, &Form::e(8, k)))).coords(2))
                .collect()
        };
        let kernel = |gens: &[Matrix]| gens.len() - span_rank(&gens.iter().map(defect).collect::<Vec<_>>());
        let expected = kernel(&so_basis(8)) - kernel(&sp);
        assert_eq!(
            quaternionic::infinitesimal_closed_dim(&ps).unwrap(),
            expected,
            "a = {a}"
        );
    }
    assert_eq!(quaternionic::infinitesimal_closed_dim(&f1(4)).unwrap(), 2);
    assert_eq!(quaternionic::infinitesimal_closed_dim(&f1(1)).unwrap(), 1);
}

#[test]
fn closed_four_form_on_nilpotent_products() {
    for x in datasets::nilpotent_examples() {
        let ps = build_product(&x.algebra, Some(&x.coframe)).unwrap();
        assert!(ps.d_omega().is_zero(), "{}", x.algebra.label());
    }
    let h3 = build_product(&table2(TorsionFamily::H3, 1), None).unwrap();
    assert!(!h3.d_omega().is_zero());
    assert!(quaternionic::infinitesimal_closed_dim(&h3).is_err());
}

#[test]
fn quaternion_relations() {
    let [i1, i2, i3] = canon::quaternion_triple();
    let minus = Matrix::identity(8).scale(&int(-1));
    for i in [&i1, &i2, &i3] {
        assert_eq!(i.mul(i), minus);
    }
    assert_eq!(i1.mul(&i2), i3);
    let ps = build_product(&LieAlgebra::abelian(7), None).unwrap();
    let half_sum = ps
        .sigma
        .iter()
        .fold(Form::zero(8), |acc, s| &acc + &s.wedge(s))
        .scale(&Scalar::ratio(1, 2));
    assert_eq!(half_sum, ps.omega);
    let (sp1, sp2) = quaternionic::sp2sp1_subalg(&ps);
    assert_eq!((sp1.dim(), sp2.dim()), (3, 10));
}
