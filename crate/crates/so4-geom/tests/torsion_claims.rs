use so4_geom::canon::CanonicalForms;
use so4_geom::torsion::{self, TorsionFamily};
use so4_geom::{Form, Scalar};

fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

#[test]
fn ranks() {
    let r = torsion::rank_checks();
    println!("{r:?}");
    assert_eq!(r.rank_full, 56);
    assert_eq!(r.kernel_perp, 49);
    assert_eq!(r.rank_upsilon_on_w, 8);
    assert_eq!(r.rank_star_upsilon_on_w, 14);
    assert_eq!(r.w_meets_invariant, 0);
}

#[test]
fn invariant_families() {
    let c = CanonicalForms::new();
    let cases = [
        ((0, 1, 0), (q(0, 1), q(-1, 2))),
        ((1, 0, 0), (q(-1, 2), q(1, 1))),
        ((0, -2, 1), (q(0, 1), q(-1, 1))),
    ];
    for ((p, qq, r), (l, m)) in cases {
        let (p, qq, r) = (Scalar::from_int(p), Scalar::from_int(qq), Scalar::from_int(r));
        let g = torsion::build_invariant_family(&p, &qq, &r).unwrap();
        assert!(g.check_jacobi());
        let t = torsion::intrinsic_torsion(&g).unwrap();
        assert_eq!(t.lambda_mu, Some((l.clone(), m.clone())), "{g:?}");
        let (a, cc) = torsion::invariant_torsion_decompose(&g).unwrap();
        assert_eq!(torsion::lambda_mu_from_theta(&a, &cc), (l.clone(), m.clone()));
        assert_eq!(a, p);
        assert_eq!(cc, &(&qq * &q(1, 4)) + &r);
        let two = Scalar::from_int(2);
        let six = Scalar::from_int(6);
        let dalpha = &c.beta.scale(&(&two * &(&m - &l))) + &c.upsilon.scale(&(&six * &(&l + &m)));
        let dsu = (&c.beta + &c.upsilon.scale(&Scalar::from_int(3))).scale(&(&two * &l));
        assert_eq!(g.d(&c.alpha), dalpha);
        assert_eq!(g.d(&c.star_upsilon), dsu);
        for f in [&c.alpha, &c.beta] {
            assert_eq!(t.xi.act_alternate(f), g.d(f));
        }
    }
}

#[test]
fn h2_levi_civita_in_this_normalisation() {
    let h2 = torsion::build_table2(TorsionFamily::H2, &Scalar::zero(), &Scalar::zero()).unwrap();
    let nabla = torsion::levi_civita(&h2).unwrap();
    println!("{nabla}");
    let shown = [(5, "67"), (6, "-57"), (7, "56")];
    for (i, lit) in shown {
        assert_eq!(nabla.comps[i - 1], Form::parse(7, lit).unwrap().scale(&q(-1, 2)));
    }
}

#[test]
fn table2_all() {
    let samples = [q(1, 1), q(2, 1), q(-1, 2)];
    for which in TorsionFamily::ALL {
        for a in &samples {
            for k in [q(0, 1), q(1, 1), q(-3, 1)] {
                let g = torsion::build_table2(which, a, &k).unwrap();
                assert!(g.check_jacobi(), "{g:?}");
                let (aa, cc) = torsion::invariant_torsion_decompose(&g).unwrap();
                let t = torsion::intrinsic_torsion(&g).unwrap();
                assert_eq!(t.lambda_mu, Some(torsion::lambda_mu_from_theta(&aa, &cc)), "{g:?}");
            }
        }
    }
}

#[test]
fn self_dual_relation() {
    for which in [TorsionFamily::H5, TorsionFamily::H7, TorsionFamily::H8] {
        for k in [q(0, 1), q(1, 1), q(2, 1)] {
            let data = torsion::self_dual_data(which, &k).unwrap();
            assert!(torsion::check_self_dual_relation(&data), "{which:?} {k}");
        }
    }
}
