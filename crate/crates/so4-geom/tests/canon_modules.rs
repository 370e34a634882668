use so4_geom::canon::{
    self, so4_isotypic_forms, so4_isotypic_torsion_space, sp2sp1_isotypic_forms, Ambient, CanonicalForms, So4Summand,
};
use so4_geom::exterior::Form;
use so4_geom::Scalar;

fn s(p: usize, q: usize, mult: usize) -> So4Summand {
    So4Summand { p, q, mult }
}

fn total(list: &[So4Summand]) -> usize {
    list.iter().map(|x| (x.p + 1) * (x.q + 1) * x.mult).sum()
}

#[test]
fn three_forms_on_t() {
    let got = so4_isotypic_forms(3).unwrap();
    let mut want = vec![s(0, 0, 2), s(0, 2, 1), s(0, 4, 1), s(1, 1, 2), s(1, 3, 1), s(2, 2, 1)];
    want.sort();
    assert_eq!(got, want);
    assert_eq!(total(&got), 35);
}

#[test]
fn torsion_space() {
    let got = so4_isotypic_torsion_space().unwrap();
    let mut want = vec![
        s(0, 0, 2),
        s(0, 2, 3),
        s(0, 4, 2),
        s(1, 1, 3),
        s(1, 3, 3),
        s(1, 5, 1),
        s(2, 0, 1),
        s(2, 2, 2),
        s(2, 4, 1),
    ];
    want.sort();
    assert_eq!(got, want);
    assert_eq!(total(&got), 105);
}

#[test]
fn three_forms_in_dimension_eight() {
    let got = sp2sp1_isotypic_forms(3).unwrap();
    let mut dims: Vec<(String, usize)> = got.iter().map(|b| (b.to_string(), b.dim)).collect();
    dims.sort();
    println!("{dims:?}");
    assert_eq!(got.iter().map(|b| b.dim).sum::<usize>(), 56);
    let mut sizes: Vec<usize> = got.iter().map(|b| b.dim).collect();
    sizes.sort();
    assert_eq!(sizes, vec![8, 16, 32]);
}

#[test]
fn stabilizer_dimensions() {
    let c = CanonicalForms::new();
    assert_eq!(canon::stabilizer(std::slice::from_ref(&c.alpha), Ambient::Gl).dim(), 14);
    assert_eq!(canon::stabilizer(std::slice::from_ref(&c.beta), Ambient::Gl).dim(), 14);
    let pair = canon::stabilizer(&[c.alpha.clone(), c.beta.clone()], Ambient::Gl);
    assert_eq!(pair.dim(), 6);
    assert!(pair.same_span(&canon::so4()));
    let omega = canon::stabilizer(std::slice::from_ref(&c.big_omega), Ambient::Gl);
    assert_eq!(omega.dim(), 13);
    assert!(omega.is_closed());
    let four = Scalar::from_int(4);
    let shifted = [
        &c.alpha + &c.star_upsilon.scale(&four),
        &c.beta + &c.upsilon.scale(&four),
    ];
    let g2 = canon::stabilizer(&shifted, Ambient::Gl);
    assert_eq!(g2.dim(), 14);
    assert!(g2.is_skew());
}

#[test]
fn invariant_form_table() {
    let h = canon::so4();
    let dims: Vec<usize> = (0..=7).map(|k| canon::invariant_forms(&h, k).len()).collect();
    assert_eq!(dims, vec![1, 0, 0, 2, 2, 0, 0, 1]);
    let inv3 = canon::invariant_forms(&h, 3);
    let c = CanonicalForms::new();
    let span = |f: &Form| {
        let mut vs: Vec<Vec<Scalar>> = inv3.iter().map(|g| g.coords(3)).collect();
        vs.push(f.coords(3));
        so4_geom::linalg::span_rank(&vs) == 2
    };
    assert!(span(&c.alpha) && span(&c.star_upsilon));
}
