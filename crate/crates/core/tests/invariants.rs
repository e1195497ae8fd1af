use std::sync::Arc;

use a1deg::cancel::CancelToken;
use a1deg::degree::{bezout_form, ekl_class, scheja_storch_form, sum_of_local_degrees};
use a1deg::enumerative::{
    cubic_lines_count, four_lines_count, lines_from_json, transform_cubic, LineIn3Space,
};
use a1deg::groebner::GroebnerBasis;
use a1deg::gw::GWElement;
use a1deg::linalg::Matrix;
use a1deg::poly::{PolyMap, Polynomial, Ring};
use a1deg::quotient::QuotientAlgebra;
use a1deg::scalar::{Field, Scalar};
use proptest::prelude::*;

fn q(n: i64) -> Scalar {
    Field::Rationals.from_i64(n)
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!(
        "{}/tests/fixtures/{name}",
        env!("CARGO_MANIFEST_DIR")
    ))
    .unwrap()
}

fn bivariate(text: &str) -> PolyMap {
    let r = Ring::new(Field::Rationals, &["x", "y"]).unwrap();
    PolyMap::parse(text, &r).unwrap()
}

fn small_system() -> impl Strategy<Value = String> {
    let term = (-3i64..=3, 0u32..=2, 0u32..=2);
    let comp = prop::collection::vec(term, 1..=4).prop_map(|ts| {
        ts.iter()
            .map(|(c, i, j)| format!("({c})*x^{i}*y^{j}"))
            .collect::<Vec<_>>()
            .join(" + ")
    });
    (comp.clone(), comp).prop_map(|(a, b)| format!("{a} + x^5; {b} + y^5"))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn groebner_certificates_and_normal_forms(sys in small_system(), a in -3i64..=3, b in -3i64..=3) {
        let f = bivariate(&sys);
        let gb = GroebnerBasis::compute(f.components()).unwrap();
        prop_assert!(gb.verify());
        let alg = QuotientAlgebra::new(gb.clone()).unwrap();
        let m = alg.mult_matrices();
        prop_assert_eq!(m[0].mul(&m[1]), m[1].mul(&m[0]));
        let r = f.ring();
        let u = Polynomial::parse("x^3*y - 2*x*y^2 + 5", r).unwrap();
        let v = Polynomial::parse("y^4 + x", r).unwrap();
        let nu = gb.normal_form(&u);
        prop_assert_eq!(gb.normal_form(&nu), nu.clone());
        let combo = u.scale(&q(a)).add(&v.scale(&q(b)));
        let linear = nu.scale(&q(a)).add(&gb.normal_form(&v).scale(&q(b)));
        prop_assert_eq!(gb.normal_form(&combo), linear);
        // relabeled variables give the same quotient dimension
        let swapped = Ring::new(Field::Rationals, &["y", "x"]).unwrap();
        let images = [Polynomial::var(&swapped, 1), Polynomial::var(&swapped, 0)];
        let moved: Vec<Polynomial> = f.components().iter().map(|c| c.substitute(&images).unwrap()).collect();
        let other = QuotientAlgebra::from_generators(&moved, &CancelToken::new()).unwrap();
        prop_assert_eq!(other.dim(), alg.dim());
    }

    /// For random f with distinct rational roots, the Bézout form of f/1 is
    /// the sum of the local degrees at the roots.
    #[test]
    fn cazanave_consistency(roots in prop::collection::btree_set(-6i64..=6, 1..=4), lead in prop::sample::select(vec![-3i64, -1, 1, 2, 5])) {
        let r = Ring::new(Field::Rationals, &["z"]).unwrap();
        let z = Polynomial::var(&r, 0);
        let f = roots.iter().fold(Polynomial::constant(&r, q(lead)), |acc, &a| {
            acc.mul(&z.sub(&Polynomial::constant(&r, q(a))))
        });
        let bezout = bezout_form(&f, &Polynomial::one(&r)).unwrap();
        prop_assert_eq!(bezout.gw.rank(), roots.len());
        let points: Vec<Vec<Scalar>> = roots.iter().map(|&a| vec![q(a)]).collect();
        let local = sum_of_local_degrees(&PolyMap::new(vec![f]).unwrap(), &points).unwrap();
        prop_assert!(bezout.gw.gw_eq(&local).unwrap());
    }
}

#[test]
fn socle_identity_and_rank_laws() {
    for text in ["x^2; y^2", "4*x^3; 2*y", "x*y; x^2 - y^2", "x^2 + y^3; x*y"] {
        let f = bivariate(text);
        let data = ekl_class(&f, &[q(0), q(0)]).unwrap();
        assert_eq!(data.gw.rank(), data.multiplicity());
        let jac = data.jacobian_coords().unwrap();
        if jac.iter().any(|c| !c.is_zero()) {
            let dim = q(data.multiplicity() as i64);
            let scaled: Vec<Scalar> = data.socle.iter().map(|c| c * &dim).collect();
            assert_eq!(jac, scaled, "{text}");
        }
        let ss = scheja_storch_form(&f).unwrap();
        assert_eq!(ss.gw.rank(), ss.algebra.dim());
    }
}

#[test]
fn local_dimensions_sum_to_the_algebra_dimension() {
    let f = bivariate("x^3 - x; y^2 - x*y");
    let alg =
        Arc::new(QuotientAlgebra::from_generators(f.components(), &CancelToken::new()).unwrap());
    let points = [(0, 0), (1, 0), (1, 1), (-1, 0), (-1, -1)];
    let total: usize = points
        .iter()
        .map(|&(a, b)| alg.local_factor_at(&[q(a), q(b)]).unwrap().dim())
        .sum();
    assert_eq!(total, alg.dim());
    let pts: Vec<Vec<Scalar>> = points.iter().map(|&(a, b)| vec![q(a), q(b)]).collect();
    let local = sum_of_local_degrees(&f, &pts).unwrap();
    assert!(scheja_storch_form(&f).unwrap().gw.gw_eq(&local).unwrap());
}

fn basis_change() -> Matrix {
    Matrix::from_i64(
        Field::Rationals,
        &[&[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 0, 1, 0], &[1, 0, 0, 2]],
    )
}

#[test]
fn four_lines_count_is_invariant_under_basis_change() {
    let value: serde_json::Value =
        serde_json::from_str(&fixture("four_lines_generic.json")).unwrap();
    let lines = lines_from_json(Field::Rationals, &value).unwrap();
    let m = basis_change();
    let moved: Vec<LineIn3Space> = lines.iter().map(|l| l.transform(&m).unwrap()).collect();
    let a = four_lines_count(&lines).unwrap().gw;
    let b = four_lines_count(&moved).unwrap().gw;
    assert!(a.gw_eq(&b).unwrap());
    assert!(b.gw_eq(&GWElement::hyperbolic(Field::Rationals)).unwrap());
    for perm in [[1, 0, 2, 3], [3, 2, 1, 0]] {
        let p: Vec<LineIn3Space> = perm.iter().map(|&i| lines[i].clone()).collect();
        assert!(four_lines_count(&p).unwrap().gw.gw_eq(&a).unwrap());
    }
}

#[test]
fn cubic_count_over_f7_is_stable_under_basis_change() {
    let f7 = Field::prime(7).unwrap();
    let r = Ring::new(f7, &["x0", "x1", "x2", "x3"]).unwrap();
    let f = Polynomial::parse(fixture("cubic_f7.txt").trim(), &r).unwrap();
    let expected = GWElement::parse("15<1> + 12<-1>", f7).unwrap();
    assert!(cubic_lines_count(&f).unwrap().gw.gw_eq(&expected).unwrap());
    let m = Matrix::from_i64(
        f7,
        &[&[1, 0, 0, 1], &[0, 1, 1, 0], &[0, 0, 1, 0], &[1, 0, 0, 2]],
    );
    let moved = transform_cubic(&f, &m).unwrap();
    match cubic_lines_count(&moved) {
        Ok(ss) => assert!(ss.gw.gw_eq(&expected).unwrap()),
        Err(a1deg::error::Error::ChartMiss(_)) => {}
        Err(e) => panic!("{e}"),
    }
}
