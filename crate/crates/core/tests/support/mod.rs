//! Randomized property suites shared by the `properties` tests and the
//! acceptance runner. Every suite uses a deterministic RNG and returns the
//! number of cases it checked.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use a1deg::degree::{ekl_class, scheja_storch_form, sum_of_local_degrees};
use a1deg::gw::{GWElement, SymmetricForm};
use a1deg::linalg::Matrix;
use a1deg::poly::{Monomial, PolyMap, Polynomial, Ring};
use a1deg::scalar::{hilbert_symbol, Field, Place, Scalar};
use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub type SuiteResult = Result<u32, String>;

pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> SuiteResult {
    runner(cases)
        .run(&strategy, test)
        .map(|_| cases)
        .map_err(|e| e.to_string())
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

fn lift<T>(r: a1deg::error::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

pub fn fields() -> Vec<Field> {
    let mut out = vec![Field::Rationals, Field::Reals, Field::Complex];
    for p in [3, 5, 7, 11, 13] {
        out.push(Field::prime(p).unwrap());
    }
    out
}

fn nonzero_rational() -> impl Strategy<Value = (i64, i64)> {
    ((-60i64..=60).prop_filter("nonzero", |n| *n != 0), 1i64..=12)
}

fn scalar_in(field: Field, (n, d): (i64, i64)) -> Option<Scalar> {
    let s = field.from_i64(n) * field.from_i64(d).inv()?;
    (!s.is_zero()).then_some(s)
}

fn class(field: Field, a: &Scalar) -> Result<GWElement, TestCaseError> {
    lift(GWElement::class(field, a))
}

/// ⟨a⟩ = ⟨ab²⟩, ⟨a⟩ + ⟨b⟩ = ⟨a+b⟩ + ⟨ab(a+b)⟩, ⟨a⟩ + ⟨−a⟩ = H, and
/// multiplicativity ⟨a⟩⟨b⟩ = ⟨ab⟩.
pub fn gw_presentation(cases: u32) -> SuiteResult {
    let fs = fields();
    let strategy = (0..fs.len(), nonzero_rational(), nonzero_rational());
    run(cases, strategy, |(fi, a, b)| {
        let field = fs[fi];
        let (Some(a), Some(b)) = (scalar_in(field, a), scalar_in(field, b)) else {
            return Ok(());
        };
        let ca = class(field, &a)?;
        check(lift(ca.gw_eq(&class(field, &(&a * &(&b * &b)))?))?, || {
            "⟨a⟩ ≠ ⟨ab²⟩".into()
        })?;
        let sum = &a + &b;
        if !sum.is_zero() {
            let lhs = lift(ca.add(&class(field, &b)?))?;
            let rhs = lift(class(field, &sum)?.add(&class(field, &(&a * &(&b * &sum)))?))?;
            check(lift(lhs.gw_eq(&rhs))?, || {
                format!("relation fails for a={a}, b={b} over {field}")
            })?;
        }
        let neg = lift(ca.add(&class(field, &-a.clone())?))?;
        check(lift(neg.gw_eq(&GWElement::hyperbolic(field)))?, || {
            "⟨a⟩ + ⟨−a⟩ ≠ H".into()
        })?;
        let prod = lift(ca.mul(&class(field, &b)?))?;
        check(lift(prod.gw_eq(&class(field, &(&a * &b))?))?, || {
            "⟨a⟩⟨b⟩ ≠ ⟨ab⟩".into()
        })
    })
}

fn places_for(values: &[&Scalar]) -> Vec<Place> {
    let mut primes = BTreeSet::new();
    primes.insert(BigUint::from(2u32));
    for v in values {
        let q = v.as_rational().expect("rational");
        for part in [q.numer(), q.denom()] {
            for (p, _) in a1deg::factor::factorize(part.magnitude()).expect("small") {
                primes.insert(p);
            }
        }
    }
    let mut out = vec![Place::Real];
    out.extend(primes.into_iter().map(Place::Finite));
    out
}

/// `(a, bc)_v = (a, b)_v (a, c)_v` and `∏_v (a, b)_v = 1`.
pub fn hilbert_symbols(cases: u32) -> SuiteResult {
    let q = Field::Rationals;
    run(
        cases,
        (nonzero_rational(), nonzero_rational(), nonzero_rational()),
        |(a, b, c)| {
            let (a, b, c) = (
                scalar_in(q, a).unwrap(),
                scalar_in(q, b).unwrap(),
                scalar_in(q, c).unwrap(),
            );
            let bc = &b * &c;
            let mut product = 1i8;
            for v in places_for(&[&a, &b, &c]) {
                let ab = lift(hilbert_symbol(&a, &b, &v))?;
                let ac = lift(hilbert_symbol(&a, &c, &v))?;
                let abc = lift(hilbert_symbol(&a, &bc, &v))?;
                check(abc == ab * ac, || {
                    format!("not bimultiplicative at {v}: ({a},{b}) ({a},{c})")
                })?;
                product *= ab;
            }
            check(product == 1, || {
                format!("product formula fails for ({a}, {b})")
            })
        },
    )
}

fn random_symmetric(field: Field, n: usize, entries: &[i64]) -> Matrix {
    let mut m = Matrix::zeros(field, n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            let v = field.from_i64(entries[k]);
            m[(i, j)] = v.clone();
            m[(j, i)] = v;
            k += 1;
        }
    }
    m
}

/// `D = Cᵀ G C` for every diagonalization, and congruent Gram matrices give
/// `gw_eq` classes.
pub fn diagonalization_certificates(cases: u32) -> SuiteResult {
    let fs = fields();
    let strategy = (
        0..fs.len(),
        1usize..=5,
        prop::collection::vec(-4i64..=4, 15),
        prop::collection::vec(-3i64..=3, 25),
    );
    run(cases, strategy, |(fi, n, entries, change)| {
        let field = fs[fi];
        let g = random_symmetric(field, n, &entries);
        let form = lift(SymmetricForm::new(g.clone()))?;
        if !form.is_nondegenerate() {
            return Ok(());
        }
        let diag = lift(form.diagonalize())?;
        check(diag.verify(&form), || {
            format!("certificate fails for {g:?}")
        })?;
        let p = Matrix::from_rows(
            field,
            (0..n)
                .map(|i| (0..n).map(|j| field.from_i64(change[i * 5 + j])).collect())
                .collect(),
        );
        if p.det().is_zero() {
            return Ok(());
        }
        let moved = lift(lift(SymmetricForm::new(p.congruent(&g)))?.to_gw())?;
        check(lift(moved.gw_eq(&lift(form.to_gw())?))?, || {
            "congruent forms differ".into()
        })
    })
}

fn ring(vars: &[&str]) -> Arc<Ring> {
    Ring::new(Field::Rationals, vars).unwrap()
}

fn system(vars: &[&str], text: &str) -> PolyMap {
    PolyMap::parse(text, &ring(vars)).unwrap()
}

/// Systems with a non-simple zero at the origin.
pub fn singular_systems() -> Vec<PolyMap> {
    vec![
        system(&["z"], "z^2"),
        system(&["x", "y"], "4*x^3; 2*y"),
        system(&["x", "y"], "x^2; y^2"),
        system(&["x", "y"], "x*y; x^2 - y^2"),
        system(&["x", "y"], "x^2 + y^3; x*y"),
    ]
}

fn origin(f: &PolyMap) -> Vec<Scalar> {
    vec![f.field().zero(); f.ring().nvars()]
}

/// Random functionals η′ with η′(E) = 1 all give the canonical class.
pub fn eta_independence(per_system: u32) -> SuiteResult {
    let systems = singular_systems();
    let mut total = 0;
    for f in &systems {
        let data = ekl_class(f, &origin(f)).map_err(|e| e.to_string())?;
        let d = data.multiplicity();
        total += run(per_system, prop::collection::vec(-5i64..=5, d), |raw| {
            let field = f.field();
            let eta: Vec<Scalar> = raw.iter().map(|&c| field.from_i64(c)).collect();
            let at_socle = eta
                .iter()
                .zip(&data.socle)
                .fold(field.zero(), |acc, (a, b)| acc + a * b);
            let Some(scale) = at_socle.inv() else {
                return Ok(());
            };
            let eta: Vec<Scalar> = eta.iter().map(|c| c * &scale).collect();
            let other = lift(data.class_for_functional(&eta))?;
            check(lift(other.gw_eq(&data.gw))?, || {
                format!("η′ = {eta:?} changes the class")
            })
        })?;
    }
    Ok(total)
}

/// Adding a monomial of degree ≥ 2·(local dim) + 1 to each component does
/// not change the EKL class.
pub fn finite_determinacy(cases: u32) -> SuiteResult {
    let systems = [system(&["z"], "z^2"), system(&["x", "y"], "4*x^3; 2*y")];
    let base: Vec<(usize, GWElement)> = systems
        .iter()
        .map(|f| ekl_class(f, &origin(f)).map(|d| (d.multiplicity(), d.gw)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let term = (
        0u32..=2,
        0u32..=2,
        (-4i64..=4).prop_filter("nonzero", |c| *c != 0),
    );
    run(
        cases,
        (0..systems.len(), prop::collection::vec(term, 2)),
        |(si, terms)| {
            let f = &systems[si];
            let (dim, expected) = &base[si];
            let n = f.ring().nvars();
            let min = 2 * *dim as u32 + 1;
            let comps: Vec<Polynomial> = f
                .components()
                .iter()
                .zip(&terms)
                .map(|(fi, (extra, split, c))| {
                    let total = min + extra;
                    let exps = if n == 1 {
                        vec![total]
                    } else {
                        vec![total - split.min(&total), *split.min(&total)]
                    };
                    fi.add(&Polynomial::term(
                        f.ring(),
                        Monomial::new(exps),
                        f.field().from_i64(*c),
                    ))
                })
                .collect();
            let g = lift(PolyMap::new(comps))?;
            let got = lift(ekl_class(&g, &origin(&g)))?;
            check(lift(got.gw.gw_eq(expected))?, || {
                format!("perturbed system {g:?} changed class")
            })
        },
    )
}

fn linear_plus_quadratic(
    field: Field,
    vars: &Arc<Ring>,
    point: &[i64],
    coeffs: &[i64],
) -> Polynomial {
    let n = vars.nvars();
    let shifted: Vec<Polynomial> = (0..n)
        .map(|i| {
            Polynomial::var(vars, i).sub(&Polynomial::constant(vars, field.from_i64(point[i])))
        })
        .collect();
    let mut acc = Polynomial::zero(vars);
    let mut k = 0;
    for s in &shifted {
        acc = acc.add(&s.scale(&field.from_i64(coeffs[k])));
        k += 1;
    }
    for i in 0..n {
        for j in i..n {
            acc = acc.add(
                &shifted[i]
                    .mul(&shifted[j])
                    .scale(&field.from_i64(coeffs[k])),
            );
            k += 1;
        }
    }
    acc
}

/// At a simple zero the EKL class is ⟨Jac(f)(p)⟩.
pub fn etale_consistency(cases: u32) -> SuiteResult {
    let fs = [
        Field::Rationals,
        Field::prime(7).unwrap(),
        Field::prime(11).unwrap(),
    ];
    let strategy = (
        0..fs.len(),
        1usize..=2,
        prop::collection::vec(-3i64..=3, 2),
        prop::collection::vec(-3i64..=3, 10),
    );
    run(cases, strategy, |(fi, n, point, coeffs)| {
        let field = fs[fi];
        let names = ["x", "y"];
        let r = lift(Ring::new(field, &names[..n]))?;
        let comps: Vec<Polynomial> = (0..n)
            .map(|i| linear_plus_quadratic(field, &r, &point, &coeffs[i * 5..]))
            .collect();
        let f = lift(PolyMap::new(comps))?;
        let p: Vec<Scalar> = point[..n].iter().map(|&c| field.from_i64(c)).collect();
        let jac = lift(lift(f.jacobian_det())?.evaluate(&p))?;
        if jac.is_zero() {
            return Ok(());
        }
        let got = lift(ekl_class(&f, &p))?;
        check(lift(got.gw.gw_eq(&class(field, &jac)?))?, || {
            format!("{f:?} at {p:?}")
        })
    })
}

/// Systems whose zeros are all rational: univariate products of linear
/// factors, and triangular bivariate systems.
fn split_system(kind: usize, a: &[i64], b: &[i64], c: &[i64]) -> (PolyMap, Vec<Vec<Scalar>>) {
    let q = Field::Rationals;
    let k = |n: i64| q.from_i64(n);
    if kind == 0 {
        let r = ring(&["z"]);
        let z = Polynomial::var(&r, 0);
        let mut f = Polynomial::constant(&r, k(c[0].max(1)));
        let mut roots = BTreeSet::new();
        for &ai in a {
            f = f.mul(&z.sub(&Polynomial::constant(&r, k(ai))));
            roots.insert(ai);
        }
        let pts = roots.into_iter().map(|x| vec![k(x)]).collect();
        (PolyMap::new(vec![f]).unwrap(), pts)
    } else {
        let r = ring(&["x", "y"]);
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let cst = |n: i64| Polynomial::constant(&r, k(n));
        let mut f1 = Polynomial::one(&r);
        for &ai in &a[..2] {
            f1 = f1.mul(&x.sub(&cst(ai)));
        }
        let mut f2 = Polynomial::one(&r);
        for (&bj, &cj) in b[..2].iter().zip(c) {
            f2 = f2.mul(&y.sub(&cst(bj)).sub(&x.scale(&k(cj))));
        }
        let mut pts = BTreeSet::new();
        for &ai in &a[..2] {
            for (&bj, &cj) in b[..2].iter().zip(c) {
                pts.insert((ai, bj + cj * ai));
            }
        }
        let pts = pts.into_iter().map(|(u, v)| vec![k(u), k(v)]).collect();
        (PolyMap::new(vec![f1, f2]).unwrap(), pts)
    }
}

/// The Scheja–Storch class equals the sum of the local degrees, and its
/// restriction to each local summand is congruent to the EKL form there.
pub fn local_global(cases: u32) -> SuiteResult {
    let strategy = (
        0usize..=1,
        prop::collection::vec(-3i64..=3, 1..=4),
        prop::collection::vec(-3i64..=3, 2),
        prop::collection::vec(-2i64..=2, 2),
    );
    run(cases, strategy, |(kind, mut a, b, c)| {
        if kind == 1 && a.len() < 2 {
            a.push(a[0]);
        }
        let (f, points) = split_system(kind, &a, &b, &c);
        let ss = lift(scheja_storch_form(&f))?;
        let local_sum = lift(sum_of_local_degrees(&f, &points))?;
        check(lift(ss.gw.gw_eq(&local_sum))?, || {
            format!("{f:?}: SS {} vs local {}", ss.gw, local_sum)
        })?;
        for p in &points {
            let factor = lift(ss.algebra.local_factor_at(p))?;
            let restricted = lift(lift(SymmetricForm::new(ss.restrict(&factor)))?.to_gw())?;
            let ekl = lift(ekl_class(&f, p))?;
            check(lift(restricted.gw_eq(&ekl.gw))?, || {
                format!("{f:?}: summand at {p:?}")
            })?;
        }
        Ok(())
    })
}

fn permuted(f: &PolyMap, perm: &[usize]) -> PolyMap {
    let names: Vec<String> = perm.iter().map(|&i| f.ring().vars()[i].clone()).collect();
    let r = Ring::new(f.field(), &names).unwrap();
    let images: Vec<Polynomial> = (0..perm.len())
        .map(|i| Polynomial::var(&r, perm.iter().position(|&j| j == i).unwrap()))
        .collect();
    let comps = perm
        .iter()
        .map(|&i| f.components()[i].substitute(&images).unwrap())
        .collect();
    PolyMap::new(comps).unwrap()
}

/// Renaming the variables and the components by the same permutation keeps
/// the EKL and Scheja–Storch classes.
pub fn permutation_invariance(cases: u32) -> SuiteResult {
    let systems = [
        system(&["x", "y"], "4*x^3; 2*y"),
        system(&["x", "y"], "x^2 + y^3; x*y"),
        system(&["x", "y", "w"], "x^2 - y; y*w; w^2 + x*y"),
        system(&["x", "y", "w"], "x*y - w^2; y^2 + x; w^3 - x*w"),
    ];
    let base: Vec<(GWElement, GWElement, usize)> = systems
        .iter()
        .map(|f| {
            let e = ekl_class(f, &origin(f))?;
            let s = scheja_storch_form(f)?;
            Ok((e.gw, s.gw, s.algebra.dim()))
        })
        .collect::<a1deg::error::Result<_>>()
        .map_err(|e| e.to_string())?;
    run(
        cases,
        (0..systems.len(), Just(vec![0usize, 1, 2]).prop_shuffle()),
        |(si, perm)| {
            let f = &systems[si];
            let n = f.ring().nvars();
            let perm: Vec<usize> = perm.into_iter().filter(|&i| i < n).collect();
            let g = permuted(f, &perm);
            let (ekl, ss, dim) = &base[si];
            check(
                lift(lift(ekl_class(&g, &origin(&g)))?.gw.gw_eq(ekl))?,
                || format!("EKL changes under {perm:?}"),
            )?;
            let s = lift(scheja_storch_form(&g))?;
            check(s.algebra.dim() == *dim, || "dim B changes".into())?;
            check(lift(s.gw.gw_eq(ss))?, || {
                format!("SS changes under {perm:?}")
            })
        },
    )
}

pub struct Suite {
    pub name: &'static str,
    pub run: fn() -> SuiteResult,
}

/// The suites of the acceptance property criterion with their case counts.
pub fn all_suites() -> Vec<Suite> {
    vec![
        Suite {
            name: "GW presentation relations",
            run: || gw_presentation(200),
        },
        Suite {
            name: "η-independence (20 × 5 systems)",
            run: || eta_independence(20),
        },
        Suite {
            name: "finite determinacy",
            run: || finite_determinacy(100),
        },
        Suite {
            name: "étale consistency",
            run: || etale_consistency(100),
        },
        Suite {
            name: "local–global",
            run: || local_global(100),
        },
        Suite {
            name: "permutation invariance",
            run: || permutation_invariance(100),
        },
        Suite {
            name: "Hilbert symbols",
            run: || hilbert_symbols(200),
        },
        Suite {
            name: "diagonalization certificates",
            run: || diagonalization_certificates(200),
        },
    ]
}
