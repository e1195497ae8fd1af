//! Degree constructions: Bézout forms, EKL local forms, étale local
//! degrees and the global Scheja–Storch form.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::cancel::CancelToken;
use crate::error::{Error, Result};
use crate::etale::EtaleAlgebra;
use crate::groebner::GroebnerBasis;
use crate::gw::{GWElement, SymmetricForm};
use crate::linalg::Matrix;
use crate::poly::{det_bareiss, Monomial, PolyMap, Polynomial, Ring};
use crate::quotient::{LocalFactor, QuotientAlgebra};
use crate::scalar::Scalar;

/// Which construction produced a class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Bezout,
    Ekl,
    SchejaStorch,
    TraceJacobian,
    SumOfLocalDegrees,
    TraceForm,
    Hessian,
    Arithmetic,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Bezout => "bezout",
            Provenance::Ekl => "ekl",
            Provenance::SchejaStorch => "scheja-storch",
            Provenance::TraceJacobian => "trace-jacobian",
            Provenance::SumOfLocalDegrees => "sum-of-local-degrees",
            Provenance::TraceForm => "trace-form",
            Provenance::Hessian => "hessian",
            Provenance::Arithmetic => "gw-arithmetic",
        })
    }
}

/// A class together with the construction that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeResult {
    pub class: GWElement,
    pub provenance: Provenance,
}

/// Gram matrix of `(f(X)g(Y) − f(Y)g(X))/(X − Y)` and its class.
#[derive(Clone, Debug)]
pub struct BezoutForm {
    pub gram: Matrix,
    pub gw: GWElement,
}

fn univariate_degree(p: &Polynomial) -> usize {
    p.total_degree().unwrap_or(0) as usize
}

/// Bézout form of the rational function `f/g`.
pub fn bezout_form(f: &Polynomial, g: &Polynomial) -> Result<BezoutForm> {
    if f.ring().nvars() != 1 || g.ring().nvars() != 1 {
        return Err(Error::InvalidInput(
            "Bézout forms need univariate polynomials".into(),
        ));
    }
    if **f.ring() != **g.ring() {
        return Err(Error::InvalidInput(
            "f and g live in different rings".into(),
        ));
    }
    if f.is_zero() && g.is_zero() {
        return Err(Error::InvalidInput("f and g are both zero".into()));
    }
    let field = f.field();
    let n = univariate_degree(f).max(univariate_degree(g));
    let ring2 = Ring::new(field, &["X", "Y"])?;
    let x = Polynomial::var(&ring2, 0);
    let y = Polynomial::var(&ring2, 1);
    let fx = f.substitute(std::slice::from_ref(&x))?;
    let fy = f.substitute(std::slice::from_ref(&y))?;
    let gx = g.substitute(std::slice::from_ref(&x))?;
    let gy = g.substitute(std::slice::from_ref(&y))?;
    let num = fx.mul(&gy).sub(&fy.mul(&gx));
    let quotient = num.exact_divide(&x.sub(&y))?;
    let mut gram = Matrix::zeros(field, n, n);
    for (m, c) in quotient.terms() {
        let (i, j) = (m.exponents()[0] as usize, m.exponents()[1] as usize);
        gram[(i, j)] = c.clone();
    }
    let gw = SymmetricForm::new(gram.clone())?.to_gw()?;
    Ok(BezoutForm { gram, gw })
}

/// Telescoping decomposition `a_ij = (f_i(x_1..x_j,0..) − f_i(x_1..x_{j−1},0..))/x_j`
/// of a system vanishing at the origin.
pub fn telescoping_matrix(f: &PolyMap) -> Result<Vec<Vec<Polynomial>>> {
    let ring = f.ring().clone();
    let n = ring.nvars();
    let zero = Polynomial::zero(&ring);
    let truncations = |comp: &Polynomial, keep: usize| -> Result<Polynomial> {
        let images: Vec<Polynomial> = (0..n)
            .map(|k| {
                if k < keep {
                    Polynomial::var(&ring, k)
                } else {
                    zero.clone()
                }
            })
            .collect();
        comp.substitute(&images)
    };
    f.components()
        .iter()
        .map(|fi| {
            let parts = (0..=n)
                .map(|k| truncations(fi, k))
                .collect::<Result<Vec<_>>>()?;
            (0..n)
                .map(|j| {
                    parts[j + 1]
                        .sub(&parts[j])
                        .exact_divide(&Polynomial::var(&ring, j))
                })
                .collect()
        })
        .collect()
}

/// Everything computed along the way to the EKL class at a rational zero.
#[derive(Debug, Clone)]
pub struct EklData {
    /// The system translated so the point sits at the origin.
    pub translated: PolyMap,
    pub point: Vec<Scalar>,
    /// `k[x]/(I + m^N)`, isomorphic to the local algebra at the origin.
    pub local: Arc<QuotientAlgebra>,
    pub a: Vec<Vec<Polynomial>>,
    /// Distinguished socle element in local coordinates.
    pub socle: Vec<Scalar>,
    pub eta: Vec<Scalar>,
    pub gram: Matrix,
    pub gw: GWElement,
    products: Vec<Vec<Vec<Scalar>>>,
}

impl EklData {
    pub fn multiplicity(&self) -> usize {
        self.local.dim()
    }

    /// The class of `(u, v) ↦ η'(uv)` for another functional `η'`.
    pub fn class_for_functional(&self, eta: &[Scalar]) -> Result<GWElement> {
        SymmetricForm::new(gram_from_functional(
            self.local.field(),
            &self.products,
            eta,
        ))?
        .to_gw()
    }

    /// Local coordinates of the Jacobian determinant.
    pub fn jacobian_coords(&self) -> Result<Vec<Scalar>> {
        Ok(self.local.coords(&self.translated.jacobian_det()?))
    }
}

fn gram_from_functional(
    field: crate::scalar::Field,
    products: &[Vec<Vec<Scalar>>],
    eta: &[Scalar],
) -> Matrix {
    let d = products.len();
    let mut gram = Matrix::zeros(field, d, d);
    for u in 0..d {
        for v in u..d {
            let mut acc = field.zero();
            for (c, e) in products[u][v].iter().zip(eta) {
                if !c.is_zero() && !e.is_zero() {
                    acc += &(c * e);
                }
            }
            gram[(u, v)] = acc.clone();
            gram[(v, u)] = acc;
        }
    }
    gram
}

fn monomials_of_degree(n: usize, deg: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    rec(0, deg, &mut vec![0; n], &mut out);
    out
}

fn with_maximal_power(f: &PolyMap, deg: usize, cancel: &CancelToken) -> Result<QuotientAlgebra> {
    let ring = f.ring();
    let one = ring.field().one();
    let mut gens = f.components().to_vec();
    gens.extend(
        monomials_of_degree(ring.nvars(), deg as u32)
            .into_iter()
            .map(|m| Polynomial::term(ring, m, one.clone())),
    );
    QuotientAlgebra::from_generators(&gens, cancel)
}

const MAX_TRUNCATION: usize = 64;

/// Local algebra at the origin of a system with `f(0) = 0`.
fn local_algebra_at_origin(g: &PolyMap, cancel: &CancelToken) -> Result<QuotientAlgebra> {
    let n = g.ring().nvars();
    let gb = GroebnerBasis::compute_with(g.components(), cancel)?;
    if gb.is_zero_dimensional() {
        let global = Arc::new(QuotientAlgebra::new(gb)?);
        let mult = global.local_factor_at(&vec![g.field().zero(); n])?.dim();
        return with_maximal_power(g, mult, cancel);
    }
    let mut deg = 1;
    let mut prev = with_maximal_power(g, deg, cancel)?;
    while deg < MAX_TRUNCATION {
        let next = with_maximal_power(g, 2 * deg, cancel)?;
        if next.dim() == prev.dim() {
            return Ok(prev);
        }
        deg *= 2;
        prev = next;
    }
    Err(Error::NotIsolated(format!(
        "the local multiplicity did not stabilize up to truncation degree {MAX_TRUNCATION}"
    )))
}

fn check_zero(f: &PolyMap, point: &[Scalar]) -> Result<()> {
    let values = f.evaluate(point)?;
    if let Some(i) = values.iter().position(|v| !v.is_zero()) {
        return Err(Error::NotAZero(format!(
            "component {} evaluates to {}",
            i + 1,
            values[i]
        )));
    }
    Ok(())
}

/// EKL class at a rational zero.
pub fn ekl_class(f: &PolyMap, point: &[Scalar]) -> Result<EklData> {
    ekl_class_with(f, point, &CancelToken::new())
}

pub fn ekl_class_with(f: &PolyMap, point: &[Scalar], cancel: &CancelToken) -> Result<EklData> {
    f.require_square()?;
    check_zero(f, point)?;
    let g = f.translate(point)?;
    let local = Arc::new(local_algebra_at_origin(&g, cancel)?);
    let a = telescoping_matrix(&g)?;
    let socle = local.coords(&det_bareiss(&a, g.ring())?);
    let k = socle
        .iter()
        .rposition(|c| !c.is_zero())
        .ok_or(Error::SocleZero)?;
    let field = g.field();
    let mut eta = vec![field.zero(); local.dim()];
    eta[k] = socle[k].inv().expect("nonzero");
    let products = local.basis_products();
    let gram = gram_from_functional(field, &products, &eta);
    let gw = SymmetricForm::new(gram.clone())?.to_gw()?;
    Ok(EklData {
        translated: g,
        point: point.to_vec(),
        local,
        a,
        socle,
        eta,
        gram,
        gw,
        products,
    })
}

/// `Tr_{L/k}⟨Jac(f)(x)⟩` at a point with coordinates in `L`.
pub fn local_degree_etale(
    f: &PolyMap,
    alg: &EtaleAlgebra,
    point: &[Vec<Scalar>],
) -> Result<GWElement> {
    f.require_square()?;
    if !alg.field().same_arithmetic(&f.field()) {
        return Err(Error::FieldMismatch(format!(
            "{} vs {}",
            alg.field(),
            f.field()
        )));
    }
    let point: Vec<Vec<Scalar>> = point.iter().map(|c| alg.element(c)).collect();
    for (i, fi) in f.components().iter().enumerate() {
        if !alg.is_zero(&fi.evaluate_in(alg, &point)?) {
            return Err(Error::NotAZero(format!(
                "component {} does not vanish at the point",
                i + 1
            )));
        }
    }
    let jac = f.jacobian_det()?.evaluate_in(alg, &point)?;
    if alg.is_zero(&jac) {
        return Err(Error::NotEtale);
    }
    alg.trace_form(&jac)
}

/// The Scheja–Storch form on `B = k[x]/(f)`.
#[derive(Debug, Clone)]
pub struct SsForm {
    pub algebra: Arc<QuotientAlgebra>,
    /// `Δ = Σ Δ_kl m_k ⊗ m_l`.
    pub delta: Matrix,
    pub eta: Vec<Scalar>,
    pub gram: Matrix,
    pub gw: GWElement,
}

impl SsForm {
    /// Restriction of the form to a local summand of `B`.
    pub fn restrict(&self, local: &LocalFactor) -> Matrix {
        local.inclusion().congruent(&self.gram)
    }
}

/// Bivariate divided differences `a_ij(X, Y)` with
/// `Σ_j a_ij (X_j − Y_j) = f_i(X) − f_i(Y)`, in a ring with variables
/// `X_1..X_n, Y_1..Y_n`.
pub fn bezoutian_matrix(f: &PolyMap) -> Result<(Arc<Ring>, Vec<Vec<Polynomial>>)> {
    let ring = f.ring();
    let n = ring.nvars();
    let names: Vec<String> = (0..2 * n)
        .map(|k| {
            if k < n {
                format!("X{k}")
            } else {
                format!("Y{}", k - n)
            }
        })
        .collect();
    let ring2 = Ring::new(ring.field(), &names)?;
    let xs: Vec<Polynomial> = (0..n).map(|k| Polynomial::var(&ring2, k)).collect();
    let ys: Vec<Polynomial> = (0..n).map(|k| Polynomial::var(&ring2, n + k)).collect();
    // mixed[j] = f(Y_1..Y_j, X_{j+1}..X_n)
    let mut a = Vec::with_capacity(n);
    for fi in f.components() {
        let mixed = (0..=n)
            .map(|j| {
                let images: Vec<Polynomial> = (0..n)
                    .map(|k| if k < j { ys[k].clone() } else { xs[k].clone() })
                    .collect();
                fi.substitute(&images)
            })
            .collect::<Result<Vec<_>>>()?;
        let row = (0..n)
            .map(|j| mixed[j].sub(&mixed[j + 1]).exact_divide(&xs[j].sub(&ys[j])))
            .collect::<Result<Vec<_>>>()?;
        a.push(row);
    }
    Ok((ring2, a))
}

/// `C ↦ a·C` on `B ⊗ B` with `C` the coefficient matrix of a tensor.
fn act_on_tensor(alg: &QuotientAlgebra, a: &Polynomial, c: &Matrix, n: usize) -> Matrix {
    let field = alg.field();
    let d = alg.dim();
    let mut grouped: BTreeMap<Monomial, Vec<(Monomial, Scalar)>> = BTreeMap::new();
    for (m, coeff) in a.terms() {
        let (x, y) = m.exponents().split_at(n);
        grouped
            .entry(Monomial::new(x.to_vec()))
            .or_default()
            .push((Monomial::new(y.to_vec()), coeff.clone()));
    }
    let mut out = Matrix::zeros(field, d, d);
    for (alpha, ys) in grouped {
        let mut right = Matrix::zeros(field, d, d);
        for (beta, coeff) in ys {
            right.add_scaled(&coeff, &alg.monomial_matrix(&beta));
        }
        let left = alg.monomial_matrix(&alpha);
        out = out.add(&left.mul(c).mul(&right.transpose()));
    }
    out
}

pub fn scheja_storch_form(f: &PolyMap) -> Result<SsForm> {
    scheja_storch_form_with(f, &CancelToken::new())
}

pub fn scheja_storch_form_with(f: &PolyMap, cancel: &CancelToken) -> Result<SsForm> {
    f.require_square()?;
    let n = f.ring().nvars();
    let algebra = Arc::new(QuotientAlgebra::from_generators(f.components(), cancel)?);
    let field = algebra.field();
    let d = algebra.dim();
    let (_, a) = bezoutian_matrix(f)?;
    // Laplace expansion along rows 0, 1, ...: minors[S] is the determinant of
    // rows 0..|S| and the columns in S, reduced into B ⊗ B.
    let mut minors: Vec<Option<Matrix>> = vec![None; 1 << n];
    let mut unit = Matrix::zeros(field, d, d);
    unit[(0, 0)] = field.one();
    minors[0] = Some(unit);
    let mut masks: Vec<usize> = (1..1usize << n).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        cancel.check()?;
        let k = mask.count_ones() as usize;
        let mut acc = Matrix::zeros(field, d, d);
        let cols: Vec<usize> = (0..n).filter(|j| mask & (1 << j) != 0).collect();
        for (pos, &j) in cols.iter().enumerate() {
            let entry = &a[k - 1][j];
            if entry.is_zero() {
                continue;
            }
            let sub = minors[mask & !(1 << j)]
                .as_ref()
                .expect("smaller minor computed");
            let term = act_on_tensor(&algebra, entry, sub, n);
            if (pos + k - 1).is_multiple_of(2) {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        minors[mask] = Some(acc);
    }
    let delta = minors[(1 << n) - 1].take().expect("full minor");
    if !delta.is_symmetric() {
        return Err(Error::Internal("Bezoutian tensor is not symmetric".into()));
    }
    let eta = delta
        .transpose()
        .solve(&algebra.unit())
        .ok_or(Error::SingularTheta)?;
    if delta.det().is_zero() {
        return Err(Error::SingularTheta);
    }
    let gram = gram_from_functional(field, &algebra.basis_products(), &eta);
    let gw = SymmetricForm::new(gram.clone())?.to_gw()?;
    Ok(SsForm {
        algebra,
        delta,
        eta,
        gram,
        gw,
    })
}

/// Sum of EKL classes over the given rational zeros.
pub fn sum_of_local_degrees(f: &PolyMap, points: &[Vec<Scalar>]) -> Result<GWElement> {
    let mut acc = GWElement::zero(f.field());
    for p in points {
        acc = acc.add(&ekl_class(f, p)?.gw)?;
    }
    Ok(acc)
}
