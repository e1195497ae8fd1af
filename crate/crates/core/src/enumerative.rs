//! Milnor numbers, node types, lines meeting four lines, lines on cubics.

use std::sync::Arc;

use serde_json::Value;

use crate::cancel::CancelToken;
use crate::degree::{ekl_class_with, scheja_storch_form_with, EklData, SsForm};
use crate::error::{Error, Result};
use crate::etale::EtaleAlgebra;
use crate::groebner::GroebnerBasis;
use crate::gw::GWElement;
use crate::linalg::Matrix;
use crate::poly::{Algebra, Monomial, PolyMap, Polynomial, Ring};
use crate::quotient::QuotientAlgebra;
use crate::scalar::{Field, Scalar};

/// `μ^{A¹}` at the origin: the EKL class of the gradient.
pub fn milnor_number(f: &Polynomial) -> Result<EklData> {
    milnor_number_with(f, &CancelToken::new())
}

pub fn milnor_number_with(f: &Polynomial, cancel: &CancelToken) -> Result<EklData> {
    let origin = vec![f.field().zero(); f.ring().nvars()];
    if !f.evaluate(&origin)?.is_zero() {
        return Err(Error::NotAZero(
            "the polynomial does not vanish at the origin".into(),
        ));
    }
    let grad = f.gradient();
    if grad.evaluate(&origin)?.iter().any(|v| !v.is_zero()) {
        return Err(Error::NotAZero(
            "the origin is not a singular point (gradient is nonzero)".into(),
        ));
    }
    ekl_class_with(&grad, &origin, cancel)
}

/// `⟨det Hess(g)(p)⟩` at a rational point.
pub fn node_type(g: &Polynomial, point: &[Scalar]) -> Result<GWElement> {
    let h = g.hessian_det_at(point)?;
    if h.is_zero() {
        return Err(Error::NotANode);
    }
    GWElement::class(g.field(), &h)
}

/// `Tr_{L/k}⟨det Hess(g)(p)⟩` at a point with coordinates in `L`.
pub fn node_type_ext(
    g: &Polynomial,
    alg: &EtaleAlgebra,
    point: &[Vec<Scalar>],
) -> Result<GWElement> {
    let point: Vec<Vec<Scalar>> = point.iter().map(|c| alg.element(c)).collect();
    let h: Vec<Vec<Vec<Scalar>>> = g
        .hessian()
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| p.evaluate_in(alg, &point))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let det = det_etale(alg, &h);
    if alg.is_zero(&det) {
        return Err(Error::NotANode);
    }
    alg.trace_form(&det)
}

fn det_etale(alg: &EtaleAlgebra, m: &[Vec<Vec<Scalar>>]) -> Vec<Scalar> {
    let n = m.len();
    if n == 0 {
        return alg.scalar(&alg.field().one());
    }
    let mut acc = alg.scalar(&alg.field().zero());
    for j in 0..n {
        let minor: Vec<Vec<Vec<Scalar>>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = alg.multiply(&m[0][j], &det_etale(alg, &minor));
        acc = if j % 2 == 0 {
            alg.add(&acc, &term)
        } else {
            acc.iter().zip(&term).map(|(a, b)| a - b).collect()
        };
    }
    acc
}

/// A line in P³: a 2-dimensional subspace of k⁴.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineIn3Space {
    field: Field,
    span: [Vec<Scalar>; 2],
}

impl LineIn3Space {
    pub fn new(field: Field, u: Vec<Scalar>, v: Vec<Scalar>) -> Result<LineIn3Space> {
        if u.len() != 4 || v.len() != 4 {
            return Err(Error::InvalidInput(
                "a line needs two vectors with 4 coordinates".into(),
            ));
        }
        for c in u.iter().chain(&v) {
            field.check(c)?;
        }
        let line = LineIn3Space {
            field,
            span: [u, v],
        };
        if line.span_matrix().rank() != 2 {
            return Err(Error::InvalidInput(
                "spanning vectors are linearly dependent".into(),
            ));
        }
        Ok(line)
    }

    pub fn from_i64(field: Field, u: [i64; 4], v: [i64; 4]) -> Result<LineIn3Space> {
        let conv = |w: [i64; 4]| w.iter().map(|&c| field.from_i64(c)).collect();
        LineIn3Space::new(field, conv(u), conv(v))
    }

    /// Parses `{"span": [[a, b, c, d], [e, f, g, h]]}`; entries are JSON
    /// integers or strings such as `"-3/4"`.
    pub fn from_json(field: Field, value: &Value) -> Result<LineIn3Space> {
        let span = value
            .get("span")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 2)
            .ok_or_else(|| {
                Error::InvalidInput("a line needs a \"span\" array of two vectors".into())
            })?;
        let vec = |v: &Value| -> Result<Vec<Scalar>> {
            v.as_array()
                .ok_or_else(|| Error::InvalidInput("span vectors must be arrays".into()))?
                .iter()
                .map(|c| json_scalar(field, c))
                .collect()
        };
        LineIn3Space::new(field, vec(&span[0])?, vec(&span[1])?)
    }

    /// Integers are written as JSON numbers, fractions as strings.
    pub fn to_json(&self) -> Value {
        let entry = |c: &Scalar| {
            let text = c.to_ascii();
            text.parse::<i64>()
                .map(Value::from)
                .unwrap_or(Value::String(text))
        };
        let rows: Vec<Value> = self
            .span
            .iter()
            .map(|v| Value::Array(v.iter().map(entry).collect()))
            .collect();
        serde_json::json!({ "span": rows })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn span(&self) -> &[Vec<Scalar>; 2] {
        &self.span
    }

    /// 2×4 matrix with the spanning vectors as rows.
    pub fn span_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.span.to_vec())
    }

    /// Two functionals cutting out the line.
    pub fn equations(&self) -> [Vec<Scalar>; 2] {
        let k = self.span_matrix().kernel();
        [k[0].clone(), k[1].clone()]
    }

    /// Image under `v ↦ M v`.
    pub fn transform(&self, m: &Matrix) -> Result<LineIn3Space> {
        LineIn3Space::new(
            self.field,
            m.mul_vec(&self.span[0]),
            m.mul_vec(&self.span[1]),
        )
    }

    pub fn same_as(&self, other: &LineIn3Space) -> bool {
        let mut rows = self.span.to_vec();
        rows.extend(other.span.iter().cloned());
        Matrix::from_rows(self.field, rows).rank() == 2
    }
}

fn json_scalar(field: Field, c: &Value) -> Result<Scalar> {
    match c {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(field.from_i64(i)),
            None => Err(Error::InvalidInput(format!(
                "`{n}` is not an integer; use a string for fractions"
            ))),
        },
        Value::String(s) => field.parse_scalar(s),
        other => Err(Error::InvalidInput(format!("`{other}` is not a scalar"))),
    }
}

/// Reads four lines from `[{"span": ...}, ...]` or `{"lines": [...]}`.
pub fn lines_from_json(field: Field, value: &Value) -> Result<Vec<LineIn3Space>> {
    let arr = value
        .as_array()
        .or_else(|| value.get("lines").and_then(Value::as_array))
        .ok_or_else(|| Error::InvalidInput("expected an array of lines".into()))?;
    arr.iter()
        .map(|v| LineIn3Space::from_json(field, v))
        .collect()
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = a[0].zero_like();
    for (x, y) in a.iter().zip(b) {
        acc += &(x * y);
    }
    acc
}

/// The ring `k[x, y, x', y']` of the affine chart.
pub fn chart_ring(field: Field) -> Arc<Ring> {
    Ring::new(field, &["x", "y", "x'", "y'"]).expect("valid names")
}

/// Chart vectors `ẽ₃ = (x, y, 1, 0)` and `ẽ₄ = (x', y', 0, 1)`.
fn chart_vectors(ring: &Arc<Ring>) -> [Vec<Polynomial>; 2] {
    let v = |i| Polynomial::var(ring, i);
    let c = |n: i64| Polynomial::constant(ring, ring.field().from_i64(n));
    [vec![v(0), v(1), c(1), c(0)], vec![v(2), v(3), c(0), c(1)]]
}

fn apply_functional(phi: &[Scalar], w: &[Polynomial]) -> Polynomial {
    let mut acc = Polynomial::zero(w[0].ring());
    for (c, p) in phi.iter().zip(w) {
        acc = acc.add(&p.scale(c));
    }
    acc
}

/// The section `(φ₁ ∧ φ₂)(ẽ₃ ∧ ẽ₄)` for each line, in chart coordinates.
pub fn four_lines_system(lines: &[LineIn3Space]) -> Result<PolyMap> {
    if lines.len() != 4 {
        return Err(Error::InvalidInput(format!(
            "expected 4 lines, got {}",
            lines.len()
        )));
    }
    let field = lines[0].field();
    if lines.iter().any(|l| l.field() != field) {
        return Err(Error::FieldMismatch("lines over different fields".into()));
    }
    let ring = chart_ring(field);
    let [e3, e4] = chart_vectors(&ring);
    let comps = lines
        .iter()
        .map(|l| {
            let [p1, p2] = l.equations();
            apply_functional(&p1, &e3)
                .mul(&apply_functional(&p2, &e4))
                .sub(&apply_functional(&p1, &e4).mul(&apply_functional(&p2, &e3)))
        })
        .collect();
    PolyMap::new(comps)
}

fn check_general_position(lines: &[LineIn3Space]) -> Result<()> {
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if lines[i].same_as(&lines[j]) {
                return Err(Error::DegeneratePosition(format!(
                    "lines {} and {} coincide",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let field = lines[0].field();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            for k in j + 1..lines.len() {
                let mut rows = Vec::new();
                for l in [i, j, k] {
                    rows.extend(lines[l].equations());
                }
                if !Matrix::from_rows(field, rows).kernel().is_empty() {
                    return Err(Error::DegeneratePosition(format!(
                        "lines {}, {} and {} pass through a common point",
                        i + 1,
                        j + 1,
                        k + 1
                    )));
                }
            }
        }
    }
    Ok(())
}

/// The four-lines system with its quotient algebra, after the position checks.
pub fn four_lines_algebra(
    lines: &[LineIn3Space],
    cancel: &CancelToken,
) -> Result<(PolyMap, QuotientAlgebra)> {
    let f = four_lines_system(lines)?;
    check_general_position(lines)?;
    let gb = GroebnerBasis::compute_with(f.components(), cancel)?;
    if !gb.is_zero_dimensional() {
        return Err(Error::DegeneratePosition(
            "infinitely many lines meet all four".into(),
        ));
    }
    let alg = QuotientAlgebra::new(gb).map_err(|e| match e {
        Error::NotZeroDimensional(_) => {
            Error::ChartMiss("no solution line lies in the chart".into())
        }
        other => other,
    })?;
    match alg.dim() {
        2 => Ok((f, alg)),
        d if d < 2 => Err(Error::ChartMiss(format!(
            "only {d} of 2 solution lines lie in the chart; apply a change of basis"
        ))),
        d => Err(Error::DegeneratePosition(format!(
            "quotient has dimension {d}, expected 2"
        ))),
    }
}

/// Enriched count of lines meeting four lines: the Scheja–Storch form of
/// the chart section.
pub fn four_lines_count(lines: &[LineIn3Space]) -> Result<SsForm> {
    four_lines_count_with(lines, &CancelToken::new())
}

pub fn four_lines_count_with(lines: &[LineIn3Space], cancel: &CancelToken) -> Result<SsForm> {
    let (f, _) = four_lines_algebra(lines, cancel)?;
    scheja_storch_form_with(&f, cancel)
}

/// The line `span(ẽ₃, ẽ₄)` at chart coordinates `(x, y, x', y')`.
pub fn chart_line(field: Field, coords: &[Scalar]) -> Result<LineIn3Space> {
    let (z, o) = (field.zero(), field.one());
    LineIn3Space::new(
        field,
        vec![coords[0].clone(), coords[1].clone(), o.clone(), z.clone()],
        vec![coords[2].clone(), coords[3].clone(), z, o],
    )
}

/// The two solution lines when both are defined over the base field.
pub fn solution_lines(lines: &[LineIn3Space]) -> Result<Vec<LineIn3Space>> {
    let (_, alg) = four_lines_algebra(lines, &CancelToken::new())?;
    let field = alg.field();
    let m = alg.mult_matrices();
    for weights in [
        [1i64, 2, 3, 5],
        [1, -1, 2, 7],
        [3, 1, -2, 1],
        [1, 0, 0, 0],
        [0, 1, 0, 0],
    ] {
        let mut ell = Matrix::zeros(field, 2, 2);
        for (w, mi) in weights.iter().zip(m) {
            ell.add_scaled(&field.from_i64(*w), mi);
        }
        let tr = &ell[(0, 0)] + &ell[(1, 1)];
        let det = ell.det();
        let disc = &tr * &tr - field.from_i64(4) * det;
        if disc.is_zero() {
            continue;
        }
        let root = field.sqrt(&disc).ok_or(Error::IrrationalSolution)?;
        let half = field.from_i64(2).inv().expect("odd characteristic");
        let mut out = Vec::new();
        for r in [(&tr + &root) * &half, (&tr - &root) * &half] {
            let shifted = ell.sub(&Matrix::identity(field, 2).scale(&r)).transpose();
            let w = shifted
                .kernel()
                .into_iter()
                .next()
                .ok_or_else(|| Error::Internal("missing eigenvector".into()))?;
            let w0 = w[0]
                .inv()
                .ok_or_else(|| Error::Internal("evaluation functional vanishes at 1".into()))?;
            let coords: Vec<Scalar> = m.iter().map(|mi| &dot(&w, &mi.col(0)) * &w0).collect();
            out.push(chart_line(field, &coords)?);
        }
        return Ok(out);
    }
    Err(Error::DegeneratePosition(
        "the two solution lines coincide".into(),
    ))
}

fn cross_ratio(points: &[[Scalar; 2]]) -> Result<Scalar> {
    let det = |a: &[Scalar; 2], b: &[Scalar; 2]| &a[0] * &b[1] - &a[1] * &b[0];
    let num = det(&points[0], &points[2]) * det(&points[1], &points[3]);
    let den = det(&points[0], &points[3]) * det(&points[1], &points[2]);
    let inv = den
        .inv()
        .ok_or_else(|| Error::DegeneratePosition("two of the four points coincide".into()))?;
    Ok(num * inv)
}

/// `⟨λ_L − μ_L⟩` for a rational solution line `L`.
pub fn cross_ratio_weight(solution: &LineIn3Space, lines: &[LineIn3Space]) -> Result<GWElement> {
    if lines.len() != 4 {
        return Err(Error::InvalidInput(format!(
            "expected 4 lines, got {}",
            lines.len()
        )));
    }
    let field = solution.field();
    let [u, v] = solution.span();
    let mut on_line = Vec::with_capacity(4);
    for (i, l) in lines.iter().enumerate() {
        if l.same_as(solution) {
            return Err(Error::DegeneratePosition(format!(
                "the solution equals line {}",
                i + 1
            )));
        }
        let [p1, p2] = l.equations();
        let sys = Matrix::from_rows(
            field,
            vec![
                vec![dot(&p1, u), dot(&p1, v)],
                vec![dot(&p2, u), dot(&p2, v)],
            ],
        );
        let k = sys.kernel();
        if k.is_empty() {
            return Err(Error::NoIntersection(format!(
                "the solution does not meet line {}",
                i + 1
            )));
        }
        on_line.push([k[0][0].clone(), k[0][1].clone()]);
    }
    let [psi1, psi2] = solution.equations();
    let mut planes = Vec::with_capacity(4);
    for l in lines {
        let w = l
            .span()
            .iter()
            .map(|s| [dot(&psi1, s), dot(&psi2, s)])
            .find(|p| !p[0].is_zero() || !p[1].is_zero())
            .expect("line differs from the solution");
        planes.push(w);
    }
    let lambda = cross_ratio(&on_line)?;
    let mu = cross_ratio(&planes)?;
    let diff = &lambda - &mu;
    if diff.is_zero() {
        return Err(Error::NotAUnit(format!("λ − μ = 0 (λ = μ = {lambda})")));
    }
    GWElement::class(field, &diff)
}

/// Chart coordinates ordered `x, x', y, y'` (the coordinates of `ẽ₃, ẽ₄`
/// paired by row); this ordering fixes the relative orientation.
pub fn cubic_chart_ring(field: Field) -> Arc<Ring> {
    Ring::new(field, &["x", "x'", "y", "y'"]).expect("valid names")
}

/// Coefficients `c_k` of `s^k t^{3−k}` in `f(s ẽ₃ + t ẽ₄)`.
pub fn cubic_lines_system(f: &Polynomial) -> Result<PolyMap> {
    if f.ring().nvars() != 4 {
        return Err(Error::InvalidInput(
            "a cubic surface needs 4 homogeneous variables".into(),
        ));
    }
    if f.is_zero() || !f.is_homogeneous() || f.total_degree() != Some(3) {
        return Err(Error::InvalidInput(
            "the surface must be a nonzero homogeneous cubic".into(),
        ));
    }
    let field = f.field();
    let big = Ring::new(field, &["x", "y", "x'", "y'", "s", "t"])?;
    let v = |i| Polynomial::var(&big, i);
    let (s, t) = (v(4), v(5));
    let images = vec![
        s.mul(&v(0)).add(&t.mul(&v(2))),
        s.mul(&v(1)).add(&t.mul(&v(3))),
        s.clone(),
        t.clone(),
    ];
    let g = f.substitute(&images)?;
    let chart = cubic_chart_ring(field);
    let mut comps = vec![Polynomial::zero(&chart); 4];
    for (m, c) in g.terms() {
        let e = m.exponents();
        let k = e[4] as usize;
        comps[k].add_term(Monomial::new(vec![e[0], e[2], e[1], e[3]]), c);
    }
    PolyMap::new(comps)
}

/// Whether `{f = 0} ⊂ P³` is smooth.
pub fn is_smooth_surface(f: &Polynomial, cancel: &CancelToken) -> Result<bool> {
    let mut gens = vec![f.clone()];
    gens.extend(f.gradient().components().iter().cloned());
    Ok(GroebnerBasis::compute_with(&gens, cancel)?.is_zero_dimensional())
}

/// Enriched count of lines on a smooth cubic surface in the chart.
pub fn cubic_lines_count(f: &Polynomial) -> Result<SsForm> {
    cubic_lines_count_with(f, &CancelToken::new())
}

pub fn cubic_lines_count_with(f: &Polynomial, cancel: &CancelToken) -> Result<SsForm> {
    let system = cubic_lines_system(f)?;
    if !is_smooth_surface(f, cancel)? {
        return Err(Error::NotZeroDimensional("the surface is singular".into()));
    }
    let gb = GroebnerBasis::compute_with(system.components(), cancel)?;
    if !gb.is_zero_dimensional() {
        return Err(Error::NotZeroDimensional(
            "infinitely many lines in the chart".into(),
        ));
    }
    let ss = scheja_storch_form_with(&system, cancel)?;
    if ss.gw.rank() != 27 {
        return Err(Error::ChartMiss(format!(
            "only {} of 27 lines lie in the chart; apply a change of basis",
            ss.gw.rank()
        )));
    }
    Ok(ss)
}

/// `f(M⁻¹ w)`: the surface moved by `v ↦ M v`.
pub fn transform_cubic(f: &Polynomial, m: &Matrix) -> Result<Polynomial> {
    let inv = m
        .inverse()
        .ok_or_else(|| Error::InvalidInput("basis change matrix is singular".into()))?;
    let ring = f.ring();
    let images: Vec<Polynomial> = (0..4)
        .map(|i| {
            let mut acc = Polynomial::zero(ring);
            for j in 0..4 {
                acc = acc.add(&Polynomial::var(ring, j).scale(&inv[(i, j)]));
            }
            acc
        })
        .collect();
    f.substitute(&images)
}

/// Normal forms of the simple singularities in `x, y`.
pub fn ade_polynomial(name: &str) -> Option<String> {
    let (kind, n) = name.split_at(1);
    let n: u32 = n.parse().ok()?;
    match (kind, n) {
        ("A", n) if n >= 1 => Some(format!("x^2 + y^{}", n + 1)),
        ("D", n) if n >= 4 => Some(format!("y*(x^2 + y^{})", n - 2)),
        ("E", 6) => Some("x^3 + y^4".into()),
        ("E", 7) => Some("x*(x^2 + y^3)".into()),
        ("E", 8) => Some("x^3 + y^5".into()),
        _ => None,
    }
}
