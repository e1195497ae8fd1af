//! Sparse multivariate polynomials over a [`Field`].
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is graded
//! reverse lexicographic with respect to the ring's variable list, so the
//! last entry is always the leading term.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// Exponent vector, ordered by degrevlex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Monomial {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    // smaller exponent in the last differing variable wins
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial ring `k[x_1, ..., x_n]`.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    field: Field,
    vars: Vec<String>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(field: Field, vars: &[S]) -> Result<Arc<Ring>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().trim().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            let valid = v
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
            if !valid {
                return Err(Error::InvalidInput(format!(
                    "`{v}` is not a valid variable name"
                )));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidInput(format!(
                    "variable `{v}` declared twice"
                )));
            }
        }
        Ok(Arc::new(Ring { field, vars }))
    }

    /// Parses a comma-separated variable list such as `x,y`.
    pub fn from_var_list(field: Field, list: &str) -> Result<Arc<Ring>> {
        let vars: Vec<&str> = list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        if vars.is_empty() {
            return Err(Error::InvalidInput("empty variable list".into()));
        }
        Ring::new(field, &vars)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Scalar) -> Polynomial {
        Polynomial::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Polynomial {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Polynomial {
        Polynomial::term(ring, Monomial::var(ring.nvars(), i, 1), ring.field().one())
    }

    pub fn term(ring: &Arc<Ring>, m: Monomial, c: Scalar) -> Polynomial {
        assert_eq!(m.nvars(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_terms(
        ring: &Arc<Ring>,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Polynomial {
        let mut p = Polynomial::zero(ring);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    /// Parses `text` in `ring`; see [`crate::parse`].
    pub fn parse(text: &str, ring: &Arc<Ring>) -> Result<Polynomial> {
        crate::parse::parse_polynomial(text, ring)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field().zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.values().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in variable `i`.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponents()[i]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * m * other`.
    pub fn add_scaled_shifted(&mut self, c: &Scalar, m: &Monomial, other: &Polynomial) {
        if c.is_zero() {
            return;
        }
        for (om, oc) in &other.terms {
            self.add_term(om.mul(m), &(c * oc));
        }
    }

    fn check_ring(&self, other: &Polynomial) {
        assert!(
            same_ring(&self.ring, &other.ring),
            "polynomials from different rings"
        );
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other);
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            out.add_scaled_shifted(c, m, other);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient `self / divisor`, failing unless the division is exact.
    pub fn exact_divide(&self, divisor: &Polynomial) -> Result<Polynomial> {
        self.check_ring(divisor);
        let (lm, lc) = divisor
            .leading_term()
            .ok_or_else(|| Error::InvalidInput("division by the zero polynomial".into()))?;
        let lc_inv = lc.inv().expect("nonzero leading coefficient");
        let mut rest = self.clone();
        let mut quotient = Polynomial::zero(&self.ring);
        while let Some((m, c)) = rest.leading_term() {
            let Some(q) = lm.quotient_of(m) else {
                return Err(Error::NonExactDivision);
            };
            let coeff = c * &lc_inv;
            rest.add_scaled_shifted(&-&coeff, &q, divisor);
            quotient.add_term(q, &coeff);
        }
        Ok(quotient)
    }

    pub fn partial_derivative(&self, i: usize) -> Polynomial {
        let field = self.field();
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial(exps), &(c * &field.from_i64(e as i64)));
        }
        out
    }

    pub fn gradient(&self) -> PolyMap {
        PolyMap::new(
            (0..self.ring.nvars())
                .map(|i| self.partial_derivative(i))
                .collect(),
        )
        .expect("components share the ring")
    }

    /// Matrix of second partials.
    pub fn hessian(&self) -> Vec<Vec<Polynomial>> {
        let n = self.ring.nvars();
        let first: Vec<Polynomial> = (0..n).map(|i| self.partial_derivative(i)).collect();
        (0..n)
            .map(|i| (0..n).map(|j| first[i].partial_derivative(j)).collect())
            .collect()
    }

    /// Determinant of the Hessian evaluated at a point of the base field.
    pub fn hessian_det_at(&self, point: &[Scalar]) -> Result<Scalar> {
        let field = self.field();
        let h = self.hessian();
        let rows = h
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| p.evaluate(point))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(crate::linalg::Matrix::from_rows(field, rows).det())
    }

    fn check_point(&self, point: &[Scalar]) -> Result<()> {
        if point.len() != self.ring.nvars() {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, ring has {} variables",
                point.len(),
                self.ring.nvars()
            )));
        }
        for c in point {
            self.field().check(c)?;
        }
        Ok(())
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        self.check_point(point)?;
        let mut acc = self.field().zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= &x.pow(e);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Evaluates in any commutative `k`-algebra.
    pub fn evaluate_in<A: Algebra>(&self, alg: &A, point: &[A::Elem]) -> Result<A::Elem> {
        if point.len() != self.ring.nvars() {
            return Err(Error::InvalidInput("point dimension mismatch".into()));
        }
        let mut acc = alg.from_scalar(&self.field().zero());
        for (m, c) in &self.terms {
            let mut t = alg.from_scalar(c);
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = alg.mul(&t, x);
                }
            }
            acc = alg.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` for variable `i`; all images share one ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        let target = images
            .first()
            .ok_or_else(|| Error::InvalidInput("no substitution images".into()))?
            .ring()
            .clone();
        if images.len() != self.ring.nvars() {
            return Err(Error::InvalidInput("substitution arity mismatch".into()));
        }
        if images.iter().any(|p| !same_ring(p.ring(), &target)) {
            return Err(Error::InvalidInput(
                "substitution images from different rings".into(),
            ));
        }
        if !target.field().same_arithmetic(&self.field()) {
            return Err(Error::FieldMismatch("substitution across fields".into()));
        }
        let alg = PolyAlgebra { ring: target };
        self.evaluate_in(&alg, images)
    }

    /// `f(x + p)`: moves the point `p` to the origin.
    pub fn translate(&self, point: &[Scalar]) -> Result<Polynomial> {
        self.check_point(point)?;
        let images: Vec<Polynomial> = (0..self.ring.nvars())
            .map(|i| {
                Polynomial::var(&self.ring, i)
                    .add(&Polynomial::constant(&self.ring, point[i].clone()))
            })
            .collect();
        self.substitute(&images)
    }

    /// Re-expresses the polynomial in another ring over the same field
    /// whose variables are a superset (matched by name).
    pub fn embed(&self, target: &Arc<Ring>) -> Result<Polynomial> {
        let map: Vec<usize> = self
            .ring
            .vars()
            .iter()
            .map(|v| {
                target.var_index(v).ok_or_else(|| {
                    Error::InvalidInput(format!("variable {v} missing in target ring"))
                })
            })
            .collect::<Result<_>>()?;
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.nvars()];
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[map[i]] = e;
            }
            out.add_term(Monomial(exps), c);
        }
        Ok(out)
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(lc) if !lc.is_one() => self.scale(&lc.inv().expect("nonzero")),
            _ => self.clone(),
        }
    }
}

/// A commutative algebra over the base field, used for evaluation.
#[allow(clippy::wrong_self_convention)]
pub trait Algebra {
    type Elem: Clone;
    fn from_scalar(&self, c: &Scalar) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

struct PolyAlgebra {
    ring: Arc<Ring>,
}

impl Algebra for PolyAlgebra {
    type Elem = Polynomial;
    fn from_scalar(&self, c: &Scalar) -> Polynomial {
        Polynomial::constant(&self.ring, c.clone())
    }
    fn add(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.add(b)
    }
    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.mul(b)
    }
}

fn fmt_monomial(m: &Monomial, vars: &[String], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (v, &e) in vars.iter().zip(m.exponents()) {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

/// Canonical printing: descending degrevlex, explicit `*`, `^` for powers.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else {
                if magnitude != "1" {
                    write!(f, "{magnitude}*")?;
                }
                fmt_monomial(m, &self.ring.vars, f)?;
            }
        }
        Ok(())
    }
}

/// A square or rectangular system `(f_1, ..., f_m)` in one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    components: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(components: Vec<Polynomial>) -> Result<PolyMap> {
        let first = components
            .first()
            .ok_or_else(|| Error::InvalidInput("empty polynomial system".into()))?;
        if components
            .iter()
            .any(|p| !same_ring(p.ring(), first.ring()))
        {
            return Err(Error::InvalidInput(
                "system components live in different rings".into(),
            ));
        }
        Ok(PolyMap { components })
    }

    /// Parses `"f1; f2; ..."`.
    pub fn parse(text: &str, ring: &Arc<Ring>) -> Result<PolyMap> {
        let mut comps = Vec::new();
        let mut offset = 0;
        for piece in text.split(';') {
            if !piece.trim().is_empty() {
                let p = Polynomial::parse(piece, ring).map_err(|e| match e {
                    Error::Syntax { pos, msg } => Error::Syntax {
                        pos: pos + offset,
                        msg,
                    },
                    Error::UnknownVariable { name, pos } => Error::UnknownVariable {
                        name,
                        pos: pos + offset,
                    },
                    other => other,
                })?;
                comps.push(p);
            }
            offset += piece.len() + 1;
        }
        PolyMap::new(comps)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.components[0].ring()
    }

    pub fn field(&self) -> Field {
        self.ring().field()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.components.len() == self.ring().nvars()
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "system has {} components in {} variables",
                self.len(),
                self.ring().nvars()
            )))
        }
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Vec<Scalar>> {
        self.components.iter().map(|p| p.evaluate(point)).collect()
    }

    pub fn translate(&self, point: &[Scalar]) -> Result<PolyMap> {
        PolyMap::new(
            self.components
                .iter()
                .map(|p| p.translate(point))
                .collect::<Result<_>>()?,
        )
    }

    /// Matrix of partials `∂f_i/∂x_j`.
    pub fn jacobian_matrix(&self) -> Vec<Vec<Polynomial>> {
        let n = self.ring().nvars();
        self.components
            .iter()
            .map(|f| (0..n).map(|j| f.partial_derivative(j)).collect())
            .collect()
    }

    pub fn jacobian_det(&self) -> Result<Polynomial> {
        self.require_square()?;
        det_bareiss(&self.jacobian_matrix(), self.ring())
    }

    /// Re-expresses the system in a ring with permuted (or extra) variables.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<PolyMap> {
        PolyMap::new(
            self.components
                .iter()
                .map(|p| p.embed(target))
                .collect::<Result<_>>()?,
        )
    }
}

/// Fraction-free (Bareiss) determinant of a square polynomial matrix.
pub fn det_bareiss(matrix: &[Vec<Polynomial>], ring: &Arc<Ring>) -> Result<Polynomial> {
    let n = matrix.len();
    if matrix.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput(
            "determinant of a non-square matrix".into(),
        ));
    }
    if n == 0 {
        return Ok(Polynomial::one(ring));
    }
    let mut m: Vec<Vec<Polynomial>> = matrix.to_vec();
    let mut negate = false;
    let mut prev = Polynomial::one(ring);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(Polynomial::zero(ring)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_divide(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

/// Cofactor expansion along the first row.
pub fn det_cofactor(matrix: &[Vec<Polynomial>], ring: &Arc<Ring>) -> Polynomial {
    let n = matrix.len();
    if n == 0 {
        return Polynomial::one(ring);
    }
    let mut acc = Polynomial::zero(ring);
    for j in 0..n {
        if matrix[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = matrix[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = matrix[0][j].mul(&det_cofactor(&minor, ring));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}
