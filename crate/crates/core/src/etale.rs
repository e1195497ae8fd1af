//! Étale algebras `L = k[t]/(m)` and trace forms.

use crate::error::{Error, Result};
use crate::gw::{GWElement, SymmetricForm};
use crate::linalg::Matrix;
use crate::poly::{Algebra, Polynomial, Ring};
use crate::scalar::{Field, Scalar};

/// Dense univariate polynomial helpers; coefficients are stored low to high.
pub mod univariate {
    use crate::scalar::Scalar;

    pub fn trim(mut p: Vec<Scalar>) -> Vec<Scalar> {
        while p.last().is_some_and(Scalar::is_zero) {
            p.pop();
        }
        p
    }

    pub fn degree(p: &[Scalar]) -> Option<usize> {
        p.iter().rposition(|c| !c.is_zero())
    }

    pub fn derivative(p: &[Scalar]) -> Vec<Scalar> {
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let k = c.one_like();
                let mut n = c.zero_like();
                for _ in 0..i {
                    n += &k;
                }
                c * &n
            })
            .collect()
    }

    /// Remainder of `a` modulo a nonzero `b`.
    pub fn rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let db = degree(b).expect("nonzero divisor");
        let lead_inv = b[db].inv().expect("nonzero");
        let mut r = trim(a.to_vec());
        while let Some(dr) = degree(&r) {
            if dr < db {
                break;
            }
            let c = &r[dr] * &lead_inv;
            for i in 0..=db {
                let t = &c * &b[i];
                r[dr - db + i] -= &t;
            }
            r = trim(r);
        }
        r
    }

    pub fn gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let r = rem(&x, &y);
            x = y;
            y = r;
        }
        x
    }

    pub fn mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![a[0].zero_like(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += &(x * y);
            }
        }
        trim(out)
    }
}

/// A separable algebra `k[t]/(m)`, elements as coordinate vectors in
/// `1, t, ..., t^{d-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaleAlgebra {
    field: Field,
    modulus: Vec<Scalar>,
}

impl EtaleAlgebra {
    /// From the coefficients of `m`, low degree first; `m` is made monic.
    pub fn new(field: Field, coeffs: &[Scalar]) -> Result<EtaleAlgebra> {
        for c in coeffs {
            field.check(c)?;
        }
        let m = univariate::trim(coeffs.to_vec());
        let d = univariate::degree(&m)
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidInput("modulus must have positive degree".into()))?;
        let inv = m[d].inv().expect("nonzero");
        let m: Vec<Scalar> = m.iter().map(|c| c * &inv).collect();
        let g = univariate::gcd(&m, &univariate::derivative(&m));
        if univariate::degree(&g) != Some(0) {
            return Err(Error::InseparableModulus);
        }
        Ok(EtaleAlgebra { field, modulus: m })
    }

    /// From a univariate [`Polynomial`].
    pub fn from_polynomial(m: &Polynomial) -> Result<EtaleAlgebra> {
        if m.ring().nvars() != 1 {
            return Err(Error::InvalidInput("modulus must be univariate".into()));
        }
        let d = m.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![m.field().zero(); d + 1];
        for (mono, c) in m.terms() {
            coeffs[mono.exponents()[0] as usize] = c.clone();
        }
        EtaleAlgebra::new(m.field(), &coeffs)
    }

    /// Parses a modulus such as `"t^2 + 1"` in the variable `var`.
    pub fn parse(field: Field, var: &str, text: &str) -> Result<EtaleAlgebra> {
        let ring = Ring::new(field, &[var])?;
        EtaleAlgebra::from_polynomial(&Polynomial::parse(text, &ring)?)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Scalar] {
        &self.modulus
    }

    /// Reduces arbitrary coefficients (low first) to an element.
    pub fn element(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        let mut r = univariate::rem(coeffs, &self.modulus);
        r.resize(self.degree(), self.field.zero());
        r
    }

    /// Element given as a polynomial in a single variable.
    pub fn element_from_polynomial(&self, p: &Polynomial) -> Result<Vec<Scalar>> {
        if p.ring().nvars() != 1 {
            return Err(Error::InvalidInput("element must be univariate".into()));
        }
        self.field.check(&p.field().zero())?;
        let d = p.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![self.field.zero(); d + 1];
        for (mono, c) in p.terms() {
            coeffs[mono.exponents()[0] as usize] = c.clone();
        }
        Ok(self.element(&coeffs))
    }

    /// The generator `t`.
    pub fn generator(&self) -> Vec<Scalar> {
        self.element(&[self.field.zero(), self.field.one()])
    }

    pub fn scalar(&self, c: &Scalar) -> Vec<Scalar> {
        self.element(std::slice::from_ref(c))
    }

    pub fn is_zero(&self, a: &[Scalar]) -> bool {
        a.iter().all(Scalar::is_zero)
    }

    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.element(&univariate::mul(a, b))
    }

    /// Matrix of multiplication by `a` in the power basis.
    pub fn mult_matrix(&self, a: &[Scalar]) -> Matrix {
        let d = self.degree();
        let mut basis_vec = vec![self.field.zero(); d];
        let cols: Vec<Vec<Scalar>> = (0..d)
            .map(|j| {
                basis_vec.iter_mut().for_each(|c| *c = self.field.zero());
                basis_vec[j] = self.field.one();
                self.multiply(a, &basis_vec)
            })
            .collect();
        Matrix::from_columns(self.field, d, &cols)
    }

    pub fn trace(&self, a: &[Scalar]) -> Scalar {
        let m = self.mult_matrix(a);
        let mut acc = self.field.zero();
        for i in 0..self.degree() {
            acc += &m[(i, i)];
        }
        acc
    }

    /// Gram matrix `G_ij = Tr(a t^i t^j)` of the scaled trace form.
    pub fn trace_gram(&self, a: &[Scalar]) -> Matrix {
        let d = self.degree();
        let t = self.generator();
        let mut powers = vec![self.scalar(&self.field.one())];
        for k in 1..2 * d.max(1) - 1 {
            powers.push(self.multiply(&powers[k - 1], &t));
        }
        let traces: Vec<Scalar> = powers
            .iter()
            .map(|p| self.trace(&self.multiply(a, p)))
            .collect();
        let rows = (0..d)
            .map(|i| (0..d).map(|j| traces[i + j].clone()).collect())
            .collect();
        Matrix::from_rows(self.field, rows)
    }

    /// `Tr_{L/k}⟨a⟩`.
    pub fn trace_form(&self, a: &[Scalar]) -> Result<GWElement> {
        if self.is_zero(a) {
            return Err(Error::DegenerateForm);
        }
        SymmetricForm::new(self.trace_gram(a))?.to_gw()
    }
}

impl Algebra for EtaleAlgebra {
    type Elem = Vec<Scalar>;

    fn from_scalar(&self, c: &Scalar) -> Vec<Scalar> {
        self.scalar(c)
    }

    fn add(&self, a: &Vec<Scalar>, b: &Vec<Scalar>) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn mul(&self, a: &Vec<Scalar>, b: &Vec<Scalar>) -> Vec<Scalar> {
        self.multiply(a, b)
    }
}
