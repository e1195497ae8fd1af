//! Finite-dimensional quotients `k[x]/I` and their local factors.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::cancel::CancelToken;
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial, Ring};
use crate::scalar::{Field, Scalar};

/// `k[x]/I` with its standard-monomial basis.
///
/// Elements are coordinate vectors in the basis `m_1 = 1 < m_2 < ...`.
/// Multiplication matrices act on column vectors: `M_i * coords(a) =
/// coords(x_i a)`.
#[derive(Debug)]
pub struct QuotientAlgebra {
    gb: GroebnerBasis,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    mult: Vec<Matrix>,
    monomial_cache: Mutex<HashMap<Monomial, Matrix>>,
}

impl QuotientAlgebra {
    pub fn new(gb: GroebnerBasis) -> Result<QuotientAlgebra> {
        let basis = gb.standard_monomials()?;
        if basis.is_empty() {
            return Err(Error::NotZeroDimensional(
                "the ideal is the unit ideal (no zeros)".into(),
            ));
        }
        let index: HashMap<Monomial, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut alg = QuotientAlgebra {
            gb,
            basis,
            index,
            mult: Vec::new(),
            monomial_cache: Mutex::new(HashMap::new()),
        };
        let n = alg.ring().nvars();
        let field = alg.field();
        let d = alg.dim();
        let mut mult = Vec::with_capacity(n);
        for i in 0..n {
            let xi = Monomial::var(n, i, 1);
            let cols: Vec<Vec<Scalar>> = alg
                .basis
                .iter()
                .map(|m| alg.monomial_coords(&m.mul(&xi)))
                .collect();
            mult.push(Matrix::from_columns(field, d, &cols));
        }
        alg.mult = mult;
        Ok(alg)
    }

    /// Quotient by the ideal generated by `gens`.
    pub fn from_generators(gens: &[Polynomial], cancel: &CancelToken) -> Result<QuotientAlgebra> {
        QuotientAlgebra::new(GroebnerBasis::compute_with(gens, cancel)?)
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.gb.ring()
    }

    pub fn field(&self) -> Field {
        self.ring().field()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_polynomials(&self) -> Vec<Polynomial> {
        let one = self.field().one();
        self.basis
            .iter()
            .map(|m| Polynomial::term(self.ring(), m.clone(), one.clone()))
            .collect()
    }

    pub fn mult_matrices(&self) -> &[Matrix] {
        &self.mult
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.gb.normal_form(f)
    }

    /// Coordinates of the class of `f`.
    pub fn coords(&self, f: &Polynomial) -> Vec<Scalar> {
        let nf = self.normal_form(f);
        let mut v = vec![self.field().zero(); self.dim()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    fn monomial_coords(&self, m: &Monomial) -> Vec<Scalar> {
        let p = Polynomial::term(self.ring(), m.clone(), self.field().one());
        self.coords(&p)
    }

    pub fn from_coords(&self, v: &[Scalar]) -> Polynomial {
        Polynomial::from_terms(
            self.ring(),
            self.basis.iter().cloned().zip(v.iter().cloned()),
        )
    }

    pub fn unit(&self) -> Vec<Scalar> {
        let mut v = vec![self.field().zero(); self.dim()];
        v[0] = self.field().one();
        v
    }

    /// Matrix of multiplication by a monomial, `∏ M_i^{e_i}` (cached).
    pub fn monomial_matrix(&self, m: &Monomial) -> Matrix {
        if let Some(hit) = self.monomial_cache.lock().expect("cache lock").get(m) {
            return hit.clone();
        }
        let cols: Vec<Vec<Scalar>> = self
            .basis
            .iter()
            .map(|b| self.monomial_coords(&b.mul(m)))
            .collect();
        let mat = Matrix::from_columns(self.field(), self.dim(), &cols);
        self.monomial_cache
            .lock()
            .expect("cache lock")
            .insert(m.clone(), mat.clone());
        mat
    }

    /// Matrix of multiplication by an element given in coordinates.
    pub fn element_matrix(&self, v: &[Scalar]) -> Matrix {
        let mut acc = Matrix::zeros(self.field(), self.dim(), self.dim());
        for (c, m) in v.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc.add_scaled(c, &self.monomial_matrix(m));
            }
        }
        acc
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.element_matrix(a).mul_vec(b)
    }

    /// Coordinates of `NF(m_u m_v)` for every pair of basis monomials.
    pub fn basis_products(&self) -> Vec<Vec<Vec<Scalar>>> {
        (0..self.dim())
            .map(|u| {
                (0..self.dim())
                    .map(|v| self.monomial_coords(&self.basis[u].mul(&self.basis[v])))
                    .collect()
            })
            .collect()
    }

    /// Local summand at a rational zero `p`.
    pub fn local_factor_at(self: &Arc<Self>, point: &[Scalar]) -> Result<LocalFactor> {
        let n = self.ring().nvars();
        if point.len() != n {
            return Err(Error::InvalidInput(format!(
                "point has {} coordinates, ring has {} variables",
                point.len(),
                n
            )));
        }
        for g in self.gb.generators() {
            if !g.evaluate(point)?.is_zero() {
                return Err(Error::NotAZero(format!(
                    "a generator of the ideal does not vanish at ({})",
                    point
                        .iter()
                        .map(Scalar::to_string)
                        .collect::<Vec<_>>()
                        .join(", ")
                )));
            }
        }
        let field = self.field();
        let d = self.dim();
        let nilpotent: Vec<Matrix> = self
            .mult
            .iter()
            .zip(point)
            .map(|(m, p)| m.sub(&Matrix::identity(field, d).scale(p)).pow(d as u64))
            .collect();
        // joint generalized eigenspace: intersection of the kernels
        let mut stacked = Vec::new();
        for m in &nilpotent {
            for r in 0..d {
                stacked.push(m.row(r).to_vec());
            }
        }
        let local = Matrix::from_rows(field, stacked).kernel();
        // complement: sum of the images
        let mut image_cols = Vec::new();
        for m in &nilpotent {
            for c in 0..d {
                image_cols.push(m.col(c));
            }
        }
        let complement = Matrix::from_columns(field, d, &image_cols).image();
        if local.len() + complement.len() != d || local.is_empty() {
            return Err(Error::Internal(
                "local decomposition has the wrong dimension".into(),
            ));
        }
        let l = local.len();
        let mut all = local.clone();
        all.extend(complement);
        let change = Matrix::from_columns(field, d, &all)
            .inverse()
            .ok_or_else(|| Error::Internal("local and complementary summands overlap".into()))?;
        let projection = Matrix::from_rows(field, (0..l).map(|r| change.row(r).to_vec()).collect());
        let inclusion = Matrix::from_columns(field, d, &local);
        let local_mult = self
            .mult
            .iter()
            .map(|m| projection.mul(m).mul(&inclusion))
            .collect();
        Ok(LocalFactor {
            parent: self.clone(),
            point: point.to_vec(),
            projection,
            inclusion,
            local_mult,
        })
    }
}

/// The summand of a [`QuotientAlgebra`] supported at one rational point.
#[derive(Debug, Clone)]
pub struct LocalFactor {
    parent: Arc<QuotientAlgebra>,
    point: Vec<Scalar>,
    projection: Matrix,
    inclusion: Matrix,
    local_mult: Vec<Matrix>,
}

impl LocalFactor {
    pub fn parent(&self) -> &Arc<QuotientAlgebra> {
        &self.parent
    }

    pub fn point(&self) -> &[Scalar] {
        &self.point
    }

    /// The multiplicity of the zero.
    pub fn dim(&self) -> usize {
        self.inclusion.cols()
    }

    /// `l × d` matrix onto local coordinates.
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }

    /// `d × l` matrix whose columns span the summand.
    pub fn inclusion(&self) -> &Matrix {
        &self.inclusion
    }

    pub fn mult_matrices(&self) -> &[Matrix] {
        &self.local_mult
    }
}
