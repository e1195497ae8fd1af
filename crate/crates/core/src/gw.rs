//! Symmetric bilinear forms and the Grothendieck–Witt ring.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::factor;
use crate::linalg::Matrix;
use crate::scalar::{hilbert_symbol, Field, Place, Scalar};

/// A symmetric Gram matrix over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricForm {
    gram: Matrix,
}

/// Result of congruence diagonalization: `D = Cᵀ G C`.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub diagonal: Vec<Scalar>,
    pub certificate: Matrix,
}

impl SymmetricForm {
    pub fn new(gram: Matrix) -> Result<SymmetricForm> {
        if !gram.is_symmetric() {
            return Err(Error::InvalidInput("Gram matrix is not symmetric".into()));
        }
        if gram.field().characteristic() == 2 {
            return Err(Error::InvalidField("characteristic 2".into()));
        }
        Ok(SymmetricForm { gram })
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn field(&self) -> Field {
        self.gram.field()
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> Scalar {
        self.gram.det()
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.det().is_zero()
    }

    /// Symmetric Gaussian elimination. A zero pivot is replaced by a later
    /// nonzero diagonal entry, or else made nonzero by `e_i <- e_i + e_j`.
    pub fn diagonalize(&self) -> Result<Diagonalization> {
        let field = self.field();
        let n = self.dim();
        let mut g = self.gram.clone();
        let mut c = Matrix::identity(field, n);
        for i in 0..n {
            if g[(i, i)].is_zero() {
                if let Some(j) = (i + 1..n).find(|&j| !g[(j, j)].is_zero()) {
                    g.swap_rows(i, j);
                    g.swap_cols(i, j);
                    c.swap_cols(i, j);
                } else if let Some(j) = (i + 1..n).find(|&j| !g[(i, j)].is_zero()) {
                    add_basis_vector(&mut g, &mut c, i, j, &field.one());
                } else {
                    return Err(Error::DegenerateForm);
                }
            }
            let pivot_inv = g[(i, i)].inv().expect("nonzero pivot");
            for j in i + 1..n {
                if g[(i, j)].is_zero() {
                    continue;
                }
                let factor = -(&g[(i, j)] * &pivot_inv);
                add_basis_vector(&mut g, &mut c, j, i, &factor);
            }
        }
        Ok(Diagonalization {
            diagonal: (0..n).map(|i| g[(i, i)].clone()).collect(),
            certificate: c,
        })
    }

    pub fn to_gw(&self) -> Result<GWElement> {
        GWElement::from_diagonal(self.field(), &self.diagonalize()?.diagonal)
    }
}

/// `e_target <- e_target + factor * e_source` applied as a congruence.
fn add_basis_vector(g: &mut Matrix, c: &mut Matrix, target: usize, source: usize, factor: &Scalar) {
    let n = g.rows();
    for k in 0..n {
        let v = &g[(source, k)] * factor;
        g[(target, k)] += &v;
    }
    for k in 0..n {
        let v = &g[(k, source)] * factor;
        g[(k, target)] += &v;
    }
    for k in 0..n {
        let v = &c[(k, source)] * factor;
        c[(k, target)] += &v;
    }
}

impl Diagonalization {
    /// Checks `D = Cᵀ G C` exactly.
    pub fn verify(&self, form: &SymmetricForm) -> bool {
        let d = self.certificate.congruent(form.gram());
        let n = d.rows();
        (0..n).all(|i| {
            (0..n).all(|j| {
                if i == j {
                    d[(i, j)] == self.diagonal[i]
                } else {
                    d[(i, j)].is_zero()
                }
            })
        }) && !self.certificate.det().is_zero()
    }
}

/// An element of GW(k) presented as a diagonal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GWElement {
    field: Field,
    diagonal: Vec<Scalar>,
    disc: Scalar,
    signature: Option<i64>,
    hasse: Option<BTreeMap<Place, i8>>,
}

impl GWElement {
    /// `⟨a_1⟩ + ... + ⟨a_n⟩`; each entry is reduced to its square class.
    pub fn from_diagonal(field: Field, entries: &[Scalar]) -> Result<GWElement> {
        let mut diagonal = Vec::with_capacity(entries.len());
        let mut exact = true;
        for a in entries {
            let (rep, ok) = field.square_class_bounded(a)?;
            exact &= ok;
            diagonal.push(rep);
        }
        diagonal.sort_by(Scalar::cmp_canonical);
        let mut disc = field.one();
        for a in &diagonal {
            disc = field.square_class_product(&disc, a)?;
        }
        let signature = match field {
            Field::Rationals | Field::Reals => Some(
                diagonal
                    .iter()
                    .map(|a| i64::from(field.sign(a).expect("rational")))
                    .sum(),
            ),
            _ => None,
        };
        let hasse = match field {
            Field::Rationals if exact => Some(hasse_invariants(&diagonal)?),
            _ => None,
        };
        Ok(GWElement {
            field,
            diagonal,
            disc,
            signature,
            hasse,
        })
    }

    pub fn zero(field: Field) -> GWElement {
        GWElement::from_diagonal(field, &[]).expect("empty form")
    }

    /// The rank-one class `⟨a⟩`.
    pub fn class(field: Field, a: &Scalar) -> Result<GWElement> {
        GWElement::from_diagonal(field, std::slice::from_ref(a))
    }

    /// `H = ⟨1⟩ + ⟨−1⟩`.
    pub fn hyperbolic(field: Field) -> GWElement {
        GWElement::from_diagonal(field, &[field.one(), field.from_i64(-1)]).expect("units")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[Scalar] {
        &self.diagonal
    }

    /// Square class of the determinant.
    pub fn disc(&self) -> &Scalar {
        &self.disc
    }

    pub fn signature(&self) -> Option<i64> {
        self.signature
    }

    /// Hasse invariants at the real place, 2, and the primes dividing an
    /// entry; the invariant is 1 at every other place. Over Q this is `None`
    /// only when an entry could not be factored, in which case the diagonal
    /// holds valid but non-canonical square-class representatives.
    pub fn hasse(&self) -> Option<&BTreeMap<Place, i8>> {
        self.hasse.as_ref()
    }

    fn same_field(&self, other: &GWElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field, other.field
            )))
        }
    }

    pub fn add(&self, other: &GWElement) -> Result<GWElement> {
        self.same_field(other)?;
        let mut entries = self.diagonal.clone();
        entries.extend(other.diagonal.iter().cloned());
        GWElement::from_diagonal(self.field, &entries)
    }

    pub fn mul(&self, other: &GWElement) -> Result<GWElement> {
        self.same_field(other)?;
        let mut entries = Vec::with_capacity(self.rank() * other.rank());
        for a in &self.diagonal {
            for b in &other.diagonal {
                entries.push(self.field.square_class_product(a, b)?);
            }
        }
        GWElement::from_diagonal(self.field, &entries)
    }

    /// Isometry test through a complete set of invariants for the field.
    pub fn gw_eq(&self, other: &GWElement) -> Result<bool> {
        self.same_field(other)?;
        if self.rank() != other.rank() {
            return Ok(false);
        }
        if self.diagonal == other.diagonal {
            return Ok(true);
        }
        Ok(match self.field {
            Field::Complex => true,
            Field::Reals => self.signature == other.signature,
            Field::Prime(_) => self.disc == other.disc,
            Field::Rationals => {
                if self.signature != other.signature
                    || !self.field.same_square_class(&self.disc, &other.disc)?
                {
                    return Ok(false);
                }
                let (Some(h1), Some(h2)) = (&self.hasse, &other.hasse) else {
                    return Err(Error::FactorizationLimit(
                        "rank, signature and discriminant agree; the Hasse invariant needs a factorization".into(),
                    ));
                };
                let places: BTreeSet<&Place> = h1.keys().chain(h2.keys()).collect();
                places
                    .into_iter()
                    .all(|v| h1.get(v).copied().unwrap_or(1) == h2.get(v).copied().unwrap_or(1))
            }
        })
    }

    /// A normal form: over F_p, R and C the canonical representative of the
    /// isometry class; over Q, pairs `⟨a⟩ + ⟨−a⟩` are rewritten as `H`.
    pub fn simplify(&self) -> GWElement {
        let f = self.field;
        let r = self.rank();
        let entries: Vec<Scalar> = match f {
            Field::Prime(_) => {
                let mut v = vec![f.one(); r.saturating_sub(1)];
                if r > 0 {
                    v.push(self.disc.clone());
                }
                v
            }
            Field::Complex | Field::Reals => return self.clone(),
            Field::Rationals => {
                let mut rest = self.diagonal.clone();
                let mut out = Vec::new();
                while let Some(a) = rest.pop() {
                    let neg = -&a;
                    if let Some(k) = rest.iter().position(|b| *b == neg) {
                        rest.remove(k);
                        out.push(f.one());
                        out.push(f.from_i64(-1));
                    } else {
                        out.push(a);
                    }
                }
                out
            }
        };
        GWElement::from_diagonal(f, &entries).expect("units")
    }

    /// Parses `"<a> + 2<b> + H"`; `⟨⟩` brackets and `0` are accepted.
    pub fn parse(text: &str, field: Field) -> Result<GWElement> {
        let normalized = text
            .replace('\u{27E8}', "<")
            .replace('\u{27E9}', ">")
            .replace('\u{2212}', "-");
        let trimmed = normalized.trim();
        if trimmed == "0" {
            return Ok(GWElement::zero(field));
        }
        let mut entries = Vec::new();
        let mut offset = 0;
        for piece in normalized.split('+') {
            let pos = offset + piece.len() - piece.trim_start().len();
            offset += piece.len() + 1;
            let t = piece.trim();
            if t.is_empty() {
                return Err(Error::Syntax {
                    pos,
                    msg: "empty summand".into(),
                });
            }
            let (mult, class) = match t.find(['<', 'H']) {
                Some(0) => (1usize, t),
                Some(k) => {
                    let m = t[..k].trim().trim_end_matches('*').trim();
                    let m = m.parse::<usize>().map_err(|_| Error::Syntax {
                        pos,
                        msg: format!("bad multiplicity `{m}`"),
                    })?;
                    (m, &t[k..])
                }
                None => {
                    return Err(Error::Syntax {
                        pos,
                        msg: format!("expected `<a>` or `H`, found `{t}`"),
                    })
                }
            };
            let values: Vec<Scalar> = if class == "H" {
                vec![field.one(), field.from_i64(-1)]
            } else {
                let inner = class
                    .strip_prefix('<')
                    .and_then(|s| s.strip_suffix('>'))
                    .ok_or_else(|| Error::Syntax {
                        pos,
                        msg: format!("unbalanced brackets in `{t}`"),
                    })?;
                let a = field.parse_scalar(inner).map_err(|_| Error::Syntax {
                    pos,
                    msg: format!("`{inner}` is not a scalar"),
                })?;
                if a.is_zero() {
                    return Err(Error::InvalidInput("⟨0⟩ is not a class of GW".into()));
                }
                vec![a]
            };
            for _ in 0..mult {
                entries.extend(values.iter().cloned());
            }
        }
        GWElement::from_diagonal(field, &entries)
    }

    pub fn to_json(&self) -> Value {
        let mut obj = json!({
            "rank": self.rank(),
            "disc": self.disc.to_ascii(),
            "diagonal": self.diagonal.iter().map(Scalar::to_ascii).collect::<Vec<_>>(),
        });
        if let Some(s) = self.signature {
            obj["signature"] = json!(s);
        }
        if let Some(h) = &self.hasse {
            let map: serde_json::Map<String, Value> =
                h.iter().map(|(p, s)| (p.to_string(), json!(s))).collect();
            obj["hasse"] = Value::Object(map);
        }
        obj
    }
}

fn pretty_scalar(a: &Scalar) -> String {
    a.to_string().replace('-', "\u{2212}")
}

impl fmt::Display for GWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.diagonal.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.diagonal.len() {
            let a = &self.diagonal[i];
            let run = self.diagonal[i..].iter().take_while(|b| *b == a).count();
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if run > 1 {
                write!(f, "{run}")?;
            }
            write!(f, "\u{27E8}{}\u{27E9}", pretty_scalar(a))?;
            i += run;
        }
        Ok(())
    }
}

fn hasse_invariants(diagonal: &[Scalar]) -> Result<BTreeMap<Place, i8>> {
    let mut places: BTreeSet<Place> = BTreeSet::new();
    places.insert(Place::Real);
    places.insert(Place::Finite(BigUint::from(2u32)));
    for a in diagonal {
        let q = a.as_rational().expect("rational");
        let n = q.numer().abs().to_biguint().expect("non-negative")
            * q.denom().to_biguint().expect("positive");
        for (p, _) in factor::factorize(&n)? {
            places.insert(Place::Finite(p));
        }
    }
    let mut out = BTreeMap::new();
    for v in places {
        let mut s = 1i8;
        for i in 0..diagonal.len() {
            for j in i + 1..diagonal.len() {
                s *= hilbert_symbol(&diagonal[i], &diagonal[j], &v)?;
            }
        }
        out.insert(v, s);
    }
    Ok(out)
}
