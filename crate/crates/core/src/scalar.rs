//! Exact scalars over Q and F_p, square classes and Hilbert symbols.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::factor;

/// Largest supported prime modulus; keeps products of residues inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The base field.
///
/// `Reals` and `Complex` carry rational coefficients; they only change which
/// invariants classify a form (sign of a square class and signature for
/// `Reals`, rank alone for `Complex`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Reals,
    Complex,
    Prime(u64),
}

/// An exact field element: a reduced rational or a residue in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

/// A place of Q: the real place or a prime.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Finite(BigUint),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl Field {
    /// F_p for an odd prime `p`; characteristic 2 is rejected.
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 {
            return Err(Error::InvalidField(
                "characteristic 2 is not supported".into(),
            ));
        }
        if p > MAX_PRIME {
            return Err(Error::InvalidField(format!(
                "prime {p} exceeds {MAX_PRIME}"
            )));
        }
        if !factor::is_prime_u64(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    /// Parses `q`, `r`, `c` or `fp:<p>`.
    pub fn parse(spec: &str) -> Result<Field> {
        let s = spec.trim().to_ascii_lowercase();
        match s.as_str() {
            "q" => Ok(Field::Rationals),
            "r" => Ok(Field::Reals),
            "c" => Ok(Field::Complex),
            _ => {
                let p = s
                    .strip_prefix("fp:")
                    .and_then(|n| n.trim().parse::<u64>().ok())
                    .ok_or_else(|| {
                        Error::InvalidField(format!("`{spec}`: expected one of q, r, c, fp:<p>"))
                    })?;
                Field::prime(p)
            }
        }
    }

    /// The spec string accepted by [`Field::parse`].
    pub fn spec(&self) -> String {
        match self {
            Field::Rationals => "q".into(),
            Field::Reals => "r".into(),
            Field::Complex => "c".into(),
            Field::Prime(p) => format!("fp:{p}"),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            _ => 0,
        }
    }

    /// True when elements are rationals (Q, and the R/C readings of Q).
    pub fn has_rational_elements(&self) -> bool {
        !matches!(self, Field::Prime(_))
    }

    /// Whether the two fields share element arithmetic.
    pub fn same_arithmetic(&self, other: &Field) -> bool {
        match (self, other) {
            (Field::Prime(p), Field::Prime(q)) => p == q,
            (Field::Prime(_), _) | (_, Field::Prime(_)) => false,
            _ => true,
        }
    }

    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (Field::Prime(p), Scalar::Modular { modulus, .. }) => p == modulus,
            (Field::Prime(_), _) | (_, Scalar::Modular { .. }) => false,
            _ => true,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Modular {
                value: n.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
            _ => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Prime(p) => {
                let m = BigInt::from(*p);
                let r = n.mod_floor(&m).to_u64().expect("residue fits u64");
                Scalar::Modular {
                    value: r,
                    modulus: *p,
                }
            }
            _ => Scalar::Rational(BigRational::from_integer(n.clone())),
        }
    }

    /// Maps a rational into this field; fails over F_p when p divides the
    /// denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self {
            Field::Prime(_) => {
                let num = self.from_bigint(q.numer());
                let den = self.from_bigint(q.denom());
                let inv = den.inv().ok_or_else(|| {
                    Error::InvalidInput(format!("denominator of {q} vanishes in {}", self))
                })?;
                Ok(num * inv)
            }
            _ => Ok(Scalar::Rational(q.clone())),
        }
    }

    /// Parses a decimal integer or fraction like `-3/4`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let t = text.trim().replace('\u{2212}', "-");
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t.as_str(), "1"),
        };
        let parse_int = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|_| Error::InvalidInput(format!("`{text}` is not a scalar literal")))
        };
        let n = parse_int(num)?;
        let d = parse_int(den)?;
        if d.is_zero() {
            return Err(Error::InvalidInput(format!(
                "`{text}` has zero denominator"
            )));
        }
        self.from_rational(&BigRational::new(n, d))
    }

    /// Least positive quadratic non-residue (F_p only).
    pub fn least_nonresidue(&self) -> Option<u64> {
        match self {
            Field::Prime(p) => (2..*p).find(|&a| legendre_u64(a, *p) == -1),
            _ => None,
        }
    }

    /// Canonical representative of the square class of `a`.
    ///
    /// Over Q: the signed squarefree integer. Over the R reading: the sign.
    /// Over the C reading: 1. Over F_p: 1 or the least non-residue.
    pub fn square_class(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::ZeroSquareClass);
        }
        self.check(a)?;
        match (self, a) {
            (Field::Prime(p), Scalar::Modular { value, .. }) => {
                if legendre_u64(*value, *p) == 1 {
                    Ok(self.one())
                } else {
                    Ok(self.from_i64(self.least_nonresidue().expect("odd prime") as i64))
                }
            }
            (Field::Complex, _) => Ok(self.one()),
            (Field::Reals, Scalar::Rational(q)) => {
                Ok(self.from_i64(if q.is_negative() { -1 } else { 1 }))
            }
            (_, Scalar::Rational(q)) => {
                let prod = q.numer().magnitude() * q.denom().magnitude();
                let sf = factor::squarefree_part(&prod)?;
                let sign = if q.is_negative() {
                    Sign::Minus
                } else {
                    Sign::Plus
                };
                Ok(Scalar::Rational(BigRational::from_integer(
                    BigInt::from_biguint(sign, sf),
                )))
            }
            _ => unreachable!("checked by Field::check"),
        }
    }

    /// Like [`Field::square_class`], but over Q a composite cofactor that
    /// resists a short factoring attempt is kept instead of reported. The
    /// flag is `false` in that case: the value is in the right square class
    /// but is not the canonical representative.
    pub fn square_class_bounded(&self, a: &Scalar) -> Result<(Scalar, bool)> {
        match (self, a) {
            (Field::Rationals, Scalar::Rational(q)) if !q.is_zero() => {
                let prod = q.numer().magnitude() * q.denom().magnitude();
                let (sf, exact) = factor::squarefree_part_bounded(&prod)?;
                let sign = if q.is_negative() {
                    Sign::Minus
                } else {
                    Sign::Plus
                };
                Ok((
                    Scalar::Rational(BigRational::from_integer(BigInt::from_biguint(sign, sf))),
                    exact,
                ))
            }
            _ => Ok((self.square_class(a)?, true)),
        }
    }

    /// Whether two nonzero elements lie in the same square class. Over Q
    /// this needs no factorization.
    pub fn same_square_class(&self, a: &Scalar, b: &Scalar) -> Result<bool> {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rational(x), Scalar::Rational(y)) => {
                if x.is_zero() || y.is_zero() {
                    return Err(Error::ZeroSquareClass);
                }
                let r = x * y;
                if r.is_negative() {
                    return Ok(false);
                }
                let n = r.numer().magnitude() * r.denom().magnitude();
                let root = n.sqrt();
                Ok(&root * &root == n)
            }
            _ => Ok(self.square_class(a)? == self.square_class(b)?),
        }
    }

    /// Square class of a product of two canonical representatives, without
    /// refactoring.
    pub fn square_class_product(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        match (self, a, b) {
            (Field::Rationals, Scalar::Rational(x), Scalar::Rational(y))
                if x.is_integer() && y.is_integer() =>
            {
                let g = x.numer().gcd(y.numer());
                if g.is_zero() {
                    return Err(Error::ZeroSquareClass);
                }
                let v = (x.numer() / &g) * (y.numer() / &g);
                Ok(Scalar::Rational(BigRational::from_integer(v)))
            }
            _ => self.square_class(&(a.clone() * b.clone())),
        }
    }

    /// Whether a nonzero `a` is a square in the field.
    pub fn is_square(&self, a: &Scalar) -> Result<bool> {
        Ok(self.square_class(a)?.is_one())
    }

    /// A square root inside the field of coefficients, if one exists.
    /// Over the R and C readings only rational roots are found.
    pub fn sqrt(&self, a: &Scalar) -> Option<Scalar> {
        match a {
            Scalar::Rational(q) => {
                if q.is_negative() {
                    return None;
                }
                let n = q.numer().sqrt();
                let d = q.denom().sqrt();
                (&n * &n == *q.numer() && &d * &d == *q.denom())
                    .then(|| Scalar::Rational(BigRational::new(n, d)))
            }
            Scalar::Modular { value, modulus } => {
                tonelli_shanks(*value, *modulus).map(|r| Scalar::Modular {
                    value: r,
                    modulus: *modulus,
                })
            }
        }
    }

    /// Sign of a rational element; `None` over F_p.
    pub fn sign(&self, a: &Scalar) -> Option<i8> {
        match a {
            Scalar::Rational(q) => Some(if q.is_zero() {
                0
            } else if q.is_negative() {
                -1
            } else {
                1
            }),
            Scalar::Modular { .. } => None,
        }
    }

    pub fn check(&self, a: &Scalar) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!(
                "{a} is not an element of {self}"
            )))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Reals => write!(f, "R (via Q)"),
            Field::Complex => write!(f, "C (via Q)"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre_u64(a, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p)
        .find(|&z| legendre_u64(z, p) == -1)
        .expect("odd prime");
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    Some(r)
}

/// Legendre symbol by Euler's criterion; `p` an odd prime below 2^31.
fn legendre_u64(a: u64, p: u64) -> i8 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p` of any size.
fn legendre_big(a: &BigInt, p: &BigUint) -> i8 {
    let pi = BigInt::from(p.clone());
    let r = a.mod_floor(&pi).to_biguint().expect("non-negative residue");
    if r.is_zero() {
        return 0;
    }
    let e = (p - 1u32) >> 1;
    if r.modpow(&e, p).is_one() {
        1
    } else {
        -1
    }
}

fn valuation(n: &BigInt, p: &BigUint) -> (u32, BigInt) {
    let pi = BigInt::from(p.clone());
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pi);
        if !r.is_zero() {
            break;
        }
        n = q;
        v += 1;
    }
    (v, n)
}

/// Hilbert symbol `(a, b)_v` of nonzero rationals.
pub fn hilbert_symbol(a: &Scalar, b: &Scalar, place: &Place) -> Result<i8> {
    let (x, y) = match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => (x, y),
        _ => {
            return Err(Error::FieldMismatch(
                "Hilbert symbols need rationals".into(),
            ))
        }
    };
    if x.is_zero() || y.is_zero() {
        return Err(Error::ZeroSquareClass);
    }
    // a/b and a*b have the same square class.
    let a_int = x.numer() * x.denom();
    let b_int = y.numer() * y.denom();
    match place {
        Place::Real => Ok(if a_int.is_negative() && b_int.is_negative() {
            -1
        } else {
            1
        }),
        Place::Finite(p) => {
            let two = BigUint::from(2u32);
            let (alpha, u) = valuation(&a_int, p);
            let (beta, v) = valuation(&b_int, p);
            if *p == two {
                let m8 = BigInt::from(8);
                let ur = u.mod_floor(&m8).to_u64().expect("small");
                let vr = v.mod_floor(&m8).to_u64().expect("small");
                let eps = |t: u64| ((t - 1) / 2) % 2;
                let omega = |t: u64| ((t * t - 1) / 8) % 2;
                let e =
                    eps(ur) * eps(vr) + u64::from(alpha) * omega(vr) + u64::from(beta) * omega(ur);
                Ok(if e % 2 == 0 { 1 } else { -1 })
            } else {
                let eps_p = ((p - 1u32) >> 1u32).is_odd();
                let mut s: i8 = if eps_p && (alpha * beta) % 2 == 1 {
                    -1
                } else {
                    1
                };
                if beta % 2 == 1 {
                    s *= legendre_big(&u, p);
                }
                if alpha % 2 == 1 {
                    s *= legendre_big(&v, p);
                }
                Ok(s)
            }
        }
    }
}

impl Scalar {
    pub fn rational(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// The additive identity of the same field.
    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::zero()),
            Scalar::Modular { modulus, .. } => Scalar::Modular {
                value: 0,
                modulus: *modulus,
            },
        }
    }

    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => Scalar::Rational(BigRational::one()),
            Scalar::Modular { modulus, .. } => Scalar::Modular {
                value: 1,
                modulus: *modulus,
            },
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(num_traits::pow(q.clone(), e as usize)),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(*value, e as u64, *modulus),
                modulus: *modulus,
            },
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Modular { .. } => None,
        }
    }

    /// Order used to list square-class representatives: by absolute value
    /// (residue over F_p), positive before negative.
    pub fn cmp_canonical(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a
                .abs()
                .cmp(&b.abs())
                .then_with(|| a.is_negative().cmp(&b.is_negative())),
            (Scalar::Modular { value: a, .. }, Scalar::Modular { value: b, .. }) => a.cmp(b),
            (Scalar::Rational(_), _) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }

    /// Plain ASCII rendering used by JSON output and round-tripping.
    pub fn to_ascii(&self) -> String {
        self.to_string()
    }

    fn mismatch(&self, other: &Scalar) -> ! {
        panic!("scalar field mismatch: {self:?} vs {other:?}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            (
                Scalar::Modular { value, modulus },
                Scalar::Modular {
                    value: b,
                    modulus: m,
                },
            ) if modulus == m => *value = (*value + b) % *modulus,
            _ => self.mismatch(rhs),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a -= b,
            (
                Scalar::Modular { value, modulus },
                Scalar::Modular {
                    value: b,
                    modulus: m,
                },
            ) if modulus == m => *value = (*value + *modulus - b) % *modulus,
            _ => self.mismatch(rhs),
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a *= b,
            (
                Scalar::Modular { value, modulus },
                Scalar::Modular {
                    value: b,
                    modulus: m,
                },
            ) if modulus == m => *value = (*value * b) % *modulus,
            _ => self.mismatch(rhs),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus,
            },
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $assign:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(mut self, rhs: Scalar) -> Scalar {
                self.$assign(&rhs);
                self
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(mut self, rhs: &Scalar) -> Scalar {
                self.$assign(rhs);
                self
            }
        }
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                let mut out = self.clone();
                out.$assign(rhs);
                out
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                let mut out = self.clone();
                out.$assign(&rhs);
                out
            }
        }
    };
}

binop!(Add, add, add_assign);
binop!(Sub, sub, sub_assign);
binop!(Mul, mul, mul_assign);
