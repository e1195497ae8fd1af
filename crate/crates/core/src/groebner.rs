//! Buchberger's algorithm in degrevlex.
//!
//! Pairs are chosen by the normal strategy (smallest lcm, ties broken by the
//! first index). Buchberger's product and chain criteria prune pairs. Over Q
//! reduction is fraction-free on primitive integer polynomials; the final
//! reduced basis is made monic.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cancel::CancelToken;
use crate::error::{Error, Result};
use crate::poly::{same_ring, Monomial, Polynomial, Ring};
use crate::scalar::Scalar;

/// A reduced Gröbner basis, sorted by ascending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
}

fn is_rational(p: &Polynomial) -> bool {
    p.leading_coefficient()
        .is_some_and(|c| matches!(c, Scalar::Rational(_)))
}

/// Scales a rational polynomial to a primitive integer polynomial with
/// positive leading coefficient; over F_p makes it monic.
fn normalize(p: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    if !is_rational(p) {
        return p.monic();
    }
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for (_, c) in p.terms() {
        let q = c.as_rational().expect("rational coefficient");
        den = den.lcm(q.denom());
        num = num.gcd(q.numer());
    }
    let mut factor = BigRational::new(den, num);
    if p.leading_coefficient()
        .and_then(Scalar::as_rational)
        .is_some_and(|c| c.is_negative())
    {
        factor = -factor;
    }
    if factor.is_one() {
        p.clone()
    } else {
        p.scale(&Scalar::Rational(factor))
    }
}

/// Common integer content of two integer polynomials.
fn joint_content(a: &Polynomial, b: &Polynomial) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in a.terms().chain(b.terms()) {
        g = g.gcd(c.as_rational().expect("rational").numer());
        if g.is_one() {
            break;
        }
    }
    g
}

fn find_reducer<'a>(m: &Monomial, basis: &'a [Polynomial]) -> Option<&'a Polynomial> {
    basis
        .iter()
        .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(m)))
}

/// Full reduction of `f` modulo `basis`. Over Q the result is primitive
/// (defined up to a positive scalar); over F_p it is the exact remainder.
fn reduce(f: &Polynomial, basis: &[Polynomial], cancel: &CancelToken) -> Result<Polynomial> {
    let ring = f.ring().clone();
    let rational = is_rational(f);
    let mut p = if rational { normalize(f) } else { f.clone() };
    let mut r = Polynomial::zero(&ring);
    let mut steps = 0u32;
    while let Some((m, c)) = p.leading_term() {
        let (m, c) = (m.clone(), c.clone());
        steps += 1;
        if steps.is_multiple_of(64) {
            cancel.check()?;
        }
        match find_reducer(&m, basis) {
            Some(g) => {
                let (lm, lc) = g.leading_term().expect("nonzero basis element");
                let q = lm.quotient_of(&m).expect("divides");
                if rational {
                    // p <- lc(g) p - c x^q g, keeping integer coefficients
                    p = p.scale(lc);
                    r = r.scale(lc);
                    p.add_scaled_shifted(&-&c, &q, g);
                    let cont = joint_content(&p, &r);
                    if !cont.is_zero() && !cont.is_one() {
                        let inv = Scalar::Rational(BigRational::new(BigInt::one(), cont));
                        p = p.scale(&inv);
                        r = r.scale(&inv);
                    }
                } else {
                    let coeff = &c * &lc.inv().expect("nonzero");
                    p.add_scaled_shifted(&-&coeff, &q, g);
                }
            }
            None => {
                let t = Polynomial::term(&ring, m, c.clone());
                p = p.sub(&t);
                r = r.add(&t);
            }
        }
    }
    Ok(if rational { normalize(&r) } else { r })
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (lf, cf) = f.leading_term().expect("nonzero");
    let (lg, cg) = g.leading_term().expect("nonzero");
    let l = lf.lcm(lg);
    let a = f.mul_term(&lf.quotient_of(&l).expect("divides"), cg);
    let b = g.mul_term(&lg.quotient_of(&l).expect("divides"), cf);
    a.sub(&b)
}

impl GroebnerBasis {
    /// Computes the reduced Gröbner basis of the ideal spanned by `gens`.
    pub fn compute(gens: &[Polynomial]) -> Result<GroebnerBasis> {
        GroebnerBasis::compute_with(gens, &CancelToken::new())
    }

    pub fn compute_with(gens: &[Polynomial], cancel: &CancelToken) -> Result<GroebnerBasis> {
        let ring = gens
            .first()
            .ok_or_else(|| Error::InvalidInput("empty generator list".into()))?
            .ring()
            .clone();
        if gens.iter().any(|g| !same_ring(g.ring(), &ring)) {
            return Err(Error::InvalidInput(
                "generators live in different rings".into(),
            ));
        }
        let mut basis: Vec<Polynomial> = Vec::new();
        for g in gens {
            let r = reduce(g, &basis, cancel)?;
            if !r.is_zero() {
                basis.push(r);
            }
        }
        // pending pairs keyed by (lcm, i, j) so iteration follows the normal strategy
        let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();
        let lm = |p: &Polynomial| p.leading_monomial().expect("nonzero").clone();
        for j in 0..basis.len() {
            for i in 0..j {
                pairs.insert((lm(&basis[i]).lcm(&lm(&basis[j])), i, j));
            }
        }
        while let Some(key) = pairs.pop_first() {
            cancel.check()?;
            let (l, i, j) = key;
            let (li, lj) = (lm(&basis[i]), lm(&basis[j]));
            if li.is_coprime(&lj) {
                continue;
            }
            let pending = |a: usize, b: usize, pairs: &BTreeSet<(Monomial, usize, usize)>| {
                let (a, b) = if a < b { (a, b) } else { (b, a) };
                pairs.contains(&(lm(&basis[a]).lcm(&lm(&basis[b])), a, b))
            };
            let chain = (0..basis.len()).any(|k| {
                k != i
                    && k != j
                    && lm(&basis[k]).divides(&l)
                    && !pending(i, k, &pairs)
                    && !pending(j, k, &pairs)
            });
            if chain {
                continue;
            }
            let s = s_polynomial(&basis[i], &basis[j]);
            let r = reduce(&s, &basis, cancel)?;
            if r.is_zero() {
                continue;
            }
            let new_lm = lm(&r);
            let idx = basis.len();
            basis.push(r);
            for (k, g) in basis[..idx].iter().enumerate() {
                pairs.insert((lm(g).lcm(&new_lm), k, idx));
            }
        }
        let reduced = interreduce(basis, cancel)?;
        Ok(GroebnerBasis {
            ring,
            generators: reduced,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.generators
            .iter()
            .filter_map(Polynomial::leading_monomial)
            .collect()
    }

    /// True if the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.generators
            .iter()
            .any(|g| g.leading_monomial().is_some_and(Monomial::is_one))
    }

    /// Remainder of `f` on division by the basis (unique since reduced).
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let ring = f.ring().clone();
        let mut p = f.clone();
        let mut r = Polynomial::zero(&ring);
        while let Some((m, c)) = p.leading_term() {
            let (m, c) = (m.clone(), c.clone());
            match find_reducer(&m, &self.generators) {
                Some(g) => {
                    // generators are monic
                    let q = g
                        .leading_monomial()
                        .expect("nonzero")
                        .quotient_of(&m)
                        .expect("divides");
                    p.add_scaled_shifted(&-&c, &q, g);
                }
                None => {
                    p.add_term(m.clone(), &-&c);
                    r.add_term(m, &c);
                }
            }
        }
        r
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.leading_monomials().iter().any(|lm| lm.divides(m))
    }

    /// Whether `k[x]/I` is finite-dimensional: every variable has a pure
    /// power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        let lms = self.leading_monomials();
        (0..self.ring.nvars()).all(|i| {
            lms.iter().any(|m| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .all(|(j, &e)| if j == i { e > 0 } else { e == 0 })
            })
        }) || self.is_unit_ideal()
    }

    /// Standard monomials in ascending degrevlex order.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>> {
        if !self.is_zero_dimensional() {
            return Err(Error::NotZeroDimensional(
                "the staircase is infinite".into(),
            ));
        }
        let n = self.ring.nvars();
        let one = Monomial::one(n);
        if !self.is_standard(&one) {
            return Ok(Vec::new());
        }
        let mut seen: BTreeSet<Monomial> = BTreeSet::new();
        let mut frontier = vec![one.clone()];
        seen.insert(one);
        while let Some(m) = frontier.pop() {
            for i in 0..n {
                let next = m.mul(&Monomial::var(n, i, 1));
                if !seen.contains(&next) && self.is_standard(&next) {
                    seen.insert(next.clone());
                    frontier.push(next);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Re-checks that every S-polynomial reduces to zero.
    pub fn verify(&self) -> bool {
        let g = &self.generators;
        for j in 0..g.len() {
            for i in 0..j {
                if !self.normal_form(&s_polynomial(&g[i], &g[j])).is_zero() {
                    return false;
                }
            }
        }
        g.iter()
            .all(|p| p.leading_coefficient().is_some_and(Scalar::is_one))
    }
}

fn interreduce(mut basis: Vec<Polynomial>, cancel: &CancelToken) -> Result<Vec<Polynomial>> {
    basis.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().expect("nonzero").clone();
        if !minimal
            .iter()
            .any(|h| h.leading_monomial().expect("nonzero").divides(&lm))
        {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let r = reduce(&minimal[i], &others, cancel)?;
        out.push(r.monic());
    }
    out.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    Ok(out)
}
