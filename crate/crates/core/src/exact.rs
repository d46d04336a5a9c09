//! Exact number tower: arbitrary-precision integers, rationals, quadratic
//! extension elements `u + v*sqrt(D)`, and univariate rational polynomials.
//!
//! Everything here is exact; there is no floating point anywhere in the crate.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(n: i64) -> Integer {
    Integer::from(n)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Integer::from(n), Integer::from(d))
}

/// Coefficient ring abstraction shared by series and quaternions.
///
/// The ring is not assumed commutative (quaternion coefficients use it too);
/// callers that need a left/right distinction must pick the operand order
/// themselves. `inv` returns `None` when the element is not a unit.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
}

impl Coeff for Rational {
    fn zero() -> Self {
        rat(0, 1)
    }
    fn one() -> Self {
        rat(1, 1)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

fn is_square_int(n: &Integer) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

/// True when `d` is the square of a rational number.
pub fn is_square_rational(d: &Rational) -> bool {
    !d.is_negative() && is_square_int(d.numer()) && is_square_int(d.denom())
}

/// Element `u + v*sqrt(d)` of a quadratic extension of the rationals.
///
/// The radicand travels with the element. Elements with `v = 0` are plain
/// rationals and combine with any radicand; elements with `v != 0` only
/// combine when their radicands agree.
#[derive(Debug, Clone)]
pub struct QuadExtElem {
    u: Rational,
    v: Rational,
    d: Rational,
}

impl QuadExtElem {
    /// Builds `u + v*sqrt(d)`. Rejects radicands that are squares of
    /// rationals: `sqrt(d)` must be irrational for the two coordinates to
    /// be independent.
    pub fn new(u: Rational, v: Rational, d: Rational) -> Result<Self> {
        if !Zero::is_zero(&v) && is_square_rational(&d) {
            return Err(Error::SquareRadicand(d.to_string()));
        }
        Ok(QuadExtElem { u, v, d })
    }

    pub fn rational(u: Rational) -> Self {
        QuadExtElem {
            u,
            v: rat(0, 1),
            d: rat(0, 1),
        }
    }

    /// `sqrt(d)` itself.
    pub fn sqrt_of(d: Rational) -> Result<Self> {
        QuadExtElem::new(rat(0, 1), rat(1, 1), d)
    }

    pub fn u(&self) -> &Rational {
        &self.u
    }

    pub fn v(&self) -> &Rational {
        &self.v
    }

    pub fn radicand(&self) -> &Rational {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        Zero::is_zero(&self.v)
    }

    /// The rational value, when the irrational coordinate vanishes.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.u)
        } else {
            None
        }
    }

    fn joint_radicand(&self, rhs: &Self) -> Result<Rational> {
        if Zero::is_zero(&self.v) {
            Ok(rhs.d.clone())
        } else if Zero::is_zero(&rhs.v) || self.d == rhs.d {
            Ok(self.d.clone())
        } else {
            Err(Error::IncompatibleRadicands(
                self.d.to_string(),
                rhs.d.to_string(),
            ))
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        let d = self.joint_radicand(rhs)?;
        Ok(QuadExtElem {
            u: &self.u + &rhs.u,
            v: &self.v + &rhs.v,
            d,
        })
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        let d = self.joint_radicand(rhs)?;
        Ok(QuadExtElem {
            u: &self.u - &rhs.u,
            v: &self.v - &rhs.v,
            d,
        })
    }

    /// `(u1 + v1 s)(u2 + v2 s) = u1 u2 + v1 v2 D + (u1 v2 + v1 u2) s`.
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let d = self.joint_radicand(rhs)?;
        Ok(QuadExtElem {
            u: &self.u * &rhs.u + &self.v * &rhs.v * &d,
            v: &self.u * &rhs.v + &self.v * &rhs.u,
            d,
        })
    }

    pub fn negated(&self) -> Self {
        QuadExtElem {
            u: -&self.u,
            v: -&self.v,
            d: self.d.clone(),
        }
    }

    pub fn conjugate(&self) -> Self {
        QuadExtElem {
            u: self.u.clone(),
            v: -&self.v,
            d: self.d.clone(),
        }
    }

    /// Field norm `u^2 - v^2 D`.
    pub fn norm(&self) -> Rational {
        &self.u * &self.u - &self.v * &self.v * &self.d
    }

    /// Inverse via the conjugate over the norm.
    pub fn checked_inv(&self) -> Result<Self> {
        if Coeff::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        // norm is nonzero: sqrt(d) irrational, so u^2 = v^2 d forces u = v = 0
        Ok(QuadExtElem {
            u: &self.u / &n,
            v: -&self.v / &n,
            d: self.d.clone(),
        })
    }

    /// Integer power, negative exponents via the inverse.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.checked_inv()? } else { self.clone() };
        let mut acc = QuadExtElem::rational(rat(1, 1));
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.checked_mul(&sq)?;
            }
        }
        Ok(acc)
    }
}

impl PartialEq for QuadExtElem {
    fn eq(&self, other: &Self) -> bool {
        self.u == other.u
            && self.v == other.v
            && (Zero::is_zero(&self.v) || self.d == other.d)
    }
}

impl fmt::Display for QuadExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.v) {
            write!(f, "{}", self.u)
        } else {
            write!(f, "{} + {}*sqrt({})", self.u, self.v, self.d)
        }
    }
}

impl Coeff for QuadExtElem {
    fn zero() -> Self {
        QuadExtElem::rational(rat(0, 1))
    }
    fn one() -> Self {
        QuadExtElem::rational(rat(1, 1))
    }
    fn from_rational(r: &Rational) -> Self {
        QuadExtElem::rational(r.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.u) && Zero::is_zero(&self.v)
    }
    fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("mixed radicands")
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("mixed radicands")
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("mixed radicands")
    }
    fn neg(&self) -> Self {
        self.negated()
    }
    fn inv(&self) -> Option<Self> {
        self.checked_inv().ok()
    }
}

/// Univariate polynomial with rational coefficients, ascending degree.
/// The zero polynomial is the empty coefficient list.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| rat(c, 1)).collect())
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Polynomial::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = rat(0, 1);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}*x", c)?,
                _ => write!(f, "{}*x^{}", c, k)?,
            }
        }
        Ok(())
    }
}

impl Coeff for Polynomial {
    fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }
    fn one() -> Self {
        Polynomial::constant(rat(1, 1))
    }
    fn from_rational(r: &Rational) -> Self {
        Polynomial::constant(r.clone())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![rat(0, 1); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            out[k] += c;
        }
        Polynomial::new(out)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Coeff::add(self, &Coeff::neg(rhs))
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Coeff::zero();
        }
        let mut out = vec![rat(0, 1); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
    fn neg(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.coeffs.len() == 1 {
            Some(Polynomial::constant(self.coeffs[0].recip()))
        } else {
            None
        }
    }
}

/// Free-function aliases for the operations of this module.
pub fn quad_mul(x: &QuadExtElem, y: &QuadExtElem) -> Result<QuadExtElem> {
    x.checked_mul(y)
}

pub fn quad_inv(x: &QuadExtElem) -> Result<QuadExtElem> {
    x.checked_inv()
}

pub fn poly_eval(p: &Polynomial, x: &Rational) -> Rational {
    p.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha() -> QuadExtElem {
        QuadExtElem::new(rat(1, 2), rat(1, 2), rat(5, 1)).unwrap()
    }

    fn beta() -> QuadExtElem {
        QuadExtElem::new(rat(1, 2), rat(-1, 2), rat(5, 1)).unwrap()
    }

    #[test]
    fn alpha_times_beta_is_minus_one() {
        let p = quad_mul(&alpha(), &beta()).unwrap();
        assert_eq!(p, QuadExtElem::rational(rat(-1, 1)));
    }

    #[test]
    fn multiplicative_identity() {
        let one = QuadExtElem::rational(rat(1, 1));
        assert_eq!(quad_mul(&alpha(), &one).unwrap(), alpha());
    }

    #[test]
    fn square_of_one_plus_sqrt5() {
        let x = QuadExtElem::new(rat(1, 1), rat(1, 1), rat(5, 1)).unwrap();
        let sq = quad_mul(&x, &x).unwrap();
        assert_eq!(sq, QuadExtElem::new(rat(6, 1), rat(2, 1), rat(5, 1)).unwrap());
    }

    #[test]
    fn inverse_of_sqrt5() {
        let s = QuadExtElem::sqrt_of(rat(5, 1)).unwrap();
        assert_eq!(
            quad_inv(&s).unwrap(),
            QuadExtElem::new(rat(0, 1), rat(1, 5), rat(5, 1)).unwrap()
        );
    }

    #[test]
    fn inverse_of_one() {
        let one = QuadExtElem::rational(rat(1, 1));
        assert_eq!(quad_inv(&one).unwrap(), one);
    }

    #[test]
    fn inverse_of_golden_ratio() {
        // alpha * (-beta) = 1 since alpha*beta = -1
        assert_eq!(quad_inv(&alpha()).unwrap(), beta().negated());
    }

    #[test]
    fn inverse_of_zero_fails() {
        let z = QuadExtElem::rational(rat(0, 1));
        assert_eq!(quad_inv(&z), Err(Error::DivisionByZero));
    }

    #[test]
    fn mismatched_radicands_rejected() {
        let a = QuadExtElem::sqrt_of(rat(5, 1)).unwrap();
        let b = QuadExtElem::sqrt_of(rat(2, 1)).unwrap();
        assert!(quad_mul(&a, &b).is_err());
    }

    #[test]
    fn square_radicand_rejected() {
        assert!(QuadExtElem::new(rat(0, 1), rat(1, 1), rat(9, 4)).is_err());
        assert!(QuadExtElem::new(rat(0, 1), rat(1, 1), rat(-4, 1)).is_ok());
    }

    #[test]
    fn poly_eval_examples() {
        assert_eq!(poly_eval(&Polynomial::x(), &rat(1, 1)), rat(1, 1));
        assert_eq!(poly_eval(&Coeff::zero(), &rat(7, 3)), rat(0, 1));
        assert_eq!(poly_eval(&Polynomial::from_i64(&[3, 2]), &rat(1, 2)), rat(4, 1));
    }

    #[test]
    fn pow_negative_exponent() {
        let a = alpha();
        let p = a.pow(-3).unwrap();
        assert_eq!(quad_mul(&p, &a.pow(3).unwrap()).unwrap(), QuadExtElem::one());
    }
}
