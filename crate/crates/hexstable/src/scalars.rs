//! Exact number tower: arbitrary-precision rationals, the quadratic
//! extension `Q(sqrt(d))`, its complexification, and a float fallback.
//!
//! A [`QuadScalar`] stores `a + b*sqrt(d)` with `a`, `b` rational and `d` a
//! square-free positive integer radicand (`d = 0` marks a plain rational).
//! Values from different radicands never combine silently: arithmetic on
//! incompatible radicands is a hard error. Signs are decided exactly,
//! without floating point.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive, Zero};
use std::fmt;

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

/// Errors raised by the scalar tower.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("incompatible radicands sqrt({0}) vs sqrt({1})")]
    MixedRadicands(BigInt, BigInt),
    #[error("square root leaves the quadratic field (nested radical)")]
    NestedRadical,
    #[error("square root of a negative value")]
    NegativeSqrt,
}

/// Shorthand for building a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse `p`, `-p` or `p/q` into a rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => {
            let p: BigInt = text.parse().ok()?;
            Some(Rational::from(p))
        }
    }
}

/// Split `n > 0` as `s^2 * m` with `m` square-free; returns `(s, m)`.
///
/// Trial division handles the small primes; a final integer square root
/// catches a leftover perfect square. A square factor supported on two
/// primes both above the trial bound cannot occur for the magnitudes this
/// library produces.
fn extract_square_part(n: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(n.is_positive());
    let mut rest = n.clone();
    let mut s = BigInt::from(1);
    let mut m = BigInt::from(1);
    let mut p = BigInt::from(2);
    let bound = BigInt::from(1_000_000u64);
    while &p * &p <= rest && p <= bound {
        if (&rest % &p).is_zero() {
            let mut e = 0u32;
            while (&rest % &p).is_zero() {
                rest /= &p;
                e += 1;
            }
            for _ in 0..e / 2 {
                s *= &p;
            }
            if e % 2 == 1 {
                m *= &p;
            }
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if rest > BigInt::from(1) {
        let r = rest.sqrt();
        if &r * &r == rest {
            s *= r;
        } else {
            m *= rest;
        }
    }
    (s, m)
}

/// Is `r` the square of a rational? If so return the non-negative root.
fn rational_sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let pn = r.numer().sqrt();
    let pd = r.denom().sqrt();
    if &(&pn * &pn) == r.numer() && &(&pd * &pd) == r.denom() {
        Some(Rational::new(pn, pd))
    } else {
        None
    }
}

/// Exact element `a + b*sqrt(d)` of a real quadratic field.
///
/// Invariants: `d` is zero iff `b` is zero; otherwise `d >= 2` is a
/// square-free integer, so the representation (and in particular the zero
/// test) is canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadScalar {
    a: Rational,
    b: Rational,
    d: BigInt,
}

impl QuadScalar {
    /// Plain rational element.
    pub fn from_rat(a: Rational) -> Self {
        QuadScalar { a, b: Rational::zero(), d: BigInt::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rational::from(BigInt::from(n)))
    }

    /// Build `a + b*sqrt(d)` for a rational radicand `d >= 0`.
    ///
    /// The radicand is normalized to a square-free integer: square factors
    /// move into `b` and a perfect-square radicand collapses to a rational.
    pub fn new(a: Rational, b: Rational, d: Rational) -> Result<Self, ScalarError> {
        if d.is_negative() {
            return Err(ScalarError::NegativeSqrt);
        }
        if b.is_zero() || d.is_zero() {
            return Ok(Self::from_rat(a));
        }
        // sqrt(p/q) = sqrt(p*q)/q
        let pq = d.numer() * d.denom();
        let (s, m) = extract_square_part(&pq);
        let scale = Rational::new(s, d.denom().clone());
        let b = b * scale;
        if m == BigInt::from(1) {
            Ok(Self::from_rat(a + b))
        } else {
            Ok(QuadScalar { a, b, d: m })
        }
    }

    /// The square root of a square-free positive integer.
    pub fn sqrt_of(d: i64) -> Self {
        QuadScalar::new(Rational::zero(), Rational::from(BigInt::from(1)), rat(d, 1))
            .expect("non-negative radicand")
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn radical_part(&self) -> &Rational {
        &self.b
    }

    /// Radicand of this value; zero when the value is rational.
    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational value, if this element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Radicands merge when equal or when either side is rational.
    pub fn compatible(&self, rhs: &Self) -> bool {
        self.b.is_zero() || rhs.b.is_zero() || self.d == rhs.d
    }

    fn merged_radicand(&self, rhs: &Self) -> BigInt {
        if !self.compatible(rhs) {
            panic!(
                "{}",
                ScalarError::MixedRadicands(self.d.clone(), rhs.d.clone())
            );
        }
        if self.b.is_zero() {
            rhs.d.clone()
        } else {
            self.d.clone()
        }
    }

    fn canon(a: Rational, b: Rational, d: BigInt) -> Self {
        if b.is_zero() {
            QuadScalar { a, b, d: BigInt::zero() }
        } else {
            QuadScalar { a, b, d }
        }
    }

    /// Exact sign in `{-1, 0, +1}`, decided without floating point.
    pub fn sign(&self) -> i8 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // Opposite signs: compare a^2 against b^2 d.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rational::from(self.d.clone());
        match a2.cmp(&b2d) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            Scalar::neg(self)
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        if Scalar::is_zero(self) {
            panic!("{}", ScalarError::DivisionByZero);
        }
        if self.b.is_zero() {
            return Self::from_rat(self.a.recip());
        }
        // 1/(a + b sqrt d) = (a - b sqrt d)/(a^2 - b^2 d)
        let denom = &self.a * &self.a - &self.b * &self.b * Rational::from(self.d.clone());
        debug_assert!(!denom.is_zero(), "square-free radicand admits no rational root");
        Self::canon(&self.a / &denom, -(&self.b / &denom), self.d.clone())
    }

    /// Exact square root, staying inside a single quadratic field.
    ///
    /// For rational inputs the result may introduce a fresh radicand; for
    /// irrational inputs the classical denesting `(x + y*sqrt(d))^2` is
    /// attempted and [`ScalarError::NestedRadical`] reported when the root
    /// does not lie back in `Q(sqrt(d))`.
    pub fn sqrt(&self) -> Result<Self, ScalarError> {
        match self.sign() {
            0 => return Ok(Self::from_int(0)),
            -1 => return Err(ScalarError::NegativeSqrt),
            _ => {}
        }
        if self.b.is_zero() {
            if let Some(root) = rational_sqrt_exact(&self.a) {
                return Ok(Self::from_rat(root));
            }
            return QuadScalar::new(Rational::zero(), Rational::from(BigInt::from(1)), self.a.clone());
        }
        // Want x + y sqrt(d) with x^2 + y^2 d = a and 2xy = b.
        let d = Rational::from(self.d.clone());
        let disc = &self.a * &self.a - &self.b * &self.b * &d;
        let e = match rational_sqrt_exact(&disc) {
            Some(e) => e,
            None => return Err(ScalarError::NestedRadical),
        };
        let two = rat(2, 1);
        for t in [(&self.a + &e) / &two, (&self.a - &e) / &two] {
            if let Some(x) = rational_sqrt_exact(&t) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.b / (&two * &x);
                let cand = Self::canon(x, y, self.d.clone());
                if cand.mul(&cand) == *self && cand.sign() > 0 {
                    return Ok(cand);
                }
                let neg = Scalar::neg(&cand);
                if neg.mul(&neg) == *self && neg.sign() > 0 {
                    return Ok(neg);
                }
            }
        }
        Err(ScalarError::NestedRadical)
    }

    pub fn to_f64(&self) -> f64 {
        let mut v = self.a.to_f64().unwrap_or(f64::NAN);
        if !self.b.is_zero() {
            v += self.b.to_f64().unwrap_or(f64::NAN) * self.d.to_f64().unwrap_or(f64::NAN).sqrt();
        }
        v
    }
}

fn rational_sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn format_rational(r: &Rational) -> String {
    r.to_string()
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", format_rational(&self.a));
        }
        let radical = if self.b == Rational::from(BigInt::from(1)) {
            format!("sqrt({})", self.d)
        } else if self.b == Rational::from(BigInt::from(-1)) {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", format_rational(&self.b), self.d)
        };
        if self.a.is_zero() {
            write!(f, "{radical}")
        } else if radical.starts_with('-') {
            write!(f, "{}{}", format_rational(&self.a), radical)
        } else {
            write!(f, "{}+{}", format_rational(&self.a), radical)
        }
    }
}

/// Complexification of [`QuadScalar`]: `re + im*i` with both parts in the
/// same quadratic field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadComplex {
    pub re: QuadScalar,
    pub im: QuadScalar,
}

impl QuadComplex {
    pub fn new(re: QuadScalar, im: QuadScalar) -> Self {
        QuadComplex { re, im }
    }

    pub fn from_real(re: QuadScalar) -> Self {
        QuadComplex { re, im: QuadScalar::from_int(0) }
    }

    pub fn conj(&self) -> Self {
        QuadComplex { re: self.re.clone(), im: Scalar::neg(&self.im) }
    }

    pub fn norm_sqr(&self) -> QuadScalar {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        if Scalar::is_zero(&n) {
            panic!("{}", ScalarError::DivisionByZero);
        }
        let ninv = n.inv();
        QuadComplex { re: self.re.mul(&ninv), im: Scalar::neg(&self.im).mul(&ninv) }
    }

    pub fn to_complex64(&self) -> num::complex::Complex64 {
        num::complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for QuadComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Scalar::is_zero(&self.im) {
            write!(f, "{}", self.re)
        } else if Scalar::is_zero(&self.re) {
            write!(f, "({})*i", self.im)
        } else {
            write!(f, "({})+({})*i", self.re, self.im)
        }
    }
}

/// Field operations shared by every coefficient type of the library.
///
/// Method names intentionally avoid clashing with `std::ops` so that the
/// concrete types can keep their operator impls.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn neg(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    /// Magnitude estimate used for pivot selection; must be positive
    /// exactly when the value is non-zero.
    fn magnitude(&self) -> f64;
}

/// Real scalars: exact or floating sign, square roots, complexification.
pub trait RealScalar: Scalar {
    type Complex: ComplexScalar<Real = Self>;
    fn sign(&self) -> i8;
    fn sqrt(&self) -> Result<Self, ScalarError>;
    fn complexify(&self) -> Self::Complex;
    fn to_f64(&self) -> f64;
    /// Can the two values share arithmetic? Quadratic scalars refuse to
    /// mix distinct radicands; floats always combine.
    fn field_compatible(&self, other: &Self) -> bool {
        let _ = other;
        true
    }
}

/// Complex scalars over a real subfield.
pub trait ComplexScalar: Scalar {
    type Real: RealScalar<Complex = Self>;
    fn from_real(re: &Self::Real) -> Self;
    fn imaginary_unit() -> Self;
    fn conj(&self) -> Self;
    fn re(&self) -> Self::Real;
    fn im(&self) -> Self::Real;
}

impl Scalar for QuadScalar {
    fn zero() -> Self {
        QuadScalar::from_int(0)
    }
    fn one() -> Self {
        QuadScalar::from_int(1)
    }
    fn from_i64(n: i64) -> Self {
        QuadScalar::from_int(n)
    }
    fn from_rational(r: &Rational) -> Self {
        QuadScalar::from_rat(r.clone())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn neg(&self) -> Self {
        QuadScalar { a: -self.a.clone(), b: -self.b.clone(), d: self.d.clone() }
    }
    fn add(&self, rhs: &Self) -> Self {
        let d = self.merged_radicand(rhs);
        Self::canon(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
    fn sub(&self, rhs: &Self) -> Self {
        let d = self.merged_radicand(rhs);
        Self::canon(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
    fn mul(&self, rhs: &Self) -> Self {
        let d = self.merged_radicand(rhs);
        if d.is_zero() {
            return Self::from_rat(&self.a * &rhs.a);
        }
        let dr = Rational::from(d.clone());
        let a = &self.a * &rhs.a + &self.b * &rhs.b * &dr;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Self::canon(a, b, d)
    }
    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }
    fn magnitude(&self) -> f64 {
        if Scalar::is_zero(self) {
            0.0
        } else {
            let v = self.to_f64().abs();
            // Exact nonzero values whose float image underflows still need
            // a positive pivot weight.
            if v > 0.0 && v.is_finite() {
                v
            } else {
                f64::MIN_POSITIVE
            }
        }
    }
}

impl RealScalar for QuadScalar {
    type Complex = QuadComplex;
    fn sign(&self) -> i8 {
        QuadScalar::sign(self)
    }
    fn sqrt(&self) -> Result<Self, ScalarError> {
        QuadScalar::sqrt(self)
    }
    fn complexify(&self) -> QuadComplex {
        QuadComplex::from_real(self.clone())
    }
    fn to_f64(&self) -> f64 {
        QuadScalar::to_f64(self)
    }
    fn field_compatible(&self, other: &Self) -> bool {
        self.compatible(other)
    }
}

impl Scalar for QuadComplex {
    fn zero() -> Self {
        QuadComplex::from_real(QuadScalar::from_int(0))
    }
    fn one() -> Self {
        QuadComplex::from_real(QuadScalar::from_int(1))
    }
    fn from_i64(n: i64) -> Self {
        QuadComplex::from_real(QuadScalar::from_int(n))
    }
    fn from_rational(r: &Rational) -> Self {
        QuadComplex::from_real(QuadScalar::from_rat(r.clone()))
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(&self.re) && Scalar::is_zero(&self.im)
    }
    fn neg(&self) -> Self {
        QuadComplex { re: Scalar::neg(&self.re), im: Scalar::neg(&self.im) }
    }
    fn add(&self, rhs: &Self) -> Self {
        QuadComplex { re: self.re.add(&rhs.re), im: self.im.add(&rhs.im) }
    }
    fn sub(&self, rhs: &Self) -> Self {
        QuadComplex { re: self.re.sub(&rhs.re), im: self.im.sub(&rhs.im) }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let re = self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im));
        let im = self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re));
        QuadComplex { re, im }
    }
    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }
    fn magnitude(&self) -> f64 {
        if Scalar::is_zero(self) {
            0.0
        } else {
            let v = self.to_complex64().norm();
            if v > 0.0 && v.is_finite() {
                v
            } else {
                f64::MIN_POSITIVE
            }
        }
    }
}

impl ComplexScalar for QuadComplex {
    type Real = QuadScalar;
    fn from_real(re: &QuadScalar) -> Self {
        QuadComplex::from_real(re.clone())
    }
    fn imaginary_unit() -> Self {
        QuadComplex { re: QuadScalar::from_int(0), im: QuadScalar::from_int(1) }
    }
    fn conj(&self) -> Self {
        QuadComplex::conj(self)
    }
    fn re(&self) -> QuadScalar {
        self.re.clone()
    }
    fn im(&self) -> QuadScalar {
        self.im.clone()
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn add(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        *self / *rhs
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl RealScalar for f64 {
    type Complex = num::complex::Complex64;
    fn sign(&self) -> i8 {
        if *self > 0.0 {
            1
        } else if *self < 0.0 {
            -1
        } else {
            0
        }
    }
    fn sqrt(&self) -> Result<Self, ScalarError> {
        if *self < 0.0 {
            Err(ScalarError::NegativeSqrt)
        } else {
            Ok(f64::sqrt(*self))
        }
    }
    fn complexify(&self) -> num::complex::Complex64 {
        num::complex::Complex64::new(*self, 0.0)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for num::complex::Complex64 {
    fn zero() -> Self {
        num::complex::Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        num::complex::Complex64::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        num::complex::Complex64::new(n as f64, 0.0)
    }
    fn from_rational(r: &Rational) -> Self {
        num::complex::Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn add(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        *self / *rhs
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl ComplexScalar for num::complex::Complex64 {
    type Real = f64;
    fn from_real(re: &f64) -> Self {
        num::complex::Complex64::new(*re, 0.0)
    }
    fn imaginary_unit() -> Self {
        num::complex::Complex64::new(0.0, 1.0)
    }
    fn conj(&self) -> Self {
        num::complex::Complex64::conj(self)
    }
    fn re(&self) -> f64 {
        self.re
    }
    fn im(&self) -> f64 {
        self.im
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, d: i64) -> QuadScalar {
        QuadScalar::new(rat(a, 1), rat(b, 1), rat(d, 1)).unwrap()
    }

    #[test]
    fn sign_examples() {
        assert_eq!(q(0, 0, 5).sign(), 0);
        // -3 + 2*sqrt(4) collapses to the rational 1
        let x = q(-3, 2, 4);
        assert!(x.is_rational());
        assert_eq!(x.sign(), 1);
        assert_eq!(q(5, -3, 3).sign(), -1);
        assert_eq!(q(5, -3, 3).to_f64().signum(), -1.0);
        assert_eq!(q(2, -1, 3).sign(), 1);
        assert_eq!(q(-2, 1, 3).sign(), -1);
    }

    #[test]
    fn field_ops() {
        let one_plus = q(1, 1, 2);
        let one_minus = q(1, -1, 2);
        assert_eq!(one_plus.mul(&one_minus), QuadScalar::from_int(-1));
        let root7 = q(0, 1, 7);
        assert_eq!(root7.mul(&root7), QuadScalar::from_int(7));
        let x = q(3, 2, 5);
        assert_eq!(x.div(&x), QuadScalar::from_int(1));
        assert_eq!(x.mul(&x.inv()), QuadScalar::from_int(1));
    }

    #[test]
    fn radicand_normalization() {
        // sqrt(8) = 2 sqrt(2)
        let x = q(0, 1, 8);
        assert_eq!(x.radicand(), &BigInt::from(2));
        assert_eq!(x.radical_part(), &rat(2, 1));
        // sqrt(9/4) = 3/2
        let y = QuadScalar::new(rat(0, 1), rat(1, 1), rat(9, 4)).unwrap();
        assert_eq!(y, QuadScalar::from_rat(rat(3, 2)));
        // sqrt(1/2) = sqrt(2)/2
        let z = QuadScalar::new(rat(0, 1), rat(1, 1), rat(1, 2)).unwrap();
        assert_eq!(z.radicand(), &BigInt::from(2));
        assert_eq!(z.radical_part(), &rat(1, 2));
    }

    #[test]
    fn to_float_examples() {
        assert!((q(1, 1, 2).to_f64() - 2.414213562373095).abs() < 1e-14);
        assert_eq!(q(-4, 0, 7).to_f64(), -4.0);
        assert!((q(5, -3, 3).to_f64() - (-0.19615242270663202)).abs() < 1e-14);
    }

    #[test]
    fn sqrt_rational_cases() {
        assert_eq!(QuadScalar::from_int(4).sqrt().unwrap(), QuadScalar::from_int(2));
        let r2 = QuadScalar::from_int(2).sqrt().unwrap();
        assert_eq!(r2, q(0, 1, 2));
        assert_eq!(QuadScalar::from_rat(rat(9, 4)).sqrt().unwrap(), QuadScalar::from_rat(rat(3, 2)));
        assert_eq!(QuadScalar::from_int(8).sqrt().unwrap(), q(0, 2, 2));
        assert_eq!(
            QuadScalar::from_int(-1).sqrt(),
            Err(ScalarError::NegativeSqrt)
        );
    }

    #[test]
    fn sqrt_denesting() {
        // sqrt(3 + 2 sqrt(2)) = 1 + sqrt(2)
        let x = q(3, 2, 2);
        assert_eq!(x.sqrt().unwrap(), q(1, 1, 2));
        // sqrt(7 - 4 sqrt(3)) = 2 - sqrt(3)
        let y = q(7, -4, 3);
        assert_eq!(y.sqrt().unwrap(), q(2, -1, 3));
        // sqrt(1 + sqrt(2)) does not denest
        assert_eq!(q(1, 1, 2).sqrt(), Err(ScalarError::NestedRadical));
    }

    #[test]
    #[should_panic(expected = "incompatible radicands")]
    fn mixed_radicands_panic() {
        let _ = q(1, 1, 2).add(&q(1, 1, 3));
    }

    #[test]
    fn complex_ops() {
        let z = QuadComplex::new(q(1, 1, 5), q(0, 2, 5));
        let w = z.mul(&z.inv());
        assert_eq!(w, QuadComplex::from_real(QuadScalar::from_int(1)));
        let i = QuadComplex::imaginary_unit();
        assert_eq!(i.mul(&i), Scalar::neg(&QuadComplex::one()));
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn random_sign_properties() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(0xC0FFEE);
        let ds = [0i64, 2, 3, 5, 6, 7, 10, 13];
        for _ in 0..1000 {
            let d = ds[rng.random_range(0..ds.len())];
            let mk = |rng: &mut StdRng| {
                let a = rat(rng.random_range(-30..31), rng.random_range(1..7));
                let b = if d == 0 { rat(0, 1) } else { rat(rng.random_range(-30..31), rng.random_range(1..7)) };
                QuadScalar::new(a, b, rat(d, 1)).unwrap()
            };
            let x = mk(&mut rng);
            let y = mk(&mut rng);
            // sign is multiplicative
            assert_eq!(x.mul(&y).sign(), x.sign() * y.sign());
            // sign agrees with the float image away from zero
            let f = x.to_f64();
            if f.abs() > 1e-9 {
                assert_eq!(x.sign() as f64, f.signum());
            }
        }
    }

    #[test]
    fn random_complex_additive_roundtrip() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..500 {
            let d = 7;
            let mut mk = || {
                QuadComplex::new(
                    QuadScalar::new(
                        rat(rng.random_range(-20..21), rng.random_range(1..5)),
                        rat(rng.random_range(-20..21), rng.random_range(1..5)),
                        rat(d, 1),
                    )
                    .unwrap(),
                    QuadScalar::new(
                        rat(rng.random_range(-20..21), rng.random_range(1..5)),
                        rat(rng.random_range(-20..21), rng.random_range(1..5)),
                        rat(d, 1),
                    )
                    .unwrap(),
                )
            };
            let x = mk();
            let y = mk();
            assert_eq!(x.add(&y).sub(&y), x);
        }
    }
}
