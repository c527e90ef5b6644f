//! The exact coefficient ring: finite sums `Σ c·√m`.
//!
//! Every number this crate computes with is a finite sum of terms `c·√m`
//! where `c` is a Gaussian rational (arbitrary-precision rational real and
//! imaginary parts) and `m` is a squarefree positive integer. `m = 1` is the
//! rational term. The representation is canonical — terms are keyed by `m`
//! in a sorted map and zero coefficients are dropped — so structural equality
//! *is* exact numeric equality, and `x - y == 0` decides `x == y`.
//!
//! The ring is closed under addition, multiplication, complex conjugation
//! and reciprocal:
//!
//! * products of radicals reduce by the gcd trick
//!   `√m·√m' = g·√((m/g)·(m'/g))` with `g = gcd(m, m')`, which keeps keys
//!   squarefree without ever factoring a product;
//! * reciprocals eliminate one radical prime at a time by multiplying with
//!   the Galois conjugate that flips the sign of every term containing that
//!   prime, leaving a Gaussian rational denominator.
//!
//! Floating point appears only in [`RadicalScalar::to_f64_parts`], a
//! diagnostic convenience with interval-certified accuracy. Verification
//! verdicts never touch it.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::Error;

/// Arbitrary-precision rational number.
pub type Rational = Ratio<BigInt>;

/// Largest radicand `sqrt_of_rational` will factor by default.
///
/// Trial division up to `√10⁹ ≈ 31623` is instantaneous; anything bigger is
/// almost certainly a bug in the caller, so the default errs loudly instead
/// of stalling.
pub const DEFAULT_FACTOR_BOUND: u128 = 1_000_000_000;

/// Shorthand for building a `Rational` from machine integers.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// A Gaussian rational `re + im·i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    fn scale(&self, r: &Rational) -> Self {
        GaussianRational {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Ok(GaussianRational {
            re: &self.re / &norm,
            im: -&self.im / &norm,
        })
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::mul(self, rhs)
    }
}

/// An exact sum `Σ c_m·√m` over squarefree keys `m`, with Gaussian rational
/// coefficients. The zero scalar is the empty sum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RadicalScalar {
    terms: BTreeMap<u128, GaussianRational>,
}

impl RadicalScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_gaussian(GaussianRational::one())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::from_gaussian(GaussianRational::i())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_gaussian(GaussianRational::from_rational(r))
    }

    pub fn from_gaussian(g: GaussianRational) -> Self {
        let mut s = Self::zero();
        s.add_term(1, g);
        s
    }

    /// A single term `c·√m`. `m` must be squarefree; constructors in this
    /// module only ever produce squarefree keys.
    pub(crate) fn term(m: u128, c: GaussianRational) -> Self {
        let mut s = Self::zero();
        s.add_term(m, c);
        s
    }

    /// Iterate `(radicand, coefficient)` pairs in ascending radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u128, &GaussianRational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_gaussian().is_some_and(|g| g == &GaussianRational::one())
    }

    /// True when every coefficient has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussianRational::is_real)
    }

    /// The Gaussian rational value, if no radical term is present.
    pub fn as_gaussian(&self) -> Option<&GaussianRational> {
        match self.terms.len() {
            0 => None, // zero; handled by callers via is_zero
            1 => self.terms.get(&1),
            _ => None,
        }
    }

    /// The rational value, if the scalar is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        let g = self.as_gaussian()?;
        g.is_real().then(|| g.re.clone())
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// Complex conjugate (radicals are real, so only coefficients flip).
    pub fn conj(&self) -> Self {
        RadicalScalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.conj()))
                .collect(),
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    fn add_term(&mut self, m: u128, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        RadicalScalar {
            terms: self.terms.iter().map(|(m, c)| (*m, c.scale(r))).collect(),
        }
    }

    fn scale_gaussian(&self, g: &GaussianRational) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * g);
        }
        out
    }

    /// Multiplicative inverse, via Galois conjugation.
    ///
    /// For each prime `p` dividing some radicand, multiply numerator and
    /// denominator by the conjugate that negates every term whose radicand
    /// `p` divides. Each pass removes `p` from the denominator's keys; the
    /// loop ends with a Gaussian rational denominator. The radical terms span
    /// a field, so the denominator cannot vanish along the way.
    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        let (cofactor, norm) = self.rationalize();
        let inv = norm.recip()?;
        Ok(cofactor.scale_gaussian(&inv))
    }

    /// Returns `(cofactor, n)` with `self · cofactor = n` Gaussian rational.
    fn rationalize(&self) -> (RadicalScalar, GaussianRational) {
        let mut cofactor = RadicalScalar::one();
        let mut acc = self.clone();
        while let Some(p) = acc.smallest_radical_prime() {
            let flipped = acc.flip_radical(p);
            cofactor = &cofactor * &flipped;
            acc = &acc * &flipped;
        }
        let norm = match acc.terms.len() {
            0 => GaussianRational::zero(),
            _ => acc.terms.remove(&1).expect("rationalized scalar has key 1"),
        };
        debug_assert!(acc.terms.is_empty());
        (cofactor, norm)
    }

    /// Smallest prime dividing any radicand, or None if all keys are 1.
    fn smallest_radical_prime(&self) -> Option<u128> {
        self.terms
            .keys()
            .filter(|m| **m > 1)
            .map(|m| smallest_prime_factor(*m))
            .min()
    }

    /// The Galois conjugate sending `√p → -√p`.
    fn flip_radical(&self, p: u128) -> Self {
        RadicalScalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, if m % p == 0 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Exact sign of a real scalar: `Less`, `Equal` or `Greater` vs zero.
    ///
    /// Decided by interval refinement. A nonzero scalar `x` satisfies
    /// `|x| ≥ |N| / bound(cofactor)` where `x·cofactor = N` is rational, so
    /// a precision that shrinks the interval below that floor must separate
    /// it from zero.
    pub fn real_sign(&self) -> Result<Ordering, Error> {
        if !self.is_real() {
            return Err(Error::NotReal(self.to_string()));
        }
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        if let Some(r) = self.as_rational() {
            return Ok(r.cmp(&Rational::zero()));
        }
        // Fast path at modest precision.
        let (lo, hi) = self.real_bounds(12);
        if lo.is_positive() {
            return Ok(Ordering::Greater);
        }
        if hi.is_negative() {
            return Ok(Ordering::Less);
        }
        // Guaranteed path: refine past the separation floor.
        let (cofactor, norm) = self.rationalize();
        debug_assert!(norm.is_real());
        let floor = norm.re.abs() / cofactor.magnitude_bound();
        let mass = self.coefficient_mass() + Rational::one();
        // interval width at d digits is at most mass·10^(-d)
        let digits = decimal_digits(&(mass / floor)) + 1;
        let (lo, hi) = self.real_bounds(digits);
        if lo.is_positive() {
            Ok(Ordering::Greater)
        } else {
            debug_assert!(hi.is_negative());
            Ok(Ordering::Less)
        }
    }

    /// `Σ (|re| + |im|)` over coefficients — an easy magnitude bound helper.
    fn coefficient_mass(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.re.abs() + c.im.abs())
            .sum()
    }

    /// A rational upper bound on the magnitude `Σ |c|·√m`.
    fn magnitude_bound(&self) -> Rational {
        self.terms
            .iter()
            .map(|(m, c)| {
                let root = BigInt::from(m.sqrt() + 1);
                (c.re.abs() + c.im.abs()) * Rational::from_integer(root)
            })
            .sum()
    }

    /// Exact enclosure of the real part at `digits` decimal digits: each
    /// `√m` is replaced by `[s, s+1]/10^digits` with `s = ⌊√(m·10^(2d))⌋`.
    fn real_bounds(&self, digits: usize) -> (Rational, Rational) {
        self.bounds_by(digits, |c| &c.re)
    }

    fn imag_bounds(&self, digits: usize) -> (Rational, Rational) {
        self.bounds_by(digits, |c| &c.im)
    }

    fn bounds_by<'a>(
        &'a self,
        digits: usize,
        part: impl Fn(&'a GaussianRational) -> &'a Rational,
    ) -> (Rational, Rational) {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scale_sq = &scale * &scale;
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for (m, c) in &self.terms {
            let p = part(c);
            if p.is_zero() {
                continue;
            }
            if *m == 1 {
                lo += p;
                hi += p;
                continue;
            }
            let s = (BigInt::from(*m) * &scale_sq).sqrt();
            let root_lo = Rational::new(s.clone(), scale.clone());
            let root_hi = Rational::new(s + 1, scale.clone());
            if p.is_positive() {
                lo += p * &root_lo;
                hi += p * &root_hi;
            } else {
                lo += p * &root_hi;
                hi += p * &root_lo;
            }
        }
        (lo, hi)
    }

    /// Approximate `(re, im)` as `f64`, accurate to `digits` decimal digits
    /// (before the final `f64` rounding, which costs at most one ulp).
    ///
    /// Diagnostic only — verification verdicts never consult floats.
    pub fn to_f64_parts(&self, digits: u32) -> (f64, f64) {
        let mass = self.coefficient_mass() + Rational::one();
        let guard = decimal_digits(&mass) + 1;
        let d = digits as usize + guard;
        let two = Rational::from_integer(BigInt::from(2));
        let (rlo, rhi) = self.real_bounds(d);
        let (ilo, ihi) = self.imag_bounds(d);
        let re = ((rlo + rhi) / &two).to_f64().unwrap_or(f64::NAN);
        let im = ((ilo + ihi) / &two).to_f64().unwrap_or(f64::NAN);
        (re, im)
    }
}

/// Decimal digits needed to write `⌈|r|⌉`, i.e. an integer `d` with
/// `|r| < 10^d`.
fn decimal_digits(r: &Rational) -> usize {
    let ceil = r.abs().ceil().to_integer();
    ceil.to_string().trim_start_matches('-').len()
}

/// Smallest prime factor by trial division.
fn smallest_prime_factor(n: u128) -> u128 {
    debug_assert!(n > 1);
    if n % 2 == 0 {
        return 2;
    }
    let mut p = 3u128;
    while p * p <= n {
        if n % p == 0 {
            return p;
        }
        p += 2;
    }
    n
}

/// Decompose `n = c²·m` with `m` squarefree, by trial division.
fn squarefree_decompose(n: u128) -> (u128, u128) {
    debug_assert!(n > 0);
    let mut rest = n;
    let mut c = 1u128;
    let mut m = 1u128;
    let mut p = 2u128;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            c *= p.pow(e / 2);
            if e % 2 == 1 {
                m *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // rest is 1 or a single leftover prime
    (c, m * rest)
}

/// Exact square root of a positive rational, as a ring element, using the
/// default factoring bound.
///
/// `√(p/q) = √(p·q)/q`, and `p·q` is decomposed into `c²·m` by trial
/// division, giving `(c/q)·√m`.
pub fn sqrt_of_rational(r: &Rational) -> Result<RadicalScalar, Error> {
    sqrt_of_rational_with_bound(r, DEFAULT_FACTOR_BOUND)
}

/// Like [`sqrt_of_rational`] with an explicit bound on the integer that must
/// be factored. Radicands beyond the bound produce [`Error::FactorBound`].
pub fn sqrt_of_rational_with_bound(r: &Rational, bound: u128) -> Result<RadicalScalar, Error> {
    if !r.is_positive() {
        return Err(Error::NonPositiveSqrt(r.clone()));
    }
    let pq = r.numer() * r.denom();
    let value = pq.to_u128().ok_or(Error::FactorBound {
        value: u128::MAX,
        bound,
    })?;
    if value > bound {
        return Err(Error::FactorBound { value, bound });
    }
    let (c, m) = squarefree_decompose(value);
    let coeff = Rational::new(BigInt::from(c), r.denom().clone());
    Ok(RadicalScalar::term(m, GaussianRational::from_rational(coeff)))
}

// --- arithmetic operators -------------------------------------------------
//
// The borrowed forms carry the implementation; owned variants delegate.

impl Add for &RadicalScalar {
    type Output = RadicalScalar;
    fn add(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &RadicalScalar {
    type Output = RadicalScalar;
    fn sub(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &RadicalScalar {
    type Output = RadicalScalar;
    fn mul(self, rhs: &RadicalScalar) -> RadicalScalar {
        let mut out = RadicalScalar::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                let g = m.gcd(n);
                let key = (m / g)
                    .checked_mul(n / g)
                    .expect("radicand product exceeds u128");
                let coeff = (c * d).scale(&Rational::from_integer(BigInt::from(g)));
                out.add_term(key, coeff);
            }
        }
        out
    }
}

impl Neg for &RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        RadicalScalar {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for RadicalScalar {
            type Output = RadicalScalar;
            fn $method(self, rhs: RadicalScalar) -> RadicalScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RadicalScalar> for RadicalScalar {
            type Output = RadicalScalar;
            fn $method(self, rhs: &RadicalScalar) -> RadicalScalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<RadicalScalar> for &RadicalScalar {
            type Output = RadicalScalar;
            fn $method(self, rhs: RadicalScalar) -> RadicalScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for RadicalScalar {
    type Output = RadicalScalar;
    fn neg(self) -> RadicalScalar {
        -&self
    }
}

impl AddAssign<&RadicalScalar> for RadicalScalar {
    fn add_assign(&mut self, rhs: &RadicalScalar) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl AddAssign for RadicalScalar {
    fn add_assign(&mut self, rhs: RadicalScalar) {
        *self += &rhs;
    }
}

impl SubAssign<&RadicalScalar> for RadicalScalar {
    fn sub_assign(&mut self, rhs: &RadicalScalar) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl MulAssign<&RadicalScalar> for RadicalScalar {
    fn mul_assign(&mut self, rhs: &RadicalScalar) {
        *self = &*self * rhs;
    }
}

impl Sum for RadicalScalar {
    fn sum<I: Iterator<Item = RadicalScalar>>(iter: I) -> RadicalScalar {
        let mut acc = RadicalScalar::zero();
        for x in iter {
            acc += x;
        }
        acc
    }
}

impl Product for RadicalScalar {
    fn product<I: Iterator<Item = RadicalScalar>>(iter: I) -> RadicalScalar {
        let mut acc = RadicalScalar::one();
        for x in iter {
            acc *= &x;
        }
        acc
    }
}

impl From<i64> for RadicalScalar {
    fn from(n: i64) -> Self {
        RadicalScalar::from_integer(n)
    }
}

impl From<Rational> for RadicalScalar {
    fn from(r: Rational) -> Self {
        RadicalScalar::from_rational(r)
    }
}

// --- canonical text -------------------------------------------------------

impl GaussianRational {
    /// Canonical text: a bare rational when real, else `(re+imi)` with the
    /// sign folded into the join, e.g. `(0+1i)`, `(1/2-3i)`.
    fn canonical_text(&self) -> String {
        if self.is_real() {
            return self.re.to_string();
        }
        if self.im.is_negative() {
            format!("({}-{}i)", self.re, -&self.im)
        } else {
            format!("({}+{}i)", self.re, self.im)
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_text())
    }
}

impl fmt::Display for RadicalScalar {
    /// Canonical text, e.g. `0`, `3/2`, `(0+1i)`, `(2/3)*sqrt(2)`,
    /// `-1+(1)*sqrt(2)`. Terms appear in ascending radicand order joined by
    /// `+`; radical coefficients are always parenthesised.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            if *m == 1 {
                f.write_str(&c.canonical_text())?;
            } else if c.is_real() {
                write!(f, "({})*sqrt({})", c.re, m)?;
            } else {
                write!(f, "{}*sqrt({})", c.canonical_text(), m)?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for RadicalScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for RadicalScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
