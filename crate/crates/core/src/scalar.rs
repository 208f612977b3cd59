//! Exact scalars, univariate polynomials and rational functions, and the
//! seeded parameter pack shared by every computation in the crate.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::Error;

/// Every genericity condition and truncation in the crate refers to this bound.
pub const DEGREE_CAP: usize = 8;

const MAX_RESAMPLES: usize = 10_000;

/// Arithmetic shared by [`Scalar`] and [`RatFunc`], so that matrices, Fock
/// vectors and symmetric functions can be written once for both.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_scalar(s: &Scalar) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_scalar(&Scalar::from(n))
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn scale(&self, s: &Scalar) -> Self {
        self.mul(&Self::from_scalar(s))
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Scalar

/// An exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar(pub BigRational);

impl Scalar {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let den = den.into();
        assert!(!den.is_zero(), "zero denominator");
        Scalar(BigRational::new(num.into(), den))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Scalar(BigRational::from_integer(n.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Scalar {
        Scalar(self.0.abs())
    }

    pub fn recip(&self) -> Scalar {
        Scalar(self.0.recip())
    }

    pub fn powi(&self, e: i32) -> Scalar {
        if e >= 0 {
            Scalar(num_traits::pow(self.0.clone(), e as usize))
        } else {
            Scalar(num_traits::pow(self.0.recip(), (-e) as usize))
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    /// Serialized form used in reports and golden files.
    pub fn to_ratio_string(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::new(n, d))
            }
            None => Ok(Scalar::from_int(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_ratio_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Self {
        Scalar::from_int(n)
    }
}

impl From<usize> for Scalar {
    fn from(n: usize) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                Scalar(&self.0 $op &rhs.0)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                Scalar(self.0 $op rhs.0)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0 $op &rhs.0)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                Scalar(&self.0 $op rhs.0)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);
scalar_binop!(Div, div, /);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        self.0 -= rhs.0;
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar(BigRational::zero())
    }
    fn one() -> Self {
        Scalar(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
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
        if self.0.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
}

// ---------------------------------------------------------------------------
// Poly

/// Dense univariate polynomial over the rationals, coefficients lowest degree
/// first, never with a trailing zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::from(1))
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// The variable itself.
    pub fn x() -> Self {
        Poly::new(vec![Scalar::from(0), Scalar::from(1)])
    }

    /// `x - c`.
    pub fn linear_root(c: &Scalar) -> Self {
        Poly::new(vec![-c, Scalar::from(1)])
    }

    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn lead(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.lead().recip())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::from(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Substitutes `x -> k x`.
    pub fn rescale_var(&self, k: &Scalar) -> Poly {
        let mut pw = Scalar::from(1);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pw);
            pw *= k;
        }
        Poly::new(out)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * Scalar::from(k)).collect())
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.lead().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Scalar::from(0); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let f = &rem[k] * &lead_inv;
            for (j, dc) in d.coeffs.iter().enumerate() {
                let t = &f * dc;
                rem[k - dd + j] -= &t;
            }
            quot[k - dd] = f;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    ///
    /// Works on primitive parts: by Gauss's lemma the quotient of primitive
    /// integer polynomials is again integral, so every step divides exactly.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let (cn, mut a) = self.content_primitive();
        let (cd, b) = d.content_primitive();
        assert!(!b.is_empty(), "division by zero polynomial");
        assert!(a.len() >= b.len(), "inexact polynomial division");
        let db = b.len() - 1;
        let lb = &b[db];
        let mut quot = vec![BigInt::zero(); a.len() - db];
        for k in (db..a.len()).rev() {
            if a[k].is_zero() {
                continue;
            }
            let (f, r) = a[k].div_rem(lb);
            assert!(r.is_zero(), "inexact polynomial division");
            for (j, bc) in b.iter().enumerate() {
                a[k - db + j] -= &f * bc;
            }
            quot[k - db] = f;
        }
        assert!(a[..db].iter().all(Zero::is_zero), "inexact polynomial division");
        let c = cn / cd;
        Poly::new(quot.into_iter().map(|q| &c * &Scalar::from_int(q)).collect())
    }

    /// `(l, v)` with `self = v / l` for integers `v` and `l > 0` the lcm of
    /// the coefficient denominators.
    fn integer_numerators(&self) -> (BigInt, Vec<BigInt>) {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            if !c.denom().is_one() {
                l = l.lcm(c.denom());
            }
        }
        let v = self
            .coeffs
            .iter()
            .map(|c| if c.denom().is_one() { c.numer() * &l } else { c.numer() * (&l / c.denom()) })
            .collect();
        (l, v)
    }

    /// Splits off the rational content: `self = content * primitive` with
    /// `primitive` having coprime integer coefficients and positive leading
    /// coefficient.
    pub fn content_primitive(&self) -> (Scalar, Vec<BigInt>) {
        if self.is_zero() {
            return (Scalar::from(0), Vec::new());
        }
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (Scalar::new(g, l), prim)
    }

    fn from_ints(v: &[BigInt]) -> Poly {
        Poly::new(v.iter().map(|c| Scalar::from_int(c.clone())).collect())
    }

    /// Monic gcd, computed with the primitive polynomial remainder sequence
    /// over the integers so that coefficients stay small.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (_, mut a) = self.content_primitive();
        let (_, mut b) = other.content_primitive();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            if b.len() == 1 {
                return Poly::one();
            }
            let r = int_pseudo_rem(&a, &b);
            a = b;
            b = int_primitive(r);
        }
        Poly::from_ints(&a).monic()
    }

    /// Rational roots (with multiplicity) found by trial division against
    /// the candidates supplied; returns the roots and the cofactor.
    pub fn split_roots(&self, candidates: &[Scalar]) -> (Vec<(Scalar, usize)>, Poly) {
        let mut rest = self.clone();
        let mut found = Vec::new();
        for c in candidates {
            let mut mult = 0;
            while rest.degree().is_some_and(|d| d > 0) && rest.eval(c).is_zero() {
                rest = rest.exact_div(&Poly::linear_root(c));
                mult += 1;
            }
            if mult > 0 {
                found.push((c.clone(), mult));
            }
        }
        (found, rest)
    }

    /// Squarefree test via `gcd(f, f')`.
    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &lr * bc;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn int_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    if v.is_empty() {
        return v;
    }
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    v.into_iter().map(|c| c / &g).collect()
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*u")?,
                _ => write!(f, "({c})*u^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if self.coeffs.len().min(rhs.coeffs.len()) <= 2 {
            let mut out = vec![Scalar::from(0); self.coeffs.len() + rhs.coeffs.len() - 1];
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in rhs.coeffs.iter().enumerate() {
                    out[i + j] += &(a * b);
                }
            }
            return Poly::new(out);
        }
        // convolve integer numerators over a common denominator
        let (la, a) = self.integer_numerators();
        let (lb, b) = rhs.integer_numerators();
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let l = la * lb;
        Poly::new(out.into_iter().map(|c| Scalar::new(c, l.clone())).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

// ---------------------------------------------------------------------------
// RatFunc

/// A reduced univariate rational function: coprime numerator and monic
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds and normalizes `num / den`; panics on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        let l = den.lead().recip();
        RatFunc { num: num.scale(&l), den: den.scale(&l) }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: Scalar) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    /// The spectral variable `u`.
    pub fn u() -> Self {
        RatFunc::from_poly(Poly::x())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    /// Re-runs normalization; a no-op on any value built through the API.
    pub fn normalized(&self) -> RatFunc {
        RatFunc::new(self.num.clone(), self.den.clone())
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        if self.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// `None` if `c` is a pole.
    pub fn eval(&self, c: &Scalar) -> Option<Scalar> {
        let d = self.den.eval(c);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(c) / d)
        }
    }

    /// Substitutes `u -> k u`.
    pub fn rescale_var(&self, k: &Scalar) -> RatFunc {
        RatFunc::new(self.num.rescale_var(k), self.den.rescale_var(k))
    }

    /// Laurent coefficients at `u = infinity`: entry `j` is the coefficient
    /// of `u^(top - j)` where `top = deg num - deg den`, for `j < terms`.
    pub fn laurent_at_infinity(&self, terms: usize) -> (i64, Vec<Scalar>) {
        if self.num.is_zero() {
            return (0, vec![Scalar::from(0); terms]);
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        // Reverse both polynomials: f(u) = u^(dn-dd) N(1/u)/D(1/u) with
        // N, D reversed, D(0) = 1 since the denominator is monic.
        let rn: Vec<Scalar> = self.num.coeffs().iter().rev().cloned().collect();
        let rd: Vec<Scalar> = self.den.coeffs().iter().rev().cloned().collect();
        let mut out: Vec<Scalar> = Vec::with_capacity(terms);
        for j in 0..terms {
            let mut c = rn.get(j).cloned().unwrap_or_default();
            for k in 1..=j.min(rd.len() - 1) {
                c -= &(&rd[k] * &out[j - k]);
            }
            out.push(c);
        }
        (dn as i64 - dd as i64, out)
    }

    /// Coefficient of `u^(-k)` in the expansion at infinity, `k` may be
    /// negative for polynomial growth.
    pub fn coeff_at_infinity(&self, k: i64) -> Scalar {
        let (top, _) = self.laurent_at_infinity(0);
        let j = top + k;
        if j < 0 {
            return Scalar::from(0);
        }
        let (_, c) = self.laurent_at_infinity(j as usize + 1);
        c[j as usize].clone()
    }

    /// Leading order at infinity (`deg num - deg den`), `None` for zero.
    pub fn order_at_infinity(&self) -> Option<i64> {
        if self.num.is_zero() {
            None
        } else {
            Some(self.num.degree().unwrap() as i64 - self.den.degree().unwrap() as i64)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }
    fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Field::add(self, &Field::neg(rhs))
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_constant() && rhs.den.is_constant() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
    fn neg(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()))
        }
    }
    fn from_scalar(s: &Scalar) -> Self {
        RatFunc::constant(s.clone())
    }
    fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(s), den: self.den.clone() }
    }
}

macro_rules! ratfunc_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                Field::$m(self, rhs)
            }
        }
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                Field::$m(&self, &rhs)
            }
        }
    };
}

ratfunc_binop!(Add, add);
ratfunc_binop!(Sub, sub);
ratfunc_binop!(Mul, mul);

impl Div<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        Field::div(self, rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        Field::neg(self)
    }
}

// ---------------------------------------------------------------------------
// Params

/// The equivariant parameter pack: torus weights, framing weights, Kähler
/// parameter, and the seed they were drawn from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub t1: Scalar,
    pub t2: Scalar,
    pub a: Vec<Scalar>,
    pub q: Scalar,
    pub seed: u64,
}

impl Params {
    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// `hbar = -t1 - t2`.
    pub fn hbar(&self) -> Scalar {
        -(&self.t1 + &self.t2)
    }

    /// The handle-gluing element `e = -t1 t2`.
    pub fn e(&self) -> Scalar {
        -(&self.t1 * &self.t2)
    }

    /// `tau(1) = -1/(t1 t2)`.
    pub fn tau1(&self) -> Scalar {
        -(&self.t1 * &self.t2).recip()
    }

    /// `u = a_1 - a_2`.
    pub fn u(&self) -> Scalar {
        &self.a[0] - &self.a[1]
    }

    /// Checks every genericity invariant, naming the first violated one.
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        if self.a.is_empty() {
            return bad("rank must be positive".into());
        }
        if self.t1.is_zero() || self.t2.is_zero() {
            return bad("t1*t2 = 0".into());
        }
        if (&self.t1 + &self.t2).is_zero() {
            return bad("t1 + t2 = 0".into());
        }
        if let Some((m, n)) = t_relation(&self.t1, &self.t2) {
            return bad(format!("{m}*t1 + {n}*t2 = 0"));
        }
        for i in 0..self.a.len() {
            for j in 0..self.a.len() {
                if i != j {
                    if let Some((m, n)) = lattice_hit(&(&self.a[i] - &self.a[j]), &self.t1, &self.t2) {
                        return bad(format!(
                            "a{} - a{} = {}*t1 + {}*t2 lies on the weight lattice",
                            i + 1,
                            j + 1,
                            m,
                            n
                        ));
                    }
                }
            }
        }
        if !q_generic(&self.q) {
            return bad(format!("q = {} is a root of unity of order <= {}", self.q, DEGREE_CAP));
        }
        Ok(())
    }

    /// Same torus and Kähler data, different framing weights. No validation.
    pub fn with_a(&self, a: Vec<Scalar>) -> Params {
        Params { a, ..self.clone() }
    }

    pub fn with_q(&self, q: Scalar) -> Params {
        Params { q, ..self.clone() }
    }
}

fn lattice_hit(d: &Scalar, t1: &Scalar, t2: &Scalar) -> Option<(i64, i64)> {
    let cap = DEGREE_CAP as i64;
    for m in -cap..=cap {
        for n in -cap..=cap {
            if *d == t1 * Scalar::from(m) + t2 * Scalar::from(n) {
                return Some((m, n));
            }
        }
    }
    None
}

/// A relation `m t1 + n t2 = 0` with `|m|, |n| ≤ DEGREE_CAP`, not both zero.
fn t_relation(t1: &Scalar, t2: &Scalar) -> Option<(i64, i64)> {
    let cap = DEGREE_CAP as i64;
    for m in 0..=cap {
        for n in -cap..=cap {
            if (m, n) > (0, 0) && (t1 * Scalar::from(m) + t2 * Scalar::from(n)).is_zero() {
                return Some((m, n));
            }
        }
    }
    None
}

fn q_generic(q: &Scalar) -> bool {
    (1..=DEGREE_CAP as i32).all(|n| q.powi(n) != Scalar::from(1))
}

pub(crate) fn draw(rng: &mut ChaCha8Rng) -> Scalar {
    let n: i64 = rng.gen_range(-97..=97);
    let d: i64 = rng.gen_range(1..=13);
    Scalar::new(n, d)
}

/// Deterministic generic parameters of rank `r` from `seed`.
pub fn sample_params(seed: u64, r: usize) -> Result<Params, Error> {
    if r == 0 {
        return Err(Error::InvalidParams("rank must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0usize;
    let bump = |attempts: &mut usize| -> Result<(), Error> {
        *attempts += 1;
        if *attempts > MAX_RESAMPLES {
            Err(Error::Sampling(MAX_RESAMPLES))
        } else {
            Ok(())
        }
    };
    let (t1, t2) = loop {
        let t1 = draw(&mut rng);
        let t2 = draw(&mut rng);
        if !t1.is_zero() && !t2.is_zero() && t_relation(&t1, &t2).is_none() {
            break (t1, t2);
        }
        bump(&mut attempts)?;
    };
    let mut a: Vec<Scalar> = Vec::with_capacity(r);
    while a.len() < r {
        let cand = draw(&mut rng);
        if a.iter().all(|b| lattice_hit(&(&cand - b), &t1, &t2).is_none()) {
            a.push(cand);
        } else {
            bump(&mut attempts)?;
        }
    }
    let q = loop {
        let q = draw(&mut rng);
        if q_generic(&q) {
            break q;
        }
        bump(&mut attempts)?;
    };
    let p = Params { t1, t2, a, q, seed };
    p.validate()?;
    Ok(p)
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::new(n, d)
    }

    #[test]
    fn scalar_normalizes() {
        let x = s(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(x.to_ratio_string(), "-3/2");
        assert_eq!("-3/2".parse::<Scalar>().unwrap(), x);
        assert_eq!("7".parse::<Scalar>().unwrap(), Scalar::from(7));
    }

    #[test]
    fn poly_gcd_and_division() {
        let a = &Poly::linear_root(&s(1, 2)) * &Poly::linear_root(&s(-3, 1));
        let b = &Poly::linear_root(&s(1, 2)) * &Poly::linear_root(&s(5, 7));
        assert_eq!(a.gcd(&b), Poly::linear_root(&s(1, 2)));
        let (q, r) = a.div_rem(&Poly::linear_root(&s(-3, 1)));
        assert!(r.is_zero());
        assert_eq!(q, Poly::linear_root(&s(1, 2)));
    }

    #[test]
    fn ratfunc_reduces() {
        let n = &Poly::linear_root(&s(1, 1)) * &Poly::linear_root(&s(2, 1));
        let d = (&Poly::linear_root(&s(1, 1)) * &Poly::linear_root(&s(3, 1))).scale(&s(5, 1));
        let f = RatFunc::new(n, d);
        assert_eq!(f.den(), &Poly::linear_root(&s(3, 1)));
        assert_eq!(f.num(), &Poly::linear_root(&s(2, 1)).scale(&s(1, 5)));
    }

    #[test]
    fn laurent_expansion_of_geometric_series() {
        // u/(u-h) = 1 + h/u + h^2/u^2 + ...
        let h = s(3, 2);
        let f = RatFunc::new(Poly::x(), Poly::linear_root(&h));
        let (top, c) = f.laurent_at_infinity(4);
        assert_eq!(top, 0);
        assert_eq!(c, vec![s(1, 1), h.clone(), &h * &h, &h * &h * &h]);
        assert_eq!(f.coeff_at_infinity(2), &h * &h);
        assert_eq!(f.coeff_at_infinity(-1), Scalar::from(0));
    }

    #[test]
    fn sample_params_is_deterministic() {
        assert_eq!(sample_params(1, 1).unwrap(), sample_params(1, 1).unwrap());
        let p = sample_params(1, 2).unwrap();
        assert_ne!(p.a[0], p.a[1]);
    }

    #[test]
    fn sample_params_rank3_avoids_lattice() {
        let p = sample_params(7, 3).unwrap();
        let cap = DEGREE_CAP as i64;
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let d = &p.a[i] - &p.a[j];
                for m in -cap..=cap {
                    for n in -cap..=cap {
                        assert_ne!(d, &p.t1 * Scalar::from(m) + &p.t2 * Scalar::from(n));
                    }
                }
            }
        }
    }

    #[test]
    fn validate_reports_lattice_violation() {
        let mut p = sample_params(3, 2).unwrap();
        p.a[1] = &p.a[0] - &p.t1 - &p.t1;
        let err = p.validate().unwrap_err().to_string();
        assert!(err.contains("lattice"), "{err}");
    }
}
