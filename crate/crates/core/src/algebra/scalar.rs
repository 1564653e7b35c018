//! Exact complex rationals `Q[i]`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A Gaussian rational `re + im·i`.
///
/// Both parts are `BigRational`, which keeps them in lowest terms with a
/// positive denominator, so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(value: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(value.into()), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        Ok(GaussianRational::new(ratio(num, den)?, BigRational::zero()))
    }

    /// Builds `re_num/re_den + (im_num/im_den)·i`; zero denominators are rejected.
    pub fn from_parts(re: (i64, i64), im: (i64, i64)) -> Result<Self> {
        Ok(GaussianRational::new(ratio(re.0, re.1)?, ratio(im.0, im.1)?))
    }

    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    /// `|x|² = re² + im²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }

    /// `[num, den]` pairs for both parts, if they fit in `i64`.
    pub fn to_parts(&self) -> Option<((i64, i64), (i64, i64))> {
        Some((ratio_parts(&self.re)?, ratio_parts(&self.im)?))
    }
}

pub(crate) fn ratio(num: i64, den: i64) -> Result<BigRational> {
    if den == 0 {
        return Err(Error::input(format!("zero denominator in {num}/{den}")));
    }
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

pub(crate) fn ratio_parts(r: &BigRational) -> Option<(i64, i64)> {
    Some((r.numer().to_i64()?, r.denom().to_i64()?))
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::new(BigRational::one(), BigRational::zero())
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        &self + &rhs
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        &self - &rhs
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::new(&self.re * &rhs.re, BigRational::zero());
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

impl Div for GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: GaussianRational) -> GaussianRational {
        &self / &rhs
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl From<i64> for GaussianRational {
    fn from(value: i64) -> Self {
        GaussianRational::from_int(value)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}i", self.re, sign, self.im.abs())
            }
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Wire form `{"re": [num, den], "im": [num, den]}`.
#[derive(Serialize, Deserialize)]
struct Wire {
    re: (i64, i64),
    #[serde(default = "zero_pair")]
    im: (i64, i64),
}

fn zero_pair() -> (i64, i64) {
    (0, 1)
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (re, im) = self
            .to_parts()
            .ok_or_else(|| serde::ser::Error::custom("rational does not fit in i64"))?;
        Wire { re, im }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        GaussianRational::from_parts(w.re, w.im).map_err(serde::de::Error::custom)
    }
}
