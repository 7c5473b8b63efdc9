use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{QuadElement, Rational};
use crate::error::{Error, Result};

/// Ring operations a matrix entry needs. Fallible because quadratic
/// elements only compose under a shared discriminant.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn try_add(&self, rhs: &Self) -> Result<Self>;
    fn try_sub(&self, rhs: &Self) -> Result<Self>;
    fn try_mul(&self, rhs: &Self) -> Result<Self>;
    fn negated(&self) -> Self;
    /// Additive identity in the same ring as `self`.
    fn zero_like(&self) -> Self;
    /// Multiplicative identity in the same ring as `self`.
    fn one_like(&self) -> Self;
}

impl Scalar for Rational {
    fn try_add(&self, rhs: &Self) -> Result<Self> {
        Ok(self + rhs)
    }
    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        Ok(self - rhs)
    }
    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        Ok(self * rhs)
    }
    fn negated(&self) -> Self {
        -self
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
}

impl Scalar for QuadElement {
    fn try_add(&self, rhs: &Self) -> Result<Self> {
        QuadElement::try_add(self, rhs)
    }
    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        QuadElement::try_sub(self, rhs)
    }
    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        QuadElement::try_mul(self, rhs)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn zero_like(&self) -> Self {
        QuadElement::zero(&self.disc)
    }
    fn one_like(&self) -> Self {
        QuadElement::one(&self.disc)
    }
}

/// A 2x2 matrix `[[e11, e12], [e21, e22]]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2<S> {
    pub e11: S,
    pub e12: S,
    pub e21: S,
    pub e22: S,
}

impl<S> Mat2<S> {
    pub const fn new(e11: S, e12: S, e21: S, e22: S) -> Self {
        Mat2 { e11, e12, e21, e22 }
    }

    pub fn entries(&self) -> [&S; 4] {
        [&self.e11, &self.e12, &self.e21, &self.e22]
    }

    pub fn map<T>(&self, mut f: impl FnMut(&S) -> T) -> Mat2<T> {
        Mat2::new(f(&self.e11), f(&self.e12), f(&self.e21), f(&self.e22))
    }

    pub fn try_map<T>(&self, mut f: impl FnMut(&S) -> Result<T>) -> Result<Mat2<T>> {
        Ok(Mat2::new(f(&self.e11)?, f(&self.e12)?, f(&self.e21)?, f(&self.e22)?))
    }
}

impl<S: Scalar> Mat2<S> {
    pub fn identity_like(&self) -> Self {
        let one = self.e11.one_like();
        let zero = self.e11.zero_like();
        Mat2::new(one.clone(), zero.clone(), zero, one)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        Ok(Mat2::new(
            self.e11.try_add(&rhs.e11)?,
            self.e12.try_add(&rhs.e12)?,
            self.e21.try_add(&rhs.e21)?,
            self.e22.try_add(&rhs.e22)?,
        ))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        Ok(Mat2::new(
            self.e11.try_sub(&rhs.e11)?,
            self.e12.try_sub(&rhs.e12)?,
            self.e21.try_sub(&rhs.e21)?,
            self.e22.try_sub(&rhs.e22)?,
        ))
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let dot = |a: &S, b: &S, c: &S, d: &S| -> Result<S> { a.try_mul(b)?.try_add(&c.try_mul(d)?) };
        Ok(Mat2::new(
            dot(&self.e11, &rhs.e11, &self.e12, &rhs.e21)?,
            dot(&self.e11, &rhs.e12, &self.e12, &rhs.e22)?,
            dot(&self.e21, &rhs.e11, &self.e22, &rhs.e21)?,
            dot(&self.e21, &rhs.e12, &self.e22, &rhs.e22)?,
        ))
    }

    pub fn try_scale(&self, c: &S) -> Result<Self> {
        self.try_map(|e| c.try_mul(e))
    }

    pub fn try_det(&self) -> Result<S> {
        self.e11.try_mul(&self.e22)?.try_sub(&self.e12.try_mul(&self.e21)?)
    }

    pub fn try_trace(&self) -> Result<S> {
        self.e11.try_add(&self.e22)
    }

    /// Binary exponentiation; `A^0` is the identity.
    pub fn try_pow(&self, exp: u64) -> Result<Self> {
        let mut acc = self.identity_like();
        let mut sq = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.try_mul(&sq)?;
            }
        }
        Ok(acc)
    }
}

impl Mat2<Rational> {
    pub fn identity() -> Self {
        Mat2::new(Rational::one(), Rational::zero(), Rational::zero(), Rational::one())
    }

    pub fn zero() -> Self {
        Mat2::new(Rational::zero(), Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_i64(rows: [[i64; 2]; 2]) -> Self {
        Mat2::new(rows[0][0].into(), rows[0][1].into(), rows[1][0].into(), rows[1][1].into())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|e| c * e)
    }

    pub fn det(&self) -> Rational {
        &self.e11 * &self.e22 - &self.e12 * &self.e21
    }

    pub fn trace(&self) -> Rational {
        &self.e11 + &self.e22
    }

    pub fn pow(&self, exp: u64) -> Self {
        self.try_pow(exp).expect("rational matrices never fail")
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|e| e.is_zero())
    }

    /// Embeds into `Q(sqrt(disc))`.
    pub fn lift(&self, disc: &Rational) -> Mat2<QuadElement> {
        self.map(|e| QuadElement::from_rational(e.clone(), disc))
    }

    /// Entries as `"p/q"` strings, row-major.
    pub fn to_strings(&self) -> [[String; 2]; 2] {
        [
            [self.e11.to_string(), self.e12.to_string()],
            [self.e21.to_string(), self.e22.to_string()],
        ]
    }
}

impl Mat2<QuadElement> {
    /// Normalizes every entry and drops the square root, failing with the
    /// offending entry name if any entry is not rational-valued.
    pub fn to_rational(&self, index: u64) -> Result<Mat2<Rational>> {
        let pick = |e: &QuadElement, entry: &'static str| {
            e.to_rational().ok_or(Error::IrrationalResidue { index, entry })
        };
        Ok(Mat2::new(
            pick(&self.e11, "e11")?,
            pick(&self.e12, "e12")?,
            pick(&self.e21, "e21")?,
            pick(&self.e22, "e22")?,
        ))
    }
}

impl Add for &Mat2<Rational> {
    type Output = Mat2<Rational>;
    fn add(self, rhs: Self) -> Mat2<Rational> {
        Mat2::new(
            &self.e11 + &rhs.e11,
            &self.e12 + &rhs.e12,
            &self.e21 + &rhs.e21,
            &self.e22 + &rhs.e22,
        )
    }
}

impl Add for Mat2<Rational> {
    type Output = Mat2<Rational>;
    fn add(self, rhs: Self) -> Mat2<Rational> {
        &self + &rhs
    }
}

impl Sub for &Mat2<Rational> {
    type Output = Mat2<Rational>;
    fn sub(self, rhs: Self) -> Mat2<Rational> {
        Mat2::new(
            &self.e11 - &rhs.e11,
            &self.e12 - &rhs.e12,
            &self.e21 - &rhs.e21,
            &self.e22 - &rhs.e22,
        )
    }
}

impl Sub for Mat2<Rational> {
    type Output = Mat2<Rational>;
    fn sub(self, rhs: Self) -> Mat2<Rational> {
        &self - &rhs
    }
}

impl Mul for &Mat2<Rational> {
    type Output = Mat2<Rational>;
    fn mul(self, rhs: Self) -> Mat2<Rational> {
        Mat2::new(
            &self.e11 * &rhs.e11 + &self.e12 * &rhs.e21,
            &self.e11 * &rhs.e12 + &self.e12 * &rhs.e22,
            &self.e21 * &rhs.e11 + &self.e22 * &rhs.e21,
            &self.e21 * &rhs.e12 + &self.e22 * &rhs.e22,
        )
    }
}

impl Mul for Mat2<Rational> {
    type Output = Mat2<Rational>;
    fn mul(self, rhs: Self) -> Mat2<Rational> {
        &self * &rhs
    }
}

impl Neg for &Mat2<Rational> {
    type Output = Mat2<Rational>;
    fn neg(self) -> Mat2<Rational> {
        self.map(|e| -e)
    }
}

impl<S: fmt::Display> fmt::Display for Mat2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.e11, self.e12, self.e21, self.e22)
    }
}

impl<S: fmt::Debug> fmt::Debug for Mat2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{:?}, {:?}], [{:?}, {:?}]]", self.e11, self.e12, self.e21, self.e22)
    }
}

/// Serialized as a row-major nested array, e.g. `[["1","2"],["2","-1"]]`.
impl<S: Serialize> Serialize for Mat2<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&[&self.e11, &self.e12])?;
        seq.serialize_element(&[&self.e21, &self.e22])?;
        seq.end()
    }
}

impl<'de, S: Deserialize<'de>> Deserialize<'de> for Mat2<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let [[e11, e12], [e21, e22]] = <[[S; 2]; 2]>::deserialize(deserializer)?;
        Ok(Mat2::new(e11, e12, e21, e22))
    }
}
