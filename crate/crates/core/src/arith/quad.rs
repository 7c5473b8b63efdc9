use std::fmt;

use crate::arith::Rational;
use crate::error::{Error, Result};

/// An element `rat + irr * sqrt(disc)` of the ring `Q(sqrt(disc))`.
///
/// The square root stays symbolic even when `disc` happens to be a rational
/// square; [`QuadElement::normalized`] folds it into the rational part.
/// Elements only combine with elements sharing the same `disc`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadElement {
    pub rat: Rational,
    pub irr: Rational,
    pub disc: Rational,
}

impl QuadElement {
    pub fn new(rat: Rational, irr: Rational, disc: Rational) -> Self {
        QuadElement { rat, irr, disc }
    }

    pub fn from_rational(rat: Rational, disc: &Rational) -> Self {
        QuadElement::new(rat, Rational::zero(), disc.clone())
    }

    /// `sqrt(disc)` itself.
    pub fn sqrt_of(disc: &Rational) -> Self {
        QuadElement::new(Rational::zero(), Rational::one(), disc.clone())
    }

    pub fn zero(disc: &Rational) -> Self {
        QuadElement::from_rational(Rational::zero(), disc)
    }

    pub fn one(disc: &Rational) -> Self {
        QuadElement::from_rational(Rational::one(), disc)
    }

    fn check(&self, rhs: &QuadElement) -> Result<()> {
        if self.disc != rhs.disc {
            return Err(Error::MismatchedDiscriminant {
                left: self.disc.clone(),
                right: rhs.disc.clone(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &QuadElement) -> Result<QuadElement> {
        self.check(rhs)?;
        Ok(QuadElement::new(&self.rat + &rhs.rat, &self.irr + &rhs.irr, self.disc.clone()))
    }

    pub fn try_sub(&self, rhs: &QuadElement) -> Result<QuadElement> {
        self.check(rhs)?;
        Ok(QuadElement::new(&self.rat - &rhs.rat, &self.irr - &rhs.irr, self.disc.clone()))
    }

    /// `(x1 + y1 r)(x2 + y2 r) = (x1 x2 + y1 y2 D) + (x1 y2 + x2 y1) r`
    pub fn try_mul(&self, rhs: &QuadElement) -> Result<QuadElement> {
        self.check(rhs)?;
        let rat = &self.rat * &rhs.rat + &self.irr * &rhs.irr * &self.disc;
        let irr = &self.rat * &rhs.irr + &rhs.rat * &self.irr;
        Ok(QuadElement::new(rat, irr, self.disc.clone()))
    }

    pub fn scale(&self, c: &Rational) -> QuadElement {
        QuadElement::new(&self.rat * c, &self.irr * c, self.disc.clone())
    }

    pub fn neg(&self) -> QuadElement {
        QuadElement::new(-&self.rat, -&self.irr, self.disc.clone())
    }

    pub fn conj(&self) -> QuadElement {
        QuadElement::new(self.rat.clone(), -&self.irr, self.disc.clone())
    }

    /// Field norm `rat^2 - irr^2 * disc`.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - &self.irr * &self.irr * &self.disc
    }

    /// Multiplicative inverse via the conjugate. Fails when the norm vanishes
    /// (zero, or a zero divisor when `disc` is a rational square).
    pub fn try_inv(&self) -> Result<QuadElement> {
        let n = self.norm().inv()?;
        Ok(self.conj().scale(&n))
    }

    pub fn pow(&self, exp: u64) -> QuadElement {
        let mut acc = QuadElement::one(&self.disc);
        let mut sq = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&sq).expect("same discriminant");
            }
            e >>= 1;
            if e > 0 {
                sq = sq.try_mul(&sq).expect("same discriminant");
            }
        }
        acc
    }

    /// Folds `sqrt(disc)` into the rational part when `disc = r^2` for a
    /// rational `r >= 0`.
    pub fn normalized(&self) -> QuadElement {
        if self.irr.is_zero() {
            return self.clone();
        }
        match self.disc.sqrt_exact() {
            Some(root) => QuadElement::new(
                &self.rat + &self.irr * &root,
                Rational::zero(),
                self.disc.clone(),
            ),
            None => self.clone(),
        }
    }

    /// The rational value of this element, if it has one after normalization.
    pub fn to_rational(&self) -> Option<Rational> {
        let n = self.normalized();
        n.irr.is_zero().then_some(n.rat)
    }

    pub fn is_rational_valued(&self) -> bool {
        self.to_rational().is_some()
    }
}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.rat, self.irr, self.disc)
    }
}

impl fmt::Debug for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn q(x: &str, y: &str, d: &str) -> QuadElement {
        QuadElement::new(r(x), r(y), r(d))
    }

    // Schoolbook product written out independently of `try_mul`.
    fn expand(x: &QuadElement, y: &QuadElement) -> (Rational, Rational) {
        let terms = [
            (&x.rat * &y.rat, false),
            (&x.rat * &y.irr, true),
            (&x.irr * &y.rat, true),
            (&x.irr * &y.irr * &x.disc, false),
        ];
        let mut rat = Rational::zero();
        let mut irr = Rational::zero();
        for (t, is_root) in terms {
            if is_root {
                irr = irr + t;
            } else {
                rat = rat + t;
            }
        }
        (rat, irr)
    }

    #[test]
    fn sqrt_squared_is_disc() {
        let d = r("7/3");
        let s = QuadElement::sqrt_of(&d);
        assert_eq!(s.try_mul(&s).unwrap(), QuadElement::from_rational(d.clone(), &d));
    }

    #[test]
    fn one_is_neutral() {
        let x = q("2/5", "-3", "11");
        assert_eq!(QuadElement::one(&r("11")).try_mul(&x).unwrap(), x);
    }

    #[test]
    fn golden_ratio_powers() {
        let phi = q("1/2", "1/2", "5");
        let (rat, irr) = expand(&phi, &phi);
        assert_eq!((rat.clone(), irr.clone()), (r("3/2"), r("1/2")));
        assert_eq!(phi.try_mul(&phi).unwrap(), q("3/2", "1/2", "5"));

        let sq = QuadElement::new(rat, irr, r("5"));
        let (rat3, irr3) = expand(&sq, &phi);
        assert_eq!((rat3, irr3), (r("2"), r("1")));
        assert_eq!(phi.pow(3), q("2", "1", "5"));
        assert_eq!(phi.pow(0), QuadElement::one(&r("5")));
        assert_eq!(phi.pow(1), phi);
    }

    #[test]
    fn mismatched_discriminants_rejected() {
        let x = q("1", "1", "2");
        let y = q("1", "1", "3");
        assert!(matches!(x.try_mul(&y), Err(Error::MismatchedDiscriminant { .. })));
        assert!(matches!(x.try_add(&y), Err(Error::MismatchedDiscriminant { .. })));
    }

    #[test]
    fn inverse_roundtrip() {
        let x = q("3", "-2/7", "6");
        let inv = x.try_inv().unwrap();
        assert_eq!(x.try_mul(&inv).unwrap(), QuadElement::one(&r("6")));
        assert_eq!(QuadElement::zero(&r("6")).try_inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn perfect_square_discriminant_normalizes() {
        // 1 + 2*sqrt(9/4) = 4
        let x = q("1", "2", "9/4");
        assert_eq!(x.to_rational(), Some(r("4")));
        assert_eq!(q("1", "2", "5").to_rational(), None);
        assert_eq!(q("1", "0", "5").to_rational(), Some(r("1")));
        // negative discriminant never folds
        assert_eq!(q("1", "1", "-4").to_rational(), None);
    }
}
