use std::fmt;

use num_traits::Zero;

use super::poly::Polynomial;
use super::ring::RingRef;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Quotient of two polynomials.  Normalized form: zero is `0/1`; the
/// denominator is primitive with positive leading coefficient; common
/// scalar and monomial content between numerator and denominator is
/// removed, and an exact-division reduction is attempted.  Full
/// multivariate gcd reduction is deliberately not performed.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> RationalFunction {
        assert!(!den.is_zero(), "zero denominator");
        let mut rf = RationalFunction { num, den };
        rf.normalize();
        rf
    }

    pub fn from_poly(p: Polynomial) -> RationalFunction {
        let one = Polynomial::one(p.ring());
        RationalFunction { num: p, den: one }
    }

    pub fn zero(ring: &RingRef) -> RationalFunction {
        RationalFunction {
            num: Polynomial::zero(ring),
            den: Polynomial::one(ring),
        }
    }

    pub fn one(ring: &RingRef) -> RationalFunction {
        RationalFunction {
            num: Polynomial::one(ring),
            den: Polynomial::one(ring),
        }
    }

    pub fn constant(ring: &RingRef, c: Scalar) -> RationalFunction {
        RationalFunction {
            num: Polynomial::constant(ring, c),
            den: Polynomial::one(ring),
        }
    }

    pub fn numer(&self) -> &Polynomial {
        &self.num
    }

    pub fn denom(&self) -> &Polynomial {
        &self.den
    }

    pub fn ring(&self) -> &RingRef {
        self.num.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial this reduces to, when the denominator is a unit.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        if self.den.is_constant() {
            let c = self.den.constant_term();
            Some(self.num.mul_scalar(&c.recip()))
        } else {
            None
        }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Polynomial::one(self.num.ring());
            return;
        }
        if let Some(q) = self.num.div_exact(&self.den) {
            self.num = q;
            self.den = Polynomial::one(self.num.ring());
            return;
        }
        // strip content shared by numerator and denominator
        let gc = super::scalar::scalar_gcd(&self.num.content(), &self.den.content());
        let nm = self.num.monomial_content();
        let dm = self.den.monomial_content();
        let shared: Vec<u16> = nm
            .0
            .iter()
            .zip(dm.0.iter())
            .map(|(a, b)| *a.min(b))
            .collect();
        let shared = super::poly::Monomial(shared.into_boxed_slice());
        let mut num = self.num.div_monomial(&shared).mul_scalar(&gc.recip());
        let mut den = self.den.div_monomial(&shared).mul_scalar(&gc.recip());
        // primitive denominator with positive leading coefficient
        let dc = den.content();
        num = num.mul_scalar(&dc.recip());
        den = den.mul_scalar(&dc.recip());
        self.num = num;
        self.den = den;
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        if self.den == other.den {
            return RationalFunction::new(self.num.add(&other.num), self.den.clone());
        }
        RationalFunction::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        if self.den == other.den {
            return RationalFunction::new(self.num.sub(&other.num), self.den.clone());
        }
        RationalFunction::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn mul_poly(&self, p: &Polynomial) -> RationalFunction {
        RationalFunction::new(self.num.mul(p), self.den.clone())
    }

    pub fn recip(&self) -> RationalFunction {
        assert!(!self.is_zero(), "division by zero rational function");
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RationalFunction) -> RationalFunction {
        self.mul(&other.recip())
    }

    /// Quotient-rule partial derivative.
    pub fn diff(&self, v: usize) -> RationalFunction {
        if self.is_polynomial() {
            return RationalFunction {
                num: self.num.diff(v),
                den: self.den.clone(),
            };
        }
        let n = self.num.diff(v).mul(&self.den).sub(&self.num.mul(&self.den.diff(v)));
        RationalFunction::new(n, self.den.mul(&self.den))
    }

    /// Evaluate at a point; errors when the denominator vanishes there.
    pub fn evaluate_indexed(&self, point: &[Option<Scalar>]) -> Result<Scalar> {
        let d = self.den.evaluate_indexed(point)?;
        if d.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        Ok(self.num.evaluate_indexed(point)? / d)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            let p = self.as_polynomial().unwrap();
            return write!(f, "{p}");
        }
        let num = if self.num.n_terms() > 1 {
            format!("({})", self.num)
        } else {
            format!("{}", self.num)
        };
        write!(f, "{num}/({})", self.den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
