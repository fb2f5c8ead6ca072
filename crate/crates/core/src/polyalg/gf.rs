use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Rational generating function `num/den` kept in reduced form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalGF {
    num: IntPoly,
    den: IntPoly,
}

impl RationalGF {
    /// Reduces `num/den`: removes the common factor over the rationals and
    /// the integer content, then makes `den(0)` positive.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self {
                num,
                den: IntPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            let e = num.degree().max(den.degree()).unwrap_or(0) + 1;
            (scaled_div(&num, &g, e), scaled_div(&den, &g, e))
        };
        let c = num.content().gcd(&den.content());
        num = num.div_scalar(&c);
        den = den.div_scalar(&c);
        if den.coeff(0).is_zero() {
            return Err(Error::InvalidParams(
                "denominator must not vanish at 0".into(),
            ));
        }
        if den.coeff(0).is_negative() {
            num = -&num;
            den = -&den;
        }
        Ok(Self { num, den })
    }

    /// Stores the pair as given; only the denominator is validated.
    pub fn raw(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self { num, den })
    }

    pub fn from_i64(num: &[i64], den: &[i64]) -> Result<Self> {
        Self::new(IntPoly::from_i64(num), IntPoly::from_i64(den))
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    /// `1 + x * self`.
    pub fn one_plus_x_times(&self) -> Result<Self> {
        Self::new(&self.den + &self.num.shift(1), self.den.clone())
    }

    /// `x * self`.
    pub fn times_x(&self) -> Result<Self> {
        Self::new(self.num.shift(1), self.den.clone())
    }

    pub fn series(&self, upto: usize) -> Result<Vec<BigInt>> {
        series_coeffs(self, upto)
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

// Divides `a` by a factor that divides it over Q, after scaling by
// `lc(g)^e` so the quotient stays integral.
fn scaled_div(a: &IntPoly, g: &IntPoly, e: usize) -> IntPoly {
    let lg = g.leading();
    let mut k = BigInt::from(1);
    for _ in 0..e {
        k *= &lg;
    }
    a.scale(&k).div_exact(g).expect("gcd divides over Q")
}

/// Cross-multiplication test, valid on non-reduced inputs too.
pub fn gf_equal(a: &RationalGF, b: &RationalGF) -> bool {
    &a.num * &b.den == &b.num * &a.den
}

/// Taylor coefficients `c_0..=c_upto` computed by the recurrence carried by
/// the denominator.
pub fn series_coeffs(gf: &RationalGF, upto: usize) -> Result<Vec<BigInt>> {
    let d0 = gf.den.coeff(0);
    if d0.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let den = gf.den.coeffs();
    let mut out: Vec<BigInt> = Vec::with_capacity(upto + 1);
    for n in 0..=upto {
        let mut acc = gf.num.coeff(n);
        for (i, d) in den.iter().enumerate().skip(1).take(n) {
            acc -= d * &out[n - i];
        }
        let (q, r) = acc.div_rem(&d0);
        if !r.is_zero() {
            return Err(Error::NonIntegerCoefficient { index: n });
        }
        out.push(q);
    }
    Ok(out)
}
