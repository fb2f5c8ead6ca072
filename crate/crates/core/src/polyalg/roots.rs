use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::IntPoly;
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-12;

const GRID: i64 = 256;

/// Smallest positive root with the exact rational bracket it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct Root {
    pub value: f64,
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Root {
    /// True when `p` has opposite exact signs at `value - tol` and
    /// `value + tol`.
    pub fn certify(&self, p: &IntPoly, tol: f64) -> bool {
        let (Some(r), Some(t)) = (
            BigRational::from_float(self.value),
            BigRational::from_float(tol),
        ) else {
            return false;
        };
        let a = sign(p, &(&r - &t));
        let b = sign(p, &(&r + &t));
        a != Ordering::Equal && b != Ordering::Equal && a != b
    }
}

fn sign(p: &IntPoly, x: &BigRational) -> Ordering {
    p.sign_at(x.numer(), x.denom())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

// Candidate points, increasing: geometric up from the root-free radius,
// then a uniform grid on (0, 1], then doubling up to the Cauchy bound.
fn scan_points(p: &IntPoly) -> Vec<BigRational> {
    let a0 = p.coeff(0).abs();
    let tail = p
        .coeffs()
        .iter()
        .skip(1)
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    let lead = p.leading().abs();
    let max_all = p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    let lb = BigRational::new(a0.clone(), &a0 + &tail);
    let cauchy = BigRational::one() + BigRational::new(max_all, lead);

    let grid0 = rat(1, GRID);
    let mut pts = Vec::new();
    let mut x = lb;
    while x < grid0 {
        pts.push(x.clone());
        x = &x * BigRational::from_integer(BigInt::from(2));
    }
    pts.extend((1..=GRID).map(|j| rat(j, GRID)));
    let mut x = BigRational::from_integer(BigInt::from(2));
    while x < cauchy {
        pts.push(x.clone());
        x = &x * BigRational::from_integer(BigInt::from(2));
    }
    pts.push(cauchy);
    pts
}

/// Least positive real root of `p`, bracketed by exact-sign bisection to
/// width below `tol`. Needs `p(0) > 0`.
pub fn smallest_positive_root(p: &IntPoly, tol: f64) -> Result<Root> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParams(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if !p.coeff(0).is_positive() {
        return Err(Error::InvalidParams(
            "polynomial must be positive at 0".into(),
        ));
    }
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::NoPositiveRoot);
    }
    let mut lo = BigRational::zero();
    let mut hi = None;
    for x in scan_points(p) {
        match sign(p, &x) {
            Ordering::Greater => lo = x,
            Ordering::Equal => {
                return Ok(Root {
                    value: x.to_f64().unwrap_or(f64::NAN),
                    lo: x.clone(),
                    hi: x,
                })
            }
            Ordering::Less => {
                hi = Some(x);
                break;
            }
        }
    }
    let mut hi = hi.ok_or(Error::NoPositiveRoot)?;
    let width = BigRational::from_float(tol / 4.0).expect("finite tolerance");
    let half = rat(1, 2);
    while &hi - &lo > width {
        let mid = (&lo + &hi) * &half;
        match sign(p, &mid) {
            Ordering::Greater => lo = mid,
            Ordering::Less => hi = mid,
            Ordering::Equal => {
                return Ok(Root {
                    value: mid.to_f64().unwrap_or(f64::NAN),
                    lo: mid.clone(),
                    hi: mid,
                })
            }
        }
    }
    let value = ((&lo + &hi) * &half).to_f64().unwrap_or(f64::NAN);
    Ok(Root { value, lo, hi })
}
