//! Vertex counts of one-dimensional pooling polytopes.
//!
//! A vertex is a word `w` with `w[j]` in window `j`. After subtracting `s*j`
//! from each letter, consecutive letters must avoid the forbidden arcs of the
//! digraph `D_{k,s}`, so counts are sums of entries of powers of its
//! adjacency matrix.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::model::spec_1d;
use crate::oracle::{enumerate_vertices_with, OracleConfig};
use crate::polyalg::{
    det_poly, gf_equal, gf_from_matrix, series_coeffs, smallest_positive_root, IntPoly, RationalGF,
    TransferMatrix, DEFAULT_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OneDimParams {
    pub k: usize,
    pub s: usize,
}

impl OneDimParams {
    pub fn new(k: usize, s: usize) -> Result<Self> {
        if k == 0 || s == 0 {
            return Err(Error::InvalidParams(format!(
                "need k, s >= 1, got ({k}, {s})"
            )));
        }
        Ok(Self { k, s })
    }

    /// `k/s - 1` when `s` divides `k`.
    pub fn r(&self) -> Option<usize> {
        (self.k % self.s == 0).then(|| self.k / self.s - 1)
    }
}

/// Arc `a -> b` of `D_{k,s}` is missing.
fn forbidden(k: usize, s: usize, a: usize, b: usize) -> bool {
    k > s + 1 && a >= s && b < k - s && a - s != b
}

/// Adjacency matrix of `D_{k,s}` on the standardized letters `0..k`.
pub fn adjacency(k: usize, s: usize) -> Result<TransferMatrix> {
    if k <= s || s == 0 {
        return Err(Error::InvalidParams(format!(
            "adjacency needs k > s >= 1, got ({k}, {s})"
        )));
    }
    let rows = (0..k)
        .map(|a| (0..k).map(|b| u64::from(!forbidden(k, s, a, b))).collect())
        .collect::<Vec<Vec<u64>>>();
    TransferMatrix::from_u64(&rows)
}

/// Word test through standardization: `w[j] - s*j` must walk along `D_{k,s}`.
pub fn is_vertex_word(word: &[usize], k: usize, s: usize) -> Result<bool> {
    let mut std = Vec::with_capacity(word.len());
    for (j, &letter) in word.iter().enumerate() {
        if letter < s * j || letter >= s * j + k {
            return Err(Error::OutOfWindow {
                position: j,
                letter,
            });
        }
        std.push(letter - s * j);
    }
    Ok(std.windows(2).all(|p| !forbidden(k, s, p[0], p[1])))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountMethod {
    Oracle,
    Matrix,
    Gf,
    Closed,
}

impl CountMethod {
    pub fn name(self) -> &'static str {
        match self {
            CountMethod::Oracle => "oracle",
            CountMethod::Matrix => "matrix",
            CountMethod::Gf => "gf",
            CountMethod::Closed => "closed",
        }
    }
}

/// `b_n^{(k,s)}`, the number of vertices of the sum of `n` windows.
pub fn count_1d(n: usize, k: usize, s: usize, method: CountMethod) -> Result<BigInt> {
    count_1d_with(n, k, s, method, &OracleConfig::default())
}

pub fn count_1d_with(
    n: usize,
    k: usize,
    s: usize,
    method: CountMethod,
    config: &OracleConfig,
) -> Result<BigInt> {
    OneDimParams::new(k, s)?;
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    match method {
        CountMethod::Oracle => {
            let fam = spec_1d(n, k, s)?;
            Ok(BigInt::from(enumerate_vertices_with(&fam, config)?.len()))
        }
        CountMethod::Matrix => Ok(matrix_counts(k, s, n)?.pop().expect("n >= 1")),
        CountMethod::Gf => Ok(series_coeffs(&gf_1d(k, s)?, n - 1)?.swap_remove(n - 1)),
        CountMethod::Closed => closed_count(n, k, s),
    }
}

/// `[b_1, .., b_n]` by repeated vector-matrix products.
pub fn matrix_counts(k: usize, s: usize, n: usize) -> Result<Vec<BigInt>> {
    let a = adjacency(k, s)?;
    let mut row = vec![BigInt::one(); k];
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 {
            row = a.left_mul(&row);
        }
        out.push(row.iter().sum());
    }
    Ok(out)
}

fn closed_count(n: usize, k: usize, s: usize) -> Result<BigInt> {
    if k <= s + 1 {
        return trivial_count(n, k, s);
    }
    if in_large_strides(k, s) {
        return Ok(large_strides_terms(k, s, n).swap_remove(n - 1));
    }
    if k % s == 0 {
        let g = proportional_gf(k, s)?;
        return Ok(series_coeffs(&g, n)?.swap_remove(n));
    }
    Err(Error::RegimeNotCovered { k, s })
}

/// `F(x) = sum_{n>=0} b_{n+1} x^n`.
pub fn gf_1d(k: usize, s: usize) -> Result<RationalGF> {
    let a = adjacency(k, s)?;
    let ones = vec![1; k];
    gf_from_matrix(&a, &ones, &ones)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    LargeStrides,
    Proportional,
    ProportionalUnitStride,
    Trivial,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::LargeStrides => "large-strides",
            Regime::Proportional => "proportional-strides",
            Regime::ProportionalUnitStride => "proportional-strides-s1",
            Regime::Trivial => "trivial",
        }
    }
}

/// Closed-form `G(x)` together with every regime that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedGf {
    pub gf: RationalGF,
    pub regimes: Vec<Regime>,
}

pub fn in_large_strides(k: usize, s: usize) -> bool {
    k >= 2 && k.div_ceil(2) <= s && s + 2 <= k
}

fn c_large(k: usize, s: usize) -> i64 {
    ((k - s) * (k - s - 1)) as i64
}

/// `1/(1 - kx + (k-s)(k-s-1)x^2)`.
pub fn large_strides_gf(k: usize, s: usize) -> Result<RationalGF> {
    if !in_large_strides(k, s) {
        return Err(Error::RegimeNotCovered { k, s });
    }
    RationalGF::from_i64(&[1], &[1, -(k as i64), c_large(k, s)])
}

// b_1..b_n from the two-term recurrence.
fn large_strides_terms(k: usize, s: usize, n: usize) -> Vec<BigInt> {
    let kk = BigInt::from(k);
    let c = BigInt::from(c_large(k, s));
    let mut b = vec![kk.clone(), &kk * &kk - &c];
    while b.len() < n {
        let m = b.len();
        b.push(&kk * &b[m - 1] - &c * &b[m - 2]);
    }
    b.truncate(n);
    b
}

/// Closed form of `G(x)` for `k = s(r+1)`.
pub fn proportional_gf(k: usize, s: usize) -> Result<RationalGF> {
    if s == 0 || k <= s || k % s != 0 {
        return Err(Error::RegimeNotCovered { k, s });
    }
    let r = k / s - 1;
    let (si, ri) = (s as i64, r as i64);
    let mono = |c: i64, e: usize| IntPoly::monomial(BigInt::from(c), e);
    let num = &IntPoly::from_i64(&[1, ri * si - si - 2, -(ri * si - 1)]) + &mono(si, r + 1);
    let den = [
        IntPoly::from_i64(&[1, -2 * (si + 1), (si + 1) * (si + 1)]),
        mono(si, r + 1),
        mono(-si * si * (ri + 1), r + 2),
        mono(si * (ri * si - 1), r + 3),
    ]
    .iter()
    .fold(IntPoly::zero(), |acc, t| &acc + t);
    RationalGF::new(num, den)
}

/// The `s = 1` form written directly in `k`.
pub fn unit_stride_gf(k: usize) -> Result<RationalGF> {
    if k < 2 {
        return Err(Error::RegimeNotCovered { k, s: 1 });
    }
    let ki = k as i64;
    let mono = |c: i64, e: usize| IntPoly::monomial(BigInt::from(c), e);
    let num = &IntPoly::from_i64(&[1, ki - 4, -(ki - 2)]) + &mono(1, k);
    let den = [
        IntPoly::from_i64(&[1, -4, 4]),
        mono(1, k),
        mono(-ki, k + 1),
        mono(ki - 2, k + 2),
    ]
    .iter()
    .fold(IntPoly::zero(), |acc, t| &acc + t);
    RationalGF::new(num, den)
}

/// `G(x) = 1 + sum_{n>=1} b_n x^n` from every closed form that applies.
/// All applicable forms are compared, and a disagreement is an error.
pub fn gf_closed(k: usize, s: usize) -> Result<ClosedGf> {
    OneDimParams::new(k, s)?;
    if k <= s {
        return Err(Error::InvalidParams(format!(
            "closed forms need k > s, got ({k}, {s})"
        )));
    }
    let mut found: Vec<(Regime, RationalGF)> = Vec::new();
    if in_large_strides(k, s) {
        found.push((Regime::LargeStrides, large_strides_gf(k, s)?));
    }
    if k % s == 0 {
        found.push((Regime::Proportional, proportional_gf(k, s)?));
        if s == 1 {
            found.push((Regime::ProportionalUnitStride, unit_stride_gf(k)?));
        }
    }
    if k == s + 1 {
        found.push((
            Regime::Trivial,
            RationalGF::from_i64(&[1], &[1, -(k as i64)])?,
        ));
    }
    let Some((_, first)) = found.first() else {
        return Err(Error::RegimeNotCovered { k, s });
    };
    for (regime, g) in &found[1..] {
        if !gf_equal(first, g) {
            return Err(Error::VerificationFailure(format!(
                "{} form disagrees with {} form at (k, s) = ({k}, {s})",
                regime.name(),
                found[0].0.name()
            )));
        }
    }
    Ok(ClosedGf {
        gf: first.clone(),
        regimes: found.into_iter().map(|(r, _)| r).collect(),
    })
}

/// `b_{m+1}` from the explicit formulas, `s | k`, `1 <= m <= r + 2`.
pub fn closed_initial(m: usize, k: usize, s: usize) -> Result<BigInt> {
    let p = OneDimParams::new(k, s)?;
    let r = match p.r() {
        Some(r) if r >= 1 => r,
        _ => return Err(Error::RegimeNotCovered { k, s }),
    };
    if m == 0 || m > r + 2 {
        return Err(Error::IndexOutOfRange {
            index: m,
            lo: 1,
            hi: r + 2,
        });
    }
    let (kb, sb, rb) = (BigInt::from(k), BigInt::from(s), BigInt::from(r));
    let one = BigInt::one();
    let s1 = &sb + &one;
    if m <= r + 1 {
        let mb = BigInt::from(m);
        let inner = (&mb + &one) * &sb * (&kb - &sb - &one) + &kb + &sb * &s1;
        Ok(num_traits::pow(s1, m - 1) * inner)
    } else {
        let rs1 = &rb * &sb - &one;
        let inner = (&rb + BigInt::from(3)) * &sb * &rs1 + &sb * (&rb + &one) + &sb * &s1;
        Ok(num_traits::pow(s1, r + 1) * inner + &sb * &rs1 * &rs1)
    }
}

/// `k^n` for `1 < k <= s + 1`, and the single window case.
pub fn trivial_count(n: usize, k: usize, s: usize) -> Result<BigInt> {
    OneDimParams::new(k, s)?;
    if k > s + 1 || (k == 1 && n > 1) {
        return Err(Error::RegimeNotCovered { k, s });
    }
    Ok(num_traits::pow(BigInt::from(k), n))
}

/// `lim ln(b_n)/n`, from the smallest positive root of `det(I - xA)`.
pub fn growth_1d(k: usize, s: usize) -> Result<f64> {
    let d = det_poly(&adjacency(k, s)?);
    let rho = smallest_positive_root(&d, DEFAULT_TOL)?;
    Ok(-rho.value.ln())
}

/// The explicit growth constant for large strides.
pub fn growth_large_strides(k: usize, s: usize) -> Result<f64> {
    if !in_large_strides(k, s) {
        return Err(Error::RegimeNotCovered { k, s });
    }
    let (kf, c) = (k as f64, c_large(k, s) as f64);
    Ok((2.0 * c / (kf - (kf * kf - 4.0 * c).sqrt())).ln())
}

/// Floating-point evaluation of `b_n` through the roots `w_-`, `w_+`.
pub fn large_strides_float(n: usize, k: usize, s: usize) -> Result<f64> {
    if !in_large_strides(k, s) {
        return Err(Error::RegimeNotCovered { k, s });
    }
    let (kf, c) = (k as f64, c_large(k, s) as f64);
    let disc = (kf * kf - 4.0 * c).sqrt();
    let (wm, wp) = (kf - disc, kf + disc);
    let ni = n as i32;
    let val = wm.powi(ni) + wp.powi(ni) + 2.0 * kf / (wp - wm) * (wp.powi(ni) - wm.powi(ni));
    Ok(val / 2f64.powi(ni + 1))
}

/// Residuals `b_{n+2} - k b_{n+1} + (k-s)(k-s-1) b_n` over exact matrix
/// counts, for `n = 1..=upto`.
pub fn large_strides_residuals(k: usize, s: usize, upto: usize) -> Result<Vec<BigInt>> {
    let b = matrix_counts(k, s, upto + 2)?;
    let (kk, c) = (BigInt::from(k), BigInt::from(c_large(k, s)));
    Ok((0..upto)
        .map(|i| &b[i + 2] - &kk * &b[i + 1] + &c * &b[i])
        .collect())
}
