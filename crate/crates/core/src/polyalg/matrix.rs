use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::gf::RationalGF;
use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Square matrix with nonnegative integer entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransferMatrix {
    size: usize,
    entries: Vec<BigInt>,
}

impl TransferMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::InvalidParams("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(size * size);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != size {
                return Err(Error::InvalidParams(format!(
                    "row {i} has length {}, expected {size}",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|e| e.is_negative()) {
                return Err(Error::InvalidParams(format!(
                    "negative entry {bad} in row {i}"
                )));
            }
            entries.extend(row);
        }
        Ok(Self { size, entries })
    }

    pub fn from_u64(rows: &[Vec<u64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&e| BigInt::from(e)).collect())
                .collect(),
        )
    }

    pub fn identity(size: usize) -> Self {
        let mut entries = vec![BigInt::zero(); size * size];
        for i in 0..size {
            entries[i * size + i] = BigInt::one();
        }
        Self { size, entries }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.size).map(|i| self.row(i).to_vec()).collect()
    }

    /// Number of nonzero entries.
    pub fn support_size(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        let p = self.size;
        let mut entries = vec![BigInt::zero(); p * p];
        for i in 0..p {
            for k in 0..p {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..p {
                    entries[i * p + j] += a * other.get(k, j);
                }
            }
        }
        Self { size: p, entries }
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.size);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `v * M` for a row vector `v`.
    pub fn left_mul(&self, v: &[BigInt]) -> Vec<BigInt> {
        let p = self.size;
        let mut out = vec![BigInt::zero(); p];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += vi * self.get(i, j);
            }
        }
        out
    }

    /// `M * v` for a column vector `v`.
    pub fn right_mul(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.size)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn entry_sum(&self) -> BigInt {
        self.entries.iter().sum()
    }

    /// Rows of `I - x0 * M`.
    fn shifted(&self, x0: &BigInt) -> Vec<Vec<BigInt>> {
        (0..self.size)
            .map(|i| {
                (0..self.size)
                    .map(|j| {
                        let d = if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        };
                        d - x0 * self.get(i, j)
                    })
                    .collect()
            })
            .collect()
    }
}

/// Fraction-free determinant.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Exact rank by fraction-free elimination.
pub fn exact_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..n {
        let Some(piv) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        for i in rank + 1..m {
            for j in col + 1..n {
                let v = &a[i][j] * &a[rank][col] - &a[i][col] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == m {
            break;
        }
    }
    rank
}

/// Interpolates the polynomial of degree below `values.len()` through
/// `(i, values[i])`.
pub(crate) fn interpolate(values: &[BigInt]) -> IntPoly {
    let pts = values.len();
    let mut acc: Vec<BigRational> = vec![BigRational::zero(); pts];
    for (i, yi) in values.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        // basis polynomial prod_{j != i} (x - j) / (i - j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigInt::one();
        for j in 0..pts {
            if j == i {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (t, b) in basis.iter().enumerate() {
                next[t + 1] += b;
                next[t] -= b * BigRational::from_integer(BigInt::from(j));
            }
            basis = next;
            denom *= BigInt::from(i as i64 - j as i64);
        }
        let scale = BigRational::new(yi.clone(), denom);
        for (t, b) in basis.iter().enumerate() {
            acc[t] += b * &scale;
        }
    }
    IntPoly::new(
        acc.into_iter()
            .map(|c| {
                assert!(c.is_integer(), "interpolated determinant must be integral");
                c.to_integer()
            })
            .collect(),
    )
}

/// `det(I - x M)` via exact evaluation at `x = 0..=p` and interpolation.
pub fn det_poly(m: &TransferMatrix) -> IntPoly {
    let values: Vec<BigInt> = (0..=m.size)
        .into_par_iter()
        .map(|x0| bareiss_det(m.shifted(&BigInt::from(x0))))
        .collect();
    interpolate(&values)
}

/// `sum_n (left * M^n * right) x^n` as a reduced rational function.
pub fn gf_from_matrix(m: &TransferMatrix, left: &[i64], right: &[i64]) -> Result<RationalGF> {
    let p = m.size;
    if left.len() != p || right.len() != p {
        return Err(Error::InvalidParams(format!(
            "weight vectors must have length {p}, got {} and {}",
            left.len(),
            right.len()
        )));
    }
    let right: Vec<BigInt> = right.iter().map(|&v| BigInt::from(v)).collect();
    let mut row: Vec<BigInt> = left.iter().map(|&v| BigInt::from(v)).collect();
    let mut series = Vec::with_capacity(p);
    for _ in 0..p {
        series.push(row.iter().zip(&right).map(|(a, b)| a * b).sum::<BigInt>());
        row = m.left_mul(&row);
    }
    let den = det_poly(m);
    let num = (&den * &IntPoly::new(series)).truncate(p);
    RationalGF::new(num, den)
}
