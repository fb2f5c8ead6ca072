//! Vertex counts for 2x2 pooling on a 3 x n input.
//!
//! The polytope `Q_n` sums the square windows of a 3 x n grid. Its vertex
//! count `V_n` satisfies a four-term recurrence read off a 6x6 transfer
//! matrix; the 14 vertices of `Q_2` index the finer 14x14 matrix `A`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::face::{is_face, VertexSelection};
use crate::model::spec_3xn;
use crate::oracle::{enumerate_vertices_with, OracleConfig};
use crate::polyalg::{
    gf_equal, gf_from_matrix, series_coeffs, smallest_positive_root, RationalGF, TransferMatrix,
    DEFAULT_TOL,
};
use crate::seq1d::{count_1d, CountMethod};

/// Grid cell `(row, col)`.
pub type Cell = (usize, usize);

/// The 14 vertices of `Q_2` as (cell chosen in the upper window, cell chosen
/// in the lower window), in the fixed reference order.
pub const Q2_ORDER: [(Cell, Cell); 14] = [
    ((0, 0), (1, 0)),
    ((0, 0), (1, 1)),
    ((0, 0), (2, 0)),
    ((0, 0), (2, 1)),
    ((0, 1), (1, 0)),
    ((0, 1), (1, 1)),
    ((0, 1), (2, 0)),
    ((0, 1), (2, 1)),
    ((1, 0), (1, 0)),
    ((1, 0), (2, 0)),
    ((1, 0), (2, 1)),
    ((1, 1), (1, 1)),
    ((1, 1), (2, 0)),
    ((1, 1), (2, 1)),
];

/// Printed 14x14 matrix; row `i`, column `j` (0-based).
const A14_PRINTED: [&str; 14] = [
    "11101110110000",
    "11111111110000",
    "10111011111000",
    "11111111111000",
    "11101110110110",
    "11111111111111",
    "10111011111011",
    "11111111111111",
    "11100000110110",
    "10110000111011",
    "11110000111111",
    "11111111111111",
    "10110011111011",
    "11111111111111",
];

const B6: [[u64; 6]; 6] = [
    [2, 2, 1, 1, 1, 1],
    [2, 3, 1, 1, 2, 1],
    [2, 2, 1, 2, 1, 1],
    [2, 3, 1, 2, 2, 1],
    [2, 4, 1, 2, 4, 1],
    [2, 2, 1, 0, 1, 1],
];

fn flat(n: usize, (i, j): Cell) -> usize {
    i * n + j
}

/// The vertices of `Q_2` in reference order.
pub fn q2_vertices() -> Vec<VertexSelection> {
    let fam = spec_3xn(2).expect("n = 2 is valid");
    Q2_ORDER
        .iter()
        .map(|&(a, b)| {
            VertexSelection::new(&fam, vec![flat(2, a), flat(2, b)])
                .expect("cells lie in their windows")
        })
        .collect()
}

fn printed_a14() -> TransferMatrix {
    let rows: Vec<Vec<u64>> = A14_PRINTED
        .iter()
        .map(|r| r.bytes().map(|b| u64::from(b - b'0')).collect())
        .collect();
    TransferMatrix::from_u64(&rows).expect("square 0/1 matrix")
}

/// Entry `(i, j)` is 1 when vertex `j` placed on the left two columns of
/// the 3x3 grid and vertex `i` placed on the right two columns sum to a
/// vertex of `Q_3`.
pub fn derive_a14() -> TransferMatrix {
    let fam = spec_3xn(3).expect("n = 3 is valid");
    let shift = |(r, c): Cell| (r, c + 1);
    let rows: Vec<Vec<u64>> = Q2_ORDER
        .iter()
        .map(|&(ri_top, ri_bottom)| {
            Q2_ORDER
                .iter()
                .map(|&(lj_top, lj_bottom)| {
                    // windows of Q_3: upper-left, upper-right, lower-left, lower-right
                    let word = vec![
                        flat(3, lj_top),
                        flat(3, shift(ri_top)),
                        flat(3, lj_bottom),
                        flat(3, shift(ri_bottom)),
                    ];
                    let v = VertexSelection::new(&fam, word).expect("cells lie in their windows");
                    u64::from(is_face(
                        &v.to_face_selection(&fam).expect("valid selection"),
                    ))
                })
                .collect()
        })
        .collect();
    TransferMatrix::from_u64(&rows).expect("square 0/1 matrix")
}

/// The 14x14 matrix, derived and checked against the printed one.
pub fn a14() -> Result<TransferMatrix> {
    let a = derive_a14();
    if a != printed_a14() {
        return Err(Error::VerificationFailure(
            "derived 14x14 matrix differs from the printed one".into(),
        ));
    }
    Ok(a)
}

pub fn b6() -> TransferMatrix {
    TransferMatrix::from_u64(&B6.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
        .expect("square matrix")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method2d {
    Oracle,
    A14,
    B6,
    Gf,
}

impl Method2d {
    pub fn name(self) -> &'static str {
        match self {
            Method2d::Oracle => "oracle",
            Method2d::A14 => "a14",
            Method2d::B6 => "b6",
            Method2d::Gf => "gf",
        }
    }
}

/// `V_n`, the number of vertices of `Q_n`.
pub fn count_2d(n: usize, method: Method2d) -> Result<BigInt> {
    count_2d_with(n, method, &OracleConfig::default())
}

pub fn count_2d_with(n: usize, method: Method2d, config: &OracleConfig) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "3 x n grid needs n >= 2, got {n}"
        )));
    }
    match method {
        Method2d::Oracle => Ok(BigInt::from(
            enumerate_vertices_with(&spec_3xn(n)?, config)?.len(),
        )),
        Method2d::A14 => match n {
            2 => Ok(BigInt::from(14)),
            3 => Ok(a14()?.entry_sum()),
            _ => Err(Error::MethodRange { method: "a14", n }),
        },
        Method2d::B6 => Ok(b6().pow(n as u64).get(4, 5).clone()),
        Method2d::Gf => Ok(series_coeffs(&gf_2d(), n)?.swap_remove(n)),
    }
}

fn printed_gf_2d() -> RationalGF {
    RationalGF::from_i64(&[0, 1, 1, -1], &[1, -13, 31, -20, 4]).expect("nonzero denominator")
}

/// `sum_n V_n x^n`; the printed closed form, confirmed against the 6x6
/// transfer matrix.
pub fn gf_2d() -> RationalGF {
    let printed = printed_gf_2d();
    let from_b = gf_from_matrix(&b6(), &[0, 0, 0, 0, 1, 0], &[0, 0, 0, 0, 0, 1])
        .expect("weights match the matrix size");
    assert!(
        gf_equal(&printed, &from_b),
        "6x6 matrix disagrees with the closed form"
    );
    printed
}

/// Vertices of the 2 x n grid under 2x2 pooling, equal to `b_{n-1}^{(4,2)}`.
pub fn count_2xn(n: usize) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "2 x n grid needs n >= 2, got {n}"
        )));
    }
    let b = count_1d(n - 1, 4, 2, CountMethod::Matrix)?;
    let g = RationalGF::from_i64(&[0, 1], &[1, -4, 2])?;
    let via_gf = series_coeffs(&g, n)?.swap_remove(n);
    if via_gf != b {
        return Err(Error::VerificationFailure(format!(
            "2 x {n}: matrix count {b} differs from series coefficient {via_gf}"
        )));
    }
    Ok(b)
}

/// Vertices of `Q_n` grouped by the `Q_2` vertex formed by their last two
/// columns; `counts[i]` belongs to `Q2_ORDER[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCounts {
    pub n: usize,
    pub counts: Vec<BigInt>,
}

impl ClassCounts {
    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }

    /// Entry at a 1-based position.
    pub fn at(&self, pos: usize) -> &BigInt {
        &self.counts[pos - 1]
    }
}

fn last_pair_class(n: usize, word: &[usize]) -> usize {
    let top = word[n - 2];
    let bottom = word[2 * (n - 1) - 1];
    let to_q2 = |a: usize| (a / n, a % n - (n - 2));
    let key = (to_q2(top), to_q2(bottom));
    Q2_ORDER
        .iter()
        .position(|&q| q == key)
        .expect("restriction of a vertex is a vertex")
}

pub fn class_counts(n: usize) -> Result<ClassCounts> {
    class_counts_with(n, &OracleConfig::default())
}

pub fn class_counts_with(n: usize, config: &OracleConfig) -> Result<ClassCounts> {
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "3 x n grid needs n >= 2, got {n}"
        )));
    }
    let fam = spec_3xn(n)?;
    let mut counts = vec![BigInt::zero(); 14];
    for v in enumerate_vertices_with(&fam, config)? {
        counts[last_pair_class(n, v.word())] += 1;
    }
    Ok(ClassCounts { n, counts })
}

/// `lim ln(V_n)/n`.
pub fn growth_2d() -> Result<f64> {
    let rho = smallest_positive_root(gf_2d().den(), DEFAULT_TOL)?;
    Ok(-rho.value.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{windows_from_spec, PoolingSpec};
    use crate::oracle::enumerate_vertices;
    use crate::seq1d::growth_1d;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn q2_list_is_the_vertex_set() {
        let list = q2_vertices();
        assert_eq!(list.len(), 14);
        let fam = spec_3xn(2).unwrap();
        for v in &list {
            assert!(is_face(&v.to_face_selection(&fam).unwrap()));
        }
        let mut sorted = list.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, enumerate_vertices(&fam).unwrap());
    }

    #[test]
    fn excluded_pairs() {
        let fam = spec_3xn(2).unwrap();
        let mut missing = Vec::new();
        for &a in fam.window(0) {
            for &b in fam.window(1) {
                let v = VertexSelection::new(&fam, vec![a, b]).unwrap();
                if !is_face(&v.to_face_selection(&fam).unwrap()) {
                    missing.push((a, b));
                }
            }
        }
        assert_eq!(missing, vec![(2, 3), (3, 2)]);
    }

    #[test]
    fn printed_list_with_duplicate_is_not_the_vertex_set() {
        let mut as_printed = Q2_ORDER;
        as_printed[5] = ((0, 0), (1, 1));
        let mut cells = as_printed.to_vec();
        cells.sort();
        cells.dedup();
        assert_eq!(cells.len(), 13);
    }

    #[test]
    fn derived_matrix_matches_printed() {
        let a = derive_a14();
        assert_eq!(a, printed_a14());
        assert_eq!(a.entry_sum(), BigInt::from(150));
        assert_eq!(a.get(0, 2), &BigInt::from(1));
        assert_eq!(a.get(1, 10), &BigInt::from(0));
    }

    #[test]
    fn counts_examples() {
        assert_eq!(count_2d(2, Method2d::B6).unwrap(), BigInt::from(14));
        assert_eq!(count_2d(4, Method2d::Gf).unwrap(), BigInt::from(1536));
        let by_recurrence = 13 * 15594 - 31 * 1536 + 20 * 150 - 4 * 14;
        assert_eq!(by_recurrence, 158050);
        assert_eq!(
            count_2d(6, Method2d::B6).unwrap(),
            BigInt::from(by_recurrence)
        );
        assert_eq!(
            count_2d(6, Method2d::Oracle).unwrap(),
            BigInt::from(by_recurrence)
        );
        assert_eq!(count_2d(3, Method2d::A14).unwrap(), BigInt::from(150));
        assert!(matches!(
            count_2d(4, Method2d::A14),
            Err(Error::MethodRange { .. })
        ));
        assert!(count_2d(1, Method2d::Gf).is_err());
    }

    #[test]
    fn methods_agree() {
        for n in 2..=20 {
            let b = count_2d(n, Method2d::B6).unwrap();
            assert_eq!(b, count_2d(n, Method2d::Gf).unwrap(), "n={n}");
            if n <= 4 {
                assert_eq!(b, count_2d(n, Method2d::Oracle).unwrap(), "n={n}");
            }
            if n <= 3 {
                assert_eq!(b, count_2d(n, Method2d::A14).unwrap(), "n={n}");
            }
        }
    }

    #[test]
    fn recurrence() {
        let v: Vec<BigInt> = (0..=20).map(|n| b6().pow(n).get(4, 5).clone()).collect();
        for n in 2..=16 {
            let rhs = BigInt::from(13) * &v[n + 3] - BigInt::from(31) * &v[n + 2]
                + BigInt::from(20) * &v[n + 1]
                - BigInt::from(4) * &v[n];
            assert_eq!(v[n + 4], rhs, "n={n}");
        }
    }

    #[test]
    fn gf_series() {
        let g = gf_2d();
        assert_eq!(
            series_coeffs(&g, 5).unwrap(),
            big(&[0, 1, 14, 150, 1536, 15594])
        );
        assert_eq!(g.den().coeff(0), BigInt::from(1));
    }

    #[test]
    fn two_row_grid() {
        assert_eq!(count_2xn(2).unwrap(), BigInt::from(4));
        assert_eq!(count_2xn(3).unwrap(), BigInt::from(14));
        assert_eq!(count_2xn(5).unwrap(), BigInt::from(164));
        for n in 2..=6 {
            let fam = windows_from_spec(&PoolingSpec::new(vec![2, n], vec![2, 2], 1).unwrap());
            let oracle = enumerate_vertices(&fam).unwrap().len();
            assert_eq!(BigInt::from(oracle), count_2xn(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn class_count_identities() {
        assert_eq!(class_counts(2).unwrap().counts, vec![BigInt::from(1); 14]);
        let a = printed_a14();
        let c3 = class_counts(3).unwrap();
        let row_sums: Vec<BigInt> = (0..14).map(|i| a.row(i).iter().sum()).collect();
        assert_eq!(c3.counts, row_sums);
        assert_eq!(c3.total(), BigInt::from(150));
        for n in 2..=4 {
            let c = class_counts(n).unwrap();
            assert_eq!(c.total(), count_2d(n, Method2d::B6).unwrap());
            for (p, q) in [(1, 10), (2, 13), (11, 5), (4, 7)] {
                assert_eq!(c.at(p), c.at(q), "n={n} {p}/{q}");
            }
            for p in [13, 5, 11] {
                assert_eq!(c.at(2), c.at(p), "n={n} 2/{p}");
            }
            if n >= 3 {
                let prev = count_2d(n - 1, Method2d::B6).unwrap();
                for p in [6, 8, 12, 14] {
                    assert_eq!(c.at(p), &prev, "n={n} pos {p}");
                }
            }
        }
    }

    #[test]
    fn growth() {
        let g = growth_2d().unwrap();
        assert!((g - 2.3156).abs() < 1e-3);
        assert!((1.0 / g.exp() - 1.0 / 10.1311).abs() < 1e-4);
        assert!(g > growth_1d(4, 2).unwrap());
    }
}
