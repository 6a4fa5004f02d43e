//! Exact rank of sparse integer matrices over `F_p` or `Q`.
//!
//! Both paths use column reduction keyed on the lowest nonzero row: a column
//! whose lowest row already has a pivot is reduced against that pivot column
//! until it vanishes or finds a fresh pivot row.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::FieldSpec;

/// Column-major sparse matrix with integer entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    /// Each column lists `(row, value)` with strictly increasing rows and no zeros.
    pub cols: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(nrows: usize) -> Self {
        SparseMatrix { nrows, cols: vec![] }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let cols = (0..ncols)
            .map(|j| {
                (0..nrows)
                    .filter(|&i| rows[i][j] != 0)
                    .map(|i| (i as u32, rows[i][j]))
                    .collect()
            })
            .collect();
        SparseMatrix { nrows, cols }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    /// Adds a column; entries may be unsorted and contain zeros.
    pub fn push_col(&mut self, mut col: Vec<(u32, i64)>) {
        col.retain(|&(_, v)| v != 0);
        col.sort_unstable_by_key(|&(r, _)| r);
        self.cols.push(col);
    }
}

/// Rank of `m` over the field `f`.
pub fn exact_rank(m: &SparseMatrix, f: FieldSpec) -> usize {
    match f.characteristic() {
        0 => rank_rational(m),
        p => rank_mod_p(m, p),
    }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn rank_mod_p(m: &SparseMatrix, p: u32) -> usize {
    let p64 = p as u64;
    let mut pivot_of_row: Vec<u32> = vec![u32::MAX; m.nrows];
    let mut stored: Vec<Vec<(u32, u32)>> = Vec::new();
    let mut scratch: Vec<(u32, u32)> = Vec::new();
    for col in &m.cols {
        let mut c: Vec<(u32, u32)> = col
            .iter()
            .map(|&(r, v)| (r, v.rem_euclid(p as i64) as u32))
            .filter(|&(_, v)| v != 0)
            .collect();
        while let Some(&(low, a)) = c.last() {
            let piv = pivot_of_row[low as usize];
            if piv == u32::MAX {
                let inv = pow_mod(a as u64, p64 - 2, p64);
                for e in c.iter_mut() {
                    e.1 = (e.1 as u64 * inv % p64) as u32;
                }
                pivot_of_row[low as usize] = stored.len() as u32;
                stored.push(c);
                break;
            }
            // c <- c - a * pivot, where the pivot column has leading entry 1.
            let factor = p64 - a as u64;
            axpy_mod(&c, &stored[piv as usize], factor, p64, &mut scratch);
            std::mem::swap(&mut c, &mut scratch);
        }
    }
    stored.len()
}

/// `out = x + f * y` over `F_p`, merging sorted sparse columns.
fn axpy_mod(x: &[(u32, u32)], y: &[(u32, u32)], f: u64, p: u64, out: &mut Vec<(u32, u32)>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let rx = x.get(i).map_or(u32::MAX, |e| e.0);
        let ry = y.get(j).map_or(u32::MAX, |e| e.0);
        if rx < ry {
            out.push(x[i]);
            i += 1;
        } else if ry < rx {
            out.push((ry, (f * y[j].1 as u64 % p) as u32));
            j += 1;
        } else {
            let v = ((x[i].1 as u64 + f * y[j].1 as u64) % p) as u32;
            if v != 0 {
                out.push((rx, v));
            }
            i += 1;
            j += 1;
        }
    }
}

/// Integer arithmetic used by fraction-free elimination. `i64` reports
/// overflow with `None` so the caller can restart with big integers.
trait Ring: Clone + PartialEq {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `a * x - b * y`
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div(&self, d: &Self) -> Self;
    fn is_unit(&self) -> bool;
}

impl Ring for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
}

impl Ring for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

fn rank_rational(m: &SparseMatrix) -> usize {
    rank_fraction_free::<i64>(m).unwrap_or_else(|| {
        rank_fraction_free::<BigInt>(m).expect("big integers do not overflow")
    })
}

/// Fraction-free column reduction over `Z`, which has the same rank as over
/// `Q`. Each reduced column is divided by the gcd of its entries.
fn rank_fraction_free<T: Ring>(m: &SparseMatrix) -> Option<usize> {
    let mut pivot_of_row: Vec<u32> = vec![u32::MAX; m.nrows];
    let mut stored: Vec<Vec<(u32, T)>> = Vec::new();
    for col in &m.cols {
        let mut c: Vec<(u32, T)> = col.iter().map(|&(r, v)| (r, T::from_i64(v))).collect();
        while let Some((low, a)) = c.last().cloned() {
            let piv = pivot_of_row[low as usize];
            if piv == u32::MAX {
                pivot_of_row[low as usize] = stored.len() as u32;
                stored.push(c);
                break;
            }
            let pc = &stored[piv as usize];
            let b = pc.last().expect("pivot columns are nonempty").1.clone();
            // c <- b * c - a * pc, which cancels the lowest entry.
            let mut out = Vec::with_capacity(c.len() + pc.len());
            let (mut i, mut j) = (0, 0);
            let zero = T::from_i64(0);
            while i < c.len() || j < pc.len() {
                let rx = c.get(i).map_or(u32::MAX, |e| e.0);
                let ry = pc.get(j).map_or(u32::MAX, |e| e.0);
                let (r, v) = if rx < ry {
                    i += 1;
                    (rx, T::cross(&b, &c[i - 1].1, &a, &zero)?)
                } else if ry < rx {
                    j += 1;
                    (ry, T::cross(&b, &zero, &a, &pc[j - 1].1)?)
                } else {
                    i += 1;
                    j += 1;
                    (rx, T::cross(&b, &c[i - 1].1, &a, &pc[j - 1].1)?)
                };
                if !v.is_zero() {
                    out.push((r, v));
                }
            }
            normalize(&mut out);
            c = out;
        }
    }
    Some(stored.len())
}

fn normalize<T: Ring>(c: &mut [(u32, T)]) {
    let Some(first) = c.first() else { return };
    let mut g = first.1.clone();
    for (_, v) in c.iter().skip(1) {
        if g.is_unit() {
            return;
        }
        g = g.gcd(v);
    }
    if !g.is_unit() && !g.is_zero() {
        for e in c.iter_mut() {
            e.1 = e.1.div(&g);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields() -> [FieldSpec; 3] {
        [FieldSpec::rationals(), FieldSpec::default(), FieldSpec::new(2).unwrap()]
    }

    #[test]
    fn small_ranks() {
        let id = SparseMatrix::from_dense(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let zero = SparseMatrix::from_dense(&[vec![0, 0], vec![0, 0]]);
        // Boundary of the path x1 - x2 - x3: vertices as rows, edges as columns.
        let d1 = SparseMatrix::from_dense(&[vec![-1, 0], vec![1, -1], vec![0, 1]]);
        for f in fields() {
            assert_eq!(exact_rank(&id, f), 3);
            assert_eq!(exact_rank(&zero, f), 0);
            assert_eq!(exact_rank(&d1, f), 2);
        }
    }

    #[test]
    fn characteristic_matters() {
        let m = SparseMatrix::from_dense(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(exact_rank(&m, FieldSpec::rationals()), 2);
        assert_eq!(exact_rank(&m, FieldSpec::new(2).unwrap()), 1);
        let m = SparseMatrix::from_dense(&[vec![32003]]);
        assert_eq!(exact_rank(&m, FieldSpec::default()), 0);
        assert_eq!(exact_rank(&m, FieldSpec::rationals()), 1);
    }

    #[test]
    fn big_integer_fallback_agrees() {
        // Entries large enough that fraction-free products overflow i64.
        let big = 5_000_000_007i64;
        let m = SparseMatrix::from_dense(&[
            vec![big, big - 1, 7],
            vec![big + 2, big, 11],
            vec![2 * big + 2, 2 * big - 1, 18],
        ]);
        assert!(rank_fraction_free::<i64>(&m).is_none());
        assert_eq!(rank_fraction_free::<BigInt>(&m), Some(2));
        assert_eq!(exact_rank(&m, FieldSpec::rationals()), 2);
    }

    #[test]
    fn dense_gauss_agreement() {
        // Compare against plain Gaussian elimination over F_p on pseudo-random matrices.
        let p = 7u64;
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 5) as i64 - 2
        };
        for _ in 0..50 {
            let rows: Vec<Vec<i64>> = (0..6).map(|_| (0..7).map(|_| next()).collect()).collect();
            let mut a: Vec<Vec<u64>> = rows
                .iter()
                .map(|r| r.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect())
                .collect();
            let mut rank = 0;
            for col in 0..7 {
                if let Some(pr) = (rank..6).find(|&r| a[r][col] != 0) {
                    a.swap(rank, pr);
                    let inv = pow_mod(a[rank][col], p - 2, p);
                    for r in 0..6 {
                        if r != rank && a[r][col] != 0 {
                            let f = a[r][col] * inv % p;
                            for c in 0..7 {
                                a[r][c] = (a[r][c] + p * p - f * a[rank][c]) % p;
                            }
                        }
                    }
                    rank += 1;
                }
            }
            let m = SparseMatrix::from_dense(&rows);
            assert_eq!(exact_rank(&m, FieldSpec::new(7).unwrap()), rank);
        }
    }
}
