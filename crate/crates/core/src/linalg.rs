//! Exact dense linear algebra over the scalar fields.
//!
//! Ranks over the rationals go through fraction-free (Bareiss-style)
//! elimination on cleared-denominator integer rows, which keeps intermediate
//! entries as minors of the input instead of letting fractions blow up.
//! Prime fields use plain elimination. Reduced row echelon forms are
//! computed with field arithmetic and are canonical: equal row spans have
//! identical echelon rows.

use crate::field::{FieldSpec, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// A dense matrix of scalars from one field.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarMat {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ScalarMat {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> ScalarMat {
        ScalarMat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> ScalarMat {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        ScalarMat {
            field,
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Exact rank. Fraction-free elimination over the rationals, plain
    /// elimination over GF(p).
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match self.field {
            FieldSpec::Rationals => rank_bareiss(self.to_integer_rows()),
            FieldSpec::PrimeField(p) => rank_prime(self, p),
        }
    }

    /// Reduced row echelon form of the row span.
    pub fn rref(&self) -> Echelon {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut rank = 0usize;
        for col in 0..self.cols {
            let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, pivot_row);
            let inv = rows[rank][col].inv().expect("pivot is nonzero");
            if !rows[rank][col].is_one() {
                for c in col..self.cols {
                    if !rows[rank][c].is_zero() {
                        rows[rank][c] = rows[rank][c].mul(&inv).expect("same field");
                    }
                }
            }
            for r in 0..rows.len() {
                if r == rank || rows[r][col].is_zero() {
                    continue;
                }
                let factor = rows[r][col].clone();
                for c in col..self.cols {
                    if rows[rank][c].is_zero() {
                        continue;
                    }
                    let delta = rows[rank][c].mul(&factor).expect("same field");
                    rows[r][c] = rows[r][c].sub(&delta).expect("same field");
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        Echelon {
            field: self.field,
            cols: self.cols,
            rows,
            pivots,
        }
    }

    /// A basis of the right kernel, one vector per free column, ordered by
    /// free column index.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.rref().kernel_basis()
    }

    /// Clears denominators rowwise; valid for rank computations since row
    /// scaling preserves the row space.
    fn to_integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let mut denom_lcm = BigInt::one();
                for c in 0..self.cols {
                    if let Scalar::Rational(q) = self.at(r, c) {
                        if !q.is_zero() {
                            denom_lcm = denom_lcm.lcm(q.denom());
                        }
                    }
                }
                (0..self.cols)
                    .map(|c| match self.at(r, c) {
                        Scalar::Rational(q) => q.numer() * (&denom_lcm / q.denom()),
                        _ => unreachable!("rational matrix"),
                    })
                    .collect()
            })
            .collect()
    }
}

/// Fraction-free elimination with column skipping: after k pivots each
/// active entry is a (k+1)-minor of the input, and the division by the
/// previous pivot is exact by Sylvester's determinant identity.
fn rank_bareiss(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0usize;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let num = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                debug_assert!((&num % &prev).is_zero());
                m[r][c] = num / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn rank_prime(mat: &ScalarMat, p: u64) -> usize {
    let value = |s: &Scalar| match s {
        Scalar::Residue { value, .. } => *value,
        _ => unreachable!("prime-field matrix"),
    };
    let mut m: Vec<Vec<u64>> = (0..mat.rows)
        .map(|r| mat.row(r).iter().map(value).collect())
        .collect();
    let rows = m.len();
    let mut rank = 0usize;
    for col in 0..mat.cols {
        let Some(pivot_row) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let inv = Scalar::Residue {
            value: m[rank][col],
            modulus: p,
        }
        .inv()
        .expect("nonzero pivot");
        let inv = match inv {
            Scalar::Residue { value, .. } => value,
            _ => unreachable!(),
        };
        for c in col..mat.cols {
            m[rank][c] = ((m[rank][c] as u128 * inv as u128) % p as u128) as u64;
        }
        for r in rank + 1..rows {
            let f = m[r][col];
            if f == 0 {
                continue;
            }
            for c in col..mat.cols {
                let sub = (m[rank][c] as u128 * f as u128) % p as u128;
                m[r][c] = ((m[r][c] as u128 + p as u128 - sub) % p as u128) as u64;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// A reduced row echelon form: nonzero rows with unit pivots and zeros above
/// and below each pivot. Canonical for the row span.
#[derive(Clone, Debug, PartialEq)]
pub struct Echelon {
    field: FieldSpec,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn empty(field: FieldSpec, cols: usize) -> Echelon {
        Echelon {
            field,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Indices of the non-pivot columns, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut pivot_iter = self.pivots.iter().peekable();
        let mut free = Vec::with_capacity(self.cols - self.pivots.len());
        for c in 0..self.cols {
            if pivot_iter.peek() == Some(&&c) {
                pivot_iter.next();
            } else {
                free.push(c);
            }
        }
        free
    }

    /// Subtracts pivot rows to put `v` into normal form modulo the row span.
    pub fn reduce_vec(&self, v: &mut [Scalar]) {
        assert_eq!(v.len(), self.cols);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for c in p..self.cols {
                if row[c].is_zero() {
                    continue;
                }
                let delta = row[c].mul(&factor).expect("same field");
                v[c] = v[c].sub(&delta).expect("same field");
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce_vec(&mut w);
        w.iter().all(|s| s.is_zero())
    }

    /// Kernel of the matrix this echelon form came from: one basis vector per
    /// free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut basis = Vec::new();
        for f in self.free_columns() {
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if !row[f].is_zero() {
                    v[p] = row[f].neg();
                }
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Scalar {
        Scalar::rational(n, 1)
    }

    #[test]
    fn rank_and_rref_agree_simple() {
        let m = ScalarMat::from_rows(
            FieldSpec::Rationals,
            vec![
                vec![q(1), q(2), q(3)],
                vec![q(2), q(4), q(6)],
                vec![q(0), q(1), q(1)],
            ],
        );
        assert_eq!(m.rank(), 2);
        let e = m.rref();
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivots(), &[0, 1]);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = ScalarMat::from_rows(
            FieldSpec::Rationals,
            vec![vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]],
        );
        let kernel = m.kernel_basis();
        assert_eq!(kernel.len(), 1);
        for v in &kernel {
            for r in 0..m.rows() {
                let mut acc = FieldSpec::Rationals.zero();
                for c in 0..m.cols() {
                    acc = acc.add(&m.at(r, c).mul(&v[c]).unwrap()).unwrap();
                }
                assert!(acc.is_zero());
            }
        }
    }

    #[test]
    fn gf2_rank() {
        let gf2 = FieldSpec::prime_field(2).unwrap();
        let s = |v: u64| Scalar::Residue { value: v, modulus: 2 };
        // Circulant of (1,1,0): singular over GF(2).
        let m = ScalarMat::from_rows(
            gf2,
            vec![
                vec![s(1), s(1), s(0)],
                vec![s(1), s(0), s(1)],
                vec![s(0), s(1), s(1)],
            ],
        );
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rref().rank(), 2);
    }

    // Dual-route check: Bareiss rank equals plain rational RREF rank on
    // random matrices with rational entries.
    #[test]
    fn bareiss_matches_rref_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let rows = rng.gen_range(1..=7);
            let cols = rng.gen_range(1..=7);
            let data: Vec<Vec<Scalar>> = (0..rows)
                .map(|_| {
                    (0..cols)
                        .map(|_| {
                            Scalar::rational(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4))
                        })
                        .collect()
                })
                .collect();
            let m = ScalarMat::from_rows(FieldSpec::Rationals, data);
            assert_eq!(m.rank(), m.rref().rank());
        }
    }

    #[test]
    fn rref_is_canonical_for_span() {
        // Same span, different generators: identical echelons.
        let a = ScalarMat::from_rows(
            FieldSpec::Rationals,
            vec![vec![q(1), q(2), q(0)], vec![q(0), q(0), q(3)]],
        );
        let b = ScalarMat::from_rows(
            FieldSpec::Rationals,
            vec![vec![q(2), q(4), q(3)], vec![q(0), q(0), q(-1)]],
        );
        assert_eq!(a.rref(), b.rref());
    }
}
