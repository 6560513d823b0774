//! Exact square integer matrices and block-constant matrices.
//!
//! A block-constant matrix repeats the block-row `(A_1 A_2 ... A_r)` in every
//! block-row. Its `k`-th power has diagonal-block sum `(A_1 + ... + A_r)^k`,
//! even when the blocks do not commute; [`verify_lemma1`] checks that identity
//! by computing both sides independently.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Dense square matrix with arbitrary-precision entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    side: usize,
    data: Vec<BigInt>,
}

impl Matrix {
    pub fn zeros(side: usize) -> Self {
        Matrix {
            side,
            data: vec![BigInt::zero(); side * side],
        }
    }

    pub fn identity(side: usize) -> Self {
        let mut m = Matrix::zeros(side);
        for i in 0..side {
            m.data[i * side + i] = BigInt::one();
        }
        m
    }

    /// Panics if `rows` is not square.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let side = rows.len();
        let mut data = Vec::with_capacity(side * side);
        for row in rows {
            assert_eq!(row.len(), side, "matrix must be square");
            data.extend(row.iter().cloned().map(Into::into));
        }
        Matrix { side, data }
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.side + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        self.data[i * self.side + j] = value.into();
    }

    pub fn trace(&self) -> BigInt {
        (0..self.side).map(|i| self.get(i, i)).sum()
    }

    /// The `d x d` block at block coordinates `(bi, bj)`.
    pub fn block(&self, bi: usize, bj: usize, d: usize) -> Matrix {
        let mut out = Matrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.data[i * d + j] = self.get(bi * d + i, bj * d + j).clone();
            }
        }
        out
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u32) -> Matrix {
        let mut result = Matrix::identity(self.side);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self^k` by `k - 1` successive multiplications.
    pub fn pow_naive(&self, k: u32) -> Matrix {
        (0..k).fold(Matrix::identity(self.side), |acc, _| &acc * self)
    }

    pub fn commutes_with(&self, other: &Matrix) -> bool {
        (self * other) == (other * self)
    }
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(self.side, rhs.side, "side mismatch");
        let n = self.side;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = &self.data[i * n + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.data[l * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    fn add(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(self.side, rhs.side, "side mismatch");
        Matrix {
            side: self.side,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.side)
            .map(|i| (0..self.side).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// `r` square blocks of a common side `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockFamily {
    d: usize,
    blocks: Vec<Matrix>,
}

impl BlockFamily {
    pub fn new(blocks: Vec<Matrix>) -> Result<Self> {
        let d = blocks
            .first()
            .ok_or_else(|| Error::Invalid("block family needs at least one block".into()))?
            .side();
        if d == 0 || blocks.iter().any(|b| b.side() != d) {
            return Err(Error::Invalid("blocks must share a positive side".into()));
        }
        Ok(BlockFamily { d, blocks })
    }

    pub fn r(&self) -> usize {
        self.blocks.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }

    pub fn sum(&self) -> Matrix {
        self.blocks.iter().fold(Matrix::zeros(self.d), |acc, b| &acc + b)
    }

    /// Some pair of blocks fails to commute.
    pub fn has_noncommuting_pair(&self) -> bool {
        self.blocks
            .iter()
            .enumerate()
            .any(|(i, a)| self.blocks[i + 1..].iter().any(|b| !a.commutes_with(b)))
    }
}

/// Side `r d` matrix whose every block-row is `(A_1 A_2 ... A_r)`.
pub fn assemble_block_constant(family: &BlockFamily) -> Matrix {
    let d = family.d;
    let mut m = Matrix::zeros(family.r() * d);
    for bi in 0..family.r() {
        for (bj, block) in family.blocks.iter().enumerate() {
            for i in 0..d {
                for j in 0..d {
                    m.set(bi * d + i, bj * d + j, block.get(i, j).clone());
                }
            }
        }
    }
    m
}

/// Sum of the diagonal `d x d` blocks.
pub fn block_trace(matrix: &Matrix, d: usize) -> Result<Matrix> {
    if d == 0 || !matrix.side().is_multiple_of(d) {
        return Err(Error::IndivisibleBlocks {
            side: matrix.side(),
            block: d,
        });
    }
    let count = matrix.side() / d;
    Ok((0..count).fold(Matrix::zeros(d), |acc, b| &acc + &matrix.block(b, b, d)))
}

/// `block_trace(M^k) == (A_1 + ... + A_r)^k`, exactly.
pub fn verify_lemma1(family: &BlockFamily, k: u32) -> bool {
    assert!(k >= 1, "k must be positive");
    let m = assemble_block_constant(family);
    let lhs = block_trace(&m.pow(k), family.d).expect("assembled side is r * d");
    lhs == family.sum().pow(k)
}

/// [`verify_lemma1`] for every `k` in `1..=k_max`, sharing the powers.
pub fn verify_lemma1_upto(family: &BlockFamily, k_max: u32) -> Vec<bool> {
    let m = assemble_block_constant(family);
    let s = family.sum();
    let mut m_pow = m.clone();
    let mut s_pow = s.clone();
    let mut out = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        if k > 1 {
            m_pow = &m_pow * &m;
            s_pow = &s_pow * &s;
        }
        out.push(block_trace(&m_pow, family.d).expect("assembled side is r * d") == s_pow);
    }
    out
}

/// Deterministic family with entries uniform in `[-bound, bound]`.
pub fn random_block_family(seed: u64, r: usize, d: usize, bound: i64) -> BlockFamily {
    assert!(r >= 1 && d >= 1 && bound >= 0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks = (0..r)
        .map(|_| {
            let rows: Vec<Vec<i64>> = (0..d)
                .map(|_| (0..d).map(|_| rng.gen_range(-bound..=bound)).collect())
                .collect();
            Matrix::from_rows(&rows)
        })
        .collect();
    BlockFamily::new(blocks).expect("generated blocks share a side")
}

/// The 2x2 matrix units `E_12`, `E_21`, which do not commute.
pub fn noncommuting_family() -> BlockFamily {
    BlockFamily::new(vec![
        Matrix::from_rows(&[vec![0, 1], vec![0, 0]]),
        Matrix::from_rows(&[vec![0, 0], vec![1, 0]]),
    ])
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_family(values: &[i64]) -> BlockFamily {
        BlockFamily::new(values.iter().map(|&v| Matrix::from_rows(&[vec![v]])).collect()).unwrap()
    }

    #[test]
    fn assemble_examples() {
        assert_eq!(
            assemble_block_constant(&scalar_family(&[2])),
            Matrix::from_rows(&[vec![2]])
        );
        assert_eq!(
            assemble_block_constant(&scalar_family(&[2, 3])),
            Matrix::from_rows(&[vec![2, 3], vec![2, 3]])
        );
        let eye = BlockFamily::new(vec![Matrix::identity(2), Matrix::identity(2)]).unwrap();
        assert_eq!(
            assemble_block_constant(&eye),
            Matrix::from_rows(&[
                vec![1, 0, 1, 0],
                vec![0, 1, 0, 1],
                vec![1, 0, 1, 0],
                vec![0, 1, 0, 1],
            ])
        );
    }

    #[test]
    fn block_trace_examples() {
        let m = Matrix::from_rows(&[vec![2, 3], vec![2, 3]]);
        assert_eq!(block_trace(&m, 1).unwrap(), Matrix::from_rows(&[vec![5]]));
        let two_i = Matrix::from_rows(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(block_trace(&Matrix::identity(4), 2).unwrap(), two_i);
        // M^2 = [[10, 15], [10, 15]]
        let squared = &m * &m;
        assert_eq!(squared, Matrix::from_rows(&[vec![10, 15], vec![10, 15]]));
        assert_eq!(block_trace(&squared, 1).unwrap(), Matrix::from_rows(&[vec![25]]));
        assert!(matches!(
            block_trace(&Matrix::identity(3), 2),
            Err(Error::IndivisibleBlocks { side: 3, block: 2 })
        ));
    }

    #[test]
    fn lemma_examples() {
        assert!(verify_lemma1(&scalar_family(&[2, 3]), 2));
        let family = random_block_family(7, 3, 2, 5);
        assert!(verify_lemma1(&family, 1));
        assert!(verify_lemma1(&family, 4));
        assert!(verify_lemma1_upto(&family, 6).into_iter().all(|ok| ok));
    }

    #[test]
    fn noncommuting_pair() {
        let family = noncommuting_family();
        assert!(family.has_noncommuting_pair());
        assert!(verify_lemma1_upto(&family, 6).into_iter().all(|ok| ok));
    }

    #[test]
    fn random_family_determinism() {
        let zero = random_block_family(0, 1, 1, 0);
        assert_eq!(zero.blocks(), &[Matrix::from_rows(&[vec![0]])]);
        assert_eq!(random_block_family(42, 2, 2, 3), random_block_family(42, 2, 2, 3));
        assert_ne!(random_block_family(42, 2, 2, 3), random_block_family(43, 2, 2, 3));
        let family = random_block_family(42, 2, 2, 3);
        for b in family.blocks() {
            for i in 0..2 {
                for j in 0..2 {
                    assert!(b.get(i, j) >= &BigInt::from(-3) && b.get(i, j) <= &BigInt::from(3));
                }
            }
        }
    }

    #[test]
    fn squaring_matches_naive() {
        for seed in 0..20 {
            let m = random_block_family(seed, 1, 4, 5).blocks()[0].clone();
            for k in 0..=6 {
                assert_eq!(m.pow(k), m.pow_naive(k), "seed {seed} k {k}");
            }
        }
    }

    #[test]
    fn family_rejects_mixed_sides() {
        assert!(BlockFamily::new(vec![Matrix::identity(1), Matrix::identity(2)]).is_err());
        assert!(BlockFamily::new(vec![]).is_err());
    }
}
