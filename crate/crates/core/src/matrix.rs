//! Dense matrices over arbitrary-precision integers.
//!
//! Everything here is exact; there is no floating point in this module.
//! Matrices stay small (at most 32x32 in all supported runs), so a dense
//! row-major layout is used throughout.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        IntMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn add(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(self.shape_error("add", rhs));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(self.shape_error("sub", rhs));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        let data = self.data.iter().map(|a| a * k).collect();
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale_i64(&self, k: i64) -> IntMatrix {
        self.scale(&BigInt::from(k))
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(self.shape_error("mul", rhs));
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "trace of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    /// Kronecker product; satisfies `(x (x) y)(u (x) v) = xu (x) yv`.
    pub fn kron(&self, rhs: &IntMatrix) -> IntMatrix {
        IntMatrix::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |i, j| {
            self.get(i / rhs.rows, j / rhs.cols) * rhs.get(i % rhs.rows, j % rhs.cols)
        })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.  All
    /// intermediate divisions are exact, so no rationals are needed.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.data.clone();
        let at = |m: &Vec<BigInt>, i: usize, j: usize| m[i * n + j].clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                match (k + 1..n).find(|&i| !m[i * n + k].is_zero()) {
                    Some(i) => {
                        for j in 0..n {
                            m.swap(k * n + j, i * n + j);
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = at(&m, i, j) * at(&m, k, k) - at(&m, i, k) * at(&m, k, j);
                    m[i * n + j] = num / &prev;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = at(&m, k, k);
        }
        Ok(sign * at(&m, n - 1, n - 1))
    }

    /// Contiguous block of the given shape starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> IntMatrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        IntMatrix::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// If `self == k * rhs` for an integer `k` (with `rhs` nonzero), returns
    /// `k`.  Returns `None` when no such integer exists.
    pub fn integer_multiple_of(&self, rhs: &IntMatrix) -> Option<BigInt> {
        if self.rows != rhs.rows || self.cols != rhs.cols || rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BigInt::zero());
        }
        let p = rhs.data.iter().position(|x| !x.is_zero()).unwrap();
        let (q, r) = num_integer_div_rem(&self.data[p], &rhs.data[p]);
        if !r.is_zero() {
            return None;
        }
        if *self == rhs.scale(&q) {
            Some(q)
        } else {
            None
        }
    }

    /// True when the two matrices are linearly dependent over the rationals
    /// (both zero counts as dependent).
    pub fn linearly_dependent(&self, rhs: &IntMatrix) -> bool {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return false;
        }
        if self.is_zero() || rhs.is_zero() {
            return true;
        }
        let p = self.data.iter().position(|x| !x.is_zero()).unwrap();
        let (a, b) = (&self.data[p], &rhs.data[p]);
        self.data.iter().zip(&rhs.data).all(|(x, y)| x * b == y * a)
    }

    /// JSON value: nested arrays of decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|i| {
                    serde_json::Value::Array(
                        (0..self.cols)
                            .map(|j| serde_json::Value::String(self.get(i, j).to_string()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    fn shape_error(&self, op: &str, rhs: &IntMatrix) -> Error {
        Error::Dimension(format!(
            "{op} of {}x{} and {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        ))
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    (a / b, a % b)
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    /// Independent determinant oracle: cofactor expansion along row 0.
    fn det_cofactor(m: &IntMatrix) -> BigInt {
        let n = m.rows();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            if m.get(0, j).is_zero() {
                continue;
            }
            let minor = IntMatrix::from_fn(n - 1, n - 1, |r, c| {
                m.get(r + 1, if c < j { c } else { c + 1 }).clone()
            });
            let term = m.get(0, j) * det_cofactor(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    fn sigma(i: u8) -> IntMatrix {
        crate::pauli::Sigma::from_index(i).unwrap().matrix()
    }

    #[test]
    fn identity_multiplication() {
        let m = IntMatrix::from_i64_rows(&[vec![3, -1], vec![2, 5]]);
        assert_eq!(IntMatrix::identity(2).mul(&m).unwrap(), m);
        assert_eq!(m.mul(&IntMatrix::identity(2)).unwrap(), m);
    }

    #[test]
    fn trace_and_transpose_of_generators() {
        assert_eq!(sigma(1).trace().unwrap(), BigInt::zero());
        assert_eq!(sigma(3).transpose(), sigma(3).scale_i64(-1));
    }

    #[test]
    fn dimension_mismatches_are_errors() {
        let a = IntMatrix::zeros(2, 3);
        let b = IntMatrix::zeros(2, 3);
        assert!(a.mul(&b).is_err());
        assert!(a.add(&IntMatrix::zeros(3, 2)).is_err());
        assert!(a.det().is_err());
        assert!(a.trace().is_err());
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(IntMatrix::identity(4).det().unwrap(), BigInt::one());
        assert_eq!(IntMatrix::zeros(3, 3).det().unwrap(), BigInt::zero());
        // Cofactor oracle fixes the expected value for the s3 realization.
        assert_eq!(det_cofactor(&sigma(3)), BigInt::one());
        assert_eq!(sigma(3).det().unwrap(), BigInt::one());
    }

    #[test]
    fn determinant_matches_cofactor_oracle_on_random_matrices() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 13) as i64 - 6
        };
        for n in 1..=5 {
            for _ in 0..20 {
                let m = IntMatrix::from_fn(n, n, |_, _| BigInt::from(next()));
                assert_eq!(m.det().unwrap(), det_cofactor(&m));
            }
        }
    }

    #[test]
    fn determinant_needing_pivot_swap() {
        let m = IntMatrix::from_i64_rows(&[vec![0, 2, 1], vec![3, 0, 0], vec![1, 1, 1]]);
        assert_eq!(m.det().unwrap(), det_cofactor(&m));
    }

    #[test]
    fn kronecker_examples() {
        let i2 = IntMatrix::identity(2);
        assert_eq!(i2.kron(&i2), IntMatrix::identity(4));
        // Definition-unrolled oracle for s1 (x) s0.
        let expect = IntMatrix::from_i64_rows(&[
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
            vec![0, 0, -1, 0],
            vec![0, 0, 0, -1],
        ]);
        assert_eq!(sigma(1).kron(&sigma(0)), expect);
    }

    #[test]
    fn kronecker_transpose_identity() {
        let x = IntMatrix::from_i64_rows(&[vec![1, 2], vec![3, 4]]);
        let y = IntMatrix::from_i64_rows(&[vec![0, -1], vec![5, 2]]);
        assert_eq!(x.kron(&y).transpose(), x.transpose().kron(&y.transpose()));
    }

    #[test]
    fn block_extraction() {
        let m = IntMatrix::from_i64_rows(&[
            vec![1, 2, 3, 4],
            vec![5, 6, 7, 8],
            vec![9, 10, 11, 12],
            vec![13, 14, 15, 16],
        ]);
        let ur = m.block(0, 2, 2, 2);
        assert_eq!(ur, IntMatrix::from_i64_rows(&[vec![3, 4], vec![7, 8]]));
    }

    #[test]
    fn integer_multiple_detection() {
        let base = IntMatrix::from_i64_rows(&[vec![0, 2], vec![-2, 0]]);
        let triple = base.scale_i64(3);
        assert_eq!(triple.integer_multiple_of(&base), Some(BigInt::from(3)));
        assert_eq!(
            IntMatrix::zeros(2, 2).integer_multiple_of(&base),
            Some(BigInt::zero())
        );
        let other = IntMatrix::from_i64_rows(&[vec![1, 2], vec![-2, 0]]);
        assert_eq!(other.integer_multiple_of(&base), None);
        // 3/2 of base is not an integer multiple.
        let m = IntMatrix::from_i64_rows(&[vec![0, 3], vec![-3, 0]]);
        assert_eq!(m.integer_multiple_of(&base), None);
    }

    #[test]
    fn linear_dependence() {
        let a = IntMatrix::from_i64_rows(&[vec![2, -4], vec![0, 6]]);
        assert!(a.linearly_dependent(&a.scale_i64(-7)));
        assert!(a.linearly_dependent(&IntMatrix::zeros(2, 2)));
        let b = IntMatrix::from_i64_rows(&[vec![2, -4], vec![1, 6]]);
        assert!(!a.linearly_dependent(&b));
    }

    #[test]
    fn json_shape() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 0], vec![0, -1]]);
        assert_eq!(m.to_json().to_string(), r#"[["1","0"],["0","-1"]]"#);
    }
}
