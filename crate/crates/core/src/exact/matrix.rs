use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use super::rational::{is_integral, parse_rational};
use super::{ExactError, Rational};

/// Dense row-major matrix over ℚ.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, ExactError> {
        if data.len() != rows * cols {
            return Err(ExactError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ExactError::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from small integers. Panics on ragged input.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect())
            .collect();
        Self::from_rows(rows).expect("ragged integer matrix")
    }

    /// Parses a JSON array of arrays whose entries are integers or strings
    /// such as `"-3/4"`.
    pub fn from_json(text: &str) -> Result<Self, ExactError> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| ExactError::InvalidLiteral(e.to_string()))?;
        Self::from_json_value(&v)
    }

    pub fn from_json_value(v: &Value) -> Result<Self, ExactError> {
        let bad = |m: &str| ExactError::InvalidLiteral(m.to_string());
        let rows = v.as_array().ok_or_else(|| bad("expected an array of rows"))?;
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().ok_or_else(|| bad("expected each row to be an array"))?;
            let mut r = Vec::with_capacity(row.len());
            for e in row {
                r.push(match e {
                    Value::Number(n) => parse_rational(&n.to_string())?,
                    Value::String(s) => parse_rational(s)?,
                    other => return Err(bad(&format!("bad entry {other}"))),
                });
            }
            out.push(r);
        }
        Self::from_rows(out)
    }

    /// JSON rendering; integers become numbers when they fit in i64,
    /// everything else becomes a string.
    pub fn to_json_value(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array(self.row(i).iter().map(rational_to_json).collect()))
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_integer(&self) -> bool {
        self.data.iter().all(is_integral)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// First non-integer entry, if any.
    pub fn check_integer(&self) -> Result<(), ExactError> {
        match self.data.iter().position(|x| !is_integral(x)) {
            None => Ok(()),
            Some(k) => Err(ExactError::NotInteger { row: k / self.cols, col: k % self.cols }),
        }
    }

    pub fn to_integer_rows(&self) -> Result<Vec<Vec<BigInt>>, ExactError> {
        self.check_integer()?;
        Ok((0..self.rows).map(|i| self.row(i).iter().map(|x| x.numer().clone()).collect()).collect())
    }

    pub fn from_integer_rows(rows: &[Vec<BigInt>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data = rows.iter().flatten().map(|x| Rational::from_integer(x.clone())).collect();
        Self { rows: r, cols: c, data }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = &out.data[idx] + a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        Self { rows: rows.len(), cols: cols.len(), data }
    }

    /// xᵀ M y for vectors given as slices.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rows {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.cols {
                if !y[j].is_zero() {
                    acc += &x[i] * self.get(i, j) * &y[j];
                }
            }
        }
        acc
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Fraction-free (Bareiss) determinant. Works on the common-denominator
    /// integer matrix so every intermediate division is exact.
    pub fn determinant(&self) -> Result<Rational, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let mut denom = BigInt::one();
        for x in &self.data {
            denom = num_integer::lcm(denom, x.denom().clone());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                self.row(i).iter().map(|x| x.numer() * (&denom / x.denom())).collect()
            })
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(Rational::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let det = sign * &a[n - 1][n - 1];
        Ok(Rational::new(det, num_traits::pow(denom, n)))
    }

    pub fn rank(&self) -> usize {
        let (_, pivots) = self.rref();
        pivots.len()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j) - &f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Basis of the right null space {x : Mx = 0}.
    pub fn null_space(&self) -> Vec<Vec<Rational>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if !self.is_square() {
            return Err(ExactError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(ExactError::Singular);
        }
        let idx: Vec<usize> = (0..n).collect();
        let right: Vec<usize> = (n..2 * n).collect();
        Ok(red.select(&idx, &right))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn max_abs_entry(&self) -> Rational {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
    }
}

pub(crate) fn rational_to_json(x: &Rational) -> Value {
    if is_integral(x) {
        if let Ok(v) = i64::try_from(x.numer()) {
            return Value::from(v);
        }
    }
    Value::String(x.to_string())
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let w = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> =
                (0..self.cols).map(|j| format!("{:>w$}", cells[i * self.cols + j])).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_mul(rhs).expect("matrix dimensions do not match")
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        ExactMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn chain7() -> ExactMatrix {
        let mut rows = vec![vec![0i64; 6]; 6];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = if i == 5 { -9 } else { -2 };
            if i > 0 {
                row[i - 1] = 1;
            }
            if i < 5 {
                row[i + 1] = 1;
            }
        }
        ExactMatrix::from_i64(&rows)
    }

    #[test]
    fn chain_determinant_and_inverse() {
        let p = chain7();
        assert_eq!(p.determinant().unwrap(), int(49));
        let t = p.inverse().unwrap();
        assert_eq!(&p * &t, ExactMatrix::identity(6));
        assert_eq!(*t.get(0, 0), rat(-41, 49));
        assert_eq!(*t.get(5, 5), rat(-6, 49));
    }

    #[test]
    fn rational_determinant() {
        let m = ExactMatrix::from_json(r#"[["1/2", 1], [3, "-2/3"]]"#).unwrap();
        assert_eq!(m.determinant().unwrap(), rat(-1, 3) - int(3));
    }

    #[test]
    fn zero_pivot_needs_swap() {
        let m = ExactMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(m.determinant().unwrap(), int(-1));
        assert_eq!(m.inverse().unwrap(), m);
    }

    #[test]
    fn singular_and_nonsquare() {
        let m = ExactMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(m.determinant().unwrap(), int(0));
        assert_eq!(m.inverse(), Err(ExactError::Singular));
        let r = ExactMatrix::from_i64(&[vec![1, 2, 3]]);
        assert!(matches!(r.determinant(), Err(ExactError::NotSquare { .. })));
        assert_eq!(r.null_space().len(), 2);
    }

    #[test]
    fn json_round_trip() {
        let m = ExactMatrix::from_json(r#"[[1, "1/2"], [-3, 0]]"#).unwrap();
        let back = ExactMatrix::from_json_value(&m.to_json_value()).unwrap();
        assert_eq!(m, back);
        assert!(ExactMatrix::from_json("[[1,2],[3]]").is_err());
        assert_eq!(
            m.check_integer(),
            Err(ExactError::NotInteger { row: 0, col: 1 })
        );
    }
}
