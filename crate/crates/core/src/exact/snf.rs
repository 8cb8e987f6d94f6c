use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactError, ExactMatrix};

/// `left · M · right = diag(invariant_factors, 0, …)` with `left`, `right`
/// unimodular. `invariant_factors` are positive and each divides the next;
/// units are kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
    /// Number of zero rows of the diagonal form, i.e. the free rank of the
    /// cokernel of `x ↦ M x`.
    pub free_rank: usize,
    pub left: ExactMatrix,
    pub right: ExactMatrix,
    pub diagonal: ExactMatrix,
}

impl SmithDecomposition {
    /// Invariant factors different from one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    l: Vec<Vec<BigInt>>,
    r: Vec<Vec<BigInt>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.l.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.r.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i -= q · row_j
    fn row_op(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.l] {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(src) {
                *x -= q * y;
            }
        }
    }

    /// col_i -= q · col_j
    fn col_op(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.r] {
            for row in m.iter_mut() {
                let y = row[j].clone();
                row[i] -= q * y;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.l] {
            for x in m[i].iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

fn eye(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as u8)).collect()).collect()
}

/// Smith normal form of an integer matrix with unimodular transforms.
///
/// The pivot at each stage is the entry of smallest absolute value in the
/// remaining block (first in row-major order on ties).
pub fn smith_normal_form(m: &ExactMatrix) -> Result<SmithDecomposition, ExactError> {
    let a = m.to_integer_rows()?;
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work { a, l: eye(rows), r: eye(cols) };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest(&w.a, t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_floor(&w.a[t][t]);
                    w.row_op(i, t, &q);
                    if !w.a[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_floor(&w.a[t][t]);
                    w.col_op(j, t, &q);
                    if !w.a[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                // Divisibility: fold any entry not divisible by the pivot
                // back into the pivot row and repeat.
                let p = w.a[t][t].clone();
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !w.a[i][j].is_multiple_of(&p));
                match bad {
                    None => break,
                    Some((i, _)) => {
                        w.row_op(t, i, &BigInt::from(-1));
                        continue;
                    }
                }
            }
            // Re-pivot on the smallest nonzero entry in row t / column t.
            let mut best = (t, t);
            for i in t..rows {
                if !w.a[i][t].is_zero() && w.a[i][t].abs() < w.a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !w.a[t][j].is_zero() && w.a[t][j].abs() < w.a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            w.swap_rows(t, best.0);
            w.swap_cols(t, best.1);
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let rank = t;
    let invariant_factors: Vec<BigInt> = (0..rank).map(|i| w.a[i][i].clone()).collect();
    Ok(SmithDecomposition {
        invariant_factors,
        rank,
        free_rank: rows - rank,
        left: ExactMatrix::from_integer_rows(&w.l),
        right: ExactMatrix::from_integer_rows(&w.r),
        diagonal: ExactMatrix::from_integer_rows(&w.a),
    })
}

fn smallest(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}
