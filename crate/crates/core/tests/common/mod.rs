//! Small independent oracles shared by the integration tests: fixed-size
//! integer and i128-rational arithmetic that does not go through the library.

#![allow(dead_code)]

use blowdown::exact::{ExactMatrix, Rational};
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use proptest::test_runner::{Config, RngSeed};

pub type Q = Ratio<i128>;

pub fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(0x5eed_0007), failure_persistence: None, ..Default::default() }
}

pub fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

pub fn to_q(x: &Rational) -> Q {
    Q::new(x.numer().to_i128().expect("small"), x.denom().to_i128().expect("small"))
}

pub fn to_i128(x: &BigInt) -> i128 {
    x.to_i128().expect("small")
}

pub fn matrix_q(m: &ExactMatrix) -> Vec<Vec<Q>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(to_q).collect()).collect()
}

pub fn matrix_i128(m: &ExactMatrix) -> Vec<Vec<i128>> {
    matrix_q(m)
        .into_iter()
        .map(|r| r.into_iter().map(|x| { assert!(x.is_integer()); x.to_integer() }).collect())
        .collect()
}

pub fn imul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, |r| r.len()));
    (0..n).map(|i| (0..m).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect()).collect()
}

/// Gauss-Jordan inverse over i128 rationals.
pub fn q_inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c];
                let src = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(src) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant by fraction-free (Bareiss) elimination in i128.
pub fn idet(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    let mut a = m.to_vec();
    let (mut sign, mut prev) = (1, 1);
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| a[r][k] != 0) else { return 0 };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 { 1 } else { sign * a[n - 1][n - 1] }
}

pub fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

pub fn lcm(a: i128, b: i128) -> i128 {
    a / gcd(a, b) * b
}

/// Order of the j-th generator in ℤⁿ / (row space of m), m nonsingular:
/// the lcm of the denominators of row j of m⁻¹.
pub fn generator_order(m: &[Vec<i128>], j: usize) -> i128 {
    let mq: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|&x| Q::from_integer(x)).collect()).collect();
    let inv = q_inverse(&mq).expect("nonsingular");
    inv[j].iter().fold(1, |acc, x| lcm(acc, *x.denom()))
}

/// Linking matrix of a linear chain with the given framings.
pub fn chain_matrix(framings: &[i64]) -> Vec<Vec<i128>> {
    let n = framings.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { framings[i] as i128 } else if i.abs_diff(j) == 1 { 1 } else { 0 })
                .collect()
        })
        .collect()
}

/// [a₁, …, a_k] = a₁ − 1/(a₂ − 1/(…)).
pub fn hj_value(a: &[i64]) -> Q {
    let mut v = Q::from_integer(*a.last().unwrap() as i128);
    for &x in a[..a.len() - 1].iter().rev() {
        v = Q::from_integer(x as i128) - v.recip();
    }
    v
}

pub type M2 = [[i64; 2]; 2];

pub fn m2(a: &M2, b: &M2) -> M2 {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

pub fn m2_inv(a: &M2) -> M2 {
    [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]
}

pub const A: M2 = [[1, 1], [0, 1]];
pub const B: M2 = [[1, 0], [-1, 1]];
pub const I: M2 = [[1, 0], [0, 1]];

/// Evaluates a word given as (generator is `a`, exponent) pairs.
pub fn m2_word(letters: &[(bool, i64)]) -> M2 {
    letters.iter().fold(I, |acc, &(is_a, k)| {
        let g = if is_a { A } else { B };
        let g = if k < 0 { m2_inv(&g) } else { g };
        (0..k.unsigned_abs()).fold(acc, |m, _| m2(&m, &g))
    })
}

pub fn sl2_rows(s: &blowdown::fibers::Sl2) -> M2 {
    let r = s.rows();
    let f = |x: &BigInt| x.to_i64().expect("small");
    [[f(&r[0][0]), f(&r[0][1])], [f(&r[1][0]), f(&r[1][1])]]
}
