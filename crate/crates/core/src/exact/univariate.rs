use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactError, MPoly, Rational};

/// Dense univariate polynomial over ℚ, coefficients from low to high degree.
/// Always trimmed: no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Rational::zero();
        Self::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division. Panics when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() / &lead;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiply through by the lcm of denominators and divide by the content;
    /// the leading coefficient is made positive.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let s = if ints.last().unwrap().is_negative() { -g } else { g };
        for c in ints.iter_mut() {
            *c = &*c / &s;
        }
        ints
    }

    pub fn to_mpoly(&self, var: &str) -> MPoly {
        let mut p = MPoly::zero();
        let x = MPoly::var(var);
        for c in self.coeffs.iter().rev() {
            p = &(&p * &x) + &MPoly::constant(c.clone());
        }
        p
    }
}

/// Squarefree part `f / gcd(f, f')`, made monic.
pub fn squarefree_part(f: &UniPoly) -> Result<UniPoly, ExactError> {
    if f.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let g = f.gcd(&f.derivative());
    Ok(f.div_rem(&g).0.monic())
}

/// All distinct rational roots, sorted ascending.
pub fn rational_roots(f: &UniPoly) -> Result<Vec<Rational>, ExactError> {
    let sf = squarefree_part(f)?;
    let mut c = sf.primitive_integer();
    let mut roots = BTreeSet::new();
    let lead_zero = c.iter().take_while(|x| x.is_zero()).count();
    if lead_zero > 0 {
        roots.insert(Rational::zero());
        c.drain(..lead_zero);
    }
    if c.len() <= 1 {
        return Ok(roots.into_iter().collect());
    }
    let c0 = c[0].abs();
    let cn = c.last().unwrap().abs();
    let ps = divisors(&c0);
    let qs = divisors(&cn);
    let n = c.len() - 1;
    for q in &qs {
        for p in &ps {
            if !p.gcd(q).is_one() {
                continue;
            }
            for sp in [p.clone(), -p.clone()] {
                // q^n f(p/q) = Σ c_i p^i q^(n-i)
                let mut acc = BigInt::zero();
                let mut qpow = BigInt::one();
                let mut terms = Vec::with_capacity(n + 1);
                for _ in 0..=n {
                    terms.push(qpow.clone());
                    qpow *= q;
                }
                let mut ppow = BigInt::one();
                for (i, ci) in c.iter().enumerate() {
                    acc += ci * &ppow * &terms[n - i];
                    ppow *= &sp;
                }
                if acc.is_zero() {
                    roots.insert(Rational::new(sp, q.clone()));
                }
            }
        }
    }
    Ok(roots.into_iter().collect())
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor_integer(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Prime factorization of |n| as (prime, exponent) pairs in ascending order.
/// Trial division by small primes, then Miller–Rabin and Pollard–Brent rho.
pub fn factor_integer(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p = 2u32;
    while p < 10_000 {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    let mut big = Vec::new();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            big.push(m);
            continue;
        }
        let r = m.sqrt();
        if &r * &r == m {
            stack.push(r.clone());
            stack.push(r);
            continue;
        }
        let d = pollard_brent(&m);
        stack.push(&m / &d);
        stack.push(d);
    }
    big.sort();
    for q in big {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out.sort();
    out
}

fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    const BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    for b in BASES {
        let b = BigInt::from(b);
        if n == &b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let nm1 = n - 1u32;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for b in BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A nontrivial factor of an odd composite `n`.
fn pollard_brent(n: &BigInt) -> BigInt {
    if n.is_even() {
        return BigInt::from(2);
    }
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let (mut y, mut r, mut q) = (BigInt::from(2), 1u64, BigInt::one());
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..(128.min(r - k)) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn squarefree_of_cubic() {
        let f = UniPoly::from_i64(&[-4, -4, 0, 1]);
        assert_eq!(squarefree_part(&f).unwrap(), f);
        let g = f.mul(&f).mul(&UniPoly::from_i64(&[1, 1]));
        assert_eq!(squarefree_part(&g).unwrap(), f.mul(&UniPoly::from_i64(&[1, 1])));
        assert!(squarefree_part(&UniPoly::zero()).is_err());
    }

    #[test]
    fn roots_of_products() {
        // (27a - 4)(a + 8/27)(121a + 32) a^2
        let f = UniPoly::from_i64(&[-4, 27])
            .mul(&UniPoly::new(vec![rat(8, 27), int(1)]))
            .mul(&UniPoly::from_i64(&[32, 121]))
            .mul(&UniPoly::from_i64(&[0, 0, 1]));
        let r = rational_roots(&f).unwrap();
        assert_eq!(r, vec![rat(-8, 27), rat(-32, 121), int(0), rat(4, 27)]);
        assert!(rational_roots(&UniPoly::from_i64(&[-4, -4, 0, 1])).unwrap().is_empty());
        assert!(rational_roots(&UniPoly::from_i64(&[5])).unwrap().is_empty());
    }

    #[test]
    fn factors_large_semiprime() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        let n = &p * &q * BigInt::from(12);
        let f = factor_integer(&n);
        assert_eq!(
            f,
            vec![(BigInt::from(2), 2), (BigInt::from(3), 1), (q, 1), (p, 1)]
        );
        assert_eq!(divisors(&BigInt::from(36)).len(), 9);
    }

    #[test]
    fn primitive_integer_form() {
        let f = UniPoly::new(vec![int(-1), int(-1), int(0), rat(1, 4)]).scale(&int(-3));
        let p = f.primitive_integer();
        assert_eq!(p, vec![-4, -4, 0, 1].into_iter().map(BigInt::from).collect::<Vec<_>>());
    }
}
