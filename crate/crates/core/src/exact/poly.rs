use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{ExactError, Rational, UniPoly};

/// Sparse multivariate polynomial over ℚ.
///
/// Variables are kept sorted and unique; every exponent vector has one slot
/// per variable. Zero coefficients are never stored. Two polynomials with
/// different variable lists are aligned on the union before any operation.
#[derive(Clone, Debug, Default)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Self { vars: Vec::new(), terms }
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Rational::one());
        Self { vars: vec![name.to_string()], terms }
    }

    /// Builds from `(coefficient, [(var, exponent)])` monomials.
    pub fn from_monomials<'a>(
        monomials: impl IntoIterator<Item = (Rational, Vec<(&'a str, u32)>)>,
    ) -> Self {
        let mut p = Self::zero();
        for (c, mono) in monomials {
            let mut t = Self::constant(c);
            for (v, e) in mono {
                t = &t * &Self::var(v).pow(e);
            }
            p = &p + &t;
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Variables that actually occur with a positive exponent.
    pub fn used_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|e| e[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Constant value if the polynomial has no variables in use.
    pub fn as_constant(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree in `var`; zero if the variable does not occur, `None` for the
    /// zero polynomial.
    pub fn degree_in(&self, var: &str) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        Some(match self.index_of(var) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        })
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    fn index_of(&self, var: &str) -> Option<usize> {
        self.vars.binary_search_by(|v| v.as_str().cmp(var)).ok()
    }

    /// Re-express over a superset of variables.
    fn aligned(&self, vars: &[String]) -> Self {
        if vars == self.vars.as_slice() {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.binary_search(v).expect("alignment target must contain all variables"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0; vars.len()];
                for (k, &x) in e.iter().enumerate() {
                    ne[map[k]] = x;
                }
                (ne, c.clone())
            })
            .collect();
        Self { vars: vars.to_vec(), terms }
    }

    fn union_vars(a: &Self, b: &Self) -> Vec<String> {
        let set: BTreeSet<&String> = a.vars.iter().chain(&b.vars).collect();
        set.into_iter().cloned().collect()
    }

    /// Drops variables that no longer occur.
    pub fn compact(&self) -> Self {
        let used = self.used_vars();
        if used.len() == self.vars.len() {
            return self.clone();
        }
        let keep: Vec<usize> =
            self.vars.iter().enumerate().filter(|(_, v)| used.contains(v)).map(|(i, _)| i).collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c.clone()))
            .collect();
        Self { vars: used, terms }
    }

    /// Adds `var` to the variable list (no-op if present).
    pub fn with_var(&self, var: &str) -> Self {
        if self.index_of(var).is_some() {
            return self.clone();
        }
        let mut vars = self.vars.clone();
        vars.push(var.to_string());
        vars.sort();
        self.aligned(&vars)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    pub fn derivative(&self, var: &str) -> Self {
        let Some(i) = self.index_of(var) else {
            return Self { vars: self.vars.clone(), terms: BTreeMap::new() };
        };
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut ne = e.clone();
                ne[i] -= 1;
                terms.insert(ne, c * Rational::from_integer(e[i].into()));
            }
        }
        Self { vars: self.vars.clone(), terms }
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables.
    pub fn coeff_in(&self, var: &str, k: u32) -> Self {
        let Some(i) = self.index_of(var) else {
            return if k == 0 { self.clone() } else { Self::zero() };
        };
        let mut vars = self.vars.clone();
        vars.remove(i);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut ne = e.clone();
                ne.remove(i);
                terms.insert(ne, c.clone());
            }
        }
        Self { vars, terms }
    }

    /// Coefficients in `var`, low degree first.
    pub fn coeffs_in(&self, var: &str) -> Vec<Self> {
        match self.degree_in(var) {
            None => Vec::new(),
            Some(d) => (0..=d).map(|k| self.coeff_in(var, k)).collect(),
        }
    }

    /// Substitutes a rational value for `var`; the variable disappears.
    pub fn substitute(&self, var: &str, value: &Rational) -> Self {
        let Some(i) = self.index_of(var) else { return self.clone() };
        let mut vars = self.vars.clone();
        vars.remove(i);
        let mut out = Self { vars, terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne.remove(i);
            let v = c * num_traits::pow(value.clone(), k as usize);
            if v.is_zero() {
                continue;
            }
            let slot = out.terms.entry(ne).or_insert_with(Rational::zero);
            *slot += v;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    /// Substitutes a polynomial for `var`.
    pub fn compose(&self, var: &str, value: &Self) -> Self {
        let coeffs = self.coeffs_in(var);
        let mut out = Self::zero();
        for c in coeffs.iter().rev() {
            out = &(&out * value) + c;
        }
        out
    }

    /// Simultaneous substitution of polynomials for several variables.
    pub fn compose_all(&self, subs: &[(&str, Self)]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (k, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let name = &self.vars[k];
                let base = subs
                    .iter()
                    .find(|(v, _)| v == name)
                    .map(|(_, p)| p.clone())
                    .unwrap_or_else(|| Self::var(name));
                t = &t * &base.pow(x);
            }
            out = &out + &t;
        }
        out
    }

    /// Evaluates at a full assignment. Missing variables are an error.
    pub fn eval(&self, values: &[(&str, Rational)]) -> Result<Rational, ExactError> {
        let mut p = self.clone();
        for (v, x) in values {
            p = p.substitute(v, x);
        }
        p.as_constant().ok_or_else(|| ExactError::UnknownVariable(p.used_vars().join(",")))
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let vars = Self::union_vars(self, d);
        let mut r = self.aligned(&vars);
        let d = d.aligned(&vars);
        let (dl_e, dl_c) = d.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut q = Self { vars: vars.clone(), terms: BTreeMap::new() };
        while let Some((re, rc)) = r.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if re.iter().zip(&dl_e).any(|(a, b)| a < b) {
                return None;
            }
            let me: Vec<u32> = re.iter().zip(&dl_e).map(|(a, b)| a - b).collect();
            let mc = &rc / &dl_c;
            let mono = Self { vars: vars.clone(), terms: BTreeMap::from([(me.clone(), mc.clone())]) };
            r = &r - &(&mono * &d);
            *q.terms.entry(me).or_insert_with(Rational::zero) += mc;
        }
        q.terms.retain(|_, c| !c.is_zero());
        Some(q)
    }

    /// Univariate view: requires at most one variable in use.
    pub fn to_univariate(&self) -> Result<(Option<String>, UniPoly), ExactError> {
        let p = self.compact();
        match p.vars.len() {
            0 => Ok((None, UniPoly::constant(p.constant_term()))),
            1 => {
                let d = p.total_degree().unwrap_or(0) as usize;
                let mut c = vec![Rational::zero(); d + 1];
                for (e, v) in &p.terms {
                    c[e[0] as usize] = v.clone();
                }
                Ok((Some(p.vars[0].clone()), UniPoly::new(c)))
            }
            _ => Err(ExactError::NotUnivariate(p.vars.join(","))),
        }
    }

    /// Divides by the content so the coefficients are coprime integers with a
    /// positive leading (lex-largest) coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut l = num_bigint::BigInt::one();
        let mut g = num_bigint::BigInt::zero();
        for c in self.terms.values() {
            l = num_integer::Integer::lcm(&l, c.denom());
        }
        for c in self.terms.values() {
            g = num_integer::Integer::gcd(&g, &(c.numer() * (&l / c.denom())));
        }
        let lead_neg = self.terms.values().next_back().unwrap().is_negative();
        let s = Rational::new(if lead_neg { -l } else { l }, g);
        self.scale(&s)
    }

    /// Homogeneous part of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Lowest total degree among the terms.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }
}

/// Sylvester resultant with respect to `var`, computed by fraction-free
/// elimination with exact polynomial division.
pub fn resultant(f: &MPoly, g: &MPoly, var: &str) -> Result<MPoly, ExactError> {
    if !f.vars.iter().chain(&g.vars).any(|v| v == var) {
        return Err(ExactError::UnknownVariable(var.to_string()));
    }
    if f.is_zero() || g.is_zero() {
        return Ok(MPoly::zero());
    }
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    let (m, n) = (fc.len() - 1, gc.len() - 1);
    if m == 0 && n == 0 {
        return Ok(MPoly::one());
    }
    if m == 0 {
        return Ok(fc[0].pow(n as u32));
    }
    if n == 0 {
        return Ok(gc[0].pow(m as u32));
    }
    let size = m + n;
    let mut s = vec![vec![MPoly::zero(); size]; size];
    // Rows: n shifted copies of f, then m shifted copies of g; highest degree first.
    for i in 0..n {
        for (k, c) in fc.iter().rev().enumerate() {
            s[i][i + k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in gc.iter().rev().enumerate() {
            s[n + i][i + k] = c.clone();
        }
    }
    Ok(bareiss(s))
}

fn bareiss(mut a: Vec<Vec<MPoly>>) -> MPoly {
    let n = a.len();
    let mut negate = false;
    let mut prev = MPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return MPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = MPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -&d
    } else {
        d
    }
}

/// Equality ignores variables that do not occur.
impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = (self.compact(), other.compact());
        a.vars == b.vars && a.terms == b.terms
    }
}

impl Eq for MPoly {}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let vars = MPoly::union_vars(self, rhs);
        let mut out = self.aligned(&vars);
        for (e, c) in rhs.aligned(&vars).terms {
            let slot = out.terms.entry(e).or_insert_with(Rational::zero);
            *slot += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let vars = MPoly::union_vars(self, rhs);
        let a = self.aligned(&vars);
        let b = rhs.aligned(&vars);
        let mut terms: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let slot = terms.entry(e).or_insert_with(Rational::zero);
                *slot += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MPoly { vars, terms }
    }
}

impl fmt::Display for MPoly {
    /// Terms in descending lexicographic order of exponent vectors, e.g.
    /// `x^3 - 2*x*y*z + 4/27*z^3`. Re-parses to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], x)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", a, mono.join("*"))?;
            }
        }
        Ok(())
    }
}
