//! Words in the Dehn-twist generators a, b of the torus mapping class group
//! and their images in SL(2, ℤ).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::FiberError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    B,
}

/// A word (g₁^k₁)(g₂^k₂)…; exponents are nonzero. Parsing keeps the letters
/// as written; [`McgWord::free_reduce`] merges and cancels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct McgWord {
    letters: Vec<(Gen, i64)>,
}

impl McgWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn gen(g: Gen, k: i64) -> Self {
        let mut w = Self::identity();
        w.push(g, k);
        w
    }

    pub fn letters(&self) -> &[(Gen, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of generator occurrences counted with |exponent|.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|(_, k)| k.unsigned_abs()).sum()
    }

    fn push(&mut self, g: Gen, k: i64) {
        if k != 0 {
            self.letters.push((g, k));
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut w = self.clone();
        w.letters.extend_from_slice(&other.letters);
        w
    }

    pub fn inverse(&self) -> Self {
        Self { letters: self.letters.iter().rev().map(|&(g, k)| (g, -k)).collect() }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Self::identity();
        for _ in 0..k.unsigned_abs() {
            w.letters.extend_from_slice(&base.letters);
        }
        w
    }

    /// Merges adjacent powers of the same generator and drops zero exponents,
    /// repeatedly, so the result has alternating generators.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<(Gen, i64)> = Vec::with_capacity(self.letters.len());
        for &(g, k) in &self.letters {
            match out.last_mut() {
                Some((h, e)) if *h == g => {
                    *e += k;
                    if *e == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, k)),
            }
        }
        Self { letters: out }
    }

    /// Image under a ↦ [[1,1],[0,1]], b ↦ [[1,0],[−1,1]].
    pub fn evaluate(&self) -> Sl2 {
        self.letters.iter().fold(Sl2::identity(), |acc, &(g, k)| acc.mul(&Sl2::generator(g).pow(k)))
    }

    /// Parses words over a, b with inverses written `A`, `B` or `a^-1`,
    /// parenthesised groups and integer powers, e.g. `(ab)^6`, `a^-1 b a`.
    pub fn parse(text: &str) -> Result<Self, FiberError> {
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let w = parse_seq(&chars, &mut pos, 0)?;
        skip(&chars, &mut pos);
        if pos < chars.len() {
            return Err(FiberError::WordParse { pos, msg: format!("unexpected `{}`", chars[pos]) });
        }
        Ok(w)
    }
}

fn skip(s: &[char], pos: &mut usize) {
    while *pos < s.len() && (s[*pos].is_whitespace() || s[*pos] == '*' || s[*pos] == '·') {
        *pos += 1;
    }
}

fn parse_seq(s: &[char], pos: &mut usize, depth: usize) -> Result<McgWord, FiberError> {
    let mut w = McgWord::identity();
    loop {
        skip(s, pos);
        let Some(&c) = s.get(*pos) else { break };
        let item = match c {
            'a' | 'b' | 'A' | 'B' => {
                *pos += 1;
                let g = if c.eq_ignore_ascii_case(&'a') { Gen::A } else { Gen::B };
                McgWord::gen(g, if c.is_ascii_uppercase() { -1 } else { 1 })
            }
            '(' => {
                *pos += 1;
                let inner = parse_seq(s, pos, depth + 1)?;
                skip(s, pos);
                if s.get(*pos) != Some(&')') {
                    return Err(FiberError::WordParse { pos: *pos, msg: "expected `)`".into() });
                }
                *pos += 1;
                inner
            }
            '1' => {
                *pos += 1;
                McgWord::identity()
            }
            ')' if depth > 0 => break,
            _ => return Err(FiberError::WordParse { pos: *pos, msg: format!("unexpected `{c}`") }),
        };
        skip(s, pos);
        let item = if s.get(*pos) == Some(&'^') {
            *pos += 1;
            skip(s, pos);
            let start = *pos;
            if matches!(s.get(*pos), Some('-') | Some('+')) {
                *pos += 1;
            }
            while s.get(*pos).is_some_and(char::is_ascii_digit) {
                *pos += 1;
            }
            let digits: String = s[start..*pos].iter().collect();
            let k: i64 = digits
                .parse()
                .map_err(|_| FiberError::WordParse { pos: start, msg: "expected an integer exponent".into() })?;
            match item.letters.as_slice() {
                [(g, e)] => McgWord::gen(*g, e * k),
                _ => item.pow(k),
            }
        } else {
            item
        };
        w = w.concat(&item);
    }
    Ok(w)
}

impl fmt::Display for McgWord {
    /// Letters separated by spaces, e.g. `a^-1 b a`; the identity prints `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, k)| {
                let name = if g == Gen::A { "a" } else { "b" };
                if k == 1 {
                    name.to_string()
                } else {
                    format!("{name}^{k}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for McgWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// [[a, b], [c, d]] with ad − bc = 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sl2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Sl2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    pub fn generator(g: Gen) -> Self {
        match g {
            Gen::A => Self::new(1, 1, 0, 1),
            Gen::B => Self::new(1, 0, -1, 1),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.d.clone(), b: -self.b.clone(), c: -self.c.clone(), d: self.a.clone() }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Self::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }

    /// ±I.
    pub fn is_central(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d && (self.a.is_one() || self.a == -BigInt::one())
    }

    pub fn rows(&self) -> [[BigInt; 2]; 2] {
        [[self.a.clone(), self.b.clone()], [self.c.clone(), self.d.clone()]]
    }
}

impl fmt::Display for Sl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for Sl2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let j = |x: &BigInt| crate::json::bigint(x);
        let v = serde_json::json!([[j(&self.a), j(&self.b)], [j(&self.c), j(&self.d)]]);
        v.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> McgWord {
        McgWord::parse(s).unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(w("(ab)^6").to_string(), "a b a b a b a b a b a b");
        assert_eq!(w("a^-1 b a").to_string(), "a^-1 b a");
        assert_eq!(w("A b a"), w("a^-1 b a"));
        assert!(w("").is_empty());
        assert_eq!(w("(ab)^-1"), w("B A"));
        assert_eq!(w("((ab)^2 a)^2").length(), 10);
        assert!(matches!(McgWord::parse("a c"), Err(FiberError::WordParse { pos: 2, .. })));
        assert!(McgWord::parse("(ab").is_err());
        assert!(McgWord::parse("a^").is_err());
        assert!(McgWord::parse("a)").is_err());
    }

    #[test]
    fn images() {
        assert_eq!(w("a").evaluate(), Sl2::new(1, 1, 0, 1));
        assert_eq!(w("b").evaluate(), Sl2::new(1, 0, -1, 1));
        assert!(w("(ab)^6").evaluate().is_identity());
        assert!(w("(a^3 b)^3").evaluate().is_identity());
        assert_eq!(w("aba").evaluate(), Sl2::new(0, 1, -1, 0));
        assert_eq!(w("bab").evaluate(), Sl2::new(0, 1, -1, 0));
        assert_eq!(w("(ab)^3").evaluate(), Sl2::new(-1, 0, 0, -1));
    }

    #[test]
    fn reduction() {
        assert_eq!(w("a^2 (a^-1 b a) b").free_reduce(), w("abab"));
        assert!(w("a a^-1").free_reduce().is_empty());
        let long = w("a^6 (a^-3 b a^3) (b a b^-1)^2 b^2 (b^-1 a b)");
        assert_eq!(long.free_reduce(), w("a^3 b a^3 b a^3 b"));
        assert_eq!(w("a a b").free_reduce(), w("a^2 b"));
        assert_eq!(w("b a A B").free_reduce(), McgWord::identity());
    }

    fn arb_word() -> impl Strategy<Value = McgWord> {
        proptest::collection::vec((any::<bool>(), -3i64..4), 0..12).prop_map(|v| {
            let mut w = McgWord::identity();
            for (g, k) in v {
                w.push(if g { Gen::A } else { Gen::B }, k);
            }
            w
        })
    }

    proptest! {
        #![proptest_config(crate::fixed_seed(2000))]

        #[test]
        fn evaluate_is_a_homomorphism(u in arb_word(), v in arb_word()) {
            prop_assert_eq!(u.concat(&v).evaluate(), u.evaluate().mul(&v.evaluate()));
            prop_assert!(u.concat(&u.inverse()).evaluate().is_identity());
            prop_assert_eq!(u.free_reduce().evaluate(), u.evaluate());
            prop_assert_eq!(McgWord::parse(&u.to_string()).unwrap().free_reduce(), u.free_reduce());
            prop_assert!(u.evaluate().det().is_one());
        }
    }
}
