//! Second homology of CP²#nCP̄² in the basis {h, e₁, …, eₙ}: pairing,
//! blow-ups, proper transforms, canonical class, and replay of blow-up
//! multiplicity ledgers for pencils of cubics.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{parse_rational, ExactMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("classes live in different ambients (n = {0} and n = {1})")]
    AmbientMismatch(usize, usize),
    #[error("negative multiplicity {0}")]
    NegativeMultiplicity(i64),
    #[error("no exceptional class to take a proper transform against (n = 0)")]
    NoExceptional,
    #[error("cannot parse class `{text}`: {msg}")]
    Parse { text: String, msg: String },
    #[error("ledger step {step}: {msg}")]
    Ledger { step: usize, msg: String },
    #[error("invalid ledger JSON: {0}")]
    LedgerFormat(String),
}

/// A class x_h·h + Σ x_i·e_i in H₂(CP²#nCP̄²; ℚ).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct H2Class {
    h: Rational,
    e: Vec<Rational>,
}

impl H2Class {
    pub fn zero(n: usize) -> Self {
        Self { h: Rational::zero(), e: vec![Rational::zero(); n] }
    }

    pub fn h(n: usize) -> Self {
        Self { h: Rational::one(), ..Self::zero(n) }
    }

    /// e_i, 1-based. Panics if i is outside 1..=n.
    pub fn e(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "e{i} does not exist for n = {n}");
        let mut c = Self::zero(n);
        c.e[i - 1] = Rational::one();
        c
    }

    pub fn new(h: Rational, e: Vec<Rational>) -> Self {
        Self { h, e }
    }

    pub fn from_ints(h: i64, e: &[i64]) -> Self {
        Self {
            h: Rational::from_integer(h.into()),
            e: e.iter().map(|&x| Rational::from_integer(x.into())).collect(),
        }
    }

    /// K = −3h + e₁ + … + eₙ.
    pub fn canonical(n: usize) -> Self {
        Self { h: Rational::from_integer((-3).into()), e: vec![Rational::one(); n] }
    }

    /// Fibre class 3h − e₁ − … − e₉ of E(1) = CP²#9CP̄², lifted to `n ≥ 9`.
    pub fn fiber(n: usize) -> Self {
        assert!(n >= 9);
        let mut c = Self::from_ints(3, &[-1; 9]);
        c.e.resize(n, Rational::zero());
        c
    }

    pub fn ambient(&self) -> usize {
        self.e.len()
    }

    pub fn h_coeff(&self) -> &Rational {
        &self.h
    }

    /// Coefficient of e_i (1-based).
    pub fn e_coeff(&self, i: usize) -> &Rational {
        &self.e[i - 1]
    }

    pub fn e_coeffs(&self) -> &[Rational] {
        &self.e
    }

    /// Coefficients in basis order (h, e₁, …, eₙ).
    pub fn coords(&self) -> Vec<Rational> {
        std::iter::once(self.h.clone()).chain(self.e.iter().cloned()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coords().iter().all(|c| c.denom().is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.h.is_zero() && self.e.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { h: &self.h * s, e: self.e.iter().map(|x| x * s).collect() }
    }

    pub fn scale_int(&self, s: i64) -> Self {
        self.scale(&Rational::from_integer(s.into()))
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, HomologyError> {
        self.same_ambient(o)?;
        Ok(Self { h: &self.h + &o.h, e: self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect() })
    }

    fn same_ambient(&self, o: &Self) -> Result<(), HomologyError> {
        if self.ambient() != o.ambient() {
            return Err(HomologyError::AmbientMismatch(self.ambient(), o.ambient()));
        }
        Ok(())
    }

    pub fn square(&self) -> Rational {
        pair(self, self).expect("same ambient")
    }

    /// Parses `3h - e1 - 2e10`, `12h + e9 - 4(e1..e9) - 2(e10..e13)`,
    /// `1/2*h`, … . The ambient is `n` if given, otherwise the largest index.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self, HomologyError> {
        let err = |msg: &str| HomologyError::Parse { text: text.to_string(), msg: msg.to_string() };
        let mut terms: Vec<(Rational, Option<(usize, usize)>)> = Vec::new();
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() || s == "0" {
            return Ok(Self::zero(n.unwrap_or(0)));
        }
        let b = s.as_bytes();
        let mut i = 0;
        while i < b.len() {
            let mut sign = Rational::one();
            if b[i] == b'+' || b[i] == b'-' {
                if b[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            } else if !terms.is_empty() {
                return Err(err("expected `+` or `-`"));
            }
            let start = i;
            while i < b.len() && (b[i].is_ascii_digit() || b[i] == b'/') {
                i += 1;
            }
            let coef = if start == i {
                Rational::one()
            } else {
                parse_rational(&s[start..i]).map_err(|_| err("bad coefficient"))?
            };
            if i < b.len() && b[i] == b'*' {
                i += 1;
            }
            let basis = if i < b.len() && b[i] == b'h' {
                i += 1;
                None
            } else if i < b.len() && b[i] == b'e' {
                i += 1;
                let k = read_index(b, &mut i).ok_or_else(|| err("expected an index after `e`"))?;
                Some((k, k))
            } else if i < b.len() && b[i] == b'(' {
                i += 1;
                if b.get(i) != Some(&b'e') {
                    return Err(err("expected `e` in range"));
                }
                i += 1;
                let lo = read_index(b, &mut i).ok_or_else(|| err("bad range start"))?;
                if !s[i..].starts_with("..e") {
                    return Err(err("expected `..e` in range"));
                }
                i += 3;
                let hi = read_index(b, &mut i).ok_or_else(|| err("bad range end"))?;
                if b.get(i) != Some(&b')') || hi < lo {
                    return Err(err("bad range"));
                }
                i += 1;
                Some((lo, hi))
            } else if start != i {
                // Bare number: only 0 makes sense in H₂.
                if coef.is_zero() {
                    continue;
                }
                return Err(err("constant term"));
            } else {
                return Err(err("expected `h`, `e<k>` or `(e<i>..e<j>)`"));
            };
            terms.push((sign * coef, basis));
        }
        let max = terms.iter().filter_map(|(_, r)| r.map(|(_, hi)| hi)).max().unwrap_or(0);
        let n = match n {
            Some(n) if n < max => return Err(err("index exceeds the ambient")),
            Some(n) => n,
            None => max,
        };
        let mut c = Self::zero(n);
        for (coef, basis) in terms {
            match basis {
                None => c.h += coef,
                Some((lo, hi)) => {
                    for k in lo..=hi {
                        if k == 0 {
                            return Err(err("indices start at 1"));
                        }
                        c.e[k - 1] += &coef;
                    }
                }
            }
        }
        Ok(c)
    }
}

fn read_index(b: &[u8], i: &mut usize) -> Option<usize> {
    let start = *i;
    while *i < b.len() && b[*i].is_ascii_digit() {
        *i += 1;
    }
    std::str::from_utf8(&b[start..*i]).ok()?.parse().ok()
}

impl fmt::Display for H2Class {
    /// `3h - e1 - 2e10`; zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let names = std::iter::once("h".to_string()).chain((1..=self.e.len()).map(|i| format!("e{i}")));
        for (c, name) in std::iter::once(&self.h).chain(&self.e).zip(names) {
            if c.is_zero() {
                continue;
            }
            let a = c.abs();
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let coef = if a.is_one() {
                String::new()
            } else if a.denom().is_one() {
                a.to_string()
            } else {
                format!("{a}*")
            };
            write!(f, "{sep}{coef}{name}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for H2Class {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Add for &H2Class {
    type Output = H2Class;
    fn add(self, o: &H2Class) -> H2Class {
        self.try_add(o).expect("ambient mismatch")
    }
}

impl Sub for &H2Class {
    type Output = H2Class;
    fn sub(self, o: &H2Class) -> H2Class {
        self.try_add(&-o).expect("ambient mismatch")
    }
}

impl Neg for &H2Class {
    type Output = H2Class;
    fn neg(self) -> H2Class {
        self.scale(&-Rational::one())
    }
}

/// x·y = x_h y_h − Σ x_i y_i.
pub fn pair(x: &H2Class, y: &H2Class) -> Result<Rational, HomologyError> {
    x.same_ambient(y)?;
    let mut acc = &x.h * &y.h;
    for (a, b) in x.e.iter().zip(&y.e) {
        acc -= a * b;
    }
    Ok(acc)
}

/// The same class in CP²#(n+1)CP̄² (new coefficient zero).
pub fn blow_up(x: &H2Class) -> H2Class {
    let mut y = x.clone();
    y.e.push(Rational::zero());
    y
}

/// Lifts to ambient `n` by repeated blow-ups.
pub fn lift_to(x: &H2Class, n: usize) -> Result<H2Class, HomologyError> {
    if n < x.ambient() {
        return Err(HomologyError::AmbientMismatch(x.ambient(), n));
    }
    let mut y = x.clone();
    y.e.resize(n, Rational::zero());
    Ok(y)
}

/// x − m·eₙ, where eₙ is the most recent exceptional class.
pub fn proper_transform(x: &H2Class, m: i64) -> Result<H2Class, HomologyError> {
    if m < 0 {
        return Err(HomologyError::NegativeMultiplicity(m));
    }
    let n = x.ambient();
    if n == 0 {
        return Err(HomologyError::NoExceptional);
    }
    let mut y = x.clone();
    y.e[n - 1] -= Rational::from_integer(m.into());
    Ok(y)
}

pub fn gram(classes: &[H2Class]) -> Result<ExactMatrix, HomologyError> {
    let k = classes.len();
    let mut m = ExactMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            m.set(i, j, pair(&classes[i], &classes[j])?);
        }
    }
    Ok(m)
}

/// K² = 3σ + 2χ.
pub fn wu_check(k: &H2Class, sigma: i64, chi: i64) -> bool {
    k.square() == Rational::from_integer((3 * sigma + 2 * chi).into())
}

/// Multiplicity as written in a ledger: a number, or a reference such as
/// `"e1"` to the solved multiplicity of an earlier exceptional class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MultSpec {
    Value(u64),
    Exceptional(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSpec {
    pub class: String,
    pub mult: MultSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepSpec {
    pub fiber: String,
    pub components: Vec<ComponentSpec>,
}

/// A pencil blow-up ledger: the special fibre before any blow-up, then one
/// step per blow-up. Step k happens in CP²#kCP̄² and introduces e_k.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ledger {
    pub name: String,
    pub initial: StepSpec,
    pub steps: Vec<StepSpec>,
}

/// One resolved ledger step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerStep {
    pub fiber_class: H2Class,
    pub components: Vec<(H2Class, u64)>,
    pub new_exceptional_index: usize,
}

/// Solves Σ mult_i·class_i + m·e_new = fiber for m.
pub fn exceptional_multiplicity(step: &LedgerStep) -> Result<u64, HomologyError> {
    let k = step.new_exceptional_index;
    let n = step.fiber_class.ambient();
    let bad = |msg: String| HomologyError::Ledger { step: k, msg };
    if k == 0 || k > n {
        return Err(bad(format!("e{k} is not in the ambient n = {n}")));
    }
    let mut residual = step.fiber_class.clone();
    for (c, m) in &step.components {
        residual = residual.try_add(&c.scale_int(-(*m as i64)))?;
    }
    let m = residual.e[k - 1].clone();
    residual.e[k - 1] = Rational::zero();
    if !residual.is_zero() {
        return Err(bad(format!("components do not add up to the fibre; off by {residual}")));
    }
    if !m.denom().is_one() || m.is_negative() {
        return Err(bad(format!("multiplicity of e{k} would be {m}")));
    }
    Ok(m.numer().to_u64().expect("small multiplicity"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayedComponent {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub class: H2Class,
    pub multiplicity: u64,
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub square: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayedStep {
    pub exceptional: String,
    pub multiplicity: u64,
    pub fiber: H2Class,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LedgerReplay {
    pub name: String,
    pub steps: Vec<ReplayedStep>,
    pub multiplicities: Vec<u64>,
    pub final_fiber: H2Class,
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub final_fiber_square: Rational,
    pub components: Vec<ReplayedComponent>,
    #[serde(serialize_with = "crate::json::ser_matrix")]
    pub component_gram: ExactMatrix,
}

impl LedgerReplay {
    pub fn component(&self, label: &str) -> Option<&ReplayedComponent> {
        self.components.iter().find(|c| c.label.as_deref() == Some(label))
    }
}

impl Ledger {
    pub fn from_json(text: &str) -> Result<Self, HomologyError> {
        serde_json::from_str(text).map_err(|e| HomologyError::LedgerFormat(e.to_string()))
    }

    /// Replays every step: solves the new exceptional multiplicity, checks
    /// conservation, and checks that each component is the proper transform
    /// of a previous component (or of the previous exceptional curve) with
    /// the same multiplicity.
    pub fn replay(&self) -> Result<LedgerReplay, HomologyError> {
        let mut solved: Vec<u64> = Vec::new();
        let resolve = |spec: &ComponentSpec, n: usize, solved: &[u64], step: usize| {
            let class = H2Class::parse(&spec.class, Some(n))?;
            let mult = match &spec.mult {
                MultSpec::Value(v) => *v,
                MultSpec::Exceptional(name) => {
                    let idx: usize = name
                        .strip_prefix('e')
                        .and_then(|k| k.parse().ok())
                        .filter(|&k| k >= 1 && k <= solved.len())
                        .ok_or_else(|| HomologyError::Ledger {
                            step,
                            msg: format!("multiplicity `{name}` is not a solved exceptional"),
                        })?;
                    solved[idx - 1]
                }
            };
            Ok::<_, HomologyError>((class, mult, spec.label.clone()))
        };

        let mut prev: Vec<(H2Class, u64, Option<String>)> = self
            .initial
            .components
            .iter()
            .map(|c| resolve(c, 0, &solved, 0))
            .collect::<Result<_, _>>()?;
        let initial_fiber = H2Class::parse(&self.initial.fiber, Some(0))?;
        let total = prev.iter().fold(H2Class::zero(0), |acc, (c, m, _)| &acc + &c.scale_int(*m as i64));
        if total != initial_fiber {
            return Err(HomologyError::Ledger { step: 0, msg: "initial components do not add up".into() });
        }

        let mut steps = Vec::new();
        let mut fiber = initial_fiber;
        for (idx, spec) in self.steps.iter().enumerate() {
            let k = idx + 1;
            let comps: Vec<(H2Class, u64, Option<String>)> = spec
                .components
                .iter()
                .map(|c| resolve(c, k, &solved, k))
                .collect::<Result<_, _>>()?;
            fiber = H2Class::parse(&spec.fiber, Some(k))?;
            let step = LedgerStep {
                fiber_class: fiber.clone(),
                components: comps.iter().map(|(c, m, _)| (c.clone(), *m)).collect(),
                new_exceptional_index: k,
            };
            let m = exceptional_multiplicity(&step)?;
            check_transforms(k, &prev, solved.last().copied(), &comps)?;
            solved.push(m);
            steps.push(ReplayedStep { exceptional: format!("e{k}"), multiplicity: m, fiber: fiber.clone() });
            prev = comps;
        }

        let components: Vec<ReplayedComponent> = prev
            .iter()
            .filter(|(_, m, _)| *m > 0)
            .map(|(c, m, l)| ReplayedComponent {
                label: l.clone(),
                class: c.clone(),
                multiplicity: *m,
                square: c.square(),
            })
            .collect();
        let classes: Vec<H2Class> = components.iter().map(|c| c.class.clone()).collect();
        Ok(LedgerReplay {
            name: self.name.clone(),
            steps,
            multiplicities: solved,
            final_fiber_square: fiber.square(),
            final_fiber: fiber,
            component_gram: gram(&classes)?,
            components,
        })
    }
}

fn check_transforms(
    k: usize,
    prev: &[(H2Class, u64, Option<String>)],
    prev_exceptional: Option<u64>,
    comps: &[(H2Class, u64, Option<String>)],
) -> Result<(), HomologyError> {
    let bad = |msg: String| HomologyError::Ledger { step: k, msg };
    // Candidate predecessors living in ambient k − 1, lifted to k.
    let mut pool: Vec<(H2Class, u64, bool)> =
        prev.iter().map(|(c, m, _)| (blow_up(c), *m, false)).collect();
    if let Some(m) = prev_exceptional {
        pool.push((H2Class::e(k, k - 1), m, false));
    }
    for (c, m, _) in comps {
        let j = -c.e_coeff(k).clone();
        if j.is_negative() || !j.denom().is_one() {
            return Err(bad(format!("{c} has a positive e{k} coefficient")));
        }
        let mut base = c.clone();
        base.e[k - 1] = Rational::zero();
        let hit = pool.iter_mut().find(|(p, pm, used)| !*used && *p == base && *pm == *m);
        match hit {
            Some(slot) => slot.2 = true,
            None => {
                return Err(bad(format!(
                    "{c} (multiplicity {m}) is not a proper transform of an earlier component"
                )))
            }
        }
    }
    if let Some((c, m, _)) = pool.iter().find(|(_, m, used)| !*used && *m > 0) {
        return Err(bad(format!("component {c} of multiplicity {m} disappeared")));
    }
    Ok(())
}

pub const E8_LEDGER: &str = include_str!("../data/e8_ledger.json");
pub const E6_LEDGER: &str = include_str!("../data/e6_ledger.json");

pub fn e8_ledger() -> Ledger {
    Ledger::from_json(E8_LEDGER).expect("shipped ledger parses")
}

pub fn e6_ledger() -> Ledger {
    Ledger::from_json(E6_LEDGER).expect("shipped ledger parses")
}
