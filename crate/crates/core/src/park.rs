//! The rational blowdown of the C₇ configuration in E(1)#4CP̄² = CP²#13CP̄²:
//! the configuration classes, the dual-basis pairing T = P⁻¹, the canonical
//! and symplectic classes restricted to C₇, the blowdown formula
//! K₇·[ω₇] = K·[ω] − K|C₇·[ω|C₇], and an exact positivity certificate.
//!
//! The symplectic class [ω] = a·h − Σ bᵢ·eᵢ is purely symbolic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exact::{rat, smith_normal_form, ExactError, ExactMatrix, Rational};
use crate::forms::{self, FormError, FormInvariants, Parity, SymForm};
use crate::homology::{e6_ledger, gram, lift_to, pair, H2Class, HomologyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParkError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("linear forms over different symbols: {0:?} vs {1:?}")]
    SymbolMismatch(Vec<String>, Vec<String>),
    #[error("expected {expected} coordinates, got {got}")]
    Length { expected: usize, got: usize },
    #[error("cannot blow down {needed} negative classes from b2- = {b2_minus}")]
    TooFewNegative { b2_minus: usize, needed: usize },
    #[error("p must be at least 2, got {0}")]
    PTooSmall(i64),
    #[error("ledger component {0} missing")]
    MissingComponent(String),
}

/// Number of blow-ups of CP² in E(1)#4CP̄².
pub const AMBIENT: usize = 13;

/// c₀ + Σ cᵢ·sᵢ over an ordered list of symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    symbols: Vec<String>,
    coeffs: Vec<Rational>,
    constant: Rational,
}

/// a, b1, …, b13.
pub fn omega_symbols() -> Vec<String> {
    std::iter::once("a".to_string()).chain((1..=AMBIENT).map(|i| format!("b{i}"))).collect()
}

impl LinearForm {
    pub fn zero(symbols: &[String]) -> Self {
        Self { symbols: symbols.to_vec(), coeffs: vec![Rational::zero(); symbols.len()], constant: Rational::zero() }
    }

    pub fn constant(symbols: &[String], c: Rational) -> Self {
        Self { constant: c, ..Self::zero(symbols) }
    }

    /// The form equal to the symbol at `index`.
    pub fn symbol(symbols: &[String], index: usize) -> Self {
        let mut f = Self::zero(symbols);
        f.coeffs[index] = Rational::one();
        f
    }

    pub fn from_coeffs(symbols: &[String], coeffs: Vec<Rational>) -> Result<Self, ParkError> {
        if coeffs.len() != symbols.len() {
            return Err(ParkError::Length { expected: symbols.len(), got: coeffs.len() });
        }
        Ok(Self { symbols: symbols.to_vec(), coeffs, constant: Rational::zero() })
    }

    pub fn from_i64(symbols: &[String], coeffs: &[i64]) -> Result<Self, ParkError> {
        Self::from_coeffs(symbols, coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, name: &str) -> Option<&Rational> {
        self.symbols.iter().position(|s| s == name).map(|i| &self.coeffs[i])
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, o: &Self) -> Result<(), ParkError> {
        if self.symbols != o.symbols {
            return Err(ParkError::SymbolMismatch(self.symbols.clone(), o.symbols.clone()));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, ParkError> {
        self.check(o)?;
        Ok(Self {
            symbols: self.symbols.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
            constant: &self.constant + &o.constant,
        })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, ParkError> {
        self.try_add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            symbols: self.symbols.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            constant: &self.constant * s,
        }
    }

    pub fn eval(&self, values: &[Rational]) -> Result<Rational, ParkError> {
        if values.len() != self.symbols.len() {
            return Err(ParkError::Length { expected: self.symbols.len(), got: values.len() });
        }
        Ok(self.coeffs.iter().zip(values).fold(self.constant.clone(), |acc, (c, v)| acc + c * v))
    }

    /// Least common denominator of all coefficients.
    pub fn denominator(&self) -> BigInt {
        self.coeffs.iter().chain(std::iter::once(&self.constant)).fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }
}

/// Plain rendering, with a common denominator pulled out:
/// `(1/7)(54a - 18b1 - …)`.
impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.denominator();
        let dr = Rational::from_integer(d.clone());
        let mut parts: Vec<(BigInt, String)> = Vec::new();
        for (c, s) in self.coeffs.iter().zip(&self.symbols) {
            if !c.is_zero() {
                parts.push(((c * &dr).to_integer(), s.clone()));
            }
        }
        if !self.constant.is_zero() {
            parts.push(((&self.constant * &dr).to_integer(), String::new()));
        }
        let mut body = String::new();
        for (i, (c, s)) in parts.iter().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    body.push('-');
                }
            } else {
                body.push_str(&format!(" {sign} "));
            }
            if mag.is_one() && !s.is_empty() {
                body.push_str(s);
            } else {
                body.push_str(&format!("{mag}{s}"));
            }
        }
        if body.is_empty() {
            body.push('0');
        }
        if d.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "(1/{d})({body})")
        }
    }
}

impl Serialize for LinearForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A class x·h + Σ yᵢ·eᵢ with linear-form coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicClass {
    pub h: LinearForm,
    pub e: Vec<LinearForm>,
}

impl SymbolicClass {
    /// [ω] = a·h − b₁e₁ − … − b₁₃e₁₃.
    pub fn omega() -> Self {
        let syms = omega_symbols();
        Self {
            h: LinearForm::symbol(&syms, 0),
            e: (1..=AMBIENT).map(|i| LinearForm::symbol(&syms, i).scale(&-Rational::one())).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.e.len()
    }
}

/// x·ω for a numeric class x.
pub fn pair_symbolic(x: &H2Class, w: &SymbolicClass) -> Result<LinearForm, ParkError> {
    if x.ambient() != w.ambient() {
        return Err(HomologyError::AmbientMismatch(x.ambient(), w.ambient()).into());
    }
    let mut acc = w.h.scale(x.h_coeff());
    for (c, f) in x.e_coeffs().iter().zip(&w.e) {
        acc = acc.try_sub(&f.scale(c))?;
    }
    Ok(acc)
}

/// u₁…u₆ spanning C₇ in CP²#13CP̄², with P their Gram matrix and T = P⁻¹
/// the intersection form on H²(C₇; ℚ) in the dual basis γᵢ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct C7Embedding {
    pub classes: Vec<H2Class>,
    #[serde(serialize_with = "crate::json::ser_matrix")]
    pub p: ExactMatrix,
    #[serde(serialize_with = "crate::json::ser_matrix")]
    pub t: ExactMatrix,
}

/// u₆ = 12h + e₉ − 4(e₁+…+e₉) − 2(e₁₀+…+e₁₃): the proper transform of the
/// section after the four further blow-ups.
pub const U6: &str = "12h + e9 - 4(e1..e9) - 2(e10..e13)";

/// u₁…u₅ are the components S1…S5 of the Ẽ₆ fibre, read from the replayed
/// ledger rather than restated here.
pub fn build_c7_embedding() -> Result<C7Embedding, ParkError> {
    let replay = e6_ledger().replay()?;
    let mut classes = Vec::new();
    for label in ["S1", "S2", "S3", "S4", "S5"] {
        let c = replay.component(label).ok_or_else(|| ParkError::MissingComponent(label.into()))?;
        classes.push(lift_to(&c.class, AMBIENT)?);
    }
    classes.push(H2Class::parse(U6, Some(AMBIENT))?);
    let p = gram(&classes)?;
    let t = p.inverse()?;
    Ok(C7Embedding { classes, p, t })
}

/// (x·u₁, …, x·u₆): the coordinates of x|C₇ in the dual basis.
pub fn restrict(x: &H2Class, emb: &C7Embedding) -> Result<Vec<Rational>, ParkError> {
    emb.classes.iter().map(|u| Ok(pair(x, u)?)).collect()
}

pub fn restrict_symbolic(w: &SymbolicClass, emb: &C7Embedding) -> Result<Vec<LinearForm>, ParkError> {
    emb.classes.iter().map(|u| pair_symbolic(u, w)).collect()
}

/// xᵀ·T·y for γ-coordinate vectors x (numeric) and y (symbolic).
pub fn pair_in_config(x: &[Rational], y: &[LinearForm], emb: &C7Embedding) -> Result<LinearForm, ParkError> {
    let n = emb.t.rows();
    for len in [x.len(), y.len()] {
        if len != n {
            return Err(ParkError::Length { expected: n, got: len });
        }
    }
    let syms = y[0].symbols().to_vec();
    let mut acc = LinearForm::zero(&syms);
    for i in 0..n {
        for j in 0..n {
            let w = &x[i] * emb.t.get(i, j);
            if !w.is_zero() {
                acc = acc.try_add(&y[j].scale(&w))?;
            }
        }
    }
    Ok(acc)
}

/// Numeric xᵀ·T·y.
pub fn pair_in_config_numeric(x: &[Rational], y: &[Rational], emb: &C7Embedding) -> Result<Rational, ParkError> {
    let n = emb.t.rows();
    if x.len() != n || y.len() != n {
        return Err(ParkError::Length { expected: n, got: x.len().min(y.len()) });
    }
    let mut acc = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            acc += &x[i] * emb.t.get(i, j) * &y[j];
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlowdownPairing {
    /// K·ω.
    pub k_omega: LinearForm,
    /// K|C₇·ω|C₇.
    pub configuration: LinearForm,
    /// K₇·ω₇ = K·ω − K|C₇·ω|C₇.
    pub functional: LinearForm,
}

pub fn blowdown_pairing(k: &H2Class, w: &SymbolicClass, emb: &C7Embedding) -> Result<BlowdownPairing, ParkError> {
    let k_omega = pair_symbolic(k, w)?;
    let configuration = pair_in_config(&restrict(k, emb)?, &restrict_symbolic(w, emb)?, emb)?;
    let functional = k_omega.try_sub(&configuration)?;
    Ok(BlowdownPairing { k_omega, configuration, functional })
}

/// Non-negative weights expressing L as
/// λ₀·(3a − Σbᵢ) + Σ cᵢ·(sᵢ₋₁ − sᵢ) + Σ tᵢ·bᵢ over the chain a, b₁, …, b₁₃.
/// With λ₀ > 0 this proves L > 0 wherever 3a > Σbᵢ and a ≥ b₁ ≥ … ≥ b₁₃ ≥ 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositivityCertificate {
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub lambda0: Rational,
    /// Weights on a − b₁, b₁ − b₂, …, b₁₂ − b₁₃.
    #[serde(serialize_with = "crate::json::ser_rationals")]
    pub chain_weights: Vec<Rational>,
    /// Weights on b₁, …, b₁₃.
    #[serde(serialize_with = "crate::json::ser_rationals")]
    pub tail_weights: Vec<Rational>,
}

impl PositivityCertificate {
    /// The combination the weights describe.
    pub fn combination(&self) -> Result<LinearForm, ParkError> {
        let syms = omega_symbols();
        let n = syms.len();
        if self.chain_weights.len() != n - 1 {
            return Err(ParkError::Length { expected: n - 1, got: self.chain_weights.len() });
        }
        if self.tail_weights.len() != n - 1 {
            return Err(ParkError::Length { expected: n - 1, got: self.tail_weights.len() });
        }
        let mut c = vec![Rational::zero(); n];
        c[0] = &self.lambda0 * rat(3, 1);
        for ci in c.iter_mut().skip(1) {
            *ci = -self.lambda0.clone();
        }
        for (i, w) in self.chain_weights.iter().enumerate() {
            c[i] += w;
            c[i + 1] -= w;
        }
        for (i, w) in self.tail_weights.iter().enumerate() {
            c[i + 1] += w;
        }
        LinearForm::from_coeffs(&syms, c)
    }
}

/// The certificate for the C₇ functional: 18/7 on the strict constraint,
/// 2/7 on b₂ − b₃, and tails 2/7·b₅ + 1/7·b₆ + 1/7·b₈ + 2/7·b₉ + 13/7·(b₁₀+…+b₁₃).
pub fn park_certificate() -> PositivityCertificate {
    let mut chain = vec![Rational::zero(); AMBIENT];
    chain[2] = rat(2, 7);
    let mut tails = vec![Rational::zero(); AMBIENT];
    for (i, w) in [(5, rat(2, 7)), (6, rat(1, 7)), (8, rat(1, 7)), (9, rat(2, 7))] {
        tails[i - 1] = w;
    }
    for t in tails.iter_mut().skip(9) {
        *t = rat(13, 7);
    }
    PositivityCertificate { lambda0: rat(18, 7), chain_weights: chain, tail_weights: tails }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateVerdict {
    pub valid: bool,
    pub weights_nonnegative: bool,
    pub strict: bool,
    pub matches: bool,
    /// L minus the certificate's combination; zero when it matches.
    pub residual: LinearForm,
}

pub fn verify_certificate(l: &LinearForm, cert: &PositivityCertificate) -> Result<CertificateVerdict, ParkError> {
    let combo = cert.combination()?;
    let residual = l.try_sub(&combo)?;
    let weights_nonnegative = !cert.lambda0.is_negative()
        && cert.chain_weights.iter().chain(&cert.tail_weights).all(|w| !w.is_negative());
    let strict = cert.lambda0.is_positive();
    let matches = residual.is_zero();
    Ok(CertificateVerdict { valid: weights_nonnegative && strict && matches, weights_nonnegative, strict, matches, residual })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bookkeeping {
    pub before: FormInvariants,
    pub after: FormInvariants,
    /// False when σ ≡ 0 (mod 8): parity is then copied, not derived.
    pub parity_forced: bool,
}

/// Rationally blowing down C_p removes p − 1 negative classes and keeps b₂⁺.
/// The configuration must leave at least one negative class behind. An even unimodular form has σ ≡ 0 (mod 8), so any other signature forces
/// the result to be odd.
pub fn blowdown_bookkeeping(before: &FormInvariants, p: i64) -> Result<Bookkeeping, ParkError> {
    if p < 2 {
        return Err(ParkError::PTooSmall(p));
    }
    let needed = (p - 1) as usize;
    if before.b2_minus <= needed {
        return Err(ParkError::TooFewNegative { b2_minus: before.b2_minus, needed });
    }
    let b2_minus = before.b2_minus - needed;
    let sigma = before.b2_plus as i64 - b2_minus as i64;
    let parity_forced = sigma.rem_euclid(8) != 0;
    let parity = if parity_forced { Parity::Odd } else { before.parity };
    Ok(Bookkeeping { before: before.clone(), after: FormInvariants::from_counts(before.b2_plus, b2_minus, parity), parity_forced })
}

/// Serre's representative of an odd indefinite form: ⟨1⟩^b⁺ ⊕ ⟨−1⟩^b⁻.
pub fn odd_form(b2_plus: usize, b2_minus: usize) -> SymForm {
    let d: Vec<i64> = std::iter::repeat_n(1, b2_plus).chain(std::iter::repeat_n(-1, b2_minus)).collect();
    SymForm::diagonal(&d)
}

/// The intersection form of X₇ as determined by its invariants (1, 7, odd).
pub fn x7_form() -> SymForm {
    odd_form(1, 7)
}

/// The integral orthogonal complement of the configuration in H₂(CP²#13CP̄²).
/// Its form has the rank and signature of X₇ and determinant ±p².
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Complement {
    pub rank: usize,
    pub signature: i64,
    #[serde(serialize_with = "crate::json::ser_bigint")]
    pub det: BigInt,
}

pub fn orthogonal_complement(emb: &C7Embedding) -> Result<Complement, ParkError> {
    let n = AMBIENT + 1;
    let q = SymForm::blown_up_cp2(AMBIENT);
    // Rows uᵢᵀ·Q; their integer kernel is the complement.
    let rows: Vec<Vec<Rational>> = emb
        .classes
        .iter()
        .map(|u| q.matrix().mul_vec(&u.coords()))
        .collect();
    let m = ExactMatrix::from_rows(rows)?;
    let snf = smith_normal_form(&m)?;
    let basis: Vec<usize> = (snf.rank..n).collect();
    let all: Vec<usize> = (0..n).collect();
    let b = snf.right.select(&all, &basis);
    let g = SymForm::new(b.transpose().checked_mul(q.matrix())?.checked_mul(&b)?)?;
    let inv = forms::invariants(&g);
    Ok(Complement { rank: inv.rank, signature: inv.signature, det: g.determinant() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Park7Report {
    pub embedding: C7Embedding,
    pub gram_is_p: bool,
    pub t_times_p_is_identity: bool,
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub u6_square: Rational,
    #[serde(serialize_with = "crate::json::ser_rational")]
    pub u5_dot_u6: Rational,
    #[serde(serialize_with = "crate::json::ser_rationals")]
    pub k_restriction: Vec<Rational>,
    pub omega_restriction: Vec<LinearForm>,
    pub pairing: BlowdownPairing,
    pub certificate: PositivityCertificate,
    pub certificate_verdict: CertificateVerdict,
    pub bookkeeping: Bookkeeping,
    pub complement: Complement,
    pub x7_invariants: FormInvariants,
    pub homeomorphic_to_cp2_7: bool,
    pub passed: bool,
    /// Which printed quantities each field reproduces.
    pub anchors: Vec<(&'static str, &'static str)>,
    pub notes: Vec<&'static str>,
}

/// The chain matrix of C₇ in the order u₁, …, u₆.
pub fn chain_matrix() -> ExactMatrix {
    let mut p = ExactMatrix::zeros(6, 6);
    for i in 0..6 {
        p.set(i, i, rat(if i == 5 { -9 } else { -2 }, 1));
        if i + 1 < 6 {
            p.set(i, i + 1, Rational::one());
            p.set(i + 1, i, Rational::one());
        }
    }
    p
}

pub fn park7_report() -> Result<Park7Report, ParkError> {
    let emb = build_c7_embedding()?;
    let gram_is_p = emb.p == chain_matrix();
    let t_times_p_is_identity = emb.t.checked_mul(&emb.p)? == ExactMatrix::identity(6);
    let k = H2Class::canonical(AMBIENT);
    let w = SymbolicClass::omega();
    let pairing = blowdown_pairing(&k, &w, &emb)?;
    let certificate = park_certificate();
    let certificate_verdict = verify_certificate(&pairing.functional, &certificate)?;
    let before = forms::invariants(&SymForm::blown_up_cp2(AMBIENT));
    let bookkeeping = blowdown_bookkeeping(&before, 7)?;
    let complement = orthogonal_complement(&emb)?;
    let x7 = x7_form();
    let x7_invariants = forms::invariants(&x7);
    let homeomorphic_to_cp2_7 = forms::freedman_homeomorphic(&x7, &SymForm::blown_up_cp2(7), true)?;
    let consistent = x7_invariants == bookkeeping.after
        && complement.rank == x7_invariants.rank
        && complement.signature == x7_invariants.signature
        && complement.det.abs() == BigInt::from(49);
    let passed = gram_is_p && t_times_p_is_identity && certificate_verdict.valid && homeomorphic_to_cp2_7 && consistent;
    Ok(Park7Report {
        u6_square: emb.classes[5].square(),
        u5_dot_u6: pair(&emb.classes[4], &emb.classes[5])?,
        k_restriction: restrict(&k, &emb)?,
        omega_restriction: restrict_symbolic(&w, &emb)?,
        embedding: emb,
        gram_is_p,
        t_times_p_is_identity,
        pairing,
        certificate,
        certificate_verdict,
        bookkeeping,
        complement,
        x7_invariants,
        homeomorphic_to_cp2_7,
        passed,
        anchors: vec![
            ("embedding.p", "C7 chain matrix (-2,...,-2,-9)"),
            ("embedding.t", "T = P^-1 = (-1/49)(...) with last row 1..6"),
            ("u6_square", "-9"),
            ("k_restriction", "K|C7 = 7 gamma_6"),
            ("pairing.k_omega", "K.omega = -3a + (b1 + ... + b13)"),
            ("pairing.configuration", "(-1/7)(75a - 25b1 - ...)"),
            ("pairing.functional", "(1/7)(54a - 18b1 - 16b2 - 20b3 - ...)"),
            ("bookkeeping.after", "b2+ = 1, b2- = 13 - 6 = 7"),
        ],
        notes: vec![
            "the symplectic class is symbolic; positivity holds on 3a > b1 + ... + b13 with a >= b1 >= ... >= b13 >= 0",
            "existence of the symplectic structure on the blowdown and the Seiberg-Witten consequences are not computed",
            "signature convention: sigma = b2+ - b2-, so CP^2 # 7 CP^2-bar has sigma = -6",
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn syms() -> Vec<String> {
        omega_symbols()
    }

    /// Test-side oracle: the functional written out from its coefficients.
    fn printed(den: i64, a: i64, b: &[i64]) -> LinearForm {
        let mut c = vec![a];
        c.extend_from_slice(b);
        LinearForm::from_i64(&syms(), &c).unwrap().scale(&rat(1, den))
    }

    #[test]
    fn embedding() {
        let emb = build_c7_embedding().unwrap();
        assert_eq!(emb.p, chain_matrix());
        assert_eq!(emb.classes[5].square(), rat(-9, 1));
        assert_eq!(pair(&emb.classes[4], &emb.classes[5]).unwrap(), rat(1, 1));
        assert_eq!(emb.t.checked_mul(&emb.p).unwrap(), ExactMatrix::identity(6));
        for k in 0..6 {
            assert_eq!(emb.t.get(5, k), &rat(-(k as i64 + 1), 49));
        }
        let row = restrict(&emb.classes[0], &emb).unwrap();
        assert_eq!(row, emb.p.row(0));
    }

    #[test]
    fn restrictions() {
        let emb = build_c7_embedding().unwrap();
        let k = H2Class::canonical(AMBIENT);
        let kr = restrict(&k, &emb).unwrap();
        assert_eq!(kr, [0, 0, 0, 0, 0, 7].map(|x| rat(x, 1)).to_vec());
        let wr = restrict_symbolic(&SymbolicClass::omega(), &emb).unwrap();
        let s = syms();
        let f = |c: &[i64]| LinearForm::from_i64(&s, c).unwrap();
        let mut u6 = vec![12, -4, -4, -4, -4, -4, -4, -4, -4, -3];
        u6.extend([-2; 4]);
        let expect = [
            f(&[0, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0]),
            f(&[0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
            f(&[1, -1, -1, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
            f(&[0, 0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0]),
            f(&[0, 0, 0, 0, 0, 1, 0, 0, 0, -1, 0, 0, 0, 0]),
            f(&u6),
        ];
        assert_eq!(wr, expect.to_vec());
    }

    #[test]
    fn blowdown_functional() {
        let emb = build_c7_embedding().unwrap();
        let r = blowdown_pairing(&H2Class::canonical(AMBIENT), &SymbolicClass::omega(), &emb).unwrap();
        let mut ones = vec![1; 13];
        assert_eq!(r.k_omega, printed(1, -3, &ones));
        ones = vec![-25, -23, -27, -25, -23, -24, -25, -24, -23, -12, -12, -12, -12];
        assert_eq!(r.configuration, printed(-7, 75, &ones));
        let park = [-18, -16, -20, -18, -16, -17, -18, -17, -16, -5, -5, -5, -5];
        assert_eq!(r.functional, printed(7, 54, &park));
        assert_eq!(
            r.functional.to_string(),
            "(1/7)(54a - 18b1 - 16b2 - 20b3 - 18b4 - 16b5 - 17b6 - 18b7 - 17b8 - 16b9 - 5b10 - 5b11 - 5b12 - 5b13)"
        );
        // ω = 0.
        let zero = SymbolicClass { h: LinearForm::zero(&syms()), e: vec![LinearForm::zero(&syms()); AMBIENT] };
        assert!(blowdown_pairing(&H2Class::canonical(AMBIENT), &zero, &emb).unwrap().functional.is_zero());
    }

    #[test]
    fn dual_pairings() {
        let emb = build_c7_embedding().unwrap();
        let g = |i: usize| {
            let mut v = vec![Rational::zero(); 6];
            v[i] = Rational::one();
            v
        };
        assert_eq!(pair_in_config_numeric(&g(5), &g(5), &emb).unwrap(), rat(-6, 49));
        assert_eq!(pair_in_config_numeric(&g(5), &g(0), &emb).unwrap(), rat(-1, 49));
    }

    #[test]
    fn certificates() {
        let emb = build_c7_embedding().unwrap();
        let l = blowdown_pairing(&H2Class::canonical(AMBIENT), &SymbolicClass::omega(), &emb).unwrap().functional;
        let cert = park_certificate();
        assert!(verify_certificate(&l, &cert).unwrap().valid);
        // a = (1/3)(3a − Σb) + (1/3)Σb.
        let a = LinearForm::symbol(&syms(), 0);
        let c = PositivityCertificate {
            lambda0: rat(1, 3),
            chain_weights: vec![Rational::zero(); 13],
            tail_weights: vec![rat(1, 3); 13],
        };
        assert!(verify_certificate(&a, &c).unwrap().valid);
        assert!(!verify_certificate(&a.scale(&rat(-1, 1)), &c).unwrap().valid);
        assert!(!verify_certificate(&a.scale(&rat(-1, 1)), &cert).unwrap().valid);
        // Every single-coefficient perturbation is rejected.
        let nudge = rat(1, 1000);
        let mut perturbed = vec![];
        let mut p = cert.clone();
        p.lambda0 += &nudge;
        perturbed.push(p);
        for i in 0..13 {
            let mut p = cert.clone();
            p.chain_weights[i] += &nudge;
            perturbed.push(p);
            let mut p = cert.clone();
            p.tail_weights[i] += &nudge;
            perturbed.push(p);
        }
        for p in perturbed {
            assert!(!verify_certificate(&l, &p).unwrap().valid);
        }
        let other = LinearForm::symbol(&["a".to_string()], 0);
        assert!(matches!(verify_certificate(&other, &cert), Err(ParkError::SymbolMismatch(..))));
    }

    #[test]
    fn bookkeeping() {
        let before = FormInvariants::from_counts(1, 13, Parity::Odd);
        let b = blowdown_bookkeeping(&before, 7).unwrap();
        assert_eq!((b.after.b2_plus, b.after.b2_minus, b.after.rank, b.after.signature), (1, 7, 8, -6));
        assert_eq!(b.after.parity, Parity::Odd);
        assert!(b.parity_forced);
        assert!(blowdown_bookkeeping(&FormInvariants::from_counts(1, 6, Parity::Odd), 7).is_err());
        assert_eq!(blowdown_bookkeeping(&before, 2).unwrap().after.b2_minus, 12);
    }

    #[test]
    fn report_and_complement() {
        let r = park7_report().unwrap();
        assert!(r.passed);
        assert_eq!(r.complement, Complement { rank: 8, signature: -6, det: BigInt::from(-49) });
        assert!(r.homeomorphic_to_cp2_7);
    }

    fn shared() -> &'static (C7Embedding, LinearForm) {
        static CELL: std::sync::OnceLock<(C7Embedding, LinearForm)> = std::sync::OnceLock::new();
        CELL.get_or_init(|| {
            let emb = build_c7_embedding().unwrap();
            let l = blowdown_pairing(&H2Class::canonical(AMBIENT), &SymbolicClass::omega(), &emb).unwrap().functional;
            (emb, l)
        })
    }

    fn arb_class() -> impl Strategy<Value = H2Class> {
        (-20i64..20, proptest::collection::vec(-20i64..20, AMBIENT)).prop_map(|(h, e)| H2Class::from_ints(h, &e))
    }

    /// Points with a ≥ b₁ ≥ … ≥ b₁₃ ≥ 0 and 3a ≥ Σb + 1/1000.
    fn arb_admissible() -> impl Strategy<Value = Vec<Rational>> {
        (proptest::collection::vec(0i64..1000, AMBIENT), 0i64..1000, 1i64..1000).prop_map(|(steps, extra, den)| {
            let mut b = vec![Rational::zero(); AMBIENT];
            let mut acc = Rational::zero();
            for i in (0..AMBIENT).rev() {
                acc += rat(steps[i], den);
                b[i] = acc.clone();
            }
            let sum: Rational = b.iter().sum();
            let floor = (&sum + rat(1, 1000)) / rat(3, 1);
            let a = std::cmp::max(floor, b[0].clone()) + rat(extra, den);
            std::iter::once(a).chain(b).collect()
        })
    }

    proptest! {
        #![proptest_config(crate::fixed_seed(1000))]

        #[test]
        fn restriction_is_linear(x in arb_class(), y in arb_class()) {
            let emb = &shared().0;
            let lhs = restrict(&x.try_add(&y).unwrap(), emb).unwrap();
            let (rx, ry) = (restrict(&x, emb).unwrap(), restrict(&y, emb).unwrap());
            let rhs: Vec<Rational> = rx.iter().zip(&ry).map(|(a, b)| a + b).collect();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn functional_positive_on_region(v in arb_admissible()) {
            let l = &shared().1;
            prop_assert!(l.eval(&v).unwrap().is_positive());
        }
    }
}
