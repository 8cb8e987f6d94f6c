//! Kodaira singular fibres: Euler characteristics, monodromies, the Euler
//! budget of E(1), and verification of monodromy factorizations.

mod word;

pub use word::{Gen, McgWord, Sl2};

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiberError {
    #[error("word parse error at position {pos}: {msg}")]
    WordParse { pos: usize, msg: String },
    #[error("unknown fibre type `{0}`")]
    UnknownType(String),
    #[error("invalid factorization JSON: {0}")]
    Format(String),
}

/// Kodaira's list (multiple fibres excluded).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FiberType {
    /// I_n, n ≥ 1; I₀ is the smooth fibre.
    I(u32),
    II,
    III,
    IV,
    /// I*_n, n ≥ 0.
    IStar(u32),
    /// Ẽ₈ = II*.
    E8,
    /// Ẽ₇ = III*.
    E7,
    /// Ẽ₆ = IV*.
    E6,
}

impl FiberType {
    pub fn euler(&self) -> u32 {
        match *self {
            FiberType::I(n) => n,
            FiberType::II => 2,
            FiberType::III => 3,
            FiberType::IV => 4,
            FiberType::IStar(n) => n + 6,
            FiberType::E8 => 10,
            FiberType::E7 => 9,
            FiberType::E6 => 8,
        }
    }

    pub fn monodromy_word(&self) -> McgWord {
        let p = |s: &str| McgWord::parse(s).expect("catalogue words parse");
        match *self {
            FiberType::I(n) => McgWord::gen(Gen::A, n as i64),
            FiberType::II => p("ba"),
            FiberType::III => p("aba"),
            FiberType::IV => p("(ba)^2"),
            FiberType::IStar(n) => p("(ab)^3").concat(&McgWord::gen(Gen::A, n as i64)),
            FiberType::E8 => p("(ba)^5"),
            FiberType::E7 => p("(ba)^4 b"),
            FiberType::E6 => p("(ba)^4"),
        }
    }

    pub fn monodromy(&self) -> Sl2 {
        self.monodromy_word().evaluate()
    }

    /// Accepts `I1`, `I_6`, `II`, `III`, `IV`, `I*2`, `I2*`, `I_0^*`,
    /// `E8~`/`II*`, `E7~`/`III*`, `E6~`/`IV*`, `I0`.
    pub fn parse(text: &str) -> Result<Self, FiberError> {
        let t: String = text.chars().filter(|c| !c.is_whitespace() && *c != '_' && *c != '^').collect();
        let bad = || FiberError::UnknownType(text.to_string());
        Ok(match t.as_str() {
            "II" => FiberType::II,
            "III" => FiberType::III,
            "IV" => FiberType::IV,
            "E8~" | "E8" | "II*" => FiberType::E8,
            "E7~" | "E7" | "III*" => FiberType::E7,
            "E6~" | "E6" | "IV*" => FiberType::E6,
            _ => {
                let rest = t.strip_prefix('I').ok_or_else(bad)?;
                if let Some(n) = rest.strip_prefix('*') {
                    FiberType::IStar(n.parse().map_err(|_| bad())?)
                } else if let Some(n) = rest.strip_suffix('*') {
                    FiberType::IStar(n.parse().map_err(|_| bad())?)
                } else {
                    FiberType::I(rest.parse().map_err(|_| bad())?)
                }
            }
        })
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberType::I(n) => write!(f, "I{n}"),
            FiberType::II => write!(f, "II"),
            FiberType::III => write!(f, "III"),
            FiberType::IV => write!(f, "IV"),
            FiberType::IStar(n) => write!(f, "I*{n}"),
            FiberType::E8 => write!(f, "E8~"),
            FiberType::E7 => write!(f, "E7~"),
            FiberType::E6 => write!(f, "E6~"),
        }
    }
}

impl Serialize for FiberType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Euler characteristic of E(1).
pub const E1_EULER: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BudgetReport {
    pub total: u32,
    pub accepted: bool,
}

/// Sum of Euler characteristics; an elliptic fibration on E(1) needs 12.
pub fn euler_budget(config: &[FiberType]) -> BudgetReport {
    let total = config.iter().map(FiberType::euler).sum();
    BudgetReport { total, accepted: total == E1_EULER }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub word: McgWord,
    pub claimed: FiberType,
    pub witness: Option<McgWord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub name: String,
    pub factors: Vec<Factor>,
}

#[derive(Deserialize)]
struct FactorJson {
    word: String,
    #[serde(rename = "type")]
    claimed: String,
    #[serde(default)]
    witness: Option<String>,
}

#[derive(Deserialize)]
struct FactorizationJson {
    #[serde(default)]
    name: String,
    factors: Vec<FactorJson>,
}

impl Factorization {
    /// `{"name": …, "factors": [{"word": "(ab)^4", "type": "E6~", "witness": "b"}, …]}`
    pub fn from_json(text: &str) -> Result<Self, FiberError> {
        let raw: FactorizationJson = serde_json::from_str(text).map_err(|e| FiberError::Format(e.to_string()))?;
        let factors = raw
            .factors
            .into_iter()
            .map(|f| {
                Ok(Factor {
                    word: McgWord::parse(&f.word)?,
                    claimed: FiberType::parse(&f.claimed)?,
                    witness: f.witness.map(|w| McgWord::parse(&w)).transpose()?,
                })
            })
            .collect::<Result<_, FiberError>>()?;
        Ok(Self { name: raw.name, factors })
    }

    pub fn product_word(&self) -> McgWord {
        self.factors.iter().fold(McgWord::identity(), |acc, f| acc.concat(&f.word))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConjugacyMethod {
    /// Traces differ, so the matrices are not conjugate.
    Trace,
    /// The claimed monodromy is ±I, whose conjugacy class is a point.
    Central,
    Witness,
    Search,
    /// Search exhausted without a conclusion.
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorReport {
    pub word: McgWord,
    pub claimed: FiberType,
    pub euler: u32,
    pub factor_matrix: Sl2,
    pub monodromy_matrix: Sl2,
    pub conjugate: Verdict,
    pub method: ConjugacyMethod,
    /// A conjugator w with w · factor · w⁻¹ = monodromy, when one is known.
    pub witness: Option<McgWord>,
    /// Whether the witness supplied with the input checks out.
    pub supplied_witness_valid: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub name: String,
    pub product: Sl2,
    pub product_is_identity: bool,
    pub reduced_product_word: McgWord,
    pub factors: Vec<FactorReport>,
    pub all_conjugate: bool,
    pub euler_total: u32,
    pub budget_ok: bool,
    pub passed: bool,
    pub note: &'static str,
}

pub const NECESSARY_ONLY: &str =
    "these are necessary conditions; they do not by themselves guarantee that an elliptic fibration with these fibres exists";

/// Decides whether `factor` is conjugate in SL(2, ℤ) to `target`.
///
/// Order of checks: trace; ±I; the supplied witness (w·factor·w⁻¹ = target);
/// breadth-first search over conjugators of word length ≤ `bound`. An
/// exhausted search is reported as unknown.
pub fn conjugacy(
    factor: &Sl2,
    target: &Sl2,
    witness: Option<&McgWord>,
    bound: usize,
) -> (Verdict, ConjugacyMethod, Option<McgWord>, Option<bool>) {
    if factor.trace() != target.trace() {
        let valid = witness.map(|_| false);
        return (Verdict::No, ConjugacyMethod::Trace, None, valid);
    }
    if target.is_central() {
        let v = if factor == target { Verdict::Yes } else { Verdict::No };
        let valid = witness.map(|w| conjugates(w, factor, target));
        return (v, ConjugacyMethod::Central, None, valid);
    }
    let mut supplied_valid = None;
    if let Some(w) = witness {
        if conjugates(w, factor, target) {
            return (Verdict::Yes, ConjugacyMethod::Witness, Some(w.clone()), Some(true));
        }
        supplied_valid = Some(false);
    }
    match search_conjugator(factor, target, bound) {
        Some(w) => (Verdict::Yes, ConjugacyMethod::Search, Some(w), supplied_valid),
        None => (Verdict::Unknown, ConjugacyMethod::Exhausted, None, supplied_valid),
    }
}

fn conjugates(w: &McgWord, factor: &Sl2, target: &Sl2) -> bool {
    let m = w.evaluate();
    &m.mul(factor).mul(&m.inverse()) == target
}

/// Shortest conjugator (breadth-first, letters a, b, a⁻¹, b⁻¹ in that order)
/// of length at most `bound`.
pub fn search_conjugator(factor: &Sl2, target: &Sl2, bound: usize) -> Option<McgWord> {
    const STEPS: [(Gen, i64); 4] = [(Gen::A, 1), (Gen::B, 1), (Gen::A, -1), (Gen::B, -1)];
    let mut seen: HashSet<Sl2> = HashSet::new();
    let mut frontier = vec![(McgWord::identity(), Sl2::identity())];
    seen.insert(Sl2::identity());
    for depth in 0..=bound {
        for (w, m) in &frontier {
            if &m.mul(factor).mul(&m.inverse()) == target {
                return Some(w.free_reduce());
            }
        }
        if depth == bound {
            break;
        }
        let mut next = Vec::new();
        for (w, m) in &frontier {
            for &(g, k) in &STEPS {
                let m2 = m.mul(&Sl2::generator(g).pow(k));
                if seen.insert(m2.clone()) {
                    next.push((w.concat(&McgWord::gen(g, k)), m2));
                }
            }
        }
        frontier = next;
    }
    None
}

pub const DEFAULT_SEARCH_BOUND: usize = 6;

pub fn verify_factorization(f: &Factorization, search_bound: usize) -> FactorizationReport {
    let product = f.factors.iter().fold(Sl2::identity(), |acc, x| acc.mul(&x.word.evaluate()));
    let factors: Vec<FactorReport> = f
        .factors
        .iter()
        .map(|x| {
            let fm = x.word.evaluate();
            let target = x.claimed.monodromy();
            let (conjugate, method, witness, supplied_witness_valid) =
                conjugacy(&fm, &target, x.witness.as_ref(), search_bound);
            FactorReport {
                word: x.word.clone(),
                claimed: x.claimed,
                euler: x.claimed.euler(),
                factor_matrix: fm,
                monodromy_matrix: target,
                conjugate,
                method,
                witness,
                supplied_witness_valid,
            }
        })
        .collect();
    let types: Vec<FiberType> = f.factors.iter().map(|x| x.claimed).collect();
    let budget = euler_budget(&types);
    let all_conjugate = factors.iter().all(|r| r.conjugate == Verdict::Yes);
    let product_is_identity = product.is_identity();
    FactorizationReport {
        name: f.name.clone(),
        product_is_identity,
        product,
        reduced_product_word: f.product_word().free_reduce(),
        all_conjugate,
        euler_total: budget.total,
        budget_ok: budget.accepted,
        passed: product_is_identity && all_conjugate && budget.accepted,
        factors,
        note: NECESSARY_ONLY,
    }
}

pub const E6_FACTORIZATION: &str = include_str!("../../data/factorization_e6.json");
pub const I6_FACTORIZATION: &str = include_str!("../../data/factorization_i6.json");

/// (ab)⁶ = (ab)⁴ · a² · (a⁻¹ba) · b: one Ẽ₆ fibre, one I₂, two fishtails.
pub fn e6_factorization() -> Factorization {
    Factorization::from_json(E6_FACTORIZATION).expect("shipped factorization parses")
}

/// (a³b)³ = a⁶ (a⁻³ba³)(bab⁻¹)² b² (b⁻¹ab): one I₆ fibre plus fishtails.
pub fn i6_factorization() -> Factorization {
    Factorization::from_json(I6_FACTORIZATION).expect("shipped factorization parses")
}
