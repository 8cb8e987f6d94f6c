//! Surgery presentations and their first homology, meridian orders,
//! Hirzebruch–Jung continued fractions, lens-space boundaries of linear
//! plumbings, and the C_p chains.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{smith_normal_form, ExactError, ExactMatrix, Rational, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlumbingError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("linking matrix must be square, symmetric, with zero diagonal and one row per component")]
    InvalidLinking,
    #[error("continued fraction needs gcd(p, q) = 1 and 0 < q < p, got ({0}, {1})")]
    InvalidFraction(i64, i64),
    #[error("framing {0} is above -2; only negative chains with entries <= -2 are supported")]
    FramingTooLarge(i64),
    #[error("empty chain")]
    EmptyChain,
    #[error("C_p needs p >= 2, got {0}")]
    PTooSmall(i64),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

/// Rational surgery on a link: coefficient p_i/q_i per component and the
/// pairwise linking numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryPresentation {
    coefficients: Vec<Rational>,
    linking: Vec<Vec<i64>>,
}

impl SurgeryPresentation {
    pub fn new(coefficients: Vec<Rational>, linking: Vec<Vec<i64>>) -> Result<Self, PlumbingError> {
        let n = coefficients.len();
        let ok = linking.len() == n
            && linking.iter().all(|r| r.len() == n)
            && (0..n).all(|i| linking[i][i] == 0 && (0..n).all(|j| linking[i][j] == linking[j][i]));
        if !ok {
            return Err(PlumbingError::InvalidLinking);
        }
        Ok(Self { coefficients, linking })
    }

    /// Integral surgery on a linear chain of unknots, each linking its
    /// neighbours once.
    pub fn chain(framings: &[i64]) -> Self {
        let n = framings.len();
        let mut linking = vec![vec![0; n]; n];
        for i in 1..n {
            linking[i - 1][i] = 1;
            linking[i][i - 1] = 1;
        }
        let coefficients = framings.iter().map(|&f| Rational::from_integer(f.into())).collect();
        Self { coefficients, linking }
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }
}

/// Order of a group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

impl Serialize for Order {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Order::Finite(n) => crate::json::ser_bigint(n, s),
            Order::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// Finitely presented abelian group ⟨generators | rows of relation_matrix⟩.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroupPresentation {
    pub generators: Vec<String>,
    /// One row per relation, one column per generator.
    pub relation_matrix: ExactMatrix,
    pub snf: SmithDecomposition,
}

impl AbelianGroupPresentation {
    pub fn new(generators: Vec<String>, relation_matrix: ExactMatrix) -> Result<Self, PlumbingError> {
        if relation_matrix.cols() != generators.len() {
            return Err(ExactError::DimensionMismatch("one column per generator".into()).into());
        }
        let snf = smith_normal_form(&relation_matrix)?;
        Ok(Self { generators, relation_matrix, snf })
    }

    /// Rank of the free part: generators minus the rank of the relations.
    pub fn free_rank(&self) -> usize {
        self.generators.len() - self.snf.rank
    }

    /// Nontrivial invariant factors d₁ | d₂ | … of the torsion part.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.snf.torsion()
    }

    /// |G|, or `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank() == 0).then(|| self.torsion().iter().product())
    }

    pub fn is_cyclic(&self) -> bool {
        self.torsion().len() + self.free_rank() <= 1
    }

    /// Human form such as `Z_49`, `Z`, `Z + Z_2 + Z_6`, `0`.
    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = std::iter::repeat_n("Z".to_string(), self.free_rank()).collect();
        parts.extend(self.torsion().iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    fn generator_index(&self, name: &str) -> Result<usize, PlumbingError> {
        self.generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| PlumbingError::UnknownGenerator(name.to_string()))
    }

    /// Whether `gen` alone generates the group.
    pub fn generates(&self, gen: &str) -> Result<bool, PlumbingError> {
        let ord = element_order(self, gen)?;
        Ok(self.is_cyclic()
            && match (ord, self.order()) {
                (Order::Finite(o), Some(n)) => o == n,
                (Order::Infinite, None) => {
                    // Infinite cyclic: the image must be ±1 in the diagonal basis.
                    let j = self.generator_index(gen)?;
                    let r = self.snf.rank;
                    self.snf.right.get(j, r).numer().abs().is_one()
                }
                _ => false,
            })
    }
}

/// H₁ of the surgered manifold: relation i is p_i μ_i + q_i Σ_j lk(K_i, K_j) μ_j.
pub fn h1(pres: &SurgeryPresentation) -> Result<AbelianGroupPresentation, PlumbingError> {
    let n = pres.len();
    let mut m = ExactMatrix::zeros(n, n);
    for i in 0..n {
        let c = &pres.coefficients[i];
        let (p, q) = (c.numer().clone(), c.denom().clone());
        m.set(i, i, Rational::from_integer(p));
        for j in 0..n {
            if j != i && pres.linking[i][j] != 0 {
                m.set(i, j, Rational::from_integer(&q * BigInt::from(pres.linking[i][j])));
            }
        }
    }
    let gens = (0..n).map(|i| format!("a{i}")).collect();
    AbelianGroupPresentation::new(gens, m)
}

/// Order of the image of `gen`, read through the right SNF transform: with
/// L·M·R = D, the generator e_j has coordinates (row j of R) in the basis in
/// which the relations are d_i·f_i = 0.
pub fn element_order(pres: &AbelianGroupPresentation, gen: &str) -> Result<Order, PlumbingError> {
    let j = pres.generator_index(gen)?;
    let s = &pres.snf;
    let cols = pres.generators.len();
    let row: Vec<BigInt> = (0..cols).map(|k| s.right.get(j, k).numer().clone()).collect();
    if row[s.rank..].iter().any(|x| !x.is_zero()) {
        return Ok(Order::Infinite);
    }
    let mut ord = BigInt::one();
    for (d, y) in s.invariant_factors.iter().zip(&row) {
        let g = d.gcd(y);
        ord = ord.lcm(&(d / g));
    }
    Ok(Order::Finite(ord))
}

/// Hirzebruch–Jung expansion p/q = a₁ − 1/(a₂ − 1/(… − 1/a_k)), all a_i ≥ 2.
pub fn hj_expand(p: i64, q: i64) -> Result<Vec<i64>, PlumbingError> {
    if q <= 0 || q >= p.max(2) || p.gcd(&q) != 1 {
        // p = q = 1 is excluded too: there is no expansion with a_i ≥ 2.
        return Err(PlumbingError::InvalidFraction(p, q));
    }
    let (mut p, mut q) = (p, q);
    let mut out = Vec::new();
    loop {
        let a = Integer::div_ceil(&p, &q);
        out.push(a);
        let r = a * q - p;
        if r == 0 {
            break;
        }
        p = q;
        q = r;
    }
    Ok(out)
}

/// Value of [a₁, …, a_k] as a reduced fraction.
pub fn hj_evaluate(coeffs: &[i64]) -> Option<Rational> {
    let mut it = coeffs.iter().rev();
    let mut v = Rational::from_integer((*it.next()?).into());
    for &a in it {
        if v.is_zero() {
            return None;
        }
        v = Rational::from_integer(a.into()) - v.recip();
    }
    Some(v)
}

/// L(p, q) with 0 < q < p; `mirror` records the reversed orientation
/// L(p, −q) instead of silently replacing q by p − q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LensSpace {
    pub p: i64,
    pub q: i64,
    pub mirror: bool,
}

impl LensSpace {
    /// L(p, q) for any q coprime to p; negative q sets the mirror flag.
    pub fn from_signed(p: i64, q: i64) -> Self {
        let mirror = q < 0;
        let q = q.abs().rem_euclid(p);
        Self { p, q, mirror }
    }
}

impl std::fmt::Display for LensSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.mirror {
            write!(f, "L({}, -{})", self.p, self.q)
        } else {
            write!(f, "L({}, {})", self.p, self.q)
        }
    }
}

/// Boundary of the linear plumbing with framings −a₁, …, −a_k (a_i ≥ 2):
/// L(p, q) with p/q = [a₁, …, a_k].
pub fn chain_boundary(framings: &[i64]) -> Result<LensSpace, PlumbingError> {
    if framings.is_empty() {
        return Err(PlumbingError::EmptyChain);
    }
    if let Some(&f) = framings.iter().find(|&&f| f > -2) {
        return Err(PlumbingError::FramingTooLarge(f));
    }
    let a: Vec<i64> = framings.iter().map(|f| -f).collect();
    let v = hj_evaluate(&a).expect("entries >= 2 never hit a zero denominator");
    let p: i64 = v.numer().try_into().expect("small lens space");
    let q: i64 = v.denom().try_into().expect("small lens space");
    Ok(LensSpace { p, q, mirror: false })
}

/// The chain C_p: one −(p+2) sphere followed by p − 2 spheres of square −2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CpChain {
    pub p: i64,
    /// (−(p+2), −2, …, −2), the order in which the meridians a₀, a₁, … are
    /// labelled.
    pub framings: Vec<i64>,
    /// Intersection matrix in the order (−2, …, −2, −(p+2)), i.e. starting
    /// from the far end of the −2 tail, so that for p = 7 it is the 6×6
    /// matrix with −9 in the last corner.
    #[serde(serialize_with = "crate::json::ser_matrix")]
    pub gram: ExactMatrix,
}

pub fn build_cp(p: i64) -> Result<CpChain, PlumbingError> {
    if p < 2 {
        return Err(PlumbingError::PTooSmall(p));
    }
    let mut framings = vec![-(p + 2)];
    framings.extend(std::iter::repeat_n(-2, (p - 2) as usize));
    let k = framings.len();
    let mut gram = ExactMatrix::zeros(k, k);
    for (i, f) in framings.iter().rev().enumerate() {
        gram.set(i, i, Rational::from_integer((*f).into()));
        if i + 1 < k {
            gram.set(i, i + 1, Rational::one());
            gram.set(i + 1, i, Rational::one());
        }
    }
    Ok(CpChain { p, framings, gram })
}

impl CpChain {
    pub fn boundary(&self) -> LensSpace {
        chain_boundary(&self.framings).expect("C_p framings are <= -2")
    }

    pub fn presentation(&self) -> SurgeryPresentation {
        SurgeryPresentation::chain(&self.framings)
    }

    pub fn determinant(&self) -> Rational {
        self.gram.determinant().expect("square")
    }
}
