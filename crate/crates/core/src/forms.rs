//! Symmetric integer bilinear forms: invariants, Serre classification of
//! indefinite unimodular forms, characteristic vectors, and the Rohlin /
//! Freedman gates used to compare smooth simply-connected 4-manifolds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::{ExactError, ExactMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("form matrix is not symmetric")]
    NotSymmetric,
    #[error("form is not unimodular (det = {0})")]
    NotUnimodular(BigInt),
    #[error("both forms are definite; the indefinite classification does not apply")]
    BothDefinite,
    #[error("definite forms of rank {0} with equal invariants: equivalence is not decided here")]
    Undecided(usize),
    #[error("vector has length {got}, form has rank {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown form `{0}`")]
    UnknownForm(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Definiteness {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
}

/// Square symmetric integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymForm {
    matrix: ExactMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormInvariants {
    pub rank: usize,
    pub signature: i64,
    pub b2_plus: usize,
    pub b2_minus: usize,
    pub parity: Parity,
    pub definiteness: Definiteness,
    #[serde(serialize_with = "crate::json::ser_bigint")]
    pub det: BigInt,
}

impl FormInvariants {
    pub fn triple(&self) -> (usize, i64, Parity) {
        (self.rank, self.signature, self.parity)
    }

    /// Invariants of a nondegenerate form with the given counts; used when
    /// only bookkeeping data is available.
    pub fn from_counts(b2_plus: usize, b2_minus: usize, parity: Parity) -> Self {
        let rank = b2_plus + b2_minus;
        let definiteness = match (b2_plus, b2_minus) {
            (_, 0) if rank > 0 => Definiteness::PositiveDefinite,
            (0, _) if rank > 0 => Definiteness::NegativeDefinite,
            _ => Definiteness::Indefinite,
        };
        let det = if b2_minus.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
        FormInvariants {
            rank,
            signature: b2_plus as i64 - b2_minus as i64,
            b2_plus,
            b2_minus,
            parity,
            definiteness,
            det,
        }
    }
}

impl SymForm {
    pub fn new(matrix: ExactMatrix) -> Result<Self, FormError> {
        if !matrix.is_square() {
            return Err(ExactError::NotSquare { rows: matrix.rows(), cols: matrix.cols() }.into());
        }
        matrix.check_integer()?;
        if !matrix.is_symmetric() {
            return Err(FormError::NotSymmetric);
        }
        Ok(Self { matrix })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, FormError> {
        Self::new(ExactMatrix::from_i64(rows))
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn entry(&self, i: usize, j: usize) -> BigInt {
        self.matrix.get(i, j).numer().clone()
    }

    /// −E₈: the E₈ Dynkin diagram (arms of length 4, 2, 1 around a trivalent
    /// vertex) with −2 on the diagonal.
    pub fn e8_minus() -> Self {
        let mut m = vec![vec![0i64; 8]; 8];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = -2;
        }
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
        for (i, j) in edges {
            m[i][j] = 1;
            m[j][i] = 1;
        }
        Self::from_i64(&m).expect("E8 is symmetric")
    }

    pub fn hyperbolic() -> Self {
        Self::from_i64(&[vec![0, 1], vec![1, 0]]).expect("H is symmetric")
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let d: Vec<Rational> = entries.iter().map(|&x| Rational::from_integer(x.into())).collect();
        Self { matrix: ExactMatrix::diagonal(&d) }
    }

    /// diag(1, −1, …, −1) with `n` minus signs: the form of CP²#nCP̄².
    pub fn blown_up_cp2(n: usize) -> Self {
        let mut d = vec![1];
        d.extend(std::iter::repeat_n(-1, n));
        Self::diagonal(&d)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self { matrix: self.matrix.direct_sum(&other.matrix) }
    }

    pub fn negate(&self) -> Self {
        Self { matrix: -&self.matrix }
    }

    /// Bᵀ Q B.
    pub fn change_basis(&self, b: &ExactMatrix) -> Result<Self, FormError> {
        let m = b.transpose().checked_mul(&self.matrix)?.checked_mul(b)?;
        Self::new(m)
    }

    /// Parses a named form (`E8-`, `@e8minus`, `H`, `@h`, `diag(1,-1^7)`,
    /// `<1>`) or a JSON matrix literal.
    pub fn parse(text: &str) -> Result<Self, FormError> {
        let t = text.trim();
        match t {
            "E8-" | "-E8" | "@e8minus" => return Ok(Self::e8_minus()),
            "H" | "@h" => return Ok(Self::hyperbolic()),
            _ => {}
        }
        if let Some(inner) = t.strip_prefix("diag(").and_then(|s| s.strip_suffix(')')) {
            return parse_diag(inner).map(|d| Self::diagonal(&d)).ok_or_else(|| FormError::UnknownForm(t.into()));
        }
        if let Some(inner) = t.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
            return parse_diag(inner).map(|d| Self::diagonal(&d)).ok_or_else(|| FormError::UnknownForm(t.into()));
        }
        if t.starts_with('[') {
            return Self::new(ExactMatrix::from_json(t)?);
        }
        Err(FormError::UnknownForm(t.into()))
    }

    pub fn determinant(&self) -> BigInt {
        self.matrix.determinant().expect("square").numer().clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    fn require_unimodular(&self) -> Result<(), FormError> {
        let d = self.determinant();
        if d.abs().is_one() {
            Ok(())
        } else {
            Err(FormError::NotUnimodular(d))
        }
    }

    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt, FormError> {
        for v in [x, y] {
            if v.len() != self.dim() {
                return Err(FormError::DimensionMismatch { expected: self.dim(), got: v.len() });
            }
        }
        let mut acc = BigInt::zero();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                acc += &x[i] * self.entry(i, j) * &y[j];
            }
        }
        Ok(acc)
    }
}

fn parse_diag(inner: &str) -> Option<Vec<i64>> {
    let mut out = Vec::new();
    for part in inner.split(',') {
        let part = part.trim();
        let (v, k): (i64, usize) = match part.split_once('^') {
            Some((v, k)) => (v.trim().parse().ok()?, k.trim().parse().ok()?),
            None => (part.parse().ok()?, 1usize),
        };
        out.extend(std::iter::repeat_n(v, k));
    }
    Some(out)
}

/// Diagonal entries of a form congruent to `m` over ℚ.
///
/// Uses a nonzero diagonal pivot when one exists. If the remaining block has
/// zero diagonal but a nonzero entry a_ij, replacing e_i by e_i + e_j creates
/// the pivot 2a_ij; the hyperbolic pair then contributes one positive and one
/// negative entry.
pub fn congruence_diagonal(m: &ExactMatrix) -> Vec<Rational> {
    let mut a = m.clone();
    let mut alive: Vec<usize> = (0..a.rows()).collect();
    let mut diag = Vec::with_capacity(alive.len());
    while !alive.is_empty() {
        let pivot = alive.iter().copied().find(|&k| !a.get(k, k).is_zero());
        let k = match pivot {
            Some(k) => k,
            None => {
                let pair = alive
                    .iter()
                    .flat_map(|&i| alive.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a.get(i, j).is_zero());
                let Some((i, j)) = pair else {
                    diag.extend(alive.iter().map(|_| Rational::zero()));
                    break;
                };
                // e_i ← e_i + e_j: add row j to row i and column j to column i.
                for &c in &alive {
                    let v = a.get(i, c) + a.get(j, c);
                    a.set(i, c, v);
                }
                for &r in &alive {
                    let v = a.get(r, i) + a.get(r, j);
                    a.set(r, i, v);
                }
                i
            }
        };
        let d = a.get(k, k).clone();
        alive.retain(|&x| x != k);
        for &i in &alive {
            let f = a.get(i, k) / &d;
            if f.is_zero() {
                continue;
            }
            for &j in &alive {
                let v = a.get(i, j) - &f * a.get(k, j);
                a.set(i, j, v);
            }
        }
        diag.push(d);
    }
    diag
}

pub fn invariants(q: &SymForm) -> FormInvariants {
    let diag = congruence_diagonal(&q.matrix);
    let b2_plus = diag.iter().filter(|d| d.is_positive()).count();
    let b2_minus = diag.iter().filter(|d| d.is_negative()).count();
    let n = q.dim();
    let parity = if (0..n).all(|i| q.entry(i, i).is_even()) { Parity::Even } else { Parity::Odd };
    let definiteness = if n > 0 && b2_plus == n {
        Definiteness::PositiveDefinite
    } else if n > 0 && b2_minus == n {
        Definiteness::NegativeDefinite
    } else {
        Definiteness::Indefinite
    };
    FormInvariants {
        rank: b2_plus + b2_minus,
        signature: b2_plus as i64 - b2_minus as i64,
        b2_plus,
        b2_minus,
        parity,
        definiteness,
        det: q.determinant(),
    }
}

/// Serre: indefinite unimodular forms are classified by rank, signature and
/// parity.
pub fn indefinite_equivalent(q1: &SymForm, q2: &SymForm) -> Result<bool, FormError> {
    q1.require_unimodular()?;
    q2.require_unimodular()?;
    let (i1, i2) = (invariants(q1), invariants(q2));
    let indef1 = i1.definiteness == Definiteness::Indefinite;
    let indef2 = i2.definiteness == Definiteness::Indefinite;
    if !indef1 && !indef2 {
        return Err(FormError::BothDefinite);
    }
    Ok(indef1 && indef2 && i1.triple() == i2.triple())
}

/// Integral equivalence of unimodular forms, as far as it is decidable here:
/// Serre for indefinite forms, direct reduction for definite forms of rank
/// at most two, and invariant mismatch in every other case.
pub fn forms_equivalent(q1: &SymForm, q2: &SymForm) -> Result<bool, FormError> {
    q1.require_unimodular()?;
    q2.require_unimodular()?;
    let (i1, i2) = (invariants(q1), invariants(q2));
    if i1.triple() != i2.triple() || i1.definiteness != i2.definiteness {
        return Ok(false);
    }
    if i1.definiteness == Definiteness::Indefinite {
        return indefinite_equivalent(q1, q2);
    }
    match q1.dim() {
        0 => Ok(true),
        1 => Ok(q1.entry(0, 0) == q2.entry(0, 0)),
        2 => Ok(reduced_binary(q1) == reduced_binary(q2)),
        r => Err(FormError::Undecided(r)),
    }
}

/// Freedman's theorem specialised to smooth simply-connected closed
/// 4-manifolds: homeomorphic iff the intersection forms are equivalent.
pub fn freedman_homeomorphic(q1: &SymForm, q2: &SymForm, both_smooth: bool) -> Result<bool, FormError> {
    Ok(forms_equivalent(q1, q2)? && both_smooth)
}

/// Gauss-reduced (a, b, c) of a definite binary form, sign-normalised to be
/// positive, with |2b| ≤ a ≤ c and b ≥ 0 (GL₂(ℤ) normal form).
fn reduced_binary(q: &SymForm) -> (BigInt, BigInt, BigInt) {
    let (mut a, mut b, mut c) = (q.entry(0, 0), q.entry(0, 1), q.entry(1, 1));
    if a.is_negative() {
        a = -a;
        b = -b;
        c = -c;
    }
    loop {
        if a > c {
            std::mem::swap(&mut a, &mut c);
        }
        // b ← b − k a with k the nearest integer to b / a.
        let two_a: BigInt = &a * 2;
        let num: BigInt = &b * 2 + &a;
        let k = num.div_floor(&two_a);
        if k.is_zero() {
            break;
        }
        c = &c - &k * &b * 2 + &k * &k * &a;
        b -= &k * &a;
    }
    (a, b.abs(), c)
}

pub fn is_characteristic(x: &[BigInt], q: &SymForm) -> Result<bool, FormError> {
    let n = q.dim();
    if x.len() != n {
        return Err(FormError::DimensionMismatch { expected: n, got: x.len() });
    }
    Ok((0..n).all(|i| {
        let s: BigInt = (0..n).map(|j| q.entry(i, j) * &x[j]).sum();
        (s - q.entry(i, i)).is_even()
    }))
}

/// The 0/1 characteristic vector: the solution of Q x ≡ diag(Q) (mod 2).
/// Unique for unimodular forms; `None` when the system is inconsistent.
pub fn characteristic_vector(q: &SymForm) -> Option<Vec<BigInt>> {
    let n = q.dim();
    let bit = |v: BigInt| v.is_odd() as u8;
    let mut rows: Vec<Vec<u8>> = (0..n)
        .map(|i| {
            let mut r: Vec<u8> = (0..n).map(|j| bit(q.entry(i, j))).collect();
            r.push(bit(q.entry(i, i)));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..n).find(|&i| rows[i][c] == 1) else { continue };
        rows.swap(r, p);
        for i in 0..n {
            if i != r && rows[i][c] == 1 {
                let src = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(src) {
                    *x ^= y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[n] == 1) {
        return None;
    }
    let mut x = vec![BigInt::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = BigInt::from(rows[i][n]);
    }
    Some(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RohlinStatus {
    NotApplicable,
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacteristicCheck {
    #[serde(serialize_with = "crate::json::ser_bigints")]
    pub vector: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::ser_bigint")]
    pub square: BigInt,
    pub congruent_mod_8: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmoothabilityReport {
    pub signature: i64,
    pub parity: Parity,
    /// For even forms: σ ≡ 0 (mod 16) is necessary for a smooth
    /// simply-connected realisation.
    pub rohlin: RohlinStatus,
    pub characteristic_checks: Vec<CharacteristicCheck>,
    pub mod8_identity_holds: bool,
}

/// Rohlin gate plus the Q(x,x) ≡ σ (mod 8) check on the characteristic
/// vectors x₀ and x₀ + 2eᵢ.
pub fn smoothability_obstructions(q: &SymForm) -> Result<SmoothabilityReport, FormError> {
    q.require_unimodular()?;
    let inv = invariants(q);
    let rohlin = match inv.parity {
        Parity::Odd => RohlinStatus::NotApplicable,
        Parity::Even if inv.signature.rem_euclid(16) == 0 => RohlinStatus::Pass,
        Parity::Even => RohlinStatus::Fail,
    };
    let x0 = characteristic_vector(q).expect("unimodular forms have characteristic vectors");
    let mut vectors = vec![x0.clone()];
    for i in 0..q.dim() {
        let mut v = x0.clone();
        v[i] += 2;
        vectors.push(v);
    }
    let sigma = BigInt::from(inv.signature);
    let checks: Vec<CharacteristicCheck> = vectors
        .into_iter()
        .map(|v| {
            let square = q.pair(&v, &v).expect("dimensions match");
            let congruent_mod_8 = (&square - &sigma).mod_floor(&BigInt::from(8)).is_zero();
            CharacteristicCheck { vector: v, square, congruent_mod_8 }
        })
        .collect();
    Ok(SmoothabilityReport {
        signature: inv.signature,
        parity: inv.parity,
        rohlin,
        mod8_identity_holds: checks.iter().all(|c| c.congruent_mod_8),
        characteristic_checks: checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn named_forms() {
        let e8 = invariants(&SymForm::e8_minus());
        assert_eq!((e8.rank, e8.signature, e8.parity), (8, -8, Parity::Even));
        assert_eq!(e8.definiteness, Definiteness::NegativeDefinite);
        assert_eq!(e8.det, BigInt::one());
        let h = invariants(&SymForm::hyperbolic());
        assert_eq!((h.rank, h.signature, h.parity, h.definiteness), (2, 0, Parity::Even, Definiteness::Indefinite));
        assert_eq!(h.det, -BigInt::one());
        let one = invariants(&SymForm::parse("<1>").unwrap());
        assert_eq!((one.rank, one.signature, one.parity), (1, 1, Parity::Odd));
        assert_eq!(one.definiteness, Definiteness::PositiveDefinite);
        assert_eq!(SymForm::parse("diag(1,-1^7)").unwrap(), SymForm::blown_up_cp2(7));
        assert!(SymForm::parse("[[1,2],[3,4]]").is_err());
    }

    #[test]
    fn serre_and_freedman() {
        let h = SymForm::hyperbolic();
        let odd = SymForm::diagonal(&[1, -1]);
        assert!(!indefinite_equivalent(&h, &odd).unwrap());
        assert!(indefinite_equivalent(&h, &h).unwrap());
        let one = SymForm::diagonal(&[1]);
        assert_eq!(indefinite_equivalent(&one, &one), Err(FormError::BothDefinite));
        assert!(freedman_homeomorphic(&one, &one, true).unwrap());
        assert!(!freedman_homeomorphic(&one, &one, false).unwrap());
        // E(1) = CP²#9CP̄² against CP²#8CP̄²
        assert!(!freedman_homeomorphic(&SymForm::blown_up_cp2(9), &SymForm::blown_up_cp2(8), true).unwrap());
        // E8 ⊕ H ⊕ H ... vs odd forms of the same rank/signature
        let e8 = SymForm::e8_minus();
        assert_eq!(forms_equivalent(&e8, &e8), Err(FormError::Undecided(8)));
        let x = SymForm::diagonal(&[-1; 8]);
        assert!(!forms_equivalent(&e8, &x).unwrap());
        // H ⊕ (−E8) vs diag(1,−1^9): same rank/signature, parity differs
        assert!(!indefinite_equivalent(&h.direct_sum(&e8), &SymForm::blown_up_cp2(9)).unwrap());
    }

    #[test]
    fn binary_definite_reduction() {
        let a = SymForm::from_i64(&[vec![2, 1], vec![1, 1]]).unwrap();
        assert!(forms_equivalent(&a, &SymForm::diagonal(&[1, 1])).unwrap());
        let b = SymForm::from_i64(&[vec![-5, 3], vec![3, -2]]).unwrap();
        assert!(forms_equivalent(&b, &SymForm::diagonal(&[-1, -1])).unwrap());
    }

    #[test]
    fn characteristic_examples() {
        let mut k = vec![-3];
        k.extend(std::iter::repeat_n(1, 13));
        assert!(is_characteristic(&v(&k), &SymForm::blown_up_cp2(13)).unwrap());
        assert!(is_characteristic(&v(&[0; 8]), &SymForm::e8_minus()).unwrap());
        assert!(!is_characteristic(&v(&[0]), &SymForm::diagonal(&[1])).unwrap());
        assert!(is_characteristic(&v(&[0, 0]), &SymForm::e8_minus()).is_err());
    }

    #[test]
    fn rohlin_gate() {
        let e8 = SymForm::e8_minus();
        assert_eq!(smoothability_obstructions(&e8).unwrap().rohlin, RohlinStatus::Fail);
        let two = smoothability_obstructions(&e8.direct_sum(&e8)).unwrap();
        assert_eq!(two.rohlin, RohlinStatus::Pass);
        assert!(two.mod8_identity_holds);
        let one = smoothability_obstructions(&SymForm::diagonal(&[1])).unwrap();
        assert_eq!(one.rohlin, RohlinStatus::NotApplicable);
        assert!(one.mod8_identity_holds);
        assert!(smoothability_obstructions(&SymForm::diagonal(&[2])).is_err());
    }

    fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> ExactMatrix {
        let mut b = ExactMatrix::identity(n);
        for &(i, j, k) in ops {
            let (i, j) = (i % n, j % n);
            if i == j {
                continue;
            }
            for r in 0..n {
                let v = b.get(r, i) + Rational::from_integer(k.into()) * b.get(r, j);
                b.set(r, i, v);
            }
        }
        b
    }

    fn small_form(n: usize, entries: &[i64]) -> SymForm {
        let mut m = vec![vec![0i64; n]; n];
        let mut it = entries.iter().cycle();
        for i in 0..n {
            for j in i..n {
                let x = *it.next().unwrap();
                m[i][j] = x;
                m[j][i] = x;
            }
        }
        SymForm::from_i64(&m).unwrap()
    }

    proptest! {
        #![proptest_config(crate::fixed_seed(300))]

        #[test]
        fn basis_change_preserves_invariants(
            n in 1usize..6,
            entries in proptest::collection::vec(-3i64..4, 21),
            ops in proptest::collection::vec((0usize..6, 0usize..6, -2i64..3), 0..8),
        ) {
            let q = small_form(n, &entries);
            let b = unimodular(n, &ops);
            let q2 = q.change_basis(&b).unwrap();
            let (a, c) = (invariants(&q), invariants(&q2));
            prop_assert_eq!(a.triple(), c.triple());
            prop_assert_eq!(a.det, c.det);
        }

        #[test]
        fn sums_and_negation(
            n in 1usize..4, m in 1usize..4,
            e1 in proptest::collection::vec(-3i64..4, 10),
            e2 in proptest::collection::vec(-3i64..4, 10),
        ) {
            let (q1, q2) = (small_form(n, &e1), small_form(m, &e2));
            let (i1, i2) = (invariants(&q1), invariants(&q2));
            let s = invariants(&q1.direct_sum(&q2));
            prop_assert_eq!(s.rank, i1.rank + i2.rank);
            prop_assert_eq!(s.signature, i1.signature + i2.signature);
            prop_assert_eq!(s.parity == Parity::Even, i1.parity == Parity::Even && i2.parity == Parity::Even);
            let neg = invariants(&q1.negate());
            prop_assert_eq!(neg.signature, -i1.signature);
            prop_assert_eq!(neg.parity, i1.parity);
        }

        #[test]
        fn characteristic_squares_are_sigma_mod_8(
            signs in proptest::collection::vec(any::<bool>(), 1..4),
            hyperbolic in any::<bool>(),
            ops in proptest::collection::vec((0usize..6, 0usize..6, -2i64..3), 0..8),
            shift in proptest::collection::vec(-2i64..3, 6),
        ) {
            let d: Vec<i64> = signs.iter().map(|&s| if s { 1 } else { -1 }).collect();
            let mut q = SymForm::diagonal(&d);
            if hyperbolic {
                q = q.direct_sum(&SymForm::hyperbolic());
            }
            let q = q.change_basis(&unimodular(q.dim(), &ops)).unwrap();
            let x0 = characteristic_vector(&q).unwrap();
            let x: Vec<BigInt> = x0.iter().zip(&shift).map(|(a, s)| a + 2 * s).collect();
            prop_assert!(is_characteristic(&x, &q).unwrap());
            let sq = q.pair(&x, &x).unwrap();
            let sigma = BigInt::from(invariants(&q).signature);
            prop_assert!((sq - sigma).mod_floor(&BigInt::from(8)).is_zero());
        }
    }
}
