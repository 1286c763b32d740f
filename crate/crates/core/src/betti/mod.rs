//! Closed-form Betti numbers of symmetric powers, their bounds, and the derived checks.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::sympow::{enumerate_compositions, expected_length_of};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BettiError {
    #[error("t = {t} is outside 0..={max}")]
    DegreeOutOfRange { t: u32, max: u32 },
    #[error("expected {expected} Betti numbers, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("Betti numbers must be positive")]
    NonPositive,
}

/// `C(n, k)`, with `C(n, 0) = 1` and `C(n, k) = 0` for `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 {
        return BigUint::zero();
    }
    if k == 0 {
        return BigUint::one();
    }
    if n < k {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from((n - i) as u64);
        acc /= BigUint::from((i + 1) as u64);
    }
    acc
}

pub(crate) fn serialize_big<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(n) => s.serialize_u64(n),
        None => s.serialize_str(&v.to_string()),
    }
}

fn serialize_big_vec<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&BigNumber(x))?;
    }
    seq.end()
}

fn serialize_opt_big<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => serialize_big(x, s),
        None => s.serialize_none(),
    }
}

struct BigNumber<'a>(&'a BigUint);

impl Serialize for BigNumber<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_big(self.0, s)
    }
}

/// Parity-split rank factor: `C(β + a - 1, a)` at even positions, `C(β, a)` at odd ones.
fn position_factor(i: usize, beta: usize, a: u32) -> BigUint {
    if i.is_multiple_of(2) {
        binomial(beta as i64 + a as i64 - 1, a as i64)
    } else {
        binomial(beta as i64, a as i64)
    }
}

/// `β_t(S_j(M))` as the sum over compositions of the parity-split binomial products.
pub fn betti_formula(beta: &[usize], j: u32, t: u32) -> BigUint {
    let p = beta.len() - 1;
    enumerate_compositions(j, t, p)
        .iter()
        .map(|c| c.parts().iter().enumerate().map(|(i, &a)| position_factor(i, beta[i], a)).product::<BigUint>())
        .sum()
}

/// `C(β_0 + j - t - 1, j - t) · C(β_1, t)` for `0 <= t <= min(β_1, j)`.
pub fn betti_pd1(beta0: usize, beta1: usize, j: u32, t: u32) -> Result<BigUint, BettiError> {
    let max = j.min(beta1 as u32);
    if t > max {
        return Err(BettiError::DegreeOutOfRange { t, max });
    }
    let (b0, b1, j, t) = (beta0 as i64, beta1 as i64, j as i64, t as i64);
    Ok(binomial(b0 + j - t - 1, j - t) * binomial(b1, t))
}

/// Length-two closed form, summing `C(β_2 + r - 1, r) C(β_1, t - 2r) C(β_0 + j - t + r - 1, j - t + r)`
/// over `r = 0..⌊t/2⌋` when `j >= t` and over `r = t-j..min(j, ⌊t/2⌋)` when `j < t`.
pub fn betti_pd2(beta: [usize; 3], j: u32, t: u32) -> Result<BigUint, BettiError> {
    if t > 2 * j {
        return Err(BettiError::DegreeOutOfRange { t, max: 2 * j });
    }
    let [b0, b1, b2] = beta.map(|b| b as i64);
    let (j, t) = (j as i64, t as i64);
    let range = if j >= t { 0..=t / 2 } else { (t - j)..=j.min(t / 2) };
    Ok(range.map(|r| binomial(b2 + r - 1, r) * binomial(b1, t - 2 * r) * binomial(b0 + j - t + r - 1, j - t + r)).sum())
}

/// `jp` for even `p`, `j(p-1) + min(β_p, j)` for odd `p`.
pub fn expected_pd(beta: &[usize], j: u32) -> u64 {
    expected_length_of(beta, j)
}

/// The degree-independent upper bound `C(Σβ + j(p+2)/2, j)` (even `p`) or `C(Σβ + j(p+1)/2, j)` (odd `p`).
pub fn upper_bound(beta: &[usize], j: u32) -> BigUint {
    let p = (beta.len() - 1) as i64;
    let sum: i64 = beta.iter().map(|&b| b as i64).sum();
    let j = j as i64;
    let shift = if p % 2 == 0 { j * (p + 2) / 2 } else { j * (p + 1) / 2 };
    binomial(sum + shift, j)
}

/// `C(β_1, t)` for `p = 1`; for `p = 2`, `C(β_1, t)` when `j >= t` and `C(β_1, 2j - t)` otherwise.
/// No bound is known for other lengths.
pub fn lower_bound(beta: &[usize], j: u32, t: u32) -> Option<BigUint> {
    let b1 = *beta.get(1)? as i64;
    let (j, t) = (j as i64, t as i64);
    match beta.len() - 1 {
        1 => Some(binomial(b1, t)),
        2 if j >= t => Some(binomial(b1, t)),
        2 => Some(binomial(b1, 2 * j - t)),
        _ => None,
    }
}

/// `C(μ + j - 1, j)`, the number of generators of the `j`-th Rees component.
pub fn rees_mu(mu: u64, j: u32) -> BigUint {
    binomial(mu as i64 + j as i64 - 1, j as i64)
}

/// Coefficient of `z^j` in `Π_{i even} (1-z)^{-β_i} · Π_{i odd} (1-z)^{β_i}`, by truncated
/// series multiplication.
pub fn euler_series_coefficient(beta: &[usize], j: u32) -> BigInt {
    let n = j as usize + 1;
    let mut series = vec![BigInt::zero(); n];
    series[0] = BigInt::one();
    for (i, &b) in beta.iter().enumerate() {
        for _ in 0..b {
            if i % 2 == 0 {
                // multiply by 1/(1-z): prefix sums
                for k in 1..n {
                    let prev = series[k - 1].clone();
                    series[k] += prev;
                }
            } else {
                // multiply by (1-z)
                for k in (1..n).rev() {
                    let prev = series[k - 1].clone();
                    series[k] -= prev;
                }
            }
        }
    }
    series.pop().expect("series has j + 1 coefficients")
}

/// `Σ_t (-1)^t v_t`.
pub fn alternating_sum(values: &[BigUint]) -> BigInt {
    values.iter().enumerate().fold(BigInt::zero(), |acc, (t, v)| {
        let v = BigInt::from(v.clone());
        if t % 2 == 0 {
            acc + v
        } else {
            acc - v
        }
    })
}

/// `C(r_0 + j - 1, j)` for `r_0 >= 0`.
pub fn euler_closed_form(r0: i64, j: u32) -> Option<BigInt> {
    (r0 >= 0).then(|| BigInt::from(binomial(r0 + j as i64 - 1, j as i64)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
pub enum BettiLabel {
    #[default]
    #[serde(rename = "symmetric-power")]
    Sym,
    #[serde(rename = "rees-component")]
    Rees,
    #[serde(rename = "ideal-power")]
    Power,
}

impl BettiLabel {
    pub fn heading(self, j: u32) -> String {
        match self {
            BettiLabel::Sym => format!("S_{j}(M)"),
            BettiLabel::Rees => format!("R_{j}(M)"),
            BettiLabel::Power => format!("I^{j}"),
        }
    }
}

impl std::str::FromStr for BettiLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "sym" => Ok(BettiLabel::Sym),
            "rees" => Ok(BettiLabel::Rees),
            "power" => Ok(BettiLabel::Power),
            _ => Err(format!("unknown label {s:?}; expected sym, rees or power")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BettiSource {
    #[serde(rename = "formula")]
    Formula,
    #[serde(rename = "complex-ranks")]
    ComplexRanks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub label: BettiLabel,
    pub j: u32,
    #[serde(serialize_with = "serialize_big_vec")]
    pub values: Vec<BigUint>,
    pub pd: u64,
    pub source: BettiSource,
}

/// `β_t` for `t = 0..=expected_pd` from the composition formula.
pub fn betti_table(beta: &[usize], j: u32, label: BettiLabel) -> Result<BettiTable, BettiError> {
    if beta.len() < 2 {
        return Err(BettiError::WrongLength { expected: 2, got: beta.len() });
    }
    if beta.contains(&0) {
        return Err(BettiError::NonPositive);
    }
    let pd = expected_pd(beta, j);
    let values = (0..=pd as u32).map(|t| betti_formula(beta, j, t)).collect();
    Ok(BettiTable { label, j, values, pd, source: BettiSource::Formula })
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let heading = self.label.heading(self.j);
        let width = self.values.iter().map(|v| v.to_string().len()).max().unwrap_or(1).max(heading.len());
        writeln!(f, "{:>3} | {:>width$}", "t", heading)?;
        writeln!(f, "{}", "-".repeat(width + 6))?;
        for (t, v) in self.values.iter().enumerate() {
            writeln!(f, "{t:>3} | {:>width$}", v.to_string())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub t: u32,
    #[serde(serialize_with = "serialize_opt_big")]
    pub lower: Option<BigUint>,
    #[serde(serialize_with = "serialize_big")]
    pub value: BigUint,
    #[serde(serialize_with = "serialize_big")]
    pub upper: BigUint,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub j: u32,
    pub rows: Vec<BoundRow>,
    pub pass: bool,
}

/// Checks `lower ≤ value ≤ upper` for each degree; a missing lower bound counts as 0.
pub fn bound_report(beta: &[usize], j: u32, values: &[BigUint]) -> BoundReport {
    let upper = upper_bound(beta, j);
    let rows: Vec<BoundRow> = values
        .iter()
        .enumerate()
        .map(|(t, v)| {
            let lower = lower_bound(beta, j, t as u32);
            let pass = lower.as_ref().is_none_or(|l| l <= v) && *v <= upper;
            BoundRow { t: t as u32, lower, value: v.clone(), upper: upper.clone(), pass }
        })
        .collect();
    let pass = rows.iter().all(|r| r.pass);
    BoundReport { j, rows, pass }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerComparison {
    pub t: u32,
    #[serde(serialize_with = "serialize_big")]
    pub value: BigUint,
    #[serde(serialize_with = "serialize_big")]
    pub bound: BigUint,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BehReport {
    pub d: u32,
    /// Whether `β_1 >= d`, under which the comparisons are guaranteed.
    pub hypothesis_holds: bool,
    pub rows: Vec<LowerComparison>,
    #[serde(serialize_with = "serialize_big")]
    pub total: BigUint,
    #[serde(serialize_with = "serialize_big")]
    pub total_bound: BigUint,
    pub total_pass: bool,
    pub pass: bool,
}

fn lower_comparisons(values: &[BigUint], n: u64) -> Vec<LowerComparison> {
    values
        .iter()
        .enumerate()
        .map(|(t, v)| {
            let bound = binomial(n as i64, t as i64);
            LowerComparison { t: t as u32, value: v.clone(), pass: *v >= bound, bound }
        })
        .collect()
}

/// Compares `β_t >= C(d, t)` over the table and `Σ β_t >= 2^d`.
pub fn beh_check(values: &[BigUint], d: u32, beta1: usize) -> BehReport {
    let rows = lower_comparisons(values, d as u64);
    let total: BigUint = values.iter().sum();
    let total_bound = BigUint::one() << d;
    let total_pass = total >= total_bound;
    let pass = rows.iter().all(|r| r.pass) && total_pass;
    BehReport { d, hypothesis_holds: beta1 >= d as usize, rows, total, total_bound, total_pass, pass }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    /// `β_0^S · β_1^T(k) + β_1^S`.
    pub composite_beta1: u64,
    pub rows: Vec<LowerComparison>,
    pub pass: bool,
}

/// Composite first Betti number over a fiber product, and `β_t >= C(β_1^T(k), t)` on the table.
pub fn fiber_bound(beta0_s: u64, beta1_s: u64, beta1_t_k: u64, values: &[BigUint]) -> FiberReport {
    let rows = lower_comparisons(values, beta1_t_k);
    let pass = rows.iter().all(|r| r.pass);
    FiberReport { composite_beta1: beta0_s * beta1_t_k + beta1_s, rows, pass }
}

/// Whether a signed value is a nonnegative integer equal to `expected`.
pub fn matches_unsigned(v: &BigInt, expected: &BigUint) -> bool {
    !v.is_negative() && v.magnitude() == expected
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn us(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&n| u(n)).collect()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), u(10));
        assert_eq!(binomial(5, 0), u(1));
        assert_eq!(binomial(-1, 0), u(1));
        assert_eq!(binomial(3, 4), u(0));
        assert_eq!(binomial(3, -1), u(0));
        assert_eq!(binomial(60, 30), BigUint::parse_bytes(b"118264581564861424", 10).unwrap());
    }

    #[test]
    fn formula_values() {
        assert_eq!(betti_formula(&[6, 7, 2], 2, 3), u(14));
        assert_eq!(betti_formula(&[6, 7, 2], 2, 0), u(21));
        assert_eq!(betti_formula(&[6, 7, 2], 3, 0), u(56));
        let t = betti_table(&[6, 7, 2], 2, BettiLabel::Sym).unwrap();
        assert_eq!(t.values, us(&[21, 42, 33, 14, 3]));
        assert_eq!(t.pd, 4);
    }

    #[test]
    fn pd1_closed_form() {
        assert_eq!(betti_pd1(3, 2, 2, 1).unwrap(), u(6));
        assert_eq!(betti_pd1(3, 2, 2, 0).unwrap(), binomial(4, 2));
        assert_eq!(betti_pd1(3, 2, 2, 2).unwrap(), u(1));
        assert!(betti_pd1(3, 2, 2, 3).is_err());
    }

    #[test]
    fn pd2_closed_form() {
        assert_eq!(betti_pd2([6, 7, 2], 2, 2).unwrap(), u(33));
        assert_eq!(betti_pd2([6, 7, 2], 2, 3).unwrap(), u(14));
        assert_eq!(betti_pd2([6, 7, 2], 2, 4).unwrap(), u(3));
        assert!(betti_pd2([6, 7, 2], 2, 5).is_err());
    }

    #[test]
    fn predictions_and_bounds() {
        assert_eq!(expected_pd(&[6, 7, 2], 2), 4);
        assert_eq!(expected_pd(&[4, 4, 1], 3), 6);
        assert_eq!(expected_pd(&[3, 2], 5), 2);
        assert_eq!(upper_bound(&[6, 7, 2], 2), u(171));
        assert_eq!(upper_bound(&[6, 7, 2], 3), u(1330));
        assert_eq!(upper_bound(&[3, 2], 2), u(21));
        assert_eq!(lower_bound(&[6, 7, 2], 2, 2), Some(u(21)));
        assert_eq!(lower_bound(&[6, 7, 2], 2, 3), Some(u(7)));
        assert_eq!(lower_bound(&[3, 2], 2, 2), Some(u(1)));
        assert_eq!(lower_bound(&[1, 2, 2, 1], 2, 2), None);
        assert_eq!(rees_mu(3, 2), u(6));
        assert_eq!(rees_mu(6, 2), u(21));
        assert_eq!(rees_mu(4, 0), u(1));
    }

    #[test]
    fn bound_sandwich() {
        let r = bound_report(&[6, 7, 2], 2, &us(&[21, 42, 33, 14, 3]));
        assert!(r.pass);
        assert_eq!(r.rows[2].lower, Some(u(21)));
        assert_eq!(r.rows[3].lower, Some(u(7)));
        let bad = bound_report(&[6, 7, 2], 2, &us(&[21, 42, 20, 14, 3]));
        assert!(!bad.pass);
    }

    #[test]
    fn beh() {
        let values: Vec<BigUint> = (0..=2).map(|t| betti_pd1(5, 4, 2, t).unwrap()).collect();
        assert_eq!(values, us(&[15, 20, 6]));
        let r = beh_check(&values, 4, 4);
        assert!(r.hypothesis_holds && r.pass);
        assert!(!beh_check(&us(&[6, 6, 1]), 3, 2).hypothesis_holds);
        assert!(beh_check(&us(&[1]), 0, 0).pass);
    }

    #[test]
    fn fiber() {
        let r = fiber_bound(2, 1, 3, &us(&[6, 6, 1]));
        assert_eq!(r.composite_beta1, 7);
        assert!(fiber_bound(2, 1, 0, &us(&[6, 6, 1])).pass);
    }

    #[test]
    fn euler_identity() {
        for beta in [vec![3usize, 2], vec![6, 7, 2], vec![4, 4, 1], vec![2, 5, 4, 1]] {
            let r0: i64 = beta.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
            for j in 0..=4 {
                let table = betti_table(&beta, j, BettiLabel::Sym).unwrap();
                let alt = alternating_sum(&table.values);
                assert_eq!(alt, euler_series_coefficient(&beta, j), "{beta:?} j={j}");
                if let Some(closed) = euler_closed_form(r0, j) {
                    assert_eq!(alt, closed);
                }
            }
        }
    }

    #[test]
    fn table_serializes_numbers() {
        let t = betti_table(&[3, 2], 2, BettiLabel::Power).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"label":"ideal-power","j":2,"values":[6,6,1],"pd":2,"source":"formula"}"#);
    }
}
