//! Closed-form bounds on values and on the winner's haul.
//!
//! All arithmetic is exact. Square roots never appear directly: the
//! `√N` bound is decided by comparing squares.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{family_game, floor_log2, GFamily, Game};
use crate::solver::Solver;

/// Largest semiratio of any turn in `𝔊(a, m, x)`: `2a + 1`.
pub fn semiratio_bound(a: u64) -> u64 {
    2 * a + 1
}

/// `(s - 1)/(s + 1) · total`: caps any strategic value whose turns all have semiratio at most `s`.
pub fn semiratio_value_cap(s: u64, total: u64) -> Ratio<u64> {
    assert!(s >= 1, "semiratio cap needs s >= 1");
    Ratio::new((s - 1) * total, s + 1)
}

/// Closed interval with optionally infinite ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundInterval {
    /// `None` is −∞.
    pub lower: Option<i64>,
    /// `None` is +∞.
    pub upper: Option<i64>,
    pub source: String,
}

impl BoundInterval {
    pub fn new(lower: Option<i64>, upper: Option<i64>, source: impl Into<String>) -> Self {
        BoundInterval {
            lower,
            upper,
            source: source.into(),
        }
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lower.is_none_or(|l| l <= v) && self.upper.is_none_or(|u| v <= u)
    }

    pub fn is_ordered(&self) -> bool {
        match (self.lower, self.upper) {
            (Some(l), Some(u)) => l <= u,
            _ => true,
        }
    }
}

impl fmt::Display for BoundInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.lower.map_or("-inf".to_string(), |l| l.to_string());
        let hi = self.upper.map_or("+inf".to_string(), |u| u.to_string());
        write!(f, "[{lo}, {hi}]")
    }
}

/// Every quantity in the standard-form bounds for `𝔊(2^{k+1} - 1, m, 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardFormBounds {
    pub k: u32,
    pub m: u32,
    /// `(2^{k+2} - 2)(m + 1) - 2 + δ₀ₖ`.
    pub upper_statement: i64,
    /// Same expression with `2^{k+1}` in place of `2^{k+2}`.
    pub upper_proof_variant: i64,
    /// `2(2^{k+1} - 1)m - 2(2^{⌈k/2⌉} - 1) + V(𝔊(2^{⌈k/2⌉} - 1, 2^{⌊k/2⌋+1} - 1, 0))`.
    pub lower_strategy: i64,
    /// The anchor value inside `lower_strategy`; zero when its small pile `2^{⌈k/2⌉} - 1` is empty.
    pub anchor_value: i64,
    /// `2(2^{k+1} - 1)(m - 1) + 3(2^{k+1} - 1)`, the b(k)-form bound at its claimed floor.
    pub b_floor_lower: i64,
    pub interval: BoundInterval,
}

pub fn standard_form_bounds(solver: &Solver, k: u32, m: u32) -> Result<StandardFormBounds> {
    if m == 0 || k > 28 {
        return Err(Error::FamilyParams(format!(
            "standard form needs m >= 1 and small k, got k={k} m={m}"
        )));
    }
    let a = (2i64 << k) - 1;
    let m64 = m as i64;
    let delta = i64::from(k == 0);
    let upper_statement = ((4i64 << k) - 2) * (m64 + 1) - 2 + delta;
    let upper_proof_variant = ((2i64 << k) - 2) * (m64 + 1) - 2 + delta;
    let half_up = k.div_ceil(2);
    let anchor_a = (1u32 << half_up) - 1;
    let anchor_m = (2u32 << (k / 2)) - 1;
    let anchor_value = if anchor_a == 0 {
        0
    } else {
        solver.value(&family_game(anchor_a, anchor_m, 0)?)?
    };
    let lower_strategy = 2 * a * m64 - 2 * ((1i64 << half_up) - 1) + anchor_value;
    let b_floor_lower = 2 * a * (m64 - 1) + 3 * a;
    Ok(StandardFormBounds {
        k,
        m,
        upper_statement,
        upper_proof_variant,
        lower_strategy,
        anchor_value,
        b_floor_lower,
        interval: BoundInterval::new(Some(lower_strategy), Some(upper_statement), "standard-form-bounds"),
    })
}

/// `2a(m - 1) + (x ⊕ a) + a - x`, a lower bound on `V(𝔊(a, m, x))`.
pub fn corollary_lower(a: u32, m: u32, x: u32) -> Result<i64> {
    let fam = GFamily::new(a, m, x)?;
    let (a, m, x) = (fam.a() as i64, fam.m() as i64, fam.x() as i64);
    Ok(2 * a * (m - 1) + (x ^ a) + a - x)
}

/// Bounds on `V(𝔊(2^{k+1} - 1, m, x))` in terms of the neighbouring standard forms.
pub fn general_bounds(solver: &Solver, k: u32, m: u32, x: u32) -> Result<BoundInterval> {
    let a = general_params(k, m, x)?;
    let below = solver.value(&family_game(a, m - 1, 0)?)?;
    let above = solver.value(&family_game(a, m + 1, 0)?)?;
    general_bounds_with(k, m, x, below, above)
}

/// [`general_bounds`] with caller-supplied anchors `V(𝔊(a, m-1, 0))` and `V(𝔊(a, m+1, 0))`.
pub fn general_bounds_with(k: u32, m: u32, x: u32, below: i64, above: i64) -> Result<BoundInterval> {
    let a = general_params(k, m, x)? as i64;
    let x = x as i64;
    Ok(BoundInterval::new(
        Some(below + 2 * a - 2 * x),
        Some(above - 2 * a + 2 * x),
        "general-bounds",
    ))
}

fn general_params(k: u32, m: u32, x: u32) -> Result<u32> {
    if k > 28 {
        return Err(Error::FamilyParams(format!("k = {k} is too large")));
    }
    let a = (2u32 << k) - 1;
    GFamily::new(a, m, x)?;
    Ok(a)
}

/// `⌊log₂ N⌋`, a floor on the winner's haul from any position with `N ≥ 1` candies.
pub fn log_lower_bound(total: u64) -> u32 {
    floor_log2(total)
}

/// `(3/2)√(2N) - 2`, kept symbolic; comparisons square both sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FivePileBound {
    pub total: u64,
    /// Smallest integer not below the bound.
    pub ceiling: i64,
}

impl FivePileBound {
    /// `n ≤ (3/2)√(2N) - 2`, i.e. `4(n + 2)² ≤ 18N`.
    pub fn admits(&self, n: u64) -> bool {
        let lhs = 4 * (n as u128 + 2).pow(2);
        lhs <= 18 * self.total as u128
    }
}

impl fmt::Display for FivePileBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "3/2*sqrt({}) - 2 (ceiling {})", 2 * self.total, self.ceiling)
    }
}

pub fn five_pile_upper(total: u64) -> FivePileBound {
    assert!(total >= 1, "five-pile bound needs a positive total");
    let target = 18 * total as u128;
    // smallest s = c + 2 with 4 s² ≥ 18N; s ≥ 2 because N ≥ 1 makes the bound positive
    let mut s = ((target / 4) as f64).sqrt() as u128;
    while s > 0 && 4 * (s - 1) * (s - 1) >= target {
        s -= 1;
    }
    while 4 * s * s < target {
        s += 1;
    }
    FivePileBound {
        total,
        ceiling: s as i64 - 2,
    }
}

/// `p - 1` for a position with `p` distinct piles.
pub fn duplicate_free_lower(g: &Game) -> Result<u64> {
    if !g.is_duplicate_free() {
        return Err(Error::Inapplicable(format!("{g} has duplicate piles")));
    }
    Ok(g.len().saturating_sub(1) as u64)
}

/// One line of a bound sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub claim_id: String,
    pub params: String,
    pub lower: Option<i64>,
    pub exact: i64,
    pub upper: Option<i64>,
    pub holds: bool,
}

impl BoundRow {
    pub fn new(claim_id: &str, params: String, interval: &BoundInterval, exact: i64) -> Self {
        BoundRow {
            claim_id: claim_id.to_string(),
            params,
            lower: interval.lower,
            exact,
            upper: interval.upper,
            holds: interval.contains(exact),
        }
    }
}

/// Exact standard-form values against both the interval and the b(k)-form floor.
pub fn standard_form_sweep(solver: &Solver, k_max: u32, m_max: u32) -> Result<Vec<BoundRow>> {
    let mut rows = Vec::new();
    for k in 0..=k_max {
        for m in 1..=m_max {
            let b = standard_form_bounds(solver, k, m)?;
            let exact = solver.value(&GFamily::standard(k, m)?.realize()?)?;
            let params = format!("k={k} m={m}");
            rows.push(BoundRow::new(
                "standard-form-bounds",
                params.clone(),
                &b.interval,
                exact,
            ));
            let proof = BoundInterval::new(None, Some(b.upper_proof_variant), "");
            rows.push(BoundRow::new(
                "standard-form-upper-proof-variant",
                params.clone(),
                &proof,
                exact,
            ));
            let floor = BoundInterval::new(Some(b.b_floor_lower), None, "");
            rows.push(BoundRow::new("standard-form-b-floor", params, &floor, exact));
        }
    }
    Ok(rows)
}

/// [`corollary_lower`] over `a ≤ a_max`, `m ≤ m_max` and every admissible `x`.
pub fn corollary_sweep(solver: &Solver, a_max: u32, m_max: u32) -> Result<Vec<BoundRow>> {
    let mut rows = Vec::new();
    for a in 1..=a_max {
        for m in 1..=m_max {
            for x in 0..1u32 << floor_log2(a as u64) {
                let lower = corollary_lower(a, m, x)?;
                let exact = solver.value(&family_game(a, m, x)?)?;
                let interval = BoundInterval::new(Some(lower), None, "corollary-lower");
                rows.push(BoundRow::new(
                    "corollary-lower",
                    format!("a={a} m={m} x={x}"),
                    &interval,
                    exact,
                ));
            }
        }
    }
    Ok(rows)
}

pub fn general_sweep(solver: &Solver, k_max: u32, m_max: u32) -> Result<Vec<BoundRow>> {
    let mut rows = Vec::new();
    for k in 0..=k_max {
        let a = (2u32 << k) - 1;
        for m in 1..=m_max {
            for x in 0..2u32 << k {
                let interval = general_bounds(solver, k, m, x)?;
                let exact = solver.value(&family_game(a, m, x)?)?;
                rows.push(BoundRow::new(
                    "general-bounds",
                    format!("k={k} m={m} x={x}"),
                    &interval,
                    exact,
                ));
            }
        }
    }
    Ok(rows)
}

/// Semiratio value cap `(2a)/(2a + 2) · N` against exact values of `𝔊(a, m, x)`.
pub fn semiratio_cap_sweep(solver: &Solver, a_max: u32, m_max: u32) -> Result<Vec<BoundRow>> {
    let mut rows = Vec::new();
    for a in 1..=a_max {
        for m in 1..=m_max {
            for x in 0..1u32 << floor_log2(a as u64) {
                let game = family_game(a, m, x)?;
                let cap = semiratio_value_cap(semiratio_bound(a as u64), game.total());
                let interval = BoundInterval::new(None, Some(cap.to_integer() as i64), "semiratio-value-cap");
                let exact = solver.value(&game)?;
                rows.push(BoundRow::new(
                    "semiratio-value-cap",
                    format!("a={a} m={m} x={x}"),
                    &interval,
                    exact,
                ));
            }
        }
    }
    Ok(rows)
}
