//! Replays the checkable claims over named parameter profiles.
//!
//! Every claim produces a [`ClaimReport`]. Reports contain no timings or
//! addresses, so the serialized output of a run depends only on the profile.

mod claims;
mod conjectures;
mod render;

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solver::{Solver, SolverConfig};

pub use render::render_trace;

/// At most this many counterexamples are listed per report; `failure_count` has the total.
pub const MAX_LISTED_FAILURES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The literal statement fails on the listed inputs while the corrected reading holds.
    DiscrepancyNoted,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::DiscrepancyNoted => "discrepancy-noted",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimKind {
    Claim,
    /// Scans that report evidence but never count as failures.
    Conjecture,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub kind: ClaimKind,
    pub statement: String,
    pub params: String,
    pub instances: u64,
    pub failures: Vec<String>,
    pub failure_count: u64,
    pub status: Status,
    pub notes: Vec<String>,
}

impl ClaimReport {
    /// A failed claim that counts toward the exit status.
    pub fn is_blocking(&self) -> bool {
        self.kind == ClaimKind::Claim && self.status == Status::Fail
    }
}

/// Named parameter presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    Smoke,
    #[default]
    Desk,
    Extended,
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smoke" => Ok(Profile::Smoke),
            "desk" => Ok(Profile::Desk),
            "extended" => Ok(Profile::Extended),
            _ => Err(Error::Parse {
                input: s.into(),
                reason: "profile must be smoke, desk or extended".into(),
            }),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Smoke => "smoke",
            Profile::Desk => "desk",
            Profile::Extended => "extended",
        })
    }
}

/// Sweep limits for one profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// P positions with at most this many candies.
    pub p_total: u64,
    pub odd_moves_piles: usize,
    pub odd_moves_max_pile: u32,
    pub unique_max_pile: u32,
    pub semiratio_a: u32,
    pub semiratio_m: u32,
    pub one_two_m: u32,
    pub flip_flop_k: u32,
    pub flip_flop_m: u32,
    pub thirty_one_m: u32,
    pub fractal_sup_e: u32,
    pub closed_form_k: u32,
    pub closed_form_m: u32,
    pub standard_k: u32,
    pub standard_m: u32,
    pub corollary_a: u32,
    pub corollary_m: u32,
    pub general_k: u32,
    pub general_m: u32,
    pub duplicate_total: u64,
    pub duplicate_a: u32,
    pub xor_adjacent_max: u64,
    pub arrangement_n: u32,
    pub arrangement_exhaustive_n: u32,
    pub equality_total: u64,
    pub five_pile_total: u64,
    pub distinct_piles: usize,
    pub distinct_max_pile: u32,
    pub four_vs_three_m: u32,
    /// Decompose every small pile of `[31, 42, 53]`, not only its binary expansion.
    pub decomposition_full: bool,
    pub decomposition_max_pile: u32,
    pub minimizer_total: u64,
}

impl Budget {
    pub fn for_profile(p: Profile) -> Budget {
        match p {
            Profile::Smoke => Budget {
                p_total: 12,
                odd_moves_piles: 4,
                odd_moves_max_pile: 8,
                unique_max_pile: 24,
                semiratio_a: 7,
                semiratio_m: 2,
                one_two_m: 8,
                flip_flop_k: 3,
                flip_flop_m: 4,
                thirty_one_m: 3,
                fractal_sup_e: 4,
                closed_form_k: 3,
                closed_form_m: 2,
                standard_k: 1,
                standard_m: 3,
                corollary_a: 5,
                corollary_m: 2,
                general_k: 0,
                general_m: 3,
                duplicate_total: 8,
                duplicate_a: 4,
                xor_adjacent_max: 1 << 10,
                arrangement_n: 5,
                arrangement_exhaustive_n: 4,
                equality_total: 16,
                five_pile_total: 30,
                distinct_piles: 4,
                distinct_max_pile: 6,
                four_vs_three_m: 3,
                decomposition_full: false,
                decomposition_max_pile: 10,
                minimizer_total: 12,
            },
            Profile::Desk => Budget {
                p_total: 20,
                odd_moves_piles: 5,
                odd_moves_max_pile: 16,
                unique_max_pile: 64,
                semiratio_a: 7,
                semiratio_m: 3,
                one_two_m: 32,
                flip_flop_k: 4,
                flip_flop_m: 6,
                thirty_one_m: 11,
                fractal_sup_e: 6,
                closed_form_k: 5,
                closed_form_m: 4,
                standard_k: 2,
                standard_m: 6,
                corollary_a: 7,
                corollary_m: 4,
                general_k: 1,
                general_m: 4,
                duplicate_total: 12,
                duplicate_a: 8,
                xor_adjacent_max: 1 << 16,
                arrangement_n: 7,
                arrangement_exhaustive_n: 5,
                equality_total: 24,
                five_pile_total: 60,
                distinct_piles: 4,
                distinct_max_pile: 9,
                four_vs_three_m: 6,
                decomposition_full: true,
                decomposition_max_pile: 20,
                minimizer_total: 20,
            },
            Profile::Extended => Budget {
                p_total: 24,
                odd_moves_piles: 5,
                odd_moves_max_pile: 16,
                unique_max_pile: 96,
                semiratio_a: 15,
                semiratio_m: 3,
                one_two_m: 64,
                flip_flop_k: 5,
                flip_flop_m: 8,
                thirty_one_m: 11,
                fractal_sup_e: 7,
                closed_form_k: 6,
                closed_form_m: 6,
                standard_k: 3,
                standard_m: 6,
                corollary_a: 15,
                corollary_m: 4,
                general_k: 2,
                general_m: 4,
                duplicate_total: 14,
                duplicate_a: 8,
                xor_adjacent_max: 1 << 20,
                arrangement_n: 8,
                arrangement_exhaustive_n: 5,
                equality_total: 32,
                five_pile_total: 120,
                distinct_piles: 5,
                distinct_max_pile: 9,
                four_vs_three_m: 8,
                decomposition_full: true,
                decomposition_max_pile: 28,
                minimizer_total: 24,
            },
        }
    }
}

/// Shared state for one run.
pub struct Ctx<'a> {
    pub solver: &'a Solver,
    pub budget: Budget,
}

/// Counterexample bookkeeping for one claim.
#[derive(Default)]
pub(crate) struct Tally {
    instances: u64,
    failures: Vec<String>,
    discrepancies: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    pub(crate) fn check(&mut self, ok: bool, input: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(input());
        }
    }

    /// Counts an instance where only the literal statement is off.
    pub(crate) fn discrepancy(&mut self, input: String) {
        self.discrepancies.push(input);
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub(crate) fn count(&mut self, n: u64) {
        self.instances += n;
    }

    fn finish(self, spec: &ClaimSpec, params: String) -> ClaimReport {
        let status = if !self.failures.is_empty() {
            Status::Fail
        } else if !self.discrepancies.is_empty() {
            Status::DiscrepancyNoted
        } else {
            Status::Pass
        };
        let mut listed: Vec<String> = self.failures.into_iter().chain(self.discrepancies).collect();
        let failure_count = listed.len() as u64;
        listed.truncate(MAX_LISTED_FAILURES);
        ClaimReport {
            claim_id: spec.id.to_string(),
            kind: spec.kind,
            statement: spec.statement.to_string(),
            params,
            instances: self.instances,
            failures: listed,
            failure_count,
            status,
            notes: self.notes,
        }
    }
}

pub(crate) type ClaimFn = fn(&Ctx, &mut Tally) -> Result<String>;

pub(crate) struct ClaimSpec {
    pub id: &'static str,
    pub kind: ClaimKind,
    pub statement: &'static str,
    pub run: ClaimFn,
}

fn registry() -> Vec<&'static ClaimSpec> {
    claims::CLAIMS.iter().chain(conjectures::CONJECTURES.iter()).collect()
}

/// Ids of every registered claim and conjecture, in report order.
pub fn claim_ids() -> Vec<&'static str> {
    let mut ids: Vec<&str> = registry().iter().map(|c| c.id).collect();
    ids.sort_unstable();
    ids
}

fn find(id: &str) -> Result<&'static ClaimSpec> {
    registry()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownClaim(id.to_string()))
}

fn run_spec(spec: &ClaimSpec, ctx: &Ctx) -> Result<ClaimReport> {
    let mut tally = Tally::default();
    let params = (spec.run)(ctx, &mut tally)?;
    Ok(tally.finish(spec, params))
}

pub fn verify_claim(solver: &Solver, id: &str, profile: Profile) -> Result<ClaimReport> {
    let spec = find(id)?;
    if spec.kind != ClaimKind::Claim {
        return Err(Error::UnknownClaim(format!(
            "{id} is a conjecture; use conjecture_scan"
        )));
    }
    run_spec(
        spec,
        &Ctx {
            solver,
            budget: Budget::for_profile(profile),
        },
    )
}

pub fn conjecture_scan(solver: &Solver, id: &str, profile: Profile) -> Result<ClaimReport> {
    let spec = find(id)?;
    if spec.kind != ClaimKind::Conjecture {
        return Err(Error::UnknownClaim(format!("{id} is not a conjecture")));
    }
    run_spec(
        spec,
        &Ctx {
            solver,
            budget: Budget::for_profile(profile),
        },
    )
}

/// Claims or conjectures by id.
pub fn run_one(solver: &Solver, id: &str, profile: Profile) -> Result<ClaimReport> {
    run_spec(
        find(id)?,
        &Ctx {
            solver,
            budget: Budget::for_profile(profile),
        },
    )
}

/// Runs the whole registry in parallel; reports come back ordered by claim id.
/// A claim that errors is reported as failed with the error in its notes.
pub fn run_all(profile: Profile) -> Vec<ClaimReport> {
    run_all_with(&Solver::with_config(SolverConfig::default()), profile)
}

/// [`run_all`] on a caller-supplied solver, sharing its memo across claims.
pub fn run_all_with(solver: &Solver, profile: Profile) -> Vec<ClaimReport> {
    let ctx = Ctx {
        solver,
        budget: Budget::for_profile(profile),
    };
    let mut reports: Vec<ClaimReport> = registry()
        .par_iter()
        .map(|spec| {
            run_spec(spec, &ctx).unwrap_or_else(|e| ClaimReport {
                claim_id: spec.id.to_string(),
                kind: spec.kind,
                statement: spec.statement.to_string(),
                params: String::new(),
                instances: 0,
                failures: Vec::new(),
                failure_count: 0,
                status: if spec.kind == ClaimKind::Claim {
                    Status::Fail
                } else {
                    Status::DiscrepancyNoted
                },
                notes: vec![format!("error: {e}")],
            })
        })
        .collect();
    reports.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
    reports
}

/// One JSON object per line.
pub fn to_json_lines(reports: &[ClaimReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r).expect("reports serialize"));
        out.push('\n');
    }
    out
}

/// Fixed-width summary with one row per report and a totals line.
pub fn summary_table(reports: &[ClaimReport]) -> String {
    let width = reports.iter().map(|r| r.claim_id.len()).max().unwrap_or(8).max(8);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$}  {:<10}  {:<17}  {:>9}  {:>8}",
        "claim", "kind", "status", "instances", "failures"
    );
    for r in reports {
        let kind = match r.kind {
            ClaimKind::Claim => "claim",
            ClaimKind::Conjecture => "conjecture",
        };
        let _ = writeln!(
            out,
            "{:<width$}  {:<10}  {:<17}  {:>9}  {:>8}",
            r.claim_id,
            kind,
            r.status.to_string(),
            r.instances,
            r.failure_count
        );
    }
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let _ = writeln!(
        out,
        "{} pass, {} fail, {} discrepancy-noted",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::DiscrepancyNoted)
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique_and_sorted() {
        let ids = claim_ids();
        let mut dedup = ids.clone();
        dedup.dedup();
        assert_eq!(ids, dedup);
        assert!(ids.contains(&"one-two-family-value"));
        assert!(ids.contains(&"conj-decomposition"));
    }

    #[test]
    fn unknown_claim() {
        let s = Solver::new();
        assert!(matches!(
            verify_claim(&s, "nope", Profile::Smoke),
            Err(Error::UnknownClaim(_))
        ));
        assert!(verify_claim(&s, "conj-decomposition", Profile::Smoke).is_err());
        assert!(conjecture_scan(&s, "one-two-family-value", Profile::Smoke).is_err());
    }

    #[test]
    fn selected_claims_pass() {
        let s = Solver::new();
        for id in [
            "one-two-family-value",
            "four-pile-example",
            "value-nonnegative",
            "xor-adjacent",
        ] {
            let r = verify_claim(&s, id, Profile::Smoke).unwrap();
            assert_eq!(r.status, Status::Pass, "{r:?}");
            assert!(r.failures.is_empty() && r.instances > 0);
        }
    }

    #[test]
    fn status_matches_failures() {
        let reports = run_all(Profile::Smoke);
        assert_eq!(reports.len(), claim_ids().len());
        for r in &reports {
            assert_eq!(r.status == Status::Pass, r.failures.is_empty(), "{}", r.claim_id);
            assert!(r.failures.len() as u64 <= r.failure_count);
        }
        let table = summary_table(&reports);
        assert_eq!(table.lines().count(), reports.len() + 2);
        assert_eq!(to_json_lines(&reports).lines().count(), reports.len());
    }

    #[test]
    fn profile_parse() {
        for p in [Profile::Smoke, Profile::Desk, Profile::Extended] {
            assert_eq!(p.to_string().parse::<Profile>().unwrap(), p);
        }
        assert!("huge".parse::<Profile>().is_err());
    }
}
