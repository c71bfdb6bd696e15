use std::fmt::Write as _;
use std::io::{self, BufRead, Read};
use std::path::Path;

use candynim::allocation::{equality_family, exhaustive_min_winner, five_pile_construct, AllocationResult};
use candynim::bounds::{corollary_sweep, general_sweep, semiratio_cap_sweep, standard_form_sweep, BoundRow};
use candynim::harness::{self, render_trace, Budget, ClaimReport, Profile};
use candynim::strategies::{
    simulate, ContractiveFn, DefaultResponder, FlipFlop, Fractal, LargestPile, LoserPolicy, StrategyTrace,
};
use candynim::{loser_moves, winning_moves, Game, OutcomeClass, Ply, SolveResult, Solver, SolverConfig};
use serde::Serialize;

use crate::args::{BoundClaim, Command, Config, Format, Method, Strategy};
use crate::Failure;

/// What a command printed, and whether a claim it checked failed.
pub struct Outcome {
    pub stdout: String,
    pub claim_failed: bool,
}

impl From<String> for Outcome {
    fn from(stdout: String) -> Self {
        Outcome {
            stdout,
            claim_failed: false,
        }
    }
}

pub fn run(command: Command, config: &Config) -> Result<Outcome, Failure> {
    let solver = Solver::with_config(SolverConfig {
        memo_cap: config.memo_cap,
        pile_cap: config.pile_cap,
        parallel: config.parallel,
    });
    let fmt = config.format;
    let games = |raw: Vec<String>| read_games(raw, config.pile_cap);
    match command {
        Command::Solve { games: raw } => solve(&solver, games(raw)?, fmt).map(Outcome::from),
        Command::Classify { games: raw } => classify(games(raw)?, fmt).map(Outcome::from),
        Command::Moves { games: raw, optimal } => moves(&solver, games(raw)?, optimal, fmt).map(Outcome::from),
        Command::Simulate { strategy, games: raw } => {
            let responder = DefaultResponder::with_solver(Solver::with_config(*solver.config()));
            simulate_games(strategy, games(raw)?, &responder, fmt).map(Outcome::from)
        }
        Command::Bounds {
            claim,
            param_max,
            m_max,
        } => bounds(&solver, claim, param_max, m_max, config.profile.into(), fmt).map(Outcome::from),
        Command::Allocate {
            total,
            method,
            max_piles,
            max_pile,
        } => {
            let results = match method {
                Method::Equality => equality_family(&solver, total)?,
                Method::FivePile => vec![five_pile_construct(&solver, total)?],
                Method::Exhaustive => exhaustive_min_winner(&solver, total, max_piles, max_pile)?,
            };
            allocations(total, &results, fmt).map(Outcome::from)
        }
        Command::Verify { claim, list, out } => {
            let outcome = if list {
                Outcome::from(
                    harness::claim_ids()
                        .iter()
                        .map(|id| format!("{id}\n"))
                        .collect::<String>(),
                )
            } else {
                verify(&solver, claim.as_deref().unwrap_or("all"), config.profile.into(), fmt)?
            };
            match out {
                Some(path) => {
                    std::fs::write(&path, &outcome.stdout).map_err(|e| Failure::Io(path.display().to_string(), e))?;
                    Ok(Outcome {
                        stdout: String::new(),
                        claim_failed: outcome.claim_failed,
                    })
                }
                None => Ok(outcome),
            }
        }
        Command::Render { trace } => render(&trace).map(Outcome::from),
    }
}

/// Games from the arguments, or one per stdin line when there are none.
fn read_games(raw: Vec<String>, cap: u64) -> Result<Vec<Game>, Failure> {
    let lines = if raw.is_empty() {
        let stdin = io::stdin();
        let mut lines = Vec::new();
        for line in stdin.lock().lines() {
            let line = line.map_err(|e| Failure::Io("stdin".into(), e))?;
            let trimmed = line.trim();
            if !trimmed.is_empty() && !trimmed.starts_with('#') {
                lines.push(trimmed.to_string());
            }
        }
        lines
    } else {
        raw
    };
    Ok(lines
        .iter()
        .map(|s| Game::parse_with_cap(s, cap))
        .collect::<candynim::Result<_>>()?)
}

fn json_lines<T: Serialize>(items: &[T]) -> Result<String, Failure> {
    let mut out = String::new();
    for item in items {
        out.push_str(&serde_json::to_string(item)?);
        out.push('\n');
    }
    Ok(out)
}

fn csv<T: Serialize>(rows: &[T]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::Io("csv buffer".into(), e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn plies_text(plies: &[Ply]) -> String {
    if plies.is_empty() {
        return "-".into();
    }
    plies
        .iter()
        .map(|p| format!("{}->{}", p.from, p.to))
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Serialize)]
struct SolveRow {
    game: String,
    value: i64,
    n_loser: u64,
    n_winner: u64,
    line: String,
}

fn solve(solver: &Solver, games: Vec<Game>, fmt: Format) -> Result<String, Failure> {
    let results: Vec<SolveResult> = games.iter().map(|g| solver.solve(g)).collect::<candynim::Result<_>>()?;
    match fmt {
        Format::Json => json_lines(&results),
        Format::Csv => csv(&results
            .iter()
            .map(|r| SolveRow {
                game: r.game.to_string(),
                value: r.value,
                n_loser: r.n_loser,
                n_winner: r.n_winner,
                line: plies_text(&r.principal_line),
            })
            .collect::<Vec<_>>()),
        Format::Text => {
            let mut out = String::new();
            for r in &results {
                let _ = writeln!(
                    out,
                    "{}  V={}  N_L={}  N_W={}  line: {}",
                    r.game,
                    r.value,
                    r.n_loser,
                    r.n_winner,
                    plies_text(&r.principal_line)
                );
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct ClassRow {
    game: String,
    class: OutcomeClass,
    nim_sum: u32,
}

fn classify(games: Vec<Game>, fmt: Format) -> Result<String, Failure> {
    let rows: Vec<ClassRow> = games
        .iter()
        .map(|g| ClassRow {
            game: g.to_string(),
            class: g.outcome(),
            nim_sum: g.grundy(),
        })
        .collect();
    match fmt {
        Format::Json => json_lines(&rows),
        Format::Csv => csv(&rows),
        Format::Text => Ok(rows.iter().map(|r| format!("{}  {}\n", r.game, r.class)).collect()),
    }
}

#[derive(Serialize)]
struct MovesRecord {
    game: String,
    class: OutcomeClass,
    plies: Vec<Ply>,
}

#[derive(Serialize)]
struct MoveRow<'a> {
    game: &'a str,
    class: OutcomeClass,
    pile: usize,
    from: u32,
    to: u32,
}

fn moves(solver: &Solver, games: Vec<Game>, optimal: bool, fmt: Format) -> Result<String, Failure> {
    let mut records = Vec::new();
    for g in games {
        let plies = if optimal {
            solver.best_plies(&g)?
        } else if g.is_p() {
            loser_moves(&g)?
        } else {
            winning_moves(&g)
        };
        records.push(MovesRecord {
            game: g.to_string(),
            class: g.outcome(),
            plies,
        });
    }
    match fmt {
        Format::Json => json_lines(&records),
        Format::Csv => {
            let rows: Vec<MoveRow> = records
                .iter()
                .flat_map(|r| {
                    r.plies.iter().map(move |p| MoveRow {
                        game: &r.game,
                        class: r.class,
                        pile: p.pile,
                        from: p.from,
                        to: p.to,
                    })
                })
                .collect();
            csv(&rows)
        }
        Format::Text => Ok(records
            .iter()
            .map(|r| format!("{}  {}  {}\n", r.game, r.class, plies_text(&r.plies)))
            .collect()),
    }
}

#[derive(Serialize)]
struct TurnRow<'a> {
    game: &'a str,
    turn: usize,
    loser_from: u32,
    loser_to: u32,
    winner_from: u32,
    winner_to: u32,
    value: i64,
}

fn simulate_games(
    strategy: Strategy,
    games: Vec<Game>,
    responder: &DefaultResponder,
    fmt: Format,
) -> Result<String, Failure> {
    let policy: Box<dyn LoserPolicy> = match strategy {
        Strategy::FlipFlop => Box::new(FlipFlop),
        Strategy::Fractal => Box::new(Fractal(ContractiveFn::halve())),
        Strategy::LargestPile => Box::new(LargestPile),
    };
    let traces: Vec<StrategyTrace> = games
        .iter()
        .map(|g| simulate(policy.as_ref(), g, responder))
        .collect::<candynim::Result<_>>()?;
    match fmt {
        Format::Json => json_lines(&traces),
        Format::Csv => {
            let names: Vec<String> = traces.iter().map(|t| t.root.to_string()).collect();
            let rows: Vec<TurnRow> = traces
                .iter()
                .zip(&names)
                .flat_map(|(t, name)| {
                    t.turns.iter().enumerate().map(move |(i, turn)| TurnRow {
                        game: name,
                        turn: i + 1,
                        loser_from: turn.loser_ply().from,
                        loser_to: turn.loser_ply().to,
                        winner_from: turn.winner_ply().from,
                        winner_to: turn.winner_ply().to,
                        value: candynim::single_turn_value(turn),
                    })
                })
                .collect();
            csv(&rows)
        }
        Format::Text => {
            let mut out = String::new();
            for t in &traces {
                out.push_str(&render_trace(t));
                let _ = writeln!(
                    out,
                    "{} on {}: strategic value {} (loser {}, winner {})",
                    policy.name(),
                    t.root,
                    t.strategic_value,
                    t.loser_total,
                    t.winner_total
                );
            }
            Ok(out)
        }
    }
}

fn bounds(
    solver: &Solver,
    claim: BoundClaim,
    param_max: Option<u32>,
    m_max: Option<u32>,
    profile: Profile,
    fmt: Format,
) -> Result<String, Failure> {
    let b = Budget::for_profile(profile);
    let rows = match claim {
        BoundClaim::StandardForm => {
            standard_form_sweep(solver, param_max.unwrap_or(b.standard_k), m_max.unwrap_or(b.standard_m))?
        }
        BoundClaim::Corollary => corollary_sweep(
            solver,
            param_max.unwrap_or(b.corollary_a),
            m_max.unwrap_or(b.corollary_m),
        )?,
        BoundClaim::General => general_sweep(solver, param_max.unwrap_or(b.general_k), m_max.unwrap_or(b.general_m))?,
        BoundClaim::SemiratioCap => semiratio_cap_sweep(
            solver,
            param_max.unwrap_or(b.semiratio_a),
            m_max.unwrap_or(b.semiratio_m),
        )?,
    };
    match fmt {
        Format::Json => json_lines(&rows),
        Format::Csv => csv(&rows),
        Format::Text => Ok(bound_table(&rows)),
    }
}

fn bound_table(rows: &[BoundRow]) -> String {
    let end = |v: Option<i64>, inf: &str| v.map_or(inf.to_string(), |x| x.to_string());
    let id_w = rows.iter().map(|r| r.claim_id.len()).max().unwrap_or(5).max(5);
    let par_w = rows.iter().map(|r| r.params.len()).max().unwrap_or(6).max(6);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<id_w$}  {:<par_w$}  {:>6}  {:>6}  {:>6}  holds",
        "claim", "params", "lower", "exact", "upper"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<id_w$}  {:<par_w$}  {:>6}  {:>6}  {:>6}  {}",
            r.claim_id,
            r.params,
            end(r.lower, "-inf"),
            r.exact,
            end(r.upper, "+inf"),
            if r.holds { "yes" } else { "NO" }
        );
    }
    out
}

#[derive(Serialize)]
struct AllocationRow {
    total: u64,
    game: String,
    n_winner: u64,
    n_loser: u64,
    value: i64,
    construction: String,
}

fn allocations(total: u64, results: &[AllocationResult], fmt: Format) -> Result<String, Failure> {
    match fmt {
        Format::Json => json_lines(results),
        Format::Csv => csv(&results
            .iter()
            .map(|r| AllocationRow {
                total,
                game: r.game().to_string(),
                n_winner: r.n_winner(),
                n_loser: r.result.n_loser,
                value: r.result.value,
                construction: r.construction.to_string(),
            })
            .collect::<Vec<_>>()),
        Format::Text => {
            if results.is_empty() {
                return Ok(format!("N={total}: no arrangement\n"));
            }
            Ok(results
                .iter()
                .map(|r| {
                    format!(
                        "{}  N_W={}  V={}  {}\n",
                        r.game(),
                        r.n_winner(),
                        r.result.value,
                        r.construction
                    )
                })
                .collect())
        }
    }
}

#[derive(Serialize)]
struct ReportRow<'a> {
    claim_id: &'a str,
    kind: candynim::harness::ClaimKind,
    status: candynim::harness::Status,
    instances: u64,
    failure_count: u64,
    params: &'a str,
}

fn verify(solver: &Solver, claim: &str, profile: Profile, fmt: Format) -> Result<Outcome, Failure> {
    let reports = if claim == "all" {
        harness::run_all_with(solver, profile)
    } else {
        vec![harness::run_one(solver, claim, profile)?]
    };
    let claim_failed = reports.iter().any(ClaimReport::is_blocking);
    let stdout = match fmt {
        Format::Json => harness::to_json_lines(&reports),
        Format::Csv => csv(&reports
            .iter()
            .map(|r| ReportRow {
                claim_id: &r.claim_id,
                kind: r.kind,
                status: r.status,
                instances: r.instances,
                failure_count: r.failure_count,
                params: &r.params,
            })
            .collect::<Vec<_>>())?,
        Format::Text if reports.len() == 1 => report_text(&reports[0]),
        Format::Text => harness::summary_table(&reports),
    };
    Ok(Outcome { stdout, claim_failed })
}

fn report_text(r: &ClaimReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}  {}", r.claim_id, r.status);
    let _ = writeln!(out, "  statement: {}", r.statement);
    let _ = writeln!(out, "  params: {}", r.params);
    let _ = writeln!(out, "  instances: {}", r.instances);
    if r.failure_count > 0 {
        let _ = writeln!(out, "  failures ({} total):", r.failure_count);
        for f in &r.failures {
            let _ = writeln!(out, "    {f}");
        }
    }
    for n in &r.notes {
        let _ = writeln!(out, "  note: {n}");
    }
    out
}

fn render(path: &Path) -> Result<String, Failure> {
    let name = path.display().to_string();
    let text = if name == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(name.clone(), e))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Io(name.clone(), e))?
    };
    let mut out = String::new();
    // `simulate --format json` writes one trace per line
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let trace: StrategyTrace = serde_json::from_str(line)?;
        trace.validate()?;
        out.push_str(&render_trace(&trace));
    }
    Ok(out)
}
