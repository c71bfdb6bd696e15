use crate::allocation::exhaustive_min_winner;
use crate::enumerate::{for_each_game, Space};
use crate::error::Result;
use crate::game::{floor_log2, game_sum, Game};

use super::{ClaimKind, ClaimSpec, Ctx, Tally};

pub(crate) static CONJECTURES: [ClaimSpec; 2] = [
    ClaimSpec {
        id: "conj-decomposition",
        kind: ClaimKind::Conjecture,
        statement: "for [a,b,c] with a < b < c some a = a_1+...+a_j = a_1 xor ... xor a_j, j > 1, gives V([a_1,...,a_j,b,c]) >= V([a,b,c])",
        run: decomposition,
    },
    ClaimSpec {
        id: "conj-minimizer-shape",
        kind: ClaimKind::Conjecture,
        statement: "for every N some least-N_W game has a pile >= N/4, and some has O(log N) piles",
        run: minimizer_shape,
    },
];

/// Every split of the set bits of `a` into `j >= 2` nonempty groups, as pile sizes.
/// Groups follow restricted growth order, so the output is deterministic.
fn bit_partitions(a: u32) -> Vec<Vec<u32>> {
    let bits: Vec<u32> = (0..32).map(|i| 1u32 << i).filter(|b| a & b != 0).collect();
    let mut out = Vec::new();
    let mut labels = vec![0usize; bits.len()];
    fn grow(i: usize, blocks: usize, bits: &[u32], labels: &mut [usize], out: &mut Vec<Vec<u32>>) {
        if i == bits.len() {
            if blocks >= 2 {
                let mut parts = vec![0u32; blocks];
                for (b, &l) in bits.iter().zip(labels.iter()) {
                    parts[l] |= b;
                }
                out.push(parts);
            }
            return;
        }
        for l in 0..=blocks {
            labels[i] = l;
            grow(i + 1, blocks.max(l + 1), bits, labels, out);
        }
    }
    if !bits.is_empty() {
        grow(1, 1, &bits, &mut labels, &mut out);
    }
    out
}

/// Binary expansion only, when `a` has at least two set bits.
fn binary_expansion(a: u32) -> Vec<Vec<u32>> {
    let parts: Vec<u32> = (0..32).map(|i| 1u32 << i).filter(|b| a & b != 0).collect();
    if parts.len() >= 2 {
        vec![parts]
    } else {
        Vec::new()
    }
}

struct Scan {
    best: Option<(Game, i64)>,
    binary: Option<i64>,
}

fn scan(ctx: &Ctx, a: u32, b: u32, c: u32) -> Result<Scan> {
    let rest = Game::new([b, c]);
    let splits = if ctx.budget.decomposition_full {
        bit_partitions(a)
    } else {
        binary_expansion(a)
    };
    let mut best: Option<(Game, i64)> = None;
    for parts in splits {
        let h = game_sum(&Game::new(parts), &rest);
        let v = ctx.solver.value(&h)?;
        if best.as_ref().is_none_or(|(_, bv)| v > *bv) {
            best = Some((h, v));
        }
    }
    let binary = match binary_expansion(a).pop() {
        Some(parts) => Some(ctx.solver.value(&game_sum(&Game::new(parts), &rest))?),
        None => None,
    };
    Ok(Scan { best, binary })
}

fn decomposition(ctx: &Ctx, t: &mut Tally) -> Result<String> {
    let max = ctx.budget.decomposition_max_pile;
    let mut triples = Vec::new();
    for_each_game(Space::piles(3, max), |g| {
        if let [c, b, a] = *g.piles() {
            if g.is_p() && a < b && b < c {
                triples.push((a, b, c));
            }
        }
    });
    triples.push((31, 42, 53));
    let (mut supporting, mut vacuous) = (0u64, 0u64);
    for (a, b, c) in triples {
        let g = Game::new([a, b, c]);
        let v = ctx.solver.value(&g)?;
        let s = scan(ctx, a, b, c)?;
        t.count(1);
        match &s.best {
            None => vacuous += 1,
            Some((_, bv)) if *bv >= v => supporting += 1,
            Some((h, bv)) => t.discrepancy(format!("{g}: V={v}, best decomposition {h} has V={bv}")),
        }
        if (a, b, c) == (31, 42, 53) {
            let witness = s.best.map(|(h, bv)| format!("{h} V={bv}")).unwrap_or_default();
            t.note(format!(
                "{g}: V={v}; binary expansion gives V={}, a non-witness; best decomposition {witness}",
                s.binary.map_or("-".into(), |x| x.to_string())
            ));
        }
    }
    t.note(format!(
        "{supporting} supporting, {vacuous} vacuous (a is a power of two)"
    ));
    let splits = if ctx.budget.decomposition_full {
        "all bit partitions"
    } else {
        "binary expansion"
    };
    Ok(format!(
        "3-pile P positions a < b < c <= {max} and [31,42,53]; {splits}"
    ))
}

fn minimizer_shape(ctx: &Ctx, t: &mut Tally) -> Result<String> {
    let n_max = ctx.budget.minimizer_total;
    for total in (2..=n_max).step_by(2) {
        let found = exhaustive_min_winner(ctx.solver, total, usize::MAX, None)?;
        t.count(1);
        let big = found
            .iter()
            .any(|r| 4 * r.game().largest().unwrap_or(0) as u64 >= total);
        let fewest = found.iter().map(|r| r.game().len()).min().unwrap_or(0);
        let listed: Vec<String> = found
            .iter()
            .map(|r| {
                format!(
                    "{} (p={}, max={})",
                    r.game(),
                    r.game().len(),
                    r.game().largest().unwrap_or(0)
                )
            })
            .collect();
        let nw = found.first().map_or(0, |r| r.n_winner());
        t.note(format!(
            "N={total}: N_W={nw}, fewest piles {fewest} vs log2 N = {}; {}",
            floor_log2(total),
            listed.join(", ")
        ));
        if !big {
            t.discrepancy(format!("N={total}: no minimizer has a pile >= N/4"));
        }
    }
    t.note(
        "read as least N_W; under the largest-N_W reading [N/2,N/2] attains N/2 and meets both shapes for every even N",
    );
    Ok(format!("even 2 <= N <= {n_max}, every pile count"))
}
