use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;
use rustc_hash::FxBuildHasher;

use crate::error::{Error, Result};
use crate::game::{Game, Ply};

/// Whose turn it is at a stored position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// The player doomed to lose; moves from P positions, any ply is legal.
    Loser,
    /// The player who wins; moves from N positions, winning plies only.
    Winner,
}

/// Exact value of a position with the chosen turn (loser ply, winner reply).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MemoEntry {
    pub value: i64,
    pub loser: Ply,
    pub winner: Ply,
}

/// Concurrent memo keyed by `(canonical game, side to move)`.
///
/// Reads and writes go through sharded locks so that root plies can be
/// searched on several threads against one table.
pub struct TranspositionTable {
    loser: DashMap<Game, MemoEntry, FxBuildHasher>,
    winner: DashMap<Game, MemoEntry, FxBuildHasher>,
    cap: usize,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl TranspositionTable {
    pub fn new(cap: usize) -> Self {
        TranspositionTable {
            loser: DashMap::with_hasher(FxBuildHasher),
            winner: DashMap::with_hasher(FxBuildHasher),
            cap,
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    fn side(&self, side: Side) -> &DashMap<Game, MemoEntry, FxBuildHasher> {
        match side {
            Side::Loser => &self.loser,
            Side::Winner => &self.winner,
        }
    }

    pub fn get(&self, game: &Game, side: Side) -> Option<MemoEntry> {
        let found = self.side(side).get(game).map(|e| *e);
        let counter = if found.is_some() { &self.hits } else { &self.misses };
        counter.fetch_add(1, Ordering::Relaxed);
        found
    }

    pub fn insert(&self, game: Game, side: Side, entry: MemoEntry) -> Result<()> {
        if self.len() >= self.cap {
            return Err(Error::Budget(format!("memo table reached {} entries", self.cap)));
        }
        self.side(side).insert(game, entry);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.loser.len() + self.winner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn hits(&self) -> u64 {
        self.hits.load(Ordering::Relaxed)
    }

    pub fn misses(&self) -> u64 {
        self.misses.load(Ordering::Relaxed)
    }

    pub fn clear(&self) {
        self.loser.clear();
        self.winner.clear();
        self.hits.store(0, Ordering::Relaxed);
        self.misses.store(0, Ordering::Relaxed);
    }

    /// Snapshot of all entries in key order.
    pub fn entries(&self) -> Vec<(Game, Side, MemoEntry)> {
        let mut out: Vec<_> = [Side::Loser, Side::Winner]
            .into_iter()
            .flat_map(|side| {
                self.side(side)
                    .iter()
                    .map(move |kv| (kv.key().clone(), side, *kv.value()))
                    .collect::<Vec<_>>()
            })
            .collect();
        out.sort_by(|a, b| (&a.0, a.1).cmp(&(&b.0, b.1)));
        out
    }
}
