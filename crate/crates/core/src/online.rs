//! The online protocol shared by every algorithm in the crate.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::hypercore::{Coloring, PointId, Range};
use crate::umcolor::AlgC;

/// A deterministic online hitting-set algorithm.
///
/// `feed` receives the next request and returns the points it added (empty
/// when the request was already stabbed). The chain of hitting sets only
/// grows; `reset` returns to the empty state so the same instance can be
/// replayed.
pub trait OnlineAlgorithm {
    type Query;

    fn name(&self) -> &str;

    fn reset(&mut self);

    /// The points of the ground set selected by `q`.
    fn range_of(&self, q: &Self::Query) -> Vec<PointId>;

    fn feed(&mut self, q: &Self::Query) -> Result<Vec<PointId>>;

    fn hitting_set(&self) -> &BTreeSet<PointId>;
}

/// Alg_c over explicit ranges.
#[derive(Debug, Clone)]
pub struct ColoringAlgorithm {
    inner: AlgC,
    name: String,
}

impl ColoringAlgorithm {
    pub fn new(coloring: Coloring) -> Self {
        ColoringAlgorithm {
            inner: AlgC::new(coloring),
            name: "algc".to_string(),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn state(&self) -> &AlgC {
        &self.inner
    }
}

impl OnlineAlgorithm for ColoringAlgorithm {
    type Query = Range;

    fn name(&self) -> &str {
        &self.name
    }

    fn reset(&mut self) {
        self.inner.reset();
    }

    fn range_of(&self, q: &Range) -> Vec<PointId> {
        q.members().to_vec()
    }

    fn feed(&mut self, q: &Range) -> Result<Vec<PointId>> {
        Ok(self.inner.step(q)?.into_iter().collect())
    }

    fn hitting_set(&self) -> &BTreeSet<PointId> {
        self.inner.hitting_set()
    }
}

/// Baseline that stabs an unstabbed range with its smallest point.
#[derive(Debug, Clone, Default)]
pub struct LowestPoint {
    hitting: BTreeSet<PointId>,
}

impl LowestPoint {
    pub fn new() -> Self {
        Self::default()
    }
}

impl OnlineAlgorithm for LowestPoint {
    type Query = Range;

    fn name(&self) -> &str {
        "lowest"
    }

    fn reset(&mut self) {
        self.hitting.clear();
    }

    fn range_of(&self, q: &Range) -> Vec<PointId> {
        q.members().to_vec()
    }

    fn feed(&mut self, q: &Range) -> Result<Vec<PointId>> {
        if q.is_stabbed_by(&self.hitting) {
            return Ok(Vec::new());
        }
        self.hitting.insert(q.min());
        Ok(vec![q.min()])
    }

    fn hitting_set(&self) -> &BTreeSet<PointId> {
        &self.hitting
    }
}

/// Wraps an algorithm and checks the protocol on every step: added points
/// are new, belong to the range, and appear exactly when the range was
/// unstabbed.
pub fn checked_feed<A: OnlineAlgorithm>(alg: &mut A, q: &A::Query) -> Result<Vec<PointId>> {
    let range = alg.range_of(q);
    let stabbed = range.iter().any(|x| alg.hitting_set().contains(x));
    let before = alg.hitting_set().len();
    let added = alg.feed(q)?;
    if stabbed && !added.is_empty() {
        return Err(Error::Algorithm(format!(
            "{} added {added:?} to an already stabbed range",
            alg.name()
        )));
    }
    if !stabbed && !range.is_empty() && added.is_empty() {
        return Err(Error::Algorithm(format!(
            "{} left range {range:?} unstabbed",
            alg.name()
        )));
    }
    if alg.hitting_set().len() != before + added.len() {
        return Err(Error::Algorithm(format!(
            "{} reported {added:?} but the hitting set grew by {}",
            alg.name(),
            alg.hitting_set().len() - before
        )));
    }
    Ok(added)
}
