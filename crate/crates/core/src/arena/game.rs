//! Game runner and transcripts.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::{PointId, Range};
use crate::online::{checked_feed, OnlineAlgorithm};

/// A source of queries. Adaptive sources see the hitting set after every
/// event; returning `None` ends the game.
pub trait Adversary {
    type Query;

    fn next_query(&mut self, hitting: &BTreeSet<PointId>) -> Option<Self::Query>;
}

/// A predetermined sequence.
#[derive(Debug, Clone)]
pub struct FixedSequence<Q> {
    queries: Vec<Q>,
    pos: usize,
}

impl<Q> FixedSequence<Q> {
    pub fn new(queries: Vec<Q>) -> Self {
        FixedSequence { queries, pos: 0 }
    }
}

impl<Q: Clone> Adversary for FixedSequence<Q> {
    type Query = Q;

    fn next_query(&mut self, _hitting: &BTreeSet<PointId>) -> Option<Q> {
        let q = self.queries.get(self.pos).cloned();
        self.pos += 1;
        q
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event<Q> {
    pub query: Q,
    pub range: Vec<PointId>,
    /// Already stabbed on arrival; empty ranges count as stabbed.
    pub was_stabbed: bool,
    pub points_added: Vec<PointId>,
    pub running_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript<Q> {
    pub alg: String,
    pub events: Vec<Event<Q>>,
    pub hitting_set: Vec<PointId>,
}

impl<Q> Transcript<Q> {
    pub fn alg_size(&self) -> usize {
        self.hitting_set.len()
    }

    /// Distinct nonempty ranges presented, in first-arrival order.
    pub fn presented_ranges(&self) -> Vec<Range> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for e in &self.events {
            if let Ok(r) = Range::new(e.range.clone()) {
                if seen.insert(r.clone()) {
                    out.push(r);
                }
            }
        }
        out
    }

    /// Events whose range was unstabbed on arrival.
    pub fn unstabbed_events(&self) -> impl Iterator<Item = &Event<Q>> {
        self.events.iter().filter(|e| !e.was_stabbed)
    }

    pub fn check(&self) -> Result<()> {
        let mut total = 0;
        for (i, e) in self.events.iter().enumerate() {
            if e.points_added.is_empty() != e.was_stabbed {
                return Err(Error::Invariant(format!(
                    "event {i}: was_stabbed = {} but added {:?}",
                    e.was_stabbed, e.points_added
                )));
            }
            total += e.points_added.len();
            if e.running_size != total {
                return Err(Error::Invariant(format!(
                    "event {i}: running size {} but {total} points added so far",
                    e.running_size
                )));
            }
        }
        if total != self.hitting_set.len() {
            return Err(Error::Invariant(format!(
                "{total} points added but the final hitting set has {}",
                self.hitting_set.len()
            )));
        }
        Ok(())
    }
}

/// Resets `alg` and plays it against `source` until the source stops.
pub fn run_game<A, S>(alg: &mut A, source: &mut S) -> Result<Transcript<A::Query>>
where
    A: OnlineAlgorithm,
    S: Adversary<Query = A::Query> + ?Sized,
{
    alg.reset();
    let mut events = Vec::new();
    while let Some(q) = source.next_query(alg.hitting_set()) {
        let range = alg.range_of(&q);
        let was_stabbed = range.is_empty() || range.iter().any(|x| alg.hitting_set().contains(x));
        let points_added = checked_feed(alg, &q)?;
        events.push(Event {
            query: q,
            range,
            was_stabbed,
            points_added,
            running_size: alg.hitting_set().len(),
        });
    }
    Ok(Transcript {
        alg: alg.name().to_string(),
        events,
        hitting_set: alg.hitting_set().iter().copied().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::online::ColoringAlgorithm;
    use crate::umcolor::rank_path;

    #[test]
    fn fixed_sequence_single_range() {
        let mut alg = ColoringAlgorithm::new(rank_path(4).unwrap().coloring);
        let mut src = FixedSequence::new(vec![Range::interval(0, 3)]);
        let t = run_game(&mut alg, &mut src).unwrap();
        assert_eq!(t.alg_size(), 1);
        assert_eq!(t.events.len(), 1);
        t.check().unwrap();
    }

    #[test]
    fn replay_is_identical() {
        let seq = vec![Range::interval(0, 7), Range::interval(4, 7), Range::interval(0, 2), Range::interval(2, 5)];
        let mut alg = ColoringAlgorithm::new(rank_path(8).unwrap().coloring);
        let a = run_game(&mut alg, &mut FixedSequence::new(seq.clone())).unwrap();
        let b = run_game(&mut alg, &mut FixedSequence::new(seq)).unwrap();
        assert_eq!(a, b);
    }
}
