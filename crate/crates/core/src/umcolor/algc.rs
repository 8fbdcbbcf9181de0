use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::hypercore::{Coloring, HittingSet, PointId, Range};

/// The coloring-driven online hitting-set algorithm: an unstabbed range is
/// stabbed by its point of maximum color.
#[derive(Debug, Clone)]
pub struct AlgC {
    coloring: Coloring,
    hitting: BTreeSet<PointId>,
    per_color: BTreeMap<u32, usize>,
    /// Ranges first stabbed by each color, in arrival order.
    first_stabbed: BTreeMap<u32, Vec<Range>>,
}

impl AlgC {
    pub fn new(coloring: Coloring) -> Self {
        AlgC {
            coloring,
            hitting: BTreeSet::new(),
            per_color: BTreeMap::new(),
            first_stabbed: BTreeMap::new(),
        }
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn hitting_set(&self) -> &BTreeSet<PointId> {
        &self.hitting
    }

    pub fn to_hitting_set(&self) -> HittingSet {
        HittingSet::new(self.hitting.iter().copied())
    }

    /// Number of ranges whose stabbing point carries each color.
    pub fn per_color_counts(&self) -> &BTreeMap<u32, usize> {
        &self.per_color
    }

    pub fn first_stabbed(&self) -> &BTreeMap<u32, Vec<Range>> {
        &self.first_stabbed
    }

    pub fn reset(&mut self) {
        self.hitting.clear();
        self.per_color.clear();
        self.first_stabbed.clear();
    }

    /// The unique point of `r` with maximum color; a tie is an error since it
    /// means the coloring is not unique-max for the ranges being fed.
    pub fn argmax(&self, r: &Range) -> Result<PointId> {
        let members = r.members();
        if let Some(&bad) = members.iter().find(|&&x| x >= self.coloring.len()) {
            return Err(Error::PointOutOfRange {
                point: bad,
                n: self.coloring.len(),
            });
        }
        let mut best = members[0];
        let mut tie = None;
        for &x in &members[1..] {
            let (cx, cb) = (self.coloring.color(x), self.coloring.color(best));
            if cx > cb {
                best = x;
                tie = None;
            } else if cx == cb {
                tie = Some(x);
            }
        }
        match tie {
            Some(second) => Err(Error::ArgmaxTie {
                range: members.to_vec(),
                color: self.coloring.color(best),
                first: best,
                second,
            }),
            None => Ok(best),
        }
    }

    /// One online step. Returns the point added, or `None` if `r` was
    /// already stabbed.
    pub fn step(&mut self, r: &Range) -> Result<Option<PointId>> {
        if r.is_stabbed_by(&self.hitting) {
            return Ok(None);
        }
        let x = self.argmax(r)?;
        let color = self.coloring.color(x);
        self.hitting.insert(x);
        *self.per_color.entry(color).or_default() += 1;
        self.first_stabbed.entry(color).or_default().push(r.clone());
        Ok(Some(x))
    }

    /// Ranges first stabbed by the same color must be pairwise disjoint when
    /// the coloring is unique-max on an I-type family.
    pub fn check_color_classes_disjoint(&self) -> Result<()> {
        for (color, ranges) in &self.first_stabbed {
            for (i, a) in ranges.iter().enumerate() {
                for b in &ranges[i + 1..] {
                    if a.intersects(b) {
                        return Err(Error::Invariant(format!(
                            "ranges {:?} and {:?} were both first stabbed by color {color} but intersect",
                            a.members(),
                            b.members()
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_examples() {
        let mut alg = AlgC::new(Coloring::new(vec![1, 2, 1, 3]));
        assert_eq!(alg.step(&Range::interval(0, 3)).unwrap(), Some(3));
        assert_eq!(alg.step(&Range::interval(2, 3)).unwrap(), None);
        assert_eq!(alg.step(&Range::interval(0, 1)).unwrap(), Some(1));
        assert_eq!(alg.hitting_set().len(), alg.per_color_counts().values().sum::<usize>());
        assert_eq!(alg.per_color_counts()[&3], 1);
        assert_eq!(alg.per_color_counts()[&2], 1);
        alg.check_color_classes_disjoint().unwrap();
    }

    #[test]
    fn tie_is_an_error() {
        let mut alg = AlgC::new(Coloring::new(vec![2, 1, 2]));
        match alg.step(&Range::interval(0, 2)) {
            Err(Error::ArgmaxTie { color: 2, first: 0, second: 2, .. }) => {}
            other => panic!("expected tie, got {other:?}"),
        }
        assert!(alg.hitting_set().is_empty());
    }
}
