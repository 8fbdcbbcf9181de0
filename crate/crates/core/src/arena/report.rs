//! Competitive-ratio reports.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::game::Transcript;
use super::opt::opt_hitting_set;
use crate::error::{Error, Result};

pub fn floor_log2(n: usize) -> usize {
    assert!(n > 0, "floor_log2(0)");
    (usize::BITS - 1 - n.leading_zeros()) as usize
}

/// Named ratio bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bound {
    /// `⌊log₂ n⌋ + 1`, tight for intervals.
    Interval,
    /// `2(⌊log₂ n⌋ + 1)`, one ruler per envelope.
    Halfplane,
    /// `T · 4 · ⌊log₂(2n)⌋` with `T` the most tiles any disc was stabbed in.
    Disc,
}

impl Bound {
    pub fn name(self) -> &'static str {
        match self {
            Bound::Interval => "interval",
            Bound::Halfplane => "halfplane",
            Bound::Disc => "disc",
        }
    }

    pub fn value(self, n: usize, tile_constant: usize) -> usize {
        let n = n.max(1);
        match self {
            Bound::Interval => floor_log2(n) + 1,
            Bound::Halfplane => 2 * (floor_log2(n) + 1),
            Bound::Disc => tile_constant.max(1) * 4 * floor_log2(2 * n),
        }
    }
}

impl FromStr for Bound {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "interval" => Ok(Bound::Interval),
            "halfplane" => Ok(Bound::Halfplane),
            "disc" => Ok(Bound::Disc),
            _ => Err(Error::InvalidInput(format!(
                "unknown bound {s:?}; expected interval, halfplane or disc"
            ))),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: Bound,
    pub bound: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioReport {
    pub instance: String,
    pub n: usize,
    pub alg: String,
    pub alg_size: usize,
    pub opt_size: usize,
    /// `alg_size / opt_size` in lowest terms; `"1"` for an empty transcript.
    pub ratio: String,
    pub bound_checked: Option<BoundCheck>,
}

impl RatioReport {
    pub fn ratio_value(&self) -> Ratio<usize> {
        if self.opt_size == 0 {
            Ratio::from_integer(1)
        } else {
            Ratio::new(self.alg_size, self.opt_size)
        }
    }

    pub fn passed(&self) -> bool {
        self.bound_checked.as_ref().is_none_or(|b| b.pass)
    }

    pub const CSV_HEADER: &'static str = "instance,n,alg,alg_size,opt_size,ratio,bound,pass";

    pub fn csv_row(&self) -> String {
        let (bound, pass) = match &self.bound_checked {
            Some(b) => (format!("{}={}", b.name, b.bound), b.pass.to_string()),
            None => (String::new(), String::new()),
        };
        format!(
            "{},{},{},{},{},{},{},{}",
            self.instance, self.n, self.alg, self.alg_size, self.opt_size, self.ratio, bound, pass
        )
    }
}

/// Compares the transcript against the optimum of its presented ranges.
pub fn ratio_report<Q>(
    instance: &str,
    t: &Transcript<Q>,
    n: usize,
    bound: Option<(Bound, usize)>,
) -> Result<RatioReport> {
    let opt = opt_hitting_set(&t.presented_ranges(), n)?;
    let ratio = if opt.is_empty() {
        Ratio::from_integer(1)
    } else {
        Ratio::new(t.alg_size(), opt.len())
    };
    let bound_checked = bound.map(|(name, tile_constant)| {
        let value = name.value(n, tile_constant);
        BoundCheck {
            name,
            bound: value,
            pass: ratio <= Ratio::from_integer(value),
        }
    });
    Ok(RatioReport {
        instance: instance.to_string(),
        n,
        alg: t.alg.clone(),
        alg_size: t.alg_size(),
        opt_size: opt.len(),
        ratio: ratio.to_string(),
        bound_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::adversary::NestedIntervals;
    use crate::arena::game::{run_game, FixedSequence};
    use crate::hypercore::Range;
    use crate::online::ColoringAlgorithm;
    use crate::umcolor::rank_path;

    #[test]
    fn nested_run_report() {
        let mut alg = ColoringAlgorithm::new(rank_path(8).unwrap().coloring);
        let t = run_game(&mut alg, &mut NestedIntervals::new(8)).unwrap();
        let rep = ratio_report("nested-8", &t, 8, Some((Bound::Interval, 1))).unwrap();
        assert_eq!(rep.ratio, "4");
        assert_eq!(rep.opt_size, 1);
        assert!(rep.passed());
        assert_eq!(rep.csv_row(), "nested-8,8,algc,4,1,4,interval=4,true");
    }

    #[test]
    fn single_and_empty() {
        let mut alg = ColoringAlgorithm::new(rank_path(4).unwrap().coloring);
        let t = run_game(&mut alg, &mut FixedSequence::new(vec![Range::interval(1, 2)])).unwrap();
        assert_eq!(ratio_report("one", &t, 4, None).unwrap().ratio, "1");
        let t = run_game(&mut alg, &mut FixedSequence::<Range>::new(vec![])).unwrap();
        let rep = ratio_report("empty", &t, 4, None).unwrap();
        assert_eq!((rep.opt_size, rep.ratio.as_str()), (0, "1"));
    }

    #[test]
    fn bounds() {
        assert_eq!(Bound::Interval.value(8, 0), 4);
        assert_eq!(Bound::Halfplane.value(40, 0), 12);
        assert_eq!(Bound::Disc.value(50, 3), 3 * 4 * 6);
        assert!("nope".parse::<Bound>().is_err());
    }
}
