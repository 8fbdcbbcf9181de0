//! The online hitting-set game solved exactly on tiny hypergraphs.
//!
//! State: chosen points `C` and presented ranges `P`, both as bitmasks. The
//! adversary either stops, collecting `|C| / |OPT(P)|`, or presents an
//! unstabbed range, which the algorithm answers with one of its points.
//! Every prefix is itself a sequence, so a node's value is at least its own
//! stopping payoff.

use std::collections::HashMap;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::hypercore::Hypergraph;

pub const RHO_MAX_POINTS: usize = 6;
pub const RHO_MAX_RANGES: usize = 64;

struct Solver {
    masks: Vec<u64>,
    /// Point subsets ordered by size.
    subsets: Vec<u64>,
    memo: HashMap<(u64, u64), Ratio<u64>>,
    opt: HashMap<u64, u64>,
}

impl Solver {
    fn opt(&mut self, presented: u64) -> u64 {
        if let Some(&v) = self.opt.get(&presented) {
            return v;
        }
        let ranges: Vec<u64> = (0..self.masks.len())
            .filter(|i| presented >> i & 1 == 1)
            .map(|i| self.masks[i])
            .collect();
        let best = self
            .subsets
            .iter()
            .find(|&&s| ranges.iter().all(|&r| r & s != 0))
            .map(|s| s.count_ones() as u64)
            .expect("the full point set hits every range");
        self.opt.insert(presented, best);
        best
    }

    fn value(&mut self, chosen: u64, presented: u64) -> Ratio<u64> {
        if let Some(&v) = self.memo.get(&(chosen, presented)) {
            return v;
        }
        let mut best = if presented == 0 {
            Ratio::from_integer(1)
        } else {
            Ratio::new(chosen.count_ones() as u64, self.opt(presented))
        };
        for i in 0..self.masks.len() {
            let r = self.masks[i];
            if r & chosen != 0 {
                continue;
            }
            let mut answer: Option<Ratio<u64>> = None;
            let mut bits = r;
            while bits != 0 {
                let x = bits.trailing_zeros();
                bits &= bits - 1;
                let v = self.value(chosen | 1 << x, presented | 1 << i);
                answer = Some(answer.map_or(v, |a| a.min(v)));
                if v <= best {
                    break;
                }
            }
            if let Some(a) = answer {
                best = best.max(a);
            }
        }
        self.memo.insert((chosen, presented), best);
        best
    }
}

/// `ρ(H)`: the best competitive ratio any deterministic online algorithm
/// achieves on `h`. An empty sequence counts as ratio 1.
pub fn exact_rho(h: &Hypergraph) -> Result<Ratio<u64>> {
    if h.n() > RHO_MAX_POINTS || h.ranges().len() > RHO_MAX_RANGES {
        return Err(Error::SizeGuard(format!(
            "exact_rho supports n <= {RHO_MAX_POINTS} and at most {RHO_MAX_RANGES} ranges, got n = {} with {}",
            h.n(),
            h.ranges().len()
        )));
    }
    let masks = h
        .ranges()
        .iter()
        .map(|r| r.members().iter().fold(0u64, |m, &x| m | 1 << x))
        .collect();
    let mut subsets: Vec<u64> = (0..1u64 << h.n()).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    let mut solver = Solver {
        masks,
        subsets,
        memo: HashMap::new(),
        opt: HashMap::new(),
    };
    Ok(solver.value(0, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::Range;

    #[test]
    fn examples() {
        let single = Hypergraph::new(1, vec![Range::singleton(0)]).unwrap();
        assert_eq!(exact_rho(&single).unwrap(), Ratio::from_integer(1));
        assert_eq!(exact_rho(&Hypergraph::intervals(2)).unwrap(), Ratio::from_integer(2));
        assert_eq!(exact_rho(&Hypergraph::intervals(4)).unwrap(), Ratio::from_integer(3));
        assert_eq!(exact_rho(&Hypergraph::new(3, vec![]).unwrap()).unwrap(), Ratio::from_integer(1));
        assert!(exact_rho(&Hypergraph::intervals(7)).is_err());
    }
}
