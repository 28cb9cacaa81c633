//! Brute-force nim-values by plain recursion over labelled positions.
//!
//! Used as ground truth for the engine. Nothing here canonicalises,
//! decomposes or reduces; the memo key is the exact set of remaining faces.

use std::collections::HashMap;

use crate::complex::{Face, SimplicialComplex};
use crate::{Error, Result};

/// Default cap on distinct positions visited.
pub const DEFAULT_ORACLE_STATES: usize = 2_000_000;

/// Largest face family the oracle accepts.
pub const MAX_ORACLE_FACES: usize = 128;

/// Nim-value of `c`, or a refusal when the state budget would be exceeded.
pub fn oracle_grundy(c: &SimplicialComplex, state_budget: usize) -> Result<u32> {
    poset_grundy(c.faces(), state_budget)
}

/// Nim-value of the game on an arbitrary family of vertex sets, where a move
/// picks a remaining set and deletes it with every remaining superset.
///
/// The family need not be downward closed.
pub fn poset_grundy(family: &[Face], state_budget: usize) -> Result<u32> {
    if family.len() > MAX_ORACLE_FACES {
        return Err(Error::Budget(format!(
            "oracle handles at most {MAX_ORACLE_FACES} faces, got {}",
            family.len()
        )));
    }
    let up: Vec<u128> = family
        .iter()
        .map(|&f| {
            family
                .iter()
                .enumerate()
                .filter(|(_, &g)| f.is_subset_of(g))
                .fold(0u128, |m, (j, _)| m | (1u128 << j))
        })
        .collect();
    let full = if family.len() == 128 { u128::MAX } else { (1u128 << family.len()) - 1 };
    let mut solver = Solver { up, memo: HashMap::new(), budget: state_budget };
    solver.value(full)
}

struct Solver {
    up: Vec<u128>,
    memo: HashMap<u128, u32>,
    budget: usize,
}

impl Solver {
    fn value(&mut self, pos: u128) -> Result<u32> {
        if pos == 0 {
            return Ok(0);
        }
        if let Some(&v) = self.memo.get(&pos) {
            return Ok(v);
        }
        if self.memo.len() >= self.budget {
            return Err(Error::Budget(format!("oracle state budget {} exhausted", self.budget)));
        }
        let mut seen = Vec::new();
        let mut rest = pos;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            seen.push(self.value(pos & !self.up[i])?);
        }
        let v = smallest_missing(&mut seen);
        self.memo.insert(pos, v);
        Ok(v)
    }
}

fn smallest_missing(values: &mut [u32]) -> u32 {
    values.sort_unstable();
    let mut m = 0;
    for &v in values.iter() {
        if v == m {
            m += 1;
        } else if v > m {
            break;
        }
    }
    m
}
