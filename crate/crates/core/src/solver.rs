//! Exact defender-win computation by greatest-fixed-point elimination, and an
//! independent naive fixed-point oracle used to cross-check it.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domination::{
    count_configs, enumerate_configs, satisfies, static_number_with_limit, GuardConfig, Kind,
    Variant,
};
use crate::error::{Error, Result};
use crate::game::{legal_attacks, reachable_configs, transition_feasible, TransitionCache};
use crate::graph::Graph;

/// Default limit on the number of candidate configurations per budget.
pub const DEFAULT_BUDGET: u128 = 2_000_000;
/// The oracle visits all ordered configuration pairs, so it stays tiny.
pub const ORACLE_CAP: u128 = 4_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Plain variant only: allow several guards on one vertex.
    pub stacking: bool,
    /// Maximum candidate-configuration count before refusing an instance.
    pub budget: u128,
    /// Fan elimination rounds out over a thread pool.
    pub parallel: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            stacking: true,
            budget: DEFAULT_BUDGET,
            parallel: true,
        }
    }
}

impl SolverOptions {
    /// Per-vertex count cap for budget `k`.
    pub fn cap(&self, kind: Kind, k: u32) -> u8 {
        match kind.cap() {
            Some(c) => c,
            None if self.stacking => k.clamp(1, u8::MAX as u32) as u8,
            None => 1,
        }
    }
}

/// The surviving configurations for `(graph, variant, k)`: non-empty exactly
/// when the defender wins with budget `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SafeFamily {
    pub variant: Variant,
    pub k: u32,
    /// Members in descending lexicographic order of their count vectors.
    pub configs: Vec<GuardConfig>,
    pub defender_win: bool,
    /// Number of valid starting configurations before elimination.
    pub universe: usize,
    /// Elimination rounds until stability.
    pub rounds: usize,
}

impl SafeFamily {
    /// Re-checks closure with the matching-based transition test: every
    /// member answers every attack with a move into the family. Returns the
    /// first `(member index, attacked vertex)` that fails.
    pub fn closure_violation(&self, g: &Graph) -> Option<(usize, usize)> {
        for (i, c) in self.configs.iter().enumerate() {
            for a in legal_attacks(c) {
                let ok = self
                    .configs
                    .iter()
                    .any(|c2| transition_feasible(g, c, c2, a).unwrap_or(false));
                if !ok {
                    return Some((i, a));
                }
            }
        }
        None
    }

    pub fn contains(&self, c: &GuardConfig) -> bool {
        self.configs.binary_search_by(|x| c.cmp(x)).is_ok()
    }
}

fn check_budget(n: usize, k: u32, cap: u8, budget: u128) -> Result<u128> {
    let estimate = count_configs(n, k, cap);
    if estimate > budget {
        Err(Error::Budget { estimate, budget })
    } else {
        Ok(estimate)
    }
}

/// Greatest fixed point of "valid and every attack has a feasible answer
/// inside the family", starting from all valid configurations of weight `k`.
///
/// Rounds are synchronous: round `i` removes configurations against the
/// family left by round `i - 1`, so parallel and serial runs agree exactly.
pub fn safe_family(g: &Graph, v: Variant, k: u32, opts: &SolverOptions) -> Result<SafeFamily> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if k == 0 {
        return Err(Error::MalformedConfig(
            "guard budget must be at least 1".into(),
        ));
    }
    let cap = opts.cap(v.kind, k);
    check_budget(g.n(), k, cap, opts.budget)?;

    let universe: Vec<Vec<u8>> = enumerate_configs(g.n(), k, cap)
        .into_iter()
        .filter(|c| satisfies(g, c, v))
        .collect();
    let index: HashMap<&[u8], u32> = universe
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_slice(), i as u32))
        .collect();

    let successors_of = |c: &Vec<u8>| -> Vec<u32> {
        let mut s: Vec<u32> = reachable_configs(g, c, cap)
            .iter()
            .filter_map(|r| index.get(r.as_slice()).copied())
            .collect();
        s.sort_unstable();
        s
    };
    let successors: Vec<Vec<u32>> = if opts.parallel {
        universe.par_iter().map(successors_of).collect()
    } else {
        universe.iter().map(successors_of).collect()
    };

    let mut alive = vec![true; universe.len()];
    let mut rounds = 0;
    loop {
        rounds += 1;
        let survives = |i: usize| -> bool {
            if !alive[i] {
                return false;
            }
            let c = &universe[i];
            (0..c.len()).filter(|&a| c[a] == 0).all(|a| {
                successors[i]
                    .iter()
                    .any(|&j| alive[j as usize] && universe[j as usize][a] > 0)
            })
        };
        let next: Vec<bool> = if opts.parallel {
            (0..universe.len()).into_par_iter().map(survives).collect()
        } else {
            (0..universe.len()).map(survives).collect()
        };
        if next == alive {
            break;
        }
        alive = next;
    }

    let configs: Vec<GuardConfig> = universe
        .iter()
        .zip(&alive)
        .filter(|(_, &a)| a)
        .map(|(c, _)| GuardConfig::from_counts(c.clone()))
        .collect();
    Ok(SafeFamily {
        variant: v,
        k,
        defender_win: !configs.is_empty(),
        configs,
        universe: universe.len(),
        rounds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EternalResult {
    pub variant: Variant,
    /// Minimum winning budget, `None` when nothing up to `k_max` wins.
    pub value: Option<u32>,
    pub k_max: u32,
    /// Static lower bound the scan started from.
    pub lower_bound: u32,
    /// Verdict for every budget that was evaluated.
    pub verdicts: Vec<(u32, bool)>,
    /// Connected variants: losing budgets above the minimum winning one.
    pub non_monotone: Vec<u32>,
    pub witness: Option<SafeFamily>,
}

/// The eternal number of `g` under `v`, searched up to `k_max`.
///
/// Non-connected variants scan upward from the static number and stop at the
/// first win (a parked extra guard keeps any winning strategy winning).
/// Connected variants evaluate every budget in range, since that argument
/// can break support connectivity.
pub fn eternal_number(
    g: &Graph,
    v: Variant,
    k_max: u32,
    opts: &SolverOptions,
) -> Result<EternalResult> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let lower_bound = static_number_with_limit(g, v, Some(usize::MAX))?.weight;
    let mut verdicts = Vec::new();
    let mut value = None;
    let mut witness = None;
    for k in lower_bound..=k_max {
        let fam = safe_family(g, v, k, opts)?;
        verdicts.push((k, fam.defender_win));
        if fam.defender_win && value.is_none() {
            value = Some(k);
            witness = Some(fam);
            if !v.connected {
                break;
            }
        }
    }
    let non_monotone = match value {
        Some(best) => verdicts
            .iter()
            .filter(|&&(k, win)| k > best && !win)
            .map(|&(k, _)| k)
            .collect(),
        None => Vec::new(),
    };
    Ok(EternalResult {
        variant: v,
        value,
        k_max,
        lower_bound,
        verdicts,
        non_monotone,
        witness,
    })
}

/// Defender-win decision by naive simultaneous iteration over the whole
/// weight-`k` universe (valid or not) with pairwise matching-based
/// transition checks. Shares no code with [`safe_family`] beyond the
/// validity predicate.
pub fn oracle_minimax(g: &Graph, v: Variant, k: u32, opts: &SolverOptions) -> Result<bool> {
    if k == 0 || g.n() == 0 {
        return Ok(false);
    }
    let cap = opts.cap(v.kind, k);
    let size = count_configs(g.n(), k, cap);
    if size > ORACLE_CAP {
        return Err(Error::Budget {
            estimate: size,
            budget: ORACLE_CAP,
        });
    }
    let universe = enumerate_configs(g.n(), k, cap);
    let valid: Vec<bool> = universe.iter().map(|c| satisfies(g, c, v)).collect();
    let mut cache = TransitionCache::new();
    // known-win set; known losses are everything that drops out
    let mut win = valid.clone();
    loop {
        let mut next = vec![false; universe.len()];
        for (i, c) in universe.iter().enumerate() {
            if !valid[i] {
                continue;
            }
            next[i] = (0..c.len()).filter(|&a| c[a] == 0).all(|a| {
                universe
                    .iter()
                    .enumerate()
                    .any(|(j, c2)| win[j] && c2[a] > 0 && cache.feasible(g, c, c2))
            });
        }
        if next == win {
            return Ok(win.iter().any(|&w| w));
        }
        win = next;
    }
}

/// Upper bounds from the floating-guard strategies: `|Z| + 1`, `2|Z| + 1`
/// and `t_f + 1` with `t_f` the minimum weight of an Italian function with
/// connected support.
pub fn strategy_upper_bound(g: &Graph, kind: Kind) -> Result<u32> {
    let z = crate::domination::min_connected_dominating_set(g)?.len() as u32;
    Ok(match kind {
        Kind::Domination => z + 1,
        Kind::Roman => 2 * z + 1,
        Kind::Italian => {
            static_number_with_limit(g, Variant::italian().connected(), Some(usize::MAX))?.weight
                + 1
        }
    })
}
