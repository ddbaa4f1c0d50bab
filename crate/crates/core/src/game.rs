//! Turn semantics: attacks, simultaneous guard moves, and feasibility of a
//! configuration-to-configuration transition.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::domination::{GuardConfig, Kind};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Vertices the attacker may target: exactly the unguarded ones.
pub fn legal_attacks(c: &GuardConfig) -> Vec<usize> {
    (0..c.n()).filter(|&v| c.count(v) == 0).collect()
}

/// One `(from, to)` pair per guard; `from == to` is a stay.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DefenseMove {
    pub moves: Vec<(usize, usize)>,
}

impl DefenseMove {
    pub fn new(mut moves: Vec<(usize, usize)>) -> Self {
        moves.sort_unstable();
        DefenseMove { moves }
    }

    /// Every guard of `c` stays put.
    pub fn stay(c: &GuardConfig) -> Self {
        let moves = (0..c.n())
            .flat_map(|v| std::iter::repeat_n((v, v), c.count(v) as usize))
            .collect();
        DefenseMove { moves }
    }

    /// Pairs with `from != to`.
    pub fn non_stay(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.moves.iter().copied().filter(|(a, b)| a != b)
    }
}

/// Executes `d` against `c` after an attack on `attacked`. Under Roman and
/// Italian rules a destination may not end with more than two guards.
pub fn apply_defense(
    g: &Graph,
    c: &GuardConfig,
    d: &DefenseMove,
    attacked: usize,
    kind: Kind,
) -> Result<GuardConfig> {
    apply_defense_capped(g, c, d, attacked, kind.cap())
}

pub(crate) fn apply_defense_capped(
    g: &Graph,
    c: &GuardConfig,
    d: &DefenseMove,
    attacked: usize,
    cap: Option<u8>,
) -> Result<GuardConfig> {
    let n = g.n();
    if attacked >= n {
        return Err(Error::VertexOutOfRange {
            vertex: attacked,
            n,
        });
    }
    if c.count(attacked) > 0 {
        return Err(Error::GuardedVertex(attacked));
    }
    let mut sources = vec![0u32; n];
    let mut after = vec![0u32; n];
    for &(from, to) in &d.moves {
        for x in [from, to] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if from != to && !g.has_edge(from, to) {
            return Err(Error::IllegalMove {
                from,
                to,
                reason: "not an edge",
            });
        }
        sources[from] += 1;
        if sources[from] > c.count(from) as u32 {
            return Err(Error::IllegalMove {
                from,
                to,
                reason: "no guard left at source",
            });
        }
        after[to] += 1;
    }
    if let Some(v) = (0..n).find(|&v| sources[v] != c.count(v) as u32) {
        return Err(Error::IllegalMove {
            from: v,
            to: v,
            reason: "guard at source has no move",
        });
    }
    if after[attacked] == 0 {
        return Err(Error::IllegalMove {
            from: attacked,
            to: attacked,
            reason: "no guard reaches the attacked vertex",
        });
    }
    if let Some(cap) = cap {
        if let Some(&(from, to)) = d.moves.iter().find(|&&(_, to)| after[to] > cap as u32) {
            return Err(Error::IllegalMove {
                from,
                to,
                reason: "destination exceeds per-vertex guard cap",
            });
        }
    }
    let counts = after
        .into_iter()
        .map(|x| u8::try_from(x).map_err(|_| Error::MalformedConfig("count overflow".into())))
        .collect::<Result<Vec<u8>>>()?;
    Ok(GuardConfig::from_counts(counts))
}

/// Whether the guards of `from` can be routed onto `to` in one simultaneous
/// move (each guard stays or crosses one edge). Perfect matching on the
/// bipartite graph of guard units, by augmenting paths.
pub fn movement_feasible(g: &Graph, from: &[u8], to: &[u8]) -> bool {
    let src: Vec<usize> = expand_units(from);
    let dst: Vec<usize> = expand_units(to);
    if src.len() != dst.len() {
        return false;
    }
    let mut owner: Vec<Option<usize>> = vec![None; dst.len()];
    for s in 0..src.len() {
        let mut seen = vec![false; dst.len()];
        if !augment(g, &src, &dst, s, &mut seen, &mut owner) {
            return false;
        }
    }
    true
}

fn expand_units(counts: &[u8]) -> Vec<usize> {
    counts
        .iter()
        .enumerate()
        .flat_map(|(v, &c)| std::iter::repeat_n(v, c as usize))
        .collect()
}

#[inline]
fn reachable(g: &Graph, u: usize, w: usize) -> bool {
    u == w || g.has_edge(u, w)
}

fn augment(
    g: &Graph,
    src: &[usize],
    dst: &[usize],
    s: usize,
    seen: &mut [bool],
    owner: &mut [Option<usize>],
) -> bool {
    for t in 0..dst.len() {
        if seen[t] || !reachable(g, src[s], dst[t]) {
            continue;
        }
        seen[t] = true;
        let free = match owner[t] {
            None => true,
            Some(prev) => augment(g, src, dst, prev, seen, owner),
        };
        if free {
            owner[t] = Some(s);
            return true;
        }
    }
    false
}

/// Whether the defender can answer an attack on `attacked` in `c` by moving
/// to `c2`: `c2` guards the attacked vertex and the guards can be routed.
pub fn transition_feasible(
    g: &Graph,
    c: &GuardConfig,
    c2: &GuardConfig,
    attacked: usize,
) -> Result<bool> {
    if c.total() != c2.total() {
        return Err(Error::TotalMismatch(c.total(), c2.total()));
    }
    if attacked >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: attacked,
            n: g.n(),
        });
    }
    if c.count(attacked) > 0 {
        return Err(Error::GuardedVertex(attacked));
    }
    Ok(c2.count(attacked) >= 1 && movement_feasible(g, c.counts(), c2.counts()))
}

/// Memoized [`movement_feasible`] keyed on the `(from, to)` pair.
#[derive(Debug, Default)]
pub struct TransitionCache {
    memo: HashMap<(Vec<u8>, Vec<u8>), bool>,
}

impl TransitionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn feasible(&mut self, g: &Graph, from: &[u8], to: &[u8]) -> bool {
        if let Some(&hit) = self.memo.get(&(from.to_vec(), to.to_vec())) {
            return hit;
        }
        let r = movement_feasible(g, from, to);
        self.memo.insert((from.to_vec(), to.to_vec()), r);
        r
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }
}

/// Every count vector reachable from `counts` in one simultaneous move with
/// all per-vertex counts `<= cap`. Includes `counts` itself.
pub fn reachable_configs(g: &Graph, counts: &[u8], cap: u8) -> Vec<Vec<u8>> {
    let n = g.n();
    let mut layer: HashSet<Vec<u8>> = HashSet::from([vec![0u8; n]]);
    for u in 0..n {
        let k = counts[u];
        if k == 0 {
            continue;
        }
        let targets = g.closed_neighborhood(u);
        let mut next = HashSet::with_capacity(layer.len() * targets.len());
        let mut split = vec![0u8; targets.len()];
        for partial in &layer {
            distribute(&targets, k, 0, &mut split, &mut |parts| {
                let mut out = partial.clone();
                for (&t, &p) in targets.iter().zip(parts) {
                    out[t] += p;
                    if out[t] > cap {
                        return;
                    }
                }
                next.insert(out);
            });
        }
        layer = next;
    }
    let mut out: Vec<Vec<u8>> = layer.into_iter().collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn distribute<F: FnMut(&[u8])>(targets: &[usize], left: u8, i: usize, split: &mut [u8], f: &mut F) {
    if i + 1 == targets.len() {
        split[i] = left;
        f(split);
        return;
    }
    for x in (0..=left).rev() {
        split[i] = x;
        distribute(targets, left - x, i + 1, split, f);
    }
}

/// All defense moves from `c` (each guard stays or crosses one edge), with
/// guards at a common vertex treated as interchangeable. Exponential; meant
/// for cross-checks on tiny instances.
pub fn enumerate_moves(g: &Graph, c: &GuardConfig) -> Vec<DefenseMove> {
    let units = expand_units(c.counts());
    let mut out = Vec::new();
    let mut cur: Vec<(usize, usize)> = Vec::with_capacity(units.len());
    fn rec(
        g: &Graph,
        units: &[usize],
        i: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<DefenseMove>,
    ) {
        if i == units.len() {
            out.push(DefenseMove::new(cur.clone()));
            return;
        }
        let u = units[i];
        let nbhd = g.closed_neighborhood(u);
        // interchangeable guards pick targets in nondecreasing order
        let floor = match cur.last() {
            Some(&(pu, pt)) if pu == u => pt,
            _ => 0,
        };
        for &t in nbhd.iter().filter(|&&t| t >= floor) {
            cur.push((u, t));
            rec(g, units, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(g, &units, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sup(n: usize, s: &[usize]) -> GuardConfig {
        GuardConfig::from_support(n, s).unwrap()
    }

    #[test]
    fn attacks() {
        assert_eq!(legal_attacks(&sup(3, &[0])), vec![1, 2]);
        assert!(legal_attacks(&sup(3, &[0, 1, 2])).is_empty());
        assert_eq!(legal_attacks(&sup(5, &[1, 3])), vec![0, 2, 4]);
    }

    #[test]
    fn feasibility_examples() {
        let c4 = Graph::cycle(4);
        assert!(transition_feasible(&c4, &sup(4, &[0, 1]), &sup(4, &[0, 2]), 2).unwrap());
        let p3 = Graph::path(3);
        assert!(!transition_feasible(&p3, &sup(3, &[1]), &sup(3, &[2]), 0).unwrap());
        let p4 = Graph::path(4);
        assert!(transition_feasible(&p4, &sup(4, &[0, 3]), &sup(4, &[1, 2]), 1).unwrap());
        assert!(!transition_feasible(&p4, &sup(4, &[0, 1]), &sup(4, &[2, 3]), 2).unwrap());
    }

    #[test]
    fn feasibility_errors() {
        let p3 = Graph::path(3);
        assert_eq!(
            transition_feasible(&p3, &sup(3, &[1]), &sup(3, &[0, 2]), 0),
            Err(Error::TotalMismatch(1, 2))
        );
        assert_eq!(
            transition_feasible(&p3, &sup(3, &[1]), &sup(3, &[0]), 1),
            Err(Error::GuardedVertex(1))
        );
    }

    #[test]
    fn apply_examples() {
        let k3 = Graph::complete(3);
        let d = DefenseMove::new(vec![(0, 1)]);
        assert_eq!(
            apply_defense(&k3, &sup(3, &[0]), &d, 1, Kind::Domination).unwrap(),
            sup(3, &[1])
        );
        let p3 = Graph::path(3);
        let d = DefenseMove::new(vec![(1, 0)]);
        assert_eq!(
            apply_defense(&p3, &sup(3, &[1]), &d, 0, Kind::Domination).unwrap(),
            sup(3, &[0])
        );
        let c = GuardConfig::from_counts(vec![2, 0, 0]);
        let d = DefenseMove::new(vec![(0, 1), (0, 1)]);
        assert_eq!(
            apply_defense(&k3, &c, &d, 1, Kind::Roman).unwrap().counts(),
            &[0, 2, 0]
        );
    }

    #[test]
    fn apply_rejections() {
        let p3 = Graph::path(3);
        let c = sup(3, &[0]);
        let err = apply_defense(
            &p3,
            &c,
            &DefenseMove::new(vec![(0, 2)]),
            2,
            Kind::Domination,
        );
        assert!(matches!(
            err,
            Err(Error::IllegalMove { from: 0, to: 2, .. })
        ));
        let err = apply_defense(
            &p3,
            &c,
            &DefenseMove::new(vec![(0, 0)]),
            1,
            Kind::Domination,
        );
        assert!(matches!(err, Err(Error::IllegalMove { .. })));
        let err = apply_defense(
            &p3,
            &c,
            &DefenseMove::new(vec![(1, 2)]),
            2,
            Kind::Domination,
        );
        assert!(matches!(err, Err(Error::IllegalMove { from: 1, .. })));
        let err = apply_defense(&p3, &c, &DefenseMove::new(vec![]), 2, Kind::Domination);
        assert!(matches!(err, Err(Error::IllegalMove { from: 0, .. })));
        let k3 = Graph::complete(3);
        let c = GuardConfig::from_counts(vec![2, 2, 0]);
        let d = DefenseMove::new(vec![(0, 2), (0, 1), (1, 1), (1, 1)]);
        assert!(matches!(
            apply_defense(&k3, &c, &d, 2, Kind::Roman),
            Err(Error::IllegalMove { to: 1, .. })
        ));
        assert!(apply_defense(&k3, &c, &d, 2, Kind::Domination).is_ok());
    }

    #[test]
    fn reachable_matches_matching() {
        let g = Graph::house_with_chord();
        let c = vec![1, 0, 1, 0, 1];
        let reach: HashSet<Vec<u8>> = reachable_configs(&g, &c, 3).into_iter().collect();
        for cand in crate::domination::enumerate_configs(5, 3, 3) {
            assert_eq!(
                reach.contains(&cand),
                movement_feasible(&g, &c, &cand),
                "{cand:?}"
            );
        }
    }

    #[test]
    fn cache_memoizes() {
        let g = Graph::path(3);
        let mut cache = TransitionCache::new();
        assert!(cache.feasible(&g, &[1, 0, 0], &[0, 1, 0]));
        assert!(cache.feasible(&g, &[1, 0, 0], &[0, 1, 0]));
        assert!(!cache.feasible(&g, &[1, 0, 0], &[0, 0, 1]));
        assert_eq!(cache.len(), 2);
    }
}
