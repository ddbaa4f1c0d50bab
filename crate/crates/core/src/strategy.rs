//! Floating-guard defender policies and a simulation harness.
//!
//! A policy keeps a fixed core fully occupied (a connected dominating set
//! with one or two guards per vertex, or an Italian function with connected
//! support) plus one floating guard. An attack is answered by shifting one
//! guard along each edge of a path from the floating guard through the core
//! to the attacked vertex.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::domination::{satisfies, GuardConfig, Kind, Variant};
use crate::error::{Error, Result};
use crate::game::{apply_defense, legal_attacks, reachable_configs, DefenseMove};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolicyKind {
    FloatingPlain,
    FloatingRoman,
    FloatingItalian,
}

impl PolicyKind {
    pub fn for_kind(kind: Kind) -> Self {
        match kind {
            Kind::Domination => PolicyKind::FloatingPlain,
            Kind::Roman => PolicyKind::FloatingRoman,
            Kind::Italian => PolicyKind::FloatingItalian,
        }
    }

    pub fn kind(self) -> Kind {
        match self {
            PolicyKind::FloatingPlain => Kind::Domination,
            PolicyKind::FloatingRoman => Kind::Roman,
            PolicyKind::FloatingItalian => Kind::Italian,
        }
    }
}

/// The fixed part a policy keeps occupied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolicyCore {
    /// A connected dominating set (plain and Roman policies).
    Set(Vec<usize>),
    /// An Italian dominating function with connected support.
    Function(Vec<u8>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Policy {
    kind: PolicyKind,
    /// Guards held on each vertex by the core.
    core: Vec<u8>,
    float_at: usize,
}

impl Policy {
    pub fn kind(&self) -> PolicyKind {
        self.kind
    }

    pub fn variant(&self) -> Variant {
        Variant::new(self.kind.kind(), false)
    }

    pub fn float_at(&self) -> usize {
        self.float_at
    }

    pub fn core_counts(&self) -> &[u8] {
        &self.core
    }

    /// Core plus the floating guard.
    pub fn config(&self) -> GuardConfig {
        let mut counts = self.core.clone();
        counts[self.float_at] += 1;
        GuardConfig::from_counts(counts)
    }

    /// Total guards: `|Z| + 1`, `2|Z| + 1` or `t_f + 1`.
    pub fn budget(&self) -> u32 {
        self.core.iter().map(|&c| c as u32).sum::<u32>() + 1
    }
}

/// Builds the policy's initial state, with the floating guard on the
/// lowest-id vertex outside the core's support.
pub fn make_floating_policy(g: &Graph, kind: Kind, core: PolicyCore) -> Result<Policy> {
    let n = g.n();
    let counts: Vec<u8> = match (kind, core) {
        (Kind::Domination | Kind::Roman, PolicyCore::Set(z)) => {
            let per = if kind == Kind::Roman { 2 } else { 1 };
            let mut counts = vec![0u8; n];
            for v in z {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                counts[v] = per;
            }
            let as_set: Vec<u8> = counts.iter().map(|&c| c.min(1)).collect();
            if !satisfies(g, &as_set, Variant::plain().connected())
                || as_set.iter().all(|&c| c == 0)
            {
                return Err(Error::InvalidCore(
                    "core is not a connected dominating set".into(),
                ));
            }
            counts
        }
        (Kind::Italian, PolicyCore::Function(f)) => {
            if f.len() != n {
                return Err(Error::InvalidCore(format!(
                    "function has {} values, graph has {n} vertices",
                    f.len()
                )));
            }
            if f.iter().any(|&x| x > 2) {
                return Err(Error::InvalidCore("function value above 2".into()));
            }
            if !satisfies(g, &f, Variant::italian().connected()) || f.iter().all(|&x| x == 0) {
                return Err(Error::InvalidCore(
                    "not an Italian dominating function with connected support".into(),
                ));
            }
            f
        }
        (kind, _) => {
            return Err(Error::InvalidCore(format!(
                "core shape does not match the {} policy",
                kind.name()
            )))
        }
    };
    let float_at = counts
        .iter()
        .position(|&c| c == 0)
        .ok_or_else(|| Error::InvalidCore("core covers every vertex".into()))?;
    Ok(Policy {
        kind: PolicyKind::for_kind(kind),
        core: counts,
        float_at,
    })
}

/// Shortest path from `from` to `to` whose interior lies in `interior`,
/// BFS expanding neighbors in ascending id order.
fn core_path(g: &Graph, from: usize, to: usize, interior: &[u8]) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; g.n()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if parent[w] != usize::MAX {
                continue;
            }
            if w == to {
                parent[w] = u;
                let mut path = vec![to];
                let mut x = to;
                while x != from {
                    x = parent[x];
                    path.push(x);
                }
                path.reverse();
                return Some(path);
            }
            if interior[w] > 0 {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// The policy's answer to an attack on `attacked`; advances the policy so
/// that the floating guard sits on `attacked` afterwards.
pub fn policy_defend(p: &mut Policy, g: &Graph, attacked: usize) -> Result<DefenseMove> {
    let config = p.config();
    if attacked >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: attacked,
            n: g.n(),
        });
    }
    if config.count(attacked) > 0 {
        return Err(Error::GuardedVertex(attacked));
    }
    let path = core_path(g, p.float_at, attacked, &p.core).ok_or_else(|| {
        Error::InvalidCore(format!(
            "no path from {} to {attacked} through the core",
            p.float_at
        ))
    })?;
    let mut moves: Vec<(usize, usize)> = path.windows(2).map(|w| (w[0], w[1])).collect();
    // every guard not on the path stays; one guard per path vertex moves
    let mut left = config.into_counts();
    for &(from, _) in &moves {
        left[from] -= 1;
    }
    for (v, &c) in left.iter().enumerate() {
        moves.extend(std::iter::repeat_n((v, v), c as usize));
    }
    p.float_at = attacked;
    Ok(DefenseMove::new(moves))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Attacker {
    Script(Vec<usize>),
    Random {
        seed: u64,
    },
    /// Picks the attack leaving the fewest valid answers, looking `depth`
    /// plies of attack/defense ahead.
    Adversarial {
        depth: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub before: GuardConfig,
    pub attack: usize,
    /// `None` when the attacker forfeited (targeted a guarded vertex).
    pub defense: Option<DefenseMove>,
    pub after: GuardConfig,
    pub valid: bool,
}

impl Round {
    pub fn forfeit(&self) -> bool {
        self.defense.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub rounds: Vec<Round>,
    pub defender_survived: bool,
}

/// Number of valid answers to an attack on `a` in `c`, counting only answers
/// that survive `depth - 1` further attack plies.
fn answer_count(g: &Graph, c: &[u8], a: usize, v: Variant, depth: u32) -> usize {
    let cap = v
        .kind
        .cap()
        .unwrap_or(c.iter().map(|&x| x as u32).sum::<u32>() as u8);
    reachable_configs(g, c, cap)
        .into_iter()
        .filter(|c2| c2[a] > 0 && satisfies(g, c2, v))
        .filter(|c2| depth <= 1 || pressure(g, c2, v, depth - 1) > 0)
        .count()
}

/// Minimum over attacks of [`answer_count`]; `usize::MAX` when no attack is
/// possible.
fn pressure(g: &Graph, c: &[u8], v: Variant, depth: u32) -> usize {
    (0..c.len())
        .filter(|&a| c[a] == 0)
        .map(|a| answer_count(g, c, a, v, depth))
        .min()
        .unwrap_or(usize::MAX)
}

/// Plays `rounds` attacks against `p`, validating every resulting
/// configuration for the policy's variant. Stops early when the attacker has
/// no legal target or a defense fails validation.
pub fn simulate(
    g: &Graph,
    p: &mut Policy,
    attacker: &Attacker,
    rounds: usize,
) -> Result<Transcript> {
    let v = p.variant();
    let mut rng = match attacker {
        Attacker::Random { seed } => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    let mut out = Vec::new();
    let mut survived = true;
    for i in 0..rounds {
        let before = p.config();
        let attack = match attacker {
            Attacker::Script(list) => match list.get(i) {
                Some(&a) => a,
                None => break,
            },
            Attacker::Random { .. } => {
                let targets = legal_attacks(&before);
                match targets.choose(rng.as_mut().unwrap()) {
                    Some(&a) => a,
                    None => break,
                }
            }
            Attacker::Adversarial { depth } => {
                let targets = legal_attacks(&before);
                let pick = targets
                    .iter()
                    .copied()
                    .min_by_key(|&a| (answer_count(g, before.counts(), a, v, (*depth).max(1)), a));
                match pick {
                    Some(a) => a,
                    None => break,
                }
            }
        };
        if attack < g.n() && before.count(attack) > 0 {
            out.push(Round {
                after: before.clone(),
                before,
                attack,
                defense: None,
                valid: true,
            });
            continue;
        }
        let defense = policy_defend(p, g, attack)?;
        let after = apply_defense(g, &before, &defense, attack, v.kind)?;
        debug_assert_eq!(after, p.config());
        let valid = satisfies(g, after.counts(), v);
        out.push(Round {
            before,
            attack,
            defense: Some(defense),
            after,
            valid,
        });
        if !valid {
            survived = false;
            break;
        }
    }
    Ok(Transcript {
        rounds: out,
        defender_survived: survived,
    })
}
