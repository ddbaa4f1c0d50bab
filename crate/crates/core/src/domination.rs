//! Guard configurations, the static dominating conditions for every variant,
//! and brute-force static domination numbers.

use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Brute-force vertex limit for plain (and connected plain) domination.
pub const PLAIN_STATIC_LIMIT: usize = 20;
/// Brute-force vertex limit for Roman and Italian domination.
pub const WEIGHTED_STATIC_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Domination,
    Roman,
    Italian,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::Domination, Kind::Roman, Kind::Italian];

    /// Per-vertex count cap imposed by the variant itself (`None` = uncapped).
    pub fn cap(self) -> Option<u8> {
        match self {
            Kind::Domination => None,
            Kind::Roman | Kind::Italian => Some(2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Domination => "domination",
            Kind::Roman => "roman",
            Kind::Italian => "italian",
        }
    }
}

impl std::str::FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "domination" | "plain" => Ok(Kind::Domination),
            "roman" => Ok(Kind::Roman),
            "italian" => Ok(Kind::Italian),
            other => Err(format!("unknown variant `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Variant {
    pub kind: Kind,
    pub connected: bool,
}

impl Variant {
    pub const fn new(kind: Kind, connected: bool) -> Self {
        Variant { kind, connected }
    }

    pub const fn plain() -> Self {
        Variant::new(Kind::Domination, false)
    }

    pub const fn roman() -> Self {
        Variant::new(Kind::Roman, false)
    }

    pub const fn italian() -> Self {
        Variant::new(Kind::Italian, false)
    }

    pub const fn connected(self) -> Self {
        Variant::new(self.kind, true)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.connected {
            write!(f, "connected-{}", self.kind.name())
        } else {
            f.write_str(self.kind.name())
        }
    }
}

/// Per-vertex guard multiplicities. Under Roman/Italian rules the count at a
/// vertex is the function value there.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GuardConfig {
    counts: Vec<u8>,
}

impl GuardConfig {
    pub fn from_counts(counts: Vec<u8>) -> Self {
        GuardConfig { counts }
    }

    /// One guard on each listed vertex (repeats stack).
    pub fn from_support(n: usize, support: &[usize]) -> Result<Self> {
        let mut counts = vec![0u8; n];
        for &v in support {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            counts[v] += 1;
        }
        Ok(GuardConfig { counts })
    }

    #[inline]
    pub fn counts(&self) -> &[u8] {
        &self.counts
    }

    pub fn into_counts(self) -> Vec<u8> {
        self.counts
    }

    #[inline]
    pub fn count(&self, v: usize) -> u8 {
        self.counts[v]
    }

    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().map(|&c| c as u32).sum()
    }

    /// Occupied vertices in ascending order.
    pub fn support(&self) -> Vec<usize> {
        (0..self.counts.len())
            .filter(|&v| self.counts[v] > 0)
            .collect()
    }

    pub fn support_mask(&self) -> Vec<bool> {
        self.counts.iter().map(|&c| c > 0).collect()
    }

    /// Checks shape against `g` and the variant's count cap.
    pub fn check_well_formed(&self, g: &Graph, kind: Kind) -> Result<()> {
        if self.counts.len() != g.n() {
            return Err(Error::MalformedConfig(format!(
                "configuration has {} entries, graph has {} vertices",
                self.counts.len(),
                g.n()
            )));
        }
        if let Some(cap) = kind.cap() {
            if let Some(v) = self.counts.iter().position(|&c| c > cap) {
                return Err(Error::MalformedConfig(format!(
                    "vertex {v} holds {} guards, {} allows at most {cap}",
                    self.counts[v],
                    kind.name()
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for GuardConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Whether `counts` satisfies the dominating condition of `v` on `g`.
/// Assumes the shape was already checked.
pub(crate) fn satisfies(g: &Graph, counts: &[u8], v: Variant) -> bool {
    let dominated = (0..g.n()).all(|x| {
        if counts[x] > 0 {
            return true;
        }
        let nbrs = g.neighbors(x);
        match v.kind {
            Kind::Domination => nbrs.iter().any(|&u| counts[u] > 0),
            Kind::Roman => nbrs.iter().any(|&u| counts[u] >= 2),
            Kind::Italian => nbrs.iter().map(|&u| counts[u] as u32).sum::<u32>() >= 2,
        }
    });
    if !dominated {
        return false;
    }
    if v.connected {
        let mask: Vec<bool> = counts.iter().map(|&c| c > 0).collect();
        g.induces_connected(&mask)
    } else {
        true
    }
}

/// Whether `c` is a dominating set / Roman / Italian dominating function of
/// `g` (with connected support when `v.connected`).
///
/// A count above 2 under Roman or Italian rules is an error, not `false`.
pub fn validate_config(g: &Graph, c: &GuardConfig, v: Variant) -> Result<bool> {
    c.check_well_formed(g, v.kind)?;
    Ok(satisfies(g, c.counts(), v))
}

/// Visits every count vector of length `n` with entries `<= cap` summing to
/// `total`, in descending lexicographic order (vertex 0 most significant).
/// For `cap == 1` this is the lexicographic order of sorted vertex subsets.
pub fn for_each_config<F>(n: usize, total: u32, cap: u8, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[u8]) -> ControlFlow<()>,
{
    fn rec<F: FnMut(&[u8]) -> ControlFlow<()>>(
        buf: &mut Vec<u8>,
        i: usize,
        left: u32,
        cap: u8,
        f: &mut F,
    ) -> ControlFlow<()> {
        let n = buf.len();
        if i == n {
            return if left == 0 {
                f(buf)
            } else {
                ControlFlow::Continue(())
            };
        }
        let room = (n - i - 1) as u32 * cap as u32;
        let hi = left.min(cap as u32);
        let lo = left.saturating_sub(room);
        for c in (lo..=hi).rev() {
            buf[i] = c as u8;
            rec(buf, i + 1, left - c, cap, f)?;
        }
        buf[i] = 0;
        ControlFlow::Continue(())
    }
    if n == 0 {
        return if total == 0 {
            f(&[])
        } else {
            ControlFlow::Continue(())
        };
    }
    let mut buf = vec![0u8; n];
    rec(&mut buf, 0, total, cap, &mut f)
}

/// All count vectors visited by [`for_each_config`], collected.
pub fn enumerate_configs(n: usize, total: u32, cap: u8) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let _ = for_each_config(n, total, cap, |c| {
        out.push(c.to_vec());
        ControlFlow::Continue(())
    });
    out
}

/// Exact number of count vectors of length `n`, entries `<= cap`, summing to
/// `total`.
pub fn count_configs(n: usize, total: u32, cap: u8) -> u128 {
    let total = total as usize;
    let mut ways = vec![0u128; total + 1];
    ways[0] = 1;
    for _ in 0..n {
        let mut next = vec![0u128; total + 1];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for c in 0..=cap as usize {
                if s + c > total {
                    break;
                }
                next[s + c] = next[s + c].saturating_add(w);
            }
        }
        ways = next;
    }
    ways[total]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StaticResult {
    pub weight: u32,
    pub witness: GuardConfig,
}

fn default_limit(kind: Kind) -> usize {
    match kind {
        Kind::Domination => PLAIN_STATIC_LIMIT,
        Kind::Roman | Kind::Italian => WEIGHTED_STATIC_LIMIT,
    }
}

/// Minimum cardinality/weight of a valid configuration, by exhaustive
/// enumeration in increasing weight with the first valid configuration in
/// descending-lex order as witness.
pub fn static_number(g: &Graph, v: Variant) -> Result<StaticResult> {
    static_number_with_limit(g, v, None)
}

/// [`static_number`] with the vertex limit overridden (`None` keeps the
/// default for the variant).
pub fn static_number_with_limit(
    g: &Graph,
    v: Variant,
    limit: Option<usize>,
) -> Result<StaticResult> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let limit = limit.unwrap_or_else(|| default_limit(v.kind));
    if n > limit {
        return Err(Error::SizeLimit { n, limit });
    }
    if v.connected && !g.is_connected() {
        return Err(Error::Disconnected);
    }
    // Stacking never helps a static dominating set, so plain searches sets.
    let cap = v.kind.cap().unwrap_or(1);
    let max_weight = n as u32 * cap as u32;
    for weight in 1..=max_weight {
        let mut found = None;
        let _ = for_each_config(n, weight, cap, |c| {
            if satisfies(g, c, v) {
                found = Some(c.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if let Some(counts) = found {
            return Ok(StaticResult {
                weight,
                witness: GuardConfig::from_counts(counts),
            });
        }
    }
    unreachable!("guarding every vertex is always valid on a connected or plain instance")
}

/// A minimum connected dominating set (lexicographically first among the
/// minimum ones).
pub fn min_connected_dominating_set(g: &Graph) -> Result<Vec<usize>> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let r = static_number(g, Variant::plain().connected())?;
    Ok(r.witness.support())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn support(n: usize, s: &[usize]) -> GuardConfig {
        GuardConfig::from_support(n, s).unwrap()
    }

    #[test]
    fn path_of_three() {
        let p3 = Graph::path(3);
        assert!(validate_config(&p3, &support(3, &[1]), Variant::plain()).unwrap());
        assert!(!validate_config(&p3, &support(3, &[0]), Variant::plain()).unwrap());
    }

    #[test]
    fn example_graph_dominated_by_v2_v4() {
        let g = Graph::house_with_chord();
        assert!(validate_config(&g, &support(5, &[1, 3]), Variant::plain()).unwrap());
        let r = static_number(&g, Variant::plain()).unwrap();
        assert_eq!(r.weight, 2);
        assert!(validate_config(&g, &r.witness, Variant::plain()).unwrap());
    }

    #[test]
    fn italian_on_c4() {
        let c4 = Graph::cycle(4);
        let f = GuardConfig::from_counts(vec![1, 0, 1, 0]);
        assert!(validate_config(&c4, &f, Variant::italian()).unwrap());
        assert!(!validate_config(&c4, &f, Variant::roman()).unwrap());
    }

    #[test]
    fn cap_violation_is_an_error() {
        let k3 = Graph::complete(3);
        let c = GuardConfig::from_counts(vec![3, 0, 0]);
        assert!(matches!(
            validate_config(&k3, &c, Variant::roman()),
            Err(Error::MalformedConfig(_))
        ));
        assert!(validate_config(&k3, &c, Variant::plain()).unwrap());
    }

    #[test]
    fn static_values() {
        for n in 1..=6 {
            assert_eq!(
                static_number(&Graph::complete(n), Variant::plain())
                    .unwrap()
                    .weight,
                1
            );
        }
        let p2 = Graph::path(2);
        let r = static_number(&p2, Variant::italian()).unwrap();
        assert_eq!(r.weight, 2);
        // descending-lex: (2,0) comes before (1,1)
        assert_eq!(r.witness.counts(), &[2, 0]);
        assert_eq!(
            static_number(&Graph::complete(3), Variant::roman())
                .unwrap()
                .weight,
            2
        );
    }

    #[test]
    fn size_limit() {
        let g = Graph::path(21);
        assert_eq!(
            static_number(&g, Variant::plain()),
            Err(Error::SizeLimit { n: 21, limit: 20 })
        );
        assert_eq!(
            static_number(&Graph::path(17), Variant::roman()),
            Err(Error::SizeLimit { n: 17, limit: 16 })
        );
        assert!(static_number_with_limit(&Graph::path(17), Variant::roman(), Some(17)).is_ok());
    }

    #[test]
    fn connected_dominating_sets() {
        assert_eq!(
            min_connected_dominating_set(&Graph::path(4)).unwrap(),
            vec![1, 2]
        );
        assert_eq!(
            min_connected_dominating_set(&Graph::complete(3)).unwrap(),
            vec![0]
        );
        assert_eq!(
            min_connected_dominating_set(&Graph::star(4)).unwrap(),
            vec![0]
        );
        assert_eq!(
            min_connected_dominating_set(&Graph::empty(2)),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn enumeration_order_and_count() {
        let all = enumerate_configs(3, 2, 2);
        assert_eq!(
            all,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
        for (n, t, cap) in [(5, 3, 1), (6, 4, 2), (4, 5, 5), (0, 0, 1)] {
            assert_eq!(
                enumerate_configs(n, t, cap).len() as u128,
                count_configs(n, t, cap)
            );
        }
    }
}
