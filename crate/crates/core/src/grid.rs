//! Infinite square (T4), octagonal (T8), hexagonal (T3) and triangular (T6)
//! grids, their perfect-code guard patterns, translation defenses, and
//! finite-window verification.
//!
//! Base patterns (membership of `(x, y)`, all residues taken non-negative):
//!
//! | grid | pattern                       | closed neighborhood size |
//! |------|-------------------------------|--------------------------|
//! | T4   | `2x + y ≡ 0 (mod 5)`          | 5                        |
//! | T8   | `x ≡ y ≡ 0 (mod 3)`           | 9                        |
//! | T3   | `x + 3y ≡ 0 or 7 (mod 8)`     | 4                        |
//! | T6   | `x − 3y ≡ 0 (mod 7)`          | 7                        |
//!
//! The T3 pattern is the union of the lattice `L = {x + 3y ≡ 0 (mod 8)}`
//! (generated by (2,2) and (3,−1), all of even parity) and its shift
//! `L − (1, 0)` (odd parity).

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::ops::{Add, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Coord {
    pub x: i64,
    pub y: i64,
}

impl Coord {
    pub const ORIGIN: Coord = Coord { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Coord { x, y }
    }

    #[inline]
    pub fn is_even(self) -> bool {
        (self.x + self.y).rem_euclid(2) == 0
    }

    /// Chebyshev norm; windows are boxes `|x|, |y| <= R`.
    pub fn cheb(self) -> i64 {
        self.x.abs().max(self.y.abs())
    }
}

impl Add for Coord {
    type Output = Coord;
    fn add(self, o: Coord) -> Coord {
        Coord::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Coord {
    type Output = Coord;
    fn sub(self, o: Coord) -> Coord {
        Coord::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        Coord::new(-self.x, -self.y)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

const fn c(x: i64, y: i64) -> Coord {
    Coord::new(x, y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GridKind {
    T4,
    T8,
    T3,
    T6,
}

impl GridKind {
    pub const ALL: [GridKind; 4] = [GridKind::T4, GridKind::T8, GridKind::T3, GridKind::T6];

    pub fn degree(self) -> usize {
        match self {
            GridKind::T4 => 4,
            GridKind::T8 => 8,
            GridKind::T3 => 3,
            GridKind::T6 => 6,
        }
    }

    /// Smallest `p` with `(p, 0)` and `(0, p)` both pattern periods.
    pub fn period(self) -> i64 {
        match self {
            GridKind::T4 => 5,
            GridKind::T8 => 3,
            GridKind::T3 => 8,
            GridKind::T6 => 7,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GridKind::T4 => "t4",
            GridKind::T8 => "t8",
            GridKind::T3 => "t3",
            GridKind::T6 => "t6",
        }
    }
}

impl std::str::FromStr for GridKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "t4" => Ok(GridKind::T4),
            "t8" => Ok(GridKind::T8),
            "t3" => Ok(GridKind::T3),
            "t6" => Ok(GridKind::T6),
            other => Err(format!(
                "unknown grid `{other}` (expected t4, t8, t3 or t6)"
            )),
        }
    }
}

impl fmt::Display for GridKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

const T4_STEPS: [Coord; 4] = [c(1, 0), c(-1, 0), c(0, 1), c(0, -1)];
const T8_STEPS: [Coord; 8] = [
    c(1, 0),
    c(-1, 0),
    c(0, 1),
    c(0, -1),
    c(-1, -1),
    c(1, 1),
    c(-1, 1),
    c(1, -1),
];
const T6_STEPS: [Coord; 6] = [c(1, 0), c(-1, 0), c(0, 1), c(0, -1), c(-1, -1), c(1, 1)];

/// Neighbors of `v` in the grid.
pub fn grid_neighbors(kind: GridKind, v: Coord) -> Vec<Coord> {
    match kind {
        GridKind::T4 => T4_STEPS.iter().map(|&d| v + d).collect(),
        GridKind::T8 => T8_STEPS.iter().map(|&d| v + d).collect(),
        GridKind::T6 => T6_STEPS.iter().map(|&d| v + d).collect(),
        GridKind::T3 => {
            let side = if v.is_even() { c(1, 0) } else { c(-1, 0) };
            vec![v + c(0, 1), v + c(0, -1), v + side]
        }
    }
}

pub fn is_adjacent(kind: GridKind, a: Coord, b: Coord) -> bool {
    grid_neighbors(kind, a).contains(&b)
}

/// Closed-form membership in the base pattern (offset zero).
pub fn base_member(kind: GridKind, v: Coord) -> bool {
    let Coord { x, y } = v;
    match kind {
        GridKind::T4 => (2 * x + y).rem_euclid(5) == 0,
        GridKind::T8 => x.rem_euclid(3) == 0 && y.rem_euclid(3) == 0,
        GridKind::T3 => matches!((x + 3 * y).rem_euclid(8), 0 | 7),
        GridKind::T6 => (x - 3 * y).rem_euclid(7) == 0,
    }
}

/// Whether `v` lies in the base pattern translated by `t`.
pub fn pattern_member(kind: GridKind, t: Coord, v: Coord) -> bool {
    base_member(kind, v - t)
}

/// The guard pattern translated by `offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatrolState {
    pub kind: GridKind,
    pub offset: Coord,
}

impl PatrolState {
    pub fn new(kind: GridKind) -> Self {
        PatrolState {
            kind,
            offset: Coord::ORIGIN,
        }
    }

    /// A translate of the base pattern. On T3 only even-parity translations
    /// are graph automorphisms, so odd offsets are rejected.
    pub fn with_offset(kind: GridKind, offset: Coord) -> Result<Self> {
        if kind == GridKind::T3 && !offset.is_even() {
            return Err(Error::InvalidOffset(format!(
                "T3 offsets must have even coordinate sum, got {offset}"
            )));
        }
        Ok(PatrolState { kind, offset })
    }

    #[inline]
    pub fn guarded(&self, v: Coord) -> bool {
        pattern_member(self.kind, self.offset, v)
    }

    /// Guards inside the box of Chebyshev radius `r`, row-major from the
    /// bottom-left corner.
    pub fn guards_within(&self, r: i64) -> Vec<Coord> {
        let mut out = Vec::new();
        for y in -r..=r {
            for x in -r..=r {
                let v = c(x, y);
                if self.guarded(v) {
                    out.push(v);
                }
            }
        }
        out
    }
}

/// `|S ∩ N[v]|` for the pattern of `s`.
pub fn domination_index(s: &PatrolState, v: Coord) -> usize {
    usize::from(s.guarded(v))
        + grid_neighbors(s.kind, v)
            .into_iter()
            .filter(|&u| s.guarded(u))
            .count()
}

/// The single pattern vertex in `N[v]`.
pub fn unique_dominator(s: &PatrolState, v: Coord) -> Result<Coord> {
    let mut found: Vec<Coord> = grid_neighbors(s.kind, v)
        .into_iter()
        .filter(|&u| s.guarded(u))
        .collect();
    if s.guarded(v) {
        found.push(v);
    }
    match found.as_slice() {
        [only] => Ok(*only),
        _ => Err(Error::IndexViolation {
            at: v,
            count: found.len(),
        }),
    }
}

/// How every guard moves in one defense.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveField {
    /// Every guard shifts by the same unit vector.
    Uniform(Coord),
    /// Guards on even-parity vertices shift by `even`, the rest by `odd`.
    ByParity { even: Coord, odd: Coord },
}

impl MoveField {
    pub fn displacement(&self, from: Coord) -> Coord {
        match *self {
            MoveField::Uniform(d) => d,
            MoveField::ByParity { even, odd } => {
                if from.is_even() {
                    even
                } else {
                    odd
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridDefense {
    pub attacked: Coord,
    pub dominator: Coord,
    pub field: MoveField,
}

impl GridDefense {
    /// Per-guard `(from, to)` pairs for the pre-move guards of `before`
    /// inside the box of radius `r`.
    pub fn moves_within(&self, before: &PatrolState, r: i64) -> Vec<(Coord, Coord)> {
        before
            .guards_within(r)
            .into_iter()
            .map(|g| (g, g + self.field.displacement(g)))
            .collect()
    }
}

/// T3 companion moves: the attacked guard's coset shifts by `d`, the other
/// coset by the returned vector.
fn t3_companion(dominator_even: bool, d: Coord) -> Option<Coord> {
    if dominator_even {
        match (d.x, d.y) {
            (0, 1) => Some(c(0, -1)),
            (1, 0) => Some(c(0, 1)),
            (0, -1) => Some(c(-1, 0)),
            _ => None,
        }
    } else {
        match (d.x, d.y) {
            (0, 1) => Some(c(1, 0)),
            (-1, 0) => Some(c(0, -1)),
            (0, -1) => Some(c(0, 1)),
            _ => None,
        }
    }
}

/// Answers an attack on `attacked`: the unique dominating guard steps onto
/// it and the rest of the pattern follows so that the result is again a
/// translate of the base pattern.
pub fn grid_defend(s: &PatrolState, attacked: Coord) -> Result<(PatrolState, GridDefense)> {
    if s.guarded(attacked) {
        return Err(Error::GuardedCell(attacked));
    }
    let dominator = unique_dominator(s, attacked)?;
    let d = attacked - dominator;
    let (field, offset) = match s.kind {
        GridKind::T4 | GridKind::T8 | GridKind::T6 => (MoveField::Uniform(d), s.offset + d),
        GridKind::T3 => {
            let even_side = dominator.is_even();
            let other = t3_companion(even_side, d).ok_or_else(|| {
                Error::InvalidOffset(format!("no T3 rule for step {d} from {dominator}"))
            })?;
            let (even, odd) = if even_side { (d, other) } else { (other, d) };
            // the odd coset, once moved, becomes the even coset of the new
            // translate
            (MoveField::ByParity { even, odd }, s.offset - c(1, 0) + odd)
        }
    };
    let next = PatrolState::with_offset(s.kind, offset)?;
    Ok((
        next,
        GridDefense {
            attacked,
            dominator,
            field,
        },
    ))
}

/// Rational `num / den` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        let g = gcd(num, den).max(1);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowReport {
    pub kind: GridKind,
    pub offset: Coord,
    pub radius: i64,
    pub interior_vertices: usize,
    /// Domination index -> number of interior vertices with that index.
    pub index_histogram: BTreeMap<usize, usize>,
    /// Every interior vertex lies in exactly one `N[s]`.
    pub partition_ok: bool,
    pub density: Ratio,
    pub expected_density: Ratio,
    /// First few interior vertices whose index is not 1.
    pub violations: Vec<Coord>,
}

impl WindowReport {
    pub fn all_ones(&self) -> bool {
        self.index_histogram.keys().all(|&k| k == 1)
    }

    pub fn density_ok(&self) -> bool {
        self.density == self.expected_density
    }

    pub fn ok(&self) -> bool {
        self.all_ones() && self.partition_ok && self.density_ok()
    }
}

/// Checks strong optimality of `s` on the box of radius `radius` (interior
/// vertices only: those with their whole closed neighborhood in the box),
/// and measures guard density over the `p × p` tile anchored at the offset.
pub fn verify_window(s: &PatrolState, radius: i64) -> WindowReport {
    let inner = radius - 1;
    let mut histogram = BTreeMap::new();
    let mut violations = Vec::new();
    let mut interior = 0usize;
    let side = (2 * inner + 1).max(0) as usize;
    let mut cover = vec![0u32; side * side];
    let slot = |v: Coord| -> Option<usize> {
        (v.cheb() <= inner).then(|| ((v.y + inner) as usize) * side + (v.x + inner) as usize)
    };
    for y in -inner..=inner {
        for x in -inner..=inner {
            let v = c(x, y);
            interior += 1;
            let idx = domination_index(s, v);
            *histogram.entry(idx).or_insert(0) += 1;
            if idx != 1 && violations.len() < 16 {
                violations.push(v);
            }
        }
    }
    for g in s.guards_within(radius) {
        for v in std::iter::once(g).chain(grid_neighbors(s.kind, g)) {
            if let Some(i) = slot(v) {
                cover[i] += 1;
            }
        }
    }
    let partition_ok = cover.iter().all(|&k| k == 1);

    let p = s.kind.period();
    let mut in_tile = 0u64;
    for dy in 0..p {
        for dx in 0..p {
            if s.guarded(s.offset + c(dx, dy)) {
                in_tile += 1;
            }
        }
    }
    WindowReport {
        kind: s.kind,
        offset: s.offset,
        radius,
        interior_vertices: interior,
        index_histogram: histogram,
        partition_ok,
        density: Ratio::new(in_tile, (p * p) as u64),
        expected_density: Ratio::new(1, s.kind.degree() as u64 + 1),
        violations,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridAttacker {
    Script(Vec<Coord>),
    /// Uniform over unguarded cells of the interior box.
    Random {
        seed: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridRound {
    pub offset_before: Coord,
    pub attack: Coord,
    /// `None` for a forfeited round (attack on a guarded cell).
    pub defense: Option<GridDefense>,
    pub offset_after: Coord,
    pub moves_legal: bool,
    pub attacked_covered: bool,
    /// Post-move guard set equals the new translate on the window.
    pub set_equal: bool,
    pub index_all_ones: bool,
    /// T4/T8/T6: offset moved by exactly the attack direction.
    pub translation_ok: bool,
}

impl GridRound {
    pub fn valid(&self) -> bool {
        self.moves_legal
            && self.attacked_covered
            && self.set_equal
            && self.index_all_ones
            && self.translation_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridTranscript {
    pub kind: GridKind,
    pub radius: i64,
    pub rounds: Vec<GridRound>,
    pub defender_survived: bool,
}

/// Executes one defense and checks it on the box of radius `radius`.
pub fn checked_defense(s: &PatrolState, attacked: Coord, radius: i64) -> Result<GridRound> {
    let (next, defense) = grid_defend(s, attacked)?;
    let moves = defense.moves_within(s, radius + 1);
    let moves_legal = moves
        .iter()
        .all(|&(a, b)| a == b || is_adjacent(s.kind, a, b));
    let mut moved: Vec<Coord> = moves
        .iter()
        .map(|&(_, b)| b)
        .filter(|b| b.cheb() <= radius)
        .collect();
    moved.sort_unstable();
    let before_len = moved.len();
    moved.dedup();
    let mut expected = next.guards_within(radius);
    expected.sort_unstable();
    let set_equal = before_len == moved.len() && moved == expected;
    let attacked_covered = moved.binary_search(&attacked).is_ok();
    let index_all_ones = verify_window(&next, radius).all_ones();
    let translation_ok = match s.kind {
        GridKind::T3 => true,
        _ => next.offset - s.offset == attacked - defense.dominator,
    };
    Ok(GridRound {
        offset_before: s.offset,
        attack: attacked,
        defense: Some(defense),
        offset_after: next.offset,
        moves_legal,
        attacked_covered,
        set_equal,
        index_all_ones,
        translation_ok,
    })
}

/// Plays `rounds` attacks inside the box of radius `radius - 1`, starting
/// from the base pattern, checking every defense on the radius-`radius`
/// window.
pub fn simulate_grid(
    kind: GridKind,
    attacker: &GridAttacker,
    rounds: usize,
    radius: i64,
) -> Result<GridTranscript> {
    let mut state = PatrolState::new(kind);
    let mut rng = match attacker {
        GridAttacker::Random { seed } => Some(ChaCha8Rng::seed_from_u64(*seed)),
        GridAttacker::Script(_) => None,
    };
    let reach = (radius - 1).max(0);
    let mut out = Vec::new();
    for i in 0..rounds {
        let attack = match attacker {
            GridAttacker::Script(list) => match list.get(i) {
                Some(&a) => a,
                None => break,
            },
            GridAttacker::Random { .. } => {
                let rng = rng.as_mut().unwrap();
                loop {
                    let v = c(rng.gen_range(-reach..=reach), rng.gen_range(-reach..=reach));
                    if !state.guarded(v) {
                        break v;
                    }
                }
            }
        };
        if state.guarded(attack) {
            out.push(GridRound {
                offset_before: state.offset,
                attack,
                defense: None,
                offset_after: state.offset,
                moves_legal: true,
                attacked_covered: true,
                set_equal: true,
                index_all_ones: true,
                translation_ok: true,
            });
            continue;
        }
        let round = checked_defense(&state, attack, radius)?;
        state = PatrolState::with_offset(kind, round.offset_after)?;
        let ok = round.valid();
        out.push(round);
        if !ok {
            break;
        }
    }
    let defender_survived = out.iter().all(GridRound::valid);
    Ok(GridTranscript {
        kind,
        radius,
        rounds: out,
        defender_survived,
    })
}

fn arrow(d: Coord) -> char {
    match (d.x, d.y) {
        (1, 0) => '>',
        (-1, 0) => '<',
        (0, 1) => '^',
        (0, -1) => 'v',
        (1, 1) | (-1, -1) => '/',
        (-1, 1) | (1, -1) => '\\',
        _ => 'o',
    }
}

/// Character rendering of the box of radius `radius`, top row first.
/// `o` marks a guard, `.` an empty cell, `@` the last attacked cell, and an
/// arrow the direction a guard arrived from on the last move.
pub fn render_window(s: &PatrolState, radius: i64, last: Option<&GridDefense>) -> String {
    let mut out = String::new();
    for y in (-radius..=radius).rev() {
        for x in -radius..=radius {
            let v = c(x, y);
            let glyph = match last {
                Some(d) if d.attacked == v => '@',
                Some(d) if s.guarded(v) => {
                    // displacement that brought a guard here
                    let from_even = match d.field {
                        MoveField::Uniform(m) => m,
                        MoveField::ByParity { even, odd } => {
                            if (v - even).is_even() {
                                even
                            } else {
                                odd
                            }
                        }
                    };
                    arrow(from_even)
                }
                _ if s.guarded(v) => 'o',
                _ => '.',
            };
            out.push(glyph);
        }
        out.push('\n');
    }
    out
}

/// Standalone SVG drawing of the window: grid edges, guards filled.
pub fn render_svg(s: &PatrolState, radius: i64) -> String {
    let cell = 20i64;
    let size = (2 * radius + 2) * cell;
    let pos = |v: Coord| ((v.x + radius + 1) * cell, (radius + 1 - v.y) * cell);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(out, r##"<g stroke="#bbb" stroke-width="1">"##);
    for y in -radius..=radius {
        for x in -radius..=radius {
            let v = c(x, y);
            for u in grid_neighbors(s.kind, v) {
                if u.cheb() <= radius && (u.x, u.y) > (v.x, v.y) {
                    let (x1, y1) = pos(v);
                    let (x2, y2) = pos(u);
                    let _ = writeln!(out, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
                }
            }
        }
    }
    let _ = writeln!(out, "</g>");
    for y in -radius..=radius {
        for x in -radius..=radius {
            let v = c(x, y);
            let (cx, cy) = pos(v);
            let fill = if s.guarded(v) { "black" } else { "white" };
            let _ = writeln!(
                out,
                r#"<circle cx="{cx}" cy="{cy}" r="4" fill="{fill}" stroke="black"/>"#
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neighbor_rules() {
        let o = Coord::ORIGIN;
        assert_eq!(
            grid_neighbors(GridKind::T4, o),
            vec![c(1, 0), c(-1, 0), c(0, 1), c(0, -1)]
        );
        assert_eq!(
            grid_neighbors(GridKind::T3, o),
            vec![c(0, 1), c(0, -1), c(1, 0)]
        );
        assert_eq!(
            grid_neighbors(GridKind::T3, c(1, 0)),
            vec![c(1, 1), c(1, -1), c(0, 0)]
        );
        let t6 = grid_neighbors(GridKind::T6, o);
        assert!(t6.contains(&c(1, 1)) && t6.contains(&c(-1, -1)) && !t6.contains(&c(1, -1)));
        for k in GridKind::ALL {
            assert_eq!(grid_neighbors(k, c(4, -7)).len(), k.degree());
        }
    }

    #[test]
    fn adjacency_is_symmetric() {
        for k in GridKind::ALL {
            for y in -3..=3 {
                for x in -3..=3 {
                    let v = c(x, y);
                    for u in grid_neighbors(k, v) {
                        assert!(is_adjacent(k, u, v), "{k} {v} {u}");
                    }
                }
            }
        }
    }

    #[test]
    fn membership_examples() {
        assert!(base_member(GridKind::T4, c(2, 1)));
        assert!(!base_member(GridKind::T4, c(1, 0)));
        assert!(base_member(GridKind::T3, c(-1, 0)));
        assert!(base_member(GridKind::T8, c(-3, 6)));
        assert!(base_member(GridKind::T6, c(3, 1)));
    }

    #[test]
    fn dominators() {
        let t4 = PatrolState::new(GridKind::T4);
        assert_eq!(unique_dominator(&t4, c(1, 0)).unwrap(), c(0, 0));
        assert_eq!(unique_dominator(&t4, c(3, 1)).unwrap(), c(2, 1));
        let t8 = PatrolState::new(GridKind::T8);
        assert_eq!(unique_dominator(&t8, c(1, 1)).unwrap(), c(0, 0));
    }

    #[test]
    fn defenses() {
        let (s, d) = grid_defend(&PatrolState::new(GridKind::T4), c(1, 0)).unwrap();
        assert_eq!(s.offset, c(1, 0));
        assert_eq!(d.field, MoveField::Uniform(c(1, 0)));
        let (s, _) = grid_defend(&PatrolState::new(GridKind::T6), c(0, 1)).unwrap();
        assert_eq!(s.offset, c(0, 1));
        let (s, d) = grid_defend(&PatrolState::new(GridKind::T3), c(0, 1)).unwrap();
        assert_eq!(s.offset, c(-1, -1));
        assert_eq!(
            d.field,
            MoveField::ByParity {
                even: c(0, 1),
                odd: c(0, -1)
            }
        );
        assert_eq!(
            grid_defend(&PatrolState::new(GridKind::T4), c(0, 0)),
            Err(Error::GuardedCell(c(0, 0)))
        );
    }

    #[test]
    fn every_t3_case_is_a_translate() {
        let s = PatrolState::new(GridKind::T3);
        for y in -9..=9 {
            for x in -9..=9 {
                let v = c(x, y);
                if s.guarded(v) {
                    continue;
                }
                let r = checked_defense(&s, v, 12).unwrap();
                assert!(r.valid(), "attack at {v}: {r:?}");
            }
        }
    }

    #[test]
    fn t3_rejects_odd_offsets() {
        assert!(PatrolState::with_offset(GridKind::T3, c(1, 0)).is_err());
        assert!(PatrolState::with_offset(GridKind::T4, c(1, 0)).is_ok());
    }

    #[test]
    fn window_reports() {
        for k in GridKind::ALL {
            let r = verify_window(&PatrolState::new(k), 12);
            assert!(r.ok(), "{k}: {r:?}");
            assert_eq!(r.interior_vertices, 23 * 23);
        }
        let r = verify_window(
            &PatrolState::with_offset(GridKind::T3, c(-1, -1)).unwrap(),
            12,
        );
        assert!(r.ok());
    }

    #[test]
    fn rendering() {
        let s = PatrolState::new(GridKind::T4);
        let text = render_window(&s, 2, None);
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|r| r.len() == 5));
        assert_eq!(rows[2].as_bytes()[2], b'o');
        assert_eq!(text, render_window(&s, 2, None));

        let t8 = render_window(&PatrolState::new(GridKind::T8), 3, None);
        for (row, line) in t8.lines().enumerate() {
            let y = 3 - row as i64;
            for (col, ch) in line.chars().enumerate() {
                let x = col as i64 - 3;
                assert_eq!(ch == 'o', x % 3 == 0 && y % 3 == 0);
            }
        }
        assert!(render_svg(&s, 2).starts_with("<svg"));
    }

    #[test]
    fn rendering_marks_last_move() {
        let s0 = PatrolState::new(GridKind::T4);
        let (s1, d) = grid_defend(&s0, c(1, 0)).unwrap();
        let text = render_window(&s1, 2, Some(&d));
        let rows: Vec<&str> = text.lines().collect();
        assert_eq!(rows[2].as_bytes()[3], b'@');
        assert!(text.contains('>'));
    }
}
