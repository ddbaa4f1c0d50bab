//! Independent reference implementations for tests. Nothing here calls into
//! the library's enumeration, validity, matching or solver code; graphs are
//! handled as plain adjacency lists.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use eternal_core::{Graph, Kind};

pub type Adj = Vec<Vec<usize>>;

pub fn adjacency(g: &Graph) -> Adj {
    (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect()
}

fn support_connected(adj: &Adj, c: &[u8]) -> bool {
    let Some(start) = c.iter().position(|&x| x > 0) else {
        return false;
    };
    let mut seen = vec![false; c.len()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if c[u] > 0 && !seen[u] {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    (0..c.len()).all(|v| c[v] == 0 || seen[v])
}

/// Validity written straight from the definitions.
pub fn valid(adj: &Adj, c: &[u8], kind: Kind, connected: bool) -> bool {
    let ok = (0..c.len()).all(|v| {
        if c[v] > 0 {
            return true;
        }
        match kind {
            Kind::Domination => adj[v].iter().any(|&u| c[u] > 0),
            Kind::Roman => adj[v].iter().any(|&u| c[u] >= 2),
            Kind::Italian => adj[v].iter().map(|&u| c[u] as u32).sum::<u32>() >= 2,
        }
    });
    ok && (!connected || support_connected(adj, c))
}

/// Every vector in `{0..=cap}^n`, in odometer order.
pub fn all_vectors(n: usize, cap: u8) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; n];
    loop {
        out.push(cur.clone());
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if cur[i] < cap {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Minimum weight of a valid 0/1 (plain) or 0/1/2 (Roman, Italian) vector.
pub fn brute_static(adj: &Adj, kind: Kind, connected: bool) -> u32 {
    let cap = if kind == Kind::Domination { 1 } else { 2 };
    all_vectors(adj.len(), cap)
        .into_iter()
        .filter(|c| valid(adj, c, kind, connected))
        .map(|c| c.iter().map(|&x| x as u32).sum())
        .min()
        .expect("all-ones (or all-twos) is always valid on a connected graph")
}

/// Configurations reachable in one move, generated guard by guard: each unit
/// picks a destination in its closed neighborhood.
pub fn one_move(adj: &Adj, c: &[u8], cap: u8) -> HashSet<Vec<u8>> {
    let mut units = Vec::new();
    for (v, &k) in c.iter().enumerate() {
        units.extend(std::iter::repeat_n(v, k as usize));
    }
    let mut out = HashSet::new();
    let mut cur = vec![0u8; c.len()];
    fn rec(
        i: usize,
        units: &[usize],
        adj: &Adj,
        cap: u8,
        cur: &mut Vec<u8>,
        out: &mut HashSet<Vec<u8>>,
    ) {
        if i == units.len() {
            out.insert(cur.clone());
            return;
        }
        let v = units[i];
        for t in std::iter::once(v).chain(adj[v].iter().copied()) {
            if cur[t] < cap {
                cur[t] += 1;
                rec(i + 1, units, adj, cap, cur, out);
                cur[t] -= 1;
            }
        }
    }
    rec(0, &units, adj, cap, &mut cur, &mut out);
    out
}

pub fn effective_cap(kind: Kind, k: u32, stacking: bool) -> u8 {
    match kind {
        Kind::Domination if stacking => k as u8,
        Kind::Domination => 1,
        _ => 2,
    }
}

/// Retrograde analysis of the attacker's winning region. A configuration is
/// lost if it is invalid, or if some attack leaves only lost answers. Returns
/// the configurations that are never lost.
pub fn retrograde_safe(
    adj: &Adj,
    kind: Kind,
    connected: bool,
    k: u32,
    stacking: bool,
) -> Vec<Vec<u8>> {
    let cap = effective_cap(kind, k, stacking);
    let states: Vec<Vec<u8>> = all_vectors(adj.len(), cap)
        .into_iter()
        .filter(|c| c.iter().map(|&x| x as u32).sum::<u32>() == k)
        .collect();
    let moves: HashMap<Vec<u8>, HashSet<Vec<u8>>> = states
        .iter()
        .map(|c| (c.clone(), one_move(adj, c, cap)))
        .collect();
    let mut lost: HashSet<Vec<u8>> = states
        .iter()
        .filter(|c| !valid(adj, c, kind, connected))
        .cloned()
        .collect();
    loop {
        let mut grew = false;
        for c in &states {
            if lost.contains(c) {
                continue;
            }
            let attacker_wins = (0..c.len()).filter(|&a| c[a] == 0).any(|a| {
                moves[c]
                    .iter()
                    .filter(|r| r[a] > 0)
                    .all(|r| lost.contains(r))
            });
            if attacker_wins {
                lost.insert(c.clone());
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    let mut safe: Vec<Vec<u8>> = states.into_iter().filter(|c| !lost.contains(c)).collect();
    safe.sort_unstable_by(|a, b| b.cmp(a));
    safe
}

pub fn retrograde_number(
    adj: &Adj,
    kind: Kind,
    connected: bool,
    stacking: bool,
    k_max: u32,
) -> Option<u32> {
    (1..=k_max).find(|&k| !retrograde_safe(adj, kind, connected, k, stacking).is_empty())
}

/// Whether `a` and `b` are related by a permutation of vertices.
pub fn isomorphic(a: &Adj, b: &Adj) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let edge = |adj: &Adj, u: usize, v: usize| adj[u].contains(&v);
    loop {
        if (0..n).all(|u| (0..n).all(|v| edge(a, u, v) == edge(b, perm[u], perm[v]))) {
            return true;
        }
        // next permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| perm[i] < perm[i + 1])
        else {
            return false;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

/// Connected graphs on `n` vertices, one per isomorphism class.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut reps: Vec<(Adj, Graph)> = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        if !g.is_connected() {
            continue;
        }
        let adj = adjacency(&g);
        if reps.iter().all(|(r, _)| !isomorphic(r, &adj)) {
            reps.push((adj, g));
        }
    }
    reps.into_iter().map(|(_, g)| g).collect()
}

/// Grid pattern generated from the origin by its translation lattice: every
/// point reachable by steps of ±generators, plus the second coset on T3.
/// Returned as the set of points within Chebyshev radius `r`.
pub fn closure_pattern(grid: &str, r: i64) -> HashSet<(i64, i64)> {
    let (gens, cosets): (Vec<(i64, i64)>, Vec<(i64, i64)>) = match grid {
        "t4" => (vec![(1, -2), (2, 1)], vec![(0, 0)]),
        "t8" => (vec![(3, 0), (0, 3)], vec![(0, 0)]),
        "t6" => (vec![(3, 1), (1, -2)], vec![(0, 0)]),
        "t3" => (vec![(2, 2), (3, -1)], vec![(0, 0), (-1, 0)]),
        _ => panic!("unknown grid {grid}"),
    };
    let margin = 12;
    let bound = r + margin;
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert((0i64, 0i64));
    queue.push_back((0i64, 0i64));
    while let Some((x, y)) = queue.pop_front() {
        for &(dx, dy) in &gens {
            for s in [1, -1] {
                let p = (x + s * dx, y + s * dy);
                if p.0.abs() <= bound && p.1.abs() <= bound && seen.insert(p) {
                    queue.push_back(p);
                }
            }
        }
    }
    let mut out = HashSet::new();
    for &(x, y) in &seen {
        for &(cx, cy) in &cosets {
            let p = (x + cx, y + cy);
            if p.0.abs() <= r && p.1.abs() <= r {
                out.insert(p);
            }
        }
    }
    out
}

/// Fixed catalog of small connected graphs: paths, cycles, stars, cliques,
/// a few bipartite graphs and the house-with-chord example.
pub fn catalog() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push((format!("P{n}"), Graph::path(n)));
        out.push((format!("K{n}"), Graph::complete(n)));
    }
    for n in 3..=6 {
        out.push((format!("C{n}"), Graph::cycle(n)));
    }
    for l in 3..=5 {
        out.push((format!("S{l}"), Graph::star(l)));
    }
    out.push(("K2,3".into(), Graph::complete_bipartite(2, 3)));
    out.push(("K3,3".into(), Graph::complete_bipartite(3, 3)));
    out.push(("house".into(), Graph::house_with_chord()));
    out.push((
        "bull".into(),
        Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 4)]).unwrap(),
    ));
    out.push((
        "spider".into(),
        Graph::from_edges(6, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5)]).unwrap(),
    ));
    out
}
