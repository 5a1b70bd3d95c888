//! Exponential-time ground-truth solvers used by tests, gadget verification
//! and the acceptance suite. Nothing here is called from the linear-time
//! solving path.

use crate::colouring::{Colouring, ColouringMode};
use crate::graph::{self, Graph};
use crate::reductions::NaeFormula;
use crate::solver::ProblemKind;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {n} {what}, oracle cap is {cap}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("search exceeded its node budget of {0}")]
    BudgetExhausted(u64),
}

/// Default vertex cap for [`brute_force`].
pub const BRUTE_FORCE_CAP: usize = 20;
/// Default vertex cap for [`max_independent_set`].
pub const MIS_CAP: usize = 40;
/// Default cap for [`count_3_colourings`].
pub const COUNT_CAP: u64 = 100_000_000;
/// Default variable cap for [`nae_brute`].
pub const NAE_CAP: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Colouring(Colouring),
    VertexSet(Vec<u32>),
    None,
}

/// Exact answer with the optimal value where one applies (minimum
/// transversal size, maximum independent-set size) and a deterministic
/// witness: the lexicographically least optimal one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub answer: bool,
    pub optimal: Option<usize>,
    pub witness: Witness,
}

/// Exact decision for any of the six problems by exhaustive search:
/// colouring problems enumerate proper 3-colourings and filter by mode;
/// transversal problems enumerate independent sets by increasing size with
/// a forest / bipartite remainder check, reporting the minimum size.
pub fn brute_force(
    g: &Graph,
    kind: ProblemKind,
    cap_n: usize,
) -> Result<OracleResult, OracleError> {
    if g.n() > cap_n {
        return Err(OracleError::CapExceeded {
            what: "vertices",
            n: g.n(),
            cap: cap_n,
        });
    }
    match kind {
        ProblemKind::ThreeCol | ProblemKind::Acyclic3Col | ProblemKind::Star3Col => {
            let mode = match kind {
                ProblemKind::ThreeCol => ColouringMode::Proper,
                ProblemKind::Acyclic3Col => ColouringMode::Acyclic,
                _ => ColouringMode::Star,
            };
            let found = find_mode_colouring(g, mode, &[], None, 1_000_000_000)?;
            Ok(OracleResult {
                answer: found.is_some(),
                optimal: None,
                witness: found.map(Witness::Colouring).unwrap_or(Witness::None),
            })
        }
        ProblemKind::NearBip => transversal_brute(g, Remainder::Forest, None),
        ProblemKind::Ifvs { k } => transversal_brute(g, Remainder::Forest, k),
        ProblemKind::Ioct { k } => transversal_brute(g, Remainder::Bipartite, k),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Remainder {
    Forest,
    Bipartite,
}

fn remainder_ok(g: &Graph, exclude: &[bool], need: Remainder) -> bool {
    let keep: Vec<bool> = exclude.iter().map(|&e| !e).collect();
    let (rest, _) = g.induced(&keep);
    match need {
        Remainder::Forest => graph::is_forest(&rest),
        Remainder::Bipartite => matches!(
            graph::bipartition(&rest),
            graph::Bipartiteness::Bipartite(_)
        ),
    }
}

/// Minimum independent transversal by searching sizes 0, 1, 2, ...; within
/// a size, candidate sets are enumerated in lexicographic order, so the
/// first hit is the lexicographically least optimal witness.
fn transversal_brute(
    g: &Graph,
    need: Remainder,
    k: Option<usize>,
) -> Result<OracleResult, OracleError> {
    let n = g.n();
    for size in 0..=n {
        let mut chosen: Vec<u32> = Vec::with_capacity(size);
        let mut mask = vec![false; n];
        if let Some(w) = pick(g, need, size, 0, &mut chosen, &mut mask) {
            let answer = k.map_or(true, |k| size <= k);
            return Ok(OracleResult {
                answer,
                optimal: Some(size),
                witness: Witness::VertexSet(w),
            });
        }
    }
    Ok(OracleResult {
        answer: false,
        optimal: None,
        witness: Witness::None,
    })
}

fn pick(
    g: &Graph,
    need: Remainder,
    size: usize,
    from: usize,
    chosen: &mut Vec<u32>,
    mask: &mut Vec<bool>,
) -> Option<Vec<u32>> {
    if chosen.len() == size {
        if remainder_ok(g, mask, need) {
            return Some(chosen.clone());
        }
        return None;
    }
    let remaining = size - chosen.len();
    if g.n() - from < remaining {
        return None;
    }
    for v in from..g.n() {
        if g.neighbours(v as u32)
            .iter()
            .any(|&w| mask[w as usize])
        {
            continue; // keep the set independent
        }
        chosen.push(v as u32);
        mask[v] = true;
        if let Some(w) = pick(g, need, size, v + 1, chosen, mask) {
            return Some(w);
        }
        chosen.pop();
        mask[v] = false;
    }
    None
}

/// Maximum independent-set size by branch and bound on `u128` vertex masks:
/// greedy initial bound, branching on a maximum-degree vertex, pruning by
/// the remaining-vertex count.
pub fn alpha(g: &Graph, cap_n: usize) -> Result<usize, OracleError> {
    let n = g.n();
    if n > cap_n || n > 128 {
        return Err(OracleError::CapExceeded {
            what: "vertices",
            n,
            cap: cap_n.min(128),
        });
    }
    let adj: Vec<u128> = (0..n)
        .map(|v| {
            g.neighbours(v as u32)
                .iter()
                .fold(0u128, |m, &w| m | 1 << w)
        })
        .collect();
    let full = if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    };
    let mut best = greedy_lower_bound(&adj, full);
    bb(&adj, full, 0, &mut best);
    Ok(best)
}

fn greedy_lower_bound(adj: &[u128], mut p: u128) -> usize {
    let mut size = 0;
    while p != 0 {
        // Take a minimum-degree vertex of the remainder.
        let mut pick = u32::MAX;
        let mut pick_deg = usize::MAX;
        let mut scan = p;
        while scan != 0 {
            let v = scan.trailing_zeros();
            scan &= scan - 1;
            let d = (adj[v as usize] & p).count_ones() as usize;
            if d < pick_deg {
                pick_deg = d;
                pick = v;
            }
        }
        size += 1;
        p &= !(adj[pick as usize] | 1 << pick);
    }
    size
}

fn bb(adj: &[u128], p: u128, current: usize, best: &mut usize) {
    if p == 0 {
        *best = (*best).max(current);
        return;
    }
    if current + p.count_ones() as usize <= *best {
        return;
    }
    // Branch on a maximum-degree vertex of the remainder.
    let mut pick = 0u32;
    let mut pick_deg = 0usize;
    let mut scan = p;
    while scan != 0 {
        let v = scan.trailing_zeros();
        scan &= scan - 1;
        let d = (adj[v as usize] & p).count_ones() as usize;
        if d >= pick_deg {
            pick_deg = d;
            pick = v;
        }
    }
    // Include first so isolated remainders resolve immediately.
    bb(adj, p & !(adj[pick as usize] | 1 << pick), current + 1, best);
    bb(adj, p & !(1 << pick), current, best);
}

/// Maximum independent set with the lexicographically least optimal
/// witness, built by greedily committing the earliest vertex that keeps the
/// optimum reachable.
pub fn max_independent_set(g: &Graph, cap_n: usize) -> Result<OracleResult, OracleError> {
    let target = alpha(g, cap_n)?;
    let n = g.n();
    let adj: Vec<u128> = (0..n)
        .map(|v| {
            g.neighbours(v as u32)
                .iter()
                .fold(0u128, |m, &w| m | 1 << w)
        })
        .collect();
    let full = if n == 128 {
        u128::MAX
    } else if n == 0 {
        0
    } else {
        (1u128 << n) - 1
    };
    let mut p = full;
    let mut witness = Vec::new();
    let mut have = 0usize;
    for v in 0..n as u32 {
        if p & (1 << v) == 0 {
            continue;
        }
        let after = p & !(adj[v as usize] | 1 << v);
        let mut best = greedy_lower_bound(&adj, after);
        bb(&adj, after, 0, &mut best);
        if have + 1 + best == target {
            witness.push(v);
            have += 1;
            p = after;
        } else {
            p &= !(1u128 << v);
        }
    }
    debug_assert_eq!(witness.len(), target);
    Ok(OracleResult {
        answer: true,
        optimal: Some(target),
        witness: Witness::VertexSet(witness),
    })
}

/// Exact count of proper 3-colourings via the enumerator in counting mode.
pub fn count_3_colourings(g: &Graph, cap: u64) -> Result<u64, crate::colouring::ColouringError> {
    crate::colouring::count_3_colourings_capped(g, cap)
}

/// Exhaustive not-all-equal satisfiability: assignments are scanned as
/// binary counters with variable 0 as the least significant bit, so the
/// returned witness is the first in that order.
pub fn nae_brute(
    phi: &NaeFormula,
    cap_vars: u32,
) -> Result<Option<Vec<bool>>, OracleError> {
    let n = phi.num_vars;
    if n > cap_vars {
        return Err(OracleError::CapExceeded {
            what: "variables",
            n: n as usize,
            cap: cap_vars as usize,
        });
    }
    for mask in 0u64..(1u64 << n) {
        let assignment: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        if phi.is_nae_satisfied(&assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

/// Searches for a 3-colouring passing the mode by backtracking with
/// incremental violation pruning: improper edges always, plus bichromatic
/// cycles (acyclic) or paths on four vertices inside a colour-class pair
/// (star).
///
/// `fixed` pins labels (useful to break colour symmetry on a triangle);
/// `order` optionally overrides the vertex order, letting callers keep
/// refutations local. The first colouring in search order is returned.
pub fn find_mode_colouring(
    g: &Graph,
    mode: ColouringMode,
    fixed: &[(u32, u8)],
    order: Option<&[u32]>,
    node_budget: u64,
) -> Result<Option<Colouring>, OracleError> {
    let n = g.n();
    if n == 0 {
        return Ok(Some(Colouring::new(Vec::new()).unwrap()));
    }
    let mut fixed_label = vec![0u8; n];
    for &(v, l) in fixed {
        fixed_label[v as usize] = l;
    }
    // Vertex order: fixed vertices first, then the caller's order or a BFS
    // from the first vertex, then any stragglers.
    let mut seq: Vec<u32> = fixed.iter().map(|&(v, _)| v).collect();
    let mut placed = vec![false; n];
    for &v in &seq {
        placed[v as usize] = true;
    }
    match order {
        Some(ord) => {
            for &v in ord {
                if !placed[v as usize] {
                    placed[v as usize] = true;
                    seq.push(v);
                }
            }
        }
        None => {
            let start = seq.first().copied().unwrap_or(0);
            let mut queue = vec![start];
            let mut seen = vec![false; n];
            seen[start as usize] = true;
            let mut head = 0;
            while head < queue.len() {
                let u = queue[head];
                head += 1;
                if !placed[u as usize] {
                    placed[u as usize] = true;
                    seq.push(u);
                }
                for &w in g.neighbours(u) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        queue.push(w);
                    }
                }
            }
        }
    }
    for v in 0..n as u32 {
        if !placed[v as usize] {
            seq.push(v);
        }
    }

    let mut labels = vec![0u8; n];
    let mut budget = node_budget;
    let mut stamp = vec![0u32; n];
    let mut clock = 0u32;
    let found = search(
        g,
        mode,
        &seq,
        &fixed_label,
        &mut labels,
        0,
        &mut budget,
        &mut stamp,
        &mut clock,
    )
    .map_err(|_| OracleError::BudgetExhausted(node_budget))?;
    Ok(found.then(|| Colouring::new(labels).unwrap()))
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: &Graph,
    mode: ColouringMode,
    seq: &[u32],
    fixed: &[u8],
    labels: &mut Vec<u8>,
    depth: usize,
    budget: &mut u64,
    stamp: &mut Vec<u32>,
    clock: &mut u32,
) -> Result<bool, OracleError> {
    if depth == seq.len() {
        return Ok(true);
    }
    let v = seq[depth];
    let candidates: Vec<u8> = if fixed[v as usize] != 0 {
        vec![fixed[v as usize]]
    } else {
        vec![1, 2, 3]
    };
    'label: for l in candidates {
        if *budget == 0 {
            return Err(OracleError::BudgetExhausted(0));
        }
        *budget -= 1;
        for &w in g.neighbours(v) {
            if labels[w as usize] == l {
                continue 'label;
            }
        }
        labels[v as usize] = l;
        let bad = match mode {
            ColouringMode::Proper => false,
            ColouringMode::Acyclic => creates_bichromatic_cycle(g, labels, v, stamp, clock),
            ColouringMode::Star => creates_bichromatic_p4(g, labels, v),
        };
        if !bad
            && search(
                g,
                mode,
                seq,
                fixed,
                labels,
                depth + 1,
                budget,
                stamp,
                clock,
            )?
        {
            return Ok(true);
        }
        labels[v as usize] = 0;
    }
    Ok(false)
}

/// After labelling `v`, does some colour-class pair now contain a cycle
/// through `v`? True iff two coloured neighbours of `v` in the pair were
/// already connected inside the pair subgraph.
fn creates_bichromatic_cycle(
    g: &Graph,
    labels: &[u8],
    v: u32,
    stamp: &mut Vec<u32>,
    clock: &mut u32,
) -> bool {
    let lv = labels[v as usize];
    for other in 1..=3u8 {
        if other == lv {
            continue;
        }
        let in_pair = |w: u32| {
            let l = labels[w as usize];
            (l == lv || l == other) && w != v
        };
        let nbrs: Vec<u32> = g
            .neighbours(v)
            .iter()
            .copied()
            .filter(|&w| in_pair(w))
            .collect();
        if nbrs.len() < 2 {
            continue;
        }
        *clock += 1;
        let tag = *clock;
        for &start in &nbrs {
            if stamp[start as usize] == tag {
                // Reached from an earlier neighbour: cycle through v.
                return true;
            }
            stamp[start as usize] = tag;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &w in g.neighbours(u) {
                    if in_pair(w) && stamp[w as usize] != tag {
                        stamp[w as usize] = tag;
                        stack.push(w);
                    }
                }
            }
        }
    }
    false
}

/// After labelling `v`, does some colour-class pair now contain a path on
/// four distinct vertices through `v`? Star forests are exactly the proper
/// pair subgraphs without such a path.
fn creates_bichromatic_p4(g: &Graph, labels: &[u8], v: u32) -> bool {
    let lv = labels[v as usize];
    for other in 1..=3u8 {
        if other == lv {
            continue;
        }
        let in_pair = |w: u32| {
            let l = labels[w as usize];
            l == lv || l == other
        };
        let pair_nbrs: Vec<u32> = g
            .neighbours(v)
            .iter()
            .copied()
            .filter(|&w| in_pair(w))
            .collect();
        // v as an endpoint: v - a - b - d.
        for &a in &pair_nbrs {
            for &b in g.neighbours(a) {
                if b == v || !in_pair(b) {
                    continue;
                }
                for &d in g.neighbours(b) {
                    if d != v && d != a && in_pair(d) {
                        return true;
                    }
                }
            }
        }
        // v in second position: a - v - b - d.
        if pair_nbrs.len() >= 2 {
            for &b in &pair_nbrs {
                for &d in g.neighbours(b) {
                    if d == v || !in_pair(d) {
                        continue;
                    }
                    // Need a third neighbour distinct from b and d.
                    if pair_nbrs.iter().any(|&a| a != b && a != d) {
                        return true;
                    }
                }
            }
        }
    }
    false
}
