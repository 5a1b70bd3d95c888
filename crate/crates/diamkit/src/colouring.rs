//! Colouring data model, the linear-time certificate verifiers, the
//! two-list-colouring solver (2-SAT over an implication graph with a
//! strongly-connected-component pass), and bounded enumeration of proper
//! 3-colourings.

use crate::graph::{self, Graph};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColouringError {
    #[error("colouring labels {found} vertices, graph has {expected}")]
    PartialLabelling { expected: usize, found: usize },
    #[error("invalid label {label} (labels are 1, 2, 3)")]
    InvalidLabel { label: u8 },
    #[error("list at vertex {v} has more than two admissible labels")]
    ListTooLarge { v: usize },
    #[error("colouring is not proper (edge {u}-{v} is monochromatic)")]
    Improper { u: usize, v: usize },
    #[error("enumeration exceeded cap of {cap}")]
    Overflow { cap: u64 },
    #[error("line {line}: malformed colouring file")]
    Parse { line: usize },
}

/// Default cap on enumerated 3-colourings.
pub const ENUMERATION_CAP: u64 = 10_000_000;

/// A total labelling of the vertices with labels 1, 2, 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colouring {
    labels: Vec<u8>,
}

impl Colouring {
    pub fn new(labels: Vec<u8>) -> Result<Self, ColouringError> {
        if let Some(&l) = labels.iter().find(|&&l| !(1..=3).contains(&l)) {
            return Err(ColouringError::InvalidLabel { label: l });
        }
        Ok(Self { labels })
    }

    pub fn label(&self, v: u32) -> u8 {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Vertices of the given colour class, ascending.
    pub fn class(&self, label: u8) -> Vec<u32> {
        (0..self.labels.len() as u32)
            .filter(|&v| self.labels[v as usize] == label)
            .collect()
    }

    pub fn class_size(&self, label: u8) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    /// Parses the colouring format: '#' comments, header `c <n>`, then `n`
    /// lines `v <vertex> <label>` covering every vertex exactly once.
    pub fn parse(text: &str) -> Result<Self, ColouringError> {
        let mut n: Option<usize> = None;
        let mut labels: Vec<u8> = Vec::new();
        let mut seen: Vec<bool> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let mut tok = t.split_whitespace();
            match tok.next() {
                Some("c") if n.is_none() => {
                    let k = tok
                        .next()
                        .and_then(|s| s.parse::<usize>().ok())
                        .ok_or(ColouringError::Parse { line })?;
                    n = Some(k);
                    labels = vec![0; k];
                    seen = vec![false; k];
                }
                Some("v") => {
                    let k = n.ok_or(ColouringError::Parse { line })?;
                    let v = tok
                        .next()
                        .and_then(|s| s.parse::<usize>().ok())
                        .ok_or(ColouringError::Parse { line })?;
                    let l = tok
                        .next()
                        .and_then(|s| s.parse::<u8>().ok())
                        .ok_or(ColouringError::Parse { line })?;
                    if v < 1 || v > k || seen[v - 1] {
                        return Err(ColouringError::Parse { line });
                    }
                    if !(1..=3).contains(&l) {
                        return Err(ColouringError::InvalidLabel { label: l });
                    }
                    seen[v - 1] = true;
                    labels[v - 1] = l;
                }
                _ => return Err(ColouringError::Parse { line }),
            }
        }
        let n = n.ok_or(ColouringError::Parse { line: 0 })?;
        let found = seen.iter().filter(|&&s| s).count();
        if found != n {
            return Err(ColouringError::PartialLabelling { expected: n, found });
        }
        Colouring::new(labels)
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("c {}\n", self.labels.len());
        for (v, l) in self.labels.iter().enumerate() {
            out.push_str(&format!("v {} {}\n", v + 1, l));
        }
        out
    }
}

/// What a 3-colouring must satisfy: proper, acyclic (every two colour
/// classes induce a forest) or star (a star forest).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColouringMode {
    Proper,
    Acyclic,
    Star,
}

/// Transversal flavour with an optional size bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransversalKind {
    pub kind: Transversal,
    pub k: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transversal {
    /// Independent feedback vertex set: the remainder must be a forest.
    Ifvs,
    /// Independent odd cycle transversal: the remainder must be bipartite.
    Ioct,
}

fn check_total(g: &Graph, c: &Colouring) -> Result<(), ColouringError> {
    if c.len() != g.n() {
        return Err(ColouringError::PartialLabelling {
            expected: g.n(),
            found: c.len(),
        });
    }
    Ok(())
}

fn is_proper(g: &Graph, c: &Colouring) -> bool {
    g.edges().all(|(u, v)| c.label(u) != c.label(v))
}

/// Verifies a labelling as a proper / acyclic / star 3-colouring in linear
/// time per mode.
pub fn verify_colouring(
    g: &Graph,
    c: &Colouring,
    mode: ColouringMode,
) -> Result<bool, ColouringError> {
    check_total(g, c)?;
    if !is_proper(g, c) {
        return Ok(false);
    }
    let check = |test: fn(&Graph) -> bool| -> bool {
        for a in 1..=3u8 {
            for b in a + 1..=3u8 {
                let keep: Vec<bool> = c
                    .labels()
                    .iter()
                    .map(|&l| l == a || l == b)
                    .collect();
                let (sub, _) = g.induced(&keep);
                if !test(&sub) {
                    return false;
                }
            }
        }
        true
    };
    Ok(match mode {
        ColouringMode::Proper => true,
        ColouringMode::Acyclic => check(graph::is_forest),
        ColouringMode::Star => check(graph::is_star_forest),
    })
}

/// Verifies that the chosen colour class is an independent feedback vertex
/// set / independent odd cycle transversal, within the size bound when one
/// is given. The colouring must be proper.
pub fn verify_transversal_class(
    g: &Graph,
    c: &Colouring,
    class_label: u8,
    kind: TransversalKind,
) -> Result<bool, ColouringError> {
    check_total(g, c)?;
    if let Some((u, v)) = g.edges().find(|&(u, v)| c.label(u) == c.label(v)) {
        return Err(ColouringError::Improper {
            u: u as usize,
            v: v as usize,
        });
    }
    let size = c.class_size(class_label);
    if let Some(k) = kind.k {
        if size > k {
            return Ok(false);
        }
    }
    let keep: Vec<bool> = c.labels().iter().map(|&l| l != class_label).collect();
    let (rest, _) = g.induced(&keep);
    Ok(match kind.kind {
        Transversal::Ifvs => graph::is_forest(&rest),
        Transversal::Ioct => matches!(
            graph::bipartition(&rest),
            graph::Bipartiteness::Bipartite(_)
        ),
    })
}

/// Per-vertex admissible label sets, encoded as bitmasks over labels 1..3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    masks: Vec<u8>,
}

impl ListAssignment {
    pub fn full(n: usize) -> Self {
        Self {
            masks: vec![0b111; n],
        }
    }

    pub fn from_lists(lists: &[Vec<u8>]) -> Result<Self, ColouringError> {
        let mut masks = vec![0u8; lists.len()];
        for (v, list) in lists.iter().enumerate() {
            for &l in list {
                if !(1..=3).contains(&l) {
                    return Err(ColouringError::InvalidLabel { label: l });
                }
                masks[v] |= 1 << (l - 1);
            }
        }
        Ok(Self { masks })
    }

    pub fn mask(&self, v: u32) -> u8 {
        self.masks[v as usize]
    }

    pub fn set(&mut self, v: u32, labels: &[u8]) {
        self.masks[v as usize] = labels.iter().fold(0, |m, &l| m | 1 << (l - 1));
    }

    pub fn size(&self, v: u32) -> usize {
        self.masks[v as usize].count_ones() as usize
    }

    pub fn contains(&self, v: u32, label: u8) -> bool {
        self.masks[v as usize] >> (label - 1) & 1 == 1
    }

    pub fn labels_of(&self, v: u32) -> Vec<u8> {
        (1..=3).filter(|&l| self.contains(v, l)).collect()
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }
}

/// Solves 2-list colouring: a proper colouring respecting lists of size at
/// most two, or `None`. Empty lists make the instance unsatisfiable; lists
/// of size three are rejected. Singleton lists are handled by unit
/// propagation, the rest by 2-SAT over an implication graph analysed with a
/// linear strongly-connected-component pass. Linear in `n + m`.
pub fn two_list_colouring(
    g: &Graph,
    lists: &ListAssignment,
) -> Result<Option<Colouring>, ColouringError> {
    let n = g.n();
    if lists.len() != n {
        return Err(ColouringError::PartialLabelling {
            expected: n,
            found: lists.len(),
        });
    }
    if let Some(v) = (0..n as u32).find(|&v| lists.size(v) > 2) {
        return Err(ColouringError::ListTooLarge { v: v as usize });
    }

    let mut mask: Vec<u8> = (0..n as u32).map(|v| lists.mask(v)).collect();
    // Unit propagation on singleton lists.
    let mut queue: Vec<u32> = (0..n as u32)
        .filter(|&v| mask[v as usize].count_ones() == 1)
        .collect();
    let mut queued: Vec<bool> = (0..n).map(|v| mask[v].count_ones() == 1).collect();
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let bit = mask[u as usize];
        for &w in g.neighbours(u) {
            let before = mask[w as usize];
            let after = before & !bit;
            if after == 0 {
                return Ok(None);
            }
            if after != before {
                mask[w as usize] = after;
                if after.count_ones() == 1 && !queued[w as usize] {
                    queued[w as usize] = true;
                    queue.push(w);
                }
            }
        }
    }
    if mask.iter().any(|&m| m == 0) {
        return Ok(None);
    }

    // 2-SAT over the remaining two-label vertices. Variable v true picks
    // option 1 (the higher label), false picks option 0.
    let mut var_of = vec![u32::MAX; n];
    let mut options: Vec<[u8; 2]> = Vec::new();
    for v in 0..n {
        if mask[v].count_ones() == 2 {
            var_of[v] = options.len() as u32;
            let labels: Vec<u8> = (1..=3).filter(|&l| mask[v] >> (l - 1) & 1 == 1).collect();
            options.push([labels[0], labels[1]]);
        }
    }
    let nv = options.len();
    let mut sat = TwoSat::new(nv);
    for (u, v) in g.edges() {
        let (iu, iv) = (var_of[u as usize], var_of[v as usize]);
        if iu == u32::MAX || iv == u32::MAX {
            continue; // settled by propagation
        }
        for (au, &lu) in options[iu as usize].iter().enumerate() {
            for (av, &lv) in options[iv as usize].iter().enumerate() {
                if lu == lv {
                    // not both: (¬pick_u_au) or (¬pick_v_av)
                    sat.add_clause(iu, au == 0, iv, av == 0);
                }
            }
        }
    }
    let assignment = match sat.solve() {
        Some(a) => a,
        None => return Ok(None),
    };
    let mut labels = vec![0u8; n];
    for v in 0..n {
        labels[v] = if mask[v].count_ones() == 1 {
            mask[v].trailing_zeros() as u8 + 1
        } else {
            let var = var_of[v] as usize;
            options[var][assignment[var] as usize]
        };
    }
    let c = Colouring::new(labels)?;
    debug_assert!(is_proper(g, &c));
    Ok(Some(c))
}

/// Implication-graph 2-SAT with an iterative Tarjan pass.
struct TwoSat {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl TwoSat {
    fn new(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
        }
    }

    fn node(&self, var: u32, value: bool) -> u32 {
        var * 2 + value as u32
    }

    /// Adds the clause (var a = va) or (var b = vb).
    fn add_clause(&mut self, a: u32, va: bool, b: u32, vb: bool) {
        self.edges.push((self.node(a, !va), self.node(b, vb)));
        self.edges.push((self.node(b, !vb), self.node(a, va)));
    }

    /// Returns the assignment picking, for each variable, the literal whose
    /// component comes later in topological order.
    fn solve(&self) -> Option<Vec<bool>> {
        let n_nodes = self.n * 2;
        let mut adj_head = vec![u32::MAX; n_nodes];
        let mut adj_next = vec![u32::MAX; self.edges.len()];
        let mut adj_to = vec![0u32; self.edges.len()];
        for (i, &(from, to)) in self.edges.iter().enumerate() {
            adj_to[i] = to;
            adj_next[i] = adj_head[from as usize];
            adj_head[from as usize] = i as u32;
        }
        let comp = tarjan_scc(n_nodes, &adj_head, &adj_next, &adj_to);
        let mut out = vec![false; self.n];
        for v in 0..self.n as u32 {
            let c_false = comp[self.node(v, false) as usize];
            let c_true = comp[self.node(v, true) as usize];
            if c_false == c_true {
                return None;
            }
            // Tarjan numbers components in reverse topological order, so the
            // smaller index is closer to the sinks and is the safe pick.
            out[v as usize] = c_true < c_false;
        }
        Some(out)
    }
}

/// Iterative Tarjan; returns the component index of every node, numbered in
/// reverse topological order of the condensation.
fn tarjan_scc(n: usize, adj_head: &[u32], adj_next: &[u32], adj_to: &[u32]) -> Vec<u32> {
    const UNSET: u32 = u32::MAX;
    let mut comp = vec![UNSET; n];
    let mut low = vec![0u32; n];
    let mut disc = vec![UNSET; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut call: Vec<(u32, u32)> = Vec::new(); // (node, next edge cursor)
    let mut timer = 0u32;
    let mut n_comp = 0u32;

    for s in 0..n as u32 {
        if disc[s as usize] != UNSET {
            continue;
        }
        call.push((s, adj_head[s as usize]));
        disc[s as usize] = timer;
        low[s as usize] = timer;
        timer += 1;
        stack.push(s);
        on_stack[s as usize] = true;
        loop {
            let (u, edge) = match call.last_mut() {
                Some(top) => {
                    let u = top.0;
                    let e = top.1;
                    if e != UNSET {
                        top.1 = adj_next[e as usize];
                    }
                    (u, e)
                }
                None => break,
            };
            if edge != UNSET {
                let w = adj_to[edge as usize];
                if disc[w as usize] == UNSET {
                    disc[w as usize] = timer;
                    low[w as usize] = timer;
                    timer += 1;
                    stack.push(w);
                    on_stack[w as usize] = true;
                    call.push((w, adj_head[w as usize]));
                } else if on_stack[w as usize] {
                    low[u as usize] = low[u as usize].min(disc[w as usize]);
                }
            } else {
                call.pop();
                if low[u as usize] == disc[u as usize] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w as usize] = false;
                        comp[w as usize] = n_comp;
                        if w == u {
                            break;
                        }
                    }
                    n_comp += 1;
                }
                if let Some(top) = call.last_mut() {
                    let p = top.0;
                    low[p as usize] = low[p as usize].min(low[u as usize]);
                }
            }
        }
    }
    comp
}

/// Calls `f` on every proper 3-colouring of `g`, in lexicographic label
/// order (vertices by index, labels ascending). Errors out once more than
/// `cap` colourings have been produced.
pub fn for_each_3_colouring<F: FnMut(&[u8])>(
    g: &Graph,
    cap: u64,
    mut f: F,
) -> Result<u64, ColouringError> {
    let n = g.n();
    let mut labels = vec![0u8; n];
    let mut count = 0u64;
    // Backtracking over proper extensions only: identical result to
    // filtering all 3^n labellings, exponentially cheaper in practice.
    fn rec<F: FnMut(&[u8])>(
        g: &Graph,
        labels: &mut Vec<u8>,
        v: usize,
        cap: u64,
        count: &mut u64,
        f: &mut F,
    ) -> Result<(), ColouringError> {
        if v == g.n() {
            if *count >= cap {
                return Err(ColouringError::Overflow { cap });
            }
            *count += 1;
            f(labels);
            return Ok(());
        }
        'next: for l in 1..=3u8 {
            for &w in g.neighbours(v as u32) {
                if (w as usize) < v && labels[w as usize] == l {
                    continue 'next;
                }
            }
            labels[v] = l;
            rec(g, labels, v + 1, cap, count, f)?;
        }
        labels[v] = 0;
        Ok(())
    }
    rec(g, &mut labels, 0, cap, &mut count, &mut f)?;
    Ok(count)
}

/// All proper 3-colourings of `g`, in deterministic order; errors with an
/// overflow once the count exceeds `cap`.
pub fn enumerate_3_colourings(g: &Graph, cap: u64) -> Result<Vec<Colouring>, ColouringError> {
    let mut out = Vec::new();
    for_each_3_colouring(g, cap, |labels| {
        out.push(Colouring {
            labels: labels.to_vec(),
        })
    })?;
    Ok(out)
}

/// Number of proper 3-colourings, up to `cap`.
pub fn count_3_colourings_capped(g: &Graph, cap: u64) -> Result<u64, ColouringError> {
    for_each_3_colouring(g, cap, |_| {})
}
