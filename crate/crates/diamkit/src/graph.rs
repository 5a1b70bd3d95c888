//! Immutable simple undirected graphs with sorted adjacency lists, plus the
//! linear-time primitives the solvers build on: layering from a seed set,
//! bipartiteness with odd-cycle witnesses, forest and star-forest tests.
//!
//! Vertices are `0..n` internally and 1-based in files.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: expected header \"p <n> <m>\"")]
    MalformedHeader { line: usize },
    #[error("line {line}: malformed edge line")]
    MalformedEdge { line: usize },
    #[error("line {line}: vertex {v} out of range 1..={n}")]
    VertexOutOfRange { line: usize, v: i64, n: usize },
    #[error("line {line}: loop at vertex {v}")]
    Loop { line: usize, v: usize },
    #[error("line {line}: edge endpoints must satisfy u < v")]
    EdgeOrder { line: usize },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: usize, v: usize },
    #[error("header announces {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("seed set is empty")]
    EmptySeed,
    #[error("vertex {v} out of range for graph on {n} vertices")]
    BadVertex { v: usize, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is empty")]
    Empty,
}

/// Simple undirected graph. Neighbour lists are sorted ascending, adjacency
/// is symmetric, and there are no loops or parallel edges.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    m: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n(), self.m())
    }
}

impl Graph {
    /// Builds a graph from an edge list. Rejects loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            let (u, v) = (u as usize, v as usize);
            if u >= n {
                return Err(GraphError::BadVertex { v: u, n });
            }
            if v >= n {
                return Err(GraphError::BadVertex { v, n });
            }
            if u == v {
                return Err(GraphError::Loop { line: 0, v: u });
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge {
                    u,
                    v: w[0] as usize,
                });
            }
        }
        Ok(Self {
            adj,
            m: edges.len(),
        })
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, u: u32) -> usize {
        self.adj[u as usize].len()
    }

    pub fn neighbours(&self, u: u32) -> &[u32] {
        &self.adj[u as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        0..self.n() as u32
    }

    /// All edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = u as u32;
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Induced subgraph on the vertices with `keep[v] == true`. Returns the
    /// subgraph together with the original id of each new vertex.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<u32>) {
        debug_assert_eq!(keep.len(), self.n());
        let mut old_of = Vec::new();
        let mut new_of = vec![u32::MAX; self.n()];
        for v in 0..self.n() {
            if keep[v] {
                new_of[v] = old_of.len() as u32;
                old_of.push(v as u32);
            }
        }
        let mut adj = vec![Vec::new(); old_of.len()];
        let mut m = 0;
        for (new_u, &old_u) in old_of.iter().enumerate() {
            for &w in &self.adj[old_u as usize] {
                if keep[w as usize] {
                    adj[new_u].push(new_of[w as usize]);
                    if new_of[w as usize] > new_u as u32 {
                        m += 1;
                    }
                }
            }
        }
        (Graph { adj, m }, old_of)
    }

    /// Connected components, each sorted ascending, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.n()];
        let mut comps = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s as u32];
            seen[s] = true;
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head] as usize;
                head += 1;
                for &w in &self.adj[u] {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return false;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut cnt = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    cnt += 1;
                    stack.push(w);
                }
            }
        }
        cnt == self.n()
    }

    /// Parses the edge-list format: '#' comment lines, a header `p <n> <m>`,
    /// then exactly `m` lines `e <u> <v>` with `1 <= u < v <= n`.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut tok = trimmed.split_whitespace();
            match tok.next() {
                Some("p") if header.is_none() => {
                    let n = tok
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or(GraphError::MalformedHeader { line })?;
                    let m = tok
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or(GraphError::MalformedHeader { line })?;
                    if tok.next().is_some() {
                        return Err(GraphError::MalformedHeader { line });
                    }
                    header = Some((n, m));
                }
                Some("e") => {
                    let (n, _) = header.ok_or(GraphError::MalformedHeader { line })?;
                    let u = tok
                        .next()
                        .and_then(|t| t.parse::<i64>().ok())
                        .ok_or(GraphError::MalformedEdge { line })?;
                    let v = tok
                        .next()
                        .and_then(|t| t.parse::<i64>().ok())
                        .ok_or(GraphError::MalformedEdge { line })?;
                    if tok.next().is_some() {
                        return Err(GraphError::MalformedEdge { line });
                    }
                    for &x in &[u, v] {
                        if x < 1 || x as usize > n {
                            return Err(GraphError::VertexOutOfRange { line, v: x, n });
                        }
                    }
                    if u == v {
                        return Err(GraphError::Loop {
                            line,
                            v: u as usize,
                        });
                    }
                    if u > v {
                        return Err(GraphError::EdgeOrder { line });
                    }
                    edges.push((u as u32 - 1, v as u32 - 1));
                }
                _ => return Err(GraphError::MalformedHeader { line }),
            }
        }
        let (n, m) = header.ok_or(GraphError::MalformedHeader { line: 0 })?;
        if edges.len() != m {
            return Err(GraphError::EdgeCountMismatch {
                expected: m,
                found: edges.len(),
            });
        }
        Graph::from_edges(n, &edges)
    }

    /// Serializes to the edge-list format with edges in lexicographic order.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("p {} {}\n", self.n(), self.m()));
        for (u, v) in self.edges() {
            out.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        out
    }
}

/// The partition `N_0, ..., N_t` of the vertex set obtained by breadth-first
/// search from a seed set: `N_0` is the seed, and `N_i` holds the vertices at
/// distance `i` from it.
#[derive(Debug, Clone)]
pub struct Layering {
    pub seed: Vec<u32>,
    pub layers: Vec<Vec<u32>>,
    pub layer_of: Vec<u32>,
}

impl Layering {
    /// Index of the highest non-empty layer.
    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer(&self, i: usize) -> &[u32] {
        self.layers.get(i).map(|l| l.as_slice()).unwrap_or(&[])
    }
}

/// Partitions `V(G)` from `S` by a single breadth-first search with a virtual
/// super-source attached to every seed vertex. Linear time. Fails if some
/// vertex is unreachable from the seed, since the layers must partition `V`.
pub fn bfs_layering(g: &Graph, seed: &[u32]) -> Result<Layering, GraphError> {
    if seed.is_empty() {
        return Err(GraphError::EmptySeed);
    }
    let n = g.n();
    for &s in seed {
        if s as usize >= n {
            return Err(GraphError::BadVertex { v: s as usize, n });
        }
    }
    let mut seed: Vec<u32> = seed.to_vec();
    seed.sort_unstable();
    seed.dedup();

    let mut layer_of = vec![u32::MAX; n];
    let mut queue: Vec<u32> = seed.clone();
    for &s in &seed {
        layer_of[s as usize] = 0;
    }
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for &w in g.neighbours(u) {
            if layer_of[w as usize] == u32::MAX {
                layer_of[w as usize] = layer_of[u as usize] + 1;
                queue.push(w);
            }
        }
    }
    if queue.len() != n {
        return Err(GraphError::Disconnected);
    }
    let depth = layer_of.iter().copied().max().unwrap_or(0) as usize;
    let mut layers = vec![Vec::new(); depth + 1];
    for v in 0..n {
        layers[layer_of[v] as usize].push(v as u32);
    }
    Ok(Layering {
        seed,
        layers,
        layer_of,
    })
}

/// Maximum over vertex pairs of the shortest-path distance, computed by `n`
/// breadth-first searches. Quadratic; meant for verification, never for the
/// linear-time solving path.
pub fn diameter(g: &Graph) -> Result<usize, GraphError> {
    if g.n() == 0 {
        return Err(GraphError::Empty);
    }
    let mut best = 0;
    let mut dist = vec![u32::MAX; g.n()];
    let mut queue = Vec::with_capacity(g.n());
    for s in 0..g.n() as u32 {
        dist.fill(u32::MAX);
        dist[s as usize] = 0;
        queue.clear();
        queue.push(s);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &w in g.neighbours(u) {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[u as usize] + 1;
                    queue.push(w);
                }
            }
        }
        if queue.len() != g.n() {
            return Err(GraphError::Disconnected);
        }
        best = best.max(dist.iter().copied().max().unwrap() as usize);
    }
    Ok(best)
}

/// The two sides of a bipartite graph, with `|s1| >= |s2|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub s1: Vec<u32>,
    pub s2: Vec<u32>,
}

impl Bipartition {
    /// Side membership as a mask: `true` for vertices of `s2`.
    pub fn side_of(&self, n: usize) -> Vec<bool> {
        let mut side = vec![false; n];
        for &v in &self.s2 {
            side[v as usize] = true;
        }
        side
    }
}

/// Outcome of the linear-time bipartiteness test: either the two sides, or an
/// odd cycle as a witness.
#[derive(Debug, Clone)]
pub enum Bipartiteness {
    Bipartite(Bipartition),
    /// Vertices of an odd cycle, in cycle order. It is the fundamental cycle
    /// through the first conflicting edge in BFS order, so its length is at
    /// most `2 * diameter + 1`.
    OddCycle(Vec<u32>),
}

/// Two-colours `G` by BFS, component by component. Works on disconnected
/// input. Linear time.
pub fn bipartition(g: &Graph) -> Bipartiteness {
    let n = g.n();
    let mut colour = vec![u8::MAX; n];
    let mut parent = vec![u32::MAX; n];
    for root in 0..n as u32 {
        if colour[root as usize] != u8::MAX {
            continue;
        }
        colour[root as usize] = 0;
        let mut queue = vec![root];
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &w in g.neighbours(u) {
                if colour[w as usize] == u8::MAX {
                    colour[w as usize] = 1 - colour[u as usize];
                    parent[w as usize] = u;
                    queue.push(w);
                } else if colour[w as usize] == colour[u as usize] {
                    return Bipartiteness::OddCycle(fundamental_cycle(&parent, u, w));
                }
            }
        }
    }
    let mut s1: Vec<u32> = (0..n as u32).filter(|&v| colour[v as usize] == 0).collect();
    let mut s2: Vec<u32> = (0..n as u32).filter(|&v| colour[v as usize] == 1).collect();
    if s2.len() > s1.len() {
        std::mem::swap(&mut s1, &mut s2);
    }
    Bipartiteness::Bipartite(Bipartition { s1, s2 })
}

/// Cycle through edge `uv` and the BFS-tree paths to the lowest common
/// ancestor of `u` and `v`.
fn fundamental_cycle(parent: &[u32], u: u32, v: u32) -> Vec<u32> {
    let path_to_root = |mut x: u32| {
        let mut path = vec![x];
        while parent[x as usize] != u32::MAX {
            x = parent[x as usize];
            path.push(x);
        }
        path
    };
    let pu = path_to_root(u);
    let pv = path_to_root(v);
    // Strip the common suffix down to the LCA.
    let mut i = pu.len();
    let mut j = pv.len();
    while i > 1 && j > 1 && pu[i - 2] == pv[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle: Vec<u32> = pu[..i].to_vec();
    cycle.extend(pv[..j - 1].iter().rev());
    cycle
}

/// True iff the component count `p` satisfies `p = n - m`, which
/// characterizes forests. Linear time.
pub fn is_forest(g: &Graph) -> bool {
    if g.m() >= g.n() + 1 {
        return false;
    }
    let p = g.components().len();
    p + g.m() == g.n()
}

/// True iff `G` is a forest each component of which has diameter at most 2,
/// i.e. every component (a tree on `k` vertices) has maximum degree `k - 1`.
/// Linear time.
pub fn is_star_forest(g: &Graph) -> bool {
    if !is_forest(g) {
        return false;
    }
    for comp in g.components() {
        let max_deg = comp.iter().map(|&v| g.degree(v)).max().unwrap_or(0);
        if max_deg + 1 != comp.len() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn path(n: usize) -> Graph {
        let edges: Vec<(u32, u32)> = (0..n.saturating_sub(1))
            .map(|i| (i as u32, i as u32 + 1))
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub(crate) fn cycle(n: usize) -> Graph {
        let mut edges: Vec<(u32, u32)> = (0..n - 1).map(|i| (i as u32, i as u32 + 1)).collect();
        edges.push((0, n as u32 - 1));
        Graph::from_edges(n, &edges).unwrap()
    }

    pub(crate) fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    pub(crate) fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a as u32 {
            for v in 0..b as u32 {
                edges.push((u, a as u32 + v));
            }
        }
        Graph::from_edges(a + b, &edges).unwrap()
    }

    fn g2() -> Graph {
        crate::reductions::gd_family(2).unwrap()
    }

    #[test]
    fn parse_triangle() {
        let g = Graph::parse("p 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 3);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && g.has_edge(0, 2));
    }

    #[test]
    fn parse_rejects_loop() {
        let err = Graph::parse("p 2 1\ne 1 1\n").unwrap_err();
        assert!(matches!(err, GraphError::Loop { .. }));
    }

    #[test]
    fn parse_rejects_duplicate_and_out_of_range() {
        assert!(matches!(
            Graph::parse("p 2 2\ne 1 2\ne 1 2\n").unwrap_err(),
            GraphError::DuplicateEdge { .. }
        ));
        assert!(matches!(
            Graph::parse("p 2 1\ne 1 3\n").unwrap_err(),
            GraphError::VertexOutOfRange { .. }
        ));
        assert!(matches!(
            Graph::parse("p 2 1\ne 2 1\n").unwrap_err(),
            GraphError::EdgeOrder { .. }
        ));
        assert!(matches!(
            Graph::parse("p 3 2\ne 1 2\n").unwrap_err(),
            GraphError::EdgeCountMismatch { .. }
        ));
    }

    #[test]
    fn comments_are_skipped() {
        let g = Graph::parse("# a triangle\np 3 3\ne 1 2\n# middle\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn layering_seed_covers_graph() {
        let g = complete(3);
        let l = bfs_layering(&g, &[0, 1, 2]).unwrap();
        assert_eq!(l.layers.len(), 1);
        assert_eq!(l.layer(0), &[0, 1, 2]);
    }

    #[test]
    fn layering_path_distances() {
        let g = path(5);
        let l = bfs_layering(&g, &[0]).unwrap();
        assert_eq!(l.layers, vec![vec![0], vec![1], vec![2], vec![3], vec![4]]);
    }

    #[test]
    fn layering_gd2_from_central_triangle() {
        let g = g2();
        let l = bfs_layering(&g, &[0, 1, 2]).unwrap();
        assert_eq!(l.layer(0).len(), 3);
        assert_eq!(l.layer(1).len(), 6);
        assert_eq!(l.depth(), 1);
    }

    #[test]
    fn layering_rejects_bad_seeds() {
        let g = path(3);
        assert!(matches!(
            bfs_layering(&g, &[]).unwrap_err(),
            GraphError::EmptySeed
        ));
        assert!(matches!(
            bfs_layering(&g, &[7]).unwrap_err(),
            GraphError::BadVertex { .. }
        ));
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(&path(5)).unwrap(), 4);
        assert_eq!(diameter(&cycle(6)).unwrap(), 3);
        let g3 = crate::reductions::gd_family(3).unwrap();
        assert_eq!(diameter(&g3).unwrap(), 5);
    }

    #[test]
    fn diameter_rejects_disconnected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            diameter(&g).unwrap_err(),
            GraphError::Disconnected
        ));
    }

    #[test]
    fn bipartition_examples() {
        match bipartition(&cycle(6)) {
            Bipartiteness::Bipartite(bp) => {
                assert_eq!(bp.s1.len(), 3);
                assert_eq!(bp.s2.len(), 3);
            }
            _ => panic!("C_6 is bipartite"),
        }
        match bipartition(&cycle(5)) {
            Bipartiteness::OddCycle(w) => assert_eq!(w.len(), 5),
            _ => panic!("C_5 is not bipartite"),
        }
        match bipartition(&complete_bipartite(5, 3)) {
            Bipartiteness::Bipartite(bp) => {
                assert_eq!(bp.s1.len(), 5);
                assert_eq!(bp.s2.len(), 3);
            }
            _ => panic!("K_{{5,3}} is bipartite"),
        }
    }

    #[test]
    fn odd_cycle_witness_is_a_cycle() {
        for g in [cycle(5), cycle(7), complete(4), g2()] {
            if let Bipartiteness::OddCycle(w) = bipartition(&g) {
                assert!(w.len() % 2 == 1);
                let k = w.len();
                for i in 0..k {
                    assert!(g.has_edge(w[i], w[(i + 1) % k]));
                }
                let diam = diameter(&g).unwrap();
                assert!(w.len() <= 2 * diam + 1);
            } else {
                panic!("expected odd cycle");
            }
        }
    }

    #[test]
    fn forest_examples() {
        assert!(is_forest(&path(5)));
        assert!(!is_forest(&cycle(3)));
        // 2 P_3 + P_1
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        assert!(is_forest(&g));
    }

    #[test]
    fn star_forest_examples() {
        let k14 = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(is_star_forest(&k14));
        assert!(!is_star_forest(&path(4)));
        // K_{1,3} + P_2 + P_1
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (4, 5)]).unwrap();
        assert!(is_star_forest(&g));
    }

    /// Exhaustive check of the `p = n - m` criterion against a direct
    /// cycle-search oracle on all graphs with up to 6 vertices, plus a
    /// random sample at 7 and 8.
    #[test]
    fn forest_agrees_with_cycle_search() {
        fn has_cycle(n: usize, adj: &[Vec<u32>]) -> bool {
            let mut seen = vec![false; n];
            for s in 0..n {
                if seen[s] {
                    continue;
                }
                let mut stack = vec![(s as u32, u32::MAX)];
                seen[s] = true;
                while let Some((u, from)) = stack.pop() {
                    let mut skipped_parent = false;
                    for &w in &adj[u as usize] {
                        if w == from && !skipped_parent {
                            skipped_parent = true;
                            continue;
                        }
                        if seen[w as usize] {
                            return true;
                        }
                        seen[w as usize] = true;
                        stack.push((w, u));
                    }
                }
            }
            false
        }
        for n in 1..=6usize {
            let pairs: Vec<(u32, u32)> = (0..n as u32)
                .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
                .collect();
            for mask in 0..(1u32 << pairs.len()) {
                let edges: Vec<(u32, u32)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                let mut adj = vec![Vec::new(); n];
                for &(u, v) in &edges {
                    adj[u as usize].push(v);
                    adj[v as usize].push(u);
                }
                assert_eq!(is_forest(&g), !has_cycle(n, &adj));
            }
        }
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..4000 {
            let n = rng.random_range(7..=8usize);
            let g = crate::gen::random_graph(n, 0.3, &mut rng);
            let mut adj = vec![Vec::new(); n];
            for (u, v) in g.edges() {
                adj[u as usize].push(v);
                adj[v as usize].push(u);
            }
            assert_eq!(is_forest(&g), !has_cycle(n, &adj));
        }
    }

    #[test]
    fn diameter_consistent_with_layering() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.random_range(2..=9usize);
            let g = crate::gen::random_connected_graph(n, 0.3, &mut rng);
            let d = diameter(&g).unwrap();
            let mut max_depth = 0;
            for v in 0..n as u32 {
                let l = bfs_layering(&g, &[v]).unwrap();
                assert!(l.depth() <= d);
                max_depth = max_depth.max(l.depth());
            }
            assert_eq!(max_depth, d);
        }
    }

    proptest! {
        #[test]
        fn serialize_roundtrip(n in 1usize..12, seed in 0u64..200) {
            use rand::prelude::*;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = crate::gen::random_graph(n, 0.4, &mut rng);
            let text = g.serialize();
            let back = Graph::parse(&text).unwrap();
            prop_assert!(back == g);
        }

        #[test]
        fn layering_partitions_and_respects_adjacency(n in 1usize..10, seed in 0u64..200) {
            use rand::prelude::*;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = crate::gen::random_connected_graph(n, 0.4, &mut rng);
            let k = rng.random_range(1..=n);
            let mut s: Vec<u32> = (0..n as u32).collect();
            s.shuffle(&mut rng);
            s.truncate(k);
            let l = bfs_layering(&g, &s).unwrap();
            let mut count = 0;
            for (i, layer) in l.layers.iter().enumerate() {
                count += layer.len();
                for &v in layer {
                    prop_assert_eq!(l.layer_of[v as usize] as usize, i);
                    if i >= 1 {
                        prop_assert!(g.neighbours(v).iter().any(|&w| l.layer_of[w as usize] as usize == i - 1));
                        prop_assert!(g.neighbours(v).iter().all(|&w| l.layer_of[w as usize] as usize + 1 >= i));
                    }
                }
            }
            prop_assert_eq!(count, n);
        }
    }
}
