//! Instance generators for tests, the randomized suites and the command
//! line: random (connected, chair-free) graphs, complexes, and a few named
//! graphs.

use crate::graph::Graph;
use crate::pattern;
use rand::prelude::*;

/// Erdos-Renyi style random simple graph.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are simple")
}

/// Random connected graph: a random spanning tree plus density-`p` extras.
pub fn random_connected_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    assert!(n >= 1);
    let mut edges = Vec::new();
    let mut present = std::collections::HashSet::new();
    for v in 1..n as u32 {
        let u = rng.random_range(0..v);
        edges.push((u, v));
        present.insert((u, v));
    }
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if !present.contains(&(u, v)) && rng.random_bool(p) {
                edges.push((u, v));
                present.insert((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are simple")
}

/// Random connected chair-free graph: a random connected graph repaired by
/// completing edges inside chair witnesses until none remain. Each repair
/// only adds edges, so connectivity is preserved and the loop terminates.
pub fn random_chair_free_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = random_connected_graph(n, p, rng);
    loop {
        match pattern::chair_witness(&g) {
            None => return g,
            Some(w) => {
                let missing: Vec<(u32, u32)> = (0..5)
                    .flat_map(|i| ((i + 1)..5).map(move |j| (i, j)))
                    .filter(|&(i, j)| !g.has_edge(w.map[i], w.map[j]))
                    .map(|(i, j)| {
                        let (a, b) = (w.map[i], w.map[j]);
                        (a.min(b), a.max(b))
                    })
                    .collect();
                let &(a, b) = missing.choose(rng).expect("a chair has non-edges");
                let mut edges: Vec<(u32, u32)> = g.edges().collect();
                edges.push((a, b));
                g = Graph::from_edges(g.n(), &edges).expect("adding a non-edge keeps it simple");
            }
        }
    }
}

/// Complete bipartite graph on parts of sizes `n1` and `n2` minus a
/// matching of the given size: the i-th vertices of both sides are matched.
pub fn complex(n1: usize, n2: usize, matching: usize) -> Graph {
    assert!(matching <= n1.min(n2));
    let mut edges = Vec::new();
    for u in 0..n1 as u32 {
        for v in 0..n2 as u32 {
            if (u as usize) < matching && u == v {
                continue;
            }
            edges.push((u, n1 as u32 + v));
        }
    }
    Graph::from_edges(n1 + n2, &edges).expect("simple")
}

/// The Petersen graph.
pub fn petersen() -> Graph {
    let edges = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (0, 4),
        (0, 5),
        (1, 6),
        (2, 7),
        (3, 8),
        (4, 9),
        (5, 7),
        (7, 9),
        (9, 6),
        (6, 8),
        (8, 5),
    ];
    Graph::from_edges(10, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chair_free_generator_output_is_chair_free_and_connected() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..60 {
            let n = rng.random_range(1..=10usize);
            let g = random_chair_free_connected(n, 0.3, &mut rng);
            assert!(g.is_connected());
            assert!(pattern::is_chair_free(&g));
        }
    }

    #[test]
    fn complex_shape() {
        let g = complex(5, 3, 2);
        assert_eq!(g.n(), 8);
        assert_eq!(g.m(), 13);
        assert!(pattern::is_chair_free(&g));
    }
}
