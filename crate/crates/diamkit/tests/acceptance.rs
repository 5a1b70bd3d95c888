//! Acceptance suite: one test per criterion, each printing a pass line.
//! Run with `cargo test --test acceptance -- --nocapture` to see them.

use diamkit::colouring::ColouringMode;
use diamkit::graph::{self, Graph};
use diamkit::oracle;
use diamkit::pattern::{self, PatternSpec};
use diamkit::reductions::{self, ClaimStatus, Lit, NaeFormula, VerifyCaps};
use diamkit::solver::{self, ProblemKind, SolveError};
use diamkit::{colouring, gen};
use num_bigint::BigUint;
use rand::prelude::*;
use std::time::{Duration, Instant};

/// Runs `f` on every connected chair-free graph with up to `max_n` vertices
/// (all labelled graphs), then on `random_count` random connected
/// chair-free graphs with up to `random_max_n` vertices.
fn for_each_corpus_graph(
    max_n: usize,
    random_count: usize,
    random_max_n: usize,
    mut f: impl FnMut(&Graph),
) {
    for n in 1..=max_n {
        let pairs: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
            .collect();
        for mask in 0u32..(1u32 << pairs.len()) {
            // Cheap connectivity prefilter on adjacency bitmasks.
            let mut adj = [0u8; 8];
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    adj[u as usize] |= 1 << v;
                    adj[v as usize] |= 1 << u;
                }
            }
            let mut seen: u8 = 1;
            let mut frontier: u8 = 1;
            while frontier != 0 {
                let mut next: u8 = 0;
                let mut fr = frontier;
                while fr != 0 {
                    let v = fr.trailing_zeros() as usize;
                    fr &= fr - 1;
                    next |= adj[v];
                }
                frontier = next & !seen;
                seen |= next;
            }
            if seen.count_ones() as usize != n {
                continue;
            }
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            if n >= 5 && !pattern::is_chair_free(&g) {
                continue;
            }
            f(&g);
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xD1A117);
    for _ in 0..random_count {
        let n = rng.random_range(4..=random_max_n);
        let density = rng.random_range(0.2..0.7);
        let g = gen::random_chair_free_connected(n, density, &mut rng);
        f(&g);
    }
}

fn oracle_kinds(n: usize) -> Vec<ProblemKind> {
    let mut kinds = vec![
        ProblemKind::ThreeCol,
        ProblemKind::Acyclic3Col,
        ProblemKind::Star3Col,
        ProblemKind::NearBip,
    ];
    for k in 0..=n {
        kinds.push(ProblemKind::Ifvs { k: Some(k) });
        kinds.push(ProblemKind::Ioct { k: Some(k) });
    }
    kinds
}

#[test]
fn criterion_01_oracle_equivalence() {
    let start = Instant::now();
    let mut graphs = 0u64;
    let mut checks = 0u64;
    for_each_corpus_graph(7, 500, 12, |g| {
        graphs += 1;
        let n = g.n();
        let d = graph::diameter(g).unwrap().max(1);
        // Transversal minima once per graph; individual k answers follow.
        let min_ifvs = oracle::brute_force(g, ProblemKind::Ifvs { k: None }, 20)
            .unwrap()
            .optimal;
        let min_ioct = oracle::brute_force(g, ProblemKind::Ioct { k: None }, 20)
            .unwrap()
            .optimal;
        for kind in oracle_kinds(n) {
            let want = match kind {
                ProblemKind::Ifvs { k: Some(k) } => min_ifvs.is_some_and(|m| m <= k),
                ProblemKind::Ioct { k: Some(k) } => min_ioct.is_some_and(|m| m <= k),
                ProblemKind::NearBip => min_ifvs.is_some(),
                other => oracle::brute_force(g, other, 20).unwrap().answer,
            };
            let got = solver::solve(g, d, kind).unwrap();
            assert_eq!(
                got.yes,
                want,
                "{kind:?} (d = {d}) disagrees on\n{}",
                g.serialize()
            );
            checks += 1;
        }
    });
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(600),
        "criterion 1 exceeded 10 minutes: {elapsed:?}"
    );
    println!(
        "criterion 1 (oracle equivalence): pass ({graphs} graphs, {checks} checks, {elapsed:?})"
    );
}

#[test]
fn criterion_02_extremal_family_counts() {
    let start = Instant::now();
    let expected: [u64; 3] = [6, 48, 3072];
    for (d, want) in (1u32..=3).zip(expected) {
        let g = reductions::gd_family(d).unwrap();
        let counted = oracle::count_3_colourings(&g, 100_000_000).unwrap();
        assert_eq!(counted, want, "level {d}");
        assert_eq!(
            BigUint::from(counted),
            reductions::gd_colouring_count(d).unwrap(),
            "closed form at level {d}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60));
    println!("criterion 2 (extremal family counts 6/48/3072): pass ({elapsed:?})");
}

#[test]
fn criterion_03_extremal_family_diameters() {
    let start = Instant::now();
    for d in 1u32..=5 {
        let g = reductions::gd_family(d).unwrap();
        assert_eq!(
            graph::diameter(&g).unwrap(),
            2 * d as usize - 1,
            "level {d}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60));
    println!("criterion 3 (family diameter 2d-1 for d <= 5): pass ({elapsed:?})");
}

#[test]
fn criterion_04_size_bound_invariant() {
    let start = Instant::now();
    let mut checked = 0u64;
    for_each_corpus_graph(7, 500, 12, |g| {
        if !oracle::brute_force(g, ProblemKind::ThreeCol, 20)
            .unwrap()
            .answer
        {
            return;
        }
        let t = match solver::find_triangle(g) {
            Ok(t) => t,
            // Bipartite graphs and long odd cycles carry no triangle.
            Err(SolveError::BipartiteInput) | Err(SolveError::ProcedureFailure) => return,
            Err(e) => panic!("{e}"),
        };
        let ctx = solver::triangle_context(g, &t).unwrap();
        let d = graph::diameter(g).unwrap();
        assert!(
            !ctx.exceeds_size_bound(d),
            "size bound violated at d = {d} on\n{}",
            g.serialize()
        );
        checked += 1;
    });
    let elapsed = start.elapsed();
    println!("criterion 4 (size bound, {checked} instances, zero violations): pass ({elapsed:?})");
}

#[test]
fn criterion_05_private_neighbour_invariant() {
    let start = Instant::now();
    let mut checked = 0u64;
    for_each_corpus_graph(7, 500, 12, |g| {
        let t = match solver::find_triangle(g) {
            Ok(t) => t,
            Err(_) => return,
        };
        let ctx = solver::triangle_context(g, &t).unwrap();
        let owners = (0..3).filter(|&i| !ctx.private[i].is_empty()).count();
        if owners < 2 {
            return;
        }
        if !oracle::brute_force(g, ProblemKind::ThreeCol, 20)
            .unwrap()
            .answer
        {
            return;
        }
        assert!(
            ctx.s.len() <= 6,
            "private set of size {} with {owners} owners on\n{}",
            ctx.s.len(),
            g.serialize()
        );
        checked += 1;
    });
    let elapsed = start.elapsed();
    println!(
        "criterion 5 (private-neighbour bound, {checked} instances, zero violations): pass ({elapsed:?})"
    );
}

#[test]
fn criterion_06_independent_set_reductions() {
    let start = Instant::now();
    // All connected triangle-free dominating-vertex-free graphs, n <= 6.
    let mut host_count = 0u64;
    for n in 2..=6usize {
        let pairs: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)))
            .collect();
        'mask: for mask in 0u32..(1u32 << pairs.len()) {
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            if !g.is_connected() {
                continue 'mask;
            }
            if g.vertices().any(|v| g.degree(v) == n - 1) {
                continue 'mask; // dominating vertex
            }
            if !pattern::is_free_of(&g, &PatternSpec::Complete(3)).unwrap() {
                continue 'mask;
            }
            host_count += 1;
            let out = reductions::build_is_diam2_trianglefree(&g).unwrap();
            let alpha_host = oracle::alpha(&g, 128).unwrap();
            let alpha_out = oracle::alpha(&out.graph, 128).unwrap();
            assert_eq!(alpha_out, alpha_host + n * n, "alpha on\n{}", g.serialize());
            assert!(pattern::is_free_of(&out.graph, &PatternSpec::Complete(3)).unwrap());
            assert!(graph::diameter(&out.graph).unwrap() <= 2);
        }
    }
    // The K_{1,4}-free gadget on the named hosts.
    let named: Vec<(&str, Graph)> = vec![
        ("C5", pattern::build_pattern(&PatternSpec::Cycle(5)).unwrap()),
        ("C6", pattern::build_pattern(&PatternSpec::Cycle(6)).unwrap()),
        ("C7", pattern::build_pattern(&PatternSpec::Cycle(7)).unwrap()),
        ("Petersen", gen::petersen()),
    ];
    for (name, g) in named {
        let out = reductions::build_is_diam2_k14free(&g).unwrap();
        let alpha_host = oracle::alpha(&g, 128).unwrap();
        let alpha_out = oracle::alpha(&out.graph, 128).unwrap();
        assert_eq!(alpha_out, alpha_host + 1, "alpha on {name}");
        assert!(
            pattern::is_free_of(&out.graph, &PatternSpec::Star(4)).unwrap(),
            "{name}"
        );
        assert_eq!(graph::diameter(&out.graph).unwrap(), 2, "{name}");
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(300),
        "criterion 6 exceeded 5 minutes: {elapsed:?}"
    );
    println!(
        "criterion 6 (independent-set reductions, {host_count} hosts + 4 named): pass ({elapsed:?})"
    );
}

fn random_formula<R: Rng>(max_vars: u32, max_clauses: usize, rng: &mut R) -> NaeFormula {
    let nv = rng.random_range(1..=max_vars);
    let m = rng.random_range(1..=max_clauses);
    let clauses: Vec<[Lit; 3]> = (0..m)
        .map(|_| {
            [0; 3].map(|_| Lit {
                var: rng.random_range(0..nv),
                positive: rng.random_bool(0.5),
            })
        })
        .collect();
    NaeFormula::new(nv, clauses).unwrap()
}

#[test]
fn criterion_07_variant_a_transformer() {
    let start = Instant::now();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7A7A);
    let mut done = 0;
    while done < 200 {
        let phi = random_formula(4, 5, &mut rng);
        let (out, coll) = reductions::to_variant_a(&phi);
        out.check_variant_a().expect("occurrence bound");
        coll.validate(&out).expect("collection validity");
        assert_eq!(coll.gamma(&out), 0, "covering");
        if out.num_vars > 20 {
            // Equivalence stays brute-checkable only below the cap; resample.
            continue;
        }
        let before = oracle::nae_brute(&phi, 24).unwrap().is_some();
        let after = oracle::nae_brute(&out, 24).unwrap().is_some();
        assert_eq!(before, after, "equivalence on {phi:?}");
        done += 1;
    }
    let elapsed = start.elapsed();
    println!("criterion 7 (variant-A transformer, 200 formulas): pass ({elapsed:?})");
}

/// Structural claims must pass; the equivalence claim must pass whenever
/// the instance is small enough that the criterion demands it.
fn assert_gadget_report(
    out: &reductions::GadgetOutput,
    caps: &VerifyCaps,
    require_equivalence: bool,
    label: &str,
) {
    let report = reductions::verify_gadget(out, caps);
    for (name, status) in &report.entries {
        let is_equiv = name.starts_with("NAE-satisfiable");
        match status {
            ClaimStatus::Pass => {}
            ClaimStatus::Fail(why) => panic!("{label}: claim '{name}' failed: {why}"),
            ClaimStatus::Skipped(why) => {
                if !is_equiv || require_equivalence {
                    panic!("{label}: claim '{name}' skipped ({why}) but required");
                }
            }
        }
    }
}

#[test]
fn criterion_08_hardness_gadgets() {
    let start = Instant::now();
    let caps = VerifyCaps::default();

    // The three figure instances.
    let phi_a = NaeFormula::new(
        3,
        vec![
            [Lit::pos(0), Lit::pos(1), Lit::pos(2)],
            [Lit::neg(0), Lit::neg(1), Lit::neg(2)],
            [Lit::pos(0), Lit::neg(1), Lit::neg(2)],
        ],
    )
    .unwrap();
    let ioct = reductions::build_ioct_gadget(&phi_a).unwrap();
    assert_gadget_report(&ioct, &caps, true, "figure ioct");
    let coll = reductions::CoveringCollection::parse(
        "pair 1 1\npair -1 2\npair 2 1\npair -2 3\npair 3 1\npair -3 2\n",
    )
    .unwrap();
    let acyclic = reductions::build_acyclic_gadget(&phi_a, &coll).unwrap();
    assert_gadget_report(&acyclic, &caps, true, "figure acyclic");
    let phi_b = NaeFormula::new(
        4,
        vec![
            [Lit::pos(0), Lit::pos(1), Lit::pos(2)],
            [Lit::pos(0), Lit::pos(2), Lit::pos(3)],
            [Lit::pos(1), Lit::pos(2), Lit::pos(3)],
        ],
    )
    .unwrap();
    let star = reductions::build_star_gadget(&phi_b).unwrap();
    assert_gadget_report(&star, &caps, true, "figure star");

    // Star certificate mapping, both directions, on the figure instance.
    let assignment = oracle::nae_brute(&phi_b, 24).unwrap().expect("satisfiable");
    let col = reductions::star_colouring_from_assignment(&star, &assignment).unwrap();
    assert!(colouring::verify_colouring(&star.graph, &col, ColouringMode::Star).unwrap());
    let back = reductions::assignment_from_star_colouring(&star, &col).unwrap();
    assert!(phi_b.is_nae_satisfied(&back));

    // Fifty random small formulas.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x6AD6E7);
    let mut count = 0;
    while count < 50 {
        let variant_b = count % 2 == 1;
        if variant_b {
            // All-positive formulas, one or two clauses, with an
            // unsatisfiable duplicate-literal instance thrown in.
            let phi = if count == 1 {
                NaeFormula::new(1, vec![[Lit::pos(0), Lit::pos(0), Lit::pos(0)]]).unwrap()
            } else {
                let nv = rng.random_range(1..=5u32);
                let m = rng.random_range(1..=2usize);
                let clauses = (0..m)
                    .map(|_| [0; 3].map(|_| Lit::pos(rng.random_range(0..nv))))
                    .collect();
                NaeFormula::new(nv, clauses).unwrap()
            };
            if phi.check_variant_b().is_err() {
                continue;
            }
            let out = reductions::build_star_gadget(&phi).unwrap();
            let require = phi.clauses.len() <= 2;
            assert_gadget_report(&out, &caps, require, "random star");
            // Certificate mapping for satisfiable instances.
            if let Some(a) = oracle::nae_brute(&phi, 24).unwrap() {
                let col = reductions::star_colouring_from_assignment(&out, &a).unwrap();
                assert!(
                    colouring::verify_colouring(&out.graph, &col, ColouringMode::Star).unwrap()
                );
                let back = reductions::assignment_from_star_colouring(&out, &col).unwrap();
                assert!(phi.is_nae_satisfied(&back));
            }
        } else {
            // Variant-A instances with distinct literals per clause; larger
            // ones exercise the structural claims only.
            let small = count % 4 == 0;
            let raw = if small {
                let nv = rng.random_range(3..=6u32);
                let m = rng.random_range(1..=2usize);
                let clauses = (0..m)
                    .map(|_| {
                        let mut vars: Vec<u32> = (0..nv).collect();
                        vars.shuffle(&mut rng);
                        [0, 1, 2].map(|i| Lit {
                            var: vars[i],
                            positive: rng.random_bool(0.5),
                        })
                    })
                    .collect();
                NaeFormula::new(nv, clauses).unwrap()
            } else {
                random_formula(4, 4, &mut rng)
            };
            // The transformer leaves already-compliant covered formulas
            // untouched and always yields a covering collection.
            let (phi, coll) = reductions::to_variant_a(&raw);
            let require = phi.clauses.len() <= 2;
            let ioct = reductions::build_ioct_gadget(&phi).unwrap();
            let ioct_require = require && ioct.graph.n() <= caps.oracle_n;
            assert_gadget_report(&ioct, &caps, ioct_require, "random ioct");
            if phi.check_distinct_literals().is_ok() {
                let acyclic = reductions::build_acyclic_gadget(&phi, &coll).unwrap();
                assert_gadget_report(&acyclic, &caps, require, "random acyclic");
            }
        }
        count += 1;
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(900),
        "criterion 8 exceeded 15 minutes: {elapsed:?}"
    );
    println!("criterion 8 (hardness gadgets, 3 figures + 50 random): pass ({elapsed:?})");
}

#[test]
fn criterion_09_two_list_colouring() {
    let start = Instant::now();
    // Agreement with exhaustive search on 1000 random instances.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x215A7);
    for _ in 0..1000 {
        let n = rng.random_range(1..=10usize);
        let g = gen::random_graph(n, 0.4, &mut rng);
        let lists: Vec<Vec<u8>> = (0..n)
            .map(|_| {
                let size = rng.random_range(1..=2usize);
                let mut ls: Vec<u8> = vec![1, 2, 3];
                ls.shuffle(&mut rng);
                ls.truncate(size);
                ls.sort_unstable();
                ls
            })
            .collect();
        let assignment = colouring::ListAssignment::from_lists(&lists).unwrap();
        let got = colouring::two_list_colouring(&g, &assignment).unwrap();
        let want = exhaustive_two_list(&g, &assignment);
        assert_eq!(got.is_some(), want);
        if let Some(c) = got {
            for v in 0..n as u32 {
                assert!(assignment.contains(v, c.label(v)));
            }
        }
    }

    // Linear scaling on chained instances.
    let time_chain = |n: usize| -> Duration {
        let g = {
            let edges: Vec<(u32, u32)> = (0..n as u32 - 1).map(|i| (i, i + 1)).collect();
            Graph::from_edges(n, &edges).unwrap()
        };
        let lists: Vec<Vec<u8>> = (0..n)
            .map(|v| if v == 0 { vec![1] } else { vec![1, 2] })
            .collect();
        let assignment = colouring::ListAssignment::from_lists(&lists).unwrap();
        let mut best = Duration::MAX;
        for _ in 0..5 {
            let t = Instant::now();
            let out = colouring::two_list_colouring(&g, &assignment).unwrap();
            assert!(out.is_some());
            best = best.min(t.elapsed());
        }
        best
    };
    let t1 = time_chain(100_000);
    let t2 = time_chain(200_000);
    let ratio = t2.as_secs_f64() / t1.as_secs_f64().max(1e-9);
    assert!(
        ratio <= 3.0,
        "doubling the chain scaled runtime by {ratio:.2} ({t1:?} -> {t2:?})"
    );
    let elapsed = start.elapsed();
    println!(
        "criterion 9 (two-list colouring, 1000 instances + scaling {ratio:.2}x): pass ({elapsed:?})"
    );
}

fn exhaustive_two_list(g: &Graph, lists: &colouring::ListAssignment) -> bool {
    fn rec(g: &Graph, lists: &colouring::ListAssignment, labels: &mut Vec<u8>, v: usize) -> bool {
        if v == g.n() {
            return true;
        }
        for l in 1..=3u8 {
            if !lists.contains(v as u32, l) {
                continue;
            }
            if g.neighbours(v as u32)
                .iter()
                .any(|&w| (w as usize) < v && labels[w as usize] == l)
            {
                continue;
            }
            labels[v] = l;
            if rec(g, lists, labels, v + 1) {
                return true;
            }
        }
        false
    }
    rec(g, lists, &mut vec![0; g.n()], 0)
}

#[test]
fn criterion_10_linear_bipartite_path() {
    let time_solve = |n: usize, kind: ProblemKind| -> Duration {
        let g = gen::complex(n, 3, 3);
        let mut best = Duration::MAX;
        for _ in 0..3 {
            let t = Instant::now();
            let a = solver::solve(&g, 3, kind).unwrap();
            assert!(a.yes);
            best = best.min(t.elapsed());
        }
        best
    };
    for kind in [ProblemKind::NearBip, ProblemKind::Ifvs { k: Some(2) }] {
        let t1 = time_solve(100_000, kind);
        assert!(
            t1 < Duration::from_secs(1),
            "{kind:?} took {t1:?} at n = 100000"
        );
        let t2 = time_solve(200_000, kind);
        let ratio = t2.as_secs_f64() / t1.as_secs_f64().max(1e-9);
        assert!(
            ratio <= 3.0,
            "{kind:?}: doubling n scaled runtime by {ratio:.2} ({t1:?} -> {t2:?})"
        );
        println!(
            "criterion 10 ({kind:?} at 100k in {t1:?}, doubling ratio {ratio:.2}): pass"
        );
    }
}
