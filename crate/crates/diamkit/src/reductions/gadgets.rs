//! Generators for the hardness constructions: the two diameter-2
//! independent-set gadgets, the dominating-vertex wrapper, the edge
//! substitution utility, and the three gadgets reducing not-all-equal
//! satisfiability to independent odd cycle transversal, acyclic 3-colouring
//! and star 3-colouring.

use super::nae::{CoveringCollection, Lit, NaeFormula};
use crate::colouring::Colouring;
use crate::graph::Graph;
use crate::pattern::PatternSpec;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GadgetError {
    #[error("input graph must be connected")]
    NotConnected,
    #[error("input graph contains a triangle")]
    NotTriangleFree,
    #[error("input graph contains an induced K_1_4")]
    NotK14Free,
    #[error("input graph has a dominating vertex {0}")]
    DominatingVertex(u32),
    #[error("input graph needs at least 2 vertices")]
    TooSmall,
    #[error("substituted edges must form a matching (vertex {0} repeats)")]
    NotAMatching(u32),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(u32, u32),
    #[error("an edge is listed twice for substitution")]
    DuplicateSubstitution,
    #[error("formula error: {0}")]
    Formula(#[from] super::nae::NaeError),
    #[error("gadget size guard tripped: {0}")]
    SizeGuard(String),
}

/// Roles of the vertices a gadget builder creates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Role {
    /// Copy of an input-graph vertex.
    Host(u32),
    /// Vertex joined to a maximal independent set containing the
    /// nonadjacent pair (u, v).
    PairVertex(u32, u32),
    /// Vertex joined to the endpoints of the disjoint edges e1, e2.
    EdgePairVertex((u32, u32), (u32, u32)),
    /// Member of the large independent set fully joined to the pair
    /// vertices.
    YVertex(u32),
    /// Vertex completing the edge-pair vertices to a clique.
    CliqueApex,
    /// Dominating vertex added on top of a host graph.
    Dominating,
    /// Literal vertex.
    Variable { var: u32, positive: bool },
    /// Apex vertex; 0 is the hub, 1 and 2 its triangle partners.
    Apex(u8),
    /// Clause-triangle vertex for 0-based clause and slot.
    Clause { clause: u32, slot: u8 },
    /// Ladder vertex p^j / q^j of a variable, 1-based j.
    LadderP { var: u32, j: u8 },
    LadderQ { var: u32, j: u8 },
    /// Internal vertex created by substituting the recorded edge.
    Substitution { u: u32, v: u32 },
}

/// Structural guarantees a builder records for later verification.
#[derive(Debug, Clone, Default)]
pub struct Claims {
    pub diameter_at_most: Option<usize>,
    pub triangle_free: bool,
    pub forbidden_pattern: Option<PatternSpec>,
    /// alpha(gadget) = alpha(core) + offset.
    pub alpha_core_plus: Option<usize>,
    pub equivalence: Option<Equivalence>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Equivalence {
    /// NAE-satisfiable iff an independent odd cycle transversal of size `k`
    /// exists.
    IoctAtK,
    /// NAE-satisfiable iff acyclically 3-colourable.
    Acyclic3Col,
    /// NAE-satisfiable iff star 3-colourable.
    Star3Col,
}

/// A generated gadget: the graph, its target parameter, a total vertex-role
/// map, the claimed structure, and the source instance needed to check the
/// claims.
#[derive(Debug, Clone)]
pub struct GadgetOutput {
    pub graph: Graph,
    pub k: Option<usize>,
    pub roles: Vec<Role>,
    pub claims: Claims,
    pub source_formula: Option<NaeFormula>,
    /// Core graph the alpha claim refers to (after any preprocessing).
    pub core: Option<Graph>,
    /// Independent-set offset accumulated by degree-one preprocessing.
    pub preprocessing_offset: usize,
}

fn triangle_exists(g: &Graph) -> bool {
    for (u, v) in g.edges() {
        let (a, b) = (g.neighbours(u), g.neighbours(v));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
    }
    false
}

fn dominating_vertex(g: &Graph) -> Option<u32> {
    g.vertices().find(|&v| g.degree(v) == g.n() - 1)
}

/// Builds the diameter-2 triangle-free independent-set gadget: a copy of
/// `g`; for every nonadjacent pair a greedily maximal independent set
/// containing it, joined to a fresh vertex; and an independent set of `n^2`
/// vertices joined to all those fresh vertices. Guarantees alpha(G') =
/// alpha(G) + n^2.
pub fn build_is_diam2_trianglefree(g: &Graph) -> Result<GadgetOutput, GadgetError> {
    let n = g.n();
    if n < 2 {
        return Err(GadgetError::TooSmall);
    }
    if !g.is_connected() {
        return Err(GadgetError::NotConnected);
    }
    if triangle_exists(g) {
        return Err(GadgetError::NotTriangleFree);
    }
    if let Some(v) = dominating_vertex(g) {
        return Err(GadgetError::DominatingVertex(v));
    }
    let mut edges: Vec<(u32, u32)> = g.edges().collect();
    let mut roles: Vec<Role> = g.vertices().map(Role::Host).collect();
    let mut next = n as u32;
    let mut pair_vertices = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if g.has_edge(u, v) {
                continue;
            }
            // Greedy maximal independent set containing {u, v}, by
            // ascending vertex index.
            let mut set = vec![u, v];
            for w in 0..n as u32 {
                if w == u || w == v {
                    continue;
                }
                if set.iter().all(|&s| !g.has_edge(s, w)) {
                    set.push(w);
                }
            }
            let x = next;
            next += 1;
            roles.push(Role::PairVertex(u, v));
            pair_vertices.push(x);
            for s in set {
                edges.push((s, x));
            }
        }
    }
    for i in 0..(n * n) as u32 {
        let y = next;
        next += 1;
        roles.push(Role::YVertex(i));
        for &x in &pair_vertices {
            edges.push((x, y));
        }
    }
    let graph = Graph::from_edges(next as usize, &edges).expect("gadget edges are simple");
    Ok(GadgetOutput {
        graph,
        k: None,
        roles,
        claims: Claims {
            diameter_at_most: Some(2),
            triangle_free: true,
            forbidden_pattern: None,
            alpha_core_plus: Some(n * n),
            equivalence: None,
        },
        source_formula: None,
        core: Some(g.clone()),
        preprocessing_offset: 0,
    })
}

/// Builds the diameter-2 K_{1,4}-free independent-set gadget. Degree-one
/// vertices are first taken into the independent set greedily (their
/// neighbour removed), accumulating an offset; then for every pair of
/// disjoint edges a fresh vertex is joined to all four endpoints, and an
/// apex completes those vertices to a clique. Guarantees alpha(G') =
/// alpha(core) + 1.
pub fn build_is_diam2_k14free(g: &Graph) -> Result<GadgetOutput, GadgetError> {
    if !g.is_connected() {
        return Err(GadgetError::NotConnected);
    }
    if triangle_exists(g) {
        return Err(GadgetError::NotTriangleFree);
    }
    if !crate::pattern::is_free_of(g, &PatternSpec::Star(4)).expect("pattern under cap") {
        return Err(GadgetError::NotK14Free);
    }
    // Degree-one preprocessing: pick such vertices into the independent set
    // and drop their neighbours.
    let mut alive = vec![true; g.n()];
    let mut offset = 0usize;
    loop {
        let deg = |v: u32, alive: &[bool]| {
            g.neighbours(v)
                .iter()
                .filter(|&&w| alive[w as usize])
                .count()
        };
        let next = (0..g.n() as u32).find(|&v| alive[v as usize] && deg(v, &alive) <= 1);
        match next {
            Some(v) => {
                offset += 1;
                alive[v as usize] = false;
                if let Some(&w) = g
                    .neighbours(v)
                    .iter()
                    .find(|&&w| alive[w as usize])
                {
                    alive[w as usize] = false;
                }
            }
            None => break,
        }
    }
    let (core, old_of) = g.induced(&alive);
    let n = core.n();
    let core_edges: Vec<(u32, u32)> = core.edges().collect();
    let mut edges = core_edges.clone();
    let mut roles: Vec<Role> = old_of.iter().map(|&v| Role::Host(v)).collect();
    let mut next = n as u32;
    let mut x_vertices = Vec::new();
    for (i, &(a1, b1)) in core_edges.iter().enumerate() {
        for &(a2, b2) in core_edges.iter().skip(i + 1) {
            if a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2 {
                continue;
            }
            let x = next;
            next += 1;
            roles.push(Role::EdgePairVertex((a1, b1), (a2, b2)));
            for e in [a1, b1, a2, b2] {
                edges.push((e, x));
            }
            x_vertices.push(x);
        }
    }
    let y = next;
    next += 1;
    roles.push(Role::CliqueApex);
    x_vertices.push(y);
    for i in 0..x_vertices.len() {
        for j in i + 1..x_vertices.len() {
            edges.push((x_vertices[i], x_vertices[j]));
        }
    }
    let graph = Graph::from_edges(next as usize, &edges).expect("gadget edges are simple");
    Ok(GadgetOutput {
        graph,
        k: None,
        roles,
        claims: Claims {
            diameter_at_most: Some(2),
            triangle_free: false,
            forbidden_pattern: Some(PatternSpec::Star(4)),
            alpha_core_plus: Some(1),
            equivalence: None,
        },
        source_formula: None,
        core: Some(core),
        preprocessing_offset: offset,
    })
}

/// Adds one vertex adjacent to all of `g`. alpha(G') = max(alpha(G), 1).
pub fn add_dominating_vertex(g: &Graph) -> GadgetOutput {
    let n = g.n();
    let mut edges: Vec<(u32, u32)> = g.edges().collect();
    for v in 0..n as u32 {
        edges.push((v, n as u32));
    }
    let mut roles: Vec<Role> = g.vertices().map(Role::Host).collect();
    roles.push(Role::Dominating);
    GadgetOutput {
        graph: Graph::from_edges(n + 1, &edges).expect("simple"),
        k: None,
        roles,
        claims: Claims {
            diameter_at_most: Some(2),
            ..Claims::default()
        },
        source_formula: None,
        core: Some(g.clone()),
        preprocessing_offset: 0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubstitutionPattern {
    /// Replace edge uv by three vertices each adjacent to u and v; the
    /// endpoints land in the 2-side of the K_{2,3}.
    K23,
    /// Replace edge uv by two vertices each adjacent to u and v; the
    /// endpoints land in the same part of the K_{2,2}.
    K22,
}

/// One substituted edge and the internal vertices that replaced it.
#[derive(Debug, Clone)]
pub struct SubstitutionRecord {
    pub edge: (u32, u32),
    pub inner: Vec<u32>,
}

/// Replaces each listed edge by the pattern. For K_{2,3} the edges must form
/// a matching. New vertices are appended in edge-list order.
pub fn substitute_edges(
    g: &Graph,
    edges_to_sub: &[(u32, u32)],
    pattern: SubstitutionPattern,
) -> Result<(Graph, Vec<SubstitutionRecord>), GadgetError> {
    for &(u, v) in edges_to_sub {
        if !g.has_edge(u, v) {
            return Err(GadgetError::NotAnEdge(u, v));
        }
    }
    if pattern == SubstitutionPattern::K23 {
        let mut seen = vec![false; g.n()];
        for &(u, v) in edges_to_sub {
            for w in [u, v] {
                if seen[w as usize] {
                    return Err(GadgetError::NotAMatching(w));
                }
                seen[w as usize] = true;
            }
        }
    }
    let inner_count = match pattern {
        SubstitutionPattern::K23 => 3,
        SubstitutionPattern::K22 => 2,
    };
    let drop: std::collections::HashSet<(u32, u32)> = edges_to_sub
        .iter()
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    if drop.len() != edges_to_sub.len() {
        return Err(GadgetError::DuplicateSubstitution);
    }
    let mut edges: Vec<(u32, u32)> = g
        .edges()
        .filter(|&(u, v)| !drop.contains(&(u, v)))
        .collect();
    let mut next = g.n() as u32;
    let mut records = Vec::new();
    for &(u, v) in edges_to_sub {
        let mut inner = Vec::new();
        for _ in 0..inner_count {
            let w = next;
            next += 1;
            inner.push(w);
            edges.push((u.min(w), u.max(w)));
            edges.push((v.min(w), v.max(w)));
        }
        records.push(SubstitutionRecord { edge: (u, v), inner });
    }
    let graph = Graph::from_edges(next as usize, &edges).expect("substitution keeps graph simple");
    Ok((graph, records))
}

/// Base reduction graph shared by the IOCT and acyclic gadgets: one vertex
/// per literal, an apex joined to every literal vertex, and a triangle per
/// clause with each corner attached to its literal.
struct BaseGadget {
    edges: Vec<(u32, u32)>,
    roles: Vec<Role>,
    n: u32,

    lit_vertex: Vec<u32>,
    clause_vertex: Vec<[u32; 3]>,
}

fn build_base(phi: &NaeFormula) -> BaseGadget {
    let nv = phi.num_vars;
    let mut roles = Vec::new();
    let mut lit_vertex = vec![u32::MAX; 2 * nv as usize];
    for var in 0..nv {
        lit_vertex[2 * var as usize] = roles.len() as u32;
        roles.push(Role::Variable {
            var,
            positive: true,
        });
        lit_vertex[2 * var as usize + 1] = roles.len() as u32;
        roles.push(Role::Variable {
            var,
            positive: false,
        });
    }
    let apex = roles.len() as u32;
    roles.push(Role::Apex(0));
    let mut edges = Vec::new();
    for var in 0..nv {
        let p = lit_vertex[2 * var as usize];
        let q = lit_vertex[2 * var as usize + 1];
        edges.push((p, q));
        edges.push((p, apex));
        edges.push((q, apex));
    }
    let lit_of = |l: Lit| lit_vertex[2 * l.var as usize + !l.positive as usize];
    let mut clause_vertex = Vec::new();
    for (ci, c) in phi.clauses.iter().enumerate() {
        let mut tri = [0u32; 3];
        for (slot, _) in c.iter().enumerate() {
            tri[slot] = roles.len() as u32;
            roles.push(Role::Clause {
                clause: ci as u32,
                slot: slot as u8,
            });
        }
        edges.push((tri[0], tri[1]));
        edges.push((tri[0], tri[2]));
        edges.push((tri[1], tri[2]));
        for (slot, &lit) in c.iter().enumerate() {
            edges.push((lit_of(lit).min(tri[slot]), lit_of(lit).max(tri[slot])));
        }
        clause_vertex.push(tri);
    }
    BaseGadget {
        n: roles.len() as u32,
        edges,
        roles,
        lit_vertex,
        clause_vertex,
    }
}

/// Builds the reduction from variant-A NAE satisfiability to independent
/// odd cycle transversal at k = m + 1. The output has diameter at most 4
/// and no induced 3-subdivided 4-star.
pub fn build_ioct_gadget(phi: &NaeFormula) -> Result<GadgetOutput, GadgetError> {
    phi.check_variant_a()?;
    let base = build_base(phi);
    let graph = Graph::from_edges(base.n as usize, &base.edges).expect("simple");
    Ok(GadgetOutput {
        graph,
        k: Some(phi.clauses.len() + 1),
        roles: base.roles,
        claims: Claims {
            diameter_at_most: Some(4),
            triangle_free: false,
            forbidden_pattern: Some(PatternSpec::SubdividedStar { r: 4, ell: 3 }),
            alpha_core_plus: None,
            equivalence: Some(Equivalence::IoctAtK),
        },
        source_formula: Some(phi.clone()),
        core: None,
        preprocessing_offset: 0,
    })
}

/// Builds the acyclic 3-colouring gadget: the IOCT base with K_{2,3}
/// substitutions on the matching selected by the covering collection
/// (literal edges at covered clauses; the edge between the two uncovered
/// corners when exactly one literal of a clause is covered). Diameter at
/// most 6, no induced 5-subdivided 6-star.
pub fn build_acyclic_gadget(
    phi: &NaeFormula,
    collection: &CoveringCollection,
) -> Result<GadgetOutput, GadgetError> {
    phi.check_variant_a()?;
    phi.check_distinct_literals()?;
    collection.validate(phi)?;
    if let Some(c) = (0..phi.clauses.len())
        .find(|&c| !phi.clauses[c].iter().any(|&l| collection.covers(l, c)))
    {
        return Err(GadgetError::Formula(super::nae::NaeError::NotCovering {
            clause: c + 1,
        }));
    }
    let base = build_base(phi);
    let lit_of =
        |l: Lit| base.lit_vertex[2 * l.var as usize + !l.positive as usize];
    let mut to_sub: Vec<(u32, u32)> = Vec::new();
    for (ci, c) in phi.clauses.iter().enumerate() {
        let tri = base.clause_vertex[ci];
        let mut uncovered_slots = Vec::new();
        for (slot, &lit) in c.iter().enumerate() {
            if collection.covers(lit, ci) {
                to_sub.push((lit_of(lit), tri[slot]));
            } else {
                uncovered_slots.push(slot);
            }
        }
        if uncovered_slots.len() == 2 {
            to_sub.push((
                tri[uncovered_slots[0]].min(tri[uncovered_slots[1]]),
                tri[uncovered_slots[0]].max(tri[uncovered_slots[1]]),
            ));
        }
        // Three uncovered slots would leave the clause uncovered, which the
        // covering check above already rejected.
    }
    let graph = Graph::from_edges(base.n as usize, &base.edges).expect("simple");
    let (graph, records) = substitute_edges(&graph, &to_sub, SubstitutionPattern::K23)?;
    let mut roles = base.roles;
    for rec in &records {
        for &w in &rec.inner {
            debug_assert_eq!(w as usize, roles.len());
            roles.push(Role::Substitution {
                u: rec.edge.0,
                v: rec.edge.1,
            });
        }
    }
    Ok(GadgetOutput {
        graph,
        k: None,
        roles,
        claims: Claims {
            diameter_at_most: Some(6),
            triangle_free: false,
            forbidden_pattern: Some(PatternSpec::SubdividedStar { r: 6, ell: 5 }),
            alpha_core_plus: None,
            equivalence: Some(Equivalence::Acyclic3Col),
        },
        source_formula: Some(phi.clone()),
        core: None,
        preprocessing_offset: 0,
    })
}

/// Layout of the star gadget, used by the certificate mappings.
pub struct StarLayout {
    pub apex: [u32; 3],
    pub var_vertex: Vec<u32>,
    /// p[var][j] and q[var][j] for j in 0..4.
    pub p: Vec<[u32; 4]>,
    pub q: Vec<[u32; 4]>,
    pub clause_vertex: Vec<[u32; 3]>,
    /// q-vertex attached to each (clause, slot).
    pub slot_q: Vec<[u32; 3]>,
}

pub fn star_layout(phi: &NaeFormula) -> StarLayout {
    // Mirrors the deterministic numbering of build_star_gadget.
    let nv = phi.num_vars as usize;
    let apex = [0u32, 1, 2];
    let mut next = 3u32;
    let mut var_vertex = Vec::with_capacity(nv);
    let mut p = Vec::with_capacity(nv);
    let mut q = Vec::with_capacity(nv);
    for _ in 0..nv {
        var_vertex.push(next);
        next += 1;
        let mut ps = [0u32; 4];
        let mut qs = [0u32; 4];
        for j in 0..4 {
            ps[j] = next;
            next += 1;
            qs[j] = next;
            next += 1;
        }
        p.push(ps);
        q.push(qs);
    }
    let mut clause_vertex = Vec::new();
    for _ in 0..phi.clauses.len() {
        let tri = [next, next + 1, next + 2];
        next += 3;
        clause_vertex.push(tri);
    }
    // Injective slot-to-q assignment by lowest unused index per variable.
    let mut used = vec![0usize; nv];
    let mut slot_q = Vec::new();
    for c in &phi.clauses {
        let mut sq = [0u32; 3];
        for (slot, lit) in c.iter().enumerate() {
            let var = lit.var as usize;
            sq[slot] = q[var][used[var]];
            used[var] += 1;
        }
        slot_q.push(sq);
    }
    StarLayout {
        apex,
        var_vertex,
        p,
        q,
        clause_vertex,
        slot_q,
    }
}

/// Builds the reduction from variant-B NAE satisfiability to star
/// 3-colouring: an apex triangle, a vertex per variable carrying four
/// pendant ladders whose rungs are K_{2,2} substitutions, and a K_{2,2}
/// substituted triangle per clause attached injectively to the q-vertices
/// of its literals. Diameter at most 14, no induced 14-subdivided 6-star.
pub fn build_star_gadget(phi: &NaeFormula) -> Result<GadgetOutput, GadgetError> {
    phi.check_variant_b()?;
    let layout = star_layout(phi);
    let nv = phi.num_vars as usize;
    let mut roles = vec![Role::Apex(0), Role::Apex(1), Role::Apex(2)];
    let mut edges: Vec<(u32, u32)> = vec![(0, 1), (0, 2), (1, 2)];
    let mut to_sub: Vec<(u32, u32)> = Vec::new();
    for var in 0..nv {
        let v = layout.var_vertex[var];
        debug_assert_eq!(v as usize, roles.len());
        roles.push(Role::Variable {
            var: var as u32,
            positive: true,
        });
        edges.push((layout.apex[0], v));
        for j in 0..4 {
            debug_assert_eq!(layout.p[var][j] as usize, roles.len());
            roles.push(Role::LadderP {
                var: var as u32,
                j: j as u8 + 1,
            });
            debug_assert_eq!(layout.q[var][j] as usize, roles.len());
            roles.push(Role::LadderQ {
                var: var as u32,
                j: j as u8 + 1,
            });
            edges.push((v, layout.p[var][j]));
            edges.push((layout.p[var][j], layout.q[var][j]));
            to_sub.push((layout.p[var][j], layout.q[var][j]));
        }
    }
    for (ci, tri) in layout.clause_vertex.iter().enumerate() {
        for (slot, &cv) in tri.iter().enumerate() {
            debug_assert_eq!(cv as usize, roles.len());
            roles.push(Role::Clause {
                clause: ci as u32,
                slot: slot as u8,
            });
        }
        edges.push((tri[0], tri[1]));
        edges.push((tri[0], tri[2]));
        edges.push((tri[1], tri[2]));
        to_sub.push((tri[0].min(tri[1]), tri[0].max(tri[1])));
        to_sub.push((tri[0].min(tri[2]), tri[0].max(tri[2])));
        to_sub.push((tri[1].min(tri[2]), tri[1].max(tri[2])));
        for (slot, &cv) in tri.iter().enumerate() {
            let qv = layout.slot_q[ci][slot];
            edges.push((qv.min(cv), qv.max(cv)));
            to_sub.push((qv.min(cv), qv.max(cv)));
        }
    }
    let n = roles.len();
    let graph = Graph::from_edges(n, &edges).expect("simple");
    let (graph, records) = substitute_edges(&graph, &to_sub, SubstitutionPattern::K22)?;
    for rec in &records {
        for &w in &rec.inner {
            debug_assert_eq!(w as usize, roles.len());
            roles.push(Role::Substitution {
                u: rec.edge.0,
                v: rec.edge.1,
            });
        }
    }
    Ok(GadgetOutput {
        graph,
        k: None,
        roles,
        claims: Claims {
            diameter_at_most: Some(14),
            triangle_free: false,
            forbidden_pattern: Some(PatternSpec::SubdividedStar { r: 6, ell: 14 }),
            alpha_core_plus: None,
            equivalence: Some(Equivalence::Star3Col),
        },
        source_formula: Some(phi.clone()),
        core: None,
        preprocessing_offset: 0,
    })
}

/// Emits the star 3-colouring of the star gadget induced by a not-all-equal
/// satisfying assignment, following the constructive direction of the
/// equivalence.
pub fn star_colouring_from_assignment(
    gadget: &GadgetOutput,
    assignment: &[bool],
) -> Option<Colouring> {
    let phi = gadget.source_formula.as_ref()?;
    if assignment.len() != phi.num_vars as usize || !phi.is_nae_satisfied(assignment) {
        return None;
    }
    let layout = star_layout(phi);
    let n = gadget.graph.n();
    let mut labels = vec![0u8; n];
    labels[layout.apex[0] as usize] = 1;
    labels[layout.apex[1] as usize] = 2;
    labels[layout.apex[2] as usize] = 3;
    for var in 0..phi.num_vars as usize {
        // True variables get q-colour 2, false ones q-colour 3; the ladder
        // alternates and the variable vertex matches its q-vertices.
        let (qc, pc) = if assignment[var] { (2, 3) } else { (3, 2) };
        labels[layout.var_vertex[var] as usize] = qc;
        for j in 0..4 {
            labels[layout.p[var][j] as usize] = pc;
            labels[layout.q[var][j] as usize] = qc;
        }
    }
    for (ci, c) in phi.clauses.iter().enumerate() {
        // Slot colours seen from the q attachments.
        let t: Vec<u8> = (0..3)
            .map(|s| if assignment[c[s].var as usize] { 2 } else { 3 })
            .collect();
        // The minority slot takes the majority value; the other two take
        // colour 1 and the minority value.
        let count2 = t.iter().filter(|&&x| x == 2).count();
        let minority: u8 = if count2 == 1 { 2 } else { 3 };
        let majority: u8 = 5 - minority;
        let minority_slot = t.iter().position(|&x| x == minority).unwrap();
        let mut rest = vec![1u8, minority];
        for slot in 0..3 {
            let tri = layout.clause_vertex[ci][slot] as usize;
            labels[tri] = if slot == minority_slot {
                majority
            } else {
                rest.pop().unwrap()
            };
        }
    }
    // Substitution vertices: endpoints always end up distinctly coloured, so
    // both inner vertices take the remaining third colour.
    for (v, role) in gadget.roles.iter().enumerate() {
        if let Role::Substitution { u, v: w } = role {
            let (a, b) = (labels[*u as usize], labels[*w as usize]);
            debug_assert!(a != 0 && b != 0 && a != b);
            labels[v] = 6 - a - b;
        }
    }
    Colouring::new(labels).ok()
}

/// Extracts a truth assignment from a star 3-colouring of the star gadget:
/// normalize the apex triangle to colours (1, 2, 3), then read each
/// variable off its first q-vertex. Returns `None` when the input is not a
/// colouring of the gadget graph.
pub fn assignment_from_star_colouring(
    gadget: &GadgetOutput,
    colouring: &Colouring,
) -> Option<Vec<bool>> {
    let phi = gadget.source_formula.as_ref()?;
    if colouring.len() != gadget.graph.n() {
        return None;
    }
    let layout = star_layout(phi);
    // Normalizing the hub to colour 1 leaves the other two colours
    // symmetric; fixing "true" to the colour of the first apex partner is
    // harmless because not-all-equal satisfaction is complement-invariant.
    let true_colour = colouring.label(layout.apex[1]);
    Some(
        (0..phi.num_vars as usize)
            .map(|var| colouring.label(layout.q[var][0]) == true_colour)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::diameter;
    use crate::pattern::{build_pattern, find_induced};

    fn cycle(n: usize) -> Graph {
        build_pattern(&PatternSpec::Cycle(n)).unwrap()
    }

    fn figure_phi() -> NaeFormula {
        // (x1, x2, x3), (!x1, !x2, !x3), (x1, !x2, !x3)
        NaeFormula::new(
            3,
            vec![
                [Lit::pos(0), Lit::pos(1), Lit::pos(2)],
                [Lit::neg(0), Lit::neg(1), Lit::neg(2)],
                [Lit::pos(0), Lit::neg(1), Lit::neg(2)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn trianglefree_gadget_on_c5_matches_figure() {
        let out = build_is_diam2_trianglefree(&cycle(5)).unwrap();
        assert_eq!(out.graph.n(), 35); // 5 + 5 pair vertices + 25
        assert_eq!(diameter(&out.graph).unwrap(), 2);
        assert!(!triangle_exists(&out.graph));
    }

    #[test]
    fn trianglefree_gadget_rejects_star() {
        let star = build_pattern(&PatternSpec::Star(3)).unwrap();
        assert!(matches!(
            build_is_diam2_trianglefree(&star).unwrap_err(),
            GadgetError::DominatingVertex(0)
        ));
    }

    #[test]
    fn k14free_gadget_on_c5_matches_figure() {
        let out = build_is_diam2_k14free(&cycle(5)).unwrap();
        assert_eq!(out.graph.n(), 11); // 5 + 5 edge pairs + apex
        assert_eq!(diameter(&out.graph).unwrap(), 2);
        let k14 = build_pattern(&PatternSpec::Star(4)).unwrap();
        assert!(find_induced(&out.graph, &k14).unwrap().is_none());
        assert_eq!(out.preprocessing_offset, 0);
    }

    #[test]
    fn dominating_vertex_examples() {
        let p3 = build_pattern(&PatternSpec::Path(3)).unwrap();
        let out = add_dominating_vertex(&p3);
        assert_eq!(diameter(&out.graph).unwrap(), 2);
        let empty = Graph::empty(3);
        let out = add_dominating_vertex(&empty);
        // The star with the centre numbered last.
        assert_eq!(out.graph.n(), 4);
        assert_eq!(out.graph.m(), 3);
        assert_eq!(out.graph.degree(3), 3);
        let k13 = build_pattern(&PatternSpec::Star(3)).unwrap();
        assert!(find_induced(&out.graph, &k13).unwrap().is_some());
    }

    #[test]
    fn substitution_examples() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let (g, _) = substitute_edges(&k2, &[(0, 1)], SubstitutionPattern::K23).unwrap();
        let k23 = crate::graph::Graph::from_edges(
            5,
            &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)],
        )
        .unwrap();
        assert!(g == k23);
        let (g, _) = substitute_edges(&k2, &[(0, 1)], SubstitutionPattern::K22).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 4);
        assert!(matches!(
            crate::graph::bipartition(&g),
            crate::graph::Bipartiteness::Bipartite(_)
        ));

        let tri = build_pattern(&PatternSpec::Complete(3)).unwrap();
        assert!(matches!(
            substitute_edges(
                &tri,
                &[(0, 1), (0, 2), (1, 2)],
                SubstitutionPattern::K23
            )
            .unwrap_err(),
            GadgetError::NotAMatching(_)
        ));
    }

    #[test]
    fn ioct_gadget_figure_instance() {
        let out = build_ioct_gadget(&figure_phi()).unwrap();
        assert_eq!(out.graph.n(), 16);
        assert_eq!(out.k, Some(4));
        assert!(diameter(&out.graph).unwrap() <= 4);
        let pat = build_pattern(&PatternSpec::SubdividedStar { r: 4, ell: 3 }).unwrap();
        assert!(find_induced(&out.graph, &pat).unwrap().is_none());
        assert_eq!(out.roles.len(), 16);
    }

    #[test]
    fn ioct_gadget_rejects_triple_occurrence() {
        let phi = NaeFormula::new(1, vec![[Lit::pos(0), Lit::pos(0), Lit::pos(0)]]).unwrap();
        assert!(matches!(
            build_ioct_gadget(&phi).unwrap_err(),
            GadgetError::Formula(super::super::nae::NaeError::VariantAViolation { .. })
        ));
    }

    #[test]
    fn acyclic_gadget_figure_instance() {
        let phi = figure_phi();
        // The figure's covering collection.
        let coll = CoveringCollection::parse(
            "pair 1 1\npair -1 2\npair 2 1\npair -2 3\npair 3 1\npair -3 2\n",
        )
        .unwrap();
        let out = build_acyclic_gadget(&phi, &coll).unwrap();
        // Six literal-edge substitutions plus one corner-corner edge.
        let subs = out
            .roles
            .iter()
            .filter(|r| matches!(r, Role::Substitution { .. }))
            .count();
        assert_eq!(subs, 7 * 3);
        assert!(diameter(&out.graph).unwrap() <= 6);
        let pat = build_pattern(&PatternSpec::SubdividedStar { r: 6, ell: 5 }).unwrap();
        assert!(find_induced(&out.graph, &pat).unwrap().is_none());
        // The substituted edges form a matching by construction; the builder
        // would have errored otherwise.
    }

    #[test]
    fn acyclic_gadget_rejects_uncovered() {
        // The same clause twice: all pairs can legally point at the second
        // copy, leaving the first uncovered.
        let phi = NaeFormula::new(
            3,
            vec![
                [Lit::pos(0), Lit::pos(1), Lit::pos(2)],
                [Lit::pos(0), Lit::pos(1), Lit::pos(2)],
            ],
        )
        .unwrap();
        let coll = CoveringCollection {
            pairs: vec![(Lit::pos(0), 1), (Lit::pos(1), 1), (Lit::pos(2), 1)],
        };
        coll.validate(&phi).unwrap();
        assert_eq!(coll.gamma(&phi), 1);
        assert!(matches!(
            build_acyclic_gadget(&phi, &coll).unwrap_err(),
            GadgetError::Formula(super::super::nae::NaeError::NotCovering { clause: 1 })
        ));
        // A collection missing pairs is invalid regardless of coverage.
        let invalid = CoveringCollection {
            pairs: vec![(Lit::pos(0), 0)],
        };
        assert!(build_acyclic_gadget(&phi, &invalid).is_err());
    }

    #[test]
    fn star_gadget_figure_instance() {
        // (x1, x2, x3), (x1, x3, x4), (x2, x3, x4)
        let phi = NaeFormula::new(
            4,
            vec![
                [Lit::pos(0), Lit::pos(1), Lit::pos(2)],
                [Lit::pos(0), Lit::pos(2), Lit::pos(3)],
                [Lit::pos(1), Lit::pos(2), Lit::pos(3)],
            ],
        )
        .unwrap();
        let out = build_star_gadget(&phi).unwrap();
        // 3 apex + 4 vars + 16 p + 16 q + 9 clause corners + 2 * (16 + 9 + 9)
        // substitution vertices.
        assert_eq!(out.graph.n(), 3 + 4 + 32 + 9 + 2 * 34);
        assert!(diameter(&out.graph).unwrap() <= 14);
        let pat = build_pattern(&PatternSpec::SubdividedStar { r: 6, ell: 14 }).unwrap();
        assert!(find_induced(&out.graph, &pat).unwrap().is_none());
    }

    #[test]
    fn star_certificate_roundtrip() {
        let phi = NaeFormula::new(
            3,
            vec![[Lit::pos(0), Lit::pos(1), Lit::pos(2)]],
        )
        .unwrap();
        let out = build_star_gadget(&phi).unwrap();
        let assignment = vec![true, true, false];
        assert!(phi.is_nae_satisfied(&assignment));
        let col = star_colouring_from_assignment(&out, &assignment).unwrap();
        assert!(crate::colouring::verify_colouring(
            &out.graph,
            &col,
            crate::colouring::ColouringMode::Star
        )
        .unwrap());
        let back = assignment_from_star_colouring(&out, &col).unwrap();
        assert!(phi.is_nae_satisfied(&back));
    }

    #[test]
    fn star_gadget_rejects_variant_b_violation() {
        let phi = NaeFormula::new(2, vec![[Lit::pos(0), Lit::neg(1), Lit::pos(0)]]).unwrap();
        assert!(build_star_gadget(&phi).is_err());
    }
}
