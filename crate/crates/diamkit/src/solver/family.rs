//! The bounded 3-colouring family of a connected non-bipartite chair-free
//! graph of diameter at most `d`: either all 3-colourings of the graph, or
//! a triangle with a single private-neighbour owner together with every
//! colouring of the graph minus those private neighbours that extends to
//! the whole graph.

use super::{find_triangle, triangle_context, SolveError, Triangle};
use crate::colouring::{
    enumerate_3_colourings, two_list_colouring, ColouringError, ListAssignment,
};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyVariant {
    /// Members are all proper 3-colourings of the whole graph.
    WholeGraph,
    /// Members colour everything except the apex's private neighbours, and
    /// each member extends to at least one proper 3-colouring.
    MinusPrivate {
        apex: u32,
        others: [u32; 2],
        private: Vec<u32>,
    },
}

/// Family members are full-length label vectors; in the minus-private
/// variant the private vertices carry label 0.
#[derive(Debug, Clone)]
pub struct ColouringFamily {
    pub variant: FamilyVariant,
    pub triangle: Option<Triangle>,
    pub members: Vec<Vec<u8>>,
}

#[derive(Debug, Clone)]
pub enum FamilyOutcome {
    NotThreeColourable,
    Family(ColouringFamily),
}

/// Computes the family. Preconditions: connected, non-bipartite,
/// chair-free, diameter at most `d` (trusted). Overflow of `cap` aborts;
/// "not 3-colourable" is a result, not an error.
pub fn colouring_family(g: &Graph, d: usize, cap: u64) -> Result<FamilyOutcome, SolveError> {
    let n = g.n();
    // Small graphs: enumerate everything.
    if n <= 2 * d + 1 {
        let members = enumerate_all(g, cap)?;
        if members.is_empty() {
            return Ok(FamilyOutcome::NotThreeColourable);
        }
        return Ok(FamilyOutcome::Family(ColouringFamily {
            variant: FamilyVariant::WholeGraph,
            triangle: None,
            members,
        }));
    }

    let t = find_triangle(g)?;
    let ctx = triangle_context(g, &t)?;
    if ctx.all_adjacent.is_some() {
        return Ok(FamilyOutcome::NotThreeColourable);
    }
    if ctx.exceeds_size_bound(d) {
        return Ok(FamilyOutcome::NotThreeColourable);
    }

    // Enumerate proper colourings of the graph minus the first layer.
    let keep: Vec<bool> = (0..n)
        .map(|v| ctx.layering.layer_of[v] != 1)
        .collect();
    let (rest, old_of) = g.induced(&keep);
    let candidates = enumerate_all(&rest, cap)?;

    // The two triangle neighbours of every two-neighbour vertex, and the
    // single triangle neighbour of every private vertex.
    let t_neighbours: Vec<(u32, u32, u32)> = ctx
        .n1_star
        .iter()
        .map(|&w| {
            let mut it = t.vertices.iter().copied().filter(|&x| g.has_edge(w, x));
            (w, it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    let mut anchor = vec![u32::MAX; n];
    for (i, p) in ctx.private.iter().enumerate() {
        for &u in p {
            anchor[u as usize] = t.vertices[i];
        }
    }
    let in_s = {
        let mut mask = vec![false; n];
        for &u in &ctx.s {
            mask[u as usize] = true;
        }
        mask
    };

    let mut survivors: Vec<Vec<u8>> = Vec::new();
    'candidate: for cand in &candidates {
        let mut labels = vec![0u8; n];
        for (new_v, &old_v) in old_of.iter().enumerate() {
            labels[old_v as usize] = cand[new_v];
        }
        // Forced extension to the two-neighbour vertices.
        for &(w, t1, t2) in &t_neighbours {
            labels[w as usize] = 6 - labels[t1 as usize] - labels[t2 as usize];
        }
        // Discard if this is not a colouring of the graph minus the private
        // set.
        for &(w, _, _) in &t_neighbours {
            for &nb in g.neighbours(w) {
                if labels[nb as usize] != 0 && labels[nb as usize] == labels[w as usize] {
                    continue 'candidate;
                }
            }
        }
        // Extendability filter: singleton lists outside the private set,
        // two-label lists excluding the anchor colour inside it.
        let mut lists = ListAssignment::full(n);
        for v in 0..n as u32 {
            if in_s[v as usize] {
                let banned = labels[anchor[v as usize] as usize];
                let admissible: Vec<u8> = (1..=3).filter(|&l| l != banned).collect();
                lists.set(v, &admissible);
            } else {
                lists.set(v, &[labels[v as usize]]);
            }
        }
        if two_list_colouring(g, &lists)?.is_some() {
            survivors.push(labels);
            if survivors.len() as u64 > cap {
                return Err(SolveError::Overflow { cap });
            }
        }
    }

    if survivors.is_empty() {
        return Ok(FamilyOutcome::NotThreeColourable);
    }

    if ctx.s.is_empty() {
        return Ok(FamilyOutcome::Family(ColouringFamily {
            variant: FamilyVariant::WholeGraph,
            triangle: Some(t),
            members: survivors,
        }));
    }

    let owners: Vec<usize> = (0..3).filter(|&i| !ctx.private[i].is_empty()).collect();
    if owners.len() >= 2 {
        // At least two triangle vertices own private neighbours: the
        // private set has at most six vertices whenever the graph is
        // 3-colourable, so it is absorbed into the enumeration and the
        // family covers the whole graph.
        if ctx.s.len() > 6 {
            return Err(SolveError::PreconditionViolated(
                "private set exceeds six vertices with two owners; input is not chair-free"
                    .into(),
            ));
        }
        let mut members = Vec::new();
        for base in &survivors {
            extend_over(g, &ctx.s, 0, &mut base.clone(), &mut members, cap)?;
        }
        if members.is_empty() {
            return Ok(FamilyOutcome::NotThreeColourable);
        }
        return Ok(FamilyOutcome::Family(ColouringFamily {
            variant: FamilyVariant::WholeGraph,
            triangle: Some(t),
            members,
        }));
    }

    // Exactly one owner: reorient the triangle around the apex.
    let apex_pos = owners[0];
    let apex = t.vertices[apex_pos];
    let mut others: Vec<u32> = t
        .vertices
        .iter()
        .copied()
        .filter(|&v| v != apex)
        .collect();
    others.sort_unstable();
    Ok(FamilyOutcome::Family(ColouringFamily {
        variant: FamilyVariant::MinusPrivate {
            apex,
            others: [others[0], others[1]],
            private: ctx.private[apex_pos].clone(),
        },
        triangle: Some(t),
        members: survivors,
    }))
}

fn enumerate_all(g: &Graph, cap: u64) -> Result<Vec<Vec<u8>>, SolveError> {
    match enumerate_3_colourings(g, cap) {
        Ok(cols) => Ok(cols.into_iter().map(|c| c.labels().to_vec()).collect()),
        Err(ColouringError::Overflow { cap }) => Err(SolveError::Overflow { cap }),
        Err(e) => Err(SolveError::Colouring(e)),
    }
}

/// Enumerates the proper extensions of a member over the (small) private
/// set in lexicographic order, appending completed colourings of the whole
/// graph.
fn extend_over(
    g: &Graph,
    s: &[u32],
    idx: usize,
    work: &mut Vec<u8>,
    out: &mut Vec<Vec<u8>>,
    cap: u64,
) -> Result<(), SolveError> {
    if idx == s.len() {
        if out.len() as u64 >= cap {
            return Err(SolveError::Overflow { cap });
        }
        out.push(work.clone());
        return Ok(());
    }
    let v = s[idx];
    'label: for l in 1..=3u8 {
        for &w in g.neighbours(v) {
            if work[w as usize] == l {
                continue 'label;
            }
        }
        work[v as usize] = l;
        extend_over(g, s, idx + 1, work, out, cap)?;
        work[v as usize] = 0;
    }
    Ok(())
}
