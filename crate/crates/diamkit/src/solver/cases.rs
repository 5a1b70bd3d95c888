//! Per-member case analysis for the minus-private family variant: each
//! member colours everything except the apex's private neighbours; the
//! machinery here extends members over the remaining private components and
//! answers the six problems through bounded branching.

use super::family::{ColouringFamily, FamilyVariant};
use super::{answer_from_members, Answer, Certificate, ProblemKind, SolveError};
use crate::colouring::{verify_colouring, verify_transversal_class, Colouring, ColouringMode};
use crate::graph::{self, bfs_layering, Graph};

/// One connected component of the graph induced on the residual private
/// set, two-coloured; `part_a` holds the least vertex.
#[derive(Debug, Clone)]
struct Comp {
    part_a: Vec<u32>,
    part_b: Vec<u32>,
}

impl Comp {
    fn len(&self) -> usize {
        self.part_a.len() + self.part_b.len()
    }

    fn is_singleton(&self) -> bool {
        self.len() == 1
    }

    fn contains(&self, v: u32) -> bool {
        self.part_a.contains(&v) || self.part_b.contains(&v)
    }
}

/// A family member worked up for the case analysis: its deterministic
/// extension over the forced private components, the residual private set,
/// that set's components, and the two colours available on it.
#[derive(Debug, Clone)]
pub struct ExtensionTriple {
    /// Labels of the member itself (0 on the whole private set).
    pub member: Vec<u8>,
    /// Labels after forced propagation (0 exactly on the residual set).
    pub c_prime: Vec<u8>,
    /// The residual private set: components untouched by propagation.
    pub s_c: Vec<u32>,
    /// The smaller side of a two-colouring of the residual set.
    pub w: Vec<u32>,
    comps: Vec<Comp>,
    /// The two colours available on the private set, ascending.
    pair: (u8, u8),
}

/// Builds the extension triple for one member, or `None` when the member
/// cannot actually be extended (which the family construction rules out).
pub(super) fn extension_triple(
    g: &Graph,
    apex: u32,
    private: &[u32],
    member: &[u8],
) -> Result<Option<ExtensionTriple>, SolveError> {
    let n = g.n();
    let a = member[apex as usize];
    let pair: (u8, u8) = match a {
        1 => (2, 3),
        2 => (1, 3),
        _ => (1, 2),
    };
    let mut in_private = vec![false; n];
    for &u in private {
        in_private[u as usize] = true;
    }
    // Available colours per private vertex, from its coloured neighbours.
    let mut avail = vec![0u8; n];
    for &u in private {
        let mut mask = (1 << (pair.0 - 1)) | (1 << (pair.1 - 1));
        for &w in g.neighbours(u) {
            let l = member[w as usize];
            if l != 0 {
                mask &= !(1u8 << (l - 1));
            }
        }
        if mask == 0 {
            debug_assert!(false, "family member admits no extension");
            return Ok(None);
        }
        avail[u as usize] = mask;
    }
    // Components of the induced private subgraph, two-coloured by BFS from
    // the least vertex.
    let mut comp_of = vec![usize::MAX; n];
    let mut side = vec![0u8; n];
    let mut comps_raw: Vec<Vec<u32>> = Vec::new();
    for &start in private {
        if comp_of[start as usize] != usize::MAX {
            continue;
        }
        let id = comps_raw.len();
        let mut queue = vec![start];
        comp_of[start as usize] = id;
        side[start as usize] = 0;
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for &w in g.neighbours(u) {
                if !in_private[w as usize] {
                    continue;
                }
                if comp_of[w as usize] == usize::MAX {
                    comp_of[w as usize] = id;
                    side[w as usize] = 1 - side[u as usize];
                    queue.push(w);
                } else if side[w as usize] == side[u as usize] {
                    return Err(SolveError::PreconditionViolated(
                        "private neighbourhood is not bipartite; the graph cannot be 3-colourable"
                            .into(),
                    ));
                }
            }
        }
        comps_raw.push(queue);
    }

    let mut c_prime = member.to_vec();
    let mut residual: Vec<Comp> = Vec::new();
    let mut s_c: Vec<u32> = Vec::new();
    for verts in &comps_raw {
        let forced = verts
            .iter()
            .find(|&&u| avail[u as usize].count_ones() == 1);
        match forced {
            Some(&u) => {
                // Propagate the forced colour through the component and
                // check every vertex lands inside its available set.
                let colour_for = |s: u8, anchor_side: u8, anchor_colour: u8| {
                    if s == anchor_side {
                        anchor_colour
                    } else if anchor_colour == pair.0 {
                        pair.1
                    } else {
                        pair.0
                    }
                };
                let anchor_colour = avail[u as usize].trailing_zeros() as u8 + 1;
                let anchor_side = side[u as usize];
                for &v in verts {
                    let l = colour_for(side[v as usize], anchor_side, anchor_colour);
                    if avail[v as usize] & (1 << (l - 1)) == 0 {
                        debug_assert!(false, "family member admits no extension");
                        return Ok(None);
                    }
                    c_prime[v as usize] = l;
                }
            }
            None => {
                let mut part_a = Vec::new();
                let mut part_b = Vec::new();
                let anchor_side = side[verts[0] as usize];
                let mut sorted = verts.clone();
                sorted.sort_unstable();
                for &v in &sorted {
                    if side[v as usize] == anchor_side {
                        part_a.push(v);
                    } else {
                        part_b.push(v);
                    }
                }
                s_c.extend_from_slice(&sorted);
                residual.push(Comp { part_a, part_b });
            }
        }
    }
    s_c.sort_unstable();
    residual.sort_by_key(|c| c.part_a[0]);
    let w = residual
        .iter()
        .flat_map(|c| {
            if c.part_b.len() < c.part_a.len() {
                c.part_b.clone()
            } else {
                c.part_a.clone()
            }
        })
        .collect();
    Ok(Some(ExtensionTriple {
        member: member.to_vec(),
        c_prime,
        s_c,
        w,
        comps: residual,
        pair,
    }))
}

/// Assigns colours to the residual components: per component, `true` sends
/// the side containing the least vertex to the first pair colour.
fn apply_orientation(triple: &ExtensionTriple, flips: &[bool]) -> Vec<u8> {
    let mut labels = triple.c_prime.clone();
    let (p, q) = triple.pair;
    for (comp, &a_first) in triple.comps.iter().zip(flips) {
        let (ca, cb) = if a_first { (p, q) } else { (q, p) };
        for &v in &comp.part_a {
            labels[v as usize] = ca;
        }
        for &v in &comp.part_b {
            labels[v as usize] = cb;
        }
    }
    labels
}

/// All orientation vectors in canonical order (first component fastest
/// would break lexicography, so the last component varies fastest).
fn all_orientations(k: usize) -> Vec<Vec<bool>> {
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0..(1u32 << k) {
        out.push((0..k).map(|i| mask >> (k - 1 - i) & 1 == 0).collect());
    }
    out
}

fn canonical_extension(triple: &ExtensionTriple) -> Vec<u8> {
    apply_orientation(triple, &vec![true; triple.comps.len()])
}

/// Answers one problem through the minus-private family: members are tried
/// in order and the first success wins.
pub(super) fn solve_minus_private(
    g: &Graph,
    fam: &ColouringFamily,
    kind: ProblemKind,
) -> Result<Answer, SolveError> {
    let FamilyVariant::MinusPrivate {
        apex,
        others,
        private,
    } = &fam.variant
    else {
        return Err(SolveError::Internal("expected minus-private family".into()));
    };
    let (apex, others) = (*apex, *others);

    // Shared per-triangle data: the layering from the triangle and the
    // common neighbourhood of the two non-apex vertices.
    let tri = fam
        .triangle
        .as_ref()
        .ok_or_else(|| SolveError::Internal("family lost its triangle".into()))?;
    let layering = bfs_layering(g, &tri.vertices).map_err(SolveError::Graph)?;
    let w_yz: Vec<u32> = {
        let (y, z) = (others[0], others[1]);
        let (a, b) = (g.neighbours(y), g.neighbours(z));
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    if a[i] != apex {
                        out.push(a[i]);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    };
    let mut w_yz_mask = vec![false; g.n()];
    for &w in &w_yz {
        w_yz_mask[w as usize] = true;
    }

    // Three-colourability is settled by the family's existence.
    if kind == ProblemKind::ThreeCol {
        let triple = extension_triple(g, apex, private, &fam.members[0])?
            .ok_or_else(|| SolveError::Internal("first member not extendable".into()))?;
        let labels = canonical_extension(&triple);
        return Ok(Answer {
            yes: true,
            certificate: Some(Certificate::Colouring(Colouring::new(labels)?)),
        });
    }

    for member in &fam.members {
        let Some(triple) = extension_triple(g, apex, private, member)? else {
            continue;
        };
        if triple.s_c.is_empty() {
            // The propagation coloured everything: test directly.
            let full = triple.c_prime.clone();
            let ans = answer_from_members(g, std::slice::from_ref(&full), kind)?;
            if ans.yes {
                return Ok(ans);
            }
            continue;
        }
        let found = match kind {
            ProblemKind::Acyclic3Col | ProblemKind::Star3Col => {
                let mode = kind.mode().unwrap();
                case_colouring_modes(g, &triple, mode, &w_yz_mask, &layering.layer_of)?
            }
            ProblemKind::Ioct { k } => case_odd_cycle(g, &triple, others, k)?,
            ProblemKind::NearBip | ProblemKind::Ifvs { .. } => {
                let k = match kind {
                    ProblemKind::Ifvs { k } => k,
                    _ => None,
                };
                case_feedback(g, &triple, others, k, &w_yz_mask, &layering.layer_of)?
            }
            ProblemKind::ThreeCol => unreachable!("handled above"),
        };
        if let Some(answer) = found {
            return Ok(answer);
        }
    }
    Ok(Answer::no())
}

fn verify_mode_answer(
    g: &Graph,
    labels: Vec<u8>,
    mode: ColouringMode,
) -> Result<Option<Answer>, SolveError> {
    let c = Colouring::new(labels)?;
    if verify_colouring(g, &c, mode)? {
        return Ok(Some(Answer {
            yes: true,
            certificate: Some(Certificate::Colouring(c)),
        }));
    }
    Ok(None)
}

fn verify_transversal_answer(
    g: &Graph,
    labels: Vec<u8>,
    kind: ProblemKind,
    labels_to_try: &[u8],
) -> Result<Option<Answer>, SolveError> {
    let tk = kind.transversal().expect("transversal kind");
    let c = Colouring::new(labels)?;
    for &label in labels_to_try {
        if verify_transversal_class(g, &c, label, tk)? {
            return Ok(Some(Answer {
                yes: true,
                certificate: Some(Certificate::TransversalClass {
                    colouring: c,
                    label,
                }),
            }));
        }
    }
    Ok(None)
}

/// Acyclic and star 3-colouring for one member.
fn case_colouring_modes(
    g: &Graph,
    triple: &ExtensionTriple,
    mode: ColouringMode,
    w_yz_mask: &[bool],
    layer_of: &[u32],
) -> Result<Option<Answer>, SolveError> {
    let s_c = &triple.s_c;
    let mut in_s_c = vec![false; g.n()];
    for &v in s_c {
        in_s_c[v as usize] = true;
    }
    let (sub, _) = g.induced(&in_s_c);

    // A cycle inside the residual set is two-coloured in every extension.
    if !graph::is_forest(&sub) {
        return Ok(None);
    }
    // A residual vertex next to a common neighbour of the two non-apex
    // triangle vertices forces a bichromatic four-cycle in every extension.
    for &v in s_c {
        if g.neighbours(v).iter().any(|&w| w_yz_mask[w as usize]) {
            return Ok(None);
        }
    }
    // Up to two residual vertices: try every proper extension.
    if s_c.len() <= 2 {
        for flips in all_orientations(triple.comps.len()) {
            let labels = apply_orientation(triple, &flips);
            if let Some(ans) = verify_mode_answer(g, labels, mode)? {
                return Ok(Some(ans));
            }
        }
        return Ok(None);
    }
    // A residual vertex with a layer-two neighbour pins everything down to
    // at most four extensions, or rules the member out.
    let with_n2 = s_c
        .iter()
        .copied()
        .find(|&v| g.neighbours(v).iter().any(|&w| layer_of[w as usize] == 2));
    if let Some(s) = with_n2 {
        let comp_idx = triple
            .comps
            .iter()
            .position(|c| c.contains(s))
            .expect("residual vertex lies in a residual component");
        let outside = s_c.len() - triple.comps[comp_idx].len();
        if outside >= 2 {
            return Ok(None);
        }
        for flips in all_orientations(triple.comps.len()) {
            let labels = apply_orientation(triple, &flips);
            if let Some(ans) = verify_mode_answer(g, labels, mode)? {
                return Ok(Some(ans));
            }
        }
        return Ok(None);
    }
    // No layer-two neighbours: the apex is a cut vertex.
    match mode {
        ColouringMode::Acyclic => {
            let keep: Vec<bool> = (0..g.n()).map(|v| !in_s_c[v]).collect();
            let (rest, old_of) = g.induced(&keep);
            let rest_labels: Vec<u8> = old_of
                .iter()
                .map(|&v| triple.c_prime[v as usize])
                .collect();
            let rest_col = Colouring::new(rest_labels)?;
            if verify_colouring(&rest, &rest_col, ColouringMode::Acyclic)? {
                let labels = canonical_extension(triple);
                return verify_mode_answer(g, labels, mode);
            }
            Ok(None)
        }
        ColouringMode::Star => {
            if !graph::is_star_forest(&sub) {
                return Ok(None);
            }
            let independent = triple.comps.iter().all(Comp::is_singleton);
            if independent {
                // Uniform extensions only.
                for flips in [vec![true; triple.comps.len()], vec![false; triple.comps.len()]]
                {
                    let labels = apply_orientation(triple, &flips);
                    if let Some(ans) = verify_mode_answer(g, labels, mode)? {
                        return Ok(Some(ans));
                    }
                }
                Ok(None)
            } else {
                // Any proper extension serves equally.
                let labels = canonical_extension(triple);
                verify_mode_answer(g, labels, mode)
            }
        }
        ColouringMode::Proper => unreachable!("mode cases are acyclic or star"),
    }
}

/// Independent odd cycle transversal for one member: the minimum class over
/// all extensions is either the apex class or the smaller non-apex class
/// plus the smaller two-colouring side of the residual set.
fn case_odd_cycle(
    g: &Graph,
    triple: &ExtensionTriple,
    others: [u32; 2],
    k: Option<usize>,
) -> Result<Option<Answer>, SolveError> {
    let apex_colour = {
        // The pair excludes exactly the apex colour.
        let (p, q) = triple.pair;
        (1..=3u8).find(|&l| l != p && l != q).unwrap()
    };
    let count = |label: u8| triple.c_prime.iter().filter(|&&l| l == label).count();
    let cy = triple.c_prime[others[0] as usize];
    let cz = triple.c_prime[others[1] as usize];
    let (small_label, _) = if (count(cy), cy) <= (count(cz), cz) {
        (cy, cz)
    } else {
        (cz, cy)
    };
    let x_size = count(apex_colour);
    let small_size = count(small_label) + triple.w.len();

    let feasible = |size: usize| k.map_or(true, |k| size <= k);
    if feasible(x_size) {
        let labels = canonical_extension(triple);
        if let Some(ans) =
            verify_transversal_answer(g, labels, ProblemKind::Ioct { k }, &[apex_colour])?
        {
            return Ok(Some(ans));
        }
    }
    if feasible(small_size) {
        // Orient every component so its smaller side takes the small label.
        let flips: Vec<bool> = triple
            .comps
            .iter()
            .map(|c| {
                let a_side_small = c.part_a.len() <= c.part_b.len();
                let a_gets_p = small_label == triple.pair.0;
                a_side_small == a_gets_p
            })
            .collect();
        let labels = apply_orientation(triple, &flips);
        if let Some(ans) =
            verify_transversal_answer(g, labels, ProblemKind::Ioct { k }, &[small_label])?
        {
            return Ok(Some(ans));
        }
    }
    Ok(None)
}

/// Independent feedback vertex set / near-bipartiteness for one member.
fn case_feedback(
    g: &Graph,
    triple: &ExtensionTriple,
    others: [u32; 2],
    k: Option<usize>,
    w_yz_mask: &[bool],
    layer_of: &[u32],
) -> Result<Option<Answer>, SolveError> {
    let kind = ProblemKind::Ifvs { k };
    let apex_colour = {
        let (p, q) = triple.pair;
        (1..=3u8).find(|&l| l != p && l != q).unwrap()
    };
    let n = g.n();
    let count = |label: u8| triple.c_prime.iter().filter(|&&l| l == label).count();

    // The apex class is unchanged by extensions; test it first.
    let x_size = count(apex_colour);
    if k.map_or(true, |k| x_size <= k) {
        let keep: Vec<bool> = (0..n)
            .map(|v| triple.c_prime[v] != apex_colour)
            .collect();
        let (rest, _) = g.induced(&keep);
        if graph::is_forest(&rest) {
            let labels = canonical_extension(triple);
            if let Some(ans) = verify_transversal_answer(g, labels, kind, &[apex_colour])? {
                return Ok(Some(ans));
            }
        }
    }

    let cy = triple.c_prime[others[0] as usize];
    let cz = triple.c_prime[others[1] as usize];
    let pair_labels = {
        let mut l = [cy, cz];
        l.sort_unstable();
        l
    };

    if triple.comps.len() == 1 {
        for flips in all_orientations(1) {
            let labels = apply_orientation(triple, &flips);
            if let Some(ans) = verify_transversal_answer(g, labels, kind, &[1, 2, 3])? {
                return Ok(Some(ans));
            }
        }
        return Ok(None);
    }

    // Disconnected residual set.
    let w_common = w_yz_mask.iter().position(|&b| b);
    if let Some(w) = w_common {
        // Every residual vertex adjacent to the common neighbour must join
        // the transversal, leaving at most a handful of orientations.
        let aset: Vec<u32> = g
            .neighbours(w as u32)
            .iter()
            .copied()
            .filter(|&v| triple.s_c.binary_search(&v).is_ok())
            .collect();
        for &t in &pair_labels {
            let mut flips: Vec<Option<bool>> = vec![None; triple.comps.len()];
            let mut ok = true;
            for (i, comp) in triple.comps.iter().enumerate() {
                let in_a = comp.part_a.iter().any(|v| aset.contains(v));
                let in_b = comp.part_b.iter().any(|v| aset.contains(v));
                let a_gets_t = match (in_a, in_b) {
                    (true, true) => {
                        ok = false;
                        break;
                    }
                    (true, false) => true,
                    (false, true) => false,
                    (false, false) => continue,
                };
                // Orientation sends the a-side to t iff a_gets_t.
                let a_first = (t == triple.pair.0) == a_gets_t;
                flips[i] = Some(a_first);
            }
            if !ok {
                continue;
            }
            let free: Vec<usize> = (0..flips.len()).filter(|&i| flips[i].is_none()).collect();
            if free.len() > 5 {
                return Err(SolveError::PreconditionViolated(
                    "unbounded branching in the feedback case; input is not chair-free".into(),
                ));
            }
            for mask in 0..(1u32 << free.len()) {
                let mut concrete: Vec<bool> = Vec::with_capacity(flips.len());
                for (i, f) in flips.iter().enumerate() {
                    match f {
                        Some(b) => concrete.push(*b),
                        None => {
                            let pos = free.iter().position(|&x| x == i).unwrap();
                            concrete.push(mask >> (free.len() - 1 - pos) & 1 == 0);
                        }
                    }
                }
                let labels = apply_orientation(triple, &concrete);
                if let Some(ans) =
                    verify_transversal_answer(g, labels, kind, &[1, 2, 3])?
                {
                    return Ok(Some(ans));
                }
            }
        }
        return Ok(None);
    }

    let n2_adjacent = triple
        .s_c
        .iter()
        .any(|&v| g.neighbours(v).iter().any(|&w| layer_of[w as usize] == 2));
    if !n2_adjacent {
        // The apex is a cut vertex: the residual set contributes exactly
        // its smaller two-colouring side.
        let w_size = triple.w.len();
        for &t in &pair_labels {
            let t_size = count(t);
            if k.map_or(false, |k| t_size + w_size > k) {
                continue;
            }
            let keep: Vec<bool> = (0..n)
                .map(|v| triple.c_prime[v] != 0 && triple.c_prime[v] != t)
                .collect();
            let (rest, _) = g.induced(&keep);
            if !graph::is_forest(&rest) {
                continue;
            }
            let flips: Vec<bool> = triple
                .comps
                .iter()
                .map(|c| {
                    let a_side_small = c.part_a.len() <= c.part_b.len();
                    let a_gets_p = t == triple.pair.0;
                    a_side_small == a_gets_p
                })
                .collect();
            let labels = apply_orientation(triple, &flips);
            if let Some(ans) = verify_transversal_answer(g, labels, kind, &[t])? {
                return Ok(Some(ans));
            }
        }
        return Ok(None);
    }

    // Some layer-two vertex is adjacent to the residual set (and then, by
    // chair-freeness, to all of it): at most one residual vertex can stay
    // outside the transversal.
    let independent = triple.comps.iter().all(Comp::is_singleton);
    if independent {
        // All residual vertices are interchangeable; single out the least.
        let k_comps = triple.comps.len();
        let mut candidates: Vec<Vec<bool>> = Vec::new();
        for &uniform in &[true, false] {
            candidates.push(vec![uniform; k_comps]);
            let mut flipped = vec![uniform; k_comps];
            flipped[0] = !uniform;
            candidates.push(flipped);
        }
        for flips in candidates {
            let labels = apply_orientation(triple, &flips);
            if let Some(ans) = verify_transversal_answer(g, labels, kind, &[1, 2, 3])? {
                return Ok(Some(ans));
            }
        }
        return Ok(None);
    }
    // Not independent: orientations leaving at most one vertex outside the
    // transversal class.
    let non_singletons: Vec<usize> = (0..triple.comps.len())
        .filter(|&i| !triple.comps[i].is_singleton())
        .collect();
    if non_singletons.len() >= 2 {
        return Ok(None);
    }
    let big = non_singletons[0];
    for &t in &pair_labels {
        // Singletons all take t; the big component needs its non-t side of
        // size at most one.
        for &(a_first_means_t_on_a, small_side_len) in &[
            (true, triple.comps[big].part_b.len()),
            (false, triple.comps[big].part_a.len()),
        ] {
            if small_side_len > 1 {
                continue;
            }
            let mut flips = Vec::with_capacity(triple.comps.len());
            for (i, _comp) in triple.comps.iter().enumerate() {
                if i == big {
                    let a_gets_t = a_first_means_t_on_a;
                    flips.push((t == triple.pair.0) == a_gets_t);
                } else {
                    // Singleton lives in part_a; send it to t.
                    flips.push(t == triple.pair.0);
                }
            }
            let labels = apply_orientation(triple, &flips);
            if let Some(ans) = verify_transversal_answer(g, labels, kind, &[1, 2, 3])? {
                return Ok(Some(ans));
            }
        }
    }
    Ok(None)
}
