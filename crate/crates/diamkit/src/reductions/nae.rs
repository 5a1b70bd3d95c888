//! Three-literal CNF formulas for not-all-equal satisfiability, covering
//! collections, and the transformer that rewrites any formula into variant A
//! (every literal in at most two clauses, plus a covering collection).

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NaeError {
    #[error("line {line}: malformed formula file")]
    Parse { line: usize },
    #[error("clause {clause}: literal variable out of range")]
    VariableOutOfRange { clause: usize },
    #[error("literal {lit} appears in {count} clause slots, variant A allows 2")]
    VariantAViolation { lit: String, count: usize },
    #[error("clause {clause} is not all-positive or a literal exceeds 4 occurrences")]
    VariantBViolation { clause: usize },
    #[error("collection is invalid: {0}")]
    CollectionInvalid(String),
    #[error("collection leaves clause {clause} uncovered")]
    NotCovering { clause: usize },
    #[error("clause {clause} contains a duplicate literal")]
    DuplicateLiteral { clause: usize },
}

/// A literal: variable index plus polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    pub var: u32,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: u32) -> Self {
        Lit {
            var,
            positive: true,
        }
    }

    pub fn neg(var: u32) -> Self {
        Lit {
            var,
            positive: false,
        }
    }

    pub fn negated(self) -> Self {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }

    /// Signed 1-based encoding used in files.
    pub fn signed(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn from_signed(s: i64) -> Option<Self> {
        if s == 0 {
            return None;
        }
        Some(Lit {
            var: (s.unsigned_abs() - 1) as u32,
            positive: s > 0,
        })
    }
}

impl std::fmt::Display for Lit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.signed())
    }
}

/// CNF formula in which every clause is an ordered triple of literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaeFormula {
    pub num_vars: u32,
    pub clauses: Vec<[Lit; 3]>,
}

impl NaeFormula {
    pub fn new(num_vars: u32, clauses: Vec<[Lit; 3]>) -> Result<Self, NaeError> {
        for (i, c) in clauses.iter().enumerate() {
            if c.iter().any(|l| l.var >= num_vars) {
                return Err(NaeError::VariableOutOfRange { clause: i + 1 });
            }
        }
        Ok(Self { num_vars, clauses })
    }

    /// Occurrence count of every literal, counted per clause slot (so a
    /// literal repeated inside one clause counts multiple times). Indexed by
    /// `2 * var + (negative as usize)`.
    pub fn occurrences(&self) -> Vec<usize> {
        let mut occ = vec![0usize; 2 * self.num_vars as usize];
        for c in &self.clauses {
            for l in c {
                occ[Self::lit_index(*l)] += 1;
            }
        }
        occ
    }

    fn lit_index(l: Lit) -> usize {
        2 * l.var as usize + !l.positive as usize
    }

    fn lit_from_index(i: usize) -> Lit {
        Lit {
            var: (i / 2) as u32,
            positive: i % 2 == 0,
        }
    }

    /// Variant A validity: every literal appears in at most two clause slots.
    pub fn check_variant_a(&self) -> Result<(), NaeError> {
        let occ = self.occurrences();
        for (i, &count) in occ.iter().enumerate() {
            if count > 2 {
                return Err(NaeError::VariantAViolation {
                    lit: Self::lit_from_index(i).to_string(),
                    count,
                });
            }
        }
        Ok(())
    }

    /// Variant B validity: all literals positive and every literal occurs in
    /// at most four clauses.
    pub fn check_variant_b(&self) -> Result<(), NaeError> {
        for (i, c) in self.clauses.iter().enumerate() {
            if c.iter().any(|l| !l.positive) {
                return Err(NaeError::VariantBViolation { clause: i + 1 });
            }
        }
        let occ = self.occurrences();
        for (i, &count) in occ.iter().enumerate() {
            if count > 4 {
                return Err(NaeError::VariantBViolation {
                    clause: Self::lit_from_index(i).var as usize + 1,
                });
            }
        }
        Ok(())
    }

    pub fn check_distinct_literals(&self) -> Result<(), NaeError> {
        for (i, c) in self.clauses.iter().enumerate() {
            if c[0] == c[1] || c[0] == c[2] || c[1] == c[2] {
                return Err(NaeError::DuplicateLiteral { clause: i + 1 });
            }
        }
        Ok(())
    }

    /// Evaluates a clause under an assignment: satisfied iff it has at least
    /// one true and at least one false literal.
    pub fn clause_nae(&self, clause: usize, assignment: &[bool]) -> bool {
        let vals = self.clauses[clause].map(|l| assignment[l.var as usize] == l.positive);
        vals.iter().any(|&b| b) && vals.iter().any(|&b| !b)
    }

    pub fn is_nae_satisfied(&self, assignment: &[bool]) -> bool {
        (0..self.clauses.len()).all(|i| self.clause_nae(i, assignment))
    }

    /// Parses the format: '#' comments, header `p nae <vars> <clauses>`, then
    /// one clause per line as three non-zero signed integers terminated by 0.
    pub fn parse(text: &str) -> Result<Self, NaeError> {
        let mut header: Option<(u32, usize)> = None;
        let mut clauses: Vec<[Lit; 3]> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            if t.starts_with('p') {
                if header.is_some() {
                    return Err(NaeError::Parse { line });
                }
                let mut tok = t.split_whitespace();
                tok.next();
                if tok.next() != Some("nae") {
                    return Err(NaeError::Parse { line });
                }
                let vars = tok
                    .next()
                    .and_then(|s| s.parse::<u32>().ok())
                    .ok_or(NaeError::Parse { line })?;
                let m = tok
                    .next()
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or(NaeError::Parse { line })?;
                header = Some((vars, m));
                continue;
            }
            if header.is_none() {
                return Err(NaeError::Parse { line });
            }
            let nums: Result<Vec<i64>, _> =
                t.split_whitespace().map(|s| s.parse::<i64>()).collect();
            let nums = nums.map_err(|_| NaeError::Parse { line })?;
            if nums.len() != 4 || nums[3] != 0 {
                return Err(NaeError::Parse { line });
            }
            let lits: Option<Vec<Lit>> = nums[..3].iter().map(|&s| Lit::from_signed(s)).collect();
            let lits = lits.ok_or(NaeError::Parse { line })?;
            clauses.push([lits[0], lits[1], lits[2]]);
        }
        let (vars, m) = header.ok_or(NaeError::Parse { line: 0 })?;
        if clauses.len() != m {
            return Err(NaeError::Parse { line: 0 });
        }
        NaeFormula::new(vars, clauses)
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("p nae {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            out.push_str(&format!("{} {} {} 0\n", c[0], c[1], c[2]));
        }
        out
    }
}

/// One (literal, clause) pair per occurring literal. Covering iff every
/// clause owns at least one of its pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringCollection {
    /// Pairs with 0-based clause indices, sorted by literal.
    pub pairs: Vec<(Lit, usize)>,
}

impl CoveringCollection {
    /// Checks the collection invariant against a formula: exactly one pair
    /// per occurring literal, and every pair's literal occurs in its clause.
    pub fn validate(&self, phi: &NaeFormula) -> Result<(), NaeError> {
        let occ = phi.occurrences();
        let mut have = vec![false; occ.len()];
        for &(lit, c) in &self.pairs {
            if c >= phi.clauses.len() {
                return Err(NaeError::CollectionInvalid(format!(
                    "pair ({lit}, {}) points past the last clause",
                    c + 1
                )));
            }
            if !phi.clauses[c].contains(&lit) {
                return Err(NaeError::CollectionInvalid(format!(
                    "literal {lit} does not occur in clause {}",
                    c + 1
                )));
            }
            let idx = NaeFormula::lit_index(lit);
            if have[idx] {
                return Err(NaeError::CollectionInvalid(format!(
                    "literal {lit} has two pairs"
                )));
            }
            have[idx] = true;
        }
        for (i, &count) in occ.iter().enumerate() {
            if count > 0 && !have[i] {
                return Err(NaeError::CollectionInvalid(format!(
                    "occurring literal {} has no pair",
                    NaeFormula::lit_from_index(i)
                )));
            }
        }
        Ok(())
    }

    /// Number of clauses without any of their pairs.
    pub fn gamma(&self, phi: &NaeFormula) -> usize {
        let mut covered = vec![false; phi.clauses.len()];
        for &(_, c) in &self.pairs {
            if c < covered.len() {
                covered[c] = true;
            }
        }
        covered.iter().filter(|&&c| !c).count()
    }

    pub fn is_covering(&self, phi: &NaeFormula) -> bool {
        self.gamma(phi) == 0
    }

    pub fn covers(&self, lit: Lit, clause: usize) -> bool {
        self.pairs.contains(&(lit, clause))
    }

    /// Parses lines `pair <signed literal> <1-based clause index>`.
    pub fn parse(text: &str) -> Result<Self, NaeError> {
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let mut tok = t.split_whitespace();
            if tok.next() != Some("pair") {
                return Err(NaeError::Parse { line });
            }
            let lit = tok
                .next()
                .and_then(|s| s.parse::<i64>().ok())
                .and_then(Lit::from_signed)
                .ok_or(NaeError::Parse { line })?;
            let clause = tok
                .next()
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&c| c >= 1)
                .ok_or(NaeError::Parse { line })?;
            pairs.push((lit, clause - 1));
        }
        pairs.sort_unstable();
        Ok(Self { pairs })
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for &(lit, c) in &self.pairs {
            out.push_str(&format!("pair {} {}\n", lit, c + 1));
        }
        out
    }

    fn sorted(mut pairs: Vec<(Lit, usize)>) -> Self {
        pairs.sort_unstable();
        Self { pairs }
    }
}

/// Rewrites `phi` into an NAE-equivalent variant-A instance together with a
/// covering collection.
///
/// Step 1 splits any literal occurring three or more times with three fresh
/// variables and three clauses that force them all equal, replacing the two
/// lowest-index occurrences. Step 2 fixes a first-occurrence collection and
/// repairs uncovered clauses one at a time with the six-pair gadget, each
/// repair reducing the uncovered count by one.
pub fn to_variant_a(phi: &NaeFormula) -> (NaeFormula, CoveringCollection) {
    let mut clauses = phi.clauses.clone();
    let mut num_vars = phi.num_vars;

    // Step 1: reduce occurrence counts to at most two.
    loop {
        let mut occ: std::collections::HashMap<Lit, Vec<(usize, usize)>> =
            std::collections::HashMap::new();
        for (ci, c) in clauses.iter().enumerate() {
            for (si, l) in c.iter().enumerate() {
                occ.entry(*l).or_default().push((ci, si));
            }
        }
        let mut heavy: Vec<Lit> = occ
            .iter()
            .filter(|(_, slots)| slots.len() >= 3)
            .map(|(&l, _)| l)
            .collect();
        heavy.sort_unstable();
        let Some(&z) = heavy.first() else { break };
        let slots = &occ[&z];
        let y = Lit::pos(num_vars);
        let z1 = Lit::pos(num_vars + 1);
        let z2 = Lit::pos(num_vars + 2);
        num_vars += 3;
        // Replace the two lowest occurrences of z by z1 and z2.
        let (c1, s1) = slots[0];
        let (c2, s2) = slots[1];
        clauses[c1][s1] = z1;
        clauses[c2][s2] = z2;
        clauses.push([y, z1, z2.negated()]);
        clauses.push([y, z1.negated(), z2]);
        clauses.push([z, z1.negated(), z2.negated()]);
    }

    let phi_a = NaeFormula {
        num_vars,
        clauses: clauses.clone(),
    };
    debug_assert!(phi_a.check_variant_a().is_ok());

    // Step 2: start from the first-occurrence collection, then repair
    // uncovered clauses.
    let mut pair_of: std::collections::HashMap<Lit, usize> = std::collections::HashMap::new();
    for (ci, c) in clauses.iter().enumerate() {
        for l in c {
            pair_of.entry(*l).or_insert(ci);
        }
    }

    loop {
        let covered = |pair_of: &std::collections::HashMap<Lit, usize>, ci: usize| {
            clauses[ci].iter().any(|l| pair_of.get(l) == Some(&ci))
        };
        let uncovered = (0..clauses.len()).find(|&ci| !covered(&pair_of, ci));
        let Some(c1) = uncovered else { break };
        let z = clauses[c1][0];
        let c2 = pair_of[&z];
        debug_assert_ne!(c1, c2);
        let y = Lit::pos(num_vars);
        let z1 = Lit::pos(num_vars + 1);
        let z2 = Lit::pos(num_vars + 2);
        num_vars += 3;
        let s1 = clauses[c1].iter().position(|&l| l == z).unwrap();
        let s2 = clauses[c2].iter().position(|&l| l == z).unwrap();
        clauses[c1][s1] = z1;
        clauses[c2][s2] = z2;
        let a = clauses.len();
        clauses.push([y, z1, z2.negated()]); // clause a
        clauses.push([y, z1.negated(), z2]); // clause a + 1
        clauses.push([z, z1.negated(), z2.negated()]); // clause a + 2
        pair_of.remove(&z);
        pair_of.insert(y, a + 1);
        pair_of.insert(z, a + 2);
        pair_of.insert(z1, c1);
        pair_of.insert(z2, c2);
        pair_of.insert(z1.negated(), a + 2);
        pair_of.insert(z2.negated(), a);
    }

    let out = NaeFormula { num_vars, clauses };
    let collection =
        CoveringCollection::sorted(pair_of.into_iter().map(|(l, c)| (l, c)).collect());
    debug_assert!(out.check_variant_a().is_ok());
    debug_assert!(collection.validate(&out).is_ok());
    debug_assert!(collection.is_covering(&out));
    (out, collection)
}
