//! Majority/inverter expression trees stored as preorder gene strings.
//!
//! A chromosome is a flat `Vec<Gene>` spelling exactly one expression
//! tree in preorder: `MAJ` takes the next three subtrees, `INV` the next
//! one, and variables/constants are leaves. `M(M(B',C,0),A,1)` is
//! `[Maj, Maj, Inv, Var(1), Var(2), Zero, Var(0), One]`. The flat form
//! is what the genetic operators splice; the tree is implicit.

use crate::table::{TruthTable, MAX_VARS};
use rand::Rng;
use std::collections::HashSet;
use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gene {
    Maj,
    Inv,
    Var(u8),
    Zero,
    One,
}

impl Gene {
    pub fn arity(self) -> usize {
        match self {
            Gene::Maj => 3,
            Gene::Inv => 1,
            _ => 0,
        }
    }

    /// Fixed integer encoding: constants keep their value, gates sit
    /// below the variable block so up to ten variables fit.
    pub fn code(self) -> u8 {
        match self {
            Gene::Zero => 0,
            Gene::One => 1,
            Gene::Inv => 6,
            Gene::Maj => 7,
            Gene::Var(k) => 8 + k,
        }
    }

    pub fn from_code(code: u8) -> Option<Gene> {
        match code {
            0 => Some(Gene::Zero),
            1 => Some(Gene::One),
            6 => Some(Gene::Inv),
            7 => Some(Gene::Maj),
            8..=17 => Some(Gene::Var(code - 8)),
            _ => None,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MigError {
    #[error("empty gene sequence")]
    Empty,
    #[error("gene sequence continues past a complete tree (at index {at})")]
    TrailingGenes { at: usize },
    #[error("gene sequence ends with {missing} subtree(s) missing")]
    Incomplete { missing: usize },
    #[error("variable index {0} exceeds the supported maximum of {max}", max = MAX_VARS - 1)]
    VarOutOfRange(u8),
    #[error("chromosome uses variable {var} but the function has only {vars} variable(s)")]
    VarExceedsInputs { var: u8, vars: u8 },
}

/// One majority/inverter expression tree plus a lazily cached truth
/// table. Equality and hashing look at the genes only; the cache is
/// filled at most once per variable count actually used.
#[derive(Debug)]
pub struct Chromosome {
    genes: Vec<Gene>,
    cache: OnceLock<(u8, TruthTable)>,
}

impl Clone for Chromosome {
    fn clone(&self) -> Self {
        let cache = OnceLock::new();
        if let Some(v) = self.cache.get() {
            let _ = cache.set(v.clone());
        }
        Chromosome { genes: self.genes.clone(), cache }
    }
}

impl PartialEq for Chromosome {
    fn eq(&self, other: &Self) -> bool {
        self.genes == other.genes
    }
}

impl Eq for Chromosome {}

impl std::hash::Hash for Chromosome {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.genes.hash(state);
    }
}

/// Index one past the subtree rooted at `start`.
pub(crate) fn subtree_end(genes: &[Gene], start: usize) -> usize {
    let mut pending = 1usize;
    let mut i = start;
    while pending > 0 {
        pending = pending - 1 + genes[i].arity();
        i += 1;
    }
    i
}

impl Chromosome {
    /// Validates that `genes` spells exactly one complete tree.
    pub fn from_genes(genes: Vec<Gene>) -> Result<Self, MigError> {
        if genes.is_empty() {
            return Err(MigError::Empty);
        }
        let mut pending = 1usize;
        for (i, g) in genes.iter().enumerate() {
            if pending == 0 {
                return Err(MigError::TrailingGenes { at: i });
            }
            if let Gene::Var(k) = g {
                if *k >= MAX_VARS {
                    return Err(MigError::VarOutOfRange(*k));
                }
            }
            pending = pending - 1 + g.arity();
        }
        if pending != 0 {
            return Err(MigError::Incomplete { missing: pending });
        }
        Ok(Chromosome { genes, cache: OnceLock::new() })
    }

    pub fn leaf(gene: Gene) -> Self {
        Self::from_genes(vec![gene]).expect("a leaf gene is a complete tree")
    }

    pub fn genes(&self) -> &[Gene] {
        &self.genes
    }

    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a valid chromosome has at least one gene
    }

    pub fn max_var(&self) -> Option<u8> {
        self.genes
            .iter()
            .filter_map(|g| match g {
                Gene::Var(k) => Some(*k),
                _ => None,
            })
            .max()
    }

    /// Genes of the subtree whose root is node `i` (preorder index).
    pub fn subtree(&self, i: usize) -> &[Gene] {
        &self.genes[i..subtree_end(&self.genes, i)]
    }

    /// Truth table over `n` variables. Cached after the first call for
    /// a given `n`; a different `n` is recomputed without recaching.
    pub fn evaluate(&self, n: u8) -> Result<TruthTable, MigError> {
        if let Some((cached_n, t)) = self.cache.get() {
            if *cached_n == n {
                return Ok(t.clone());
            }
        }
        if let Some(v) = self.max_var() {
            if v >= n {
                return Err(MigError::VarExceedsInputs { var: v, vars: n });
            }
        }
        let (end, t) = eval_node(&self.genes, 0, n);
        debug_assert_eq!(end, self.genes.len());
        let _ = self.cache.set((n, t.clone()));
        Ok(t)
    }

    /// Gate counts and depth. `levels` is the largest number of majority
    /// gates on any root-to-leaf path; inverters add no level.
    pub fn metrics(&self) -> Metrics {
        let (end, m) = node_metrics(&self.genes, 0);
        debug_assert_eq!(end, self.genes.len());
        m
    }

    /// Distinct gate signatures: one entry per (gate kind, truth table)
    /// pair appearing at an internal node. Structurally different
    /// subtrees computing the same function collapse to one signature.
    pub fn gate_signatures(&self, n: u8) -> Result<SignatureSet, MigError> {
        if let Some(v) = self.max_var() {
            if v >= n {
                return Err(MigError::VarExceedsInputs { var: v, vars: n });
            }
        }
        let mut set = SignatureSet::default();
        collect_signatures(&self.genes, 0, n, &mut set);
        Ok(set)
    }

    /// Uniform random tree: gene kinds are drawn uniformly over
    /// majority, inverter, each variable, and both constants. Drafts
    /// longer than `max_len` are discarded and redrawn; after 1000
    /// discards the result degrades to a single random leaf.
    pub fn random(n_vars: u8, max_len: usize, rng: &mut impl Rng) -> Self {
        debug_assert!(n_vars >= 1 && max_len >= 1);
        let kinds = n_vars as usize + 4;
        for _ in 0..1000 {
            let mut genes = Vec::new();
            let mut pending = 1usize;
            while pending > 0 {
                let g = match rng.gen_range(0..kinds) {
                    0 => Gene::Maj,
                    1 => Gene::Inv,
                    k if k < 2 + n_vars as usize => Gene::Var((k - 2) as u8),
                    k if k == 2 + n_vars as usize => Gene::Zero,
                    _ => Gene::One,
                };
                genes.push(g);
                pending = pending - 1 + g.arity();
                if genes.len() + pending > max_len {
                    break;
                }
            }
            if pending == 0 {
                return Chromosome { genes, cache: OnceLock::new() };
            }
        }
        let leaf = match rng.gen_range(0..n_vars as usize + 2) {
            k if k < n_vars as usize => Gene::Var(k as u8),
            k if k == n_vars as usize => Gene::Zero,
            _ => Gene::One,
        };
        Chromosome::leaf(leaf)
    }
}

pub(crate) fn eval_node(genes: &[Gene], pos: usize, n: u8) -> (usize, TruthTable) {
    match genes[pos] {
        Gene::Maj => {
            let (p1, a) = eval_node(genes, pos + 1, n);
            let (p2, b) = eval_node(genes, p1, n);
            let (p3, c) = eval_node(genes, p2, n);
            (p3, TruthTable::maj3(&a, &b, &c))
        }
        Gene::Inv => {
            let (p1, a) = eval_node(genes, pos + 1, n);
            (p1, a.complement())
        }
        Gene::Var(k) => (pos + 1, TruthTable::var(n, k)),
        Gene::Zero => (pos + 1, TruthTable::zeros(n)),
        Gene::One => (pos + 1, TruthTable::ones(n)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Metrics {
    pub maj: usize,
    pub inv: usize,
    pub levels: usize,
}

impl Metrics {
    pub fn gates(&self) -> usize {
        self.maj + self.inv
    }
}

pub(crate) fn node_metrics(genes: &[Gene], pos: usize) -> (usize, Metrics) {
    match genes[pos] {
        Gene::Maj => {
            let (p1, a) = node_metrics(genes, pos + 1);
            let (p2, b) = node_metrics(genes, p1);
            let (p3, c) = node_metrics(genes, p2);
            let m = Metrics {
                maj: 1 + a.maj + b.maj + c.maj,
                inv: a.inv + b.inv + c.inv,
                levels: 1 + a.levels.max(b.levels).max(c.levels),
            };
            (p3, m)
        }
        Gene::Inv => {
            let (p1, a) = node_metrics(genes, pos + 1);
            (p1, Metrics { maj: a.maj, inv: a.inv + 1, levels: a.levels })
        }
        _ => (pos + 1, Metrics { maj: 0, inv: 0, levels: 0 }),
    }
}

/// Truth table of every node, indexed by preorder gene position.
pub(crate) fn node_tables(genes: &[Gene], n: u8) -> Vec<TruthTable> {
    fn fill(genes: &[Gene], pos: usize, n: u8, out: &mut [Option<TruthTable>]) -> (usize, TruthTable) {
        let (end, t) = match genes[pos] {
            Gene::Maj => {
                let (p1, a) = fill(genes, pos + 1, n, out);
                let (p2, b) = fill(genes, p1, n, out);
                let (p3, c) = fill(genes, p2, n, out);
                (p3, TruthTable::maj3(&a, &b, &c))
            }
            Gene::Inv => {
                let (p1, a) = fill(genes, pos + 1, n, out);
                (p1, a.complement())
            }
            Gene::Var(k) => (pos + 1, TruthTable::var(n, k)),
            Gene::Zero => (pos + 1, TruthTable::zeros(n)),
            Gene::One => (pos + 1, TruthTable::ones(n)),
        };
        out[pos] = Some(t.clone());
        (end, t)
    }
    let mut out = vec![None; genes.len()];
    fill(genes, 0, n, &mut out);
    out.into_iter().map(|t| t.expect("every node visited")).collect()
}

/// `base` with the subtree rooted at `at` replaced by `donor` (a
/// complete tree), preserving arity balance.
pub(crate) fn splice(base: &[Gene], at: usize, donor: &[Gene]) -> Vec<Gene> {
    let end = subtree_end(base, at);
    let mut out = Vec::with_capacity(base.len() - (end - at) + donor.len());
    out.extend_from_slice(&base[..at]);
    out.extend_from_slice(donor);
    out.extend_from_slice(&base[end..]);
    out
}

/// The distinct majority and inverter functions realized by a
/// chromosome set's internal nodes.
#[derive(Debug, Default, Clone)]
pub struct SignatureSet {
    pub maj: HashSet<TruthTable>,
    pub inv: HashSet<TruthTable>,
}

impl SignatureSet {
    pub fn len(&self) -> usize {
        self.maj.len() + self.inv.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maj.is_empty() && self.inv.is_empty()
    }

    pub fn merge(&mut self, other: &SignatureSet) {
        self.maj.extend(other.maj.iter().cloned());
        self.inv.extend(other.inv.iter().cloned());
    }

    /// (majority, inverter) signatures present in both sets.
    pub fn common_counts(&self, other: &SignatureSet) -> (usize, usize) {
        let maj = self.maj.iter().filter(|t| other.maj.contains(*t)).count();
        let inv = self.inv.iter().filter(|t| other.inv.contains(*t)).count();
        (maj, inv)
    }
}

fn collect_signatures(genes: &[Gene], pos: usize, n: u8, set: &mut SignatureSet) -> (usize, TruthTable) {
    match genes[pos] {
        Gene::Maj => {
            let (p1, a) = collect_signatures(genes, pos + 1, n, set);
            let (p2, b) = collect_signatures(genes, p1, n, set);
            let (p3, c) = collect_signatures(genes, p2, n, set);
            let t = TruthTable::maj3(&a, &b, &c);
            set.maj.insert(t.clone());
            (p3, t)
        }
        Gene::Inv => {
            let (p1, a) = collect_signatures(genes, pos + 1, n, set);
            let t = a.complement();
            set.inv.insert(t.clone());
            (p1, t)
        }
        Gene::Var(k) => (pos + 1, TruthTable::var(n, k)),
        Gene::Zero => (pos + 1, TruthTable::zeros(n)),
        Gene::One => (pos + 1, TruthTable::ones(n)),
    }
}

/// Distinct (majority, inverter) signatures shared between two
/// chromosome sets. Symmetric in its arguments.
pub fn common_gate_counts(x: &[Chromosome], y: &[Chromosome], n: u8) -> Result<(usize, usize), MigError> {
    let mut sx = SignatureSet::default();
    for c in x {
        sx.merge(&c.gate_signatures(n)?);
    }
    let mut sy = SignatureSet::default();
    for c in y {
        sy.merge(&c.gate_signatures(n)?);
    }
    Ok(sx.common_counts(&sy))
}
