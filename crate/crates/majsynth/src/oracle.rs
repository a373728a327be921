//! Exhaustive search for minimum-cost majority realizations, used to
//! ground the heuristic results, plus solution verification.
//!
//! The search explores every function reachable by majority trees in
//! order of gate count. Inverters are free: whenever a function is
//! reached, its complement is reached at the same cost. For each
//! function the search records the minimum number of majority gates,
//! the minimum depth among minimum-gate trees, and one witness tree
//! achieving both. Tree cost is exact for single-output networks
//! because a tree shares nothing.
//!
//! Two variables close fully within 3 gates and three variables within
//! 5. Four variables are only tractable up to a bound of 4 gates, and
//! five or more are out of reach here.

use crate::mig::{Chromosome, Gene, MigError};
use crate::table::TruthTable;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("exhaustive search supports 1 to 4 variables, got {0}")]
    UnsupportedVars(u8),
    #[error("a 4-variable search is tractable only up to 4 gates, got a bound of {0}")]
    BoundTooHigh(usize),
    #[error("cache line {line}: {reason}")]
    BadCache { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Largest gate bound the search accepts per variable count, and the
/// bound that is known to reach every function for 1 to 3 variables.
pub fn default_gate_bound(n: u8) -> usize {
    if n <= 3 {
        5
    } else {
        4
    }
}

#[derive(Debug, Clone)]
enum Parent {
    Leaf(Gene),
    Complement(TruthTable),
    Maj(TruthTable, TruthTable, TruthTable),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub min_maj: usize,
    pub min_level: usize,
    pub witness: Chromosome,
}

/// Everything reachable within a gate bound, in discovery order.
pub struct Closure {
    n: u8,
    dist: HashMap<TruthTable, usize>,
    level: HashMap<TruthTable, usize>,
    parent: HashMap<TruthTable, Parent>,
    frontier: Vec<Vec<TruthTable>>,
}

impl Closure {
    pub fn explore(n: u8, max_gates: usize) -> Result<Closure, OracleError> {
        if n == 0 || n > 4 {
            return Err(OracleError::UnsupportedVars(n));
        }
        if n == 4 && max_gates > 4 {
            return Err(OracleError::BoundTooHigh(max_gates));
        }
        let total = 1usize << (1usize << n);
        let mut c = Closure {
            n,
            dist: HashMap::new(),
            level: HashMap::new(),
            parent: HashMap::new(),
            frontier: Vec::new(),
        };

        let mut base: Vec<TruthTable> = Vec::new();
        for k in 0..n {
            c.seed(TruthTable::var(n, k), Parent::Leaf(Gene::Var(k)), &mut base);
        }
        c.seed(TruthTable::zeros(n), Parent::Leaf(Gene::Zero), &mut base);
        c.seed(TruthTable::ones(n), Parent::Leaf(Gene::One), &mut base);
        for i in 0..base.len() {
            let t = base[i].complement();
            if !c.dist.contains_key(&t) {
                c.dist.insert(t.clone(), 0);
                c.level.insert(t.clone(), 0);
                c.parent.insert(t.clone(), Parent::Complement(base[i].clone()));
                base.push(t);
            }
        }
        c.frontier.push(base);

        for k in 1..=max_gates {
            if c.dist.len() == total {
                break;
            }
            let mut pending: Vec<(TruthTable, usize, Parent)> = Vec::new();
            let mut index: HashMap<TruthTable, usize> = HashMap::new();
            // Operand costs sum to k-1; majority is symmetric, so each
            // unordered triple is visited once.
            for i in 0..k {
                for j in i..k - i {
                    let l = k - 1 - i - j;
                    if l < j || l >= c.frontier.len() {
                        continue;
                    }
                    for ai in 0..c.frontier[i].len() {
                        let bj0 = if j == i { ai } else { 0 };
                        for bi in bj0..c.frontier[j].len() {
                            let cj0 = if l == j { bi } else { 0 };
                            for ci in cj0..c.frontier[l].len() {
                                let a = &c.frontier[i][ai];
                                let b = &c.frontier[j][bi];
                                let d = &c.frontier[l][ci];
                                let t = TruthTable::maj3(a, b, d);
                                if c.dist.contains_key(&t) {
                                    continue;
                                }
                                let lvl = 1 + c.level[a].max(c.level[b]).max(c.level[d]);
                                match index.get(&t) {
                                    Some(&p) => {
                                        if lvl < pending[p].1 {
                                            pending[p].1 = lvl;
                                            pending[p].2 =
                                                Parent::Maj(a.clone(), b.clone(), d.clone());
                                        }
                                    }
                                    None => {
                                        index.insert(t.clone(), pending.len());
                                        pending.push((
                                            t,
                                            lvl,
                                            Parent::Maj(a.clone(), b.clone(), d.clone()),
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }

            let mut front: Vec<TruthTable> = Vec::new();
            for (t, lvl, parent) in pending {
                c.dist.insert(t.clone(), k);
                c.level.insert(t.clone(), lvl);
                c.parent.insert(t.clone(), parent);
                front.push(t);
            }
            // Free inverters: complements arrive at the same cost, and
            // whichever side of a complement pair is shallower sets
            // both depths.
            let mut fi = 0;
            while fi < front.len() {
                let t = front[fi].clone();
                let tc = t.complement();
                match c.dist.get(&tc) {
                    None => {
                        c.dist.insert(tc.clone(), k);
                        c.level.insert(tc.clone(), c.level[&t]);
                        c.parent.insert(tc.clone(), Parent::Complement(t));
                        front.push(tc);
                    }
                    Some(&dc) if dc == k => {
                        if c.level[&t] < c.level[&tc] {
                            c.level.insert(tc.clone(), c.level[&t]);
                            c.parent.insert(tc.clone(), Parent::Complement(t.clone()));
                        } else if c.level[&tc] < c.level[&t] {
                            c.level.insert(t.clone(), c.level[&tc]);
                            c.parent.insert(t.clone(), Parent::Complement(tc));
                        }
                    }
                    Some(_) => {}
                }
                fi += 1;
            }
            c.frontier.push(front);
        }
        Ok(c)
    }

    fn seed(&mut self, t: TruthTable, parent: Parent, base: &mut Vec<TruthTable>) {
        if self.dist.contains_key(&t) {
            return;
        }
        self.dist.insert(t.clone(), 0);
        self.level.insert(t.clone(), 0);
        self.parent.insert(t.clone(), parent);
        base.push(t);
    }

    pub fn vars(&self) -> u8 {
        self.n
    }

    /// Number of distinct functions reached.
    pub fn found(&self) -> usize {
        self.dist.len()
    }

    /// Every reached function, cheapest first, in discovery order.
    pub fn tables(&self) -> impl Iterator<Item = &TruthTable> {
        self.frontier.iter().flatten()
    }

    pub fn lookup(&self, t: &TruthTable) -> Option<ExactResult> {
        let &min_maj = self.dist.get(t)?;
        let mut genes = Vec::new();
        self.build(t, &mut genes);
        let witness = Chromosome::from_genes(genes).expect("parent chains spell complete trees");
        debug_assert_eq!(witness.metrics().maj, min_maj);
        Some(ExactResult { min_maj, min_level: self.level[t], witness })
    }

    fn build(&self, t: &TruthTable, out: &mut Vec<Gene>) {
        match &self.parent[t] {
            Parent::Leaf(g) => out.push(*g),
            Parent::Complement(u) => {
                out.push(Gene::Inv);
                self.build(u, out);
            }
            Parent::Maj(a, b, d) => {
                out.push(Gene::Maj);
                self.build(a, out);
                self.build(b, out);
                self.build(d, out);
            }
        }
    }

    /// One `hex min_maj witness` line per reached function, in
    /// discovery order.
    pub fn cache_lines(&self) -> Vec<String> {
        self.tables()
            .map(|t| {
                let r = self.lookup(t).expect("reached tables always resolve");
                let mut line = String::new();
                write!(line, "{} {} {}", t.to_hex(), r.min_maj, r.witness).expect("infallible");
                line
            })
            .collect()
    }
}

/// Minimum majority gates for one function, searching up to
/// `max_gates`. `Ok(None)` means the bound was too small.
pub fn exact_min_majority(t: &TruthTable, max_gates: usize) -> Result<Option<ExactResult>, OracleError> {
    let c = Closure::explore(t.vars(), max_gates)?;
    Ok(c.lookup(t))
}

/// Parses `hex min_maj witness` lines. The variable count comes from
/// the hex width; each witness is re-checked against its table and
/// gate count, so a stale or hand-edited file cannot poison results.
pub fn load_cache(path: &Path) -> Result<HashMap<TruthTable, ExactResult>, OracleError> {
    let text = std::fs::read_to_string(path)?;
    let mut out = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let bad = |reason: String| OracleError::BadCache { line, reason };
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let mut parts = s.split_whitespace();
        let (hex, maj, expr) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some(h), Some(m), Some(e), None) => (h, m, e),
            _ => return Err(bad("expected `hex min_maj witness`".into())),
        };
        let n = match hex.len() {
            1 => 2,
            2 => 3,
            4 => 4,
            len => return Err(bad(format!("unsupported table width ({len} hex digits)"))),
        };
        let t = TruthTable::from_hex(n, hex).map_err(|e| bad(e.to_string()))?;
        let min_maj: usize = maj.parse().map_err(|_| bad(format!("bad gate count {maj:?}")))?;
        let witness: Chromosome = expr.parse().map_err(|e| bad(format!("bad witness: {e}")))?;
        let wt = witness.evaluate(n).map_err(|e| bad(e.to_string()))?;
        if wt != t {
            return Err(bad("witness does not realize its table".into()));
        }
        if witness.metrics().maj != min_maj {
            return Err(bad("witness gate count does not match".into()));
        }
        let min_level = witness.metrics().levels;
        out.insert(t, ExactResult { min_maj, min_level, witness });
    }
    Ok(out)
}

pub fn save_cache(path: &Path, lines: &[String]) -> Result<(), OracleError> {
    let mut text = lines.join("\n");
    if !text.is_empty() {
        text.push('\n');
    }
    std::fs::write(path, text)?;
    Ok(())
}

/// One output to check against its specified function.
pub struct VerifyCase<'a> {
    pub name: &'a str,
    pub chromosome: &'a Chromosome,
    pub target: &'a TruthTable,
}

#[derive(Debug)]
pub struct OutputCheck {
    pub name: String,
    /// Input rows (minterm indices) where the realization disagrees.
    pub mismatches: Vec<u64>,
}

impl OutputCheck {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Debug)]
pub struct VerifyReport {
    pub outputs: Vec<OutputCheck>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.outputs.iter().all(|o| o.ok())
    }
}

/// Row-by-row check of each realization against its target.
pub fn verify(cases: &[VerifyCase]) -> Result<VerifyReport, MigError> {
    let mut outputs = Vec::with_capacity(cases.len());
    for case in cases {
        let t = case.chromosome.evaluate(case.target.vars())?;
        let mut mismatches = Vec::new();
        for row in 0..case.target.rows() {
            if t.bit(row) != case.target.bit(row) {
                mismatches.push(row);
            }
        }
        outputs.push(OutputCheck { name: case.name.to_string(), mismatches });
    }
    Ok(VerifyReport { outputs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(n: u8, m: &[u64]) -> TruthTable {
        TruthTable::from_minterms(n, m).unwrap()
    }

    #[test]
    fn leaves_and_their_complements_cost_nothing() {
        let c = Closure::explore(2, 3).unwrap();
        for t in [
            TruthTable::var(2, 0),
            TruthTable::var(2, 1),
            TruthTable::zeros(2),
            TruthTable::ones(2),
            TruthTable::var(2, 0).complement(),
        ] {
            let r = c.lookup(&t).unwrap();
            assert_eq!((r.min_maj, r.min_level), (0, 0));
            assert_eq!(r.witness.evaluate(2).unwrap(), t);
        }
    }

    #[test]
    fn and_takes_one_gate_and_xor_takes_three() {
        let c = Closure::explore(2, 3).unwrap();
        let and = c.lookup(&table(2, &[3])).unwrap();
        assert_eq!((and.min_maj, and.min_level), (1, 1));
        let xor = c.lookup(&table(2, &[1, 2])).unwrap();
        assert_eq!(xor.min_maj, 3);
        assert_eq!(xor.min_level, 2);
    }

    #[test]
    fn no_two_gate_tree_reaches_xor() {
        // Independent of the search: enumerate every table a tree with
        // at most two majority gates can realize over two variables.
        let xor = table(2, &[1, 2]);
        let mut leaves = vec![
            TruthTable::var(2, 0),
            TruthTable::var(2, 1),
            TruthTable::zeros(2),
            TruthTable::ones(2),
        ];
        leaves.extend(leaves.clone().iter().map(|t| t.complement()));
        let mut one_gate = Vec::new();
        for a in &leaves {
            for b in &leaves {
                for d in &leaves {
                    let t = TruthTable::maj3(a, b, d);
                    one_gate.push(t.complement());
                    one_gate.push(t);
                }
            }
        }
        assert!(!leaves.contains(&xor));
        assert!(!one_gate.contains(&xor));
        // Two gates: one operand of the root is itself a gate.
        for inner in &one_gate {
            for x in &leaves {
                for y in &leaves {
                    for t in [
                        TruthTable::maj3(inner, x, y),
                        TruthTable::maj3(x, inner, y),
                        TruthTable::maj3(x, y, inner),
                    ] {
                        assert_ne!(t.complement(), xor);
                        assert_ne!(t, xor);
                    }
                }
            }
        }
    }

    #[test]
    fn two_variable_functions_close_within_three_gates() {
        let c = Closure::explore(2, 3).unwrap();
        assert_eq!(c.found(), 16);
        for t in c.tables() {
            let r = c.lookup(t).unwrap();
            assert_eq!(r.witness.evaluate(2).unwrap(), *t);
            assert_eq!(r.witness.metrics().maj, r.min_maj);
            assert_eq!(r.witness.metrics().levels, r.min_level);
        }
    }

    #[test]
    fn exploration_is_deterministic() {
        let a = Closure::explore(3, 4).unwrap();
        let b = Closure::explore(3, 4).unwrap();
        let order_a: Vec<&TruthTable> = a.tables().collect();
        let order_b: Vec<&TruthTable> = b.tables().collect();
        assert_eq!(order_a, order_b);
        for t in a.tables() {
            assert_eq!(a.lookup(t), b.lookup(t));
        }
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(matches!(Closure::explore(5, 3), Err(OracleError::UnsupportedVars(5))));
        assert!(matches!(Closure::explore(0, 3), Err(OracleError::UnsupportedVars(0))));
        assert!(matches!(Closure::explore(4, 5), Err(OracleError::BoundTooHigh(5))));
        // An insufficient bound is reported as absence, not an error.
        let c = Closure::explore(2, 1).unwrap();
        assert!(c.lookup(&table(2, &[1, 2])).is_none());
    }

    #[test]
    fn verify_reports_exact_mismatch_rows() {
        let maj: Chromosome = "M(A,B,C)".parse().unwrap();
        let target = table(3, &[3, 5, 6, 7]);
        let wrong = table(3, &[3, 5, 6]);
        let report = verify(&[
            VerifyCase { name: "good", chromosome: &maj, target: &target },
            VerifyCase { name: "bad", chromosome: &maj, target: &wrong },
        ])
        .unwrap();
        assert!(report.outputs[0].ok());
        assert!(!report.outputs[1].ok());
        assert_eq!(report.outputs[1].mismatches, vec![7]);
        assert!(!report.ok());
    }

    #[test]
    fn cache_lines_round_trip() {
        let c = Closure::explore(2, 3).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("exact.cache");
        save_cache(&path, &c.cache_lines()).unwrap();
        let loaded = load_cache(&path).unwrap();
        assert_eq!(loaded.len(), 16);
        for t in c.tables() {
            let r = c.lookup(t).unwrap();
            let l = &loaded[t];
            assert_eq!((l.min_maj, l.min_level), (r.min_maj, r.min_level));
            assert_eq!(l.witness.evaluate(2).unwrap(), *t);
        }
    }

    #[test]
    fn corrupt_cache_lines_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("exact.cache");
        std::fs::write(&path, "e8 1 M(A,B,0)\n").unwrap(); // witness computes a different table
        assert!(matches!(load_cache(&path), Err(OracleError::BadCache { line: 1, .. })));
        std::fs::write(&path, "e8 2 M(A,B,C)\n").unwrap(); // declared gate count is wrong
        assert!(matches!(load_cache(&path), Err(OracleError::BadCache { line: 1, .. })));
        std::fs::write(&path, "8 1 M(A,B,0)\nnot a line\n").unwrap();
        assert!(matches!(load_cache(&path), Err(OracleError::BadCache { line: 2, .. })));
        std::fs::write(&path, "# comment\n\n8 1 M(A,B,0)\n").unwrap();
        assert_eq!(load_cache(&path).unwrap().len(), 1);
    }
}
