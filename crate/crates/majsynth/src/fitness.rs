//! Fitness objectives. Lower is better everywhere.
//!
//! A candidate that fails to match its target function scores the row
//! count divided by the number of matching rows (at least 1), so more
//! agreement means a smaller value. Exact realizations score below 1:
//! `1 - (1/gates + 1/levels)`, which rewards small and shallow
//! networks, with `-3` reserved for gate-free realizations that have
//! nothing left to optimize. For every output after the first, a
//! candidate is scored together with the cheapest compatible partial
//! network built for the earlier outputs, counting gates it can share
//! with that network only once.

use crate::mig::{Chromosome, Gene, MigError, SignatureSet};
use crate::rewrite::{harmonize_prepared, side_index, SideIndex};
use crate::table::TruthTable;
use std::collections::HashSet;

/// Values below 1 mean the candidate realizes its target exactly.
pub fn is_valid(value: f64) -> bool {
    value < 1.0
}

fn mismatch_value(rows: u64, matched: u64) -> f64 {
    if matched == 0 {
        2.0 * rows as f64
    } else {
        rows as f64 / matched as f64
    }
}

fn structural_value(gates: usize, levels: usize) -> f64 {
    if gates == 0 || levels == 0 {
        -3.0
    } else {
        1.0 - (1.0 / gates as f64 + 1.0 / levels as f64)
    }
}

/// Single-output fitness: mismatch ratio until the target is matched,
/// then the gate/level objective on the candidate alone.
pub fn fitness1(c: &Chromosome, target: &TruthTable) -> f64 {
    let t = c.evaluate(target.vars()).expect("chromosome variables must fit the target");
    let rows = target.rows();
    let m = target.match_count(&t);
    if m < rows {
        return mismatch_value(rows, m);
    }
    let met = c.metrics();
    structural_value(met.gates(), met.levels)
}

/// One accepted partial network: an implementation per output handled
/// so far, plus cached aggregates the incremental objective needs.
#[derive(Debug, Clone)]
pub struct StoredRow {
    chroms: Vec<Chromosome>,
    value: f64,
    sigs: SignatureSet,
    unique_maj: usize,
    unique_inv: usize,
    max_level: usize,
    side: SideIndex,
}

impl StoredRow {
    pub fn new(chroms: Vec<Chromosome>, value: f64, n: u8) -> Result<Self, MigError> {
        debug_assert!(!chroms.is_empty());
        let mut sigs = SignatureSet::default();
        let mut max_level = 0;
        for c in &chroms {
            sigs.merge(&c.gate_signatures(n)?);
            max_level = max_level.max(c.metrics().levels);
        }
        let side = side_index(&chroms, n)?;
        let (unique_maj, unique_inv) = (sigs.maj.len(), sigs.inv.len());
        Ok(StoredRow { chroms, value, sigs, unique_maj, unique_inv, max_level, side })
    }

    pub fn chromosomes(&self) -> &[Chromosome] {
        &self.chroms
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    fn key(&self) -> Vec<Vec<Gene>> {
        self.chroms.iter().map(|c| c.genes().to_vec()).collect()
    }
}

/// Bounded, insertion-ordered set of accepted rows. Duplicates (same
/// gene strings throughout) are dropped. When full, a strictly better
/// row evicts the earliest row with the worst fitness; anything else
/// is dropped.
#[derive(Debug)]
pub struct RowStore {
    rows: Vec<StoredRow>,
    keys: HashSet<Vec<Vec<Gene>>>,
    cap: usize,
}

impl RowStore {
    pub fn new(cap: usize) -> Self {
        debug_assert!(cap >= 1);
        RowStore { rows: Vec::new(), keys: HashSet::new(), cap }
    }

    pub fn rows(&self) -> &[StoredRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn insert(&mut self, row: StoredRow) -> bool {
        let key = row.key();
        if self.keys.contains(&key) {
            return false;
        }
        if self.rows.len() < self.cap {
            self.keys.insert(key);
            self.rows.push(row);
            return true;
        }
        let mut worst = 0;
        for (i, r) in self.rows.iter().enumerate() {
            if r.value.total_cmp(&self.rows[worst].value).is_gt() {
                worst = i;
            }
        }
        if row.value.total_cmp(&self.rows[worst].value).is_lt() {
            let old = self.rows.remove(worst);
            self.keys.remove(&old.key());
            self.keys.insert(key);
            self.rows.push(row);
            true
        } else {
            false
        }
    }
}

/// Evaluation context for every output after the first: the target
/// function plus the rows accepted for the previous outputs.
pub struct FitnessContext<'a> {
    pub n: u8,
    pub target: &'a TruthTable,
    pub rows: &'a [StoredRow],
}

/// Picks the stored row that extends cheapest with `c`: gates the row
/// does not already share with `c`, weighted with inverters at a third
/// of a majority gate, with the combined depth never allowed to grow
/// unless it strictly improves. Scanning in row order, the first
/// strict improvement wins.
fn select_row(c_sigs: &SignatureSet, c_levels: usize, rows: &[StoredRow]) -> usize {
    let mut best = 0;
    let mut best_thirds = usize::MAX;
    let mut best_level = usize::MAX;
    for (i, row) in rows.iter().enumerate() {
        let (cm, ci) = c_sigs.common_counts(&row.sigs);
        let thirds = 3 * (row.unique_maj - cm) + (row.unique_inv - ci);
        let level = c_levels.max(row.max_level);
        if i == 0 || (thirds < best_thirds && level <= best_level) || level < best_level {
            best = i;
            best_thirds = thirds;
            best_level = level;
        }
    }
    best
}

/// A valid candidate combined with its selected row, after the two
/// sides were harmonized to share implementations.
pub struct CombineOutcome {
    pub value: f64,
    pub row_index: usize,
    /// The candidate, rewritten onto shared implementations.
    pub chromosome: Chromosome,
    /// The selected row, likewise rewritten.
    pub row: Vec<Chromosome>,
    pub level: usize,
    pub gates: usize,
}

/// Scores `c` against the stored rows; `None` when `c` does not
/// realize the target. The score counts the row's distinct gate
/// functions plus the candidate's gates, minus the functions the
/// harmonized pair shares.
pub fn combine(c: &Chromosome, ctx: &FitnessContext) -> Option<CombineOutcome> {
    debug_assert!(!ctx.rows.is_empty());
    let t = c.evaluate(ctx.n).expect("chromosome variables must fit the target");
    if ctx.target.match_count(&t) < ctx.target.rows() {
        return None;
    }
    let c_sigs = c.gate_signatures(ctx.n).expect("validated above");
    let row_index = select_row(&c_sigs, c.metrics().levels, ctx.rows);
    let row = &ctx.rows[row_index];

    let c_side = side_index(std::slice::from_ref(c), ctx.n).expect("validated above");
    let (c2, row2) = harmonize_prepared(c, &row.chroms, ctx.n, &c_side, &row.side);

    let mut row_sigs = SignatureSet::default();
    let mut row_level = 0;
    for r in &row2 {
        row_sigs.merge(&r.gate_signatures(ctx.n).expect("harmonization keeps variables"));
        row_level = row_level.max(r.metrics().levels);
    }
    let c2m = c2.metrics();
    let c2_sigs = c2.gate_signatures(ctx.n).expect("harmonization keeps variables");
    let (cm, ci) = c2_sigs.common_counts(&row_sigs);
    let level = c2m.levels.max(row_level);
    let gates = row_sigs.maj.len() + row_sigs.inv.len() + (c2m.maj + c2m.inv) - (cm + ci);
    let value = structural_value(gates, level);
    Some(CombineOutcome { value, row_index, chromosome: c2, row: row2, level, gates })
}

/// Incremental fitness for outputs after the first.
pub fn fitness2(c: &Chromosome, ctx: &FitnessContext) -> f64 {
    let t = c.evaluate(ctx.n).expect("chromosome variables must fit the target");
    let rows = ctx.target.rows();
    let m = ctx.target.match_count(&t);
    if m < rows {
        return mismatch_value(rows, m);
    }
    combine(c, ctx).expect("match checked above").value
}

/// Cost summary of a finished multi-output network. Per-output counts
/// are structural; totals count each distinct gate function once, so
/// the difference is what the outputs share.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CombinedMetrics {
    pub structural_maj: usize,
    pub structural_inv: usize,
    pub distinct_maj: usize,
    pub distinct_inv: usize,
    pub max_level: usize,
}

impl CombinedMetrics {
    pub fn of(chroms: &[Chromosome], n: u8) -> Result<Self, MigError> {
        let mut sigs = SignatureSet::default();
        let mut structural_maj = 0;
        let mut structural_inv = 0;
        let mut max_level = 0;
        for c in chroms {
            let m = c.metrics();
            structural_maj += m.maj;
            structural_inv += m.inv;
            max_level = max_level.max(m.levels);
            sigs.merge(&c.gate_signatures(n)?);
        }
        Ok(CombinedMetrics {
            structural_maj,
            structural_inv,
            distinct_maj: sigs.maj.len(),
            distinct_inv: sigs.inv.len(),
            max_level,
        })
    }

    pub fn common_maj(&self) -> usize {
        self.structural_maj - self.distinct_maj
    }

    pub fn common_inv(&self) -> usize {
        self.structural_inv - self.distinct_inv
    }

    pub fn total_gates(&self) -> usize {
        self.distinct_maj + self.distinct_inv
    }

    /// Total cost with inverters at a third of a majority gate,
    /// scaled by 3 so comparisons stay in integers.
    pub fn weighted_thirds(&self) -> usize {
        3 * self.distinct_maj + self.distinct_inv
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chrom(s: &str) -> Chromosome {
        s.parse().unwrap()
    }

    fn table(n: u8, minterms: &[u64]) -> TruthTable {
        TruthTable::from_minterms(n, minterms).unwrap()
    }

    #[test]
    fn fitness_one_scores_partial_matches_by_ratio() {
        // A agrees with MAJ(A,B,C) on 6 of 8 rows.
        let target = table(3, &[3, 5, 6, 7]);
        assert_eq!(fitness1(&chrom("A"), &target), 8.0 / 6.0);
        // The complement disagrees everywhere.
        assert_eq!(fitness1(&chrom("M(A,B,C)'"), &target), 16.0);
        assert_eq!(fitness1(&chrom("M(A,B,C)"), &target), 1.0 - (1.0 / 1.0 + 1.0 / 1.0));
    }

    #[test]
    fn fitness_one_scores_exact_matches_by_size_and_depth() {
        // 2 majority gates, 2 inverters, 2 levels.
        let c = chrom("M(M(B',C,0),A',1)");
        let target = c.evaluate(3).unwrap();
        assert_eq!(fitness1(&c, &target), 0.25);
        assert!(is_valid(0.25));
        assert!(!is_valid(8.0 / 6.0));
    }

    #[test]
    fn gate_free_exact_matches_take_the_sentinel_value() {
        let target = table(2, &[2, 3]); // the function A
        assert_eq!(fitness1(&chrom("A"), &target), -3.0);
        assert_eq!(fitness1(&chrom("B''"), &table(2, &[1, 3])), -3.0);
        assert!(is_valid(-3.0));
    }

    #[test]
    fn validity_boundary_sits_at_one() {
        // Worst exact realization: one gate, one level.
        assert_eq!(structural_value(1, 1), -1.0);
        // Large networks approach but never reach 1.
        assert!(structural_value(1000, 1000) < 1.0);
        // Best inexact score: all but one row right, 8 rows.
        assert!(mismatch_value(8, 7) > 1.0);
    }

    #[test]
    fn row_store_dedups_and_keeps_insertion_order() {
        let mut store = RowStore::new(10);
        let a = StoredRow::new(vec![chrom("M(A,B,0)")], 0.5, 3).unwrap();
        let b = StoredRow::new(vec![chrom("M(A,B,1)")], 0.4, 3).unwrap();
        assert!(store.insert(a.clone()));
        assert!(!store.insert(a.clone()));
        assert!(store.insert(b));
        assert_eq!(store.len(), 2);
        assert_eq!(store.rows()[0].chromosomes()[0], chrom("M(A,B,0)"));
    }

    #[test]
    fn full_row_store_evicts_the_earliest_worst_row() {
        let mut store = RowStore::new(2);
        store.insert(StoredRow::new(vec![chrom("M(A,B,0)")], 0.6, 3).unwrap());
        store.insert(StoredRow::new(vec![chrom("M(A,B,1)")], 0.6, 3).unwrap());
        // Not better than the worst: dropped.
        assert!(!store.insert(StoredRow::new(vec![chrom("M(A,C,1)")], 0.6, 3).unwrap()));
        assert_eq!(store.rows()[0].chromosomes()[0], chrom("M(A,B,0)"));
        // Strictly better: evicts the first of the two 0.6 rows.
        assert!(store.insert(StoredRow::new(vec![chrom("M(A,C,0)")], 0.5, 3).unwrap()));
        assert_eq!(store.len(), 2);
        assert_eq!(store.rows()[0].chromosomes()[0], chrom("M(A,B,1)"));
        assert_eq!(store.rows()[1].chromosomes()[0], chrom("M(A,C,0)"));
    }

    #[test]
    fn select_row_prefers_cheap_extensions_then_depth() {
        let n = 3;
        let c = chrom("M(M(A,B,0),C,1)"); // contains AND(A,B), level 2
        let c_sigs = c.gate_signatures(n).unwrap();
        let with_and = StoredRow::new(vec![chrom("M(A,B,0)")], 0.5, n).unwrap();
        let without = StoredRow::new(vec![chrom("M(A,C,0)")], 0.5, n).unwrap();
        // Sharing AND(A,B) leaves one unshared gate instead of one
        // whole row: the sharing row wins regardless of position.
        assert_eq!(select_row(&c_sigs, 2, &[without.clone(), with_and.clone()]), 1);
        assert_eq!(select_row(&c_sigs, 2, &[with_and.clone(), without.clone()]), 0);
        // Equal rows: the first wins.
        assert_eq!(select_row(&c_sigs, 2, &[without.clone(), without.clone()]), 0);
        // A shallower row wins on depth even when it shares nothing:
        // with c at level 1, the row depths decide.
        let deep = StoredRow::new(vec![chrom("M(M(M(A,B,0),C,0),B,0)")], 0.5, n).unwrap();
        let shallow = StoredRow::new(vec![chrom("M(A,B,1)")], 0.5, n).unwrap();
        let leaf_sigs = chrom("A").gate_signatures(n).unwrap();
        assert_eq!(select_row(&leaf_sigs, 0, &[deep, shallow]), 1);
    }

    #[test]
    fn combine_counts_shared_gates_once() {
        let n = 3;
        // Row: AND(A,B). Target: OR(AND(A,B), C).
        let row = StoredRow::new(vec![chrom("M(A,B,0)")], 0.5, n).unwrap();
        let target = table(n, &[1, 3, 5, 6, 7]);
        let ctx = FitnessContext { n, target: &target, rows: std::slice::from_ref(&row) };

        // Shares the AND: 1 row gate + 2 candidate gates - 1 shared.
        let sharing = chrom("M(M(A,B,0),C,1)");
        let out = combine(&sharing, &ctx).unwrap();
        assert_eq!((out.gates, out.level), (2, 2));
        assert_eq!(out.value, 1.0 - (1.0 / 2.0 + 1.0 / 2.0));
        assert_eq!(fitness2(&sharing, &ctx), 0.0);

        // Same function, nothing shared: 1 + 2 - 0 gates.
        let lone = chrom("M(M(A,B,C),C,1)");
        let out = combine(&lone, &ctx).unwrap();
        assert_eq!((out.gates, out.level), (3, 2));
        assert!(fitness2(&lone, &ctx) > fitness2(&sharing, &ctx));

        // A structurally different spelling still shares after
        // harmonization; gate-count ties keep the candidate's spelling
        // and rewrite the row.
        let reordered = chrom("M(M(B,A,0),C,1)");
        assert_eq!(fitness2(&reordered, &ctx), 0.0);
        let out = combine(&reordered, &ctx).unwrap();
        assert_eq!(out.chromosome, reordered);
        assert_eq!(out.row, vec![chrom("M(B,A,0)")]);

        // Candidates that miss the target keep the mismatch ratio.
        assert_eq!(fitness2(&chrom("C"), &ctx), 8.0 / 7.0);
        assert!(combine(&chrom("C"), &ctx).is_none());
    }

    #[test]
    fn combine_value_matches_the_worked_arithmetic() {
        // A row with 4 distinct majority gates and 2 inverters at level
        // 2, a candidate with 3 majority gates and 2 inverters at level
        // 2 sharing one majority function: 6 + 5 - 1 gates, level 2.
        assert_eq!(structural_value(10, 2), 1.0 - (1.0 / 2.0 + 1.0 / 10.0));
        assert!((structural_value(10, 2) - 0.4).abs() < 1e-12);
    }

    #[test]
    fn combined_metrics_match_hand_counted_networks() {
        let n = 3;
        let c1 = chrom("M(M(A,C,B)',M(A,C',1),M(B,0,C))");
        let c2 = chrom("M(M(0,B,C)',M(B,0,A),C)'");
        let m = CombinedMetrics::of(&[c1, c2], n).unwrap();
        assert_eq!(m.structural_maj, 7);
        assert_eq!(m.structural_inv, 4);
        assert_eq!(m.distinct_maj, 6);
        assert_eq!(m.distinct_inv, 4);
        assert_eq!(m.common_maj(), 1);
        assert_eq!(m.common_inv(), 0);
        assert_eq!(m.total_gates(), 10);
        assert_eq!(m.max_level, 2);
        assert_eq!(m.weighted_thirds(), 22);
    }
}
