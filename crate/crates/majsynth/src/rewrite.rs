//! Netlist rewriting: local simplification of one tree and
//! harmonization of implementations across trees.
//!
//! Simplification removes redundancy a single bottom-up pass can see:
//! double inversions, inverted constants, and majority gates where two
//! operands compute equal or complementary functions. Harmonization
//! takes one tree plus a set of previously accepted trees and rewrites
//! both sides so that any function both sides realize with a gate uses
//! a single shared implementation, which is what lets gate counts be
//! merged across the outputs of a multi-output network.

use crate::mig::{node_metrics, node_tables, subtree_end, Chromosome, Gene, MigError};
use crate::table::TruthTable;
use std::collections::HashMap;

/// One bottom-up pass of the local rules. The result computes the same
/// function with never more majority gates, inverters, or genes, and a
/// second pass finds nothing new.
pub fn simplify(c: &Chromosome, n: u8) -> Result<Chromosome, MigError> {
    if let Some(v) = c.max_var() {
        if v >= n {
            return Err(MigError::VarExceedsInputs { var: v, vars: n });
        }
    }
    let (end, genes, _) = simp_node(c.genes(), 0, n);
    debug_assert_eq!(end, c.len());
    Ok(Chromosome::from_genes(genes).expect("simplification emits a complete tree"))
}

fn simp_node(genes: &[Gene], pos: usize, n: u8) -> (usize, Vec<Gene>, TruthTable) {
    match genes[pos] {
        Gene::Maj => {
            let (p1, ga, ta) = simp_node(genes, pos + 1, n);
            let (p2, gb, tb) = simp_node(genes, p1, n);
            let (p3, gc, tc) = simp_node(genes, p2, n);
            // Two equal operands decide the majority; an operand pair
            // that is mutually inverse leaves the third in charge.
            // Pairs are checked in operand order.
            let nta = ta.complement();
            let ntb = tb.complement();
            let (g, t) = if ta == tb {
                (ga, ta)
            } else if nta == tb {
                (gc, tc)
            } else if tb == tc {
                (gb, tb)
            } else if ntb == tc || ta == tc {
                (ga, ta)
            } else if nta == tc {
                (gb, tb)
            } else {
                let t = TruthTable::maj3(&ta, &tb, &tc);
                let mut g = Vec::with_capacity(1 + ga.len() + gb.len() + gc.len());
                g.push(Gene::Maj);
                g.extend(ga);
                g.extend(gb);
                g.extend(gc);
                (g, t)
            };
            (p3, g, t)
        }
        Gene::Inv => {
            let (p1, gc, tc) = simp_node(genes, pos + 1, n);
            if gc[0] == Gene::Inv {
                (p1, gc[1..].to_vec(), tc.complement())
            } else if gc == [Gene::Zero] {
                (p1, vec![Gene::One], TruthTable::ones(n))
            } else if gc == [Gene::One] {
                (p1, vec![Gene::Zero], TruthTable::zeros(n))
            } else {
                let mut g = Vec::with_capacity(1 + gc.len());
                g.push(Gene::Inv);
                g.extend(gc);
                let t = tc.complement();
                (p1, g, t)
            }
        }
        Gene::Var(k) => (pos + 1, vec![Gene::Var(k)], TruthTable::var(n, k)),
        Gene::Zero => (pos + 1, vec![Gene::Zero], TruthTable::zeros(n)),
        Gene::One => (pos + 1, vec![Gene::One], TruthTable::ones(n)),
    }
}

/// Cheapest gate-rooted subtree per realized function on one side.
#[derive(Debug, Clone)]
pub(crate) struct SideIndex {
    best: HashMap<TruthTable, Cand>,
}

#[derive(Debug, Clone)]
struct Cand {
    gates: usize,
    len: usize,
    pos: usize,
    genes: Vec<Gene>,
    tables: Vec<TruthTable>,
}

/// Scans every gate-rooted subtree across `chroms` and keeps, per truth
/// table, the candidate with the fewest gates (ties: shorter gene
/// string, then earliest preorder position across the whole set).
pub(crate) fn side_index(chroms: &[Chromosome], n: u8) -> Result<SideIndex, MigError> {
    let mut best: HashMap<TruthTable, Cand> = HashMap::new();
    let mut offset = 0usize;
    for c in chroms {
        if let Some(v) = c.max_var() {
            if v >= n {
                return Err(MigError::VarExceedsInputs { var: v, vars: n });
            }
        }
        let genes = c.genes();
        let tables = node_tables(genes, n);
        for pos in 0..genes.len() {
            if genes[pos].arity() == 0 {
                continue;
            }
            let end = subtree_end(genes, pos);
            let (_, m) = node_metrics(genes, pos);
            let key = (m.gates(), end - pos, offset + pos);
            let better = match best.get(&tables[pos]) {
                Some(b) => key < (b.gates, b.len, b.pos),
                None => true,
            };
            if better {
                best.insert(
                    tables[pos].clone(),
                    Cand {
                        gates: m.gates(),
                        len: end - pos,
                        pos: offset + pos,
                        genes: genes[pos..end].to_vec(),
                        tables: tables[pos..end].to_vec(),
                    },
                );
            }
        }
        offset += genes.len();
    }
    Ok(SideIndex { best })
}

struct Impl {
    genes: Vec<Gene>,
    tables: Vec<TruthTable>,
}

/// Rewrites the tree rooted at `genes[pos]`: any gate node whose
/// function has a chosen shared implementation is replaced by that
/// implementation, and the replacement's own operands keep being
/// substituted. Returns the end of the original subtree.
fn rewrite_node(
    genes: &[Gene],
    tables: &[TruthTable],
    pos: usize,
    chosen: &HashMap<TruthTable, Impl>,
    out: &mut Vec<Gene>,
) -> usize {
    let g = genes[pos];
    if g.arity() > 0 {
        if let Some(imp) = chosen.get(&tables[pos]) {
            // Emit the implementation's root without re-checking it
            // (its own table is the one being substituted), then keep
            // substituting below it. Chosen implementations have
            // minimal gate counts, so every nested substitution has
            // strictly fewer gates and the recursion bottoms out.
            out.push(imp.genes[0]);
            let mut p = 1;
            for _ in 0..imp.genes[0].arity() {
                p = rewrite_node(&imp.genes, &imp.tables, p, chosen, out);
            }
            debug_assert_eq!(p, imp.genes.len());
            return subtree_end(genes, pos);
        }
    }
    out.push(g);
    let mut p = pos + 1;
    for _ in 0..g.arity() {
        p = rewrite_node(genes, tables, p, chosen, out);
    }
    p
}

fn rewrite_chromosome(c: &Chromosome, n: u8, chosen: &HashMap<TruthTable, Impl>) -> Chromosome {
    if chosen.is_empty() {
        return c.clone();
    }
    let genes = c.genes();
    let tables = node_tables(genes, n);
    let mut out = Vec::with_capacity(genes.len());
    let end = rewrite_node(genes, &tables, 0, chosen, &mut out);
    debug_assert_eq!(end, genes.len());
    Chromosome::from_genes(out).expect("rewriting emits a complete tree")
}

pub(crate) fn harmonize_prepared(
    current: &Chromosome,
    stored: &[Chromosome],
    n: u8,
    current_index: &SideIndex,
    stored_index: &SideIndex,
) -> (Chromosome, Vec<Chromosome>) {
    let mut chosen: HashMap<TruthTable, Impl> = HashMap::new();
    for (t, cur) in &current_index.best {
        if let Some(sto) = stored_index.best.get(t) {
            // Prefer fewer gates; on a tie the current side wins, then
            // the shorter gene string.
            let pick_current = (cur.gates, 0u8, cur.len) < (sto.gates, 1u8, sto.len);
            let src = if pick_current { cur } else { sto };
            chosen.insert(t.clone(), Impl { genes: src.genes.clone(), tables: src.tables.clone() });
        }
    }
    let new_current = rewrite_chromosome(current, n, &chosen);
    let new_stored = stored.iter().map(|c| rewrite_chromosome(c, n, &chosen)).collect();
    (new_current, new_stored)
}

/// Rewrites `current` and every tree in `stored` so each function both
/// sides realize with a gate uses one shared implementation. Every
/// tree keeps its function; the union of distinct gate functions never
/// grows. Results may exceed any population length cap, which only
/// applies to genetic operators.
pub fn harmonize(
    current: &Chromosome,
    stored: &[Chromosome],
    n: u8,
) -> Result<(Chromosome, Vec<Chromosome>), MigError> {
    let ci = side_index(std::slice::from_ref(current), n)?;
    let si = side_index(stored, n)?;
    Ok(harmonize_prepared(current, stored, n, &ci, &si))
}
