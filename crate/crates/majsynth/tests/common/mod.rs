//! Helpers shared by the integration tests.

use majsynth::{Chromosome, Gene, TruthTable};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Evaluates one subtree on one input row by walking the gene
/// sequence, without any of the library's bit-parallel machinery.
/// Variable 0 is the most significant bit of the row index.
fn eval_at(genes: &[Gene], pos: usize, n: u8, row: u64) -> (usize, bool) {
    match genes[pos] {
        Gene::Maj => {
            let (p1, a) = eval_at(genes, pos + 1, n, row);
            let (p2, b) = eval_at(genes, p1, n, row);
            let (p3, c) = eval_at(genes, p2, n, row);
            (p3, (a as u8 + b as u8 + c as u8) >= 2)
        }
        Gene::Inv => {
            let (p, x) = eval_at(genes, pos + 1, n, row);
            (p, !x)
        }
        Gene::Var(k) => (pos + 1, (row >> (n - 1 - k)) & 1 == 1),
        Gene::Zero => (pos + 1, false),
        Gene::One => (pos + 1, true),
    }
}

/// Truth table of a chromosome computed row by row.
pub fn reference_bits(c: &Chromosome, n: u8) -> Vec<bool> {
    (0..1u64 << n)
        .map(|row| {
            let (end, bit) = eval_at(c.genes(), 0, n, row);
            assert_eq!(end, c.len(), "one expression consumes all genes");
            bit
        })
        .collect()
}

pub fn random_table(n: u8, rng: &mut ChaCha8Rng) -> TruthTable {
    let minterms: Vec<u64> = (0..1u64 << n).filter(|_| rng.gen_bool(0.5)).collect();
    TruthTable::from_minterms(n, &minterms).unwrap()
}
