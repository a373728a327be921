//! Bundled benchmark problems.
//!
//! Each benchmark pairs a multi-output specification with a reference
//! realization whose cost is frozen here; the test suite recomputes
//! every number. The CLI `benchmark` subcommand synthesizes these
//! problems and prints its results next to the reference costs.

use crate::mig::Chromosome;
use crate::problem::CircuitSpec;

/// Cost of a multi-output network. `total_*` count distinct gates
/// across all outputs, `common_*` the gates shared by at least two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostRow {
    pub common_maj: usize,
    pub common_inv: usize,
    pub total_maj: usize,
    pub total_inv: usize,
    pub total_gates: usize,
    pub max_level: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct Benchmark {
    pub name: &'static str,
    pub vars: u8,
    pub outputs: &'static [(&'static str, &'static [u64])],
    /// One expression per output, in output order.
    pub reference: &'static [&'static str],
    pub reference_cost: CostRow,
}

impl Benchmark {
    pub fn spec(&self) -> CircuitSpec {
        CircuitSpec::new(self.vars, self.outputs)
    }

    pub fn reference_chromosomes(&self) -> Vec<Chromosome> {
        self.reference
            .iter()
            .map(|s| s.parse().expect("reference expressions parse"))
            .collect()
    }
}

pub const ALL: &[Benchmark] = &[
    Benchmark {
        name: "b1",
        vars: 3,
        outputs: &[("F1", &[0, 2, 4, 7]), ("F2", &[0, 2, 3, 4])],
        reference: &["M(M(A,C,B)',M(A,C',1),M(B,0,C))", "M(M(0,B,C)',M(B,0,A),C)'"],
        reference_cost: CostRow {
            common_maj: 1,
            common_inv: 0,
            total_maj: 6,
            total_inv: 4,
            total_gates: 10,
            max_level: 2,
        },
    },
    Benchmark {
        name: "b2",
        vars: 4,
        outputs: &[
            ("F1", &[0, 2, 6, 12, 13, 14]),
            ("F2", &[1, 3, 4, 5, 7, 12, 13, 15]),
        ],
        reference: &[
            "M(M(B,1,A'),M(M(B,C,1)',C,D'),M(A,0,M(0,B,C')))",
            "M(D,M(1,A',B),M(C',0,B))",
        ],
        reference_cost: CostRow {
            common_maj: 2,
            common_inv: 2,
            total_maj: 7,
            total_inv: 4,
            total_gates: 11,
            max_level: 3,
        },
    },
    Benchmark {
        name: "b3",
        vars: 3,
        outputs: &[("F1", &[2, 4, 6]), ("F2", &[0, 1, 3, 6]), ("F3", &[0, 3, 6])],
        reference: &[
            "M(0,C',M(1,B,A))",
            "M(M(C,A,B),M(1,B,A)',M(C,0,A)')",
            "M(M(C,B,A),M(1,A,B)',M(B,A',C'))",
        ],
        reference_cost: CostRow {
            common_maj: 3,
            common_inv: 2,
            total_maj: 7,
            total_inv: 4,
            total_gates: 11,
            max_level: 2,
        },
    },
    Benchmark {
        name: "b4",
        vars: 3,
        outputs: &[
            ("F1", &[1, 4, 5, 7]),
            ("F2", &[3, 4, 6]),
            ("F3", &[0, 2, 5, 6]),
            ("F4", &[4, 6, 7]),
        ],
        reference: &[
            "M(C,B',A)",
            "M(M(0,C',A),M(A,C,0)',M(B,C,0))",
            "M(M(M(C,0,A)',A,B)',B,M(M(B,0,C)',A,C'))",
            "M(A,M(0,C',A),M(B,C,0))",
        ],
        reference_cost: CostRow {
            common_maj: 4,
            common_inv: 3,
            total_maj: 9,
            total_inv: 5,
            total_gates: 14,
            max_level: 3,
        },
    },
    Benchmark {
        name: "b5",
        vars: 4,
        outputs: &[
            ("F1", &[3, 4, 7, 15]),
            ("F2", &[1, 3, 4, 9, 13, 15]),
            ("F3", &[3, 6, 7, 11, 13, 14, 15]),
            ("F4", &[2, 6, 10, 11, 14]),
        ],
        reference: &[
            "M(M(B,A,M(B,D,C))',M(0,D,C),B)",
            "M(M(M(D,B,C),B,A)',B,M(M(D,0,A),B',D))",
            "M(M(B,C,D),M(D,A,0),C)",
            "M(D',M(M(D,A,0),B',0),C)",
        ],
        reference_cost: CostRow {
            common_maj: 5,
            common_inv: 2,
            total_maj: 10,
            total_inv: 3,
            total_gates: 13,
            max_level: 3,
        },
    },
];

pub fn by_name(name: &str) -> Option<&'static Benchmark> {
    ALL.iter().find(|b| b.name == name)
}
