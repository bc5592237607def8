//! SAT-based mining of frequent (and optionally closed) gradual patterns
//! in numerical datasets.
//!
//! A gradual pattern couples attributes with variation directions, e.g.
//! "the higher `p`, the lower `r`". Its support is the length of the
//! longest sequence of distinct rows on which every coupled attribute
//! moves in its stated direction, divided by the row count. This crate
//! mines all patterns above a support threshold by compiling the question
//! "is there a pattern with an ordered chain of k rows?" to CNF and
//! enumerating every model with a CDCL solver; each mined pattern is then
//! re-checked against an independent longest-chain oracle.
//!
//! ```
//! use gradsat::{Dataset, MineOptions, mine};
//!
//! let csv = "a,b\n1,9\n2,8\n3,7\n";
//! let ds = Dataset::parse_csv(csv, false).unwrap();
//! let results = mine(&ds, "1.0", &MineOptions::default()).unwrap();
//! assert_eq!(results.results.len(), 1); // (a+, b-) spans all three rows
//! ```

pub mod cnf;
pub mod dataset;
pub mod encoder;
pub mod error;
pub mod miner;
pub mod precedence;
pub mod report;
pub mod scalar;
pub mod solver;

pub use cnf::{CnfFormula, Lit, Var};
pub use dataset::{GradualItem, GradualPattern, NumericalDataset, Variation};
pub use encoder::{
    encode, size_breakdown, threshold_to_k, CnfInstance, ConstraintGroup, EncodeOptions,
    EncodingVariant, SizeBreakdown, SymmetryMode, VarMap, VarMeaning,
};
pub use error::{Error, Result};
pub use miner::{
    mine, mine_with_k, MineOptions, MineStats, MiningOutcome, MiningResult,
};
pub use precedence::{ChainResult, PrecedenceRelation, Support};
pub use report::{report, to_json, to_text, ReportFormat};
pub use scalar::Scalar;
pub use solver::{
    enumerate_all_models, EnumerationResult, EnumerationStatus, SolveResult, Solver, SolverConfig,
    SolverStats,
};

/// Datasets over `f64` values, the common case.
pub type Dataset = NumericalDataset<f64>;

#[cfg(test)]
pub(crate) mod test_fixtures {
    use crate::dataset::{GradualItem, GradualPattern, NumericalDataset, Variation};

    /// The 8×3 example dataset (attributes p, s, r).
    pub fn table1() -> NumericalDataset<f64> {
        NumericalDataset::parse_csv(include_str!("../tests/data/table1.csv"), true).unwrap()
    }

    pub fn pat(items: &[(usize, Variation)]) -> GradualPattern {
        GradualPattern::new(
            items
                .iter()
                .map(|&(attribute, variation)| GradualItem {
                    attribute,
                    variation,
                })
                .collect(),
        )
        .unwrap()
    }
}
