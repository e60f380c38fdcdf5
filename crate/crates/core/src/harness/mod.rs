//! Batch evaluation over many units, cross-measure rank correlation, and the
//! exhaustive normalisation-bound oracle.

mod correlation;
mod evaluate;
mod measures;
mod oracle;

pub use correlation::{average_ranks, correlate_report, spearman, Correlation, Granularity};
pub use evaluate::{add_query_means, evaluate};
pub use measures::{parse_measure_list, BaseMeasure, MeasureKind, MeasureSpec, UnitValue};
pub use oracle::{oracle_max_error, oracle_sweep, permutations, OracleResult, ORACLE_MAX_N};
