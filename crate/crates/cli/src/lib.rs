//! Command-line front end: vertex files, the dimension-six fixtures, and
//! text or JSON reports.

pub mod analysis;
pub mod fixtures;
pub mod input;
pub mod report;

pub use analysis::{analyze, fixture_report, poly_roots, table_rows, AnalyzeOptions};
pub use input::{parse_coeffs, parse_polytope_file, InputError, ParseError, PolytopeFile};
pub use report::{AnalysisReport, CertificateStatus, FixtureReport, RootSummary, TableRow};

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const INPUT_ERROR: u8 = 1;
    pub const INVARIANT_VIOLATION: u8 = 2;

    /// An input error anywhere in a batch wins over a violation.
    pub fn for_batch<'a, E>(results: impl IntoIterator<Item = Result<&'a [String], E>>) -> u8 {
        let mut code = OK;
        for r in results {
            match r {
                Err(_) => return INPUT_ERROR,
                Ok(violations) if !violations.is_empty() => code = INVARIANT_VIOLATION,
                Ok(_) => {}
            }
        }
        code
    }

}
