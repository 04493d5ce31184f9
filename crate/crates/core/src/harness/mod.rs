//! File formats, seeded instance generation and the verification harness
//! that checks every bound against the companion spectrum.

pub mod io;
pub mod random;
pub mod suite;
pub mod verify;

pub use io::{load_polynomial, load_scalar_coeffs, parse_polynomial, polynomial_to_json, save_polynomial};
pub use random::random_polynomial;
pub use suite::{rows_to_csv, run_suite, write_reports, BoundSummary, RandomSpec, SuiteConfig, SuiteOutcome, SuiteSummary, CSV_HEADER};
pub use verify::{
    is_violation, verify_instance, InstanceRecord, InstanceSource, Tolerance, ToleranceSource, VerificationRow, VerifyOptions,
    DEFAULT_TOLERANCE, TOLERANCE_ENV,
};
