//! Exact counts of the elements of F_{p^m} with prescribed trace and
//! co-trace (the trace of the inverse).
//!
//! The counts T_ij are obtained from a (p-1)×(p-1) linear system whose
//! coefficients are Kloosterman sums over F_p, solved exactly in the
//! cyclotomic field Q(ζ_p). A brute-force [`oracle`] enumerates the field to
//! cross-check every result.
//!
//! ```
//! let table = trace_cotrace::counting::full_table(3, 4).unwrap();
//! assert_eq!(table.get(1, 1), 13);
//! ```

pub mod circulant;
pub mod cli;
pub mod counting;
pub mod cyclotomic;
pub mod error;
pub mod ext_field;
pub mod golden;
pub mod kloosterman;
pub mod linalg;
pub mod oracle;
pub mod prime_field;

pub use counting::{full_table, solve_t1s, TraceCotraceTable};
pub use cyclotomic::CycloNum;
pub use error::{Error, Result};
pub use ext_field::FieldCtx;
