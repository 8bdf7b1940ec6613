//! Exact scalar rings and truncated q-series.

pub mod cyclotomic;
pub mod field;
pub mod linalg;
pub mod qseries;

pub use cyclotomic::CycRational;
pub use field::{FiniteField, F3, F4};
pub use qseries::{series_arithmetic, QSeries, SeriesOp};
