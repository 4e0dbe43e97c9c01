//! IO, file formats, and scenario orchestration for the polariton collision
//! simulator; the physics lives in `polariton-core`.

pub mod config;
pub mod format;
pub mod run;
pub mod scan;
