//! Truncated Chow rings and the determinantal recomputation of pointed counts.

pub mod chern;
pub mod determinant;
pub mod oracle;
pub mod three_factor;
pub mod two_factor;

pub use chern::{ch_from_chern_classes, chern_classes_from_ch, ChernData, ChernKind};
pub use determinant::{determinant, CommutativeRing};
pub use oracle::{fulton_pragacz_t, fulton_pragacz_t_with_twist, grr_pushforward, sheaf_ch_m1, Block, OracleSetup};
pub use three_factor::{ChowElement3, Generator, Monomial};
pub use two_factor::{ChowElement2, Part};
