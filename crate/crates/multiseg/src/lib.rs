//! Symbolic engine for multisegments: the orders `≤` and `⪯_k`, dual PBW and
//! dual canonical bases of the quantum algebra, Kazhdan–Lusztig polynomials,
//! and the decomposition of the partial derivative `𝒟^k(L_a)` into
//! irreducibles by three independent routes.

pub mod cache;
pub mod derivative;
pub mod engine;
pub mod error;
pub mod grassmann;
pub mod laurent;
pub mod multiseg;
pub mod parabolic;
pub mod poset;
pub mod quantum;
pub mod weyl;

pub use derivative::{Basis, RingVector, Route};
pub use engine::{Engine, LVec};
pub use error::{Error, Result};
pub use laurent::Laurent;
pub use multiseg::{ms, Multisegment, Segment, Weight};
