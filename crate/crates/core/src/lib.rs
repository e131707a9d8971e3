//! Controllability of Boolean networks: GF(2) linear algebra, XOR-network control,
//! majority-network control sets, constructive families, bounds, and a brute-force oracle.

pub mod bounds;
pub mod error;
pub mod families;
pub mod gf2;
pub mod majority;
pub mod model;
pub mod oracle;
pub mod xor;

pub use error::{BnError, Result};
pub use gf2::{EchelonBasis, Gf2Matrix, Gf2Vector};
pub use model::{BooleanNetwork, ControlNodeSet, ControlScheme, NodeRule, RuleKind};
