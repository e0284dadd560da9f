//! Word maps over small finite groups: exhaustive verbal-image computation,
//! image classification against the symmetric-group dichotomy, word
//! construction by search over pair-table constraints, generation checks for
//! direct powers, the surjectivity property for quasisimple groups, and exact
//! covering-number bound arithmetic.

pub mod aut;
pub mod bits;
pub mod bounds;
pub mod caps;
pub mod construct;
pub mod error;
pub mod exec;
pub mod gf;
pub mod image;
pub mod group;
pub mod perm;
pub mod stab;
pub mod subset;
pub mod word;

pub use caps::Caps;
pub use error::{Error, Result};
pub use exec::Exec;
pub use group::{Elem, FiniteGroup};
pub use word::Word;
