//! Auslander–Reiten computations for representations of finite acyclic quivers over F_p.

pub mod artheory;
pub mod determiners;
pub mod error;
pub mod exactla;
pub mod ext;
pub mod quiver;
pub mod stable;

pub use error::{Error, Result};
