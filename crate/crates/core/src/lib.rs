//! Exact combinatorial verification of signed groupoid sets, preacycloids
//! and oriented matroids on small ground sets.

pub mod brink_howlett;
pub mod error;
pub mod feasibility;
pub mod fixtures;
pub mod format;
pub mod ground;
pub mod identities;
pub mod oriented_matroid;
pub mod pipeline;
pub mod preacycloid;
pub mod search;
pub mod sgs;
pub mod squares;

pub use error::{Error, Result};
pub use ground::{GroundSet, RootSet};
pub use oriented_matroid::OrientedMatroid;
pub use preacycloid::Preacycloid;
pub use sgs::{MorId, ObjId, Sgs};
