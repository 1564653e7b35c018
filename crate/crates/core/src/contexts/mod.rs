//! Context posets, monotone maps, generic left adjoints and the Alexandroff
//! characterisations built on them.

pub mod adjoint;
pub mod context_poset;
pub mod dot;
pub mod poset;

pub use adjoint::{left_adjoint, thickening_report, AdjunctionReport, MonotoneMap, ThickeningReport};
pub use context_poset::{enumerate_contexts, restrict_context, ContextPoset, DEFAULT_MAX_BELL};
pub use dot::{map_to_dot, poset_to_dot};
pub use poset::{FinitePoset, Poset};
