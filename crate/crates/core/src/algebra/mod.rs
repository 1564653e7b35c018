//! Exact finite-dimensional algebras: partitions for the commutative case,
//! matrix spans over `Q[i]` for the general case.

pub mod matrix;
pub mod partition;
pub mod scalar;
pub mod star;

pub use matrix::Matrix;
pub use partition::{all_partitions, bell_number, AmbientSet, Partition};
pub use scalar::GaussianRational;
pub use star::{hom_kernel_trivial, multiplication_kernel_dim, CommutatorWitness, StarAlgebra, StarHom};

use crate::error::Result;

/// `P ∨ Q`: the join `S_P ∨ S_Q` as a common refinement.
pub fn partition_common_refinement(p: &Partition, q: &Partition) -> Result<Partition> {
    p.common_refinement(q)
}

/// `S_P ∩ S_Q` as a merge of overlapping blocks.
pub fn partition_overlap_join(p: &Partition, q: &Partition) -> Result<Partition> {
    p.overlap_join(q)
}

/// `S_P ⊆ S_Q`.
pub fn is_coarser(p: &Partition, q: &Partition) -> Result<bool> {
    p.is_coarser(q)
}

pub fn generated_star_algebra(n: usize, generators: &[Matrix]) -> Result<StarAlgebra> {
    StarAlgebra::generated(n, generators)
}

/// Commutant of `s` inside `M_within`.
pub fn commutant(s: &StarAlgebra, within: usize) -> Result<StarAlgebra> {
    if s.matrix_dim() != within {
        return Err(crate::error::Error::DimensionMismatch { expected: within, found: s.matrix_dim() });
    }
    Ok(s.commutant())
}
