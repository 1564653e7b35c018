use std::collections::HashMap;

use super::poset::Poset;
use crate::algebra::partition::restricted_growth_strings;
use crate::algebra::{bell_number, AmbientSet, Partition};
use crate::error::{Error, Result};

/// Largest context poset enumerated without an explicit override: Bell(10).
pub const DEFAULT_MAX_BELL: u128 = 115_975;

/// The contexts of `S_A`: every partition coarser than `A`, ordered by
/// subalgebra inclusion. Elements are kept in canonical order, so the
/// trivial context is always element 0.
#[derive(Debug, Clone)]
pub struct ContextPoset {
    algebra: Partition,
    elements: Vec<Partition>,
    index: HashMap<Partition, usize>,
    ambient: AmbientSet,
}

impl ContextPoset {
    pub fn enumerate(a: &Partition) -> Result<Self> {
        ContextPoset::enumerate_with_limit(a, DEFAULT_MAX_BELL)
    }

    /// Enumerates `C_A`, refusing when `Bell(#blocks(A))` exceeds `max_bell`.
    pub fn enumerate_with_limit(a: &Partition, max_bell: u128) -> Result<Self> {
        let k = a.block_count();
        let size = bell_number(k).unwrap_or(u128::MAX);
        if size > max_bell {
            return Err(Error::Resource {
                what: format!("Bell({k}) contexts"),
                size,
                bound: max_bell,
            });
        }
        let mut elements: Vec<Partition> =
            restricted_growth_strings(k).map(|code| a.coarsen_by(&code)).collect();
        elements.sort();
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(ContextPoset {
            algebra: a.clone(),
            elements,
            index,
            ambient: AmbientSet::numbered(a.ambient_len()),
        })
    }

    /// Attaches point labels used by [`Poset::label`].
    pub fn with_ambient(mut self, ambient: &AmbientSet) -> Result<Self> {
        if ambient.len() != self.algebra.ambient_len() {
            return Err(Error::AmbientMismatch {
                left: ambient.len(),
                right: self.algebra.ambient_len(),
            });
        }
        self.ambient = ambient.clone();
        Ok(self)
    }

    pub fn algebra(&self) -> &Partition {
        &self.algebra
    }

    pub fn ambient(&self) -> &AmbientSet {
        &self.ambient
    }

    pub fn elements(&self) -> &[Partition] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Partition {
        &self.elements[i]
    }

    pub fn index_of(&self, c: &Partition) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn contains(&self, c: &Partition) -> bool {
        self.index.contains_key(c)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Partition> {
        self.elements.iter()
    }
}

impl Poset for ContextPoset {
    fn len(&self) -> usize {
        self.elements.len()
    }

    fn leq(&self, i: usize, j: usize) -> bool {
        self.elements[i].is_coarser_unchecked(&self.elements[j])
    }

    fn label(&self, i: usize) -> String {
        self.ambient.format(&self.elements[i])
    }
}

/// `C_A` with the default size guard.
pub fn enumerate_contexts(a: &Partition) -> Result<ContextPoset> {
    ContextPoset::enumerate(a)
}

/// `C ∩ A`: the restriction of a context to a subalgebra.
pub fn restrict_context(c: &Partition, a: &Partition) -> Result<Partition> {
    c.overlap_join(a)
}
