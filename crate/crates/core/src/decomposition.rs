//! Decomposition of elements into orthogonal sums of atom multiples, the
//! full/partial split of such a family, and the basic decomposition
//! `x = v_x ⊕ (⊕ k_α a_α)` with `v_x` sharp and every `k_α ≠ ord(a_α)`.

use std::fmt;

use thiserror::Error;

use crate::algebra::{EffectAlgebra, ElementId};

/// `multiplicity · atom`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomMultiple {
    pub atom: ElementId,
    pub multiplicity: u32,
}

impl AtomMultiple {
    pub fn new(atom: ElementId, multiplicity: u32) -> Self {
        AtomMultiple { atom, multiplicity }
    }

    pub fn value(&self, e: &EffectAlgebra) -> Option<ElementId> {
        e.multiple(self.atom, self.multiplicity)
    }

    /// Whether the multiplicity equals the isotropic index of the atom.
    pub fn is_full(&self, e: &EffectAlgebra) -> bool {
        self.multiplicity == e.profile().ord(self.atom)
    }
}

/// Orthogonal family of atom multiples with pairwise distinct atoms, kept
/// sorted by atom index.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AtomicDecomposition {
    pub parts: Vec<AtomMultiple>,
    /// `false` when produced on an algebra that is not lattice ordered,
    /// where decompositions need not be unique.
    pub unique: bool,
}

impl AtomicDecomposition {
    pub fn new(mut parts: Vec<AtomMultiple>, unique: bool) -> Self {
        parts.sort();
        AtomicDecomposition { parts, unique }
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sum(&self, e: &EffectAlgebra) -> Option<ElementId> {
        family_sum(e, &self.parts)
    }

    /// Join of the part values, when all the needed joins exist.
    pub fn join(&self, e: &EffectAlgebra) -> Option<ElementId> {
        let values: Option<Vec<ElementId>> = self.parts.iter().map(|p| p.value(e)).collect();
        e.order().join_all(e.zero(), values?)
    }

    pub fn display<'a>(&'a self, e: &'a EffectAlgebra) -> impl fmt::Display + 'a {
        DisplayParts(e, &self.parts)
    }
}

struct DisplayParts<'a>(&'a EffectAlgebra, &'a [AtomMultiple]);

impl fmt::Display for DisplayParts<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.1.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}·{}", p.multiplicity, self.0.name(p.atom))?;
        }
        f.write_str("}")
    }
}

/// Iterated sum of the part values, or `None` if some partial sum is
/// undefined.
pub fn family_sum(e: &EffectAlgebra, parts: &[AtomMultiple]) -> Option<ElementId> {
    parts
        .iter()
        .try_fold(e.zero(), |acc, p| e.partial_sum(acc, p.value(e)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitDecomposition {
    /// Parts with `k = ord(a)`.
    pub full: AtomicDecomposition,
    /// Parts with `k ≠ ord(a)`.
    pub partial: AtomicDecomposition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicDecomposition {
    pub sharp_part: ElementId,
    pub meager_parts: AtomicDecomposition,
}

impl BasicDecomposition {
    /// `sharp_part ⊕ (sum of meager_parts)`.
    pub fn total(&self, e: &EffectAlgebra) -> Option<ElementId> {
        e.partial_sum(self.sharp_part, self.meager_parts.sum(e)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("no atom lies below the residual {residual} while decomposing {element}")]
    NotDecomposable {
        element: ElementId,
        residual: ElementId,
    },
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

/// Greedy decomposition: take the least-indexed atom `a` below the residual
/// `r`, the largest `k` with `k·a ≤ r`, and continue with `r ⊖ k·a`.
///
/// An atom cannot be picked twice: `a ≤ r ⊖ k·a` would give `(k+1)·a ≤ r`,
/// against the choice of `k`.
pub fn atomic_decomposition(
    e: &EffectAlgebra,
    x: ElementId,
) -> Result<AtomicDecomposition, DecompositionError> {
    let profile = e.profile();
    let mut residual = x;
    let mut parts = Vec::new();
    while residual != e.zero() {
        let atom = profile
            .atoms
            .iter()
            .copied()
            .find(|&a| e.leq(a, residual))
            .ok_or(DecompositionError::NotDecomposable {
                element: x,
                residual,
            })?;
        let mut k = 1;
        let mut taken = atom;
        while let Some(next) = e.partial_sum(taken, atom).filter(|&n| e.leq(n, residual)) {
            taken = next;
            k += 1;
        }
        residual = e
            .partial_difference(residual, taken)
            .expect("taken ≤ residual");
        debug_assert!(parts.iter().all(|p: &AtomMultiple| p.atom != atom));
        parts.push(AtomMultiple::new(atom, k));
    }
    Ok(AtomicDecomposition::new(parts, e.is_lattice()))
}

fn validate(e: &EffectAlgebra, d: &AtomicDecomposition) -> Result<ElementId, DecompositionError> {
    let profile = e.profile();
    for (i, p) in d.parts.iter().enumerate() {
        if !profile.is_atom(p.atom) {
            return Err(DecompositionError::InvalidDecomposition(format!(
                "{} is not an atom",
                e.name(p.atom)
            )));
        }
        if p.multiplicity == 0 || p.multiplicity > profile.ord(p.atom) {
            return Err(DecompositionError::InvalidDecomposition(format!(
                "multiplicity {} of {} is outside 1..={}",
                p.multiplicity,
                e.name(p.atom),
                profile.ord(p.atom)
            )));
        }
        if d.parts[..i].iter().any(|q| q.atom == p.atom) {
            return Err(DecompositionError::InvalidDecomposition(format!(
                "atom {} repeated",
                e.name(p.atom)
            )));
        }
    }
    d.sum(e).ok_or_else(|| {
        DecompositionError::InvalidDecomposition(format!(
            "family {} is not orthogonal",
            d.display(e)
        ))
    })
}

/// Separate the parts with `k = ord(a)` from the rest.
pub fn split_atomic_decomposition(
    e: &EffectAlgebra,
    d: &AtomicDecomposition,
) -> Result<SplitDecomposition, DecompositionError> {
    validate(e, d)?;
    let (full, partial): (Vec<_>, Vec<_>) = d.parts.iter().partition(|p| p.is_full(e));
    Ok(SplitDecomposition {
        full: AtomicDecomposition::new(full, d.unique),
        partial: AtomicDecomposition::new(partial, d.unique),
    })
}

/// `x = v_x ⊕ (⊕ k_α a_α)` with `v_x` the greatest sharp element below `x`.
/// Refuses algebras that are not lattice ordered.
pub fn basic_decomposition(
    e: &EffectAlgebra,
    x: ElementId,
) -> Result<BasicDecomposition, DecompositionError> {
    if !e.is_lattice() {
        return Err(DecompositionError::PreconditionFailed(
            "the algebra is not lattice ordered".into(),
        ));
    }
    let decomposition = basic_decomposition_unchecked(e, x)?;

    // Cross-check against splitting the greedy decomposition of x itself.
    let split = split_atomic_decomposition(e, &atomic_decomposition(e, x)?)?;
    if split.full.sum(e) != Some(decomposition.sharp_part)
        || split.partial.parts != decomposition.meager_parts.parts
    {
        return Err(DecompositionError::InvalidDecomposition(format!(
            "split of {} disagrees with its sharp kernel",
            e.name(x)
        )));
    }
    Ok(decomposition)
}

/// Basic decomposition without the lattice precondition. The sharp part is
/// the sharp kernel, which must exist.
pub(crate) fn basic_decomposition_unchecked(
    e: &EffectAlgebra,
    x: ElementId,
) -> Result<BasicDecomposition, DecompositionError> {
    let kernel = e.profile().sharp_bounds(x).kernel.ok_or_else(|| {
        DecompositionError::PreconditionFailed(format!(
            "{} has no greatest sharp element below it",
            e.name(x)
        ))
    })?;
    let rest = e
        .partial_difference(x, kernel)
        .expect("kernel lies below x");
    let meager_parts = atomic_decomposition(e, rest)?;
    if let Some(p) = meager_parts.parts.iter().find(|p| p.is_full(e)) {
        return Err(DecompositionError::InvalidDecomposition(format!(
            "{}·{} has full multiplicity in the meager part of {}",
            p.multiplicity,
            e.name(p.atom),
            e.name(x)
        )));
    }
    Ok(BasicDecomposition {
        sharp_part: kernel,
        meager_parts,
    })
}
