//! Atoms, sharp and meager elements, isotropic indices, sharp covers and
//! kernels, and sub-effect algebra extraction.
//!
//! Sharpness is tested as "0 is the only common lower bound of `x` and
//! `x′`". When `x ∧ x′` exists this is exactly `x ∧ x′ = 0`; it also gives a
//! total answer on algebras that are not lattice ordered.

use thiserror::Error;

use crate::algebra::{AlgebraError, EffectAlgebra, ElementId, SumTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StructureFlags {
    pub atomic: bool,
    pub archimedean: bool,
    pub sharply_dominating: bool,
    pub s_dominating: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureProfile {
    pub atoms: Vec<ElementId>,
    pub sharp: Vec<ElementId>,
    pub meager: Vec<ElementId>,
    /// Isotropic index per element; `Some(0)` for zero, `None` when the
    /// multiples of an element never stop.
    pub ord: Vec<Option<u32>>,
    pub flags: StructureFlags,
    is_sharp: Vec<bool>,
    is_atom: Vec<bool>,
    bounds: Vec<SharpBounds>,
}

impl StructureProfile {
    pub fn is_sharp(&self, x: ElementId) -> bool {
        self.is_sharp[x.index()]
    }

    pub fn is_atom(&self, x: ElementId) -> bool {
        self.is_atom[x.index()]
    }

    pub fn is_meager(&self, x: ElementId) -> bool {
        self.meager.contains(&x)
    }

    /// Isotropic index. Panics on non-Archimedean input, which cannot be
    /// built from a finite table.
    pub fn ord(&self, x: ElementId) -> u32 {
        self.ord[x.index()].expect("finite effect algebras are Archimedean")
    }

    pub fn sharp_bounds(&self, x: ElementId) -> SharpBounds {
        self.bounds[x.index()]
    }
}

/// Smallest sharp element above and greatest sharp element below `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SharpBounds {
    pub cover: Option<ElementId>,
    pub kernel: Option<ElementId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("isotropic index is not defined for zero")]
    ZeroElement,
    #[error("every multiple of {0} exists")]
    Unbounded(ElementId),
}

fn common_lower_bound_is_zero(e: &EffectAlgebra, x: ElementId, y: ElementId) -> bool {
    let order = e.order();
    e.elements()
        .all(|z| z == e.zero() || !(order.leq(z, x) && order.leq(z, y)))
}

fn isotropic(e: &EffectAlgebra, x: ElementId) -> Option<u32> {
    if x == e.zero() {
        return Some(0);
    }
    let mut acc = x;
    let mut n = 1u32;
    while let Some(next) = e.partial_sum(acc, x) {
        acc = next;
        n += 1;
        // k·x strictly increases in a valid algebra, so a chain longer than
        // the carrier means the table is not Archimedean.
        if n as usize > e.size() {
            return None;
        }
    }
    Some(n)
}

fn least(e: &EffectAlgebra, candidates: &[ElementId]) -> Option<ElementId> {
    candidates
        .iter()
        .copied()
        .find(|&c| candidates.iter().all(|&z| e.leq(c, z)))
}

fn greatest(e: &EffectAlgebra, candidates: &[ElementId]) -> Option<ElementId> {
    candidates
        .iter()
        .copied()
        .find(|&c| candidates.iter().all(|&z| e.leq(z, c)))
}

pub fn analyze_structure(e: &EffectAlgebra) -> StructureProfile {
    let order = e.order();
    let zero = e.zero();

    let is_sharp: Vec<bool> = e
        .elements()
        .map(|x| common_lower_bound_is_zero(e, x, e.supplement(x)))
        .collect();
    let sharp: Vec<ElementId> = e.elements().filter(|x| is_sharp[x.index()]).collect();

    let is_atom: Vec<bool> = e
        .elements()
        .map(|x| {
            x != zero
                && e.elements()
                    .all(|b| b == zero || b == x || !order.leq(b, x))
        })
        .collect();
    let atoms: Vec<ElementId> = e.elements().filter(|x| is_atom[x.index()]).collect();

    let meager: Vec<ElementId> = e
        .elements()
        .filter(|&x| sharp.iter().all(|&v| v == zero || !order.leq(v, x)))
        .collect();

    let ord: Vec<Option<u32>> = e.elements().map(|x| isotropic(e, x)).collect();

    let bounds: Vec<SharpBounds> = e
        .elements()
        .map(|x| {
            let above: Vec<ElementId> =
                sharp.iter().copied().filter(|&s| order.leq(x, s)).collect();
            let below: Vec<ElementId> =
                sharp.iter().copied().filter(|&s| order.leq(s, x)).collect();
            SharpBounds {
                cover: least(e, &above),
                kernel: greatest(e, &below),
            }
        })
        .collect();

    let atomic = e
        .elements()
        .filter(|&x| x != zero)
        .all(|x| atoms.iter().any(|&a| order.leq(a, x)));
    let archimedean = ord.iter().all(Option::is_some);
    let sharply_dominating = bounds.iter().all(|b| b.cover.is_some());
    let s_dominating = sharply_dominating
        && e.elements()
            .all(|x| sharp.iter().all(|&p| order.meet(x, p).is_some()));

    StructureProfile {
        atoms,
        sharp,
        meager,
        ord,
        flags: StructureFlags {
            atomic,
            archimedean,
            sharply_dominating,
            s_dominating,
        },
        is_sharp,
        is_atom,
        bounds,
    }
}

pub fn atoms(e: &EffectAlgebra) -> Vec<ElementId> {
    e.profile().atoms.clone()
}

pub fn sharp_elements(e: &EffectAlgebra) -> Vec<ElementId> {
    e.profile().sharp.clone()
}

pub fn meager_elements(e: &EffectAlgebra) -> Vec<ElementId> {
    e.profile().meager.clone()
}

/// Greatest `n` such that `n·x` exists.
pub fn isotropic_index(e: &EffectAlgebra, x: ElementId) -> Result<u32, StructureError> {
    if x == e.zero() {
        return Err(StructureError::ZeroElement);
    }
    e.profile().ord[x.index()].ok_or(StructureError::Unbounded(x))
}

pub fn sharp_bounds(e: &EffectAlgebra, x: ElementId) -> SharpBounds {
    e.profile().sharp_bounds(x)
}

pub fn is_sharply_dominating(e: &EffectAlgebra) -> bool {
    e.profile().flags.sharply_dominating
}

pub fn is_s_dominating(e: &EffectAlgebra) -> bool {
    e.profile().flags.s_dominating
}

/// A sub-effect algebra together with its embedding into the parent.
#[derive(Debug, Clone)]
pub struct SubAlgebra {
    pub algebra: EffectAlgebra,
    embedding: Vec<ElementId>,
}

impl SubAlgebra {
    /// Parent element corresponding to a sub-algebra element.
    pub fn to_parent(&self, x: ElementId) -> ElementId {
        self.embedding[x.index()]
    }

    pub fn from_parent(&self, x: ElementId) -> Option<ElementId> {
        self.embedding
            .iter()
            .position(|&p| p == x)
            .map(ElementId::new)
    }

    pub fn embedding(&self) -> &[ElementId] {
        &self.embedding
    }
}

#[derive(Debug, Error)]
pub enum SubAlgebraError {
    #[error("1 is not in the subset")]
    MissingOne,
    #[error("{a} ⊕ {b} = {c} has two of three members in the subset but not all")]
    NotClosed {
        a: ElementId,
        b: ElementId,
        c: ElementId,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Extract `members` as an effect algebra in its own right. The subset must
/// contain 1 and, for every defined `a ⊕ b = c`, contain all three of
/// `a, b, c` as soon as it contains two of them.
pub fn sub_effect_algebra(
    e: &EffectAlgebra,
    members: &[ElementId],
) -> Result<SubAlgebra, SubAlgebraError> {
    let mut embedding: Vec<ElementId> = members.to_vec();
    embedding.sort();
    embedding.dedup();
    let inside = |x: ElementId| embedding.binary_search(&x).is_ok();
    if !inside(e.one()) {
        return Err(SubAlgebraError::MissingOne);
    }
    for a in e.elements() {
        for b in e.elements() {
            if let Some(c) = e.partial_sum(a, b) {
                let count = [a, b, c].into_iter().filter(|&t| inside(t)).count();
                if count == 2 {
                    return Err(SubAlgebraError::NotClosed { a, b, c });
                }
            }
        }
    }
    let local = |x: ElementId| ElementId::new(embedding.binary_search(&x).unwrap());
    let mut table = SumTable::new(embedding.len(), local(e.zero()), local(e.one()))?;
    for &a in &embedding {
        for &b in &embedding {
            if let Some(c) = e.partial_sum(a, b) {
                table.declare(local(a), local(b), local(c))?;
            }
        }
    }
    let names = embedding.iter().map(|&x| e.name(x).to_string()).collect();
    let algebra = EffectAlgebra::from_table(names, table)?;
    Ok(SubAlgebra { algebra, embedding })
}

/// `S(E)` as an effect algebra.
pub fn sharp_subalgebra(e: &EffectAlgebra) -> Result<SubAlgebra, SubAlgebraError> {
    sub_effect_algebra(e, &e.profile().sharp)
}
