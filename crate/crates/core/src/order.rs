//! The induced partial order, binary meets and joins, and compatibility.

use thiserror::Error;

use crate::algebra::{EffectAlgebra, ElementId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderStructure {
    size: usize,
    leq: Vec<bool>,
    meet: Vec<Option<ElementId>>,
    join: Vec<Option<ElementId>>,
    is_lattice: bool,
    is_mv: bool,
}

impl OrderStructure {
    pub fn leq(&self, x: ElementId, y: ElementId) -> bool {
        self.leq[x.index() * self.size + y.index()]
    }

    pub fn lt(&self, x: ElementId, y: ElementId) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn meet(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        self.meet[x.index() * self.size + y.index()]
    }

    pub fn join(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        self.join[x.index() * self.size + y.index()]
    }

    pub fn is_lattice(&self) -> bool {
        self.is_lattice
    }

    pub fn is_mv(&self) -> bool {
        self.is_mv
    }

    /// First pair (by index) whose join does not exist.
    pub fn missing_join(&self) -> Option<(ElementId, ElementId)> {
        self.first_missing(&self.join)
    }

    /// First pair (by index) whose meet does not exist.
    pub fn missing_meet(&self) -> Option<(ElementId, ElementId)> {
        self.first_missing(&self.meet)
    }

    fn first_missing(&self, table: &[Option<ElementId>]) -> Option<(ElementId, ElementId)> {
        let i = table.iter().position(Option::is_none)?;
        Some((ElementId::new(i / self.size), ElementId::new(i % self.size)))
    }

    /// Join of a finite set, folded pairwise. The empty join is `zero`.
    pub fn join_all<I>(&self, zero: ElementId, items: I) -> Option<ElementId>
    where
        I: IntoIterator<Item = ElementId>,
    {
        items.into_iter().try_fold(zero, |acc, x| self.join(acc, x))
    }
}

/// Greatest element of `candidates` under `leq`, if one exists.
fn greatest(candidates: &[usize], leq: impl Fn(usize, usize) -> bool) -> Option<usize> {
    candidates
        .iter()
        .copied()
        .find(|&g| candidates.iter().all(|&z| leq(z, g)))
}

/// `a ≤ b` iff `a ⊕ c = b` for some `c`; bounds by exhaustive search.
pub fn derive_order(e: &EffectAlgebra) -> OrderStructure {
    let n = e.size();
    let mut leq = vec![false; n * n];
    for a in e.elements() {
        for c in e.elements() {
            if let Some(b) = e.partial_sum(a, c) {
                leq[a.index() * n + b.index()] = true;
            }
        }
    }
    let le = |x: usize, y: usize| leq[x * n + y];

    let mut meet = vec![None; n * n];
    let mut join = vec![None; n * n];
    for x in 0..n {
        for y in 0..n {
            let lower: Vec<usize> = (0..n).filter(|&z| le(z, x) && le(z, y)).collect();
            let upper: Vec<usize> = (0..n).filter(|&z| le(x, z) && le(y, z)).collect();
            meet[x * n + y] = greatest(&lower, le).map(ElementId::new);
            join[x * n + y] = greatest(&upper, |p, q| le(q, p)).map(ElementId::new);
        }
    }
    let is_lattice = meet.iter().chain(&join).all(Option::is_some);

    let mut order = OrderStructure {
        size: n,
        leq,
        meet,
        join,
        is_lattice,
        is_mv: false,
    };
    order.is_mv = is_lattice
        && e.elements().all(|x| {
            e.elements()
                .all(|y| compatible_in(e, &order, x, y) == Ok(true))
        });
    order
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub meet: Option<ElementId>,
    pub join: Option<ElementId>,
}

pub fn compute_bounds(e: &EffectAlgebra, x: ElementId, y: ElementId) -> Bounds {
    let order = e.order();
    Bounds {
        meet: order.meet(x, y),
        join: order.join(x, y),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("compatibility of {x} and {y} needs both bounds (meet present: {has_meet}, join present: {has_join})")]
pub struct BoundsMissing {
    pub x: ElementId,
    pub y: ElementId,
    pub has_meet: bool,
    pub has_join: bool,
}

fn compatible_in(
    e: &EffectAlgebra,
    order: &OrderStructure,
    x: ElementId,
    y: ElementId,
) -> Result<bool, BoundsMissing> {
    let (meet, join) = (order.meet(x, y), order.join(x, y));
    let (Some(m), Some(j)) = (meet, join) else {
        return Err(BoundsMissing {
            x,
            y,
            has_meet: meet.is_some(),
            has_join: join.is_some(),
        });
    };
    // y ⊖ (x ∧ y) always exists since x ∧ y ≤ y.
    let rest = e.partial_difference(y, m).expect("meet is below y");
    Ok(e.partial_sum(x, rest) == Some(j))
}

/// `x ↔ y`: `x ∨ y = x ⊕ (y ⊖ (x ∧ y))`. Only defined when both bounds exist.
pub fn compatible(e: &EffectAlgebra, x: ElementId, y: ElementId) -> Result<bool, BoundsMissing> {
    compatible_in(e, e.order(), x, y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub is_lattice: bool,
    pub is_mv: bool,
    pub is_orthomodular_image: bool,
}

pub fn classify(e: &EffectAlgebra) -> Classification {
    let order = e.order();
    let all_sharp = e.profile().sharp.len() == e.size();
    Classification {
        is_lattice: order.is_lattice(),
        is_mv: order.is_mv(),
        is_orthomodular_image: order.is_lattice() && all_sharp,
    }
}
