//! States: maps `ω: E → [0, 1]` with `ω(1) = 1` and
//! `ω(x ⊕ y) = ω(x) + ω(y)` whenever `x ⊕ y` is defined.
//!
//! All values are exact rationals. Existence is decided by [`crate::lp`];
//! states on the sharp elements are extended to the whole algebra by
//! [`smear_state`], which sets `ω̂(a) = ω(n_a·a) / n_a` on each atom and
//! `ω̂(x) = ω(v_x) + Σ k_α ω̂(a_α)` along the basic decomposition of `x`.
//! Decompositions are finite here, so the supremum over finite subfamilies
//! is just the full sum.
//!
//! On a finite algebra every decreasing net is eventually constant, so every
//! state is order-continuous and smearing asks for nothing beyond validity.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{EffectAlgebra, ElementId};
use crate::decomposition::{
    basic_decomposition, basic_decomposition_unchecked, BasicDecomposition, DecompositionError,
};
use crate::lp::{self, Certificate, Feasibility, LinearRow, LinearSystem};
use crate::rational::{format_rational, in_unit_interval, int, Rational};
use crate::structure::SubAlgebra;

/// What produced a row of the state system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowOrigin {
    /// `v_z − v_x − v_y = 0` for a defined `x ⊕ y = z`.
    Sum {
        x: ElementId,
        y: ElementId,
        z: ElementId,
    },
    /// `v_0 = 0`.
    Zero,
    /// `v_1 = 1`.
    One,
}

impl RowOrigin {
    pub fn describe(&self, e: &EffectAlgebra) -> String {
        match *self {
            RowOrigin::Sum { x, y, z } => {
                format!("{} ⊕ {} = {}", e.name(x), e.name(y), e.name(z))
            }
            RowOrigin::Zero => format!("{} = 0", e.name(e.zero())),
            RowOrigin::One => format!("{} = 1", e.name(e.one())),
        }
    }
}

/// The state constraints of an algebra, one variable per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSystem {
    pub system: LinearSystem,
    pub origins: Vec<RowOrigin>,
}

/// One row per defined sum with `x ≤ y` by index and neither operand zero,
/// then `v_0 = 0` and `v_1 = 1`. Rows for `0 ⊕ x = x` are implied by
/// `v_0 = 0` and left out.
pub fn state_system(e: &EffectAlgebra) -> StateSystem {
    let mut rows = Vec::new();
    let mut origins = Vec::new();
    for x in e.elements().filter(|&x| x != e.zero()) {
        for y in e.elements().filter(|&y| y >= x && y != e.zero()) {
            let Some(z) = e.partial_sum(x, y) else {
                continue;
            };
            let mut coeffs: Vec<(usize, i64)> = Vec::with_capacity(3);
            for (id, c) in [(z, 1), (x, -1), (y, -1)] {
                match coeffs.iter_mut().find(|(j, _)| *j == id.index()) {
                    Some((_, acc)) => *acc += c,
                    None => coeffs.push((id.index(), c)),
                }
            }
            coeffs.retain(|&(_, c)| c != 0);
            rows.push(LinearRow { coeffs, rhs: 0 });
            origins.push(RowOrigin::Sum { x, y, z });
        }
    }
    rows.push(LinearRow {
        coeffs: vec![(e.zero().index(), 1)],
        rhs: 0,
    });
    origins.push(RowOrigin::Zero);
    rows.push(LinearRow {
        coeffs: vec![(e.one().index(), 1)],
        rhs: 1,
    });
    origins.push(RowOrigin::One);
    StateSystem {
        system: LinearSystem {
            num_vars: e.size(),
            rows,
        },
        origins,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateViolation {
    WrongLength {
        expected: usize,
        got: usize,
    },
    OutOfRange(ElementId),
    ZeroNotZero,
    OneNotOne,
    Additivity {
        x: ElementId,
        y: ElementId,
        z: ElementId,
    },
}

impl StateViolation {
    pub fn describe(&self, e: &EffectAlgebra, values: &[Rational]) -> String {
        let v = |x: ElementId| format_rational(&values[x.index()]);
        match *self {
            StateViolation::WrongLength { expected, got } => {
                format!("expected {expected} values, got {got}")
            }
            StateViolation::OutOfRange(x) => {
                format!("ω({}) = {} is outside [0, 1]", e.name(x), v(x))
            }
            StateViolation::ZeroNotZero => format!("ω(0) = {} instead of 0/1", v(e.zero())),
            StateViolation::OneNotOne => format!("ω(1) = {} instead of 1/1", v(e.one())),
            StateViolation::Additivity { x, y, z } => format!(
                "ω({}) + ω({}) = {} + {} but ω({}) = {}",
                e.name(x),
                e.name(y),
                v(x),
                v(y),
                e.name(z),
                v(z)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StateReport {
    pub violations: Vec<StateViolation>,
    /// `ω(x) = 0` only for `x = 0`. Informational.
    pub faithful: bool,
}

impl StateReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check every state condition over the full closed sum table.
pub fn verify_state(e: &EffectAlgebra, candidate: &[Rational]) -> StateReport {
    if candidate.len() != e.size() {
        return StateReport {
            violations: vec![StateViolation::WrongLength {
                expected: e.size(),
                got: candidate.len(),
            }],
            faithful: false,
        };
    }
    let v = |x: ElementId| &candidate[x.index()];
    let mut violations = Vec::new();
    if !v(e.zero()).is_zero() {
        violations.push(StateViolation::ZeroNotZero);
    }
    if !v(e.one()).is_one() {
        violations.push(StateViolation::OneNotOne);
    }
    for x in e.elements() {
        if !in_unit_interval(v(x)) {
            violations.push(StateViolation::OutOfRange(x));
        }
    }
    for x in e.elements() {
        for y in e.elements().filter(|&y| y >= x) {
            if let Some(z) = e.partial_sum(x, y) {
                if v(x) + v(y) != *v(z) {
                    violations.push(StateViolation::Additivity { x, y, z });
                }
            }
        }
    }
    let faithful = e.elements().all(|x| x == e.zero() || !v(x).is_zero());
    StateReport {
        violations,
        faithful,
    }
}

/// A verified state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct State {
    values: Vec<Rational>,
}

impl State {
    pub fn new(e: &EffectAlgebra, values: Vec<Rational>) -> Result<State, StateReport> {
        let report = verify_state(e, &values);
        if report.is_valid() {
            Ok(State { values })
        } else {
            Err(report)
        }
    }

    pub fn value(&self, x: ElementId) -> &Rational {
        &self.values[x.index()]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }
}

/// Proof that an algebra has no state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoState {
    pub system: StateSystem,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateSearch {
    Found(State),
    None(NoState),
}

pub fn find_state(e: &EffectAlgebra) -> StateSearch {
    let system = state_system(e);
    match lp::solve_exact(&system.system) {
        Feasibility::Feasible(point) => {
            let state = State::new(e, point).expect("solver point satisfies every state condition");
            StateSearch::Found(state)
        }
        Feasibility::Infeasible(certificate) => StateSearch::None(NoState {
            system,
            certificate,
        }),
    }
}

/// A feasible point plus the optimisers of `±ω(x)` for each element,
/// deduplicated, in discovery order. Empty when no state exists.
pub fn extreme_states(e: &EffectAlgebra) -> Vec<State> {
    let system = state_system(e);
    let Feasibility::Feasible(first) = lp::solve_exact(&system.system) else {
        return Vec::new();
    };
    let mut found: Vec<Vec<Rational>> = vec![first];
    for x in e.elements() {
        for sign in [1, -1] {
            let mut objective = vec![Rational::zero(); e.size()];
            objective[x.index()] = int(sign);
            if let Some(point) = lp::minimize(&system.system, &objective) {
                if !found.contains(&point) {
                    found.push(point);
                }
            }
        }
    }
    found
        .into_iter()
        .map(|values| State::new(e, values).expect("solver point satisfies every state condition"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("the given map is not a state on S(E) ({} violations)", .0.violations.len())]
    InvalidState(StateReport),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

/// Restrict a state on `E` to a sub-effect algebra.
pub fn restrict(sub: &SubAlgebra, s: &State) -> State {
    let values = sub
        .algebra
        .elements()
        .map(|x| s.value(sub.to_parent(x)).clone())
        .collect();
    State::new(&sub.algebra, values).expect("restriction of a state to a sub-effect algebra")
}

/// Restrict a state on `E` to its sharp elements.
pub fn restrict_to_sharp(e: &EffectAlgebra, s: &State) -> Result<State, StateError> {
    let sub = crate::structure::sharp_subalgebra(e).map_err(|err| {
        StateError::PreconditionFailed(format!("S(E) is not a sub-effect algebra: {err}"))
    })?;
    Ok(restrict(&sub, s))
}

/// Extend a state on `S(E)` to `E`. Requires lattice order.
pub fn smear_state(
    e: &EffectAlgebra,
    sharp: &SubAlgebra,
    omega: &State,
) -> Result<State, StateError> {
    if !e.is_lattice() {
        return Err(StateError::PreconditionFailed(
            "the algebra is not lattice ordered".into(),
        ));
    }
    let report = verify_state(&sharp.algebra, omega.values());
    if !report.is_valid() {
        return Err(StateError::InvalidState(report));
    }
    let values = smear_values(e, sharp, omega.values(), |x| basic_decomposition(e, x))?;
    State::new(e, values).map_err(|report| {
        StateError::PreconditionFailed(format!(
            "smeared map is not a state ({} violations)",
            report.violations.len()
        ))
    })
}

/// Apply the smearing formulas without the lattice precondition or a final
/// validity check. Used to exhibit what goes wrong on algebras that are not
/// lattice ordered.
pub fn smear_values_unchecked(
    e: &EffectAlgebra,
    sharp: &SubAlgebra,
    omega: &[Rational],
) -> Result<Vec<Rational>, StateError> {
    smear_values(e, sharp, omega, |x| basic_decomposition_unchecked(e, x))
}

fn smear_values(
    e: &EffectAlgebra,
    sharp: &SubAlgebra,
    omega: &[Rational],
    decompose: impl Fn(ElementId) -> Result<BasicDecomposition, DecompositionError>,
) -> Result<Vec<Rational>, StateError> {
    let profile = e.profile();
    let on_sharp = |x: ElementId| -> Result<&Rational, StateError> {
        sharp
            .from_parent(x)
            .map(|local| &omega[local.index()])
            .ok_or_else(|| {
                StateError::PreconditionFailed(format!("{} is not a sharp element", e.name(x)))
            })
    };
    let atom_value = |a: ElementId| -> Result<Rational, StateError> {
        let n = profile.ord(a);
        let top = e.multiple(a, n).expect("n_a·a exists");
        Ok(on_sharp(top)? / int(n as i64))
    };
    e.elements()
        .map(|x| {
            let d = decompose(x)?;
            let mut value = on_sharp(d.sharp_part)?.clone();
            for p in &d.meager_parts.parts {
                value += atom_value(p.atom)? * int(p.multiplicity as i64);
            }
            Ok(value)
        })
        .collect()
}
