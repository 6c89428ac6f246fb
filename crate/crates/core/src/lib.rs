//! Finite effect algebras given by partial addition tables.
//!
//! An [`EffectAlgebra`] is built from a [`SumTable`] and checked against
//! the effect-algebra axioms on construction. Order, sharp and meager
//! elements, atomic decompositions and states are all derived from the
//! table by exhaustive search, with exact rational arithmetic throughout.

pub mod algebra;
pub mod constructions;
pub mod decomposition;
pub mod eaf;
pub mod laws;
pub mod lp;
pub mod order;
pub mod rational;
pub mod state;
pub mod structure;

pub use algebra::{
    build_effect_algebra, verify_axioms, AlgebraError, Axiom, AxiomReport, AxiomViolation,
    EffectAlgebra, ElementId, SumTable,
};
pub use constructions::{
    boolean_algebra, direct_product, horizontal_sum, mv_chain, mv_chain_with_generator,
    paper_fixture, ConstructionError, FixtureName,
};
pub use decomposition::{
    atomic_decomposition, basic_decomposition, split_atomic_decomposition, AtomMultiple,
    AtomicDecomposition, BasicDecomposition, DecompositionError, SplitDecomposition,
};
pub use eaf::{parse_eaf, parse_state, serialize_eaf, serialize_state, EafDocument, EafError};
pub use laws::{run_law_suite, LawId, LawReport, LawStatus, Mode};
pub use order::{classify, compatible, Classification, OrderStructure};
pub use rational::{format_rational, parse_rational, Rational};
pub use state::{
    extreme_states, find_state, restrict, restrict_to_sharp, smear_state, state_system,
    verify_state, State, StateError, StateSearch,
};
pub use structure::{
    sharp_subalgebra, sub_effect_algebra, SharpBounds, StructureFlags, StructureProfile, SubAlgebra,
};
