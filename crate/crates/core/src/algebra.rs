//! Finite effect algebras stored as partial sum tables.
//!
//! A [`SumTable`] is raw data: a square table of optional results. It may be
//! asymmetric or violate any axiom; [`verify_axioms`] reports what is wrong.
//! An [`EffectAlgebra`] is a table that has been closed under commutativity
//! and `0 ⊕ x = x`, checked against all four axioms, and equipped with its
//! orthosupplement map.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::eaf::EafDocument;
use crate::order::OrderStructure;
use crate::structure::StructureProfile;

/// Index of an element in a finite carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(usize);

impl ElementId {
    pub const fn new(index: usize) -> Self {
        ElementId(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("element index {index} out of range for carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("sum {x} ⊕ {y} declared twice with different results {first} and {second}")]
    DuplicateSum {
        x: ElementId,
        y: ElementId,
        first: ElementId,
        second: ElementId,
    },
    #[error("zero and one coincide; the one-element structure is not supported")]
    DegenerateCarrier,
    #[error("expected {expected} element names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("table is not an effect algebra:\n{0}")]
    AxiomViolation(AxiomReport),
}

/// Partial binary operation on `0..size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumTable {
    size: usize,
    zero: ElementId,
    one: ElementId,
    sums: Vec<Option<ElementId>>,
}

impl SumTable {
    pub fn new(size: usize, zero: ElementId, one: ElementId) -> Result<Self, AlgebraError> {
        for id in [zero, one] {
            if id.0 >= size {
                return Err(AlgebraError::IndexOutOfRange { index: id.0, size });
            }
        }
        Ok(SumTable {
            size,
            zero,
            one,
            sums: vec![None; size * size],
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> ElementId {
        self.zero
    }

    pub fn one(&self) -> ElementId {
        self.one
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.size).map(ElementId)
    }

    pub fn get(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        self.sums[x.0 * self.size + y.0]
    }

    fn check(&self, id: ElementId) -> Result<(), AlgebraError> {
        if id.0 < self.size {
            Ok(())
        } else {
            Err(AlgebraError::IndexOutOfRange {
                index: id.0,
                size: self.size,
            })
        }
    }

    /// Store `x ⊕ y = z` in one orientation only, overwriting any entry.
    pub fn set_oriented(
        &mut self,
        x: ElementId,
        y: ElementId,
        z: ElementId,
    ) -> Result<(), AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        self.check(z)?;
        self.sums[x.0 * self.size + y.0] = Some(z);
        Ok(())
    }

    /// Declare `x ⊕ y = z` in both orientations. Conflicting redeclaration
    /// is an error; repeating an identical declaration is not.
    pub fn declare(
        &mut self,
        x: ElementId,
        y: ElementId,
        z: ElementId,
    ) -> Result<(), AlgebraError> {
        self.check(x)?;
        self.check(y)?;
        self.check(z)?;
        for (p, q) in [(x, y), (y, x)] {
            match self.get(p, q) {
                Some(prev) if prev != z => {
                    return Err(AlgebraError::DuplicateSum {
                        x: p,
                        y: q,
                        first: prev,
                        second: z,
                    })
                }
                _ => self.sums[p.0 * self.size + q.0] = Some(z),
            }
        }
        Ok(())
    }

    /// Close the table under commutativity and `0 ⊕ x = x`.
    pub fn close(&mut self) -> Result<(), AlgebraError> {
        for x in 0..self.size {
            for y in 0..self.size {
                if let Some(z) = self.sums[x * self.size + y] {
                    self.declare(ElementId(x), ElementId(y), z)?;
                }
            }
        }
        let zero = self.zero;
        for x in self.elements().collect::<Vec<_>>() {
            self.declare(zero, x, x)?;
        }
        Ok(())
    }

    /// Number of defined entries, counting both orientations.
    pub fn defined_count(&self) -> usize {
        self.sums.iter().filter(|s| s.is_some()).count()
    }
}

/// Which condition a violation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// `0 ⊕ x = x` missing or contradicted.
    Closure,
    /// Commutativity.
    Ei,
    /// Associativity.
    Eii,
    /// Existence and uniqueness of orthosupplements.
    Eiii,
    /// `1 ⊕ a` defined only for `a = 0`.
    Eiv,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Closure => "closure",
            Axiom::Ei => "Ei",
            Axiom::Eii => "Eii",
            Axiom::Eiii => "Eiii",
            Axiom::Eiv => "Eiv",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// At most three elements.
    pub witnesses: Vec<ElementId>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    fn push(&mut self, axiom: Axiom, witnesses: Vec<ElementId>, detail: String) {
        debug_assert!(witnesses.len() <= 3);
        self.violations.push(AxiomViolation {
            axiom,
            witnesses,
            detail,
        });
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{}: {}", v.axiom, v.detail)?;
        }
        Ok(())
    }
}

fn show(x: Option<ElementId>) -> String {
    x.map_or_else(|| "undefined".to_string(), |z| z.to_string())
}

/// Check the effect algebra axioms on a table as given. Nothing is closed
/// or repaired; every violation found is listed.
pub fn verify_axioms(table: &SumTable) -> AxiomReport {
    let mut report = AxiomReport::default();
    let (zero, one) = (table.zero, table.one);

    for x in table.elements() {
        let z = table.get(zero, x);
        if z != Some(x) {
            report.push(
                Axiom::Closure,
                vec![x],
                format!("0 ⊕ {x} is {} instead of {x}", show(z)),
            );
        }
    }

    for x in table.elements() {
        for y in table.elements().filter(|y| *y > x) {
            let (xy, yx) = (table.get(x, y), table.get(y, x));
            if xy != yx {
                report.push(
                    Axiom::Ei,
                    vec![x, y],
                    format!("{x} ⊕ {y} = {} but {y} ⊕ {x} = {}", show(xy), show(yx)),
                );
            }
        }
    }

    for a in table.elements() {
        for b in table.elements() {
            for c in table.elements() {
                let left = table.get(a, b).and_then(|ab| table.get(ab, c));
                let right = table.get(b, c).and_then(|bc| table.get(a, bc));
                if left != right {
                    report.push(
                        Axiom::Eii,
                        vec![a, b, c],
                        format!(
                            "({a} ⊕ {b}) ⊕ {c} = {} but {a} ⊕ ({b} ⊕ {c}) = {}",
                            show(left),
                            show(right)
                        ),
                    );
                }
            }
        }
    }

    for a in table.elements() {
        let complements: Vec<ElementId> = table
            .elements()
            .filter(|b| table.get(a, *b) == Some(one))
            .collect();
        match complements.len() {
            1 => {}
            0 => report.push(Axiom::Eiii, vec![a], format!("{a} has no orthosupplement")),
            _ => report.push(
                Axiom::Eiii,
                std::iter::once(a)
                    .chain(complements.iter().copied().take(2))
                    .collect(),
                format!("{a} has {} orthosupplements", complements.len()),
            ),
        }
    }

    for a in table.elements().filter(|a| *a != zero) {
        if let Some(z) = table.get(one, a) {
            report.push(Axiom::Eiv, vec![a], format!("1 ⊕ {a} = {z} is defined"));
        }
    }

    report
}

/// A validated finite effect algebra. Immutable once built; derived
/// structure is computed on first use and cached.
#[derive(Debug, Clone)]
pub struct EffectAlgebra {
    names: Vec<String>,
    table: SumTable,
    supplement: Vec<ElementId>,
    order: OnceLock<OrderStructure>,
    profile: OnceLock<StructureProfile>,
}

impl PartialEq for EffectAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.table == other.table
    }
}

impl Eq for EffectAlgebra {}

impl EffectAlgebra {
    /// Close `table`, verify it, and attach element names.
    pub fn from_table(names: Vec<String>, mut table: SumTable) -> Result<Self, AlgebraError> {
        if names.len() != table.size {
            return Err(AlgebraError::NameCount {
                expected: table.size,
                got: names.len(),
            });
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(AlgebraError::DuplicateName(name.clone()));
            }
        }
        if table.zero == table.one {
            return Err(AlgebraError::DegenerateCarrier);
        }
        table.close()?;
        let report = verify_axioms(&table);
        if !report.is_empty() {
            return Err(AlgebraError::AxiomViolation(report));
        }
        let one = table.one;
        let supplement = table
            .elements()
            .map(|a| {
                table
                    .elements()
                    .find(|b| table.get(a, *b) == Some(one))
                    .expect("Eiii verified")
            })
            .collect();
        Ok(EffectAlgebra {
            names,
            table,
            supplement,
            order: OnceLock::new(),
            profile: OnceLock::new(),
        })
    }

    pub fn size(&self) -> usize {
        self.table.size
    }

    pub fn zero(&self) -> ElementId {
        self.table.zero
    }

    pub fn one(&self) -> ElementId {
        self.table.one
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.table.size).map(ElementId)
    }

    pub fn table(&self) -> &SumTable {
        &self.table
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: ElementId) -> &str {
        &self.names[x.0]
    }

    pub fn find(&self, name: &str) -> Option<ElementId> {
        self.names.iter().position(|n| n == name).map(ElementId)
    }

    /// Look up an element by name, panicking if absent. Intended for tests
    /// and fixtures where the name is known.
    pub fn id(&self, name: &str) -> ElementId {
        self.find(name)
            .unwrap_or_else(|| panic!("no element named `{name}`"))
    }

    /// `x ⊕ y`, or `None` when undefined.
    pub fn partial_sum(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        self.table.get(x, y)
    }

    /// `b ⊖ a`: the unique `c` with `a ⊕ c = b`, defined iff `a ≤ b`.
    pub fn partial_difference(&self, b: ElementId, a: ElementId) -> Option<ElementId> {
        self.elements().find(|c| self.table.get(a, *c) == Some(b))
    }

    pub fn supplement(&self, x: ElementId) -> ElementId {
        self.supplement[x.0]
    }

    /// `k·x`, with `0·x = 0`.
    pub fn multiple(&self, x: ElementId, k: u32) -> Option<ElementId> {
        let mut acc = self.zero();
        for _ in 0..k {
            acc = self.partial_sum(acc, x)?;
        }
        Some(acc)
    }

    /// Iterated sum of a sequence, left to right.
    pub fn sum_all<I: IntoIterator<Item = ElementId>>(&self, items: I) -> Option<ElementId> {
        items
            .into_iter()
            .try_fold(self.zero(), |acc, x| self.partial_sum(acc, x))
    }

    pub fn order(&self) -> &OrderStructure {
        self.order.get_or_init(|| crate::order::derive_order(self))
    }

    pub fn profile(&self) -> &StructureProfile {
        self.profile
            .get_or_init(|| crate::structure::analyze_structure(self))
    }

    pub fn leq(&self, x: ElementId, y: ElementId) -> bool {
        self.order().leq(x, y)
    }

    pub fn is_lattice(&self) -> bool {
        self.order().is_lattice()
    }
}

/// Resolve a parsed document into a validated algebra.
pub fn build_effect_algebra(doc: &EafDocument) -> Result<EffectAlgebra, AlgebraError> {
    let index = |name: &str| {
        doc.names
            .iter()
            .position(|n| n == name)
            .map(ElementId)
            .expect("document names resolved at parse time")
    };
    let mut table = SumTable::new(doc.names.len(), index(&doc.zero), index(&doc.one))?;
    for (x, y, z) in &doc.sums {
        table.declare(index(x), index(y), index(z))?;
    }
    EffectAlgebra::from_table(doc.names.clone(), table)
}
