//! Executable law checks.
//!
//! Every law is checked by exhaustive quantification over the finite
//! carrier. Laws whose hypothesis is lattice order are skipped on algebras
//! that are not lattices, unless the suite runs in
//! [`Mode::Counterexample`], where the conclusions are evaluated anyway so
//! that their failures can be exhibited. A failure carries the first
//! witness found in index order.
//!
//! Joins of arbitrary subsets are only checked for pairs and for the part
//! values of orthogonal atom-multiple families, which is every finite join
//! the decomposition results rely on.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{EffectAlgebra, ElementId};
use crate::constructions::{boolean_algebra, direct_product, mv_chain, FixtureName};
use crate::decomposition::{
    atomic_decomposition, basic_decomposition, basic_decomposition_unchecked,
    split_atomic_decomposition, AtomMultiple, AtomicDecomposition, BasicDecomposition,
};
use crate::order::{compatible, OrderStructure};
use crate::state::{extreme_states, restrict, smear_state, smear_values_unchecked, verify_state};
use crate::structure::{sharp_subalgebra, sub_effect_algebra, StructureProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(non_camel_case_types)]
pub enum LawId {
    L2_2_i,
    L2_2_ii,
    L2_2_iii,
    L2_2_iv,
    L2_3_i,
    L2_3_ii,
    L2_3_iii,
    L2_3_iv,
    L2_3_v,
    T2_4,
    T2_6,
    T3_4,
    T3_5,
    T4_1,
    T4_2,
    SeSubalgebra,
    SeFullSublattice,
    ProductClosure,
}

impl LawId {
    pub const ALL: [LawId; 18] = [
        LawId::L2_2_i,
        LawId::L2_2_ii,
        LawId::L2_2_iii,
        LawId::L2_2_iv,
        LawId::L2_3_i,
        LawId::L2_3_ii,
        LawId::L2_3_iii,
        LawId::L2_3_iv,
        LawId::L2_3_v,
        LawId::T2_4,
        LawId::T2_6,
        LawId::T3_4,
        LawId::T3_5,
        LawId::T4_1,
        LawId::T4_2,
        LawId::SeSubalgebra,
        LawId::SeFullSublattice,
        LawId::ProductClosure,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LawId::L2_2_i => "L2.2.i",
            LawId::L2_2_ii => "L2.2.ii",
            LawId::L2_2_iii => "L2.2.iii",
            LawId::L2_2_iv => "L2.2.iv",
            LawId::L2_3_i => "L2.3.i",
            LawId::L2_3_ii => "L2.3.ii",
            LawId::L2_3_iii => "L2.3.iii",
            LawId::L2_3_iv => "L2.3.iv",
            LawId::L2_3_v => "L2.3.v",
            LawId::T2_4 => "T2.4",
            LawId::T2_6 => "T2.6",
            LawId::T3_4 => "T3.4",
            LawId::T3_5 => "T3.5",
            LawId::T4_1 => "T4.1",
            LawId::T4_2 => "T4.2",
            LawId::SeSubalgebra => "SE-subalgebra",
            LawId::SeFullSublattice => "SE-full-sublattice",
            LawId::ProductClosure => "product-closure",
        }
    }

    /// One-line statement of the law.
    pub fn statement(self) -> &'static str {
        match self {
            LawId::L2_2_i => "x ≤ y′ ⇒ x ⊕ y = (x ∨ y) ⊕ (x ∧ y)",
            LawId::L2_2_ii => "x, y ≤ z′ ⇒ (x ∨ y) ⊕ z = (x ⊕ z) ∨ (y ⊕ z)",
            LawId::L2_2_iii => "x ∧ y = 0, kx ⊕ ly defined ⇒ kx ∧ ly = 0 and kx ∨ ly = kx ⊕ ly",
            LawId::L2_2_iv => "x ↔ every y ∈ Y ⇒ x ∧ ⋁Y = ⋁{x ∧ y} and x ↔ ⋁Y",
            LawId::L2_3_i => "atom a, 1 ≤ k < n_a ⇒ ka ∧ (ka)′ ≠ 0",
            LawId::L2_3_ii => "atom a ⇒ n_a·a sharp and k·a not sharp for k < n_a",
            LawId::L2_3_iii => "atom a, a ≤ x ≤ ka ⇒ x = ra",
            LawId::L2_3_iv => "atoms a, b, k ≠ n_a, ka = lb ⇒ a = b and k = l",
            LawId::L2_3_v => "x = ⊕ k_α a_α = ⋁ k_α a_α, and x sharp iff every k_α = ord(a_α)",
            LawId::T2_4 => {
                "atoms ka ≤ lb: l < n_b ⇒ a = b; l = n_b ⇒ a = b or (a ↮ b and n_a a ≤ n_b b)"
            }
            LawId::T2_6 => "a family with every k_α ≠ ord(a_α) is the only family with its sum",
            LawId::T3_4 => "x = v_x ⊕ (⊕ k_α a_α) with unique sharp v_x and unique meager family",
            LawId::T3_5 => "atom a ⇒ n_a·a is the smallest sharp element above a",
            LawId::T4_1 => "full parts of a family sum to v_x and the rest sum to x ⊖ v_x",
            LawId::T4_2 => "every state on S(E) smears to a state on E restricting to it",
            LawId::SeSubalgebra => "S(E) is a sub-effect algebra closed under ′",
            LawId::SeFullSublattice => "meets and joins of sharp elements are sharp",
            LawId::ProductClosure => {
                "products with 2^1 and C_2 stay lattice, atomic, sharply dominating"
            }
        }
    }
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error)]
#[error("unknown law id `{0}`")]
pub struct UnknownLaw(pub String);

impl FromStr for LawId {
    type Err = UnknownLaw;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LawId::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| UnknownLaw(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Skip laws whose hypothesis fails.
    #[default]
    Standard,
    /// Evaluate lattice-law conclusions on every input.
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawStatus {
    Pass,
    Fail {
        witnesses: Vec<ElementId>,
        detail: String,
    },
    Skipped(String),
}

impl LawStatus {
    pub fn label(&self) -> &'static str {
        match self {
            LawStatus::Pass => "pass",
            LawStatus::Fail { .. } => "fail",
            LawStatus::Skipped(_) => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawRecord {
    pub law: LawId,
    pub status: LawStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LawReport {
    pub records: Vec<LawRecord>,
}

impl LawReport {
    pub fn status(&self, law: LawId) -> Option<&LawStatus> {
        self.records
            .iter()
            .find(|r| r.law == law)
            .map(|r| &r.status)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawRecord> {
        self.records
            .iter()
            .filter(|r| matches!(r.status, LawStatus::Fail { .. }))
    }

    pub fn passed(&self) -> impl Iterator<Item = &LawRecord> {
        self.records.iter().filter(|r| r.status == LawStatus::Pass)
    }

    pub fn has_failures(&self) -> bool {
        self.failures().next().is_some()
    }
}

/// Laws that must fail on a shipped fixture in counterexample mode.
pub fn expected_counterexamples(fixture: FixtureName) -> &'static [LawId] {
    match fixture {
        FixtureName::Example25 | FixtureName::Example37 => &[LawId::L2_3_ii, LawId::T2_6],
        FixtureName::Example44 => &[LawId::T2_6, LawId::T4_2],
    }
}

/// Expected failures that did not occur.
pub fn unexpected_passes(report: &LawReport, expected: &[LawId]) -> Vec<LawId> {
    expected
        .iter()
        .copied()
        .filter(|&law| !matches!(report.status(law), Some(LawStatus::Fail { .. })))
        .collect()
}

struct Failure {
    witnesses: Vec<ElementId>,
    detail: String,
}

type Check = Result<(), Failure>;

fn fail(witnesses: Vec<ElementId>, detail: impl Into<String>) -> Check {
    Err(Failure {
        witnesses,
        detail: detail.into(),
    })
}

/// An orthogonal family of atom multiples and its sum.
#[derive(Debug, Clone)]
struct Family {
    parts: Vec<AtomMultiple>,
    sum: ElementId,
}

struct Context<'a> {
    e: &'a EffectAlgebra,
    order: &'a OrderStructure,
    profile: &'a StructureProfile,
    mode: Mode,
    families: Vec<Family>,
}

impl<'a> Context<'a> {
    fn new(e: &'a EffectAlgebra, mode: Mode) -> Self {
        let mut ctx = Context {
            e,
            order: e.order(),
            profile: e.profile(),
            mode,
            families: Vec::new(),
        };
        ctx.families = ctx.enumerate_families();
        ctx
    }

    fn name(&self, x: ElementId) -> &str {
        self.e.name(x)
    }

    fn meet(&self, x: ElementId, y: ElementId) -> Result<ElementId, Failure> {
        self.order.meet(x, y).ok_or_else(|| Failure {
            witnesses: vec![x, y],
            detail: format!("{} ∧ {} does not exist", self.name(x), self.name(y)),
        })
    }

    fn join(&self, x: ElementId, y: ElementId) -> Result<ElementId, Failure> {
        self.order.join(x, y).ok_or_else(|| Failure {
            witnesses: vec![x, y],
            detail: format!("{} ∨ {} does not exist", self.name(x), self.name(y)),
        })
    }

    fn sum(&self, x: ElementId, y: ElementId) -> Result<ElementId, Failure> {
        self.e.partial_sum(x, y).ok_or_else(|| Failure {
            witnesses: vec![x, y],
            detail: format!("{} ⊕ {} is undefined", self.name(x), self.name(y)),
        })
    }

    fn multiple(&self, a: ElementId, k: u32) -> ElementId {
        self.e.multiple(a, k).expect("k ≤ ord(a)")
    }

    fn ord(&self, a: ElementId) -> u32 {
        self.profile.ord(a)
    }

    fn compatible(&self, x: ElementId, y: ElementId) -> bool {
        compatible(self.e, x, y) == Ok(true)
    }

    fn nonzero(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.e.elements().filter(move |&x| x != self.e.zero())
    }

    fn atoms(&self) -> &[ElementId] {
        &self.profile.atoms
    }

    /// All families with distinct atoms and `0 ≤ k ≤ ord(a)`, in
    /// lexicographic order of multiplicities over ascending atoms.
    fn enumerate_families(&self) -> Vec<Family> {
        fn go(
            ctx: &Context<'_>,
            index: usize,
            parts: &mut Vec<AtomMultiple>,
            sum: ElementId,
            out: &mut Vec<Family>,
        ) {
            let atoms = ctx.atoms();
            if index == atoms.len() {
                out.push(Family {
                    parts: parts.clone(),
                    sum,
                });
                return;
            }
            let a = atoms[index];
            go(ctx, index + 1, parts, sum, out);
            for k in 1..=ctx.ord(a) {
                // If k·a does not fit, no larger multiple does either.
                let Some(next) = ctx.e.partial_sum(sum, ctx.multiple(a, k)) else {
                    break;
                };
                parts.push(AtomMultiple::new(a, k));
                go(ctx, index + 1, parts, next, out);
                parts.pop();
            }
        }
        let mut out = Vec::new();
        go(self, 0, &mut Vec::new(), self.e.zero(), &mut out);
        out
    }

    fn show_parts(&self, parts: &[AtomMultiple]) -> String {
        AtomicDecomposition::new(parts.to_vec(), true)
            .display(self.e)
            .to_string()
    }

    fn all_partial(&self, parts: &[AtomMultiple]) -> bool {
        parts.iter().all(|p| p.multiplicity != self.ord(p.atom))
    }

    fn basic(&self, x: ElementId) -> Result<BasicDecomposition, Failure> {
        let result = match self.mode {
            Mode::Standard => basic_decomposition(self.e, x),
            Mode::Counterexample => basic_decomposition_unchecked(self.e, x),
        };
        result.map_err(|err| Failure {
            witnesses: vec![x],
            detail: format!("basic decomposition of {}: {err}", self.name(x)),
        })
    }
}

fn hypothesis(e: &EffectAlgebra, law: LawId) -> Result<(), String> {
    let flags = e.profile().flags;
    if !e.is_lattice() {
        return Err("not lattice ordered".into());
    }
    let needs_domination = matches!(
        law,
        LawId::T3_4 | LawId::T4_1 | LawId::T4_2 | LawId::ProductClosure | LawId::L2_3_v
    );
    if !flags.atomic {
        return Err("not atomic".into());
    }
    if needs_domination && !(flags.archimedean && flags.sharply_dominating) {
        return Err("not Archimedean and sharply dominating".into());
    }
    Ok(())
}

/// Run the selected laws (all of them when `selection` is empty).
pub fn run_law_suite(e: &EffectAlgebra, selection: &[LawId], mode: Mode) -> LawReport {
    let laws: Vec<LawId> = if selection.is_empty() {
        LawId::ALL.to_vec()
    } else {
        LawId::ALL
            .into_iter()
            .filter(|l| selection.contains(l))
            .collect()
    };
    let ctx = Context::new(e, mode);
    let records = laws
        .into_iter()
        .map(|law| {
            let status = match (hypothesis(e, law), mode) {
                (Err(reason), Mode::Standard) => LawStatus::Skipped(reason),
                _ => match check(&ctx, law) {
                    Ok(()) => LawStatus::Pass,
                    Err(f) => LawStatus::Fail {
                        witnesses: f.witnesses,
                        detail: f.detail,
                    },
                },
            };
            LawRecord { law, status }
        })
        .collect();
    LawReport { records }
}

fn check(ctx: &Context<'_>, law: LawId) -> Check {
    match law {
        LawId::L2_2_i => check_l22_i(ctx),
        LawId::L2_2_ii => check_l22_ii(ctx),
        LawId::L2_2_iii => check_l22_iii(ctx),
        LawId::L2_2_iv => check_l22_iv(ctx),
        LawId::L2_3_i => check_l23_i(ctx),
        LawId::L2_3_ii => check_l23_ii(ctx),
        LawId::L2_3_iii => check_l23_iii(ctx),
        LawId::L2_3_iv => check_l23_iv(ctx),
        LawId::L2_3_v => check_l23_v(ctx),
        LawId::T2_4 => check_t24(ctx),
        LawId::T2_6 => check_t26(ctx),
        LawId::T3_4 => check_t34(ctx),
        LawId::T3_5 => check_t35(ctx),
        LawId::T4_1 => check_t41(ctx),
        LawId::T4_2 => check_t42(ctx),
        LawId::SeSubalgebra => check_se_subalgebra(ctx),
        LawId::SeFullSublattice => check_se_full_sublattice(ctx),
        LawId::ProductClosure => check_product_closure(ctx),
    }
}

fn check_l22_i(ctx: &Context<'_>) -> Check {
    let e = ctx.e;
    for x in e.elements() {
        for y in e.elements() {
            let Some(s) = e.partial_sum(x, y) else {
                continue;
            };
            let (j, m) = (ctx.join(x, y)?, ctx.meet(x, y)?);
            if e.partial_sum(j, m) != Some(s) {
                return fail(
                    vec![x, y],
                    format!(
                        "{} ⊕ {} ≠ ({0} ∨ {1}) ⊕ ({0} ∧ {1})",
                        ctx.name(x),
                        ctx.name(y)
                    ),
                );
            }
        }
    }
    Ok(())
}

fn check_l22_ii(ctx: &Context<'_>) -> Check {
    let e = ctx.e;
    for z in e.elements() {
        let zs = e.supplement(z);
        let below: Vec<ElementId> = e.elements().filter(|&x| e.leq(x, zs)).collect();
        for &x in &below {
            for &y in &below {
                let left = ctx.sum(ctx.join(x, y)?, z)?;
                let right = ctx.join(ctx.sum(x, z)?, ctx.sum(y, z)?)?;
                if left != right {
                    return fail(
                        vec![x, y, z],
                        format!(
                            "({} ∨ {}) ⊕ {} = {} but ({0} ⊕ {2}) ∨ ({1} ⊕ {2}) = {}",
                            ctx.name(x),
                            ctx.name(y),
                            ctx.name(z),
                            ctx.name(left),
                            ctx.name(right)
                        ),
                    );
                }
            }
        }
    }
    Ok(())
}

fn check_l22_iii(ctx: &Context<'_>) -> Check {
    let e = ctx.e;
    for x in ctx.nonzero() {
        for y in ctx.nonzero() {
            if ctx.order.meet(x, y) != Some(e.zero()) {
                continue;
            }
            for k in 1..=ctx.ord(x) {
                let kx = ctx.multiple(x, k);
                for l in 1..=ctx.ord(y) {
                    let ly = ctx.multiple(y, l);
                    let Some(s) = e.partial_sum(kx, ly) else {
                        continue;
                    };
                    if ctx.meet(kx, ly)? != e.zero() || ctx.join(kx, ly)? != s {
                        return fail(
                            vec![x, y, s],
                            format!(
                                "{k}·{} and {l}·{} are not disjoint with join equal to their sum",
                                ctx.name(x),
                                ctx.name(y)
                            ),
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_l22_iv(ctx: &Context<'_>) -> Check {
    let e = ctx.e;
    let mut sets: Vec<Vec<ElementId>> = Vec::new();
    for y1 in e.elements() {
        for y2 in e.elements().filter(|&y2| y2 > y1) {
            sets.push(vec![y1, y2]);
        }
    }
    for f in &ctx.families {
        if f.parts.len() > 2 {
            sets.push(
                f.parts
                    .iter()
                    .map(|p| ctx.multiple(p.atom, p.multiplicity))
                    .collect(),
            );
        }
    }
    for x in e.elements() {
        for ys in &sets {
            if !ys.iter().all(|&y| ctx.compatible(x, y)) {
                continue;
            }
            let Some(top) = ctx.order.join_all(e.zero(), ys.iter().copied()) else {
                continue;
            };
            let meets: Vec<ElementId> = ys
                .iter()
                .map(|&y| ctx.meet(x, y))
                .collect::<Result<_, _>>()?;
            let joined = ctx.order.join_all(e.zero(), meets);
            let left = ctx.meet(x, top)?;
            if joined != Some(left) || !ctx.compatible(x, top) {
                let mut witnesses = vec![x, top];
                witnesses.extend(ys.first());
                return fail(
                    witnesses,
                    format!(
                        "{} ∧ ⋁{{{}}} does not distribute",
                        ctx.name(x),
                        ys.iter()
                            .map(|&y| ctx.name(y))
                            .collect::<Vec<_>>()
                            .join(", ")
                    ),
                );
            }
        }
    }
    Ok(())
}

fn check_l23_i(ctx: &Context<'_>) -> Check {
    for &a in ctx.atoms() {
        for k in 1..ctx.ord(a) {
            let ka = ctx.multiple(a, k);
            let kas = ctx.e.supplement(ka);
            let nonzero_meet = match ctx.order.meet(ka, kas) {
                Some(m) => m != ctx.e.zero(),
                None => !ctx.profile.is_sharp(ka),
            };
            if !nonzero_meet {
                return fail(vec![a, ka], format!("{k}·{} ∧ ({k}·{0})′ = 0", ctx.name(a)));
            }
        }
    }
    Ok(())
}

fn check_l23_ii(ctx: &Context<'_>) -> Check {
    for &a in ctx.atoms() {
        let n = ctx.ord(a);
        let top = ctx.multiple(a, n);
        if !ctx.profile.is_sharp(top) {
            return fail(
                vec![a, top],
                format!(
                    "ord({}) = {n} but {n}·{0} = {} is not sharp",
                    ctx.name(a),
                    ctx.name(top)
                ),
            );
        }
        for k in 1..n {
            let ka = ctx.multiple(a, k);
            if ctx.profile.is_sharp(ka) {
                return fail(
                    vec![a, ka],
                    format!("{k}·{} is sharp although {k} < ord", ctx.name(a)),
                );
            }
        }
    }
    Ok(())
}

fn check_l23_iii(ctx: &Context<'_>) -> Check {
    let e = ctx.e;
    for &a in ctx.atoms() {
        let multiples: Vec<ElementId> = (1..=ctx.ord(a)).map(|r| ctx.multiple(a, r)).collect();
        for (k, &ka) in multiples.iter().enumerate() {
            for x in e.elements() {
                if e.leq(a, x) && e.leq(x, ka) && !multiples[..=k].contains(&x) {
                    return fail(
                        vec![a, x, ka],
                        format!(
                            "{} lies between {} and {} but is no multiple of it",
                            ctx.name(x),
                            ctx.name(a),
                            ctx.name(ka)
                        ),
                    );
                }
            }
        }
    }
    Ok(())
}

fn check_l23_iv(ctx: &Context<'_>) -> Check {
    for &a in ctx.atoms() {
        for k in 1..ctx.ord(a) {
            let ka = ctx.multiple(a, k);
            for &b in ctx.atoms() {
                for l in 1..=ctx.ord(b) {
                    if ctx.multiple(b, l) == ka && (a != b || k != l) {
                        return fail(
                            vec![a, b, ka],
                            format!(
                                "{k}·{} = {l}·{} = {}",
                                ctx.name(a),
                                ctx.name(b),
                                ctx.name(ka)
                            ),
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_l23_v(ctx: &Context<'_>) -> Check {
    for x in ctx.nonzero() {
        let d = atomic_decomposition(ctx.e, x).map_err(|err| Failure {
            witnesses: vec![x],
            detail: err.to_string(),
        })?;
        if d.sum(ctx.e) != Some(x) || d.join(ctx.e) != Some(x) {
            return fail(
                vec![x],
                format!(
                    "{} is not both the sum and the join of {}",
                    ctx.name(x),
                    d.display(ctx.e)
                ),
            );
        }
        let all_full = d.parts.iter().all(|p| p.is_full(ctx.e));
        if all_full != ctx.profile.is_sharp(x) {
            return fail(
                vec![x],
                format!(
                    "{} has decomposition {} but sharp = {}",
                    ctx.name(x),
                    d.display(ctx.e),
                    ctx.profile.is_sharp(x)
                ),
            );
        }
    }
    Ok(())
}

fn check_t24(ctx: &Context<'_>) -> Check {
    let e = ctx.e;
    for &a in ctx.atoms() {
        for &b in ctx.atoms() {
            let (na, nb) = (ctx.ord(a), ctx.ord(b));
            for k in 1..=na {
                let ka = ctx.multiple(a, k);
                for l in 1..=nb {
                    let lb = ctx.multiple(b, l);
                    if !e.leq(ka, lb) || a == b {
                        continue;
                    }
                    let witnesses = vec![a, b];
                    if l < nb {
                        return fail(
                            witnesses,
                            format!(
                                "{k}·{} ≤ {l}·{} with {l} < ord but the atoms differ",
                                ctx.name(a),
                                ctx.name(b)
                            ),
                        );
                    }
                    let incompatible = compatible(e, a, b) == Ok(false);
                    let tops_ordered = e.leq(ctx.multiple(a, na), ctx.multiple(b, nb));
                    if !(incompatible && tops_ordered) {
                        return fail(
                            witnesses,
                            format!(
                                "{k}·{} ≤ {l}·{} = n_b·b but the atoms are not incompatible with n_a·a ≤ n_b·b",
                                ctx.name(a),
                                ctx.name(b)
                            ),
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

/// Checked in the one-sided form: a family whose multiplicities all differ
/// from the isotropic index shares its sum with no other family at all.
/// On lattices this follows from the two-sided statement together with the
/// full/partial split.
fn check_t26(ctx: &Context<'_>) -> Check {
    let mut by_sum: BTreeMap<ElementId, Vec<&Family>> = BTreeMap::new();
    for f in &ctx.families {
        by_sum.entry(f.sum).or_default().push(f);
    }
    for (&sum, families) in &by_sum {
        for partial in families.iter().filter(|f| ctx.all_partial(&f.parts)) {
            if let Some(other) = families.iter().find(|g| g.parts != partial.parts) {
                let mut witnesses = vec![sum];
                witnesses.extend(partial.parts.iter().map(|p| p.atom).take(1));
                witnesses.extend(
                    other
                        .parts
                        .iter()
                        .map(|p| p.atom)
                        .find(|a| !witnesses.contains(a)),
                );
                return fail(
                    witnesses,
                    format!(
                        "{} and {} both sum to {}",
                        ctx.show_parts(&partial.parts),
                        ctx.show_parts(&other.parts),
                        ctx.name(sum)
                    ),
                );
            }
        }
    }
    Ok(())
}

fn check_t34(ctx: &Context<'_>) -> Check {
    let e = ctx.e;
    for x in ctx.nonzero() {
        let d = ctx.basic(x)?;
        let meager_sum = d.meager_parts.sum(e);
        let valid = ctx.profile.is_sharp(d.sharp_part)
            && d.total(e) == Some(x)
            && meager_sum.is_some_and(|m| ctx.profile.is_meager(m))
            && ctx.all_partial(&d.meager_parts.parts);
        if !valid {
            return fail(
                vec![x, d.sharp_part],
                format!(
                    "{} = {} ⊕ {} is not a basic decomposition",
                    ctx.name(x),
                    ctx.name(d.sharp_part),
                    d.meager_parts.display(e)
                ),
            );
        }
        for &v in &ctx.profile.sharp {
            for f in ctx.families.iter().filter(|f| ctx.all_partial(&f.parts)) {
                if e.partial_sum(v, f.sum) == Some(x)
                    && (v != d.sharp_part || f.parts != d.meager_parts.parts)
                {
                    return fail(
                        vec![x, v, d.sharp_part],
                        format!(
                            "{} = {} ⊕ {} and also {} ⊕ {}",
                            ctx.name(x),
                            ctx.name(d.sharp_part),
                            d.meager_parts.display(e),
                            ctx.name(v),
                            ctx.show_parts(&f.parts)
                        ),
                    );
                }
            }
        }
    }
    Ok(())
}

fn check_t35(ctx: &Context<'_>) -> Check {
    for &a in ctx.atoms() {
        let top = ctx.multiple(a, ctx.ord(a));
        let cover = ctx.profile.sharp_bounds(a).cover;
        if cover != Some(top) {
            return fail(
                vec![a, top],
                format!(
                    "smallest sharp element above {} is {} rather than {}",
                    ctx.name(a),
                    cover.map_or("none", |c| ctx.name(c)),
                    ctx.name(top)
                ),
            );
        }
    }
    Ok(())
}

fn check_t41(ctx: &Context<'_>) -> Check {
    let e = ctx.e;
    for f in &ctx.families {
        let x = f.sum;
        let d = AtomicDecomposition::new(f.parts.clone(), true);
        let split = split_atomic_decomposition(e, &d).map_err(|err| Failure {
            witnesses: vec![x],
            detail: err.to_string(),
        })?;
        let kernel = ctx.profile.sharp_bounds(x).kernel;
        let (full, partial) = (split.full.sum(e), split.partial.sum(e));
        let ok = full.is_some()
            && full == kernel
            && partial.is_some_and(|p| ctx.profile.is_meager(p))
            && full.zip(partial).and_then(|(u, v)| e.partial_sum(u, v)) == Some(x);
        if !ok {
            return fail(
                vec![x],
                format!(
                    "splitting {} does not give the basic decomposition of {}",
                    d.display(e),
                    ctx.name(x)
                ),
            );
        }
    }
    Ok(())
}

fn check_t42(ctx: &Context<'_>) -> Check {
    let e = ctx.e;
    let sub = sharp_subalgebra(e).map_err(|err| Failure {
        witnesses: Vec::new(),
        detail: format!("S(E) cannot be extracted: {err}"),
    })?;
    for omega in extreme_states(&sub.algebra) {
        let values = match ctx.mode {
            Mode::Standard => smear_state(e, &sub, &omega).map(|s| s.into_values()),
            Mode::Counterexample => smear_values_unchecked(e, &sub, omega.values()),
        }
        .map_err(|err| Failure {
            witnesses: Vec::new(),
            detail: format!("smearing failed: {err}"),
        })?;
        let report = verify_state(e, &values);
        if let Some(v) = report.violations.first() {
            return fail(
                Vec::new(),
                format!("smeared map is not a state: {}", v.describe(e, &values)),
            );
        }
        let smeared = crate::state::State::new(e, values).expect("verified above");
        if restrict(&sub, &smeared) != omega {
            return fail(Vec::new(), "smeared state does not restrict to ω on S(E)");
        }
    }
    Ok(())
}

fn check_se_subalgebra(ctx: &Context<'_>) -> Check {
    let e = ctx.e;
    for &x in &ctx.profile.sharp {
        let xs = e.supplement(x);
        if !ctx.profile.is_sharp(xs) {
            return fail(
                vec![x, xs],
                format!("{}′ = {} is not sharp", ctx.name(x), ctx.name(xs)),
            );
        }
    }
    sub_effect_algebra(e, &ctx.profile.sharp)
        .map(|_| ())
        .map_err(|err| Failure {
            witnesses: Vec::new(),
            detail: err.to_string(),
        })
}

fn check_se_full_sublattice(ctx: &Context<'_>) -> Check {
    for &x in &ctx.profile.sharp {
        for &y in &ctx.profile.sharp {
            for z in [ctx.meet(x, y)?, ctx.join(x, y)?] {
                if !ctx.profile.is_sharp(z) {
                    return fail(
                        vec![x, y, z],
                        format!(
                            "{} is a bound of sharp {} and {} but not sharp",
                            ctx.name(z),
                            ctx.name(x),
                            ctx.name(y)
                        ),
                    );
                }
            }
        }
    }
    Ok(())
}

fn check_product_closure(ctx: &Context<'_>) -> Check {
    let factors = [
        ("2^1", boolean_algebra(1).expect("2^1")),
        ("C_2", mv_chain(2).expect("C_2")),
    ];
    for (label, factor) in factors {
        let p = direct_product(ctx.e, &factor).map_err(|err| Failure {
            witnesses: Vec::new(),
            detail: err.to_string(),
        })?;
        let flags = p.profile().flags;
        let mut missing = Vec::new();
        if !p.is_lattice() {
            missing.push("lattice");
        }
        if !flags.atomic {
            missing.push("atomic");
        }
        if !flags.archimedean {
            missing.push("Archimedean");
        }
        if !flags.sharply_dominating {
            missing.push("sharply dominating");
        }
        if !missing.is_empty() {
            return fail(
                Vec::new(),
                format!("product with {label} is not {}", missing.join(", ")),
            );
        }
    }
    Ok(())
}
