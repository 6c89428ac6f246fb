//! Generators for standard finite effect algebras and the shipped
//! counterexample fixtures.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{build_effect_algebra, AlgebraError, EffectAlgebra, ElementId, SumTable};
use crate::eaf::parse_eaf;

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("Boolean algebra 2^{0} is outside the supported range 1..=6")]
    SizeLimit(u32),
    #[error("chain length must be at least 1")]
    EmptyChain,
    #[error("block {0} of a horizontal sum has fewer than 3 elements")]
    DegenerateBlock(usize),
    #[error("horizontal sum of zero blocks")]
    NoBlocks,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn multiple_name(k: u32, generator: &str) -> String {
    if k == 1 {
        generator.to_string()
    } else {
        format!("{k}{generator}")
    }
}

/// The Łukasiewicz chain `{0, a, 2a, …, na = 1}`.
pub fn mv_chain(n: u32) -> Result<EffectAlgebra, ConstructionError> {
    mv_chain_with_generator(n, "a")
}

/// [`mv_chain`] with a chosen name for the generator.
pub fn mv_chain_with_generator(
    n: u32,
    generator: &str,
) -> Result<EffectAlgebra, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::EmptyChain);
    }
    let size = n as usize + 1;
    let mut table = SumTable::new(size, ElementId::new(0), ElementId::new(n as usize))?;
    for k in 0..=n {
        for l in 0..=(n - k) {
            table.declare(
                ElementId::new(k as usize),
                ElementId::new(l as usize),
                ElementId::new((k + l) as usize),
            )?;
        }
    }
    let names = (0..=n)
        .map(|k| match k {
            0 => "0".to_string(),
            k if k == n => "1".to_string(),
            k => multiple_name(k, generator),
        })
        .collect();
    Ok(EffectAlgebra::from_table(names, table)?)
}

const ATOM_LETTERS: &[u8] = b"pqrstu";

/// Subsets of a `k`-element set with disjoint union.
pub fn boolean_algebra(k: u32) -> Result<EffectAlgebra, ConstructionError> {
    if !(1..=ATOM_LETTERS.len() as u32).contains(&k) {
        return Err(ConstructionError::SizeLimit(k));
    }
    let size = 1usize << k;
    let full = size - 1;
    let mut table = SumTable::new(size, ElementId::new(0), ElementId::new(full))?;
    for x in 0..size {
        for y in 0..size {
            if x & y == 0 {
                table.declare(ElementId::new(x), ElementId::new(y), ElementId::new(x | y))?;
            }
        }
    }
    let names = (0..size)
        .map(|mask| match mask {
            0 => "0".to_string(),
            m if m == full => "1".to_string(),
            m => (0..k as usize)
                .filter(|bit| m & (1 << bit) != 0)
                .map(|bit| ATOM_LETTERS[bit] as char)
                .collect(),
        })
        .collect();
    Ok(EffectAlgebra::from_table(names, table)?)
}

/// Glue algebras along their common 0 and 1; sums exist only inside one
/// block. Element names that collide across blocks get an `@block` suffix.
pub fn horizontal_sum(parts: &[EffectAlgebra]) -> Result<EffectAlgebra, ConstructionError> {
    match parts {
        [] => return Err(ConstructionError::NoBlocks),
        [single] => return Ok(single.clone()),
        _ => {}
    }
    if let Some(i) = parts.iter().position(|p| p.size() < 3) {
        return Err(ConstructionError::DegenerateBlock(i));
    }
    let interior = |p: &EffectAlgebra| {
        p.elements()
            .filter(|&x| x != p.zero() && x != p.one())
            .collect::<Vec<_>>()
    };
    let interior_count: usize = parts.iter().map(|p| interior(p).len()).sum();
    let size = interior_count + 2;
    let (zero, one) = (ElementId::new(0), ElementId::new(size - 1));

    // Per block: local element -> glued element.
    let mut maps: Vec<Vec<ElementId>> = Vec::with_capacity(parts.len());
    let mut raw_names: Vec<(String, usize)> = Vec::with_capacity(interior_count);
    let mut next = 1;
    for (block, p) in parts.iter().enumerate() {
        let mut map = vec![zero; p.size()];
        map[p.one().index()] = one;
        for x in interior(p) {
            map[x.index()] = ElementId::new(next);
            raw_names.push((p.name(x).to_string(), block));
            next += 1;
        }
        maps.push(map);
    }

    let mut table = SumTable::new(size, zero, one)?;
    for (p, map) in parts.iter().zip(&maps) {
        for x in p.elements() {
            for y in p.elements() {
                if let Some(z) = p.partial_sum(x, y) {
                    table.declare(map[x.index()], map[y.index()], map[z.index()])?;
                }
            }
        }
    }

    let clashes = |name: &str| {
        name == "0" || name == "1" || raw_names.iter().filter(|(n, _)| n == name).count() > 1
    };
    let mut names = Vec::with_capacity(size);
    names.push("0".to_string());
    for (name, block) in &raw_names {
        if clashes(name) {
            names.push(format!("{name}@{block}"));
        } else {
            names.push(name.clone());
        }
    }
    names.push("1".to_string());
    Ok(EffectAlgebra::from_table(names, table)?)
}

/// Componentwise sums; `(x1, x2) ⊕ (y1, y2)` exists iff both components do.
pub fn direct_product(
    left: &EffectAlgebra,
    right: &EffectAlgebra,
) -> Result<EffectAlgebra, ConstructionError> {
    let m = right.size();
    let pair = |x: ElementId, y: ElementId| ElementId::new(x.index() * m + y.index());
    let size = left.size() * m;
    let mut table = SumTable::new(
        size,
        pair(left.zero(), right.zero()),
        pair(left.one(), right.one()),
    )?;
    for x1 in left.elements() {
        for y1 in left.elements() {
            let Some(z1) = left.partial_sum(x1, y1) else {
                continue;
            };
            for x2 in right.elements() {
                for y2 in right.elements() {
                    if let Some(z2) = right.partial_sum(x2, y2) {
                        table.declare(pair(x1, x2), pair(y1, y2), pair(z1, z2))?;
                    }
                }
            }
        }
    }
    let names = left
        .elements()
        .flat_map(|x| right.elements().map(move |y| (x, y)))
        .map(|(x, y)| format!("({},{})", left.name(x), right.name(y)))
        .collect();
    Ok(EffectAlgebra::from_table(names, table)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixtureName {
    Example25,
    Example37,
    Example44,
}

impl FixtureName {
    pub const ALL: [FixtureName; 3] = [
        FixtureName::Example25,
        FixtureName::Example37,
        FixtureName::Example44,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FixtureName::Example25 => "example-2.5",
            FixtureName::Example37 => "example-3.7",
            FixtureName::Example44 => "example-4.4",
        }
    }

    /// Shipped EAF source. Examples 2.5 and 3.7 describe the same table and
    /// share one file.
    pub fn source(self) -> &'static str {
        match self {
            FixtureName::Example25 | FixtureName::Example37 => {
                include_str!("../../../data/example-2.5.eaf")
            }
            FixtureName::Example44 => include_str!("../../../data/example-4.4.eaf"),
        }
    }
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error)]
#[error("unknown fixture `{0}` (expected example-2.5, example-3.7 or example-4.4)")]
pub struct UnknownFixture(pub String);

impl FromStr for FixtureName {
    type Err = UnknownFixture;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FixtureName::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| UnknownFixture(s.to_string()))
    }
}

pub fn paper_fixture(name: FixtureName) -> EffectAlgebra {
    let doc = parse_eaf(name.source()).expect("shipped fixture parses");
    build_effect_algebra(&doc).expect("shipped fixture is an effect algebra")
}
