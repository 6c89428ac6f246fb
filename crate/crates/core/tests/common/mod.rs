//! Test corpus and brute-force oracles. The oracles only read the partial
//! sum table and recompute everything else from first principles.
#![allow(dead_code)]

use std::collections::BTreeMap;

use effect_algebra::rational::ratio;
use effect_algebra::{
    boolean_algebra, direct_product, horizontal_sum, mv_chain, mv_chain_with_generator,
    EffectAlgebra, ElementId, Rational, SumTable,
};

pub struct Entry {
    pub label: String,
    pub algebra: EffectAlgebra,
}

fn chain(n: u32, generator: &str) -> EffectAlgebra {
    mv_chain_with_generator(n, generator).unwrap()
}

/// MV chains C_1..C_8, Boolean algebras 2^1..2^4, horizontal sums of every
/// multiset of two or three chains from {C_2, C_3, C_4}, and every ordered
/// product of two algebras from {2^1, 2^2, C_2, C_3}.
pub fn corpus() -> Vec<Entry> {
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push(Entry {
            label: format!("C_{n}"),
            algebra: mv_chain(n).unwrap(),
        });
    }
    for k in 1..=4 {
        out.push(Entry {
            label: format!("2^{k}"),
            algebra: boolean_algebra(k).unwrap(),
        });
    }
    let letters = ["a", "b", "c"];
    for size in 2..=3usize {
        for combo in multisets(&[2, 3, 4], size) {
            let parts: Vec<EffectAlgebra> = combo
                .iter()
                .zip(letters)
                .map(|(&n, g)| chain(n, g))
                .collect();
            let label = combo
                .iter()
                .map(|n| format!("C_{n}"))
                .collect::<Vec<_>>()
                .join(" ⊞ ");
            out.push(Entry {
                label,
                algebra: horizontal_sum(&parts).unwrap(),
            });
        }
    }
    let factors: Vec<(&str, EffectAlgebra)> = vec![
        ("2^1", boolean_algebra(1).unwrap()),
        ("2^2", boolean_algebra(2).unwrap()),
        ("C_2", mv_chain(2).unwrap()),
        ("C_3", chain(3, "c")),
    ];
    for (l, left) in &factors {
        for (r, right) in &factors {
            out.push(Entry {
                label: format!("{l} × {r}"),
                algebra: direct_product(left, right).unwrap(),
            });
        }
    }
    out
}

fn multisets(items: &[u32], size: usize) -> Vec<Vec<u32>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in multisets(&items[i..], size - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

pub fn sum(e: &EffectAlgebra, x: ElementId, y: ElementId) -> Option<ElementId> {
    e.table().get(x, y)
}

pub fn leq(e: &EffectAlgebra, x: ElementId, y: ElementId) -> bool {
    e.elements().any(|c| sum(e, x, c) == Some(y))
}

pub fn supplement(e: &EffectAlgebra, x: ElementId) -> ElementId {
    let found: Vec<ElementId> = e
        .elements()
        .filter(|&y| sum(e, x, y) == Some(e.one()))
        .collect();
    assert_eq!(found.len(), 1);
    found[0]
}

fn extremum(e: &EffectAlgebra, candidates: &[ElementId], below: bool) -> Option<ElementId> {
    candidates.iter().copied().find(|&m| {
        candidates
            .iter()
            .all(|&c| if below { leq(e, c, m) } else { leq(e, m, c) })
    })
}

pub fn meet(e: &EffectAlgebra, x: ElementId, y: ElementId) -> Option<ElementId> {
    let lower: Vec<ElementId> = e
        .elements()
        .filter(|&z| leq(e, z, x) && leq(e, z, y))
        .collect();
    extremum(e, &lower, true)
}

pub fn join(e: &EffectAlgebra, x: ElementId, y: ElementId) -> Option<ElementId> {
    let upper: Vec<ElementId> = e
        .elements()
        .filter(|&z| leq(e, x, z) && leq(e, y, z))
        .collect();
    extremum(e, &upper, false)
}

pub fn is_lattice(e: &EffectAlgebra) -> bool {
    e.elements().all(|x| {
        e.elements()
            .all(|y| meet(e, x, y).is_some() && join(e, x, y).is_some())
    })
}

pub fn is_sharp(e: &EffectAlgebra, x: ElementId) -> bool {
    let xs = supplement(e, x);
    e.elements()
        .filter(|&z| leq(e, z, x) && leq(e, z, xs))
        .all(|z| z == e.zero())
}

pub fn sharp(e: &EffectAlgebra) -> Vec<ElementId> {
    e.elements().filter(|&x| is_sharp(e, x)).collect()
}

pub fn atoms(e: &EffectAlgebra) -> Vec<ElementId> {
    e.elements()
        .filter(|&a| a != e.zero())
        .filter(|&a| {
            e.elements()
                .all(|z| z == e.zero() || z == a || !leq(e, z, a))
        })
        .collect()
}

pub fn ord(e: &EffectAlgebra, a: ElementId) -> u32 {
    let mut k = 1;
    let mut acc = a;
    while let Some(next) = sum(e, acc, a) {
        acc = next;
        k += 1;
        assert!(k as usize <= e.size(), "unbounded multiples");
    }
    k
}

pub fn multiple(e: &EffectAlgebra, a: ElementId, k: u32) -> Option<ElementId> {
    let mut acc = e.zero();
    for _ in 0..k {
        acc = sum(e, acc, a)?;
    }
    Some(acc)
}

pub fn is_atomic(e: &EffectAlgebra) -> bool {
    let atoms = atoms(e);
    e.elements()
        .filter(|&x| x != e.zero())
        .all(|x| atoms.iter().any(|&a| leq(e, a, x)))
}

pub fn is_sharply_dominating(e: &EffectAlgebra) -> bool {
    let s = sharp(e);
    e.elements().all(|x| {
        let above: Vec<ElementId> = s.iter().copied().filter(|&p| leq(e, x, p)).collect();
        extremum(e, &above, false).is_some()
    })
}

/// A decomposition `x = v ⊕ (⊕ k·a)`, parts sorted by atom.
pub type Decomposition = (ElementId, Vec<(ElementId, u32)>);

/// Every sharp `v` and every family of distinct atoms with multiplicities
/// `1 ≤ k < ord(a)` whose sum with `v` is `x`.
pub fn all_basic_decompositions(e: &EffectAlgebra, x: ElementId) -> Vec<Decomposition> {
    let atoms = atoms(e);
    let ords: Vec<u32> = atoms.iter().map(|&a| ord(e, a)).collect();
    let mut families: Vec<(Vec<(ElementId, u32)>, ElementId)> = vec![(Vec::new(), e.zero())];
    for (&a, &n) in atoms.iter().zip(&ords) {
        let mut next = Vec::new();
        for (parts, total) in &families {
            next.push((parts.clone(), *total));
            for k in 1..n {
                let ka = multiple(e, a, k).unwrap();
                if let Some(t) = sum(e, *total, ka) {
                    let mut p = parts.clone();
                    p.push((a, k));
                    next.push((p, t));
                }
            }
        }
        families = next;
    }
    let mut out = Vec::new();
    for v in sharp(e) {
        for (parts, total) in &families {
            if sum(e, v, *total) == Some(x) {
                out.push((v, parts.clone()));
            }
        }
    }
    out
}

/// Independent check of the state conditions.
pub fn is_state(e: &EffectAlgebra, values: &[Rational]) -> bool {
    let zero = ratio(0, 1);
    let one = ratio(1, 1);
    values.len() == e.size()
        && values.iter().all(|v| *v >= zero && *v <= one)
        && values[e.one().index()] == one
        && e.elements().all(|x| {
            e.elements().all(|y| match sum(e, x, y) {
                Some(z) => &values[x.index()] + &values[y.index()] == values[z.index()],
                None => true,
            })
        })
}

/// Brute-force axiom check on a raw table.
pub fn table_is_effect_algebra(t: &SumTable) -> bool {
    let els: Vec<ElementId> = t.elements().collect();
    let (zero, one) = (t.zero(), t.one());
    let closure = els.iter().all(|&x| t.get(zero, x) == Some(x));
    let commutative = els
        .iter()
        .all(|&x| els.iter().all(|&y| t.get(x, y) == t.get(y, x)));
    let associative = els.iter().all(|&x| {
        els.iter().all(|&y| {
            els.iter().all(|&z| {
                let Some(xy) = t.get(x, y) else { return true };
                let Some(xyz) = t.get(xy, z) else { return true };
                t.get(y, z).and_then(|yz| t.get(x, yz)) == Some(xyz)
            })
        })
    });
    let supplements = els
        .iter()
        .all(|&x| els.iter().filter(|&&y| t.get(x, y) == Some(one)).count() == 1);
    let bounded = els.iter().all(|&x| x == zero || t.get(one, x).is_none());
    closure && commutative && associative && supplements && bounded
}

/// Close a set of generating sums under commutativity and the rule
/// `x ⊕ y = u, u ⊕ z = w, y ⊕ z = v ⇒ x ⊕ v = w`, adding `0 ⊕ x = x`.
/// Panics on a derivation that contradicts an earlier one.
pub fn associative_closure(
    names: &[&str],
    generators: &[(&str, &str, &str)],
) -> BTreeMap<(String, String), String> {
    let mut sums: BTreeMap<(String, String), String> = BTreeMap::new();
    let add = |sums: &mut BTreeMap<(String, String), String>, x: &str, y: &str, z: &str| {
        let mut changed = false;
        for key in [
            (x.to_string(), y.to_string()),
            (y.to_string(), x.to_string()),
        ] {
            match sums.get(&key) {
                Some(old) => assert_eq!(old, z, "contradiction at {key:?}"),
                None => {
                    sums.insert(key, z.to_string());
                    changed = true;
                }
            }
        }
        changed
    };
    for &n in names {
        add(&mut sums, "0", n, n);
    }
    for &(x, y, z) in generators {
        add(&mut sums, x, y, z);
    }
    loop {
        let snapshot = sums.clone();
        let mut changed = false;
        for ((x, y), u) in &snapshot {
            for ((u2, z), w) in snapshot.range((u.clone(), String::new())..) {
                if u2 != u {
                    break;
                }
                if let Some(v) = snapshot.get(&(y.clone(), z.clone())) {
                    changed |= add(&mut sums, x, v, w);
                }
            }
        }
        if !changed {
            return sums;
        }
    }
}
