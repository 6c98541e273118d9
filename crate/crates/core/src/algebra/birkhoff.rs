//! Finite posets, their downset lattices, and the representation of a
//! finite frame as the downsets of its join-irreducible elements.
//!
//! Every finite frame is a finite distributive lattice, so it is isomorphic
//! to the lattice of down-closed subsets of its poset of join-irreducibles.
//! That representation is what makes frame coproducts computable here (as
//! downsets of a product poset) and gives a cheap generator of random
//! frames (downsets of a random poset).

use super::{Elem, FiniteAlgebra, Hom, Variety};
use crate::budget::Budget;
use crate::error::Error;
use std::sync::Arc;

/// A finite partial order on named elements. Capped at 64 elements so that
/// subsets fit in a `u64` bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    le: Vec<bool>,
}

impl Poset {
    /// Build from a full relation table, checking the order axioms.
    pub fn new(names: Vec<String>, le: Vec<bool>) -> Result<Poset, Error> {
        let n = names.len();
        if le.len() != n * n {
            return Err(Error::Invalid(format!(
                "order table has {} entries for {} elements",
                le.len(),
                n
            )));
        }
        if n > 64 {
            return Err(Error::BudgetExceeded {
                what: "poset width (u64 masks)",
                needed: n as u64,
                cap: 64,
            });
        }
        let at = |a: usize, b: usize| le[a * n + b];
        for a in 0..n {
            if !at(a, a) {
                return Err(Error::NotAPartialOrder {
                    law: "reflexivity",
                    a: names[a].clone(),
                    b: names[a].clone(),
                    c: String::new(),
                });
            }
            for b in 0..n {
                if a != b && at(a, b) && at(b, a) {
                    return Err(Error::NotAPartialOrder {
                        law: "antisymmetry",
                        a: names[a].clone(),
                        b: names[b].clone(),
                        c: String::new(),
                    });
                }
                for c in 0..n {
                    if at(a, b) && at(b, c) && !at(a, c) {
                        return Err(Error::NotAPartialOrder {
                            law: "transitivity",
                            a: names[a].clone(),
                            b: names[b].clone(),
                            c: names[c].clone(),
                        });
                    }
                }
            }
        }
        Ok(Poset { names, le })
    }

    /// Build from a generating relation: the reflexive-transitive closure of
    /// `pairs` is taken first, then antisymmetry is checked.
    pub fn from_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset, Error> {
        let n = names.len();
        let mut le = vec![false; n * n];
        for a in 0..n {
            le[a * n + a] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("pair ({a},{b}) out of range")));
            }
            le[a * n + b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if le[a * n + k] {
                    for b in 0..n {
                        if le[k * n + b] {
                            le[a * n + b] = true;
                        }
                    }
                }
            }
        }
        Poset::new(names, le)
    }

    /// The chain `p0 < p1 < ... < p{n-1}`.
    pub fn chain(n: usize) -> Poset {
        let names = (0..n).map(|i| format!("p{i}")).collect();
        let le = (0..n)
            .flat_map(|a| (0..n).map(move |b| a <= b))
            .collect();
        Poset { names, le }
    }

    /// The discrete order on `n` elements.
    pub fn antichain(n: usize) -> Poset {
        let names = (0..n).map(|i| format!("p{i}")).collect();
        let le = (0..n)
            .flat_map(|a| (0..n).map(move |b| a == b))
            .collect();
        Poset { names, le }
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.n() + b]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Bitmask of `{ b : b <= a }`.
    pub fn below_mask(&self, a: usize) -> u64 {
        (0..self.n())
            .filter(|&b| self.le(b, a))
            .fold(0u64, |m, b| m | (1 << b))
    }

    /// Componentwise order on tuples, coded with the leftmost factor most
    /// significant (the same mixed-radix convention as product algebras).
    /// The empty product is the one-element poset named `()`.
    pub fn product_of(factors: &[&Poset]) -> Result<Poset, Error> {
        let mut size: u64 = 1;
        for f in factors {
            size = size.saturating_mul(f.n() as u64);
        }
        if size > 64 {
            return Err(Error::BudgetExceeded {
                what: "poset product width (u64 masks)",
                needed: size,
                cap: 64,
            });
        }
        let n = size as usize;
        let k = factors.len();
        let mut strides = vec![1usize; k];
        for i in (0..k.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1].n();
        }
        let digit = |e: usize, i: usize| e / strides[i] % factors[i].n();
        let names = (0..n)
            .map(|e| {
                let parts: Vec<&str> = (0..k).map(|i| factors[i].name(digit(e, i))).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let le = (0..n)
            .flat_map(|a| {
                (0..n).map(move |b| (0..k).all(|i| factors[i].le(digit(a, i), digit(b, i))))
            })
            .collect();
        Ok(Poset { names, le })
    }

    /// A linear extension (topological order), smallest original index first
    /// among available elements, so it is deterministic.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.n();
        let mut placed = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let next = (0..n)
                .find(|&a| {
                    !placed[a] && (0..n).all(|b| placed[b] || b == a || !self.le(b, a))
                })
                .expect("a finite poset always has a minimal element");
            placed[next] = true;
            out.push(next);
        }
        out
    }
}

/// Enumerate every down-closed subset of `p` as a `u64` bitmask over the
/// original element indices, sorted ascending. Fails with a budget error if
/// there are more than `cap` downsets.
pub fn downsets(p: &Poset, cap: usize) -> Result<Vec<u64>, Error> {
    let order = p.linear_extension();
    let strict_below: Vec<u64> = (0..p.n())
        .map(|a| p.below_mask(a) & !(1u64 << a))
        .collect();
    let mut out: Vec<u64> = Vec::new();
    // Depth-first over include/exclude decisions in linear-extension order.
    // An element may be included only when everything strictly below it
    // already is, which yields every downset exactly once.
    let mut stack: Vec<(usize, u64)> = vec![(0, 0)];
    while let Some((depth, mask)) = stack.pop() {
        if depth == order.len() {
            if out.len() >= cap {
                return Err(Error::BudgetExceeded {
                    what: "downset enumeration",
                    needed: out.len() as u64 + 1,
                    cap: cap as u64,
                });
            }
            out.push(mask);
            continue;
        }
        let x = order[depth];
        if strict_below[x] & !mask == 0 {
            stack.push((depth + 1, mask | (1u64 << x)));
        }
        stack.push((depth + 1, mask));
    }
    out.sort_unstable();
    Ok(out)
}

/// The poset of join-irreducible elements of a finite lattice: those `a`
/// whose set of strictly smaller elements has a join other than `a` itself
/// — equivalently, `a` is not the bottom and is not a join of smaller
/// elements. Returns the induced poset and the map from poset index back to
/// the lattice element.
pub fn join_irreducibles(f: &FiniteAlgebra) -> (Poset, Vec<Elem>) {
    let irr: Vec<Elem> = f
        .elems()
        .filter(|&a| {
            let below = f.elems().filter(|&b| b != a && f.le(b, a));
            f.join_all(below) != a
        })
        .collect();
    let names = irr.iter().map(|&a| f.name(a).to_string()).collect();
    let le = irr
        .iter()
        .flat_map(|&a| irr.iter().map(move |&b| f.le(a, b)))
        .collect();
    let poset = Poset { names, le };
    (poset, irr)
}

/// The frame of downsets of a poset, remembering the coding.
#[derive(Debug, Clone)]
pub struct DownsetFrame {
    pub algebra: Arc<FiniteAlgebra>,
    pub poset: Poset,
    /// Sorted bitmasks; `masks[e.i()]` is the downset coded by element `e`.
    pub masks: Vec<u64>,
}

impl DownsetFrame {
    /// The element coding `mask`, if it is one of the downsets.
    pub fn index_of_mask(&self, mask: u64) -> Option<Elem> {
        self.masks
            .binary_search(&mask)
            .ok()
            .map(|i| Elem(i as u32))
    }

    /// The principal downset of poset element `j`.
    pub fn principal(&self, j: usize) -> Elem {
        self.index_of_mask(self.poset.below_mask(j))
            .expect("principal downsets are downsets")
    }
}

/// Materialize the downset frame of `p`.
pub fn downset_frame(p: &Poset, budget: &Budget) -> Result<DownsetFrame, Error> {
    let masks = downsets(p, budget.max_carrier)?;
    let n = masks.len();
    let names: Vec<String> = masks
        .iter()
        .map(|&m| {
            let parts: Vec<&str> = (0..p.n()).filter(|&j| m >> j & 1 == 1).map(|j| p.name(j)).collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    let mut le = vec![false; n * n];
    let mut join = vec![0u32; n * n];
    let mut meet = vec![0u32; n * n];
    let find = |m: u64| -> u32 {
        masks
            .binary_search(&m)
            .expect("downsets are closed under union and intersection") as u32
    };
    for a in 0..n {
        for b in 0..n {
            le[a * n + b] = masks[a] & !masks[b] == 0;
            join[a * n + b] = find(masks[a] | masks[b]);
            meet[a * n + b] = find(masks[a] & masks[b]);
        }
    }
    let bottom = Elem(find(0));
    let top = Elem(find(masks[n - 1])); // masks are sorted; the full set is the largest value
    debug_assert_eq!(masks[top.i()].count_ones() as usize, p.n());
    let algebra = FiniteAlgebra::assemble(
        Variety::Frame,
        names,
        le,
        join,
        meet,
        Some(bottom),
        Some(top),
        None,
        None,
        None,
    );
    Ok(DownsetFrame {
        algebra,
        poset: p.clone(),
        masks,
    })
}

/// The representation isomorphism of a finite frame: `a` goes to the
/// downset of join-irreducibles below `a`. Returns the downset frame and
/// the isomorphism into it.
pub fn birkhoff_iso(f: &Arc<FiniteAlgebra>, budget: &Budget) -> Result<(DownsetFrame, Hom), Error> {
    debug_assert_eq!(f.variety(), Variety::Frame);
    let (poset, irr) = join_irreducibles(f);
    let frame = downset_frame(&poset, budget)?;
    let map: Vec<Elem> = f
        .elems()
        .map(|a| {
            let mask = irr
                .iter()
                .enumerate()
                .filter(|&(_, &j)| f.le(j, a))
                .fold(0u64, |m, (i, _)| m | (1 << i));
            frame.index_of_mask(mask).ok_or(Error::Mismatch(format!(
                "image of {} is not down-closed",
                f.name(a)
            )))
        })
        .collect::<Result<_, _>>()?;
    let hom = Hom::new(Arc::clone(f), Arc::clone(&frame.algebra), map);
    if !hom.is_bijective() {
        return Err(Error::Mismatch(
            "frame is not isomorphic to the downsets of its join-irreducibles".into(),
        ));
    }
    debug_assert!(super::is_homomorphism(&hom).is_ok());
    Ok((frame, hom))
}
