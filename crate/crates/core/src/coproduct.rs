//! Finite coproducts in each variety, with their universal-property audit.
//!
//! The shape of the coproduct depends on the variety:
//!
//! * `set` — disjoint union;
//! * `supsl` — the product algebra (finite products and coproducts agree
//!   for join-semilattices with bottom), injecting by padding with bottoms;
//! * `frame` — downsets of the product of the factors' posets of
//!   join-irreducibles, injecting each `a` as the cylinder of tuples whose
//!   `i`-th coordinate lies below `a`;
//! * `cbalg` — the same construction, which for Boolean algebras is the
//!   powerset of the tuples of atoms, plus the complement table;
//! * `uquant` — not supported here (free products of quantales grow without
//!   a comparable finite coding), reported as such.
//!
//! The empty coproduct is the initial algebra of the variety: one element
//! for `supsl`, the two-chain for `frame`, the two-element Boolean algebra
//! for `cbalg`. The empty `set` coproduct would be the empty carrier, which
//! is not representable, and is refused.
//!
//! [`Coproduct::mediate`] computes the universal map out of a cocone, and
//! [`verify_universal`] brute-forces the universal property itself against
//! a chosen target: every cocone factors through exactly one homomorphism,
//! and every homomorphism out of the coproduct arises that way.

use crate::algebra::{
    downsets, is_homomorphism, join_irreducibles, product_algebras, same_algebra, Elem,
    FiniteAlgebra, Hom, Poset, ProductAlgebra, Variety,
};
use crate::budget::Budget;
use crate::error::Error;
use std::sync::Arc;

#[derive(Debug, Clone)]
enum Coding {
    /// Disjoint union; block `i` starts at `offsets[i]`.
    DisjointUnion { offsets: Vec<usize> },
    /// Product algebra with pad-with-bottom injections.
    Biproduct(ProductAlgebra),
    /// Downsets (as bitmasks over the product poset) of the product of the
    /// factors' join-irreducible posets.
    Downsets {
        masks: Vec<u64>,
        strides: Vec<usize>,
        sizes: Vec<usize>,
        /// `irr[i][j]`: the factor-`i` element behind poset digit `j`.
        irr: Vec<Vec<Elem>>,
    },
}

/// A computed coproduct: the algebra, the injections, and enough of the
/// coding to mediate cocones out of it.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub algebra: Arc<FiniteAlgebra>,
    pub factors: Vec<Arc<FiniteAlgebra>>,
    pub injections: Vec<Hom>,
    coding: Coding,
}

/// Compute the coproduct of `factors` in `variety`.
pub fn coproduct(
    variety: Variety,
    factors: &[Arc<FiniteAlgebra>],
    budget: &Budget,
) -> Result<Coproduct, Error> {
    for f in factors {
        if f.variety() != variety {
            return Err(Error::VarietyMismatch {
                expected: variety,
                got: f.variety(),
            });
        }
    }
    match variety {
        Variety::Set => coproduct_set(factors, budget),
        Variety::SupSl => coproduct_biproduct(factors, budget),
        Variety::Frame | Variety::CBAlg => coproduct_downsets(variety, factors, budget),
        Variety::UQuant => Err(Error::UnsupportedVariety {
            op: "coproduct",
            variety,
        }),
    }
}

fn coproduct_set(factors: &[Arc<FiniteAlgebra>], budget: &Budget) -> Result<Coproduct, Error> {
    if factors.is_empty() {
        return Err(Error::EmptyCarrier);
    }
    let total: u64 = factors.iter().map(|f| f.n() as u64).sum();
    budget.carrier("set coproduct", total)?;
    let mut names = Vec::with_capacity(total as usize);
    let mut offsets = Vec::with_capacity(factors.len());
    for (i, f) in factors.iter().enumerate() {
        offsets.push(names.len());
        names.extend(f.names().iter().map(|s| format!("{i}:{s}")));
    }
    let algebra = FiniteAlgebra::validate(Variety::Set, names, Vec::new(), None, None, budget)?;
    let injections = factors
        .iter()
        .enumerate()
        .map(|(i, f)| {
            Hom::new(
                Arc::clone(f),
                Arc::clone(&algebra),
                f.elems().map(|a| Elem((offsets[i] + a.i()) as u32)).collect(),
            )
        })
        .collect();
    Ok(Coproduct {
        algebra,
        factors: factors.to_vec(),
        injections,
        coding: Coding::DisjointUnion { offsets },
    })
}

fn coproduct_biproduct(
    factors: &[Arc<FiniteAlgebra>],
    budget: &Budget,
) -> Result<Coproduct, Error> {
    let product = product_algebras(Variety::SupSl, factors, budget)?;
    let algebra = Arc::clone(&product.algebra);
    let injections = factors
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let map = f
                .elems()
                .map(|a| {
                    let digits: Vec<Elem> = factors
                        .iter()
                        .enumerate()
                        .map(|(l, g)| if l == i { a } else { g.bottom() })
                        .collect();
                    product.index(&digits)
                })
                .collect();
            Hom::new(Arc::clone(f), Arc::clone(&algebra), map)
        })
        .collect::<Vec<_>>();
    for inj in &injections {
        is_homomorphism(inj)?;
    }
    Ok(Coproduct {
        algebra,
        factors: factors.to_vec(),
        injections,
        coding: Coding::Biproduct(product),
    })
}

fn coproduct_downsets(
    variety: Variety,
    factors: &[Arc<FiniteAlgebra>],
    budget: &Budget,
) -> Result<Coproduct, Error> {
    let mut irr = Vec::with_capacity(factors.len());
    let mut posets = Vec::with_capacity(factors.len());
    for f in factors {
        let (p, elems) = join_irreducibles(f);
        posets.push(p);
        irr.push(elems);
    }
    let refs: Vec<&Poset> = posets.iter().collect();
    let poset = Poset::product_of(&refs)?;
    let sizes: Vec<usize> = posets.iter().map(|p| p.n()).collect();
    let k = factors.len();
    let mut strides = vec![1usize; k];
    for i in (0..k.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * sizes[i + 1];
    }
    let masks = downsets(&poset, budget.max_carrier)?;
    let n = masks.len();
    let names: Vec<String> = masks
        .iter()
        .map(|&m| {
            let parts: Vec<&str> = (0..poset.n())
                .filter(|&j| m >> j & 1 == 1)
                .map(|j| poset.name(j))
                .collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    let find = |m: u64| -> u32 {
        masks
            .binary_search(&m)
            .expect("downsets are closed under the lattice operations") as u32
    };
    let mut le = vec![false; n * n];
    let mut join = vec![0u32; n * n];
    let mut meet = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            le[a * n + b] = masks[a] & !masks[b] == 0;
            join[a * n + b] = find(masks[a] | masks[b]);
            meet[a * n + b] = find(masks[a] & masks[b]);
        }
    }
    let full = masks[n - 1];
    let complement = (variety == Variety::CBAlg).then(|| {
        // The product of atom antichains is an antichain, so set complements
        // of downsets are again downsets.
        masks.iter().map(|&m| find(full & !m)).collect()
    });
    let algebra = FiniteAlgebra::assemble(
        variety,
        names,
        le,
        join,
        meet,
        Some(Elem(find(0))),
        Some(Elem(find(full))),
        complement,
        None,
        None,
    );
    let injections = factors
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let map = f
                .elems()
                .map(|a| {
                    let mask = (0..poset.n())
                        .filter(|&p| {
                            let j = p / strides[i] % sizes[i];
                            f.le(irr[i][j], a)
                        })
                        .fold(0u64, |m, p| m | (1 << p));
                    Elem(find(mask))
                })
                .collect();
            Hom::new(Arc::clone(f), Arc::clone(&algebra), map)
        })
        .collect::<Vec<_>>();
    for inj in &injections {
        is_homomorphism(inj)?;
    }
    Ok(Coproduct {
        algebra,
        factors: factors.to_vec(),
        injections,
        coding: Coding::Downsets {
            masks,
            strides,
            sizes,
            irr,
        },
    })
}

impl Coproduct {
    /// The universal map out of a cocone: the unique homomorphism `h` from
    /// the coproduct with `h ∘ injection_i = legs[i]` for every `i`. The
    /// legs must be homomorphisms from the factors, in order, into one
    /// common target; the cocone identities of the result are asserted.
    pub fn mediate(&self, legs: &[&Hom]) -> Result<Hom, Error> {
        if legs.len() != self.factors.len() {
            return Err(Error::Mismatch(format!(
                "cocone has {} legs for {} factors",
                legs.len(),
                self.factors.len()
            )));
        }
        for (i, leg) in legs.iter().enumerate() {
            if !same_algebra(&leg.source, &self.factors[i]) {
                return Err(Error::Mismatch(format!("leg {i} is not from factor {i}")));
            }
            is_homomorphism(leg)?;
        }
        let target = match legs.first() {
            Some(l) => Arc::clone(&l.target),
            None => {
                return self.mediate_from_initial();
            }
        };
        for (i, leg) in legs.iter().enumerate() {
            if !same_algebra(&leg.target, &target) {
                return Err(Error::Mismatch(format!("leg {i} targets a different algebra")));
            }
        }
        let map: Vec<Elem> = match &self.coding {
            Coding::DisjointUnion { offsets } => {
                let mut map = vec![Elem(0); self.algebra.n()];
                for (i, leg) in legs.iter().enumerate() {
                    for a in self.factors[i].elems() {
                        map[offsets[i] + a.i()] = leg.apply(a);
                    }
                }
                map
            }
            Coding::Biproduct(product) => self
                .algebra
                .elems()
                .map(|x| {
                    target.join_all(
                        legs.iter()
                            .enumerate()
                            .map(|(i, leg)| leg.apply(product.digit(x, i))),
                    )
                })
                .collect(),
            Coding::Downsets {
                masks,
                strides,
                sizes,
                irr,
            } => masks
                .iter()
                .map(|&m| {
                    target.join_all((0..64).filter(|&p| m >> p & 1 == 1).map(|p| {
                        target.meet_all(legs.iter().enumerate().map(|(i, leg)| {
                            let j = p / strides[i] % sizes[i];
                            leg.apply(irr[i][j])
                        }))
                    }))
                })
                .collect(),
        };
        let h = Hom::new(Arc::clone(&self.algebra), target, map);
        is_homomorphism(&h)?;
        for (i, leg) in legs.iter().enumerate() {
            let through = self.injections[i].then(&h)?;
            if through.map != leg.map {
                return Err(Error::Mismatch(format!(
                    "mediating map does not restrict to leg {i}"
                )));
            }
        }
        Ok(h)
    }

    /// The empty cocone has no target to read off; there is exactly one
    /// homomorphism out of an initial algebra only once a target is fixed,
    /// so an explicit target is required instead.
    fn mediate_from_initial(&self) -> Result<Hom, Error> {
        Err(Error::Mismatch(
            "an empty cocone does not determine a target; use mediate_into".into(),
        ))
    }

    /// The unique homomorphism out of an empty coproduct into `target`.
    pub fn mediate_into(&self, target: &Arc<FiniteAlgebra>) -> Result<Hom, Error> {
        if !self.factors.is_empty() {
            return Err(Error::Mismatch(
                "mediate_into is only for the empty coproduct".into(),
            ));
        }
        if target.variety() != self.algebra.variety() {
            return Err(Error::VarietyMismatch {
                expected: self.algebra.variety(),
                got: target.variety(),
            });
        }
        let map: Vec<Elem> = match &self.coding {
            Coding::Biproduct(_) => vec![target.bottom()],
            Coding::Downsets { masks, .. } => masks
                .iter()
                .map(|&m| if m == 0 { target.bottom() } else { target.top() })
                .collect(),
            Coding::DisjointUnion { .. } => unreachable!("empty set coproducts are refused"),
        };
        let h = Hom::new(Arc::clone(&self.algebra), Arc::clone(target), map);
        is_homomorphism(&h)?;
        Ok(h)
    }
}

/// Brute-force the universal property of `co` against every cocone into
/// `target`:
///
/// 1. every cocone mediates to a homomorphism that restricts to its legs;
/// 2. distinct cocones mediate to distinct homomorphisms;
/// 3. every homomorphism out of the coproduct is the mediator of the cocone
///    it induces — so mediation is a bijection between cocones and maps out.
///
/// Returns `(number of cocones, number of homomorphisms out)` — equal on
/// success.
pub fn verify_universal(
    co: &Coproduct,
    target: &Arc<FiniteAlgebra>,
    budget: &Budget,
) -> Result<(usize, usize), Error> {
    use crate::algebra::enumerate_homs;
    let per_factor: Vec<Vec<Hom>> = co
        .factors
        .iter()
        .map(|f| enumerate_homs(f, target, budget))
        .collect::<Result<_, _>>()?;
    let out_homs = enumerate_homs(&co.algebra, target, budget)?;

    let mut cocones: u64 = 1;
    for legs in &per_factor {
        cocones = cocones.saturating_mul(legs.len() as u64);
    }
    if cocones > budget.max_homs as u64 {
        return Err(Error::BudgetExceeded {
            what: "cocones in universal-property audit",
            needed: cocones,
            cap: budget.max_homs as u64,
        });
    }

    let mut seen: Vec<Vec<Elem>> = Vec::with_capacity(cocones as usize);
    let mut index = vec![0usize; per_factor.len()];
    let mut exhausted = cocones == 0;
    while !exhausted {
        let legs: Vec<&Hom> = index.iter().zip(&per_factor).map(|(&i, v)| &v[i]).collect();
        let m = if legs.is_empty() {
            co.mediate_into(target)?
        } else {
            co.mediate(&legs)?
        };
        if seen.contains(&m.map) {
            return Err(Error::Mismatch(
                "two distinct cocones mediated to the same map".into(),
            ));
        }
        if !out_homs.iter().any(|h| h.map == m.map) {
            return Err(Error::Mismatch(
                "a mediating map is missing from the enumeration of maps out".into(),
            ));
        }
        seen.push(m.map);
        // Odometer over the cartesian product of the per-factor hom lists.
        exhausted = true;
        for digit in (0..index.len()).rev() {
            index[digit] += 1;
            if index[digit] < per_factor[digit].len() {
                exhausted = false;
                break;
            }
            index[digit] = 0;
        }
    }

    // Every map out is mediated by the cocone it induces.
    for g in &out_homs {
        let induced: Vec<Hom> = co
            .injections
            .iter()
            .map(|inj| inj.then(g))
            .collect::<Result<_, _>>()?;
        let m = if induced.is_empty() {
            co.mediate_into(target)?
        } else {
            let refs: Vec<&Hom> = induced.iter().collect();
            co.mediate(&refs)?
        };
        if m.map != g.map {
            return Err(Error::Mismatch(format!(
                "a map out of the coproduct is not the mediator of its own cocone ({} maps out)",
                out_homs.len()
            )));
        }
    }

    if seen.len() != out_homs.len() {
        return Err(Error::Mismatch(format!(
            "cocone count {} differs from maps-out count {}",
            seen.len(),
            out_homs.len()
        )));
    }
    Ok((seen.len(), out_homs.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn chain3() -> Arc<FiniteAlgebra> {
        catalog::chain(Variety::Frame, 3)
    }

    #[test]
    fn frame_coproducts_of_three_chains_count_monotone_functions() {
        // The join-irreducibles of the three-chain form a two-chain, so the
        // n-fold coproduct is the downset lattice of the n-cube: 6, 20, 168.
        let budget = Budget::default();
        for (n, expect) in [(2usize, 6usize), (3, 20), (4, 168)] {
            let factors: Vec<_> = (0..n).map(|_| chain3()).collect();
            let co = coproduct(Variety::Frame, &factors, &budget).unwrap();
            assert_eq!(co.algebra.n(), expect, "n = {n}");
            assert_eq!(co.injections.len(), n);
        }
    }

    #[test]
    fn set_coproduct_is_the_disjoint_union() {
        let budget = Budget::default();
        let a = catalog::set_algebra(2);
        let b = catalog::set_algebra(3);
        let co = coproduct(Variety::Set, &[Arc::clone(&a), Arc::clone(&b)], &budget).unwrap();
        assert_eq!(co.algebra.n(), 5);
        assert_eq!(co.algebra.name(co.injections[1].apply(Elem(0))), "1:e0");
        let (cocones, homs) = verify_universal(&co, &catalog::set_algebra(2), &budget).unwrap();
        assert_eq!(cocones, 32); // 2^2 * 2^3
        assert_eq!(homs, 32);
        assert!(coproduct(Variety::Set, &[], &budget).is_err());
    }

    #[test]
    fn supsl_coproduct_is_the_biproduct() {
        let budget = Budget::default();
        let two = catalog::chain(Variety::SupSl, 2);
        let co = coproduct(Variety::SupSl, &[Arc::clone(&two), Arc::clone(&two)], &budget).unwrap();
        assert_eq!(co.algebra.n(), 4);
        // Injections pad with bottom.
        assert_eq!(co.algebra.name(co.injections[0].apply(Elem(1))), "(top,bot)");
        assert_eq!(co.algebra.name(co.injections[1].apply(Elem(1))), "(bot,top)");
        for target in [
            catalog::chain(Variety::SupSl, 2),
            catalog::chain(Variety::SupSl, 3),
        ] {
            verify_universal(&co, &target, &budget).unwrap();
        }
    }

    #[test]
    fn frame_coproduct_satisfies_the_universal_property() {
        let budget = Budget::default();
        let co = coproduct(Variety::Frame, &[chain3(), chain3()], &budget).unwrap();
        assert_eq!(co.algebra.n(), 6);
        for target in [
            catalog::chain(Variety::Frame, 2),
            catalog::chain(Variety::Frame, 3),
            catalog::boolean(2).reduct(Variety::Frame, &budget).unwrap(),
        ] {
            let (cocones, homs) = verify_universal(&co, &target, &budget).unwrap();
            assert_eq!(cocones, homs);
        }
        // Frozen count: the three-chain has 2 frame maps to the two-chain,
        // so the coproduct has 4.
        let two = catalog::chain(Variety::Frame, 2);
        let (cocones, _) = verify_universal(&co, &two, &budget).unwrap();
        assert_eq!(cocones, 4);
    }

    #[test]
    fn boolean_coproduct_is_the_powerset_of_atom_pairs() {
        let budget = Budget::default();
        let b1 = catalog::boolean(1);
        let b2 = catalog::boolean(2);
        // 2 is initial: adding it changes nothing (up to size).
        let co = coproduct(Variety::CBAlg, &[Arc::clone(&b2), Arc::clone(&b1)], &budget).unwrap();
        assert_eq!(co.algebra.n(), 4);
        let co22 = coproduct(Variety::CBAlg, &[Arc::clone(&b2), Arc::clone(&b2)], &budget).unwrap();
        assert_eq!(co22.algebra.n(), 16); // powerset of 2*2 atom pairs
        for target in [catalog::boolean(1), catalog::boolean(2)] {
            let (cocones, homs) = verify_universal(&co22, &target, &budget).unwrap();
            assert_eq!(cocones, homs);
        }
    }

    #[test]
    fn empty_coproducts_are_initial() {
        let budget = Budget::default();
        let cases = [
            (Variety::SupSl, 1usize),
            (Variety::Frame, 2),
            (Variety::CBAlg, 2),
        ];
        for (v, size) in cases {
            let co = coproduct(v, &[], &budget).unwrap();
            assert_eq!(co.algebra.n(), size, "{v}");
            // Initiality: exactly one map into any target of the variety.
            let target = match v {
                Variety::SupSl => catalog::chain(v, 3),
                Variety::Frame => catalog::chain(v, 3),
                Variety::CBAlg => catalog::boolean(2),
                _ => unreachable!(),
            };
            let (cocones, homs) = verify_universal(&co, &target, &budget).unwrap();
            assert_eq!((cocones, homs), (1, 1));
            let unique = co.mediate_into(&target).unwrap();
            assert!(is_homomorphism(&unique).is_ok());
        }
    }

    #[test]
    fn quantale_coproducts_are_refused() {
        let budget = Budget::default();
        let l3 = catalog::lukasiewicz(3);
        assert!(matches!(
            coproduct(Variety::UQuant, &[l3], &budget),
            Err(Error::UnsupportedVariety { op: "coproduct", .. })
        ));
    }

    #[test]
    fn oversized_coproducts_trip_the_budget() {
        let budget = Budget::default();
        // Six three-chains: the product poset is the 6-cube (64 elements,
        // exactly at the mask limit) but it has 7,828,354 downsets.
        let factors: Vec<_> = (0..6).map(|_| chain3()).collect();
        assert!(matches!(
            coproduct(Variety::Frame, &factors, &budget),
            Err(Error::BudgetExceeded { what: "downset enumeration", .. })
        ));
        // Seven exceed the mask width itself.
        let factors: Vec<_> = (0..7).map(|_| chain3()).collect();
        assert!(matches!(
            coproduct(Variety::Frame, &factors, &budget),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn mediate_rejects_malformed_cocones() {
        let budget = Budget::default();
        let co = coproduct(Variety::Frame, &[chain3(), chain3()], &budget).unwrap();
        let two = catalog::chain(Variety::Frame, 2);
        let leg0 = Hom::new(chain3(), Arc::clone(&two), vec![Elem(0), Elem(0), Elem(1)]);
        // Wrong number of legs.
        assert!(co.mediate(&[&leg0]).is_err());
        // Legs with different targets.
        let three = chain3();
        let leg1 = Hom::new(chain3(), three, vec![Elem(0), Elem(1), Elem(2)]);
        assert!(co.mediate(&[&leg0, &leg1]).is_err());
        // A non-homomorphism leg.
        let bad = Hom::new(chain3(), Arc::clone(&two), vec![Elem(1), Elem(0), Elem(1)]);
        assert!(co.mediate(&[&leg0, &bad]).is_err());
        // A valid cocone mediates.
        let leg2 = Hom::new(chain3(), Arc::clone(&two), vec![Elem(0), Elem(1), Elem(1)]);
        let m = co.mediate(&[&leg0, &leg2]).unwrap();
        assert!(is_homomorphism(&m).is_ok());
    }
}
