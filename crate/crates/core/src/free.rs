//! Free algebras on one generator and the extension of a generator
//! assignment to a homomorphism.
//!
//! For four of the five varieties the free algebra on a single generator is
//! a small concrete algebra, and "send the generator to `a`" extends to a
//! unique homomorphism with a closed-form table. For unital quantales the
//! free algebra is infinite — finite sets of natural-number exponents under
//! Minkowski addition — so it is kept symbolic ([`FinNatSet`]) and only its
//! *evaluations* into finite quantales are computed, via
//! [`eval_free_quantale_extension`]. For an integral quantale that
//! evaluation collapses to a three-case rule (empty set, set containing 0,
//! otherwise the power at the minimum exponent), which is asserted against
//! the general fold every time it is used.

use crate::algebra::{is_homomorphism, Elem, FiniteAlgebra, Hom, Variety};
use crate::budget::Budget;
use crate::error::Error;
use std::fmt;
use std::sync::Arc;

/// A materialized free algebra on one generator.
#[derive(Debug, Clone)]
pub struct FreeOnOne {
    pub algebra: Arc<FiniteAlgebra>,
    pub generator: Elem,
}

/// The free algebra on one generator, for the varieties where it is finite.
///
/// * `set` — one element `*`;
/// * `supsl` — `{bot, top}` with the generator at the top;
/// * `frame` — the three-chain `{bot, c, top}` generated by `c`;
/// * `cbalg` — the four-element Boolean algebra `{bot, a, a*, top}`
///   generated by `a`;
/// * `uquant` — infinite; fails, use [`FinNatSet`] and
///   [`eval_free_quantale_extension`] instead.
pub fn free_on_one(variety: Variety) -> Result<FreeOnOne, Error> {
    let budget = Budget::default();
    let (algebra, generator) = match variety {
        Variety::Set => (
            FiniteAlgebra::validate(variety, vec!["*".into()], Vec::new(), None, None, &budget)?,
            Elem(0),
        ),
        Variety::SupSl => (
            FiniteAlgebra::validate(
                variety,
                vec!["bot".into(), "top".into()],
                vec![true, true, false, true],
                None,
                None,
                &budget,
            )?,
            Elem(1),
        ),
        Variety::Frame => (
            FiniteAlgebra::validate(
                variety,
                vec!["bot".into(), "c".into(), "top".into()],
                vec![
                    true, true, true, //
                    false, true, true, //
                    false, false, true,
                ],
                None,
                None,
                &budget,
            )?,
            Elem(1),
        ),
        Variety::CBAlg => (
            FiniteAlgebra::validate(
                variety,
                vec!["bot".into(), "a".into(), "a*".into(), "top".into()],
                vec![
                    true, true, true, true, //
                    false, true, false, true, //
                    false, false, true, true, //
                    false, false, false, true,
                ],
                None,
                None,
                &budget,
            )?,
            Elem(1),
        ),
        Variety::UQuant => {
            return Err(Error::UnsupportedVariety {
                op: "materialize the free unital quantale on one generator",
                variety,
            })
        }
    };
    Ok(FreeOnOne { algebra, generator })
}

/// The unique homomorphism from the free algebra on one generator into
/// `target` sending the generator to `value`. The table is written down
/// directly from freeness:
///
/// * `set`: `* -> value`;
/// * `supsl`: `bot -> bot, top -> value`;
/// * `frame`: `bot -> bot, c -> value, top -> top`;
/// * `cbalg`: `bot -> bot, a -> value, a* -> value*, top -> top`.
pub fn extend(target: &Arc<FiniteAlgebra>, value: Elem) -> Result<Hom, Error> {
    let free = free_on_one(target.variety())?;
    if value.i() >= target.n() {
        return Err(Error::Invalid(format!(
            "generator image {value} out of range for a carrier of {}",
            target.n()
        )));
    }
    let map = match target.variety() {
        Variety::Set => vec![value],
        Variety::SupSl => vec![target.bottom(), value],
        Variety::Frame => vec![target.bottom(), value, target.top()],
        Variety::CBAlg => vec![target.bottom(), value, target.compl(value), target.top()],
        Variety::UQuant => unreachable!("free_on_one already rejected uquant"),
    };
    let hom = Hom::new(free.algebra, Arc::clone(target), map);
    debug_assert!(
        is_homomorphism(&hom).is_ok(),
        "freeness guarantees the extension is a homomorphism"
    );
    Ok(hom)
}

/// An element of the free unital quantale on one generator `q`: a finite
/// set of exponents, representing the join of the powers `q^n`. Kept sorted
/// and deduplicated. The bottom is the empty set, the unit is `{0}` (the
/// empty tensor power), the generator is `{1}`, joins are unions, and the
/// tensor is Minkowski addition of exponent sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FinNatSet(Vec<u32>);

impl FinNatSet {
    pub fn new(mut exps: Vec<u32>) -> FinNatSet {
        exps.sort_unstable();
        exps.dedup();
        FinNatSet(exps)
    }

    pub fn empty() -> FinNatSet {
        FinNatSet(Vec::new())
    }

    pub fn singleton(n: u32) -> FinNatSet {
        FinNatSet(vec![n])
    }

    /// The tensor unit `{0}`.
    pub fn unit() -> FinNatSet {
        FinNatSet::singleton(0)
    }

    /// The generator `{1}`.
    pub fn generator() -> FinNatSet {
        FinNatSet::singleton(1)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, n: u32) -> bool {
        self.0.binary_search(&n).is_ok()
    }

    pub fn min(&self) -> Option<u32> {
        self.0.first().copied()
    }

    /// Join in the free quantale: set union.
    pub fn union(&self, other: &FinNatSet) -> FinNatSet {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FinNatSet::new(v)
    }

    /// Tensor in the free quantale: Minkowski addition
    /// `{ m + n : m in self, n in other }`.
    pub fn minkowski_mul(&self, other: &FinNatSet) -> FinNatSet {
        let mut v = Vec::with_capacity(self.0.len() * other.0.len());
        for &m in &self.0 {
            for &n in &other.0 {
                v.push(m.checked_add(n).expect("exponent overflow"));
            }
        }
        FinNatSet::new(v)
    }
}

impl fmt::Display for FinNatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, "}}")
    }
}

/// Evaluate the extension of `generator -> a` at the free-quantale element
/// `set`: the join of `a^n` over the exponents. When the target is integral
/// (its unit is its top) the result collapses to
///
/// * top, if `0` is an exponent,
/// * bottom, if there are no exponents,
/// * `a^min`, otherwise,
///
/// and that shortcut is recomputed and compared against the general fold on
/// every call; a disagreement is reported as an error rather than trusted.
pub fn eval_free_quantale_extension(
    target: &FiniteAlgebra,
    a: Elem,
    set: &FinNatSet,
) -> Result<Elem, Error> {
    debug_assert_eq!(target.variety(), Variety::UQuant);
    let general = target.join_all(set.exponents().iter().map(|&n| target.tensor_power(a, n)));
    if target.is_integral() {
        let shortcut = if set.contains(0) {
            target.top()
        } else {
            match set.min() {
                None => target.bottom(),
                Some(m) => target.tensor_power(a, m),
            }
        };
        if shortcut != general {
            return Err(Error::IntegralShortcutMismatch {
                detail: format!(
                    "at {} with exponents {set}: fold gives {}, integral rule gives {}",
                    target.name(a),
                    target.name(general),
                    target.name(shortcut)
                ),
            });
        }
    }
    Ok(general)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::enumerate_homs;
    use crate::catalog;
    use proptest::prelude::*;

    #[test]
    fn free_algebras_have_the_expected_shape() {
        let f = free_on_one(Variety::Set).unwrap();
        assert_eq!(f.algebra.names(), ["*"]);
        let f = free_on_one(Variety::SupSl).unwrap();
        assert_eq!(f.algebra.names(), ["bot", "top"]);
        assert_eq!(f.generator, Elem(1));
        let f = free_on_one(Variety::Frame).unwrap();
        assert_eq!(f.algebra.names(), ["bot", "c", "top"]);
        let f = free_on_one(Variety::CBAlg).unwrap();
        assert_eq!(f.algebra.names(), ["bot", "a", "a*", "top"]);
        assert_eq!(f.algebra.compl(f.generator), Elem(2));
        assert!(matches!(
            free_on_one(Variety::UQuant),
            Err(Error::UnsupportedVariety { .. })
        ));
    }

    #[test]
    fn extension_is_the_unique_hom_hitting_the_generator() {
        // Freeness, checked by brute force: for every target element `a`,
        // `extend` produces a homomorphism sending the generator to `a`,
        // and the full enumeration contains exactly one such.
        let budget = Budget::default();
        let targets = [
            catalog::chain(Variety::SupSl, 3),
            catalog::chain(Variety::Frame, 3),
            catalog::boolean(2),
            catalog::set_algebra(3),
        ];
        for t in targets {
            let free = free_on_one(t.variety()).unwrap();
            let all = enumerate_homs(&free.algebra, &t, &budget).unwrap();
            assert_eq!(
                all.len(),
                t.n(),
                "one hom per generator image in {}",
                t.variety()
            );
            for a in t.elems() {
                let h = extend(&t, a).unwrap();
                assert!(is_homomorphism(&h).is_ok());
                assert_eq!(h.apply(free.generator), a);
                let matching: Vec<_> = all
                    .iter()
                    .filter(|g| g.apply(free.generator) == a)
                    .collect();
                assert_eq!(matching.len(), 1);
                assert_eq!(matching[0].map, h.map);
            }
        }
    }

    #[test]
    fn quantale_evaluation_matches_hand_values() {
        // In the three-element Łukasiewicz chain with x = 1/2:
        // x^0 = 1, x^1 = 1/2, x^2 = 0.
        let l3 = catalog::lukasiewicz(3);
        let half = Elem(1);
        let cases: &[(&[u32], &str)] = &[
            (&[], "0"),
            (&[0], "1"),
            (&[1], "1/2"),
            (&[2], "0"),
            (&[5], "0"),
            (&[1, 2], "1/2"),
            (&[0, 1], "1"),
        ];
        for (exps, want) in cases {
            let s = FinNatSet::new(exps.to_vec());
            let got = eval_free_quantale_extension(&l3, half, &s).unwrap();
            assert_eq!(l3.name(got), *want, "exponents {s}");
        }
        // The two free-quantale elements {0,1} and {0} evaluate equally at
        // every element of every integral quantale (both give the top).
        let one_or_none = FinNatSet::new(vec![0, 1]);
        let none = FinNatSet::unit();
        for q in [catalog::lukasiewicz(3), catalog::godel(3)] {
            assert!(q.is_integral());
            for a in q.elems() {
                assert_eq!(
                    eval_free_quantale_extension(&q, a, &one_or_none).unwrap(),
                    eval_free_quantale_extension(&q, a, &none).unwrap()
                );
            }
        }
        // In a non-integral quantale the two are told apart.
        let z2 = catalog::powerset_z2_quantale();
        assert!(!z2.is_integral());
        let g = z2.elem_by_name("{g}").unwrap();
        assert_ne!(
            eval_free_quantale_extension(&z2, g, &one_or_none).unwrap(),
            eval_free_quantale_extension(&z2, g, &none).unwrap()
        );
    }

    #[test]
    fn evaluation_is_a_quantale_homomorphism_pointwise() {
        // Evaluation turns unions into joins and Minkowski products into
        // tensors, for every generator image — spot-checked exhaustively on
        // small exponent sets.
        let sets: Vec<FinNatSet> = vec![
            FinNatSet::empty(),
            FinNatSet::unit(),
            FinNatSet::generator(),
            FinNatSet::new(vec![2]),
            FinNatSet::new(vec![0, 2]),
            FinNatSet::new(vec![1, 3]),
        ];
        for q in [
            catalog::lukasiewicz(4),
            catalog::godel(3),
            catalog::powerset_z2_quantale(),
            catalog::powerset_flip_monoid_quantale(),
        ] {
            for a in q.elems() {
                let ev = |s: &FinNatSet| eval_free_quantale_extension(&q, a, s).unwrap();
                assert_eq!(ev(&FinNatSet::unit()), q.unit());
                assert_eq!(ev(&FinNatSet::generator()), a);
                assert_eq!(ev(&FinNatSet::empty()), q.bottom());
                for s in &sets {
                    for t in &sets {
                        assert_eq!(ev(&s.union(t)), q.join(ev(s), ev(t)));
                        assert_eq!(
                            ev(&s.minkowski_mul(t)),
                            q.tensor_at(ev(s), ev(t)),
                            "tensor law at {} with {s} and {t}",
                            q.name(a)
                        );
                    }
                }
            }
        }
    }

    fn arb_finnatset() -> impl Strategy<Value = FinNatSet> {
        proptest::collection::vec(0u32..50, 0..8).prop_map(FinNatSet::new)
    }

    proptest! {
        #[test]
        fn minkowski_laws(a in arb_finnatset(), b in arb_finnatset(), c in arb_finnatset()) {
            // Commutative monoid with unit {0} and annihilating empty set...
            prop_assert_eq!(a.minkowski_mul(&b), b.minkowski_mul(&a));
            prop_assert_eq!(
                a.minkowski_mul(&b).minkowski_mul(&c),
                a.minkowski_mul(&b.minkowski_mul(&c))
            );
            prop_assert_eq!(a.minkowski_mul(&FinNatSet::unit()), a.clone());
            prop_assert_eq!(a.minkowski_mul(&FinNatSet::empty()), FinNatSet::empty());
            // ...distributing over union, which is a semilattice join.
            prop_assert_eq!(
                a.minkowski_mul(&b.union(&c)),
                a.minkowski_mul(&b).union(&a.minkowski_mul(&c))
            );
            prop_assert_eq!(a.union(&a), a.clone());
            prop_assert_eq!(a.union(&b), b.union(&a));
        }

        #[test]
        fn integral_shortcut_agrees_with_the_fold(
            s in arb_finnatset(),
            n in 3usize..6,
            a in 0u32..6,
        ) {
            // Randomized version of the shortcut cross-check: any
            // disagreement would surface as an error from evaluation.
            let q = catalog::lukasiewicz(n);
            let a = Elem(a.min(n as u32 - 1));
            prop_assert!(eval_free_quantale_extension(&q, a, &s).is_ok());
        }
    }
}
