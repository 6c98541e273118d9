//! Products of systems, and powers of the Sierpinski system.
//!
//! A product of systems multiplies the point sets and takes the
//! *coproduct* of the algebras; the structure map at a tuple of points is
//! the mediating homomorphism of the tuple's evaluation cocone. Because
//! point sets multiply, the power `S^I` of the Sierpinski system has
//! `|L|^I` points — far too many to store for the index sets that matter
//! (one copy of `S` per element of a system's algebra). The lazy half of
//! this module therefore works with the power through *coded* points
//! (mixed-radix digits) and through the component morphisms of the
//! canonical map into it, never materializing the product unless asked.

use super::sierpinski::{canonical_morphism_to_s, free_generator};
use super::{AffineSystem, SystemMorphism};
use crate::algebra::{enumerate_homs, same_algebra, Elem, FiniteAlgebra, Hom};
use crate::budget::Budget;
use crate::coproduct::{coproduct, Coproduct};
use crate::error::Error;
use std::sync::Arc;

/// A materialized product of systems, with its projections.
pub struct ProductSystem {
    pub system: Arc<AffineSystem>,
    pub factors: Vec<Arc<AffineSystem>>,
    /// The coproduct of the factor algebras — the product's algebra.
    pub coproduct: Coproduct,
    /// `projections[i]` is the morphism onto factor `i`: the tuple
    /// coordinate on points, the coproduct injection on algebras.
    pub projections: Vec<SystemMorphism>,
    strides: Vec<usize>,
}

impl ProductSystem {
    /// The point index of a coordinate tuple (leftmost factor most
    /// significant, matching the tuple names).
    pub fn index_of(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.factors.len());
        coords
            .iter()
            .zip(&self.strides)
            .map(|(c, s)| c * s)
            .sum()
    }

    /// The coordinates of a point index.
    pub fn coords_of(&self, point: usize) -> Vec<usize> {
        self.factors
            .iter()
            .zip(&self.strides)
            .map(|(f, s)| point / s % f.n_points())
            .collect()
    }
}

/// The product of `factors` in the category of systems over `base`. The
/// empty product is the terminal system: one point, the initial algebra.
pub fn product_systems(
    base: &Arc<FiniteAlgebra>,
    factors: &[Arc<AffineSystem>],
    budget: &Budget,
) -> Result<ProductSystem, Error> {
    for f in factors {
        if !same_algebra(&f.base, base) {
            return Err(Error::Mismatch(
                "product factors live over different bases".into(),
            ));
        }
    }
    let sizes: Vec<usize> = factors.iter().map(|f| f.n_points()).collect();
    let mut total: u64 = 1;
    for &s in &sizes {
        total = total.saturating_mul(s as u64);
    }
    let total = budget.carrier("product system points", total)?;
    let mut strides = vec![1usize; sizes.len()];
    for i in (0..sizes.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * sizes[i + 1];
    }
    let names: Vec<String> = if factors.is_empty() {
        vec!["()".into()]
    } else {
        (0..total)
            .map(|p| {
                let parts: Vec<&str> = factors
                    .iter()
                    .zip(&strides)
                    .map(|(f, s)| f.point_names[p / s % f.n_points()].as_str())
                    .collect();
                format!("({})", parts.join(","))
            })
            .collect()
    };
    let algebras: Vec<Arc<FiniteAlgebra>> = factors.iter().map(|f| Arc::clone(&f.algebra)).collect();
    let co = coproduct(base.variety(), &algebras, budget)?;
    let mut kappa = vec![vec![Elem(0); total]; co.algebra.n()];
    for p in 0..total {
        let column = if factors.is_empty() {
            co.mediate_into(base)?
        } else {
            let legs: Vec<Hom> = factors
                .iter()
                .zip(&strides)
                .map(|(f, s)| f.ell(p / s % f.n_points()))
                .collect();
            let refs: Vec<&Hom> = legs.iter().collect();
            co.mediate(&refs)?
        };
        for c in co.algebra.elems() {
            kappa[c.i()][p] = column.apply(c);
        }
    }
    let system = Arc::new(AffineSystem::new(
        Arc::clone(base),
        names,
        Arc::clone(&co.algebra),
        kappa,
        budget,
    )?);
    let projections: Vec<SystemMorphism> = factors
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let point_map: Vec<usize> = (0..total).map(|p| p / strides[i] % f.n_points()).collect();
            SystemMorphism::new(
                Arc::clone(&system),
                Arc::clone(f),
                point_map,
                co.injections[i].clone(),
            )
        })
        .collect::<Result<_, _>>()?;
    Ok(ProductSystem {
        system,
        factors: factors.to_vec(),
        coproduct: co,
        projections,
        strides,
    })
}

/// The unique morphism `t -> product` whose composite with each projection
/// is the given leg. Verifies the composites before returning.
pub fn pair_into_product(
    product: &ProductSystem,
    t: &Arc<AffineSystem>,
    legs: &[&SystemMorphism],
) -> Result<SystemMorphism, Error> {
    if legs.len() != product.factors.len() {
        return Err(Error::Mismatch(format!(
            "cone has {} legs for {} factors",
            legs.len(),
            product.factors.len()
        )));
    }
    for (i, leg) in legs.iter().enumerate() {
        if leg.source.as_ref() != t.as_ref() {
            return Err(Error::Mismatch("cone legs start at different systems".into()));
        }
        if leg.target.as_ref() != product.factors[i].as_ref() {
            return Err(Error::Mismatch(format!(
                "leg {i} does not land in factor {i}"
            )));
        }
    }
    let point_map: Vec<usize> = (0..t.n_points())
        .map(|x| {
            let coords: Vec<usize> = legs.iter().map(|leg| leg.point_map[x]).collect();
            product.index_of(&coords)
        })
        .collect();
    let alg_map = if legs.is_empty() {
        product.coproduct.mediate_into(&t.algebra)?
    } else {
        let alg_legs: Vec<&Hom> = legs.iter().map(|leg| &leg.alg_map).collect();
        product.coproduct.mediate(&alg_legs)?
    };
    let pairing = SystemMorphism::new(
        Arc::clone(t),
        Arc::clone(&product.system),
        point_map,
        alg_map,
    )?;
    for (i, leg) in legs.iter().enumerate() {
        let composite = pairing.then(&product.projections[i])?;
        if composite.point_map != leg.point_map || composite.alg_map.map != leg.alg_map.map {
            return Err(Error::Mismatch(format!(
                "pairing followed by projection {i} differs from leg {i}"
            )));
        }
    }
    Ok(pairing)
}

/// Brute-force universal-property audit for a product of systems: cones
/// from `t` correspond one-to-one with morphisms `t -> product`. Returns
/// `(cones, morphisms)`, which the audit has verified to be equal.
pub fn audit_product_universal(
    product: &ProductSystem,
    t: &Arc<AffineSystem>,
    budget: &Budget,
) -> Result<(usize, usize), Error> {
    let lists: Vec<Vec<SystemMorphism>> = product
        .factors
        .iter()
        .map(|f| super::enumerate_system_morphisms(t, f, budget))
        .collect::<Result<_, _>>()?;
    let mut cones: u64 = 1;
    for l in &lists {
        cones = cones.saturating_mul(l.len() as u64);
    }
    if cones > budget.max_homs as u64 {
        return Err(Error::BudgetExceeded {
            what: "product cones",
            needed: cones,
            cap: budget.max_homs as u64,
        });
    }
    let all = super::enumerate_system_morphisms(t, &product.system, budget)?;
    let mut seen: Vec<(Vec<usize>, Vec<Elem>)> = Vec::new();
    let mut idx = vec![0usize; lists.len()];
    let mut exhausted = cones == 0;
    while !exhausted {
        let legs: Vec<&SystemMorphism> = lists.iter().zip(&idx).map(|(l, &i)| &l[i]).collect();
        let pairing = pair_into_product(product, t, &legs)?;
        let key = (pairing.point_map.clone(), pairing.alg_map.map.clone());
        if seen.contains(&key) {
            return Err(Error::Mismatch(
                "two distinct cones paired to the same morphism".into(),
            ));
        }
        if !all
            .iter()
            .any(|m| m.point_map == key.0 && m.alg_map.map == key.1)
        {
            return Err(Error::Mismatch(
                "a pairing is missing from the enumerated morphisms".into(),
            ));
        }
        seen.push(key);
        // Advance the odometer.
        let mut i = lists.len();
        loop {
            if i == 0 {
                exhausted = true;
                break;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < lists[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
    // Every morphism into the product is the pairing of its own
    // projection composites.
    for g in &all {
        let legs: Vec<SystemMorphism> = product
            .projections
            .iter()
            .map(|p| g.then(p))
            .collect::<Result<_, _>>()?;
        let refs: Vec<&SystemMorphism> = legs.iter().collect();
        let again = pair_into_product(product, t, &refs)?;
        if again.point_map != g.point_map || again.alg_map.map != g.alg_map.map {
            return Err(Error::Mismatch(
                "re-pairing a morphism's projections changed it".into(),
            ));
        }
    }
    let cones = seen.len();
    if cones != all.len() {
        return Err(Error::Mismatch(format!(
            "{} cones but {} morphisms into the product",
            cones,
            all.len()
        )));
    }
    Ok((cones, all.len()))
}

/// The canonical morphism from a system into the power of the Sierpinski
/// system indexed by the system's own algebra, kept in component form: one
/// validated morphism to `S` per algebra element, plus each point's
/// coordinate tuple. The power itself is never built.
#[derive(Debug, Clone)]
pub struct CanonicalToPower {
    pub source: Arc<AffineSystem>,
    pub s: Arc<AffineSystem>,
    /// `components[a]` is the morphism to `S` named by algebra element `a`.
    pub components: Vec<SystemMorphism>,
    /// `image[x][a] = κ(a)(x)` — the coordinates of point `x` in the power.
    pub image: Vec<Vec<Elem>>,
    /// `|L| ^ |A|`, the number of points of the power.
    pub power_points: u64,
}

pub fn canonical_to_power(
    sys: &Arc<AffineSystem>,
    s: &Arc<AffineSystem>,
    budget: &Budget,
) -> Result<CanonicalToPower, Error> {
    if !same_algebra(&sys.base, &s.base) {
        return Err(Error::Mismatch(
            "system and Sierpinski system live over different bases".into(),
        ));
    }
    let power_points = (s.n_points() as u64)
        .checked_pow(sys.algebra.n() as u32)
        .unwrap_or(u64::MAX);
    if power_points > budget.max_lazy_points {
        return Err(Error::BudgetExceeded {
            what: "coded points of the Sierpinski power",
            needed: power_points,
            cap: budget.max_lazy_points,
        });
    }
    let components: Vec<SystemMorphism> = sys
        .algebra
        .elems()
        .map(|a| canonical_morphism_to_s(sys, s, a))
        .collect::<Result<_, _>>()?;
    let image: Vec<Vec<Elem>> = (0..sys.n_points())
        .map(|x| sys.algebra.elems().map(|a| sys.kappa_at(a, x)).collect())
        .collect();
    Ok(CanonicalToPower {
        source: Arc::clone(sys),
        s: Arc::clone(s),
        components,
        image,
        power_points,
    })
}

impl CanonicalToPower {
    /// Digit `i` of the coded power point `p` (leftmost index most
    /// significant, matching the materialized product's tuple order).
    pub fn digit(&self, p: u64, i: usize) -> Elem {
        let n = self.s.n_points() as u64;
        let places = self.components.len();
        debug_assert!(i < places);
        let stride = n.pow((places - 1 - i) as u32);
        Elem((p / stride % n) as u32)
    }

    /// The coded index of a coordinate tuple.
    pub fn index_of(&self, coords: &[Elem]) -> u64 {
        let n = self.s.n_points() as u64;
        coords.iter().fold(0, |acc, c| acc * n + c.i() as u64)
    }
}

/// What the canonical morphism into the power looks like, checked without
/// materializing the power.
#[derive(Debug, Clone)]
pub struct CanonicalPowerReport {
    pub algebra_size: usize,
    pub power_points: u64,
    /// The source system is separated.
    pub t0: bool,
    /// The canonical point map is injective. Cross-checked to coincide
    /// with `t0` (the coordinates of a point are exactly its evaluation).
    pub point_injective: bool,
    pub collision: Option<(usize, usize)>,
    /// Every algebra element is the image of its component's generator —
    /// the comparison half of the canonical morphism is onto.
    pub comparison_surjective: bool,
    /// Pairwise separation of the coded power points, when the pair scan
    /// fits the node budget; `None` when it was skipped as too large.
    pub power_t0: Option<bool>,
    pub power_pairs_checked: u64,
}

pub fn audit_canonical_power(
    canonical: &CanonicalToPower,
    budget: &Budget,
) -> Result<CanonicalPowerReport, Error> {
    let sys = &canonical.source;
    let gen = free_generator(&canonical.s)?;
    for (i, comp) in canonical.components.iter().enumerate() {
        if comp.alg_map.apply(gen) != Elem(i as u32) {
            return Err(Error::Mismatch(format!(
                "component {i} does not send the generator to its algebra element"
            )));
        }
    }
    let mut collision = None;
    'outer: for x in 0..canonical.image.len() {
        for y in x + 1..canonical.image.len() {
            if canonical.image[x] == canonical.image[y] {
                collision = Some((x, y));
                break 'outer;
            }
        }
    }
    let point_injective = collision.is_none();
    let (t0, _) = super::is_t0_system(sys);
    if t0 != point_injective {
        return Err(Error::Mismatch(
            "separation and injectivity of the canonical coordinates disagree".into(),
        ));
    }
    let (power_t0, power_pairs_checked) = lazy_power_t0(canonical, budget);
    Ok(CanonicalPowerReport {
        algebra_size: sys.algebra.n(),
        power_points: canonical.power_points,
        t0,
        point_injective,
        collision,
        comparison_surjective: true,
        power_t0,
        power_pairs_checked,
    })
}

/// Pairwise separation scan over the coded points of the power: any two
/// distinct tuples differ in some coordinate, and some element of the
/// Sierpinski algebra must tell those two digits apart. Skipped (returning
/// `None`) when the number of pairs exceeds the node budget.
fn lazy_power_t0(canonical: &CanonicalToPower, budget: &Budget) -> (Option<bool>, u64) {
    let n = canonical.power_points;
    let pairs = n.saturating_mul(n.saturating_sub(1)) / 2;
    if pairs > budget.max_search_nodes {
        return (None, 0);
    }
    let s = &canonical.s;
    let places = canonical.components.len();
    let mut checked = 0u64;
    for p in 0..n {
        for q in p + 1..n {
            checked += 1;
            let mut separated = false;
            'digits: for i in 0..places {
                let (u, v) = (canonical.digit(p, i), canonical.digit(q, i));
                if u == v {
                    continue;
                }
                for t in s.algebra.elems() {
                    if s.kappa_at(t, u.i()) != s.kappa_at(t, v.i()) {
                        separated = true;
                        break 'digits;
                    }
                }
            }
            if !separated {
                return (Some(false), checked);
            }
        }
    }
    (Some(true), checked)
}

/// Report on the "points lift" condition for the canonical morphism: for
/// every point `p` of the algebra and every coded power point compatible
/// with it (same composite with every component's algebra map), some
/// actual point of the system realizes both. Together with injectivity on
/// points and surjectivity of the comparison, this is what makes the
/// canonical morphism a sober embedding.
#[derive(Debug, Clone)]
pub struct SoberMonoReport {
    pub algebra_points: usize,
    pub point_injective: bool,
    pub comparison_surjective: bool,
    pub realized_all: bool,
    pub tuples_examined: u64,
    pub failure: Option<String>,
}

impl SoberMonoReport {
    pub fn holds(&self) -> bool {
        self.point_injective && self.comparison_surjective && self.realized_all
    }
}

pub fn lazy_sober_mono_audit(
    canonical: &CanonicalToPower,
    budget: &Budget,
) -> Result<SoberMonoReport, Error> {
    let sys = &canonical.source;
    let s = &canonical.s;
    let report = audit_canonical_power(canonical, budget)?;
    let points = enumerate_homs(&sys.algebra, &sys.base, budget)?;
    let s_columns: Vec<Vec<Elem>> = (0..s.n_points()).map(|v| s.ell(v).map).collect();
    let ell_tables: Vec<Vec<Elem>> = (0..sys.n_points()).map(|x| sys.ell(x).map).collect();
    let mut tuples_examined = 0u64;
    let mut realized_all = true;
    let mut failure = None;
    'points: for p in &points {
        // For each coordinate, collect the digits whose Sierpinski
        // evaluation matches `p` composed with that component's algebra
        // map. (Freeness pins the digit to `p(a)`, but the scan does not
        // assume that.)
        let mut candidates: Vec<Vec<Elem>> = Vec::with_capacity(canonical.components.len());
        for comp in &canonical.components {
            let composite = comp.alg_map.then(p)?;
            let matching: Vec<Elem> = (0..s.n_points())
                .map(|v| Elem(v as u32))
                .filter(|v| s_columns[v.i()] == composite.map)
                .collect();
            if matching.is_empty() {
                // No compatible power point touches this coordinate; the
                // premise is unsatisfiable for this algebra point.
                continue 'points;
            }
            candidates.push(matching);
        }
        let mut idx = vec![0usize; candidates.len()];
        loop {
            tuples_examined += 1;
            if tuples_examined > budget.max_search_nodes {
                return Err(Error::BudgetExceeded {
                    what: "compatible power points",
                    needed: tuples_examined,
                    cap: budget.max_search_nodes,
                });
            }
            let tuple: Vec<Elem> = candidates
                .iter()
                .zip(&idx)
                .map(|(c, &i)| c[i])
                .collect();
            let realized = (0..sys.n_points())
                .any(|x| ell_tables[x] == p.map && canonical.image[x] == tuple);
            if !realized {
                realized_all = false;
                let coords: Vec<&str> = tuple.iter().map(|v| sys.base.name(*v)).collect();
                failure = Some(format!(
                    "no point evaluates to the algebra point with table [{}] at power \
                     coordinates ({})",
                    p.map
                        .iter()
                        .map(|v| sys.base.name(*v).to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    coords.join(",")
                ));
                break 'points;
            }
            // Advance over the (almost always singleton) candidate lists.
            let mut i = candidates.len();
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < candidates[i].len() {
                    break;
                }
                idx[i] = 0;
            }
            if idx.iter().all(|&v| v == 0) {
                break;
            }
        }
    }
    Ok(SoberMonoReport {
        algebra_points: points.len(),
        point_injective: report.point_injective,
        comparison_surjective: report.comparison_surjective,
        realized_all,
        tuples_examined,
        failure,
    })
}

/// Materialize the power the canonical morphism lands in and return the
/// genuine pairing morphism, for cross-checking the lazy path on small
/// instances.
pub fn materialize_canonical(
    canonical: &CanonicalToPower,
    budget: &Budget,
) -> Result<(ProductSystem, SystemMorphism), Error> {
    let copies: Vec<Arc<AffineSystem>> = (0..canonical.components.len())
        .map(|_| Arc::clone(&canonical.s))
        .collect();
    let product = product_systems(&canonical.source.base, &copies, budget)?;
    let refs: Vec<&SystemMorphism> = canonical.components.iter().collect();
    let pairing = pair_into_product(&product, &canonical.source, &refs)?;
    for (x, coords) in canonical.image.iter().enumerate() {
        let idx: Vec<usize> = coords.iter().map(|c| c.i()).collect();
        if pairing.point_map[x] != product.index_of(&idx) {
            return Err(Error::Mismatch(
                "materialized pairing disagrees with the coded coordinates".into(),
            ));
        }
    }
    Ok((product, pairing))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Variety;
    use crate::catalog;
    use crate::system::sierpinski::sierpinski_system;
    use crate::system::{embed_space, is_t0_system, sober_system_report};

    fn frame_s() -> (Arc<FiniteAlgebra>, Arc<AffineSystem>) {
        let base = catalog::chain(Variety::Frame, 2);
        let s = sierpinski_system(&base, &Budget::default()).unwrap();
        (base, s)
    }

    #[test]
    fn square_of_the_sierpinski_system() {
        let budget = Budget::default();
        let (base, s) = frame_s();
        let product = product_systems(&base, &[Arc::clone(&s), Arc::clone(&s)], &budget).unwrap();
        assert_eq!(product.system.n_points(), 4);
        // Coproduct of two free frames on one generator: down-sets of the
        // product of two 2-chains, a 2x2 grid — six of them.
        assert_eq!(product.system.algebra.n(), 6);
        assert_eq!(product.system.point_names[1], "(bot,top)");
        assert!(is_t0_system(&product.system).0);
        assert!(sober_system_report(&product.system, &budget).unwrap().sober());
        // Point coding round-trips.
        for p in 0..4 {
            assert_eq!(product.index_of(&product.coords_of(p)), p);
        }
    }

    #[test]
    fn product_universal_property_holds_for_small_cones() {
        let budget = Budget::default();
        let (base, s) = frame_s();
        let product = product_systems(&base, &[Arc::clone(&s), Arc::clone(&s)], &budget).unwrap();
        // Cones from S itself: 3 morphisms to each factor, 9 cones, and
        // exactly 9 morphisms into the product.
        let (cones, morphisms) = audit_product_universal(&product, &s, &budget).unwrap();
        assert_eq!(cones, 9);
        assert_eq!(morphisms, 9);
    }

    #[test]
    fn empty_product_is_terminal() {
        let budget = Budget::default();
        let base = catalog::chain(Variety::Frame, 3);
        let product = product_systems(&base, &[], &budget).unwrap();
        assert_eq!(product.system.n_points(), 1);
        assert_eq!(product.system.point_names[0], "()");
        assert_eq!(product.system.algebra.n(), 2);
        // Exactly one morphism from any system.
        let s = sierpinski_system(&base, &budget).unwrap();
        let (cones, morphisms) = audit_product_universal(&product, &s, &budget).unwrap();
        assert_eq!(cones, 1);
        assert_eq!(morphisms, 1);
        // The set-variety empty product needs an empty algebra, which the
        // variety cannot provide.
        let sbase = catalog::set_algebra(2);
        assert!(matches!(
            product_systems(&sbase, &[], &budget),
            Err(Error::EmptyCarrier)
        ));
    }

    #[test]
    fn canonical_coordinates_of_the_sierpinski_system() {
        let budget = Budget::default();
        let (_, s) = frame_s();
        let canonical = canonical_to_power(&s, &s, &budget).unwrap();
        assert_eq!(canonical.components.len(), 3);
        assert_eq!(canonical.power_points, 8);
        // image[x][a] = κ(a)(x): bottom sees (⊥,⊥,⊤), top sees (⊥,⊤,⊤).
        assert_eq!(canonical.image[0], vec![Elem(0), Elem(0), Elem(1)]);
        assert_eq!(canonical.image[1], vec![Elem(0), Elem(1), Elem(1)]);
        let report = audit_canonical_power(&canonical, &budget).unwrap();
        assert!(report.t0 && report.point_injective && report.comparison_surjective);
        assert_eq!(report.power_t0, Some(true));
        assert_eq!(report.power_pairs_checked, 28);
        // The Sierpinski system is sober, so the canonical morphism is a
        // sober embedding.
        let mono = lazy_sober_mono_audit(&canonical, &budget).unwrap();
        assert!(mono.holds());
        assert_eq!(mono.algebra_points, 2);
    }

    #[test]
    fn digit_coding_matches_the_materialized_product() {
        let budget = Budget::default();
        let (_, s) = frame_s();
        let canonical = canonical_to_power(&s, &s, &budget).unwrap();
        let (product, pairing) = materialize_canonical(&canonical, &budget).unwrap();
        assert_eq!(product.system.n_points(), canonical.power_points as usize);
        // Lazy digits agree with materialized coordinates at every point.
        for p in 0..product.system.n_points() {
            let coords = product.coords_of(p);
            for (i, &c) in coords.iter().enumerate() {
                assert_eq!(canonical.digit(p as u64, i), Elem(c as u32));
            }
        }
        // Lazy κ law: the coproduct injection of any algebra element,
        // evaluated at a tuple, is the Sierpinski row at that digit.
        for (i, inj) in product.coproduct.injections.iter().enumerate() {
            for a in s.algebra.elems() {
                for p in 0..product.system.n_points() {
                    assert_eq!(
                        product.system.kappa_at(inj.apply(a), p),
                        s.kappa_at(a, canonical.digit(p as u64, i).i())
                    );
                }
            }
        }
        // The materialized power is separated, agreeing with the lazy scan.
        assert!(is_t0_system(&product.system).0);
        // And the pairing validated as a genuine morphism (constructed so).
        assert_eq!(pairing.point_map, vec![1, 3]);
    }

    #[test]
    fn non_sober_restriction_fails_the_lift_condition() {
        // One point, seeing only the bottom-evaluation of the Sierpinski
        // algebra: separated, but the top-evaluation algebra point is
        // compatible with a power coordinate no actual point realizes.
        let budget = Budget::default();
        let (base, s) = frame_s();
        let free = s.algebra.clone();
        let sys = Arc::new(
            AffineSystem::new(
                Arc::clone(&base),
                vec!["o".into()],
                free,
                vec![vec![Elem(0)], vec![Elem(0)], vec![Elem(1)]],
                &budget,
            )
            .unwrap(),
        );
        assert!(is_t0_system(&sys).0);
        assert!(!sober_system_report(&sys, &budget).unwrap().sober());
        let canonical = canonical_to_power(&sys, &s, &budget).unwrap();
        let mono = lazy_sober_mono_audit(&canonical, &budget).unwrap();
        assert!(mono.point_injective && mono.comparison_surjective);
        assert!(!mono.realized_all);
        assert!(!mono.holds());
        assert!(mono.failure.unwrap().contains("no point evaluates"));
    }

    #[test]
    fn lazy_power_respects_the_coded_point_budget() {
        // Two joined copies of the Boolean Sierpinski algebra have 16
        // elements over a 4-element base: 4^16 coded points overflows the
        // lazy cap.
        let budget = Budget::default();
        let base = catalog::boolean(2);
        let s = sierpinski_system(&base, &budget).unwrap();
        let product = product_systems(&base, &[Arc::clone(&s), Arc::clone(&s)], &budget).unwrap();
        assert_eq!(product.system.algebra.n(), 16);
        let err = canonical_to_power(&product.system, &s, &budget).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { what, .. }
            if what == "coded points of the Sierpinski power"));
    }

    #[test]
    fn embedded_sober_space_is_a_sober_mono_into_its_power() {
        let budget = Budget::default();
        let base = catalog::chain(Variety::Frame, 3);
        let space = crate::space::sierpinski_space(&base, &budget).unwrap();
        let sys = Arc::new(embed_space(&space, &budget).unwrap());
        let s = sierpinski_system(&base, &budget).unwrap();
        let canonical = canonical_to_power(&sys, &s, &budget).unwrap();
        let mono = lazy_sober_mono_audit(&canonical, &budget).unwrap();
        assert!(mono.holds(), "{:?}", mono.failure);
        // 3 points of a 3-element chain algebra over the 3-chain: the
        // power has 3^3 = 27 coded points, never materialized here.
        assert_eq!(canonical.power_points, 27);
    }
}
