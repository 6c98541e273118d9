//! Embeddings of systems and injectivity with respect to them.
//!
//! The class of morphisms along which extensions are demanded — called
//! `M` throughout — is: injective on points, *surjective* on algebras
//! (the comparison map runs backwards), with both endpoints separated.
//! Surjectivity of the comparison is a sufficient-but-not-complete proxy
//! for it being epi in the algebraic category, so every verdict derived
//! from it carries a `partial` flag.
//!
//! The Sierpinski system is injective for `M`: a morphism into it is an
//! algebra element (see [`super::sierpinski`]), and surjectivity of the
//! comparison hands that element a preimage, which names the extension.
//! Powers extend componentwise, and retracts extend through the
//! retraction. [`minjective_search`] runs those recipes — or a brute-force
//! search — over a pool of test cases and reports what extended.

use super::power::{pair_into_product, ProductSystem, SoberMonoReport};
use super::sierpinski::{canonical_morphism_to_s, free_generator};
use super::{embed_space, enumerate_system_morphisms, is_t0_system, AffineSystem, SystemMorphism};
use crate::algebra::{enumerate_homs, Elem, Hom};
use crate::budget::Budget;
use crate::error::Error;
use crate::space::AffineSpace;
use std::collections::BTreeSet;
use std::sync::Arc;

/// The embedding credentials of a morphism.
#[derive(Debug, Clone)]
pub struct MonoReport {
    pub point_injective: bool,
    /// The backwards algebra map is onto. Sufficient for the morphism to
    /// be monic, not necessary — hence `partial`.
    pub comparison_surjective: bool,
    pub source_t0: bool,
    pub target_t0: bool,
    /// Always true: a failed surjectivity test does not prove the
    /// morphism non-monic.
    pub partial: bool,
}

impl MonoReport {
    /// The sound proxy for being a monomorphism.
    pub fn is_mono(&self) -> bool {
        self.point_injective && self.comparison_surjective
    }

    /// Membership in the extension class `M`: an embedding between
    /// separated systems.
    pub fn in_m(&self) -> bool {
        self.is_mono() && self.source_t0 && self.target_t0
    }
}

pub fn mono_report(m: &SystemMorphism) -> MonoReport {
    let mut hit = vec![false; m.target.n_points()];
    let mut point_injective = true;
    for &x in &m.point_map {
        if hit[x] {
            point_injective = false;
            break;
        }
        hit[x] = true;
    }
    MonoReport {
        point_injective,
        comparison_surjective: m.alg_map.is_surjective(),
        source_t0: is_t0_system(&m.source).0,
        target_t0: is_t0_system(&m.target).0,
        partial: true,
    }
}

/// Restrict a system to a subset of its points. The restricted system's
/// algebra is the image of the original rows on the kept points (checked
/// to be closed, not closed up), and the returned morphism is the point
/// inclusion with the corestriction backwards — a member of `M` whenever
/// the ambient system is separated.
pub fn restrict_system(
    sys: &Arc<AffineSystem>,
    points: &[usize],
    budget: &Budget,
) -> Result<(Arc<AffineSystem>, SystemMorphism), Error> {
    let mut seen = BTreeSet::new();
    for &x in points {
        if x >= sys.n_points() {
            return Err(Error::Invalid(format!("point index {x} out of range")));
        }
        if !seen.insert(x) {
            return Err(Error::Invalid(format!("point index {x} repeated")));
        }
    }
    let names: Vec<String> = points.iter().map(|&x| sys.point_names[x].clone()).collect();
    let restricted_row =
        |a: Elem| -> Vec<Elem> { points.iter().map(|&x| sys.kappa_at(a, x)).collect() };
    let mut tables: Vec<Vec<Elem>> = sys.algebra.elems().map(restricted_row).collect();
    tables.sort();
    tables.dedup();
    let space = AffineSpace::new(Arc::clone(&sys.base), names, tables, false, budget)?;
    let sub = Arc::new(embed_space(&space, budget)?);
    let map: Vec<Elem> = sys
        .algebra
        .elems()
        .map(|a| {
            space
                .opens()
                .find(&restricted_row(a))
                .expect("every restricted row is an open of the restriction")
        })
        .collect();
    let alg_map = Hom::new(Arc::clone(&sys.algebra), Arc::clone(&sub.algebra), map);
    let inclusion = SystemMorphism::new(Arc::clone(&sub), Arc::clone(sys), points.to_vec(), alg_map)?;
    Ok((sub, inclusion))
}

/// The "points lift" audit for an arbitrary morphism with a materialized
/// target: for every point `p` of the source algebra and every target
/// point whose evaluation matches `p` through the comparison, some source
/// point must realize both. Combined with the embedding credentials this
/// is the sober-embedding condition.
pub fn is_sober_mono(m: &SystemMorphism, budget: &Budget) -> Result<SoberMonoReport, Error> {
    let report = mono_report(m);
    let points = enumerate_homs(&m.source.algebra, &m.source.base, budget)?;
    let target_tables: Vec<Vec<Elem>> = (0..m.target.n_points()).map(|x| m.target.ell(x).map).collect();
    let source_tables: Vec<Vec<Elem>> = (0..m.source.n_points()).map(|x| m.source.ell(x).map).collect();
    let mut tuples_examined = 0u64;
    let mut realized_all = true;
    let mut failure = None;
    'outer: for p in &points {
        let composite = m.alg_map.then(p)?;
        for x2 in 0..target_tables.len() {
            tuples_examined += 1;
            if target_tables[x2] != composite.map {
                continue;
            }
            let realized = (0..source_tables.len())
                .any(|x1| m.point_map[x1] == x2 && source_tables[x1] == p.map);
            if !realized {
                realized_all = false;
                failure = Some(format!(
                    "no point evaluates to the algebra point with table [{}] over target \
                     point {}",
                    p.map
                        .iter()
                        .map(|v| m.source.base.name(*v).to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    m.target.point_names[x2]
                ));
                break 'outer;
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

/// How [`extend_along`] looks for an extension.
pub enum ExtensionStrategy<'a> {
    /// The object is the Sierpinski system: extensions are named by
    /// preimages of the test morphism's algebra element.
    SierpinskiRecipe,
    /// The object is this materialized power of the Sierpinski system:
    /// extend componentwise.
    PowerRecipe(&'a ProductSystem),
    /// The object is a retract: lift the test morphism through the
    /// section, extend with the inner strategy, come back down.
    ViaRetract {
        section: &'a SystemMorphism,
        retraction: &'a SystemMorphism,
        inner: &'a ExtensionStrategy<'a>,
    },
    /// Enumerate all morphisms and filter. Ground truth at desk scale.
    Exhaustive,
}

/// A found extension, with the algebra element that named it when the
/// Sierpinski recipe produced it.
pub struct Extension {
    pub morphism: SystemMorphism,
    pub recipe_element: Option<Elem>,
}

fn same_morphism(a: &SystemMorphism, b: &SystemMorphism) -> bool {
    a.point_map == b.point_map && a.alg_map.map == b.alg_map.map
}

/// Find `ḡ` with `ḡ ∘ m = g`, if one exists. `m : Σ₁ → Σ₂` should be the
/// embedding, `g : Σ₁ → C` the morphism to extend; every candidate is
/// verified against the composite before being returned.
pub fn extend_along(
    m: &SystemMorphism,
    g: &SystemMorphism,
    strategy: &ExtensionStrategy<'_>,
    budget: &Budget,
) -> Result<Option<Extension>, Error> {
    if m.source.as_ref() != g.source.as_ref() {
        return Err(Error::Mismatch(
            "the embedding and the morphism to extend start at different systems".into(),
        ));
    }
    match strategy {
        ExtensionStrategy::SierpinskiRecipe => {
            let gen = free_generator(&g.target)?;
            let a = g.alg_map.apply(gen);
            for b in m.target.algebra.elems() {
                if m.alg_map.apply(b) != a {
                    continue;
                }
                let candidate = canonical_morphism_to_s(&m.target, &g.target, b)?;
                if same_morphism(&m.then(&candidate)?, g) {
                    return Ok(Some(Extension {
                        morphism: candidate,
                        recipe_element: Some(b),
                    }));
                }
            }
            Ok(None)
        }
        ExtensionStrategy::PowerRecipe(product) => {
            if g.target.as_ref() != product.system.as_ref() {
                return Err(Error::Mismatch(
                    "the power recipe was handed a different product".into(),
                ));
            }
            let mut components = Vec::with_capacity(product.projections.len());
            for projection in &product.projections {
                let leg = g.then(projection)?;
                match extend_along(m, &leg, &ExtensionStrategy::SierpinskiRecipe, budget)? {
                    Some(ext) => components.push(ext.morphism),
                    None => return Ok(None),
                }
            }
            let refs: Vec<&SystemMorphism> = components.iter().collect();
            let pairing = pair_into_product(product, &m.target, &refs)?;
            if !same_morphism(&m.then(&pairing)?, g) {
                return Err(Error::Mismatch(
                    "componentwise extensions paired to something other than an extension"
                        .into(),
                ));
            }
            Ok(Some(Extension {
                morphism: pairing,
                recipe_element: None,
            }))
        }
        ExtensionStrategy::ViaRetract {
            section,
            retraction,
            inner,
        } => {
            if !same_morphism(
                &section.then(retraction)?,
                &SystemMorphism::identity(&section.source),
            ) {
                return Err(Error::Mismatch(
                    "the section and retraction do not compose to the identity".into(),
                ));
            }
            let lifted = g.then(section)?;
            match extend_along(m, &lifted, inner, budget)? {
                None => Ok(None),
                Some(ext) => {
                    let back = ext.morphism.then(retraction)?;
                    if same_morphism(&m.then(&back)?, g) {
                        Ok(Some(Extension {
                            morphism: back,
                            recipe_element: None,
                        }))
                    } else {
                        Ok(None)
                    }
                }
            }
        }
        ExtensionStrategy::Exhaustive => {
            for candidate in enumerate_system_morphisms(&m.target, &g.target, budget)? {
                if same_morphism(&m.then(&candidate)?, g) {
                    return Ok(Some(Extension {
                        morphism: candidate,
                        recipe_element: None,
                    }));
                }
            }
            Ok(None)
        }
    }
}

/// Outcome of an injectivity search over a pool of test cases.
#[derive(Debug, Clone)]
pub struct MInjectivityVerdict {
    pub cases: usize,
    pub extended: usize,
    /// Extensions produced by the Sierpinski recipe whose naming element
    /// was verified to map onto the test morphism's element.
    pub recipe_checked: usize,
    /// The epi proxy behind the `M` membership test is incomplete.
    pub partial: bool,
    pub failure: Option<String>,
}

impl MInjectivityVerdict {
    pub fn injective(&self) -> bool {
        self.extended == self.cases
    }
}

/// Demand an extension for every `(m, g)` in the pool, where `m : Σ₁ → Σ₂`
/// is in `M` (verified) and `g : Σ₁ → c`. A case with no extension makes
/// the verdict negative; it is not an error.
pub fn minjective_search(
    c: &Arc<AffineSystem>,
    pool: &[(SystemMorphism, SystemMorphism)],
    strategy: &ExtensionStrategy<'_>,
    budget: &Budget,
) -> Result<MInjectivityVerdict, Error> {
    let mut extended = 0;
    let mut recipe_checked = 0;
    let mut failure = None;
    for (i, (m, g)) in pool.iter().enumerate() {
        if g.target.as_ref() != c.as_ref() {
            return Err(Error::Mismatch(format!(
                "test morphism {i} does not land in the object under test"
            )));
        }
        if !mono_report(m).in_m() {
            return Err(Error::Invalid(format!(
                "pool morphism {i} is not an embedding between separated systems"
            )));
        }
        match extend_along(m, g, strategy, budget)? {
            Some(ext) => {
                extended += 1;
                if let Some(b) = ext.recipe_element {
                    let gen = free_generator(&g.target)?;
                    if m.alg_map.apply(b) != g.alg_map.apply(gen) {
                        return Err(Error::Mismatch(format!(
                            "case {i}: the recipe element does not map onto the test element"
                        )));
                    }
                    recipe_checked += 1;
                }
            }
            None => {
                if failure.is_none() {
                    failure = Some(format!("case {i}: no extension along the pool morphism"));
                }
            }
        }
    }
    Ok(MInjectivityVerdict {
        cases: pool.len(),
        extended,
        recipe_checked,
        partial: true,
        failure,
    })
}

/// Search for a retraction of `section : C → P` — a morphism `P → C`
/// composing with the section to the identity — by enumeration.
pub fn find_retraction(
    section: &SystemMorphism,
    budget: &Budget,
) -> Result<Option<SystemMorphism>, Error> {
    let identity = SystemMorphism::identity(&section.source);
    for candidate in enumerate_system_morphisms(&section.target, &section.source, budget)? {
        if same_morphism(&section.then(&candidate)?, &identity) {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}
