//! The Sierpinski system over a base algebra, and what it classifies.
//!
//! For the four varieties whose free algebra on one generator is finite,
//! the Sierpinski system has the elements of the base as its points, that
//! free algebra as its algebra, and the extension of `generator -> identity
//! table` as its `κ` — concretely, each element of the free algebra is a
//! term in one variable, and its row is that term applied to the identity
//! table pointwise. For unital quantales the free algebra is infinite, so
//! there is no finite system; the evaluator in [`crate::free`] computes any
//! required value of `κ` instead, and [`theta_comparison`] works with that.
//!
//! The central classification: morphisms from any system into the
//! Sierpinski system correspond exactly to the elements of the system's
//! algebra — `a` yields the point map `x -> κ(a)(x)` and the algebra map
//! `generator -> a`. [`audit_morphisms_to_s`] checks that against the
//! brute-force enumeration of all candidate pairs.

use super::{counit, embed_space, AffineSystem, SystemMorphism};
use crate::algebra::{Elem, FiniteAlgebra, Hom, Variety};
use crate::budget::Budget;
use crate::error::Error;
use crate::free::{extend, free_on_one, FinNatSet};
use crate::space::sierpinski_space;
use std::sync::Arc;

/// Build the Sierpinski system over `base`. Fails for unital quantales,
/// whose Sierpinski algebra is infinite (use the symbolic evaluator
/// instead).
pub fn sierpinski_system(
    base: &Arc<FiniteAlgebra>,
    budget: &Budget,
) -> Result<Arc<AffineSystem>, Error> {
    let free = free_on_one(base.variety())?;
    let identity: Vec<Elem> = base.elems().collect();
    let kappa: Vec<Vec<Elem>> = match base.variety() {
        Variety::Set => vec![identity],
        Variety::SupSl => vec![vec![base.bottom(); base.n()], identity],
        Variety::Frame => vec![
            vec![base.bottom(); base.n()],
            identity,
            vec![base.top(); base.n()],
        ],
        Variety::CBAlg => vec![
            vec![base.bottom(); base.n()],
            identity.clone(),
            identity.iter().map(|&v| base.compl(v)).collect(),
            vec![base.top(); base.n()],
        ],
        Variety::UQuant => unreachable!("free_on_one already rejected uquant"),
    };
    Ok(Arc::new(AffineSystem::new(
        Arc::clone(base),
        base.names().to_vec(),
        free.algebra,
        kappa,
        budget,
    )?))
}

/// The value of the quantale Sierpinski `κ` at the free-algebra element
/// `set` and the point `a`: the join of the powers `a^n` over the
/// exponents in `set`.
pub fn sierpinski_kappa_uquant(
    base: &FiniteAlgebra,
    set: &FinNatSet,
    a: Elem,
) -> Result<Elem, Error> {
    crate::free::eval_free_quantale_extension(base, a, set)
}

/// The morphism into the Sierpinski system named by the algebra element
/// `a`: points go to `κ(a)` read as elements of the base, and the algebra
/// map extends `generator -> a`.
pub fn canonical_morphism_to_s(
    sys: &Arc<AffineSystem>,
    s: &Arc<AffineSystem>,
    a: Elem,
) -> Result<SystemMorphism, Error> {
    let point_map: Vec<usize> = sys.kappa_row(a).iter().map(|v| v.i()).collect();
    let alg_map = extend(&sys.algebra, a)?;
    // The Sierpinski algebra built here and the free algebra built by
    // `extend` are structurally identical; re-anchor the hom on the shared
    // instance so pointer comparisons in composition also succeed.
    let alg_map = Hom::new(Arc::clone(&s.algebra), alg_map.target, alg_map.map);
    SystemMorphism::new(Arc::clone(sys), Arc::clone(s), point_map, alg_map)
}

/// The classification audit: the canonical morphisms `a -> (κ(a), a^-)`
/// are pairwise distinct, and the brute-force enumeration of morphisms
/// into the Sierpinski system finds exactly them.
#[derive(Debug, Clone)]
pub struct MorphismsToSAudit {
    pub algebra_size: usize,
    pub enumerated: usize,
}

pub fn audit_morphisms_to_s(
    sys: &Arc<AffineSystem>,
    s: &Arc<AffineSystem>,
    budget: &Budget,
) -> Result<MorphismsToSAudit, Error> {
    let canonical: Vec<SystemMorphism> = sys
        .algebra
        .elems()
        .map(|a| canonical_morphism_to_s(sys, s, a))
        .collect::<Result<_, _>>()?;
    for (i, m) in canonical.iter().enumerate() {
        for other in &canonical[..i] {
            if m.point_map == other.point_map && m.alg_map.map == other.alg_map.map {
                return Err(Error::Mismatch(format!(
                    "two algebra elements name the same morphism into the Sierpinski system \
                     ({} and {})",
                    sys.algebra.name(Elem(i as u32)),
                    sys.algebra.name(m.alg_map.apply(free_generator(s)?))
                )));
            }
        }
    }
    let all = super::enumerate_system_morphisms(sys, s, budget)?;
    for m in &all {
        if !canonical
            .iter()
            .any(|c| c.point_map == m.point_map && c.alg_map.map == m.alg_map.map)
        {
            return Err(Error::Mismatch(
                "an enumerated morphism into the Sierpinski system is not named by any \
                 algebra element"
                    .into(),
            ));
        }
    }
    if all.len() != canonical.len() {
        return Err(Error::Mismatch(format!(
            "enumeration found {} morphisms, the algebra has {} elements",
            all.len(),
            canonical.len()
        )));
    }
    Ok(MorphismsToSAudit {
        algebra_size: sys.algebra.n(),
        enumerated: all.len(),
    })
}

/// The generator of the Sierpinski system's algebra.
pub fn free_generator(s: &AffineSystem) -> Result<Elem, Error> {
    Ok(free_on_one(s.algebra.variety())?.generator)
}

/// The comparison of the free algebra on one generator with the opens of
/// the Sierpinski space (the subalgebra of `L^L` generated by the identity
/// table): the homomorphism sending the generator to the identity, and
/// whether it is an isomorphism.
#[derive(Debug, Clone)]
pub struct ThetaReport {
    /// Size of the free algebra on one generator; `None` when infinite
    /// (unital quantales).
    pub free_size: Option<usize>,
    /// Size of the subalgebra of `L^L` generated by the identity table.
    pub image_size: usize,
    /// The comparison homomorphism, when the free algebra is finite.
    pub theta: Option<Hom>,
    /// Whether the comparison is an isomorphism. For quantales this is
    /// always false (an infinite algebra cannot inject into a finite one),
    /// witnessed concretely below.
    pub iso: bool,
    /// Two distinct free-quantale elements with the same image, when the
    /// variety is `uquant`.
    pub collision: Option<(FinNatSet, FinNatSet)>,
}

pub fn theta_comparison(base: &Arc<FiniteAlgebra>, budget: &Budget) -> Result<ThetaReport, Error> {
    let space = sierpinski_space(base, budget)?;
    let opens = space.opens();
    let image_size = opens.n();
    if base.variety() == Variety::UQuant {
        let collision = quantale_theta_collision(base, budget)?;
        return Ok(ThetaReport {
            free_size: None,
            image_size,
            theta: None,
            iso: false,
            collision: Some(collision),
        });
    }
    let identity: Vec<Elem> = base.elems().collect();
    let generator_pos = opens
        .find(&identity)
        .expect("the identity table generates the Sierpinski opens");
    let theta = extend(opens.algebra(), generator_pos)?;
    let iso = theta.is_bijective();
    // Independent path: the counit of the Sierpinski system corestricts κ
    // to its image, which is the same subalgebra — the two maps must agree.
    let s = sierpinski_system(base, budget)?;
    let eps = counit(&s, budget)?;
    if eps.alg_map.map != theta.map {
        return Err(Error::Mismatch(
            "the extension of the generator disagrees with the corestricted κ".into(),
        ));
    }
    Ok(ThetaReport {
        free_size: Some(theta.source.n()),
        image_size,
        theta: Some(theta),
        iso,
        collision: None,
    })
}

/// Two distinct finite exponent sets that evaluate identically at every
/// element of the base — the reason the quantale comparison map is never
/// injective. For an integral quantale, `{0,1}` and `{0}` already collide
/// (both evaluate to the top everywhere); otherwise the singleton powers
/// `{0}, {1}, {2}, ...` must repeat by pigeonhole, and the first repeat is
/// returned.
fn quantale_theta_collision(
    base: &FiniteAlgebra,
    budget: &Budget,
) -> Result<(FinNatSet, FinNatSet), Error> {
    let table = |set: &FinNatSet| -> Result<Vec<Elem>, Error> {
        base.elems()
            .map(|a| crate::free::eval_free_quantale_extension(base, a, set))
            .collect()
    };
    if base.is_integral() {
        let a = FinNatSet::new(vec![0, 1]);
        let b = FinNatSet::new(vec![0]);
        let (ta, tb) = (table(&a)?, table(&b)?);
        if ta != tb {
            return Err(Error::Mismatch(
                "an integral quantale distinguished {0,1} from {0}".into(),
            ));
        }
        return Ok((a, b));
    }
    let mut seen: Vec<(Vec<Elem>, u32)> = Vec::new();
    for n in 0..=budget.max_search_nodes.min(1 << 20) as u32 {
        let set = FinNatSet::singleton(n);
        let t = table(&set)?;
        if let Some((_, m)) = seen.iter().find(|(u, _)| *u == t) {
            return Ok((FinNatSet::singleton(*m), set));
        }
        seen.push((t, n));
    }
    Err(Error::GenerationExhausted {
        what: "singleton-power collision scan",
        attempts: seen.len() as u64,
    })
}

/// The comparison morphism from the embedded Sierpinski space to the
/// Sierpinski system: identity on points, the comparison homomorphism on
/// algebras. It is an isomorphism of systems exactly when the comparison
/// of algebras is one.
#[derive(Debug, Clone)]
pub struct CounitComparisonReport {
    pub theta: ThetaReport,
    /// Whether the pair (identity, comparison) validated as a system
    /// morphism; `None` for quantales, where the system side is infinite
    /// and only the evaluator exists.
    pub morphism_valid: Option<bool>,
}

pub fn audit_counit_comparison(
    base: &Arc<FiniteAlgebra>,
    budget: &Budget,
) -> Result<CounitComparisonReport, Error> {
    let theta = theta_comparison(base, budget)?;
    if base.variety() == Variety::UQuant {
        return Ok(CounitComparisonReport {
            theta,
            morphism_valid: None,
        });
    }
    let space = sierpinski_space(base, budget)?;
    let embedded = Arc::new(embed_space(&space, budget)?);
    let s = sierpinski_system(base, budget)?;
    let th = theta.theta.clone().expect("finite varieties carry theta");
    let alg_map = Hom::new(Arc::clone(&s.algebra), th.target, th.map);
    let morphism = SystemMorphism::new(
        embedded,
        Arc::clone(&s),
        (0..s.n_points()).collect(),
        alg_map,
    );
    Ok(CounitComparisonReport {
        theta,
        morphism_valid: Some(morphism.is_ok()),
    })
}
