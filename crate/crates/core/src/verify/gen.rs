//! Seeded random generation of algebras, systems, spaces, and subobject
//! cases for the verification suites.
//!
//! Everything here is deterministic in the provided RNG: suites derive one
//! ChaCha8 stream per instance from the configured seed, so parallel runs
//! merge into identical reports and every failure is replayable from the
//! seed recorded next to it.
//!
//! Generation works by *construction plus rejection*: candidates are built
//! from parts that are valid by construction (columns of `κ` are drawn from
//! the enumerated homomorphism set, opens are closed pointwise), and a
//! stratum filter rejects candidates with the wrong separation or sobriety
//! flavor. A bounded number of rejections ends in
//! [`Error::GenerationExhausted`] rather than a hang.

use crate::algebra::{enumerate_homs, Elem, FiniteAlgebra, Poset, Variety};
use crate::budget::Budget;
use crate::catalog;
use crate::error::Error;
use crate::space::AffineSpace;
use crate::system::inject::restrict_system;
use crate::system::{AffineSystem, SystemMorphism};
use rand::seq::SliceRandom;
use rand::Rng;
use std::sync::Arc;

/// How many resampling rounds a generator tries before giving up.
const ATTEMPTS: u64 = 400;

/// The separation/sobriety flavor a generated system must have.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stratum {
    /// No constraint.
    Any,
    /// Distinct kappa columns (the points are separated).
    T0,
    /// At least one duplicated kappa column.
    NonT0,
    /// The evaluation map is a bijection onto the homomorphisms `A -> L`.
    Sober,
    /// Separated, but some homomorphism `A -> L` is not an evaluation.
    NonSoberT0,
}

/// A random algebra of `variety` with at most `max` elements (at least 1).
pub fn gen_algebra<R: Rng>(
    rng: &mut R,
    variety: Variety,
    max: usize,
    budget: &Budget,
) -> Result<Arc<FiniteAlgebra>, Error> {
    let max = max.max(1);
    for _ in 0..ATTEMPTS {
        let candidate: Option<Arc<FiniteAlgebra>> = match variety {
            Variety::Set => Some(catalog::set_algebra(rng.gen_range(1..=max))),
            Variety::SupSl => {
                // Sup-semilattices come from frame reducts and chains.
                if rng.gen_bool(0.5) {
                    Some(catalog::chain(Variety::SupSl, rng.gen_range(1..=max)))
                } else {
                    random_downset_frame(rng, max, budget)?
                        .map(|f| f.reduct(Variety::SupSl, budget))
                        .transpose()?
                }
            }
            Variety::Frame => {
                if rng.gen_bool(0.3) {
                    Some(catalog::chain(Variety::Frame, rng.gen_range(1..=max)))
                } else {
                    random_downset_frame(rng, max, budget)?
                }
            }
            Variety::CBAlg => {
                let mut atoms = 0usize;
                while 1usize << (atoms + 1) <= max && rng.gen_bool(0.6) {
                    atoms += 1;
                }
                Some(catalog::boolean(atoms))
            }
            Variety::UQuant => {
                let pool: Vec<Arc<FiniteAlgebra>> = vec![
                    catalog::lukasiewicz(2),
                    catalog::lukasiewicz(3),
                    catalog::lukasiewicz(4),
                    catalog::godel(3),
                    catalog::godel(4),
                    catalog::frame_as_quantale(&catalog::chain(Variety::Frame, 2)),
                    catalog::frame_as_quantale(&catalog::chain(Variety::Frame, 3)),
                    catalog::powerset_z2_quantale(),
                    catalog::powerset_flip_monoid_quantale(),
                ];
                let fitting: Vec<_> = pool.into_iter().filter(|a| a.n() <= max).collect();
                fitting.choose(rng).cloned()
            }
        };
        if let Some(a) = candidate {
            if a.n() <= max {
                return Ok(a);
            }
        }
    }
    Err(Error::GenerationExhausted {
        what: "algebra within the size cap",
        attempts: ATTEMPTS,
    })
}

/// The downset frame of a random poset, if one fits under `max`.
fn random_downset_frame<R: Rng>(
    rng: &mut R,
    max: usize,
    budget: &Budget,
) -> Result<Option<Arc<FiniteAlgebra>>, Error> {
    let n = rng.gen_range(0..=3usize);
    let names: Vec<String> = (0..n).map(|i| format!("j{i}")).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.4) {
                pairs.push((i, j));
            }
        }
    }
    let poset = Poset::from_pairs(names, &pairs)?;
    match crate::algebra::downset_frame(&poset, budget) {
        Ok(df) if df.algebra.n() <= max => Ok(Some(df.algebra)),
        Ok(_) => Ok(None),
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// A random affine system over `base`, within the point/algebra caps and
/// with the requested stratum. The kappa columns are drawn from the
/// enumerated homomorphism set, so validity is by construction; the
/// stratum governs which multiset of columns is acceptable.
pub fn gen_system<R: Rng>(
    rng: &mut R,
    base: &Arc<FiniteAlgebra>,
    max_points: usize,
    max_algebra: usize,
    stratum: Stratum,
    budget: &Budget,
) -> Result<Arc<AffineSystem>, Error> {
    let max_points = max_points.max(1);
    for _ in 0..ATTEMPTS {
        let algebra = gen_algebra(rng, base.variety(), max_algebra, budget)?;
        let homs = match enumerate_homs(&algebra, base, budget) {
            Ok(h) => h,
            Err(Error::BudgetExceeded { .. }) => continue,
            Err(e) => return Err(e),
        };
        if homs.is_empty() {
            continue;
        }
        let wanted = rng.gen_range(1..=max_points);
        let columns: Option<Vec<&crate::algebra::Hom>> = match stratum {
            Stratum::Any => Some((0..wanted).map(|_| &homs[rng.gen_range(0..homs.len())]).collect()),
            Stratum::T0 => {
                let n = wanted.min(homs.len());
                Some(homs.choose_multiple(rng, n).collect())
            }
            Stratum::NonT0 => {
                if max_points < 2 {
                    None
                } else {
                    let n = wanted.max(2);
                    let dup = &homs[rng.gen_range(0..homs.len())];
                    let mut cols = vec![dup, dup];
                    cols.extend((2..n).map(|_| &homs[rng.gen_range(0..homs.len())]));
                    Some(cols)
                }
            }
            Stratum::Sober => {
                if homs.len() > max_points {
                    None
                } else {
                    let mut cols: Vec<&crate::algebra::Hom> = homs.iter().collect();
                    cols.shuffle(rng);
                    Some(cols)
                }
            }
            Stratum::NonSoberT0 => {
                if homs.len() < 2 {
                    None
                } else {
                    let k = rng.gen_range(1..homs.len()).min(max_points);
                    Some(homs.choose_multiple(rng, k).collect())
                }
            }
        };
        let Some(columns) = columns else { continue };
        let names: Vec<String> = (0..columns.len()).map(|x| format!("x{x}")).collect();
        let kappa: Vec<Vec<Elem>> = algebra
            .elems()
            .map(|a| columns.iter().map(|h| h.map[a.i()]).collect())
            .collect();
        let sys = AffineSystem::new(Arc::clone(base), names, algebra, kappa, budget)?;
        return Ok(Arc::new(sys));
    }
    Err(Error::GenerationExhausted {
        what: "system in the requested stratum",
        attempts: ATTEMPTS,
    })
}

/// A random affine space over `base` within the caps. `t0` of `Some(true)`
/// demands a separated space, `Some(false)` an unseparated one (built by
/// duplicating a point, which keeps the topology closed).
pub fn gen_space<R: Rng>(
    rng: &mut R,
    base: &Arc<FiniteAlgebra>,
    max_points: usize,
    max_opens: usize,
    t0: Option<bool>,
    budget: &Budget,
) -> Result<Arc<AffineSpace>, Error> {
    let max_points = max_points.max(1);
    for _ in 0..ATTEMPTS {
        let n = rng.gen_range(1..=max_points);
        let seeds = rng.gen_range(1..=2usize);
        let tables: Vec<Vec<Elem>> = (0..seeds)
            .map(|_| (0..n).map(|_| Elem(rng.gen_range(0..base.n()) as u32)).collect())
            .collect();
        let names: Vec<String> = (0..n).map(|x| format!("p{x}")).collect();
        let space = match AffineSpace::new(Arc::clone(base), names, tables, true, budget) {
            Ok(s) => s,
            Err(Error::BudgetExceeded { .. }) => continue,
            Err(e) => return Err(e),
        };
        if space.opens().n() > max_opens {
            continue;
        }
        match t0 {
            None => return Ok(Arc::new(space)),
            Some(true) => {
                if crate::space::is_t0_space(&space).0 {
                    return Ok(Arc::new(space));
                }
            }
            Some(false) => {
                if space.n_points() + 1 > max_points.max(2) {
                    continue;
                }
                return Ok(Arc::new(duplicate_space_point(&space, 0, budget)?));
            }
        }
    }
    Err(Error::GenerationExhausted {
        what: "space in the requested stratum",
        attempts: ATTEMPTS,
    })
}

/// The same space with point `x` doubled; the result is never separated.
pub fn duplicate_space_point(
    space: &AffineSpace,
    x: usize,
    budget: &Budget,
) -> Result<AffineSpace, Error> {
    let mut names = space.point_names.clone();
    names.push(format!("{}~copy", space.point_names[x]));
    let tables: Vec<Vec<Elem>> = space
        .opens()
        .tables()
        .iter()
        .map(|t| {
            let mut t = t.clone();
            let v = t[x];
            t.push(v);
            t
        })
        .collect();
    AffineSpace::new(Arc::clone(&space.base), names, tables, false, budget)
}

/// The same system with point `x` doubled; the result is never separated.
pub fn duplicate_system_point(
    sys: &AffineSystem,
    x: usize,
    budget: &Budget,
) -> Result<Arc<AffineSystem>, Error> {
    let mut names = sys.point_names.clone();
    names.push(format!("{}~copy", sys.point_names[x]));
    let kappa: Vec<Vec<Elem>> = sys
        .algebra
        .elems()
        .map(|a| {
            let mut row = sys.kappa_row(a).to_vec();
            let v = row[x];
            row.push(v);
            row
        })
        .collect();
    Ok(Arc::new(AffineSystem::new(
        Arc::clone(&sys.base),
        names,
        Arc::clone(&sys.algebra),
        kappa,
        budget,
    )?))
}

/// A sorted, nonempty, duplicate-free random subset of `0..n`.
pub fn random_subset<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    assert!(n > 0, "cannot pick a nonempty subset of nothing");
    loop {
        let keep: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
        if !keep.is_empty() {
            return keep;
        }
    }
}

/// A random restriction subsystem with its inclusion morphism.
pub fn gen_restriction<R: Rng>(
    rng: &mut R,
    sys: &Arc<AffineSystem>,
    budget: &Budget,
) -> Result<(Arc<AffineSystem>, SystemMorphism), Error> {
    let keep = random_subset(rng, sys.n_points());
    restrict_system(sys, &keep, budget)
}

/// A random subspace (point restriction) with its inclusion map, which is
/// an embedding by construction: injective, and the subspace topology is
/// exactly the restricted topology.
pub fn gen_subspace<R: Rng>(
    rng: &mut R,
    space: &Arc<AffineSpace>,
    budget: &Budget,
) -> Result<(Arc<AffineSpace>, crate::space::SpaceMap), Error> {
    let keep = random_subset(rng, space.n_points());
    let names: Vec<String> = keep.iter().map(|&x| space.point_names[x].clone()).collect();
    let tables: Vec<Vec<Elem>> = space
        .opens()
        .tables()
        .iter()
        .map(|t| keep.iter().map(|&x| t[x]).collect())
        .collect();
    let sub = Arc::new(AffineSpace::new(
        Arc::clone(&space.base),
        names,
        tables,
        false,
        budget,
    )?);
    let incl = crate::space::SpaceMap::new(Arc::clone(&sub), Arc::clone(space), keep)?;
    Ok((sub, incl))
}
