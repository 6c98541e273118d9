//! Counterexample minimization for the verification suites.
//!
//! Shrinking only ever *removes points* and re-runs the failing predicate:
//! a shrunk counterexample is kept only if it still fails, so minimization
//! can never turn a failure into a pass or reclassify what went wrong.

use crate::algebra::Elem;
use crate::budget::Budget;
use crate::error::Error;
use crate::space::AffineSpace;
use crate::system::AffineSystem;
use std::sync::Arc;

/// The same system on a subset of its points: kappa rows are sliced, the
/// algebra is kept as is (columns of a sliced kappa are still columns of
/// the original, hence still homomorphisms).
pub fn project_points(
    sys: &Arc<AffineSystem>,
    keep: &[usize],
    budget: &Budget,
) -> Result<Arc<AffineSystem>, Error> {
    for &x in keep {
        if x >= sys.n_points() {
            return Err(Error::Invalid(format!(
                "point index {x} out of range for {} points",
                sys.n_points()
            )));
        }
    }
    let names: Vec<String> = keep.iter().map(|&x| sys.point_names[x].clone()).collect();
    let kappa: Vec<Vec<Elem>> = sys
        .algebra
        .elems()
        .map(|a| keep.iter().map(|&x| sys.kappa_row(a)[x]).collect())
        .collect();
    Ok(Arc::new(AffineSystem::new(
        Arc::clone(&sys.base),
        names,
        Arc::clone(&sys.algebra),
        kappa,
        budget,
    )?))
}

/// The same space on a subset of its points (tables sliced; slicing keeps
/// the family closed because the operations act pointwise).
pub fn project_space_points(
    space: &Arc<AffineSpace>,
    keep: &[usize],
    budget: &Budget,
) -> Result<Arc<AffineSpace>, Error> {
    let names: Vec<String> = keep.iter().map(|&x| space.point_names[x].clone()).collect();
    let tables: Vec<Vec<Elem>> = space
        .opens()
        .tables()
        .iter()
        .map(|t| keep.iter().map(|&x| t[x]).collect())
        .collect();
    Ok(Arc::new(AffineSpace::new(
        Arc::clone(&space.base),
        names,
        tables,
        false,
        budget,
    )?))
}

/// Greedily drop points while `fails` stays true. `fails(sys)` must be true
/// on entry; the result is a (locally) minimal system that still fails.
pub fn shrink_system<F>(sys: &Arc<AffineSystem>, fails: F, budget: &Budget) -> Arc<AffineSystem>
where
    F: Fn(&Arc<AffineSystem>) -> bool,
{
    let mut current = Arc::clone(sys);
    loop {
        let mut improved = false;
        for drop in 0..current.n_points() {
            let keep: Vec<usize> = (0..current.n_points()).filter(|&x| x != drop).collect();
            if let Ok(smaller) = project_points(&current, &keep, budget) {
                if fails(&smaller) {
                    current = smaller;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            return current;
        }
    }
}

/// Greedily drop points of a space while `fails` stays true.
pub fn shrink_space<F>(space: &Arc<AffineSpace>, fails: F, budget: &Budget) -> Arc<AffineSpace>
where
    F: Fn(&Arc<AffineSpace>) -> bool,
{
    let mut current = Arc::clone(space);
    loop {
        let mut improved = false;
        for drop in 0..current.n_points() {
            let keep: Vec<usize> = (0..current.n_points()).filter(|&x| x != drop).collect();
            if let Ok(smaller) = project_space_points(&current, &keep, budget) {
                if fails(&smaller) {
                    current = smaller;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            return current;
        }
    }
}

/// A one-line description of a system, for failure reports.
pub fn describe_system(sys: &AffineSystem) -> String {
    format!(
        "system with points [{}] over a {}-element {} algebra",
        sys.point_names.join(", "),
        sys.algebra.n(),
        sys.algebra.variety().tag()
    )
}

/// A one-line description of a space, for failure reports.
pub fn describe_space(space: &AffineSpace) -> String {
    format!(
        "space with points [{}] and {} opens",
        space.point_names.join(", "),
        space.opens().n()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Variety;
    use crate::catalog;
    use crate::system::is_t0_system;
    use crate::verify::gen::{duplicate_system_point, gen_system, Stratum};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn shrinking_a_separation_failure_reaches_the_offending_pair() {
        let budget = Budget::default();
        let base = catalog::default_base(Variety::Frame);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let sys = gen_system(&mut rng, &base, 4, 6, Stratum::T0, &budget).unwrap();
        let doubled = duplicate_system_point(&sys, 0, &budget).unwrap();
        assert!(!is_t0_system(&doubled).0);
        let shrunk = shrink_system(&doubled, |s| !is_t0_system(s).0, &budget);
        // A separation failure needs exactly two points, and they are the
        // duplicated pair.
        assert_eq!(shrunk.n_points(), 2);
        assert!(!is_t0_system(&shrunk).0);
    }

    #[test]
    fn shrinking_never_turns_a_failure_into_a_pass() {
        let budget = Budget::default();
        let base = catalog::default_base(Variety::SupSl);
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let sys = gen_system(&mut rng, &base, 4, 6, Stratum::NonT0, &budget).unwrap();
        let shrunk = shrink_system(&sys, |s| !is_t0_system(s).0, &budget);
        assert!(!is_t0_system(&shrunk).0);
        assert!(shrunk.n_points() <= sys.n_points());
    }

    #[test]
    fn projecting_points_keeps_the_algebra() {
        let budget = Budget::default();
        let base = catalog::default_base(Variety::CBAlg);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let sys = gen_system(&mut rng, &base, 3, 6, Stratum::Any, &budget).unwrap();
        let projected = project_points(&sys, &[0], &budget).unwrap();
        assert_eq!(projected.n_points(), 1);
        assert_eq!(projected.algebra.n(), sys.algebra.n());
    }
}
