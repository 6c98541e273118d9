//! Affine systems and their morphisms, with the embedding of spaces into
//! systems and the spatialization going back.
//!
//! An affine system is a point set `X`, an algebra `A` of the base variety,
//! and a homomorphism `κ: A -> L^X`. The power `L^X` is never built:
//! `κ` is stored extensionally as one table per element of `A`, and the
//! homomorphism condition is checked pointwise — `κ` is a homomorphism into
//! the power exactly when every column `a -> κ(a)(x)` is a homomorphism
//! into `L`, because the projections of a product are jointly injective.
//!
//! A morphism of systems `(f, φ): Σ₁ -> Σ₂` is a point map `f: X₁ -> X₂`
//! together with an algebra homomorphism `φ: A₂ -> A₁` *backwards*,
//! satisfying `κ₁(φ(a))(x) = κ₂(a)(f(x))`. Validation checks that square
//! twice, through two independently coded paths (a raw table scan, and
//! composition of the evaluation homomorphisms), and insists they agree.
//!
//! Spaces embed as systems whose algebra is the topology itself and whose
//! `κ` is the inclusion; spatialization sends a system to its point set
//! topologized by the images of `κ`. Composing the two in one order is
//! literally the identity on spaces; in the other order it yields the
//! counit morphism computed by [`counit`]. [`adjunction_hom_bijection`]
//! brute-forces the resulting bijection between continuous maps and system
//! morphisms.

pub mod inject;
pub mod power;
pub mod sierpinski;

use crate::algebra::{
    enumerate_homs, is_homomorphism, same_algebra, Elem, FiniteAlgebra, Hom,
};
use crate::budget::Budget;
use crate::error::Error;
use crate::space::{enumerate_continuous_maps, is_continuous, pullback_table, AffineSpace, SpaceMap};
use std::sync::Arc;

/// A finite affine system over `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSystem {
    pub base: Arc<FiniteAlgebra>,
    pub point_names: Vec<String>,
    pub algebra: Arc<FiniteAlgebra>,
    /// `kappa[a.i()][x]` is the value of `κ(a)` at point `x`.
    kappa: Vec<Vec<Elem>>,
}

impl AffineSystem {
    /// Validate and build a system. `kappa` has one row per element of
    /// `algebra`, each row one value per point; every column must be a
    /// homomorphism `algebra -> base`.
    pub fn new(
        base: Arc<FiniteAlgebra>,
        point_names: Vec<String>,
        algebra: Arc<FiniteAlgebra>,
        kappa: Vec<Vec<Elem>>,
        _budget: &Budget,
    ) -> Result<AffineSystem, Error> {
        if algebra.variety() != base.variety() {
            return Err(Error::VarietyMismatch {
                expected: base.variety(),
                got: algebra.variety(),
            });
        }
        for (i, name) in point_names.iter().enumerate() {
            if point_names[..i].contains(name) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        let points = point_names.len();
        if kappa.len() != algebra.n() {
            return Err(Error::Invalid(format!(
                "kappa has {} rows for an algebra of {}",
                kappa.len(),
                algebra.n()
            )));
        }
        for (a, row) in kappa.iter().enumerate() {
            if row.len() != points {
                return Err(Error::Invalid(format!(
                    "kappa row for {} has {} entries for {} points",
                    algebra.name(Elem(a as u32)),
                    row.len(),
                    points
                )));
            }
            if let Some(&v) = row.iter().find(|v| v.i() >= base.n()) {
                return Err(Error::Invalid(format!(
                    "kappa value {v} out of range for the base carrier"
                )));
            }
        }
        for x in 0..points {
            let column: Vec<Elem> = kappa.iter().map(|row| row[x]).collect();
            let h = Hom::new(Arc::clone(&algebra), Arc::clone(&base), column);
            if let Err(e) = is_homomorphism(&h) {
                return Err(Error::KappaNotHomomorphism {
                    detail: format!("at point {}: {}", point_names[x], e),
                });
            }
        }
        Ok(AffineSystem {
            base,
            point_names,
            algebra,
            kappa,
        })
    }

    pub fn n_points(&self) -> usize {
        self.point_names.len()
    }

    pub fn kappa(&self) -> &[Vec<Elem>] {
        &self.kappa
    }

    /// The table of `κ(a)`.
    pub fn kappa_row(&self, a: Elem) -> &[Elem] {
        &self.kappa[a.i()]
    }

    pub fn kappa_at(&self, a: Elem, x: usize) -> Elem {
        self.kappa[a.i()][x]
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.point_names.iter().position(|n| n == name)
    }

    /// The point `x` as a homomorphism `A -> L` (the column of `κ` at `x`).
    pub fn ell(&self, x: usize) -> Hom {
        let map: Vec<Elem> = self.kappa.iter().map(|row| row[x]).collect();
        Hom::new(Arc::clone(&self.algebra), Arc::clone(&self.base), map)
    }

    /// All points of the algebra `A`, i.e. all homomorphisms `A -> L`.
    pub fn algebra_points(&self, budget: &Budget) -> Result<Vec<Hom>, Error> {
        enumerate_homs(&self.algebra, &self.base, budget)
    }
}

/// Direct separation: two points are indistinguishable when every row of
/// `κ` takes the same value on both.
pub fn is_t0_system(sys: &AffineSystem) -> (bool, Option<(usize, usize)>) {
    let n = sys.n_points();
    for x in 0..n {
        for y in x + 1..n {
            if sys.kappa.iter().all(|row| row[x] == row[y]) {
                return (false, Some((x, y)));
            }
        }
    }
    (true, None)
}

/// How a system's points compare with the points of its algebra.
#[derive(Debug, Clone)]
pub struct SoberSystemReport {
    pub injective: bool,
    pub collision: Option<(usize, usize)>,
    pub surjective: bool,
    pub unrealized: Option<Hom>,
    pub points_of_algebra: usize,
}

impl SoberSystemReport {
    pub fn sober(&self) -> bool {
        self.injective && self.surjective
    }
}

pub fn sober_system_report(sys: &AffineSystem, budget: &Budget) -> Result<SoberSystemReport, Error> {
    let evs: Vec<Hom> = (0..sys.n_points()).map(|x| sys.ell(x)).collect();
    let mut collision = None;
    'outer: for x in 0..evs.len() {
        for y in x + 1..evs.len() {
            if evs[x].map == evs[y].map {
                collision = Some((x, y));
                break 'outer;
            }
        }
    }
    let injective = collision.is_none();
    let (t0, witness) = is_t0_system(sys);
    if t0 != injective {
        return Err(Error::Mismatch(format!(
            "separation scan ({t0}, witness {witness:?}) disagrees with point-map injectivity ({injective})"
        )));
    }
    let all = sys.algebra_points(budget)?;
    let unrealized = all
        .iter()
        .find(|h| !evs.iter().any(|e| e.map == h.map))
        .cloned();
    Ok(SoberSystemReport {
        injective,
        collision,
        surjective: unrealized.is_none(),
        unrealized,
        points_of_algebra: all.len(),
    })
}

/// A morphism of affine systems: a point map forward and an algebra
/// homomorphism backward, related by `κ₁(φ(a))(x) = κ₂(a)(f(x))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemMorphism {
    pub source: Arc<AffineSystem>,
    pub target: Arc<AffineSystem>,
    pub point_map: Vec<usize>,
    /// `target.algebra -> source.algebra`.
    pub alg_map: Hom,
}

impl SystemMorphism {
    pub fn new(
        source: Arc<AffineSystem>,
        target: Arc<AffineSystem>,
        point_map: Vec<usize>,
        alg_map: Hom,
    ) -> Result<SystemMorphism, Error> {
        if !same_algebra(&source.base, &target.base) {
            return Err(Error::Mismatch("systems over different bases".into()));
        }
        if point_map.len() != source.n_points() {
            return Err(Error::Mismatch(format!(
                "point map has {} entries for {} points",
                point_map.len(),
                source.n_points()
            )));
        }
        if let Some(&bad) = point_map.iter().find(|&&y| y >= target.n_points()) {
            return Err(Error::Invalid(format!("point map value {bad} out of range")));
        }
        if !same_algebra(&alg_map.source, &target.algebra)
            || !same_algebra(&alg_map.target, &source.algebra)
        {
            return Err(Error::Mismatch(
                "the algebra map must run from the target algebra to the source algebra".into(),
            ));
        }
        is_homomorphism(&alg_map)?;
        // Path one: the raw table square.
        for a in target.algebra.elems() {
            for (x, &fx) in point_map.iter().enumerate() {
                let lhs = source.kappa_at(alg_map.apply(a), x);
                let rhs = target.kappa_at(a, fx);
                if lhs != rhs {
                    return Err(Error::Mismatch(format!(
                        "morphism square fails at {} / point {}: {} vs {}",
                        target.algebra.name(a),
                        source.point_names[x],
                        source.base.name(lhs),
                        source.base.name(rhs)
                    )));
                }
            }
        }
        // Path two, independently: composing evaluation homomorphisms must
        // give the same answer as the table scan just did.
        for (x, &fx) in point_map.iter().enumerate() {
            let through_alg = alg_map.then(&source.ell(x))?;
            if through_alg.map != target.ell(fx).map {
                return Err(Error::Mismatch(format!(
                    "evaluation-composite path disagrees with the table scan at point {}",
                    source.point_names[x]
                )));
            }
        }
        Ok(SystemMorphism {
            source,
            target,
            point_map,
            alg_map,
        })
    }

    pub fn identity(sys: &Arc<AffineSystem>) -> SystemMorphism {
        SystemMorphism {
            source: Arc::clone(sys),
            target: Arc::clone(sys),
            point_map: (0..sys.n_points()).collect(),
            alg_map: Hom::identity(&sys.algebra),
        }
    }

    /// `self` then `g` (forward composition of point maps, backward
    /// composition of algebra maps).
    pub fn then(&self, g: &SystemMorphism) -> Result<SystemMorphism, Error> {
        if *g.source != *self.target {
            return Err(Error::Mismatch("composition endpoints differ".into()));
        }
        SystemMorphism::new(
            Arc::clone(&self.source),
            Arc::clone(&g.target),
            self.point_map.iter().map(|&x| g.point_map[x]).collect(),
            g.alg_map.then(&self.alg_map)?,
        )
    }
}

/// All system morphisms between two systems, ordered by point map then
/// algebra map.
pub fn enumerate_system_morphisms(
    source: &Arc<AffineSystem>,
    target: &Arc<AffineSystem>,
    budget: &Budget,
) -> Result<Vec<SystemMorphism>, Error> {
    let homs = enumerate_homs(&target.algebra, &source.algebra, budget)?;
    let nx = source.n_points();
    let ny = target.n_points();
    let maps = (ny as u64).checked_pow(nx as u32).unwrap_or(u64::MAX);
    let total = maps.saturating_mul(homs.len() as u64);
    if total > budget.max_search_nodes {
        return Err(Error::BudgetExceeded {
            what: "system-morphism enumeration",
            needed: total,
            cap: budget.max_search_nodes,
        });
    }
    let mut out = Vec::new();
    let mut f = vec![0usize; nx];
    loop {
        for phi in &homs {
            let square = target.algebra.elems().all(|a| {
                f.iter()
                    .enumerate()
                    .all(|(x, &fx)| source.kappa_at(phi.apply(a), x) == target.kappa_at(a, fx))
            });
            if square {
                out.push(SystemMorphism::new(
                    Arc::clone(source),
                    Arc::clone(target),
                    f.clone(),
                    phi.clone(),
                )?);
            }
        }
        let mut i = nx;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            f[i] += 1;
            if f[i] < ny {
                break;
            }
            f[i] = 0;
        }
    }
}

/// Embed a space as a system: the algebra is the topology itself and `κ`
/// is the inclusion of opens as tables.
pub fn embed_space(space: &AffineSpace, budget: &Budget) -> Result<AffineSystem, Error> {
    AffineSystem::new(
        Arc::clone(&space.base),
        space.point_names.clone(),
        Arc::clone(space.opens().algebra()),
        space.opens().tables().to_vec(),
        budget,
    )
}

/// Embed a continuous map as a system morphism between the embedded
/// spaces: the algebra map sends a target open to its pullback.
pub fn embed_space_map(
    f: &SpaceMap,
    source_sys: &Arc<AffineSystem>,
    target_sys: &Arc<AffineSystem>,
    budget: &Budget,
) -> Result<SystemMorphism, Error> {
    let _ = budget;
    let map: Vec<Elem> = f
        .target
        .opens()
        .tables()
        .iter()
        .map(|t| {
            let pulled = pullback_table(t, &f.point_map);
            f.source
                .opens()
                .find(&pulled)
                .ok_or(Error::NotContinuous {
                    open: format!("{t:?}"),
                })
        })
        .collect::<Result<_, _>>()?;
    let alg_map = Hom::new(
        Arc::clone(&f.target.opens().algebra()),
        Arc::clone(&f.source.opens().algebra()),
        map,
    );
    SystemMorphism::new(
        Arc::clone(source_sys),
        Arc::clone(target_sys),
        f.point_map.clone(),
        alg_map,
    )
}

/// The spatialization of a system: the same points, topologized by the
/// (deduplicated) images of `κ`. The image of a homomorphism is closed
/// under the operations, which the space constructor re-checks.
pub fn spatialize(sys: &AffineSystem, budget: &Budget) -> Result<AffineSpace, Error> {
    let mut tables = sys.kappa.clone();
    tables.sort();
    tables.dedup();
    AffineSpace::new(
        Arc::clone(&sys.base),
        sys.point_names.clone(),
        tables,
        false,
        budget,
    )
}

/// A system morphism spatializes to its point map, which is continuous.
pub fn spatialize_morphism(
    m: &SystemMorphism,
    budget: &Budget,
) -> Result<SpaceMap, Error> {
    let src = Arc::new(spatialize(&m.source, budget)?);
    let tgt = Arc::new(spatialize(&m.target, budget)?);
    SpaceMap::new(src, tgt, m.point_map.clone())
}

/// The counit at a system: the morphism from the embedded spatialization
/// back to the system, with the identity on points and `κ` corestricted to
/// its image as the algebra map.
pub fn counit(sys: &Arc<AffineSystem>, budget: &Budget) -> Result<SystemMorphism, Error> {
    let space = spatialize(sys, budget)?;
    let embedded = Arc::new(embed_space(&space, budget)?);
    let map: Vec<Elem> = sys
        .algebra
        .elems()
        .map(|a| {
            space
                .opens()
                .find(sys.kappa_row(a))
                .expect("spatialization contains every row of kappa")
        })
        .collect();
    let alg_map = Hom::new(
        Arc::clone(&sys.algebra),
        Arc::clone(space.opens().algebra()),
        map,
    );
    SystemMorphism::new(embedded, Arc::clone(sys), (0..sys.n_points()).collect(), alg_map)
}

/// The transpose of a continuous map `space -> Spat(sys)` to a system
/// morphism `E(space) -> sys`: the point map is kept and the algebra map
/// sends `a` to the open `κ(a) ∘ f`.
pub fn transpose(
    space: &Arc<AffineSpace>,
    embedded: &Arc<AffineSystem>,
    sys: &Arc<AffineSystem>,
    f: &[usize],
    budget: &Budget,
) -> Result<SystemMorphism, Error> {
    let _ = budget;
    let map: Vec<Elem> = sys
        .algebra
        .elems()
        .map(|a| {
            let pulled = pullback_table(sys.kappa_row(a), f);
            space.opens().find(&pulled).ok_or(Error::NotContinuous {
                open: sys.algebra.name(a).to_string(),
            })
        })
        .collect::<Result<_, _>>()?;
    let alg_map = Hom::new(
        Arc::clone(&sys.algebra),
        Arc::clone(space.opens().algebra()),
        map,
    );
    SystemMorphism::new(Arc::clone(embedded), Arc::clone(sys), f.to_vec(), alg_map)
}

/// The hom-set bijection underlying the space/system adjunction, checked
/// exhaustively: continuous maps `space -> Spat(sys)` correspond one to
/// one with system morphisms `E(space) -> sys`, by keeping the point map.
#[derive(Debug, Clone)]
pub struct HomBijectionAudit {
    pub continuous_maps: usize,
    pub system_morphisms: usize,
}

pub fn adjunction_hom_bijection(
    space: &Arc<AffineSpace>,
    sys: &Arc<AffineSystem>,
    budget: &Budget,
) -> Result<HomBijectionAudit, Error> {
    let spat = Arc::new(spatialize(sys, budget)?);
    let embedded = Arc::new(embed_space(space, budget)?);
    let maps = enumerate_continuous_maps(space, &spat, budget)?;
    let morphisms = enumerate_system_morphisms(&embedded, sys, budget)?;

    // Forward: every continuous map transposes to a morphism in the list.
    for f in &maps {
        let m = transpose(space, &embedded, sys, f, budget)?;
        if !morphisms
            .iter()
            .any(|g| g.point_map == m.point_map && g.alg_map.map == m.alg_map.map)
        {
            return Err(Error::Mismatch(
                "a transposed continuous map is missing from the morphism enumeration".into(),
            ));
        }
    }
    // Backward: every morphism's point map is continuous, and transposing
    // it back recovers the same algebra map — so the correspondence is a
    // bijection, not merely a surjection.
    for m in &morphisms {
        is_continuous(&m.point_map, space, &spat)?;
        if !maps.contains(&m.point_map) {
            return Err(Error::Mismatch(
                "a morphism's point map is missing from the continuous enumeration".into(),
            ));
        }
        let again = transpose(space, &embedded, sys, &m.point_map, budget)?;
        if again.alg_map.map != m.alg_map.map {
            return Err(Error::Mismatch(
                "two distinct morphisms share a point map".into(),
            ));
        }
    }
    if maps.len() != morphisms.len() {
        return Err(Error::Mismatch(format!(
            "{} continuous maps vs {} system morphisms",
            maps.len(),
            morphisms.len()
        )));
    }
    Ok(HomBijectionAudit {
        continuous_maps: maps.len(),
        system_morphisms: morphisms.len(),
    })
}

/// Outcome of [`initiality_check`]: how many candidate pairs were examined
/// and which of them exposed a violation.
#[derive(Debug, Clone)]
pub struct InitialityReport {
    pub probes: usize,
    pub candidates: u64,
    pub violations: Vec<String>,
}

impl InitialityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check that a family of morphisms out of `domain` is initial, over a
/// bounded pool of probe systems: for every probe `T` and every pair of a
/// point map `g: pts(T) -> pts(domain)` and an algebra homomorphism
/// `ψ: A(domain) -> A(T)`, if composing `(g, ψ)` with every member of the
/// family yields a valid morphism, then `(g, ψ)` must itself be a valid
/// morphism `T -> domain`. Every violation is recorded.
pub fn initiality_check(
    domain: &Arc<AffineSystem>,
    source: &[SystemMorphism],
    probes: &[Arc<AffineSystem>],
    budget: &Budget,
) -> Result<InitialityReport, Error> {
    for h in source {
        if !Arc::ptr_eq(&h.source, domain) && *h.source != **domain {
            return Err(Error::Mismatch(
                "initiality check given a morphism whose source is not the domain".into(),
            ));
        }
    }
    let nx = domain.n_points();
    let mut candidates = 0u64;
    let mut violations = Vec::new();
    for probe in probes {
        if !same_algebra(&probe.base, &domain.base) {
            return Err(Error::Mismatch(
                "initiality probe lives over a different base algebra".into(),
            ));
        }
        let psis = enumerate_homs(&domain.algebra, &probe.algebra, budget)?;
        let np = probe.n_points();
        if nx == 0 && np > 0 {
            continue; // no point maps at all, so nothing to test
        }
        // Odometer over all point maps pts(probe) -> pts(domain).
        let mut g = vec![0usize; np];
        loop {
            for psi in &psis {
                candidates += 1;
                if candidates > budget.max_search_nodes {
                    return Err(Error::BudgetExceeded {
                        what: "initiality candidate pairs",
                        needed: candidates,
                        cap: budget.max_search_nodes,
                    });
                }
                let composites_ok = source.iter().all(|h| {
                    let comp_pt: Vec<usize> = g.iter().map(|&x| h.point_map[x]).collect();
                    match h.alg_map.then(psi) {
                        Ok(comp_alg) => SystemMorphism::new(
                            Arc::clone(probe),
                            Arc::clone(&h.target),
                            comp_pt,
                            comp_alg,
                        )
                        .is_ok(),
                        Err(_) => false,
                    }
                });
                if composites_ok {
                    let direct = SystemMorphism::new(
                        Arc::clone(probe),
                        Arc::clone(domain),
                        g.clone(),
                        psi.clone(),
                    );
                    if direct.is_err() {
                        violations.push(format!(
                            "point map {:?} with algebra map {:?} composes with every \
                             member of the family but is not itself a morphism",
                            g, psi.map
                        ));
                    }
                }
            }
            // advance the odometer
            let mut i = np;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                g[i] += 1;
                if g[i] < nx {
                    break;
                }
                g[i] = 0;
            }
            if g.iter().all(|&v| v == 0) {
                break;
            }
        }
    }
    Ok(InitialityReport {
        probes: probes.len(),
        candidates,
        violations,
    })
}

/// Outcome of [`mono_source_check`]: pairs of parallel morphisms compared
/// and the pairs the family failed to separate.
#[derive(Debug, Clone)]
pub struct MonoSourceReport {
    pub probes: usize,
    pub pairs: u64,
    pub violations: Vec<String>,
}

impl MonoSourceReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check that a family of morphisms out of `domain` is jointly monic, over
/// a bounded pool of probes: for every probe `T` and every pair of distinct
/// morphisms `g₁, g₂: T -> domain`, some member `h` of the family must have
/// `h ∘ g₁ ≠ h ∘ g₂`.
pub fn mono_source_check(
    domain: &Arc<AffineSystem>,
    source: &[SystemMorphism],
    probes: &[Arc<AffineSystem>],
    budget: &Budget,
) -> Result<MonoSourceReport, Error> {
    for h in source {
        if !Arc::ptr_eq(&h.source, domain) && *h.source != **domain {
            return Err(Error::Mismatch(
                "mono-source check given a morphism whose source is not the domain".into(),
            ));
        }
    }
    let mut pairs = 0u64;
    let mut violations = Vec::new();
    for probe in probes {
        let ms = enumerate_system_morphisms(probe, domain, budget)?;
        for i in 0..ms.len() {
            for j in (i + 1)..ms.len() {
                pairs += 1;
                if pairs > budget.max_search_nodes {
                    return Err(Error::BudgetExceeded {
                        what: "mono-source morphism pairs",
                        needed: pairs,
                        cap: budget.max_search_nodes,
                    });
                }
                let separated = source.iter().any(|h| {
                    let a = ms[i].then(h);
                    let b = ms[j].then(h);
                    match (a, b) {
                        (Ok(a), Ok(b)) => {
                            a.point_map != b.point_map || a.alg_map.map != b.alg_map.map
                        }
                        _ => false,
                    }
                });
                if !separated {
                    violations.push(format!(
                        "distinct morphisms with point maps {:?} and {:?} are not \
                         separated by the family",
                        ms[i].point_map, ms[j].point_map
                    ));
                }
            }
        }
    }
    Ok(MonoSourceReport {
        probes: probes.len(),
        pairs,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Variety;
    use crate::catalog;
    use crate::space::{is_t0_space, sierpinski_space};

    fn frame2() -> Arc<FiniteAlgebra> {
        catalog::chain(Variety::Frame, 2)
    }

    /// The Sierpinski system over the two-chain, built by hand: the algebra
    /// is the free frame on one generator and κ sends bottom, the
    /// generator, and top to the empty, `{top}`, and full tables.
    fn sierpinski_by_hand() -> Arc<AffineSystem> {
        let budget = Budget::default();
        let free = crate::free::free_on_one(Variety::Frame).unwrap();
        Arc::new(
            AffineSystem::new(
                frame2(),
                vec!["bot".into(), "top".into()],
                free.algebra,
                vec![
                    vec![Elem(0), Elem(0)],
                    vec![Elem(0), Elem(1)],
                    vec![Elem(1), Elem(1)],
                ],
                &budget,
            )
            .unwrap(),
        )
    }

    #[test]
    fn kappa_must_be_a_pointwise_homomorphism() {
        let budget = Budget::default();
        let free = crate::free::free_on_one(Variety::Frame).unwrap();
        // The bottom row fails to be constantly bottom at the second
        // point, so that point's column is not a homomorphism.
        let err = AffineSystem::new(
            frame2(),
            vec!["bot".into(), "top".into()],
            free.algebra,
            vec![
                vec![Elem(0), Elem(1)],
                vec![Elem(0), Elem(0)],
                vec![Elem(1), Elem(1)],
            ],
            &budget,
        )
        .unwrap_err();
        match err {
            Error::KappaNotHomomorphism { detail } => {
                assert!(detail.contains("at point top"), "{detail}");
            }
            other => panic!("expected a kappa violation, got {other:?}"),
        }
    }

    #[test]
    fn the_two_chain_sierpinski_system_is_t0_and_sober() {
        let budget = Budget::default();
        let s = sierpinski_by_hand();
        let (t0, _) = is_t0_system(&s);
        assert!(t0);
        let report = sober_system_report(&s, &budget).unwrap();
        assert!(report.sober());
        assert_eq!(report.points_of_algebra, 2);
    }

    #[test]
    fn spatialization_deduplicates_kappa_images() {
        // One point over the two-chain with the free frame as algebra and
        // the generator collapsed to bottom: three rows, two distinct.
        let budget = Budget::default();
        let free = crate::free::free_on_one(Variety::Frame).unwrap();
        let sys = Arc::new(
            AffineSystem::new(
                frame2(),
                vec!["x".into()],
                free.algebra,
                vec![vec![Elem(0)], vec![Elem(0)], vec![Elem(1)]],
                &budget,
            )
            .unwrap(),
        );
        let space = spatialize(&sys, &budget).unwrap();
        assert_eq!(space.opens().n(), 2);
        // The counit collapses the generator onto the bottom open.
        let eps = counit(&sys, &budget).unwrap();
        assert!(!eps.alg_map.is_injective());
        assert_eq!(eps.point_map, vec![0]);
    }

    #[test]
    fn embedding_then_spatializing_is_the_identity_on_spaces() {
        let budget = Budget::default();
        for space in [
            sierpinski_space(&frame2(), &budget).unwrap(),
            sierpinski_space(&catalog::boolean(1), &budget).unwrap(),
            sierpinski_space(&catalog::lukasiewicz(3), &budget).unwrap(),
        ] {
            let sys = embed_space(&space, &budget).unwrap();
            let again = spatialize(&sys, &budget).unwrap();
            assert_eq!(space, again);
        }
    }

    #[test]
    fn counit_at_an_embedded_space_is_the_identity_morphism() {
        let budget = Budget::default();
        let space = sierpinski_space(&frame2(), &budget).unwrap();
        let sys = Arc::new(embed_space(&space, &budget).unwrap());
        let eps = counit(&sys, &budget).unwrap();
        assert_eq!(eps.point_map, vec![0, 1]);
        assert_eq!(eps.alg_map.map, Hom::identity(&sys.algebra).map);
    }

    #[test]
    fn hom_bijection_for_the_sierpinski_pair() {
        // Continuous self-maps of the Sierpinski space stand in bijection
        // with system morphisms into the Sierpinski system; there are three.
        let budget = Budget::default();
        let space = Arc::new(sierpinski_space(&frame2(), &budget).unwrap());
        let sys = sierpinski_by_hand();
        let audit = adjunction_hom_bijection(&space, &sys, &budget).unwrap();
        assert_eq!(audit.continuous_maps, 3);
        assert_eq!(audit.system_morphisms, 3);
    }

    #[test]
    fn morphisms_compose_and_validate() {
        let budget = Budget::default();
        let s = sierpinski_by_hand();
        let all = enumerate_system_morphisms(&s, &s, &budget).unwrap();
        assert_eq!(all.len(), 3);
        let id = SystemMorphism::identity(&s);
        for m in &all {
            let left = id.then(m).unwrap();
            assert_eq!(left.point_map, m.point_map);
            assert_eq!(left.alg_map.map, m.alg_map.map);
            let right = m.then(&id).unwrap();
            assert_eq!(right.point_map, m.point_map);
        }
        // The constant-to-bottom map composed with itself stays constant.
        let cbot = all
            .iter()
            .find(|m| m.point_map == vec![0, 0])
            .expect("the constant map is a morphism");
        let twice = cbot.then(cbot).unwrap();
        assert_eq!(twice.point_map, vec![0, 0]);
    }

    #[test]
    fn morphism_validation_rejects_broken_squares() {
        let s = sierpinski_by_hand();
        // Identity points with the "collapse down" algebra map: the square
        // fails because the generator's open moves.
        let collapse = Hom::new(
            Arc::clone(&s.algebra),
            Arc::clone(&s.algebra),
            vec![Elem(0), Elem(0), Elem(2)],
        );
        let err =
            SystemMorphism::new(Arc::clone(&s), Arc::clone(&s), vec![0, 1], collapse).unwrap_err();
        assert!(matches!(err, Error::Mismatch(_)));
        // A non-homomorphism algebra map is caught before the square.
        let bad = Hom::new(
            Arc::clone(&s.algebra),
            Arc::clone(&s.algebra),
            vec![Elem(2), Elem(1), Elem(0)],
        );
        assert!(SystemMorphism::new(Arc::clone(&s), Arc::clone(&s), vec![0, 1], bad).is_err());
    }

    #[test]
    fn spatialized_point_maps_are_continuous() {
        let budget = Budget::default();
        let s = sierpinski_by_hand();
        for m in enumerate_system_morphisms(&s, &s, &budget).unwrap() {
            let f = spatialize_morphism(&m, &budget).unwrap();
            assert_eq!(f.point_map, m.point_map);
        }
    }

    #[test]
    fn a_system_over_an_empty_point_set_is_trivially_separated() {
        let budget = Budget::default();
        let free = crate::free::free_on_one(Variety::Frame).unwrap();
        let sys = AffineSystem::new(
            frame2(),
            Vec::new(),
            free.algebra,
            vec![Vec::new(), Vec::new(), Vec::new()],
            &budget,
        )
        .unwrap();
        let (t0, _) = is_t0_system(&sys);
        assert!(t0);
        let report = sober_system_report(&sys, &budget).unwrap();
        assert!(report.injective);
        assert!(!report.surjective, "the free frame has points, the system none");
        let space = spatialize(&sys, &budget).unwrap();
        assert!(is_t0_space(&space).0);
    }

    #[test]
    fn evaluation_morphisms_form_an_initial_mono_source() {
        let budget = Budget::default();
        let s = crate::system::sierpinski::sierpinski_system(&frame2(), &budget).unwrap();
        let family: Vec<SystemMorphism> = s
            .algebra
            .elems()
            .map(|a| crate::system::sierpinski::canonical_morphism_to_s(&s, &s, a).unwrap())
            .collect();
        // Probes: the Sierpinski system itself and a one-point system.
        let one = Arc::new(
            AffineSystem::new(
                frame2(),
                vec!["p".into()],
                catalog::chain(Variety::Frame, 2),
                vec![vec![Elem(0)], vec![Elem(1)]],
                &budget,
            )
            .unwrap(),
        );
        let probes = vec![Arc::clone(&s), one];
        let init = initiality_check(&s, &family, &probes, &budget).unwrap();
        assert!(init.holds(), "{:?}", init.violations);
        assert!(init.candidates > 0);
        let mono = mono_source_check(&s, &family, &probes, &budget).unwrap();
        assert!(mono.holds(), "{:?}", mono.violations);
        assert!(mono.pairs > 0);
    }

    #[test]
    fn an_empty_family_is_neither_initial_nor_monic_over_a_real_probe() {
        let budget = Budget::default();
        let s = crate::system::sierpinski::sierpinski_system(&frame2(), &budget).unwrap();
        // With no family members, every candidate pair composes vacuously,
        // so each candidate that is not itself a morphism is a violation.
        let probes = vec![Arc::clone(&s)];
        let init = initiality_check(&s, &[], &probes, &budget).unwrap();
        assert!(
            !init.holds(),
            "the empty family cannot pin down morphism structure"
        );
        let mono = mono_source_check(&s, &[], &probes, &budget).unwrap();
        assert!(!mono.holds(), "two distinct endomorphisms are never separated");
    }

    #[test]
    fn a_non_separated_system_has_no_mono_source_of_evaluations() {
        let budget = Budget::default();
        // Two points with identical kappa columns: the evaluation morphisms
        // into the Sierpinski system cannot tell the points apart.
        let free = crate::free::free_on_one(Variety::Frame).unwrap();
        let doubled = Arc::new(
            AffineSystem::new(
                frame2(),
                vec!["p".into(), "q".into()],
                free.algebra,
                vec![
                    vec![Elem(0), Elem(0)],
                    vec![Elem(1), Elem(1)],
                    vec![Elem(1), Elem(1)],
                ],
                &budget,
            )
            .unwrap(),
        );
        let s = crate::system::sierpinski::sierpinski_system(&frame2(), &budget).unwrap();
        let family: Vec<SystemMorphism> = doubled
            .algebra
            .elems()
            .map(|a| {
                crate::system::sierpinski::canonical_morphism_to_s(&doubled, &s, a).unwrap()
            })
            .collect();
        let one = Arc::new(
            AffineSystem::new(
                frame2(),
                vec!["p".into()],
                catalog::chain(Variety::Frame, 2),
                vec![vec![Elem(0)], vec![Elem(1)]],
                &budget,
            )
            .unwrap(),
        );
        let mono = mono_source_check(&doubled, &family, &[one], &budget).unwrap();
        assert!(
            !mono.holds(),
            "morphisms landing on the duplicated points are not separated"
        );
    }
}
