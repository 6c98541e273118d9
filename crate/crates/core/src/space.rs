//! Affine spaces: a finite point set with a family of `L`-valued opens.
//!
//! An open is stored extensionally as a table `X -> L` (one entry per
//! point), and a topology is a family of such tables closed under the
//! pointwise operations of the base variety — that is, a subalgebra of
//! `L^X`, but the ambient power is never materialized: closure and
//! validation work table by table. The family carries an induced algebra
//! structure of its own (with the pointwise order), which is what the
//! system layer embeds.
//!
//! For the `set` variety there are no operations, so any non-empty family
//! of tables is a topology.

use crate::algebra::{
    enumerate_homs, is_homomorphism, same_algebra, Elem, FiniteAlgebra, Hom, Variety,
};
use crate::budget::Budget;
use crate::error::Error;
use std::collections::BTreeSet;
use std::sync::Arc;

/// A family of opens over a fixed base and point count: the tables, sorted
/// lexicographically, plus the induced algebra structure on them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenSet {
    tables: Vec<Vec<Elem>>,
    algebra: Arc<FiniteAlgebra>,
}

impl OpenSet {
    pub fn n(&self) -> usize {
        self.tables.len()
    }

    pub fn tables(&self) -> &[Vec<Elem>] {
        &self.tables
    }

    /// The opens as a finite algebra (pointwise order and operations),
    /// named by their tables.
    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn table(&self, o: Elem) -> &[Elem] {
        &self.tables[o.i()]
    }

    /// Look an open up by its table.
    pub fn find(&self, table: &[Elem]) -> Option<Elem> {
        self.tables
            .binary_search_by(|t| t.as_slice().cmp(table))
            .ok()
            .map(|i| Elem(i as u32))
    }
}

/// A finite affine space over `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSpace {
    pub base: Arc<FiniteAlgebra>,
    pub point_names: Vec<String>,
    opens: OpenSet,
}

fn table_name(base: &FiniteAlgebra, table: &[Elem]) -> String {
    let parts: Vec<&str> = table.iter().map(|&v| base.name(v)).collect();
    format!("[{}]", parts.join(","))
}

/// Close `seed` under the pointwise operations of the base variety.
fn pointwise_closure(
    base: &FiniteAlgebra,
    points: usize,
    seed: &[Vec<Elem>],
    budget: &Budget,
) -> Result<Vec<Vec<Elem>>, Error> {
    let mut present: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let mut queue: Vec<Vec<Elem>> = Vec::new();
    let push = |t: Vec<Elem>, present: &mut BTreeSet<Vec<Elem>>, queue: &mut Vec<Vec<Elem>>| {
        if !present.contains(&t) {
            present.insert(t.clone());
            queue.push(t);
        }
    };
    for &c in base.variety().constants() {
        push(vec![base.constant(c); points], &mut present, &mut queue);
    }
    for t in seed {
        push(t.clone(), &mut present, &mut queue);
    }
    let ops = base.variety().binary_ops();
    while let Some(t) = queue.pop() {
        budget.carrier("pointwise closure of opens", present.len() as u64)?;
        if base.variety().has_complement() {
            let c: Vec<Elem> = t.iter().map(|&v| base.compl(v)).collect();
            push(c, &mut present, &mut queue);
        }
        if ops.is_empty() {
            continue;
        }
        // Pair the new table with everything present so far (itself
        // included); iterate over a snapshot to keep the borrow simple.
        let snapshot: Vec<Vec<Elem>> = present.iter().cloned().collect();
        for u in &snapshot {
            for &op in ops {
                let a: Vec<Elem> = t
                    .iter()
                    .zip(u)
                    .map(|(&x, &y)| base.apply(op, x, y))
                    .collect();
                push(a, &mut present, &mut queue);
                let b: Vec<Elem> = u
                    .iter()
                    .zip(&t)
                    .map(|(&x, &y)| base.apply(op, x, y))
                    .collect();
                push(b, &mut present, &mut queue);
            }
        }
    }
    Ok(present.into_iter().collect())
}

/// Check that `tables` (sorted, deduplicated) is already closed; reports
/// the first missing composite.
fn check_closed(base: &FiniteAlgebra, points: usize, tables: &[Vec<Elem>]) -> Result<(), Error> {
    let find = |t: &[Elem]| tables.binary_search_by(|u| u.as_slice().cmp(t)).is_ok();
    for &c in base.variety().constants() {
        let t = vec![base.constant(c); points];
        if !find(&t) {
            return Err(Error::NotASubalgebra {
                op: c.name(),
                witness: format!("the constant {} is missing", table_name(base, &t)),
            });
        }
    }
    for t in tables {
        if base.variety().has_complement() {
            let c: Vec<Elem> = t.iter().map(|&v| base.compl(v)).collect();
            if !find(&c) {
                return Err(Error::NotASubalgebra {
                    op: "complement",
                    witness: format!(
                        "complement of {} is {}, not an open",
                        table_name(base, t),
                        table_name(base, &c)
                    ),
                });
            }
        }
        for u in tables {
            for &op in base.variety().binary_ops() {
                let a: Vec<Elem> = t
                    .iter()
                    .zip(u)
                    .map(|(&x, &y)| base.apply(op, x, y))
                    .collect();
                if !find(&a) {
                    return Err(Error::NotASubalgebra {
                        op: op.name(),
                        witness: format!(
                            "{}({}, {}) = {} is not an open",
                            op.name(),
                            table_name(base, t),
                            table_name(base, u),
                            table_name(base, &a)
                        ),
                    });
                }
            }
        }
    }
    Ok(())
}

fn induced_algebra(
    base: &Arc<FiniteAlgebra>,
    tables: &[Vec<Elem>],
) -> Result<Arc<FiniteAlgebra>, Error> {
    let n = tables.len();
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    let names: Vec<String> = tables.iter().map(|t| table_name(base, t)).collect();
    if base.variety() == Variety::Set {
        return FiniteAlgebra::validate(
            Variety::Set,
            names,
            Vec::new(),
            None,
            None,
            &Budget {
                max_validate_carrier: n.max(1),
                ..Budget::default()
            },
        );
    }
    let mut le = vec![false; n * n];
    for (i, t) in tables.iter().enumerate() {
        for (j, u) in tables.iter().enumerate() {
            le[i * n + j] = t.iter().zip(u).all(|(&x, &y)| base.le(x, y));
        }
    }
    let (tensor, unit) = if base.variety() == Variety::UQuant {
        let find = |t: &[Elem]| -> u32 {
            tables
                .binary_search_by(|u| u.as_slice().cmp(t))
                .expect("closure guarantees pointwise tensors are present") as u32
        };
        let mut tab = vec![0u32; n * n];
        for (i, t) in tables.iter().enumerate() {
            for (j, u) in tables.iter().enumerate() {
                let prod: Vec<Elem> = t
                    .iter()
                    .zip(u)
                    .map(|(&x, &y)| base.tensor_at(x, y))
                    .collect();
                tab[i * n + j] = find(&prod);
            }
        }
        let unit_table = vec![base.unit(); tables[0].len()];
        (Some(tab), Some(Elem(find(&unit_table))))
    } else {
        (None, None)
    };
    Ok(FiniteAlgebra::assemble_from_le(
        base.variety(),
        names,
        le,
        tensor,
        unit,
    ))
}

impl AffineSpace {
    /// Build a space from raw tables. Tables are deduplicated and sorted;
    /// with `autoclose` they are completed to a topology, otherwise a
    /// missing composite is an error.
    pub fn new(
        base: Arc<FiniteAlgebra>,
        point_names: Vec<String>,
        tables: Vec<Vec<Elem>>,
        autoclose: bool,
        budget: &Budget,
    ) -> Result<AffineSpace, Error> {
        let points = point_names.len();
        for (i, name) in point_names.iter().enumerate() {
            if point_names[..i].contains(name) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        for t in &tables {
            if t.len() != points {
                return Err(Error::Invalid(format!(
                    "an open has {} entries for {} points",
                    t.len(),
                    points
                )));
            }
            if let Some(&v) = t.iter().find(|v| v.i() >= base.n()) {
                return Err(Error::Invalid(format!(
                    "open value {v} out of range for the base carrier"
                )));
            }
        }
        let tables = if autoclose {
            pointwise_closure(&base, points, &tables, budget)?
        } else {
            let mut tables = tables;
            tables.sort();
            tables.dedup();
            budget.carrier("opens", tables.len() as u64)?;
            check_closed(&base, points, &tables)?;
            tables
        };
        let algebra = induced_algebra(&base, &tables)?;
        Ok(AffineSpace {
            base,
            point_names,
            opens: OpenSet { tables, algebra },
        })
    }

    pub fn n_points(&self) -> usize {
        self.point_names.len()
    }

    pub fn opens(&self) -> &OpenSet {
        &self.opens
    }

    pub fn point_index(&self, name: &str) -> Option<usize> {
        self.point_names.iter().position(|n| n == name)
    }

    /// The value of open `o` at point `x`.
    pub fn value_at(&self, o: Elem, x: usize) -> Elem {
        self.opens.tables[o.i()][x]
    }
}

/// The Sierpinski space over `base`: its points are the elements of the
/// base itself, and its opens are the closure of the single identity table
/// `x -> x` under the pointwise operations.
pub fn sierpinski_space(base: &Arc<FiniteAlgebra>, budget: &Budget) -> Result<AffineSpace, Error> {
    let identity: Vec<Elem> = base.elems().collect();
    AffineSpace::new(
        Arc::clone(base),
        base.names().to_vec(),
        vec![identity],
        true,
        budget,
    )
}

/// The table of `t ∘ f` for a point map `f` into the space carrying `t`.
pub fn pullback_table(t: &[Elem], f: &[usize]) -> Vec<Elem> {
    f.iter().map(|&y| t[y]).collect()
}

/// Is the point map `f: source -> target` continuous, i.e. does every open
/// of the target pull back to an open of the source?
pub fn is_continuous(
    f: &[usize],
    source: &AffineSpace,
    target: &AffineSpace,
) -> Result<(), Error> {
    if !same_algebra(&source.base, &target.base) {
        return Err(Error::Mismatch("spaces over different bases".into()));
    }
    if f.len() != source.n_points() {
        return Err(Error::Mismatch(format!(
            "point map has {} entries for {} points",
            f.len(),
            source.n_points()
        )));
    }
    if let Some(&bad) = f.iter().find(|&&y| y >= target.n_points()) {
        return Err(Error::Invalid(format!("point map value {bad} out of range")));
    }
    for t in target.opens.tables() {
        let pulled = pullback_table(t, f);
        if source.opens.find(&pulled).is_none() {
            return Err(Error::NotContinuous {
                open: table_name(&target.base, t),
            });
        }
    }
    Ok(())
}

/// A continuous map between affine spaces over one base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceMap {
    pub source: Arc<AffineSpace>,
    pub target: Arc<AffineSpace>,
    pub point_map: Vec<usize>,
}

impl SpaceMap {
    pub fn new(
        source: Arc<AffineSpace>,
        target: Arc<AffineSpace>,
        point_map: Vec<usize>,
    ) -> Result<SpaceMap, Error> {
        is_continuous(&point_map, &source, &target)?;
        Ok(SpaceMap {
            source,
            target,
            point_map,
        })
    }

    pub fn then(&self, g: &SpaceMap) -> Result<SpaceMap, Error> {
        if *g.source != *self.target {
            return Err(Error::Mismatch("composition endpoints differ".into()));
        }
        SpaceMap::new(
            Arc::clone(&self.source),
            Arc::clone(&g.target),
            self.point_map.iter().map(|&x| g.point_map[x]).collect(),
        )
    }
}

/// All continuous point maps from `source` to `target`.
pub fn enumerate_continuous_maps(
    source: &AffineSpace,
    target: &AffineSpace,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>, Error> {
    let nx = source.n_points();
    let ny = target.n_points();
    let total = (ny as u64).checked_pow(nx as u32).unwrap_or(u64::MAX);
    if total > budget.max_search_nodes {
        return Err(Error::BudgetExceeded {
            what: "continuous-map enumeration",
            needed: total,
            cap: budget.max_search_nodes,
        });
    }
    let mut out = Vec::new();
    let mut f = vec![0usize; nx];
    loop {
        if is_continuous(&f, source, target).is_ok() {
            out.push(f.clone());
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

/// Direct separation check: two points are indistinguishable when every
/// open takes the same value on both.
pub fn is_t0_space(space: &AffineSpace) -> (bool, Option<(usize, usize)>) {
    let n = space.n_points();
    for x in 0..n {
        for y in x + 1..n {
            if space.opens.tables().iter().all(|t| t[x] == t[y]) {
                return (false, Some((x, y)));
            }
        }
    }
    (true, None)
}

/// How a space compares with the points of its own topology: each point
/// `x` evaluates to a homomorphism `opens -> base`, and the space is sober
/// when that assignment is a bijection onto all such homomorphisms.
#[derive(Debug, Clone)]
pub struct SoberSpaceReport {
    /// No two points evaluate identically (equivalent to the direct
    /// separation check, and asserted against it).
    pub injective: bool,
    pub collision: Option<(usize, usize)>,
    /// Every homomorphism from the opens to the base is an evaluation.
    pub surjective: bool,
    /// A homomorphism not realized by any point, if one exists.
    pub unrealized: Option<Hom>,
    /// Total number of points of the topology.
    pub points_of_opens: usize,
}

impl SoberSpaceReport {
    pub fn sober(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Evaluation of the opens at point `x`, as a homomorphism into the base.
pub fn evaluation_at(space: &AffineSpace, x: usize) -> Hom {
    let opens = space.opens();
    let map: Vec<Elem> = opens.tables().iter().map(|t| t[x]).collect();
    let h = Hom::new(
        Arc::clone(opens.algebra()),
        Arc::clone(&space.base),
        map,
    );
    debug_assert!(
        is_homomorphism(&h).is_ok(),
        "pointwise structure makes evaluations homomorphisms"
    );
    h
}

pub fn sober_space_report(space: &AffineSpace, budget: &Budget) -> Result<SoberSpaceReport, Error> {
    let evs: Vec<Hom> = (0..space.n_points()).map(|x| evaluation_at(space, x)).collect();
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
    // Cross-check against the direct separation scan: the two must agree.
    let (t0, witness) = is_t0_space(space);
    if t0 != injective {
        return Err(Error::Mismatch(format!(
            "separation scan ({t0}, witness {witness:?}) disagrees with evaluation injectivity ({injective})"
        )));
    }
    let all = enumerate_homs(space.opens().algebra(), &space.base, budget)?;
    let unrealized = all
        .iter()
        .find(|h| !evs.iter().any(|e| e.map == h.map))
        .cloned();
    Ok(SoberSpaceReport {
        injective,
        collision,
        surjective: unrealized.is_none(),
        unrealized,
        points_of_opens: all.len(),
    })
}

/// The audit of the canonical map from a space into the power of the
/// Sierpinski space indexed by the space's own opens: the point `x` goes to
/// the tuple `(t(x))` over all opens `t`. The map is always continuous with
/// open image structure (both are audited anyway, through the generating
/// opens of the power), and it is an embedding exactly when the space is
/// separated.
#[derive(Debug, Clone)]
pub struct CanonicalSpaceEmbedding {
    /// `image[x]` is the tuple of values of all opens at `x` — the
    /// coordinates of `x` in the power of the Sierpinski space.
    pub image: Vec<Vec<Elem>>,
    pub injective: bool,
    pub collision: Option<(usize, usize)>,
    /// Every generating open of the power pulls back to an open: the pairs
    /// (Sierpinski open, coordinate open) checked, and any failures.
    pub generator_pullbacks_checked: usize,
    pub pullback_failures: Vec<String>,
    /// Every open of the space is itself the pullback of a coordinate
    /// projection (witnessing that the topology is exactly the initial
    /// one).
    pub opens_are_pullbacks: bool,
}

impl CanonicalSpaceEmbedding {
    pub fn embedding(&self) -> bool {
        self.injective && self.pullback_failures.is_empty() && self.opens_are_pullbacks
    }
}

pub fn canonical_space_embedding(
    space: &AffineSpace,
    budget: &Budget,
) -> Result<CanonicalSpaceEmbedding, Error> {
    let sierpinski = sierpinski_space(&space.base, budget)?;
    let tau = space.opens();
    let image: Vec<Vec<Elem>> = (0..space.n_points())
        .map(|x| tau.tables().iter().map(|t| t[x]).collect())
        .collect();
    let mut collision = None;
    'outer: for x in 0..image.len() {
        for y in x + 1..image.len() {
            if image[x] == image[y] {
                collision = Some((x, y));
                break 'outer;
            }
        }
    }
    // The opens of the power are generated by `s ∘ projection_t` for `s` an
    // open of the Sierpinski space and `t` an open of this space; composing
    // with the canonical map gives `x -> s(t(x))`, which must be open here.
    // (It is: `s` is a term in the identity table, so `s ∘ t` is the same
    // term applied to `t`, and the topology is closed under terms.)
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for s in sierpinski.opens().tables() {
        for t in tau.tables() {
            checked += 1;
            let pulled: Vec<Elem> = t.iter().map(|&v| s[v.i()]).collect();
            if tau.find(&pulled).is_none() {
                failures.push(format!(
                    "{} composed with {} is {}, not an open",
                    table_name(&space.base, s),
                    table_name(&space.base, t),
                    table_name(&space.base, &pulled)
                ));
            }
        }
    }
    // Conversely every open is the pullback of its own coordinate (the
    // identity is a Sierpinski open), so the topology is initial.
    let identity: Vec<Elem> = space.base.elems().collect();
    let opens_are_pullbacks = sierpinski.opens().find(&identity).is_some();
    Ok(CanonicalSpaceEmbedding {
        image,
        injective: collision.is_none(),
        collision,
        generator_pullbacks_checked: checked,
        pullback_failures: failures,
        opens_are_pullbacks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn frame2() -> Arc<FiniteAlgebra> {
        catalog::chain(Variety::Frame, 2)
    }

    #[test]
    fn sierpinski_space_over_the_two_chain_is_the_classical_one() {
        let budget = Budget::default();
        let s = sierpinski_space(&frame2(), &budget).unwrap();
        assert_eq!(s.point_names, ["bot", "top"]);
        // Opens: empty, {top}, everything.
        let tables: Vec<Vec<Elem>> = vec![
            vec![Elem(0), Elem(0)],
            vec![Elem(0), Elem(1)],
            vec![Elem(1), Elem(1)],
        ];
        assert_eq!(s.opens().tables(), tables.as_slice());
        assert_eq!(s.opens().algebra().names(), ["[bot,bot]", "[bot,top]", "[top,top]"]);
        let (t0, _) = is_t0_space(&s);
        assert!(t0);
        let report = sober_space_report(&s, &budget).unwrap();
        assert!(report.sober());
    }

    #[test]
    fn sierpinski_opens_counts_per_variety() {
        // The closure of the identity table has a characteristic size in
        // each variety over its default base.
        let budget = Budget::default();
        let cases = [
            (catalog::set_algebra(2), 1usize),
            (catalog::chain(Variety::SupSl, 2), 2),
            (catalog::chain(Variety::Frame, 2), 3),
            (catalog::boolean(1), 4),
            (catalog::lukasiewicz(3), 4),
        ];
        for (base, expect) in cases {
            let s = sierpinski_space(&base, &budget).unwrap();
            assert_eq!(
                s.opens().n(),
                expect,
                "opens of the Sierpinski space over {}",
                base.variety()
            );
        }
        // Over the three-valued Lukasiewicz chain the opens are exactly
        // bottom, the square of the identity, the identity, and the unit.
        let s = sierpinski_space(&catalog::lukasiewicz(3), &budget).unwrap();
        let names = s.opens().algebra().names();
        assert_eq!(names, ["[0,0,0]", "[0,0,1]", "[0,1/2,1]", "[1,1,1]"]);
    }

    #[test]
    fn closure_in_a_boolean_base_adds_complements() {
        let budget = Budget::default();
        let base = catalog::boolean(1);
        let space = AffineSpace::new(
            Arc::clone(&base),
            vec!["x".into(), "y".into()],
            vec![vec![Elem(0), Elem(1)]],
            true,
            &budget,
        )
        .unwrap();
        // χ and its complement, plus the two constants.
        assert_eq!(space.opens().n(), 4);
        // The same tables without autoclose are rejected with a witness.
        let err = AffineSpace::new(
            Arc::clone(&base),
            vec!["x".into(), "y".into()],
            vec![
                vec![Elem(0), Elem(1)],
                vec![Elem(0), Elem(0)],
                vec![Elem(1), Elem(1)],
            ],
            false,
            &budget,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotASubalgebra { op: "complement", .. }));
    }

    #[test]
    fn continuous_selfmaps_of_the_sierpinski_space() {
        let budget = Budget::default();
        let s = sierpinski_space(&frame2(), &budget).unwrap();
        let maps = enumerate_continuous_maps(&s, &s, &budget).unwrap();
        // Identity and the two constants; the swap drags the open point
        // below the closed one and is not continuous.
        assert_eq!(maps.len(), 3);
        assert!(maps.contains(&vec![0, 1]));
        assert!(maps.contains(&vec![0, 0]));
        assert!(maps.contains(&vec![1, 1]));
        let swap = vec![1usize, 0];
        let err = is_continuous(&swap, &s, &s).unwrap_err();
        assert!(matches!(err, Error::NotContinuous { .. }));
    }

    #[test]
    fn indiscrete_spaces_are_not_separated() {
        let budget = Budget::default();
        let space = AffineSpace::new(
            frame2(),
            vec!["x".into(), "y".into()],
            vec![],
            true,
            &budget,
        )
        .unwrap();
        assert_eq!(space.opens().n(), 2); // just the two constants
        let (t0, witness) = is_t0_space(&space);
        assert!(!t0);
        assert_eq!(witness, Some((0, 1)));
        let report = sober_space_report(&space, &budget).unwrap();
        assert!(!report.injective);
        assert!(!report.sober());
        let emb = canonical_space_embedding(&space, &budget).unwrap();
        assert!(!emb.injective && !emb.embedding());
        assert!(emb.pullback_failures.is_empty());
    }

    #[test]
    fn a_separated_space_that_is_not_sober() {
        // One point carrying the full three-chain of opens: evaluation is
        // injective, but the opens have three points (the three-chain is
        // freely generated by its middle element) and only one is realized.
        let budget = Budget::default();
        let base = catalog::chain(Variety::Frame, 3);
        let space = AffineSpace::new(
            Arc::clone(&base),
            vec!["x".into()],
            vec![vec![Elem(0)], vec![Elem(1)], vec![Elem(2)]],
            false,
            &budget,
        )
        .unwrap();
        let report = sober_space_report(&space, &budget).unwrap();
        assert!(report.injective);
        assert!(!report.surjective, "three points of opens, one realized");
        assert_eq!(report.points_of_opens, 3);
        assert!(report.unrealized.is_some());
    }

    #[test]
    fn canonical_embedding_into_the_sierpinski_power() {
        let budget = Budget::default();
        // A three-point space over the two-chain with opens {}, {z}, {y,z},
        // {x,y,z}: a T0 chain-like space.
        let tables = vec![
            vec![Elem(0), Elem(0), Elem(0)],
            vec![Elem(0), Elem(0), Elem(1)],
            vec![Elem(0), Elem(1), Elem(1)],
            vec![Elem(1), Elem(1), Elem(1)],
        ];
        let space = AffineSpace::new(
            frame2(),
            vec!["x".into(), "y".into(), "z".into()],
            tables,
            false,
            &budget,
        )
        .unwrap();
        let emb = canonical_space_embedding(&space, &budget).unwrap();
        assert!(emb.embedding());
        // Coordinates are strictly increasing along the specialization
        // order, hence pairwise distinct.
        assert_eq!(emb.image.len(), 3);
        assert_eq!(emb.generator_pullbacks_checked, 3 * 4);
        // Dropping the separating opens breaks injectivity but not
        // continuity.
        let indiscrete = AffineSpace::new(
            frame2(),
            vec!["x".into(), "y".into(), "z".into()],
            vec![],
            true,
            &budget,
        )
        .unwrap();
        let emb = canonical_space_embedding(&indiscrete, &budget).unwrap();
        assert!(!emb.injective);
        assert!(emb.pullback_failures.is_empty());
    }

    #[test]
    fn space_maps_compose_when_continuous() {
        let budget = Budget::default();
        let s = Arc::new(sierpinski_space(&frame2(), &budget).unwrap());
        let id = SpaceMap::new(Arc::clone(&s), Arc::clone(&s), vec![0, 1]).unwrap();
        let cbot = SpaceMap::new(Arc::clone(&s), Arc::clone(&s), vec![0, 0]).unwrap();
        let both = id.then(&cbot).unwrap();
        assert_eq!(both.point_map, vec![0, 0]);
        assert!(SpaceMap::new(Arc::clone(&s), Arc::clone(&s), vec![1, 0]).is_err());
    }

    #[test]
    fn malformed_spaces_are_rejected() {
        let budget = Budget::default();
        let base = frame2();
        // Ragged table.
        assert!(AffineSpace::new(
            Arc::clone(&base),
            vec!["x".into(), "y".into()],
            vec![vec![Elem(0)]],
            true,
            &budget
        )
        .is_err());
        // Out-of-range value.
        assert!(AffineSpace::new(
            Arc::clone(&base),
            vec!["x".into()],
            vec![vec![Elem(7)]],
            true,
            &budget
        )
        .is_err());
        // Duplicate point names.
        assert!(matches!(
            AffineSpace::new(
                Arc::clone(&base),
                vec!["x".into(), "x".into()],
                vec![],
                true,
                &budget
            ),
            Err(Error::DuplicateName(_))
        ));
        // Set-variety spaces need at least one open to carry an algebra.
        assert!(matches!(
            AffineSpace::new(catalog::set_algebra(2), vec!["x".into()], vec![], true, &budget),
            Err(Error::EmptyCarrier)
        ));
    }

    #[test]
    fn quantale_opens_close_under_the_tensor() {
        let budget = Budget::default();
        let l3 = catalog::lukasiewicz(3);
        let space = AffineSpace::new(
            Arc::clone(&l3),
            vec!["x".into()],
            vec![vec![Elem(1)]],
            true,
            &budget,
        )
        .unwrap();
        // 1/2 tensored with itself gives 0; with the unit present the
        // closure is {0, 1/2, 1} as one-point tables.
        assert_eq!(space.opens().n(), 3);
        let alg = space.opens().algebra();
        assert_eq!(alg.variety(), Variety::UQuant);
        assert!(alg.is_integral());
    }
}
