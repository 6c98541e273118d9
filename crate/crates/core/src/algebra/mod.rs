//! Finite algebras of the five supported varieties, and their homomorphisms.
//!
//! A [`FiniteAlgebra`] is a named carrier together with an explicit order
//! relation and, where the variety demands it, a tensor with unit. All other
//! structure (join and meet tables, bottom, top, Boolean complements) is
//! derived once at construction time and cached. Two construction paths
//! exist: [`FiniteAlgebra::validate`] checks every axiom exhaustively and
//! reports the first failing instance with a witness, while the crate-private
//! assembly path is used by constructions that are correct by design (powers,
//! products, down-set lattices, subalgebras); invariant tests re-validate the
//! trusted constructions at small sizes.
//!
//! Operations of each variety, used uniformly by the closure, preservation,
//! and enumeration machinery:
//!
//! | variety  | constants        | operations                |
//! |----------|------------------|---------------------------|
//! | `set`    | —                | —                         |
//! | `supsl`  | bottom           | join                      |
//! | `frame`  | bottom, top      | join, meet                |
//! | `cbalg`  | bottom, top      | join, meet, complement    |
//! | `uquant` | bottom, unit     | join, tensor              |
//!
//! Finiteness makes "all joins" equal to "binary joins plus bottom", and a
//! finite poset with all finite joins automatically has all meets; both facts
//! are relied on throughout.

mod birkhoff;
mod enumerate;
mod power;
mod subalgebra;

pub use birkhoff::{birkhoff_iso, downset_frame, downsets, join_irreducibles, DownsetFrame, Poset};
pub use enumerate::{enumerate_homs, enumerate_homs_naive, generating_set};
pub use power::{power_algebra, product_algebras, PowerAlgebra, ProductAlgebra};
pub use subalgebra::{generated_subalgebra, subalgebra_from_members, Subalgebra};

use crate::budget::Budget;
use crate::error::Error;
use std::fmt;
use std::sync::Arc;

/// Index of an element in an algebra's carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    #[inline]
    pub fn i(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// The five supported varieties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variety {
    /// Plain sets: no operations, every map is a homomorphism.
    Set,
    /// Join-semilattices with bottom; homomorphisms preserve bottom and join.
    SupSl,
    /// Frames; homomorphisms preserve bottom, top, join, and meet.
    Frame,
    /// (Complete) Boolean algebras; frame preservation plus complement.
    CBAlg,
    /// Unital quantales; homomorphisms preserve bottom, join, tensor, unit.
    UQuant,
}

impl Variety {
    pub const ALL: [Variety; 5] = [
        Variety::Set,
        Variety::SupSl,
        Variety::Frame,
        Variety::CBAlg,
        Variety::UQuant,
    ];

    /// The canonical short name, also used by the CLI and document formats.
    pub fn tag(self) -> &'static str {
        match self {
            Variety::Set => "set",
            Variety::SupSl => "supsl",
            Variety::Frame => "frame",
            Variety::CBAlg => "cbalg",
            Variety::UQuant => "uquant",
        }
    }

    pub fn parse(s: &str) -> Option<Variety> {
        Variety::ALL.into_iter().find(|v| v.tag() == s)
    }

    /// Does the variety carry an order at all?
    pub fn is_ordered(self) -> bool {
        self != Variety::Set
    }

    /// Binary operations homomorphisms of this variety must preserve.
    pub fn binary_ops(self) -> &'static [Op] {
        match self {
            Variety::Set => &[],
            Variety::SupSl => &[Op::Join],
            Variety::Frame => &[Op::Join, Op::Meet],
            Variety::CBAlg => &[Op::Join, Op::Meet],
            Variety::UQuant => &[Op::Join, Op::Tensor],
        }
    }

    /// Does the variety have the unary complement operation?
    pub fn has_complement(self) -> bool {
        self == Variety::CBAlg
    }

    /// Constants homomorphisms of this variety must preserve.
    pub fn constants(self) -> &'static [Const] {
        match self {
            Variety::Set => &[],
            Variety::SupSl => &[Const::Bottom],
            Variety::Frame => &[Const::Bottom, Const::Top],
            Variety::CBAlg => &[Const::Bottom, Const::Top],
            Variety::UQuant => &[Const::Bottom, Const::Unit],
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A binary operation of some variety.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Join,
    Meet,
    Tensor,
}

impl Op {
    pub fn name(self) -> &'static str {
        match self {
            Op::Join => "join",
            Op::Meet => "meet",
            Op::Tensor => "tensor",
        }
    }
}

/// A constant (nullary operation) of some variety.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Const {
    Bottom,
    Top,
    Unit,
}

impl Const {
    pub fn name(self) -> &'static str {
        match self {
            Const::Bottom => "bottom",
            Const::Top => "top",
            Const::Unit => "unit",
        }
    }
}

/// A finite algebra of one of the supported varieties.
///
/// Tables are flat, row-major, indexed by `a.i() * n + b.i()`. For the `set`
/// variety all tables are empty. Equality is structural (names included),
/// which is what the identity laws in the test suites compare.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    variety: Variety,
    names: Vec<String>,
    le: Vec<bool>,
    join: Vec<u32>,
    meet: Vec<u32>,
    bottom: Option<Elem>,
    top: Option<Elem>,
    complement: Option<Vec<u32>>,
    tensor: Option<Vec<u32>>,
    unit: Option<Elem>,
}

impl FiniteAlgebra {
    /// Number of elements.
    #[inline]
    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.names[e.i()]
    }

    /// All elements, in carrier order.
    pub fn elems(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.names.len() as u32).map(Elem)
    }

    pub fn elem_by_name(&self, name: &str) -> Option<Elem> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| Elem(i as u32))
    }

    #[inline]
    pub fn le(&self, a: Elem, b: Elem) -> bool {
        debug_assert!(self.variety.is_ordered());
        self.le[a.i() * self.n() + b.i()]
    }

    #[inline]
    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.join[a.i() * self.n() + b.i()])
    }

    #[inline]
    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.meet[a.i() * self.n() + b.i()])
    }

    pub fn bottom(&self) -> Elem {
        self.bottom.expect("ordered variety has a bottom")
    }

    pub fn top(&self) -> Elem {
        self.top.expect("ordered variety has a top")
    }

    pub fn compl(&self, a: Elem) -> Elem {
        Elem(self.complement.as_ref().expect("Boolean algebra")[a.i()])
    }

    pub fn tensor_at(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.tensor.as_ref().expect("quantale")[a.i() * self.n() + b.i()])
    }

    pub fn unit(&self) -> Elem {
        self.unit.expect("quantale has a unit")
    }

    /// Is the quantale integral (unit equals top)?
    pub fn is_integral(&self) -> bool {
        self.unit == self.top && self.unit.is_some()
    }

    /// Apply a binary operation of the variety.
    #[inline]
    pub fn apply(&self, op: Op, a: Elem, b: Elem) -> Elem {
        match op {
            Op::Join => self.join(a, b),
            Op::Meet => self.meet(a, b),
            Op::Tensor => self.tensor_at(a, b),
        }
    }

    /// Resolve a constant of the variety.
    pub fn constant(&self, c: Const) -> Elem {
        match c {
            Const::Bottom => self.bottom(),
            Const::Top => self.top(),
            Const::Unit => self.unit(),
        }
    }

    /// Fold the join over an iterator, starting from bottom.
    pub fn join_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.bottom(), |acc, e| self.join(acc, e))
    }

    /// Fold the meet over an iterator, starting from top.
    pub fn meet_all(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(self.top(), |acc, e| self.meet(acc, e))
    }

    /// `a^k` in a quantale, with `a^0` the unit.
    pub fn tensor_power(&self, a: Elem, k: u32) -> Elem {
        let mut acc = self.unit();
        for _ in 0..k {
            acc = self.tensor_at(acc, a);
        }
        acc
    }

    /// View this algebra in a (usually poorer) variety, re-running the full
    /// axiom check for the target. The order is kept; tensor and unit are
    /// kept exactly when the target needs them. Fails if the carrier does
    /// not satisfy the target variety's axioms (e.g. a non-distributive
    /// lattice viewed as a frame) or if the target needs structure this
    /// algebra lacks.
    pub fn reduct(
        self: &Arc<Self>,
        variety: Variety,
        budget: &Budget,
    ) -> Result<Arc<FiniteAlgebra>, Error> {
        if variety == self.variety {
            return Ok(Arc::clone(self));
        }
        let le = if variety == Variety::Set {
            Vec::new()
        } else {
            if !self.variety.is_ordered() {
                return Err(Error::UnsupportedVariety {
                    op: "reduct of an unordered algebra",
                    variety,
                });
            }
            self.le.clone()
        };
        let (tensor, unit) = if variety == Variety::UQuant {
            match (&self.tensor, self.unit) {
                (Some(t), Some(u)) => (Some(t.clone()), Some(u)),
                _ => {
                    return Err(Error::UnsupportedVariety {
                        op: "reduct without a tensor",
                        variety,
                    })
                }
            }
        } else {
            (None, None)
        };
        FiniteAlgebra::validate(variety, self.names.clone(), le, tensor, unit, budget)
    }

    /// Validate raw data as an algebra of `variety` and build the caches.
    ///
    /// `le` is the full order relation, flat row-major `n * n` (empty for
    /// `set`); `tensor` likewise (required exactly for `uquant`, together
    /// with `unit`). Every axiom of the variety is checked exhaustively and
    /// the first failure is reported with a witness.
    pub fn validate(
        variety: Variety,
        names: Vec<String>,
        le: Vec<bool>,
        tensor: Option<Vec<u32>>,
        unit: Option<Elem>,
        budget: &Budget,
    ) -> Result<Arc<FiniteAlgebra>, Error> {
        let n = names.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if n > budget.max_validate_carrier {
            return Err(Error::BudgetExceeded {
                what: "validate_algebra",
                needed: n as u64,
                cap: budget.max_validate_carrier as u64,
            });
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }

        if variety == Variety::Set {
            if !le.is_empty() || tensor.is_some() || unit.is_some() {
                return Err(Error::Invalid(
                    "set-variety algebras carry no order, tensor, or unit".into(),
                ));
            }
            return Ok(Arc::new(FiniteAlgebra {
                variety,
                names,
                le,
                join: Vec::new(),
                meet: Vec::new(),
                bottom: None,
                top: None,
                complement: None,
                tensor: None,
                unit: None,
            }));
        }

        if le.len() != n * n {
            return Err(Error::Invalid(format!(
                "order relation must have {} entries, got {}",
                n * n,
                le.len()
            )));
        }
        let nm = |i: usize| names[i].clone();
        let at = |a: usize, b: usize| le[a * n + b];

        for a in 0..n {
            if !at(a, a) {
                return Err(Error::NotAPartialOrder {
                    law: "reflexivity",
                    a: nm(a),
                    b: nm(a),
                    c: nm(a),
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && at(a, b) && at(b, a) {
                    return Err(Error::NotAPartialOrder {
                        law: "antisymmetry",
                        a: nm(a),
                        b: nm(b),
                        c: nm(b),
                    });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !at(a, b) {
                    continue;
                }
                for c in 0..n {
                    if at(b, c) && !at(a, c) {
                        return Err(Error::NotAPartialOrder {
                            law: "transitivity",
                            a: nm(a),
                            b: nm(b),
                            c: nm(c),
                        });
                    }
                }
            }
        }

        // Empty join: a least element must exist.
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| at(b, x)))
            .map(|b| Elem(b as u32))
            .ok_or(Error::MissingJoin { elements: vec![] })?;

        // Binary joins: least upper bounds must exist for every pair. With
        // those in hand, finiteness gives all joins, and all meets too (the
        // meet of a pair is the join of its common lower bounds).
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let lub = (0..n)
                    .filter(|&x| at(a, x) && at(b, x))
                    .find(|&x| (0..n).all(|y| !(at(a, y) && at(b, y)) || at(x, y)));
                match lub {
                    Some(x) => join[a * n + b] = x as u32,
                    None => {
                        return Err(Error::MissingJoin {
                            elements: vec![nm(a), nm(b)],
                        })
                    }
                }
            }
        }
        let top = {
            let mut t = bottom.i();
            for x in 0..n {
                t = join[t * n + x] as usize;
            }
            Elem(t as u32)
        };
        let mut meet = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                // Join of the common lower bounds; see the note above for why
                // this is always the greatest lower bound once joins exist.
                let mut z = bottom.i();
                for x in 0..n {
                    if at(x, a) && at(x, b) {
                        z = join[z * n + x] as usize;
                    }
                }
                debug_assert!(at(z, a) && at(z, b));
                meet[a * n + b] = z as u32;
            }
        }

        if matches!(variety, Variety::Frame | Variety::CBAlg) {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let lhs = meet[a * n + join[b * n + c] as usize];
                        let rhs = join[(meet[a * n + b] as usize) * n + meet[a * n + c] as usize];
                        if lhs != rhs {
                            return Err(Error::DistributivityFailure {
                                a: nm(a),
                                b: nm(b),
                                c: nm(c),
                            });
                        }
                    }
                }
            }
        }

        let complement = if variety == Variety::CBAlg {
            let mut table = vec![0u32; n];
            for a in 0..n {
                let mut found: Option<usize> = None;
                for x in 0..n {
                    if join[a * n + x] as usize == top.i() && meet[a * n + x] as usize == bottom.i()
                    {
                        if let Some(first) = found {
                            return Err(Error::ComplementFailure {
                                element: nm(a),
                                detail: format!(
                                    "ambiguous complements {:?} and {:?}",
                                    names[first], names[x]
                                ),
                            });
                        }
                        found = Some(x);
                    }
                }
                match found {
                    Some(x) => table[a] = x as u32,
                    None => {
                        return Err(Error::ComplementFailure {
                            element: nm(a),
                            detail: "no complement".into(),
                        })
                    }
                }
            }
            Some(table)
        } else {
            None
        };

        let (tensor, unit) = if variety == Variety::UQuant {
            let t = tensor.ok_or_else(|| Error::Invalid("quantale requires a tensor table".into()))?;
            if t.len() != n * n {
                return Err(Error::Invalid(format!(
                    "tensor table must have {} entries, got {}",
                    n * n,
                    t.len()
                )));
            }
            if let Some(bad) = t.iter().find(|&&v| v as usize >= n) {
                return Err(Error::Invalid(format!("tensor value {bad} out of range")));
            }
            let u = unit.ok_or_else(|| Error::Invalid("quantale requires a unit".into()))?;
            if u.i() >= n {
                return Err(Error::Invalid("unit out of range".into()));
            }
            let tn = |a: usize, b: usize| t[a * n + b] as usize;
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if tn(tn(a, b), c) != tn(a, tn(b, c)) {
                            return Err(Error::TensorAxiomFailure {
                                law: "associativity",
                                a: nm(a),
                                b: nm(b),
                                c: nm(c),
                            });
                        }
                    }
                }
            }
            for a in 0..n {
                if tn(a, u.i()) != a || tn(u.i(), a) != a {
                    return Err(Error::TensorAxiomFailure {
                        law: "unit",
                        a: nm(a),
                        b: nm(u.i()),
                        c: nm(a),
                    });
                }
                // Distribution over the empty join.
                if tn(a, bottom.i()) != bottom.i() || tn(bottom.i(), a) != bottom.i() {
                    return Err(Error::TensorAxiomFailure {
                        law: "annihilation-by-bottom",
                        a: nm(a),
                        b: nm(bottom.i()),
                        c: nm(a),
                    });
                }
            }
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let bc = join[b * n + c] as usize;
                        if tn(a, bc) != join[tn(a, b) * n + tn(a, c)] as usize {
                            return Err(Error::TensorAxiomFailure {
                                law: "distributivity-left",
                                a: nm(a),
                                b: nm(b),
                                c: nm(c),
                            });
                        }
                        if tn(bc, a) != join[tn(b, a) * n + tn(c, a)] as usize {
                            return Err(Error::TensorAxiomFailure {
                                law: "distributivity-right",
                                a: nm(a),
                                b: nm(b),
                                c: nm(c),
                            });
                        }
                    }
                }
            }
            (Some(t), Some(u))
        } else {
            if tensor.is_some() || unit.is_some() {
                return Err(Error::Invalid(format!(
                    "{variety} algebras carry no tensor or unit"
                )));
            }
            (None, None)
        };

        Ok(Arc::new(FiniteAlgebra {
            variety,
            names,
            le,
            join,
            meet,
            bottom: Some(bottom),
            top: Some(top),
            complement,
            tensor,
            unit,
        }))
    }

    /// Validate from a list of order pairs (by element index); the
    /// reflexive-transitive closure of the pairs is taken first. This is the
    /// document-loading path.
    pub fn from_le_pairs(
        variety: Variety,
        names: Vec<String>,
        pairs: &[(usize, usize)],
        tensor: Option<Vec<u32>>,
        unit: Option<Elem>,
        budget: &Budget,
    ) -> Result<Arc<FiniteAlgebra>, Error> {
        let n = names.len();
        if variety == Variety::Set {
            if !pairs.is_empty() {
                return Err(Error::Invalid("set-variety algebras carry no order".into()));
            }
            return FiniteAlgebra::validate(variety, names, Vec::new(), tensor, unit, budget);
        }
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("order pair ({a}, {b}) out of range")));
            }
            le[a * n + b] = true;
        }
        // Warshall closure.
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
        FiniteAlgebra::validate(variety, names, le, tensor, unit, budget)
    }

    /// Assemble an algebra from parts that are correct by construction
    /// (powers, products, down-set lattices, subalgebras). In debug builds
    /// small instances are re-validated against the exhaustive checker.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        variety: Variety,
        names: Vec<String>,
        le: Vec<bool>,
        join: Vec<u32>,
        meet: Vec<u32>,
        bottom: Option<Elem>,
        top: Option<Elem>,
        complement: Option<Vec<u32>>,
        tensor: Option<Vec<u32>>,
        unit: Option<Elem>,
    ) -> Arc<FiniteAlgebra> {
        let alg = FiniteAlgebra {
            variety,
            names,
            le,
            join,
            meet,
            bottom,
            top,
            complement,
            tensor,
            unit,
        };
        #[cfg(debug_assertions)]
        {
            if alg.n() <= 64 && !alg.names.is_empty() {
                let check = FiniteAlgebra::validate(
                    alg.variety,
                    alg.names.clone(),
                    alg.le.clone(),
                    alg.tensor.clone(),
                    alg.unit,
                    &Budget::default(),
                )
                .unwrap_or_else(|e| panic!("assembled algebra fails validation: {e}"));
                assert_eq!(*check, alg, "assembled caches disagree with derived ones");
            }
        }
        Arc::new(alg)
    }

    /// Assemble an algebra directly from an order relation, deriving joins
    /// and meets by search. Crate-private: callers guarantee the relation is
    /// a lattice order of the right shape (e.g. restriction to a closed
    /// subset). Panics on constructions that are not.
    pub(crate) fn assemble_from_le(
        variety: Variety,
        names: Vec<String>,
        le: Vec<bool>,
        tensor: Option<Vec<u32>>,
        unit: Option<Elem>,
    ) -> Arc<FiniteAlgebra> {
        let n = names.len();
        if variety == Variety::Set || n == 0 {
            return Arc::new(FiniteAlgebra {
                variety,
                names,
                le,
                join: Vec::new(),
                meet: Vec::new(),
                bottom: None,
                top: None,
                complement: None,
                tensor,
                unit,
            });
        }
        let at = |a: usize, b: usize| le[a * n + b];
        let bottom = (0..n)
            .find(|&b| (0..n).all(|x| at(b, x)))
            .expect("closed subset keeps its least element");
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let x = (0..n)
                    .filter(|&x| at(a, x) && at(b, x))
                    .find(|&x| (0..n).all(|y| !(at(a, y) && at(b, y)) || at(x, y)))
                    .expect("closed subset keeps its joins");
                join[a * n + b] = x as u32;
            }
        }
        let top = {
            let mut t = bottom;
            for x in 0..n {
                t = join[t * n + x] as usize;
            }
            Elem(t as u32)
        };
        let mut meet = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let mut z = bottom;
                for x in 0..n {
                    if at(x, a) && at(x, b) {
                        z = join[z * n + x] as usize;
                    }
                }
                meet[a * n + b] = z as u32;
            }
        }
        let complement = if variety == Variety::CBAlg {
            let mut table = vec![0u32; n];
            for a in 0..n {
                let x = (0..n)
                    .find(|&x| {
                        join[a * n + x] as usize == top.i() && meet[a * n + x] as usize == bottom
                    })
                    .expect("closed subset keeps its complements");
                table[a] = x as u32;
            }
            Some(table)
        } else {
            None
        };
        FiniteAlgebra::assemble(
            variety,
            names,
            le,
            join,
            meet,
            Some(Elem(bottom as u32)),
            Some(top),
            complement,
            tensor,
            unit,
        )
    }
}

/// A homomorphism between algebras of the same variety, stored as an array
/// over the source carrier. For a morphism of affine systems this is the
/// concrete (reversed) direction: the array maps the *target* system's
/// algebra into the source's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hom {
    pub source: Arc<FiniteAlgebra>,
    pub target: Arc<FiniteAlgebra>,
    pub map: Vec<Elem>,
}

impl Hom {
    pub fn new(source: Arc<FiniteAlgebra>, target: Arc<FiniteAlgebra>, map: Vec<Elem>) -> Hom {
        debug_assert_eq!(source.n(), map.len());
        Hom { source, target, map }
    }

    pub fn identity(a: &Arc<FiniteAlgebra>) -> Hom {
        Hom {
            source: Arc::clone(a),
            target: Arc::clone(a),
            map: a.elems().collect(),
        }
    }

    #[inline]
    pub fn apply(&self, e: Elem) -> Elem {
        self.map[e.i()]
    }

    /// `self` followed by `g` (so `g ∘ self`).
    pub fn then(&self, g: &Hom) -> Result<Hom, Error> {
        if !same_algebra(&self.target, &g.source) {
            return Err(Error::Mismatch(
                "composition requires matching middle algebra".into(),
            ));
        }
        Ok(Hom {
            source: Arc::clone(&self.source),
            target: Arc::clone(&g.target),
            map: self.map.iter().map(|&e| g.apply(e)).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.n()];
        for &e in &self.map {
            if seen[e.i()] {
                return false;
            }
            seen[e.i()] = true;
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.n()];
        for &e in &self.map {
            seen[e.i()] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.n() == self.target.n() && self.is_injective()
    }
}

/// Pointer-fast structural equality of algebras.
pub fn same_algebra(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Check that a map is a homomorphism for its variety, reporting the first
/// violated operation with a witness pair.
pub fn is_homomorphism(h: &Hom) -> Result<(), Error> {
    let (a, b) = (&h.source, &h.target);
    if a.variety() != b.variety() {
        return Err(Error::VarietyMismatch {
            expected: a.variety(),
            got: b.variety(),
        });
    }
    if h.map.len() != a.n() {
        return Err(Error::Invalid(format!(
            "map has {} entries for a carrier of {}",
            h.map.len(),
            a.n()
        )));
    }
    if let Some(bad) = h.map.iter().find(|e| e.i() >= b.n()) {
        return Err(Error::Invalid(format!("map value {bad} out of range")));
    }
    for &c in a.variety().constants() {
        let x = a.constant(c);
        if h.apply(x) != b.constant(c) {
            return Err(Error::NotAHomomorphism {
                op: c.name(),
                a: a.name(x).to_string(),
                b: a.name(x).to_string(),
            });
        }
    }
    for &op in a.variety().binary_ops() {
        for x in a.elems() {
            for y in a.elems() {
                if h.apply(a.apply(op, x, y)) != b.apply(op, h.apply(x), h.apply(y)) {
                    return Err(Error::NotAHomomorphism {
                        op: op.name(),
                        a: a.name(x).to_string(),
                        b: a.name(y).to_string(),
                    });
                }
            }
        }
    }
    if a.variety().has_complement() {
        for x in a.elems() {
            if h.apply(a.compl(x)) != b.compl(h.apply(x)) {
                return Err(Error::NotAHomomorphism {
                    op: "complement",
                    a: a.name(x).to_string(),
                    b: a.name(x).to_string(),
                });
            }
        }
    }
    Ok(())
}
