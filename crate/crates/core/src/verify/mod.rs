//! Randomized verification of the library's structure theorems.
//!
//! Each suite draws seeded instances (algebras, spaces, systems), checks
//! the property on every instance, runs a negative control that must be
//! flagged, and reports pass/fail counts with reproduction seeds.

pub mod gen;
pub mod shrink;
mod suites;

use crate::algebra::{FiniteAlgebra, Variety};
use crate::budget::Budget;
use crate::catalog;
use crate::error::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

/// Names of the runnable verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuiteId {
    /// The embedding/spatialization adjunction: unit, counit, hom-set
    /// bijection, naturality.
    Thm1,
    /// Separation is equivalent to the canonical morphism into the
    /// Sierpinski power being an initial embedding.
    Thm2,
    /// The Sierpinski system, its powers, and their retracts are injective
    /// over embeddings.
    Thm3,
    /// Sobriety is equivalent to the canonical morphism being a sober
    /// mono, audited lazily.
    Thm5,
    /// Morphisms into the Sierpinski system are exactly the algebra
    /// elements.
    Prop2,
    /// The evaluation family is initial.
    Prop3,
    /// The evaluation family on a separated system is a mono-source.
    Prop5,
    /// Finite products preserve separation.
    Prop9,
    /// Embeddings transfer separation to the source.
    Prop10,
    /// Finite products preserve sobriety.
    Prop18,
    /// Sober monos transfer sobriety to the source.
    Prop20,
    /// A space embeds into a power of the Sierpinski space iff it is
    /// separated.
    Prop21,
    /// The embedded Sierpinski space compares isomorphically to the
    /// Sierpinski system.
    Prop22,
    /// Embedding a space embedding yields a monic system morphism.
    Cor1,
    /// For which varieties the comparison is an isomorphism — and the
    /// explicit counterexample where it is not.
    Cor2,
    /// Algebra coproducts satisfy their universal property.
    CoprodUp,
    /// The free-quantale evaluator: shortcut vs. fold, and Minkowski
    /// arithmetic.
    Example4,
}

impl SuiteId {
    pub const ALL: [SuiteId; 17] = [
        SuiteId::Thm1,
        SuiteId::Thm2,
        SuiteId::Thm3,
        SuiteId::Thm5,
        SuiteId::Prop2,
        SuiteId::Prop3,
        SuiteId::Prop5,
        SuiteId::Prop9,
        SuiteId::Prop10,
        SuiteId::Prop18,
        SuiteId::Prop20,
        SuiteId::Prop21,
        SuiteId::Prop22,
        SuiteId::Cor1,
        SuiteId::Cor2,
        SuiteId::CoprodUp,
        SuiteId::Example4,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::Thm1 => "thm1",
            SuiteId::Thm2 => "thm2",
            SuiteId::Thm3 => "thm3",
            SuiteId::Thm5 => "thm5",
            SuiteId::Prop2 => "prop2",
            SuiteId::Prop3 => "prop3",
            SuiteId::Prop5 => "prop5",
            SuiteId::Prop9 => "prop9",
            SuiteId::Prop10 => "prop10",
            SuiteId::Prop18 => "prop18",
            SuiteId::Prop20 => "prop20",
            SuiteId::Prop21 => "prop21",
            SuiteId::Prop22 => "prop22",
            SuiteId::Cor1 => "cor1",
            SuiteId::Cor2 => "cor2",
            SuiteId::CoprodUp => "coprodUP",
            SuiteId::Example4 => "example4",
        }
    }

    /// Case-insensitive lookup by the canonical name.
    pub fn parse(name: &str) -> Option<SuiteId> {
        let lower = name.to_ascii_lowercase();
        SuiteId::ALL
            .iter()
            .copied()
            .find(|s| s.as_str().eq_ignore_ascii_case(&lower))
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Everything a suite needs to draw and check its instances.
#[derive(Debug, Clone)]
pub struct GenConfig {
    /// Master seed; every instance derives its own stream from it.
    pub seed: u64,
    pub variety: Variety,
    /// Base algebra of truth values; defaults per variety when `None`.
    pub base: Option<Arc<FiniteAlgebra>>,
    /// Number of randomized instances per suite.
    pub instances: usize,
    /// Cap on generated point counts.
    pub max_points: usize,
    /// Cap on generated algebra carriers.
    pub max_algebra: usize,
    /// Caps for probe objects in initiality/mono-source checks.
    pub probe_points: usize,
    pub probe_algebra: usize,
    /// Materialize Sierpinski powers where a suite offers the cross-check.
    pub materialize_powers: bool,
    pub budget: Budget,
    /// Per-instance wall-clock advisory; overruns become notes.
    pub instance_wall_ms: Option<u64>,
}

impl GenConfig {
    pub fn new(seed: u64, variety: Variety) -> GenConfig {
        GenConfig {
            seed,
            variety,
            base: None,
            instances: 25,
            max_points: 4,
            max_algebra: 6,
            probe_points: 3,
            probe_algebra: 4,
            materialize_powers: false,
            budget: Budget::default(),
            instance_wall_ms: None,
        }
    }

    pub fn base_algebra(&self) -> Arc<FiniteAlgebra> {
        self.base
            .clone()
            .unwrap_or_else(|| catalog::default_base(self.variety))
    }
}

/// One failed instance, with enough context to reproduce it.
#[derive(Debug, Clone)]
pub struct Failure {
    pub instance: usize,
    /// The derived per-instance seed.
    pub seed: u64,
    pub detail: String,
}

/// The outcome of one suite run.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: SuiteId,
    pub variety: Variety,
    pub seed: u64,
    pub instances: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
    /// Instances skipped for budget or generation reasons, and wall-clock
    /// advisories.
    pub budget_notes: Vec<String>,
    pub notes: Vec<String>,
    /// The crafted counterexample was correctly rejected.
    pub negative_control_flagged: bool,
    /// Whether the named statement is expected to hold over this variety.
    /// `false` only where the suite exhibits a refutation by design.
    pub theorem_holds: bool,
    /// A concrete counterexample, when the suite produces one.
    pub witness: Option<String>,
    pub wall_ms: u128,
}

impl SuiteReport {
    /// All checked instances agreed with the expectation and the control
    /// was flagged.
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.negative_control_flagged
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// The seed of instance `i` under master seed `seed`.
pub(crate) fn derive_seed(seed: u64, i: u64) -> u64 {
    splitmix64(seed ^ splitmix64(i.wrapping_add(1)))
}

/// An independent, reproducible RNG stream for instance `i`.
pub(crate) fn instance_rng(seed: u64, i: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, i))
}

/// Run `body` over the configured instances in parallel. Budget and
/// generation shortfalls become notes; every other error is a failure.
pub(crate) fn run_instances<F>(
    cfg: &GenConfig,
    body: F,
) -> (usize, Vec<Failure>, Vec<String>)
where
    F: Fn(usize, &mut ChaCha8Rng) -> Result<(), Error> + Sync,
{
    let outcomes: Vec<(Result<(), Error>, u128)> = (0..cfg.instances)
        .into_par_iter()
        .map(|i| {
            let mut rng = instance_rng(cfg.seed, i as u64);
            let start = Instant::now();
            let result = body(i, &mut rng);
            (result, start.elapsed().as_millis())
        })
        .collect();
    let mut passes = 0;
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for (i, (result, ms)) in outcomes.into_iter().enumerate() {
        if let Some(cap) = cfg.instance_wall_ms {
            if ms > u128::from(cap) {
                notes.push(format!("instance {i} ran {ms}ms, over the {cap}ms advisory"));
            }
        }
        match result {
            Ok(()) => passes += 1,
            Err(Error::BudgetExceeded { what, needed, cap }) => notes.push(format!(
                "instance {i} skipped: budget exceeded on {what} ({needed} over {cap})"
            )),
            Err(Error::GenerationExhausted { what, attempts }) => notes.push(format!(
                "instance {i} skipped: no {what} found in {attempts} attempts"
            )),
            Err(e) => failures.push(Failure {
                instance: i,
                seed: derive_seed(cfg.seed, i as u64),
                detail: e.to_string(),
            }),
        }
    }
    (passes, failures, notes)
}

/// Run one suite under the given configuration.
pub fn run_suite(suite: SuiteId, cfg: &GenConfig) -> Result<SuiteReport, Error> {
    let start = Instant::now();
    let mut report = suites::dispatch(suite, cfg)?;
    report.wall_ms = start.elapsed().as_millis();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip_and_cover_all_ids() {
        for s in SuiteId::ALL {
            assert_eq!(SuiteId::parse(s.as_str()), Some(s));
            assert_eq!(SuiteId::parse(&s.as_str().to_uppercase()), Some(s));
        }
        assert_eq!(SuiteId::parse("thm4"), None);
        assert_eq!(SuiteId::parse("coprodup"), Some(SuiteId::CoprodUp));
    }

    #[test]
    fn derived_seeds_differ_between_instances_and_masters() {
        assert_ne!(derive_seed(7, 0), derive_seed(7, 1));
        assert_ne!(derive_seed(7, 0), derive_seed(8, 0));
        assert_eq!(derive_seed(7, 3), derive_seed(7, 3));
    }

    #[test]
    fn budget_shortfalls_are_notes_not_failures() {
        let mut cfg = GenConfig::new(1, Variety::Frame);
        cfg.instances = 3;
        let (passes, failures, notes) = run_instances(&cfg, |i, _rng| match i {
            0 => Ok(()),
            1 => Err(Error::BudgetExceeded {
                what: "test nodes",
                needed: 10,
                cap: 5,
            }),
            _ => Err(Error::Mismatch("broken".into())),
        });
        assert_eq!(passes, 1);
        assert_eq!(failures.len(), 1);
        assert_eq!(failures[0].instance, 2);
        assert_eq!(notes.len(), 1);
        assert!(notes[0].contains("skipped"));
    }
}
