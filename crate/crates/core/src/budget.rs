//! Resource caps for the brute-force operations.
//!
//! Everything in this crate terminates, but several operations have outputs
//! that grow super-exponentially (function spaces, coproducts of frames,
//! homomorphism enumerations). A [`Budget`] turns "this would take all week"
//! into a structured [`BudgetExceeded`](crate::Error::BudgetExceeded) error
//! instead of an apparent hang.

/// Caps applied by the enumerating and materializing operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest carrier a *constructed* algebra (power, product, coproduct,
    /// down-set lattice) may have.
    pub max_carrier: usize,
    /// Largest carrier accepted by the exhaustive axiom validator, whose
    /// checks are cubic in the carrier.
    pub max_validate_carrier: usize,
    /// Cap on search nodes explored while enumerating homomorphisms.
    pub max_search_nodes: u64,
    /// Cap on the number of homomorphisms an enumeration may return.
    pub max_homs: usize,
    /// Cap on the size of a lazily coded point set (tuples never stored,
    /// only iterated).
    pub max_lazy_points: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_carrier: 6000,
            max_validate_carrier: 600,
            max_search_nodes: 20_000_000,
            max_homs: 200_000,
            max_lazy_points: 1 << 22,
        }
    }
}

impl Budget {
    /// Check a carrier-size requirement against `max_carrier`.
    pub fn carrier(&self, what: &'static str, needed: u64) -> Result<usize, crate::Error> {
        if needed > self.max_carrier as u64 {
            Err(crate::Error::BudgetExceeded {
                what,
                needed,
                cap: self.max_carrier as u64,
            })
        } else {
            Ok(needed as usize)
        }
    }
}
