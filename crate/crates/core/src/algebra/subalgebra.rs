//! Subalgebras: closure under the variety's operations, and the induced
//! algebra on a closed subset.

use super::{Elem, FiniteAlgebra, Hom, Variety};
use crate::error::Error;
use std::sync::Arc;

/// A subset of a parent algebra closed under the variety's operations,
/// together with the induced algebra on that subset.
///
/// `members` is sorted by parent index, and the induced carrier uses the
/// same order, so `algebra`'s element `i` is `members[i]` in the parent.
/// For join-semilattices and quantales the *induced* meets may differ from
/// the parent's (the subset need not be meet-closed); they are re-derived
/// from the restricted order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subalgebra {
    pub parent: Arc<FiniteAlgebra>,
    pub members: Vec<Elem>,
    pub algebra: Arc<FiniteAlgebra>,
}

impl Subalgebra {
    /// The inclusion homomorphism `algebra -> parent`.
    pub fn inclusion(&self) -> Hom {
        Hom::new(
            Arc::clone(&self.algebra),
            Arc::clone(&self.parent),
            self.members.clone(),
        )
    }

    /// Position of a parent element within the subalgebra, if present.
    pub fn position(&self, parent_elem: Elem) -> Option<Elem> {
        self.members
            .binary_search(&parent_elem)
            .ok()
            .map(|i| Elem(i as u32))
    }

    pub fn contains(&self, parent_elem: Elem) -> bool {
        self.members.binary_search(&parent_elem).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Closure of a seed under the parent's operations, as a membership mask.
pub(crate) fn close_under_ops(parent: &FiniteAlgebra, seed: &[Elem]) -> Vec<bool> {
    let mut present = vec![false; parent.n()];
    let mut list: Vec<Elem> = Vec::new();
    let push = |e: Elem, present: &mut Vec<bool>, list: &mut Vec<Elem>| {
        if !present[e.i()] {
            present[e.i()] = true;
            list.push(e);
        }
    };
    for &c in parent.variety().constants() {
        push(parent.constant(c), &mut present, &mut list);
    }
    for &e in seed {
        push(e, &mut present, &mut list);
    }
    let mut next = 0;
    while next < list.len() {
        let x = list[next];
        next += 1;
        if parent.variety().has_complement() {
            push(parent.compl(x), &mut present, &mut list);
        }
        // Pair x against everything already present (including itself).
        let mut i = 0;
        while i < list.len() {
            let y = list[i];
            i += 1;
            for &op in parent.variety().binary_ops() {
                push(parent.apply(op, x, y), &mut present, &mut list);
                push(parent.apply(op, y, x), &mut present, &mut list);
            }
        }
    }
    present
}

fn induced(parent: &Arc<FiniteAlgebra>, members: Vec<Elem>) -> Subalgebra {
    let k = members.len();
    let names: Vec<String> = members.iter().map(|&e| parent.name(e).to_string()).collect();
    let (le, tensor, unit) = if parent.variety().is_ordered() {
        let mut le = vec![false; k * k];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                le[i * k + j] = parent.le(a, b);
            }
        }
        let (tensor, unit) = if parent.variety() == Variety::UQuant {
            let mut t = vec![0u32; k * k];
            for (i, &a) in members.iter().enumerate() {
                for (j, &b) in members.iter().enumerate() {
                    let v = parent.tensor_at(a, b);
                    let pos = members
                        .binary_search(&v)
                        .expect("closed under tensor");
                    t[i * k + j] = pos as u32;
                }
            }
            let u = members
                .binary_search(&parent.unit())
                .expect("closed under unit");
            (Some(t), Some(Elem(u as u32)))
        } else {
            (None, None)
        };
        (le, tensor, unit)
    } else {
        (Vec::new(), None, None)
    };
    let algebra = FiniteAlgebra::assemble_from_le(parent.variety(), names, le, tensor, unit);
    Subalgebra {
        parent: Arc::clone(parent),
        members,
        algebra,
    }
}

/// The subalgebra generated by a seed: the least subset containing the seed
/// and the variety's constants, closed under its operations. For the `set`
/// variety this is the seed itself (possibly empty).
pub fn generated_subalgebra(parent: &Arc<FiniteAlgebra>, seed: &[Elem]) -> Subalgebra {
    let present = close_under_ops(parent, seed);
    let members: Vec<Elem> = parent.elems().filter(|e| present[e.i()]).collect();
    induced(parent, members)
}

/// Interpret an explicit member list as a subalgebra, verifying closure
/// under the variety's constants and operations; the first escape is
/// reported with a witness.
pub fn subalgebra_from_members(
    parent: &Arc<FiniteAlgebra>,
    members: &[Elem],
) -> Result<Subalgebra, Error> {
    let mut members: Vec<Elem> = members.to_vec();
    members.sort();
    members.dedup();
    let mut present = vec![false; parent.n()];
    for &e in &members {
        if e.i() >= parent.n() {
            return Err(Error::Invalid(format!("member {e} out of range")));
        }
        present[e.i()] = true;
    }
    for &c in parent.variety().constants() {
        let e = parent.constant(c);
        if !present[e.i()] {
            return Err(Error::NotASubalgebra {
                op: c.name(),
                witness: parent.name(e).to_string(),
            });
        }
    }
    for &a in &members {
        if parent.variety().has_complement() {
            let v = parent.compl(a);
            if !present[v.i()] {
                return Err(Error::NotASubalgebra {
                    op: "complement",
                    witness: format!("{}' = {}", parent.name(a), parent.name(v)),
                });
            }
        }
        for &b in &members {
            for &op in parent.variety().binary_ops() {
                let v = parent.apply(op, a, b);
                if !present[v.i()] {
                    return Err(Error::NotASubalgebra {
                        op: op.name(),
                        witness: format!(
                            "{}({}, {}) = {}",
                            op.name(),
                            parent.name(a),
                            parent.name(b),
                            parent.name(v)
                        ),
                    });
                }
            }
        }
    }
    Ok(induced(parent, members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_homomorphism;
    use crate::catalog;

    #[test]
    fn closure_from_empty_seed_yields_the_constants() {
        let f = catalog::chain(Variety::Frame, 4);
        let s = generated_subalgebra(&f, &[]);
        assert_eq!(s.members, vec![Elem(0), Elem(3)]);
        assert!(is_homomorphism(&s.inclusion()).is_ok());

        let set = catalog::set_algebra(3);
        let s = generated_subalgebra(&set, &[]);
        assert!(s.is_empty(), "sets have no constants");
    }

    #[test]
    fn boolean_closure_adds_complements() {
        let b4 = catalog::boolean(2);
        let atom = b4.elem_by_name("{a0}").unwrap();
        let s = generated_subalgebra(&b4, &[atom]);
        assert_eq!(s.len(), 4, "bottom, atom, co-atom, top");
        assert_eq!(s.algebra.variety(), Variety::CBAlg);
    }

    #[test]
    fn quantale_closure_follows_tensor_powers() {
        // In Ł4 the middle element 1/3 generates 0, 1/3, 2/3?.. no:
        // 1/3 (x) 1/3 = 0, so the closure is {0, 1/3, 1}.
        let l4 = catalog::lukasiewicz(4);
        let third = l4.elem_by_name("1/3").unwrap();
        let s = generated_subalgebra(&l4, &[third]);
        let names: Vec<&str> = s.members.iter().map(|&e| l4.name(e)).collect();
        assert_eq!(names, vec!["0", "1/3", "1"]);
        // The induced 3-element quantale is valid (debug assembly checks it).
        assert_eq!(s.algebra.n(), 3);
    }

    #[test]
    fn closure_is_idempotent_and_monotone() {
        let b8 = catalog::boolean(3);
        let seed = [Elem(1), Elem(2)];
        let once = generated_subalgebra(&b8, &seed);
        let twice = generated_subalgebra(&b8, &once.members);
        assert_eq!(once.members, twice.members);
        let bigger = generated_subalgebra(&b8, &[Elem(1), Elem(2), Elem(4)]);
        assert!(once.members.iter().all(|m| bigger.members.contains(m)));
    }

    #[test]
    fn member_lists_are_checked_for_closure() {
        let f = catalog::chain(Variety::Frame, 4);
        let e = subalgebra_from_members(&f, &[Elem(0), Elem(1)]).unwrap_err();
        assert!(matches!(e, Error::NotASubalgebra { op: "top", .. }));
        let ok = subalgebra_from_members(&f, &[Elem(0), Elem(1), Elem(3)]).unwrap();
        assert_eq!(ok.len(), 3);

        let b4 = catalog::boolean(2);
        let atom = b4.elem_by_name("{a0}").unwrap();
        let e = subalgebra_from_members(&b4, &[b4.bottom(), atom, b4.top()]).unwrap_err();
        assert!(matches!(e, Error::NotASubalgebra { op: "complement", .. }));
    }

    #[test]
    fn induced_meets_are_recomputed_for_join_semilattices() {
        // Inside the powerset of {a0,a1,a2} take the join-closed subset
        // {bottom, {a0,a1}, {a1,a2}, top}: it is a sub-join-semilattice, and
        // the induced meet of the two middles is bottom, not their parent
        // meet {a1}.
        let b8 = catalog::boolean(3);
        let x = b8.elem_by_name("{a0,a1}").unwrap();
        let y = b8.elem_by_name("{a1,a2}").unwrap();
        let names = b8.names().to_vec();
        let le: Vec<bool> = (0..8)
            .flat_map(|a| (0..8).map(move |b| a & b == a))
            .collect();
        let supsl = FiniteAlgebra::validate(
            Variety::SupSl,
            names,
            le,
            None,
            None,
            &crate::budget::Budget::default(),
        )
        .unwrap();
        let s = subalgebra_from_members(&supsl, &[supsl.bottom(), x, y, supsl.top()]).unwrap();
        let xi = s.position(x).unwrap();
        let yi = s.position(y).unwrap();
        assert_eq!(s.algebra.meet(xi, yi), s.algebra.bottom());
        assert_ne!(
            supsl.meet(x, y),
            supsl.bottom(),
            "parent meet is {{a1}}, not bottom"
        );
    }
}
