//! Ready-made small algebras: chains, powerset Boolean algebras, and a few
//! standard quantales. These serve as test fixtures, generator seeds, and
//! CLI defaults. Everything here goes through the exhaustive validator, so
//! the catalog doubles as a smoke test for it.

use crate::algebra::{Elem, FiniteAlgebra, Variety};
use crate::budget::Budget;
use std::sync::Arc;

fn chain_names(n: usize) -> Vec<String> {
    match n {
        0 => vec![],
        1 => vec!["bot".into()],
        2 => vec!["bot".into(), "top".into()],
        3 => vec!["bot".into(), "c".into(), "top".into()],
        _ => {
            let mut v = vec!["bot".to_string()];
            for i in 1..n - 1 {
                v.push(format!("c{i}"));
            }
            v.push("top".into());
            v
        }
    }
}

fn chain_le(n: usize) -> Vec<bool> {
    let mut le = vec![false; n * n];
    for a in 0..n {
        for b in a..n {
            le[a * n + b] = true;
        }
    }
    le
}

/// The `n`-element chain as an algebra of `variety` (`supsl`, `frame`, or —
/// for `n <= 2` — `cbalg`).
pub fn chain(variety: Variety, n: usize) -> Arc<FiniteAlgebra> {
    assert!(variety.is_ordered() && variety != Variety::UQuant);
    FiniteAlgebra::validate(variety, chain_names(n), chain_le(n), None, None, &Budget::default())
        .expect("chains are valid")
}

/// An `n`-element carrier of the `set` variety.
pub fn set_algebra(n: usize) -> Arc<FiniteAlgebra> {
    let names = (0..n).map(|i| format!("e{i}")).collect();
    FiniteAlgebra::validate(Variety::Set, names, Vec::new(), None, None, &Budget::default())
        .expect("sets are valid")
}

/// The powerset Boolean algebra on `atoms` atoms (carrier size `2^atoms`),
/// elements ordered by subset bitmask.
pub fn boolean(atoms: usize) -> Arc<FiniteAlgebra> {
    assert!(atoms <= 10, "materialized Boolean algebras stay small");
    let n = 1usize << atoms;
    let names: Vec<String> = (0..n)
        .map(|mask| {
            let parts: Vec<String> = (0..atoms)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| format!("a{i}"))
                .collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    let mut le = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            le[a * n + b] = a & b == a;
        }
    }
    FiniteAlgebra::validate(Variety::CBAlg, names, le, None, None, &Budget::default())
        .expect("powerset algebras are valid")
}

fn fraction_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match (i, n) {
            (0, _) => "0".to_string(),
            (i, n) if i == n - 1 => "1".to_string(),
            (i, n) => format!("{}/{}", i, n - 1),
        })
        .collect()
}

/// The `n`-valued Lukasiewicz chain: carrier `0 < 1/(n-1) < ... < 1` with
/// `a (x) b = max(0, a + b - 1)` and unit `1`. Integral, and for `n >= 3`
/// not idempotent.
pub fn lukasiewicz(n: usize) -> Arc<FiniteAlgebra> {
    assert!(n >= 2);
    let mut tensor = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            tensor[a * n + b] = (a + b).saturating_sub(n - 1) as u32;
        }
    }
    FiniteAlgebra::validate(
        Variety::UQuant,
        fraction_names(n),
        chain_le(n),
        Some(tensor),
        Some(Elem(n as u32 - 1)),
        &Budget::default(),
    )
    .expect("Lukasiewicz chains are valid")
}

/// The `n`-valued Goedel chain: tensor is the meet, unit is the top.
/// Integral and idempotent.
pub fn godel(n: usize) -> Arc<FiniteAlgebra> {
    assert!(n >= 2);
    let mut tensor = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            tensor[a * n + b] = a.min(b) as u32;
        }
    }
    FiniteAlgebra::validate(
        Variety::UQuant,
        fraction_names(n),
        chain_le(n),
        Some(tensor),
        Some(Elem(n as u32 - 1)),
        &Budget::default(),
    )
    .expect("Goedel chains are valid")
}

/// Re-read a frame as an integral idempotent quantale (tensor = meet,
/// unit = top).
pub fn frame_as_quantale(frame: &FiniteAlgebra) -> Arc<FiniteAlgebra> {
    assert_eq!(frame.variety(), Variety::Frame);
    let n = frame.n();
    let mut tensor = vec![0u32; n * n];
    let mut le = vec![false; n * n];
    for a in frame.elems() {
        for b in frame.elems() {
            tensor[a.i() * n + b.i()] = frame.meet(a, b).0;
            le[a.i() * n + b.i()] = frame.le(a, b);
        }
    }
    FiniteAlgebra::validate(
        Variety::UQuant,
        frame.names().to_vec(),
        le,
        Some(tensor),
        Some(Elem(frame.top().0)),
        &Budget::default(),
    )
    .expect("frames are integral idempotent quantales")
}

/// The powerset of a finite monoid, as a unital quantale: join is union,
/// tensor is the elementwise product, unit is the singleton of the monoid
/// unit. Non-integral whenever the monoid has more than one element.
///
/// `mult` is the row-major multiplication table of the monoid.
pub fn powerset_monoid_quantale(
    elem_names: &[&str],
    mult: &[usize],
    unit: usize,
) -> Arc<FiniteAlgebra> {
    let m = elem_names.len();
    assert!(m >= 1 && m <= 6 && mult.len() == m * m);
    let n = 1usize << m;
    let names: Vec<String> = (0..n)
        .map(|mask| {
            let parts: Vec<&str> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| elem_names[i]).collect();
            format!("{{{}}}", parts.join(","))
        })
        .collect();
    let mut le = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            le[a * n + b] = a & b == a;
        }
    }
    let mut tensor = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            let mut out = 0usize;
            for i in 0..m {
                if a >> i & 1 == 0 {
                    continue;
                }
                for j in 0..m {
                    if b >> j & 1 == 1 {
                        out |= 1 << mult[i * m + j];
                    }
                }
            }
            tensor[a * n + b] = out as u32;
        }
    }
    FiniteAlgebra::validate(
        Variety::UQuant,
        names,
        le,
        Some(tensor),
        Some(Elem(1u32 << unit)),
        &Budget::default(),
    )
    .expect("monoid powersets are valid quantales")
}

/// Powerset quantale of the two-element group — the stock non-integral
/// example (unit `{e}` is strictly below the top `{e,g}`).
pub fn powerset_z2_quantale() -> Arc<FiniteAlgebra> {
    powerset_monoid_quantale(&["e", "g"], &[0, 1, 1, 0], 0)
}

/// Powerset quantale of the two-element idempotent monoid `{e, a}`,
/// `a * a = a`. Also non-integral.
pub fn powerset_flip_monoid_quantale() -> Arc<FiniteAlgebra> {
    powerset_monoid_quantale(&["e", "a"], &[0, 1, 1, 1], 0)
}

/// Default base algebra per variety, used by the CLI when `--L` is omitted.
pub fn default_base(variety: Variety) -> Arc<FiniteAlgebra> {
    match variety {
        Variety::Set => set_algebra(2),
        Variety::SupSl => chain(Variety::SupSl, 2),
        Variety::Frame => chain(Variety::Frame, 2),
        Variety::CBAlg => chain(Variety::CBAlg, 2),
        Variety::UQuant => lukasiewicz(3),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_constructions_validate() {
        for v in [Variety::SupSl, Variety::Frame] {
            for n in 1..=5 {
                assert_eq!(chain(v, n).n(), n);
            }
        }
        assert_eq!(boolean(0).n(), 1);
        assert_eq!(boolean(3).n(), 8);
        for n in 2..=5 {
            lukasiewicz(n);
            godel(n);
        }
        frame_as_quantale(&chain(Variety::Frame, 4));
        powerset_z2_quantale();
        powerset_flip_monoid_quantale();
        for v in Variety::ALL {
            default_base(v);
        }
    }

    #[test]
    fn z2_powerset_is_not_integral() {
        let q = powerset_z2_quantale();
        assert!(!q.is_integral());
        // {g} (x) {g} = {e}.
        let g = q.elem_by_name("{g}").unwrap();
        assert_eq!(q.tensor_at(g, g), q.unit());
    }

    #[test]
    fn godel_is_idempotent_lukasiewicz_is_not() {
        let g3 = godel(3);
        let l3 = lukasiewicz(3);
        let mid = Elem(1);
        assert_eq!(g3.tensor_at(mid, mid), mid);
        assert_eq!(l3.tensor_at(mid, mid), l3.bottom());
    }
}
