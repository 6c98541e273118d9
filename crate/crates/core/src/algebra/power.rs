//! Finite products of algebras and the function-space algebra `L^X`.
//!
//! Both are materialized with componentwise tables, so carriers multiply:
//! the [`Budget`] caps how large a product may get. Elements are coded
//! positionally — an element of the product is the mixed-radix numeral of
//! its tuple, most significant digit first — and named by their tuples.

use super::{Const, Elem, FiniteAlgebra, Hom, Variety};
use crate::budget::Budget;
use crate::error::Error;
use std::sync::Arc;

/// A materialized finite product with its positional coding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductAlgebra {
    pub algebra: Arc<FiniteAlgebra>,
    pub factors: Vec<Arc<FiniteAlgebra>>,
    strides: Vec<usize>,
}

impl ProductAlgebra {
    /// Code a tuple of factor elements as a product element.
    pub fn index(&self, digits: &[Elem]) -> Elem {
        debug_assert_eq!(digits.len(), self.factors.len());
        let mut acc = 0usize;
        for (i, &d) in digits.iter().enumerate() {
            debug_assert!(d.i() < self.factors[i].n());
            acc += d.i() * self.strides[i];
        }
        Elem(acc as u32)
    }

    /// Decode a product element into its tuple.
    pub fn digits(&self, e: Elem) -> Vec<Elem> {
        (0..self.factors.len()).map(|i| self.digit(e, i)).collect()
    }

    /// The `i`-th component of a product element.
    #[inline]
    pub fn digit(&self, e: Elem, i: usize) -> Elem {
        Elem((e.i() / self.strides[i] % self.factors[i].n()) as u32)
    }

    /// The projection homomorphism onto factor `i`.
    pub fn projection(&self, i: usize) -> Hom {
        Hom::new(
            Arc::clone(&self.algebra),
            Arc::clone(&self.factors[i]),
            self.algebra.elems().map(|e| self.digit(e, i)).collect(),
        )
    }

    /// The mediating homomorphism induced by a cone of homomorphisms with a
    /// common source: `b` goes to the tuple of its images.
    pub fn tuple_into(&self, legs: &[&Hom]) -> Result<Hom, Error> {
        if legs.len() != self.factors.len() {
            return Err(Error::Mismatch(format!(
                "cone has {} legs for {} factors",
                legs.len(),
                self.factors.len()
            )));
        }
        for (i, leg) in legs.iter().enumerate() {
            if !super::same_algebra(&leg.target, &self.factors[i]) {
                return Err(Error::Mismatch(format!("leg {i} does not target factor {i}")));
            }
            if !super::same_algebra(&leg.source, &legs[0].source) {
                return Err(Error::Mismatch("cone legs must share a source".into()));
            }
        }
        let source = Arc::clone(&legs[0].source);
        let map = source
            .elems()
            .map(|b| {
                let digits: Vec<Elem> = legs.iter().map(|l| l.apply(b)).collect();
                self.index(&digits)
            })
            .collect();
        Ok(Hom::new(source, Arc::clone(&self.algebra), map))
    }
}

/// Materialize the product of `factors` (all of `variety`; the list may be
/// empty, yielding the one-element terminal algebra of the variety).
pub fn product_algebras(
    variety: Variety,
    factors: &[Arc<FiniteAlgebra>],
    budget: &Budget,
) -> Result<ProductAlgebra, Error> {
    for f in factors {
        if f.variety() != variety {
            return Err(Error::VarietyMismatch {
                expected: variety,
                got: f.variety(),
            });
        }
    }
    let mut size: u64 = 1;
    for f in factors {
        size = size.saturating_mul(f.n() as u64);
    }
    let n = budget.carrier("product_algebras", size)?;
    let k = factors.len();
    let mut strides = vec![1usize; k];
    for i in (0..k.saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * factors[i + 1].n();
    }
    let digit = |e: usize, i: usize| Elem((e / strides[i] % factors[i].n()) as u32);

    let names: Vec<String> = (0..n)
        .map(|e| {
            let parts: Vec<&str> = (0..k).map(|i| factors[i].name(digit(e, i))).collect();
            format!("({})", parts.join(","))
        })
        .collect();

    let index = |digits: &[Elem]| -> usize {
        digits
            .iter()
            .enumerate()
            .map(|(i, d)| d.i() * strides[i])
            .sum()
    };

    let algebra = if variety == Variety::Set {
        FiniteAlgebra::validate(variety, names, Vec::new(), None, None, budget)
            .expect("set products are valid")
    } else {
        let mut le = vec![false; n * n];
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        let mut tensor = if variety == Variety::UQuant {
            Some(vec![0u32; n * n])
        } else {
            None
        };
        let mut da = vec![Elem(0); k];
        let mut db = vec![Elem(0); k];
        let mut dj = vec![Elem(0); k];
        for a in 0..n {
            for (i, d) in da.iter_mut().enumerate() {
                *d = digit(a, i);
            }
            for b in 0..n {
                for (i, d) in db.iter_mut().enumerate() {
                    *d = digit(b, i);
                }
                le[a * n + b] = (0..k).all(|i| factors[i].le(da[i], db[i]));
                for (i, d) in dj.iter_mut().enumerate() {
                    *d = factors[i].join(da[i], db[i]);
                }
                join[a * n + b] = index(&dj) as u32;
                for (i, d) in dj.iter_mut().enumerate() {
                    *d = factors[i].meet(da[i], db[i]);
                }
                meet[a * n + b] = index(&dj) as u32;
                if let Some(t) = tensor.as_mut() {
                    for (i, d) in dj.iter_mut().enumerate() {
                        *d = factors[i].tensor_at(da[i], db[i]);
                    }
                    t[a * n + b] = index(&dj) as u32;
                }
            }
        }
        let tuple_of = |c: Const| -> Elem {
            let digits: Vec<Elem> = factors.iter().map(|f| f.constant(c)).collect();
            Elem(index(&digits) as u32)
        };
        let bottom = tuple_of(Const::Bottom);
        let top = tuple_of(Const::Top);
        let complement = if variety == Variety::CBAlg {
            let mut table = vec![0u32; n];
            let mut dc = vec![Elem(0); k];
            for (a, entry) in table.iter_mut().enumerate() {
                for (i, d) in dc.iter_mut().enumerate() {
                    *d = factors[i].compl(digit(a, i));
                }
                *entry = index(&dc) as u32;
            }
            Some(table)
        } else {
            None
        };
        let unit = (variety == Variety::UQuant).then(|| tuple_of(Const::Unit));
        FiniteAlgebra::assemble(
            variety, names, le, join, meet, Some(bottom), Some(top), complement, tensor, unit,
        )
    };
    Ok(ProductAlgebra {
        algebra,
        factors: factors.to_vec(),
        strides,
    })
}

/// The function-space algebra `L^X` for a point set of size `points`,
/// with pointwise operations. A wrapper around the product of `points`
/// copies of `base` that speaks in function tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerAlgebra {
    pub product: ProductAlgebra,
    pub base: Arc<FiniteAlgebra>,
    pub points: usize,
}

impl PowerAlgebra {
    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.product.algebra
    }

    /// The element representing a function table `X -> L`.
    pub fn index_of_table(&self, table: &[Elem]) -> Elem {
        self.product.index(table)
    }

    /// The function table of an element.
    pub fn table_of(&self, e: Elem) -> Vec<Elem> {
        self.product.digits(e)
    }

    /// The value of function `e` at point `x`.
    #[inline]
    pub fn value_at(&self, e: Elem, x: usize) -> Elem {
        self.product.digit(e, x)
    }

    /// Evaluation at a point, as a homomorphism `L^X -> L`.
    pub fn projection_at(&self, x: usize) -> Hom {
        self.product.projection(x)
    }

    /// The constant function at `c`.
    pub fn constant(&self, c: Elem) -> Elem {
        self.index_of_table(&vec![c; self.points])
    }

    /// When the point set is the carrier of `base` itself, the identity
    /// function `x -> x` is an element; it generates the Sierpinski opens.
    pub fn identity_table(&self) -> Option<Elem> {
        (self.points == self.base.n())
            .then(|| self.index_of_table(&self.base.elems().collect::<Vec<_>>()))
    }

    /// Precomposition along a point map `f: X -> Y`: the homomorphism
    /// `L^Y -> L^X` sending `t` to `t ∘ f`. `self` is `L^Y`; `target_power`
    /// must be `L^X` over the same base.
    pub fn precompose(&self, f: &[usize], target_power: &PowerAlgebra) -> Result<Hom, Error> {
        if !super::same_algebra(&self.base, &target_power.base) {
            return Err(Error::Mismatch("powers of different bases".into()));
        }
        if f.len() != target_power.points {
            return Err(Error::Mismatch(format!(
                "point map has {} entries for {} points",
                f.len(),
                target_power.points
            )));
        }
        if let Some(&bad) = f.iter().find(|&&y| y >= self.points) {
            return Err(Error::Invalid(format!("point map value {bad} out of range")));
        }
        let map = self
            .algebra()
            .elems()
            .map(|t| {
                let table: Vec<Elem> = f.iter().map(|&y| self.value_at(t, y)).collect();
                target_power.index_of_table(&table)
            })
            .collect();
        Ok(Hom::new(
            Arc::clone(self.algebra()),
            Arc::clone(target_power.algebra()),
            map,
        ))
    }
}

/// Materialize `L^X` with `|X| = points`.
pub fn power_algebra(
    base: &Arc<FiniteAlgebra>,
    points: usize,
    budget: &Budget,
) -> Result<PowerAlgebra, Error> {
    let factors: Vec<Arc<FiniteAlgebra>> = (0..points).map(|_| Arc::clone(base)).collect();
    let product = product_algebras(base.variety(), &factors, budget)?;
    Ok(PowerAlgebra {
        product,
        base: Arc::clone(base),
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_homomorphism;
    use crate::catalog;

    #[test]
    fn componentwise_tables_match_exhaustive_validation() {
        let budget = Budget::default();
        // Re-validate assembled products against the axiom checker for a
        // sample in each variety (debug assembly already does this at <= 64
        // elements; here we do it explicitly and unconditionally).
        let cases: Vec<Arc<FiniteAlgebra>> = vec![
            catalog::chain(Variety::Frame, 3),
            catalog::chain(Variety::SupSl, 3),
            catalog::boolean(1),
            catalog::lukasiewicz(3),
        ];
        for l in cases {
            let p = power_algebra(&l, 2, &budget).unwrap();
            let a = p.algebra();
            let revalidated = FiniteAlgebra::validate(
                a.variety(),
                a.names().to_vec(),
                (0..a.n())
                    .flat_map(|x| (0..a.n()).map(move |y| (x, y)))
                    .map(|(x, y)| a.le(Elem(x as u32), Elem(y as u32)))
                    .collect(),
                (a.variety() == Variety::UQuant).then(|| {
                    (0..a.n() as u32)
                        .flat_map(|x| {
                            (0..a.n() as u32).map(move |y| (x, y))
                        })
                        .map(|(x, y)| a.tensor_at(Elem(x), Elem(y)).0)
                        .collect()
                }),
                (a.variety() == Variety::UQuant).then(|| a.unit()),
                &budget,
            )
            .unwrap();
            assert_eq!(*revalidated, **a);
        }
    }

    #[test]
    fn coding_round_trips_and_projections_are_homs() {
        let budget = Budget::default();
        let l = catalog::chain(Variety::Frame, 3);
        let p = power_algebra(&l, 2, &budget).unwrap();
        assert_eq!(p.algebra().n(), 9);
        for e in p.algebra().elems() {
            assert_eq!(p.index_of_table(&p.table_of(e)), e);
        }
        for x in 0..2 {
            assert!(is_homomorphism(&p.projection_at(x)).is_ok());
        }
        let id = p.identity_table();
        assert!(id.is_none(), "3 elements over 2 points has no identity");
        let p3 = power_algebra(&l, 3, &budget).unwrap();
        let id = p3.identity_table().unwrap();
        assert_eq!(p3.table_of(id), vec![Elem(0), Elem(1), Elem(2)]);
    }

    #[test]
    fn precomposition_is_functorial() {
        let budget = Budget::default();
        let l = catalog::boolean(1);
        let p3 = power_algebra(&l, 3, &budget).unwrap(); // L^{x0,x1,x2}
        let p2 = power_algebra(&l, 2, &budget).unwrap();
        let f = [2usize, 0]; // X2 -> X3
        let h = p3.precompose(&f, &p2).unwrap();
        assert!(is_homomorphism(&h).is_ok());
        for t in p3.algebra().elems() {
            let table = p3.table_of(t);
            let expect: Vec<Elem> = f.iter().map(|&y| table[y]).collect();
            assert_eq!(p2.table_of(h.apply(t)), expect);
        }
        // Identity point map precomposes to the identity hom.
        let idm: Vec<usize> = (0..3).collect();
        let h_id = p3.precompose(&idm, &p3).unwrap();
        assert_eq!(h_id.map, Hom::identity(p3.algebra()).map);
    }

    #[test]
    fn empty_products_are_terminal() {
        let budget = Budget::default();
        for v in Variety::ALL {
            let p = product_algebras(v, &[], &budget).unwrap();
            assert_eq!(p.algebra.n(), 1);
            assert_eq!(p.algebra.name(Elem(0)), "()");
        }
    }

    #[test]
    fn mediating_cone_into_a_product() {
        let budget = Budget::default();
        let two = catalog::chain(Variety::Frame, 2);
        let three = catalog::chain(Variety::Frame, 3);
        let p = product_algebras(Variety::Frame, &[Arc::clone(&two), Arc::clone(&two)], &budget)
            .unwrap();
        let down = Hom::new(Arc::clone(&three), Arc::clone(&two), vec![Elem(0), Elem(0), Elem(1)]);
        let up = Hom::new(Arc::clone(&three), Arc::clone(&two), vec![Elem(0), Elem(1), Elem(1)]);
        let m = p.tuple_into(&[&down, &up]).unwrap();
        assert!(is_homomorphism(&m).is_ok());
        for (i, leg) in [&down, &up].iter().enumerate() {
            let proj = p.projection(i);
            let composed = m.then(&proj).unwrap();
            assert_eq!(&composed.map, &leg.map, "projection recovers leg {i}");
        }
        // Uniqueness: any hom with the same projections equals m.
        let all = crate::algebra::enumerate_homs(&three, &p.algebra, &budget).unwrap();
        let agreeing: Vec<_> = all
            .into_iter()
            .filter(|h| {
                (0..2).all(|i| {
                    let proj = p.projection(i);
                    h.then(&proj).unwrap().map == [&down, &up][i].map
                })
            })
            .collect();
        assert_eq!(agreeing.len(), 1);
        assert_eq!(agreeing[0].map, m.map);
    }

    #[test]
    fn budget_guards_materialization() {
        let mut budget = Budget::default();
        budget.max_carrier = 100;
        let l = catalog::chain(Variety::Frame, 3);
        assert!(matches!(
            power_algebra(&l, 5, &budget),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
