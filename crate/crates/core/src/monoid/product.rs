use crate::error::{Error, Result};

use super::{Element, FiniteMonoid};

pub const DEFAULT_PRODUCT_CAP: usize = 4096;

/// Direct product `M₁ × M₂` together with the pairing of element indices.
///
/// The pair `(x, y)` is stored at index `x * |M₂| + y`.
#[derive(Clone, Debug)]
pub struct ProductMonoid {
    pub monoid: FiniteMonoid,
    left_size: usize,
    right_size: usize,
}

impl ProductMonoid {
    pub fn pair(&self, x: Element, y: Element) -> Element {
        debug_assert!(x.0 < self.left_size && y.0 < self.right_size);
        Element(x.0 * self.right_size + y.0)
    }

    pub fn unpair(&self, p: Element) -> (Element, Element) {
        (
            Element(p.0 / self.right_size),
            Element(p.0 % self.right_size),
        )
    }
}

pub fn direct_product(m1: &FiniteMonoid, m2: &FiniteMonoid, cap: usize) -> Result<ProductMonoid> {
    let size = m1.size() * m2.size();
    if size > cap {
        return Err(Error::SizeBudgetExceeded {
            what: "direct product",
            cap,
        });
    }
    let n2 = m2.size();
    let mut table = Vec::with_capacity(size * size);
    for p in 0..size {
        let (x1, x2) = (Element(p / n2), Element(p % n2));
        for q in 0..size {
            let (y1, y2) = (Element(q / n2), Element(q % n2));
            table.push(m1.mul(x1, y1).0 * n2 + m2.mul(x2, y2).0);
        }
    }
    let identity = m1.identity().0 * n2 + m2.identity().0;
    let labels = (0..size)
        .map(|p| {
            format!(
                "({},{})",
                m1.label(Element(p / n2)),
                m2.label(Element(p % n2))
            )
        })
        .collect();
    let monoid = FiniteMonoid::from_raw(size, identity, table).with_labels(labels)?;
    Ok(ProductMonoid {
        monoid,
        left_size: m1.size(),
        right_size: n2,
    })
}

#[cfg(test)]
mod tests {
    use super::super::named::*;
    use super::super::{are_isomorphic, enumerate_monoids};
    use super::*;

    #[test]
    fn product_with_trivial() {
        for m in [b2(), u1(), rz2_one()] {
            let p = direct_product(&m, &FiniteMonoid::trivial(), DEFAULT_PRODUCT_CAP).unwrap();
            p.monoid.validate().unwrap();
            assert!(are_isomorphic(&p.monoid, &m));
        }
    }

    #[test]
    fn u1_squared() {
        let p = direct_product(&u1(), &u1(), DEFAULT_PRODUCT_CAP).unwrap();
        assert_eq!(p.monoid.size(), 4);
        assert!(p.monoid.is_commutative());
        assert!(p.monoid.elements().all(|x| p.monoid.is_idempotent(x)));
    }

    #[test]
    fn lz_times_rz() {
        let p = direct_product(&lz2_one(), &rz2_one(), DEFAULT_PRODUCT_CAP).unwrap();
        assert_eq!(p.monoid.size(), 9);
        p.monoid.validate().unwrap();
        assert!(!p.monoid.is_r_trivial());
        assert!(!p.monoid.is_l_trivial());
    }

    #[test]
    fn pairing_round_trip() {
        let p = direct_product(&b2(), &u1(), DEFAULT_PRODUCT_CAP).unwrap();
        for x in b2().elements() {
            for y in u1().elements() {
                assert_eq!(p.unpair(p.pair(x, y)), (x, y));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(direct_product(&b2(), &b2(), 30).unwrap_err().is_budget());
    }

    #[test]
    fn green_classes_are_componentwise() {
        let small: Vec<FiniteMonoid> = (1..=3)
            .flat_map(|k| enumerate_monoids(k, 4).unwrap())
            .collect();
        for a in &small {
            for b in &small {
                let p = direct_product(a, b, DEFAULT_PRODUCT_CAP).unwrap();
                let g = p.monoid.green();
                for x in p.monoid.elements() {
                    for y in p.monoid.elements() {
                        let ((x1, x2), (y1, y2)) = (p.unpair(x), p.unpair(y));
                        if g.r_related(x, y) {
                            assert!(a.r_related(x1, y1) && b.r_related(x2, y2));
                        }
                        if g.l_related(x, y) {
                            assert!(a.l_related(x1, y1) && b.l_related(x2, y2));
                        }
                    }
                }
            }
        }
    }
}
