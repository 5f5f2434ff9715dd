use serde::Serialize;

use crate::error::{Error, Result};

use super::{Element, FiniteMonoid};

pub const DEFAULT_DIVISION_CAP: usize = 10;

/// Evidence that `M` divides `N`: a submonoid of `N` and a surjective
/// homomorphism from it onto `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisionWitness {
    /// Elements of the submonoid of `N`, ascending.
    pub submonoid: Vec<Element>,
    /// `(n, m)` pairs: element of the submonoid and its image in `M`.
    pub homomorphism: Vec<(Element, Element)>,
}

impl DivisionWitness {
    /// Re-checks closure, the homomorphism laws and surjectivity.
    pub fn verify(&self, m: &FiniteMonoid, n: &FiniteMonoid) -> bool {
        let mut image = vec![None; n.size()];
        for &(x, y) in &self.homomorphism {
            image[x.0] = Some(y);
        }
        if image[n.identity().0] != Some(m.identity()) {
            return false;
        }
        for &x in &self.submonoid {
            for &y in &self.submonoid {
                let (Some(fx), Some(fy)) = (image[x.0], image[y.0]) else {
                    return false;
                };
                match image[n.mul(x, y).0] {
                    Some(fxy) if fxy == m.mul(fx, fy) => {}
                    _ => return false,
                }
            }
        }
        let mut hit = vec![false; m.size()];
        for &(_, y) in &self.homomorphism {
            hit[y.0] = true;
        }
        hit.into_iter().all(|b| b)
    }
}

/// Searches for a submonoid `S ⊆ n` and a surjective homomorphism `S → m`.
///
/// Submonoids are tried by ascending size, then lexicographically; maps in
/// lexicographic order. The first witness found is returned.
pub fn divides(m: &FiniteMonoid, n: &FiniteMonoid, cap: usize) -> Result<Option<DivisionWitness>> {
    if n.size() > cap {
        return Err(Error::CapExceeded {
            what: "division ambient size",
            cap,
        });
    }
    for subset in submonoids(n) {
        if subset.len() < m.size() {
            continue;
        }
        if let Some(map) = surjection(m, n, &subset) {
            return Ok(Some(DivisionWitness {
                homomorphism: subset.iter().copied().zip(map).collect(),
                submonoid: subset,
            }));
        }
    }
    Ok(None)
}

/// Identity-containing subsets closed under the product, ascending by size
/// then lexicographically.
fn submonoids(n: &FiniteMonoid) -> Vec<Vec<Element>> {
    let size = n.size();
    let e = n.identity().0;
    let mut out: Vec<Vec<Element>> = Vec::new();
    for mask in 0u32..(1 << size) {
        if mask & (1 << e) == 0 {
            continue;
        }
        let members: Vec<Element> = (0..size)
            .filter(|i| mask & (1 << i) != 0)
            .map(Element)
            .collect();
        let closed = members
            .iter()
            .all(|&x| members.iter().all(|&y| mask & (1 << n.mul(x, y).0) != 0));
        if closed {
            out.push(members);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn surjection(m: &FiniteMonoid, n: &FiniteMonoid, subset: &[Element]) -> Option<Vec<Element>> {
    let mut image: Vec<Option<Element>> = vec![None; n.size()];
    let mut hits = vec![0usize; m.size()];

    fn search(
        m: &FiniteMonoid,
        n: &FiniteMonoid,
        subset: &[Element],
        depth: usize,
        image: &mut Vec<Option<Element>>,
        hits: &mut Vec<usize>,
    ) -> bool {
        let missing = hits.iter().filter(|&&h| h == 0).count();
        if missing > subset.len() - depth {
            return false;
        }
        if depth == subset.len() {
            return true;
        }
        let x = subset[depth];
        let candidates: Vec<Element> = if x == n.identity() {
            vec![m.identity()]
        } else {
            m.elements()
                .filter(|&y| !n.is_idempotent(x) || m.is_idempotent(y))
                .collect()
        };
        for y in candidates {
            image[x.0] = Some(y);
            hits[y.0] += 1;
            if compatible(m, n, subset, image, x) && search(m, n, subset, depth + 1, image, hits) {
                return true;
            }
            hits[y.0] -= 1;
            image[x.0] = None;
        }
        false
    }

    if search(m, n, subset, 0, &mut image, &mut hits) {
        Some(subset.iter().map(|x| image[x.0].unwrap()).collect())
    } else {
        None
    }
}

fn compatible(
    m: &FiniteMonoid,
    n: &FiniteMonoid,
    subset: &[Element],
    image: &[Option<Element>],
    x: Element,
) -> bool {
    let fx = image[x.0].unwrap();
    for &y in subset {
        let Some(fy) = image[y.0] else { continue };
        for (p, q, fp, fq) in [(x, y, fx, fy), (y, x, fy, fx)] {
            if let Some(fpq) = image[n.mul(p, q).0] {
                if fpq != m.mul(fp, fq) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::super::named::*;
    use super::super::{direct_product, enumerate_monoids, DEFAULT_PRODUCT_CAP};
    use super::*;

    #[test]
    fn reflexive() {
        for m in [u1(), z2(), b2(), rz2_one()] {
            let w = divides(&m, &m, DEFAULT_DIVISION_CAP).unwrap().unwrap();
            assert!(w.verify(&m, &m));
            assert_eq!(w.submonoid.len(), m.size());
        }
    }

    #[test]
    fn u1_divides_u1_times_trivial() {
        let p = direct_product(&u1(), &FiniteMonoid::trivial(), DEFAULT_PRODUCT_CAP).unwrap();
        let w = divides(&u1(), &p.monoid, DEFAULT_DIVISION_CAP)
            .unwrap()
            .unwrap();
        assert!(w.verify(&u1(), &p.monoid));
    }

    #[test]
    fn u1_does_not_divide_z2() {
        assert_eq!(divides(&u1(), &z2(), DEFAULT_DIVISION_CAP).unwrap(), None);
        assert_eq!(submonoids(&z2()).len(), 2);
    }

    #[test]
    fn z2_does_not_divide_aperiodic() {
        assert_eq!(divides(&z2(), &b2(), DEFAULT_DIVISION_CAP).unwrap(), None);
        assert!(divides(&u1(), &b2(), DEFAULT_DIVISION_CAP)
            .unwrap()
            .is_some());
    }

    #[test]
    fn ambient_cap() {
        let big = cyclic_group(11);
        assert!(divides(&u1(), &big, DEFAULT_DIVISION_CAP)
            .unwrap_err()
            .is_budget());
    }

    #[test]
    fn transitive_on_small_monoids() {
        let small: Vec<FiniteMonoid> = (1..=3)
            .flat_map(|k| enumerate_monoids(k, 4).unwrap())
            .collect();
        let rel: Vec<Vec<bool>> = small
            .iter()
            .map(|a| {
                small
                    .iter()
                    .map(|b| divides(a, b, DEFAULT_DIVISION_CAP).unwrap().is_some())
                    .collect()
            })
            .collect();
        let k = small.len();
        for i in 0..k {
            assert!(rel[i][i]);
            for j in 0..k {
                for l in 0..k {
                    if rel[i][j] && rel[j][l] {
                        assert!(rel[i][l], "division not transitive at {i},{j},{l}");
                    }
                }
            }
        }
    }
}
