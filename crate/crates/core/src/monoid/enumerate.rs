use crate::error::{Error, Result};

use super::{Element, FiniteMonoid};

pub const DEFAULT_ENUMERATION_CAP: usize = 4;

/// All monoids of the given order up to isomorphism.
///
/// The identity is fixed at index 0 and the remaining cells are filled in
/// row-major order with associativity checked after every assignment. Since
/// tables are produced in lexicographic order, the first member of each
/// isomorphism class to appear is its lexicographically smallest table, which
/// is the one kept. Anti-isomorphic monoids are counted separately.
pub fn enumerate_monoids(order: usize, cap: usize) -> Result<Vec<FiniteMonoid>> {
    if order > cap {
        return Err(Error::CapExceeded {
            what: "monoid order",
            cap,
        });
    }
    if order == 0 {
        return Ok(Vec::new());
    }
    let mut table: Vec<Option<usize>> = vec![None; order * order];
    for x in 0..order {
        table[x] = Some(x);
        table[x * order] = Some(x);
    }
    let cells: Vec<usize> = (1..order)
        .flat_map(|x| (1..order).map(move |y| x * order + y))
        .collect();

    let mut found: Vec<FiniteMonoid> = Vec::new();
    fill(order, &cells, 0, &mut table, &mut found);
    Ok(found)
}

fn fill(
    order: usize,
    cells: &[usize],
    next: usize,
    table: &mut [Option<usize>],
    found: &mut Vec<FiniteMonoid>,
) {
    if next == cells.len() {
        let full: Vec<usize> = table.iter().map(|c| c.unwrap()).collect();
        let candidate = FiniteMonoid::from_raw(order, 0, full);
        if !found.iter().any(|m| are_isomorphic(m, &candidate)) {
            found.push(candidate);
        }
        return;
    }
    for value in 0..order {
        table[cells[next]] = Some(value);
        if consistent(order, table) {
            fill(order, cells, next + 1, table, found);
        }
    }
    table[cells[next]] = None;
}

/// Associativity on every triple whose products are already determined.
fn consistent(order: usize, table: &[Option<usize>]) -> bool {
    let t = |a: usize, b: usize| table[a * order + b];
    for x in 1..order {
        for y in 1..order {
            let Some(xy) = t(x, y) else { continue };
            for z in 1..order {
                let Some(yz) = t(y, z) else { continue };
                if let (Some(l), Some(r)) = (t(xy, z), t(x, yz)) {
                    if l != r {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Isomorphism-invariant fingerprint of an element.
fn fingerprint(m: &FiniteMonoid, x: Element) -> (bool, usize, usize, usize, usize) {
    let (index, period) = m.cyclic_structure(x);
    let r = m.right_ideal(x).iter().filter(|&&b| b).count();
    let l = m.left_ideal(x).iter().filter(|&&b| b).count();
    (m.is_idempotent(x), index, period, r, l)
}

/// An isomorphism `a → b`, as the image of each element of `a`, if one exists.
pub fn isomorphism(a: &FiniteMonoid, b: &FiniteMonoid) -> Option<Vec<Element>> {
    if a.size() != b.size() {
        return None;
    }
    let fa: Vec<_> = a.elements().map(|x| fingerprint(a, x)).collect();
    let fb: Vec<_> = b.elements().map(|x| fingerprint(b, x)).collect();
    let mut sa = fa.clone();
    let mut sb = fb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }

    // identity first, then the remaining elements in index order
    let mut order: Vec<Element> = vec![a.identity()];
    order.extend(a.elements().filter(|&x| x != a.identity()));
    let mut map: Vec<Option<Element>> = vec![None; a.size()];
    let mut used = vec![false; b.size()];
    map[a.identity().0] = Some(b.identity());
    used[b.identity().0] = true;

    #[allow(clippy::too_many_arguments)]
    fn search(
        a: &FiniteMonoid,
        b: &FiniteMonoid,
        fa: &[(bool, usize, usize, usize, usize)],
        fb: &[(bool, usize, usize, usize, usize)],
        order: &[Element],
        depth: usize,
        map: &mut Vec<Option<Element>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let x = order[depth];
        for y in b.elements() {
            if used[y.0] || fa[x.0] != fb[y.0] {
                continue;
            }
            map[x.0] = Some(y);
            used[y.0] = true;
            if respects_products(a, b, map, x) && search(a, b, fa, fb, order, depth + 1, map, used)
            {
                return true;
            }
            map[x.0] = None;
            used[y.0] = false;
        }
        false
    }

    if search(a, b, &fa, &fb, &order, 1, &mut map, &mut used) {
        Some(map.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

/// Checks `f(xy) = f(x)f(y)` for every product involving the newly mapped
/// element `x` whose factors and result are all mapped.
fn respects_products(
    a: &FiniteMonoid,
    b: &FiniteMonoid,
    map: &[Option<Element>],
    x: Element,
) -> bool {
    for y in a.elements() {
        let Some(fy) = map[y.0] else { continue };
        let fx = map[x.0].unwrap();
        for (p, q, fp, fq) in [(x, y, fx, fy), (y, x, fy, fx)] {
            if let Some(fpq) = map[a.mul(p, q).0] {
                if fpq != b.mul(fp, fq) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn are_isomorphic(a: &FiniteMonoid, b: &FiniteMonoid) -> bool {
    isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::super::named::*;
    use super::*;

    #[test]
    fn counts_up_to_three() {
        assert_eq!(enumerate_monoids(1, 4).unwrap().len(), 1);
        assert_eq!(enumerate_monoids(2, 4).unwrap().len(), 2);
        assert_eq!(enumerate_monoids(3, 4).unwrap().len(), 7);
    }

    #[test]
    fn order_two_is_u1_and_z2() {
        let two = enumerate_monoids(2, 4).unwrap();
        assert!(two.iter().any(|m| are_isomorphic(m, &u1())));
        assert!(two.iter().any(|m| are_isomorphic(m, &z2())));
    }

    #[test]
    fn cap_exceeded() {
        assert!(matches!(
            enumerate_monoids(5, 4),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn members_are_valid_and_distinct() {
        let three = enumerate_monoids(3, 4).unwrap();
        for (i, a) in three.iter().enumerate() {
            a.validate().unwrap();
            for b in &three[i + 1..] {
                assert!(!are_isomorphic(a, b));
            }
        }
    }

    #[test]
    fn isomorphism_witness_is_a_homomorphism() {
        let b = b2();
        // relabel B2 by reversing the non-identity elements
        let perm: Vec<usize> = vec![0, 5, 4, 3, 2, 1];
        let mut rows = vec![vec![0; 6]; 6];
        for x in 0..6 {
            for y in 0..6 {
                rows[perm[x]][perm[y]] = perm[b.mul(Element(x), Element(y)).0];
            }
        }
        let c = FiniteMonoid::from_table(rows, 0).unwrap();
        let f = isomorphism(&b, &c).expect("relabelled copy");
        for x in b.elements() {
            for y in b.elements() {
                assert_eq!(f[b.mul(x, y).0], c.mul(f[x.0], f[y.0]));
            }
        }
        assert!(are_isomorphic(&b, &b));
        assert!(!are_isomorphic(&u1(), &z2()));
    }

    #[test]
    fn dual_is_not_identified() {
        // LZ2¹ and RZ2¹ are anti-isomorphic but not isomorphic
        assert!(are_isomorphic(&lz2_one().dual(), &rz2_one()));
        assert!(!are_isomorphic(&lz2_one(), &rz2_one()));
    }
}
