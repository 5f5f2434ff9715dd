//! Finite monoids given by their multiplication table.
//!
//! Elements are dense indices `0..size`; every operation is a table lookup.
//! A monoid is immutable once built, so it can be shared freely between
//! threads.

mod division;
mod enumerate;
mod green;
mod product;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use division::{divides, DivisionWitness, DEFAULT_DIVISION_CAP};
pub use enumerate::{are_isomorphic, enumerate_monoids, isomorphism, DEFAULT_ENUMERATION_CAP};
pub use green::{GreenSummary, Order};
pub use product::{direct_product, ProductMonoid, DEFAULT_PRODUCT_CAP};

/// Default cap on the number of distinct transformations in a closure.
pub const DEFAULT_TRANSFORMATION_CAP: usize = 4096;

/// An element of a [`FiniteMonoid`], identified by its table index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(pub usize);

impl Element {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite monoid stored as a complete multiplication table.
///
/// `table[x][y]` is the product `xy` (row is the left factor).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    size: usize,
    identity: usize,
    table: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// JSON form of a monoid table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonoidFile {
    pub size: usize,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// JSON form of a transformation monoid given by generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransformationFile {
    pub points: usize,
    pub generators: Vec<Vec<usize>>,
}

impl FiniteMonoid {
    /// Builds a monoid from a square table, checking ranges, the identity
    /// laws and associativity.
    pub fn from_table(rows: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::RangeError("table must have at least one row".into()));
        }
        let mut table = Vec::with_capacity(size * size);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != size {
                return Err(Error::RangeError(format!(
                    "row {i} has {} entries, expected {size}",
                    row.len()
                )));
            }
            for &entry in &row {
                if entry >= size {
                    return Err(Error::RangeError(format!(
                        "entry {entry} in row {i} is not below {size}"
                    )));
                }
            }
            table.extend(row);
        }
        if identity >= size {
            return Err(Error::RangeError(format!(
                "identity {identity} is not below {size}"
            )));
        }
        let m = FiniteMonoid {
            size,
            identity,
            table,
            labels: None,
        };
        m.validate()?;
        Ok(m)
    }

    /// Internal constructor for tables known to be valid.
    pub(crate) fn from_raw(size: usize, identity: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), size * size);
        FiniteMonoid {
            size,
            identity,
            table,
            labels: None,
        }
    }

    /// The one-element monoid.
    pub fn trivial() -> Self {
        Self::from_raw(1, 0, vec![0])
    }

    /// Attaches display names, one per element.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::RangeError(format!(
                "{} labels given for {} elements",
                labels.len(),
                self.size
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Re-checks the identity laws and associativity.
    pub fn validate(&self) -> Result<()> {
        let e = self.identity;
        for x in 0..self.size {
            if self.table[e * self.size + x] != x || self.table[x * self.size + e] != x {
                return Err(Error::IdentityViolation {
                    identity: e,
                    witness: x,
                });
            }
        }
        for x in 0..self.size {
            for y in 0..self.size {
                let xy = self.table[x * self.size + y];
                for z in 0..self.size {
                    let yz = self.table[y * self.size + z];
                    if self.table[xy * self.size + z] != self.table[x * self.size + yz] {
                        return Err(Error::AssociativityViolation { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    /// Closure of `generators` (and the identity map) under composition.
    ///
    /// Products read left to right: `fg` applies `f` first, then `g`, which
    /// matches the action of words on automaton states. Elements are numbered
    /// in discovery order: the identity first, then breadth-first by right
    /// multiplication with generators. Returns the generator embedding.
    pub fn from_transformations(
        points: usize,
        generators: &[Vec<usize>],
        cap: usize,
    ) -> Result<(Self, Vec<Element>)> {
        if points == 0 {
            return Err(Error::RangeError(
                "transformations need at least one point".into(),
            ));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.len() != points {
                return Err(Error::RangeError(format!(
                    "generator {i} has {} images, expected {points}",
                    g.len()
                )));
            }
            if let Some(&bad) = g.iter().find(|&&p| p >= points) {
                return Err(Error::RangeError(format!(
                    "generator {i} maps to point {bad}, not below {points}"
                )));
            }
        }

        let mut maps: Vec<Vec<usize>> = vec![(0..points).collect()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(maps[0].clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let next: Vec<usize> = maps[i].iter().map(|&p| g[p]).collect();
                if !index.contains_key(&next) {
                    if maps.len() >= cap {
                        return Err(Error::SizeBudgetExceeded {
                            what: "transformation closure",
                            cap,
                        });
                    }
                    index.insert(next.clone(), maps.len());
                    queue.push_back(maps.len());
                    maps.push(next);
                }
            }
        }

        let size = maps.len();
        let mut table = Vec::with_capacity(size * size);
        for f in &maps {
            for g in &maps {
                let fg: Vec<usize> = f.iter().map(|&p| g[p]).collect();
                table.push(index[&fg]);
            }
        }
        let embedding = generators.iter().map(|g| Element(index[g])).collect();
        Ok((Self::from_raw(size, 0, table), embedding))
    }

    /// Reads either the table format or the transformation format.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        if value.get("points").is_some() {
            let file: TransformationFile = serde_json::from_value(value)?;
            let (m, _) = Self::from_transformations(
                file.points,
                &file.generators,
                DEFAULT_TRANSFORMATION_CAP,
            )?;
            return Ok(m);
        }
        let file: MonoidFile = serde_json::from_value(value)?;
        if file.size != file.table.len() {
            return Err(Error::FormatError(format!(
                "size {} does not match the {} table rows",
                file.size,
                file.table.len()
            )));
        }
        let m = Self::from_table(file.table, file.identity)?;
        match file.labels {
            Some(labels) => m.with_labels(labels),
            None => Ok(m),
        }
    }

    pub fn to_file(&self) -> MonoidFile {
        MonoidFile {
            size: self.size,
            identity: self.identity,
            table: self.rows(),
            labels: self.labels.clone(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> Element {
        Element(self.identity)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.size).map(Element)
    }

    /// Range-checked element constructor.
    pub fn element(&self, index: usize) -> Result<Element> {
        if index < self.size {
            Ok(Element(index))
        } else {
            Err(Error::RangeError(format!(
                "element {index} does not belong to a monoid of size {}",
                self.size
            )))
        }
    }

    /// Looks an element up by label, falling back to its numeric index.
    pub fn find(&self, name: &str) -> Option<Element> {
        if let Some(labels) = &self.labels {
            if let Some(i) = labels.iter().position(|l| l == name) {
                return Some(Element(i));
            }
        }
        name.parse::<usize>()
            .ok()
            .filter(|&i| i < self.size)
            .map(Element)
    }

    pub fn label(&self, x: Element) -> String {
        match &self.labels {
            Some(labels) => labels[x.0].clone(),
            None => x.0.to_string(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        Element(self.table[x.0 * self.size + y.0])
    }

    /// Product of a sequence of elements; the empty product is the identity.
    pub fn product<I: IntoIterator<Item = Element>>(&self, items: I) -> Element {
        items
            .into_iter()
            .fold(self.identity(), |acc, x| self.mul(acc, x))
    }

    pub fn power(&self, x: Element, k: u64) -> Element {
        let mut result = self.identity();
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    pub fn is_idempotent(&self, x: Element) -> bool {
        self.mul(x, x) == x
    }

    /// Index and period of the cyclic semigroup `{x, x², …}`: the smallest
    /// `i ≥ 1` and `p ≥ 1` with `x^(i+p) = x^i`.
    pub fn cyclic_structure(&self, x: Element) -> (usize, usize) {
        let mut seen = vec![0usize; self.size];
        let mut current = x;
        let mut k = 1;
        loop {
            if seen[current.0] != 0 {
                let index = seen[current.0];
                return (index, k - index);
            }
            seen[current.0] = k;
            current = self.mul(current, x);
            k += 1;
        }
    }

    /// The unique idempotent among the positive powers of `x` (written `x^ω`).
    pub fn idempotent_power(&self, x: Element) -> Element {
        let (index, period) = self.cyclic_structure(x);
        let exponent = index.div_ceil(period) * period;
        self.power(x, exponent as u64)
    }

    /// Every element has period one, i.e. `x^(k+1) = x^k` for some `k`.
    pub fn is_aperiodic(&self) -> bool {
        self.elements().all(|x| self.cyclic_structure(x).1 == 1)
    }

    /// Right ideal `xM` as a membership vector.
    pub fn right_ideal(&self, x: Element) -> Vec<bool> {
        let mut set = vec![false; self.size];
        for y in self.elements() {
            set[self.mul(x, y).0] = true;
        }
        set
    }

    /// Left ideal `Mx` as a membership vector.
    pub fn left_ideal(&self, x: Element) -> Vec<bool> {
        let mut set = vec![false; self.size];
        for y in self.elements() {
            set[self.mul(y, x).0] = true;
        }
        set
    }

    pub fn r_related(&self, u: Element, v: Element) -> bool {
        self.right_ideal(u) == self.right_ideal(v)
    }

    pub fn l_related(&self, u: Element, v: Element) -> bool {
        self.left_ideal(u) == self.left_ideal(v)
    }

    /// Compares `uM` and `vM` by inclusion.
    pub fn r_compare(&self, u: Element, v: Element) -> Order {
        Order::from_sets(&self.right_ideal(u), &self.right_ideal(v))
    }

    /// Compares `Mu` and `Mv` by inclusion.
    pub fn l_compare(&self, u: Element, v: Element) -> Order {
        Order::from_sets(&self.left_ideal(u), &self.left_ideal(v))
    }

    pub fn green(&self) -> GreenSummary {
        GreenSummary::compute(self)
    }

    pub fn is_r_trivial(&self) -> bool {
        self.green().r_classes.len() == self.size
    }

    pub fn is_l_trivial(&self) -> bool {
        self.green().l_classes.len() == self.size
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// The submonoid generated by `generators`.
    pub fn generated_by(&self, generators: &[Element]) -> Vec<Element> {
        let mut seen = vec![false; self.size];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            for &g in generators {
                let y = self.mul(x, g);
                if !seen[y.0] {
                    seen[y.0] = true;
                    queue.push_back(y);
                }
            }
        }
        self.elements().filter(|x| seen[x.0]).collect()
    }

    /// Monoid with the multiplication reversed (`x ∘ y = yx`).
    pub fn dual(&self) -> Self {
        let mut table = vec![0; self.size * self.size];
        for x in 0..self.size {
            for y in 0..self.size {
                table[x * self.size + y] = self.table[y * self.size + x];
            }
        }
        FiniteMonoid {
            size: self.size,
            identity: self.identity,
            table,
            labels: self.labels.clone(),
        }
    }
}

/// Small named monoids used throughout tests, examples and the CLI.
pub mod named {
    use super::FiniteMonoid;

    fn labelled(rows: Vec<Vec<usize>>, labels: &[&str]) -> FiniteMonoid {
        FiniteMonoid::from_table(rows, 0)
            .and_then(|m| m.with_labels(labels.iter().map(|s| s.to_string()).collect()))
            .expect("built-in table is a monoid")
    }

    /// `{1, 0}` under multiplication.
    pub fn u1() -> FiniteMonoid {
        labelled(vec![vec![0, 1], vec![1, 1]], &["1", "0"])
    }

    /// Cyclic group of order two.
    pub fn z2() -> FiniteMonoid {
        labelled(vec![vec![0, 1], vec![1, 0]], &["e", "g"])
    }

    /// Cyclic group of order `n` with generator `1`.
    pub fn cyclic_group(n: usize) -> FiniteMonoid {
        let rows = (0..n)
            .map(|x| (0..n).map(|y| (x + y) % n).collect())
            .collect();
        FiniteMonoid::from_table(rows, 0).expect("cyclic group")
    }

    /// Left-zero semigroup `{a, b}` (`xy = x`) with an identity adjoined.
    pub fn lz2_one() -> FiniteMonoid {
        labelled(
            vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]],
            &["1", "a", "b"],
        )
    }

    /// Right-zero semigroup `{a, b}` (`xy = y`) with an identity adjoined.
    pub fn rz2_one() -> FiniteMonoid {
        labelled(
            vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 1, 2]],
            &["1", "a", "b"],
        )
    }

    /// Brandt monoid `{1, a, b, ab, ba, 0}` with `aba = a`, `bab = b`,
    /// `aa = bb = 0`.
    pub fn b2() -> FiniteMonoid {
        // 0:1 1:a 2:b 3:ab 4:ba 5:0
        let rows = vec![
            vec![0, 1, 2, 3, 4, 5],
            vec![1, 5, 3, 5, 1, 5],
            vec![2, 4, 5, 2, 5, 5],
            vec![3, 1, 5, 3, 5, 5],
            vec![4, 5, 2, 5, 4, 5],
            vec![5, 5, 5, 5, 5, 5],
        ];
        labelled(rows, &["1", "a", "b", "ab", "ba", "0"])
    }

    /// Chain `1 > e > 0` with product = minimum.
    pub fn chain3() -> FiniteMonoid {
        labelled(
            vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]],
            &["1", "e", "0"],
        )
    }

    /// Looks up one of the built-in monoids by name.
    pub fn by_name(name: &str) -> Option<FiniteMonoid> {
        Some(match name.to_ascii_lowercase().as_str() {
            "trivial" => FiniteMonoid::trivial(),
            "u1" => u1(),
            "z2" => z2(),
            "lz2" | "lz2one" | "lz2_one" => lz2_one(),
            "rz2" | "rz2one" | "rz2_one" => rz2_one(),
            "b2" => b2(),
            "chain3" => chain3(),
            _ => return None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn trivial_table() {
        let m = FiniteMonoid::from_table(vec![vec![0]], 0).unwrap();
        assert_eq!(m.size(), 1);
        assert_eq!(m, FiniteMonoid::trivial());
    }

    #[test]
    fn u1_and_z2_tables() {
        // elements 0 ↦ "1", 1 ↦ "0"
        let u1 = FiniteMonoid::from_table(vec![vec![0, 1], vec![1, 1]], 0).unwrap();
        assert_eq!(u1.size(), 2);
        assert!(FiniteMonoid::from_table(vec![vec![0, 1], vec![1, 0]], 0).is_ok());
    }

    #[test]
    fn identity_violation() {
        let err = FiniteMonoid::from_table(vec![vec![1, 0], vec![0, 0]], 1).unwrap_err();
        assert!(matches!(err, Error::IdentityViolation { identity: 1, .. }));
    }

    #[test]
    fn range_and_shape_errors() {
        assert!(matches!(
            FiniteMonoid::from_table(vec![vec![0, 2], vec![1, 0]], 0),
            Err(Error::RangeError(_))
        ));
        assert!(matches!(
            FiniteMonoid::from_table(vec![vec![0, 1], vec![1]], 0),
            Err(Error::RangeError(_))
        ));
        assert!(matches!(
            FiniteMonoid::from_table(vec![vec![0]], 3),
            Err(Error::RangeError(_))
        ));
    }

    #[test]
    fn associativity_violation_has_witness() {
        // identity 0; 1*1 = 2, 1*2 = 1, 2*1 = 2, 2*2 = 2
        let rows = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 2, 2]];
        match FiniteMonoid::from_table(rows.clone(), 0) {
            Err(Error::AssociativityViolation { x, y, z }) => {
                let t = |a: usize, b: usize| rows[a][b];
                assert_ne!(t(t(x, y), z), t(x, t(y, z)));
            }
            other => panic!("expected associativity violation, got {other:?}"),
        }
    }

    #[test]
    fn transformation_closures() {
        let (m, gens) = FiniteMonoid::from_transformations(2, &[vec![0, 1]], 100).unwrap();
        assert_eq!(m.size(), 1);
        assert_eq!(gens, vec![Element(0)]);

        let swap = vec![1, 0];
        let c0 = vec![0, 0];
        let c1 = vec![1, 1];
        let (full, _) =
            FiniteMonoid::from_transformations(2, &[swap, c0.clone(), c1], 100).unwrap();
        assert_eq!(full.size(), 4);

        let (m, gens) = FiniteMonoid::from_transformations(2, &[c0], 100).unwrap();
        assert_eq!(m.size(), 2);
        assert!(m.is_idempotent(gens[0]));
        assert!(are_isomorphic(&m, &u1()));
    }

    #[test]
    fn transformation_cap() {
        let cycle: Vec<usize> = (0..5).map(|i| (i + 1) % 5).collect();
        let err = FiniteMonoid::from_transformations(5, &[cycle], 3).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn b2_products() {
        let b2 = b2();
        let f = |s: &str| b2.find(s).unwrap();
        assert_eq!(b2.mul(f("ab"), f("ba")), f("0"));
        assert_eq!(b2.mul(b2.mul(f("a"), f("b")), f("a")), f("a"));
        assert_eq!(b2.mul(b2.mul(f("b"), f("a")), f("b")), f("b"));
    }

    #[test]
    fn powers() {
        let z2 = z2();
        let g = z2.find("g").unwrap();
        assert_eq!(z2.power(g, 2), z2.identity());
        for m in [b2(), u1(), cyclic_group(5)] {
            for x in m.elements() {
                assert_eq!(m.power(x, 0), m.identity());
                assert_eq!(m.power(x, 3), m.mul(x, m.mul(x, x)));
            }
        }
    }

    #[test]
    fn idempotent_powers() {
        let b2 = b2();
        let f = |s: &str| b2.find(s).unwrap();
        assert_eq!(b2.idempotent_power(f("a")), f("0"));
        assert_eq!(b2.idempotent_power(f("ab")), f("ab"));
        let c3 = cyclic_group(3);
        assert_eq!(c3.idempotent_power(Element(1)), c3.identity());
        for x in b2.elements().filter(|&x| b2.is_idempotent(x)) {
            assert_eq!(b2.idempotent_power(x), x);
        }
    }

    #[test]
    fn idempotent_power_is_the_only_idempotent_power() {
        for m in [b2(), cyclic_group(6), chain3(), lz2_one()] {
            for x in m.elements() {
                let e = m.idempotent_power(x);
                assert!(m.is_idempotent(e));
                let powers: Vec<Element> =
                    (1..=2 * m.size() as u64).map(|k| m.power(x, k)).collect();
                assert!(powers.contains(&e));
                assert!(powers
                    .iter()
                    .filter(|&&p| m.is_idempotent(p))
                    .all(|&p| p == e));
            }
        }
    }

    #[test]
    fn r_and_l_order() {
        let u1 = u1();
        let (one, zero) = (u1.find("1").unwrap(), u1.find("0").unwrap());
        assert_eq!(u1.r_compare(zero, one), Order::LeftBelow);
        let b2 = b2();
        let f = |s: &str| b2.find(s).unwrap();
        assert_eq!(b2.r_compare(f("a"), f("ab")), Order::Same);
        for m in [b2.clone(), u1.clone(), rz2_one()] {
            for x in m.elements() {
                let o = m.r_compare(m.identity(), x);
                assert!(matches!(o, Order::Same | Order::RightBelow));
            }
        }
    }

    #[test]
    fn triviality_flags() {
        let t = FiniteMonoid::trivial();
        assert!(t.is_r_trivial() && t.is_l_trivial());
        let rz = rz2_one();
        assert!(!rz.is_r_trivial());
        assert!(rz.is_l_trivial());
        let z2 = z2();
        assert!(!z2.is_r_trivial() && !z2.is_l_trivial());
    }

    #[test]
    fn json_formats() {
        let text = r#"{"size": 2, "identity": 0, "table": [[0,1],[1,1]], "labels": ["1","0"]}"#;
        let m = FiniteMonoid::from_json(text).unwrap();
        assert_eq!(m, u1());
        let round = serde_json::to_string(&m.to_file()).unwrap();
        assert_eq!(FiniteMonoid::from_json(&round).unwrap(), m);

        let t = r#"{"points": 2, "generators": [[1,0],[0,0],[1,1]]}"#;
        assert_eq!(FiniteMonoid::from_json(t).unwrap().size(), 4);

        assert!(matches!(
            FiniteMonoid::from_json(r#"{"size": 3, "identity": 0, "table": [[0]]}"#),
            Err(Error::FormatError(_))
        ));
    }

    #[test]
    fn generated_submonoid() {
        let b2 = b2();
        let a = b2.find("a").unwrap();
        let b = b2.find("b").unwrap();
        assert_eq!(b2.generated_by(&[a, b]).len(), 6);
        assert_eq!(b2.generated_by(&[a]).len(), 3);
        assert_eq!(b2.generated_by(&[]).len(), 1);
    }
}
