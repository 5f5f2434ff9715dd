use std::collections::HashMap;

use serde::Serialize;

use super::{Element, FiniteMonoid};

/// Outcome of comparing two principal ideals by inclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Order {
    Same,
    /// The first argument's ideal is strictly contained in the second's.
    LeftBelow,
    /// The second argument's ideal is strictly contained in the first's.
    RightBelow,
    Incomparable,
}

impl Order {
    pub(crate) fn from_sets(a: &[bool], b: &[bool]) -> Order {
        let a_in_b = a.iter().zip(b).all(|(&x, &y)| !x || y);
        let b_in_a = a.iter().zip(b).all(|(&x, &y)| !y || x);
        match (a_in_b, b_in_a) {
            (true, true) => Order::Same,
            (true, false) => Order::LeftBelow,
            (false, true) => Order::RightBelow,
            (false, false) => Order::Incomparable,
        }
    }
}

/// Green's R- and L-relations of a monoid, with the principal ideals they
/// are computed from.
///
/// Classes are listed in order of their smallest element; each class is
/// sorted.
#[derive(Clone, Debug, Serialize)]
pub struct GreenSummary {
    pub r_classes: Vec<Vec<Element>>,
    pub l_classes: Vec<Vec<Element>>,
    /// `r_ideals[x]` is `xM`, sorted.
    pub r_ideals: Vec<Vec<Element>>,
    /// `l_ideals[x]` is `Mx`, sorted.
    pub l_ideals: Vec<Vec<Element>>,
    #[serde(skip)]
    r_class_of: Vec<usize>,
    #[serde(skip)]
    l_class_of: Vec<usize>,
    #[serde(skip)]
    r_sets: Vec<Vec<bool>>,
    #[serde(skip)]
    l_sets: Vec<Vec<bool>>,
}

fn partition(sets: &[Vec<bool>]) -> (Vec<Vec<Element>>, Vec<usize>) {
    let mut ids: HashMap<&[bool], usize> = HashMap::new();
    let mut classes: Vec<Vec<Element>> = Vec::new();
    let mut class_of = Vec::with_capacity(sets.len());
    for (x, set) in sets.iter().enumerate() {
        let id = *ids.entry(set.as_slice()).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[id].push(Element(x));
        class_of.push(id);
    }
    (classes, class_of)
}

fn members(set: &[bool]) -> Vec<Element> {
    set.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| Element(i))
        .collect()
}

impl GreenSummary {
    pub fn compute(m: &FiniteMonoid) -> Self {
        let r_sets: Vec<Vec<bool>> = m.elements().map(|x| m.right_ideal(x)).collect();
        let l_sets: Vec<Vec<bool>> = m.elements().map(|x| m.left_ideal(x)).collect();
        let (r_classes, r_class_of) = partition(&r_sets);
        let (l_classes, l_class_of) = partition(&l_sets);
        GreenSummary {
            r_classes,
            l_classes,
            r_ideals: r_sets.iter().map(|s| members(s)).collect(),
            l_ideals: l_sets.iter().map(|s| members(s)).collect(),
            r_class_of,
            l_class_of,
            r_sets,
            l_sets,
        }
    }

    pub fn r_class_of(&self, x: Element) -> usize {
        self.r_class_of[x.0]
    }

    pub fn l_class_of(&self, x: Element) -> usize {
        self.l_class_of[x.0]
    }

    pub fn r_related(&self, u: Element, v: Element) -> bool {
        self.r_class_of[u.0] == self.r_class_of[v.0]
    }

    pub fn l_related(&self, u: Element, v: Element) -> bool {
        self.l_class_of[u.0] == self.l_class_of[v.0]
    }

    pub fn r_compare(&self, u: Element, v: Element) -> Order {
        Order::from_sets(&self.r_sets[u.0], &self.r_sets[v.0])
    }

    pub fn l_compare(&self, u: Element, v: Element) -> Order {
        Order::from_sets(&self.l_sets[u.0], &self.l_sets[v.0])
    }
}
