//! Brute-force ground truth on finite groups: literal evaluation of the
//! defining equations over every element.

use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::Error;
use crate::morphism::GroupMap;
use crate::pcgroup::{Element, PcPresentation};

pub const DEFAULT_ORACLE_LIMIT: u64 = 1_000_000;

/// Every element of a finite group, in lexicographic exponent order.
#[derive(Clone, Debug)]
pub struct FiniteEnumeration {
    group: Arc<PcPresentation>,
    elements: Vec<Element>,
}

pub fn enumerate(g: &Arc<PcPresentation>, limit: u64) -> Result<FiniteEnumeration, Error> {
    let order = g.order().ok_or(Error::InfiniteGroup)?;
    if order > BigInt::from(limit) {
        return Err(Error::OracleLimitExceeded { order: order.to_string(), limit });
    }
    let orders: Vec<u64> =
        g.relative_orders().iter().map(|m| m.as_ref().and_then(ToPrimitive::to_u64).unwrap()).collect();
    let total = order.to_usize().unwrap();
    let mut elements = Vec::with_capacity(total);
    let mut digits = vec![0u64; orders.len()];
    for _ in 0..total {
        elements.push(Element::from_exponents(digits.iter().map(|&d| BigInt::from(d)).collect()));
        for i in (0..digits.len()).rev() {
            digits[i] += 1;
            if digits[i] < orders[i] {
                break;
            }
            digits[i] = 0;
        }
    }
    Ok(FiniteEnumeration { group: g.clone(), elements })
}

impl FiniteEnumeration {
    pub fn group(&self) -> &Arc<PcPresentation> {
        &self.group
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, g: &Element) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    /// Elements of the subgroup generated by `gens`, by repeated
    /// multiplication until closed.
    pub fn generated_set(&self, gens: &[Element]) -> Vec<Element> {
        let g = &self.group;
        let mut seen = vec![false; self.len()];
        let mut frontier = vec![g.identity()];
        seen[self.index_of(&g.identity()).unwrap()] = true;
        let mut out = vec![g.identity()];
        while let Some(x) = frontier.pop() {
            for s in gens {
                let y = g.multiply(&x, s);
                let i = self.index_of(&y).expect("product outside the enumeration");
                if !seen[i] {
                    seen[i] = true;
                    out.push(y.clone());
                    frontier.push(y);
                }
            }
        }
        out.sort();
        out
    }

    /// All endomorphisms, by backtracking over generator images from the
    /// last generator down; relations at index `i` only involve later
    /// generators.
    pub fn endomorphisms(&self) -> Vec<GroupMap> {
        let g = &self.group;
        let n = g.len();
        let mut out = Vec::new();
        let mut images = vec![g.identity(); n];
        self.extend_images(n, &mut images, &mut out);
        out
    }

    fn extend_images(&self, next: usize, images: &mut Vec<Element>, out: &mut Vec<GroupMap>) {
        let g = &self.group;
        if next == 0 {
            out.push(GroupMap::endomorphism(g.clone(), images.clone()).expect("backtracking checked every relation"));
            return;
        }
        let i = next - 1;
        for x in &self.elements {
            images[i] = x.clone();
            if relations_hold_from(g, images, i) {
                self.extend_images(i, images, out);
            }
        }
        images[i] = g.identity();
    }
}

/// Relations of generator `i` (power and conjugates by `g_i`), assuming the
/// images of generators after `i` are fixed.
fn relations_hold_from(g: &PcPresentation, images: &[Element], i: usize) -> bool {
    let n = g.len();
    // apply only touches images of generators after i here
    let apply = |w: &Element| {
        let mut out = g.identity();
        for (j, e) in w.exponents().iter().enumerate() {
            if !e.is_zero() {
                out = g.multiply(&out, &g.power(&images[j], e));
            }
        }
        out
    };
    if let Some(m) = g.relative_order(i) {
        if g.power(&images[i], m) != apply(g.power_relation(i)) {
            return false;
        }
    }
    for j in i + 1..n {
        if g.conjugate(&images[j], &images[i]) != apply(g.conjugate_relation(j, i)) {
            return false;
        }
    }
    true
}

/// `{x : xφ = xψ}`.
pub fn brute_equalizer(e: &FiniteEnumeration, phi: &GroupMap, psi: &GroupMap) -> Vec<Element> {
    e.elements.iter().filter(|x| phi.apply(x) == psi.apply(x)).cloned().collect()
}

/// First `x` in enumeration order with `(xφ) u = v (xψ)`.
pub fn brute_twisted(
    e: &FiniteEnumeration,
    phi: &GroupMap,
    psi: &GroupMap,
    u: &Element,
    v: &Element,
) -> Option<Element> {
    let g = &e.group;
    e.elements.iter().find(|x| g.multiply(&phi.apply(x), u) == g.multiply(v, &psi.apply(x))).cloned()
}

/// The twisted conjugacy classes `{u}_{φ,ψ}` as sorted element lists, in
/// order of their least element. The class of `u` is the orbit of
/// `u ↦ (xφ) u (xψ)⁻¹`.
pub fn brute_classes(e: &FiniteEnumeration, phi: &GroupMap, psi: &GroupMap) -> Vec<Vec<Element>> {
    let g = &e.group;
    let pairs: Vec<(Element, Element)> = e.elements.iter().map(|x| (phi.apply(x), g.invert(&psi.apply(x)))).collect();
    let mut assigned = vec![false; e.len()];
    let mut classes = Vec::new();
    for (i, u) in e.elements.iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let mut class = Vec::new();
        for (a, b) in &pairs {
            let v = g.multiply(&g.multiply(a, u), b);
            let k = e.index_of(&v).expect("orbit element outside the enumeration");
            if !assigned[k] {
                assigned[k] = true;
                class.push(v);
            }
        }
        class.sort();
        classes.push(class);
    }
    classes
}

/// The Reidemeister number `R(φ, ψ)`: the number of twisted classes.
pub fn reidemeister_number(e: &FiniteEnumeration, phi: &GroupMap, psi: &GroupMap) -> usize {
    brute_classes(e, phi, psi).len()
}

/// Ordinary conjugacy classes, ordered like [`brute_classes`].
pub fn conjugacy_classes(e: &FiniteEnumeration) -> Vec<Vec<Element>> {
    let g = &e.group;
    let mut assigned = vec![false; e.len()];
    let mut classes = Vec::new();
    for (i, u) in e.elements.iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let mut class: Vec<Element> = e.elements.iter().map(|x| g.conjugate(u, x)).collect();
        class.sort();
        class.dedup();
        for c in &class {
            assigned[e.index_of(c).unwrap()] = true;
        }
        classes.push(class);
    }
    classes
}

impl FiniteEnumeration {
    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }
}
