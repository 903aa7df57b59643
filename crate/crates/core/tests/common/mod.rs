#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use twistcon_core::oracle::{enumerate, FiniteEnumeration, DEFAULT_ORACLE_LIMIT};
use twistcon_core::{Element, GroupMap, PcPresentation, PresentationBuilder, Word};

pub fn w(s: &[(usize, i64)]) -> Word {
    s.iter().map(|&(i, e)| (i, BigInt::from(e))).collect()
}

fn order(m: i64) -> Option<BigInt> {
    Some(BigInt::from(m))
}

/// b^a = b c, c central.
pub fn heisenberg() -> Arc<PcPresentation> {
    let pc = PresentationBuilder::new()
        .generator("a", None)
        .generator("b", None)
        .generator("c", None)
        .conjugate(1, 0, w(&[(1, 1), (2, 1)]))
        .inverse_conjugate(1, 0, w(&[(1, 1), (2, -1)]))
        .build()
        .unwrap();
    Arc::new(pc)
}

/// Torsion-free class 3: b^a = b c, c^a = c d.
pub fn filiform4() -> Arc<PcPresentation> {
    let pc = PresentationBuilder::new()
        .generator("a", None)
        .generator("b", None)
        .generator("c", None)
        .generator("d", None)
        .conjugate(1, 0, w(&[(1, 1), (2, 1)]))
        .conjugate(2, 0, w(&[(2, 1), (3, 1)]))
        .inverse_conjugate(1, 0, w(&[(1, 1), (2, -1), (3, 1)]))
        .inverse_conjugate(2, 0, w(&[(2, 1), (3, -1)]))
        .build()
        .unwrap();
    Arc::new(pc)
}

pub fn z4() -> Arc<PcPresentation> {
    Arc::new(PresentationBuilder::new().generator("t", order(4)).build().unwrap())
}

pub fn z_free() -> Arc<PcPresentation> {
    Arc::new(PresentationBuilder::new().generator("t", None).build().unwrap())
}

pub fn z2z4() -> Arc<PcPresentation> {
    Arc::new(PresentationBuilder::new().generator("x", order(2)).generator("y", order(4)).build().unwrap())
}

pub fn d4() -> Arc<PcPresentation> {
    let pc = PresentationBuilder::new()
        .generator("s", order(2))
        .generator("r", order(2))
        .generator("t", order(2))
        .power(1, w(&[(2, 1)]))
        .conjugate(1, 0, w(&[(1, 1), (2, 1)]))
        .build()
        .unwrap();
    Arc::new(pc)
}

pub fn q8() -> Arc<PcPresentation> {
    let pc = PresentationBuilder::new()
        .generator("x", order(2))
        .generator("y", order(2))
        .generator("z", order(2))
        .power(0, w(&[(2, 1)]))
        .power(1, w(&[(2, 1)]))
        .conjugate(1, 0, w(&[(1, 1), (2, 1)]))
        .build()
        .unwrap();
    Arc::new(pc)
}

pub fn h3() -> Arc<PcPresentation> {
    let pc = PresentationBuilder::new()
        .generator("a", order(3))
        .generator("b", order(3))
        .generator("c", order(3))
        .conjugate(1, 0, w(&[(1, 1), (2, 1)]))
        .build()
        .unwrap();
    Arc::new(pc)
}

/// Dihedral of order 16 (class 3): r of order 8 as r, r², r⁴.
pub fn d8() -> Arc<PcPresentation> {
    let pc = PresentationBuilder::new()
        .generator("s", order(2))
        .generator("r", order(2))
        .generator("r2", order(2))
        .generator("r4", order(2))
        .power(1, w(&[(2, 1)]))
        .power(2, w(&[(3, 1)]))
        .conjugate(1, 0, w(&[(1, 1), (2, 1), (3, 1)]))
        .conjugate(2, 0, w(&[(2, 1), (3, 1)]))
        .build()
        .unwrap();
    Arc::new(pc)
}

/// Generators listed against the lower central series: the commutator
/// `c = [b, a]` comes before `b`.
pub fn heisenberg_reordered() -> Arc<PcPresentation> {
    // order a, c, b: b^a = c b
    let pc = PresentationBuilder::new()
        .generator("a", order(3))
        .generator("c", order(3))
        .generator("b", order(3))
        .conjugate(2, 0, w(&[(1, 1), (2, 1)]))
        .build()
        .unwrap();
    Arc::new(pc)
}

pub fn finite_corpus() -> Vec<(&'static str, Arc<PcPresentation>)> {
    vec![("Z4", z4()), ("Z2xZ4", z2z4()), ("D4", d4()), ("Q8", q8()), ("H3", h3())]
}

pub fn enumeration(g: &Arc<PcPresentation>) -> FiniteEnumeration {
    enumerate(g, DEFAULT_ORACLE_LIMIT).unwrap()
}

pub fn random_element<R: Rng>(g: &PcPresentation, rng: &mut R, bound: i64) -> Element {
    let exps: Vec<BigInt> = (0..g.len()).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
    g.element(&exps)
}

/// A random endomorphism of the Heisenberg group: a, b go anywhere and c
/// follows as the commutator.
pub fn random_heisenberg_map<R: Rng>(h: &Arc<PcPresentation>, rng: &mut R, bound: i64) -> GroupMap {
    let a = random_element(h, rng, bound);
    let b = random_element(h, rng, bound);
    let c = h.commutator(&b, &a);
    GroupMap::endomorphism(h.clone(), vec![a, b, c]).unwrap()
}

pub fn random_map<R: Rng>(maps: &[GroupMap], rng: &mut R) -> GroupMap {
    maps.choose(rng).unwrap().clone()
}
