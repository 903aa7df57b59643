//! Homomorphisms between polycyclic presentations, stored by generator
//! images. Maps compose left to right: `compose(f, g)` is `x ↦ (x f) g`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::pcgroup::{Element, PcPresentation, QuotientData};

/// A defining relation of the domain whose two sides have different images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationViolation {
    pub relation: String,
    /// Generators named in the relation, the conjugated one first.
    pub generators: Vec<usize>,
    pub left: Element,
    pub right: Element,
}

impl fmt::Display for RelationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} maps to {:?} != {:?}", self.relation, self.left, self.right)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    domain: Arc<PcPresentation>,
    codomain: Arc<PcPresentation>,
    images: Vec<Element>,
}

impl GroupMap {
    /// A validated homomorphism; fails when the images break any defining
    /// relation of the domain.
    pub fn new(
        domain: Arc<PcPresentation>,
        codomain: Arc<PcPresentation>,
        images: Vec<Element>,
    ) -> Result<Self, Error> {
        if images.len() != domain.len() {
            return Err(Error::ImageCountMismatch { expected: domain.len(), found: images.len() });
        }
        let images: Vec<Element> = images.iter().map(|g| codomain.element(g.exponents())).collect();
        let violations = relation_violations(&domain, &codomain, &images);
        if !violations.is_empty() {
            return Err(Error::InvalidMap(violations));
        }
        Ok(GroupMap { domain, codomain, images })
    }

    /// Endomorphism of `g` given by generator images.
    pub fn endomorphism(g: Arc<PcPresentation>, images: Vec<Element>) -> Result<Self, Error> {
        Self::new(g.clone(), g, images)
    }

    /// Skips validation; only for maps that are homomorphisms by construction.
    pub(crate) fn new_unchecked(
        domain: Arc<PcPresentation>,
        codomain: Arc<PcPresentation>,
        images: Vec<Element>,
    ) -> Self {
        GroupMap { domain, codomain, images }
    }

    pub fn identity(g: Arc<PcPresentation>) -> Self {
        let images = g.generators();
        GroupMap { domain: g.clone(), codomain: g, images }
    }

    /// The map sending every generator to the identity.
    pub fn trivial(domain: Arc<PcPresentation>, codomain: Arc<PcPresentation>) -> Self {
        let images = (0..domain.len()).map(|_| codomain.identity()).collect();
        GroupMap { domain, codomain, images }
    }

    /// `σ_u : h ↦ u⁻¹ h u`.
    pub fn inner_automorphism(g: Arc<PcPresentation>, u: &Element) -> Self {
        let images = g.generators().iter().map(|x| g.conjugate(x, u)).collect();
        GroupMap { domain: g.clone(), codomain: g, images }
    }

    pub fn domain(&self) -> &Arc<PcPresentation> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<PcPresentation> {
        &self.codomain
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn apply(&self, g: &Element) -> Element {
        apply_images(&self.codomain, &self.images, g)
    }

    /// `x ↦ (x self) other`.
    pub fn compose(&self, other: &GroupMap) -> Result<GroupMap, Error> {
        if self.codomain != other.domain {
            return Err(Error::DomainMismatch);
        }
        let images = self.images.iter().map(|g| other.apply(g)).collect();
        Ok(GroupMap { domain: self.domain.clone(), codomain: other.codomain.clone(), images })
    }

    /// The endomorphism of `G/γ_k` induced by an endomorphism of `G`.
    ///
    /// Panics when the induced images fail validation: the lower central
    /// terms are fully invariant, so that can only be an internal bug.
    pub fn induce_on_quotient(&self, q: &QuotientData) -> GroupMap {
        assert!(
            self.domain == *q.ambient() && self.codomain == *q.ambient(),
            "quotient data does not belong to this endomorphism"
        );
        let qg = q.quotient().clone();
        let images: Vec<Element> = qg.generators().iter().map(|g| q.project(&self.apply(&q.section(g)))).collect();
        let violations = relation_violations(&qg, &qg, &images);
        assert!(violations.is_empty(), "induced map is not an endomorphism: {violations:?}");
        GroupMap { domain: qg.clone(), codomain: qg, images }
    }
}

fn apply_images(codomain: &PcPresentation, images: &[Element], g: &Element) -> Element {
    let mut out = codomain.identity();
    for (img, e) in images.iter().zip(g.exponents()) {
        if e.is_zero() {
            continue;
        }
        let p = if e.is_one() { img.clone() } else { codomain.power(img, e) };
        out = codomain.multiply(&out, &p);
    }
    out
}

/// Every defining relation of `domain` (power, conjugate and inverse
/// conjugate) whose sides map to different elements under `images`.
pub fn relation_violations(
    domain: &PcPresentation,
    codomain: &PcPresentation,
    images: &[Element],
) -> Vec<RelationViolation> {
    assert_eq!(images.len(), domain.len(), "one image per generator");
    let n = domain.len();
    let apply = |g: &Element| apply_images(codomain, images, g);
    let mut out = Vec::new();
    let mut check = |relation: String, generators: &[usize], left: Element, right: Element| {
        if left != right {
            out.push(RelationViolation { relation, generators: generators.to_vec(), left, right });
        }
    };
    for (i, image) in images.iter().enumerate() {
        if let Some(m) = domain.relative_order(i) {
            let left = codomain.power(image, m);
            let right = apply(domain.power_relation(i));
            check(format!("power {}^{}", domain.name(i), m), &[i], left, right);
        }
    }
    for i in 0..n {
        let inv = domain.relative_order(i).is_none().then(|| codomain.invert(&images[i]));
        for j in i + 1..n {
            let left = codomain.conjugate(&images[j], &images[i]);
            let right = apply(domain.conjugate_relation(j, i));
            check(format!("conj {}^{}", domain.name(j), domain.name(i)), &[j, i], left, right);
            if let Some(inv) = &inv {
                let left = codomain.conjugate(&images[j], inv);
                let right = apply(domain.inverse_conjugate_relation(j, i));
                check(format!("conj {}^{}^-1", domain.name(j), domain.name(i)), &[j, i], left, right);
            }
        }
    }
    out
}
