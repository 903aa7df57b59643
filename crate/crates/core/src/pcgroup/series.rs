//! Lower central series, refinement of a presentation through it, and the
//! quotients obtained by truncating a refined presentation.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{Element, PcPresentation, Subgroup};
use crate::error::Error;
use crate::morphism::GroupMap;

/// `γ_1 = G ⊋ γ_2 ⊋ … ⊋ γ_{c+1} = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerCentralSeries {
    terms: Vec<Subgroup>,
}

impl LowerCentralSeries {
    pub fn compute(g: &Arc<PcPresentation>, max_class: usize) -> Result<Self, Error> {
        let mut terms = vec![Subgroup::whole(g.clone())];
        loop {
            let last = terms.last().expect("series is never empty");
            if last.is_trivial() {
                return Ok(LowerCentralSeries { terms });
            }
            if terms.len() > max_class {
                return Err(Error::ClassBoundExceeded { bound: max_class });
            }
            let mut comms = Vec::new();
            for s in last.sequence() {
                for x in g.generators() {
                    let c = g.commutator(s, &x);
                    if !c.is_identity() {
                        comms.push(c);
                    }
                }
            }
            let next = Subgroup::normal_closure(g.clone(), &comms);
            if &next == last {
                return Err(Error::NotNilpotent { term: terms.len() });
            }
            terms.push(next);
        }
    }

    /// `terms()[k]` is `γ_{k+1}`; the final term is trivial.
    pub fn terms(&self) -> &[Subgroup] {
        &self.terms
    }

    pub fn class(&self) -> usize {
        self.terms.len() - 1
    }

    /// `γ_c`, the last nontrivial term.
    pub fn last_nontrivial(&self) -> Option<&Subgroup> {
        let c = self.class();
        (c > 0).then(|| &self.terms[c - 1])
    }
}

/// One generator of the refined presentation.
#[derive(Clone, Debug)]
struct LayerGenerator {
    element: Element,
    layer: usize,
    order: Option<BigInt>,
}

/// A presentation whose generators run through the lower central series in
/// layers, together with the isomorphism to the presentation it came from.
#[derive(Clone, Debug)]
pub struct RefinedGroup {
    original: Arc<PcPresentation>,
    refined: Arc<PcPresentation>,
    series: LowerCentralSeries,
    generators: Vec<LayerGenerator>,
    // layer k consists of generators layer_starts[k]..layer_starts[k + 1]
    layer_starts: Vec<usize>,
}

impl RefinedGroup {
    pub fn new(original: Arc<PcPresentation>, max_class: usize) -> Result<Self, Error> {
        let series = LowerCentralSeries::compute(&original, max_class)?;
        let n = original.len();
        let terms = series.terms();
        let mut generators = Vec::new();
        let mut layer_starts = Vec::new();
        for k in 0..series.class() {
            layer_starts.push(generators.len());
            let upper = &terms[k];
            let lower = &terms[k + 1];
            for s in upper.sequence() {
                let d = s.depth();
                let below = lower.sequence().iter().find(|t| t.depth() == d);
                let order = match below {
                    Some(t) if t.exponents()[d] == s.exponents()[d] => continue,
                    Some(t) => Some(&t.exponents()[d] / &s.exponents()[d]),
                    None => original.relative_order(d).map(|m| m / &s.exponents()[d]),
                };
                generators.push(LayerGenerator { element: s.clone(), layer: k, order });
            }
        }
        let mut group =
            RefinedGroup { refined: Arc::new(PcPresentation::trivial()), original, series, generators, layer_starts };
        group.refined = Arc::new(group.build_presentation(n));
        Ok(group)
    }

    fn build_presentation(&self, n: usize) -> PcPresentation {
        let pc = &*self.original;
        let r = self.generators.len();
        let mut names: Vec<String> = Vec::with_capacity(r);
        for h in &self.generators {
            let d = h.element.depth();
            let mut name = if h.element == pc.generator(d) {
                pc.name(d).into()
            } else {
                format!("{}_{}", pc.name(d), h.layer + 1)
            };
            while names.contains(&name) || (name != pc.name(d) && pc.index_of(&name).is_some()) {
                name.push('\'');
            }
            names.push(name);
        }
        debug_assert!(n == 0 || r > 0);
        let relorders: Vec<Option<BigInt>> = self.generators.iter().map(|h| h.order.clone()).collect();
        let as_element = |x: &Element| Element::from_exponents(self.refined_exponents(x));
        let mut powers = vec![Element::identity(r); r];
        let mut conjugates = vec![Element::identity(r); r * r];
        let mut inverse_conjugates = vec![Element::identity(r); r * r];
        for (i, hi) in self.generators.iter().enumerate() {
            if let Some(m) = &hi.order {
                powers[i] = as_element(&pc.power(&hi.element, m));
            }
            let hi_inv = pc.invert(&hi.element);
            for (j, hj) in self.generators.iter().enumerate().skip(i + 1) {
                conjugates[i * r + j] = as_element(&pc.conjugate(&hj.element, &hi.element));
                inverse_conjugates[i * r + j] = if hi.order.is_none() {
                    as_element(&pc.conjugate(&hj.element, &hi_inv))
                } else {
                    let mut e = Element::identity(r);
                    e.0[j] = BigInt::from(1);
                    e
                };
            }
        }
        PcPresentation::from_normalized(
            names,
            relorders,
            powers,
            conjugates,
            inverse_conjugates,
            Some(self.layer_starts.clone()),
        )
    }

    /// Exponents of `x` (an element of the original presentation) with
    /// respect to the refined generators.
    pub fn refined_exponents(&self, x: &Element) -> Vec<BigInt> {
        let pc = &*self.original;
        let terms = self.series.terms();
        let mut out = Vec::with_capacity(self.generators.len());
        let mut rest = x.clone();
        for k in 0..self.series.class() {
            let upper = &terms[k];
            let lower = &terms[k + 1];
            let layer: Vec<&LayerGenerator> = self.generators.iter().filter(|h| h.layer == k).collect();
            let mut coeffs = vec![BigInt::zero(); layer.len()];
            let mut y = rest.clone();
            for s in upper.sequence() {
                let d = s.depth();
                if y.depth() > d {
                    continue;
                }
                debug_assert_eq!(y.depth(), d, "element left the series term during sifting");
                let e = &y.0[d] / &s.0[d];
                let below = lower.sequence().iter().find(|t| t.depth() == d);
                match layer.iter().position(|h| h.element.depth() == d) {
                    Some(idx) => {
                        let e = match &layer[idx].order {
                            Some(m) => e.mod_floor(m),
                            None => e,
                        };
                        y = pc.multiply(&pc.power(s, &-&e), &y);
                        coeffs[idx] = e;
                        if y.depth() == d {
                            let t = below.expect("remaining exponent must come from the next term");
                            let q = &y.0[d] / &t.0[d];
                            y = pc.multiply(&pc.power(t, &-q), &y);
                        }
                    }
                    None => {
                        let t = below.expect("non-layer depth is covered by the next term");
                        y = pc.multiply(&pc.power(t, &-e), &y);
                    }
                }
            }
            debug_assert!(y.is_identity());
            let head = layer
                .iter()
                .zip(&coeffs)
                .fold(pc.identity(), |acc, (h, e)| pc.multiply(&acc, &pc.power(&h.element, e)));
            rest = pc.multiply(&pc.invert(&head), &rest);
            out.extend(coeffs);
        }
        debug_assert!(rest.is_identity(), "refined exponents do not reproduce the element");
        out
    }

    pub fn original(&self) -> &Arc<PcPresentation> {
        &self.original
    }

    /// The refined presentation, with layer boundaries set.
    pub fn presentation(&self) -> &Arc<PcPresentation> {
        &self.refined
    }

    pub fn series(&self) -> &LowerCentralSeries {
        &self.series
    }

    pub fn class(&self) -> usize {
        self.series.class()
    }

    /// Number of refined generators in each layer.
    pub fn layer_sizes(&self) -> Vec<usize> {
        let r = self.generators.len();
        (0..self.layer_starts.len())
            .map(|k| self.layer_starts.get(k + 1).copied().unwrap_or(r) - self.layer_starts[k])
            .collect()
    }

    pub fn to_refined(&self, x: &Element) -> Element {
        Element::from_exponents(self.refined_exponents(x))
    }

    pub fn from_refined(&self, y: &Element) -> Element {
        let pc = &*self.original;
        self.generators
            .iter()
            .zip(y.exponents())
            .filter(|(_, e)| !e.is_zero())
            .fold(pc.identity(), |acc, (h, e)| pc.multiply(&acc, &pc.power(&h.element, e)))
    }

    /// The isomorphisms original → refined and refined → original.
    pub fn isomorphisms(&self) -> (GroupMap, GroupMap) {
        let forward: Vec<Element> = self.original.generators().iter().map(|g| self.to_refined(g)).collect();
        let backward: Vec<Element> = self.generators.iter().map(|h| h.element.clone()).collect();
        (
            GroupMap::new_unchecked(self.original.clone(), self.refined.clone(), forward),
            GroupMap::new_unchecked(self.refined.clone(), self.original.clone(), backward),
        )
    }

    /// Transports an endomorphism of the original group to the refined one.
    pub fn transport(&self, m: &GroupMap) -> GroupMap {
        let images = (0..self.refined.len()).map(|i| self.to_refined(&m.apply(&self.generators[i].element))).collect();
        GroupMap::new_unchecked(self.refined.clone(), self.refined.clone(), images)
    }

    /// Transports a subgroup of the refined group back to the original.
    pub fn subgroup_from_refined(&self, s: &Subgroup) -> Subgroup {
        let gens: Vec<Element> = s.sequence().iter().map(|g| self.from_refined(g)).collect();
        Subgroup::generated_by(self.original.clone(), &gens)
    }

    pub fn quotient(&self, k: usize) -> QuotientData {
        QuotientData::by_lcs_term(self.refined.clone(), k)
    }
}

/// `G/γ_k` for a refined presentation `G`, realized by truncation.
#[derive(Clone, Debug)]
pub struct QuotientData {
    ambient: Arc<PcPresentation>,
    quotient: Arc<PcPresentation>,
    kept: usize,
}

impl QuotientData {
    /// Quotient by `γ_k`; `k = 1` gives the trivial group and `k = c + 1`
    /// the group itself.
    pub fn by_lcs_term(refined: Arc<PcPresentation>, k: usize) -> Self {
        let layers = refined.layers().expect("quotients need a refined presentation").to_vec();
        assert!(k >= 1 && k <= layers.len() + 1, "lower central term out of range");
        let kept = if k <= layers.len() { layers[k - 1] } else { refined.len() };
        let quotient = Arc::new(truncate(&refined, kept, layers[..k - 1].to_vec()));
        QuotientData { ambient: refined, quotient, kept }
    }

    pub fn ambient(&self) -> &Arc<PcPresentation> {
        &self.ambient
    }

    pub fn quotient(&self) -> &Arc<PcPresentation> {
        &self.quotient
    }

    pub fn project(&self, g: &Element) -> Element {
        Element::from_exponents(g.exponents()[..self.kept].to_vec())
    }

    /// Canonical lift: pads the truncated exponents with zeros.
    pub fn section(&self, g: &Element) -> Element {
        let mut e = g.exponents().to_vec();
        e.resize(self.ambient.len(), BigInt::zero());
        Element::from_exponents(e)
    }

    /// The kernel `γ_k` as a subgroup of the ambient group.
    pub fn kernel(&self) -> Subgroup {
        let gens: Vec<Element> = (self.kept..self.ambient.len()).map(|i| self.ambient.generator(i)).collect();
        Subgroup::generated_by(self.ambient.clone(), &gens)
    }

    pub fn full_preimage(&self, s: &Subgroup) -> Subgroup {
        let mut gens: Vec<Element> = s.sequence().iter().map(|g| self.section(g)).collect();
        gens.extend((self.kept..self.ambient.len()).map(|i| self.ambient.generator(i)));
        Subgroup::generated_by(self.ambient.clone(), &gens)
    }

    pub fn project_subgroup(&self, s: &Subgroup) -> Subgroup {
        let gens: Vec<Element> = s.sequence().iter().map(|g| self.project(g)).collect();
        Subgroup::generated_by(self.quotient.clone(), &gens)
    }
}

fn truncate(pc: &PcPresentation, kept: usize, layers: Vec<usize>) -> PcPresentation {
    let cut = |e: &Element| Element::from_exponents(e.exponents()[..kept].to_vec());
    let n = pc.len();
    let mut conjugates = Vec::with_capacity(kept * kept);
    let mut inverse_conjugates = Vec::with_capacity(kept * kept);
    for i in 0..kept {
        for j in 0..kept {
            conjugates.push(cut(&pc.conjugates[i * n + j]));
            inverse_conjugates.push(cut(&pc.inverse_conjugates[i * n + j]));
        }
    }
    PcPresentation::from_normalized(
        pc.names[..kept].to_vec(),
        pc.relorders[..kept].to_vec(),
        pc.powers[..kept].iter().map(cut).collect(),
        conjugates,
        inverse_conjugates,
        Some(layers),
    )
}

impl PcPresentation {
    /// Copy of the presentation with layer boundaries removed.
    pub fn without_layers(&self) -> PcPresentation {
        let mut pc = self.clone();
        pc.layers = None;
        pc
    }
}

impl Subgroup {
    /// Presentation on the sequence entries `s1, s2, …`, with relations read
    /// off by constructive membership.
    pub fn relative_presentation(&self) -> PcPresentation {
        let pc = &**self.ambient();
        let seq = self.sequence();
        let r = seq.len();
        let orders = self.relative_orders();
        let coords = |x: &Element| {
            Element::from_exponents(self.constructive_membership(x).expect("relation must lie in the subgroup"))
        };
        let names = (1..=r).map(|i| format!("s{i}")).collect();
        let mut powers = vec![Element::identity(r); r];
        let mut conjugates = vec![Element::identity(r); r * r];
        let mut inverse_conjugates = vec![Element::identity(r); r * r];
        for i in 0..r {
            if let Some(m) = &orders[i] {
                powers[i] = coords(&pc.power(&seq[i], m));
            }
            let inv = pc.invert(&seq[i]);
            for j in i + 1..r {
                conjugates[i * r + j] = coords(&pc.conjugate(&seq[j], &seq[i]));
                inverse_conjugates[i * r + j] = if orders[i].is_none() {
                    coords(&pc.conjugate(&seq[j], &inv))
                } else {
                    let mut e = Element::identity(r);
                    e.0[j] = BigInt::from(1);
                    e
                };
            }
        }
        PcPresentation::from_normalized(names, orders, powers, conjugates, inverse_conjugates, None)
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::PresentationBuilder;
    use super::*;
    use crate::DEFAULT_MAX_CLASS;

    fn lcs(pc: PcPresentation) -> (Arc<PcPresentation>, LowerCentralSeries) {
        let g = Arc::new(pc);
        let s = LowerCentralSeries::compute(&g, DEFAULT_MAX_CLASS).unwrap();
        (g, s)
    }

    #[test]
    fn series_of_test_groups() {
        let (h, s) = lcs(heisenberg());
        assert_eq!(s.class(), 2);
        assert_eq!(s.terms()[1].sequence(), &[h.generator(2)]);
        assert!(s.terms()[2].is_trivial());

        let (_, s) = lcs(z2_free());
        assert_eq!(s.class(), 1);

        let (d, s) = lcs(d4());
        assert_eq!(s.class(), 2);
        assert_eq!(s.terms()[1].sequence(), &[d.generator(2)]);
    }

    #[test]
    fn non_nilpotent_rejected() {
        // S3 = Z2 ⋉ Z3
        let s3 = PresentationBuilder::new()
            .generator("a", Some(BigInt::from(2)))
            .generator("b", Some(BigInt::from(3)))
            .conjugate(1, 0, vec![(1, BigInt::from(2))])
            .build()
            .unwrap();
        let err = LowerCentralSeries::compute(&Arc::new(s3), DEFAULT_MAX_CLASS).unwrap_err();
        assert!(matches!(err, Error::NotNilpotent { .. }));

        // Z ⋊ Z with inversion: γ_k = 2^{k-1}Z never reaches 1
        let klein = PresentationBuilder::new()
            .generator("a", None)
            .generator("b", None)
            .conjugate(1, 0, vec![(1, BigInt::from(-1))])
            .inverse_conjugate(1, 0, vec![(1, BigInt::from(-1))])
            .build()
            .unwrap();
        let err = LowerCentralSeries::compute(&Arc::new(klein), 5).unwrap_err();
        assert_eq!(err, Error::ClassBoundExceeded { bound: 5 });
    }

    #[test]
    fn refinement_keeps_refined_input() {
        let h = Arc::new(heisenberg());
        let r = RefinedGroup::new(h.clone(), DEFAULT_MAX_CLASS).unwrap();
        assert_eq!(r.presentation().without_layers(), *h);
        assert_eq!(r.presentation().layers(), Some(&[0, 2][..]));

        let d = Arc::new(d4());
        let r = RefinedGroup::new(d.clone(), DEFAULT_MAX_CLASS).unwrap();
        assert_eq!(r.presentation().without_layers(), *d);
    }

    #[test]
    fn refinement_reorders_layers() {
        // Heisenberg on generators a, c, b
        let one = BigInt::from(1);
        let g = PresentationBuilder::new()
            .generator("a", None)
            .generator("c", None)
            .generator("b", None)
            .conjugate(2, 0, vec![(1, one.clone()), (2, one.clone())])
            .inverse_conjugate(2, 0, vec![(1, -one.clone()), (2, one.clone())])
            .build()
            .unwrap();
        let g = Arc::new(g);
        let r = RefinedGroup::new(g.clone(), DEFAULT_MAX_CLASS).unwrap();
        let p = r.presentation();
        assert_eq!(p.names(), &["a", "b", "c"]);
        assert!(p.consistency_check().is_empty());
        assert_eq!(p.without_layers(), heisenberg());
        let (fwd, back) = r.isomorphisms();
        for x in g.generators() {
            assert_eq!(back.apply(&fwd.apply(&x)), x);
        }
        for y in p.generators() {
            assert_eq!(fwd.apply(&back.apply(&y)), y);
        }
    }

    #[test]
    fn quotients() {
        let h = RefinedGroup::new(Arc::new(heisenberg()), DEFAULT_MAX_CLASS).unwrap();
        let q = h.quotient(2);
        assert_eq!(q.quotient().names(), &["a", "b"]);
        let qa = q.quotient().generator(0);
        let qb = q.quotient().generator(1);
        assert_eq!(q.quotient().multiply(&qb, &qa), q.quotient().element_i64(&[1, 1]));
        assert!(h.quotient(1).quotient().is_empty());

        let d = RefinedGroup::new(Arc::new(d4()), DEFAULT_MAX_CLASS).unwrap();
        let q = d.quotient(2);
        assert_eq!(q.quotient().order(), Some(BigInt::from(4)));
        assert!(q.quotient().consistency_check().is_empty());
        // abelian: no nontrivial commutators
        let gens = q.quotient().generators();
        assert!(q.quotient().commutator(&gens[0], &gens[1]).is_identity());
    }

    #[test]
    fn preimages() {
        let h = RefinedGroup::new(Arc::new(heisenberg()), DEFAULT_MAX_CLASS).unwrap();
        let q = h.quotient(2);
        let p = h.presentation();
        let a_bar = Subgroup::generated_by(q.quotient().clone(), &[q.quotient().generator(0)]);
        assert_eq!(q.full_preimage(&a_bar).sequence(), &[p.generator(0), p.generator(2)]);
        assert_eq!(q.full_preimage(&Subgroup::trivial(q.quotient().clone())), q.kernel());
        assert_eq!(q.full_preimage(&Subgroup::whole(q.quotient().clone())), Subgroup::whole(p.clone()));
        assert_eq!(q.project_subgroup(&q.full_preimage(&a_bar)), a_bar);
    }

    #[test]
    fn relative_presentations() {
        let h = Arc::new(heisenberg());
        let s = Subgroup::generated_by(h.clone(), &[h.generator(0), h.generator(2)]);
        let rel = s.relative_presentation();
        assert_eq!(rel.relative_orders(), &[None, None]);
        assert_eq!(rel.conjugate_relation(1, 0), &rel.generator(1));
        assert!(rel.consistency_check().is_empty());

        let whole = Subgroup::whole(h.clone()).relative_presentation();
        assert_eq!(whole.relative_orders(), h.relative_orders());
        assert_eq!(whole.conjugate_relation(1, 0), h.conjugate_relation(1, 0));

        let d = Arc::new(d4());
        let s = Subgroup::generated_by(d.clone(), &[d.generator(1)]);
        let rel = s.relative_presentation();
        assert_eq!(rel.relative_orders(), &[Some(BigInt::from(2)), Some(BigInt::from(2))]);
        assert_eq!(rel.power_relation(0), &rel.generator(1));
        assert_eq!(rel.order(), Some(BigInt::from(4)));
    }
}
