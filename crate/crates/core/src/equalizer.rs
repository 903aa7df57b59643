//! Generating sets for equalizers `Eq_{φ,ψ}(G) = {x : xφ = xψ}`, by
//! induction on the nilpotency class.
//!
//! With `C = γ_c(G)` central, the preimage `G₁` of the equalizer of the maps
//! induced on `G/C` consists of the `g` with `gφ = c_g (gψ)` for some
//! `c_g ∈ C`. The map `μ(g) = (gφ)(gψ)⁻¹` is then a homomorphism `G₁ → C`
//! whose kernel is the equalizer.
//!
//! The functions here work on refined presentations (layer boundaries set);
//! [`equalizer`] handles an arbitrary presentation by refining first.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::morphism::GroupMap;
use crate::pcgroup::{Element, PcPresentation, QuotientData, RefinedGroup, Subgroup};
use crate::zlinalg::{kernel_mod_lattice, solve_mod_lattice, vec_mul, AbelianStructure, IntMatrix};
use crate::DEFAULT_MAX_CLASS;

/// The last lower central layer of a refined presentation, as a coordinate
/// abelian group. For class at most one this is the whole group.
#[derive(Clone, Debug)]
pub struct CentralLayer {
    start: usize,
    structure: AbelianStructure,
}

impl CentralLayer {
    pub fn of(pc: &PcPresentation) -> Self {
        let layers = pc.layers().expect("central layer of an unrefined presentation");
        let start = layers.last().copied().unwrap_or(0);
        let n = pc.len();
        let t = n - start;
        let mut rows = Vec::new();
        for i in start..n {
            if let Some(m) = pc.relative_order(i) {
                let mut row: Vec<BigInt> = pc.power_relation(i).exponents()[start..].iter().map(|e| -e).collect();
                row[i - start] += m;
                rows.push(row);
            }
        }
        CentralLayer { start, structure: AbelianStructure::new(IntMatrix::from_rows(t, rows)) }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn structure(&self) -> &AbelianStructure {
        &self.structure
    }

    pub fn contains(&self, x: &Element) -> bool {
        x.depth() >= self.start
    }

    pub fn coordinates(&self, x: &Element) -> Vec<BigInt> {
        debug_assert!(self.contains(x));
        x.exponents()[self.start..].to_vec()
    }

    pub fn element(&self, pc: &PcPresentation, coords: &[BigInt]) -> Element {
        let mut e = alloc::vec![BigInt::zero(); self.start];
        e.extend_from_slice(coords);
        pc.element(&e)
    }
}

/// `μ(g) = (gφ)(gψ)⁻¹`; fails unless the result lies in `c`.
pub fn mu(g: &Element, phi: &GroupMap, psi: &GroupMap, c: &Subgroup) -> Result<Element, Error> {
    let pc = phi.codomain();
    let value = pc.multiply(&phi.apply(g), &pc.invert(&psi.apply(g)));
    if c.contains(&value) {
        Ok(value)
    } else {
        Err(Error::NotInCEqualizer)
    }
}

/// `μ` evaluated on the sequence of its source subgroup.
#[derive(Clone, Debug)]
pub struct MuMap {
    source: Subgroup,
    target: CentralLayer,
    images: Vec<Element>,
}

impl MuMap {
    pub fn new(source: Subgroup, phi: &GroupMap, psi: &GroupMap) -> Result<Self, Error> {
        let pc = source.ambient().clone();
        let target = CentralLayer::of(&pc);
        let mut images = Vec::with_capacity(source.len());
        for g in source.sequence() {
            let value = pc.multiply(&phi.apply(g), &pc.invert(&psi.apply(g)));
            if !target.contains(&value) {
                return Err(Error::NotInCEqualizer);
            }
            images.push(value);
        }
        Ok(MuMap { source, target, images })
    }

    pub fn source(&self) -> &Subgroup {
        &self.source
    }

    pub fn target(&self) -> &CentralLayer {
        &self.target
    }

    /// `μ` of each source sequence entry.
    pub fn images(&self) -> &[Element] {
        &self.images
    }

    /// Rows are the `C`-coordinates of the images.
    pub fn matrix(&self) -> IntMatrix {
        let rows = self.images.iter().map(|c| self.target.coordinates(c)).collect();
        IntMatrix::from_rows(self.target.structure().dim(), rows)
    }

    /// `μ` of an arbitrary source element, through its sequence exponents.
    pub fn evaluate(&self, g: &Element) -> Option<Element> {
        let e = self.source.constructive_membership(g)?;
        let coords = vec_mul(&e, &self.matrix());
        Some(self.target.element(self.source.ambient(), &coords))
    }
}

/// Relation lattice of the abelianization of a presentation, in generator
/// coordinates.
pub fn abelianized_relations(pc: &PcPresentation) -> IntMatrix {
    let n = pc.len();
    let mut rows = Vec::new();
    for i in 0..n {
        if let Some(m) = pc.relative_order(i) {
            let mut row: Vec<BigInt> = pc.power_relation(i).exponents().iter().map(|e| -e).collect();
            row[i] += m;
            rows.push(row);
        }
        for j in i + 1..n {
            let mut row: Vec<BigInt> = pc.conjugate_relation(j, i).exponents().iter().map(|e| -e).collect();
            row[j] += BigInt::one();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    IntMatrix::from_rows(n, rows)
}

/// `ker μ`: the derived subgroup of the source together with the elements
/// whose sequence exponents lie in the integer kernel of `μ` modulo the
/// relations of `C`.
pub fn kernel_to_abelian(s: &Subgroup, m: &MuMap) -> Subgroup {
    debug_assert_eq!(s, m.source());
    let mu_matrix = m.matrix();
    let lattice = m.target().structure().relations();
    // μ factors through the abelianization of S
    debug_assert!({
        let rel = abelianized_relations(&s.relative_presentation());
        let ok = rel.row_vectors().all(|r| m.target().structure().is_zero(&vec_mul(r, &mu_matrix)));
        ok
    });
    let kernel = kernel_mod_lattice(&mu_matrix, lattice);
    let mut gens: Vec<Element> = s.derived_subgroup().sequence().to_vec();
    gens.extend(kernel.row_vectors().map(|row| s.product(row)));
    Subgroup::generated_by(s.ambient().clone(), &gens)
}

fn abelian_difference(pc: &PcPresentation, layer: &CentralLayer, phi: &GroupMap, psi: &GroupMap) -> IntMatrix {
    let rows = pc
        .generators()
        .iter()
        .map(|g| {
            let a = layer.coordinates(&phi.apply(g));
            let b = layer.coordinates(&psi.apply(g));
            a.into_iter().zip(b).map(|(x, y)| x - y).collect()
        })
        .collect();
    IntMatrix::from_rows(pc.len(), rows)
}

fn class_of(pc: &PcPresentation) -> usize {
    pc.layers().expect("refined presentation required").len()
}

/// Quotient of a refined presentation by its last nontrivial lower central
/// term.
pub fn quotient_by_last_term(pc: &Arc<PcPresentation>) -> QuotientData {
    QuotientData::by_lcs_term(pc.clone(), class_of(pc))
}

/// Preimage of the equalizer of the maps induced on `G/γ_c`.
pub fn c_equalizer(pc: &Arc<PcPresentation>, phi: &GroupMap, psi: &GroupMap) -> Subgroup {
    let q = quotient_by_last_term(pc);
    let phi_bar = phi.induce_on_quotient(&q);
    let psi_bar = psi.induce_on_quotient(&q);
    q.full_preimage(&equalizer_refined(q.quotient(), &phi_bar, &psi_bar))
}

/// Equalizer of two endomorphisms of a refined presentation.
pub fn equalizer_refined(pc: &Arc<PcPresentation>, phi: &GroupMap, psi: &GroupMap) -> Subgroup {
    if class_of(pc) <= 1 {
        let layer = CentralLayer::of(pc);
        let diff = abelian_difference(pc, &layer, phi, psi);
        let kernel = kernel_mod_lattice(&diff, layer.structure().relations());
        let gens: Vec<Element> = kernel.row_vectors().map(|row| pc.element(row)).collect();
        return Subgroup::generated_by(pc.clone(), &gens);
    }
    let g1 = c_equalizer(pc, phi, psi);
    let m = MuMap::new(g1.clone(), phi, psi).expect("C-equalizer elements have central defect");
    kernel_to_abelian(&g1, &m)
}

/// Equalizer of two endomorphisms of `group`'s original presentation.
pub fn equalizer_of(group: &RefinedGroup, phi: &GroupMap, psi: &GroupMap) -> Subgroup {
    assert!(
        phi.domain() == group.original() && psi.domain() == group.original(),
        "maps must be endomorphisms of the group"
    );
    let phi_r = group.transport(phi);
    let psi_r = group.transport(psi);
    let eq = equalizer_refined(group.presentation(), &phi_r, &psi_r);
    group.subgroup_from_refined(&eq)
}

/// Equalizer of two endomorphisms of `g`.
pub fn equalizer(g: &Arc<PcPresentation>, phi: &GroupMap, psi: &GroupMap) -> Result<Subgroup, Error> {
    let group = RefinedGroup::new(g.clone(), DEFAULT_MAX_CLASS)?;
    Ok(equalizer_of(&group, phi, psi))
}

/// Solves `x·D ≡ t` in an abelian refined presentation.
pub(crate) fn solve_abelian(pc: &PcPresentation, phi: &GroupMap, psi: &GroupMap, target: &Element) -> Option<Element> {
    let layer = CentralLayer::of(pc);
    let diff = abelian_difference(pc, &layer, phi, psi);
    let e = solve_mod_lattice(&diff, &layer.coordinates(target), layer.structure().relations())?;
    Some(pc.element(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::fixtures::*;
    use alloc::vec;

    fn refined(pc: PcPresentation) -> RefinedGroup {
        RefinedGroup::new(Arc::new(pc), DEFAULT_MAX_CLASS).unwrap()
    }

    fn flip(h: &Arc<PcPresentation>) -> GroupMap {
        GroupMap::endomorphism(
            h.clone(),
            vec![h.element_i64(&[1, 0, 0]), h.element_i64(&[0, -1, 0]), h.element_i64(&[0, 0, -1])],
        )
        .unwrap()
    }

    #[test]
    fn mu_values() {
        let r = refined(heisenberg());
        let h = r.presentation().clone();
        let id = GroupMap::identity(h.clone());
        let c = Subgroup::generated_by(h.clone(), &[h.generator(2)]);
        assert!(mu(&h.element_i64(&[2, 3, 4]), &id, &id, &c).unwrap().is_identity());
        let phi = flip(&h);
        assert!(mu(&h.generator(0), &phi, &id, &c).unwrap().is_identity());
        assert_eq!(mu(&h.generator(2), &phi, &id, &c).unwrap(), h.element_i64(&[0, 0, -2]));
        assert_eq!(mu(&h.generator(1), &phi, &id, &c), Err(Error::NotInCEqualizer));
    }

    #[test]
    fn c_equalizers() {
        let r = refined(heisenberg());
        let h = r.presentation().clone();
        let id = GroupMap::identity(h.clone());
        assert_eq!(c_equalizer(&h, &id, &id), Subgroup::whole(h.clone()));
        let g1 = c_equalizer(&h, &flip(&h), &id);
        assert_eq!(g1.sequence(), &[h.generator(0), h.generator(2)]);
    }

    #[test]
    fn kernels_of_mu() {
        let r = refined(heisenberg());
        let h = r.presentation().clone();
        let id = GroupMap::identity(h.clone());
        let phi = flip(&h);

        let g1 = c_equalizer(&h, &phi, &id);
        let m = MuMap::new(g1.clone(), &phi, &id).unwrap();
        assert_eq!(kernel_to_abelian(&g1, &m).sequence(), &[h.generator(0)]);

        let trivial_mu = MuMap::new(g1.clone(), &id, &id).unwrap();
        assert_eq!(kernel_to_abelian(&g1, &trivial_mu), g1);

        // c ↦ c⁻¹ against c ↦ c: μ(c) = c⁻², injective on ⟨c⟩
        let cs = Subgroup::generated_by(h.clone(), &[h.generator(2)]);
        let m = MuMap::new(cs.clone(), &phi, &id).unwrap();
        assert!(kernel_to_abelian(&cs, &m).is_trivial());
    }

    #[test]
    fn equalizer_examples() {
        let z2 = Arc::new(z2_free());
        let phi = GroupMap::endomorphism(z2.clone(), vec![z2.element_i64(&[1, 0]), z2.element_i64(&[0, 2])]).unwrap();
        let eq = equalizer(&z2, &phi, &GroupMap::identity(z2.clone())).unwrap();
        assert_eq!(eq.sequence(), &[z2.generator(0)]);

        let h = Arc::new(heisenberg());
        let eq = equalizer(&h, &flip(&h), &GroupMap::identity(h.clone())).unwrap();
        assert_eq!(eq.sequence(), &[h.generator(0)]);

        let q = Arc::new(q8());
        let swap = GroupMap::endomorphism(q.clone(), vec![q.generator(1), q.generator(0), q.generator(2)]).unwrap();
        let eq = equalizer(&q, &swap, &GroupMap::identity(q.clone())).unwrap();
        assert_eq!(eq.sequence(), &[q.generator(2)]);
    }

    #[test]
    fn equal_maps_give_whole_group() {
        for pc in [heisenberg(), h3(), q8(), d4(), z4()] {
            let g = Arc::new(pc);
            let m = GroupMap::inner_automorphism(g.clone(), &g.generator(0));
            assert_eq!(equalizer(&g, &m, &m).unwrap(), Subgroup::whole(g.clone()));
        }
    }
}
