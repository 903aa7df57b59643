//! Deciding `(xφ) u = v (xψ)` and producing a witness `x`.
//!
//! The instance is first moved to the basepoint form `xφ' = w (xψ)` with
//! `w = u⁻¹v` and `φ' = φ ∘ σ_u`. A solution `x̄` of the induced equation
//! on `G/C` lifts to `x₁` with `x₁φ' = c · w · (x₁ψ)` for a central defect
//! `c`. Any other lift of any other quotient solution differs from `x₁` by an
//! element `h` of the C-equalizer, changing the defect by `μ(h)`, so a
//! solution exists iff `c` lies in the image of `μ`; then `x = x₁ h⁻¹` with
//! `μ(h) = c` solves the equation.

use alloc::sync::Arc;

use crate::equalizer::{c_equalizer, quotient_by_last_term, solve_abelian, CentralLayer, MuMap};
use crate::error::Error;
use crate::morphism::GroupMap;
use crate::pcgroup::{Element, PcPresentation, RefinedGroup};
use crate::zlinalg::solve_mod_lattice;
use crate::DEFAULT_MAX_CLASS;

/// Outcome of a twisted conjugacy query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    /// `witness` satisfies `(witness φ) u = v (witness ψ)`.
    Conjugate {
        witness: Element,
    },
    NonConjugate,
}

impl Decision {
    pub fn is_conjugate(&self) -> bool {
        matches!(self, Decision::Conjugate { .. })
    }

    pub fn witness(&self) -> Option<&Element> {
        match self {
            Decision::Conjugate { witness } => Some(witness),
            Decision::NonConjugate => None,
        }
    }
}

/// `true` when `(xφ) u = v (xψ)` holds exactly.
pub fn is_witness(x: &Element, phi: &GroupMap, psi: &GroupMap, u: &Element, v: &Element) -> bool {
    let g = phi.codomain();
    g.multiply(&phi.apply(x), u) == g.multiply(v, &psi.apply(x))
}

/// `(w, φ')` with `w = u⁻¹v` and `φ' = φ ∘ σ_u`.
pub fn normalize_instance(u: &Element, v: &Element, phi: &GroupMap) -> (Element, GroupMap) {
    let g = phi.codomain();
    let w = g.multiply(&g.invert(u), v);
    let sigma = GroupMap::inner_automorphism(g.clone(), u);
    let phi_prime = phi.compose(&sigma).expect("endomorphism composes with an inner automorphism");
    (w, phi_prime)
}

/// Some `x` with `xφ' = w (xψ)` in a refined presentation, or `None`.
pub fn solve_basepoint(
    pc: &Arc<PcPresentation>,
    phi_prime: &GroupMap,
    psi: &GroupMap,
    w: &Element,
) -> Result<Option<Element>, Error> {
    let class = pc.layers().expect("refined presentation required").len();
    if class <= 1 {
        return Ok(solve_abelian(pc, phi_prime, psi, w));
    }
    let q = quotient_by_last_term(pc);
    let phi_bar = phi_prime.induce_on_quotient(&q);
    let psi_bar = psi.induce_on_quotient(&q);
    let Some(x_bar) = solve_basepoint(q.quotient(), &phi_bar, &psi_bar, &q.project(w))? else {
        return Ok(None);
    };
    let x1 = q.section(&x_bar);
    // x₁φ' = c · w · (x₁ψ)
    let defect = pc.multiply(&phi_prime.apply(&x1), &pc.invert(&pc.multiply(w, &psi.apply(&x1))));
    let layer = CentralLayer::of(pc);
    if !layer.contains(&defect) {
        return Err(Error::InternalLiftFailure);
    }
    let g1 = c_equalizer(pc, phi_prime, psi);
    let m = MuMap::new(g1.clone(), phi_prime, psi)?;
    let Some(e) = solve_mod_lattice(&m.matrix(), &layer.coordinates(&defect), layer.structure().relations()) else {
        return Ok(None);
    };
    let h = g1.product(&e);
    Ok(Some(pc.multiply(&x1, &pc.invert(&h))))
}

/// Decides `u ∼_{φ,ψ} v` for endomorphisms of `group`'s original
/// presentation.
pub fn decide_in(
    group: &RefinedGroup,
    phi: &GroupMap,
    psi: &GroupMap,
    u: &Element,
    v: &Element,
) -> Result<Decision, Error> {
    assert!(
        phi.domain() == group.original() && psi.domain() == group.original(),
        "maps must be endomorphisms of the group"
    );
    let phi_r = group.transport(phi);
    let psi_r = group.transport(psi);
    let (w, phi_prime) = normalize_instance(&group.to_refined(u), &group.to_refined(v), &phi_r);
    let solution = solve_basepoint(group.presentation(), &phi_prime, &psi_r, &w)?;
    Ok(match solution {
        Some(x) => {
            let witness = group.from_refined(&x);
            assert!(is_witness(&witness, phi, psi, u, v), "constructed witness fails the twisted equation");
            Decision::Conjugate { witness }
        }
        None => Decision::NonConjugate,
    })
}

/// Decides `u ∼_{φ,ψ} v` in `g`.
pub fn decide(
    g: &Arc<PcPresentation>,
    phi: &GroupMap,
    psi: &GroupMap,
    u: &Element,
    v: &Element,
) -> Result<Decision, Error> {
    let group = RefinedGroup::new(g.clone(), DEFAULT_MAX_CLASS)?;
    decide_in(&group, phi, psi, u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::fixtures::*;
    use alloc::vec;
    use num_bigint::BigInt;

    #[test]
    fn normalization() {
        let h = Arc::new(heisenberg());
        let id = GroupMap::identity(h.clone());
        let v = h.element_i64(&[1, 2, 3]);
        let (w, p) = normalize_instance(&h.identity(), &v, &id);
        assert_eq!((w, p), (v.clone(), id.clone()));
        let u = h.element_i64(&[0, 1, 0]);
        let (w, p) = normalize_instance(&u, &u, &id);
        assert!(w.is_identity());
        assert_eq!(p, GroupMap::inner_automorphism(h.clone(), &u));
        let (w, p) = normalize_instance(&h.generator(0), &h.element_i64(&[1, 0, 1]), &id);
        assert_eq!(w, h.generator(2));
        assert_eq!(p, GroupMap::inner_automorphism(h.clone(), &h.generator(0)));
    }

    #[test]
    fn basepoint_examples() {
        let r = RefinedGroup::new(Arc::new(heisenberg()), DEFAULT_MAX_CLASS).unwrap();
        let h = r.presentation().clone();
        let id = GroupMap::identity(h.clone());
        let sa = GroupMap::inner_automorphism(h.clone(), &h.generator(0));
        assert_eq!(solve_basepoint(&h, &sa, &id, &h.identity()).unwrap(), Some(h.identity()));
        assert_eq!(solve_basepoint(&h, &sa, &id, &h.generator(2)).unwrap(), Some(h.generator(1)));

        let r = RefinedGroup::new(Arc::new(z4()), DEFAULT_MAX_CLASS).unwrap();
        let z = r.presentation().clone();
        let times3 = GroupMap::endomorphism(z.clone(), vec![z.element_i64(&[3])]).unwrap();
        let x = solve_basepoint(&z, &times3, &GroupMap::identity(z.clone()), &z.element_i64(&[2])).unwrap().unwrap();
        assert_eq!(x, z.element_i64(&[1]));
    }

    #[test]
    fn decisions() {
        let h = Arc::new(heisenberg());
        let id = GroupMap::identity(h.clone());
        let d = decide(&h, &id, &id, &h.generator(0), &h.element_i64(&[1, 0, 1])).unwrap();
        assert_eq!(d, Decision::Conjugate { witness: h.generator(1) });
        assert_eq!(decide(&h, &id, &id, &h.generator(0), &h.generator(1)).unwrap(), Decision::NonConjugate);

        let z = Arc::new(z4());
        let times3 = GroupMap::endomorphism(z.clone(), vec![z.element_i64(&[3])]).unwrap();
        let zid = GroupMap::identity(z.clone());
        assert_eq!(decide(&z, &times3, &zid, &z.identity(), &z.generator(0)).unwrap(), Decision::NonConjugate);

        let q = Arc::new(q8());
        let qid = GroupMap::identity(q.clone());
        let u = q.generator(0);
        let v = q.element_i64(&[1, 0, 1]);
        let d = decide(&q, &qid, &qid, &u, &v).unwrap();
        assert!(is_witness(d.witness().unwrap(), &qid, &qid, &u, &v));
    }

    #[test]
    fn free_abelian_parity() {
        let z = Arc::new(z_free());
        let times3 = GroupMap::endomorphism(z.clone(), vec![z.element_i64(&[3])]).unwrap();
        let id = GroupMap::identity(z.clone());
        for k in -6i64..=6 {
            let v = z.element(&[BigInt::from(k)]);
            let d = decide(&z, &times3, &id, &z.identity(), &v).unwrap();
            assert_eq!(d.is_conjugate(), k % 2 == 0, "k = {k}");
        }
    }
}
