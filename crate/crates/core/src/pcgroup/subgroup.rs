//! Subgroups as canonical induced generating sequences.
//!
//! Entries have strictly increasing depth, positive leading exponents that
//! divide the relative order at finite levels, and each entry's exponent at a
//! later entry's depth reduced below that entry's leading exponent. Two
//! subgroups are equal exactly when their canonical sequences are.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Element, PcPresentation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    ambient: Arc<PcPresentation>,
    sequence: Vec<Element>,
}

impl Subgroup {
    pub fn trivial(ambient: Arc<PcPresentation>) -> Self {
        Subgroup { ambient, sequence: Vec::new() }
    }

    pub fn whole(ambient: Arc<PcPresentation>) -> Self {
        let sequence = ambient.generators();
        Subgroup { ambient, sequence }
    }

    /// The subgroup generated by `gens`.
    pub fn generated_by(ambient: Arc<PcPresentation>, gens: &[Element]) -> Self {
        let sequence = close(&ambient, gens, &[]);
        Subgroup { ambient, sequence }
    }

    /// The smallest subgroup containing `gens` that is normalized by every
    /// element of `conjugators`.
    pub fn closed_under_conjugation(ambient: Arc<PcPresentation>, gens: &[Element], conjugators: &[Element]) -> Self {
        let sequence = close(&ambient, gens, conjugators);
        Subgroup { ambient, sequence }
    }

    /// Normal closure of `gens` in the ambient group.
    pub fn normal_closure(ambient: Arc<PcPresentation>, gens: &[Element]) -> Self {
        let conjugators = ambient.generators();
        Self::closed_under_conjugation(ambient, gens, &conjugators)
    }

    pub fn ambient(&self) -> &Arc<PcPresentation> {
        &self.ambient
    }

    pub fn sequence(&self) -> &[Element] {
        &self.sequence
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.sequence.is_empty()
    }

    /// Relative order of each sequence entry; `None` is infinite.
    pub fn relative_orders(&self) -> Vec<Option<BigInt>> {
        self.sequence
            .iter()
            .map(|s| {
                let d = s.depth();
                self.ambient.relative_order(d).map(|m| m / &s.0[d])
            })
            .collect()
    }

    /// Order of the subgroup, when finite.
    pub fn order(&self) -> Option<BigInt> {
        self.relative_orders().into_iter().try_fold(BigInt::one(), |acc, m| m.map(|m| acc * m))
    }

    /// Exponents `e` with `g = s_1^{e_1} ⋯ s_r^{e_r}`, or `None` when `g` is
    /// not a member.
    pub fn constructive_membership(&self, g: &Element) -> Option<Vec<BigInt>> {
        let pc = &*self.ambient;
        let mut x = g.clone();
        let mut out = Vec::with_capacity(self.sequence.len());
        for s in &self.sequence {
            let d = s.depth();
            let xd = x.depth();
            if xd < d {
                return None;
            }
            if xd > d {
                out.push(BigInt::zero());
                continue;
            }
            let (q, r) = x.0[d].div_rem(&s.0[d]);
            if !r.is_zero() {
                return None;
            }
            x = pc.multiply(&pc.power(s, &-&q), &x);
            out.push(q);
        }
        x.is_identity().then_some(out)
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.constructive_membership(g).is_some()
    }

    /// `s_1^{e_1} ⋯ s_r^{e_r}`.
    pub fn product(&self, exponents: &[BigInt]) -> Element {
        assert_eq!(exponents.len(), self.sequence.len(), "one exponent per sequence entry");
        let pc = &*self.ambient;
        self.sequence
            .iter()
            .zip(exponents)
            .filter(|(_, e)| !e.is_zero())
            .fold(pc.identity(), |acc, (s, e)| pc.multiply(&acc, &pc.power(s, e)))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.sequence.iter().all(|s| other.contains(s))
    }

    /// Subgroup generated by `self` and `other`.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.sequence.clone();
        gens.extend(other.sequence.iter().cloned());
        Subgroup::generated_by(self.ambient.clone(), &gens)
    }

    /// Derived subgroup: the commutators of the sequence, closed under
    /// conjugation by the subgroup itself.
    pub fn derived_subgroup(&self) -> Subgroup {
        let pc = &*self.ambient;
        let mut comms = Vec::new();
        for (i, a) in self.sequence.iter().enumerate() {
            for b in &self.sequence[i + 1..] {
                comms.push(pc.commutator(a, b));
            }
        }
        Subgroup::closed_under_conjugation(self.ambient.clone(), &comms, &self.sequence)
    }
}

/// Closure of `gens` under multiplication and under conjugation by
/// `conjugators`, as a canonical induced sequence.
fn close(pc: &PcPresentation, gens: &[Element], conjugators: &[Element]) -> Vec<Element> {
    let n = pc.len();
    let mut table: Vec<Option<Element>> = vec![None; n];
    let mut queue: Vec<Element> = gens.to_vec();
    while let Some(x) = queue.pop() {
        sift_into(pc, &mut table, x, conjugators, &mut queue);
    }
    canonicalize(pc, table.into_iter().flatten().collect())
}

fn sift_into(
    pc: &PcPresentation,
    table: &mut [Option<Element>],
    mut x: Element,
    conjugators: &[Element],
    queue: &mut Vec<Element>,
) {
    loop {
        let d = x.depth();
        if d == pc.len() {
            return;
        }
        let Some(y) = table[d].clone() else {
            let z = normalize_leading(pc, x);
            enqueue_followups(pc, table, &z, conjugators, queue);
            table[d] = Some(z);
            return;
        };
        let a = &y.0[d];
        let b = &x.0[d];
        if b.is_multiple_of(a) {
            x = pc.multiply(&pc.power(&y, &-(b / a)), &x);
            continue;
        }
        // replace the entry by one whose leading exponent is gcd(a, b)
        let egcd = a.extended_gcd(b);
        let z = pc.multiply(&pc.power(&y, &egcd.x), &pc.power(&x, &egcd.y));
        let z = normalize_leading(pc, z);
        debug_assert_eq!(z.depth(), d);
        queue.push(y);
        queue.push(x);
        enqueue_followups(pc, table, &z, conjugators, queue);
        table[d] = Some(z);
        return;
    }
}

/// Makes the leading exponent positive and, at finite levels, a divisor of the
/// relative order.
fn normalize_leading(pc: &PcPresentation, x: Element) -> Element {
    let d = x.depth();
    let lead = x.0[d].clone();
    match pc.relative_order(d) {
        None => {
            if lead.is_negative() {
                pc.invert(&x)
            } else {
                x
            }
        }
        Some(m) => {
            let g = lead.gcd(m);
            if g == lead {
                return x;
            }
            let modulus = m / &g;
            let unit = (&lead / &g).extended_gcd(&modulus).x.mod_floor(&modulus);
            let z = pc.power(&x, &unit);
            debug_assert_eq!(z.0[d], g);
            z
        }
    }
}

fn enqueue_followups(
    pc: &PcPresentation,
    table: &[Option<Element>],
    z: &Element,
    conjugators: &[Element],
    queue: &mut Vec<Element>,
) {
    let d = z.depth();
    let z_infinite = pc.relative_order(d).is_none();
    if let Some(m) = pc.relative_order(d) {
        let p = pc.power(z, &(m / &z.0[d]));
        if !p.is_identity() {
            queue.push(p);
        }
    }
    let z_inv = z_infinite.then(|| pc.invert(z));
    for y in table.iter().flatten() {
        if y.depth() == d {
            continue;
        }
        queue.push(pc.commutator(z, y));
        if let Some(zi) = &z_inv {
            queue.push(pc.conjugate(y, zi));
        }
        if pc.relative_order(y.depth()).is_none() {
            queue.push(pc.conjugate(z, &pc.invert(y)));
        }
    }
    for c in conjugators {
        let zc = pc.conjugate(z, c);
        if &zc != z {
            queue.push(zc);
        }
    }
}

fn canonicalize(pc: &PcPresentation, mut seq: Vec<Element>) -> Vec<Element> {
    seq.sort_by_key(Element::depth);
    for i in 0..seq.len() {
        let d = seq[i].depth();
        let lead = seq[i].0[d].clone();
        for k in 0..i {
            let q = seq[k].0[d].div_floor(&lead);
            if !q.is_zero() {
                let reduced = pc.multiply(&seq[k], &pc.power(&seq[i], &-q));
                seq[k] = reduced;
            }
        }
    }
    seq
}
