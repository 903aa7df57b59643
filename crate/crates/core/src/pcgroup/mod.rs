//! Polycyclic presentations and their collected normal forms.
//!
//! A presentation has ordered generators `g_0, …, g_{n-1}`. Each may have a
//! finite relative order `m_i` with power relation `g_i^{m_i} = w_i` (a word in
//! later generators), plus conjugate relations `g_j^{g_i}` for `i < j` over
//! generators after `g_i`. Conjugation is `g^h = h⁻¹gh` and the commutator is
//! `[g, h] = g⁻¹h⁻¹gh` everywhere in this crate.

mod collect;
mod series;
mod subgroup;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use series::{LowerCentralSeries, QuotientData, RefinedGroup};
pub use subgroup::Subgroup;

use crate::error::PresentationError;

/// A word as `(generator index, exponent)` syllables, read left to right.
pub type Word = Vec<(usize, BigInt)>;

/// A group element in collected normal form `g_0^{e_0} ⋯ g_{n-1}^{e_{n-1}}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(Vec<BigInt>);

impl Element {
    pub fn identity(n: usize) -> Self {
        Element(vec![BigInt::zero(); n])
    }

    /// Wraps an exponent vector without reducing it. The caller must ensure
    /// it is already collected in the presentation it will be used with.
    pub fn from_exponents(exponents: Vec<BigInt>) -> Self {
        Element(exponents)
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_exponents(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero exponent, or `len()` for the identity.
    pub fn depth(&self) -> usize {
        self.0.iter().position(|e| !e.is_zero()).unwrap_or(self.0.len())
    }

    pub fn leading_exponent(&self) -> Option<&BigInt> {
        self.0.get(self.depth())
    }

    /// The syllables of the normal form, skipping zero exponents.
    pub fn to_word(&self) -> Word {
        self.0.iter().enumerate().filter(|(_, e)| !e.is_zero()).map(|(i, e)| (i, e.clone())).collect()
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// Raw relations for a presentation, before normalization and checking.
#[derive(Clone, Debug, Default)]
pub struct PresentationBuilder {
    names: Vec<String>,
    relorders: Vec<Option<BigInt>>,
    powers: Vec<(usize, Word)>,
    conjugates: Vec<(usize, usize, Word)>,
    inverse_conjugates: Vec<(usize, usize, Word)>,
}

impl PresentationBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a generator; `order` is `None` for infinite relative order.
    pub fn generator(mut self, name: impl Into<String>, order: Option<BigInt>) -> Self {
        self.names.push(name.into());
        self.relorders.push(order);
        self
    }

    /// `g_i^{m_i} = word`.
    pub fn power(mut self, i: usize, word: Word) -> Self {
        self.powers.push((i, word));
        self
    }

    /// `g_j^{g_i} = word`, for `i < j`.
    pub fn conjugate(mut self, j: usize, i: usize, word: Word) -> Self {
        self.conjugates.push((j, i, word));
        self
    }

    /// `g_j^{g_i⁻¹} = word`, for `i < j` with `g_i` of infinite order.
    pub fn inverse_conjugate(mut self, j: usize, i: usize, word: Word) -> Self {
        self.inverse_conjugates.push((j, i, word));
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Checks index restrictions, collects every relation word and runs the
    /// consistency check.
    pub fn build(self) -> Result<PcPresentation, PresentationError> {
        let pc = self.build_unverified()?;
        let violations = pc.consistency_check();
        if violations.is_empty() {
            Ok(pc)
        } else {
            Err(PresentationError::Inconsistent(violations))
        }
    }

    /// Like [`build`](Self::build) but skips the consistency check.
    pub fn build_unverified(self) -> Result<PcPresentation, PresentationError> {
        let n = self.names.len();
        for (i, m) in self.relorders.iter().enumerate() {
            if let Some(m) = m {
                if m < &BigInt::from(2) {
                    return Err(PresentationError::InvalidRelativeOrder { generator: self.names[i].clone() });
                }
            }
        }
        let name = |i: usize| self.names.get(i).cloned().unwrap_or_else(|| format!("#{i}"));
        let check_word = |word: &Word, min: usize, relation: &dyn Fn() -> String| {
            for &(g, _) in word {
                if g >= n {
                    return Err(PresentationError::UnknownGenerator { index: g });
                }
                if g < min {
                    return Err(PresentationError::IndexRestriction { relation: relation() });
                }
            }
            Ok(())
        };

        let mut raw_powers: Vec<Option<Word>> = vec![None; n];
        for (i, word) in &self.powers {
            let i = *i;
            if i >= n {
                return Err(PresentationError::UnknownGenerator { index: i });
            }
            if self.relorders[i].is_none() {
                return Err(PresentationError::PowerOfInfiniteGenerator { generator: name(i) });
            }
            check_word(word, i + 1, &|| format!("power {}", name(i)))?;
            if raw_powers[i].replace(word.clone()).is_some() {
                return Err(PresentationError::DuplicateRelation { relation: format!("power {}", name(i)) });
            }
        }
        let mut raw_conj: Vec<Option<Word>> = vec![None; n * n];
        for (j, i, word) in &self.conjugates {
            let (i, j) = (*i, *j);
            if i >= n || j >= n {
                return Err(PresentationError::UnknownGenerator { index: i.max(j) });
            }
            if i >= j {
                return Err(PresentationError::IndexRestriction { relation: format!("conj {}^{}", name(j), name(i)) });
            }
            check_word(word, i + 1, &|| format!("conj {}^{}", name(j), name(i)))?;
            if raw_conj[i * n + j].replace(word.clone()).is_some() {
                return Err(PresentationError::DuplicateRelation { relation: format!("conj {}^{}", name(j), name(i)) });
            }
        }
        let mut raw_inv: Vec<Option<Word>> = vec![None; n * n];
        for (j, i, word) in &self.inverse_conjugates {
            let (i, j) = (*i, *j);
            if i >= n || j >= n {
                return Err(PresentationError::UnknownGenerator { index: i.max(j) });
            }
            let label = || format!("conj {}^{}^-1", name(j), name(i));
            if i >= j {
                return Err(PresentationError::IndexRestriction { relation: label() });
            }
            if self.relorders[i].is_some() {
                return Err(PresentationError::InverseConjugateOfFiniteGenerator { relation: label() });
            }
            check_word(word, i + 1, &label)?;
            if raw_inv[i * n + j].replace(word.clone()).is_some() {
                return Err(PresentationError::DuplicateRelation { relation: label() });
            }
        }
        for i in 0..n {
            if self.relorders[i].is_some() {
                continue;
            }
            for j in i + 1..n {
                if raw_conj[i * n + j].is_some() && raw_inv[i * n + j].is_none() {
                    return Err(PresentationError::MissingInverseConjugate {
                        relation: format!("conj {}^{}^-1", name(j), name(i)),
                    });
                }
            }
        }

        // Relations for index i only involve generators after i, so
        // normalizing from the last generator backwards only ever collects
        // with relations that are already in normal form.
        let mut pc = PcPresentation::trivial_relations(self.names, self.relorders);
        for i in (0..n).rev() {
            if let Some(word) = &raw_powers[i] {
                pc.powers[i] = pc.collect(word);
            }
            for j in i + 1..n {
                if let Some(word) = &raw_conj[i * n + j] {
                    pc.conjugates[i * n + j] = pc.collect(word);
                }
                if let Some(word) = &raw_inv[i * n + j] {
                    pc.inverse_conjugates[i * n + j] = pc.collect(word);
                }
            }
        }
        Ok(pc)
    }
}

/// A polycyclic presentation with all relation words in normal form.
#[derive(Clone, PartialEq, Eq)]
pub struct PcPresentation {
    names: Vec<String>,
    relorders: Vec<Option<BigInt>>,
    // g_i^{m_i}; identity for infinite generators
    powers: Vec<Element>,
    // index i * n + j holds g_j^{g_i}, for i < j
    conjugates: Vec<Element>,
    // index i * n + j holds g_j^{g_i^{-1}}, for i < j and g_i infinite
    inverse_conjugates: Vec<Element>,
    layers: Option<Vec<usize>>,
}

impl PcPresentation {
    fn trivial_relations(names: Vec<String>, relorders: Vec<Option<BigInt>>) -> Self {
        let n = names.len();
        let generator = |j: usize| {
            let mut e = Element::identity(n);
            e.0[j] = BigInt::one();
            e
        };
        let mut conjugates = vec![Element::identity(n); n * n];
        for i in 0..n {
            for j in i + 1..n {
                conjugates[i * n + j] = generator(j);
            }
        }
        PcPresentation {
            powers: vec![Element::identity(n); n],
            inverse_conjugates: conjugates.clone(),
            conjugates,
            names,
            relorders,
            layers: None,
        }
    }

    /// Assembles a presentation from relations already in normal form.
    pub(crate) fn from_normalized(
        names: Vec<String>,
        relorders: Vec<Option<BigInt>>,
        powers: Vec<Element>,
        conjugates: Vec<Element>,
        inverse_conjugates: Vec<Element>,
        layers: Option<Vec<usize>>,
    ) -> Self {
        let n = names.len();
        debug_assert_eq!(relorders.len(), n);
        debug_assert_eq!(powers.len(), n);
        debug_assert_eq!(conjugates.len(), n * n);
        debug_assert_eq!(inverse_conjugates.len(), n * n);
        PcPresentation { names, relorders, powers, conjugates, inverse_conjugates, layers }
    }

    /// The presentation of the trivial group.
    pub fn trivial() -> Self {
        Self::trivial_relations(Vec::new(), Vec::new())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn relative_order(&self, i: usize) -> Option<&BigInt> {
        self.relorders[i].as_ref()
    }

    pub fn relative_orders(&self) -> &[Option<BigInt>] {
        &self.relorders
    }

    pub fn is_finite(&self) -> bool {
        self.relorders.iter().all(Option::is_some)
    }

    /// Group order, when finite.
    pub fn order(&self) -> Option<BigInt> {
        self.relorders.iter().try_fold(BigInt::one(), |acc, m| m.as_ref().map(|m| acc * m))
    }

    /// `g_i^{m_i}` in normal form (the identity when `g_i` is infinite).
    pub fn power_relation(&self, i: usize) -> &Element {
        &self.powers[i]
    }

    /// `g_j^{g_i}` for `i < j`.
    pub fn conjugate_relation(&self, j: usize, i: usize) -> &Element {
        debug_assert!(i < j);
        &self.conjugates[i * self.len() + j]
    }

    /// `g_j^{g_i⁻¹}` for `i < j`; meaningful only when `g_i` is infinite.
    pub fn inverse_conjugate_relation(&self, j: usize, i: usize) -> &Element {
        debug_assert!(i < j);
        &self.inverse_conjugates[i * self.len() + j]
    }

    /// Start indices of the lower-central layers, present after refinement.
    pub fn layers(&self) -> Option<&[usize]> {
        self.layers.as_deref()
    }

    pub fn identity(&self) -> Element {
        Element::identity(self.len())
    }

    pub fn generator(&self, i: usize) -> Element {
        let mut e = self.identity();
        e.0[i] = BigInt::one();
        e
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.len()).map(|i| self.generator(i)).collect()
    }

    /// Reduces an exponent vector to normal form by multiplying out
    /// `g_0^{e_0} ⋯ g_{n-1}^{e_{n-1}}`.
    pub fn element(&self, exponents: &[BigInt]) -> Element {
        assert_eq!(exponents.len(), self.len(), "exponent vector has the wrong length");
        let word: Word = exponents.iter().cloned().enumerate().filter(|(_, e)| !e.is_zero()).collect();
        self.collect(&word)
    }

    pub fn element_i64(&self, exponents: &[i64]) -> Element {
        let e: Vec<BigInt> = exponents.iter().map(|&x| BigInt::from(x)).collect();
        self.element(&e)
    }

    /// `true` when every exponent is in the allowed range.
    pub fn is_normal_form(&self, g: &Element) -> bool {
        g.len() == self.len()
            && g.0.iter().zip(&self.relorders).all(|(e, m)| match m {
                Some(m) => !e.is_negative() && e < m,
                None => true,
            })
    }

    /// Formats an element as a word in generator names; the identity is `1`.
    pub fn format_element(&self, g: &Element) -> String {
        let parts: Vec<String> = g
            .to_word()
            .into_iter()
            .map(|(i, e)| if e.is_one() { self.names[i].clone() } else { format!("{}^{}", self.names[i], e) })
            .collect();
        if parts.is_empty() {
            String::from("1")
        } else {
            parts.join(" ")
        }
    }

    /// All standard overlap tests that fail; empty iff the presentation is
    /// consistent.
    pub fn consistency_check(&self) -> Vec<ConsistencyViolation> {
        let n = self.len();
        let mut out = Vec::new();
        let g = |i: usize| self.generator(i);
        let nm = |i: usize| self.names[i].as_str();
        let mut test = |name: String, generators: &[usize], left: Element, right: Element| {
            if left != right {
                out.push(ConsistencyViolation { test: name, generators: generators.to_vec(), left, right });
            }
        };

        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    let left = self.multiply(&self.multiply(&g(k), &g(j)), &g(i));
                    let right = self.multiply(&g(k), &self.multiply(&g(j), &g(i)));
                    test(
                        format!("associativity ({} {}) {} = {} ({} {})", nm(k), nm(j), nm(i), nm(k), nm(j), nm(i)),
                        &[k, j, i],
                        left,
                        right,
                    );
                }
            }
        }
        for j in 0..n {
            let Some(mj) = self.relorders[j].clone() else { continue };
            for i in 0..j {
                let left = self.multiply(&self.powers[j], &g(i));
                let right = self.multiply(&self.power(&g(j), &(&mj - 1)), &self.multiply(&g(j), &g(i)));
                test(
                    format!("power overlap {0}^{2} {1} = {3} ({0} {1})", nm(j), nm(i), mj, pow_name(nm(j), &(&mj - 1))),
                    &[j, i],
                    left,
                    right,
                );
            }
        }
        for i in 0..n {
            let Some(mi) = self.relorders[i].clone() else { continue };
            for j in i + 1..n {
                let left = self.multiply(&g(j), &self.powers[i]);
                let right = self.multiply(&self.multiply(&g(j), &g(i)), &self.power(&g(i), &(&mi - 1)));
                test(
                    format!("power overlap {0} {1}^{2} = ({0} {1}) {3}", nm(j), nm(i), mi, pow_name(nm(i), &(&mi - 1))),
                    &[j, i],
                    left,
                    right,
                );
            }
            let left = self.multiply(&g(i), &self.powers[i]);
            let right = self.multiply(&self.powers[i], &g(i));
            test(format!("power overlap {0} {0}^{1} = {0}^{1} {0}", nm(i), mi), &[i], left, right);
        }
        for i in 0..n {
            if self.relorders[i].is_some() {
                continue;
            }
            let gi_inv = self.invert(&g(i));
            for j in i + 1..n {
                let left = self.conjugate(&self.conjugate(&g(j), &g(i)), &gi_inv);
                test(format!("inverse conjugate ({0}^{1})^{1}^-1 = {0}", nm(j), nm(i)), &[j, i], left, g(j));
                let left = self.multiply(&self.multiply(&g(j), &gi_inv), &g(i));
                test(format!("inverse conjugate ({0} {1}^-1) {1} = {0}", nm(j), nm(i)), &[j, i], left, g(j));
                if self.relorders[j].is_none() {
                    let gj_inv = self.invert(&g(j));
                    let left = self.multiply(&gj_inv, &self.multiply(&g(j), &g(i)));
                    test(format!("inverse overlap {0}^-1 ({0} {1}) = {1}", nm(j), nm(i)), &[j, i], left, g(i));
                    let left = self.multiply(&self.multiply(&gj_inv, &gi_inv), &g(i));
                    test(format!("inverse overlap ({0}^-1 {1}^-1) {1} = {0}^-1", nm(j), nm(i)), &[j, i], left, gj_inv);
                }
            }
        }
        for j in 0..n {
            if self.relorders[j].is_some() {
                continue;
            }
            for i in 0..j {
                if self.relorders[i].is_none() {
                    continue;
                }
                let gj_inv = self.invert(&g(j));
                let left = self.multiply(&gj_inv, &self.multiply(&g(j), &g(i)));
                test(format!("inverse overlap {0}^-1 ({0} {1}) = {1}", nm(j), nm(i)), &[j, i], left, g(i));
            }
        }
        out
    }
}

fn pow_name(name: &str, e: &BigInt) -> String {
    if e.is_one() {
        String::from(name)
    } else {
        format!("{name}^{e}")
    }
}

impl fmt::Debug for PcPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PcPresentation")
            .field("names", &self.names)
            .field("relorders", &self.relorders)
            .field("layers", &self.layers)
            .finish_non_exhaustive()
    }
}

/// A failed overlap test: both bracketings collected to different elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyViolation {
    pub test: String,
    /// Generators the overlap is built from.
    pub generators: Vec<usize>,
    pub left: Element,
    pub right: Element,
}

impl fmt::Display for ConsistencyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails: {:?} != {:?}", self.test, self.left, self.right)
    }
}
