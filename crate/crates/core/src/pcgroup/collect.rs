//! Collection from the left.
//!
//! Multiplying a collected element `P g_i^e T` (with `T` in the subgroup
//! generated by later generators) on the right by `g_i^k` moves `g_i^k` past
//! `T` by conjugating `T` with `g_i^k`, then folds the excess of `e + k` over
//! the relative order into the power relation. Conjugation by `g_i` is applied
//! to `T` as an automorphism of the later-generator subgroup, so every
//! recursive call works on a strictly shorter suffix and collection always
//! terminates, whether or not the presentation is consistent.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Element, PcPresentation};

impl PcPresentation {
    /// Normal form of a word.
    pub fn collect(&self, word: &[(usize, BigInt)]) -> Element {
        let mut x = self.identity();
        for (i, k) in word {
            assert!(*i < self.len(), "generator index {i} out of range");
            self.mul_generator_power(&mut x.0, *i, k.clone());
        }
        x
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        let mut x = a.clone();
        self.mul_assign(&mut x.0, &b.0);
        x
    }

    pub fn invert(&self, g: &Element) -> Element {
        let mut x = self.identity();
        for i in (0..self.len()).rev() {
            if !g.0[i].is_zero() {
                self.mul_generator_power(&mut x.0, i, -g.0[i].clone());
            }
        }
        x
    }

    pub fn power(&self, g: &Element, k: &BigInt) -> Element {
        if k.is_negative() {
            return self.power(&self.invert(g), &-k);
        }
        let mut result = self.identity();
        let mut base = g.clone();
        let mut k = k.clone();
        while !k.is_zero() {
            if k.is_odd() {
                result = self.multiply(&result, &base);
            }
            k >>= 1;
            if !k.is_zero() {
                base = self.multiply(&base, &base);
            }
        }
        result
    }

    pub fn power_i64(&self, g: &Element, k: i64) -> Element {
        self.power(g, &BigInt::from(k))
    }

    /// `g^h = h⁻¹ g h`.
    pub fn conjugate(&self, g: &Element, h: &Element) -> Element {
        self.multiply(&self.multiply(&self.invert(h), g), h)
    }

    /// `[g, h] = g⁻¹ h⁻¹ g h`.
    pub fn commutator(&self, g: &Element, h: &Element) -> Element {
        let gh = self.multiply(g, h);
        let hg = self.multiply(h, g);
        self.multiply(&self.invert(&hg), &gh)
    }

    fn mul_assign(&self, x: &mut [BigInt], b: &[BigInt]) {
        for (j, e) in b.iter().enumerate() {
            if !e.is_zero() {
                self.mul_generator_power(x, j, e.clone());
            }
        }
    }

    /// `x ← x · g_i^k`.
    fn mul_generator_power(&self, x: &mut [BigInt], i: usize, k: BigInt) {
        if k.is_zero() {
            return;
        }
        match self.relorders[i].clone() {
            Some(m) => {
                // g_i^k = g_i^r · (g_i^m)^q with 0 <= r < m
                let (q, r) = k.div_mod_floor(&m);
                if !r.is_zero() {
                    self.shift_past_tail(x, i, &r);
                }
                if !q.is_zero() {
                    let wq = self.power(&self.powers[i], &q);
                    self.mul_assign(x, &wq.0);
                }
            }
            None => self.shift_past_tail(x, i, &k),
        }
    }

    /// `x ← x · g_i^k` for `0 < k < m_i` or any `k` when `g_i` is infinite.
    fn shift_past_tail(&self, x: &mut [BigInt], i: usize, k: &BigInt) {
        let n = self.len();
        let tail_nonzero = x[i + 1..].iter().any(|e| !e.is_zero());
        let tail = if tail_nonzero {
            let mut t = Element::identity(n);
            for (t, e) in t.0[i + 1..].iter_mut().zip(&mut x[i + 1..]) {
                *t = core::mem::take(e);
            }
            Some(self.conjugate_tail(&t, i, k))
        } else {
            None
        };
        x[i] += k;
        let mut carry: Option<Element> = None;
        if let Some(m) = &self.relorders[i] {
            if x[i] >= *m {
                let (q, r) = x[i].div_mod_floor(m);
                x[i] = r;
                carry = Some(self.power(&self.powers[i], &q));
            }
        }
        let rest = match (carry, tail) {
            (Some(c), Some(t)) => Some(self.multiply(&c, &t)),
            (c, t) => c.or(t),
        };
        if let Some(rest) = rest {
            for (xj, rj) in x[i + 1..].iter_mut().zip(rest.0.into_iter().skip(i + 1)) {
                *xj = rj;
            }
        }
    }

    /// `t^{g_i^k}` for `t` supported on generators after `i`.
    fn conjugate_tail(&self, t: &Element, i: usize, k: &BigInt) -> Element {
        let n = self.len();
        let images: Vec<Element> = (i + 1..n)
            .map(|j| {
                if k.is_positive() {
                    self.conjugates[i * n + j].clone()
                } else {
                    self.inverse_conjugates[i * n + j].clone()
                }
            })
            .collect();
        let steps = k.magnitude();
        if steps <= &num_bigint::BigUint::from(2 * (n - i) as u32 + 2) {
            let mut cur = t.clone();
            let mut count = steps.clone();
            while !count.is_zero() {
                cur = self.apply_tail_images(&cur, i, &images);
                count -= 1u32;
            }
            return cur;
        }
        // square-and-multiply on the automorphism itself
        let mut result: Option<Vec<Element>> = None;
        let mut base = images;
        let mut e = steps.clone();
        while !e.is_zero() {
            if e.bit(0) {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.iter().map(|g| self.apply_tail_images(g, i, &base)).collect(),
                });
            }
            e >>= 1;
            if !e.is_zero() {
                base = base.iter().map(|g| self.apply_tail_images(g, i, &base)).collect();
            }
        }
        let result = result.unwrap_or_else(|| (i + 1..n).map(|j| self.generator(j)).collect());
        self.apply_tail_images(t, i, &result)
    }

    /// Image of `t` under the endomorphism of the later-generator subgroup
    /// sending `g_j` to `images[j - i - 1]`.
    fn apply_tail_images(&self, t: &Element, i: usize, images: &[Element]) -> Element {
        let mut out = self.identity();
        for (j, e) in t.0.iter().enumerate().skip(i + 1) {
            if e.is_zero() {
                continue;
            }
            let img = &images[j - i - 1];
            let p = if e.is_one() { img.clone() } else { self.power(img, e) };
            self.mul_assign(&mut out.0, &p.0);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use num_bigint::BigInt;

    #[test]
    fn large_exponents_use_automorphism_powering() {
        let h = heisenberg();
        // (b^j)(a^p) = a^p b^j c^{jp}
        let x = h.multiply(&h.element_i64(&[0, 7, 0]), &h.element_i64(&[1000, 0, 0]));
        assert_eq!(x, h.element_i64(&[1000, 7, 7000]));
        let y = h.multiply(&h.element_i64(&[0, 7, 0]), &h.element_i64(&[-1000, 0, 0]));
        assert_eq!(y, h.element_i64(&[-1000, 7, -7000]));
    }

    #[test]
    fn power_and_inverse() {
        let h = heisenberg();
        let g = h.element_i64(&[2, -3, 5]);
        let g5 = h.power(&g, &BigInt::from(5));
        assert_eq!(h.multiply(&g5, &h.power(&g, &BigInt::from(-5))), h.identity());
        assert_eq!(h.multiply(&g, &h.invert(&g)), h.identity());
    }

    #[test]
    fn commutator_convention() {
        let h = heisenberg();
        // [b, a] = b⁻¹ a⁻¹ b a = b⁻¹ b^a = c
        let c = h.commutator(&h.generator(1), &h.generator(0));
        assert_eq!(c, h.generator(2));
        assert_eq!(h.conjugate(&h.generator(1), &h.generator(0)), h.element_i64(&[0, 1, 1]));
    }
}
