mod common;

use common::*;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistcon_core::Element;

/// a^x b^y c^z as the unitriangular matrix with entries (x, xy - z, y).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Unitriangular {
    a12: i128,
    a13: i128,
    a23: i128,
}

impl Unitriangular {
    fn of(x: i128, y: i128, z: i128) -> Self {
        Unitriangular { a12: x, a13: x * y - z, a23: y }
    }

    fn mul(self, o: Self) -> Self {
        Unitriangular { a12: self.a12 + o.a12, a13: self.a13 + self.a12 * o.a23 + o.a13, a23: self.a23 + o.a23 }
    }

    fn normal_form(self) -> (i128, i128, i128) {
        (self.a12, self.a23, self.a12 * self.a23 - self.a13)
    }
}

fn triple(e: &Element) -> (i128, i128, i128) {
    let x = e.exponents();
    (x[0].to_i128().unwrap(), x[1].to_i128().unwrap(), x[2].to_i128().unwrap())
}

#[test]
fn heisenberg_products_match_matrices() {
    let h = heisenberg();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let e: Vec<i64> = (0..6).map(|_| rng.gen_range(-50..=50)).collect();
        let g = h.element_i64(&e[..3]);
        let k = h.element_i64(&e[3..]);
        let (x1, y1, z1) = triple(&g);
        let (x2, y2, z2) = triple(&k);
        let expected = Unitriangular::of(x1, y1, z1).mul(Unitriangular::of(x2, y2, z2)).normal_form();
        assert_eq!(triple(&h.multiply(&g, &k)), expected, "{g:?} * {k:?}");
    }
}

#[test]
fn heisenberg_words_match_matrices() {
    // unnormalized words: the oracle multiplies generator matrices one by one
    let h = heisenberg();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let len = rng.gen_range(0..12);
        let word: Vec<(usize, BigInt)> =
            (0..len).map(|_| (rng.gen_range(0..3usize), BigInt::from(rng.gen_range(-9..=9i64)))).collect();
        let mut m = Unitriangular::of(0, 0, 0);
        for (i, e) in &word {
            let e = e.to_i128().unwrap();
            let step = match i {
                0 => Unitriangular::of(e, 0, 0),
                1 => Unitriangular::of(0, e, 0),
                _ => Unitriangular::of(0, 0, e),
            };
            m = m.mul(step);
        }
        assert_eq!(triple(&h.collect(&word)), m.normal_form(), "{word:?}");
    }
}

#[test]
fn huge_exponents_stay_exact() {
    let h = heisenberg();
    let big = BigInt::from(10).pow(30);
    let g = h.element(&[big.clone(), BigInt::from(0), BigInt::from(0)]);
    let k = h.element(&[BigInt::from(0), big.clone(), BigInt::from(0)]);
    // b^N a^N = a^N b^N c^{N²}
    let p = h.multiply(&k, &g);
    assert_eq!(p.exponents(), &[big.clone(), big.clone(), &big * &big]);
}

fn groups() -> Vec<std::sync::Arc<twistcon_core::PcPresentation>> {
    vec![heisenberg(), filiform4(), q8(), d4(), h3(), d8(), z2z4(), heisenberg_reordered()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn multiplication_is_associative(which in 0usize..8, seed in any::<u64>()) {
        let g = &groups()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(g, &mut rng, 20);
        let y = random_element(g, &mut rng, 20);
        let z = random_element(g, &mut rng, 20);
        prop_assert_eq!(g.multiply(&g.multiply(&x, &y), &z), g.multiply(&x, &g.multiply(&y, &z)));
    }

    #[test]
    fn inverses_and_identity(which in 0usize..8, seed in any::<u64>()) {
        let g = &groups()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(g, &mut rng, 30);
        prop_assert!(g.multiply(&x, &g.invert(&x)).is_identity());
        prop_assert!(g.multiply(&g.invert(&x), &x).is_identity());
        prop_assert_eq!(g.multiply(&g.identity(), &x), x.clone());
        prop_assert!(g.is_normal_form(&x));
    }

    #[test]
    fn powers_agree_with_repeated_products(which in 0usize..8, seed in any::<u64>(), k in -12i64..=12) {
        let g = &groups()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(g, &mut rng, 5);
        let step = if k < 0 { g.invert(&x) } else { x.clone() };
        let mut expected = g.identity();
        for _ in 0..k.unsigned_abs() {
            expected = g.multiply(&expected, &step);
        }
        prop_assert_eq!(g.power_i64(&x, k), expected);
    }
}
