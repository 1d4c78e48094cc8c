//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use fulldiv::{AlgElem, KElem, LElem, Rat};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n/d` with `|n| ≤ num`, `1 ≤ d ≤ den`.
pub fn rat(rng: &mut impl Rng, num: i64, den: i64) -> Rat {
    Rat::new(
        rng.gen_range(-num..=num).into(),
        rng.gen_range(1..=den).into(),
    )
}

pub fn nonzero_rat(rng: &mut impl Rng, num: i64, den: i64) -> Rat {
    loop {
        let r = rat(rng, num, den);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn k_elem(rng: &mut impl Rng) -> KElem {
    KElem::new(rat(rng, 10, 5), rat(rng, 10, 5))
}

pub fn l_elem(rng: &mut impl Rng) -> LElem {
    LElem::new(k_elem(rng), k_elem(rng), k_elem(rng))
}

/// An element of the real subfield `Q(θ)`.
pub fn real_l(rng: &mut impl Rng) -> LElem {
    LElem::new(
        KElem::from_rat(rat(rng, 10, 5)),
        KElem::from_rat(rat(rng, 10, 5)),
        KElem::from_rat(rat(rng, 10, 5)),
    )
}

pub fn nonzero_real_l(rng: &mut impl Rng) -> LElem {
    loop {
        let v = real_l(rng);
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn alg_elem(rng: &mut impl Rng) -> AlgElem {
    AlgElem::new(l_elem(rng), l_elem(rng), l_elem(rng))
}

pub fn nonzero_k(rng: &mut impl Rng) -> KElem {
    loop {
        let k = k_elem(rng);
        if !k.is_zero() {
            return k;
        }
    }
}
