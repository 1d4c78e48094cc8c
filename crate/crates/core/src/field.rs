//! The number fields `K = Q(ζ3)` and `L = K(θ)`, `θ = ζ7 + ζ7⁻¹`.
//!
//! `L` is stored relative to `K` over the power basis `{1, θ, θ²}` with
//! `θ³ = 1 + 2θ - θ²`. The generator of `Gal(L/K)` is `σ: θ ↦ θ² - 2` and
//! complex conjugation `α_L` sends `ζ3 ↦ ζ3² = -1 - ζ3` while fixing `θ`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kernel::{
    int, parse_rat, rat_to_f64, rat_to_string, solve_linear, CoeffFormat, Field, Rat,
};

/// `a0 + a1·ζ3`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct KElem {
    pub a0: Rat,
    pub a1: Rat,
}

impl KElem {
    pub fn new(a0: Rat, a1: Rat) -> Self {
        KElem { a0, a1 }
    }

    pub fn from_ints(a0: i64, a1: i64) -> Self {
        KElem::new(int(a0), int(a1))
    }

    pub fn from_rat(a0: Rat) -> Self {
        KElem::new(a0, Rat::zero())
    }

    pub fn zeta3() -> Self {
        KElem::from_ints(0, 1)
    }

    pub fn is_rational(&self) -> bool {
        self.a1.is_zero()
    }

    /// `ζ3 ↦ ζ3²`, the nontrivial automorphism of `K`.
    pub fn tau(&self) -> Self {
        KElem::new(&self.a0 - &self.a1, -&self.a1)
    }

    /// `a·τ(a) = a0² - a0·a1 + a1²`, also `|a|²` under any complex embedding.
    pub fn norm_q(&self) -> Rat {
        &self.a0 * &self.a0 - &self.a0 * &self.a1 + &self.a1 * &self.a1
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm_q();
        let t = self.tau();
        Ok(KElem::new(t.a0 / &n, t.a1 / n))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        KElem::new(&self.a0 * r, &self.a1 * r)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(KElem::one(), |acc, _| acc * self)
    }

    /// `ζ3 ↦ exp(2πi/3)`.
    pub fn embed(&self) -> Complex64 {
        let z = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
        rat_to_f64(&self.a0) + z * rat_to_f64(&self.a1)
    }

    pub fn render(&self, ascii: bool) -> String {
        let mut out = String::new();
        push_term(&mut out, &self.a0, "");
        push_term(&mut out, &self.a1, if ascii { "z3" } else { "ζ3" });
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }

    pub fn to_strings(&self) -> [String; 2] {
        [rat_to_string(&self.a0), rat_to_string(&self.a1)]
    }
}

/// Appends `±c·mono` in the compact form `-ζ3`, `3θ`, `(1/2)θ^2`.
fn push_term(out: &mut String, c: &Rat, mono: &str) {
    if c.is_zero() {
        return;
    }
    let neg = c < &Rat::zero();
    let abs = if neg { -c } else { c.clone() };
    if neg {
        out.push('-');
    } else if !out.is_empty() {
        out.push('+');
    }
    if mono.is_empty() {
        out.push_str(&abs.to_string());
    } else if abs.is_one() {
        out.push_str(mono);
    } else if abs.is_integer() {
        out.push_str(&format!("{abs}{mono}"));
    } else {
        out.push_str(&format!("({abs}){mono}"));
    }
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl CoeffFormat for KElem {
    fn coeff_string(&self, ascii: bool) -> String {
        self.render(ascii)
    }

    fn is_monomial(&self) -> bool {
        (self.a0.is_zero() || self.a1.is_zero()) && self.a0.is_integer() && self.a1.is_integer()
    }
}

impl Add for &KElem {
    type Output = KElem;
    fn add(self, rhs: &KElem) -> KElem {
        KElem::new(&self.a0 + &rhs.a0, &self.a1 + &rhs.a1)
    }
}

impl Sub for &KElem {
    type Output = KElem;
    fn sub(self, rhs: &KElem) -> KElem {
        KElem::new(&self.a0 - &rhs.a0, &self.a1 - &rhs.a1)
    }
}

impl Mul for &KElem {
    type Output = KElem;
    fn mul(self, rhs: &KElem) -> KElem {
        // ζ3² = -1 - ζ3
        let hi = &self.a1 * &rhs.a1;
        KElem::new(
            &self.a0 * &rhs.a0 - &hi,
            &self.a0 * &rhs.a1 + &self.a1 * &rhs.a0 - hi,
        )
    }
}

impl Neg for &KElem {
    type Output = KElem;
    fn neg(self) -> KElem {
        KElem::new(-&self.a0, -&self.a1)
    }
}

impl Neg for KElem {
    type Output = KElem;
    fn neg(self) -> KElem {
        -&self
    }
}

forward_binops!(KElem: Add add, Sub sub, Mul mul);

impl Zero for KElem {
    fn zero() -> Self {
        KElem::default()
    }
    fn is_zero(&self) -> bool {
        self.a0.is_zero() && self.a1.is_zero()
    }
}

impl One for KElem {
    fn one() -> Self {
        KElem::from_ints(1, 0)
    }
}

impl Field for KElem {
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// Real values `2cos(2π·2^k/7)` of `θ` under the three embeddings; index `k`
/// corresponds to `θ ↦ σ^k(θ)`.
pub fn theta_values() -> [f64; 3] {
    [1.0, 2.0, 4.0].map(|m| 2.0 * (2.0 * PI * m / 7.0).cos())
}

/// `c0 + c1·θ + c2·θ²` with `c_i ∈ K`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LElem {
    pub c: [KElem; 3],
}

impl LElem {
    pub fn new(c0: KElem, c1: KElem, c2: KElem) -> Self {
        LElem { c: [c0, c1, c2] }
    }

    pub fn from_k(k: KElem) -> Self {
        LElem::new(k, KElem::zero(), KElem::zero())
    }

    pub fn from_rat(r: Rat) -> Self {
        LElem::from_k(KElem::from_rat(r))
    }

    pub fn from_int(n: i64) -> Self {
        LElem::from_rat(int(n))
    }

    pub fn theta() -> Self {
        LElem::new(KElem::zero(), KElem::one(), KElem::zero())
    }

    pub fn zeta3() -> Self {
        LElem::from_k(KElem::zeta3())
    }

    /// Rational coordinates in basis order `1, ζ3, θ, θζ3, θ², θ²ζ3`.
    pub fn from_coords(q: [Rat; 6]) -> Self {
        let [a, b, c, d, e, f] = q;
        LElem::new(KElem::new(a, b), KElem::new(c, d), KElem::new(e, f))
    }

    pub fn coords(&self) -> [Rat; 6] {
        let [c0, c1, c2] = &self.c;
        [
            c0.a0.clone(),
            c0.a1.clone(),
            c1.a0.clone(),
            c1.a1.clone(),
            c2.a0.clone(),
            c2.a1.clone(),
        ]
    }

    /// The element as a member of `K`, if its `θ` and `θ²` parts vanish.
    pub fn to_k(&self) -> Option<KElem> {
        (self.c[1].is_zero() && self.c[2].is_zero()).then(|| self.c[0].clone())
    }

    pub fn scale_k(&self, k: &KElem) -> Self {
        LElem {
            c: self.c.clone().map(|ci| ci * k),
        }
    }

    /// `σ^power`, with `power` taken mod 3.
    pub fn sigma(&self, power: i64) -> Self {
        (0..power.rem_euclid(3)).fold(self.clone(), |a, _| a.sigma_once())
    }

    fn sigma_once(&self) -> Self {
        // σ(θ) = θ² - 2, σ(θ²) = 3 - θ - θ²
        let [c0, c1, c2] = &self.c;
        LElem::new(c0 - &c1.scale(&int(2)) + c2.scale(&int(3)), -c2, c1 - c2)
    }

    /// Complex conjugation: `τ` on each coefficient, `θ` fixed.
    pub fn alpha_l(&self) -> Self {
        LElem {
            c: self.c.clone().map(|ci| ci.tau()),
        }
    }

    /// `N_{L/K}(a) = a·σ(a)·σ²(a)`.
    pub fn norm_to_k(&self) -> KElem {
        let n = self * &self.sigma(1) * self.sigma(2);
        n.to_k()
            .expect("relative norm L/K must land in K; arithmetic is inconsistent")
    }

    /// Split `a = v + ζ3·w` with `v, w` in the real subfield `Q(θ)`.
    pub fn split_real(&self) -> (LElem, LElem) {
        let part = |f: fn(&KElem) -> Rat| LElem {
            c: self.c.clone().map(|k| KElem::from_rat(f(&k))),
        };
        (part(|k| k.a0.clone()), part(|k| k.a1.clone()))
    }

    /// Multiplication-by-`self` matrix over `K` in the basis `{1, θ, θ²}`.
    fn mul_matrix(&self) -> Vec<Vec<KElem>> {
        let cols = [
            self.clone(),
            self * &LElem::theta(),
            self * &(LElem::theta() * LElem::theta()),
        ];
        (0..3)
            .map(|r| cols.iter().map(|col| col.c[r].clone()).collect())
            .collect()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let y = solve_linear(
            &self.mul_matrix(),
            &[KElem::one(), KElem::zero(), KElem::zero()],
        )
        .expect("a nonzero element of a field is invertible");
        Ok(LElem::new(y[0].clone(), y[1].clone(), y[2].clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// `ζ3 ↦ exp(2πi/3)`, `θ ↦ 2cos(2π·2^k/7)` for `conj_index = k`.
    pub fn embed(&self, conj_index: usize) -> Complex64 {
        let t = theta_values()[conj_index % 3];
        self.c
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, ci| acc * t + ci.embed())
    }

    pub fn render(&self, ascii: bool) -> String {
        let (t, z) = if ascii { ("t", "z3") } else { ("θ", "ζ3") };
        let monos = [
            String::new(),
            z.to_string(),
            t.to_string(),
            format!("{t}{z}"),
            format!("{t}^2"),
            format!("{t}^2{z}"),
        ];
        let mut out = String::new();
        for (q, m) in self.coords().iter().zip(&monos) {
            push_term(&mut out, q, m);
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }

    pub fn to_strings(&self) -> [String; 6] {
        self.coords().map(|q| rat_to_string(&q))
    }

    pub fn parse_strings<S: AsRef<str>>(s: &[S]) -> Result<Self> {
        if s.len() != 6 {
            return Err(Error::Parse(format!(
                "L element needs 6 rational coordinates, got {}",
                s.len()
            )));
        }
        let q: Vec<Rat> = s
            .iter()
            .map(|x| parse_rat(x.as_ref()))
            .collect::<Result<_>>()?;
        let q: [Rat; 6] = q.try_into().expect("length checked");
        Ok(LElem::from_coords(q))
    }
}

impl fmt::Display for LElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl Add for &LElem {
    type Output = LElem;
    fn add(self, rhs: &LElem) -> LElem {
        LElem::new(
            &self.c[0] + &rhs.c[0],
            &self.c[1] + &rhs.c[1],
            &self.c[2] + &rhs.c[2],
        )
    }
}

impl Sub for &LElem {
    type Output = LElem;
    fn sub(self, rhs: &LElem) -> LElem {
        LElem::new(
            &self.c[0] - &rhs.c[0],
            &self.c[1] - &rhs.c[1],
            &self.c[2] - &rhs.c[2],
        )
    }
}

impl Mul for &LElem {
    type Output = LElem;
    fn mul(self, rhs: &LElem) -> LElem {
        let mut d: [KElem; 5] = Default::default();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                d[i + j] = &d[i + j] + &(a * b);
            }
        }
        // θ³ = 1 + 2θ - θ², θ⁴ = -1 - θ + 3θ²
        let [d0, d1, d2, d3, d4] = d;
        LElem::new(
            &d0 + &d3 - &d4,
            &d1 + &d3.scale(&int(2)) - &d4,
            &d2 - &d3 + d4.scale(&int(3)),
        )
    }
}

impl Neg for &LElem {
    type Output = LElem;
    fn neg(self) -> LElem {
        LElem {
            c: self.c.clone().map(|k| -k),
        }
    }
}

impl Neg for LElem {
    type Output = LElem;
    fn neg(self) -> LElem {
        -&self
    }
}

forward_binops!(LElem: Add add, Sub sub, Mul mul);

impl Zero for LElem {
    fn zero() -> Self {
        LElem::default()
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }
}

impl One for LElem {
    fn one() -> Self {
        LElem::from_int(1)
    }
}

impl Field for LElem {
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

impl Serialize for LElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        LElem::parse_strings(&v).map_err(D::Error::custom)
    }
}

impl Serialize for KElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for KElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        if v.len() != 2 {
            return Err(D::Error::custom("K element needs 2 rational coordinates"));
        }
        Ok(KElem::new(
            parse_rat(&v[0]).map_err(D::Error::custom)?,
            parse_rat(&v[1]).map_err(D::Error::custom)?,
        ))
    }
}

#[cfg(test)]
pub(crate) mod strategies {
    use super::*;
    use crate::kernel::rat;
    use proptest::prelude::*;

    pub fn small_rat() -> impl Strategy<Value = Rat> {
        (-10i64..=10, 1i64..=5).prop_map(|(n, d)| rat(n, d))
    }

    pub fn k_elem() -> impl Strategy<Value = KElem> {
        (small_rat(), small_rat()).prop_map(|(a, b)| KElem::new(a, b))
    }

    pub fn l_elem() -> impl Strategy<Value = LElem> {
        (k_elem(), k_elem(), k_elem()).prop_map(|(a, b, c)| LElem::new(a, b, c))
    }
}

#[cfg(test)]
mod tests {
    use super::strategies::*;
    use super::*;
    use crate::kernel::rat;
    use proptest::prelude::*;

    fn l(q: [i64; 6]) -> LElem {
        LElem::from_coords(q.map(int))
    }

    #[test]
    fn theta_minimal_polynomial_holds_numerically() {
        for t in theta_values() {
            assert!((t * t * t + t * t - 2.0 * t - 1.0).abs() < 1e-12);
        }
        let t = LElem::theta();
        let m = &t * &t * &t + &t * &t - t.clone() - t - LElem::one();
        assert!(m.is_zero());
    }

    #[test]
    fn k_arithmetic() {
        let z = KElem::zeta3();
        assert_eq!(&z * &z, KElem::from_ints(-1, -1));
        assert_eq!(&z * &KElem::from_ints(-1, -1), KElem::one());
        assert_eq!(z.inv().unwrap(), KElem::from_ints(-1, -1));
        assert_eq!(KElem::zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(z.div(&KElem::zero()), Err(Error::DivisionByZero));
        // γ·α_L(γ) = 1 for γ = ζ3
        assert_eq!(&z * &z.tau(), KElem::one());
    }

    #[test]
    fn l_arithmetic() {
        let t = LElem::theta();
        let t2 = &t * &t;
        assert_eq!(&t * &t2, l([1, 0, 2, 0, -1, 0]));
        assert_eq!(t.inv().unwrap(), l([-2, 0, 1, 0, 1, 0]));
        assert_eq!(LElem::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn sigma_values() {
        assert_eq!(LElem::theta().sigma(1), l([-2, 0, 0, 0, 1, 0]));
        let k = LElem::from_k(KElem::new(rat(3, 2), int(-7)));
        assert_eq!(k.sigma(1), k);
        assert_eq!(LElem::theta().sigma(-1), LElem::theta().sigma(2));
    }

    #[test]
    fn alpha_l_on_zeta3() {
        assert_eq!(
            LElem::zeta3().alpha_l(),
            LElem::from_k(KElem::from_ints(-1, -1))
        );
    }

    #[test]
    fn norms() {
        assert_eq!(LElem::theta().norm_to_k(), KElem::one());
        let k = KElem::new(rat(2, 3), int(1));
        assert_eq!(LElem::from_k(k.clone()).norm_to_k(), k.pow(3));
    }

    #[test]
    fn embeddings() {
        let t = LElem::theta().embed(0);
        assert!((t.re - 1.246_979_603_717_467).abs() < 1e-12 && t.im.abs() < 1e-15);
        let z = LElem::zeta3().embed(0);
        assert!((z.re + 0.5).abs() < 1e-15 && (z.im - 0.866_025_403_784_438_6).abs() < 1e-12);
    }

    #[test]
    fn render_and_strings() {
        let a = LElem::new(
            KElem::from_ints(1, 1),
            KElem::from_ints(0, -2),
            KElem::new(rat(1, 2), int(0)),
        );
        assert_eq!(a.render(false), "1+ζ3-2θζ3+(1/2)θ^2");
        assert_eq!(a.render(true), "1+z3-2tz3+(1/2)t^2");
        assert_eq!(LElem::parse_strings(&a.to_strings()).unwrap(), a);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"["1/1","1/1","0/1","-2/1","1/2","0/1"]"#);
        assert!(LElem::parse_strings(&["1"; 5]).is_err());
        assert_eq!(KElem::from_ints(-1, -1).to_string(), "-1-ζ3");
    }

    proptest! {
        #[test]
        fn k_field_axioms(a in k_elem(), b in k_elem(), c in k_elem()) {
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), KElem::one());
            }
        }

        #[test]
        fn l_inverse(a in l_elem()) {
            prop_assume!(!a.is_zero());
            prop_assert_eq!(&a * &a.inv().unwrap(), LElem::one());
        }

        #[test]
        fn sigma_is_order_three_ring_automorphism(a in l_elem(), b in l_elem()) {
            prop_assert_eq!(a.sigma(3), a.clone());
            prop_assert_eq!((&a + &b).sigma(1), a.sigma(1) + b.sigma(1));
            prop_assert_eq!((&a * &b).sigma(1), a.sigma(1) * b.sigma(1));
            prop_assert_eq!(a.sigma(1).sigma(1), a.sigma(2));
        }

        #[test]
        fn alpha_l_is_involution_commuting_with_sigma(a in l_elem(), b in l_elem(), k in k_elem()) {
            prop_assert_eq!(a.alpha_l().alpha_l(), a.clone());
            prop_assert_eq!(a.sigma(1).alpha_l(), a.alpha_l().sigma(1));
            prop_assert_eq!((&a * &b).alpha_l(), a.alpha_l() * b.alpha_l());
            prop_assert!(LElem::from_k(k).alpha_l().to_k().is_some());
        }

        #[test]
        fn norm_is_multiplicative(a in l_elem(), b in l_elem()) {
            prop_assert_eq!((&a * &b).norm_to_k(), a.norm_to_k() * b.norm_to_k());
        }

        #[test]
        fn embedding_is_homomorphism(a in l_elem(), b in l_elem()) {
            for k in 0..3 {
                let lhs = (&a * &b).embed(k);
                let rhs = a.embed(k) * b.embed(k);
                prop_assert!((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
                prop_assert!(((&a + &b).embed(k) - a.embed(k) - b.embed(k)).norm() < 1e-12);
            }
            prop_assert!((a.sigma(1).embed(0) - a.embed(1)).norm() < 1e-12);
            prop_assert!((a.alpha_l().embed(0) - a.embed(0).conj()).norm() < 1e-12);
        }
    }
}
