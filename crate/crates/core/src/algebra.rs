//! The cubic cyclic algebra `A = (L/K, σ, γ) = L ⊕ eL ⊕ e²L` with
//! `e³ = γ` and `λe = eσ(λ)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{KElem, LElem};
use crate::kernel::{Rat, UPoly};

/// `x0 + e·x1 + e²·x2` with `x_i ∈ L`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(from = "AlgElemRepr", into = "AlgElemRepr")]
pub struct AlgElem {
    pub x: [LElem; 3],
}

#[derive(Serialize, Deserialize)]
struct AlgElemRepr {
    x0: LElem,
    x1: LElem,
    x2: LElem,
}

impl From<AlgElemRepr> for AlgElem {
    fn from(r: AlgElemRepr) -> Self {
        AlgElem::new(r.x0, r.x1, r.x2)
    }
}

impl From<AlgElem> for AlgElemRepr {
    fn from(a: AlgElem) -> Self {
        let [x0, x1, x2] = a.x;
        AlgElemRepr { x0, x1, x2 }
    }
}

impl AlgElem {
    pub fn new(x0: LElem, x1: LElem, x2: LElem) -> Self {
        AlgElem { x: [x0, x1, x2] }
    }

    pub fn from_l(x0: LElem) -> Self {
        AlgElem::new(x0, LElem::zero(), LElem::zero())
    }

    pub fn from_k(k: KElem) -> Self {
        AlgElem::from_l(LElem::from_k(k))
    }

    pub fn from_int(n: i64) -> Self {
        AlgElem::from_l(LElem::from_int(n))
    }

    pub fn e() -> Self {
        AlgElem::new(LElem::zero(), LElem::one(), LElem::zero())
    }

    /// Multiplication by a central scalar.
    pub fn scale_k(&self, k: &KElem) -> Self {
        AlgElem {
            x: self.x.clone().map(|xi| xi.scale_k(k)),
        }
    }

    pub fn to_k(&self) -> Option<KElem> {
        if self.x[1].is_zero() && self.x[2].is_zero() {
            self.x[0].to_k()
        } else {
            None
        }
    }

    pub fn render(&self, ascii: bool) -> String {
        let e = if ascii {
            ["", "e*", "e^2*"]
        } else {
            ["", "e·", "e²·"]
        };
        let terms: Vec<String> = self
            .x
            .iter()
            .zip(e)
            .filter(|(xi, _)| !xi.is_zero())
            .map(|(xi, ep)| {
                let r = xi.render(ascii);
                let single = !r.trim_start_matches('-').contains(['+', '-']);
                match (ep.is_empty(), r.as_str()) {
                    (true, _) if single => r,
                    (true, _) => format!("({r})"),
                    (false, "1") => ep.trim_end_matches(['·', '*']).to_string(),
                    (false, _) if single && !r.starts_with('-') => format!("{ep}{r}"),
                    (false, _) => format!("{ep}({r})"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl Add for &AlgElem {
    type Output = AlgElem;
    fn add(self, rhs: &AlgElem) -> AlgElem {
        AlgElem::new(
            &self.x[0] + &rhs.x[0],
            &self.x[1] + &rhs.x[1],
            &self.x[2] + &rhs.x[2],
        )
    }
}

impl Sub for &AlgElem {
    type Output = AlgElem;
    fn sub(self, rhs: &AlgElem) -> AlgElem {
        AlgElem::new(
            &self.x[0] - &rhs.x[0],
            &self.x[1] - &rhs.x[1],
            &self.x[2] - &rhs.x[2],
        )
    }
}

impl Neg for &AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        AlgElem {
            x: self.x.clone().map(|xi| -xi),
        }
    }
}

impl Neg for AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        -&self
    }
}

forward_binops!(AlgElem: Add add, Sub sub);

impl Zero for AlgElem {
    fn zero() -> Self {
        AlgElem::default()
    }
    fn is_zero(&self) -> bool {
        self.x.iter().all(Zero::is_zero)
    }
}

/// A 3×3 matrix over `L`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MatL {
    pub m: [[LElem; 3]; 3],
}

impl MatL {
    pub fn identity() -> Self {
        let mut m: [[LElem; 3]; 3] = Default::default();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = LElem::one();
        }
        MatL { m }
    }

    pub fn det(&self) -> LElem {
        let m = &self.m;
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            &m[r1][c1] * &m[r2][c2] - &m[r1][c2] * &m[r2][c1]
        };
        &m[0][0] * &minor(1, 2, 1, 2) - &m[0][1] * &minor(1, 2, 0, 2)
            + &m[0][2] * &minor(1, 2, 0, 1)
    }

    pub fn trace(&self) -> LElem {
        &self.m[0][0] + &self.m[1][1] + &self.m[2][2]
    }

    /// Sum of the principal 2×2 minors.
    fn principal_minor_sum(&self) -> LElem {
        let m = &self.m;
        let pm = |i: usize, j: usize| &m[i][i] * &m[j][j] - &m[i][j] * &m[j][i];
        pm(0, 1) + pm(0, 2) + pm(1, 2)
    }

    /// Transpose with `α_L` applied entrywise; the ordinary conjugate
    /// transpose under the complex embedding.
    pub fn conj_transpose(&self) -> Self {
        let mut m: [[LElem; 3]; 3] = Default::default();
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = self.m[j][i].alpha_l();
            }
        }
        MatL { m }
    }

    pub fn to_complex(&self, conj_index: usize) -> [[Complex64; 3]; 3] {
        self.m.clone().map(|row| row.map(|v| v.embed(conj_index)))
    }

    pub fn render(&self, ascii: bool) -> String {
        let cells: Vec<Vec<String>> = self
            .m
            .iter()
            .map(|row| row.iter().map(|v| v.render(ascii)).collect())
            .collect();
        let width = cells
            .iter()
            .flatten()
            .map(|s| s.chars().count())
            .max()
            .unwrap_or(1);
        cells
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| format!("{s:<width$}"))
                    .collect::<Vec<_>>()
                    .join(" | ")
                    .trim_end()
                    .to_string()
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl Add for &MatL {
    type Output = MatL;
    fn add(self, rhs: &MatL) -> MatL {
        let mut out = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                out.m[i][j] = &self.m[i][j] + &rhs.m[i][j];
            }
        }
        out
    }
}

impl Sub for &MatL {
    type Output = MatL;
    fn sub(self, rhs: &MatL) -> MatL {
        let mut out = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                out.m[i][j] = &self.m[i][j] - &rhs.m[i][j];
            }
        }
        out
    }
}

impl Mul for &MatL {
    type Output = MatL;
    fn mul(self, rhs: &MatL) -> MatL {
        let mut out = MatL::default();
        for i in 0..3 {
            for j in 0..3 {
                out.m[i][j] =
                    (0..3).fold(LElem::zero(), |acc, k| acc + &self.m[i][k] * &rhs.m[k][j]);
            }
        }
        out
    }
}

forward_binops!(MatL: Add add, Sub sub, Mul mul);

/// The algebra parameters: `γ ∈ K*` and the derived `z = γ·α_L(γ)`.
///
/// Any nonzero `γ` gives a well-defined algebra, but the involution and the
/// unitary machinery need `z = 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgSpec {
    gamma: KElem,
    gamma_inv: KElem,
    z: KElem,
}

impl Default for AlgSpec {
    fn default() -> Self {
        AlgSpec::new(KElem::zeta3()).expect("ζ3 is nonzero")
    }
}

impl AlgSpec {
    pub fn new(gamma: KElem) -> Result<Self> {
        let gamma_inv = gamma
            .inv()
            .map_err(|_| Error::Contract("γ must be nonzero".into()))?;
        let z = &gamma * &gamma.tau();
        Ok(AlgSpec {
            gamma,
            gamma_inv,
            z,
        })
    }

    pub fn gamma(&self) -> &KElem {
        &self.gamma
    }

    pub fn z(&self) -> &KElem {
        &self.z
    }

    pub fn unitary_available(&self) -> bool {
        self.z.is_one()
    }

    pub fn require_unitary(&self) -> Result<()> {
        if self.unitary_available() {
            Ok(())
        } else {
            Err(Error::UnsupportedSpec(format!(
                "involution needs γ·α_L(γ) = 1, got {}",
                self.z
            )))
        }
    }

    /// `(e^i a)(e^j b) = e^{i+j} σ^j(a) b`, folding `e³ = γ`.
    pub fn mul(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        let mut out = AlgElem::zero();
        for (i, a) in x.x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.x.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let mut t = a.sigma(j as i64) * b;
                if i + j >= 3 {
                    t = t.scale_k(&self.gamma);
                }
                let k = (i + j) % 3;
                out.x[k] = &out.x[k] + &t;
            }
        }
        out
    }

    pub fn pow(&self, x: &AlgElem, n: u32) -> AlgElem {
        (0..n).fold(AlgElem::from_int(1), |acc, _| self.mul(&acc, x))
    }

    /// Left multiplication by `x` in the right `L`-basis `{1, e, e²}`:
    ///
    /// ```text
    /// x0   γσ(x2)  γσ²(x1)
    /// x1   σ(x0)   γσ²(x2)
    /// x2   σ(x1)   σ²(x0)
    /// ```
    pub fn embed(&self, x: &AlgElem) -> MatL {
        let [x0, x1, x2] = &x.x;
        let g = |v: LElem| v.scale_k(&self.gamma);
        MatL {
            m: [
                [x0.clone(), g(x2.sigma(1)), g(x1.sigma(2))],
                [x1.clone(), x0.sigma(1), g(x2.sigma(2))],
                [x2.clone(), x1.sigma(1), x0.sigma(2)],
            ],
        }
    }

    /// `α(x) = α_L(x0) + e·γ⁻¹z²·σ(α_L(x2)) + e²·γ⁻¹z·σ²(α_L(x1))`.
    pub fn alpha(&self, x: &AlgElem) -> Result<AlgElem> {
        self.require_unitary()?;
        let [x0, x1, x2] = &x.x;
        let z2 = &self.z * &self.z;
        Ok(AlgElem::new(
            x0.alpha_l(),
            x2.alpha_l().sigma(1).scale_k(&(&self.gamma_inv * &z2)),
            x1.alpha_l().sigma(2).scale_k(&(&self.gamma_inv * &self.z)),
        ))
    }

    /// Reduced norm `det(embed(x)) ∈ K`.
    pub fn reduced_norm(&self, x: &AlgElem) -> KElem {
        self.embed(x)
            .det()
            .to_k()
            .expect("reduced norm must lie in K")
    }

    /// Monic `det(X·I - embed(x))`; always has coefficients in `K`.
    pub fn reduced_char_poly(&self, x: &AlgElem) -> UPoly<KElem> {
        let m = self.embed(x);
        let in_k = |v: LElem, what: &str| {
            v.to_k()
                .unwrap_or_else(|| panic!("{what} of an embedded matrix left K: {v}"))
        };
        let t = in_k(m.trace(), "trace");
        let s = in_k(m.principal_minor_sum(), "minor sum");
        let d = in_k(m.det(), "determinant");
        UPoly::new(vec![-d, s, -t, KElem::one()])
    }

    /// Cayley-Hamilton: with `χ = X³ + aX² + bX + c`, `x⁻¹ = -(x² + ax + b)/c`.
    pub fn inv(&self, x: &AlgElem) -> Result<AlgElem> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let chi = self.reduced_char_poly(x);
        let c = chi.coeff(0);
        if c.is_zero() {
            return Err(Error::DivisionFailure);
        }
        let x2 = self.mul(x, x);
        let q = x2 + x.scale_k(&chi.coeff(2)) + AlgElem::from_k(chi.coeff(1));
        let inv = q.scale_k(&(-c.inv()?));
        let one = AlgElem::from_int(1);
        assert!(
            self.mul(x, &inv) == one && self.mul(&inv, x) == one,
            "inverse postcondition failed for {x}"
        );
        Ok(inv)
    }

    /// `x·y⁻¹`.
    pub fn div(&self, x: &AlgElem, y: &AlgElem) -> Result<AlgElem> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn is_alpha_fixed(&self, x: &AlgElem) -> Result<bool> {
        Ok(&self.alpha(x)? == x)
    }

    /// `x·α(x) = 1`.
    pub fn is_unitary(&self, x: &AlgElem) -> Result<bool> {
        Ok(self.mul(x, &self.alpha(x)?) == AlgElem::from_int(1))
    }
}

/// The three coordinate conditions for `α(x) = x` when `γ = ζ3`, writing
/// `x_i = v_i + ζ3·w_i` with `v_i, w_i ∈ Q(θ)`:
/// `x0 = α_L(x0)`, `v1 = -σ(v2)`, `w1 = σ(w2) + v1`.
pub fn lemma2_conditions(x: &AlgElem) -> (bool, bool, bool) {
    let [x0, x1, x2] = &x.x;
    let (v1, w1) = x1.split_real();
    let (v2, w2) = x2.split_real();
    (
        x0 == &x0.alpha_l(),
        v1 == -v2.sigma(1),
        w1 == w2.sigma(1) + &v1,
    )
}

/// `c0 + e·c1 + e²·c2` with all coefficients central; these form the
/// commutative subfield `K(e)`.
pub fn ke_subfield_element(c0: KElem, c1: KElem, c2: KElem) -> AlgElem {
    AlgElem::new(LElem::from_k(c0), LElem::from_k(c1), LElem::from_k(c2))
}

/// `Σ q_i ζ9^i` (`i = 0..5`) as an element of `K(e)` via `ζ9 ↦ e`,
/// `ζ9³ ↦ ζ3`. Only meaningful for `γ = ζ3`.
pub fn from_zeta9(q: &[Rat; 6]) -> AlgElem {
    ke_subfield_element(
        KElem::new(q[0].clone(), q[3].clone()),
        KElem::new(q[1].clone(), q[4].clone()),
        KElem::new(q[2].clone(), q[5].clone()),
    )
}

/// Inverse of [`from_zeta9`]; `None` when `x ∉ K(e)`.
pub fn to_zeta9(x: &AlgElem) -> Option<[Rat; 6]> {
    let [c0, c1, c2] = [x.x[0].to_k()?, x.x[1].to_k()?, x.x[2].to_k()?];
    Some([c0.a0, c1.a0, c2.a0, c0.a1, c1.a1, c2.a1])
}

/// `1/19(-10+16ζ9+...)`-style rendering with a common denominator pulled out.
pub fn render_zeta9(q: &[Rat; 6], ascii: bool) -> String {
    use num_integer::Integer;
    let den = q
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let sym = if ascii { "z9" } else { "ζ9" };
    let mut body = String::new();
    for (i, r) in q.iter().enumerate() {
        let n = (r * Rat::from_integer(den.clone())).to_integer();
        if n.is_zero() {
            continue;
        }
        let neg = n < num_bigint::BigInt::zero();
        let abs = if neg { -n } else { n };
        body.push_str(if neg {
            "-"
        } else if body.is_empty() {
            ""
        } else {
            "+"
        });
        let mono = match i {
            0 => String::new(),
            1 => sym.to_string(),
            _ => format!("{sym}^{i}"),
        };
        if i == 0 || !abs.is_one() {
            body.push_str(&abs.to_string());
        }
        body.push_str(&mono);
    }
    if body.is_empty() {
        return "0".to_string();
    }
    if den.is_one() {
        body
    } else {
        format!("1/{den}({body})")
    }
}


#[cfg(test)]
mod tests {
    use super::strategies::alg_elem;
    use super::*;
    use crate::field::strategies::l_elem;
    use crate::kernel::{has_rational_root, int, rat};
    use proptest::prelude::*;

    fn k(a0: i64, a1: i64) -> KElem {
        KElem::from_ints(a0, a1)
    }

    fn lk(a0: i64, a1: i64) -> LElem {
        LElem::from_k(k(a0, a1))
    }

    /// `(1+ζ3) + e + e²ζ3`
    fn worked_x() -> AlgElem {
        AlgElem::new(lk(1, 1), lk(1, 0), lk(0, 1))
    }

    fn mat_k(rows: [[(i64, i64); 3]; 3]) -> MatL {
        MatL {
            m: rows.map(|r| r.map(|(a, b)| lk(a, b))),
        }
    }

    #[test]
    fn renders_terms() {
        assert_eq!(worked_x().render(false), "(1+ζ3) + e + e²·ζ3");
        assert_eq!(
            AlgElem::new(lk(0, -1), lk(0, 1), lk(-1, -1)).render(true),
            "-z3 + e*z3 + e^2*(-1-z3)"
        );
        assert_eq!(AlgElem::zero().render(false), "0");
    }

    #[test]
    fn e_cubed_is_gamma() {
        let a = AlgSpec::default();
        let e = AlgElem::e();
        assert_eq!(a.pow(&e, 3), AlgElem::from_k(KElem::zeta3()));
        assert_eq!(a.mul(&AlgElem::from_int(1), &worked_x()), worked_x());
    }

    #[test]
    fn embed_e_and_one() {
        let a = AlgSpec::default();
        assert_eq!(
            a.embed(&AlgElem::e()),
            mat_k([
                [(0, 0), (0, 0), (0, 1)],
                [(1, 0), (0, 0), (0, 0)],
                [(0, 0), (1, 0), (0, 0)]
            ])
        );
        assert_eq!(a.embed(&AlgElem::from_int(1)), MatL::identity());
    }

    #[test]
    fn embed_worked_example() {
        let a = AlgSpec::default();
        // ζ3² = -1 - ζ3
        let expected = mat_k([
            [(1, 1), (-1, -1), (0, 1)],
            [(1, 0), (1, 1), (-1, -1)],
            [(0, 1), (1, 0), (1, 1)],
        ]);
        assert_eq!(a.embed(&worked_x()), expected);
    }

    #[test]
    fn alpha_examples() {
        let a = AlgSpec::default();
        let e = AlgElem::e();
        let ae = a.alpha(&e).unwrap();
        assert_eq!(ae, AlgElem::new(LElem::zero(), LElem::zero(), lk(-1, -1)));
        assert_eq!(a.mul(&e, &ae), AlgElem::from_int(1));
        assert_eq!(
            a.alpha(&worked_x()).unwrap(),
            AlgElem::new(lk(0, -1), lk(0, 1), lk(-1, -1))
        );
        assert_eq!(
            a.alpha(&AlgElem::from_int(1)).unwrap(),
            AlgElem::from_int(1)
        );
    }

    #[test]
    fn alpha_requires_unit_z() {
        let a = AlgSpec::new(k(2, 0)).unwrap();
        assert!(!a.unitary_available());
        assert!(matches!(
            a.alpha(&AlgElem::e()),
            Err(Error::UnsupportedSpec(_))
        ));
        assert!(AlgSpec::new(KElem::zero()).is_err());
    }

    #[test]
    fn conj_transpose_examples() {
        let a = AlgSpec::default();
        assert_eq!(MatL::identity().conj_transpose(), MatL::identity());
        let expected = mat_k([
            [(0, -1), (1, 0), (-1, -1)],
            [(0, 1), (0, -1), (1, 0)],
            [(-1, -1), (0, 1), (0, -1)],
        ]);
        assert_eq!(a.embed(&worked_x()).conj_transpose(), expected);
        assert_eq!(a.embed(&a.alpha(&worked_x()).unwrap()), expected);
    }

    #[test]
    fn char_poly_examples() {
        let a = AlgSpec::default();
        let chi_e = a.reduced_char_poly(&AlgElem::e());
        assert_eq!(
            chi_e,
            UPoly::new(vec![-KElem::zeta3(), k(0, 0), k(0, 0), k(1, 0)])
        );
        assert_eq!(chi_e.to_string(), "X^3-ζ3");

        let c = KElem::new(rat(2, 3), int(-1));
        let lin = UPoly::new(vec![-c.clone(), KElem::one()]);
        assert_eq!(
            a.reduced_char_poly(&AlgElem::from_k(c)),
            &(&lin * &lin) * &lin
        );

        let nu = AlgElem::new(LElem::theta(), lk(1, 1), lk(-1, 0));
        let chi = a.reduced_char_poly(&nu);
        assert_eq!(chi, UPoly::new(vec![k(-3, 0), k(-5, 0), k(1, 0), k(1, 0)]));
    }

    #[test]
    fn inverse_examples() {
        let a = AlgSpec::default();
        assert_eq!(
            a.inv(&AlgElem::e()).unwrap(),
            AlgElem::new(LElem::zero(), LElem::zero(), lk(-1, -1))
        );
        assert_eq!(a.inv(&AlgElem::from_int(1)).unwrap(), AlgElem::from_int(1));
        assert_eq!(a.inv(&AlgElem::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverse_reports_zero_divisor_in_split_algebra() {
        // γ = 1 splits the algebra: 1 - e has reduced norm 1 - γ = 0.
        let a = AlgSpec::new(KElem::one()).unwrap();
        let x = AlgElem::from_int(1) - AlgElem::e();
        assert_eq!(a.inv(&x), Err(Error::DivisionFailure));
    }

    #[test]
    fn worked_example_quotient() {
        let a = AlgSpec::default();
        let x = worked_x();
        let q = a.div(&x, &a.alpha(&x).unwrap()).unwrap();
        let expected = [-10, 16, 1, -4, 14, 8].map(|n| rat(n, 19));
        assert_eq!(to_zeta9(&q).unwrap(), expected);
        assert_eq!(
            render_zeta9(&expected, false),
            "1/19(-10+16ζ9+ζ9^2-4ζ9^3+14ζ9^4+8ζ9^5)"
        );
        assert_eq!(
            from_zeta9(&[1, 1, 0, 1, 0, 1].map(int)),
            worked_x(),
            "1 + ζ9 + ζ9³ + ζ9⁵"
        );
    }

    #[test]
    fn lemma2_examples() {
        let a = AlgSpec::default();
        let one = AlgElem::from_int(1);
        assert!(a.is_alpha_fixed(&one).unwrap());
        assert_eq!(lemma2_conditions(&one), (true, true, true));
        assert!(!a.is_alpha_fixed(&AlgElem::e()).unwrap());
        // v1 = 1, w1 = 1, v2 = -1, w2 = 0
        let x = AlgElem::new(LElem::zero(), lk(1, 1), lk(-1, 0));
        assert!(a.is_alpha_fixed(&x).unwrap());
        assert_eq!(lemma2_conditions(&x), (true, true, true));
        // θ9 := ζ9 + ζ9⁻¹ = e - e²(1+ζ3)
        let t9 = AlgElem::new(LElem::zero(), lk(1, 0), lk(-1, -1));
        assert!(a.is_alpha_fixed(&t9).unwrap());
    }

    #[test]
    fn zeta9_real_subfield_expansion() {
        // y0 + y1·t + y2·t² = (y0+2y2) + [(y1-y2) - y2ζ3]ζ9 + [(y2-y1) - y1ζ3]ζ9²
        let a = AlgSpec::default();
        let t9 = AlgElem::new(LElem::zero(), lk(1, 0), lk(-1, -1));
        let (y0, y1, y2) = (int(3), int(-2), int(5));
        let y = AlgElem::from_k(KElem::from_rat(y0.clone()))
            + t9.scale_k(&KElem::from_rat(y1.clone()))
            + a.mul(&t9, &t9).scale_k(&KElem::from_rat(y2.clone()));
        let expected = ke_subfield_element(
            KElem::from_rat(&y0 + &y2 * int(2)),
            KElem::new(&y1 - &y2, -y2.clone()),
            KElem::new(&y2 - &y1, -y1.clone()),
        );
        assert_eq!(y, expected);
    }

    #[test]
    fn alpha_matches_inverse_power_form() {
        // α(x) = α_L(x0) + e⁻¹zσ⁻¹(α_L(x1)) + e⁻²z²σ⁻²(α_L(x2)) with e⁻¹ from inversion
        let a = AlgSpec::default();
        let e_inv = a.inv(&AlgElem::e()).unwrap();
        let e_inv2 = a.mul(&e_inv, &e_inv);
        let x = AlgElem::new(
            LElem::new(k(1, 2), k(0, -1), k(3, 0)),
            LElem::new(k(-2, 1), k(1, 1), k(0, 4)),
            LElem::new(k(5, 0), k(-1, 3), k(2, -2)),
        );
        let [x0, x1, x2] = &x.x;
        let z = a.z().clone();
        let via_inverse = AlgElem::from_l(x0.alpha_l())
            + a.mul(&e_inv, &AlgElem::from_l(x1.alpha_l().sigma(-1).scale_k(&z)))
            + a.mul(
                &e_inv2,
                &AlgElem::from_l(x2.alpha_l().sigma(-2).scale_k(&(&z * &z))),
            );
        assert_eq!(a.alpha(&x).unwrap(), via_inverse);
    }

    #[test]
    fn ke_elements_commute() {
        let a = AlgSpec::default();
        let p = ke_subfield_element(k(1, 2), k(-1, 0), k(3, -2));
        let q = ke_subfield_element(k(0, 1), k(2, 2), k(-1, 1));
        assert_eq!(a.mul(&p, &q), a.mul(&q, &p));
    }

    #[test]
    fn mat_render() {
        let a = AlgSpec::default();
        let s = a.embed(&AlgElem::e()).render(true);
        assert_eq!(s.lines().count(), 3);
        assert_eq!(s.lines().next().unwrap(), "0  | 0  | z3");
    }

    fn det_minus(m: &MatL, t: &KElem) -> KElem {
        let s = m - &MatL {
            m: MatL::identity().m.map(|r| r.map(|v| v.scale_k(t))),
        };
        s.det().to_k().unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn involution_axioms(x in alg_elem(), y in alg_elem()) {
            let a = AlgSpec::default();
            let al = |v: &AlgElem| a.alpha(v).unwrap();
            prop_assert_eq!(al(&(&x + &y)), al(&x) + al(&y));
            prop_assert_eq!(al(&a.mul(&x, &y)), a.mul(&al(&y), &al(&x)));
            prop_assert_eq!(al(&al(&x)), x.clone());
        }

        #[test]
        fn embed_is_ring_homomorphism(x in alg_elem(), y in alg_elem()) {
            let a = AlgSpec::default();
            prop_assert_eq!(a.embed(&a.mul(&x, &y)), a.embed(&x) * a.embed(&y));
            prop_assert_eq!(a.embed(&(&x + &y)), a.embed(&x) + a.embed(&y));
            prop_assert_eq!(a.embed(&a.alpha(&x).unwrap()), a.embed(&x).conj_transpose());
        }

        #[test]
        fn char_poly_matches_determinant_evaluation(x in alg_elem()) {
            let a = AlgSpec::default();
            let chi = a.reduced_char_poly(&x);
            let m = a.embed(&x);
            for t in [k(0, 0), k(1, 0), k(-2, 1), k(3, 5)] {
                prop_assert_eq!(-chi.eval(&t), det_minus(&m, &t));
            }
            prop_assert_eq!(chi.coeff(0), -a.reduced_norm(&x));
        }

        #[test]
        fn rational_char_polys_have_no_rational_root(v in l_elem()) {
            // elements of Q(θ)(e) with rational char poly: restrict to x0 ∈ Q(θ) \ Q
            let a = AlgSpec::default();
            let (re, _) = v.split_real();
            prop_assume!(re.to_k().is_none());
            let chi = a.reduced_char_poly(&AlgElem::from_l(re));
            let q = chi.map(|c| { assert!(c.is_rational()); c.a0.clone() });
            prop_assert_eq!(has_rational_root(&q), None);
        }

        #[test]
        fn inverse_is_two_sided(x in alg_elem()) {
            prop_assume!(!x.is_zero());
            let a = AlgSpec::default();
            let inv = a.inv(&x).unwrap();
            prop_assert_eq!(a.mul(&inv, &x), AlgElem::from_int(1));
        }
    }
}
