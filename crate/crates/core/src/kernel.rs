//! Exact rational scalars and small univariate polynomial utilities.
//!
//! Everything in the crate bottoms out in [`Rat`], an arbitrary-precision
//! rational kept in lowest terms with a positive denominator. [`UPoly`] is a
//! dense polynomial over any [`Coeff`] ring, lowest degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Canonical `p/q` string, always with an explicit denominator.
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer `p`. Decimal points are rejected.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Ring operations needed by [`UPoly`] and the linear solver.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

pub trait Field: Coeff {
    fn try_inv(&self) -> Option<Self>;
}

impl Field for Rat {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// How a coefficient prints inside a polynomial.
pub trait CoeffFormat {
    fn coeff_string(&self, ascii: bool) -> String;
    /// True when the rendering is a single signed term that needs no parentheses.
    fn is_monomial(&self) -> bool;
}

impl CoeffFormat for Rat {
    fn coeff_string(&self, _ascii: bool) -> String {
        self.to_string()
    }

    fn is_monomial(&self) -> bool {
        true
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UPoly<T> {
    coeffs: Vec<T>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith<T: Coeff>(p: &UPoly<T>, q: &UPoly<T>, op: PolyOp) -> UPoly<T> {
    match op {
        PolyOp::Add => p + q,
        PolyOp::Sub => p - q,
        PolyOp::Mul => p * q,
    }
}

impl<T: Coeff> UPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `X`.
    pub fn x() -> Self {
        UPoly {
            coeffs: vec![T::zero(), T::one()],
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, at: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * at.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> UPoly<U> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| f(self.coeff(i), other.coeff(i))).collect())
    }
}

impl<T: Coeff + CoeffFormat> UPoly<T> {
    /// Descending powers, e.g. `X^3+X^2-5X-3`.
    pub fn render(&self, ascii: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            let term = if i > 0 && c.is_one() {
                format!("+{var}")
            } else if i > 0 && (-c.clone()).is_one() {
                format!("-{var}")
            } else if c.is_monomial() {
                let s = c.coeff_string(ascii);
                let (sign, body) = match s.strip_prefix('-') {
                    Some(b) => ("-", b.to_string()),
                    None => ("+", s),
                };
                let body = if i > 0 && body.contains('/') {
                    format!("({body})")
                } else {
                    body
                };
                format!("{sign}{body}{var}")
            } else {
                format!("+({}){var}", c.coeff_string(ascii))
            };
            out.push_str(&term);
        }
        match out.strip_prefix('+') {
            Some(rest) => rest.to_string(),
            None => out,
        }
    }
}

impl<T: Coeff + CoeffFormat> fmt::Display for UPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl<T: Coeff> Add for &UPoly<T> {
    type Output = UPoly<T>;
    fn add(self, rhs: Self) -> UPoly<T> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<T: Coeff> Sub for &UPoly<T> {
    type Output = UPoly<T>;
    fn sub(self, rhs: Self) -> UPoly<T> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<T: Coeff> Mul for &UPoly<T> {
    type Output = UPoly<T>;
    fn mul(self, rhs: Self) -> UPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UPoly::new(out)
    }
}

impl<T: Coeff> Neg for &UPoly<T> {
    type Output = UPoly<T>;
    fn neg(self) -> UPoly<T> {
        UPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Coeff> Add for UPoly<T> {
    type Output = UPoly<T>;
    fn add(self, rhs: Self) -> UPoly<T> {
        &self + &rhs
    }
}

impl<T: Coeff> Sub for UPoly<T> {
    type Output = UPoly<T>;
    fn sub(self, rhs: Self) -> UPoly<T> {
        &self - &rhs
    }
}

impl<T: Coeff> Mul for UPoly<T> {
    type Output = UPoly<T>;
    fn mul(self, rhs: Self) -> UPoly<T> {
        &self * &rhs
    }
}

impl<T: Coeff> Neg for UPoly<T> {
    type Output = UPoly<T>;
    fn neg(self) -> UPoly<T> {
        -&self
    }
}

fn monic_cubic_coeffs(p: &UPoly<Rat>) -> Result<(Rat, Rat, Rat)> {
    if p.degree() != Some(3) || !p.is_monic() {
        return Err(Error::Contract(format!("expected a monic cubic, got {p}")));
    }
    Ok((p.coeff(2), p.coeff(1), p.coeff(0)))
}

/// Discriminant of `X^3 + aX^2 + bX + c`:
/// `18abc - 4a^3c + a^2b^2 - 4b^3 - 27c^2`.
pub fn discriminant_cubic(p: &UPoly<Rat>) -> Result<Rat> {
    let (a, b, c) = monic_cubic_coeffs(p)?;
    let a2 = &a * &a;
    let b2 = &b * &b;
    Ok(int(18) * &a * &b * &c - int(4) * &a2 * &a * &c + &a2 * &b2
        - int(4) * &b2 * &b
        - int(27) * &c * &c)
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Finds a rational root by the rational root theorem, if any exists.
///
/// A cubic over Q is irreducible exactly when this returns `None`.
pub fn has_rational_root(p: &UPoly<Rat>) -> Option<Rat> {
    if p.is_zero() {
        return Some(Rat::zero());
    }
    if p.degree() == Some(0) {
        return None;
    }
    if p.coeff(0).is_zero() {
        return Some(Rat::zero());
    }
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    let lead = ints.last().expect("nonzero polynomial");
    let numerators = positive_divisors(&ints[0]);
    let denominators = positive_divisors(lead);
    for q in &denominators {
        for n in &numerators {
            for cand in [Rat::new(n.clone(), q.clone()), Rat::new(-n, q.clone())] {
                if p.eval(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// Prime factorization by trial division, primes ascending.
pub fn factor_small_int(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factor_small_int needs n >= 1");
    let mut out = Vec::new();
    let mut n = n;
    let mut p = 2u64;
    while p.checked_mul(p).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `2^2·3·47`; the empty product renders as `1`.
pub fn render_factorization(factors: &[(u64, u32)], ascii: bool) -> String {
    if factors.is_empty() {
        return "1".to_string();
    }
    let sep = if ascii { "*" } else { "·" };
    factors
        .iter()
        .map(|&(p, e)| {
            if e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(sep)
}

/// Characteristic polynomial `det(X·I - m)` of a 3×3 matrix.
pub fn char_poly_3x3<F: Coeff>(m: &[[F; 3]; 3]) -> UPoly<F> {
    let e = |i: usize, j: usize| m[i][j].clone();
    let trace = e(0, 0) + e(1, 1) + e(2, 2);
    let pm = |i: usize, j: usize| e(i, i) * e(j, j) - e(i, j) * e(j, i);
    let minors = pm(0, 1) + pm(0, 2) + pm(1, 2);
    let det = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
        - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
        + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
    UPoly::new(vec![-det, minors, -trace, F::one()])
}

/// A generator of a totally real cubic field with minimal trace form.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedCubic {
    /// Characteristic polynomial of `element`.
    pub poly: UPoly<Rat>,
    /// `β = e0 + e1·ρ + e2·ρ²`, `ρ` a root of the input polynomial.
    pub element: [Rat; 3],
    /// `T2(β) = Σ β_i²` over the three real conjugates.
    pub t2: Rat,
}

impl ReducedCubic {
    /// `β` written in terms of a named root, e.g. `(30+ν-ν^2)/9`.
    pub fn render_element(&self, root: &str) -> String {
        let den = self
            .element
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let scaled: Vec<Rat> = self
            .element
            .iter()
            .map(|r| r * Rat::from_integer(den.clone()))
            .collect();
        let body = UPoly::new(scaled).render(true).replace('X', root);
        if den.is_one() {
            body
        } else {
            format!("({body})/{den}")
        }
    }
}

/// Reduced defining polynomial of the cubic field `Q(ρ)`, `ρ` a root of the
/// monic integral irreducible cubic `p` with three real roots.
///
/// Searches the integral elements `β` of `Q(ρ)` for the smallest
/// `T2(β) = Tr(β²)` and returns the characteristic polynomial of the
/// minimizer. Every integral element lies in `(1/d)·Z[ρ]` where `d²` is the
/// largest square dividing `disc(p)`, so the search runs over integer vectors
/// `w` with `β = (w0 + w1·ρ + w2·ρ²)/d`, bounded by the positive definite
/// form `T2`. The minimizer is unique up to sign (for a non-Galois field);
/// the sign is fixed so that the first nonzero of `(w1, w2)` is positive,
/// i.e. `β` keeps the orientation of `ρ`.
pub fn reduce_cubic(p: &UPoly<Rat>) -> Result<ReducedCubic> {
    let (a, b, c) = monic_cubic_coeffs(p)?;
    if !(a.is_integer() && b.is_integer() && c.is_integer()) {
        return Err(Error::Contract(format!("{p} is not integral")));
    }
    if has_rational_root(p).is_some() {
        return Err(Error::Contract(format!("{p} is reducible over Q")));
    }
    let disc = discriminant_cubic(p)?;
    if !disc.is_positive() {
        return Err(Error::Contract(format!(
            "{p} does not have three real roots"
        )));
    }
    let disc = disc
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::Contract(format!("discriminant of {p} out of range")))?;
    let d: i64 = factor_small_int(disc)
        .iter()
        .map(|&(q, e)| q.pow(e / 2))
        .product::<u64>()
        .try_into()
        .map_err(|_| Error::Contract("index bound out of range".into()))?;

    let to_i = |r: &Rat| {
        r.to_integer()
            .to_i128()
            .ok_or_else(|| Error::Contract(format!("coefficients of {p} out of range")))
    };
    let (a, b, c, d) = (to_i(&a)?, to_i(&b)?, to_i(&c)?, d as i128);

    // power sums s_m = Σ ρ_i^m, m = 0..4; the trace form is G_ij = s_{i+j}
    let mut s = [3, -a, 0, 0, 0];
    s[2] = -a * s[1] - 2 * b;
    s[3] = -a * s[2] - b * s[1] - 3 * c;
    s[4] = -a * s[3] - b * s[2] - c * s[1];
    let g = |i: usize, j: usize| s[i + j];
    // d²·T2((w0 + w1ρ + w2ρ²)/d)
    let form = |w: &[i128; 3]| -> i128 {
        (0..3)
            .flat_map(|i| (0..3).map(move |j| g(i, j) * w[i] * w[j]))
            .sum()
    };

    // multiplication by ρ in the basis {1, ρ, ρ²}, and its square
    let comp = [[0, 0, -c], [1, 0, -b], [0, 1, -a]];
    let mut comp2 = [[0i128; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            comp2[i][j] = (0..3).map(|k| comp[i][k] * comp[k][j]).sum();
        }
    }
    let times_d = |w: &[i128; 3]| -> [[i128; 3]; 3] {
        let mut m = [[0i128; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let id = if i == j { w[0] } else { 0 };
                m[i][j] = id + w[1] * comp[i][j] + w[2] * comp2[i][j];
            }
        }
        m
    };
    // β = w/d is integral iff the characteristic polynomial of d·β has
    // coefficients divisible by d, d², d³
    let integral = |w: &[i128; 3]| -> bool {
        let m = times_d(w);
        let tr = m[0][0] + m[1][1] + m[2][2];
        if tr % d != 0 {
            return false;
        }
        let pm = |i: usize, j: usize| m[i][i] * m[j][j] - m[i][j] * m[j][i];
        if (pm(0, 1) + pm(0, 2) + pm(1, 2)) % (d * d) != 0 {
            return false;
        }
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        det % (d * d * d) == 0
    };

    // start from the best integer translate of ρ
    let shift = -(Rat::new(s[1].into(), 3.into()))
        .round()
        .to_integer()
        .to_i128()
        .unwrap_or(0);
    let mut best = form(&[shift * d, d, 0]);

    // bounds |w_i| ≤ sqrt(best·(G⁻¹)_ii) on the ellipsoid wᵀGw ≤ best
    let gram: Vec<Vec<Rat>> = (0..3)
        .map(|i| (0..3).map(|j| Rat::from_integer(g(i, j).into())).collect())
        .collect();
    let inv_diag = |i: usize| {
        let mut e = vec![Rat::zero(); 3];
        e[i] = Rat::one();
        let col = solve_linear(&gram, &e).expect("trace form is nondegenerate");
        rat_to_f64(&col[i])
    };
    let lim = |i: usize| ((best as f64 + 1.0) * inv_diag(i)).sqrt().floor() as i128 + 1;
    let (lim1, lim2) = (lim(1), lim(2));
    let g00 = g(0, 0) as f64;

    let mut minimizers: Vec<[i128; 3]> = Vec::new();
    for w1 in -lim1..=lim1 {
        for w2 in -lim2..=lim2 {
            if w1 == 0 && w2 == 0 {
                continue;
            }
            // the form as a quadratic in w0: g00·w0² + 2·lin·w0 + rest
            let lin = (g(0, 1) * w1 + g(0, 2) * w2) as f64;
            let rest = form(&[0, w1, w2]) as f64;
            let centre = -lin / g00;
            let slack = (best as f64 + 1.0 - rest) / g00 + centre * centre;
            if slack < 0.0 {
                continue;
            }
            let r = slack.sqrt();
            let (lo, hi) = (
                (centre - r).floor() as i128 - 1,
                (centre + r).ceil() as i128 + 1,
            );
            for w0 in lo..=hi {
                let w = [w0, w1, w2];
                let q = form(&w);
                if q > best || !integral(&w) {
                    continue;
                }
                if q < best {
                    best = q;
                    minimizers.clear();
                }
                minimizers.push(w);
            }
        }
    }

    let dr = Rat::from_integer(d.into());
    let char_poly = |w: &[i128; 3]| -> UPoly<Rat> {
        let m = times_d(w).map(|row| row.map(|v| Rat::from_integer(v.into()) / &dr));
        char_poly_3x3(&m)
    };
    let oriented = |w: &[i128; 3]| if w[1] != 0 { w[1] > 0 } else { w[2] > 0 };
    let (w, poly) = minimizers
        .iter()
        .filter(|w| oriented(w))
        .map(|w| (*w, char_poly(w)))
        .min_by(|(_, p), (_, q)| {
            let key = |u: &UPoly<Rat>| {
                u.coeffs()
                    .iter()
                    .rev()
                    .map(|x| (x.abs(), x.clone()))
                    .collect::<Vec<_>>()
            };
            key(p).cmp(&key(q))
        })
        .expect("ρ itself or a translate is always a candidate");
    Ok(ReducedCubic {
        poly,
        element: w.map(|wi| Rat::new(wi.into(), dr.to_integer())),
        t2: Rat::new(best.into(), (d * d).into()),
    })
}

/// Solves `rows · x = rhs` by Gauss-Jordan elimination.
///
/// Works for any shape. Returns one solution (free variables set to zero)
/// when the system is consistent, `None` otherwise.
#[allow(clippy::needless_range_loop)]
pub fn solve_linear<F: Field>(rows: &[Vec<F>], rhs: &[F]) -> Option<Vec<F>> {
    let m = rows.len();
    assert_eq!(m, rhs.len());
    let n = rows.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<F>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].try_inv().expect("nonzero pivot");
        for c in col..=n {
            a[row][c] = a[row][c].clone() * inv.clone();
        }
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    a[r][c] = a[r][c].clone() - f.clone() * a[row][c].clone();
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m {
            break;
        }
    }
    if a[row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut x = vec![F::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][n].clone();
    }
    Some(x)
}
