//! Unitary elements from commutative `α`-stable subfields, codebooks built
//! from them, and their diversity.
//!
//! For a commutative subfield `M` with `α(M) = M` and any `u ∈ M*`, the
//! quotient `x = u·α(u)⁻¹` satisfies `x·α(x) = 1`, so its embedded matrix is
//! unitary. Since `A` is a division algebra every difference of distinct
//! codebook elements has a nonzero reduced norm.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::{AlgElem, AlgSpec};
use crate::error::{Error, Result};
use crate::field::{KElem, LElem};
use crate::kernel::{
    discriminant_cubic, factor_small_int, has_rational_root, rat, rat_to_f64, reduce_cubic,
    solve_linear, Rat, ReducedCubic, UPoly,
};

/// Which commutative subfield of `A` to draw `u` from.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SubfieldSpec {
    /// `K(e) ≅ Q(ζ9)`.
    KOfE,
    /// `K(ν)` with `ν = kθ + (1+ζ3)e - e²`.
    Nu(i64),
    /// `L` itself.
    LItself,
}

impl SubfieldSpec {
    pub fn generator(&self) -> AlgElem {
        match *self {
            SubfieldSpec::KOfE => AlgElem::e(),
            SubfieldSpec::Nu(k) => nu_generator(k),
            SubfieldSpec::LItself => AlgElem::from_l(LElem::theta()),
        }
    }

    /// `{1, g, g²}`, a `K`-basis of the subfield.
    pub fn basis(&self, alg: &AlgSpec) -> [AlgElem; 3] {
        let g = self.generator();
        let g2 = alg.mul(&g, &g);
        [AlgElem::from_int(1), g, g2]
    }

    /// Checks that the generator has degree 3 over `K` and that `α` maps the
    /// subfield to itself.
    pub fn validate(&self, alg: &AlgSpec) -> Result<()> {
        let basis = self.basis(alg);
        let g = &basis[1];
        if g.to_k().is_some() {
            return Err(Error::Precondition(format!(
                "generator of {self} lies in K"
            )));
        }
        let ag = alg.alpha(g)?;
        if k_coordinates(&basis, &ag).is_none() {
            return Err(Error::Precondition(format!(
                "subfield {self} is not stable under the involution"
            )));
        }
        Ok(())
    }
}

pub fn nu_generator(k: i64) -> AlgElem {
    AlgElem::new(
        LElem::theta().scale_k(&KElem::from_ints(k, 0)),
        LElem::from_k(KElem::from_ints(1, 1)),
        LElem::from_int(-1),
    )
}

/// Writes `y = Σ c_i·basis_i` with `c_i ∈ K`, if possible.
pub fn k_coordinates(basis: &[AlgElem], y: &AlgElem) -> Option<Vec<KElem>> {
    let flat =
        |a: &AlgElem| -> Vec<KElem> { a.x.iter().flat_map(|l| l.c.iter().cloned()).collect() };
    let cols: Vec<Vec<KElem>> = basis.iter().map(flat).collect();
    let rhs = flat(y);
    let rows: Vec<Vec<KElem>> = (0..rhs.len())
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    solve_linear(&rows, &rhs)
}

impl fmt::Display for SubfieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubfieldSpec::KOfE => f.write_str("zeta9"),
            SubfieldSpec::Nu(k) => write!(f, "nu:{k}"),
            SubfieldSpec::LItself => f.write_str("L"),
        }
    }
}

impl FromStr for SubfieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "zeta9" | "K(e)" | "Ke" => Ok(SubfieldSpec::KOfE),
            "L" => Ok(SubfieldSpec::LItself),
            other => other
                .strip_prefix("nu:")
                .and_then(|k| k.parse().ok())
                .map(SubfieldSpec::Nu)
                .ok_or_else(|| {
                    Error::Parse(format!(
                        "unknown subfield {other:?}; expected zeta9, nu:<k> or L"
                    ))
                }),
        }
    }
}

/// Rationals `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ denom`, and the order in
/// which 6-tuples of them are visited.
///
/// Values are sorted by height `max(|p|, q)`, then by absolute value,
/// positive before negative. Tuples are visited level by level (level `h`
/// holds the tuples whose largest coordinate height is `h`); inside a level
/// they run in mixed-radix order with coordinate 0 varying fastest, so the
/// first tuple is always `(1, 0, 0, 0, 0, 0)`.
#[derive(Clone, Debug)]
pub struct CoefficientBox {
    bound: u32,
    denom: u32,
    values: Vec<Rat>,
    /// `level_ends[l]` = number of values of height at most the `l`-th height.
    level_ends: Vec<usize>,
}

pub const TUPLE_LEN: usize = 6;

impl CoefficientBox {
    pub fn new(bound: u32, denom: u32) -> Result<Self> {
        if bound == 0 || denom == 0 {
            return Err(Error::Contract(format!(
                "box bound and denominator bound must be >= 1, got {bound}, {denom}"
            )));
        }
        let mut set = HashSet::new();
        for q in 1..=denom as i64 {
            for p in -(bound as i64)..=bound as i64 {
                set.insert(rat(p, q));
            }
        }
        let height = |r: &Rat| r.numer().abs().max(r.denom().clone());
        let mut values: Vec<Rat> = set.into_iter().collect();
        values.sort_by(|a, b| {
            height(a)
                .cmp(&height(b))
                .then_with(|| a.abs().cmp(&b.abs()))
                .then_with(|| b.cmp(a))
        });
        let mut level_ends = Vec::new();
        for i in 1..=values.len() {
            if i == values.len() || height(&values[i]) != height(&values[i - 1]) {
                level_ends.push(i);
            }
        }
        Ok(CoefficientBox {
            bound,
            denom,
            values,
            level_ends,
        })
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// Number of nonzero tuples.
    pub fn len(&self) -> u64 {
        (self.values.len() as u64).pow(TUPLE_LEN as u32) - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn decode(index: u64, base: usize) -> [usize; TUPLE_LEN] {
        let mut out = [0; TUPLE_LEN];
        let mut rest = index;
        for d in out.iter_mut() {
            *d = (rest % base as u64) as usize;
            rest /= base as u64;
        }
        out
    }

    /// `(prev, n)` per level: digits range over `0..n`, at least one `>= prev`.
    fn levels(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.level_ends
            .iter()
            .enumerate()
            .map(|(l, &n)| (if l == 0 { 0 } else { self.level_ends[l - 1] }, n))
    }

    fn level_indices(prev: usize, n: usize) -> impl Iterator<Item = [usize; TUPLE_LEN]> {
        (0..(n as u64).pow(TUPLE_LEN as u32))
            .map(move |i| Self::decode(i, n))
            .filter(move |t| t.iter().any(|&d| d >= prev) && t.iter().any(|&d| d != 0))
    }

    /// Every nonzero tuple of value indices, in visiting order.
    pub fn index_tuples(&self) -> impl Iterator<Item = [usize; TUPLE_LEN]> + '_ {
        self.levels()
            .flat_map(|(prev, n)| Self::level_indices(prev, n))
    }

    pub fn tuple(&self, idx: &[usize; TUPLE_LEN]) -> [Rat; TUPLE_LEN] {
        idx.map(|i| self.values[i].clone())
    }

    pub fn tuples(&self) -> impl Iterator<Item = [Rat; TUPLE_LEN]> + '_ {
        self.index_tuples().map(|t| self.tuple(&t))
    }

    /// Parallel search returning the first tuple (in visiting order) that
    /// `f` maps to `Some`, plus how many tuples were visited up to it.
    pub fn find_first<T, F>(&self, f: F) -> (Option<T>, u64)
    where
        T: Send,
        F: Fn(&[Rat; TUPLE_LEN]) -> Option<T> + Sync,
    {
        self.find_first_index(|t| f(&self.tuple(t)))
    }

    /// [`find_first`](Self::find_first) over tuples of indices into
    /// [`values`](Self::values).
    pub fn find_first_index<T, F>(&self, f: F) -> (Option<T>, u64)
    where
        T: Send,
        F: Fn(&[usize; TUPLE_LEN]) -> Option<T> + Sync,
    {
        let mut visited = 0u64;
        for (prev, n) in self.levels() {
            let total = (n as u64).pow(TUPLE_LEN as u32);
            let valid =
                |t: &[usize; TUPLE_LEN]| t.iter().any(|&d| d >= prev) && t.iter().any(|&d| d != 0);
            let hit = (0..total).into_par_iter().find_map_first(|i| {
                let t = Self::decode(i, n);
                if !valid(&t) {
                    return None;
                }
                f(&t).map(|v| (i, v))
            });
            match hit {
                Some((i, v)) => {
                    visited += (0..=i).filter(|&j| valid(&Self::decode(j, n))).count() as u64;
                    return (Some(v), visited);
                }
                None => {
                    visited += (0..total).filter(|&j| valid(&Self::decode(j, n))).count() as u64;
                }
            }
        }
        (None, visited)
    }

    /// The values scaled to integers by the least common denominator `m`,
    /// when `m·bound` is small enough for exact `i128` norms.
    fn scaled_values(&self) -> Option<(i128, Vec<i128>)> {
        let mut m: i128 = 1;
        for q in 2..=self.denom as i128 {
            m = m.checked_mul(q / gcd_i128(m, q))?;
            if m > 1 << 20 {
                return None;
            }
        }
        if m * self.bound as i128 > 1 << 20 {
            return None;
        }
        let vals = self
            .values
            .iter()
            .map(|r| {
                let s = r * Rat::from_integer(m.into());
                s.to_integer()
                    .to_i128()
                    .expect("scaled value is a small integer")
            })
            .collect();
        Some((m, vals))
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i128(b, a % b)
    }
}

/// Integer arithmetic in `Z[ζ3][θ]` for the norm-witness inner loop.
mod int_norm {
    pub type IK = (i128, i128);
    pub type IL = [IK; 3];

    fn kmul(a: IK, b: IK) -> IK {
        (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0 - a.1 * b.1)
    }

    fn lmul(x: &IL, y: &IL) -> IL {
        let mut d = [(0i128, 0i128); 5];
        for i in 0..3 {
            for j in 0..3 {
                let p = kmul(x[i], y[j]);
                d[i + j].0 += p.0;
                d[i + j].1 += p.1;
            }
        }
        // θ³ = 1 + 2θ - θ², θ⁴ = -1 - θ + 3θ²
        [
            (d[0].0 + d[3].0 - d[4].0, d[0].1 + d[3].1 - d[4].1),
            (d[1].0 + 2 * d[3].0 - d[4].0, d[1].1 + 2 * d[3].1 - d[4].1),
            (d[2].0 - d[3].0 + 3 * d[4].0, d[2].1 - d[3].1 + 3 * d[4].1),
        ]
    }

    fn sigma(x: &IL) -> IL {
        let [c0, c1, c2] = *x;
        [
            (c0.0 - 2 * c1.0 + 3 * c2.0, c0.1 - 2 * c1.1 + 3 * c2.1),
            (-c2.0, -c2.1),
            (c1.0 - c2.0, c1.1 - c2.1),
        ]
    }

    /// `N_{L/K}(x)`, coordinates in the order of `LElem::coords`.
    pub fn norm(coords: &[i128; 6]) -> IK {
        let x: IL = [
            (coords[0], coords[1]),
            (coords[2], coords[3]),
            (coords[4], coords[5]),
        ];
        let s1 = sigma(&x);
        let s2 = sigma(&s1);
        let n = lmul(&lmul(&x, &s1), &s2);
        debug_assert!(n[1] == (0, 0) && n[2] == (0, 0));
        n[0]
    }
}

/// Every nonzero element `a + b·g + c·g²` of the subfield whose six rational
/// coordinates (`a, b, c ∈ K`) lie in the box.
pub fn enumerate_subfield<'a>(
    alg: &AlgSpec,
    spec: SubfieldSpec,
    cbox: &'a CoefficientBox,
) -> impl Iterator<Item = AlgElem> + 'a {
    let basis = spec.basis(alg);
    cbox.tuples().map(move |q| combine(&basis, &q))
}

fn combine(basis: &[AlgElem; 3], q: &[Rat; TUPLE_LEN]) -> AlgElem {
    (0..3).fold(AlgElem::zero(), |acc, i| {
        let c = KElem::new(q[2 * i].clone(), q[2 * i + 1].clone());
        if c.is_zero() {
            acc
        } else {
            acc + basis[i].scale_k(&c)
        }
    })
}

/// `x = u·α(u)⁻¹`, which satisfies `x·α(x) = 1` whenever `u` commutes with
/// `α(u)`.
pub fn hilbert90_unitary(alg: &AlgSpec, u: &AlgElem) -> Result<AlgElem> {
    if u.is_zero() {
        return Err(Error::Precondition("u must be nonzero".into()));
    }
    let au = alg.alpha(u)?;
    if alg.mul(u, &au) != alg.mul(&au, u) {
        return Err(Error::Precondition(format!("u·α(u) ≠ α(u)·u for u = {u}")));
    }
    let x = alg.div(u, &au)?;
    assert!(alg.is_unitary(&x)?, "x·α(x) ≠ 1 for x = u/α(u), u = {u}");
    Ok(x)
}

pub type ComplexMat3 = [[Complex64; 3]; 3];

/// Largest entry of `|M·M† - I|`.
pub fn unitarity_defect(m: &ComplexMat3) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let s: Complex64 = (0..3).map(|k| m[i][k] * m[j][k].conj()).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((s - target).norm());
        }
    }
    worst
}

pub const NUMERIC_UNITARY_TOL: f64 = 1e-10;

/// Complex rendering (embedding index 0) of an exactly unitary element.
pub fn unitary_matrix_numeric(alg: &AlgSpec, x: &AlgElem) -> Result<ComplexMat3> {
    if !alg.is_unitary(x)? {
        return Err(Error::NotUnitary {
            index: 0,
            reason: "x·α(x) ≠ 1".into(),
        });
    }
    let m = alg.embed(x).to_complex(0);
    let defect = unitarity_defect(&m);
    if defect > NUMERIC_UNITARY_TOL {
        return Err(Error::NotUnitary {
            index: 0,
            reason: format!("numeric defect {defect:e} exceeds {NUMERIC_UNITARY_TOL:e}"),
        });
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Codebook {
    pub subfield: SubfieldSpec,
    pub bound: u32,
    pub denom: u32,
    pub elements: Vec<AlgElem>,
    pub matrices: Vec<ComplexMat3>,
    /// Candidates `u` drawn from the box.
    pub candidates: u64,
    /// Candidates rejected by the commuting precondition of `u ↦ u/α(u)`.
    pub precondition_failures: u64,
    /// The box ran out before the requested size was reached.
    pub exhausted: bool,
}

/// Maps the subfield enumeration through `u ↦ u/α(u)`, deduplicates in
/// first-seen order and stops at `size` distinct elements.
pub fn generate_codebook(
    alg: &AlgSpec,
    spec: SubfieldSpec,
    cbox: &CoefficientBox,
    size: usize,
) -> Result<Codebook> {
    if size == 0 {
        return Err(Error::Contract("codebook size must be >= 1".into()));
    }
    spec.validate(alg)?;
    let mut seen = HashSet::new();
    let mut elements = Vec::new();
    let mut matrices = Vec::new();
    let mut candidates = 0;
    let mut precondition_failures = 0;
    for u in enumerate_subfield(alg, spec, cbox) {
        if elements.len() == size {
            break;
        }
        candidates += 1;
        let x = match hilbert90_unitary(alg, &u) {
            Ok(x) => x,
            Err(Error::Precondition(_)) => {
                precondition_failures += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        if seen.insert(x.clone()) {
            matrices.push(unitary_matrix_numeric(alg, &x)?);
            elements.push(x);
        }
    }
    Ok(Codebook {
        subfield: spec,
        bound: cbox.bound(),
        denom: cbox.denom(),
        exhausted: elements.len() < size,
        elements,
        matrices,
        candidates,
        precondition_failures,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiversityReport {
    /// `½·min |det(X_i - X_j)|^{1/3}`.
    pub zeta: f64,
    pub argmin: (usize, usize),
    pub min_abs_det: f64,
    /// Exact `det(X_i - X_j)` at the argmin pair.
    pub min_det: KElem,
    pub exact_nonzero: bool,
    pub pairs: usize,
}

/// Exact pairwise reduced norms of differences; the minimum modulus is
/// compared exactly through `|k|² = N_{K/Q}(k)`.
pub fn diversity_product(alg: &AlgSpec, elements: &[AlgElem]) -> Result<DiversityReport> {
    if elements.len() < 2 {
        return Err(Error::TooFewElements(elements.len()));
    }
    let pairs: Vec<(usize, usize)> = (0..elements.len())
        .flat_map(|i| (i + 1..elements.len()).map(move |j| (i, j)))
        .collect();
    let dets: Vec<(usize, usize, Option<KElem>)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let d = &elements[i] - &elements[j];
            (i, j, (!d.is_zero()).then(|| alg.reduced_norm(&d)))
        })
        .collect();
    let mut best: Option<(Rat, usize, usize, KElem)> = None;
    for (i, j, det) in dets {
        let det = det.ok_or(Error::ZeroDifference(i, j))?;
        let n = det.norm_q();
        if best.as_ref().is_none_or(|(bn, ..)| &n < bn) {
            best = Some((n, i, j, det));
        }
    }
    let (n, i, j, det) = best.expect("at least one pair");
    let min_abs_det = rat_to_f64(&n).sqrt();
    Ok(DiversityReport {
        zeta: 0.5 * min_abs_det.cbrt(),
        argmin: (i, j),
        min_abs_det,
        exact_nonzero: !n.is_zero(),
        min_det: det,
        pairs: pairs.len(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessSearch {
    pub target: KElem,
    pub witness: Option<LElem>,
    pub examined: u64,
}

/// Searches `u ∈ L` with coordinates in the box for `N_{L/K}(u) = target`.
///
/// A witness for `γ` or `γ²` would show the algebra splits; finding none is
/// only evidence that it does not.
pub fn norm_witness_search(target: &KElem, cbox: &CoefficientBox) -> WitnessSearch {
    let (witness, examined) = match cbox.scaled_values() {
        // u = v/m with v integral, so N(u) = target iff N(v) = m³·target
        Some((m, vals)) => {
            let scaled = target.scale(&Rat::from_integer((m * m * m).into()));
            let goal = (scaled.a0.is_integer() && scaled.a1.is_integer()).then(|| {
                (
                    scaled.a0.to_integer().to_i128().unwrap_or(i128::MAX),
                    scaled.a1.to_integer().to_i128().unwrap_or(i128::MAX),
                )
            });
            match goal {
                None => (None, cbox.len()),
                Some(goal) => cbox.find_first_index(|t| {
                    (int_norm::norm(&t.map(|i| vals[i])) == goal)
                        .then(|| LElem::from_coords(cbox.tuple(t)))
                }),
            }
        }
        None => cbox.find_first(|q| {
            let u = LElem::from_coords(q.clone());
            (&u.norm_to_k() == target).then_some(u)
        }),
    };
    WitnessSearch {
        target: target.clone(),
        witness,
        examined,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table1Row {
    pub k: i64,
    pub generator: AlgElem,
    /// Reduced characteristic polynomial of `ν` itself.
    pub char_poly: UPoly<Rat>,
    /// Minimal-`T2` defining polynomial of the cubic field `Q(ν)`.
    pub poly: UPoly<Rat>,
    /// The element of `Q(ν)` whose characteristic polynomial is `poly`.
    pub reduced: ReducedCubic,
    /// Discriminant of `poly`.
    pub discriminant: Rat,
    pub factors: Vec<(u64, u32)>,
    pub irreducible: bool,
}

impl Table1Row {
    pub fn generator_label(&self, ascii: bool) -> String {
        let (t, z, e2) = if ascii {
            ("t", "z3", "e^2")
        } else {
            ("θ", "ζ3", "e²")
        };
        let kt = if self.k == 1 {
            t.to_string()
        } else {
            format!("{}{t}", self.k)
        };
        format!("{kt}+(1+{z})e-{e2}")
    }

    pub fn element_label(&self, ascii: bool) -> String {
        self.reduced.render_element(if ascii { "nu" } else { "ν" })
    }
}

fn int_factors(r: &Rat) -> Vec<(u64, u32)> {
    if r.is_integer() && !r.is_zero() {
        r.abs()
            .to_integer()
            .to_u64()
            .map(factor_small_int)
            .unwrap_or_default()
    } else {
        Vec::new()
    }
}

/// The cubic field `Q(ν)`, `ν = kθ + (1+ζ3)e - e²`: the reduced
/// characteristic polynomial of `ν`, and the smallest-`T2` polynomial
/// defining the same field together with its discriminant.
pub fn table1_row(k: i64) -> Result<Table1Row> {
    if !(1..=5).contains(&k) {
        return Err(Error::Contract(format!(
            "table row k must be in 1..=5, got {k}"
        )));
    }
    let alg = AlgSpec::default();
    let generator = nu_generator(k);
    let chi = alg.reduced_char_poly(&generator);
    if chi.coeffs().iter().any(|c| !c.is_rational()) {
        return Err(Error::Contract(format!("χ_ν is not rational: {chi}")));
    }
    let char_poly = chi.map(|c| c.a0.clone());
    let reduced = reduce_cubic(&char_poly)?;
    let poly = reduced.poly.clone();
    let discriminant = discriminant_cubic(&poly)?;
    Ok(Table1Row {
        k,
        irreducible: has_rational_root(&char_poly).is_none() && has_rational_root(&poly).is_none(),
        factors: int_factors(&discriminant),
        generator,
        char_poly,
        poly,
        reduced,
        discriminant,
    })
}

/// Floating-point 3×3 determinant.
pub fn numeric_det(m: &ComplexMat3) -> Complex64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}
