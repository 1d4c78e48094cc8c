//! Python bindings: elements of the division algebra, the involution,
//! Hilbert-90 unitaries, codebooks and their diversity.
//!
//! Rational inputs are taken through `str()`, so `int`, `fractions.Fraction`
//! and `"p/q"` strings all work. Exact outputs are `"p/q"` strings.

use fulldiv::algebra::{from_zeta9, lemma2_conditions, render_zeta9, to_zeta9};
use fulldiv::codebook::{self, table1_row};
use fulldiv::json::CodebookFile;
use fulldiv::kernel::{parse_rat, rat_to_string, render_factorization};
use fulldiv::{AlgElem, AlgSpec, CoefficientBox, KElem, SubfieldSpec};
use num_complex::Complex64;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: fulldiv::Error) -> PyErr {
    match e {
        fulldiv::Error::DivisionByZero | fulldiv::Error::DivisionFailure => {
            PyZeroDivisionError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn spec() -> AlgSpec {
    AlgSpec::default()
}

fn rat_of(obj: &Bound<'_, PyAny>) -> PyResult<fulldiv::Rat> {
    parse_rat(obj.str()?.to_str()?.trim()).map_err(err)
}

fn k_strings(k: &KElem) -> (String, String) {
    let [a0, a1] = k.to_strings();
    (a0, a1)
}

/// `x0 + e·x1 + e²·x2` in the cyclic algebra with `e³ = ζ3`.
#[pyclass(
    name = "AlgElem",
    module = "pyfulldiv",
    eq,
    hash,
    frozen,
    from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyAlgElem {
    inner: AlgElem,
}

impl From<AlgElem> for PyAlgElem {
    fn from(inner: AlgElem) -> Self {
        PyAlgElem { inner }
    }
}

#[pymethods]
impl PyAlgElem {
    /// From the six coefficients of `1, ζ9, …, ζ9⁵` (the subfield `K(e)`).
    #[staticmethod]
    fn from_zeta9(coeffs: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        if coeffs.len() != 6 {
            return Err(PyValueError::new_err(format!(
                "need 6 coefficients, got {}",
                coeffs.len()
            )));
        }
        let mut q: [fulldiv::Rat; 6] = Default::default();
        for (slot, c) in q.iter_mut().zip(&coeffs) {
            *slot = rat_of(c)?;
        }
        Ok(from_zeta9(&q).into())
    }

    /// From the JSON form `{"x0": [6 × "p/q"], "x1": …, "x2": …}`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str::<AlgElem>(text)
            .map(Into::into)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[staticmethod]
    fn integer(n: i64) -> Self {
        AlgElem::from_int(n).into()
    }

    #[staticmethod]
    fn e() -> Self {
        AlgElem::e().into()
    }

    /// `ν = kθ + (1+ζ3)e − e²`.
    #[staticmethod]
    fn nu(k: i64) -> Self {
        codebook::nu_generator(k).into()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("elements serialize")
    }

    /// Coefficients of `1, ζ9, …, ζ9⁵` if the element lies in `K(e)`.
    fn zeta9(&self) -> Option<Vec<String>> {
        to_zeta9(&self.inner).map(|q| q.iter().map(rat_to_string).collect())
    }

    fn alpha(&self) -> PyResult<Self> {
        spec().alpha(&self.inner).map(Into::into).map_err(err)
    }

    fn inverse(&self) -> PyResult<Self> {
        spec().inv(&self.inner).map(Into::into).map_err(err)
    }

    /// Reduced norm `det(matrix_embed(x))` as `(a0, a1)` meaning `a0 + a1·ζ3`.
    fn reduced_norm(&self) -> (String, String) {
        k_strings(&spec().reduced_norm(&self.inner))
    }

    #[pyo3(signature = (ascii = false))]
    fn char_poly(&self, ascii: bool) -> String {
        spec().reduced_char_poly(&self.inner).render(ascii)
    }

    /// The 3×3 embedded matrix under complex embedding `index`.
    #[pyo3(signature = (index = 0))]
    fn matrix(&self, index: usize) -> PyResult<Vec<Vec<Complex64>>> {
        if index > 2 {
            return Err(PyValueError::new_err("embedding index must be 0, 1 or 2"));
        }
        Ok(spec()
            .embed(&self.inner)
            .to_complex(index)
            .iter()
            .map(|r| r.to_vec())
            .collect())
    }

    /// `x·α(x) = 1`.
    fn is_unitary(&self) -> PyResult<bool> {
        spec().is_unitary(&self.inner).map_err(err)
    }

    fn is_alpha_fixed(&self) -> PyResult<bool> {
        spec().is_alpha_fixed(&self.inner).map_err(err)
    }

    fn lemma2_conditions(&self) -> (bool, bool, bool) {
        lemma2_conditions(&self.inner)
    }

    fn __add__(&self, other: &Self) -> Self {
        (&self.inner + &other.inner).into()
    }

    fn __sub__(&self, other: &Self) -> Self {
        (&self.inner - &other.inner).into()
    }

    fn __mul__(&self, other: &Self) -> Self {
        spec().mul(&self.inner, &other.inner).into()
    }

    fn __truediv__(&self, other: &Self) -> PyResult<Self> {
        spec()
            .div(&self.inner, &other.inner)
            .map(Into::into)
            .map_err(err)
    }

    fn __neg__(&self) -> Self {
        (-self.inner.clone()).into()
    }

    fn __pow__(&self, n: u32, _modulo: Option<Bound<'_, PyAny>>) -> Self {
        spec().pow(&self.inner, n).into()
    }

    fn __str__(&self) -> String {
        match to_zeta9(&self.inner) {
            Some(q) => render_zeta9(&q, false),
            None => self.inner.render(false),
        }
    }

    fn __repr__(&self) -> String {
        format!("AlgElem({})", self.inner.render(true))
    }
}

/// `u·α(u)⁻¹`, unitary whenever `u` commutes with `α(u)`.
#[pyfunction]
fn hilbert90(u: &PyAlgElem) -> PyResult<PyAlgElem> {
    codebook::hilbert90_unitary(&spec(), &u.inner)
        .map(Into::into)
        .map_err(err)
}

/// The five cubic subfields `Q(ν)`, `ν = kθ + (1+ζ3)e − e²`.
#[pyfunction]
fn table1(py: Python<'_>) -> PyResult<Vec<Bound<'_, PyDict>>> {
    (1..=5)
        .map(|k| {
            let r = table1_row(k).map_err(err)?;
            let d = PyDict::new(py);
            d.set_item("k", r.k)?;
            d.set_item("generator", r.generator_label(false))?;
            d.set_item("poly", r.poly.to_string())?;
            d.set_item("discriminant", r.discriminant.to_string())?;
            d.set_item("factorization", render_factorization(&r.factors, false))?;
            d.set_item("char_poly", r.char_poly.to_string())?;
            d.set_item("field_generator", r.element_label(false))?;
            Ok(d)
        })
        .collect()
}

/// Codebook of `size` distinct unitary elements from a subfield
/// (`"zeta9"`, `"nu:<k>"` or `"L"`), as the JSON file format.
#[pyfunction]
#[pyo3(signature = (subfield = "zeta9", bound = 1, denom = 1, size = 16))]
fn generate_codebook(subfield: &str, bound: u32, denom: u32, size: usize) -> PyResult<String> {
    let alg = spec();
    let sub: SubfieldSpec = subfield.parse().map_err(err)?;
    let cbox = CoefficientBox::new(bound, denom).map_err(err)?;
    let cb = codebook::generate_codebook(&alg, sub, &cbox, size).map_err(err)?;
    let div = if cb.elements.len() >= 2 {
        Some(codebook::diversity_product(&alg, &cb.elements).map_err(err)?)
    } else {
        None
    };
    Ok(CodebookFile::new(&alg, &cb, div.as_ref()).to_json())
}

/// Elements of a codebook JSON document.
#[pyfunction]
fn codebook_elements(text: &str) -> PyResult<Vec<PyAlgElem>> {
    let file = CodebookFile::from_json(text).map_err(err)?;
    Ok(file.elements.into_iter().map(Into::into).collect())
}

/// Exact pairwise diversity of a list of elements.
#[pyfunction]
fn diversity<'py>(py: Python<'py>, elements: Vec<PyAlgElem>) -> PyResult<Bound<'py, PyDict>> {
    let xs: Vec<AlgElem> = elements.into_iter().map(|e| e.inner).collect();
    let r = codebook::diversity_product(&spec(), &xs).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("zeta", r.zeta)?;
    d.set_item("argmin", r.argmin)?;
    d.set_item("min_abs_det", r.min_abs_det)?;
    d.set_item("min_det", k_strings(&r.min_det))?;
    d.set_item("exact_nonzero", r.exact_nonzero)?;
    d.set_item("pairs", r.pairs)?;
    Ok(d)
}

/// First `u ∈ L` in the box with `N_{L/K}(u) = a0 + a1·ζ3`, as its six
/// coordinates, or `None` (evidence, not proof, of a non-norm).
#[pyfunction]
#[pyo3(signature = (a0, a1, bound = 3, denom = 2))]
fn norm_witness(
    a0: Bound<'_, PyAny>,
    a1: Bound<'_, PyAny>,
    bound: u32,
    denom: u32,
) -> PyResult<Option<Vec<String>>> {
    let target = KElem::new(rat_of(&a0)?, rat_of(&a1)?);
    let cbox = CoefficientBox::new(bound, denom).map_err(err)?;
    let w = codebook::norm_witness_search(&target, &cbox);
    Ok(w.witness.map(|u| u.to_strings().to_vec()))
}

#[pymodule]
fn pyfulldiv(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlgElem>()?;
    m.add_function(wrap_pyfunction!(hilbert90, m)?)?;
    m.add_function(wrap_pyfunction!(table1, m)?)?;
    m.add_function(wrap_pyfunction!(generate_codebook, m)?)?;
    m.add_function(wrap_pyfunction!(codebook_elements, m)?)?;
    m.add_function(wrap_pyfunction!(diversity, m)?)?;
    m.add_function(wrap_pyfunction!(norm_witness, m)?)?;
    Ok(())
}
