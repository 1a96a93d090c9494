//! Python bindings: the model context, Picard elements, segments, bundles,
//! and the Hom/Ext dimension functions, thinly wrapped.
//!
//! ```python
//! import wpl_py
//! m = wpl_py.Model(3)
//! e = m.classify("[0,1]")
//! assert e.rank() == 2
//! assert wpl_py.ext_dim(e, e.tau()) >= 1
//! ```

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use wpl_core::bundles::{gen_ext_bundle, Bundle};
use wpl_core::homext;
use wpl_core::picard::{ModelContext, PicardElement};
use wpl_core::sequences::{injective_hull, projective_cover};
use wpl_core::strip::{Marker, OrbitClass, Segment};
use wpl_core::suites::{self, WindowSpec};
use wpl_core::ModelError;

fn err(e: ModelError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// The fixed model data: weight n and base line bundle twist.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Model {
    ctx: ModelContext,
}

#[pymethods]
impl Model {
    #[new]
    #[pyo3(signature = (n, base=None))]
    fn new(n: i64, base: Option<(i64, i64, i64, i64)>) -> PyResult<Self> {
        if n < 2 {
            return Err(PyValueError::new_err("weight n must be at least 2"));
        }
        let ctx = match base {
            None => ModelContext::new(n),
            Some((a1, a2, a3, a)) => {
                let plain = ModelContext::new(n);
                ModelContext::with_base(n, plain.element(a1, a2, a3, a))
            }
        };
        Ok(Model { ctx })
    }

    #[getter]
    fn n(&self) -> i64 {
        self.ctx.n()
    }

    /// Normal form of a1*x1 + a2*x2 + a3*x3 + a*c.
    fn element(&self, a1: i64, a2: i64, a3: i64, a: i64) -> Element {
        Element {
            inner: self.ctx.element(a1, a2, a3, a),
        }
    }

    fn omega(&self) -> Element {
        Element {
            inner: self.ctx.omega(),
        }
    }

    fn canonical(&self) -> Element {
        Element {
            inner: self.ctx.canonical(),
        }
    }

    fn dominant(&self) -> Element {
        Element {
            inner: self.ctx.dominant(),
        }
    }

    /// Validated segment; marker is "full", "+" or "-".
    #[pyo3(signature = (i, j, marker="full"))]
    fn segment(&self, i: i64, j: i64, marker: &str) -> PyResult<PySegment> {
        let marker = match marker {
            "full" => Marker::Full,
            "+" | "plus" => Marker::Plus,
            "-" | "minus" => Marker::Minus,
            other => {
                return Err(PyValueError::new_err(format!(
                    "marker must be full, + or -, got {other:?}"
                )))
            }
        };
        Ok(PySegment {
            inner: Segment::new(&self.ctx, i, j, marker).map_err(err)?,
        })
    }

    /// The line bundle O(twist).
    fn line(&self, twist: &Element) -> PyBundle {
        PyBundle {
            inner: Bundle::line(&self.ctx, twist.inner),
        }
    }

    /// The extension bundle for a base twist and width in 0..=n-2.
    fn ext(&self, base: &Element, width: i64) -> PyResult<PyBundle> {
        Ok(PyBundle {
            inner: Bundle::ext(&self.ctx, base.inner, width).map_err(err)?,
        })
    }

    /// Parses a segment or bundle literal and returns its bundle.
    fn classify(&self, literal: &str) -> PyResult<PyBundle> {
        let t = literal.trim();
        let inner = if t.starts_with('[') {
            let seg = Segment::parse(&self.ctx, t).map_err(err)?;
            Bundle::phi_hat(&OrbitClass::of(&seg), &self.ctx)
        } else {
            Bundle::parse(&self.ctx, t).map_err(err)?
        };
        Ok(PyBundle { inner })
    }

    /// The bundle attached to a segment's orbit.
    fn phi_hat(&self, segment: &PySegment) -> PyBundle {
        PyBundle {
            inner: Bundle::phi_hat(&OrbitClass::of(&segment.inner), &self.ctx),
        }
    }

    /// The generalized extension bundle, as a list of summands.
    fn gen_ext(&self, base: &Element, x: &Element) -> PyResult<Vec<PyBundle>> {
        let sum = gen_ext_bundle(&self.ctx, base.inner, x.inner).map_err(err)?;
        Ok(sum
            .summands()
            .iter()
            .map(|b| PyBundle { inner: *b })
            .collect())
    }

    fn duality_compatible(&self) -> bool {
        self.ctx.duality_compatible()
    }

    fn __repr__(&self) -> String {
        format!("Model(n={}, base={})", self.ctx.n(), self.ctx.base_twist())
    }
}

/// An element of the Picard group in normal form.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct Element {
    inner: PicardElement,
}

#[pymethods]
impl Element {
    fn coords(&self) -> (i64, i64, i64, i64) {
        (
            self.inner.coeff_x1(),
            self.inner.coeff_x2(),
            self.inner.coeff_x3(),
            self.inner.coeff_c(),
        )
    }

    fn __add__(&self, other: &Element) -> Element {
        Element {
            inner: self.inner.add(&other.inner),
        }
    }

    fn __sub__(&self, other: &Element) -> Element {
        Element {
            inner: self.inner.sub(&other.inner),
        }
    }

    fn __neg__(&self) -> Element {
        Element {
            inner: self.inner.neg(),
        }
    }

    fn scale(&self, k: i64) -> Element {
        Element {
            inner: self.inner.scale(k),
        }
    }

    fn degree(&self) -> i64 {
        self.inner.degree()
    }

    fn dim_r(&self) -> u64 {
        self.inner.dim_r()
    }

    fn is_effective(&self) -> bool {
        self.inner.is_effective()
    }

    fn __eq__(&self, other: &Element) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }

    fn __repr__(&self) -> String {
        format!("Element({})", self.inner)
    }
}

/// A (possibly half) segment on the marked strip.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySegment {
    inner: Segment,
}

#[pymethods]
impl PySegment {
    #[getter]
    fn i(&self) -> i64 {
        self.inner.i()
    }

    #[getter]
    fn j(&self) -> i64 {
        self.inner.j()
    }

    #[getter]
    fn marker(&self) -> String {
        match self.inner.marker() {
            Marker::Full => "full".into(),
            Marker::Plus => "+".into(),
            Marker::Minus => "-".into(),
        }
    }

    fn canonical(&self) -> PySegment {
        PySegment {
            inner: self.inner.canonical_rep(),
        }
    }

    fn orbit_equal(&self, other: &PySegment) -> bool {
        self.inner.orbit_equal(&other.inner)
    }

    fn __eq__(&self, other: &PySegment) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Segment({})", self.inner)
    }
}

/// An indecomposable vector bundle in canonical form.
#[pyclass(frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyBundle {
    inner: Bundle,
}

#[pymethods]
impl PyBundle {
    fn rank(&self) -> i64 {
        self.inner.rank()
    }

    fn degree(&self) -> i64 {
        self.inner.degree()
    }

    /// Slope as an exact (numerator, denominator) pair.
    fn slope(&self) -> (i64, i64) {
        let s = self.inner.slope();
        (*s.numer(), *s.denom())
    }

    fn is_line(&self) -> bool {
        self.inner.is_line()
    }

    fn is_ext(&self) -> bool {
        self.inner.is_ext()
    }

    fn segment(&self) -> PySegment {
        PySegment {
            inner: self.inner.segment_of().rep(),
        }
    }

    fn act(&self, x: &Element) -> PyBundle {
        PyBundle {
            inner: self.inner.act(&x.inner),
        }
    }

    fn tau(&self) -> PyBundle {
        PyBundle {
            inner: self.inner.tau(),
        }
    }

    fn tau_inv(&self) -> PyBundle {
        PyBundle {
            inner: self.inner.tau_inv(),
        }
    }

    fn dual(&self) -> PyBundle {
        PyBundle {
            inner: self.inner.dual(),
        }
    }

    fn __eq__(&self, other: &PyBundle) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Bundle({})", self.inner)
    }
}

/// dim Ext^1 by the geometric route (intersection index).
#[pyfunction]
fn ext_dim(x: &PyBundle, y: &PyBundle) -> u64 {
    homext::ext_dim(&x.inner.into_sum(), &y.inner.into_sum())
}

/// dim Ext^1 by the algebraic route (Serre duality and case formulas).
#[pyfunction]
fn ext_dim_algebraic(x: &PyBundle, y: &PyBundle) -> u64 {
    homext::ext_dim_algebraic(&x.inner.into_sum(), &y.inner.into_sum())
}

/// dim Hom.
#[pyfunction]
fn hom_dim(x: &PyBundle, y: &PyBundle) -> u64 {
    homext::hom_dim(&x.inner.into_sum(), &y.inner.into_sum())
}

/// The Euler form chi = dim Hom - dim Ext^1.
#[pyfunction]
fn euler_form(x: &PyBundle, y: &PyBundle) -> i64 {
    homext::euler_form(&x.inner.into_sum(), &y.inner.into_sum())
}

/// The intersection index of two segments' orbits.
#[pyfunction]
fn intersection_index(a: &PySegment, b: &PySegment) -> u64 {
    homext::intersection_index(&a.inner, &b.inner)
}

/// Projective cover of an extension bundle: (cover summands, kernel).
#[pyfunction]
fn cover(x: &PyBundle) -> PyResult<(Vec<PyBundle>, PyBundle)> {
    let data = projective_cover(&x.inner).map_err(err)?;
    Ok((
        data.cover
            .summands()
            .iter()
            .map(|b| PyBundle { inner: *b })
            .collect(),
        PyBundle {
            inner: data.complement,
        },
    ))
}

/// Injective hull of an extension bundle: (hull summands, cokernel).
#[pyfunction]
fn hull(x: &PyBundle) -> PyResult<(Vec<PyBundle>, PyBundle)> {
    let data = injective_hull(&x.inner).map_err(err)?;
    Ok((
        data.cover
            .summands()
            .iter()
            .map(|b| PyBundle { inner: *b })
            .collect(),
        PyBundle {
            inner: data.complement,
        },
    ))
}

/// Runs a verification sweep; returns (checked, counterexamples).
#[pyfunction]
#[pyo3(signature = (suite, ns, window="3n"))]
fn verify(suite: &str, ns: Vec<i64>, window: &str) -> PyResult<(u64, Vec<String>)> {
    let w = WindowSpec::parse(window).map_err(err)?;
    let report = suites::run_suite(suite, &ns, w).map_err(err)?;
    Ok((report.checked, report.counterexamples))
}

#[pymodule]
fn wpl_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Model>()?;
    m.add_class::<Element>()?;
    m.add_class::<PySegment>()?;
    m.add_class::<PyBundle>()?;
    m.add_function(wrap_pyfunction!(ext_dim, m)?)?;
    m.add_function(wrap_pyfunction!(ext_dim_algebraic, m)?)?;
    m.add_function(wrap_pyfunction!(hom_dim, m)?)?;
    m.add_function(wrap_pyfunction!(euler_form, m)?)?;
    m.add_function(wrap_pyfunction!(intersection_index, m)?)?;
    m.add_function(wrap_pyfunction!(cover, m)?)?;
    m.add_function(wrap_pyfunction!(hull, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
