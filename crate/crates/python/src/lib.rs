//! Python bindings: `pybuffon.Polyhedron` plus the polygon functions.

use nalgebra::DMatrix;
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use buffon::dynamics::{iterate_to_limit, perturb, polygon_spectrum as closed_form_spectrum, IterateOptions};
use buffon::io::input::{load, InputSpec};
use buffon::io::off::{parse_off, write_off};
use buffon::poly_core::skeleton;
use buffon::poly_core::steinitz::validate_complex;
use buffon::realization::{pyramid_height_ratio, realize, shape_report, Realization, RealizationSource};
use buffon::spectral::closed_form::recognize;
use buffon::spectral::{buffon_matrix, spectrum, SpectralDecomposition, DEFAULT_GROUP_TOL};
use buffon::symmetry::{automorphisms, DEFAULT_BUDGET};

create_exception!(pybuffon, BuffonError, PyException);

fn err(e: buffon::Error) -> PyErr {
    BuffonError::new_err(format!("{}: {e}", e.kind()))
}

fn rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect()
}

/// A polyhedral complex with vertex coordinates in any dimension.
#[pyclass(module = "pybuffon", frozen)]
struct Polyhedron {
    inner: Realization,
    is_reference: bool,
}

impl Polyhedron {
    fn decompose(&self, tol: f64) -> PyResult<SpectralDecomposition> {
        spectrum(&buffon_matrix(&skeleton(&self.inner.complex)), tol).map_err(err)
    }
}

#[pymethods]
impl Polyhedron {
    /// Reference coordinates of a seed such as `"icosahedron"` or
    /// `"prism(6)"`, after the given Conway operators.
    #[staticmethod]
    #[pyo3(signature = (name, conway = Vec::new()))]
    fn from_seed(name: &str, conway: Vec<String>) -> PyResult<Self> {
        let l = load(&InputSpec::Seed {
            name: name.into(),
            conway,
        })
        .map_err(err)?;
        Ok(Self {
            inner: l.realization,
            is_reference: true,
        })
    }

    #[staticmethod]
    fn from_off(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: parse_off(text).map_err(err)?,
            is_reference: false,
        })
    }

    fn to_off(&self) -> PyResult<String> {
        write_off(&self.inner).map_err(err)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.complex.vertex_count()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn faces(&self) -> Vec<Vec<usize>> {
        self.inner.complex.faces().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.complex.edges().to_vec()
    }

    #[getter]
    fn coords(&self) -> Vec<Vec<f64>> {
        rows(&self.inner.coords)
    }

    /// `[(eigenvalue, multiplicity, closed form or None), ...]`, descending.
    #[pyo3(signature = (tol = DEFAULT_GROUP_TOL))]
    fn spectrum(&self, tol: f64) -> PyResult<Vec<(f64, usize, Option<String>)>> {
        Ok(self
            .decompose(tol)?
            .groups
            .iter()
            .map(|g| (g.eigenvalue, g.multiplicity, recognize(g.eigenvalue)))
            .collect())
    }

    /// Realization from eigenvalue group `group` (1 = the eigenvalue 1).
    #[pyo3(signature = (group = 2, tol = DEFAULT_GROUP_TOL))]
    fn realize(&self, group: usize, tol: f64) -> PyResult<Self> {
        let d = self.decompose(tol)?;
        let g = group
            .checked_sub(1)
            .and_then(|k| d.groups.get(k))
            .ok_or_else(|| BuffonError::new_err(format!("group {group} out of range 1..={}", d.groups.len())))?;
        Ok(Self {
            inner: realize(g, group, &self.inner.complex).map_err(err)?,
            is_reference: false,
        })
    }

    /// Shape verdicts as a dict; `reference` adds the affine residual
    /// against its coordinates under the identity correspondence.
    #[pyo3(signature = (reference = None))]
    fn shape_report<'py>(&self, py: Python<'py>, reference: Option<&Polyhedron>) -> PyResult<Bound<'py, PyDict>> {
        let id: Vec<usize> = (0..self.vertex_count()).collect();
        let target = reference.map(|r| (&r.inner.coords, id.as_slice()));
        let s = shape_report(&self.inner, target).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("dimension", s.dimension)?;
        d.set_item("star_shaped", s.star_shaped)?;
        d.set_item("convex", s.convex)?;
        d.set_item("faces_planar", s.faces_planar)?;
        d.set_item("max_face_deviation", s.max_face_deviation)?;
        d.set_item("affine_match_residual", s.affine_match_residual)?;
        d.set_item("collapse_dim", s.collapse_dim)?;
        d.set_item("notes", s.notes)?;
        Ok(d)
    }

    /// Per-apex pyramid height ratios of a kis solid.
    fn pyramid_ratios(&self) -> PyResult<Vec<f64>> {
        Ok(pyramid_height_ratio(&self.inner)
            .map_err(err)?
            .ratios
            .into_iter()
            .map(|r| r.1)
            .collect())
    }

    #[pyo3(signature = (budget = DEFAULT_BUDGET))]
    fn automorphism_order(&self, budget: usize) -> PyResult<usize> {
        Ok(automorphisms(&skeleton(&self.inner.complex), budget).map_err(err)?.order)
    }

    /// `(is_planar, is_3_connected, euler_ok)`.
    fn steinitz(&self) -> (bool, bool, bool) {
        let r = validate_complex(&self.inner.complex);
        (r.is_planar, r.is_3_connected, r.euler_ok)
    }

    /// Iterates perturbed coordinates to their limiting shape; returns
    /// `(limit, collapse_dim, steps_used)`.
    #[pyo3(signature = (rng_seed = 0, perturbation = 0.1, max_steps = 100_000, shape_tol = 1e-10))]
    fn iterate(&self, rng_seed: u64, perturbation: f64, max_steps: usize, shape_tol: f64) -> PyResult<(Self, usize, usize)> {
        let x = perturb(&self.inner.coords, perturbation, rng_seed);
        let opts = IterateOptions {
            max_steps,
            shape_tol,
            ..Default::default()
        };
        let out = iterate_to_limit(&x, &skeleton(&self.inner.complex), &opts).map_err(err)?;
        let limit = Realization::new(
            out.limit.coords,
            RealizationSource::Iteration {
                steps: out.steps_used,
                rng_seed: Some(rng_seed),
            },
            self.inner.complex.clone(),
        )
        .map_err(err)?;
        Ok((
            Self {
                inner: limit,
                is_reference: false,
            },
            out.collapse_dim,
            out.steps_used,
        ))
    }

    fn __repr__(&self) -> String {
        format!(
            "Polyhedron(V={}, E={}, F={}, d={}, reference={})",
            self.inner.complex.vertex_count(),
            self.inner.complex.edge_count(),
            self.inner.complex.face_count(),
            self.inner.dimension(),
            self.is_reference
        )
    }
}

/// Eigenvalues `1/2 + 1/2 e^{2πij/n}` of the polygon midpoint map.
#[pyfunction]
fn polygon_spectrum(n: usize) -> PyResult<Vec<Complex64>> {
    Ok(closed_form_spectrum(n).map_err(err)?.eigenvalues)
}

/// Cosine and sine vectors spanning the `k`-th polygram eigenspace.
#[pyfunction]
fn polygram_eigenspace(n: usize, k: usize) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let (c, s) = buffon::dynamics::polygram_eigenspace(n, k).map_err(err)?;
    Ok((c.iter().copied().collect(), s.iter().copied().collect()))
}

#[pymodule]
fn pybuffon(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Polyhedron>()?;
    m.add_function(wrap_pyfunction!(polygon_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(polygram_eigenspace, m)?)?;
    m.add("BuffonError", m.py().get_type::<BuffonError>())?;
    Ok(())
}
