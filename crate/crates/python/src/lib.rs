//! Python bindings: rings, modules, representations of `A_{n+1}`, the mesh
//! tables and the certificate-producing checks.

use derivk_core::meshcat::{build_dn, build_mesh, MeshCategory, Obj};
use derivk_core::modcat::{stable_hom, FgModule};
use derivk_core::quiverrep::{decompose, ext1, hom_dim, QuiverRep};
use derivk_core::ringlin::{Matrix, RingSpec};
use derivk_core::scat::{self, Certificate};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: derivk_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A ring `F_p`, `F_p[ε]/ε²` or `Z/p²`.
#[pyclass(name = "Ring", frozen, eq, from_py_object)]
#[derive(Clone, Copy, PartialEq)]
pub struct PyRing {
    pub inner: RingSpec,
}

#[pymethods]
impl PyRing {
    /// `kind` is one of "fp", "fp-eps", "zp2".
    #[new]
    fn new(kind: &str, p: u32) -> PyResult<Self> {
        let inner = match kind {
            "fp" => RingSpec::field(p),
            "fp-eps" => RingSpec::fp_eps(p),
            "zp2" => RingSpec::zp2(p),
            _ => return Err(PyValueError::new_err(format!("unknown ring kind {kind:?}"))),
        }
        .map_err(err)?;
        Ok(PyRing { inner })
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p
    }

    #[getter]
    fn kind(&self) -> String {
        scat::ring_name(self.inner)
    }

    #[getter]
    fn size(&self) -> u32 {
        self.inner.size()
    }

    fn is_field(&self) -> bool {
        self.inner.is_field()
    }

    fn residue_field(&self) -> PyRing {
        PyRing { inner: self.inner.residue_field() }
    }

    fn __repr__(&self) -> String {
        format!("Ring({:?}, {})", self.kind(), self.inner.p)
    }
}

/// The module `R^free ⊕ k^residue`.
#[pyclass(name = "Module", frozen, eq, from_py_object)]
#[derive(Clone, Copy, PartialEq)]
pub struct PyModule_ {
    pub inner: FgModule,
}

#[pymethods]
impl PyModule_ {
    #[new]
    fn new(ring: PyRing, free: usize, residue: usize) -> PyResult<Self> {
        Ok(PyModule_ { inner: FgModule::new(ring.inner, free, residue).map_err(err)? })
    }

    #[getter]
    fn free(&self) -> usize {
        self.inner.free
    }

    #[getter]
    fn residue(&self) -> usize {
        self.inner.residue
    }

    fn is_projective(&self) -> bool {
        self.inner.is_projective()
    }

    /// Dimension over `k` of the stable hom space to `other`.
    fn stable_hom_dim(&self, other: &PyModule_) -> PyResult<u32> {
        Ok(stable_hom(&self.inner, &other.inner).map_err(err)?.dim)
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

/// A representation `V_0 -> ... -> V_n` of the linear quiver over a field.
#[pyclass(name = "QuiverRep", frozen)]
pub struct PyQuiverRep {
    pub inner: QuiverRep,
}

#[pymethods]
impl PyQuiverRep {
    /// `maps[t]` is the matrix of `V_t -> V_{t+1}` as a list of rows.
    #[new]
    fn new(field: PyRing, dims: Vec<usize>, maps: Vec<Vec<Vec<u32>>>) -> PyResult<Self> {
        let k = field.inner;
        if dims.len() != maps.len() + 1 {
            return Err(PyValueError::new_err("need one more dimension than maps"));
        }
        let mats = maps
            .iter()
            .enumerate()
            .map(|(t, rows)| {
                if rows.is_empty() {
                    Matrix::zeros(k, dims[t + 1], dims[t])
                } else {
                    let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&x| x % k.size()).collect()).collect();
                    Matrix::from_rows(k, &rows)
                }
            })
            .collect();
        Ok(PyQuiverRep { inner: QuiverRep::new(k, dims, mats).map_err(err)? })
    }

    /// The interval summands `(i, j)`, sorted.
    fn decompose(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = decompose(&self.inner).into_iter().map(|m| (m.i, m.j)).collect();
        v.sort_unstable();
        v
    }

    fn hom_dim(&self, other: &PyQuiverRep) -> PyResult<usize> {
        hom_dim(&self.inner, &other.inner).map_err(err)
    }

    fn ext1(&self, other: &PyQuiverRep) -> PyResult<usize> {
        ext1(&self.inner, &other.inner).map_err(err)
    }
}

/// The outcome of a check, with its JSON form in `to_json()`.
#[pyclass(name = "Certificate", frozen)]
pub struct PyCertificate {
    pub inner: Certificate,
}

#[pymethods]
impl PyCertificate {
    #[getter]
    fn check(&self) -> String {
        self.inner.check.clone()
    }

    #[getter]
    fn passed(&self) -> bool {
        self.inner.passed()
    }

    #[getter]
    fn witnesses(&self) -> Vec<String> {
        self.inner.witnesses.clone()
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.inner.notes.clone()
    }

    fn table(&self, name: &str) -> Option<Vec<Vec<i64>>> {
        self.inner.tables.get(name).cloned()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __repr__(&self) -> String {
        format!("Certificate({:?}, passed={})", self.inner.check, self.inner.passed())
    }
}

fn cert(r: derivk_core::Result<Certificate>) -> PyResult<PyCertificate> {
    r.map(|inner| PyCertificate { inner }).map_err(err)
}

fn interval_table(n: usize, f: impl Fn((usize, usize), (usize, usize)) -> usize) -> Vec<Vec<usize>> {
    let pts: Vec<(usize, usize)> = MeshCategory::objects(n)
        .into_iter()
        .map(|o| match o {
            Obj::Pt(i, j) => (i, j),
            Obj::Zero => unreachable!("mesh objects are points"),
        })
        .collect();
    pts.iter().map(|&a| pts.iter().map(|&b| f(a, b)).collect()).collect()
}

/// Hom dimensions of the mesh category at `n`, rows and columns in the
/// order `(0,0), (0,1), ..., (n,n)`.
#[pyfunction]
fn mesh_hom_table(p: u32, n: usize) -> PyResult<Vec<Vec<usize>>> {
    let mesh = build_mesh(n, RingSpec::field(p).map_err(err)?);
    Ok(interval_table(n, |a, b| mesh.cat.dim(mesh.idx(a.0, a.1), mesh.idx(b.0, b.1))))
}

/// Dimensions of the bimodule `D_n`, ordered as in `mesh_hom_table`.
#[pyfunction]
fn ext_table(p: u32, n: usize) -> PyResult<Vec<Vec<usize>>> {
    let mesh = build_mesh(n, RingSpec::field(p).map_err(err)?);
    let d = build_dn(&mesh);
    Ok(interval_table(n, |a, b| d.dim(mesh.idx(a.0, a.1), mesh.idx(b.0, b.1))))
}

#[pyfunction]
fn verify_iso1(ring: PyRing, n: usize) -> PyResult<PyCertificate> {
    cert(scat::verify_iso1(ring.inner, n))
}

#[pyfunction]
#[pyo3(signature = (ring, n, cap = 3))]
fn verify_iso2(ring: PyRing, n: usize, cap: u32) -> PyResult<PyCertificate> {
    cert(scat::verify_iso2(ring.inner, n, cap))
}

#[pyfunction]
#[pyo3(signature = (p, n, cap = 3))]
fn independence(p: u32, n: usize, cap: u32) -> PyResult<PyCertificate> {
    cert(scat::independence_check(p, n, cap))
}

#[pyfunction]
#[pyo3(signature = (ring, cap = 3))]
fn k0(ring: PyRing, cap: usize) -> PyResult<PyCertificate> {
    cert(scat::k0_check(ring.inner, cap))
}

#[pyfunction]
#[pyo3(signature = (ring, cap = 3))]
fn remark(ring: PyRing, cap: u32) -> PyResult<PyCertificate> {
    cert(scat::verify_remark(ring.inner, cap))
}

#[pyfunction]
fn b_family(p: u32, n: usize) -> PyResult<PyCertificate> {
    cert(scat::b_family_check(RingSpec::field(p).map_err(err)?, n))
}

/// Runs the command line with `args` (without the program name) and
/// returns the exit code and the output.
#[pyfunction]
fn run(args: Vec<String>) -> (i32, String) {
    derivk_core::cli::run(std::iter::once("derivk".to_string()).chain(args))
}

#[pymodule]
#[pyo3(name = "derivk")]
fn derivk_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRing>()?;
    m.add_class::<PyModule_>()?;
    m.add_class::<PyQuiverRep>()?;
    m.add_class::<PyCertificate>()?;
    m.add_function(wrap_pyfunction!(mesh_hom_table, m)?)?;
    m.add_function(wrap_pyfunction!(ext_table, m)?)?;
    m.add_function(wrap_pyfunction!(verify_iso1, m)?)?;
    m.add_function(wrap_pyfunction!(verify_iso2, m)?)?;
    m.add_function(wrap_pyfunction!(independence, m)?)?;
    m.add_function(wrap_pyfunction!(k0, m)?)?;
    m.add_function(wrap_pyfunction!(remark, m)?)?;
    m.add_function(wrap_pyfunction!(b_family, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    Ok(())
}

/// Registers the module so an embedded interpreter can `import derivk`.
pub fn register_embedded() {
    pyo3::append_to_inittab!(derivk_module);
}
