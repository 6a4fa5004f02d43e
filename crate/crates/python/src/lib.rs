//! Python bindings: graphs, square-free powers, Betti tables, invariants,
//! formula predictions and the verification harness.

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;

use sqfpow::formulas::{self, Invariant};
use sqfpow::graphs::{
    admissible_matching_number, induced_matching_number, matching_number, parse_edge_list,
};
use sqfpow::harness::{self, Conjecture, FamilyRanges, IdentityConfig, KSelection, SweepOptions};
use sqfpow::homalg;
use sqfpow::ideals::{edge_ideal, sqf_power};
use sqfpow::simplicial::{reduced_homology, FieldSpec, SimplicialComplex};
use sqfpow::{BettiTable, Error, Family, Graph, SqfIdeal};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io(msg) => PyOSError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn field(characteristic: u32) -> PyResult<FieldSpec> {
    FieldSpec::new(characteristic).map_err(py_err)
}

/// Parses JSON text into Python objects.
fn json_to_py<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

fn mask_of(vars: &[usize]) -> u64 {
    vars.iter().fold(0, |m, &v| m | (1u64 << v))
}

#[pyclass(name = "Graph", module = "sqfpow", from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    /// Graph on vertices `0..n` with the given edges.
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: Graph::from_edges(n, &edges).map_err(py_err)?,
        })
    }

    /// Named family member such as `"cycle:7"` or `"mwpath:1,2,1"`.
    #[staticmethod]
    fn family(descriptor: &str) -> PyResult<Self> {
        let f = Family::parse(descriptor).map_err(py_err)?;
        Ok(PyGraph {
            inner: f.graph().map_err(py_err)?,
        })
    }

    /// Edge-list text: one `u v` pair per line, `#` comments.
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: parse_edge_list(text).map_err(py_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn matching_number(&self) -> usize {
        matching_number(&self.inner)
    }

    fn induced_matching_number(&self) -> usize {
        induced_matching_number(&self.inner)
    }

    /// Largest size of a k-admissible matching.
    fn admissible_matching_number(&self, k: usize) -> PyResult<usize> {
        Ok(admissible_matching_number(&self.inner, k).map_err(py_err)?.0)
    }

    fn is_forest(&self) -> bool {
        self.inner.is_forest()
    }

    fn is_chordal(&self) -> bool {
        self.inner.is_chordal()
    }

    fn is_co_chordal(&self) -> bool {
        self.inner.is_co_chordal()
    }

    fn edge_ideal(&self) -> PyIdeal {
        PyIdeal {
            inner: edge_ideal(&self.inner),
        }
    }

    /// `I(G)^[k]`.
    fn sqf_power(&self, k: usize) -> PyIdeal {
        PyIdeal {
            inner: sqf_power(&self.inner, k),
        }
    }

    fn __repr__(&self) -> String {
        format!("Graph({}, {:?})", self.inner.n(), self.inner.edges())
    }
}

#[pyclass(name = "Ideal", module = "sqfpow", eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyIdeal {
    inner: SqfIdeal,
}

#[pymethods]
impl PyIdeal {
    /// Square-free monomial ideal in `n` variables; each generator is a list
    /// of variable indices.
    #[new]
    fn new(n: usize, gens: Vec<Vec<usize>>) -> PyResult<Self> {
        if gens.iter().flatten().any(|&v| v >= n) {
            return Err(PyValueError::new_err("variable index outside the ring"));
        }
        let masks = gens.iter().map(|g| mask_of(g)).collect();
        Ok(PyIdeal {
            inner: SqfIdeal::from_masks(n, masks).map_err(py_err)?,
        })
    }

    #[getter]
    fn ambient(&self) -> usize {
        self.inner.ambient()
    }

    /// Minimal generators as sorted index lists.
    #[getter]
    fn gens(&self) -> Vec<Vec<usize>> {
        self.inner.generators().iter().map(|g| g.vars()).collect()
    }

    fn num_generators(&self) -> usize {
        self.inner.num_generators()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_unit(&self) -> bool {
        self.inner.is_unit()
    }

    fn add(&self, other: &PyIdeal) -> PyResult<PyIdeal> {
        Ok(PyIdeal {
            inner: self.inner.add(&other.inner).map_err(py_err)?,
        })
    }

    /// `(I : m)` for the square-free monomial on `vars`.
    fn colon(&self, vars: Vec<usize>) -> PyResult<PyIdeal> {
        if vars.iter().any(|&v| v >= self.inner.ambient()) {
            return Err(PyValueError::new_err("variable index outside the ring"));
        }
        Ok(PyIdeal {
            inner: self.inner.colon_mask(mask_of(&vars)).map_err(py_err)?,
        })
    }

    /// Graded Betti table of `I` by `route`: `hochster`, `facet` or `taylor`.
    #[pyo3(signature = (characteristic = FieldSpec::DEFAULT_PRIME, route = "hochster"))]
    fn betti(&self, characteristic: u32, route: &str) -> PyResult<PyBettiTable> {
        let f = field(characteristic)?;
        let table = match route {
            "hochster" => homalg::betti_hochster(&self.inner, f),
            "facet" => homalg::betti_facet_formula(&self.inner, f),
            "taylor" => homalg::betti_taylor_oracle(&self.inner, f),
            other => return Err(PyValueError::new_err(format!("unknown route '{other}'"))),
        };
        Ok(PyBettiTable {
            inner: table.map_err(py_err)?,
        })
    }

    #[pyo3(signature = (characteristic = FieldSpec::DEFAULT_PRIME))]
    fn regularity(&self, characteristic: u32) -> PyResult<usize> {
        homalg::regularity(&self.inner, field(characteristic)?).map_err(py_err)
    }

    /// `depth(R/I)`.
    #[pyo3(signature = (characteristic = FieldSpec::DEFAULT_PRIME))]
    fn depth(&self, characteristic: u32) -> PyResult<usize> {
        homalg::depth_quotient(&self.inner, field(characteristic)?).map_err(py_err)
    }

    /// `pd(R/I)`.
    #[pyo3(signature = (characteristic = FieldSpec::DEFAULT_PRIME))]
    fn projective_dimension(&self, characteristic: u32) -> PyResult<usize> {
        homalg::pd_quotient(&self.inner, field(characteristic)?).map_err(py_err)
    }

    /// Krull dimension of `R/I`.
    fn krull_dimension(&self) -> PyResult<usize> {
        homalg::krull_dim_quotient(&self.inner).map_err(py_err)
    }

    #[pyo3(signature = (characteristic = FieldSpec::DEFAULT_PRIME))]
    fn is_cohen_macaulay(&self, characteristic: u32) -> PyResult<bool> {
        homalg::is_cohen_macaulay(&self.inner, field(characteristic)?).map_err(py_err)
    }

    #[pyo3(signature = (characteristic = FieldSpec::DEFAULT_PRIME))]
    fn has_linear_resolution(&self, characteristic: u32) -> PyResult<bool> {
        homalg::has_linear_resolution(&self.inner, field(characteristic)?).map_err(py_err)
    }

    /// All invariants at once, as a dict.
    #[pyo3(signature = (characteristic = FieldSpec::DEFAULT_PRIME))]
    fn invariants<'py>(&self, py: Python<'py>, characteristic: u32) -> PyResult<Bound<'py, PyAny>> {
        let (bundle, _) = homalg::InvariantBundle::compute(&self.inner, field(characteristic)?).map_err(py_err)?;
        let text = serde_json::to_string(&bundle).map_err(|e| PyValueError::new_err(e.to_string()))?;
        json_to_py(py, &text)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyclass(name = "BettiTable", module = "sqfpow", eq)]
#[derive(PartialEq)]
struct PyBettiTable {
    inner: BettiTable,
}

#[pymethods]
impl PyBettiTable {
    fn get(&self, i: usize, j: usize) -> usize {
        self.inner.get(i, j)
    }

    /// Nonzero entries `(i, j, beta)`.
    fn entries(&self) -> Vec<(usize, usize, usize)> {
        self.inner.entries().collect()
    }

    fn regularity(&self) -> Option<usize> {
        self.inner.regularity()
    }

    fn projective_dimension(&self) -> Option<usize> {
        self.inner.projective_dimension()
    }

    fn diagram(&self) -> String {
        self.inner.diagram()
    }

    fn to_csv(&self) -> String {
        self.inner.to_csv()
    }

    fn __repr__(&self) -> String {
        self.inner.diagram()
    }
}

/// Reduced homology dimensions of the complex with the given facets
/// (lists of vertex indices).
#[pyfunction]
#[pyo3(signature = (facets, characteristic = FieldSpec::DEFAULT_PRIME))]
fn reduced_homology_dims(facets: Vec<Vec<usize>>, characteristic: u32) -> PyResult<Vec<usize>> {
    if facets.iter().flatten().any(|&v| v >= 64) {
        return Err(PyValueError::new_err("vertex index above 63"));
    }
    let masks: Vec<u64> = facets.iter().map(|f| mask_of(f)).collect();
    let vertices = masks.iter().fold(0, |a, &m| a | m);
    let complex = SimplicialComplex::from_facets(vertices, masks).map_err(py_err)?;
    Ok(reduced_homology(&complex, field(characteristic)?).map_err(py_err)?.dims)
}

/// Every applicable prediction for `invariant` (`reg`, `depth`, `cm`,
/// `linear`) of the family member at `k`, as dicts.
#[pyfunction]
fn predict<'py>(py: Python<'py>, invariant: &str, family: &str, k: usize) -> PyResult<Bound<'py, PyAny>> {
    let inv: Invariant = invariant.parse().map_err(py_err)?;
    let fam = Family::parse(family).map_err(py_err)?;
    let preds = formulas::predict(inv, &fam, k).map_err(py_err)?;
    let text = serde_json::to_string(&preds).map_err(|e| PyValueError::new_err(e.to_string()))?;
    json_to_py(py, &text)
}

fn range_arg(s: Option<&str>) -> PyResult<Option<std::ops::RangeInclusive<usize>>> {
    s.map(harness::parse_range).transpose().map_err(py_err)
}

/// Verification sweep over a family; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (family, n = None, m = None, r = None, max_tree_vertices = None, k = None,
                    invariants = None, characteristic = FieldSpec::DEFAULT_PRIME))]
#[allow(clippy::too_many_arguments)]
fn verify<'py>(
    py: Python<'py>,
    family: &str,
    n: Option<&str>,
    m: Option<&str>,
    r: Option<&str>,
    max_tree_vertices: Option<usize>,
    k: Option<Vec<usize>>,
    invariants: Option<Vec<String>>,
    characteristic: u32,
) -> PyResult<Bound<'py, PyAny>> {
    let ranges = FamilyRanges {
        n: range_arg(n)?,
        m: range_arg(m)?,
        r: range_arg(r)?,
        max_tree_vertices,
    };
    let families = harness::family_set(family, &ranges).map_err(py_err)?;
    let ks = k.map_or(KSelection::All, KSelection::Only);
    let invs = match invariants {
        None => Invariant::ALL.to_vec(),
        Some(v) => v.iter().map(|s| s.parse()).collect::<Result<_, _>>().map_err(py_err)?,
    };
    let opts = SweepOptions {
        field: field(characteristic)?,
        ..SweepOptions::default()
    };
    let report = py
        .detach(|| harness::verify(family, &families, &ks, &invs, &opts, None))
        .map_err(py_err)?;
    json_to_py(py, &report.to_json())
}

/// Conjecture scan (`cycle-depth`, `wcycle-reg`, `wcycle-depth`); returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (conjecture, range = None, characteristic = FieldSpec::DEFAULT_PRIME))]
fn scan<'py>(py: Python<'py>, conjecture: &str, range: Option<&str>, characteristic: u32) -> PyResult<Bound<'py, PyAny>> {
    let conj: Conjecture = conjecture.parse().map_err(py_err)?;
    let range = range_arg(range)?.unwrap_or_else(|| conj.default_range());
    let opts = SweepOptions {
        field: field(characteristic)?,
        ..SweepOptions::default()
    };
    let report = py.detach(|| harness::scan(conj, range, &opts, None)).map_err(py_err)?;
    json_to_py(py, &report.to_json())
}

/// Randomized identity suite; returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (trials = 200, seed = 1, max_vertices = 10))]
fn identities<'py>(py: Python<'py>, trials: usize, seed: u64, max_vertices: usize) -> PyResult<Bound<'py, PyAny>> {
    let cfg = IdentityConfig {
        trials,
        seed,
        max_vertices,
        ..IdentityConfig::default()
    };
    let report = py
        .detach(|| harness::run_identities(&harness::Identity::ALL, &cfg))
        .map_err(py_err)?;
    json_to_py(py, &report.to_json())
}

#[pymodule]
#[pyo3(name = "sqfpow")]
fn sqfpow_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyIdeal>()?;
    m.add_class::<PyBettiTable>()?;
    m.add_function(wrap_pyfunction!(reduced_homology_dims, m)?)?;
    m.add_function(wrap_pyfunction!(predict, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    m.add_function(wrap_pyfunction!(identities, m)?)?;
    Ok(())
}
