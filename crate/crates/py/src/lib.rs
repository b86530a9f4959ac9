//! Python bindings: `import dilworth`.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde::Serialize;
use serde_json::Value;

use dilworth::amoeba::{amoeba_dim_combinatorial, amoeba_dim_numeric, ConjSpaceRep};
use dilworth::counterexamples::{fig1_graph, verify_counterexample1, verify_counterexample2};
use dilworth::geodil::{is_connected_family, verify_section_dilworth, SubspaceFamily};
use dilworth::hadamard::{
    algebraic_matroid_rank_numeric, all_bracketings, conjecture_value, generic_witness,
    nested_upper_bound, pair_matroid_rank, BoundMethod, Bracketing, HadamardInstance,
    LinearSpaceRep,
};
use dilworth::matroids::{pebble_game_rank, MatroidRank};
use dilworth::rng::seeded;
use dilworth::setfunc::{
    dilworth_matroid_rank, dilworth_truncation_witness, TableFunction, DEFAULT_CAP,
};
use dilworth::{ConjMatrix, Matrix, PrimeField, Subset, Subspace, DEFAULT_MODULUS};

fn err(e: dilworth::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field(prime: Option<u64>) -> PyResult<PrimeField> {
    PrimeField::new(prime.unwrap_or(DEFAULT_MODULUS)).map_err(err)
}

fn matrix(f: PrimeField, rows: &[Vec<i64>], cols: Option<usize>) -> PyResult<Matrix> {
    let cols = cols.or_else(|| rows.first().map(Vec::len)).unwrap_or(0);
    Matrix::from_rows_with_cols(f, rows, cols).map_err(err)
}

fn rows_of(m: &Matrix) -> Vec<Vec<i64>> {
    let f = m.field();
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|&x| f.centered(x)).collect())
        .collect()
}

fn subset(elems: Option<Vec<usize>>, ground: usize) -> PyResult<Subset> {
    match elems {
        Some(e) => Subset::try_from_elems(&e, ground).map_err(err),
        None => Ok(Subset::full(ground.min(64))),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_any()
        }
    })
}

fn report<'py, T: Serialize>(py: Python<'py>, r: &T) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(r).map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_py(py, &v)
}

/// Rank of an integer matrix over GF(p).
#[pyfunction]
#[pyo3(signature = (rows, cols=None, prime=None))]
fn matrix_rank(rows: Vec<Vec<i64>>, cols: Option<usize>, prime: Option<u64>) -> PyResult<usize> {
    Ok(matrix(field(prime)?, &rows, cols)?.rank())
}

/// Multigraph on vertices `0..n`.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: Arc<dilworth::matroids::Graph>,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(vertices: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: Arc::new(dilworth::matroids::Graph::new(vertices, edges).map_err(err)?),
        })
    }

    /// The 20-vertex, 56-edge graph of the first counterexample.
    #[staticmethod]
    fn counterexample() -> Self {
        PyGraph {
            inner: Arc::new(fig1_graph()),
        }
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    /// Rank of `edges` (all edges by default) in the (k,l)-count matroid.
    #[pyo3(signature = (k, l, edges=None))]
    fn count_rank(&self, k: usize, l: usize, edges: Option<Vec<usize>>) -> PyResult<usize> {
        let edges = edges.unwrap_or_else(|| (0..self.inner.edge_count()).collect());
        pebble_game_rank(&self.inner, k, l, &edges).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(vertices={}, edges={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// `(f^D(F), partition)` for a set function given by its values on bitmasks.
#[pyfunction]
#[pyo3(signature = (values, subset=None, cap=DEFAULT_CAP))]
fn dilworth_truncation(
    values: Vec<i64>,
    subset: Option<Vec<usize>>,
    cap: usize,
) -> PyResult<(i64, Vec<Vec<usize>>)> {
    let f = table(values)?;
    let set = self::subset(subset, dilworth::SetFunction::ground_size(&f))?;
    let (v, p) = dilworth_truncation_witness(&f, set, cap).map_err(err)?;
    Ok((v, p.blocks().iter().map(|b| b.elems()).collect()))
}

/// Rank of `F` in the matroid induced by a set function given by its values on bitmasks.
#[pyfunction]
#[pyo3(signature = (values, subset=None, cap=DEFAULT_CAP))]
fn induced_matroid_rank(values: Vec<i64>, subset: Option<Vec<usize>>, cap: usize) -> PyResult<i64> {
    let f = table(values)?;
    let set = self::subset(subset, dilworth::SetFunction::ground_size(&f))?;
    dilworth_matroid_rank(&f, set, cap).map_err(err)
}

fn table(values: Vec<i64>) -> PyResult<TableFunction> {
    let n = values.len();
    if !n.is_power_of_two() {
        return Err(PyValueError::new_err(format!(
            "values: length {n} is not a power of two"
        )));
    }
    TableFunction::new(n.trailing_zeros() as usize, values).map_err(err)
}

/// Hadamard product of the column spaces of the given matrices.
#[pyclass(name = "HadamardProduct", frozen)]
struct PyHadamard {
    inner: HadamardInstance,
}

#[pymethods]
impl PyHadamard {
    #[new]
    #[pyo3(signature = (spaces, prime=None))]
    fn new(spaces: Vec<Vec<Vec<i64>>>, prime: Option<u64>) -> PyResult<Self> {
        let f = field(prime)?;
        let factors = spaces
            .iter()
            .map(|rows| matrix(f, rows, None).map(|m| LinearSpaceRep::from_spanning(&m)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(PyHadamard {
            inner: HadamardInstance::new(factors).map_err(err)?,
        })
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.inner
            .factors()
            .iter()
            .map(LinearSpaceRep::dim)
            .collect()
    }

    /// `(rank, per-trial ranks)` from random Jacobians.
    #[pyo3(signature = (subset=None, trials=3, seed=0))]
    fn numeric_rank(
        &self,
        subset: Option<Vec<usize>>,
        trials: usize,
        seed: u64,
    ) -> PyResult<(usize, Vec<usize>)> {
        let elems = self::subset(subset, self.inner.m())?.elems();
        let r = algebraic_matroid_rank_numeric(&self.inner, &elems, trials, &mut seeded(seed))
            .map_err(err)?;
        Ok((r.rank, r.trials))
    }

    /// `(r₁ + r₂ − 1)^MD(F)` for a product of two spaces.
    #[pyo3(signature = (subset=None, cap=DEFAULT_CAP))]
    fn pair_rank(&self, subset: Option<Vec<usize>>, cap: usize) -> PyResult<i64> {
        if self.inner.d() != 2 {
            return Err(PyValueError::new_err("pair_rank needs exactly two spaces"));
        }
        let set = self::subset(subset, self.inner.m())?;
        let r1 = MatroidRank::new(self.inner.factors()[0].row_matroid()).map_err(err)?;
        let r2 = MatroidRank::new(self.inner.factors()[1].row_matroid()).map_err(err)?;
        pair_matroid_rank(&r1, &r2, set, cap).map_err(err)
    }

    /// Nested bound along `grouping` such as "((1,2),3)", or the minimum over all bracketings.
    #[pyo3(signature = (subset=None, grouping=None))]
    fn bound(&self, subset: Option<Vec<usize>>, grouping: Option<&str>) -> PyResult<usize> {
        let elems = self::subset(subset, self.inner.m())?.elems();
        let groupings = match grouping {
            Some(g) => vec![g.parse::<Bracketing>().map_err(err)?],
            None => all_bracketings(self.inner.d()),
        };
        let leaves = self.inner.rank_nodes();
        groupings
            .iter()
            .map(|g| {
                nested_upper_bound(&leaves, &elems, g, BoundMethod::Union, DEFAULT_CAP).map_err(err)
            })
            .try_fold(usize::MAX, |best, r| r.map(|r| best.min(r)))
    }

    /// `(r₁ + … + r_d − (d−1))^MD(F)`.
    #[pyo3(signature = (subset=None))]
    fn conjecture_value(&self, subset: Option<Vec<usize>>) -> PyResult<usize> {
        let elems = self::subset(subset, self.inner.m())?.elems();
        conjecture_value(
            &self.inner.rank_nodes(),
            &elems,
            BoundMethod::Union,
            DEFAULT_CAP,
        )
        .map_err(err)
    }
}

/// 0/1 matrices `Y₁..Y_d` of the given column counts whose concatenation has generic rank.
#[pyfunction]
#[pyo3(signature = (dims, m, prime=None))]
fn generic_witness_matrices(
    dims: Vec<usize>,
    m: usize,
    prime: Option<u64>,
) -> PyResult<Vec<Vec<Vec<i64>>>> {
    let ys = generic_witness(field(prime)?, &dims, m).map_err(err)?;
    Ok(ys.iter().map(rows_of).collect())
}

/// Amoeba dimension of the column space of `re + i·im`, as `(combinatorial, numeric)`.
#[pyfunction]
#[pyo3(signature = (re, im=None, trials=3, seed=0, prime=None))]
fn amoeba_dim(
    re: Vec<Vec<i64>>,
    im: Option<Vec<Vec<i64>>>,
    trials: usize,
    seed: u64,
    prime: Option<u64>,
) -> PyResult<(i64, usize)> {
    let f = field(prime)?;
    let re = matrix(f, &re, None)?;
    let m = match im {
        Some(im) => ConjMatrix::new(re.clone(), matrix(f, &im, Some(re.cols()))?).map_err(err)?,
        None => ConjMatrix::from_real(re),
    };
    let rep = ConjSpaceRep::new(m).map_err(err)?;
    let r = MatroidRank::new(rep.row_matroid()).map_err(err)?;
    let comb = amoeba_dim_combinatorial(&r, DEFAULT_CAP).map_err(err)?;
    let num = amoeba_dim_numeric(&rep, trials, &mut seeded(seed)).map_err(err)?;
    Ok((comb, num.rank))
}

fn family(f: PrimeField, ambient: usize, members: &[Vec<Vec<i64>>]) -> PyResult<SubspaceFamily> {
    let subspaces = members
        .iter()
        .map(|rows| matrix(f, rows, None).map(|m| Subspace::span(&m)))
        .collect::<PyResult<Vec<_>>>()?;
    SubspaceFamily::new(f, ambient, subspaces).map_err(err)
}

/// Compares a random codimension-`codim` section of a subspace family with
/// the truncation formula. Members are given by spanning columns.
#[pyfunction]
#[pyo3(signature = (ambient, members, codim=1, seed=0, prime=None))]
fn section_check<'py>(
    py: Python<'py>,
    ambient: usize,
    members: Vec<Vec<Vec<i64>>>,
    codim: usize,
    seed: u64,
    prime: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let fam = family(field(prime)?, ambient, &members)?;
    let r = verify_section_dilworth(&fam, codim, &mut seeded(seed), DEFAULT_CAP).map_err(err)?;
    report(py, &r)
}

#[pyfunction]
#[pyo3(signature = (ambient, members, prime=None))]
fn is_connected(ambient: usize, members: Vec<Vec<Vec<i64>>>, prime: Option<u64>) -> PyResult<bool> {
    let fam = family(field(prime)?, ambient, &members)?;
    is_connected_family(&fam, DEFAULT_CAP).map_err(err)
}

/// Report of the first counterexample as a dict.
#[pyfunction]
#[pyo3(signature = (seed=0, trials=3))]
fn verify_ce1(py: Python<'_>, seed: u64, trials: usize) -> PyResult<Bound<'_, PyAny>> {
    let r =
        verify_counterexample1(PrimeField::default(), trials, &mut seeded(seed)).map_err(err)?;
    report(py, &r)
}

/// Report of the second counterexample as a dict.
#[pyfunction]
#[pyo3(signature = (seed=0, trials=3))]
fn verify_ce2(py: Python<'_>, seed: u64, trials: usize) -> PyResult<Bound<'_, PyAny>> {
    let r =
        verify_counterexample2(PrimeField::default(), trials, &mut seeded(seed)).map_err(err)?;
    report(py, &r)
}

#[pymodule]
#[pyo3(name = "dilworth")]
fn dilworth_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DEFAULT_MODULUS", DEFAULT_MODULUS)?;
    m.add_class::<PyGraph>()?;
    m.add_class::<PyHadamard>()?;
    m.add_function(wrap_pyfunction!(matrix_rank, m)?)?;
    m.add_function(wrap_pyfunction!(dilworth_truncation, m)?)?;
    m.add_function(wrap_pyfunction!(induced_matroid_rank, m)?)?;
    m.add_function(wrap_pyfunction!(generic_witness_matrices, m)?)?;
    m.add_function(wrap_pyfunction!(amoeba_dim, m)?)?;
    m.add_function(wrap_pyfunction!(section_check, m)?)?;
    m.add_function(wrap_pyfunction!(is_connected, m)?)?;
    m.add_function(wrap_pyfunction!(verify_ce1, m)?)?;
    m.add_function(wrap_pyfunction!(verify_ce2, m)?)?;
    Ok(())
}
