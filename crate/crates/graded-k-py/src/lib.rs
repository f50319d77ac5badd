//! Python bindings. Graphs, shifted matrix algebras, and dimension triples
//! come through as classes; shift-equivalence tooling and graded-field
//! K-theory as module functions. Matrices cross the boundary as lists of
//! lists of ints, elements and invariants as their text forms.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use graded_k::abelian::{FgAbGroup, GroupElement, SubgroupPresentation};
use graded_k::dimension::{self, DimensionTriple, PositivityResult, SseChain, SseStep};
use graded_k::error::KError;
use graded_k::graph::{self, GraphTag, SplitPartition};
use graded_k::graphk;
use graded_k::linalg::IntMatrix;
use graded_k::shiftalg::{self, ShiftedMatrixAlgebra};

fn kerr(e: KError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_matrix(rows: Vec<Vec<BigInt>>) -> PyResult<IntMatrix> {
    let nrows = rows.len();
    let ncols = rows.first().map(Vec::len).unwrap_or(0);
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(PyValueError::new_err("matrix rows have unequal lengths"));
    }
    IntMatrix::new(nrows, ncols, rows.into_iter().flatten().collect()).map_err(kerr)
}

fn from_matrix(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

type PyChain = Vec<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)>;

fn to_chain(steps: PyChain) -> PyResult<SseChain> {
    let mut out = Vec::new();
    for (r, s) in steps {
        out.push(SseStep { r: to_matrix(r)?, s: to_matrix(s)? });
    }
    Ok(SseChain { steps: out })
}

fn from_chain(chain: &SseChain) -> PyChain {
    chain.steps.iter().map(|st| (from_matrix(&st.r), from_matrix(&st.s))).collect()
}

/// Finite directed multigraph, constructed from the `v <name>` /
/// `e <name> <src> <dst>` text format.
#[pyclass(frozen)]
struct Graph {
    inner: graph::Graph,
}

#[pymethods]
impl Graph {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Graph { inner: graph::Graph::parse(text).map_err(kerr)? })
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().to_vec()
    }

    #[getter]
    fn n_vertices(&self) -> usize {
        self.inner.n_vertices()
    }

    #[getter]
    fn n_edges(&self) -> usize {
        self.inner.n_edges()
    }

    fn has_sinks(&self) -> bool {
        self.inner.has_sinks()
    }

    fn has_sources(&self) -> bool {
        self.inner.has_sources()
    }

    fn sinks(&self) -> Vec<String> {
        self.inner.sinks().into_iter().map(|v| self.inner.vertices()[v].clone()).collect()
    }

    fn adjacency(&self) -> Vec<Vec<BigInt>> {
        from_matrix(&self.inner.adjacency())
    }

    /// "acyclic", "comet", or "general".
    fn classify(&self) -> String {
        match graph::classify(&self.inner).tag {
            GraphTag::Acyclic => "acyclic".to_string(),
            GraphTag::Comet { .. } => "comet".to_string(),
            GraphTag::Other => "general".to_string(),
        }
    }

    fn out_split_singleton(&self) -> PyResult<Graph> {
        let p = SplitPartition::singleton_out(&self.inner);
        Ok(Graph { inner: graph::out_split(&self.inner, &p).map_err(kerr)? })
    }

    fn in_split_singleton(&self) -> PyResult<Graph> {
        let p = SplitPartition::singleton_in(&self.inner);
        Ok(Graph { inner: graph::in_split(&self.inner, &p).map_err(kerr)? })
    }

    /// K0 of the Leavitt path algebra, as display text.
    fn k0(&self) -> PyResult<String> {
        Ok(graphk::k0_lpa(&self.inner).map_err(kerr)?.to_string())
    }

    /// (free rank, torsion orders) of the K0 group.
    fn k0_group(&self) -> PyResult<(usize, Vec<BigInt>)> {
        match graphk::k0_lpa(&self.inner).map_err(kerr)? {
            graphk::KInvariant::AbGroupPresentation { group, .. } => {
                Ok((group.free_rank(), group.torsion().to_vec()))
            }
            other => Err(PyValueError::new_err(format!("unexpected invariant: {}", other))),
        }
    }

    /// Graded K0 of the Leavitt path algebra, as display text.
    fn k0gr(&self) -> PyResult<String> {
        Ok(graphk::k0gr_lpa(&self.inner).map_err(kerr)?.to_string())
    }

    /// Graded K0 of the path algebra, as display text.
    fn k0gr_path_algebra(&self) -> String {
        graphk::k0gr_path_algebra(&self.inner).to_string()
    }

    /// Closed structural form of the Leavitt path algebra, as display text.
    fn lpa_structure(&self) -> String {
        graphk::lpa_structure(&self.inner).to_string()
    }

    fn strongly_graded(&self) -> bool {
        graphk::lpa_strongly_graded(&self.inner)
    }

    fn crossed_product(&self) -> PyResult<bool> {
        graphk::lpa_crossed_product(&self.inner).map_err(kerr)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Graph({} vertices, {} edges)", self.inner.n_vertices(), self.inner.n_edges())
    }
}

/// Shifted matrix algebra over a graded division ring, constructed from a
/// literal like "M5(K)(0,1,1,2,2)" or "M3(K[x^2,x^-2])(0,1,1)".
#[pyclass(frozen)]
struct Algebra {
    inner: ShiftedMatrixAlgebra,
}

#[pymethods]
impl Algebra {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Algebra { inner: ShiftedMatrixAlgebra::parse(text).map_err(kerr)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    /// Block sizes of the degree-zero component, in coset order.
    fn blocks(&self) -> PyResult<Vec<usize>> {
        shiftalg::zero_component_blocks(&self.inner).map_err(kerr)
    }

    fn component_dim(&self, degree: Vec<BigInt>) -> PyResult<usize> {
        let lambda = self.grade_element(degree)?;
        shiftalg::component_dim(&self.inner, &lambda).map_err(kerr)
    }

    fn strongly_graded(&self) -> PyResult<bool> {
        shiftalg::is_strongly_graded(&self.inner).map_err(kerr)
    }

    fn crossed_product(&self) -> PyResult<bool> {
        shiftalg::is_crossed_product(&self.inner).map_err(kerr)
    }

    fn invertible_in_degree(&self, degree: Vec<BigInt>) -> PyResult<bool> {
        let lambda = self.grade_element(degree)?;
        shiftalg::has_invertible_of_degree(&self.inner, &lambda).map_err(kerr)
    }

    /// Witness text "pi=[..] sigma=(..) taus=[..]" if graded isomorphic,
    /// None otherwise.
    fn graded_iso(&self, other: &Algebra) -> PyResult<Option<String>> {
        Ok(shiftalg::graded_iso(&self.inner, &other.inner)
            .map_err(kerr)?
            .map(|w| w.to_string()))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Algebra(\"{}\")", self.inner)
    }
}

impl Algebra {
    fn grade_element(&self, coords: Vec<BigInt>) -> PyResult<GroupElement> {
        self.inner.base().grade_group().element(coords).map_err(kerr)
    }
}

/// Dimension triple of a square nonnegative integer matrix. Elements are
/// literals like "(1,-1)@0".
#[pyclass(frozen)]
struct Triple {
    inner: DimensionTriple,
}

#[pymethods]
impl Triple {
    #[new]
    fn new(matrix: Vec<Vec<BigInt>>) -> PyResult<Self> {
        Ok(Triple { inner: DimensionTriple::new(to_matrix(matrix)?).map_err(kerr)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn matrix(&self) -> Vec<Vec<BigInt>> {
        from_matrix(self.inner.matrix())
    }

    fn order_unit(&self) -> String {
        dimension::order_unit(&self.inner).to_string()
    }

    fn equal(&self, x: &str, y: &str) -> PyResult<bool> {
        let (x, y) = (self.parse(x)?, self.parse(y)?);
        dimension::dm_equal(&self.inner, &x, &y).map_err(kerr)
    }

    fn add(&self, x: &str, y: &str) -> PyResult<String> {
        let (x, y) = (self.parse(x)?, self.parse(y)?);
        Ok(dimension::dm_add(&self.inner, &x, &y).map_err(kerr)?.to_string())
    }

    fn shift(&self, x: &str) -> PyResult<String> {
        let x = self.parse(x)?;
        Ok(dimension::dm_shift(&self.inner, &x).map_err(kerr)?.to_string())
    }

    fn unshift(&self, x: &str) -> PyResult<String> {
        let x = self.parse(x)?;
        Ok(dimension::dm_unshift(&self.inner, &x).map_err(kerr)?.to_string())
    }

    /// ("positive", witness exponent), ("zero", None),
    /// ("not_positive", None), or ("unknown", exhausted bound).
    #[pyo3(signature = (x, bound=None))]
    fn positive(&self, x: &str, bound: Option<u64>) -> PyResult<(String, Option<u64>)> {
        let x = self.parse(x)?;
        let bound = bound.unwrap_or_else(|| dimension::default_positivity_bound(self.inner.n()));
        Ok(match dimension::dm_positive(&self.inner, &x, bound).map_err(kerr)? {
            PositivityResult::Positive(t) => ("positive".to_string(), Some(t)),
            PositivityResult::Zero => ("zero".to_string(), None),
            PositivityResult::NotPositive(_) => ("not_positive".to_string(), None),
            PositivityResult::Unknown(b) => ("unknown".to_string(), Some(b)),
        })
    }

    /// The finitely generated group presented by the shift relations, as
    /// display text.
    fn unit_quotient(&self) -> String {
        dimension::shift_relation_quotient(&self.inner).to_string()
    }

    fn __repr__(&self) -> String {
        format!("Triple(order {})", self.inner.n())
    }
}

impl Triple {
    fn parse(&self, text: &str) -> PyResult<dimension::DmElement> {
        self.inner.parse_element(text).map_err(kerr)
    }
}

/// True when (r, s) is a lag-l shift-equivalence witness between a and b.
#[pyfunction]
fn se_verify(
    a: Vec<Vec<BigInt>>,
    b: Vec<Vec<BigInt>>,
    r: Vec<Vec<BigInt>>,
    s: Vec<Vec<BigInt>>,
    lag: u64,
) -> PyResult<bool> {
    dimension::verify_se_witness(&to_matrix(a)?, &to_matrix(b)?, &to_matrix(r)?, &to_matrix(s)?, lag)
        .map_err(kerr)
}

/// True when the chain of (r, s) steps is a strong-shift-equivalence
/// from a to b.
#[pyfunction]
fn sse_verify(
    a: Vec<Vec<BigInt>>,
    b: Vec<Vec<BigInt>>,
    chain: PyChain,
) -> PyResult<bool> {
    dimension::verify_sse_chain(&to_matrix(a)?, &to_matrix(b)?, &to_chain(chain)?).map_err(kerr)
}

/// Bounded search for a strong-shift-equivalence chain; a list of (r, s)
/// steps if one is found within the bounds, None otherwise.
#[pyfunction]
#[pyo3(signature = (a, b, max_inner_dim=3, max_entry=1, max_depth=3))]
fn sse_search(
    a: Vec<Vec<BigInt>>,
    b: Vec<Vec<BigInt>>,
    max_inner_dim: usize,
    max_entry: u64,
    max_depth: usize,
) -> PyResult<Option<PyChain>> {
    let found = dimension::sse_search(&to_matrix(a)?, &to_matrix(b)?, max_inner_dim, max_entry, max_depth)
        .map_err(kerr)?;
    Ok(found.as_ref().map(from_chain))
}

/// A text description of a computable obstruction to shift equivalence,
/// or None when the invariants here do not separate a and b.
#[pyfunction]
fn se_refute(a: Vec<Vec<BigInt>>, b: Vec<Vec<BigInt>>) -> PyResult<Option<String>> {
    Ok(dimension::se_refute(&to_matrix(a)?, &to_matrix(b)?)
        .map_err(kerr)?
        .map(|r| r.to_string()))
}

fn parse_support(group: &str, subgroup: &str) -> PyResult<(FgAbGroup, SubgroupPresentation)> {
    let g = FgAbGroup::parse(group).map_err(kerr)?;
    let mut gens = Vec::new();
    for part in subgroup.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        gens.push(g.parse_element(part).map_err(kerr)?);
    }
    let sub = SubgroupPresentation::new(g.clone(), gens).map_err(kerr)?;
    Ok((g, sub))
}

/// Graded K0 of a graded division ring (or graded local ring when
/// local=True) with the given grade group and support subgroup, as
/// display text. Subgroup generators are ';'-joined element literals.
#[pyfunction]
#[pyo3(signature = (group, subgroup, local=false))]
fn gfield_k0gr(group: &str, subgroup: &str, local: bool) -> PyResult<String> {
    let (g, sub) = parse_support(group, subgroup)?;
    let inv = if local {
        graphk::k0gr_graded_local(&g, &sub).map_err(kerr)?
    } else {
        graphk::k0gr_graded_field(&g, &sub).map_err(kerr)?
    };
    Ok(inv.to_string())
}

/// Graded Picard group of a graded division ring, as display text.
#[pyfunction]
fn gfield_pic(group: &str, subgroup: &str) -> PyResult<String> {
    let (g, sub) = parse_support(group, subgroup)?;
    Ok(graphk::picgr_graded_field(&g, &sub).map_err(kerr)?.to_string())
}

#[pymodule]
fn graded_k_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<Algebra>()?;
    m.add_class::<Triple>()?;
    m.add_function(wrap_pyfunction!(se_verify, m)?)?;
    m.add_function(wrap_pyfunction!(sse_verify, m)?)?;
    m.add_function(wrap_pyfunction!(sse_search, m)?)?;
    m.add_function(wrap_pyfunction!(se_refute, m)?)?;
    m.add_function(wrap_pyfunction!(gfield_k0gr, m)?)?;
    m.add_function(wrap_pyfunction!(gfield_pic, m)?)?;
    Ok(())
}
