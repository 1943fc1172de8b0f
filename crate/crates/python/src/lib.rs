//! Python bindings: `StateVector`, `UnitaryMatrix` and the main experiments.
//! Reports come back as plain dicts.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use qspecies::culling::{cull_gap as core_cull_gap, jozsa_clonability_check, make_basis_culler};
use qspecies::hilbert::{entanglement_entropy as core_entropy, inner_product, random_state, random_unitary, tensor};
use qspecies::mutation as mt;
use qspecies::replication::{
    build_prob_clone_machine, clone_gap_with, cyclic_replication_demo, duan_guo_bound as core_bound,
    duan_guo_search as core_search, make_basis_cloner, period_four_qubit_evolution, sample_prob_clone,
    wigner_count as core_wigner, RejectedReference,
};
use qspecies::{CompositeSpace, Error};

create_exception!(qspecies_py, QSpeciesError, PyException);
create_exception!(qspecies_py, ArgumentError, QSpeciesError);
create_exception!(qspecies_py, DimensionError, QSpeciesError);
create_exception!(qspecies_py, CapacityError, QSpeciesError);
create_exception!(qspecies_py, InfeasibleError, QSpeciesError);
create_exception!(qspecies_py, DomainError, QSpeciesError);

fn py_err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Dimension(_) => DimensionError::new_err(msg),
        Error::Capacity { .. } => CapacityError::new_err(msg),
        Error::Infeasible(_) | Error::DegenerateInput(_) | Error::Isometry(_) => InfeasibleError::new_err(msg),
        Error::Domain(_) => DomainError::new_err(msg),
        Error::Argument(_) | Error::NotNormalized(_) | Error::NotUnitary(_) | Error::InvalidDensity(_) => {
            ArgumentError::new_err(msg)
        }
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for qspecies::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

#[pyclass(name = "StateVector", module = "qspecies_py", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyStateVector {
    inner: qspecies::StateVector,
}

#[pymethods]
impl PyStateVector {
    /// Unit-norm amplitudes; pass `normalize=True` to rescale.
    #[new]
    #[pyo3(signature = (amplitudes, normalize = false))]
    fn new(amplitudes: Vec<Complex64>, normalize: bool) -> PyResult<Self> {
        let inner = if normalize {
            qspecies::StateVector::normalized(amplitudes)
        } else {
            qspecies::StateVector::new(amplitudes)
        };
        Ok(Self { inner: inner.py()? })
    }

    #[staticmethod]
    fn basis(dim: usize, k: usize) -> PyResult<Self> {
        Ok(Self {
            inner: qspecies::StateVector::basis(dim, k).py()?,
        })
    }

    #[staticmethod]
    fn uniform(dim: usize) -> PyResult<Self> {
        Ok(Self {
            inner: qspecies::StateVector::uniform(dim).py()?,
        })
    }

    /// Haar-random state.
    #[staticmethod]
    fn random(dim: usize, seed: u64) -> PyResult<Self> {
        if dim == 0 {
            return Err(ArgumentError::new_err("dimension must be at least 1"));
        }
        Ok(Self {
            inner: random_state(dim, seed),
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn amplitudes(&self) -> Vec<Complex64> {
        self.inner.amplitudes().to_vec()
    }

    fn norm(&self) -> f64 {
        self.inner.norm()
    }

    /// `⟨self|other⟩`
    fn inner(&self, other: &PyStateVector) -> PyResult<Complex64> {
        inner_product(&self.inner, &other.inner).py()
    }

    /// `self ⊗ other`
    fn tensor(&self, other: &PyStateVector) -> PyResult<Self> {
        Ok(Self {
            inner: tensor(&self.inner, &other.inner).py()?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.dim()
    }

    fn __repr__(&self) -> String {
        format!("StateVector({:?})", self.inner.amplitudes())
    }
}

#[pyclass(name = "UnitaryMatrix", module = "qspecies_py", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyUnitaryMatrix {
    inner: qspecies::UnitaryMatrix,
}

#[pymethods]
impl PyUnitaryMatrix {
    /// From a list of rows.
    #[new]
    fn new(rows: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(DimensionError::new_err("unitary must be square"));
        }
        Ok(Self {
            inner: qspecies::UnitaryMatrix::new(dim, rows.into_iter().flatten().collect()).py()?,
        })
    }

    #[staticmethod]
    fn identity(dim: usize) -> Self {
        Self {
            inner: qspecies::UnitaryMatrix::identity(dim),
        }
    }

    #[staticmethod]
    fn pauli_x() -> Self {
        Self {
            inner: qspecies::UnitaryMatrix::pauli_x(),
        }
    }

    #[staticmethod]
    fn pauli_z() -> Self {
        Self {
            inner: qspecies::UnitaryMatrix::pauli_z(),
        }
    }

    #[staticmethod]
    fn hadamard() -> Self {
        Self {
            inner: qspecies::UnitaryMatrix::hadamard(),
        }
    }

    /// `exp(−iθY/2)`
    #[staticmethod]
    fn ry(theta: f64) -> Self {
        Self {
            inner: qspecies::UnitaryMatrix::ry(theta),
        }
    }

    /// Haar-random unitary.
    #[staticmethod]
    fn random(dim: usize, seed: u64) -> PyResult<Self> {
        if dim == 0 {
            return Err(ArgumentError::new_err("dimension must be at least 1"));
        }
        Ok(Self {
            inner: random_unitary(dim, seed),
        })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn rows(&self) -> Vec<Vec<Complex64>> {
        self.inner.entries().chunks(self.inner.dim()).map(<[_]>::to_vec).collect()
    }

    fn adjoint(&self) -> Self {
        Self {
            inner: self.inner.adjoint(),
        }
    }

    fn apply(&self, state: &PyStateVector) -> PyResult<PyStateVector> {
        Ok(PyStateVector {
            inner: self.inner.apply(&state.inner).py()?,
        })
    }

    /// `⟨ψ|U|ψ⟩`
    fn expectation(&self, state: &PyStateVector) -> PyResult<Complex64> {
        self.inner.expectation(&state.inner).py()
    }

    fn __repr__(&self) -> String {
        format!("UnitaryMatrix(dim={})", self.inner.dim())
    }
}

#[pyfunction]
fn wigner_count(py: Python<'_>, n: u64, r: u64) -> PyResult<Bound<'_, PyDict>> {
    let c = core_wigner(n, r).py()?;
    let d = PyDict::new(py);
    d.set_item("n", c.n)?;
    d.set_item("r", c.r)?;
    d.set_item("equations", c.equations)?;
    d.set_item("unknowns", c.unknowns)?;
    d.set_item("deficit", c.deficit)?;
    Ok(d)
}

/// Basis cloner with rejected states `rejected` (default: all `|0⟩` of a qubit).
/// `reference` is a basis index or `"best"`.
#[pyfunction]
#[pyo3(signature = (psi, rejected = None, reference = None))]
fn clone_gap<'py>(
    py: Python<'py>,
    psi: &PyStateVector,
    rejected: Option<Vec<PyStateVector>>,
    reference: Option<&Bound<'py, PyAny>>,
) -> PyResult<Bound<'py, PyDict>> {
    let d = psi.inner.dim();
    let rejected: Vec<_> = match rejected {
        Some(v) => v.into_iter().map(|s| s.inner).collect(),
        None => vec![qspecies::StateVector::basis(2, 0).py()?; d],
    };
    let r_dim = rejected.first().map(|r| r.dim()).unwrap_or(1);
    let reference = match reference {
        None => RejectedReference::Index(0),
        Some(obj) => match obj.extract::<usize>() {
            Ok(k) => RejectedReference::Index(k),
            Err(_) if obj.extract::<String>().is_ok_and(|s| s == "best") => RejectedReference::Best,
            Err(_) => return Err(ArgumentError::new_err("reference must be a basis index or \"best\"")),
        },
    };
    let nutrient = qspecies::StateVector::basis(d * r_dim, 0).py()?;
    let cloner = make_basis_cloner(d, nutrient, rejected).py()?;
    let rep = clone_gap_with(&cloner, &psi.inner, &reference).py()?;
    let out = PyDict::new(py);
    out.set_item("fidelity", rep.fidelity)?;
    out.set_item("reduced_purity", rep.reduced_purity)?;
    out.set_item("entropy_bits", rep.entropy_bits)?;
    out.set_item("output_norm", rep.output_norm)?;
    Ok(out)
}

/// Basis culler with blank states `blanks` (default: all `|0⟩`), compared
/// against `|ψ⟩|ideal_blank⟩` (default `blanks[0]`).
#[pyfunction]
#[pyo3(signature = (psi, blanks = None, ideal_blank = None))]
fn cull_gap<'py>(
    py: Python<'py>,
    psi: &PyStateVector,
    blanks: Option<Vec<PyStateVector>>,
    ideal_blank: Option<PyStateVector>,
) -> PyResult<Bound<'py, PyDict>> {
    let d = psi.inner.dim();
    let blanks: Vec<_> = match blanks {
        Some(v) => v.into_iter().map(|s| s.inner).collect(),
        None => vec![qspecies::StateVector::basis(d, 0).py()?; d],
    };
    let ideal = match ideal_blank {
        Some(s) => s.inner,
        None => blanks
            .first()
            .cloned()
            .ok_or_else(|| DimensionError::new_err("no blank states"))?,
    };
    let culler = make_basis_culler(d, qspecies::StateVector::basis(2, 0).py()?, blanks).py()?;
    let rep = core_cull_gap(&culler, &psi.inner, &ideal).py()?;
    let out = PyDict::new(py);
    out.set_item("fidelity_vs_ideal", rep.fidelity_vs_ideal)?;
    out.set_item("diagonal_weight", rep.diagonal_weight)?;
    out.set_item("offdiag_weight", rep.offdiag_weight)?;
    out.set_item("recovery_error", rep.recovery_error)?;
    Ok(out)
}

#[pyfunction]
fn duan_guo_bound(s: f64) -> f64 {
    core_bound(s)
}

#[pyfunction]
fn duan_guo_search<'py>(py: Python<'py>, psi1: &PyStateVector, psi2: &PyStateVector) -> PyResult<Bound<'py, PyDict>> {
    let r = core_search(&psi1.inner, &psi2.inner).py()?;
    let out = PyDict::new(py);
    out.set_item("overlap", r.overlap)?;
    out.set_item("p_max", r.p_max)?;
    out.set_item("rejected_overlap", r.rejected_overlap)?;
    out.set_item("bound", r.bound)?;
    Ok(out)
}

/// Optimal probabilistic cloner for `|0⟩` and `s|0⟩ + √(1−s²)|1⟩`, sampled `trials` times on input 1.
#[pyfunction]
#[pyo3(signature = (s, trials = 100_000, seed = 0))]
fn prob_clone<'py>(py: Python<'py>, s: f64, trials: u64, seed: u64) -> PyResult<Bound<'py, PyDict>> {
    if !(0.0..1.0).contains(&s) {
        return Err(ArgumentError::new_err(format!("s = {s} must lie in [0, 1)")));
    }
    let psi1 = qspecies::StateVector::basis(2, 0).py()?;
    let psi2 = qspecies::StateVector::from_real(&[s, (1.0 - s * s).sqrt()]).py()?;
    let search = core_search(&psi1, &psi2).py()?;
    let machine = build_prob_clone_machine(&psi1, &psi2, search.p_max).py()?;
    let rep = sample_prob_clone(&machine, 1, trials, seed).py()?;
    let out = PyDict::new(py);
    out.set_item("p_max", search.p_max)?;
    out.set_item("bound", search.bound)?;
    out.set_item("gram_preservation_error", machine.gram_preservation_error())?;
    out.set_item("success_branch_error", machine.success_branch_error().py()?)?;
    out.set_item("trials", rep.trials)?;
    out.set_item("successes", rep.successes)?;
    out.set_item("rate", rep.rate)?;
    Ok(out)
}

#[pyfunction]
fn jozsa_check<'py>(
    py: Python<'py>,
    states: Vec<PyStateVector>,
    ancillas: Vec<PyStateVector>,
) -> PyResult<Bound<'py, PyDict>> {
    let states: Vec<_> = states.into_iter().map(|s| s.inner).collect();
    let ancillas: Vec<_> = ancillas.into_iter().map(|s| s.inner).collect();
    let r = jozsa_clonability_check(&states, &ancillas).py()?;
    let out = PyDict::new(py);
    out.set_item("feasible", r.feasible)?;
    out.set_item("max_residual", r.max_residual)?;
    out.set_item("residuals", r.residuals)?;
    out.set_item("clone_error", r.construction.map(|c| c.clone_error))?;
    Ok(out)
}

#[pyfunction]
fn overlap_entangled(s2: f64, m: u64) -> PyResult<f64> {
    mt::overlap_entangled_from_s2(s2, m).py()
}

#[pyfunction]
fn overlap_entangled_brute_force(psi: &PyStateVector, u: &PyUnitaryMatrix, m: u64) -> PyResult<f64> {
    mt::overlap_entangled_brute_force(&psi.inner, &u.inner, m).py()
}

#[pyfunction]
fn mutation_normalization(s2: f64, m: u64) -> PyResult<f64> {
    mt::mutation_normalization(s2, m).py()
}

#[pyfunction]
fn entangled_mutation_state(psi: &PyStateVector, u: &PyUnitaryMatrix, m: u64) -> PyResult<PyStateVector> {
    Ok(PyStateVector {
        inner: mt::entangled_mutation_state(&psi.inner, &u.inner, m).py()?,
    })
}

#[pyfunction]
fn paradox_sweep<'py>(py: Python<'py>, s2: f64, m_values: Vec<u64>) -> PyResult<Vec<Bound<'py, PyDict>>> {
    mt::paradox_sweep_s2(s2, &m_values)
        .py()?
        .into_iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("M", r.m)?;
            d.set_item("s2", r.s2)?;
            d.set_item("overlap_entangled", r.overlap_entangled)?;
            d.set_item("overlap_unentangled", r.overlap_unentangled)?;
            d.set_item("ratio", r.ratio)?;
            d.set_item("normalization", r.normalization)?;
            Ok(d)
        })
        .collect()
}

fn residual_dict(py: Python<'_>, r: mt::EntanglingResidual) -> PyResult<Bound<'_, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("lhs", r.lhs)?;
    d.set_item("rhs", r.rhs)?;
    d.set_item("residual", r.residual)?;
    d.set_item("phase_min_residual", r.phase_min_residual)?;
    d.set_item("norm_psi", r.norm_psi)?;
    d.set_item("norm_phi", r.norm_phi)?;
    d.set_item("cross_term", r.cross_term)?;
    d.set_item("pre_inner", r.pre_inner)?;
    d.set_item("post_inner", r.post_inner)?;
    Ok(d)
}

#[pyfunction]
fn entangling_residual<'py>(
    py: Python<'py>,
    psi: &PyStateVector,
    phi: &PyStateVector,
    u: &PyUnitaryMatrix,
) -> PyResult<Bound<'py, PyDict>> {
    residual_dict(py, mt::entangling_unitarity_residual(&psi.inner, &phi.inner, &u.inner).py()?)
}

#[pyfunction]
fn qubit_orthogonal_example(py: Python<'_>, a: Complex64, b: Complex64) -> PyResult<Bound<'_, PyDict>> {
    residual_dict(py, mt::qubit_orthogonal_example(a, b).py()?)
}

/// Entropy in bits of the reduced state on the factors `part` of a state on `dims`.
#[pyfunction]
fn entanglement_entropy(state: &PyStateVector, dims: Vec<usize>, part: Vec<usize>) -> PyResult<f64> {
    let space = CompositeSpace::new(dims).py()?;
    core_entropy(&state.inner, &space, &part).py()
}

/// Clone fidelity `(t, fidelity)` along the built-in period-4 qubit evolution.
#[pyfunction]
#[pyo3(signature = (steps = 8))]
fn cyclic_demo(steps: u64) -> PyResult<Vec<(u64, f64)>> {
    let cloner = make_basis_cloner(
        2,
        qspecies::StateVector::basis(4, 0).py()?,
        vec![qspecies::StateVector::basis(2, 0).py()?; 2],
    )
    .py()?;
    let psi0 = qspecies::StateVector::basis(2, 0).py()?;
    let pts = cyclic_replication_demo(&period_four_qubit_evolution(), 4, &psi0, &cloner, steps).py()?;
    Ok(pts.into_iter().map(|p| (p.t, p.fidelity)).collect())
}

#[pymodule]
fn qspecies_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("__version__", qspecies::VERSION)?;
    m.add_class::<PyStateVector>()?;
    m.add_class::<PyUnitaryMatrix>()?;
    m.add("QSpeciesError", py.get_type::<QSpeciesError>())?;
    m.add("ArgumentError", py.get_type::<ArgumentError>())?;
    m.add("DimensionError", py.get_type::<DimensionError>())?;
    m.add("CapacityError", py.get_type::<CapacityError>())?;
    m.add("InfeasibleError", py.get_type::<InfeasibleError>())?;
    m.add("DomainError", py.get_type::<DomainError>())?;
    m.add_function(wrap_pyfunction!(wigner_count, m)?)?;
    m.add_function(wrap_pyfunction!(clone_gap, m)?)?;
    m.add_function(wrap_pyfunction!(cull_gap, m)?)?;
    m.add_function(wrap_pyfunction!(duan_guo_bound, m)?)?;
    m.add_function(wrap_pyfunction!(duan_guo_search, m)?)?;
    m.add_function(wrap_pyfunction!(prob_clone, m)?)?;
    m.add_function(wrap_pyfunction!(jozsa_check, m)?)?;
    m.add_function(wrap_pyfunction!(overlap_entangled, m)?)?;
    m.add_function(wrap_pyfunction!(overlap_entangled_brute_force, m)?)?;
    m.add_function(wrap_pyfunction!(mutation_normalization, m)?)?;
    m.add_function(wrap_pyfunction!(entangled_mutation_state, m)?)?;
    m.add_function(wrap_pyfunction!(paradox_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(entangling_residual, m)?)?;
    m.add_function(wrap_pyfunction!(qubit_orthogonal_example, m)?)?;
    m.add_function(wrap_pyfunction!(entanglement_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_demo, m)?)?;
    Ok(())
}
