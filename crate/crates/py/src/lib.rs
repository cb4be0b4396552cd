//! Python bindings: instances in, solved penalty-family minimizers out.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use dsfm_core::{
    apx_parametric_min_cut, bruteforce_parametric_min, format_rat, generate_instance,
    network_from_json, parse_rat, rational::to_f64, threshold_set, GeneratorParams, Rat,
    ResultJson, SolveOptions, Tau,
};

fn value_err(err: dsfm_core::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn rational(text: &str) -> PyResult<Rat> {
    parse_rat(text).map_err(value_err)
}

#[pyclass(frozen)]
struct Instance {
    inner: dsfm_core::Instance,
}

#[pymethods]
impl Instance {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: dsfm_core::Instance::from_json(text).map_err(value_err)?,
        })
    }

    /// Seeded random instance; same generator the test corpus uses.
    #[staticmethod]
    #[pyo3(signature = (seed, n = 6, functions = 2, max_support = 4, max_value = 8))]
    fn generate(
        seed: u64,
        n: usize,
        functions: usize,
        max_support: usize,
        max_value: i64,
    ) -> PyResult<Self> {
        let params = GeneratorParams {
            n,
            functions,
            max_support: max_support.min(n),
            max_value,
        };
        Ok(Self {
            inner: generate_instance(seed, &params).map_err(value_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn function_count(&self) -> usize {
        self.inner.functions.len()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// Minimize for the whole penalty family at additive accuracy ε.
    fn solve(&self, epsilon: &str) -> PyResult<SolveResult> {
        let eps = rational(epsilon)?;
        let result = self
            .inner
            .solve(&SolveOptions::new(eps))
            .map_err(value_err)?;
        let json = ResultJson::from_result(&result, &self.inner);
        Ok(SolveResult {
            inner: result,
            json,
        })
    }

    /// F_α(A): the instance value of a set at one penalty parameter.
    fn value_at(&self, alpha: &str, set: Vec<usize>) -> PyResult<String> {
        let alpha = rational(alpha)?;
        for &u in &set {
            if u == 0 || u > self.inner.n {
                return Err(PyValueError::new_err(format!(
                    "element {u} outside the ground set"
                )));
            }
        }
        let chosen: std::collections::BTreeSet<usize> = set.into_iter().collect();
        let derivs = self.inner.penalties.deriv_at(&alpha);
        let mut value: Rat = chosen.iter().map(|&u| derivs[u - 1].clone()).sum();
        for f in &self.inner.functions {
            value += Rat::from_integer(f.evaluate(&chosen).into());
        }
        Ok(format_rat(&value))
    }

    /// Exhaustive minimizer of F_α and its value — the cross-check oracle.
    fn brute_force_min(&self, alpha: &str) -> PyResult<(Vec<usize>, String)> {
        let alpha = rational(alpha)?;
        let (set, value) =
            bruteforce_parametric_min(&self.inner.functions, &self.inner.penalties, &alpha, true)
                .map_err(value_err)?;
        Ok((set.into_iter().collect(), format_rat(&value)))
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(n={}, functions={})",
            self.inner.n,
            self.inner.functions.len()
        )
    }
}

#[pyclass(frozen)]
struct SolveResult {
    inner: dsfm_core::SolveResult,
    json: ResultJson,
}

#[pymethods]
impl SolveResult {
    /// Minimizer of the relaxation, as exact rational strings.
    #[getter]
    fn x(&self) -> Vec<String> {
        self.json.x.clone()
    }

    #[getter]
    fn x_float(&self) -> Vec<f64> {
        self.inner.x.iter().map(to_f64).collect()
    }

    #[getter]
    fn y(&self) -> Vec<i64> {
        self.inner.y.clone()
    }

    #[getter]
    fn delta(&self) -> f64 {
        self.inner.delta
    }

    #[getter]
    fn zeta(&self) -> f64 {
        self.inner.zeta
    }

    #[getter]
    fn iterations(&self) -> usize {
        self.inner.iterations
    }

    #[getter]
    fn iteration_cap(&self) -> usize {
        self.inner.iteration_cap
    }

    #[getter]
    fn constant_offset(&self) -> i64 {
        self.inner.constant_offset
    }

    /// Exact dual objectives, one per iterate.
    #[getter]
    fn trace(&self) -> Vec<String> {
        self.json.trace.clone()
    }

    /// Elements whose coordinate is ≥ α: the minimizer of F_α.
    fn threshold(&self, alpha: &str) -> PyResult<Vec<usize>> {
        let alpha = rational(alpha)?;
        Ok(threshold_set(&self.inner.x, &alpha).into_iter().collect())
    }

    fn to_json(&self) -> String {
        self.json.to_json()
    }

    fn __repr__(&self) -> String {
        format!(
            "SolveResult(n={}, iterations={}, delta={:.3e})",
            self.inner.x.len(),
            self.inner.iterations,
            self.inner.delta
        )
    }
}

/// Breakpoints of a network file: (λ list, {vertex: τ}) with "inf" for never.
#[pyfunction]
fn parametric_breakpoints(
    network_json: &str,
    eps: &str,
    lambda_min: &str,
    lambda_max: &str,
) -> PyResult<(Vec<String>, Vec<(usize, String)>)> {
    let net = network_from_json(network_json).map_err(value_err)?;
    let (eps, lo, hi) = (rational(eps)?, rational(lambda_min)?, rational(lambda_max)?);
    let (cut, _) = apx_parametric_min_cut(&net, &lo, &hi, &eps).map_err(value_err)?;
    let lambdas = cut.lambdas.iter().map(format_rat).collect();
    let tau = cut
        .tau
        .iter()
        .map(|(id, t)| {
            let text = match t {
                Tau::At(l) => format_rat(l),
                Tau::Infinite => "inf".into(),
            };
            (*id, text)
        })
        .collect();
    Ok((lambdas, tau))
}

#[pymodule]
fn dsfm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_class::<SolveResult>()?;
    m.add_function(wrap_pyfunction!(parametric_breakpoints, m)?)?;
    Ok(())
}
