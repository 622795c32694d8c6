//! Python access to the verification engine. Inputs are file paths,
//! catalogue fixture names or JSON text; reports come back as JSON text.

use pyo3::prelude::*;

#[pymodule]
mod pyrootoid {
    use std::path::Path;

    use pyo3::exceptions::PyValueError;
    use pyo3::prelude::*;
    use rootoid::format::{to_pretty, Input};
    use rootoid::pipeline::{main_theorem_pipeline, PipelineOptions};
    use rootoid::sgs::PropertyOptions;
    use rootoid::fixtures as catalogue;
    use rootoid::{search, OrientedMatroid, Sgs};

    fn err(e: impl std::fmt::Display) -> PyErr {
        PyValueError::new_err(e.to_string())
    }

    fn load(source: &str) -> PyResult<Input> {
        if source.trim_start().starts_with('{') {
            return Input::parse(source).map_err(err);
        }
        let path = Path::new(source);
        if path.exists() {
            return Input::read(path).map_err(err);
        }
        catalogue::input(source).map_err(|_| err(format!("no such file or fixture: {source}")))
    }

    fn load_sgs(source: &str) -> PyResult<Sgs> {
        if source.starts_with("cox-") && !Path::new(source).exists() {
            return catalogue::coxeter(source).map_err(err);
        }
        let inp = load(source)?;
        let a = inp.preacycloid().map_err(err)?;
        Sgs::from_preacycloid(&a, inp.loops_plus()).map_err(err)
    }

    /// Names of the built-in fixtures.
    #[pyfunction]
    fn fixtures() -> Vec<&'static str> {
        catalogue::NAMES.to_vec()
    }

    /// Runs the full verification pipeline and returns the verdict as JSON.
    #[pyfunction]
    #[pyo3(signature = (source, sweep = false))]
    fn pipeline(source: &str, sweep: bool) -> PyResult<String> {
        let inp = load(source)?;
        let v = main_theorem_pipeline(&inp, PipelineOptions { hypercontraction_sweep: sweep }).map_err(err)?;
        Ok(to_pretty(&v.to_json()))
    }

    /// Decides the structural properties of the SGS built from `source`.
    #[pyfunction]
    #[pyo3(signature = (source, hereditary = false))]
    fn properties(source: &str, hereditary: bool) -> PyResult<String> {
        let r = load_sgs(source)?;
        Ok(to_pretty(&r.check_properties_with(PropertyOptions { hereditary }).to_json(&r)))
    }

    /// Whether every iterated quasicontraction is an acycloid.
    #[pyfunction]
    fn is_matroidal(source: &str) -> PyResult<bool> {
        let a = load(source)?.preacycloid().map_err(err)?;
        Ok(a.handa_test().is_matroidal)
    }

    /// Closure of a set of root labels in the tope-built oriented matroid.
    #[pyfunction]
    fn closure(source: &str, roots: Vec<String>) -> PyResult<Vec<String>> {
        let a = load(source)?.preacycloid().map_err(err)?;
        let g = a.ground().clone();
        let x = g.parse_list(&roots.join(",")).map_err(err)?;
        Ok(g.names(OrientedMatroid::from_topes(&a).closure(x)))
    }

    /// Per ground size: (pairs, orbits, non-matroidal orbits, disagreements).
    #[pyfunction]
    fn search_nonmatroid(max_pairs: usize) -> PyResult<Vec<(usize, usize, usize, usize)>> {
        let levels = search::search_nonmatroid(max_pairs).map_err(err)?;
        Ok(levels.iter().map(|l| (l.pairs, l.orbits.len(), l.non_matroidal().count(), l.disagreements())).collect())
    }
}
