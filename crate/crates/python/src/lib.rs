//! Python bindings: the stage transforms, the dictionary, and the container
//! pipeline.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use bwca::dictionary as dict;
use bwca::pipeline::{self, DEFAULT_BLOCK_SIZE};
use bwca::transforms::{self, BwtBlock};
use bwca::{bench, Container, Method, PipelineSpec};

create_exception!(pybwca, BwcaError, PyException);

fn to_py(err: bwca::Error) -> PyErr {
    BwcaError::new_err(err.to_string())
}

#[pyfunction]
fn bwt_forward(block: &[u8]) -> PyResult<(Vec<u8>, usize)> {
    let out = transforms::bwt_forward(block).map_err(to_py)?;
    Ok((out.data, out.primary_index))
}

#[pyfunction]
fn bwt_inverse(data: Vec<u8>, primary_index: usize) -> PyResult<Vec<u8>> {
    transforms::bwt_inverse(&BwtBlock {
        data,
        primary_index,
    })
    .map_err(to_py)
}

#[pyfunction]
fn mtf_encode(data: &[u8]) -> Vec<u8> {
    transforms::mtf_encode(data)
}

#[pyfunction]
fn mtf_decode(data: &[u8]) -> Vec<u8> {
    transforms::mtf_decode(data)
}

#[pyfunction]
fn rle_encode(data: &[u8]) -> Vec<u8> {
    transforms::rle_encode(data)
}

#[pyfunction]
fn rle_decode(data: &[u8]) -> PyResult<Vec<u8>> {
    transforms::rle_decode(data).map_err(to_py)
}

#[pyfunction]
fn huffman_encode(data: &[u8]) -> Vec<u8> {
    transforms::huffman_encode(data)
}

#[pyfunction]
fn huffman_decode(payload: &[u8]) -> PyResult<Vec<u8>> {
    transforms::huffman_decode(payload).map_err(to_py)
}

#[pyfunction]
fn codeword_for_index(index: usize) -> String {
    dict::codeword_for_index(index)
}

/// Space saving in percent, `(original - compressed) / original`, rounded half-up to two decimals.
#[pyfunction]
fn compression_ratio(original: u64, compressed: u64) -> PyResult<f64> {
    bench::compression_ratio(original, compressed)
        .map(bench::CompressionRatio::percent)
        .map_err(to_py)
}

/// An immutable word dictionary.
#[pyclass(name = "Dictionary", frozen)]
struct PyDictionary {
    inner: dict::Dictionary,
}

#[pymethods]
impl PyDictionary {
    #[staticmethod]
    #[pyo3(signature = (corpora, capacity = dict::DEFAULT_CAPACITY))]
    fn build(corpora: Vec<Vec<u8>>, capacity: usize) -> Self {
        PyDictionary {
            inner: dict::build_dictionary(&corpora, capacity),
        }
    }

    #[staticmethod]
    fn from_bytes(data: &[u8]) -> PyResult<Self> {
        dict::Dictionary::from_bytes(data)
            .map(|inner| PyDictionary { inner })
            .map_err(to_py)
    }

    fn to_bytes(&self) -> Vec<u8> {
        self.inner.to_bytes()
    }

    #[getter]
    fn fingerprint(&self) -> u64 {
        self.inner.fingerprint()
    }

    #[getter]
    fn capacity(&self) -> usize {
        self.inner.capacity()
    }

    /// `(word, frequency)` pairs in dictionary order.
    fn entries(&self) -> Vec<(String, u64)> {
        self.inner
            .entries()
            .iter()
            .map(|e| (e.word.clone(), e.frequency))
            .collect()
    }

    fn codeword(&self, word: &str) -> Option<String> {
        self.inner.codeword(word).map(str::to_string)
    }

    /// Returns the transformed text and the unknown words with their counts.
    fn encode(&self, text: &[u8]) -> (Vec<u8>, Vec<(String, u64)>) {
        let enc = dict::dict_encode(text, &self.inner);
        (enc.transformed, enc.unknown.entries().to_vec())
    }

    fn decode(&self, data: &[u8]) -> PyResult<Vec<u8>> {
        dict::dict_decode(data, &self.inner).map_err(to_py)
    }

    /// A new dictionary with the given `(word, count)` pairs merged in.
    fn update(&self, unknown: Vec<(String, u64)>) -> Self {
        let mut log = dict::UnknownWordLog::new();
        for (word, count) in &unknown {
            log.record(word, *count);
        }
        PyDictionary {
            inner: dict::update_dictionary(&self.inner, &log),
        }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Dictionary(entries={}, fingerprint=0x{:016x})",
            self.inner.len(),
            self.inner.fingerprint()
        )
    }
}

fn parse_method(name: &str) -> PyResult<Method> {
    name.parse::<Method>().map_err(to_py)
}

/// Compresses `data` into container bytes.
#[pyfunction]
#[pyo3(signature = (data, method = "bwca", block_size = DEFAULT_BLOCK_SIZE, dictionary = None))]
fn compress(
    py: Python<'_>,
    data: Vec<u8>,
    method: &str,
    block_size: u16,
    dictionary: Option<&PyDictionary>,
) -> PyResult<Vec<u8>> {
    let spec = PipelineSpec::new(parse_method(method)?, block_size).map_err(to_py)?;
    let d = dictionary.map(|d| d.inner.clone());
    py.detach(|| pipeline::compress(&data, &spec, d.as_ref()).map(|c| c.to_bytes()))
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (data, dictionary = None))]
fn decompress(py: Python<'_>, data: Vec<u8>, dictionary: Option<&PyDictionary>) -> PyResult<Vec<u8>> {
    let d = dictionary.map(|d| d.inner.clone());
    py.detach(|| {
        let container = Container::parse(&data)?;
        pipeline::decompress(&container, d.as_ref())
    })
    .map_err(to_py)
}

/// Stage names of a pipeline, e.g. `["BWT", "MTF", "RLE", "HUF"]`.
#[pyfunction]
fn stages(method: &str) -> PyResult<Vec<&'static str>> {
    use bwca::pipeline::Stage;
    Ok(parse_method(method)?
        .stages()
        .iter()
        .map(|s| match s {
            Stage::Dictionary => "DICT",
            Stage::Bwt => "BWT",
            Stage::Mtf => "MTF",
            Stage::Rle => "RLE",
            Stage::Huffman => "HUF",
        })
        .collect())
}

#[pymodule]
pub fn pybwca(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(bwt_forward, m)?)?;
    m.add_function(wrap_pyfunction!(bwt_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(mtf_encode, m)?)?;
    m.add_function(wrap_pyfunction!(mtf_decode, m)?)?;
    m.add_function(wrap_pyfunction!(rle_encode, m)?)?;
    m.add_function(wrap_pyfunction!(rle_decode, m)?)?;
    m.add_function(wrap_pyfunction!(huffman_encode, m)?)?;
    m.add_function(wrap_pyfunction!(huffman_decode, m)?)?;
    m.add_function(wrap_pyfunction!(codeword_for_index, m)?)?;
    m.add_function(wrap_pyfunction!(compression_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(compress, m)?)?;
    m.add_function(wrap_pyfunction!(decompress, m)?)?;
    m.add_function(wrap_pyfunction!(stages, m)?)?;
    m.add_class::<PyDictionary>()?;
    m.add("BwcaError", m.py().get_type::<BwcaError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
