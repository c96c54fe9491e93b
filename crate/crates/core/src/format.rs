//! Text file formats: matrices, standard-form specs, and reports.
//!
//! All documents are JSON. Floating-point numbers are written with 17
//! significant digits (`{:.16e}`), so values survive a write/read cycle
//! bit-for-bit and identical inputs yield byte-identical documents. Objects
//! are indented one key per line; arrays stay on a single line.

use std::io;
use std::path::Path;

use num_complex::Complex64;
use serde::de::{self, DeserializeOwned};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::ser::Formatter;

use crate::error::FormatError;
use crate::holo::StandardFormSpec;
use crate::matrix::ComplexMatrix;

/// On-disk layout of a matrix: `rows`, `cols`, and row-major `re`/`im` arrays.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&ComplexMatrix> for MatrixDoc {
    fn from(x: &ComplexMatrix) -> Self {
        let (rows, cols) = x.shape();
        let part = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..rows).map(|i| (0..cols).map(|j| f(&x.get(i, j))).collect()).collect()
        };
        MatrixDoc {
            rows,
            cols,
            re: part(|z| z.re),
            im: part(|z| z.im),
        }
    }
}

impl TryFrom<MatrixDoc> for ComplexMatrix {
    type Error = String;

    fn try_from(doc: MatrixDoc) -> Result<Self, String> {
        for (name, part) in [("re", &doc.re), ("im", &doc.im)] {
            if part.len() != doc.rows || part.iter().any(|row| row.len() != doc.cols) {
                return Err(format!("`{name}` must be a {}x{} array", doc.rows, doc.cols));
            }
        }
        let data = doc
            .re
            .iter()
            .flatten()
            .zip(doc.im.iter().flatten())
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect();
        ComplexMatrix::from_vec(doc.rows, doc.cols, data).map_err(|e| e.to_string())
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixDoc::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let doc = MatrixDoc::deserialize(deserializer)?;
        ComplexMatrix::try_from(doc).map_err(de::Error::custom)
    }
}

/// `[re, im]` pairs.
pub fn complex_pairs(values: &[Complex64]) -> Vec<[f64; 2]> {
    values.iter().map(|z| [z.re, z.im]).collect()
}

/// On-disk layout of a [`StandardFormSpec`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDoc {
    pub lambdas: Vec<[f64; 2]>,
    #[serde(rename = "S")]
    pub similarity: ComplexMatrix,
    pub transpose: bool,
    pub radius: f64,
}

impl From<&StandardFormSpec> for SpecDoc {
    fn from(spec: &StandardFormSpec) -> Self {
        SpecDoc {
            lambdas: complex_pairs(spec.lambdas()),
            similarity: spec.similarity().clone(),
            transpose: spec.is_transpose(),
            radius: spec.radius(),
        }
    }
}

impl SpecDoc {
    pub fn into_spec(self) -> Result<StandardFormSpec, FormatError> {
        if !self.similarity.is_square() {
            return Err(FormatError::Invalid {
                field: "S".into(),
                message: "similarity must be square".into(),
            });
        }
        let lambdas = self.lambdas.iter().map(|p| Complex64::new(p[0], p[1])).collect();
        StandardFormSpec::new(lambdas, self.similarity, self.transpose, self.radius).map_err(|e| {
            let field = if matches!(e, crate::error::HoloError::Invalid(_)) { "radius" } else { "S" };
            FormatError::Invalid {
                field: field.into(),
                message: e.to_string(),
            }
        })
    }
}

/// JSON formatter with 17-significant-digit floats.
#[derive(Default)]
pub struct ReportFormatter {
    indent: usize,
    has_value: bool,
}

impl ReportFormatter {
    fn newline<W: ?Sized + io::Write>(&self, writer: &mut W) -> io::Result<()> {
        writer.write_all(b"\n")?;
        for _ in 0..self.indent {
            writer.write_all(b"  ")?;
        }
        Ok(())
    }
}

impl Formatter for ReportFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        if first {
            Ok(())
        } else {
            writer.write_all(b", ")
        }
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.indent += 1;
        self.has_value = false;
        writer.write_all(b"{")
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.indent -= 1;
        if self.has_value {
            self.newline(writer)?;
        }
        writer.write_all(b"}")
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, writer: &mut W, first: bool) -> io::Result<()> {
        if !first {
            writer.write_all(b",")?;
        }
        self.newline(writer)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        writer.write_all(b": ")
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, _writer: &mut W) -> io::Result<()> {
        self.has_value = true;
        Ok(())
    }
}

/// Serializes `value` as a document (trailing newline included).
pub fn to_text<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, ReportFormatter::default());
    value.serialize(&mut ser).expect("in-memory serialization does not fail");
    out.push(b'\n');
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let mut offset = 0;
    for (idx, l) in text.split_inclusive('\n').enumerate() {
        if idx + 1 == line {
            return (offset + column.saturating_sub(1)).min(text.len());
        }
        offset += l.len();
    }
    text.len()
}

/// Parses a document; errors carry the field path and byte offset.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T, FormatError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|err| {
        let path = err.path().to_string();
        let inner = err.inner();
        FormatError::Parse {
            path,
            offset: byte_offset(text, inner.line(), inner.column()),
            message: inner.to_string(),
        }
    })?;
    de.end().map_err(|err| FormatError::Parse {
        path: ".".into(),
        offset: byte_offset(text, err.line(), err.column()),
        message: err.to_string(),
    })?;
    Ok(value)
}

pub fn matrix_to_text(x: &ComplexMatrix) -> String {
    to_text(x)
}

pub fn matrix_from_text(text: &str) -> Result<ComplexMatrix, FormatError> {
    parse(text)
}

pub fn spec_to_text(spec: &StandardFormSpec) -> String {
    to_text(&SpecDoc::from(spec))
}

pub fn spec_from_text(text: &str) -> Result<StandardFormSpec, FormatError> {
    parse::<SpecDoc>(text)?.into_spec()
}

pub fn read_spec(path: &Path) -> Result<StandardFormSpec, FormatError> {
    spec_from_text(&std::fs::read_to_string(path)?)
}

pub fn write_spec(path: &Path, spec: &StandardFormSpec) -> Result<(), FormatError> {
    std::fs::write(path, spec_to_text(spec))?;
    Ok(())
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix, FormatError> {
    matrix_from_text(&std::fs::read_to_string(path)?)
}

pub fn write_matrix(path: &Path, x: &ComplexMatrix) -> Result<(), FormatError> {
    std::fs::write(path, matrix_to_text(x))?;
    Ok(())
}
