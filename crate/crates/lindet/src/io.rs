//! JSON input files for digraphs and matrices.
//!
//! Digraph files look like
//! `{"n": 2, "edges": [{"from": 0, "to": 1, "weight": "2"}]}` and matrix
//! files like `{"rows": [["1", "1/2"], ["a", "-3"]]}`. Weights use the
//! restricted literal grammar: a signed integer, a fraction `p/q`, or a
//! variable name (`x` is reserved). Loading is two-phase so that one
//! invocation can infer a single mode across several files: parse to
//! [`RawDigraph`] / [`RawMatrix`] first, inspect every literal, then
//! build with the committed mode.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::{Matrix, WeightedDigraph};
use crate::ring::{Literal, Mode, Weight};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DigraphFile {
    n: usize,
    edges: Vec<EdgeFile>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeFile {
    from: usize,
    to: usize,
    weight: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixFile {
    rows: Vec<Vec<String>>,
}

/// A digraph file after grammar checks, before mode commitment.
#[derive(Debug, Clone)]
pub struct RawDigraph {
    n: usize,
    edges: Vec<(usize, usize, Literal)>,
}

/// A matrix file after grammar and shape checks, before mode commitment.
#[derive(Debug, Clone)]
pub struct RawMatrix {
    rows: Vec<Vec<Literal>>,
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn read_digraph_file(path: &Path) -> Result<RawDigraph> {
    parse_digraph_json(&read_to_string(path)?)
}

pub fn parse_digraph_json(json: &str) -> Result<RawDigraph> {
    let file: DigraphFile = serde_json::from_str(json)?;
    let mut edges = Vec::with_capacity(file.edges.len());
    for e in &file.edges {
        edges.push((e.from, e.to, Literal::parse(&e.weight)?));
    }
    Ok(RawDigraph { n: file.n, edges })
}

pub fn read_matrix_file(path: &Path) -> Result<RawMatrix> {
    parse_matrix_json(&read_to_string(path)?)
}

pub fn parse_matrix_json(json: &str) -> Result<RawMatrix> {
    let file: MatrixFile = serde_json::from_str(json)?;
    if file.rows.is_empty() {
        return Err(Error::InvalidInput("matrix file has no rows".into()));
    }
    let width = file.rows[0].len();
    if width == 0 {
        return Err(Error::InvalidInput("matrix file has an empty row".into()));
    }
    let mut rows = Vec::with_capacity(file.rows.len());
    for r in &file.rows {
        if r.len() != width {
            return Err(Error::DimensionMismatch(format!(
                "ragged matrix file: row of length {} after width {width}",
                r.len()
            )));
        }
        rows.push(r.iter().map(|s| Literal::parse(s)).collect::<Result<Vec<_>>>()?);
    }
    Ok(RawMatrix { rows })
}

impl RawDigraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.edges.iter().map(|(_, _, lit)| lit)
    }

    pub fn build(&self, mode: Mode) -> Result<WeightedDigraph> {
        let mut g = WeightedDigraph::new(self.n, mode);
        for (from, to, lit) in &self.edges {
            g.add_edge(*from, *to, lit.to_weight(mode)?)?;
        }
        Ok(g)
    }

    pub fn infer_and_build(&self) -> Result<WeightedDigraph> {
        self.build(Literal::infer_mode(self.literals()))
    }
}

impl RawMatrix {
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.rows.iter().flatten()
    }

    pub fn build(&self, mode: Mode) -> Result<Matrix> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|lit| lit.to_weight(mode)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }

    pub fn infer_and_build(&self) -> Result<Matrix> {
        self.build(Literal::infer_mode(self.literals()))
    }

    /// Reads the file as a column vector: either a single column, or a
    /// single row taken transposed.
    pub fn build_column(&self, mode: Mode) -> Result<Vec<Weight>> {
        let m = self.build(mode)?;
        if m.cols() == 1 {
            Ok((0..m.rows()).map(|i| m.get(i, 0).clone()).collect())
        } else if m.rows() == 1 {
            Ok((0..m.cols()).map(|j| m.get(0, j).clone()).collect())
        } else {
            Err(Error::InvalidInput(format!(
                "vector file must be a single column or a single row, got {}x{}",
                m.rows(),
                m.cols()
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn write_temp(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn digraph_round_trip() {
        let f = write_temp(
            r#"{"n": 2, "edges": [
                {"from": 0, "to": 1, "weight": "2"},
                {"from": 1, "to": 0, "weight": "-1/3"}
            ]}"#,
        );
        let raw = read_digraph_file(f.path()).unwrap();
        assert_eq!(raw.n(), 2);
        assert_eq!(Literal::infer_mode(raw.literals()), Mode::Rational);
        let g = raw.infer_and_build().unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 2);
        let a = g.adjacency_matrix();
        assert_eq!(a.get(0, 1).to_string(), "2");
        assert_eq!(a.get(1, 0).to_string(), "-1/3");
    }

    #[test]
    fn symbolic_digraph_infers_mode() {
        let f = write_temp(r#"{"n": 1, "edges": [{"from": 0, "to": 0, "weight": "w"}]}"#);
        let g = read_digraph_file(f.path()).unwrap().infer_and_build().unwrap();
        assert_eq!(g.mode(), Mode::Symbolic);
    }

    #[test]
    fn unknown_fields_and_bad_shapes_are_rejected() {
        let f = write_temp(r#"{"n": 1, "edges": [], "extra": 1}"#);
        assert_eq!(read_digraph_file(f.path()).unwrap_err().exit_code(), 2);
        let f = write_temp(r#"{"rows": []}"#);
        assert_eq!(read_matrix_file(f.path()).unwrap_err().exit_code(), 2);
        let f = write_temp(r#"{"rows": [["1", "2"], ["3"]]}"#);
        assert!(matches!(
            read_matrix_file(f.path()).unwrap_err(),
            Error::DimensionMismatch(_)
        ));
        let f = write_temp(r#"{"rows": [["x"]]}"#);
        assert!(matches!(
            read_matrix_file(f.path()).unwrap_err(),
            Error::ReservedVariable
        ));
        assert!(matches!(
            read_matrix_file(Path::new("/nonexistent/q.json")).unwrap_err(),
            Error::Io(_)
        ));
        let f = write_temp(r#"{"n": 2, "edges": [{"from": 0, "to": 5, "weight": "1"}]}"#);
        let err = read_digraph_file(f.path()).unwrap().infer_and_build().unwrap_err();
        assert!(matches!(err, Error::VertexOutOfRange { .. }));
    }

    #[test]
    fn matrix_and_column_vectors() {
        let f = write_temp(r#"{"rows": [["1", "2"], ["3", "4"]]}"#);
        let m = read_matrix_file(f.path()).unwrap().infer_and_build().unwrap();
        assert_eq!(m.det().unwrap().to_string(), "-2");

        let col = write_temp(r#"{"rows": [["5"], ["6"]]}"#);
        let v = read_matrix_file(col.path())
            .unwrap()
            .build_column(Mode::Rational)
            .unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v[1].to_string(), "6");

        let row = write_temp(r#"{"rows": [["5", "6"]]}"#);
        let v2 = read_matrix_file(row.path())
            .unwrap()
            .build_column(Mode::Rational)
            .unwrap();
        assert_eq!(v, v2);

        let square = write_temp(r#"{"rows": [["1", "2"], ["3", "4"]]}"#);
        assert!(read_matrix_file(square.path())
            .unwrap()
            .build_column(Mode::Rational)
            .is_err());
    }

    #[test]
    fn joint_mode_inference_spans_files() {
        // A symbolic matrix forces the whole invocation symbolic, so a
        // fraction in the companion vector is rejected rather than the
        // two files silently computing in different rings.
        let a = write_temp(r#"{"rows": [["a", "0"], ["0", "1"]]}"#);
        let b = write_temp(r#"{"rows": [["1/2"], ["1"]]}"#);
        let ra = read_matrix_file(a.path()).unwrap();
        let rb = read_matrix_file(b.path()).unwrap();
        let mode = Literal::infer_mode(ra.literals().chain(rb.literals()));
        assert_eq!(mode, Mode::Symbolic);
        assert!(ra.build(mode).is_ok());
        assert_eq!(rb.build_column(mode).unwrap_err().exit_code(), 2);
    }
}
