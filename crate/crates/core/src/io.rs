//! JSON file formats.
//!
//! Complex scalars are `[re, im]` pairs. A frame document is
//! `{"ambient_dim": n, "members": [{"weight", "subspace", "operator"}, ...]}`
//! where `subspace` lists basis columns and `operator` lists rows. Writers
//! emit keys in exactly that order and print floats with the shortest
//! representation that parses back to the same bits.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::kernel::{Matrix, Tolerance, Vector};
use crate::model::{CoefficientFamily, GFusionFrame, Member, Subspace};

type Entry = [f64; 2];

#[derive(Serialize)]
struct FrameDoc {
    ambient_dim: usize,
    members: Vec<MemberDoc>,
}

#[derive(Serialize)]
struct MemberDoc {
    weight: f64,
    subspace: Vec<Vec<Entry>>,
    operator: Vec<Vec<Entry>>,
}

#[derive(Serialize)]
struct CoefficientDoc {
    blocks: Vec<Vec<Entry>>,
}

fn entry(z: &Complex64) -> Entry {
    [z.re, z.im]
}

fn rows_of(m: &Matrix) -> Vec<Vec<Entry>> {
    m.row_iter().map(|r| r.iter().map(entry).collect()).collect()
}

fn columns_of(m: &Matrix) -> Vec<Vec<Entry>> {
    m.column_iter().map(|c| c.iter().map(entry).collect()).collect()
}

fn to_bytes<T: Serialize>(doc: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec(doc).expect("finite numeric documents always serialize");
    out.push(b'\n');
    out
}

pub fn serialize_frame(frame: &GFusionFrame) -> Vec<u8> {
    let doc = FrameDoc {
        ambient_dim: frame.ambient_dim(),
        members: frame
            .members()
            .iter()
            .map(|m| MemberDoc {
                weight: m.weight,
                subspace: columns_of(m.subspace.basis()),
                operator: rows_of(&m.operator),
            })
            .collect(),
    };
    to_bytes(&doc)
}

pub fn serialize_matrix(m: &Matrix) -> Vec<u8> {
    to_bytes(&rows_of(m))
}

pub fn serialize_coefficients(coeffs: &CoefficientFamily) -> Vec<u8> {
    let doc = CoefficientDoc {
        blocks: coeffs
            .blocks
            .iter()
            .map(|b| b.iter().map(entry).collect())
            .collect(),
    };
    to_bytes(&doc)
}

fn parse_value(text: &[u8]) -> Result<Value> {
    serde_json::from_slice(text).map_err(|e| Error::parse("$", e.to_string()))
}

fn field<'a>(obj: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    let map = obj
        .as_object()
        .ok_or_else(|| Error::parse(path, "expected an object"))?;
    map.get(key)
        .ok_or_else(|| Error::parse(join(path, key), "missing field"))
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::parse(path, "expected an array"))
}

fn number(v: &Value, path: &str) -> Result<f64> {
    let x = v
        .as_f64()
        .ok_or_else(|| Error::parse(path, "expected a number"))?;
    if !x.is_finite() {
        return Err(Error::parse(path, "number is not finite"));
    }
    Ok(x)
}

fn complex(v: &Value, path: &str) -> Result<Complex64> {
    let pair = array(v, path)?;
    if pair.len() != 2 {
        return Err(Error::parse(path, "complex entry must be [re, im]"));
    }
    Ok(Complex64::new(
        number(&pair[0], &format!("{path}[0]"))?,
        number(&pair[1], &format!("{path}[1]"))?,
    ))
}

fn complex_list(v: &Value, path: &str) -> Result<Vec<Complex64>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, z)| complex(z, &format!("{path}[{i}]")))
        .collect()
}

/// Parses a list of equal-length complex lists; `width` fixes the inner length
/// when known.
fn nested(v: &Value, path: &str, width: Option<usize>) -> Result<Vec<Vec<Complex64>>> {
    let outer = array(v, path)?;
    let mut expected = width;
    let mut out = Vec::with_capacity(outer.len());
    for (i, inner) in outer.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let list = complex_list(inner, &p)?;
        match expected {
            Some(w) if w != list.len() => {
                return Err(Error::parse(
                    p,
                    format!("expected {w} entries, found {}", list.len()),
                ))
            }
            None => expected = Some(list.len()),
            _ => {}
        }
        out.push(list);
    }
    Ok(out)
}

fn matrix_from_rows(rows: &[Vec<Complex64>], ncols: usize) -> Matrix {
    Matrix::from_fn(rows.len(), ncols, |i, j| rows[i][j])
}

fn matrix_from_columns(cols: &[Vec<Complex64>], nrows: usize) -> Matrix {
    Matrix::from_fn(nrows, cols.len(), |i, j| cols[j][i])
}

/// Parses and validates a frame document.
pub fn parse_frame(text: &[u8], tol: &Tolerance) -> Result<GFusionFrame> {
    let doc = parse_value(text)?;
    let n_value = field(&doc, "ambient_dim", "")?;
    let n = n_value
        .as_u64()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::parse("ambient_dim", "expected a positive integer"))?
        as usize;
    let members_value = array(field(&doc, "members", "")?, "members")?;
    let mut members = Vec::with_capacity(members_value.len());
    for (j, mv) in members_value.iter().enumerate() {
        let path = format!("members[{j}]");
        let weight = number(field(mv, "weight", &path)?, &join(&path, "weight"))?;
        let sub_path = join(&path, "subspace");
        let cols = nested(field(mv, "subspace", &path)?, &sub_path, Some(n))?;
        let op_path = join(&path, "operator");
        let rows = nested(field(mv, "operator", &path)?, &op_path, Some(n))?;
        members.push(Member::new(
            Subspace::from_basis(matrix_from_columns(&cols, n)),
            matrix_from_rows(&rows, n),
            weight,
        ));
    }
    GFusionFrame::new(n, members, tol)
}

/// Parses a matrix given as an array of rows.
pub fn parse_matrix(text: &[u8]) -> Result<Matrix> {
    let doc = parse_value(text)?;
    let rows = nested(&doc, "$", None)?;
    let ncols = rows.first().map_or(0, Vec::len);
    Ok(matrix_from_rows(&rows, ncols))
}

pub fn parse_coefficients(text: &[u8]) -> Result<CoefficientFamily> {
    let doc = parse_value(text)?;
    let blocks = array(field(&doc, "blocks", "")?, "blocks")?;
    let blocks = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let entries = complex_list(b, &format!("blocks[{i}]"))?;
            Ok(Vector::from_vec(entries))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoefficientFamily::new(blocks))
}
