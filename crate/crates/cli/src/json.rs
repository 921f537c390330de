//! The JSON matrix format, CliffordRep bundles, and CSV / pretty renderings.
//!
//! `{"ring": "...", "rows": n, "cols": m, "data": [...]}` with `data` row-major
//! (flat or as a list of rows). Rational entries are strings "p/q"; complex
//! entries are [re, im]; quaternion entries are [w, x, y, z]; float64 entries
//! are numbers; sqrt2 entries are {"a": "p/q", "b": "p/q"} for a + b√2.

use cliffspin_core::any::AnyMatrix;
use cliffspin_core::clifford::{CliffordRep, InvolutionForm};
use cliffspin_core::spin_catalog::AnyEntry;
use cliffspin_core::{Complex, Matrix, QSqrt2, Quaternion, RealScalar, Ring, Scalar, Q};
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Syntax(String),
    #[error("missing or invalid field `{0}`")]
    Field(&'static str),
    #[error("unknown ring `{0}`")]
    UnknownRing(String),
    #[error("entry {index}: {reason}")]
    Entry { index: usize, reason: String },
    #[error("expected {expected} entries, found {found}")]
    Length { expected: usize, found: usize },
}

fn parse_ring(name: &str) -> Result<Ring, FormatError> {
    Ok(match name {
        "rational" => Ring::Rational,
        "sqrt2" => Ring::RationalSqrt2,
        "complex" => Ring::Complex,
        "quaternion" => Ring::Quaternion,
        "float64" => Ring::Float64,
        other => return Err(FormatError::UnknownRing(other.to_string())),
    })
}

fn rational(v: &Value) -> Result<Q, String> {
    match v {
        Value::String(s) => s
            .trim()
            .parse::<Q>()
            .map_err(|_| format!("`{s}` is not a rational p/q")),
        Value::Number(n) => n
            .as_i64()
            .map(<Q as Scalar>::from_i64)
            .ok_or_else(|| format!("{n} is not an integer; use \"p/q\"")),
        other => Err(format!("expected a rational string, found {other}")),
    }
}

fn components<const N: usize>(v: &Value) -> Result<[Q; N], String> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == N)
        .ok_or_else(|| format!("expected an array of {N} rationals"))?;
    let parts: Vec<Q> = arr.iter().map(rational).collect::<Result<_, _>>()?;
    Ok(parts.try_into().expect("length checked"))
}

fn flatten(data: &Value, rows: usize, cols: usize, ring: Ring) -> Result<Vec<Value>, FormatError> {
    let arr = data.as_array().ok_or(FormatError::Field("data"))?;
    // entries of complex and quaternion matrices are arrays themselves
    let entry_is_array = matches!(ring, Ring::Complex | Ring::Quaternion);
    let nested = arr
        .first()
        .and_then(Value::as_array)
        .is_some_and(|first| !entry_is_array || first.first().is_some_and(Value::is_array));
    let flat: Vec<Value> = if nested {
        let mut flat = Vec::with_capacity(rows * cols);
        for row in arr {
            let row = row
                .as_array()
                .filter(|r| r.len() == cols)
                .ok_or(FormatError::Length {
                    expected: cols,
                    found: row.as_array().map_or(0, Vec::len),
                })?;
            flat.extend(row.iter().cloned());
        }
        if arr.len() != rows {
            return Err(FormatError::Length {
                expected: rows,
                found: arr.len(),
            });
        }
        flat
    } else {
        arr.clone()
    };
    if flat.len() != rows * cols {
        return Err(FormatError::Length {
            expected: rows * cols,
            found: flat.len(),
        });
    }
    Ok(flat)
}

pub fn matrix_from_value(v: &Value) -> Result<AnyMatrix, FormatError> {
    let ring = parse_ring(
        v.get("ring")
            .and_then(Value::as_str)
            .ok_or(FormatError::Field("ring"))?,
    )?;
    let dim = |k: &'static str| {
        v.get(k)
            .and_then(Value::as_u64)
            .map(|n| n as usize)
            .ok_or(FormatError::Field(k))
    };
    let (rows, cols) = (dim("rows")?, dim("cols")?);
    let flat = flatten(
        v.get("data").ok_or(FormatError::Field("data"))?,
        rows,
        cols,
        ring,
    )?;
    let entry_err = |index: usize| move |reason: String| FormatError::Entry { index, reason };
    Ok(match ring {
        Ring::Rational => AnyMatrix::Rational(build(
            rows,
            cols,
            flat.iter()
                .enumerate()
                .map(|(i, e)| rational(e).map_err(entry_err(i)))
                .collect::<Result<_, _>>()?,
        )?),
        Ring::Complex => AnyMatrix::Complex(build(
            rows,
            cols,
            flat.iter()
                .enumerate()
                .map(|(i, e)| {
                    components::<2>(e)
                        .map(|[re, im]| Complex::new(re, im))
                        .map_err(entry_err(i))
                })
                .collect::<Result<_, _>>()?,
        )?),
        Ring::Quaternion => AnyMatrix::Quaternion(build(
            rows,
            cols,
            flat.iter()
                .enumerate()
                .map(|(i, e)| {
                    components::<4>(e)
                        .map(|[w, x, y, z]| Quaternion::new(w, x, y, z))
                        .map_err(entry_err(i))
                })
                .collect::<Result<_, _>>()?,
        )?),
        Ring::Float64 => AnyMatrix::Float64(build(
            rows,
            cols,
            flat.iter()
                .enumerate()
                .map(|(i, e)| {
                    e.as_f64()
                        .filter(|x| x.is_finite())
                        .ok_or_else(|| entry_err(i)("expected a finite number".into()))
                })
                .collect::<Result<_, _>>()?,
        )?),
        Ring::RationalSqrt2 => AnyMatrix::RationalSqrt2(build(
            rows,
            cols,
            flat.iter()
                .enumerate()
                .map(|(i, e)| {
                    let part = |k: &str| {
                        e.get(k)
                            .ok_or_else(|| format!("missing `{k}`"))
                            .and_then(rational)
                    };
                    part("a")
                        .and_then(|a| part("b").map(|b| QSqrt2::new(a, b)))
                        .map_err(entry_err(i))
                })
                .collect::<Result<_, _>>()?,
        )?),
        other => return Err(FormatError::UnknownRing(other.name().to_string())),
    })
}

fn build<T: Scalar>(rows: usize, cols: usize, data: Vec<T>) -> Result<Matrix<T>, FormatError> {
    Matrix::new(rows, cols, data).map_err(|e| FormatError::Syntax(e.to_string()))
}

pub fn parse_matrix(text: &str) -> Result<AnyMatrix, FormatError> {
    let v: Value = serde_json::from_str(text).map_err(|e| FormatError::Syntax(e.to_string()))?;
    matrix_from_value(&v)
}

fn q_str(q: &Q) -> Value {
    Value::String(q.to_string())
}

fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

/// Entry encodings; with `as_float`, exact entries are rendered as numbers.
pub fn entry_values(m: &AnyMatrix, as_float: bool) -> Vec<Value> {
    let q = |x: &Q| {
        if as_float {
            float(x.to_f64())
        } else {
            q_str(x)
        }
    };
    match m {
        AnyMatrix::Rational(m) => m.data().iter().map(q).collect(),
        AnyMatrix::Complex(m) => m
            .data()
            .iter()
            .map(|z| json!([q(&z.re), q(&z.im)]))
            .collect(),
        AnyMatrix::Quaternion(m) => m
            .data()
            .iter()
            .map(|h| json!([q(&h.w), q(&h.x), q(&h.y), q(&h.z)]))
            .collect(),
        AnyMatrix::Float64(m) => m.data().iter().map(|x| float(*x)).collect(),
        AnyMatrix::RationalSqrt2(m) => {
            if as_float {
                m.data()
                    .iter()
                    .map(|v| float(v.a.to_f64() + v.b.to_f64() * std::f64::consts::SQRT_2))
                    .collect()
            } else {
                m.data()
                    .iter()
                    .map(|v| json!({"a": q_str(&v.a), "b": q_str(&v.b)}))
                    .collect()
            }
        }
    }
}

pub fn matrix_to_value(m: &AnyMatrix) -> Value {
    let (rows, cols) = m.shape();
    json!({"ring": m.ring().name(), "rows": rows, "cols": cols, "data": entry_values(m, false)})
}

/// Float rendering keeps the ring name of the float counterpart.
pub fn matrix_to_value_float(m: &AnyMatrix) -> Value {
    let (rows, cols) = m.shape();
    let ring = match m.ring() {
        Ring::Complex => "complex_float64",
        Ring::Quaternion => "quaternion_float64",
        _ => "float64",
    };
    json!({"ring": ring, "rows": rows, "cols": cols, "data": entry_values(m, true)})
}

pub fn render_matrix(m: &AnyMatrix, as_float: bool) -> Value {
    if as_float {
        matrix_to_value_float(m)
    } else {
        matrix_to_value(m)
    }
}

fn entry_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(parts) => parts.iter().map(entry_text).collect::<Vec<_>>().join(" "),
        Value::Object(o) => format!("{}+{}*sqrt2", entry_text(&o["a"]), entry_text(&o["b"])),
        other => other.to_string(),
    }
}

/// One CSV line per row. Complex and quaternion entries are space-separated components.
pub fn matrix_csv(m: &AnyMatrix, as_float: bool) -> String {
    let (_, cols) = m.shape();
    let cells: Vec<String> = entry_values(m, as_float).iter().map(entry_text).collect();
    let mut out = String::new();
    for row in cells.chunks(cols.max(1)) {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn matrix_pretty(m: &AnyMatrix, as_float: bool) -> String {
    let (_, cols) = m.shape();
    let cells: Vec<String> = entry_values(m, as_float).iter().map(entry_text).collect();
    let width = cells.iter().map(String::len).max().unwrap_or(1);
    let mut out = format!("{} {}x{}\n", m.ring().name(), m.shape().0, cols);
    for row in cells.chunks(cols.max(1)) {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str("  [ ");
        out.push_str(&line.join("  "));
        out.push_str(" ]\n");
    }
    out
}

fn form_value<T: Scalar>(f: &InvolutionForm<T>, wrap: &dyn Fn(&Matrix<T>) -> AnyMatrix) -> Value {
    json!({"base_op": f.base_op().name(), "conjugator": matrix_to_value(&wrap(f.conjugator()))})
}

pub fn rep_value<T: Scalar>(rep: &CliffordRep<T>, wrap: &dyn Fn(&Matrix<T>) -> AnyMatrix) -> Value {
    json!({
        "signature": [rep.p(), rep.q()],
        "size": rep.size(),
        "generators": rep.generators().iter().map(|g| matrix_to_value(&wrap(g))).collect::<Vec<_>>(),
        "reversion": form_value(rep.reversion(), wrap),
        "conjugation": form_value(rep.conjugation(), wrap),
        "grade": form_value(rep.grade(), wrap),
    })
}

/// The `catalog-show` bundle.
pub fn entry_value(entry: &AnyEntry) -> Value {
    let rep = match entry {
        AnyEntry::Real(e) => rep_value(&e.rep, &|m| AnyMatrix::Rational(m.clone())),
        AnyEntry::Complex(e) => rep_value(&e.rep, &|m| AnyMatrix::Complex(m.clone())),
        AnyEntry::Quaternionic(e) => rep_value(&e.rep, &|m| AnyMatrix::Quaternion(m.clone())),
    };
    let prov = entry.provenance();
    let mut out = Map::new();
    out.insert(
        "signature".into(),
        Value::String(entry.signature().to_string()),
    );
    out.insert("ring".into(), Value::String(entry.ring().name().into()));
    out.insert(
        "classical_group".into(),
        Value::String(entry.classical_group().name().into()),
    );
    out.insert(
        "provenance".into(),
        json!({
            "seed": prov.seed.to_string(),
            "ic_steps": prov.ic_steps,
            "basis_change": prov.basis_change.as_ref().map(matrix_to_value),
            "printed_forms": prov.printed_forms,
        }),
    );
    out.insert("rep".into(), rep);
    Value::Object(out)
}

/// Matrices inside a `catalog-show` bundle, in emission order.
pub fn bundle_matrices(bundle: &Value) -> Result<Vec<AnyMatrix>, FormatError> {
    let rep = bundle.get("rep").ok_or(FormatError::Field("rep"))?;
    let mut out = Vec::new();
    for g in rep
        .get("generators")
        .and_then(Value::as_array)
        .ok_or(FormatError::Field("generators"))?
    {
        out.push(matrix_from_value(g)?);
    }
    for form in ["reversion", "conjugation", "grade"] {
        let c = rep
            .get(form)
            .and_then(|f| f.get("conjugator"))
            .ok_or(FormatError::Field("conjugator"))?;
        out.push(matrix_from_value(c)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cliffspin_core::named;

    #[test]
    fn rational_round_trip() {
        let m = AnyMatrix::Rational(named::j2::<Q>().scale(&"3/4".parse().unwrap()));
        let text = matrix_to_value(&m).to_string();
        assert_eq!(
            text,
            r#"{"cols":2,"data":["0","3/4","-3/4","0"],"ring":"rational","rows":2}"#
        );
        assert_eq!(parse_matrix(&text).unwrap(), m);
    }

    #[test]
    fn nested_rows_and_integers() {
        let m =
            parse_matrix(r#"{"ring":"rational","rows":2,"cols":2,"data":[[1,"1/2"],[0,"-2"]]}"#)
                .unwrap();
        assert_eq!(
            m.as_rational().unwrap().get(0, 1),
            &"1/2".parse::<Q>().unwrap()
        );
        let c =
            parse_matrix(r#"{"ring":"complex","rows":1,"cols":2,"data":[["0","1"],["2","0"]]}"#)
                .unwrap();
        assert_eq!(c.shape(), (1, 2));
        let c =
            parse_matrix(r#"{"ring":"complex","rows":1,"cols":2,"data":[[["0","1"],["2","0"]]]}"#)
                .unwrap();
        assert_eq!(c.shape(), (1, 2));
    }

    #[test]
    fn every_ring_round_trips() {
        let q = AnyMatrix::Quaternion(Matrix::diagonal(&[Quaternion::new(
            "1/2".parse().unwrap(),
            <Q as Scalar>::from_i64(-1),
            <Q as Scalar>::from_i64(0),
            "7/3".parse().unwrap(),
        )]));
        let s = AnyMatrix::RationalSqrt2(Matrix::diagonal(&[QSqrt2::new(
            <Q as Scalar>::from_i64(1),
            "-1/2".parse().unwrap(),
        )]));
        let f = AnyMatrix::Float64(Matrix::diagonal(&[0.25, -1.5]));
        for m in [q, s, f] {
            assert_eq!(parse_matrix(&matrix_to_value(&m).to_string()).unwrap(), m);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_matrix("{"), Err(FormatError::Syntax(_))));
        assert!(matches!(
            parse_matrix(r#"{"ring":"octonion","rows":1,"cols":1,"data":["1"]}"#),
            Err(FormatError::UnknownRing(_))
        ));
        assert!(matches!(
            parse_matrix(r#"{"ring":"rational","rows":1,"cols":2,"data":["1"]}"#),
            Err(FormatError::Length { .. })
        ));
        assert!(matches!(
            parse_matrix(r#"{"ring":"rational","rows":1,"cols":1,"data":["x"]}"#),
            Err(FormatError::Entry { .. })
        ));
        assert!(matches!(
            parse_matrix(r#"{"ring":"rational","rows":1,"cols":1,"data":[0.5]}"#),
            Err(FormatError::Entry { .. })
        ));
    }

    #[test]
    fn csv_and_pretty() {
        let m = AnyMatrix::Rational(named::sigma_z());
        assert_eq!(matrix_csv(&m, false), "1,0\n0,-1\n");
        assert_eq!(matrix_csv(&m, true), "1.0,0.0\n0.0,-1.0\n");
        assert!(matrix_pretty(&m, false).starts_with("rational 2x2\n"));
    }
}
