//! JSON formats and built-in names for algebras, bimodules, subalgebras
//! and ideals.
//!
//! Scalars are written as `"p/q"` strings, integers, or
//! `{"re": "p/q", "im": "r/s"}` objects.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{direct_sum, validate_structure, Algebra, DirectSum, IdealSpec, SubalgebraSpec, ValidationReport};
use crate::bimodule::{dual_bimodule, Bimodule};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, SparseVec};
use crate::scalar::{Field, Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Int(i64),
    Text(String),
    Complex { re: String, im: String },
}

impl ScalarJson {
    pub fn to_scalar(&self) -> Result<Scalar> {
        match self {
            ScalarJson::Int(n) => Ok(Scalar::from_int(*n)),
            ScalarJson::Text(s) => s.parse(),
            ScalarJson::Complex { re, im } => Ok(Scalar::new(re.parse::<Rational>()?, im.parse::<Rational>()?)),
        }
    }

    pub fn from_scalar(x: &Scalar) -> Self {
        if x.is_real() {
            ScalarJson::Text(x.re().to_string())
        } else {
            ScalarJson::Complex { re: x.re().to_string(), im: x.im().to_string() }
        }
    }
}

fn scalars(v: &[ScalarJson]) -> Result<Vec<Scalar>> {
    v.iter().map(ScalarJson::to_scalar).collect()
}

fn matrix(rows: &[Vec<ScalarJson>]) -> Result<Matrix> {
    let rows = rows.iter().map(|r| scalars(r)).collect::<Result<Vec<_>>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("ragged matrix rows".into()));
    }
    Ok(Matrix::from_rows(rows))
}

fn matrix_json(m: &Matrix) -> Vec<Vec<ScalarJson>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(ScalarJson::from_scalar).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    #[serde(default = "default_field")]
    pub field: Field,
    pub dim: usize,
    pub structure_constants: Vec<Vec<Vec<ScalarJson>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<ScalarJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

fn default_field() -> Field {
    Field::Rationals
}

type Table = Vec<Vec<Vec<Scalar>>>;

impl AlgebraJson {
    fn table(&self) -> Result<(Table, Option<Vec<Scalar>>)> {
        let d = self.dim;
        let c = &self.structure_constants;
        if c.len() != d || c.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d)) {
            return Err(Error::InvalidAlgebra(format!("structure_constants must be {d}×{d}×{d}")));
        }
        let consts = c.iter().map(|r| r.iter().map(|v| scalars(v)).collect()).collect::<Result<Vec<_>>>()?;
        let unit = self.unit.as_deref().map(scalars).transpose()?;
        if unit.as_ref().is_some_and(|u| u.len() != d) {
            return Err(Error::InvalidAlgebra(format!("unit must have {d} coordinates")));
        }
        Ok((consts, unit))
    }

    pub fn to_algebra(&self) -> Result<Algebra> {
        let (consts, unit) = self.table()?;
        Algebra::new(self.field, consts, unit, self.labels.clone())
    }

    /// Checks the algebra laws without building the algebra.
    pub fn validate(&self) -> Result<ValidationReport> {
        let (consts, unit) = self.table()?;
        Ok(validate_structure(self.field, &consts, unit.as_deref()))
    }

    pub fn from_algebra(a: &Algebra) -> Self {
        let d = a.dim();
        AlgebraJson {
            field: a.field(),
            dim: d,
            structure_constants: a
                .structure_constants()
                .iter()
                .map(|r| r.iter().map(|v| v.iter().map(ScalarJson::from_scalar).collect()).collect())
                .collect(),
            unit: a.unit().map(|u| u.to_dense(d).iter().map(ScalarJson::from_scalar).collect()),
            labels: a.labels().map(<[String]>::to_vec),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BimoduleJson {
    pub dim: usize,
    pub left: Vec<Vec<Vec<ScalarJson>>>,
    pub right: Vec<Vec<Vec<ScalarJson>>>,
}

impl BimoduleJson {
    pub fn to_bimodule(&self) -> Result<Bimodule> {
        let left = self.left.iter().map(|m| matrix(m)).collect::<Result<Vec<_>>>()?;
        let right = self.right.iter().map(|m| matrix(m)).collect::<Result<Vec<_>>>()?;
        Bimodule::new(self.dim, left, right)
    }

    pub fn from_bimodule(m: &Bimodule) -> Self {
        BimoduleJson {
            dim: m.dim(),
            left: m.left_actions().iter().map(matrix_json).collect(),
            right: m.right_actions().iter().map(matrix_json).collect(),
        }
    }
}

/// A list of spanning vectors; for subalgebras, vectors of length
/// `dim A + 1` when `in_unitization` is set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpanJson {
    #[serde(default)]
    pub in_unitization: bool,
    pub vectors: Vec<Vec<ScalarJson>>,
}

impl SpanJson {
    fn vectors(&self) -> Result<Vec<SparseVec>> {
        self.vectors.iter().map(|v| Ok(SparseVec::from_dense(&scalars(v)?))).collect()
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{origin}: line {}, column {}: {e}", e.line(), e.column())))
}

/// Inline JSON (starting with `{`) or the contents of a file.
fn load(spec: &str) -> Result<Option<(String, String)>> {
    let trimmed = spec.trim_start();
    if trimmed.starts_with('{') {
        return Ok(Some((trimmed.to_string(), "inline JSON".into())));
    }
    if spec.ends_with(".json") || Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
        return Ok(Some((text, spec.to_string())));
    }
    Ok(None)
}

pub fn parse_algebra_json(text: &str) -> Result<Algebra> {
    parse_json::<AlgebraJson>(text, "algebra")?.to_algebra()
}

pub fn parse_bimodule_json(text: &str) -> Result<Bimodule> {
    parse_json::<BimoduleJson>(text, "bimodule")?.to_bimodule()
}

fn size_arg(name: &str, arg: Option<&str>) -> Result<usize> {
    let arg = arg.ok_or_else(|| Error::Parse(format!("builtin `{name}` needs a size, e.g. `{name}:2`")))?;
    arg.parse().map_err(|_| Error::Parse(format!("bad size `{arg}` for builtin `{name}`")))
}

/// `matrix:n`, `scalars`, `dual_numbers`, `upper_triangular:n`,
/// `zero_product:d`, `truncated_polynomial:n`, each with an optional
/// `@Qi` (or `@Q`) field suffix.
pub fn builtin_algebra(name: &str) -> Result<Algebra> {
    let (base, field) = match name.rsplit_once('@') {
        Some((b, f)) => (b, f.parse::<Field>()?),
        None => (name, Field::Rationals),
    };
    let (kind, arg) = match base.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (base, None),
    };
    let no_arg = |a: Algebra| match arg {
        None => Ok(a),
        Some(_) => Err(Error::Parse(format!("builtin `{kind}` takes no size"))),
    };
    match kind {
        "matrix" => Ok(Algebra::matrix(size_arg(kind, arg)?, field)),
        "upper_triangular" => Ok(Algebra::upper_triangular(size_arg(kind, arg)?, field)),
        "zero_product" => Ok(Algebra::zero_product(size_arg(kind, arg)?, field)),
        "truncated_polynomial" => Ok(Algebra::truncated_polynomial(size_arg(kind, arg)?, field)),
        "scalars" => no_arg(Algebra::scalars(field)),
        "dual_numbers" => no_arg(Algebra::dual_numbers(field)),
        "zero" => no_arg(Algebra::zero(field)),
        other => Err(Error::Parse(format!("unknown builtin algebra `{other}`"))),
    }
}

/// A builtin name, inline JSON, or a path to a JSON file.
pub fn resolve_algebra(spec: &str) -> Result<Algebra> {
    match load(spec)? {
        Some((text, origin)) => parse_json::<AlgebraJson>(&text, &origin)?.to_algebra(),
        None => builtin_algebra(spec),
    }
}

/// Validation report for an algebra spec; JSON input is checked before
/// construction so that law violations are reported rather than refused.
pub fn validate_algebra_spec(spec: &str) -> Result<ValidationReport> {
    match load(spec)? {
        Some((text, origin)) => parse_json::<AlgebraJson>(&text, &origin)?.validate(),
        None => Ok(builtin_algebra(spec)?.validate()),
    }
}

/// A matrix given as inline JSON rows (`[[1,0],[0,"1/2"]]`) or a JSON file.
pub fn resolve_matrix(spec: &str) -> Result<Matrix> {
    let (text, origin) = if spec.trim_start().starts_with('[') {
        (spec.to_string(), "inline JSON".to_string())
    } else {
        let text = std::fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
        (text, spec.to_string())
    };
    matrix(&parse_json::<Vec<Vec<ScalarJson>>>(&text, &origin)?)
}

/// Comma-separated algebra specs, assembled into a direct sum.
pub fn resolve_parts(spec: &str) -> Result<Vec<Algebra>> {
    spec.split(',').map(|p| resolve_algebra(p.trim())).collect()
}

pub fn resolve_direct_sum(spec: &str) -> Result<DirectSum> {
    direct_sum(&resolve_parts(spec)?)
}

/// `dual`, `regular`, inline JSON, or a JSON file.
pub fn resolve_bimodule(spec: &str, a: &Algebra) -> Result<Bimodule> {
    let m = match spec {
        "dual" => dual_bimodule(a),
        "regular" => Bimodule::regular(a),
        _ => match load(spec)? {
            Some((text, origin)) => parse_json::<BimoduleJson>(&text, &origin)?.to_bimodule()?,
            None => return Err(Error::Parse(format!("unknown module `{spec}` (expected dual, regular or JSON)"))),
        },
    };
    m.validate(a)?;
    Ok(m)
}

fn index_list(list: &str, d: usize) -> Result<Vec<SparseVec>> {
    list.split(',')
        .map(|s| {
            let i: usize = s.trim().parse().map_err(|_| Error::Parse(format!("bad basis index `{s}`")))?;
            if i >= d {
                return Err(Error::Parse(format!("basis index {i} out of range for dimension {d}")));
            }
            Ok(SparseVec::unit(i))
        })
        .collect()
}

fn block(ds: Option<&DirectSum>, arg: &str) -> Result<Vec<SparseVec>> {
    let ds = ds.ok_or_else(|| Error::Parse("`block:i` needs --parts".into()))?;
    let i: usize = arg.parse().map_err(|_| Error::Parse(format!("bad block index `{arg}`")))?;
    let part = ds.parts.get(i).ok_or_else(|| Error::Parse(format!("no block {i}")))?;
    Ok((0..part.dim()).map(|k| SparseVec::unit(ds.offsets[i] + k)).collect())
}

/// `unit` (`K·e₊`), `whole`, `diagonal` (the unit's idempotent
/// summands for direct sums, diagonal matrix units for triangular
/// matrices), `span:i,j,…`, `block:i`, inline JSON or a JSON file.
pub fn resolve_subalgebra(spec: &str, a: &Algebra, ds: Option<&DirectSum>) -> Result<SubalgebraSpec> {
    let d = a.dim();
    if let Some(list) = spec.strip_prefix("span:") {
        return SubalgebraSpec::new(a, false, index_list(list, d)?);
    }
    if let Some(arg) = spec.strip_prefix("block:") {
        return SubalgebraSpec::new(a, false, block(ds, arg)?);
    }
    match spec {
        "unit" => Ok(SubalgebraSpec::unit_scalars(a)),
        "whole" => Ok(SubalgebraSpec::whole(a)),
        "diagonal" => match ds {
            Some(ds) => ds.idempotent_subalgebra(),
            None => {
                let diag: Vec<SparseVec> = (0..d)
                    .map(SparseVec::unit)
                    .filter(|e| a.mul(e, e) == *e && a.labels().is_some())
                    .filter(|e| {
                        let l = a.label(e.leading().expect("unit vector").0);
                        l.len() == 3 && l.as_bytes()[1] == l.as_bytes()[2]
                    })
                    .collect();
                if diag.is_empty() {
                    return Err(Error::Parse("`diagonal` needs --parts or matrix-unit labels".into()));
                }
                SubalgebraSpec::new(a, false, diag)
            }
        },
        _ => match load(spec)? {
            Some((text, origin)) => {
                let span: SpanJson = parse_json(&text, &origin)?;
                SubalgebraSpec::new(a, span.in_unitization, span.vectors()?)
            }
            None => Err(Error::Parse(format!("unknown subalgebra `{spec}`"))),
        },
    }
}

/// `whole`, `zero`, `span:i,j,…`, `block:i`, inline JSON or a JSON file.
pub fn resolve_ideal(spec: &str, a: &Algebra, ds: Option<&DirectSum>) -> Result<IdealSpec> {
    let d = a.dim();
    if let Some(list) = spec.strip_prefix("span:") {
        return IdealSpec::new(a, index_list(list, d)?);
    }
    if let Some(arg) = spec.strip_prefix("block:") {
        return IdealSpec::new(a, block(ds, arg)?);
    }
    match spec {
        "whole" => IdealSpec::new(a, (0..d).map(SparseVec::unit).collect()),
        "zero" => Ok(IdealSpec::zero(a)),
        _ => match load(spec)? {
            Some((text, origin)) => IdealSpec::new(a, parse_json::<SpanJson>(&text, &origin)?.vectors()?),
            None => Err(Error::Parse(format!("unknown ideal `{spec}`"))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrices() {
        let m = resolve_matrix(r#"[[1, "1/2"], [0, -3]]"#).unwrap();
        assert_eq!(m.row(0)[1], Scalar::ratio(1, 2));
        assert!(resolve_matrix("[[1], [2, 3]]").is_err());
        assert!(matches!(resolve_matrix("[[1,"), Err(Error::Parse(_))));
    }

    #[test]
    fn validation_reports_violations() {
        let bad = r#"{"dim":1,"structure_constants":[[["2"]]],"unit":["1"]}"#;
        let report = validate_algebra_spec(bad).unwrap();
        assert!(report.associative && !report.is_valid());
        assert!(validate_algebra_spec("matrix:2").unwrap().is_valid());
    }

    #[test]
    fn builtins() {
        assert_eq!(builtin_algebra("matrix:2").unwrap(), Algebra::matrix(2, Field::Rationals));
        assert_eq!(builtin_algebra("matrix:2@Qi").unwrap().field(), Field::GaussianRationals);
        assert_eq!(builtin_algebra("upper_triangular:3").unwrap().dim(), 6);
        assert!(builtin_algebra("matrix").is_err());
        assert!(builtin_algebra("scalars:2").is_err());
        assert!(builtin_algebra("octonions").is_err());
    }

    #[test]
    fn json_roundtrip() {
        let a = Algebra::upper_triangular(2, Field::Rationals);
        let text = serde_json::to_string(&AlgebraJson::from_algebra(&a)).unwrap();
        assert_eq!(parse_algebra_json(&text).unwrap(), a);
        let m = dual_bimodule(&a);
        let text = serde_json::to_string(&BimoduleJson::from_bimodule(&m)).unwrap();
        assert_eq!(parse_bimodule_json(&text).unwrap(), m);
    }

    #[test]
    fn complex_entries() {
        let text = r#"{"field":"Qi","dim":1,"structure_constants":[[[{"re":"1","im":"0"}]]]}"#;
        let a = parse_algebra_json(text).unwrap();
        assert!(a.is_unital());
    }

    #[test]
    fn non_associative_json_is_rejected() {
        // e·e = f, f·e = e, others zero
        let text = r#"{"dim":2,"structure_constants":[[[0,1],[0,0]],[[1,0],[0,0]]]}"#;
        assert!(matches!(parse_algebra_json(text), Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn malformed_json_reports_location() {
        let err = parse_algebra_json("{\"dim\": 1,\n \"structure_constants\": [[[1]]").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn subalgebra_specs() {
        let ds = resolve_direct_sum("matrix:2,scalars").unwrap();
        let a = &ds.algebra;
        assert_eq!(resolve_subalgebra("diagonal", a, Some(&ds)).unwrap().dim(), 2);
        assert_eq!(resolve_subalgebra("block:1", a, Some(&ds)).unwrap().dim(), 1);
        assert_eq!(resolve_ideal("block:0", a, Some(&ds)).unwrap().dim(), 4);
        let ut = builtin_algebra("upper_triangular:2").unwrap();
        assert_eq!(resolve_subalgebra("diagonal", &ut, None).unwrap(), resolve_subalgebra("span:0,2", &ut, None).unwrap());
        assert!(resolve_ideal("span:0", &ut, None).is_err());
    }
}
