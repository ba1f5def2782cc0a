//! The JSON input format: one split extension with coefficients per document.

use std::collections::BTreeMap;
use std::fmt;

use liess_core::lie::{validate_algebra, StructureConstants};
use liess_core::resolution::words::{AbelianCoordinates, LieExpr};
use liess_core::resolution::FreeFactor;
use liess_core::{
    CoefficientModule, ExtensionError, Field, FieldElem, KernelAction, KernelSpec, LieAlgebra, LieError, Matrix, SplitExtension,
};
use serde::{Deserialize, Serialize};

/// A schema or validation error with the JSON path it refers to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl SchemaError {
    fn new(path: impl Into<String>, message: impl fmt::Display) -> Self {
        Self {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

/// A scalar literal: an integer or a string `"a"`, `"-a"`, `"a/b"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum Scalar {
    Int(i64),
    Text(String),
}

type RawMatrix = Vec<Vec<Scalar>>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    labels: Vec<String>,
    /// `[a, b, value]`: `[a,b] = value`, antisymmetry filled in.
    #[serde(default)]
    brackets: Vec<(String, String, String)>,
    /// `[a, b, c, coefficient]`: the `c`-component of `[a,b]`, taken as given.
    #[serde(default)]
    structure_constants: Vec<(String, String, String, Scalar)>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
enum FactorKind {
    Abelian,
    Free,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFactor {
    kind: FactorKind,
    generators: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case", deny_unknown_fields)]
enum RawKernel {
    Finite {
        labels: Vec<String>,
        #[serde(default)]
        brackets: Vec<(String, String, String)>,
        #[serde(default)]
        structure_constants: Vec<(String, String, String, Scalar)>,
    },
    Free {
        generators: Vec<String>,
    },
    FreePlusAbelian {
        free: Vec<String>,
        abelian: Vec<String>,
    },
    FreePlusFree {
        left: Vec<String>,
        right: Vec<String>,
    },
    FreeProduct {
        factors: Vec<RawFactor>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum RawPhi {
    Matrix(RawMatrix),
    Images(BTreeMap<String, String>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    dim: usize,
    #[serde(default)]
    kernel: BTreeMap<String, RawMatrix>,
    #[serde(default)]
    quotient: BTreeMap<String, RawMatrix>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default)]
    name: Option<String>,
    field: String,
    kernel: RawKernel,
    #[serde(default)]
    quotient: Option<RawAlgebra>,
    #[serde(default)]
    phi: BTreeMap<String, RawPhi>,
    #[serde(default)]
    module: Option<RawModule>,
}

/// A parsed and fully validated document.
#[derive(Clone, Debug)]
pub struct ExtensionDocument {
    pub name: Option<String>,
    pub extension: SplitExtension,
}

pub fn parse_field(text: &str) -> Result<Field, String> {
    let t = text.trim();
    if t == "Q" {
        return Ok(Field::Rational);
    }
    let p = t
        .strip_prefix('F')
        .and_then(|p| p.parse::<u32>().ok())
        .ok_or_else(|| format!("unknown field {text:?}; expected \"Q\" or \"F<p>\""))?;
    Field::prime(p).map_err(|_| format!("F{p}: p must be prime"))
}

fn scalar(field: Field, s: &Scalar, path: &str) -> Result<FieldElem, SchemaError> {
    match s {
        Scalar::Int(n) => Ok(field.from_i64(*n)),
        Scalar::Text(t) => field.parse(t).map_err(|e| SchemaError::new(path, e)),
    }
}

fn matrix(field: Field, raw: &RawMatrix, dim: usize, path: &str) -> Result<Matrix, SchemaError> {
    if raw.len() != dim || raw.iter().any(|r| r.len() != dim) {
        return Err(SchemaError::new(path, format!("expected a {dim}x{dim} matrix")));
    }
    let mut rows = Vec::with_capacity(dim);
    for (i, r) in raw.iter().enumerate() {
        let row = r
            .iter()
            .enumerate()
            .map(|(j, s)| scalar(field, s, &format!("{path}[{i}][{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(Matrix::from_rows(field, rows))
}

fn check_labels(labels: &[String], path: &str) -> Result<(), SchemaError> {
    for (i, l) in labels.iter().enumerate() {
        let ok = !l.is_empty() && l.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok || l.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            return Err(SchemaError::new(format!("{path}[{i}]"), format!("invalid label {l:?}")));
        }
        if labels[..i].contains(l) {
            return Err(SchemaError::new(format!("{path}[{i}]"), format!("duplicate label {l:?}")));
        }
    }
    Ok(())
}

fn index(labels: &[String], label: &str, path: &str) -> Result<usize, SchemaError> {
    labels
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| SchemaError::new(path, format!("undeclared label {label:?}")))
}

fn is_linear(e: &LieExpr) -> bool {
    match e {
        LieExpr::Zero | LieExpr::Gen(_) => true,
        LieExpr::Scaled(_, inner) => is_linear(inner),
        LieExpr::Sum(parts) => parts.iter().all(is_linear),
        LieExpr::Bracket(..) => false,
    }
}

fn algebra(
    field: Field,
    labels: &[String],
    brackets: &[(String, String, String)],
    raw_constants: &[(String, String, String, Scalar)],
    path: &str,
) -> Result<LieAlgebra, SchemaError> {
    check_labels(labels, &format!("{path}.labels"))?;
    let d = labels.len();
    let mut sc = StructureConstants::zero(field, labels.to_vec());
    let coords = AbelianCoordinates { field, dim: d };
    for (n, (a, b, value)) in brackets.iter().enumerate() {
        let at = format!("{path}.brackets[{n}]");
        let (i, j) = (index(labels, a, &at)?, index(labels, b, &at)?);
        let expr = LieExpr::parse(value, labels, field).map_err(|e| SchemaError::new(&at, e))?;
        if !is_linear(&expr) {
            return Err(SchemaError::new(&at, "bracket values must be linear combinations of labels"));
        }
        let v = expr.eval(&coords);
        for (k, x) in v.iter().enumerate() {
            sc.set(i, j, k, sc.get(i, j, k).add(x));
            sc.set(j, i, k, sc.get(j, i, k).sub(x));
        }
    }
    for (n, (a, b, c, value)) in raw_constants.iter().enumerate() {
        let at = format!("{path}.structure_constants[{n}]");
        let (i, j, k) = (index(labels, a, &at)?, index(labels, b, &at)?, index(labels, c, &at)?);
        let x = scalar(field, value, &at)?;
        sc.set(i, j, k, sc.get(i, j, k).add(&x));
    }
    let report = validate_algebra(&sc);
    if !report.is_valid() {
        return Err(SchemaError::new(path, LieError::InvalidAlgebra(report)));
    }
    LieAlgebra::new(sc).map_err(|e| SchemaError::new(path, e))
}

fn kernel_spec(field: Field, raw: &RawKernel) -> Result<KernelSpec, SchemaError> {
    Ok(match raw {
        RawKernel::Finite {
            labels,
            brackets,
            structure_constants,
        } => KernelSpec::FiniteDim(algebra(field, labels, brackets, structure_constants, "kernel")?),
        RawKernel::Free { generators } => KernelSpec::Free(generators.clone()),
        RawKernel::FreePlusAbelian { free, abelian } => KernelSpec::DirectSumFreeAbelian {
            free: free.clone(),
            abelian: abelian.clone(),
        },
        RawKernel::FreePlusFree { left, right } => KernelSpec::DirectSumFreeFree {
            left: left.clone(),
            right: right.clone(),
        },
        RawKernel::FreeProduct { factors } => KernelSpec::FreeProduct(
            factors
                .iter()
                .map(|f| match f.kind {
                    FactorKind::Abelian => FreeFactor::Abelian(f.generators.clone()),
                    FactorKind::Free => FreeFactor::Free(f.generators.clone()),
                })
                .collect(),
        ),
    })
}

fn kernel_action(
    field: Field,
    kernel: &KernelSpec,
    gens: &[String],
    h: &LieAlgebra,
    phi: &BTreeMap<String, RawPhi>,
) -> Result<KernelAction, SchemaError> {
    for key in phi.keys() {
        index(h.labels(), key, "phi")?;
    }
    let uses_matrices = phi.values().any(|p| matches!(p, RawPhi::Matrix(_)));
    let uses_images = phi.values().any(|p| matches!(p, RawPhi::Images(_)));
    if uses_matrices && uses_images {
        return Err(SchemaError::new("phi", "use either matrices or images for every quotient element"));
    }
    let m = gens.len();
    if uses_matrices {
        if !matches!(kernel, KernelSpec::FiniteDim(_)) {
            return Err(SchemaError::new("phi", "matrix form needs a finite kernel; give generator images"));
        }
        let mut out = Vec::with_capacity(h.dim());
        for a in h.labels() {
            out.push(match phi.get(a) {
                Some(RawPhi::Matrix(raw)) => matrix(field, raw, m, &format!("phi.{a}.matrix"))?,
                _ => Matrix::zeros(field, m, m),
            });
        }
        return Ok(KernelAction::Matrices(out));
    }
    let mut out = Vec::with_capacity(h.dim());
    for a in h.labels() {
        let mut row = vec![LieExpr::Zero; m];
        if let Some(RawPhi::Images(images)) = phi.get(a) {
            for (g, text) in images {
                let at = format!("phi.{a}.images.{g}");
                let i = index(gens, g, &at)?;
                row[i] = LieExpr::parse(text, gens, field).map_err(|e| SchemaError::new(&at, e))?;
            }
        }
        out.push(row);
    }
    Ok(KernelAction::Expressions(out))
}

fn module(
    field: Field,
    gens: &[String],
    h: &LieAlgebra,
    raw: Option<&RawModule>,
) -> Result<CoefficientModule, SchemaError> {
    let Some(raw) = raw else {
        return Ok(CoefficientModule::trivial(field, 1, gens.len(), h.dim()));
    };
    let d = raw.dim;
    for key in raw.kernel.keys() {
        index(gens, key, "module.kernel")?;
    }
    for key in raw.quotient.keys() {
        index(h.labels(), key, "module.quotient")?;
    }
    let pick = |map: &BTreeMap<String, RawMatrix>, labels: &[String], at: &str| -> Result<Vec<Matrix>, SchemaError> {
        labels
            .iter()
            .map(|l| match map.get(l) {
                Some(raw) => matrix(field, raw, d, &format!("{at}.{l}")),
                None => Ok(Matrix::zeros(field, d, d)),
            })
            .collect()
    };
    Ok(CoefficientModule::new(
        field,
        d,
        pick(&raw.kernel, gens, "module.kernel")?,
        pick(&raw.quotient, h.labels(), "module.quotient")?,
    ))
}

fn build(raw: &RawDocument) -> Result<ExtensionDocument, SchemaError> {
    let field = parse_field(&raw.field).map_err(|e| SchemaError::new("field", e))?;
    let kernel = kernel_spec(field, &raw.kernel)?;
    let gens = kernel.generator_labels();
    check_labels(&gens, "kernel")?;
    let h = match &raw.quotient {
        Some(q) => algebra(field, &q.labels, &q.brackets, &q.structure_constants, "quotient")?,
        None => LieAlgebra::abelian(field, &[]),
    };
    if let Some(clash) = h.labels().iter().find(|l| gens.contains(l)) {
        return Err(SchemaError::new("quotient.labels", format!("{clash:?} is also a kernel label")));
    }
    let action = kernel_action(field, &kernel, &gens, &h, &raw.phi)?;
    let module = module(field, &gens, &h, raw.module.as_ref())?;
    let extension = SplitExtension::new(kernel, h, action, module).map_err(|e| {
        let path = match &e {
            ExtensionError::Lie(LieError::InvalidDerivation(_))
            | ExtensionError::ForeignImage { .. }
            | ExtensionError::NotAHomomorphism { .. } => "phi",
            ExtensionError::NotAGModule { .. } | ExtensionError::NontrivialKernelAction { .. } => "module",
            _ => "$",
        };
        SchemaError::new(path, e)
    })?;
    Ok(ExtensionDocument {
        name: raw.name.clone(),
        extension,
    })
}

/// Parses and validates a document. JSON syntax errors carry line and column; schema and
/// validation errors carry the JSON path.
pub fn parse(text: &str) -> Result<ExtensionDocument, Vec<SchemaError>> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let path = if path == "." { "$".to_string() } else { path };
        vec![SchemaError::new(path, inner)]
    })?;
    build(&raw).map_err(|e| vec![e])
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "field": "Q",
        "kernel": {"variant": "finite", "labels": ["n"]},
        "quotient": {"labels": ["a"]}
    }"#;

    fn err(text: &str) -> SchemaError {
        parse(text).unwrap_err().remove(0)
    }

    #[test]
    fn minimal_document_parses() {
        let doc = parse(MINIMAL).unwrap();
        assert_eq!(doc.extension.quotient().dim(), 1);
        assert!(doc.extension.kernel_acts_trivially());
        assert_eq!(doc.extension.module().dim(), 1);
    }

    #[test]
    fn field_specs() {
        assert_eq!(parse_field("Q"), Ok(Field::Rational));
        assert_eq!(parse_field("F7"), Ok(Field::prime(7).unwrap()));
        assert!(parse_field("F4").unwrap_err().contains("prime"));
        assert!(parse_field("R").is_err());
        let e = err(&MINIMAL.replace("\"Q\"", "\"F4\""));
        assert_eq!(e.path, "field");
    }

    #[test]
    fn antisymmetry_violation_names_the_triple() {
        let text = r#"{
            "field": "Q",
            "kernel": {"variant": "finite", "labels": ["x", "y", "z"],
                       "structure_constants": [["x", "y", "z", "1"]]}
        }"#;
        let e = err(text);
        assert_eq!(e.path, "kernel");
        assert!(e.message.contains("antisymmetry fails at (x,y,z)"), "{}", e.message);
    }

    #[test]
    fn unknown_variant_is_rejected() {
        let e = err(r#"{"field": "Q", "kernel": {"variant": "solvable", "labels": []}}"#);
        assert_eq!(e.path, "kernel.variant");
        assert!(e.message.contains("unknown variant"), "{}", e.message);
    }

    #[test]
    fn malformed_json_reports_position() {
        let e = err("{\"field\": \"Q\",\n \"kernel\": }");
        assert!(e.message.contains("line 2"), "{}", e.message);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let text = r#"{
            "field": "Q",
            "kernel": {"variant": "finite", "labels": ["y", "z"]},
            "quotient": {"labels": ["x"]},
            "phi": {"x": {"matrix": [["0", "0", "0"], ["1", "0", "0"]]}}
        }"#;
        let e = err(text);
        assert_eq!(e.path, "phi.x.matrix");
    }

    #[test]
    fn undeclared_labels_are_rejected() {
        let text = r#"{
            "field": "Q",
            "kernel": {"variant": "free", "generators": ["x1", "x2"]},
            "quotient": {"labels": ["a"]},
            "phi": {"a": {"images": {"x3": "x1"}}}
        }"#;
        assert_eq!(err(text).path, "phi.a.images.x3");
        let text = text.replace("\"x3\": \"x1\"", "\"x1\": \"[x1,w]\"");
        assert_eq!(err(&text).path, "phi.a.images.x1");
    }

    #[test]
    fn heisenberg_by_matrices_and_by_images_agree() {
        let by_matrix = r#"{
            "field": "Q",
            "kernel": {"variant": "finite", "labels": ["y", "z"]},
            "quotient": {"labels": ["x"]},
            "phi": {"x": {"matrix": [["0", "0"], ["1", "0"]]}}
        }"#;
        let by_images = by_matrix.replace(r#"{"matrix": [["0", "0"], ["1", "0"]]}"#, r#"{"images": {"y": "z"}}"#);
        let a = parse(by_matrix).unwrap();
        let b = parse(&by_images).unwrap();
        assert_eq!(a.extension.derivations(), b.extension.derivations());
    }

    #[test]
    fn nonlinear_bracket_values_are_rejected() {
        let text = r#"{
            "field": "Q",
            "kernel": {"variant": "finite", "labels": ["x", "y"], "brackets": [["x", "y", "[x,y]"]]}
        }"#;
        assert_eq!(err(text).path, "kernel.brackets[0]");
    }

    #[test]
    fn matrix_form_needs_a_finite_kernel() {
        let text = r#"{
            "field": "Q",
            "kernel": {"variant": "free", "generators": ["x"]},
            "quotient": {"labels": ["a"]},
            "phi": {"a": {"matrix": [["1"]]}}
        }"#;
        assert_eq!(err(text).path, "phi");
    }

    #[test]
    fn invalid_module_is_rejected() {
        let text = r#"{
            "field": "Q",
            "kernel": {"variant": "finite", "labels": ["y", "z"]},
            "quotient": {"labels": ["x"]},
            "phi": {"x": {"matrix": [["0", "0"], ["1", "0"]]}},
            "module": {"dim": 1, "kernel": {"z": [["1"]]}}
        }"#;
        let e = err(text);
        assert_eq!(e.path, "module");
    }
}
