//! The manifold-spec file format: a line-oriented structured-text format
//! carrying a frame model (dimension, parameters, brackets) and named
//! tensors/structures. See `docs/spec-format.md` for the grammar.
//!
//! Indices in files are 1-based; coefficient expressions use the scalar
//! expression grammar (`docs/spec-format.md` reproduces the EBNF).

use conewb_core::frame::{FrameModel, ModelKind};
use conewb_core::scalar::{parse_scalar, Context, Scalar};
use conewb_core::structures::contact::ContactStructure;
use conewb_core::structures::g2::G2Structure;
use conewb_core::tensor::AltForm;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use thiserror::Error;

pub const FORMAT_HEADER: &str = "conewb-spec 1";

#[derive(Error, Debug)]
pub enum SpecFileError {
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error("line {line}: scalar expression error in `{expr}`: {err}")]
    Expr {
        line: usize,
        expr: String,
        err: conewb_core::ScalarError,
    },
    #[error("model validation failed: {0}")]
    Validation(#[from] conewb_core::frame::FrameError),
    #[error("structure `{0}` is invalid: {1}")]
    Structure(String, conewb_core::structures::StructureError),
}

/// A parsed manifold spec: the model plus named forms and structures.
pub struct LoadedSpec {
    pub name: String,
    pub model: Arc<FrameModel>,
    pub params: Vec<(String, Option<String>)>,
    pub forms: BTreeMap<String, AltForm>,
    pub contacts: BTreeMap<String, ContactStructure>,
    pub g2: BTreeMap<String, G2Structure>,
}

struct RawForm {
    degree: usize,
    terms: Vec<(Vec<usize>, String)>,
    line: usize,
}

/// Parses the spec text; validates antisymmetry (structural), the Jacobi
/// identity (unless `jacobi partial`) and every structure's axioms.
pub fn parse_spec(text: &str) -> Result<LoadedSpec, SpecFileError> {
    let mut name = String::new();
    let mut dim: Option<usize> = None;
    let mut params: Vec<(String, Option<String>)> = Vec::new();
    let mut orientation = 1i8;
    let mut kind = ModelKind::LieGroup;
    let mut jacobi_full = true;
    let mut brackets: Vec<(usize, usize, usize, String, usize)> = Vec::new();
    let mut forms: Vec<(String, RawForm)> = Vec::new();
    let mut structures: Vec<(String, String, Vec<(String, String)>, usize)> = Vec::new();
    let mut header_seen = false;

    let fail = |ln: usize, msg: &str| Err(SpecFileError::Parse(ln, msg.to_string()));

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if !header_seen {
            if line != FORMAT_HEADER {
                return fail(ln, &format!("expected header `{FORMAT_HEADER}`"));
            }
            header_seen = true;
            continue;
        }
        let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "name" => name = rest.to_string(),
            "dim" => {
                dim = Some(rest.parse().map_err(|_| {
                    SpecFileError::Parse(ln, format!("invalid dimension `{rest}`"))
                })?)
            }
            "kind" => {
                kind = match rest {
                    "flat" => ModelKind::Flat,
                    "lie-group" => ModelKind::LieGroup,
                    "reductive-homogeneous" => ModelKind::ReductiveHomogeneous,
                    other => return fail(ln, &format!("unknown kind `{other}`")),
                }
            }
            "jacobi" => {
                jacobi_full = match rest {
                    "full" => true,
                    "partial" => false,
                    other => return fail(ln, &format!("unknown jacobi mode `{other}`")),
                }
            }
            "orientation" => {
                orientation = match rest {
                    "+1" | "1" => 1,
                    "-1" => -1,
                    other => return fail(ln, &format!("invalid orientation `{other}`")),
                }
            }
            "param" => {
                let (pname, constraint) = match rest.split_once(':') {
                    Some((p, c)) => (p.trim().to_string(), Some(c.trim().to_string())),
                    None => (rest.to_string(), None),
                };
                if pname.is_empty() {
                    return fail(ln, "param needs a name");
                }
                params.push((pname, constraint));
            }
            "bracket" => {
                // bracket i j -> k : expr
                let (head, expr) = rest
                    .split_once(':')
                    .ok_or_else(|| SpecFileError::Parse(ln, "bracket needs `: expr`".into()))?;
                let (lhs, k) = head
                    .split_once("->")
                    .ok_or_else(|| SpecFileError::Parse(ln, "bracket needs `i j -> k`".into()))?;
                let ij: Vec<&str> = lhs.split_whitespace().collect();
                if ij.len() != 2 {
                    return fail(ln, "bracket needs exactly two source indices");
                }
                let parse_idx = |s: &str| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| SpecFileError::Parse(ln, format!("bad index `{s}`")))
                };
                brackets.push((
                    parse_idx(ij[0])?,
                    parse_idx(ij[1])?,
                    parse_idx(k)?,
                    expr.trim().to_string(),
                    ln,
                ));
            }
            "form" => {
                // form NAME degree K : i j .. = expr, i j .. = expr
                let (head, body) = rest
                    .split_once(':')
                    .ok_or_else(|| SpecFileError::Parse(ln, "form needs `: terms`".into()))?;
                let head_parts: Vec<&str> = head.split_whitespace().collect();
                if head_parts.len() != 3 || head_parts[1] != "degree" {
                    return fail(ln, "form header must be `form NAME degree K`");
                }
                let degree: usize = head_parts[2]
                    .parse()
                    .map_err(|_| SpecFileError::Parse(ln, "bad form degree".into()))?;
                let mut terms = Vec::new();
                for term in body.split(',') {
                    let term = term.trim();
                    if term.is_empty() {
                        continue;
                    }
                    let (idx_part, expr) = term.split_once('=').ok_or_else(|| {
                        SpecFileError::Parse(ln, format!("form term `{term}` needs `= expr`"))
                    })?;
                    let idx: Result<Vec<usize>, _> = idx_part
                        .split_whitespace()
                        .map(|s| {
                            s.parse::<usize>().map_err(|_| {
                                SpecFileError::Parse(ln, format!("bad index `{s}`"))
                            })
                        })
                        .collect();
                    terms.push((idx?, expr.trim().to_string()));
                }
                forms.push((head_parts[0].to_string(), RawForm { degree, terms, line: ln }));
            }
            "structure" => {
                // structure KIND NAME : key = value, key = value
                let (head, body) = rest
                    .split_once(':')
                    .ok_or_else(|| SpecFileError::Parse(ln, "structure needs `: fields`".into()))?;
                let head_parts: Vec<&str> = head.split_whitespace().collect();
                if head_parts.len() != 2 {
                    return fail(ln, "structure header must be `structure KIND NAME`");
                }
                let mut fields = Vec::new();
                for field in body.split(',') {
                    let field = field.trim();
                    if field.is_empty() {
                        continue;
                    }
                    let (k, v) = field.split_once('=').ok_or_else(|| {
                        SpecFileError::Parse(ln, format!("field `{field}` needs `= value`"))
                    })?;
                    fields.push((k.trim().to_string(), v.trim().to_string()));
                }
                structures.push((
                    head_parts[0].to_string(),
                    head_parts[1].to_string(),
                    fields,
                    ln,
                ));
            }
            other => return fail(ln, &format!("unknown directive `{other}`")),
        }
    }

    if !header_seen {
        return fail(0, &format!("missing header `{FORMAT_HEADER}`"));
    }
    let dim = dim.ok_or_else(|| SpecFileError::Parse(0, "missing `dim`".into()))?;
    let ctx = Context::new(&params.iter().map(|(p, _)| p.clone()).collect::<Vec<_>>());
    let mut model = FrameModel::new(&ctx, dim, kind);
    model.set_orientation(orientation);
    model.set_assume_jacobi(jacobi_full);

    let parse_expr = |ln: usize, expr: &str| -> Result<Scalar, SpecFileError> {
        parse_scalar(expr, &ctx).map_err(|err| SpecFileError::Expr {
            line: ln,
            expr: expr.to_string(),
            err,
        })
    };

    for (i, j, k, expr, ln) in brackets {
        if i == 0 || j == 0 || k == 0 || i > dim || j > dim || k > dim || i == j {
            return fail(ln, "bracket indices must be distinct and within 1..=dim");
        }
        let c = parse_expr(ln, &expr)?;
        model.set_bracket(i - 1, j - 1, k - 1, c);
    }
    model.validate()?;
    let model = Arc::new(model);

    let mut form_map = BTreeMap::new();
    for (fname, raw) in forms {
        if raw.degree > dim {
            return fail(raw.line, "form degree exceeds dimension");
        }
        let mut f = AltForm::zero(&ctx, dim, raw.degree);
        for (idx, expr) in &raw.terms {
            if idx.len() != raw.degree {
                return fail(raw.line, "term index count does not match the degree");
            }
            if idx.iter().any(|&x| x == 0 || x > dim) {
                return fail(raw.line, "form index out of range");
            }
            let zero_based: Vec<usize> = idx.iter().map(|&x| x - 1).collect();
            f.add_term(&zero_based, parse_expr(raw.line, expr)?);
        }
        form_map.insert(fname, f);
    }

    let mut contacts = BTreeMap::new();
    let mut g2 = BTreeMap::new();
    for (skind, sname, fields, ln) in structures {
        let get = |key: &str| -> Result<&AltForm, SpecFileError> {
            let fname = fields
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v)
                .ok_or_else(|| {
                    SpecFileError::Parse(ln, format!("structure needs field `{key}`"))
                })?;
            form_map.get(fname).ok_or_else(|| {
                SpecFileError::Parse(ln, format!("unknown form `{fname}` in structure"))
            })
        };
        match skind.as_str() {
            "contact" => {
                let eta = get("eta")?.clone();
                let f = get("F")?;
                let s = ContactStructure::from_fundamental(&model, eta, f)
                    .map_err(|e| SpecFileError::Structure(sname.clone(), e))?;
                contacts.insert(sname, s);
            }
            "g2" => {
                let phi = get("phi")?.clone();
                g2.insert(sname, G2Structure::new(&model, phi));
            }
            other => return fail(ln, &format!("unknown structure kind `{other}`")),
        }
    }

    Ok(LoadedSpec { name, model, params, forms: form_map, contacts, g2 })
}

/// Serializes a loaded spec back to canonical text (`parse ∘ save = id` on
/// canonical specs).
pub fn save_spec(spec: &LoadedSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{FORMAT_HEADER}");
    let _ = writeln!(out, "name {}", spec.name);
    let _ = writeln!(out, "dim {}", spec.model.dim());
    for (p, constraint) in &spec.params {
        match constraint {
            Some(c) => {
                let _ = writeln!(out, "param {p} : {c}");
            }
            None => {
                let _ = writeln!(out, "param {p}");
            }
        }
    }
    let _ = writeln!(
        out,
        "kind {}",
        match spec.model.kind() {
            ModelKind::Flat => "flat",
            ModelKind::LieGroup => "lie-group",
            ModelKind::ReductiveHomogeneous => "reductive-homogeneous",
            ModelKind::Cone => "lie-group",
        }
    );
    let _ = writeln!(
        out,
        "jacobi {}",
        if spec.model.assume_jacobi() { "full" } else { "partial" }
    );
    let _ = writeln!(
        out,
        "orientation {}",
        if spec.model.orientation() > 0 { "+1" } else { "-1" }
    );
    let n = spec.model.dim();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                let c = spec.model.c(i, j, k);
                if !c.is_zero() {
                    let _ = writeln!(out, "bracket {} {} -> {} : {}", i + 1, j + 1, k + 1, c);
                }
            }
        }
    }
    for (name, f) in &spec.forms {
        let mut terms = Vec::new();
        for tuple in conewb_core::tensor::combinations(n, f.degree()) {
            let c = f.get_increasing(&tuple);
            if !c.is_zero() {
                let idx: Vec<String> = tuple.iter().map(|&x| (x + 1).to_string()).collect();
                terms.push(format!("{} = {}", idx.join(" "), c));
            }
        }
        let _ = writeln!(out, "form {name} degree {} : {}", f.degree(), terms.join(", "));
    }
    for (name, s) in &spec.contacts {
        // Re-derive the form names by matching against the stored forms.
        let eta_name = spec
            .forms
            .iter()
            .find(|(_, f)| *f == s.eta())
            .map(|(k, _)| k.clone())
            .unwrap_or_else(|| "eta".into());
        let f_name = spec
            .forms
            .iter()
            .find(|(_, f)| *f == s.fundamental())
            .map(|(k, _)| k.clone())
            .unwrap_or_else(|| "F".into());
        let _ = writeln!(out, "structure contact {name} : eta = {eta_name}, F = {f_name}");
    }
    for (name, s) in &spec.g2 {
        let phi_name = spec
            .forms
            .iter()
            .find(|(_, f)| *f == s.phi())
            .map(|(k, _)| k.clone())
            .unwrap_or_else(|| "phi".into());
        let _ = writeln!(out, "structure g2 {name} : phi = {phi_name}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEISENBERG_SPEC: &str = "\
conewb-spec 1
name heisenberg
dim 5
param rho : rho > 0
kind lie-group
jacobi full
orientation +1
bracket 1 2 -> 5 : rho
bracket 3 4 -> 5 : rho
form F1 degree 2 : 1 2 = 1, 3 4 = -1
form F2 degree 2 : 1 2 = -1, 3 4 = -1
form eta degree 1 : 5 = 1
structure contact F1 : eta = eta, F = F1
structure contact F2 : eta = eta, F = F2
";

    #[test]
    fn parses_heisenberg() {
        let spec = parse_spec(HEISENBERG_SPEC).unwrap();
        assert_eq!(spec.name, "heisenberg");
        assert_eq!(spec.model.dim(), 5);
        assert_eq!(spec.model.c(0, 1, 4), &spec.model.scalar("rho"));
        assert!(spec.contacts.contains_key("F2"));
    }

    #[test]
    fn save_load_round_trip() {
        let spec = parse_spec(HEISENBERG_SPEC).unwrap();
        let saved = save_spec(&spec);
        let reloaded = parse_spec(&saved).unwrap();
        assert_eq!(saved, save_spec(&reloaded));
        assert_eq!(spec.model.c(0, 1, 4), reloaded.model.c(0, 1, 4));
    }

    #[test]
    fn error_positions() {
        let bad = HEISENBERG_SPEC.replace("bracket 1 2 -> 5 : rho", "bracket 1 2 -> 5 : rho+/2");
        match parse_spec(&bad) {
            Err(SpecFileError::Expr { line, err, .. }) => {
                assert_eq!(line, 8);
                assert!(matches!(err, conewb_core::ScalarError::Syntax { pos: 4, .. }));
            }
            other => panic!("expected expression error, got {:?}", other.err()),
        }
        // Antisymmetry is structural: i == j is rejected.
        let bad = HEISENBERG_SPEC.replace("bracket 1 2 -> 5 : rho", "bracket 1 1 -> 5 : rho");
        assert!(matches!(parse_spec(&bad), Err(SpecFileError::Parse(8, _))));
        // A non-Lie bracket table fails Jacobi validation with a witness.
        let bad = HEISENBERG_SPEC.replace(
            "bracket 3 4 -> 5 : rho",
            "bracket 1 3 -> 3 : rho\nbracket 2 3 -> 1 : 1",
        );
        match parse_spec(&bad) {
            Err(SpecFileError::Validation(e)) => {
                assert!(e.to_string().contains("Jacobi"));
            }
            other => panic!("expected Jacobi failure, got {:?}", other.err()),
        }
    }
}
