//! JSON instance files.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra3LR, AlgebraBuilder, GradedBasis, Space};
use crate::group::GroupSpec;
use crate::linalg::{format_rational, parse_rational, Vector};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

fn field(field: impl Into<String>, message: impl Into<String>) -> ParseError {
    ParseError::Field {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub moduli: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDoc {
    pub label: String,
    pub degree: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// One table entry: argument labels and a sparse value keyed by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub args: Vec<String>,
    pub value: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub group: GroupDoc,
    #[serde(rename = "L")]
    pub l: Vec<BasisDoc>,
    #[serde(rename = "A")]
    pub a: Vec<BasisDoc>,
    #[serde(default)]
    pub bracket: Vec<EntryDoc>,
    #[serde(default)]
    pub amul: Vec<EntryDoc>,
    #[serde(default)]
    pub action: Vec<EntryDoc>,
    #[serde(default)]
    pub rho: Vec<EntryDoc>,
}

pub fn read_instance(path: &Path) -> Result<Algebra3LR, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_instance(&text)
}

pub fn parse_instance(text: &str) -> Result<Algebra3LR, ParseError> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| ParseError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    from_doc(&doc)
}

fn basis(group: &GroupSpec, docs: &[BasisDoc], space: Space) -> Result<GradedBasis, ParseError> {
    let name = space.name();
    let mut degrees = Vec::new();
    for (i, b) in docs.iter().enumerate() {
        let at = format!("{name}[{i}].degree");
        if b.degree.len() != group.rank() {
            return Err(field(
                at,
                format!(
                    "degree arity mismatch: expected {}, found {}",
                    group.rank(),
                    b.degree.len()
                ),
            ));
        }
        let d = group.elem(&b.degree).map_err(|e| field(&at, e.to_string()))?;
        if d.coords() != b.degree.as_slice() {
            return Err(field(at, "degree coordinates must be reduced into [0, m)"));
        }
        degrees.push(d);
    }
    let labels = docs.iter().map(|b| b.label.clone()).collect();
    GradedBasis::new(group, labels, degrees, space).map_err(|e| field(name, e.to_string()))
}

fn lookup(basis: &GradedBasis, label: &str, at: &str) -> Result<usize, ParseError> {
    basis
        .index(label)
        .ok_or_else(|| field(at, format!("unknown label {label:?}")))
}

fn value(basis: &GradedBasis, map: &BTreeMap<String, String>, at: &str) -> Result<Vector, ParseError> {
    let mut v = Vector::zeros(basis.len());
    for (label, coeff) in map {
        let i = lookup(basis, label, at)?;
        let c = parse_rational(coeff).map_err(|e| field(format!("{at}.{label}"), e.to_string()))?;
        v.set(i, c);
    }
    Ok(v)
}

fn args<'a>(entry: &'a EntryDoc, n: usize, at: &str) -> Result<&'a [String], ParseError> {
    if entry.args.len() != n {
        return Err(field(
            format!("{at}.args"),
            format!("expected {n} labels, found {}", entry.args.len()),
        ));
    }
    Ok(&entry.args)
}

pub fn from_doc(doc: &InstanceDoc) -> Result<Algebra3LR, ParseError> {
    let group = GroupSpec::new(doc.group.moduli.clone()).map_err(|e| field("group.moduli", e.to_string()))?;
    let l = basis(&group, &doc.l, Space::L)?;
    let a = basis(&group, &doc.a, Space::A)?;
    let mut b = AlgebraBuilder::new(group, l.clone(), a.clone());
    let model = |at: &str, e: crate::algebra::ModelError| field(at, e.to_string());

    let mut seen = BTreeSet::new();
    for (n, e) in doc.bracket.iter().enumerate() {
        let at = format!("bracket[{n}]");
        let names = args(e, 3, &at)?;
        let i = lookup(&l, &names[0], &at)?;
        let j = lookup(&l, &names[1], &at)?;
        let k = lookup(&l, &names[2], &at)?;
        if !(i < j && j < k) {
            return Err(field(format!("{at}.args"), "non-canonical triple order"));
        }
        if !seen.insert((i, j, k)) {
            return Err(field(at, "duplicate entry"));
        }
        b.set_bracket(i, j, k, value(&l, &e.value, &at)?)
            .map_err(|x| model(&at, x))?;
    }
    let mut seen = BTreeSet::new();
    for (n, e) in doc.amul.iter().enumerate() {
        let at = format!("amul[{n}]");
        let names = args(e, 2, &at)?;
        let i = lookup(&a, &names[0], &at)?;
        let j = lookup(&a, &names[1], &at)?;
        if i > j {
            return Err(field(format!("{at}.args"), "non-canonical pair order"));
        }
        if !seen.insert((i, j)) {
            return Err(field(at, "duplicate entry"));
        }
        b.set_amul(i, j, value(&a, &e.value, &at)?).map_err(|x| model(&at, x))?;
    }
    let mut seen = BTreeSet::new();
    for (n, e) in doc.action.iter().enumerate() {
        let at = format!("action[{n}]");
        let names = args(e, 2, &at)?;
        let i = lookup(&a, &names[0], &at)?;
        let x = lookup(&l, &names[1], &at)?;
        if !seen.insert((i, x)) {
            return Err(field(at, "duplicate entry"));
        }
        b.set_action(i, x, value(&l, &e.value, &at)?)
            .map_err(|x| model(&at, x))?;
    }
    let mut seen = BTreeSet::new();
    for (n, e) in doc.rho.iter().enumerate() {
        let at = format!("rho[{n}]");
        let names = args(e, 3, &at)?;
        let x = lookup(&l, &names[0], &at)?;
        let y = lookup(&l, &names[1], &at)?;
        let i = lookup(&a, &names[2], &at)?;
        if !seen.insert((x, y, i)) {
            return Err(field(at, "duplicate entry"));
        }
        b.set_rho(x, y, i, value(&a, &e.value, &at)?)
            .map_err(|x| model(&at, x))?;
    }
    Ok(b.build())
}

fn entry(labels: Vec<&str>, v: &Vector, basis: &GradedBasis) -> EntryDoc {
    EntryDoc {
        args: labels.into_iter().map(String::from).collect(),
        value: v
            .nonzero()
            .map(|(i, c)| (basis.label(i).to_string(), format_rational(c)))
            .collect(),
        note: None,
    }
}

pub fn to_doc(alg: &Algebra3LR) -> InstanceDoc {
    let (l, a) = (alg.l(), alg.a());
    let basis_docs = |b: &GradedBasis| {
        (0..b.len())
            .map(|i| BasisDoc {
                label: b.label(i).to_string(),
                degree: b.degree(i).coords().to_vec(),
                note: None,
            })
            .collect()
    };
    InstanceDoc {
        description: None,
        group: GroupDoc {
            moduli: alg.group().moduli().to_vec(),
        },
        l: basis_docs(l),
        a: basis_docs(a),
        bracket: alg
            .bracket_table()
            .iter()
            .map(|(&(i, j, k), v)| entry(vec![l.label(i), l.label(j), l.label(k)], v, l))
            .collect(),
        amul: alg
            .amul_table()
            .iter()
            .map(|(&(i, j), v)| entry(vec![a.label(i), a.label(j)], v, a))
            .collect(),
        action: alg
            .action_table()
            .iter()
            .map(|(&(i, x), v)| entry(vec![a.label(i), l.label(x)], v, l))
            .collect(),
        rho: alg
            .rho_table()
            .iter()
            .map(|(&(x, y, i), v)| entry(vec![l.label(x), l.label(y), a.label(i)], v, a))
            .collect(),
    }
}

/// Pretty-printed instance file, newline terminated.
pub fn emit_instance(alg: &Algebra3LR) -> String {
    let mut s = serde_json::to_string_pretty(&to_doc(alg)).expect("serializable");
    s.push('\n');
    s
}
