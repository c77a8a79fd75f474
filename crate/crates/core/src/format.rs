//! Line-oriented text format for maps, patches and expansion patches.
//!
//! ```text
//! # comment lines are kept and written back first
//! format 1
//! kind expansion_patch
//! r 4
//! dart 0 alpha 1 sigma 2
//! ...
//! outer_face 5
//! role i0 3
//! ...
//! os 2
//! marker diamond 4 0 1
//! label 0 some text
//! ```
//!
//! Dart ids are dense, vertex/edge/face ids are the orbit ids the map
//! derives from its tables. The writer emits the canonical form: darts by
//! id, roles in walk order (`i_0..i_m`, `o_0..o_n`, `i'_m..i'_0`), markers
//! and labels in stored order.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::expansion::{validate_expansion_patch, ExpansionError, ExpansionPatch, ExpansionRoles};
use crate::growth::{GrowthMarker, MarkerKind};
use crate::map::{Dart, MapError, OrientedMap};
use crate::patch::{Patch, PatchError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("validation failed: {0}")]
    Validation(#[from] ValidationError),
}

/// A structurally well-formed file whose content fails a validator.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("{name}: {0}", name = variant_name(.0))]
    Map(MapError),
    #[error("{name}: {0}", name = variant_name(.0))]
    Patch(PatchError),
    #[error("{name}: {0}", name = variant_name(.0))]
    Expansion(ExpansionError),
    #[error("BadMarker: {0}")]
    Marker(String),
}

impl ValidationError {
    /// Name of the failing check, e.g. `NotInvolution`.
    pub fn name(&self) -> String {
        match self {
            ValidationError::Map(e) => variant_name(e),
            ValidationError::Patch(e) => variant_name(e),
            ValidationError::Expansion(e) => variant_name(e),
            ValidationError::Marker(_) => "BadMarker".into(),
        }
    }
}

fn variant_name(e: &impl std::fmt::Debug) -> String {
    let s = format!("{e:?}");
    let end = s.find(|c: char| !c.is_alphanumeric()).unwrap_or(s.len());
    s[..end].to_string()
}

#[derive(Clone, Debug)]
pub enum Body {
    Map(OrientedMap),
    Patch(Patch),
    Expansion(ExpansionPatch),
}

impl Body {
    pub fn kind(&self) -> &'static str {
        match self {
            Body::Map(_) => "map",
            Body::Patch(_) => "patch",
            Body::Expansion(_) => "expansion_patch",
        }
    }

    pub fn map(&self) -> &OrientedMap {
        match self {
            Body::Map(m) => m,
            Body::Patch(p) => p.map(),
            Body::Expansion(e) => e.patch().map(),
        }
    }

    pub fn patch(&self) -> Option<&Patch> {
        match self {
            Body::Map(_) => None,
            Body::Patch(p) => Some(p),
            Body::Expansion(e) => Some(e.patch()),
        }
    }
}

/// A parsed file: leading comment lines (without `#`) plus the object.
#[derive(Clone, Debug)]
pub struct Document {
    pub comments: Vec<String>,
    pub body: Body,
}

impl Document {
    pub fn new(body: Body) -> Self {
        Self { comments: Vec::new(), body }
    }

    pub fn with_comments(mut self, comments: impl IntoIterator<Item = impl Into<String>>) -> Self {
        self.comments = comments.into_iter().map(Into::into).collect();
        self
    }
}

#[derive(Default)]
struct Raw {
    format: Option<u32>,
    kind: Option<String>,
    r: Option<u32>,
    darts: BTreeMap<Dart, (Dart, Dart)>,
    outer: Option<Dart>,
    roles_i: Vec<(usize, usize)>,
    roles_o: Vec<(usize, usize)>,
    roles_ip: Vec<(usize, usize)>,
    os: Option<usize>,
    markers: Vec<(MarkerKind, usize, usize, usize)>,
    labels: BTreeMap<Dart, String>,
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, FormatError> {
    let t = tok.ok_or_else(|| FormatError::Syntax { line, msg: format!("missing {what}") })?;
    t.parse().map_err(|_| FormatError::Syntax { line, msg: format!("bad {what} `{t}`") })
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

fn set_once<T>(slot: &mut Option<T>, v: T, line: usize, key: &str) -> Result<(), FormatError> {
    if slot.replace(v).is_some() {
        return Err(syntax(line, format!("`{key}` given twice")));
    }
    Ok(())
}

pub fn parse(text: &str) -> Result<Document, FormatError> {
    let mut raw = Raw::default();
    let mut comments = Vec::new();
    for (idx, full) in text.lines().enumerate() {
        let line = idx + 1;
        if let Some(c) = full.strip_prefix('#') {
            comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
            continue;
        }
        let trimmed = full.trim();
        if trimmed.is_empty() {
            continue;
        }
        let mut tok = trimmed.split_whitespace();
        let key = tok.next().expect("non-empty line");
        match key {
            "format" => {
                let v: u32 = num(tok.next(), line, "format version")?;
                if v != 1 {
                    return Err(syntax(line, format!("unsupported format version {v}")));
                }
                set_once(&mut raw.format, v, line, key)?;
            }
            "kind" => {
                let k = tok.next().ok_or_else(|| syntax(line, "missing kind"))?;
                if !matches!(k, "map" | "patch" | "expansion_patch") {
                    return Err(syntax(line, format!("unknown kind `{k}`")));
                }
                set_once(&mut raw.kind, k.to_string(), line, key)?;
            }
            "r" => {
                let r = num(tok.next(), line, "r")?;
                set_once(&mut raw.r, r, line, key)?;
            }
            "dart" => {
                let d: Dart = num(tok.next(), line, "dart id")?;
                if tok.next() != Some("alpha") {
                    return Err(syntax(line, "expected `alpha`"));
                }
                let a = num(tok.next(), line, "alpha")?;
                if tok.next() != Some("sigma") {
                    return Err(syntax(line, "expected `sigma`"));
                }
                let s = num(tok.next(), line, "sigma")?;
                if raw.darts.insert(d, (a, s)).is_some() {
                    return Err(syntax(line, format!("dart {d} given twice")));
                }
            }
            "outer_face" => {
                let d = num(tok.next(), line, "outer face dart")?;
                set_once(&mut raw.outer, d, line, key)?;
            }
            "role" => {
                let name = tok.next().ok_or_else(|| syntax(line, "missing role name"))?;
                let v: usize = num(tok.next(), line, "vertex")?;
                let (list, index) = if let Some(i) = name.strip_prefix("i'") {
                    (&mut raw.roles_ip, i)
                } else if let Some(i) = name.strip_prefix('i') {
                    (&mut raw.roles_i, i)
                } else if let Some(i) = name.strip_prefix('o') {
                    (&mut raw.roles_o, i)
                } else {
                    return Err(syntax(line, format!("unknown role `{name}`")));
                };
                let index: usize = index.parse().map_err(|_| syntax(line, format!("unknown role `{name}`")))?;
                list.push((index, v));
            }
            "os" => {
                let s = num(tok.next(), line, "s")?;
                set_once(&mut raw.os, s, line, key)?;
            }
            "marker" => {
                let kind: MarkerKind = tok
                    .next()
                    .ok_or_else(|| syntax(line, "missing marker kind"))?
                    .parse()
                    .map_err(|e: String| syntax(line, e))?;
                let a = num(tok.next(), line, "anchor")?;
                let f1 = num(tok.next(), line, "target face")?;
                let f2 = num(tok.next(), line, "target face")?;
                raw.markers.push((kind, a, f1, f2));
            }
            "label" => {
                let d = num(tok.next(), line, "dart id")?;
                let rest = trimmed["label".len()..].trim_start();
                let text = rest[rest.find(char::is_whitespace).unwrap_or(rest.len())..].trim();
                if text.is_empty() {
                    return Err(syntax(line, "missing label text"));
                }
                raw.labels.insert(d, text.to_string());
            }
            other => return Err(syntax(line, format!("unknown key `{other}`"))),
        }
        if let Some(extra) = tok.next() {
            if key != "label" {
                return Err(syntax(line, format!("unexpected `{extra}`")));
            }
        }
    }
    let body = build(raw, text.lines().count())?;
    Ok(Document { comments, body })
}

fn indexed(list: Vec<(usize, usize)>, what: &str, last: usize) -> Result<Vec<usize>, FormatError> {
    let mut map: HashMap<usize, usize> = HashMap::new();
    for (i, v) in list {
        if map.insert(i, v).is_some() {
            return Err(syntax(last, format!("role {what}{i} given twice")));
        }
    }
    (0..map.len())
        .map(|i| map.get(&i).copied().ok_or_else(|| syntax(last, format!("role {what}{i} missing"))))
        .collect()
}

fn build(raw: Raw, last: usize) -> Result<Body, FormatError> {
    if raw.format.is_none() {
        return Err(syntax(1, "missing `format` line"));
    }
    let kind = raw.kind.ok_or_else(|| syntax(last, "missing `kind` line"))?;
    let n = raw.darts.len();
    if let Some((&d, _)) = raw.darts.iter().enumerate().find(|(i, (d, _))| *i != **d).map(|(_, x)| x) {
        return Err(syntax(last, format!("dart ids must be 0..{n}, found {d}")));
    }
    let alpha = raw.darts.values().map(|x| x.0).collect();
    let sigma = raw.darts.values().map(|x| x.1).collect();
    let map = OrientedMap::new(alpha, sigma).map_err(ValidationError::Map)?.with_labels(raw.labels);
    let is_patch = kind != "map";
    if !is_patch
        && (raw.r.is_some() || raw.outer.is_some() || !raw.markers.is_empty()) {
            return Err(syntax(last, "maps take no r, outer_face or markers"));
        }
    if kind != "expansion_patch" && (!raw.roles_i.is_empty() || !raw.roles_o.is_empty() || raw.os.is_some()) {
        return Err(syntax(last, format!("kind {kind} takes no roles")));
    }
    if !is_patch {
        return Ok(Body::Map(map));
    }
    let r = raw.r.ok_or_else(|| syntax(last, "missing `r` line"))?;
    let outer_dart = raw.outer.ok_or_else(|| syntax(last, "missing `outer_face` line"))?;
    if outer_dart >= n {
        return Err(ValidationError::Patch(PatchError::BadOuterFace(outer_dart)).into());
    }
    let outer = map.face_of(outer_dart);
    let patch = Patch::new(map, outer, r).map_err(ValidationError::Patch)?;
    let mut markers = Vec::new();
    for (kind, anchor, f1, f2) in raw.markers {
        let m = patch.map();
        let limit = match kind {
            MarkerKind::Vertex => m.num_vertices(),
            _ => m.num_edges(),
        };
        if anchor >= limit {
            return Err(ValidationError::Marker(format!("{kind} anchor {anchor} out of range")).into());
        }
        for f in [f1, f2] {
            if f >= m.num_faces() || f == outer {
                return Err(ValidationError::Marker(format!("target {f} is not an inner face")).into());
            }
        }
        markers.push(GrowthMarker { kind, anchor, target1: f1, target2: f2 });
    }
    let patch = patch.with_markers(markers);
    if kind == "patch" {
        return Ok(Body::Patch(patch));
    }
    let roles = ExpansionRoles {
        i: indexed(raw.roles_i, "i", last)?,
        o: indexed(raw.roles_o, "o", last)?,
        i_prime: indexed(raw.roles_ip, "i'", last)?,
        s: raw.os.ok_or_else(|| syntax(last, "missing `os` line"))?,
    };
    if roles.i.is_empty() || roles.o.is_empty() {
        return Err(syntax(last, "expansion patch needs i and o roles"));
    }
    let e = validate_expansion_patch(patch, roles).map_err(ValidationError::Expansion)?;
    Ok(Body::Expansion(e))
}

pub fn write(doc: &Document) -> String {
    let mut out = String::new();
    for c in &doc.comments {
        if c.is_empty() {
            out.push_str("#\n");
        } else {
            let _ = writeln!(out, "# {c}");
        }
    }
    let _ = writeln!(out, "format 1");
    let _ = writeln!(out, "kind {}", doc.body.kind());
    if let Some(p) = doc.body.patch() {
        let _ = writeln!(out, "r {}", p.r());
    }
    let m = doc.body.map();
    for d in 0..m.num_darts() {
        let _ = writeln!(out, "dart {d} alpha {} sigma {}", m.alpha(d), m.sigma(d));
    }
    if let Some(p) = doc.body.patch() {
        let _ = writeln!(out, "outer_face {}", m.face_darts(p.outer_face())[0]);
    }
    if let Body::Expansion(e) = &doc.body {
        let roles = e.roles();
        for (l, v) in roles.i.iter().enumerate() {
            let _ = writeln!(out, "role i{l} {v}");
        }
        for (j, v) in roles.o.iter().enumerate() {
            let _ = writeln!(out, "role o{j} {v}");
        }
        for (l, v) in roles.i_prime.iter().enumerate().rev() {
            let _ = writeln!(out, "role i'{l} {v}");
        }
        let _ = writeln!(out, "os {}", roles.s);
    }
    if let Some(p) = doc.body.patch() {
        for mk in p.markers() {
            let _ = writeln!(out, "marker {} {} {} {}", mk.kind, mk.anchor, mk.target1, mk.target2);
        }
    }
    for (d, text) in m.labels() {
        let _ = writeln!(out, "label {d} {text}");
    }
    out
}

/// Plain adjacency list: one line per vertex, `v: n1 n2 ...` in rotation order.
pub fn adjacency_list(m: &OrientedMap) -> String {
    let mut out = String::new();
    for v in 0..m.num_vertices() {
        let ns: Vec<String> = m.vertex_darts(v).iter().map(|&d| m.target(d).to_string()).collect();
        let _ = writeln!(out, "{v}: {}", ns.join(" "));
    }
    out
}
