//! Plain-text formats for quivers, representations and graded
//! representations.
//!
//! A file holds one or more documents. Each document starts with a header
//! line: `quiver <name>`, `rep <name> over <field>`, or `cover-of <quiver>`
//! followed by a `rep` document over the cover window. A representation is
//! read against the most recent quiver document, which may come from an
//! earlier file of the same bundle.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use crate::covering::{Character, CoverWindow, GradedRepresentation};
use crate::linalg::{Field, FieldKind, Matrix, PrimeField, Rationals};
use crate::quiver::Quiver;
use crate::rep::{DimVector, Representation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{path}: {source}")]
    File { path: String, source: Box<IoError> },
    #[error("cannot read {path}: {msg}")]
    Read { path: String, msg: String },
    #[error("no {0} document found")]
    Missing(&'static str),
}

fn syntax(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// A representation over whichever field its header names.
#[derive(Debug, Clone)]
pub enum AnyRep {
    Rational(Representation<Rationals>),
    Prime(Representation<PrimeField>),
}

#[derive(Debug, Clone)]
pub enum AnyGraded {
    Rational(GradedRepresentation<Rationals>),
    Prime(GradedRepresentation<PrimeField>),
}

impl AnyRep {
    pub fn name(&self) -> &str {
        match self {
            AnyRep::Rational(m) => m.name(),
            AnyRep::Prime(m) => m.name(),
        }
    }
    pub fn quiver(&self) -> &Quiver {
        match self {
            AnyRep::Rational(m) => m.quiver(),
            AnyRep::Prime(m) => m.quiver(),
        }
    }
}

impl fmt::Display for AnyRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyRep::Rational(m) => write!(f, "{m}"),
            AnyRep::Prime(m) => write!(f, "{m}"),
        }
    }
}

/// Everything parsed from a list of files, in document order.
#[derive(Debug, Clone, Default)]
pub struct Bundle {
    pub quivers: Vec<Quiver>,
    pub reps: Vec<AnyRep>,
    pub graded: Vec<AnyGraded>,
}

impl Bundle {
    pub fn first_rep(&self) -> Result<&AnyRep, IoError> {
        self.reps.first().ok_or(IoError::Missing("rep"))
    }
    pub fn first_graded(&self) -> Result<&AnyGraded, IoError> {
        self.graded.first().ok_or(IoError::Missing("graded rep"))
    }
    pub fn last_quiver(&self) -> Result<&Quiver, IoError> {
        self.quivers.last().ok_or(IoError::Missing("quiver"))
    }
}

struct RawRep {
    line: usize,
    name: String,
    field: FieldKind,
    dims: Vec<(usize, String, usize)>,
    mats: Vec<(usize, String, Vec<(usize, Vec<String>)>)>,
}

enum Block {
    Quiver(Quiver),
    Rep(RawRep),
}

fn is_header(word: &str) -> bool {
    matches!(word, "quiver" | "rep" | "cover-of")
}

fn strip(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

/// Parses every document of `text`, appending to `bundle`.
pub fn parse_into(bundle: &mut Bundle, text: &str) -> Result<(), IoError> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip(l)))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let mut i = 0;
    let mut pending_cover: Option<(usize, String)> = None;
    while i < lines.len() {
        let (ln, line) = lines[i];
        let words: Vec<&str> = line.split_whitespace().collect();
        let end = (i + 1..lines.len())
            .find(|&j| is_header(lines[j].1.split_whitespace().next().unwrap_or("")))
            .unwrap_or(lines.len());
        match words[0] {
            "cover-of" => {
                if words.len() != 2 {
                    return Err(syntax(ln, "expected `cover-of <quiver-name>`"));
                }
                if end != i + 1 {
                    return Err(syntax(
                        lines[i + 1].0,
                        "`cover-of` must be followed by a `rep` document",
                    ));
                }
                pending_cover = Some((ln, words[1].to_string()));
                i = end;
                continue;
            }
            "quiver" => {
                if pending_cover.is_some() {
                    return Err(syntax(
                        ln,
                        "`cover-of` must be followed by a `rep` document",
                    ));
                }
                if let Block::Quiver(q) = parse_quiver_block(&lines[i..end])? {
                    bundle.quivers.push(q);
                }
            }
            "rep" => {
                if let Block::Rep(raw) = parse_rep_block(&lines[i..end])? {
                    match pending_cover.take() {
                        Some((cl, base_name)) => {
                            let base = bundle
                                .quivers
                                .iter()
                                .rev()
                                .find(|q| q.name() == base_name)
                                .ok_or_else(|| {
                                    syntax(cl, format!("unknown base quiver `{base_name}`"))
                                })?
                                .clone();
                            bundle.graded.push(resolve_graded(&raw, &base)?);
                        }
                        None => {
                            let q = bundle.quivers.last().ok_or_else(|| {
                                syntax(ln, "representation before any quiver document")
                            })?;
                            bundle.reps.push(resolve_any(&raw, q)?);
                        }
                    }
                }
            }
            other => return Err(syntax(ln, format!("unknown keyword `{other}`"))),
        }
        i = end;
    }
    if let Some((cl, _)) = pending_cover {
        return Err(syntax(
            cl,
            "`cover-of` must be followed by a `rep` document",
        ));
    }
    Ok(())
}

pub fn parse_bundle(text: &str) -> Result<Bundle, IoError> {
    let mut b = Bundle::default();
    parse_into(&mut b, text)?;
    Ok(b)
}

/// Parses the files in order into one bundle; errors name the file.
pub fn parse_files<P: AsRef<Path>>(paths: &[P]) -> Result<Bundle, IoError> {
    let mut b = Bundle::default();
    for p in paths {
        let path = p.as_ref().display().to_string();
        let text = std::fs::read_to_string(p.as_ref()).map_err(|e| IoError::Read {
            path: path.clone(),
            msg: e.to_string(),
        })?;
        parse_into(&mut b, &text).map_err(|e| IoError::File {
            path,
            source: Box::new(e),
        })?;
    }
    Ok(b)
}

pub fn parse_quiver(text: &str) -> Result<Quiver, IoError> {
    let b = parse_bundle(text)?;
    b.quivers
        .into_iter()
        .next()
        .ok_or(IoError::Missing("quiver"))
}

fn parse_quiver_block(lines: &[(usize, &str)]) -> Result<Block, IoError> {
    let (ln, head) = lines[0];
    let words: Vec<&str> = head.split_whitespace().collect();
    if words.len() != 2 {
        return Err(syntax(ln, "expected `quiver <name>`"));
    }
    let mut q = Quiver::new(words[1]);
    let mut seen_arrow = false;
    for &(ln, line) in &lines[1..] {
        let w: Vec<&str> = line.split_whitespace().collect();
        match (w[0], w.len()) {
            ("vertex", 2) => {
                if seen_arrow {
                    return Err(syntax(ln, "vertices must precede arrows"));
                }
                q.add_vertex(w[1]).map_err(|e| syntax(ln, e.to_string()))?;
            }
            ("arrow", 4) => {
                seen_arrow = true;
                for end in [w[2], w[3]] {
                    if q.vertex(end).is_none() {
                        return Err(syntax(
                            ln,
                            format!("arrow `{}` references undeclared vertex `{end}`", w[1]),
                        ));
                    }
                }
                q.add_arrow(w[1], w[2], w[3])
                    .map_err(|e| syntax(ln, e.to_string()))?;
            }
            ("vertex", _) => return Err(syntax(ln, "expected `vertex <id>`")),
            ("arrow", _) => return Err(syntax(ln, "expected `arrow <id> <source> <target>`")),
            (other, _) => return Err(syntax(ln, format!("unknown keyword `{other}` in quiver"))),
        }
    }
    Ok(Block::Quiver(q))
}

fn parse_rep_block(lines: &[(usize, &str)]) -> Result<Block, IoError> {
    let (ln, head) = lines[0];
    let words: Vec<&str> = head.split_whitespace().collect();
    if words.len() != 4 || words[2] != "over" {
        return Err(syntax(ln, "expected `rep <name> over <field>`"));
    }
    let field = FieldKind::parse(words[3]).map_err(|e| syntax(ln, e.to_string()))?;
    let mut raw = RawRep {
        line: ln,
        name: words[1].to_string(),
        field,
        dims: Vec::new(),
        mats: Vec::new(),
    };
    for &(ln, line) in &lines[1..] {
        let w: Vec<&str> = line.split_whitespace().collect();
        match w[0] {
            "dim" => {
                if w.len() != 3 {
                    return Err(syntax(ln, "expected `dim <vertex> <n>`"));
                }
                if !raw.mats.is_empty() {
                    return Err(syntax(ln, "`dim` lines must precede `mat` blocks"));
                }
                let n = w[2]
                    .parse::<usize>()
                    .map_err(|_| syntax(ln, format!("bad dimension `{}`", w[2])))?;
                raw.dims.push((ln, w[1].to_string(), n));
            }
            "mat" => {
                if w.len() != 2 {
                    return Err(syntax(ln, "expected `mat <arrow>`"));
                }
                raw.mats.push((ln, w[1].to_string(), Vec::new()));
            }
            _ => match raw.mats.last_mut() {
                Some((_, _, rows)) => rows.push((ln, w.iter().map(|s| s.to_string()).collect())),
                None => {
                    return Err(syntax(
                        ln,
                        format!("unexpected `{}` outside a `mat` block", w[0]),
                    ))
                }
            },
        }
    }
    Ok(Block::Rep(raw))
}

fn resolve<F: Field>(raw: &RawRep, q: &Quiver, field: &F) -> Result<Representation<F>, IoError> {
    let mut dims = vec![0usize; q.vertex_count()];
    let mut declared = vec![false; q.vertex_count()];
    for (ln, id, n) in &raw.dims {
        let v = q.vertex(id).ok_or_else(|| {
            syntax(
                *ln,
                format!("unknown vertex `{id}` in quiver `{}`", q.name()),
            )
        })?;
        if declared[v] {
            return Err(syntax(*ln, format!("duplicate `dim` for vertex `{id}`")));
        }
        declared[v] = true;
        dims[v] = *n;
    }
    let mut maps: Vec<Option<Matrix<F>>> = vec![None; q.arrow_count()];
    for (ln, id, rows) in &raw.mats {
        let a = q.arrow_by_id(id).ok_or_else(|| {
            syntax(
                *ln,
                format!("unknown arrow `{id}` in quiver `{}`", q.name()),
            )
        })?;
        if maps[a].is_some() {
            return Err(syntax(*ln, format!("duplicate `mat` for arrow `{id}`")));
        }
        let arr = q.arrow(a);
        let (r, c) = (dims[arr.target], dims[arr.source]);
        if rows.len() != r {
            let at = rows.get(r).map_or(*ln, |x| x.0);
            return Err(syntax(
                at,
                format!(
                    "arrow `{id}` expects a {r}x{c} matrix but {} rows were given",
                    rows.len()
                ),
            ));
        }
        let mut entries = Vec::with_capacity(r * c);
        for (rl, row) in rows {
            if row.len() != c {
                return Err(syntax(
                    *rl,
                    format!(
                        "arrow `{id}` expects a {r}x{c} matrix but a row has {} entries",
                        row.len()
                    ),
                ));
            }
            for x in row {
                entries.push(
                    field
                        .parse_elem(x)
                        .map_err(|e| syntax(*rl, e.to_string()))?,
                );
            }
        }
        maps[a] = Some(Matrix::new(field.clone(), r, c, entries));
    }
    let maps = q
        .arrows()
        .iter()
        .zip(maps)
        .map(|(arr, m)| match m {
            Some(m) => Ok(m),
            None => {
                let (r, c) = (dims[arr.target], dims[arr.source]);
                if r == 0 || c == 0 {
                    Ok(Matrix::zeros(field, r, c))
                } else {
                    Err(syntax(
                        raw.line,
                        format!("missing `mat {}` ({r}x{c})", arr.id),
                    ))
                }
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Representation::new(
        raw.name.clone(),
        q.clone(),
        field.clone(),
        DimVector(dims),
        maps,
    )
    .map_err(|e| syntax(raw.line, e.to_string()))
}

fn resolve_any(raw: &RawRep, q: &Quiver) -> Result<AnyRep, IoError> {
    Ok(match raw.field {
        FieldKind::Rational => AnyRep::Rational(resolve(raw, q, &Rationals)?),
        FieldKind::Prime(p) => AnyRep::Prime(resolve(raw, q, &p)?),
    })
}

/// Splits `i@a:1,b:-1` into the base vertex and its character.
fn parse_point(base: &Quiver, id: &str, ln: usize) -> Result<(usize, Character), IoError> {
    let (v, chi) = id
        .split_once('@')
        .ok_or_else(|| syntax(ln, format!("window vertex `{id}` is not of the form `i@c`")))?;
    let v = base
        .vertex(v)
        .ok_or_else(|| syntax(ln, format!("unknown base vertex `{v}` in `{id}`")))?;
    let chi = Character::parse(base, chi).map_err(|e| syntax(ln, e.to_string()))?;
    Ok((v, chi))
}

fn resolve_graded(raw: &RawRep, base: &Quiver) -> Result<AnyGraded, IoError> {
    let mut points = Vec::new();
    let mut canonical: HashMap<String, String> = HashMap::new();
    for (ln, id, _) in &raw.dims {
        let p = parse_point(base, id, *ln)?;
        let name = format!("{}@{}", base.vertex_id(p.0), p.1.format(base));
        canonical.insert(id.clone(), name);
        points.push(p);
    }
    let window = CoverWindow::from_points(base, points);
    let mut normalised = RawRep {
        line: raw.line,
        name: raw.name.clone(),
        field: raw.field,
        dims: raw
            .dims
            .iter()
            .map(|(ln, id, n)| (*ln, canonical[id].clone(), *n))
            .collect(),
        mats: Vec::new(),
    };
    for (ln, id, rows) in &raw.mats {
        let (a, chi) = id
            .split_once('@')
            .ok_or_else(|| syntax(*ln, format!("window arrow `{id}` is not of the form `a@c`")))?;
        let arrow = base
            .arrow_by_id(a)
            .ok_or_else(|| syntax(*ln, format!("unknown base arrow `{a}` in `{id}`")))?;
        let chi = Character::parse(base, chi).map_err(|e| syntax(*ln, e.to_string()))?;
        let name = format!("{}@{}", base.arrow(arrow).id, chi.format(base));
        normalised.mats.push((*ln, name, rows.clone()));
    }
    let q = window.quiver().clone();
    Ok(match raw.field {
        FieldKind::Rational => AnyGraded::Rational(
            GradedRepresentation::new(window, resolve(&normalised, &q, &Rationals)?)
                .map_err(|e| syntax(raw.line, e.to_string()))?,
        ),
        FieldKind::Prime(p) => AnyGraded::Prime(
            GradedRepresentation::new(window, resolve(&normalised, &q, &p)?)
                .map_err(|e| syntax(raw.line, e.to_string()))?,
        ),
    })
}

/// Text form of a graded representation: the base quiver, the `cover-of`
/// header and the representation restricted to its support.
pub fn format_graded<F: Field>(g: &GradedRepresentation<F>) -> String {
    let (support, _) = g.support_rep();
    format!("{}cover-of {}\n{}", g.base(), g.base().name(), support)
}
