//! A small fixed corpus of rigid representations, embedded from
//! `corpus/*.txt`. Each file carries `#@ kind` and `#@ e` metadata lines.

use crate::io::{parse_bundle, AnyRep, IoError};
use crate::rep::DimVector;

const FILES: &[(&str, &str)] = &[
    ("a2_p1", include_str!("../corpus/a2_p1.txt")),
    ("a2_p1_p1", include_str!("../corpus/a2_p1_p1.txt")),
    ("a2_p1_s1", include_str!("../corpus/a2_p1_s1.txt")),
    ("a2_p1_s2", include_str!("../corpus/a2_p1_s2.txt")),
    ("a2_p1p1_s2", include_str!("../corpus/a2_p1p1_s2.txt")),
    ("a3_111", include_str!("../corpus/a3_111.txt")),
    ("a3_proj", include_str!("../corpus/a3_proj.txt")),
    ("a3v_p1_p3", include_str!("../corpus/a3v_p1_p3.txt")),
    ("c3_110", include_str!("../corpus/c3_110.txt")),
    ("d4_2111", include_str!("../corpus/d4_2111.txt")),
    ("k2_12", include_str!("../corpus/k2_12.txt")),
    ("k2_12x2", include_str!("../corpus/k2_12x2.txt")),
    ("k2_21", include_str!("../corpus/k2_21.txt")),
    ("k2_23", include_str!("../corpus/k2_23.txt")),
    ("k2_i1_i2", include_str!("../corpus/k2_i1_i2.txt")),
    ("k2_p1_23", include_str!("../corpus/k2_p1_23.txt")),
    ("k2_p1_p2", include_str!("../corpus/k2_p1_p2.txt")),
    ("k2_p1p1_p2", include_str!("../corpus/k2_p1p1_p2.txt")),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Exceptional,
    Decomposable,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub kind: Kind,
    pub text: &'static str,
    pub rep: AnyRep,
    pub es: Vec<DimVector>,
}

impl CorpusEntry {
    pub fn rational(&self) -> &crate::rep::Representation<crate::linalg::Rationals> {
        match &self.rep {
            AnyRep::Rational(m) => m,
            AnyRep::Prime(_) => panic!("corpus entries are rational"),
        }
    }
}

fn load(name: &'static str, text: &'static str) -> Result<CorpusEntry, IoError> {
    let rep = parse_bundle(text)?
        .reps
        .into_iter()
        .next()
        .ok_or(IoError::Missing("rep"))?;
    let mut kind = None;
    let mut es = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let Some(meta) = line.strip_prefix("#@") else {
            continue;
        };
        let bad = |msg: String| IoError::Syntax { line: i + 1, msg };
        match meta.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["kind", "exceptional"] => kind = Some(Kind::Exceptional),
            ["kind", "decomposable"] => kind = Some(Kind::Decomposable),
            ["e", e] => es.push(DimVector::parse(rep.quiver(), e).map_err(|x| bad(x.to_string()))?),
            other => return Err(bad(format!("bad metadata {other:?}"))),
        }
    }
    Ok(CorpusEntry {
        name,
        kind: kind.ok_or(IoError::Missing("kind metadata"))?,
        text,
        rep,
        es,
    })
}

pub fn entries() -> Vec<CorpusEntry> {
    FILES
        .iter()
        .map(|&(n, t)| load(n, t).unwrap_or_else(|e| panic!("corpus file {n}: {e}")))
        .collect()
}

pub fn entry(name: &str) -> Option<CorpusEntry> {
    entries().into_iter().find(|e| e.name == name)
}
