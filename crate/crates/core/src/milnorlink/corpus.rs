//! Bundled link diagrams.

use super::diagram::LinkDiagram;
use crate::error::{Error, Result};

const FILES: [(&str, &str); 5] = [
    ("hopf", include_str!("../../corpus/hopf.json")),
    ("borromean", include_str!("../../corpus/borromean.json")),
    ("whitehead", include_str!("../../corpus/whitehead.json")),
    ("unlink2", include_str!("../../corpus/unlink2.json")),
    ("trefoil", include_str!("../../corpus/trefoil.json")),
];

pub fn corpus_names() -> Vec<&'static str> {
    FILES.iter().map(|(n, _)| *n).collect()
}

pub fn corpus_diagram(name: &str) -> Result<LinkDiagram> {
    let (_, text) = FILES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Diagram(format!("no bundled diagram named {name:?}")))?;
    LinkDiagram::parse(text)
}

pub fn corpus() -> Vec<LinkDiagram> {
    FILES
        .iter()
        .map(|(_, text)| LinkDiagram::parse(text).expect("bundled diagrams are valid"))
        .collect()
}
