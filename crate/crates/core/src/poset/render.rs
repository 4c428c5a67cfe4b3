use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{GradedPoset, PosetElement};
use crate::error::Result;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetFile {
    elements: Vec<ElementEntry>,
    covers: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementEntry {
    id: String,
    dim: usize,
}

fn quote(id: &str) -> String {
    format!("\"{}\"", id.replace('\\', "\\\\").replace('"', "\\\""))
}

impl GradedPoset {
    /// `{"elements":[{"id","dim"}...],"covers":[["tau","sigma"]...]}`.
    pub fn to_json(&self) -> String {
        let file = PosetFile {
            elements: self
                .elements()
                .iter()
                .map(|e| ElementEntry { id: e.id.clone(), dim: e.dim })
                .collect(),
            covers: self
                .covers()
                .iter()
                .map(|&(lo, hi)| (self.element(lo).id.clone(), self.element(hi).id.clone()))
                .collect(),
        };
        let mut out = serde_json::to_string_pretty(&file).expect("poset serialises");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PosetFile = serde_json::from_str(text)?;
        let elements = file.elements.into_iter().map(|e| PosetElement::new(e.id, e.dim)).collect();
        GradedPoset::from_id_covers(elements, file.covers)
    }

    /// Hasse diagram in DOT: arrows run from covered to covering element and
    /// each dimension shares a rank.
    pub fn hasse_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n");
        if !self.is_empty() {
            out.push_str("  rankdir=BT;\n");
            for dim in 0..=self.max_dim().unwrap_or(0) {
                let members: Vec<String> = self
                    .elements()
                    .iter()
                    .filter(|e| e.dim == dim)
                    .map(|e| quote(&e.id))
                    .collect();
                if !members.is_empty() {
                    writeln!(out, "  {{ rank=same; {}; }}", members.join("; ")).unwrap();
                }
            }
            for &(lo, hi) in self.covers() {
                writeln!(out, "  {} -> {};", quote(&self.element(lo).id), quote(&self.element(hi).id)).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}
