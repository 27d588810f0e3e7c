use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactpoly::{Poly, PolyRing};

/// Reference values for one threefold: `N = ..`, `dimA = ..`, `degA = ..`
/// and `relation: ..` lines; `#` starts a comment.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpectedResults {
    pub n: Option<usize>,
    pub dim: Option<usize>,
    pub deg: Option<u64>,
    /// Relation texts with their line numbers.
    pub relations: Vec<(usize, String)>,
}

impl ExpectedResults {
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let syntax = |msg: String| Error::Syntax { line: line_no, msg };
            if let Some(rel) = line.strip_prefix("relation:") {
                out.relations.push((line_no, rel.trim().to_string()));
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| syntax(format!("expected `key = value`, found `{line}`")))?;
            let value = value.trim();
            let bad = || syntax(format!("expected a nonnegative integer, found `{value}`"));
            match key.trim() {
                "N" => out.n = Some(value.parse().map_err(|_| bad())?),
                "dimA" => out.dim = Some(value.parse().map_err(|_| bad())?),
                "degA" => out.deg = Some(value.parse().map_err(|_| bad())?),
                other => return Err(syntax(format!("unknown key `{other}`"))),
            }
        }
        Ok(out)
    }

    /// Relations parsed in `ring`.
    pub fn relations_in(&self, ring: &Arc<PolyRing>) -> Result<Vec<Poly>> {
        self.relations
            .iter()
            .map(|(line, s)| {
                Poly::parse(s, ring).map_err(|e| Error::Syntax {
                    line: *line,
                    msg: e.to_string(),
                })
            })
            .collect()
    }
}
