//! The on-disk graph document: a versioned JSON object with the vertex
//! count, a lexicographically sorted edge list, optional labels, and an
//! optional coloring array where `null` marks undefined vertices.

use std::path::Path;

use anyhow::{bail, Context, Result};
use coarsedist::coloring::{Coloring, PartialColoring};
use coarsedist::graph::Graph;
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub version: u32,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub coloring: Option<Vec<Option<u8>>>,
}

impl GraphDocument {
    pub fn from_graph(g: &Graph) -> GraphDocument {
        GraphDocument {
            version: FORMAT_VERSION,
            n: g.n(),
            edges: g.edges(),
            labels: g.labels().map(|l| l.to_vec()),
            coloring: None,
        }
    }

    pub fn with_total_coloring(mut self, phi: &Coloring) -> GraphDocument {
        self.coloring = Some(phi.values().iter().map(|&v| Some(v)).collect());
        self
    }

    pub fn with_partial_coloring(mut self, psi: &PartialColoring) -> GraphDocument {
        self.coloring = Some(psi.values().to_vec());
        self
    }

    pub fn to_graph(&self) -> Result<Graph> {
        if self.version != FORMAT_VERSION {
            bail!("unsupported document version {}", self.version);
        }
        let g = Graph::new(self.n, &self.edges)?;
        let g = match &self.labels {
            Some(labels) => g.with_labels(labels.clone())?,
            None => g,
        };
        if let Some(c) = &self.coloring {
            if c.len() != self.n {
                bail!("coloring has {} entries for {} vertices", c.len(), self.n);
            }
        }
        Ok(g)
    }

    /// The embedded coloring as a total 2-coloring; errors when absent or
    /// partial.
    pub fn total_coloring(&self) -> Result<Coloring> {
        let values = self
            .coloring
            .as_ref()
            .context("document carries no coloring")?;
        let total: Option<Vec<u8>> = values.iter().copied().collect();
        let total = total.context("coloring has undefined (null) entries")?;
        Ok(Coloring::new(total)?)
    }

    pub fn partial_coloring(&self) -> Result<PartialColoring> {
        let values = self
            .coloring
            .as_ref()
            .context("document carries no coloring")?;
        Ok(PartialColoring::new(values.clone())?)
    }

    pub fn load(path: &Path) -> Result<GraphDocument> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let doc: GraphDocument =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        Ok(doc)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }
}
