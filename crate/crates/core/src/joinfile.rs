//! JSON input describing a generalized join: a weighted host graph plus one
//! component per host vertex.
//!
//! ```json
//! {
//!   "n": null,
//!   "host": {"labels": [0, 1], "weights": [2, 1], "edges": [[0, 1]]},
//!   "components": [{"kind": "empty"}, {"kind": "complete"}]
//! }
//! ```
//!
//! Host edges are label pairs. A component is given by `kind`
//! (`complete`/`empty`, order taken from the host weight), by an explicit
//! `spectrum` in the spectrum schema, or by `edges` on local vertices
//! `0..weight`. Explicit edges are what `check` uses to assemble the full
//! graph; for `kind` components they are implied.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphcore::{self, ClassKind, Graph};
use crate::oracle;
use crate::spectra::{self, FloatSpectrum, SpectrumMultiset, WeightedHostGraph};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HostDoc {
    pub labels: Vec<u64>,
    pub weights: Vec<u64>,
    #[serde(default)]
    pub edges: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ComponentDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<ClassKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(usize, usize)>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JoinInput {
    #[serde(default)]
    pub n: Option<u64>,
    pub host: HostDoc,
    pub components: Vec<ComponentDoc>,
}

impl JoinInput {
    pub fn parse(text: &str) -> Result<Self> {
        let input: Self = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        if input.components.len() != input.host.labels.len() {
            return Err(Error::Input(format!(
                "{} host vertices but {} components",
                input.host.labels.len(),
                input.components.len()
            )));
        }
        Ok(input)
    }

    /// The `WΓ(Z_n)` decomposition: complete host on the proper divisors,
    /// one complete or empty component per divisor class.
    pub fn upsilon(n: u64) -> Result<Self> {
        let host = spectra::host_upsilon(n)?;
        let partition = graphcore::divisor_classes(n)?;
        let labels = host.labels().to_vec();
        let edges = host.edges().map(|(i, j)| (labels[i], labels[j])).collect();
        Ok(Self {
            n: Some(n),
            host: HostDoc {
                labels,
                weights: host.weights().to_vec(),
                edges,
            },
            components: partition
                .classes
                .iter()
                .map(|c| ComponentDoc {
                    kind: Some(c.kind),
                    ..Default::default()
                })
                .collect(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("join input serializes")
    }

    pub fn host(&self) -> Result<WeightedHostGraph> {
        let index = |l: u64| {
            self.host
                .labels
                .iter()
                .position(|&x| x == l)
                .ok_or_else(|| Error::Input(format!("host edge endpoint {l} is not a label")))
        };
        let edges = self
            .host
            .edges
            .iter()
            .map(|&(u, v)| Ok((index(u)?, index(v)?)))
            .collect::<Result<Vec<_>>>()?;
        WeightedHostGraph::new(self.host.labels.clone(), self.host.weights.clone(), edges)
            .map_err(|e| Error::Input(e.to_string()))
    }

    fn weight(&self, i: usize) -> Result<usize> {
        self.host
            .weights
            .get(i)
            .map(|&w| w as usize)
            .ok_or_else(|| Error::Input(format!("no host weight for component {i}")))
    }

    pub fn component_spectra(&self) -> Result<Vec<SpectrumMultiset>> {
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if let Some(kind) = c.kind {
                    return Ok(SpectrumMultiset::Exact(spectra::component_spectrum(
                        self.weight(i)?,
                        kind,
                    )));
                }
                if let Some(value) = &c.spectrum {
                    return SpectrumMultiset::from_value(value.clone());
                }
                if c.edges.is_some() {
                    let g = self.component_graph(i)?;
                    let eig =
                        oracle::symmetric_eigenvalues(&oracle::laplacian_matrix(&g).to_f64_rows())?;
                    return Ok(SpectrumMultiset::Float(FloatSpectrum::from_values(eig)));
                }
                Err(Error::Input(format!(
                    "component {i} needs one of `kind`, `spectrum` or `edges`"
                )))
            })
            .collect()
    }

    fn component_graph(&self, i: usize) -> Result<Graph> {
        let c = &self.components[i];
        let w = self.weight(i)?;
        if let Some(edges) = &c.edges {
            return Graph::new(None, (0..w as u64).collect(), edges.iter().copied())
                .map_err(|e| Error::Input(format!("component {i}: {e}")));
        }
        match c.kind {
            Some(ClassKind::Complete) => Ok(Graph::complete(w)),
            Some(ClassKind::Empty) => Ok(Graph::empty(w)),
            None => Err(Error::Input(format!(
                "component {i} has neither an edge list nor a kind"
            ))),
        }
    }

    /// The assembled join graph, when every component's edges are known.
    pub fn explicit_graph(&self) -> Result<Graph> {
        let components = (0..self.components.len())
            .map(|i| self.component_graph(i))
            .collect::<Result<Vec<_>>>()?;
        graphcore::generalized_join(&self.host()?.to_graph(), &components)
    }

    pub fn spectrum(&self) -> Result<SpectrumMultiset> {
        spectra::join_spectrum(&self.host()?, &self.component_spectra()?)
    }
}

/// Join-engine spectrum next to the Jacobi eigenvalues of the assembled graph.
#[derive(Debug, Clone, PartialEq)]
pub struct JoinCheck {
    pub spectrum: SpectrumMultiset,
    pub numeric: Vec<f64>,
    pub max_deviation: f64,
    pub matches: bool,
}

pub fn check_join(input: &JoinInput, tol: f64) -> Result<JoinCheck> {
    let spectrum = input.spectrum()?;
    let graph = input.explicit_graph()?;
    let numeric = oracle::symmetric_eigenvalues(&oracle::laplacian_matrix(&graph).to_f64_rows())?;
    let claimed = spectrum.sorted_values();
    let same_len = claimed.len() == numeric.len();
    let max_deviation = claimed
        .iter()
        .zip(&numeric)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(JoinCheck {
        spectrum,
        numeric,
        max_deviation,
        matches: same_len && max_deviation <= tol,
    })
}
