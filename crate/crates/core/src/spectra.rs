//! Laplacian spectra in closed form.
//!
//! Two routes are provided. [`join_spectrum`] evaluates the spectrum of a
//! generalized join `H[G_1, ..., G_k]` from the host and the component
//! spectra: each component contributes its eigenvalues minus one zero,
//! shifted by the total weight `D_i` of the host neighbours of its vertex,
//! and the host contributes the eigenvalues of its vertex-weighted
//! Laplacian. [`wzd_spectrum_closed_form`] is the specialization to
//! `WΓ(Z_n)`, written directly in terms of `n`, `φ` and the primes that
//! divide `n` exactly once.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphcore::{ClassKind, Graph};
use crate::numtheory;
use crate::oracle;

/// Eigenvalues closer than this are merged into one entry of a [`FloatSpectrum`].
pub const MERGE_TOL: f64 = 1e-7;

/// Host graph whose vertices carry positive integer weights (component orders).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedHostGraph {
    labels: Vec<u64>,
    weights: Vec<u64>,
    edges: BTreeSet<(usize, usize)>,
}

impl WeightedHostGraph {
    pub fn new(
        labels: Vec<u64>,
        weights: Vec<u64>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if labels.len() != weights.len() {
            return Err(Error::Contract(format!(
                "{} labels but {} weights",
                labels.len(),
                weights.len()
            )));
        }
        if weights.contains(&0) {
            return Err(Error::Contract("host weights must be positive".into()));
        }
        let distinct: BTreeSet<u64> = labels.iter().copied().collect();
        if distinct.len() != labels.len() {
            return Err(Error::Contract("host labels must be distinct".into()));
        }
        let k = labels.len();
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b || a >= k || b >= k {
                return Err(Error::Contract(format!("invalid host edge ({a}, {b})")));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Self {
            labels,
            weights,
            edges: set,
        })
    }

    pub fn complete(labels: Vec<u64>, weights: Vec<u64>) -> Result<Self> {
        let k = labels.len();
        let edges: Vec<_> = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .collect();
        Self::new(labels, weights, edges)
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    pub fn is_complete(&self) -> bool {
        let k = self.order();
        self.edges.len() == k * k.saturating_sub(1) / 2
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// `D_i`: summed weight of the neighbours of each host vertex (0 if isolated).
    pub fn neighbor_weights(&self) -> Vec<u64> {
        let mut d = vec![0; self.order()];
        for &(i, j) in &self.edges {
            d[i] += self.weights[j];
            d[j] += self.weights[i];
        }
        d
    }

    /// Unweighted host structure on index labels `0..k`.
    pub fn to_graph(&self) -> Graph {
        Graph::new(None, (0..self.order() as u64).collect(), self.edges())
            .expect("host edges are valid")
    }
}

/// Complete host on the proper divisors of `n`, vertex `d` weighted by `φ(n/d)`.
/// Empty when `n` is prime.
pub fn host_upsilon(n: u64) -> Result<WeightedHostGraph> {
    let divisors = numtheory::proper_divisors(n)?;
    let weights = divisors
        .iter()
        .map(|d| numtheory::euler_phi(n / d))
        .collect::<Result<Vec<_>>>()?;
    WeightedHostGraph::complete(divisors, weights)
}

/// Vertex-weighted Laplacian: zero row sums, `-n_j` on edges, generally not symmetric.
pub fn weighted_laplacian(host: &WeightedHostGraph) -> Vec<Vec<i64>> {
    let k = host.order();
    let d = host.neighbor_weights();
    let mut m = vec![vec![0i64; k]; k];
    for i in 0..k {
        m[i][i] = d[i] as i64;
    }
    for (i, j) in host.edges() {
        m[i][j] = -(host.weights[j] as i64);
        m[j][i] = -(host.weights[i] as i64);
    }
    m
}

/// Symmetrized weighted Laplacian with `-sqrt(n_i n_j)` on edges; similar
/// to [`weighted_laplacian`] via `diag(sqrt(n_i))`.
pub fn symmetric_weighted_laplacian(host: &WeightedHostGraph) -> Vec<Vec<f64>> {
    let k = host.order();
    let d = host.neighbor_weights();
    let mut m = vec![vec![0.0; k]; k];
    for i in 0..k {
        m[i][i] = d[i] as f64;
    }
    for (i, j) in host.edges() {
        let p = ((host.weights[i] * host.weights[j]) as f64).sqrt();
        m[i][j] = -p;
        m[j][i] = -p;
    }
    m
}

/// Multiset of non-negative integer eigenvalues.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExactSpectrum {
    entries: BTreeMap<u64, usize>,
}

impl ExactSpectrum {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from `(eigenvalue, multiplicity)` pairs, merging duplicates and
    /// dropping zero multiplicities.
    pub fn from_entries(entries: impl IntoIterator<Item = (u64, usize)>) -> Self {
        let mut s = Self::new();
        for (value, mult) in entries {
            s.insert(value, mult);
        }
        s
    }

    pub fn insert(&mut self, value: u64, mult: usize) {
        if mult > 0 {
            *self.entries.entry(value).or_insert(0) += mult;
        }
    }

    pub fn union(&mut self, other: &ExactSpectrum) {
        for (&v, &m) in &other.entries {
            self.insert(v, m);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, usize)> + '_ {
        self.entries.iter().map(|(&v, &m)| (v, m))
    }

    pub fn multiplicity(&self, value: u64) -> usize {
        self.entries.get(&value).copied().unwrap_or(0)
    }

    pub fn order(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn trace(&self) -> u128 {
        self.entries
            .iter()
            .map(|(&v, &m)| v as u128 * m as u128)
            .sum()
    }

    /// Every eigenvalue repeated by multiplicity, ascending.
    pub fn expand(&self) -> Vec<u64> {
        self.entries
            .iter()
            .flat_map(|(&v, &m)| std::iter::repeat_n(v, m))
            .collect()
    }

    /// One copy of 0 removed; errors if 0 is absent.
    pub fn without_one_zero(&self) -> Result<Self> {
        let mut s = self.clone();
        match s.entries.get_mut(&0) {
            Some(m) if *m > 1 => *m -= 1,
            Some(_) => {
                s.entries.remove(&0);
            }
            None => {
                return Err(Error::Contract(
                    "component spectrum has no zero eigenvalue".into(),
                ))
            }
        }
        Ok(s)
    }

    pub fn shifted(&self, by: u64) -> Self {
        Self::from_entries(self.entries.iter().map(|(&v, &m)| (v + by, m)))
    }

    pub fn algebraic_connectivity(&self) -> Result<u64> {
        if self.order() < 2 {
            return Err(Error::UndefinedForOrder(
                "algebraic connectivity",
                self.order(),
            ));
        }
        Ok(self.expand()[1])
    }

    pub fn spectral_radius(&self) -> Result<u64> {
        self.entries
            .keys()
            .next_back()
            .copied()
            .ok_or(Error::UndefinedForOrder("spectral radius", 0))
    }
}

/// Multiset of real eigenvalues; values within [`MERGE_TOL`] share an entry.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FloatSpectrum {
    entries: Vec<(f64, usize)>,
}

impl FloatSpectrum {
    pub fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        let mut entries: Vec<(f64, usize)> = Vec::new();
        let mut group: Vec<f64> = Vec::new();
        for v in values {
            if let Some(&first) = group.first() {
                if v - first > MERGE_TOL {
                    let mean = group.iter().sum::<f64>() / group.len() as f64;
                    entries.push((mean, group.len()));
                    group.clear();
                }
            }
            group.push(v);
        }
        if !group.is_empty() {
            let mean = group.iter().sum::<f64>() / group.len() as f64;
            entries.push((mean, group.len()));
        }
        Self { entries }
    }

    pub fn entries(&self) -> &[(f64, usize)] {
        &self.entries
    }

    pub fn order(&self) -> usize {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    pub fn expand(&self) -> Vec<f64> {
        self.entries
            .iter()
            .flat_map(|&(v, m)| std::iter::repeat_n(v, m))
            .collect()
    }
}

impl From<&ExactSpectrum> for FloatSpectrum {
    fn from(s: &ExactSpectrum) -> Self {
        Self {
            entries: s.entries().map(|(v, m)| (v as f64, m)).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Exact,
    Float,
}

/// Laplacian spectrum, exact or floating.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectrumMultiset {
    Exact(ExactSpectrum),
    Float(FloatSpectrum),
}

impl SpectrumMultiset {
    pub fn variant(&self) -> Variant {
        match self {
            Self::Exact(_) => Variant::Exact,
            Self::Float(_) => Variant::Float,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Self::Exact(s) => s.order(),
            Self::Float(s) => s.order(),
        }
    }

    pub fn as_exact(&self) -> Option<&ExactSpectrum> {
        match self {
            Self::Exact(s) => Some(s),
            Self::Float(_) => None,
        }
    }

    /// Ascending eigenvalues repeated by multiplicity.
    pub fn sorted_values(&self) -> Vec<f64> {
        match self {
            Self::Exact(s) => s.expand().into_iter().map(|v| v as f64).collect(),
            Self::Float(s) => s.expand(),
        }
    }

    fn float_entries(&self) -> Vec<(f64, usize)> {
        match self {
            Self::Exact(s) => s.entries().map(|(v, m)| (v as f64, m)).collect(),
            Self::Float(s) => s.entries.clone(),
        }
    }

    /// Second-smallest eigenvalue counted with multiplicity.
    pub fn algebraic_connectivity(&self) -> Result<f64> {
        let values = self.sorted_values();
        values.get(1).copied().ok_or(Error::UndefinedForOrder(
            "algebraic connectivity",
            values.len(),
        ))
    }

    pub fn spectral_radius(&self) -> Result<f64> {
        self.sorted_values()
            .last()
            .copied()
            .ok_or(Error::UndefinedForOrder("spectral radius", 0))
    }

    pub fn to_json(&self, n: Option<u64>) -> String {
        serde_json::to_string(&self.to_doc(n)).expect("spectrum serializes")
    }

    pub(crate) fn to_doc(&self, n: Option<u64>) -> SpectrumDoc {
        let entries = match self {
            Self::Exact(s) => s
                .entries()
                .map(|(v, m)| EntryDoc {
                    eigenvalue: v.into(),
                    multiplicity: m,
                })
                .collect(),
            Self::Float(s) => s
                .entries
                .iter()
                .map(|&(v, m)| EntryDoc {
                    eigenvalue: serde_json::Number::from_f64(v).expect("finite eigenvalue"),
                    multiplicity: m,
                })
                .collect(),
        };
        SpectrumDoc {
            n,
            variant: Some(self.variant()),
            order: Some(self.order()),
            entries,
        }
    }

    /// Parses the spectrum JSON schema. `variant` and `order` may be omitted;
    /// a missing variant is inferred as exact when every eigenvalue is a
    /// non-negative integer.
    pub fn from_json(text: &str) -> Result<(Option<u64>, Self)> {
        let doc: SpectrumDoc =
            serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        let n = doc.n;
        Ok((n, Self::from_doc(doc)?))
    }

    pub(crate) fn from_value(value: serde_json::Value) -> Result<Self> {
        let doc: SpectrumDoc =
            serde_json::from_value(value).map_err(|e| Error::Input(e.to_string()))?;
        Self::from_doc(doc)
    }

    fn from_doc(doc: SpectrumDoc) -> Result<Self> {
        let as_int = |e: &EntryDoc| -> Option<u64> {
            e.eigenvalue.as_u64().or_else(|| {
                let f = e.eigenvalue.as_f64()?;
                (f >= 0.0 && f.fract() == 0.0 && f < 9.0e15).then_some(f as u64)
            })
        };
        let all_int = doc.entries.iter().all(|e| as_int(e).is_some());
        let variant = doc.variant.unwrap_or(if all_int {
            Variant::Exact
        } else {
            Variant::Float
        });
        let spectrum = match variant {
            Variant::Exact => {
                let mut s = ExactSpectrum::new();
                for e in &doc.entries {
                    let v = as_int(e).ok_or_else(|| {
                        Error::Input(format!(
                            "exact spectrum has non-integer eigenvalue {}",
                            e.eigenvalue
                        ))
                    })?;
                    s.insert(v, e.multiplicity);
                }
                Self::Exact(s)
            }
            Variant::Float => {
                let mut values = Vec::new();
                for e in &doc.entries {
                    let v = e.eigenvalue.as_f64().ok_or_else(|| {
                        Error::Input(format!("eigenvalue {} is not a number", e.eigenvalue))
                    })?;
                    values.extend(std::iter::repeat_n(v, e.multiplicity));
                }
                Self::Float(FloatSpectrum::from_values(values))
            }
        };
        if let Some(order) = doc.order {
            if order != spectrum.order() {
                return Err(Error::Input(format!(
                    "declared order {order} but multiplicities sum to {}",
                    spectrum.order()
                )));
            }
        }
        Ok(spectrum)
    }
}

fn format_float(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Two-row layout: distinct eigenvalues over their multiplicities.
impl fmt::Display for SpectrumMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries = self.float_entries();
        let values: Vec<String> = match self {
            Self::Exact(s) => s.entries().map(|(v, _)| v.to_string()).collect(),
            Self::Float(_) => entries.iter().map(|&(v, _)| format_float(v)).collect(),
        };
        let mults: Vec<String> = entries.iter().map(|&(_, m)| m.to_string()).collect();
        writeln!(f, "eigenvalues:    {}", values.join(" "))?;
        writeln!(f, "multiplicities: {}", mults.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct EntryDoc {
    eigenvalue: serde_json::Number,
    multiplicity: usize,
}

#[derive(Serialize, Deserialize)]
pub(crate) struct SpectrumDoc {
    n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    variant: Option<Variant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
    entries: Vec<EntryDoc>,
}

/// Spectrum of `K_m` or of its complement.
pub fn component_spectrum(order: usize, kind: ClassKind) -> ExactSpectrum {
    match kind {
        ClassKind::Complete => ExactSpectrum::from_entries([(0, 1), (order as u64, order - 1)]),
        ClassKind::Empty => ExactSpectrum::from_entries([(0, order)]),
    }
}

/// Exact spectrum of the host's weighted Laplacian when it is forced by the
/// structure: `{0^k}` for an edgeless host and `{0, W^(k-1)}` for a complete
/// host of total weight `W` (a scalar matrix minus a rank-one matrix).
fn host_spectrum_exact(host: &WeightedHostGraph) -> Option<ExactSpectrum> {
    let k = host.order();
    if host.edges.is_empty() {
        Some(ExactSpectrum::from_entries([(0, k)]))
    } else if host.is_complete() {
        Some(ExactSpectrum::from_entries([
            (0, 1),
            (host.total_weight(), k - 1),
        ]))
    } else {
        None
    }
}

/// Laplacian spectrum of the generalized join `host[G_1, ..., G_k]`, given
/// the spectrum of each component `G_i` (whose order must equal weight `i`).
///
/// The result is exact when every component spectrum is exact and the host
/// is complete or edgeless; otherwise the host eigenvalues come from the
/// numeric solver and the result is floating.
pub fn join_spectrum(
    host: &WeightedHostGraph,
    components: &[SpectrumMultiset],
) -> Result<SpectrumMultiset> {
    if components.len() != host.order() {
        return Err(Error::Contract(format!(
            "host has {} vertices but {} component spectra were given",
            host.order(),
            components.len()
        )));
    }
    for (i, (c, &w)) in components.iter().zip(&host.weights).enumerate() {
        if c.order() as u64 != w {
            return Err(Error::Contract(format!(
                "component {i} has order {} but host weight {w}",
                c.order()
            )));
        }
    }
    let shifts = host.neighbor_weights();
    let exact: Option<Vec<&ExactSpectrum>> = components.iter().map(|c| c.as_exact()).collect();

    if let (Some(exact), Some(host_part)) = (exact, host_spectrum_exact(host)) {
        let mut out = host_part;
        for (c, &d) in exact.iter().zip(&shifts) {
            out.union(&c.without_one_zero()?.shifted(d));
        }
        return Ok(SpectrumMultiset::Exact(out));
    }

    let mut values = if host.order() == 0 {
        Vec::new()
    } else {
        oracle::symmetric_eigenvalues(&symmetric_weighted_laplacian(host))?
    };
    for (c, &d) in components.iter().zip(&shifts) {
        let mut own = c.sorted_values();
        let zero = own
            .iter()
            .position(|v| v.abs() <= MERGE_TOL)
            .ok_or_else(|| Error::Contract("component spectrum has no zero eigenvalue".into()))?;
        own.remove(zero);
        values.extend(own.into_iter().map(|v| v + d as f64));
    }
    Ok(SpectrumMultiset::Float(FloatSpectrum::from_values(values)))
}

/// Closed-form Laplacian spectrum of `WΓ(Z_n)`.
///
/// With `V = n - φ(n) - 1` and `P` the primes dividing `n` exactly once:
/// if `P` is empty the graph is `K_V`; otherwise the spectrum is `0` once,
/// `V - φ(n/p)` with multiplicity `φ(n/p) - 1` for each `p ∈ P`, and `V`
/// with multiplicity `Σ_{d ∉ P} φ(n/d) + |P| - 1` over proper divisors `d`.
/// Empty for prime `n`.
pub fn wzd_spectrum_closed_form(n: u64) -> Result<ExactSpectrum> {
    let divisors = numtheory::proper_divisors(n)?;
    if divisors.is_empty() {
        return Ok(ExactSpectrum::new());
    }
    let factorization = numtheory::factorize(n)?;
    let vertices = n - factorization.totient() - 1;
    let exact = factorization.exact_primes();
    let m = exact.len();
    if m == 0 {
        return Ok(ExactSpectrum::from_entries([
            (0, 1),
            (vertices, vertices as usize - 1),
        ]));
    }
    let mut spectrum = ExactSpectrum::from_entries([(0, 1)]);
    let mut top = m - 1;
    for d in divisors {
        if exact.binary_search(&d).is_err() {
            top += numtheory::euler_phi(n / d)? as usize;
        }
    }
    spectrum.insert(vertices, top);
    for p in exact {
        let phi = numtheory::euler_phi(n / p)?;
        spectrum.insert(vertices - phi, phi as usize - 1);
    }
    Ok(spectrum)
}

/// The join-engine route for `WΓ(Z_n)`: `host_upsilon(n)` with the divisor
/// class components.
pub fn wzd_spectrum_via_join(n: u64) -> Result<SpectrumMultiset> {
    let host = host_upsilon(n)?;
    let partition = crate::graphcore::divisor_classes(n)?;
    let components: Vec<SpectrumMultiset> = partition
        .classes
        .iter()
        .map(|c| SpectrumMultiset::Exact(component_spectrum(c.size, c.kind)))
        .collect();
    join_spectrum(&host, &components)
}
