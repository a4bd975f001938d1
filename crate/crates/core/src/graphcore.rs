//! Explicit graphs over `Z_n`: the weakly zero-divisor graph built two
//! independent ways, the classical zero-divisor graph, generalized joins,
//! and text serializations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{self, gcd};

/// Simple undirected graph with integer vertex labels in ascending order.
///
/// Edges are stored as index pairs `(i, j)` with `i < j`.
#[derive(Debug, Clone)]
pub struct Graph {
    modulus: Option<u64>,
    labels: Vec<u64>,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(
        modulus: Option<u64>,
        labels: Vec<u64>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if let Some(w) = labels.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::Contract(format!(
                "vertex labels must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        let order = labels.len();
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Contract(format!("self-loop at vertex index {a}")));
            }
            if a >= order || b >= order {
                return Err(Error::Contract(format!(
                    "edge ({a}, {b}) out of range for {order} vertices"
                )));
            }
            set.insert((a.min(b), a.max(b)));
        }
        Ok(Self {
            modulus,
            labels,
            edges: set,
        })
    }

    /// Graph with labels given by value; edges are label pairs.
    pub fn from_labeled_edges(
        modulus: Option<u64>,
        labels: Vec<u64>,
        edges: &[(u64, u64)],
    ) -> Result<Self> {
        let index: BTreeMap<u64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let lookup = |l: u64| {
            index
                .get(&l)
                .copied()
                .ok_or_else(|| Error::Contract(format!("edge endpoint {l} is not a vertex")))
        };
        let pairs = edges
            .iter()
            .map(|&(u, v)| Ok((lookup(u)?, lookup(v)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(modulus, labels, pairs)
    }

    /// `K_k` on labels `0..k`.
    pub fn complete(k: usize) -> Self {
        let edges = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j)));
        Self::new(None, (0..k as u64).collect(), edges).expect("valid complete graph")
    }

    /// Edgeless graph on labels `0..k`.
    pub fn empty(k: usize) -> Self {
        Self::new(None, (0..k as u64).collect(), []).expect("valid empty graph")
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    /// Edges as label pairs `(u, v)` with `u < v`, lexicographically sorted.
    pub fn labeled_edges(&self) -> Vec<(u64, u64)> {
        self.edges
            .iter()
            .map(|&(i, j)| (self.labels[i], self.labels[j]))
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.order()];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.order()];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn is_complete(&self) -> bool {
        let k = self.order();
        self.edges.len() == k * k.saturating_sub(1) / 2
    }

    pub fn component_count(&self) -> usize {
        let adj = self.neighbors();
        let mut seen = vec![false; self.order()];
        let mut count = 0;
        for start in 0..self.order() {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }
}

/// Same vertex labels and same edge set; the modulus is not compared.
pub fn graphs_equal(g1: &Graph, g2: &Graph) -> bool {
    g1.labels == g2.labels && g1.edges == g2.edges
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        graphs_equal(self, other)
    }
}

impl Eq for Graph {}

/// `sub` and `sup` share their vertex labels and every edge of `sub` is in `sup`.
pub fn is_spanning_subgraph(sub: &Graph, sup: &Graph) -> bool {
    sub.labels == sup.labels && sub.edges.is_subset(&sup.edges)
}

fn check_modulus(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain {
            what: "modulus must be at least 2",
            value: n,
        });
    }
    Ok(())
}

/// `{r in Z_n : r * x = 0}`, by scanning every residue.
pub fn annihilator(n: u64, x: u64) -> Result<Vec<u64>> {
    check_modulus(n)?;
    if x >= n {
        return Err(Error::Domain {
            what: "residue must be below the modulus",
            value: x,
        });
    }
    Ok((0..n).filter(|&r| mul_mod(r, x, n) == 0).collect())
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Nonzero zero-divisors of `Z_n`, ascending.
pub fn zero_divisors(n: u64) -> Result<Vec<u64>> {
    check_modulus(n)?;
    Ok((1..n).filter(|&x| gcd(x, n).unwrap_or(1) > 1).collect())
}

/// `WΓ(Z_n)` straight from the definition: distinct `x`, `y` are adjacent
/// when some nonzero `r ∈ ann(x)` and nonzero `s ∈ ann(y)` have `rs = 0`.
pub fn build_bruteforce_wzd(n: u64) -> Result<Graph> {
    let vertices = zero_divisors(n)?;
    let ann: Vec<Vec<u64>> = vertices
        .iter()
        .map(|&x| annihilator(n, x).map(|a| a.into_iter().filter(|&r| r != 0).collect()))
        .collect::<Result<_>>()?;
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in i + 1..vertices.len() {
            let witnessed = ann[i]
                .iter()
                .any(|&r| ann[j].iter().any(|&s| mul_mod(r, s, n) == 0));
            if witnessed {
                edges.push((i, j));
            }
        }
    }
    Graph::new(Some(n), vertices, edges)
}

/// `Γ(Z_n)`: distinct `x`, `y` adjacent iff `xy = 0`.
pub fn build_zero_divisor_graph(n: u64) -> Result<Graph> {
    let vertices = zero_divisors(n)?;
    let mut edges = Vec::new();
    for (i, &x) in vertices.iter().enumerate() {
        for (j, &y) in vertices.iter().enumerate().skip(i + 1) {
            if mul_mod(x, y, n) == 0 {
                edges.push((i, j));
            }
        }
    }
    Graph::new(Some(n), vertices, edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    Complete,
    Empty,
}

impl ClassKind {
    /// `K_m` or `K̄_m`.
    pub fn notation(self, m: usize) -> String {
        match self {
            ClassKind::Complete => format!("K_{m}"),
            ClassKind::Empty => format!("K\u{304}_{m}"),
        }
    }
}

/// Residues `x` with `gcd(x, n) = divisor`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorClass {
    pub divisor: u64,
    pub kind: ClassKind,
    pub size: usize,
    pub members: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorClassPartition {
    pub modulus: u64,
    pub classes: Vec<DivisorClass>,
}

impl DivisorClassPartition {
    /// No proper divisors, i.e. `n` prime.
    pub fn is_degenerate(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.classes.iter().map(|c| c.size).sum()
    }
}

impl fmt::Display for DivisorClassPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for class in &self.classes {
            let members: Vec<String> = class.members.iter().map(u64::to_string).collect();
            writeln!(
                f,
                "{}: {} ({})",
                class.divisor,
                class.kind.notation(class.size),
                members.join(" ")
            )?;
        }
        Ok(())
    }
}

/// Splits the nonzero zero-divisors by `gcd(x, n)`. A class induces an
/// empty graph exactly when its divisor is a prime dividing `n` once, and a
/// complete graph otherwise.
pub fn divisor_classes(n: u64) -> Result<DivisorClassPartition> {
    check_modulus(n)?;
    let exact = numtheory::exact_primes(n)?;
    let mut by_gcd: BTreeMap<u64, Vec<u64>> = numtheory::proper_divisors(n)?
        .into_iter()
        .map(|d| (d, Vec::new()))
        .collect();
    for x in 1..n {
        let d = gcd(x, n)?;
        if let Some(members) = by_gcd.get_mut(&d) {
            members.push(x);
        }
    }
    let classes = by_gcd
        .into_iter()
        .map(|(divisor, members)| DivisorClass {
            divisor,
            kind: if exact.binary_search(&divisor).is_ok() {
                ClassKind::Empty
            } else {
                ClassKind::Complete
            },
            size: members.len(),
            members,
        })
        .collect();
    Ok(DivisorClassPartition {
        modulus: n,
        classes,
    })
}

/// `WΓ(Z_n)` assembled as the generalized join of its divisor classes over
/// a complete host: every cross-class pair is adjacent, and a class is
/// internally complete or empty according to its kind.
pub fn build_structural_wzd(n: u64) -> Result<Graph> {
    let partition = divisor_classes(n)?;
    let mut owner: Vec<(u64, usize)> = partition
        .classes
        .iter()
        .enumerate()
        .flat_map(|(c, class)| class.members.iter().map(move |&x| (x, c)))
        .collect();
    owner.sort_unstable();
    let mut edges = Vec::new();
    for i in 0..owner.len() {
        for j in i + 1..owner.len() {
            let (ci, cj) = (owner[i].1, owner[j].1);
            if ci != cj || partition.classes[ci].kind == ClassKind::Complete {
                edges.push((i, j));
            }
        }
    }
    Graph::new(Some(n), owner.into_iter().map(|(x, _)| x).collect(), edges)
}

/// `host[components[0], components[1], ...]`: vertex `i` of the host is
/// replaced by `components[i]`, and adjacent host vertices have their
/// components fully joined. Vertices are relabeled `0..` block by block.
pub fn generalized_join(host: &Graph, components: &[Graph]) -> Result<Graph> {
    if components.len() != host.order() {
        return Err(Error::Contract(format!(
            "host has {} vertices but {} components were given",
            host.order(),
            components.len()
        )));
    }
    let mut offsets = Vec::with_capacity(components.len());
    let mut total = 0usize;
    for c in components {
        offsets.push(total);
        total += c.order();
    }
    let mut edges = Vec::new();
    for (c, comp) in components.iter().enumerate() {
        edges.extend(comp.edges().map(|(i, j)| (offsets[c] + i, offsets[c] + j)));
    }
    for (a, b) in host.edges() {
        for i in 0..components[a].order() {
            for j in 0..components[b].order() {
                edges.push((offsets[a] + i, offsets[b] + j));
            }
        }
    }
    Graph::new(None, (0..total as u64).collect(), edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
    Csv,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(Self::Dot),
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    modulus: Option<u64>,
    vertices: Vec<u64>,
    edges: Vec<(u64, u64)>,
}

pub fn export_graph(g: &Graph, format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => {
            let name = g
                .modulus
                .map_or_else(|| "join".to_string(), |n| format!("wzd_{n}"));
            let mut out = format!("graph {name} {{\n");
            for l in &g.labels {
                out.push_str(&format!("  {l};\n"));
            }
            for (u, v) in g.labeled_edges() {
                out.push_str(&format!("  {u} -- {v};\n"));
            }
            out.push_str("}\n");
            out
        }
        ExportFormat::Json => {
            let doc = GraphDoc {
                modulus: g.modulus,
                vertices: g.labels.clone(),
                edges: g.labeled_edges(),
            };
            serde_json::to_string(&doc).expect("graph serializes")
        }
        ExportFormat::Csv => g
            .labeled_edges()
            .into_iter()
            .map(|(u, v)| format!("{u},{v}\n"))
            .collect(),
    }
}

/// Inverse of the JSON export.
pub fn import_graph_json(text: &str) -> Result<Graph> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
    Graph::from_labeled_edges(doc.modulus, doc.vertices, &doc.edges)
}
