//! Simple undirected graphs, vertex partitions and permutations.
//!
//! Vertices are the contiguous integers `0..n`. Edges are stored with the
//! smaller endpoint first and kept sorted, so two graphs with the same edge
//! set compare equal regardless of insertion order. Each edge may carry a
//! [`Provenance`] tag naming the quotient feature that created it; tags are
//! metadata and never take part in equality.

use std::fmt;

use crate::error::{invalid, Result};

/// The quotient feature an edge was wired for. Cluster indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    /// Intra-cluster edge realizing the self-loop of a cluster.
    SelfLoop(usize),
    /// Inter-cluster edge realizing the pair `(low, high)`, `low < high`.
    Pair(usize, usize),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Provenance::SelfLoop(k) => write!(f, "self:{}", k + 1),
            Provenance::Pair(j, k) => write!(f, "edge:{}-{}", j + 1, k + 1),
        }
    }
}

/// Orders an unordered pair as `(min, max)`.
#[inline]
pub fn canonical(u: usize, v: usize) -> (usize, usize) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple undirected unweighted graph.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    provenance: Vec<Option<Provenance>>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            provenance: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from untagged edges, rejecting self-loops, repeated
    /// pairs and out-of-range endpoints.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::with_provenance(n, edges.into_iter().map(|e| (e, None)))
    }

    /// Builds a graph whose edges may carry provenance tags.
    pub fn with_provenance<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), Option<Provenance>)>,
    {
        let mut tagged: Vec<((usize, usize), Option<Provenance>)> = Vec::new();
        for ((u, v), tag) in edges {
            if u >= n || v >= n {
                return Err(invalid(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(invalid(format!("self-loop on vertex {u}")));
            }
            tagged.push((canonical(u, v), tag));
        }
        tagged.sort_unstable_by_key(|&(e, _)| e);
        if let Some(w) = tagged.windows(2).find(|w| w[0].0 == w[1].0) {
            let (u, v) = w[0].0;
            return Err(invalid(format!("duplicate edge ({u}, {v})")));
        }
        let mut adj = vec![Vec::new(); n];
        for &((u, v), _) in &tagged {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let (edges, provenance) = tagged.into_iter().unzip();
        Ok(Graph {
            n,
            edges,
            provenance,
            adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Canonical sorted edge list.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn tagged_edges(&self) -> impl Iterator<Item = ((usize, usize), Option<Provenance>)> + '_ {
        self.edges.iter().copied().zip(self.provenance.iter().copied())
    }

    /// True when every edge carries a provenance tag.
    pub fn is_fully_tagged(&self) -> bool {
        self.provenance.iter().all(Option::is_some)
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Number of neighbors of `v` inside cluster `k` of `part`.
    pub fn degree_to_cluster(&self, v: usize, part: &Partition, k: usize) -> Result<usize> {
        if part.n() != self.n {
            return Err(invalid(format!(
                "partition covers {} vertices, graph has {}",
                part.n(),
                self.n
            )));
        }
        if v >= self.n {
            return Err(invalid(format!("vertex {v} outside 0..{}", self.n)));
        }
        if k >= part.p() {
            return Err(invalid(format!("cluster {k} outside 0..{}", part.p())));
        }
        Ok(self.adj[v]
            .iter()
            .filter(|&&a| part.cluster_of(a) == k)
            .count())
    }

    /// Whether `perm` maps the edge set onto itself.
    pub fn is_automorphism(&self, perm: &Permutation) -> Result<bool> {
        if perm.len() != self.n {
            return Err(invalid(format!(
                "permutation acts on {} points, graph has {} vertices",
                perm.len(),
                self.n
            )));
        }
        // A permutation is injective on pairs, so mapping every edge to an
        // edge is enough for equality of the edge sets.
        Ok(self
            .edges
            .iter()
            .all(|&(u, v)| self.has_edge(perm.apply(u), perm.apply(v))))
    }

    /// The graph with vertex `v` renamed to `perm(v)`; provenance follows
    /// its edge.
    pub fn relabel(&self, perm: &Permutation) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(invalid("permutation size does not match graph"));
        }
        Graph::with_provenance(
            self.n,
            self.tagged_edges()
                .map(|((u, v), t)| ((perm.apply(u), perm.apply(v)), t)),
        )
    }

    /// Copy of the graph with every edge tagged by the clusters of its
    /// endpoints.
    pub fn tagged_by(&self, part: &Partition) -> Result<Graph> {
        if part.n() != self.n {
            return Err(invalid("partition size does not match graph"));
        }
        let provenance = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = canonical(part.cluster_of(u), part.cluster_of(v));
                Some(if a == b {
                    Provenance::SelfLoop(a)
                } else {
                    Provenance::Pair(a, b)
                })
            })
            .collect();
        Ok(Graph {
            n: self.n,
            edges: self.edges.clone(),
            provenance,
            adj: self.adj.clone(),
        })
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

/// Assignment of every vertex to one of `p` nonempty clusters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    cluster_of: Vec<usize>,
    sizes: Vec<usize>,
}

impl Partition {
    /// From a label per vertex. Labels must use every value in `0..p`.
    pub fn from_labels(cluster_of: Vec<usize>) -> Result<Self> {
        let p = cluster_of.iter().max().map_or(0, |&m| m + 1);
        let mut sizes = vec![0usize; p];
        for &c in &cluster_of {
            sizes[c] += 1;
        }
        if let Some(empty) = sizes.iter().position(|&s| s == 0) {
            return Err(invalid(format!("cluster {empty} is empty")));
        }
        Ok(Partition { cluster_of, sizes })
    }

    /// From explicit cells; each vertex of `0..n` must appear exactly once.
    pub fn from_cells(n: usize, cells: &[Vec<usize>]) -> Result<Self> {
        let mut cluster_of = vec![usize::MAX; n];
        for (k, cell) in cells.iter().enumerate() {
            for &v in cell {
                if v >= n {
                    return Err(invalid(format!("vertex {v} outside 0..{n}")));
                }
                if cluster_of[v] != usize::MAX {
                    return Err(invalid(format!("vertex {v} appears in two cells")));
                }
                cluster_of[v] = k;
            }
        }
        if let Some(v) = cluster_of.iter().position(|&c| c == usize::MAX) {
            return Err(invalid(format!("vertex {v} is not covered")));
        }
        Self::from_labels(cluster_of)
    }

    /// Contiguous blocks: the first `sizes[0]` vertices form cluster 0, etc.
    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        let labels = sizes
            .iter()
            .enumerate()
            .flat_map(|(k, &s)| std::iter::repeat_n(k, s))
            .collect();
        Self::from_labels(labels)
    }

    /// Single cluster holding all `n` vertices (empty partition for `n == 0`).
    pub fn unit(n: usize) -> Self {
        Partition {
            cluster_of: vec![0; n],
            sizes: if n == 0 { vec![] } else { vec![n] },
        }
    }

    /// Every vertex in its own cluster.
    pub fn discrete(n: usize) -> Self {
        Partition {
            cluster_of: (0..n).collect(),
            sizes: vec![1; n],
        }
    }

    pub fn n(&self) -> usize {
        self.cluster_of.len()
    }

    pub fn p(&self) -> usize {
        self.sizes.len()
    }

    pub fn cluster_of(&self, v: usize) -> usize {
        self.cluster_of[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.cluster_of
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Vertex lists per cluster, each sorted ascending.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        let mut cells: Vec<Vec<usize>> =
            self.sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
        for (v, &c) in self.cluster_of.iter().enumerate() {
            cells[c].push(v);
        }
        cells
    }

    /// Same blocks, relabeled so clusters are ordered by smallest member.
    pub fn normalized(&self) -> Partition {
        let mut remap = vec![usize::MAX; self.p()];
        let mut next = 0;
        let labels = self
            .cluster_of
            .iter()
            .map(|&c| {
                if remap[c] == usize::MAX {
                    remap[c] = next;
                    next += 1;
                }
                remap[c]
            })
            .collect();
        Partition::from_labels(labels).expect("relabeling keeps clusters nonempty")
    }

    /// Whether the two partitions have the same blocks, ignoring labels.
    pub fn same_blocks(&self, other: &Partition) -> bool {
        self.n() == other.n() && self.normalized() == other.normalized()
    }

    /// Whether every cluster of `self` lies inside a cluster of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        if self.n() != coarser.n() {
            return false;
        }
        let mut image = vec![usize::MAX; self.p()];
        for (v, &c) in self.cluster_of.iter().enumerate() {
            let target = coarser.cluster_of[v];
            if image[c] == usize::MAX {
                image[c] = target;
            } else if image[c] != target {
                return false;
            }
        }
        true
    }
}

/// A bijection on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x >= n || seen[x] {
                return Err(invalid("image is not a permutation of 0..n"));
            }
            seen[x] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(invalid("composing permutations of different sizes"));
        }
        Ok(Permutation {
            image: other.image.iter().map(|&x| self.image[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { image: inv }
    }
}
