//! Quotient-preserving randomization by double-edge swaps.
//!
//! Swaps only exchange endpoints between two edges of the same provenance
//! class (the intra-cluster edges of one cluster, or the edges between one
//! cluster pair), so every vertex keeps its neighbor count toward every
//! cluster. Swaps that would create a self-loop or a repeated edge are
//! rejected.

use std::collections::HashSet;

use rand::Rng;

use crate::error::{invalid, Result};
use crate::graph::{canonical, Graph, Partition, Provenance};
use crate::quotient::extract_quotient;
use crate::rng;

/// Default number of attempted swaps per edge of each class.
pub const DEFAULT_SWAPS_PER_EDGE: f64 = 10.0;

/// Mutable edge store of one class.
struct EdgeClass {
    edges: Vec<(usize, usize)>,
    present: HashSet<(usize, usize)>,
}

impl EdgeClass {
    fn new(edges: Vec<(usize, usize)>) -> Self {
        let present = edges.iter().map(|&(a, b)| canonical(a, b)).collect();
        EdgeClass { edges, present }
    }

    /// Edges `a = (i, i')` and `b = (j, j')` (reversed when `flip`) become
    /// `(i, j')` and `(j, i')`.
    fn try_intra(&mut self, a: usize, b: usize, flip: bool) -> bool {
        let (i, ip) = self.edges[a];
        let (j, jp) = if flip {
            (self.edges[b].1, self.edges[b].0)
        } else {
            self.edges[b]
        };
        if i == jp || j == ip {
            return false;
        }
        self.replace(a, b, canonical(i, jp), canonical(j, ip))
    }

    /// Edges stored as `(u, w)`, `u` in the lower cluster: `(u_i, w_i')`
    /// and `(u_j, w_j')` become `(u_i, w_j')` and `(u_j, w_i')`.
    fn try_inter(&mut self, a: usize, b: usize) -> bool {
        let (ui, wi) = self.edges[a];
        let (uj, wj) = self.edges[b];
        self.replace(a, b, (ui, wj), (uj, wi))
    }

    fn replace(&mut self, a: usize, b: usize, e1: (usize, usize), e2: (usize, usize)) -> bool {
        let (c1, c2) = (canonical(e1.0, e1.1), canonical(e2.0, e2.1));
        if c1 == c2 || self.present.contains(&c1) || self.present.contains(&c2) {
            return false;
        }
        let old_a = canonical(self.edges[a].0, self.edges[a].1);
        let old_b = canonical(self.edges[b].0, self.edges[b].1);
        self.present.remove(&old_a);
        self.present.remove(&old_b);
        self.present.insert(c1);
        self.present.insert(c2);
        self.edges[a] = e1;
        self.edges[b] = e2;
        debug_assert_eq!(self.present.len(), self.edges.len());
        debug_assert!(self.edges.iter().all(|&(x, y)| x != y));
        true
    }

    fn pick_two<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<(usize, usize)> {
        let len = self.edges.len();
        if len < 2 {
            return None;
        }
        let a = rng.random_range(0..len);
        let mut b = rng.random_range(0..len - 1);
        if b >= a {
            b += 1;
        }
        Some((a, b))
    }

    fn run_intra<R: Rng + ?Sized>(&mut self, rng: &mut R, attempts: u64) -> u64 {
        let mut accepted = 0;
        for _ in 0..attempts {
            let Some((a, b)) = self.pick_two(rng) else { break };
            let flip = rng.random::<bool>();
            accepted += u64::from(self.try_intra(a, b, flip));
        }
        accepted
    }

    fn run_inter<R: Rng + ?Sized>(&mut self, rng: &mut R, attempts: u64) -> u64 {
        let mut accepted = 0;
        for _ in 0..attempts {
            let Some((a, b)) = self.pick_two(rng) else { break };
            accepted += u64::from(self.try_inter(a, b));
        }
        accepted
    }
}

fn require_tags(g: &Graph) -> Result<()> {
    if g.is_fully_tagged() {
        Ok(())
    } else {
        Err(invalid("swapping needs provenance tags on every edge"))
    }
}

/// Splits `g`'s edges into those tagged `tag` and the rest.
fn split_class(g: &Graph, tag: Provenance) -> (Vec<(usize, usize)>, Vec<((usize, usize), Option<Provenance>)>) {
    let mut class = Vec::new();
    let mut rest = Vec::new();
    for (e, t) in g.tagged_edges() {
        if t == Some(tag) {
            class.push(e);
        } else {
            rest.push((e, t));
        }
    }
    (class, rest)
}

fn rebuild(
    n: usize,
    rest: Vec<((usize, usize), Option<Provenance>)>,
    class: &EdgeClass,
    tag: Provenance,
) -> Result<Graph> {
    Graph::with_provenance(
        n,
        rest.into_iter()
            .chain(class.edges.iter().map(|&e| (e, Some(tag)))),
    )
}

/// Up to `attempts` random swaps among the intra-cluster edges of cluster `k`.
pub fn swap_intra<R: Rng + ?Sized>(g: &Graph, k: usize, rng: &mut R, attempts: u64) -> Result<Graph> {
    require_tags(g)?;
    let tag = Provenance::SelfLoop(k);
    let (class, rest) = split_class(g, tag);
    let mut class = EdgeClass::new(class);
    class.run_intra(rng, attempts);
    rebuild(g.n(), rest, &class, tag)
}

fn orient(
    edges: Vec<(usize, usize)>,
    part: &Partition,
    (k, l): (usize, usize),
) -> Result<Vec<(usize, usize)>> {
    edges
        .into_iter()
        .map(|(a, b)| match (part.cluster_of(a), part.cluster_of(b)) {
            (ca, cb) if ca == k && cb == l => Ok((a, b)),
            (ca, cb) if ca == l && cb == k => Ok((b, a)),
            _ => Err(invalid(format!(
                "edge ({a}, {b}) is tagged for clusters ({k}, {l}) but its endpoints are elsewhere"
            ))),
        })
        .collect()
}

/// Up to `attempts` random swaps among the edges between clusters `k < l`.
/// `part` orients each edge toward its `C_k` endpoint.
pub fn swap_inter<R: Rng + ?Sized>(
    g: &Graph,
    part: &Partition,
    pair: (usize, usize),
    rng: &mut R,
    attempts: u64,
) -> Result<Graph> {
    require_tags(g)?;
    if part.n() != g.n() {
        return Err(invalid("partition size does not match graph"));
    }
    let (k, l) = pair;
    if k >= l || l >= part.p() {
        return Err(invalid(format!("pair ({k}, {l}) needs k < l < {}", part.p())));
    }
    let tag = Provenance::Pair(k, l);
    let (class, rest) = split_class(g, tag);
    let mut class = EdgeClass::new(orient(class, part, pair)?);
    class.run_inter(rng, attempts);
    rebuild(g.n(), rest, &class, tag)
}

fn attempts_for(swaps_per_edge: f64, class_size: usize) -> u64 {
    (swaps_per_edge * class_size as f64).ceil() as u64
}

/// Randomizes every provenance class of `g` in turn. Classes are derived
/// from `part`, which must be equitable; the quotient of the result under
/// `part` equals that of `g`. Each class draws from its own stream of
/// `seed`, so the output is a pure function of the inputs.
pub fn randomize(g: &Graph, part: &Partition, seed: u64, swaps_per_edge: f64) -> Result<Graph> {
    if !swaps_per_edge.is_finite() || swaps_per_edge < 0.0 {
        return Err(invalid(format!(
            "swaps per edge must be a finite nonnegative number, got {swaps_per_edge}"
        )));
    }
    let q = extract_quotient(g, part)?;
    let tagged = g.tagged_by(part)?;

    let mut classes: std::collections::BTreeMap<Provenance, Vec<(usize, usize)>> =
        std::collections::BTreeMap::new();
    for (e, t) in tagged.tagged_edges() {
        classes.entry(t.expect("tagged_by tags every edge")).or_default().push(e);
    }

    let mut out = Vec::with_capacity(g.edge_count());
    for (tag, edges) in classes {
        let attempts = attempts_for(swaps_per_edge, edges.len());
        let class = match tag {
            Provenance::SelfLoop(k) => {
                let mut c = EdgeClass::new(edges);
                let mut r = rng::stream(seed, "swap-intra", &[k as u64]);
                c.run_intra(&mut r, attempts);
                c
            }
            Provenance::Pair(k, l) => {
                let mut c = EdgeClass::new(orient(edges, part, (k, l))?);
                let mut r = rng::stream(seed, "swap-inter", &[k as u64, l as u64]);
                c.run_inter(&mut r, attempts);
                c
            }
        };
        out.extend(class.edges.into_iter().map(|e| (e, Some(tag))));
    }
    let result = Graph::with_provenance(g.n(), out)?;
    debug_assert_eq!(extract_quotient(&result, part).ok(), Some(q));
    Ok(result)
}
