//! Orbits of the automorphism group.
//!
//! [`orbits`] runs an individualization-refinement search. The root
//! coloring is the coarsest equitable partition; a search node individualizes
//! one vertex of the first non-singleton cell and refines again. Along the
//! leftmost path of the search tree, deepest level first, every vertex of
//! the target cell that is not yet known to share an orbit with the path
//! vertex gets its subtree searched for a leaf whose coloring induces an
//! automorphism. Subtrees whose node invariants differ from the leftmost
//! path at the same depth cannot contain such a leaf and are pruned.
//!
//! The generators found this way generate the whole group (each level adds
//! a transversal of the point stabilizer), so their union-find closure is
//! the orbit partition. The group order is not computed.

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition, Permutation};
use crate::quotient::{is_equitable, refine_coloring};

/// Largest graph accepted by [`orbits_bruteforce`].
pub const BRUTE_FORCE_LIMIT: usize = 8;

/// Default cap on search nodes visited by [`orbits`].
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000;

/// Orbit partition (clusters ordered by smallest member) and the
/// automorphisms that generate it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub partition: Partition,
    pub generators: Vec<Permutation>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.partition.p()
    }

    pub fn is_empty(&self) -> bool {
        self.partition.p() == 0
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when the two classes were distinct.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }

    /// Merges along a permutation; true if anything changed.
    fn absorb(&mut self, perm: &Permutation) -> bool {
        let mut changed = false;
        for v in 0..perm.len() {
            changed |= self.union(v, perm.apply(v));
        }
        changed
    }

    fn into_partition(mut self) -> Partition {
        let n = self.parent.len();
        let labels: Vec<usize> = (0..n).map(|v| self.find(v)).collect();
        let mut dense = vec![usize::MAX; n];
        let mut next = 0;
        let labels = labels
            .into_iter()
            .map(|r| {
                if dense[r] == usize::MAX {
                    dense[r] = next;
                    next += 1;
                }
                dense[r]
            })
            .collect();
        Partition::from_labels(labels)
            .expect("union-find classes are nonempty")
            .normalized()
    }
}

fn orbit_closure(n: usize, generators: &[Permutation]) -> Partition {
    let mut uf = UnionFind::new(n);
    for g in generators {
        uf.absorb(g);
    }
    uf.into_partition()
}

/// Orbits by enumerating all `n!` permutations; refuses `n > 8`.
pub fn orbits_bruteforce(g: &Graph) -> Result<OrbitPartition> {
    let n = g.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mask: Vec<u16> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u16, |m, &a| m | (1 << a)))
        .collect();
    let edges = g.edges();
    let mut uf = UnionFind::new(n);
    let mut generators = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if edges
            .iter()
            .all(|&(u, v)| mask[perm[u]] & (1 << perm[v]) != 0)
        {
            let p = Permutation::new(perm.clone()).expect("enumerated permutation");
            if uf.absorb(&p) {
                generators.push(p);
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(OrbitPartition {
        partition: uf.into_partition(),
        generators,
    })
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Per color: cell size and the neighbor-color profile of its members.
type Invariant = Vec<(usize, Vec<(usize, usize)>)>;

struct Node {
    colors: Vec<usize>,
    invariant: Invariant,
}

struct Search<'g> {
    g: &'g Graph,
    budget: u64,
    visited: u64,
    /// Invariants along the leftmost path, root first, leaf last.
    path_invariants: Vec<Invariant>,
    /// Vertex holding each color at the leftmost leaf.
    first_leaf: Vec<usize>,
}

impl<'g> Search<'g> {
    fn node(&mut self, mut colors: Vec<usize>) -> Result<Node> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let count = refine_coloring(self.g, &mut colors);
        let mut invariant: Invariant = vec![(0, Vec::new()); count];
        let mut filled = vec![false; count];
        for v in 0..self.g.n() {
            let c = colors[v];
            invariant[c].0 += 1;
            if !filled[c] {
                filled[c] = true;
                let mut prof: Vec<usize> = self.g.neighbors(v).iter().map(|&a| colors[a]).collect();
                prof.sort_unstable();
                let mut sparse: Vec<(usize, usize)> = Vec::new();
                for x in prof {
                    match sparse.last_mut() {
                        Some((last, k)) if *last == x => *k += 1,
                        _ => sparse.push((x, 1)),
                    }
                }
                invariant[c].1 = sparse;
            }
        }
        Ok(Node { colors, invariant })
    }

    /// Vertices of the first (lowest color) non-singleton cell, ascending.
    fn target_cell(node: &Node) -> Option<Vec<usize>> {
        let c = node.invariant.iter().position(|(size, _)| *size > 1)?;
        Some(
            node.colors
                .iter()
                .enumerate()
                .filter(|&(_, &x)| x == c)
                .map(|(v, _)| v)
                .collect(),
        )
    }

    /// Gives `v` its own color directly after the rest of its cell.
    fn individualize(colors: &[usize], v: usize) -> Vec<usize> {
        colors
            .iter()
            .enumerate()
            .map(|(u, &c)| if u == v { 2 * c + 1 } else { 2 * c })
            .collect()
    }

    fn leaf_permutation(&self, leaf: &Node) -> Permutation {
        // Vertex with color c at the first leaf maps to the vertex with
        // color c here.
        let mut image = vec![0; self.g.n()];
        for (v, &c) in leaf.colors.iter().enumerate() {
            image[self.first_leaf[c]] = v;
        }
        Permutation::new(image).expect("discrete colorings induce a bijection")
    }

    /// Depth-first search below `node` (at `depth` on the leftmost path)
    /// for a leaf equivalent to the first leaf.
    fn find_equivalent(&mut self, node: Node, depth: usize) -> Result<Option<Permutation>> {
        let Some(cell) = Self::target_cell(&node) else {
            let perm = self.leaf_permutation(&node);
            return Ok(self.g.is_automorphism(&perm)?.then_some(perm));
        };
        for u in cell {
            let child = self.node(Self::individualize(&node.colors, u))?;
            if child.invariant != self.path_invariants[depth + 1] {
                continue;
            }
            if let Some(p) = self.find_equivalent(child, depth + 1)? {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }
}

/// Orbits of `Aut(g)` with the default node budget.
pub fn orbits(g: &Graph) -> Result<OrbitPartition> {
    orbits_with_budget(g, DEFAULT_NODE_BUDGET)
}

/// Orbits of `Aut(g)`; fails with [`Error::BudgetExceeded`] rather than
/// returning a partial answer.
pub fn orbits_with_budget(g: &Graph, budget: u64) -> Result<OrbitPartition> {
    let n = g.n();
    let mut search = Search {
        g,
        budget,
        visited: 0,
        path_invariants: Vec::new(),
        first_leaf: Vec::new(),
    };

    // Leftmost path: (coloring, target cell, chosen vertex) per level.
    let mut path: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    let mut node = search.node(vec![0; n])?;
    while let Some(cell) = Search::target_cell(&node) {
        search.path_invariants.push(node.invariant.clone());
        let v = cell[0];
        let next = search.node(Search::individualize(&node.colors, v))?;
        path.push((node.colors, cell));
        node = next;
    }
    search.path_invariants.push(node.invariant.clone());
    search.first_leaf = vec![0; n];
    for (v, &c) in node.colors.iter().enumerate() {
        search.first_leaf[c] = v;
    }

    let mut generators: Vec<Permutation> = Vec::new();
    let mut uf = UnionFind::new(n);
    for (level, (colors, cell)) in path.iter().enumerate().rev() {
        let v = cell[0];
        for &w in &cell[1..] {
            if uf.find(v) == uf.find(w) {
                continue;
            }
            let child = search.node(Search::individualize(colors, w))?;
            if child.invariant != search.path_invariants[level + 1] {
                continue;
            }
            if let Some(perm) = search.find_equivalent(child, level + 1)? {
                debug_assert_eq!(perm.apply(v), w);
                uf.absorb(&perm);
                generators.push(perm);
            }
        }
    }
    Ok(OrbitPartition {
        partition: uf.into_partition(),
        generators,
    })
}

/// Whether the orbit partition is equitable, as every true orbit partition is.
pub fn orbit_partition_is_equitable(g: &Graph, o: &OrbitPartition) -> Result<bool> {
    is_equitable(g, &o.partition)
}

/// Orbit partition implied by a list of permutations.
pub fn closure_of(n: usize, generators: &[Permutation]) -> Partition {
    orbit_closure(n, generators)
}
