//! Quotient graphs, equitable partitions and color refinement.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Partition};
use crate::io::{content, parse_num};

/// Edge multiplicities of one quotient pair `(j, k)`, `j < k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairWeights {
    /// Neighbors every vertex of `C_j` has in `C_k` (`Q_jk`).
    pub low: u64,
    /// Neighbors every vertex of `C_k` has in `C_j` (`Q_kj`).
    pub high: u64,
}

/// A quotient graph over `p` clusters: self-loop counts plus weighted,
/// unordered cluster pairs. A pair that is absent has both weights zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuotientGraph {
    self_loops: Vec<u64>,
    pairs: BTreeMap<(usize, usize), PairWeights>,
}

impl QuotientGraph {
    /// `self_loops.len()` is the cluster count. Pairs are 0-based `(j, k)`
    /// with `j < k`; both weights must be positive.
    pub fn new<I>(self_loops: Vec<u64>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), PairWeights)>,
    {
        let p = self_loops.len();
        let mut map = BTreeMap::new();
        for ((j, k), w) in pairs {
            if j == k {
                return Err(invalid(format!("pair ({j}, {k}) joins a cluster to itself")));
            }
            if j > k || k >= p {
                return Err(invalid(format!("pair ({j}, {k}) needs j < k < {p}")));
            }
            if w.low == 0 || w.high == 0 {
                return Err(invalid(format!("pair ({j}, {k}) has a zero weight")));
            }
            if map.insert((j, k), w).is_some() {
                return Err(invalid(format!("pair ({j}, {k}) declared twice")));
            }
        }
        Ok(QuotientGraph {
            self_loops,
            pairs: map,
        })
    }

    pub fn p(&self) -> usize {
        self.self_loops.len()
    }

    pub fn self_loop(&self, i: usize) -> u64 {
        self.self_loops[i]
    }

    pub fn self_loops(&self) -> &[u64] {
        &self.self_loops
    }

    /// Pairs in ascending `(j, k)` order.
    pub fn pairs(&self) -> impl Iterator<Item = ((usize, usize), PairWeights)> + '_ {
        self.pairs.iter().map(|(&k, &w)| (k, w))
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    /// Entry `Q_ij`: neighbors a vertex of cluster `i` has in cluster `j`.
    pub fn q(&self, i: usize, j: usize) -> u64 {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => self.self_loops[i],
            Less => self.pairs.get(&(i, j)).map_or(0, |w| w.low),
            Greater => self.pairs.get(&(j, i)).map_or(0, |w| w.high),
        }
    }

    /// The dense `p × p` matrix `Q`.
    pub fn q_matrix(&self) -> Vec<Vec<u64>> {
        let p = self.p();
        (0..p).map(|i| (0..p).map(|j| self.q(i, j)).collect()).collect()
    }

    /// Parses the quotient file format (1-based indices).
    pub fn parse(text: &str) -> Result<Self> {
        let perr = |line: usize, message: String| Error::Parse { line, message };
        let mut p: Option<usize> = None;
        let mut loops: Vec<Option<u64>> = Vec::new();
        let mut pairs: BTreeMap<(usize, usize), PairWeights> = BTreeMap::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = content(raw);
            if body.is_empty() {
                continue;
            }
            let toks: Vec<&str> = body.split_whitespace().collect();
            let Some(p) = p else {
                if toks.len() != 2 || toks[0] != "quotient" {
                    return Err(perr(line, "expected header `quotient <p>`".into()));
                }
                let count: usize = parse_num(toks[1], line, "cluster count")?;
                p = Some(count);
                loops = vec![None; count];
                continue;
            };
            let cluster = |tok: &str| -> Result<usize> {
                let i: usize = parse_num(tok, line, "cluster index")?;
                if i == 0 || i > p {
                    return Err(perr(line, format!("cluster {i} outside 1..={p}")));
                }
                Ok(i - 1)
            };
            match toks[0] {
                "self" => {
                    if toks.len() != 3 {
                        return Err(perr(line, "expected `self <i> <d>`".into()));
                    }
                    let i = cluster(toks[1])?;
                    let d: u64 = parse_num(toks[2], line, "self-loop count")?;
                    if loops[i].replace(d).is_some() {
                        return Err(perr(line, format!("self-loop of cluster {} declared twice", i + 1)));
                    }
                }
                "edge" => {
                    if toks.len() != 5 {
                        return Err(perr(line, "expected `edge <j> <k> <w0> <w1>`".into()));
                    }
                    let j = cluster(toks[1])?;
                    let k = cluster(toks[2])?;
                    if j == k {
                        return Err(perr(line, format!("edge joins cluster {} to itself", j + 1)));
                    }
                    if j > k {
                        return Err(perr(line, format!("edge {} {} needs j < k", j + 1, k + 1)));
                    }
                    let low: u64 = parse_num(toks[3], line, "weight")?;
                    let high: u64 = parse_num(toks[4], line, "weight")?;
                    if low == 0 || high == 0 {
                        return Err(perr(line, "edge weights must be at least 1".into()));
                    }
                    if pairs.insert((j, k), PairWeights { low, high }).is_some() {
                        return Err(perr(line, format!("edge {} {} declared twice", j + 1, k + 1)));
                    }
                }
                "quotient" => return Err(perr(line, "repeated `quotient` header".into())),
                other => return Err(perr(line, format!("unknown directive `{other}`"))),
            }
        }
        if p.is_none() {
            return Err(perr(1, "missing `quotient <p>` header".into()));
        }
        QuotientGraph::new(loops.into_iter().map(|d| d.unwrap_or(0)).collect(), pairs)
    }

    /// Serializes to the quotient file format; zero self-loops are omitted.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "quotient {}", self.p()).unwrap();
        for (i, &d) in self.self_loops.iter().enumerate() {
            if d > 0 {
                writeln!(out, "self {} {}", i + 1, d).unwrap();
            }
        }
        for ((j, k), w) in self.pairs() {
            writeln!(out, "edge {} {} {} {}", j + 1, k + 1, w.low, w.high).unwrap();
        }
        out
    }
}

/// Sparse per-vertex `(cluster, count)` profile, sorted by cluster.
fn profile(g: &Graph, labels: &[usize], v: usize, buf: &mut Vec<(usize, usize)>) {
    buf.clear();
    let mut cs: Vec<usize> = g.neighbors(v).iter().map(|&a| labels[a]).collect();
    cs.sort_unstable();
    for c in cs {
        match buf.last_mut() {
            Some((last, cnt)) if *last == c => *cnt += 1,
            _ => buf.push((c, 1)),
        }
    }
}

fn first_violation(g: &Graph, part: &Partition) -> Result<Option<Error>> {
    if part.n() != g.n() {
        return Err(invalid(format!(
            "partition covers {} vertices, graph has {}",
            part.n(),
            g.n()
        )));
    }
    let labels = part.labels();
    let mut reps: Vec<Option<(usize, Vec<(usize, usize)>)>> = vec![None; part.p()];
    let mut buf = Vec::new();
    for v in 0..g.n() {
        profile(g, labels, v, &mut buf);
        let c = labels[v];
        match &reps[c] {
            None => reps[c] = Some((v, buf.clone())),
            Some((rep, rp)) if *rp != buf => {
                let cluster = first_difference(rp, &buf);
                return Ok(Some(Error::NotEquitable {
                    first: *rep,
                    second: v,
                    cluster,
                }));
            }
            Some(_) => {}
        }
    }
    Ok(None)
}

fn first_difference(a: &[(usize, usize)], b: &[(usize, usize)]) -> usize {
    let count = |s: &[(usize, usize)], k: usize| s.iter().find(|e| e.0 == k).map_or(0, |e| e.1);
    let mut ks: Vec<usize> = a.iter().chain(b).map(|e| e.0).collect();
    ks.sort_unstable();
    ks.into_iter()
        .find(|&k| count(a, k) != count(b, k))
        .expect("profiles differ")
}

/// Whether `part` is an equitable partition of `g`.
pub fn is_equitable(g: &Graph, part: &Partition) -> Result<bool> {
    Ok(first_violation(g, part)?.is_none())
}

/// Like [`is_equitable`], but reports the first violating vertex pair.
pub fn check_equitable(g: &Graph, part: &Partition) -> Result<()> {
    match first_violation(g, part)? {
        None => Ok(()),
        Some(e) => Err(e),
    }
}

/// Quotient graph of `g` under an equitable partition.
pub fn extract_quotient(g: &Graph, part: &Partition) -> Result<QuotientGraph> {
    check_equitable(g, part)?;
    let p = part.p();
    let cells = part.cells();
    let mut rows = vec![vec![0u64; p]; p];
    for (k, cell) in cells.iter().enumerate() {
        for &a in g.neighbors(cell[0]) {
            rows[k][part.cluster_of(a)] += 1;
        }
    }
    let self_loops = (0..p).map(|k| rows[k][k]).collect();
    let mut pairs = Vec::new();
    for j in 0..p {
        for k in j + 1..p {
            if rows[j][k] > 0 {
                pairs.push((
                    (j, k),
                    PairWeights {
                        low: rows[j][k],
                        high: rows[k][j],
                    },
                ));
            }
        }
    }
    QuotientGraph::new(self_loops, pairs)
}

/// Refines an ordered coloring to its coarsest equitable refinement.
///
/// Each round recolors every vertex by the rank of `(old color, neighbor
/// color profile)` among all such keys present. The rank depends only on
/// colors, never on vertex names, so isomorphic inputs refine to
/// correspondingly isomorphic outputs, and cell order follows the input
/// order. Returns the number of colors.
pub(crate) fn refine_coloring(g: &Graph, colors: &mut [usize]) -> usize {
    let n = g.n();
    let mut count = {
        let mut c: Vec<usize> = colors.to_vec();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    let mut buf = Vec::new();
    loop {
        let keys: Vec<(usize, Vec<(usize, usize)>)> = (0..n)
            .map(|v| {
                profile(g, colors, v, &mut buf);
                (colors[v], buf.clone())
            })
            .collect();
        let mut distinct: Vec<&(usize, Vec<(usize, usize)>)> = keys.iter().collect();
        distinct.sort_unstable();
        distinct.dedup();
        let next = distinct.len();
        for (v, key) in keys.iter().enumerate() {
            colors[v] = distinct.binary_search(&key).unwrap();
        }
        if next == count {
            return count;
        }
        count = next;
    }
}

/// The coarsest equitable partition (minimal balanced coloring) of `g`,
/// with clusters ordered by smallest member.
pub fn coarsest_equitable(g: &Graph) -> Partition {
    let mut colors = vec![0; g.n()];
    refine_coloring(g, &mut colors);
    Partition::from_labels(colors)
        .expect("refinement yields dense colors")
        .normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn three_cluster() -> QuotientGraph {
        QuotientGraph::parse("quotient 3\nself 1 1\nself 2 2\nedge 1 2 2 1\nedge 1 3 1 2\n").unwrap()
    }

    fn path3() -> Graph {
        Graph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn q_matrix_example() {
        let q = QuotientGraph::new(
            vec![1, 2, 0],
            [
                ((0, 1), PairWeights { low: 1, high: 2 }),
                ((0, 2), PairWeights { low: 2, high: 1 }),
            ],
        )
        .unwrap();
        assert_eq!(q.q_matrix(), vec![vec![1, 1, 2], vec![2, 2, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn q_matrix_three_cluster_and_trivial() {
        assert_eq!(
            three_cluster().q_matrix(),
            vec![vec![1, 2, 1], vec![1, 2, 0], vec![2, 0, 0]]
        );
        let q = QuotientGraph::parse("quotient 1").unwrap();
        assert_eq!(q.q_matrix(), vec![vec![0]]);
        assert_eq!(q.pair_count(), 0);
    }

    #[test]
    fn parse_rejections() {
        let bad = [
            ("quotient 3\nedge 2 2 1 1\n", 2),
            ("quotient 3\nedge 2 1 1 1\n", 2),
            ("quotient 3\nedge 1 2 0 1\n", 2),
            ("quotient 3\nself 1 1\nself 1 2\n", 3),
            ("quotient 3\nedge 1 2 1 1\nedge 1 2 1 1\n", 3),
            ("quotient 3\nself 4 1\n", 2),
            ("quotient 3\nself 0 1\n", 2),
            ("quotient 3\nself 1\n", 2),
            ("quotient 3\nloop 1 1\n", 2),
            ("self 1 1\n", 1),
        ];
        for (text, line) in bad {
            match QuotientGraph::parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        assert!(QuotientGraph::parse("").is_err());
    }

    #[test]
    fn serialize_round_trip() {
        let q = three_cluster();
        assert_eq!(QuotientGraph::parse(&q.serialize()).unwrap(), q);
    }

    #[test]
    fn equitable_examples() {
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(is_equitable(&c4, &Partition::unit(4)).unwrap());
        let ends = Partition::from_labels(vec![0, 1, 0]).unwrap();
        assert!(is_equitable(&path3(), &ends).unwrap());
        assert!(!is_equitable(&path3(), &Partition::unit(3)).unwrap());
        assert!(is_equitable(&path3(), &Partition::unit(4)).is_err());
    }

    #[test]
    fn extract_examples() {
        let k4 = extract_quotient(&complete(4), &Partition::unit(4)).unwrap();
        assert_eq!(k4.q_matrix(), vec![vec![3]]);
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let part = Partition::from_labels(vec![0, 1, 1, 1]).unwrap();
        let q = extract_quotient(&star, &part).unwrap();
        assert_eq!(q.q_matrix(), vec![vec![0, 3], vec![1, 0]]);
    }

    #[test]
    fn extract_names_violation() {
        match extract_quotient(&path3(), &Partition::unit(3)) {
            Err(Error::NotEquitable {
                first: 0,
                second: 1,
                cluster: 0,
            }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn coarsest_examples() {
        let c5 = Graph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(coarsest_equitable(&c5).p(), 1);
        assert_eq!(coarsest_equitable(&complete(6)).p(), 1);
        let mbc = coarsest_equitable(&path3());
        assert_eq!(mbc.cells(), vec![vec![0, 2], vec![1]]);
        assert_eq!(coarsest_equitable(&Graph::empty(0)).p(), 0);
        assert_eq!(coarsest_equitable(&Graph::empty(4)).p(), 1);
    }

    #[test]
    fn coarsest_on_longer_path() {
        // P5: ends, next-to-ends, center.
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let mbc = coarsest_equitable(&g);
        assert_eq!(mbc.cells(), vec![vec![0, 4], vec![1, 3], vec![2]]);
        assert!(is_equitable(&g, &mbc).unwrap());
    }
}
