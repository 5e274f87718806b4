//! Undirected simple interaction graphs and random regular graph generation.

use std::collections::VecDeque;

use rand::Rng;

use crate::error::{Error, Result};

/// Restart budget for [`random_k_regular`].
pub const DEFAULT_RESTART_BUDGET: usize = 10_000;

/// Undirected simple graph on agents `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    /// `(i, j)` with `i < j`, sorted lexicographically.
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from an edge list; each unordered pair may appear at
    /// most once, in either orientation.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut normalized = Vec::with_capacity(edges.len());
        for &(i, j) in edges {
            if i == j || i >= n || j >= n {
                return Err(Error::InvalidEdge(i, j));
            }
            normalized.push((i.min(j), i.max(j)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidEdge(w[0].0, w[0].1));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(i, j) in &normalized {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph { n, edges: normalized, adjacency })
    }

    pub fn edgeless(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adjacency: vec![Vec::new(); n] }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).expect("path edges are simple")
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InfeasibleDegree { n, k: 2 });
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((0, n - 1));
        Graph::new(n, &edges)
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::new(n, &edges).expect("complete graph edges are simple")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted neighbours of `i`.
    pub fn neighbors(&self, i: usize) -> Result<&[usize]> {
        self.adjacency.get(i).map(Vec::as_slice).ok_or(Error::IndexOutOfRange { index: i, size: self.n })
    }

    pub fn degree(&self, i: usize) -> Result<usize> {
        self.neighbors(i).map(<[usize]>::len)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency.get(i).is_some_and(|l| l.binary_search(&j).is_ok())
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    /// Text form: header `"n k seed"`, then one `"i j"` line per edge.
    pub fn to_text(&self, k: usize, seed: u64) -> String {
        let mut s = format!("{} {} {}\n", self.n, k, seed);
        for (i, j) in &self.edges {
            s.push_str(&format!("{i} {j}\n"));
        }
        s
    }

    /// Parses [`Graph::to_text`] output, returning the graph, `k` and seed.
    pub fn from_text(text: &str) -> Result<(Graph, usize, u64)> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::parse(1, "header must be \"n k seed\""));
        }
        let bad = |what: &str| Error::parse(1, format!("invalid {what}"));
        let n: usize = fields[0].parse().map_err(|_| bad("n"))?;
        let k: usize = fields[1].parse().map_err(|_| bad("k"))?;
        let seed: u64 = fields[2].parse().map_err(|_| bad("seed"))?;
        let mut edges = Vec::new();
        for (idx, line) in lines {
            let mut it = line.split_whitespace().map(str::parse::<usize>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(i)), Some(Ok(j)), None) => edges.push((i, j)),
                _ => return Err(Error::parse(idx + 1, "expected \"i j\"")),
            }
        }
        Ok((Graph::new(n, &edges)?, k, seed))
    }
}

/// Samples a simple `k`-regular graph on `n` vertices.
///
/// Sequential pairing: the `n·k` half-edges are matched one pair at a time,
/// each pair drawn uniformly among the remaining pairs that would create
/// neither a loop nor a repeated edge. A dead end (no admissible pair left)
/// restarts from scratch, up to `max_restarts` times.
pub fn random_k_regular<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R, max_restarts: usize) -> Result<Graph> {
    if k >= n || !(n * k).is_multiple_of(2) {
        return Err(Error::InfeasibleDegree { n, k });
    }
    for _ in 0..max_restarts.max(1) {
        if let Some(edges) = try_pairing(n, k, rng) {
            return Graph::new(n, &edges);
        }
    }
    Err(Error::GraphBudget { attempts: max_restarts.max(1) })
}

fn try_pairing<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Option<Vec<(usize, usize)>> {
    const QUICK_TRIES: usize = 32;
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, k)).collect();
    let mut adjacent = vec![vec![false; n]; n];
    let mut edges = Vec::with_capacity(n * k / 2);
    let admissible = |adjacent: &[Vec<bool>], u: usize, v: usize| u != v && !adjacent[u][v];

    while !stubs.is_empty() {
        let m = stubs.len();
        let mut chosen = None;
        for _ in 0..QUICK_TRIES {
            let x = rng.gen_range(0..m);
            let y = rng.gen_range(0..m);
            if x != y && admissible(&adjacent, stubs[x], stubs[y]) {
                chosen = Some((x, y));
                break;
            }
        }
        if chosen.is_none() {
            let candidates: Vec<(usize, usize)> = (0..m)
                .flat_map(|x| (x + 1..m).map(move |y| (x, y)))
                .filter(|&(x, y)| admissible(&adjacent, stubs[x], stubs[y]))
                .collect();
            if candidates.is_empty() {
                return None;
            }
            chosen = Some(candidates[rng.gen_range(0..candidates.len())]);
        }
        let (x, y) = chosen?;
        let (u, v) = (stubs[x], stubs[y]);
        adjacent[u][v] = true;
        adjacent[v][u] = true;
        edges.push((u, v));
        stubs.swap_remove(x.max(y));
        stubs.swap_remove(x.min(y));
    }
    Some(edges)
}
