//! Small undirected simple graphs and the handful of algorithms the rest of
//! the crate needs: connectivity, biconnectivity, bipartiteness, exact
//! vertex connectivity via max-flow, and isomorphism via canonical labeling.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// An undirected simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGraph {
    adj: Vec<BTreeSet<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        Self { adj: vec![BTreeSet::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Adds an undirected edge; self-loops and duplicates are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            return;
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].iter().copied()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// Edges as sorted `(min, max)` pairs, in deterministic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }

    /// True when the graph is connected and has no articulation point.
    /// Graphs with fewer than 3 vertices count as biconnected when connected.
    pub fn is_biconnected(&self) -> bool {
        let n = self.node_count();
        if !self.is_connected() {
            return false;
        }
        if n < 3 {
            return true;
        }
        self.articulation_points().is_empty()
    }

    /// Articulation points by Tarjan's low-link DFS.
    pub fn articulation_points(&self) -> Vec<usize> {
        let n = self.node_count();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut is_art = vec![false; n];
        let mut timer = 0usize;

        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let nbrs: Vec<usize> = self.neighbors(root).collect();
            let mut stack: Vec<(usize, usize, Vec<usize>, usize)> =
                vec![(root, usize::MAX, nbrs, 0)];
            let mut root_children = 0usize;
            while let Some(frame) = stack.last_mut() {
                let (u, parent) = (frame.0, frame.1);
                if frame.3 < frame.2.len() {
                    let v = frame.2[frame.3];
                    frame.3 += 1;
                    if v == parent {
                        continue;
                    }
                    if disc[v] == usize::MAX {
                        if u == root {
                            root_children += 1;
                        }
                        disc[v] = timer;
                        low[v] = timer;
                        timer += 1;
                        let vn: Vec<usize> = self.neighbors(v).collect();
                        stack.push((v, u, vn, 0));
                    } else {
                        low[u] = low[u].min(disc[v]);
                    }
                } else {
                    stack.pop();
                    if let Some(pframe) = stack.last_mut() {
                        let p = pframe.0;
                        low[p] = low[p].min(low[u]);
                        if p != root && low[u] >= disc[p] {
                            is_art[p] = true;
                        }
                    }
                }
            }
            if root_children > 1 {
                is_art[root] = true;
            }
        }
        (0..n).filter(|&v| is_art[v]).collect()
    }

    /// Two-coloring if the graph is bipartite, `None` otherwise. Isolated
    /// vertices get color 0.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.node_count();
        let mut color = vec![u8::MAX; n];
        for start in 0..n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        queue.push_back(v);
                    } else if color[v] == color[u] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// Exact vertex connectivity.
    ///
    /// Minimum over non-adjacent ordered pairs of the maximum number of
    /// internally vertex-disjoint paths, via unit-capacity max-flow on the
    /// split network. Complete graphs have connectivity `n − 1`.
    pub fn vertex_connectivity(&self) -> usize {
        let n = self.node_count();
        if n <= 1 {
            return 0;
        }
        if !self.is_connected() {
            return 0;
        }
        let mut best = n - 1;
        let mut found_pair = false;
        for s in 0..n {
            for t in (s + 1)..n {
                if self.has_edge(s, t) {
                    continue;
                }
                found_pair = true;
                let flow = self.max_vertex_disjoint_paths(s, t, best);
                best = best.min(flow);
                if best == 0 {
                    return 0;
                }
            }
        }
        if !found_pair {
            n - 1
        } else {
            best
        }
    }

    /// Max-flow from `s` to `t` on the vertex-split unit-capacity network,
    /// stopping early at `cap` augmenting paths.
    fn max_vertex_disjoint_paths(&self, s: usize, t: usize, cap: usize) -> usize {
        let n = self.node_count();
        // Node 2i = v_in, 2i+1 = v_out. Splitting arc v_in→v_out has
        // capacity 1 except at the terminals. Edge (u,v) becomes
        // u_out→v_in and v_out→u_in with capacity 1.
        let mut net = FlowNetwork::new(2 * n);
        for v in 0..n {
            let c = if v == s || v == t { n as i64 } else { 1 };
            net.add_edge(2 * v, 2 * v + 1, c);
        }
        for (u, v) in self.edges() {
            net.add_edge(2 * u + 1, 2 * v, 1);
            net.add_edge(2 * v + 1, 2 * u, 1);
        }
        net.max_flow(2 * s + 1, 2 * t, cap as i64) as usize
    }

    /// Canonical certificate: the lexicographically smallest relabeled edge
    /// list over the labelings explored by individualization-refinement.
    /// Two graphs are isomorphic iff their certificates are equal.
    pub fn canonical_form(&self) -> Vec<(usize, usize)> {
        Canonicalizer::new(self).run()
    }

    pub fn is_isomorphic_to(&self, other: &SimpleGraph) -> bool {
        if self.node_count() != other.node_count() || self.edge_count() != other.edge_count() {
            return false;
        }
        self.canonical_form() == other.canonical_form()
    }
}

/// Unit-capacity max-flow with BFS augmentation; plenty for the small swirl
/// graphs this crate produces.
struct FlowNetwork {
    edges: Vec<(usize, i64)>,
    head: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(n: usize) -> Self {
        Self { edges: Vec::new(), head: vec![Vec::new(); n] }
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: i64) {
        self.head[from].push(self.edges.len());
        self.edges.push((to, cap));
        self.head[to].push(self.edges.len());
        self.edges.push((from, 0));
    }

    fn max_flow(&mut self, s: usize, t: usize, limit: i64) -> i64 {
        let n = self.head.len();
        let mut flow = 0;
        while flow < limit {
            let mut prev_edge = vec![usize::MAX; n];
            let mut visited = vec![false; n];
            visited[s] = true;
            let mut queue = std::collections::VecDeque::from([s]);
            'bfs: while let Some(u) = queue.pop_front() {
                for &ei in &self.head[u] {
                    let (to, capacity) = self.edges[ei];
                    if capacity > 0 && !visited[to] {
                        visited[to] = true;
                        prev_edge[to] = ei;
                        if to == t {
                            break 'bfs;
                        }
                        queue.push_back(to);
                    }
                }
            }
            if !visited[t] {
                break;
            }
            let mut v = t;
            while v != s {
                let ei = prev_edge[v];
                self.edges[ei].1 -= 1;
                self.edges[ei ^ 1].1 += 1;
                v = self.edges[ei ^ 1].0;
            }
            flow += 1;
        }
        flow
    }
}

/// Individualization-refinement canonical labeling. Adequate for the
/// desk-scale graphs produced here (hundreds of nodes at most).
struct Canonicalizer<'a> {
    g: &'a SimpleGraph,
    best: Option<Vec<(usize, usize)>>,
}

impl<'a> Canonicalizer<'a> {
    fn new(g: &'a SimpleGraph) -> Self {
        Self { g, best: None }
    }

    fn run(mut self) -> Vec<(usize, usize)> {
        let n = self.g.node_count();
        if n == 0 {
            return Vec::new();
        }
        let init = self.refine(vec![0; n]);
        self.search(init);
        self.best.unwrap_or_default()
    }

    /// Stable color refinement: iterate (color, sorted neighbor colors)
    /// signatures to a fixpoint.
    fn refine(&self, mut colors: Vec<usize>) -> Vec<usize> {
        let n = self.g.node_count();
        loop {
            let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..n)
                .map(|v| {
                    let mut nb: Vec<usize> = self.g.neighbors(v).map(|u| colors[u]).collect();
                    nb.sort_unstable();
                    (colors[v], nb, v)
                })
                .collect();
            sigs.sort();
            let mut new_colors = vec![0usize; n];
            let mut next = 0usize;
            for i in 0..n {
                if i > 0 && (sigs[i].0, &sigs[i].1) != (sigs[i - 1].0, &sigs[i - 1].1) {
                    next += 1;
                }
                new_colors[sigs[i].2] = next;
            }
            if new_colors == colors {
                return colors;
            }
            colors = new_colors;
        }
    }

    fn search(&mut self, colors: Vec<usize>) {
        let n = self.g.node_count();
        let mut class_members: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in 0..n {
            class_members.entry(colors[v]).or_default().push(v);
        }
        match class_members.iter().find(|(_, m)| m.len() > 1) {
            None => {
                // Discrete coloring: colors form a permutation.
                let mut cert: Vec<(usize, usize)> = self
                    .g
                    .edges()
                    .iter()
                    .map(|&(u, v)| {
                        let (a, b) = (colors[u], colors[v]);
                        (a.min(b), a.max(b))
                    })
                    .collect();
                cert.sort_unstable();
                if self.best.as_ref().map_or(true, |b| cert < *b) {
                    self.best = Some(cert);
                }
            }
            Some((&c, members)) => {
                let members = members.clone();
                for v in members {
                    let mut next = colors.clone();
                    // Individualize v: fresh color just below its class.
                    for color in next.iter_mut() {
                        if *color >= c {
                            *color += 1;
                        }
                    }
                    next[v] = c;
                    let refined = self.refine(next);
                    self.search(refined);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cube_graph() -> SimpleGraph {
        // Vertices = 3-bit strings, edges between strings differing in one bit.
        let mut g = SimpleGraph::new(8);
        for u in 0..8usize {
            for b in 0..3 {
                g.add_edge(u, u ^ (1 << b));
            }
        }
        g
    }

    fn k23() -> SimpleGraph {
        SimpleGraph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
    }

    #[test]
    fn k23_has_connectivity_two() {
        assert_eq!(k23().vertex_connectivity(), 2);
    }

    #[test]
    fn cube_has_connectivity_three() {
        let g = cube_graph();
        assert_eq!(g.vertex_connectivity(), 3);
        assert!(g.is_biconnected());
        assert!(g.bipartition().is_some());
    }

    #[test]
    fn complete_graph_connectivity() {
        let mut g = SimpleGraph::new(4);
        for u in 0..4 {
            for v in (u + 1)..4 {
                g.add_edge(u, v);
            }
        }
        assert_eq!(g.vertex_connectivity(), 3);
    }

    #[test]
    fn path_with_cut_vertex() {
        let g = SimpleGraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert!(g.is_connected());
        assert!(!g.is_biconnected());
        assert_eq!(g.articulation_points(), vec![1]);
        assert_eq!(g.vertex_connectivity(), 1);
    }

    #[test]
    fn odd_cycle_not_bipartite() {
        let g = SimpleGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        assert!(g.bipartition().is_none());
        assert_eq!(g.vertex_connectivity(), 2);
    }

    #[test]
    fn disconnected_graph() {
        let g = SimpleGraph::from_edges(4, &[(0, 1), (2, 3)]);
        assert!(!g.is_connected());
        assert_eq!(g.vertex_connectivity(), 0);
    }

    #[test]
    fn canonical_form_detects_isomorphism() {
        let g = cube_graph();
        let perm = [5usize, 2, 7, 0, 3, 6, 1, 4];
        let mut h = SimpleGraph::new(8);
        for (u, v) in g.edges() {
            h.add_edge(perm[u], perm[v]);
        }
        assert!(g.is_isomorphic_to(&h));
        // Cube vs K_{3,3} plus an isolated edge: same counts, different graphs.
        let mut k33 = SimpleGraph::new(8);
        for u in 0..3 {
            for v in 3..6 {
                k33.add_edge(u, v);
            }
        }
        k33.add_edge(6, 7);
        for u in 0..3 {
            // pad to 12 edges like the cube
            k33.add_edge(u, 6);
        }
        assert_eq!(k33.edge_count(), 13);
        assert!(!g.is_isomorphic_to(&k33));
    }

    fn to_petgraph(g: &SimpleGraph) -> petgraph::graph::UnGraph<(), ()> {
        let mut pg = petgraph::graph::UnGraph::new_undirected();
        let nodes: Vec<_> = (0..g.node_count()).map(|_| pg.add_node(())).collect();
        for (u, v) in g.edges() {
            pg.add_edge(nodes[u], nodes[v], ());
        }
        pg
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Cross-check canonical labeling against petgraph's VF2 on small
        /// random graph pairs.
        #[test]
        fn canonical_form_agrees_with_vf2(
            edges_a in prop::collection::vec((0usize..7, 0usize..7), 0..16),
            edges_b in prop::collection::vec((0usize..7, 0usize..7), 0..16),
        ) {
            let a = SimpleGraph::from_edges(7, &edges_a);
            let b = SimpleGraph::from_edges(7, &edges_b);
            let ours = a.is_isomorphic_to(&b);
            let vf2 = petgraph::algo::is_isomorphic(&to_petgraph(&a), &to_petgraph(&b));
            prop_assert_eq!(ours, vf2);
        }

        /// A permuted copy is always isomorphic.
        #[test]
        fn permuted_copy_is_isomorphic(
            edges in prop::collection::vec((0usize..8, 0usize..8), 0..20),
            seed in 0u64..1000,
        ) {
            let g = SimpleGraph::from_edges(8, &edges);
            let mut perm: Vec<usize> = (0..8).collect();
            let mut s = seed;
            for i in (1..8).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let mut h = SimpleGraph::new(8);
            for (u, v) in g.edges() {
                h.add_edge(perm[u], perm[v]);
            }
            prop_assert!(g.is_isomorphic_to(&h));
        }
    }
}
