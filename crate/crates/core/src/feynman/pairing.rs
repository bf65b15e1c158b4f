use std::collections::BTreeMap;

/// Perfect matching on the `3m` half-edges of `m` trivalent vertices.
/// Vertex `v` owns half-edges `3v`, `3v+1`, `3v+2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Pairing {
    partner: Vec<usize>,
}

/// Edge multiplicities between vertices; the diagonal counts self-loops.
pub type Adjacency = Vec<Vec<u8>>;

impl Pairing {
    /// Builds a pairing from its involution. Panics unless `partner` is a
    /// fixed-point-free involution on `3m` points.
    pub fn from_partner(partner: Vec<usize>) -> Self {
        assert_eq!(partner.len() % 3, 0, "half-edge count must be 3m");
        for (i, &j) in partner.iter().enumerate() {
            assert!(j < partner.len() && j != i && partner[j] == i, "not an involution");
        }
        Pairing { partner }
    }

    pub fn vertices(&self) -> usize {
        self.partner.len() / 3
    }

    pub fn half_edges(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, h: usize) -> usize {
        self.partner[h]
    }

    pub fn involution(&self) -> &[usize] {
        &self.partner
    }

    /// Edges as half-edge pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|(a, b)| a < *b)
            .map(|(a, &b)| (a, b))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.partner.len() / 2
    }

    /// Component label of each vertex (smallest vertex in the component).
    pub fn components(&self) -> Vec<usize> {
        let m = self.vertices();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for (a, b) in self.edges() {
            let (ra, rb) = (find(&mut parent, a / 3), find(&mut parent, b / 3));
            if ra != rb {
                let (lo, hi) = (ra.min(rb), ra.max(rb));
                parent[hi] = lo;
            }
        }
        (0..m).map(|v| find(&mut parent, v)).collect()
    }

    pub fn component_count(&self) -> usize {
        let mut c = self.components();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// The empty pairing counts as connected (it is the unit of the
    /// exponential relation, and is excluded from connected sums by order).
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Independent cycles `e - v + c`.
    pub fn loops(&self) -> usize {
        self.edge_count() + self.component_count() - self.vertices()
    }

    pub fn adjacency(&self) -> Adjacency {
        let m = self.vertices();
        let mut adj = vec![vec![0u8; m]; m];
        for (a, b) in self.edges() {
            let (u, v) = (a / 3, b / 3);
            if u == v {
                adj[u][u] += 1;
            } else {
                adj[u][v] += 1;
                adj[v][u] += 1;
            }
        }
        adj
    }
}

/// All perfect matchings of `3m` half-edges in a fixed order: the lowest
/// unmatched half-edge is paired with each later one in increasing order.
/// There are `(3m-1)!!` of them when `3m` is even and none otherwise; `m = 0`
/// yields the single empty pairing.
pub fn enumerate_pairings(m: usize) -> Vec<Pairing> {
    let n = 3 * m;
    if n % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut partner = vec![usize::MAX; n];
    fn rec(partner: &mut Vec<usize>, out: &mut Vec<Pairing>) {
        let Some(first) = partner.iter().position(|&p| p == usize::MAX) else {
            out.push(Pairing {
                partner: partner.clone(),
            });
            return;
        };
        for j in first + 1..partner.len() {
            if partner[j] != usize::MAX {
                continue;
            }
            partner[first] = j;
            partner[j] = first;
            rec(partner, out);
            partner[first] = usize::MAX;
            partner[j] = usize::MAX;
        }
    }
    rec(&mut partner, &mut out);
    out
}

/// `(n-1)!!` for even `n`, 0 for odd `n`.
pub fn pairing_count(half_edges: usize) -> u128 {
    if half_edges % 2 == 1 {
        return 0;
    }
    (1..half_edges as u128).step_by(2).product()
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..m).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k.is_multiple_of(2) {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(m, &mut cur, &mut out);
    out
}

/// Isomorphism-invariant form of a vertex-labelled multigraph: the
/// lexicographically smallest adjacency matrix over all vertex relabellings
/// that respect the sorted (degree, loop count) signature.
pub fn canonical_adjacency(adj: &Adjacency) -> Adjacency {
    let m = adj.len();
    let signature = |v: usize| (adj[v][v], adj[v].iter().map(|&x| x as u32).sum::<u32>());
    let mut best: Option<Adjacency> = None;
    for perm in permutations(m) {
        // perm[new] = old; only keep orderings with sorted signatures
        if perm.windows(2).any(|w| signature(w[0]) > signature(w[1])) {
            continue;
        }
        let cand: Adjacency = (0..m)
            .map(|i| (0..m).map(|j| adj[perm[i]][perm[j]]).collect())
            .collect();
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.unwrap_or_default()
}

/// An isomorphism class of trivalent multigraphs with the number of
/// pairings realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphClass {
    pub adjacency: Adjacency,
    pub pairings: u64,
    pub connected: bool,
    pub vertices: usize,
    pub edges: usize,
    pub loops: usize,
    /// A pairing realizing the class.
    pub representative: Pairing,
}

/// Groups all pairings of order `m` into isomorphism classes, in a
/// deterministic order (by canonical adjacency).
pub fn graph_classes(m: usize) -> Vec<GraphClass> {
    let mut labelled: BTreeMap<Adjacency, (u64, Pairing)> = BTreeMap::new();
    for p in enumerate_pairings(m) {
        labelled
            .entry(p.adjacency())
            .and_modify(|e| e.0 += 1)
            .or_insert((1, p));
    }
    let mut classes: BTreeMap<Adjacency, GraphClass> = BTreeMap::new();
    for (adj, (count, rep)) in labelled {
        let canon = canonical_adjacency(&adj);
        classes
            .entry(canon.clone())
            .and_modify(|c| c.pairings += count)
            .or_insert_with(|| GraphClass {
                adjacency: canon,
                pairings: count,
                connected: rep.is_connected(),
                vertices: rep.vertices(),
                edges: rep.edge_count(),
                loops: rep.loops(),
                representative: rep,
            });
    }
    classes.into_values().collect()
}
