// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Two edge-disjoint triangle classes become three path classes.
//!
//! Let `Q'` and `Q''` be edge-disjoint triangle parallel classes on the same
//! `v` points. The intersection graph `B` has one left vertex per block of
//! `Q'`, one right vertex per block of `Q''`, and one edge per point `w`,
//! joining the two blocks that contain `w`. Every block meets three blocks
//! of the other class, so `B` is 3-regular and bipartite, and the union of
//! `Q'` and `Q''` is the line graph of `B`.
//!
//! A 3-regular bipartite graph splits into three perfect matchings, colored
//! `a`, `b`, `c`. For a rotation such as `(a, b, c)`, starting from each left
//! vertex and following an `a` edge, then a `b` edge, then a `c` edge traces
//! a path of three `B` edges. Its three labels form a `P3` of the original
//! graph centered at the middle label. Each rotation gives a parallel class,
//! and the rotations `abc`, `bca`, `cab` together use every pair of adjacent
//! `B` edges exactly once.

use thiserror::Error;

use crate::model::{Block, ClassKind, ParallelClass, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("both classes must be triangle classes")]
    KindMismatch,
    #[error("the classes share edge {0}-{1}")]
    NotEdgeDisjoint(Vertex, Vertex),
    #[error("input is not a parallel class on a common vertex set: {0}")]
    NotAParallelClass(String),
    #[error("intersection graph is not 3-regular bipartite: {0}")]
    NotCubic(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolated(String),
}

/// An edge of the intersection graph, labelled by the point both blocks share.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BEdge {
    pub left: usize,
    pub right: usize,
    pub shared: Vertex,
}

/// The 3-regular bipartite intersection graph of two triangle classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionGraph {
    n: usize,
    edges: Vec<BEdge>,
    /// Edge indices at each left vertex, sorted by right endpoint.
    left_adj: Vec<[usize; 3]>,
    right_adj: Vec<[usize; 3]>,
}

impl IntersectionGraph {
    /// Builds and validates a graph with `n` vertices per side.
    pub fn from_edges(
        n: usize,
        mut edges: Vec<BEdge>,
    ) -> Result<IntersectionGraph, TransformError> {
        edges.sort_by_key(|e| (e.left, e.right, e.shared));
        let mut left: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut right: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            if e.left >= n || e.right >= n {
                return Err(TransformError::NotCubic(format!(
                    "edge {e:?} leaves 0..{n}"
                )));
            }
            left[e.left].push(i);
            right[e.right].push(i);
        }
        if edges
            .windows(2)
            .any(|w| (w[0].left, w[0].right) == (w[1].left, w[1].right))
        {
            return Err(TransformError::NotCubic("parallel edges".into()));
        }
        let mut labels: Vec<Vertex> = edges.iter().map(|e| e.shared).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(TransformError::NotCubic("edge labels repeat".into()));
        }
        let cubic = |adj: Vec<Vec<usize>>, side: &str| -> Result<Vec<[usize; 3]>, TransformError> {
            adj.into_iter()
                .enumerate()
                .map(|(x, a)| {
                    <[usize; 3]>::try_from(a).map_err(|a| {
                        TransformError::NotCubic(format!(
                            "{side} vertex {x} has degree {}",
                            a.len()
                        ))
                    })
                })
                .collect()
        };
        let left_adj = cubic(left, "left")?;
        let mut right_adj = cubic(right, "right")?;
        for adj in &mut right_adj {
            adj.sort_by_key(|&i| (edges[i].left, i));
        }
        Ok(IntersectionGraph {
            n,
            edges,
            left_adj,
            right_adj,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[BEdge] {
        &self.edges
    }
}

fn vertex_index(class: &ParallelClass, v: usize) -> Result<Vec<usize>, TransformError> {
    let mut owner = vec![usize::MAX; v];
    for (i, b) in class.blocks.iter().enumerate() {
        for x in b.vertices() {
            let x = x as usize;
            if x >= v || owner[x] != usize::MAX {
                return Err(TransformError::NotAParallelClass(format!("vertex {x}")));
            }
            owner[x] = i;
        }
    }
    Ok(owner)
}

/// The intersection graph of two triangle classes.
pub fn build_intersection_graph(
    q1: &ParallelClass,
    q2: &ParallelClass,
) -> Result<IntersectionGraph, TransformError> {
    if q1.kind != ClassKind::Triangle
        || q2.kind != ClassKind::Triangle
        || q1
            .blocks
            .iter()
            .chain(&q2.blocks)
            .any(|b| b.kind() != ClassKind::Triangle)
    {
        return Err(TransformError::KindMismatch);
    }
    if q1.blocks.len() != q2.blocks.len() {
        return Err(TransformError::NotAParallelClass(
            "classes differ in size".into(),
        ));
    }
    let n = q1.blocks.len();
    let v = 3 * n;
    let left = vertex_index(q1, v)?;
    let right = vertex_index(q2, v)?;
    // Two blocks sharing two points share an edge.
    let mut first_shared = vec![None; n * n];
    let mut edges = Vec::with_capacity(v);
    for w in 0..v {
        let slot = &mut first_shared[left[w] * n + right[w]];
        if let Some(u) = *slot {
            return Err(TransformError::NotEdgeDisjoint(u as Vertex, w as Vertex));
        }
        *slot = Some(w);
        edges.push(BEdge {
            left: left[w],
            right: right[w],
            shared: w as Vertex,
        });
    }
    IntersectionGraph::from_edges(n, edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    A,
    B,
    C,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::A, Color::B, Color::C];
}

/// A proper 3-edge-coloring, indexed like [`IntersectionGraph::edges`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    pub color: Vec<Color>,
}

impl EdgeColoring {
    /// Whether the coloring is proper and each color is a perfect matching.
    pub fn is_valid_for(&self, b: &IntersectionGraph) -> bool {
        if self.color.len() != b.edges.len() {
            return false;
        }
        let proper = |adj: &[[usize; 3]]| {
            adj.iter().all(|a| {
                let c = a.map(|i| self.color[i]);
                c[0] != c[1] && c[0] != c[2] && c[1] != c[2]
            })
        };
        proper(&b.left_adj) && proper(&b.right_adj)
    }
}

/// Kuhn's augmenting-path matching restricted to `alive` edges. Left
/// vertices are processed in increasing order and adjacency in sorted
/// order, so the result depends only on the graph.
fn perfect_matching(b: &IntersectionGraph, alive: &[bool]) -> Option<Vec<usize>> {
    struct Kuhn<'a> {
        b: &'a IntersectionGraph,
        alive: &'a [bool],
        visited: Vec<usize>,
        match_right: Vec<Option<usize>>,
    }

    impl Kuhn<'_> {
        fn augment(&mut self, x: usize, stamp: usize) -> bool {
            for e in self.b.left_adj[x] {
                if !self.alive[e] {
                    continue;
                }
                let y = self.b.edges[e].right;
                if self.visited[y] == stamp {
                    continue;
                }
                self.visited[y] = stamp;
                let free = match self.match_right[y] {
                    None => true,
                    Some(m) => self.augment(self.b.edges[m].left, stamp),
                };
                if free {
                    self.match_right[y] = Some(e);
                    return true;
                }
            }
            false
        }
    }

    let mut k = Kuhn {
        b,
        alive,
        visited: vec![0; b.n],
        match_right: vec![None; b.n],
    };
    for x in 0..b.n {
        if !k.augment(x, x + 1) {
            return None;
        }
    }
    k.match_right.into_iter().collect()
}

/// Splits `b` into three perfect matchings, colored `a`, `b`, `c` in the
/// order they are extracted.
pub fn three_edge_color(b: &IntersectionGraph) -> Result<EdgeColoring, TransformError> {
    let mut alive = vec![true; b.edges.len()];
    let mut color = vec![Color::C; b.edges.len()];
    for c in [Color::A, Color::B] {
        let m = perfect_matching(b, &alive).ok_or_else(|| {
            TransformError::InternalInvariantViolated(
                "regular bipartite graph without a perfect matching".into(),
            )
        })?;
        for e in m {
            alive[e] = false;
            color[e] = c;
        }
    }
    let coloring = EdgeColoring { color };
    if !coloring.is_valid_for(b) {
        return Err(TransformError::InternalInvariantViolated(
            "leftover edges are not a perfect matching".into(),
        ));
    }
    Ok(coloring)
}

/// A cyclic order of the three colors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rotation {
    Abc,
    Bca,
    Cab,
}

impl Rotation {
    pub const ALL: [Rotation; 3] = [Rotation::Abc, Rotation::Bca, Rotation::Cab];

    pub fn sequence(self) -> [Color; 3] {
        match self {
            Rotation::Abc => [Color::A, Color::B, Color::C],
            Rotation::Bca => [Color::B, Color::C, Color::A],
            Rotation::Cab => [Color::C, Color::A, Color::B],
        }
    }
}

/// The path class traced by `rotation` from every left vertex.
pub fn extract_path_class(
    b: &IntersectionGraph,
    col: &EdgeColoring,
    rotation: Rotation,
) -> ParallelClass {
    let [c1, c2, c3] = rotation.sequence();
    let at = |adj: &[usize; 3], c: Color| -> usize {
        *adj.iter()
            .find(|&&e| col.color[e] == c)
            .expect("coloring is proper")
    };
    let blocks = (0..b.n)
        .map(|x| {
            let e1 = at(&b.left_adj[x], c1);
            let e2 = at(&b.right_adj[b.edges[e1].right], c2);
            let e3 = at(&b.left_adj[b.edges[e2].left], c3);
            Block::path(b.edges[e2].shared, b.edges[e1].shared, b.edges[e3].shared)
        })
        .collect();
    ParallelClass {
        kind: ClassKind::Path,
        blocks,
    }
}

/// Replaces two edge-disjoint triangle classes by three path classes on the
/// same edges, in rotation order `abc`, `bca`, `cab`.
pub fn transform_pair(
    q1: &ParallelClass,
    q2: &ParallelClass,
) -> Result<[ParallelClass; 3], TransformError> {
    let b = build_intersection_graph(q1, q2)?;
    let col = three_edge_color(&b)?;
    Ok(Rotation::ALL.map(|r| {
        let mut class = extract_path_class(&b, &col, r);
        class.blocks.sort_by_key(|bl| bl.min_vertex());
        class
    }))
}
