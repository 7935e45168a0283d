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

//! Core vocabulary: vertices, edges, blocks, parallel classes and decompositions.
//!
//! A [`Decomposition`] is the certificate object passed between every other
//! module. It carries the order `v`, the host graph (`K_v` for odd `v`,
//! `K_v - I` for even `v`), the removed one-factor `I` when present, and an
//! ordered list of uniform parallel classes.

use std::fmt;

use thiserror::Error;

/// A vertex label in `0..v`.
pub type Vertex = u32;

/// An unordered vertex pair stored with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub lo: Vertex,
    pub hi: Vertex,
}

impl Edge {
    /// Normalizes the pair so that `lo <= hi`.
    pub fn new(a: Vertex, b: Vertex) -> Edge {
        debug_assert_ne!(a, b, "an edge needs two distinct endpoints");
        if a < b {
            Edge { lo: a, hi: b }
        } else {
            Edge { lo: b, hi: a }
        }
    }

    /// Dense index of the pair among all `v(v-1)/2` pairs of `0..v`.
    pub fn index(&self, v: u32) -> usize {
        let (lo, hi, v) = (self.lo as usize, self.hi as usize, v as usize);
        lo * (2 * v - lo - 1) / 2 + (hi - lo - 1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// Shape of the blocks in a uniform class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    /// Every block is a 3-path `P3`.
    Path,
    /// Every block is a triangle `K3`.
    Triangle,
}

impl ClassKind {
    pub fn name(self) -> &'static str {
        match self {
            ClassKind::Path => "path",
            ClassKind::Triangle => "triangle",
        }
    }
}

/// A block on three vertices.
///
/// `Triangle([a, b, c])` has edges `ab`, `bc`, `ca`. `Path { center, ends }`
/// has the two edges `center-ends[0]` and `center-ends[1]` and omits the
/// chord between the ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    Triangle([Vertex; 3]),
    Path { center: Vertex, ends: [Vertex; 2] },
}

impl Block {
    /// A triangle with its vertices sorted.
    pub fn triangle(a: Vertex, b: Vertex, c: Vertex) -> Block {
        let mut t = [a, b, c];
        t.sort_unstable();
        Block::Triangle(t)
    }

    /// A path with its ends sorted.
    pub fn path(center: Vertex, x: Vertex, y: Vertex) -> Block {
        Block::Path {
            center,
            ends: if x <= y { [x, y] } else { [y, x] },
        }
    }

    pub fn kind(&self) -> ClassKind {
        match self {
            Block::Triangle(_) => ClassKind::Triangle,
            Block::Path { .. } => ClassKind::Path,
        }
    }

    pub fn vertices(&self) -> [Vertex; 3] {
        match *self {
            Block::Triangle(t) => t,
            Block::Path { center, ends } => [center, ends[0], ends[1]],
        }
    }

    pub fn min_vertex(&self) -> Vertex {
        let [a, b, c] = self.vertices();
        a.min(b).min(c)
    }

    fn has_repeat(&self) -> bool {
        let [a, b, c] = self.vertices();
        a == b || b == c || a == c
    }

    /// Same block with its fields sorted; does not check distinctness.
    pub fn sorted(&self) -> Block {
        match *self {
            Block::Triangle([a, b, c]) => Block::triangle(a, b, c),
            Block::Path { center, ends } => Block::path(center, ends[0], ends[1]),
        }
    }

    /// Sorted form of the block, or an error if a vertex is repeated.
    pub fn canonical(&self) -> Result<Block, StructureError> {
        if self.has_repeat() {
            return Err(StructureError::RepeatedVertex { block: *self });
        }
        Ok(self.sorted())
    }

    /// The edge set of the block: three edges for a triangle, two for a path.
    pub fn edges(&self) -> Vec<Edge> {
        match *self {
            Block::Triangle([a, b, c]) => vec![Edge::new(a, b), Edge::new(a, c), Edge::new(b, c)],
            Block::Path { center, ends } => {
                vec![Edge::new(center, ends[0]), Edge::new(center, ends[1])]
            }
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Triangle([a, b, c]) => write!(f, "({a},{b},{c})"),
            Block::Path { center, ends } => write!(f, "({center};{},{})", ends[0], ends[1]),
        }
    }
}

/// Free-function form of [`Block::edges`].
pub fn block_edges(b: &Block) -> Vec<Edge> {
    b.edges()
}

/// A uniform set of blocks meant to partition the vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelClass {
    pub kind: ClassKind,
    pub blocks: Vec<Block>,
}

impl ParallelClass {
    /// Builds a class whose kind is taken from its blocks.
    ///
    /// Panics on an empty or mixed block list; use the struct literal to
    /// represent malformed classes.
    pub fn from_blocks(blocks: Vec<Block>) -> ParallelClass {
        let kind = blocks
            .first()
            .expect("class needs at least one block")
            .kind();
        assert!(blocks.iter().all(|b| b.kind() == kind), "mixed class");
        ParallelClass { kind, blocks }
    }

    /// Checks uniformity, size `v/3` and the vertex partition property.
    pub fn check(&self, v: u32, index: usize) -> Result<(), StructureError> {
        if self.blocks.iter().any(|b| b.kind() != self.kind) {
            return Err(StructureError::NonUniformClass { class: index });
        }
        let expected = (v / 3) as usize;
        if self.blocks.len() != expected {
            return Err(StructureError::WrongClassSize {
                class: index,
                expected,
                found: self.blocks.len(),
            });
        }
        let mut seen = vec![false; v as usize];
        for b in &self.blocks {
            for x in b.vertices() {
                if x >= v {
                    return Err(StructureError::VertexOutOfRange { vertex: x, v });
                }
                if std::mem::replace(&mut seen[x as usize], true) {
                    return Err(StructureError::NotAPartition {
                        class: index,
                        vertex: x,
                    });
                }
            }
        }
        Ok(())
    }

    fn canonicalized(&self) -> ParallelClass {
        let mut blocks: Vec<Block> = self.blocks.iter().map(Block::sorted).collect();
        blocks.sort_by_key(|b| (b.min_vertex(), b.vertices()));
        ParallelClass {
            kind: self.kind,
            blocks,
        }
    }
}

/// A perfect matching of `0..v`, stored as normalized pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFactor {
    pub pairs: Vec<Edge>,
}

impl OneFactor {
    /// The factor `{2i, 2i+1}` used by the triple engine.
    pub fn standard(v: u32) -> OneFactor {
        OneFactor {
            pairs: (0..v / 2).map(|i| Edge::new(2 * i, 2 * i + 1)).collect(),
        }
    }

    pub fn check(&self, v: u32) -> Result<(), StructureError> {
        if self.pairs.len() != (v / 2) as usize {
            return Err(StructureError::BadFactor(format!(
                "expected {} pairs, found {}",
                v / 2,
                self.pairs.len()
            )));
        }
        let mut seen = vec![false; v as usize];
        for e in &self.pairs {
            if e.lo == e.hi {
                return Err(StructureError::BadFactor(format!("loop {e}")));
            }
            for x in [e.lo, e.hi] {
                if x >= v {
                    return Err(StructureError::VertexOutOfRange { vertex: x, v });
                }
                if std::mem::replace(&mut seen[x as usize], true) {
                    return Err(StructureError::BadFactor(format!(
                        "vertex {x} covered twice"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Host graph of a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    /// `K_v`, used for odd `v`.
    Complete,
    /// `K_v` minus a one-factor, used for even `v`.
    MinusOneFactor,
}

impl GraphKind {
    pub fn for_order(v: u32) -> GraphKind {
        if v % 2 == 1 {
            GraphKind::Complete
        } else {
            GraphKind::MinusOneFactor
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Complete => "complete",
            GraphKind::MinusOneFactor => "minus-one-factor",
        }
    }
}

/// A (claimed) uniformly resolvable decomposition.
///
/// Fields are public so malformed values can be represented; the verifier
/// is total over them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub v: u32,
    pub graph: GraphKind,
    pub factor: Option<OneFactor>,
    pub classes: Vec<ParallelClass>,
}

impl Decomposition {
    /// Number of path classes and triangle classes.
    pub fn count_classes(&self) -> (u32, u32) {
        let r = self
            .classes
            .iter()
            .filter(|c| c.kind == ClassKind::Path)
            .count() as u32;
        (r, self.classes.len() as u32 - r)
    }

    /// Checks the per-type invariants (order, graph kind, factor, classes).
    ///
    /// This does not check that the blocks partition the edge set; that is
    /// the verifier's job.
    pub fn check_structure(&self) -> Result<(), StructureError> {
        if self.v < 3 {
            return Err(StructureError::OrderTooSmall(self.v));
        }
        if self.v % 3 != 0 {
            return Err(StructureError::OrderNotDivisibleBy3(self.v));
        }
        if self.graph != GraphKind::for_order(self.v) {
            return Err(StructureError::GraphKindMismatch {
                v: self.v,
                graph: self.graph,
            });
        }
        match (&self.factor, self.graph) {
            (None, GraphKind::MinusOneFactor) => return Err(StructureError::MissingFactor),
            (Some(_), GraphKind::Complete) => return Err(StructureError::UnexpectedFactor),
            (Some(f), GraphKind::MinusOneFactor) => f.check(self.v)?,
            (None, GraphKind::Complete) => {}
        }
        for (i, c) in self.classes.iter().enumerate() {
            for b in &c.blocks {
                b.canonical()?;
            }
            c.check(self.v, i)?;
        }
        Ok(())
    }
}

/// Returns `d` with every block sorted, blocks ordered by smallest vertex
/// and factor pairs ordered by `lo`. Class order is preserved.
pub fn canonicalize(d: &Decomposition) -> Result<Decomposition, StructureError> {
    for c in &d.classes {
        for b in &c.blocks {
            b.canonical()?;
        }
    }
    Ok(sort_fields(d))
}

/// Sorting half of [`canonicalize`], without the repeated-vertex check.
pub(crate) fn sort_fields(d: &Decomposition) -> Decomposition {
    let factor = d.factor.as_ref().map(|f| {
        let mut pairs: Vec<Edge> = f
            .pairs
            .iter()
            .map(|e| {
                if e.lo <= e.hi {
                    *e
                } else {
                    Edge { lo: e.hi, hi: e.lo }
                }
            })
            .collect();
        pairs.sort();
        OneFactor { pairs }
    });
    Decomposition {
        v: d.v,
        graph: d.graph,
        factor,
        classes: d.classes.iter().map(ParallelClass::canonicalized).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("block {block} repeats a vertex")]
    RepeatedVertex { block: Block },
    #[error("vertex {vertex} is out of range for v={v}")]
    VertexOutOfRange { vertex: Vertex, v: u32 },
    #[error("v={0} is below 3")]
    OrderTooSmall(u32),
    #[error("v={0} is not divisible by 3")]
    OrderNotDivisibleBy3(u32),
    #[error("graph kind {} does not match the parity of v={v}", graph.name())]
    GraphKindMismatch { v: u32, graph: GraphKind },
    #[error("even v requires a factor line")]
    MissingFactor,
    #[error("odd v must not carry a factor")]
    UnexpectedFactor,
    #[error("bad one-factor: {0}")]
    BadFactor(String),
    #[error("class {class} has {found} blocks, expected {expected}")]
    WrongClassSize {
        class: usize,
        expected: usize,
        found: usize,
    },
    #[error("class {class} mixes block shapes")]
    NonUniformClass { class: usize },
    #[error("class {class} covers vertex {vertex} more than once")]
    NotAPartition { class: usize, vertex: Vertex },
}
