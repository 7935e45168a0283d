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

//! Total validation of a [`Decomposition`].
//!
//! The verifier depends only on the model types. It recounts every pair of
//! `0..v` from the blocks and the factor, so it can check output of the
//! engine, the transform and the assembler without trusting any of them.

use std::fmt;

use crate::model::{Block, ClassKind, Decomposition, Edge, GraphKind, Vertex};

/// At most this many violations are collected.
pub const MAX_VIOLATIONS: usize = 100;

/// Orders above this are rejected without counting pairs.
pub const MAX_ORDER: u32 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationCode {
    BadOrder,
    BadVertexRange,
    NonUniformClass,
    NotAPartition,
    WrongClassSize,
    EdgeRepeated,
    EdgeMissing,
    EdgeInFactor,
    BadFactor,
    ParityMismatch,
    HeaderMismatch,
}

impl ViolationCode {
    pub fn name(self) -> &'static str {
        match self {
            ViolationCode::BadOrder => "BadOrder",
            ViolationCode::BadVertexRange => "BadVertexRange",
            ViolationCode::NonUniformClass => "NonUniformClass",
            ViolationCode::NotAPartition => "NotAPartition",
            ViolationCode::WrongClassSize => "WrongClassSize",
            ViolationCode::EdgeRepeated => "EdgeRepeated",
            ViolationCode::EdgeMissing => "EdgeMissing",
            ViolationCode::EdgeInFactor => "EdgeInFactor",
            ViolationCode::BadFactor => "BadFactor",
            ViolationCode::ParityMismatch => "ParityMismatch",
            ViolationCode::HeaderMismatch => "HeaderMismatch",
        }
    }
}

/// Where a violation was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Locus {
    Decomposition,
    Factor,
    Class(usize),
    Block { class: usize, block: usize },
    Edge(Edge),
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Locus::Decomposition => f.write_str("decomposition"),
            Locus::Factor => f.write_str("factor"),
            Locus::Class(c) => write!(f, "class {c}"),
            Locus::Block { class, block } => write!(f, "class {class} block {block}"),
            Locus::Edge(e) => write!(f, "edge {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub code: ViolationCode,
    pub detail: String,
    pub locus: Locus,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.code.name(), self.locus, self.detail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
    /// More than [`MAX_VIOLATIONS`] problems were found.
    pub truncated: bool,
}

impl Report {
    pub fn verdict(&self) -> Verdict {
        if self.violations.is_empty() {
            Verdict::Accept
        } else {
            Verdict::Reject
        }
    }

    pub fn is_accept(&self) -> bool {
        self.verdict() == Verdict::Accept
    }

    pub fn count(&self, code: ViolationCode) -> usize {
        self.violations.iter().filter(|v| v.code == code).count()
    }

    fn push(&mut self, code: ViolationCode, locus: Locus, detail: impl Into<String>) {
        if self.violations.len() < MAX_VIOLATIONS {
            self.violations.push(Violation {
                code,
                detail: detail.into(),
                locus,
            });
        } else {
            self.truncated = true;
        }
    }
}

fn pair(a: Vertex, b: Vertex) -> (Vertex, Vertex) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn pair_index(v: usize, (lo, hi): (Vertex, Vertex)) -> usize {
    let (lo, hi) = (lo as usize, hi as usize);
    lo * v - lo * (lo + 1) / 2 + (hi - lo - 1)
}

fn block_pairs(b: &Block) -> Vec<(Vertex, Vertex)> {
    match *b {
        Block::Triangle([x, y, z]) => vec![pair(x, y), pair(y, z), pair(x, z)],
        Block::Path {
            center,
            ends: [x, y],
        } => vec![pair(center, x), pair(center, y)],
    }
}

/// Checks every defining property of a uniformly resolvable decomposition.
pub fn verify(d: &Decomposition) -> Report {
    let mut report = Report::default();
    let v = d.v;
    if v < 3 || v % 3 != 0 {
        report.push(
            ViolationCode::BadOrder,
            Locus::Decomposition,
            format!("v={v} must be a positive multiple of 3"),
        );
    }
    if v > MAX_ORDER {
        report.push(
            ViolationCode::BadOrder,
            Locus::Decomposition,
            format!("v={v} exceeds the supported maximum {MAX_ORDER}"),
        );
        return report;
    }
    let expected_graph = if v % 2 == 1 {
        GraphKind::Complete
    } else {
        GraphKind::MinusOneFactor
    };
    if d.graph != expected_graph {
        report.push(
            ViolationCode::ParityMismatch,
            Locus::Decomposition,
            format!("v={v} requires graph={}", expected_graph.name()),
        );
    }

    let vn = v as usize;
    let mut in_factor = vec![false; vn * vn.saturating_sub(1) / 2];
    match (&d.factor, expected_graph) {
        (None, GraphKind::MinusOneFactor) => report.push(
            ViolationCode::BadFactor,
            Locus::Factor,
            "missing one-factor",
        ),
        (Some(_), GraphKind::Complete) => report.push(
            ViolationCode::BadFactor,
            Locus::Factor,
            "odd order must not remove a one-factor",
        ),
        _ => {}
    }
    if let Some(f) = &d.factor {
        let mut hits = vec![0u32; vn];
        for e in &f.pairs {
            if e.lo >= v || e.hi >= v {
                report.push(
                    ViolationCode::BadVertexRange,
                    Locus::Factor,
                    format!("pair {}-{} leaves 0..{v}", e.lo, e.hi),
                );
                continue;
            }
            if e.lo == e.hi {
                report.push(
                    ViolationCode::BadFactor,
                    Locus::Factor,
                    format!("loop at {}", e.lo),
                );
                continue;
            }
            hits[e.lo as usize] += 1;
            hits[e.hi as usize] += 1;
            in_factor[pair_index(vn, pair(e.lo, e.hi))] = true;
        }
        for (x, &h) in hits.iter().enumerate() {
            if h != 1 {
                report.push(
                    ViolationCode::BadFactor,
                    Locus::Factor,
                    format!("vertex {x} lies in {h} factor pairs"),
                );
            }
        }
    }

    let mut counts = vec![0u32; in_factor.len()];
    for (ci, class) in d.classes.iter().enumerate() {
        let mut seen = vec![0u32; vn];
        if class.blocks.len() != vn / 3 {
            report.push(
                ViolationCode::WrongClassSize,
                Locus::Class(ci),
                format!("{} blocks, expected {}", class.blocks.len(), vn / 3),
            );
        }
        for (bi, block) in class.blocks.iter().enumerate() {
            let shape = match block {
                Block::Triangle(_) => ClassKind::Triangle,
                Block::Path { .. } => ClassKind::Path,
            };
            if shape != class.kind {
                report.push(
                    ViolationCode::NonUniformClass,
                    Locus::Block {
                        class: ci,
                        block: bi,
                    },
                    format!("{block} in a {} class", class.kind.name()),
                );
            }
            let verts = match *block {
                Block::Triangle(t) => t,
                Block::Path { center, ends } => [center, ends[0], ends[1]],
            };
            if verts.iter().any(|&x| x >= v) {
                report.push(
                    ViolationCode::BadVertexRange,
                    Locus::Block {
                        class: ci,
                        block: bi,
                    },
                    format!("{block} leaves 0..{v}"),
                );
                continue;
            }
            for x in verts {
                seen[x as usize] += 1;
            }
            for (a, b) in block_pairs(block) {
                if a != b {
                    counts[pair_index(vn, (a, b))] += 1;
                }
            }
        }
        for (x, &n) in seen.iter().enumerate() {
            if n != 1 {
                report.push(
                    ViolationCode::NotAPartition,
                    Locus::Class(ci),
                    format!("vertex {x} covered {n} times"),
                );
            }
        }
    }

    for lo in 0..v {
        for hi in lo + 1..v {
            let i = pair_index(vn, (lo, hi));
            let e = Edge { lo, hi };
            match (in_factor[i], counts[i]) {
                (true, 0) | (false, 1) => {}
                (true, n) => report.push(
                    ViolationCode::EdgeInFactor,
                    Locus::Edge(e),
                    format!("factor edge covered {n} times by blocks"),
                ),
                (false, 0) => {
                    report.push(ViolationCode::EdgeMissing, Locus::Edge(e), "not covered")
                }
                (false, n) => report.push(
                    ViolationCode::EdgeRepeated,
                    Locus::Edge(e),
                    format!("covered {n} times"),
                ),
            }
        }
    }
    report
}

/// [`verify`] plus a check that `d` has order `v` and exactly `r` path and
/// `s` triangle classes.
pub fn verify_request(d: &Decomposition, v: u32, r: u32, s: u32) -> Report {
    let mut report = verify(d);
    if d.v != v {
        report.push(
            ViolationCode::HeaderMismatch,
            Locus::Decomposition,
            format!("order is {}, expected {v}", d.v),
        );
    }
    let paths = d
        .classes
        .iter()
        .filter(|c| c.kind == ClassKind::Path)
        .count() as u32;
    let triangles = d.classes.len() as u32 - paths;
    if (paths, triangles) != (r, s) {
        report.push(
            ViolationCode::HeaderMismatch,
            Locus::Decomposition,
            format!("has r={paths} s={triangles}, expected r={r} s={s}"),
        );
    }
    report
}
