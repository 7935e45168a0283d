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

//! Exhaustive search over all decompositions of tiny orders.
//!
//! Every path class and triangle class of the host graph is listed up front
//! as a bit mask over its edges. The search then covers the lowest
//! uncovered edge with each compatible class in turn and records the
//! `(r, s)` of every complete cover it reaches. It stops early once every
//! point allowed by edge counting alone has been seen.
//!
//! For odd `v`, relabelling lets the block on edge `0-1` be assumed to be
//! `(0,1,2)` or `(0;1,2)`. For even `v` the host is `K_v` minus `{2i, 2i+1}`,
//! the first edge is `0-2`, and relabelling that preserves the factor
//! reduces its block to `(0,2,4)`, `(0;2,3)` or `(0;2,4)`.

use std::collections::BTreeSet;
use std::time::Instant;

use thiserror::Error;

use crate::engine::SearchLimits;
use crate::model::{Block, Vertex};
use crate::spectrum::SpectrumPoint;

/// Largest order the bit masks can hold.
pub const MAX_ORACLE_ORDER: u32 = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub v: u32,
    pub points: BTreeSet<SpectrumPoint>,
    /// Whether the search finished. Only then is `points` the full spectrum.
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("v={0} must be a positive multiple of 3")]
    BadOrder(u32),
    #[error("v={0} is out of reach for exhaustive search")]
    TooLarge(u32),
    #[error("v=12 takes hours; it needs the long-run flag")]
    NeedsLongRun,
}

struct Class {
    mask: u128,
    path: bool,
}

struct Host {
    v: u32,
    allowed: Vec<bool>,
}

impl Host {
    fn new(v: u32) -> Host {
        let mut allowed = vec![true; edge_count(v)];
        if v % 2 == 0 {
            for i in 0..v / 2 {
                allowed[bit(2 * i, 2 * i + 1)] = false;
            }
        }
        Host { v, allowed }
    }

    fn has(&self, a: Vertex, b: Vertex) -> bool {
        self.allowed[bit(a, b)]
    }

    fn full(&self) -> u128 {
        self.allowed
            .iter()
            .enumerate()
            .filter(|(_, &ok)| ok)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    fn mask(&self, block: &Block) -> Option<u128> {
        let [x, y, z] = block.vertices();
        let pairs = match block {
            Block::Triangle(_) => vec![(x, y), (x, z), (y, z)],
            Block::Path { .. } => vec![(x, y), (x, z)],
        };
        pairs.into_iter().try_fold(0, |m, (a, b)| {
            self.has(a, b).then(|| m | 1u128 << bit(a, b))
        })
    }
}

fn edge_count(v: u32) -> usize {
    (v * (v - 1) / 2) as usize
}

fn bit(a: Vertex, b: Vertex) -> usize {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    (hi * (hi - 1) / 2 + lo) as usize
}

/// Every way to split the points into blocks of one shape.
fn enumerate_classes(host: &Host, path: bool) -> Vec<Class> {
    fn rec(host: &Host, path: bool, free: &[Vertex], mask: u128, out: &mut Vec<Class>) {
        let Some(&a) = free.first() else {
            out.push(Class { mask, path });
            return;
        };
        for i in 1..free.len() {
            for j in i + 1..free.len() {
                let (b, c) = (free[i], free[j]);
                let shapes = if path {
                    vec![
                        Block::path(a, b, c),
                        Block::path(b, a, c),
                        Block::path(c, a, b),
                    ]
                } else {
                    vec![Block::triangle(a, b, c)]
                };
                let rest: Vec<Vertex> = free
                    .iter()
                    .copied()
                    .filter(|&x| x != a && x != b && x != c)
                    .collect();
                for shape in shapes {
                    if let Some(m) = host.mask(&shape) {
                        rec(host, path, &rest, mask | m, out);
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    let free: Vec<Vertex> = (0..host.v).collect();
    rec(host, path, &free, 0, &mut out);
    out
}

/// Blocks the first class may use on the first edge, up to relabelling.
fn first_blocks(v: u32) -> Vec<Block> {
    if v % 2 == 1 {
        vec![Block::triangle(0, 1, 2), Block::path(0, 1, 2)]
    } else {
        vec![
            Block::triangle(0, 2, 4),
            Block::path(0, 2, 3),
            Block::path(0, 2, 4),
        ]
    }
}

struct Search<'a> {
    classes: &'a [Class],
    by_edge: Vec<Vec<u32>>,
    full: u128,
    path_edges: u32,
    triangle_edges: u32,
    targets: BTreeSet<SpectrumPoint>,
    found: BTreeSet<SpectrumPoint>,
    deadline: Option<Instant>,
    nodes: u64,
    gave_up: bool,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.found.len() == self.targets.len()
    }

    /// Whether some unseen point is still reachable with `rest` edges left.
    fn worthwhile(&self, rest: u32, r: u32, s: u32) -> bool {
        self.targets.iter().any(|p| {
            p.r >= r
                && p.s >= s
                && (p.r - r) * self.path_edges + (p.s - s) * self.triangle_edges == rest
                && !self.found.contains(p)
        })
    }

    fn dfs(&mut self, used: u128, r: u32, s: u32) {
        self.nodes += 1;
        if self.nodes % 4096 == 0 && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.gave_up = true;
        }
        if self.gave_up || self.done() {
            return;
        }
        let open = self.full & !used;
        if open == 0 {
            self.found.insert(SpectrumPoint::new(r, s));
            return;
        }
        if !self.worthwhile(open.count_ones(), r, s) {
            return;
        }
        let e = open.trailing_zeros() as usize;
        for k in 0..self.by_edge[e].len() {
            let c = &self.classes[self.by_edge[e][k] as usize];
            if c.mask & used == 0 {
                let (dr, ds) = if c.path { (1, 0) } else { (0, 1) };
                self.dfs(used | c.mask, r + dr, s + ds);
                if self.gave_up || self.done() {
                    return;
                }
            }
        }
    }
}

/// All realizable `(r, s)` for order `v`, by exhaustive search.
///
/// Orders up to 9 finish in well under a second. Order 12 is only attempted
/// with `long_run`. `limits.time_limit` bounds the search; hitting it gives
/// `exhausted == false`.
pub fn oracle_spectrum(
    v: u32,
    limits: &SearchLimits,
    long_run: bool,
) -> Result<OracleResult, OracleError> {
    if v == 0 || v % 3 != 0 {
        return Err(OracleError::BadOrder(v));
    }
    if v > MAX_ORACLE_ORDER {
        return Err(OracleError::TooLarge(v));
    }
    if v == 12 && !long_run {
        return Err(OracleError::NeedsLongRun);
    }
    let host = Host::new(v);
    let full = host.full();
    let edges = full.count_ones();
    let path_edges = 2 * v / 3;
    let triangle_edges = v;
    let targets: BTreeSet<SpectrumPoint> = (0..=edges / path_edges)
        .filter_map(|r| {
            let rest = edges - r * path_edges;
            (rest % triangle_edges == 0).then(|| SpectrumPoint::new(r, rest / triangle_edges))
        })
        .collect();

    let mut classes = enumerate_classes(&host, true);
    classes.extend(enumerate_classes(&host, false));
    let first_edge = full.trailing_zeros() as usize;
    let first: Vec<u128> = first_blocks(v)
        .iter()
        .filter_map(|b| host.mask(b))
        .collect();
    let mut by_edge = vec![Vec::new(); edge_count(v)];
    for (i, c) in classes.iter().enumerate() {
        let mut m = c.mask;
        while m != 0 {
            let e = m.trailing_zeros() as usize;
            m &= m - 1;
            if e == first_edge && first.iter().all(|&f| c.mask & f != f) {
                continue;
            }
            by_edge[e].push(i as u32);
        }
    }

    let mut search = Search {
        classes: &classes,
        by_edge,
        full,
        path_edges,
        triangle_edges,
        targets,
        found: BTreeSet::new(),
        deadline: limits.time_limit.map(|t| Instant::now() + t),
        nodes: 0,
        gave_up: false,
    };
    search.dfs(0, 0, 0);
    Ok(OracleResult {
        v,
        points: search.found,
        exhausted: !search.gave_up,
    })
}
