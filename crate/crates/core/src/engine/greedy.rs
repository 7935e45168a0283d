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

//! Class-by-class construction on the full host graph.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{SearchContext, SearchLimits, TripleSystem};
use crate::model::{Block, ClassKind, Edge, OneFactor, ParallelClass};

/// The still-unused edges of a host graph.
#[derive(Clone, Debug)]
pub struct EdgeState {
    v: usize,
    unused: Vec<bool>,
}

impl EdgeState {
    /// All edges of `K_v`, minus `factor` when given.
    pub fn new(v: u32, factor: Option<&OneFactor>) -> EdgeState {
        let v = v as usize;
        let mut unused = vec![true; v * v];
        for i in 0..v {
            unused[i * v + i] = false;
        }
        let mut state = EdgeState { v, unused };
        if let Some(f) = factor {
            for e in &f.pairs {
                state.set(e.lo as usize, e.hi as usize, false);
            }
        }
        state
    }

    pub fn order(&self) -> u32 {
        self.v as u32
    }

    pub fn is_unused(&self, e: Edge) -> bool {
        self.unused[e.lo as usize * self.v + e.hi as usize]
    }

    fn set(&mut self, a: usize, b: usize, value: bool) {
        self.unused[a * self.v + b] = value;
        self.unused[b * self.v + a] = value;
    }

    fn free(&self, a: usize, b: usize) -> bool {
        self.unused[a * self.v + b]
    }

    /// Marks the class's edges used.
    pub fn remove_class(&mut self, class: &ParallelClass) {
        for e in class.blocks.iter().flat_map(Block::edges) {
            debug_assert!(self.is_unused(e));
            self.set(e.lo as usize, e.hi as usize, false);
        }
    }

    /// Marks the class's edges unused again.
    pub fn restore_class(&mut self, class: &ParallelClass) {
        for e in class.blocks.iter().flat_map(Block::edges) {
            self.set(e.lo as usize, e.hi as usize, true);
        }
    }

    /// Unused degree of `x`.
    pub fn degree(&self, x: u32) -> usize {
        let x = x as usize;
        (0..self.v).filter(|&y| self.free(x, y)).count()
    }
}

/// Looks for a triangle parallel class inside the unused edges.
///
/// Each attempt is a randomized depth-first search that always extends the
/// uncovered vertex with the fewest available triangles and gives up after
/// a small node budget. Returns `None` after `max_attempts` failed attempts,
/// or at once if some vertex lies on no unused triangle.
pub fn find_parallel_class(
    state: &EdgeState,
    rng: &mut ChaCha8Rng,
    max_attempts: u32,
) -> Option<ParallelClass> {
    let v = state.v;
    if v % 3 != 0 {
        return None;
    }
    let budget = 4 * v as u64;
    for _ in 0..max_attempts.max(1) {
        let mut covered = vec![false; v];
        let mut blocks = Vec::with_capacity(v / 3);
        let mut nodes = 0;
        match extend(state, rng, &mut covered, &mut blocks, &mut nodes, budget) {
            Extend::Done => {
                return Some(ParallelClass {
                    kind: ClassKind::Triangle,
                    blocks: blocks
                        .into_iter()
                        .map(|[a, b, c]| Block::triangle(a as u32, b as u32, c as u32))
                        .collect(),
                })
            }
            Extend::Impossible if nodes == 1 => return None,
            _ => {}
        }
    }
    None
}

enum Extend {
    Done,
    Impossible,
    OutOfBudget,
}

fn extend(
    state: &EdgeState,
    rng: &mut ChaCha8Rng,
    covered: &mut [bool],
    blocks: &mut Vec<[usize; 3]>,
    nodes: &mut u64,
    budget: u64,
) -> Extend {
    *nodes += 1;
    if *nodes > budget {
        return Extend::OutOfBudget;
    }
    let v = state.v;
    let mut best: Option<(usize, Vec<(usize, usize)>)> = None;
    for p in (0..v).filter(|&p| !covered[p]) {
        let options = triangles_at(state, covered, p);
        if best.as_ref().is_none_or(|(_, o)| options.len() < o.len()) {
            let empty = options.is_empty();
            best = Some((p, options));
            if empty {
                break;
            }
        }
    }
    let Some((p, mut options)) = best else {
        return Extend::Done;
    };
    options.shuffle(rng);
    for (q, r) in options {
        for x in [p, q, r] {
            covered[x] = true;
        }
        blocks.push([p, q, r]);
        match extend(state, rng, covered, blocks, nodes, budget) {
            Extend::Done => return Extend::Done,
            Extend::OutOfBudget => return Extend::OutOfBudget,
            Extend::Impossible => {}
        }
        blocks.pop();
        for x in [p, q, r] {
            covered[x] = false;
        }
    }
    Extend::Impossible
}

fn triangles_at(state: &EdgeState, covered: &[bool], p: usize) -> Vec<(usize, usize)> {
    let v = state.v;
    let nbrs: Vec<usize> = (0..v)
        .filter(|&q| !covered[q] && state.free(p, q))
        .collect();
    let mut out = Vec::new();
    for (i, &q) in nbrs.iter().enumerate() {
        for &r in &nbrs[i + 1..] {
            if state.free(q, r) {
                out.push((q, r));
            }
        }
    }
    out
}

pub(crate) fn search(
    v: u32,
    seed: u64,
    limits: &SearchLimits,
    ctx: &SearchContext<'_>,
) -> Option<TripleSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factor = (v % 2 == 0).then(|| OneFactor::standard(v));
    let target = TripleSystem::class_count(v);
    let mut state = EdgeState::new(v, factor.as_ref());
    let mut classes: Vec<ParallelClass> = Vec::with_capacity(target);
    let mut stagnations = 0;
    let mut restarts = 0;

    while classes.len() < target {
        if ctx.expired() {
            return None;
        }
        match find_parallel_class(&state, &mut rng, limits.max_class_attempts) {
            Some(class) => {
                state.remove_class(&class);
                classes.push(class);
            }
            None => {
                stagnations += 1;
                if stagnations >= limits.max_restarts {
                    restarts += 1;
                    if restarts >= limits.max_restarts {
                        return None;
                    }
                    stagnations = 0;
                    classes.clear();
                    state = EdgeState::new(v, factor.as_ref());
                } else {
                    for _ in 0..2 {
                        if let Some(c) = classes.pop() {
                            state.restore_class(&c);
                        }
                    }
                }
            }
        }
    }
    for c in &mut classes {
        c.blocks.sort_by_key(|b| b.min_vertex());
    }
    Some(TripleSystem { v, factor, classes })
}
