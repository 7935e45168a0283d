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

//! Base-class search under a cyclic group.
//!
//! Points are `levels` copies of `Z_k` plus a few fixed points, and the
//! group generator adds one inside every level. A base class whose pairs
//! hit every allowed pair orbit at most once, developed `k` times, yields
//! `k` edge-disjoint parallel classes. The layouts used per residue:
//!
//! | v mod 12 | k          | levels | fixed | base classes | extra                         |
//! |----------|------------|--------|-------|--------------|-------------------------------|
//! | 3        | (v-1)/2    | 2      | 1     | 1            |                               |
//! | 9        | v/3        | 3      | 0     | 1            | (k-1)/2 invariant transversals |
//! | 0        | (v-2)/2    | 2      | 2     | 1            | factor: `{(i,0),(i,1)}`, `{∞₀,∞₁}` |
//! | 6        | (v-2)/4    | 4      | 2     | 2            | factor: see [`Layout::for_order`] |
//!
//! For `v ≡ 9` the transversal classes `{(x,0), (x+a,1), (x+b,2)}` are
//! fixed by the group, so they are drawn at random at the start of every
//! restart and their pair orbits are taken out of play.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{SearchContext, SearchLimits, TripleSystem};
use crate::model::{Block, Edge, OneFactor, ParallelClass};

const FORBIDDEN: u32 = u32::MAX;

/// A triangle `(p, q, r)` and the pair orbits it uses.
type Candidate = (usize, usize, usize, [u32; 3]);

#[derive(Debug, Clone)]
pub(crate) struct Layout {
    v: usize,
    k: usize,
    levels: usize,
    base_classes: usize,
    transversals: usize,
    factor: Vec<(usize, usize)>,
}

impl Layout {
    pub(crate) fn for_order(v: usize) -> Layout {
        let fixed = |j: usize, levels: usize, k: usize| levels * k + j;
        match v % 12 {
            3 => Layout {
                v,
                k: (v - 1) / 2,
                levels: 2,
                base_classes: 1,
                transversals: 0,
                factor: Vec::new(),
            },
            9 => {
                let k = v / 3;
                Layout {
                    v,
                    k,
                    levels: 3,
                    base_classes: 1,
                    transversals: (k - 1) / 2,
                    factor: Vec::new(),
                }
            }
            0 => {
                let k = (v - 2) / 2;
                let mut factor: Vec<_> = (0..k).map(|i| (i, k + i)).collect();
                factor.push((fixed(0, 2, k), fixed(1, 2, k)));
                Layout {
                    v,
                    k,
                    levels: 2,
                    base_classes: 1,
                    transversals: 0,
                    factor,
                }
            }
            6 => {
                let k = (v - 2) / 4;
                let mut factor = Vec::new();
                if k % 2 == 0 {
                    // The pairs {x, x+k/2} inside a level form half-length
                    // orbits; no developed class may use them.
                    for l in 0..4 {
                        for i in 0..k / 2 {
                            factor.push((l * k + i, l * k + i + k / 2));
                        }
                    }
                } else {
                    for i in 0..k {
                        factor.push((i, k + i));
                        factor.push((2 * k + i, 3 * k + i));
                    }
                }
                factor.push((fixed(0, 4, k), fixed(1, 4, k)));
                Layout {
                    v,
                    k,
                    levels: 4,
                    base_classes: 2,
                    transversals: 0,
                    factor,
                }
            }
            _ => unreachable!("order {v} has no resolvable triangle decomposition"),
        }
    }

    fn shift(&self, p: usize, by: usize) -> usize {
        let lk = self.levels * self.k;
        if p >= lk {
            p
        } else {
            let (l, i) = (p / self.k, p % self.k);
            l * self.k + (i + by) % self.k
        }
    }
}

/// Pair-orbit table for a layout.
struct Orbits {
    v: usize,
    id: Vec<u32>,
    count: usize,
}

impl Orbits {
    fn new(layout: &Layout) -> Orbits {
        let v = layout.v;
        let mut id = vec![FORBIDDEN; v * v];
        let mut assigned = vec![false; v * v];
        let mut in_factor = vec![false; v * v];
        for &(a, b) in &layout.factor {
            in_factor[a * v + b] = true;
            in_factor[b * v + a] = true;
        }
        let mut count = 0;
        for p in 0..v {
            for q in p + 1..v {
                if assigned[p * v + q] {
                    continue;
                }
                let mut members = Vec::new();
                let (mut a, mut b) = (p, q);
                loop {
                    let (lo, hi) = (a.min(b), a.max(b));
                    if assigned[lo * v + hi] {
                        break;
                    }
                    assigned[lo * v + hi] = true;
                    members.push((lo, hi));
                    a = layout.shift(a, 1);
                    b = layout.shift(b, 1);
                }
                let usable = members.len() == layout.k
                    && !members.iter().any(|&(a, b)| in_factor[a * v + b]);
                let value = if usable {
                    count += 1;
                    (count - 1) as u32
                } else {
                    FORBIDDEN
                };
                for (a, b) in members {
                    id[a * v + b] = value;
                    id[b * v + a] = value;
                }
            }
        }
        Orbits { v, id, count }
    }

    fn get(&self, a: usize, b: usize) -> u32 {
        self.id[a * self.v + b]
    }
}

struct Dfs<'a> {
    layout: &'a Layout,
    orbits: &'a Orbits,
    rng: &'a mut ChaCha8Rng,
    ctx: &'a SearchContext<'a>,
    used_orbit: Vec<bool>,
    covered: Vec<bool>,
    order: Vec<usize>,
    blocks: Vec<[usize; 3]>,
    nodes: u64,
    budget: u64,
    aborted: bool,
}

impl Dfs<'_> {
    fn triangle_orbits(&self, a: usize, b: usize, c: usize) -> Option<[u32; 3]> {
        let o = [
            self.orbits.get(a, b),
            self.orbits.get(a, c),
            self.orbits.get(b, c),
        ];
        if o.iter()
            .any(|&x| x == FORBIDDEN || self.used_orbit[x as usize])
            || o[0] == o[1]
            || o[0] == o[2]
            || o[1] == o[2]
        {
            None
        } else {
            Some(o)
        }
    }

    /// Usable triangles on `p` within `free`, giving up once `limit` are found.
    fn triangles_at(&self, p: usize, free: &[usize], limit: usize) -> Vec<Candidate> {
        let mut out = Vec::new();
        for (i, &q) in free.iter().enumerate() {
            if q == p {
                continue;
            }
            let pq = self.orbits.get(p, q);
            if pq == FORBIDDEN || self.used_orbit[pq as usize] {
                continue;
            }
            for &r in &free[i + 1..] {
                if r == p {
                    continue;
                }
                if let Some(o) = self.triangle_orbits(p, q, r) {
                    out.push((p, q, r, o));
                    if out.len() >= limit {
                        return out;
                    }
                }
            }
        }
        out
    }

    /// Fills base classes `class..` one block at a time.
    fn fill(&mut self, class: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget || (self.nodes & 0x3ff == 0 && self.ctx.expired()) {
            self.aborted = true;
            return false;
        }
        if self.order.iter().all(|&p| self.covered[p]) {
            if class + 1 == self.layout.base_classes {
                return true;
            }
            self.covered.iter_mut().for_each(|c| *c = false);
            if self.fill(class + 1) {
                return true;
            }
            self.covered.iter_mut().for_each(|c| *c = true);
            return false;
        }

        // Branch on the uncovered point with the fewest usable triangles.
        let free: Vec<usize> = self
            .order
            .iter()
            .copied()
            .filter(|&q| !self.covered[q])
            .collect();
        let mut candidates: Option<Vec<Candidate>> = None;
        for &p in &free {
            let limit = candidates.as_ref().map_or(usize::MAX, Vec::len);
            let found = self.triangles_at(p, &free, limit);
            if found.len() < limit {
                let empty = found.is_empty();
                candidates = Some(found);
                if empty {
                    break;
                }
            }
        }
        let mut candidates = candidates.unwrap_or_default();
        candidates.shuffle(self.rng);

        for (p, q, r, o) in candidates {
            for x in o {
                self.used_orbit[x as usize] = true;
            }
            for x in [p, q, r] {
                self.covered[x] = true;
            }
            self.blocks.push([p, q, r]);
            if self.fill(class) {
                return true;
            }
            self.blocks.pop();
            for x in [p, q, r] {
                self.covered[x] = false;
            }
            for x in o {
                self.used_orbit[x as usize] = false;
            }
            if self.aborted {
                return false;
            }
        }
        false
    }
}

/// Draws the group-invariant transversal classes for the 3-level layout.
fn draw_transversals(
    layout: &Layout,
    orbits: &Orbits,
    rng: &mut ChaCha8Rng,
    used: &mut [bool],
) -> Option<Vec<(usize, usize)>> {
    let k = layout.k;
    let mut chosen = Vec::with_capacity(layout.transversals);
    let mut options: Vec<(usize, usize)> =
        (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).collect();
    options.shuffle(rng);
    for (a, b) in options {
        if chosen.len() == layout.transversals {
            break;
        }
        let o = [
            orbits.get(0, k + a),
            orbits.get(0, 2 * k + b),
            orbits.get(k + a, 2 * k + b),
        ];
        if o.iter().all(|&x| x != FORBIDDEN && !used[x as usize]) {
            for x in o {
                used[x as usize] = true;
            }
            chosen.push((a, b));
        }
    }
    (chosen.len() == layout.transversals).then_some(chosen)
}

pub(crate) fn search(
    v: u32,
    seed: u64,
    limits: &SearchLimits,
    ctx: &SearchContext<'_>,
) -> Option<TripleSystem> {
    let layout = Layout::for_order(v as usize);
    let orbits = Orbits::new(&layout);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = u64::from(limits.max_class_attempts.max(1)) * u64::from(v);

    for _ in 0..limits.max_restarts.max(1) {
        if ctx.expired() {
            return None;
        }
        let mut used_orbit = vec![false; orbits.count];
        let transversals = if layout.transversals > 0 {
            match draw_transversals(&layout, &orbits, &mut rng, &mut used_orbit) {
                Some(t) => t,
                None => continue,
            }
        } else {
            Vec::new()
        };
        let mut order: Vec<usize> = (0..layout.v).collect();
        order.shuffle(&mut rng);
        // Restarts grow their node budget slowly so that hard orders still
        // get long runs while easy ones restart quickly.
        let scale = 1 + rng.random_range(0..4u64);
        let mut dfs = Dfs {
            layout: &layout,
            orbits: &orbits,
            rng: &mut rng,
            ctx,
            used_orbit,
            covered: vec![false; layout.v],
            order,
            blocks: Vec::new(),
            nodes: 0,
            budget: budget * scale,
            aborted: false,
        };
        if dfs.fill(0) {
            let blocks = dfs.blocks;
            return Some(develop(&layout, &blocks, &transversals));
        }
    }
    None
}

/// Expands base classes and transversals into a labelled triple system.
fn develop(
    layout: &Layout,
    blocks: &[[usize; 3]],
    transversals: &[(usize, usize)],
) -> TripleSystem {
    let v = layout.v;
    let k = layout.k;
    // Relabel so that factor pairs become {2i, 2i+1}.
    let mut label: Vec<u32> = (0..v as u32).collect();
    if !layout.factor.is_empty() {
        let mut pairs: Vec<(usize, usize)> = layout.factor.clone();
        pairs.sort_unstable();
        for (i, (a, b)) in pairs.into_iter().enumerate() {
            label[a] = 2 * i as u32;
            label[b] = 2 * i as u32 + 1;
        }
    }
    let tri = |a: usize, b: usize, c: usize| Block::triangle(label[a], label[b], label[c]);

    let per_class = v / 3;
    let mut classes = Vec::new();
    for base in blocks.chunks(per_class) {
        for by in 0..k {
            classes.push(ParallelClass::from_blocks(
                base.iter()
                    .map(|&[a, b, c]| {
                        tri(
                            layout.shift(a, by),
                            layout.shift(b, by),
                            layout.shift(c, by),
                        )
                    })
                    .collect(),
            ));
        }
    }
    for &(a, b) in transversals {
        classes.push(ParallelClass::from_blocks(
            (0..k)
                .map(|x| tri(x, k + (x + a) % k, 2 * k + (x + b) % k))
                .collect(),
        ));
    }
    for c in &mut classes {
        c.blocks.sort_by_key(|b| b.min_vertex());
    }
    let factor = (!layout.factor.is_empty()).then(|| OneFactor {
        pairs: (0..v as u32 / 2)
            .map(|i| Edge::new(2 * i, 2 * i + 1))
            .collect(),
    });
    TripleSystem {
        v: v as u32,
        factor,
        classes,
    }
}
