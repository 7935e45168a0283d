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

//! Inputs shared by the benchmarks.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use urd_core::transform::BEdge;
use urd_core::{IntersectionGraph, SearchLimits, TripleSystem};

/// A random 3-regular bipartite graph on `n + n` vertices made of three
/// permutation matchings, redrawn until it has no parallel edges.
pub fn random_cubic_bipartite(n: usize, seed: u64) -> IntersectionGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut edges = Vec::with_capacity(3 * n);
        for _ in 0..3 {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            for (left, right) in perm.into_iter().enumerate() {
                edges.push((left, right));
            }
        }
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() < edges.len() {
            continue;
        }
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(i, (left, right))| BEdge {
                left,
                right,
                shared: i as u32,
            })
            .collect();
        return IntersectionGraph::from_edges(n, edges).expect("cubic by construction");
    }
}

/// A Kirkman or nearly Kirkman triple system found by search.
pub fn triple_system(v: u32) -> TripleSystem {
    urd_core::engine::search_triple_system(v, &SearchLimits::default())
        .expect("default limits suffice for benchmark orders")
}
