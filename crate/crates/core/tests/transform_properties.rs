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

use std::collections::HashMap;
use std::sync::OnceLock;

use proptest::prelude::*;
use urd_core::engine::search_triple_system;
use urd_core::{transform_pair, Block, ClassKind, ParallelClass, SearchLimits, TripleSystem};

fn pairs(class: &ParallelClass) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for b in &class.blocks {
        let ps = match *b {
            Block::Triangle([a, b, c]) => vec![(a, b), (a, c), (b, c)],
            Block::Path { center, ends } => vec![(center, ends[0]), (center, ends[1])],
        };
        out.extend(ps.into_iter().map(|(x, y)| (x.min(y), x.max(y))));
    }
    out.sort_unstable();
    out
}

fn systems() -> &'static HashMap<u32, TripleSystem> {
    static SYSTEMS: OnceLock<HashMap<u32, TripleSystem>> = OnceLock::new();
    SYSTEMS.get_or_init(|| {
        [9, 15, 21, 27]
            .into_iter()
            .map(|v| {
                (
                    v,
                    search_triple_system(v, &SearchLimits::default()).unwrap(),
                )
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transform_keeps_edges_and_centres(which in 0usize..4, i in 0usize..13, j in 0usize..13) {
        let v = [9u32, 15, 21, 27][which];
        let system = &systems()[&v];
        let n = system.classes.len();
        let (i, j) = (i % n, j % n);
        prop_assume!(i != j);
        let (q1, q2) = (&system.classes[i], &system.classes[j]);
        let out = transform_pair(q1, q2).unwrap();

        let mut before = pairs(q1);
        before.extend(pairs(q2));
        before.sort_unstable();
        let mut after: Vec<_> = out.iter().flat_map(pairs).collect();
        after.sort_unstable();
        prop_assert_eq!(before, after);

        let mut centres = vec![0u32; v as usize];
        for class in &out {
            prop_assert_eq!(class.kind, ClassKind::Path);
            prop_assert!(class.check(v, 0).is_ok());
            for b in &class.blocks {
                if let Block::Path { center, .. } = b {
                    centres[*center as usize] += 1;
                }
            }
        }
        prop_assert!(centres.iter().all(|&c| c == 1));
    }
}
