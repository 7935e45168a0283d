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

//! Acceptance gate. Runs every criterion, prints one PASS or FAIL line for
//! each, and exits non-zero if any failed.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use urd_core::engine::search_triple_system;
use urd_core::transform::{BEdge, Color};
use urd_core::{
    admissible_spectrum, edge_budget, fixed_design, oracle_spectrum, three_edge_color,
    transform_pair, verify, Block, ClassKind, Decomposition, Edge, GraphKind, IntersectionGraph,
    OneFactor, ParallelClass, SearchLimits,
};

type Check = Result<String, String>;

struct Criterion {
    name: &'static str,
    check: fn() -> Check,
    limit: Duration,
}

fn main() {
    let criteria = [
        Criterion {
            name: "1 spectrum conformance",
            check: spectrum_conformance,
            limit: Duration::from_secs(1),
        },
        Criterion {
            name: "2 build and verify every point, v <= 51",
            check: build_sweep,
            limit: Duration::from_secs(300),
        },
        Criterion {
            name: "3 path transform properties",
            check: transform_properties,
            limit: Duration::from_secs(30),
        },
        Criterion {
            name: "4 cubic bipartite edge colouring",
            check: edge_colouring,
            limit: Duration::from_secs(100),
        },
        Criterion {
            name: "5 fixed small designs and mutations",
            check: fixed_designs,
            limit: Duration::from_secs(1),
        },
        Criterion {
            name: "6 exhaustive search, v in {3,6,9}",
            check: oracle_equivalence,
            limit: Duration::from_secs(10),
        },
        Criterion {
            name: "7 counting identities, v <= 999",
            check: counting_identities,
            limit: Duration::from_secs(1),
        },
        Criterion {
            name: "8 seeded builds are byte-identical",
            check: determinism,
            limit: Duration::MAX,
        },
    ];
    let mut failed = 0;
    for Criterion { name, check, limit } in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = match result {
            Ok(note) if took > limit => Err(format!("{note}; took {took:.2?}, limit {limit:?}")),
            other => other,
        };
        match result {
            Ok(note) => println!("PASS  {name}: {note} ({took:.2?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why} ({took:.2?})");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

/// The admissible set written out from the table rows, independently of
/// the library.
fn table_row(v: u32) -> BTreeSet<(u32, u32)> {
    let pts: Vec<(u32, u32)> = match (v, v % 12) {
        (6, _) => vec![(3, 0)],
        (12, _) => vec![(3, 3), (6, 1)],
        (_, 3) => (0..=(v - 3) / 4)
            .map(|x| (3 * x, (v - 1) / 2 - 2 * x))
            .collect(),
        (_, 9) => (0..=(v - 1) / 4)
            .map(|x| (3 * x, (v - 1) / 2 - 2 * x))
            .collect(),
        (_, 6) => (0..=(v - 2) / 4)
            .map(|x| (3 * x, (v - 2) / 2 - 2 * x))
            .collect(),
        (_, 0) => (0..=(v - 4) / 4)
            .map(|x| (3 * x, (v - 2) / 2 - 2 * x))
            .collect(),
        _ => unreachable!(),
    };
    pts.into_iter().collect()
}

fn library_points(v: u32) -> BTreeSet<(u32, u32)> {
    admissible_spectrum(v)
        .unwrap()
        .points
        .iter()
        .map(|p| (p.r, p.s))
        .collect()
}

fn spectrum_conformance() -> Check {
    for v in (3..=999).step_by(3) {
        let got = library_points(v);
        let want = table_row(v);
        ensure(got == want, || format!("v={v}: got {got:?}, want {want:?}"))?;
    }
    let spots: [(u32, &[(u32, u32)]); 5] = [
        (6, &[(3, 0)]),
        (12, &[(3, 3), (6, 1)]),
        (9, &[(0, 4), (3, 2), (6, 0)]),
        (18, &[(0, 8), (3, 6), (6, 4), (9, 2), (12, 0)]),
        (24, &[(0, 11), (3, 9), (6, 7), (9, 5), (12, 3), (15, 1)]),
    ];
    for (v, pts) in spots {
        let want: BTreeSet<_> = pts.iter().copied().collect();
        ensure(library_points(v) == want, || {
            format!("spot value I({v}) differs")
        })?;
    }
    Ok("333 orders match the table rows and 5 spot values".into())
}

fn urd(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_urd"))
        .args(args)
        .output()
        .expect("urd binary runs")
}

fn build_sweep() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut count = 0;
    for v in (3..=51).step_by(3) {
        for (r, s) in table_row(v) {
            let path = dir.path().join(format!("{v}-{r}-{s}.urd"));
            let path = path.to_str().unwrap();
            let (vs, rs, ss) = (v.to_string(), r.to_string(), s.to_string());
            let built = urd(&["build", &vs, &rs, &ss, "--seed", "0", "--out", path]);
            ensure(built.status.code() == Some(0), || {
                format!(
                    "build {v} {r} {s} exited {:?}: {}",
                    built.status.code(),
                    String::from_utf8_lossy(&built.stderr)
                )
            })?;
            let checked = urd(&["verify", path, "--expect", &vs, &rs, &ss]);
            ensure(
                checked.status.code() == Some(0) && checked.stdout == b"ACCEPT\n",
                || {
                    format!(
                        "verify {v} {r} {s}: {}",
                        String::from_utf8_lossy(&checked.stdout)
                    )
                },
            )?;
            count += 1;
        }
    }
    Ok(format!("{count} points accepted"))
}

fn sorted_pairs(blocks: &[Block]) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for b in blocks {
        let [x, y, z] = b.vertices();
        let ps = match b {
            Block::Triangle(_) => vec![(x, y), (x, z), (y, z)],
            Block::Path { .. } => vec![(x, y), (x, z)],
        };
        out.extend(ps.into_iter().map(|(a, b)| (a.min(b), a.max(b))));
    }
    out.sort_unstable();
    out
}

fn transform_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for draw in 0..200 {
        let v = *[9u32, 15, 21, 27].choose(&mut rng).unwrap();
        let limits = SearchLimits::with_seed(rng.random());
        let system = search_triple_system(v, &limits).map_err(|e| e.to_string())?;
        let picked: Vec<&ParallelClass> = system.classes.choose_multiple(&mut rng, 2).collect();
        let out = transform_pair(picked[0], picked[1]).map_err(|e| format!("draw {draw}: {e}"))?;

        let mut before: Vec<Block> = picked[0].blocks.clone();
        before.extend(picked[1].blocks.iter().copied());
        let after: Vec<Block> = out.iter().flat_map(|c| c.blocks.iter().copied()).collect();
        ensure(sorted_pairs(&before) == sorted_pairs(&after), || {
            format!("draw {draw} (v={v}): edges changed")
        })?;

        let mut centres = vec![0; v as usize];
        for class in &out {
            ensure(class.kind == ClassKind::Path, || {
                format!("draw {draw}: not a path class")
            })?;
            let mut seen = vec![0; v as usize];
            for b in &class.blocks {
                ensure(b.kind() == ClassKind::Path, || {
                    format!("draw {draw}: mixed class")
                })?;
                for x in b.vertices() {
                    seen[x as usize] += 1;
                }
                if let Block::Path { center, .. } = b {
                    centres[*center as usize] += 1;
                }
            }
            ensure(seen.iter().all(|&n| n == 1), || {
                format!("draw {draw}: not a partition")
            })?;
        }
        ensure(centres.iter().all(|&n| n == 1), || {
            format!("draw {draw}: centre counts off")
        })?;
    }
    Ok("200 draws".into())
}

fn random_cubic_bipartite(n: usize, rng: &mut ChaCha8Rng) -> IntersectionGraph {
    loop {
        let mut pairs = Vec::with_capacity(3 * n);
        for _ in 0..3 {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            pairs.extend(perm.into_iter().enumerate());
        }
        let distinct: BTreeSet<_> = pairs.iter().collect();
        if distinct.len() < pairs.len() {
            continue;
        }
        let edges = pairs
            .into_iter()
            .enumerate()
            .map(|(i, (left, right))| BEdge {
                left,
                right,
                shared: i as u32,
            })
            .collect();
        return IntersectionGraph::from_edges(n, edges).expect("cubic bipartite");
    }
}

fn edge_colouring() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut slowest = Duration::ZERO;
    for g in 0..100 {
        let n = rng.random_range(3..=300);
        let b = random_cubic_bipartite(n, &mut rng);
        let start = Instant::now();
        let col = three_edge_color(&b).map_err(|e| format!("graph {g}: {e}"))?;
        slowest = slowest.max(start.elapsed());
        ensure(col.color.len() == 3 * n, || {
            format!("graph {g}: wrong length")
        })?;
        for c in [Color::A, Color::B, Color::C] {
            let mut left = vec![0; n];
            let mut right = vec![0; n];
            for (e, edge) in b.edges().iter().enumerate() {
                if col.color[e] == c {
                    left[edge.left] += 1;
                    right[edge.right] += 1;
                }
            }
            ensure(left.iter().chain(&right).all(|&k| k == 1), || {
                format!("graph {g} (n={n}): colour class is not a perfect matching")
            })?;
        }
    }
    ensure(slowest < Duration::from_secs(1), || {
        format!("slowest graph {slowest:?}")
    })?;
    Ok(format!("100 graphs, slowest {slowest:.2?}"))
}

fn hex(c: char) -> u32 {
    c.to_digit(12).unwrap()
}

fn transcribed(factor: &str, classes: &[&str]) -> Decomposition {
    let nums = |t: &str| -> Vec<u32> {
        t.chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .map(hex)
            .collect()
    };
    let pairs: Vec<Edge> = factor
        .split_whitespace()
        .map(|t| {
            let n = nums(t);
            Edge::new(n[0], n[1])
        })
        .collect();
    let v = 2 * pairs.len() as u32;
    let classes = classes
        .iter()
        .map(|line| {
            ParallelClass::from_blocks(
                line.split_whitespace()
                    .map(|t| {
                        let n = nums(t);
                        if t.contains(';') {
                            Block::path(n[0], n[1], n[2])
                        } else {
                            Block::triangle(n[0], n[1], n[2])
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    Decomposition {
        v,
        graph: GraphKind::MinusOneFactor,
        factor: Some(OneFactor { pairs }),
        classes,
    }
}

fn same_design(a: &Decomposition, b: &Decomposition) -> bool {
    let key = |d: &Decomposition| {
        let mut f: Vec<_> = d.factor.as_ref().unwrap().pairs.clone();
        f.sort();
        let mut cs: Vec<Vec<(u32, u32)>> =
            d.classes.iter().map(|c| sorted_pairs(&c.blocks)).collect();
        cs.sort();
        let kinds: Vec<_> = d
            .classes
            .iter()
            .map(|c| c.kind == ClassKind::Path)
            .collect();
        (d.v, f, cs, kinds.iter().filter(|&&p| p).count())
    };
    key(a) == key(b)
}

fn fixed_designs() -> Check {
    let designs = [
        (
            (6, 3, 0),
            transcribed(
                "(0,1) (2,3) (4,5)",
                &["(0;2,4) (1;3,5)", "(2;4,1) (3;5,0)", "(4;1,3) (5;2,0)"],
            ),
        ),
        (
            (12, 3, 3),
            transcribed(
                "(1,8) (2,b) (3,0) (4,9) (5,a) (6,7)",
                &[
                    "(1;6,a) (8;0,2) (3;4,9) (7;5,b)",
                    "(4;7,1) (5;2,b) (6;8,3) (9;0,a)",
                    "(0;4,5) (a;6,8) (b;1,3) (2;7,9)",
                    "(1,2,3) (4,5,6) (7,8,9) (0,a,b)",
                    "(1,5,9) (4,8,b) (3,7,a) (2,6,0)",
                    "(1,7,0) (2,4,a) (3,5,8) (6,9,b)",
                ],
            ),
        ),
        (
            (12, 6, 1),
            transcribed(
                "(1,9) (2,7) (3,8) (4,b) (5,a) (6,0)",
                &[
                    "(1;4,7) (5;8,0) (9;2,b) (a;3,6)",
                    "(2;6,8) (4;9,a) (7;3,0) (b;1,5)",
                    "(0;4,2) (3;5,9) (6;7,b) (8;1,a)",
                    "(1;5,6) (4;8,7) (9;0,a) (b;3,2)",
                    "(2;4,5) (6;9,8) (7;a,b) (0;1,3)",
                    "(3;4,6) (5;7,9) (8;0,b) (a;1,2)",
                    "(1,2,3) (4,5,6) (7,8,9) (0,a,b)",
                ],
            ),
        ),
    ];
    for ((v, r, s), expected) in &designs {
        let loaded = fixed_design(*v, *r, *s)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("no fixed design for ({v},{r},{s})"))?;
        ensure(verify(&loaded).is_accept(), || {
            format!("({v},{r},{s}) rejected")
        })?;
        ensure(same_design(&loaded, expected), || {
            format!("({v},{r},{s}) differs from its block list")
        })?;
    }

    // (design, class, block, replacement)
    let mutations: [(usize, usize, usize, Block); 20] = [
        (0, 0, 0, Block::path(0, 2, 5)),
        (0, 0, 0, Block::path(2, 0, 4)),
        (0, 1, 0, Block::path(2, 1, 5)),
        (0, 2, 1, Block::path(5, 0, 3)),
        (0, 2, 0, Block::path(4, 1, 0)),
        (1, 0, 0, Block::path(1, 6, 11)),
        (1, 1, 2, Block::path(3, 6, 8)),
        (1, 2, 0, Block::path(0, 4, 6)),
        (1, 3, 0, Block::triangle(1, 2, 4)),
        (1, 4, 1, Block::triangle(4, 8, 10)),
        (1, 5, 3, Block::triangle(6, 9, 10)),
        (1, 3, 3, Block::path(0, 10, 11)),
        (2, 0, 0, Block::path(1, 4, 8)),
        (2, 1, 3, Block::path(11, 1, 6)),
        (2, 2, 1, Block::path(3, 5, 10)),
        (2, 3, 0, Block::path(5, 1, 6)),
        (2, 4, 2, Block::path(7, 10, 9)),
        (2, 5, 3, Block::path(1, 10, 2)),
        (2, 6, 0, Block::triangle(1, 2, 4)),
        (2, 6, 3, Block::triangle(0, 10, 6)),
    ];
    for (n, (which, class, block, replacement)) in mutations.iter().enumerate() {
        let mut d = designs[*which].1.clone();
        let original = d.classes[*class].blocks[*block];
        ensure(original != *replacement, || {
            format!("mutation {n} changes nothing")
        })?;
        d.classes[*class].blocks[*block] = *replacement;
        ensure(!verify(&d).is_accept(), || {
            format!("mutation {n} was accepted")
        })?;
    }
    Ok("3 designs accepted, 20 mutations rejected".into())
}

fn oracle_equivalence() -> Check {
    for v in [3, 6, 9] {
        let res = oracle_spectrum(v, &SearchLimits::default(), false).map_err(|e| e.to_string())?;
        ensure(res.exhausted, || format!("v={v}: search not exhausted"))?;
        let found: BTreeSet<_> = res.points.iter().map(|p| (p.r, p.s)).collect();
        ensure(found == library_points(v), || {
            format!("v={v}: search found {found:?}")
        })?;
    }
    Ok("exhaustive search reproduces I(3), I(6), I(9)".into())
}

fn counting_identities() -> Check {
    let mut points = 0;
    for v in (3..=999u32).step_by(3) {
        let budget = if v % 2 == 1 {
            3 * (v - 1) / 2
        } else {
            3 * (v - 2) / 2
        };
        ensure(edge_budget(v) == Ok(u64::from(budget)), || {
            format!("edge_budget({v})")
        })?;
        let odd_s = matches!(v % 12, 0 | 3);
        for (r, s) in library_points(v) {
            ensure(2 * r + 3 * s == budget, || {
                format!("v={v} ({r},{s}): 2r+3s")
            })?;
            ensure(r % 3 == 0, || format!("v={v} ({r},{s}): r mod 3"))?;
            ensure((s % 2 == 1) == odd_s, || {
                format!("v={v} ({r},{s}): parity of s")
            })?;
            points += 1;
        }
    }
    Ok(format!("{points} points"))
}

fn determinism() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let all: Vec<(u32, u32, u32)> = (3..=51)
        .step_by(3)
        .flat_map(|v| table_row(v).into_iter().map(move |(r, s)| (v, r, s)))
        .collect();
    for &(v, r, s) in all.choose_multiple(&mut rng, 20) {
        let args = [
            "build".to_string(),
            v.to_string(),
            r.to_string(),
            s.to_string(),
            "--seed".into(),
            "7".into(),
        ];
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = urd(&args);
        let b = urd(&args);
        ensure(a.status.code() == Some(0), || {
            format!("build {v} {r} {s} failed")
        })?;
        ensure(a.stdout == b.stdout, || {
            format!("build {v} {r} {s} differs between runs")
        })?;
    }
    Ok("20 triples".into())
}
