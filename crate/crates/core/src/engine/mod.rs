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

//! Resolvable triangle decompositions: Kirkman triple systems KTS(v) for
//! `v ≡ 3 (mod 6)` and nearly Kirkman triple systems NKTS(v), i.e. 3-RGDDs
//! of type `2^(v/2)`, for `v ≡ 0 (mod 6)`, `v >= 18`.
//!
//! Two search strategies are available:
//!
//! * [`Strategy::Developed`] (default) searches for one or two base classes
//!   that are developed under a cyclic group acting on the points, so that
//!   every pair orbit is covered exactly once. The search space is a single
//!   partition of the points, which stays small well past `v = 100`.
//! * [`Strategy::Greedy`] builds the classes of `K_v` one at a time with a
//!   randomized backtracking class finder, undoing the two most recent
//!   classes on stagnation and restarting from scratch after repeated
//!   stagnation. It is only practical for small orders.
//!
//! Orders 3, 9, 15, 18, 21 and 24 are served from bundled certificates that
//! are re-verified every time they are loaded.

mod bundled;
mod developed;
mod greedy;

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::model::{ClassKind, Decomposition, GraphKind, OneFactor, ParallelClass};
use crate::verify::verify;

pub use bundled::bundled_system;
pub use greedy::{find_parallel_class, EdgeState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Developed,
    Greedy,
}

/// Budget and seed for the randomized searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub seed: u64,
    /// Developed: number of randomized restarts. Greedy: stagnations before
    /// a full restart, and the number of full restarts.
    pub max_restarts: u32,
    /// Developed: a restart gives up after `max_class_attempts * v`
    /// backtracking nodes. Greedy: randomized attempts per class.
    pub max_class_attempts: u32,
    pub time_limit: Option<Duration>,
    pub strategy: Strategy,
    /// Independent seeded restarts run concurrently when above 1. The result
    /// is then any valid design, not a function of the seed.
    pub threads: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            seed: 0,
            max_restarts: 500,
            max_class_attempts: 200,
            time_limit: Some(Duration::from_secs(60)),
            strategy: Strategy::Developed,
            threads: 1,
        }
    }
}

impl SearchLimits {
    pub fn with_seed(seed: u64) -> Self {
        SearchLimits {
            seed,
            ..SearchLimits::default()
        }
    }
}

/// A resolvable triangle decomposition of `K_v` or `K_v - factor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleSystem {
    pub v: u32,
    pub factor: Option<OneFactor>,
    pub classes: Vec<ParallelClass>,
}

impl TripleSystem {
    pub fn to_decomposition(&self) -> Decomposition {
        Decomposition {
            v: self.v,
            graph: GraphKind::for_order(self.v),
            factor: self.factor.clone(),
            classes: self.classes.clone(),
        }
    }

    /// Number of classes a system of order `v` must have.
    pub fn class_count(v: u32) -> usize {
        if v % 2 == 1 {
            (v as usize - 1) / 2
        } else {
            (v as usize - 2) / 2
        }
    }

    pub(crate) fn from_decomposition(d: Decomposition) -> TripleSystem {
        TripleSystem {
            v: d.v,
            factor: d.factor,
            classes: d.classes,
        }
    }

    /// Runs the verifier plus the triple-system specific checks.
    pub(crate) fn certify(&self) -> Result<(), EngineError> {
        let report = verify(&self.to_decomposition());
        if !report.is_accept() {
            return Err(EngineError::InternalInvariantViolated(format!(
                "triple system of order {} failed verification: {}",
                self.v, report.violations[0]
            )));
        }
        if self.classes.iter().any(|c| c.kind != ClassKind::Triangle)
            || self.classes.len() != TripleSystem::class_count(self.v)
        {
            return Err(EngineError::InternalInvariantViolated(format!(
                "triple system of order {} has the wrong classes",
                self.v
            )));
        }
        if self.v % 2 == 0 && self.factor.as_ref() != Some(&OneFactor::standard(self.v)) {
            return Err(EngineError::InternalInvariantViolated(
                "factor is not {2i, 2i+1}".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("v={v}: {reason}")]
    PreconditionViolated { v: u32, reason: &'static str },
    #[error("no resolvable triangle decomposition of order {0} exists")]
    NoSuchDesign(u32),
    #[error("search for order {0} gave up before finding a design")]
    SearchTimeout(u32),
    #[error("bundled design for v={v} is corrupt: {detail}")]
    CorruptBundle { v: u32, detail: String },
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolated(String),
}

/// A Kirkman triple system of order `v ≡ 3 (mod 6)`.
pub fn build_kts(v: u32, limits: &SearchLimits) -> Result<TripleSystem, EngineError> {
    if v % 6 != 3 {
        return Err(EngineError::PreconditionViolated {
            v,
            reason: "a Kirkman triple system needs v ≡ 3 (mod 6)",
        });
    }
    match bundled_system(v)? {
        Some(system) => Ok(system),
        None => search_triple_system(v, limits),
    }
}

/// A nearly Kirkman triple system of order `v ≡ 0 (mod 6)` whose removed
/// one-factor is `{2i, 2i+1}`.
pub fn build_nkts(v: u32, limits: &SearchLimits) -> Result<TripleSystem, EngineError> {
    if v % 6 != 0 || v == 0 {
        return Err(EngineError::PreconditionViolated {
            v,
            reason: "a nearly Kirkman triple system needs v ≡ 0 (mod 6)",
        });
    }
    if v == 6 || v == 12 {
        return Err(EngineError::NoSuchDesign(v));
    }
    match bundled_system(v)? {
        Some(system) => Ok(system),
        None => search_triple_system(v, limits),
    }
}

/// KTS(v) or NKTS(v) by search, ignoring the bundled certificates.
pub fn search_triple_system(v: u32, limits: &SearchLimits) -> Result<TripleSystem, EngineError> {
    match v % 6 {
        3 => {}
        0 if v >= 18 => {}
        0 if v == 6 || v == 12 => return Err(EngineError::NoSuchDesign(v)),
        _ => {
            return Err(EngineError::PreconditionViolated {
                v,
                reason: "v must be ≡ 3 (mod 6), or ≡ 0 (mod 6) and at least 18",
            })
        }
    }
    let deadline = limits.time_limit.map(|t| Instant::now() + t);
    let stop = AtomicBool::new(false);
    let run = |seed: u64| -> Option<TripleSystem> {
        let ctx = SearchContext {
            deadline,
            stop: &stop,
        };
        let found = match limits.strategy {
            Strategy::Developed => developed::search(v, seed, limits, &ctx),
            Strategy::Greedy => greedy::search(v, seed, limits, &ctx),
        };
        if found.is_some() {
            stop.store(true, Ordering::Relaxed);
        }
        found
    };

    let found = if limits.threads <= 1 {
        run(limits.seed)
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..limits.threads as u64)
                .map(|i| {
                    let run = &run;
                    scope.spawn(move || {
                        run(limits
                            .seed
                            .wrapping_add(i.wrapping_mul(0x9e37_79b9_7f4a_7c15)))
                    })
                })
                .collect();
            handles
                .into_iter()
                .filter_map(|h| h.join().expect("search thread panicked"))
                .next()
        })
    };

    let system = found.ok_or(EngineError::SearchTimeout(v))?;
    system.certify()?;
    Ok(system)
}

/// Cancellation shared by the search loops.
pub(crate) struct SearchContext<'a> {
    deadline: Option<Instant>,
    stop: &'a AtomicBool,
}

impl SearchContext<'_> {
    pub(crate) fn expired(&self) -> bool {
        self.stop.load(Ordering::Relaxed) || self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}
