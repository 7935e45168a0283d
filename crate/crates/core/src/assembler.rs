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

//! Certificates for every admissible `(v, r, s)`.
//!
//! A resolvable triangle decomposition with classes `R_0, R_1, ...` is turned
//! into one with `r` path classes by replacing the `r/3` consecutive pairs
//! `(R_0, R_1), (R_2, R_3), ...` with three path classes each. Orders 6 and 12
//! have no such triangle decomposition and are served from fixed designs.

use thiserror::Error;

use crate::engine::{build_kts, build_nkts, EngineError, SearchLimits};
use crate::model::{ClassKind, Decomposition, GraphKind};
use crate::spectrum::{check_point, Diagnosis, Reason};
use crate::text::parse_decomposition;
use crate::transform::{transform_pair, TransformError};
use crate::verify::verify;

const FIXED_6_3_0: &str = include_str!("../resources/urd-6-3-0.urd");
const FIXED_12_3_3: &str = include_str!("../resources/urd-12-3-3.urd");
const FIXED_12_6_1: &str = include_str!("../resources/urd-12-6-1.urd");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildRequest {
    pub v: u32,
    pub r: u32,
    pub s: u32,
    pub limits: SearchLimits,
}

impl BuildRequest {
    pub fn new(v: u32, r: u32, s: u32) -> BuildRequest {
        BuildRequest {
            v,
            r,
            s,
            limits: SearchLimits::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("({r},{s}) is not in the spectrum of v={v}: {reason}")]
    InfeasibleSpectrum {
        v: u32,
        r: u32,
        s: u32,
        reason: Reason,
    },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error("fixed design {name} is corrupt: {detail}")]
    CorruptFixedDesign { name: &'static str, detail: String },
}

/// The fixed design for `(v, r, s)` if there is one, re-verified.
pub fn fixed_design(v: u32, r: u32, s: u32) -> Result<Option<Decomposition>, BuildError> {
    let (name, text) = match (v, r, s) {
        (6, 3, 0) => ("urd-6-3-0", FIXED_6_3_0),
        (12, 3, 3) => ("urd-12-3-3", FIXED_12_3_3),
        (12, 6, 1) => ("urd-12-6-1", FIXED_12_6_1),
        _ => return Ok(None),
    };
    let corrupt = |detail: String| BuildError::CorruptFixedDesign { name, detail };
    let d = parse_decomposition(text.as_bytes()).map_err(|e| corrupt(e.to_string()))?;
    let report = verify(&d);
    if !report.is_accept() {
        return Err(corrupt(report.violations[0].to_string()));
    }
    if d.v != v || d.count_classes() != (r, s) {
        return Err(corrupt("header does not match its name".into()));
    }
    Ok(Some(d))
}

pub fn build_urd(req: &BuildRequest) -> Result<Decomposition, BuildError> {
    let BuildRequest { v, r, s, .. } = *req;
    if let Diagnosis::Reject(reason) = check_point(v, r, s) {
        return Err(BuildError::InfeasibleSpectrum { v, r, s, reason });
    }
    if let Some(d) = fixed_design(v, r, s)? {
        return Ok(d);
    }
    let system = if v % 2 == 1 {
        build_kts(v, &req.limits)?
    } else {
        build_nkts(v, &req.limits)?
    };
    let x = (r / 3) as usize;
    let triangles = &system.classes;
    if 2 * x > triangles.len() || triangles.len() - 2 * x != s as usize {
        return Err(BuildError::Engine(EngineError::InternalInvariantViolated(
            format!("{} classes cannot give ({r},{s})", triangles.len()),
        )));
    }
    let mut classes = Vec::with_capacity((r + s) as usize);
    for pair in triangles[..2 * x].chunks(2) {
        classes.extend(transform_pair(&pair[0], &pair[1])?);
    }
    classes.extend_from_slice(&triangles[2 * x..]);
    Ok(Decomposition {
        v,
        graph: GraphKind::for_order(v),
        factor: system.factor,
        classes,
    })
}

/// Number of path classes and triangle classes.
pub fn count_classes(d: &Decomposition) -> (u32, u32) {
    let r = d
        .classes
        .iter()
        .filter(|c| c.kind == ClassKind::Path)
        .count() as u32;
    (r, d.classes.len() as u32 - r)
}
