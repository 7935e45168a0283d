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

//! Uniformly resolvable decompositions of `K_v` (odd `v`) and `K_v - I`
//! (even `v`) into classes of 3-paths and classes of triangles.
//!
//! * [`spectrum`] computes the admissible set `I(v)` of `(r, s)` pairs.
//! * [`engine`] builds Kirkman and nearly Kirkman triple systems.
//! * [`transform`] turns two triangle classes into three path classes.
//! * [`assembler`] combines the two into a certificate for any admissible
//!   `(v, r, s)`.
//! * [`verify`](mod@verify) checks any decomposition from scratch.
//! * [`oracle`] re-derives the spectrum of tiny orders by exhaustive search.
//! * [`text`] reads and writes the `urd-text v1` format.

// Residues read better as `v % 6 == 3` than as method calls.
#![allow(clippy::manual_is_multiple_of)]

pub mod assembler;
pub mod engine;
pub mod model;
pub mod oracle;
pub mod spectrum;
pub mod text;
pub mod transform;
pub mod verify;

pub use assembler::{build_urd, count_classes, fixed_design, BuildError, BuildRequest};
pub use engine::{build_kts, build_nkts, EngineError, SearchLimits, Strategy, TripleSystem};
pub use model::{
    block_edges, canonicalize, Block, ClassKind, Decomposition, Edge, GraphKind, OneFactor,
    ParallelClass, StructureError, Vertex,
};
pub use oracle::{oracle_spectrum, OracleError, OracleResult};
pub use spectrum::{
    admissible_spectrum, check_point, edge_budget, Diagnosis, Reason, Spectrum, SpectrumError,
    SpectrumPoint,
};
pub use text::{parse_decomposition, parse_unchecked, serialize_decomposition, FormatError};
pub use transform::{
    build_intersection_graph, extract_path_class, three_edge_color, transform_pair, EdgeColoring,
    IntersectionGraph, Rotation, TransformError,
};
pub use verify::{verify, verify_request, Report, Verdict, Violation, ViolationCode};
