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

//! Certificates for small orders, checked on every load.

use super::{EngineError, TripleSystem};
use crate::model::{ClassKind, OneFactor};
use crate::text::parse_decomposition;
use crate::verify::verify;

const BUNDLED: &[(u32, &str)] = &[
    (3, include_str!("../../resources/kts-3.urd")),
    (9, include_str!("../../resources/kts-9.urd")),
    (15, include_str!("../../resources/kts-15.urd")),
    (18, include_str!("../../resources/nkts-18.urd")),
    (21, include_str!("../../resources/kts-21.urd")),
    (24, include_str!("../../resources/nkts-24.urd")),
];

/// The bundled triple system of order `v`, if there is one.
///
/// A certificate that fails to parse or verify is an error, never a reason
/// to fall back to search.
pub fn bundled_system(v: u32) -> Result<Option<TripleSystem>, EngineError> {
    let Some(&(_, text)) = BUNDLED.iter().find(|(order, _)| *order == v) else {
        return Ok(None);
    };
    let corrupt = |detail: String| EngineError::CorruptBundle { v, detail };
    let d = parse_decomposition(text.as_bytes()).map_err(|e| corrupt(e.to_string()))?;
    if d.v != v {
        return Err(corrupt(format!("file is for v={}", d.v)));
    }
    let report = verify(&d);
    if let Some(first) = report.violations.first() {
        return Err(corrupt(first.to_string()));
    }
    if d.classes.iter().any(|c| c.kind != ClassKind::Triangle) {
        return Err(corrupt("contains path classes".into()));
    }
    if v % 2 == 0 && d.factor != Some(OneFactor::standard(v)) {
        return Err(corrupt("factor is not {2i, 2i+1}".into()));
    }
    Ok(Some(TripleSystem::from_decomposition(d)))
}
