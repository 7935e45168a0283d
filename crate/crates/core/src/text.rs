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

//! The `urd-text v1` format.
//!
//! ```text
//! urd-text v1
//! v=6 graph=minus-one-factor r=3 s=0
//! factor: 0-1 2-3 4-5
//! class path: (0;2,4) (1;3,5)
//! class path: (3;0,5) (2;1,4)
//! class path: (5;0,2) (4;1,3)
//! ```
//!
//! Single spaces separate tokens, lines end in LF, there is no trailing
//! whitespace and the file ends with LF. The `factor:` line is present
//! exactly when `graph=minus-one-factor`. All `r` path class lines come
//! before the `s` triangle class lines.

use thiserror::Error;

use crate::model::{
    sort_fields, Block, ClassKind, Decomposition, Edge, GraphKind, OneFactor, ParallelClass,
    StructureError,
};

pub const MAGIC: &str = "urd-text v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Parses and structurally checks a decomposition.
///
/// The result is canonical. Edge-partition correctness is not checked here.
pub fn parse_decomposition(text: &[u8]) -> Result<Decomposition, FormatError> {
    let d = parse_unchecked(text)?;
    d.check_structure()?;
    Ok(d)
}

/// Grammar-only parse: the header counts must match the class lines, but
/// vertex ranges, class sizes and partitions are left to the caller. Blocks
/// are returned with their fields sorted.
pub fn parse_unchecked(text: &[u8]) -> Result<Decomposition, FormatError> {
    let text = std::str::from_utf8(text).map_err(|e| {
        let before = &text[..e.valid_up_to()];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        let column = before.iter().rev().take_while(|&&b| b != b'\n').count() + 1;
        FormatError::Parse {
            line,
            column,
            message: "invalid UTF-8".into(),
        }
    })?;
    let Some(body) = text.strip_suffix('\n') else {
        let line = text.matches('\n').count() + 1;
        return Err(FormatError::Parse {
            line,
            column: text.rsplit('\n').next().map_or(1, |l| l.len() + 1),
            message: "file must end with a newline".into(),
        });
    };
    let mut lines = body
        .split('\n')
        .enumerate()
        .map(|(i, s)| Cursor::new(i + 1, s));

    let mut c = lines.next().expect("split yields at least one item");
    c.expect(MAGIC)?;
    c.end()?;

    let mut c = lines.next().ok_or_else(|| eof_error(2))?;
    c.expect("v=")?;
    let v = c.int()?;
    c.expect(" graph=")?;
    let graph = if c.eat("complete") {
        GraphKind::Complete
    } else if c.eat("minus-one-factor") {
        GraphKind::MinusOneFactor
    } else {
        return Err(c.error("expected `complete` or `minus-one-factor`"));
    };
    c.expect(" r=")?;
    let r = c.int()?;
    c.expect(" s=")?;
    let s = c.int()?;
    c.end()?;

    let mut lines = lines.peekable();
    let mut factor = None;
    if lines
        .peek()
        .is_some_and(|c| c.rest().starts_with("factor:"))
    {
        let mut c = lines.next().unwrap();
        c.expect("factor:")?;
        let mut pairs = Vec::new();
        while !c.at_end() {
            c.expect(" ")?;
            let a = c.int()?;
            c.expect("-")?;
            let col = c.column();
            let b = c.int()?;
            if a == b {
                return Err(c.error_at(col, "factor pair repeats a vertex"));
            }
            pairs.push(Edge::new(a, b));
        }
        factor = Some(OneFactor { pairs });
    }

    let mut classes = Vec::new();
    let mut seen_triangle = false;
    let (mut paths, mut triangles) = (0u32, 0u32);
    for mut c in lines {
        c.expect("class ")?;
        let kind = if c.eat("path:") {
            if seen_triangle {
                return Err(c.error("path classes must precede triangle classes"));
            }
            paths += 1;
            ClassKind::Path
        } else if c.eat("triangle:") {
            seen_triangle = true;
            triangles += 1;
            ClassKind::Triangle
        } else {
            return Err(c.error("expected `path:` or `triangle:`"));
        };
        let mut blocks = Vec::new();
        while !c.at_end() {
            c.expect(" (")?;
            let a = c.int()?;
            let block = match kind {
                ClassKind::Path => {
                    c.expect(";")?;
                    let x = c.int()?;
                    c.expect(",")?;
                    let y = c.int()?;
                    Block::path(a, x, y)
                }
                ClassKind::Triangle => {
                    c.expect(",")?;
                    let b = c.int()?;
                    c.expect(",")?;
                    let d = c.int()?;
                    Block::triangle(a, b, d)
                }
            };
            c.expect(")")?;
            blocks.push(block);
        }
        classes.push(ParallelClass { kind, blocks });
    }

    if (paths, triangles) != (r, s) {
        return Err(FormatError::Parse {
            line: 2,
            column: 1,
            message: format!(
                "header declares r={r} s={s} but the file has {paths} path and {triangles} triangle classes"
            ),
        });
    }

    Ok(sort_fields(&Decomposition {
        v,
        graph,
        factor,
        classes,
    }))
}

/// Serializes `d` in canonical form: sorted blocks and factor, path classes
/// first, each kind in its original relative order.
pub fn serialize_decomposition(d: &Decomposition) -> String {
    use std::fmt::Write;

    let d = sort_fields(d);
    let (r, s) = d.count_classes();
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    let _ = writeln!(out, "v={} graph={} r={r} s={s}", d.v, d.graph.name());
    if let Some(f) = &d.factor {
        out.push_str("factor:");
        for e in &f.pairs {
            let _ = write!(out, " {e}");
        }
        out.push('\n');
    }
    for kind in [ClassKind::Path, ClassKind::Triangle] {
        for class in d.classes.iter().filter(|c| c.kind == kind) {
            let _ = write!(out, "class {}:", kind.name());
            for b in &class.blocks {
                let _ = write!(out, " {b}");
            }
            out.push('\n');
        }
    }
    out
}

fn eof_error(line: usize) -> FormatError {
    FormatError::Parse {
        line,
        column: 1,
        message: "unexpected end of file".into(),
    }
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        Cursor { line, text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn column(&self) -> usize {
        self.text[..self.pos].chars().count() + 1
    }

    fn at_end(&self) -> bool {
        self.pos == self.text.len()
    }

    fn error(&self, message: &str) -> FormatError {
        self.error_at(self.column(), message)
    }

    fn error_at(&self, column: usize, message: &str) -> FormatError {
        FormatError::Parse {
            line: self.line,
            column,
            message: message.to_string(),
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), FormatError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    fn int(&mut self) -> Result<u32, FormatError> {
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        let value = self.rest()[..digits]
            .parse()
            .map_err(|_| self.error("integer out of range"))?;
        self.pos += digits;
        Ok(value)
    }

    fn end(&self) -> Result<(), FormatError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing characters"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::canonicalize;

    const V6: &str = "urd-text v1\n\
        v=6 graph=minus-one-factor r=3 s=0\n\
        factor: 0-1 2-3 4-5\n\
        class path: (0;2,4) (1;3,5)\n\
        class path: (3;0,5) (2;1,4)\n\
        class path: (5;0,2) (4;1,3)\n";

    #[test]
    fn round_trip_is_identity_on_canonical_text() {
        let d = parse_decomposition(V6.as_bytes()).unwrap();
        assert_eq!(serialize_decomposition(&d), V6);
        assert_eq!(d, canonicalize(&d).unwrap());
    }

    #[test]
    fn non_canonical_blocks_are_sorted() {
        let text = V6.replace("(3;0,5) (2;1,4)", "(2;4,1) (3;5,0)");
        let d = parse_decomposition(text.as_bytes()).unwrap();
        assert_eq!(serialize_decomposition(&d), V6);
    }

    #[test]
    fn order_must_be_divisible_by_three() {
        let text = "urd-text v1\nv=7 graph=complete r=0 s=0\n";
        assert_eq!(
            parse_decomposition(text.as_bytes()),
            Err(FormatError::Structure(
                StructureError::OrderNotDivisibleBy3(7)
            ))
        );
    }

    #[test]
    fn even_order_needs_factor_line() {
        let text = V6.replace("factor: 0-1 2-3 4-5\n", "");
        assert_eq!(
            parse_decomposition(text.as_bytes()),
            Err(FormatError::Structure(StructureError::MissingFactor))
        );
    }

    #[test]
    fn header_counts_must_match() {
        let text = V6.replace("r=3", "r=2");
        assert!(matches!(
            parse_decomposition(text.as_bytes()),
            Err(FormatError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let text = V6.replace("(0;2,4) (1;3,5)", "(0;2,4)  (1;3,5)");
        match parse_decomposition(text.as_bytes()) {
            Err(FormatError::Parse { line, column, .. }) => {
                assert_eq!((line, column), (4, 20));
            }
            other => panic!("unexpected {other:?}"),
        }
        let text = V6.replace("r=3 s=0", "r=3 s=0 ");
        assert!(matches!(
            parse_decomposition(text.as_bytes()),
            Err(FormatError::Parse {
                line: 2,
                column: 35,
                ..
            })
        ));
        assert!(matches!(
            parse_decomposition(V6.trim_end().as_bytes()),
            Err(FormatError::Parse { line: 6, .. })
        ));
        assert!(parse_decomposition(V6.replace('\n', "\r\n").as_bytes()).is_err());
    }

    #[test]
    fn wrong_class_size_is_structural() {
        let text = V6.replace(" (1;3,5)", "");
        assert!(matches!(
            parse_decomposition(text.as_bytes()),
            Err(FormatError::Structure(StructureError::WrongClassSize {
                class: 0,
                ..
            }))
        ));
        assert!(parse_unchecked(text.as_bytes()).is_ok());
    }

    #[test]
    fn triangle_lines_after_paths_only() {
        let text = "urd-text v1\nv=3 graph=complete r=1 s=1\n\
            class triangle: (0,1,2)\nclass path: (0;1,2)\n";
        assert!(matches!(
            parse_unchecked(text.as_bytes()),
            Err(FormatError::Parse { line: 4, .. })
        ));
    }

    #[test]
    fn serialize_puts_path_classes_first() {
        let mut d = parse_decomposition(V6.as_bytes()).unwrap();
        d.classes.rotate_left(1);
        d.classes.insert(
            1,
            ParallelClass::from_blocks(vec![Block::triangle(0, 2, 4), Block::triangle(1, 3, 5)]),
        );
        let text = serialize_decomposition(&d);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "v=6 graph=minus-one-factor r=3 s=1");
        assert_eq!(lines[3], "class path: (3;0,5) (2;1,4)");
        assert_eq!(lines[6], "class triangle: (0,2,4) (1,3,5)");
    }
}
