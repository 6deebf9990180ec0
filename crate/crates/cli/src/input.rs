//! Dual-point input: a JSON array `[p, e, f, k, y]` (or an array of them) or
//! CSV rows in the same order. Components may be integers, decimals or
//! fractions `"n/d"`; decimals are read exactly.

use std::fmt;

use aristotle_core::{DualElement, Rational, Scalar};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::Deserialize;

use crate::error::CliError;

pub fn parse_points<S: Scalar>(text: &str, source_name: &str) -> Result<Vec<DualElement<S>>, CliError> {
    let points = if text.trim_start().starts_with('[') {
        parse_json(text, source_name)?
    } else {
        parse_csv(text, source_name)?
    };
    if points.is_empty() {
        return Err(CliError::Parse {
            source_name: source_name.to_string(),
            line: 1,
            column: 1,
            message: "no dual points found".into(),
        });
    }
    Ok(points)
}

/// A component kept as validated text so that each backend parses it itself.
struct Cell(String);

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(CellVisitor)
    }
}

struct CellVisitor;

impl CellVisitor {
    fn check<E: de::Error>(s: String) -> Result<Cell, E> {
        Rational::parse_scalar(&s)
            .map(|_| Cell(s.clone()))
            .map_err(|e| E::custom(e.to_string()))
    }
}

impl<'de> Visitor<'de> for CellVisitor {
    type Value = Cell;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a number or a fraction string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Cell, E> {
        Ok(Cell(v.to_string()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Cell, E> {
        Ok(Cell(v.to_string()))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Cell, E> {
        if !v.is_finite() {
            return Err(E::custom("non-finite number"));
        }
        Self::check(format!("{v:e}"))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Cell, E> {
        Self::check(v.to_string())
    }
}

enum Row {
    Component(Cell),
    Point([Cell; 5]),
}

impl<'de> Deserialize<'de> for Row {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(RowVisitor)
    }
}

struct RowVisitor;

impl<'de> Visitor<'de> for RowVisitor {
    type Value = Row;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a component or an array [p, e, f, k, y]")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Row, E> {
        CellVisitor.visit_i64(v).map(Row::Component)
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Row, E> {
        CellVisitor.visit_u64(v).map(Row::Component)
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<Row, E> {
        CellVisitor.visit_f64(v).map(Row::Component)
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Row, E> {
        CellVisitor.visit_str(v).map(Row::Component)
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Row, A::Error> {
        let mut cells = Vec::with_capacity(5);
        while let Some(c) = seq.next_element::<Cell>()? {
            cells.push(c);
        }
        let n = cells.len();
        cells
            .try_into()
            .map(Row::Point)
            .map_err(|_| de::Error::custom(format!("expected 5 components [p, e, f, k, y], got {n}")))
    }
}

fn parse_json<S: Scalar>(text: &str, source_name: &str) -> Result<Vec<DualElement<S>>, CliError> {
    let rows: Vec<Row> = serde_json::from_str(text).map_err(|e| CliError::Parse {
        source_name: source_name.to_string(),
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    let to_point = |cells: &[Cell; 5]| -> DualElement<S> {
        DualElement::from_array(std::array::from_fn(|i| {
            S::parse_scalar(&cells[i].0).expect("validated while reading")
        }))
    };
    let shape_error = |message: &str| CliError::Parse {
        source_name: source_name.to_string(),
        line: 1,
        column: 1,
        message: message.to_string(),
    };
    if rows.iter().all(|r| matches!(r, Row::Component(_))) {
        if rows.len() != 5 {
            return Err(shape_error(&format!(
                "expected 5 components [p, e, f, k, y], got {}",
                rows.len()
            )));
        }
        let cells: Vec<Cell> = rows
            .into_iter()
            .map(|r| match r {
                Row::Component(c) => c,
                Row::Point(_) => unreachable!(),
            })
            .collect();
        let cells: [Cell; 5] = cells.try_into().ok().expect("length checked");
        return Ok(vec![to_point(&cells)]);
    }
    rows.iter()
        .map(|r| match r {
            Row::Point(cells) => Ok(to_point(cells)),
            Row::Component(_) => Err(shape_error("mixed scalars and arrays at top level")),
        })
        .collect()
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn is_header(line: &str) -> bool {
    let cols: Vec<String> = line.split(',').map(|c| c.trim().to_ascii_lowercase()).collect();
    cols == ["p", "e", "f", "k", "y"]
}

fn parse_csv<S: Scalar>(text: &str, source_name: &str) -> Result<Vec<DualElement<S>>, CliError> {
    let mut points = Vec::new();
    let mut seen_content = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if !seen_content && is_header(trimmed) {
            seen_content = true;
            continue;
        }
        seen_content = true;
        let mut fields = Vec::with_capacity(5);
        let mut offset = 0;
        for field in raw.split(',') {
            let lead = field.len() - field.trim_start().len();
            fields.push((raw[..offset + lead].chars().count() + 1, field.trim()));
            offset += field.len() + 1;
        }
        let err = |column: usize, message: String| CliError::Parse {
            source_name: source_name.to_string(),
            line: line_no,
            column,
            message,
        };
        if fields.len() != 5 {
            let column = fields.get(5).map_or(raw.chars().count() + 1, |f| f.0);
            return Err(err(
                column,
                format!("expected 5 comma-separated components p,e,f,k,y, got {}", fields.len()),
            ));
        }
        let mut comps = Vec::with_capacity(5);
        for (column, text) in fields {
            comps.push(S::parse_scalar(text).map_err(|e| err(column, e.to_string()))?);
        }
        let arr: [S; 5] = comps.try_into().unwrap_or_else(|_| unreachable!("length checked"));
        points.push(DualElement::from_array(arr));
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Rational;

    fn q(n: i64, d: i64) -> Q {
        Q::ratio(n, d)
    }

    #[test]
    fn json_single_and_many() {
        let one: Vec<DualElement<Q>> = parse_points("[1, 2, \"3/2\", 0.25, -1]", "in").unwrap();
        assert_eq!(
            one,
            vec![DualElement::new(q(1, 1), q(2, 1), q(3, 2), q(1, 4), q(-1, 1))]
        );
        let many: Vec<DualElement<Q>> =
            parse_points("[[1,1,1,1,1],\n [0,0,0,0,0]]", "in").unwrap();
        assert_eq!(many.len(), 2);
    }

    #[test]
    fn decimal_json_is_exact() {
        let one: Vec<DualElement<Q>> = parse_points("[0.1, 0, 0, 0, 0]", "in").unwrap();
        assert_eq!(one[0].p, q(1, 10));
    }

    #[test]
    fn csv_rows_with_header_and_comments() {
        let text = "p,e,f,k,y\n# comment\n1,1,1,1,1\n\n0, 1, 0, 2, 0\n";
        let pts: Vec<DualElement<Q>> = parse_points(text, "in").unwrap();
        assert_eq!(pts.len(), 2);
        assert_eq!(pts[1].k, q(2, 1));
    }

    #[test]
    fn csv_error_positions() {
        let err = parse_points::<Q>("1,1,1,1,1\n1,2,x,4,5\n", "pts.csv").unwrap_err();
        assert_eq!(err.to_string().split(": ").next().unwrap(), "pts.csv:2:5");
        let err = parse_points::<Q>("1,2,3\n", "pts.csv").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 1, column: 6, .. }), "{err}");
        let err = parse_points::<Q>("1,2,3,4,5,6\n", "pts.csv").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 1, column: 11, .. }), "{err}");
    }

    #[test]
    fn json_error_positions() {
        let err = parse_points::<Q>("[[1,1,1,1,1],\n [1,2,\"zz\",4,5]]", "in").unwrap_err();
        match err {
            CliError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("{other}"),
        }
        let err = parse_points::<Q>("[1,2,3", "in").unwrap_err();
        assert!(matches!(err, CliError::Parse { .. }));
        let err = parse_points::<Q>("[[1,2,3,4]]", "in").unwrap_err();
        assert!(err.to_string().contains("expected 5 components"), "{err}");
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(parse_points::<Q>("# nothing\n", "in").is_err());
    }

    #[test]
    fn float_backend_reads_fractions() {
        let pts: Vec<DualElement<f64>> = parse_points("3/2,0,0,0,0", "in").unwrap();
        assert_eq!(pts[0].p, 1.5);
    }
}
