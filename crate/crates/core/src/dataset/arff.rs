//! Reader and writer for the dense subset of the attribute-relation file
//! format: `@relation`, `@attribute` (nominal or numeric), `@data`, `%`
//! comments and `?` for missing values.

use std::fmt::Write as _;

use super::{Attribute, AttributeKind, Dataset, Instance, Schema, Value};
use crate::error::{Error, Result};

/// Parses a complete ARFF document. The last declared attribute is the class.
pub fn parse_arff(text: &str) -> Result<Dataset> {
    let (schema, data_start) = read_header(text)?;
    let Some(data_start) = data_start else {
        return Err(Error::Syntax {
            line: text.lines().count().max(1),
            column: 1,
            message: "missing @data section".into(),
        });
    };
    let mut instances = Vec::new();
    for (idx, raw) in text.lines().enumerate().skip(data_start) {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        if line.trim_start().starts_with('{') {
            return Err(Error::Syntax {
                line: line_no,
                column: column_of(raw, '{'),
                message: "sparse data rows are not supported".into(),
            });
        }
        if line.trim_start().starts_with('@') {
            return Err(Error::Syntax {
                line: line_no,
                column: column_of(raw, '@'),
                message: "declaration after @data".into(),
            });
        }
        let fields = split_fields(line, line_no)?;
        instances.push(parse_row(&schema, &fields, line_no)?);
    }
    Ok(Dataset::from_parts(schema, instances))
}

/// Reads only the declarations, e.g. to use an ARFF header as the schema for a
/// CSV file.
pub fn parse_arff_header(text: &str) -> Result<Schema> {
    read_header(text).map(|(schema, _)| schema)
}

/// Converts the textual fields of one row into an instance.
pub(super) fn parse_row<S: AsRef<str>>(
    schema: &Schema,
    fields: &[S],
    line: usize,
) -> Result<Instance> {
    if fields.len() != schema.len() {
        return Err(Error::Arity {
            line,
            expected: schema.len(),
            found: fields.len(),
        });
    }
    let mut values = Vec::with_capacity(fields.len());
    for (attr, field) in schema.attributes.iter().zip(fields) {
        let token = unquote(field.as_ref().trim());
        let value = if token == "?" {
            Value::Missing
        } else {
            match &attr.kind {
                AttributeKind::Nominal(_) => match attr.symbol_index(token) {
                    Some(s) => Value::Symbol(s),
                    None => {
                        return Err(Error::UnknownNominal {
                            line,
                            attribute: attr.name.clone(),
                            token: token.to_string(),
                        })
                    }
                },
                AttributeKind::Numeric => Value::Real(parse_number(token, &attr.name, line)?),
            }
        };
        values.push(value);
    }
    if values[schema.class_index].is_missing() {
        return Err(Error::MissingClass { line });
    }
    Ok(Instance::new(values))
}

pub(super) fn parse_number(token: &str, attribute: &str, line: usize) -> Result<f64> {
    let x: f64 = token.parse().map_err(|_| Error::InvalidNumber {
        line,
        attribute: attribute.to_string(),
        token: token.to_string(),
    })?;
    if !x.is_finite() {
        return Err(Error::NonFinite {
            line,
            attribute: attribute.to_string(),
            token: token.to_string(),
        });
    }
    Ok(x)
}

/// Returns the schema and the zero-based line index just after `@data`.
fn read_header(text: &str) -> Result<(Schema, Option<usize>)> {
    let mut relation = None;
    let mut attributes = Vec::new();
    let mut data_start = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let offset = line.len() - line.trim_start().len();
        let (keyword, rest) = split_keyword(trimmed);
        let rest_col = offset + (trimmed.len() - rest.len()) + 1;
        match keyword.to_ascii_lowercase().as_str() {
            "@relation" => {
                let (name, _) = read_name(rest, line_no, rest_col)?;
                relation = Some(name);
            }
            "@attribute" => {
                let (name, after) = read_name(rest, line_no, rest_col)?;
                let type_col = rest_col + (rest.len() - after.len());
                let kind = read_type(after, line_no, type_col)?;
                attributes.push(Attribute { name, kind });
            }
            "@data" => {
                data_start = Some(idx + 1);
                break;
            }
            _ => {
                return Err(Error::Syntax {
                    line: line_no,
                    column: offset + 1,
                    message: format!("unexpected `{keyword}` in header"),
                })
            }
        }
    }

    let schema = Schema::new(relation.as_deref().unwrap_or(""), attributes)?;
    Ok((schema, data_start))
}

fn split_keyword(s: &str) -> (&str, &str) {
    match s.find(char::is_whitespace) {
        Some(pos) => (&s[..pos], s[pos..].trim_start()),
        None => (s, ""),
    }
}

/// Reads a possibly quoted identifier, returning it and the remaining text.
fn read_name(s: &str, line: usize, column: usize) -> Result<(String, &str)> {
    let s = s.trim_start();
    let mut chars = s.char_indices();
    match chars.next() {
        None => Err(Error::Syntax {
            line,
            column,
            message: "expected a name".into(),
        }),
        Some((_, q @ ('\'' | '"'))) => {
            for (i, c) in chars {
                if c == q {
                    return Ok((s[1..i].to_string(), s[i + 1..].trim_start()));
                }
            }
            Err(Error::Syntax {
                line,
                column,
                message: "unterminated quoted name".into(),
            })
        }
        Some(_) => {
            let end = s
                .find(|c: char| c.is_whitespace() || c == '{')
                .unwrap_or(s.len());
            Ok((s[..end].to_string(), s[end..].trim_start()))
        }
    }
}

fn read_type(s: &str, line: usize, column: usize) -> Result<AttributeKind> {
    let s = s.trim();
    if let Some(body) = s.strip_prefix('{') {
        let Some(body) = body.strip_suffix('}') else {
            return Err(Error::Syntax {
                line,
                column: column + s.len(),
                message: "nominal domain is missing its closing `}`".into(),
            });
        };
        let values = split_fields(body, line)?
            .into_iter()
            .map(|v| unquote(v.trim()).to_string())
            .filter(|v| !v.is_empty())
            .collect();
        return Ok(AttributeKind::Nominal(values));
    }
    match s.to_ascii_lowercase().as_str() {
        "numeric" | "real" | "integer" => Ok(AttributeKind::Numeric),
        "" => Err(Error::Syntax {
            line,
            column,
            message: "missing attribute type".into(),
        }),
        other => Err(Error::Syntax {
            line,
            column,
            message: format!("unsupported attribute type `{other}`"),
        }),
    }
}

/// Drops everything from the first `%` that is not inside quotes.
fn strip_comment(line: &str) -> &str {
    let mut quote = None;
    for (i, c) in line.char_indices() {
        match (quote, c) {
            (None, '%') => return &line[..i],
            (None, '\'' | '"') => quote = Some(c),
            (Some(q), c) if c == q => quote = None,
            _ => {}
        }
    }
    line
}

/// Splits on commas that are not inside quotes.
fn split_fields(line: &str, line_no: usize) -> Result<Vec<&str>> {
    let mut fields = Vec::new();
    let mut quote = None;
    let mut start = 0;
    for (i, c) in line.char_indices() {
        match (quote, c) {
            (None, ',') => {
                fields.push(&line[start..i]);
                start = i + 1;
            }
            (None, '\'' | '"') => quote = Some(c),
            (Some(q), c) if c == q => quote = None,
            _ => {}
        }
    }
    if quote.is_some() {
        return Err(Error::Syntax {
            line: line_no,
            column: start + 1,
            message: "unterminated quote".into(),
        });
    }
    fields.push(&line[start..]);
    Ok(fields)
}

fn unquote(s: &str) -> &str {
    for q in ['\'', '"'] {
        if s.len() >= 2 && s.starts_with(q) && s.ends_with(q) {
            return &s[1..s.len() - 1];
        }
    }
    s
}

fn column_of(line: &str, c: char) -> usize {
    line.find(c).map_or(1, |p| p + 1)
}

fn quote_if_needed(name: &str) -> String {
    let plain = !name.is_empty()
        && name
            .chars()
            .all(|c| !c.is_whitespace() && !matches!(c, ',' | '{' | '}' | '%' | '\'' | '"'));
    if plain {
        name.to_string()
    } else {
        format!("'{}'", name.replace('\'', "\\'"))
    }
}

/// Renders a dataset as ARFF. Parsing the output yields an equal dataset when
/// the class is the last attribute.
pub fn write_arff(d: &Dataset) -> String {
    let schema = d.schema();
    let mut out = String::new();
    let _ = writeln!(out, "@relation {}", quote_if_needed(&schema.relation));
    out.push('\n');
    for attr in &schema.attributes {
        match &attr.kind {
            AttributeKind::Nominal(values) => {
                let dom: Vec<String> = values.iter().map(|v| quote_if_needed(v)).collect();
                let _ = writeln!(
                    out,
                    "@attribute {} {{{}}}",
                    quote_if_needed(&attr.name),
                    dom.join(",")
                );
            }
            AttributeKind::Numeric => {
                let _ = writeln!(out, "@attribute {} numeric", quote_if_needed(&attr.name));
            }
        }
    }
    out.push_str("\n@data\n");
    for inst in d.instances() {
        let row: Vec<String> = schema
            .attributes
            .iter()
            .zip(inst.values())
            .map(|(attr, v)| format_value(attr, v))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub(super) fn format_value(attr: &Attribute, v: &Value) -> String {
    match *v {
        Value::Missing => "?".to_string(),
        Value::Symbol(s) => quote_if_needed(&attr.domain()[s]),
        Value::Real(x) => format!("{x}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "\
% a comment line
@RELATION 'tiny set'

@attribute DGN {DGN1,DGN2, DGN3}
@Attribute PRE4 NUMERIC
@attribute Risk1Yr {T,F}   % trailing comment

@data
DGN2,2.88,F
DGN1, 3.4e0 ,T
% skipped
DGN3,?,F
";

    #[test]
    fn parses_header_and_rows() {
        let d = parse_arff(SMALL).unwrap();
        assert_eq!(d.schema().relation, "tiny set");
        assert_eq!(d.attributes().len(), 3);
        assert_eq!(d.class_index(), 2);
        assert_eq!(d.attributes()[0].domain(), ["DGN1", "DGN2", "DGN3"]);
        assert_eq!(d.len(), 3);
        assert_eq!(d.instances()[1].value(1), Value::Real(3.4));
        assert_eq!(d.instances()[2].value(1), Value::Missing);
        assert_eq!(d.class_counts().get("T"), Some(&1));
    }

    #[test]
    fn empty_data_section() {
        let d =
            parse_arff("@relation r\n@attribute a numeric\n@attribute c {T,F}\n@data\n").unwrap();
        assert_eq!(d.len(), 0);
        assert_eq!(d.attributes().len(), 2);
    }

    #[test]
    fn unknown_nominal_names_token() {
        let text = "@relation r\n@attribute DGN {DGN1,DGN2}\n@attribute c {T,F}\n@data\nDGN9,T\n";
        match parse_arff(text).unwrap_err() {
            Error::UnknownNominal {
                line,
                attribute,
                token,
            } => {
                assert_eq!(line, 5);
                assert_eq!(attribute, "DGN");
                assert_eq!(token, "DGN9");
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn nominal_matching_is_case_sensitive() {
        let text = "@relation r\n@attribute c {T,F}\n@data\nt\n";
        assert!(matches!(
            parse_arff(text),
            Err(Error::UnknownNominal { .. })
        ));
    }

    #[test]
    fn arity_mismatch() {
        let text = "@relation r\n@attribute a numeric\n@attribute c {T,F}\n@data\n1,2,T\n";
        assert!(matches!(
            parse_arff(text),
            Err(Error::Arity {
                line: 5,
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn non_finite_numbers_rejected() {
        for tok in ["NaN", "inf", "-Infinity", "1e400"] {
            let text = format!(
                "@relation r\n@attribute a numeric\n@attribute c {{T,F}}\n@data\n{tok},T\n"
            );
            assert!(
                matches!(parse_arff(&text), Err(Error::NonFinite { line: 5, .. })),
                "{tok}"
            );
        }
        let text = "@relation r\n@attribute a numeric\n@attribute c {T,F}\n@data\nabc,T\n";
        assert!(matches!(parse_arff(text), Err(Error::InvalidNumber { .. })));
    }

    #[test]
    fn syntax_errors_report_position() {
        let text = "@relation r\n@attribute a string\n@attribute c {T,F}\n@data\n";
        match parse_arff(text).unwrap_err() {
            Error::Syntax { line, column, .. } => {
                assert_eq!(line, 2);
                assert_eq!(column, 14);
            }
            e => panic!("unexpected {e}"),
        }
        let text = "@relation r\n@bogus\n";
        assert!(matches!(
            parse_arff(text),
            Err(Error::Syntax {
                line: 2,
                column: 1,
                ..
            })
        ));
        let text = "@relation r\n@attribute c {T,F\n@data\n";
        assert!(matches!(
            parse_arff(text),
            Err(Error::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn missing_data_section() {
        let text = "@relation r\n@attribute c {T,F}\n";
        assert!(matches!(parse_arff(text), Err(Error::Syntax { .. })));
        assert!(parse_arff_header(text).is_ok());
    }

    #[test]
    fn sparse_rows_rejected() {
        let text = "@relation r\n@attribute a numeric\n@attribute c {T,F}\n@data\n{0 1, 1 T}\n";
        assert!(matches!(
            parse_arff(text),
            Err(Error::Syntax { line: 5, .. })
        ));
    }

    #[test]
    fn writer_round_trips() {
        let d = parse_arff(SMALL).unwrap();
        let again = parse_arff(&write_arff(&d)).unwrap();
        assert_eq!(d, again);
    }
}
