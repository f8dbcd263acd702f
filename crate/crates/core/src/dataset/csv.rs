use super::arff::{format_value, parse_row};
use super::{Dataset, Schema};
use crate::error::{Error, Result};

/// Parses comma-separated records against an externally supplied schema. The
/// header row must list the schema's attribute names in order.
pub fn parse_csv(text: &str, schema: &Schema) -> Result<Dataset> {
    schema.validate()?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    let expected: Vec<&str> = schema.attributes.iter().map(|a| a.name.as_str()).collect();
    if header != expected {
        return Err(Error::HeaderMismatch {
            expected: expected.join(","),
            found: header.join(","),
        });
    }

    let mut instances = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let fields: Vec<&str> = record.iter().collect();
        instances.push(parse_row(schema, &fields, line)?);
    }
    Ok(Dataset::from_parts(schema.clone(), instances))
}

pub fn write_csv(d: &Dataset) -> Result<String> {
    let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
    writer.write_record(d.attributes().iter().map(|a| a.name.as_str()))?;
    for inst in d.instances() {
        writer.write_record(
            d.attributes()
                .iter()
                .zip(inst.values())
                .map(|(attr, v)| format_value(attr, v)),
        )?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::Schema(format!("csv writer: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{parse_arff, Attribute, Value};

    fn schema() -> Schema {
        Schema::new(
            "r",
            vec![
                Attribute::nominal("DGN", ["DGN1", "DGN2"]),
                Attribute::numeric("AGE"),
                Attribute::nominal("Risk1Yr", ["T", "F"]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn parses_rows() {
        let d = parse_csv("DGN,AGE,Risk1Yr\nDGN1,60,T\nDGN2, ?,F\n", &schema()).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.instances()[0].value(1), Value::Real(60.0));
        assert!(d.instances()[1].value(1).is_missing());
    }

    #[test]
    fn header_order_matters() {
        let err = parse_csv("AGE,DGN,Risk1Yr\n60,DGN1,T\n", &schema()).unwrap_err();
        assert!(matches!(err, Error::HeaderMismatch { .. }));
    }

    #[test]
    fn bad_number_reports_line() {
        let err = parse_csv("DGN,AGE,Risk1Yr\nDGN1,60,T\nDGN1,abc,F\n", &schema()).unwrap_err();
        match err {
            Error::InvalidNumber { line, token, .. } => {
                assert_eq!(line, 3);
                assert_eq!(token, "abc");
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn agrees_with_arff() {
        let arff = "@relation r\n@attribute DGN {DGN1,DGN2}\n@attribute AGE numeric\n\
                    @attribute Risk1Yr {T,F}\n@data\nDGN1,60,T\nDGN2,71.5,F\n";
        let a = parse_arff(arff).unwrap();
        let c = parse_csv(&write_csv(&a).unwrap(), &schema()).unwrap();
        assert_eq!(a, c);
    }
}
