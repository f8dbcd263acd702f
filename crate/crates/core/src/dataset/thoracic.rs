use super::{Attribute, Schema};

const BINARY: [&str; 2] = ["T", "F"];

/// Schema of the UCI thoracic-surgery file, in the file's declaration order.
/// Used as the default schema when reading the data from CSV.
pub fn thoracic_schema() -> Schema {
    let attributes = vec![
        Attribute::nominal(
            "DGN",
            ["DGN3", "DGN2", "DGN4", "DGN6", "DGN5", "DGN8", "DGN1"],
        ),
        Attribute::numeric("PRE4"),
        Attribute::numeric("PRE5"),
        Attribute::nominal("PRE6", ["PRZ2", "PRZ1", "PRZ0"]),
        Attribute::nominal("PRE7", BINARY),
        Attribute::nominal("PRE8", BINARY),
        Attribute::nominal("PRE9", BINARY),
        Attribute::nominal("PRE10", BINARY),
        Attribute::nominal("PRE11", BINARY),
        Attribute::nominal("PRE14", ["OC11", "OC14", "OC12", "OC13"]),
        Attribute::nominal("PRE17", BINARY),
        Attribute::nominal("PRE19", BINARY),
        Attribute::nominal("PRE25", BINARY),
        Attribute::nominal("PRE30", BINARY),
        Attribute::nominal("PRE32", BINARY),
        Attribute::numeric("AGE"),
        Attribute::nominal("Risk1Yr", BINARY),
    ];
    Schema::new("Thoracic_Surgery_Data", attributes).expect("static schema is valid")
}
