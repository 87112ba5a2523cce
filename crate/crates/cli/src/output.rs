//! Rendering helpers shared by the subcommands.

use std::io::{self, Write};
use std::str::FromStr;

use clap::ValueEnum;
use num_bigint::BigUint;
use serde_json::{json, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
    /// OEIS b-file: one "n a(n)" pair per line.
    Bfile,
}

pub fn big_number(v: &BigUint) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("decimal digits form a JSON number"))
}

pub fn json_line(out: &mut impl Write, value: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

pub fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().from_writer(out)
}

/// a(first), a(first+1), ... in the selected format.
pub fn sequence(out: &mut impl Write, format: Format, terms: &[(usize, BigUint)]) -> io::Result<()> {
    match format {
        Format::Plain => {
            let text: Vec<String> = terms.iter().map(|(_, a)| a.to_string()).collect();
            writeln!(out, "{}", text.join(" "))
        }
        Format::Bfile => terms.iter().try_for_each(|(n, a)| writeln!(out, "{n} {a}")),
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["n", "count"])?;
            for (n, a) in terms {
                w.write_record([n.to_string(), a.to_string()])?;
            }
            w.flush()
        }
        Format::Json => {
            let rows: Vec<Value> = terms.iter().map(|(n, a)| json!({ "n": n, "count": big_number(a) })).collect();
            json_line(out, &Value::Array(rows))
        }
    }
}
