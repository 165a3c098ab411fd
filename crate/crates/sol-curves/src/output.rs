//! CSV emission with round-trippable floats.

use std::io::Write;

use crate::error::CliError;

/// Scientific notation with 17 significant digits; parses back to the same f64.
pub fn format_f64(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{x:.16e}")
    }
}

pub struct CsvTable<W: Write> {
    writer: csv::Writer<W>,
    width: usize,
}

impl<W: Write> CsvTable<W> {
    pub fn new(out: W, header: &[&str]) -> Result<Self, CliError> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(header)?;
        Ok(CsvTable { writer, width: header.len() })
    }

    pub fn row(&mut self, values: &[f64]) -> Result<(), CliError> {
        debug_assert_eq!(values.len(), self.width);
        self.writer.write_record(values.iter().map(|&v| format_f64(v)))?;
        Ok(())
    }

    pub fn finish(mut self) -> Result<(), CliError> {
        self.writer.flush()?;
        Ok(())
    }
}
