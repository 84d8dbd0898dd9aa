use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use crate::CliError;

/// Seventeen significant digits, enough to read back the same double.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV sink: header row, LF line endings.
pub struct Table {
    inner: csv::Writer<Box<dyn Write>>,
    path: Option<std::path::PathBuf>,
}

impl Table {
    pub fn create(out: Option<&Path>, header: &[&str]) -> Result<Table, CliError> {
        let sink: Box<dyn Write> = match out {
            Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| CliError::io(p, e))?)),
            None => Box::new(io::stdout().lock()),
        };
        let inner = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(sink);
        let mut t = Table { inner, path: out.map(Path::to_path_buf) };
        t.row(header.iter().map(|s| s.to_string()))?;
        Ok(t)
    }

    pub fn row(&mut self, fields: impl IntoIterator<Item = String>) -> Result<(), CliError> {
        self.inner.write_record(fields).map_err(|e| self.err(e.into()))
    }

    pub fn numbers(&mut self, xs: &[f64]) -> Result<(), CliError> {
        self.row(xs.iter().map(|x| num(*x)))
    }

    pub fn finish(mut self) -> Result<(), CliError> {
        self.inner.flush().map_err(|e| self.err(e))
    }

    fn err(&self, e: io::Error) -> CliError {
        CliError::io(self.path.clone().unwrap_or_else(|| "<stdout>".into()), e)
    }
}
