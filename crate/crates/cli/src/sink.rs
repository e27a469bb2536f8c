use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use prnopt_core::optimizer::{TraceRecord, TraceSink};

/// Streams trace records as JSON Lines, flushing after every record so a
/// killed run still leaves a complete, parseable prefix on disk.
pub struct JsonlSink {
    w: BufWriter<File>,
    err: Option<io::Error>,
}

impl JsonlSink {
    pub fn create(path: &Path) -> io::Result<Self> {
        Ok(JsonlSink {
            w: BufWriter::new(File::create(path)?),
            err: None,
        })
    }

    /// Surfaces the first deferred write error; the sink trait itself cannot.
    pub fn finish(mut self) -> io::Result<()> {
        match self.err.take() {
            Some(e) => Err(e),
            None => self.w.flush(),
        }
    }
}

impl TraceSink for JsonlSink {
    fn record(&mut self, rec: &TraceRecord) {
        if self.err.is_some() {
            return;
        }
        let result = serde_json::to_writer(&mut self.w, rec)
            .map_err(io::Error::from)
            .and_then(|()| self.w.write_all(b"\n"))
            .and_then(|()| self.w.flush());
        if let Err(e) = result {
            self.err = Some(e);
        }
    }
}
