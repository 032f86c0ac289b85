use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use crate::args::OutputArgs;

pub use ngbounds::numfmt::format_sig as fmt;

pub type Sink = Box<dyn Write>;

pub fn open(args: &OutputArgs) -> Result<Sink> {
    Ok(match &args.out {
        Some(path) => Box::new(BufWriter::new(create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn create(path: &Path) -> Result<File> {
    File::create(path).with_context(|| format!("cannot write {}", path.display()))
}

/// Pretty JSON followed by a newline.
pub fn json<T: Serialize>(w: &mut Sink, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w)?;
    Ok(())
}

/// One compact JSON document per line.
pub fn json_line<T: Serialize>(w: &mut Sink, value: &T) -> Result<()> {
    serde_json::to_writer(&mut *w, value)?;
    writeln!(w)?;
    Ok(())
}

pub fn csv_writer(w: &mut Sink) -> csv::Writer<&mut Sink> {
    csv::Writer::from_writer(w)
}

pub fn join_sig(xs: &[f64]) -> String {
    xs.iter().map(|&x| fmt(x)).collect::<Vec<_>>().join(" ")
}

pub fn opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, fmt)
}
