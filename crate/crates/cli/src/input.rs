use std::fs::File;
use std::io::{self, BufRead, BufReader};

use anyhow::{anyhow, Context, Result};
use ngbounds::Graph;

use crate::args::GraphSource;

const HEADER: &str = ">>graph6<<";

/// Streams the graphs of `source` in input order. Blank lines are skipped;
/// the first malformed line ends the stream with an error naming it.
pub fn graphs(source: &GraphSource) -> Result<Box<dyn Iterator<Item = Result<Graph>>>> {
    if let Some(text) = &source.graph6 {
        let graph =
            Graph::from_graph6(strip(text)).map_err(|e| anyhow!("invalid graph6 {text:?}: {e}"))?;
        return Ok(Box::new(std::iter::once(Ok(graph))));
    }
    let reader: Box<dyn BufRead> = match &source.input {
        Some(path) => Box::new(BufReader::new(
            File::open(path).with_context(|| format!("cannot read {}", path.display()))?,
        )),
        None => Box::new(BufReader::new(io::stdin())),
    };
    let name = source
        .input
        .as_ref()
        .map_or_else(|| "<stdin>".to_string(), |p| p.display().to_string());
    Ok(Box::new(lines(reader, name)))
}

fn strip(line: &str) -> &str {
    let line = line.trim_end_matches(['\r', '\n', ' ', '\t']);
    line.strip_prefix(HEADER).unwrap_or(line)
}

fn lines(reader: impl BufRead + 'static, name: String) -> impl Iterator<Item = Result<Graph>> {
    let mut failed = false;
    reader.lines().enumerate().filter_map(move |(i, line)| {
        if failed {
            return None;
        }
        let line_no = i + 1;
        let parsed = line
            .with_context(|| format!("{name}: cannot read line {line_no}"))
            .and_then(|text| {
                let text = strip(&text);
                if text.is_empty() {
                    return Ok(None);
                }
                Graph::from_graph6(text)
                    .map(Some)
                    .map_err(|e| anyhow!("{name}: line {line_no}: invalid graph6: {e}"))
            });
        match parsed {
            Ok(None) => None,
            Ok(Some(graph)) => Some(Ok(graph)),
            Err(e) => {
                failed = true;
                Some(Err(e))
            }
        }
    })
}
