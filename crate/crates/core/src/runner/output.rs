use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::execute::{ResultRecord, RunReport};
use super::spec::{ExperimentSpec, Output};
use crate::diffusion::Trace;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

pub const CSV_HEADER: [&str; 11] = [
    "run_index",
    "graph",
    "diffusion",
    "seed_strategy",
    "method",
    "budget",
    "epochs",
    "metric",
    "mean",
    "std",
    "runtime_seconds",
];

pub const CSV_FILE: &str = "results.csv";
pub const SUMMARY_FILE: &str = "summary.txt";
pub const TRACE_DIR: &str = "traces";

/// Six significant digits in the style of C's `%g`.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..6).contains(&exp) {
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::config(format!("csv: {other:?}")),
    }
}

/// Writes records sorted by run index. Failed runs have NaN mean and std.
pub fn write_csv_to<W: Write>(records: &[ResultRecord], out: W) -> Result<()> {
    let mut sorted: Vec<&ResultRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.run_index);
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER).map_err(csv_error)?;
    for r in sorted {
        writer
            .write_record([
                r.run_index.to_string(),
                r.graph.clone(),
                r.diffusion.clone(),
                r.seed_strategy.clone(),
                r.method.clone(),
                r.budget.to_string(),
                r.epochs.to_string(),
                r.metric.clone(),
                format_real(r.mean),
                format_real(r.std),
                format_real(r.runtime_seconds),
            ])
            .map_err(csv_error)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn write_csv(records: &[ResultRecord], path: &Path) -> Result<()> {
    write_csv_to(records, fs::File::create(path)?)
}

/// Parses a results file back into records. Rows with a NaN mean are
/// returned as failed with an unknown reason.
pub fn read_csv_from<R: Read>(input: R) -> Result<Vec<ResultRecord>> {
    let mut reader = csv::Reader::from_reader(input);
    let header = reader.headers().map_err(csv_error)?;
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::parse(1, "unexpected results header"));
    }
    let mut records = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let line = i + 2;
        let row = row.map_err(csv_error)?;
        let int = |j: usize| -> Result<usize> {
            row[j]
                .parse()
                .map_err(|_| Error::parse(line, format!("bad integer in `{}`", CSV_HEADER[j])))
        };
        let real = |j: usize| -> Result<f64> {
            row[j]
                .parse()
                .map_err(|_| Error::parse(line, format!("bad number in `{}`", CSV_HEADER[j])))
        };
        let mean = real(8)?;
        records.push(ResultRecord {
            run_index: int(0)?,
            graph: row[1].to_string(),
            diffusion: row[2].to_string(),
            seed_strategy: row[3].to_string(),
            method: row[4].to_string(),
            budget: int(5)?,
            epochs: int(6)?,
            metric: row[7].to_string(),
            mean,
            std: real(9)?,
            runtime_seconds: real(10)?,
            error: mean.is_nan().then(|| "failed".to_string()),
        });
    }
    Ok(records)
}

pub fn read_csv(path: &Path) -> Result<Vec<ResultRecord>> {
    read_csv_from(fs::File::open(path)?)
}

#[derive(Serialize)]
struct TraceJson<'a> {
    nodes: usize,
    edges: Vec<[NodeId; 2]>,
    seeds: &'a [NodeId],
    steps: &'a [Vec<u8>],
}

/// Compact JSON with keys `nodes`, `edges`, `seeds`, `steps` in that order.
pub fn trace_json(trace: &Trace, graph: &Graph) -> String {
    let doc = TraceJson {
        nodes: graph.node_count(),
        edges: graph.edges().map(|(u, v)| [u, v]).collect(),
        seeds: &trace.seeds,
        steps: &trace.steps,
    };
    let mut text = serde_json::to_string(&doc).expect("plain data serializes");
    text.push('\n');
    text
}

pub fn write_trace_json(trace: &Trace, graph: &Graph, path: &Path) -> Result<()> {
    fs::write(path, trace_json(trace, graph))?;
    Ok(())
}

/// Plain-text table of the records, one line per run.
pub fn summary(records: &[ResultRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let value = match &r.error {
            Some(reason) => format!("FAILED: {reason}"),
            None => format!(
                "{} = {} ± {} ({}s)",
                r.metric,
                format_real(r.mean),
                format_real(r.std),
                format_real(r.runtime_seconds)
            ),
        };
        out.push_str(&format!(
            "#{} {} | {} | {} | {} k={} | {}\n",
            r.run_index, r.graph, r.diffusion, r.seed_strategy, r.method, r.budget, value
        ));
    }
    out
}

/// Writes whatever `spec.outputs` asks for under `dir`; returns the paths.
pub fn write_outputs(spec: &ExperimentSpec, report: &RunReport, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for output in &spec.outputs {
        match output {
            Output::Csv => {
                let path = dir.join(CSV_FILE);
                write_csv(&report.records, &path)?;
                written.push(path);
            }
            Output::Summary => {
                let path = dir.join(SUMMARY_FILE);
                fs::write(&path, summary(&report.records))?;
                written.push(path);
            }
            Output::TraceJson => {
                let traces = dir.join(TRACE_DIR);
                fs::create_dir_all(&traces)?;
                for t in &report.traces {
                    let path = traces.join(format!("run_{:04}.json", t.run_index));
                    write_trace_json(&t.trace, &t.graph, &path)?;
                    written.push(path);
                }
            }
        }
    }
    Ok(written)
}
