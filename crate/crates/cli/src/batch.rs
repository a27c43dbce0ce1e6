//! Batch runs: a worker pool over curves and a single writer appending one
//! JSON line per curve, so an interrupted run can be resumed.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{BufReader, Read, Seek, SeekFrom, Write};
use std::path::Path;
use std::sync::mpsc;
use std::time::Instant;

use rayon::prelude::*;

use crate::engine::Engine;
use crate::error::{CliError, CliResult};
use crate::input::CurveRecord;
use crate::record::ResultRecord;
use crate::stats::{compute, Stats};

#[derive(Clone, Debug)]
pub struct BatchOptions {
    pub jobs: usize,
    pub resume: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BatchSummary {
    pub computed: usize,
    pub skipped: usize,
    pub stats: Stats,
}

pub fn run_one(engine: &Engine, curve: &CurveRecord) -> ResultRecord {
    let start = Instant::now();
    let outcome = curve.curve().and_then(|c| engine.torsion(&c)).map_err(|e| e.to_string());
    let ms = start.elapsed().as_millis() as u64;
    ResultRecord::new(curve, outcome, engine.pack_checksum(curve.genus), ms)
}

/// Records in a results file. A torn last line (no trailing newline) is
/// ignored; any other unreadable line is an error.
pub fn read_records(path: &Path) -> CliResult<Vec<ResultRecord>> {
    let file = File::open(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut text = String::new();
    BufReader::new(file).read_to_string(&mut text)?;
    let complete = text.rfind('\n').map_or("", |i| &text[..i]);
    complete
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            ResultRecord::from_line(l).map_err(|e| CliError::Input(format!("{}:{}: {e}", path.display(), i + 1)))
        })
        .collect()
}

/// Cut a torn last line so appends start on a fresh line.
fn drop_torn_tail(file: &mut File) -> CliResult<()> {
    let mut text = Vec::new();
    file.seek(SeekFrom::Start(0))?;
    file.read_to_end(&mut text)?;
    let keep = text.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
    if keep != text.len() {
        file.set_len(keep as u64)?;
    }
    file.seek(SeekFrom::End(0))?;
    Ok(())
}

pub fn run_batch(engine: &Engine, curves: &[CurveRecord], output: &Path, opts: &BatchOptions) -> CliResult<BatchSummary> {
    let done: HashSet<String> = if opts.resume && output.exists() {
        read_records(output)?.into_iter().map(|r| r.id).collect()
    } else {
        HashSet::new()
    };
    let mut file = OpenOptions::new()
        .create(true)
        .read(true)
        .write(true)
        .truncate(!opts.resume)
        .open(output)
        .map_err(|e| CliError::Input(format!("{}: {e}", output.display())))?;
    drop_torn_tail(&mut file)?;

    let todo: Vec<&CurveRecord> = curves.iter().filter(|c| !done.contains(&c.id)).collect();
    let skipped = curves.len() - todo.len();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| CliError::Math(e.to_string()))?;

    let (tx, rx) = mpsc::channel::<ResultRecord>();
    let written = std::thread::scope(|s| {
        let writer = s.spawn(move || -> CliResult<usize> {
            let mut n = 0;
            for rec in rx {
                writeln!(file, "{}", rec.to_line())?;
                file.flush()?;
                n += 1;
            }
            file.sync_all()?;
            Ok(n)
        });
        pool.install(|| {
            todo.par_iter().for_each_with(tx, |tx, c| {
                let _ = tx.send(run_one(engine, c));
            })
        });
        writer.join().expect("writer thread")
    })?;

    let wanted: HashSet<&str> = curves.iter().map(|c| c.id.as_str()).collect();
    let records: Vec<ResultRecord> = read_records(output)?.into_iter().filter(|r| wanted.contains(r.id.as_str())).collect();
    Ok(BatchSummary { computed: written, skipped, stats: compute(&records) })
}

/// Records from several result files, e.g. shards of one input.
pub fn read_all(paths: &[impl AsRef<Path>]) -> CliResult<Vec<ResultRecord>> {
    let mut out = Vec::new();
    for p in paths {
        out.extend(read_records(p.as_ref())?);
    }
    Ok(out)
}

