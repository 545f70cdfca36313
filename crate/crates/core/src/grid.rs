//! Spreadsheet-style CSV grids: discrete activity traces, stimulus files,
//! two-factor traces and excitation matrices.
//!
//! Numbers are written with a dot decimal separator and no grouping, using
//! [`format_sig`], so output is the same under every locale.

use thiserror::Error;

use crate::engine::{ActivityTrace, EngineError, StimulusSequence};
use crate::numfmt::format_sig;
use crate::pitts::ExcitationMatrix;
use crate::two_factor::TwoFactorTrace;

#[derive(Debug, Error)]
pub enum GridError {
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("unknown column `{0}`")]
    UnknownColumn(String),
    #[error("stimulus columns {found:?} do not match the receptors {expected:?}")]
    Columns { expected: Vec<String>, found: Vec<String> },
    #[error(transparent)]
    Stimulus(#[from] EngineError),
}

fn write_rows(rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("csv output is utf-8")
}

fn bit(b: bool) -> String {
    if b { "1" } else { "0" }.to_string()
}

/// One row per time step: `t,<neuron names...>` with 0/1 cells.
pub fn trace_csv(trace: &ActivityTrace) -> String {
    select_trace_csv(trace, None).expect("all columns exist")
}

/// As [`trace_csv`], restricted to the named columns in the given order.
pub fn select_trace_csv(trace: &ActivityTrace, columns: Option<&[String]>) -> Result<String, GridError> {
    let indices: Vec<usize> = match columns {
        None => (0..trace.names.len()).collect(),
        Some(cols) => cols
            .iter()
            .map(|c| trace.names.iter().position(|n| n == c).ok_or_else(|| GridError::UnknownColumn(c.clone())))
            .collect::<Result<_, _>>()?,
    };
    let header = std::iter::once("t".to_string()).chain(indices.iter().map(|&i| trace.names[i].clone())).collect();
    let rows = trace.times().zip(&trace.states).map(|(t, a)| {
        std::iter::once(t.to_string()).chain(indices.iter().map(|&i| bit(a.bits()[i]))).collect()
    });
    Ok(write_rows(std::iter::once(header).chain(rows)))
}

/// A stimulus as a grid over the receptor columns.
pub fn stimulus_csv(stim: &StimulusSequence, receptors: &[String]) -> String {
    let header = std::iter::once("t".to_string()).chain(receptors.iter().cloned()).collect();
    let rows = stim.frames().iter().enumerate().map(|(i, frame)| {
        std::iter::once((stim.start_time() + i as i64).to_string()).chain(frame.iter().map(|b| bit(*b))).collect()
    });
    write_rows(std::iter::once(header).chain(rows))
}

/// Reads a stimulus grid. Its columns after `t` must be exactly the
/// receptors, in any order; missing times are zero frames.
pub fn parse_stimulus_csv(text: &str, receptors: &[String]) -> Result<StimulusSequence, GridError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let parse_err = |line: u64, message: String| GridError::Parse { line, message };
    let header: Vec<String> = reader.headers().map_err(|e| parse_err(1, e.to_string()))?.iter().map(str::to_string).collect();
    if header.first().map(String::as_str) != Some("t") {
        return Err(parse_err(1, "first column must be `t`".into()));
    }
    let columns = &header[1..];
    let mut sorted_cols = columns.to_vec();
    sorted_cols.sort();
    let mut sorted_receptors = receptors.to_vec();
    sorted_receptors.sort();
    if sorted_cols != sorted_receptors || columns.len() != receptors.len() {
        return Err(GridError::Columns { expected: receptors.to_vec(), found: columns.to_vec() });
    }
    let slot: Vec<usize> = columns.iter().map(|c| receptors.iter().position(|r| r == c).expect("checked")).collect();

    let mut events = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| parse_err(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        let t: i64 = record[0].parse().map_err(|_| parse_err(line, format!("bad time `{}`", &record[0])))?;
        if events.iter().any(|(s, _)| *s == t) {
            return Err(parse_err(line, format!("time {t} appears twice")));
        }
        let mut frame = vec![false; receptors.len()];
        for (k, cell) in record.iter().skip(1).enumerate() {
            frame[slot[k]] = match cell {
                "0" => false,
                "1" => true,
                other => return Err(parse_err(line, format!("cell `{other}` is not 0 or 1"))),
            };
        }
        events.push((t, frame));
    }
    if events.is_empty() {
        return Err(parse_err(1, "no stimulus rows".into()));
    }
    Ok(StimulusSequence::from_events(receptors.len(), &events)?)
}

/// `t,e,j,output`.
pub fn two_factor_csv(trace: &TwoFactorTrace) -> String {
    two_factor_net_csv(std::slice::from_ref(trace))
}

/// Several units side by side: `t,e_1,j_1,output_1,e_2,...`. A single unit
/// gets unsuffixed columns.
pub fn two_factor_net_csv(traces: &[TwoFactorTrace]) -> String {
    let suffix = |k: usize| if traces.len() == 1 { String::new() } else { format!("_{}", k + 1) };
    let header = std::iter::once("t".to_string())
        .chain((0..traces.len()).flat_map(|k| ["e", "j", "output"].map(|c| format!("{c}{}", suffix(k)))))
        .collect();
    let steps = traces.first().map_or(0, |t| t.samples.len());
    let rows = (0..steps).map(|i| {
        std::iter::once(format_sig(traces[0].samples[i].t))
            .chain(traces.iter().flat_map(|tr| {
                let s = &tr.samples[i];
                [format_sig(s.excitation), format_sig(s.inhibition), bit(s.fires)]
            }))
            .collect()
    });
    write_rows(std::iter::once(header).chain(rows))
}

/// The excitation matrix with one row per synapse and one column per
/// interval (`synapse,1,2,...`), or transposed with one row per interval
/// (`interval,s1,s2,...`).
pub fn excitation_csv(e: &ExcitationMatrix, transpose: bool) -> String {
    let n = e.rows();
    let p = e.column_count();
    if transpose {
        let header = std::iter::once("interval".to_string()).chain((1..=n).map(|r| format!("s{r}"))).collect();
        let rows = (1..=p).map(|col| {
            std::iter::once(col.to_string()).chain(e.column(col).iter().map(|v| format_sig(*v))).collect()
        });
        write_rows(std::iter::once(header).chain(rows))
    } else {
        let header = std::iter::once("synapse".to_string()).chain((1..=p).map(|c| c.to_string())).collect();
        let rows = (1..=n).map(|row| {
            std::iter::once(row.to_string()).chain((1..=p).map(|col| format_sig(e.get(row, col)))).collect()
        });
        write_rows(std::iter::once(header).chain(rows))
    }
}
