//! File formats: instance JSON, codec and decomposition sidecars, traces.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::ascent::{AscentTrace, StepRecord, StepSink};
use crate::constructions::BooleanCodec;
use crate::error::{Error, Result};
use crate::model::{
    DomainSpec, InstanceMeta, IntRange, PathDecomposition, ValuedConstraint, VcspInstance,
};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct MetaFile {
    family: String,
    n: usize,
}

#[derive(Serialize, Deserialize)]
struct InstanceFile {
    version: u32,
    meta: MetaFile,
    variables: Vec<DomainSpec>,
    constraints: Vec<ValuedConstraint>,
}

pub fn instance_to_json(instance: &VcspInstance) -> Result<String> {
    let file = InstanceFile {
        version: FORMAT_VERSION,
        meta: MetaFile {
            family: instance.meta.family.clone(),
            n: instance.meta.n,
        },
        variables: instance.domains.clone(),
        constraints: instance.constraints.clone(),
    };
    Ok(serde_json::to_string(&file)?)
}

/// Parses and validates an instance; `range` bounds its values.
pub fn instance_from_json(s: &str, range: IntRange) -> Result<VcspInstance> {
    let file: InstanceFile = serde_json::from_str(s)?;
    if file.version != FORMAT_VERSION {
        return Err(Error::Format(format!(
            "unsupported instance version {} (expected {FORMAT_VERSION})",
            file.version
        )));
    }
    let instance = VcspInstance {
        meta: InstanceMeta {
            family: file.meta.family,
            n: file.meta.n,
            int_range: range,
        },
        domains: file.variables,
        constraints: file.constraints,
    };
    instance.ensure_valid()?;
    Ok(instance)
}

#[derive(Serialize)]
struct CollectionFile {
    bits: usize,
    codes: BTreeMap<String, String>,
}

#[derive(Serialize)]
struct CodecFile {
    collections: Vec<CollectionFile>,
}

pub fn codec_to_json(codec: &BooleanCodec) -> Result<String> {
    let file = CodecFile {
        collections: codec
            .collections
            .iter()
            .map(|c| CollectionFile {
                bits: c.bits,
                codes: c
                    .codes
                    .iter()
                    .map(|(&code, &s)| (c.code_string(code), c.labels[s].clone()))
                    .collect(),
            })
            .collect(),
    };
    Ok(serde_json::to_string(&file)?)
}

pub fn decomposition_to_json(d: &PathDecomposition) -> Result<String> {
    Ok(serde_json::to_string(d)?)
}

pub fn decomposition_from_json(s: &str) -> Result<PathDecomposition> {
    Ok(serde_json::from_str(s)?)
}

pub fn trace_to_json(trace: &AscentTrace) -> Result<String> {
    Ok(serde_json::to_string(trace)?)
}

pub fn trace_from_json(s: &str) -> Result<AscentTrace> {
    Ok(serde_json::from_str(s)?)
}

pub const TRACE_CSV_HEADER: [&str; 5] = ["step", "var", "from", "to", "fitness"];

/// Streams steps as CSV rows; `step` counts from 1, so row `t` carries the
/// fitness after `t` steps.
pub struct CsvTraceWriter<'a, W: Write> {
    out: csv::Writer<W>,
    domains: &'a [DomainSpec],
    written: u64,
    error: Option<csv::Error>,
}

impl<'a, W: Write> CsvTraceWriter<'a, W> {
    pub fn new(out: W, instance: &'a VcspInstance) -> Result<Self> {
        let mut out = csv::Writer::from_writer(out);
        out.write_record(TRACE_CSV_HEADER).map_err(csv_error)?;
        Ok(CsvTraceWriter {
            out,
            domains: &instance.domains,
            written: 0,
            error: None,
        })
    }

    /// Flushes and reports the first write error, if any.
    pub fn finish(mut self) -> Result<u64> {
        if let Some(e) = self.error.take() {
            return Err(csv_error(e));
        }
        self.out.flush().map_err(|e| Error::Format(e.to_string()))?;
        Ok(self.written)
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Format(format!("trace CSV: {e}"))
}

impl<W: Write> StepSink for CsvTraceWriter<'_, W> {
    fn record(&mut self, s: StepRecord, _flagged: bool) {
        if self.error.is_some() {
            return;
        }
        self.written += 1;
        let d = &self.domains[s.var];
        let row = [
            self.written.to_string(),
            s.var.to_string(),
            d.label(s.from).to_string(),
            d.label(s.to).to_string(),
            s.fitness_after.to_string(),
        ];
        if let Err(e) = self.out.write_record(&row) {
            self.error = Some(e);
        }
    }
}

/// A whole trace as CSV.
pub fn trace_to_csv(trace: &AscentTrace, instance: &VcspInstance) -> Result<String> {
    let mut buf = Vec::new();
    let mut w = CsvTraceWriter::new(&mut buf, instance)?;
    for s in &trace.steps {
        w.record(*s, false);
    }
    w.finish()?;
    String::from_utf8(buf).map_err(|e| Error::Format(e.to_string()))
}
