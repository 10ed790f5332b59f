//! Output assembly. Every format starts from the same header data (command,
//! parameters, seed, output, library version) so a run can always be
//! reproduced from its own output.

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Tsv,
    Pretty,
}

impl OutputFormat {
    pub fn name(&self) -> &'static str {
        match self {
            OutputFormat::Json => "json",
            OutputFormat::Tsv => "tsv",
            OutputFormat::Pretty => "pretty",
        }
    }
}

/// One command's output in all three shapes: a JSON value, a table, and
/// human-readable lines.
#[derive(Debug)]
pub struct Rendered {
    pub result: Value,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub pretty: Vec<String>,
    /// Set by checks that ran but did not pass; turns into exit code 1.
    pub failed: bool,
}

impl Rendered {
    pub fn new(result: Value) -> Rendered {
        Rendered { result, columns: Vec::new(), rows: Vec::new(), pretty: Vec::new(), failed: false }
    }

    /// A two-column key/value table whose pretty form is `key: value` lines.
    pub fn keyed(result: Value, pairs: Vec<(String, String)>) -> Rendered {
        let mut r = Rendered::new(result);
        r.columns = vec!["key".into(), "value".into()];
        for (k, v) in pairs {
            r.pretty.push(format!("{k}: {v}"));
            r.rows.push(vec![k, v]);
        }
        r
    }
}

/// Replaces `=` in table and pretty bodies. Header lines are the only place
/// the config parser reads keys from, so body lines must never look like
/// assignments.
fn sanitize(s: &str) -> String {
    s.replace('=', ":")
}

pub fn emit(
    command: &str,
    params: &[(&'static str, String)],
    seed: u64,
    cap: Option<&str>,
    format: OutputFormat,
    rendered: &Rendered,
) -> String {
    match format {
        OutputFormat::Json => {
            let mut parameters = Map::new();
            for (k, v) in params {
                parameters.insert((*k).to_string(), Value::String(v.clone()));
            }
            let mut config = Map::new();
            config.insert("command".into(), Value::String(command.into()));
            config.insert("output".into(), Value::String(format.name().into()));
            config.insert("parameters".into(), Value::Object(parameters));
            config.insert("seed".into(), Value::from(seed));
            if let Some(cap) = cap {
                config.insert("cap".into(), Value::String(cap.into()));
            }
            let mut top = Map::new();
            top.insert("config".into(), Value::Object(config));
            top.insert("result".into(), rendered.result.clone());
            top.insert("version".into(), Value::String(bottomlayer::VERSION.into()));
            let mut text = serde_json::to_string(&Value::Object(top)).expect("serializable value");
            text.push('\n');
            text
        }
        OutputFormat::Tsv | OutputFormat::Pretty => {
            let mut lines = Vec::new();
            lines.push(format!("# command={command}"));
            for (k, v) in params {
                lines.push(format!("# {k}={v}"));
            }
            lines.push(format!("# seed={seed}"));
            if let Some(cap) = cap {
                lines.push(format!("# cap={cap}"));
            }
            lines.push(format!("# output={}", format.name()));
            lines.push(format!("# version={}", bottomlayer::VERSION));
            if format == OutputFormat::Tsv {
                if !rendered.columns.is_empty() {
                    lines.push(sanitize(&rendered.columns.join("\t")));
                }
                for row in &rendered.rows {
                    lines.push(sanitize(&row.join("\t")));
                }
            } else {
                for line in &rendered.pretty {
                    lines.push(sanitize(line));
                }
            }
            let mut text = lines.join("\n");
            text.push('\n');
            text
        }
    }
}
