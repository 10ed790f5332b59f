//! Config files and flag merging.
//!
//! A config file fully describes a run: a `command=` line, one line per
//! parameter with the same keys as the command's flags, and optional `seed=`
//! and `output=` lines. Output headers use exactly this format (prefixed
//! with `# `), so any emitted header can be fed back as a config file. JSON
//! outputs are also accepted: their embedded `config` object is read
//! directly. Explicit flags always win over config values.

/// Flags that take a value and may appear before the subcommand.
const GLOBAL_VALUE_FLAGS: [&str; 4] = ["output", "seed", "cap", "config"];

#[derive(Debug, Default)]
pub struct FileConfig {
    pub command: Option<String>,
    pub seed: Option<String>,
    pub output: Option<String>,
    pub cap: Option<String>,
    pub params: Vec<(String, String)>,
}

/// Parses a config file. JSON documents contribute their `config` object
/// (or the whole object); otherwise every `key=value` line counts, with an
/// optional leading `# `, and other lines are ignored.
pub fn parse_config(text: &str) -> FileConfig {
    let mut fc = FileConfig::default();
    if let Ok(value) = serde_json::from_str::<serde_json::Value>(text.trim()) {
        let obj = match value.get("config") {
            Some(inner) => inner.as_object(),
            None => value.as_object(),
        };
        if let Some(obj) = obj {
            let as_text = |v: &serde_json::Value| match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            fc.command = obj.get("command").map(&as_text);
            fc.seed = obj.get("seed").map(&as_text);
            fc.output = obj.get("output").map(&as_text);
            fc.cap = obj.get("cap").map(&as_text);
            if let Some(params) = obj.get("parameters").and_then(|p| p.as_object()) {
                for (k, v) in params {
                    fc.params.push((k.clone(), as_text(v)));
                }
            }
            return fc;
        }
    }
    for line in text.lines() {
        let line = line.trim();
        let line = match line.strip_prefix('#') {
            Some(rest) => rest.trim_start(),
            None => line,
        };
        let Some((key, value)) = line.split_once('=') else { continue };
        let key = key.trim();
        let value = value.trim();
        match key {
            "command" => fc.command = Some(value.into()),
            "seed" => fc.seed = Some(value.into()),
            "output" => fc.output = Some(value.into()),
            "cap" => fc.cap = Some(value.into()),
            // `version` is emitted in headers; `config` may not nest.
            "version" | "config" | "" => {}
            _ => fc.params.push((key.into(), value.into())),
        }
    }
    fc
}

/// All `--config` values in raw argument order.
fn config_paths(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < args.len() {
        if args[i] == "--config" {
            if i + 1 < args.len() {
                out.push(args[i + 1].clone());
                i += 2;
                continue;
            }
        } else if let Some(rest) = args[i].strip_prefix("--config=") {
            out.push(rest.to_string());
        }
        i += 1;
    }
    out
}

struct SplitArgv {
    /// Tokens before the subcommand: global flags and their values.
    pre: Vec<String>,
    command: Option<String>,
    /// Tokens after the subcommand token.
    tail: Vec<String>,
}

fn split_argv(args: &[String]) -> SplitArgv {
    let mut pre = Vec::new();
    let mut command = None;
    let mut tail = Vec::new();
    let mut i = 0;
    while i < args.len() {
        let a = &args[i];
        if command.is_some() {
            tail.push(a.clone());
        } else if a.starts_with("--") {
            pre.push(a.clone());
            let name = &a[2..];
            if !name.contains('=') && GLOBAL_VALUE_FLAGS.contains(&name) && i + 1 < args.len() {
                i += 1;
                pre.push(args[i].clone());
            }
        } else if a.starts_with('-') && a.len() > 1 {
            pre.push(a.clone());
        } else {
            command = Some(a.clone());
        }
        i += 1;
    }
    SplitArgv { pre, command, tail }
}

/// Rebuilds the argument vector with config-file values spliced in so that
/// explicit flags land later and therefore win. The command may come from
/// the command line or from the config; naming both differently is an error.
pub fn splice(prog: String, original: &[String]) -> Result<Vec<String>, String> {
    let paths = config_paths(original);
    if paths.is_empty() {
        let mut argv = vec![prog];
        argv.extend(original.iter().cloned());
        return Ok(argv);
    }
    let mut merged = FileConfig::default();
    for path in &paths {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {path}: {e}"))?;
        let fc = parse_config(&text);
        if fc.command.is_some() {
            merged.command = fc.command;
        }
        if fc.seed.is_some() {
            merged.seed = fc.seed;
        }
        if fc.output.is_some() {
            merged.output = fc.output;
        }
        if fc.cap.is_some() {
            merged.cap = fc.cap;
        }
        merged.params.extend(fc.params);
    }
    let split = split_argv(original);
    let command = match (&split.command, &merged.command) {
        (Some(given), Some(filed)) if given != filed => {
            return Err(format!(
                "config file names command {filed:?} but the command line says {given:?}"
            ))
        }
        (Some(given), _) => given.clone(),
        (None, Some(filed)) => filed.clone(),
        (None, None) => {
            return Err("no command on the command line or in the config file".into())
        }
    };
    let mut argv = vec![prog];
    if let Some(seed) = &merged.seed {
        argv.push("--seed".into());
        argv.push(seed.clone());
    }
    if let Some(output) = &merged.output {
        argv.push("--output".into());
        argv.push(output.clone());
    }
    if let Some(cap) = &merged.cap {
        argv.push("--cap".into());
        argv.push(cap.clone());
    }
    argv.extend(split.pre);
    argv.push(command);
    for (key, value) in &merged.params {
        argv.push(format!("--{key}"));
        argv.push(value.clone());
    }
    argv.extend(split.tail);
    Ok(argv)
}
