//! `key = value` config files, merged into the argument list.
//!
//! Each key names a long flag (`j-max = 5/2` stands for `--j-max 5/2`).
//! A key already given on the command line is skipped, so flags win.
//! `true`/`false` values toggle switches.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

#[derive(Debug)]
pub struct ConfigError(pub String);

pub fn parse(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| ConfigError(format!("line {}: expected key = value", no + 1)))?;
        let k = k.trim().trim_start_matches("--");
        if k.is_empty() {
            return Err(ConfigError(format!("line {}: empty key", no + 1)));
        }
        out.push((k.to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn given(args: &[OsString], key: &str) -> bool {
    let flag = format!("--{key}");
    let prefix = format!("--{key}=");
    args.iter().any(|a| {
        let a = a.to_string_lossy();
        a == flag || a.starts_with(&prefix)
    })
}

/// Finds `--config <path>` / `--config=<path>`, removes it and appends the
/// file's entries that the command line does not already set.
pub fn merge(mut args: Vec<OsString>) -> Result<Vec<OsString>, ConfigError> {
    let mut path = None;
    let mut i = 0;
    while i < args.len() {
        let a = args[i].to_string_lossy().into_owned();
        if a == "--config" {
            if i + 1 >= args.len() {
                return Err(ConfigError("--config needs a path".into()));
            }
            path = Some(args[i + 1].clone());
            args.drain(i..i + 2);
            continue;
        }
        if let Some(p) = a.strip_prefix("--config=") {
            path = Some(OsString::from(p));
            args.remove(i);
            continue;
        }
        i += 1;
    }
    let Some(path) = path else {
        return Ok(args);
    };
    let text = fs::read_to_string(Path::new(&path))
        .map_err(|e| ConfigError(format!("cannot read config {}: {e}", Path::new(&path).display())))?;
    let mut extra = Vec::new();
    for (k, v) in parse(&text)? {
        if given(&args, &k) {
            continue;
        }
        match v.as_str() {
            "true" => extra.push(OsString::from(format!("--{k}"))),
            "false" => {}
            _ => extra.push(OsString::from(format!("--{k}={v}"))),
        }
    }
    args.extend(extra);
    Ok(args)
}
