//! `--config FILE`: flat `key = value` lines merged under the command line.

use std::ffi::OsString;
use std::fs;

use crate::error::{CliError, Result};

/// Parses `key = value` lines. Blank lines and `#` comments are skipped and
/// a leading `--` on keys is allowed.
pub fn parse(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::usage(format!("config line {}: expected key = value", i + 1)))?;
        let key = key.trim().trim_start_matches("--");
        if key.is_empty() {
            return Err(CliError::usage(format!("config line {}: empty key", i + 1)));
        }
        out.push((key.to_string(), value.trim().to_string()));
    }
    Ok(out)
}

fn flag_name(arg: &OsString) -> Option<String> {
    let s = arg.to_str()?.strip_prefix("--")?;
    Some(s.split_once('=').map_or(s, |(k, _)| k).to_string())
}

fn config_path(args: &[OsString]) -> Option<OsString> {
    args.iter().enumerate().find_map(|(i, a)| {
        let s = a.to_str()?;
        if s == "--config" {
            args.get(i + 1).cloned()
        } else {
            s.strip_prefix("--config=").map(OsString::from)
        }
    })
}

/// Appends `--key value` for each config key not already given on the
/// command line. `true` becomes a bare switch and `false` is dropped.
pub fn merge_entries(mut args: Vec<OsString>, entries: &[(String, String)]) -> Vec<OsString> {
    let present: Vec<String> = args.iter().filter_map(flag_name).collect();
    for (key, value) in entries {
        if key == "config" || present.iter().any(|p| p == key) {
            continue;
        }
        match value.as_str() {
            "true" => args.push(format!("--{key}").into()),
            "false" => {}
            _ => {
                args.push(format!("--{key}").into());
                args.push(value.into());
            }
        }
    }
    args
}

/// Reads the file named by `--config`, if any, and merges it into `args`.
pub fn merge(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let text = fs::read_to_string(&path)
        .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.to_string_lossy())))?;
    Ok(merge_entries(args, &parse(&text)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn flags_win_over_config() {
        let entries = parse("# run\nbeta = 2\n--family=zeta\nK = 10\n\nzero-constant = true\nnorm = false\n").unwrap();
        let merged = merge_entries(os(&["dvl", "experiment", "diagonal", "--beta", "1", "--family=div"]), &entries);
        assert_eq!(merged, os(&["dvl", "experiment", "diagonal", "--beta", "1", "--family=div", "--K", "10", "--zero-constant"]));
    }

    #[test]
    fn malformed_line() {
        assert!(parse("beta 2").is_err());
        assert!(parse("= 2").is_err());
    }
}
