//! Parsing of code specifications and key-value config files.

use anyhow::{anyhow, bail, Context, Result};
use listlab_core::codes::{random_linear_code, repetition_code, rm_code, LinearCode};
use std::collections::BTreeMap;
use std::path::Path;

/// Parse a code spec given as CLI tokens:
/// `rm <n> <d>`, `rep <block_dim> <copies>`, `random <n_bits> <dim> <seed>`,
/// or `file <path.json>` for an explicit code document.
pub fn parse_code_spec(tokens: &[String]) -> Result<LinearCode> {
    let usage = "expected: rm <n> <d> | rep <block_dim> <copies> | random <n_bits> <dim> <seed> | file <path.json>";
    let kind = tokens.first().ok_or_else(|| anyhow!("missing code spec; {usage}"))?;
    let arg = |i: usize| -> Result<&String> {
        tokens
            .get(i)
            .ok_or_else(|| anyhow!("missing argument {i} for {kind}; {usage}"))
    };
    let num = |i: usize| -> Result<usize> {
        arg(i)?
            .parse()
            .with_context(|| format!("argument {:?} is not a number", tokens[i]))
    };
    match kind.as_str() {
        "rm" => Ok(rm_code(num(1)?, num(2)?)?),
        "rep" => Ok(repetition_code(num(1)?, num(2)?)?),
        "random" => {
            let seed: u64 = arg(3)?
                .parse()
                .with_context(|| "seed must be a 64-bit integer")?;
            Ok(random_linear_code(num(1)?, num(2)?, seed)?)
        }
        "file" => {
            let path = arg(1)?;
            let json = std::fs::read_to_string(Path::new(path))
                .with_context(|| format!("reading code document {path}"))?;
            Ok(LinearCode::from_json(&json)?)
        }
        other => bail!("unknown code family {other:?}; {usage}"),
    }
}

/// The spec tokens re-joined for config echoes.
pub fn spec_string(tokens: &[String]) -> String {
    tokens.join(" ")
}

/// Parse a comma-separated list of weights, e.g. `0,1,2` or `3`.
pub fn parse_levels(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        if let Some((a, b)) = part.split_once("..") {
            let a: usize = a.trim().parse().context("bad range start")?;
            let b: usize = b.trim().parse().context("bad range end")?;
            out.extend(a..=b);
        } else {
            out.push(part.parse().with_context(|| format!("bad level {part:?}"))?);
        }
    }
    if out.is_empty() {
        bail!("empty level set");
    }
    Ok(out)
}

/// A flat `key = value` config file; `#` starts a comment.
pub fn parse_config_file(path: &str) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {path}"))?;
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("{path}:{}: expected key = value", lineno + 1))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(parts: &[&str]) -> Vec<String> {
        parts.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_families() {
        assert_eq!(parse_code_spec(&toks(&["rm", "3", "1"])).unwrap().n_bits(), 8);
        assert_eq!(parse_code_spec(&toks(&["rep", "1", "3"])).unwrap().n_bits(), 3);
        let c = parse_code_spec(&toks(&["random", "8", "4", "1"])).unwrap();
        assert_eq!(c.dimension(), 4);
        assert!(parse_code_spec(&toks(&["bogus"])).is_err());
    }

    #[test]
    fn parses_levels_and_ranges() {
        assert_eq!(parse_levels("1,2,5").unwrap(), vec![1, 2, 5]);
        assert_eq!(parse_levels("0..3").unwrap(), vec![0, 1, 2, 3]);
        assert!(parse_levels("").is_err());
    }
}
