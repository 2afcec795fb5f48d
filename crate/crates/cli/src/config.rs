//! `key = value` configuration files, merged into argv as long flags.

use std::path::Path;

use anyhow::{bail, Context, Result};

/// Parses `key = value` lines. Blank lines and lines starting with `#`
/// are skipped; keys may carry a leading `--`.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("config line {}: expected key = value, got '{line}'", n + 1);
        };
        let key = key.trim().trim_start_matches("--");
        if key.is_empty() {
            bail!("config line {}: empty key", n + 1);
        }
        pairs.push((key.to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}

fn config_path(argv: &[String]) -> Option<String> {
    let mut it = argv.iter().skip(1);
    while let Some(arg) = it.next() {
        if arg == "--" {
            break;
        }
        if arg == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = arg.strip_prefix("--config=") {
            return Some(p.to_string());
        }
    }
    None
}

fn flag_given(argv: &[String], key: &str) -> bool {
    let long = format!("--{key}");
    let inline = format!("--{key}=");
    argv.iter().any(|a| *a == long || a.starts_with(&inline))
}

/// Inserts flags from the `--config` file (if any) right after the
/// subcommand, skipping keys already present on the command line.
pub fn merge_config(argv: &[String], subcommands: &[&str]) -> Result<Vec<String>> {
    let Some(path) = config_path(argv) else {
        return Ok(argv.to_vec());
    };
    let text = std::fs::read_to_string(Path::new(&path))
        .with_context(|| format!("reading config file {path}"))?;
    let pairs = parse_config(&text)?;
    let Some(at) = argv.iter().position(|a| subcommands.contains(&a.as_str())) else {
        return Ok(argv.to_vec());
    };
    let mut merged = argv[..=at].to_vec();
    for (key, value) in pairs {
        if key == "config" {
            bail!("config files cannot include other config files");
        }
        if !flag_given(argv, &key) {
            merged.push(format!("--{key}={value}"));
        }
    }
    merged.extend_from_slice(&argv[at + 1..]);
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn parses_pairs() {
        let pairs = parse_config("# comment\n\nomega0 = 50\n--initial=bell2\n").unwrap();
        assert_eq!(
            pairs,
            vec![
                ("omega0".into(), "50".into()),
                ("initial".into(), "bell2".into())
            ]
        );
        assert!(parse_config("no equals sign").is_err());
        assert!(parse_config(" = 3").is_err());
    }

    #[test]
    fn flags_win() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.conf");
        std::fs::write(&path, "omega0 = 50\nr = 0.3\n").unwrap();
        let argv = args(&format!(
            "atomtele --config {} fidelity --r 0.5 --gt 1",
            path.display()
        ));
        let merged = merge_config(&argv, &["fidelity"]).unwrap();
        assert!(merged.contains(&"--omega0=50".to_string()));
        assert!(!merged.iter().any(|a| a == "--r=0.3"));
        assert_eq!(
            merge_config(&args("atomtele rates --r 1"), &["rates"]).unwrap(),
            args("atomtele rates --r 1")
        );
    }
}
