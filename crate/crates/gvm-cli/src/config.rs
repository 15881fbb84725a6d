//! Plain-text key-value configuration files. Precedence is
//! flag > config file > built-in default; keys mirror the long flag names.

use std::collections::HashMap;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

#[derive(Debug, Default)]
pub struct Config {
    values: HashMap<String, String>,
}

impl Config {
    /// Load `key = value` lines; `#` starts a comment, blank lines ignored.
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else { return Ok(Self::default()) };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let mut values = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Input(format!("{}:{}: expected key=value", path.display(), lineno + 1))
            })?;
            values.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Self { values })
    }

    /// Resolve one setting: explicit flag wins, then the config file,
    /// then the built-in default.
    pub fn resolve<T: FromStr + Copy>(
        &self,
        flag: Option<T>,
        key: &str,
        default: T,
    ) -> Result<T, CliError> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.values.get(key) {
            Some(raw) => raw
                .parse()
                .map_err(|_| CliError::Input(format!("config key '{key}': cannot parse '{raw}'"))),
            None => Ok(default),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn precedence_flag_over_config_over_default() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "# study overrides\nepsilon = 0.1\ns=500").unwrap();
        let cfg = Config::load(Some(f.path())).unwrap();
        assert_eq!(cfg.resolve(Some(0.2), "epsilon", 0.05).unwrap(), 0.2);
        assert_eq!(cfg.resolve(None::<f64>, "epsilon", 0.05).unwrap(), 0.1);
        assert_eq!(cfg.resolve(None::<usize>, "s", 2000).unwrap(), 500);
        assert_eq!(cfg.resolve(None::<usize>, "r", 2000).unwrap(), 2000);
    }

    #[test]
    fn bad_lines_rejected() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "not a pair").unwrap();
        assert!(Config::load(Some(f.path())).is_err());
    }
}
