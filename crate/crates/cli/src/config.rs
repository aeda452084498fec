use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::Failure;

/// `key = value` pairs read from a text file. Blank lines and lines starting
/// with `#` are ignored.
#[derive(Debug, Default)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub const KEYS: [&'static str; 5] = ["modes", "quad", "tol", "out", "seed"];

    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, Failure> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Failure::usage(format!("config line {}: expected key=value", i + 1)));
            };
            let key = key.trim().to_string();
            if !Self::KEYS.contains(&key.as_str()) {
                return Err(Failure::usage(format!("config line {}: unknown key '{key}'", i + 1)));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, Failure> {
        self.values
            .get(key)
            .map(|v| v.parse().map_err(|_| Failure::usage(format!("config key '{key}': cannot parse '{v}'"))))
            .transpose()
    }
}

/// Settings shared by all subcommands after merging flags over the config file.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub modes: usize,
    pub quad: Option<usize>,
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

impl RunConfig {
    pub fn resolve(flags: &crate::Common, file: &ConfigFile) -> Result<Self, Failure> {
        let modes = flags.modes.or(file.get("modes")?).unwrap_or(16);
        let quad = flags.quad.or(file.get("quad")?);
        let tol = flags.tol.or(file.get("tol")?).unwrap_or(1e-10);
        let out = flags.out.clone().or(file.get("out")?);
        let seed = flags.seed.or(file.get("seed")?).unwrap_or(0);
        if modes < 2 {
            return Err(Failure::usage(format!("--modes must be at least 2, got {modes}")));
        }
        if let Some(q) = quad {
            if q < 4 || q % 2 != 0 {
                return Err(Failure::usage(format!("--quad must be even and at least 4, got {q}")));
            }
        }
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Failure::usage(format!("--tol must be positive, got {tol}")));
        }
        Ok(Self { modes, quad, tol, out, seed })
    }

    /// Output directory, created on demand; the working directory by default.
    pub fn out_dir(&self) -> Result<PathBuf, Failure> {
        let dir = self.out.clone().unwrap_or_else(|| PathBuf::from("."));
        std::fs::create_dir_all(&dir).map_err(|e| Failure::io(format!("{}: {e}", dir.display())))?;
        Ok(dir)
    }
}
