//! Flat experiment configuration.
//!
//! ```text
//! # top level
//! seed = 7
//! out = results.csv
//!
//! [pea]
//! files = h2_r0.74.txt, h2_r1.40.txt
//! bits = 20
//! ```
//!
//! Top-level keys are `pipeline`, `seed` and `out`. Each pipeline reads its
//! own section; every key must be consumed by the pipeline, so typos and
//! stray sections are rejected before any computation starts.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{CliError, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pipeline {
    Pea,
    Dynamics,
    Fold,
    Qubo,
    Cets,
}

impl Pipeline {
    pub const ALL: [Pipeline; 5] = [
        Pipeline::Pea,
        Pipeline::Dynamics,
        Pipeline::Fold,
        Pipeline::Qubo,
        Pipeline::Cets,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Pipeline::Pea => "pea",
            Pipeline::Dynamics => "dynamics",
            Pipeline::Fold => "fold",
            Pipeline::Qubo => "qubo",
            Pipeline::Cets => "cets",
        }
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pipeline {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Pipeline::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| CliError::Config(format!("unknown pipeline {s:?}")))
    }
}

#[derive(Clone, Debug)]
struct Entry {
    value: String,
    line: usize,
}

/// Key/value pairs of one section, consumed by typed getters.
#[derive(Clone, Debug, Default)]
pub struct Params {
    section: String,
    entries: BTreeMap<String, Entry>,
    base_dir: PathBuf,
}

impl Params {
    /// A section with no keys; every getter falls back to its default.
    pub fn empty(section: &str) -> Self {
        Self {
            section: section.to_string(),
            entries: BTreeMap::new(),
            base_dir: PathBuf::from("."),
        }
    }

    /// Adds or replaces a key, as if written in the file.
    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.entries.insert(
            key.to_string(),
            Entry {
                value: value.to_string(),
                line: 0,
            },
        );
    }

    fn err(&self, key: &str, line: usize, msg: impl fmt::Display) -> CliError {
        let at = if line > 0 {
            format!(" (line {line})")
        } else {
            String::new()
        };
        CliError::Config(format!("[{}] {key}{at}: {msg}", self.section))
    }

    fn take_raw(&mut self, key: &str) -> Option<Entry> {
        self.entries.remove(key)
    }

    /// Parses `key` if present.
    pub fn opt<T: FromStr>(&mut self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: fmt::Display,
    {
        match self.take_raw(key) {
            None => Ok(None),
            Some(e) => e
                .value
                .parse()
                .map(Some)
                .map_err(|err| self.err(key, e.line, format!("{:?}: {err}", e.value))),
        }
    }

    pub fn get<T: FromStr>(&mut self, key: &str, default: T) -> Result<T, CliError>
    where
        T::Err: fmt::Display,
    {
        Ok(self.opt(key)?.unwrap_or(default))
    }

    pub fn required<T: FromStr>(&mut self, key: &str) -> Result<T, CliError>
    where
        T::Err: fmt::Display,
    {
        self.opt(key)?
            .ok_or_else(|| self.err(key, 0, "required key is missing"))
    }

    /// Like [`get`](Self::get) but also enforces `lo <= value <= hi`.
    pub fn ranged<T: FromStr + PartialOrd + fmt::Display + Copy>(
        &mut self,
        key: &str,
        default: T,
        lo: T,
        hi: T,
    ) -> Result<T, CliError>
    where
        T::Err: fmt::Display,
    {
        let line = self.entries.get(key).map_or(0, |e| e.line);
        let v = self.get(key, default)?;
        if !(v >= lo && v <= hi) {
            return Err(self.err(key, line, format!("{v} outside [{lo}, {hi}]")));
        }
        Ok(v)
    }

    /// Comma-separated list; empty items are rejected.
    pub fn list<T: FromStr>(&mut self, key: &str) -> Result<Option<Vec<T>>, CliError>
    where
        T::Err: fmt::Display,
    {
        let Some(e) = self.take_raw(key) else {
            return Ok(None);
        };
        e.value
            .split(',')
            .map(|item| {
                let item = item.trim();
                if item.is_empty() {
                    return Err(self.err(key, e.line, "empty list item"));
                }
                item.parse()
                    .map_err(|err| self.err(key, e.line, format!("{item:?}: {err}")))
            })
            .collect::<Result<Vec<T>, _>>()
            .map(Some)
    }

    /// A list of paths resolved against the config file's directory.
    pub fn paths(&mut self, key: &str) -> Result<Option<Vec<PathBuf>>, CliError> {
        Ok(self
            .list::<String>(key)?
            .map(|v| v.into_iter().map(|p| self.resolve(&p)).collect()))
    }

    pub fn resolve(&self, path: &str) -> PathBuf {
        let p = Path::new(path);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    /// Fails if any key was never read.
    pub fn finish(self) -> Result<(), CliError> {
        match self.entries.iter().next() {
            None => Ok(()),
            Some((k, e)) => Err(self.err(k, e.line, "unknown key")),
        }
    }
}

/// A parsed configuration file.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub pipeline: Option<Pipeline>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    sections: BTreeMap<String, Params>,
}

impl ExperimentConfig {
    pub fn empty() -> Self {
        Self {
            pipeline: None,
            seed: None,
            out: None,
            sections: BTreeMap::new(),
        }
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = crate::io::read_text(path)?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::parse(
            &text,
            if dir.as_os_str().is_empty() {
                Path::new(".")
            } else {
                &dir
            },
        )
    }

    /// Parses configuration text; relative paths resolve against `base_dir`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self, CliError> {
        let perr = |line: usize, msg: String| CliError::parse("config", ParseError::new(line, msg));
        let mut cfg = Self::empty();
        let mut top = Params {
            section: String::new(),
            base_dir: base_dir.to_path_buf(),
            ..Default::default()
        };
        let mut current: Option<String> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            if let Some(name) = content.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| perr(line, "unterminated section header".into()))?
                    .trim();
                name.parse::<Pipeline>()
                    .map_err(|_| perr(line, format!("unknown section [{name}]")))?;
                if cfg.sections.contains_key(name) {
                    return Err(perr(line, format!("section [{name}] repeated")));
                }
                cfg.sections.insert(
                    name.to_string(),
                    Params {
                        section: name.to_string(),
                        entries: BTreeMap::new(),
                        base_dir: base_dir.to_path_buf(),
                    },
                );
                current = Some(name.to_string());
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| perr(line, format!("expected key = value, got {content:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() {
                return Err(perr(line, "empty key".into()));
            }
            let target = match &current {
                Some(s) => cfg.sections.get_mut(s).unwrap(),
                None => &mut top,
            };
            if target
                .entries
                .insert(
                    key.to_string(),
                    Entry {
                        value: value.to_string(),
                        line,
                    },
                )
                .is_some()
            {
                return Err(perr(line, format!("key {key:?} repeated")));
            }
        }
        cfg.pipeline = top.opt("pipeline")?;
        cfg.seed = top.opt("seed")?;
        cfg.out = top.opt::<String>("out")?.map(|p| top.resolve(&p));
        top.section = "top level".into();
        top.finish()?;
        Ok(cfg)
    }

    /// The parameters for `pipeline`. Sections for other pipelines are an
    /// error, as is a `pipeline` key that names a different pipeline.
    pub fn params_for(&self, pipeline: Pipeline) -> Result<Params, CliError> {
        if let Some(p) = self.pipeline {
            if p != pipeline {
                return Err(CliError::Config(format!(
                    "config is for pipeline {p}, but {pipeline} was requested"
                )));
            }
        }
        if let Some(other) = self.sections.keys().find(|s| *s != pipeline.name()) {
            return Err(CliError::Config(format!(
                "section [{other}] does not apply to pipeline {pipeline}"
            )));
        }
        Ok(self
            .sections
            .get(pipeline.name())
            .cloned()
            .unwrap_or_else(|| Params::empty(pipeline.name())))
    }
}
