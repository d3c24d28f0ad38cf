//! Input bookkeeping, output files and run manifests.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use emfdose::fixtures::{self, EmbeddedFile};
use emfdose::report::{FileDigest, RunManifest};
use emfdose::{LimitProfile, Registry, TissueProfile};

use crate::CommonArgs;

/// Tracks the inputs a run reads and the files it writes, and emits the
/// manifest sidecar when the run finishes.
pub struct Run {
    manifest: RunManifest,
    explicit_manifest: Option<PathBuf>,
    first_output: Option<PathBuf>,
}

impl Run {
    pub fn new(command: &str, arguments: Vec<String>, common: &CommonArgs) -> Self {
        Run {
            manifest: RunManifest::new(command, arguments),
            explicit_manifest: common.manifest.clone(),
            first_output: None,
        }
    }

    /// Reads a user-supplied input file and records its checksum.
    pub fn read_input(&mut self, path: &Path, what: &str) -> Result<String> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {what} {}", path.display()))?;
        self.record_input(FileDigest::of(path.display().to_string(), text.as_bytes()));
        Ok(text)
    }

    pub fn record_input(&mut self, digest: FileDigest) {
        if !self.manifest.inputs.contains(&digest) {
            self.manifest.inputs.push(digest);
        }
    }

    pub fn record_builtin(&mut self, file: EmbeddedFile) {
        self.record_input(builtin_digest(file));
    }

    /// Writes an output file and records its checksum.
    pub fn write_output(&mut self, path: &Path, contents: &str) -> Result<()> {
        fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
        self.manifest
            .outputs
            .push(FileDigest::of(path.display().to_string(), contents.as_bytes()));
        if self.first_output.is_none() {
            self.first_output = Some(path.to_path_buf());
        }
        Ok(())
    }

    /// Writes the manifest next to the first output, or to `--manifest`.
    pub fn finish(self) -> Result<()> {
        let path = match (self.explicit_manifest, self.first_output) {
            (Some(p), _) => p,
            (None, Some(out)) => {
                let mut name = out.into_os_string();
                name.push(".manifest.json");
                PathBuf::from(name)
            }
            (None, None) => return Ok(()),
        };
        fs::write(&path, self.manifest.to_json()).with_context(|| format!("writing manifest {}", path.display()))
    }
}

fn builtin_digest(file: EmbeddedFile) -> FileDigest {
    FileDigest::of(format!("builtin:{}", file.path), file.contents.as_bytes())
}

/// Registry of built-in and user-supplied profiles, remembering which file
/// defined each name.
pub struct Catalog {
    pub registry: Registry,
    tissue_src: BTreeMap<String, FileDigest>,
    limit_src: BTreeMap<String, FileDigest>,
    user_limits: Option<String>,
}

impl Catalog {
    pub fn load(common: &CommonArgs) -> Result<Self> {
        let mut registry = Registry::builtin();
        let mut tissue_src = BTreeMap::new();
        let mut limit_src = BTreeMap::new();
        for f in fixtures::TISSUE_FILES {
            if let Ok(t) = TissueProfile::from_toml_str(f.contents, f.path) {
                tissue_src.insert(t.name().to_owned(), builtin_digest(*f));
            }
        }
        for f in fixtures::LIMIT_FILES {
            if let Ok(l) = LimitProfile::from_toml_str(f.contents, f.path) {
                limit_src.insert(l.name().to_owned(), builtin_digest(*f));
            }
        }
        if let Some(path) = &common.tissue_file {
            let text = fs::read_to_string(path).with_context(|| format!("reading --tissue-file {}", path.display()))?;
            let origin = path.display().to_string();
            let t = TissueProfile::from_toml_str(&text, &origin).context("invalid --tissue-file")?;
            tissue_src.insert(t.name().to_owned(), FileDigest::of(origin, text.as_bytes()));
            registry.add_tissue(t);
        }
        let mut user_limits = None;
        if let Some(path) = &common.limits {
            let text = fs::read_to_string(path).with_context(|| format!("reading --limits {}", path.display()))?;
            let origin = path.display().to_string();
            let l = LimitProfile::from_toml_str(&text, &origin).context("invalid --limits")?;
            limit_src.insert(l.name().to_owned(), FileDigest::of(origin, text.as_bytes()));
            user_limits = Some(l.name().to_owned());
            registry.add_limits(l);
        }
        Ok(Catalog {
            registry,
            tissue_src,
            limit_src,
            user_limits,
        })
    }

    /// Name of the profile loaded with `--limits`, if any.
    pub fn user_limits(&self) -> Option<&str> {
        self.user_limits.as_deref()
    }

    pub fn use_tissue(&self, name: &str, run: &mut Run) -> Result<std::sync::Arc<TissueProfile>> {
        let t = self.registry.tissue(name)?;
        if let Some(d) = self.tissue_src.get(name) {
            run.record_input(d.clone());
        }
        Ok(t)
    }

    pub fn use_limits(&self, name: &str, run: &mut Run) -> Result<std::sync::Arc<LimitProfile>> {
        let l = self.registry.limits(name)?;
        if let Some(d) = self.limit_src.get(name) {
            run.record_input(d.clone());
        }
        Ok(l)
    }
}
