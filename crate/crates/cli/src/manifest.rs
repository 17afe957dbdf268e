use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use toml::{Table, Value};

/// Records what a run did: the command, its resolved parameters, the seed
/// and the versions that produced the outputs.
pub struct Manifest {
    command: String,
    seed: Option<u64>,
    params: Table,
    outputs: Vec<String>,
    dir: PathBuf,
}

impl Manifest {
    pub fn new(command: &str, dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)
            .with_context(|| format!("creating output directory {}", dir.display()))?;
        Ok(Self {
            command: command.into(),
            seed: None,
            params: Table::new(),
            outputs: Vec::new(),
            dir: dir.into(),
        })
    }

    pub fn seed(&mut self, seed: u64) -> &mut Self {
        self.seed = Some(seed);
        self
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(key.into(), value.into());
        self
    }

    pub fn params_from(&mut self, table: Table) -> &mut Self {
        self.params.extend(table);
        self
    }

    /// Writes `contents` to `name` inside the output directory.
    pub fn write(&mut self, name: &str, contents: &str) -> Result<PathBuf> {
        let path = self.dir.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        self.outputs.push(name.into());
        Ok(path)
    }

    pub fn finish(self) -> Result<()> {
        let mut root = Table::new();
        root.insert("command".into(), self.command.into());
        if let Some(seed) = self.seed {
            // TOML integers are signed; keep the full u64 as text
            root.insert("seed".into(), seed.to_string().into());
        }
        let mut versions = Table::new();
        versions.insert("cechlab".into(), cechlab::VERSION.into());
        versions.insert("cechlab-cli".into(), env!("CARGO_PKG_VERSION").into());
        root.insert("versions".into(), versions.into());
        root.insert(
            "outputs".into(),
            Value::Array(self.outputs.into_iter().map(Value::from).collect()),
        );
        root.insert("spec".into(), self.params.into());
        let path = self.dir.join("manifest.toml");
        fs::write(&path, toml::to_string(&root)?)
            .with_context(|| format!("writing {}", path.display()))?;
        Ok(())
    }
}
