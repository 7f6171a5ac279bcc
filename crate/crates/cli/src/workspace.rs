use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use finalg_core::{algebra_from_json, fixtures, Caps, FiniteAlgebra, Identity, Signature};

use crate::report::CliError;

/// Algebras and identity lists loaded during one invocation, keyed by the
/// name they were requested under.
pub struct Workspace {
    algebras: BTreeMap<String, FiniteAlgebra>,
    identities: BTreeMap<String, Vec<Identity>>,
    pub caps: Caps,
}

impl Workspace {
    pub fn new(caps: Caps) -> Self {
        Workspace {
            algebras: BTreeMap::new(),
            identities: BTreeMap::new(),
            caps,
        }
    }

    /// A built-in fixture by name, otherwise an algebra JSON file.
    pub fn algebra(&mut self, name: &str) -> Result<FiniteAlgebra, CliError> {
        if let Some(alg) = self.algebras.get(name) {
            return Ok(alg.clone());
        }
        let alg = match fixtures::by_name(name) {
            Some(alg) => alg,
            None if Path::new(name).is_file() => {
                let text = fs::read_to_string(name)
                    .map_err(|e| CliError::Usage(format!("cannot read `{name}`: {e}")))?;
                algebra_from_json(&text)?
            }
            None => {
                return Err(CliError::Usage(format!(
                    "unknown algebra `{name}`: not a fixture name or a readable file"
                )))
            }
        };
        self.algebras.insert(name.to_string(), alg.clone());
        Ok(alg)
    }

    /// Identities from a text file, one `p = q` per line. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn identity_file(
        &mut self,
        path: &Path,
        sig: &Signature,
    ) -> Result<Vec<Identity>, CliError> {
        let key = path.display().to_string();
        if let Some(ids) = self.identities.get(&key) {
            return Ok(ids.clone());
        }
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read `{key}`: {e}")))?;
        let mut ids = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let id = Identity::parse(line, sig)
                .map_err(|e| CliError::Usage(format!("{key}:{}: {e}", n + 1)))?;
            ids.push(id);
        }
        self.identities.insert(key, ids.clone());
        Ok(ids)
    }
}
