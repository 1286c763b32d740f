use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::{GroebnerError, MonomialOrder};
use crate::matrix::Ideal;
use crate::poly::{parse_polynomial, Polynomial};

/// On-disk store of computed bases.
///
/// One file per ideal, named by the SHA-256 of the key
/// `variables | characteristic | order | sorted generator printouts`, holding one basis
/// element per line in the polynomial grammar.
#[derive(Clone, Debug)]
pub struct GroebnerCache {
    dir: PathBuf,
}

impl GroebnerCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        GroebnerCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(ideal: &Ideal) -> String {
        let ring = ideal.ring();
        let mut gens: Vec<String> = ideal.generators().iter().map(ToString::to_string).collect();
        gens.sort();
        format!(
            "{}|{}|{}|{}",
            ring.variables().join(","),
            ring.characteristic(),
            MonomialOrder::DegRevLex.tag(),
            gens.join(";")
        )
    }

    fn path(&self, ideal: &Ideal) -> PathBuf {
        let digest = Sha256::digest(Self::key(ideal).as_bytes());
        let name: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        self.dir.join(format!("{name}.gb"))
    }

    pub fn load(&self, ideal: &Ideal) -> Result<Option<Vec<Polynomial>>, GroebnerError> {
        let path = self.path(ideal);
        if !path.exists() {
            return Ok(None);
        }
        let text = fs::read_to_string(&path).map_err(|e| GroebnerError::Cache(format!("{}: {e}", path.display())))?;
        let basis = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| parse_polynomial(l, ideal.ring()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Some(basis))
    }

    pub fn store(&self, ideal: &Ideal, basis: &[Polynomial]) -> Result<(), GroebnerError> {
        fs::create_dir_all(&self.dir).map_err(|e| GroebnerError::Cache(format!("{}: {e}", self.dir.display())))?;
        let path = self.path(ideal);
        let mut body = String::new();
        for p in basis {
            body.push_str(&p.to_string());
            body.push('\n');
        }
        fs::write(&path, body).map_err(|e| GroebnerError::Cache(format!("{}: {e}", path.display())))
    }
}
