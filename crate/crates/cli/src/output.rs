use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

/// Usage and configuration failures; the process exits with status 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<sofic_core::Error> for CliError {
    fn from(e: sofic_core::Error) -> Self {
        CliError(e.to_string())
    }
}

/// What a command found.
#[derive(Debug, PartialEq, Eq)]
pub enum Outcome {
    Clean,
    /// A property failed; the counterexample file has been written.
    Violation(PathBuf),
}

/// Output directory. Files are written whole, one at a time.
pub struct OutDir {
    root: PathBuf,
}

impl OutDir {
    pub fn create(root: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(root)
            .map_err(|e| CliError::usage(format!("cannot create {}: {e}", root.display())))?;
        Ok(OutDir {
            root: root.to_path_buf(),
        })
    }

    pub fn write(&self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        let path = self.root.join(name);
        fs::write(&path, contents)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
        Ok(path)
    }

    pub fn counterexample(&self, contents: &str) -> Result<Outcome, CliError> {
        Ok(Outcome::Violation(
            self.write("counterexample.txt", contents)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample_is_written() {
        let dir = std::env::temp_dir().join(format!("sofic-out-{}", std::process::id()));
        let out = OutDir::create(&dir.join("nested")).unwrap();
        let outcome = out.counterexample("level 0: 3 disagreements\n").unwrap();
        let path = dir.join("nested").join("counterexample.txt");
        assert_eq!(outcome, Outcome::Violation(path.clone()));
        assert_eq!(
            fs::read_to_string(&path).unwrap(),
            "level 0: 3 disagreements\n"
        );
        fs::remove_dir_all(&dir).unwrap();
    }
}
