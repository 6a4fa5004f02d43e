use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::homalg::InvariantBundle;

/// One completed instance, as stored on a checkpoint line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckpointEntry {
    pub family: String,
    pub params: String,
    pub k: usize,
    pub field_char: u32,
    pub bundle: InvariantBundle,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char0: Option<InvariantBundle>,
    pub elapsed_ms: f64,
}

type Key = (String, String, usize);

/// Append-only JSON-lines record of finished instances, keyed by
/// `(family, params, k)`.
///
/// Entries computed over a different field are ignored. A truncated last
/// line (from an interrupted write) is skipped.
pub struct Checkpoint {
    path: PathBuf,
    field_char: u32,
    done: HashMap<Key, CheckpointEntry>,
    file: Mutex<File>,
}

impl Checkpoint {
    pub fn open(path: impl AsRef<Path>, field_char: u32) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut done = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(&path)?);
            for line in reader.lines() {
                let line = line?;
                let Ok(e) = serde_json::from_str::<CheckpointEntry>(&line) else {
                    continue;
                };
                if e.field_char == field_char {
                    done.insert((e.family.clone(), e.params.clone(), e.k), e);
                }
            }
        }
        let mut file = OpenOptions::new().create(true).append(true).open(&path)?;
        // Start fresh lines after a torn write.
        if file.metadata()?.len() > 0 && !ends_with_newline(&path)? {
            file.write_all(b"\n")?;
        }
        Ok(Checkpoint {
            path,
            field_char,
            done,
            file: Mutex::new(file),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn field_char(&self) -> u32 {
        self.field_char
    }

    pub fn len(&self) -> usize {
        self.done.len()
    }

    pub fn is_empty(&self) -> bool {
        self.done.is_empty()
    }

    pub fn get(&self, family: &str, params: &str, k: usize) -> Option<&CheckpointEntry> {
        self.done.get(&(family.to_string(), params.to_string(), k))
    }

    /// Appends and flushes one entry.
    pub fn record(&self, e: &CheckpointEntry) -> Result<()> {
        let mut line = serde_json::to_string(e)?;
        line.push('\n');
        let mut f = self.file.lock().expect("checkpoint lock");
        f.write_all(line.as_bytes())?;
        f.flush()?;
        Ok(())
    }
}

fn ends_with_newline(path: &Path) -> Result<bool> {
    let bytes = std::fs::read(path)?;
    Ok(bytes.last() == Some(&b'\n'))
}
