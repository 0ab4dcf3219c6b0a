//! File formats: pretty JSON documents and JSON-lines traces.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maxcut::{Cut, MaxCutInstance, Side};
use crate::weight::ExactWeight;

/// `{vertices: [id...], edges: [[u, v, [base, eps]]...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, ExactWeight)>,
}

impl From<&MaxCutInstance> for InstanceFile {
    fn from(inst: &MaxCutInstance) -> Self {
        InstanceFile {
            vertices: inst.names().to_vec(),
            edges: inst
                .edges()
                .iter()
                .map(|e| (inst.name(e.u).to_string(), inst.name(e.v).to_string(), e.w.clone()))
                .collect(),
        }
    }
}

impl TryFrom<InstanceFile> for MaxCutInstance {
    type Error = Error;
    fn try_from(f: InstanceFile) -> Result<Self> {
        MaxCutInstance::from_named(f.vertices, f.edges)
    }
}

/// Cut keyed by vertex name.
pub type CutFile = BTreeMap<String, Side>;

fn open_error(path: &Path, e: std::io::Error) -> Error {
    Error::Input(format!("{}: {e}", path.display()))
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, to_json(value)?)?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| open_error(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

pub fn write_jsonl<T: Serialize>(path: &Path, items: &[T]) -> Result<()> {
    let mut f = std::io::BufWriter::new(fs::File::create(path)?);
    for item in items {
        serde_json::to_writer(&mut f, item)?;
        f.write_all(b"\n")?;
    }
    f.flush()?;
    Ok(())
}

pub fn read_jsonl<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let f = BufReader::new(fs::File::open(path).map_err(|e| open_error(path, e))?);
    let mut out = Vec::new();
    for (i, line) in f.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(
            serde_json::from_str(&line)
                .map_err(|e| Error::Input(format!("{}:{}: {e}", path.display(), i + 1)))?,
        );
    }
    Ok(out)
}

pub fn write_instance(path: &Path, inst: &MaxCutInstance) -> Result<()> {
    write_json(path, &InstanceFile::from(inst))
}

pub fn read_instance(path: &Path) -> Result<MaxCutInstance> {
    read_json::<InstanceFile>(path)?.try_into()
}

pub fn write_cut(path: &Path, inst: &MaxCutInstance, cut: &Cut) -> Result<()> {
    write_json(path, &cut.to_named(inst))
}

pub fn read_cut(path: &Path, inst: &MaxCutInstance) -> Result<Cut> {
    Cut::from_named(inst, &read_json::<CutFile>(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maxcut::build_michel_scott;

    #[test]
    fn instance_format() {
        let inst = MaxCutInstance::from_named(
            vec!["a".into(), "b".into()],
            vec![("a".into(), "b".into(), ExactWeight::new(3, -1))],
        )
        .unwrap();
        let s = serde_json::to_string(&InstanceFile::from(&inst)).unwrap();
        assert_eq!(s, r#"{"vertices":["a","b"],"edges":[["a","b",["3","-1"]]]}"#);
    }

    #[test]
    fn files_round_trip() {
        let dir = std::env::temp_dir().join(format!("kopt-io-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let (inst, cut) = build_michel_scott(2);
        write_instance(&dir.join("i.json"), &inst).unwrap();
        write_cut(&dir.join("c.json"), &inst, &cut).unwrap();
        let back = read_instance(&dir.join("i.json")).unwrap();
        assert_eq!(back, inst);
        assert_eq!(read_cut(&dir.join("c.json"), &back).unwrap(), cut);
        write_jsonl(&dir.join("t.jsonl"), &[1u32, 2, 3]).unwrap();
        assert_eq!(read_jsonl::<u32>(&dir.join("t.jsonl")).unwrap(), vec![1, 2, 3]);
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn malformed_files_are_input_errors() {
        let dir = std::env::temp_dir().join(format!("kopt-io-bad-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        fs::write(dir.join("i.json"), r#"{"vertices":["a"],"edges":[["a","z",["1","0"]]]}"#).unwrap();
        assert!(matches!(read_instance(&dir.join("i.json")), Err(Error::UnknownVertex(_))));
        fs::write(dir.join("i.json"), "{").unwrap();
        assert!(matches!(read_instance(&dir.join("i.json")), Err(Error::Input(_))));
        fs::remove_dir_all(&dir).unwrap();
    }
}
