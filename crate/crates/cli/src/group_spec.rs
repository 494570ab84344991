use std::path::Path;

use rootdatum::root_datum::{standard, GroupDatum, GroupName};

use crate::CliError;

/// A resolved group argument.
#[derive(Clone, Debug)]
pub struct ResolvedGroup {
    /// `GL(2)` for catalog entries, the path for files.
    pub label: String,
    pub group: GroupDatum,
}

fn split_name(s: &str) -> Option<(&str, &str)> {
    if let Some(open) = s.find('(') {
        let inner = s[open + 1..].strip_suffix(')')?;
        return Some((&s[..open], inner));
    }
    let cut = s.find(|c: char| c.is_ascii_digit())?;
    Some((&s[..cut], &s[cut..]))
}

fn parse_rank(s: &str) -> Result<usize, CliError> {
    s.trim().parse().map_err(|_| CliError::input(format!("bad rank {s:?}")))
}

pub fn catalog_label(name: GroupName, n: usize) -> String {
    format!("{name}({n})")
}

fn from_catalog(name: GroupName, n: usize) -> Result<ResolvedGroup, CliError> {
    let (datum, galois) = standard(name, n)?;
    Ok(ResolvedGroup { label: catalog_label(name, n), group: GroupDatum::new(datum, galois)? })
}

/// Reads a group datum from JSON: either a bare datum or any object with a
/// `"datum"` field (such as `describe` output), whose `"group"` label is
/// returned alongside.
pub fn parse_group_json(text: &str) -> Result<(GroupDatum, Option<String>), CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::input(e.to_string()))?;
    let (inner, label) = match value.get("datum") {
        Some(d) => (d.clone(), value.get("group").and_then(|g| g.as_str()).map(str::to_string)),
        None => (value, None),
    };
    Ok((GroupDatum::from_json(&inner.to_string())?, label))
}

/// `NAME N`, `NAME(N)`, `NAMEN`, or a path to a JSON file.
pub fn resolve(args: &[String]) -> Result<ResolvedGroup, CliError> {
    match args {
        [name, rank] => from_catalog(name.parse()?, parse_rank(rank)?),
        [one] => {
            let path = Path::new(one);
            if path.is_file() {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::io(format!("{one}: {e}")))?;
                let (group, label) = parse_group_json(&text)?;
                return Ok(ResolvedGroup { label: label.unwrap_or_else(|| one.clone()), group });
            }
            let (name, rank) =
                split_name(one).ok_or_else(|| CliError::input(format!("{one:?} is neither a file nor NAME(N)")))?;
            from_catalog(name.parse()?, parse_rank(rank)?)
        }
        _ => Err(CliError::input("expected a group as NAME N, NAME(N) or a JSON file".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(args: &[&str]) -> String {
        resolve(&args.iter().map(|s| s.to_string()).collect::<Vec<_>>()).unwrap().label
    }

    #[test]
    fn spellings() {
        assert_eq!(label(&["PGL", "2"]), "PGL(2)");
        assert_eq!(label(&["pgl(2)"]), "PGL(2)");
        assert_eq!(label(&["gl3"]), "GL(3)");
        assert_eq!(label(&["Torus", "2"]), "Torus(2)");
        assert_eq!(label(&["u", "3"]), "UnitaryQuasiSplit(3)");
    }

    #[test]
    fn rejects_garbage() {
        assert!(resolve(&["nope".into()]).is_err());
        assert!(resolve(&["XY".into(), "2".into()]).is_err());
        assert!(resolve(&["GL".into(), "0".into()]).is_err());
    }
}
