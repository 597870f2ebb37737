//! Text form of a [`ModelData`]:
//!
//! ```text
//! surface plane n=12
//! class F = 6 -2 -2 -2 -2 -2 -2 -2 -2 -1 -1 -1 -1
//! class Theta0 = 1 -1 0 0 0 0 0 0 0 -1 -1 -1 -1
//! fibre F_0:
//!   1 Theta0
//!   2 Theta1
//! effective: e1 e2
//! ```
//!
//! Coordinates are in basis order (`l, e1, ..` or `Δ0, Γ, e1, ..`). Fibre
//! components and effective curves may name a stored class or a basis
//! vector. Blank lines and lines starting with `#` are skipped.

use std::fmt;
use std::str::FromStr;

use genus2_pencils::catalog::{FibreData, ModelData};
use genus2_pencils::{Ambient, SurfaceModel};
use indexmap::IndexMap;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelFile {
    pub data: ModelData,
}

fn parse_ambient(line: usize, rest: &str) -> Result<Ambient, CliError> {
    let words: Vec<&str> = rest.split_whitespace().collect();
    let field = |w: &str, key: &str| -> Result<i64, CliError> {
        w.strip_prefix(key)
            .and_then(|v| v.strip_prefix('='))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| CliError::parse(line, format!("expected {key}=<int>, got {w:?}")))
    };
    let count =
        |v: i64| usize::try_from(v).map_err(|_| CliError::parse(line, "n must be nonnegative"));
    match words.as_slice() {
        ["plane", n] => Ok(Ambient::Plane {
            n: count(field(n, "n")?)?,
        }),
        ["hirzebruch", d, n] => Ok(Ambient::Hirzebruch {
            d: field(d, "d")?,
            n: count(field(n, "n")?)?,
        }),
        _ => Err(CliError::parse(
            line,
            "expected `surface plane n=<k>` or `surface hirzebruch d=<d> n=<k>`",
        )),
    }
}

fn parse_name(line: usize, s: &str) -> Result<String, CliError> {
    let s = s.trim();
    if s.is_empty() || s.contains(char::is_whitespace) || s.contains([':', '=', '#']) {
        return Err(CliError::parse(line, format!("bad name {s:?}")));
    }
    Ok(s.to_string())
}

impl FromStr for ModelFile {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self, CliError> {
        let mut ambient = None;
        let mut classes = IndexMap::new();
        let mut fibres: Vec<FibreData> = Vec::new();
        let mut effective = Vec::new();
        let mut in_fibre = false;
        let mut fibre_lines = Vec::new();
        // remember where names are used so unresolved ones get a line number
        let mut uses: Vec<(usize, String)> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let indented = raw.starts_with([' ', '\t']);
            if indented {
                let fibre = match (in_fibre, fibres.last_mut()) {
                    (true, Some(f)) => f,
                    _ => return Err(CliError::parse(line, "indented line outside a fibre block")),
                };
                let (mult, name) = trimmed
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| CliError::parse(line, "expected `<mult> <classname>`"))?;
                let mult: i64 = mult
                    .parse()
                    .map_err(|_| CliError::parse(line, format!("bad multiplicity {mult:?}")))?;
                let name = parse_name(line, name)?;
                uses.push((line, name.clone()));
                fibre.components.push((mult, name));
                continue;
            }
            in_fibre = false;
            let (keyword, rest) = trimmed
                .split_once(char::is_whitespace)
                .unwrap_or((trimmed, ""));
            match keyword {
                "surface" => {
                    if ambient.is_some() {
                        return Err(CliError::parse(line, "second surface header"));
                    }
                    ambient = Some(parse_ambient(line, rest)?);
                }
                _ if ambient.is_none() => {
                    return Err(CliError::parse(
                        line,
                        "the first line must be the surface header",
                    ));
                }
                "class" => {
                    let (name, coords) = rest
                        .split_once('=')
                        .ok_or_else(|| CliError::parse(line, "expected `class <name> = <ints>`"))?;
                    let name = parse_name(line, name)?;
                    let coords = coords
                        .split_whitespace()
                        .map(|w| {
                            w.parse::<i64>()
                                .map_err(|_| CliError::parse(line, format!("bad coordinate {w:?}")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    let rank = ambient.expect("checked above").rank();
                    if coords.len() != rank {
                        return Err(CliError::parse(
                            line,
                            format!("{name} has {} coordinates, rank is {rank}", coords.len()),
                        ));
                    }
                    if classes.insert(name.clone(), coords).is_some() {
                        return Err(CliError::parse(line, format!("class {name} defined twice")));
                    }
                }
                "fibre" => {
                    let name = rest
                        .strip_suffix(':')
                        .ok_or_else(|| CliError::parse(line, "expected `fibre <name>:`"))?;
                    let name = parse_name(line, name)?;
                    if fibres.iter().any(|f| f.name == name) {
                        return Err(CliError::parse(line, format!("fibre {name} defined twice")));
                    }
                    fibre_lines.push(line);
                    fibres.push(FibreData {
                        name,
                        components: Vec::new(),
                    });
                    in_fibre = true;
                }
                "effective:" => {
                    for w in rest.split_whitespace() {
                        let name = parse_name(line, w)?;
                        uses.push((line, name.clone()));
                        effective.push(name);
                    }
                }
                other => return Err(CliError::parse(line, format!("unknown keyword {other:?}"))),
            }
        }

        let ambient = ambient.ok_or_else(|| CliError::parse(1, "missing surface header"))?;
        if let Some(i) = fibres.iter().position(|f| f.components.is_empty()) {
            let message = format!("fibre {} has no components", fibres[i].name);
            return Err(CliError::parse(fibre_lines[i], message));
        }
        if !classes.contains_key("F") {
            let last = text.lines().count().max(1);
            return Err(CliError::parse(last, "no class named F (the fibre class)"));
        }
        let data = ModelData {
            ambient,
            classes,
            fibres,
            effective,
        };
        let model =
            SurfaceModel::from_ambient(ambient).map_err(|e| CliError::parse(1, e.to_string()))?;
        for (line, name) in uses {
            if data.resolve(&model, &name).is_err() {
                return Err(CliError::parse(line, format!("unknown class {name:?}")));
            }
        }
        Ok(ModelFile { data })
    }
}

impl fmt::Display for ModelFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = &self.data;
        writeln!(f, "surface {}", d.ambient)?;
        for (name, coords) in &d.classes {
            write!(f, "class {name} =")?;
            for c in coords {
                write!(f, " {c}")?;
            }
            writeln!(f)?;
        }
        for fibre in &d.fibres {
            writeln!(f, "fibre {}:", fibre.name)?;
            for (mult, name) in &fibre.components {
                writeln!(f, "  {mult} {name}")?;
            }
        }
        if !d.effective.is_empty() {
            writeln!(f, "effective: {}", d.effective.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use genus2_pencils::catalog::{raw, Tag};

    const SMALL: &str = "\
# a hand-written file
surface hirzebruch d=1 n=2
class F = 2 2 0 0

class G = 0 1 -1 0
fibre F_0:
  1 G
  1 e1
\t2 Γ
effective: e1 e2
";

    #[test]
    fn catalog_models_round_trip() {
        for tag in Tag::ALL {
            let file = ModelFile {
                data: raw(tag).data,
            };
            let text = file.to_string();
            let back: ModelFile = text.parse().unwrap();
            assert_eq!(back, file, "{tag}");
            assert_eq!(back.to_string(), text, "{tag}");
        }
    }

    #[test]
    fn parse_serialize_parse_is_identity() {
        let first: ModelFile = SMALL.parse().unwrap();
        let second: ModelFile = first.to_string().parse().unwrap();
        assert_eq!(first, second);
        assert_eq!(first.data.fibres[0].components[2], (2, "Γ".to_string()));
        assert_eq!(first.data.ambient, Ambient::Hirzebruch { d: 1, n: 2 });
    }

    #[test]
    fn committed_fixture_matches_the_catalog() {
        let text = include_str!("../tests/data/ex4_6.model");
        let file = ModelFile {
            data: raw(Tag::Ex4_6).data,
        };
        assert_eq!(file.to_string(), text);
    }

    fn line_of(text: &str) -> usize {
        match text.parse::<ModelFile>() {
            Err(CliError::Parse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of("class F = 1 2\n"), 1);
        assert_eq!(line_of("surface plane n=1\nclass F = 1\n"), 2);
        assert_eq!(line_of("surface plane n=1\nfibre X:\n  1 nope\n"), 3);
        assert_eq!(line_of("surface plane n=1\n  1 e1\n"), 2);
        assert_eq!(line_of("surface cone n=1\n"), 1);
        assert_eq!(line_of("surface plane n=1\nclass F = 1 x\n"), 2);
        assert_eq!(
            line_of("surface plane n=1\nclass F = 3 -1\neffective: e2\n"),
            3
        );
        assert_eq!(
            line_of("surface plane n=1\nclass F = 3 -1\nfibre X:\nfibre Y:\n  1 F\n"),
            3
        );
        assert_eq!(line_of("surface plane n=1\nclass G = 3 -1\n"), 2);
    }
}
