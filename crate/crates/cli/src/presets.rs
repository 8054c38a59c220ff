//! Named parameter sets, built in or loaded from the file named by
//! `LUCANOMIAL_PRESETS`.
//!
//! The file holds one preset per line as whitespace-separated `key=value`
//! pairs. `name`, `P` and `Q` are required; `family` defaults to `u`, and
//! `initial=a,b` supplies the starting terms for the `w` and `h` families.
//! Blank lines and lines starting with `#` are ignored. A user preset with
//! the same name as a built-in replaces it.
//!
//! ```text
//! # companion of Pell
//! name=pell-lucas P=2 Q=-1 family=v
//! name=jacobsthal P=1 Q=-2
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use lucanomial::{Rational, SequenceKind};

pub const ENV_VAR: &str = "LUCANOMIAL_PRESETS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Family {
    U,
    V,
    W,
    H,
}

impl Family {
    pub fn kind(self, initial: Option<&[Rational; 2]>) -> Result<SequenceKind, String> {
        let pair = || {
            initial
                .cloned()
                .ok_or_else(|| format!("family {} needs initial terms (--initial a,b)", self.tag()))
        };
        Ok(match self {
            Family::U => SequenceKind::U,
            Family::V => SequenceKind::V,
            Family::W => {
                let [w0, w1] = pair()?;
                SequenceKind::HoradamW { w0, w1 }
            }
            Family::H => {
                let [h0, h1] = pair()?;
                SequenceKind::HoradamH { h0, h1 }
            }
        })
    }

    fn tag(self) -> &'static str {
        match self {
            Family::U => "u",
            Family::V => "v",
            Family::W => "w",
            Family::H => "h",
        }
    }

    fn parse(s: &str) -> Option<Family> {
        match s {
            "u" | "U" => Some(Family::U),
            "v" | "V" => Some(Family::V),
            "w" | "W" => Some(Family::W),
            "h" | "H" => Some(Family::H),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preset {
    pub name: String,
    pub p: Rational,
    pub q: Rational,
    pub family: Family,
    pub initial: Option<[Rational; 2]>,
}

impl Preset {
    fn builtin(name: &str, p: i64, q: i64, family: Family) -> Preset {
        Preset {
            name: name.to_string(),
            p: p.into(),
            q: q.into(),
            family,
            initial: None,
        }
    }

    fn gaussian(name: &str, q: Rational) -> Preset {
        Preset {
            name: name.to_string(),
            p: &q + &Rational::one(),
            q,
            family: Family::U,
            initial: None,
        }
    }
}

pub struct Presets {
    user: BTreeMap<String, Preset>,
}

impl Presets {
    /// Built-ins plus whatever the environment's preset file adds.
    pub fn load() -> Result<Presets, String> {
        match std::env::var_os(ENV_VAR) {
            Some(path) if !path.is_empty() => Presets::from_file(Path::new(&path)),
            _ => Ok(Presets {
                user: BTreeMap::new(),
            }),
        }
    }

    pub fn from_file(path: &Path) -> Result<Presets, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read preset file {}: {e}", path.display()))?;
        let user = parse_preset_file(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        Ok(Presets { user })
    }

    pub fn get(&self, name: &str) -> Result<Preset, String> {
        if let Some(preset) = self.user.get(name) {
            return Ok(preset.clone());
        }
        let preset = match name {
            "fibonacci" => Preset::builtin(name, 1, -1, Family::U),
            "lucas" => Preset::builtin(name, 1, -1, Family::V),
            "pell" => Preset::builtin(name, 2, -1, Family::U),
            "mersenne" => Preset::gaussian(name, Rational::from(2)),
            _ => match name.strip_prefix("gaussian:") {
                Some(q) => {
                    let q = q.parse().map_err(|e| format!("preset `{name}`: {e}"))?;
                    Preset::gaussian(name, q)
                }
                None => return Err(format!("unknown preset `{name}`")),
            },
        };
        Ok(preset)
    }
}

fn parse_preset_file(text: &str) -> Result<BTreeMap<String, Preset>, String> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let preset = parse_preset_line(line).map_err(|e| format!("line {}: {e}", i + 1))?;
        out.insert(preset.name.clone(), preset);
    }
    Ok(out)
}

fn parse_preset_line(line: &str) -> Result<Preset, String> {
    let mut fields = BTreeMap::new();
    for pair in line.split_whitespace() {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, found `{pair}`"))?;
        if fields.insert(key, value).is_some() {
            return Err(format!("duplicate key `{key}`"));
        }
    }
    let mut take = |key: &str| fields.remove(key);
    let name = take("name").ok_or("missing `name`")?.to_string();
    let rational = |key: &str, v: Option<&str>| -> Result<Rational, String> {
        v.ok_or_else(|| format!("missing `{key}`"))?
            .parse()
            .map_err(|e| format!("{key}: {e}"))
    };
    let p = rational("P", take("P"))?;
    let q = rational("Q", take("Q"))?;
    let family = match take("family") {
        Some(f) => Family::parse(f).ok_or_else(|| format!("unknown family `{f}`"))?,
        None => Family::U,
    };
    let initial = take("initial").map(parse_initial).transpose()?;
    if let Some(key) = fields.keys().next() {
        return Err(format!("unknown key `{key}`"));
    }
    // Catch a missing pair here rather than at first use.
    family.kind(initial.as_ref())?;
    Ok(Preset {
        name,
        p,
        q,
        family,
        initial,
    })
}

/// `a,b` as a pair of exact rationals.
pub fn parse_initial(s: &str) -> Result<[Rational; 2], String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two comma-separated terms, found `{s}`"))?;
    let a = a.parse().map_err(|e| format!("{e}"))?;
    let b = b.parse().map_err(|e| format!("{e}"))?;
    Ok([a, b])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn builtins() -> Presets {
        Presets {
            user: BTreeMap::new(),
        }
    }

    #[test]
    fn builtin_parameters() {
        let p = builtins();
        let fib = p.get("fibonacci").unwrap();
        assert_eq!(
            (fib.p, fib.q, fib.family),
            (1.into(), (-1).into(), Family::U)
        );
        assert_eq!(p.get("lucas").unwrap().family, Family::V);
        let g = p.get("gaussian:3").unwrap();
        assert_eq!((g.p, g.q), (4.into(), 3.into()));
        let m = p.get("mersenne").unwrap();
        assert_eq!((m.p, m.q), (3.into(), 2.into()));
        assert!(p.get("gaussian:x").is_err());
        assert!(p.get("nope").is_err());
    }

    #[test]
    fn file_entries_override_builtins() {
        let text = "# comment\n\nname=fibonacci P=2 Q=-1\nname=hh P=1 Q=-1 family=h initial=3,1\n";
        let presets = Presets {
            user: parse_preset_file(text).unwrap(),
        };
        assert_eq!(presets.get("fibonacci").unwrap().p, 2.into());
        let hh = presets.get("hh").unwrap();
        assert_eq!(hh.initial, Some([3.into(), 1.into()]));
        assert_eq!(presets.get("lucas").unwrap().p, 1.into());
    }

    #[test]
    fn file_errors_carry_line_numbers() {
        let err = parse_preset_file("name=a P=1 Q=1\nname=b P=1\n").unwrap_err();
        assert!(err.starts_with("line 2:"), "{err}");
        assert!(parse_preset_file("name=a P=1 Q=1 colour=red")
            .unwrap_err()
            .contains("colour"));
        assert!(parse_preset_file("name=a P=1 Q=1 family=w")
            .unwrap_err()
            .contains("initial"));
        assert!(parse_preset_file("name=a P=1 Q=x")
            .unwrap_err()
            .contains("Q"));
    }
}
