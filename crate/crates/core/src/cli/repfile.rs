//! On-disk representation files, as JSON or as a plain text layout.
//!
//! ```text
//! spinrep 1
//! cover tilde
//! n 4
//! characteristic 3
//! field quadratic p=3 c=2 zeta=1,1 zeta_min_poly=1,2
//! z_sign -1
//! recipe seed double s1
//! degree 2
//! matrix rows=2 cols=2
//! 0 z
//! 2*z 0
//! ...
//! ```

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, QuadraticField, Tower};
use crate::matrix::Matrix;
use crate::recipe::Recipe;
use crate::spin::{Cover, Representation};

pub const FORMAT_NAME: &str = "spinrep";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Text => "txt",
        }
    }

    /// JSON documents start with `{`; anything else is read as text.
    pub fn detect(contents: &str) -> Format {
        if contents.trim_start().starts_with('{') {
            Format::Json
        } else {
            Format::Text
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coordinates {
    pub a: u64,
    pub b: u64,
}

/// ζ² = s + t·ζ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinPoly {
    pub s: u64,
    pub t: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    Gf2,
    Prime {
        p: u64,
    },
    /// GF(p)[w]/(w² − c) with primitive element ζ = a + b·w.
    Quadratic {
        p: u64,
        c: u64,
        zeta: Coordinates,
        zeta_min_poly: MinPoly,
    },
    RationalTower {
        radicals: Vec<i64>,
    },
}

impl FieldSpec {
    pub fn describe(field: &FieldDescriptor) -> FieldSpec {
        match field {
            FieldDescriptor::Char2 => FieldSpec::Gf2,
            FieldDescriptor::Prime(p) => FieldSpec::Prime { p: *p },
            FieldDescriptor::Quadratic(q) => {
                let (a, b) = q.zeta_coordinates();
                let (s, t) = q.zeta_square();
                FieldSpec::Quadratic {
                    p: q.p(),
                    c: q.non_residue(),
                    zeta: Coordinates { a, b },
                    zeta_min_poly: MinPoly { s, t },
                }
            }
            FieldDescriptor::RationalTower(t) => FieldSpec::RationalTower {
                radicals: t.radicals().to_vec(),
            },
        }
    }

    pub fn build(&self) -> Result<FieldDescriptor> {
        match self {
            FieldSpec::Gf2 => Ok(FieldDescriptor::Char2),
            FieldSpec::Prime { p } if *p == 2 => Err(Error::InvalidField("use gf2 for p = 2".into())),
            FieldSpec::Prime { p } => FieldDescriptor::prime(*p),
            FieldSpec::Quadratic {
                p,
                c,
                zeta,
                zeta_min_poly,
            } => {
                let q = QuadraticField::from_parts(*p, *c, zeta.a, zeta.b)?;
                if q.zeta_square() != (zeta_min_poly.s, zeta_min_poly.t) {
                    return Err(Error::InvalidField(format!(
                        "zeta_min_poly ({}, {}) does not match the generator",
                        zeta_min_poly.s, zeta_min_poly.t
                    )));
                }
                if !q.is_primitive((0, 1)) {
                    return Err(Error::InvalidField("zeta is not primitive".into()));
                }
                Ok(FieldDescriptor::Quadratic(q))
            }
            FieldSpec::RationalTower { radicals } => {
                Ok(FieldDescriptor::RationalTower(Tower::from_radicals(radicals)?))
            }
        }
    }

    fn to_line(&self) -> String {
        match self {
            FieldSpec::Gf2 => "gf2".into(),
            FieldSpec::Prime { p } => format!("prime p={p}"),
            FieldSpec::Quadratic {
                p,
                c,
                zeta,
                zeta_min_poly,
            } => format!(
                "quadratic p={p} c={c} zeta={},{} zeta_min_poly={},{}",
                zeta.a, zeta.b, zeta_min_poly.s, zeta_min_poly.t
            ),
            FieldSpec::RationalTower { radicals } => {
                let r: Vec<String> = radicals.iter().map(i64::to_string).collect();
                format!("rational_tower radicals={}", r.join(","))
            }
        }
    }

    fn from_line(line: &str) -> Result<FieldSpec> {
        let mut words = line.split_whitespace();
        let kind = words.next().ok_or_else(|| parse_err("empty field line"))?;
        let mut get = |key: &str| -> Result<String> {
            let word = words
                .next()
                .ok_or_else(|| parse_err(&format!("field line lacks {key}")))?;
            word.strip_prefix(key)
                .and_then(|w| w.strip_prefix('='))
                .map(str::to_owned)
                .ok_or_else(|| parse_err(&format!("expected {key}=..., got '{word}'")))
        };
        let spec = match kind {
            "gf2" => FieldSpec::Gf2,
            "prime" => FieldSpec::Prime {
                p: number(&get("p")?)?,
            },
            "quadratic" => {
                let p = number(&get("p")?)?;
                let c = number(&get("c")?)?;
                let (a, b) = pair(&get("zeta")?)?;
                let (s, t) = pair(&get("zeta_min_poly")?)?;
                FieldSpec::Quadratic {
                    p,
                    c,
                    zeta: Coordinates { a, b },
                    zeta_min_poly: MinPoly { s, t },
                }
            }
            "rational_tower" => {
                let list = get("radicals")?;
                let radicals = if list.is_empty() {
                    Vec::new()
                } else {
                    list.split(',').map(number).collect::<Result<_>>()?
                };
                FieldSpec::RationalTower { radicals }
            }
            other => return Err(parse_err(&format!("unknown field kind '{other}'"))),
        };
        if let Some(extra) = words.next() {
            return Err(parse_err(&format!("unexpected '{extra}' on field line")));
        }
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeSpec {
    pub steps: Vec<String>,
    pub modifiers: Vec<String>,
}

/// The serialized form of a [`Representation`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub format: String,
    pub version: u32,
    pub cover: String,
    pub n: usize,
    pub characteristic: u64,
    pub field: FieldSpec,
    pub z_sign: i8,
    pub recipe: RecipeSpec,
    pub degree: usize,
    /// Row-major entries of T₁,…,Tₙ₋₁.
    pub matrices: Vec<Vec<Vec<String>>>,
}

fn parse_err(msg: &str) -> Error {
    Error::Parse(msg.to_owned())
}

fn number<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.parse().map_err(|_| parse_err(&format!("bad number '{s}'")))
}

fn pair(s: &str) -> Result<(u64, u64)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| parse_err(&format!("expected a,b, got '{s}'")))?;
    Ok((number(a)?, number(b)?))
}

impl RepFile {
    pub fn from_representation(r: &Representation) -> RepFile {
        let f = r.field();
        RepFile {
            format: FORMAT_NAME.into(),
            version: FORMAT_VERSION,
            cover: r.cover().to_string(),
            n: r.n(),
            characteristic: r.characteristic(),
            field: FieldSpec::describe(f),
            z_sign: r.z_sign(),
            recipe: RecipeSpec {
                steps: r.recipe().steps().iter().map(ToString::to_string).collect(),
                modifiers: r.recipe().modifiers().iter().map(ToString::to_string).collect(),
            },
            degree: r.degree(),
            matrices: r
                .gens()
                .iter()
                .map(|g| {
                    g.to_rows()
                        .iter()
                        .map(|row| row.iter().map(|x| f.format_element(x)).collect())
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_representation(&self) -> Result<Representation> {
        if self.format != FORMAT_NAME || self.version != FORMAT_VERSION {
            return Err(parse_err(&format!(
                "unsupported format '{}' version {}",
                self.format, self.version
            )));
        }
        let cover: Cover = self.cover.parse()?;
        let field = self.field.build()?;
        if field.characteristic() != self.characteristic {
            return Err(parse_err("characteristic disagrees with the field"));
        }
        let expected_z = if self.characteristic == 2 { 1 } else { -1 };
        if self.z_sign != expected_z {
            return Err(parse_err(&format!(
                "z_sign {} is impossible in characteristic {}",
                self.z_sign, self.characteristic
            )));
        }
        let words: Vec<&str> = self
            .recipe
            .steps
            .iter()
            .chain(&self.recipe.modifiers)
            .map(String::as_str)
            .collect();
        let recipe = if words.is_empty() {
            Recipe::unspecified(self.characteristic)
        } else {
            Recipe::parse(self.characteristic, &words.join(" "))?
        };
        if recipe.steps().len() != self.recipe.steps.len() {
            return Err(parse_err("recipe steps and modifiers are mixed up"));
        }
        let mut gens = Vec::with_capacity(self.matrices.len());
        for (k, m) in self.matrices.iter().enumerate() {
            if m.len() != self.degree || m.iter().any(|row| row.len() != self.degree) {
                return Err(parse_err(&format!(
                    "matrix {} is not {d}x{d}",
                    k + 1,
                    d = self.degree
                )));
            }
            let rows = m
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|x| field.parse_element(x))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            gens.push(Matrix::from_rows(field.clone(), rows)?);
        }
        if self.degree == 0 {
            return Err(parse_err("degree must be positive"));
        }
        Representation::new(self.n, field, gens, recipe, cover)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<RepFile> {
        serde_json::from_str(s).map_err(|e| parse_err(&format!("invalid JSON: {e}")))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let steps_and_mods: Vec<&str> = self
            .recipe
            .steps
            .iter()
            .chain(&self.recipe.modifiers)
            .map(String::as_str)
            .collect();
        let recipe = if steps_and_mods.is_empty() {
            "-".to_owned()
        } else {
            steps_and_mods.join(" ")
        };
        writeln!(out, "{} {}", self.format, self.version).unwrap();
        writeln!(out, "cover {}", self.cover).unwrap();
        writeln!(out, "n {}", self.n).unwrap();
        writeln!(out, "characteristic {}", self.characteristic).unwrap();
        writeln!(out, "field {}", self.field.to_line()).unwrap();
        writeln!(out, "z_sign {}", self.z_sign).unwrap();
        writeln!(out, "recipe {recipe}").unwrap();
        writeln!(out, "degree {}", self.degree).unwrap();
        for m in &self.matrices {
            let cols = m.first().map_or(0, Vec::len);
            writeln!(out, "matrix rows={} cols={cols}", m.len()).unwrap();
            for row in m {
                writeln!(out, "{}", row.join(" ")).unwrap();
            }
        }
        out
    }

    /// Blank lines and lines starting with `#` are ignored.
    pub fn from_text(s: &str) -> Result<RepFile> {
        let lines: Vec<&str> = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let mut pos = 0;
        let mut next = |key: &str| -> Result<String> {
            let line = lines
                .get(pos)
                .ok_or_else(|| parse_err(&format!("missing '{key}' line")))?;
            let (k, v) = line.split_once(' ').unwrap_or((line, ""));
            if k != key {
                return Err(parse_err(&format!("expected '{key}', got '{line}'")));
            }
            pos += 1;
            Ok(v.trim().to_owned())
        };
        let version = number(&next(FORMAT_NAME)?)?;
        let cover = next("cover")?;
        let n = number(&next("n")?)?;
        let characteristic = number(&next("characteristic")?)?;
        let field = FieldSpec::from_line(&next("field")?)?;
        let z_sign = number(&next("z_sign")?)?;
        let recipe_line = next("recipe")?;
        let degree = number(&next("degree")?)?;
        let mut matrices = Vec::new();
        let mut rest = lines[pos..].iter();
        while let Some(header) = rest.next() {
            let dims = header
                .strip_prefix("matrix ")
                .ok_or_else(|| parse_err(&format!("expected a matrix header, got '{header}'")))?;
            let (rows, cols) = match dims.split_whitespace().collect::<Vec<_>>()[..] {
                [r, c] => (
                    number::<usize>(
                        r.strip_prefix("rows=")
                            .ok_or_else(|| parse_err("expected rows="))?,
                    )?,
                    number::<usize>(
                        c.strip_prefix("cols=")
                            .ok_or_else(|| parse_err("expected cols="))?,
                    )?,
                ),
                _ => return Err(parse_err(&format!("bad matrix header '{header}'"))),
            };
            let mut m = Vec::with_capacity(rows);
            for _ in 0..rows {
                let line = rest.next().ok_or_else(|| parse_err("matrix ended early"))?;
                let row: Vec<String> = line.split_whitespace().map(str::to_owned).collect();
                if row.len() != cols {
                    return Err(parse_err(&format!("expected {cols} entries, got '{line}'")));
                }
                m.push(row);
            }
            matrices.push(m);
        }
        let parsed = Recipe::parse(characteristic, &recipe_line)?;
        Ok(RepFile {
            format: FORMAT_NAME.into(),
            version,
            cover,
            n,
            characteristic,
            field,
            z_sign,
            recipe: RecipeSpec {
                steps: parsed.steps().iter().map(ToString::to_string).collect(),
                modifiers: parsed.modifiers().iter().map(ToString::to_string).collect(),
            },
            degree,
            matrices,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }

    pub fn parse(contents: &str) -> Result<RepFile> {
        match Format::detect(contents) {
            Format::Json => RepFile::from_json(contents),
            Format::Text => RepFile::from_text(contents),
        }
    }
}

pub fn serialize(r: &Representation, format: Format) -> String {
    RepFile::from_representation(r).render(format)
}

/// Parse either format into a representation.
pub fn deserialize(contents: &str) -> Result<Representation> {
    RepFile::parse(contents)?.to_representation()
}

pub fn read(path: &Path) -> Result<(Representation, Format)> {
    let contents = std::fs::read_to_string(path)
        .map_err(|e| parse_err(&format!("cannot read {}: {e}", path.display())))?;
    Ok((deserialize(&contents)?, Format::detect(&contents)))
}

pub fn write(path: &Path, r: &Representation, format: Format) -> Result<()> {
    std::fs::write(path, serialize(r, format))
        .map_err(|e| parse_err(&format!("cannot write {}: {e}", path.display())))
}
