//! Plain-text endomorphism files:
//!
//! ```text
//! n = 1
//! ring = Z
//! d = 2            # optional degree bound
//! y1 -> y1 + y2^2
//! y2 -> y2
//! ```
//!
//! `#` starts a comment; blank lines are ignored.

use std::fmt::Write;

use thiserror::Error;

use crate::exact::Ring;
use crate::weyl::{WeylElement, WeylEndo, WeylError, WeylSignature};

use super::parse::{parse_weyl, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EndoFileError {
    #[error("line {line}: {message}")]
    Header { line: usize, message: String },
    #[error("line {line}: {source}")]
    Expr { line: usize, source: ParseError },
    #[error("line {line}: y{index} is assigned twice")]
    DuplicateAssignment { line: usize, index: usize },
    #[error("no assignment for y{0}")]
    MissingAssignment(usize),
    #[error("line {line}: image of y{index} has degree {degree}, above the declared bound {bound}")]
    DegreeExceeded {
        line: usize,
        index: usize,
        degree: u32,
        bound: u32,
    },
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// A parsed endomorphism file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoFile {
    pub n: usize,
    pub ring: Ring,
    pub degree: Option<u32>,
    /// `images[i]` is the image of `y_{i+1}`.
    pub images: Vec<WeylElement>,
}

impl EndoFile {
    pub fn parse(text: &str) -> Result<Self, EndoFileError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, strip_comment(l)))
            .filter(|(_, l)| !l.trim().is_empty())
            .peekable();

        let (line, value) = header(lines.next(), "n")?;
        let n: usize = value.parse().map_err(|_| EndoFileError::Header {
            line,
            message: format!("`{value}` is not a valid n"),
        })?;
        if n == 0 {
            return Err(EndoFileError::Header {
                line,
                message: "n must be at least 1".into(),
            });
        }
        let (line, value) = header(lines.next(), "ring")?;
        let ring: Ring = value.parse().map_err(|e| EndoFileError::Header {
            line,
            message: format!("{e}"),
        })?;
        let mut degree = None;
        if let Some((line, l)) = lines.peek() {
            if l.trim_start().starts_with("d") && l.contains('=') && !l.contains("->") {
                let (line, value) = header(Some((*line, l)), "d")?;
                degree = Some(value.parse().map_err(|_| EndoFileError::Header {
                    line,
                    message: format!("`{value}` is not a valid degree"),
                })?);
                lines.next();
            }
        }

        let sig = WeylSignature::new(n);
        let mut slots: Vec<Option<WeylElement>> = vec![None; 2 * n];
        for (line, l) in lines {
            let (lhs, rhs) = l.split_once("->").ok_or_else(|| EndoFileError::Header {
                line,
                message: format!("expected `y<i> -> <expr>`, found `{}`", l.trim()),
            })?;
            let index = lhs
                .trim()
                .strip_prefix('y')
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&i| (1..=2 * n).contains(&i))
                .ok_or_else(|| EndoFileError::Header {
                    line,
                    message: format!("`{}` is not a generator y1..y{}", lhs.trim(), 2 * n),
                })?;
            let rhs_offset = l.len() - rhs.len();
            let image = parse_weyl(rhs, sig, ring).map_err(|mut source| {
                source.offset += rhs_offset;
                EndoFileError::Expr { line, source }
            })?;
            if let (Some(bound), Some(d)) = (degree, image.bernstein_degree()) {
                if d > bound {
                    return Err(EndoFileError::DegreeExceeded {
                        line,
                        index,
                        degree: d,
                        bound,
                    });
                }
            }
            let slot = &mut slots[index - 1];
            if slot.is_some() {
                return Err(EndoFileError::DuplicateAssignment { line, index });
            }
            *slot = Some(image);
        }
        let images = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or(EndoFileError::MissingAssignment(i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(EndoFile {
            n,
            ring,
            degree,
            images,
        })
    }

    /// The endomorphism, with its relations checked.
    pub fn to_endo(&self) -> Result<WeylEndo, EndoFileError> {
        Ok(WeylEndo::new(self.images.clone())?)
    }

    /// The endomorphism without the relation check.
    pub fn to_unverified_endo(&self) -> Result<WeylEndo, EndoFileError> {
        Ok(WeylEndo::new_unverified(self.images.clone())?)
    }

    pub fn from_endo(f: &WeylEndo) -> Self {
        EndoFile {
            n: f.signature().n(),
            ring: f.ring(),
            degree: f.degree(),
            images: f.images().to_vec(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n = {}", self.n);
        let _ = writeln!(out, "ring = {}", self.ring);
        if let Some(d) = self.degree {
            let _ = writeln!(out, "d = {d}");
        }
        for (i, img) in self.images.iter().enumerate() {
            let _ = writeln!(out, "y{} -> {img}", i + 1);
        }
        out
    }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(code, _)| code)
}

fn header<'a>(entry: Option<(usize, &'a str)>, key: &str) -> Result<(usize, &'a str), EndoFileError> {
    let (line, l) = entry.ok_or_else(|| EndoFileError::Header {
        line: 0,
        message: format!("missing `{key} = ...` header"),
    })?;
    let (k, v) = l.split_once('=').ok_or_else(|| EndoFileError::Header {
        line,
        message: format!("expected `{key} = ...`"),
    })?;
    if k.trim() != key {
        return Err(EndoFileError::Header {
            line,
            message: format!("expected `{key} = ...`, found `{}`", l.trim()),
        });
    }
    Ok((line, v.trim()))
}
