use std::fmt::{self, Write};

use crate::exact::Scalar;
use crate::monomial::Monomial;
use crate::poly::{PolyMap, Polynomial};
use crate::weyl::{WeylElement, WeylEndo};

/// Writes a sum of terms in descending lexicographic order, e.g.
/// `2*y1^2*y2 - y2 + 1`. Residues are printed as their representative in
/// `[0, p)`, so signs only appear over ℤ and ℚ.
fn write_terms<'a>(
    f: &mut impl Write,
    terms: impl DoubleEndedIterator<Item = (&'a Monomial, &'a Scalar)>,
    letter: char,
) -> fmt::Result {
    let mut first = true;
    for (m, c) in terms.rev() {
        let negative = c.is_negative();
        let magnitude = if negative { -c } else { c.clone() };
        match (first, negative) {
            (true, true) => f.write_char('-')?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        if m.is_one() {
            write!(f, "{magnitude}")?;
            continue;
        }
        if !magnitude.is_one() {
            write!(f, "{magnitude}*")?;
        }
        let mut first_factor = true;
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first_factor {
                f.write_char('*')?;
            }
            first_factor = false;
            write!(f, "{letter}{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
    }
    if first {
        f.write_char('0')?;
    }
    Ok(())
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms(), 'y')
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms(), 'x')
    }
}

/// Canonical text of a Weyl element.
pub fn render_weyl(a: &WeylElement) -> String {
    a.to_string()
}

/// Canonical text of a commutative polynomial.
pub fn render_poly(a: &Polynomial) -> String {
    a.to_string()
}

/// One `x<i> -> <image>` line per component.
pub fn render_polymap(m: &PolyMap) -> String {
    m.components()
        .iter()
        .enumerate()
        .map(|(i, c)| format!("x{} -> {c}\n", i + 1))
        .collect()
}

/// One `y<i> -> <image>` line per generator, the assignment part of an
/// endomorphism file.
pub fn render_endo(f: &WeylEndo) -> String {
    f.images()
        .iter()
        .enumerate()
        .map(|(i, img)| format!("y{} -> {img}\n", i + 1))
        .collect()
}
