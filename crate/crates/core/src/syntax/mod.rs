//! Text formats: the expression grammar, canonical rendering and
//! endomorphism files.

mod endo_file;
mod parse;
mod render;

pub use endo_file::{EndoFile, EndoFileError};
pub use parse::{
    parse_ast, parse_expr, parse_poly, parse_weyl, Expr, GeneratorKind, ParseError, ParseErrorKind,
    ParseMode, Parsed,
};
pub use render::{render_endo, render_poly, render_polymap, render_weyl};
