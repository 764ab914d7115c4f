//! Text expressions, human/machine formatting, and the JSON codec.

mod format;
pub mod json;
mod parse;

pub use format::{format_mv, format_number, Style};
pub use json::{decode, encode, DecodeError, SCHEMA_VERSION};
pub use parse::{parse_eval, ParseError, ParseErrorKind};
