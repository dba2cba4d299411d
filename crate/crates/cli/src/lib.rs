//! File formats and text emission for the command-line tool: the JSON
//! graph document and DOT export.

pub mod document;
pub mod dot;
