//! A small functional language used as the object language of the
//! analyses: modules of data, type-synonym and function declarations.
//!
//! Declarations start in column 1; an indented line continues the previous
//! declaration. Line comments start with `--`.

mod ast;
mod lexer;
mod parser;
mod pretty;

use std::sync::OnceLock;

use thiserror::Error;

use crate::registry::{Registry, RegistryBuilder};

pub use ast::*;
pub use parser::parse;
pub use pretty::pretty;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FocusKind {
    Expr,
    Type,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: more than one {} focus in module", match kind { FocusKind::Expr => "expression", FocusKind::Type => "type" })]
    MultipleFoci {
        kind: FocusKind,
        line: usize,
        col: usize,
    },
}

impl ParseError {
    pub(crate) fn syntax(line: usize, col: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line,
            col,
            message: message.into(),
        }
    }

    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, col, .. } | ParseError::MultipleFoci { line, col, .. } => {
                (*line, *col)
            }
        }
    }
}

/// The frozen registry of every syntax node type.
pub fn registry() -> &'static Registry {
    static REGISTRY: OnceLock<Registry> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let mut b = RegistryBuilder::new();
        b.register::<Module>()
            .expect("syntax types register consistently");
        b.freeze().expect("syntax types are closed")
    })
}
