use num_bigint::BigInt;

use super::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    ConId(String),
    VarId(String),
    Int(BigInt),
    Str(String),
    Module,
    Where,
    Data,
    Type,
    Let,
    In,
    Eq,
    Bar,
    Arrow,
    Backslash,
    LParen,
    RParen,
    FocusOpen,
    FocusClose,
    /// Precedes the first token of every line that starts in column 1;
    /// declarations are separated by these.
    Newline,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::ConId(s) => format!("constructor name `{s}`"),
            Tok::VarId(s) => format!("variable `{s}`"),
            Tok::Int(n) => format!("integer `{n}`"),
            Tok::Str(s) => format!("string \"{s}\""),
            Tok::Module => "`module`".into(),
            Tok::Where => "`where`".into(),
            Tok::Data => "`data`".into(),
            Tok::Type => "`type`".into(),
            Tok::Let => "`let`".into(),
            Tok::In => "`in`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Backslash => "`\\`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::FocusOpen => "`<<`".into(),
            Tok::FocusClose => "`>>`".into(),
            Tok::Newline => "start of a new declaration".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub(crate) fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let mut seen_any = false;
    let mut line_has_token = false;

    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            line_has_token = false;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'-') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (start_line, start_col) = (line, col);
        if !line_has_token && col == 1 && seen_any {
            out.push(Spanned {
                tok: Tok::Newline,
                line,
                col,
            });
        }
        line_has_token = true;
        seen_any = true;

        let begin = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            let word: String = chars[begin..i].iter().collect();
            match word.as_str() {
                "module" => Tok::Module,
                "where" => Tok::Where,
                "data" => Tok::Data,
                "type" => Tok::Type,
                "let" => Tok::Let,
                "in" => Tok::In,
                _ if c.is_ascii_uppercase() => Tok::ConId(word),
                _ => Tok::VarId(word),
            }
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[begin..i].iter().collect();
            Tok::Int(digits.parse().expect("decimal digits"))
        } else if c == '"' {
            i += 1;
            while i < chars.len() && chars[i] != '"' && chars[i] != '\n' {
                i += 1;
            }
            if chars.get(i) != Some(&'"') {
                return Err(ParseError::syntax(
                    start_line,
                    start_col,
                    "unterminated string literal",
                ));
            }
            i += 1;
            Tok::Str(chars[begin + 1..i - 1].iter().collect())
        } else {
            let next = chars.get(i + 1).copied();
            let (tok, len) = match (c, next) {
                ('-', Some('>')) => (Tok::Arrow, 2),
                ('<', Some('<')) => (Tok::FocusOpen, 2),
                ('>', Some('>')) => (Tok::FocusClose, 2),
                ('=', _) => (Tok::Eq, 1),
                ('|', _) => (Tok::Bar, 1),
                ('\\', _) => (Tok::Backslash, 1),
                ('(', _) => (Tok::LParen, 1),
                (')', _) => (Tok::RParen, 1),
                _ => {
                    return Err(ParseError::syntax(
                        start_line,
                        start_col,
                        format!("unexpected character `{c}`"),
                    ))
                }
            };
            i += len;
            tok
        };
        col += i - begin;
        out.push(Spanned {
            tok,
            line: start_line,
            col: start_col,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}
