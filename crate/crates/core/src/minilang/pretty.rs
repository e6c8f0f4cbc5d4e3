use std::fmt::{self, Write};

use super::ast::*;

/// Renders a module in the concrete syntax accepted by [`super::parse`],
/// one declaration per line.
pub fn pretty(m: &Module) -> String {
    m.to_string()
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "module {} where", self.name)?;
        for d in &self.decls {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Data(name, cons) => {
                write!(f, "data {name} =")?;
                for (i, c) in cons.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" |")?;
                    }
                    write!(f, " {c}")?;
                }
                Ok(())
            }
            Decl::TypeSyn(name, rhs) => write!(f, "type {name} = {rhs}"),
            Decl::FunBind(name, params, body) => {
                write!(f, "{name}")?;
                for p in params {
                    write!(f, " {p}")?;
                }
                write!(f, " = {body}")
            }
        }
    }
}

impl fmt::Display for ConDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        for t in &self.fields {
            f.write_char(' ')?;
            write_type(f, t, Prec::Atom)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Prec {
    Top,
    App,
    Atom,
}

fn write_type(f: &mut fmt::Formatter<'_>, t: &Type, ctx: Prec) -> fmt::Result {
    let own = match t {
        Type::Fun(..) => Prec::Top,
        Type::App(..) => Prec::App,
        _ => Prec::Atom,
    };
    if own < ctx {
        f.write_char('(')?;
        write_type(f, t, Prec::Top)?;
        return f.write_char(')');
    }
    match t {
        Type::Con(c) => write!(f, "{c}"),
        Type::Var(v) => write!(f, "{v}"),
        Type::App(a, b) => {
            write_type(f, a, Prec::App)?;
            f.write_char(' ')?;
            write_type(f, b, Prec::Atom)
        }
        Type::Fun(a, b) => {
            write_type(f, a, Prec::App)?;
            f.write_str(" -> ")?;
            write_type(f, b, Prec::Top)
        }
        Type::Focus(inner) => {
            f.write_str("<< ")?;
            write_type(f, inner, Prec::Top)?;
            f.write_str(" >>")
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_type(f, self, Prec::Top)
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr, ctx: Prec) -> fmt::Result {
    let own = match e {
        Expr::Let(..) | Expr::Lam(..) => Prec::Top,
        Expr::App(..) => Prec::App,
        _ => Prec::Atom,
    };
    if own < ctx {
        f.write_char('(')?;
        write_expr(f, e, Prec::Top)?;
        return f.write_char(')');
    }
    match e {
        Expr::Var(v) => write!(f, "{v}"),
        Expr::Con(c) => write!(f, "{c}"),
        Expr::Int(n) => write!(f, "{n}"),
        Expr::Str(s) => write!(f, "\"{s}\""),
        Expr::App(a, b) => {
            write_expr(f, a, Prec::App)?;
            f.write_char(' ')?;
            write_expr(f, b, Prec::Atom)
        }
        Expr::Lam(p, body) => {
            write!(f, "\\{p} -> ")?;
            write_expr(f, body, Prec::Top)
        }
        Expr::Let(x, bound, body) => {
            write!(f, "let {x} = ")?;
            write_expr(f, bound, Prec::Top)?;
            f.write_str(" in ")?;
            write_expr(f, body, Prec::Top)
        }
        Expr::Focus(inner) => {
            f.write_str("<< ")?;
            write_expr(f, inner, Prec::Top)?;
            f.write_str(" >>")
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self, Prec::Top)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Var(v) => write!(f, "{v}"),
            Pattern::Con(c, args) => {
                write!(f, "({c}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_char(')')
            }
        }
    }
}
