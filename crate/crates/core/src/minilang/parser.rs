use super::ast::*;
use super::lexer::{lex, Spanned, Tok};
use super::{FocusKind, ParseError};

pub fn parse(src: &str) -> Result<Module, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        expr_focus: false,
        type_focus: false,
    };
    p.module()
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    expr_focus: bool,
    type_focus: bool,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        let t = &self.toks[self.pos];
        Err(ParseError::syntax(
            t.line,
            t.col,
            format!("expected {expected}, found {}", t.tok.describe()),
        ))
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(&tok.describe())
        }
    }

    fn con_id(&mut self) -> Result<ConName, ParseError> {
        match self.peek() {
            Tok::ConId(_) => match self.bump().tok {
                Tok::ConId(s) => Ok(ConName(s)),
                _ => unreachable!(),
            },
            _ => self.error("a constructor name"),
        }
    }

    fn var_id(&mut self) -> Result<VarName, ParseError> {
        match self.peek() {
            Tok::VarId(_) => match self.bump().tok {
                Tok::VarId(s) => Ok(VarName(s)),
                _ => unreachable!(),
            },
            _ => self.error("a variable name"),
        }
    }

    fn focus(&mut self, kind: FocusKind) -> Result<(), ParseError> {
        let t = &self.toks[self.pos];
        let seen = match kind {
            FocusKind::Expr => &mut self.expr_focus,
            FocusKind::Type => &mut self.type_focus,
        };
        if *seen {
            return Err(ParseError::MultipleFoci {
                kind,
                line: t.line,
                col: t.col,
            });
        }
        *seen = true;
        self.bump();
        Ok(())
    }

    fn module(&mut self) -> Result<Module, ParseError> {
        self.expect(Tok::Module)?;
        let name = self.con_id()?;
        self.expect(Tok::Where)?;
        let mut decls = Vec::new();
        loop {
            match self.peek() {
                Tok::Eof => break,
                Tok::Newline => {
                    self.bump();
                    decls.push(self.decl()?);
                }
                _ => return self.error("a declaration on a new line"),
            }
        }
        Ok(Module { name, decls })
    }

    fn decl(&mut self) -> Result<Decl, ParseError> {
        match self.peek() {
            Tok::Data => {
                self.bump();
                let name = self.con_id()?;
                self.expect(Tok::Eq)?;
                let mut cons = vec![self.con_decl()?];
                while *self.peek() == Tok::Bar {
                    self.bump();
                    cons.push(self.con_decl()?);
                }
                Ok(Decl::Data(name, cons))
            }
            Tok::Type => {
                self.bump();
                let name = self.con_id()?;
                self.expect(Tok::Eq)?;
                Ok(Decl::TypeSyn(name, self.ty()?))
            }
            Tok::VarId(_) => {
                let name = self.var_id()?;
                let mut params = Vec::new();
                while *self.peek() != Tok::Eq {
                    params.push(self.pattern()?);
                }
                self.bump();
                Ok(Decl::FunBind(name, params, self.expr()?))
            }
            _ => self.error("`data`, `type` or a function binding"),
        }
    }

    fn con_decl(&mut self) -> Result<ConDecl, ParseError> {
        let name = self.con_id()?;
        let mut fields = Vec::new();
        while starts_atype(self.peek()) {
            fields.push(self.atype()?);
        }
        Ok(ConDecl { name, fields })
    }

    fn ty(&mut self) -> Result<Type, ParseError> {
        let mut t = self.atype()?;
        while starts_atype(self.peek()) {
            t = Type::app(t, self.atype()?);
        }
        if *self.peek() == Tok::Arrow {
            self.bump();
            t = Type::fun(t, self.ty()?);
        }
        Ok(t)
    }

    fn atype(&mut self) -> Result<Type, ParseError> {
        match self.peek() {
            Tok::ConId(_) => Ok(Type::Con(self.con_id()?)),
            Tok::VarId(_) => Ok(Type::Var(self.var_id()?)),
            Tok::LParen => {
                self.bump();
                let t = self.ty()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::FocusOpen => {
                self.focus(FocusKind::Type)?;
                let t = self.ty()?;
                self.expect(Tok::FocusClose)?;
                Ok(Type::focus(t))
            }
            _ => self.error("a type"),
        }
    }

    fn pattern(&mut self) -> Result<Pattern, ParseError> {
        match self.peek() {
            Tok::VarId(_) => Ok(Pattern::Var(self.var_id()?)),
            Tok::LParen => {
                self.bump();
                let con = self.con_id()?;
                let mut args = Vec::new();
                while *self.peek() != Tok::RParen {
                    args.push(self.pattern()?);
                }
                self.bump();
                Ok(Pattern::Con(con, args))
            }
            _ => self.error("a pattern"),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::Let => {
                self.bump();
                let x = self.var_id()?;
                self.expect(Tok::Eq)?;
                let bound = self.expr()?;
                self.expect(Tok::In)?;
                let body = self.expr()?;
                Ok(Expr::Let(x, Box::new(bound), Box::new(body)))
            }
            Tok::Backslash => {
                self.bump();
                let p = self.pattern()?;
                self.expect(Tok::Arrow)?;
                Ok(Expr::lam(p, self.expr()?))
            }
            _ => {
                let mut e = self.aexpr()?;
                while starts_aexpr(self.peek()) {
                    e = Expr::app(e, self.aexpr()?);
                }
                Ok(e)
            }
        }
    }

    fn aexpr(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Tok::VarId(_) => Ok(Expr::Var(self.var_id()?)),
            Tok::ConId(_) => Ok(Expr::Con(self.con_id()?)),
            Tok::Int(_) | Tok::Str(_) => match self.bump().tok {
                Tok::Int(n) => Ok(Expr::Int(n)),
                Tok::Str(s) => Ok(Expr::Str(s)),
                _ => unreachable!(),
            },
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::FocusOpen => {
                self.focus(FocusKind::Expr)?;
                let e = self.expr()?;
                self.expect(Tok::FocusClose)?;
                Ok(Expr::focus(e))
            }
            _ => self.error("an expression"),
        }
    }
}

fn starts_atype(t: &Tok) -> bool {
    matches!(
        t,
        Tok::ConId(_) | Tok::VarId(_) | Tok::LParen | Tok::FocusOpen
    )
}

fn starts_aexpr(t: &Tok) -> bool {
    matches!(
        t,
        Tok::ConId(_) | Tok::VarId(_) | Tok::Int(_) | Tok::Str(_) | Tok::LParen | Tok::FocusOpen
    )
}
