use std::fmt;

use num_bigint::BigInt;

use crate::Data;

/// A value-level name: variables, functions, type variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Data)]
pub struct VarName(pub String);

/// A capitalized name: modules, types, data constructors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Data)]
pub struct ConName(pub String);

impl VarName {
    pub fn new(name: impl Into<String>) -> VarName {
        VarName(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl ConName {
    pub fn new(name: impl Into<String>) -> ConName {
        ConName(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for ConName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Data)]
pub struct Module {
    pub name: ConName,
    pub decls: Vec<Decl>,
}

#[derive(Debug, Clone, PartialEq, Eq, Data)]
pub enum Decl {
    /// `data N = C T* | ...`; the constructor list is never empty.
    Data(ConName, Vec<ConDecl>),
    /// `type N = T`
    TypeSyn(ConName, Type),
    /// `f p* = e`
    FunBind(VarName, Vec<Pattern>, Expr),
}

#[derive(Debug, Clone, PartialEq, Eq, Data)]
pub struct ConDecl {
    pub name: ConName,
    pub fields: Vec<Type>,
}

#[derive(Debug, Clone, PartialEq, Eq, Data)]
pub enum Type {
    Con(ConName),
    Var(VarName),
    App(Box<Type>, Box<Type>),
    Fun(Box<Type>, Box<Type>),
    Focus(Box<Type>),
}

#[derive(Debug, Clone, PartialEq, Eq, Data)]
pub enum Expr {
    Var(VarName),
    Con(ConName),
    Int(BigInt),
    Str(String),
    App(Box<Expr>, Box<Expr>),
    Lam(Pattern, Box<Expr>),
    /// Recursive: the binder scopes over both the bound expression and the
    /// body.
    Let(VarName, Box<Expr>, Box<Expr>),
    Focus(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Data)]
pub enum Pattern {
    Var(VarName),
    Con(ConName, Vec<Pattern>),
}

impl Module {
    pub fn new(name: impl Into<String>, decls: Vec<Decl>) -> Module {
        Module {
            name: ConName::new(name),
            decls,
        }
    }
}

impl Type {
    pub fn con(name: impl Into<String>) -> Type {
        Type::Con(ConName::new(name))
    }

    pub fn var(name: impl Into<String>) -> Type {
        Type::Var(VarName::new(name))
    }

    pub fn app(f: Type, x: Type) -> Type {
        Type::App(Box::new(f), Box::new(x))
    }

    pub fn fun(a: Type, b: Type) -> Type {
        Type::Fun(Box::new(a), Box::new(b))
    }

    pub fn focus(t: Type) -> Type {
        Type::Focus(Box::new(t))
    }
}

impl Expr {
    pub fn var(name: impl Into<String>) -> Expr {
        Expr::Var(VarName::new(name))
    }

    pub fn con(name: impl Into<String>) -> Expr {
        Expr::Con(ConName::new(name))
    }

    pub fn int(n: impl Into<BigInt>) -> Expr {
        Expr::Int(n.into())
    }

    pub fn str(s: impl Into<String>) -> Expr {
        Expr::Str(s.into())
    }

    pub fn app(f: Expr, x: Expr) -> Expr {
        Expr::App(Box::new(f), Box::new(x))
    }

    /// Left-nested application of `f` to `args`.
    pub fn apps(f: Expr, args: impl IntoIterator<Item = Expr>) -> Expr {
        args.into_iter().fold(f, Expr::app)
    }

    pub fn lam(p: Pattern, body: Expr) -> Expr {
        Expr::Lam(p, Box::new(body))
    }

    pub fn let_(x: impl Into<String>, bound: Expr, body: Expr) -> Expr {
        Expr::Let(VarName::new(x), Box::new(bound), Box::new(body))
    }

    pub fn focus(e: Expr) -> Expr {
        Expr::Focus(Box::new(e))
    }
}

impl Pattern {
    pub fn var(name: impl Into<String>) -> Pattern {
        Pattern::Var(VarName::new(name))
    }

    pub fn con(name: impl Into<String>, args: Vec<Pattern>) -> Pattern {
        Pattern::Con(ConName::new(name), args)
    }
}
