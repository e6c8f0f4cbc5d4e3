//! Direct recursive definitions over the syntax, written without
//! strategies, to check the generic analyses against.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use strategem::minilang::*;
use strategem::term::Term;

pub type Names = BTreeSet<String>;

/// All subterms in preorder, by explicit recursion over `children`.
pub fn preorder(t: &Term) -> Vec<Term> {
    let mut out = vec![t.clone()];
    for c in t.children() {
        out.extend(preorder(&c));
    }
    out
}

fn types_in_type(t: &Type, out: &mut Names) {
    match t {
        Type::Con(c) => {
            out.insert(c.0.clone());
        }
        Type::Var(_) => {}
        Type::App(a, b) | Type::Fun(a, b) => {
            types_in_type(a, out);
            types_in_type(b, out);
        }
        Type::Focus(a) => types_in_type(a, out),
    }
}

pub fn all_types(m: &Module) -> Names {
    let mut out = Names::new();
    for d in &m.decls {
        match d {
            Decl::Data(n, cons) => {
                out.insert(n.0.clone());
                for c in cons {
                    for f in &c.fields {
                        types_in_type(f, &mut out);
                    }
                }
            }
            Decl::TypeSyn(n, t) => {
                out.insert(n.0.clone());
                types_in_type(t, &mut out);
            }
            Decl::FunBind(..) => {}
        }
    }
    out
}

fn ints_in_expr(e: &Expr, out: &mut Vec<BigInt>) {
    match e {
        Expr::Int(n) => out.push(n.clone()),
        Expr::Var(_) | Expr::Con(_) | Expr::Str(_) => {}
        Expr::App(a, b) => {
            ints_in_expr(a, out);
            ints_in_expr(b, out);
        }
        Expr::Lam(_, b) | Expr::Focus(b) => ints_in_expr(b, out),
        Expr::Let(_, a, b) => {
            ints_in_expr(a, out);
            ints_in_expr(b, out);
        }
    }
}

/// Integer literals in source order.
pub fn ints(m: &Module) -> Vec<BigInt> {
    let mut out = Vec::new();
    for d in &m.decls {
        if let Decl::FunBind(_, _, e) = d {
            ints_in_expr(e, &mut out);
        }
    }
    out
}

fn count_expr(e: &Expr) -> usize {
    1 + match e {
        Expr::Var(_) | Expr::Con(_) | Expr::Int(_) | Expr::Str(_) => 0,
        Expr::App(a, b) | Expr::Let(_, a, b) => count_expr(a) + count_expr(b),
        Expr::Lam(_, b) | Expr::Focus(b) => count_expr(b),
    }
}

pub fn count_decls(m: &Module) -> usize {
    m.decls.len()
}

pub fn count_exprs(m: &Module) -> usize {
    m.decls
        .iter()
        .map(|d| match d {
            Decl::FunBind(_, _, e) => count_expr(e),
            _ => 0,
        })
        .sum()
}

fn count_type(t: &Type) -> usize {
    1 + match t {
        Type::Con(_) | Type::Var(_) => 0,
        Type::App(a, b) | Type::Fun(a, b) => count_type(a) + count_type(b),
        Type::Focus(a) => count_type(a),
    }
}

pub fn count_types(m: &Module) -> usize {
    m.decls
        .iter()
        .map(|d| match d {
            Decl::Data(_, cons) => cons.iter().flat_map(|c| &c.fields).map(count_type).sum(),
            Decl::TypeSyn(_, t) => count_type(t),
            Decl::FunBind(..) => 0,
        })
        .sum()
}

fn pattern_vars(p: &Pattern, out: &mut Names) {
    match p {
        Pattern::Var(x) => {
            out.insert(x.0.clone());
        }
        Pattern::Con(_, ps) => ps.iter().for_each(|p| pattern_vars(p, out)),
    }
}

pub fn free_vars(e: &Expr) -> Names {
    match e {
        Expr::Var(x) => Names::from([x.0.clone()]),
        Expr::Con(_) | Expr::Int(_) | Expr::Str(_) => Names::new(),
        Expr::App(a, b) => &free_vars(a) | &free_vars(b),
        Expr::Focus(a) => free_vars(a),
        Expr::Lam(p, b) => {
            let mut bound = Names::new();
            pattern_vars(p, &mut bound);
            &free_vars(b) - &bound
        }
        Expr::Let(x, a, b) => {
            let mut free = &free_vars(a) | &free_vars(b);
            free.remove(&x.0);
            free
        }
    }
}

pub fn module_free_vars(m: &Module) -> Names {
    let mut free = Names::new();
    let mut defined = Names::new();
    for d in &m.decls {
        if let Decl::FunBind(f, params, body) = d {
            defined.insert(f.0.clone());
            let mut bound = Names::new();
            params.iter().for_each(|p| pattern_vars(p, &mut bound));
            free.extend(&free_vars(body) - &bound);
        }
    }
    &free - &defined
}

fn strings_in_pattern(p: &Pattern, out: &mut Vec<String>) {
    match p {
        Pattern::Var(x) => out.push(x.0.clone()),
        Pattern::Con(c, ps) => {
            out.push(c.0.clone());
            ps.iter().for_each(|p| strings_in_pattern(p, out));
        }
    }
}

fn strings_in_type(t: &Type, out: &mut Vec<String>) {
    match t {
        Type::Con(c) => out.push(c.0.clone()),
        Type::Var(v) => out.push(v.0.clone()),
        Type::App(a, b) | Type::Fun(a, b) => {
            strings_in_type(a, out);
            strings_in_type(b, out);
        }
        Type::Focus(a) => strings_in_type(a, out),
    }
}

fn strings_in_expr(e: &Expr, out: &mut Vec<String>) {
    match e {
        Expr::Var(x) => out.push(x.0.clone()),
        Expr::Con(c) => out.push(c.0.clone()),
        Expr::Str(s) => out.push(s.clone()),
        Expr::Int(_) => {}
        Expr::App(a, b) => {
            strings_in_expr(a, out);
            strings_in_expr(b, out);
        }
        Expr::Lam(p, b) => {
            strings_in_pattern(p, out);
            strings_in_expr(b, out);
        }
        Expr::Let(x, a, b) => {
            out.push(x.0.clone());
            strings_in_expr(a, out);
            strings_in_expr(b, out);
        }
        Expr::Focus(a) => strings_in_expr(a, out),
    }
}

/// Every string in the module, names included, in preorder.
pub fn strings(m: &Module) -> Vec<String> {
    let mut out = vec![m.name.0.clone()];
    for d in &m.decls {
        match d {
            Decl::Data(n, cons) => {
                out.push(n.0.clone());
                for c in cons {
                    out.push(c.name.0.clone());
                    c.fields.iter().for_each(|t| strings_in_type(t, &mut out));
                }
            }
            Decl::TypeSyn(n, t) => {
                out.push(n.0.clone());
                strings_in_type(t, &mut out);
            }
            Decl::FunBind(f, ps, e) => {
                out.push(f.0.clone());
                ps.iter().for_each(|p| strings_in_pattern(p, &mut out));
                strings_in_expr(e, &mut out);
            }
        }
    }
    out
}

/// The `n`-th name of the renaming sequence: `"1"` followed by `n` primes.
pub fn primed(n: usize) -> String {
    format!("1{}", "'".repeat(n))
}
