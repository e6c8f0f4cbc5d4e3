use super::focus::NoFocus;
use super::NameSet;
use crate::effect::{pure, run_identity, run_partial, zero, Effect, Identity, Partial, SetUnion};
use crate::minilang::{Decl, Expr, Module, Pattern, Type};
use crate::strategy::{all_tu, build, fail_tu, let_tu, TU};
use crate::term::Data;
use crate::themes::{crush, free_names, selectenv};

/// Variables bound by a pattern.
pub fn pattern_vars(p: &Pattern) -> NameSet {
    let step: TU<NameSet, Identity> = build(NameSet::new()).adhoc(|p: Pattern| match p {
        Pattern::Var(x) => pure(NameSet::from([x.0])),
        Pattern::Con(..) => pure(NameSet::new()),
    });
    run_identity(crush(step, SetUnion).apply_to(p.clone()))
}

fn refs<E: Effect>() -> TU<NameSet, E> {
    build(NameSet::new()).adhoc(|e: Expr| match e {
        Expr::Var(x) => pure(NameSet::from([x.0])),
        _ => pure(NameSet::new()),
    })
}

fn decs<E: Effect>() -> TU<NameSet, E> {
    build(NameSet::new())
        .adhoc(|e: Expr| match e {
            Expr::Lam(p, _) => pure(pattern_vars(&p)),
            Expr::Let(x, ..) => pure(NameSet::from([x.0])),
            _ => pure(NameSet::new()),
        })
        .adhoc(|d: Decl| match d {
            Decl::FunBind(_, params, _) => pure(params.iter().flat_map(pattern_vars).collect()),
            _ => pure(NameSet::new()),
        })
        .adhoc(|m: Module| {
            pure(
                m.decls
                    .iter()
                    .filter_map(|d| match d {
                        Decl::FunBind(f, ..) => Some(f.0.clone()),
                        _ => None,
                    })
                    .collect(),
            )
        })
}

fn free_vars_strategy() -> TU<NameSet, Identity> {
    TU::fix(|this| {
        let_tu(decs(), move |declared| {
            let below = all_tu(this.clone(), SetUnion);
            let_tu(refs(), move |referenced| {
                let declared = declared.clone();
                let_tu(below.clone(), move |below| {
                    let mut free: NameSet = referenced.union(&below).cloned().collect();
                    free.retain(|x| !declared.contains(x));
                    build(free)
                })
            })
        })
    })
}

/// Value variables referenced in `t` but not bound within it. `let` is
/// recursive; function names are bound at module level.
pub fn free_vars<T: Data>(t: &T) -> NameSet {
    run_identity(free_vars_strategy().apply_to(t.clone()))
}

/// Type variables occurring in `t`. No construct binds type variables, so
/// every occurrence is free.
pub fn free_type_vars<T: Data>(t: &T) -> NameSet {
    let refs: TU<NameSet, Identity> = build(NameSet::new()).adhoc(|t: Type| match t {
        Type::Var(v) => pure(NameSet::from([v.0])),
        _ => pure(NameSet::new()),
    });
    run_identity(free_names(refs, build(NameSet::new())).apply_to(t.clone()))
}

fn bind(env: &NameSet) -> TU<NameSet, Partial> {
    let env = env.clone();
    let_tu(decs(), move |new| build(env.union(&new).cloned().collect()))
}

fn scope_at_focus(env: &NameSet) -> TU<NameSet, Partial> {
    let env = env.clone();
    fail_tu().adhoc(move |e: Expr| match e {
        Expr::Focus(_) => pure(env.clone()),
        _ => zero(),
    })
}

/// The variables in scope at the expression focus of `m`.
pub fn focus_scope(m: &Module) -> Result<NameSet, NoFocus> {
    let s = selectenv(NameSet::new(), bind, scope_at_focus);
    run_partial(s.apply_to(m.clone())).ok_or(NoFocus)
}
