use thiserror::Error;

use crate::effect::{pure, run_partial, zero, Partial};
use crate::minilang::{ConName, Decl, Expr, Module, Type};
use crate::strategy::{fail_tp, fail_tu, TU};
use crate::themes::{once_td, select};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("NoFocus: no focus found")]
pub struct NoFocus;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AliasError {
    #[error("NoFocus: the module has no type focus")]
    NoFocus,
    #[error("NoSuchAlias: no type synonym named `{0}`")]
    NoSuchAlias(String),
    #[error("GuardFailed: focused type `{focused}` differs from `{alias}` = `{rhs}`")]
    GuardFailed {
        focused: Type,
        alias: String,
        rhs: Type,
    },
}

impl AliasError {
    /// The name of the failing pipeline stage.
    pub fn kind(&self) -> &'static str {
        match self {
            AliasError::NoFocus => "NoFocus",
            AliasError::NoSuchAlias(_) => "NoSuchAlias",
            AliasError::GuardFailed { .. } => "GuardFailed",
        }
    }
}

/// The contents of an expression focus; fails on every other node.
pub fn get_focus() -> TU<Expr, Partial> {
    fail_tu().adhoc(|e: Expr| match e {
        Expr::Focus(inner) => pure(*inner),
        _ => zero(),
    })
}

/// The contents of a type focus; fails on every other node.
pub fn get_type_focus() -> TU<Type, Partial> {
    fail_tu().adhoc(|t: Type| match t {
        Type::Focus(inner) => pure(*inner),
        _ => zero(),
    })
}

pub fn select_focus(m: &Module) -> Result<Expr, NoFocus> {
    run_partial(select(get_focus()).apply_to(m.clone())).ok_or(NoFocus)
}

pub fn select_type_focus(m: &Module) -> Result<Type, NoFocus> {
    run_partial(select(get_type_focus()).apply_to(m.clone())).ok_or(NoFocus)
}

/// The right-hand side of the first `type name = ...` declaration.
pub fn get_alias(name: &str, m: &Module) -> Option<Type> {
    let name = name.to_string();
    let step: TU<Type, Partial> = fail_tu().adhoc(move |d: Decl| match d {
        Decl::TypeSyn(n, rhs) if n.0 == name => pure(rhs),
        _ => zero(),
    });
    run_partial(select(step).apply_to(m.clone()))
}

/// Replaces the type focus, marker included, by the constructor `name`.
pub fn replace_type_focus(name: &str, m: &Module) -> Result<Module, NoFocus> {
    let name = ConName::new(name);
    let step = fail_tp().adhoc(move |t: Type| match t {
        Type::Focus(_) => pure(Type::Con(name.clone())),
        _ => zero(),
    });
    run_partial(once_td(step).apply_to(m.clone())).ok_or(NoFocus)
}

/// Replaces the focused type expression by `name`, provided `name` is a
/// synonym for exactly that type.
pub fn to_alias(name: &str, m: &Module) -> Result<Module, AliasError> {
    let focused = select_type_focus(m).map_err(|_| AliasError::NoFocus)?;
    let rhs = get_alias(name, m).ok_or_else(|| AliasError::NoSuchAlias(name.to_string()))?;
    if focused != rhs {
        return Err(AliasError::GuardFailed {
            focused,
            alias: name.to_string(),
            rhs,
        });
    }
    replace_type_focus(name, m).map_err(|_| AliasError::NoFocus)
}
