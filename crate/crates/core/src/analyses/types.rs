use num_bigint::BigInt;

use super::NameSet;
use crate::effect::{pure, run_identity, zero, Effect, Partial, SetUnion};
use crate::minilang::{Decl, Type};
use crate::strategy::{build, choice_tu, fail_tu, identity, TP, TU};
use crate::term::Data;
use crate::themes::{crush, topdown};

/// Adds one to every machine and unbounded integer.
pub fn increment<E: Effect>() -> TP<E> {
    topdown(
        identity()
            .adhoc(|n: i64| pure(n + 1))
            .adhoc(|n: BigInt| pure(n + 1)),
    )
}

pub fn inc_ints<T: Data>(t: T) -> T {
    run_identity(increment().apply_to(t))
}

/// Type constructor names at this node: the head of a `data` or `type`
/// declaration, or a constructor used in a type expression.
pub fn any_types<E: Effect>() -> TU<NameSet, E> {
    build(NameSet::new())
        .adhoc(|d: Decl| match d {
            Decl::Data(n, _) | Decl::TypeSyn(n, _) => pure(NameSet::from([n.0])),
            Decl::FunBind(..) => pure(NameSet::new()),
        })
        .adhoc(|t: Type| match t {
            Type::Con(n) => pure(NameSet::from([n.0])),
            _ => pure(NameSet::new()),
        })
}

/// Every type constructor name declared or used anywhere in `t`.
pub fn all_types<T: Data>(t: &T) -> NameSet {
    run_identity(crush(any_types(), SetUnion).apply_to(t.clone()))
}

pub fn is_fresh_type<T: Data>(name: &str, t: &T) -> bool {
    !all_types(t).contains(name)
}

/// The name declared by a `type` synonym; fails elsewhere.
pub fn type_con() -> TU<String, Partial> {
    fail_tu().adhoc(|d: Decl| match d {
        Decl::TypeSyn(n, _) => pure(n.0),
        _ => zero(),
    })
}

/// The name declared by a `data` declaration; fails elsewhere.
pub fn data_con() -> TU<String, Partial> {
    fail_tu().adhoc(|d: Decl| match d {
        Decl::Data(n, _) => pure(n.0),
        _ => zero(),
    })
}

/// The type name declared by any declaration that declares one.
pub fn dec_con() -> TU<String, Partial> {
    choice_tu(type_con(), data_con())
}
