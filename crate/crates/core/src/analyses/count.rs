use std::fmt;
use std::marker::PhantomData;

use crate::effect::{pure, run_identity, Effect, Sum};
use crate::minilang::Decl;
use crate::strategy::{build, TU};
use crate::term::{Data, TypeTag};
use crate::themes::crush;

/// Names a type as a value: a function from `T` to unit.
pub struct TypeToken<T>(PhantomData<fn(T)>);

impl<T: Data> TypeToken<T> {
    pub fn new() -> TypeToken<T> {
        TypeToken(PhantomData)
    }

    pub fn tag(&self) -> TypeTag {
        TypeTag::of::<T>()
    }

    /// Whether both tokens name the same type.
    pub fn same_as<U: Data>(&self, other: &TypeToken<U>) -> bool {
        self.tag() == other.tag()
    }
}

impl<T: Data> Default for TypeToken<T> {
    fn default() -> Self {
        TypeToken::new()
    }
}

impl<T> Clone for TypeToken<T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T> Copy for TypeToken<T> {}

impl<T: Data> fmt::Debug for TypeToken<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TypeToken<{}>", T::type_name())
    }
}

/// 1 on terms of the token's type, 0 elsewhere.
pub fn type_tick<T: Data, E: Effect>(_: TypeToken<T>) -> TU<usize, E> {
    build(0).adhoc(|_: T| pure(1))
}

/// Number of subterms of `t`, `t` included, whose type is `T`.
pub fn count_of_type<T: Data, U: Data>(token: TypeToken<T>, t: &U) -> usize {
    run_identity(crush(type_tick(token), Sum).apply_to(t.clone()))
}

pub fn count_decls<U: Data>(t: &U) -> usize {
    count_of_type(TypeToken::<Decl>::new(), t)
}
