//! Universal representation of typed terms.
//!
//! Every value of a datatype implementing [`Data`] can be wrapped into a
//! [`Term`]: a shared, immutable handle that knows its runtime type, its
//! outermost constructor and how to split itself into immediate children and
//! put itself back together. Strategies never see concrete types except
//! through `adhoc` customization, which uses [`Term::downcast_ref`].
//!
//! Implementations of [`Data`] are normally generated with
//! `#[derive(Data)]`; the standard primitives and containers are covered
//! here.

use std::any::{Any, TypeId};
use std::borrow::Cow;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;

use crate::registry::{RegistryBuilder, RegistryError};

pub use crate::registry::{ConstructorDesc, Descriptor, Shape};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("constructor {constructor} expects {expected} children, got {found}")]
    ArityMismatch {
        constructor: String,
        expected: usize,
        found: usize,
    },
    #[error(
        "child {position} of constructor {constructor} must be of type {expected}, got {found}"
    )]
    ChildTypeMismatch {
        constructor: String,
        position: usize,
        expected: String,
        found: String,
    },
}

/// Identity of a concrete datatype.
///
/// Natively registered Rust types are identified by their `TypeId`;
/// datatypes registered from a textual descriptor are identified by name.
#[derive(Clone)]
pub struct TypeTag(TagRepr);

#[derive(Clone)]
enum TagRepr {
    Native {
        id: TypeId,
        name: fn() -> Cow<'static, str>,
    },
    Dynamic(Arc<str>),
}

impl TypeTag {
    pub fn of<T: Data>() -> TypeTag {
        TypeTag(TagRepr::Native {
            id: TypeId::of::<T>(),
            name: T::type_name,
        })
    }

    pub(crate) fn dynamic(name: &str) -> TypeTag {
        TypeTag(TagRepr::Dynamic(Arc::from(name)))
    }

    pub fn name(&self) -> Cow<'static, str> {
        match &self.0 {
            TagRepr::Native { name, .. } => name(),
            TagRepr::Dynamic(name) => Cow::Owned(name.to_string()),
        }
    }

    pub fn is_native(&self) -> bool {
        matches!(self.0, TagRepr::Native { .. })
    }
}

impl PartialEq for TypeTag {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (TagRepr::Native { id: a, .. }, TagRepr::Native { id: b, .. }) => a == b,
            (TagRepr::Dynamic(a), TagRepr::Dynamic(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for TypeTag {}

impl Hash for TypeTag {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            TagRepr::Native { id, .. } => {
                0u8.hash(state);
                id.hash(state);
            }
            TagRepr::Dynamic(name) => {
                1u8.hash(state);
                name.hash(state);
            }
        }
    }
}

impl fmt::Debug for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TypeTag({})", self.name())
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Static constructor information reported by a [`Data`] value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constructor {
    pub index: usize,
    pub name: &'static str,
    pub arity: usize,
}

/// The outermost constructor of a term, qualified by its datatype.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructorTag {
    pub owner: TypeTag,
    pub index: usize,
    pub name: Cow<'static, str>,
    pub arity: usize,
}

/// A datatype whose values can be handled generically.
///
/// `children` lists the immediate subterms in field order; `rebuild` keeps
/// the constructor of `self` and replaces the fields by `kids`. Primitive
/// atoms have a single nullary constructor and no children.
pub trait Data: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn type_name() -> Cow<'static, str>;

    fn descriptor() -> Descriptor;

    fn constructor(&self) -> Constructor;

    fn children(&self) -> Vec<Term>;

    fn rebuild(&self, kids: Vec<Term>) -> Result<Self, TermError>;

    /// Registers the datatypes of all fields (not `Self`).
    fn register_fields(registry: &mut RegistryBuilder) -> Result<(), RegistryError>;

    fn type_tag() -> TypeTag {
        TypeTag::of::<Self>()
    }
}

pub(crate) trait Datum: Send + Sync + 'static {
    fn type_tag(&self) -> TypeTag;
    fn constructor(&self) -> ConstructorTag;
    fn children(&self) -> Vec<Term>;
    fn rebuild(&self, kids: Vec<Term>) -> Result<Term, TermError>;
    /// The datum itself, for recovering its implementing type.
    fn as_any(&self) -> &dyn Any;
    /// The native Rust value this datum stands for, if any.
    fn value(&self) -> Option<&dyn Any>;
    fn into_value(self: Arc<Self>) -> Option<Box<dyn Any>>;
    fn structural_eq(&self, other: &Term) -> bool;
    fn debug(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
}

struct Native<T>(T);

impl<T: Data> Datum for Native<T> {
    fn type_tag(&self) -> TypeTag {
        TypeTag::of::<T>()
    }

    fn constructor(&self) -> ConstructorTag {
        let c = self.0.constructor();
        ConstructorTag {
            owner: TypeTag::of::<T>(),
            index: c.index,
            name: Cow::Borrowed(c.name),
            arity: c.arity,
        }
    }

    fn children(&self) -> Vec<Term> {
        self.0.children()
    }

    fn rebuild(&self, kids: Vec<Term>) -> Result<Term, TermError> {
        self.0.rebuild(kids).map(Term::new)
    }

    fn as_any(&self) -> &dyn Any {
        self
    }

    fn value(&self) -> Option<&dyn Any> {
        Some(&self.0)
    }

    fn into_value(self: Arc<Self>) -> Option<Box<dyn Any>> {
        Some(Box::new(match Arc::try_unwrap(self) {
            Ok(Native(v)) => v,
            Err(shared) => shared.0.clone(),
        }))
    }

    fn structural_eq(&self, other: &Term) -> bool {
        other.downcast_ref::<T>().is_some_and(|v| *v == self.0)
    }

    fn debug(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

/// A typed value of some registered datatype, viewed generically.
///
/// Cloning is cheap. Equality is structural: same datatype, same
/// constructor, pairwise equal children (atoms compare by value).
#[derive(Clone)]
pub struct Term(Arc<dyn Datum>);

impl Term {
    pub fn new<T: Data>(value: T) -> Term {
        Term(Arc::new(Native(value)))
    }

    pub(crate) fn from_datum(datum: Arc<dyn Datum>) -> Term {
        Term(datum)
    }

    pub fn type_of(&self) -> TypeTag {
        self.0.type_tag()
    }

    pub fn constructor(&self) -> ConstructorTag {
        self.0.constructor()
    }

    pub fn children(&self) -> Vec<Term> {
        self.0.children()
    }

    /// Rebuilds a term with the outermost constructor of `self` and the
    /// given children.
    pub fn rebuild(&self, kids: Vec<Term>) -> Result<Term, TermError> {
        self.0.rebuild(kids)
    }

    pub fn is<T: Data>(&self) -> bool {
        self.type_of() == TypeTag::of::<T>()
    }

    pub fn downcast_ref<T: Data>(&self) -> Option<&T> {
        if !self.is::<T>() {
            return None;
        }
        self.0.value()?.downcast_ref::<T>()
    }

    /// Casts back to a concrete type; absent unless `T` is the term's type.
    pub fn cast<T: Data>(&self) -> Option<T> {
        self.downcast_ref::<T>().cloned()
    }

    /// Like [`Term::cast`], but avoids the clone when this handle is the
    /// only reference to the value.
    pub fn into_value<T: Data>(self) -> Result<T, Term> {
        if !self.is::<T>() {
            return Err(self);
        }
        let value = self
            .0
            .into_value()
            .expect("native type tags belong to native values");
        Ok(*value
            .downcast::<T>()
            .unwrap_or_else(|_| unreachable!("type checked above")))
    }

    /// Preorder enumeration of this term and all its subterms.
    pub fn preorder(&self) -> Vec<Term> {
        let mut out = Vec::new();
        let mut stack = vec![self.clone()];
        while let Some(t) = stack.pop() {
            let kids = t.children();
            out.push(t);
            stack.extend(kids.into_iter().rev());
        }
        out
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        self.0.structural_eq(other)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.debug(f)
    }
}

impl<T: Data> From<T> for Term {
    fn from(value: T) -> Self {
        Term::new(value)
    }
}

/// Consumes the children passed to [`Data::rebuild`], checking arity and
/// field types. Used by derived implementations.
pub struct Kids {
    constructor: &'static str,
    position: usize,
    kids: std::vec::IntoIter<Term>,
}

impl Kids {
    pub fn new(constructor: Constructor, kids: Vec<Term>) -> Result<Kids, TermError> {
        if kids.len() != constructor.arity {
            return Err(TermError::ArityMismatch {
                constructor: constructor.name.to_string(),
                expected: constructor.arity,
                found: kids.len(),
            });
        }
        Ok(Kids {
            constructor: constructor.name,
            position: 0,
            kids: kids.into_iter(),
        })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn next<T: Data>(&mut self) -> Result<T, TermError> {
        let kid = self.next_term::<T>()?;
        Ok(kid
            .into_value::<T>()
            .unwrap_or_else(|_| unreachable!("type checked")))
    }

    /// The next child, checked to be of type `T` but left as a term.
    fn next_term<T: Data>(&mut self) -> Result<Term, TermError> {
        let position = self.position;
        self.position += 1;
        let kid = self.kids.next().ok_or_else(|| TermError::ArityMismatch {
            constructor: self.constructor.to_string(),
            expected: position + 1,
            found: position,
        })?;
        if !kid.is::<T>() {
            return Err(TermError::ChildTypeMismatch {
                constructor: self.constructor.to_string(),
                position,
                expected: T::type_name().into_owned(),
                found: kid.type_of().name().into_owned(),
            });
        }
        Ok(kid)
    }
}

macro_rules! atom {
    ($ty:ty, $name:literal) => {
        impl Data for $ty {
            fn type_name() -> Cow<'static, str> {
                Cow::Borrowed($name)
            }

            fn descriptor() -> Descriptor {
                Descriptor::primitive($name)
            }

            fn constructor(&self) -> Constructor {
                Constructor {
                    index: 0,
                    name: $name,
                    arity: 0,
                }
            }

            fn children(&self) -> Vec<Term> {
                Vec::new()
            }

            fn rebuild(&self, kids: Vec<Term>) -> Result<Self, TermError> {
                Kids::new(self.constructor(), kids)?;
                Ok(self.clone())
            }

            fn register_fields(_: &mut RegistryBuilder) -> Result<(), RegistryError> {
                Ok(())
            }
        }
    };
}

atom!(bool, "Bool");
atom!(char, "Char");
atom!(i32, "Int32");
atom!(i64, "Int");
atom!(u64, "Word");
atom!(usize, "Size");
atom!(String, "String");
atom!(BigInt, "Integer");
atom!((), "()");

impl<T: Data> Data for Vec<T> {
    fn type_name() -> Cow<'static, str> {
        Cow::Owned(format!("[{}]", T::type_name()))
    }

    fn descriptor() -> Descriptor {
        let name = Self::type_name().into_owned();
        Descriptor::algebraic(
            &name,
            vec![
                ConstructorDesc::new("Nil", vec![]),
                ConstructorDesc::new("Cons", vec![T::type_name().into_owned(), name.clone()]),
            ],
        )
    }

    fn constructor(&self) -> Constructor {
        if self.is_empty() {
            NIL
        } else {
            CONS
        }
    }

    fn children(&self) -> Vec<Term> {
        match self.split_first() {
            None => Vec::new(),
            Some((head, tail)) => vec![Term::new(head.clone()), List::slice(Arc::from(tail), 0)],
        }
    }

    fn rebuild(&self, kids: Vec<Term>) -> Result<Self, TermError> {
        let mut kids = Kids::new(self.constructor(), kids)?;
        if self.is_empty() {
            return Ok(Vec::new());
        }
        let head = kids.next::<T>()?;
        let tail = kids.next::<Vec<T>>()?;
        let mut out = Vec::with_capacity(tail.len() + 1);
        out.push(head);
        out.extend(tail);
        Ok(out)
    }

    fn register_fields(registry: &mut RegistryBuilder) -> Result<(), RegistryError> {
        registry.register::<T>()?;
        Ok(())
    }
}

const NIL: Constructor = Constructor {
    index: 0,
    name: "Nil",
    arity: 0,
};

const CONS: Constructor = Constructor {
    index: 1,
    name: "Cons",
    arity: 2,
};

/// A list term that shares structure with the list it was taken from.
///
/// Tails produced by decomposition are views into one shared slice, and
/// rebuilt cells keep their tail as a term. The `Vec` is assembled, once,
/// only when something asks for the concrete value.
struct List<T> {
    repr: ListRepr<T>,
    value: OnceLock<Vec<T>>,
}

enum ListRepr<T> {
    Slice { items: Arc<[T]>, start: usize },
    Cons { head: T, tail: Term },
}

impl<T: Data> List<T> {
    fn slice(items: Arc<[T]>, start: usize) -> Term {
        Term(Arc::new(List {
            repr: ListRepr::Slice { items, start },
            value: OnceLock::new(),
        }))
    }

    fn cons(head: T, tail: Term) -> Term {
        Term(Arc::new(List {
            repr: ListRepr::Cons { head, tail },
            value: OnceLock::new(),
        }))
    }

    fn is_nil(&self) -> bool {
        matches!(&self.repr, ListRepr::Slice { items, start } if *start == items.len())
    }

    fn assemble(&self) -> Vec<T> {
        let mut out = Vec::new();
        let mut cell = self;
        loop {
            if let Some(v) = cell.value.get() {
                out.extend_from_slice(v);
                return out;
            }
            match &cell.repr {
                ListRepr::Slice { items, start } => {
                    out.extend_from_slice(&items[*start..]);
                    return out;
                }
                ListRepr::Cons { head, tail } => {
                    out.push(head.clone());
                    match tail.0.as_any().downcast_ref::<List<T>>() {
                        Some(next) => cell = next,
                        None => {
                            out.extend_from_slice(
                                tail.downcast_ref::<Vec<T>>().expect("list tails are lists"),
                            );
                            return out;
                        }
                    }
                }
            }
        }
    }

    fn get(&self) -> &Vec<T> {
        self.value.get_or_init(|| self.assemble())
    }
}

impl<T: Data> Datum for List<T> {
    fn type_tag(&self) -> TypeTag {
        TypeTag::of::<Vec<T>>()
    }

    fn constructor(&self) -> ConstructorTag {
        let c = if self.is_nil() { NIL } else { CONS };
        ConstructorTag {
            owner: TypeTag::of::<Vec<T>>(),
            index: c.index,
            name: Cow::Borrowed(c.name),
            arity: c.arity,
        }
    }

    fn children(&self) -> Vec<Term> {
        match &self.repr {
            ListRepr::Slice { items, start } if *start < items.len() => {
                vec![
                    Term::new(items[*start].clone()),
                    List::slice(items.clone(), start + 1),
                ]
            }
            ListRepr::Slice { .. } => Vec::new(),
            ListRepr::Cons { head, tail } => vec![Term::new(head.clone()), tail.clone()],
        }
    }

    fn rebuild(&self, kids: Vec<Term>) -> Result<Term, TermError> {
        let mut kids = Kids::new(if self.is_nil() { NIL } else { CONS }, kids)?;
        if self.is_nil() {
            return Ok(Term::new(Vec::<T>::new()));
        }
        let head = kids.next::<T>()?;
        let tail = kids.next_term::<Vec<T>>()?;
        Ok(List::cons(head, tail))
    }

    fn as_any(&self) -> &dyn Any {
        self
    }

    fn value(&self) -> Option<&dyn Any> {
        Some(self.get())
    }

    fn into_value(self: Arc<Self>) -> Option<Box<dyn Any>> {
        Some(Box::new(match Arc::try_unwrap(self) {
            Ok(list) => match list.value.get() {
                Some(_) => list.value.into_inner().unwrap_or_default(),
                None => list.assemble(),
            },
            Err(shared) => shared.get().clone(),
        }))
    }

    fn structural_eq(&self, other: &Term) -> bool {
        other
            .downcast_ref::<Vec<T>>()
            .is_some_and(|v| v == self.get())
    }

    fn debug(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self.get(), f)
    }
}

impl<T: Data> Data for Option<T> {
    fn type_name() -> Cow<'static, str> {
        Cow::Owned(format!("Maybe<{}>", T::type_name()))
    }

    fn descriptor() -> Descriptor {
        Descriptor::algebraic(
            &Self::type_name(),
            vec![
                ConstructorDesc::new("Nothing", vec![]),
                ConstructorDesc::new("Just", vec![T::type_name().into_owned()]),
            ],
        )
    }

    fn constructor(&self) -> Constructor {
        match self {
            None => Constructor {
                index: 0,
                name: "Nothing",
                arity: 0,
            },
            Some(_) => Constructor {
                index: 1,
                name: "Just",
                arity: 1,
            },
        }
    }

    fn children(&self) -> Vec<Term> {
        self.iter().map(|v| Term::new(v.clone())).collect()
    }

    fn rebuild(&self, kids: Vec<Term>) -> Result<Self, TermError> {
        let mut kids = Kids::new(self.constructor(), kids)?;
        match self {
            None => Ok(None),
            Some(_) => Ok(Some(kids.next::<T>()?)),
        }
    }

    fn register_fields(registry: &mut RegistryBuilder) -> Result<(), RegistryError> {
        registry.register::<T>()?;
        Ok(())
    }
}

macro_rules! tuple {
    ($con:literal; $($ty:ident . $idx:tt),+) => {
        impl<$($ty: Data),+> Data for ($($ty,)+) {
            fn type_name() -> Cow<'static, str> {
                let parts: Vec<String> = vec![$($ty::type_name().into_owned()),+];
                Cow::Owned(format!("({})", parts.join(",")))
            }

            fn descriptor() -> Descriptor {
                Descriptor::algebraic(
                    &Self::type_name(),
                    vec![ConstructorDesc::new($con, vec![$($ty::type_name().into_owned()),+])],
                )
            }

            fn constructor(&self) -> Constructor {
                Constructor {
                    index: 0,
                    name: $con,
                    arity: [$(stringify!($ty)),+].len(),
                }
            }

            fn children(&self) -> Vec<Term> {
                vec![$(Term::new(self.$idx.clone())),+]
            }

            fn rebuild(&self, kids: Vec<Term>) -> Result<Self, TermError> {
                let mut kids = Kids::new(self.constructor(), kids)?;
                Ok(($(kids.next::<$ty>()?,)+))
            }

            fn register_fields(registry: &mut RegistryBuilder) -> Result<(), RegistryError> {
                $(registry.register::<$ty>()?;)+
                Ok(())
            }
        }
    };
}

tuple!("(,)"; A.0, B.1);
tuple!("(,,)"; A.0, B.1, C.2);
tuple!("(,,,)"; A.0, B.1, C.2, D.3);
