//! Datatype descriptors and the registry of datatypes available to generic
//! operations.
//!
//! A registry is populated once (usually by `register::<T>()`, which pulls
//! in every datatype reachable from `T`) and then frozen. Freezing checks
//! closure: every field type named by a registered constructor must itself
//! be registered.
//!
//! Descriptors also have a line-oriented textual form,
//!
//! ```text
//! List.Nil :
//! List.Cons : Int List
//! ```
//!
//! one line per constructor (`TypeName.ConName : FieldType*`). Datatypes
//! registered from text have no Rust counterpart; their values are built
//! with [`Registry::construct`] and traverse like any other term.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::term::{ConstructorTag, Data, Datum, Term, TermError, TypeTag};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructorDesc {
    pub name: String,
    pub fields: Vec<String>,
}

impl ConstructorDesc {
    pub fn new(name: &str, fields: Vec<String>) -> ConstructorDesc {
        ConstructorDesc {
            name: name.to_string(),
            fields,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    /// Atoms such as integers and strings: leaves without constructors.
    Primitive,
    Algebraic(Vec<ConstructorDesc>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descriptor {
    pub name: String,
    pub shape: Shape,
}

impl Descriptor {
    pub fn primitive(name: &str) -> Descriptor {
        Descriptor {
            name: name.to_string(),
            shape: Shape::Primitive,
        }
    }

    pub fn algebraic(name: &str, constructors: Vec<ConstructorDesc>) -> Descriptor {
        Descriptor {
            name: name.to_string(),
            shape: Shape::Algebraic(constructors),
        }
    }

    pub fn constructors(&self) -> &[ConstructorDesc] {
        match &self.shape {
            Shape::Primitive => &[],
            Shape::Algebraic(cs) => cs,
        }
    }

    /// Parses the textual descriptor format. Lines for the same type name
    /// are grouped in order of first appearance; `--` starts a comment.
    pub fn parse_all(text: &str) -> Result<Vec<Descriptor>, DescriptorError> {
        let mut out: Vec<Descriptor> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = match raw.find("--") {
                Some(at) => &raw[..at],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: &str| DescriptorError {
                line: line_no,
                message: message.to_string(),
            };
            let (head, fields) = line
                .split_once(':')
                .ok_or_else(|| err("expected `TypeName.ConName : FieldType*`"))?;
            let (ty, con) = head
                .trim()
                .split_once('.')
                .ok_or_else(|| err("constructor must be qualified as `TypeName.ConName`"))?;
            let (ty, con) = (ty.trim(), con.trim());
            if ty.is_empty() || con.is_empty() || con.contains(char::is_whitespace) {
                return Err(err("malformed constructor name"));
            }
            let fields: Vec<String> = fields.split_whitespace().map(str::to_string).collect();
            let constructor = ConstructorDesc::new(con, fields);
            match out.iter_mut().find(|d| d.name == ty) {
                Some(d) => match &mut d.shape {
                    Shape::Algebraic(cs) => {
                        if cs.iter().any(|c| c.name == constructor.name) {
                            return Err(err("constructor declared twice"));
                        }
                        cs.push(constructor);
                    }
                    Shape::Primitive => unreachable!("text only yields algebraic shapes"),
                },
                None => out.push(Descriptor::algebraic(ty, vec![constructor])),
            }
        }
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<Descriptor, DescriptorError> {
        let mut all = Descriptor::parse_all(text)?;
        match all.len() {
            1 => Ok(all.remove(0)),
            n => Err(DescriptorError {
                line: 0,
                message: format!("expected exactly one datatype, found {n}"),
            }),
        }
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            Shape::Primitive => writeln!(f, "-- primitive {}", self.name),
            Shape::Algebraic(cs) => {
                for c in cs {
                    write!(f, "{}.{} :", self.name, c.name)?;
                    for field in &c.fields {
                        write!(f, " {field}")?;
                    }
                    writeln!(f)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("descriptor line {line}: {message}")]
pub struct DescriptorError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegistryError {
    #[error("datatype {name} is already registered with a different shape")]
    DuplicateRegistration { name: String },
    #[error("constructor {datatype}.{constructor} refers to unregistered type {field}")]
    UnregisteredField {
        datatype: String,
        constructor: String,
        field: String,
    },
    #[error("term of unregistered type {0} reached")]
    UnregisteredTerm(String),
    #[error("unknown datatype {0}")]
    UnknownType(String),
    #[error("datatype {datatype} has no constructor {constructor}")]
    UnknownConstructor {
        datatype: String,
        constructor: String,
    },
    #[error(transparent)]
    Term(#[from] TermError),
}

#[derive(Clone)]
struct Entry {
    tag: TypeTag,
    descriptor: Arc<Descriptor>,
}

/// Mutable registry used during startup.
#[derive(Default, Clone)]
pub struct RegistryBuilder {
    entries: BTreeMap<String, Entry>,
}

impl RegistryBuilder {
    pub fn new() -> RegistryBuilder {
        RegistryBuilder::default()
    }

    /// Registers `T` and, transitively, every datatype reachable from it.
    pub fn register<T: Data>(&mut self) -> Result<&mut Self, RegistryError> {
        let name = T::type_name().into_owned();
        let tag = T::type_tag();
        if let Some(existing) = self.entries.get(&name) {
            if existing.tag == tag {
                return Ok(self);
            }
            return Err(RegistryError::DuplicateRegistration { name });
        }
        self.entries.insert(
            name,
            Entry {
                tag,
                descriptor: Arc::new(T::descriptor()),
            },
        );
        T::register_fields(self)?;
        Ok(self)
    }

    /// Registers a datatype known only by its descriptor. Registering an
    /// identical descriptor twice is a no-op.
    pub fn register_descriptor(
        &mut self,
        descriptor: Descriptor,
    ) -> Result<TypeTag, RegistryError> {
        if let Some(existing) = self.entries.get(&descriptor.name) {
            if !existing.tag.is_native() && *existing.descriptor == descriptor {
                return Ok(existing.tag.clone());
            }
            return Err(RegistryError::DuplicateRegistration {
                name: descriptor.name,
            });
        }
        let tag = TypeTag::dynamic(&descriptor.name);
        self.entries.insert(
            descriptor.name.clone(),
            Entry {
                tag: tag.clone(),
                descriptor: Arc::new(descriptor),
            },
        );
        Ok(tag)
    }

    pub fn freeze(self) -> Result<Registry, RegistryError> {
        for entry in self.entries.values() {
            for c in entry.descriptor.constructors() {
                if let Some(missing) = c.fields.iter().find(|f| !self.entries.contains_key(*f)) {
                    return Err(RegistryError::UnregisteredField {
                        datatype: entry.descriptor.name.clone(),
                        constructor: c.name.clone(),
                        field: missing.clone(),
                    });
                }
            }
        }
        Ok(Registry {
            entries: Arc::new(self.entries),
        })
    }
}

/// A frozen, closed set of datatypes. Cheap to clone and share.
#[derive(Clone)]
pub struct Registry {
    entries: Arc<BTreeMap<String, Entry>>,
}

impl Registry {
    pub fn descriptor(&self, name: &str) -> Option<&Descriptor> {
        self.entries.get(name).map(|e| &*e.descriptor)
    }

    pub fn tag(&self, name: &str) -> Option<TypeTag> {
        self.entries.get(name).map(|e| e.tag.clone())
    }

    pub fn contains(&self, tag: &TypeTag) -> bool {
        self.entries
            .get(&*tag.name())
            .is_some_and(|e| e.tag == *tag)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Walks `term` exhaustively and fails on the first subterm whose type
    /// is not registered here.
    pub fn check_closure(&self, term: &Term) -> Result<(), RegistryError> {
        for t in term.preorder() {
            let tag = t.type_of();
            if !self.contains(&tag) {
                return Err(RegistryError::UnregisteredTerm(tag.name().into_owned()));
            }
        }
        Ok(())
    }

    /// Builds a value of a descriptor-registered datatype.
    pub fn construct(
        &self,
        datatype: &str,
        constructor: &str,
        kids: Vec<Term>,
    ) -> Result<Term, RegistryError> {
        let entry = self
            .entries
            .get(datatype)
            .ok_or_else(|| RegistryError::UnknownType(datatype.to_string()))?;
        if entry.tag.is_native() {
            // native values are built in Rust and wrapped with Term::new
            return Err(RegistryError::UnknownType(datatype.to_string()));
        }
        let index = entry
            .descriptor
            .constructors()
            .iter()
            .position(|c| c.name == constructor)
            .ok_or_else(|| RegistryError::UnknownConstructor {
                datatype: datatype.to_string(),
                constructor: constructor.to_string(),
            })?;
        let value = DynValue {
            tag: entry.tag.clone(),
            descriptor: entry.descriptor.clone(),
            index,
            kids: Vec::new(),
        };
        Ok(value.rebuild(kids)?)
    }
}

impl fmt::Debug for Registry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.entries.keys()).finish()
    }
}

struct DynValue {
    tag: TypeTag,
    descriptor: Arc<Descriptor>,
    index: usize,
    kids: Vec<Term>,
}

impl DynValue {
    fn con(&self) -> &ConstructorDesc {
        &self.descriptor.constructors()[self.index]
    }
}

impl Datum for DynValue {
    fn type_tag(&self) -> TypeTag {
        self.tag.clone()
    }

    fn constructor(&self) -> ConstructorTag {
        let c = self.con();
        ConstructorTag {
            owner: self.tag.clone(),
            index: self.index,
            name: c.name.clone().into(),
            arity: c.fields.len(),
        }
    }

    fn children(&self) -> Vec<Term> {
        self.kids.clone()
    }

    fn rebuild(&self, kids: Vec<Term>) -> Result<Term, TermError> {
        let c = self.con();
        if kids.len() != c.fields.len() {
            return Err(TermError::ArityMismatch {
                constructor: c.name.clone(),
                expected: c.fields.len(),
                found: kids.len(),
            });
        }
        for (position, (kid, field)) in kids.iter().zip(&c.fields).enumerate() {
            let found = kid.type_of().name();
            if found != field.as_str() {
                return Err(TermError::ChildTypeMismatch {
                    constructor: c.name.clone(),
                    position,
                    expected: field.clone(),
                    found: found.into_owned(),
                });
            }
        }
        Ok(Term::from_datum(Arc::new(DynValue {
            tag: self.tag.clone(),
            descriptor: self.descriptor.clone(),
            index: self.index,
            kids,
        })))
    }

    fn as_any(&self) -> &dyn std::any::Any {
        self
    }

    fn value(&self) -> Option<&dyn std::any::Any> {
        None
    }

    fn into_value(self: Arc<Self>) -> Option<Box<dyn std::any::Any>> {
        None
    }

    fn structural_eq(&self, other: &Term) -> bool {
        other.type_of() == self.tag
            && other.constructor().index == self.index
            && other.children() == self.kids
    }

    fn debug(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut t = f.debug_tuple(&self.con().name);
        for k in &self.kids {
            t.field(k);
        }
        t.finish()
    }
}
