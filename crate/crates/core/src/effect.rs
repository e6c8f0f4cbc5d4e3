//! Effect contexts for strategies.
//!
//! An [`Effect`] fixes what a computation may do besides producing a value:
//! nothing ([`Identity`]), fail and recover ([`Partial`]), thread a state
//! ([`State`]), or both ([`PartialState`]). A [`Comp`] is a computation in
//! such a context, built from `pure`/`bind` plus the capabilities the
//! effect offers, and eliminated by one of the `run_*` functions.
//!
//! Internally a computation is a function from the mutable context (the
//! current state, or `()`) to either a value or the effect's failure. The
//! choice operator is committed: once the left branch succeeds the right
//! one is never consulted, and a failing left branch leaves the state as
//! it found it.

use std::collections::BTreeSet;
use std::convert::Infallible;
use std::fmt;
use std::marker::PhantomData;
use std::ops::Add;

pub trait Effect: Sized + Send + Sync + 'static {
    /// Context threaded through a run: the state, or `()`.
    type Ctx;
    type Failure: fmt::Debug;
}

/// The failure of a partial computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Zero;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Identity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Partial;

pub struct State<S>(PhantomData<fn() -> S>);

pub struct PartialState<S>(PhantomData<fn() -> S>);

impl Effect for Identity {
    type Ctx = ();
    type Failure = Infallible;
}

impl Effect for Partial {
    type Ctx = ();
    type Failure = Zero;
}

impl<S: 'static> Effect for State<S> {
    type Ctx = S;
    type Failure = Infallible;
}

impl<S: Clone + 'static> Effect for PartialState<S> {
    type Ctx = S;
    type Failure = Zero;
}

/// Failure and recovery (`mzero`/`mplus`).
pub trait Plus: Effect {
    fn zero() -> Self::Failure;

    /// Runs `f`; if it fails, the context is restored before the failure is
    /// returned, so an alternative starts from the same state.
    fn attempt<A>(
        ctx: &mut Self::Ctx,
        f: impl FnOnce(&mut Self::Ctx) -> Result<A, Self::Failure>,
    ) -> Result<A, Self::Failure>;
}

impl Plus for Partial {
    fn zero() -> Zero {
        Zero
    }

    fn attempt<A>(ctx: &mut (), f: impl FnOnce(&mut ()) -> Result<A, Zero>) -> Result<A, Zero> {
        f(ctx)
    }
}

impl<S: Clone + 'static> Plus for PartialState<S> {
    fn zero() -> Zero {
        Zero
    }

    fn attempt<A>(ctx: &mut S, f: impl FnOnce(&mut S) -> Result<A, Zero>) -> Result<A, Zero> {
        let saved = ctx.clone();
        let out = f(ctx);
        if out.is_err() {
            *ctx = saved;
        }
        out
    }
}

/// A single state layer over a stateless base effect.
pub trait Stateful: Effect {
    type State;
    /// The effect left after the state layer is run away.
    type Base: Effect<Ctx = (), Failure = <Self as Effect>::Failure>;

    fn state(ctx: &mut Self::Ctx) -> &mut Self::State;

    fn with_state(state: Self::State) -> Self::Ctx;
}

impl<S: 'static> Stateful for State<S> {
    type State = S;
    type Base = Identity;

    fn state(ctx: &mut S) -> &mut S {
        ctx
    }

    fn with_state(state: S) -> S {
        state
    }
}

impl<S: Clone + 'static> Stateful for PartialState<S> {
    type State = S;
    type Base = Partial;

    fn state(ctx: &mut S) -> &mut S {
        ctx
    }

    fn with_state(state: S) -> S {
        state
    }
}

type RunFn<'a, E, A> =
    dyn FnOnce(&mut <E as Effect>::Ctx) -> Result<A, <E as Effect>::Failure> + 'a;

/// A computation in effect context `E` producing an `A`.
pub struct Comp<'a, E: Effect, A>(Box<RunFn<'a, E, A>>);

impl<'a, E: Effect, A: 'a> Comp<'a, E, A> {
    pub fn from_fn(f: impl FnOnce(&mut E::Ctx) -> Result<A, E::Failure> + 'a) -> Self {
        Comp(Box::new(f))
    }

    pub fn pure(value: A) -> Self {
        Comp::from_fn(move |_| Ok(value))
    }

    pub fn bind<B: 'a>(self, f: impl FnOnce(A) -> Comp<'a, E, B> + 'a) -> Comp<'a, E, B> {
        Comp::from_fn(move |ctx| {
            let a = (self.0)(ctx)?;
            f(a).run_in(ctx)
        })
    }

    pub fn map<B: 'a>(self, f: impl FnOnce(A) -> B + 'a) -> Comp<'a, E, B> {
        Comp::from_fn(move |ctx| (self.0)(ctx).map(f))
    }

    /// Sequences `self` before `next`, discarding the first value.
    pub fn then<B: 'a>(self, next: Comp<'a, E, B>) -> Comp<'a, E, B> {
        self.bind(move |_| next)
    }

    pub fn run_in(self, ctx: &mut E::Ctx) -> Result<A, E::Failure> {
        (self.0)(ctx)
    }
}

impl<'a, E: Plus, A: 'a> Comp<'a, E, A> {
    pub fn zero() -> Self {
        Comp::from_fn(|_| Err(E::zero()))
    }

    /// Committed choice: `self` if it succeeds, `other` otherwise.
    pub fn plus(self, other: Comp<'a, E, A>) -> Self {
        Comp::from_fn(move |ctx| match E::attempt(ctx, self.0) {
            Ok(a) => Ok(a),
            Err(_) => other.run_in(ctx),
        })
    }
}

impl<E: Effect, A> fmt::Debug for Comp<'_, E, A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Comp(..)")
    }
}

pub fn pure<'a, E: Effect, A: 'a>(value: A) -> Comp<'a, E, A> {
    Comp::pure(value)
}

pub fn zero<'a, E: Plus, A: 'a>() -> Comp<'a, E, A> {
    Comp::zero()
}

/// Turns an `Option` into a computation failing on `None`.
pub fn guard_some<'a, E: Plus, A: 'a>(value: Option<A>) -> Comp<'a, E, A> {
    match value {
        Some(v) => Comp::pure(v),
        None => Comp::zero(),
    }
}

pub fn get<'a, E>() -> Comp<'a, E, E::State>
where
    E: Stateful,
    E::State: Clone + 'a,
{
    Comp::from_fn(|ctx| Ok(E::state(ctx).clone()))
}

pub fn put<'a, E>(state: E::State) -> Comp<'a, E, ()>
where
    E: Stateful,
    E::State: 'a,
{
    Comp::from_fn(move |ctx| {
        *E::state(ctx) = state;
        Ok(())
    })
}

pub fn modify<'a, E>(f: impl FnOnce(&mut E::State) + 'a) -> Comp<'a, E, ()>
where
    E: Stateful,
{
    Comp::from_fn(move |ctx| {
        f(E::state(ctx));
        Ok(())
    })
}

pub fn run_identity<A>(c: Comp<'_, Identity, A>) -> A {
    match c.run_in(&mut ()) {
        Ok(a) => a,
        Err(never) => match never {},
    }
}

pub fn run_partial<A>(c: Comp<'_, Partial, A>) -> Option<A> {
    c.run_in(&mut ()).ok()
}

pub fn run_state<S: 'static, A>(c: Comp<'_, State<S>, A>, s0: S) -> (A, S) {
    let mut s = s0;
    match c.run_in(&mut s) {
        Ok(a) => (a, s),
        Err(never) => match never {},
    }
}

pub fn run_partial_state<S: Clone + 'static, A>(
    c: Comp<'_, PartialState<S>, A>,
    s0: S,
) -> Option<(A, S)> {
    let mut s = s0;
    c.run_in(&mut s).ok().map(|a| (a, s))
}

/// An associative combine with a neutral element, passed explicitly to
/// type-unifying traversals.
pub trait Monoid<A>: Send + Sync + 'static {
    fn neutral(&self) -> A;
    fn append(&self, left: A, right: A) -> A;

    fn concat(&self, items: impl IntoIterator<Item = A>) -> A
    where
        Self: Sized,
    {
        items
            .into_iter()
            .fold(self.neutral(), |acc, x| self.append(acc, x))
    }
}

impl<A, M: Monoid<A> + ?Sized> Monoid<A> for std::sync::Arc<M> {
    fn neutral(&self) -> A {
        (**self).neutral()
    }

    fn append(&self, left: A, right: A) -> A {
        (**self).append(left, right)
    }
}

/// Lists under concatenation.
#[derive(Debug, Clone, Copy, Default)]
pub struct ListConcat;

impl<T> Monoid<Vec<T>> for ListConcat {
    fn neutral(&self) -> Vec<T> {
        Vec::new()
    }

    fn append(&self, mut left: Vec<T>, right: Vec<T>) -> Vec<T> {
        left.extend(right);
        left
    }
}

/// Sets under union.
#[derive(Debug, Clone, Copy, Default)]
pub struct SetUnion;

impl<T: Ord> Monoid<BTreeSet<T>> for SetUnion {
    fn neutral(&self) -> BTreeSet<T> {
        BTreeSet::new()
    }

    fn append(&self, mut left: BTreeSet<T>, mut right: BTreeSet<T>) -> BTreeSet<T> {
        if left.len() < right.len() {
            std::mem::swap(&mut left, &mut right);
        }
        left.extend(right);
        left
    }
}

/// Numbers under addition.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sum;

impl<N: Add<Output = N> + Default> Monoid<N> for Sum {
    fn neutral(&self) -> N {
        N::default()
    }

    fn append(&self, left: N, right: N) -> N {
        left + right
    }
}

/// A monoid given by a neutral value and a combine function.
pub struct MonoidFn<A, F> {
    neutral: A,
    append: F,
}

impl<A, F> MonoidFn<A, F> {
    pub fn new(neutral: A, append: F) -> Self {
        MonoidFn { neutral, append }
    }
}

impl<A, F> Monoid<A> for MonoidFn<A, F>
where
    A: Clone + Send + Sync + 'static,
    F: Fn(A, A) -> A + Send + Sync + 'static,
{
    fn neutral(&self) -> A {
        self.neutral.clone()
    }

    fn append(&self, left: A, right: A) -> A {
        (self.append)(left, right)
    }
}

/// A total translation of computations from one effect context to another.
/// Must map `pure(v)` to `pure(v)`.
pub trait EffectMorphism<From: Effect, To: Effect, A>: Send + Sync + 'static {
    fn transport(&self, c: Comp<'_, From, A>, ctx: &mut To::Ctx) -> Result<A, To::Failure>;
}

/// Applies a morphism to a computation.
pub fn morph<'a, From, To, A, M>(m: &'a M, c: Comp<'a, From, A>) -> Comp<'a, To, A>
where
    From: Effect,
    To: Effect,
    A: 'a,
    M: EffectMorphism<From, To, A>,
{
    Comp::from_fn(move |ctx| m.transport(c, ctx))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct IdentityMorphism;

impl<E: Effect, A> EffectMorphism<E, E, A> for IdentityMorphism {
    fn transport(&self, c: Comp<'_, E, A>, ctx: &mut E::Ctx) -> Result<A, E::Failure> {
        c.run_in(ctx)
    }
}

/// Runs a state layer from a fixed initial state and drops the final state.
#[derive(Debug, Clone)]
pub struct UnliftState<S>(pub S);

impl<E, A> EffectMorphism<E, E::Base, A> for UnliftState<E::State>
where
    E: Stateful,
    E::State: Clone + Send + Sync,
{
    fn transport(&self, c: Comp<'_, E, A>, _: &mut ()) -> Result<A, E::Failure> {
        let mut ctx = E::with_state(self.0.clone());
        c.run_in(&mut ctx)
    }
}

/// Hides partiality by substituting a default value for failure.
#[derive(Debug, Clone)]
pub struct OrDefault<A>(pub A);

impl<A: Clone + Send + Sync + 'static> EffectMorphism<Partial, Identity, A> for OrDefault<A> {
    fn transport(&self, c: Comp<'_, Partial, A>, _: &mut ()) -> Result<A, Infallible> {
        Ok(c.run_in(&mut ()).unwrap_or_else(|Zero| self.0.clone()))
    }
}

/// Embeds a computation that cannot fail into a context that can.
#[derive(Debug, Clone, Copy, Default)]
pub struct Embed;

impl<A> EffectMorphism<Identity, Partial, A> for Embed {
    fn transport(&self, c: Comp<'_, Identity, A>, _: &mut ()) -> Result<A, Zero> {
        Ok(run_identity(c))
    }
}

impl<S: Clone + 'static, A> EffectMorphism<State<S>, PartialState<S>, A> for Embed {
    fn transport(&self, c: Comp<'_, State<S>, A>, ctx: &mut S) -> Result<A, Zero> {
        c.run_in(ctx).map_err(|never| match never {})
    }
}
