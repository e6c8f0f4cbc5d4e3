//! Strategies: first-class generic functions over [`Term`]s.
//!
//! A type-preserving strategy [`TP`] maps a term of any type to a term of
//! the same type; a type-unifying strategy [`TU`] maps a term of any type
//! to a result of one fixed type `R`. Both run in an effect context `E`.
//! Strategies are opaque values; [`TP::apply`] and [`TU::apply`] are the
//! only way to use one.
//!
//! The basic combinators come in pairs (`..._tp` / `..._tu`). Type-specific
//! behaviour enters only through `adhoc`; generic traversal only through
//! `all` and `one`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::effect::{Comp, Effect, EffectMorphism, Monoid, Plus};
use crate::term::{Data, Term};

type TpFn<E> =
    dyn Fn(&Term, &mut <E as Effect>::Ctx) -> Result<Term, <E as Effect>::Failure> + Send + Sync;
type TuFn<R, E> =
    dyn Fn(&Term, &mut <E as Effect>::Ctx) -> Result<R, <E as Effect>::Failure> + Send + Sync;

/// Type-preserving strategy.
#[allow(clippy::upper_case_acronyms)]
pub struct TP<E: Effect>(Arc<TpFn<E>>);

/// Type-unifying strategy with result type `R`.
#[allow(clippy::upper_case_acronyms)]
pub struct TU<R: 'static, E: Effect>(Arc<TuFn<R, E>>);

impl<E: Effect> Clone for TP<E> {
    fn clone(&self) -> Self {
        TP(self.0.clone())
    }
}

impl<R, E: Effect> Clone for TU<R, E> {
    fn clone(&self) -> Self {
        TU(self.0.clone())
    }
}

impl<E: Effect> fmt::Debug for TP<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("TP(..)")
    }
}

impl<R, E: Effect> fmt::Debug for TU<R, E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("TU(..)")
    }
}

impl<E: Effect> TP<E> {
    pub(crate) fn from_fn(
        f: impl Fn(&Term, &mut E::Ctx) -> Result<Term, E::Failure> + Send + Sync + 'static,
    ) -> Self {
        TP(Arc::new(f))
    }

    pub(crate) fn run(&self, t: &Term, ctx: &mut E::Ctx) -> Result<Term, E::Failure> {
        (self.0)(t, ctx)
    }

    pub fn apply(&self, t: &Term) -> Comp<'static, E, Term> {
        let s = self.clone();
        let t = t.clone();
        Comp::from_fn(move |ctx| s.run(&t, ctx))
    }

    /// Applies the strategy to a concrete value; the result has the same
    /// type by construction.
    pub fn apply_to<T: Data>(&self, value: T) -> Comp<'static, E, T> {
        self.apply(&Term::new(value)).map(|t| {
            t.into_value::<T>()
                .unwrap_or_else(|t| panic!("type-preserving strategy returned a {}", t.type_of()))
        })
    }

    /// Customizes `self` for terms of type `T`.
    pub fn adhoc<T: Data>(
        self,
        f: impl Fn(T) -> Comp<'static, E, T> + Send + Sync + 'static,
    ) -> Self {
        adhoc_tp(self, f)
    }

    /// Defers construction of a strategy until it is applied. This is how
    /// recursive strategy definitions refer to themselves.
    pub fn lazy(f: impl Fn() -> TP<E> + Send + Sync + 'static) -> Self {
        TP::from_fn(move |t, ctx| f().run(t, ctx))
    }

    /// Ties a recursive knot without rebuilding the body at every node.
    pub(crate) fn fix(body: impl FnOnce(TP<E>) -> TP<E>) -> TP<E> {
        let cell: Arc<OnceLock<TP<E>>> = Arc::new(OnceLock::new());
        let weak = Arc::downgrade(&cell);
        let this = TP::from_fn(move |t, ctx| {
            let cell = weak
                .upgrade()
                .expect("recursive strategy outlived its definition");
            cell.get()
                .expect("recursive strategy used during its own construction")
                .run(t, ctx)
        });
        let _ = cell.set(body(this));
        TP::from_fn(move |t, ctx| cell.get().expect("initialized above").run(t, ctx))
    }
}

impl<R: 'static, E: Effect> TU<R, E> {
    pub(crate) fn from_fn(
        f: impl Fn(&Term, &mut E::Ctx) -> Result<R, E::Failure> + Send + Sync + 'static,
    ) -> Self {
        TU(Arc::new(f))
    }

    pub(crate) fn run(&self, t: &Term, ctx: &mut E::Ctx) -> Result<R, E::Failure> {
        (self.0)(t, ctx)
    }

    pub fn apply(&self, t: &Term) -> Comp<'static, E, R> {
        let s = self.clone();
        let t = t.clone();
        Comp::from_fn(move |ctx| s.run(&t, ctx))
    }

    pub fn apply_to<T: Data>(&self, value: T) -> Comp<'static, E, R> {
        self.apply(&Term::new(value))
    }

    pub fn adhoc<T: Data>(
        self,
        f: impl Fn(T) -> Comp<'static, E, R> + Send + Sync + 'static,
    ) -> Self {
        adhoc_tu(self, f)
    }

    pub fn lazy(f: impl Fn() -> TU<R, E> + Send + Sync + 'static) -> Self {
        TU::from_fn(move |t, ctx| f().run(t, ctx))
    }

    pub(crate) fn fix(body: impl FnOnce(TU<R, E>) -> TU<R, E>) -> TU<R, E> {
        let cell: Arc<OnceLock<TU<R, E>>> = Arc::new(OnceLock::new());
        let weak = Arc::downgrade(&cell);
        let this = TU::from_fn(move |t, ctx| {
            let cell = weak
                .upgrade()
                .expect("recursive strategy outlived its definition");
            cell.get()
                .expect("recursive strategy used during its own construction")
                .run(t, ctx)
        });
        let _ = cell.set(body(this));
        TU::from_fn(move |t, ctx| cell.get().expect("initialized above").run(t, ctx))
    }
}

/// Returns the input term.
pub fn identity<E: Effect>() -> TP<E> {
    TP::from_fn(|t, _| Ok(t.clone()))
}

/// Ignores the input term and returns `value`.
pub fn build<R, E>(value: R) -> TU<R, E>
where
    R: Clone + Send + Sync + 'static,
    E: Effect,
{
    TU::from_fn(move |_, _| Ok(value.clone()))
}

pub fn fail_tp<E: Plus>() -> TP<E> {
    TP::from_fn(|_, _| Err(E::zero()))
}

pub fn fail_tu<R: 'static, E: Plus>() -> TU<R, E> {
    TU::from_fn(|_, _| Err(E::zero()))
}

/// Behaves like `f` on terms of type `T` and like `s` on all others.
pub fn adhoc_tp<E, T>(
    s: TP<E>,
    f: impl Fn(T) -> Comp<'static, E, T> + Send + Sync + 'static,
) -> TP<E>
where
    E: Effect,
    T: Data,
{
    TP::from_fn(move |t, ctx| match t.downcast_ref::<T>() {
        Some(v) => f(v.clone()).run_in(ctx).map(Term::new),
        None => s.run(t, ctx),
    })
}

pub fn adhoc_tu<R, E, T>(
    s: TU<R, E>,
    f: impl Fn(T) -> Comp<'static, E, R> + Send + Sync + 'static,
) -> TU<R, E>
where
    R: 'static,
    E: Effect,
    T: Data,
{
    TU::from_fn(move |t, ctx| match t.downcast_ref::<T>() {
        Some(v) => f(v.clone()).run_in(ctx),
        None => s.run(t, ctx),
    })
}

/// Runs `first`, then `second` on its output.
pub fn seq_tp<E: Effect>(first: TP<E>, second: TP<E>) -> TP<E> {
    TP::from_fn(move |t, ctx| {
        let mid = first.run(t, ctx)?;
        second.run(&mid, ctx)
    })
}

pub fn seq_tu<R: 'static, E: Effect>(first: TP<E>, second: TU<R, E>) -> TU<R, E> {
    TU::from_fn(move |t, ctx| {
        let mid = first.run(t, ctx)?;
        second.run(&mid, ctx)
    })
}

/// Computes a value with `first` and uses it to instantiate `second`,
/// which is then applied to the same input term.
pub fn let_tp<R, E>(first: TU<R, E>, second: impl Fn(R) -> TP<E> + Send + Sync + 'static) -> TP<E>
where
    R: 'static,
    E: Effect,
{
    TP::from_fn(move |t, ctx| {
        let value = first.run(t, ctx)?;
        second(value).run(t, ctx)
    })
}

pub fn let_tu<R, R2, E>(
    first: TU<R, E>,
    second: impl Fn(R) -> TU<R2, E> + Send + Sync + 'static,
) -> TU<R2, E>
where
    R: 'static,
    R2: 'static,
    E: Effect,
{
    TU::from_fn(move |t, ctx| {
        let value = first.run(t, ctx)?;
        second(value).run(t, ctx)
    })
}

/// `first` if it succeeds, otherwise `second` on the original input.
pub fn choice_tp<E: Plus>(first: TP<E>, second: TP<E>) -> TP<E> {
    TP::from_fn(
        move |t, ctx| match E::attempt(ctx, |ctx| first.run(t, ctx)) {
            Ok(out) => Ok(out),
            Err(_) => second.run(t, ctx),
        },
    )
}

pub fn choice_tu<R: 'static, E: Plus>(first: TU<R, E>, second: TU<R, E>) -> TU<R, E> {
    TU::from_fn(
        move |t, ctx| match E::attempt(ctx, |ctx| first.run(t, ctx)) {
            Ok(out) => Ok(out),
            Err(_) => second.run(t, ctx),
        },
    )
}

/// Applies `s` to every immediate subterm, keeping the outermost
/// constructor. Fails as soon as `s` fails on a child.
pub fn all_tp<E: Effect>(s: TP<E>) -> TP<E> {
    TP::from_fn(move |t, ctx| {
        let kids = t.children();
        if kids.is_empty() {
            return Ok(t.clone());
        }
        let mut out = Vec::with_capacity(kids.len());
        for kid in &kids {
            out.push(s.run(kid, ctx)?);
        }
        Ok(rebuild(t, out))
    })
}

/// Applies `s` to every immediate subterm and folds the results left to
/// right with `monoid`, starting from its neutral element.
pub fn all_tu<R, E, M>(s: TU<R, E>, monoid: M) -> TU<R, E>
where
    R: 'static,
    E: Effect,
    M: Monoid<R>,
{
    TU::from_fn(move |t, ctx| {
        let mut acc = monoid.neutral();
        for kid in t.children() {
            let r = s.run(&kid, ctx)?;
            acc = monoid.append(acc, r);
        }
        Ok(acc)
    })
}

/// Tries `s` on the immediate subterms from left to right and replaces the
/// first one on which it succeeds. Fails on leaves and when no child
/// succeeds.
pub fn one_tp<E: Plus>(s: TP<E>) -> TP<E> {
    TP::from_fn(move |t, ctx| {
        let mut kids = t.children();
        for i in 0..kids.len() {
            if let Ok(new) = E::attempt(ctx, |ctx| s.run(&kids[i], ctx)) {
                kids[i] = new;
                return Ok(rebuild(t, kids));
            }
        }
        Err(E::zero())
    })
}

/// Returns the result of `s` on the leftmost child where it succeeds.
pub fn one_tu<R: 'static, E: Plus>(s: TU<R, E>) -> TU<R, E> {
    TU::from_fn(move |t, ctx| {
        for kid in t.children() {
            if let Ok(r) = E::attempt(ctx, |ctx| s.run(&kid, ctx)) {
                return Ok(r);
            }
        }
        Err(E::zero())
    })
}

/// Runs `first` and `second` on the same term and combines their results.
pub fn op2_tu<A, B, R, E>(
    combine: impl Fn(A, B) -> R + Send + Sync + 'static,
    first: TU<A, E>,
    second: TU<B, E>,
) -> TU<R, E>
where
    A: 'static,
    B: 'static,
    R: 'static,
    E: Effect,
{
    TU::from_fn(move |t, ctx| {
        let a = first.run(t, ctx)?;
        let b = second.run(t, ctx)?;
        Ok(combine(a, b))
    })
}

/// Moves a strategy into another effect context.
pub fn msubst_tp<From, To, M>(morphism: M, s: TP<From>) -> TP<To>
where
    From: Effect,
    To: Effect,
    M: EffectMorphism<From, To, Term>,
{
    TP::from_fn(move |t, ctx| {
        let inner = s.clone();
        let t = t.clone();
        morphism.transport(Comp::from_fn(move |c| inner.run(&t, c)), ctx)
    })
}

pub fn msubst_tu<R, From, To, M>(morphism: M, s: TU<R, From>) -> TU<R, To>
where
    R: 'static,
    From: Effect,
    To: Effect,
    M: EffectMorphism<From, To, R>,
{
    TU::from_fn(move |t, ctx| {
        let inner = s.clone();
        let t = t.clone();
        morphism.transport(Comp::from_fn(move |c| inner.run(&t, c)), ctx)
    })
}

fn rebuild(t: &Term, kids: Vec<Term>) -> Term {
    // Children produced by type-preserving strategies always fit.
    t.rebuild(kids)
        .unwrap_or_else(|e| panic!("type-preserving traversal broke a term: {e}"))
}

pub type MonoidRef<R> = Arc<dyn Monoid<R>>;

pub(crate) mod sealed {
    pub trait Sealed: Sized {
        fn fix_s(body: impl FnOnce(Self) -> Self) -> Self;
    }
}

/// The basic combinators, overloaded over both strategy kinds, so that a
/// scheme can be written once for `TP` and `TU`.
///
/// `Kind` carries what a kind needs beyond its strategies: nothing for
/// `TP`, the result monoid for `TU`. For `TU`, `seq_s` applies both
/// strategies to the same term and appends their results, and `void_s` is
/// the constant neutral element.
pub trait Strategy: sealed::Sealed + Clone + Send + Sync + 'static {
    type Effect: Effect;
    type Kind: Clone + Send + Sync + 'static;
    /// What a type-specific customization for `T` returns.
    type Out<T: Data>;

    fn void_s(kind: &Self::Kind) -> Self;
    fn all_s(kind: &Self::Kind, s: Self) -> Self;
    fn seq_s(kind: &Self::Kind, first: Self, second: Self) -> Self;
    fn one_s(kind: &Self::Kind, s: Self) -> Self
    where
        Self::Effect: Plus;
    fn choice_s(kind: &Self::Kind, first: Self, second: Self) -> Self
    where
        Self::Effect: Plus;
    fn adhoc_s<T: Data>(
        s: Self,
        f: impl Fn(T) -> Comp<'static, Self::Effect, Self::Out<T>> + Send + Sync + 'static,
    ) -> Self;
}

impl<E: Effect> sealed::Sealed for TP<E> {
    fn fix_s(body: impl FnOnce(Self) -> Self) -> Self {
        TP::fix(body)
    }
}

impl<R: 'static, E: Effect> sealed::Sealed for TU<R, E> {
    fn fix_s(body: impl FnOnce(Self) -> Self) -> Self {
        TU::fix(body)
    }
}

impl<E: Effect> Strategy for TP<E> {
    type Effect = E;
    type Kind = ();
    type Out<T: Data> = T;

    fn void_s(_: &()) -> Self {
        identity()
    }

    fn all_s(_: &(), s: Self) -> Self {
        all_tp(s)
    }

    fn seq_s(_: &(), first: Self, second: Self) -> Self {
        seq_tp(first, second)
    }

    fn one_s(_: &(), s: Self) -> Self
    where
        E: Plus,
    {
        one_tp(s)
    }

    fn choice_s(_: &(), first: Self, second: Self) -> Self
    where
        E: Plus,
    {
        choice_tp(first, second)
    }

    fn adhoc_s<T: Data>(
        s: Self,
        f: impl Fn(T) -> Comp<'static, E, T> + Send + Sync + 'static,
    ) -> Self {
        adhoc_tp(s, f)
    }
}

impl<R: Send + Sync + 'static, E: Effect> Strategy for TU<R, E> {
    type Effect = E;
    type Kind = MonoidRef<R>;
    type Out<T: Data> = R;

    fn void_s(kind: &MonoidRef<R>) -> Self {
        let m = kind.clone();
        TU::from_fn(move |_, _| Ok(m.neutral()))
    }

    fn all_s(kind: &MonoidRef<R>, s: Self) -> Self {
        all_tu(s, kind.clone())
    }

    fn seq_s(kind: &MonoidRef<R>, first: Self, second: Self) -> Self {
        let m = kind.clone();
        op2_tu(move |a, b| m.append(a, b), first, second)
    }

    fn one_s(_: &MonoidRef<R>, s: Self) -> Self
    where
        E: Plus,
    {
        one_tu(s)
    }

    fn choice_s(_: &MonoidRef<R>, first: Self, second: Self) -> Self
    where
        E: Plus,
    {
        choice_tu(first, second)
    }

    fn adhoc_s<T: Data>(
        s: Self,
        f: impl Fn(T) -> Comp<'static, E, R> + Send + Sync + 'static,
    ) -> Self {
        adhoc_tu(s, f)
    }
}
