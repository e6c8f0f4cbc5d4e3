//! Reusable traversal schemes.
//!
//! Everything here is built from the basic combinators alone. No scheme
//! mentions a concrete type or uses `adhoc`; type-specific behaviour is
//! supplied by the strategies a scheme is instantiated with.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::effect::{Effect, Monoid, Plus, SetUnion, Stateful, UnliftState};
use crate::strategy::{
    all_tp, all_tu, build, choice_tp, choice_tu, identity, let_tu, msubst_tp, msubst_tu, one_tp,
    one_tu, op2_tu, seq_tp, Strategy, TP, TU,
};

/// Applies `s` at every node, parents before children.
pub fn topdown<E: Effect>(s: TP<E>) -> TP<E> {
    TP::fix(|this| seq_tp(s, all_tp(this)))
}

/// Applies `s` at every node, children before parents.
pub fn bottomup<E: Effect>(s: TP<E>) -> TP<E> {
    TP::fix(|this| seq_tp(all_tp(this), s))
}

/// Rewrites the first node in preorder where `s` succeeds.
pub fn once_td<E: Plus>(s: TP<E>) -> TP<E> {
    TP::fix(|this| choice_tp(s, one_tp(this)))
}

/// Rewrites the first node in postorder (leftmost-innermost) where `s`
/// succeeds.
pub fn once_bu<E: Plus>(s: TP<E>) -> TP<E> {
    TP::fix(|this| choice_tp(one_tp(this), s))
}

pub fn once_td_tu<R: 'static, E: Plus>(s: TU<R, E>) -> TU<R, E> {
    TU::fix(|this| choice_tu(s, one_tu(this)))
}

pub fn once_bu_tu<R: 'static, E: Plus>(s: TU<R, E>) -> TU<R, E> {
    TU::fix(|this| choice_tu(one_tu(this), s))
}

/// Top-down traversal that does not descend below nodes where `s`
/// succeeds.
pub fn stop_td<E: Plus>(s: TP<E>) -> TP<E> {
    TP::fix(|this| choice_tp(s, all_tp(this)))
}

/// Type-unifying variant of [`stop_td`]: results of the outermost
/// successes are combined with `monoid`.
pub fn stop_td_tu<R, E, M>(s: TU<R, E>, monoid: M) -> TU<R, E>
where
    R: 'static,
    E: Plus,
    M: Monoid<R>,
{
    TU::fix(|this| choice_tu(s, all_tu(this, monoid)))
}

pub fn try_<E: Plus>(s: TP<E>) -> TP<E> {
    choice_tp(s, identity())
}

/// Applies `s` until it fails.
pub fn repeat<E: Plus>(s: TP<E>) -> TP<E> {
    TP::fix(|this| try_(seq_tp(s, this)))
}

/// Normalizes with `s`, children first. Does not terminate if `s` can be
/// applied forever.
pub fn innermost<E: Plus>(s: TP<E>) -> TP<E> {
    TP::fix(|this| seq_tp(all_tp(this.clone()), try_(seq_tp(s, this))))
}

/// Deep reduction: the result of `s` at a node, followed by the results of
/// its children left to right, combined with `monoid`.
pub fn crush<R, E, M>(s: TU<R, E>, monoid: M) -> TU<R, E>
where
    R: 'static,
    E: Effect,
    M: Monoid<R>,
{
    let monoid = Arc::new(monoid);
    TU::fix(|this| {
        let m = monoid.clone();
        op2_tu(
            move |here, below| m.append(here, below),
            s,
            all_tu(this, monoid),
        )
    })
}

/// The result of `s` at the first node in preorder where it succeeds.
/// Fails if `s` fails everywhere.
pub fn select<R: 'static, E: Plus>(s: TU<R, E>) -> TU<R, E> {
    once_td_tu(s)
}

type EnvFn<Env, R, E> = Arc<dyn Fn(&Env) -> TU<R, E> + Send + Sync>;

/// Selection with a downward environment: at each node the action runs
/// with the current environment; if it fails, the environment is updated
/// for the current node and the search continues in the children.
pub fn selectenv<Env, R, E>(
    initial: Env,
    update: impl Fn(&Env) -> TU<Env, E> + Send + Sync + 'static,
    action: impl Fn(&Env) -> TU<R, E> + Send + Sync + 'static,
) -> TU<R, E>
where
    Env: Clone + Send + Sync + 'static,
    R: 'static,
    E: Plus,
{
    selectenv_with(initial, Arc::new(update), Arc::new(action))
}

fn selectenv_with<Env, R, E>(
    env: Env,
    update: EnvFn<Env, Env, E>,
    action: EnvFn<Env, R, E>,
) -> TU<R, E>
where
    Env: Clone + Send + Sync + 'static,
    R: 'static,
    E: Plus,
{
    let here = action(&env);
    let step = update(&env);
    let descend = let_tu(step, move |next| {
        one_tu(selectenv_with(next, update.clone(), action.clone()))
    });
    choice_tu(here, descend)
}

/// Free-name analysis: names referenced at a node or free in its children,
/// minus the names declared at the node.
pub fn free_names<N, E>(refs: TU<BTreeSet<N>, E>, decs: TU<BTreeSet<N>, E>) -> TU<BTreeSet<N>, E>
where
    N: Ord + Clone + Send + Sync + 'static,
    E: Effect,
{
    TU::fix(|this| {
        let_tu(decs, move |declared| {
            let below = all_tu(this.clone(), SetUnion);
            let_tu(refs.clone(), move |referenced| {
                let declared = declared.clone();
                let_tu(below.clone(), move |free_below| {
                    let mut free: BTreeSet<N> = referenced.union(&free_below).cloned().collect();
                    free.retain(|n| !declared.contains(n));
                    build(free)
                })
            })
        })
    })
}

/// A traversal scheme parameterized by combinators: `op` composes the node
/// strategy with the recursive descent produced by `descend`.
pub fn traverse_meta<S, O, D>(kind: S::Kind, op: O, descend: D, s: S) -> S
where
    S: Strategy,
    O: Fn(&S::Kind, S, S) -> S,
    D: Fn(&S::Kind, S) -> S,
{
    S::fix_s(|this| op(&kind, s, descend(&kind, this)))
}

/// Full top-down traversal for either strategy kind: `topdown` for `TP`,
/// `crush` for `TU`.
pub fn total_td<S: Strategy>(kind: S::Kind, s: S) -> S {
    traverse_meta(kind, |k, a, b| S::seq_s(k, a, b), |k, a| S::all_s(k, a), s)
}

/// First success in preorder for either strategy kind.
pub fn once_td_s<S>(kind: S::Kind, s: S) -> S
where
    S: Strategy,
    S::Effect: Plus,
{
    traverse_meta(
        kind,
        |k, a, b| S::choice_s(k, a, b),
        |k, a| S::one_s(k, a),
        s,
    )
}

/// Runs the state layer of `s` from `initial`, hiding it from the
/// strategy's effect context. Each application starts afresh.
pub fn local_state<E>(initial: E::State, s: TP<E>) -> TP<E::Base>
where
    E: Stateful,
    E::State: Clone + Send + Sync + 'static,
{
    msubst_tp(UnliftState(initial), s)
}

pub fn local_state_tu<R, E>(initial: E::State, s: TU<R, E>) -> TU<R, E::Base>
where
    R: 'static,
    E: Stateful,
    E::State: Clone + Send + Sync + 'static,
{
    msubst_tu(UnliftState(initial), s)
}
