use crate::effect::{get, pure, put, run_partial, Partial, PartialState};
use crate::strategy::{identity, TP};
use crate::term::Data;
use crate::themes::{local_state, topdown};

type Names = PartialState<String>;

/// Replaces every string, in preorder, by the current name and primes the
/// name for the next one.
pub fn prime_strings() -> TP<Names> {
    topdown(identity().adhoc(|_: String| {
        get::<Names>().bind(|name| put::<Names>(format!("{name}'")).then(pure(name)))
    }))
}

/// [`prime_strings`] started from `"1"`, with the name supply hidden.
pub fn de_bruijn_strategy() -> TP<Partial> {
    local_state("1".to_string(), prime_strings())
}

/// Renames the strings of `t` to `"1"`, `"1'"`, `"1''"`, ... in preorder.
pub fn de_bruijn<T: Data>(t: T) -> T {
    run_partial(de_bruijn_strategy().apply_to(t)).expect("renaming never fails")
}
