use std::fmt;

use crate::effect::{pure, run_partial, Partial};
use crate::strategy::{fail_tu, TU};
use crate::term::Data;

/// Assigns integer codes to terms of any registered type. Two terms share
/// a code only if they are structurally equal.
#[derive(Clone)]
pub struct Coder {
    counter: i64,
    lookup: TU<i64, Partial>,
}

impl Coder {
    /// The highest code issued so far.
    pub fn counter(&self) -> i64 {
        self.counter
    }
}

impl fmt::Debug for Coder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Coder")
            .field("counter", &self.counter)
            .finish_non_exhaustive()
    }
}

impl Default for Coder {
    fn default() -> Self {
        no_codes()
    }
}

pub fn no_codes() -> Coder {
    Coder {
        counter: 0,
        lookup: fail_tu(),
    }
}

pub fn get_code<T: Data>(c: &Coder, t: &T) -> Option<i64> {
    run_partial(c.lookup.apply_to(t.clone()))
}

/// Records `code` for `t`, overriding any earlier code for `t`.
pub fn set_code<T: Data>(c: &Coder, t: &T, code: i64) -> Coder {
    let key = t.clone();
    let previous = c.lookup.clone();
    Coder {
        counter: c.counter.max(code),
        lookup: c.lookup.clone().adhoc(move |x: T| {
            if x == key {
                pure(code)
            } else {
                previous.apply_to(x)
            }
        }),
    }
}

pub fn next_code(c: &Coder) -> (i64, Coder) {
    let code = c.counter + 1;
    (
        code,
        Coder {
            counter: code,
            lookup: c.lookup.clone(),
        },
    )
}

/// The code of `t`, assigning a fresh one if `t` has none yet.
pub fn encode<T: Data>(c: &Coder, t: &T) -> (i64, Coder) {
    match get_code(c, t) {
        Some(code) => (code, c.clone()),
        None => {
            let (code, next) = next_code(c);
            (code, set_code(&next, t, code))
        }
    }
}
