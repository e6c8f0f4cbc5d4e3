//! Analyses and transformations over the mini-language, each built from a
//! strategy and exposed through a plain function.

mod coder;
mod count;
mod focus;
mod local;
mod names;
mod types;

use std::collections::BTreeSet;

pub use coder::{encode, get_code, next_code, no_codes, set_code, Coder};
pub use count::{count_decls, count_of_type, type_tick, TypeToken};
pub use focus::{
    get_alias, get_focus, get_type_focus, replace_type_focus, select_focus, select_type_focus,
    to_alias, AliasError, NoFocus,
};
pub use local::{de_bruijn, de_bruijn_strategy, prime_strings};
pub use names::{focus_scope, free_type_vars, free_vars, pattern_vars};
pub use types::{
    all_types, any_types, data_con, dec_con, inc_ints, increment, is_fresh_type, type_con,
};

pub type NameSet = BTreeSet<String>;
