//! Shared test support: a seeded random generator for mini-language
//! syntax, the example corpus, and hand-written oracles.

#![allow(dead_code)]

pub mod gen;
pub mod oracle;

use std::path::PathBuf;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// `(file name, source)` for every `.ml0` file directly in the corpus.
pub fn corpus() -> Vec<(String, String)> {
    let mut files: Vec<_> = std::fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "ml0"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).unwrap())
        })
        .collect()
}

pub fn corpus_modules() -> Vec<(String, strategem::minilang::Module)> {
    corpus()
        .into_iter()
        .map(|(name, src)| {
            let m = strategem::minilang::parse(&src).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, m)
        })
        .collect()
}
