//! Command-line front end: runs one analysis or transformation over a
//! `.ml0` file.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};
use strategem::analyses;
use strategem::minilang::{self, Module};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Increment every integer literal
    IncInts,
    /// List every type constructor name, declared or used
    CollectTypes,
    /// Report whether --name is unused as a type constructor name
    FreshType,
    /// List the free variables of the module
    FreeVars,
    /// Count the declarations
    CountDecls,
    /// Rename every string to "1", "1'", "1''", ... in order
    Debruijn,
    /// Replace the type focus by the synonym --name
    ToAlias,
    /// Print the contents of the focus
    SelectFocus,
}

impl Command {
    fn takes_name(self) -> bool {
        matches!(self, Command::FreshType | Command::ToAlias)
    }

    fn label(self) -> &'static str {
        match self {
            Command::IncInts => "inc-ints",
            Command::CollectTypes => "collect-types",
            Command::FreshType => "fresh-type",
            Command::FreeVars => "free-vars",
            Command::CountDecls => "count-decls",
            Command::Debruijn => "debruijn",
            Command::ToAlias => "to-alias",
            Command::SelectFocus => "select-focus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(
    name = "strategem",
    version,
    about = "Analyses and transformations over .ml0 modules"
)]
struct Cli {
    command: Command,
    /// Type name for fresh-type and to-alias
    #[arg(long)]
    name: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// `[NAME] FILE`; the name may be given positionally instead of --name
    #[arg(required = true, num_args = 1..=2, value_name = "FILE")]
    args: Vec<String>,
}

/// What an invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn success(stdout: String) -> Output {
        Output {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn failure(code: u8, stderr: String) -> Output {
        Output {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

enum Outcome {
    Module(Module),
    Names(Vec<String>),
    Bool(bool),
    Count(usize),
    Text(String),
}

impl Outcome {
    fn text(&self) -> String {
        match self {
            Outcome::Module(m) => minilang::pretty(m),
            Outcome::Names(ns) => ns.iter().map(|n| format!("{n}\n")).collect(),
            Outcome::Bool(b) => format!("{b}\n"),
            Outcome::Count(n) => format!("{n}\n"),
            Outcome::Text(s) => format!("{s}\n"),
        }
    }

    fn json(&self) -> Value {
        match self {
            Outcome::Module(m) => json!(minilang::pretty(m)),
            Outcome::Names(ns) => json!(ns),
            Outcome::Bool(b) => json!(b),
            Outcome::Count(n) => json!(n),
            Outcome::Text(s) => json!(s),
        }
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output::success(text)
            } else {
                Output::failure(code, text)
            };
        }
    };

    let (name, file) = match (cli.args.as_slice(), cli.name.clone()) {
        ([file], name) => (name, file.clone()),
        ([_, _], Some(_)) => {
            return usage("give the name either positionally or with --name, not both")
        }
        ([name, file], None) if cli.command.takes_name() => (Some(name.clone()), file.clone()),
        (_, _) => {
            return usage(&format!(
                "{} takes a single FILE argument",
                cli.command.label()
            ))
        }
    };
    let name = match (cli.command.takes_name(), name) {
        (true, Some(n)) => n,
        (true, None) => {
            return usage(&format!(
                "{} needs a type name (--name N)",
                cli.command.label()
            ))
        }
        (false, Some(_)) => return usage(&format!("{} does not take a name", cli.command.label())),
        (false, None) => String::new(),
    };

    let path = PathBuf::from(&file);
    let src = match std::fs::read_to_string(&path) {
        Ok(s) => s,
        Err(e) => return Output::failure(2, format!("{file}: {e}\n")),
    };
    let module = match minilang::parse(&src) {
        Ok(m) => m,
        Err(e) => return Output::failure(2, format!("{file}:{e}\n")),
    };

    let result = match execute(cli.command, &name, module) {
        Ok(r) => r,
        Err(diagnostic) => return Output::failure(1, format!("{file}: {diagnostic}\n")),
    };
    let stdout = match cli.format {
        Format::Text => result.text(),
        Format::Structured => {
            let doc = json!({
                "command": cli.command.label(),
                "input": file,
                "result": result.json(),
            });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).expect("JSON values serialize")
            )
        }
    };
    Output::success(stdout)
}

fn usage(message: &str) -> Output {
    Output::failure(2, format!("error: {message}\n"))
}

fn execute(command: Command, name: &str, m: Module) -> Result<Outcome, String> {
    Ok(match command {
        Command::IncInts => Outcome::Module(analyses::inc_ints(m)),
        Command::CollectTypes => Outcome::Names(analyses::all_types(&m).into_iter().collect()),
        Command::FreshType => Outcome::Bool(analyses::is_fresh_type(name, &m)),
        Command::FreeVars => Outcome::Names(analyses::free_vars(&m).into_iter().collect()),
        Command::CountDecls => Outcome::Count(analyses::count_decls(&m)),
        Command::Debruijn => Outcome::Module(analyses::de_bruijn(m)),
        Command::ToAlias => {
            Outcome::Module(analyses::to_alias(name, &m).map_err(|e| e.to_string())?)
        }
        Command::SelectFocus => match analyses::select_focus(&m) {
            Ok(e) => Outcome::Text(e.to_string()),
            Err(_) => Outcome::Text(
                analyses::select_type_focus(&m)
                    .map_err(|e| e.to_string())?
                    .to_string(),
            ),
        },
    })
}
