//! The acceptance suite: one line per criterion, non-zero exit if any
//! criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use strategem::analyses::*;
use strategem::effect::*;
use strategem::minilang::*;
use strategem::strategy::*;
use strategem::term::Term;
use strategem::themes::*;
use strategem::Data;

use common::gen::Gen;
use common::oracle;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_modules(seed: u64, n: usize) -> Vec<Module> {
    let mut g = Gen::new(seed);
    (0..n).map(|_| g.module(4)).collect()
}

fn corpus_and_random(seed: u64, n: usize) -> Vec<Module> {
    let mut all: Vec<Module> = common::corpus_modules()
        .into_iter()
        .map(|(_, m)| m)
        .collect();
    all.extend(random_modules(seed, n));
    all
}

fn increment_everything() -> Outcome {
    let a = vec![(true, 1i64), (false, 2)];
    check(inc_ints(a) == vec![(true, 2), (false, 3)], || {
        "list of pairs".into()
    })?;
    let b: Option<(i64, (Vec<i64>, i64))> = Some((1, (vec![2, 3], 4)));
    check(inc_ints(b) == Some((2, (vec![3, 4], 5))), || {
        "optional nested tuple".into()
    })?;
    check(inc_ints(None::<(i64, (Vec<i64>, i64))>).is_none(), || {
        "absent value".into()
    })?;

    let mut g = Gen::new(1);
    for _ in 0..200 {
        let n = g.rng().gen_range(0..8);
        let v: Vec<(bool, i64)> = (0..n)
            .map(|_| (g.rng().gen(), g.rng().gen_range(-1000..1000)))
            .collect();
        let expected: Vec<(bool, i64)> = v.iter().map(|&(b, i)| (b, i + 1)).collect();
        check(inc_ints(v.clone()) == expected, || format!("{v:?}"))?;
        let w: Option<(i64, (Vec<i64>, i64))> = g.rng().gen::<bool>().then(|| {
            (
                g.rng().gen_range(-9..9),
                (vec![g.rng().gen_range(-9..9); n], 0),
            )
        });
        let expected = w
            .clone()
            .map(|(a, (xs, c))| (a + 1, (xs.iter().map(|x| x + 1).collect(), c + 1)));
        check(inc_ints(w.clone()) == expected, || format!("{w:?}"))?;
    }
    Ok("exact on both container shapes and 400 random values".into())
}

fn combinator_laws() -> Outcome {
    let modules = random_modules(2, 500);
    let is_expr: TU<(), Partial> = fail_tu().adhoc(|_: Expr| pure(()));
    let inc_p: TP<Partial> = increment();
    let focus: TU<Expr, Partial> = select(get_focus());
    let mut nodes = 0;
    for m in &modules {
        let t = Term::new(m.clone());
        check(run_identity(all_tp(identity()).apply(&t)) == t, || {
            format!("all(identity): {m}")
        })?;
        check(run_identity(topdown(identity()).apply(&t)) == t, || {
            format!("topdown(identity): {m}")
        })?;
        let neutral: TU<Vec<String>, Identity> = build(vec![]);
        check(
            run_identity(all_tu(neutral, ListConcat).apply(&t)).is_empty(),
            || format!("all_tu(neutral): {m}"),
        )?;
        check(
            run_partial(choice_tp(fail_tp(), inc_p.clone()).apply(&t))
                == run_partial(inc_p.apply(&t)),
            || format!("choice(fail, s) for TP: {m}"),
        )?;
        check(
            run_partial(choice_tu(fail_tu(), focus.clone()).apply(&t))
                == run_partial(focus.apply(&t)),
            || format!("choice(fail, s) for TU: {m}"),
        )?;
        check(
            run_partial(msubst_tp(IdentityMorphism, inc_p.clone()).apply(&t))
                == run_partial(inc_p.apply(&t)),
            || format!("msubst(identity) for TP: {m}"),
        )?;
        check(
            run_partial(msubst_tu(IdentityMorphism, focus.clone()).apply(&t))
                == run_partial(focus.apply(&t)),
            || format!("msubst(identity) for TU: {m}"),
        )?;
        for node in oracle::preorder(&t) {
            nodes += 1;
            let ok = run_partial(is_expr.apply(&node)).is_some();
            check(ok == node.is::<Expr>(), || {
                format!("adhoc(fail, f) on {node:?}")
            })?;
        }
    }
    Ok(format!("500 modules, {nodes} subterms"))
}

fn oracle_equivalence() -> Outcome {
    let collect: TU<Vec<BigInt>, Identity> = build(vec![]).adhoc(|n: BigInt| pure(vec![n]));
    let ints = crush(collect, ListConcat);
    let modules = corpus_and_random(3, 300);
    for m in &modules {
        check(
            run_identity(ints.apply_to(m.clone())) == oracle::ints(m),
            || format!("integers: {m}"),
        )?;
        check(count_decls(m) == oracle::count_decls(m), || {
            format!("declarations: {m}")
        })?;
        check(
            count_of_type(TypeToken::<Expr>::new(), m) == oracle::count_exprs(m),
            || format!("expressions: {m}"),
        )?;
        check(
            count_of_type(TypeToken::<Type>::new(), m) == oracle::count_types(m),
            || format!("types: {m}"),
        )?;
        check(all_types(m) == oracle::all_types(m), || {
            format!("type names: {m}")
        })?;
    }
    Ok(format!("{} modules", modules.len()))
}

fn first_success_laws() -> Outcome {
    let modules = corpus_and_random(4, 300);
    let var_name: TU<String, Partial> = fail_tu().adhoc(|e: Expr| match e {
        Expr::Var(x) => pure(x.0),
        _ => zero(),
    });
    let bump: TP<Partial> = fail_tp().adhoc(|e: Expr| match e {
        Expr::Int(n) => pure(Expr::Int(n + 1_000_000)),
        _ => zero(),
    });
    let (mut hits, mut misses) = (0, 0);
    for m in &modules {
        let t = Term::new(m.clone());
        let pre = oracle::preorder(&t);
        let first = pre.iter().find_map(|n| run_partial(var_name.apply(n)));
        let selected = run_partial(select(var_name.clone()).apply(&t));
        check(selected == first, || format!("select vs preorder: {m}"))?;
        check(
            run_partial(once_td_tu(var_name.clone()).apply(&t)) == first,
            || format!("once_td_tu vs preorder: {m}"),
        )?;
        if first.is_some() {
            hits += 1
        } else {
            misses += 1
        }

        let mut expected = oracle::ints(m);
        match run_partial(once_td(bump.clone()).apply_to(m.clone())) {
            Some(out) => {
                check(!expected.is_empty(), || {
                    format!("once_td succeeded without a redex: {m}")
                })?;
                expected[0] += 1_000_000;
                check(oracle::ints(&out) == expected, || {
                    format!("once_td rewrote the wrong node: {m}")
                })?;
            }
            None => check(expected.is_empty(), || {
                format!("once_td missed a redex: {m}")
            })?,
        }

        for leaf in pre.iter().filter(|n| n.children().is_empty()) {
            check(
                run_partial(one_tp(identity()).apply(leaf)).is_none(),
                || "one_tp on a leaf".into(),
            )?;
            check(
                run_partial(one_tu(build::<(), Partial>(())).apply(leaf)).is_none(),
                || "one_tu on a leaf".into(),
            )?;
        }
    }
    check(hits > 0 && misses > 0, || "both outcomes exercised".into())?;
    Ok(format!("{hits} selections, {misses} total failures"))
}

#[derive(Debug, Clone, PartialEq, Data)]
enum Arith {
    Num(i64),
    Var(String),
    Add(Box<Arith>, Box<Arith>),
}

fn arith(g: &mut Gen, depth: u32) -> Arith {
    let r = g.rng();
    if depth == 0 || r.gen_ratio(1, 4) {
        if r.gen_bool(0.6) {
            Arith::Num(r.gen_range(0..3))
        } else {
            Arith::Var(["x", "y"][r.gen_range(0..2)].to_string())
        }
    } else {
        Arith::Add(Box::new(arith(g, depth - 1)), Box::new(arith(g, depth - 1)))
    }
}

fn normalize(a: &Arith) -> Arith {
    match a {
        Arith::Add(l, r) => {
            let (l, r) = (normalize(l), normalize(r));
            if l == Arith::Num(0) {
                r
            } else {
                Arith::Add(Box::new(l), Box::new(r))
            }
        }
        other => other.clone(),
    }
}

fn depth(a: &Arith) -> u32 {
    match a {
        Arith::Add(l, r) => 1 + depth(l).max(depth(r)),
        _ => 0,
    }
}

fn fixpoint() -> Outcome {
    let rule: TP<Partial> = fail_tp().adhoc(|a: Arith| match a {
        Arith::Add(l, r) if *l == Arith::Num(0) => pure(*r),
        _ => zero(),
    });
    let norm = innermost(rule.clone());
    let redex_free = once_td(rule);
    let mut g = Gen::new(5);
    let mut rewritten = 0;
    for _ in 0..500 {
        let t = arith(&mut g, 5);
        check(depth(&t) <= 5, || "generator depth".into())?;
        let out = run_partial(norm.apply_to(t.clone()))
            .ok_or_else(|| format!("innermost failed on {t:?}"))?;
        check(out == normalize(&t), || {
            format!("{t:?} normalized to {out:?}")
        })?;
        check(
            run_partial(redex_free.apply_to(out.clone())).is_none(),
            || format!("redex left in {out:?}"),
        )?;
        if out != t {
            rewritten += 1;
        }
    }
    Ok(format!("500 terms, {rewritten} changed"))
}

fn renaming() -> Outcome {
    let _: TP<Partial> = de_bruijn_strategy();
    static_assertions::assert_not_impl_any!(Partial: Stateful);
    let modules = corpus_and_random(6, 200);
    for m in &modules {
        let before = oracle::strings(m);
        let after = oracle::strings(&de_bruijn(m.clone()));
        check(after.len() == before.len(), || {
            format!("string count changed: {m}")
        })?;
        let expected: Vec<String> = (0..before.len()).map(oracle::primed).collect();
        check(after == expected, || {
            format!("names out of sequence: {after:?}")
        })?;
        let distinct: BTreeSet<&String> = after.iter().collect();
        check(distinct.len() == after.len(), || "duplicate names".into())?;
        check(de_bruijn(m.clone()) == de_bruijn(m.clone()), || {
            "runs disagree".into()
        })?;
    }
    Ok(format!(
        "{} modules; result context is stateless",
        modules.len()
    ))
}

fn container() -> Outcome {
    let mut g = Gen::without_foci(7);
    let mut terms: Vec<Term> = Vec::new();
    while terms.len() < 100 {
        let t = match terms.len() % 3 {
            0 => Term::new(g.expr(3)),
            1 => Term::new(g.ty(3)),
            _ => Term::new(g.rng().gen_range(0i64..1000)),
        };
        if !terms.contains(&t) {
            terms.push(t);
        }
    }
    let mut order: Vec<usize> = (0..100).collect();
    order.extend((0..900).map(|_| g.rng().gen_range(0..100)));
    order.shuffle(g.rng());

    let mut coder = no_codes();
    let mut assigned: Vec<Option<i64>> = vec![None; 100];
    for &i in &order {
        let (code, next) = encode_term(&coder, &terms[i]);
        match assigned[i] {
            Some(prior) => check(code == prior, || {
                format!("term {i} recoded {prior} -> {code}")
            })?,
            None => assigned[i] = Some(code),
        }
        coder = next;
    }
    let codes: BTreeSet<i64> = assigned.iter().map(|c| c.unwrap()).collect();
    check(codes == (1..=100).collect(), || format!("codes {codes:?}"))?;
    check(coder.counter() == 100, || "counter".into())?;
    Ok("1000 encodes, codes are exactly 1..=100".into())
}

fn encode_term(c: &Coder, t: &Term) -> (i64, Coder) {
    if let Some(e) = t.downcast_ref::<Expr>() {
        encode(c, e)
    } else if let Some(ty) = t.downcast_ref::<Type>() {
        encode(c, ty)
    } else {
        encode(c, t.downcast_ref::<i64>().unwrap())
    }
}

fn alias_golden() -> Outcome {
    let dir = common::corpus_dir().join("alias");
    let mut cases: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "ml0"))
        .collect();
    cases.sort();
    check(cases.len() == 10, || format!("{} cases", cases.len()))?;
    let mut kinds = BTreeSet::new();
    for path in &cases {
        let src = std::fs::read_to_string(path).unwrap();
        let name = src
            .lines()
            .next()
            .and_then(|l| l.strip_prefix("-- alias: "))
            .ok_or_else(|| format!("{}: no alias header", path.display()))?
            .trim();
        let m = parse(&src).map_err(|e| format!("{}: {e}", path.display()))?;
        let actual = match to_alias(name, &m) {
            Ok(out) => {
                kinds.insert("Ok");
                pretty(&out)
            }
            Err(e) => {
                kinds.insert(e.kind());
                format!("error: {}\n", e.kind())
            }
        };
        let expected = std::fs::read_to_string(path.with_extension("expected")).unwrap();
        check(actual == expected, || {
            format!("{}:\n{actual}", path.display())
        })?;
    }
    check(kinds.len() == 4, || format!("outcomes covered: {kinds:?}"))?;
    Ok("10 golden cases".into())
}

fn free_variables() -> Outcome {
    let mut g = Gen::new(9);
    for _ in 0..500 {
        let e = g.closed_expr(5);
        check(free_vars(&e).is_empty(), || {
            format!("closed term {e} has free variables")
        })?;
    }
    let expr = |src: &str| match parse(&format!("module M where\nmain = {src}"))
        .unwrap()
        .decls
        .remove(0)
    {
        Decl::FunBind(_, _, e) => e,
        _ => unreachable!(),
    };
    let set = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<NameSet>();
    let cases: [(&str, NameSet); 6] = [
        ("\\x -> add x y", set(&["add", "y"])),
        ("let y = f y in y", set(&["f"])),
        ("v", set(&["v"])),
        ("\\(Cons h t) -> h t z", set(&["z"])),
        ("let f = \\n -> f n m in f 1", set(&["m"])),
        ("(\\x -> x) x", set(&["x"])),
    ];
    for (src, expected) in &cases {
        let actual = free_vars(&expr(src));
        check(&actual == expected, || format!("{src}: {actual:?}"))?;
    }
    let m = parse("module M where\nf x = g x y\ng = f").unwrap();
    check(free_vars(&m) == set(&["y"]), || {
        "module-level bindings".into()
    })?;
    Ok("500 closed terms and 7 hand-worked cases".into())
}

fn round_trip() -> Outcome {
    let mut files = common::corpus();
    let alias = common::corpus_dir().join("alias");
    for e in std::fs::read_dir(&alias).unwrap() {
        let p = e.unwrap().path();
        if p.extension().is_some_and(|e| e == "ml0") {
            files.push((
                p.display().to_string(),
                std::fs::read_to_string(&p).unwrap(),
            ));
        }
    }
    for (name, src) in &files {
        let m = parse(src).map_err(|e| format!("{name}: {e}"))?;
        let again = parse(&pretty(&m)).map_err(|e| format!("{name} reprinted: {e}"))?;
        check(again == m, || format!("{name} changed under pretty/parse"))?;
    }
    Ok(format!("{} files", files.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("generic integer increment", increment_everything),
        ("combinator laws on random terms", combinator_laws),
        ("crush and count agree with oracles", oracle_equivalence),
        ("one, once and select laws", first_success_laws),
        ("innermost normalization", fixpoint),
        ("string renaming with local state", renaming),
        ("coder bijection", container),
        ("alias introduction golden corpus", alias_golden),
        ("free variables", free_variables),
        ("parse and pretty round trip", round_trip),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1)
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
