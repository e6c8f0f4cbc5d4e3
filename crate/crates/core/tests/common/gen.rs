use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use strategem::minilang::*;

const VARS: &[&str] = &["x", "y", "z", "f", "g", "xs", "acc"];
const CONS: &[&str] = &["Nil", "Cons", "Just", "Pair", "L", "Int", "T"];
const WORDS: &[&str] = &["", "a", "hello", "x y", "42"];

pub struct Gen {
    rng: ChaCha8Rng,
    expr_focus: bool,
    type_focus: bool,
    /// Whether generated terms may contain foci.
    pub foci: bool,
}

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            expr_focus: false,
            type_focus: false,
            foci: true,
        }
    }

    pub fn without_foci(seed: u64) -> Gen {
        Gen {
            foci: false,
            ..Gen::new(seed)
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn var(&mut self) -> VarName {
        VarName::new(*VARS.choose(&mut self.rng).unwrap())
    }

    fn con(&mut self) -> ConName {
        ConName::new(*CONS.choose(&mut self.rng).unwrap())
    }

    pub fn module(&mut self, depth: u32) -> Module {
        self.expr_focus = false;
        self.type_focus = false;
        let n = self.rng.gen_range(0..5);
        let decls = (0..n).map(|_| self.decl(depth)).collect();
        Module {
            name: ConName::new("Gen"),
            decls,
        }
    }

    pub fn decl(&mut self, depth: u32) -> Decl {
        match self.rng.gen_range(0..3) {
            0 => {
                let n = self.rng.gen_range(1..4);
                let cons = (0..n)
                    .map(|_| {
                        let k = self.rng.gen_range(0..3);
                        ConDecl {
                            name: self.con(),
                            fields: (0..k).map(|_| self.ty(depth.saturating_sub(1))).collect(),
                        }
                    })
                    .collect();
                Decl::Data(self.con(), cons)
            }
            1 => Decl::TypeSyn(self.con(), self.ty(depth)),
            _ => {
                let k = self.rng.gen_range(0..3);
                let params = (0..k).map(|_| self.pattern(2)).collect();
                Decl::FunBind(self.var(), params, self.expr(depth))
            }
        }
    }

    pub fn ty(&mut self, depth: u32) -> Type {
        if self.foci && !self.type_focus && self.rng.gen_ratio(1, 12) {
            self.type_focus = true;
            return Type::focus(self.ty(depth.saturating_sub(1)));
        }
        let choice = if depth == 0 {
            self.rng.gen_range(0..2)
        } else {
            self.rng.gen_range(0..4)
        };
        match choice {
            0 => Type::Con(self.con()),
            1 => Type::Var(self.var()),
            2 => Type::app(self.ty(depth - 1), self.ty(depth - 1)),
            _ => Type::fun(self.ty(depth - 1), self.ty(depth - 1)),
        }
    }

    pub fn pattern(&mut self, depth: u32) -> Pattern {
        if depth == 0 || self.rng.gen_bool(0.6) {
            Pattern::Var(self.var())
        } else {
            let k = self.rng.gen_range(0..3);
            Pattern::Con(
                self.con(),
                (0..k).map(|_| self.pattern(depth - 1)).collect(),
            )
        }
    }

    pub fn expr(&mut self, depth: u32) -> Expr {
        if self.foci && !self.expr_focus && self.rng.gen_ratio(1, 12) {
            self.expr_focus = true;
            return Expr::focus(self.expr(depth.saturating_sub(1)));
        }
        let choice = if depth == 0 {
            self.rng.gen_range(0..4)
        } else {
            self.rng.gen_range(0..8)
        };
        match choice {
            0 => Expr::Var(self.var()),
            1 => Expr::Con(self.con()),
            2 => Expr::Int(BigInt::from(self.rng.gen_range(0u64..1_000_000))),
            3 => Expr::str(*WORDS.choose(&mut self.rng).unwrap()),
            4 | 5 => Expr::app(self.expr(depth - 1), self.expr(depth - 1)),
            6 => Expr::lam(self.pattern(1), self.expr(depth - 1)),
            _ => Expr::Let(
                self.var(),
                Box::new(self.expr(depth - 1)),
                Box::new(self.expr(depth - 1)),
            ),
        }
    }

    /// An expression in which every variable is bound by an enclosing
    /// lambda or let.
    pub fn closed_expr(&mut self, depth: u32) -> Expr {
        self.closed(&mut Vec::new(), depth)
    }

    fn closed(&mut self, env: &mut Vec<VarName>, depth: u32) -> Expr {
        let choice = match (env.is_empty(), depth) {
            (true, 0) => 1,
            (true, _) => *[1, 2, 4, 5, 6].choose(&mut self.rng).unwrap(),
            (false, 0) => self.rng.gen_range(0..3),
            (false, _) => self.rng.gen_range(0..7),
        };
        match choice {
            0 | 3 => Expr::Var(env.choose(&mut self.rng).unwrap().clone()),
            1 => Expr::Con(self.con()),
            2 => Expr::Int(BigInt::from(self.rng.gen_range(0u32..100))),
            4 => {
                let d = depth.saturating_sub(1);
                Expr::app(self.closed(env, d), self.closed(env, d))
            }
            5 => {
                let p = self.pattern(2);
                let bound = pattern_names(&p);
                let n = env.len();
                env.extend(bound);
                let body = self.closed(env, depth.saturating_sub(1));
                env.truncate(n);
                Expr::lam(p, body)
            }
            _ => {
                let x = self.var();
                env.push(x.clone());
                let d = depth.saturating_sub(1);
                let bound = self.closed(env, d);
                let body = self.closed(env, d);
                env.pop();
                Expr::Let(x, Box::new(bound), Box::new(body))
            }
        }
    }
}

fn pattern_names(p: &Pattern) -> Vec<VarName> {
    match p {
        Pattern::Var(x) => vec![x.clone()],
        Pattern::Con(_, ps) => ps.iter().flat_map(pattern_names).collect(),
    }
}
