//! Deterministic generators of MiniLang methods and reference/candidate
//! corpora.

/// SplitMix64.
#[derive(Debug, Clone)]
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn chance(&mut self, percent: usize) -> bool {
        self.below(100) < percent
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Var(usize),
    Lit(i64),
    Bin(&'static str, Box<Expr>, Box<Expr>),
    Call(&'static str, Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Stmt {
    Decl(usize, Expr),
    Assign(usize, Expr),
    If((Expr, &'static str, Expr), Vec<Stmt>, Vec<Stmt>),
    While((Expr, &'static str, Expr), Vec<Stmt>),
    Call(&'static str, Vec<Expr>),
    Return(Expr),
}

/// An `int` method over variables `0..params` (parameters) and
/// `params..vars` (locals, declared before use).
#[derive(Debug, Clone, PartialEq)]
pub struct Program {
    pub params: usize,
    pub vars: usize,
    pub body: Vec<Stmt>,
}

pub const NAMES: [&str; 10] = ["a", "b", "c", "x", "y", "z", "w", "u", "v", "k"];
pub const RENAMED: [&str; 10] =
    ["first", "second", "third", "total", "count", "index", "limit", "accum", "delta", "step"];
const CALLEES: [&str; 3] = ["Print", "Log", "Check"];
const ARITH: [&str; 3] = ["+", "-", "*"];
const CMP: [&str; 4] = ["<", "<=", ">", "!="];

fn expr(rng: &mut SplitMix, live: usize, depth: usize) -> Expr {
    match rng.below(if depth == 0 { 2 } else { 4 }) {
        0 if live > 0 => Expr::Var(rng.below(live)),
        0 | 1 => Expr::Lit(rng.below(12) as i64),
        2 => Expr::Bin(
            ARITH[rng.below(ARITH.len())],
            Box::new(expr(rng, live, depth - 1)),
            Box::new(expr(rng, live, depth - 1)),
        ),
        _ => Expr::Call(CALLEES[rng.below(CALLEES.len())], vec![expr(rng, live, depth - 1)]),
    }
}

fn cond(rng: &mut SplitMix, live: usize) -> (Expr, &'static str, Expr) {
    (Expr::Var(rng.below(live)), CMP[rng.below(CMP.len())], expr(rng, live, 1))
}

/// Statements over `live` variables; returns them with the new live count.
/// Nested blocks declare nothing, so every use stays in scope.
fn block(rng: &mut SplitMix, mut live: usize, declare: bool, len: usize, depth: usize) -> (Vec<Stmt>, usize) {
    let mut out = Vec::new();
    for _ in 0..len {
        let choice = rng.below(if depth == 0 { 3 } else { 5 });
        let s = match choice {
            0 if declare && live < NAMES.len() => {
                let e = expr(rng, live, 2);
                live += 1;
                Stmt::Decl(live - 1, e)
            }
            0 | 1 => Stmt::Assign(rng.below(live), expr(rng, live, 2)),
            2 => Stmt::Call(CALLEES[rng.below(CALLEES.len())], vec![expr(rng, live, 1)]),
            3 => {
                let c = cond(rng, live);
                let n = 1 + rng.below(2);
                let then = block(rng, live, false, n, depth - 1).0;
                let els = if rng.chance(50) { block(rng, live, false, 1, depth - 1).0 } else { Vec::new() };
                Stmt::If(c, then, els)
            }
            _ => {
                let c = cond(rng, live);
                let n = 1 + rng.below(2);
                Stmt::While(c, block(rng, live, false, n, depth - 1).0)
            }
        };
        out.push(s);
    }
    (out, live)
}

pub fn program(rng: &mut SplitMix) -> Program {
    let params = 1 + rng.below(3);
    let len = 2 + rng.below(5);
    let (mut body, live) = block(rng, params, true, len, 2);
    body.push(Stmt::Return(Expr::Var(rng.below(live))));
    Program { params, vars: live, body }
}

fn render_expr(e: &Expr, names: &[&str], out: &mut String) {
    match e {
        Expr::Var(v) => out.push_str(names[*v]),
        Expr::Lit(n) => out.push_str(&n.to_string()),
        Expr::Bin(op, l, r) => {
            out.push('(');
            render_expr(l, names, out);
            out.push_str(&format!(" {op} "));
            render_expr(r, names, out);
            out.push(')');
        }
        Expr::Call(f, args) => {
            out.push_str(f);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                render_expr(a, names, out);
            }
            out.push(')');
        }
    }
}

fn render_block(stmts: &[Stmt], names: &[&str], out: &mut String) {
    out.push_str("{ ");
    for s in stmts {
        render_stmt(s, names, out);
        out.push(' ');
    }
    out.push('}');
}

fn render_stmt(s: &Stmt, names: &[&str], out: &mut String) {
    match s {
        Stmt::Decl(v, e) => {
            out.push_str(&format!("int {} = ", names[*v]));
            render_expr(e, names, out);
            out.push(';');
        }
        Stmt::Assign(v, e) => {
            out.push_str(&format!("{} = ", names[*v]));
            render_expr(e, names, out);
            out.push(';');
        }
        Stmt::Call(f, args) => {
            render_expr(&Expr::Call(f, args.clone()), names, out);
            out.push(';');
        }
        Stmt::If((l, op, r), then, els) => {
            out.push_str("if (");
            render_expr(l, names, out);
            out.push_str(&format!(" {op} "));
            render_expr(r, names, out);
            out.push_str(") ");
            render_block(then, names, out);
            if !els.is_empty() {
                out.push_str(" else ");
                render_block(els, names, out);
            }
        }
        Stmt::While((l, op, r), body) => {
            out.push_str("while (");
            render_expr(l, names, out);
            out.push_str(&format!(" {op} "));
            render_expr(r, names, out);
            out.push_str(") ");
            render_block(body, names, out);
        }
        Stmt::Return(e) => {
            out.push_str("return ");
            render_expr(e, names, out);
            out.push(';');
        }
    }
}

impl Program {
    pub fn render(&self, method: &str, names: &[&str]) -> String {
        let params: Vec<String> = (0..self.params).map(|p| format!("int {}", names[p])).collect();
        let mut out = format!("int {method}({}) ", params.join(", "));
        render_block(&self.body, names, &mut out);
        out
    }

    pub fn source(&self) -> String {
        self.render("Compute", &NAMES)
    }

    /// Same method with every variable consistently renamed.
    pub fn renamed(&self) -> String {
        self.render("Compute", &RENAMED)
    }
}

/// Garbled-translation damage: a stray `{` inside the parameter list and a stray `;`
/// before the closing brace.
pub fn break_syntax(source: &str) -> String {
    let open = source.find('(').expect("method has a parameter list");
    let close = source.rfind('}').expect("method has a body");
    format!("{}{{ {} ; {}", &source[..=open], &source[open + 1..close], &source[close..])
}

/// Candidate that drifted from the reference: one extra call statement in the
/// middle of the body and one changed literal or operand.
pub fn drifted(p: &Program, rng: &mut SplitMix) -> Program {
    let mut q = p.clone();
    let at = rng.below(q.body.len());
    q.body.insert(at, Stmt::Call("Trace", vec![Expr::Lit(99)]));
    let target = rng.below(q.body.len() - 1);
    if let Stmt::Decl(_, e) | Stmt::Assign(_, e) | Stmt::Return(e) = &mut q.body[target] {
        *e = Expr::Bin("+", Box::new(e.clone()), Box::new(Expr::Lit(7)));
    }
    q
}

/// Methods whose rendered sources parse and have a dependence graph.
pub fn programs(seed: u64, count: usize) -> Vec<Program> {
    let mut rng = SplitMix(seed);
    (0..count).map(|_| program(&mut rng)).collect()
}
