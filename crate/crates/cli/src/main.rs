//! `bs1n`: command-line access to normal forms, endomorphisms, twisted
//! conjugacy and fixed-point queries in BS(1,n).

use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use bs1n::dioph::{solve, DiophInstance, DiophSolution};
use bs1n::fixpoint::{fix_in_class_of_a, is_outer_fixed, is_weakly_fixed, verify_prop48};
use bs1n::oracle::{brute_dioph, brute_tcp, SearchBox};
use bs1n::tcp::{decide_conj, decide_tcp, TcpInstance, TcpResult};
use bs1n::{parse_endo, Endo, GroupContext, GroupElement};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "bs1n", version, about = "Exact computation in BS(1,n) = <a, t | a = t^-1 a^n t>")]
struct Cli {
    /// The group parameter n, |n| >= 2.
    #[arg(short = 'n', global = true, allow_negative_numbers = true)]
    n: Option<i64>,

    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Read JSON requests from stdin, one per line, and answer each with
    /// one JSON line.
    #[arg(long)]
    batch: bool,

    /// Evaluate batch lines in parallel. Output order still follows input.
    #[arg(long, requires = "batch")]
    parallel: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Normal form a^{α} t^{c} of a word.
    Normalize { word: String },
    /// Product of the given words, left to right.
    Mul {
        #[arg(required = true, num_args = 1..)]
        words: Vec<String>,
    },
    /// Inverse.
    Inv { word: String },
    /// r-th power, r may be negative.
    Pow {
        word: String,
        #[arg(allow_negative_numbers = true)]
        r: i64,
    },
    /// Whether two words are equal in the group.
    Eq { left: String, right: String },
    /// The t-exponent sum.
    Pi { word: String },
    /// Image of a word under an endomorphism.
    Apply {
        #[arg(long)]
        endo: String,
        word: String,
    },
    /// The endomorphism "first, then second".
    Compose { first: String, second: String },
    /// Whether v = (gψ)^-1 u g for some g.
    Tcp {
        #[arg(long)]
        endo: String,
        u: String,
        v: String,
    },
    /// Ordinary conjugacy v = g^-1 u g.
    Conj { u: String, v: String },
    /// Whether (g)ψ = g.
    FixCheck {
        #[arg(long)]
        endo: String,
        word: String,
    },
    /// Whether (g)ψ is conjugate to g.
    OuterFix {
        #[arg(long)]
        endo: String,
        word: String,
    },
    /// Whether (g)ψ is conjugate to a fixed point of ψ.
    WeaklyFix {
        #[arg(long)]
        endo: String,
        word: String,
        fixed: String,
    },
    /// A fixed point of ψ: a ↦ u a u^-1, t ↦ v in the conjugacy class of a,
    /// from u^-1 = (wφ_z)^-1 a^α w.
    FixClassA {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Check u^-1 = (g1 φ_x)^-1 g' g1 for a weakly fixed g1^-1 g2 g1.
    Prop48 {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        afix: String,
        #[arg(long)]
        g1: String,
        #[arg(long)]
        g2: String,
    },
    /// Solve A n^x + B y = C n^z with x >= 0. Always prints JSON.
    Dioph {
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", allow_hyphen_values = true)]
        b: String,
        #[arg(long = "C", allow_hyphen_values = true)]
        c: String,
    },
    /// Exhaustive search for a twisted conjugator a^{y/n^x} t^p.
    OracleTcp {
        #[arg(long)]
        endo: String,
        /// Bounds x,y,p.
        #[arg(long = "box", default_value = "3,20,4")]
        bounds: String,
        u: String,
        v: String,
    },
    /// Exhaustive search over x and z for A n^x + B y = C n^z.
    OracleDioph {
        #[arg(long = "A", allow_hyphen_values = true)]
        a: String,
        #[arg(long = "B", allow_hyphen_values = true)]
        b: String,
        #[arg(long = "C", allow_hyphen_values = true)]
        c: String,
        /// Bounds x,z (a third value is read as z, so x,y,p also works).
        #[arg(long = "box", default_value = "40,40")]
        bounds: String,
    },
    /// The matrix [[n^c, α], [0, 1]].
    Matrix { word: String },
}

/// One answer, in both renderings.
struct Reply {
    text: String,
    json: Value,
}

impl Reply {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Reply {
            text: text.into(),
            json,
        }
    }
}

fn elem_json(g: &GroupElement) -> Value {
    json!({
        "normal_form": g.to_string(),
        "alpha": g.alpha().to_string(),
        "t_exponent": g.t_exponent(),
    })
}

fn tcp_reply(res: &TcpResult) -> Reply {
    let text = match &res.witness {
        Some(g) if res.decision => format!("YES, witness = {g}"),
        _ => "NO".to_string(),
    };
    Reply::new(text, serde_json::to_value(res).expect("TcpResult serializes"))
}

fn int_arg(s: &str, what: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .with_context(|| format!("{what}: expected an integer, got `{s}`"))
}

fn bounds(s: &str, want: &[usize]) -> Result<Vec<u64>> {
    let parts: Vec<u64> = s
        .split(',')
        .map(|p| p.trim().parse::<u64>())
        .collect::<std::result::Result<_, _>>()
        .with_context(|| format!("--box: expected comma-separated unsigned integers, got `{s}`"))?;
    if !want.contains(&parts.len()) {
        bail!("--box: expected {want:?} values, got {}", parts.len());
    }
    Ok(parts)
}

fn dioph_json(sol: &Option<DiophSolution>) -> Value {
    match sol {
        None => json!({ "solvable": false }),
        Some(s) => {
            let y: Value = serde_json::from_str(&s.y.to_string()).expect("integer literal");
            json!({ "solvable": true, "x": s.x, "y": y, "z": s.z })
        }
    }
}

struct Env {
    ctx: GroupContext,
    notes: Vec<String>,
}

impl Env {
    fn word(&self, s: &str) -> Result<GroupElement> {
        self.ctx
            .parse(s)
            .with_context(|| format!("cannot parse word `{s}`"))
    }

    fn endo(&mut self, s: &str) -> Result<Endo> {
        let parsed = parse_endo(s, self.ctx).with_context(|| format!("cannot parse endomorphism `{s}`"))?;
        if parsed.reclassified {
            self.notes
                .push(format!("`{s}` has alpha = 0 and is treated as type II"));
        }
        Ok(parsed.endo)
    }
}

fn execute(cmd: &Command, n: Option<i64>) -> Result<Reply> {
    let n = n.ok_or_else(|| anyhow!("missing -n"))?;
    let ctx = GroupContext::new(n)?;
    let mut env = Env {
        ctx,
        notes: Vec::new(),
    };
    let mut reply = dispatch(cmd, &mut env)?;
    if !env.notes.is_empty() {
        if let Value::Object(m) = &mut reply.json {
            m.insert("notes".into(), json!(env.notes));
        }
        for note in &env.notes {
            eprintln!("note: {note}");
        }
    }
    Ok(reply)
}

fn dispatch(cmd: &Command, env: &mut Env) -> Result<Reply> {
    let ctx = env.ctx;
    Ok(match cmd {
        Command::Normalize { word } => {
            let g = env.word(word)?;
            Reply::new(g.to_string(), elem_json(&g))
        }
        Command::Mul { words } => {
            let mut acc = ctx.identity();
            for w in words {
                acc = acc.mul(&env.word(w)?);
            }
            Reply::new(acc.to_string(), elem_json(&acc))
        }
        Command::Inv { word } => {
            let g = env.word(word)?.inv();
            Reply::new(g.to_string(), elem_json(&g))
        }
        Command::Pow { word, r } => {
            let g = env.word(word)?.pow(*r);
            Reply::new(g.to_string(), elem_json(&g))
        }
        Command::Eq { left, right } => {
            let eq = env.word(left)? == env.word(right)?;
            Reply::new(eq.to_string(), json!({ "equal": eq }))
        }
        Command::Pi { word } => {
            let c = env.word(word)?.t_exponent();
            Reply::new(c.to_string(), json!({ "t_exponent": c }))
        }
        Command::Apply { endo, word } => {
            let e = env.endo(endo)?;
            let g = e.apply(&env.word(word)?);
            Reply::new(g.to_string(), elem_json(&g))
        }
        Command::Compose { first, second } => {
            let e = Endo::compose(&env.endo(first)?, &env.endo(second)?);
            Reply::new(e.spec_string(), serde_json::to_value(&e)?)
        }
        Command::Tcp { endo, u, v } => {
            let inst = TcpInstance::new(env.word(u)?, env.word(v)?, env.endo(endo)?)?;
            tcp_reply(&decide_tcp(&inst)?)
        }
        Command::Conj { u, v } => tcp_reply(&decide_conj(&env.word(u)?, &env.word(v)?)?),
        Command::FixCheck { endo, word } => {
            let fixed = env.endo(endo)?.is_fixed(&env.word(word)?);
            Reply::new(fixed.to_string(), json!({ "fixed": fixed }))
        }
        Command::OuterFix { endo, word } => {
            let e = env.endo(endo)?;
            tcp_reply(&is_outer_fixed(&e, &env.word(word)?)?)
        }
        Command::WeaklyFix { endo, word, fixed } => {
            let e = env.endo(endo)?;
            tcp_reply(&is_weakly_fixed(&e, &env.word(word)?, &env.word(fixed)?)?)
        }
        Command::FixClassA { u, v, alpha } => {
            let alpha = ctx
                .parse_rat(alpha)
                .with_context(|| format!("cannot parse rational `{alpha}`"))?;
            match fix_in_class_of_a(&env.word(u)?, &env.word(v)?, &alpha)? {
                None => Reply::new(
                    "NO",
                    json!({ "decision": false, "witness": null, "fixed": null }),
                ),
                Some(found) => {
                    let mut js = serde_json::to_value(&found.tcp)?;
                    js["fixed"] = json!(found.fixed.to_string());
                    Reply::new(
                        format!("YES, witness = {}, fixed = {}", found.witness, found.fixed),
                        js,
                    )
                }
            }
        }
        Command::Prop48 { u, v, afix, g1, g2 } => {
            let got = verify_prop48(
                &env.word(u)?,
                &env.word(v)?,
                &env.word(afix)?,
                &env.word(g1)?,
                &env.word(g2)?,
            )?;
            match got {
                None => Reply::new(
                    "hypothesis does not hold",
                    json!({ "hypothesis": false }),
                ),
                Some(w) => {
                    let mut js = serde_json::to_value(&w)?;
                    js["hypothesis"] = json!(true);
                    Reply::new(
                        format!(
                            "identity holds with g' = {}, h = {}; solver conjugator {} {}",
                            w.g_prime,
                            w.image,
                            w.solver_conjugator,
                            if w.solver_satisfies_identity {
                                "satisfies it too"
                            } else {
                                "differs from g' by an element of the centraliser"
                            }
                        ),
                        js,
                    )
                }
            }
        }
        Command::Dioph { a, b, c } => {
            let inst = DiophInstance::new(int_arg(a, "--A")?, int_arg(b, "--B")?, int_arg(c, "--C")?, ctx.n())?;
            let js = dioph_json(&solve(&inst)?);
            Reply::new(js.to_string(), js)
        }
        Command::OracleTcp { endo, bounds: bx, u, v } => {
            let b = bounds(bx, &[3])?;
            let bx = SearchBox::new(
                u32::try_from(b[0]).context("--box: x too large")?,
                b[1],
                b[2],
            );
            let inst = TcpInstance::new(env.word(u)?, env.word(v)?, env.endo(endo)?)?;
            match brute_tcp(&inst, &bx) {
                Some(g) => Reply::new(
                    format!("found, witness = {g}"),
                    json!({ "found": true, "witness": g.to_string() }),
                ),
                None => Reply::new(
                    "none in box",
                    json!({ "found": false, "witness": null }),
                ),
            }
        }
        Command::OracleDioph { a, b, c, bounds: bx } => {
            let v = bounds(bx, &[2, 3])?;
            let (xmax, zmax) = (v[0], *v.last().unwrap());
            let inst = DiophInstance::new(int_arg(a, "--A")?, int_arg(b, "--B")?, int_arg(c, "--C")?, ctx.n())?;
            let js = dioph_json(&brute_dioph(
                &inst,
                u32::try_from(xmax).context("--box: x too large")?,
                u32::try_from(zmax).context("--box: z too large")?,
            ));
            Reply::new(js.to_string(), js)
        }
        Command::Matrix { word } => {
            let m = env.word(word)?.to_matrix();
            let rows: Vec<Vec<String>> = m
                .m
                .iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect())
                .collect();
            Reply::new(m.to_string(), json!({ "matrix": rows }))
        }
    })
}

/// A batch line: `{"cmd": "tcp", "n": 2, "endo": "id", "args": ["a", "a^2"]}`.
/// Every key other than `cmd`, `n` and `args` becomes `--key value`, or a
/// bare `--key` when the value is `true`.
#[derive(Deserialize)]
struct Request {
    cmd: String,
    n: Option<i64>,
    #[serde(default)]
    args: Vec<String>,
    #[serde(flatten)]
    flags: BTreeMap<String, Value>,
}

#[derive(Parser)]
#[command(name = "bs1n", no_binary_name = true)]
struct BatchLine {
    #[command(subcommand)]
    command: Command,
}

fn batch_line(line: &str, default_n: Option<i64>) -> Result<Value> {
    let req: Request = serde_json::from_str(line).context("malformed request")?;
    let mut argv = vec![req.cmd.clone()];
    for (k, v) in &req.flags {
        match v {
            Value::Bool(true) => argv.push(format!("--{k}")),
            Value::Bool(false) | Value::Null => {}
            Value::String(s) => argv.push(format!("--{k}={s}")),
            Value::Number(x) => argv.push(format!("--{k}={x}")),
            _ => bail!("flag `{k}` must be a string, number or boolean"),
        }
    }
    if !req.args.is_empty() {
        argv.push("--".into());
        argv.extend(req.args.iter().cloned());
    }
    let parsed = BatchLine::try_parse_from(&argv).map_err(|e| anyhow!("{}", e.render().to_string().trim()))?;
    let reply = execute(&parsed.command, req.n.or(default_n))?;
    Ok(reply.json)
}

fn run_batch(cli: &Cli) -> Result<bool> {
    let lines: Vec<String> = io::stdin()
        .lock()
        .lines()
        .collect::<io::Result<Vec<String>>>()?
        .into_iter()
        .filter(|l| !l.trim().is_empty())
        .collect();
    let answer = |line: &String| match batch_line(line, cli.n) {
        Ok(v) => (true, v.to_string()),
        Err(e) => (false, json!({ "error": format!("{e:#}") }).to_string()),
    };
    let out: Vec<(bool, String)> = if cli.parallel {
        lines.par_iter().map(answer).collect()
    } else {
        lines.iter().map(answer).collect()
    };
    let mut stdout = io::stdout().lock();
    let mut all_ok = true;
    for (ok, line) in out {
        all_ok &= ok;
        writeln!(stdout, "{line}")?;
    }
    Ok(all_ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.batch {
        return match run_batch(&cli) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::FAILURE,
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::FAILURE
            }
        };
    }
    let Some(cmd) = &cli.command else {
        eprintln!("error: no subcommand given (try --help)");
        return ExitCode::from(2);
    };
    match execute(cmd, cli.n) {
        Ok(reply) => {
            // the Diophantine answer is JSON in both modes
            if cli.json {
                println!("{}", reply.json);
            } else {
                println!("{}", reply.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
