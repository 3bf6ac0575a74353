//! Argument parsing and dispatch for the `mulchar` binary.

use std::fs;

use clap::{Args, CommandFactory, Parser, Subcommand};
use serde_json::{json, Value};

use mulchar_core::character::CharContext;
use mulchar_core::cyclotomic::{cyclotomic_poly, CycloNum, RootOfUnity};
use mulchar_core::exact::{MPoly, MonomialOrder, Rat};
use mulchar_core::finite_field::{conway_poly_string, FqElem};
use mulchar_core::ideal::{type_ideals, Ideal};
use mulchar_core::mann::{axiom_instance, char_pullback, d_bound, genericity_check, mann_solve, standard_pool, MannEquation};
use mulchar_core::mult_lattice::{
    group_member, is_mult_independent, mcl_member, mult_basis, parse_units, relation_lattice, relation_lattice_mod_torsion,
};
use mulchar_core::parse::{parse_cyclo, parse_cyclo_poly, parse_expr, parse_rat_list, parse_rat_poly, split_top_level};
use mulchar_core::pcset::{fmt_rank, pc_rel, FinitePresentation};
use mulchar_core::rank::{gd_eval, gr_eval, RankDescriptor};
use mulchar_core::verify::run_suite;
use mulchar_core::{Error, Limits, Result};

#[derive(Parser, Debug)]
#[command(name = "mulchar", version, about = "Exact computations with a generic multiplicative character")]
pub struct Cli {
    /// Structured JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// χ of a finite-field element, or the preimage of a root of unity.
    Chi {
        #[arg(long)]
        p: u64,
        #[arg(long, conflicts_with = "root", required_unless_present = "root")]
        elem: Option<String>,
        #[arg(long)]
        root: Option<String>,
    },
    /// Finite-field utilities.
    #[command(subcommand)]
    Fq(FqCmd),
    /// Cyclotomic numbers and polynomials.
    #[command(subcommand)]
    Cyclo(CycloCmd),
    /// The relation lattice (multiplicative type) of a unit tuple.
    Mtp {
        #[arg(long)]
        units: String,
        #[arg(long, default_value = "")]
        over: String,
        /// Saturate the lattice, ignoring torsion.
        #[arg(long)]
        mod_torsion: bool,
    },
    /// Multiplicative closure and independence.
    #[command(subcommand)]
    Mcl(MclCmd),
    /// Mann equations `Σ cᵢyᵢ = 1` over roots of unity.
    #[command(subcommand)]
    Mann(MannCmd),
    /// Genericity of a unit tuple over a base.
    Generic {
        #[arg(long)]
        g: String,
        #[arg(long, default_value = "")]
        h: String,
    },
    /// One instance of the axiom scheme bounding orders in the image of χ.
    Axiom {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        nmax: u32,
        /// One coefficient tuple; the standard pool when omitted.
        #[arg(long)]
        coeffs: Option<String>,
    },
    /// The preimage under χ of a system over roots of unity, in variables `w1..wk`.
    Pullback {
        #[arg(long)]
        p: u64,
        /// Polynomials separated by `;`.
        #[arg(long)]
        system: String,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Polynomial ideals over ℚ in `x1..xn`.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Pseudo-constructible presentations read from a JSON file.
    Pcset(PcsetArgs),
    /// Geometric rank and degree of symbolic descriptors.
    #[command(subcommand)]
    Rank(RankCmd),
    /// Run a property suite: character, mann, lies, refine or rank.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        nmax: u32,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum FqCmd {
    /// The Conway polynomial `C_{p,n}`.
    Conway {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
    },
    /// Discrete logarithm to the Conway generator.
    Dlog {
        #[arg(long)]
        elem: String,
    },
    /// Multiplicative order.
    Order {
        #[arg(long)]
        elem: String,
    },
    /// Image in `𝔽_{p^n}` under the Conway embedding.
    Embed {
        #[arg(long)]
        elem: String,
        #[arg(long)]
        n: u32,
    },
    /// `a op b` with op one of add, sub, mul, div.
    Arith {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        op: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum CycloCmd {
    /// Canonical form of an expression in `z(a/m)` tokens and rationals.
    Eval {
        #[arg(long)]
        expr: String,
    },
    /// The cyclotomic polynomial `Φ_k`.
    Poly {
        #[arg(long)]
        k: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum MclCmd {
    /// Whether `elem` lies in `mcl_over(set)`.
    Member {
        #[arg(long)]
        elem: String,
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "")]
        over: String,
    },
    /// A maximal independent subset of `set` over `over`.
    Basis {
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "")]
        over: String,
    },
    /// Multiplicative independence of `set` over `over`.
    Independent {
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "")]
        over: String,
    },
    /// Whether `elem` lies in the group generated by `set`.
    Group {
        #[arg(long)]
        elem: String,
        #[arg(long)]
        set: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum MannCmd {
    /// All non-degenerate solutions.
    Solve {
        #[arg(long)]
        coeffs: String,
    },
    /// The order bound `d(n)`.
    Bound {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum IdealCmd {
    /// Membership of `poly`, or of a power of it with `--radical`.
    Member {
        #[command(flatten)]
        gens: Gens,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        radical: bool,
    },
    /// Reduced Gröbner basis (graded reverse lexicographic).
    Groebner {
        #[command(flatten)]
        gens: Gens,
    },
    /// Krull dimension of the quotient; `-inf` for the unit ideal.
    Dim {
        #[command(flatten)]
        gens: Gens,
    },
    /// Generators of `I : poly^∞`.
    Saturate {
        #[command(flatten)]
        gens: Gens,
        #[arg(long)]
        poly: String,
    },
    /// Membership of `poly` in the type ideals `I_g` and `√J_g` of a root tuple.
    Type {
        #[arg(long)]
        g: String,
        #[arg(long)]
        poly: String,
    },
}

#[derive(Args, Debug)]
pub struct Gens {
    /// Generators separated by `;` or `,`.
    #[arg(long, required_unless_present = "file")]
    gens: Option<String>,
    /// Number of variables; inferred when omitted.
    #[arg(long)]
    n: Option<usize>,
    /// Read generators from a file, one per line, instead.
    #[arg(long, conflicts_with = "gens")]
    file: Option<String>,
}

#[derive(Args, Debug)]
pub struct PcsetArgs {
    /// closure, rank, rel, refine, quotient or grgd.
    action: String,
    #[arg(long)]
    file: String,
    /// Fiber indices for `rel`.
    #[arg(long, default_value_t = 0)]
    a: usize,
    #[arg(long, default_value_t = 1)]
    b: usize,
    /// For `refine`: continue to a geometric presentation.
    #[arg(long)]
    geometric: bool,
}

#[derive(Subcommand, Debug)]
pub enum RankCmd {
    /// Geometric rank `gr`.
    Eval {
        #[arg(long)]
        expr: String,
    },
    /// Geometric degree `gd`.
    Gd {
        #[arg(long)]
        expr: String,
    },
}

/// What a command produced: text lines and their structured form.
pub struct Output {
    pub text: String,
    pub json: Value,
    /// Nonzero when the command ran but reports failure (a failing suite).
    pub status: i32,
}

fn out(text: impl Into<String>, json: Value) -> Output {
    Output { text: text.into(), json, status: 0 }
}

fn fq(s: &str) -> Result<FqElem> {
    s.trim().parse()
}

fn units(s: &str) -> Result<Vec<mulchar_core::mult_lattice::Unit>> {
    parse_units(s)
}

fn strs<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn polys(g: &Gens) -> Result<(usize, Vec<MPoly<Rat>>)> {
    let text = match &g.file {
        Some(f) => fs::read_to_string(f).map_err(|e| Error::Invalid(format!("{f}: {e}")))?.replace('\n', ";"),
        None => g.gens.clone().unwrap_or_default(),
    };
    let pieces: Vec<String> = split_top_level(&text, ';')
        .into_iter()
        .flat_map(|s| split_top_level(s, ','))
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    let n = match g.n {
        Some(n) => n,
        None => pieces.iter().map(|s| Ok(parse_expr(s)?.max_var("x"))).collect::<Result<Vec<_>>>()?.into_iter().max().unwrap_or(0),
    };
    Ok((n, pieces.iter().map(|s| parse_rat_poly(s, Some(n))).collect::<Result<_>>()?))
}

fn show_polys(ps: &[MPoly<Rat>]) -> Vec<String> {
    ps.iter().map(|p| p.display_with("x")).collect()
}

fn load(file: &str, limits: &Limits) -> Result<FinitePresentation> {
    let text = fs::read_to_string(file).map_err(|e| Error::Invalid(format!("{file}: {e}")))?;
    FinitePresentation::from_json(&text, limits)
}

fn label(l: &[FqElem]) -> String {
    format!("({})", strs(l).join(","))
}

fn presentation_text(p: &FinitePresentation) -> Result<String> {
    let mut lines = Vec::new();
    for f in p.fibers() {
        let (r, d) = f.set.rank_deg()?;
        lines.push(format!("{} {} [rK={}, dK={d}]", label(&f.label), f.set, fmt_rank(r)));
    }
    Ok(lines.join("\n"))
}

fn pcset(args: &PcsetArgs, limits: &Limits) -> Result<Output> {
    let p = load(&args.file, limits)?;
    match args.action.as_str() {
        "closure" => {
            let mut lines = Vec::new();
            let mut js = Vec::new();
            for f in p.fibers() {
                let c = f.set.closure()?;
                lines.push(format!("{} {c}", label(&f.label)));
                js.push(json!({ "label": strs(&f.label), "closure": c }));
            }
            Ok(out(lines.join("\n"), json!(js)))
        }
        "rank" => {
            let mut lines = Vec::new();
            let mut js = Vec::new();
            for f in p.fibers() {
                let (r, d) = f.set.rank_deg()?;
                lines.push(format!("{} rK={} dK={d}", label(&f.label), fmt_rank(r)));
                js.push(json!({ "label": strs(&f.label), "rK": fmt_rank(r), "dK": d }));
            }
            Ok(out(lines.join("\n"), json!(js)))
        }
        "rel" => {
            let fs = p.fibers();
            let get = |i: usize| fs.get(i).ok_or_else(|| Error::Invalid(format!("no fiber with index {i}")));
            let rel = pc_rel(&get(args.a)?.set, &get(args.b)?.set)?;
            Ok(out(rel.to_string(), json!({ "relation": rel })))
        }
        "refine" => {
            let mut r = p.refine_essentially_disjoint()?;
            if args.geometric {
                r = r.refine_geometric()?;
            }
            Ok(out(presentation_text(&r)?, r.to_json()))
        }
        "quotient" => {
            let q = p.primary_quotient()?;
            let text: Vec<String> = q.iter().map(|c| c.iter().map(|l| label(l)).collect::<Vec<_>>().join(" ")).collect();
            let js: Vec<Vec<Vec<String>>> = q.iter().map(|c| c.iter().map(|l| strs(l)).collect()).collect();
            Ok(out(text.join("\n"), json!(js)))
        }
        "grgd" => {
            let g = p.refine_essentially_disjoint()?.refine_geometric()?;
            let (gr, gd) = g.gr_gd()?;
            Ok(out(format!("gr = {gr}\ngd = {gd}"), json!({ "gr": gr, "gd": gd })))
        }
        other => Err(Error::Invalid(format!("unknown pcset action {other:?}; expected closure, rank, rel, refine, quotient or grgd"))),
    }
}

fn cyclo_system(s: &str, k: Option<usize>) -> Result<(usize, Vec<MPoly<CycloNum>>)> {
    let parts: Vec<&str> = split_top_level(s, ';').into_iter().filter(|t| !t.trim().is_empty()).collect();
    let k = match k {
        Some(k) => k,
        None => parts.iter().map(|t| Ok(parse_expr(t)?.max_var("w"))).collect::<Result<Vec<_>>>()?.into_iter().max().unwrap_or(0),
    };
    let ps = parts.iter().map(|t| parse_cyclo_poly(t, "w", Some(k))).collect::<Result<_>>()?;
    Ok((k, ps))
}

fn dispatch(cli: &Cli, limits: &Limits) -> Result<Output> {
    match &cli.command {
        Command::Chi { p, elem, root } => {
            let ctx = CharContext::new(*p)?;
            if let Some(r) = root {
                let u: RootOfUnity = r.parse()?;
                let a = ctx.chi_preimage(&u)?;
                let text = a.map_or_else(|| "absent".to_string(), |a| a.to_string());
                return Ok(out(text, json!({ "preimage": a })));
            }
            let a = fq(elem.as_deref().expect("clap enforces one of elem/root"))?;
            let v = ctx.chi(&a)?;
            let root = ctx.chi_root(&a)?;
            let text = root.as_ref().map_or_else(|| v.to_string(), ToString::to_string);
            Ok(out(text, json!({ "chi": v, "root": root })))
        }
        Command::Fq(cmd) => match cmd {
            FqCmd::Conway { p, n } => {
                let s = conway_poly_string(*p, *n)?;
                Ok(out(s.clone(), json!({ "conway": s })))
            }
            FqCmd::Dlog { elem } => {
                let k = fq(elem)?.dlog()?;
                Ok(out(k.to_string(), json!({ "dlog": k })))
            }
            FqCmd::Order { elem } => {
                let k = fq(elem)?.order()?;
                Ok(out(k.to_string(), json!({ "order": k })))
            }
            FqCmd::Embed { elem, n } => {
                let e = fq(elem)?.embed(*n)?;
                Ok(out(e.to_string(), json!({ "image": e })))
            }
            FqCmd::Arith { a, b, op } => {
                let (a, b) = (fq(a)?, fq(b)?);
                let r = match op.as_str() {
                    "add" => a.try_add(&b)?,
                    "sub" => a.try_sub(&b)?,
                    "mul" => a.try_mul(&b)?,
                    "div" => a.try_div(&b)?,
                    other => return Err(Error::Invalid(format!("unknown operation {other:?}"))),
                };
                Ok(out(r.to_string(), json!({ "result": r })))
            }
        },
        Command::Cyclo(cmd) => match cmd {
            CycloCmd::Eval { expr } => {
                let c = parse_cyclo(expr)?;
                Ok(out(c.to_string(), json!({ "value": c, "conductor": c.conductor() })))
            }
            CycloCmd::Poly { k } => {
                if *k == 0 {
                    return Err(Error::Invalid("k must be positive".into()));
                }
                let s = cyclotomic_poly(*k).display_with("x");
                Ok(out(s.clone(), json!({ "poly": s })))
            }
        },
        Command::Mtp { units: u, over, mod_torsion } => {
            let (g, h) = (units(u)?, units(over)?);
            let lat = if *mod_torsion { relation_lattice_mod_torsion(&g, &h)? } else { relation_lattice(&g, &h)? };
            Ok(out(lat.to_string(), json!({ "hnf": lat, "rank": lat.rank() })))
        }
        Command::Mcl(cmd) => match cmd {
            MclCmd::Member { elem, set, over } => {
                let a = elem.parse()?;
                let b = mcl_member(&a, &units(set)?, &units(over)?)?;
                Ok(out(b.to_string(), json!({ "member": b })))
            }
            MclCmd::Basis { set, over } => {
                let b = strs(&mult_basis(&units(set)?, &units(over)?)?);
                Ok(out(b.join(","), json!({ "basis": b })))
            }
            MclCmd::Independent { set, over } => {
                let b = is_mult_independent(&units(set)?, &units(over)?)?;
                Ok(out(b.to_string(), json!({ "independent": b })))
            }
            MclCmd::Group { elem, set } => {
                let b = group_member(&elem.parse()?, &units(set)?)?;
                Ok(out(b.to_string(), json!({ "member": b })))
            }
        },
        Command::Mann(cmd) => match cmd {
            MannCmd::Solve { coeffs } => {
                let sols = mann_solve(&MannEquation::new(parse_rat_list(coeffs)?)?, limits)?;
                let lines: Vec<String> = sols.solutions.iter().map(|s| strs(s).join(",")).collect();
                Ok(out(lines.join("\n"), serde_json::to_value(&sols).expect("serialisable")))
            }
            MannCmd::Bound { n } => {
                let d = d_bound(*n);
                Ok(out(d.to_string(), json!({ "bound": d })))
            }
        },
        Command::Generic { g, h } => {
            let r = genericity_check(&units(g)?, &units(h)?)?;
            let mut text = format!("generic = {}", r.generic);
            if let Some(w) = &r.witness {
                text.push_str(&format!("\nwitness: {w}"));
            }
            if let Some(c) = &r.certificate {
                text.push_str(&format!("\ncertificate: {c}"));
            }
            Ok(out(text, serde_json::to_value(&r).expect("serialisable")))
        }
        Command::Axiom { p, n, nmax, coeffs } => {
            let ctx = CharContext::new(*p)?;
            let pool = match coeffs {
                Some(c) => vec![parse_rat_list(c)?],
                None => standard_pool(*n),
            };
            let r = axiom_instance(&ctx, *n, &pool, *nmax)?;
            let mut text = format!("holds = {} ({} equations, {} solutions in the image)", r.holds, r.equations, r.solutions_in_image);
            if let Some(w) = &r.witness {
                text.push_str(&format!("\nwitness: {w}"));
            }
            Ok(out(text, serde_json::to_value(&r).expect("serialisable")))
        }
        Command::Pullback { p, system, k } => {
            let ctx = CharContext::new(*p)?;
            let (k, sys) = cyclo_system(system, *k)?;
            let set = char_pullback(&ctx, &sys, k, limits)?;
            let lines = set.system_strings(limits)?;
            Ok(out(lines.join("\n"), json!({ "system": lines, "pieces": set })))
        }
        Command::Ideal(cmd) => ideal(cmd, limits),
        Command::Pcset(args) => pcset(args, limits),
        Command::Rank(cmd) => match cmd {
            RankCmd::Eval { expr } => {
                let gr = gr_eval(&expr.parse::<RankDescriptor>()?);
                Ok(out(gr.to_string(), json!({ "gr": gr })))
            }
            RankCmd::Gd { expr } => {
                let gd = gd_eval(&expr.parse::<RankDescriptor>()?)?;
                Ok(out(gd.to_string(), json!({ "gd": gd })))
            }
        },
        Command::Verify { suite, p, nmax, n } => {
            let r = run_suite(suite, *p, *nmax, *n, limits)?;
            let status = if r.passed() { 0 } else { 1 };
            Ok(Output { text: r.to_string(), json: serde_json::to_value(&r).expect("serialisable"), status })
        }
    }
}

fn ideal(cmd: &IdealCmd, limits: &Limits) -> Result<Output> {
    let order = MonomialOrder::GRevLex;
    let build = |g: &Gens| -> Result<(usize, Ideal<Rat>)> {
        let (n, ps) = polys(g)?;
        Ok((n, Ideal::new(n, order, ps)?.with_limits(*limits)))
    };
    match cmd {
        IdealCmd::Member { gens, poly, radical } => {
            let (n, i) = build(gens)?;
            let f = parse_rat_poly(poly, Some(n))?;
            let b = if *radical { i.radical_member(&f)? } else { i.contains(&f)? };
            Ok(out(b.to_string(), json!({ "member": b })))
        }
        IdealCmd::Groebner { gens } => {
            let (_, i) = build(gens)?;
            let gb = show_polys(i.groebner()?);
            Ok(out(gb.join("\n"), json!({ "groebner": gb })))
        }
        IdealCmd::Dim { gens } => {
            let (_, i) = build(gens)?;
            let d = fmt_rank(i.dim()?);
            Ok(out(d.clone(), json!({ "dim": d })))
        }
        IdealCmd::Saturate { gens, poly } => {
            let (n, i) = build(gens)?;
            let s = i.saturate(&parse_rat_poly(poly, Some(n))?)?;
            let gb = show_polys(s.groebner()?);
            Ok(out(gb.join("\n"), json!({ "groebner": gb })))
        }
        IdealCmd::Type { g, poly } => {
            let roots: Vec<RootOfUnity> = split_top_level(g, ',').into_iter().map(|s| s.trim().parse()).collect::<Result<_>>()?;
            let t = type_ideals(&roots, limits)?;
            let f = parse_rat_poly(poly, Some(roots.len()))?;
            let (a, b) = (t.in_i_g(&f)?, t.in_radical_j_g(&f)?);
            Ok(out(format!("I_g: {a}\nrad J_g: {b}"), json!({ "in_i_g": a, "in_radical_j_g": b })))
        }
    }
}

/// Subcommand names, in dispatch order.
pub fn subcommand_names() -> Vec<String> {
    Cli::command().get_subcommands().map(|c| c.get_name().to_string()).collect()
}

/// Runs the CLI on `args` (including the program name) and returns `(exit code, stdout, stderr)`.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (2, String::new(), text) };
        }
    };
    let limits = Limits::from_env();
    match dispatch(&cli, &limits) {
        Ok(o) => {
            let text = if cli.json { serde_json::to_string_pretty(&o.json).expect("valid json") } else { o.text };
            (o.status, format!("{text}\n"), String::new())
        }
        Err(e) => (1, String::new(), format!("error: {e}\n")),
    }
}
