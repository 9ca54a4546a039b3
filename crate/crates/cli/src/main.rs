use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};

use gentle_core::auslander::build_auslander;
use gentle_core::desing::verify_desingularization;
use gentle_core::gorenstein::{gproj_catalog, is_gorenstein_projective};
use gentle_core::grassmannian::{
    counting_report, enumerate_grassmannian, generic_types, stratify, tangent_dim, FingerprintBasis,
    DEFAULT_LENGTH_BOUND, DEFAULT_PRIMES,
};
use gentle_core::io::{module_to_text, parse_dim_vector, parse_module};
use gentle_core::quiver::{cycles, is_gentle, is_one_gorenstein};
use gentle_core::scenario::{find_scenario, run_scenario, ScenarioOptions};
use gentle_core::{parse_quiver, BoundQuiver, PrimeField, Representation};

const PRIMES_ENV: &str = "GD_DEFAULT_PRIMES";

#[derive(Parser, Debug)]
#[command(name = "gentle", version, about = "Quiver Grassmannians of gentle algebras over finite prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Primes to work over (comma separated or repeated).
    #[arg(long = "q", global = true, value_delimiter = ',')]
    primes: Vec<u64>,
    /// Maximal string length used for isomorphism fingerprints.
    #[arg(long, global = true, default_value_t = DEFAULT_LENGTH_BOUND)]
    length_bound: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit the line protocol instead of text tables.
    #[arg(long, global = true)]
    machine: bool,
    /// Worker threads for enumeration.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gentleness and the 1-Gorenstein criterion.
    Check { quiver: PathBuf },
    /// The cycle classes and the cyclic/non-cyclic arrow split.
    Cycles { quiver: PathBuf },
    /// Gorenstein projective modules.
    Gproj {
        #[command(subcommand)]
        action: GprojAction,
    },
    /// Prints the Auslander bound quiver.
    Auslander { quiver: PathBuf },
    /// Prints the lifted module as a module file.
    Phi { quiver: PathBuf, module: PathBuf },
    /// Quiver Grassmannians `Gr_e(M)`.
    Grass {
        #[command(subcommand)]
        action: GrassAction,
    },
    /// Desingularization checks.
    Desing {
        #[command(subcommand)]
        action: DesingAction,
    },
    /// Runs a bundled worked example (`5.1` or `5.2`).
    Example {
        id: String,
        #[arg(long)]
        experiment: bool,
    },
}

#[derive(Subcommand, Debug)]
enum GprojAction {
    /// The catalog of indecomposable Gorenstein projectives.
    List { quiver: PathBuf },
    /// Decides whether a module is Gorenstein projective.
    Check { quiver: PathBuf, module: PathBuf },
}

#[derive(Args, Debug)]
struct GrassInput {
    quiver: PathBuf,
    module: PathBuf,
    /// `2,0,1` or `1=2,3=1`.
    e: String,
}

#[derive(Subcommand, Debug)]
enum GrassAction {
    Count(GrassInput),
    Strata(GrassInput),
    Tangent(GrassInput),
}

#[derive(Subcommand, Debug)]
enum DesingAction {
    Verify {
        #[command(flatten)]
        input: GrassInput,
        #[arg(long)]
        experiment: bool,
        /// Also print the per-point fiber table.
        #[arg(long)]
        fibers: bool,
    },
}

/// Report text plus whether every verification succeeded.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn default_primes() -> anyhow::Result<Vec<u64>> {
    match std::env::var(PRIMES_ENV) {
        Ok(v) if !v.trim().is_empty() => v
            .split(',')
            .map(|s| s.trim().parse::<u64>().with_context(|| format!("{PRIMES_ENV}: bad prime `{s}`")))
            .collect(),
        _ => Ok(DEFAULT_PRIMES.to_vec()),
    }
}

fn primes(g: &Global) -> anyhow::Result<Vec<u64>> {
    let ps = if g.primes.is_empty() { default_primes()? } else { g.primes.clone() };
    for &p in &ps {
        let small = u32::try_from(p).map_err(|_| anyhow!("--q {p}: prime too large"))?;
        PrimeField::new(small).map_err(|e| anyhow!("--q {p}: {e}"))?;
    }
    if ps.is_empty() {
        bail!("no primes given");
    }
    Ok(ps)
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_quiver(path: &Path) -> anyhow::Result<Arc<BoundQuiver>> {
    let q = parse_quiver(&read(path)?).with_context(|| format!("{}", path.display()))?;
    Ok(Arc::new(q))
}

fn load_module(text: &str, path: &Path, q: &Arc<BoundQuiver>, p: u64) -> anyhow::Result<Representation> {
    parse_module(text, q, PrimeField::new(p as u32)?).with_context(|| format!("{}", path.display()))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_check(path: &Path) -> anyhow::Result<Outcome> {
    let q = load_quiver(path)?;
    let g = is_gentle(&q);
    let mut t = String::new();
    if !g.ok {
        let _ = writeln!(t, "gentle: no");
        for v in &g.violations {
            let _ = writeln!(t, "  {v}");
        }
        return Ok(Outcome { text: t, ok: false });
    }
    let gor = is_one_gorenstein(&q)?;
    let cs = cycles(&q)?;
    let _ = writeln!(t, "gentle: yes; 1-Gorenstein: {}; cycles: {}", yes(gor.one_gorenstein), cs.classes.len());
    if let Some((later, earlier)) = gor.witness {
        let _ = writeln!(t, "relation ({}, {}) lies on no cycle", q.arrow_name(later), q.arrow_name(earlier));
    }
    if gor.has_loops {
        t.push_str("note: quiver has loops\n");
    }
    Ok(Outcome::ok(t))
}

fn cmd_cycles(path: &Path, machine: bool) -> anyhow::Result<Outcome> {
    let q = load_quiver(path)?;
    let cs = cycles(&q)?;
    let names = |v: Vec<usize>| {
        if v.is_empty() {
            return "none".to_string();
        }
        v.into_iter().map(|a| q.arrow_name(a).to_string()).collect::<Vec<_>>().join(" ")
    };
    let mut t = String::new();
    if machine {
        for c in &cs.classes {
            let _ = writeln!(t, "cycle {}", c.display(&q));
        }
    } else {
        let _ = writeln!(t, "{} cycle classes", cs.classes.len());
        for (i, c) in cs.classes.iter().enumerate() {
            let _ = writeln!(t, "  C{}: {} (length {})", i + 1, c.display(&q), c.len());
        }
        let _ = writeln!(t, "cyclic arrows: {}", names(cs.cyclic_arrows()));
        let _ = writeln!(t, "non-cyclic arrows: {}", names(cs.non_cyclic_arrows()));
    }
    Ok(Outcome::ok(t))
}

fn cmd_gproj(action: &GprojAction, g: &Global) -> anyhow::Result<Outcome> {
    let p = primes(g)?[0];
    let field = PrimeField::new(p as u32)?;
    match action {
        GprojAction::List { quiver } => {
            let q = load_quiver(quiver)?;
            let cat = gproj_catalog(&q, field)?;
            let mut t = String::new();
            if g.machine {
                for e in &cat.entries {
                    let _ = writeln!(t, "gproj {} {}", e.label, e.module.rep.dim_vector().compact());
                }
            } else {
                let _ = writeln!(t, "{} indecomposables ({} non-projective)", cat.len(), cat.non_projective_count());
                t.push_str(&cat.table());
            }
            Ok(Outcome::ok(t))
        }
        GprojAction::Check { quiver, module } => {
            let q = load_quiver(quiver)?;
            let m = load_module(&read(module)?, module, &q, p)?;
            let cat = gproj_catalog(&q, field)?;
            let r = is_gorenstein_projective(&m, &cat, g.seed)?;
            let verdict = format!("{:?}", r.verdict).to_lowercase();
            let text = if g.machine {
                format!("gproj {verdict}\n")
            } else {
                format!(
                    "Gorenstein projective: {verdict}\ntorsionless: {}\ndecomposition: {}\n",
                    yes(r.torsionless),
                    r.describe(&cat)
                )
            };
            Ok(Outcome::ok(text))
        }
    }
}

fn cmd_auslander(path: &Path) -> anyhow::Result<Outcome> {
    let q = load_quiver(path)?;
    let aus = build_auslander(&q)?;
    Ok(Outcome::ok(aus.gamma.to_text()))
}

fn cmd_phi(quiver: &Path, module: &Path, g: &Global) -> anyhow::Result<Outcome> {
    let q = load_quiver(quiver)?;
    let m = load_module(&read(module)?, module, &q, primes(g)?[0])?;
    let aus = build_auslander(&q)?;
    let hat = aus.phi(&m)?;
    let stem = module.file_stem().and_then(|s| s.to_str()).unwrap_or("M");
    Ok(Outcome::ok(module_to_text(&format!("{stem}^"), &hat)))
}

fn cmd_grass(action: &GrassAction, g: &Global) -> anyhow::Result<Outcome> {
    let (GrassAction::Count(input) | GrassAction::Strata(input) | GrassAction::Tangent(input)) = action;
    let q = load_quiver(&input.quiver)?;
    let e = parse_dim_vector(&input.e, &q)?;
    let text = read(&input.module)?;
    let ps = primes(g)?;
    let build = |f: PrimeField| parse_module(&text, &q, f);
    let mut t = String::new();
    match action {
        GrassAction::Count(_) => {
            let r = counting_report(build, &e, &ps)?;
            if g.machine {
                for (p, n) in &r.counts {
                    let _ = writeln!(t, "count {p} {n}");
                }
                let _ = writeln!(t, "polynomial {}", r.polynomial);
                match r.euler {
                    Some(x) => writeln!(t, "euler {x}")?,
                    None => t.push_str("euler non-integral\n"),
                }
            } else {
                let _ = writeln!(t, "Gr_e(M), e = {}", e.display(&q));
                t.push_str(&r.render());
            }
        }
        GrassAction::Strata(_) => {
            let p = ps[0];
            let m = load_module(&text, &input.module, &q, p)?;
            let pts = enumerate_grassmannian(&m, &e)?;
            let basis = FingerprintBasis::new(&m, g.length_bound)?;
            let strata = stratify(&m, &pts, &basis, g.seed)?;
            let generic = generic_types(&strata);
            if g.machine {
                for s in &strata {
                    let _ = writeln!(t, "stratum {} dim {} count {}", s.fingerprint_hash(), s.expected_dim, s.count);
                }
            } else {
                let _ = writeln!(t, "strata of Gr_e(M) at q={p}, e = {} ({} points)", e.display(&q), pts.len());
                let _ = writeln!(t, "  {:<24} {:>8} {:>8}  fingerprint", "type", "points", "exp.dim");
                for (i, s) in strata.iter().enumerate() {
                    let mark = if generic.indices.contains(&i) { " (generic)" } else { "" };
                    let _ = writeln!(
                        t,
                        "  {:<24} {:>8} {:>8}  {}{mark}",
                        s.name(),
                        s.count,
                        s.expected_dim,
                        s.fingerprint_hash()
                    );
                }
                if generic.heuristic {
                    t.push_str("generic types chosen heuristically (tied minimal strata)\n");
                }
            }
        }
        GrassAction::Tangent(_) => {
            let p = ps[0];
            let m = load_module(&text, &input.module, &q, p)?;
            let pts = enumerate_grassmannian(&m, &e)?;
            let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
            for u in &pts {
                *hist.entry(tangent_dim(&m, u)?).or_default() += 1;
            }
            if g.machine {
                for (d, n) in &hist {
                    let _ = writeln!(t, "tangent {d} count {n}");
                }
            } else {
                let _ = writeln!(t, "tangent dimensions of Gr_e(M) at q={p} ({} points)", pts.len());
                let _ = writeln!(t, "  {:>8} {:>8}", "dim", "points");
                for (d, n) in &hist {
                    let _ = writeln!(t, "  {d:>8} {n:>8}");
                }
            }
        }
    }
    Ok(Outcome::ok(t))
}

fn cmd_desing(action: &DesingAction, g: &Global) -> anyhow::Result<Outcome> {
    let DesingAction::Verify { input, experiment, fibers } = action;
    let q = load_quiver(&input.quiver)?;
    let e = parse_dim_vector(&input.e, &q)?;
    let text = read(&input.module)?;
    let ps = if g.primes.is_empty() { vec![default_primes()?[0]] } else { primes(g)? };
    let build = |f: PrimeField| parse_module(&text, &q, f);
    let r = verify_desingularization(build, &e, &ps, g.length_bound, g.seed, *experiment)?;
    let ok = r.passed();
    let t = if g.machine {
        let mut t = String::new();
        for tr in &r.targets {
            for c in &tr.checks {
                let _ = writeln!(t, "check {} q {} {} {}", tr.label, tr.q, c.name, if c.passed { "pass" } else { "fail" });
            }
        }
        let _ = writeln!(t, "result {}", if ok { "pass" } else { "fail" });
        t
    } else {
        r.render(*fibers)
    };
    Ok(Outcome { text: t, ok })
}

fn cmd_example(id: &str, experiment: bool, g: &Global) -> anyhow::Result<Outcome> {
    let s = find_scenario(id)?;
    let opts = ScenarioOptions {
        primes: primes(g)?,
        desing_primes: (!g.primes.is_empty()).then(|| g.primes.clone()),
        length_bound: g.length_bound,
        seed: g.seed,
        experiment,
    };
    let r = run_scenario(&s, &opts)?;
    let ok = r.passed();
    let t = if g.machine {
        let mut t = String::new();
        for (p, n) in &r.x_counts.counts {
            let _ = writeln!(t, "x-count {p} {n}");
        }
        for (p, n) in &r.y_counts.counts {
            let _ = writeln!(t, "y-count {p} {n}");
        }
        let _ = writeln!(t, "x-polynomial {}", r.x_counts.polynomial);
        let _ = writeln!(t, "y-polynomial {}", r.y_counts.polynomial);
        for name in &r.generic {
            let _ = writeln!(t, "generic {name}");
        }
        let _ = writeln!(t, "max-tangent {}", r.max_tangent);
        let _ = writeln!(t, "result {}", if ok { "pass" } else { "fail" });
        t
    } else {
        r.text
    };
    Ok(Outcome { text: t, ok })
}

fn dispatch(cli: &Cli) -> anyhow::Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Check { quiver } => cmd_check(quiver),
        Command::Cycles { quiver } => cmd_cycles(quiver, g.machine),
        Command::Gproj { action } => cmd_gproj(action, g),
        Command::Auslander { quiver } => cmd_auslander(quiver),
        Command::Phi { quiver, module } => cmd_phi(quiver, module, g),
        Command::Grass { action } => cmd_grass(action, g),
        Command::Desing { action } => cmd_desing(action, g),
        Command::Example { id, experiment } => cmd_example(id, *experiment, g),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let run = || dispatch(&cli);
    let result = match cli.global.jobs {
        Some(0) => Err(anyhow!("--jobs must be at least 1")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(run),
            Err(e) => Err(anyhow!("thread pool: {e}")),
        },
        None => run(),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
