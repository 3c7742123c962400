mod report;
mod verify;

use std::process::ExitCode;
use std::time::Instant;

use adeg_core::closed_forms::{
    chern_invincible, flecnode_value, hyperflex_count, known_value, pencil_count, septactic_count,
    weight2_inflection_class, weierstrass_divisor, zero_specialized_node_length, ChowDegrees,
};
use adeg_core::invariants::{
    ad_value, bounds_report, delta_and_branches, flecnode_colength, hilbert_samuel, limiting_count, milnor_number,
    node_ad, sd_value, zero_specialized_length, DegeneracyResult,
};
use adeg_core::{format_germ, parse_germ, AdegError, DegeneracyKind, GermSpec, PrimeField, Result, RunConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use report::{big, ratio, Bounds, Report};

#[derive(Parser, Debug)]
#[command(name = "adeg", version, about = "Automatic degeneracies of planar curve singularities")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Prime modulus of the coefficient field.
    #[arg(long, global = true, default_value_t = 7919)]
    prime: u64,
    /// Random draws per unit.
    #[arg(long, global = true, default_value_t = 5)]
    trials: usize,
    /// Random units multiplied into the germ for AD.
    #[arg(long, global = true, default_value_t = 2)]
    units: usize,
    /// RNG seed; 0 draws one from entropy. ADEG_SEED overrides.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// First truncation order (default max(2m, 8)).
    #[arg(long, global = true)]
    start_n: Option<u32>,
    /// Largest truncation order tried.
    #[arg(long, global = true, default_value_t = 64)]
    max_n: u32,
    /// Dual basis: explicit-small, node or zero-specialized.
    #[arg(long, global = true)]
    basis: Option<String>,
    /// Emit JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Include wall-clock time in the output.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Args, Debug, Clone)]
struct Target {
    /// Germ such as "y^2 - x^3".
    #[arg(long)]
    germ: String,
    #[arg(long, short = 'm')]
    order: usize,
    #[arg(long = "type", short = 't', value_parser = parse_kind)]
    kind: DegeneracyKind,
}

#[derive(Args, Debug, Clone)]
struct GermArg {
    #[arg(long)]
    germ: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Automatic degeneracy, checked across random units.
    Ad(Target),
    /// Degeneracy of the germ as given.
    Sd(Target),
    /// Milnor number.
    Milnor(GermArg),
    /// Delta invariant and branch count (binomial germs).
    Delta(GermArg),
    /// Hilbert-Samuel multiplicity of the Jacobian ideal.
    HilbertSamuel(GermArg),
    /// Limiting inflection count.
    Limit(Target),
    /// Node computations through the u,v basis.
    Node {
        #[arg(long, short = 'm')]
        order: usize,
        #[arg(long = "type", short = 't', value_parser = parse_kind, default_value = "w2a")]
        kind: DegeneracyKind,
        /// Flex one branch with the first element.
        #[arg(long, conflicts_with = "zero_spec")]
        flecnode: bool,
        /// Use the zero-specialized functionals.
        #[arg(long)]
        zero_spec: bool,
    },
    /// Lower and upper bounds around a value (computed if not given).
    Bounds {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        value: Option<u64>,
    },
    /// Enumerative counts for general pencils of plane curves.
    Count {
        what: CountKind,
        #[arg(long, short = 'd')]
        degree: i64,
        /// Order, for `pencil`.
        #[arg(long, short = 'm', default_value_t = 4)]
        order: i64,
    },
    /// Lambda and delta_0 coefficients of a Weierstrass divisor.
    Weierstrass {
        #[arg(long, short = 'g')]
        genus: i64,
        #[arg(long, short = 'n', default_value_t = 1)]
        degree: i64,
        #[arg(long = "type", short = 't', value_parser = parse_kind, default_value = "w2a")]
        kind: DegeneracyKind,
    },
    /// Chern coefficients of the invincible parts bundle.
    Chern {
        #[arg(long, short = 'm')]
        order: usize,
        /// Pair against a general pencil of plane curves of this degree.
        #[arg(long, short = 'd')]
        degree: Option<i64>,
        /// L = O(k) on the pencil.
        #[arg(long, default_value_t = 1)]
        line_degree: i64,
    },
    /// Batch verification.
    Verify { what: VerifyKind },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum CountKind {
    Hyperflex,
    Septactic,
    Pencil,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum VerifyKind {
    Table1,
    Formulas,
}

fn parse_kind(s: &str) -> std::result::Result<DegeneracyKind, String> {
    s.parse().map_err(|e: AdegError| e.to_string())
}

fn resolve_seed(flag: u64) -> Result<u64> {
    let seed = match std::env::var("ADEG_SEED") {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map_err(|_| AdegError::Usage(format!("ADEG_SEED must be an unsigned integer, got '{v}'")))?,
        Err(_) => flag,
    };
    if seed != 0 {
        return Ok(seed);
    }
    let drawn = loop {
        let s: u64 = rand::random();
        if s != 0 {
            break s;
        }
    };
    eprintln!("seed: {drawn} (from entropy)");
    Ok(drawn)
}

fn config(g: &Global) -> Result<RunConfig> {
    Ok(RunConfig {
        field: PrimeField::new(g.prime)?,
        trials: g.trials,
        units: g.units,
        seed: resolve_seed(g.seed)?,
        start_n: g.start_n,
        max_n: g.max_n,
        basis: g.basis.clone(),
    })
}

/// Config for deterministic commands; no seed is drawn.
fn fixed_config(g: &Global) -> Result<RunConfig> {
    Ok(RunConfig {
        field: PrimeField::new(g.prime)?,
        start_n: g.start_n,
        max_n: g.max_n,
        ..RunConfig::default()
    })
}

fn germ(text: &str) -> Result<GermSpec> {
    parse_germ(text)
}

fn degeneracy_report(name: &str, r: &DegeneracyResult, cfg: &RunConfig) -> Report {
    let mut rep = Report::new(name, cfg.field.modulus());
    rep.germ = Some(format_germ(&r.germ));
    rep.order = Some(r.order);
    rep.kind = Some(r.kind.label().to_string());
    rep.trials = Some(cfg.trials);
    rep.seed = Some(cfg.seed);
    rep.value = Some(Value::from(r.value));
    rep.agreement = Some(r.agreement);
    rep.truncation = Some(r.truncation());
    rep.stable = Some(true);
    rep.details = Some(json!({
        "attempts": r.attempts(),
        "diverged": r.diverged,
        "basis": r.basis,
        "unit_checked": r.unit_checked,
    }));
    rep
}

fn with_bounds(mut rep: Report, r: &DegeneracyResult, cfg: &RunConfig) -> Result<Report> {
    rep.closed_form = Some(known_value(&r.germ, r.order, r.kind).as_ref().map_or(Value::Null, big));
    let b = bounds_report(&r.germ, r.order, r.kind, r.value, cfg)?;
    if b.lower.is_some() || b.upper.is_some() {
        rep.bounds = Some(Bounds {
            lower: b.lower.as_ref().map_or(Value::Null, big),
            upper: b.upper.as_ref().map_or(Value::Null, big),
        });
    }
    b.require()?;
    Ok(rep)
}

fn run(cli: &Cli) -> Result<(Report, bool)> {
    let g = &cli.global;
    let prime = g.prime;
    let rep = match &cli.command {
        Command::Ad(t) => {
            let cfg = config(g)?;
            let r = ad_value(&germ(&t.germ)?, t.order, t.kind, &cfg)?;
            with_bounds(degeneracy_report("ad", &r, &cfg), &r, &cfg)?
        }
        Command::Sd(t) => {
            let cfg = config(g)?;
            let r = sd_value(&germ(&t.germ)?, t.order, t.kind, &cfg)?;
            with_bounds(degeneracy_report("sd", &r, &cfg), &r, &cfg)?
        }
        Command::Milnor(a) => {
            let cfg = fixed_config(g)?;
            let f = germ(&a.germ)?;
            let mut rep = Report::new("milnor", prime);
            rep.germ = Some(format_germ(&f));
            rep.value = Some(Value::from(milnor_number(&f, &cfg)?));
            rep
        }
        Command::Delta(a) => {
            let cfg = fixed_config(g)?;
            let f = germ(&a.germ)?;
            let (delta, branches) = delta_and_branches(&f).ok_or_else(|| {
                AdegError::Unavailable("delta is only computed for xy and binomial germs a*y^t + b*x^s".into())
            })?;
            let mu = milnor_number(&f, &cfg)?;
            if 2 * delta != mu + branches - 1 {
                return Err(AdegError::InternalInconsistency(format!(
                    "2*{delta} != {mu} + {branches} - 1"
                )));
            }
            let mut rep = Report::new("delta", prime);
            rep.germ = Some(format_germ(&f));
            rep.value = Some(Value::from(delta));
            rep.details = Some(json!({"branches": branches, "milnor": mu}));
            rep
        }
        Command::HilbertSamuel(a) => {
            let cfg = config(g)?;
            let f = germ(&a.germ)?;
            let e = hilbert_samuel(&f, &cfg)?;
            let ad2 = ad_value(&f, 2, DegeneracyKind::W1, &cfg)?;
            if ad2.value != e {
                return Err(AdegError::InternalInconsistency(format!(
                    "Hilbert-Samuel {e} differs from the order-2 weight-1 degeneracy {}",
                    ad2.value
                )));
            }
            let mut rep = Report::new("hilbert-samuel", prime);
            rep.germ = Some(format_germ(&f));
            rep.seed = Some(cfg.seed);
            rep.value = Some(Value::from(e));
            rep
        }
        Command::Limit(t) => {
            let cfg = config(g)?;
            let f = germ(&t.germ)?;
            let (count, ad) = limiting_count(&f, t.order, t.kind, &cfg)?;
            let mut rep = degeneracy_report("limit", &ad, &cfg);
            rep.value = Some(Value::from(count));
            rep.details = Some(json!({"ad": ad.value, "attempts": ad.attempts()}));
            rep
        }
        Command::Node { order, kind, flecnode, zero_spec } => {
            let cfg = config(g)?;
            let (name, r, closed) = if *flecnode {
                if *kind != DegeneracyKind::W2A {
                    return Err(AdegError::Usage("--flecnode is a w2a computation".into()));
                }
                ("node flecnode", flecnode_colength(*order, &cfg)?, Some(flecnode_value(*order)))
            } else if *zero_spec {
                let r = zero_specialized_length(&GermSpec::node(), *order, *kind, &cfg)?;
                ("node zero-spec", r, zero_specialized_node_length(*order, *kind))
            } else {
                ("node", node_ad(*order, *kind, &cfg)?, known_value(&GermSpec::node(), *order, *kind))
            };
            let mut rep = degeneracy_report(name, &r, &cfg);
            rep.closed_form = Some(closed.as_ref().map_or(Value::Null, big));
            rep
        }
        Command::Bounds { target, value } => {
            let cfg = if value.is_some() { fixed_config(g)? } else { config(g)? };
            let f = germ(&target.germ)?;
            let v = match value {
                Some(v) => *v,
                None => ad_value(&f, target.order, target.kind, &cfg)?.value,
            };
            let b = bounds_report(&f, target.order, target.kind, v, &cfg)?;
            let mut rep = Report::new("bounds", prime);
            rep.germ = Some(format_germ(&f));
            rep.order = Some(target.order);
            rep.kind = Some(target.kind.label().into());
            rep.value = Some(Value::from(v));
            rep.bounds = Some(Bounds {
                lower: b.lower.as_ref().map_or(Value::Null, big),
                upper: b.upper.as_ref().map_or(Value::Null, big),
            });
            rep.details = Some(json!({"holds": b.holds}));
            return Ok((rep, b.holds));
        }
        Command::Count { what, degree, order } => {
            let d = *degree;
            let (name, v) = match what {
                CountKind::Hyperflex => {
                    need_degree(d)?;
                    let h = hyperflex_count(d);
                    let p = pencil_count(d, 4)?;
                    if h != p {
                        return Err(AdegError::InternalInconsistency(format!("hyperflex {h} != pencil {p}")));
                    }
                    ("count hyperflex", h)
                }
                CountKind::Septactic => {
                    need_degree(d)?;
                    ("count septactic", septactic_count(d)?)
                }
                CountKind::Pencil => {
                    if d < 1 || *order < 2 {
                        return Err(AdegError::Usage("pencil needs degree >= 1 and order >= 2".into()));
                    }
                    ("count pencil", pencil_count(d, *order)?)
                }
            };
            let mut rep = Report::new(name, prime);
            rep.value = Some(big(&v));
            rep.details = Some(json!({"degree": d}));
            if matches!(what, CountKind::Pencil) {
                rep.order = Some(*order as usize);
            }
            rep
        }
        Command::Weierstrass { genus, degree, kind } => {
            let c = weierstrass_divisor(*genus, *degree, *kind)?;
            let mut rep = Report::new("weierstrass", prime);
            rep.kind = Some(kind.label().into());
            rep.value = Some(json!({"lambda": ratio(&c.lambda_coeff), "delta0": ratio(&c.delta0_coeff)}));
            rep.details = Some(json!({"genus": genus, "degree": degree}));
            rep
        }
        Command::Chern { order, degree, line_degree } => {
            if *order < 1 {
                return Err(AdegError::Usage("order must be at least 1".into()));
            }
            let c = chern_invincible(*order);
            let mut rep = Report::new("chern", prime);
            rep.order = Some(*order);
            rep.value = Some(json!({
                "c1": {"L": big(&c.c1_l), "W": big(&c.c1_w)},
                "c2": {"L2": big(&c.c2_l2), "W2": big(&c.c2_w2), "LW": big(&c.c2_lw)},
            }));
            if let Some(d) = degree {
                let deg = ChowDegrees::pencil(*d, *line_degree);
                let mut extra = json!({"c2_degree": big(&c.c2_degree(&deg)), "degree": d, "line_degree": line_degree});
                if *order >= 2 {
                    extra["inflection_class"] = big(&weight2_inflection_class(*order, &deg));
                }
                rep.details = Some(extra);
            }
            rep
        }
        Command::Verify { what } => {
            let (name, summary) = match what {
                VerifyKind::Table1 => {
                    let cfg = config(g)?;
                    let s = verify::table1(&cfg)?;
                    let mut rep = Report::new("verify table1", prime);
                    rep.trials = Some(cfg.trials);
                    rep.seed = Some(cfg.seed);
                    (rep, s)
                }
                VerifyKind::Formulas => (Report::new("verify formulas", prime), verify::formulas()?),
            };
            let mut rep = name;
            let passed = summary.failures.is_empty();
            rep.value = Some(Value::from(format!(
                "{}/{} passed",
                summary.checks - summary.failures.len(),
                summary.checks
            )));
            rep.details = Some(summary.to_json());
            return Ok((rep, passed));
        }
    };
    Ok((rep, true))
}

fn need_degree(d: i64) -> Result<()> {
    if d < 3 {
        return Err(AdegError::Usage(format!("degree must be at least 3, got {d}")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok((mut rep, ok)) => {
            if cli.global.timing {
                rep.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            }
            if cli.global.json {
                println!("{}", rep.to_json());
            } else {
                print!("{}", text_for(&rep));
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.global.json {
                let v = json!({"command": command_name(&cli.command), "error": e.to_string(), "exit_code": e.exit_code()});
                println!("{}", serde_json::to_string_pretty(&v).expect("serializes"));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

/// Verify summaries list mismatches instead of every cell.
fn text_for(rep: &Report) -> String {
    if !rep.command.starts_with("verify") {
        return rep.to_text();
    }
    let mut r = rep.clone();
    let mut out = String::new();
    if let Some(Value::Object(d)) = &rep.details {
        if let Some(Value::Array(cells)) = d.get("cells") {
            for c in cells {
                out.push_str(&format!(
                    "  {:<14} {:<8} expected {:>3}  got {}\n",
                    c["germ"].as_str().unwrap_or(""),
                    c["column"].as_str().unwrap_or(""),
                    c["expected"],
                    c["value"],
                ));
            }
        }
        let mut keep = d.clone();
        keep.remove("cells");
        r.details = Some(Value::Object(keep));
    }
    format!("{}{}", r.to_text(), out)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Ad(_) => "ad",
        Command::Sd(_) => "sd",
        Command::Milnor(_) => "milnor",
        Command::Delta(_) => "delta",
        Command::HilbertSamuel(_) => "hilbert-samuel",
        Command::Limit(_) => "limit",
        Command::Node { .. } => "node",
        Command::Bounds { .. } => "bounds",
        Command::Count { .. } => "count",
        Command::Weierstrass { .. } => "weierstrass",
        Command::Chern { .. } => "chern",
        Command::Verify { .. } => "verify",
    }
}
