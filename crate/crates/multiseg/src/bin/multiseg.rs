//! Command-line front end.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::io::Write;
use std::process::ExitCode;

use multiseg::cache::DiskCache;
use multiseg::derivative::{dk_standard, dk_via_exp};
use multiseg::grassmann::{GrBase, GrPartition};
use multiseg::multiseg::enumerate_normalized;
use multiseg::weyl::{format_jset, parse_jset, Perm};
use multiseg::{Basis, Engine, Error, Multisegment, Result, RingVector, Route};

#[derive(Parser)]
#[command(name = "multiseg", version, about = "Multisegments, partial derivatives and KL polynomials")]
struct Cli {
    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit plain text (the default).
    #[arg(long, global = true)]
    text: bool,
    /// Ignore the persistent cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rel {
    Leq,
    Preck,
}

#[derive(Clone, Copy, ValueEnum)]
enum CacheAction {
    Stats,
    Clear,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the canonical form of a multisegment.
    Parse { a: String },
    /// Decide `b ≤ a` or `b ⪯_k a`.
    Poset {
        #[arg(long, value_enum)]
        rel: Rel,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i32>,
        b: String,
        a: String,
    },
    /// List `S(a)` with the chain lengths `ℓ(b, a)`.
    Sab { a: String },
    /// KL polynomial `P_{x,y}`; permutations are one-line, e.g. "2 1 3".
    Kl { x: String, y: String },
    /// Parabolic KL polynomial `P^{J,∅}_{w,v}`.
    Pkl {
        /// Simple reflections, e.g. "s1,s3".
        #[arg(long, default_value = "")]
        j: String,
        w: String,
        v: String,
    },
    /// Decomposition of `π(a)` into irreducibles.
    Mult { a: String },
    /// `𝒟^k(L_a)` in the irreducible basis.
    Derive {
        #[arg(long, allow_hyphen_values = true)]
        k: i32,
        /// One of quantum, basis_change, parabolic_theta; all routes when absent.
        #[arg(long)]
        route: Option<String>,
        a: String,
    },
    /// `𝒟^k(L_a)` by θ-coefficients, with the reduction used.
    Theta {
        #[arg(long, allow_hyphen_values = true)]
        k: i32,
        a: String,
    },
    /// Orbit counts against the quantum coefficients on a Grassmannian base.
    Grassmann {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        l: usize,
        /// Defaults to `r + ℓ + 1`.
        #[arg(long)]
        k: Option<i32>,
        /// Explicit base; defaults to beginnings `1..=r+ℓ`.
        #[arg(long)]
        base: Option<String>,
    },
    /// Run the invariant suites on all multisegments of degree ≤ D.
    Crosscheck {
        #[arg(long)]
        deg: u32,
        #[arg(long, allow_hyphen_values = true)]
        k: i32,
    },
    /// Inspect or clear the persistent cache.
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
    },
}

/// A command outcome: JSON, its text rendering and whether a check failed.
struct Output {
    json: Value,
    text: String,
    failed: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Output {
        Output { json, text, failed: false }
    }
}

fn parse_ms(s: &str) -> Result<Multisegment> {
    s.parse()
}

fn parse_perm(s: &str) -> Result<Perm> {
    s.parse()
}

fn terms_json(v: &RingVector) -> Value {
    Value::Array(v.sorted_terms().into_iter().map(|(a, c)| json!({"coeff": c, "ms": a.to_string()})).collect())
}

fn derive_json(a: &Multisegment, k: i32, v: &RingVector, route: &str, agreement: bool) -> Value {
    json!({
        "input": a.to_string(),
        "k": k,
        "basis": "irreducible",
        "terms": terms_json(v),
        "route": route,
        "agreement": agreement,
    })
}

fn run(cli: &Cli, e: &Engine) -> Result<Output> {
    match &cli.cmd {
        Cmd::Parse { a } => {
            let a = parse_ms(a)?;
            Ok(Output::ok(
                json!({"input": a.to_string(), "degree": a.degree(), "weight": a.weight().to_string()}),
                a.to_string(),
            ))
        }
        Cmd::Poset { rel, k, b, a } => {
            let (b, a) = (parse_ms(b)?, parse_ms(a)?);
            let (name, v) = match rel {
                Rel::Leq => ("leq", e.leq(&b, &a)),
                Rel::Preck => {
                    let k = k.ok_or_else(|| Error::Precondition("--rel preck needs --k".into()))?;
                    ("preck", e.prec_k(&b, &a, k))
                }
            };
            Ok(Output::ok(
                json!({"rel": name, "k": k, "b": b.to_string(), "a": a.to_string(), "value": v}),
                v.to_string(),
            ))
        }
        Cmd::Sab { a } => {
            let a = parse_ms(a)?;
            let len = e.chain_lengths(&a);
            let s = e.below_set(&a);
            let mut rows: Vec<(&Multisegment, usize)> = s.members.iter().map(|b| (b, len[b])).collect();
            rows.sort_by(|x, y| x.1.cmp(&y.1).then_with(|| x.0.cmp(y.0)));
            let text = rows.iter().map(|(b, l)| format!("{}\t{}", l, b)).collect::<Vec<_>>().join("\n");
            let j = rows.iter().map(|(b, l)| json!({"ms": b.to_string(), "ell": l})).collect::<Vec<_>>();
            Ok(Output::ok(json!({"input": a.to_string(), "members": j}), text))
        }
        Cmd::Kl { x, y } => {
            let (x, y) = (parse_perm(x)?, parse_perm(y)?);
            let p = e.kl_poly(&x, &y)?;
            Ok(Output::ok(
                json!({"x": x.to_string(), "y": y.to_string(), "poly": p.to_string(), "coeffs": p.0}),
                p.to_string(),
            ))
        }
        Cmd::Pkl { j, w, v } => {
            let (jset, w, v) = (parse_jset(j)?, parse_perm(w)?, parse_perm(v)?);
            let p = e.parabolic_kl(&jset, &w, &v)?;
            Ok(Output::ok(
                json!({"j": format_jset(&jset), "w": w.to_string(), "v": v.to_string(), "poly": p.to_string(), "coeffs": p.0}),
                p.to_string(),
            ))
        }
        Cmd::Mult { a } => {
            let a = parse_ms(a)?;
            let v = e.to_irreducible(&RingVector::standard(&a))?;
            Ok(Output::ok(
                json!({"input": a.to_string(), "basis": "irreducible", "terms": terms_json(&v)}),
                v.to_string(),
            ))
        }
        Cmd::Derive { k, route, a } => {
            let a = parse_ms(a)?;
            let (v, name, agree, report) = match route {
                Some(r) => {
                    let r: Route = r.parse()?;
                    let v = e.derive_irreducible(&a, *k, r)?;
                    let reference = if r == Route::BasisChange { Route::Quantum } else { Route::BasisChange };
                    let w = e.derive_irreducible(&a, *k, reference)?;
                    let report = format!("{}: {}\n{}: {}", r, v, reference, w);
                    let agree = v == w;
                    (v, r.name().to_string(), agree, report)
                }
                None => {
                    let (all, agree) = e.derive_all_routes(&a, *k)?;
                    let report = all.iter().map(|(r, v)| format!("{}: {}", r, v)).collect::<Vec<_>>().join("\n");
                    (all[0].1.clone(), "all".to_string(), agree, report)
                }
            };
            let mut text = v.to_string();
            if !agree {
                text = format!("route disagreement\n{}", report);
            }
            Ok(Output { json: derive_json(&a, *k, &v, &name, agree), text, failed: !agree })
        }
        Cmd::Theta { k, a } => {
            let a = parse_ms(a)?;
            let red = e.reduce_to_parabolic(&a, *k)?;
            let v = e.derive_irreducible(&a, *k, Route::ParabolicTheta)?;
            let mut j = derive_json(&a, *k, &v, Route::ParabolicTheta.name(), true);
            j["reduced"] = json!(red.reduced.to_string());
            j["lefts"] = json!(red.lefts());
            j["rights"] = json!(red.rights);
            let text = format!("{}\nreduced: {}  lefts: {:?}  rights: {:?}", v, red.reduced, red.lefts(), red.rights);
            Ok(Output::ok(j, text))
        }
        Cmd::Grassmann { r, l, k, base } => {
            let k = k.unwrap_or((r + l + 1) as i32);
            let g = match base {
                Some(b) => GrBase::new(&parse_ms(b)?, k)?,
                None => GrBase::standard(*r, *l, k)?,
            };
            if g.r != *r || g.l() != *l {
                return Err(Error::Precondition(format!("base has r = {} and ℓ = {}", g.r, g.l())));
            }
            let mut rows = Vec::new();
            let mut text = vec!["mu\tmu_flat\ta_mu\torbits\tweighted\tquantum".to_string()];
            let mut all_match = true;
            for r1 in g.r..=g.n() {
                for mu in GrPartition::all(r1, (g.n() - r1) as u32) {
                    let flat = g.mu_flat(&mu)?;
                    let a_mu = g.multisegment_of_partition(&mu)?;
                    let n = e.orbit_count_n(&g, &mu)?;
                    let w = e.orbit_count_weighted(&g, &mu)?;
                    let q = e.orbit_count_quantum(&g, &mu)?;
                    all_match &= n as i64 == q;
                    text.push(format!("{}\t{}\t{}\t{}\t{}\t{}", mu, flat, a_mu, n, w, q));
                    rows.push(json!({
                        "mu": mu.to_string(), "mu_flat": flat.to_string(), "a_mu": a_mu.to_string(),
                        "orbit_count": n, "weighted_count": w, "quantum": q,
                    }));
                }
            }
            Ok(Output::ok(
                json!({"base": g.multisegment().to_string(), "k": k, "rows": rows, "orbit_count_matches": all_match}),
                text.join("\n"),
            ))
        }
        Cmd::Crosscheck { deg, k } => crosscheck(e, *deg, *k),
        Cmd::Cache { action } => {
            let Some(d) = DiskCache::from_env() else {
                return Err(Error::Precondition(format!("{} is not set", multiseg::cache::ENV_VAR)));
            };
            match action {
                CacheAction::Stats => {
                    let (n, bytes) = d.stats();
                    Ok(Output::ok(
                        json!({"dir": d.dir().display().to_string(), "entries": n, "bytes": bytes, "version": multiseg::cache::VERSION}),
                        format!("{}: {} entries, {} bytes", d.dir().display(), n, bytes),
                    ))
                }
                CacheAction::Clear => {
                    let n = d.clear().map_err(|err| Error::Internal(err.to_string()))?;
                    Ok(Output::ok(json!({"removed": n}), format!("removed {} entries", n)))
                }
            }
        }
    }
}

/// Route agreement, the two forms of `𝒟^k` on standard modules, the support
/// law and the minimal degree dichotomy, on translates of all multisegments
/// of degree ≤ `deg` that meet `k`.
fn crosscheck(e: &Engine, deg: u32, k: i32) -> Result<Output> {
    let mut inputs: BTreeSet<Multisegment> = BTreeSet::new();
    for a in enumerate_normalized(deg) {
        let (lo, hi) = (a.min_begin().unwrap(), a.max_end().unwrap());
        for t in (k - hi)..=(k - lo) {
            inputs.insert(a.shift(t));
        }
    }
    let mut failures: Vec<String> = Vec::new();
    let mut checked = 0usize;
    for a in &inputs {
        checked += 1;
        let q = e.derive_irreducible(a, k, Route::Quantum)?;
        let b = e.derive_irreducible(a, k, Route::BasisChange)?;
        if q != b {
            failures.push(format!("routes differ on {}: {} vs {}", a, q, b));
        }
        let pa = RingVector::standard(a);
        if dk_via_exp(&pa, k)? != dk_standard(&pa, k) {
            failures.push(format!("exp(e′) differs from the standard formula on {}", a));
        }
        let n = e.to_irreducible(&dk_standard(&pa, k))?;
        let support: BTreeSet<Multisegment> = n.terms.keys().cloned().collect();
        if support != e.gamma_set(a, k) || n.terms.values().any(|&c| c < 0) {
            failures.push(format!("support law fails on {}", a));
        }
        e.minimal_degree_analysis(a, k)?;
    }
    let failed = !failures.is_empty();
    let mut text = format!("checked {} multisegments, {} failures", checked, failures.len());
    for f in &failures {
        text.push('\n');
        text.push_str(f);
    }
    Ok(Output {
        json: json!({"deg": deg, "k": k, "checked": checked, "failures": failures, "basis": Basis::Irreducible}),
        text,
        failed,
    })
}

fn report_error(err: &Error, args: &[String]) {
    eprintln!("error: {}", err);
    if let Error::Parse { pos, .. } = err {
        // Point at the offending character of the first argument that fails to parse.
        if let Some(src) = args.iter().skip(1).find(|s| s.contains('[') && s.parse::<Multisegment>().is_err()) {
            let col = src.get(..*pos).map_or(*pos, |p| p.chars().count());
            eprintln!("  {}\n  {}^", src, " ".repeat(col));
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let e = if cli.no_cache { Engine::new() } else { Engine::from_env() };
    let out = run(&cli, &e);
    e.flush();
    match out {
        Ok(o) => {
            let body = if cli.json { serde_json::to_string_pretty(&o.json).expect("serializable") } else { o.text };
            // A closed pipe (e.g. `| head`) is not an error.
            let _ = writeln!(std::io::stdout().lock(), "{}", body);
            if o.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            report_error(&err, &std::env::args().collect::<Vec<_>>());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
