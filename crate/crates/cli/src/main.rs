//! Command line front end: parse parabolic specs, classify them, compute
//! automorphism groups and contractions, and run the verification table.
//!
//! Exit codes: 0 success, 1 parse error, 2 domain error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use flagvar::autgroup::{aut_group, picard_rank_one_variety_label};
use flagvar::catalog::run_catalog;
use flagvar::error::Error;
use flagvar::geometry::{contraction_target, picard_rank, smooth_target};
use flagvar::isogeny::{compose_very_special, lie_n_dimension, very_special_dual};
use flagvar::oracle::{mu_incidence_check, WitnessScenario};
use flagvar::parabolic::{
    canonical_form, canonicalize, parse_spec, phi_table, up_minus_profile, ParabolicSpec,
};
use flagvar::DynkinType;

#[derive(Parser)]
#[command(name = "flagvar", version, about = "parabolic subgroup schemes and their flag variety automorphisms")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full classification report for a spec: normal form, numerical
    /// function, Picard rank, automorphism group.
    Classify { spec: String },
    /// The numerical function of a spec.
    Phi { spec: String },
    /// The automorphism group descriptor of a spec.
    Aut { spec: String },
    /// Contraction targets, one per factor root, plus the smooth target.
    Contract { spec: String },
    /// The kernel chain and very special isogeny data for a type.
    Chain {
        /// Type and characteristic, e.g. B3:p2
        typep: String,
    },
    /// Run one of the exact verification oracles.
    Verify(VerifyArgs),
    /// Run the whole verification table and print a pass/fail matrix.
    Catalog,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(subcommand)]
    which: VerifyCmd,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Diagonalizable-action incidence checks over truncated rings.
    MuIncidence {
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Evaluate at t = 1 instead of the group generator.
        #[arg(long)]
        identity: bool,
    },
    /// Enumerate the torus-stable restricted subalgebras above the
    /// reduced parabolic at the short root of G2 in characteristic two.
    ExoticEnumeration,
    /// Dimensions of the height-one kernel and its normalizer in the
    /// adjoint orthogonal wedge model.
    Lemma38 {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Dimension of the restricted closure of the short root spaces.
    LieN {
        /// Type and characteristic, e.g. B3:p2
        typep: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(RunError::Parse(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(RunError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(RunError::Failed(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}

enum RunError {
    Parse(String),
    Domain(Error),
    Failed(String),
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Domain(e)
    }
}

fn parse(spec: &str) -> Result<ParabolicSpec, RunError> {
    use flagvar::parabolic::SpecParseError;
    parse_spec(spec).map_err(|e| match e {
        SpecParseError::Syntax(p) => RunError::Parse(p.to_string()),
        SpecParseError::Invalid(d) => RunError::Domain(d),
    })
}

fn parse_typep(s: &str) -> Result<(DynkinType, u8), RunError> {
    let Some((t, p)) = s.split_once(":p").or_else(|| s.split_once(' ')) else {
        return Err(RunError::Parse(format!("parse error at `{s}`: expected TYPE:pP")));
    };
    let ty = DynkinType::parse(t).map_err(RunError::Domain)?;
    let p: u8 = p
        .parse()
        .map_err(|_| RunError::Parse(format!("parse error at `{p}`: expected a prime")))?;
    Ok((ty, p))
}

fn phi_json(spec: &ParabolicSpec) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for (root, v) in phi_table(spec) {
        let key: Vec<String> = root.0.iter().map(|c| c.to_string()).collect();
        map.insert(
            key.join(","),
            match v {
                Some(h) => json!(h),
                None => json!("inf"),
            },
        );
    }
    serde_json::Value::Object(map)
}

fn aut_json(spec: &ParabolicSpec) -> Result<serde_json::Value, RunError> {
    let d = aut_group(spec)?;
    Ok(json!({
        "reduced_type": d.reduced_type.to_string(),
        "twist": d.frobenius_twist,
        "is_dual": d.reduced_is_dual,
        "infinitesimal": d.infinitesimal.map(|(hat, m)| json!({
            "hat": hat.to_string(),
            "m": m,
        })),
        "lie_dim": d.lie_dim,
        "is_reduced": d.is_reduced,
    }))
}

fn report(spec: &ParabolicSpec, json_mode: bool) -> Result<(), RunError> {
    let canon = canonicalize(spec);
    let mut notes: Vec<String> = Vec::new();
    match canonical_form(spec) {
        Ok(cf) => {
            let j: Vec<String> = cf.j.iter().map(|a| format!("a{}", a + 1)).collect();
            let jp: Vec<String> = cf.jprime.iter().map(|a| format!("a{}", a + 1)).collect();
            notes.push(format!(
                "normal form: J = {{{}}}, kernel {}, J' = {{{}}}",
                j.join(","),
                cf.xi,
                jp.join(",")
            ));
        }
        Err(e) => notes.push(format!("normal form: {e}")),
    }
    if picard_rank(spec) == 1 {
        if let Ok(label) = picard_rank_one_variety_label(spec) {
            notes.push(format!("variety: {label}"));
        }
    }
    let aut = aut_json(spec)?;
    if json_mode {
        let out = json!({
            "schema": 1,
            "input": spec.to_string(),
            "normal_form": canon.to_string(),
            "phi": phi_json(spec),
            "picard_rank": picard_rank(spec),
            "aut": aut,
            "notes": notes,
        });
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("input:       {spec}");
        println!("normal form: {canon}");
        println!("picard rank: {}", picard_rank(spec));
        println!("phi:");
        for (root, v) in phi_table(spec) {
            let val = v.map_or("inf".to_string(), |h| h.to_string());
            println!("  {:?} -> {val}", root.0);
        }
        let prof = up_minus_profile(spec);
        println!("infinitesimal unipotent heights: total {}", prof.total);
        println!("aut: {}", serde_json::to_string(&aut).unwrap());
        for n in notes {
            println!("note: {n}");
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), RunError> {
    match &cli.cmd {
        Cmd::Classify { spec } => {
            let s = parse(spec)?;
            report(&s, cli.json)
        }
        Cmd::Phi { spec } => {
            let s = parse(spec)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "schema": 1,
                        "input": s.to_string(),
                        "phi": phi_json(&s),
                    }))
                    .unwrap()
                );
            } else {
                for (root, v) in phi_table(&s) {
                    let val = v.map_or("inf".to_string(), |h| h.to_string());
                    println!("{:?} -> {val}", root.0);
                }
            }
            Ok(())
        }
        Cmd::Aut { spec } => {
            let s = parse(spec)?;
            let aut = aut_json(&s)?;
            if cli.json {
                let out = json!({
                    "schema": 1,
                    "input": s.to_string(),
                    "normal_form": canonicalize(&s).to_string(),
                    "phi": phi_json(&s),
                    "picard_rank": picard_rank(&s),
                    "aut": aut,
                    "notes": [],
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                println!("{}", serde_json::to_string(&aut).unwrap());
            }
            Ok(())
        }
        Cmd::Contract { spec } => {
            let s = parse(spec)?;
            let mut targets = Vec::new();
            for a in s.factor_roots() {
                let t = contraction_target(&s, a)?;
                targets.push((a, t));
            }
            let smooth = smooth_target(&s);
            if cli.json {
                let out = json!({
                    "schema": 1,
                    "input": s.to_string(),
                    "targets": targets.iter().map(|(a, t)| json!({
                        "factor": format!("a{}", a + 1),
                        "target": t.to_string(),
                    })).collect::<Vec<_>>(),
                    "smooth_target": match &smooth {
                        Ok(j) => json!(j.iter().map(|a| format!("a{}", a + 1)).collect::<Vec<_>>()),
                        Err(e) => json!(e.to_string()),
                    },
                });
                println!("{}", serde_json::to_string_pretty(&out).unwrap());
            } else {
                for (a, t) in &targets {
                    println!("a{} -> {t}", a + 1);
                }
                match smooth {
                    Ok(j) => println!(
                        "smooth target: {{{}}}",
                        j.iter().map(|a| format!("a{}", a + 1)).collect::<Vec<_>>().join(",")
                    ),
                    Err(e) => println!("smooth target: {e}"),
                }
            }
            Ok(())
        }
        Cmd::Chain { typep } => {
            let (ty, p) = parse_typep(typep)?;
            let mut lines = Vec::new();
            lines.push(format!("kernel chain for {ty} at p = {p}:"));
            let chain = flagvar::parabolic::chain_menu(ty, p, 6);
            let chain_str: Vec<String> = chain.iter().map(|k| k.to_string()).collect();
            lines.push(format!("  T < {}", chain_str[1..].join(" < ")));
            match very_special_dual(ty, p) {
                Ok((dual, perm)) => {
                    lines.push(format!("very special isogeny target: {dual}"));
                    let map: Vec<String> = perm
                        .iter()
                        .enumerate()
                        .map(|(i, &j)| format!("a{} -> a{}", i + 1, j + 1))
                        .collect();
                    lines.push(format!("simple root map: {}", map.join(", ")));
                    let rows = compose_very_special(ty, p)?;
                    lines.push("composition heights (root: first + second = 1):".to_string());
                    for r in rows {
                        lines.push(format!("  {:?}: {} + {}", r.root.0, r.first, r.second));
                    }
                }
                Err(e) => lines.push(format!("very special isogeny: {e}")),
            }
            for l in lines {
                println!("{l}");
            }
            Ok(())
        }
        Cmd::Verify(v) => run_verify(v, cli.json),
        Cmd::Catalog => {
            let entries = run_catalog();
            let mut all = true;
            for e in &entries {
                let mark = if e.pass { "PASS" } else { "FAIL" };
                println!("[{mark}] {}: {}", e.name, e.details);
                all &= e.pass;
            }
            if all {
                Ok(())
            } else {
                Err(RunError::Failed("catalog has failures".to_string()))
            }
        }
    }
}

fn run_verify(v: &VerifyArgs, json_mode: bool) -> Result<(), RunError> {
    match &v.which {
        VerifyCmd::MuIncidence { case, n, m, identity } => {
            let scenario = match case.as_str() {
                "bn-frob" => WitnessScenario::BnFrobenius { n: *n, m: *m },
                "g2-so7" => WitnessScenario::G2So7 { m: *m },
                "bn-vs" => WitnessScenario::BnVerySpecial { n: *n, m: *m },
                other => {
                    return Err(RunError::Parse(format!(
                        "parse error at `{other}`: expected bn-frob, g2-so7 or bn-vs"
                    )))
                }
            };
            let preserved = mu_incidence_check(scenario, *identity)?;
            if json_mode {
                println!(
                    "{}",
                    json!({"schema": 1, "case": case, "n": n, "m": m, "preserved": preserved})
                );
            } else {
                println!("preserved: {preserved}");
            }
            Ok(())
        }
        VerifyCmd::ExoticEnumeration => {
            let out = flagvar::oracle::enumerate_exotic_subalgebras()?;
            println!(
                "{} torus-stable candidates, {} proper restricted subalgebras",
                out.candidates_checked,
                out.found.len()
            );
            for (subset, s) in &out.found {
                let roots: Vec<String> = subset.iter().map(|r| format!("{:?}", r.0)).collect();
                println!("  dim {}: extra lines {}", s.dim(), roots.join(" "));
            }
            Ok(())
        }
        VerifyCmd::Lemma38 { n } => {
            let rep = flagvar::oracle::orthogonal_normalizer_report(*n);
            println!(
                "ambient dim {}, kernel dim {}, normalizer dim {}",
                rep.ambient_dim, rep.lie_n_dim, rep.normalizer_dim
            );
            Ok(())
        }
        VerifyCmd::LieN { typep } => {
            let (ty, p) = parse_typep(typep)?;
            let d = lie_n_dimension(ty, p)?;
            println!("dim Lie N = {d}");
            Ok(())
        }
    }
}
