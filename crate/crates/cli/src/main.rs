use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use localchi::bundle::{
    elementary_transform, ext_param_count, ext_slots, moduli_dim, splitting_type, transition_matrix, CanonicalBundle,
};
use localchi::cone::cone_ring;
use localchi::invariants::{gap_scan, local_charge, random_extension_classes, sample_extension_classes, InvariantReport};
use localchi::algebra::Rational;
use localchi::{ComputeOptions, Error, FieldMode, Truncation};

#[derive(Parser, Debug)]
#[command(name = "localchi", version, about = "Local charges of rank-2 bundles on Tot(O(-k)) over P^1")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Coefficient field: `q` for the rationals, `gfp` for GF(2^31 - 1).
    #[arg(long, value_enum, default_value_t = FieldArg::Q, global = true)]
    field: FieldArg,
    /// Skip the rational confirmation pass that `--field gfp` schedules.
    #[arg(long, global = true)]
    unsafe_skip_confirm: bool,
    /// Truncation bound on the u-degree: `auto` or a fixed integer.
    #[arg(long, default_value = "auto", value_parser = parse_rmax, global = true)]
    rmax: Truncation,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[arg(long, default_value_t = 5, global = true)]
    samples: usize,
    /// Print nothing on success; the exit code carries the verdict.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    Q,
    Gfp,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Width, height and local charge of one bundle.
    Chi {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        j: i64,
        /// Extension class, e.g. "z*u + 2/3*u^2". Omitted means p = 0.
        #[arg(long, conflicts_with = "generic")]
        p: Option<String>,
        /// Draw a random full-support class from `--seed`.
        #[arg(long)]
        generic: bool,
    },
    /// One row per splitting type and sampled class.
    Scan {
        #[arg(long)]
        k: i64,
        /// Splitting types: `J` or an inclusive range `A..B`.
        #[arg(long, value_parser = parse_range)]
        j: (u32, u32),
    },
    /// Check `chi >= k - 1` for splitting types `k..=jmax`.
    Gaps {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        jmax: u32,
    },
    /// Number and indices of extension-class coefficients.
    Extdim {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        j: i64,
    },
    /// Splitting type after two elementary transformations.
    Elm {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        j: i64,
        #[arg(long, default_value = "0")]
        p: String,
    },
    /// Relations of the cone ring and the substitution `x_i -> z^i u`.
    Ring {
        #[arg(long)]
        k: i64,
    },
}

fn parse_rmax(s: &str) -> Result<Truncation, String> {
    if s == "auto" {
        return Ok(Truncation::Auto);
    }
    s.parse::<u32>().map(Truncation::Fixed).map_err(|_| format!("expected `auto` or an integer, got `{s}`"))
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("bad splitting type `{t}`"));
    match s.split_once("..") {
        Some((a, b)) => Ok((num(a)?, num(b.trim_start_matches('='))?)),
        None => {
            let j = num(s)?;
            Ok((j, j))
        }
    }
}

/// Exit codes: 1 falsification, 2 input, 3 stabilisation, 4 cross-check.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Stabilization { .. } | Error::NotFiniteLength => 3,
        Error::CrossCheck(_) | Error::Unconfirmed(_) | Error::NotTorsionFree | Error::Algebra(_) => 4,
        _ => 2,
    }
}

fn options(g: &Global) -> ComputeOptions {
    let field = match g.field {
        FieldArg::Q => FieldMode::Rational,
        FieldArg::Gfp => FieldMode::Prime { confirm: !g.unsafe_skip_confirm },
    };
    ComputeOptions { field, truncation: g.rmax, max_increments: None }
}

fn check_k(k: i64) -> Result<u32, Error> {
    if k < 1 {
        return Err(Error::InvalidK(k));
    }
    Ok(k as u32)
}

fn check_j(j: i64) -> Result<u32, Error> {
    if j < 0 {
        return Err(Error::InvalidJ(j));
    }
    Ok(j as u32)
}

const CSV_HEADER: &str = "k,j,p,width,height,chi,instanton,R_used";

fn csv_row(r: &InvariantReport) -> String {
    format!(
        "{},{},\"{}\",{},{},{},{},{}",
        r.k,
        r.j,
        r.p.replace('"', "\"\""),
        r.width,
        r.height,
        r.chi,
        r.is_instanton,
        r.r_used
    )
}

fn text_table(rows: &[InvariantReport]) -> String {
    let pw = rows.iter().map(|r| r.p.len()).max().unwrap_or(1).max(1);
    let mut out = format!("{:>3} {:>3}  {:<pw$}  {:>5} {:>6} {:>4}  {:<9} {:>6}\n", "k", "j", "p", "width", "height", "chi", "instanton", "R_used");
    for r in rows {
        let _ = writeln!(
            out,
            "{:>3} {:>3}  {:<pw$}  {:>5} {:>6} {:>4}  {:<9} {:>6}",
            r.k,
            r.j,
            r.p,
            r.width,
            r.height,
            r.chi,
            if r.is_instanton { "yes" } else { "no" },
            r.r_used
        );
    }
    out
}

fn rows_output(rows: &[InvariantReport], format: Format) -> String {
    match format {
        Format::Text => text_table(rows),
        Format::Json => serde_json::to_string_pretty(rows).expect("reports serialise") + "\n",
        Format::Csv => {
            let mut out = format!("{CSV_HEADER}\n");
            for r in rows {
                out.push_str(&csv_row(r));
                out.push('\n');
            }
            out
        }
    }
}

fn chi(g: &Global, k: i64, j: i64, p: Option<&str>, generic: bool) -> Result<String, Error> {
    let (ku, ju) = (check_k(k)?, check_j(j)?);
    let b = match p {
        Some(p) => CanonicalBundle::parse(k, j, p)?,
        None if generic => random_extension_classes(ku, ju, 1, g.seed)
            .pop()
            .map_or_else(|| CanonicalBundle::split(k, j), Ok)?,
        None => CanonicalBundle::split(k, j)?,
    };
    let r = local_charge(&b, &options(g))?;
    Ok(match g.format {
        Format::Json => serde_json::to_string_pretty(&r).expect("report serialises") + "\n",
        Format::Csv => format!("{CSV_HEADER}\n{}\n", csv_row(&r)),
        Format::Text => {
            let method = serde_json::to_value(r.height_method).expect("tag serialises");
            format!(
                "k = {}, j = {}, p = {}\nwidth     {}\nheight    {} ({})\nchi       {}\ninstanton {} (j = {} mod {})\nR_used    {} ({})\n",
                r.k,
                r.j,
                r.p,
                r.width,
                r.height,
                method.as_str().unwrap_or_default(),
                r.chi,
                if r.is_instanton { "yes" } else { "no" },
                r.split_class,
                r.k,
                r.r_used,
                if r.stabilized { "stabilised" } else { "fixed, not certified" }
            )
        }
    })
}

fn scan(g: &Global, k: i64, (lo, hi): (u32, u32)) -> Result<String, Error> {
    let ku = check_k(k)?;
    let bundles: Vec<CanonicalBundle> = (lo..=hi).flat_map(|j| sample_extension_classes(ku, j, g.samples, g.seed)).collect();
    let opts = options(g);
    let rows = bundles.par_iter().map(|b| local_charge(b, &opts)).collect::<Result<Vec<_>, _>>()?;
    Ok(rows_output(&rows, g.format))
}

fn gaps(g: &Global, k: i64, jmax: u32) -> Result<(String, bool), Error> {
    let ku = check_k(k)?;
    let js: Vec<u32> = (ku..=jmax).collect();
    let scan = gap_scan(ku, &js, g.samples, g.seed, &options(g))?;
    let passed = scan.passed();
    let out = match g.format {
        Format::Json => {
            let mut v = serde_json::to_value(&scan).expect("scan serialises");
            v["passed"] = json!(passed);
            serde_json::to_string_pretty(&v).expect("scan serialises") + "\n"
        }
        Format::Csv => rows_output(&scan.rows, Format::Csv),
        Format::Text => {
            let mut out = text_table(&scan.rows);
            match (passed, scan.min_chi) {
                (true, Some(m)) => {
                    let a = &scan.rows[scan.argmin.expect("minimum has a row")];
                    let _ = writeln!(out, "PASS k = {ku}: min chi = {m} >= {} (first at j = {}, p = {})", scan.bound, a.j, a.p);
                }
                (true, None) => {
                    let _ = writeln!(out, "PASS k = {ku}: no splitting type in {ku}..={jmax}, bound {} holds vacuously", scan.bound);
                }
                (false, _) => {
                    for &i in &scan.violations {
                        let r = &scan.rows[i];
                        let _ = writeln!(out, "FAIL k = {ku}: chi = {} < {} at j = {}, p = {}", r.chi, scan.bound, r.j, r.p);
                    }
                }
            }
            out
        }
    };
    Ok((out, passed))
}

fn extdim(g: &Global, k: i64, j: i64) -> Result<String, Error> {
    let (ku, ju) = (check_k(k)?, check_j(j)?);
    let count = ext_param_count(ku, ju);
    let slots = ext_slots(ku, ju);
    let moduli = moduli_dim(ku, ju).ok();
    Ok(match g.format {
        Format::Json => {
            let v = json!({
                "k": ku,
                "j": ju,
                "count": count,
                "slots": slots,
                "moduli_dim": moduli.map(|m| m.value),
                "empty_stratum": moduli.map(|m| m.empty_stratum),
            });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        Format::Csv => {
            let mut out = String::from("k,j,r,s\n");
            for (r, s) in &slots {
                let _ = writeln!(out, "{ku},{ju},{r},{s}");
            }
            out
        }
        Format::Text => {
            let list: Vec<String> = slots.iter().map(|(r, s)| format!("({r},{s})")).collect();
            let mut out = format!("count {count}\nslots [{}]\n", list.join(", "));
            if let Some(m) = moduli {
                let _ = writeln!(out, "moduli dim {}{}", m.value, if m.empty_stratum { " (empty stratum)" } else { "" });
            }
            out
        }
    })
}

fn elm(g: &Global, k: i64, j: i64, p: &str) -> Result<String, Error> {
    check_k(k)?;
    check_j(j)?;
    let b = CanonicalBundle::parse(k, j, p)?;
    let e = elementary_transform(&b);
    let jt = splitting_type(&transition_matrix(&e))?;
    let class = e.splitting_class();
    Ok(match g.format {
        Format::Json => {
            let v = json!({
                "k": e.k(),
                "j": b.j(),
                "p": b.p().to_canonical(),
                "new_j": jt,
                "new_p": e.p().to_canonical(),
                "split_class": class.residue,
                "class_preserved": class == b.splitting_class(),
            });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        Format::Csv => format!(
            "k,j,p,new_j,new_p,split_class\n{},{},\"{}\",{},\"{}\",{}\n",
            e.k(),
            b.j(),
            b.p().to_canonical(),
            jt,
            e.p().to_canonical(),
            class.residue
        ),
        Format::Text => format!(
            "splitting type {} -> {jt}\nclass {} mod {}\np -> {}\n",
            b.j(),
            class.residue,
            class.k,
            e.p().to_canonical()
        ),
    })
}

fn substitution(i: usize) -> String {
    match i {
        0 => "u".to_string(),
        1 => "z*u".to_string(),
        _ => format!("z^{i}*u"),
    }
}

fn ring(g: &Global, k: i64) -> Result<String, Error> {
    let ring = cone_ring::<Rational>(k)?;
    let rels = ring.relation_strings();
    let subs: Vec<(String, String)> = ring.variable_names().into_iter().enumerate().map(|(i, v)| (v, substitution(i))).collect();
    Ok(match g.format {
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = subs.iter().map(|(v, s)| (v.clone(), json!(s))).collect();
            serde_json::to_string_pretty(&json!({ "k": k, "relations": rels, "substitutions": map })).expect("json") + "\n"
        }
        Format::Csv => {
            let mut out = String::from("kind,lhs,rhs\n");
            for r in &rels {
                let _ = writeln!(out, "relation,\"{r}\",0");
            }
            for (v, s) in &subs {
                let _ = writeln!(out, "substitution,{v},\"{s}\"");
            }
            out
        }
        Format::Text => {
            let mut out = String::from("relations\n");
            for r in &rels {
                let _ = writeln!(out, "  {r}");
            }
            out.push_str("substitutions\n");
            for (v, s) in &subs {
                let _ = writeln!(out, "  {v} -> {s}");
            }
            out
        }
    })
}

fn run(cli: &Cli) -> Result<(String, u8), Error> {
    let g = &cli.global;
    let out = match &cli.command {
        Command::Chi { k, j, p, generic } => chi(g, *k, *j, p.as_deref(), *generic)?,
        Command::Scan { k, j } => scan(g, *k, *j)?,
        Command::Gaps { k, jmax } => {
            let (out, passed) = gaps(g, *k, *jmax)?;
            return Ok((out, if passed { 0 } else { 1 }));
        }
        Command::Extdim { k, j } => extdim(g, *k, *j)?,
        Command::Elm { k, j, p } => elm(g, *k, *j, p)?,
        Command::Ring { k } => ring(g, *k)?,
    };
    Ok((out, 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            if !cli.global.quiet {
                print!("{out}");
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
