//! The `novsheaf` command line.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use novsheaf_core::barcode::hom;
use novsheaf_core::curved::{mc_residual, mc_solve, tc_residual, tc_totalize, McOutcome};
use novsheaf_core::matrix::Matrix;
use novsheaf_core::metrics::interleaving_distance;
use novsheaf_core::modcat::{normal_form, PresentationModule};
use novsheaf_core::novikov::{parse_exponent, parse_scalar, Exponent, Field, NovikovScalar};
use novsheaf_core::persist1d::{
    cl, cl_invert, hom_module, hom_persistence, intersection_count_check, stability_check, sublevel_persistence,
    GFObject,
};

use crate::demo;
use crate::error::{Error, Result};
use crate::format;

#[derive(Debug, Parser)]
#[command(
    name = "novsheaf",
    version,
    about = "Exact Novikov-ring algebra, interleaving distances and Maurer–Cartan solving"
)]
pub struct Cli {
    /// Energy cutoff `p/q` or `inf`.
    #[arg(long, global = true, value_parser = cutoff_arg)]
    pub cutoff: Option<Exponent>,
    /// Coefficient field: `q` or `fp:<p>`.
    #[arg(long, global = true, default_value = "q", value_parser = format::parse_field)]
    pub field: Field,
    /// Also print interleaving maps, Maurer–Cartan residuals or generators.
    #[arg(long, global = true)]
    pub witness: bool,
    /// Seed for the randomized demos.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of a presentation matrix.
    Nf { matrix: PathBuf },
    /// Hom between two modules, or between two generating-function objects.
    Hom { a: PathBuf, b: PathBuf },
    /// Interleaving distance between two modules.
    Dist { e: PathBuf, f: PathBuf },
    /// Solve the Maurer–Cartan equation of a curved dga.
    Mc { dga: PathBuf },
    /// Check and totalize a twisted complex.
    Tc { complex: PathBuf },
    /// Sublevel persistence and the generating-function checks.
    Persist {
        #[command(subcommand)]
        action: PersistAction,
    },
    /// Rank-one local system with monodromy `1 + b`.
    Cl {
        /// Scalar literal of positive valuation.
        b: String,
        /// Second class, to test isomorphism.
        other: Option<String>,
    },
    /// Run a property suite and print its table; `all` runs every suite.
    Demo { name: String },
}

#[derive(Debug, Subcommand)]
pub enum PersistAction {
    /// Barcode of `{h ≤ c}`.
    Bars { h: PathBuf },
    /// Tor dimensions of Hom against critical points of `f − g`.
    Intersect { f: PathBuf, g: PathBuf },
    /// Distance of Hom modules after the shift by `h`, against `osc(h)`.
    Stability { f: PathBuf, g: PathBuf, h: PathBuf },
}

fn cutoff_arg(s: &str) -> std::result::Result<Exponent, String> {
    let e = parse_exponent(s).map_err(|e| e.to_string())?;
    if e <= Exponent::zero() {
        return Err("cutoff must be positive".into());
    }
    Ok(e)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn is_pl(text: &str) -> bool {
    text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).is_some_and(|l| l.starts_with("base"))
}

fn witness_matrix(out: &mut String, label: &str, m: &Matrix) {
    writeln!(out, "{}:", label).unwrap();
    write!(out, "{}", m).unwrap();
}

/// Run one command, returning its report.
pub fn run(cli: &Cli) -> Result<String> {
    let mut out = String::new();
    let cutoff = cli.cutoff.as_ref();
    match &cli.command {
        Command::Nf { matrix } => {
            let mut m = format::read_matrix(&read(matrix)?, cli.field)?;
            if let Some(c) = cutoff {
                if c > &m.ring().cutoff {
                    return Err(Error::Usage(format!("--cutoff {} exceeds the matrix cutoff {}", c, m.ring().cutoff)));
                }
                m = m.with_cutoff(c);
            }
            writeln!(out, "{}", normal_form(&PresentationModule::new(m))).unwrap();
        }
        Command::Hom { a, b } => {
            let (ta, tb) = (read(a)?, read(b)?);
            if is_pl(&ta) && is_pl(&tb) {
                let (fa, fb) = (GFObject::new(format::read_pl(&ta)?, "F"), GFObject::new(format::read_pl(&tb)?, "G"));
                let c = cutoff.cloned().unwrap_or(Exponent::Infinite);
                for (k, m) in hom_module(&fa, &fb, &c)? {
                    writeln!(out, "H^{} {}", k, m).unwrap();
                }
                if cli.witness {
                    writeln!(out, "generators (birth length degree):").unwrap();
                    out.push_str(&format::write_barcode(&hom_persistence(&fa, &fb)?));
                }
            } else {
                let e = format::read_module(&ta, cli.field, cutoff)?;
                let f = format::read_module(&tb, cli.field, cutoff)?;
                let h = hom(&e, &f, cli.field)?;
                writeln!(out, "{}", h).unwrap();
                if cli.witness {
                    for g in &h.generators {
                        writeln!(out, "gen {} -> {} valuation={}", g.source, g.target, g.valuation).unwrap();
                    }
                }
            }
        }
        Command::Dist { e, f } => {
            let e = format::read_module(&read(e)?, cli.field, cutoff)?;
            let f = format::read_module(&read(f)?, cli.field, cutoff)?;
            let report = interleaving_distance(&e, &f, cli.field)?;
            writeln!(out, "{}", report).unwrap();
            if cli.witness {
                match &report.witness {
                    Some(w) => {
                        writeln!(out, "epsilon={}", w.epsilon).unwrap();
                        witness_matrix(&mut out, "alpha", w.alpha.entries());
                        witness_matrix(&mut out, "beta", w.beta.entries());
                    }
                    None => writeln!(out, "no finite interleaving").unwrap(),
                }
            }
        }
        Command::Mc { dga } => {
            let a = format::read_dga(&read(dga)?, cli.field, cutoff)?;
            let outcome = mc_solve(&a)?;
            out.push_str(&format::write_mc_outcome(&a, &outcome));
            if cli.witness {
                let b = match &outcome {
                    McOutcome::Solved(b) => b,
                    McOutcome::Obstructed(r) => &r.partial,
                };
                let r = mc_residual(&a, b, &[])?;
                let terms: Vec<String> = r.iter().map(ToString::to_string).collect();
                writeln!(out, "residual [{}]", terms.join(", ")).unwrap();
            }
        }
        Command::Tc { complex } => {
            let t = format::read_twisted(&read(complex)?, cli.field, cutoff)?;
            let residual = tc_residual(&t);
            let bad: Vec<String> =
                residual.iter().filter(|(_, m)| !m.is_zero()).map(|((i, j), _)| format!("{}{}", i, j)).collect();
            writeln!(out, "residual nonzero=[{}]", bad.join(", ")).unwrap();
            let total = tc_totalize(&t);
            writeln!(out, "squares_to_zero={}", total.squares_to_zero()).unwrap();
            if total.squares_to_zero() {
                for (k, m) in total.cohomology() {
                    writeln!(out, "H^{} {}", k, m).unwrap();
                }
            }
            if cli.witness {
                witness_matrix(&mut out, "total differential", &total.differential);
            }
        }
        Command::Persist { action } => match action {
            PersistAction::Bars { h } => {
                out.push_str(&format::write_barcode(&sublevel_persistence(&format::read_pl(&read(h)?)?)));
            }
            PersistAction::Intersect { f, g } => {
                let f = GFObject::new(format::read_pl(&read(f)?)?, "F");
                let g = GFObject::new(format::read_pl(&read(g)?)?, "G");
                let (lhs, rhs) = intersection_count_check(&f, &g)?;
                writeln!(out, "lhs={} rhs={} equal={}", lhs, rhs, lhs == rhs).unwrap();
            }
            PersistAction::Stability { f, g, h } => {
                let f = GFObject::new(format::read_pl(&read(f)?)?, "F");
                let g = GFObject::new(format::read_pl(&read(g)?)?, "G");
                let h = format::read_pl(&read(h)?)?;
                let c = cutoff.cloned().unwrap_or(Exponent::Infinite);
                let r = stability_check(&f, &g, &h, &c, cli.field)?;
                writeln!(out, "{}", r.distance).unwrap();
                writeln!(out, "osc={} holds={}", r.oscillation, r.holds()).unwrap();
            }
        },
        Command::Cl { b, other } => {
            let parse = |s: &str| -> Result<NovikovScalar> {
                parse_scalar(s, cli.field, cutoff).map_err(|e| Error::parse(0, format!("`{}`: {}", s, e.message)))
            };
            let l = cl(&parse(b)?)?;
            writeln!(out, "monodromy {}", l.monodromy()).unwrap();
            writeln!(out, "class {}", cl_invert(&l)).unwrap();
            if let Some(o) = other {
                let l2 = cl(&parse(o)?)?;
                writeln!(out, "isomorphic={}", l.is_isomorphic(&l2)).unwrap();
            }
        }
        Command::Demo { name } => {
            let names: Vec<&str> = if name == "all" { demo::DEMOS.to_vec() } else { vec![name.as_str()] };
            let mut failed = Vec::new();
            for n in names {
                let d = demo::run(n, cli.seed, cli.field)?;
                out.push_str(&d.text);
                if !d.ok() {
                    failed.push(n);
                }
            }
            if !failed.is_empty() {
                print!("{}", out);
                return Err(Error::Check(format!("demo checks failed: {}", failed.join(", "))));
            }
        }
    }
    Ok(out)
}
