//! `fulldiv` command-line tool.
//!
//! Exit codes: 0 success, 1 verification mismatch or runtime failure,
//! 2 usage error.

/// `println!` that ignores a closed stdout (e.g. piped into `head`).
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

mod verify;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fulldiv::algebra::{from_zeta9, render_zeta9, to_zeta9};
use fulldiv::codebook::{diversity_product, generate_codebook, norm_witness_search, table1_row};
use fulldiv::json::{CodebookFile, DiversityJson, GammaJson};
use fulldiv::kernel::{parse_rat, render_factorization, Rat};
use fulldiv::{AlgElem, AlgSpec, CoefficientBox, DiversityReport, KElem, SubfieldSpec};
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] fulldiv::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    /// Details were already printed.
    #[error("verification failed")]
    Mismatch,
    #[error("box exhausted: wrote {got} of {want} requested elements to {path}")]
    Exhausted {
        got: usize,
        want: usize,
        path: PathBuf,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "fulldiv",
    version,
    about = "Unitary codebooks from a cubic cyclic division algebra"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Use ASCII symbol names (z3, t, e^2) instead of ζ3, θ, e².
    #[arg(long, global = true)]
    ascii: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rerun the worked example and compare against golden values.
    Verify {
        /// Golden file overriding the built-in values.
        #[arg(long)]
        golden: Option<PathBuf>,
    },
    /// Print the cubic subfields Q(ν), ν = kθ + (1+ζ3)e − e², k = 1..5.
    Table1,
    /// Generate a unitary codebook and write it as JSON.
    Generate {
        /// zeta9 (the subfield K(e)), nu:<k>, or L.
        #[arg(long, default_value = "zeta9")]
        subfield: SubfieldSpec,
        /// Numerator bound B for each rational coordinate.
        #[arg(long = "box", default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
        /// Denominator bound D.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        denom: u32,
        /// Number of distinct unitary elements to collect.
        #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
        size: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Recompute the diversity product of a codebook file from its exact coefficients.
    Diversity { path: PathBuf },
    /// Print the matrix embedding of an element.
    Embed {
        /// Six rational coefficients of 1, ζ9, …, ζ9⁵, comma separated.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            conflicts_with = "element"
        )]
        zeta9: Option<Vec<String>>,
        /// An element as JSON: {"x0": [6 × "p/q"], "x1": …, "x2": …}.
        #[arg(long)]
        element: Option<String>,
        /// Complex embedding index (0, 1 or 2) for the numeric matrix.
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..3))]
        index: u8,
    },
    /// Search L for an element of given relative norm.
    Witness {
        /// zeta3, zeta3^2, or an element of K as "a0,a1" meaning a0 + a1·ζ3.
        #[arg(long, default_value = "zeta3", allow_hyphen_values = true)]
        target: String,
        #[arg(long = "box", default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        bound: u32,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        denom: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn dispatch(cli: &Cli) -> CliResult<()> {
    let out = Output {
        format: cli.format,
        ascii: cli.ascii,
    };
    match &cli.command {
        Command::Verify { golden } => verify::run(&out, golden.as_deref()),
        Command::Table1 => table1(&out),
        Command::Generate {
            subfield,
            bound,
            denom,
            size,
            out: path,
        } => generate(&out, *subfield, *bound, *denom, *size as usize, path),
        Command::Diversity { path } => diversity(&out, path),
        Command::Embed {
            zeta9,
            element,
            index,
        } => embed(&out, zeta9.as_deref(), element.as_deref(), *index as usize),
        Command::Witness {
            target,
            bound,
            denom,
        } => witness(&out, target, *bound, *denom),
    }
}

pub struct Output {
    pub format: Format,
    pub ascii: bool,
}

impl Output {
    pub fn json(&self, v: &serde_json::Value) {
        outln!(
            "{}",
            serde_json::to_string_pretty(v).expect("json values serialize")
        );
    }
}

pub fn read_file(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn table1(out: &Output) -> CliResult<()> {
    let rows = (1..=5)
        .map(table1_row)
        .collect::<fulldiv::Result<Vec<_>>>()?;
    match out.format {
        Format::Text => {
            let (chi, chi_nu) = if out.ascii {
                ("chi", "chi_nu")
            } else {
                ("χ", "χ_ν")
            };
            for r in &rows {
                outln!(
                    "{} | {} | {} | {} | {} = {}, poly = {} of {}",
                    r.k,
                    r.generator_label(out.ascii),
                    r.poly.render(out.ascii),
                    render_factorization(&r.factors, out.ascii),
                    chi_nu,
                    r.char_poly.render(out.ascii),
                    chi,
                    r.element_label(out.ascii),
                )
            }
        }
        Format::Json => {
            let recs: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "k": r.k,
                        "generator": r.generator_label(out.ascii),
                        "poly": r.poly.render(out.ascii),
                        "discriminant": r.discriminant.to_string(),
                        "factorization": render_factorization(&r.factors, out.ascii),
                        "irreducible": r.irreducible,
                        "char_poly": r.char_poly.render(out.ascii),
                        "field_generator": r.element_label(out.ascii),
                    })
                })
                .collect();
            out.json(&json!(recs));
        }
    }
    Ok(())
}

fn diversity_value(r: &DiversityReport, ascii: bool) -> serde_json::Value {
    json!({
        "zeta": r.zeta,
        "argmin": [r.argmin.0, r.argmin.1],
        "min_abs_det": r.min_abs_det,
        "min_det": r.min_det.render(ascii),
        "exact_nonzero": r.exact_nonzero,
        "pairs": r.pairs,
    })
}

fn print_diversity_text(r: &DiversityReport, ascii: bool) {
    outln!(
        "zeta = {:.15}\nmin |det| = {:.15} at pair ({}, {}), det = {}\nexact_nonzero = {}, pairs = {}",
        r.zeta,
        r.min_abs_det,
        r.argmin.0,
        r.argmin.1,
        r.min_det.render(ascii),
        r.exact_nonzero,
        r.pairs
    );
}

fn generate(
    out: &Output,
    subfield: SubfieldSpec,
    bound: u32,
    denom: u32,
    size: usize,
    path: &Path,
) -> CliResult<()> {
    // fail on an unwritable path before the enumeration
    let mut file = fs::File::create(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    let alg = AlgSpec::default();
    let cbox = CoefficientBox::new(bound, denom)?;
    let cb = generate_codebook(&alg, subfield, &cbox, size)?;
    let div = if cb.elements.len() >= 2 {
        Some(diversity_product(&alg, &cb.elements)?)
    } else {
        None
    };
    let text = CodebookFile::new(&alg, &cb, div.as_ref()).to_json();
    file.write_all(text.as_bytes())
        .and_then(|_| file.write_all(b"\n"))
        .map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?;

    match out.format {
        Format::Text => {
            outln!(
                "wrote {} unitary elements to {} (subfield {subfield}, box {bound}, denom {denom})",
                cb.elements.len(),
                path.display()
            );
            outln!(
                "candidates {}, precondition failures {}",
                cb.candidates,
                cb.precondition_failures
            );
            match &div {
                Some(d) => print_diversity_text(d, out.ascii),
                None => outln!("single element: no diversity product"),
            }
        }
        Format::Json => out.json(&json!({
            "path": path.display().to_string(),
            "size": cb.elements.len(),
            "subfield": subfield.to_string(),
            "box": bound,
            "denom": denom,
            "candidates": cb.candidates,
            "precondition_failures": cb.precondition_failures,
            "exhausted": cb.exhausted,
            "diversity": div.as_ref().map(|d| diversity_value(d, out.ascii)),
        })),
    }
    if cb.exhausted {
        return Err(CliError::Exhausted {
            got: cb.elements.len(),
            want: size,
            path: path.to_owned(),
        });
    }
    Ok(())
}

/// Agreement of a recomputed report with the one stored in a file.
fn same_report(stored: &DiversityJson, fresh: &DiversityJson) -> bool {
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0);
    stored.argmin == fresh.argmin
        && stored.min_det == fresh.min_det
        && stored.exact_nonzero == fresh.exact_nonzero
        && stored.pairs == fresh.pairs
        && close(stored.zeta, fresh.zeta)
        && close(stored.min_abs_det, fresh.min_abs_det)
}

fn diversity(out: &Output, path: &Path) -> CliResult<()> {
    let file = CodebookFile::from_json(&read_file(path)?)?;
    let alg = file.gamma.to_spec()?;
    alg.require_unitary()?;
    for (index, x) in file.elements.iter().enumerate() {
        if !alg.is_unitary(x)? {
            return Err(fulldiv::Error::NotUnitary {
                index,
                reason: "x·α(x) ≠ 1".into(),
            }
            .into());
        }
    }
    let report = diversity_product(&alg, &file.elements)?;
    let fresh = DiversityJson::from(&report);
    let stored = file.diversity.as_ref().map(|s| same_report(s, &fresh));
    match out.format {
        Format::Text => {
            outln!("{} elements, all unitary", file.elements.len());
            print_diversity_text(&report, out.ascii);
            match stored {
                Some(true) => outln!("stored report: matches"),
                Some(false) => outln!("stored report: DIFFERS"),
                None => {}
            }
        }
        Format::Json => {
            let mut v = diversity_value(&report, out.ascii);
            v["stored_matches"] = json!(stored);
            out.json(&v);
        }
    }
    if stored == Some(false) {
        eprintln!("error: stored diversity report disagrees with the recomputation");
        return Err(CliError::Mismatch);
    }
    Ok(())
}

fn parse_zeta9(parts: &[String]) -> CliResult<[Rat; 6]> {
    if parts.len() != 6 {
        return Err(CliError::Usage(format!(
            "--zeta9 needs 6 coefficients, got {}",
            parts.len()
        )));
    }
    let mut q: [Rat; 6] = Default::default();
    for (slot, s) in q.iter_mut().zip(parts) {
        *slot = parse_rat(s.trim()).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(q)
}

fn embed(
    out: &Output,
    zeta9: Option<&[String]>,
    element: Option<&str>,
    index: usize,
) -> CliResult<()> {
    let alg = AlgSpec::default();
    let x = match (zeta9, element) {
        (Some(parts), _) => from_zeta9(&parse_zeta9(parts)?),
        (None, Some(js)) => serde_json::from_str::<AlgElem>(js)
            .map_err(|e| CliError::Usage(format!("--element: {e}")))?,
        (None, None) => from_zeta9(&parse_zeta9(
            &["1", "1", "0", "1", "0", "1"].map(String::from),
        )?),
    };
    let m = alg.embed(&x);
    let c = m.to_complex(index);
    let norm = alg.reduced_norm(&x);
    let chi = alg.reduced_char_poly(&x);
    match out.format {
        Format::Text => {
            outln!("x = {}", x.render(out.ascii));
            if let Some(q) = to_zeta9(&x) {
                outln!("  = {}", render_zeta9(&q, out.ascii));
            }
            outln!("matrix_embed(x) =\n{}", m.render(out.ascii));
            outln!("numeric (embedding {index}) =");
            for row in &c {
                let cells: Vec<String> = row.iter().map(|z| verify::fmt_complex(*z)).collect();
                outln!("  {}", cells.join("  "));
            }
            outln!("reduced norm = {}", norm.render(out.ascii));
            outln!("χ_x = {}", chi.render(out.ascii));
        }
        Format::Json => out.json(&json!({
            "element": x,
            "matrix": m.m,
            "numeric": fulldiv::json::matrix_to_json(&c),
            "reduced_norm": norm,
            "char_poly": chi.render(out.ascii),
        })),
    }
    Ok(())
}

fn parse_target(s: &str) -> CliResult<KElem> {
    match s {
        "zeta3" | "ζ3" => Ok(KElem::zeta3()),
        "zeta3^2" | "ζ3^2" | "ζ3²" => Ok(KElem::zeta3().pow(2)),
        _ => {
            let parts: Vec<&str> = s.split(',').map(str::trim).collect();
            let bad = |e: fulldiv::Error| CliError::Usage(format!("--target: {e}"));
            match parts.as_slice() {
                [a0] => Ok(KElem::from_rat(parse_rat(a0).map_err(bad)?)),
                [a0, a1] => Ok(KElem::new(
                    parse_rat(a0).map_err(bad)?,
                    parse_rat(a1).map_err(bad)?,
                )),
                _ => Err(CliError::Usage(format!("--target: cannot parse {s:?}"))),
            }
        }
    }
}

fn witness(out: &Output, target: &str, bound: u32, denom: u32) -> CliResult<()> {
    let target = parse_target(target)?;
    let cbox = CoefficientBox::new(bound, denom)?;
    let w = norm_witness_search(&target, &cbox);
    match out.format {
        Format::Text => match &w.witness {
            Some(u) => outln!(
                "N(u) = {} for u = {} (after {} candidates)",
                target.render(out.ascii),
                u.render(out.ascii),
                w.examined
            ),
            None => outln!(
                "no u with N(u) = {} among {} candidates (box {bound}, denom {denom}); \
                 evidence only, not a proof",
                target.render(out.ascii),
                w.examined
            ),
        },
        Format::Json => out.json(&json!({
            "target": GammaJson::Exact(target.clone()),
            "box": bound,
            "denom": denom,
            "witness": w.witness,
            "examined": w.examined,
        })),
    }
    Ok(())
}
