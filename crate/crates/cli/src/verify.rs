//! `fulldiv verify`: the worked example `x = (1+ζ3) + e + e²ζ3` against
//! golden values.
//!
//! Exact values must match exactly. The reference unitary matrix is given to
//! two or three printed decimals; those were produced by truncation, so an
//! entry matches when the computed value truncated to the same number of
//! decimals equals the printed one.

use std::path::Path;

use fulldiv::algebra::{render_zeta9, to_zeta9};
use fulldiv::codebook::unitary_matrix_numeric;
use fulldiv::kernel::parse_rat;
use fulldiv::{AlgElem, AlgSpec, LElem, Rat};
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::json;

use crate::{read_file, CliError, CliResult, Format, Output};

const BUILTIN: &str = include_str!("../golden/worked_example.json");

#[derive(Debug, Deserialize)]
struct Golden {
    x: AlgElem,
    embed: [[LElem; 3]; 3],
    alpha: AlgElem,
    quotient_zeta9: [String; 6],
    /// The displayed matrix, whose transpose is `X(X*)⁻¹`.
    unitary_transposed: [[[String; 2]; 3]; 3],
}

struct Check {
    name: &'static str,
    pass: bool,
    expected: String,
    got: String,
}

pub fn fmt_complex(z: Complex64) -> String {
    format!("{:+.5}{:+.5}i", z.re, z.im)
}

fn fmt_printed(re: &str, im: &str) -> String {
    let sign = if im.starts_with('-') { "" } else { "+" };
    format!("{re}{sign}{im}i")
}

/// Whether `v` truncated to the decimals of `printed` equals `printed`.
fn truncates_to(v: f64, printed: &str) -> CliResult<bool> {
    let target: f64 = printed
        .parse()
        .map_err(|_| CliError::Usage(format!("golden: bad decimal {printed:?}")))?;
    let decimals = printed.split_once('.').map_or(0, |(_, f)| f.len()) as i32;
    let scale = 10f64.powi(decimals);
    Ok((v * scale).trunc() == (target * scale).round())
}

pub fn run(out: &Output, golden: Option<&Path>) -> CliResult<()> {
    let text = match golden {
        Some(p) => read_file(p)?,
        None => BUILTIN.to_owned(),
    };
    let g: Golden = serde_json::from_str(&text)
        .map_err(|e| CliError::Core(fulldiv::Error::Parse(format!("golden: {e}"))))?;
    let golden_q = g
        .quotient_zeta9
        .iter()
        .map(|s| parse_rat(s))
        .collect::<fulldiv::Result<Vec<Rat>>>()?;

    let alg = AlgSpec::default();
    let x = g.x.clone();
    let m = alg.embed(&x);
    let ax = alg.alpha(&x)?;
    let q = alg.div(&x, &ax)?;
    let q9 = to_zeta9(&q);
    let unitary = alg.is_unitary(&q)?;
    let num = unitary_matrix_numeric(&alg, &q)?;

    let ascii = out.ascii;
    let grid = |rows: &[[LElem; 3]; 3]| {
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|v| v.render(ascii))
                    .collect::<Vec<_>>()
                    .join(" | ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    };
    let q_str = |v: &[Rat]| match <&[Rat; 6]>::try_from(v) {
        Ok(a) => render_zeta9(a, ascii),
        Err(_) => format!("{v:?}"),
    };

    let mut mismatched = Vec::new();
    for (i, row) in g.unitary_transposed.iter().enumerate() {
        for (j, [re, im]) in row.iter().enumerate() {
            let z = num[j][i];
            if !(truncates_to(z.re, re)? && truncates_to(z.im, im)?) {
                mismatched.push(format!(
                    "[{i}][{j}] printed {}, computed {}",
                    fmt_printed(re, im),
                    fmt_complex(z)
                ));
            }
        }
    }
    let printed_rows: Vec<String> = g
        .unitary_transposed
        .iter()
        .map(|r| {
            r.iter()
                .map(|[a, b]| fmt_printed(a, b))
                .collect::<Vec<_>>()
                .join("  ")
        })
        .collect();

    let checks = [
        Check {
            name: "matrix_embed(x)",
            pass: m.m == g.embed,
            expected: grid(&g.embed),
            got: grid(&m.m),
        },
        Check {
            name: "α(x)",
            pass: ax == g.alpha,
            expected: g.alpha.render(ascii),
            got: ax.render(ascii),
        },
        Check {
            name: "x/α(x)",
            pass: q9.as_ref().is_some_and(|v| v[..] == golden_q[..]),
            expected: q_str(&golden_q),
            got: q9.as_ref().map_or_else(|| q.render(ascii), |v| q_str(v)),
        },
        Check {
            name: "x/α(x) has norm 1",
            pass: unitary,
            expected: "true".into(),
            got: unitary.to_string(),
        },
        Check {
            name: "X(X*)⁻¹ vs printed digits (transposed)",
            pass: mismatched.is_empty(),
            expected: printed_rows.join("\n"),
            got: mismatched.join("\n"),
        },
    ];
    let pass = checks.iter().all(|c| c.pass);

    match out.format {
        Format::Text => {
            outln!("x = {}", x.render(ascii));
            outln!("matrix_embed(x) =\n{}", m.render(ascii));
            outln!("α(x) = {}", ax.render(ascii));
            outln!(
                "x/α(x) = {}",
                q9.as_ref().map_or_else(|| q.render(ascii), |v| q_str(v))
            );
            outln!("X(X*)⁻¹ (embedding 0) =");
            for row in &num {
                outln!("  {}", row.map(fmt_complex).join("  "));
            }
            for c in &checks {
                outln!("{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
                if !c.pass {
                    outln!("  expected:\n{}", indent(&c.expected));
                    outln!("  got:\n{}", indent(&c.got));
                }
            }
            outln!("{}", if pass { "PASS" } else { "FAIL" });
        }
        Format::Json => out.json(&json!({
            "pass": pass,
            "x": x,
            "alpha": ax,
            "quotient": q,
            "quotient_zeta9": q9.as_ref().map(|v| q_str(v)),
            "unitary": fulldiv::json::matrix_to_json(&num),
            "checks": checks.iter().map(|c| json!({
                "name": c.name,
                "pass": c.pass,
                "expected": c.expected,
                "got": c.got,
            })).collect::<Vec<_>>(),
        })),
    }
    if pass {
        Ok(())
    } else {
        Err(CliError::Mismatch)
    }
}

fn indent(s: &str) -> String {
    s.lines()
        .map(|l| format!("    {l}"))
        .collect::<Vec<_>>()
        .join("\n")
}
