use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use serde_json::json;
use trimul_core::complexity::{complexity_table, find_min_omega, Kind};
use trimul_core::format::{inputs_from_str, triple_result_to_json};
use trimul_core::scalar::int;
use trimul_core::{
    disjoint_multiply, format_rational, naive_matmul, naive_triple, verify_identity,
    DisjointInputs, Mat, MatrixRng, MulTally, Rational,
};

use crate::{BenchArgs, ComplexityArgs, MultiplyArgs, VerifyArgs};

const FAILURE: u8 = 1;

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let q = args.q.unwrap_or_else(|| int(args.n as i64));
    let report = verify_identity(args.n, args.g, q, args.trials, args.seed, args.range)?;
    emit(
        args.output.as_deref(),
        &pretty(&serde_json::to_value(&report)?),
    )?;
    if report.pass {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!(
            "identity fails: {} of {} trials have a nonzero residual (max |residual| = {})",
            report.nonzero_trials(),
            report.trials,
            format_rational(&report.max_abs_residual)
        );
        Ok(ExitCode::from(FAILURE))
    }
}

fn load_inputs(args: &MultiplyArgs) -> Result<DisjointInputs<Rational>> {
    match (&args.input, args.n) {
        (Some(path), _) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            inputs_from_str(&text).with_context(|| format!("parsing {}", path.display()))
        }
        (None, Some(n)) => {
            let seed = args.seed.context("--seed is required with --n")?;
            Ok(DisjointInputs::random(
                n,
                &mut MatrixRng::new(seed),
                args.range,
            )?)
        }
        (None, None) => bail!("either --input or --n is required"),
    }
}

pub fn multiply(args: MultiplyArgs) -> Result<ExitCode> {
    let inputs = load_inputs(&args)?;
    let result = disjoint_multiply(&inputs, args.mode)?;
    emit(
        args.output.as_deref(),
        &pretty(&triple_result_to_json(&result, args.mode)),
    )?;
    if !args.check {
        return Ok(ExitCode::SUCCESS);
    }

    let naive = naive_triple(&inputs)?;
    let t = &mut MulTally::new();
    let cross = [
        (
            "C",
            "AB",
            "YU",
            &result.c,
            &naive.c,
            naive_matmul(inputs.y(), inputs.u(), t)?,
        ),
        (
            "W",
            "UV",
            "BX",
            &result.w,
            &naive.w,
            naive_matmul(inputs.b(), inputs.x(), t)?,
        ),
        (
            "Z",
            "XY",
            "VA",
            &result.z,
            &naive.z,
            naive_matmul(inputs.v(), inputs.a(), t)?,
        ),
    ];
    let mut ok = true;
    for (name, product, cross_name, got, want, cross_product) in cross {
        if got.entries() == want.entries() {
            continue;
        }
        ok = false;
        let residual = got.sub(want)?;
        let wrong = differing_entries(got, want);
        if residual.entries() == cross_product.entries() {
            eprintln!("{name} != {product} in {wrong} entries: residual {name} - {product} equals {cross_name}");
        } else {
            eprintln!("{name} != {product} in {wrong} entries: residual is not {cross_name}");
        }
    }
    if ok {
        eprintln!("check passed: outputs equal AB, UV, XY");
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(FAILURE))
    }
}

fn differing_entries(a: &Mat<Rational>, b: &Mat<Rational>) -> usize {
    a.entries()
        .iter()
        .zip(b.entries())
        .filter(|(x, y)| x != y)
        .count()
}

pub fn complexity(args: ComplexityArgs) -> Result<ExitCode> {
    let (md, wd) = find_min_omega(Kind::Disjoint, args.m_lo, args.m_hi)?;
    let (ms, ws) = find_min_omega(Kind::Single, args.m_lo, args.m_hi)?;
    let mut csv = String::from("m,M_disjoint,omega_disjoint,M_single,omega_single\n");
    for row in complexity_table(args.m_lo, args.m_hi)? {
        csv.push_str(&format!(
            "{},{},{:.9},{},{:.9}\n",
            row.m,
            row.m_disjoint,
            row.omega_disjoint,
            format_rational(&row.m_single),
            row.omega_single
        ));
    }
    emit(args.output.as_deref(), &csv)?;
    let summary = pretty(&json!({
        "m_lo": args.m_lo,
        "m_hi": args.m_hi,
        "disjoint": { "m": md, "omega": wd },
        "single": { "m": ms, "omega": ws },
    }));
    match &args.summary {
        Some(p) => fs::write(p, summary).with_context(|| format!("writing {}", p.display()))?,
        None => eprint!("{summary}"),
    }
    Ok(ExitCode::SUCCESS)
}

pub fn bench(args: BenchArgs) -> Result<ExitCode> {
    if args.reps == 0 {
        bail!("--reps must be at least 1");
    }
    if let Some(bad) = args.sizes.iter().find(|&&n| n < 2) {
        bail!("bench sizes must be at least 2, got {bad}");
    }
    let rows = crate::bench::run(&args.sizes, args.reps, args.seed)?;
    emit(args.output.as_deref(), &crate::bench::to_csv(&rows))?;
    Ok(ExitCode::SUCCESS)
}
