//! Wall-clock comparison in `f64`. Inputs are uniform in `[-1, 1]` and
//! fixed by the seed; only the timing columns vary between runs.

use std::hint::black_box;
use std::time::Instant;

use anyhow::Result;
use trimul_core::{
    disjoint_multiply, naive_triple, DisjointInputs, MatrixRng, Mode, Role, TripleResult,
};

type Runner<'a> = Box<dyn Fn() -> Result<TripleResult<f64>> + 'a>;

pub struct Row {
    pub n: usize,
    pub method: &'static str,
    pub mult_count: u64,
    pub reps: u32,
    pub mean_seconds: f64,
    pub min_seconds: f64,
}

fn float_inputs(n: usize, seed: u64) -> Result<DisjointInputs<f64>> {
    let mut rng = MatrixRng::new(seed);
    let mut mat = |role| rng.unit_matrix(role, n);
    Ok(DisjointInputs::new(
        mat(Role::A)?,
        mat(Role::B)?,
        mat(Role::U)?,
        mat(Role::V)?,
        mat(Role::X)?,
        mat(Role::Y)?,
    )?)
}

fn time(reps: u32, mut f: impl FnMut() -> Result<TripleResult<f64>>) -> Result<(u64, f64, f64)> {
    let mut total = 0.0;
    let mut min = f64::INFINITY;
    let mut count = 0;
    for _ in 0..reps {
        let start = Instant::now();
        let out = black_box(f()?);
        let secs = start.elapsed().as_secs_f64();
        count = out.mult_count;
        total += secs;
        min = min.min(secs);
    }
    Ok((count, total / f64::from(reps), min))
}

pub fn run(sizes: &[usize], reps: u32, seed: u64) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for &n in sizes {
        let inputs = float_inputs(n, seed)?;
        let methods: [(&'static str, Runner); 3] = [
            ("naive", Box::new(|| Ok(naive_triple(black_box(&inputs))?))),
            (
                "raw",
                Box::new(|| Ok(disjoint_multiply(black_box(&inputs), Mode::Raw)?)),
            ),
            (
                "corrected",
                Box::new(|| Ok(disjoint_multiply(black_box(&inputs), Mode::Corrected)?)),
            ),
        ];
        for (method, f) in methods {
            let (mult_count, mean_seconds, min_seconds) = time(reps, f)?;
            rows.push(Row {
                n,
                method,
                mult_count,
                reps,
                mean_seconds,
                min_seconds,
            });
        }
    }
    Ok(rows)
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut out = String::from("n,method,mult_count,reps,mean_seconds,min_seconds\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{:.9e},{:.9e}\n",
            r.n, r.method, r.mult_count, r.reps, r.mean_seconds, r.min_seconds
        ));
    }
    out
}
