//! `bench-mul`: naive vs fast multiplication timings and operation counts.

use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use equicode::ff::opcount;
use equicode::{AbelianGroup, Field, GroupAlgebra, GroupAlgebraElement};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// `Z/o`.
    Cyclic,
    /// `(Z/2)^m` with `o = 2^m`.
    Elementary2,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    d: usize,
    #[arg(long, value_enum, default_value_t = Family::Cyclic)]
    group_family: Family,
    /// Group orders, comma separated; may be empty.
    #[arg(long, default_value = "")]
    sizes: String,
    #[arg(long, default_value_t = 5)]
    reps: usize,
    /// CSV output; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn group(family: Family, size: usize) -> anyhow::Result<AbelianGroup> {
    match family {
        Family::Cyclic => Ok(AbelianGroup::cyclic(size)?),
        Family::Elementary2 => {
            if !size.is_power_of_two() || size < 2 {
                bail!("elementary 2-groups need a power-of-two order, got {size}");
            }
            Ok(AbelianGroup::new(vec![2; size.trailing_zeros() as usize])?)
        }
    }
}

fn median(mut v: Vec<u128>) -> u128 {
    v.sort_unstable();
    v[v.len() / 2]
}

/// Median time over `reps` products (reps spread over the rayon pool) and the
/// field operations of one product.
fn measure(
    a: &GroupAlgebraElement,
    b: &GroupAlgebraElement,
    reps: usize,
    f: fn(&GroupAlgebraElement, &GroupAlgebraElement) -> equicode::Result<GroupAlgebraElement>,
) -> anyhow::Result<(u128, u64)> {
    let (_, ops) = opcount::measure(|| f(a, b));
    let times = (0..reps.max(1))
        .into_par_iter()
        .map(|_| {
            let start = Instant::now();
            let out = f(a, b);
            (start.elapsed().as_nanos(), out.is_ok())
        })
        .collect::<Vec<_>>();
    if times.iter().any(|t| !t.1) {
        bail!("multiplication failed");
    }
    Ok((median(times.into_iter().map(|t| t.0).collect()), ops))
}

pub fn run(args: &BenchArgs, seed: u64) -> anyhow::Result<()> {
    let field = Field::new(args.p, args.d, None)?;
    let sink: Box<dyn std::io::Write> = match &args.out {
        Some(path) => Box::new(std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?),
        None => Box::new(std::io::stdout()),
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["group_order", "method", "median_ns", "ops_per_element"])?;
    let sizes = args
        .sizes
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().with_context(|| format!("bad size {t:?}")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for size in sizes {
        let alg = GroupAlgebra::new(field.clone(), group(args.group_family, size)?);
        let a = alg.random(&mut rng);
        let b = alg.random(&mut rng);
        // warm up the transform plans so timings measure the product alone
        a.mul(&b)?;
        let naive = measure(&a, &b, args.reps, GroupAlgebraElement::mul_naive)?;
        let fast = measure(&a, &b, args.reps, GroupAlgebraElement::mul)?;
        for (method, (ns, ops)) in [("naive", naive), ("fast", fast)] {
            let per = ops as f64 / size as f64;
            w.write_record([size.to_string(), method.to_string(), ns.to_string(), format!("{per:.3}")])?;
        }
    }
    w.flush()?;
    Ok(())
}
