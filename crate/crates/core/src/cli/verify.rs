//! Built-in check suites behind `matslocc verify`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::RunConfig;
use crate::compression::{
    asymptotic_profile, binomial_tail_bounds, binomial_tail_exact, build_compression_space, mrk_tensor_pair,
    mrk_tensor_power, CompressionParams,
};
use crate::error::{Error, Result};
use crate::matspace::{Matrix, MatrixSpace};
use crate::rank::{max_rank_greedy, max_rank_with_retry, rank_exact};
use crate::shrunk::{has_shrunk_subspace, ncrk_bounds, ShrunkDecision};
use crate::slocc::{can_convert, fixtures, msrk, rate_bounds, skew_tensor_square_witness, vec_support};

pub const SUITES: [&str; 3] = ["paper-values", "formulas-vs-oracle", "invariants"];

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub observed: Value,
    pub expected: Value,
}

impl Check {
    fn new(name: impl Into<String>, observed: impl Into<Value>, expected: impl Into<Value>) -> Self {
        let (observed, expected) = (observed.into(), expected.into());
        Self { name: name.into(), pass: observed == expected, observed, expected }
    }

    fn holds(name: impl Into<String>, pass: bool, observed: Value) -> Self {
        Self { name: name.into(), pass, observed, expected: Value::Bool(true) }
    }

    pub fn to_json(&self) -> Value {
        json!({"name": self.name, "pass": self.pass, "observed": self.observed, "expected": self.expected})
    }
}

pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<Vec<Check>> {
    match name {
        "paper-values" => paper_values(cfg),
        "formulas-vs-oracle" => formulas_vs_oracle(cfg),
        "invariants" => invariants(cfg),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

fn sq(p: usize, q: usize, d: usize) -> CompressionParams {
    CompressionParams::square(p, q, d).expect("valid parameters")
}

fn big(v: BigUint) -> Value {
    v.to_u64().map_or_else(|| Value::from(v.to_string()), Value::from)
}

/// The permutation of `0..9` exchanging positions 4 and 6.
fn swap_4_6() -> Matrix {
    let mut p = Matrix::zeros(9, 9);
    for i in 0..9 {
        let j = match i {
            4 => 6,
            6 => 4,
            other => other,
        };
        p[(i, j)] = crate::arith::GaussianRational::from_int(1);
    }
    p
}

/// Support pattern of a space as strings of `*` and `0`, one per row.
pub fn support_pattern(space: &MatrixSpace) -> Vec<String> {
    let mut grid = vec![vec!['0'; space.cols()]; space.rows()];
    for (i, j) in space.support() {
        grid[i][j] = '*';
    }
    grid.into_iter().map(|r| r.into_iter().collect()).collect()
}

/// Anti-block pattern of the square of `A(1,1,3)` after exchanging rows
/// and columns 4 and 6.
pub const SQUARE_113_PATTERN: [&str; 9] = [
    "*********",
    "*00**0000",
    "*00**0000",
    "***000000",
    "***000000",
    "*00000000",
    "*00000000",
    "*00000000",
    "*00000000",
];

fn paper_values(cfg: &RunConfig) -> Result<Vec<Check>> {
    let rc = cfg.randomized()?;
    let guard = cfg.guard();
    let mut out = Vec::new();

    let a = build_compression_space(&sq(1, 1, 3));
    out.push(Check::new("mrk A(1,1,3)", max_rank_with_retry(&a, &rc)?.rank, 2));
    let a2 = a.tensor(&a);
    out.push(Check::new(
        "mrk A(1,1,3)^2 three ways",
        json!([
            big(mrk_tensor_power(1, 1, 3, 2)?),
            mrk_tensor_pair(&sq(1, 1, 3), &sq(1, 1, 3))?,
            max_rank_with_retry(&a2, &rc)?.rank
        ]),
        json!([6, 6, 6]),
    ));
    let perm = swap_4_6();
    let permuted = a2.equivalent_transform(&perm, &perm)?;
    out.push(Check::new(
        "A(1,1,3)^2 anti-block form after swapping 4 and 6",
        json!(support_pattern(&permuted)),
        json!(SQUARE_113_PATTERN),
    ));

    for d in [3usize, 5, 7] {
        let state = fixtures::skew(d);
        let s = vec_support(&state);
        let rand = msrk(&state, 1, &rc, guard)?.rank;
        let greedy = rank_exact(&max_rank_greedy(&s, None)?);
        out.push(Check::new(format!("msrk skew d={d}"), json!([rand, greedy]), json!([d - 1, d - 1])));
        let w = skew_tensor_square_witness(d)?;
        out.push(Check::new(format!("rank of tensor-square witness d={d}"), rank_exact(&w), d * d));
    }
    out.push(Check::new("msrk skew d=3, two copies", msrk(&fixtures::skew(3), 2, &rc, guard)?.rank, 9));

    let skew = MatrixSpace::skew_symmetric(3);
    let decision = match has_shrunk_subspace(&skew, &rc, guard)? {
        ShrunkDecision::NoShrunk { certificate, .. } => json!({"k": certificate.k, "exact_rank": certificate.exact_rank}),
        ShrunkDecision::Shrunk { .. } => json!("shrunk"),
    };
    out.push(Check::new("skew(3) has no shrunk subspace", decision, json!({"k": 2, "exact_rank": 6})));

    let no = can_convert(&fixtures::skew(3), 1, 3, &rc, guard, true)?;
    let yes = can_convert(&fixtures::skew(3), 2, 9, &rc, guard, true)?;
    out.push(Check::new(
        "skew d=3 conversions (n=1,r=3) and (n=2,r=9)",
        json!([no.convertible, yes.convertible]),
        json!([false, true]),
    ));

    let rate = rate_bounds(&fixtures::skew(3), 3, None, &rc, guard)?;
    out.push(Check::new(
        "rate skew d=3 toward Schmidt rank 3",
        json!({"lower": rate.lower, "upper": rate.upper, "exact": rate.exact}),
        json!({"lower": 1.0, "upper": 1.0, "exact": true}),
    ));
    Ok(out)
}

/// `(p, q, d)` triples compared against randomized ranks.
pub const ORACLE_TRIPLES: [(usize, usize, usize); 4] = [(1, 1, 3), (1, 1, 4), (1, 2, 4), (2, 1, 5)];

fn formulas_vs_oracle(cfg: &RunConfig) -> Result<Vec<Check>> {
    let rc = cfg.randomized()?;
    let guard = cfg.guard();
    let mut out = Vec::new();
    for (p, q, d) in ORACLE_TRIPLES {
        let base = build_compression_space(&sq(p, q, d));
        for copies in 1..=3u32 {
            let name = format!("A({p},{q},{d}) copies={copies}");
            let power = match base.tensor_power(copies, guard) {
                Ok(s) => s,
                Err(Error::SizeGuardExceeded { .. }) => continue,
                Err(e) => return Err(e),
            };
            let formula = big(mrk_tensor_power(p, q, d, copies)?);
            out.push(Check::new(name, max_rank_with_retry(&power, &rc)?.rank, formula));
        }
    }
    for (a, b) in [(sq(1, 2, 5), sq(2, 1, 6)), (sq(1, 1, 4), sq(1, 1, 4))] {
        let s = build_compression_space(&a).tensor(&build_compression_space(&b));
        out.push(Check::new(
            format!("pair A({},{},{}) x A({},{},{})", a.p, a.q, a.m, b.p, b.q, b.m),
            max_rank_with_retry(&s, &rc)?.rank,
            mrk_tensor_pair(&a, &b)?,
        ));
    }
    Ok(out)
}

fn invariants(cfg: &RunConfig) -> Result<Vec<Check>> {
    let rc = cfg.randomized()?;
    let guard = cfg.guard();
    let mut out = Vec::new();

    let mut worst_gap: f64 = 0.0;
    let mut alpha_ok = true;
    let mut range_ok = true;
    let mut count = 0;
    for d in 3..=30usize {
        for p in 1..d {
            for q in 1..(d - p) {
                let prof = asymptotic_profile(p, q, d)?;
                worst_gap = worst_gap.max((prof.divergence_p - prof.divergence_q).abs());
                alpha_ok &= prof.q_prime < prof.alpha && prof.alpha < 1.0 - prof.p_prime;
                range_ok &= (p + q) as f64 <= prof.mrk_inf && prof.mrk_inf < d as f64;
                count += 1;
            }
        }
    }
    out.push(Check::holds("divergence identity, d <= 30", worst_gap < 1e-12, json!({"max_gap": worst_gap, "triples": count})));
    out.push(Check::holds("q' < alpha < 1 - p', d <= 30", alpha_ok, json!(count)));
    out.push(Check::holds("p + q <= mrk_inf < d, d <= 30", range_ok, json!(count)));

    let c: Vec<f64> = (1..=30u32)
        .map(|n| mrk_tensor_power(1, 1, 3, n).map(|v| v.to_f64().expect("finite").log2()))
        .collect::<Result<_>>()?;
    let fekete = (1..12usize).all(|m| (1..=(12 - m)).all(|n| c[m + n - 1] >= c[m - 1] + c[n - 1] - 1e-9));
    out.push(Check::holds("log mrk(A(1,1,3)^n) superadditive, m+n <= 12", fekete, json!(null)));
    let limit = asymptotic_profile(1, 1, 3)?.mrk_inf;
    let roots: Vec<f64> = c.iter().enumerate().map(|(k, v)| (v / (k + 1) as f64).exp2()).collect();
    let below = roots.iter().all(|r| *r <= limit + 1e-9);
    out.push(Check::holds("mrk(A(1,1,3)^n)^(1/n) <= 2 sqrt 2, n <= 30", below, json!(roots[29])));
    let doubling: Vec<f64> = [1usize, 2, 4, 8, 16].iter().map(|&n| roots[n - 1]).collect();
    let monotone = doubling.windows(2).all(|w| w[0] <= w[1] + 1e-12);
    out.push(Check::holds("n-th roots nondecreasing along 1, 2, 4, 8, 16", monotone, json!(doubling)));

    let mut tails_ok = true;
    let mut tails = 0;
    for n in (5..=40u32).step_by(5) {
        for prob in [0.2, 0.3, 0.5, 0.7] {
            for np in (0..n).filter(|&k| f64::from(k) < f64::from(n) * prob) {
                let exact = binomial_tail_exact(n, np, prob)?.to_f64().expect("finite");
                tails_ok &= binomial_tail_bounds(n, np, prob)?.contains(exact, 1e-12);
                tails += 1;
            }
        }
    }
    out.push(Check::holds("binomial tail within entropy bounds, N <= 40", tails_ok, json!(tails)));

    let spaces = [
        ("skew(3)", MatrixSpace::skew_symmetric(3)),
        ("A(1,1,3)", build_compression_space(&sq(1, 1, 3))),
        ("GHZ", vec_support(&fixtures::ghz())),
        ("W", vec_support(&fixtures::w())),
    ];
    for (name, s) in &spaces {
        let r1 = max_rank_with_retry(s, &rc)?.rank;
        let r2 = max_rank_with_retry(&s.tensor(s), &rc)?.rank;
        out.push(Check::holds(format!("mrk({name}^2) >= mrk({name})^2"), r2 >= r1 * r1, json!([r1, r2])));
        let b = ncrk_bounds(s, &[], &rc, guard)?;
        let ok = r1 <= b.upper && b.lower <= 2 * r1 && b.lower <= b.upper;
        out.push(Check::holds(
            format!("ncrk sandwich {name}"),
            ok,
            json!({"mrk": r1, "lower": b.lower, "upper": b.upper}),
        ));
    }
    Ok(out)
}
