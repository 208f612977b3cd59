//! Named verification suites and their JSON reports.
//!
//! Every suite is a list of exact checks. A check either holds as an
//! equality of rationals or rational functions, or it fails; there are no
//! tolerances. Reports are deterministic given the suite name, the
//! parameters and the degree cap, apart from `duration_ms`.

mod algebra;
mod chain;
mod rmatrix;
mod spectral;

use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::linalg::Matrix;
use crate::scalar::{draw, sample_params, Params, Poly, RatFunc, Scalar, DEGREE_CAP};
use crate::Error;

pub use algebra::{heisenberg, screening, virasoro};
pub use chain::{gamma, grassmann};
pub use rmatrix::{determinants, rmatrix_core, vacuum_gauss, yangbaxter};
pub use spectral::{jack, quantum, spectrum};

pub const SUITES: [&str; 11] = [
    "heisenberg",
    "virasoro",
    "rmatrix",
    "yangbaxter",
    "jack",
    "quantum",
    "spectrum",
    "grassmann",
    "gamma",
    "screening",
    "all",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: Value,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Runs `f` as one check; an error inside the computation is a failure
/// carrying the error text.
pub fn check(name: impl Into<String>, f: impl FnOnce() -> Result<(bool, Value), Error>) -> Check {
    let name = name.into();
    match f() {
        Ok((ok, detail)) => Check { name, status: if ok { Status::Pass } else { Status::Fail }, detail },
        Err(e) => Check { name, status: Status::Fail, detail: json!({ "error": e.to_string() }) },
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub params: Params,
    pub checks: Vec<Check>,
    pub duration_ms: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// What to do with golden files.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Golden {
    #[default]
    Off,
    Compare(PathBuf),
    Record(PathBuf),
}

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Explicit parameters; otherwise sampled from `seed`.
    pub params: Option<Params>,
    pub degree_cap: Option<usize>,
    /// Rank of the sampled parameters and the largest rank looped over.
    pub rank: Option<usize>,
    pub q: Option<Scalar>,
    pub golden: Golden,
}

const DEFAULT_RANK: usize = 3;

/// Shared inputs of the suite runners.
pub struct Ctx {
    pub base: Params,
    pub seed: u64,
    pub cap: Option<usize>,
    pub max_rank: usize,
    pub golden: Golden,
}

impl Ctx {
    pub fn new(opts: &SuiteOptions) -> Result<Ctx, Error> {
        if let Some(c) = opts.degree_cap {
            if c > DEGREE_CAP {
                return Err(Error::OutOfRange(format!("degree cap {c} > {DEGREE_CAP}")));
            }
        }
        let mut base = match &opts.params {
            Some(p) => p.clone(),
            None => sample_params(opts.seed, opts.rank.unwrap_or(DEFAULT_RANK))?,
        };
        if let Some(q) = &opts.q {
            base.q = q.clone();
        }
        base.validate()?;
        let max_rank = opts.rank.unwrap_or(base.rank().max(DEFAULT_RANK));
        Ok(Ctx { seed: base.seed, base, cap: opts.degree_cap, max_rank, golden: opts.golden.clone() })
    }

    /// The base parameters at rank `r`: truncated, or extended with weights
    /// sampled from the seed.
    pub fn at_rank(&self, r: usize) -> Result<Params, Error> {
        let mut a = self.base.a.clone();
        if a.len() < r {
            let extra = sample_params(self.seed, r)?;
            a.extend(extra.a[a.len()..].iter().cloned());
        }
        a.truncate(r);
        let p = self.base.with_a(a);
        p.validate()?;
        Ok(p)
    }

    pub fn cap(&self, default: usize) -> usize {
        self.cap.unwrap_or(default)
    }

    /// A generator private to one check, derived from the seed and a salt.
    pub fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
    }

    pub fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
        draw(rng)
    }
}

/// Runs a named suite.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport, Error> {
    if !SUITES.contains(&name) {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    let ctx = Ctx::new(opts)?;
    let start = Instant::now();
    let mut checks = if name == "all" {
        let mut all = Vec::new();
        for s in SUITES.iter().filter(|s| **s != "all") {
            for mut c in suite_checks(s, &ctx) {
                c.name = format!("{s}/{}", c.name);
                all.push(c);
            }
        }
        all
    } else {
        suite_checks(name, &ctx)
    };
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(SuiteReport {
        suite: name.to_string(),
        seed: ctx.seed,
        params: ctx.base.clone(),
        checks,
        duration_ms: start.elapsed().as_millis() as u64,
    })
}

fn suite_checks(name: &str, ctx: &Ctx) -> Vec<Check> {
    match name {
        "heisenberg" => heisenberg(ctx),
        "virasoro" => virasoro(ctx),
        "rmatrix" => {
            let mut v = rmatrix_core(ctx);
            v.extend(vacuum_gauss(ctx));
            v.extend(determinants(ctx));
            v
        }
        "yangbaxter" => yangbaxter(ctx),
        "jack" => jack(ctx),
        "quantum" => quantum(ctx),
        "spectrum" => spectrum(ctx),
        "grassmann" => grassmann(ctx),
        "gamma" => gamma(ctx),
        "screening" => screening(ctx),
        _ => unreachable!("suite names are checked by run_suite"),
    }
}

// ---------------------------------------------------------------------------
// Serialization of exact values

pub fn scalar_json(s: &Scalar) -> Value {
    Value::String(s.to_ratio_string())
}

pub fn poly_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(scalar_json).collect())
}

/// `{"num": [...], "den": [...]}`, coefficients lowest degree first.
pub fn ratfunc_json(r: &RatFunc) -> Value {
    json!({ "num": poly_json(r.num()), "den": poly_json(r.den()) })
}

pub fn matrix_json(m: &Matrix<Scalar>) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(scalar_json).collect())).collect())
}

pub fn scalar_from_json(v: &Value) -> Result<Scalar, Error> {
    v.as_str().ok_or_else(|| Error::Parse(format!("expected a rational string, got {v}")))?.parse()
}

pub fn ratfunc_from_json(v: &Value) -> Result<RatFunc, Error> {
    let poly = |key: &str| -> Result<Poly, Error> {
        let arr = v.get(key).and_then(Value::as_array).ok_or_else(|| Error::Parse(format!("missing '{key}'")))?;
        Ok(Poly::new(arr.iter().map(scalar_from_json).collect::<Result<_, _>>()?))
    };
    Ok(RatFunc::new(poly("num")?, poly("den")?))
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix<Scalar>, Error> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("expected an array of rows".into()))?;
    let rows: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("expected a row array".into()))?
                .iter()
                .map(scalar_from_json)
                .collect()
        })
        .collect::<Result<_, _>>()?;
    if rows.windows(2).any(|w| w[0].len() != w[1].len()) {
        return Err(Error::Parse("ragged matrix".into()));
    }
    Ok(Matrix::from_rows(rows))
}

// ---------------------------------------------------------------------------
// Golden files

/// Compares `value` with `dir/file`, or writes it there when recording.
/// Returns `None` when golden files are off.
fn golden_check(golden: &Golden, file: &str, value: &Value) -> Option<Result<(bool, Value), Error>> {
    let io = |path: &Path, e: std::io::Error| Error::Parse(format!("{}: {e}", path.display()));
    match golden {
        Golden::Off => None,
        Golden::Record(dir) => Some((|| {
            let path = dir.join(file);
            std::fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
            let text = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
            std::fs::write(&path, text + "\n").map_err(|e| io(&path, e))?;
            Ok((true, json!({ "recorded": path.display().to_string() })))
        })()),
        Golden::Compare(dir) => Some((|| {
            let path = dir.join(file);
            let text = std::fs::read_to_string(&path).map_err(|e| io(&path, e))?;
            let stored: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let ok = stored == *value;
            Ok((ok, json!({ "file": path.display().to_string(), "matches": ok, "computed": value })))
        })()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_and_bad_cap() {
        assert!(matches!(run_suite("nope", &SuiteOptions::default()), Err(Error::UnknownSuite(_))));
        let opts = SuiteOptions { degree_cap: Some(DEGREE_CAP + 1), ..Default::default() };
        assert!(matches!(run_suite("gamma", &opts), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn invalid_params_are_rejected() {
        let mut p = sample_params(3, 2).unwrap();
        p.a[1] = &p.a[0] + &p.t1;
        let opts = SuiteOptions { params: Some(p), ..Default::default() };
        assert!(matches!(run_suite("gamma", &opts), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn exact_values_round_trip() {
        let r = RatFunc::new(
            Poly::new(vec![Scalar::new(-3, 4), Scalar::from(2)]),
            Poly::new(vec![Scalar::new(1, 7), Scalar::from(1)]),
        );
        assert_eq!(ratfunc_from_json(&ratfunc_json(&r)).unwrap(), r);
        let m = Matrix::from_rows(vec![
            vec![Scalar::new(1, 2), Scalar::from(0)],
            vec![Scalar::new(-5, 3), Scalar::from(7)],
        ]);
        assert_eq!(matrix_from_json(&matrix_json(&m)).unwrap(), m);
        assert!(matrix_from_json(&json!([["1"], ["1", "2"]])).is_err());
    }

    #[test]
    fn report_round_trips_and_is_deterministic() {
        let opts = SuiteOptions { seed: 4, ..Default::default() };
        let a = run_suite("gamma", &opts).unwrap();
        let b = run_suite("gamma", &opts).unwrap();
        assert!(a.passed());
        assert_eq!(a.checks, b.checks);
        let text = serde_json::to_string(&a).unwrap();
        let back: SuiteReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
        let names: Vec<_> = a.checks.iter().map(|c| c.name.clone()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }

    #[test]
    fn at_rank_extends_and_truncates() {
        let ctx = Ctx::new(&SuiteOptions { seed: 9, rank: Some(2), ..Default::default() }).unwrap();
        assert_eq!(ctx.at_rank(1).unwrap().a, ctx.base.a[..1].to_vec());
        let p4 = ctx.at_rank(4).unwrap();
        assert_eq!(p4.a[..2], ctx.base.a[..]);
        assert_eq!(p4.rank(), 4);
    }
}
