//! Heisenberg, Virasoro and screening suites.

use serde_json::{json, Value};

use super::{check, Check, Ctx};
use crate::fock::{alpha, alpha_pm, basis, operator_matrix, FockVector, GradedOperator, Insertion};
use crate::partitions::MultiPartition;
use crate::scalar::{Params, Scalar};
use crate::virasoro::{
    central_term, minus_boson, screening_mode, screening_source, screening_target, virasoro_mode, BosonSpec, Embedding,
};
use crate::Error;

const MAX_MODE: i64 = 5;
const MAX_VIRASORO: i64 = 4;

fn nonzero_modes(k: i64) -> impl Iterator<Item = i64> + Clone {
    (-k..=k).filter(|n| *n != 0)
}

fn basis_upto(cap: usize, r: usize) -> Vec<MultiPartition> {
    (0..=cap).flat_map(|n| basis(n, r)).collect()
}

/// `[a, b] v - expected(v)` over the given basis; returns the number of
/// vectors where it is nonzero and the first offender.
fn commutator_violations(
    a: &GradedOperator<Scalar>,
    b: &GradedOperator<Scalar>,
    vectors: &[MultiPartition],
    expected: impl Fn(&FockVector<Scalar>) -> FockVector<Scalar>,
) -> (usize, Option<String>) {
    let mut count = 0;
    let mut first = None;
    for mp in vectors {
        let v = FockVector::basis(mp.clone());
        let lhs = a.apply(&b.apply_basis(mp)).sub(&b.apply(&a.apply_basis(mp)));
        if lhs != expected(&v) {
            count += 1;
            first.get_or_insert_with(|| mp.to_string());
        }
    }
    (count, first)
}

/// Canonical commutation relations of the Nakajima modes for each rank,
/// and commutation of the `α^+` and `α^-` bosons.
pub fn heisenberg(ctx: &Ctx) -> Vec<Check> {
    let cap = ctx.cap(6);
    let mut out = Vec::new();
    for r in 1..=ctx.max_rank {
        out.push(check(format!("commutators_rank{r}"), || {
            let p = ctx.at_rank(r)?;
            let vectors = basis_upto(cap, r);
            let inserts = [Insertion::one(), Insertion::pt(&p)];
            let mut ops = Vec::new();
            for i in 0..r {
                for k in nonzero_modes(MAX_MODE) {
                    for (g, gamma) in inserts.iter().enumerate() {
                        ops.push((i, k, g, alpha(&p, r, i, k, gamma)?.memoized()));
                    }
                }
            }
            let (mut pairs, mut bad) = (0usize, 0usize);
            let mut first = None;
            for (i, k, g, a) in &ops {
                for (j, l, h, b) in &ops {
                    pairs += 1;
                    let c = if i == j && k + l == 0 {
                        Scalar::from(*k) * Insertion(&inserts[*g].0 * &inserts[*h].0).tau(&p)
                    } else {
                        Scalar::from(0)
                    };
                    let (n, f) = commutator_violations(a, b, &vectors, |v| v.scale(&c));
                    if n > 0 {
                        bad += n;
                        first.get_or_insert_with(|| json!({ "i": i, "k": k, "j": j, "l": l, "vector": f }));
                    }
                }
            }
            let sizes: Vec<usize> = (0..=cap).map(|n| basis(n, r).len()).collect();
            Ok((
                bad == 0,
                json!({ "rank": r, "basis_sizes": sizes, "pairs": pairs, "violations": bad, "first_violation": first }),
            ))
        }));
    }
    out.push(check("plus_minus_commute", || {
        let p = ctx.at_rank(2)?;
        let vectors = basis_upto(cap, 2);
        let inserts = [Insertion::one(), Insertion::pt(&p)];
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for k in nonzero_modes(MAX_MODE) {
            for g in &inserts {
                plus.push(alpha_pm(&p, 1, k, g)?.memoized());
                minus.push(alpha_pm(&p, -1, k, g)?.memoized());
            }
        }
        let (mut pairs, mut bad) = (0usize, 0usize);
        for a in &plus {
            for b in &minus {
                pairs += 1;
                bad += commutator_violations(a, b, &vectors, |_| FockVector::zero(2)).0;
            }
        }
        Ok((bad == 0, json!({ "pairs": pairs, "vectors": vectors.len(), "violations": bad })))
    }));
    out
}

fn random_spec(ctx: &Ctx, i: u64) -> Result<(BosonSpec<Scalar>, Scalar, Scalar), Error> {
    let mut rng = ctx.rng(0x7669_7261 + i);
    let mut next_nonzero = || loop {
        let x = Ctx::random_scalar(&mut rng);
        if !x.is_zero() {
            break x;
        }
    };
    let spec = BosonSpec::new(next_nonzero(), next_nonzero(), next_nonzero())?;
    Ok((spec, next_nonzero(), next_nonzero()))
}

/// Virasoro relations with central term `g1 g2 (1 - 12κ²τ(1)) (n³-n)/12`
/// for single bosons with random pairing, weight and background charge.
pub fn virasoro(ctx: &Ctx) -> Vec<Check> {
    let cap = ctx.cap(6);
    (0..3u64)
        .map(|s| {
            check(format!("virasoro_relations_spec{s}"), || {
                let (spec, g1, g2) = random_spec(ctx, s)?;
                let emb = Embedding::single(&spec);
                let vectors = basis_upto(cap, 1);
                let g12 = &g1 * &g2;
                let mut bad = Vec::new();
                for n in -MAX_VIRASORO..=MAX_VIRASORO {
                    let ln = virasoro_mode(n, &g1, &spec, &emb)?;
                    for m in -MAX_VIRASORO..=MAX_VIRASORO {
                        let lm = virasoro_mode(m, &g2, &spec, &emb)?;
                        let lnm = virasoro_mode(n + m, &g12, &spec, &emb)?;
                        let c = if n + m == 0 {
                            central_term(n, &g1, &g2, &spec.tau1, &spec.kappa)
                        } else {
                            Scalar::from(0)
                        };
                        let nm = Scalar::from(n - m);
                        let (k, _) =
                            commutator_violations(&ln, &lm, &vectors, |v| lnm.apply(v).scale(&nm).add(&v.scale(&c)));
                        if k > 0 {
                            bad.push(json!([n, m, k]));
                        }
                    }
                }
                let detail = json!({
                    "tau1": spec.tau1.to_ratio_string(),
                    "eta": spec.eta.to_ratio_string(),
                    "kappa": spec.kappa.to_ratio_string(),
                    "g1": g1.to_ratio_string(),
                    "g2": g2.to_ratio_string(),
                    "central_charge": spec.central_charge().to_ratio_string(),
                    "vectors": vectors.len(),
                    "failing_pairs": bad,
                });
                Ok((bad.is_empty(), detail))
            })
        })
        .collect()
}

const SCREENING_INDICES: [i64; 4] = [-1, 0, 1, 2];

fn zero_on_degrees(op: &GradedOperator<Scalar>, from: usize, to: usize) -> Result<bool, Error> {
    for d in from..=to {
        if !operator_matrix(op, d)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The screening operator between the integrality-constrained framings.
pub fn screening(ctx: &Ctx) -> Vec<Check> {
    let cap = ctx.cap(3);
    let base = |ctx: &Ctx| -> Result<Params, Error> { ctx.at_rank(2) };
    let mut out = Vec::new();
    out.push(check("annihilates_vacuum", || {
        let p = base(ctx)?;
        let mut rows = Vec::new();
        for n in [-1i64, -2, -3] {
            let s = screening_mode(&screening_source(&p, n), n, cap)?;
            rows.push(json!({ "n": n, "zero": s.apply(&FockVector::vacuum(2)).is_zero() }));
        }
        let ok = rows.iter().all(|r| r["zero"] == Value::Bool(true));
        Ok((ok, Value::Array(rows)))
    }));
    out.push(check("commutes_with_plus_boson", || {
        let p = base(ctx)?;
        let one = Insertion::one();
        let mut bad = Vec::new();
        for n in SCREENING_INDICES {
            let src = screening_source(&p, n);
            let s = screening_mode(&src, n, cap + 1)?;
            for k in [-1i64, 1] {
                let b = alpha_pm(&src, 1, k, &one)?;
                let c = b.compose(&s).sub(&s.compose(&b));
                if !zero_on_degrees(&c, (k - n).max(0) as usize, cap)? {
                    bad.push(json!([n, k]));
                }
            }
        }
        Ok((bad.is_empty(), json!({ "indices": SCREENING_INDICES, "failing": bad })))
    }));
    out.push(check("intertwines_virasoro", || {
        let p = base(ctx)?;
        let one = Scalar::from(1);
        let mut bad = Vec::new();
        for n in SCREENING_INDICES {
            let (src, tgt) = (screening_source(&p, n), screening_target(&p, n));
            let s = screening_mode(&src, n, cap + 2)?;
            let (ls, lt) = (minus_boson(&src), minus_boson(&tgt));
            for m in -2i64..=2 {
                let a = s.compose(&virasoro_mode(m, &one, &ls, &Embedding::minus(&src))?);
                let b = virasoro_mode(m, &one, &lt, &Embedding::minus(&tgt))?.compose(&s);
                if !zero_on_degrees(&a.sub(&b), (m - n).max(0) as usize, cap)? {
                    bad.push(json!([n, m]));
                }
            }
        }
        Ok((bad.is_empty(), json!({ "indices": SCREENING_INDICES, "failing": bad })))
    }));
    out
}
