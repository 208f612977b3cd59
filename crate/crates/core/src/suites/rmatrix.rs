//! R-matrix suites: basic identities, expansion at infinity, vacuum row,
//! Gauss factorization, determinants and the Yang–Baxter equation.

use serde_json::{json, Value};

use super::{check, golden_check, scalar_json, Check, Ctx};
use crate::fock::{alpha_pm, operator_matrix, Insertion};
use crate::linalg::Matrix;
use crate::rmatrix::{
    eval_blocks, factor_over_lattice, first_factor_blocks, full_determinant, full_r_blocks, gauss_factorize,
    log_coefficients, predicted_r3, r_on_triple, reflection_blocks, swap_matrix, DeterminantFactors, LatticeRoot,
    RMatrixBlock, Side,
};
use crate::scalar::{RatFunc, Scalar};
use crate::vertexops::{lehn_operator, minus_field, phi_n};
use crate::Error;

pub const DETERMINANT_GOLDEN: &str = "determinant_factors.json";

fn blocks_for(ctx: &Ctx, cap: usize) -> Result<Vec<Matrix<RatFunc>>, Error> {
    full_r_blocks(&ctx.at_rank(2)?, cap)
}

/// Runs `f` against shared blocks, turning a failed block computation into
/// a failed check.
fn on_blocks<'a>(
    blocks: &'a Result<Vec<Matrix<RatFunc>>, Error>,
    f: impl FnOnce(&'a [Matrix<RatFunc>]) -> Result<(bool, Value), Error>,
) -> Result<(bool, Value), Error> {
    f(blocks.as_ref().map_err(Error::clone)?)
}

fn per_degree(
    blocks: &[Matrix<RatFunc>],
    f: impl Fn(usize, &Matrix<RatFunc>) -> Result<bool, Error>,
) -> Result<(bool, Value), Error> {
    let mut failing = Vec::new();
    for (n, b) in blocks.iter().enumerate() {
        if !f(n, b)? {
            failing.push(n);
        }
    }
    Ok((failing.is_empty(), json!({ "degrees": blocks.len(), "failing_degrees": failing })))
}

/// `R(0) = (12)`, unitarity, and the expansion of `R` and `log R` at
/// infinity in terms of charges.
pub fn rmatrix_core(ctx: &Ctx) -> Vec<Check> {
    let cap = ctx.cap(4);
    let blocks = blocks_for(ctx, cap);
    let mut out = Vec::new();
    out.push(check("r_at_zero_is_swap", || {
        on_blocks(&blocks, |bs| per_degree(bs, |n, b| Ok(b.eval(&Scalar::from(0)) == Some(swap_matrix(n)))))
    }));
    out.push(check("unitarity", || {
        on_blocks(&blocks, |bs| {
            per_degree(bs, |n, b| {
                let sw = swap_matrix(n).to_ratfunc();
                Ok(b.mul_common_den(&sw.mul(&b.rescale_var(&Scalar::from(-1))).mul(&sw)).is_identity())
            })
        })
    }));
    out.push(check("expansion_through_u2", || {
        on_blocks(&blocks, |bs| {
            let p = ctx.at_rank(2)?;
            let h = p.hbar();
            let phi2 = phi_n(&p, 2, &minus_field())?;
            let phi3 = phi_n(&p, 3, &minus_field())?;
            per_degree(bs, |n, r| {
                let p2 = operator_matrix(&phi2, n)?;
                let p3 = operator_matrix(&phi3, n)?;
                let half_h2 = &h * &h * Scalar::new(1, 2);
                Ok(r.coeff_at_infinity(0).is_identity()
                    && r.coeff_at_infinity(1) == p2.scale(&h)
                    && r.coeff_at_infinity(2) == p3.scale(&h).add(&p2.mul(&p2).scale(&half_h2)))
            })
        })
    }));
    out.push(check("log_expansion_through_u3", || {
        on_blocks(&blocks, |bs| {
            let p = ctx.at_rank(2)?;
            let h = p.hbar();
            let phi2 = phi_n(&p, 2, &minus_field())?;
            let phi3 = phi_n(&p, 3, &minus_field())?;
            let r3 = predicted_r3(&p);
            per_degree(bs, |n, r| {
                let [l1, l2, l3] = log_coefficients(r);
                Ok(l1 == operator_matrix(&phi2, n)?.scale(&h)
                    && l2 == operator_matrix(&phi3, n)?.scale(&h)
                    && l3 == operator_matrix(&r3, n)?)
            })
        })
    }));
    out.push(check("log_coefficients_kill_vacuum", || {
        on_blocks(&blocks, |bs| {
            let logs = log_coefficients(&bs[0]);
            Ok((logs.iter().all(Matrix::is_zero), json!({ "orders": [1, 2, 3] })))
        })
    }));
    out.push(check("commutes_with_plus_modes", || {
        on_blocks(&blocks, |bs| {
            let p = ctx.at_rank(2)?;
            let mut failing = Vec::new();
            for k in (-3i64..=3).filter(|k| *k != 0) {
                let a = alpha_pm(&p, 1, k, &Insertion::one())?;
                for n in 0..bs.len() {
                    let m = n as i64 - k;
                    if m < 0 || m as usize >= bs.len() {
                        continue;
                    }
                    let am = operator_matrix(&a, n)?.to_ratfunc();
                    if bs[m as usize].mul_common_den(&am) != am.mul_common_den(&bs[n]) {
                        failing.push(json!([k, n]));
                    }
                }
            }
            Ok((failing.is_empty(), json!({ "modes": "±1..±3", "failing": failing })))
        })
    }));
    out
}

/// Vacuum row of `R` through `u^{-2}` and the block Gauss factorization.
pub fn vacuum_gauss(ctx: &Ctx) -> Vec<Check> {
    let cap = ctx.cap(4);
    let blocks = blocks_for(ctx, cap);
    let mut out = Vec::new();
    out.push(check("vacuum_row_expansion", || {
        on_blocks(&blocks, |bs| {
            let p = ctx.at_rank(2)?;
            let h = p.hbar();
            let lehn = lehn_operator(&p, &Scalar::from(0));
            per_degree(bs, |n, r| {
                let g = first_factor_blocks(n);
                let vr = r.submatrix(&g[0], &g[0]);
                let id = Matrix::<Scalar>::identity(g[0].len());
                let nn = Scalar::from(n as i64);
                let c2 = &h * &h * &nn * (&nn + Scalar::from(1)) * Scalar::new(1, 2);
                let expect2 = operator_matrix(&lehn, n)?.scale(&h).add(&id.scale(&c2));
                Ok(vr.coeff_at_infinity(1) == id.scale(&(&h * &nn)) && vr.coeff_at_infinity(2) == expect2)
            })
        })
    }));
    let factored = |bs: &[Matrix<RatFunc>], n: usize| -> Result<(Matrix<RatFunc>, Matrix<RatFunc>), Error> {
        gauss_factorize(&RMatrixBlock { degree: n, matrix: bs[n].clone(), side: Side::FullTensor })
    };
    out.push(check("gauss_factorization", || {
        on_blocks(&blocks, |bs| {
            per_degree(bs, |n, r| {
                let (u, s) = factored(bs, n)?;
                let g = first_factor_blocks(n);
                // U R = S is R = U^{-1} S for the unipotent U
                Ok(u.mul_common_den(r) == s && s.submatrix(&g[0], &g[0]) == r.submatrix(&g[0], &g[0]))
            })
        })
    }));
    out.push(check("gauss_diagonal_through_u2", || {
        on_blocks(&blocks, |bs| {
            per_degree(bs, |n, r| {
                let (_, s) = factored(bs, n)?;
                let g = first_factor_blocks(n);
                for k in 0..g.len() {
                    let mut v = r.submatrix(&g[k], &g[k]);
                    for i in 0..k {
                        v = v.sub(&r.submatrix(&g[k], &g[i]).mul_common_den(&r.submatrix(&g[i], &g[k])));
                    }
                    if !s.submatrix(&g[k], &g[k]).sub(&v).vanishes_to_order(3) {
                        return Ok(false);
                    }
                }
                Ok(true)
            })
        })
    }));
    out
}

fn roots_json(v: &[(LatticeRoot, usize)]) -> Value {
    Value::Array(v.iter().map(|(r, k)| json!([r.m, r.n, k])).collect())
}

/// The lattice factorization of `det R` in the canonical JSON shape used by
/// the golden files.
pub fn factors_json(n: usize, f: &DeterminantFactors) -> Value {
    json!({
        "degree": n,
        "numerator": roots_json(&f.numerator),
        "denominator": roots_json(&f.denominator),
        "leading": scalar_json(&f.leading),
    })
}

/// Block determinants of `R` by the `α^±` route, spot-checked against
/// direct evaluation, factored over `Z t1 + Z t2`, compared with golden
/// files when enabled.
pub fn determinants(ctx: &Ctx) -> Vec<Check> {
    let cap = ctx.cap(4);
    let computed = (|| -> Result<_, Error> {
        let p = ctx.at_rank(2)?;
        let minus = reflection_blocks(&p, cap)?;
        let full = full_r_blocks(&p, cap)?;
        let dets: Vec<RatFunc> = (0..=cap).map(|n| full_determinant(&minus, n)).collect();
        Ok((p, full, dets))
    })();
    let mut out = Vec::new();
    out.push(check("determinant_routes_agree", || {
        let (_, full, dets) = computed.as_ref().map_err(Error::clone)?;
        let mut failing = Vec::new();
        for (n, d) in dets.iter().enumerate() {
            for x in [Scalar::new(3, 7), Scalar::new(-11, 2)] {
                let direct = full[n].eval(&x).map(|m| m.determinant());
                if d.eval(&x) != direct {
                    failing.push(json!([n, x.to_ratio_string()]));
                }
            }
        }
        Ok((failing.is_empty(), json!({ "failing": failing })))
    }));
    let factors = computed.as_ref().map_err(Error::clone).and_then(|(p, _, dets)| {
        dets.iter()
            .enumerate()
            .map(|(n, d)| Ok(factors_json(n, &factor_over_lattice(d, p)?)))
            .collect::<Result<Vec<_>, Error>>()
    });
    out.push(check("determinant_lattice_factors", || {
        let fs = factors.as_ref().map_err(Error::clone)?;
        let (_, _, dets) = computed.as_ref().map_err(Error::clone)?;
        // numerator roots are the negated denominator roots, leading term 1
        let ok = dets.iter().all(|d| d.num().lead() == d.den().lead())
            && fs.iter().all(|f| {
                let neg: Vec<Value> = f["denominator"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|r| json!([-r[0].as_i64().unwrap(), -r[1].as_i64().unwrap(), r[2]]))
                    .collect();
                let mut neg = neg;
                neg.sort_by_key(|v| (v[0].as_i64(), v[1].as_i64()));
                Value::Array(neg) == f["numerator"]
            });
        Ok((ok, Value::Array(fs.clone())))
    }));
    if let Ok(fs) = &factors {
        let value = json!({ "degrees": fs });
        if let Some(res) = golden_check(&ctx.golden, DETERMINANT_GOLDEN, &value) {
            out.push(check("determinant_golden", || res));
        }
    }
    out
}

/// Yang–Baxter equation on `F^{⊗3}` at random points.
pub fn yangbaxter(ctx: &Ctx) -> Vec<Check> {
    let cap = ctx.cap(3);
    let blocks = blocks_for(ctx, cap);
    let mut rng = ctx.rng(0x7962);
    let mut points = Vec::new();
    if let Ok(bs) = &blocks {
        while points.len() < 5 {
            let (u, v) = (Ctx::random_scalar(&mut rng), Ctx::random_scalar(&mut rng));
            let uv = &u + &v;
            if let (Some(a), Some(b), Some(c)) = (eval_blocks(bs, &u), eval_blocks(bs, &v), eval_blocks(bs, &uv)) {
                points.push((u, v, a, b, c));
            }
        }
    }
    let mut out = Vec::new();
    if let Err(e) = &blocks {
        out.push(check("yang_baxter", || Err(e.clone())));
        return out;
    }
    for (i, (u, v, bu, bv, buv)) in points.iter().enumerate() {
        out.push(check(format!("yang_baxter_point{i}"), || {
            let mut failing = Vec::new();
            for d in 0..=cap {
                let l = r_on_triple(bu, 0, 1, d).mul(&r_on_triple(buv, 0, 2, d)).mul(&r_on_triple(bv, 1, 2, d));
                let r = r_on_triple(bv, 1, 2, d).mul(&r_on_triple(buv, 0, 2, d)).mul(&r_on_triple(bu, 0, 1, d));
                if l != r {
                    failing.push(d);
                }
            }
            let detail = json!({ "u": scalar_json(u), "v": scalar_json(v), "failing_degrees": failing });
            Ok((failing.is_empty(), detail))
        }));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suites::SuiteOptions;

    #[test]
    fn low_degree_suites_pass() {
        let ctx = Ctx::new(&SuiteOptions { seed: 2, degree_cap: Some(2), ..Default::default() }).unwrap();
        for c in
            rmatrix_core(&ctx).into_iter().chain(vacuum_gauss(&ctx)).chain(determinants(&ctx)).chain(yangbaxter(&ctx))
        {
            assert!(c.passed(), "{c:?}");
        }
    }
}
