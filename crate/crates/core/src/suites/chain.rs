//! Spin-chain and gamma-function suites.

use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{check, golden_check, matrix_json, scalar_json, Check, Ctx};
use crate::gamma::{
    bernoulli_plus, bernoulli_recursive, ch_coefficients, ch_coefficients_bernoulli, gamma_ratio_expansion, CH_MAX,
    RATIO_MAX,
};
use crate::grassmann::{
    baxter_coefficient, baxter_simple_spectrum, classical_r, classical_r_formula, diagonal, ef_operator, embed_pair,
    flip21, flop_top_coefficient, mukai_flop, off_diagonal, restrict, sector, stab_tp1, tp1_quantum_residual,
    tp1_steinberg_part, transfer_matrix, yang_r, yang_r_symbolic, Chamber, TwistMatrix,
};
use crate::linalg::Matrix;
use crate::scalar::{Field, RatFunc, Scalar};
use crate::Error;

pub const TP1_RESIDUAL_GOLDEN: &str = "tp1_residual.json";

fn nonzero(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let x = Ctx::random_scalar(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

fn sign(k: i64) -> Scalar {
    Scalar::from(if k.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// The XXX chain: commuting transfer matrices, Yang–Baxter, the classical
/// r-matrix, the `T*P¹` quantum divisor and the Mukai flop.
pub fn grassmann(ctx: &Ctx) -> Vec<Check> {
    let mut out = Vec::new();
    let setup = || -> Result<(Vec<Scalar>, Scalar), Error> {
        let p = ctx.at_rank(4)?;
        Ok((p.a.clone(), p.hbar()))
    };
    out.push(check("baxter_commutativity", || {
        let (a, h) = setup()?;
        let mut rng = ctx.rng(0x6261);
        let g = TwistMatrix::new(nonzero(&mut rng), nonzero(&mut rng))?;
        let mut points = Vec::new();
        let mut ok = true;
        for n in 1..=4 {
            let mut found = 0;
            while found < 5 {
                let (u1, u2) = (Ctx::random_scalar(&mut rng), Ctx::random_scalar(&mut rng));
                let (Ok(x), Ok(y)) = (transfer_matrix(&g, &u1, &a[..n], &h), transfer_matrix(&g, &u2, &a[..n], &h))
                else {
                    continue;
                };
                ok &= x.commutator(&y).is_zero();
                points.push(json!([n, scalar_json(&u1), scalar_json(&u2)]));
                found += 1;
            }
        }
        Ok((ok, json!({ "g": [scalar_json(&g.g0), scalar_json(&g.g1)], "points": points })))
    }));
    out.push(check("weight_preservation", || {
        let (a, h) = setup()?;
        let g = TwistMatrix::q(ctx.base.q.clone())?;
        let mut ok = true;
        for n in 1..=4 {
            let t = transfer_matrix(&g, &RatFunc::u(), &a[..n], &h)?;
            for s in 0..1usize << n {
                for r in 0..1usize << n {
                    if s.count_ones() != r.count_ones() {
                        ok &= t.get(s, r).is_zero();
                    }
                }
            }
        }
        Ok((ok, Value::Null))
    }));
    out.push(check("baxter_coefficients_commute", || {
        let (a, h) = setup()?;
        let g = TwistMatrix::q(ctx.base.q.clone())?;
        let mut ok = true;
        for n in 1..=4 {
            let es = (0..=3).map(|k| baxter_coefficient(&g, k, &a[..n], &h)).collect::<Result<Vec<_>, _>>()?;
            ok &= off_diagonal(&es[0]).is_zero();
            for x in &es {
                for y in &es {
                    ok &= x.commutator(y).is_zero();
                }
            }
        }
        Ok((ok, Value::Null))
    }));
    out.push(check("yang_baxter_yang_r", || {
        let (_, h) = setup()?;
        let mut rng = ctx.rng(0x7962_7972);
        let mut points = Vec::new();
        let mut ok = true;
        while points.len() < 5 {
            let (u, v) = (Ctx::random_scalar(&mut rng), Ctx::random_scalar(&mut rng));
            let (Ok(a), Ok(b), Ok(c)) = (yang_r(&u, &h), yang_r(&(&u + &v), &h), yang_r(&v, &h)) else {
                continue;
            };
            let (r12, r13, r23) = (embed_pair(&a, 0, 1, 3), embed_pair(&b, 0, 2, 3), embed_pair(&c, 1, 2, 3));
            ok &= r12.mul(&r13).mul(&r23) == r23.mul(&r13).mul(&r12);
            points.push(json!([scalar_json(&u), scalar_json(&v)]));
        }
        Ok((ok, json!({ "points": points })))
    }));
    out.push(check("classical_r_matrix", || {
        let (_, h) = setup()?;
        let r = classical_r(&h);
        Ok((r == classical_r_formula() && flip21(&r) == r, json!({ "r": matrix_json(&r) })))
    }));
    out.push(check("stable_envelope_ratio_is_r", || {
        let (_, h) = setup()?;
        let ratio = stab_tp1(Chamber::Minus, &h).inverse().ok_or(Error::Singular)?.mul(&stab_tp1(Chamber::Plus, &h));
        Ok((ratio == yang_r_symbolic(&Scalar::from(0), &h).submatrix(&[1, 2], &[1, 2]), Value::Null))
    }));
    out.push(check("transfer_matrix_small_chains", || {
        let (a, h) = setup()?;
        let mut rng = ctx.rng(0x746d);
        let g = TwistMatrix::new(nonzero(&mut rng), nonzero(&mut rng))?;
        let t0 = transfer_matrix(&g, &RatFunc::u(), &[], &h)?;
        let empty = t0.rows() == 1 && *t0.get(0, 0) == RatFunc::constant(g.trace());
        let t1 = transfer_matrix(&g, &RatFunc::u(), &a[..1], &h)?;
        let limit = t1.coeff_at_infinity(0) == Matrix::identity(2).scale(&g.trace());
        // g0 + g1 + ħ/(u - a1 - ħ) diag(g1, g0)
        let c = RatFunc::constant(h.clone())
            .div(&RatFunc::u().sub(&RatFunc::constant(&a[0] + &h)))
            .ok_or(Error::Singular)?;
        let tr = RatFunc::constant(g.trace());
        let z = RatFunc::zero();
        let hand = Matrix::from_rows(vec![vec![tr.add(&c.scale(&g.g1)), z.clone()], vec![z, tr.add(&c.scale(&g.g0))]]);
        Ok((empty && limit && t1 == hand, Value::Null))
    }));
    let qs = || -> Vec<Scalar> {
        let mut rng = ctx.rng(0x7170);
        let mut v = vec![ctx.base.q.clone()];
        while v.len() < 3 {
            let q = nonzero(&mut rng);
            if q != Scalar::from(1) && !v.contains(&q) {
                v.push(q);
            }
        }
        v
    };
    out.push(check("tp1_quantum_match_mod_diagonal", || {
        let (a, h) = setup()?;
        let mut residuals = Vec::new();
        let mut ok = true;
        for q in qs() {
            let res = tp1_quantum_residual(&a[..2], &h, &q)?;
            ok &= off_diagonal(&res).is_zero() && res.get(0, 0) == res.get(1, 1);
            residuals.push(
                json!({ "q": scalar_json(&q), "diagonal": diagonal(&res).iter().map(scalar_json).collect::<Vec<_>>() }),
            );
        }
        Ok((ok, json!({ "residuals": residuals })))
    }));
    out.push(check("steinberg_part_is_q_independent", || {
        let (a, h) = setup()?;
        let parts = qs().iter().map(|q| tp1_steinberg_part(&a[..2], &h, q)).collect::<Result<Vec<_>, _>>()?;
        let expect = off_diagonal(&restrict(&ef_operator(2), &sector(2, 1))).scale(&h);
        Ok((parts.iter().all(|m| *m == expect), json!({ "part": matrix_json(&parts[0]) })))
    }));
    if let Some(res) = tp1_golden(ctx) {
        out.push(check("tp1_residual_golden", || res));
    }
    out.push(check("baxter_simple_spectrum", || {
        let (a, h) = setup()?;
        let g = TwistMatrix::q(ctx.base.q.clone())?;
        let mut ok = true;
        for n in 2..=3 {
            ok &= baxter_simple_spectrum(&g, &a[..n], &h)?;
        }
        Ok((ok, json!({ "q": scalar_json(&g.g0) })))
    }));
    out.push(check("mukai_flop", || {
        let mut ok = true;
        for n in 1..=4 {
            let f = mukai_flop(n);
            let idx: Vec<usize> = (1..=n).collect();
            ok &= f.mul(&f).submatrix(&idx, &idx).is_identity();
            for i in 1..=n {
                ok &= flop_top_coefficient(i) == -sign(i as i64);
            }
        }
        Ok((ok, Value::Null))
    }));
    out
}

/// The residual diagonal of the `T*P¹` match at fixed parameters.
pub fn tp1_residual_value() -> Result<Value, Error> {
    let h = Scalar::new(1, 3);
    let a = [Scalar::new(1, 5), Scalar::new(-2, 7)];
    let q = Scalar::new(2, 7);
    let res = tp1_quantum_residual(&a, &h, &q)?;
    Ok(json!({
        "hbar": scalar_json(&h),
        "a": a.iter().map(scalar_json).collect::<Vec<_>>(),
        "q": scalar_json(&q),
        "residual_diagonal": diagonal(&res).iter().map(scalar_json).collect::<Vec<_>>(),
    }))
}

fn tp1_golden(ctx: &Ctx) -> Option<Result<(bool, Value), Error>> {
    match tp1_residual_value() {
        Ok(v) => golden_check(&ctx.golden, TP1_RESIDUAL_GOLDEN, &v),
        Err(e) => Some(Err(e)),
    }
}

/// Asymptotics of the double gamma ratio and the Chern character
/// coefficients behind it.
pub fn gamma(ctx: &Ctx) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(check("ratio_singular_terms", || {
        let p = &ctx.base;
        let mut ok = true;
        for a in &p.a {
            let g = gamma_ratio_expansion(&p.t1, &p.t2, a, RATIO_MAX)?;
            ok &= g.lowest() == Some(-1) && g.get(-1) == p.tau1() && g.get(0) == -(a * p.tau1());
        }
        let at_zero = gamma_ratio_expansion(&p.t1, &p.t2, &Scalar::from(0), RATIO_MAX)?;
        let detail = json!({
            "tau1": scalar_json(&p.tau1()),
            "inverse_u_coefficient_at_a0": scalar_json(&at_zero.get(1)),
        });
        Ok((ok, detail))
    }));
    out.push(check("ch_leading_terms", || {
        let p = &ctx.base;
        let e = &p.t1 * &p.t2;
        let mut ok = true;
        for a in &p.a {
            let ch = ch_coefficients(&p.t1, &p.t2, a, 0)?;
            ok &= ch.get(-2) == e.recip() && ch.get(-1) == (a + (&p.t1 + &p.t2) * Scalar::new(1, 2)) / &e;
        }
        Ok((ok, Value::Null))
    }));
    out.push(check("ch_routes_agree", || {
        let p = &ctx.base;
        let mut ok = true;
        let mut series = Vec::new();
        for a in &p.a {
            let x = ch_coefficients(&p.t1, &p.t2, a, CH_MAX)?;
            ok &= x == ch_coefficients_bernoulli(&p.t1, &p.t2, a, CH_MAX)?;
            series.push(x.coeffs.values().map(scalar_json).collect::<Vec<_>>());
        }
        Ok((ok, json!({ "k_range": [-2, CH_MAX], "coefficients": series })))
    }));
    out.push(check("bernoulli_cross_check", || {
        let (plus, rec) = (bernoulli_plus(12), bernoulli_recursive(12));
        let ok = plus[1] == Scalar::new(1, 2) && (0..=12).filter(|n| *n != 1).all(|n| plus[n] == rec[n]);
        Ok((ok, json!({ "bernoulli_plus": plus.iter().map(scalar_json).collect::<Vec<_>>() })))
    }));
    out.push(check("duality", || {
        let p = &ctx.base;
        let (t1, t2) = (&p.t1, &p.t2);
        let (mt1, mt2) = (-t1.clone(), -t2.clone());
        let mut ok = true;
        for a in &p.a {
            let ma = -a.clone();
            let ch = ch_coefficients(t1, t2, a, CH_MAX)?;
            let dual = ch_coefficients(&mt1, &mt2, &ma, CH_MAX)?;
            ok &= (-2..=CH_MAX).all(|k| dual.get(k) == ch.get(k) * sign(k));
            let g = gamma_ratio_expansion(t1, t2, a, RATIO_MAX)?;
            let gd = gamma_ratio_expansion(&mt1, &mt2, &ma, RATIO_MAX)?;
            ok &= (-1..=RATIO_MAX).all(|k| gd.get(k) == -(g.get(k) * sign(k)));
        }
        Ok((ok, Value::Null))
    }));
    out
}
