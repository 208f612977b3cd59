//! Exact asymptotic coefficients of Barnes double gamma functions.
//!
//! Everything here is a truncated Laurent series in `z` with rational
//! coefficients; no gamma function is ever evaluated.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;

use crate::scalar::{Params, Scalar};
use crate::Error;

/// Largest `k` accepted by [`ch_coefficients`].
pub const CH_MAX: i64 = 6;
/// Largest order accepted by [`gamma_ratio_expansion`].
pub const RATIO_MAX: i64 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    pub coeffs: BTreeMap<i64, Scalar>,
    pub order: i64,
}

impl LaurentSeries {
    pub fn get(&self, k: i64) -> Scalar {
        self.coeffs.get(&k).cloned().unwrap_or_else(|| Scalar::from(0))
    }

    pub fn lowest(&self) -> Option<i64> {
        self.coeffs.iter().find(|(_, c)| !c.is_zero()).map(|(k, _)| *k)
    }

    fn from_vec(low: i64, v: &[Scalar], order: i64) -> Self {
        let coeffs =
            v.iter().enumerate().map(|(i, c)| (low + i as i64, c.clone())).filter(|(k, _)| *k <= order).collect();
        LaurentSeries { coeffs, order }
    }
}

// Power series helpers; vectors are coefficients of z^0, z^1, …

fn series_mul(a: &[Scalar], b: &[Scalar], len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::from(0); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn series_div(a: &[Scalar], b: &[Scalar], len: usize) -> Vec<Scalar> {
    let b0 = b[0].recip();
    let mut q: Vec<Scalar> = Vec::with_capacity(len);
    for n in 0..len {
        let mut acc = a.get(n).cloned().unwrap_or_else(|| Scalar::from(0));
        for (k, qk) in q.iter().enumerate() {
            if let Some(bn) = b.get(n - k) {
                acc -= qk * bn;
            }
        }
        q.push(acc * &b0);
    }
    q
}

fn factorial(n: usize) -> Scalar {
    Scalar::from_int((1..=n as u64).fold(BigInt::from(1), |acc, k| acc * k))
}

/// `e^{cz}` truncated to `len` terms.
fn exp_series(c: &Scalar, len: usize) -> Vec<Scalar> {
    (0..len).map(|n| c.powi(n as i32) / factorial(n)).collect()
}

/// `(1 - e^{-tz}) / z`.
fn one_minus_exp_over_z(t: &Scalar, len: usize) -> Vec<Scalar> {
    (0..len).map(|m| -(-t).powi(m as i32 + 1) / factorial(m + 1)).collect()
}

/// Bernoulli numbers with `B_1 = +1/2`, read off from `z/(1 - e^{-z})`.
pub fn bernoulli_plus(n_max: usize) -> Vec<Scalar> {
    let len = n_max + 1;
    let one = vec![Scalar::from(1)];
    let g = series_div(&one, &one_minus_exp_over_z(&Scalar::from(1), len), len);
    g.iter().enumerate().map(|(n, c)| c * factorial(n)).collect()
}

/// Bernoulli numbers from `Σ_{j≤m} C(m+1, j) B_j = 0`, which gives `B_1 = -1/2`.
pub fn bernoulli_recursive(n_max: usize) -> Vec<Scalar> {
    let mut b = vec![Scalar::from(1)];
    for m in 1..=n_max {
        let mut acc = Scalar::from(0);
        for (j, bj) in b.iter().enumerate() {
            acc += Scalar::from_int(binomial(BigInt::from(m + 1), BigInt::from(j))) * bj;
        }
        b.push(-acc / Scalar::from(m as i64 + 1));
    }
    b
}

/// Laurent coefficients of `e^{az} / ((1 - e^{-t1 z})(1 - e^{-t2 z}))` for
/// `-2 ≤ k ≤ k_max`, by power-series division.
pub fn ch_coefficients(t1: &Scalar, t2: &Scalar, a: &Scalar, k_max: i64) -> Result<LaurentSeries, Error> {
    check_ts(t1, t2)?;
    if !(-2..=CH_MAX).contains(&k_max) {
        return Err(Error::OutOfRange(format!("k_max = {k_max} outside [-2, {CH_MAX}]")));
    }
    let len = (k_max + 3) as usize;
    let den = series_mul(&one_minus_exp_over_z(t1, len), &one_minus_exp_over_z(t2, len), len);
    let q = series_div(&exp_series(a, len), &den, len);
    Ok(LaurentSeries::from_vec(-2, &q, k_max))
}

/// The same coefficients as [`ch_coefficients`] from the product of three
/// exponential generating series, `z/(1-e^{-z})` contributing `B_j^+`.
pub fn ch_coefficients_bernoulli(t1: &Scalar, t2: &Scalar, a: &Scalar, k_max: i64) -> Result<LaurentSeries, Error> {
    check_ts(t1, t2)?;
    if !(-2..=CH_MAX).contains(&k_max) {
        return Err(Error::OutOfRange(format!("k_max = {k_max} outside [-2, {CH_MAX}]")));
    }
    let top = (k_max + 2) as usize;
    let b = bernoulli_plus(top);
    let pref = (t1 * t2).recip();
    let mut coeffs = BTreeMap::new();
    for k in -2..=k_max {
        let total = (k + 2) as usize;
        let mut acc = Scalar::from(0);
        for i in 0..=total {
            for j in 0..=total - i {
                let l = total - i - j;
                acc += &b[i] * t1.powi(i as i32) / factorial(i) * &b[j] * t2.powi(j as i32) / factorial(j)
                    * a.powi(l as i32)
                    / factorial(l);
            }
        }
        coeffs.insert(k, acc * &pref);
    }
    Ok(LaurentSeries { coeffs, order: k_max })
}

fn check_ts(t1: &Scalar, t2: &Scalar) -> Result<(), Error> {
    if t1.is_zero() || t2.is_zero() {
        return Err(Error::InvalidParams("t1 and t2 must be nonzero".into()));
    }
    if (t1 + t2).is_zero() {
        return Err(Error::InvalidParams("t1 + t2 must be nonzero".into()));
    }
    Ok(())
}

/// Expansion of `(1/ħ) log[Γ(u-a | t1,t2) / Γ(u-a+t1+t2 | t1,t2)]` as
/// `u → ∞`. Key `-1` is the `ln^{(-1)} u` coefficient, key `0` the `ln u`
/// coefficient and key `k ≥ 1` the coefficient of `u^{-k}`.
pub fn gamma_ratio_expansion(t1: &Scalar, t2: &Scalar, a: &Scalar, order: i64) -> Result<LaurentSeries, Error> {
    check_ts(t1, t2)?;
    if !(0..=RATIO_MAX).contains(&order) {
        return Err(Error::OutOfRange(format!("order = {order} outside [0, {RATIO_MAX}]")));
    }
    let s = t1 + t2;
    let hbar = -&s;
    let len = (order + 3) as usize;
    let den = series_mul(&one_minus_exp_over_z(t1, len), &one_minus_exp_over_z(t2, len), len);
    // (1 - e^{-sz}) / z
    let num = series_mul(&exp_series(a, len), &one_minus_exp_over_z(&s, len), len);
    let g = series_div(&num, &den, len);
    let inv_h = hbar.recip();
    let mut coeffs = BTreeMap::new();
    for (i, gk) in g.iter().enumerate() {
        let k = i as i64 - 1;
        if k > order {
            break;
        }
        // ∂_s Γ(s+k)/(Γ(s) u^{s+k}) at s = 0 is (-1)^{k+1} ln^{(k)} u
        let sign = if (k + 1) % 2 == 0 { Scalar::from(1) } else { Scalar::from(-1) };
        let mut c = gk * &inv_h * sign;
        if k >= 1 {
            // ln^{(k)} u = (-1)^{k-1} (k-1)! u^{-k}
            let s2 = if (k - 1) % 2 == 0 { Scalar::from(1) } else { Scalar::from(-1) };
            c = c * s2 * factorial(k as usize - 1);
        }
        coeffs.insert(k, c);
    }
    Ok(LaurentSeries { coeffs, order })
}

/// Scalar prefactor `log Γ(u | w, w')` relating `R` to its normalized form.
pub fn r_hat_prefactor(p: &Params, order: i64) -> Result<LaurentSeries, Error> {
    let s = gamma_ratio_expansion(&p.t1, &p.t2, &Scalar::from(0), order)?;
    let h = p.hbar();
    Ok(LaurentSeries { coeffs: s.coeffs.into_iter().map(|(k, c)| (k, c * &h)).collect(), order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::sample_params;

    #[test]
    fn bernoulli_routes_agree() {
        let plus = bernoulli_plus(12);
        let rec = bernoulli_recursive(12);
        assert_eq!(plus[1], Scalar::new(1, 2));
        assert_eq!(rec[1], Scalar::new(-1, 2));
        for n in 0..=12 {
            if n != 1 {
                assert_eq!(plus[n], rec[n], "B_{n}");
            }
        }
        assert_eq!(rec[12], Scalar::new(-691, 2730));
    }

    #[test]
    fn ch_leading_terms() {
        let p = sample_params(61, 1).unwrap();
        let (t1, t2, a) = (&p.t1, &p.t2, &p.a[0]);
        let ch = ch_coefficients(t1, t2, a, 0).unwrap();
        let e = t1 * t2;
        assert_eq!(ch.get(-2), e.recip());
        assert_eq!(ch.get(-1), (a + (t1 + t2) * Scalar::new(1, 2)) / &e);
        let ch0 = ch_coefficients(t1, t2, &Scalar::from(0), 0).unwrap();
        assert_eq!(ch0.get(0), (t1 * t1 + Scalar::from(3) * &e + t2 * t2) / (Scalar::from(12) * &e));
    }

    #[test]
    fn ch_routes_agree() {
        for seed in 0..4 {
            let p = sample_params(seed, 1).unwrap();
            let a = ch_coefficients(&p.t1, &p.t2, &p.a[0], CH_MAX).unwrap();
            let b = ch_coefficients_bernoulli(&p.t1, &p.t2, &p.a[0], CH_MAX).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn ratio_singular_part() {
        let p = sample_params(62, 1).unwrap();
        let a = &p.a[0];
        let g = gamma_ratio_expansion(&p.t1, &p.t2, a, RATIO_MAX).unwrap();
        assert_eq!(g.lowest(), Some(-1));
        assert_eq!(g.get(-1), p.tau1());
        assert_eq!(g.get(0), -(a * p.tau1()));
    }

    #[test]
    fn duality_flips_signs() {
        let p = sample_params(63, 1).unwrap();
        let (t1, t2, a) = (&p.t1, &p.t2, &p.a[0]);
        let ch = ch_coefficients(t1, t2, a, CH_MAX).unwrap();
        let dual = ch_coefficients(&-t1.clone(), &-t2.clone(), &-a.clone(), CH_MAX).unwrap();
        for k in -2..=CH_MAX {
            let sign = if k.rem_euclid(2) == 0 { Scalar::from(1) } else { Scalar::from(-1) };
            assert_eq!(dual.get(k), ch.get(k) * sign);
        }
        // the ratio also flips ħ, and every basis element absorbs one more sign
        let g = gamma_ratio_expansion(t1, t2, a, RATIO_MAX).unwrap();
        let gd = gamma_ratio_expansion(&-t1.clone(), &-t2.clone(), &-a.clone(), RATIO_MAX).unwrap();
        for k in -1..=RATIO_MAX {
            let sign = if k.rem_euclid(2) == 0 { Scalar::from(-1) } else { Scalar::from(1) };
            assert_eq!(gd.get(k), g.get(k) * sign, "k = {k}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        let one = Scalar::from(1);
        assert!(ch_coefficients(&one, &one, &one, 7).is_err());
        assert!(ch_coefficients(&Scalar::from(0), &one, &one, 0).is_err());
        assert!(gamma_ratio_expansion(&one, &-one.clone(), &one, 2).is_err());
    }
}
