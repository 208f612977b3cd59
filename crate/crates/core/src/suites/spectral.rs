//! Jack polynomials, quantum multiplication and its spectrum.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::{check, scalar_json, Check, Ctx};
use crate::fock::{basis, operator_matrix, FockVector, GradedOperator};
use crate::linalg::Matrix;
use crate::partitions::{partitions_of, MultiPartition, Partition};
use crate::rmatrix::full_r_blocks;
use crate::scalar::{sample_params, Field, Params, RatFunc, Scalar};
use crate::symfunc::{
    jack_eigenvalues, jack_inner_product, jack_leading, jack_polynomial, schur_polynomial, schur_to_jack,
};
use crate::vertexops::{lehn_operator, q_classical, q_quantum, q_zero_derivation, spectrum_matrix, ChamberOrder};
use crate::Error;

/// Lehn eigenvectors against Jack polynomials, Schur degeneration and the
/// Schur-to-Jack transition modulo `ħ`.
pub fn jack(ctx: &Ctx) -> Vec<Check> {
    let cap = ctx.cap(6);
    let mut out = Vec::new();
    out.push(check("lehn_eigenvectors_are_jacks", || {
        let p = ctx.at_rank(1)?;
        let op = lehn_operator(&p, &p.a[0]);
        let mut eig = serde_json::Map::new();
        let mut ok = true;
        for n in 1..=cap {
            for (lam, e) in jack_eigenvalues(&op, n, &p.t1, &p.t2)? {
                ok &= e.is_some();
                eig.insert(lam.to_string(), e.as_ref().map_or(Value::Null, scalar_json));
            }
        }
        Ok((ok, json!({ "eigenvalues": eig })))
    }));
    out.push(check("jack_orthogonal_triangular", || {
        let p = ctx.at_rank(1)?;
        let alpha = -(&p.t1 / &p.t2);
        let mut failing = Vec::new();
        for n in 1..=cap {
            let parts = partitions_of(n);
            let js = parts.iter().map(|l| jack_polynomial(l, &p.t1, &p.t2)).collect::<Result<Vec<_>, _>>()?;
            for (a, ja) in parts.iter().zip(&js) {
                let triangular = ja.coeffs.keys().all(|mu| a.dominates(mu));
                let leading = ja.get(a) == jack_leading(a, &p.t1, &p.t2);
                let mut orthogonal = true;
                for (b, jb) in parts.iter().zip(&js) {
                    if a < b {
                        orthogonal &= jack_inner_product(ja, jb, &alpha)?.is_zero();
                    }
                }
                if !(triangular && leading && orthogonal) {
                    failing.push(a.to_string());
                }
            }
        }
        Ok((failing.is_empty(), json!({ "failing": failing })))
    }));
    out.push(check("schur_degeneration", || {
        let t = ctx.at_rank(1)?.t1;
        let mt = -t.clone();
        let mut failing = Vec::new();
        for n in 1..=cap {
            for lam in partitions_of(n) {
                let j = jack_polynomial(&lam, &t, &mt)?;
                let lead = jack_leading(&lam, &t, &mt).inv().ok_or(Error::Singular)?;
                if j.scale(&lead) != schur_polynomial(&lam)? {
                    failing.push(lam.to_string());
                }
            }
        }
        Ok((failing.is_empty(), json!({ "failing": failing })))
    }));
    out.push(check("schur_to_jack_unitriangular_mod_hbar", || {
        // symbolic in x = t1 with t2 = 1, so ħ = -(x + 1)
        let (x, one) = (RatFunc::u(), RatFunc::one());
        let mut failing = Vec::new();
        for n in 1..=cap {
            let parts = partitions_of(n);
            let t = schur_to_jack(n, &x, &one)?;
            for (i, a) in parts.iter().enumerate() {
                for (j, b) in parts.iter().enumerate() {
                    let e = t.get(i, j);
                    let ok = if i == j {
                        e.is_one()
                    } else if !a.dominates(b) {
                        e.is_zero()
                    } else {
                        e.eval(&Scalar::from(-1)) == Some(Scalar::from(0))
                    };
                    if !ok {
                        failing.push(json!([a.to_string(), b.to_string()]));
                    }
                }
            }
        }
        Ok((failing.is_empty(), json!({ "failing": failing })))
    }));
    out
}

/// Quantum multiplication: its `q = 0` limit, the rank-one quantum part
/// on `p_1^n`, and chamber conjugation by `R`.
pub fn quantum(ctx: &Ctx) -> Vec<Check> {
    let cap = ctx.cap(3);
    let mut out = Vec::new();
    for r in 1..=ctx.max_rank {
        out.push(check(format!("q_zero_is_classical_rank{r}"), || {
            let p = ctx.at_rank(r)?.with_q(Scalar::from(0));
            let ch = ChamberOrder::standard(r);
            let (qq, qc) = (q_quantum(&p, &ch)?, q_classical(&p, &ch)?);
            let mut failing = Vec::new();
            for n in 0..=cap {
                if operator_matrix(&qq, n)? != operator_matrix(&qc, n)? {
                    failing.push(n);
                }
            }
            Ok((failing.is_empty(), json!({ "failing_degrees": failing })))
        }));
    }
    out.push(check("rank1_quantum_part_kills_p1_powers", || {
        let p = ctx.at_rank(1)?;
        let ch = ChamberOrder::standard(1);
        let quantum = q_quantum(&p, &ch)?.sub(&q_quantum(&p.with_q(Scalar::from(0)), &ch)?);
        let mut failing = Vec::new();
        for n in 0..=6usize {
            let v = FockVector::<Scalar>::basis(MultiPartition(vec![Partition::new(vec![1; n])]));
            if !quantum.apply(&v).is_zero() {
                failing.push(n);
            }
        }
        Ok((failing.is_empty(), json!({ "q": scalar_json(&p.q), "failing": failing })))
    }));
    out.push(check("chamber_conjugation_rank2", || {
        let p = ctx.at_rank(2)?;
        let blocks = full_r_blocks(&p, cap)?;
        let q_std = q_classical(&p, &ChamberOrder::standard(2))?;
        let q_rev = q_classical(&p, &ChamberOrder::reversed(2))?;
        let mut failing = Vec::new();
        for (n, b) in blocks.iter().enumerate() {
            let ru = b.eval(&p.u()).ok_or(Error::Singular)?;
            if ru.mul(&operator_matrix(&q_std, n)?) != operator_matrix(&q_rev, n)?.mul(&ru) {
                failing.push(n);
            }
        }
        Ok((failing.is_empty(), json!({ "u": scalar_json(&p.u()), "failing_degrees": failing })))
    }));
    out
}

/// A truncated series in `x` and `y`.
type Bivariate = Vec<Vec<Scalar>>;

fn biv_zero(nx: usize, ny: usize) -> Bivariate {
    vec![vec![Scalar::from(0); ny + 1]; nx + 1]
}

fn biv_mul(a: &Bivariate, b: &Bivariate) -> Bivariate {
    let (nx, ny) = (a.len() - 1, a[0].len() - 1);
    let mut c = biv_zero(nx, ny);
    for i in 0..=nx {
        for j in 0..=ny {
            if a[i][j].is_zero() {
                continue;
            }
            for k in 0..=nx - i {
                for l in 0..=ny - j {
                    let t = &a[i][j] * &b[k][l];
                    c[i + k][j + l] += &t;
                }
            }
        }
    }
    c
}

fn factorials(n: usize) -> Vec<Scalar> {
    let mut f = vec![Scalar::from(1)];
    for j in 1..=n {
        let next = &f[j - 1] * &Scalar::from(j as i64);
        f.push(next);
    }
    f
}

/// `[y^j] tr_{Sym^m V} e^{yA}` for `j ≤ ny`, from the power traces of `A`
/// through `h_m = [x^m] exp(Σ_k x^k p_k / k)` with `p_k = tr e^{kyA}`.
fn sym_power_trace_series(a: &Matrix<Scalar>, m: usize, ny: usize) -> Vec<Scalar> {
    let fact = factorials(ny);
    let mut pw = Matrix::<Scalar>::identity(a.rows());
    let mut traces = Vec::with_capacity(ny + 1);
    for _ in 0..=ny {
        traces.push(pw.trace());
        pw = pw.mul(a);
    }
    let mut f = biv_zero(m, ny);
    for k in 1..=m {
        let ks = Scalar::from(k as i64);
        for j in 0..=ny {
            f[k][j] = ks.powi(j as i32) / &fact[j] / &ks * &traces[j];
        }
    }
    let mut total = biv_zero(m, ny);
    total[0][0] = Scalar::from(1);
    let mut term = total.clone();
    for i in 1..=m {
        term = biv_mul(&term, &f);
        let inv = Scalar::new(1, i as i64);
        for (row, t) in total.iter_mut().zip(term.iter_mut()) {
            for (c, x) in row.iter_mut().zip(t.iter_mut()) {
                *x *= &inv;
                *c += &*x;
            }
        }
    }
    total.swap_remove(m)
}

fn series_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut c = vec![Scalar::from(0); a.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(a.len() - i) {
            c[i + j] += &(x * y);
        }
    }
    c
}

/// The partition of all parts of `mp`, forgetting which factor they sit in.
fn uncolored(mp: &MultiPartition) -> Partition {
    Partition::new(mp.0.iter().flat_map(|p| p.parts().iter().copied()).collect())
}

/// Compares `Q_0` on degree `n` with the additive prediction from the
/// `A_k`. `Q_0` preserves the uncolored partition `λ`, and its block there
/// is `⊗_k Sym^{m_k(λ)} A_k`; matching `tr B^j` for `j ≤ dim B` fixes the
/// eigenvalue multiset of each block. Returns the failing blocks.
fn additivity_failures(p: &Params, q0: &GradedOperator<Scalar>, n: usize) -> Result<Vec<Value>, Error> {
    let m = operator_matrix(q0, n)?;
    let b = basis(n, p.a.len());
    let mut blocks: BTreeMap<Partition, Vec<usize>> = BTreeMap::new();
    for (i, mp) in b.iter().enumerate() {
        blocks.entry(uncolored(mp)).or_default().push(i);
    }
    let mut failing = Vec::new();
    for (lam, idx) in &blocks {
        let outside: Vec<usize> = (0..b.len()).filter(|i| !idx.contains(i)).collect();
        if !m.submatrix(&outside, idx).is_zero() {
            failing.push(json!({ "block": lam.to_string(), "reason": "not invariant" }));
            continue;
        }
        let blk = m.submatrix(idx, idx);
        let dim = idx.len();
        let mut predicted = vec![Scalar::from(0); dim + 1];
        predicted[0] = Scalar::from(1);
        for k in 1..=n {
            let mult = lam.multiplicity(k);
            if mult > 0 {
                predicted = series_mul(&predicted, &sym_power_trace_series(&spectrum_matrix(p, k)?, mult, dim));
            }
        }
        let fact = factorials(dim);
        let mut pw = Matrix::<Scalar>::identity(dim);
        for j in 0..=dim {
            if pw.trace() != &predicted[j] * &fact[j] {
                failing.push(json!({ "block": lam.to_string(), "power": j }));
                break;
            }
            pw = pw.mul(&blk);
        }
    }
    Ok(failing)
}

/// Additivity of the spectrum of `Q_0` and simplicity of the spectrum of
/// quantum multiplication.
pub fn spectrum(ctx: &Ctx) -> Vec<Check> {
    let cap = ctx.cap(5);
    let mut out = Vec::new();
    for r in 1..=ctx.max_rank {
        out.push(check(format!("q0_eigenvalue_additivity_rank{r}"), || {
            let p = ctx.at_rank(r)?;
            let q0 = q_zero_derivation(&p)?;
            let mut failing = Vec::new();
            for n in 0..=cap {
                failing.extend(additivity_failures(&p, &q0, n)?);
            }
            Ok((failing.is_empty(), json!({ "max_degree": cap, "failing": failing })))
        }));
    }
    for i in 0..5u64 {
        out.push(check(format!("simple_spectrum_seed{i}"), || {
            let seed = ctx.seed.wrapping_add(i);
            let mut dims = Vec::new();
            let mut ok = true;
            for r in 1..=ctx.max_rank {
                let mut p = sample_params(seed, r)?;
                p.q = ctx.base.q.clone();
                p.validate()?;
                let qq = q_quantum(&p, &ChamberOrder::standard(r))?;
                for n in 0..=4usize.min(cap) {
                    let m = operator_matrix(&qq, n)?;
                    dims.push(json!([r, n, m.rows()]));
                    ok &= m.has_squarefree_charpoly();
                }
            }
            Ok((ok, json!({ "seed": seed, "rank_degree_dim": dims })))
        }));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suites::SuiteOptions;

    #[test]
    fn sym_cube_dimension() {
        let a = Matrix::<Scalar>::identity(3);
        // dim Sym^3 C^3 = 10, all eigenvalues 3
        let s = sym_power_trace_series(&a, 3, 2);
        assert_eq!(s, vec![Scalar::from(10), Scalar::from(30), Scalar::from(45)]);
    }

    #[test]
    fn sym_power_traces_of_a_diagonal_matrix() {
        // A = diag(1, 2): Sym^2 has eigenvalues 2, 3, 4
        let a = Matrix::from_rows(vec![vec![Scalar::from(1), Scalar::from(0)], vec![Scalar::from(0), Scalar::from(2)]]);
        let s = sym_power_trace_series(&a, 2, 3);
        let fact = factorials(3);
        for (j, c) in s.iter().enumerate() {
            let want: i64 = [2i64, 3, 4].iter().map(|e| e.pow(j as u32)).sum();
            assert_eq!(c * &fact[j], Scalar::from(want));
        }
    }

    #[test]
    fn additivity_detects_a_perturbed_operator() {
        let p = sample_params(3, 2).unwrap();
        let q0 = q_zero_derivation(&p).unwrap();
        assert!(additivity_failures(&p, &q0, 3).unwrap().is_empty());
        let shifted = q0.add(&GradedOperator::scalar(2, Scalar::new(1, 5)));
        assert!(!additivity_failures(&p, &shifted, 3).unwrap().is_empty());
    }

    #[test]
    fn uncolored_partition_merges_factors() {
        let mp = MultiPartition(vec![Partition::new(vec![2, 1]), Partition::new(vec![3, 1])]);
        assert_eq!(uncolored(&mp), Partition::new(vec![3, 2, 1, 1]));
    }

    #[test]
    fn low_degree_suites_pass() {
        let ctx =
            Ctx::new(&SuiteOptions { seed: 6, degree_cap: Some(2), rank: Some(2), ..Default::default() }).unwrap();
        for c in jack(&ctx).into_iter().chain(quantum(&ctx)).chain(spectrum(&ctx)) {
            assert!(c.passed(), "{c:?}");
        }
    }
}
