//! Homogeneous symmetric functions in the power-sum, monomial and Schur
//! bases, Jack polynomials, and the dictionary with the rank-1 Fock space.
//!
//! Coefficients live in any [`Field`], so the same code runs at numeric
//! `(t1, t2)` and over `Q(x)` with `t1 = x, t2 = 1`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::fock::{FockVector, GradedOperator};
use crate::linalg::Matrix;
use crate::partitions::{partitions_of, MultiPartition, Partition};
use crate::scalar::{Field, Scalar, DEGREE_CAP};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    P,
    M,
    S,
}

/// A homogeneous symmetric function of a fixed degree.
#[derive(Clone, Debug, PartialEq)]
pub struct SymFunc<F> {
    pub basis: Basis,
    pub degree: usize,
    pub coeffs: BTreeMap<Partition, F>,
}

impl<F: Field> SymFunc<F> {
    pub fn zero(basis: Basis, degree: usize) -> Self {
        SymFunc { basis, degree, coeffs: BTreeMap::new() }
    }

    pub fn single(basis: Basis, lam: Partition, c: F) -> Self {
        let degree = lam.size();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(lam, c);
        }
        SymFunc { basis, degree, coeffs }
    }

    pub fn get(&self, lam: &Partition) -> F {
        self.coeffs.get(lam).cloned().unwrap_or_else(F::zero)
    }

    /// Coordinates against `partitions_of(degree)`.
    pub fn coords(&self) -> Vec<F> {
        partitions_of(self.degree).iter().map(|l| self.get(l)).collect()
    }

    pub fn from_coords(basis: Basis, degree: usize, c: &[F]) -> Self {
        let coeffs = partitions_of(degree)
            .into_iter()
            .zip(c)
            .filter(|(_, v)| !v.is_zero())
            .map(|(l, v)| (l, v.clone()))
            .collect();
        SymFunc { basis, degree, coeffs }
    }

    pub fn scale(&self, c: &F) -> Self {
        let v: Vec<F> = self.coords().iter().map(|x| x.mul(c)).collect();
        Self::from_coords(self.basis, self.degree, &v)
    }

    pub fn to_basis(&self, target: Basis) -> Self {
        if target == self.basis {
            return self.clone();
        }
        let m = transition(self.basis, target, self.degree).map(|x| F::from_scalar(x));
        let v = m.mul_vec(&self.coords());
        Self::from_coords(target, self.degree, &v)
    }
}

/// Columns are `p_μ` in the monomial basis, both indexed by
/// `partitions_of(n)`. Entry `(λ, μ)` counts the ways to distribute the
/// parts of `μ` into rows with sums `λ`.
pub fn p_to_m_matrix(n: usize) -> Matrix<Scalar> {
    let parts = partitions_of(n);
    Matrix::from_fn(parts.len(), parts.len(), |i, j| Scalar::from(fillings(parts[j].parts(), parts[i].parts()) as i64))
}

fn fillings(mu: &[usize], lam: &[usize]) -> u64 {
    fn rec(mu: &[usize], rem: &mut Vec<usize>) -> u64 {
        let Some((&first, rest)) = mu.split_first() else {
            return u64::from(rem.iter().all(|&x| x == 0));
        };
        let mut total = 0;
        for i in 0..rem.len() {
            if rem[i] >= first {
                rem[i] -= first;
                total += rec(rest, rem);
                rem[i] += first;
            }
        }
        total
    }
    rec(mu, &mut lam.to_vec())
}

/// Kostka numbers by semistandard tableau enumeration: entry `(μ, λ)` is
/// the number of SSYT of shape `λ` and content `μ`, so column `λ` is `s_λ`
/// in the monomial basis.
pub fn kostka_matrix(n: usize) -> Matrix<Scalar> {
    let parts = partitions_of(n);
    Matrix::from_fn(parts.len(), parts.len(), |i, j| Scalar::from(count_ssyt(&parts[j], &parts[i]) as i64))
}

fn count_ssyt(shape: &Partition, content: &Partition) -> u64 {
    // Fill letters 1, 2, … in turn; each letter occupies a horizontal strip.
    fn rec(current: Vec<usize>, shape: &[usize], content: &[usize]) -> u64 {
        let Some((&k, rest)) = content.split_first() else {
            return u64::from(current.as_slice() == shape);
        };
        let mut total = 0;
        let mut next = current.clone();
        strips(&current, shape, k, 0, &mut next, &mut |nxt| total += rec(nxt.to_vec(), shape, rest));
        total
    }
    fn strips(
        cur: &[usize],
        shape: &[usize],
        left: usize,
        row: usize,
        next: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if left == 0 {
            f(next);
            return;
        }
        if row >= shape.len() {
            return;
        }
        let upper_limit = if row == 0 { shape[0] } else { cur[row - 1].min(shape[row]) };
        let max_add = upper_limit.saturating_sub(cur[row]).min(left);
        for add in 0..=max_add {
            next[row] = cur[row] + add;
            strips(cur, shape, left - add, row + 1, next, f);
        }
        next[row] = cur[row];
    }
    let shape_v = shape.parts().to_vec();
    rec(vec![0; shape_v.len()], &shape_v, content.parts())
}

/// Matrix sending coordinates in `from` to coordinates in `to`.
pub fn transition(from: Basis, to: Basis, n: usize) -> Matrix<Scalar> {
    let p2m = p_to_m_matrix(n);
    let s2m = kostka_matrix(n);
    let to_m = |b: Basis| match b {
        Basis::P => p2m.clone(),
        Basis::M => Matrix::identity(p2m.rows()),
        Basis::S => s2m.clone(),
    };
    let from_m = to_m(to).inverse().expect("bases are bases");
    from_m.mul(&to_m(from))
}

/// `⟨p_λ, p_μ⟩ = δ z_λ α^{ℓ(λ)}`.
pub fn jack_inner_product<F: Field>(f: &SymFunc<F>, g: &SymFunc<F>, alpha: &F) -> Result<F, Error> {
    if f.degree != g.degree {
        return Err(Error::InvalidParams(format!("degrees {} and {} differ", f.degree, g.degree)));
    }
    let (fp, gp) = (f.to_basis(Basis::P), g.to_basis(Basis::P));
    let mut acc = F::zero();
    for (lam, c) in &fp.coeffs {
        let d = gp.get(lam);
        if d.is_zero() {
            continue;
        }
        let w = alpha.pow(lam.len() as u32).scale(&Scalar::from(lam.z() as i64));
        acc = acc.add(&c.mul(&d).mul(&w));
    }
    Ok(acc)
}

/// `∏_□ (t2 (l(□) + 1) - t1 a(□))`.
pub fn jack_leading<F: Field>(lam: &Partition, t1: &F, t2: &F) -> F {
    let mut c = F::one();
    for (i, j) in lam.boxes() {
        let (arm, leg, _) = lam.hook_data(i, j).expect("box of λ");
        let f = t2.scale(&Scalar::from(leg as i64 + 1)).sub(&t1.scale(&Scalar::from(arm as i64)));
        c = c.mul(&f);
    }
    c
}

/// The Jack polynomial `J_λ` for `α = -t1/t2` in the monomial basis.
pub fn jack_polynomial<F: Field>(lam: &Partition, t1: &F, t2: &F) -> Result<SymFunc<F>, Error> {
    let n = lam.size();
    if n > DEGREE_CAP {
        return Err(Error::OutOfRange(format!("|λ| = {n} > {DEGREE_CAP}")));
    }
    let alpha = t1.neg().div(t2).ok_or_else(|| Error::InvalidParams("t2 = 0".into()))?;
    let parts = partitions_of(n);
    let lower: Vec<usize> = (0..parts.len()).filter(|&i| parts[i] != *lam && lam.dominates(&parts[i])).collect();
    let top = parts.iter().position(|x| x == lam).unwrap();
    let gram = monomial_gram(n, &alpha);
    let lead = jack_leading(lam, t1, t2);
    let mut coeffs = vec![F::zero(); parts.len()];
    coeffs[top] = lead.clone();
    if !lower.is_empty() {
        // Σ_ν c_ν ⟨m_ν, m_μ⟩ = -lead ⟨m_λ, m_μ⟩ for all μ < λ
        let a = Matrix::from_fn(lower.len(), lower.len(), |i, j| gram.get(lower[i], lower[j]).clone());
        let b = Matrix::from_fn(lower.len(), 1, |i, _| gram.get(lower[i], top).mul(&lead).neg());
        let x = a.solve_right(&b).ok_or(Error::Singular)?;
        for (k, &idx) in lower.iter().enumerate() {
            coeffs[idx] = x.get(k, 0).clone();
        }
    }
    Ok(SymFunc::from_coords(Basis::M, n, &coeffs))
}

/// Gram matrix of the monomial basis for `⟨·,·⟩_α`.
pub fn monomial_gram<F: Field>(n: usize, alpha: &F) -> Matrix<F> {
    let parts = partitions_of(n);
    let m2p = transition(Basis::M, Basis::P, n).map(|x| F::from_scalar(x));
    let w: Vec<F> = parts.iter().map(|l| alpha.pow(l.len() as u32).scale(&Scalar::from(l.z() as i64))).collect();
    Matrix::from_fn(parts.len(), parts.len(), |a, b| {
        let mut acc = F::zero();
        for (k, wk) in w.iter().enumerate() {
            acc = acc.add(&m2p.get(k, a).mul(m2p.get(k, b)).mul(wk));
        }
        acc
    })
}

/// `s_λ` in the monomial basis.
pub fn schur_polynomial(lam: &Partition) -> Result<SymFunc<Scalar>, Error> {
    let n = lam.size();
    if n > DEGREE_CAP {
        return Err(Error::OutOfRange(format!("|λ| = {n} > {DEGREE_CAP}")));
    }
    Ok(SymFunc::single(Basis::S, lam.clone(), Scalar::from(1)).to_basis(Basis::M))
}

/// Rank-1 Fock vectors to symmetric functions via `α_{-k}(t1·1) ↦ p_k`, so
/// the `p_μ` coefficient is `t1^{-ℓ(μ)}` times the Fock coefficient.
pub fn fock_to_sym<F: Field>(v: &FockVector<F>, t1: &F) -> Result<Vec<SymFunc<F>>, Error> {
    if v.rank() != 1 {
        return Err(Error::InvalidParams(format!("dictionary needs rank 1, got {}", v.rank())));
    }
    let inv = t1.inv().ok_or_else(|| Error::InvalidParams("t1 = 0".into()))?;
    let mut by_degree: BTreeMap<usize, SymFunc<F>> = BTreeMap::new();
    for (mp, c) in v.iter() {
        let lam = mp.component(0).clone();
        let d = lam.size();
        let entry = by_degree.entry(d).or_insert_with(|| SymFunc::zero(Basis::P, d));
        entry.coeffs.insert(lam.clone(), c.mul(&inv.pow(lam.len() as u32)));
    }
    Ok(by_degree.into_values().collect())
}

/// Inverse of [`fock_to_sym`] on one homogeneous symmetric function.
pub fn sym_to_fock<F: Field>(f: &SymFunc<F>, t1: &F) -> FockVector<F> {
    let fp = f.to_basis(Basis::P);
    let mut v = FockVector::zero(1);
    for (lam, c) in &fp.coeffs {
        v.add_term(MultiPartition(vec![lam.clone()]), &c.mul(&t1.pow(lam.len() as u32)));
    }
    v
}

/// Dictionary image of a homogeneous rank-1 vector.
pub fn fock_dictionary<F: Field>(v: &FockVector<F>, t1: &F) -> Result<SymFunc<F>, Error> {
    let mut parts = fock_to_sym(v, t1)?;
    match parts.len() {
        0 => Ok(SymFunc::zero(Basis::P, 0)),
        1 => Ok(parts.remove(0)),
        _ => Err(Error::InvalidParams("dictionary needs a homogeneous vector".into())),
    }
}

/// For each `λ ⊢ n`, the eigenvalue of `op` on the Fock image of `J_λ`, or
/// `None` if that image is not an eigenvector.
pub fn jack_eigenvalues(
    op: &GradedOperator<Scalar>,
    n: usize,
    t1: &Scalar,
    t2: &Scalar,
) -> Result<Vec<(Partition, Option<Scalar>)>, Error> {
    let mut out = Vec::new();
    for lam in partitions_of(n) {
        let v = sym_to_fock(&jack_polynomial(&lam, t1, t2)?, t1);
        let w = op.apply(&v);
        let eps = v.iter().next().and_then(|(key, c)| c.inv().map(|inv| w.get(key).mul(&inv)));
        let eig = eps.filter(|e| w.sub(&v.scale(e)).is_zero());
        out.push((lam, eig));
    }
    Ok(out)
}

/// Coefficients of `J_λ / lead(λ)` in the Schur basis, rows `λ` and columns
/// `μ` in `partitions_of(n)` order.
pub fn schur_to_jack<F: Field>(n: usize, t1: &F, t2: &F) -> Result<Matrix<F>, Error> {
    let parts = partitions_of(n);
    let mut rows = Vec::with_capacity(parts.len());
    for lam in &parts {
        let lead = jack_leading(lam, t1, t2).inv().ok_or(Error::Singular)?;
        rows.push(jack_polynomial(lam, t1, t2)?.scale(&lead).to_basis(Basis::S).coords());
    }
    Ok(Matrix::from_rows(rows))
}

type JackKey = (Partition, String, String);

/// Memoized Jack polynomials at numeric `(t1, t2)`.
#[derive(Default)]
pub struct JackCache {
    inner: Mutex<HashMap<JackKey, SymFunc<Scalar>>>,
}

impl JackCache {
    pub fn get(&self, lam: &Partition, t1: &Scalar, t2: &Scalar) -> Result<SymFunc<Scalar>, Error> {
        let key = (lam.clone(), t1.to_ratio_string(), t2.to_ratio_string());
        if let Some(j) = self.inner.lock().unwrap().get(&key) {
            return Ok(j.clone());
        }
        let j = jack_polynomial(lam, t1, t2)?;
        self.inner.lock().unwrap().insert(key, j.clone());
        Ok(j)
    }
}
