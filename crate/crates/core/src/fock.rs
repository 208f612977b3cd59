//! The graded Fock space `F(a_1) ⊗ … ⊗ F(a_r)`.
//!
//! Each factor is a polynomial ring in `p_1, p_2, …`; a basis monomial
//! `p_λ` is labelled by the partition `λ`. For `k > 0` the creation mode
//! `α_{-k}(1)` multiplies by `p_k` and the annihilation mode `α_k(γ)` acts as
//! `k τ(γ) ∂/∂p_k`. Zero modes are scalars and never touch the basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::linalg::Matrix;
use crate::partitions::{multipartitions_of, MultiPartition, Partition};
use crate::scalar::{Field, Params, Scalar, DEGREE_CAP};
use crate::Error;

/// A cohomology class of the plane, stored as its multiple of the unit
/// (`pt = t1 t2 · 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Insertion(pub Scalar);

impl Insertion {
    pub fn one() -> Self {
        Insertion(Scalar::from(1))
    }

    pub fn pt(p: &Params) -> Self {
        Insertion(&p.t1 * &p.t2)
    }

    /// `τ(γ) = -ins(γ)/(t1 t2)`.
    pub fn tau(&self, p: &Params) -> Scalar {
        &self.0 * &p.tau1()
    }
}

/// A finite sparse combination of basis monomials.
#[derive(Clone, PartialEq)]
pub struct FockVector<F> {
    rank: usize,
    terms: BTreeMap<MultiPartition, F>,
}

impl<F: Field> FockVector<F> {
    pub fn zero(rank: usize) -> Self {
        FockVector { rank, terms: BTreeMap::new() }
    }

    pub fn basis(mp: MultiPartition) -> Self {
        let rank = mp.rank();
        let mut terms = BTreeMap::new();
        terms.insert(mp, F::one());
        FockVector { rank, terms }
    }

    pub fn vacuum(rank: usize) -> Self {
        Self::basis(MultiPartition::vacuum(rank))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, mp: &MultiPartition) -> F {
        self.terms.get(mp).cloned().unwrap_or_else(F::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiPartition, &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mp: MultiPartition, c: &F) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(mp.rank(), self.rank);
        match self.terms.get_mut(&mp) {
            Some(v) => {
                let s = v.add(c);
                if s.is_zero() {
                    self.terms.remove(&mp);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(mp, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FockVector<F>, c: &F) {
        if c.is_zero() {
            return;
        }
        for (mp, v) in &other.terms {
            self.add_term(mp.clone(), &v.mul(c));
        }
    }

    pub fn add(&self, other: &FockVector<F>) -> FockVector<F> {
        let mut out = self.clone();
        out.add_scaled(other, &F::one());
        out
    }

    pub fn sub(&self, other: &FockVector<F>) -> FockVector<F> {
        let mut out = self.clone();
        out.add_scaled(other, &F::one().neg());
        out
    }

    pub fn scale(&self, c: &F) -> FockVector<F> {
        let mut out = FockVector::zero(self.rank);
        out.add_scaled(self, c);
        out
    }

    /// Coefficients against a basis list.
    pub fn coords(&self, basis: &[MultiPartition]) -> Vec<F> {
        basis.iter().map(|b| self.get(b)).collect()
    }

    pub fn from_coords(basis: &[MultiPartition], c: &[F]) -> Self {
        let rank = basis.first().map_or(1, MultiPartition::rank);
        let mut out = FockVector::zero(rank);
        for (b, v) in basis.iter().zip(c) {
            out.add_term(b.clone(), v);
        }
        out
    }
}

impl<F: Field> fmt::Debug for FockVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, v)| format!("({v})·{k}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

type Action<F> = dyn Fn(&MultiPartition) -> FockVector<F> + Send + Sync;

/// A linear map between Fock spaces shifting degree by a fixed amount,
/// defined by its action on basis monomials.
#[derive(Clone)]
pub struct GradedOperator<F> {
    pub rank_in: usize,
    pub rank_out: usize,
    pub degree_shift: i64,
    action: Arc<Action<F>>,
}

impl<F: Field> GradedOperator<F> {
    pub fn new(
        rank_in: usize,
        rank_out: usize,
        degree_shift: i64,
        action: impl Fn(&MultiPartition) -> FockVector<F> + Send + Sync + 'static,
    ) -> Self {
        GradedOperator { rank_in, rank_out, degree_shift, action: Arc::new(action) }
    }

    pub fn identity(rank: usize) -> Self {
        Self::new(rank, rank, 0, |mp| FockVector::basis(mp.clone()))
    }

    pub fn zero(rank_in: usize, rank_out: usize, shift: i64) -> Self {
        Self::new(rank_in, rank_out, shift, move |_| FockVector::zero(rank_out))
    }

    pub fn scalar(rank: usize, c: F) -> Self {
        Self::new(rank, rank, 0, move |mp| FockVector::basis(mp.clone()).scale(&c))
    }

    /// The same operator, caching the image of each basis monomial.
    pub fn memoized(&self) -> Self
    where
        F: Send + Sync + 'static,
    {
        let inner = self.clone();
        let cache: Mutex<HashMap<MultiPartition, FockVector<F>>> = Mutex::new(HashMap::new());
        Self::new(self.rank_in, self.rank_out, self.degree_shift, move |mp| {
            if let Some(v) = cache.lock().unwrap().get(mp) {
                return v.clone();
            }
            let v = inner.apply_basis(mp);
            cache.lock().unwrap().insert(mp.clone(), v.clone());
            v
        })
    }

    pub fn apply_basis(&self, mp: &MultiPartition) -> FockVector<F> {
        if self.degree_shift < 0 && (mp.degree() as i64) < -self.degree_shift {
            return FockVector::zero(self.rank_out);
        }
        (self.action)(mp)
    }

    pub fn apply(&self, v: &FockVector<F>) -> FockVector<F> {
        let mut out = FockVector::zero(self.rank_out);
        for (mp, c) in v.iter() {
            out.add_scaled(&self.apply_basis(mp), c);
        }
        out
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &GradedOperator<F>) -> GradedOperator<F> {
        assert_eq!(self.rank_in, rhs.rank_out, "rank mismatch in composition");
        let (a, b) = (self.clone(), rhs.clone());
        GradedOperator::new(rhs.rank_in, self.rank_out, self.degree_shift + rhs.degree_shift, move |mp| {
            a.apply(&b.apply_basis(mp))
        })
    }

    pub fn add(&self, rhs: &GradedOperator<F>) -> GradedOperator<F> {
        self.lincomb(&F::one(), rhs, &F::one())
    }

    pub fn sub(&self, rhs: &GradedOperator<F>) -> GradedOperator<F> {
        self.lincomb(&F::one(), rhs, &F::one().neg())
    }

    pub fn scale(&self, c: &F) -> GradedOperator<F> {
        let (a, c) = (self.clone(), c.clone());
        GradedOperator::new(self.rank_in, self.rank_out, self.degree_shift, move |mp| a.apply_basis(mp).scale(&c))
    }

    /// `x·self + y·rhs`.
    pub fn lincomb(&self, x: &F, rhs: &GradedOperator<F>, y: &F) -> GradedOperator<F> {
        assert_eq!(self.degree_shift, rhs.degree_shift, "degree mismatch in sum");
        assert_eq!((self.rank_in, self.rank_out), (rhs.rank_in, rhs.rank_out));
        let (a, b, x, y) = (self.clone(), rhs.clone(), x.clone(), y.clone());
        GradedOperator::new(self.rank_in, self.rank_out, self.degree_shift, move |mp| {
            let mut v = a.apply_basis(mp).scale(&x);
            v.add_scaled(&b.apply_basis(mp), &y);
            v
        })
    }

    /// `[self, rhs]`.
    pub fn commutator(&self, rhs: &GradedOperator<F>) -> GradedOperator<F> {
        self.compose(rhs).sub(&rhs.compose(self))
    }

    pub fn sum(ops: &[GradedOperator<F>]) -> GradedOperator<F> {
        let first = ops.first().expect("empty operator sum").clone();
        ops[1..].iter().fold(first, |acc, o| acc.add(o))
    }
}

/// The canonical basis of the degree-`n` piece of the rank-`r` Fock space.
pub fn basis(n: usize, r: usize) -> Vec<MultiPartition> {
    multipartitions_of(n, r)
}

/// Matrix of `op` on the degree-`n` block, columns indexed by the input
/// basis and rows by the output basis, both in canonical order.
pub fn operator_matrix<F: Field>(op: &GradedOperator<F>, n: usize) -> Result<Matrix<F>, Error> {
    let out_deg = n as i64 + op.degree_shift;
    if out_deg < 0 {
        return Err(Error::OutOfRange(format!("degree {n} shifted by {} is negative", op.degree_shift)));
    }
    let cols = basis(n, op.rank_in);
    let rows = basis(out_deg as usize, op.rank_out);
    let mut m = Matrix::zeros(rows.len(), cols.len());
    let index: BTreeMap<&MultiPartition, usize> = rows.iter().enumerate().map(|(i, b)| (b, i)).collect();
    for (j, b) in cols.iter().enumerate() {
        for (mp, c) in op.apply_basis(b).iter() {
            let i = *index.get(mp).unwrap_or_else(|| panic!("operator produced {mp} outside degree {out_deg}"));
            m.set(i, j, c.clone());
        }
    }
    Ok(m)
}

/// The operator with a given matrix on each degree block `0..=max_degree`
/// (degree-preserving). Basis vectors above `max_degree` map to zero.
pub fn operator_from_blocks<F: Field>(rank: usize, blocks: Vec<Matrix<F>>) -> GradedOperator<F> {
    let bases: Vec<Vec<MultiPartition>> = (0..blocks.len()).map(|n| basis(n, rank)).collect();
    GradedOperator::new(rank, rank, 0, move |mp| {
        let n = mp.degree();
        let mut out = FockVector::zero(rank);
        if n >= blocks.len() {
            return out;
        }
        let j = bases[n].iter().position(|b| b == mp).expect("basis lookup");
        for (i, b) in bases[n].iter().enumerate() {
            out.add_term(b.clone(), blocks[n].get(i, j));
        }
        out
    })
}

// ---------------------------------------------------------------------------
// Mode monomials

/// Creation and annihilation modes of one normally ordered monomial
/// `∏ α_{-k}(1) · ∏ α_l(1)`, each listed as `(factor, k)` with `k > 0`.
pub type ModeKey = (Vec<(usize, usize)>, Vec<(usize, usize)>);

/// A finite sum of normally ordered mode monomials with unit insertions,
/// for Heisenberg factors with pairing `[α_k(1), α_{-k}(1)] = k·tau1`.
#[derive(Clone, Debug)]
pub struct ModeOperator<F> {
    pub rank: usize,
    pub tau1: Scalar,
    pub terms: BTreeMap<ModeKey, F>,
}

impl<F: Field> ModeOperator<F> {
    pub fn new(rank: usize, tau1: Scalar) -> Self {
        ModeOperator { rank, tau1, terms: BTreeMap::new() }
    }

    pub fn push(&mut self, coeff: F, mut create: Vec<(usize, usize)>, mut annihilate: Vec<(usize, usize)>) {
        if coeff.is_zero() {
            return;
        }
        create.sort_unstable();
        annihilate.sort_unstable();
        let key = (create, annihilate);
        let v = match self.terms.remove(&key) {
            Some(old) => old.add(&coeff),
            None => coeff,
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }

    pub fn extend(&mut self, other: &ModeOperator<F>, c: &F) {
        assert_eq!(self.rank, other.rank);
        assert_eq!(self.tau1, other.tau1);
        for ((cr, an), v) in &other.terms {
            self.push(v.mul(c), cr.clone(), an.clone());
        }
    }

    /// Degree shift, if every term agrees.
    pub fn degree_shift(&self) -> Option<i64> {
        let mut it = self
            .terms
            .keys()
            .map(|(cr, an)| cr.iter().map(|x| x.1 as i64).sum::<i64>() - an.iter().map(|x| x.1 as i64).sum::<i64>());
        let first = it.next()?;
        if it.all(|s| s == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Applies one monomial to a basis vector.
    pub fn apply_term(&self, key: &ModeKey, coeff: &F, mp: &MultiPartition) -> Option<(F, MultiPartition)> {
        let (create, annihilate) = key;
        let mut comps: Vec<Partition> = mp.0.clone();
        let mut c = Scalar::from(1);
        for &(i, k) in annihilate {
            let m = comps[i].multiplicity(k);
            if m == 0 {
                return None;
            }
            c = c * Scalar::from((k * m) as i64) * &self.tau1;
            comps[i] = comps[i].without_part(k).unwrap();
        }
        for &(i, k) in create {
            comps[i] = comps[i].with_part(k);
        }
        Some((coeff.scale(&c), MultiPartition(comps)))
    }

    pub fn apply_basis(&self, mp: &MultiPartition) -> FockVector<F> {
        let deg = mp.degree();
        let mut out = FockVector::zero(self.rank);
        for (key, coeff) in &self.terms {
            if key.1.iter().map(|x| x.1).sum::<usize>() > deg {
                continue;
            }
            if let Some((c, m)) = self.apply_term(key, coeff, mp) {
                out.add_term(m, &c);
            }
        }
        out
    }

    /// Wraps as a [`GradedOperator`]; an empty sum becomes the zero map
    /// with the given fallback shift.
    pub fn to_operator(&self, fallback_shift: i64) -> GradedOperator<F> {
        let shift = self.degree_shift().unwrap_or_else(|| {
            assert!(self.terms.is_empty(), "mode operator is not homogeneous");
            fallback_shift
        });
        let me = self.clone();
        GradedOperator::new(self.rank, self.rank, shift, move |mp| me.apply_basis(mp))
    }
}

// ---------------------------------------------------------------------------
// Heisenberg action on the geometric Fock space

/// `α^{(i)}_n(γ)` for `n ≠ 0` on the rank-`r` Fock space.
pub fn alpha(p: &Params, r: usize, factor: usize, n: i64, gamma: &Insertion) -> Result<GradedOperator<Scalar>, Error> {
    if n == 0 {
        return Err(Error::OutOfRange("zero modes act as scalars; use zero_mode".into()));
    }
    if factor >= r {
        return Err(Error::OutOfRange(format!("factor {factor} >= rank {r}")));
    }
    if n.unsigned_abs() as usize > DEGREE_CAP {
        return Err(Error::OutOfRange(format!("|mode| {n} > {DEGREE_CAP}")));
    }
    let mut op = ModeOperator::new(r, p.tau1());
    let k = n.unsigned_abs() as usize;
    if n < 0 {
        op.push(gamma.0.clone(), vec![(factor, k)], vec![]);
    } else {
        op.push(gamma.0.clone(), vec![], vec![(factor, k)]);
    }
    Ok(op.to_operator(-n))
}

/// Applies `α^{(i)}_n(γ)` to a vector.
pub fn apply_alpha(
    p: &Params,
    factor: usize,
    n: i64,
    gamma: &Insertion,
    v: &FockVector<Scalar>,
) -> Result<FockVector<Scalar>, Error> {
    Ok(alpha(p, v.rank(), factor, n, gamma)?.apply(v))
}

/// The scalar by which `α^{(i)}_0(γ)` acts on `F(a_i)`: `-τ(γ a_i)`.
pub fn zero_mode(p: &Params, factor: usize, gamma: &Insertion) -> Scalar {
    -(&gamma.0 * &p.a[factor] * p.tau1())
}

/// `α^±_n(γ) = α^{(1)}_n(γ) ± α^{(2)}_n(γ)` on the rank-2 space.
pub fn alpha_pm(p: &Params, sign: i64, n: i64, gamma: &Insertion) -> Result<GradedOperator<Scalar>, Error> {
    let a = alpha(p, 2, 0, n, gamma)?;
    let b = alpha(p, 2, 1, n, gamma)?;
    Ok(a.lincomb(&Scalar::from(1), &b, &Scalar::from(sign)))
}

/// Basis of the degree-`n` piece of `F⊗F` by monomials in `α^+_{-k}` and
/// `α^-_{-k}` applied to the vacuum, labelled by pairs `(μ, ν)` of the
/// `α^+` and `α^-` exponents, in canonical order.
pub fn pm_basis(n: usize) -> Vec<MultiPartition> {
    basis(n, 2)
}

/// Expansion of `∏ α^+_{-μ_i} ∏ α^-_{-ν_j} vac` in the pair-of-partitions
/// basis.
pub fn pm_monomial(label: &MultiPartition) -> FockVector<Scalar> {
    let mut v = FockVector::vacuum(2);
    for (which, sign) in [(0usize, 1i64), (1, -1)] {
        for &k in label.component(which).parts() {
            let mut next = FockVector::zero(2);
            for (mp, c) in v.iter() {
                next.add_term(mp.replace(0, mp.component(0).with_part(k)), c);
                next.add_term(mp.replace(1, mp.component(1).with_part(k)), &(c * Scalar::from(sign)));
            }
            v = next;
        }
    }
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmDirection {
    /// Coordinates in the `α^±` monomial basis from pair-of-partitions
    /// coordinates.
    ToPm,
    /// The inverse: columns are the `α^±` monomials expanded in pairs.
    FromPm,
}

/// Change of basis between pairs of partitions and `α^±` monomials at
/// degree `n`.
pub fn pm_change_of_basis(n: usize, direction: PmDirection) -> Matrix<Scalar> {
    let pairs = basis(n, 2);
    let labels = pm_basis(n);
    let from = Matrix::from_fn(pairs.len(), labels.len(), |_, _| Scalar::from(0));
    let mut from = from;
    for (j, l) in labels.iter().enumerate() {
        let v = pm_monomial(l);
        for (i, b) in pairs.iter().enumerate() {
            from.set(i, j, v.get(b));
        }
    }
    match direction {
        PmDirection::FromPm => from,
        PmDirection::ToPm => from.inverse().expect("α± monomials form a basis"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::sample_params;

    fn mp1(parts: &[usize]) -> MultiPartition {
        MultiPartition(vec![Partition::new(parts.to_vec())])
    }

    #[test]
    fn creation_on_vacuum() {
        let p = sample_params(1, 1).unwrap();
        let v = apply_alpha(&p, 0, -1, &Insertion::one(), &FockVector::vacuum(1)).unwrap();
        assert_eq!(v, FockVector::basis(mp1(&[1])));
    }

    #[test]
    fn annihilation_with_point_insertion() {
        let p = sample_params(1, 1).unwrap();
        let v = apply_alpha(&p, 0, 1, &Insertion::pt(&p), &FockVector::basis(mp1(&[1]))).unwrap();
        assert_eq!(v, FockVector::vacuum(1).scale(&Scalar::from(-1)));
    }

    #[test]
    fn alpha2_on_p1p2() {
        let p = sample_params(2, 1).unwrap();
        let v = apply_alpha(&p, 0, 2, &Insertion::one(), &FockVector::basis(mp1(&[2, 1]))).unwrap();
        let expect = Scalar::from(-2) / (&p.t1 * &p.t2);
        assert_eq!(v, FockVector::basis(mp1(&[1])).scale(&expect));
    }

    #[test]
    fn zero_mode_values() {
        let mut p = sample_params(3, 1).unwrap();
        p.a[0] = Scalar::from(3);
        assert_eq!(zero_mode(&p, 0, &Insertion::pt(&p)), Scalar::from(3));
        p.a[0] = Scalar::from(0);
        assert_eq!(zero_mode(&p, 0, &Insertion::one()), Scalar::from(0));
        p.a[0] = &p.t1 * &p.t2;
        assert_eq!(zero_mode(&p, 0, &Insertion::one()), Scalar::from(1));
    }

    #[test]
    fn nonzero_mode_required() {
        let p = sample_params(3, 1).unwrap();
        assert!(alpha(&p, 1, 0, 0, &Insertion::one()).is_err());
    }

    #[test]
    fn pm_change_small_degrees() {
        assert!(pm_change_of_basis(0, PmDirection::ToPm).is_identity());
        let m = pm_change_of_basis(1, PmDirection::FromPm);
        // Pair basis (p1⊗1, 1⊗p1); α± monomials (α^+_{-1}, α^-_{-1}).
        let expect =
            Matrix::from_rows(vec![vec![Scalar::from(1), Scalar::from(1)], vec![Scalar::from(1), Scalar::from(-1)]]);
        assert_eq!(m, expect);
    }

    #[test]
    fn pm_change_degree3_determinant_is_power_of_two() {
        let m = pm_change_of_basis(3, PmDirection::FromPm);
        assert_eq!(m.rows(), 10);
        let d = m.determinant().abs();
        assert!(d.is_integer());
        let mut x = d.to_i64().unwrap();
        assert!(x > 0);
        while x % 2 == 0 {
            x /= 2;
        }
        assert_eq!(x, 1);
        let inv = pm_change_of_basis(3, PmDirection::ToPm);
        assert!(m.mul(&inv).is_identity());
    }

    #[test]
    fn operator_matrix_of_identity_and_creation() {
        let p = sample_params(1, 1).unwrap();
        let id = GradedOperator::<Scalar>::identity(2);
        assert!(operator_matrix(&id, 3).unwrap().is_identity());
        let a = alpha(&p, 1, 0, -1, &Insertion::one()).unwrap();
        let m = operator_matrix(&a, 0).unwrap();
        assert_eq!(m, Matrix::from_rows(vec![vec![Scalar::from(1)]]));
    }
}
