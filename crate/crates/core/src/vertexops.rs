//! Normally ordered charges of the Heisenberg fields and the divisor
//! operators assembled from them.
//!
//! A charge `∫ z^m :W_1(F_1) ⋯ W_k(F_k): (g·1)` is expanded through the
//! iterated coproduct `(g·1)^{Δk} = g e^{k-1} (1 ⊗ ⋯ ⊗ 1)` into a finite sum
//! of normally ordered mode monomials. Each slot carries a field (a linear
//! combination of the `α^{(i)}`) and a derivative weight.

use crate::fock::{GradedOperator, ModeOperator};
use crate::linalg::Matrix;
use crate::partitions::MultiPartition;
use crate::scalar::{Field, Params, Scalar, DEGREE_CAP};
use crate::{Error, FockVector};

/// Weight applied to mode `α_n` in one slot of a charge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Plain,
    /// `∂`, contributing `-n`.
    Deriv,
    /// `|∂|`, contributing `|n|`.
    AbsDeriv,
}

impl Slot {
    fn weight(self, n: i64) -> i64 {
        match self {
            Slot::Plain => 1,
            Slot::Deriv => -n,
            Slot::AbsDeriv => n.abs(),
        }
    }
}

/// A charge of a product of fields with insertion `g·1`.
#[derive(Clone, Debug)]
pub struct Charge<F> {
    pub rank: usize,
    /// Pairing `τ(1)` of every factor.
    pub tau1: Scalar,
    /// The handle-gluing element of the coproduct.
    pub e: Scalar,
    pub insertion: Scalar,
    /// Total mode `m`; the charge shifts degree by `-m`.
    pub mode: i64,
    pub slots: Vec<(Slot, Vec<Scalar>)>,
    /// `α^{(i)}_0(1)` for each factor; `None` drops zero modes altogether.
    pub zero_modes: Option<Vec<F>>,
    /// Largest input degree on which the truncated expansion is exact.
    pub reach: usize,
}

impl<F: Field> Charge<F> {
    pub fn new(rank: usize, tau1: Scalar, e: Scalar) -> Self {
        Charge {
            rank,
            tau1,
            e,
            insertion: Scalar::from(1),
            mode: 0,
            slots: Vec::new(),
            zero_modes: None,
            reach: DEGREE_CAP,
        }
    }

    pub fn slot(mut self, w: Slot, field: Vec<Scalar>) -> Self {
        assert_eq!(field.len(), self.rank, "field length must equal rank");
        self.slots.push((w, field));
        self
    }

    pub fn insertion(mut self, g: Scalar) -> Self {
        self.insertion = g;
        self
    }

    pub fn mode(mut self, m: i64) -> Self {
        self.mode = m;
        self
    }

    pub fn reach(mut self, d: usize) -> Self {
        self.reach = d;
        self
    }

    pub fn zero_modes(mut self, z: Vec<F>) -> Self {
        assert_eq!(z.len(), self.rank);
        self.zero_modes = Some(z);
        self
    }

    /// Expands into mode monomials. Monomials whose annihilation part
    /// exceeds `reach` never act on the truncated space and are dropped.
    pub fn build(&self) -> ModeOperator<F> {
        let k = self.slots.len();
        let mut out = ModeOperator::new(self.rank, self.tau1.clone());
        if k == 0 || self.insertion.is_zero() {
            return out;
        }
        let base = &self.insertion * self.e.powi(k as i32 - 1);
        let bound = self.reach as i64 + self.mode.abs();
        let mut tuple = vec![0i64; k];
        self.enumerate(0, 0, &mut tuple, bound, &base, &mut out);
        out
    }

    fn enumerate(
        &self,
        idx: usize,
        sum: i64,
        tuple: &mut Vec<i64>,
        bound: i64,
        base: &Scalar,
        out: &mut ModeOperator<F>,
    ) {
        let k = tuple.len();
        let range: Vec<i64> = if idx + 1 == k { vec![self.mode - sum] } else { (-bound..=bound).collect() };
        for a in range {
            if a.abs() > bound || (a == 0 && self.zero_modes.is_none()) {
                continue;
            }
            tuple[idx] = a;
            let ann: i64 = tuple[..=idx].iter().filter(|&&x| x > 0).sum();
            let cre: i64 = -tuple[..=idx].iter().filter(|&&x| x < 0).sum::<i64>();
            if ann > self.reach as i64 || cre > bound {
                continue;
            }
            if idx + 1 < k {
                self.enumerate(idx + 1, sum + a, tuple, bound, base, out);
            } else {
                self.emit(tuple, base, out);
            }
        }
    }

    fn emit(&self, tuple: &[i64], base: &Scalar, out: &mut ModeOperator<F>) {
        let w: i64 = tuple.iter().zip(&self.slots).map(|(&a, (s, _))| s.weight(a)).product();
        if w == 0 {
            return;
        }
        let c0 = F::from_scalar(&(base * Scalar::from(w)));
        let mut partial: Vec<(F, Vec<(usize, usize)>, Vec<(usize, usize)>)> = vec![(c0, Vec::new(), Vec::new())];
        for (&a, (_, field)) in tuple.iter().zip(&self.slots) {
            let mut next = Vec::new();
            if a == 0 {
                let z = self.zero_modes.as_ref().expect("zero mode without values");
                let mut s = F::zero();
                for (f, zi) in field.iter().zip(z) {
                    s = s.add(&zi.scale(f));
                }
                if s.is_zero() {
                    return;
                }
                for (c, cr, an) in partial {
                    next.push((c.mul(&s), cr, an));
                }
            } else {
                for (c, cr, an) in &partial {
                    for (i, f) in field.iter().enumerate() {
                        if f.is_zero() {
                            continue;
                        }
                        let (mut cr, mut an) = (cr.clone(), an.clone());
                        if a < 0 {
                            cr.push((i, (-a) as usize));
                        } else {
                            an.push((i, a as usize));
                        }
                        next.push((c.scale(f), cr, an));
                    }
                }
            }
            partial = next;
        }
        for (c, cr, an) in partial {
            out.push(c, cr, an);
        }
    }
}

/// Unit vector `α^{(i)}` as a field.
pub fn unit_field(r: usize, i: usize) -> Vec<Scalar> {
    (0..r).map(|j| Scalar::from(i64::from(i == j))).collect()
}

/// `β = Σ_i α^{(i)}`.
pub fn beta_field(r: usize) -> Vec<Scalar> {
    vec![Scalar::from(1); r]
}

/// `α^- = α^{(1)} - α^{(2)}`.
pub fn minus_field() -> Vec<Scalar> {
    vec![Scalar::from(1), Scalar::from(-1)]
}

fn geometric<F: Field>(p: &Params, r: usize) -> Charge<F> {
    Charge::new(r, p.tau1(), p.e())
}

/// Zero modes `α^{(i)}_0(1) = -a_i τ(1)` of the geometric Fock space.
pub fn geometric_zero_modes(p: &Params) -> Vec<Scalar> {
    p.a.iter().map(|a| -(a * p.tau1())).collect()
}

fn factorial(n: usize) -> Scalar {
    Scalar::from((1..=n as i64).product::<i64>())
}

/// Mode expansion of `Φ_n = (1/n!) ∫ :F^n: (1)` without zero modes.
pub fn phi_n_modes(p: &Params, n: usize, field: &[Scalar]) -> Result<ModeOperator<Scalar>, Error> {
    if !(2..=3).contains(&n) {
        return Err(Error::OutOfRange(format!("Φ_n is defined here for n in {{2,3}}, got {n}")));
    }
    let mut c = geometric::<Scalar>(p, field.len());
    for _ in 0..n {
        c = c.slot(Slot::Plain, field.to_vec());
    }
    let mut m = ModeOperator::new(field.len(), p.tau1());
    m.extend(&c.build(), &factorial(n).recip());
    Ok(m)
}

pub fn phi_n(p: &Params, n: usize, field: &[Scalar]) -> Result<GradedOperator<Scalar>, Error> {
    Ok(phi_n_modes(p, n, field)?.to_operator(0))
}

/// `Σ_{(i,j,c)} c Σ_{n>0} n α^{(i)}_{-n} α^{(j)}_n (1^Δ)`.
pub fn omega_modes(p: &Params, r: usize, pairs: &[(usize, usize, Scalar)]) -> Result<ModeOperator<Scalar>, Error> {
    let mut m = ModeOperator::new(r, p.tau1());
    for (i, j, c) in pairs {
        if *i >= r || *j >= r {
            return Err(Error::OutOfRange(format!("Ω index ({i},{j}) outside rank {r}")));
        }
        for n in 1..=DEGREE_CAP {
            m.push(c * Scalar::from(n) * p.e(), vec![(*i, n)], vec![(*j, n)]);
        }
    }
    Ok(m)
}

pub fn omega(p: &Params, r: usize, pairs: &[(usize, usize, Scalar)]) -> Result<GradedOperator<Scalar>, Error> {
    Ok(omega_modes(p, r, pairs)?.to_operator(0))
}

/// Cup product by `c_1(O(1))` on the Hilbert schemes of points:
/// `-Φ_3 + (a - ħ/2) Φ_2 + (ħ/2) Ω`.
pub fn lehn_operator(p: &Params, a: &Scalar) -> GradedOperator<Scalar> {
    lehn_modes(p, a).to_operator(0)
}

pub fn lehn_modes(p: &Params, a: &Scalar) -> ModeOperator<Scalar> {
    let f = unit_field(1, 0);
    let half_h = p.hbar() * Scalar::new(1, 2);
    let mut m = ModeOperator::new(1, p.tau1());
    m.extend(&phi_n_modes(p, 3, &f).unwrap(), &Scalar::from(-1));
    m.extend(&phi_n_modes(p, 2, &f).unwrap(), &(a - &half_h));
    m.extend(&omega_modes(p, 1, &[(0, 0, Scalar::from(1))]).unwrap(), &half_h);
    m
}

/// The chamber `a_{σ(1)} > … > a_{σ(r)}`, stored as the 0-based list σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberOrder(Vec<usize>);

impl ChamberOrder {
    pub fn new(perm: Vec<usize>) -> Result<Self, Error> {
        let mut seen = vec![false; perm.len()];
        for &i in &perm {
            if i >= perm.len() || seen[i] {
                return Err(Error::InvalidParams(format!("{perm:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(ChamberOrder(perm))
    }

    pub fn standard(r: usize) -> Self {
        ChamberOrder((0..r).collect())
    }

    pub fn reversed(r: usize) -> Self {
        ChamberOrder((0..r).rev().collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.0
    }

    fn position(&self, i: usize) -> usize {
        self.0.iter().position(|&x| x == i).unwrap()
    }

    /// `ϱ(i, j)`: 1 if `a_i > a_j` in the chamber, 1/2 on the diagonal, 0 otherwise.
    pub fn rho(&self, i: usize, j: usize) -> Scalar {
        use std::cmp::Ordering::*;
        match self.position(i).cmp(&self.position(j)) {
            Less => Scalar::from(1),
            Equal => Scalar::new(1, 2),
            Greater => Scalar::from(0),
        }
    }
}

fn check_rank(p: &Params, chamber: &ChamberOrder) -> Result<usize, Error> {
    let r = p.rank();
    if chamber.rank() != r {
        return Err(Error::InvalidParams(format!("chamber of rank {} for {r} framing weights", chamber.rank())));
    }
    Ok(r)
}

/// The classical divisor operator in the stable basis of `chamber`.
pub fn q_classical_modes(p: &Params, chamber: &ChamberOrder) -> Result<ModeOperator<Scalar>, Error> {
    let r = check_rank(p, chamber)?;
    let h = p.hbar();
    let half_h = &h * Scalar::new(1, 2);
    let mut m = ModeOperator::new(r, p.tau1());
    for i in 0..r {
        let f = unit_field(r, i);
        m.extend(&phi_n_modes(p, 3, &f)?, &Scalar::from(-1));
        m.extend(&phi_n_modes(p, 2, &f)?, &(&p.a[i] - &half_h));
    }
    let mut pairs = Vec::new();
    for i in 0..r {
        for j in 0..r {
            let rho = chamber.rho(i, j);
            if !rho.is_zero() {
                pairs.push((j, i, &h * rho));
            }
        }
    }
    m.extend(&omega_modes(p, r, &pairs)?, &Scalar::from(1));
    Ok(m)
}

pub fn q_classical(p: &Params, chamber: &ChamberOrder) -> Result<GradedOperator<Scalar>, Error> {
    Ok(q_classical_modes(p, chamber)?.to_operator(0))
}

fn check_q(q: &Scalar) -> Result<(), Error> {
    for n in 1..=DEGREE_CAP as i32 {
        if q.powi(n) == Scalar::from(1) {
            return Err(Error::InvalidParams(format!("q = {q} satisfies q^{n} = 1")));
        }
    }
    Ok(())
}

/// The modified quantum multiplication written directly in the
/// `α_{-k}(1)`, `α_k(pt)` generators: cubic, quadratic and purely quantum
/// parts, plus the scalar correction for `r = 1`. Uses `p.q`.
///
/// The quadratic diagonal coefficient is `a_i + (t1+t2)(1-n)/2`; this is
/// the form that reduces to the classical operator at `q = 0`.
pub fn q_quantum_modes(p: &Params, chamber: &ChamberOrder) -> Result<ModeOperator<Scalar>, Error> {
    let r = check_rank(p, chamber)?;
    check_q(&p.q)?;
    let pt = &p.t1 * &p.t2;
    let s = &p.t1 + &p.t2;
    let half = Scalar::new(1, 2);
    let cap = DEGREE_CAP;
    let mut m = ModeOperator::new(r, p.tau1());
    // α_k(pt) = t1 t2 α_k(1)
    for i in 0..r {
        for n in 1..cap {
            for k in 1..=cap - n {
                let c = -(&half * &pt * &pt);
                m.push(c.clone(), vec![(i, n), (i, k)], vec![(i, n + k)]);
                m.push(c, vec![(i, n + k)], vec![(i, n), (i, k)]);
            }
        }
        for n in 1..=cap {
            let w = &p.a[i] + &s * Scalar::new(1 - n as i64, 2);
            m.push(-(w * &pt), vec![(i, n)], vec![(i, n)]);
        }
    }
    for i in 0..r {
        for j in 0..r {
            if i != j && chamber.rho(i, j) == Scalar::from(1) {
                for n in 1..=cap {
                    m.push(&s * Scalar::from(n) * &pt, vec![(j, n)], vec![(i, n)]);
                }
            }
        }
    }
    for n in 1..=cap {
        let qn = p.q.powi(n as i32);
        let c = &s * Scalar::from(n) * &qn / (Scalar::from(1) - &qn) * &pt;
        for i in 0..r {
            for j in 0..r {
                m.push(c.clone(), vec![(i, n)], vec![(j, n)]);
            }
        }
    }
    if r == 1 {
        let c = -(&s * &p.q / (Scalar::from(1) - &p.q)) * &pt;
        for n in 1..=cap {
            m.push(c.clone(), vec![(0, n)], vec![(0, n)]);
        }
    }
    Ok(m)
}

pub fn q_quantum(p: &Params, chamber: &ChamberOrder) -> Result<GradedOperator<Scalar>, Error> {
    Ok(q_quantum_modes(p, chamber)?.to_operator(0))
}

/// `ch_1` of the twisted tautological bundle: cubic charges with zero
/// modes, the linear correction, the chamber-ordered `α ∂α` terms and
/// `½ ħ Ω̂`.
pub fn q_hat_cl_modes(p: &Params, chamber: &ChamberOrder) -> Result<ModeOperator<Scalar>, Error> {
    let r = check_rank(p, chamber)?;
    let z = geometric_zero_modes(p);
    let h = p.hbar();
    let half_h = &h * Scalar::new(1, 2);
    let mut m = ModeOperator::new(r, p.tau1());
    for i in 0..r {
        let f = unit_field(r, i);
        let cubic = geometric::<Scalar>(p, r)
            .slot(Slot::Plain, f.clone())
            .slot(Slot::Plain, f.clone())
            .slot(Slot::Plain, f.clone())
            .zero_modes(z.clone());
        m.extend(&cubic.build(), &Scalar::new(-1, 6));
        let linear = geometric::<Scalar>(p, r)
            .slot(Slot::Plain, f)
            .insertion(&h * &h + Scalar::from(2) * p.e())
            .zero_modes(z.clone());
        m.extend(&linear.build(), &Scalar::new(1, 24));
    }
    for i in 0..r {
        for j in 0..r {
            if i != j && chamber.rho(i, j) == Scalar::from(1) {
                let c = geometric::<Scalar>(p, r)
                    .slot(Slot::Plain, unit_field(r, i))
                    .slot(Slot::Deriv, unit_field(r, j))
                    .zero_modes(z.clone());
                m.extend(&c.build(), &half_h);
            }
        }
    }
    let omega_hat =
        geometric::<Scalar>(p, r).slot(Slot::Plain, beta_field(r)).slot(Slot::AbsDeriv, beta_field(r)).zero_modes(z);
    m.extend(&omega_hat.build(), &(&half_h * Scalar::new(1, 2)));
    Ok(m)
}

pub fn q_hat_cl(p: &Params, chamber: &ChamberOrder) -> Result<GradedOperator<Scalar>, Error> {
    Ok(q_hat_cl_modes(p, chamber)?.to_operator(0))
}

/// The matrix `A_n` on `V_n = ⊕_i Q e_n^{(i)}`.
pub fn spectrum_matrix(p: &Params, n: usize) -> Result<Matrix<Scalar>, Error> {
    if n == 0 {
        return Err(Error::OutOfRange("A_n needs n ≥ 1".into()));
    }
    let qn = p.q.powi(n as i32);
    if qn == Scalar::from(1) {
        return Err(Error::InvalidParams(format!("q^{n} = 1")));
    }
    let r = p.rank();
    let n2 = Scalar::from((n * n) as i64);
    let quantum = &n2 * &qn / (Scalar::from(1) - &qn);
    Ok(Matrix::from_fn(r, r, |row, col| {
        let mut v = quantum.clone();
        if row == col {
            v += &(-(Scalar::from(n) * (&p.a[row] + Scalar::new(1 - n as i64, 2))));
        } else if col < row {
            v += &n2;
        }
        v
    }))
}

/// The derivation `Q_0 = Σ_n D(A_n)` on `Sym(⊕ V_n)`.
pub fn q_zero_derivation(p: &Params) -> Result<GradedOperator<Scalar>, Error> {
    let r = p.rank();
    let mats: Vec<Matrix<Scalar>> = (1..=DEGREE_CAP).map(|n| spectrum_matrix(p, n)).collect::<Result<_, _>>()?;
    Ok(GradedOperator::new(r, r, 0, move |mp: &MultiPartition| {
        let mut out = FockVector::zero(r);
        for i in 0..r {
            let lam = mp.component(i);
            let mut parts: Vec<usize> = lam.parts().to_vec();
            parts.dedup();
            for n in parts {
                let mult = Scalar::from(lam.multiplicity(n));
                let removed = mp.replace(i, lam.without_part(n).unwrap());
                let a = &mats[n - 1];
                for j in 0..r {
                    let c = a.get(j, i);
                    if c.is_zero() {
                        continue;
                    }
                    let target = removed.replace(j, removed.component(j).with_part(n));
                    out.add_term(target, &(c * &mult));
                }
            }
        }
        out
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{basis, operator_matrix};
    use crate::partitions::Partition;
    use crate::scalar::sample_params;

    fn mp(parts: &[&[usize]]) -> MultiPartition {
        MultiPartition(parts.iter().map(|p| Partition::new(p.to_vec())).collect())
    }

    #[test]
    fn phi2_is_degree() {
        let p = sample_params(11, 2).unwrap();
        for i in 0..2 {
            let op = phi_n(&p, 2, &unit_field(2, i)).unwrap();
            for n in 0..=5 {
                for b in basis(n, 2) {
                    let d = b.component(i).size();
                    assert_eq!(op.apply_basis(&b), FockVector::basis(b.clone()).scale(&Scalar::from(d)));
                }
            }
        }
    }

    #[test]
    fn phi3_kills_p1() {
        let p = sample_params(12, 1).unwrap();
        let op = phi_n(&p, 3, &unit_field(1, 0)).unwrap();
        assert!(op.apply_basis(&mp(&[&[1]])).is_zero());
        assert!(op.apply_basis(&mp(&[&[]])).is_zero());
        assert!(phi_n(&p, 4, &unit_field(1, 0)).is_err());
    }

    #[test]
    fn omega_examples() {
        let p = sample_params(13, 2).unwrap();
        let o11 = omega(&p, 1, &[(0, 0, Scalar::from(1))]).unwrap();
        assert_eq!(o11.apply_basis(&mp(&[&[1]])), FockVector::basis(mp(&[&[1]])));
        let o12 = omega(&p, 2, &[(0, 1, Scalar::from(1))]).unwrap();
        assert!(o12.apply_basis(&mp(&[&[], &[]])).is_zero());
        let o21 = omega(&p, 2, &[(1, 0, Scalar::from(1))]).unwrap();
        assert_eq!(o21.apply_basis(&mp(&[&[1], &[]])), FockVector::basis(mp(&[&[], &[1]])));
    }

    #[test]
    fn lehn_low_degrees() {
        let p = sample_params(14, 1).unwrap();
        let a = Scalar::new(7, 3);
        let l = lehn_operator(&p, &a);
        assert!(l.apply_basis(&mp(&[&[]])).is_zero());
        assert_eq!(l.apply_basis(&mp(&[&[1]])), FockVector::basis(mp(&[&[1]])).scale(&a));
    }

    #[test]
    fn classical_rank_one_is_lehn() {
        let p = sample_params(15, 1).unwrap();
        let q = q_classical(&p, &ChamberOrder::standard(1)).unwrap();
        let l = lehn_operator(&p, &p.a[0]);
        for n in 0..=5 {
            assert_eq!(operator_matrix(&q, n).unwrap(), operator_matrix(&l, n).unwrap());
        }
    }

    #[test]
    fn chambers_differ_by_omega_flip() {
        let p = sample_params(16, 2).unwrap();
        let std = q_classical(&p, &ChamberOrder::standard(2)).unwrap();
        let rev = q_classical(&p, &ChamberOrder::reversed(2)).unwrap();
        let h = p.hbar();
        let flip = omega(&p, 2, &[(1, 0, h.clone()), (0, 1, -h)]).unwrap();
        for n in 0..=3 {
            let d = operator_matrix(&std, n).unwrap().sub(&operator_matrix(&rev, n).unwrap());
            assert_eq!(d, operator_matrix(&flip, n).unwrap());
        }
        assert!(operator_matrix(&std, 0).unwrap().is_zero());
    }

    #[test]
    fn quantum_at_q_zero_is_classical() {
        for r in 1..=3 {
            let p = sample_params(17, r).unwrap().with_q(Scalar::from(0));
            let ch = ChamberOrder::standard(r);
            let qq = q_quantum(&p, &ch).unwrap();
            let qc = q_classical(&p, &ch).unwrap();
            for n in 0..=3 {
                assert_eq!(operator_matrix(&qq, n).unwrap(), operator_matrix(&qc, n).unwrap(), "r={r} n={n}");
            }
        }
    }

    #[test]
    fn rank_one_quantum_part_kills_fundamental_class() {
        let p = sample_params(18, 1).unwrap();
        let ch = ChamberOrder::standard(1);
        let full = q_quantum(&p, &ch).unwrap();
        let classical = q_quantum(&p.with_q(Scalar::from(0)), &ch).unwrap();
        let quantum = full.sub(&classical);
        for n in 0..=6 {
            let v = FockVector::basis(mp(&[&vec![1; n]]));
            assert!(quantum.apply(&v).is_zero(), "n = {n}");
        }
    }

    #[test]
    fn root_of_unity_rejected() {
        let p = sample_params(19, 2).unwrap().with_q(Scalar::from(-1));
        assert!(q_quantum(&p, &ChamberOrder::standard(2)).is_err());
        assert!(spectrum_matrix(&p, 2).is_err());
        assert!(ChamberOrder::new(vec![0, 0]).is_err());
    }

    #[test]
    fn q_hat_on_vacuum() {
        let p = sample_params(20, 1).unwrap();
        let op = q_hat_cl(&p, &ChamberOrder::standard(1)).unwrap();
        let a = &p.a[0];
        let tau = |x: Scalar| x * p.tau1();
        let h = p.hbar();
        let expect =
            tau(a * a * a) * Scalar::new(1, 6) - tau((&h * &h + Scalar::from(2) * p.e()) * a) * Scalar::new(1, 24);
        assert_eq!(op.apply_basis(&mp(&[&[]])), FockVector::vacuum(1).scale(&expect));
    }

    #[test]
    fn q_hat_is_classical_plus_half_hbar_degree_plus_scalar() {
        for r in 1..=3 {
            let p = sample_params(21, r).unwrap();
            let ch = ChamberOrder::standard(r);
            let hat = q_hat_cl(&p, &ch).unwrap();
            let cl = q_classical(&p, &ch).unwrap();
            let h = p.hbar();
            let e = p.e();
            let constant: Scalar =
                p.a.iter()
                    .map(|a| {
                        (a * a * a * Scalar::new(1, 6) - (&h * &h + Scalar::from(2) * &e) * a * Scalar::new(1, 24))
                            * p.tau1()
                    })
                    .fold(Scalar::from(0), |x, y| x + y);
            for n in 0..=3 {
                let d = operator_matrix(&hat, n).unwrap().sub(&operator_matrix(&cl, n).unwrap());
                let shift = &h * Scalar::new(n as i64, 2) + &constant;
                assert_eq!(d, Matrix::identity(d.rows()).scale(&shift), "r={r} n={n}");
            }
        }
    }

    #[test]
    fn spectrum_matrix_examples() {
        let p = sample_params(22, 1).unwrap();
        let a1 = spectrum_matrix(&p, 1).unwrap();
        let expect = -p.a[0].clone() + &p.q / (Scalar::from(1) - &p.q);
        assert_eq!(*a1.get(0, 0), expect);
        let p2 = sample_params(22, 2).unwrap().with_q(Scalar::from(0));
        let m = spectrum_matrix(&p2, 1).unwrap();
        assert_eq!(*m.get(0, 0), -p2.a[0].clone());
        assert_eq!(*m.get(1, 1), -p2.a[1].clone());
        assert!(m.get(0, 1).is_zero());
    }

    #[test]
    fn q_zero_on_single_parts_gives_columns() {
        let p = sample_params(23, 3).unwrap();
        let q0 = q_zero_derivation(&p).unwrap();
        assert!(q0.apply_basis(&MultiPartition::vacuum(3)).is_zero());
        for n in 1..=3 {
            let a = spectrum_matrix(&p, n).unwrap();
            for i in 0..3 {
                let e = MultiPartition::vacuum(3).replace(i, Partition::new(vec![n]));
                let v = q0.apply_basis(&e);
                for j in 0..3 {
                    let f = MultiPartition::vacuum(3).replace(j, Partition::new(vec![n]));
                    assert_eq!(v.get(&f), *a.get(j, i));
                }
            }
        }
    }
}
