//! The gl(2) XXX spin chain behind `T*Gr(k, n)`: Yang's R-matrix, the
//! `T*P¹` stable envelopes, transfer matrices and their Baxter
//! coefficients, and the Mukai flop on `T*P^{n-1}`.
//!
//! States of `(Q²)^{⊗m}` are indexed by bit strings with site 0 as the most
//! significant bit.

use crate::linalg::Matrix;
use crate::scalar::{Field, RatFunc, Scalar};
use crate::Error;

/// A subset `S ⊆ {0..n}` encoded as bits, site 0 most significant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinState {
    pub n: usize,
    pub bits: u32,
}

impl SpinState {
    pub fn new(n: usize, bits: u32) -> Self {
        SpinState { n, bits }
    }

    pub fn bit(&self, site: usize) -> u32 {
        (self.bits >> (self.n - 1 - site)) & 1
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn index(&self) -> usize {
        self.bits as usize
    }
}

/// Indices of the weight-`k` sector of an `n`-site chain.
pub fn sector(n: usize, k: usize) -> Vec<usize> {
    (0..1usize << n).filter(|s| s.count_ones() as usize == k).collect()
}

/// The diagonal twist `g = diag(g0, g1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistMatrix {
    pub g0: Scalar,
    pub g1: Scalar,
}

impl TwistMatrix {
    pub fn new(g0: Scalar, g1: Scalar) -> Result<Self, Error> {
        if g0.is_zero() || g1.is_zero() {
            return Err(Error::InvalidParams("twist entries must be nonzero".into()));
        }
        Ok(TwistMatrix { g0, g1 })
    }

    pub fn q(q: Scalar) -> Result<Self, Error> {
        Self::new(q, Scalar::from(1))
    }

    pub fn trace(&self) -> Scalar {
        &self.g0 + &self.g1
    }
}

/// The flip `s` of `Q² ⊗ Q²`.
pub fn swap4<F: Field>() -> Matrix<F> {
    Matrix::from_fn(4, 4, |i, j| if i == 2 * (j % 2) + j / 2 { F::one() } else { F::zero() })
}

/// `R(u) = (u - ħ s) / (u - ħ)`.
pub fn yang_r<F: Field>(u: &F, hbar: &F) -> Result<Matrix<F>, Error> {
    let inv = u.sub(hbar).inv().ok_or_else(|| Error::InvalidParams("pole of R at u = ħ".into()))?;
    let m = Matrix::identity(4).scale(u).sub(&swap4().scale(hbar));
    Ok(m.scale(&inv))
}

/// `yang_r` over `Q(u)` with `u` shifted by `-shift`.
pub fn yang_r_symbolic(shift: &Scalar, hbar: &Scalar) -> Matrix<RatFunc> {
    let u = RatFunc::u().sub(&RatFunc::constant(shift.clone()));
    yang_r(&u, &RatFunc::constant(hbar.clone())).expect("u - ħ is not identically zero")
}

/// `u (R(u) - 1) / ħ` at `u = ∞`, i.e. `1 - s`.
pub fn classical_r(hbar: &Scalar) -> Matrix<Scalar> {
    let r = yang_r_symbolic(&Scalar::from(0), hbar);
    let one = Matrix::<RatFunc>::identity(4);
    let x = r.sub(&one).map(|f| f.mul(&RatFunc::u()).scale(&hbar.recip()));
    x.coeff_at_infinity(0)
}

/// `e00⊗e11 + e11⊗e00 - e01⊗e10 - e10⊗e01`.
pub fn classical_r_formula() -> Matrix<Scalar> {
    let e = |i: usize, j: usize| Matrix::from_fn(2, 2, |a, b| Scalar::from(i64::from(a == i && b == j)));
    e(0, 0).kron(&e(1, 1)).add(&e(1, 1).kron(&e(0, 0))).sub(&e(0, 1).kron(&e(1, 0))).sub(&e(1, 0).kron(&e(0, 1)))
}

/// `(21)` conjugate of a two-site operator.
pub fn flip21<F: Field>(m: &Matrix<F>) -> Matrix<F> {
    let s = swap4::<F>();
    s.mul(m).mul(&s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chamber {
    Plus,
    Minus,
}

/// Restrictions `Stab_{±C}(z_j)|_{z_i}` for `T*P¹` over `Q(u)`.
pub fn stab_tp1(chamber: Chamber, hbar: &Scalar) -> Matrix<RatFunc> {
    let u = RatFunc::u();
    let h = RatFunc::constant(hbar.clone());
    let z = RatFunc::zero();
    let rows = match chamber {
        Chamber::Plus => vec![vec![u.neg().sub(&h), z], vec![h.neg(), u]],
        Chamber::Minus => vec![vec![u.neg(), h.neg()], vec![z, u.sub(&h)]],
    };
    Matrix::from_rows(rows)
}

/// Embeds a two-site operator on sites `(i, j)` of an `m`-site chain.
pub fn embed_pair<F: Field>(op: &Matrix<F>, i: usize, j: usize, m: usize) -> Matrix<F> {
    let bit = |s: usize, k: usize| (s >> (m - 1 - k)) & 1;
    let rest = |s: usize| s & !((1 << (m - 1 - i)) | (1 << (m - 1 - j)));
    Matrix::from_fn(1 << m, 1 << m, |s, t| {
        if rest(s) != rest(t) {
            return F::zero();
        }
        op.get(2 * bit(s, i) + bit(s, j), 2 * bit(t, i) + bit(t, j)).clone()
    })
}

/// `tr_0 (g ⊗ 1) R_{0,n}(u - a_n) ⋯ R_{0,1}(u - a_1)` on `(Q²)^{⊗n}`.
pub fn transfer_matrix<F: Field>(g: &TwistMatrix, u: &F, a: &[Scalar], hbar: &Scalar) -> Result<Matrix<F>, Error> {
    let n = a.len();
    let m = n + 1;
    let h = F::from_scalar(hbar);
    let mut train = Matrix::identity(1 << m);
    for (k, ak) in a.iter().enumerate() {
        let r = yang_r(&u.sub(&F::from_scalar(ak)), &h)?;
        train = embed_pair(&r, 0, k + 1, m).mul(&train);
    }
    let half = 1 << n;
    let (g0, g1) = (F::from_scalar(&g.g0), F::from_scalar(&g.g1));
    Ok(Matrix::from_fn(half, half, |i, j| train.get(i, j).mul(&g0).add(&train.get(half + i, half + j).mul(&g1))))
}

/// `(1/ħ) [u^{-k-1}] T(g, u)` at `u = ∞`.
pub fn baxter_coefficient(g: &TwistMatrix, k: i64, a: &[Scalar], hbar: &Scalar) -> Result<Matrix<Scalar>, Error> {
    if !(0..=3).contains(&k) {
        return Err(Error::OutOfRange(format!("Baxter order {k} outside [0, 3]")));
    }
    let t = transfer_matrix(g, &RatFunc::u(), a, hbar)?;
    Ok(t.coeff_at_infinity(k + 1).scale(&hbar.recip()))
}

/// `e f` with `e = Σ e10`, `f = Σ e01` over all sites.
pub fn ef_operator(n: usize) -> Matrix<Scalar> {
    let dim = 1usize << n;
    let site = |op: [[i64; 2]; 2], k: usize| {
        Matrix::from_fn(dim, dim, |s, t| {
            let mask = 1 << (n - 1 - k);
            if s & !mask != t & !mask {
                return Scalar::from(0);
            }
            let (bs, bt) = ((s & mask != 0) as usize, (t & mask != 0) as usize);
            Scalar::from(op[bs][bt])
        })
    };
    let mut e = Matrix::zeros(dim, dim);
    let mut f = Matrix::zeros(dim, dim);
    for k in 0..n {
        e = e.add(&site([[0, 0], [1, 0]], k));
        f = f.add(&site([[0, 1], [0, 0]], k));
    }
    e.mul(&f)
}

pub fn off_diagonal(m: &Matrix<Scalar>) -> Matrix<Scalar> {
    Matrix::from_fn(m.rows(), m.cols(), |i, j| if i == j { Scalar::from(0) } else { m.get(i, j).clone() })
}

pub fn diagonal(m: &Matrix<Scalar>) -> Vec<Scalar> {
    (0..m.rows()).map(|i| m.get(i, i).clone()).collect()
}

/// `ħ q/(1-q) ef`, the purely quantum part of `c_1(O(1)) ∗` on
/// `T*Gr(k, n)` up to diagonal operators, with the modified sign
/// `q ↦ (-1)^n q` already applied by the caller.
pub fn quantum_part(n: usize, q: &Scalar, hbar: &Scalar) -> Result<Matrix<Scalar>, Error> {
    let one = Scalar::from(1);
    if *q == one {
        return Err(Error::InvalidParams("q = 1".into()));
    }
    Ok(ef_operator(n).scale(&(hbar * q / (one - q))))
}

/// `tr_{Q²} g h_α` for the root `α` with `h_α = [e, f] = e11 - e00`.
pub fn twisted_root_trace(g: &TwistMatrix) -> Scalar {
    &g.g1 - &g.g0
}

/// Restriction of a square matrix to the rows and columns in `idx`.
pub fn restrict(m: &Matrix<Scalar>, idx: &[usize]) -> Matrix<Scalar> {
    m.submatrix(idx, idx)
}

/// Classical `c_1(O(1)) ∪` on `T*P¹` in the chamber-`+` stable basis of
/// the weight-1 sector `{01, 10}`, from its fixed-point weights
/// `-Σ_{i∈S} a_i`.
pub fn tp1_divisor(a: &[Scalar], hbar: &Scalar) -> Result<Matrix<Scalar>, Error> {
    let [a1, a2] = a else {
        return Err(Error::InvalidParams(format!("T*P¹ needs 2 weights, got {}", a.len())));
    };
    let stab = stab_tp1(Chamber::Plus, hbar).eval(&(a1 - a2)).ok_or(Error::Singular)?;
    let d = Matrix::from_rows(vec![vec![-a2.clone(), Scalar::from(0)], vec![Scalar::from(0), -a1.clone()]]);
    Ok(stab.inverse().ok_or(Error::Singular)?.mul(&d).mul(&stab))
}

/// `E(g u)` on the `T*P¹` sector minus `tr(g h_α)` times the quantum
/// divisor operator; a multiple of the identity when the two agree.
pub fn tp1_quantum_residual(a: &[Scalar], hbar: &Scalar, q: &Scalar) -> Result<Matrix<Scalar>, Error> {
    let g = TwistMatrix::q(q.clone())?;
    let idx = sector(2, 1);
    let e1 = restrict(&baxter_coefficient(&g, 1, a, hbar)?, &idx);
    // (-1)^{(β,κ)} with κ = 2 O(1) is trivial on T*P¹
    let quantum = restrict(&quantum_part(2, q, hbar)?, &idx);
    let divisor = tp1_divisor(a, hbar)?.add(&quantum);
    Ok(e1.sub(&divisor.scale(&twisted_root_trace(&g))))
}

/// The quantum part of the divisor operator recovered from `E(g u)`, divided
/// by `q/(1-q)`.
pub fn tp1_steinberg_part(a: &[Scalar], hbar: &Scalar, q: &Scalar) -> Result<Matrix<Scalar>, Error> {
    let g = TwistMatrix::q(q.clone())?;
    let idx = sector(2, 1);
    let e1 = off_diagonal(&restrict(&baxter_coefficient(&g, 1, a, hbar)?, &idx));
    let tr = twisted_root_trace(&g).recip();
    let classical = off_diagonal(&tp1_divisor(a, hbar)?);
    let one = Scalar::from(1);
    Ok(e1.scale(&tr).sub(&classical).scale(&((&one - q) / q)))
}

/// Whether `E(g u)` has simple spectrum on every weight sector.
pub fn baxter_simple_spectrum(g: &TwistMatrix, a: &[Scalar], hbar: &Scalar) -> Result<bool, Error> {
    let e1 = baxter_coefficient(g, 1, a, hbar)?;
    Ok((0..=a.len()).all(|k| restrict(&e1, &sector(a.len(), k)).charpoly().is_squarefree()))
}

/// The flop `F: H(T*P(W)) → H(T*P(W^∨))` in the bases `σ_{U_0..U_n}` and
/// `σ_{V_0..V_n}` for the coordinate flags, `U_i = ⟨e_1..e_i⟩` and
/// `V_j = ⟨e*_{n-j+1}..e*_n⟩`. Column `i` is `F(σ_{U_i})`.
pub fn mukai_flop(n: usize) -> Matrix<Scalar> {
    let mut m = Matrix::zeros(n + 1, n + 1);
    for i in 1..=n {
        // U^⊥ = V_{n-i}; σ_0 = ∅ is dropped
        if n - i > 0 {
            m.set(n - i, i, Scalar::from(1));
        }
        let c = m.get(n, i) + &flop_top_coefficient(i);
        m.set(n, i, c);
    }
    m
}

/// `σ_W · σ_U` plus the same number for a hyperplane section of `U`, where
/// `σ_W · σ_U = (-1)^{dim P(U)} χ(P(U))`.
pub fn flop_top_coefficient(dim_u: usize) -> Scalar {
    let pair = |d: usize| -> i64 {
        if d == 0 {
            0
        } else {
            let sign = if (d - 1).is_multiple_of(2) { 1 } else { -1 };
            sign * d as i64
        }
    };
    Scalar::from(pair(dim_u) + pair(dim_u - 1))
}
