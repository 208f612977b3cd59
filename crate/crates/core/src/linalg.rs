//! Dense exact matrices over a [`Field`], fraction-free elimination over
//! polynomial entries, rational reconstruction, and characteristic
//! polynomials.

use std::fmt;

use crate::scalar::{Field, Poly, RatFunc, Scalar};
use crate::Error;

#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<Matrix<G>> {
        let data: Option<Vec<G>> = self.data.iter().map(f).collect();
        Some(Matrix { rows: self.rows, cols: self.cols, data: data? })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(F::neg)
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|a| a.mul(s))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn trace(&self) -> F {
        let mut acc = F::zero();
        for i in 0..self.rows.min(self.cols) {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out.set(self.rows + i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        Matrix::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |i, j| {
            self.get(i / rhs.rows, j / rhs.cols).mul(rhs.get(i % rhs.rows, j % rhs.cols))
        })
    }

    /// Gauss-Jordan inverse; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of non-square matrix");
        self.solve_right(&Self::identity(self.rows))
    }

    /// Solves `self * X = b`; `None` if `self` is singular.
    pub fn solve_right(&self, b: &Self) -> Option<Self> {
        assert!(self.is_square() && b.rows == self.rows);
        let n = self.rows;
        let m = b.cols;
        let mut a = self.clone();
        let mut x = b.clone();
        for k in 0..n {
            let p = (k..n).find(|&i| !a.get(i, k).is_zero())?;
            if p != k {
                a.swap_rows(p, k);
                x.swap_rows(p, k);
            }
            let inv = a.get(k, k).inv().unwrap();
            for j in k..n {
                let v = a.get(k, j).mul(&inv);
                a.set(k, j, v);
            }
            for j in 0..m {
                let v = x.get(k, j).mul(&inv);
                x.set(k, j, v);
            }
            for i in 0..n {
                if i == k || a.get(i, k).is_zero() {
                    continue;
                }
                let f = a.get(i, k).clone();
                for j in k..n {
                    let v = a.get(i, j).sub(&f.mul(a.get(k, j)));
                    a.set(i, j, v);
                }
                for j in 0..m {
                    let v = x.get(i, j).sub(&f.mul(x.get(k, j)));
                    x.set(i, j, v);
                }
            }
        }
        Some(x)
    }

    pub fn determinant(&self) -> F {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut det = F::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return F::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                det = det.neg();
            }
            let piv = a.get(k, k).clone();
            det = det.mul(&piv);
            let inv = piv.inv().unwrap();
            for i in k + 1..n {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let f = a.get(i, k).mul(&inv);
                for j in k..n {
                    let v = a.get(i, j).sub(&f.mul(a.get(k, j)));
                    a.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let inv = a.get(r, c).inv().unwrap();
            for i in r + 1..self.rows {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).mul(&inv);
                for j in c..self.cols {
                    let v = a.get(i, j).sub(&f.mul(a.get(r, j)));
                    a.set(i, j, v);
                }
            }
            r += 1;
            if r == self.rows {
                break;
            }
        }
        r
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix<RatFunc> {
    /// Entrywise evaluation; `None` if some entry has a pole at `u`.
    pub fn eval(&self, u: &Scalar) -> Option<Matrix<Scalar>> {
        self.try_map(|f| f.eval(u))
    }

    /// Substitutes `u -> k u` in every entry.
    pub fn rescale_var(&self, k: &Scalar) -> Matrix<RatFunc> {
        self.map(|f| f.rescale_var(k))
    }

    /// Coefficient matrix of `u^(-k)` at infinity.
    pub fn coeff_at_infinity(&self, k: i64) -> Matrix<Scalar> {
        self.map(|f| f.coeff_at_infinity(k))
    }

    /// Lowest-order term at infinity over all entries is at most `u^(-k)`.
    pub fn vanishes_to_order(&self, k: i64) -> bool {
        self.data.iter().all(|f| f.order_at_infinity().is_none_or(|o| o <= -k))
    }

    /// `(N, d)` with `self = N / d` and `d` the monic lcm of the entry
    /// denominators.
    pub fn over_common_denominator(&self) -> (Matrix<PolyEntry>, Poly) {
        let mut d = Poly::one();
        for f in &self.data {
            if !f.den().is_constant() {
                let g = d.gcd(f.den());
                d = &d * &f.den().exact_div(&g);
            }
        }
        let d = d.monic();
        let n = self.map(|f| PolyEntry(&f.num().clone() * &d.exact_div(f.den())));
        (n, d)
    }

    /// Product computed on numerators over common denominators, so only the
    /// final entries are reduced.
    pub fn mul_common_den(&self, rhs: &Self) -> Self {
        let (a, da) = self.over_common_denominator();
        let (b, db) = rhs.over_common_denominator();
        let d = &da * &db;
        a.mul(&b).map(|e| RatFunc::new(e.0.clone(), d.clone()))
    }
}

impl Matrix<Scalar> {
    pub fn to_ratfunc(&self) -> Matrix<RatFunc> {
        self.map(|s| RatFunc::constant(s.clone()))
    }

    /// Characteristic polynomial `det(x - A)` via Hessenberg reduction.
    pub fn charpoly(&self) -> Poly {
        assert!(self.is_square());
        let n = self.rows;
        let mut h = self.clone();
        // Reduce to upper Hessenberg form by similarity transforms.
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if i != m {
                h.swap_rows(i, m);
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let inv = h.get(m, m - 1).recip();
            for i in m + 1..n {
                if h.get(i, m - 1).is_zero() {
                    continue;
                }
                let f = h.get(i, m - 1) * &inv;
                for j in 0..n {
                    let v = h.get(i, j) - &(&f * h.get(m, j));
                    h.set(i, j, v);
                }
                for r in 0..n {
                    let v = h.get(r, m) + &(&f * h.get(r, i));
                    h.set(r, m, v);
                }
            }
        }
        let mut p: Vec<Poly> = vec![Poly::one()];
        for m in 0..n {
            let mut next = &Poly::linear_root(h.get(m, m)) * &p[m];
            let mut prod = Scalar::from(1);
            for i in (0..m).rev() {
                prod *= h.get(i + 1, i);
                if prod.is_zero() {
                    break;
                }
                let c = &prod * h.get(i, m);
                next = &next - &p[i].scale(&c);
            }
            p.push(next);
        }
        p.pop().unwrap()
    }
}

/// Primes below `2^62` used for modular certificates.
const CERT_PRIMES: [u64; 4] = [4611686018427387847, 4611686018427387817, 4611686018427387787, 4611686018427387733];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (p - b)
    }
}

fn reduce(s: &Scalar, p: u64) -> Option<u64> {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    let m = BigInt::from(p);
    let r = |x: &BigInt| (((x % &m) + &m) % &m).to_u64().unwrap();
    let d = r(s.denom());
    (d != 0).then(|| mulmod(r(s.numer()), invmod(d, p), p))
}

/// Characteristic polynomial mod `p`, lowest degree first, or `None` when a
/// denominator vanishes mod `p`.
fn charpoly_mod(a: &Matrix<Scalar>, p: u64) -> Option<Vec<u64>> {
    let n = a.rows;
    let mut h: Vec<u64> = a.data.iter().map(|s| reduce(s, p)).collect::<Option<_>>()?;
    let at = |i: usize, j: usize| i * n + j;
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[at(i, m - 1)] != 0) else {
            continue;
        };
        if i != m {
            for c in 0..n {
                h.swap(at(i, c), at(m, c));
            }
            for r in 0..n {
                h.swap(at(r, i), at(r, m));
            }
        }
        let inv = invmod(h[at(m, m - 1)], p);
        for i in m + 1..n {
            if h[at(i, m - 1)] == 0 {
                continue;
            }
            let f = mulmod(h[at(i, m - 1)], inv, p);
            for j in 0..n {
                h[at(i, j)] = submod(h[at(i, j)], mulmod(f, h[at(m, j)], p), p);
            }
            for r in 0..n {
                h[at(r, m)] = (h[at(r, m)] + mulmod(f, h[at(r, i)], p)) % p;
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        // (x - h_mm) p_m
        let prev = &polys[m];
        let mut next = vec![0u64; m + 2];
        for (k, c) in prev.iter().enumerate() {
            next[k + 1] = (next[k + 1] + c) % p;
            next[k] = submod(next[k], mulmod(h[at(m, m)], *c, p), p);
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = mulmod(prod, h[at(i + 1, i)], p);
            if prod == 0 {
                break;
            }
            let c = mulmod(prod, h[at(i, m)], p);
            for (k, x) in polys[i].iter().enumerate() {
                next[k] = submod(next[k], mulmod(c, *x, p), p);
            }
        }
        polys.push(next);
    }
    polys.pop()
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree of `gcd(f, g)` over `F_p`.
fn gcd_degree_mod(mut f: Vec<u64>, mut g: Vec<u64>, p: u64) -> usize {
    trim(&mut f);
    trim(&mut g);
    while !g.is_empty() {
        let inv = invmod(*g.last().unwrap(), p);
        while f.len() >= g.len() {
            let c = mulmod(*f.last().unwrap(), inv, p);
            let shift = f.len() - g.len();
            for (k, x) in g.iter().enumerate() {
                f[shift + k] = submod(f[shift + k], mulmod(c, *x, p), p);
            }
            trim(&mut f);
            if f.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut f, &mut g);
    }
    f.len().saturating_sub(1)
}

impl Matrix<Scalar> {
    /// Whether the characteristic polynomial is squarefree over `Q`.
    ///
    /// A monic `f` whose reduction mod `p` is squarefree has nonzero
    /// discriminant, so one good prime certifies. If every prime fails the
    /// exact polynomial is tested.
    pub fn has_squarefree_charpoly(&self) -> bool {
        assert!(self.is_square());
        for &p in &CERT_PRIMES {
            let Some(f) = charpoly_mod(self, p) else {
                continue;
            };
            let df: Vec<u64> = f.iter().enumerate().skip(1).map(|(k, c)| mulmod(k as u64 % p, *c, p)).collect();
            if gcd_degree_mod(f, df, p) == 0 {
                return true;
            }
        }
        self.charpoly().is_squarefree()
    }
}

/// Fraction-free Gauss-Jordan elimination over `Q[u]`.
///
/// Solves `A X = B` for square polynomial `A`, returning `(d, N)` with
/// `X = N / d` and `d = ±det A`. Every intermediate division is exact.
pub fn bareiss_solve(a: &Matrix<PolyEntry>, b: &Matrix<PolyEntry>) -> Result<(Poly, Matrix<PolyEntry>), Error> {
    let n = a.rows;
    assert!(a.is_square() && b.rows == n);
    let m = b.cols;
    let w = n + m;
    let mut t: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            let mut row: Vec<Poly> = a.row(i).iter().map(|e| e.0.clone()).collect();
            row.extend(b.row(i).iter().map(|e| e.0.clone()));
            row
        })
        .collect();
    let mut prev = Poly::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !t[i][k].is_zero()).ok_or(Error::Singular)?;
        t.swap(p, k);
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = t[i][k].clone();
            for j in 0..w {
                if j == k {
                    continue;
                }
                let v = &(&t[k][k] * &t[i][j]) - &(&f * &t[k][j]);
                t[i][j] = v.exact_div(&prev);
            }
            t[i][k] = Poly::zero();
        }
        prev = t[k][k].clone();
    }
    // After the last step every diagonal entry equals the last pivot.
    let d = prev;
    debug_assert!((0..n).all(|i| t[i][i] == d));
    let x = Matrix::from_fn(n, m, |i, j| PolyEntry(t[i][n + j].clone()));
    Ok((d, x))
}

/// A polynomial used as a matrix entry; the ring operations that are
/// needed are total except `inv`, which is only defined for constants.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyEntry(pub Poly);

impl fmt::Display for PolyEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for PolyEntry {
    fn zero() -> Self {
        PolyEntry(Poly::zero())
    }
    fn one() -> Self {
        PolyEntry(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        PolyEntry(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        PolyEntry(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        PolyEntry(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        PolyEntry(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_constant() && !self.0.is_zero() {
            Some(PolyEntry(Poly::constant(self.0.coeff(0).recip())))
        } else {
            None
        }
    }
    fn from_scalar(s: &Scalar) -> Self {
        PolyEntry(Poly::constant(s.clone()))
    }
}

impl Matrix<PolyEntry> {
    pub fn max_degree(&self) -> usize {
        self.data.iter().filter_map(|e| e.0.degree()).max().unwrap_or(0)
    }

    /// Sum over columns of the largest entry degree in that column, a bound
    /// on the degree of the determinant.
    pub fn column_degree_bound(&self) -> usize {
        (0..self.cols).map(|j| (0..self.rows).filter_map(|i| self.get(i, j).0.degree()).max().unwrap_or(0)).sum()
    }

    pub fn eval(&self, x: &Scalar) -> Matrix<Scalar> {
        self.map(|e| e.0.eval(x))
    }

    pub fn to_ratfunc(&self) -> Matrix<RatFunc> {
        self.map(|e| RatFunc::from_poly(e.0.clone()))
    }
}

/// Solves `X A = B` over `Q(u)` for polynomial matrices by fraction-free
/// elimination on the transposed system.
pub fn solve_left_bareiss(a: &Matrix<PolyEntry>, b: &Matrix<PolyEntry>) -> Result<Matrix<RatFunc>, Error> {
    let (d, n) = bareiss_solve(&a.transpose(), &b.transpose())?;
    Ok(n.transpose().map(|e| RatFunc::new(e.0.clone(), d.clone())))
}

/// Solves `X A = B` by evaluating at `2D + 1` rational points and
/// reconstructing each entry as a rational function of degrees `≤ D`, where
/// `D` bounds numerator and denominator degrees of the solution.
pub fn solve_left_interpolate(a: &Matrix<PolyEntry>, b: &Matrix<PolyEntry>) -> Result<Matrix<RatFunc>, Error> {
    let bound = a.column_degree_bound().max(a.transpose().column_degree_bound()) + b.max_degree();
    let need = 2 * bound + 1;
    let mut xs: Vec<Scalar> = Vec::with_capacity(need);
    let mut sols: Vec<Matrix<Scalar>> = Vec::with_capacity(need);
    let mut k: i64 = 0;
    while xs.len() < need {
        k += 1;
        if k > 100 * need as i64 + 1000 {
            return Err(Error::Singular);
        }
        // Spread points over small rationals of both signs.
        let x = Scalar::new(if k % 2 == 0 { k } else { -k }, 7);
        let at = a.eval(&x);
        let Some(y) = at.transpose().solve_right(&b.eval(&x).transpose()) else {
            continue;
        };
        xs.push(x);
        sols.push(y.transpose());
    }
    let (r, c) = (b.rows, a.rows);
    let mut out = Matrix::zeros(r, c);
    for i in 0..r {
        for j in 0..c {
            let ys: Vec<Scalar> = sols.iter().map(|m| m.get(i, j).clone()).collect();
            out.set(i, j, rational_reconstruct(&xs, &ys, bound)?);
        }
    }
    Ok(out)
}

/// Newton interpolation through `(xs, ys)`.
pub fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> Poly {
    let n = xs.len();
    let mut dd: Vec<Scalar> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut p = Poly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = &(&p * &Poly::linear_root(&xs[i])) + &Poly::constant(dd[i].clone());
    }
    p
}

/// Cauchy interpolation: the rational function with numerator degree
/// `≤ num_bound` through the given points, via the extended Euclidean
/// algorithm on the interpolating polynomial.
pub fn rational_reconstruct(xs: &[Scalar], ys: &[Scalar], num_bound: usize) -> Result<RatFunc, Error> {
    let p = interpolate(xs, ys);
    let mut m = Poly::one();
    for x in xs {
        m = &m * &Poly::linear_root(x);
    }
    let (mut r0, mut r1) = (m, p);
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while r1.degree().is_some_and(|d| d > num_bound) {
        let (q, r) = r0.div_rem(&r1);
        let t = &t0 - &(&q * &t1);
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    if t1.is_zero() {
        return Err(Error::Reconstruction);
    }
    let f = RatFunc::new(r1, t1);
    for (x, y) in xs.iter().zip(ys) {
        if f.eval(x).as_ref() != Some(y) {
            return Err(Error::Reconstruction);
        }
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from(n)
    }

    fn poly(c: &[i64]) -> PolyEntry {
        PolyEntry(Poly::new(c.iter().map(|&x| s(x)).collect()))
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_rows(vec![vec![s(2), s(1)], vec![s(7), s(4)]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(m.determinant(), s(1));
    }

    #[test]
    fn charpoly_matches_determinant_at_points() {
        let m = Matrix::from_fn(5, 5, |i, j| Scalar::new((i * 7 + j * 3) as i64 % 11 - 5, (j + 1) as i64));
        let cp = m.charpoly();
        assert_eq!(cp.degree(), Some(5));
        for x in -3..=3 {
            let shifted = Matrix::from_fn(5, 5, |i, j| {
                let d = if i == j { s(x) } else { s(0) };
                &d - m.get(i, j)
            });
            assert_eq!(cp.eval(&s(x)), shifted.determinant());
        }
    }

    #[test]
    fn modular_squarefree_agrees_with_exact() {
        let m = Matrix::from_fn(6, 6, |i, j| Scalar::new((i * 5 + j * j) as i64 % 7 - 3, (i + j + 1) as i64));
        assert!(m.charpoly().is_squarefree());
        assert!(m.has_squarefree_charpoly());
        // a repeated eigenvalue: diag(1/2, 1/2, 3) conjugated by a unipotent matrix
        let d = Matrix::from_rows(vec![
            vec![Scalar::new(1, 2), s(0), s(0)],
            vec![s(0), Scalar::new(1, 2), s(0)],
            vec![s(0), s(0), s(3)],
        ]);
        let g = Matrix::from_rows(vec![vec![s(1), s(2), s(-1)], vec![s(0), s(1), s(4)], vec![s(0), s(0), s(1)]]);
        let a = g.mul(&d).mul(&g.inverse().unwrap());
        assert!(!a.charpoly().is_squarefree());
        assert!(!a.has_squarefree_charpoly());
        let x = charpoly_mod(&m, CERT_PRIMES[0]).unwrap();
        let exact: Vec<u64> = (0..=6).map(|k| reduce(&m.charpoly().coeff(k), CERT_PRIMES[0]).unwrap()).collect();
        assert_eq!(x, exact);
    }

    #[test]
    fn bareiss_and_interpolation_agree() {
        let a = Matrix::from_rows(vec![
            vec![poly(&[1, 1]), poly(&[0, 0, 1]), poly(&[3])],
            vec![poly(&[2]), poly(&[-1, 1]), poly(&[0, 2])],
            vec![poly(&[1, 0, 1]), poly(&[5]), poly(&[1, -1])],
        ]);
        let b = Matrix::from_rows(vec![
            vec![poly(&[1]), poly(&[0, 1]), poly(&[2, 2])],
            vec![poly(&[0, 0, 1]), poly(&[1]), poly(&[-3])],
        ]);
        let x1 = solve_left_bareiss(&a, &b).unwrap();
        let x2 = solve_left_interpolate(&a, &b).unwrap();
        assert_eq!(x1, x2);
        assert_eq!(x1.mul(&a.to_ratfunc()), b.to_ratfunc());
    }

    #[test]
    fn reconstruct_simple_rational() {
        let f = RatFunc::new(Poly::new(vec![s(3), s(1)]), Poly::new(vec![s(-2), s(0), s(1)]));
        let xs: Vec<Scalar> = (10..15).map(s).collect();
        let ys: Vec<Scalar> = xs.iter().map(|x| f.eval(x).unwrap()).collect();
        assert_eq!(rational_reconstruct(&xs, &ys, 2).unwrap(), f);
    }
}
