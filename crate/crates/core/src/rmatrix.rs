//! The reflection operator of the minus-boson and the R-matrix on `F ⊗ F`.
//!
//! The reflection block of degree `n` is the unique map sending the Verma
//! vectors `L_{-μ}(κ) vac` to `L_{-μ}(-κ) vac`. Entries are rational
//! functions of `u = a_1 - a_2`, carried through `η = u/2`.

use std::collections::BTreeMap;

use crate::fock::{basis, pm_change_of_basis, FockVector, PmDirection};
use crate::linalg::{solve_left_bareiss, solve_left_interpolate, Matrix, PolyEntry};
use crate::partitions::{partitions_of, MultiPartition, Partition};
use crate::scalar::{Field, Params, Poly, RatFunc, Scalar, DEGREE_CAP};
use crate::virasoro::{virasoro_mode, BosonSpec, Embedding};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    MinusBoson,
    FullTensor,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RMatrixBlock {
    pub degree: usize,
    pub matrix: Matrix<RatFunc>,
    pub side: Side,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Bareiss,
    Interpolate,
}

/// The geometric minus-boson with `η = u/2` symbolic in `u`.
pub fn symbolic_minus_boson(p: &Params) -> BosonSpec<PolyEntry> {
    let half = Scalar::new(1, 2);
    BosonSpec {
        tau1: Scalar::from(2) * p.tau1(),
        eta: PolyEntry(Poly::new(vec![Scalar::from(0), half.clone()])),
        kappa: p.hbar() * half,
    }
}

/// Columns `L_{-μ_1} L_{-μ_2} ⋯ vac` for `μ ⊢ n` in canonical order,
/// expanded in the monomial basis `p_ν`.
pub fn verma_matrix(n: usize, spec: &BosonSpec<PolyEntry>) -> Result<Matrix<PolyEntry>, Error> {
    if n > DEGREE_CAP {
        return Err(Error::OutOfRange(format!("degree {n} > {DEGREE_CAP}")));
    }
    let emb = Embedding::single(spec);
    let g = Scalar::from(1);
    let lowering: Vec<_> = (1..=n as i64).map(|k| virasoro_mode(-k, &g, spec, &emb)).collect::<Result<_, _>>()?;
    let rows = basis(n, 1);
    let cols = partitions_of(n);
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (j, mu) in cols.iter().enumerate() {
        let mut v = FockVector::<PolyEntry>::vacuum(1);
        for &k in mu.parts().iter().rev() {
            v = lowering[k - 1].apply(&v);
        }
        for (i, b) in rows.iter().enumerate() {
            m.set(i, j, v.get(b));
        }
    }
    Ok(m)
}

/// The map `L_{-μ}(from) vac ↦ L_{-μ}(to) vac` on degree `n`.
pub fn intertwiner_block(
    n: usize,
    from: &BosonSpec<PolyEntry>,
    to: &BosonSpec<PolyEntry>,
    method: Method,
) -> Result<Matrix<RatFunc>, Error> {
    let a = verma_matrix(n, from)?;
    let b = verma_matrix(n, to)?;
    match method {
        Method::Bareiss => solve_left_bareiss(&a, &b),
        Method::Interpolate => solve_left_interpolate(&a, &b),
    }
}

/// `R^-_n`: the reflection `κ ↦ -κ` on the degree-`n` part of the
/// minus-boson Fock space.
pub fn reflection_block(n: usize, spec: &BosonSpec<PolyEntry>, method: Method) -> Result<RMatrixBlock, Error> {
    let flipped = spec.with_kappa(-spec.kappa.clone());
    let matrix = intertwiner_block(n, spec, &flipped, method)?;
    Ok(RMatrixBlock { degree: n, matrix, side: Side::MinusBoson })
}

/// Reflection blocks of degrees `0..=max_degree` for the geometric boson.
pub fn reflection_blocks(p: &Params, max_degree: usize) -> Result<Vec<Matrix<RatFunc>>, Error> {
    let spec = symbolic_minus_boson(p);
    (0..=max_degree).map(|n| reflection_block(n, &spec, Method::Bareiss).map(|b| b.matrix)).collect()
}

/// The R-matrix on the degree-`n` part of `F ⊗ F` in the pair-of-partitions
/// basis: identity on the `α^+` monomials, reflection on the `α^-` ones.
pub fn full_r_block(p: &Params, n: usize) -> Result<RMatrixBlock, Error> {
    let minus = reflection_blocks(p, n)?;
    Ok(RMatrixBlock { degree: n, matrix: assemble_full(n, &minus), side: Side::FullTensor })
}

/// Full blocks for all degrees `0..=max_degree`, sharing the reflection
/// computations.
pub fn full_r_blocks(p: &Params, max_degree: usize) -> Result<Vec<Matrix<RatFunc>>, Error> {
    let minus = reflection_blocks(p, max_degree)?;
    Ok((0..=max_degree).map(|n| assemble_full(n, &minus)).collect())
}

fn assemble_full(n: usize, minus: &[Matrix<RatFunc>]) -> Matrix<RatFunc> {
    let labels = basis(n, 2);
    let index: BTreeMap<&MultiPartition, usize> = labels.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut pm = Matrix::<RatFunc>::zeros(labels.len(), labels.len());
    for (j, lab) in labels.iter().enumerate() {
        let nu = lab.component(1);
        let k = nu.size();
        let parts = partitions_of(k);
        let col = parts.iter().position(|x| x == nu).unwrap();
        for (row, nu2) in parts.iter().enumerate() {
            let target = MultiPartition(vec![lab.component(0).clone(), nu2.clone()]);
            pm.set(index[&target], j, minus[k].get(row, col).clone());
        }
    }
    let from = pm_change_of_basis(n, PmDirection::FromPm).to_ratfunc();
    let to = pm_change_of_basis(n, PmDirection::ToPm).to_ratfunc();
    from.mul(&pm).mul(&to)
}

/// The permutation `λ_1 ⊗ λ_2 ↦ λ_2 ⊗ λ_1` on the degree-`n` block.
pub fn swap_matrix(n: usize) -> Matrix<Scalar> {
    let b = basis(n, 2);
    Matrix::from_fn(b.len(), b.len(), |i, j| {
        let s = MultiPartition(vec![b[j].component(1).clone(), b[j].component(0).clone()]);
        Scalar::from(i64::from(b[i] == s))
    })
}

/// `R^∨ = (12) R`.
pub fn r_check(block: &RMatrixBlock) -> Matrix<RatFunc> {
    swap_matrix(block.degree).to_ratfunc().mul(&block.matrix)
}

/// Indices of the basis of `F ⊗ F` at degree `n` grouped by the degree of
/// the first factor, ascending.
pub fn first_factor_blocks(n: usize) -> Vec<Vec<usize>> {
    let b = basis(n, 2);
    (0..=n).map(|k| (0..b.len()).filter(|&i| b[i].component(0).size() == k).collect()).collect()
}

/// Block Gauss factorization `R = U^{-1} S` with `U` block lower unipotent
/// and `S` block upper triangular for the first-factor degree grading,
/// blocks ordered by ascending degree.
pub fn gauss_factorize(block: &RMatrixBlock) -> Result<(Matrix<RatFunc>, Matrix<RatFunc>), Error> {
    if block.side != Side::FullTensor {
        return Err(Error::InvalidParams("Gauss factorization needs a full tensor block".into()));
    }
    let groups = first_factor_blocks(block.degree);
    let r = &block.matrix;
    let sub = |i: usize, j: usize| r.submatrix(&groups[i], &groups[j]);
    let g = groups.len();
    let mut l: Vec<Vec<Option<Matrix<RatFunc>>>> = vec![vec![None; g]; g];
    let mut s: Vec<Vec<Option<Matrix<RatFunc>>>> = vec![vec![None; g]; g];
    for k in 0..g {
        for j in k..g {
            let mut v = sub(k, j);
            for i in 0..k {
                v = v.sub(&l[k][i].as_ref().unwrap().mul_common_den(s[i][j].as_ref().unwrap()));
            }
            s[k][j] = Some(v);
        }
        let skk_inv = s[k][k].as_ref().unwrap().inverse().ok_or(Error::Singular)?;
        for j in k + 1..g {
            let mut v = sub(j, k);
            for i in 0..k {
                v = v.sub(&l[j][i].as_ref().unwrap().mul_common_den(s[i][k].as_ref().unwrap()));
            }
            l[j][k] = Some(v.mul_common_den(&skk_inv));
        }
        l[k][k] = Some(Matrix::identity(groups[k].len()));
    }
    // U = L^{-1} by block forward substitution
    let mut ub: Vec<Vec<Option<Matrix<RatFunc>>>> = vec![vec![None; g]; g];
    for k in 0..g {
        ub[k][k] = Some(Matrix::identity(groups[k].len()));
        for j in k + 1..g {
            let mut v = Matrix::zeros(groups[j].len(), groups[k].len());
            for i in k..j {
                v = v.sub(&l[j][i].as_ref().unwrap().mul_common_den(ub[i][k].as_ref().unwrap()));
            }
            ub[j][k] = Some(v);
        }
    }
    let dim = r.rows();
    let mut u = Matrix::<RatFunc>::zeros(dim, dim);
    let mut upper = Matrix::<RatFunc>::zeros(dim, dim);
    for a in 0..g {
        for b in 0..g {
            for (x, &i) in groups[a].iter().enumerate() {
                for (y, &j) in groups[b].iter().enumerate() {
                    if let Some(m) = &ub[a][b] {
                        u.set(i, j, m.get(x, y).clone());
                    }
                    if let Some(m) = &s[a][b] {
                        upper.set(i, j, m.get(x, y).clone());
                    }
                }
            }
        }
    }
    Ok((u, upper))
}

/// A linear factor `u - (m t1 + n t2)` of a determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeRoot {
    pub m: i64,
    pub n: i64,
}

/// Multiset of lattice roots of numerator and denominator plus the ratio of
/// leading coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct DeterminantFactors {
    pub numerator: Vec<(LatticeRoot, usize)>,
    pub denominator: Vec<(LatticeRoot, usize)>,
    pub leading: Scalar,
}

/// Factors `det` into linear factors at lattice points `m t1 + n t2` with
/// `|m|, |n| ≤ DEGREE_CAP`. Fails if anything is left over.
pub fn factor_over_lattice(det: &RatFunc, p: &Params) -> Result<DeterminantFactors, Error> {
    let cap = DEGREE_CAP as i64;
    let mut cands = Vec::new();
    let mut labels = BTreeMap::new();
    for m in -cap..=cap {
        for n in -cap..=cap {
            let c = Scalar::from(m) * &p.t1 + Scalar::from(n) * &p.t2;
            if labels.contains_key(&c.to_ratio_string()) {
                return Err(Error::InvalidParams("t1, t2 too degenerate to label lattice roots".into()));
            }
            labels.insert(c.to_ratio_string(), LatticeRoot { m, n });
            cands.push(c);
        }
    }
    let split = |poly: &Poly| -> Result<(Vec<(LatticeRoot, usize)>, Scalar), Error> {
        let (roots, rest) = poly.split_roots(&cands);
        if !rest.is_constant() {
            return Err(Error::Reconstruction);
        }
        let mut v: Vec<(LatticeRoot, usize)> = roots.iter().map(|(c, k)| (labels[&c.to_ratio_string()], *k)).collect();
        v.sort();
        Ok((v, rest.coeff(0)))
    };
    let (numerator, ln) = split(det.num())?;
    let (denominator, ld) = split(det.den())?;
    Ok(DeterminantFactors { numerator, denominator, leading: ln / ld })
}

/// Determinant of a block over `Q(u)`: clears denominators column by
/// column, then interpolates the polynomial determinant from values at
/// `1 + Σ_j (column degree)` points.
pub fn block_determinant(m: &Matrix<RatFunc>) -> Result<RatFunc, Error> {
    let n = m.rows();
    let mut cols = Vec::with_capacity(n);
    let mut denom = Poly::one();
    let mut bound = 0usize;
    for j in 0..n {
        let mut c = Poly::one();
        for i in 0..n {
            let d = m.get(i, j).den();
            c = &c * &d.exact_div(&c.gcd(d));
        }
        let col: Vec<Poly> = (0..n)
            .map(|i| {
                let e = m.get(i, j);
                &e.num().clone() * &c.exact_div(e.den())
            })
            .collect();
        bound += col.iter().filter_map(Poly::degree).max().unwrap_or(0);
        denom = &denom * &c;
        cols.push(col);
    }
    let poly = Matrix::from_fn(n, n, |i, j| PolyEntry(cols[j][i].clone()));
    let mut xs = Vec::with_capacity(bound + 1);
    let mut ys = Vec::with_capacity(bound + 1);
    for k in 1..=bound as i64 + 1 {
        let x = Scalar::new(if k % 2 == 0 { k } else { -k }, 5);
        ys.push(poly.eval(&x).determinant());
        xs.push(x);
    }
    Ok(RatFunc::new(crate::linalg::interpolate(&xs, &ys), denom))
}

/// `det R` on the degree-`n` part of `F ⊗ F` from the reflection blocks:
/// in the `α^±` basis the block is diagonal in the `α^+` label, so the
/// determinant is `∏_k det(R^-_k)^{p(n-k)}`.
pub fn full_determinant(minus: &[Matrix<RatFunc>], n: usize) -> RatFunc {
    let mut d = RatFunc::one();
    for (k, block) in minus.iter().enumerate().take(n + 1) {
        let mult = partitions_of(n - k).len() as u32;
        d = d.mul(&block.determinant().pow(mult));
    }
    d
}

/// Acts with a degree-`n` block of `R` on the factors `(i, j)` of the
/// rank-3 Fock space at degree `d`, the block evaluated at `u`.
pub fn r_on_triple(blocks: &[Matrix<Scalar>], i: usize, j: usize, d: usize) -> Matrix<Scalar> {
    let b3 = basis(d, 3);
    let index: BTreeMap<&MultiPartition, usize> = b3.iter().enumerate().map(|(k, b)| (b, k)).collect();
    let b2: Vec<Vec<MultiPartition>> = (0..=d).map(|k| basis(k, 2)).collect();
    let mut out = Matrix::zeros(b3.len(), b3.len());
    for (col, b) in b3.iter().enumerate() {
        let pair = MultiPartition(vec![b.component(i).clone(), b.component(j).clone()]);
        let k = pair.degree();
        let c = b2[k].iter().position(|x| *x == pair).unwrap();
        for (row, tgt) in b2[k].iter().enumerate() {
            let v = blocks[k].get(row, c);
            if v.is_zero() {
                continue;
            }
            let mut comps: Vec<Partition> = b.0.clone();
            comps[i] = tgt.component(0).clone();
            comps[j] = tgt.component(1).clone();
            out.set(index[&MultiPartition(comps)], col, v.clone());
        }
    }
    out
}

/// Evaluates full blocks at `u`; `None` at a pole.
pub fn eval_blocks(blocks: &[Matrix<RatFunc>], u: &Scalar) -> Option<Vec<Matrix<Scalar>>> {
    blocks.iter().map(|b| b.eval(u)).collect()
}

/// Coefficients of `u^{-1}, u^{-2}, u^{-3}` in `log R` at `u = ∞`, for a
/// block with `R = 1 + O(1/u)`.
pub fn log_coefficients(r: &Matrix<RatFunc>) -> [Matrix<Scalar>; 3] {
    let (r1, r2, r3) = (r.coeff_at_infinity(1), r.coeff_at_infinity(2), r.coeff_at_infinity(3));
    let half = Scalar::new(1, 2);
    let l2 = r2.sub(&r1.mul(&r1).scale(&half));
    let l3 = r3.sub(&r1.mul(&r2).add(&r2.mul(&r1)).scale(&half)).add(&r1.mul(&r1).mul(&r1).scale(&Scalar::new(1, 3)));
    [r1, l2, l3]
}

/// The third logarithmic coefficient predicted from the charges:
/// `(1/12)∫:(α^-)^4:(ħ) - (1/12)∫:(α^-)^2:(ħe) - (1/12)∫:(∂α^-)^2:(2ħ³ + ħe)`.
pub fn predicted_r3(p: &Params) -> crate::fock::GradedOperator<Scalar> {
    use crate::vertexops::{minus_field, Charge, Slot};
    let h = p.hbar();
    let e = p.e();
    let charge = |k: usize, slot: Slot, g: Scalar| {
        let mut c = Charge::<Scalar>::new(2, p.tau1(), p.e()).insertion(g);
        for _ in 0..k {
            c = c.slot(slot, minus_field());
        }
        c.build()
    };
    let twelfth = Scalar::new(1, 12);
    let mut m = crate::fock::ModeOperator::new(2, p.tau1());
    m.extend(&charge(4, Slot::Plain, h.clone()), &twelfth);
    m.extend(&charge(2, Slot::Plain, &h * &e), &-twelfth.clone());
    m.extend(&charge(2, Slot::Deriv, Scalar::from(2) * &h * &h * &h + &h * &e), &-twelfth);
    m.to_operator(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::sample_params;

    fn u() -> RatFunc {
        RatFunc::u()
    }

    fn c(x: Scalar) -> RatFunc {
        RatFunc::constant(x)
    }

    #[test]
    fn degree_zero_and_one() {
        let p = sample_params(31, 2).unwrap();
        let spec = symbolic_minus_boson(&p);
        let r0 = reflection_block(0, &spec, Method::Bareiss).unwrap();
        assert!(r0.matrix.is_identity());
        let r1 = reflection_block(1, &spec, Method::Bareiss).unwrap();
        // (η + κ)/(η - κ) with η = u/2, κ = ħ/2
        let h = c(p.hbar());
        let expect = &(&u() + &h) / &(&u() - &h);
        assert_eq!(*r1.matrix.get(0, 0), expect);
    }

    #[test]
    fn degree_two_determinant_hand_derived() {
        let p = sample_params(32, 2).unwrap();
        let spec = symbolic_minus_boson(&p);
        let r2 = reflection_block(2, &spec, Method::Bareiss).unwrap();
        let s = &p.t1 + &p.t2;
        let lin = |x: Scalar| &u() - &c(x);
        let num = lin(s.clone()).mul(&lin(&p.t1 + Scalar::from(2) * &p.t2)).mul(&lin(Scalar::from(2) * &p.t1 + &p.t2));
        let den = lin(-s).mul(&lin(-(&p.t1 + Scalar::from(2) * &p.t2))).mul(&lin(-(Scalar::from(2) * &p.t1 + &p.t2)));
        assert_eq!(r2.matrix.determinant(), &num / &den);
    }

    #[test]
    fn bareiss_and_interpolation_agree() {
        let p = sample_params(33, 2).unwrap();
        let spec = symbolic_minus_boson(&p);
        for n in 0..=3 {
            let a = reflection_block(n, &spec, Method::Bareiss).unwrap();
            let b = reflection_block(n, &spec, Method::Interpolate).unwrap();
            assert_eq!(a, b, "degree {n}");
        }
    }

    #[test]
    fn double_flip_is_sign_matrix() {
        let p = sample_params(34, 2).unwrap();
        let spec = symbolic_minus_boson(&p);
        let flipped = BosonSpec { tau1: spec.tau1.clone(), eta: spec.eta.neg(), kappa: -spec.kappa.clone() };
        for n in 0..=3 {
            let m = intertwiner_block(n, &spec, &flipped, Method::Bareiss).unwrap();
            let parts = partitions_of(n);
            let expect = Matrix::from_fn(parts.len(), parts.len(), |i, j| {
                if i == j {
                    c(Scalar::from(if parts[i].len() % 2 == 0 { 1 } else { -1 }))
                } else {
                    RatFunc::zero()
                }
            });
            assert_eq!(m, expect);
        }
    }

    #[test]
    fn full_block_degree_one() {
        let p = sample_params(35, 2).unwrap();
        let r = full_r_block(&p, 1).unwrap().matrix;
        let at0 = r.eval(&Scalar::from(0)).unwrap();
        assert_eq!(at0, swap_matrix(1));
        assert!(r.coeff_at_infinity(0).is_identity());
        // vacuum row: u/(u - ħ)
        let expect = &u() / &(&u() - &c(p.hbar()));
        assert_eq!(*r.get(1, 1), expect);
    }

    #[test]
    fn unitarity() {
        let p = sample_params(36, 2).unwrap();
        for n in 0..=3 {
            let r = full_r_block(&p, n).unwrap().matrix;
            let sw = swap_matrix(n).to_ratfunc();
            let back = sw.mul(&r.rescale_var(&Scalar::from(-1))).mul(&sw);
            assert!(r.mul(&back).is_identity(), "degree {n}");
        }
    }

    #[test]
    fn gauss_vacuum_block() {
        let p = sample_params(37, 2).unwrap();
        let block = full_r_block(&p, 2).unwrap();
        let (uu, s) = gauss_factorize(&block).unwrap();
        assert_eq!(uu.inverse().unwrap().mul(&s), block.matrix);
        let g = first_factor_blocks(2);
        assert_eq!(s.submatrix(&g[0], &g[0]), block.matrix.submatrix(&g[0], &g[0]));
    }

    #[test]
    fn lattice_factorization_degree_one() {
        let p = sample_params(38, 2).unwrap();
        let r = full_r_block(&p, 1).unwrap().matrix;
        let f = factor_over_lattice(&block_determinant(&r).unwrap(), &p).unwrap();
        assert_eq!(f.numerator, vec![(LatticeRoot { m: 1, n: 1 }, 1)]);
        assert_eq!(f.denominator, vec![(LatticeRoot { m: -1, n: -1 }, 1)]);
        assert_eq!(f.leading, Scalar::from(1));
        assert_eq!(block_determinant(&r).unwrap(), r.determinant());
    }

    #[test]
    fn expansion_at_infinity() {
        use crate::fock::operator_matrix;
        use crate::vertexops::{minus_field, phi_n};
        let p = sample_params(41, 2).unwrap();
        let h = p.hbar();
        let blocks = full_r_blocks(&p, 3).unwrap();
        let phi2 = phi_n(&p, 2, &minus_field()).unwrap();
        let phi3 = phi_n(&p, 3, &minus_field()).unwrap();
        let r3 = predicted_r3(&p);
        for n in 0..=3 {
            let r = &blocks[n];
            let p2 = operator_matrix(&phi2, n).unwrap();
            let p3 = operator_matrix(&phi3, n).unwrap();
            assert_eq!(r.coeff_at_infinity(1), p2.scale(&h));
            let half_h2 = &h * &h * Scalar::new(1, 2);
            assert_eq!(r.coeff_at_infinity(2), p3.scale(&h).add(&p2.mul(&p2).scale(&half_h2)));
            let [l1, l2, l3] = log_coefficients(r);
            assert_eq!(l1, p2.scale(&h));
            assert_eq!(l2, p3.scale(&h));
            assert_eq!(l3, operator_matrix(&r3, n).unwrap());
        }
    }

    #[test]
    fn yang_baxter_at_a_point() {
        let p = sample_params(42, 2).unwrap();
        let blocks = full_r_blocks(&p, 3).unwrap();
        let (u, v) = (Scalar::new(7, 3), Scalar::new(-5, 11));
        let bu = eval_blocks(&blocks, &u).unwrap();
        let bv = eval_blocks(&blocks, &v).unwrap();
        let buv = eval_blocks(&blocks, &(&u + &v)).unwrap();
        for d in 0..=3 {
            let l = r_on_triple(&bu, 0, 1, d).mul(&r_on_triple(&buv, 0, 2, d)).mul(&r_on_triple(&bv, 1, 2, d));
            let r = r_on_triple(&bv, 1, 2, d).mul(&r_on_triple(&buv, 0, 2, d)).mul(&r_on_triple(&bu, 0, 1, d));
            assert_eq!(l, r, "degree {d}");
        }
    }

    #[test]
    fn determinant_routes_agree() {
        let p = sample_params(44, 2).unwrap();
        let minus = reflection_blocks(&p, 3).unwrap();
        let full = full_r_blocks(&p, 3).unwrap();
        for n in 0..=3 {
            let d = full_determinant(&minus, n);
            assert_eq!(d, block_determinant(&full[n]).unwrap());
            for x in [Scalar::new(3, 7), Scalar::new(-11, 2)] {
                assert_eq!(d.eval(&x).unwrap(), full[n].eval(&x).unwrap().determinant());
            }
        }
    }
}
