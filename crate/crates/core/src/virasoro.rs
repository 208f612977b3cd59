//! Feigin–Fuchs Virasoro modes of a single boson and the screening
//! operator between two-factor Fock spaces.
//!
//! For a boson `b` with `[b_k, b_{-k}] = k·τ_b(1)` and zero mode
//! `b_0 = -η·τ_b(1)`,
//!
//! ```text
//! L_n(g, κ) = g·( (1/(2τ_b)) Σ_{a+c=n} :b_a b_c:  -  n κ b_n )  -  ½ g τ_b κ² δ_{n,0}
//! ```
//!
//! so that `L_0 vac = ½ τ_b(g(η² - κ²)) vac` and the central charge is
//! `1 - 12 κ² τ_b(1)`.

use crate::fock::{GradedOperator, ModeOperator};
use crate::partitions::partitions_of;
use crate::scalar::{Field, Params, Scalar, DEGREE_CAP};
use crate::vertexops::{minus_field, Charge, Slot};
use crate::Error;

/// A single free boson with pairing `tau1`, lowest weight `eta` and
/// background charge `kappa`.
#[derive(Clone, Debug, PartialEq)]
pub struct BosonSpec<F> {
    pub tau1: Scalar,
    pub eta: F,
    pub kappa: Scalar,
}

impl<F: Field> BosonSpec<F> {
    pub fn new(tau1: Scalar, eta: F, kappa: Scalar) -> Result<Self, Error> {
        if tau1.is_zero() {
            return Err(Error::InvalidParams("boson pairing τ(1) must be nonzero".into()));
        }
        Ok(BosonSpec { tau1, eta, kappa })
    }

    /// `b_0 = -η τ_b(1)`.
    pub fn zero_mode(&self) -> F {
        self.eta.scale(&-self.tau1.clone())
    }

    /// `c = 1 - 12 κ² τ_b(1)`.
    pub fn central_charge(&self) -> Scalar {
        Scalar::from(1) - Scalar::from(12) * &self.kappa * &self.kappa * &self.tau1
    }

    pub fn with_kappa(&self, kappa: Scalar) -> Self {
        BosonSpec { kappa, ..self.clone() }
    }
}

/// The geometric minus-boson `α^- = α^{(1)} - α^{(2)}` of a rank-2 space:
/// pairing `2τ(1)`, `η = u/2`, `κ = ħ/2`.
pub fn minus_boson(p: &Params) -> BosonSpec<Scalar> {
    BosonSpec { tau1: Scalar::from(2) * p.tau1(), eta: p.u() * Scalar::new(1, 2), kappa: p.hbar() * Scalar::new(1, 2) }
}

/// Where the boson lives: `b = Σ_i field_i α^{(i)}` on a rank-`rank` space
/// whose factors have pairing `factor_tau1`.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub rank: usize,
    pub field: Vec<Scalar>,
    pub factor_tau1: Scalar,
}

impl Embedding {
    /// The boson is the only factor.
    pub fn single<F>(spec: &BosonSpec<F>) -> Self {
        Embedding { rank: 1, field: vec![Scalar::from(1)], factor_tau1: spec.tau1.clone() }
    }

    /// `α^-` inside the geometric rank-2 space.
    pub fn minus(p: &Params) -> Self {
        Embedding { rank: 2, field: minus_field(), factor_tau1: p.tau1() }
    }

    fn pairing(&self) -> Scalar {
        self.field.iter().map(|f| f * f).fold(Scalar::from(0), |a, b| a + b) * &self.factor_tau1
    }
}

/// Mode expansion of `L_n(g·1, κ)`, exact on inputs of degree up to
/// `2·DEGREE_CAP` so that products of two modes are exact on the capped
/// space.
pub fn virasoro_modes<F: Field>(
    n: i64,
    g: &Scalar,
    spec: &BosonSpec<F>,
    emb: &Embedding,
) -> Result<ModeOperator<F>, Error> {
    if n.unsigned_abs() as usize > DEGREE_CAP {
        return Err(Error::OutOfRange(format!("|n| = {} > {DEGREE_CAP}", n.abs())));
    }
    if emb.pairing() != spec.tau1 {
        return Err(Error::InvalidParams("embedding pairing differs from the boson's τ(1)".into()));
    }
    let lead = emb.field.iter().position(|f| !f.is_zero()).expect("zero field");
    let mut z = vec![F::zero(); emb.rank];
    z[lead] = spec.zero_mode().scale(&emb.field[lead].recip());

    let quad = Charge::<F>::new(emb.rank, emb.factor_tau1.clone(), spec.tau1.recip())
        .slot(Slot::Plain, emb.field.clone())
        .slot(Slot::Plain, emb.field.clone())
        .insertion(g.clone())
        .mode(n)
        .reach(2 * DEGREE_CAP)
        .zero_modes(z);
    let mut m = ModeOperator::new(emb.rank, emb.factor_tau1.clone());
    m.extend(&quad.build(), &F::from_scalar(&Scalar::new(1, 2)));
    if n != 0 {
        let c = -(Scalar::from(n) * &spec.kappa * g);
        for (i, f) in emb.field.iter().enumerate() {
            let cf = F::from_scalar(&(&c * f));
            if n > 0 {
                m.push(cf, vec![], vec![(i, n as usize)]);
            } else {
                m.push(cf, vec![(i, (-n) as usize)], vec![]);
            }
        }
    } else {
        let c = -(Scalar::new(1, 2) * g * &spec.tau1 * &spec.kappa * &spec.kappa);
        m.push(F::from_scalar(&c), vec![], vec![]);
    }
    Ok(m)
}

/// `L_n(g·1, κ)` as an operator.
pub fn virasoro_mode<F: Field>(
    n: i64,
    g: &Scalar,
    spec: &BosonSpec<F>,
    emb: &Embedding,
) -> Result<GradedOperator<F>, Error> {
    Ok(virasoro_modes(n, g, spec, emb)?.to_operator(-n))
}

/// The central term of `[L_n(g1), L_{-n}(g2)]`.
pub fn central_term(n: i64, g1: &Scalar, g2: &Scalar, tau1: &Scalar, kappa: &Scalar) -> Scalar {
    g1 * g2 * (Scalar::from(1) - Scalar::from(12) * kappa * kappa * tau1) * Scalar::new(n * n * n - n, 12)
}

/// Framing weights `(a_1, a_2)` for which the screening of index `n` is
/// integral, keeping `a_2`: `a_1 - a_2 = n t1 - t2`.
pub fn screening_source(p: &Params, n: i64) -> Params {
    let a1 = &p.a[1] + Scalar::from(n) * &p.t1 - &p.t2;
    p.with_a(vec![a1, p.a[1].clone()])
}

/// Framing weights of the target of the screening: `(a_1, a_2 - t2)` with
/// `a_1 = a_2 + n t1`.
pub fn screening_target(p: &Params, n: i64) -> Params {
    let a1 = &p.a[1] + Scalar::from(n) * &p.t1;
    p.with_a(vec![a1, &p.a[1] - &p.t2])
}

/// The integral mode `∫ z^{-t2/t1} V_{1/t1}(z)` on the rank-2 space, for
/// parameters with `a_1 - a_2 = n t1 - t2`: the `z^0` coefficient of
/// `z^{-n} E_+(z) E_-(z)` with
/// `E_± = exp(∓ μ e Σ_{k>0} α^-_{∓k}(1) z^{±k} / (∓k))`, `μ = 1/t1`,
/// normalized so that the vacuum-to-vacuum coefficient for `n = 0` is 1.
/// Only input degrees up to `max_degree` are represented.
pub fn screening_mode(p: &Params, n: i64, max_degree: usize) -> Result<GradedOperator<Scalar>, Error> {
    if p.rank() != 2 {
        return Err(Error::InvalidParams("screening needs rank 2".into()));
    }
    let expect = Scalar::from(n) * &p.t1 - &p.t2;
    if p.u() != expect {
        return Err(Error::InvalidParams(format!("a1 - a2 = {} but n t1 - t2 = {expect}", p.u())));
    }
    if max_degree > DEGREE_CAP || n.unsigned_abs() as usize > DEGREE_CAP {
        return Err(Error::OutOfRange("screening degrees exceed DEGREE_CAP".into()));
    }
    // μ e = (1/t1)(-t1 t2) = -t2
    let mu_e = -p.t2.clone();
    let field = minus_field();
    let mut m = ModeOperator::new(2, p.tau1());
    for l in 0..=max_degree {
        let j = l as i64 + n;
        if j < 0 || j as usize > DEGREE_CAP {
            continue;
        }
        let plus = exp_coefficient(j as usize, &mu_e, &field);
        let minus = exp_coefficient(l, &-mu_e.clone(), &field);
        for (cp, cr) in &plus {
            for (cm, an) in &minus {
                m.push(cp * cm, cr.clone(), an.clone());
            }
        }
    }
    Ok(m.to_operator(n))
}

/// `[z^j] exp(c Σ_k b_{∓k} z^k / k)` for a field `b`, as a list of
/// coefficient and factor-resolved mode multisets.
fn exp_coefficient(j: usize, c: &Scalar, field: &[Scalar]) -> Vec<(Scalar, Vec<(usize, usize)>)> {
    let mut out = Vec::new();
    for lam in partitions_of(j) {
        let w = c.powi(lam.len() as i32) / Scalar::from(lam.z() as i64);
        let mut partial: Vec<(Scalar, Vec<(usize, usize)>)> = vec![(w, Vec::new())];
        for &k in lam.parts() {
            let mut next = Vec::new();
            for (x, modes) in &partial {
                for (i, f) in field.iter().enumerate() {
                    if f.is_zero() {
                        continue;
                    }
                    let mut modes = modes.clone();
                    modes.push((i, k));
                    next.push((x * f, modes));
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{basis, operator_matrix, FockVector};
    use crate::scalar::sample_params;

    fn spec(seed: u64) -> BosonSpec<Scalar> {
        let p = sample_params(seed, 2).unwrap();
        BosonSpec::new(&p.t1 / &p.t2, p.a[0].clone(), p.a[1].clone()).unwrap()
    }

    #[test]
    fn positive_modes_kill_vacuum() {
        let s = spec(1);
        let emb = Embedding::single(&s);
        let vac = FockVector::vacuum(1);
        for n in 1..=4 {
            assert!(virasoro_mode(n, &Scalar::from(1), &s, &emb).unwrap().apply(&vac).is_zero());
        }
    }

    #[test]
    fn l0_vacuum_weight() {
        let s = spec(2);
        let emb = Embedding::single(&s);
        let g = Scalar::new(3, 5);
        let l0 = virasoro_mode(0, &g, &s, &emb).unwrap();
        let w = Scalar::new(1, 2) * &s.tau1 * &g * (&s.eta * &s.eta - &s.kappa * &s.kappa);
        assert_eq!(l0.apply(&FockVector::vacuum(1)), FockVector::vacuum(1).scale(&w));
        let s0 = BosonSpec::new(s.tau1.clone(), s.kappa.clone(), s.kappa.clone()).unwrap();
        assert!(virasoro_mode(0, &Scalar::from(1), &s0, &emb).unwrap().apply(&FockVector::vacuum(1)).is_zero());
    }

    #[test]
    fn central_term_on_vacuum() {
        let s = spec(3);
        let emb = Embedding::single(&s);
        let one = Scalar::from(1);
        let l2 = virasoro_mode(2, &one, &s, &emb).unwrap();
        let lm2 = virasoro_mode(-2, &one, &s, &emb).unwrap();
        let v = l2.compose(&lm2).apply(&FockVector::vacuum(1));
        let l0 = virasoro_mode(0, &one, &s, &emb).unwrap().apply(&FockVector::vacuum(1));
        // [L_2, L_{-2}] vac = 4 L_0 vac + c/2 vac
        let expect = l0
            .scale(&Scalar::from(4))
            .add(&FockVector::vacuum(1).scale(&central_term(2, &one, &one, &s.tau1, &s.kappa)));
        assert_eq!(v, expect);
        assert_eq!(central_term(2, &one, &one, &s.tau1, &s.kappa), s.central_charge() * Scalar::new(1, 2));
    }

    #[test]
    fn minus_boson_matches_single_boson_on_l1() {
        let p = sample_params(4, 2).unwrap();
        let s = minus_boson(&p);
        let l = virasoro_mode(-1, &Scalar::from(1), &s, &Embedding::minus(&p)).unwrap();
        let v = l.apply(&FockVector::vacuum(2));
        // L_{-1} vac = (κ - η) α^-_{-1} vac
        let c = &s.kappa - &s.eta;
        let b1 = basis(1, 2);
        assert_eq!(v.get(&b1[0]), c);
        assert_eq!(v.get(&b1[1]), -c);
    }

    #[test]
    fn screening_kills_vacuum_for_negative_index() {
        let p = sample_params(5, 2).unwrap();
        for n in [-1, -2] {
            let src = screening_source(&p, n);
            let s = screening_mode(&src, n, 3).unwrap();
            assert!(s.apply(&FockVector::vacuum(2)).is_zero());
        }
        assert!(screening_mode(&p, 0, 2).is_err());
    }

    #[test]
    fn screening_vacuum_coefficient() {
        let p = sample_params(6, 2).unwrap();
        let src = screening_source(&p, 0);
        let s = screening_mode(&src, 0, 2).unwrap();
        assert_eq!(s.apply(&FockVector::vacuum(2)), FockVector::vacuum(2));
        let src = screening_source(&p, 1);
        let s = screening_mode(&src, 1, 2).unwrap();
        let v = s.apply(&FockVector::vacuum(2));
        // [z^1] E_+ = -t2 α^-_{-1}
        let b1 = basis(1, 2);
        assert_eq!(v.get(&b1[0]), -p.t2.clone());
        assert_eq!(v.get(&b1[1]), p.t2.clone());
    }

    #[test]
    fn screening_commutes_with_plus_modes() {
        let p = sample_params(7, 2).unwrap();
        let src = screening_source(&p, 1);
        let s = screening_mode(&src, 1, 4).unwrap();
        let one = crate::fock::Insertion::one();
        for k in [1i64, 2] {
            let bp = crate::fock::alpha_pm(&src, 1, k, &one).unwrap();
            let c = bp.compose(&s).sub(&s.compose(&bp));
            for d in k as usize..=3 {
                assert!(operator_matrix(&c, d).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn screening_intertwines_virasoro() {
        let p = sample_params(9, 2).unwrap();
        for n in [-1i64, 0, 1, 2] {
            let (src, tgt) = (screening_source(&p, n), screening_target(&p, n));
            let s = screening_mode(&src, n, 6).unwrap();
            let (ls, lt) = (minus_boson(&src), minus_boson(&tgt));
            for m in -2i64..=2 {
                let one = Scalar::from(1);
                let a = s.compose(&virasoro_mode(m, &one, &ls, &Embedding::minus(&src)).unwrap());
                let b = virasoro_mode(m, &one, &lt, &Embedding::minus(&tgt)).unwrap().compose(&s);
                for d in m.max(m - n).max(0) as usize..=3 {
                    assert_eq!(operator_matrix(&a, d).unwrap(), operator_matrix(&b, d).unwrap(), "n={n} m={m} d={d}");
                }
            }
        }
    }
}
