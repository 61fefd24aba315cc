//! Finite weighted measure spaces and scalar functions on them.
//!
//! Everything downstream integrates pointwise quantities against a fixed
//! list of strictly positive atom weights, so a space is just that list.
//! Functions are one scalar per atom, real or complex; every norm and
//! pairing reduces to a weighted sum.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance for equality assertions on O(1) quantities.
pub const DEFAULT_REL_TOL: f64 = 1e-10;

/// Relative slack granted to inequality assertions to absorb rounding.
pub const INEQ_SLACK: f64 = 1e-12;

/// Conjugate-pair operations reject p above this cap; q = p/(p-1)
/// explodes as p -> 1 and large exponents destabilize powf.
pub const MAX_CONJUGATE_P: f64 = 1024.0;

/// `true` when a and b agree to relative tolerance `rel` (absolute near zero).
pub fn approx_eq(a: f64, b: f64, rel: f64) -> bool {
    let scale = a.abs().max(b.abs()).max(1.0);
    (a - b).abs() <= rel * scale
}

/// `true` when `lo <= hi` up to `INEQ_SLACK` relative to `scale`.
pub fn leq_with_slack(lo: f64, hi: f64, scale: f64) -> bool {
    lo <= hi + INEQ_SLACK * scale.abs().max(1.0)
}

/// The sign convention used throughout: sign(0) := 1, so |sign z| = 1
/// for every z and multiplying by a sign never changes magnitudes.
pub fn sign_or_one(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Complex sign e^{i arg z} with sign(0) := 1.
pub fn csign_or_one(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        z / r
    }
}

/// A finite measure space: strictly positive atom masses.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSpace {
    weights: Vec<f64>,
    total_mass: f64,
}

impl MeasureSpace {
    /// Builds a space from atom weights. Every weight must be finite and
    /// strictly positive; at least one atom is required.
    pub fn new(weights: Vec<f64>) -> Result<Arc<Self>> {
        if weights.is_empty() {
            return Err(Error::EmptySpace);
        }
        for (index, &w) in weights.iter().enumerate() {
            if !w.is_finite() || w <= 0.0 {
                return Err(Error::BadWeight { index, value: w });
            }
        }
        let total_mass = weights.iter().sum();
        Ok(Arc::new(MeasureSpace {
            weights,
            total_mass,
        }))
    }

    /// Uniform weights 1/n on n atoms.
    pub fn uniform(n_atoms: usize) -> Result<Arc<Self>> {
        if n_atoms == 0 {
            return Err(Error::EmptySpace);
        }
        Self::new(vec![1.0 / n_atoms as f64; n_atoms])
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn atoms(&self) -> usize {
        self.weights.len()
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    /// Total mass equals 1 within 1e-12.
    pub fn is_probability(&self) -> bool {
        (self.total_mass - 1.0).abs() <= 1e-12
    }

    pub(crate) fn require_probability(&self) -> Result<()> {
        if self.is_probability() {
            Ok(())
        } else {
            Err(Error::NotProbabilitySpace {
                total_mass: self.total_mass,
            })
        }
    }
}

/// Scalar values of a function, one per atom.
#[derive(Debug, Clone, PartialEq)]
pub enum Values {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

impl Values {
    fn len(&self) -> usize {
        match self {
            Values::Real(v) => v.len(),
            Values::Complex(v) => v.len(),
        }
    }
}

/// A simple (finitely supported) function: one scalar per atom of its space.
#[derive(Debug, Clone, PartialEq)]
pub struct SimpleFunction {
    space: Arc<MeasureSpace>,
    values: Values,
}

impl SimpleFunction {
    /// Real-valued function on `space`.
    pub fn real(space: &Arc<MeasureSpace>, values: Vec<f64>) -> Result<Self> {
        if values.len() != space.atoms() {
            return Err(Error::LengthMismatch {
                expected: space.atoms(),
                got: values.len(),
            });
        }
        for (index, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteValue { index });
            }
        }
        Ok(SimpleFunction {
            space: Arc::clone(space),
            values: Values::Real(values),
        })
    }

    /// Complex-valued function on `space`.
    pub fn complex(space: &Arc<MeasureSpace>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != space.atoms() {
            return Err(Error::LengthMismatch {
                expected: space.atoms(),
                got: values.len(),
            });
        }
        for (index, v) in values.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFiniteValue { index });
            }
        }
        Ok(SimpleFunction {
            space: Arc::clone(space),
            values: Values::Complex(values),
        })
    }

    pub fn space(&self) -> &Arc<MeasureSpace> {
        &self.space
    }

    pub fn values(&self) -> &Values {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_real(&self) -> bool {
        matches!(self.values, Values::Real(_))
    }

    /// Real values, or an error for complex input.
    pub fn real_values(&self) -> Result<&[f64]> {
        match &self.values {
            Values::Real(v) => Ok(v),
            Values::Complex(_) => Err(Error::UnsupportedCase(
                "this operation accepts only real-valued functions",
            )),
        }
    }

    /// Values as complex (real functions get zero imaginary parts).
    pub fn complex_values(&self) -> Vec<Complex64> {
        match &self.values {
            Values::Real(v) => v.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            Values::Complex(v) => v.clone(),
        }
    }

    /// |f_i| at atom i.
    pub fn abs(&self, i: usize) -> f64 {
        match &self.values {
            Values::Real(v) => v[i].abs(),
            Values::Complex(v) => v[i].norm(),
        }
    }

    /// Pointwise moduli as a new real function.
    pub fn moduli(&self) -> SimpleFunction {
        let vals = (0..self.len()).map(|i| self.abs(i)).collect();
        SimpleFunction {
            space: Arc::clone(&self.space),
            values: Values::Real(vals),
        }
    }

    /// Pointwise |f|^e as a real function (moduli are taken first).
    pub fn abs_pow(&self, e: f64) -> SimpleFunction {
        let vals = (0..self.len()).map(|i| self.abs(i).powf(e)).collect();
        SimpleFunction {
            space: Arc::clone(&self.space),
            values: Values::Real(vals),
        }
    }

    pub fn abs_max(&self) -> f64 {
        (0..self.len()).map(|i| self.abs(i)).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        (0..self.len()).all(|i| self.abs(i) == 0.0)
    }

    /// Pointwise sum; both functions must share a space.
    pub fn add(&self, other: &SimpleFunction) -> Result<SimpleFunction> {
        same_space(self, other)?;
        self.combine(other, |a, b| a + b)
    }

    /// Pointwise difference.
    pub fn sub(&self, other: &SimpleFunction) -> Result<SimpleFunction> {
        same_space(self, other)?;
        self.combine(other, |a, b| a - b)
    }

    /// Scales every value by a real constant.
    pub fn scale(&self, c: f64) -> SimpleFunction {
        let values = match &self.values {
            Values::Real(v) => Values::Real(v.iter().map(|x| c * x).collect()),
            Values::Complex(v) => Values::Complex(v.iter().map(|z| c * z).collect()),
        };
        SimpleFunction {
            space: Arc::clone(&self.space),
            values,
        }
    }

    fn combine(
        &self,
        other: &SimpleFunction,
        op: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<SimpleFunction> {
        let values = match (&self.values, &other.values) {
            (Values::Real(a), Values::Real(b)) => Values::Real(
                a.iter()
                    .zip(b)
                    .map(|(&x, &y)| {
                        op(Complex64::new(x, 0.0), Complex64::new(y, 0.0)).re
                    })
                    .collect(),
            ),
            _ => {
                let a = self.complex_values();
                let b = other.complex_values();
                Values::Complex(a.iter().zip(&b).map(|(&x, &y)| op(x, y)).collect())
            }
        };
        Ok(SimpleFunction {
            space: Arc::clone(&self.space),
            values,
        })
    }
}

pub(crate) fn same_space(f: &SimpleFunction, g: &SimpleFunction) -> Result<()> {
    if Arc::ptr_eq(&f.space, &g.space) || f.space == g.space {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}

/// Weighted p-norm (Σ w_i |f_i|^p)^{1/p}; p = +∞ gives max |f_i|.
///
/// The sum is evaluated on moduli scaled by their maximum so that large
/// exponents neither overflow nor flush the whole sum to zero.
pub fn norm(f: &SimpleFunction, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::BadExponent {
            p,
            range: "[1, +inf]",
        });
    }
    let m = f.abs_max();
    if m == 0.0 {
        return Ok(0.0);
    }
    if p.is_infinite() {
        return Ok(m);
    }
    let w = f.space.weights();
    let mut sum = 0.0;
    for i in 0..f.len() {
        let r = f.abs(i) / m;
        if r > 0.0 {
            sum += w[i] * r.powf(p);
        }
    }
    Ok(m * sum.powf(1.0 / p))
}

/// Bilinear pairing (f, g) = Σ w_i f_i g_i (no conjugation).
pub fn inner(f: &SimpleFunction, g: &SimpleFunction) -> Result<Complex64> {
    same_space(f, g)?;
    let w = f.space.weights();
    match (&f.values, &g.values) {
        (Values::Real(a), Values::Real(b)) => {
            let mut s = 0.0;
            for i in 0..a.len() {
                s += w[i] * a[i] * b[i];
            }
            Ok(Complex64::new(s, 0.0))
        }
        _ => {
            let a = f.complex_values();
            let b = g.complex_values();
            let mut s = Complex64::new(0.0, 0.0);
            for i in 0..a.len() {
                s += w[i] * a[i] * b[i];
            }
            Ok(s)
        }
    }
}

/// Σ w_i |f_i| |g_i| = ‖fg‖_1, the pairing of moduli.
pub fn inner_abs(f: &SimpleFunction, g: &SimpleFunction) -> Result<f64> {
    same_space(f, g)?;
    let w = f.space.weights();
    let mut s = 0.0;
    for i in 0..f.len() {
        s += w[i] * f.abs(i) * g.abs(i);
    }
    Ok(s)
}

/// Var(|f|/‖f‖_2) = 1 - (‖f‖_1/‖f‖_2)^2 on a probability space.
///
/// Zero exactly when |f| is constant across atoms; always in [0, 1].
pub fn normalized_variance(f: &SimpleFunction) -> Result<f64> {
    f.space.require_probability()?;
    let n2 = norm(f, 2.0)?;
    if n2 == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let n1 = norm(f, 1.0)?;
    let r = n1 / n2;
    Ok((1.0 - r * r).clamp(0.0, 1.0))
}

/// A validated conjugate pair (p, q) with 1/p + 1/q = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugateExponents {
    p: f64,
    q: f64,
}

impl ConjugateExponents {
    /// q is always derived as p/(p-1); p must lie in (1, 1024].
    pub fn from_p(p: f64) -> Result<Self> {
        if !p.is_finite() || p <= 1.0 || p > MAX_CONJUGATE_P {
            return Err(Error::BadExponent {
                p,
                range: "(1, 1024]",
            });
        }
        let q = p / (p - 1.0);
        debug_assert!((1.0 / p + 1.0 / q - 1.0).abs() <= 1e-14);
        Ok(ConjugateExponents { p, q })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn min(&self) -> f64 {
        self.p.min(self.q)
    }

    pub fn max(&self) -> f64 {
        self.p.max(self.q)
    }

    /// The pair with the roles of p and q exchanged.
    pub fn swapped(&self) -> Self {
        ConjugateExponents {
            p: self.q,
            q: self.p,
        }
    }
}

/// Conjugate exponent pair for p in (1, 1024].
pub fn conjugate(p: f64) -> Result<ConjugateExponents> {
    ConjugateExponents::from_p(p)
}

/// Midpoint-rule discretization of a pointwise rule on [0, 1]:
/// atoms at (i + 1/2)/n with equal weights 1/n.
pub fn unit_interval_grid(
    rule: impl Fn(f64) -> f64,
    n_atoms: usize,
) -> Result<(Arc<MeasureSpace>, SimpleFunction)> {
    let space = MeasureSpace::uniform(n_atoms)?;
    let values: Vec<f64> = (0..n_atoms)
        .map(|i| rule((i as f64 + 0.5) / n_atoms as f64))
        .collect();
    let f = SimpleFunction::real(&space, values)?;
    Ok((space, f))
}

/// Evaluates ‖f‖_p through the duality formula: pairs f with the explicit
/// maximizer g* = |f|^{p-1} conj(sign f) / ‖f‖_p^{p-1} on the unit sphere
/// of L^q, using sign(0) := 1. Agrees with `norm(f, p)` to 1e-10 relative.
pub fn dual_norm(f: &SimpleFunction, p: f64) -> Result<f64> {
    let pq = ConjugateExponents::from_p(p)?;
    let np = norm(f, pq.p())?;
    if np == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let w = f.space.weights();
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..f.len() {
        let ratio = (f.abs(i) / np).powf(p - 1.0);
        let fi = match &f.values {
            Values::Real(v) => Complex64::new(v[i], 0.0),
            Values::Complex(v) => v[i],
        };
        let gi = ratio * csign_or_one(fi).conj();
        s += w[i] * fi * gi;
    }
    Ok(s.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_space() -> Arc<MeasureSpace> {
        MeasureSpace::new(vec![0.5, 0.5]).unwrap()
    }

    #[test]
    fn rejects_bad_spaces() {
        assert_eq!(MeasureSpace::new(vec![]).unwrap_err(), Error::EmptySpace);
        assert!(matches!(
            MeasureSpace::new(vec![1.0, 0.0]).unwrap_err(),
            Error::BadWeight { index: 1, .. }
        ));
        assert!(matches!(
            MeasureSpace::new(vec![f64::NAN]).unwrap_err(),
            Error::BadWeight { .. }
        ));
    }

    #[test]
    fn rejects_bad_functions() {
        let s = half_space();
        assert!(matches!(
            SimpleFunction::real(&s, vec![1.0]).unwrap_err(),
            Error::LengthMismatch { .. }
        ));
        assert!(matches!(
            SimpleFunction::real(&s, vec![1.0, f64::INFINITY]).unwrap_err(),
            Error::NonFiniteValue { index: 1 }
        ));
    }

    #[test]
    fn constant_one_has_unit_norm_on_probability_space() {
        let s = half_space();
        let f = SimpleFunction::real(&s, vec![1.0, 1.0]).unwrap();
        for p in [1.0, 1.5, 2.0, 4.0, 10.0, f64::INFINITY] {
            assert!(approx_eq(norm(&f, p).unwrap(), 1.0, 1e-14));
        }
    }

    #[test]
    fn paper_example_norm_of_two_chi() {
        // g = 2 on half the mass: ‖g‖_q = 2^{1-1/q}.
        let s = half_space();
        let g = SimpleFunction::real(&s, vec![2.0, 0.0]).unwrap();
        let q = 4.0;
        let expect = 2f64.powf(1.0 - 1.0 / q);
        assert!(approx_eq(norm(&g, q).unwrap(), expect, 1e-14));
        assert!((norm(&g, q).unwrap() - 1.681793).abs() < 1e-6);
    }

    #[test]
    fn norm_matches_direct_summation_oracle() {
        let s = MeasureSpace::new(vec![1.0 / 3.0, 2.0 / 3.0]).unwrap();
        let f = SimpleFunction::real(&s, vec![3.0, -1.5]).unwrap();
        // brute-force weighted sum, no scaling tricks
        let oracle = ((1.0 / 3.0) * 9.0 + (2.0 / 3.0) * 2.25f64).sqrt();
        assert!(approx_eq(norm(&f, 2.0).unwrap(), oracle, 1e-14));
    }

    #[test]
    fn norm_is_stable_under_extreme_exponents() {
        let s = half_space();
        let f = SimpleFunction::real(&s, vec![1e3, 1e-3]).unwrap();
        let n = norm(&f, 1000.0).unwrap();
        assert!(n.is_finite() && n > 0.0);
        // dominated by the max for huge p
        assert!((n - 1e3 * 0.5f64.powf(1e-3)).abs() / 1e3 < 1e-12);
    }

    #[test]
    fn norm_zero_iff_zero_function() {
        let s = half_space();
        let z = SimpleFunction::real(&s, vec![0.0, 0.0]).unwrap();
        assert_eq!(norm(&z, 3.0).unwrap(), 0.0);
    }

    #[test]
    fn inner_matches_paper_example() {
        let s = half_space();
        let f = SimpleFunction::real(&s, vec![1.0, 1.0]).unwrap();
        let g = SimpleFunction::real(&s, vec![2.0, 0.0]).unwrap();
        assert_eq!(inner(&f, &g).unwrap().re, 1.0);
        let z = SimpleFunction::real(&s, vec![0.0, 0.0]).unwrap();
        assert_eq!(inner(&f, &z).unwrap().re, 0.0);
    }

    #[test]
    fn inner_rejects_mismatched_spaces() {
        let s1 = half_space();
        let s2 = MeasureSpace::new(vec![0.25, 0.75]).unwrap();
        let f = SimpleFunction::real(&s1, vec![1.0, 1.0]).unwrap();
        let g = SimpleFunction::real(&s2, vec![1.0, 1.0]).unwrap();
        assert_eq!(inner(&f, &g).unwrap_err(), Error::SpaceMismatch);
    }

    #[test]
    fn normalized_variance_examples() {
        let s = half_space();
        let c = SimpleFunction::real(&s, vec![3.0, 3.0]).unwrap();
        assert_eq!(normalized_variance(&c).unwrap(), 0.0);

        let f = SimpleFunction::real(&s, vec![2.0, 0.0]).unwrap();
        assert!(approx_eq(normalized_variance(&f).unwrap(), 0.5, 1e-14));

        let s2 = MeasureSpace::new(vec![0.01, 0.99]).unwrap();
        let g = SimpleFunction::real(&s2, vec![10.0, 0.0]).unwrap();
        assert!(approx_eq(normalized_variance(&g).unwrap(), 0.99, 1e-12));
    }

    #[test]
    fn normalized_variance_domain_errors() {
        let s = MeasureSpace::new(vec![0.5, 1.5]).unwrap();
        let f = SimpleFunction::real(&s, vec![1.0, 1.0]).unwrap();
        assert!(matches!(
            normalized_variance(&f).unwrap_err(),
            Error::NotProbabilitySpace { .. }
        ));
        let s = half_space();
        let z = SimpleFunction::real(&s, vec![0.0, 0.0]).unwrap();
        assert_eq!(normalized_variance(&z).unwrap_err(), Error::ZeroFunction);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate(2.0).unwrap().q(), 2.0);
        assert!(approx_eq(conjugate(4.0 / 3.0).unwrap().q(), 4.0, 1e-13));
        assert!((conjugate(1.01).unwrap().q() - 101.0).abs() / 101.0 < 1e-9);
        assert!(conjugate(1.0).is_err());
        assert!(conjugate(0.5).is_err());
        assert!(conjugate(f64::INFINITY).is_err());
        assert!(conjugate(2000.0).is_err());
    }

    #[test]
    fn conjugate_is_involutive() {
        for p in [1.1, 1.5, 2.0, 3.0, 7.7, 100.0] {
            let q = conjugate(p).unwrap().q();
            let back = conjugate(q).unwrap().q();
            assert!(approx_eq(back, p, 1e-12));
        }
    }

    #[test]
    fn grid_reproduces_closed_form_moments() {
        let (_, h) = unit_interval_grid(|x| x, 100_000).unwrap();
        for p in [1.0, 2.0, 6.0, 12.0] {
            let exact = (1.0 / (p + 1.0)).powf(1.0 / p);
            let got = norm(&h, p).unwrap();
            assert!(
                (got - exact).abs() / exact < 1e-3,
                "p={p}: {got} vs {exact}"
            );
        }
        // the p = 6 value from the identity rule
        assert!((norm(&h, 6.0).unwrap() - 0.72302).abs() < 1e-3);

        let (_, c) = unit_interval_grid(|_| 1.0, 17).unwrap();
        assert!(approx_eq(norm(&c, 3.0).unwrap(), 1.0, 1e-14));

        // piecewise-constant rule is exact for even n
        let (_, g) = unit_interval_grid(|x| if x <= 0.5 { 2.0 } else { 0.0 }, 10).unwrap();
        let q = 4.0;
        assert!(approx_eq(
            norm(&g, q).unwrap(),
            2f64.powf(1.0 - 1.0 / q),
            1e-14
        ));
    }

    #[test]
    fn grid_rejects_zero_atoms() {
        assert!(unit_interval_grid(|x| x, 0).is_err());
    }

    #[test]
    fn dual_norm_agrees_with_norm() {
        let s = half_space();
        let f = SimpleFunction::real(&s, vec![1.0, 1.0]).unwrap();
        assert!(approx_eq(dual_norm(&f, 3.0).unwrap(), 1.0, 1e-12));

        let g = SimpleFunction::real(&s, vec![2.0, 0.0]).unwrap();
        let p = 4.0 / 3.0;
        assert!(approx_eq(
            dual_norm(&g, p).unwrap(),
            norm(&g, p).unwrap(),
            1e-10
        ));

        // complex f = (i, -1): pairing through conjugate signs
        let c = SimpleFunction::complex(
            &s,
            vec![Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0)],
        )
        .unwrap();
        assert!(approx_eq(dual_norm(&c, 2.0).unwrap(), 1.0, 1e-12));
        assert!(approx_eq(
            dual_norm(&c, 2.0).unwrap(),
            norm(&c, 2.0).unwrap(),
            1e-10
        ));
    }

    #[test]
    fn dual_norm_rejects_zero() {
        let s = half_space();
        let z = SimpleFunction::real(&s, vec![0.0, 0.0]).unwrap();
        assert_eq!(dual_norm(&z, 2.0).unwrap_err(), Error::ZeroFunction);
    }

    #[test]
    fn sign_convention() {
        assert_eq!(sign_or_one(0.0), 1.0);
        assert_eq!(sign_or_one(-3.0), -1.0);
        assert_eq!(csign_or_one(Complex64::new(0.0, 0.0)), Complex64::new(1.0, 0.0));
        let z = Complex64::new(3.0, -4.0);
        assert!((csign_or_one(z).norm() - 1.0).abs() < 1e-15);
    }
}
