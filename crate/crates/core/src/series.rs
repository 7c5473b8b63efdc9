//! Formal power series and Laurent polynomials with 2x2 matrix
//! coefficients, and the summation identities of the Lucas matrix
//! sequence checked through them.
//!
//! Every identity here has the denominator `P(x) = 1 - (ab+2) x^2 + x^4`.
//! `P` is palindromic, so substituting `t = 1/x` and clearing `t^4` maps
//! it to itself.

use std::collections::BTreeMap;

use crate::arith::{Mat2, Rational};
use crate::error::{Error, Result};
use crate::matrix_seq::{lucas_initial0, lucas_initial1, lucas_matrix_closed, lucas_matrix_rec};
use crate::sequences::{eps, SeqParams};

/// Default truncation order for generating-function expansions.
pub const DEFAULT_ORDER: usize = 40;

/// `sum_{k < order} c_k x^k`, arithmetic taken modulo `x^order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<Mat2<Rational>>,
}

impl TruncatedSeries {
    /// Pads with zeros or truncates `coeffs` to exactly `order` terms.
    pub fn new(mut coeffs: Vec<Mat2<Rational>>, order: usize) -> Self {
        coeffs.resize(order, Mat2::zero());
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Mat2<Rational>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&Mat2<Rational>> {
        self.coeffs.get(k)
    }

    /// Sum, truncated to the shorter of the two orders.
    pub fn add(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(x, y)| x + y).collect();
        TruncatedSeries { coeffs }
    }

    /// Cauchy product (left factor on the left of each matrix product),
    /// truncated to the shorter order.
    pub fn mul(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..order)
            .map(|k| {
                (0..=k).fold(Mat2::zero(), |acc, j| &acc + &(&self.coeffs[j] * &rhs.coeffs[k - j]))
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn mul_scalar_poly(&self, poly: &[Rational]) -> TruncatedSeries {
        let coeffs = (0..self.order())
            .map(|k| {
                (0..=k.min(poly.len().saturating_sub(1))).fold(Mat2::zero(), |acc, j| {
                    &acc + &self.coeffs[k - j].scale(&poly[j])
                })
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Solves `y * den = self` modulo `x^order`; `den[0]` must be nonzero.
    pub fn div_scalar_poly(&self, den: &[Rational]) -> Result<TruncatedSeries> {
        let lead_inv = den.first().ok_or(Error::DivisionByZero)?.inv()?;
        let mut out: Vec<Mat2<Rational>> = Vec::with_capacity(self.order());
        for k in 0..self.order() {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k.min(den.len().saturating_sub(1)) {
                acc = &acc - &out[k - j].scale(&den[j]);
            }
            out.push(acc.scale(&lead_inv));
        }
        Ok(TruncatedSeries { coeffs: out })
    }
}

/// Finite sum `sum_e c_e x^e` over integer exponents. Zero coefficients are
/// never stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Mat2<Rational>>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn monomial(exp: i64, coeff: Mat2<Rational>) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(exp, coeff);
        p
    }

    /// `sum_e c_e x^e * I` for a scalar Laurent polynomial.
    pub fn scalar(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, Mat2::identity().scale(&c));
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, coeff: Mat2<Rational>) {
        let slot = self.terms.entry(exp).or_insert_with(Mat2::zero);
        *slot = &*slot + &coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, Mat2<Rational>> {
        &self.terms
    }

    pub fn coeff(&self, exp: i64) -> Mat2<Rational> {
        self.terms.get(&exp).cloned().unwrap_or_else(Mat2::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }

    pub fn mul(&self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Lowest exponent at which the two differ, with both coefficients.
    pub fn first_difference(&self, other: &LaurentPoly) -> Option<(i64, Mat2<Rational>, Mat2<Rational>)> {
        let diff = self.sub(other);
        let (&e, _) = diff.terms.iter().next()?;
        Some((e, self.coeff(e), other.coeff(e)))
    }
}

/// `1 - (ab+2) x^2 + x^4`, lowest power first.
pub fn lucas_denominator(params: &SeqParams) -> Vec<Rational> {
    vec![
        Rational::one(),
        Rational::zero(),
        -(&params.ab + &Rational::from(2)),
        Rational::zero(),
        Rational::one(),
    ]
}

/// Matrix coefficients of the generating-function numerator
/// `[[A2, B2], [(a/b) B2, C2]]`, lowest power first:
///
/// ```text
/// A2 = a + (a^2 + 2a/b) x + a x^2 - (2a/b) x^3
/// B2 = 2 + a x - (ab+2) x^2 + a x^3
/// C2 = -a + (2a/b) x + (3+ab) a x^2 - (a^2 + 2a/b) x^3
/// ```
pub fn lucas_generating_numerator(params: &SeqParams) -> [Mat2<Rational>; 4] {
    let a = &params.a;
    let ab = &params.ab;
    let r = params.a_over_b();
    let two_r = Rational::from(2) * &r;
    let a2_plus = a * a + &two_r;
    let ab2 = ab + &Rational::from(2);
    let a_coef = [a.clone(), a2_plus.clone(), a.clone(), -&two_r];
    let b_coef = [Rational::from(2), a.clone(), -&ab2, a.clone()];
    let c_coef = [-a, two_r.clone(), (ab + &Rational::from(3)) * a, -&a2_plus];
    entrywise(&a_coef, &b_coef, &c_coef, &r)
}

/// Stacks per-entry cubic coefficients into `[[X, Y], [r Y, Z]]` matrices.
fn entrywise(x: &[Rational; 4], y: &[Rational; 4], z: &[Rational; 4], r: &Rational) -> [Mat2<Rational>; 4] {
    std::array::from_fn(|k| Mat2::new(x[k].clone(), y[k].clone(), r * &y[k], z[k].clone()))
}

/// `sum_{i < order} L_i x^i` expanded from its rational closed form.
pub fn lucas_generating_series(params: &SeqParams, order: usize) -> Result<TruncatedSeries> {
    if order == 0 {
        return Err(Error::InvalidArgument("order must be >= 1".into()));
    }
    let numer = TruncatedSeries::new(lucas_generating_numerator(params).to_vec(), order);
    numer.div_scalar_poly(&lucas_denominator(params))
}

/// Indices `k < order` where the generating-function coefficient differs
/// from the recurrence term.
pub fn generating_function_mismatches(params: &SeqParams, order: usize) -> Result<Vec<usize>> {
    let series = lucas_generating_series(params, order)?;
    Ok((0..order).filter(|&k| series.coeffs[k] != lucas_matrix_rec(params, k as u64)).collect())
}

pub fn verify_generating_function(params: &SeqParams, order: usize) -> Result<bool> {
    Ok(generating_function_mismatches(params, order)?.is_empty())
}

/// Which closed form to use for the inverse-power summations.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum InverseSumForm {
    /// The closed form in its original published shape.
    Original,
    /// The closed form re-derived from the generating function.
    Corrected,
}

/// Both sides of `sum_{k=0}^{n} L_k x^{-k} = bracket / P(x)` after
/// multiplying through by `x^{n+2} P(x)`:
///
/// ```text
/// bracket = L_{n-1} x^{1-n} - L_{n+1} x^{3-n} + L_n x^{-n} - L_{n+2} x^{s}
///         + x^4 L_0 + x^3 L_1 - x^2 ((ab+1) L_0 - b L_1) - x (L_1 - a L_0)
/// ```
///
/// with `s = -(n+2)` in the original form and `s = 2-n` in the corrected
/// form, which follows from telescoping
/// `P(t) sum_{k>n} L_k t^k`.
pub fn finite_inverse_sum_sides(params: &SeqParams, n: u64, form: InverseSumForm) -> (LaurentPoly, LaurentPoly) {
    let ni = n as i64;
    let lk = |k: i64| lucas_matrix_closed(params, k);
    let den = LaurentPoly::scalar(lucas_denominator(params).into_iter().enumerate().map(|(e, c)| (e as i64, c)));

    let mut sum = LaurentPoly::zero();
    for k in 0..=ni {
        sum.add_term(-k, lk(k));
    }
    let lhs = den.mul(&sum).shift(ni + 2);

    let (l0, l1) = (lucas_initial0(params), lucas_initial1(params));
    let last_exp = match form {
        InverseSumForm::Original => -(ni + 2),
        InverseSumForm::Corrected => 2 - ni,
    };
    let mut bracket = LaurentPoly::zero();
    bracket.add_term(1 - ni, lk(ni - 1));
    bracket.add_term(3 - ni, -&lk(ni + 1));
    bracket.add_term(-ni, lk(ni));
    bracket.add_term(last_exp, -&lk(ni + 2));
    bracket.add_term(4, l0.clone());
    bracket.add_term(3, l1.clone());
    let ab1 = &params.ab + &Rational::one();
    bracket.add_term(2, -&(&l0.scale(&ab1) - &l1.scale(&params.b)));
    bracket.add_term(1, -&(&l1 - &l0.scale(&params.a)));
    let rhs = bracket.shift(ni + 2);
    (lhs, rhs)
}

pub fn verify_finite_inverse_sum(params: &SeqParams, n: u64, form: InverseSumForm) -> bool {
    let (lhs, rhs) = finite_inverse_sum_sides(params, n, form);
    lhs == rhs
}

/// Cubic numerator `[[D, E], [(a/b) E, F]]` of
/// `sum_{k>=0} L_k x^{-k} = x [[D, E], [(a/b) E, F]] / P(x)`, lowest power
/// first.
///
/// Original form:
/// ```text
/// D = a x^3 + (a^2 + 2a/b) x^2 - a x + 2a/b
/// E = 2 x^3 + a x^2 + (ab+2) x + a
/// F = -a x^3 + (2a/b) x^2 - (a^2 b + 3a) x + a^2 + 2a/b
/// ```
/// Corrected from `G(1/x)`, the `x^1` and `x^0` terms change sign except for
/// the constant of `E`:
/// ```text
/// D = a x^3 + (a^2 + 2a/b) x^2 + a x - 2a/b
/// E = 2 x^3 + a x^2 - (ab+2) x + a
/// F = -a x^3 + (2a/b) x^2 + (a^2 b + 3a) x - (a^2 + 2a/b)
/// ```
pub fn infinite_inverse_numerator(params: &SeqParams, form: InverseSumForm) -> [Mat2<Rational>; 4] {
    let a = &params.a;
    let r = params.a_over_b();
    let two_r = Rational::from(2) * &r;
    let a2_plus = a * a + &two_r;
    let ab2 = &params.ab + &Rational::from(2);
    let a2b_3a = a * &params.ab + Rational::from(3) * a;
    let sign = match form {
        InverseSumForm::Original => Rational::one(),
        InverseSumForm::Corrected => -Rational::one(),
    };
    let d = [&sign * &two_r, -(&sign * a), a2_plus.clone(), a.clone()];
    let e = [a.clone(), &sign * &ab2, a.clone(), Rational::from(2)];
    let f = [&sign * &a2_plus, -(&sign * &a2b_3a), two_r.clone(), -a];
    entrywise(&d, &e, &f, &r)
}

/// Expands `x N(x) / P(x)` in `t = 1/x`. Multiplying top and bottom by
/// `t^4` reverses coefficient order: the `t^k` numerator coefficient is the
/// `x^{4-k}` coefficient of `x N(x)`, i.e. `N_{3-k}`.
pub fn infinite_inverse_series(params: &SeqParams, order: usize, form: InverseSumForm) -> Result<TruncatedSeries> {
    if order == 0 {
        return Err(Error::InvalidArgument("order must be >= 1".into()));
    }
    let numer_x = infinite_inverse_numerator(params, form);
    // x * N(x): coefficients at x^0..=x^4
    let mut shifted = vec![Mat2::zero()];
    shifted.extend(numer_x);
    let numer_t: Vec<_> = shifted.into_iter().rev().collect();
    let mut den_t = lucas_denominator(params);
    den_t.reverse();
    TruncatedSeries::new(numer_t, order).div_scalar_poly(&den_t)
}

pub fn infinite_inverse_mismatches(params: &SeqParams, order: usize, form: InverseSumForm) -> Result<Vec<usize>> {
    let series = infinite_inverse_series(params, order, form)?;
    Ok((0..order).filter(|&k| series.coeffs[k] != lucas_matrix_rec(params, k as u64)).collect())
}

pub fn verify_infinite_inverse_sum(params: &SeqParams, order: usize, form: InverseSumForm) -> Result<bool> {
    Ok(infinite_inverse_mismatches(params, order, form)?.is_empty())
}

/// `sum_{k=0}^{n-1} L_k` from the closed form
///
/// ```text
/// (1/ab) { b^e a^(1-e) L_n + b^(1-e) a^e L_{n-1} - b L_1 + ab L_0 - a L_0 },   e = eps(n)
/// ```
pub fn lucas_partial_sum(params: &SeqParams, n: u64) -> Result<Mat2<Rational>> {
    if n == 0 {
        return Err(Error::InvalidArgument("partial sum needs n >= 1".into()));
    }
    let p = params;
    let e = eps(n as i64) as i64;
    let (l0, l1) = (lucas_initial0(p), lucas_initial1(p));
    let c_n = p.b.pow(e)? * p.a.pow(1 - e)?;
    let c_n1 = p.b.pow(1 - e)? * p.a.pow(e)?;
    let body = &(&(&lucas_matrix_rec(p, n).scale(&c_n) + &lucas_matrix_rec(p, n - 1).scale(&c_n1))
        - &l1.scale(&p.b))
        + &l0.scale(&(&p.ab - &p.a));
    Ok(body.scale(&p.ab.inv()?))
}

/// `sum_{k=0}^{n-1} L_k` by adding up recurrence terms.
pub fn lucas_direct_sum(params: &SeqParams, n: u64) -> Mat2<Rational> {
    (0..n).fold(Mat2::zero(), |acc, k| &acc + &lucas_matrix_rec(params, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix_seq::lucas_initial0;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn p(a: &str, b: &str) -> SeqParams {
        SeqParams::parse(a, b).unwrap()
    }

    #[test]
    fn division_inverts_multiplication() {
        let den = vec![r("1"), r("-2/3"), r("0"), r("5")];
        let x = TruncatedSeries::new(
            (0..8).map(|k| Mat2::from_i64([[k, 1 - k], [2 * k, 3]])).collect(),
            8,
        );
        let y = x.div_scalar_poly(&den).unwrap();
        assert_eq!(y.mul_scalar_poly(&den), x);
        assert!(x.div_scalar_poly(&[r("0"), r("1")]).is_err());
    }

    #[test]
    fn geometric_series() {
        // 1 / (1 - x) = 1 + x + x^2 + ...
        let one = TruncatedSeries::new(vec![Mat2::identity()], 6);
        let s = one.div_scalar_poly(&[r("1"), r("-1")]).unwrap();
        assert!(s.coeffs().iter().all(|c| *c == Mat2::identity()));
    }

    #[test]
    fn laurent_cancellation_removes_terms() {
        let m = Mat2::from_i64([[1, 2], [3, 4]]);
        let a = LaurentPoly::monomial(-3, m.clone());
        let b = LaurentPoly::monomial(-3, -&m);
        assert!(a.add(&b).is_zero());
        assert_eq!(a.shift(5).coeff(2), m);
        let x = LaurentPoly::scalar([(1, r("1"))]);
        let x_inv = LaurentPoly::scalar([(-1, r("1"))]);
        assert_eq!(x.mul(&x_inv), LaurentPoly::scalar([(0, r("1"))]));
    }

    #[test]
    fn generating_function_low_coefficients() {
        let pr = p("-3/2", "5/3");
        let s = lucas_generating_series(&pr, 2).unwrap();
        assert_eq!(s.coeff(0).unwrap(), &lucas_initial0(&pr));
        assert_eq!(s.coeff(1).unwrap(), &lucas_initial1(&pr));
        let c = lucas_generating_series(&SeqParams::classical(), 5).unwrap();
        assert_eq!(c.coeff(4).unwrap(), &Mat2::from_i64([[11, 7], [7, 4]]));
        assert!(lucas_generating_series(&pr, 0).is_err());
    }

    #[test]
    fn generating_function_matches_recurrence() {
        assert!(verify_generating_function(&SeqParams::classical(), 30).unwrap());
        assert!(verify_generating_function(&p("3", "-1"), 30).unwrap());
        assert!(verify_generating_function(&p("1/2", "2"), 2).unwrap());
    }

    #[test]
    fn finite_inverse_sum_corrected_form_holds() {
        for (a, b) in [("1", "1"), ("1/2", "4"), ("-3/2", "5/3"), ("2", "-2")] {
            for n in 0..=12 {
                assert!(verify_finite_inverse_sum(&p(a, b), n, InverseSumForm::Corrected), "a={a} b={b} n={n}");
            }
        }
    }

    #[test]
    fn finite_inverse_sum_original_form_fails() {
        for n in 0..=6 {
            assert!(!verify_finite_inverse_sum(&SeqParams::classical(), n, InverseSumForm::Original));
        }
    }

    #[test]
    fn finite_inverse_sum_n0_by_hand() {
        // n = 0: lhs is x^2 P(x) L_0
        let pr = p("1", "1");
        let (lhs, rhs) = finite_inverse_sum_sides(&pr, 0, InverseSumForm::Corrected);
        let l0 = lucas_initial0(&pr);
        let mut want = LaurentPoly::zero();
        want.add_term(2, l0.clone());
        want.add_term(4, l0.scale(&r("-3")));
        want.add_term(6, l0.clone());
        assert_eq!(lhs, want);
        assert_eq!(rhs, want);
    }

    #[test]
    fn infinite_inverse_sum() {
        let pr = p("2", "3");
        let s = infinite_inverse_series(&pr, 1, InverseSumForm::Corrected).unwrap();
        assert_eq!(s.coeff(0).unwrap(), &lucas_initial0(&pr));
        assert!(verify_infinite_inverse_sum(&SeqParams::classical(), 20, InverseSumForm::Corrected).unwrap());
        assert!(verify_infinite_inverse_sum(&pr, 20, InverseSumForm::Corrected).unwrap());
        // the original numerator already diverges at coefficient 2
        let bad = infinite_inverse_mismatches(&pr, 20, InverseSumForm::Original).unwrap();
        assert_eq!(bad.first(), Some(&2));
    }

    #[test]
    fn corrected_inverse_numerator_is_reversed_generating_numerator() {
        let pr = p("-3/2", "1/2");
        let g = lucas_generating_numerator(&pr);
        let inv = infinite_inverse_numerator(&pr, InverseSumForm::Corrected);
        for k in 0..4 {
            assert_eq!(inv[k], g[3 - k]);
        }
    }

    #[test]
    fn partial_sums() {
        let pr = p("1", "1");
        assert_eq!(lucas_partial_sum(&pr, 1).unwrap(), lucas_initial0(&pr));
        assert_eq!(lucas_partial_sum(&pr, 5).unwrap(), Mat2::from_i64([[26, 17], [17, 9]]));
        assert_eq!(lucas_direct_sum(&pr, 5), Mat2::from_i64([[26, 17], [17, 9]]));
        let pr = p("2", "1");
        assert_eq!(lucas_partial_sum(&pr, 4).unwrap(), lucas_direct_sum(&pr, 4));
        assert!(lucas_partial_sum(&pr, 0).is_err());
    }
}
