//! The bi-periodic Fibonacci matrix sequence `F_n` and Lucas matrix
//! sequence `L_n`, each available three ways:
//!
//! * recurrence from two initial matrices,
//! * entrywise closed form in terms of the scalar `q_n` / `l_n`,
//! * Binet form, evaluated exactly in `Q(sqrt(D))` and folded back to
//!   rationals.
//!
//! With `r = b/a` and `e = eps(n)`:
//!
//! ```text
//! F_n = [[r^e q_{n+1}, r q_n], [q_n, r^e q_{n-1}]]
//! L_n = [[(a/b)^e l_{n+1}, l_n], [(a/b) l_n, (a/b)^e l_{n-1}]]
//! ```
//!
//! Both matrix sequences follow the same alternating recurrences as their
//! scalar counterparts: `F_n = a F_{n-1} + F_{n-2}` for even `n` (`b` for
//! odd), and `L_n = a L_{n-1} + L_{n-2}` for odd `n` (`b` for even).

use serde::{Deserialize, Serialize};

use crate::arith::{Mat2, QuadElement, Rational};
use crate::error::{Error, Result};
use crate::sequences::{eps, ScalarSource, SeqParams};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Recurrence,
    ClosedForm,
    Binet,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixKind {
    Fib,
    Lucas,
}

/// A matrix-sequence term along with the route that produced it.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MatSeqTerm {
    pub index: i64,
    pub matrix: Mat2<Rational>,
    pub source: Source,
}

/// `F_0` and `F_1` as read off the closed form at `n = 0, 1`.
pub fn fib_initial(params: &SeqParams) -> (Mat2<Rational>, Mat2<Rational>) {
    (fib_matrix_closed(params, 0), fib_matrix_closed(params, 1))
}

/// `L_0 = [[a, 2], [2a/b, -a]]`
pub fn lucas_initial0(params: &SeqParams) -> Mat2<Rational> {
    let a = &params.a;
    let two = Rational::from(2);
    Mat2::new(a.clone(), two.clone(), &two * &params.a_over_b(), -a)
}

/// `L_1 = [[a^2 + 2a/b, a], [a^2/b, 2a/b]]`
pub fn lucas_initial1(params: &SeqParams) -> Mat2<Rational> {
    let a = &params.a;
    let two_a_b = Rational::from(2) * params.a_over_b();
    let a2 = a * a;
    Mat2::new(&a2 + &two_a_b, a.clone(), &a2 * &params.b.inv().expect("b nonzero"), two_a_b)
}

fn run_recurrence(
    m0: Mat2<Rational>,
    m1: Mat2<Rational>,
    n: u64,
    coeff: impl Fn(u64) -> Rational,
) -> Mat2<Rational> {
    if n == 0 {
        return m0;
    }
    let (mut prev, mut cur) = (m0, m1);
    for k in 2..=n {
        let next = &cur.scale(&coeff(k)) + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

pub fn fib_matrix_rec(params: &SeqParams, n: u64) -> Mat2<Rational> {
    let (f0, f1) = fib_initial(params);
    run_recurrence(f0, f1, n, |k| if k % 2 == 0 { params.a.clone() } else { params.b.clone() })
}

pub fn lucas_matrix_rec(params: &SeqParams, n: u64) -> Mat2<Rational> {
    run_recurrence(lucas_initial0(params), lucas_initial1(params), n, |k| {
        if k % 2 == 1 {
            params.a.clone()
        } else {
            params.b.clone()
        }
    })
}

/// Closed form of `F_n`; valid for every integer `n`.
pub fn fib_matrix_closed<S: ScalarSource + ?Sized>(src: &S, n: i64) -> Mat2<Rational> {
    let p = src.params();
    let r = p.b_over_a();
    let re = p.b_over_a_pow(eps(n) as i64);
    let qn = src.q(n);
    Mat2::new(&re * &src.q(n + 1), &r * &qn, qn, &re * &src.q(n - 1))
}

/// Closed form of `L_n`; valid for every integer `n`.
pub fn lucas_matrix_closed<S: ScalarSource + ?Sized>(src: &S, n: i64) -> Mat2<Rational> {
    let p = src.params();
    let r = p.a_over_b();
    let re = p.a_over_b_pow(eps(n) as i64);
    let ln = src.l(n);
    Mat2::new(&re * &src.l(n + 1), ln.clone(), &r * &ln, &re * &src.l(n - 1))
}

fn lift(m: &Mat2<Rational>, p: &SeqParams) -> Mat2<QuadElement> {
    m.lift(&p.disc)
}

/// `1 / (c * (alpha - beta))` for a rational `c`.
fn binet_denominator_inv(p: &SeqParams, c: &Rational) -> Result<QuadElement> {
    if !p.binet_allowed() {
        return Err(Error::BinetDegenerate);
    }
    p.alpha.try_sub(&p.beta)?.scale(c).try_inv()
}

/// `(X alpha^k - Y beta^k) * inv`
fn binet_combine(
    x: &Mat2<QuadElement>,
    y: &Mat2<QuadElement>,
    p: &SeqParams,
    k: u64,
    inv: &QuadElement,
) -> Result<Mat2<QuadElement>> {
    let left = x.try_scale(&p.alpha.pow(k))?;
    let right = y.try_scale(&p.beta.pow(k))?;
    left.try_sub(&right)?.try_scale(inv)
}

/// Binet form of `F_n`, written piecewise on the parity of `n`:
///
/// ```text
/// n even: F_n = (K alpha^n - K' beta^n) / ((ab)^(n/2) (alpha - beta))
///         K  = a F_1 + alpha F_0 - ab F_0,  K' = a F_1 + beta F_0 - ab F_0
/// n odd:  F_n = (M alpha^(n-1) - M' beta^(n-1)) / ((ab)^((n-1)/2) (alpha - beta))
///         M  = alpha F_1 + b F_0,           M' = beta F_1 + b F_0
/// ```
pub fn fib_matrix_binet(params: &SeqParams, n: u64) -> Result<Mat2<Rational>> {
    let p = params;
    let (f0, f1) = fib_initial(p);
    let (f0q, f1q) = (lift(&f0, p), lift(&f1, p));
    let half = (n / 2) as i64;
    let inv = binet_denominator_inv(p, &p.ab.pow(half)?)?;
    let out = if n % 2 == 0 {
        let base = lift(&(&f1.scale(&p.a) - &f0.scale(&p.ab)), p);
        let k = base.try_add(&f0q.try_scale(&p.alpha)?)?;
        let k_conj = base.try_add(&f0q.try_scale(&p.beta)?)?;
        binet_combine(&k, &k_conj, p, n, &inv)?
    } else {
        let bf0 = lift(&f0.scale(&p.b), p);
        let m = f1q.try_scale(&p.alpha)?.try_add(&bf0)?;
        let m_conj = f1q.try_scale(&p.beta)?.try_add(&bf0)?;
        binet_combine(&m, &m_conj, p, n - 1, &inv)?
    };
    out.to_rational(n)
}

/// Binet form of `F_n` in its single-expression shape
///
/// ```text
/// F_n = A1 (alpha^n - beta^n) + B1 (alpha^(2h+2) - beta^(2h+2)),   h = floor(n/2)
/// A1  = (F_1 - b F_0)^e (a F_1 - F_0 - ab F_0)^(1-e) / ((ab)^h (alpha - beta))
/// B1  = b^e F_0 / ((ab)^(h+1) (alpha - beta))
/// ```
///
/// The matrix "powers" `X^e Y^(1-e)` select `X` for odd `n` and `Y` for even `n`.
pub fn fib_matrix_binet_compact(params: &SeqParams, n: u64) -> Result<Mat2<Rational>> {
    let p = params;
    let (f0, f1) = fib_initial(p);
    let h = (n / 2) as i64;
    let e = n % 2;
    let a1_num = if e == 1 {
        &f1 - &f0.scale(&p.b)
    } else {
        &(&f1.scale(&p.a) - &f0) - &f0.scale(&p.ab)
    };
    let b1_num = f0.scale(&p.b.pow(e as i64)?);
    let inv_a = binet_denominator_inv(p, &p.ab.pow(h)?)?;
    let inv_b = binet_denominator_inv(p, &p.ab.pow(h + 1)?)?;
    let diff = |k: u64| p.alpha.pow(k).try_sub(&p.beta.pow(k));
    let a_term = lift(&a1_num, p).try_scale(&inv_a.try_mul(&diff(n)?)?)?;
    let b_term = lift(&b1_num, p).try_scale(&inv_b.try_mul(&diff(2 * h as u64 + 2)?)?)?;
    a_term.try_add(&b_term)?.to_rational(n)
}

/// Binet form `L_n = A alpha^n - B beta^n` with
///
/// ```text
/// A = (b L_1 + alpha L_0 - ab L_0) / (b^e (ab)^floor(n/2) (alpha - beta))
/// B = (b L_1 + beta  L_0 - ab L_0) / (b^e (ab)^floor(n/2) (alpha - beta))
/// ```
pub fn lucas_matrix_binet(params: &SeqParams, n: u64) -> Result<Mat2<Rational>> {
    let p = params;
    let (l0, l1) = (lucas_initial0(p), lucas_initial1(p));
    let l0q = lift(&l0, p);
    let base = lift(&(&l1.scale(&p.b) - &l0.scale(&p.ab)), p);
    let num_a = base.try_add(&l0q.try_scale(&p.alpha)?)?;
    let num_b = base.try_add(&l0q.try_scale(&p.beta)?)?;
    let c = p.b.pow((n % 2) as i64)? * p.ab.pow((n / 2) as i64)?;
    let inv = binet_denominator_inv(p, &c)?;
    binet_combine(&num_a, &num_b, p, n, &inv)?.to_rational(n)
}

/// `det(L_n) = (ab + 4) (-a/b)^(1 + eps(n))`
pub fn lucas_det(params: &SeqParams, n: i64) -> Rational {
    let neg_ratio = -params.a_over_b();
    (&params.ab + &Rational::from(4)) * neg_ratio.pow(1 + eps(n) as i64).expect("nonzero")
}

/// Cassini-type identity for the Lucas numbers:
/// `(b/a)^eps(n+1) l_{n+1} l_{n-1} - (b/a)^eps(n) l_n^2 = (ab + 4)(-1)^(n+1)`
pub fn cassini_lucas<S: ScalarSource + ?Sized>(src: &S, n: i64) -> bool {
    let (lhs, rhs) = cassini_sides(src, n);
    lhs == rhs
}

pub fn cassini_sides<S: ScalarSource + ?Sized>(src: &S, n: i64) -> (Rational, Rational) {
    let p = src.params();
    let ln = src.l(n);
    let lhs = p.b_over_a_pow(eps(n + 1) as i64) * src.l(n + 1) * src.l(n - 1)
        - p.b_over_a_pow(eps(n) as i64) * &ln * &ln;
    let sign = if eps(n + 1) == 0 { Rational::one() } else { -Rational::one() };
    let rhs = (&p.ab + &Rational::from(4)) * sign;
    (lhs, rhs)
}

/// One term by the requested route. The recurrence route needs `n >= 0`;
/// the Binet route needs `n >= 0` and `ab != -4`.
pub fn matrix_term(params: &SeqParams, kind: MatrixKind, n: i64, source: Source) -> Result<MatSeqTerm> {
    let nonneg = || {
        u64::try_from(n).map_err(|_| {
            Error::InvalidArgument(format!("{source:?} evaluation needs a non-negative index, got {n}"))
        })
    };
    let matrix = match (kind, source) {
        (MatrixKind::Fib, Source::ClosedForm) => fib_matrix_closed(params, n),
        (MatrixKind::Lucas, Source::ClosedForm) => lucas_matrix_closed(params, n),
        (MatrixKind::Fib, Source::Recurrence) => fib_matrix_rec(params, nonneg()?),
        (MatrixKind::Lucas, Source::Recurrence) => lucas_matrix_rec(params, nonneg()?),
        (MatrixKind::Fib, Source::Binet) => fib_matrix_binet(params, nonneg()?)?,
        (MatrixKind::Lucas, Source::Binet) => lucas_matrix_binet(params, nonneg()?)?,
    };
    Ok(MatSeqTerm { index: n, matrix, source })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn p(a: &str, b: &str) -> SeqParams {
        SeqParams::parse(a, b).unwrap()
    }

    fn m(e: [&str; 4]) -> Mat2<Rational> {
        Mat2::new(r(e[0]), r(e[1]), r(e[2]), r(e[3]))
    }

    // Q-matrix [[1,1],[1,0]]^n, the textbook route for classical Fibonacci.
    fn q_matrix_power(n: u64) -> Mat2<Rational> {
        let mut acc = Mat2::identity();
        for _ in 0..n {
            acc = &acc * &Mat2::from_i64([[1, 1], [1, 0]]);
        }
        acc
    }

    #[test]
    fn fib_recurrence_examples() {
        assert_eq!(fib_matrix_rec(&p("5/3", "-1"), 0), Mat2::identity());
        assert_eq!(fib_matrix_rec(&p("2", "1"), 2), Mat2::from_i64([[3, 1], [2, 1]]));
        assert_eq!(fib_matrix_rec(&p("1", "1"), 5), Mat2::from_i64([[8, 5], [5, 3]]));
        for n in 0..12 {
            assert_eq!(fib_matrix_rec(&SeqParams::classical(), n), q_matrix_power(n));
        }
    }

    #[test]
    fn fib_initial_matrices() {
        let pr = p("3", "1/2");
        let (f0, f1) = fib_initial(&pr);
        assert_eq!(f0, Mat2::identity());
        // [[b, b/a], [1, 0]]
        assert_eq!(f1, m(["1/2", "1/6", "1", "0"]));
    }

    #[test]
    fn fib_closed_examples() {
        assert_eq!(fib_matrix_closed(&p("-3/2", "2"), 0), Mat2::identity());
        assert_eq!(fib_matrix_closed(&p("2", "1"), 3), m(["4", "3/2", "3", "1"]));
        assert_eq!(fib_matrix_closed(&p("1", "1"), 4), Mat2::from_i64([[5, 3], [3, 2]]));
    }

    #[test]
    fn lucas_recurrence_examples() {
        let pr = p("1/2", "3");
        // [[a, 2], [2a/b, -a]] and [[a^2 + 2a/b, a], [a^2/b, 2a/b]]
        assert_eq!(lucas_matrix_rec(&pr, 0), m(["1/2", "2", "1/3", "-1/2"]));
        assert_eq!(lucas_matrix_rec(&pr, 1), m(["7/12", "1/2", "1/12", "1/3"]));
        assert_eq!(lucas_matrix_rec(&p("1", "1"), 2), Mat2::from_i64([[4, 3], [3, 1]]));
    }

    #[test]
    fn lucas_closed_examples() {
        let pr = p("-3/2", "5/3");
        assert_eq!(lucas_matrix_closed(&pr, 0), lucas_initial0(&pr));
        assert_eq!(lucas_matrix_closed(&pr, 1), lucas_initial1(&pr));
        assert_eq!(lucas_matrix_closed(&p("2", "1"), 2), Mat2::from_i64([[10, 4], [8, 2]]));
        assert_eq!(lucas_matrix_closed(&p("1", "1"), 3), Mat2::from_i64([[7, 4], [4, 3]]));
    }

    #[test]
    fn binet_examples() {
        assert_eq!(fib_matrix_binet(&p("2", "3"), 0).unwrap(), Mat2::identity());
        assert_eq!(fib_matrix_binet(&p("1", "1"), 5).unwrap(), Mat2::from_i64([[8, 5], [5, 3]]));
        assert_eq!(fib_matrix_binet(&p("2", "3"), 7).unwrap(), fib_matrix_rec(&p("2", "3"), 7));
        assert_eq!(fib_matrix_binet_compact(&p("2", "3"), 7).unwrap(), fib_matrix_rec(&p("2", "3"), 7));

        let pr = p("-1", "5/3");
        assert_eq!(lucas_matrix_binet(&pr, 0).unwrap(), lucas_initial0(&pr));
        assert_eq!(lucas_matrix_binet(&p("1", "1"), 4).unwrap(), Mat2::from_i64([[11, 7], [7, 4]]));
        assert_eq!(lucas_matrix_binet(&p("1/2", "3"), 6).unwrap(), lucas_matrix_rec(&p("1/2", "3"), 6));
    }

    #[test]
    fn binet_with_square_discriminant() {
        // ab = 1/12 gives D = (1/12)(49/12) = 49/144, a rational square
        let pr = p("1/3", "1/4");
        assert_eq!(pr.disc, r("49/144"));
        for n in 0..15 {
            assert_eq!(fib_matrix_binet(&pr, n).unwrap(), fib_matrix_rec(&pr, n));
            assert_eq!(lucas_matrix_binet(&pr, n).unwrap(), lucas_matrix_rec(&pr, n));
        }
    }

    #[test]
    fn degenerate_binet() {
        let pr = p("2", "-2");
        assert_eq!(fib_matrix_binet(&pr, 3), Err(Error::BinetDegenerate));
        assert_eq!(fib_matrix_binet_compact(&pr, 3), Err(Error::BinetDegenerate));
        assert_eq!(lucas_matrix_binet(&pr, 3), Err(Error::BinetDegenerate));
        // recurrence and closed form are unaffected
        for n in 0..20 {
            assert_eq!(fib_matrix_rec(&pr, n), fib_matrix_closed(&pr, n as i64));
            assert_eq!(lucas_matrix_rec(&pr, n), lucas_matrix_closed(&pr, n as i64));
        }
    }

    #[test]
    fn det_examples() {
        assert_eq!(lucas_det(&p("1", "1"), 0), r("-5"));
        assert_eq!(lucas_det(&p("2", "1"), 0), r("-12"));
        assert_eq!(lucas_det(&p("1", "1"), 1), r("5"));
        assert_eq!(lucas_matrix_closed(&p("1", "1"), 1).det(), r("5"));
    }

    #[test]
    fn cassini_examples() {
        // l_3 l_1 - l_2^2 = 4 - 9 = -5
        assert_eq!(cassini_sides(&p("1", "1"), 2), (r("-5"), r("-5")));
        // a=2, b=1, n=1: l_2 l_0 - (1/2) l_1^2 = 8 - 2 = 6
        assert_eq!(cassini_sides(&p("2", "1"), 1), (r("6"), r("6")));
        assert!(cassini_lucas(&p("-3/2", "5/3"), 1));
    }

    #[test]
    fn matrix_term_routes() {
        let pr = p("3", "-1");
        let rec = matrix_term(&pr, MatrixKind::Lucas, 9, Source::Recurrence).unwrap();
        let closed = matrix_term(&pr, MatrixKind::Lucas, 9, Source::ClosedForm).unwrap();
        let binet = matrix_term(&pr, MatrixKind::Lucas, 9, Source::Binet).unwrap();
        assert_eq!(rec.matrix, closed.matrix);
        assert_eq!(closed.matrix, binet.matrix);
        assert!(matrix_term(&pr, MatrixKind::Fib, -1, Source::Recurrence).is_err());
        let neg = matrix_term(&pr, MatrixKind::Lucas, -1, Source::ClosedForm).unwrap();
        // L_{-1} = L_1 - a L_0
        assert_eq!(neg.matrix, &lucas_initial1(&pr) - &lucas_initial0(&pr).scale(&pr.a));
    }
}
