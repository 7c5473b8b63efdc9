//! Scalar bi-periodic Fibonacci `q_n` and Lucas `l_n` numbers over all
//! integer indices.
//!
//! Both satisfy `x_k = c_k x_{k-1} + x_{k-2}` where the coefficient `c_k`
//! alternates between `a` and `b` with the parity of `k`:
//!
//! | sequence | `c_k`, k even | `c_k`, k odd | `x_0` | `x_1` |
//! |----------|---------------|--------------|-------|-------|
//! | `q`      | `a`           | `b`          | 0     | 1     |
//! | `l`      | `b`           | `a`          | 2     | `a`   |
//!
//! Negative indices come from running the recurrence backwards,
//! `x_{k-2} = x_k - c_k x_{k-1}`, which gives `q_{-1} = 1` and `l_{-1} = -a`.

use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::arith::{QuadElement, Rational};
use crate::error::{Error, Result};

/// 1 for odd `n`, 0 for even `n` (negative `n` by parity of `|n|`).
pub fn eps(n: i64) -> u32 {
    (n.rem_euclid(2)) as u32
}

/// `floor(n / 2)` with floor semantics for negative `n`.
pub fn floor_half(n: i64) -> i64 {
    n.div_euclid(2)
}

/// Validated parameter pair with the quantities derived from it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeqParams {
    pub a: Rational,
    pub b: Rational,
    /// `a * b`
    pub ab: Rational,
    /// `D = a^2 b^2 + 4ab`
    pub disc: Rational,
    /// `(ab + sqrt(D)) / 2`
    pub alpha: QuadElement,
    /// `(ab - sqrt(D)) / 2`
    pub beta: QuadElement,
}

impl SeqParams {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroParameter("a"));
        }
        if b.is_zero() {
            return Err(Error::ZeroParameter("b"));
        }
        let ab = &a * &b;
        let disc = &ab * &(&ab + &Rational::from(4));
        let half = Rational::frac(1, 2);
        let alpha = QuadElement::new(&ab * &half, half.clone(), disc.clone());
        let beta = QuadElement::new(&ab * &half, -&half, disc.clone());
        Ok(SeqParams { a, b, ab, disc, alpha, beta })
    }

    /// Parses both parameters from `"p/q"` or integer strings.
    pub fn parse(a: &str, b: &str) -> Result<Self> {
        SeqParams::new(a.parse()?, b.parse()?)
    }

    pub fn from_i64(a: i64, b: i64) -> Result<Self> {
        SeqParams::new(a.into(), b.into())
    }

    /// `a = b = 1`: classical Fibonacci and Lucas numbers.
    pub fn classical() -> Self {
        SeqParams::from_i64(1, 1).expect("nonzero")
    }

    /// `a = b = k`: k-Fibonacci and k-Lucas numbers.
    pub fn uniform(k: Rational) -> Result<Self> {
        SeqParams::new(k.clone(), k)
    }

    /// `a = b = 2`: Pell and Pell-Lucas numbers.
    pub fn pell() -> Self {
        SeqParams::from_i64(2, 2).expect("nonzero")
    }

    /// Binet forms need `alpha != beta`, i.e. `ab != -4`.
    pub fn binet_allowed(&self) -> bool {
        !self.disc.is_zero()
    }

    /// `b / a`
    pub fn b_over_a(&self) -> Rational {
        self.b.checked_div(&self.a).expect("a is nonzero")
    }

    /// `a / b`
    pub fn a_over_b(&self) -> Rational {
        self.a.checked_div(&self.b).expect("b is nonzero")
    }

    /// `(b/a)^exp` for any integer exponent.
    pub fn b_over_a_pow(&self, exp: i64) -> Rational {
        self.b_over_a().pow(exp).expect("nonzero base")
    }

    /// `(a/b)^exp` for any integer exponent.
    pub fn a_over_b_pow(&self, exp: i64) -> Rational {
        self.a_over_b().pow(exp).expect("nonzero base")
    }

    pub fn pair(&self) -> ParamPair {
        ParamPair { a: self.a.clone(), b: self.b.clone() }
    }

    fn fib_coeff(&self, k: i64) -> &Rational {
        if eps(k) == 0 {
            &self.a
        } else {
            &self.b
        }
    }

    fn lucas_coeff(&self, k: i64) -> &Rational {
        if eps(k) == 1 {
            &self.a
        } else {
            &self.b
        }
    }
}

/// The `(a, b)` pair as it appears in reports.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct ParamPair {
    pub a: Rational,
    pub b: Rational,
}

/// A sequence value tagged with its index.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SeqValue {
    pub index: i64,
    pub value: Rational,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Which {
    Fib,
    Lucas,
}

impl Which {
    fn initial(self, p: &SeqParams) -> (Rational, Rational) {
        match self {
            Which::Fib => (Rational::zero(), Rational::one()),
            Which::Lucas => (Rational::from(2), p.a.clone()),
        }
    }

    fn coeff(self, p: &SeqParams, k: i64) -> &Rational {
        match self {
            Which::Fib => p.fib_coeff(k),
            Which::Lucas => p.lucas_coeff(k),
        }
    }
}

fn walk(p: &SeqParams, which: Which, n: i64) -> Rational {
    let (x0, x1) = which.initial(p);
    if n >= 0 {
        // (prev, cur) = (x_{k-1}, x_k)
        let (mut prev, mut cur) = (x0, x1);
        if n == 0 {
            return prev;
        }
        for k in 2..=n {
            let next = which.coeff(p, k) * &cur + &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    } else {
        // (hi, lo) = (x_k, x_{k-1})
        let (mut hi, mut lo) = (x1, x0);
        let mut k = 1;
        while k - 1 > n {
            let next = &hi - &(which.coeff(p, k) * &lo);
            hi = std::mem::replace(&mut lo, next);
            k -= 1;
        }
        lo
    }
}

/// Bi-periodic Fibonacci number `q_n`.
pub fn q(params: &SeqParams, n: i64) -> Rational {
    walk(params, Which::Fib, n)
}

/// Bi-periodic Lucas number `l_n`.
pub fn l(params: &SeqParams, n: i64) -> Rational {
    walk(params, Which::Lucas, n)
}

/// `l_n = q_{n-1} + q_{n+1}`
pub fn check_lucas_from_fib(params: &SeqParams, n: i64) -> bool {
    l(params, n) == q(params, n - 1) + q(params, n + 1)
}

/// `(ab + 4) q_n = l_{n+1} + l_{n-1}`
pub fn check_fib_from_lucas(params: &SeqParams, n: i64) -> bool {
    (&params.ab + &Rational::from(4)) * q(params, n) == l(params, n + 1) + l(params, n - 1)
}

/// Anything that can produce `q_n` and `l_n` for a fixed parameter pair.
pub trait ScalarSource {
    fn params(&self) -> &SeqParams;
    fn q(&self, n: i64) -> Rational;
    fn l(&self, n: i64) -> Rational;
}

impl ScalarSource for SeqParams {
    fn params(&self) -> &SeqParams {
        self
    }
    fn q(&self, n: i64) -> Rational {
        q(self, n)
    }
    fn l(&self, n: i64) -> Rational {
        l(self, n)
    }
}

impl ScalarSource for SeqTable {
    fn params(&self) -> &SeqParams {
        &self.params
    }
    fn q(&self, n: i64) -> Rational {
        SeqTable::q(self, n)
    }
    fn l(&self, n: i64) -> Rational {
        SeqTable::l(self, n)
    }
}

/// Values for indices `-len_neg ..= len_pos - 1`, stored as two growing arrays.
#[derive(Default)]
struct Run {
    pos: Vec<Rational>,
    neg: Vec<Rational>,
}

impl Run {
    fn get(&self, n: i64) -> Option<&Rational> {
        if n >= 0 {
            self.pos.get(n as usize)
        } else {
            self.neg.get((-n - 1) as usize)
        }
    }

    fn extend_to(&mut self, p: &SeqParams, which: Which, n: i64) {
        if self.pos.len() < 2 {
            let (x0, x1) = which.initial(p);
            self.pos = vec![x0, x1];
        }
        if n >= 0 {
            while (self.pos.len() as i64) <= n {
                let k = self.pos.len() as i64;
                let next = which.coeff(p, k) * &self.pos[k as usize - 1] + &self.pos[k as usize - 2];
                self.pos.push(next);
            }
        } else {
            while (self.neg.len() as i64) < -n {
                // produce x_{k-2} from x_k and x_{k-1}, with k-2 = -(len+1)
                let target = -(self.neg.len() as i64) - 1;
                let k = target + 2;
                let xk = self.get(k).expect("filled").clone();
                let xk1 = self.get(k - 1).expect("filled").clone();
                self.neg.push(&xk - &(which.coeff(p, k) * &xk1));
            }
        }
    }
}

/// Memoized `q` and `l` for one parameter pair.
///
/// Lookups take a read lock; misses upgrade to a write lock and extend the
/// table, so concurrent callers always see fully computed values.
pub struct SeqTable {
    params: SeqParams,
    fib: RwLock<Run>,
    lucas: RwLock<Run>,
}

impl SeqTable {
    pub fn new(params: SeqParams) -> Self {
        SeqTable { params, fib: RwLock::default(), lucas: RwLock::default() }
    }

    pub fn params(&self) -> &SeqParams {
        &self.params
    }

    fn lookup(&self, run: &RwLock<Run>, which: Which, n: i64) -> Rational {
        if let Some(v) = run.read().expect("memo lock poisoned").get(n) {
            return v.clone();
        }
        let mut w = run.write().expect("memo lock poisoned");
        w.extend_to(&self.params, which, n);
        w.get(n).expect("just extended").clone()
    }

    pub fn q(&self, n: i64) -> Rational {
        self.lookup(&self.fib, Which::Fib, n)
    }

    pub fn l(&self, n: i64) -> Rational {
        self.lookup(&self.lucas, Which::Lucas, n)
    }
}
