//! Exact checks of the matrix identities relating `F_n` and `L_n`, and a
//! grid runner that aggregates them, together with the scalar, matrix and
//! series cross-checks, into a [`SuiteReport`].
//!
//! Chained equalities `X = Y = Z` are split into two records (`X = Y`,
//! `Y = Z`) and commutation is always its own record, so a bad exponent
//! shows up in exactly one place.
//!
//! A few closed forms are known to be misstated in their original shape.
//! Those are still evaluated, tagged [`Expectation::KnownFailure`], and counted
//! under `expected_failures`; a `.corrected` sibling carries the working
//! form and is checked like any other identity.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::arith::{Mat2, Rational};
use crate::error::{Error, Result};
use crate::matrix_seq::{
    cassini_sides, fib_matrix_binet, fib_matrix_binet_compact, fib_matrix_closed, fib_matrix_rec,
    lucas_det, lucas_initial0, lucas_matrix_binet, lucas_matrix_closed, lucas_matrix_rec,
};
use crate::report::{ExpectedFailure, FailureRecord, SkipRecord, SuiteReport, Value};
use crate::sequences::{eps, floor_half, ParamPair, ScalarSource, SeqParams, SeqTable};
use crate::series::{
    finite_inverse_sum_sides, infinite_inverse_series, lucas_direct_sum, lucas_generating_series,
    lucas_partial_sum, InverseSumForm,
};

/// An identity whose original statement is wrong, with the working form.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Deviation {
    pub original: &'static str,
    pub corrected: &'static str,
}

pub const F1_LUCAS_MIDDLE: Deviation = Deviation {
    original: "F_1 L_n = (b/a)^eps(n) (F_{n+2} + F_n) = (b/a)^eps(n+1) L_{n+1}",
    corrected: "F_1 L_n = (a/b)^eps(n) (F_{n+2} + F_n) = (b/a)^eps(n+1) L_{n+1}",
};

pub const FINITE_INVERSE_SUM: Deviation = Deviation {
    original: "sum_{k=0}^{n} L_k x^-k has the term -L_{n+2} / x^(n+2) in its bracket",
    corrected: "sum_{k=0}^{n} L_k x^-k has the term -L_{n+2} / x^(n-2) in its bracket",
};

pub const INFINITE_INVERSE_SUM: Deviation = Deviation {
    original: "D = ax^3 + (a^2+2a/b)x^2 - ax + 2a/b, E = 2x^3 + ax^2 + (ab+2)x + a, \
               F = -ax^3 + (2a/b)x^2 - (a^2 b+3a)x + a^2 + 2a/b",
    corrected: "D = ax^3 + (a^2+2a/b)x^2 + ax - 2a/b, E = 2x^3 + ax^2 - (ab+2)x + a, \
                F = -ax^3 + (2a/b)x^2 + (a^2 b+3a)x - (a^2 + 2a/b)",
};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Expectation {
    Holds,
    KnownFailure(&'static Deviation),
}

/// One exact comparison. `holds` is `lhs == rhs`, nothing more.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub indices: Vec<i64>,
    pub params: ParamPair,
    pub lhs: Value,
    pub rhs: Value,
    pub holds: bool,
    pub expectation: Expectation,
}

impl IdentityCheck {
    pub fn new(
        name: &'static str,
        indices: &[i64],
        params: &SeqParams,
        lhs: impl Into<Value>,
        rhs: impl Into<Value>,
    ) -> Self {
        let (lhs, rhs) = (lhs.into(), rhs.into());
        IdentityCheck {
            name,
            indices: indices.to_vec(),
            params: params.pair(),
            holds: lhs == rhs,
            lhs,
            rhs,
            expectation: Expectation::Holds,
        }
    }

    fn known_failure(mut self, dev: &'static Deviation) -> Self {
        self.expectation = Expectation::KnownFailure(dev);
        self
    }

    /// A failing check that is not explained by a known deviation.
    pub fn is_unexpected_failure(&self) -> bool {
        !self.holds && self.expectation == Expectation::Holds
    }

    pub fn to_failure(&self) -> FailureRecord {
        FailureRecord {
            name: self.name.to_string(),
            indices: self.indices.clone(),
            params: self.params.clone(),
            lhs: self.lhs.clone(),
            rhs: self.rhs.clone(),
        }
    }
}

fn ratio_pow(base: &Rational, exp: i64) -> Rational {
    base.pow(exp).expect("parameters are nonzero")
}

/// `L_0 F_n` and `F_1 L_n` relations, both commutations, and the scalar
/// shadow of the first one in the `(1,2)` entry. Any integer `n` is
/// accepted; negative indices go through the backward-extended closed forms.
pub fn shift_suite<S: ScalarSource + ?Sized>(src: &S, n: i64) -> Vec<IdentityCheck> {
    let p = src.params();
    let (ba, ab) = (p.b_over_a(), p.a_over_b());
    let f = |k: i64| fib_matrix_closed(src, k);
    let l = |k: i64| lucas_matrix_closed(src, k);
    let (en, en1) = (eps(n) as i64, eps(n + 1) as i64);
    let idx = [n];

    let l0 = lucas_initial0(p);
    let f1 = f(1);
    let (fn_, ln) = (f(n), l(n));

    let l0_fn = &l0 * &fn_;
    let ln_scaled = ln.scale(&ratio_pow(&ba, en));
    let fib_neighbors = (&f(n - 1) + &f(n + 1)).scale(&ratio_pow(&ab, en1));

    let f1_ln = &f1 * &ln;
    let fib_pair = &f(n + 2) + &fn_;
    let middle_original = fib_pair.scale(&ratio_pow(&ba, en));
    let middle_corrected = fib_pair.scale(&ratio_pow(&ab, en));
    let shifted = l(n + 1).scale(&ratio_pow(&ba, en1));

    let shadow_lhs = l0_fn.e12.clone();
    let shadow_rhs = ratio_pow(&ba, en) * src.l(n);

    vec![
        IdentityCheck::new("l0_fib.lucas", &idx, p, l0_fn.clone(), ln_scaled.clone()),
        IdentityCheck::new("l0_fib.fib_neighbors", &idx, p, ln_scaled, fib_neighbors),
        IdentityCheck::new("l0_fib.commute", &idx, p, &fn_ * &l0, l0_fn),
        IdentityCheck::new("l0_fib.entry12_scalar", &idx, p, shadow_lhs, shadow_rhs),
        IdentityCheck::new("f1_lucas.fib_neighbors", &idx, p, f1_ln.clone(), middle_original.clone())
            .known_failure(&F1_LUCAS_MIDDLE),
        IdentityCheck::new("f1_lucas.fib_neighbors_to_shift", &idx, p, middle_original, shifted.clone())
            .known_failure(&F1_LUCAS_MIDDLE),
        IdentityCheck::new("f1_lucas.fib_neighbors.corrected", &idx, p, f1_ln.clone(), middle_corrected.clone()),
        IdentityCheck::new("f1_lucas.fib_neighbors_to_shift.corrected", &idx, p, middle_corrected, shifted.clone()),
        IdentityCheck::new("f1_lucas.shift", &idx, p, f1_ln.clone(), shifted),
        IdentityCheck::new("f1_lucas.commute", &idx, p, &ln * &f1, f1_ln),
    ]
}

/// Products `F_m F_n`, `F_m L_n`, `L_m L_n`: commutation and closed form.
pub fn product_suite<S: ScalarSource + ?Sized>(src: &S, m: u64, n: u64) -> Vec<IdentityCheck> {
    let p = src.params();
    let (mi, ni) = (m as i64, n as i64);
    let (ba, ab) = (p.b_over_a(), p.a_over_b());
    let idx = [mi, ni];
    let (fm, fnn) = (fib_matrix_closed(src, mi), fib_matrix_closed(src, ni));
    let (lm, ln) = (lucas_matrix_closed(src, mi), lucas_matrix_closed(src, ni));

    let ff = &fm * &fnn;
    let ff_rhs = fib_matrix_closed(src, mi + ni).scale(&ratio_pow(&ba, eps(mi * ni) as i64));

    let fl = &fm * &ln;
    let fl_exp = (eps(mi) * eps(ni + 1)) as i64;
    let fl_rhs = lucas_matrix_closed(src, mi + ni).scale(&ratio_pow(&ba, fl_exp));

    let ll = &lm * &ln;
    let ll_exp = 2 - (eps(mi + 1) * eps(ni + 1)) as i64;
    let ll_coeff = ratio_pow(&ab, ll_exp) * (&p.ab + &Rational::from(4));
    let ll_rhs = fib_matrix_closed(src, mi + ni).scale(&ll_coeff);

    vec![
        IdentityCheck::new("fib_product.commute", &idx, p, &fnn * &fm, ff.clone()),
        IdentityCheck::new("fib_product.closed", &idx, p, ff, ff_rhs),
        IdentityCheck::new("fib_lucas_product.commute", &idx, p, &ln * &fm, fl.clone()),
        IdentityCheck::new("fib_lucas_product.closed", &idx, p, fl, fl_rhs),
        IdentityCheck::new("lucas_product.commute", &idx, p, &ln * &lm, ll.clone()),
        IdentityCheck::new("lucas_product.closed", &idx, p, ll, ll_rhs),
    ]
}

/// Power identities: `F_n^m`, `F_{n+1}^m` and `L_0^m F_{mn}`. `m = 0` is
/// allowed and means the identity matrix.
pub fn power_checks<S: ScalarSource + ?Sized>(src: &S, m: u64, n: u64) -> Vec<IdentityCheck> {
    let p = src.params();
    let ni = n as i64;
    let powers = Powers {
        fn_: fib_matrix_closed(src, ni).pow(m),
        fn1: fib_matrix_closed(src, ni + 1).pow(m),
        f1: fib_matrix_closed(src, 1).pow(m),
        l0: lucas_initial0(p).pow(m),
        ln: lucas_matrix_closed(src, ni).pow(m),
    };
    power_identities(src, m, n, &powers)
}

/// The `m`-th powers that [`power_checks`] needs at a fixed `n`.
struct Powers {
    fn_: Mat2<Rational>,
    fn1: Mat2<Rational>,
    f1: Mat2<Rational>,
    l0: Mat2<Rational>,
    ln: Mat2<Rational>,
}

impl Powers {
    fn identity() -> Self {
        let i = Mat2::identity();
        Powers { fn_: i.clone(), fn1: i.clone(), f1: i.clone(), l0: i.clone(), ln: i }
    }

    fn step(&mut self, base: &Powers) {
        self.fn_ = &self.fn_ * &base.fn_;
        self.fn1 = &self.fn1 * &base.fn1;
        self.f1 = &self.f1 * &base.f1;
        self.l0 = &self.l0 * &base.l0;
        self.ln = &self.ln * &base.ln;
    }
}

fn power_identities<S: ScalarSource + ?Sized>(src: &S, m: u64, n: u64, pw: &Powers) -> Vec<IdentityCheck> {
    let p = src.params();
    let (mi, ni) = (m as i64, n as i64);
    let (ba, ab) = (p.b_over_a(), p.a_over_b());
    let en = eps(ni) as i64;
    let idx = [mi, ni];
    let f_mn = fib_matrix_closed(src, mi * ni);

    let fn_pow_rhs = f_mn.scale(&ratio_pow(&ba, floor_half(mi) * en));
    let fn1_pow_rhs = (&pw.f1 * &f_mn).scale(&ratio_pow(&ab, floor_half(mi + 1) * en));
    let l0_lhs = &pw.l0 * &f_mn;
    let l0_rhs = pw.ln.scale(&ratio_pow(&ba, floor_half(mi + 1) * en));

    vec![
        IdentityCheck::new("fib_power.closed", &idx, p, pw.fn_.clone(), fn_pow_rhs),
        IdentityCheck::new("fib_shifted_power.closed", &idx, p, pw.fn1.clone(), fn1_pow_rhs),
        IdentityCheck::new("lucas0_power.closed", &idx, p, l0_lhs, l0_rhs),
    ]
}

/// Symmetric products `F_{n-r} F_{n+r}` and `L_{n-r} L_{n+r}`.
pub fn symmetric_checks<S: ScalarSource + ?Sized>(src: &S, n: u64, r: u64) -> Result<Vec<IdentityCheck>> {
    if r > n {
        return Err(Error::InvalidArgument(format!("need r <= n, got n = {n}, r = {r}")));
    }
    let p = src.params();
    let (ni, ri) = (n as i64, r as i64);
    let (ba, ab) = (p.b_over_a(), p.a_over_b());
    let idx = [ni, ri];
    let signed_er = if ni % 2 == 0 { eps(ri) as i64 } else { -(eps(ri) as i64) };

    let ff = &fib_matrix_closed(src, ni - ri) * &fib_matrix_closed(src, ni + ri);
    let f2_pow = fib_matrix_closed(src, 2).pow(n).scale(&ratio_pow(&ba, eps(ni - ri) as i64));
    let fn_ = fib_matrix_closed(src, ni);
    let fn_sq = (&fn_ * &fn_).scale(&ratio_pow(&ba, signed_er));

    let ll = &lucas_matrix_closed(src, ni - ri) * &lucas_matrix_closed(src, ni + ri);
    let ln = lucas_matrix_closed(src, ni);
    let ln_sq = (&ln * &ln).scale(&ratio_pow(&ab, signed_er));

    Ok(vec![
        IdentityCheck::new("fib_symmetric.f2_power", &idx, p, ff, f2_pow.clone()),
        IdentityCheck::new("fib_symmetric.fn_square", &idx, p, f2_pow, fn_sq),
        IdentityCheck::new("lucas_symmetric.closed", &idx, p, ll, ln_sq),
    ])
}

/// Power and symmetric identities for one `(m, n, r)`; needs `r <= n`.
pub fn power_suite<S: ScalarSource + ?Sized>(src: &S, m: u64, n: u64, r: u64) -> Result<Vec<IdentityCheck>> {
    let mut out = symmetric_checks(src, n, r)?;
    out.extend(power_checks(src, m, n));
    Ok(out)
}

/// `L_{n-1} + L_{n+1} = (a/b)(ab+4) F_n` and `F_{n-1} + F_{n+1} = (b/a) L_n`.
pub fn neighbor_sum_checks<S: ScalarSource + ?Sized>(src: &S, n: i64) -> Vec<IdentityCheck> {
    let p = src.params();
    let f = |k: i64| fib_matrix_closed(src, k);
    let l = |k: i64| lucas_matrix_closed(src, k);
    let c = p.a_over_b() * (&p.ab + &Rational::from(4));
    vec![
        IdentityCheck::new("lucas_neighbors.fib", &[n], p, &l(n - 1) + &l(n + 1), f(n).scale(&c)),
        IdentityCheck::new("fib_neighbors.lucas", &[n], p, &f(n - 1) + &f(n + 1), l(n).scale(&p.b_over_a())),
    ]
}

/// Scalar cross relations and the entries of `L_n` against `l_n`.
pub fn scalar_checks<S: ScalarSource + ?Sized>(src: &S, n: i64) -> Vec<IdentityCheck> {
    let p = src.params();
    let ln = src.l(n);
    let lm = lucas_matrix_closed(src, n);
    let idx = [n];
    vec![
        IdentityCheck::new("scalar.lucas_from_fib", &idx, p, ln.clone(), src.q(n - 1) + src.q(n + 1)),
        IdentityCheck::new(
            "scalar.fib_from_lucas",
            &idx,
            p,
            (&p.ab + &Rational::from(4)) * src.q(n),
            src.l(n + 1) + src.l(n - 1),
        ),
        IdentityCheck::new("lucas_matrix.entry12", &idx, p, lm.e12.clone(), ln.clone()),
        IdentityCheck::new("lucas_matrix.entry21", &idx, p, lm.e21.clone(), p.a_over_b() * ln),
    ]
}

pub fn det_check<S: ScalarSource + ?Sized>(src: &S, n: i64) -> IdentityCheck {
    let p = src.params();
    IdentityCheck::new("lucas_matrix.det", &[n], p, lucas_matrix_closed(src, n).det(), lucas_det(p, n))
}

pub fn cassini_check<S: ScalarSource + ?Sized>(src: &S, n: i64) -> IdentityCheck {
    let (lhs, rhs) = cassini_sides(src, n);
    IdentityCheck::new("lucas.cassini", &[n], src.params(), lhs, rhs)
}

const BINET_CHECKS: [&str; 3] = ["fib_matrix.closed_vs_binet", "fib_matrix.binet_vs_compact", "lucas_matrix.closed_vs_binet"];

/// Recurrence, closed form and Binet form of `F_n` and `L_n` against each
/// other. `fib_rec`/`lucas_rec` are the recurrence terms at `n`. The Binet
/// comparisons are left out when `ab = -4`.
pub fn agreement_checks<S: ScalarSource + ?Sized>(
    src: &S,
    n: u64,
    fib_rec: &Mat2<Rational>,
    lucas_rec: &Mat2<Rational>,
) -> Result<Vec<IdentityCheck>> {
    let p = src.params();
    let ni = n as i64;
    let idx = [ni];
    let fc = fib_matrix_closed(src, ni);
    let lc = lucas_matrix_closed(src, ni);
    let mut out = vec![
        IdentityCheck::new("fib_matrix.rec_vs_closed", &idx, p, fib_rec.clone(), fc.clone()),
        IdentityCheck::new("lucas_matrix.rec_vs_closed", &idx, p, lucas_rec.clone(), lc.clone()),
    ];
    if p.binet_allowed() {
        let fb = fib_matrix_binet(p, n)?;
        out.push(IdentityCheck::new(BINET_CHECKS[0], &idx, p, fc, fb.clone()));
        out.push(IdentityCheck::new(BINET_CHECKS[1], &idx, p, fb, fib_matrix_binet_compact(p, n)?));
        out.push(IdentityCheck::new(BINET_CHECKS[2], &idx, p, lc, lucas_matrix_binet(p, n)?));
    }
    Ok(out)
}

/// Generating function, both inverse-power sums (original and corrected)
/// and the partial-sum formula.
///
/// Coefficients `0..order` are compared for the two series; the finite
/// inverse sum runs over `0..=max_index` and the partial sum over
/// `1..=max_index`.
pub fn series_checks(params: &SeqParams, max_index: u64, order: usize) -> Result<Vec<IdentityCheck>> {
    let p = params;
    let mut out = Vec::new();
    let rec: Vec<_> = (0..order as u64).map(|k| lucas_matrix_rec(p, k)).collect();
    if order > 0 {
        let gf = lucas_generating_series(p, order)?;
        let inv_orig = infinite_inverse_series(p, order, InverseSumForm::Original)?;
        let inv_corr = infinite_inverse_series(p, order, InverseSumForm::Corrected)?;
        for (k, term) in rec.iter().enumerate() {
            let idx = [k as i64];
            out.push(IdentityCheck::new("generating_function.coefficient", &idx, p, gf.coeffs()[k].clone(), term.clone()));
            out.push(
                IdentityCheck::new("infinite_inverse_sum.coefficient", &idx, p, inv_orig.coeffs()[k].clone(), term.clone())
                    .known_failure(&INFINITE_INVERSE_SUM),
            );
            out.push(IdentityCheck::new(
                "infinite_inverse_sum.coefficient.corrected",
                &idx,
                p,
                inv_corr.coeffs()[k].clone(),
                term.clone(),
            ));
        }
    }
    for n in 0..=max_index {
        let idx = [n as i64];
        for (name, form) in [
            ("finite_inverse_sum", InverseSumForm::Original),
            ("finite_inverse_sum.corrected", InverseSumForm::Corrected),
        ] {
            let (lhs, rhs) = finite_inverse_sum_sides(p, n, form);
            let check = IdentityCheck::new(name, &idx, p, Value::Laurent(lhs.terms().clone()), Value::Laurent(rhs.terms().clone()));
            out.push(match form {
                InverseSumForm::Original => check.known_failure(&FINITE_INVERSE_SUM),
                InverseSumForm::Corrected => check,
            });
        }
    }
    for n in 1..=max_index {
        out.push(IdentityCheck::new("lucas_partial_sum", &[n as i64], p, lucas_partial_sum(p, n)?, lucas_direct_sum(p, n)));
    }
    Ok(out)
}

/// Options for [`run_suite`].
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub name: String,
    pub max_index: u64,
    /// Number of series coefficients compared.
    pub series_order: usize,
}

impl SuiteConfig {
    pub fn new(name: impl Into<String>, max_index: u64) -> Self {
        SuiteConfig { name: name.into(), max_index, series_order: max_index as usize + 1 }
    }
}

#[derive(Default)]
struct Tally {
    checks_run: usize,
    failures: Vec<FailureRecord>,
    skipped: Vec<SkipRecord>,
    expected: BTreeMap<&'static str, (usize, &'static Deviation)>,
}

impl Tally {
    fn absorb(&mut self, checks: impl IntoIterator<Item = IdentityCheck>) {
        for c in checks {
            self.checks_run += 1;
            match c.expectation {
                Expectation::Holds if !c.holds => self.failures.push(c.to_failure()),
                Expectation::Holds => {}
                Expectation::KnownFailure(dev) => {
                    let slot = self.expected.entry(c.name).or_insert((0, dev));
                    if !c.holds {
                        slot.0 += 1;
                    }
                }
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        self.checks_run += other.checks_run;
        self.failures.extend(other.failures);
        self.skipped.extend(other.skipped);
        for (name, (count, dev)) in other.expected {
            self.expected.entry(name).or_insert((0, dev)).0 += count;
        }
    }
}

/// Every check for one parameter pair with indices up to `max_index`.
fn run_params(p: &SeqParams, cfg: &SuiteConfig) -> Result<Tally> {
    let n_max = cfg.max_index;
    let ni_max = n_max as i64;
    let table = SeqTable::new(p.clone());
    let mut t = Tally::default();

    let (f0, f1) = (fib_matrix_rec(p, 0), fib_matrix_rec(p, 1));
    let (l0, l1) = (lucas_matrix_rec(p, 0), lucas_matrix_rec(p, 1));
    let (mut fib, mut luc) = (vec![f0, f1], vec![l0, l1]);
    for k in 2..=n_max as usize {
        let (fa, la) = if k % 2 == 0 { (&p.a, &p.b) } else { (&p.b, &p.a) };
        fib.push(&fib[k - 1].scale(fa) + &fib[k - 2]);
        luc.push(&luc[k - 1].scale(la) + &luc[k - 2]);
    }
    for n in 0..=n_max {
        t.absorb(agreement_checks(&table, n, &fib[n as usize], &luc[n as usize])?);
    }
    if !p.binet_allowed() {
        let reason = format!(
            "ab = -4 degenerate (a={}, b={}); Binet form undefined for 0 <= n <= {n_max}",
            p.a, p.b
        );
        t.skipped.extend(BINET_CHECKS.iter().map(|name| SkipRecord { name: name.to_string(), reason: reason.clone() }));
    }

    for n in 0..=ni_max {
        t.absorb(scalar_checks(&table, n));
        t.absorb(neighbor_sum_checks(&table, n));
        t.absorb(shift_suite(&table, n));
    }
    for n in -ni_max..=ni_max {
        t.absorb([det_check(&table, n)]);
    }
    for n in 1..=ni_max {
        t.absorb([cassini_check(&table, n)]);
    }
    for m in 0..=n_max {
        for n in 0..=n_max {
            t.absorb(product_suite(&table, m, n));
        }
    }
    let f1 = fib_matrix_closed(&table, 1);
    let l0 = lucas_initial0(p);
    for n in 0..=n_max {
        let ni = n as i64;
        let base = Powers {
            fn_: fib_matrix_closed(&table, ni),
            fn1: fib_matrix_closed(&table, ni + 1),
            f1: f1.clone(),
            l0: l0.clone(),
            ln: lucas_matrix_closed(&table, ni),
        };
        let mut acc = Powers::identity();
        for m in 0..=n_max {
            t.absorb(power_identities(&table, m, n, &acc));
            acc.step(&base);
        }
    }
    for n in 0..=n_max {
        for r in 0..=n {
            t.absorb(symmetric_checks(&table, n, r)?);
        }
    }
    t.absorb(series_checks(p, n_max, cfg.series_order)?);
    Ok(t)
}

/// Runs everything over `grid`, one parameter pair per task. The report
/// lists pairs, failures and skips in grid order and expected failures by
/// name, so it does not depend on scheduling.
pub fn run_suite(grid: &[SeqParams], cfg: &SuiteConfig) -> Result<SuiteReport> {
    let parts: Vec<Tally> = grid.par_iter().map(|p| run_params(p, cfg)).collect::<Result<_>>()?;
    let mut total = Tally::default();
    for part in parts {
        total.merge(part);
    }
    Ok(SuiteReport {
        suite: cfg.name.clone(),
        params: grid.iter().map(SeqParams::pair).collect(),
        checks_run: total.checks_run,
        failures: total.failures,
        skipped: total.skipped,
        expected_failures: total
            .expected
            .into_iter()
            .map(|(name, (occurrences, dev))| ExpectedFailure {
                name: name.to_string(),
                occurrences,
                original: dev.original.to_string(),
                corrected: dev.corrected.to_string(),
            })
            .collect(),
        generated_at_unix: None,
    })
}

pub fn run_full_suite(grid: &[SeqParams], max_index: u64) -> Result<SuiteReport> {
    run_suite(grid, &SuiteConfig::new("full", max_index))
}

/// Built-in parameter grids: `default` is all 49 pairs drawn from
/// `{1, 2, 3, -1, 1/2, -3/2, 5/3}`; `special` is the classical, Pell and
/// `a = b = 3` cases; `degenerate` is the single pair `a = 2, b = -2`.
pub fn grid_preset(name: &str) -> Option<Vec<SeqParams>> {
    let pairs = |vals: &[(&str, &str)]| vals.iter().map(|(a, b)| SeqParams::parse(a, b).expect("preset values are valid")).collect();
    match name {
        "default" => {
            const VALUES: [&str; 7] = ["1", "2", "3", "-1", "1/2", "-3/2", "5/3"];
            Some(
                VALUES
                    .iter()
                    .flat_map(|a| VALUES.iter().map(move |b| SeqParams::parse(a, b).expect("preset values are valid")))
                    .collect(),
            )
        }
        "special" => Some(pairs(&[("1", "1"), ("2", "2"), ("3", "3")])),
        "degenerate" => Some(pairs(&[("2", "-2")])),
        _ => None,
    }
}

pub const GRID_PRESETS: [&str; 3] = ["default", "special", "degenerate"];
