//! Truncated formal power series over a coefficient ring, plus the
//! generating-function checkers built on power-series long division.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{int, rat, Coeff, Rational};
use crate::quaternions::{build_gn, hx_scalar_table, AlgebraParams, HxParams, Quaternion};
use crate::report::{params_of, IdentityReport};
use crate::sequences::{convolution, gfl_table, GFLParams};

/// Formal power series truncated at order `N`; `coeffs[k]` is the
/// coefficient of the k-th power, `coeffs.len() = N + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<C: Coeff> {
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncatedSeries<C> {
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has order >= 0");
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }
}

/// Power-series long division: the unique `S` with `den * S = num` up to the
/// truncation order. The formal variable is central, so only the constant
/// term of `den` needs a (left) inverse.
pub fn expand_rational<C: Coeff>(num: &[C], den: &[C], order: usize) -> Result<TruncatedSeries<C>> {
    let d0_inv = den
        .first()
        .and_then(Coeff::inv)
        .ok_or(Error::NonInvertibleConstant)?;
    let mut out: Vec<C> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = num.get(k).cloned().unwrap_or_else(C::zero);
        for (j, d) in den.iter().enumerate().skip(1).take(k) {
            acc = acc.sub(&d.mul(&out[k - j]));
        }
        out.push(d0_inv.mul(&acc));
    }
    Ok(TruncatedSeries::new(out))
}

/// Cauchy product truncated at the common order; the left factor's
/// coefficients multiply on the left.
pub fn series_mul<C: Coeff>(
    s: &TruncatedSeries<C>,
    t: &TruncatedSeries<C>,
) -> Result<TruncatedSeries<C>> {
    if s.order() != t.order() {
        return Err(Error::OrderMismatch(s.order(), t.order()));
    }
    let n = s.order();
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = C::zero();
        for j in 0..=k {
            acc = acc.add(&s.coeffs[j].mul(&t.coeffs[k - j]));
        }
        out.push(acc);
    }
    Ok(TruncatedSeries::new(out))
}

pub fn series_add<C: Coeff>(
    s: &TruncatedSeries<C>,
    t: &TruncatedSeries<C>,
) -> Result<TruncatedSeries<C>> {
    if s.order() != t.order() {
        return Err(Error::OrderMismatch(s.order(), t.order()));
    }
    Ok(TruncatedSeries::new(
        s.coeffs
            .iter()
            .zip(&t.coeffs)
            .map(|(a, b)| a.add(b))
            .collect(),
    ))
}

fn rational_of(n: i64) -> Rational {
    Rational::from(int(n))
}

/// The scalar generating function `A(z) = (qz + (p+2q)z^2) / (1 - z - z^2)`.
pub fn gfl_series(params: &GFLParams, order: usize) -> TruncatedSeries<Rational> {
    let num = [
        rat(0, 1),
        Rational::from(params.q.clone()),
        Rational::from(&params.p + int(2) * &params.q),
    ];
    let den = [rational_of(1), rational_of(-1), rational_of(-1)];
    expand_rational(&num, &den, order).expect("unit constant term")
}

/// Coefficient `n` of `A(z)` equals `g_n^{p,q}` for `n >= 1` (and 0 at `n = 0`).
pub fn check_prop31(params: &GFLParams, order: usize) -> Result<IdentityReport> {
    if order < 2 {
        return Err(Error::Precondition("need order >= 2".into()));
    }
    let series = gfl_series(params, order);
    let g = gfl_table(params, order as u64);
    let mut pass = Zero::is_zero(series.coeff(0));
    let mut first_bad = None;
    for n in 1..=order {
        if series.coeff(n) != &Rational::from(g[n].clone()) {
            pass = false;
            first_bad.get_or_insert(n);
            break;
        }
    }
    let mut report = IdentityReport::new(
        "prop3.1",
        params_of(&[
            ("p", params.p.to_string()),
            ("q", params.q.to_string()),
            ("N", order.to_string()),
        ]),
        format!("coefficients 0..{} of the expansion", order),
        format!("0, g_1, ..., g_{}", order),
        pass,
    );
    if let Some(n) = first_bad {
        report = report.note(format!("first mismatch at coefficient {}", n));
    }
    Ok(report)
}

/// Compares the square of the generating function with the two readings of
/// its claimed coefficients: the asserted reading sums `g_k g_{n-k}` over
/// `k = 1..n` (which the printed four-term closed form matches); the n-th
/// coefficient of `A^2` itself sums over `k = 1..n-1` and the difference
/// `g_n g_0` is reported, never reconciled silently.
pub fn check_prop32_series(params: &GFLParams, order: usize) -> Result<IdentityReport> {
    if order < 2 {
        return Err(Error::Precondition("need order >= 2".into()));
    }
    let a = gfl_series(params, order);
    let a2 = series_mul(&a, &a)?;
    let g = gfl_table(params, order as u64);
    let mut pass = true;
    let mut square_matches_full_sum = true;
    let mut witness = None;
    for n in 2..=order {
        let full = Rational::from(convolution(params, n as u64)?);
        let inner = a2.coeff(n);
        // coefficient n of A^2 = full sum minus the k = n term g_n g_0
        let expected_inner = &full - Rational::from(&g[n] * &g[0]);
        if inner != &expected_inner {
            pass = false;
        }
        if inner != &full {
            square_matches_full_sum = false;
            witness.get_or_insert((n, inner.clone(), full.clone()));
        }
    }
    let mut report = IdentityReport::new(
        "prop3.2-series",
        params_of(&[
            ("p", params.p.to_string()),
            ("q", params.q.to_string()),
            ("N", order.to_string()),
        ]),
        format!("coefficients 2..{} of A^2", order),
        "sum over k = 1..n-1 of g_k g_(n-k)",
        pass,
    );
    if !square_matches_full_sum {
        let (n, inner, full) = witness.unwrap();
        report = report.note(format!(
            "the stated sum runs k = 1..n and includes g_n g_0; at n = {} the A^2 coefficient is {} but the stated sum is {}",
            n, inner, full
        ));
    } else {
        report = report.note("the two coefficient readings coincide on this parameter box");
    }
    Ok(report)
}

/// Quaternion generating function
/// `B(z) = (G_1 z + (G_2 - G_1) z^2) / (1 - z - z^2)`.
pub fn check_prop42(
    params: &GFLParams,
    algebra: &AlgebraParams,
    order: usize,
) -> Result<IdentityReport> {
    if order < 2 {
        return Err(Error::Precondition("need order >= 2".into()));
    }
    let g1 = build_gn(params, 1, algebra)?;
    let g2 = build_gn(params, 2, algebra)?;
    let num = [
        Quaternion::zero(),
        g1.clone(),
        g2.checked_sub(&g1)?,
    ];
    let den = [
        Quaternion::one(),
        Quaternion::scalar(rational_of(-1)),
        Quaternion::scalar(rational_of(-1)),
    ];
    let series: TruncatedSeries<Quaternion<Rational>> = expand_rational(&num, &den, order)?;
    let mut pass = Coeff::is_zero(series.coeff(0));
    let mut first_bad = None;
    for n in 1..=order {
        if series.coeff(n) != &build_gn(params, n as u64, algebra)? {
            pass = false;
            first_bad.get_or_insert(n);
            break;
        }
    }
    let mut report = IdentityReport::new(
        "prop4.2",
        params_of(&[
            ("p", params.p.to_string()),
            ("q", params.q.to_string()),
            ("gamma1", algebra.gamma1().to_string()),
            ("gamma2", algebra.gamma2().to_string()),
            ("N", order.to_string()),
        ]),
        format!("coefficients 0..{} of B(z)", order),
        format!("0, G_1, ..., G_{}", order),
        pass,
    );
    if let Some(n) = first_bad {
        report = report.note(format!("first mismatch at coefficient {}", n));
    }
    Ok(report)
}

/// `A(t) = (G_{h,0} + (G_{h,1} - h(x) G_{h,0}) t) / (1 - h(x) t - t^2)`,
/// coefficients compared against the recurrence-built quaternions evaluated
/// at `x`.
pub fn check_thm45(
    hx: &HxParams,
    x: &Rational,
    algebra: &AlgebraParams,
    order: usize,
) -> Result<IdentityReport> {
    if order < 2 {
        return Err(Error::Precondition("need order >= 2".into()));
    }
    let hval = hx.h.eval(x);
    let table = hx_scalar_table(hx, x, order as u64 + 3);
    let at = |k: usize| {
        Quaternion::new(
            table[k].clone(),
            table[k + 1].clone(),
            table[k + 2].clone(),
            table[k + 3].clone(),
            algebra.clone(),
        )
    };
    let g0 = at(0);
    let g1 = at(1);
    let num = [
        g0.clone(),
        g1.checked_sub(&g0.scale(&hval))?,
    ];
    let den = [
        Quaternion::one(),
        Quaternion::scalar(-&hval),
        Quaternion::scalar(rational_of(-1)),
    ];
    let series: TruncatedSeries<Quaternion<Rational>> = expand_rational(&num, &den, order)?;
    let mut pass = true;
    let mut first_bad = None;
    for n in 0..=order {
        if series.coeff(n) != &at(n) {
            pass = false;
            first_bad.get_or_insert(n);
            break;
        }
    }
    let mut report = IdentityReport::new(
        "thm4.5",
        params_of(&[
            ("h", hx.h.to_string()),
            ("x", x.to_string()),
            ("p", hx.p.to_string()),
            ("q", hx.q.to_string()),
            ("gamma1", algebra.gamma1().to_string()),
            ("gamma2", algebra.gamma2().to_string()),
            ("N", order.to_string()),
        ]),
        format!("coefficients 0..{} of A(t)", order),
        format!("G_h,0(x), ..., G_h,{}(x)", order),
        pass,
    );
    if let Some(n) = first_bad {
        report = report.note(format!("first mismatch at coefficient {}", n));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Polynomial};
    use crate::sequences::gfl;
    use proptest::prelude::*;

    fn rats(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&n| rat(n, 1)).collect()
    }

    #[test]
    fn geometric_series() {
        let s = expand_rational(&rats(&[1]), &rats(&[1, -1]), 3).unwrap();
        assert_eq!(s.coeffs(), rats(&[1, 1, 1, 1]).as_slice());
    }

    #[test]
    fn fibonacci_series() {
        let s = expand_rational(&rats(&[0, 1]), &rats(&[1, -1, -1]), 5).unwrap();
        assert_eq!(s.coeffs(), rats(&[0, 1, 1, 2, 3, 5]).as_slice());
    }

    #[test]
    fn zero_numerator() {
        let s = expand_rational(&rats(&[]), &rats(&[1, -1]), 2).unwrap();
        assert_eq!(s.coeffs(), rats(&[0, 0, 0]).as_slice());
    }

    #[test]
    fn non_invertible_constant_rejected() {
        let r: Result<TruncatedSeries<Rational>> =
            expand_rational(&rats(&[1]), &rats(&[0, 1]), 3);
        assert_eq!(r.unwrap_err(), Error::NonInvertibleConstant);
    }

    #[test]
    fn series_mul_examples() {
        let s = TruncatedSeries::new(rats(&[3, 1, 4]));
        let one = TruncatedSeries::new(rats(&[1, 0, 0]));
        assert_eq!(series_mul(&s, &one).unwrap(), s);
        let t = TruncatedSeries::new(rats(&[0, 1, 1]));
        assert_eq!(series_mul(&t, &t).unwrap().coeffs(), rats(&[0, 0, 1]).as_slice());
        let a = TruncatedSeries::new(rats(&[2]));
        let b = TruncatedSeries::new(rats(&[3]));
        assert_eq!(series_mul(&a, &b).unwrap().coeffs(), rats(&[6]).as_slice());
    }

    #[test]
    fn order_mismatch_rejected() {
        let a = TruncatedSeries::new(rats(&[1, 2]));
        let b = TruncatedSeries::new(rats(&[1]));
        assert_eq!(series_mul(&a, &b).unwrap_err(), Error::OrderMismatch(1, 0));
    }

    #[test]
    fn prop31_examples() {
        let r = check_prop31(&GFLParams::from_i64(1, 1), 8).unwrap();
        assert!(r.pass);
        let s = gfl_series(&GFLParams::from_i64(1, 1), 4);
        assert_eq!(s.coeffs(), rats(&[0, 1, 4, 5, 9]).as_slice());
        let s = gfl_series(&GFLParams::from_i64(0, 1), 3);
        assert_eq!(s.coeff(3), &rat(4, 1));
        assert!(check_prop31(&GFLParams::from_i64(0, 0), 4).unwrap().pass);
    }

    #[test]
    fn prop32_series_examples() {
        let r = check_prop32_series(&GFLParams::from_i64(0, 1), 8).unwrap();
        assert!(r.pass);
        assert!(!r.notes.is_empty());
        // A^2 coefficient 2 is g_1 g_1 = 1; the stated sum is 7
        let a = gfl_series(&GFLParams::from_i64(0, 1), 4);
        let a2 = series_mul(&a, &a).unwrap();
        assert_eq!(a2.coeff(2), &rat(1, 1));
        assert!(check_prop32_series(&GFLParams::from_i64(0, 0), 5).unwrap().pass);
    }

    #[test]
    fn prop42_examples() {
        let alg = AlgebraParams::from_i64(-1, -1).unwrap();
        let r = check_prop42(&GFLParams::from_i64(1, 0), &alg, 8).unwrap();
        assert!(r.pass);
        assert!(check_prop42(&GFLParams::from_i64(0, 0), &alg, 4).unwrap().pass);
        let r = check_prop42(&GFLParams::from_i64(0, 1), &alg, 4).unwrap();
        assert!(r.pass);
        // Lucas specialization sanity for the underlying scalars
        assert_eq!(gfl(&GFLParams::from_i64(0, 1), 5), int(11));
    }

    #[test]
    fn thm45_examples() {
        let alg = AlgebraParams::from_i64(-1, -1).unwrap();
        let hx = HxParams::new(Polynomial::from_i64(&[1]), int(1), int(1));
        assert!(check_thm45(&hx, &rat(1, 1), &alg, 8).unwrap().pass);
        let zero = HxParams::new(Polynomial::x(), int(0), int(0));
        assert!(check_thm45(&zero, &rat(2, 1), &alg, 4).unwrap().pass);
        let hx = HxParams::new(Polynomial::x(), int(0), int(1));
        assert!(check_thm45(&hx, &rat(2, 1), &alg, 6).unwrap().pass);
    }

    proptest! {
        #[test]
        fn expand_round_trip(n0 in -5i64..=5, n1 in -5i64..=5,
                             d1 in -5i64..=5, d2 in -5i64..=5,
                             order in 2usize..12) {
            let num = TruncatedSeries::new({
                let mut v = rats(&[n0, n1]);
                v.resize(order + 1, rat(0, 1));
                v
            });
            let den_poly = rats(&[1, d1, d2]);
            let s = expand_rational(&[rat(n0,1), rat(n1,1)], &den_poly, order).unwrap();
            let den = TruncatedSeries::new({
                let mut v = den_poly.clone();
                v.resize(order + 1, rat(0, 1));
                v
            });
            prop_assert_eq!(series_mul(&den, &s).unwrap(), num);
        }

        #[test]
        fn mul_assoc_and_distributive(a in proptest::collection::vec(-4i64..=4, 4),
                                      b in proptest::collection::vec(-4i64..=4, 4),
                                      c in proptest::collection::vec(-4i64..=4, 4)) {
            let sa = TruncatedSeries::new(rats(&a));
            let sb = TruncatedSeries::new(rats(&b));
            let sc = TruncatedSeries::new(rats(&c));
            let l = series_mul(&series_mul(&sa, &sb).unwrap(), &sc).unwrap();
            let r = series_mul(&sa, &series_mul(&sb, &sc).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            let d = series_mul(&sa, &series_add(&sb, &sc).unwrap()).unwrap();
            let e = series_add(&series_mul(&sa, &sb).unwrap(),
                               &series_mul(&sa, &sc).unwrap()).unwrap();
            prop_assert_eq!(d, e);
        }
    }
}
