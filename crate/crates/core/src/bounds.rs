//! Closed-form point-count bounds for hypersurfaces over finite fields.
//!
//! Every bound evaluates its formula in exact integer arithmetic and reports
//! the hypotheses under which it applies via [`BoundResult`] instead of
//! refusing out-of-domain inputs; census code deliberately probes outside
//! the stated domains. Values that would overflow `i64` come back as
//! `value = 0, valid = false` rather than panicking.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Outcome of a bound that may be sharp, merely an upper bound, or sharp
/// only under extra hypotheses on the field order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundStatus {
    Exact,
    Upper,
    ExactConditional,
}

impl fmt::Display for BoundStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BoundStatus::Exact => "EXACT",
            BoundStatus::Upper => "UPPER",
            BoundStatus::ExactConditional => "EXACT_CONDITIONAL",
        };
        f.write_str(s)
    }
}

/// A bound value together with its validity domain.
///
/// `value` is always the literal formula evaluation; `valid` records whether
/// the input satisfies the hypotheses under which the bound is proven.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundResult {
    pub value: i64,
    pub valid: bool,
    pub domain_note: String,
    pub exceptions: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<BoundStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
}

impl BoundResult {
    fn new(value: Option<i128>, valid: bool, note: &str) -> Self {
        match value.and_then(|v| i64::try_from(v).ok()) {
            Some(v) => BoundResult {
                value: v,
                valid,
                domain_note: note.to_string(),
                exceptions: Vec::new(),
                status: None,
                variant: None,
            },
            None => BoundResult {
                value: 0,
                valid: false,
                domain_note: format!("{note}; value exceeds the integer range"),
                exceptions: Vec::new(),
                status: None,
                variant: None,
            },
        }
    }
}

fn ipow(base: i128, exp: i64) -> Option<i128> {
    if exp < 0 {
        return None;
    }
    let mut acc: i128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

fn pm_checked(q: i128, m: i64) -> Option<i128> {
    // p_m = q^m + ... + q + 1; empty sum for m < 0.
    let mut acc: i128 = 0;
    let mut term: i128 = 1;
    for _ in 0..=m.max(-1) {
        acc = acc.checked_add(term)?;
        term = term.checked_mul(q)?;
    }
    Some(acc)
}

/// Number of points of the projective space of dimension `m` over a field
/// with `q` elements: `q^m + ... + q + 1`, with `pm(q, 0) = 1` and
/// `pm(q, m) = 0` for negative `m` (empty sum).
///
/// Panics if the value exceeds `i64`.
pub fn pm(q: u64, m: i64) -> i64 {
    let v = pm_checked(q as i128, m).expect("projective point count overflows i128");
    i64::try_from(v).expect("projective point count overflows i64")
}

/// Largest prime power `p^e = q`, if `q` is one.
fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if p * p > q {
        return Some((q, 1)); // q itself is prime
    }
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Ore's bound: an affine hypersurface of degree `d < q` in `A^m` has at
/// most `d q^{m-1}` rational points.
pub fn ore_bound(q: u64, d: u64, m: u64) -> BoundResult {
    let value = ipow(q as i128, m as i64 - 1).and_then(|t| t.checked_mul(d as i128));
    let valid = d < q && m >= 1;
    BoundResult::new(value, valid, "affine hypersurface of degree d < q")
}

/// Geil's second-weight bound: an affine hypersurface of degree `d` with
/// `2 <= d < q` that misses the maximum has at most
/// `d q^{m-1} - (d-1) q^{m-2}` points.
pub fn geil_second(q: u64, d: u64, m: u64) -> BoundResult {
    let (q_, d_) = (q as i128, d as i128);
    let value = (|| {
        let a = ipow(q_, m as i64 - 1)?.checked_mul(d_)?;
        let b = ipow(q_, m as i64 - 2)?.checked_mul(d_ - 1)?;
        a.checked_sub(b)
    })();
    let valid = m >= 2 && 2 <= d && d < q;
    BoundResult::new(
        value,
        valid,
        "affine hypersurface of degree 2 <= d < q, m >= 2, below the maximum",
    )
}

/// Serre's bound: a projective hypersurface of degree `1 <= d <= q` in `P^m`
/// has at most `d q^{m-1} + p_{m-2}` rational points.
pub fn serre_bound(q: u64, d: u64, m: u64) -> BoundResult {
    let value = (|| {
        let a = ipow(q as i128, m as i64 - 1)?.checked_mul(d as i128)?;
        a.checked_add(pm_checked(q as i128, m as i64 - 2)?)
    })();
    let valid = 1 <= d && d <= q && m >= 1;
    BoundResult::new(value, valid, "projective hypersurface of degree 1 <= d <= q")
}

/// Homma–Kim bound for line-free plane curves: a plane curve of degree
/// `2 <= d <= q` without rational lines has at most `(d-1)q + 1` points.
/// The single exception `(d, q) = (4, 4)` is flagged in `exceptions`.
pub fn hk_linefree(q: u64, d: u64) -> BoundResult {
    let value = ((d as i128) - 1)
        .checked_mul(q as i128)
        .and_then(|t| t.checked_add(1));
    let exceptional = d == 4 && q == 4;
    let valid = 2 <= d && d <= q && !exceptional;
    let mut r = BoundResult::new(
        value,
        valid,
        "plane curve of degree 2 <= d <= q containing no rational line",
    );
    if exceptional {
        r.exceptions.push("(d,q)=(4,4)".to_string());
    }
    r
}

/// Homma–Kim elementary bound: a hypersurface of degree `2 <= d <= q` in
/// `P^m`, `m >= 3`, containing no rational hyperplane has at most
/// `(d-1)q^{m-1} + d q^{m-2} + p_{m-3}` points.
pub fn hk_elementary(q: u64, d: u64, m: u64) -> BoundResult {
    let (q_, d_) = (q as i128, d as i128);
    let value = (|| {
        let a = ipow(q_, m as i64 - 1)?.checked_mul(d_ - 1)?;
        let b = ipow(q_, m as i64 - 2)?.checked_mul(d_)?;
        let c = pm_checked(q_, m as i64 - 3)?;
        a.checked_add(b)?.checked_add(c)
    })();
    let valid = m >= 3 && 2 <= d && d <= q;
    BoundResult::new(
        value,
        valid,
        "hyperplane-free hypersurface of degree 2 <= d <= q in P^m, m >= 3",
    )
}

/// Improvement of the elementary bound away from its attainers: for
/// `3 <= d <= q`, `d != sqrt(q) + 1`, `m >= 3`, a hyperplane-free
/// hypersurface has at most
/// `(d-1)q^{m-1} + d q^{m-2} + p_{m-3} - (d-2) q^{m-3}` points.
pub fn improved_elementary(q: u64, d: u64, m: u64) -> BoundResult {
    let (q_, d_) = (q as i128, d as i128);
    let value = (|| {
        let base = ipow(q_, m as i64 - 1)?.checked_mul(d_ - 1)?;
        let b = ipow(q_, m as i64 - 2)?.checked_mul(d_)?;
        let c = pm_checked(q_, m as i64 - 3)?;
        let sub = ipow(q_, m as i64 - 3)?.checked_mul(d_ - 2)?;
        base.checked_add(b)?.checked_add(c)?.checked_sub(sub)
    })();
    let hermitian_degree = is_square(q).map(|r| r + 1) == Some(d);
    let valid = m >= 3 && 3 <= d && d <= q && !hermitian_degree;
    let mut r = BoundResult::new(
        value,
        valid,
        "hyperplane-free hypersurface of degree 3 <= d <= q, d != sqrt(q)+1, in P^m, m >= 3",
    );
    if hermitian_degree {
        r.exceptions.push("d = sqrt(q)+1".to_string());
    }
    r
}

fn is_square(q: u64) -> Option<u64> {
    let r = (q as f64).sqrt().round() as u64;
    (r * r == q).then_some(r)
}

/// Second-highest point count of a degree-`d` hypersurface in `P^m`.
///
/// For `m = 2` this is `dq - d + 3` (valid for `3 <= d <= q`). For `m >= 3`
/// and `3 <= d <= (q+3)/2` it is `d q^{m-1} + p_{m-2} - (d-2) q^{m-2}`
/// (`variant = "a"`, attained only by unions of hyperplanes); for
/// `(q+3)/2 < d <= q` it is the improved elementary value (`variant = "b"`).
pub fn second_max_points(q: u64, d: u64, m: u64) -> BoundResult {
    let (q_, d_) = (q as i128, d as i128);
    if m < 2 {
        return BoundResult::new(None, false, "second-highest count requires m >= 2");
    }
    let part_a = || -> Option<i128> {
        let a = ipow(q_, m as i64 - 1)?.checked_mul(d_)?;
        let b = pm_checked(q_, m as i64 - 2)?;
        let sub = ipow(q_, m as i64 - 2)?.checked_mul(d_ - 2)?;
        a.checked_add(b)?.checked_sub(sub)
    };
    let in_domain = 3 <= d && d <= q;
    if m == 2 {
        // dq + 1 - (d-2) = dq - d + 3.
        return BoundResult::new(
            part_a(),
            in_domain,
            "plane curve of degree 3 <= d <= q below the maximum",
        );
    }
    if 2 * d <= q + 3 {
        let mut r = BoundResult::new(
            part_a(),
            in_domain,
            "hypersurface of degree 3 <= d <= (q+3)/2 below the maximum; attained only by unions of hyperplanes",
        );
        r.variant = Some("a".to_string());
        r
    } else {
        let mut r = improved_elementary(q, d, m);
        r.valid = in_domain;
        r.domain_note =
            "hypersurface of degree (q+3)/2 < d <= q below the maximum".to_string();
        r.exceptions.clear();
        r.variant = Some("b".to_string());
        r
    }
}

/// Third-highest point count of a plane curve of degree `d`, `3 <= d <= q`.
///
/// Exact for `d = 3` (`2q+2`), `d = 4` (`4q-2`), and `5 <= d <= (q+5)/2`
/// (`dq + 1 - 2(d-3)`). For `d >= (q+6)/2` the value `(d-1)q + 1` is exact
/// when `q` is a prime or the square of a prime and `d <= q-1`
/// (`ExactConditional`); otherwise only the upper bound `(d-1)q + 2` is
/// known (`Upper`).
pub fn third_weight_curve(q: u64, d: u64) -> Result<BoundResult> {
    let (p, e) = prime_power(q)
        .ok_or_else(|| Error::DomainViolation(format!("q = {q} is not a prime power")))?;
    let _ = p;
    if d < 3 || d > q {
        return Err(Error::DomainViolation(format!(
            "third-highest plane-curve count requires 3 <= d <= q, got d = {d}, q = {q}"
        )));
    }
    let (q_, d_) = (q as i128, d as i128);
    let mut r = if d == 3 {
        let mut r = BoundResult::new(Some(2 * q_ + 2), true, "cubic: line plus disjoint conic");
        r.status = Some(BoundStatus::Exact);
        r
    } else if d == 4 {
        let mut r =
            BoundResult::new(Some(4 * q_ - 2), true, "quartic: four lines in general position");
        r.status = Some(BoundStatus::Exact);
        r
    } else if 2 * d <= q + 5 {
        let mut r = BoundResult::new(
            Some(d_ * q_ + 1 - 2 * (d_ - 3)),
            true,
            "5 <= d <= (q+5)/2: third line-arrangement count",
        );
        r.status = Some(BoundStatus::Exact);
        r
    } else if e <= 2 && d <= q - 1 {
        let mut r = BoundResult::new(
            Some((d_ - 1) * q_ + 1),
            true,
            "d >= (q+6)/2 over a prime or prime-square field, d <= q-1: pencil with a doubled line",
        );
        r.status = Some(BoundStatus::ExactConditional);
        r
    } else {
        let mut r = BoundResult::new(
            Some((d_ - 1) * q_ + 2),
            true,
            "d >= (q+6)/2: upper bound only",
        );
        r.status = Some(BoundStatus::Upper);
        r
    };
    r.valid = true;
    Ok(r)
}

/// The `i`-th highest point count of a union of `d` distinct lines in the
/// plane (stated for `5 <= d <= q`): `dq+1`, `dq-d+3`, `dq+1-2(d-3)` for
/// `i = 1, 2, 3`.
pub fn sboui_line_arrangement(q: u64, d: u64, i: u64) -> Result<i64> {
    let (q, d) = (q as i64, d as i64);
    match i {
        1 => Ok(d * q + 1),
        2 => Ok(d * q - d + 3),
        3 => Ok(d * q + 1 - 2 * (d - 3)),
        _ => Err(Error::BadIndex(i)),
    }
}

/// Zanella's lemma: if every hyperplane section of a set `S` in `P^m` has at
/// most `a` points, then `|S| <= aq + 1`.
pub fn zanella_bound(a: u64, q: u64) -> i64 {
    (a as i64) * (q as i64) + 1
}

/// All bounds evaluated at a single `(q, d, m)`, ready for serialization.
///
/// `serre`, `second`, and `third` are surfaced as plain values; `details`
/// keeps the full [`BoundResult`] per bound. `third` only applies to plane
/// curves and is omitted unless `m = 2` and `3 <= d <= q`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundTable {
    pub q: u64,
    pub d: u64,
    pub m: u64,
    pub ambient: i64,
    pub serre: i64,
    pub second: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub third: Option<i64>,
    pub details: BTreeMap<String, BoundResult>,
}

/// Evaluate every bound at `(q, d, m)`.
pub fn bound_table(q: u64, d: u64, m: u64) -> BoundTable {
    let mut details = BTreeMap::new();
    details.insert("ore".to_string(), ore_bound(q, d, m));
    details.insert("geil".to_string(), geil_second(q, d, m));
    details.insert("serre".to_string(), serre_bound(q, d, m));
    details.insert("hk_linefree".to_string(), hk_linefree(q, d));
    details.insert("hk_elementary".to_string(), hk_elementary(q, d, m));
    details.insert(
        "improved_elementary".to_string(),
        improved_elementary(q, d, m),
    );
    details.insert("second".to_string(), second_max_points(q, d, m));
    let third = (m == 2)
        .then(|| third_weight_curve(q, d).ok())
        .flatten();
    if let Some(t) = &third {
        details.insert("third".to_string(), t.clone());
    }
    BoundTable {
        q,
        d,
        m,
        ambient: pm(q, m as i64),
        serre: details["serre"].value,
        second: details["second"].value,
        third: third.map(|t| t.value),
        details,
    }
}
