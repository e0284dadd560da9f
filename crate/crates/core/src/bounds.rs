//! Exact evaluation of the generation/class-count inequalities at chosen
//! parameters.
//!
//! Every verdict is computed with exact big-integer rational arithmetic;
//! square roots (from class bounds of the shape `z·3^{(n−1)/2}` at even n−1)
//! are carried symbolically and compared by squaring. Binary logarithms of
//! non-powers-of-two are replaced by rational *upper* bounds, which only ever
//! weakens the lower bounds they enter — a `true` verdict is therefore always
//! sound, while a `false` verdict may merely mean the approximation or the
//! parameters are outside the claimed regime. Each report also carries
//! independently computed floating-point mirrors so any disagreement between
//! the two arithmetics can be flagged as a bug.

use num::{BigInt, BigRational, One, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// An exact nonnegative-radicand value: either a rational or `coeff·√radicand`
/// with `coeff ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactReal {
    Rat(BigRational),
    SqrtScaled { coeff: BigRational, radicand: u64 },
}

impl ExactReal {
    pub fn from_u64(n: u64) -> ExactReal {
        ExactReal::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ge(&self, other: &ExactReal) -> bool {
        use ExactReal::*;
        match (self, other) {
            (Rat(a), Rat(b)) => a >= b,
            (Rat(a), SqrtScaled { coeff, radicand }) => {
                if a.is_negative() {
                    false
                } else {
                    a * a >= coeff * coeff * BigRational::from_integer(BigInt::from(*radicand))
                }
            }
            (SqrtScaled { coeff, radicand }, Rat(b)) => {
                if !b.is_positive() {
                    true
                } else {
                    coeff * coeff * BigRational::from_integer(BigInt::from(*radicand)) >= b * b
                }
            }
            (
                SqrtScaled { coeff, radicand },
                SqrtScaled {
                    coeff: c2,
                    radicand: r2,
                },
            ) => {
                coeff * coeff * BigRational::from_integer(BigInt::from(*radicand))
                    >= c2 * c2 * BigRational::from_integer(BigInt::from(*r2))
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExactReal::Rat(r) => r.to_f64().unwrap_or(f64::NAN),
            ExactReal::SqrtScaled { coeff, radicand } => {
                coeff.to_f64().unwrap_or(f64::NAN) * (*radicand as f64).sqrt()
            }
        }
    }
}

impl std::fmt::Display for ExactReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExactReal::Rat(r) => write!(f, "{r}"),
            ExactReal::SqrtScaled { coeff, radicand } => write!(f, "{coeff}·√{radicand}"),
        }
    }
}

/// One evaluated inequality: an exact lower bound on the covering number `d`
/// against an exact upper bound on the class-style count `k`, with the
/// generation-probability interval where the family provides one.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub family: &'static str,
    pub params: Vec<(&'static str, String)>,
    pub d_lower: ExactReal,
    pub k_upper: ExactReal,
    /// Labeled candidate upper bounds considered for `k` (the minimum wins).
    pub k_candidates: Vec<(String, ExactReal)>,
    /// Exclusive-lower/inclusive-upper bracket for the generation
    /// probability, when the family states one.
    pub p_interval: Option<(BigRational, BigRational)>,
    pub verdict: bool,
    pub caveats: Vec<String>,
    /// Independent floating-point recomputations, for cross-checking only —
    /// never used for the verdict.
    pub d_lower_f64: f64,
    pub k_upper_f64: f64,
}

fn rat_int(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Deterministic Miller–Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let pow_mod = |mut base: u128, mut exp: u64, m: u128| -> u128 {
        let mut acc: u128 = 1;
        base %= m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a as u128, d, n as u128);
        if x == 1 || x == (n - 1) as u128 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x * x % n as u128;
            if x == (n - 1) as u128 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn integer_root(q: u64, f: u32) -> u64 {
    if f == 1 {
        return q;
    }
    let mut r = (q as f64).powf(1.0 / f as f64).round() as u64;
    if r < 1 {
        r = 1;
    }
    // Correct the floating seed exactly.
    let pow_checked = |b: u64, e: u32| -> Option<u64> {
        let mut acc: u64 = 1;
        for _ in 0..e {
            acc = acc.checked_mul(b)?;
        }
        Some(acc)
    };
    while pow_checked(r, f).is_none_or(|v| v > q) {
        r -= 1;
    }
    while pow_checked(r + 1, f).is_some_and(|v| v <= q) {
        r += 1;
    }
    r
}

/// Decompose q = p^f with p prime, preferring the maximal exponent (so p is
/// the actual prime base). Returns None when q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    for f in (2..=63u32).rev() {
        let r = integer_root(q, f);
        if r >= 2 {
            let mut acc: u64 = 1;
            let mut ok = true;
            for _ in 0..f {
                match acc.checked_mul(r) {
                    Some(v) => acc = v,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && acc == q && is_prime(r) {
                return Some((r, f));
            }
        }
    }
    if is_prime(q) {
        Some((q, 1))
    } else {
        None
    }
}

/// A rational strict upper bound on log₂ q, exact when q is a power of two.
/// Over-estimating the logarithm only shrinks the lower bounds it is
/// subtracted from, keeping `true` verdicts sound.
fn log2_upper(q: u64, p: u64, f: u32) -> (BigRational, bool) {
    if p == 2 {
        (rat_int(BigInt::from(f)), true)
    } else {
        const K: u32 = 1024;
        let bits = BigInt::from(q).pow(K).bits();
        (
            BigRational::new(BigInt::from(bits), BigInt::from(K)),
            false,
        )
    }
}

/// The class-number bound `z·3^{(n−1)/2}`, exact: an integer when n is odd,
/// a √3 multiple when n is even.
fn three_power_half(n: usize, z: u64) -> ExactReal {
    let zb = rat_int(BigInt::from(z));
    if (n - 1).is_multiple_of(2) {
        ExactReal::Rat(zb * rat_int(BigInt::from(3u32).pow(((n - 1) / 2) as u32)))
    } else {
        ExactReal::SqrtScaled {
            coeff: zb * rat_int(BigInt::from(3u32).pow(((n - 2) / 2) as u32)),
            radicand: 3,
        }
    }
}

fn factorial_big(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Covers of alternating groups: compare the probabilistic lower bound on the
/// covering number of a central extension of Alt(n) against the smallest
/// available upper bound on its class count.
///
/// `exact_k_cover` is an exactly computed class count of the cover itself;
/// `exact_k_simple` an exact class count of Alt(n), multiplied by the center
/// bound `z`. Both are optional refinements of the universal `z·3^{(n−1)/2}`.
pub fn alt_cover_report(
    n: usize,
    exact_k_cover: Option<u64>,
    exact_k_simple: Option<u64>,
) -> Result<BoundReport> {
    if n < 5 {
        return Err(Error::unsupported(
            "the covering bound applies from degree 5 up",
        ));
    }
    let z: u64 = if n == 6 || n == 7 { 6 } else { 2 };
    let out: u64 = if n == 6 { 4 } else { 2 };
    let nn = BigInt::from(n);
    let p_lower = BigRational::one() - rat_int(nn.clone()).recip()
        - rat_int(BigInt::from(13)) / rat_int(nn.clone() * nn.clone());
    let p_upper = BigRational::one() - rat_int(nn.clone()).recip()
        + rat_int(BigInt::from(2)) / (rat_int(BigInt::from(3)) * rat_int(nn.clone() * nn.clone()));
    let alt_order = factorial_big(n) / BigInt::from(2);
    let d_lower_rat = &p_lower * rat_int(alt_order.clone()) / rat_int(BigInt::from(out));

    let mut k_candidates: Vec<(String, ExactReal)> = Vec::new();
    if let Some(k) = exact_k_cover {
        k_candidates.push(("exact-cover-classes".to_string(), ExactReal::from_u64(k)));
    }
    if let Some(k) = exact_k_simple {
        k_candidates.push((
            "center-times-simple-classes".to_string(),
            ExactReal::from_u64(z * k),
        ));
    }
    k_candidates.push((
        "center-times-class-bound".to_string(),
        three_power_half(n, z),
    ));
    let k_upper = k_candidates
        .iter()
        .map(|(_, v)| v.clone())
        .reduce(|best, c| if best.ge(&c) { c } else { best })
        .expect("at least the universal bound is present");

    // Covering numbers are integers, so the integer ceiling of the rational
    // lower bound is still a valid lower bound.
    let d_ceil = ExactReal::Rat(d_lower_rat.ceil());
    let verdict = d_ceil.ge(&k_upper);

    let nf = n as f64;
    let p_lower_f = 1.0 - 1.0 / nf - 13.0 / (nf * nf);
    let alt_f = (2..=n).map(|k| k as f64).product::<f64>() / 2.0;
    let d_lower_f64 = p_lower_f * alt_f / out as f64;

    Ok(BoundReport {
        family: "alt-cover",
        params: vec![
            ("n", n.to_string()),
            ("z", z.to_string()),
            ("out", out.to_string()),
        ],
        d_lower: ExactReal::Rat(d_lower_rat),
        k_upper: k_upper.clone(),
        k_candidates,
        p_interval: Some((p_lower, p_upper)),
        verdict,
        caveats: vec![
            "verdict compares the integer ceiling of the lower bound (counts are integers)"
                .to_string(),
        ],
        d_lower_f64,
        k_upper_f64: k_upper.to_f64(),
    })
}

/// Special linear groups SL(n, q): exact evaluation of the displayed lower
/// bound on the covering number against `q^{n−1} + 3q^{n−2}`.
pub fn sl_report(n: u32, q: u64) -> Result<BoundReport> {
    if n < 2 {
        return Err(Error::precondition("dimension must be at least 2"));
    }
    let (p, f) = prime_power(q)
        .ok_or_else(|| Error::precondition(format!("{q} is not a prime power")))?;
    let c: BigInt = if n >= 10 {
        BigInt::from(36)
    } else {
        BigInt::from(10u64.pow(10))
    };
    let (l2, l2_exact) = log2_upper(q, p, f);
    let qb = BigInt::from(q);
    let mut order_factor = qb.pow(n * (n - 1) / 2);
    for i in 2..=n {
        order_factor *= qb.pow(i) - BigInt::one();
    }
    let numer_core = rat_int(qb.pow(n - 1))
        - rat_int(c.clone()) * rat_int(BigInt::from(n).pow(3)) * (&l2 * &l2);
    let denom = rat_int(
        BigInt::from(2) * qb.pow(n - 1) * BigInt::from(gcd_u64(n as u64, q - 1)).pow(2),
    ) * rat_int(BigInt::from(f));
    let d_lower_rat = numer_core * rat_int(order_factor) / denom;
    let k_upper_int = qb.pow(n - 1) + BigInt::from(3) * qb.pow(n - 2);
    let k_upper = ExactReal::Rat(rat_int(k_upper_int.clone()));
    let d_lower = ExactReal::Rat(d_lower_rat);
    let verdict = d_lower.ge(&k_upper);

    let mut caveats = Vec::new();
    if n <= 9 && q < 10u64.pow(15) {
        caveats.push(format!(
            "for dimension ≤ 9 the claimed regime needs q ≥ 10^15; q = {q} is below it"
        ));
    }
    if !l2_exact {
        caveats.push("log₂ q replaced by a rational upper bound (sound direction)".to_string());
    }

    let qf = q as f64;
    let cf: f64 = if n >= 10 { 36.0 } else { 1e10 };
    let mut order_f = qf.powi((n * (n - 1) / 2) as i32);
    for i in 2..=n {
        order_f *= qf.powi(i as i32) - 1.0;
    }
    let d_lower_f64 = (qf.powi(n as i32 - 1) - cf * (n as f64).powi(3) * qf.log2().powi(2))
        * order_f
        / (2.0 * qf.powi(n as i32 - 1) * (gcd_u64(n as u64, q - 1) as f64).powi(2) * f as f64);
    let k_upper_f64 = qf.powi(n as i32 - 1) + 3.0 * qf.powi(n as i32 - 2);

    Ok(BoundReport {
        family: "sl-nq",
        params: vec![
            ("n", n.to_string()),
            ("q", q.to_string()),
            ("p", p.to_string()),
            ("f", f.to_string()),
        ],
        d_lower,
        k_upper: k_upper.clone(),
        k_candidates: vec![("power-bound".to_string(), k_upper)],
        p_interval: None,
        verdict,
        caveats,
        d_lower_f64,
        k_upper_f64,
    })
}

/// SL(2, p) for prime p: the fully explicit chain
/// `(p²−p−10)(p³−p)/(p²·(2,p−1)²) ≥ p+4`.
pub fn sl2p_report(p: u64) -> Result<BoundReport> {
    if !is_prime(p) {
        return Err(Error::precondition(format!("{p} is not prime")));
    }
    let pb = BigInt::from(p);
    let d2 = BigInt::from(gcd_u64(2, p - 1));
    let lhs = rat_int((pb.clone() * pb.clone() - pb.clone() - BigInt::from(10)) * (pb.pow(3) - pb.clone()))
        / rat_int(pb.clone() * pb.clone() * d2.clone() * d2.clone());
    let rhs = rat_int(pb + BigInt::from(4));
    let p_lower = BigRational::one()
        - rat_int(BigInt::from(p)).recip()
        - rat_int(BigInt::from(10)) / rat_int(BigInt::from(p * p));
    let d_lower = ExactReal::Rat(lhs);
    let k_upper = ExactReal::Rat(rhs);
    let verdict = d_lower.ge(&k_upper);
    let pf = p as f64;
    let d_lower_f64 =
        (pf * pf - pf - 10.0) * (pf.powi(3) - pf) / (pf * pf * (gcd_u64(2, p - 1) as f64).powi(2));
    Ok(BoundReport {
        family: "sl-2p",
        params: vec![("p", p.to_string())],
        d_lower,
        k_upper: k_upper.clone(),
        k_candidates: vec![("p-plus-4".to_string(), k_upper)],
        p_interval: Some((p_lower, BigRational::one())),
        verdict,
        caveats: vec!["the chain is claimed for p ≥ 5".to_string()],
        d_lower_f64,
        k_upper_f64: pf + 4.0,
    })
}

/// Generic rank/field instance: probabilistic lower bound with user-supplied
/// asymptotic constant against `(136/5)·q^rank`, instantiated for the
/// projective special linear family of that rank.
pub fn lie_report(rank: u32, q: u64, c_assumed: u64) -> Result<BoundReport> {
    if rank < 1 {
        return Err(Error::precondition("rank must be at least 1"));
    }
    let (p, f) = prime_power(q)
        .ok_or_else(|| Error::precondition(format!("{q} is not a prime power")))?;
    let (l2, l2_exact) = log2_upper(q, p, f);
    let qb = BigInt::from(q);
    let q_rank = qb.pow(rank);
    let p_lower = BigRational::one()
        - rat_int(BigInt::from(c_assumed)) * rat_int(BigInt::from(rank).pow(3)) * (&l2 * &l2)
            / rat_int(q_rank.clone());
    let np = rank + 1;
    let d_np = gcd_u64(np as u64, q - 1);
    let mut sl_order = qb.pow(np * (np - 1) / 2);
    for i in 2..=np {
        sl_order *= qb.pow(i) - BigInt::one();
    }
    let psl_order = rat_int(sl_order) / rat_int(BigInt::from(d_np));
    let out_upper = rat_int(BigInt::from(2 * d_np) * BigInt::from(f));
    let d_lower_rat = &p_lower * psl_order / out_upper;
    let k_upper_rat = rat_int(BigInt::from(136)) / rat_int(BigInt::from(5)) * rat_int(q_rank);
    let d_lower = ExactReal::Rat(d_lower_rat);
    let k_upper = ExactReal::Rat(k_upper_rat);
    let verdict = d_lower.ge(&k_upper);
    let mut caveats = vec![
        "asymptotic constant supplied by the caller, not derived".to_string(),
        "instantiated for the projective special linear family of this rank".to_string(),
    ];
    if !l2_exact {
        caveats.push("log₂ q replaced by a rational upper bound (sound direction)".to_string());
    }
    let qf = q as f64;
    let p_lower_f =
        1.0 - c_assumed as f64 * (rank as f64).powi(3) * qf.log2().powi(2) / qf.powi(rank as i32);
    let mut sl_f = qf.powi((np * (np - 1) / 2) as i32);
    for i in 2..=np {
        sl_f *= qf.powi(i as i32) - 1.0;
    }
    let d_lower_f64 = p_lower_f * (sl_f / d_np as f64) / (2.0 * d_np as f64 * f as f64);
    Ok(BoundReport {
        family: "lie-type",
        params: vec![
            ("rank", rank.to_string()),
            ("q", q.to_string()),
            ("c", c_assumed.to_string()),
        ],
        d_lower,
        k_upper: k_upper.clone(),
        k_candidates: vec![("q-power-bound".to_string(), k_upper)],
        p_interval: Some((p_lower, BigRational::one())),
        verdict,
        caveats,
        d_lower_f64,
        k_upper_f64: 27.2 * qf.powi(rank as i32),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratef(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn rat_is(v: &ExactReal, n: i64, d: i64) -> bool {
        matches!(v, ExactReal::Rat(r) if *r == ratef(n, d))
    }

    #[test]
    fn degree_five_cover_squeezes_through_exact_class_count() {
        let r = alt_cover_report(5, Some(9), Some(5)).unwrap();
        // p_lower = 7/25, |Alt(5)| = 60, out = 2 → 42/5 = 8.4, ceiling 9.
        assert!(rat_is(&r.d_lower, 42, 5));
        assert!(rat_is(&r.k_upper, 9, 1));
        assert!(r.verdict);
        let (lo, hi) = r.p_interval.unwrap();
        assert_eq!(lo, ratef(7, 25));
        assert_eq!(hi, ratef(62, 75));
        // The exact generation probability 19/30 sits inside the bracket.
        let p_exact = ratef(19, 30);
        assert!(p_exact > lo && p_exact <= hi);
        assert!(r.d_lower_f64 < r.k_upper_f64);
        // Floats see 8.4 < 9; the verdict relies on integrality, which the
        // float mirror cannot express — the ceiling rule is the documented
        // difference.
    }

    #[test]
    fn degree_six_cover_uses_exceptional_center_and_outer() {
        let r = alt_cover_report(6, None, Some(7)).unwrap();
        // p_lower = 17/36, |Alt(6)| = 360, out = 4 → 42.5.
        assert!(rat_is(&r.d_lower, 85, 2));
        // Candidates: 6·7 = 42 beats 6·3^{2.5} = 54√3 ≈ 93.5.
        assert!(rat_is(&r.k_upper, 42, 1));
        assert!(r.verdict);
        assert!(r.k_candidates.len() == 2);
    }

    #[test]
    fn degree_eight_cover_falls_back_to_radical_bound() {
        let r = alt_cover_report(8, None, None).unwrap();
        assert!(rat_is(&r.d_lower, 13545, 2));
        match &r.k_upper {
            ExactReal::SqrtScaled { coeff, radicand } => {
                assert_eq!(*coeff, ratef(54, 1));
                assert_eq!(*radicand, 3);
            }
            other => panic!("expected a √3 bound, got {other}"),
        }
        assert!(r.verdict);
        assert!(format!("{}", r.k_upper).contains("√3"));
        assert_eq!((r.d_lower_f64 >= r.k_upper_f64), r.verdict);
    }

    #[test]
    fn small_degrees_are_refused() {
        assert!(alt_cover_report(4, None, None).is_err());
    }

    #[test]
    fn sl_ten_four_holds_exactly() {
        let r = sl_report(10, 4).unwrap();
        assert!(r.verdict);
        assert!(rat_is(&r.k_upper, 458752, 1));
        assert!(r.caveats.is_empty());
        assert_eq!((r.d_lower_f64 >= r.k_upper_f64), r.verdict);
    }

    #[test]
    fn sl_two_two_fails_and_carries_regime_caveat() {
        let r = sl_report(2, 2).unwrap();
        assert!(!r.verdict);
        assert!(r.caveats.iter().any(|c| c.contains("10^15")));
        assert_eq!((r.d_lower_f64 >= r.k_upper_f64), r.verdict);
    }

    #[test]
    fn sl_small_dimension_regime_boundary() {
        // Below the threshold the small-dimension constant crushes the bound…
        let r = sl_report(9, 4).unwrap();
        assert!(!r.verdict);
        assert!(r.caveats.iter().any(|c| c.contains("10^15")));
        // …above it (2^50 > 10^15) the verdict turns true with no caveat.
        let r = sl_report(9, 1 << 50).unwrap();
        assert!(r.verdict);
        assert!(r.caveats.is_empty());
    }

    #[test]
    fn sl_rejects_bad_parameters() {
        assert!(sl_report(1, 5).is_err());
        assert!(sl_report(3, 6).is_err());
        assert!(sl_report(3, 0).is_err());
    }

    #[test]
    fn sl2p_chain_frozen_at_five() {
        let r = sl2p_report(5).unwrap();
        assert!(rat_is(&r.d_lower, 12, 1));
        assert!(rat_is(&r.k_upper, 9, 1));
        assert!(r.verdict);
        assert_eq!((r.d_lower_f64 >= r.k_upper_f64), r.verdict);
    }

    #[test]
    fn sl2p_outside_claimed_range() {
        let r = sl2p_report(3).unwrap();
        assert!(!r.verdict);
        let r = sl2p_report(2).unwrap();
        assert!(!r.verdict);
        assert!(sl2p_report(4).is_err());
    }

    #[test]
    fn lie_degenerate_rank_one_over_two_elements() {
        for c in [0, 1, 36, 1000] {
            let r = lie_report(1, 2, c).unwrap();
            assert!(!r.verdict, "c = {c}");
        }
    }

    #[test]
    fn lie_frozen_k_upper_and_caveats() {
        let r = lie_report(2, 5, 36).unwrap();
        assert!(rat_is(&r.k_upper, 680, 1));
        assert!(r.caveats.iter().any(|c| c.contains("constant")));
        let r = lie_report(4, 9, 36).unwrap();
        assert!(!r.caveats.is_empty());
        assert_eq!((r.d_lower_f64 >= r.k_upper_f64), r.verdict);
    }

    #[test]
    fn primality_and_prime_powers() {
        assert!(is_prime(2));
        assert!(is_prime(97));
        assert!(is_prime((1u64 << 61) - 1));
        assert!(!is_prime(1));
        assert!(!is_prime(561)); // Carmichael
        assert!(!is_prime(1 << 61));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(1024), Some((2, 10)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn exact_real_comparisons_square_correctly() {
        let sqrt = ExactReal::SqrtScaled {
            coeff: ratef(54, 1),
            radicand: 3,
        }; // ≈ 93.53
        assert!(!ExactReal::from_u64(93).ge(&sqrt));
        assert!(ExactReal::from_u64(94).ge(&sqrt));
        assert!(sqrt.ge(&ExactReal::from_u64(93)));
        assert!(!sqrt.ge(&ExactReal::from_u64(94)));
        let negative = ExactReal::Rat(ratef(-1, 2));
        assert!(!negative.ge(&sqrt));
        assert!(sqrt.ge(&negative));
        // √-scaled vs √-scaled.
        let smaller = ExactReal::SqrtScaled {
            coeff: ratef(53, 1),
            radicand: 3,
        };
        assert!(sqrt.ge(&smaller));
        assert!(!smaller.ge(&sqrt));
    }

    #[test]
    fn log_bounds_are_upper_bounds() {
        // Exact for powers of two.
        let (l2, exact) = log2_upper(16, 2, 4);
        assert!(exact);
        assert_eq!(l2, ratef(4, 1));
        // Strict upper bound for odd prime powers, within 1/1024.
        let (l9, exact) = log2_upper(9, 3, 2);
        assert!(!exact);
        let truth = 9f64.log2();
        let approx = l9.to_f64().unwrap();
        assert!(approx > truth);
        assert!(approx - truth < 0.002);
    }
}
