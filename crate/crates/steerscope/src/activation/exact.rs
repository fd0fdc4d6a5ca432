//! Exact-rational and certified-float arithmetic for threshold values.
//!
//! Harmonic numbers with index up to `EXACT_HARMONIC_LIMIT` are evaluated as
//! exact rationals by binary splitting. Larger indices use the
//! Euler-Maclaurin expansion `H_n = ln n + γ + 1/(2n) - Σ B_{2j}/(2j n^{2j})`
//! where every ingredient carries a rigorous rational error bound: `ln` comes
//! from the atanh series with an explicit tail bound, `γ` from a 100-digit
//! stored prefix, and the expansion remainder is bounded by the first omitted
//! term. A strict comparison is only reported decided when it holds by more
//! than the combined error bound; otherwise evaluation escalates up to a
//! digit ceiling and then fails loudly.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Harmonic indices up to this bound are evaluated as exact rationals.
pub const EXACT_HARMONIC_LIMIT: u64 = 10_000;

/// 100 decimal digits of the Euler-Mascheroni constant after the point.
const GAMMA_DIGITS: &str = "5772156649015328606065120900824024310421593359399235988057672348848677267776646709369470632917467495";

/// Euler-Maclaurin coefficients `B_{2j} / (2j)` for `j = 1..=9`; the ninth
/// entry only ever bounds the remainder of the eight-term expansion.
const EM_COEFFS: [(i64, i64); 9] = [
    (1, 12),
    (-1, 120),
    (1, 252),
    (-1, 240),
    (1, 132),
    (-691, 32760),
    (1, 12),
    (-3617, 8160),
    (43867, 14364),
];

/// Working-precision control for certified evaluation.
#[derive(Debug, Clone)]
pub struct Precision {
    /// Starting precision in decimal digits.
    pub base_digits: u32,
    /// Escalation ceiling in decimal digits; comparisons still undecided at
    /// the ceiling surface as [`Error::PrecisionExceeded`].
    pub ceiling_digits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Self {
            base_digits: 40,
            ceiling_digits: 80,
        }
    }
}

impl Precision {
    /// Clamp the ceiling to what the stored constants can actually certify.
    pub fn with_ceiling(ceiling_digits: u32) -> Self {
        let ceiling = ceiling_digits.clamp(1, 100);
        Self {
            base_digits: ceiling.min(40),
            ceiling_digits: ceiling,
        }
    }
}

/// How a [`ThresholdValue`] is represented.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdRepr {
    ExactRational,
    CertifiedFloat,
}

/// A threshold number: exact rational, or a certified midpoint with a
/// rigid error bound (the true value lies in `[mid - err, mid + err]`).
#[derive(Debug, Clone)]
pub struct ThresholdValue {
    mid: BigRational,
    err: BigRational,
    repr: ThresholdRepr,
}

impl ThresholdValue {
    pub fn exact(value: BigRational) -> Self {
        Self {
            mid: value,
            err: BigRational::zero(),
            repr: ThresholdRepr::ExactRational,
        }
    }

    pub fn certified(mid: BigRational, err: BigRational) -> Self {
        debug_assert!(!err.is_negative());
        Self {
            mid,
            err,
            repr: ThresholdRepr::CertifiedFloat,
        }
    }

    #[inline]
    pub fn repr(&self) -> ThresholdRepr {
        self.repr
    }

    #[inline]
    pub fn is_exact(&self) -> bool {
        self.repr == ThresholdRepr::ExactRational
    }

    pub fn midpoint(&self) -> &BigRational {
        &self.mid
    }

    pub fn error(&self) -> &BigRational {
        &self.err
    }

    pub fn lower(&self) -> BigRational {
        &self.mid - &self.err
    }

    pub fn upper(&self) -> BigRational {
        &self.mid + &self.err
    }

    /// Nearest-double view of the midpoint.
    pub fn value(&self) -> f64 {
        ratio_to_f64(&self.mid)
    }

    pub fn error_bound(&self) -> f64 {
        ratio_to_f64(&self.err)
    }

    /// `p/q` string when exact.
    pub fn exact_string(&self) -> Option<String> {
        if self.is_exact() {
            Some(format!("{}/{}", self.mid.numer(), self.mid.denom()))
        } else {
            None
        }
    }

    /// Does `x > self` hold for the true value? `None` when the certified
    /// interval straddles `x`.
    pub fn strictly_below(&self, x: &BigRational) -> Option<bool> {
        if self.is_exact() {
            return Some(x > &self.mid);
        }
        if x > &self.upper() {
            Some(true)
        } else if x <= &self.lower() {
            Some(false)
        } else {
            None
        }
    }
}

/// Exact harmonic number `H_n = Σ_{i=1..n} 1/i`.
///
/// Sums over the common denominator `lcm(1..n)` so the whole evaluation
/// needs a single final reduction instead of a gcd per partial sum.
pub fn harmonic_exact(n: u64) -> BigRational {
    assert!(n >= 1, "harmonic index must be positive");
    let lcm = lcm_up_to(n);
    let mut numerator = BigUint::zero();
    for i in 1..=n {
        numerator += &lcm / BigUint::from(i);
    }
    BigRational::new(BigInt::from(numerator), BigInt::from(lcm))
}

/// `lcm(1..=n)` as the product of maximal prime powers not exceeding `n`.
fn lcm_up_to(n: u64) -> BigUint {
    let n_usize = n as usize;
    let mut is_composite = vec![false; n_usize + 1];
    let mut lcm = BigUint::one();
    for p in 2..=n_usize {
        if is_composite[p] {
            continue;
        }
        let mut multiple = p * p;
        while multiple <= n_usize {
            is_composite[multiple] = true;
            multiple += p;
        }
        let mut power = p as u64;
        while power <= n / p as u64 {
            power *= p as u64;
        }
        lcm *= BigUint::from(power);
    }
    lcm
}

/// Certified `ln n` for an integer `n >= 1`.
///
/// The argument is reduced to `x = n / 2^m` in `[1, 2)`; `ln x` and `ln 2`
/// both come from `2 atanh(t)` series with the exact tail bound
/// `t^(2J+1) / ((2J+1)(1 - t^2))`.
pub fn ln_certified(n: &BigUint, digits: u32) -> (BigRational, BigRational) {
    assert!(!n.is_zero(), "ln of zero is undefined");
    if n.is_one() {
        return (BigRational::zero(), BigRational::zero());
    }
    let m = n.bits() - 1;
    let target = pow10_inv(digits + 2);
    let x = BigRational::new(BigInt::from(n.clone()), BigInt::from(BigUint::one() << m));
    let (mut mid, mut err) = atanh_ln(&x, &target);
    if m > 0 {
        let two = BigRational::from_integer(BigInt::from(2));
        let (ln2_mid, ln2_err) = atanh_ln(&two, &target);
        let m_rat = BigRational::from_integer(BigInt::from(m));
        mid += &m_rat * ln2_mid;
        err += &m_rat * ln2_err;
    }
    (mid, err)
}

/// `ln x = 2 atanh((x-1)/(x+1))` with certified tail, for rational `x >= 1`.
fn atanh_ln(x: &BigRational, target: &BigRational) -> (BigRational, BigRational) {
    let one = BigRational::one();
    if x == &one {
        return (BigRational::zero(), BigRational::zero());
    }
    let t = (x - &one) / (x + &one);
    let t2 = &t * &t;
    let tail_factor = &one / (&one - &t2);
    let mut term = t.clone();
    let mut sum = BigRational::zero();
    let mut j = 0u32;
    loop {
        sum += &term / BigRational::from_integer(BigInt::from(2 * j + 1));
        term *= &t2;
        j += 1;
        let tail = (&term / BigRational::from_integer(BigInt::from(2 * j + 1))) * &tail_factor;
        if &tail <= target || j > 4000 {
            let two = BigRational::from_integer(BigInt::from(2));
            return (&two * sum, two * tail);
        }
    }
}

/// Certified Euler-Mascheroni constant from the stored digit prefix.
pub fn gamma_certified(digits: u32) -> (BigRational, BigRational) {
    let used = (digits as usize + 2).min(GAMMA_DIGITS.len());
    let prefix: BigUint = GAMMA_DIGITS[..used].parse().expect("digit prefix parses");
    let scale = BigUint::from(10u32).pow(used as u32);
    let mid = BigRational::new(BigInt::from(prefix), BigInt::from(scale));
    let err = pow10_inv(used as u32);
    (mid, err)
}

/// Certified Euler-Maclaurin harmonic number for a large index.
///
/// `ln_scaled` supplies `ln n` as `(mid, err)`; callers with `n = d^k` pass
/// `k * ln d` to keep the series evaluation on small operands.
pub fn harmonic_em_with_ln(
    n: &BigUint,
    ln_mid: BigRational,
    ln_err: BigRational,
    digits: u32,
) -> ThresholdValue {
    let n_rat = BigRational::from_integer(BigInt::from(n.clone()));
    let (gamma_mid, gamma_err) = gamma_certified(digits);
    let mut mid = ln_mid
        + gamma_mid
        + &BigRational::one() / (BigRational::from_integer(BigInt::from(2)) * &n_rat);
    let target = pow10_inv(digits);
    let n2 = &n_rat * &n_rat;
    let mut n_pow = n2.clone();
    let mut remainder = BigRational::zero();
    for (j, (num, den)) in EM_COEFFS.iter().enumerate() {
        let bound_next = BigRational::new(BigInt::from(num.abs()), BigInt::from(*den)) / &n_pow;
        if j > 0 && bound_next <= target {
            remainder = bound_next;
            break;
        }
        if j == EM_COEFFS.len() - 1 {
            // series floor reached: the last coefficient only bounds the tail
            remainder = bound_next;
            break;
        }
        mid -= BigRational::new(BigInt::from(*num), BigInt::from(*den)) / &n_pow;
        n_pow *= &n2;
    }
    let err = ln_err + gamma_err + remainder;
    ThresholdValue::certified(mid, err)
}

/// Certified Euler-Maclaurin harmonic number, deriving `ln n` directly.
pub fn harmonic_em(n: &BigUint, digits: u32) -> ThresholdValue {
    let (ln_mid, ln_err) = ln_certified(n, digits);
    harmonic_em_with_ln(n, ln_mid, ln_err, digits)
}

/// Harmonic number as a threshold value: exact rational for indices up to
/// [`EXACT_HARMONIC_LIMIT`], Euler-Maclaurin certified float beyond.
pub fn harmonic(n: &BigUint, precision: &Precision) -> ThresholdValue {
    if let Some(small) = n.to_u64() {
        if small <= EXACT_HARMONIC_LIMIT {
            return ThresholdValue::exact(harmonic_exact(small));
        }
    }
    harmonic_em(n, precision.base_digits)
}

/// `1 / 10^digits` as a rational.
pub fn pow10_inv(digits: u32) -> BigRational {
    BigRational::new(
        BigInt::one(),
        BigInt::from(BigUint::from(10u32).pow(digits)),
    )
}

/// Exact conversion of a finite double into a rational.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or(Error::NonFiniteEntry { index: 0 })
}

/// Parse either a decimal literal or an exact `p/q` string.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let numer: BigInt = p.trim().parse().ok()?;
        let denom: BigInt = q.trim().parse().ok()?;
        if denom.is_zero() {
            return None;
        }
        return Some(BigRational::new(numer, denom));
    }
    let value: f64 = s.parse().ok()?;
    rational_from_f64(value).ok()
}

/// Rational to nearest double, safe for numerators and denominators far
/// beyond the double range.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let negative = r.is_negative();
    let n = r.numer().magnitude().clone();
    let d = r.denom().magnitude().clone();
    let shift: i64 = 64 - (n.bits() as i64 - d.bits() as i64);
    let q = if shift >= 0 {
        (n << shift as u64) / d
    } else {
        n / (d << (-shift) as u64)
    };
    let q_f64 = q.to_f64().unwrap_or(f64::INFINITY);
    let value = q_f64 * (-(shift as f64)).exp2();
    if negative {
        -value
    } else {
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn harmonic_exact_small_values() {
        assert_eq!(harmonic_exact(1), rat(1, 1));
        assert_eq!(harmonic_exact(2), rat(3, 2));
        assert_eq!(harmonic_exact(6), rat(49, 20));
    }

    #[test]
    fn ln_certified_of_two_matches_reference() {
        let (mid, err) = ln_certified(&BigUint::from(2u32), 40);
        let reference = BigRational::from_f64(std::f64::consts::LN_2).unwrap();
        let diff = (mid - reference).abs();
        assert!(
            diff < rat(1, 1_000_000_000_000_000),
            "ln 2 off by {}",
            ratio_to_f64(&diff)
        );
        assert!(err < pow10_inv(38));
    }

    #[test]
    fn ln_certified_composes_power_reduction() {
        // ln 1024 = 10 ln 2
        let (mid_big, _) = ln_certified(&BigUint::from(1024u32), 40);
        let (mid_two, _) = ln_certified(&BigUint::from(2u32), 40);
        let diff = (&mid_big - BigRational::from_integer(BigInt::from(10)) * &mid_two).abs();
        assert!(diff < pow10_inv(35));
    }

    #[test]
    fn euler_maclaurin_agrees_with_exact_at_limit() {
        // pins the stored constants: any wrong digit in gamma beyond ~1e-30
        // would surface here because the expansion remainder is ~1e-33
        let exact = harmonic_exact(10_000);
        let em = harmonic_em(&BigUint::from(10_000u32), 40);
        let diff = (em.midpoint() - &exact).abs();
        assert!(
            diff < pow10_inv(15),
            "EM vs exact differ by {}",
            ratio_to_f64(&diff)
        );
        assert!(diff < pow10_inv(30));
        assert!(diff <= *em.error());
    }

    #[test]
    fn euler_maclaurin_level_zero_contract() {
        // the documented truncation keeps its 1/(120 n^4) remainder bound
        let n = BigUint::from(1u64 << 24);
        let value = harmonic_em(&n, 40);
        assert!(value.error() < &pow10_inv(28));
        let approx = value.value();
        assert!((approx - 17.212748).abs() < 1e-5, "H(2^24) ~ {approx}");
    }

    #[test]
    fn harmonic_switches_representation_at_limit() {
        let precision = Precision::default();
        assert!(harmonic(&BigUint::from(10_000u32), &precision).is_exact());
        assert!(!harmonic(&BigUint::from(10_001u32), &precision).is_exact());
    }

    #[test]
    fn exact_vs_certified_agreement_on_grid() {
        for n in [16u64, 128, 1024, 4096, 9999] {
            let exact = harmonic_exact(n);
            let em = harmonic_em(&BigUint::from(n), 40);
            let diff = (em.midpoint() - &exact).abs();
            assert!(diff <= *em.error(), "certified bound violated at n={n}");
        }
    }

    #[test]
    fn threshold_comparison_semantics() {
        let exact = ThresholdValue::exact(rat(1, 2));
        assert_eq!(exact.strictly_below(&rat(2, 3)), Some(true));
        assert_eq!(exact.strictly_below(&rat(1, 2)), Some(false));

        let fuzzy = ThresholdValue::certified(rat(1, 2), rat(1, 100));
        assert_eq!(fuzzy.strictly_below(&rat(2, 3)), Some(true));
        assert_eq!(fuzzy.strictly_below(&rat(1, 3)), Some(false));
        assert_eq!(fuzzy.strictly_below(&rat(1, 2)), None);
    }

    #[test]
    fn ratio_to_f64_handles_extreme_magnitudes() {
        let tiny = BigRational::new(BigInt::one(), BigInt::from(BigUint::from(2u32).pow(8000)));
        assert_eq!(ratio_to_f64(&tiny), 0.0);
        let exact = rat(5, 8);
        assert_eq!(ratio_to_f64(&exact), 0.625);
        let neg = rat(-7, 2);
        assert_eq!(ratio_to_f64(&neg), -3.5);
        let large = BigRational::from_integer(BigInt::from(BigUint::from(3u32).pow(400)));
        let expected = 3.0f64.powi(400);
        assert!((ratio_to_f64(&large) / expected - 1.0).abs() < 1e-12);
        let overflow = BigRational::from_integer(BigInt::from(BigUint::from(2u32).pow(1200)));
        assert_eq!(ratio_to_f64(&overflow), f64::INFINITY);
    }

    #[test]
    fn parse_rational_accepts_both_forms() {
        assert_eq!(parse_rational("9/16"), Some(rat(9, 16)));
        assert_eq!(parse_rational("0.625"), Some(rat(5, 8)));
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational("1/0"), None);
    }
}
