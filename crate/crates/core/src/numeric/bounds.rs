//! Lower and upper bounds on `(K_Y + G)^2` in exact rational arithmetic.

use num_rational::Rational64;

use crate::error::{Error, Result};

fn r(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

/// Value of the multiplicity lower bound together with what equality
/// would force.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityBound {
    pub value: Rational64,
    /// Equality needs `m_n = (a+2)/2`; true when the supplied prefix ends
    /// there (vacuously for an empty prefix).
    pub prefix_at_cap: bool,
    /// Equality needs `m_N` equal to this value.
    pub required_last: i64,
}

/// Lower bound for `(K_Y+G)^2` when `a` is even, the first `n` multiplicities
/// are known (`prefix_mults`) and every later one is at most `m`:
///
/// `2(m-1)/m · (g - (a+1)(a+1+b̌) + n a(a+2)/8) + 2a(a+b̌) - n a^2/4`.
pub fn bound_lemma21(
    g: i64,
    a: i64,
    twice_b_check: i64,
    n: usize,
    prefix_mults: &[i64],
    m: i64,
) -> Result<MultiplicityBound> {
    if a % 2 != 0 {
        return Err(Error::InvalidArgument(format!("a = {a} is odd")));
    }
    if m <= 0 {
        return Err(Error::InvalidArgument(format!(
            "m = {m}: the bound divides by m"
        )));
    }
    if prefix_mults.len() != n {
        return Err(Error::InvalidArgument(format!(
            "prefix has {} entries, expected n = {n}",
            prefix_mults.len()
        )));
    }
    let bc = Rational64::new(twice_b_check, 2);
    let n = n as i64;
    let ratio = Rational64::new(2 * (m - 1), m);
    let inner = r(g) - r(a + 1) * (r(a + 1) + bc) + Rational64::new(n * a * (a + 2), 8);
    let value = ratio * inner + r(2 * a) * (r(a) + bc) - Rational64::new(n * a * a, 4);
    Ok(MultiplicityBound {
        value,
        prefix_at_cap: prefix_mults.last().map_or(true, |&x| 2 * x == a + 2),
        required_last: m,
    })
}

/// `n = 0`, `m = (a+2)/2` specialisation: `2a(g - 1 + b̌)/(a+2)` for even `a`.
pub fn bound_n0_even(g: i64, a: i64, twice_b_check: i64) -> Rational64 {
    // 2a(g - 1 + tb/2)/(a+2) = a(2g - 2 + tb)/(a+2)
    Rational64::new(a * (2 * g - 2 + twice_b_check), a + 2)
}

/// General type, odd `a`: `(K_Y+G)^2 >= 2g(a-1)/(a+1) + 2`.
pub fn bound_odd_general(g: i64, a: i64) -> Rational64 {
    Rational64::new(2 * g * (a - 1), a + 1) + r(2)
}

/// `3 + 2a(b̌-1)/(a+2) + (a-6)/(a+2)`, which is [`bound_n0_even`] at `g = 2`
/// rearranged around the value 3.
pub fn bound_genus_two_around_three(a: i64, twice_b_check: i64) -> Rational64 {
    r(3) + Rational64::new(a * (twice_b_check - 2) + a - 6, a + 2)
}

/// Special type, even `a`, valid while `g < a(a+3)/2`:
/// `(K_Y+G)^2 >= 2g(a-2)/a + 4`. `None` outside the range of validity.
pub fn bound_special_even(g: i64, a: i64) -> Option<Rational64> {
    (a % 2 == 0 && a > 0 && 2 * g < a * (a + 3)).then(|| Rational64::new(2 * g * (a - 2), a) + r(4))
}

/// Special type, odd `a`, valid while `g < (a+1)(a+2)/2`:
/// `(K_Y+G)^2 >= 2g(a-1)/(a+1) + 1`.
pub fn bound_special_odd(g: i64, a: i64) -> Option<Rational64> {
    (a % 2 != 0 && 2 * g < (a + 1) * (a + 2))
        .then(|| Rational64::new(2 * g * (a - 1), a + 1) + r(1))
}

/// Special type: `G^2 >= (a+2)^2 + 2 m0 (a+2) - N m0^2`, using `m_i <= m0`.
pub fn special_g_sq_lower(a: i64, m0: i64, n: i64) -> i64 {
    (a + 2) * (a + 2) + 2 * m0 * (a + 2) - n * m0 * m0
}

/// Upper bound `(K_X+F)^2 <= 4g - 5` for a relatively minimal genus-`g`
/// fibration on a rational surface.
pub fn ksq_upper_bound(g: i64) -> i64 {
    4 * g - 5
}
