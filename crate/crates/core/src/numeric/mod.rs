//! Numerical data of #-minimal models and the exhaustive search over them.
//!
//! Half-integral `b̌` is carried as the integer `2b̌` throughout, so every
//! formula here is over the integers.

pub mod bounds;
pub mod branch;
pub mod exclusion;

use std::cmp::Ordering;
use std::fmt;

use num_rational::Rational64;

use crate::error::{Error, Result};

pub use bounds::{
    bound_genus_two_around_three, bound_lemma21, bound_n0_even, bound_odd_general,
    bound_special_even, bound_special_odd, ksq_upper_bound, special_g_sq_lower, MultiplicityBound,
};
pub use branch::{
    branch_class_fibre_degree, branch_consistency, enumerate_branch_numerics, BranchNumerics,
    BranchVerdict,
};
pub use exclusion::{
    apply_exclusion, exclude_p2_and_hirzebruch, is_triple_point_type, lemma33_exclusion,
    ExclusionVerdict, FilteredTable, GenusContext, TriplePointCase, TriplePointCertificate,
};

/// Genus ceiling on `a`: `a <= 2g + 6`.
pub fn a_ceiling(g: i64) -> i64 {
    2 * g + 6
}

/// Ceiling on the number of singular points: `N <= 4g + 4`.
pub fn n_ceiling(g: i64) -> usize {
    (4 * g + 4) as usize
}

/// Numerical datum of a general-type #-minimal model `(Σ_d, (a+2)Δ0 + bΓ)`
/// with singular points of multiplicities `mults`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NumericType {
    pub a: i64,
    /// `2b̌` where `b̌ = b - (d+2)(a+2)/2`.
    pub twice_b_check: i64,
    pub mults: Vec<i64>,
    /// `(K_Y + G)^2`, equal to `(K_X + F)^2`.
    pub ksq: i64,
    pub genus: i64,
    /// `G^2` on the reduction.
    pub g_sq: i64,
}

impl NumericType {
    /// Compute genus, `(K+G)^2` and `G^2` from `(a, 2b̌, mults)`.
    pub fn from_data(a: i64, twice_b_check: i64, mults: Vec<i64>) -> Result<NumericType> {
        if a < 1 || twice_b_check < 0 {
            return Err(Error::InvalidArgument(format!(
                "need a >= 1 and 2b̌ >= 0, got a = {a}, 2b̌ = {twice_b_check}"
            )));
        }
        if a % 2 == 0 && twice_b_check % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "b̌ must be integral when a = {a} is even"
            )));
        }
        let s1: i64 = mults.iter().map(|m| m * (m - 1)).sum();
        let two_g = (a + 1) * (2 * a + 2 + twice_b_check) - s1;
        if two_g % 2 != 0 {
            return Err(Error::NonIntegralGenus(two_g));
        }
        let ksq =
            a * (2 * a + twice_b_check) - mults.iter().map(|m| (m - 1) * (m - 1)).sum::<i64>();
        let g_sq = (a + 2) * (2 * a + 4 + twice_b_check) - mults.iter().map(|m| m * m).sum::<i64>();
        Ok(NumericType {
            a,
            twice_b_check,
            mults,
            ksq,
            genus: two_g / 2,
            g_sq,
        })
    }

    pub fn n(&self) -> usize {
        self.mults.len()
    }

    pub fn b_check(&self) -> Rational64 {
        Rational64::new(self.twice_b_check, 2)
    }

    /// `b` on `Σ_d`.
    pub fn b(&self, d: i64) -> Rational64 {
        self.b_check() + Rational64::new((d + 2) * (self.a + 2), 2)
    }

    /// Fibre degrees `d` for which the model exists with `b` integral and
    /// satisfying the fibre-degree condition `b >= (a+2)d`.
    pub fn admissible_d(&self) -> Vec<i64> {
        let top = 2 + self.twice_b_check / (self.a + 2);
        (0..=top)
            .filter(|&d| (d - 2) * (self.a + 2) <= self.twice_b_check)
            .filter(|&d| (self.twice_b_check + (d + 2) * (self.a + 2)) % 2 == 0)
            .collect()
    }

    /// Multiplicity condition `2 m_1 <= a + 2` and every `m_i >= 2`,
    /// non-increasing.
    pub fn multiplicities_ok(&self) -> bool {
        self.mults.windows(2).all(|w| w[0] >= w[1])
            && self.mults.iter().all(|&m| m >= 2 && 2 * m <= self.a + 2)
    }

    /// `(K+F)^2 + G^2 + N = 4g + 4`.
    pub fn noether_sum(&self) -> i64 {
        self.ksq + self.g_sq + self.n() as i64
    }

    fn sort_key(&self) -> (i64, i64, usize, &[i64]) {
        (self.a, self.twice_b_check, self.n(), &self.mults)
    }
}

impl Ord for NumericType {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key()
            .cmp(&other.sort_key())
            .then(self.ksq.cmp(&other.ksq))
            .then(self.genus.cmp(&other.genus))
    }
}

impl PartialOrd for NumericType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Tuple notation `(a, b̌, N, m_1, …, m_N, ksq)` with runs of equal
/// multiplicities written `m^k`.
impl fmt::Display for NumericType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}", self.a, half(self.twice_b_check), self.n())?;
        for (m, k) in runs(&self.mults) {
            if k == 1 {
                write!(f, ", {m}")?;
            } else {
                write!(f, ", {m}^{k}")?;
            }
        }
        write!(f, "; {})", self.ksq)
    }
}

fn half(v: i64) -> String {
    if v % 2 == 0 {
        (v / 2).to_string()
    } else {
        format!("{v}/2")
    }
}

/// Run-length encoding of a list, e.g. `[3,3,2]` → `[(3,2),(2,1)]`.
pub fn runs(v: &[i64]) -> Vec<(i64, usize)> {
    let mut out: Vec<(i64, usize)> = Vec::new();
    for &m in v {
        match out.last_mut() {
            Some((x, k)) if *x == m => *k += 1,
            _ => out.push((m, 1)),
        }
    }
    out
}

/// Output of [`search_general`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralSearch {
    pub types: Vec<NumericType>,
    /// Set when a surviving branch touched the `a` or `N` ceiling, which
    /// would mean the ceilings rather than the mathematics ended the search.
    pub ceiling_hit: bool,
}

fn check_window(g: i64, lo: i64, hi: i64) -> Result<()> {
    if g < 2 || lo < 1 || lo > hi {
        return Err(Error::InvalidArgument(format!(
            "need g >= 2 and 1 <= ksq_lo <= ksq_hi, got g = {g}, window [{lo}, {hi}]"
        )));
    }
    Ok(())
}

/// Largest `2b̌` compatible with `ksq <= hi`: the multiplicity condition gives
/// `Σ(m-1)^2 <= 2a/(a+2) · Σ m(m-1)/2`, hence `b̌ <= hi(a+2)/(2a) - g + 1`.
fn twice_b_check_ceiling(g: i64, a: i64, hi: i64) -> i64 {
    (hi * (a + 2)).div_euclid(a) - 2 * g + 2
}

/// Every general-type numerical datum with genus `g` and
/// `ksq_lo <= (K+G)^2 <= ksq_hi`, satisfying the multiplicity condition and
/// `G^2 >= 0`, sorted by `(a, 2b̌, N, mults)`.
pub fn search_general(g: i64, ksq_lo: i64, ksq_hi: i64) -> Result<GeneralSearch> {
    check_window(g, ksq_lo, ksq_hi)?;
    let mut types = Vec::new();
    let mut ceiling_hit = false;
    let nmax = n_ceiling(g);
    for a in 1..=a_ceiling(g) {
        let top = twice_b_check_ceiling(g, a, ksq_hi);
        let step = if a % 2 == 0 { 2 } else { 1 };
        let mut tb = 0;
        while tb <= top {
            if !coarse_bound_allows(g, a, tb, ksq_hi) {
                tb += step;
                continue;
            }
            let mut walk = Walk {
                a,
                tb,
                g,
                lo: ksq_lo,
                hi: ksq_hi,
                nmax,
                prefix: Vec::new(),
                out: &mut types,
            };
            let before = walk.out.len();
            let cap = (a + 2) / 2;
            walk.descend(cap, 0, 0, 0);
            let found = types.len() > before;
            if found && a == a_ceiling(g) {
                ceiling_hit = true;
            }
            tb += step;
        }
    }
    ceiling_hit |= types.iter().any(|t| t.n() == nmax);
    types.sort();
    Ok(GeneralSearch { types, ceiling_hit })
}

// The multiplicity bound with n = 0 for even a, and the odd-a bound, both against ksq_hi.
fn coarse_bound_allows(g: i64, a: i64, tb: i64, hi: i64) -> bool {
    let hi = Rational64::from_integer(hi);
    if a % 2 == 0 {
        bound_n0_even(g, a, tb) <= hi
    } else {
        bound_odd_general(g, a) <= hi
    }
}

struct Walk<'a> {
    a: i64,
    tb: i64,
    g: i64,
    lo: i64,
    hi: i64,
    nmax: usize,
    prefix: Vec<i64>,
    out: &'a mut Vec<NumericType>,
}

impl Walk<'_> {
    // s1 = Σ m(m-1), s2 = Σ (m-1)^2, s3 = Σ m^2 over the prefix; the next
    // multiplicity is at most `cap`.
    fn descend(&mut self, cap: i64, s1: i64, s2: i64, s3: i64) {
        let (a, tb) = (self.a, self.tb);
        // 2R: what the remaining points must still absorb of Σ m(m-1)
        let rem = (a + 1) * (2 * a + 2 + tb) - 2 * self.g - s1;
        if rem < 0 {
            return;
        }
        let base = a * (2 * a + tb) - s2;
        let g_sq_base = (a + 2) * (2 * a + 4 + tb) - s3;
        if rem == 0 {
            if (self.lo..=self.hi).contains(&base) && g_sq_base >= 0 {
                let t = NumericType::from_data(a, tb, self.prefix.clone())
                    .expect("walk only emits integral data");
                self.out.push(t);
            }
            return;
        }
        if cap < 2 || self.prefix.len() >= self.nmax {
            return;
        }
        // the remaining points lower ksq by between rem/2 and (cap-1)/cap·rem
        if cap * base - (cap - 1) * rem > cap * self.hi {
            return;
        }
        if 2 * base - rem < 2 * self.lo {
            return;
        }
        // remaining Σ m^2 >= rem
        if g_sq_base < rem {
            return;
        }
        let need = (rem + cap * (cap - 1) - 1) / (cap * (cap - 1));
        if self.prefix.len() + need as usize > self.nmax {
            return;
        }
        for m in (2..=cap).rev() {
            self.prefix.push(m);
            self.descend(m, s1 + m * (m - 1), s2 + (m - 1) * (m - 1), s3 + m * m);
            self.prefix.pop();
        }
    }
}

/// Special-type datum on `Σ_1`: `G ~ (a+2)Δ0 + (a+2+m0)Γ`, `2 <= m0 < (a+2)/2`,
/// further singular points of multiplicity at most `m0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpecialType {
    pub a: i64,
    pub m0: i64,
    pub mults: Vec<i64>,
    pub ksq: i64,
    pub genus: i64,
    pub g_sq: i64,
}

impl SpecialType {
    /// Read off the plane model: a curve of degree `b = a+2+m0` with an
    /// `m0`-fold point and the points `mults`.
    pub fn from_data(a: i64, m0: i64, mults: Vec<i64>) -> SpecialType {
        let b = a + 2 + m0;
        let all = std::iter::once(m0).chain(mults.iter().copied());
        let (mut s1, mut s2, mut s3) = (0, 0, 0);
        for m in all {
            s1 += m * (m - 1);
            s2 += (m - 1) * (m - 1);
            s3 += m * m;
        }
        SpecialType {
            a,
            m0,
            ksq: (b - 3) * (b - 3) - s2,
            genus: ((b - 1) * (b - 2) - s1) / 2,
            // equals (a+2)(a+2+2m0) - Σ_{i>=1} m_i^2
            g_sq: b * b - s3,
            mults,
        }
    }

    pub fn b(&self) -> i64 {
        self.a + 2 + self.m0
    }
}

/// Special-type data with the given genus and `(K+G)^2` window, before the
/// `G^2 >= 0` requirement is imposed.
pub fn special_candidates(g: i64, ksq_lo: i64, ksq_hi: i64) -> Result<Vec<SpecialType>> {
    check_window(g, ksq_lo, ksq_hi)?;
    let mut out = Vec::new();
    let nmax = n_ceiling(g);
    for a in 2..=a_ceiling(g) {
        let mut m0 = 2;
        while 2 * m0 < a + 2 {
            let mut prefix = Vec::new();
            special_walk(a, m0, m0, g, nmax, &mut prefix, &mut |mults| {
                let t = SpecialType::from_data(a, m0, mults.to_vec());
                if (ksq_lo..=ksq_hi).contains(&t.ksq) {
                    out.push(t);
                }
            });
            m0 += 1;
        }
    }
    out.sort();
    Ok(out)
}

// Enumerate non-increasing lists with entries in [2, cap] until the genus
// drops to g; stop as soon as it would fall below.
fn special_walk(
    a: i64,
    m0: i64,
    cap: i64,
    g: i64,
    nmax: usize,
    prefix: &mut Vec<i64>,
    emit: &mut dyn FnMut(&[i64]),
) {
    let t = SpecialType::from_data(a, m0, prefix.clone());
    if t.genus < g {
        return;
    }
    if t.genus == g {
        emit(prefix);
        return;
    }
    if prefix.len() >= nmax {
        return;
    }
    for m in (2..=cap).rev() {
        prefix.push(m);
        special_walk(a, m0, m, g, nmax, prefix, emit);
        prefix.pop();
    }
}

/// Special-type data that can occur: [`special_candidates`] with `G^2 >= 0`.
pub fn search_special(g: i64, ksq_lo: i64, ksq_hi: i64) -> Result<Vec<SpecialType>> {
    Ok(special_candidates(g, ksq_lo, ksq_hi)?
        .into_iter()
        .filter(|t| t.g_sq >= 0)
        .collect())
}
