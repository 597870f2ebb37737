//! Numerical exclusions: the reduction surface cannot be `P^2` or `Σ_d`, and
//! the triple-point type with multiplicities `5^7, 4, 3` cannot occur.

use num_rational::Rational64;

use super::NumericType;
use crate::error::{Error, Result};
use crate::lattice::SurfaceModel;

/// Genus of the fibre together with its Clifford index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusContext {
    pub g: i64,
    pub clifford: i64,
}

impl GenusContext {
    pub fn new(g: i64, clifford: i64) -> Result<GenusContext> {
        if g < 2 || clifford < 0 || 2 * clifford > g - 1 {
            return Err(Error::InvalidArgument(format!(
                "Clifford index {clifford} outside [0, (g-1)/2] for g = {g}"
            )));
        }
        Ok(GenusContext { g, clifford })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExclusionVerdict {
    /// Plane degree `b >= 4` with `(b-1)(b-2)/2 = g` and `(b-3)^2 = ksq`.
    pub p2_degree: Option<i64>,
    /// `2c(g-c-1)/(c+1)`, the value `(K+F)^2` must take when the reduction
    /// is a Hirzebruch surface.
    pub hirzebruch_value: Rational64,
    pub p2_possible: bool,
    pub hirzebruch_possible: bool,
}

pub fn exclude_p2_and_hirzebruch(ctx: GenusContext, ksq: i64) -> ExclusionVerdict {
    let g = ctx.g;
    let mut p2_degree = None;
    let mut b = 4;
    while (b - 1) * (b - 2) / 2 <= g {
        if (b - 1) * (b - 2) / 2 == g && (b - 3) * (b - 3) == ksq {
            p2_degree = Some(b);
        }
        b += 1;
    }
    let c = ctx.clifford;
    let hirzebruch_value = Rational64::new(2 * c * (g - c - 1), c + 1);
    ExclusionVerdict {
        p2_degree,
        p2_possible: p2_degree.is_some(),
        hirzebruch_possible: hirzebruch_value == Rational64::from_integer(ksq),
        hirzebruch_value,
    }
}

/// One candidate image of the exceptional curve over the triple point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePointCase {
    /// `(x, y)` in `x Δ0 + y Γ` on the quadric.
    pub head: (i64, i64),
    pub mults: Vec<i64>,
    pub anticanonical_degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePointCertificate {
    pub cases: Vec<TriplePointCase>,
    pub minimum: i64,
    /// Value the projection formula demands.
    pub required: i64,
    pub excluded: bool,
}

/// Enumerate classes `xΔ0 + yΓ - Σ m_i E_i` on the quadric blown up at six
/// points, for `(x, y) = (3, 1)` and `(3, 2)` and `0 <= m_i <= 2`, keeping
/// those of arithmetic genus zero (the curve is smooth rational). The
/// anticanonical degree never reaches 1.
pub fn lemma33_exclusion() -> TriplePointCertificate {
    let model = SurfaceModel::hirzebruch(0, 6).expect("quadric is a valid model");
    let mut cases = Vec::new();
    for head in [(3, 1), (3, 2)] {
        for code in 0..3i64.pow(6) {
            let mut mults = Vec::with_capacity(6);
            let mut c = code;
            for _ in 0..6 {
                mults.push(c % 3);
                c /= 3;
            }
            let mut coords = vec![head.0, head.1];
            coords.extend(mults.iter().map(|m| -m));
            let class = model.class(&coords).expect("rank 8");
            if model.arithmetic_genus(&class).expect("small class") != 0 {
                continue;
            }
            let degree = -model.canonical_degree(&class).expect("small class");
            cases.push(TriplePointCase {
                head,
                mults,
                anticanonical_degree: degree,
            });
        }
    }
    let minimum = cases
        .iter()
        .map(|c| c.anticanonical_degree)
        .min()
        .expect("both families are nonempty");
    TriplePointCertificate {
        cases,
        minimum,
        required: 1,
        excluded: minimum != 1,
    }
}

/// The triple-point type `a = 8`, `b̌ = 0`, multiplicities `5^7, 4, 3`.
pub fn is_triple_point_type(t: &NumericType) -> bool {
    let mut pattern = vec![5; 7];
    pattern.extend([4, 3]);
    t.a == 8 && t.twice_b_check == 0 && t.mults == pattern
}

/// A search table split by [`is_triple_point_type`], with the certificate
/// that justifies dropping those rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredTable {
    pub kept: Vec<NumericType>,
    pub dropped: Vec<NumericType>,
    pub certificate: TriplePointCertificate,
}

pub fn apply_exclusion(types: Vec<NumericType>) -> FilteredTable {
    let certificate = lemma33_exclusion();
    let (dropped, kept) = if certificate.excluded {
        types.into_iter().partition(is_triple_point_type)
    } else {
        (Vec::new(), types)
    };
    FilteredTable {
        kept,
        dropped,
        certificate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_drops_only_the_triple_point_row() {
        let rows = super::super::search_general(2, 1, 3).unwrap().types;
        let table = apply_exclusion(rows);
        assert_eq!(table.kept.len(), 4);
        assert_eq!(table.dropped.len(), 1);
        assert_eq!(table.dropped[0].to_string(), "(8, 0, 9, 5^7, 4, 3; 3)");
    }

    #[test]
    fn genus_two_excludes_both() {
        for ksq in 1..=3 {
            let v = exclude_p2_and_hirzebruch(GenusContext::new(2, 0).unwrap(), ksq);
            assert!(!v.p2_possible && !v.hirzebruch_possible);
            assert_eq!(v.hirzebruch_value, Rational64::from_integer(0));
        }
    }

    #[test]
    fn plane_sextic_genus_ten() {
        let v = exclude_p2_and_hirzebruch(GenusContext::new(10, 0).unwrap(), 9);
        assert_eq!(v.p2_degree, Some(6));
        assert!(v.p2_possible);
    }

    #[test]
    fn clifford_range() {
        assert!(GenusContext::new(2, 1).is_err());
        assert!(GenusContext::new(5, 2).is_ok());
    }

    #[test]
    fn triple_point_type_is_excluded() {
        let cert = lemma33_exclusion();
        assert_eq!(cert.minimum, 2);
        assert!(cert.excluded);
        // first family: m_i in {0,1}, 64 cases; second: exactly two 2's
        let first: Vec<_> = cert.cases.iter().filter(|c| c.head == (3, 1)).collect();
        assert_eq!(first.len(), 64);
        assert!(first.iter().all(|c| c.mults.iter().all(|&m| m <= 1)));
        let second: Vec<_> = cert.cases.iter().filter(|c| c.head == (3, 2)).collect();
        assert!(second
            .iter()
            .all(|c| c.mults.iter().filter(|&&m| m == 2).count() == 2));
        let all_ones = first.iter().find(|c| c.mults == vec![1; 6]).unwrap();
        assert_eq!(all_ones.anticanonical_degree, 2);
    }
}
