//! Enumeration of numerical curve classes and the intersection identities used
//! to bound `F.C` from below.
//!
//! Enumeration is purely numerical. A returned class need not be effective on
//! any particular point configuration; callers that need actual curves take
//! them from the catalog.

use crate::error::{Error, Result};
use crate::fibration::FibrationModel;
use crate::lattice::{Ambient, DivisorClass, SurfaceModel};

pub const DEFAULT_DEGREE_CAP: i64 = 3;

/// Upper bound on search-tree nodes before [`Error::BudgetExceeded`].
pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// Name under which a catalog model stores the pencil class used by the
/// fibre-intersection identity.
pub const PENCIL_NAME: &str = "Gamma_X";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassQuery {
    pub self_int: i64,
    pub k_deg: i64,
    pub degree_cap: i64,
}

impl ClassQuery {
    pub fn new(self_int: i64, k_deg: i64, degree_cap: i64) -> Result<ClassQuery> {
        if degree_cap < 1 {
            return Err(Error::InvalidArgument(format!(
                "degree cap must be at least 1, got {degree_cap}"
            )));
        }
        Ok(ClassQuery {
            self_int,
            k_deg,
            degree_cap,
        })
    }

    /// `C^2 = K.C = -1`.
    pub fn minus_one(cap: i64) -> Result<ClassQuery> {
        Self::new(-1, -1, cap)
    }

    /// `C^2 = -2`, `K.C = 0`.
    pub fn minus_two(cap: i64) -> Result<ClassQuery> {
        Self::new(-2, 0, cap)
    }

    /// Classes of a rational pencil: `R^2 = 0`, `K.R = -2`.
    pub fn pencil(cap: i64) -> Result<ClassQuery> {
        Self::new(0, -2, cap)
    }
}

/// Every nonzero class with the requested `C^2` and `K.C` and
/// `0 <= C.H <= cap`, in lexicographic order of coordinates.
///
/// `C.H = 0` is allowed so that the exceptional classes themselves (which
/// have degree zero against a line) are found.
pub fn enum_classes(model: &SurfaceModel, q: &ClassQuery) -> Result<Vec<DivisorClass>> {
    enum_classes_with_budget(model, q, DEFAULT_BUDGET)
}

pub fn enum_classes_with_budget(
    model: &SurfaceModel,
    q: &ClassQuery,
    budget: u64,
) -> Result<Vec<DivisorClass>> {
    if q.degree_cap < 1 {
        return Err(Error::InvalidArgument(
            "degree cap must be at least 1".into(),
        ));
    }
    let n = model.ambient().exceptional_count();
    let mut search = Search {
        n,
        budget,
        visited: 0,
        found: Vec::new(),
        buf: Vec::with_capacity(model.rank()),
    };
    match model.ambient() {
        Ambient::Plane { .. } => {
            for delta in 0..=q.degree_cap {
                // C^2 = delta^2 - sum c^2, K.C = -3 delta - sum c
                let sq = delta * delta - q.self_int;
                let lin = -3 * delta - q.k_deg;
                search.run(&[delta], sq, lin)?;
            }
        }
        Ambient::Hirzebruch { d, .. } => {
            for t in 0..=q.degree_cap {
                // head x Δ0 + y Γ with x + y = t; the head square
                // -(d+2)x^2 + 2tx must be at least C^2
                let disc = (t * t - (d + 2) * q.self_int).max(0);
                let span = t + isqrt(disc as u64) as i64 + 1;
                for x in -span..=span {
                    let y = t - x;
                    let head_sq = -(d + 2) * x * x + 2 * t * x;
                    let sq = head_sq - q.self_int;
                    if sq < 0 {
                        continue;
                    }
                    let lin = x * (d - 2) - 2 * y - q.k_deg;
                    search.run(&[x, y], sq, lin)?;
                }
            }
        }
    }
    let mut found = search.found;
    found.sort();
    found.dedup();
    found
        .into_iter()
        .filter(|c| c.iter().any(|&v| v != 0))
        .map(|c| model.class(&c))
        .collect()
}

fn isqrt(v: u64) -> u64 {
    let mut r = (v as f64).sqrt() as u64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

struct Search {
    n: usize,
    budget: u64,
    visited: u64,
    found: Vec<Vec<i64>>,
    buf: Vec<i64>,
}

impl Search {
    // Fill n exceptional coordinates with sum of squares `sq` and sum `lin`.
    fn run(&mut self, head: &[i64], sq: i64, lin: i64) -> Result<()> {
        if sq < 0 || !feasible(self.n, sq, lin) {
            return Ok(());
        }
        self.buf.clear();
        self.buf.extend_from_slice(head);
        self.fill(self.n, sq, lin)
    }

    fn fill(&mut self, left: usize, sq: i64, lin: i64) -> Result<()> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(Error::BudgetExceeded { limit: self.budget });
        }
        if left == 0 {
            if sq == 0 && lin == 0 {
                self.found.push(self.buf.clone());
            }
            return Ok(());
        }
        let bound = isqrt(sq as u64) as i64;
        for c in -bound..=bound {
            let (sq2, lin2) = (sq - c * c, lin - c);
            if feasible(left - 1, sq2, lin2) {
                self.buf.push(c);
                self.fill(left - 1, sq2, lin2)?;
                self.buf.pop();
            }
        }
        Ok(())
    }
}

// `r` integers with sum of squares `sq` and sum `lin` can exist only if
// lin^2 <= r sq (Cauchy-Schwarz) and sq = lin mod 2 (c^2 = c mod 2).
fn feasible(r: usize, sq: i64, lin: i64) -> bool {
    if sq < 0 {
        return false;
    }
    if r == 0 {
        return sq == 0 && lin == 0;
    }
    (sq - lin).rem_euclid(2) == 0 && (lin as i128) * (lin as i128) <= (r as i128) * (sq as i128)
}

/// `shift` with `F = pencil - shift K`, if one exists.
pub fn pencil_shift(
    model: &SurfaceModel,
    f: &DivisorClass,
    pencil: &DivisorClass,
) -> Result<Option<i64>> {
    let diff = pencil.sub(f)?;
    model.owns(&diff)?;
    let k = model.canonical().coords();
    // K has a nonzero leading coordinate on every ambient
    let (num, den) = (diff.coords()[0], k[0]);
    if num % den != 0 {
        return Ok(None);
    }
    let shift = num / den;
    Ok((diff == model.canonical().scale(shift)?).then_some(shift))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub shift: i64,
    pub query: ClassQuery,
    pub checked: usize,
    /// Classes where `F.C != pencil.C - shift K.C`; empty whenever the
    /// decomposition holds.
    pub violations: Vec<DivisorClass>,
    pub min_fibre_degree: Option<i64>,
    pub minimizers: Vec<DivisorClass>,
}

/// Check `F.C = pencil.C - shift K.C` over every enumerated class for `q`,
/// after confirming `F = pencil - shift K`.
pub fn fibre_intersection_identity(
    fib: &FibrationModel,
    pencil: &DivisorClass,
    shift: i64,
    q: &ClassQuery,
) -> Result<IdentityReport> {
    let model = fib.surface();
    let f = fib.fibre_class();
    let expected = pencil.sub(&model.canonical().scale(shift)?)?;
    if &expected != f {
        let residual = f.sub(&expected)?;
        return Err(Error::IdentityInapplicable {
            shift,
            residual: residual.to_string(),
        });
    }
    let classes = enum_classes(model, q)?;
    let mut violations = Vec::new();
    let mut min = None;
    let mut minimizers = Vec::new();
    for c in &classes {
        let fc = model.intersect(f, c)?;
        let rhs = model.intersect(pencil, c)? - shift * model.canonical_degree(c)?;
        if fc != rhs {
            violations.push(c.clone());
        }
        match min {
            Some(m) if fc > m => {}
            Some(m) if fc == m => minimizers.push(c.clone()),
            _ => {
                min = Some(fc);
                minimizers = vec![c.clone()];
            }
        }
    }
    Ok(IdentityReport {
        shift,
        query: *q,
        checked: classes.len(),
        violations,
        min_fibre_degree: min,
        minimizers,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionVerdict {
    pub exists: bool,
    /// Enumerated (-1)-classes with `F.C = 1`, in lexicographic order.
    pub witnesses: Vec<DivisorClass>,
    pub min_fibre_degree: Option<i64>,
    /// Present when no witness exists and the model carries a pencil class
    /// with `F = pencil - shift K`.
    pub certificate: Option<IdentityReport>,
}

/// Is there a numerical (-1)-class meeting `F` once? When there is not, and
/// the model names a pencil class [`PENCIL_NAME`], the lower bound on `F.C` is
/// certified through [`fibre_intersection_identity`].
pub fn minus_one_section_exists(fib: &FibrationModel, cap: i64) -> Result<SectionVerdict> {
    let model = fib.surface();
    let q = ClassQuery::minus_one(cap)?;
    let classes = enum_classes(model, &q)?;
    let mut witnesses = Vec::new();
    let mut min = None::<i64>;
    for c in classes {
        let fc = model.intersect(fib.fibre_class(), &c)?;
        min = Some(min.map_or(fc, |m| m.min(fc)));
        if fc == 1 {
            witnesses.push(c);
        }
    }
    let mut certificate = None;
    if witnesses.is_empty() {
        if let Some(pencil) = fib.named_classes().get(PENCIL_NAME) {
            if let Some(shift) = pencil_shift(model, fib.fibre_class(), pencil)? {
                certificate = Some(fibre_intersection_identity(fib, pencil, shift, &q)?);
            }
        }
    }
    Ok(SectionVerdict {
        exists: !witnesses.is_empty(),
        witnesses,
        min_fibre_degree: min,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coords(v: &[DivisorClass]) -> Vec<Vec<i64>> {
        v.iter().map(|c| c.coords().to_vec()).collect()
    }

    #[test]
    fn minus_one_classes_on_two_points() {
        let m = SurfaceModel::plane(2);
        let got = enum_classes(&m, &ClassQuery::minus_one(1).unwrap()).unwrap();
        assert_eq!(
            coords(&got),
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, -1, -1]]
        );
    }

    #[test]
    fn pencil_of_lines_through_a_point() {
        let m = SurfaceModel::plane(1);
        let got = enum_classes(&m, &ClassQuery::pencil(1).unwrap()).unwrap();
        assert_eq!(coords(&got), vec![vec![1, -1]]);
    }

    #[test]
    fn degree_one_del_pezzo_has_a_cubic_with_a_double_point() {
        let m = SurfaceModel::plane(8);
        let got = enum_classes(&m, &ClassQuery::minus_one(3).unwrap()).unwrap();
        let cubic = m.plane_class(3, &[2, 1, 1, 1, 1, 1, 1]).unwrap();
        assert!(got.contains(&cubic));
        // 8 points + 28 lines + 56 conics + 56 cubics
        assert_eq!(got.len(), 148);
    }

    #[test]
    fn hirzebruch_fibres_and_sections() {
        let m = SurfaceModel::hirzebruch(1, 0).unwrap();
        let got = enum_classes(&m, &ClassQuery::minus_one(3).unwrap()).unwrap();
        assert_eq!(coords(&got), vec![vec![1, 0]]);
        let m = SurfaceModel::hirzebruch(0, 1).unwrap();
        let got = enum_classes(&m, &ClassQuery::minus_one(1).unwrap()).unwrap();
        // e1, Δ0 - e1, Γ - e1
        assert_eq!(got.len(), 3);
    }

    #[test]
    fn tiny_budget_is_reported() {
        let m = SurfaceModel::plane(8);
        let err = enum_classes_with_budget(&m, &ClassQuery::minus_one(3).unwrap(), 10).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { limit: 10 });
    }

    #[test]
    fn zero_cap_is_refused() {
        assert!(ClassQuery::new(-1, -1, 0).is_err());
    }

    #[test]
    fn shift_is_recovered() {
        let m = SurfaceModel::plane(11);
        let f = m
            .plane_class(7, &[3, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2])
            .unwrap();
        let pencil = m.plane_class(1, &[1]).unwrap();
        assert_eq!(pencil_shift(&m, &f, &pencil).unwrap(), Some(2));
        let other = m.plane_class(1, &[0, 1]).unwrap();
        assert_eq!(pencil_shift(&m, &f, &other).unwrap(), None);
    }
}
