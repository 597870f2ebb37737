//! Divisor classes on blown-up planes and blown-up Hirzebruch surfaces.
//!
//! A class is a coordinate vector tagged with the [`Ambient`] whose basis it
//! refers to. The ambient fully determines the intersection form and the
//! canonical class, so two classes can be combined exactly when their tags are
//! equal.

mod transforms;

use std::fmt;

pub use transforms::{
    blow_down, blow_up, contracting_moves, cremona, cremona_class, elementary_transform,
    elementary_transform_model, hirzebruch_to_plane, plane_to_hirzebruch, swap_ruling, BasisMove,
    ElementaryOutcome,
};

use crate::error::{Error, Result};
use crate::linalg;

/// Which rational surface a coordinate basis describes.
///
/// `Plane { n }` has basis `(l, e1, .., en)`. `Hirzebruch { d, n }` has basis
/// `(Δ0, Γ, e1, .., en)` where `Δ0` is the minimal section of `Σ_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ambient {
    Plane { n: usize },
    Hirzebruch { d: i64, n: usize },
}

impl Ambient {
    pub fn rank(self) -> usize {
        match self {
            Ambient::Plane { n } => n + 1,
            Ambient::Hirzebruch { n, .. } => n + 2,
        }
    }

    /// Number of exceptional classes `e_i`.
    pub fn exceptional_count(self) -> usize {
        match self {
            Ambient::Plane { n } | Ambient::Hirzebruch { n, .. } => n,
        }
    }

    /// Coordinate slot of `e_i` (1-based `i`).
    pub fn exceptional_slot(self, i: usize) -> Result<usize> {
        if i == 0 || i > self.exceptional_count() {
            return Err(Error::IndexOutOfRange {
                index: i,
                ambient: self,
            });
        }
        Ok(match self {
            Ambient::Plane { .. } => i,
            Ambient::Hirzebruch { .. } => i + 1,
        })
    }

    /// Number of leading non-exceptional coordinates.
    pub fn head(self) -> usize {
        match self {
            Ambient::Plane { .. } => 1,
            Ambient::Hirzebruch { .. } => 2,
        }
    }

    pub fn with_exceptional_count(self, n: usize) -> Ambient {
        match self {
            Ambient::Plane { .. } => Ambient::Plane { n },
            Ambient::Hirzebruch { d, .. } => Ambient::Hirzebruch { d, n },
        }
    }

    fn basis_name(self, slot: usize) -> String {
        match (self, slot) {
            (Ambient::Plane { .. }, 0) => "l".to_string(),
            (Ambient::Plane { .. }, i) => format!("e{i}"),
            (Ambient::Hirzebruch { .. }, 0) => "Δ0".to_string(),
            (Ambient::Hirzebruch { .. }, 1) => "Γ".to_string(),
            (Ambient::Hirzebruch { .. }, i) => format!("e{}", i - 1),
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Plane { n } => write!(f, "plane n={n}"),
            Ambient::Hirzebruch { d, n } => write!(f, "hirzebruch d={d} n={n}"),
        }
    }
}

/// An integral divisor class in the basis of its owning ambient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    coords: Vec<i64>,
    owner: Ambient,
}

impl DivisorClass {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn owner(&self) -> Ambient {
        self.owner
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn same_owner(&self, other: &DivisorClass) -> Result<()> {
        if self.owner != other.owner {
            return Err(Error::ForeignClass {
                expected: self.owner,
                found: other.owner,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.same_owner(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("class sum")))
            .collect::<Result<_>>()?;
        Ok(DivisorClass {
            coords,
            owner: self.owner,
        })
    }

    pub fn sub(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.add(&other.scale(-1)?)
    }

    pub fn scale(&self, k: i64) -> Result<DivisorClass> {
        let coords = self
            .coords
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::Overflow("class multiple")))
            .collect::<Result<_>>()?;
        Ok(DivisorClass {
            coords,
            owner: self.owner,
        })
    }

    /// Coefficient of `e_i` (1-based).
    pub fn exceptional_coeff(&self, i: usize) -> Result<i64> {
        Ok(self.coords[self.owner.exceptional_slot(i)?])
    }

    /// Multiplicity at the `i`-th blown-up point, i.e. minus the `e_i` coefficient.
    pub fn multiplicity(&self, i: usize) -> Result<i64> {
        Ok(-self.exceptional_coeff(i)?)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (slot, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let name = self.owner.basis_name(slot);
            let mag = c.unsigned_abs();
            let body = if mag == 1 {
                name
            } else {
                format!("{mag}{name}")
            };
            match (first, c < 0) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Basis, intersection form and canonical class of a rational surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    ambient: Ambient,
    gram: Vec<Vec<i64>>,
    canonical: DivisorClass,
}

impl SurfaceModel {
    pub fn plane(n: usize) -> SurfaceModel {
        Self::build(Ambient::Plane { n })
    }

    pub fn hirzebruch(d: i64, n: usize) -> Result<SurfaceModel> {
        if d < 0 {
            return Err(Error::InvalidArgument(format!(
                "Hirzebruch degree must be nonnegative, got {d}"
            )));
        }
        Ok(Self::build(Ambient::Hirzebruch { d, n }))
    }

    pub fn from_ambient(ambient: Ambient) -> Result<SurfaceModel> {
        match ambient {
            Ambient::Plane { n } => Ok(Self::plane(n)),
            Ambient::Hirzebruch { d, n } => Self::hirzebruch(d, n),
        }
    }

    fn build(ambient: Ambient) -> SurfaceModel {
        let r = ambient.rank();
        let mut gram = vec![vec![0i64; r]; r];
        let mut k = vec![1i64; r];
        match ambient {
            Ambient::Plane { .. } => {
                gram[0][0] = 1;
                k[0] = -3;
            }
            Ambient::Hirzebruch { d, .. } => {
                gram[0][0] = -d;
                gram[0][1] = 1;
                gram[1][0] = 1;
                k[0] = -2;
                k[1] = -(d + 2);
            }
        }
        for (i, row) in gram.iter_mut().enumerate().skip(ambient.head()) {
            row[i] = -1;
        }
        SurfaceModel {
            ambient,
            gram,
            canonical: DivisorClass {
                coords: k,
                owner: ambient,
            },
        }
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.ambient.rank()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    /// Wrap a coordinate vector as a class on this model.
    pub fn class(&self, coords: &[i64]) -> Result<DivisorClass> {
        if coords.len() != self.rank() {
            return Err(Error::RankMismatch {
                rank: self.rank(),
                found: coords.len(),
            });
        }
        Ok(DivisorClass {
            coords: coords.to_vec(),
            owner: self.ambient,
        })
    }

    pub fn zero(&self) -> DivisorClass {
        DivisorClass {
            coords: vec![0; self.rank()],
            owner: self.ambient,
        }
    }

    /// The `slot`-th basis vector, counting from the leading coordinate.
    pub fn basis(&self, slot: usize) -> Result<DivisorClass> {
        if slot >= self.rank() {
            return Err(Error::IndexOutOfRange {
                index: slot,
                ambient: self.ambient,
            });
        }
        let mut c = self.zero();
        c.coords[slot] = 1;
        Ok(c)
    }

    /// The exceptional class `e_i` (1-based).
    pub fn exceptional(&self, i: usize) -> Result<DivisorClass> {
        self.basis(self.ambient.exceptional_slot(i)?)
    }

    /// `delta * l - sum m_i e_i` on a plane model. `mults` may be shorter than `n`.
    pub fn plane_class(&self, delta: i64, mults: &[i64]) -> Result<DivisorClass> {
        let Ambient::Plane { n } = self.ambient else {
            return Err(Error::WrongAmbient(format!(
                "plane coordinates requested on {}",
                self.ambient
            )));
        };
        if mults.len() > n {
            return Err(Error::RankMismatch {
                rank: self.rank(),
                found: mults.len() + 1,
            });
        }
        let mut coords = vec![0; self.rank()];
        coords[0] = delta;
        for (i, m) in mults.iter().enumerate() {
            coords[i + 1] = -m;
        }
        self.class(&coords)
    }

    pub fn owns(&self, c: &DivisorClass) -> Result<()> {
        if c.owner != self.ambient {
            return Err(Error::ForeignClass {
                expected: self.ambient,
                found: c.owner,
            });
        }
        Ok(())
    }

    pub fn intersect(&self, c: &DivisorClass, d: &DivisorClass) -> Result<i64> {
        self.owns(c)?;
        self.owns(d)?;
        linalg::bilinear(&self.gram, &c.coords, &d.coords)
    }

    pub fn self_intersection(&self, c: &DivisorClass) -> Result<i64> {
        self.intersect(c, c)
    }

    /// `K . c`.
    pub fn canonical_degree(&self, c: &DivisorClass) -> Result<i64> {
        self.intersect(&self.canonical, c)
    }

    /// `(c^2 + K.c)/2 + 1`.
    pub fn arithmetic_genus(&self, c: &DivisorClass) -> Result<i64> {
        let s = self
            .self_intersection(c)?
            .checked_add(self.canonical_degree(c)?)
            .ok_or(Error::Overflow("genus"))?;
        if s % 2 != 0 {
            return Err(Error::NonIntegralGenus(s));
        }
        Ok(s / 2 + 1)
    }

    /// Whether `c` is numerically a (-1)-class: `c^2 = K.c = -1`.
    pub fn is_minus_one_class(&self, c: &DivisorClass) -> Result<bool> {
        Ok(self.self_intersection(c)? == -1 && self.canonical_degree(c)? == -1)
    }

    /// The nef reference class used to bound enumerations:
    /// `l` on a plane, `Δ0 + (d+1)Γ` on `Σ_d`.
    pub fn reference_class(&self) -> DivisorClass {
        let mut h = self.zero();
        match self.ambient {
            Ambient::Plane { .. } => h.coords[0] = 1,
            Ambient::Hirzebruch { d, .. } => {
                h.coords[0] = 1;
                h.coords[1] = d + 1;
            }
        }
        h
    }

    /// Gram matrix of a list of classes.
    pub fn gram_of(&self, classes: &[DivisorClass]) -> Result<Vec<Vec<i64>>> {
        for c in classes {
            self.owns(c)?;
        }
        let vecs: Vec<Vec<i64>> = classes.iter().map(|c| c.coords.clone()).collect();
        linalg::gram_of(&vecs, &self.gram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_form_and_canonical() {
        let m = SurfaceModel::plane(3);
        let l = m.basis(0).unwrap();
        let e1 = m.exceptional(1).unwrap();
        assert_eq!(m.intersect(&l, &l).unwrap(), 1);
        assert_eq!(m.intersect(&l, &e1).unwrap(), 0);
        assert_eq!(m.intersect(&e1, &e1).unwrap(), -1);
        assert_eq!(m.canonical().coords(), &[-3, 1, 1, 1]);
        assert_eq!(m.arithmetic_genus(&l).unwrap(), 0);
        // a plane cubic
        assert_eq!(m.arithmetic_genus(&l.scale(3).unwrap()).unwrap(), 1);
    }

    #[test]
    fn hirzebruch_form_and_canonical() {
        let m = SurfaceModel::hirzebruch(2, 1).unwrap();
        let d0 = m.basis(0).unwrap();
        let g = m.basis(1).unwrap();
        assert_eq!(m.self_intersection(&d0).unwrap(), -2);
        assert_eq!(m.intersect(&d0, &g).unwrap(), 1);
        assert_eq!(m.self_intersection(&g).unwrap(), 0);
        assert_eq!(m.canonical().coords(), &[-2, -4, 1]);
        // K^2 = 8 - n on any blown-up Hirzebruch surface
        let k = m.canonical().clone();
        assert_eq!(m.self_intersection(&k).unwrap(), 7);
        assert_eq!(m.arithmetic_genus(&d0).unwrap(), 0);
        assert_eq!(m.arithmetic_genus(&g).unwrap(), 0);
        assert!(SurfaceModel::hirzebruch(-1, 0).is_err());
    }

    #[test]
    fn foreign_classes_are_rejected() {
        let a = SurfaceModel::plane(2);
        let b = SurfaceModel::plane(3);
        let x = a.basis(0).unwrap();
        let y = b.basis(0).unwrap();
        let err = a.intersect(&x, &y).unwrap_err();
        assert!(err.to_string().contains("foreign class"));
        assert!(x.add(&y).is_err());
        assert!(a.class(&[1, 2, 3, 4]).is_err());
    }

    #[test]
    fn genus_can_be_negative_but_is_always_integral() {
        let m = SurfaceModel::plane(1);
        // l + e1 has c^2 = 0 and K.c = -4
        let c = m.class(&[1, 1]).unwrap();
        assert_eq!(m.arithmetic_genus(&c).unwrap(), -1);
        // K is characteristic, so c^2 + K.c is even for every integral class
        let h = SurfaceModel::hirzebruch(3, 2).unwrap();
        for x in -3..=3 {
            for y in -3..=3 {
                for z in -2..=2 {
                    let c = h.class(&[x, y, z, 1 - z]).unwrap();
                    assert!(h.arithmetic_genus(&c).is_ok());
                }
            }
        }
    }

    #[test]
    fn display_is_readable() {
        let m = SurfaceModel::plane(3);
        assert_eq!(
            m.plane_class(6, &[2, 0, 1]).unwrap().to_string(),
            "6l - 2e1 - e3"
        );
        assert_eq!(m.zero().to_string(), "0");
        let h = SurfaceModel::hirzebruch(1, 1).unwrap();
        assert_eq!(h.class(&[4, 7, -1]).unwrap().to_string(), "4Δ0 + 7Γ - e1");
    }
}
