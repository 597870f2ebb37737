//! A surface together with a genus-`g` pencil: fibre class, sections,
//! reducible fibres and auxiliary named classes.

use indexmap::IndexMap;

use crate::error::{Error, Result};
use crate::fibres::FibreDecomposition;
use crate::lattice::{DivisorClass, SurfaceModel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibrationModel {
    surface: SurfaceModel,
    fibre_class: DivisorClass,
    genus: i64,
    sections: IndexMap<String, DivisorClass>,
    fibres: Vec<FibreDecomposition>,
    named: IndexMap<String, DivisorClass>,
}

impl FibrationModel {
    /// Checks `F^2 = 0` and reads the genus off `K.F = 2g - 2`.
    pub fn new(surface: SurfaceModel, fibre_class: DivisorClass) -> Result<FibrationModel> {
        surface.owns(&fibre_class)?;
        let f2 = surface.self_intersection(&fibre_class)?;
        if f2 != 0 {
            return Err(Error::FibrationInvariant(format!("F^2 = {f2}, expected 0")));
        }
        if fibre_class.is_zero() {
            return Err(Error::FibrationInvariant("F is the zero class".into()));
        }
        let genus = surface.arithmetic_genus(&fibre_class)?;
        Ok(FibrationModel {
            surface,
            fibre_class,
            genus,
            sections: IndexMap::new(),
            fibres: Vec::new(),
            named: IndexMap::new(),
        })
    }

    /// Like [`FibrationModel::new`] but also insists on a given genus.
    pub fn with_genus(surface: SurfaceModel, fibre_class: DivisorClass, g: i64) -> Result<Self> {
        let fib = Self::new(surface, fibre_class)?;
        if fib.genus != g {
            return Err(Error::FibrationInvariant(format!(
                "K.F = {} gives genus {}, expected {g}",
                2 * fib.genus - 2,
                fib.genus
            )));
        }
        Ok(fib)
    }

    pub fn add_section(mut self, name: &str, s: DivisorClass) -> Result<Self> {
        self.surface.owns(&s)?;
        let fs = self.surface.intersect(&self.fibre_class, &s)?;
        if fs != 1 {
            return Err(Error::FibrationInvariant(format!(
                "section {name} has F.s = {fs}, expected 1"
            )));
        }
        self.sections.insert(name.to_string(), s);
        Ok(self)
    }

    pub fn add_fibre(mut self, dec: FibreDecomposition) -> Result<Self> {
        for c in dec.components() {
            self.surface.owns(&c.class)?;
        }
        self.fibres.push(dec);
        Ok(self)
    }

    pub fn add_named(mut self, name: &str, c: DivisorClass) -> Result<Self> {
        self.surface.owns(&c)?;
        self.named.insert(name.to_string(), c);
        Ok(self)
    }

    pub fn surface(&self) -> &SurfaceModel {
        &self.surface
    }

    pub fn fibre_class(&self) -> &DivisorClass {
        &self.fibre_class
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn sections(&self) -> &IndexMap<String, DivisorClass> {
        &self.sections
    }

    pub fn fibres(&self) -> &[FibreDecomposition] {
        &self.fibres
    }

    pub fn fibre(&self, name: &str) -> Option<&FibreDecomposition> {
        self.fibres.iter().find(|f| f.name() == name)
    }

    pub fn named_classes(&self) -> &IndexMap<String, DivisorClass> {
        &self.named
    }

    /// Look a class up by name among `F`, sections, named classes and fibre components.
    pub fn lookup(&self, name: &str) -> Option<&DivisorClass> {
        if name == "F" {
            return Some(&self.fibre_class);
        }
        self.sections
            .get(name)
            .or_else(|| self.named.get(name))
            .or_else(|| {
                self.fibres
                    .iter()
                    .flat_map(|f| f.components())
                    .find(|c| c.name == name)
                    .map(|c| &c.class)
            })
    }

    /// `(K + F)^2`.
    pub fn selfint_k_plus_f(&self) -> Result<i64> {
        let kf = self.surface.canonical().add(&self.fibre_class)?;
        self.surface.self_intersection(&kf)
    }

    /// Picard number predicted from the genus and `(K + F)^2`: `4g + 6 - (K+F)^2`.
    pub fn rho_from_invariants(&self) -> Result<i64> {
        Ok(4 * self.genus + 6 - self.selfint_k_plus_f()?)
    }

    /// Picard number as the rank of the lattice.
    pub fn rho(&self) -> i64 {
        self.surface.rank() as i64
    }
}
