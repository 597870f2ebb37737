//! Ground-truth data: the four canonical genus-two pencils and four
//! fibrations with trivial Mordell–Weil group, stored as exact coordinates in
//! the basis `(l, e1, .., en)` and re-verified on demand.
//!
//! Component names follow the printed indices (`Theta2`..`Theta13` for
//! `Ex4_6`), so a name always refers to the same curve as in the text.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;

use crate::curves::{self, ClassQuery, SectionVerdict, DEFAULT_DEGREE_CAP, PENCIL_NAME};
use crate::error::{Error, Result};
use crate::fibration::FibrationModel;
use crate::fibres::{self, CurveLabel, DecompositionReport, FibreComponent, FibreDecomposition};
use crate::lattice::{Ambient, DivisorClass, SurfaceModel};
use crate::minimal::{self, NamedClass, SharpModelData};
use crate::numeric::{branch_class_fibre_degree, branch_consistency, BranchNumerics};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    A,
    B1,
    B2,
    C,
    Ex4_3,
    Ex4_4,
    Ex4_5,
    Ex4_6,
}

impl Tag {
    pub const ALL: [Tag; 8] = [
        Tag::A,
        Tag::B1,
        Tag::B2,
        Tag::C,
        Tag::Ex4_3,
        Tag::Ex4_4,
        Tag::Ex4_5,
        Tag::Ex4_6,
    ];
    pub const CANONICAL: [Tag; 4] = [Tag::A, Tag::B1, Tag::B2, Tag::C];
    pub const EXAMPLES: [Tag; 4] = [Tag::Ex4_3, Tag::Ex4_4, Tag::Ex4_5, Tag::Ex4_6];

    pub fn is_canonical(self) -> bool {
        Tag::CANONICAL.contains(&self)
    }

    /// The canonical case whose fibre class this entry shares.
    pub fn case(self) -> Tag {
        match self {
            Tag::Ex4_3 => Tag::A,
            Tag::Ex4_4 => Tag::B1,
            Tag::Ex4_5 => Tag::B2,
            Tag::Ex4_6 => Tag::C,
            t => t,
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::A => "A",
            Tag::B1 => "B1",
            Tag::B2 => "B2",
            Tag::C => "C",
            Tag::Ex4_3 => "Ex4_3",
            Tag::Ex4_4 => "Ex4_4",
            Tag::Ex4_5 => "Ex4_5",
            Tag::Ex4_6 => "Ex4_6",
        })
    }
}

/// Accepts `A`, `b1`, `Ex4_3`, `ex4.3` and the bare example number `4.3`.
impl FromStr for Tag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tag> {
        let norm = s.trim().to_ascii_uppercase().replace('_', ".");
        let bare = norm.strip_prefix("EX").unwrap_or(&norm);
        Ok(match bare {
            "A" if norm == "A" => Tag::A,
            "B1" => Tag::B1,
            "B2" => Tag::B2,
            "C" => Tag::C,
            "4.3" => Tag::Ex4_3,
            "4.4" => Tag::Ex4_4,
            "4.5" => Tag::Ex4_5,
            "4.6" => Tag::Ex4_6,
            _ => return Err(Error::UnknownTag(s.to_string())),
        })
    }
}

/// One fibre as `(multiplicity, class name)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibreData {
    pub name: String,
    pub components: Vec<(i64, String)>,
}

/// Named coordinates plus fibre decompositions. This is also the content of
/// a model file; the class named `F` is the fibre class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelData {
    pub ambient: Ambient,
    pub classes: IndexMap<String, Vec<i64>>,
    pub fibres: Vec<FibreData>,
    /// Names of curves known to be irreducible (-1)-curves. Basis names such
    /// as `e3` may be used without a class line.
    pub effective: Vec<String>,
}

impl ModelData {
    pub fn surface(&self) -> Result<SurfaceModel> {
        SurfaceModel::from_ambient(self.ambient)
    }

    /// A stored class, or else a basis vector named `l`, `Δ0`, `Γ` or `e<i>`.
    pub fn resolve(&self, model: &SurfaceModel, name: &str) -> Result<DivisorClass> {
        if let Some(v) = self.classes.get(name) {
            return model.class(v);
        }
        basis_class(model, name).ok_or_else(|| Error::UnknownClass(name.to_string()))
    }

    pub fn fibre_class(&self, model: &SurfaceModel) -> Result<DivisorClass> {
        self.classes
            .get("F")
            .ok_or_else(|| Error::UnknownClass("F".into()))
            .and_then(|v| model.class(v))
    }

    pub fn decomposition(
        &self,
        model: &SurfaceModel,
        fibre: &FibreData,
        labels: &IndexMap<String, CurveLabel>,
    ) -> Result<FibreDecomposition> {
        let comps = fibre
            .components
            .iter()
            .map(|(mult, name)| {
                Ok(FibreComponent {
                    name: name.clone(),
                    class: self.resolve(model, name)?,
                    mult: *mult,
                    label: labels.get(name).copied(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        FibreDecomposition::new(&fibre.name, comps)
    }

    fn component_names(&self) -> Vec<&str> {
        self.fibres
            .iter()
            .flat_map(|f| f.components.iter().map(|(_, n)| n.as_str()))
            .collect()
    }

    /// Build the fibration. Classes that are neither `F`, a listed section,
    /// nor a fibre component become named classes.
    pub fn fibration(
        &self,
        sections: &[String],
        labels: &IndexMap<String, CurveLabel>,
    ) -> Result<FibrationModel> {
        let model = self.surface()?;
        let f = self.fibre_class(&model)?;
        let mut fib = FibrationModel::new(model.clone(), f)?;
        let comps = self.component_names();
        for (name, v) in &self.classes {
            if name == "F" || comps.contains(&name.as_str()) {
                continue;
            }
            let c = model.class(v)?;
            fib = if sections.contains(name) {
                fib.add_section(name, c)?
            } else {
                fib.add_named(name, c)?
            };
        }
        for fd in &self.fibres {
            fib = fib.add_fibre(self.decomposition(&model, fd, labels)?)?;
        }
        Ok(fib)
    }

    pub fn effective_curves(&self, model: &SurfaceModel) -> Result<Vec<NamedClass>> {
        self.effective
            .iter()
            .map(|n| Ok((n.clone(), self.resolve(model, n)?)))
            .collect()
    }
}

fn basis_class(model: &SurfaceModel, name: &str) -> Option<DivisorClass> {
    match (model.ambient(), name) {
        (Ambient::Plane { .. }, "l") | (Ambient::Hirzebruch { .. }, "Δ0") => model.basis(0).ok(),
        (Ambient::Hirzebruch { .. }, "Γ") => model.basis(1).ok(),
        _ => {
            let i: usize = name.strip_prefix('e')?.parse().ok()?;
            model.exceptional(i).ok()
        }
    }
}

/// A class that is named but whose coordinates are not printed. The stored
/// coordinates must be the only (-1)-class of degree at most
/// [`DEFAULT_DEGREE_CAP`] with the listed intersection numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reconstruction {
    pub name: String,
    pub constraints: Vec<(String, i64)>,
}

/// Counts of branch-curve singularities, kept as an annotation. Only the
/// arithmetic of the counts is checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchNote {
    pub equation: &'static str,
    pub numerics: BranchNumerics,
    /// `c` in the branch class `6Δ0 + cΓ`.
    pub fibre_degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expected {
    pub ksq: i64,
    pub rho: i64,
    /// Display form of the numeric type the pipeline must reach.
    pub numeric: String,
    pub fibre_counts: Vec<(String, usize)>,
    pub blocks: Vec<Vec<String>>,
    /// Whether a (-1)-section exists, when that is part of the record.
    pub minus_one_section: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawEntry {
    pub tag: Tag,
    pub data: ModelData,
    pub sections: Vec<String>,
    pub labels: IndexMap<String, CurveLabel>,
    /// Intersection numbers stated in the text, `(left, right, value)`.
    pub pairings: Vec<(String, String, i64)>,
    pub reconstructed: Vec<Reconstruction>,
    pub expected: Expected,
    pub branch: Option<BranchNote>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub tag: Tag,
    pub fibration: FibrationModel,
    pub effective_minus_ones: Vec<NamedClass>,
    pub expected: Expected,
    pub blocks: Vec<Vec<NamedClass>>,
}

/// Per-fibre part of a verification report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibreSummary {
    pub name: String,
    pub components: usize,
    pub root_diagrams: Vec<String>,
    pub elliptic: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub tag: Tag,
    /// Names of the checks that passed, in order.
    pub checks: Vec<String>,
    pub ksq: i64,
    pub rho: i64,
    pub fibres: Vec<FibreSummary>,
    pub mordell_weil_rank: Option<i64>,
    pub decomposition: Option<DecompositionReport>,
    pub section: Option<SectionVerdict>,
    pub sharp: SharpModelData,
    pub numeric: String,
}

// ---------------------------------------------------------------------------
// data

fn v(n: usize, deg: i64) -> Vec<i64> {
    let mut out = vec![0; n + 1];
    out[0] = deg;
    out
}

fn with(mut c: Vec<i64>, idx: impl IntoIterator<Item = usize>, coeff: i64) -> Vec<i64> {
    for i in idx {
        c[i] += coeff;
    }
    c
}

/// `deg l - sum_{i in through} e_i`.
fn curve(n: usize, deg: i64, through: impl IntoIterator<Item = usize>) -> Vec<i64> {
    with(v(n, deg), through, -1)
}

/// `e_i - e_j`.
fn diff(n: usize, i: usize, j: usize) -> Vec<i64> {
    with(with(v(n, 0), [i], 1), [j], -1)
}

fn exc(n: usize, i: usize) -> Vec<i64> {
    with(v(n, 0), [i], 1)
}

fn theta(i: usize) -> String {
    format!("Theta{i}")
}

const RATIONAL: CurveLabel = CurveLabel {
    self_int: -2,
    genus: 0,
};
const MINUS_ONE: CurveLabel = CurveLabel {
    self_int: -1,
    genus: 0,
};
const ELLIPTIC: CurveLabel = CurveLabel {
    self_int: -1,
    genus: 1,
};
const RULING: CurveLabel = CurveLabel {
    self_int: 0,
    genus: 0,
};

struct Draft {
    entry: RawEntry,
}

impl Draft {
    fn new(tag: Tag, n: usize, fibre: Vec<i64>, ksq: i64, numeric: &str) -> Draft {
        let mut classes = IndexMap::new();
        classes.insert("F".to_string(), fibre);
        Draft {
            entry: RawEntry {
                tag,
                data: ModelData {
                    ambient: Ambient::Plane { n },
                    classes,
                    fibres: Vec::new(),
                    effective: (1..=n).map(|i| format!("e{i}")).collect(),
                },
                sections: Vec::new(),
                labels: IndexMap::new(),
                pairings: Vec::new(),
                reconstructed: Vec::new(),
                expected: Expected {
                    ksq,
                    rho: 14 - ksq,
                    numeric: numeric.to_string(),
                    fibre_counts: Vec::new(),
                    blocks: Vec::new(),
                    minus_one_section: None,
                },
                branch: None,
            },
        }
    }

    fn class(mut self, name: &str, coords: Vec<i64>, label: CurveLabel) -> Draft {
        self.entry.data.classes.insert(name.to_string(), coords);
        self.entry.labels.insert(name.to_string(), label);
        self
    }

    fn section(mut self, name: &str, coords: Vec<i64>, label: CurveLabel) -> Draft {
        self.entry.sections.push(name.to_string());
        self.class(name, coords, label)
    }

    fn fibre(mut self, name: &str, comps: &[(i64, usize)]) -> Draft {
        self.entry
            .expected
            .fibre_counts
            .push((name.to_string(), comps.len()));
        self.entry.data.fibres.push(FibreData {
            name: name.to_string(),
            components: comps.iter().map(|&(m, i)| (m, theta(i))).collect(),
        });
        self
    }

    fn block(mut self, names: &[&str]) -> Draft {
        self.entry
            .expected
            .blocks
            .push(names.iter().map(|s| s.to_string()).collect());
        self
    }

    fn theta_block(self, idx: &[usize]) -> Draft {
        let names: Vec<String> = idx.iter().map(|&i| theta(i)).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        self.block(&refs)
    }

    fn pair(mut self, left: &str, right: &str, value: i64) -> Draft {
        self.entry
            .pairings
            .push((left.to_string(), right.to_string(), value));
        self
    }

    /// `left` meets exactly the listed components once and misses the rest.
    fn meets_only(mut self, left: &str, hits: &[usize]) -> Draft {
        let comps: Vec<String> = self
            .entry
            .data
            .fibres
            .iter()
            .flat_map(|f| f.components.iter().map(|(_, n)| n.clone()))
            .collect();
        for c in comps {
            let hit = hits.iter().any(|&i| theta(i) == c);
            self = self.pair(left, &c, i64::from(hit));
        }
        self
    }

    fn section_expected(mut self, exists: bool) -> Draft {
        self.entry.expected.minus_one_section = Some(exists);
        self
    }

    fn branch(
        mut self,
        equation: &'static str,
        numerics: BranchNumerics,
        fibre_degree: i64,
    ) -> Draft {
        self.entry.branch = Some(BranchNote {
            equation,
            numerics,
            fibre_degree,
        });
        self
    }
}

fn fibre_a() -> Vec<i64> {
    with(with(v(12, 6), 1..=8, -2), 9..=12, -1)
}

fn fibre_b1() -> Vec<i64> {
    with(with(v(11, 7), [1], -3), 2..=11, -2)
}

fn fibre_b2() -> Vec<i64> {
    with(with(with(v(11, 9), 1..=8, -3), [9, 10], -2), [11], -1)
}

fn fibre_c() -> Vec<i64> {
    with(with(v(10, 13), [1], -5), 2..=10, -4)
}

fn only_v(v: i64) -> BranchNumerics {
    BranchNumerics {
        v,
        epsilon: v,
        ..Default::default()
    }
}

fn canonical(tag: Tag) -> RawEntry {
    let d = match tag {
        Tag::A => Draft::new(tag, 12, fibre_a(), 1, "(2, 0, 7, 2^7; 1)").section_expected(true),
        Tag::B1 => Draft::new(tag, 11, fibre_b1(), 2, "(2, 1, 10, 2^10; 2)")
            .class(PENCIL_NAME, curve(11, 1, [1]), RULING)
            .section_expected(false),
        Tag::B2 => {
            Draft::new(tag, 11, fibre_b2(), 2, "(4, 0, 9, 3^7, 2^2; 2)").section_expected(true)
        }
        Tag::C => Draft::new(tag, 10, fibre_c(), 3, "(6, 1, 9, 4^9; 3)")
            .class(PENCIL_NAME, curve(10, 1, [1]), RULING)
            .section_expected(false),
        _ => unreachable!("examples are built separately"),
    };
    d.entry
}

fn ex4_3() -> RawEntry {
    let n = 12;
    let mut d = Draft::new(Tag::Ex4_3, n, fibre_a(), 1, "(2, 0, 7, 2^7; 1)")
        .section("O", exc(n, 12), MINUS_ONE)
        .class(
            &theta(0),
            curve(n, 1, [1, 9, 10, 11, 12]),
            CurveLabel {
                self_int: -4,
                genus: 0,
            },
        )
        .class(&theta(8), curve(n, 1, [1, 2, 3]), RATIONAL)
        .class(&theta(12), curve(n, 3, 1..=10), ELLIPTIC);
    for i in (1..=7).chain([9, 10, 11]) {
        d = d.class(&theta(i), diff(n, i, i + 1), RATIONAL);
    }
    let mut d = d
        .class("e8", exc(n, 8), MINUS_ONE)
        .fibre("F_0", &[(1, 11), (1, 9), (2, 10), (2, 12)])
        .fibre(
            "F_inf",
            &[
                (1, 0),
                (4, 1),
                (7, 2),
                (10, 3),
                (8, 4),
                (6, 5),
                (4, 6),
                (2, 7),
                (5, 8),
            ],
        )
        .block(&["F", "O"])
        .theta_block(&[9, 10, 12])
        .theta_block(&[1, 2, 3, 4, 5, 6, 7, 8])
        .meets_only("O", &[11, 0])
        .pair("e8", &theta(12), 1)
        .pair("e8", &theta(7), 1)
        .pair("e8", "F", 2);
    for c in ["O", &theta(11), &theta(10), &theta(9)] {
        d = d.pair("e8", c, 0);
    }
    let mut constraints = vec![("F".to_string(), 2), ("O".to_string(), 0)];
    for i in 0..=12 {
        constraints.push((theta(i), i64::from(i == 7 || i == 12)));
    }
    d.entry.reconstructed.push(Reconstruction {
        name: "e8".into(),
        constraints,
    });
    d.section_expected(true)
        .branch("x^5 + t^3 + t^2x = 0", only_v(1), 4)
        .entry
}

fn ex4_4() -> RawEntry {
    let n = 11;
    let mut d = Draft::new(Tag::Ex4_4, n, fibre_b1(), 2, "(2, 1, 10, 2^10; 2)")
        .section("O", diff(n, 1, 2), RATIONAL)
        .class(&theta(0), curve(n, 1, [1, 7, 8]), RATIONAL)
        .class(&theta(1), curve(n, 1, [1, 2, 3]), RATIONAL)
        .class(&theta(6), curve(n, 3, (1..=5).chain(7..=11)), ELLIPTIC)
        .class(&theta(11), curve(n, 3, 1..=10), ELLIPTIC);
    for i in [2, 3, 4, 5, 7, 8, 9, 10] {
        d = d.class(&theta(i), diff(n, i, i + 1), RATIONAL);
    }
    d.class("e6", exc(n, 6), MINUS_ONE)
        .class("e11", exc(n, 11), MINUS_ONE)
        .class(PENCIL_NAME, curve(n, 1, [1]), RULING)
        .fibre("F_0", &[(1, 0), (1, 7), (2, 8), (2, 9), (2, 10), (2, 11)])
        .fibre("F_inf", &[(1, 1), (1, 2), (2, 3), (2, 4), (2, 5), (2, 6)])
        .block(&["F", "O"])
        .theta_block(&[7, 8, 9, 10, 11])
        .theta_block(&[1, 3, 4, 5, 6])
        .meets_only("O", &[0, 2])
        .pair("e6", &theta(5), 1)
        .pair("e11", &theta(10), 1)
        .pair("e6", "F", 2)
        .pair("e11", "F", 2)
        .section_expected(false)
        .branch("x^5 + tx^4 + tx^3 + t^2x + t^3 = 0", only_v(2), 6)
        .entry
}

fn ex4_5() -> RawEntry {
    let n = 11;
    let mut d = Draft::new(Tag::Ex4_5, n, fibre_b2(), 2, "(4, 0, 9, 3^7, 2^2; 2)")
        .section("O", exc(n, 11), MINUS_ONE)
        .class(&theta(10), curve(n, 3, (1..=9).chain([11])), ELLIPTIC)
        .class(&theta(0), curve(n, 1, [1, 2, 3]), RATIONAL)
        .class(
            &theta(8),
            with(curve(n, 3, (1..=7).chain([10])), [9], -2),
            CurveLabel {
                self_int: -3,
                genus: 0,
            },
        );
    for i in (1..=7).chain([9]) {
        d = d.class(&theta(i), diff(n, i, i + 1), RATIONAL);
    }
    let ii = BranchNumerics {
        ii: vec![1],
        ..Default::default()
    };
    d.class("e10", exc(n, 10), MINUS_ONE)
        .class("e8hat", diff(n, 8, 11), RATIONAL)
        .fibre(
            "F_0",
            &[
                (1, 10),
                (1, 9),
                (6, 3),
                (5, 4),
                (4, 5),
                (3, 6),
                (2, 7),
                (1, 8),
                (4, 2),
                (2, 1),
                (3, 0),
            ],
        )
        .block(&["F", "O"])
        .theta_block(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9])
        .meets_only("O", &[10])
        .pair("e10", &theta(9), 1)
        .pair("e10", &theta(8), 1)
        .pair("e8hat", "O", 1)
        .pair("e8hat", &theta(7), 1)
        .pair("e10", "F", 2)
        .pair("e8hat", "F", 2)
        .section_expected(true)
        .branch(
            "t^3x^5 - 3t^4x^4 - 3t^2x^4 + 6t^3x^3 + 3tx^3 + 3t^4x^2 - 3t^2x^2 - x^2 - 3t^3x - t^4 = 0",
            ii,
            4,
        )
        .entry
}

fn ex4_6() -> RawEntry {
    let n = 10;
    let mut d = Draft::new(Tag::Ex4_6, n, fibre_c(), 3, "(6, 1, 9, 4^9; 3)");
    for i in 2..=7 {
        d = d.class(&theta(i), diff(n, i, i + 3), RATIONAL);
    }
    for i in 8..=10 {
        d = d.class(&theta(i), with(with(v(n, 6), 1..=10, -2), [i], 1), ELLIPTIC);
    }
    for i in 2..=4 {
        d = d.class(&theta(i + 9), curve(n, 1, [1, i, i + 3]), RATIONAL);
    }
    let mut d = d.section("O", curve(n, 1, [2, 3, 4]), RATIONAL).class(
        PENCIL_NAME,
        curve(n, 1, [1]),
        RULING,
    );
    for i in [1, 8, 9, 10] {
        d = d.class(&format!("e{i}"), exc(n, i), MINUS_ONE);
    }
    d.fibre("F_0", &[(1, 2), (1, 11), (2, 5), (2, 8)])
        .fibre("F_1", &[(1, 3), (1, 12), (2, 6), (2, 9)])
        .fibre("F_inf", &[(1, 4), (1, 13), (2, 7), (2, 10)])
        .block(&["F", "O"])
        .theta_block(&[5, 8, 11])
        .theta_block(&[6, 9, 12])
        .theta_block(&[7, 10, 13])
        .meets_only("O", &[2, 3, 4])
        .pair("e8", &theta(5), 1)
        .pair("e9", &theta(6), 1)
        .pair("e10", &theta(7), 1)
        .pair("e1", &theta(11), 1)
        .pair("e1", &theta(12), 1)
        .pair("e1", &theta(13), 1)
        .pair("e1", &theta(8), 2)
        .pair("e1", &theta(9), 2)
        .pair("e1", &theta(10), 2)
        .pair("e8", "F", 4)
        .pair("e9", "F", 4)
        .pair("e10", "F", 4)
        .pair("e1", "F", 5)
        .section_expected(false)
        .branch(
            "x^5 + t^2x^4 - 6tx^4 + 6t^2x^3 + 4tx^3 - 4t^3x^2 - 6t^2x^2 + 6t^3x - t^2x - t^4 = 0",
            only_v(3),
            8,
        )
        .entry
}

/// The stored data for `tag`, unchecked.
pub fn raw(tag: Tag) -> RawEntry {
    match tag {
        Tag::Ex4_3 => ex4_3(),
        Tag::Ex4_4 => ex4_4(),
        Tag::Ex4_5 => ex4_5(),
        Tag::Ex4_6 => ex4_6(),
        t => canonical(t),
    }
}

// ---------------------------------------------------------------------------
// checks

struct Checker {
    passed: Vec<String>,
}

impl Checker {
    fn ensure(&mut self, check: &str, ok: bool, detail: impl FnOnce() -> String) -> Result<()> {
        if ok {
            self.passed.push(check.to_string());
            Ok(())
        } else {
            Err(Error::VerificationFailed {
                check: check.to_string(),
                detail: detail(),
            })
        }
    }

    /// Run `f`, reporting any library error as a failure of `check`.
    fn run<T>(&mut self, check: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let out = f().map_err(|e| Error::VerificationFailed {
            check: check.to_string(),
            detail: e.to_string(),
        })?;
        self.passed.push(check.to_string());
        Ok(out)
    }
}

// Invariants that every entry must satisfy before it is handed out.
fn check_classes(raw: &RawEntry, ck: &mut Checker) -> Result<FibrationModel> {
    let data = &raw.data;
    let model = ck.run("surface", || data.surface())?;
    let f = ck.run("F", || data.fibre_class(&model))?;
    let f2 = model.self_intersection(&f)?;
    ck.ensure("F^2", f2 == 0, || format!("F^2 = {f2}, expected 0"))?;
    let kf = model.canonical_degree(&f)?;
    ck.ensure("K.F", kf == 2, || format!("K.F = {kf}, expected 2"))?;
    let kf_sq = model.self_intersection(&model.canonical().add(&f)?)?;
    let ksq = raw.expected.ksq;
    ck.ensure("(K+F)^2", kf_sq == ksq, || {
        format!("(K+F)^2 = {kf_sq}, expected {ksq}")
    })?;
    let rank = model.rank() as i64;
    let rho = raw.expected.rho;
    ck.ensure("rho", rank == rho && 4 * 2 + 6 - ksq == rho, || {
        format!("rank {rank}, recorded {rho}, 14 - (K+F)^2 = {}", 14 - ksq)
    })?;
    for (name, label) in &raw.labels {
        let c = data.resolve(&model, name)?;
        let (s, g) = (model.self_intersection(&c)?, model.arithmetic_genus(&c)?);
        ck.ensure(
            &format!("label {name}"),
            s == label.self_int && g == label.genus,
            || {
                format!(
                    "{name} has C^2 = {s}, genus {g}; stated {} and {}",
                    label.self_int, label.genus
                )
            },
        )?;
    }
    for (l, r, want) in &raw.pairings {
        let got = model.intersect(&data.resolve(&model, l)?, &data.resolve(&model, r)?)?;
        ck.ensure(&format!("{l}.{r}"), got == *want, || {
            format!("{l}.{r} = {got}, stated {want}")
        })?;
    }
    ck.run("fibration", || data.fibration(&raw.sections, &raw.labels))
}

fn check_reconstruction(
    raw: &RawEntry,
    fib: &FibrationModel,
    rec: &Reconstruction,
    ck: &mut Checker,
) -> Result<()> {
    let model = fib.surface();
    let stored = raw.data.resolve(model, &rec.name)?;
    let constraints = rec
        .constraints
        .iter()
        .map(|(n, val)| Ok((raw.data.resolve(model, n)?, *val)))
        .collect::<Result<Vec<_>>>()?;
    let mut hits = Vec::new();
    for c in curves::enum_classes(model, &ClassQuery::minus_one(DEFAULT_DEGREE_CAP)?)? {
        let mut ok = true;
        for (d, val) in &constraints {
            if model.intersect(&c, d)? != *val {
                ok = false;
                break;
            }
        }
        if ok {
            hits.push(c);
        }
    }
    ck.ensure(
        &format!("reconstruction {}", rec.name),
        hits.len() == 1 && hits[0] == stored,
        || {
            let found: Vec<String> = hits.iter().map(ToString::to_string).collect();
            format!("stored {stored}, enumeration found [{}]", found.join(", "))
        },
    )
}

fn elliptic_names(g: &fibres::DualGraph) -> Vec<String> {
    g.nodes
        .iter()
        .filter(|n| n.genus == 1)
        .map(|n| n.name.clone())
        .collect()
}

fn named_blocks(raw: &RawEntry, fib: &FibrationModel) -> Result<Vec<Vec<NamedClass>>> {
    raw.expected
        .blocks
        .iter()
        .map(|b| {
            b.iter()
                .map(|n| Ok((n.clone(), raw.data.resolve(fib.surface(), n)?)))
                .collect()
        })
        .collect()
}

/// Construct an entry, checking class-level invariants (self-intersections,
/// genera, stated intersection numbers and the Picard number formula).
pub fn build(raw: &RawEntry) -> Result<CatalogEntry> {
    let mut ck = Checker { passed: Vec::new() };
    let fibration = check_classes(raw, &mut ck)?;
    let effective_minus_ones = raw.data.effective_curves(fibration.surface())?;
    let blocks = named_blocks(raw, &fibration)?;
    Ok(CatalogEntry {
        tag: raw.tag,
        fibration,
        effective_minus_ones,
        expected: raw.expected.clone(),
        blocks,
    })
}

pub fn get(tag: Tag) -> Result<CatalogEntry> {
    build(&raw(tag))
}

pub fn verify(tag: Tag) -> Result<VerifyReport> {
    verify_raw(&raw(tag))
}

/// Everything: class sanity, fibre validation, dual graphs, Shioda rank,
/// the orthogonal decomposition, (-1)-section existence and the reduction
/// pipeline. Stops at the first failed identity.
pub fn verify_raw(raw: &RawEntry) -> Result<VerifyReport> {
    let mut ck = Checker { passed: Vec::new() };
    let fib = check_classes(raw, &mut ck)?;
    for rec in &raw.reconstructed {
        check_reconstruction(raw, &fib, rec, &mut ck)?;
    }

    let mut summaries = Vec::new();
    for (dec, (name, count)) in fib.fibres().iter().zip(&raw.expected.fibre_counts) {
        ck.run(&format!("fibre {}", dec.name()), || {
            fibres::validate_fibre(&fib, dec)
        })?;
        ck.ensure(
            &format!("components {name}"),
            dec.len() == *count && dec.name() == name,
            || {
                format!(
                    "{} has {} components, recorded {name} with {count}",
                    dec.name(),
                    dec.len()
                )
            },
        )?;
        let graph = fibres::dual_graph(&fib, dec)?;
        ck.ensure(&format!("dual graph {name}"), graph.is_connected(), || {
            "the components do not form a connected curve".into()
        })?;
        summaries.push(FibreSummary {
            name: name.clone(),
            components: dec.len(),
            root_diagrams: fibres::ade_classify(&graph)
                .iter()
                .map(|c| c.label.to_string())
                .collect(),
            elliptic: elliptic_names(&graph),
        });
    }
    ck.ensure(
        "fibre count",
        fib.fibres().len() == raw.expected.fibre_counts.len(),
        || {
            format!(
                "{} fibres stored, {} recorded",
                fib.fibres().len(),
                raw.expected.fibre_counts.len()
            )
        },
    )?;

    let mut mordell_weil_rank = None;
    let mut decomposition = None;
    if !raw.expected.blocks.is_empty() {
        let counts: Vec<i64> = fib.fibres().iter().map(|f| f.len() as i64).collect();
        let r = ck.run("Shioda rank", || fibres::shioda_rank(fib.rho(), &counts))?;
        ck.ensure("Mordell-Weil rank", r == 0, || {
            format!("rank {r}, expected 0")
        })?;
        mordell_weil_rank = Some(r);
        let blocks = named_blocks(raw, &fib)?;
        decomposition = Some(ck.run("orthogonal decomposition", || {
            fibres::orthogonal_decomposition_check(&fib, &blocks)
        })?);
    }

    let mut section = None;
    if let Some(want) = raw.expected.minus_one_section {
        let verdict = ck.run("(-1)-section search", || {
            curves::minus_one_section_exists(&fib, DEFAULT_DEGREE_CAP)
        })?;
        ck.ensure("(-1)-section", verdict.exists == want, || {
            format!(
                "found {} witnesses, expected existence {want}",
                verdict.witnesses.len()
            )
        })?;
        if !want {
            let certified = verdict.certificate.as_ref().is_some_and(|c| {
                c.violations.is_empty() && c.min_fibre_degree.is_some_and(|m| m >= 2)
            });
            ck.ensure("no (-1)-section certificate", certified, || {
                "no pencil class certifies the lower bound on F.C".into()
            })?;
        }
        section = Some(verdict);
    }

    let curves_in = raw.data.effective_curves(fib.surface())?;
    let out = ck.run("pipeline", || minimal::run_pipeline(&fib, &curves_in))?;
    let numeric = out
        .numeric
        .as_ref()
        .map_or_else(|| format!("special: {}", out.sharp), ToString::to_string);
    ck.ensure("numeric type", numeric == raw.expected.numeric, || {
        format!(
            "pipeline reached {numeric}, recorded {}",
            raw.expected.numeric
        )
    })?;
    let g_sq = out.reduced.pencil_sq()?;
    let n = out.sharp.mults.len() as i64;
    let ksq = raw.expected.ksq;
    ck.ensure(
        "(K+F)^2 + G^2 + N = 4g + 4",
        ksq + g_sq + n == 4 * 2 + 4,
        || format!("{ksq} + {g_sq} + {n} != 12"),
    )?;

    if let Some(note) = &raw.branch {
        let verdict = branch_consistency(&note.numerics, ksq)?;
        let degree = branch_class_fibre_degree(note.numerics.epsilon, ksq);
        ck.ensure(
            "branch counts",
            verdict.consistent() && degree == note.fibre_degree,
            || {
                format!(
                    "{} gives (K+F)^2 = {} and branch class 6Δ0 + {degree}Γ, recorded {}",
                    note.numerics.describe(),
                    verdict.ksq_from_counts,
                    note.fibre_degree
                )
            },
        )?;
    }

    Ok(VerifyReport {
        tag: raw.tag,
        checks: ck.passed,
        ksq,
        rho: fib.rho(),
        fibres: summaries,
        mordell_weil_rank,
        decomposition,
        section,
        sharp: out.sharp,
        numeric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_parse() {
        assert_eq!("4.3".parse::<Tag>().unwrap(), Tag::Ex4_3);
        assert_eq!("Ex4_6".parse::<Tag>().unwrap(), Tag::Ex4_6);
        assert_eq!("ex4.5".parse::<Tag>().unwrap(), Tag::Ex4_5);
        assert_eq!("b2".parse::<Tag>().unwrap(), Tag::B2);
        assert!("9.9".parse::<Tag>().is_err());
        assert!("EXA".parse::<Tag>().is_err());
        for t in Tag::ALL {
            assert_eq!(t.to_string().parse::<Tag>().unwrap(), t);
        }
    }

    #[test]
    fn canonical_fibre_classes() {
        let a = get(Tag::A).unwrap();
        let m = a.fibration.surface();
        let want = m
            .plane_class(6, &[2, 2, 2, 2, 2, 2, 2, 2, 1, 1, 1, 1])
            .unwrap();
        assert_eq!(a.fibration.fibre_class(), &want);
        let c = get(Tag::C).unwrap();
        let m = c.fibration.surface();
        let mut mults = vec![5];
        mults.extend([4; 9]);
        assert_eq!(
            c.fibration.fibre_class(),
            &m.plane_class(13, &mults).unwrap()
        );
    }

    #[test]
    fn examples_share_the_canonical_fibre_class() {
        for t in Tag::EXAMPLES {
            let ex = raw(t);
            let case = raw(t.case());
            assert_eq!(ex.data.classes["F"], case.data.classes["F"], "{t}");
        }
    }

    #[test]
    fn example_fibre_counts() {
        let e = get(Tag::Ex4_4).unwrap();
        let counts: Vec<usize> = e.fibration.fibres().iter().map(|f| f.len()).collect();
        assert_eq!(counts, [6, 6]);
        assert_eq!(get(Tag::Ex4_6).unwrap().blocks.len(), 4);
    }

    #[test]
    fn every_entry_verifies() {
        for t in Tag::ALL {
            let r = verify(t).unwrap_or_else(|e| panic!("{t}: {e}"));
            assert_eq!(r.numeric, raw(t).expected.numeric);
        }
    }

    #[test]
    fn unique_reducible_fibre_of_ex4_5() {
        let r = verify(Tag::Ex4_5).unwrap();
        assert_eq!(r.fibres.len(), 1);
        assert_eq!(r.fibres[0].components, 11);
        assert_eq!(r.mordell_weil_rank, Some(0));
    }

    #[test]
    fn corrupted_fibre_class_fails_first_at_self_intersection() {
        let mut b1 = raw(Tag::B1);
        b1.data.classes["F"][0] += 1;
        match verify_raw(&b1).unwrap_err() {
            Error::VerificationFailed { check, .. } => assert_eq!(check, "F^2"),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn wrong_label_is_named() {
        let mut e = raw(Tag::Ex4_5);
        e.labels.insert(theta(8), RATIONAL);
        let err = verify_raw(&e).unwrap_err();
        assert!(err.to_string().contains("label Theta8"), "{err}");
    }
}
