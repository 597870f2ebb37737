//! Reduction of a pencil, greedy contraction to a #-minimal model on a
//! Hirzebruch surface, and the plane model read off from it.
//!
//! Which (-1)-curves exist depends on the position of the blown-up points,
//! so both procedures take the curves as explicit input and only use the
//! lattice to check them and to push them forward.

use std::fmt;

use crate::error::{Error, Result};
use crate::fibration::FibrationModel;
use crate::lattice::{blow_down, Ambient, BasisMove, DivisorClass, SurfaceModel};
use crate::numeric::{runs, NumericType};

pub type NamedClass = (String, DivisorClass);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionStep {
    pub name: String,
    /// The contracted class in the basis current at the time.
    pub class: DivisorClass,
    /// Its intersection with the pencil class at the time.
    pub pencil_degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionTrace {
    pub start: Ambient,
    pub end: Ambient,
    pub steps: Vec<ContractionStep>,
}

impl ContractionTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn pencil_degrees(&self) -> Vec<i64> {
        self.steps.iter().map(|s| s.pencil_degree).collect()
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.steps
            .windows(2)
            .all(|w| w[0].pencil_degree <= w[1].pencil_degree)
    }
}

/// A surface with the pushed-forward pencil class `G` and the curves that
/// survived contraction. Unlike a fibration, `G^2` may be positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilPair {
    surface: SurfaceModel,
    pencil: DivisorClass,
    genus: i64,
    curves: Vec<NamedClass>,
}

impl PencilPair {
    pub fn new(
        surface: SurfaceModel,
        pencil: DivisorClass,
        curves: Vec<NamedClass>,
    ) -> Result<Self> {
        surface.owns(&pencil)?;
        for (_, c) in &curves {
            surface.owns(c)?;
        }
        let genus = surface.arithmetic_genus(&pencil)?;
        Ok(PencilPair {
            surface,
            pencil,
            genus,
            curves,
        })
    }

    pub fn from_fibration(fib: &FibrationModel, curves: Vec<NamedClass>) -> Result<Self> {
        Self::new(fib.surface().clone(), fib.fibre_class().clone(), curves)
    }

    pub fn surface(&self) -> &SurfaceModel {
        &self.surface
    }

    pub fn pencil(&self) -> &DivisorClass {
        &self.pencil
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn curves(&self) -> &[NamedClass] {
        &self.curves
    }

    pub fn pencil_sq(&self) -> Result<i64> {
        self.surface.self_intersection(&self.pencil)
    }

    pub fn k_sq(&self) -> Result<i64> {
        self.surface.self_intersection(self.surface.canonical())
    }

    /// `(K + G)^2`.
    pub fn selfint_k_plus_pencil(&self) -> Result<i64> {
        let kg = self.surface.canonical().add(&self.pencil)?;
        self.surface.self_intersection(&kg)
    }
}

fn check_minus_one_curves(model: &SurfaceModel, curves: &[NamedClass]) -> Result<()> {
    for (name, c) in curves {
        model.owns(c)?;
        if !model.is_minus_one_class(c)? {
            return Err(Error::RejectedCurve {
                name: name.clone(),
                reason: format!(
                    "C^2 = {}, K.C = {}; a (-1)-curve needs -1 and -1",
                    model.self_intersection(c)?,
                    model.canonical_degree(c)?
                ),
            });
        }
    }
    Ok(())
}

// Contract `e` on `pair`, pushing the pencil and the curves forward and
// dropping curves that become zero.
fn contract(pair: &PencilPair, e: &DivisorClass) -> Result<PencilPair> {
    let mut all = vec![pair.pencil.clone()];
    all.extend(pair.curves.iter().map(|(_, c)| c.clone()));
    let (model, mut pushed) = blow_down(&pair.surface, e, &all)?;
    let pencil = pushed.remove(0);
    let curves = pair
        .curves
        .iter()
        .zip(pushed)
        .filter(|(_, c)| !c.is_zero())
        .map(|((n, _), c)| (n.clone(), c))
        .collect();
    Ok(PencilPair {
        surface: model,
        pencil,
        genus: pair.genus,
        curves,
    })
}

// Among current (-1)-classes accepted by `admit`, the one minimising
// (pencil degree, coordinates).
fn pick(pair: &PencilPair, admit: impl Fn(i64) -> bool) -> Result<Option<ContractionStep>> {
    let mut best: Option<ContractionStep> = None;
    for (name, c) in &pair.curves {
        if !pair.surface.is_minus_one_class(c)? {
            continue;
        }
        let deg = pair.surface.intersect(&pair.pencil, c)?;
        if !admit(deg) {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => (deg, c.coords()) < (b.pencil_degree, b.class.coords()),
        };
        if better {
            best = Some(ContractionStep {
                name: name.clone(),
                class: c.clone(),
                pencil_degree: deg,
            });
        }
    }
    Ok(best)
}

/// Contract supplied (-1)-curves meeting the pencil once, one at a time,
/// until none is left. Every supplied class must be a (-1)-class.
///
/// On the result `K_Y^2 = K_X^2 + steps`, `G^2 = steps` and
/// `(K_Y + G)^2 = (K_X + F)^2`.
pub fn reduction(
    fib: &FibrationModel,
    curves: &[NamedClass],
) -> Result<(PencilPair, ContractionTrace)> {
    check_minus_one_curves(fib.surface(), curves)?;
    let mut pair = PencilPair::from_fibration(fib, curves.to_vec())?;
    let start = pair.surface.ambient();
    let mut steps = Vec::new();
    while let Some(step) = pick(&pair, |deg| deg == 1)? {
        pair = contract(&pair, &step.class)?;
        steps.push(step);
    }
    let end = pair.surface.ambient();
    Ok((pair, ContractionTrace { start, end, steps }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SharpKind {
    General,
    Special,
}

impl fmt::Display for SharpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SharpKind::General => "general",
            SharpKind::Special => "special",
        })
    }
}

/// `(Σ_d, (a+2)Δ0 + bΓ)` with singular points of multiplicities `mults`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharpModelData {
    pub d: i64,
    pub a: i64,
    pub b: i64,
    /// `2b - (d+2)(a+2)`.
    pub twice_b_check: i64,
    pub mults: Vec<i64>,
    pub kind: SharpKind,
    /// `b - (a+2)`, for the special type only.
    pub m0: Option<i64>,
}

impl SharpModelData {
    pub fn new(d: i64, a: i64, b: i64, mut mults: Vec<i64>) -> SharpModelData {
        mults.sort_unstable_by(|x, y| y.cmp(x));
        let kind = classify_type(d, a, b);
        SharpModelData {
            d,
            a,
            b,
            twice_b_check: 2 * b - (d + 2) * (a + 2),
            mults,
            kind,
            m0: (kind == SharpKind::Special).then_some(b - (a + 2)),
        }
    }

    /// Check the fibre-degree condition `b >= (a+2)d` (`b >= a+2` on `Σ0`),
    /// the multiplicity condition `2m_1 <= a+2` and, on `Σ1`,
    /// `m_1 <= b - (a+2)`. A failure names the condition and the
    /// elementary transformation that would repair it.
    pub fn check_conditions(&self) -> Result<()> {
        let (d, a, b) = (self.d, self.a, self.b);
        if a < 0 {
            return Err(Error::SharpCondition {
                condition: format!("Γ.G = {} is below 2", a + 2),
                repair: "choose a ruling meeting the pencil at least twice".into(),
            });
        }
        if d > 0 && b < (a + 2) * d {
            return Err(Error::SharpCondition {
                condition: format!("fibre-degree condition b >= (a+2)d: {b} < {}", (a + 2) * d),
                repair: format!(
                    "elementary transformations at points of G off Δ0 lower d; Δ0.G = {} must become nonnegative",
                    b - (a + 2) * d
                ),
            });
        }
        if d == 0 && b < a + 2 {
            return Err(Error::SharpCondition {
                condition: format!("fibre-degree condition b >= a+2 on Σ0: {b} < {}", a + 2),
                repair: "swap the ruling of Σ0".into(),
            });
        }
        if let Some(&m) = self.mults.iter().find(|&&m| m < 2) {
            return Err(Error::SharpCondition {
                condition: format!("singular points have multiplicity at least 2, found {m}"),
                repair: "contract only (-1)-curves lying over singular points of G".into(),
            });
        }
        if let Some(&m1) = self.mults.first() {
            if 2 * m1 > a + 2 {
                return Err(Error::SharpCondition {
                    condition: format!("multiplicity condition 2m1 <= a+2: 2*{m1} > {}", a + 2),
                    repair: format!(
                        "elementary transformation at the {m1}-fold point leaves a point of multiplicity {}",
                        a + 2 - m1
                    ),
                });
            }
            if d == 1 && m1 > b - (a + 2) {
                return Err(Error::SharpCondition {
                    condition: format!("on Σ1, m1 <= b-(a+2): {m1} > {}", b - (a + 2)),
                    repair: "elementary transformation at the point of multiplicity m1 off Δ0, landing on Σ0"
                        .into(),
                });
            }
        }
        Ok(())
    }

    /// The general-type datum, or `None` for the special type.
    pub fn numeric_type(&self) -> Result<Option<NumericType>> {
        match self.kind {
            SharpKind::General => Ok(Some(NumericType::from_data(
                self.a,
                self.twice_b_check,
                self.mults.clone(),
            )?)),
            SharpKind::Special => Ok(None),
        }
    }
}

impl fmt::Display for SharpModelData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Σ{}: G = {}Δ0 + {}Γ, a = {}, 2b̌ = {}, multiplicities {} ({})",
            self.d,
            self.a + 2,
            self.b,
            self.a,
            self.twice_b_check,
            format_mults(&self.mults),
            self.kind
        )
    }
}

/// `m^k` runs separated by spaces, e.g. `5^1 4^9`.
pub fn format_mults(mults: &[i64]) -> String {
    if mults.is_empty() {
        return "none".into();
    }
    runs(mults)
        .iter()
        .map(|(m, k)| format!("{m}^{k}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// General when `2b - (a+2)d >= 2(a+2)`; otherwise special (which forces `d = 1`
/// once the fibre-degree condition holds).
pub fn classify_type(d: i64, a: i64, b: i64) -> SharpKind {
    if 2 * b - (a + 2) * d >= 2 * (a + 2) {
        SharpKind::General
    } else {
        SharpKind::Special
    }
}

/// Contract (-1)-curves of least intersection with the pencil until the
/// surface has rank 2, then read off the #-minimal datum.
///
/// Ties are broken by the lexicographically smallest coordinate vector. On
/// `Σ0` the ruling is swapped when `Γ.G > Δ0.G`.
pub fn greedy_sharp_minimal(
    pair: &PencilPair,
    curves: &[NamedClass],
) -> Result<(SharpModelData, ContractionTrace)> {
    check_minus_one_curves(pair.surface(), curves)?;
    let mut cur = PencilPair::new(pair.surface.clone(), pair.pencil.clone(), curves.to_vec())?;
    if let Some(step) = pick(&cur, |deg| deg == 1)? {
        return Err(Error::NotReduced(step.name));
    }
    let start = cur.surface.ambient();
    let mut steps = Vec::new();
    while cur.surface.rank() > 2 {
        let step = pick(&cur, |_| true)?.ok_or(Error::IncompleteGeometry {
            rank: cur.surface.rank(),
        })?;
        cur = contract(&cur, &step.class)?;
        steps.push(step);
    }
    let mut model = cur.surface.clone();
    let mut g = cur.pencil.clone();
    if let Ambient::Plane { .. } = model.ambient() {
        let (m, v) = BasisMove::PlaneToHirzebruch.apply(&model, &[g])?;
        model = m;
        g = v.into_iter().next().expect("one class in, one out");
    }
    let Ambient::Hirzebruch { d, .. } = model.ambient() else {
        unreachable!("rank-2 models are Σ_d after the plane switch");
    };
    if d == 0 && g.coords()[0] > g.coords()[1] {
        let (m, v) = BasisMove::SwapRuling.apply(&model, &[g])?;
        model = m;
        g = v.into_iter().next().expect("one class in, one out");
    }
    let (x, y) = (g.coords()[0], g.coords()[1]);
    let trace = ContractionTrace {
        start,
        end: model.ambient(),
        steps,
    };
    let sharp = SharpModelData::new(d, x - 2, y, trace.pencil_degrees());
    sharp.check_conditions()?;
    Ok((sharp, trace))
}

/// A plane curve of degree `degree` with points of the given multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneModel {
    pub degree: i64,
    pub mults: Vec<i64>,
}

impl fmt::Display for PlaneModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree {}, singularities: {}",
            self.degree,
            format_mults(&self.mults)
        )
    }
}

/// Contract `Δ0` on `Σ1`: a curve of degree `b` with a `(b-(a+2))`-fold
/// point joining the other singular points.
pub fn canonical_p2_model(sharp: &SharpModelData) -> Result<PlaneModel> {
    if sharp.d != 1 {
        return Err(Error::NotPlaneAdjacent(sharp.d));
    }
    let mut mults = sharp.mults.clone();
    mults.push(sharp.b - (sharp.a + 2));
    mults.sort_unstable_by(|x, y| y.cmp(x));
    Ok(PlaneModel {
        degree: sharp.b,
        mults,
    })
}

/// Everything the pipeline produces for one fibration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineOutcome {
    pub reduced: PencilPair,
    pub reduction_trace: ContractionTrace,
    pub sharp: SharpModelData,
    pub sharp_trace: ContractionTrace,
    pub numeric: Option<NumericType>,
}

/// Reduction followed by greedy contraction, using the curves that survive
/// the reduction.
pub fn run_pipeline(fib: &FibrationModel, curves: &[NamedClass]) -> Result<PipelineOutcome> {
    let (reduced, reduction_trace) = reduction(fib, curves)?;
    let survivors: Vec<NamedClass> = reduced
        .curves()
        .iter()
        .filter(|(_, c)| reduced.surface().is_minus_one_class(c).unwrap_or(false))
        .cloned()
        .collect();
    let (sharp, sharp_trace) = greedy_sharp_minimal(&reduced, &survivors)?;
    let numeric = sharp.numeric_type()?;
    Ok(PipelineOutcome {
        reduced,
        reduction_trace,
        sharp,
        sharp_trace,
        numeric,
    })
}
