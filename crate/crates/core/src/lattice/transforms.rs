//! Basis changes between models: blow-ups, contractions, quadratic
//! transformations, elementary transformations and the plane/`Σ1` switch.
//!
//! Every move here is an integral isometry between the source and target
//! lattices that sends the canonical class to the canonical class, so a class
//! keeps its self-intersection, canonical degree and genus under any sequence
//! of moves.

use super::{Ambient, DivisorClass, SurfaceModel};
use crate::error::{Error, Result};

/// Contraction searches give up after this many basis changes.
const MAX_MOVES: usize = 256;

/// A single integral change of basis.
///
/// Point indices are 1-based exceptional indices of the source ambient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisMove {
    /// Quadratic transformation of the plane based at three points.
    Cremona { i: usize, j: usize, k: usize },
    /// Elementary transformation of `Σ_d` centred at the blown-up point `point`.
    Elementary {
        point: usize,
        on_minimal_section: bool,
    },
    /// Exchange `Δ0` and `Γ` on `Σ0`.
    SwapRuling,
    /// Read `P² blown up at p1, ...` as `Σ1` blown up at the remaining points.
    PlaneToHirzebruch,
    /// Contract the minimal section of `Σ1` to a point of the plane.
    HirzebruchToPlane,
}

impl BasisMove {
    pub fn target(self, source: Ambient) -> Result<Ambient> {
        match (self, source) {
            (BasisMove::Cremona { i, j, k }, Ambient::Plane { .. }) => {
                check_triple(source, i, j, k)?;
                Ok(source)
            }
            (
                BasisMove::Elementary {
                    point,
                    on_minimal_section,
                },
                Ambient::Hirzebruch { d, n },
            ) => {
                source.exceptional_slot(point)?;
                if on_minimal_section {
                    Ok(Ambient::Hirzebruch { d: d + 1, n })
                } else if d == 0 {
                    Err(Error::RulingChoiceRequired)
                } else {
                    Ok(Ambient::Hirzebruch { d: d - 1, n })
                }
            }
            (BasisMove::SwapRuling, Ambient::Hirzebruch { d: 0, n }) => {
                Ok(Ambient::Hirzebruch { d: 0, n })
            }
            (BasisMove::SwapRuling, Ambient::Hirzebruch { d, .. }) => Err(Error::WrongAmbient(
                format!("the ruling can only be swapped on Σ0, not Σ{d}"),
            )),
            (BasisMove::PlaneToHirzebruch, Ambient::Plane { n }) if n >= 1 => {
                Ok(Ambient::Hirzebruch { d: 1, n: n - 1 })
            }
            (BasisMove::HirzebruchToPlane, Ambient::Hirzebruch { d: 1, n }) => {
                Ok(Ambient::Plane { n: n + 1 })
            }
            (BasisMove::HirzebruchToPlane, Ambient::Hirzebruch { d, .. }) => {
                Err(Error::NotPlaneAdjacent(d))
            }
            (mv, amb) => Err(Error::WrongAmbient(format!(
                "{mv:?} does not apply to {amb}"
            ))),
        }
    }

    /// Coordinates of `coords` (a class on `source`) in the target basis.
    fn map(self, source: Ambient, coords: &[i64]) -> Result<Vec<i64>> {
        let ov = || Error::Overflow("basis change");
        let mut out = coords.to_vec();
        match self {
            BasisMove::Cremona { i, j, k } => {
                // reflection in l - ei - ej - ek
                let s = [i, j, k]
                    .iter()
                    .try_fold(coords[0], |acc, &p| acc.checked_add(coords[p]))
                    .ok_or_else(ov)?;
                out[0] = coords[0].checked_add(s).ok_or_else(ov)?;
                for p in [i, j, k] {
                    out[p] = coords[p].checked_sub(s).ok_or_else(ov)?;
                }
            }
            BasisMove::Elementary {
                point,
                on_minimal_section,
            } => {
                let slot = source.exceptional_slot(point)?;
                let (x, y, c) = (coords[0], coords[1], coords[slot]);
                let shift = if on_minimal_section {
                    x.checked_add(c)
                } else {
                    Some(c)
                };
                out[1] = shift.and_then(|t| y.checked_add(t)).ok_or_else(ov)?;
                out[slot] = x.checked_add(c).and_then(i64::checked_neg).ok_or_else(ov)?;
            }
            BasisMove::SwapRuling => out.swap(0, 1),
            BasisMove::PlaneToHirzebruch => {
                out[0] = coords[0].checked_add(coords[1]).ok_or_else(ov)?;
                out[1] = coords[0];
            }
            BasisMove::HirzebruchToPlane => {
                out[0] = coords[1];
                out[1] = coords[0].checked_sub(coords[1]).ok_or_else(ov)?;
            }
        }
        Ok(out)
    }

    /// Apply the move to a model and a list of classes on it.
    pub fn apply(
        self,
        model: &SurfaceModel,
        classes: &[DivisorClass],
    ) -> Result<(SurfaceModel, Vec<DivisorClass>)> {
        let target = SurfaceModel::from_ambient(self.target(model.ambient())?)?;
        let mapped = classes
            .iter()
            .map(|c| {
                model.owns(c)?;
                target.class(&self.map(model.ambient(), c.coords())?)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((target, mapped))
    }
}

fn check_triple(amb: Ambient, i: usize, j: usize, k: usize) -> Result<()> {
    for p in [i, j, k] {
        amb.exceptional_slot(p)?;
    }
    if i == j || i == k {
        return Err(Error::RepeatedIndex(i));
    }
    if j == k {
        return Err(Error::RepeatedIndex(j));
    }
    Ok(())
}

/// Quadratic transformation at `e_i, e_j, e_k` applied to a single class.
pub fn cremona_class(c: &DivisorClass, i: usize, j: usize, k: usize) -> Result<DivisorClass> {
    let model = SurfaceModel::from_ambient(c.owner())?;
    let (_, mut out) = BasisMove::Cremona { i, j, k }.apply(&model, std::slice::from_ref(c))?;
    Ok(out.remove(0))
}

/// Quadratic transformation at `e_i, e_j, e_k` applied to a list of classes.
pub fn cremona(
    model: &SurfaceModel,
    i: usize,
    j: usize,
    k: usize,
    classes: &[DivisorClass],
) -> Result<Vec<DivisorClass>> {
    Ok(BasisMove::Cremona { i, j, k }.apply(model, classes)?.1)
}

pub fn swap_ruling(
    model: &SurfaceModel,
    classes: &[DivisorClass],
) -> Result<(SurfaceModel, Vec<DivisorClass>)> {
    BasisMove::SwapRuling.apply(model, classes)
}

pub fn plane_to_hirzebruch(
    model: &SurfaceModel,
    classes: &[DivisorClass],
) -> Result<(SurfaceModel, Vec<DivisorClass>)> {
    BasisMove::PlaneToHirzebruch.apply(model, classes)
}

pub fn hirzebruch_to_plane(
    model: &SurfaceModel,
    classes: &[DivisorClass],
) -> Result<(SurfaceModel, Vec<DivisorClass>)> {
    BasisMove::HirzebruchToPlane.apply(model, classes)
}

/// Elementary transformation of a blown-up `Σ_d` centred at `e_point`.
pub fn elementary_transform_model(
    model: &SurfaceModel,
    point: usize,
    on_minimal_section: bool,
    classes: &[DivisorClass],
) -> Result<(SurfaceModel, Vec<DivisorClass>)> {
    BasisMove::Elementary {
        point,
        on_minimal_section,
    }
    .apply(model, classes)
}

/// Result of an elementary transformation on `aΔ0 + bΓ` data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElementaryOutcome {
    pub d: i64,
    pub a: i64,
    pub b: i64,
    /// Multiplicity of the transformed curve at the new centre.
    pub new_mult: i64,
}

/// Elementary transformation of a curve `aΔ0 + bΓ` on `Σ_d` at a point of
/// multiplicity `mult`.
///
/// Centred off `Δ0` it lands on `Σ_{d-1}` with class `aΔ0 + (b - mult)Γ`;
/// centred on `Δ0` it lands on `Σ_{d+1}` with class `aΔ0 + (b + a - mult)Γ`.
/// Either way the new centre has multiplicity `a - mult`, and the two
/// directions undo each other.
pub fn elementary_transform(
    d: i64,
    cls: (i64, i64),
    mult: i64,
    on_minimal_section: bool,
) -> Result<ElementaryOutcome> {
    let (a, b) = cls;
    if d < 0 {
        return Err(Error::InvalidTransform(format!("negative degree d = {d}")));
    }
    if mult < 0 || mult > a {
        return Err(Error::InvalidTransform(format!(
            "multiplicity {mult} outside 0..={a}"
        )));
    }
    if !on_minimal_section && d == 0 {
        return Err(Error::RulingChoiceRequired);
    }
    let ov = || Error::Overflow("elementary transformation");
    let (d2, b2) = if on_minimal_section {
        (d + 1, b.checked_add(a - mult).ok_or_else(ov)?)
    } else {
        (d - 1, b.checked_sub(mult).ok_or_else(ov)?)
    };
    Ok(ElementaryOutcome {
        d: d2,
        a,
        b: b2,
        new_mult: a - mult,
    })
}

/// Pull classes back along the blow-up of one more point (appended as `e_{n+1}`).
pub fn blow_up(
    model: &SurfaceModel,
    classes: &[DivisorClass],
) -> Result<(SurfaceModel, Vec<DivisorClass>)> {
    let amb = model.ambient();
    let target =
        SurfaceModel::from_ambient(amb.with_exceptional_count(amb.exceptional_count() + 1))?;
    let lifted = classes
        .iter()
        .map(|c| {
            model.owns(c)?;
            let mut v = c.coords().to_vec();
            v.push(0);
            target.class(&v)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((target, lifted))
}

fn basis_exceptional(amb: Ambient, coords: &[i64]) -> Option<usize> {
    let head = amb.head();
    let mut hit = None;
    for (slot, &c) in coords.iter().enumerate() {
        match c {
            0 => {}
            1 if slot >= head && hit.is_none() => hit = Some(slot + 1 - head),
            _ => return None,
        }
    }
    hit
}

/// Find basis changes carrying the (-1)-class `e` to an exceptional basis
/// vector `e_j`. Returns the moves and `j`.
///
/// On a plane the class is lowered in degree by quadratic transformations at
/// its three largest multiplicities. On `Σ_d` it is first brought to `Σ1` by
/// elementary transformations at `e1` and then read on the plane.
pub fn contracting_moves(
    model: &SurfaceModel,
    e: &DivisorClass,
) -> Result<(Vec<BasisMove>, usize)> {
    if !model.is_minus_one_class(e)? {
        return Err(Error::NotContractible(format!(
            "{e} has self-intersection {} and canonical degree {}",
            model.self_intersection(e)?,
            model.canonical_degree(e)?
        )));
    }
    let mut moves = Vec::new();
    let mut amb = model.ambient();
    let mut cur = e.coords().to_vec();
    loop {
        if let Some(j) = basis_exceptional(amb, &cur) {
            return Ok((moves, j));
        }
        if moves.len() >= MAX_MOVES {
            return Err(Error::NotContractible(format!(
                "{e}: no basis change found within {MAX_MOVES} moves"
            )));
        }
        let mv =
            next_move(amb, &cur).map_err(|why| Error::NotContractible(format!("{e}: {why}")))?;
        cur = mv.map(amb, &cur)?;
        amb = mv.target(amb)?;
        moves.push(mv);
    }
}

fn next_move(amb: Ambient, cur: &[i64]) -> std::result::Result<BasisMove, String> {
    match amb {
        Ambient::Plane { n } => {
            let delta = cur[0];
            if delta <= 0 {
                return Err(format!(
                    "plane degree {delta} with no exceptional basis match"
                ));
            }
            if n >= 3 {
                let mut idx: Vec<usize> = (1..=n).collect();
                // largest multiplicity first, lowest index on ties
                idx.sort_by_key(|&p| (cur[p], p));
                let (i, j, k) = (idx[0], idx[1], idx[2]);
                let top = -(cur[i] + cur[j] + cur[k]);
                if top <= delta {
                    return Err(format!(
                        "three largest multiplicities sum to {top}, not above the degree {delta}"
                    ));
                }
                let mut t = [i, j, k];
                t.sort_unstable();
                Ok(BasisMove::Cremona {
                    i: t[0],
                    j: t[1],
                    k: t[2],
                })
            } else if n == 2 {
                Ok(BasisMove::PlaneToHirzebruch)
            } else {
                Err(format!(
                    "no (-1)-class of degree {delta} on a plane blown up at {n} point(s)"
                ))
            }
        }
        Ambient::Hirzebruch { d, n } => {
            if n == 0 {
                return Err(format!("Σ{d} carries no exceptional basis vector"));
            }
            // Γ - e_j becomes e_j after one transformation at e_j
            let head_is_fibre = cur[0] == 0 && cur[1] == 1;
            let tail: Vec<(usize, i64)> = cur[2..]
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(s, &c)| (s + 1, c))
                .collect();
            if head_is_fibre && tail.len() == 1 && tail[0].1 == -1 {
                return Ok(BasisMove::Elementary {
                    point: tail[0].0,
                    on_minimal_section: d == 0,
                });
            }
            match d {
                1 => Ok(BasisMove::HirzebruchToPlane),
                0 => Ok(BasisMove::Elementary {
                    point: 1,
                    on_minimal_section: true,
                }),
                _ => Ok(BasisMove::Elementary {
                    point: 1,
                    on_minimal_section: false,
                }),
            }
        }
    }
}

/// Contract the (-1)-class `e` and push `classes` forward.
///
/// When `e` is not a basis vector the model is first changed by an integral
/// isometry (see [`contracting_moves`]); the returned model and classes are in
/// the transformed basis with the coordinate of `e` removed.
pub fn blow_down(
    model: &SurfaceModel,
    e: &DivisorClass,
    classes: &[DivisorClass],
) -> Result<(SurfaceModel, Vec<DivisorClass>)> {
    model.owns(e)?;
    let (moves, j) = contracting_moves(model, e)?;
    let mut cur_model = model.clone();
    let mut cur = classes.to_vec();
    for mv in moves {
        let (m, c) = mv.apply(&cur_model, &cur)?;
        cur_model = m;
        cur = c;
    }
    let amb = cur_model.ambient();
    let slot = amb.exceptional_slot(j)?;
    let target =
        SurfaceModel::from_ambient(amb.with_exceptional_count(amb.exceptional_count() - 1))?;
    let pushed = cur
        .iter()
        .map(|c| {
            let mut v = c.coords().to_vec();
            v.remove(slot);
            target.class(&v)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((target, pushed))
}
