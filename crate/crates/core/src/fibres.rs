//! Reducible fibres: validation against `F`, dual graphs, the Shioda rank
//! count and trivial-lattice certificates.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::ade::{self, AdeComponent};
use crate::error::{Error, Result};
use crate::fibration::FibrationModel;
use crate::lattice::{DivisorClass, SurfaceModel};
use crate::linalg;

/// Self-intersection and genus a component is claimed to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveLabel {
    pub self_int: i64,
    pub genus: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibreComponent {
    pub name: String,
    pub class: DivisorClass,
    pub mult: i64,
    pub label: Option<CurveLabel>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibreDecomposition {
    name: String,
    components: Vec<FibreComponent>,
}

impl FibreDecomposition {
    pub fn new(name: &str, components: Vec<FibreComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidFibre {
                fibre: name.to_string(),
                reason: "no components".into(),
            });
        }
        if let Some(c) = components.iter().find(|c| c.mult < 1) {
            return Err(Error::InvalidFibre {
                fibre: name.to_string(),
                reason: format!("{} has multiplicity {}", c.name, c.mult),
            });
        }
        Ok(FibreDecomposition {
            name: name.to_string(),
            components,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn components(&self) -> &[FibreComponent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `sum mult * class`.
    pub fn total(&self) -> Result<DivisorClass> {
        let mut acc = self.components[0].class.scale(0)?;
        for c in &self.components {
            acc = acc.add(&c.class.scale(c.mult)?)?;
        }
        Ok(acc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibreReport {
    pub name: String,
    pub components: usize,
    pub gram: Vec<Vec<i64>>,
}

fn fibre_err(dec: &FibreDecomposition, reason: String) -> Error {
    Error::InvalidFibre {
        fibre: dec.name.clone(),
        reason,
    }
}

/// Check that the decomposition sums to `F`, that distinct components meet
/// nonnegatively, that the stated labels hold, and that the component lattice
/// is negative semidefinite with `F` in its radical.
pub fn validate_fibre(fib: &FibrationModel, dec: &FibreDecomposition) -> Result<FibreReport> {
    let s = fib.surface();
    for c in &dec.components {
        s.owns(&c.class)?;
    }
    let residual = fib.fibre_class().sub(&dec.total()?)?;
    if !residual.is_zero() {
        return Err(Error::DecompositionSum {
            residual: residual.to_string(),
        });
    }
    let classes: Vec<DivisorClass> = dec.components.iter().map(|c| c.class.clone()).collect();
    let gram = s.gram_of(&classes)?;
    for (i, a) in dec.components.iter().enumerate() {
        for (j, b) in dec.components.iter().enumerate().skip(i + 1) {
            if gram[i][j] < 0 {
                return Err(fibre_err(
                    dec,
                    format!("{}.{} = {} is negative", a.name, b.name, gram[i][j]),
                ));
            }
        }
    }
    for (i, c) in dec.components.iter().enumerate() {
        let g = s.arithmetic_genus(&c.class)?;
        if let Some(label) = c.label {
            if gram[i][i] != label.self_int {
                return Err(fibre_err(
                    dec,
                    format!(
                        "{} has self-intersection {}, labelled {}",
                        c.name, gram[i][i], label.self_int
                    ),
                ));
            }
            if g != label.genus {
                return Err(fibre_err(
                    dec,
                    format!("{} has genus {g}, labelled {}", c.name, label.genus),
                ));
            }
        }
        let fc = s.intersect(fib.fibre_class(), &c.class)?;
        if fc != 0 {
            return Err(fibre_err(dec, format!("F.{} = {fc}, expected 0", c.name)));
        }
    }
    let neg: Vec<Vec<i64>> = gram
        .iter()
        .map(|r| r.iter().map(|x| -x).collect())
        .collect();
    if !linalg::is_positive_semidefinite(&neg) {
        return Err(fibre_err(
            dec,
            "component lattice is not negative semidefinite".into(),
        ));
    }
    Ok(FibreReport {
        name: dec.name.clone(),
        components: dec.components.len(),
        gram,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphNode {
    pub name: String,
    pub self_int: i64,
    pub genus: i64,
    pub mult: i64,
}

/// Intersection graph of the components of one fibre. Edges carry positive
/// intersection numbers and are stored with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<(usize, usize, i64)>,
}

impl DualGraph {
    pub fn weight(&self, i: usize, j: usize) -> i64 {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges
            .iter()
            .find(|e| e.0 == a && e.1 == b)
            .map_or(0, |e| e.2)
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.nodes.len()).collect();
        ade::components_of(&all, &self.edges).len() <= 1
    }

    /// Label every connected piece of the smooth rational (-2)-nodes.
    pub fn root_components(&self) -> Vec<AdeComponent> {
        let roots: Vec<usize> = (0..self.nodes.len())
            .filter(|&i| self.nodes[i].self_int == -2 && self.nodes[i].genus == 0)
            .collect();
        ade::classify_subgraph(&roots, &self.edges)
    }
}

pub fn dual_graph(fib: &FibrationModel, dec: &FibreDecomposition) -> Result<DualGraph> {
    let s = fib.surface();
    let classes: Vec<DivisorClass> = dec.components.iter().map(|c| c.class.clone()).collect();
    let gram = s.gram_of(&classes)?;
    let nodes = dec
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            Ok(GraphNode {
                name: c.name.clone(),
                self_int: gram[i][i],
                genus: s.arithmetic_genus(&c.class)?,
                mult: c.mult,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut edges = Vec::new();
    for (i, row) in gram.iter().enumerate() {
        for (j, &w) in row.iter().enumerate().skip(i + 1) {
            if w > 0 {
                edges.push((i, j, w));
            }
        }
    }
    Ok(DualGraph { nodes, edges })
}

/// ADE labels of the smooth rational (-2)-components of a fibre.
pub fn ade_classify(graph: &DualGraph) -> Vec<AdeComponent> {
    graph.root_components()
}

/// `rho - 2 - sum (count - 1)` over the reducible fibres.
pub fn shioda_rank(rho: i64, component_counts: &[i64]) -> Result<i64> {
    if rho < 2 {
        return Err(Error::InvalidArgument(format!(
            "Picard number {rho} is below 2"
        )));
    }
    if let Some(&c) = component_counts.iter().find(|&&c| c < 1) {
        return Err(Error::InvalidArgument(format!(
            "component count {c} is below 1"
        )));
    }
    let r = rho - 2 - component_counts.iter().map(|c| c - 1).sum::<i64>();
    if r < 0 {
        return Err(Error::InconsistentFibreData(r));
    }
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub rank: usize,
    pub block_ranks: Vec<usize>,
    pub det: BigInt,
    pub block_dets: Vec<BigInt>,
}

impl DecompositionReport {
    pub fn summary(&self) -> &'static str {
        "trivial Mordell–Weil certificate"
    }
}

/// Verify that the blocks are mutually orthogonal, that together they form a
/// Z-basis of the whole lattice, and that the first block is `{F, section}`.
pub fn orthogonal_decomposition_check(
    fib: &FibrationModel,
    blocks: &[Vec<(String, DivisorClass)>],
) -> Result<DecompositionReport> {
    let s = fib.surface();
    let first = blocks
        .first()
        .ok_or_else(|| Error::InvalidArgument("no blocks".into()))?;
    if first.len() != 2 || &first[0].1 != fib.fibre_class() {
        return Err(Error::InvalidArgument(
            "the first block must be (F, section)".into(),
        ));
    }
    let fs = s.intersect(fib.fibre_class(), &first[1].1)?;
    if fs != 1 {
        return Err(Error::InvalidArgument(format!(
            "{} meets F in {fs} points, not a section",
            first[1].0
        )));
    }
    for (bi, a) in blocks.iter().enumerate() {
        for b in &blocks[bi + 1..] {
            for (na, ca) in a {
                for (nb, cb) in b {
                    let v = s.intersect(ca, cb)?;
                    if v != 0 {
                        return Err(Error::CrossBlockPairing {
                            left: na.clone(),
                            right: nb.clone(),
                            value: v,
                        });
                    }
                }
            }
        }
    }
    let all: Vec<Vec<i64>> = blocks
        .iter()
        .flatten()
        .map(|(_, c)| {
            s.owns(c)?;
            Ok(c.coords().to_vec())
        })
        .collect::<Result<_>>()?;
    if all.len() != s.rank() {
        return Err(Error::NotABasis(format!(
            "{} classes for a lattice of rank {}",
            all.len(),
            s.rank()
        )));
    }
    let det = linalg::det(&all);
    if !det.abs().is_one() {
        return Err(Error::NotABasis(det.abs().to_string()));
    }
    let block_dets = blocks
        .iter()
        .map(|b| {
            let cls: Vec<DivisorClass> = b.iter().map(|(_, c)| c.clone()).collect();
            Ok(linalg::det(&s.gram_of(&cls)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DecompositionReport {
        rank: all.len(),
        block_ranks: blocks.iter().map(Vec::len).collect(),
        det,
        block_dets,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementLattice {
    pub basis: Vec<DivisorClass>,
    pub gram: Vec<Vec<i64>>,
    /// `|det gram|`; 1 for the empty lattice.
    pub discriminant: BigInt,
}

/// Orthogonal complement of the span of `sub`, as a saturated sublattice.
pub fn complement_lattice(model: &SurfaceModel, sub: &[DivisorClass]) -> Result<ComplementLattice> {
    for c in sub {
        model.owns(c)?;
    }
    let rows: Vec<Vec<i64>> = sub.iter().map(|c| c.coords().to_vec()).collect();
    if linalg::rank(&rows) != rows.len() {
        return Err(Error::DependentInput);
    }
    // row i of the constraint matrix is c_i^T * gram
    let constraints: Vec<Vec<i64>> = sub
        .iter()
        .map(|c| {
            (0..model.rank())
                .map(|s| model.intersect(c, &model.basis(s)?))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let kernel = linalg::integer_kernel(&constraints, model.rank())?;
    let basis = kernel
        .iter()
        .map(|v| model.class(v))
        .collect::<Result<Vec<_>>>()?;
    let gram = model.gram_of(&basis)?;
    let discriminant = linalg::det(&gram).abs();
    Ok(ComplementLattice {
        basis,
        gram,
        discriminant,
    })
}

/// Whether two independent families span the same sublattice: equal rank,
/// each inside the rational span of the other, and equal discriminant.
pub fn same_span(model: &SurfaceModel, a: &[DivisorClass], b: &[DivisorClass]) -> Result<bool> {
    let ra: Vec<Vec<i64>> = a.iter().map(|c| c.coords().to_vec()).collect();
    let rb: Vec<Vec<i64>> = b.iter().map(|c| c.coords().to_vec()).collect();
    let mut both = ra.clone();
    both.extend(rb.iter().cloned());
    let r = linalg::rank(&ra);
    if r != ra.len() || linalg::rank(&rb) != r || linalg::rank(&both) != r {
        return Ok(false);
    }
    let da = linalg::det(&model.gram_of(a)?).abs();
    let db = linalg::det(&model.gram_of(b)?).abs();
    Ok(da == db && da.sign() != num_bigint::Sign::NoSign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ade::AdeLabel;

    fn comp(name: &str, class: DivisorClass, mult: i64) -> FibreComponent {
        FibreComponent {
            name: name.into(),
            class,
            mult,
            label: None,
        }
    }

    // The pencil of lines through p1, with the member through p2 split as
    // (l - e1 - e2) + e2.
    fn conic_bundle() -> (FibrationModel, FibreDecomposition) {
        let m = SurfaceModel::plane(2);
        let f = m.plane_class(1, &[1]).unwrap();
        let fib = FibrationModel::new(m.clone(), f).unwrap();
        let dec = FibreDecomposition::new(
            "F0",
            vec![
                comp("A", m.plane_class(1, &[1, 1]).unwrap(), 1),
                comp("B", m.exceptional(2).unwrap(), 1),
            ],
        )
        .unwrap();
        (fib, dec)
    }

    #[test]
    fn validates_a_split_fibre() {
        let (fib, dec) = conic_bundle();
        let r = validate_fibre(&fib, &dec).unwrap();
        assert_eq!(r.gram, vec![vec![-1, 1], vec![1, -1]]);
        let g = dual_graph(&fib, &dec).unwrap();
        assert_eq!(g.edges, vec![(0, 1, 1)]);
        assert!(g.is_connected());
    }

    #[test]
    fn wrong_sum_reports_residual() {
        let (fib, dec) = conic_bundle();
        let mut comps = dec.components().to_vec();
        comps[1].mult = 2;
        let bad = FibreDecomposition::new("F0", comps).unwrap();
        let err = validate_fibre(&fib, &bad).unwrap_err();
        assert!(err
            .to_string()
            .starts_with("decomposition does not sum to F"));
        assert!(err.to_string().contains("e2"));
    }

    #[test]
    fn single_component_graph() {
        let (fib, _) = conic_bundle();
        let dec =
            FibreDecomposition::new("F", vec![comp("F", fib.fibre_class().clone(), 1)]).unwrap();
        let g = dual_graph(&fib, &dec).unwrap();
        assert_eq!(g.nodes.len(), 1);
        assert!(g.edges.is_empty());
    }

    #[test]
    fn shioda_rank_bookkeeping() {
        assert_eq!(shioda_rank(13, &[4, 9]).unwrap(), 0);
        assert_eq!(shioda_rank(11, &[4, 4, 4]).unwrap(), 0);
        assert_eq!(shioda_rank(10, &[]).unwrap(), 8);
        assert_eq!(
            shioda_rank(10, &[12]).unwrap_err(),
            Error::InconsistentFibreData(-3)
        );
    }

    #[test]
    fn complements_of_small_sublattices() {
        let m = SurfaceModel::plane(2);
        let c = complement_lattice(&m, &[m.basis(0).unwrap()]).unwrap();
        assert_eq!(c.gram, vec![vec![-1, 0], vec![0, -1]]);
        let all: Vec<DivisorClass> = (0..3).map(|s| m.basis(s).unwrap()).collect();
        let c = complement_lattice(&m, &all).unwrap();
        assert!(c.basis.is_empty());
        assert_eq!(c.discriminant, BigInt::one());
        let l = m.basis(0).unwrap();
        assert_eq!(
            complement_lattice(&m, &[l.clone(), l.scale(2).unwrap()]).unwrap_err(),
            Error::DependentInput
        );
    }

    #[test]
    fn root_labels_of_a_chain() {
        let nodes = (1..5)
            .map(|i| GraphNode {
                name: format!("t{i}"),
                self_int: -2,
                genus: 0,
                mult: 1,
            })
            .collect();
        let g = DualGraph {
            nodes,
            edges: vec![(0, 1, 1), (1, 2, 1), (2, 3, 1)],
        };
        let comps = ade_classify(&g);
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].label, AdeLabel::A(4));
    }
}
