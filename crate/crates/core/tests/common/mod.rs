//! Oracles and property checks shared by the integration targets. Each check
//! returns `Err(description)` on the first counterexample.

#![allow(dead_code)]

use genus2_pencils::ade::{classify_connected, AdeLabel};
use genus2_pencils::curves::{enum_classes, ClassQuery};
use genus2_pencils::lattice::{blow_down, blow_up, cremona};
use genus2_pencils::linalg;
use genus2_pencils::numeric::{a_ceiling, ksq_upper_bound, n_ceiling, search_general, NumericType};
use genus2_pencils::{Ambient, DivisorClass, SurfaceModel};
use num_bigint::BigInt;
use proptest::prelude::*;

pub type Check = Result<(), String>;

// ---------------------------------------------------------------------------
// numeric types by brute force

fn lists(len_max: usize, top: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    out.push(prefix.clone());
    if prefix.len() == len_max {
        return;
    }
    let hi = prefix.last().copied().unwrap_or(top);
    for m in 2..=hi {
        prefix.push(m);
        lists(len_max, top, prefix, out);
        prefix.pop();
    }
}

/// Every `(a, 2b̌, mults)` in a plain box, filtered by the defining
/// conditions only: genus `g`, `lo <= ksq <= hi`, `2 <= m_i <= (a+2)/2`,
/// `G^2 >= 0`, and `b̌` integral for even `a`.
///
/// The box is `a <= 2g + 6`, `N <= 4g + 4` and `2b̌ <= 3 hi`. The last bound
/// holds because `(m-1)^2 <= m(m-1) a/(a+2)` under the multiplicity
/// condition, which turns the two formulas for `2g` and `ksq` into
/// `ksq >= a(2b̌ + 2g - 2)/(a+2)`, and `(a+2)/a <= 3`.
pub fn brute_force_types(g: i64, lo: i64, hi: i64) -> Vec<NumericType> {
    let mut out = Vec::new();
    for a in 1..=a_ceiling(g) {
        let mut all = Vec::new();
        lists(n_ceiling(g), (a + 2) / 2, &mut Vec::new(), &mut all);
        for mults in all {
            let s1: i64 = mults.iter().map(|m| m * (m - 1)).sum();
            let s2: i64 = mults.iter().map(|m| (m - 1) * (m - 1)).sum();
            let s3: i64 = mults.iter().map(|m| m * m).sum();
            for tb in 0..=3 * hi {
                if a % 2 == 0 && tb % 2 != 0 {
                    continue;
                }
                let two_g = (a + 1) * (2 * a + 2 + tb) - s1;
                let ksq = a * (2 * a + tb) - s2;
                let g_sq = (a + 2) * (2 * a + 4 + tb) - s3;
                if two_g == 2 * g && (lo..=hi).contains(&ksq) && g_sq >= 0 {
                    out.push(NumericType::from_data(a, tb, mults.clone()).expect("valid datum"));
                }
            }
        }
    }
    out.sort();
    out
}

/// Both searches share the box `a <= a_ceiling`, `N <= n_ceiling`, so equality
/// checks the pruning inside that box. `ceiling_expected` pins whether the box
/// truncates the window: the genus-3 window up to ksq = 7 has types at
/// a = 12 = a_ceiling(3) and beyond, and the search must say so.
pub fn search_matches_brute_force(g: i64, lo: i64, hi: i64, ceiling_expected: bool) -> Check {
    let pruned = search_general(g, lo, hi).map_err(|e| e.to_string())?;
    if pruned.ceiling_hit != ceiling_expected {
        return Err(format!(
            "g = {g}, ksq in {lo}..={hi}: ceiling_hit = {}, expected {ceiling_expected}",
            pruned.ceiling_hit
        ));
    }
    let brute = brute_force_types(g, lo, hi);
    if pruned.types != brute {
        let show = |v: &[NumericType]| {
            v.iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        return Err(format!(
            "g = {g}: search gave [{}], brute force [{}]",
            show(&pruned.types),
            show(&brute)
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// classes by brute force

/// All integer vectors of length `len` with sum of squares `norm`.
pub fn norm_vectors(len: usize, norm: i64) -> Vec<Vec<i64>> {
    fn go(len: usize, left: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() == len {
            if left == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let mut c = 0;
        while c * c <= left {
            c += 1;
        }
        for x in -(c - 1)..c {
            prefix.push(x);
            go(len, left - x * x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if norm >= 0 {
        go(len, norm, &mut Vec::new(), &mut out);
    }
    out
}

/// Classes with `C^2`, `K.C` as in `q` and `0 <= C.H <= cap`, found by
/// running over the leading coordinates in a box and over every exceptional
/// part of the right norm.
pub fn brute_force_classes(model: &SurfaceModel, q: &ClassQuery) -> Vec<DivisorClass> {
    let amb = model.ambient();
    let n = amb.exceptional_count();
    let h = model.reference_class();
    let mut heads: Vec<Vec<i64>> = Vec::new();
    match amb {
        Ambient::Plane { .. } => heads.extend((0..=q.degree_cap).map(|d| vec![d])),
        Ambient::Hirzebruch { .. } => {
            for x in -12..=12 {
                for y in -12..=12 {
                    heads.push(vec![x, y]);
                }
            }
        }
    }
    let mut out = Vec::new();
    for head in heads {
        let mut coords = head.clone();
        coords.extend(std::iter::repeat(0).take(n));
        let hc = model.class(&coords).expect("rank matches");
        // e_i.H = 0, so the head alone fixes C.H
        if !(0..=q.degree_cap).contains(&model.intersect(&hc, &h).expect("small")) {
            continue;
        }
        let head_sq = model.self_intersection(&hc).expect("small");
        for tail in norm_vectors(n, head_sq - q.self_int) {
            let mut v = head.clone();
            v.extend(tail);
            let c = model.class(&v).expect("rank matches");
            let deg = model.intersect(&c, &h).expect("small");
            if c.is_zero()
                || !(0..=q.degree_cap).contains(&deg)
                || model.canonical_degree(&c).expect("small") != q.k_deg
                || model.self_intersection(&c).expect("small") != q.self_int
            {
                continue;
            }
            out.push(c);
        }
    }
    out.sort_by(|a, b| a.coords().cmp(b.coords()));
    out
}

pub fn enumeration_matches_brute_force(model: &SurfaceModel, q: &ClassQuery) -> Check {
    let fast = enum_classes(model, q).map_err(|e| e.to_string())?;
    let slow = brute_force_classes(model, q);
    if fast != slow {
        return Err(format!(
            "{} with {q:?}: enumeration found {}, brute force {}",
            model.ambient(),
            fast.len(),
            slow.len()
        ));
    }
    Ok(())
}

/// Every model of rank at most 9 and every standard query up to cap 3.
pub fn all_small_enumerations() -> Check {
    let mut models: Vec<SurfaceModel> = (0..=8).map(SurfaceModel::plane).collect();
    for d in 0..=2 {
        for n in 0..=7 {
            models.push(SurfaceModel::hirzebruch(d, n).expect("valid"));
        }
    }
    for m in &models {
        for cap in 1..=3 {
            for q in [
                ClassQuery::minus_one(cap),
                ClassQuery::minus_two(cap),
                ClassQuery::pencil(cap),
                ClassQuery::new(-1, 1, cap),
            ] {
                enumeration_matches_brute_force(m, &q.expect("cap >= 1"))?;
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// properties

pub fn ambient() -> impl Strategy<Value = Ambient> {
    prop_oneof![
        (0usize..=10).prop_map(|n| Ambient::Plane { n }),
        (0i64..=4, 0usize..=8).prop_map(|(d, n)| Ambient::Hirzebruch { d, n }),
    ]
}

/// A model with `count` random coordinate vectors on it.
pub fn model_with(count: usize) -> impl Strategy<Value = (Ambient, Vec<Vec<i64>>)> {
    ambient().prop_flat_map(move |amb| {
        (
            Just(amb),
            proptest::collection::vec(proptest::collection::vec(-20i64..=20, amb.rank()), count),
        )
    })
}

fn classes(amb: Ambient, raw: &[Vec<i64>]) -> (SurfaceModel, Vec<DivisorClass>) {
    let m = SurfaceModel::from_ambient(amb).expect("valid ambient");
    let cs = raw
        .iter()
        .map(|v| m.class(v).expect("rank matches"))
        .collect();
    (m, cs)
}

pub fn bilinear_symmetric(amb: Ambient, raw: &[Vec<i64>], k: i64) -> Check {
    let (m, cs) = classes(amb, raw);
    let (a, b, c) = (&cs[0], &cs[1], &cs[2]);
    let dot = |x: &DivisorClass, y: &DivisorClass| m.intersect(x, y).map_err(|e| e.to_string());
    if dot(a, b)? != dot(b, a)? {
        return Err(format!("asymmetric on {a} and {b}"));
    }
    let ab = a.add(b).map_err(|e| e.to_string())?;
    if dot(&ab, c)? != dot(a, c)? + dot(b, c)? {
        return Err(format!("not additive on {a}, {b}, {c}"));
    }
    let ka = a.scale(k).map_err(|e| e.to_string())?;
    if dot(&ka, c)? != k * dot(a, c)? {
        return Err(format!("not homogeneous at k = {k}"));
    }
    Ok(())
}

pub fn cremona_case() -> impl Strategy<Value = (usize, Vec<usize>, Vec<Vec<i64>>)> {
    (3usize..=10).prop_flat_map(|n| {
        (
            Just(n),
            proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), 3),
            proptest::collection::vec(proptest::collection::vec(-20i64..=20, n + 1), 2),
        )
    })
}

pub fn cremona_isometry(n: usize, idx: &[usize], raw: &[Vec<i64>]) -> Check {
    let (m, cs) = classes(Ambient::Plane { n }, raw);
    let (i, j, k) = (idx[0], idx[1], idx[2]);
    let mut all = cs.clone();
    all.push(m.canonical().clone());
    let img = cremona(&m, i, j, k, &all).map_err(|e| e.to_string())?;
    let dot = |x: &DivisorClass, y: &DivisorClass| m.intersect(x, y).expect("same model");
    if dot(&cs[0], &cs[1]) != dot(&img[0], &img[1]) || dot(&cs[0], &cs[0]) != dot(&img[0], &img[0])
    {
        return Err(format!("cremona at ({i},{j},{k}) changes the form"));
    }
    if &img[2] != m.canonical() {
        return Err(format!("cremona at ({i},{j},{k}) moves K"));
    }
    let back = cremona(&m, i, j, k, &img[..2]).map_err(|e| e.to_string())?;
    if back != cs {
        return Err(format!("cremona at ({i},{j},{k}) is not an involution"));
    }
    Ok(())
}

/// Pull back along a blow-up, check the form is preserved and the new
/// exceptional class is orthogonal, then push forward again.
pub fn blow_round_trip(amb: Ambient, raw: &[Vec<i64>]) -> Check {
    let (m, cs) = classes(amb, raw);
    let (up, lifted) = blow_up(&m, &cs).map_err(|e| e.to_string())?;
    let e = up
        .exceptional(amb.exceptional_count() + 1)
        .map_err(|e| e.to_string())?;
    for (x, lx) in cs.iter().zip(&lifted) {
        if up.intersect(lx, &e).map_err(|er| er.to_string())? != 0 {
            return Err(format!("pullback of {x} meets the new exceptional curve"));
        }
        for (y, ly) in cs.iter().zip(&lifted) {
            if m.intersect(x, y).unwrap() != up.intersect(lx, ly).unwrap() {
                return Err(format!("pullback changes {x}.{y}"));
            }
        }
    }
    let (down, pushed) = blow_down(&up, &e, &lifted).map_err(|er| er.to_string())?;
    if down.ambient() != amb || pushed != cs {
        return Err(format!(
            "blow-down after blow-up is not the identity on {amb}"
        ));
    }
    Ok(())
}

/// Every search output for genus `g` with a window reaching past `4g - 5`
/// stays at or below `4g - 5`, and each row recomputes to itself.
pub fn general_ksq_bound(g: i64) -> Check {
    let out = search_general(g, 1, 4 * g).map_err(|e| e.to_string())?;
    for t in &out.types {
        if t.ksq > ksq_upper_bound(g) {
            return Err(format!(
                "{t} has (K+F)^2 above 4g - 5 = {}",
                ksq_upper_bound(g)
            ));
        }
        let again = NumericType::from_data(t.a, t.twice_b_check, t.mults.clone())
            .map_err(|e| e.to_string())?;
        if &again != t || again.genus != g || again.noether_sum() != 4 * g + 4 {
            return Err(format!("{t} does not recompute"));
        }
    }
    Ok(())
}

/// Simply-laced test diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Path(usize),
    Cycle(usize),
    /// Three arms of the given lengths on one centre.
    Star(usize, usize, usize),
    /// Centre with four leaves.
    Cross,
    /// Path on `k - 3` nodes with two leaves at each end, `k + 1` nodes.
    Fork(usize),
}

impl Shape {
    pub fn edges(self) -> (usize, Vec<(usize, usize)>) {
        match self {
            Shape::Path(k) => (k, (1..k).map(|i| (i - 1, i)).collect()),
            Shape::Cycle(k) => (k, (0..k).map(|i| (i, (i + 1) % k)).collect()),
            Shape::Star(p, q, r) => {
                let mut edges = Vec::new();
                let mut next = 1;
                for arm in [p, q, r] {
                    let mut prev = 0;
                    for _ in 0..arm {
                        edges.push((prev, next));
                        prev = next;
                        next += 1;
                    }
                }
                (next, edges)
            }
            Shape::Cross => (5, (1..5).map(|i| (0, i)).collect()),
            Shape::Fork(k) => {
                let spine = k - 3;
                let mut edges: Vec<(usize, usize)> = (1..spine).map(|i| (i - 1, i)).collect();
                edges.extend([
                    (0, spine),
                    (0, spine + 1),
                    (spine - 1, spine + 2),
                    (spine - 1, spine + 3),
                ]);
                (k + 1, edges)
            }
        }
    }

    /// The label from the combinatorial definition of the diagrams.
    pub fn expected(self) -> AdeLabel {
        match self {
            Shape::Path(k) => AdeLabel::A(k),
            Shape::Cycle(k) => AdeLabel::AffineA(k - 1),
            Shape::Cross => AdeLabel::AffineD(4),
            Shape::Fork(k) => AdeLabel::AffineD(k),
            Shape::Star(p, q, r) => {
                let mut s = [p, q, r];
                s.sort_unstable();
                match s {
                    [1, 1, r] => AdeLabel::D(r + 3),
                    [1, 2, 2] => AdeLabel::E(6),
                    [1, 2, 3] => AdeLabel::E(7),
                    [1, 2, 4] => AdeLabel::E(8),
                    [2, 2, 2] => AdeLabel::AffineE(6),
                    [1, 3, 3] => AdeLabel::AffineE(7),
                    [1, 2, 5] => AdeLabel::AffineE(8),
                    _ => AdeLabel::Unclassified,
                }
            }
        }
    }
}

pub fn shape() -> impl Strategy<Value = Shape> {
    prop_oneof![
        (1usize..=12).prop_map(Shape::Path),
        (3usize..=12).prop_map(Shape::Cycle),
        (1usize..=6, 1usize..=6, 1usize..=6).prop_map(|(p, q, r)| Shape::Star(p, q, r)),
        Just(Shape::Cross),
        (5usize..=12).prop_map(Shape::Fork),
    ]
}

/// A shape with its nodes renamed by a random permutation.
pub fn relabelled_shape() -> impl Strategy<Value = (Shape, Vec<usize>)> {
    shape().prop_flat_map(|s| {
        let k = s.edges().0;
        (Just(s), Just((0..k).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// Determinant of the Cartan matrix `2I - adjacency` for each label:
/// `n + 1` for `A_n`, 4 for `D_n`, `9 - n` for `E_n`, 0 for affine diagrams.
fn cartan_det_for(label: AdeLabel) -> Option<i64> {
    match label {
        AdeLabel::A(n) => Some(n as i64 + 1),
        AdeLabel::D(_) => Some(4),
        AdeLabel::E(n) => Some(9 - n as i64),
        AdeLabel::AffineA(_) | AdeLabel::AffineD(_) | AdeLabel::AffineE(_) => Some(0),
        AdeLabel::Unclassified => None,
    }
}

pub fn ade_on_generated(s: Shape, perm: &[usize]) -> Check {
    let (k, edges) = s.edges();
    let relabelled: Vec<(usize, usize, i64)> =
        edges.iter().map(|&(a, b)| (perm[a], perm[b], 1)).collect();
    let got = classify_connected(k, &relabelled);
    if got != s.expected() {
        return Err(format!(
            "{s:?} relabelled by {perm:?}: got {got}, expected {}",
            s.expected()
        ));
    }
    let mut cartan = vec![vec![0i64; k]; k];
    for (i, row) in cartan.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b, _) in &relabelled {
        cartan[a][b] -= 1;
        cartan[b][a] -= 1;
    }
    let det = linalg::det(&cartan);
    match cartan_det_for(got) {
        Some(want) if det != BigInt::from(want) => {
            Err(format!("{s:?}: Cartan determinant {det}, {got} has {want}"))
        }
        None if det >= BigInt::from(0) => Err(format!(
            "{s:?}: unclassified tree with Cartan determinant {det} >= 0"
        )),
        _ => Ok(()),
    }
}
