//! Counting singularities of the branch curve of the relative canonical
//! double cover of the quadric.
//!
//! Only counts of each singularity type enter; `counts_x[k-1]` is the number
//! of singularities of type `X_k`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BranchNumerics {
    pub i: Vec<i64>,
    pub ii: Vec<i64>,
    pub iii: Vec<i64>,
    pub iv: Vec<i64>,
    pub v: i64,
    pub epsilon: i64,
}

impl BranchNumerics {
    fn all_counts(&self) -> impl Iterator<Item = i64> + '_ {
        self.i
            .iter()
            .chain(&self.ii)
            .chain(&self.iii)
            .chain(&self.iv)
            .copied()
            .chain(std::iter::once(self.v))
    }

    /// `Σ_k (n(I_k) + n(III_k)) + n(V)`.
    pub fn epsilon_from_counts(&self) -> i64 {
        self.i.iter().sum::<i64>() + self.iii.iter().sum::<i64>() + self.v
    }

    /// `Σ_k (2k-1)(n(I_k) + n(III_k)) + 2k(n(II_k) + n(IV_k)) + n(V)`.
    pub fn ksq_from_counts(&self) -> i64 {
        let weighted = |v: &[i64], w: &dyn Fn(i64) -> i64| -> i64 {
            v.iter()
                .enumerate()
                .map(|(idx, &n)| w(idx as i64 + 1) * n)
                .sum()
        };
        let odd = |k: i64| 2 * k - 1;
        let even = |k: i64| 2 * k;
        weighted(&self.i, &odd)
            + weighted(&self.iii, &odd)
            + weighted(&self.ii, &even)
            + weighted(&self.iv, &even)
            + self.v
    }

    /// Human-readable list of the nonzero counts, e.g. `II_1, V^2`.
    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        for (name, v) in [
            ("I", &self.i),
            ("II", &self.ii),
            ("III", &self.iii),
            ("IV", &self.iv),
        ] {
            for (idx, &n) in v.iter().enumerate() {
                push_count(&mut parts, &format!("{name}_{}", idx + 1), n);
            }
        }
        push_count(&mut parts, "V", self.v);
        if parts.is_empty() {
            "none".into()
        } else {
            parts.join(", ")
        }
    }
}

fn push_count(parts: &mut Vec<String>, name: &str, n: i64) {
    match n {
        0 => {}
        1 => parts.push(name.to_string()),
        _ => parts.push(format!("{name}^{n}")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchVerdict {
    pub epsilon_matches: bool,
    pub ksq_from_counts: i64,
    pub ksq_matches: bool,
}

impl BranchVerdict {
    pub fn consistent(&self) -> bool {
        self.epsilon_matches && self.ksq_matches
    }
}

pub fn branch_consistency(bn: &BranchNumerics, ksq: i64) -> Result<BranchVerdict> {
    if bn.all_counts().any(|n| n < 0) {
        return Err(Error::InvalidArgument("negative singularity count".into()));
    }
    let from_counts = bn.ksq_from_counts();
    Ok(BranchVerdict {
        epsilon_matches: bn.epsilon == bn.epsilon_from_counts(),
        ksq_from_counts: from_counts,
        ksq_matches: from_counts == ksq,
    })
}

/// Coefficient of `Γ` in the branch class `6Δ0 + (ε + ksq + 2)Γ`.
pub fn branch_class_fibre_degree(epsilon: i64, ksq: i64) -> i64 {
    epsilon + ksq + 2
}

/// Every count vector whose weighted sum is `ksq`, with `ε` filled in.
/// The search is finite because each singularity contributes at least 1.
pub fn enumerate_branch_numerics(ksq: i64) -> Result<Vec<BranchNumerics>> {
    if !(0..=12).contains(&ksq) {
        return Err(Error::InvalidArgument(format!(
            "ksq = {ksq} outside the enumerable range 0..=12"
        )));
    }
    // slots: (family, k, weight); family 0..3 are I..IV, 4 is V
    let mut slots = Vec::new();
    for k in 1..=ksq {
        for fam in 0..4 {
            let w = if fam % 2 == 0 { 2 * k - 1 } else { 2 * k };
            if w <= ksq {
                slots.push((fam, k as usize, w));
            }
        }
    }
    slots.push((4, 0, 1));
    let mut counts = vec![0i64; slots.len()];
    let mut out = Vec::new();
    fill(&slots, 0, ksq, &mut counts, &mut out);
    Ok(out)
}

fn fill(
    slots: &[(usize, usize, i64)],
    at: usize,
    left: i64,
    counts: &mut Vec<i64>,
    out: &mut Vec<BranchNumerics>,
) {
    if at == slots.len() {
        if left == 0 {
            out.push(assemble(slots, counts));
        }
        return;
    }
    let w = slots[at].2;
    for n in 0..=left / w {
        counts[at] = n;
        fill(slots, at + 1, left - n * w, counts, out);
    }
    counts[at] = 0;
}

fn assemble(slots: &[(usize, usize, i64)], counts: &[i64]) -> BranchNumerics {
    let mut bn = BranchNumerics::default();
    for (&(fam, k, _), &n) in slots.iter().zip(counts) {
        let target = match fam {
            0 => &mut bn.i,
            1 => &mut bn.ii,
            2 => &mut bn.iii,
            3 => &mut bn.iv,
            _ => {
                bn.v = n;
                continue;
            }
        };
        if target.len() < k {
            target.resize(k, 0);
        }
        target[k - 1] = n;
    }
    for v in [&mut bn.i, &mut bn.ii, &mut bn.iii, &mut bn.iv] {
        while v.last() == Some(&0) {
            v.pop();
        }
    }
    bn.epsilon = bn.epsilon_from_counts();
    bn
}
