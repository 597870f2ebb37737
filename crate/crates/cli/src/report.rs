use std::fmt::Write;

use genus2_pencils::catalog::{self, Tag, VerifyReport};
use genus2_pencils::minimal::{run_pipeline, PlaneModel};
use genus2_pencils::numeric::{apply_exclusion, search_general};
use genus2_pencils::Result;

/// F's class, its plane model, `ρ`, `(K+F)^2` and the numeric type reached
/// by the reduction pipeline. Simple base points (multiplicity 1) are not
/// singularities and are left out of the multiset.
pub fn canonical(tag: Tag) -> Result<String> {
    let entry = catalog::get(tag)?;
    let fib = &entry.fibration;
    let f = fib.fibre_class();
    let mut mults: Vec<i64> = f.coords()[1..]
        .iter()
        .map(|c| -c)
        .filter(|&m| m >= 2)
        .collect();
    mults.sort_unstable_by(|a, b| b.cmp(a));
    let plane = PlaneModel {
        degree: f.coords()[0],
        mults,
    };
    let outcome = run_pipeline(fib, &entry.effective_minus_ones)?;
    let numeric = outcome
        .numeric
        .map_or_else(|| "special".to_string(), |t| t.to_string());
    let mut out = String::new();
    writeln!(out, "{tag}: F = {f}").unwrap();
    writeln!(
        out,
        "{plane}, ρ={}, (K+F)²={}",
        fib.rho(),
        fib.selfint_k_plus_f()?
    )
    .unwrap();
    writeln!(out, "numeric type {numeric}").unwrap();
    Ok(out)
}

pub fn verify_summary(r: &VerifyReport) -> String {
    let rank = r
        .mordell_weil_rank
        .map_or_else(|| "not computed".to_string(), |k| format!("rank {k}"));
    format!(
        "{}: pass, {} checks, Mordell-Weil {rank}\n",
        r.tag,
        r.checks.len()
    )
}

/// One `key value` line per fact, stable across runs.
pub fn verify_report(r: &VerifyReport) -> String {
    let mut out = String::new();
    writeln!(out, "tag {}", r.tag).unwrap();
    writeln!(out, "status pass").unwrap();
    writeln!(out, "ksq {}", r.ksq).unwrap();
    writeln!(out, "rho {}", r.rho).unwrap();
    for f in &r.fibres {
        write!(out, "fibre {} components {}", f.name, f.components).unwrap();
        if !f.root_diagrams.is_empty() {
            write!(out, " roots {}", f.root_diagrams.join(",")).unwrap();
        }
        if !f.elliptic.is_empty() {
            write!(out, " elliptic {}", f.elliptic.join(",")).unwrap();
        }
        writeln!(out).unwrap();
    }
    if let Some(k) = r.mordell_weil_rank {
        writeln!(out, "mordell-weil rank {k}").unwrap();
    }
    if let Some(d) = &r.decomposition {
        let ranks: Vec<String> = d.block_ranks.iter().map(|k| k.to_string()).collect();
        writeln!(
            out,
            "blocks {} ranks {} det {}",
            d.block_ranks.len(),
            ranks.join(" "),
            d.det
        )
        .unwrap();
    }
    if let Some(s) = &r.section {
        match (s.exists, s.witnesses.first()) {
            (true, Some(w)) => writeln!(out, "minus-one section {w}").unwrap(),
            _ => {
                write!(out, "minus-one section none").unwrap();
                if let Some(c) = &s.certificate {
                    write!(
                        out,
                        " (F = pencil - {}K, {} classes checked)",
                        c.shift, c.checked
                    )
                    .unwrap();
                }
                writeln!(out).unwrap();
            }
        }
    }
    writeln!(out, "sharp {}", r.sharp).unwrap();
    writeln!(out, "numeric {}", r.numeric).unwrap();
    writeln!(out, "checks {}", r.checks.join("; ")).unwrap();
    out
}

pub fn search_table(g: i64, lo: i64, hi: i64, exclusion: bool) -> Result<String> {
    let mut out = String::new();
    writeln!(out, "# g = {g}, (K+F)^2 in [{lo}, {hi}]").unwrap();
    if lo > hi {
        writeln!(out, "0 types").unwrap();
        return Ok(out);
    }
    let search = search_general(g, lo, hi)?;
    let (rows, dropped, cert) = if exclusion {
        let t = apply_exclusion(search.types);
        (t.kept, t.dropped, Some(t.certificate))
    } else {
        (search.types, Vec::new(), None)
    };
    for t in &rows {
        writeln!(out, "{t}").unwrap();
    }
    writeln!(out, "{} types", rows.len()).unwrap();
    if let Some(c) = cert {
        for t in &dropped {
            writeln!(
                out,
                "dropped {t}: {} rational curves checked, -K degree at least {}, never {}",
                c.cases.len(),
                c.minimum,
                c.required
            )
            .unwrap();
        }
    }
    if search.ceiling_hit {
        writeln!(
            out,
            "note: rows reach the a or N search ceiling; types beyond it are not listed"
        )
        .unwrap();
    }
    Ok(out)
}
