//! Canonical dumps of derived expressions, one file per tag.

use std::fs;
use std::path::Path;

use crate::atom::Flow;
use crate::charges::{charge_density, conservation_check, Charge};
use crate::defects::{defect_expansion, defect_term};
use crate::expr::Expr;

use super::checks::t5_coefficients;
use super::{CheckError, Context, Result};

const EXT: &str = "expr";

/// Derived expressions keyed by a descriptive tag, sorted by tag.
pub fn golden_entries(ctx: &Context) -> std::result::Result<Vec<(String, Expr)>, CheckError> {
    let mut out = Vec::new();
    for f in [Flow::T1, Flow::T3, Flow::T5] {
        let bt = ctx.bt(f)?;
        let rules = if f == Flow::T1 { &bt.spatial } else { &bt.temporal };
        for (a, e) in rules.rules() {
            out.push((format!("backlund-{f}-{a}"), e.clone()));
        }
    }
    let (cs, gs) = t5_coefficients(ctx.bt(Flow::T5)?);
    out.extend(cs.into_iter().map(|(k, c)| (format!("backlund-t5-c{k:02}"), c)));
    out.extend(gs.into_iter().map(|(k, g)| (format!("backlund-t5-g{k:02}"), g)));
    for c in [Charge::Momentum, Charge::Energy] {
        let d = charge_density(c)?;
        for f in [Flow::T3, Flow::T5] {
            out.push((format!("charges-flux-{c}-{f}"), conservation_check(&d, f)?));
        }
        out.push((format!("charges-density-{c}"), d.density));
        out.push((format!("defects-term-{c}"), defect_term(c, &ctx.bt(Flow::T1)?.spatial)?));
    }
    for set in [1u8, 2] {
        let g = defect_expansion(set, 3)?;
        for (k, e) in g.coeffs.iter().enumerate() {
            out.push((format!("defects-set{set}-order{}", k + 1), e.clone()));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// One `<tag>.expr` file per entry.
pub fn write_golden(dir: &Path, entries: &[(String, Expr)]) -> Result<()> {
    fs::create_dir_all(dir)?;
    for (tag, e) in entries {
        fs::write(dir.join(format!("{tag}.{EXT}")), format!("{e}\n"))?;
    }
    Ok(())
}

/// Tags and contents of every dump in `dir`, sorted by tag.
pub fn read_golden(dir: &Path) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.extension().and_then(|e| e.to_str()) != Some(EXT) {
            continue;
        }
        let tag = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        out.push((tag, fs::read_to_string(&path)?.trim_end().to_string()));
    }
    out.sort();
    Ok(out)
}
