//! Plain-text model files: one conical-manifold model per file, in a small
//! key-value format that round-trips every f64 exactly.
//!
//! ```text
//! # anything after a leading '#' is a comment
//! n = 3
//! K = 1.25
//! spindle_length = 3.141592653589793   # optional: computable spindle
//! outer_bc = natural                   # optional: natural | dirichlet
//!
//! [cap]
//! rho = 1.5707963267948966
//! ell = 1
//! section = sphere 1.2                 # κ derived as 1/R²
//!
//! [cap]
//! rho = 1.5707963267948966
//! ell = 1
//! section = mu 0 1.3888888888888888 4.166666666666666
//! kappa = 0.6944444444444444           # required for tabulated sections
//! volume_finite = true                 # optional, defaults to true
//! ```
//!
//! `section = table PATH` loads eigenvalues from a two-column text file
//! (index, μ) resolved relative to the model file; serialization always
//! emits the self-contained inline `mu …` form. Top-level keys must precede
//! the first `[cap]`. Unknown or duplicate keys are errors. When
//! `spindle_length` is present the computable realization uses cap 0's
//! curvature and section.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::models::{Computable, ConeCap, ConicalManifoldModel, CrossSection, SectionSpectrum};
use crate::radial::BoundaryCondition;

fn parse_f64(value: &str, key: &str, line: usize) -> Result<f64> {
    value.parse::<f64>().map_err(|_| {
        Error::Model(format!("line {line}: value for `{key}` is not a number: `{value}`"))
    })
}

fn parse_bool(value: &str, key: &str, line: usize) -> Result<bool> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(Error::Model(format!(
            "line {line}: value for `{key}` must be true or false, got `{value}`"
        ))),
    }
}

#[derive(Default)]
struct CapDraft {
    header_line: usize,
    rho: Option<(f64, usize)>,
    ell: Option<(f64, usize)>,
    section: Option<(String, usize)>,
    kappa: Option<(f64, usize)>,
    volume_finite: Option<(bool, usize)>,
}

/// Parse a two-column (index, μ) eigenvalue table.
pub fn parse_mu_table(text: &str) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(idx), Some(mu), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Model(format!(
                "table line {}: expected `index value`, got `{line}`",
                i + 1
            )));
        };
        let idx: usize = idx.parse().map_err(|_| {
            Error::Model(format!("table line {}: bad index `{idx}`", i + 1))
        })?;
        if idx != values.len() {
            return Err(Error::Model(format!(
                "table line {}: index {idx} out of order (expected {})",
                i + 1,
                values.len()
            )));
        }
        values.push(parse_f64(mu, "μ", i + 1)?);
    }
    Ok(values)
}

fn resolve_section(
    draft: &CapDraft,
    n: u32,
    base: Option<&Path>,
) -> Result<CrossSection> {
    let (raw, line) = draft
        .section
        .as_ref()
        .ok_or_else(|| {
            Error::Model(format!(
                "cap starting at line {}: missing `section`",
                draft.header_line
            ))
        })?;
    let mut parts = raw.split_whitespace();
    let kind = parts.next().unwrap_or("");
    let volume_finite = draft.volume_finite.map_or(true, |(v, _)| v);
    match kind {
        "sphere" => {
            let (Some(radius), None) = (parts.next(), parts.next()) else {
                return Err(Error::Model(format!(
                    "line {line}: `section = sphere R` takes exactly one radius"
                )));
            };
            if let Some((_, kl)) = draft.kappa {
                return Err(Error::Model(format!(
                    "line {kl}: `kappa` is redundant for sphere sections (derived as 1/R²)"
                )));
            }
            let radius = parse_f64(radius, "section radius", *line)?;
            Ok(CrossSection {
                dim: n - 1,
                kappa: 1.0 / (radius * radius),
                spectrum: SectionSpectrum::Sphere { radius },
                volume_finite,
            })
        }
        "mu" | "table" => {
            let values = if kind == "mu" {
                parts
                    .map(|v| parse_f64(v, "section μ", *line))
                    .collect::<Result<Vec<f64>>>()?
            } else {
                let (Some(rel), None) = (parts.next(), parts.next()) else {
                    return Err(Error::Model(format!(
                        "line {line}: `section = table PATH` takes exactly one path"
                    )));
                };
                let path = match base {
                    Some(dir) => dir.join(rel),
                    None => PathBuf::from(rel),
                };
                let text = fs::read_to_string(&path).map_err(|source| Error::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                parse_mu_table(&text)?
            };
            let (kappa, _) = draft.kappa.ok_or_else(|| {
                Error::Model(format!(
                    "line {line}: tabulated sections need an explicit `kappa`"
                ))
            })?;
            Ok(CrossSection {
                dim: n - 1,
                kappa,
                spectrum: SectionSpectrum::Table(values),
                volume_finite,
            })
        }
        _ => Err(Error::Model(format!(
            "line {line}: unknown section kind `{kind}` (expected sphere, mu, or table)"
        ))),
    }
}

/// Parse a model file. `base` resolves relative `table` paths.
pub fn parse_model(text: &str, base: Option<&Path>) -> Result<ConicalManifoldModel> {
    let mut n: Option<(u32, usize)> = None;
    let mut big_k: Option<(f64, usize)> = None;
    let mut spindle_length: Option<(f64, usize)> = None;
    let mut outer_bc: Option<(BoundaryCondition, usize)> = None;
    let mut drafts: Vec<CapDraft> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "[cap]" {
            drafts.push(CapDraft {
                header_line: lineno,
                ..CapDraft::default()
            });
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Model(format!(
                "line {lineno}: expected `key = value` or `[cap]`, got `{line}`"
            )));
        };
        let key = key.trim();
        let value = value.trim();
        if let Some(cap) = drafts.last_mut() {
            macro_rules! set_cap {
                ($field:ident, $parsed:expr) => {{
                    if cap.$field.is_some() {
                        return Err(Error::Model(format!(
                            "line {lineno}: duplicate key `{key}` in cap block"
                        )));
                    }
                    cap.$field = Some(($parsed, lineno));
                }};
            }
            match key {
                "rho" => set_cap!(rho, parse_f64(value, key, lineno)?),
                "ell" => set_cap!(ell, parse_f64(value, key, lineno)?),
                "section" => set_cap!(section, value.to_string()),
                "kappa" => set_cap!(kappa, parse_f64(value, key, lineno)?),
                "volume_finite" => set_cap!(volume_finite, parse_bool(value, key, lineno)?),
                _ => {
                    return Err(Error::Model(format!(
                        "line {lineno}: unknown cap key `{key}`"
                    )))
                }
            }
        } else {
            macro_rules! set_top {
                ($field:ident, $parsed:expr) => {{
                    if $field.is_some() {
                        return Err(Error::Model(format!(
                            "line {lineno}: duplicate key `{key}`"
                        )));
                    }
                    $field = Some(($parsed, lineno));
                }};
            }
            match key {
                "n" => {
                    let v = value.parse::<u32>().map_err(|_| {
                        Error::Model(format!(
                            "line {lineno}: value for `n` is not a positive integer: `{value}`"
                        ))
                    })?;
                    set_top!(n, v)
                }
                "K" => set_top!(big_k, parse_f64(value, key, lineno)?),
                "spindle_length" => set_top!(spindle_length, parse_f64(value, key, lineno)?),
                "outer_bc" => {
                    let bc = match value {
                        "natural" => BoundaryCondition::Natural,
                        "dirichlet" => BoundaryCondition::Dirichlet,
                        _ => {
                            return Err(Error::Model(format!(
                                "line {lineno}: outer_bc must be natural or dirichlet, got `{value}`"
                            )))
                        }
                    };
                    set_top!(outer_bc, bc)
                }
                _ => {
                    return Err(Error::Model(format!(
                        "line {lineno}: unknown key `{key}` (top-level keys must precede the first [cap])"
                    )))
                }
            }
        }
    }

    let (n, _) = n.ok_or_else(|| Error::Model("missing required key `n`".into()))?;
    let (big_k, _) = big_k.ok_or_else(|| Error::Model("missing required key `K`".into()))?;
    if drafts.is_empty() {
        return Err(Error::Model("a model needs at least one [cap] block".into()));
    }
    if outer_bc.is_some() && spindle_length.is_none() {
        return Err(Error::Model(
            "`outer_bc` is only meaningful together with `spindle_length`".into(),
        ));
    }

    let mut caps = Vec::with_capacity(drafts.len());
    for draft in &drafts {
        let (rho, _) = draft.rho.ok_or_else(|| {
            Error::Model(format!(
                "cap starting at line {}: missing `rho`",
                draft.header_line
            ))
        })?;
        let (ell, _) = draft.ell.ok_or_else(|| {
            Error::Model(format!(
                "cap starting at line {}: missing `ell`",
                draft.header_line
            ))
        })?;
        caps.push(ConeCap {
            rho,
            ell,
            section: resolve_section(draft, n, base)?,
        });
    }

    let computable = match spindle_length {
        Some((total_length, _)) => Computable::Spindle {
            ell: caps[0].ell,
            total_length,
            section: caps[0].section.clone(),
            outer_bc: outer_bc.map_or(BoundaryCondition::Natural, |(bc, _)| bc),
        },
        None => Computable::Abstract,
    };
    let model = ConicalManifoldModel {
        n,
        bulk_k: big_k,
        caps,
        computable,
    };
    model.validate()?;
    Ok(model)
}

fn write_section(out: &mut String, section: &CrossSection) {
    match &section.spectrum {
        SectionSpectrum::Sphere { radius } => {
            out.push_str(&format!("section = sphere {radius}\n"));
        }
        SectionSpectrum::Table(values) => {
            out.push_str("section = mu");
            for v in values {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
            out.push_str(&format!("kappa = {}\n", section.kappa));
        }
    }
    if !section.volume_finite {
        out.push_str("volume_finite = false\n");
    }
}

/// Serialize a model to the file format. Fails for computable models whose
/// spindle data does not mirror cap 0 (the format cannot represent those).
pub fn serialize_model(model: &ConicalManifoldModel) -> Result<String> {
    let mut out = String::new();
    out.push_str(&format!("n = {}\n", model.n));
    out.push_str(&format!("K = {}\n", model.bulk_k));
    if let Computable::Spindle {
        ell,
        total_length,
        section,
        outer_bc,
    } = &model.computable
    {
        let cap0 = model
            .caps
            .first()
            .ok_or_else(|| Error::Model("a model needs at least one cap".into()))?;
        if *ell != cap0.ell || section != &cap0.section {
            return Err(Error::Model(
                "cannot serialize: the spindle data does not mirror cap 0".into(),
            ));
        }
        out.push_str(&format!("spindle_length = {total_length}\n"));
        let bc = match outer_bc {
            BoundaryCondition::Natural => "natural",
            BoundaryCondition::Dirichlet => "dirichlet",
        };
        out.push_str(&format!("outer_bc = {bc}\n"));
    }
    for cap in &model.caps {
        out.push_str("\n[cap]\n");
        out.push_str(&format!("rho = {}\n", cap.rho));
        out.push_str(&format!("ell = {}\n", cap.ell));
        write_section(&mut out, &cap.section);
    }
    Ok(out)
}

pub fn load_model(path: &Path) -> Result<ConicalManifoldModel> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_model(&text, path.parent())
}

pub fn save_model(path: &Path, model: &ConicalManifoldModel) -> Result<()> {
    let text = serialize_model(model)?;
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}
