//! Parsers for the compact family/bundle descriptors accepted on the
//! command line: `seq:<s>`, `bm:<spec.json>`, `gset:<s>,<n>,<alpha>`,
//! `percolation:<n>,<M>,<p>`.

use anyhow::{bail, Context, Result};
use dimlab::formulas::{
    bm_profile, g_set_profile, percolation_profile, seq_profile, DimensionBundle, DimensionKind,
    DimensionProfile,
};
use dimlab::sets::CarpetSpec;
use std::fs::File;
use std::path::Path;

pub fn load_carpet(path: &Path) -> Result<CarpetSpec> {
    let file = File::open(path).with_context(|| format!("--spec {}", path.display()))?;
    Ok(CarpetSpec::read_json(file)?)
}

/// A family descriptor usable both as a profile source and as a bundle.
pub enum FamilySpec {
    Seq { s: f64 },
    Carpet(CarpetSpec),
    GSet { s: f64, n: u32, alpha: f64 },
    Percolation { n: u32, base: u32, p: f64 },
}

impl FamilySpec {
    pub fn label(&self) -> String {
        match self {
            FamilySpec::Seq { s } => format!("seq(s={s})"),
            FamilySpec::Carpet(spec) => format!(
                "bm(m={},n={},digits={})",
                spec.base_x,
                spec.base_y,
                spec.digit_count()
            ),
            FamilySpec::GSet { s, n, alpha } => format!("gset(s={s},n={n},alpha={alpha})"),
            FamilySpec::Percolation { n, base, p } => {
                format!("percolation(n={n},M={base},p={p})")
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (head, rest) = text
            .split_once(':')
            .with_context(|| format!("family `{text}` needs the form name:params"))?;
        Ok(match head {
            "seq" => FamilySpec::Seq {
                s: rest.parse().with_context(|| format!("seq parameter in `{text}`"))?,
            },
            "bm" => FamilySpec::Carpet(load_carpet(Path::new(rest))?),
            "gset" => {
                let parts: Vec<&str> = rest.split(',').collect();
                if parts.len() != 3 {
                    bail!("gset needs s,n,alpha, got `{rest}`");
                }
                FamilySpec::GSet {
                    s: parts[0].parse().context("gset s")?,
                    n: parts[1].parse().context("gset n")?,
                    alpha: parts[2].parse().context("gset alpha")?,
                }
            }
            "percolation" => {
                let parts: Vec<&str> = rest.split(',').collect();
                if parts.len() != 3 {
                    bail!("percolation needs n,M,p, got `{rest}`");
                }
                FamilySpec::Percolation {
                    n: parts[0].parse().context("percolation n")?,
                    base: parts[1].parse().context("percolation M")?,
                    p: parts[2].parse().context("percolation p")?,
                }
            }
            other => bail!("unknown family `{other}` (expected seq, bm, gset, or percolation)"),
        })
    }

    pub fn profile(&self, kind: DimensionKind) -> Result<DimensionProfile> {
        Ok(match self {
            FamilySpec::Seq { s } => seq_profile(*s, kind)?,
            FamilySpec::Carpet(spec) => bm_profile(spec, kind)?,
            FamilySpec::GSet { s, n, alpha } => g_set_profile(*s, *n, *alpha, kind)?,
            FamilySpec::Percolation { n, base, p } => {
                let (profile, extinct) = percolation_profile(*n, *base, *p, kind)?;
                if extinct {
                    eprintln!("note: p <= M^-n, the sample is empty almost surely");
                }
                profile
            }
        })
    }

    pub fn bundle(&self, ambient: Option<u32>) -> Result<DimensionBundle> {
        let mut bundle = match self {
            FamilySpec::Seq { s } => DimensionBundle::sequence(*s, ambient.unwrap_or(1))?,
            FamilySpec::Carpet(spec) => DimensionBundle::carpet(spec)?,
            FamilySpec::GSet { s, n, alpha } => DimensionBundle::g_set(*s, *n, *alpha)?,
            FamilySpec::Percolation { n, base, p } => DimensionBundle::percolation(*n, *base, *p)?.0,
        };
        if let Some(n) = ambient {
            if n < bundle.ambient_dim {
                bail!(
                    "--n {n} is below the family's natural dimension {}",
                    bundle.ambient_dim
                );
            }
            bundle.ambient_dim = n;
            bundle.intermediate = bundle.intermediate.with_ambient(n);
            bundle.assouad_spectrum = bundle.assouad_spectrum.map(|p| p.with_ambient(n));
        }
        Ok(bundle)
    }
}

/// `lo:hi` into a pair of integers.
pub fn parse_range(text: &str) -> Result<(u32, u32)> {
    let (a, b) = text
        .split_once(':')
        .with_context(|| format!("range `{text}` needs the form lo:hi"))?;
    Ok((a.parse().context("range low end")?, b.parse().context("range high end")?))
}
