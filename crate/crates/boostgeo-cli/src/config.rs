//! Run configuration: JSON schema, validation, and curve construction.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use boostgeo_core::{
    build_family, spline_curve_from_samples, BuildOptions, FamilySpec, GridSpec, ProfileCurve,
};

/// Step used by the chart-discretized Laplacian inside `p1t` and `verify`.
pub const LAPLACIAN_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Family instance to generate. Exactly one of `family` / `table`.
    #[serde(default)]
    pub family: Option<FamilySpec>,
    /// CSV file with header `s,alpha1,alpha3,alpha4`, reconstructed by
    /// natural cubic splines.
    #[serde(default)]
    pub table: Option<PathBuf>,
    pub grid: GridSpec,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub mesh: MeshConfig,
    /// Default output path; `--out` takes precedence.
    #[serde(default)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub tol_fit: f64,
    pub tol_c: f64,
    pub tol_f: f64,
    pub quad_tol: f64,
    pub delta_dom: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tol_fit: 1e-6,
            tol_c: 1e-8,
            tol_f: 1e-10,
            quad_tol: 1e-10,
            delta_dom: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MeshConfig {
    pub drop: DropAxis,
}

/// Which ambient coordinate the OBJ export drops in the 4D -> 3D projection.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DropAxis {
    X1,
    #[default]
    X2,
    X3,
    X4,
}

impl DropAxis {
    pub fn project(self, v: boostgeo_core::Vec4) -> [f64; 3] {
        let [x1, x2, x3, x4] = v.to_array();
        match self {
            DropAxis::X1 => [x2, x3, x4],
            DropAxis::X2 => [x1, x3, x4],
            DropAxis::X3 => [x1, x2, x4],
            DropAxis::X4 => [x1, x2, x3],
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        let config: RunConfig = serde_json::from_str(&text)
            .with_context(|| format!("invalid config {}", path.display()))?;
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        match (&self.family, &self.table) {
            (None, None) => bail!("config needs a `family` or a `table` entry"),
            (Some(_), Some(_)) => bail!("config must give either `family` or `table`, not both"),
            _ => {}
        }
        self.grid.validate()?;
        let t = &self.tolerances;
        for (name, v) in [
            ("tol_fit", t.tol_fit),
            ("tol_c", t.tol_c),
            ("tol_f", t.tol_f),
            ("quad_tol", t.quad_tol),
        ] {
            if !(v > 0.0) {
                bail!("tolerance `{name}` must be positive, got {v}");
            }
        }
        Ok(())
    }

    /// Build the curve, offering the grid's s-range (plus working margin) as
    /// the requested span for generated families.
    pub fn build_curve(&self) -> Result<ProfileCurve> {
        let curve = if let Some(spec) = &self.family {
            let opts = BuildOptions {
                span: (self.grid.s_min - 0.5, self.grid.s_max + 0.5),
                delta_dom: self.tolerances.delta_dom,
                quad_tol: self.tolerances.quad_tol,
            };
            build_family(spec, &opts)?
        } else {
            let path = self.table.as_ref().expect("validated");
            load_table_curve(path)?
        };
        Ok(curve)
    }

    /// Check that the grid (with an optional stencil margin) sits inside the
    /// curve's declared domain.
    pub fn check_grid_fits(&self, curve: &ProfileCurve, stencil: f64) -> Result<()> {
        let (lo, hi) = curve.domain();
        if self.grid.s_min < lo + stencil || self.grid.s_max > hi - stencil {
            bail!(
                "grid s-range [{}, {}] leaves the curve domain [{lo}, {hi}] \
                 (stencil margin {stencil}); shrink the grid or widen the family domain",
                self.grid.s_min,
                self.grid.s_max
            );
        }
        Ok(())
    }
}

fn load_table_curve(path: &Path) -> Result<ProfileCurve> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("cannot read table {}", path.display()))?;
    let headers = reader
        .headers()
        .context("table is missing its header row")?;
    let expected = ["s", "alpha1", "alpha3", "alpha4"];
    let got: Vec<&str> = headers.iter().collect();
    if got != expected {
        bail!(
            "table header must be `s,alpha1,alpha3,alpha4`, got `{}`",
            got.join(",")
        );
    }
    let (mut s, mut a1, mut a3, mut a4) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (i, record) in reader.records().enumerate() {
        let record = record.with_context(|| format!("table row {}", i + 2))?;
        let field = |k: usize| -> Result<f64> {
            record
                .get(k)
                .with_context(|| format!("table row {}: missing column {}", i + 2, expected[k]))?
                .parse::<f64>()
                .with_context(|| {
                    format!("table row {}: bad number in column {}", i + 2, expected[k])
                })
        };
        s.push(field(0)?);
        a1.push(field(1)?);
        a3.push(field(2)?);
        a4.push(field(3)?);
    }
    let label = format!("table({})", path.display());
    Ok(spline_curve_from_samples(&s, &a1, &a3, &a4, label)?)
}
