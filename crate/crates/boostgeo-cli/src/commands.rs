//! The four subcommands. Each returns the process exit code: 0 for
//! success/positive verdicts, 1 for negative verdicts, errors bubble up as 2.

use std::io::Write;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use boostgeo_core::{
    abd_functions, coefficients, curvature_report, detect_pointwise_one_type, sample_grid,
    second_fundamental_form, surface_point, verify_family, P1TKind, P1TReport, ProfileCurve, Sign,
    VerificationReport,
};

use crate::config::{RunConfig, LAPLACIAN_STEP};

/// Fixed numeric formatting: 17 significant digits, reproducible bytes.
/// Adding 0.0 folds negative zero into plain zero.
fn fmt(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

/// Tabulate the coefficient and curvature functions over the s-grid as CSV.
pub fn cmd_invariants(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let curve = config.build_curve()?;
    config.check_grid_fits(&curve, 0.0)?;
    let eps = config.family.as_ref().and_then(|f| f.epsilon());
    writeln!(out, "s,a,b,c,d,K,h1,h2,H_norm2,A,B,D,N")?;
    for s in
        boostgeo_core::gauss::linspace(config.grid.s_min, config.grid.s_max, config.grid.s_count)
    {
        let co = coefficients(&curve, s)?;
        let rep = curvature_report(&co, &second_fundamental_form(&co));
        let (a_fn, b_fn, d_fn) = abd_functions(&co)?;
        // N uses the family's sign when it carries one, otherwise the sign
        // that comes closer to the trapped condition.
        let eps = eps.unwrap_or_else(|| {
            if ((co.b + co.c) + co.d).abs() <= ((co.b + co.c) - co.d).abs() {
                Sign::Plus
            } else {
                Sign::Minus
            }
        });
        let dv = co.derivs.expect("coefficients always carry derivatives");
        let n_fn = dv.dd - eps.value() * co.a * co.d * co.d;
        let row = [
            s,
            co.a,
            co.b,
            co.c,
            co.d,
            rep.k,
            rep.h_components.0,
            rep.h_components.1,
            rep.h_norm2,
            a_fn,
            b_fn,
            d_fn,
            n_fn,
        ];
        writeln!(out, "{}", row.map(fmt).join(","))?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct P1TDocument<'a> {
    surface: &'a str,
    grid: &'a boostgeo_core::GridSpec,
    tolerances: crate::config::Tolerances,
    verdict: &'a str,
    report: &'a P1TReport,
}

fn verdict_text(report: &P1TReport) -> &'static str {
    if report.harmonic {
        "harmonic Gauss map"
    } else {
        match report.kind {
            P1TKind::First => "pointwise 1-type Gauss map of the first kind",
            P1TKind::Second => "pointwise 1-type Gauss map of the second kind",
            P1TKind::None => "not pointwise 1-type",
        }
    }
}

/// Run the pointwise 1-type detector; human-readable text plus a JSON mirror
/// on the output path.
pub fn cmd_p1t(
    config: &RunConfig,
    text_out: &mut dyn Write,
    json_out: Option<&mut dyn Write>,
) -> Result<i32> {
    let curve = config.build_curve()?;
    config.check_grid_fits(&curve, LAPLACIAN_STEP)?;
    let g = &config.grid;
    let samples = sample_grid(
        &curve,
        g.t_range(),
        g.s_range(),
        g.t_count,
        g.s_count,
        LAPLACIAN_STEP,
    )?;
    let tols = config.tolerances;
    let report = detect_pointwise_one_type(&samples, tols.tol_fit, tols.tol_c, tols.tol_f)?;

    let verdict = verdict_text(&report);
    writeln!(text_out, "surface: {}", curve.label())?;
    writeln!(
        text_out,
        "grid: t in [{}, {}] x {}, s in [{}, {}] x {} ({} samples)",
        g.t_min,
        g.t_max,
        g.t_count,
        g.s_min,
        g.s_max,
        g.s_count,
        g.t_count * g.s_count
    )?;
    writeln!(text_out, "verdict: {verdict}")?;
    writeln!(text_out, "residual: {}", fmt(report.residual))?;
    if !report.harmonic {
        let (fmin, fmax) = report
            .f_samples
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, f)| {
                (lo.min(f), hi.max(f))
            });
        writeln!(text_out, "f: min {} max {}", fmt(fmin), fmt(fmax))?;
        let c = report.c.to_array();
        writeln!(
            text_out,
            "C (Plucker 12,13,14,23,24,34): [{}]",
            c.map(fmt).join(", ")
        )?;
    }
    if let Some(json_out) = json_out {
        let doc = P1TDocument {
            surface: curve.label(),
            grid: g,
            tolerances: tols,
            verdict,
            report: &report,
        };
        serde_json::to_writer_pretty(&mut *json_out, &doc)?;
        json_out.write_all(b"\n")?;
    }
    Ok(if report.is_p1t { 0 } else { 1 })
}

/// Verify a generated family against its expected properties.
pub fn cmd_verify(
    config: &RunConfig,
    text_out: &mut dyn Write,
    json_out: Option<&mut dyn Write>,
) -> Result<i32> {
    let Some(spec) = &config.family else {
        bail!("`verify` needs a `family` config entry; table curves have no expected properties")
    };
    let curve = config.build_curve()?;
    config.check_grid_fits(&curve, LAPLACIAN_STEP)?;
    let report: VerificationReport = verify_family(&curve, spec, &config.grid);
    writeln!(text_out, "family: {}", report.family)?;
    writeln!(text_out, "surface: {}", curve.label())?;
    for check in &report.checks {
        writeln!(
            text_out,
            "[{}] {}: expected {}, observed {}{}",
            if check.pass { "PASS" } else { "FAIL" },
            check.name,
            check.expected,
            check.observed,
            if check.tolerance > 0.0 {
                format!(" (tol {:.1e})", check.tolerance)
            } else {
                String::new()
            }
        )?;
    }
    writeln!(
        text_out,
        "overall: {}",
        if report.overall_pass { "PASS" } else { "FAIL" }
    )?;
    if let Some(json_out) = json_out {
        serde_json::to_writer_pretty(&mut *json_out, &report)?;
        json_out.write_all(b"\n")?;
    }
    Ok(if report.overall_pass { 0 } else { 1 })
}

/// Export the sampled surface as an OBJ mesh (quads, s-major vertex order,
/// one ambient coordinate dropped).
pub fn cmd_mesh(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let curve = config.build_curve()?;
    config.check_grid_fits(&curve, 0.0)?;
    let g = &config.grid;
    let ts = boostgeo_core::gauss::linspace(g.t_min, g.t_max, g.t_count);
    let ss = boostgeo_core::gauss::linspace(g.s_min, g.s_max, g.s_count);
    writeln!(out, "# boostgeo mesh: {}", curve.label())?;
    writeln!(
        out,
        "# grid: t in [{}, {}] x {}, s in [{}, {}] x {}",
        g.t_min, g.t_max, g.t_count, g.s_min, g.s_max, g.s_count
    )?;
    for &s in &ss {
        for &t in &ts {
            let p = surface_point(&curve, t, s).context("mesh vertex")?;
            let [x, y, z] = config.mesh.drop.project(p);
            writeln!(out, "v {} {} {}", fmt(x), fmt(y), fmt(z))?;
        }
    }
    let idx = |i: usize, j: usize| j * g.t_count + i + 1;
    for j in 0..g.s_count - 1 {
        for i in 0..g.t_count - 1 {
            writeln!(
                out,
                "f {} {} {} {}",
                idx(i, j),
                idx(i + 1, j),
                idx(i + 1, j + 1),
                idx(i, j + 1)
            )?;
        }
    }
    Ok(0)
}

/// Convenience wrapper used by tests: print the profile of a generated curve
/// as the CSV table format accepted back through the `table` config entry.
pub fn write_profile_table(
    curve: &ProfileCurve,
    s_values: &[f64],
    out: &mut dyn Write,
) -> Result<()> {
    writeln!(out, "s,alpha1,alpha3,alpha4")?;
    for &s in s_values {
        let j = curve.jet(s)?;
        writeln!(
            out,
            "{},{},{},{}",
            fmt(s),
            fmt(j.value.alpha1),
            fmt(j.value.alpha3),
            fmt(j.value.alpha4)
        )?;
    }
    Ok(())
}
