//! The `pmt` command line. Flags override the matching scene values, and
//! every report echoes the scene after overrides.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use pmt_core::analysis::{
    alpha_sample, attracting_cycles, find_periodic, stability_report, HyperbolicityVerdict, ParameterGrid,
    PeriodicPoint, SignatureConfig,
};
use pmt_core::pmt::Pmt;
use pmt_core::presets::Preset;
use pmt_core::spiderweb::SpiderwebApprox;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::export;
use crate::image::{alpha_heat, legend, Image, Palette};
use crate::parallel;
use crate::scene::{Scene, WindowKind};

#[derive(Debug, Parser)]
#[command(name = "pmt", version, about = "Piecewise Möbius transformations on the Riemann sphere")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify pixels into basins, boundary depths and unresolved.
    Render(RenderArgs),
    /// Pull the discontinuity set back and export the arcs.
    Spiderweb(SpiderwebArgs),
    /// Census of periodic points up to a word length.
    Periodics(PeriodicsArgs),
    /// Stability report: hyperbolicity, α-expansion and the Schottky check.
    Check(CheckArgs),
    /// Signature sweep over a one-parameter family.
    Sweep(SweepArgs),
    /// List presets, or print one as an explicit scene.
    Presets(PresetsArgs),
}

#[derive(Debug, Args)]
pub struct SceneArg {
    /// Scene file, or `preset:NAME`.
    pub scene: String,
    /// Boundary tolerance (plane-value units).
    #[arg(long)]
    pub boundary_tol: Option<f64>,
}

impl SceneArg {
    fn load(&self) -> Result<Scene> {
        let mut scene = Scene::load(&self.scene)?;
        set(&mut scene.tolerances.boundary, self.boundary_tol);
        Ok(scene)
    }
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub scene: SceneArg,
    /// Output image, `.ppm` or `.png`.
    #[arg(short, long)]
    pub out: PathBuf,
    /// Legend text file mapping colors to basins and depths.
    #[arg(long)]
    pub legend: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "basin")]
    pub palette: Palette,
    /// Closeness-to-α heat map over the same window.
    #[arg(long)]
    pub alpha_heat: Option<PathBuf>,
    #[arg(long)]
    pub pixels: Option<usize>,
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Render the whole sphere as two charts instead of a plane window.
    #[arg(long)]
    pub sphere: bool,
    /// Window center as `re,im`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub center: Option<[f64; 2]>,
    #[arg(long)]
    pub half_width: Option<f64>,
    #[arg(long)]
    pub max_len: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SpiderwebArgs {
    #[command(flatten)]
    pub scene: SceneArg,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub min_arc: Option<f64>,
    #[arg(long)]
    pub max_arcs: Option<usize>,
    /// Arc export, one arc per line.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    /// JSON summary per level.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PeriodicsArgs {
    #[command(flatten)]
    pub scene: SceneArg,
    #[arg(long)]
    pub max_len: Option<usize>,
    /// JSON report.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub scene: SceneArg,
    #[arg(long)]
    pub max_len: Option<usize>,
    /// RNG seed for orbit sampling.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub seeds: Option<usize>,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long)]
    pub schottky_depth: Option<usize>,
    /// JSON report.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub scene: SceneArg,
    /// Real range as `lo,hi`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub re: Option<[f64; 2]>,
    /// Imaginary range as `lo,hi`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    pub im: Option<[f64; 2]>,
    #[arg(long)]
    pub nx: Option<usize>,
    #[arg(long)]
    pub ny: Option<usize>,
    /// JSON grid of signatures.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    /// Change-locus image, one pixel per cell.
    #[arg(long)]
    pub image: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PresetsArgs {
    /// Print this preset as a scene with explicit regions.
    #[arg(long)]
    pub export: Option<String>,
}

fn parse_pair(s: &str) -> std::result::Result<[f64; 2], String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `x,y`, got {s:?}"))?;
    let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    Ok([num(a)?, num(b)?])
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn write_json(path: Option<&Path>, v: &Value) -> Result<()> {
    match path {
        Some(p) => write_file(p, &export::to_text(v)),
        None => Ok(()),
    }
}

/// Runs one command, writing human-readable output to `out`.
pub fn run(cli: Cli, out: &mut impl std::io::Write) -> Result<()> {
    let mut text = String::new();
    match cli.command {
        Command::Render(a) => render(a, &mut text)?,
        Command::Spiderweb(a) => spiderweb(a, &mut text)?,
        Command::Periodics(a) => periodics(a, &mut text)?,
        Command::Check(a) => check(a, &mut text)?,
        Command::Sweep(a) => sweep(a, &mut text)?,
        Command::Presets(a) => presets(a, &mut text)?,
    }
    out.write_all(text.as_bytes()).map_err(|e| Error::io("<stdout>", e))
}

fn census(f: &Pmt, scene: &Scene) -> Result<Vec<PeriodicPoint>> {
    Ok(find_periodic(f, &scene.periodic_config())?)
}

fn cycle_text(cycle: &[pmt_core::sphere::SpherePoint]) -> String {
    let pts: Vec<String> = cycle.iter().map(|&p| export::point(p).to_string()).collect();
    format!("period {} cycle {}", cycle.len(), pts.join(" "))
}

fn render(a: RenderArgs, text: &mut String) -> Result<()> {
    let mut scene = a.scene.load()?;
    set(&mut scene.render.pixels, a.pixels);
    set(&mut scene.render.iterations, a.iterations);
    set(&mut scene.render.center, a.center);
    set(&mut scene.render.half_width, a.half_width);
    set(&mut scene.analysis.max_len, a.max_len);
    if a.sphere {
        scene.render.window = WindowKind::Sphere;
    }
    let width_ok = scene.render.half_width > 0.0 && scene.render.half_width.is_finite();
    if !width_ok || scene.render.pixels == 0 {
        return Err(Error::Config("render needs positive pixels and half_width".into()));
    }
    let f = scene.build()?;
    let census = census(&f, &scene)?;
    let cycles = attracting_cycles(&census);
    let r = parallel::raster(&f, scene.window(), scene.raster_params(), &cycles)?;
    Image::from_raster(&r, a.palette).save(&a.out)?;
    let basins: Vec<String> = cycles.iter().map(|c| cycle_text(c)).collect();
    let legend_text = legend(&r, a.palette, &basins);
    if let Some(path) = &a.legend {
        write_file(path, &legend_text)?;
    }
    if let Some(path) = &a.alpha_heat {
        let s = parallel::spiderweb(&f, &scene.spiderweb_config())?;
        let sample = alpha_sample(&s, &census, scene.analysis.alpha_budget)?;
        alpha_heat(&r.window, sample.points()).save(path)?;
    }
    text.push_str(&legend_text);
    Ok(())
}

fn spiderweb(a: SpiderwebArgs, text: &mut String) -> Result<()> {
    let mut scene = a.scene.load()?;
    set(&mut scene.spiderweb.depth, a.depth);
    set(&mut scene.spiderweb.min_arc_chordal, a.min_arc);
    set(&mut scene.spiderweb.max_arcs, a.max_arcs);
    let f = scene.build()?;
    let s: SpiderwebApprox = parallel::spiderweb(&f, &scene.spiderweb_config())?;
    if let Some(path) = &a.out {
        write_file(path, &export::arcs_text(&s))?;
    }
    write_json(a.report.as_deref(), &export::spiderweb_json(&scene, &s))?;
    text.push_str(&export::spiderweb_summary(&s));
    Ok(())
}

fn periodics(a: PeriodicsArgs, text: &mut String) -> Result<()> {
    let mut scene = a.scene.load()?;
    set(&mut scene.analysis.max_len, a.max_len);
    let f = scene.build()?;
    let census = census(&f, &scene)?;
    write_json(a.out.as_deref(), &export::periodics_json(&scene, &census))?;
    text.push_str(&export::periodics_table(&census));
    text.push_str(&format!("complete up to period {}\n", scene.analysis.max_len));
    Ok(())
}

fn check(a: CheckArgs, text: &mut String) -> Result<()> {
    let mut scene = a.scene.load()?;
    set(&mut scene.analysis.max_len, a.max_len);
    set(&mut scene.analysis.seed, a.seed);
    set(&mut scene.analysis.seeds, a.seeds);
    set(&mut scene.spiderweb.depth, a.depth);
    set(&mut scene.analysis.schottky_depth, a.schottky_depth);
    let f = scene.build()?;
    let r = stability_report(&f, &scene.stability_config())?;
    write_json(a.out.as_deref(), &export::stability_json(&scene, &r))?;
    let verdict = match &r.hyperbolicity.verdict {
        HyperbolicityVerdict::Hyperbolic => "hyperbolic".to_string(),
        HyperbolicityVerdict::NotHyperbolic(pp) => {
            format!("not hyperbolic ({} point {})", pp.kind.name(), export::point(pp.point))
        }
        HyperbolicityVerdict::Inconclusive => "inconclusive".to_string(),
    };
    let alpha = match &r.alpha {
        a if a.is_expanding() => "expanding",
        pmt_core::analysis::AlphaExpansion::Empty => "empty",
        _ => "not expanding",
    };
    text.push_str(&format!(
        "loxodromic components: {}\nhyperbolicity: {verdict}\nα-expanding: {alpha}\nschottky: {}\nwandering suspected: {}\nsufficient conditions met: {}\n",
        r.loxodromic_components,
        if r.schottky.pass { "pass" } else { "fail" },
        r.wandering_suspected,
        r.sufficient_conditions_met,
    ));
    Ok(())
}

fn sweep(a: SweepArgs, text: &mut String) -> Result<()> {
    let mut scene = a.scene.load()?;
    set(&mut scene.sweep.re, a.re);
    set(&mut scene.sweep.im, a.im);
    set(&mut scene.sweep.nx, a.nx);
    set(&mut scene.sweep.ny, a.ny);
    let family = scene
        .preset()?
        .ok_or_else(|| Error::Config("sweep needs a preset family".into()))?;
    let sw = &scene.sweep;
    if sw.nx == 0 || sw.ny == 0 {
        return Err(Error::Config("sweep grid must be at least 1×1".into()));
    }
    let grid = ParameterGrid { re: sw.re, im: sw.im, nx: sw.nx, ny: sw.ny };
    let config = SignatureConfig { max_len: scene.analysis.max_len.min(4), ..SignatureConfig::default() };
    let r = parallel::sweep(&family, grid, &config)?;
    write_json(a.out.as_deref(), &export::sweep_json(&scene, family.name(), &r))?;
    if let Some(path) = &a.image {
        Image::from_mask(&r.change_mask, grid.nx, grid.ny).save(path)?;
    }
    text.push_str(&format!(
        "{} cells, {} distinct signatures, {} on the change locus\n",
        grid.len(),
        r.distinct,
        r.changed_cells()
    ));
    Ok(())
}

fn presets(a: PresetsArgs, text: &mut String) -> Result<()> {
    match a.export {
        Some(name) => {
            let preset = Scene::for_preset(&name)?.preset()?.expect("named preset");
            text.push_str(&format!("# {}\n", preset.describe()));
            text.push_str(&Scene::explicit(&preset.build()?).to_toml());
        }
        None => {
            for name in Preset::NAMES {
                text.push_str(&Preset::named(name).expect("listed").describe());
                text.push('\n');
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs() {
        assert_eq!(parse_pair("-1.5, 2").unwrap(), [-1.5, 2.0]);
        assert!(parse_pair("1").is_err());
    }

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
