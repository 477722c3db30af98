//! Raster palettes, legends and PPM/PNG output.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use pmt_core::sphere::SpherePoint;
use pmt_core::spiderweb::{Label, RasterImage, Window};
use rayon::prelude::*;

use crate::error::{Error, Result};

pub type Rgb = [u8; 3];

const BOUNDARY: Rgb = [0, 0, 0];
const UNRESOLVED: Rgb = [255, 255, 255];
const BASINS: [Rgb; 8] = [
    [70, 130, 180],
    [230, 159, 0],
    [86, 180, 100],
    [204, 121, 167],
    [213, 94, 0],
    [0, 158, 115],
    [160, 160, 60],
    [120, 94, 240],
];
/// Chordal distance at which the α heat falls to `1/e`.
const HEAT_SCALE: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Palette {
    /// Boundary black, one flat color per basin, unresolved white.
    Basin,
    /// Boundary pixels shaded by depth, basins pale.
    Depth,
}

fn basin_color(id: u32) -> Rgb {
    BASINS[id as usize % BASINS.len()]
}

fn depth_color(n: u32, max_depth: u32) -> Rgb {
    let t = if max_depth == 0 { 0.0 } else { n as f64 / max_depth as f64 };
    heat(1.0 - t)
}

/// Black through red and yellow to white as `v` goes from 0 to 1.
fn heat(v: f64) -> Rgb {
    let v = v.clamp(0.0, 1.0) * 3.0;
    let ch = |x: f64| (x.clamp(0.0, 1.0) * 255.0).round() as u8;
    [ch(v), ch(v - 1.0), ch(v - 2.0)]
}

fn pale(c: Rgb) -> Rgb {
    c.map(|x| ((x as u16 + 3 * 255) / 4) as u8)
}

pub fn label_color(label: Label, palette: Palette, max_depth: u32) -> Rgb {
    match (label, palette) {
        (Label::BoundaryDepth(_), Palette::Basin) => BOUNDARY,
        (Label::BoundaryDepth(n), Palette::Depth) => depth_color(n, max_depth),
        (Label::Basin(id), Palette::Basin) => basin_color(id),
        (Label::Basin(id), Palette::Depth) => pale(basin_color(id)),
        (Label::Unresolved, _) => UNRESOLVED,
    }
}

/// 8-bit RGB pixels, row-major from the top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    pub data: Vec<u8>,
}

impl Image {
    pub fn from_raster(r: &RasterImage, palette: Palette) -> Image {
        let max_depth = r.params.iterations.saturating_sub(1) as u32;
        let (width, height) = r.window.dimensions();
        let data = r.labels.iter().flat_map(|&l| label_color(l, palette, max_depth)).collect();
        Image { width, height, data }
    }

    /// One pixel per cell, white where `mask` is false and black where true.
    pub fn from_mask(mask: &[bool], width: usize, height: usize) -> Image {
        let data = mask.iter().flat_map(|&m| if m { BOUNDARY } else { UNRESOLVED }).collect();
        Image { width, height, data }
    }

    pub fn pixel(&self, col: usize, row: usize) -> Rgb {
        let i = 3 * (row * self.width + col);
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    pub fn write_ppm(&self, out: &mut impl Write) -> std::io::Result<()> {
        write!(out, "P6\n{} {}\n255\n", self.width, self.height)?;
        out.write_all(&self.data)
    }

    pub fn write_png(&self, out: impl Write) -> std::io::Result<()> {
        let mut encoder = png::Encoder::new(out, self.width as u32, self.height as u32);
        encoder.set_color(png::ColorType::Rgb);
        encoder.set_depth(png::BitDepth::Eight);
        let mut writer = encoder.write_header().map_err(std::io::Error::other)?;
        writer.write_image_data(&self.data).map_err(std::io::Error::other)
    }

    /// Format chosen by extension: `.ppm` or `.png`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let ext = path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase);
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = BufWriter::new(file);
        let written = match ext.as_deref() {
            Some("ppm") => self.write_ppm(&mut out),
            Some("png") => self.write_png(&mut out),
            _ => return Err(Error::Config(format!("{}: image must end in .ppm or .png", path.display()))),
        };
        written.and_then(|_| out.flush()).map_err(|e| Error::io(path, e))
    }
}

/// Closeness to the nearest α sample, `exp(-d / 0.02)` on a heat scale.
pub fn alpha_heat(window: &Window, samples: &[SpherePoint]) -> Image {
    let (width, height) = window.dimensions();
    let vectors: Vec<[f64; 3]> = samples.iter().map(|p| p.to_unit_vector()).collect();
    let data = (0..height)
        .into_par_iter()
        .flat_map_iter(|row| {
            let vectors = &vectors;
            (0..width).flat_map(move |col| {
                let q = window.pixel_center(col, row).to_unit_vector();
                let d = vectors
                    .iter()
                    .map(|v| ((v[0] - q[0]).powi(2) + (v[1] - q[1]).powi(2) + (v[2] - q[2]).powi(2)).sqrt())
                    .fold(f64::INFINITY, f64::min);
                heat((-d / HEAT_SCALE).exp())
            })
        })
        .collect();
    Image { width, height, data }
}

/// Text legend: one line per color in use, with pixel counts. `basins[id]`
/// describes attracting cycle `id`.
pub fn legend(r: &RasterImage, palette: Palette, basins: &[String]) -> String {
    let total = r.labels.len().max(1) as f64;
    let max_depth = r.params.iterations.saturating_sub(1) as u32;
    let hex = |c: Rgb| format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2]);
    let mut out = String::new();
    let (w, h) = r.window.dimensions();
    let _ = writeln!(out, "# {w}x{h} pixels, palette {palette:?}, color  pixels  fraction  meaning");
    let mut line = |color: Rgb, count: usize, meaning: String| {
        if count > 0 {
            let _ = writeln!(out, "{}  {count}  {:.6}  {meaning}", hex(color), count as f64 / total);
        }
    };
    match palette {
        Palette::Basin => {
            line(BOUNDARY, r.count(|l| matches!(l, Label::BoundaryDepth(_))), "pre-discontinuity (any depth)".into());
        }
        Palette::Depth => {
            for n in 0..=max_depth {
                line(
                    depth_color(n, max_depth),
                    r.count(|l| l == Label::BoundaryDepth(n)),
                    format!("pre-discontinuity depth {n}"),
                );
            }
        }
    }
    for (id, what) in basins.iter().enumerate() {
        let label = Label::Basin(id as u32);
        line(label_color(label, palette, max_depth), r.count(|l| l == label), format!("basin {}: {what}", id + 1));
    }
    line(UNRESOLVED, r.count(|l| l == Label::Unresolved), "unresolved".into());
    out
}
