//! Classification of the (a, b) parameter plane at fixed c, with PGM and CSV output.
//!
//! Black cells have order of convexity minus infinity by the divergence
//! criterion; gray cells carry a nonnegative closed-form lower bound, so
//! w_{a,b,c} is convex there; white cells are undecided.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::bounds::{bound_thm_sufficient, classify_thm1, corollary_convexity};
use crate::dd::{exact_sum, DoubleDouble};
use crate::error::{Error, Result};
use crate::hyp2f1::Params;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cell {
    Black,
    Gray,
    White,
}

impl Cell {
    pub fn pixel(self) -> u8 {
        match self {
            Self::Black => 0,
            Self::Gray => 128,
            Self::White => 255,
        }
    }

    pub fn from_pixel(v: u8) -> Option<Self> {
        match v {
            0 => Some(Self::Black),
            128 => Some(Self::Gray),
            255 => Some(Self::White),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Black => "black",
            Self::Gray => "gray",
            Self::White => "white",
        }
    }
}

/// Rectangle [a_min, a_max] x [b_min, b_max] in the (a, b) plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub a_min: f64,
    pub a_max: f64,
    pub b_min: f64,
    pub b_max: f64,
}

impl Default for Window {
    fn default() -> Self {
        Self { a_min: 0.0, a_max: 2.0, b_min: 0.0, b_max: 2.0 }
    }
}

/// Classification raster; row 0 is the top of the image (b near b_max).
#[derive(Debug, Clone, PartialEq)]
pub struct ScanGrid {
    pub c: f64,
    pub window: Window,
    pub na: usize,
    pub nb: usize,
    /// Row-major, `nb` rows of `na` cells.
    pub cells: Vec<Cell>,
}

impl ScanGrid {
    pub fn a_center(&self, i: usize) -> f64 {
        let w = &self.window;
        w.a_min + (i as f64 + 0.5) * (w.a_max - w.a_min) / self.na as f64
    }

    /// b at the center of row j, counted from the top.
    pub fn b_center(&self, j: usize) -> f64 {
        let w = &self.window;
        w.b_max - (j as f64 + 0.5) * (w.b_max - w.b_min) / self.nb as f64
    }

    pub fn get(&self, i: usize, j: usize) -> Cell {
        self.cells[j * self.na + i]
    }

    /// The cell containing (a, b), if inside the window.
    pub fn cell_at(&self, a: f64, b: f64) -> Option<(usize, usize)> {
        let w = &self.window;
        if !(w.a_min <= a && a < w.a_max && w.b_min < b && b <= w.b_max) {
            return None;
        }
        let i = ((a - w.a_min) / (w.a_max - w.a_min) * self.na as f64).floor() as usize;
        let j = ((w.b_max - b) / (w.b_max - w.b_min) * self.nb as f64).floor() as usize;
        Some((i.min(self.na - 1), j.min(self.nb - 1)))
    }

    pub fn count(&self, cell: Cell) -> usize {
        self.cells.iter().filter(|&&c| c == cell).count()
    }
}

/// Closed-form lower bound for the order of convexity at (a, b, c), trying
/// both orders of (a, b).
pub fn cell_bound(a: f64, b: f64, c: f64) -> Option<f64> {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    Params::new(lo, hi, c).ok().and_then(|p| bound_thm_sufficient(&p).ok())
}

/// Classifies a single parameter pair.
pub fn classify_cell(a: f64, b: f64, c: f64) -> Cell {
    let Ok(p) = Params::new(a, b, c) else {
        return Cell::White;
    };
    if classify_thm1(&p) {
        return Cell::Black;
    }
    let convex = if c == 1.0 {
        exact_sum(&[a, b]) <= DoubleDouble::from(0.5) && corollary_convexity(a, b).is_ok_and(|r| r.convex)
    } else {
        cell_bound(a, b, c).is_some_and(|v| v >= 0.0)
    };
    if convex {
        Cell::Gray
    } else {
        Cell::White
    }
}

fn thread_cap() -> Option<usize> {
    std::env::var("HYPGEO_THREADS").ok()?.trim().parse().ok().filter(|&n: &usize| n > 0)
}

/// Classifies the cell centers of an na x nb raster over `window`.
///
/// Rows run in parallel; `HYPGEO_THREADS` caps the number of worker threads.
pub fn scan_region(c: f64, window: Window, na: usize, nb: usize) -> Result<ScanGrid> {
    if na < 2 || nb < 2 {
        return Err(Error::domain(format!("need na, nb >= 2, got {na} x {nb}")));
    }
    let Window { a_min, a_max, b_min, b_max } = window;
    let inside = |lo: f64, hi: f64| 0.0 <= lo && lo < hi && hi <= 4.0;
    if !(inside(a_min, a_max) && inside(b_min, b_max)) {
        return Err(Error::domain(format!(
            "window [{a_min}, {a_max}] x [{b_min}, {b_max}] must lie in [0, 4]^2"
        )));
    }
    if !c.is_finite() {
        return Err(Error::domain(format!("c = {c} is not finite")));
    }
    let mut grid = ScanGrid { c, window, na, nb, cells: Vec::new() };
    let row = |j: usize| -> Vec<Cell> {
        let b = grid.b_center(j);
        (0..na).map(|i| classify_cell(grid.a_center(i), b, c)).collect()
    };
    let rows: Vec<Vec<Cell>> = match thread_cap() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::domain(format!("thread pool: {e}")))?
            .install(|| (0..nb).into_par_iter().map(row).collect()),
        None => (0..nb).into_par_iter().map(row).collect(),
    };
    grid.cells = rows.into_iter().flatten().collect();
    Ok(grid)
}

/// Binary PGM (P5): width na, height nb, maxval 255.
pub fn render_pgm(grid: &ScanGrid) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", grid.na, grid.nb).into_bytes();
    out.extend(grid.cells.iter().map(|c| c.pixel()));
    out
}

/// Decoded binary PGM.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pgm {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    pub pixels: Vec<u8>,
}

impl Pgm {
    pub fn cells(&self) -> Result<Vec<Cell>> {
        self.pixels
            .iter()
            .map(|&v| Cell::from_pixel(v).ok_or_else(|| Error::domain(format!("pixel value {v} is not a cell class"))))
            .collect()
    }
}

/// Parses a binary PGM with 8-bit samples (comments allowed in the header).
pub fn parse_pgm(bytes: &[u8]) -> Result<Pgm> {
    let bad = |msg: &str| Error::domain(format!("malformed PGM: {msg}"));
    if !bytes.starts_with(b"P5") {
        return Err(bad("missing P5 magic"));
    }
    let mut pos = 2;
    let mut fields = [0usize; 3];
    for field in &mut fields {
        loop {
            match bytes.get(pos) {
                Some(b'#') => {
                    while bytes.get(pos).is_some_and(|&c| c != b'\n') {
                        pos += 1;
                    }
                }
                Some(c) if c.is_ascii_whitespace() => pos += 1,
                Some(_) => break,
                None => return Err(bad("truncated header")),
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        *field = std::str::from_utf8(&bytes[start..pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad("expected a number"))?;
    }
    if !bytes.get(pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(bad("missing separator before raster"));
    }
    pos += 1;
    let [width, height, maxval] = fields;
    if maxval == 0 || maxval > 255 {
        return Err(bad("only 8-bit samples are supported"));
    }
    let pixels = bytes[pos..].to_vec();
    if pixels.len() != width * height {
        return Err(bad("raster size does not match header"));
    }
    Ok(Pgm { width, height, maxval: maxval as u16, pixels })
}

/// Formats like C's `%.10g`.
pub fn format_g10(x: f64) -> String {
    const DIGITS: i32 = 10;
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let strip = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if exp < -4 || exp >= DIGITS {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", strip(mantissa), sign, exp.abs())
    } else {
        strip(&format!("{:.*}", (DIGITS - 1 - exp) as usize, x))
    }
}

/// CSV with header "a,b,class,bound", one line per cell in raster order.
pub fn emit_csv(grid: &ScanGrid) -> String {
    let mut out = String::from("a,b,class,bound\n");
    for j in 0..grid.nb {
        let b = grid.b_center(j);
        for i in 0..grid.na {
            let a = grid.a_center(i);
            let bound = cell_bound(a, b, grid.c).map(format_g10).unwrap_or_default();
            let _ = writeln!(out, "{},{},{},{}", format_g10(a), format_g10(b), grid.get(i, j).label(), bound);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_pgm_and_csv() {
        let grid = ScanGrid { c: 1.0, window: Window::default(), na: 2, nb: 2, cells: vec![Cell::White; 4] };
        let bytes = render_pgm(&grid);
        assert_eq!(&bytes[..11], b"P5\n2 2\n255\n");
        assert_eq!(&bytes[11..], &[255u8; 4]);
        let one = ScanGrid { c: 1.0, window: Window::default(), na: 1, nb: 1, cells: vec![Cell::Black] };
        assert_eq!(*render_pgm(&one).last().unwrap(), 0);
        let parsed = parse_pgm(&render_pgm(&one)).unwrap();
        assert_eq!(parsed.cells().unwrap(), vec![Cell::Black]);
        assert_eq!(emit_csv(&grid).lines().count(), 5);
        assert!(parse_pgm(b"P5\n2 2\n255\n\x00").is_err());
        assert!(parse_pgm(b"P2\n1 1\n255\n0").is_err());
    }

    #[test]
    fn spot_classes() {
        assert_eq!(classify_cell(0.5, 0.5, 1.0), Cell::Black);
        assert_eq!(classify_cell(0.05, 0.4, 1.0), Cell::Gray);
        assert_eq!(classify_cell(0.4, 0.05, 1.0), Cell::Gray);
        assert_eq!(classify_cell(1.5, 0.3, 1.0), Cell::White);
        assert_eq!(classify_cell(0.1, 0.2, 0.9), Cell::White);
        assert!(cell_bound(0.05, 0.4, 0.99).unwrap() > 0.0);
        assert_eq!(classify_cell(0.4, 0.05, 0.99), Cell::Gray);
        assert_eq!(classify_cell(0.02, 0.1, 0.7), Cell::White);
    }

    #[test]
    fn g_format() {
        assert_eq!(format_g10(0.05), "0.05");
        assert_eq!(format_g10(0.055000000000000007), "0.055");
        assert_eq!(format_g10(-0.10909090909090909), "-0.1090909091");
        assert_eq!(format_g10(1.0), "1");
        assert_eq!(format_g10(1234567890123.0), "1.23456789e+12");
        assert_eq!(format_g10(0.000012345), "1.2345e-05");
        assert_eq!(format_g10(0.0001), "0.0001");
        assert_eq!(format_g10(0.0), "0");
    }

    #[test]
    fn window_checks() {
        assert!(scan_region(1.0, Window::default(), 1, 5).is_err());
        let w = Window { a_min: 0.0, a_max: 5.0, b_min: 0.0, b_max: 1.0 };
        assert!(scan_region(1.0, w, 4, 4).is_err());
        let g = scan_region(1.0, Window::default(), 4, 3).unwrap();
        assert_eq!(g.cells.len(), 12);
        assert!((g.b_center(0) - (2.0 - 1.0 / 3.0)).abs() < 1e-15);
        assert_eq!(g.cell_at(0.1, 1.9), Some((0, 0)));
    }
}
