use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::Write;

use num_complex::Complex64;

use super::{output::fmt_num, CliError, PlotArgs};
use crate::envelope::{derive_params, radius_by_crossing};
use crate::oracle::extremal_for;
use crate::regions::{boundary, RegionSpec};

const CURVE_SAMPLES: usize = 720;
const BOUNDARY_SAMPLES: usize = 2048;
/// Pixel coordinates are clamped to this magnitude.
const PIXEL_CLAMP: f64 = 1e5;

struct View {
    min: Complex64,
    span: f64,
    size: f64,
}

impl View {
    /// Square window around `points` with 15% padding.
    fn around(points: &[Complex64], size: u32) -> Self {
        let (mut lo, mut hi) = (points[0], points[0]);
        for p in points {
            lo = Complex64::new(lo.re.min(p.re), lo.im.min(p.im));
            hi = Complex64::new(hi.re.max(p.re), hi.im.max(p.im));
        }
        let span = (hi.re - lo.re).max(hi.im - lo.im).max(1e-3) * 1.3;
        let mid = (lo + hi) / 2.0;
        View {
            min: mid - Complex64::new(span / 2.0, span / 2.0),
            span,
            size: size as f64,
        }
    }

    fn px(&self, w: Complex64) -> (f64, f64) {
        let x = (w.re - self.min.re) / self.span * self.size;
        let y = (self.min.im + self.span - w.im) / self.span * self.size;
        (x.clamp(-PIXEL_CLAMP, PIXEL_CLAMP), y.clamp(-PIXEL_CLAMP, PIXEL_CLAMP))
    }

    fn path(&self, points: &[Complex64], closed: bool) -> String {
        let mut d = String::new();
        for (i, p) in points.iter().enumerate() {
            let (x, y) = self.px(*p);
            let _ = write!(d, "{}{x:.3},{y:.3}", if i == 0 { "M" } else { " L" });
        }
        if closed {
            d.push_str(" Z");
        }
        d
    }
}

/// Renders the region boundary, the image of `|z| = r*` under `zf'/f` of
/// the matching extremal, and the contact point.
pub fn render(
    class_family: crate::envelope::Family,
    b: f64,
    c: f64,
    region: &RegionSpec,
    size: u32,
) -> Result<String, CliError> {
    let class = derive_params(class_family, b, c)?;
    let ext = extremal_for(&class, region)?;
    let r_star = radius_by_crossing(&class, region)?
        .radius()
        .ok_or_else(|| CliError::bad_input("the property holds on the whole disk; nothing to plot"))?;
    let curve: Vec<Complex64> = (0..CURVE_SAMPLES)
        .map(|k| {
            ext.f.log_deriv(Complex64::from_polar(
                r_star,
                2.0 * PI * k as f64 / CURVE_SAMPLES as f64,
            ))
        })
        .collect::<Result<_, _>>()?;
    let contact = ext.f.log_deriv(Complex64::new(ext.contact.sign() * r_star, 0.0))?;
    let edge: Vec<Complex64> = (0..BOUNDARY_SAMPLES)
        .map(|k| boundary(region, 2.0 * PI * k as f64 / BOUNDARY_SAMPLES as f64))
        .collect();

    let mut anchors = curve.clone();
    anchors.extend([contact, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
    let view = View::around(&anchors, size);
    let s = view.size;
    let (ox, oy) = view.px(Complex64::new(0.0, 0.0));
    let (cx, cy) = view.px(contact);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(
        svg,
        r#"<clipPath id="frame"><rect x="0" y="0" width="{size}" height="{size}"/></clipPath>"#
    );
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{size}" height="{size}" fill="white"/>"#
    );
    let _ = writeln!(svg, r#"<g clip-path="url(#frame)">"#);
    let _ = writeln!(
        svg,
        r##"<line x1="0" y1="{oy:.3}" x2="{s:.3}" y2="{oy:.3}" stroke="#bbbbbb" stroke-width="1"/>"##
    );
    let _ = writeln!(
        svg,
        r##"<line x1="{ox:.3}" y1="0" x2="{ox:.3}" y2="{s:.3}" stroke="#bbbbbb" stroke-width="1"/>"##
    );
    let _ = writeln!(
        svg,
        r##"<path id="boundary" d="{}" fill="#e8f0fb" stroke="#1f5fa8" stroke-width="1.5"/>"##,
        view.path(&edge, true)
    );
    let _ = writeln!(
        svg,
        r##"<path id="image" d="{}" fill="none" stroke="#c0392b" stroke-width="1.5"/>"##,
        view.path(&curve, true)
    );
    let _ = writeln!(
        svg,
        r##"<circle id="contact" cx="{cx:.3}" cy="{cy:.3}" r="4" fill="#000000"/>"##
    );
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(
        svg,
        r##"<text x="8" y="18" font-family="monospace" font-size="12" fill="#000000">{} b={} c={} {} r*={} contact w={}{:+}i</text>"##,
        class.family(),
        fmt_num(b),
        fmt_num(class.c().unwrap_or(0.0)),
        region,
        fmt_num(r_star),
        fmt_num(contact.re),
        round_im(contact.im),
    );
    let _ = writeln!(svg, "</svg>");
    Ok(svg)
}

fn round_im(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        0.0
    } else {
        super::output::round12(x)
    }
}

pub(super) fn cmd_plot(a: &PlotArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if !(16..=8192).contains(&a.size) {
        return Err(CliError::bad_input(format!("--size {} is outside [16, 8192]", a.size)));
    }
    let region = a.region.spec()?;
    let svg = render(a.class.family, a.class.b, a.class.c, &region, a.size)?;
    std::fs::write(&a.output, svg)
        .map_err(|e| CliError::bad_input(format!("cannot write {}: {e}", a.output.display())))?;
    writeln!(out, "wrote {}", a.output.display()).map_err(CliError::io)
}
