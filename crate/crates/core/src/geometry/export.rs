//! SVG rendering of patches.

use std::fmt::Write as _;

use super::patch::Patch;

#[derive(Clone, Debug)]
pub struct SvgOptions {
    pub labels: bool,
    pub punctures: bool,
    /// Pixels per unit length.
    pub scale: f64,
    pub fills: [String; 2],
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            labels: false,
            punctures: false,
            scale: 40.0,
            fills: ["#e9b949".into(), "#3d6fa8".into()],
        }
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// One `<polygon>` per tile in label order. The y axis points up.
pub fn to_svg(patch: &Patch, opts: &SvgOptions) -> String {
    let pts: Vec<[(f64, f64); 3]> = patch
        .tiles
        .iter()
        .map(|(_, t)| t.vertices().map(|v| {
            let (x, y) = v.to_f64();
            (x * opts.scale, -y * opts.scale)
        }))
        .collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for tri in &pts {
        for &(x, y) in tri {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
    }
    let pad = opts.scale * 0.25;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        num(x0 - pad),
        num(y0 - pad),
        num(x1 - x0 + 2.0 * pad),
        num(y1 - y0 + 2.0 * pad)
    );
    for ((label, tile), tri) in patch.tiles.iter().zip(&pts) {
        let p: Vec<String> = tri.iter().map(|&(x, y)| format!("{},{}", num(x), num(y))).collect();
        let _ = writeln!(
            s,
            r##"<polygon data-label="{label}" points="{}" fill="{}" stroke="#222" stroke-width="{}"/>"##,
            p.join(" "),
            opts.fills[tile.proto as usize],
            num(opts.scale / 40.0)
        );
    }
    if opts.punctures || opts.labels {
        for (label, tile) in &patch.tiles {
            let (x, y) = tile.puncture().to_f64();
            let (x, y) = (num(x * opts.scale), num(-y * opts.scale));
            if opts.punctures {
                let _ = writeln!(s, r##"<circle cx="{x}" cy="{y}" r="{}" fill="#c0392b"/>"##, num(opts.scale / 20.0));
            }
            if opts.labels {
                let _ = writeln!(
                    s,
                    r#"<text x="{x}" y="{y}" font-size="{}" text-anchor="middle">{label}</text>"#,
                    num(opts.scale / 4.0)
                );
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::patch::iterate;

    #[test]
    fn polygon_counts() {
        for (n, want) in [(1, 5), (2, 25)] {
            let svg = to_svg(&iterate(0, n).unwrap(), &SvgOptions::default());
            assert_eq!(svg.matches("<polygon").count(), want);
        }
    }

    #[test]
    fn number_format() {
        assert_eq!(num(1.5), "1.5");
        assert_eq!(num(-0.0000000000001), "0");
        assert_eq!(num(2.0), "2");
    }
}
