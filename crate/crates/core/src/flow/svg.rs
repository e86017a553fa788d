//! SVG rendering of recorded trace segments, one chart per polygon.

use std::fmt::Write;

use crate::linalg::Scalar;
use crate::model::PolygonSurface;

use super::TraceOutcome;

const CHART: f64 = 320.0;
const MARGIN: f64 = 16.0;
const COLORS: [&str; 4] = ["#1b7837", "#c51b7d", "#2166ac", "#b35806"];

/// Draws every polygon and, inside it, the segments the traces recorded there.
/// Coordinates are the recorded ones; nothing is re-traced.
pub fn render_svg<S: Scalar>(surface: &PolygonSurface<S>, traces: &[&TraceOutcome<S>]) -> String {
    let polys = surface.polygons();
    let width = polys.len() as f64 * (CHART + MARGIN) + MARGIN;
    let height = CHART + 2.0 * MARGIN;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    for (i, poly) in polys.iter().enumerate() {
        let pts: Vec<(f64, f64)> = poly.vertices.iter().map(|v| v.approx()).collect();
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for &(x, y) in &pts {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        let scale = CHART / (x1 - x0).max(y1 - y0);
        let left = MARGIN + i as f64 * (CHART + MARGIN);
        // flip y so the picture is upright
        let map = |(x, y): (f64, f64)| (left + (x - x0) * scale, MARGIN + (y1 - y) * scale);
        let outline: Vec<String> = pts
            .iter()
            .map(|&p| {
                let (x, y) = map(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(out, r#"  <g id="polygon-{i}">"#);
        let _ = writeln!(out, r#"    <title>{}</title>"#, poly.label);
        let _ = writeln!(
            out,
            r##"    <polygon points="{}" fill="#f7f7f7" stroke="#404040" stroke-width="1"/>"##,
            outline.join(" ")
        );
        for (k, trace) in traces.iter().enumerate() {
            let color = COLORS[k % COLORS.len()];
            for seg in trace.segments.iter().filter(|s| s.polygon == i) {
                let (ax, ay) = map(seg.start.approx());
                let (bx, by) = map(seg.end.approx());
                let _ = writeln!(
                    out,
                    r#"    <line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}" stroke="{color}" stroke-width="1"/>"#
                );
            }
        }
        let _ = writeln!(out, "  </g>");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_field, ExtContext};
    use crate::flow::{central_points, trace_ray};
    use crate::model::HeptagonModel;

    #[test]
    fn one_chart_per_polygon_and_one_line_per_segment() {
        let m = HeptagonModel::new(&ExtContext::new(&make_field(7).unwrap())).unwrap();
        let s = m.surface();
        let [c1, _] = central_points(&m);
        let d = s.polygon(0).edge(2);
        let t = trace_ray(s, &c1, &d, 6).unwrap();
        let svg = render_svg(s, &[&t]);
        assert_eq!(svg.matches("<polygon ").count(), 2);
        assert_eq!(svg.matches("<line ").count(), t.segments.len());
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }
}
