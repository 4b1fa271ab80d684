//! Static SVG rendering of instances and solutions.

use crate::geom::shape::Shape;
use crate::geom::BBox;
use crate::instance::Instance;
use crate::num::rat_to_f64;
use std::fmt::Write;

/// Renders the instance with s, t and the chosen obstacle subset
/// highlighted. The viewport fits the content with a 5% margin.
pub fn render(instance: &Instance, chosen: &[u32]) -> String {
    let mut boxes: Vec<BBox> = instance.obstacles.iter().map(|o| o.shape.bbox()).collect();
    boxes.extend(BBox::of_points([&instance.s, &instance.t]));
    let (mut min_x, mut min_y, mut max_x, mut max_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for b in &boxes {
        min_x = min_x.min(rat_to_f64(&b.min_x));
        min_y = min_y.min(rat_to_f64(&b.min_y));
        max_x = max_x.max(rat_to_f64(&b.max_x));
        max_y = max_y.max(rat_to_f64(&b.max_y));
    }
    let w = (max_x - min_x).max(1e-6);
    let h = (max_y - min_y).max(1e-6);
    let margin = 0.05 * w.max(h);
    let view = format!(
        "{} {} {} {}",
        min_x - margin,
        -(max_y + margin),
        w + 2.0 * margin,
        h + 2.0 * margin
    );
    let stroke = (w.max(h) / 200.0).max(1e-3);
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{view}" width="800" height="800">"#
    )
    .unwrap();
    // Flip y so the geometry reads with y pointing up.
    writeln!(out, r#"<g transform="scale(1,-1)">"#).unwrap();
    for ob in &instance.obstacles {
        let picked = chosen.contains(&ob.id);
        let sw = if picked { stroke * 2.0 } else { stroke };
        let color = if picked { "#d62728" } else { "#1f77b4" };
        match &ob.shape {
            Shape::Segment { a, b } => {
                let (ax, ay) = a.to_f64();
                let (bx, by) = b.to_f64();
                writeln!(
                    out,
                    r#"<line data-obstacle="{}" x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="{color}" stroke-width="{sw}"/>"#,
                    ob.id
                )
                .unwrap();
            }
            Shape::Polyline { points } => {
                let pts: Vec<String> = points
                    .iter()
                    .map(|p| {
                        let (x, y) = p.to_f64();
                        format!("{x},{y}")
                    })
                    .collect();
                writeln!(
                    out,
                    r#"<polyline data-obstacle="{}" points="{}" fill="none" stroke="{color}" stroke-width="{sw}"/>"#,
                    ob.id,
                    pts.join(" ")
                )
                .unwrap();
            }
            Shape::Circle { center, radius } => {
                let (cx, cy) = center.to_f64();
                writeln!(
                    out,
                    r#"<circle data-obstacle="{}" cx="{cx}" cy="{cy}" r="{}" fill="none" stroke="{color}" stroke-width="{sw}"/>"#,
                    ob.id,
                    rat_to_f64(radius)
                )
                .unwrap();
            }
            Shape::Disk { center, radius } => {
                let (cx, cy) = center.to_f64();
                writeln!(
                    out,
                    r#"<circle data-obstacle="{}" cx="{cx}" cy="{cy}" r="{}" fill="{color}" fill-opacity="0.25" stroke="{color}" stroke-width="{sw}"/>"#,
                    ob.id,
                    rat_to_f64(radius)
                )
                .unwrap();
            }
        }
    }
    for (p, label) in [(&instance.s, "s"), (&instance.t, "t")] {
        let (x, y) = p.to_f64();
        writeln!(
            out,
            r#"<circle data-terminal="{label}" cx="{x}" cy="{y}" r="{}" fill="#2ca02c"/>"#,
            stroke * 2.5
        )
        .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, "</svg>").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::unit_triangle;

    #[test]
    fn svg_structure() {
        let inst = unit_triangle();
        let svg = render(&inst, &[0, 2]);
        assert!(svg.starts_with("<?xml"));
        assert_eq!(svg.matches("data-obstacle=").count(), inst.obstacles.len());
        assert_eq!(svg.matches("data-terminal=").count(), 2);
        assert_eq!(svg.matches("<svg").count(), 1);
        assert_eq!(svg.matches("</svg>").count(), 1);
        // Well-formed enough: tags balance.
        let opens = svg.matches("<g").count();
        let closes = svg.matches("</g>").count();
        assert_eq!(opens, closes);
    }
}
