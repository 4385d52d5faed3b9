//! SVG rendering of placed cells with geodesic edges.

use std::fmt::Write;

use super::DiscPoint;

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub vertices: Vec<DiscPoint>,
    pub label: Option<String>,
    /// Index into the palette.
    pub state: Option<u32>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Scene {
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Radius of the unit disc in pixels.
    pub radius_px: f64,
    pub stroke_width: f64,
    pub labels: bool,
    pub palette: Vec<String>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            radius_px: 400.0,
            stroke_width: 1.0,
            labels: false,
            palette: [
                "#ffffff", "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
            ]
            .map(String::from)
            .to_vec(),
        }
    }
}

struct Frame {
    r: f64,
    margin: f64,
}

impl Frame {
    fn xy(&self, p: DiscPoint) -> (f64, f64) {
        (
            self.margin + self.r * (1.0 + p.x),
            self.margin + self.r * (1.0 - p.y),
        )
    }
}

/// Appends the geodesic from `a` to `b` as a path segment.
fn geodesic(out: &mut String, frame: &Frame, a: DiscPoint, b: DiscPoint) {
    let (bx, by) = frame.xy(b);
    let cross = a.x * b.y - a.y * b.x;
    if cross.abs() < 1e-12 {
        let _ = write!(out, " L{bx:.3},{by:.3}");
        return;
    }
    // the circle through a and b orthogonal to the unit circle:
    // |c|^2 = r^2 + 1 and 2 a·c = |a|^2 + 1, likewise for b
    let (ka, kb) = (
        (a.x * a.x + a.y * a.y + 1.0) / 2.0,
        (b.x * b.x + b.y * b.y + 1.0) / 2.0,
    );
    let cx = (ka * b.y - kb * a.y) / cross;
    let cy = (a.x * kb - b.x * ka) / cross;
    let radius = (cx * cx + cy * cy - 1.0).sqrt() * frame.r;
    let turn = (a.x - cx) * (b.y - cy) - (a.y - cy) * (b.x - cx);
    let sweep = u8::from(turn < 0.0);
    let _ = write!(out, " A{radius:.3},{radius:.3} 0 0 {sweep} {bx:.3},{by:.3}");
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// One `<path>` per cell inside the boundary circle.
pub fn render_svg(scene: &Scene, options: &RenderOptions) -> String {
    let frame = Frame {
        r: options.radius_px,
        margin: options.stroke_width * 2.0,
    };
    let size = 2.0 * (frame.r + frame.margin);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size:.0}" height="{size:.0}" viewBox="0 0 {size:.3} {size:.3}">"#
    );
    let c = frame.margin + frame.r;
    let _ = writeln!(
        out,
        r#"<circle cx="{c:.3}" cy="{c:.3}" r="{:.3}" fill="none" stroke="black" stroke-width="{}"/>"#,
        frame.r, options.stroke_width
    );
    for cell in &scene.cells {
        let Some(&first) = cell.vertices.first() else {
            continue;
        };
        let (x0, y0) = frame.xy(first);
        let mut d = format!("M{x0:.3},{y0:.3}");
        for (i, &a) in cell.vertices.iter().enumerate() {
            let b = cell.vertices[(i + 1) % cell.vertices.len()];
            geodesic(&mut d, &frame, a, b);
        }
        d.push_str(" Z");
        let fill = cell
            .state
            .and_then(|s| options.palette.get(s as usize))
            .map_or("none", String::as_str);
        let _ = writeln!(
            out,
            r#"<path d="{d}" fill="{fill}" stroke="black" stroke-width="{}"/>"#,
            options.stroke_width
        );
    }
    if options.labels {
        for cell in &scene.cells {
            let Some(label) = &cell.label else { continue };
            let n = cell.vertices.len().max(1) as f64;
            let centroid = DiscPoint {
                x: cell.vertices.iter().map(|v| v.x).sum::<f64>() / n,
                y: cell.vertices.iter().map(|v| v.y).sum::<f64>() / n,
            };
            let span = cell
                .vertices
                .iter()
                .map(|v| v.euclid_dist(centroid))
                .fold(0.0, f64::max);
            let font = (span * frame.r * 0.45).max(0.5);
            let (x, y) = frame.xy(centroid);
            let _ = writeln!(
                out,
                r#"<text x="{x:.3}" y="{y:.3}" font-size="{font:.3}" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
                escape(label)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::place;
    use crate::tiling::Tiling;

    fn heptagrid_scene(depth: u32) -> Scene {
        let cells = Tiling::Heptagrid
            .ball(depth)
            .into_iter()
            .map(|c| {
                let poly = place(Tiling::Heptagrid, c).unwrap();
                Cell {
                    vertices: poly.vertices,
                    label: Some(c.to_string()),
                    state: None,
                }
            })
            .collect();
        Scene { cells }
    }

    #[test]
    fn empty_scene_is_just_the_disc() {
        let svg = render_svg(&Scene::default(), &RenderOptions::default());
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches("<path").count(), 0);
    }

    #[test]
    fn one_path_per_cell_with_labels() {
        let opts = RenderOptions {
            labels: true,
            ..RenderOptions::default()
        };
        let svg = render_svg(&heptagrid_scene(2), &opts);
        assert_eq!(svg.matches("<path").count(), 29);
        assert_eq!(svg.matches("<text").count(), 29);
        assert!(svg.contains(">3:2<"));
        assert_eq!(svg, render_svg(&heptagrid_scene(2), &opts));
    }

    #[test]
    fn palette_is_used() {
        let mut scene = heptagrid_scene(0);
        scene.cells[0].state = Some(1);
        let opts = RenderOptions {
            palette: vec!["red".into(), "teal".into()],
            ..RenderOptions::default()
        };
        assert!(render_svg(&scene, &opts).contains(r#"fill="teal""#));
    }

    /// Picks the centre SVG would use for `A r r 0 0 sweep` from `a` to `b`
    /// in screen coordinates.
    fn svg_arc_centre(a: (f64, f64), b: (f64, f64), r: f64, sweep: bool) -> (f64, f64) {
        let (mx, my) = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let half = dx.hypot(dy) / 2.0;
        let h = (r * r - half * half).sqrt() / (2.0 * half);
        // screen angles grow clockwise; a minor arc drawn with the sweep
        // flag set keeps its centre on the right of the chord
        let (nx, ny) = (-dy * h, dx * h);
        if sweep {
            (mx + nx, my + ny)
        } else {
            (mx - nx, my - ny)
        }
    }

    #[test]
    fn arcs_bow_towards_the_origin() {
        let poly = place(Tiling::Heptagrid, crate::TileCoord::Central).unwrap();
        let frame = Frame {
            r: 100.0,
            margin: 0.0,
        };
        let (a, b) = (poly.vertices[0], poly.vertices[1]);
        let mut d = String::new();
        geodesic(&mut d, &frame, a, b);
        let parts: Vec<&str> = d.split([' ', ',', 'A']).filter(|s| !s.is_empty()).collect();
        let r: f64 = parts[0].parse().unwrap();
        let sweep = parts[4] == "1";
        let (cx, cy) = svg_arc_centre(frame.xy(a), frame.xy(b), r, sweep);
        // side 1 faces +x, so the circle's centre lies beyond it
        assert!(cx > frame.xy(a).0 && (cy - 100.0).abs() < 1e-6, "{cx} {cy}");
    }
}
