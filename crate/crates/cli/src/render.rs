//! SVG rendering of a terrain and a coverage route.

use std::fmt::Write as _;

use slopecover::coverage::CoveragePath;
use slopecover::HeightGrid;

const OBSTACLE_FILL: &str = "rgb(255,0,0)";
const ROUTE_STROKE: &str = "rgb(31,119,180)";
const TREE_STROKE: &str = "rgb(255,160,0)";

pub struct RenderOptions {
    /// Side of one fine cell in SVG user units.
    pub cell_size: u32,
    /// Overlay the spanning-tree edges recovered from the route.
    pub show_tree: bool,
}

/// Height-shaded grid (darkest at the terrain minimum, lightest at the
/// maximum), obstacles in solid red, and the route as one polyline through
/// fine-cell centers. A closed route repeats its first point at the end.
pub fn render_svg(grid: &HeightGrid, path: &CoveragePath, opts: &RenderOptions) -> String {
    let cs = opts.cell_size.max(1) as usize;
    let (width, height) = (grid.cols() * cs, grid.rows() * cs);
    let (lo, hi) = grid
        .heights()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &h| {
            (lo.min(h), hi.max(h))
        });
    let span = hi - lo;

    let mut svg = String::with_capacity(grid.rows() * grid.cols() * 64 + path.len() * 12);
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">"
    );

    svg.push_str("<g id=\"terrain\" shape-rendering=\"crispEdges\">\n");
    for r in 0..grid.rows() {
        for c in 0..grid.cols() {
            let fill = if grid.is_obstacle(r, c) {
                OBSTACLE_FILL.to_owned()
            } else {
                let t = if span > 0.0 {
                    (grid.height(r, c) - lo) / span
                } else {
                    0.5
                };
                let g = (48.0 + t * 192.0).round() as u8;
                format!("rgb({g},{g},{g})")
            };
            let _ = writeln!(
                svg,
                "<rect x=\"{}\" y=\"{}\" width=\"{cs}\" height=\"{cs}\" fill=\"{fill}\"/>",
                c * cs,
                r * cs
            );
        }
    }
    svg.push_str("</g>\n");

    let center = |row: usize, col: usize| (col * cs + cs / 2, row * cs + cs / 2);
    if opts.show_tree {
        let _ = writeln!(
            svg,
            "<g id=\"tree\" stroke=\"{TREE_STROKE}\" stroke-width=\"{}\">",
            (cs / 4).max(1)
        );
        for ((ar, ac), (br, bc)) in path.crossed_mega_edges() {
            // mega-cell centers sit on fine-cell corners
            let (x1, y1) = ((2 * ac + 1) * cs, (2 * ar + 1) * cs);
            let (x2, y2) = ((2 * bc + 1) * cs, (2 * br + 1) * cs);
            let _ = writeln!(
                svg,
                "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>"
            );
        }
        svg.push_str("</g>\n");
    }

    let mut points: Vec<(usize, usize)> = path.cells.iter().map(|c| center(c.row, c.col)).collect();
    if path.closed {
        if let Some(&first) = points.first() {
            points.push(first);
        }
    }
    let points = points
        .iter()
        .map(|(x, y)| format!("{x},{y}"))
        .collect::<Vec<_>>()
        .join(" ");
    let _ = writeln!(
        svg,
        "<polyline id=\"route\" fill=\"none\" stroke=\"{ROUTE_STROKE}\" stroke-width=\"{}\" stroke-linejoin=\"round\" points=\"{points}\"/>",
        (cs / 6).max(1)
    );
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use slopecover::coverage::FineCell;

    #[test]
    fn single_mega_cell() {
        let grid = HeightGrid::new(
            2,
            2,
            vec![1.0, 2.0, 3.0, 4.0],
            vec![false, false, false, true],
            1.0,
        )
        .unwrap();
        let path = CoveragePath {
            cells: vec![
                FineCell::new(0, 0),
                FineCell::new(0, 1),
                FineCell::new(1, 1),
                FineCell::new(1, 0),
            ],
            closed: true,
            sacrificed: 0,
        };
        let svg = render_svg(
            &grid,
            &path,
            &RenderOptions {
                cell_size: 10,
                show_tree: false,
            },
        );
        assert_eq!(svg.matches("<rect").count(), 4);
        assert_eq!(svg.matches(OBSTACLE_FILL).count(), 1);
        assert!(svg.contains("rgb(48,48,48)"));
        assert!(svg.contains("points=\"5,5 15,5 15,15 5,15 5,5\""));
        assert!(!svg.contains("<line"));
    }
}
