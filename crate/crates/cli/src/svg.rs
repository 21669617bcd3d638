//! SVG 1.1 rendering of the two chart polygons: outlines, lattice points,
//! facet labels, sink/source markers, and highlighted PL vertices.
//!
//! All coordinates are integers (40 px per lattice unit), so the output is
//! deterministic byte for byte.

use std::fmt::Write;

use mutsurf::polyptych::{mutate, FaceTag, PLPolytope};
use mutsurf::Int;

const UNIT: i64 = 40;
const MARGIN: i64 = 60;

struct Frame {
    offset_x: i64,
    min_x: i64,
    max_y: i64,
}

impl Frame {
    fn place(&self, x: i64, y: i64) -> (i64, i64) {
        (self.offset_x + (x - self.min_x) * UNIT + MARGIN, (self.max_y - y) * UNIT + MARGIN)
    }

    /// Doubled lattice coordinates, for edge midpoints.
    fn place_half(&self, x2: i64, y2: i64) -> (i64, i64) {
        (
            self.offset_x + (x2 - 2 * self.min_x) * (UNIT / 2) + MARGIN,
            (2 * self.max_y - y2) * (UNIT / 2) + MARGIN,
        )
    }
}

fn to_i64(v: &Int) -> i64 {
    i64::try_from(v).expect("chart coordinates fit in i64")
}

/// Renders both chart polygons of a valid polytope.
pub fn render_charts(p: &PLPolytope) -> String {
    let ss = p.sink_source();
    let pl: Vec<_> = p.pl_vertices();

    let mut body = String::new();
    let mut offset_x = 0i64;
    let mut total_w = 0i64;
    let mut total_h = 0i64;

    for (chart_no, polygon) in [(1u8, p.chart1()), (2, p.chart2())] {
        let xs: Vec<i64> = polygon.vertices().iter().map(|v| to_i64(&v.x)).collect();
        let ys: Vec<i64> = polygon.vertices().iter().map(|v| to_i64(&v.y)).collect();
        let (min_x, max_x) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
        let (min_y, max_y) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
        let frame = Frame { offset_x, min_x, max_y };
        let width = (max_x - min_x) * UNIT + 2 * MARGIN;
        let height = (max_y - min_y) * UNIT + 2 * MARGIN;
        total_w = offset_x + width;
        total_h = total_h.max(height + MARGIN);

        writeln!(body, "  <g class=\"chart chart-{chart_no}\">").unwrap();
        let (tx, ty) = frame.place(min_x, max_y);
        writeln!(
            body,
            "    <text class=\"chart-title\" x=\"{tx}\" y=\"{}\" font-size=\"18\">chart {chart_no}</text>",
            ty - 28
        )
        .unwrap();

        let points: Vec<String> = polygon
            .vertices()
            .iter()
            .map(|v| {
                let (x, y) = frame.place(to_i64(&v.x), to_i64(&v.y));
                format!("{x},{y}")
            })
            .collect();
        writeln!(
            body,
            "    <polygon class=\"outline\" points=\"{}\" fill=\"#eef4ff\" stroke=\"#224\" stroke-width=\"2\"/>",
            points.join(" ")
        )
        .unwrap();

        // Facet labels at edge midpoints, nudged inward.
        for (d, images) in p.facet_map().iter().enumerate() {
            let edges = if chart_no == 1 { &images.chart1_edges } else { &images.chart2_edges };
            for &e in edges {
                let f = &polygon.facets()[e];
                let a = &polygon.vertices()[f.from];
                let b = &polygon.vertices()[f.to];
                let (mx, my) = frame.place_half(
                    to_i64(&a.x) + to_i64(&b.x),
                    to_i64(&a.y) + to_i64(&b.y),
                );
                let nx = to_i64(&f.normal.0).signum();
                let ny = to_i64(&f.normal.1).signum();
                writeln!(
                    body,
                    "    <text class=\"facet-label\" x=\"{}\" y=\"{}\" font-size=\"14\" fill=\"#824\">D{}</text>",
                    mx + nx * 14 - 7,
                    my - ny * 14 + 5,
                    d + 1
                )
                .unwrap();
            }
        }

        for pt in polygon.lattice_points() {
            let (x, y) = frame.place(to_i64(&pt.x), to_i64(&pt.y));
            writeln!(
                body,
                "    <circle class=\"lattice-point\" cx=\"{x}\" cy=\"{y}\" r=\"4\" fill=\"#224\"/>"
            )
            .unwrap();
        }

        for v in &pl {
            let w = if chart_no == 1 { &v.chart1 } else { &v.chart2 };
            let (x, y) = frame.place(to_i64(&w.x), to_i64(&w.y));
            writeln!(
                body,
                "    <circle class=\"pl-vertex\" cx=\"{x}\" cy=\"{y}\" r=\"9\" fill=\"none\" stroke=\"#0a7\" stroke-width=\"3\"/>"
            )
            .unwrap();
        }

        for (tag, name) in [(&ss.sink, "sink"), (&ss.source, "source")] {
            let (x2, y2) = match tag {
                FaceTag::Divisor(i) => {
                    let images = &p.facet_map()[*i];
                    let edges = if chart_no == 1 { &images.chart1_edges } else { &images.chart2_edges };
                    let f = &polygon.facets()[edges[0]];
                    let a = &polygon.vertices()[f.from];
                    let b = &polygon.vertices()[f.to];
                    (to_i64(&a.x) + to_i64(&b.x), to_i64(&a.y) + to_i64(&b.y))
                }
                FaceTag::Nodal(v) => {
                    let w = if chart_no == 1 {
                        v.chart1.clone()
                    } else {
                        mutate(p.s(), &v.chart1)
                    };
                    (2 * to_i64(&w.x), 2 * to_i64(&w.y))
                }
            };
            let (x, y) = frame.place_half(x2, y2);
            let dy = if name == "sink" { -16 } else { 26 };
            writeln!(
                body,
                "    <text class=\"{name}-marker\" x=\"{}\" y=\"{}\" font-size=\"13\" fill=\"#06c\">{name}</text>",
                x - 18,
                y + dy
            )
            .unwrap();
        }

        writeln!(body, "  </g>").unwrap();
        offset_x = total_w + MARGIN;
    }

    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{total_w}\" height=\"{total_h}\" \
viewBox=\"0 0 {total_w} {total_h}\">\n{body}</svg>\n"
    )
}
