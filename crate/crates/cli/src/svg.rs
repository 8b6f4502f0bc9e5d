//! Sign-pattern plots of grid functions.

use courant_core::geometry::RasterDomain;
use std::fmt::Write;

const POSITIVE: &str = "#c0392b";
const NEGATIVE: &str = "#2471a3";

/// SVG of a planar grid function: one fill for positive cells, another for
/// negative ones; zero and outside cells stay white. The first raster axis
/// runs left to right, the second bottom to top.
pub fn sign_pattern(domain: &RasterDomain, values: &[f64], labels: &[Option<u32>], title: &str) -> String {
    let (nx, ny) = (domain.shape()[0], domain.shape()[1]);
    let scale = (640 / nx.max(ny)).max(1);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {nx} {ny}" shape-rendering="crispEdges">"#,
        nx * scale,
        ny * scale
    );
    let _ = writeln!(out, "<title>{title}</title>");
    let _ = writeln!(out, r#"<rect width="{nx}" height="{ny}" fill="white"/>"#);
    for i in 0..nx {
        // runs of equal colour along the second axis
        let mut j = 0;
        while j < ny {
            let colour = |j: usize| {
                let idx = i * ny + j;
                labels[idx].map(|_| if values[idx] > 0.0 { POSITIVE } else { NEGATIVE })
            };
            let Some(c) = colour(j) else {
                j += 1;
                continue;
            };
            let start = j;
            while j < ny && colour(j) == Some(c) {
                j += 1;
            }
            let _ = writeln!(out, r#"<rect x="{i}" y="{}" width="1" height="{}" fill="{c}"/>"#, ny - j, j - start);
        }
    }
    out.push_str("</svg>\n");
    out
}
