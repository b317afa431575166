//! Float-only artifacts: a CSV sweep along the cone and a sign heatmap of
//! the reduced extremal numerator. Verdicts in the CSV come from the exact path.

use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use sasaki_core::algebra::scalar::rat_to_f64;
use sasaki_core::algebra::{ratio, Interval};
use sasaki_core::cone::{ehf, is_extremal, EhfKind};
use sasaki_core::extremal::futaki_obstruction;
use sasaki_core::{BiPoly, FloatPoly, Rat};

use crate::error::CliResult;
use crate::scenario::Scenario;

fn cell(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.12e}")
    } else {
        String::new()
    }
}

/// `c, extremal, obstruction_value, HS` on `rows` evenly spaced interior points.
pub fn cone_csv(sc: &Scenario) -> CliResult<String> {
    let n = sc.output.csv_rows.max(1) as i64;
    let den = n + 1;
    let lines = (1..=n)
        .into_par_iter()
        .map(|j| {
            let c = ratio(2 * j - den, den);
            let extremal = is_extremal(&sc.setup, &c, &sc.p)?;
            let ob = futaki_obstruction(&sc.setup, &c, &sc.p, sc.obstruction)?.value.to_f64();
            let hs = rat_to_f64(&ehf(&sc.setup, &c, EhfKind::Sasaki, &sc.p)?);
            Ok(format!("{},{},{},{}\n", cell(rat_to_f64(&c)), extremal, cell(ob), cell(hs)))
        })
        .collect::<CliResult<Vec<String>>>()?;
    let mut out = String::from("c,extremal,obstruction_value,HS\n");
    out.extend(lines);
    Ok(out)
}

/// Scales the coefficients exactly so the largest has magnitude one, then
/// converts each `z`-coefficient to a float polynomial in `c`.
fn float_rows(p: &BiPoly) -> Vec<FloatPoly> {
    let big = p
        .coeffs()
        .iter()
        .flat_map(|q| q.coeffs().iter())
        .map(|r| r.abs())
        .fold(Rat::zero(), |a, b| if b > a { b } else { a });
    if big.is_zero() {
        return Vec::new();
    }
    p.coeffs().iter().map(|q| q.scale(&(Rat::from_integer(1.into()) / &big)).to_f64()).collect()
}

const POSITIVE: &str = "#4575b4";
const NEGATIVE: &str = "#d73027";

/// Sign of `P(z, c)` on a `grid x grid` lattice: `c` left to right in
/// `(-1, 1)`, `z` top to bottom from 1 to -1. Dashed lines mark the extremal
/// set boundary.
pub fn sign_heatmap(p: &BiPoly, boundaries: &[&Interval], grid: usize) -> String {
    let grid = grid.max(2);
    let rows = float_rows(p);
    let centre = |i: usize| -1.0 + (2.0 * i as f64 + 1.0) / grid as f64;
    let body: Vec<String> = (0..grid)
        .into_par_iter()
        .map(|row| {
            let z = -centre(row);
            let signs: Vec<bool> = (0..grid)
                .map(|col| {
                    let c = centre(col);
                    let mut acc = 0.0;
                    for q in rows.iter().rev() {
                        acc = acc * z + q.eval(&c);
                    }
                    acc > 0.0
                })
                .collect();
            let mut line = String::new();
            let mut start = 0;
            for col in 1..=grid {
                if col == grid || signs[col] != signs[start] {
                    let fill = if signs[start] { POSITIVE } else { NEGATIVE };
                    let _ = writeln!(line, r#"<rect x="{start}" y="{row}" width="{}" height="1" fill="{fill}"/>"#, col - start);
                    start = col;
                }
            }
            line
        })
        .collect();
    let mut svg = format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{grid}" height="{grid}" viewBox="0 0 {grid} {grid}" shape-rendering="crispEdges">"#
    );
    svg.push('\n');
    for line in body {
        svg.push_str(&line);
    }
    for b in boundaries {
        let x = (b.mid_f64() + 1.0) / 2.0 * grid as f64;
        let _ = writeln!(svg, r#"<line x1="{x:.3}" y1="0" x2="{x:.3}" y2="{grid}" stroke="black" stroke-dasharray="4 3"/>"#);
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use sasaki_core::algebra::{rat, Poly};

    #[test]
    fn heatmap_of_z_minus_c() {
        // P = z - c: positive above the diagonal
        let p: BiPoly = Poly::new(vec![Poly::new(vec![rat(0), rat(-1)]), Poly::constant(rat(1))]);
        let svg = sign_heatmap(&p, &[], 4);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains(POSITIVE) && svg.contains(NEGATIVE));
        assert!(svg.matches("<rect").count() > 4);
    }
}
