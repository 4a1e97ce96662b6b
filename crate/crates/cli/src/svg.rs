//! Deterministic SVG picture of a rank-two GIT fan.

use std::fmt::Write;

use num_traits::ToPrimitive;
use vgit_core::{Character, GitFan, IntVec};

use crate::CliError;

const SIZE: f64 = 320.0;
const RADIUS: f64 = 140.0;
const PALETTE: [&str; 6] = [
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948",
];

/// Screen position at `scale * RADIUS` along the direction of `v`.
fn point(v: &IntVec, scale: f64) -> (f64, f64) {
    let x = v.coords()[0].to_f64().unwrap_or(0.0);
    let y = v.coords()[1].to_f64().unwrap_or(0.0);
    let norm = x.hypot(y);
    if norm == 0.0 {
        return (SIZE / 2.0, SIZE / 2.0);
    }
    let c = SIZE / 2.0;
    (c + scale * RADIUS * x / norm, c - scale * RADIUS * y / norm)
}

fn cross(a: &IntVec, b: &IntVec) -> bool {
    let (a, b) = (a.coords(), b.coords());
    &a[0] * &b[1] - &a[1] * &b[0] > 0.into()
}

/// Chambers as shaded sectors, walls as rays from the origin, and an
/// optional marked character.
pub fn render_fan_svg(fan: &GitFan, highlight: Option<&Character>) -> Result<String, CliError> {
    let k = fan.origin.cone.ambient_dim();
    if k != 2 {
        return Err(CliError::UnsupportedRank(k));
    }
    let c = SIZE / 2.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r##"<circle cx="{c:.3}" cy="{c:.3}" r="{RADIUS:.3}" fill="none" stroke="#cccccc"/>"##
    );

    for (i, ch) in fan.chambers.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let rays = ch.cone.rays();
        match rays {
            [a, b] if ch.cone.dimension() == 2 => {
                let (a, b) = if cross(a, b) { (a, b) } else { (b, a) };
                let (x1, y1) = point(a, 1.0);
                let (x2, y2) = point(b, 1.0);
                let _ = writeln!(
                    out,
                    r#"<path class="chamber" d="M {c:.3} {c:.3} L {x1:.3} {y1:.3} A {RADIUS:.3} {RADIUS:.3} 0 0 0 {x2:.3} {y2:.3} Z" fill="{color}" fill-opacity="0.35"><title>chamber {}</title></path>"#,
                    i + 1
                );
            }
            _ => {
                // A chamber inside a line or ray: draw it thick.
                for r in rays {
                    let (x, y) = point(r, 1.0);
                    let _ = writeln!(
                        out,
                        r#"<line class="chamber" x1="{c:.3}" y1="{c:.3}" x2="{x:.3}" y2="{y:.3}" stroke="{color}" stroke-width="6"><title>chamber {}</title></line>"#,
                        i + 1
                    );
                }
            }
        }
    }

    for (i, w) in fan.walls.iter().enumerate() {
        for r in w.cone.rays() {
            let (x, y) = point(r, 1.0);
            let (lx, ly) = point(r, 1.08);
            let _ = writeln!(
                out,
                r#"<line class="wall" x1="{c:.3}" y1="{c:.3}" x2="{x:.3}" y2="{y:.3}" stroke="black" stroke-width="1.5"><title>wall {}: {r}</title></line>"#,
                i + 1
            );
            let _ = writeln!(
                out,
                r#"<text x="{lx:.3}" y="{ly:.3}" font-size="10" text-anchor="middle">{r}</text>"#
            );
        }
    }

    let _ = writeln!(
        out,
        r#"<circle class="origin" cx="{c:.3}" cy="{c:.3}" r="2.5" fill="black"/>"#
    );
    if let Some(h) = highlight {
        let (x, y) = point(h.as_vec(), 0.6);
        let _ = writeln!(
            out,
            r#"<circle class="highlight" cx="{x:.3}" cy="{y:.3}" r="5" fill="red" stroke="black"><title>{h}</title></circle>"#
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use vgit_core::{ChargeMatrix, ToricGit};

    fn fan(rows: Vec<Vec<i64>>) -> GitFan {
        ToricGit::new(ChargeMatrix::new(rows).unwrap())
            .git_fan()
            .unwrap()
    }

    #[test]
    fn football_picture() {
        let f = fan(vec![vec![2, 1, 0], vec![0, 1, 1]]);
        let svg = render_fan_svg(&f, Some(&Character::from([4, 2]))).unwrap();
        assert_eq!(svg.matches(r#"<path class="chamber""#).count(), 2);
        assert_eq!(svg.matches(r#"<line class="wall""#).count(), 3);
        assert_eq!(svg.matches(r#"class="highlight""#).count(), 1);
        assert_eq!(
            svg,
            render_fan_svg(&f, Some(&Character::from([4, 2]))).unwrap()
        );
    }

    #[test]
    fn rank_one_is_unsupported() {
        assert!(matches!(
            render_fan_svg(&fan(vec![vec![1]]), None),
            Err(CliError::UnsupportedRank(1))
        ));
    }
}
