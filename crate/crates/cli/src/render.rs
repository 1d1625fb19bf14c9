//! SVG drawing of a rank-2 diagram: each wall is a ray from the origin in
//! weight space, clipped to a square frame. Walls whose function is not a
//! single binomial `1 + x^n` are shaded as one cone; for wild quivers that
//! cone is where the walls become dense and only finitely many are drawn.

use std::cmp::Ordering;
use std::fmt::Write;

use num_traits::{Signed, Zero};
use wallcross::quiver::{DimVector, Quiver};
use wallcross::scattering::geometry::angle_cmp;
use wallcross::scattering::{Cone, ScatteringDiagram, Wall};
use wallcross::tseries::TruncSeries;
use wallcross::Rat;

const SIZE: i64 = 640;
const HALF: i64 = SIZE / 2;
const REACH: i64 = 260;

type Ray = (Rat, Rat);

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Rays of `n^⊥` inside the wall's cone.
fn wall_rays(w: &Wall) -> Vec<Ray> {
    let n = w.normal().coords();
    let v = (rat(-n[1]), rat(n[0]));
    let both = [v.clone(), (-v.0.clone(), -v.1.clone())];
    match w.cone() {
        Cone::Hyperplane => both.to_vec(),
        Cone::Signs(signs) => both
            .into_iter()
            .filter(|r| {
                signs.iter().all(|(p, s)| {
                    let val = &r.0 * rat(p.coords()[0]) + &r.1 * rat(p.coords()[1]);
                    val.is_positive() == (*s > 0) && !val.is_zero()
                })
            })
            .collect(),
    }
}

/// Pixel position of the ray's end on the square of half-width `REACH`.
fn endpoint(r: &Ray, reach: i64) -> (i64, i64) {
    let scale = r.0.abs().max(r.1.abs());
    let x = (rat(HALF) + rat(reach) * &r.0 / &scale).round().to_integer();
    let y = (rat(HALF) - rat(reach) * &r.1 / &scale).round().to_integer();
    (x.try_into().expect("pixel fits"), y.try_into().expect("pixel fits"))
}

fn is_binomial(f: &TruncSeries, n: &DimVector) -> bool {
    let one = rat(1);
    f.len() == 2 && f.constant_term() == one && f.coeff(n) == one
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render_svg(d: &ScatteringDiagram, q: &Quiver) -> String {
    let mut walls: Vec<(Ray, &Wall)> = d.walls().iter().flat_map(|w| wall_rays(w).into_iter().map(move |r| (r, w))).collect();
    walls.sort_by(|a, b| angle_cmp(&a.0, &b.0).then_with(|| a.1.normal().cmp(b.1.normal())));

    let mut dense: Vec<&Ray> = walls.iter().filter(|(_, w)| !is_binomial(w.function(), w.normal())).map(|(r, _)| r).collect();
    dense.dedup_by(|a, b| angle_cmp(a, b) == Ordering::Equal);

    let mut s = String::new();
    let names = q.vertices().join(", ");
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#).unwrap();
    writeln!(s, "  <title>scattering diagram, vertices {}, order {}</title>", escape(&names), d.order()).unwrap();
    writeln!(s, r##"  <rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="#ffffff"/>"##).unwrap();
    // the positive chamber
    writeln!(s, r##"  <polygon points="{HALF},{HALF} {},{HALF} {},{} {HALF},{}" fill="#e8f3e8"/>"##, HALF + REACH, HALF + REACH, HALF - REACH, HALF - REACH).unwrap();
    if dense.len() >= 2 {
        let first = dense[0];
        let last = dense[dense.len() - 1];
        let mut pts = vec![(HALF, HALF)];
        pts.extend(dense.iter().map(|r| endpoint(r, REACH)));
        let pts: Vec<String> = pts.iter().map(|(x, y)| format!("{x},{y}")).collect();
        writeln!(s, r##"  <polygon class="dense" points="{}" fill="#f4d6d6" stroke="none"/>"##, pts.join(" ")).unwrap();
        let mid = (&first.0 + &last.0, &first.1 + &last.1);
        let (x, y) = endpoint(&mid, REACH + 30);
        writeln!(
            s,
            r##"  <text class="dense-label" x="{x}" y="{y}" font-size="12" text-anchor="middle" fill="#a03030">dense walls beyond order {}</text>"##,
            d.order()
        )
        .unwrap();
    }
    for (r, w) in &walls {
        let (x, y) = endpoint(r, REACH);
        let (lx, ly) = endpoint(r, REACH + 14);
        let n = w.normal();
        writeln!(
            s,
            r##"  <line class="wall" x1="{HALF}" y1="{HALF}" x2="{x}" y2="{y}" stroke="#202060" stroke-width="1.5"><title>{}: {}</title></line>"##,
            n,
            escape(&w.function().to_canonical_string())
        )
        .unwrap();
        writeln!(s, r##"  <text x="{lx}" y="{ly}" font-size="10" text-anchor="middle" dominant-baseline="middle">{n}</text>"##).unwrap();
    }
    writeln!(s, r##"  <circle cx="{HALF}" cy="{HALF}" r="2" fill="#000000"/>"##).unwrap();
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commands::completion;

    #[test]
    fn a2_has_five_rays() {
        let q = Quiver::a2();
        let svg = render_svg(&completion(&q, 6).unwrap(), &q);
        assert_eq!(svg.matches("class=\"wall\"").count(), 5);
        assert!(!svg.contains("class=\"dense\""));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn k3_marks_dense_cone() {
        let q = Quiver::kronecker(3);
        let svg = render_svg(&completion(&q, 6).unwrap(), &q);
        assert!(svg.contains("class=\"dense\""));
        assert!(svg.contains("dense walls beyond order 6"));
    }

    #[test]
    fn endpoints_are_exact() {
        assert_eq!(endpoint(&(rat(1), rat(0)), REACH), (HALF + REACH, HALF));
        assert_eq!(endpoint(&(rat(-1), rat(2)), REACH), (HALF - REACH / 2, HALF - REACH));
    }
}
