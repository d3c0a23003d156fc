//! Gauss linking number of closed polylines, summed exactly over segment pairs.

use std::f64::consts::PI;

use serde::Serialize;

use super::{NodalCurve, VerifyError};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LinkingResult {
    pub linking_number: i64,
    pub raw_integral: f64,
}

type P3 = [f64; 3];

fn sub(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: P3, b: P3) -> P3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: P3, b: P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn unit(a: P3) -> P3 {
    let n = dot(a, a).sqrt();
    if n == 0.0 {
        a
    } else {
        [a[0] / n, a[1] / n, a[2] / n]
    }
}

/// Signed solid angle subtended by segment `b1 b2` as seen sweeping along `a1 a2`
/// (Klenin–Langowski).
fn segment_pair(a1: P3, a2: P3, b1: P3, b2: P3) -> f64 {
    let r13 = sub(b1, a1);
    let r14 = sub(b2, a1);
    let r23 = sub(b1, a2);
    let r24 = sub(b2, a2);
    let n1 = unit(cross(r13, r14));
    let n2 = unit(cross(r14, r24));
    let n3 = unit(cross(r24, r23));
    let n4 = unit(cross(r23, r13));
    let omega = [dot(n1, n2), dot(n2, n3), dot(n3, n4), dot(n4, n1)].iter().map(|c| c.clamp(-1.0, 1.0).asin()).sum::<f64>();
    let orient = dot(cross(sub(b2, b1), sub(a2, a1)), r13);
    omega * orient.signum()
}

fn points3(c: &NodalCurve) -> Result<Vec<P3>, VerifyError> {
    c.points
        .iter()
        .map(|p| match p.as_slice() {
            [x, y, z] => Ok([*x, *y, *z]),
            _ => Err(VerifyError::InvalidInput("linking needs curves in ℝ³".into())),
        })
        .collect()
}

fn max_segment(p: &[P3]) -> f64 {
    (0..p.len()).map(|i| dot(sub(p[(i + 1) % p.len()], p[i]), sub(p[(i + 1) % p.len()], p[i])).sqrt()).fold(0.0, f64::max)
}

/// Raw Gauss integral of two closed curves, without rounding or separation checks.
pub fn gauss_integral(a: &[P3], b: &[P3]) -> f64 {
    let mut total = 0.0;
    for i in 0..a.len() {
        let (a1, a2) = (a[i], a[(i + 1) % a.len()]);
        for j in 0..b.len() {
            total += segment_pair(a1, a2, b[j], b[(j + 1) % b.len()]);
        }
    }
    total / (4.0 * PI)
}

/// Linking number of two disjoint closed curves in ℝ³.
pub fn gauss_linking(a: &NodalCurve, b: &NodalCurve) -> Result<LinkingResult, VerifyError> {
    let pa = points3(a)?;
    let pb = points3(b)?;
    if pa.len() < 3 || pb.len() < 3 || !a.closed || !b.closed {
        return Err(VerifyError::InvalidInput("linking needs closed curves with at least three points".into()));
    }
    let step = max_segment(&pa).max(max_segment(&pb));
    let mut closest = f64::INFINITY;
    for p in &pa {
        for q in &pb {
            closest = closest.min(dot(sub(*p, *q), sub(*p, *q)));
        }
    }
    let closest = closest.sqrt();
    if closest <= 10.0 * step {
        return Err(VerifyError::CurvesTooClose { distance: closest, step });
    }
    let raw = gauss_integral(&pa, &pb);
    let rounded = raw.round();
    if (raw - rounded).abs() >= 0.1 {
        return Err(VerifyError::NonIntegerLinking { raw });
    }
    Ok(LinkingResult { linking_number: rounded as i64, raw_integral: raw })
}

/// Total linking of two families of loops, e.g. the preimages of two points.
pub fn total_linking(a: &[NodalCurve], b: &[NodalCurve]) -> Result<LinkingResult, VerifyError> {
    let mut raw = 0.0;
    for x in a {
        for y in b {
            raw += gauss_linking(x, y)?.raw_integral;
        }
    }
    Ok(LinkingResult { linking_number: raw.round() as i64, raw_integral: raw })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn circle(center: P3, axis: usize, radius: f64, n: usize) -> NodalCurve {
        let points = (0..n)
            .map(|k| {
                let t = TAU * k as f64 / n as f64;
                let (c, s) = (radius * t.cos(), radius * t.sin());
                let mut p = center;
                match axis {
                    0 => {
                        p[1] += c;
                        p[2] += s;
                    }
                    1 => {
                        p[2] += c;
                        p[0] += s;
                    }
                    _ => {
                        p[0] += c;
                        p[1] += s;
                    }
                }
                p.to_vec()
            })
            .collect();
        NodalCurve { points, closed: true, residual: 0.0 }
    }

    #[test]
    fn unlinked_circles() {
        let a = circle([0.0, 0.0, 0.0], 2, 1.0, 200);
        let b = circle([5.0, 0.0, 0.0], 2, 1.0, 200);
        assert_eq!(gauss_linking(&a, &b).unwrap().linking_number, 0);
    }

    #[test]
    fn hopf_link() {
        let a = circle([0.0, 0.0, 0.0], 2, 1.0, 200);
        let b = circle([1.0, 0.0, 0.0], 1, 1.0, 200);
        let res = gauss_linking(&a, &b).unwrap();
        assert_eq!(res.linking_number.abs(), 1);
        assert!((res.raw_integral.abs() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn sign_follows_right_hand_rule() {
        // the second loop runs down through the disk of the first, counter-clockwise one
        let a = circle([0.0, 0.0, 0.0], 2, 1.0, 400);
        let b = NodalCurve {
            points: (0..400)
                .map(|k| {
                    let t = TAU * k as f64 / 400.0;
                    vec![1.0 + t.cos(), 0.0, t.sin()]
                })
                .collect(),
            closed: true,
            residual: 0.0,
        };
        let direct: f64 = {
            let pa = points3(&a).unwrap();
            let pb = points3(&b).unwrap();
            let n = pa.len();
            let mut acc = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let (a1, a2, b1, b2) = (pa[i], pa[(i + 1) % n], pb[j], pb[(j + 1) % n]);
                    let r = sub([(a1[0] + a2[0]) / 2.0, (a1[1] + a2[1]) / 2.0, 0.0], [(b1[0] + b2[0]) / 2.0, 0.0, (b1[2] + b2[2]) / 2.0]);
                    acc += dot(r, cross(sub(a2, a1), sub(b2, b1))) / dot(r, r).powf(1.5);
                }
            }
            acc / (4.0 * PI)
        };
        let exact = gauss_integral(&points3(&a).unwrap(), &points3(&b).unwrap());
        assert!((exact + 1.0).abs() < 1e-9);
        assert!((direct - exact).abs() < 1e-3);
    }

    #[test]
    fn touching_curves_rejected() {
        let a = circle([0.0, 0.0, 0.0], 2, 1.0, 20);
        let b = circle([2.05, 0.0, 0.0], 2, 1.0, 20);
        assert!(matches!(gauss_linking(&a, &b), Err(VerifyError::CurvesTooClose { .. })));
    }
}
