//! Line integrals of exact differentials along radial-then-angular paths.

use std::f64::consts::{FRAC_PI_4, PI, TAU};
use std::sync::OnceLock;

/// Gauss–Legendre nodes per path segment.
pub const NODES_PER_SEGMENT: usize = 32;

/// Arcs longer than this are split into equal sub-arcs.
const MAX_ARC: f64 = FRAC_PI_4;

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes from Newton iteration on `P_n`, started at the Chebyshev guesses.
    pub fn new(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// `∫_a^b f`.
    pub fn integrate(&self, a: f64, b: f64, f: impl Fn(f64) -> f64) -> f64 {
        let (m, r) = (0.5 * (a + b), 0.5 * (b - a));
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(m + r * t))
            .sum::<f64>()
            * r
    }
}

/// `(P_n(x), P_n′(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

pub fn rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(NODES_PER_SEGMENT))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Segment {
    Line {
        from: (f64, f64),
        to: (f64, f64),
    },
    /// Arc of radius `r` from angle `t0` to `t1` (either orientation).
    Arc {
        r: f64,
        t0: f64,
        t1: f64,
    },
}

/// A piecewise path made of straight and circular segments.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    pub segments: Vec<Segment>,
}

impl Path {
    /// Radially from `base` to the circle through `target`, then along that
    /// circle (the short way) to `target`. From the origin the path is the
    /// single ray to `target`.
    pub fn radial_angular(base: (f64, f64), target: (f64, f64)) -> Path {
        let rb = base.0.hypot(base.1);
        let rt = target.0.hypot(target.1);
        let mut segments = Vec::with_capacity(1 + 4);
        if rb == 0.0 || rt == 0.0 {
            if base != target {
                segments.push(Segment::Line {
                    from: base,
                    to: target,
                });
            }
            return Path { segments };
        }
        let tb = base.1.atan2(base.0);
        let corner = (rt * tb.cos(), rt * tb.sin());
        if rb != rt {
            segments.push(Segment::Line {
                from: base,
                to: corner,
            });
        }
        let mut dt = target.1.atan2(target.0) - tb;
        if dt > PI {
            dt -= TAU;
        } else if dt <= -PI {
            dt += TAU;
        }
        if dt != 0.0 {
            push_arc(&mut segments, rt, tb, tb + dt);
        }
        Path { segments }
    }

    /// Counter-clockwise circle of radius `r` about the origin.
    pub fn circle(r: f64) -> Path {
        let mut segments = Vec::new();
        push_arc(&mut segments, r, 0.0, TAU);
        Path { segments }
    }

    /// Closed polygon through the given vertices.
    pub fn polygon(vertices: &[(f64, f64)]) -> Path {
        let n = vertices.len();
        Path {
            segments: (0..n)
                .map(|i| Segment::Line {
                    from: vertices[i],
                    to: vertices[(i + 1) % n],
                })
                .collect(),
        }
    }

    /// `∫ Σ P_k dx + Q_k dy` for `K` differentials at once; `f` returns
    /// `(P_k, Q_k)` at a point.
    pub fn integrate<const K: usize>(&self, f: impl Fn(f64, f64) -> [(f64, f64); K]) -> [f64; K] {
        let gl = rule();
        let mut acc = [0.0; K];
        for seg in &self.segments {
            match *seg {
                Segment::Line { from, to } => {
                    let (dx, dy) = (to.0 - from.0, to.1 - from.1);
                    for (&t, &w) in gl.nodes.iter().zip(&gl.weights) {
                        let s = 0.5 * (t + 1.0);
                        let pq = f(from.0 + s * dx, from.1 + s * dy);
                        for k in 0..K {
                            acc[k] += 0.5 * w * (pq[k].0 * dx + pq[k].1 * dy);
                        }
                    }
                }
                Segment::Arc { r, t0, t1 } => {
                    let (m, h) = (0.5 * (t0 + t1), 0.5 * (t1 - t0));
                    for (&t, &w) in gl.nodes.iter().zip(&gl.weights) {
                        let (s, c) = (m + h * t).sin_cos();
                        let pq = f(r * c, r * s);
                        for k in 0..K {
                            acc[k] += h * w * (-pq[k].0 * r * s + pq[k].1 * r * c);
                        }
                    }
                }
            }
        }
        acc
    }
}

fn push_arc(segments: &mut Vec<Segment>, r: f64, t0: f64, t1: f64) {
    let pieces = ((t1 - t0).abs() / MAX_ARC).ceil().max(1.0) as usize;
    let step = (t1 - t0) / pieces as f64;
    for p in 0..pieces {
        segments.push(Segment::Arc {
            r,
            t0: t0 + p as f64 * step,
            t1: if p + 1 == pieces {
                t1
            } else {
                t0 + (p + 1) as f64 * step
            },
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_is_exact_for_high_degree_polynomials() {
        let gl = GaussLegendre::new(NODES_PER_SEGMENT);
        assert!((gl.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // ∫_{-1}^{1} x^62 = 2/63
        let v = gl.integrate(-1.0, 1.0, |x| x.powi(62));
        assert!((v - 2.0 / 63.0).abs() < 1e-15);
        let v = gl.integrate(0.0, 2.0, |x| x.powi(3));
        assert!((v - 4.0).abs() < 1e-13);
    }

    #[test]
    fn exact_differential_integrates_to_potential_difference() {
        // d(x²y + y³) = 2xy dx + (x² + 3y²) dy
        let pot = |x: f64, y: f64| x * x * y + y * y * y;
        let base = (0.2, -0.5);
        for &target in &[
            (0.7, 0.1),
            (-0.6, -0.3),
            (0.0, 0.0),
            (0.2, -0.5),
            (-0.1, 0.9),
        ] {
            let p = Path::radial_angular(base, target);
            let [v] = p.integrate(|x, y| [(2.0 * x * y, x * x + 3.0 * y * y)]);
            assert!((v - (pot(target.0, target.1) - pot(base.0, base.1))).abs() < 1e-14);
        }
        let p = Path::radial_angular((0.0, 0.0), (0.3, 0.4));
        assert_eq!(p.segments.len(), 1);
    }

    #[test]
    fn circle_of_exact_form_vanishes_and_area_form_does_not() {
        let c = Path::circle(0.5);
        let [exact, area] = c.integrate(|x, y| [(2.0 * x * y, x * x), (-0.5 * y, 0.5 * x)]);
        assert!(exact.abs() < 1e-15);
        assert!((area - PI * 0.25).abs() < 1e-14);
    }
}
