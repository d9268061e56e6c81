//! Fourth-order central finite differences on vector-valued fields of two
//! variables. Used only by the verification probes.

/// Default step for the fourth-order stencils.
pub const STEP: f64 = 1e-3;

/// Stencil reach in units of `h`.
pub const REACH: f64 = 2.0;

const D1: [(f64, f64); 4] = [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)];
const D2: [(f64, f64); 5] = [
    (-2.0, -1.0),
    (-1.0, 16.0),
    (0.0, -30.0),
    (1.0, 16.0),
    (2.0, -1.0),
];

/// `∂f/∂x` and `∂f/∂y`, each with error `O(h⁴)`.
pub fn gradient<const K: usize>(
    f: &impl Fn(f64, f64) -> [f64; K],
    x: f64,
    y: f64,
    h: f64,
) -> ([f64; K], [f64; K]) {
    let mut dx = [0.0; K];
    let mut dy = [0.0; K];
    for &(o, w) in &D1 {
        let fx = f(x + o * h, y);
        let fy = f(x, y + o * h);
        for k in 0..K {
            dx[k] += w * fx[k];
            dy[k] += w * fy[k];
        }
    }
    let s = 12.0 * h;
    (dx.map(|v| v / s), dy.map(|v| v / s))
}

/// Second partials of a vector field.
#[derive(Debug, Clone, Copy)]
pub struct Hessian<const K: usize> {
    pub xx: [f64; K],
    pub yy: [f64; K],
    pub xy: [f64; K],
}

pub fn hessian<const K: usize>(
    f: &impl Fn(f64, f64) -> [f64; K],
    x: f64,
    y: f64,
    h: f64,
) -> Hessian<K> {
    let mut xx = [0.0; K];
    let mut yy = [0.0; K];
    let mut xy = [0.0; K];
    for &(o, w) in &D2 {
        let fx = f(x + o * h, y);
        let fy = f(x, y + o * h);
        for k in 0..K {
            xx[k] += w * fx[k];
            yy[k] += w * fy[k];
        }
    }
    for &(ox, wx) in &D1 {
        for &(oy, wy) in &D1 {
            let v = f(x + ox * h, y + oy * h);
            for k in 0..K {
                xy[k] += wx * wy * v[k];
            }
        }
    }
    let s2 = 12.0 * h * h;
    let sxy = 144.0 * h * h;
    Hessian {
        xx: xx.map(|v| v / s2),
        yy: yy.map(|v| v / s2),
        xy: xy.map(|v| v / sxy),
    }
}
