//! Test-only oracles for the oristrip workspace.
//!
//! Everything here is deliberately independent of the library under test: the
//! loop-closure oracle carries its own vector algebra and rotation recursion
//! and recovers fold angles by searching the closure residual, never by the
//! closed-form relations it is used to check.

/// Minimal 3-vector for the oracle's own rotation arithmetic.
#[derive(Debug, Clone, Copy)]
pub struct V3(pub f64, pub f64, pub f64);

impl V3 {
    fn dot(self, o: V3) -> f64 {
        self.0 * o.0 + self.1 * o.1 + self.2 * o.2
    }

    fn cross(self, o: V3) -> V3 {
        V3(
            self.1 * o.2 - self.2 * o.1,
            self.2 * o.0 - self.0 * o.2,
            self.0 * o.1 - self.1 * o.0,
        )
    }

    fn scale(self, s: f64) -> V3 {
        V3(self.0 * s, self.1 * s, self.2 * s)
    }

    fn add(self, o: V3) -> V3 {
        V3(self.0 + o.0, self.1 + o.1, self.2 + o.2)
    }

    fn dist(self, o: V3) -> f64 {
        let d = self.add(o.scale(-1.0));
        d.dot(d).sqrt()
    }

    /// Rodrigues rotation about a unit axis, right-handed.
    fn rot(self, axis: V3, angle: f64) -> V3 {
        let (s, c) = angle.sin_cos();
        self.scale(c)
            .add(axis.cross(self).scale(s))
            .add(axis.scale(axis.dot(self) * (1.0 - c)))
    }
}

/// Loop-closure residual of the fold-angle quadruple `rho` for sector angles
/// `(theta0, theta1, pi - theta0, pi - theta1)`: walks a frame around the
/// four creases and returns how far it lands from where it started.
pub fn closure_residual(theta0: f64, theta1: f64, rho: [f64; 4]) -> f64 {
    let thetas = [
        theta0,
        theta1,
        core::f64::consts::PI - theta0,
        core::f64::consts::PI - theta1,
    ];
    let mut c = V3(1.0, 0.0, 0.0);
    let mut n = V3(0.0, 0.0, 1.0);
    let (c0, n0) = (c, n);
    for i in 0..4 {
        c = c.rot(n, thetas[i]);
        n = n.rot(c, rho[(i + 1) % 4]);
    }
    c.dist(c0) + n.dist(n0)
}

/// Recovers `rho1` for a given `rho0` and mode sign by minimizing the
/// closure residual over `rho1 in [-pi, pi]`: a coarse scan brackets the
/// root, golden-section search polishes it.
pub fn solve_rho1(theta0: f64, theta1: f64, sigma: f64, rho0: f64) -> f64 {
    let residual =
        |rho1: f64| closure_residual(theta0, theta1, [rho0, rho1, sigma * rho0, -sigma * rho1]);

    let pi = core::f64::consts::PI;
    let n = 720usize;
    let mut best_k = 0usize;
    let mut best = f64::INFINITY;
    for k in 0..=n {
        let x = -pi + 2.0 * pi * k as f64 / n as f64;
        let r = residual(x);
        if r < best {
            best = r;
            best_k = k;
        }
    }
    let step = 2.0 * pi / n as f64;
    let mut lo = (-pi + step * best_k as f64) - step;
    let mut hi = (-pi + step * best_k as f64) + step;

    // Golden-section search on the V-shaped residual.
    let inv_phi = 0.618_033_988_749_894_9_f64;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = residual(x1);
    let mut f2 = residual(x2);
    for _ in 0..120 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = residual(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = residual(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Central finite-difference slope of `f` at `x`.
pub fn central_slope<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Second-order one-sided slope of `f` at `x`, stepping backward; used at
/// the upper end of a domain.
pub fn backward_slope<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h)
}

/// Count of map applications needed to carry `start` past `stop`, walking
/// toward the developed state; the integer counterpart of the 10-90% width
/// formula.
pub fn count_steps<F: Fn(f64) -> f64>(f: F, start: f64, stop: f64, cap: usize) -> usize {
    let mut x = start;
    for k in 0..cap {
        if x.abs() <= stop {
            return k;
        }
        x = f(x);
    }
    cap
}

/// Maximum deviation between two planar point sets after aligning the first
/// point and first segment direction of `moved` onto `fixed`.
pub fn aligned_max_deviation(fixed: &[(f64, f64)], moved: &[(f64, f64)]) -> f64 {
    assert!(fixed.len() == moved.len() && fixed.len() >= 2);
    let dir = |pts: &[(f64, f64)]| {
        let (x0, y0) = pts[0];
        let (x1, y1) = pts[1];
        (x1 - x0, y1 - y0)
    };
    let (fx, fy) = dir(fixed);
    let (mx, my) = dir(moved);
    let rot = fy.atan2(fx) - my.atan2(mx);
    let (s, c) = rot.sin_cos();
    let mut max_dev = 0.0_f64;
    for (f, m) in fixed.iter().zip(moved) {
        let dx = m.0 - moved[0].0;
        let dy = m.1 - moved[0].1;
        let tx = fixed[0].0 + c * dx - s * dy;
        let ty = fixed[0].1 + s * dx + c * dy;
        let dev = ((tx - f.0).powi(2) + (ty - f.1).powi(2)).sqrt();
        max_dev = max_dev.max(dev);
    }
    max_dev
}

/// Small deterministic xorshift generator for test sampling, so the oracle
/// comparisons do not depend on external RNG crates.
pub struct TestRng(u64);

impl TestRng {
    pub fn new(seed: u64) -> Self {
        TestRng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    /// Uniform sample in `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let u = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + (hi - lo) * u
    }
}
