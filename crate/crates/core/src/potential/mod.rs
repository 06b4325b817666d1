//! Potential functions of the twist knot `K_p`:
//!
//! * `V(p,t,s;m,n) = πi((2p+1)s² − (2p+3+2n)s − (2m+2)t)
//!   + (1/2πi)(Li₂(e^{2πi(t+s)}) + Li₂(e^{2πi(t−s)}) − 3Li₂(e^{2πit}) + π²/6)`;
//! * its finite-`N` counterpart `V_N` built from the quantum dilogarithm;
//! * gradients, Hessians, the Hessian factor `H(p,x,y)`;
//! * the real part `f = Re V` on complexified points and its piecewise-linear
//!   asymptotic model `F`.
//!
//! Region geometry lives in [`region`].

pub mod region;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jones::KnotSpec;
use crate::numerics::{clog, e2pi, ComplexValue, NumericsConfig, I, TAU};
use crate::polylog::{li2, phi_n, PhiRule, PI2_6};

pub use region::{
    bump_psi, c0, polygon_within, region_contains, region_half_planes, u_n_bottom_vertex, u_n_top_vertex,
    threshold_certificate, u_n_vertices_exact, v_function, ConvexPolygon, GridCertificate, HalfPlane, RegionSpec,
    DEFAULT_BUMP_EPS,
};

const PI: f64 = std::f64::consts::PI;

/// A point `(t, s) ∈ C²`; `x = e^{2πit}`, `y = e^{2πis}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialPoint {
    pub t: ComplexValue,
    pub s: ComplexValue,
}

impl PotentialPoint {
    pub fn new(t: ComplexValue, s: ComplexValue) -> Self {
        PotentialPoint { t, s }
    }

    /// Real point `(t, s) ∈ R²`.
    pub fn real(t: f64, s: f64) -> Self {
        PotentialPoint { t: Complex64::new(t, 0.0), s: Complex64::new(s, 0.0) }
    }

    /// Complexified point `(t + iX, s + iY)`.
    pub fn complexified(t: f64, x_im: f64, s: f64, y_im: f64) -> Self {
        PotentialPoint { t: Complex64::new(t, x_im), s: Complex64::new(s, y_im) }
    }

    pub fn x(&self) -> ComplexValue {
        e2pi(self.t)
    }

    pub fn y(&self) -> ComplexValue {
        e2pi(self.s)
    }

    /// `(Re t, Re s)`, the coordinates used by region predicates.
    pub fn real_part(&self) -> (f64, f64) {
        (self.t.re, self.s.re)
    }
}

/// Fourier index `(m, n)`; `V(·;m,n) = V(·) − 2πi(mt + ns)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FourierIndex {
    pub m: i64,
    pub n: i64,
}

impl FourierIndex {
    pub const ZERO: FourierIndex = FourierIndex { m: 0, n: 0 };

    pub fn new(m: i64, n: i64) -> Self {
        FourierIndex { m, n }
    }

    /// `−2πi(mt + ns)`.
    pub fn shift(&self, pt: &PotentialPoint) -> ComplexValue {
        -I * TAU * (pt.t * self.m as f64 + pt.s * self.n as f64)
    }
}

/// `Li₂(e^{2πiz})`, rejecting points where the argument meets the cut `(1, ∞)`.
fn li2_e(op: &'static str, z: ComplexValue) -> Result<ComplexValue> {
    let w = e2pi(z);
    // e^{2πiz} ∈ (1, ∞) exactly when Re z ∈ Z and Im z < 0
    if z.im < 0.0 && (z.re - z.re.round()).abs() < 1e-15 {
        return Err(Error::branch(op, format!("e^(2πi·{z}) lies on the cut (1, ∞)")));
    }
    li2(w).map_err(|_| Error::branch(op, format!("e^(2πi·{z}) lies on the cut (1, ∞)")))
}

/// `log(1 − e^{2πiz})`, rejecting the singular locus `e^{2πiz} = 1`.
fn log1m_e(op: &'static str, z: ComplexValue) -> Result<ComplexValue> {
    let w = Complex64::new(1.0, 0.0) - e2pi(z);
    if w.norm() < 1e-300 {
        return Err(Error::domain(op, format!("singular locus e^(2πi·{z}) = 1")));
    }
    Ok(clog(w))
}

/// `V(p, t, s)`.
pub fn v(p: i64, pt: &PotentialPoint) -> Result<ComplexValue> {
    v_mn(p, pt, FourierIndex::ZERO)
}

/// `V(p, t, s; m, n)`.
pub fn v_mn(p: i64, pt: &PotentialPoint, idx: FourierIndex) -> Result<ComplexValue> {
    let (t, s) = (pt.t, pt.s);
    let pf = p as f64;
    let poly = I
        * PI
        * (s * s * (2.0 * pf + 1.0) - s * (2.0 * pf + 3.0 + 2.0 * idx.n as f64) - t * (2.0 * idx.m as f64 + 2.0));
    let l = li2_e("V", t + s)? + li2_e("V", t - s)? - li2_e("V", t)? * 3.0 + PI2_6;
    Ok(poly + l / (I * TAU))
}

/// Lattice convention for the shifted quantum-dilogarithm argument: the
/// `t + s` slot is shifted by `−1` once `Re(t + s) ≥ 1`, matching the
/// two-case weight of the exact lattice representation.
fn shifted_sum_arg(pt: &PotentialPoint, h: f64) -> ComplexValue {
    let u = pt.t + pt.s + h;
    if pt.t.re + pt.s.re < 1.0 {
        u
    } else {
        u - 1.0
    }
}

/// Polynomial part of `V_N` (everything except the quantum dilogarithms).
pub(crate) fn v_n_poly(p: i64, pt: &PotentialPoint, h: f64, idx: FourierIndex) -> ComplexValue {
    let (t, s) = (pt.t, pt.s);
    let pf = p as f64;
    I * PI
        * (s * s * (2.0 * pf + 1.0) - s * (2.0 * pf + 3.0) + t * (4.0 * h - 2.0)
            - (6.0 * pf + 7.0) * h * h / 3.0
            - 1.0 / 12.0)
        + idx.shift(pt)
}

/// Arguments of the five quantum dilogarithms in `V_N`, with their signs.
fn v_n_phi_args(pt: &PotentialPoint, h: f64) -> [(ComplexValue, f64, &'static str); 5] {
    [
        (shifted_sum_arg(pt, h), 1.0, "t+s+1/(2N+1) (mod 1)"),
        (pt.t - pt.s + h, 1.0, "t−s+1/(2N+1)"),
        (pt.t, -1.0, "t"),
        (pt.t - h, -1.0, "t−1/(2N+1)"),
        (pt.t + h, -1.0, "t+1/(2N+1)"),
    ]
}

/// Finite-`N` potential
///
/// ```text
/// V_N(p,t,s;m,n) = πi((2p+1)s² − (2p+3)s + (4/(2N+1) − 2)t − (6p+7)/(3(2N+1)²) − 1/12)
///   + (1/(N+1/2))(φ_N(t+s+1/(2N+1)[−1]) + φ_N(t−s+1/(2N+1)) − φ_N(t) − φ_N(t−1/(2N+1)) − φ_N(t+1/(2N+1)))
///   − 2πi(mt + ns)
/// ```
///
/// with `φ_N` evaluated by adaptive contour quadrature.
pub fn v_n_full(spec: &KnotSpec, pt: &PotentialPoint, idx: FourierIndex, cfg: &NumericsConfig) -> Result<ComplexValue> {
    let root = spec.root()?;
    let h = root.spacing();
    let mut acc = Complex64::new(0.0, 0.0);
    for (arg, sign, name) in v_n_phi_args(pt, h) {
        let val = phi_n(&root, arg, cfg).map_err(|e| match e {
            Error::Domain { msg, .. } => Error::domain("V_N", format!("argument {name} = {arg}: {msg}")),
            other => other,
        })?;
        acc += val * sign;
    }
    Ok(v_n_poly(spec.p, pt, h, idx) + acc / root.level())
}

/// `V_N` evaluated with a precomputed fixed-node [`PhiRule`] (fast path for
/// lattice sums and two-dimensional quadrature).
#[derive(Debug, Clone)]
pub struct FinitePotential {
    pub p: i64,
    rule: PhiRule,
}

impl FinitePotential {
    /// Builds the rule on the strip `0 ≤ Re ≤ 1`, which contains every argument
    /// reached from lattice points and from the Fourier integration region.
    pub fn new(spec: &KnotSpec) -> Result<Self> {
        Ok(FinitePotential { p: spec.p, rule: PhiRule::lattice(spec.root()?)? })
    }

    pub fn rule(&self) -> &PhiRule {
        &self.rule
    }

    pub fn eval(&self, pt: &PotentialPoint, idx: FourierIndex) -> Result<ComplexValue> {
        let root = self.rule.root();
        let h = root.spacing();
        let mut acc = Complex64::new(0.0, 0.0);
        for (arg, sign, name) in v_n_phi_args(pt, h) {
            let val = self.rule.eval(arg).map_err(|e| match e {
                Error::Domain { msg, .. } => Error::domain("V_N", format!("argument {name} = {arg}: {msg}")),
                other => other,
            })?;
            acc += val * sign;
        }
        Ok(v_n_poly(self.p, pt, h, idx) + acc / root.level())
    }
}

/// Gradient `(∂V/∂t, ∂V/∂s)` of `V(p,t,s;m,n)`:
/// `∂_t V = −2πi(m+1) + 3log(1−x) − log(1−xy) − log(1−x/y)`,
/// `∂_s V = (4p+2)πi s − (2p+3+2n)πi − log(1−xy) + log(1−x/y)`.
pub fn grad_v_mn(p: i64, pt: &PotentialPoint, idx: FourierIndex) -> Result<[ComplexValue; 2]> {
    let lx = log1m_e("grad_V", pt.t)?;
    let lp = log1m_e("grad_V", pt.t + pt.s)?;
    let lm = log1m_e("grad_V", pt.t - pt.s)?;
    let pf = p as f64;
    let gt = -I * TAU * (idx.m as f64 + 1.0) + lx * 3.0 - lp - lm;
    let gs = I * PI * (4.0 * pf + 2.0) * pt.s - I * PI * (2.0 * pf + 3.0 + 2.0 * idx.n as f64) - lp + lm;
    Ok([gt, gs])
}

/// Gradient of `V(p,t,s)`.
pub fn grad_v(p: i64, pt: &PotentialPoint) -> Result<[ComplexValue; 2]> {
    grad_v_mn(p, pt, FourierIndex::ZERO)
}

/// The ratios `α = x/(1−x)`, `β = xy/(1−xy)`, `γ = (x/y)/(1−x/y)`.
fn ratios(op: &'static str, pt: &PotentialPoint) -> Result<(ComplexValue, ComplexValue, ComplexValue)> {
    let one = Complex64::new(1.0, 0.0);
    let x = pt.x();
    let y = pt.y();
    let r = |z: ComplexValue| -> Result<ComplexValue> {
        let d = one - z;
        if d.norm() < 1e-300 {
            return Err(Error::domain(op, "singular locus of the Hessian"));
        }
        Ok(z / d)
    };
    Ok((r(x)?, r(x * y)?, r(x / y)?))
}

/// Hessian of `V` (independent of `m, n`):
/// `V_tt = 2πi(β+γ−3α)`, `V_ts = 2πi(β−γ)`, `V_ss = 2πi(2p+1+β+γ)`.
pub fn hess_v(p: i64, pt: &PotentialPoint) -> Result<[[ComplexValue; 2]; 2]> {
    let (a, b, g) = ratios("hess_V", pt)?;
    let k = I * TAU;
    let tt = k * (b + g - a * 3.0);
    let ts = k * (b - g);
    let ss = k * (b + g + (2 * p + 1) as f64);
    Ok([[tt, ts], [ts, ss]])
}

/// Determinant of a complex 2×2 matrix.
pub fn det2(m: &[[ComplexValue; 2]; 2]) -> ComplexValue {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Hessian factor
/// `H(p,x,y) = −3(2p+1)/A + (2p+1)/B + (2p+1)/C − 3/(AB) − 3/(AC) + 4/(BC)`
/// with `A = 1/x − 1`, `B = 1/(xy) − 1`, `C = y/x − 1`, so that
/// `det Hess V = (2πi)² H`.
pub fn h_factor(p: i64, x: ComplexValue, y: ComplexValue) -> ComplexValue {
    let one = Complex64::new(1.0, 0.0);
    let q = (2 * p + 1) as f64;
    let a = one / x - one;
    let b = one / (x * y) - one;
    let c = y / x - one;
    -q * 3.0 / a + q / b + q / c - 3.0 / (a * b) - 3.0 / (a * c) + 4.0 / (b * c)
}

/// `f(p,t,X,s,Y;m,n) = Re V(p, t+iX, s+iY; m, n)`.
pub fn f_real(p: i64, t: f64, x_im: f64, s: f64, y_im: f64, idx: FourierIndex) -> Result<f64> {
    Ok(v_mn(p, &PotentialPoint::complexified(t, x_im, s, y_im), idx)?.re)
}

/// Closed-form `(X, Y)`-Hessian of `f`: `2π[[3a+b+c, b−c], [b−c, b+c]]` with
/// `a = −Im 1/(1−x)`, `b = Im 1/(1−xy)`, `c = Im 1/(1−x/y)`.
pub fn f_hessian_xy(t: f64, x_im: f64, s: f64, y_im: f64) -> Result<[[f64; 2]; 2]> {
    let pt = PotentialPoint::complexified(t, x_im, s, y_im);
    let one = Complex64::new(1.0, 0.0);
    let x = pt.x();
    let y = pt.y();
    let inv = |z: ComplexValue| -> Result<ComplexValue> {
        let d = one - z;
        if d.norm() < 1e-300 {
            return Err(Error::domain("f_hessian_xy", "singular locus"));
        }
        Ok(one / d)
    };
    let a = -inv(x)?.im;
    let b = inv(x * y)?.im;
    let c = inv(x / y)?.im;
    Ok([[TAU * (3.0 * a + b + c), TAU * (b - c)], [TAU * (b - c), TAU * (b + c)]])
}

/// Full real Hessian of `f` in the variables `(t, X, s, Y)`, obtained from the
/// complex Hessian `h` of `V` through the Cauchy–Riemann equations:
/// `∂²f/∂u_j∂u_k = Re h_jk`, `∂²f/∂u_j∂v_k = −Im h_jk`, `∂²f/∂v_j∂v_k = −Re h_jk`.
pub fn f_hessian_full(p: i64, t: f64, x_im: f64, s: f64, y_im: f64) -> Result<[[f64; 4]; 4]> {
    let h = hess_v(p, &PotentialPoint::complexified(t, x_im, s, y_im))?;
    let mut out = [[0.0; 4]; 4];
    // index 2j is the real direction of variable j, 2j+1 the imaginary one
    for j in 0..2 {
        for k in 0..2 {
            out[2 * j][2 * k] = h[j][k].re;
            out[2 * j][2 * k + 1] = -h[j][k].im;
            out[2 * j + 1][2 * k] = -h[j][k].im;
            out[2 * j + 1][2 * k + 1] = -h[j][k].re;
        }
    }
    Ok(out)
}

/// Determinant of a real 4×4 matrix by Gaussian elimination with partial pivoting.
pub fn det4(m: &[[f64; 4]; 4]) -> f64 {
    let mut a = *m;
    let mut det = 1.0;
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap_or(col);
        if a[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..4 {
            let factor = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= factor * a[col][k];
            }
        }
    }
    det
}

/// Piecewise-linear model of `f/(2π)` at infinity in the `(X, Y)` fibre:
/// `F = [X+Y<0]((t+s)−3/2)(X+Y) + [X−Y<0]((t−s)−1/2)(X−Y) + [X<0](3/2−3t)X
///      + (p+3/2+n−(2p+1)s)Y + (m+1)X`.
pub fn f_bound(p: i64, t: f64, s: f64, x_im: f64, y_im: f64, idx: FourierIndex) -> f64 {
    let plus = x_im + y_im;
    let minus = x_im - y_im;
    let mut acc = 0.0;
    if plus < 0.0 {
        acc += (t + s - 1.5) * plus;
    }
    if minus < 0.0 {
        acc += (t - s - 0.5) * minus;
    }
    if x_im < 0.0 {
        acc += (1.5 - 3.0 * t) * x_im;
    }
    let pf = p as f64;
    acc + (pf + 1.5 + idx.n as f64 - (2.0 * pf + 1.0) * s) * y_im + (idx.m as f64 + 1.0) * x_im
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_interior(rng: &mut ChaCha8Rng) -> PotentialPoint {
        PotentialPoint::new(
            c(rng.gen_range(0.55..0.95), rng.gen_range(-0.2..0.2)),
            c(rng.gen_range(0.15..0.45) + 0.2, rng.gen_range(-0.2..0.2)),
        )
    }

    #[test]
    fn index_zero_and_shift() {
        let pt = PotentialPoint::new(c(0.7, 0.1), c(0.55, -0.05));
        let a = v(6, &pt).unwrap();
        let b = v_mn(6, &pt, FourierIndex::ZERO).unwrap();
        assert_eq!(a, b);
        let idx = FourierIndex::new(-1, 2);
        let d = v_mn(6, &pt, idx).unwrap() - a - idx.shift(&pt);
        assert!(d.norm() < 1e-12);
        // real t: the m-shift is purely imaginary
        let pr = PotentialPoint::real(0.7, 0.5);
        let d = v_mn(6, &pr, FourierIndex::new(-1, 0)).unwrap() - v(6, &pr).unwrap();
        assert!(d.re.abs() < 1e-13);
    }

    #[test]
    fn real_part_on_real_points_is_lobachevsky_combination() {
        for (t, s) in [(0.75, 0.5), (0.6, 0.45), (0.85, 0.3)] {
            let r = v(6, &PotentialPoint::real(t, s)).unwrap().re;
            assert!((r - v_function(t, s)).abs() < 1e-12, "{t},{s}");
        }
    }

    #[test]
    fn reflection_symmetry_in_s() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let pt = random_interior(&mut rng);
            let refl = PotentialPoint::new(pt.t, Complex64::new(1.0, 0.0) - pt.s);
            for (m, n) in [(0, 0), (-1, 1), (0, -1), (1, 3)] {
                let lhs = v_mn(6, &refl, FourierIndex::new(m, n)).unwrap();
                let rhs = v_mn(6, &pt, FourierIndex::new(m, -n - 2)).unwrap() - I * TAU * (n + 1) as f64;
                assert!((lhs - rhs).norm() < 1e-11, "{lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let idx = FourierIndex::new(-1, 2);
        for k in 0..100 {
            let pt = if k == 0 { PotentialPoint::new(c(0.7, 0.1), c(0.55, -0.05)) } else { random_interior(&mut rng) };
            let g = grad_v_mn(6, &pt, idx).unwrap();
            for step in [1e-5, 1e-4] {
                let dt = (v_mn(6, &PotentialPoint::new(pt.t + step, pt.s), idx).unwrap()
                    - v_mn(6, &PotentialPoint::new(pt.t - step, pt.s), idx).unwrap())
                    / (2.0 * step);
                let ds = (v_mn(6, &PotentialPoint::new(pt.t, pt.s + step), idx).unwrap()
                    - v_mn(6, &PotentialPoint::new(pt.t, pt.s - step), idx).unwrap())
                    / (2.0 * step);
                assert!((dt - g[0]).norm() < 1e-6 * (1.0 + g[0].norm()));
                assert!((ds - g[1]).norm() < 1e-6 * (1.0 + g[1].norm()));
            }
        }
    }

    #[test]
    fn hessian_matches_finite_differences_and_h_factor() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let pt = random_interior(&mut rng);
            let h = hess_v(6, &pt).unwrap();
            let step = 1e-5;
            let gp = grad_v(6, &PotentialPoint::new(pt.t + step, pt.s)).unwrap();
            let gm = grad_v(6, &PotentialPoint::new(pt.t - step, pt.s)).unwrap();
            let sp = grad_v(6, &PotentialPoint::new(pt.t, pt.s + step)).unwrap();
            let sm = grad_v(6, &PotentialPoint::new(pt.t, pt.s - step)).unwrap();
            let scale = 1.0 + h[0][0].norm() + h[1][1].norm();
            assert!(((gp[0] - gm[0]) / (2.0 * step) - h[0][0]).norm() < 1e-6 * scale);
            assert!(((gp[1] - gm[1]) / (2.0 * step) - h[0][1]).norm() < 1e-6 * scale);
            assert!(((sp[1] - sm[1]) / (2.0 * step) - h[1][1]).norm() < 1e-6 * scale);
            let d = det2(&h);
            let via_h = (I * TAU) * (I * TAU) * h_factor(6, pt.x(), pt.y());
            assert!((d - via_h).norm() <= 1e-10 * d.norm());
        }
    }

    #[test]
    fn f_hessian_formula_and_determinant_bridge() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let idx = FourierIndex::new(0, 1);
        for _ in 0..40 {
            let (t, s) = (rng.gen_range(0.55..0.95), rng.gen_range(0.35..0.6));
            let (xx, yy) = (rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3));
            let hs = f_hessian_xy(t, xx, s, yy).unwrap();
            let e = 1e-4;
            let f = |a: f64, b: f64| f_real(6, t, a, s, b, idx).unwrap();
            let fxx = (f(xx + e, yy) - 2.0 * f(xx, yy) + f(xx - e, yy)) / (e * e);
            let fyy = (f(xx, yy + e) - 2.0 * f(xx, yy) + f(xx, yy - e)) / (e * e);
            let fxy = (f(xx + e, yy + e) - f(xx + e, yy - e) - f(xx - e, yy + e) + f(xx - e, yy - e)) / (4.0 * e * e);
            let scale = 1.0 + hs[0][0].abs() + hs[1][1].abs();
            assert!((fxx - hs[0][0]).abs() < 1e-5 * scale, "{fxx} vs {}", hs[0][0]);
            assert!((fyy - hs[1][1]).abs() < 1e-5 * scale);
            assert!((fxy - hs[0][1]).abs() < 1e-5 * scale);
            let full = f_hessian_full(6, t, xx, s, yy).unwrap();
            assert!((full[1][1] - hs[0][0]).abs() < 1e-9 * scale);
            assert!((full[3][3] - hs[1][1]).abs() < 1e-9 * scale);
            let d4 = det4(&full);
            let dc = det2(&hess_v(6, &PotentialPoint::complexified(t, xx, s, yy)).unwrap()).norm_sqr();
            assert!((d4 - dc).abs() <= 1e-8 * dc, "{d4} vs {dc}");
        }
    }

    #[test]
    fn f_bound_cases() {
        let idx = FourierIndex::new(0, 0);
        assert_eq!(f_bound(6, 0.8, 0.5, 0.0, 0.0, idx), 0.0);
        let m1 = FourierIndex::new(-1, 2);
        for y in [0.0, 1.0, 7.5] {
            let expect = (6.0 + 1.5 + 2.0 - 13.0 * 0.55) * y;
            assert!((f_bound(6, 0.8, 0.55, y, y, m1) - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn f_bound_sandwiches_f() {
        // |f − 2πF| stays bounded on a large (X, Y) grid
        for (t, s) in [(0.8, 0.5), (0.7, 0.45), (0.85, 0.6)] {
            let idx = FourierIndex::new(0, 0);
            let mut worst = 0.0f64;
            for i in -25..=25 {
                for j in -25..=25 {
                    let (xx, yy) = (2.0 * i as f64 + 0.013, 2.0 * j as f64 + 0.007);
                    let d = f_real(6, t, xx, s, yy, idx).unwrap() - TAU * f_bound(6, t, s, xx, yy, idx);
                    worst = worst.max(d.abs());
                }
            }
            assert!(worst < 5.0, "({t},{s}): {worst}");
        }
    }

    #[test]
    fn finite_potential_approaches_limit() {
        let cfg = NumericsConfig::default();
        let pt = PotentialPoint::real(0.75, 0.55);
        let mut scaled = Vec::new();
        for n in [20u32, 40, 80] {
            let spec = KnotSpec::new(6, n).unwrap();
            let a = v_n_full(&spec, &pt, FourierIndex::ZERO, &cfg).unwrap();
            let b = FinitePotential::new(&spec).unwrap().eval(&pt, FourierIndex::ZERO).unwrap();
            assert!((a - b).norm() < 1e-10);
            let lim = v(6, &pt).unwrap();
            scaled.push((a - lim).norm() * (2 * n + 1) as f64);
        }
        // |V_N − V| ≤ C/(2N+1) with a stable constant
        assert!(scaled.iter().cloned().fold(0.0, f64::max) < 2.0 * scaled.iter().cloned().fold(f64::MAX, f64::min));
        let idx = FourierIndex::new(1, -2);
        let spec = KnotSpec::new(6, 10).unwrap();
        let d = v_n_full(&spec, &pt, idx, &cfg).unwrap() - v_n_full(&spec, &pt, FourierIndex::ZERO, &cfg).unwrap();
        assert!((d - idx.shift(&pt)).norm() < 1e-12);
    }

    #[test]
    fn finite_potential_first_order_expansion() {
        // V_N = V − (log(1−xy) + log(1−x/y) − 4πit)/(2N+1) + O((2N+1)^{-2})
        let cfg = NumericsConfig::default();
        let pt = PotentialPoint::real(0.8, 0.52);
        let mut scaled = Vec::new();
        for n in [20u32, 40, 80] {
            let spec = KnotSpec::new(6, n).unwrap();
            let m = (2 * n + 1) as f64;
            let first = (log1m_e("t", pt.t + pt.s).unwrap() + log1m_e("t", pt.t - pt.s).unwrap()
                - I * 2.0 * TAU * pt.t)
                / m;
            let w = v_n_full(&spec, &pt, FourierIndex::ZERO, &cfg).unwrap() - v(6, &pt).unwrap() + first;
            scaled.push(w.norm() * m * m);
        }
        assert!(scaled.iter().all(|w| *w < 50.0), "{scaled:?}");
    }
}
