//! Region geometry in the `(t, s)` plane, the smooth cut-off `ψ`, and the
//! Lobachevsky combination `v(t, s)`.

use serde::{Deserialize, Serialize};

use crate::polylog::lobachevsky;

/// Default shrink parameter `ε` of the inner region `D'_ε`.
pub const DEFAULT_BUMP_EPS: f64 = 1e-5;

/// Bounds of `D'₀` as `(lower, upper)` for `t − s`, `t + s`, `s`, `t`.
pub(crate) const DP0_TMS: (f64, f64) = (0.02, 0.7);
pub(crate) const DP0_TPS: (f64, f64) = (1.02, 1.7);
pub(crate) const DP0_S: (f64, f64) = (0.2, 0.8);
pub(crate) const DP0_T: (f64, f64) = (0.5, 0.909);

/// Named regions of the `(t, s)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum RegionSpec {
    /// `D = {1 < t+s < 2, 0 < t−s < 1, 1/2 < t < 1}` (open).
    D,
    /// `D'₀ = {0.02 ≤ t−s ≤ 0.7, 1.02 ≤ t+s ≤ 1.7, 0.2 ≤ s ≤ 0.8, 0.5 ≤ t ≤ 0.909}` (closed).
    DPrime0,
    /// `D'_ε`: every bound of `D'₀` moved inwards by `ε` (closed).
    DPrimeEps(f64),
    /// `D''₀(p) = D'₀ ∩ {1 − c₀(p) ≤ s ≤ c₀(p)}` (closed).
    DDoublePrime0 { p: i64 },
    /// `D_H = {1/2 < t < 1, 1 < t+s < 3/2, 0 < t−s < 1/2}` (open).
    DH,
    /// `U_n(p) = D'₀ ∩ {(p+n+1−t)/(2p−1) < s < (p+n+t)/(2p−1), (p+n+t)/(2p) < s < (p+2+n−t)/(2p)}`.
    U { n: i64, p: i64 },
}

/// `c₀(p) = 7/(8p) + 1/2`, replaced at `p = 6` by the sharper bound `0.5871`.
pub fn c0(p: i64) -> f64 {
    if p == 6 {
        0.5871
    } else {
        7.0 / (8.0 * p as f64) + 0.5
    }
}

#[inline]
fn within(x: f64, (lo, hi): (f64, f64)) -> bool {
    lo <= x && x <= hi
}

/// Closed-form membership test for `(t, s)`.
pub fn region_contains(r: RegionSpec, t: f64, s: f64) -> bool {
    match r {
        RegionSpec::D => 1.0 < t + s && t + s < 2.0 && 0.0 < t - s && t - s < 1.0 && 0.5 < t && t < 1.0,
        RegionSpec::DPrime0 => {
            within(t - s, DP0_TMS) && within(t + s, DP0_TPS) && within(s, DP0_S) && within(t, DP0_T)
        }
        RegionSpec::DPrimeEps(e) => {
            let sh = |(lo, hi): (f64, f64)| (lo + e, hi - e);
            within(t - s, sh(DP0_TMS)) && within(t + s, sh(DP0_TPS)) && within(s, sh(DP0_S)) && within(t, sh(DP0_T))
        }
        RegionSpec::DDoublePrime0 { p } => {
            region_contains(RegionSpec::DPrime0, t, s) && within(s, (1.0 - c0(p), c0(p)))
        }
        RegionSpec::DH => 0.5 < t && t < 1.0 && 1.0 < t + s && t + s < 1.5 && 0.0 < t - s && t - s < 0.5,
        RegionSpec::U { n, p } => {
            let (pf, nf) = (p as f64, n as f64);
            region_contains(RegionSpec::DPrime0, t, s)
                && (pf + nf + 1.0 - t) / (2.0 * pf - 1.0) < s
                && s < (pf + nf + t) / (2.0 * pf - 1.0)
                && (pf + nf + t) / (2.0 * pf) < s
                && s < (pf + 2.0 + nf - t) / (2.0 * pf)
        }
    }
}

/// Top vertex of `U_n`: `((3p−2−n)/(4p−1), 1/2 + (5+4n)/(2(4p−1)))`.
pub fn u_n_top_vertex(p: i64, n: i64) -> (f64, f64) {
    let d = (4 * p - 1) as f64;
    ((3 * p - 2 - n) as f64 / d, 0.5 + (5 + 4 * n) as f64 / (2.0 * d))
}

/// Bottom vertex of `U_n`: `((3p+n)/(4p−1), 1/2 + (3+4n)/(2(4p−1)))`.
pub fn u_n_bottom_vertex(p: i64, n: i64) -> (f64, f64) {
    let d = (4 * p - 1) as f64;
    ((3 * p + n) as f64 / d, 0.5 + (3 + 4 * n) as f64 / (2.0 * d))
}

/// Exact rational check that the `U_n` vertices lie on their defining lines:
/// the top vertex on `s = (p+n+t)/(2p−1)` and `s = (p+2+n−t)/(2p)`, the
/// bottom vertex on `s = (p+n+1−t)/(2p−1)` and `s = (p+n+t)/(2p)`.
pub fn u_n_vertices_exact(p: i64, n: i64) -> bool {
    // with D = 4p−1: t = T/D and s = S/(2D)
    let (p, n) = (p as i128, n as i128);
    let d = 4 * p - 1;
    let (tt, st) = (3 * p - 2 - n, d + 5 + 4 * n);
    let (tb, sb) = (3 * p + n, d + 3 + 4 * n);
    // s(2p−1) = p+n+t  ⇔  S(2p−1) = 2(p+n)D + 2T, etc.
    let top_a = st * (2 * p - 1) == 2 * (p + n) * d + 2 * tt;
    let top_b = st * (2 * p) == 2 * (p + 2 + n) * d - 2 * tt;
    let bot_a = sb * (2 * p - 1) == 2 * (p + n + 1) * d - 2 * tb;
    let bot_b = sb * (2 * p) == 2 * (p + n) * d + 2 * tb;
    top_a && top_b && bot_a && bot_b
}

/// Half-plane `a·t + b·s ≤ c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlane {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HalfPlane {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        HalfPlane { a, b, c }
    }

    #[inline]
    pub fn value(&self, (t, s): (f64, f64)) -> f64 {
        self.a * t + self.b * s - self.c
    }
}

/// Bounded convex polygon given by its vertices in counter-clockwise order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon {
    pub vertices: Vec<(f64, f64)>,
}

impl ConvexPolygon {
    /// Intersection of half-planes, clipped from the box `[−10, 10]²`.
    pub fn from_half_planes(planes: &[HalfPlane]) -> Self {
        let mut poly = vec![(-10.0, -10.0), (10.0, -10.0), (10.0, 10.0), (-10.0, 10.0)];
        for hp in planes {
            poly = clip(&poly, hp);
            if poly.is_empty() {
                break;
            }
        }
        ConvexPolygon { vertices: poly }
    }

    /// Polygon of a region; open regions are represented by their closure.
    pub fn of_region(r: RegionSpec) -> Self {
        ConvexPolygon::from_half_planes(&region_half_planes(r))
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() < 3 || self.area() <= 0.0
    }

    /// Shoelace area.
    pub fn area(&self) -> f64 {
        let v = &self.vertices;
        let n = v.len();
        (0..n).map(|i| v[i].0 * v[(i + 1) % n].1 - v[(i + 1) % n].0 * v[i].1).sum::<f64>() * 0.5
    }

    /// `[t_min, t_max]` of the polygon.
    pub fn t_range(&self) -> (f64, f64) {
        self.vertices.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v.0), hi.max(v.0)))
    }

    /// The `s`-interval of the vertical slice at `t`, if non-empty.
    pub fn s_slice(&self, t: f64) -> Option<(f64, f64)> {
        let v = &self.vertices;
        let n = v.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let (a, b) = (v[i], v[(i + 1) % n]);
            let (tmin, tmax) = (a.0.min(b.0), a.0.max(b.0));
            if t < tmin || t > tmax {
                continue;
            }
            if a.0 == b.0 {
                lo = lo.min(a.1.min(b.1));
                hi = hi.max(a.1.max(b.1));
            } else {
                let s = a.1 + (b.1 - a.1) * (t - a.0) / (b.0 - a.0);
                lo = lo.min(s);
                hi = hi.max(s);
            }
        }
        (hi > lo).then_some((lo, hi))
    }
}

fn clip(poly: &[(f64, f64)], hp: &HalfPlane) -> Vec<(f64, f64)> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let cur = poly[i];
        let next = poly[(i + 1) % n];
        let (fc, fn_) = (hp.value(cur), hp.value(next));
        if fc <= 0.0 {
            out.push(cur);
        }
        if (fc < 0.0 && fn_ > 0.0) || (fc > 0.0 && fn_ < 0.0) {
            let r = fc / (fc - fn_);
            out.push((cur.0 + r * (next.0 - cur.0), cur.1 + r * (next.1 - cur.1)));
        }
    }
    out
}

/// Half-planes whose intersection is the closure of the region.
pub fn region_half_planes(r: RegionSpec) -> Vec<HalfPlane> {
    // lo ≤ a·t + b·s ≤ hi as two half-planes
    let band = |a: f64, b: f64, lo: f64, hi: f64| [HalfPlane::new(-a, -b, -lo), HalfPlane::new(a, b, hi)];
    let dp = |e: f64| {
        let mut v = Vec::new();
        v.extend(band(1.0, -1.0, DP0_TMS.0 + e, DP0_TMS.1 - e));
        v.extend(band(1.0, 1.0, DP0_TPS.0 + e, DP0_TPS.1 - e));
        v.extend(band(0.0, 1.0, DP0_S.0 + e, DP0_S.1 - e));
        v.extend(band(1.0, 0.0, DP0_T.0 + e, DP0_T.1 - e));
        v
    };
    match r {
        RegionSpec::D => {
            let mut v = Vec::new();
            v.extend(band(1.0, 1.0, 1.0, 2.0));
            v.extend(band(1.0, -1.0, 0.0, 1.0));
            v.extend(band(1.0, 0.0, 0.5, 1.0));
            v
        }
        RegionSpec::DPrime0 => dp(0.0),
        RegionSpec::DPrimeEps(e) => dp(e),
        RegionSpec::DDoublePrime0 { p } => {
            let mut v = dp(0.0);
            v.extend(band(0.0, 1.0, 1.0 - c0(p), c0(p)));
            v
        }
        RegionSpec::DH => {
            let mut v = Vec::new();
            v.extend(band(1.0, 0.0, 0.5, 1.0));
            v.extend(band(1.0, 1.0, 1.0, 1.5));
            v.extend(band(1.0, -1.0, 0.0, 0.5));
            v
        }
        RegionSpec::U { n, p } => {
            let (pf, nf) = (p as f64, n as f64);
            let mut v = dp(0.0);
            // (p+n+1−t)/(2p−1) ≤ s  ⇔  −t − (2p−1)s ≤ −(p+n+1)
            v.push(HalfPlane::new(-1.0, -(2.0 * pf - 1.0), -(pf + nf + 1.0)));
            // s ≤ (p+n+t)/(2p−1)  ⇔  −t + (2p−1)s ≤ p+n
            v.push(HalfPlane::new(-1.0, 2.0 * pf - 1.0, pf + nf));
            // (p+n+t)/(2p) ≤ s  ⇔  t − 2p s ≤ −(p+n)
            v.push(HalfPlane::new(1.0, -2.0 * pf, -(pf + nf)));
            // s ≤ (p+2+n−t)/(2p)  ⇔  t + 2p s ≤ p+2+n
            v.push(HalfPlane::new(1.0, 2.0 * pf, pf + 2.0 + nf));
            v
        }
    }
}

/// Whether every vertex of `inner` lies in `outer` (closure test when
/// `strict` is false, interior test when `strict` is true), tolerance `tol`.
pub fn polygon_within(inner: &ConvexPolygon, outer: RegionSpec, strict: bool, tol: f64) -> bool {
    let planes = region_half_planes(outer);
    inner.vertices.iter().all(|v| {
        planes.iter().all(|hp| {
            let x = hp.value(*v);
            if strict {
                x < -tol
            } else {
                x <= tol
            }
        })
    })
}

/// `C^∞` step: 0 for `x ≤ 0`, 1 for `x ≥ 1`, built from `e^{−1/x}`.
fn smoothstep(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let f = (-1.0 / x).exp();
    let g = (-1.0 / (1.0 - x)).exp();
    f / (f + g)
}

/// Window equal to 1 on `[lo+ε, hi−ε]`, 0 outside `[lo, hi]`.
#[inline]
fn window(u: f64, lo: f64, hi: f64, eps: f64) -> f64 {
    smoothstep((u - lo) / eps) * smoothstep((hi - u) / eps)
}

/// Smooth cut-off `ψ(t, s)`: 1 on `D'_ε`, 0 outside `D'₀`, strictly between
/// 0 and 1 in the collar, and exactly symmetric under `s ↦ 1 − s`.
///
/// With `τ = t − 1/2` and `σ = |s − 1/2|` the constraints of `D'₀` read
/// `τ ∓ σ ∈ [0.02, 0.7]`, `σ ≤ 0.3`, `t ∈ [0.5, 0.909]`, which depend on `s`
/// only through `σ`.
pub fn bump_psi(t: f64, s: f64, eps: f64) -> f64 {
    let tau = t - 0.5;
    let sigma = (s - 0.5).abs();
    window(tau - sigma, DP0_TMS.0, DP0_TMS.1, eps)
        * window(tau + sigma, DP0_TPS.0 - 1.0, DP0_TPS.1 - 1.0, eps)
        * window(sigma, -1.0, DP0_S.1 - 0.5, eps)
        * window(t, DP0_T.0, DP0_T.1, eps)
}

/// `v(t, s) = Λ(t+s) + Λ(t−s) − 3Λ(t)`.
pub fn v_function(t: f64, s: f64) -> f64 {
    lobachevsky(t + s) + lobachevsky(t - s) - 3.0 * lobachevsky(t)
}

/// Outcome of the grid sweep behind [`threshold_certificate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridCertificate {
    pub grid: usize,
    pub threshold: f64,
    /// Grid points of `D` with `v > threshold`.
    pub tested: usize,
    /// Those among them outside `D'₀`.
    pub violations: usize,
    /// Up to ten offending points, for diagnostics.
    pub examples: Vec<(f64, f64)>,
}

/// Sweeps the midpoints of a `grid × grid` partition of `(1/2, 1) × (0, 1)`
/// lying in `D` and checks the implication `v(t, s) > threshold ⇒ (t, s) ∈ D'₀`.
pub fn threshold_certificate(threshold: f64, grid: usize) -> GridCertificate {
    let mut cert = GridCertificate { grid, threshold, tested: 0, violations: 0, examples: Vec::new() };
    for i in 0..grid {
        let t = 0.5 + 0.5 * (i as f64 + 0.5) / grid as f64;
        for j in 0..grid {
            let s = (j as f64 + 0.5) / grid as f64;
            if !region_contains(RegionSpec::D, t, s) || v_function(t, s) <= threshold {
                continue;
            }
            cert.tested += 1;
            if !region_contains(RegionSpec::DPrime0, t, s) {
                cert.violations += 1;
                if cert.examples.len() < 10 {
                    cert.examples.push((t, s));
                }
            }
        }
    }
    cert
}
