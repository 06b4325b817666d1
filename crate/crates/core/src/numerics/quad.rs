//! Quadrature engines: Gauss–Legendre rules, adaptive Gauss–Kronrod (7/15) on
//! intervals, the two-ray-plus-semicircle contour used by the quantum
//! dilogarithm, and iterated adaptive quadrature on rectangles.

use std::collections::{BinaryHeap, HashMap};
use std::sync::{Arc, RwLock};

use num_complex::Complex64;
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use super::sum::ComplexSum;
use super::{ComplexValue, NumericsConfig, I};
use crate::error::{Error, Result};

/// Outcome of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: ComplexValue,
    /// Estimated absolute error (non-negative).
    pub est_error: f64,
    /// Number of integrand evaluations.
    pub evaluations: usize,
}

impl QuadResult {
    pub const ZERO: QuadResult = QuadResult { value: Complex64::new(0.0, 0.0), est_error: 0.0, evaluations: 0 };

    fn combine(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            est_error: self.est_error + other.est_error,
            evaluations: self.evaluations + other.evaluations,
        }
    }
}

/// Gauss–Legendre nodes and weights on `[−1, 1]`, ascending nodes.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

static GL_CACHE: Lazy<RwLock<HashMap<usize, Arc<GaussLegendre>>>> = Lazy::new(|| RwLock::new(HashMap::new()));

/// Returns the `n`-point Gauss–Legendre rule (cached).
pub fn gauss_legendre(n: usize) -> Arc<GaussLegendre> {
    assert!(n >= 1, "Gauss–Legendre rule needs at least one node");
    if let Some(r) = GL_CACHE.read().expect("rule cache poisoned").get(&n) {
        return Arc::clone(r);
    }
    let rule = Arc::new(compute_gauss_legendre(n));
    GL_CACHE.write().expect("rule cache poisoned").entry(n).or_insert_with(|| Arc::clone(&rule));
    rule
}

fn compute_gauss_legendre(n: usize) -> GaussLegendre {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess for the i-th largest root
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d.is_finite() { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    GaussLegendre { nodes, weights }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
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

// Kronrod 15-point abscissae (non-negative half) and weights, with the
// embedded 7-point Gauss weights.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One Gauss–Kronrod 7/15 panel: returns (Kronrod value, |K − G| estimate).
fn gk15<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut rk = fc * WGK[7];
    let mut rg = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        rk += (f1 + f2) * WGK[j];
        if j % 2 == 1 {
            rg += (f1 + f2) * WG[j / 2];
        }
    }
    let k = rk * h;
    let g = rg * h;
    (k, (k - g).norm())
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    seq: usize,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.err.total_cmp(&o.err).is_eq() && self.seq == o.seq
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        // largest error first; ties broken by creation order for determinism
        self.err.total_cmp(&o.err).then_with(|| o.seq.cmp(&self.seq))
    }
}

/// Default panel budget for [`integrate_interval`].
pub const DEFAULT_MAX_PANELS: usize = 2000;

/// Globally adaptive Gauss–Kronrod (7/15) quadrature of a complex-valued
/// function on `[a, b]`.
///
/// Converges when the summed error estimate is at most
/// `max(abs_tol, rel_tol·|value|)`.
pub fn integrate_interval<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<QuadResult> {
    if a == b {
        return Ok(QuadResult::ZERO);
    }
    let mut heap = BinaryHeap::new();
    let (v, e) = gk15(&mut f, a, b);
    let mut evals = 15;
    let mut seq = 0;
    heap.push(Panel { a, b, value: v, err: e, seq });
    loop {
        let (total, err) = totals(&heap);
        if !total.re.is_finite() || !total.im.is_finite() {
            return Err(Error::Quadrature { estimate: total, error: f64::INFINITY });
        }
        if err <= abs_tol.max(rel_tol * total.norm()) {
            return Ok(QuadResult { value: total, est_error: err, evaluations: evals });
        }
        if heap.len() >= max_panels {
            return Err(Error::Quadrature { estimate: total, error: err });
        }
        let p = heap.pop().expect("heap is never empty");
        let m = 0.5 * (p.a + p.b);
        if !(m > p.a && m < p.b) {
            // panel cannot be split further in floating point
            return Err(Error::Quadrature { estimate: total, error: err });
        }
        let (v1, e1) = gk15(&mut f, p.a, m);
        let (v2, e2) = gk15(&mut f, m, p.b);
        evals += 30;
        seq += 1;
        heap.push(Panel { a: p.a, b: m, value: v1, err: e1, seq });
        seq += 1;
        heap.push(Panel { a: m, b: p.b, value: v2, err: e2, seq });
    }
}

fn totals(heap: &BinaryHeap<Panel>) -> (Complex64, f64) {
    // sum in interval order so the result does not depend on heap layout
    let mut panels: Vec<&Panel> = heap.iter().collect();
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut s = ComplexSum::new();
    let mut e = 0.0;
    for p in panels {
        s.add(p.value);
        e += p.err;
    }
    (s.value(), e)
}

/// Description of the contour `(−∞, −R] ∪ {|z| = R, Im z ≥ 0} ∪ [R, ∞)`
/// traversed from `−∞` to `+∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourPieces {
    /// Radius `R` of the semicircle.
    pub radius: f64,
    /// Hard cap on the ray truncation point.
    pub max_ray: f64,
}

impl ContourPieces {
    pub fn new(radius: f64) -> Self {
        ContourPieces { radius, max_ray: 1e7 }
    }
}

impl Default for ContourPieces {
    fn default() -> Self {
        ContourPieces::new(1.0)
    }
}

/// Integrates `f` along the contour described by `pieces`.
///
/// The rays are folded onto `[R, ∞)` as `f(x) + f(−x)` and integrated over
/// geometric panels `[R·2^j, R·2^{j+1}]` until the estimated tail is below
/// `cfg.quad_abs_tol·10⁻²`.
pub fn integrate_contour<F: Fn(Complex64) -> Complex64>(f: F, pieces: &ContourPieces, cfg: &NumericsConfig) -> Result<QuadResult> {
    integrate_contour_split(&f, |x: f64| f(Complex64::new(x, 0.0)) + f(Complex64::new(-x, 0.0)), pieces, cfg)
}

/// Contour integral with a separately supplied folded ray integrand
/// `ray_pair(x) = f(x) + f(−x)` (allowing the caller to evaluate it stably).
pub fn integrate_contour_split<F, G>(arc: &F, ray_pair: G, pieces: &ContourPieces, cfg: &NumericsConfig) -> Result<QuadResult>
where
    F: Fn(Complex64) -> Complex64,
    G: Fn(f64) -> Complex64,
{
    let r = pieces.radius;
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::domain("integrate_contour", "contour radius must be positive"));
    }
    let abs_tol = cfg.quad_abs_tol;
    let rel_tol = cfg.quad_rel_tol;
    // upper semicircle from −R to R: θ from π to 0
    let arc_res = integrate_interval(
        |th: f64| {
            let z = Complex64::from_polar(r, th);
            -(arc(z) * I * z)
        },
        0.0,
        std::f64::consts::PI,
        abs_tol * 0.25,
        rel_tol * 0.25,
        DEFAULT_MAX_PANELS,
    )?;
    let mut total = arc_res;
    let mut a = r;
    let mut fa = ray_pair(a).norm();
    let mut quiet = 0;
    while a < pieces.max_ray {
        let b = 2.0 * a;
        let panel = integrate_interval(&ray_pair, a, b, abs_tol * 0.25, rel_tol * 0.25, DEFAULT_MAX_PANELS)?;
        total = total.combine(panel);
        let fb = ray_pair(b).norm();
        total.evaluations += 1;
        // exponential tail estimate from the endpoint decay on this panel
        let tail = if fb == 0.0 {
            0.0
        } else if fa > fb {
            let rate = (fa / fb).ln() / (b - a);
            fb / rate
        } else {
            f64::INFINITY
        };
        a = b;
        fa = fb;
        if tail < abs_tol * 1e-2 && panel.value.norm() < abs_tol.max(rel_tol * total.value.norm()) {
            quiet += 1;
            if quiet >= 2 {
                return Ok(total);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Quadrature { estimate: total.value, error: f64::INFINITY })
}

/// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Rect { x0, x1, y0, y1 }
    }
}

/// Iterated adaptive quadrature of `f(x, y)` over a rectangle.
///
/// The outer integral in `x` is adaptive; every outer node runs an adaptive
/// inner integral in `y`. Inner error estimates are accumulated with the outer
/// weights into the reported error.
pub fn integrate_rect2d<F: Fn(f64, f64) -> Complex64>(f: F, rect: &Rect, tol: f64) -> Result<QuadResult> {
    if tol.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::domain("integrate_rect2d", "tolerance must be positive"));
    }
    let mut inner_err = 0.0f64;
    let mut inner_evals = 0usize;
    let mut failure: Option<Error> = None;
    let outer = integrate_interval(
        |x| {
            match integrate_interval(|y| f(x, y), rect.y0, rect.y1, tol * 0.1, tol * 0.1, DEFAULT_MAX_PANELS) {
                Ok(r) => {
                    inner_err = inner_err.max(r.est_error);
                    inner_evals += r.evaluations;
                    r.value
                }
                Err(e) => {
                    failure.get_or_insert(e);
                    Complex64::new(0.0, 0.0)
                }
            }
        },
        rect.x0,
        rect.x1,
        tol * 0.5,
        tol * 0.5,
        DEFAULT_MAX_PANELS,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(QuadResult {
        value: outer.value,
        est_error: outer.est_error + inner_err * (rect.x1 - rect.x0).abs(),
        evaluations: inner_evals,
    })
}
