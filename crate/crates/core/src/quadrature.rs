//! Globally adaptive Gauss-Kronrod (21-point) quadrature on finite and
//! semi-infinite intervals.
//!
//! Integrands may be vector valued (`[f64; N]`): all components share the
//! same panels, and the subdivision stops once every component meets its own
//! tolerance. Semi-infinite tails are mapped onto `[0, 1)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Change of variables used for semi-infinite tails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    /// `x = x0 + s·t/(1−t)`
    Algebraic,
    /// `x = x0 − s·ln(1−t)`
    ExpDecay,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub transform: Transform,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            rel_tol: 1e-8,
            abs_tol: 1e-14,
            max_subdivisions: 200,
            transform: Transform::Algebraic,
        }
    }
}

impl QuadSpec {
    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        QuadSpec { rel_tol, ..self }
    }

    pub fn with_abs_tol(self, abs_tol: f64) -> Self {
        QuadSpec { abs_tol, ..self }
    }

    pub fn with_max_subdivisions(self, max_subdivisions: usize) -> Self {
        QuadSpec {
            max_subdivisions,
            ..self
        }
    }

    pub fn with_transform(self, transform: Transform) -> Self {
        QuadSpec { transform, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(Error::domain("quadrature tolerances must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::domain("max_subdivisions must be at least 1"));
        }
        Ok(())
    }

    /// Spec for the inner axis of an iterated integral.
    pub fn inner(&self) -> Self {
        QuadSpec {
            rel_tol: self.rel_tol / NESTING_FACTOR,
            abs_tol: self.abs_tol / NESTING_FACTOR,
            ..*self
        }
    }
}

/// Inner axes of iterated integrals run this much tighter than the outer one.
pub const NESTING_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VecQuadResult<const N: usize> {
    pub values: [f64; N],
    pub abs_error_estimates: [f64; N],
    pub evaluations: usize,
}

impl<const N: usize> VecQuadResult<N> {
    pub fn component(&self, i: usize) -> QuadResult {
        QuadResult {
            value: self.values[i],
            abs_error_estimate: self.abs_error_estimates[i],
            evaluations: self.evaluations,
        }
    }
}

/// Integration region: finite panels between consecutive `edges`, optionally
/// followed by a mapped tail from the last edge to infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    edges: Vec<f64>,
    tail_scale: Option<f64>,
}

impl Region {
    pub fn finite(a: f64, b: f64) -> Self {
        Region {
            edges: vec![a, b],
            tail_scale: None,
        }
    }

    /// `[a, ∞)` with the tail map scaled by `scale` (the length over which
    /// the integrand varies).
    pub fn semi_infinite(a: f64, scale: f64) -> Self {
        Region {
            edges: vec![a],
            tail_scale: Some(scale),
        }
    }

    /// Finite panels at the given ascending edges, plus an optional tail.
    pub fn with_edges(edges: Vec<f64>, tail_scale: Option<f64>) -> Self {
        Region { edges, tail_scale }
    }

    /// Number of panels the region starts with.
    pub fn panel_count(&self) -> usize {
        self.edges.len().saturating_sub(1) + usize::from(self.tail_scale.is_some())
    }

    fn validate(&self) -> Result<()> {
        if self.edges.is_empty() {
            return Err(Error::domain("integration region needs at least one edge"));
        }
        if self.tail_scale.is_none() && self.edges.len() < 2 {
            return Err(Error::domain("finite region needs two edges"));
        }
        if self.edges.iter().any(|e| !e.is_finite()) {
            return Err(Error::domain("integration edges must be finite"));
        }
        if self.edges.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::domain("integration edges must be ascending"));
        }
        if let Some(s) = self.tail_scale {
            if !(s.is_finite() && s > 0.0) {
                return Err(Error::domain(format!(
                    "tail scale must be positive, got {s}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
enum Map {
    Identity,
    Tail {
        x0: f64,
        scale: f64,
        kind: Transform,
    },
}

impl Map {
    /// Returns `(x, dx/dt)`.
    #[inline]
    fn apply(self, t: f64) -> (f64, f64) {
        match self {
            Map::Identity => (t, 1.0),
            Map::Tail {
                x0,
                scale,
                kind: Transform::Algebraic,
            } => {
                let r = 1.0 / (1.0 - t);
                (x0 + scale * t * r, scale * r * r)
            }
            Map::Tail {
                x0,
                scale,
                kind: Transform::ExpDecay,
            } => (x0 - scale * (-t).ln_1p(), scale / (1.0 - t)),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel<const N: usize> {
    a: f64,
    b: f64,
    map: Map,
    value: [f64; N],
    error: [f64; N],
    roundoff: [f64; N],
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const ROUNDOFF: f64 = 50.0 * f64::EPSILON;

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / ROUNDOFF {
        scaled = scaled.max(ROUNDOFF * res_abs);
    }
    scaled
}

/// Applies the 21-point Kronrod rule (with its embedded 10-point Gauss rule)
/// to one panel.
fn gk21<const N: usize, F>(f: &mut F, a: f64, b: f64, map: Map) -> Result<Panel<N>>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |t: f64| -> Result<[f64; N]> {
        let (x, jac) = map.apply(t);
        let mut v = f(x)?;
        for c in v.iter_mut() {
            *c *= jac;
            if !c.is_finite() {
                return Err(Error::domain(format!(
                    "integrand is not finite at x = {x:e}"
                )));
            }
        }
        Ok(v)
    };

    let mut fv1 = [[0.0; N]; 10];
    let mut fv2 = [[0.0; N]; 10];
    let fc = eval(center)?;
    let mut res_k = [0.0; N];
    let mut res_g = [0.0; N];
    let mut res_abs = [0.0; N];
    for i in 0..N {
        res_k[i] = fc[i] * WGK[10];
        res_abs[i] = res_k[i].abs();
    }
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        for i in 0..N {
            let sum = f1[i] + f2[i];
            res_k[i] += WGK[j] * sum;
            res_abs[i] += WGK[j] * (f1[i].abs() + f2[i].abs());
            if j % 2 == 1 {
                res_g[i] += WG[j / 2] * sum;
            }
        }
        fv1[j] = f1;
        fv2[j] = f2;
    }

    let mut value = [0.0; N];
    let mut error = [0.0; N];
    let mut roundoff = [0.0; N];
    for i in 0..N {
        let mean = 0.5 * res_k[i];
        let mut res_asc = WGK[10] * (fc[i] - mean).abs();
        for j in 0..10 {
            res_asc += WGK[j] * ((fv1[j][i] - mean).abs() + (fv2[j][i] - mean).abs());
        }
        let abs_half = half.abs();
        value[i] = res_k[i] * half;
        error[i] = rescale_error(
            (res_k[i] - res_g[i]) * half,
            res_abs[i] * abs_half,
            res_asc * abs_half,
        );
        roundoff[i] = ROUNDOFF * res_abs[i] * abs_half;
    }
    Ok(Panel {
        a,
        b,
        map,
        value,
        error,
        roundoff,
    })
}

/// Adaptive integration of a vector-valued, fallible integrand over `region`.
pub fn integrate_vec<const N: usize, F>(
    f: F,
    region: &Region,
    spec: &QuadSpec,
) -> Result<VecQuadResult<N>>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    integrate_vec_floor(f, region, spec, [0.0; N])
}

/// As [`integrate_vec`], with an extra absolute tolerance per component
/// (used when the integrand is a small remainder of a known larger value).
pub(crate) fn integrate_vec_floor<const N: usize, F>(
    f: F,
    region: &Region,
    spec: &QuadSpec,
    abs_floor: [f64; N],
) -> Result<VecQuadResult<N>>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    adaptive(f, region, spec, abs_floor, None, false)
}

/// As [`integrate_vec_floor`], with the components treated as entries of
/// one quantity: component `i` in common units is `value_i · weights[i]`,
/// and every component converges relative to the largest of them.
pub(crate) fn integrate_vec_joint<const N: usize, F>(
    f: F,
    region: &Region,
    spec: &QuadSpec,
    abs_floor: [f64; N],
    weights: [f64; N],
) -> Result<VecQuadResult<N>>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    adaptive(f, region, spec, abs_floor, Some(weights), false)
}

/// As [`integrate_vec`], but the relative tolerance also applies to
/// `∫|f|`, so a component whose positive and negative parts cancel is not
/// refined past the accuracy of its parts.
pub(crate) fn integrate_vec_magnitude<const N: usize, F>(
    f: F,
    region: &Region,
    spec: &QuadSpec,
) -> Result<VecQuadResult<N>>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    adaptive(f, region, spec, [0.0; N], None, true)
}

fn adaptive<const N: usize, F>(
    mut f: F,
    region: &Region,
    spec: &QuadSpec,
    abs_floor: [f64; N],
    weights: Option<[f64; N]>,
    magnitude: bool,
) -> Result<VecQuadResult<N>>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    spec.validate()?;
    region.validate()?;

    let mut panels: Vec<Panel<N>> = Vec::new();
    for w in region.edges.windows(2) {
        if w[1] > w[0] {
            panels.push(gk21(&mut f, w[0], w[1], Map::Identity)?);
        }
    }
    if let Some(scale) = region.tail_scale {
        let x0 = *region.edges.last().expect("validated non-empty");
        let map = Map::Tail {
            x0,
            scale,
            kind: spec.transform,
        };
        panels.push(gk21(&mut f, 0.0, 1.0, map)?);
    }
    if panels.is_empty() {
        return Ok(VecQuadResult {
            values: [0.0; N],
            abs_error_estimates: [0.0; N],
            evaluations: 0,
        });
    }
    let budget = spec.max_subdivisions.max(panels.len());

    loop {
        let mut value = [0.0; N];
        let mut error = [0.0; N];
        let mut roundoff = [0.0; N];
        for p in &panels {
            for i in 0..N {
                value[i] += p.value[i];
                error[i] += p.error[i];
                roundoff[i] += p.roundoff[i];
            }
        }
        let joint = weights.map(|w| {
            let norm = (0..N).fold(0.0f64, |m, i| m.max((value[i] * w[i]).abs()));
            (norm, w)
        });
        let mut tol = [0.0; N];
        let mut worst = 0usize;
        let mut worst_ratio = 0.0;
        let mut done = true;
        for i in 0..N {
            tol[i] = spec
                .abs_tol
                .max(abs_floor[i])
                .max(spec.rel_tol * value[i].abs());
            if let Some((norm, w)) = joint {
                tol[i] = tol[i].max(spec.rel_tol * norm / w[i].abs());
            }
            if magnitude {
                // roundoff is ROUNDOFF·∫|f| per panel
                tol[i] = tol[i].max(spec.rel_tol * roundoff[i] / ROUNDOFF);
            }
            let met = error[i] <= tol[i] || error[i] <= 2.0 * roundoff[i];
            if !met {
                done = false;
                let ratio = error[i] / tol[i];
                if ratio > worst_ratio {
                    worst_ratio = ratio;
                    worst = i;
                }
            }
        }
        if done {
            return Ok(VecQuadResult {
                values: value,
                abs_error_estimates: error,
                evaluations: count_evaluations(&panels, region),
            });
        }
        if panels.len() >= budget {
            return Err(Error::Convergence {
                axis: "x",
                best: value[worst],
                abs_error: error[worst],
                evaluations: count_evaluations(&panels, region),
            });
        }

        // split the panel contributing most to the unconverged components
        let mut pick = 0usize;
        let mut pick_score = f64::NEG_INFINITY;
        for (k, p) in panels.iter().enumerate() {
            let mut score = 0.0f64;
            for i in 0..N {
                let met = error[i] <= tol[i] || error[i] <= 2.0 * roundoff[i];
                if !met {
                    score = score.max((p.error[i] - p.roundoff[i]).max(0.0) / tol[i]);
                }
            }
            if score > pick_score {
                pick_score = score;
                pick = k;
            }
        }
        let p = panels.swap_remove(pick);
        let mid = 0.5 * (p.a + p.b);
        if !(mid > p.a && mid < p.b) {
            return Err(Error::Convergence {
                axis: "x",
                best: value[worst],
                abs_error: error[worst],
                evaluations: count_evaluations(&panels, region),
            });
        }
        panels.push(gk21(&mut f, p.a, mid, p.map)?);
        panels.push(gk21(&mut f, mid, p.b, p.map)?);
    }
}

fn count_evaluations<const N: usize>(panels: &[Panel<N>], region: &Region) -> usize {
    // every bisection retires one panel and adds two
    let initial = region.edges.len() - 1 + usize::from(region.tail_scale.is_some());
    21 * (2 * panels.len() - initial.min(panels.len()))
}

/// Scalar convenience over `integrate_vec`.
pub fn integrate_region<F>(mut f: F, region: &Region, spec: &QuadSpec) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let r = integrate_vec(|x| Ok([f(x)?]), region, spec)?;
    Ok(r.component(0))
}

/// `∫_a^b f(x) dx`.
pub fn integrate<F>(mut f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<QuadResult>
where
    F: FnMut(f64) -> f64,
{
    integrate_region(|x| Ok(f(x)), &Region::finite(a, b), spec)
}

/// `∫_0^∞ f(x) dx` with unit tail scale.
pub fn integrate_semiinf<F>(mut f: F, spec: &QuadSpec) -> Result<QuadResult>
where
    F: FnMut(f64) -> f64,
{
    integrate_region(|x| Ok(f(x)), &Region::semi_infinite(0.0, 1.0), spec)
}

/// `∫_0^∞ dx ∫_0^∞ dy f(x, y)`, iterated with the inner axis tighter by
/// `NESTING_FACTOR`.
pub fn integrate_2d<F>(mut f: F, spec: &QuadSpec) -> Result<QuadResult>
where
    F: FnMut(f64, f64) -> f64,
{
    let inner = spec.inner();
    let mut evaluations = 0usize;
    let mut inner_error = 0.0f64;
    let outer = integrate_region(
        |x| {
            let r = integrate_semiinf(|y| f(x, y), &inner).map_err(|e| e.on_axis("y"))?;
            evaluations += r.evaluations;
            inner_error = inner_error.max(r.abs_error_estimate);
            Ok(r.value)
        },
        &Region::semi_infinite(0.0, 1.0),
        spec,
    )?;
    Ok(QuadResult {
        value: outer.value,
        abs_error_estimate: outer.abs_error_estimate + inner_error,
        evaluations: evaluations.max(1),
    })
}

/// `∫_0^∞ dx ∫_0^∞ dy ∫_0^∞ dz f(x, y, z)`.
pub fn integrate_3d<F>(mut f: F, spec: &QuadSpec) -> Result<QuadResult>
where
    F: FnMut(f64, f64, f64) -> f64,
{
    let inner = spec.inner();
    let mut evaluations = 0usize;
    let mut inner_error = 0.0f64;
    let outer = integrate_region(
        |x| {
            // the 2-D routine names its own axes x, y; shift them to y, z
            let r = integrate_2d(|y, z| f(x, y, z), &inner).map_err(|e| match e {
                Error::Convergence { axis: "y", .. } => e.on_axis("z"),
                e => e.on_axis("y"),
            })?;
            evaluations += r.evaluations;
            inner_error = inner_error.max(r.abs_error_estimate);
            Ok(r.value)
        },
        &Region::semi_infinite(0.0, 1.0),
        spec,
    )?;
    Ok(QuadResult {
        value: outer.value,
        abs_error_estimate: outer.abs_error_estimate + inner_error,
        evaluations: evaluations.max(1),
    })
}
