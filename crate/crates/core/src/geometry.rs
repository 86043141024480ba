//! Closed-form metric data of `τ[n,t]` in the projective and half-space
//! models.
//!
//! Lengths are kept in tanh-space ([`HypLength`]) so the ideal simplex
//! (`t = π/2`), where circumradii diverge, stays finite and NaN-free.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::linalg::{dot, norm_sq, sub};
use crate::stable::{atanh_parts, one_minus_sin};
use crate::{Error, Result};

/// Parameters slightly above `π/2` (within this margin) are treated as ideal.
pub const IDEAL_CLAMP: f64 = 1e-9;

/// The pair `(n, t)` naming `τ[n,t]`.
///
/// `sin t` and `cos t` are stored alongside `t` so that callers who think in
/// terms of `sin t` (the natural parameter of the projective picture) do not
/// lose precision going through `asin`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimplexParams {
    n: usize,
    t: f64,
    sin_t: f64,
    cos_t: f64,
}

impl SimplexParams {
    pub fn new(n: usize, t: f64) -> Result<Self> {
        check_dim(n)?;
        if !(0.0..=FRAC_PI_2 + IDEAL_CLAMP).contains(&t) {
            return Err(Error::domain(format!("t = {t} outside [0, π/2]")));
        }
        if t >= FRAC_PI_2 {
            return Ok(Self::ideal_unchecked(n));
        }
        Ok(Self {
            n,
            t,
            sin_t: t.sin(),
            cos_t: t.cos(),
        })
    }

    /// Parametrise by `sin t ∈ [0, 1]`.
    pub fn from_sin(n: usize, sin_t: f64) -> Result<Self> {
        check_dim(n)?;
        if !(0.0..=1.0).contains(&sin_t) {
            return Err(Error::domain(format!("sin t = {sin_t} outside [0, 1]")));
        }
        if sin_t == 1.0 {
            return Ok(Self::ideal_unchecked(n));
        }
        Ok(Self {
            n,
            t: sin_t.asin(),
            sin_t,
            cos_t: ((1.0 - sin_t) * (1.0 + sin_t)).sqrt(),
        })
    }

    /// `t = π/2 - eps`, with `sin t` and `cos t` taken from `eps` directly
    /// so nothing is lost to the rounding of `π/2`.
    pub fn near_ideal(n: usize, eps: f64) -> Result<Self> {
        check_dim(n)?;
        if !(0.0..=FRAC_PI_2).contains(&eps) {
            return Err(Error::domain(format!("eps = {eps} outside [0, π/2]")));
        }
        if eps == 0.0 {
            return Ok(Self::ideal_unchecked(n));
        }
        Ok(Self {
            n,
            t: FRAC_PI_2 - eps,
            sin_t: eps.cos(),
            cos_t: eps.sin(),
        })
    }

    pub fn ideal(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self::ideal_unchecked(n))
    }

    fn ideal_unchecked(n: usize) -> Self {
        Self {
            n,
            t: FRAC_PI_2,
            sin_t: 1.0,
            cos_t: 0.0,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn sin_t(&self) -> f64 {
        self.sin_t
    }

    pub fn cos_t(&self) -> f64 {
        self.cos_t
    }

    /// All vertices on the sphere at infinity.
    pub fn is_ideal(&self) -> bool {
        self.cos_t == 0.0
    }

    /// The simplex collapsed to a point (`t = 0`).
    pub fn is_degenerate(&self) -> bool {
        self.sin_t == 0.0
    }

    pub fn one_minus_sin(&self) -> f64 {
        one_minus_sin(self.sin_t, self.cos_t)
    }

    /// Same `t`, different dimension.
    pub fn with_dim(&self, n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self { n, ..*self })
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!(
            "dimension n = {n} must be at least 2"
        )));
    }
    Ok(())
}

/// A hyperbolic length stored as `tanh ℓ` together with `1 - tanh ℓ`.
///
/// The complement is computed from closed forms, never by subtraction, so
/// lengths near infinity keep full relative precision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HypLength {
    tanh: f64,
    co_tanh: f64,
}

impl HypLength {
    pub const ZERO: HypLength = HypLength {
        tanh: 0.0,
        co_tanh: 1.0,
    };

    pub fn from_tanh(tanh: f64) -> Self {
        Self {
            tanh,
            co_tanh: 1.0 - tanh,
        }
    }

    /// `tanh` and an independently computed `1 - tanh`.
    pub fn from_tanh_parts(tanh: f64, co_tanh: f64) -> Self {
        Self { tanh, co_tanh }
    }

    pub fn from_value(len: f64) -> Self {
        if len.is_infinite() {
            return Self {
                tanh: 1.0,
                co_tanh: 0.0,
            };
        }
        // 1 - tanh x = 2 / (e^{2x} + 1)
        Self {
            tanh: len.tanh(),
            co_tanh: 2.0 / ((2.0 * len).exp() + 1.0),
        }
    }

    pub fn tanh(&self) -> f64 {
        self.tanh
    }

    pub fn co_tanh(&self) -> f64 {
        self.co_tanh
    }

    pub fn value(&self) -> f64 {
        atanh_parts(self.tanh, self.co_tanh)
    }

    pub fn is_infinite(&self) -> bool {
        self.co_tanh == 0.0
    }

    /// `1 - tanh²`, i.e. `1 / cosh²`.
    pub fn sech_sq(&self) -> f64 {
        self.co_tanh * (1.0 + self.tanh)
    }

    pub fn cosh(&self) -> f64 {
        1.0 / self.sech_sq().sqrt()
    }

    pub fn sinh(&self) -> f64 {
        if self.tanh == 0.0 {
            return 0.0;
        }
        self.tanh * self.cosh()
    }
}

/// Cayley–Klein distance between two points of the open unit ball, from the
/// cross-ratio with the two ideal endpoints of their chord.
pub fn cross_ratio_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::domain("points have different dimensions"));
    }
    for p in [a, b] {
        if norm_sq(p) >= 1.0 {
            return Err(Error::domain("point not inside the open unit ball"));
        }
    }
    let u = sub(b, a);
    let uu = norm_sq(&u);
    if uu == 0.0 {
        return Ok(0.0);
    }
    // |a + λu|² = 1  →  uu λ² + 2 (a·u) λ + (|a|² - 1) = 0
    let half_b = dot(a, &u);
    let c = norm_sq(a) - 1.0;
    let disc = (half_b * half_b - uu * c).sqrt();
    let q = -(half_b + half_b.signum() * disc);
    let (r1, r2) = if q == 0.0 {
        // half_b == 0: symmetric roots
        (-disc / uu, disc / uu)
    } else {
        (q / uu, c / q)
    };
    let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
    // a ↔ λ = 0, b ↔ λ = 1, endpoints lo < 0 < 1 < hi
    let cross = (1.0 / -lo).ln_1p() + (1.0 / (hi - 1.0)).ln_1p();
    Ok(0.5 * cross)
}

/// Vertices of the Euclidean regular n-simplex inscribed in the sphere of
/// radius `scale`, last vertex on the positive `x_n` axis.
///
/// Built recursively: the first `n` vertices sit at height `-scale/n` above a
/// shrunken copy of the `(n-1)`-dimensional construction.
pub fn regular_simplex_vertices(n: usize, scale: f64) -> Vec<Vec<f64>> {
    let mut pts = unit_simplex(n);
    for p in &mut pts {
        for x in p.iter_mut() {
            *x *= scale;
        }
    }
    pts
}

fn unit_simplex(n: usize) -> Vec<Vec<f64>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let nf = n as f64;
    let shrink = (1.0 - 1.0 / (nf * nf)).sqrt();
    let mut out: Vec<Vec<f64>> = unit_simplex(n - 1)
        .into_iter()
        .map(|v| {
            let mut p: Vec<f64> = v.into_iter().map(|x| x * shrink).collect();
            p.push(-1.0 / nf);
            p
        })
        .collect();
    let mut top = vec![0.0; n];
    top[n - 1] = 1.0;
    out.push(top);
    out
}

/// Vertices of `p(τ[n,t]) = (sin t)·S(n)` in the projective ball.
pub fn simplex_vertices(params: &SimplexParams) -> Vec<Vec<f64>> {
    regular_simplex_vertices(params.n, params.sin_t)
}

/// `q_k = |O K_k|² / sin² t`: squared Euclidean distance from the centre of
/// `S(n)` to the centre of a k-face.
fn face_center_factor(n: usize, k: usize) -> f64 {
    (n - k) as f64 / (n as f64 * (k + 1) as f64)
}

fn check_index(params: &SimplexParams, k: usize) -> Result<()> {
    if k == 0 || k > params.n {
        return Err(Error::domain(format!(
            "index k = {k} outside 1..={}",
            params.n
        )));
    }
    Ok(())
}

/// Circumradius `r_k` of the k-dimensional faces of `τ[n,t]`.
pub fn circumradius(params: &SimplexParams, k: usize) -> Result<HypLength> {
    check_index(params, k)?;
    let (s, c) = (params.sin_t, params.cos_t);
    let q = face_center_factor(params.n, k);
    let root_a = (1.0 - s * s * q).sqrt();
    let root_q = (1.0 - q).sqrt();
    let tanh = s * root_q / root_a;
    // 1 - tanh = (1 - s²) / (√a (√a + s√(1-q)))
    let co = c * c / (root_a * (root_a + s * root_q));
    Ok(HypLength::from_tanh_parts(tanh, co))
}

/// Edge `d_k` of the fundamental orthoscheme: the distance between the
/// centres of consecutive faces `K_{k-1}` and `K_k` (`K_0 = E_1`, `K_n = O`).
pub fn edge_length(params: &SimplexParams, k: usize) -> Result<HypLength> {
    check_index(params, k)?;
    let r = circumradius(params, k)?;
    if k == 1 {
        return Ok(r);
    }
    // inside the k-face: centre-to-facet-centre is atanh(tanh r_k / k)
    Ok(HypLength::from_tanh(r.tanh() / k as f64))
}

/// Circumradii `r_1..r_n` and orthoscheme edges `d_1..d_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrthoschemeLadder {
    n: usize,
    r: Vec<HypLength>,
    d: Vec<HypLength>,
}

impl OrthoschemeLadder {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `r_k`, 1-based.
    pub fn r(&self, k: usize) -> HypLength {
        self.r[k - 1]
    }

    /// `d_k`, 1-based.
    pub fn d(&self, k: usize) -> HypLength {
        self.d[k - 1]
    }

    pub fn radii(&self) -> &[HypLength] {
        &self.r
    }

    pub fn edges(&self) -> &[HypLength] {
        &self.d
    }

    pub fn is_ideal(&self) -> bool {
        self.r[self.n - 1].is_infinite()
    }

    /// Residuals of `cosh r_{k+1} = cosh d_{k+1} · cosh r_k`, written as
    /// `sech² r_{k+1} − sech² d_{k+1} · sech² r_k` so they stay finite in the
    /// ideal case. One entry per `k = 1..n-1`.
    pub fn chain_residuals(&self) -> Vec<f64> {
        (1..self.n)
            .map(|k| self.r(k + 1).sech_sq() - self.d(k + 1).sech_sq() * self.r(k).sech_sq())
            .collect()
    }
}

pub fn ladder(params: &SimplexParams) -> OrthoschemeLadder {
    let n = params.n;
    let r = (1..=n).map(|k| circumradius(params, k).unwrap()).collect();
    let d = (1..=n).map(|k| edge_length(params, k).unwrap()).collect();
    OrthoschemeLadder { n, r, d }
}

/// `τ[n,t]` in the upper half-space model, normalised so that the centre of
/// the facet opposite the top vertex sits at height 1 above the origin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HalfspaceEmbedding {
    pub n: usize,
    pub sin_t: f64,
    pub cos_t: f64,
    /// `n+1` points of `R^n`; the last one is the top vertex on the axis.
    pub vertices: Vec<Vec<f64>>,
    /// Horizontal parts of the first `n` vertices (points of `R^{n-1}`).
    pub v: Vec<Vec<f64>>,
    pub sin_alpha: f64,
    pub cos_alpha: f64,
    /// Facet-sphere centres in the boundary hyperplane. Entry `i < n` belongs
    /// to the facet opposite vertex `i` (radius [`gamma`](Self::gamma)); the
    /// last entry is the origin, centre of the unit hemisphere carrying the
    /// bottom facet.
    pub centers: Vec<Vec<f64>>,
    pub gamma: f64,
    /// Right-hand side of `(X^i)^T y^i = c·1`.
    pub c: f64,
    /// Gram matrix of `v_1..v_{n-1}`.
    pub gram: Vec<Vec<f64>>,
    /// Squared height of the top vertex, `(n+s)(1+s)/((n-s)(1-s))`.
    pub top_height_sq: f64,
    /// Coefficient of `α(v)` in the upper height bound, `2(n+1)s/((n-s)(1-s))`.
    pub height_slope: f64,
}

pub fn halfspace_embedding(params: &SimplexParams) -> Result<HalfspaceEmbedding> {
    if params.is_degenerate() || params.is_ideal() {
        return Err(Error::DegenerateEmbedding(format!(
            "half-space embedding needs 0 < t < π/2 (t = {})",
            params.t
        )));
    }
    let n = params.n;
    let nf = n as f64;
    let (s, ct) = (params.sin_t, params.cos_t);
    let oms = params.one_minus_sin();

    let denom = (nf * nf - s * s).sqrt();
    let sin_alpha = (nf * nf - 1.0).sqrt() * s / denom;
    let cos_alpha = nf * ct / denom;

    let v = regular_simplex_vertices(n - 1, sin_alpha);
    let top_height_sq = (nf + s) * (1.0 + s) / ((nf - s) * oms);
    let height_slope = 2.0 * (nf + 1.0) * s / ((nf - s) * oms);
    let gamma = (nf + s) / oms;
    let c = -(nf + 1.0) * s / ((nf - s) * oms);
    let center_scale = (nf + s) / (s * oms);

    let mut vertices: Vec<Vec<f64>> = v
        .iter()
        .map(|vk| {
            let mut p = vk.clone();
            p.push(cos_alpha);
            p
        })
        .collect();
    let mut top = vec![0.0; n];
    top[n - 1] = top_height_sq.sqrt();
    vertices.push(top);

    let mut centers: Vec<Vec<f64>> = v
        .iter()
        .map(|vk| vk.iter().map(|x| x * center_scale).collect())
        .collect();
    centers.push(vec![0.0; n - 1]);

    let gram = (0..n - 1)
        .map(|j| (0..n - 1).map(|k| dot(&v[j], &v[k])).collect())
        .collect();

    Ok(HalfspaceEmbedding {
        n,
        sin_t: s,
        cos_t: ct,
        vertices,
        v,
        sin_alpha,
        cos_alpha,
        centers,
        gamma,
        c,
        gram,
        top_height_sq,
        height_slope,
    })
}

/// The Gram matrix `R(n-1)` in closed form: `sin²α` on the diagonal and
/// `-sin²α/(n-1)` elsewhere.
pub fn gram_closed_form(params: &SimplexParams) -> Vec<Vec<f64>> {
    let n = params.n;
    let nf = n as f64;
    let s = params.sin_t;
    let scale = (nf * nf - 1.0) * s * s / (nf * nf - s * s);
    (0..n - 1)
        .map(|j| {
            (0..n - 1)
                .map(|k| if j == k { scale } else { -scale / (nf - 1.0) })
                .collect()
        })
        .collect()
}

impl HalfspaceEmbedding {
    /// Radius of facet sphere `i` (0-based; `i = n` is the bottom hemisphere).
    pub fn sphere_radius(&self, i: usize) -> f64 {
        if i == self.n {
            1.0
        } else {
            self.gamma
        }
    }

    /// Barycentric coordinates of a horizontal point with respect to the
    /// projected facet `ε[n-1,t] = conv{v_1..v_n}`.
    pub fn barycentric(&self, point: &[f64]) -> Vec<f64> {
        let nf = self.n as f64;
        let r2 = self.sin_alpha * self.sin_alpha;
        self.v
            .iter()
            .map(|vj| 1.0 / nf + (nf - 1.0) / (nf * r2) * dot(point, vj))
            .collect()
    }

    /// Locate the cone `ε_i` (spanned by `v_j`, `j ≠ i`) containing `point`
    /// and return `(i, α)` with `α` indexed like `v` (`α_i = 0`). Ties go to
    /// the lowest index. `None` when the point lies outside `ε[n-1,t]`.
    pub fn locate_cone(&self, point: &[f64]) -> Option<(usize, Vec<f64>)> {
        let lambda = self.barycentric(point);
        let (i, &min) = lambda.iter().enumerate().fold(
            None,
            |best: Option<(usize, &f64)>, (j, l)| match best {
                Some((_, b)) if *b <= *l => best,
                _ => Some((j, l)),
            },
        )?;
        if min < -1e-12 {
            return None;
        }
        let alpha = lambda.iter().map(|l| (l - min).max(0.0)).collect();
        Some((i, alpha))
    }

    /// `α(v) = Σ_j α_j` for the cone containing `point`.
    pub fn alpha_sum(&self, point: &[f64]) -> Option<f64> {
        let lambda = self.barycentric(point);
        let min = lambda.iter().cloned().fold(f64::INFINITY, f64::min);
        (min >= -1e-12).then_some(1.0 - self.n as f64 * min)
    }

    /// Whether a point of `R^n` (last coordinate vertical) lies in the
    /// simplex: above the unit hemisphere and inside every other facet sphere.
    /// `slack` is an absolute tolerance on the squared distances.
    pub fn contains(&self, point: &[f64], slack: f64) -> bool {
        let n = self.n;
        let (horiz, z) = point.split_at(n - 1);
        let z2 = z[0] * z[0];
        if norm_sq(horiz) + z2 < 1.0 - slack {
            return false;
        }
        self.centers[..n].iter().all(|y| {
            let d2 = norm_sq(&sub(horiz, y)) + z2;
            d2 <= self.gamma * self.gamma * (1.0 + slack)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn centroid(pts: &[Vec<f64>]) -> Vec<f64> {
        let m = pts.len() as f64;
        let mut c = vec![0.0; pts[0].len()];
        for p in pts {
            for (ci, x) in c.iter_mut().zip(p) {
                *ci += x / m;
            }
        }
        c
    }

    // cosh ρ = (1 - a·b) / √((1-|a|²)(1-|b|²))
    fn klein_distance_acosh(a: &[f64], b: &[f64]) -> f64 {
        ((1.0 - dot(a, b)) / ((1.0 - norm_sq(a)) * (1.0 - norm_sq(b))).sqrt()).acosh()
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn params_validation() {
        assert!(SimplexParams::new(1, 0.3).is_err());
        assert!(SimplexParams::new(3, -0.1).is_err());
        assert!(SimplexParams::new(3, 1.6).is_err());
        assert!(SimplexParams::from_sin(3, 1.2).is_err());
        let p = SimplexParams::new(3, 1.570_796_326_8).unwrap();
        assert!(p.is_ideal());
        assert!(SimplexParams::new(3, 0.0).unwrap().is_degenerate());
    }

    #[test]
    fn cross_ratio_examples() {
        assert_eq!(cross_ratio_distance(&[0.0; 3], &[0.0; 3]).unwrap(), 0.0);
        let d = cross_ratio_distance(&[0.0, 0.0, 0.0], &[0.0, 0.0, 0.5]).unwrap();
        assert_relative_eq!(d, 0.5 * 3f64.ln(), max_relative = 1e-14);
        // centre to facet centre of S(3): radius 1/3
        let d = cross_ratio_distance(&[0.0; 3], &[0.0, 0.0, -1.0 / 3.0]).unwrap();
        assert_relative_eq!(d, 0.5 * 2f64.ln(), max_relative = 1e-14);
        assert!(cross_ratio_distance(&[0.0, 1.0], &[0.0, 0.0]).is_err());
        assert!(cross_ratio_distance(&[0.0, 0.0], &[0.0]).is_err());
    }

    #[test]
    fn cross_ratio_matches_acosh_form() {
        let a = [0.3, -0.2, 0.1];
        let b = [-0.5, 0.4, 0.2];
        let d1 = cross_ratio_distance(&a, &b).unwrap();
        let d2 = klein_distance_acosh(&a, &b);
        assert_relative_eq!(d1, d2, max_relative = 1e-13);
        assert_relative_eq!(
            d1,
            cross_ratio_distance(&b, &a).unwrap(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn vertices_examples() {
        let p = SimplexParams::new(3, 0.0).unwrap();
        for v in simplex_vertices(&p) {
            assert!(v.iter().all(|&x| x == 0.0));
        }
        let p = SimplexParams::ideal(2).unwrap();
        let vs = simplex_vertices(&p);
        assert_eq!(vs.len(), 3);
        for i in 0..3 {
            assert_relative_eq!(norm_sq(&vs[i]), 1.0, max_relative = 1e-15);
            for j in i + 1..3 {
                assert_relative_eq!(
                    norm_sq(&sub(&vs[i], &vs[j])).sqrt(),
                    3f64.sqrt(),
                    max_relative = 1e-15
                );
            }
        }
    }

    #[test]
    fn vertex_gram_identity() {
        for n in 2..=7 {
            let p = SimplexParams::new(n, 0.9).unwrap();
            let s2 = p.sin_t() * p.sin_t();
            let vs = simplex_vertices(&p);
            let c = centroid(&vs);
            assert!(norm_sq(&c) < 1e-30);
            for i in 0..=n {
                for j in 0..=n {
                    let g = dot(&vs[i], &vs[j]);
                    let want = if i == j { s2 } else { -s2 / n as f64 };
                    assert!((g - want).abs() < 1e-15, "n={n} {i},{j}");
                }
            }
        }
    }

    #[test]
    fn circumradius_examples() {
        let p = SimplexParams::new(5, 0.0).unwrap();
        for k in 1..=5 {
            assert_eq!(circumradius(&p, k).unwrap().value(), 0.0);
            assert_eq!(edge_length(&p, k).unwrap().value(), 0.0);
        }
        let p = SimplexParams::new(3, std::f64::consts::FRAC_PI_4).unwrap();
        assert_relative_eq!(
            circumradius(&p, 3).unwrap().value(),
            0.881_373_587_019_543,
            max_relative = 1e-14
        );
        let p = SimplexParams::from_sin(3, 0.6).unwrap();
        assert_relative_eq!(
            circumradius(&p, 2).unwrap().value(),
            0.658_478_948_462_408_4,
            max_relative = 1e-14
        );
        assert!(circumradius(&p, 0).is_err());
        assert!(circumradius(&p, 4).is_err());
    }

    #[test]
    fn edge_length_examples() {
        let p = SimplexParams::ideal(3).unwrap();
        assert_relative_eq!(
            edge_length(&p, 3).unwrap().value(),
            0.5 * 2f64.ln(),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            edge_length(&p, 2).unwrap().value(),
            0.549_306_144_334_054_8,
            max_relative = 1e-14
        );
        assert!(edge_length(&p, 1).unwrap().is_infinite());
        assert!(edge_length(&p, 4).is_err());
    }

    #[test]
    fn ladder_example_three_fifths() {
        let p = SimplexParams::from_sin(3, 0.6).unwrap();
        let l = ladder(&p);
        assert_relative_eq!(l.r(3).value(), 2f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(
            l.d(3).value(),
            0.202_732_554_054_082_2,
            max_relative = 1e-14
        );
        assert_relative_eq!(l.r(3).cosh(), 1.25, max_relative = 1e-15);
        assert_relative_eq!(l.d(3).cosh(), 5.0 / 24f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(l.r(2).cosh(), 1.5f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(
            l.r(3).cosh(),
            l.d(3).cosh() * l.r(2).cosh(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn ladder_r1_is_d1() {
        for &t in &[0.1, 0.7, 1.5] {
            let l = ladder(&SimplexParams::new(2, t).unwrap());
            assert_eq!(l.r(1), l.d(1));
        }
    }

    #[test]
    fn ladder_chain_n4() {
        let l = ladder(&SimplexParams::new(4, 1.0).unwrap());
        for r in l.chain_residuals() {
            assert!(r.abs() < 1e-12);
        }
    }

    #[test]
    fn ladder_is_monotone_in_t() {
        let ts: Vec<f64> = (0..=20).map(|i| i as f64 * FRAC_PI_2 / 20.0).collect();
        for n in 2..=6 {
            let ls: Vec<_> = ts
                .iter()
                .map(|&t| ladder(&SimplexParams::new(n, t).unwrap()))
                .collect();
            for w in ls.windows(2) {
                for k in 1..=n {
                    assert!(w[1].r(k).tanh() >= w[0].r(k).tanh());
                    assert!(w[1].d(k).tanh() >= w[0].d(k).tanh());
                }
            }
        }
    }

    #[test]
    fn ladder_matches_face_centroids() {
        for n in 2..=6 {
            for &t in &[0.2, 0.9, 1.4] {
                let p = SimplexParams::new(n, t).unwrap();
                let vs = simplex_vertices(&p);
                let l = ladder(&p);
                let centers: Vec<Vec<f64>> = (0..=n).map(|k| centroid(&vs[..=k])).collect();
                for k in 1..=n {
                    // K_k = centre of the k-face spanned by the first k+1 vertices
                    let rk = cross_ratio_distance(&centers[k], &vs[0]).unwrap();
                    assert!((rk - l.r(k).value()).abs() < 1e-12, "r n={n} t={t} k={k}");
                    let dk = cross_ratio_distance(&centers[k], &centers[k - 1]).unwrap();
                    assert!((dk - l.d(k).value()).abs() < 1e-12, "d n={n} t={t} k={k}");
                }
            }
        }
    }

    #[test]
    fn embedding_examples() {
        let e = halfspace_embedding(&SimplexParams::from_sin(3, 0.5).unwrap()).unwrap();
        assert_relative_eq!(e.gamma, 7.0, max_relative = 1e-15);
        let p = SimplexParams::from_sin(3, 0.6).unwrap();
        let e = halfspace_embedding(&p).unwrap();
        assert_relative_eq!(e.sin_alpha, 1.0 / 3f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(e.sin_alpha, ladder(&p).r(2).tanh(), max_relative = 1e-15);
        let sum: Vec<f64> = (0..2).map(|j| e.v.iter().map(|v| v[j]).sum()).collect();
        assert!(sum.iter().all(|x| x.abs() < 1e-15));
        assert!(halfspace_embedding(&SimplexParams::new(3, 0.0).unwrap()).is_err());
        assert!(halfspace_embedding(&SimplexParams::ideal(3).unwrap()).is_err());
    }

    #[test]
    fn embedding_spheres_pass_through_vertices() {
        for n in 2..=7 {
            for &t in &[0.1, 0.8, 1.3, 1.55] {
                let e = halfspace_embedding(&SimplexParams::new(n, t).unwrap()).unwrap();
                let g2 = e.gamma * e.gamma;
                for i in 0..n {
                    for k in 0..=n {
                        if k == i {
                            continue;
                        }
                        let (h, z) = e.vertices[k].split_at(n - 1);
                        let d2 = norm_sq(&sub(h, &e.centers[i])) + z[0] * z[0];
                        assert!((d2 - g2).abs() <= 1e-10 * g2, "n={n} t={t} i={i} k={k}");
                    }
                    // the centre satisfies the linear system (X^i)^T y^i = c·1
                    for k in 0..n {
                        if k != i {
                            let lhs = dot(&e.v[k], &e.centers[i]);
                            assert!((lhs - e.c).abs() <= 1e-12 * e.c.abs());
                        }
                    }
                }
                // bottom facet on the unit hemisphere
                for k in 0..n {
                    assert!((norm_sq(&e.vertices[k]) - 1.0).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn embedding_gram_and_heights() {
        for n in 2..=6 {
            let p = SimplexParams::new(n, 0.7).unwrap();
            let e = halfspace_embedding(&p).unwrap();
            let g = gram_closed_form(&p);
            for j in 0..n - 1 {
                for k in 0..n - 1 {
                    assert!((g[j][k] - e.gram[j][k]).abs() < 1e-14);
                }
            }
            let (s, c) = (p.sin_t(), p.cos_t());
            let nf = n as f64;
            assert_relative_eq!(e.cos_alpha, nf * c / (nf * nf - s * s).sqrt());
            // A − B = 1
            assert_relative_eq!(e.top_height_sq - e.height_slope, 1.0, max_relative = 1e-13);
        }
    }

    #[test]
    fn hyperbolic_distances_in_halfspace_picture() {
        // along the axis: K at height 1, O at √((n+s)/(n-s)), top at √A
        let p = SimplexParams::new(4, 1.1).unwrap();
        let e = halfspace_embedding(&p).unwrap();
        let l = ladder(&p);
        let nf = 4.0;
        let s = p.sin_t();
        let o = ((nf + s) / (nf - s)).sqrt();
        assert_relative_eq!(o.ln(), l.d(4).value(), max_relative = 1e-14);
        assert_relative_eq!(
            (e.top_height_sq.sqrt() / o).ln(),
            l.r(4).value(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn cone_location() {
        let e = halfspace_embedding(&SimplexParams::new(3, 0.9).unwrap()).unwrap();
        let (i, a) = e.locate_cone(&[0.0, 0.0]).unwrap();
        assert_eq!(i, 0);
        assert!(a.iter().all(|&x| x.abs() < 1e-15));
        let (i, a) = e.locate_cone(&e.v[1].clone()).unwrap();
        assert_ne!(i, 1);
        assert!((a[1] - 1.0).abs() < 1e-14);
        let far: Vec<f64> = e.v[0].iter().map(|x| 1.5 * x).collect();
        assert!(e.locate_cone(&far).is_none());
        // reconstruct
        let pt = [0.05, -0.1];
        let (_, a) = e.locate_cone(&pt).unwrap();
        let mut rec = [0.0; 2];
        for (aj, vj) in a.iter().zip(&e.v) {
            rec[0] += aj * vj[0];
            rec[1] += aj * vj[1];
        }
        assert!((rec[0] - pt[0]).abs() < 1e-15 && (rec[1] - pt[1]).abs() < 1e-15);
    }
}
