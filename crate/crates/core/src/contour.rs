//! Numeric contour integration (complex backend) for the orthogonality
//! statements: the spatial biorthogonality of the F family and the
//! coefficient-extraction integral that reproduces the G symmetrization.
//!
//! Integrals are computed by the uniform trapezoid rule on circles, which is
//! spectrally accurate for integrands analytic in an annulus around the
//! contour. Nested integrals use a product grid with a distinct angular
//! phase offset per variable so grid points never collide (the integrands are
//! evaluated through the symmetrization formulas, which refuse coincident
//! variables).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::formulas::f_symmetrized;
use crate::params::Params;
use crate::scalar::Scalar;
use crate::signature::{c_factor, Signature};

/// A positively oriented circle.
#[derive(Clone, Copy, Debug)]
pub struct Contour {
    pub center: Complex64,
    pub radius: f64,
}

impl Contour {
    pub fn new(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::ContourCondition("radius must be positive".into()));
        }
        Ok(Contour { center, radius })
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() < self.radius
    }

    pub fn point(&self, theta: f64) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, theta)
    }

    /// Conditions for the orthogonality integrals with n integration
    /// variables: the contour contains {s, qs, ..., q^{n-1} s} and its own
    /// image under multiplication by q, and excludes 1/s plus the given
    /// excluded points. Asserted numerically.
    pub fn validate_spatial(
        &self,
        params: &Params,
        n: usize,
        excluded: &[Complex64],
    ) -> Result<()> {
        let q = params.q().to_complex();
        let s = params.s().to_complex();
        let mut point = s;
        for j in 0..n.max(1) {
            if !self.contains(point) {
                return Err(Error::ContourCondition(format!(
                    "contour must contain q^{j} s = {point}"
                )));
            }
            point *= q;
        }
        // Image under multiplication by q: circle of radius |q| r at q c.
        let image_center = q * self.center;
        let image_radius = q.norm() * self.radius;
        if (image_center - self.center).norm() + image_radius >= self.radius {
            return Err(Error::ContourCondition(
                "contour must contain its own image under multiplication by q".into(),
            ));
        }
        if s.norm() > 0.0 && self.contains(1.0 / s) {
            return Err(Error::ContourCondition("contour must exclude 1/s".into()));
        }
        for &z in excluded {
            if self.contains(z) {
                return Err(Error::ContourCondition(format!(
                    "contour must exclude the pole at {z}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub node_count: usize,
    pub last_delta: f64,
}

const NODE_START: usize = 64;
const NODE_CAP_1D: usize = 1 << 16;
const NODE_CAP_ND: usize = 1 << 12;

/// (1/2 pi i) times the contour integral of `f`, by uniform trapezoid nodes
/// with doubling node count until two successive values differ by less than
/// `tol`.
pub fn circle_quadrature(
    f: impl Fn(Complex64) -> Complex64,
    contour: &Contour,
    tol: f64,
) -> Result<QuadratureResult> {
    if !(tol > 0.0) {
        return Err(Error::Precondition("quadrature tolerance must be positive".into()));
    }
    let mut nodes = NODE_START;
    let mut last: Option<Complex64> = None;
    let mut last_delta = f64::INFINITY;
    while nodes <= NODE_CAP_1D {
        let mut acc = Complex64::ZERO;
        for k in 0..nodes {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (nodes as f64);
            let z = contour.point(theta);
            // dz/(2 pi i) = (z - center) dtheta / (2 pi)
            acc += f(z) * (z - contour.center);
        }
        let value = acc / nodes as f64;
        if let Some(prev) = last {
            last_delta = (value - prev).norm();
            if last_delta < tol {
                return Ok(QuadratureResult {
                    value,
                    node_count: nodes,
                    last_delta,
                });
            }
        }
        last = Some(value);
        nodes *= 2;
    }
    Err(Error::QuadratureNonConvergence {
        last_delta,
        nodes: NODE_CAP_1D,
    })
}

/// (1/2 pi i)^n times an n-fold contour integral over the same circle, on a
/// product grid with per-dimension phase offsets, node count doubling in
/// lockstep. `f` receives one point per dimension.
pub fn circle_quadrature_nd(
    f: impl Fn(&[Complex64]) -> Complex64,
    contour: &Contour,
    n: usize,
    tol: f64,
) -> Result<QuadratureResult> {
    if n == 0 {
        return Err(Error::Precondition("need at least one integration variable".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Precondition("quadrature tolerance must be positive".into()));
    }
    let cap = if n == 1 { NODE_CAP_1D } else { NODE_CAP_ND };
    let mut nodes = NODE_START;
    let mut last: Option<Complex64> = None;
    let mut last_delta = f64::INFINITY;
    while nodes <= cap {
        let mut acc = Complex64::ZERO;
        let mut idx = vec![0usize; n];
        let mut zs = vec![Complex64::ZERO; n];
        let mut jac = vec![Complex64::ZERO; n];
        loop {
            for d in 0..n {
                // Distinct phase offsets keep grid points pairwise distinct.
                let theta = 2.0 * std::f64::consts::PI * (idx[d] as f64 + 0.37 * d as f64)
                    / (nodes as f64);
                zs[d] = contour.point(theta);
                jac[d] = zs[d] - contour.center;
            }
            let mut term = f(&zs);
            for j in &jac {
                term *= j;
            }
            acc += term;
            // Advance the multi-index.
            let mut d = 0;
            loop {
                if d == n {
                    break;
                }
                idx[d] += 1;
                if idx[d] < nodes {
                    break;
                }
                idx[d] = 0;
                d += 1;
            }
            if d == n {
                break;
            }
        }
        let value = acc / (nodes as f64).powi(n as i32);
        if let Some(prev) = last {
            last_delta = (value - prev).norm();
            if last_delta < tol {
                return Ok(QuadratureResult {
                    value,
                    node_count: nodes,
                    last_delta,
                });
            }
        }
        last = Some(value);
        nodes *= 2;
    }
    Err(Error::QuadratureNonConvergence { last_delta, nodes: cap })
}

fn complex_scalars(zs: &[Complex64]) -> Vec<Scalar> {
    zs.iter().map(|&z| Scalar::Complex(z)).collect()
}

/// Spatial biorthogonality integral: with n = len(mu) = len(nu),
///
/// ```text
/// c(nu)/((1-q)^n n!) (1/2 pi i)^n * Integral  prod du_i/u_i
///   * prod_{i != j} (u_i - u_j)/(u_i - q u_j)
///   * F_nu(u_1..u_n) F_mu(1/u_1..1/u_n)
/// ```
///
/// which is 1 for mu = nu and 0 otherwise. F is evaluated through the
/// symmetrization formula on the complex backend.
pub fn spatial_orthogonality(
    mu: &Signature,
    nu: &Signature,
    params: &Params,
    contour: &Contour,
    tol: f64,
) -> Result<QuadratureResult> {
    let n = nu.len();
    if n == 0 || mu.len() != n {
        return Err(Error::Precondition(
            "spatial orthogonality needs equal nonzero lengths".into(),
        ));
    }
    if n > 3 {
        return Err(Error::Precondition(
            "spatial orthogonality is limited to n <= 3 (nested quadrature cost grows as nodes^n)"
                .into(),
        ));
    }
    contour.validate_spatial(params, n, &[])?;
    let cparams = params.to_complex();
    let q = cparams.q().to_complex();

    let integrand = |zs: &[Complex64]| -> Complex64 {
        let us = complex_scalars(zs);
        let inv: Vec<Scalar> = zs.iter().map(|&z| Scalar::Complex(1.0 / z)).collect();
        let mut cross = Complex64::ONE;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    cross *= (zs[i] - zs[j]) / (zs[i] - q * zs[j]);
                }
            }
        }
        let f_nu = match f_symmetrized(nu, &us, &cparams) {
            Ok(v) => v.to_complex(),
            Err(_) => return Complex64::ZERO,
        };
        let f_mu = match f_symmetrized(mu, &inv, &cparams) {
            Ok(v) => v.to_complex(),
            Err(_) => return Complex64::ZERO,
        };
        let mut denom = Complex64::ONE;
        for &z in zs {
            denom *= z;
        }
        cross * f_nu * f_mu / denom
    };

    let mut result = circle_quadrature_nd(integrand, contour, n, tol)?;
    let one_minus_q = Complex64::ONE - q;
    let mut norm = c_factor(nu, &cparams)?.to_complex();
    let mut n_fact = 1.0;
    for i in 1..=n {
        n_fact *= i as f64;
    }
    norm /= one_minus_q.powi(n as i32) * n_fact;
    result.value *= norm;
    Ok(result)
}

/// Coefficient-extraction integral: with n = len(nu) and v_1..v_N near s,
///
/// ```text
/// (q;q)_n c(0^n) / ((1-q)^n n!) (1/2 pi i)^n * Integral prod du_i/u_i
///   * prod_{i != j} (u_i - u_j)/(u_i - q u_j)
///   * prod_i [ 1/(1 - s u_i) * prod_j (1 - q u_i v_j)/(1 - u_i v_j) ]
///   * F_nu(1/u_1..1/u_n)
/// ```
///
/// whose value reproduces the subset-form G symmetrization at (v_1..v_N).
pub fn spatial_check_integral(
    nu: &Signature,
    vs: &[Scalar],
    params: &Params,
    contour: &Contour,
    tol: f64,
) -> Result<QuadratureResult> {
    let n = nu.len();
    if n == 0 {
        return Err(Error::Precondition("needs len(nu) >= 1".into()));
    }
    let cparams = params.to_complex();
    let q = cparams.q().to_complex();
    let s = cparams.s().to_complex();
    let vsc: Vec<Complex64> = vs.iter().map(|v| v.to_complex()).collect();
    let excluded: Vec<Complex64> = vsc.iter().map(|&v| 1.0 / v).collect();
    contour.validate_spatial(params, n, &excluded)?;

    let integrand = |zs: &[Complex64]| -> Complex64 {
        let inv: Vec<Scalar> = zs.iter().map(|&z| Scalar::Complex(1.0 / z)).collect();
        let mut cross = Complex64::ONE;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    cross *= (zs[i] - zs[j]) / (zs[i] - q * zs[j]);
                }
            }
        }
        let f_nu = match f_symmetrized(nu, &inv, &cparams) {
            Ok(v) => v.to_complex(),
            Err(_) => return Complex64::ZERO,
        };
        let mut extra = Complex64::ONE;
        for &z in zs {
            extra /= 1.0 - s * z;
            for &v in &vsc {
                extra *= (1.0 - q * z * v) / (1.0 - z * v);
            }
            extra /= z;
        }
        cross * f_nu * extra
    };

    let mut result = circle_quadrature_nd(integrand, contour, n, tol)?;
    let one = Scalar::one(crate::scalar::Backend::Complex);
    let qs = cparams.q();
    let mut norm = crate::qseries::q_pochhammer(qs, qs, n as i64)?.to_complex();
    norm *= c_factor(&Signature::zeros(n), &cparams)?.to_complex();
    let one_minus_q = one.to_complex() - q;
    let mut n_fact = 1.0;
    for i in 1..=n {
        n_fact *= i as f64;
    }
    norm /= one_minus_q.powi(n as i32) * n_fact;
    result.value *= norm;
    Ok(result)
}

/// The default numeric parameter point for the orthogonality checks:
/// q = 2/5, s = 3/10, circle of radius 1/2 around 0. Then {s q^j} lies inside,
/// the q-image circle (radius 1/5) is inside, and 1/s is far outside.
pub fn default_spatial_setup() -> Result<(Params, Contour)> {
    let params = Params::new(Scalar::ratio(2, 5), Scalar::ratio(3, 10), 8)?;
    let contour = Contour::new(Complex64::ZERO, 0.5)?;
    Ok((params, contour))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_test_integrands() {
        let contour = Contour::new(Complex64::ZERO, 1.0).unwrap();
        // 1/z -> 1.
        let r = circle_quadrature(|z| 1.0 / z, &contour, 1e-13).unwrap();
        assert!((r.value - Complex64::ONE).norm() < 1e-12);
        // 1/(z-a): 1 inside, 0 outside.
        let a_in = Complex64::new(0.4, 0.2);
        let r = circle_quadrature(|z| 1.0 / (z - a_in), &contour, 1e-13).unwrap();
        assert!((r.value - Complex64::ONE).norm() < 1e-12);
        let a_out = Complex64::new(1.3, -0.5);
        let r = circle_quadrature(|z| 1.0 / (z - a_out), &contour, 1e-13).unwrap();
        assert!(r.value.norm() < 1e-12);
        // z^k analytic -> 0.
        for k in 0..4 {
            let r = circle_quadrature(|z| z.powi(k), &contour, 1e-13).unwrap();
            assert!(r.value.norm() < 1e-12, "k={k}");
        }
    }

    #[test]
    fn quadrature_respects_radius_separation() {
        // Pole 0.05 away from the contour still integrates to 1e-12 accuracy.
        let contour = Contour::new(Complex64::ZERO, 1.0).unwrap();
        let a = Complex64::new(0.95, 0.0);
        let r = circle_quadrature(|z| 1.0 / (z - a), &contour, 1e-13).unwrap();
        assert!((r.value - Complex64::ONE).norm() < 1e-12);
    }

    #[test]
    fn contour_validation() {
        let (params, contour) = default_spatial_setup().unwrap();
        contour.validate_spatial(&params, 3, &[]).unwrap();
        // A contour missing s fails.
        let tiny = Contour::new(Complex64::ZERO, 0.1).unwrap();
        assert!(tiny.validate_spatial(&params, 1, &[]).is_err());
        // A contour containing 1/s fails.
        let huge = Contour::new(Complex64::ZERO, 5.0).unwrap();
        assert!(huge.validate_spatial(&params, 1, &[]).is_err());
    }

    #[test]
    fn nd_grid_reduces_to_1d() {
        let contour = Contour::new(Complex64::ZERO, 1.0).unwrap();
        let r1 = circle_quadrature(|z| 1.0 / z, &contour, 1e-12).unwrap();
        let rn = circle_quadrature_nd(|zs| 1.0 / zs[0], &contour, 1, 1e-12).unwrap();
        assert!((r1.value - rn.value).norm() < 1e-12);
    }

    #[test]
    fn spatial_orthogonality_single_variable() {
        let (params, contour) = default_spatial_setup().unwrap();
        let one = Signature::new(vec![0]).unwrap();
        let r = spatial_orthogonality(&one, &one, &params, &contour, 1e-10).unwrap();
        assert!((r.value - Complex64::ONE).norm() < 1e-8, "got {}", r.value);
        let two = Signature::new(vec![2]).unwrap();
        let r = spatial_orthogonality(&one, &two, &params, &contour, 1e-10).unwrap();
        assert!(r.value.norm() < 1e-8, "got {}", r.value);
    }

    #[test]
    #[ignore = "three nested contours take ~20s; run with --ignored"]
    fn spatial_orthogonality_three_variables() {
        let (params, contour) = default_spatial_setup().unwrap();
        let a = Signature::new(vec![1, 1, 0]).unwrap();
        let b = Signature::new(vec![1, 0, 0]).unwrap();
        let r = spatial_orthogonality(&a, &a, &params, &contour, 1e-7).unwrap();
        assert!((r.value - Complex64::ONE).norm() < 1e-6, "got {}", r.value);
        let r = spatial_orthogonality(&b, &a, &params, &contour, 1e-7).unwrap();
        assert!(r.value.norm() < 1e-6, "got {}", r.value);
        // Beyond the supported range the precondition fires.
        let big = Signature::zeros(4);
        assert!(spatial_orthogonality(&big, &big, &params, &contour, 1e-7).is_err());
    }

    #[test]
    fn contour_radius_independence() {
        // Any admissible radius gives the same value (analyticity between the
        // contours); compare two radii within the window.
        let (params, _) = default_spatial_setup().unwrap();
        let sig = Signature::new(vec![1, 0]).unwrap();
        let small = Contour::new(Complex64::ZERO, 0.42).unwrap();
        let large = Contour::new(Complex64::ZERO, 0.8).unwrap();
        let a = spatial_orthogonality(&sig, &sig, &params, &small, 1e-9).unwrap();
        let b = spatial_orthogonality(&sig, &sig, &params, &large, 1e-9).unwrap();
        assert!((a.value - b.value).norm() < 1e-7, "{} vs {}", a.value, b.value);
    }
}
