//! Linear-division decisions: closed-form criteria for the parametric
//! families and an independent numeric zero-divisor prober that produces
//! re-checkable certificates.

use crate::algebra::{Algebra, Element};
use crate::constructions::Table1Params;
use crate::linalg;
use crate::rng;
use crate::{Error, Result};
use nalgebra::DVector;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DivisionStatus {
    Division,
    NotDivision,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DivisionMethod {
    ClosedForm,
    Certificate,
    NumericBound,
}

/// Re-checkable evidence attached to a `not_division` verdict.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Unit pair with `|x y| <= tol`.
    ProductPair { x: Vec<f64>, y: Vec<f64>, product_norm: f64 },
    /// `det L_{x0}` and `det L_{x1}` have opposite signs; by continuity on
    /// the sphere a kernel exists between them.
    DetSignChange { x0: Vec<f64>, x1: Vec<f64>, det0: f64, det1: f64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisionVerdict {
    pub status: DivisionStatus,
    pub method: DivisionMethod,
    pub certificate: Option<Certificate>,
    /// Estimated minimum over the unit sphere of
    /// `min(sigma_min(L_x), sigma_min(R_x))`.
    pub bound: Option<f64>,
}

impl DivisionVerdict {
    /// Wraps a closed-form criterion outcome.
    pub fn from_criterion(holds: bool) -> Self {
        DivisionVerdict {
            status: if holds { DivisionStatus::Division } else { DivisionStatus::NotDivision },
            method: DivisionMethod::ClosedForm,
            certificate: None,
            bound: None,
        }
    }
}

/// Numeric division probe. Seeded sphere sampling with a determinant
/// sign-change test, followed by coordinate-descent refinement of
/// `|x y|` over unit pairs from the best starts.
pub fn zero_divisor_search(a: &Algebra, samples: usize, seed: u64) -> Result<DivisionVerdict> {
    if samples < 1 {
        return Err(Error::InvalidParameter("samples must be >= 1".into()));
    }
    let n = a.dim();
    let tol = a.tolerance();
    if n == 1 {
        let c = a.c(0, 0, 0);
        return Ok(if c.abs() > tol {
            DivisionVerdict {
                status: DivisionStatus::Division,
                method: DivisionMethod::NumericBound,
                certificate: None,
                bound: Some(c.abs()),
            }
        } else {
            DivisionVerdict {
                status: DivisionStatus::NotDivision,
                method: DivisionMethod::Certificate,
                certificate: Some(Certificate::ProductPair {
                    x: vec![1.0],
                    y: vec![1.0],
                    product_norm: c.abs(),
                }),
                bound: Some(c.abs()),
            }
        });
    }

    let mut rng = rng::rng_from_seed(seed);
    let mut bound = f64::INFINITY;
    let mut first_pos: Option<(usize, Element, f64)> = None;
    let mut first_neg: Option<(usize, Element, f64)> = None;
    let mut ranked: Vec<(f64, usize, Element)> = Vec::with_capacity(samples);
    for s in 0..samples {
        let x = rng::unit_vector(&mut rng, n);
        let l = a.left_op(&x);
        let r = a.right_op(&x);
        let dl = linalg::det(&l);
        let sl = linalg::sigma_min(&l);
        let sr = linalg::sigma_min(&r);
        bound = bound.min(sl.min(sr));
        if dl > tol && first_pos.is_none() {
            first_pos = Some((s, x.clone(), dl));
        }
        if dl < -tol && first_neg.is_none() {
            first_neg = Some((s, x.clone(), dl));
        }
        ranked.push((sl * sr, s, x));
        if let (Some(p), Some(q)) = (&first_pos, &first_neg) {
            let (x0, x1, d0, d1) = if p.0 < q.0 {
                (&p.1, &q.1, p.2, q.2)
            } else {
                (&q.1, &p.1, q.2, p.2)
            };
            return Ok(DivisionVerdict {
                status: DivisionStatus::NotDivision,
                method: DivisionMethod::Certificate,
                certificate: Some(Certificate::DetSignChange {
                    x0: x0.iter().copied().collect(),
                    x1: x1.iter().copied().collect(),
                    det0: d0,
                    det1: d1,
                }),
                bound: Some(bound),
            });
        }
    }

    // refinement from the best starts
    ranked.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    let starts = ranked.iter().take(20.min(ranked.len()));
    let mut best_pair: Option<(usize, usize, Element, Element, f64)> = None;
    let mut refined_g = f64::INFINITY;
    for (start_index, (_, sample_index, x0)) in starts.enumerate() {
        let (x, y, v) = refine_pair(a, x0, 500);
        let l = a.left_op(&x);
        let r = a.right_op(&x);
        let (sl, sr) = (linalg::sigma_min(&l), linalg::sigma_min(&r));
        bound = bound.min(sl.min(sr));
        refined_g = refined_g.min(sl * sr);
        if v <= tol {
            let key = (*sample_index, start_index);
            let better = match &best_pair {
                None => true,
                Some((si, ti, _, _, _)) => key < (*si, *ti),
            };
            if better {
                best_pair = Some((*sample_index, start_index, x, y, v));
            }
        }
    }

    if let Some((_, _, x, y, v)) = best_pair {
        return Ok(DivisionVerdict {
            status: DivisionStatus::NotDivision,
            method: DivisionMethod::Certificate,
            certificate: Some(Certificate::ProductPair {
                x: x.iter().copied().collect(),
                y: y.iter().copied().collect(),
                product_norm: v,
            }),
            bound: Some(bound),
        });
    }

    // A division claim needs the refined minimum of the sigma product to
    // clear the boundary band, not just the certificate tolerance: exactly
    // on the division boundary the kernel is degenerate and the refinement
    // stalls around 1e-4, far above genuine interior minima.
    let confidence = (10.0 * tol).max(1e-6);
    Ok(DivisionVerdict {
        status: if refined_g > confidence {
            DivisionStatus::Division
        } else {
            DivisionStatus::Indeterminate
        },
        method: DivisionMethod::NumericBound,
        certificate: None,
        bound: Some(bound),
    })
}

/// Alternating exact minimization of `|x y|` over unit pairs (each step
/// replaces one side by the smallest right singular vector of the
/// multiplication operator of the other), followed by a Gauss-Newton
/// polish: the alternation is only linearly convergent in the shallow
/// valleys near the division boundary.
fn refine_pair(a: &Algebra, x0: &Element, max_iter: usize) -> (Element, Element, f64) {
    let mut x = x0.clone();
    let (mut v, mut y) = linalg::sigma_min_vector(&a.left_op(&x));
    for _ in 0..max_iter {
        // best x for fixed y: kernel direction of x -> x y = R_y x
        let (vx, xn) = linalg::sigma_min_vector(&a.right_op(&y));
        let (vy, yn) = linalg::sigma_min_vector(&a.left_op(&xn));
        let improved = vy < v - 1e-16;
        x = xn;
        y = yn;
        v = vy.min(vx);
        if !improved || v < 1e-15 {
            break;
        }
    }
    let (px, py, pv) = gauss_newton_polish(a, &x, &y);
    if pv < v {
        (px, py, pv)
    } else {
        (x, y, v)
    }
}

fn gauss_newton_polish(a: &Algebra, x0: &Element, y0: &Element) -> (Element, Element, f64) {
    let n = a.dim();
    let mut x = x0.clone();
    let mut y = y0.clone();
    let mut v = a.mul_unchecked(&x, &y).norm();
    for _ in 0..60 {
        let residual = a.mul_unchecked(&x, &y);
        // jacobian of (x, y) -> x y on the product of spheres
        let mut j = nalgebra::DMatrix::zeros(n, 2 * n);
        j.view_mut((0, 0), (n, n)).copy_from(&a.right_op(&y));
        j.view_mut((0, n), (n, n)).copy_from(&a.left_op(&x));
        let (step, _) = linalg::lstsq(&j, &(-&residual));
        let mut improved = false;
        let mut scale = 1.0;
        for _ in 0..20 {
            let mut xn = &x + scale * step.rows(0, n);
            let mut yn = &y + scale * step.rows(n, n);
            let (nx, ny) = (xn.norm(), yn.norm());
            if nx < 1e-12 || ny < 1e-12 {
                scale *= 0.5;
                continue;
            }
            xn /= nx;
            yn /= ny;
            let vn = a.mul_unchecked(&xn, &yn).norm();
            if vn < v {
                x = xn;
                y = yn;
                v = vn;
                improved = true;
                break;
            }
            scale *= 0.5;
        }
        if !improved || v < 1e-15 {
            break;
        }
    }
    (x, y, v)
}

/// Re-evaluates a certificate independently of the search path.
pub fn recheck_certificate(a: &Algebra, verdict: &DivisionVerdict) -> bool {
    match &verdict.certificate {
        None => verdict.status != DivisionStatus::NotDivision,
        Some(Certificate::ProductPair { x, y, .. }) => {
            let xv = DVector::from_row_slice(x);
            let yv = DVector::from_row_slice(y);
            if (xv.norm() - 1.0).abs() > 1e-6 || (yv.norm() - 1.0).abs() > 1e-6 {
                return false;
            }
            match a.mul(&xv, &yv) {
                Ok(p) => p.norm() <= 10.0 * a.tolerance(),
                Err(_) => false,
            }
        }
        Some(Certificate::DetSignChange { x0, x1, .. }) => {
            let d0 = linalg::det(&a.left_op(&DVector::from_row_slice(x0)));
            let d1 = linalg::det(&a.left_op(&DVector::from_row_slice(x1)));
            d0 * d1 < 0.0
        }
    }
}

/// Nondegeneracy of the quadratic form
/// `l1^2 + beta l1 l2 + alpha gamma l2^2 + alpha l3^2 + beta l3 l4 + gamma l4^2`
/// attached to the three-dimensional wedge relations.
pub fn osborn4_criterion(alpha: f64, beta: f64, gamma: f64) -> Result<bool> {
    if alpha == 0.0 || gamma == 0.0 {
        return Err(Error::InvalidParameter("alpha and gamma must be nonzero".into()));
    }
    if beta != 0.0 && beta != 1.0 {
        return Err(Error::InvalidParameter("beta must be 0 or 1".into()));
    }
    Ok(osborn4_gram_det(alpha, beta, gamma).abs() > 1e-9)
}

/// Determinant of the Gram matrix of the Osborn quadratic form.
pub fn osborn4_gram_det(alpha: f64, beta: f64, gamma: f64) -> f64 {
    let g = nalgebra::DMatrix::from_row_slice(
        4,
        4,
        &[
            1.0,
            beta / 2.0,
            0.0,
            0.0,
            beta / 2.0,
            alpha * gamma,
            0.0,
            0.0,
            0.0,
            0.0,
            alpha,
            beta / 2.0,
            0.0,
            0.0,
            beta / 2.0,
            gamma,
        ],
    );
    linalg::det(&g)
}

/// Negative definiteness of the symmetrized form on the vector part of a
/// quadratic algebra; decides J-division.
pub fn quadratic_division_negdef(a: &Algebra) -> Result<bool> {
    let ex = a.extract_quadratic_structure()?;
    if ex.structure.vdim == 0 {
        return Ok(true);
    }
    let gs = 0.5 * (&ex.structure.form + ex.structure.form.transpose());
    let ev = linalg::sym_eigenvalues(&gs);
    Ok(ev.iter().all(|l| *l < -a.tolerance()))
}

/// Verdict plus the smallest margin over the strict inequalities of the
/// sixteen-parameter division criterion.
pub fn table1_division_slack(p: &Table1Params) -> (bool, f64) {
    let Table1Params {
        a,
        b,
        c,
        alpha,
        beta,
        gamma,
        mu,
        lambda,
        eta,
        sigma,
        delta,
        nu,
        pi,
        rho,
        theta,
        omega,
    } = *p;
    let bl_ae = beta * lambda - alpha * eta;
    let gl_as = gamma * lambda - alpha * sigma;
    let bg_am = beta * gamma - alpha * mu;
    let brpc = b * rho - pi * c;
    let core = alpha * delta - beta * sigma - lambda * mu + gamma * eta;
    let core_flip = alpha * delta - beta * sigma + lambda * mu - gamma * eta;
    let q = bg_am * brpc * brpc
        + b * b * (sigma * eta - lambda * delta) * nu * nu
        + b * nu * core_flip * brpc;
    let master_lhs = b * c * core * core
        + a * b * bl_ae * omega * omega
        + a * c * gl_as * theta * theta
        + bg_am * brpc * brpc
        + b * b * (sigma * eta - lambda * delta) * nu * nu
        + b * nu * core_flip * brpc;
    let master_rhs =
        a * theta * omega * (alpha * brpc - b * lambda * nu) + 4.0 * b * c * bl_ae * (sigma * mu - gamma * delta);

    let mut margins = vec![bl_ae, gl_as, master_rhs - master_lhs];
    let case_ok = if nu == 0.0 && theta == 0.0 {
        margins.push(bg_am);
        true
    } else if nu == 0.0 {
        margins.push(bg_am);
        let lhs = c * gl_as * theta * theta + b * bl_ae * omega * omega;
        margins.push(lhs - alpha * omega * theta * brpc);
        true
    } else if theta == 0.0 {
        margins.push(q);
        true
    } else {
        let lhs = c * gl_as * theta * theta + b * bl_ae * omega * omega;
        margins.push(lhs - omega * theta * (alpha * brpc - b * lambda * nu));
        margins.push(q);
        true
    };
    let _ = case_ok;
    let verdict = margins.iter().all(|m| *m > 0.0);
    let slack = margins.iter().map(|m| m.abs()).fold(f64::INFINITY, f64::min);
    (verdict, slack)
}

/// Division criterion for the sixteen-parameter table.
pub fn table1_division_criterion(p: &Table1Params) -> Result<bool> {
    p.validate()?;
    Ok(table1_division_slack(p).0)
}

/// Division criterion for `(E_{-1,alpha,beta,delta,-beta}(H^(lambda)))^(mu)`:
/// `lambda, mu != 1/2`, `beta^2 + 2 alpha - 1 > 0` and
/// `((2 alpha - 1) delta - beta)^2 < 4 (beta^2 + 2 alpha - 1)(1 + beta delta)`.
pub fn cor414_criterion(lambda: f64, mu: f64, alpha: f64, beta: f64, delta: f64) -> bool {
    if lambda == 0.5 || mu == 0.5 {
        return false;
    }
    let d = beta * beta + 2.0 * alpha - 1.0;
    if d.is_nan() || d <= 0.0 {
        return false;
    }
    let lhs = (2.0 * alpha - 1.0) * delta - beta;
    lhs * lhs < 4.0 * d * (1.0 + beta * delta)
}

/// Division criterion for the seven-parameter family:
/// `eta < 0` and `b rho^2 < 4 c eta^2`.
pub fn table5_division_criterion(eta: f64, b: f64, c: f64, rho: f64) -> Result<bool> {
    if b.is_nan() || c.is_nan() || b <= 0.0 || c <= 0.0 {
        return Err(Error::InvalidParameter("b and c must be positive".into()));
    }
    Ok(table5_division_slack(eta, b, c, rho).0)
}

/// Verdict plus margin for the seven-parameter criterion.
pub fn table5_division_slack(eta: f64, b: f64, c: f64, rho: f64) -> (bool, f64) {
    let m1 = -eta;
    let m2 = 4.0 * c * eta * eta - b * rho * rho;
    ((m1 > 0.0) && (m2 > 0.0), m1.abs().min(m2.abs()))
}

/// Division boundary of the classical one-parameter doubling of the
/// quaternions: `|delta| < 2`.
pub fn e_delta_criterion(delta: f64) -> bool {
    delta.abs() < 2.0
}

/// Internal consistency gate: a finite-dimensional real division algebra
/// has dimension 1, 2, 4 or 8.
pub fn hopf_gate(a: &Algebra, claimed_division: bool) -> Option<String> {
    if claimed_division && ![1, 2, 4, 8].contains(&a.dim()) {
        Some(format!(
            "division claimed in dimension {}, impossible for a real bilinear product without zero divisors",
            a.dim()
        ))
    } else {
        None
    }
}
