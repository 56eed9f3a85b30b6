//! Isomorphism invariants, polar canonicalization of octonion isotopes,
//! witness verification and the reduction of an eight-dimensional
//! noncommutative Jordan division algebra to the sixteen-parameter table.

use crate::algebra::{Algebra, Identity, LinearMap};
use crate::constructions::{self, Table1Params};
use crate::division::{self, DivisionStatus, DivisionVerdict};
use crate::lie;
use crate::linalg;
use crate::rng;
use crate::{Error, Result};
use nalgebra::{DMatrix, DVector};
use serde::Serialize;

const IDENTITY_SAMPLES: usize = 50;
const DIVISION_SAMPLES: usize = 2000;

/// Deterministic bundle of isomorphism invariants.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantVector {
    pub dim: usize,
    pub unital: bool,
    /// `(identity name, holds)` in the fixed identity order.
    pub identity_profile: Vec<(String, bool)>,
    pub division_status: DivisionVerdict,
    pub der_dim: usize,
    pub der_label: String,
    pub module_dims: Option<Vec<usize>>,
    /// `|2 lambda - 1|` for the four-dimensional mutation family.
    pub mutation_param: Option<f64>,
    /// Sorted eigenvalues of the polar factor of the attached isotopy map.
    pub isotopy_spectrum: Option<Vec<f64>>,
}

/// Populates every computable invariant.
pub fn invariants(a: &Algebra, seed: u64) -> Result<InvariantVector> {
    let mut identity_profile = Vec::new();
    for id in Identity::ALL {
        let rep = a.check_identity(id, IDENTITY_SAMPLES, seed)?;
        identity_profile.push((id.name().to_string(), rep.holds));
    }
    let division_status = division::zero_divisor_search(a, DIVISION_SAMPLES, seed)?;
    let der = lie::derivation_basis(a);
    let module_dims = if der.dim >= 1 {
        Some(lie::der_module_decomposition(a, &der, seed)?)
    } else {
        None
    };
    let mutation_param = if a.dim() == 4 { mutation_parameter(a) } else { None };
    let isotopy_spectrum = match a.isotopy_map() {
        Some(phi) => {
            let (s, _r) = polar_canonicalize(phi)?;
            Some(linalg::sym_eigenvalues(&s))
        }
        None => None,
    };
    Ok(InvariantVector {
        dim: a.dim(),
        unital: a.is_unital(),
        identity_profile,
        division_status,
        der_dim: der.dim,
        der_label: der.label.name(),
        module_dims,
        mutation_param,
        isotopy_spectrum,
    })
}

/// `|2 lambda - 1|` for a four-dimensional quadratic flexible division
/// algebra: the wedge norm of any orthonormal vector pair.
fn mutation_parameter(a: &Algebra) -> Option<f64> {
    let ex = a.extract_quadratic_structure().ok()?;
    if ex.structure.vdim != 3 {
        return None;
    }
    if !a.check_identity(Identity::Flexible, 1, 0).ok()?.holds {
        return None;
    }
    let gs = 0.5 * (&ex.structure.form + ex.structure.form.transpose());
    let e = -gs;
    if !linalg::sym_eigenvalues(&e).iter().all(|l| *l > 1e-12) {
        return None;
    }
    let root = linalg::sym_sqrt(&e);
    let root_inv = root.clone().try_inverse()?;
    let u = root_inv.column(0).into_owned();
    let v = root_inv.column(1).into_owned();
    // orthonormalize v against u in the <.,.> = -(.|.) metric
    let ip = |x: &DVector<f64>, y: &DVector<f64>| (x.transpose() * &e * y)[(0, 0)];
    let u = &u / ip(&u, &u).sqrt();
    let mut v = &v - ip(&u, &v) * &u;
    v /= ip(&v, &v).sqrt();
    let w = ex.structure.wedge_of(&u, &v);
    Some(ip(&w, &w).sqrt())
}

/// Polar decomposition `phi = s r` with `s = (phi phi^T)^{1/2}` symmetric
/// positive definite and `r` orthogonal.
pub fn polar_canonicalize(phi: &LinearMap) -> Result<(LinearMap, LinearMap)> {
    if phi.nrows() != phi.ncols() {
        return Err(Error::DimensionMismatch { expected: phi.nrows(), got: phi.ncols() });
    }
    if linalg::inv_condition(phi) < 1e-12 {
        return Err(Error::SingularMap);
    }
    let s = linalg::sym_sqrt(&(phi * phi.transpose()));
    let s_inv = s.clone().try_inverse().ok_or(Error::SingularMap)?;
    let r = &s_inv * phi;
    Ok((s, r))
}

/// Outcome of the necessary-invariant comparison. `Compatible` is not a
/// proof of isomorphism.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Comparison {
    Distinguished { reason: String },
    Compatible,
}

/// Compares the invariant vectors of two algebras.
pub fn compare(a: &Algebra, b: &Algebra, seed: u64) -> Result<Comparison> {
    let ia = invariants(a, seed)?;
    let ib = invariants(b, seed)?;
    Ok(compare_invariants(&ia, &ib))
}

pub fn compare_invariants(ia: &InvariantVector, ib: &InvariantVector) -> Comparison {
    if ia.dim != ib.dim {
        return Comparison::Distinguished { reason: format!("dimension {} vs {}", ia.dim, ib.dim) };
    }
    if ia.unital != ib.unital {
        return Comparison::Distinguished { reason: "one algebra is unital, the other is not".into() };
    }
    for ((name, ha), (_, hb)) in ia.identity_profile.iter().zip(&ib.identity_profile) {
        if ha != hb {
            return Comparison::Distinguished { reason: format!("identity `{name}` holds on one side only") };
        }
    }
    let da = ia.division_status.status;
    let db = ib.division_status.status;
    if (da == DivisionStatus::Division && db == DivisionStatus::NotDivision)
        || (da == DivisionStatus::NotDivision && db == DivisionStatus::Division)
    {
        return Comparison::Distinguished { reason: "division status differs".into() };
    }
    if ia.der_dim != ib.der_dim {
        return Comparison::Distinguished {
            reason: format!("derivation dimension {} vs {}", ia.der_dim, ib.der_dim),
        };
    }
    if ia.der_label != ib.der_label {
        return Comparison::Distinguished {
            reason: format!("derivation label {} vs {}", ia.der_label, ib.der_label),
        };
    }
    if let (Some(ma), Some(mb)) = (&ia.module_dims, &ib.module_dims) {
        if ma != mb {
            return Comparison::Distinguished {
                reason: format!("module decomposition {ma:?} vs {mb:?}"),
            };
        }
    }
    if let (Some(pa), Some(pb)) = (ia.mutation_param, ib.mutation_param) {
        if (pa - pb).abs() > 1e-6 {
            return Comparison::Distinguished {
                reason: format!("mutation parameter {pa:.9} vs {pb:.9}"),
            };
        }
    }
    if let (Some(sa), Some(sb)) = (&ia.isotopy_spectrum, &ib.isotopy_spectrum) {
        if sa.len() != sb.len()
            || sa.iter().zip(sb).any(|(x, y)| (x - y).abs() > 1e-6)
        {
            return Comparison::Distinguished { reason: "isotopy spectra differ".into() };
        }
    }
    Comparison::Compatible
}

/// Verifies an isomorphism witness; for quadratic division inputs the map
/// must additionally be an isometry of the trace form.
pub fn verify_iso_witness(a: &Algebra, b: &Algebra, f: &LinearMap) -> bool {
    if !lie::is_isomorphism(a, b, f) {
        return false;
    }
    match (full_space_form(a), full_space_form(b)) {
        (Some(ga), Some(gb)) => {
            let moved = f.transpose() * gb * f;
            (moved - ga).norm() <= a.tolerance() * 1e3
        }
        _ => true,
    }
}

/// Full-space symmetrized quadratic form, when the algebra is quadratic
/// with negative definite vector form (the division case).
fn full_space_form(a: &Algebra) -> Option<DMatrix<f64>> {
    let ex = a.extract_quadratic_structure().ok()?;
    let n = a.dim();
    let gv = 0.5 * (&ex.structure.form + ex.structure.form.transpose());
    if !linalg::sym_eigenvalues(&(-&gv)).iter().all(|l| *l > 1e-12) {
        return None;
    }
    let half_t = 0.5 * &ex.trace_form;
    let mut g = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let si = half_t.dot(&a.basis_element(i));
            let sj = half_t.dot(&a.basis_element(j));
            let pi = ex.vbasis.transpose() * (a.basis_element(i) - si * &ex.unit);
            let pj = ex.vbasis.transpose() * (a.basis_element(j) - sj * &ex.unit);
            g[(i, j)] = si * sj + (pi.transpose() * &gv * pj)[(0, 0)];
        }
    }
    Some(g)
}

/// Result of the canonical reduction: `columns` holds the new basis
/// `{1, u, y1, z1, y2, z2, y3, z3}` in the original coordinates, and
/// rebuilding the table from `params` reproduces the algebra in that basis.
#[derive(Clone, Debug)]
pub struct Table1Reduction {
    pub columns: DMatrix<f64>,
    pub params: Table1Params,
    /// Entrywise distance between the rebuilt table and the algebra in the
    /// reduced basis.
    pub residual: f64,
}

struct VectorCalculus {
    /// wedge tensor in the orthonormal frame, `(p * 7 + q) * 7 + k`
    w: Vec<f64>,
}

impl VectorCalculus {
    fn wedge(&self, u: &DVector<f64>, v: &DVector<f64>) -> DVector<f64> {
        let n = 7;
        let mut out = DVector::zeros(n);
        for p in 0..n {
            if u[p] == 0.0 {
                continue;
            }
            for q in 0..n {
                let s = u[p] * v[q];
                if s == 0.0 {
                    continue;
                }
                for k in 0..n {
                    out[k] += s * self.w[(p * n + q) * n + k];
                }
            }
        }
        out
    }

    /// matrix of `y -> u wedge y`
    fn left_wedge(&self, u: &DVector<f64>) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(7, 7);
        for q in 0..7 {
            let mut e = DVector::zeros(7);
            e[q] = 1.0;
            m.set_column(q, &self.wedge(u, &e));
        }
        m
    }
}

/// Reduces an eight-dimensional noncommutative Jordan division algebra to
/// the sixteen-parameter table: finds the four-dimensional subalgebra seed
/// by maximizing the wedge norm over orthonormal pairs, builds the
/// eigenframe, applies the three parameter-killing rotations and reads off
/// the parameters.
pub fn canonical_table1_reduction(a: &Algebra, seed: u64) -> Result<Table1Reduction> {
    if a.dim() != 8 {
        return Err(Error::Precondition("reduction needs an eight-dimensional algebra".into()));
    }
    if !a.check_identity(Identity::NcJordan, IDENTITY_SAMPLES, seed)?.holds {
        return Err(Error::Precondition("algebra is not noncommutative Jordan".into()));
    }
    let probe = division::zero_divisor_search(a, DIVISION_SAMPLES, seed)?;
    if probe.status != DivisionStatus::Division {
        return Err(Error::Precondition("algebra did not probe as linear division".into()));
    }

    let ex = a.extract_quadratic_structure()?;
    let gs = 0.5 * (&ex.structure.form + ex.structure.form.transpose());
    let e = -gs;
    if !linalg::sym_eigenvalues(&e).iter().all(|l| *l > 1e-12) {
        return Err(Error::Precondition("vector form is not negative definite".into()));
    }
    let root = linalg::sym_sqrt(&e);
    let root_inv = root.clone().try_inverse().ok_or(Error::SingularMap)?;

    // wedge tensor in the <.,.>-orthonormal frame
    let mut w = vec![0.0; 343];
    for p in 0..7 {
        let up: DVector<f64> = root_inv.column(p).into();
        for q in 0..7 {
            let uq: DVector<f64> = root_inv.column(q).into();
            let img = &root * ex.structure.wedge_of(&up, &uq);
            for k in 0..7 {
                w[(p * 7 + q) * 7 + k] = img[k];
            }
        }
    }
    let calc = VectorCalculus { w };

    // multi-start projected ascent of |u wedge v|^2 over orthonormal pairs
    let mut rng = rng::rng_from_seed(seed);
    let mut best: Option<(f64, DVector<f64>, DVector<f64>)> = None;
    for _ in 0..64 {
        let u0 = rng::unit_vector(&mut rng, 7);
        let mut v0 = rng::unit_vector(&mut rng, 7);
        v0 -= u0.dot(&v0) * &u0;
        if v0.norm() < 1e-9 {
            continue;
        }
        v0 /= v0.norm();
        let (val, u, v) = ascend_pair(&calc, u0, v0);
        if best.as_ref().is_none_or(|(bv, _, _)| val > *bv + 1e-12) {
            best = Some((val, u, v));
        }
    }
    let (_, u, y1) = best.ok_or_else(|| Error::Numerical("canonical pair search failed".into()))?;

    let w_uy1 = calc.wedge(&u, &y1);
    let a1 = w_uy1.norm();
    if a1 < 1e-9 {
        return Err(Error::Numerical("canonical pair search stagnated: degenerate wedge".into()));
    }
    let z1 = &w_uy1 / a1;
    // closure of the four-dimensional seed: y1 wedge z1 = a1 u
    if (calc.wedge(&y1, &z1) - a1 * &u).norm() > 1e-6 * (1.0 + a1) {
        return Err(Error::Numerical(
            "canonical pair search stagnated: seed pair does not close".into(),
        ));
    }

    // eigenframe of f_u^2 on the complement of span{u, y1, z1}
    let fu = calc.left_wedge(&u);
    let g = &fu * &fu;
    let mut span3 = DMatrix::zeros(3, 7);
    span3.row_mut(0).copy_from(&u.transpose());
    span3.row_mut(1).copy_from(&y1.transpose());
    span3.row_mut(2).copy_from(&z1.transpose());
    let (q4, _) = linalg::nullspace(&span3, 1e-9);
    if q4.ncols() != 4 {
        return Err(Error::Numerical("complement of the seed plane is degenerate".into()));
    }
    let m4 = q4.transpose() * &g * &q4;
    let es = (0.5 * (&m4 + m4.transpose())).symmetric_eigen();
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&i, &j| es.eigenvalues[i].partial_cmp(&es.eigenvalues[j]).unwrap());
    let y2: DVector<f64> = &q4 * es.eigenvectors.column(order[0]);
    let y2 = &y2 / y2.norm();
    let w_uy2 = calc.wedge(&u, &y2);
    let a2 = w_uy2.norm();
    let z2 = &w_uy2 / a2;
    let mut span5 = DMatrix::zeros(5, 7);
    for (r, vv) in [&u, &y1, &z1, &y2, &z2].iter().enumerate() {
        span5.row_mut(r).copy_from(&vv.transpose());
    }
    let (q2, _) = linalg::nullspace(&span5, 1e-9);
    if q2.ncols() != 2 {
        return Err(Error::Numerical("last eigenplane is degenerate".into()));
    }
    let y3: DVector<f64> = q2.column(0).into();
    let y3 = &y3 / y3.norm();
    let w_uy3 = calc.wedge(&u, &y3);
    let a3 = w_uy3.norm();
    let z3 = &w_uy3 / a3;

    let mut frame = [u, y1, z1, y2, z2, y3, z3];

    // rotation killing the y1-coefficient of y2 wedge z2
    {
        let p = calc.wedge(&frame[3], &frame[4]);
        let pi_star = frame[1].dot(&p);
        let pi = frame[2].dot(&p);
        let norm = pi_star.hypot(pi);
        if norm > 1e-12 {
            let y1n = (pi * &frame[1] - pi_star * &frame[2]) / norm;
            let z1n = (pi_star * &frame[1] + pi * &frame[2]) / norm;
            frame[1] = y1n;
            frame[2] = z1n;
        }
    }
    // rotation killing the y3-coefficient of y2 wedge z2
    {
        let p = calc.wedge(&frame[3], &frame[4]);
        let th_star = frame[5].dot(&p);
        let th = frame[6].dot(&p);
        let norm = th_star.hypot(th);
        if norm > 1e-12 {
            let y3n = (th * &frame[5] - th_star * &frame[6]) / norm;
            let z3n = (th_star * &frame[5] + th * &frame[6]) / norm;
            frame[5] = y3n;
            frame[6] = z3n;
        }
    }
    // rotation killing the y2-coefficient of y3 wedge z3
    {
        let p = calc.wedge(&frame[5], &frame[6]);
        let om_star = frame[3].dot(&p);
        let om = frame[4].dot(&p);
        let norm = om_star.hypot(om);
        if norm > 1e-12 {
            let y2n = (om * &frame[3] - om_star * &frame[4]) / norm;
            let z2n = (om_star * &frame[3] + om * &frame[4]) / norm;
            frame[3] = y2n;
            frame[4] = z2n;
        }
    }

    let [u, y1, z1, y2, z2, y3, z3] = frame;
    let read = |x: &DVector<f64>, y: &DVector<f64>, against: &DVector<f64>| -> f64 {
        against.dot(&calc.wedge(x, y))
    };
    let params = Table1Params {
        a: read(&u, &y1, &z1),
        b: read(&u, &y2, &z2),
        c: read(&u, &y3, &z3),
        alpha: read(&y1, &y2, &y3),
        beta: read(&y1, &y2, &z3),
        gamma: read(&y1, &z2, &y3),
        mu: read(&y1, &z2, &z3),
        lambda: read(&z1, &y2, &y3),
        eta: read(&z1, &y2, &z3),
        sigma: read(&z1, &z2, &y3),
        delta: read(&z1, &z2, &z3),
        nu: read(&y3, &z3, &y1),
        pi: read(&y2, &z2, &z1),
        rho: read(&y3, &z3, &z1),
        theta: read(&y2, &z2, &z3),
        omega: read(&y3, &z3, &z2),
    };
    params.validate().map_err(|_| {
        Error::Numerical("reduction produced nonpositive scale parameters".into())
    })?;

    // basis change back to the original coordinates
    let to_a = |v7: &DVector<f64>| -> DVector<f64> { &ex.vbasis * (&root_inv * v7) };
    let mut columns = DMatrix::zeros(8, 8);
    columns.set_column(0, &ex.unit);
    for (c, vv) in [&u, &y1, &z1, &y2, &z2, &y3, &z3].iter().enumerate() {
        columns.set_column(c + 1, &to_a(vv));
    }

    let rebuilt = constructions::table1(&params)?;
    let moved = a.change_of_basis(&columns)?;
    let residual = rebuilt.entrywise_distance(&moved);
    if residual > 1e-6 {
        return Err(Error::Numerical(format!(
            "reduction failed validation: rebuilt table differs by {residual:.3e}"
        )));
    }
    Ok(Table1Reduction { columns, params, residual })
}

/// One projected-ascent run for `|u wedge v|^2` over orthonormal pairs,
/// with step halving; stops when the Riemannian gradient drops below 1e-10.
fn ascend_pair(
    calc: &VectorCalculus,
    mut u: DVector<f64>,
    mut v: DVector<f64>,
) -> (f64, DVector<f64>, DVector<f64>) {
    let objective = |u: &DVector<f64>, v: &DVector<f64>| calc.wedge(u, v).norm_squared();
    let mut val = objective(&u, &v);
    let mut step = 0.5;
    for _ in 0..500 {
        let wv = calc.wedge(&u, &v);
        // gradients of |w|^2: w = L(v) u = R(u) v
        let mut lu = DMatrix::zeros(7, 7);
        let mut ru = DMatrix::zeros(7, 7);
        for p in 0..7 {
            let mut ep = DVector::zeros(7);
            ep[p] = 1.0;
            lu.set_column(p, &calc.wedge(&ep, &v));
            ru.set_column(p, &calc.wedge(&u, &ep));
        }
        let gu = 2.0 * lu.transpose() * &wv;
        let gv = 2.0 * ru.transpose() * &wv;
        // project on the tangent space of the Stiefel 2-frame
        let mut x = DMatrix::zeros(7, 2);
        x.set_column(0, &u);
        x.set_column(1, &v);
        let mut grad = DMatrix::zeros(7, 2);
        grad.set_column(0, &gu);
        grad.set_column(1, &gv);
        let xtg = x.transpose() * &grad;
        let sym = 0.5 * (&xtg + xtg.transpose());
        let pgrad = &grad - &x * sym;
        if pgrad.norm() < 1e-10 {
            break;
        }
        let mut accepted = false;
        let mut local = step;
        for _ in 0..40 {
            let cand = &x + local * &pgrad;
            let q = linalg::gram_schmidt(&cand, 1e-12);
            if q.ncols() != 2 {
                local *= 0.5;
                continue;
            }
            let (cu, cv): (DVector<f64>, DVector<f64>) = (q.column(0).into(), q.column(1).into());
            let cval = objective(&cu, &cv);
            if cval > val {
                u = cu;
                v = cv;
                val = cval;
                accepted = true;
                step = local * 2.0;
                break;
            }
            local *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (val, u, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{canonical, gcd_extension, mutation, GcdParams};

    #[test]
    fn polar_decomposition_properties() {
        let mut rng = rng::rng_from_seed(3);
        let phi = DMatrix::<f64>::from_fn(7, 7, |_, _| {
            use rand::Rng;
            rng.sample(rand_distr::StandardNormal)
        }) + 2.5 * DMatrix::<f64>::identity(7, 7);
        let (s, r) = polar_canonicalize(&phi).unwrap();
        assert!((&s * &r - &phi).norm() < 1e-9);
        assert!((&s - s.transpose()).norm() < 1e-12);
        assert!((r.transpose() * &r - DMatrix::<f64>::identity(7, 7)).norm() < 1e-9);
    }

    #[test]
    fn polar_of_orthogonal_is_identity() {
        let mut q = DMatrix::<f64>::identity(7, 7);
        // a plane rotation
        let (c, s) = (0.6, 0.8);
        q[(0, 0)] = c;
        q[(0, 1)] = -s;
        q[(1, 0)] = s;
        q[(1, 1)] = c;
        let (sym, _) = polar_canonicalize(&q).unwrap();
        assert!((sym - DMatrix::<f64>::identity(7, 7)).norm() < 1e-9);
        let d = 2.0 * DMatrix::<f64>::identity(7, 7);
        let (sym, r) = polar_canonicalize(&d).unwrap();
        assert!((sym - &d).norm() < 1e-10);
        assert!((r - DMatrix::<f64>::identity(7, 7)).norm() < 1e-10);
    }

    #[test]
    fn mutation_parameter_distinguishes_and_identifies() {
        let h = canonical("H").unwrap();
        let a = invariants(&mutation(&h, 0.75), 42).unwrap();
        assert!((a.mutation_param.unwrap() - 0.5).abs() < 1e-9);
        let b = invariants(&mutation(&h, 0.25), 42).unwrap();
        assert_eq!(compare_invariants(&a, &b), Comparison::Compatible);
        let c = invariants(&mutation(&h, 0.9), 42).unwrap();
        assert!(matches!(compare_invariants(&a, &c), Comparison::Distinguished { .. }));
    }

    #[test]
    fn mcclay_invariants() {
        let cs = canonical("Cstar").unwrap();
        let iv = invariants(&cs, 42).unwrap();
        assert_eq!(iv.dim, 2);
        assert!(!iv.unital);
        assert!(iv.identity_profile.iter().any(|(n, h)| n == "commutative" && *h));
        assert_eq!(iv.division_status.status, DivisionStatus::Division);
    }

    #[test]
    fn octonion_invariants() {
        let o = canonical("O").unwrap();
        let iv = invariants(&o, 42).unwrap();
        assert_eq!(iv.dim, 8);
        assert!(iv.unital);
        for want in ["alternative", "nc_jordan", "flexible"] {
            assert!(iv.identity_profile.iter().any(|(n, h)| n == want && *h));
        }
        assert_eq!(iv.division_status.status, DivisionStatus::Division);
        assert_eq!(iv.der_dim, 14);
        assert_eq!(iv.der_label, "g2_compact");
        assert_eq!(iv.module_dims.as_deref(), Some(&[1usize, 7][..]));
    }

    #[test]
    fn compare_is_reflexively_compatible() {
        let o = canonical("O").unwrap();
        assert_eq!(compare(&o, &o, 42).unwrap(), Comparison::Compatible);
    }

    #[test]
    fn witness_verification() {
        let h = canonical("H").unwrap();
        let em = gcd_extension(&h, GcdParams::classical(-1.0, -1.0).unwrap()).unwrap();
        let ep = gcd_extension(&h, GcdParams::classical(-1.0, 1.0).unwrap()).unwrap();
        let mut f = DMatrix::<f64>::identity(8, 8);
        for i in 4..8 {
            f[(i, i)] = -1.0;
        }
        assert!(verify_iso_witness(&em, &ep, &f));
        // a random non-multiplicative map fails
        let mut bad = DMatrix::<f64>::identity(8, 8);
        bad[(1, 2)] = 0.3;
        assert!(!verify_iso_witness(&em, &ep, &bad));
    }

    #[test]
    fn scaling_witness_between_gamma_indices() {
        let h = canonical("H").unwrap();
        // omega^2 = -gamma with gamma = -4: omega = 2
        let g1 = gcd_extension(&h, GcdParams::new(-4.0, 0.8, 0.6, 0.5, 0.3).unwrap()).unwrap();
        let g2 = gcd_extension(
            &h,
            GcdParams::new(-1.0, 0.8, 0.3, 0.25, 0.6).unwrap(),
        )
        .unwrap();
        let mut f = DMatrix::<f64>::identity(8, 8);
        for i in 4..8 {
            f[(i, i)] = 2.0;
        }
        assert!(verify_iso_witness(&g1, &g2, &f));
    }

    #[test]
    fn reduction_recovers_octonions() {
        let o = canonical("O").unwrap();
        let red = canonical_table1_reduction(&o, 42).unwrap();
        assert!(red.residual < 1e-6);
        // octonion parameters after relabeling: a = b = c = 1
        assert!((red.params.a - 1.0).abs() < 1e-6);
        assert!((red.params.b - 1.0).abs() < 1e-6);
        assert!((red.params.c - 1.0).abs() < 1e-6);
    }

    #[test]
    fn reduction_of_classical_doubling() {
        let h = canonical("H").unwrap();
        let e = gcd_extension(&h, GcdParams::classical(-1.0, 1.0).unwrap()).unwrap();
        let red = canonical_table1_reduction(&e, 42).unwrap();
        assert!(red.residual < 1e-6);
        assert!(division::table1_division_criterion(&red.params).unwrap());
    }

    #[test]
    fn reduction_rejects_non_division_input() {
        let hp = canonical("Hplus").unwrap();
        assert!(canonical_table1_reduction(&hp, 42).is_err());
    }
}
