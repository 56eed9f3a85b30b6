//! Algebra constructors: canonical tables, mutations, Cayley-Dickson
//! doubling and its five-parameter generalization, vector isotopes,
//! quadratic assembly and the parametric eight-dimensional families.

use crate::algebra::{Algebra, Element, LinearMap};
use crate::linalg;
use crate::{Error, Result, DEFAULT_TOL};
use nalgebra::{DMatrix, DVector};

/// `(V, (.|.), wedge)` presentation of a quadratic algebra: a vector space
/// with a bilinear form and an anticommutative product on it.
#[derive(Clone, Debug)]
pub struct QuadraticStructure {
    pub vdim: usize,
    /// `form[(p, q)]` is the scalar part of `v_p v_q`.
    pub form: DMatrix<f64>,
    /// Rank-3 tensor, index `(p * vdim + q) * vdim + k`; antisymmetric in `(p, q)`.
    pub wedge: Vec<f64>,
}

impl QuadraticStructure {
    pub fn new(vdim: usize, form: DMatrix<f64>, wedge: Vec<f64>) -> Result<Self> {
        if form.nrows() != vdim || form.ncols() != vdim {
            return Err(Error::DimensionMismatch { expected: vdim, got: form.nrows() });
        }
        if wedge.len() != vdim * vdim * vdim {
            return Err(Error::DimensionMismatch { expected: vdim * vdim * vdim, got: wedge.len() });
        }
        let scale = wedge.iter().fold(0.0_f64, |m, w| m.max(w.abs()));
        for p in 0..vdim {
            for q in 0..vdim {
                for k in 0..vdim {
                    let s = wedge[(p * vdim + q) * vdim + k] + wedge[(q * vdim + p) * vdim + k];
                    if s.abs() > 1e-9 * (1.0 + scale) {
                        return Err(Error::InvalidParameter(
                            "wedge tensor is not antisymmetric in (p, q)".into(),
                        ));
                    }
                }
            }
        }
        Ok(QuadraticStructure { vdim, form, wedge })
    }

    #[inline]
    pub fn wedge_c(&self, p: usize, q: usize, k: usize) -> f64 {
        self.wedge[(p * self.vdim + q) * self.vdim + k]
    }

    /// Wedge product of two coordinate vectors on `V`.
    pub fn wedge_of(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let n = self.vdim;
        let mut out = DVector::zeros(n);
        for p in 0..n {
            if x[p] == 0.0 {
                continue;
            }
            for q in 0..n {
                let s = x[p] * y[q];
                if s == 0.0 {
                    continue;
                }
                for k in 0..n {
                    out[k] += s * self.wedge[(p * n + q) * n + k];
                }
            }
        }
        out
    }
}

/// Index `(gamma, alpha, beta, delta, theta)` of a generalized Cayley-Dickson
/// extension; `gamma` must be nonzero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GcdParams {
    pub gamma: f64,
    pub alpha: f64,
    pub beta: f64,
    pub delta: f64,
    pub theta: f64,
}

impl GcdParams {
    pub fn new(gamma: f64, alpha: f64, beta: f64, delta: f64, theta: f64) -> Result<Self> {
        if gamma == 0.0 || !gamma.is_finite() {
            return Err(Error::InvalidParameter("gamma must be nonzero".into()));
        }
        Ok(GcdParams { gamma, alpha, beta, delta, theta })
    }

    /// The classical doubling `E_{gamma, delta}`: `alpha = 1`, `beta = theta = 0`.
    pub fn classical(gamma: f64, delta: f64) -> Result<Self> {
        GcdParams::new(gamma, 1.0, 0.0, delta, 0.0)
    }
}

/// The sixteen parameters of the eight-dimensional multiplication table:
/// three positive scale parameters and thirteen free ones.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Table1Params {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub mu: f64,
    pub lambda: f64,
    pub eta: f64,
    pub sigma: f64,
    pub delta: f64,
    pub nu: f64,
    pub pi: f64,
    pub rho: f64,
    pub theta: f64,
    pub omega: f64,
}

impl Table1Params {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !(positive(self.a) && positive(self.b) && positive(self.c)) {
            return Err(Error::InvalidParameter("table parameters a, b, c must be positive".into()));
        }
        Ok(())
    }

    pub fn to_vec(&self) -> Vec<f64> {
        vec![
            self.a, self.b, self.c, self.alpha, self.beta, self.gamma, self.mu, self.lambda,
            self.eta, self.sigma, self.delta, self.nu, self.pi, self.rho, self.theta, self.omega,
        ]
    }

    pub fn from_slice(v: &[f64]) -> Result<Self> {
        if v.len() != 16 {
            return Err(Error::InvalidParameter(format!("expected 16 parameters, got {}", v.len())));
        }
        Ok(Table1Params {
            a: v[0],
            b: v[1],
            c: v[2],
            alpha: v[3],
            beta: v[4],
            gamma: v[5],
            mu: v[6],
            lambda: v[7],
            eta: v[8],
            sigma: v[9],
            delta: v[10],
            nu: v[11],
            pi: v[12],
            rho: v[13],
            theta: v[14],
            omega: v[15],
        })
    }
}

// Signed multiplication tables: entry s*(t+1) means e_i e_j = s * e_t.
const O_TABLE: [[i32; 8]; 8] = [
    [1, 2, 3, 4, 5, 6, 7, 8],
    [2, -1, 4, -3, 6, -5, -8, 7],
    [3, -4, -1, 2, 7, 8, -5, -6],
    [4, 3, -2, -1, 8, -7, 6, -5],
    [5, -6, -7, -8, -1, 2, 3, 4],
    [6, 5, -8, 7, -2, -1, -4, 3],
    [7, 8, 5, -6, -3, 4, -1, -2],
    [8, -7, 6, 5, -4, -3, 2, -1],
];

const H_TABLE: [[i32; 4]; 4] = [
    [1, 2, 3, 4],
    [2, -1, 4, -3],
    [3, -4, -1, 2],
    [4, 3, -2, -1],
];

const C_TABLE: [[i32; 2]; 2] = [[1, 2], [2, -1]];

// McClay algebra *C: z (.) z' = conj(z) conj(z').
const CSTAR_TABLE: [[i32; 2]; 2] = [[1, -2], [-2, -1]];

fn from_signed_table<const N: usize>(table: &[[i32; N]; N], labels: &[&str]) -> Algebra {
    let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
    Algebra::from_fn(N, labels, |i, j, k| {
        let v = table[i][j];
        let t = v.unsigned_abs() as usize - 1;
        if t == k {
            v.signum() as f64
        } else {
            0.0
        }
    })
    .expect("static table")
}

/// The canonical algebras: `R`, `C`, `Cstar` (McClay), `H`, `O`, `Hplus`.
pub fn canonical(name: &str) -> Result<Algebra> {
    let a = match name {
        "R" => Algebra::new(1, vec!["1".into()], vec![1.0], DEFAULT_TOL)?,
        "C" => from_signed_table(&C_TABLE, &["1", "i"]),
        "Cstar" => from_signed_table(&CSTAR_TABLE, &["1", "i"]),
        "H" => from_signed_table(&H_TABLE, &["1", "i", "j", "k"]),
        "O" => from_signed_table(&O_TABLE, &["1", "i", "j", "k", "f", "if", "jf", "kf"]),
        "Hplus" => {
            let h = from_signed_table(&H_TABLE, &["1", "i", "j", "k"]);
            return Ok(mutation(&h, 0.5).with_provenance("Hplus"));
        }
        other => return Err(Error::InvalidParameter(format!("unknown canonical algebra `{other}`"))),
    };
    Ok(a.with_provenance(name))
}

/// Mutation `A^(lambda)`: same space, product `lambda xy + (1 - lambda) yx`.
pub fn mutation(a: &Algebra, lambda: f64) -> Algebra {
    let n = a.dim();
    let mut m = Algebra::from_fn(n, a.basis_labels().to_vec(), |i, j, k| {
        lambda * a.c(i, j, k) + (1.0 - lambda) * a.c(j, i, k)
    })
    .expect("mutation tensor");
    m.set_tolerance(a.tolerance());
    m = m.with_provenance(format!("mut({},{})", a.provenance().unwrap_or("?"), lambda));
    m
}

/// The Cayley conjugation `x -> t(x) 1 - x` derived from the quadratic
/// structure. Errors when the candidate fails the involution checks
/// (`x + conj(x)` and `x conj(x)` scalar).
pub fn derive_conjugation(b: &Algebra) -> Result<LinearMap> {
    let ex = b.extract_quadratic_structure()?;
    let n = b.dim();
    let conj = &ex.unit * ex.trace_form.transpose() - DMatrix::<f64>::identity(n, n);
    let tol = b.tolerance() * 100.0;
    // involution and Cayley scalar conditions on the basis
    let unit_dir = &ex.unit / ex.unit.norm();
    let scalar_residual = |v: &DVector<f64>| -> f64 {
        let coeff = unit_dir.dot(v);
        (v - coeff * &unit_dir).norm()
    };
    if ((&conj * &conj) - DMatrix::<f64>::identity(n, n)).norm() > tol {
        return Err(Error::Precondition("conjugation is not involutive".into()));
    }
    for i in 0..n {
        let x = b.basis_element(i);
        let xc: DVector<f64> = &conj * &x;
        if scalar_residual(&(&x + &xc)) > tol {
            return Err(Error::Precondition("x + conj(x) is not scalar".into()));
        }
        if scalar_residual(&b.mul_unchecked(&x, &xc)) > tol {
            return Err(Error::Precondition("x conj(x) is not scalar".into()));
        }
    }
    Ok(conj)
}

fn doubling_labels(b: &Algebra) -> Vec<String> {
    let suffix = ["f", "g", "p", "q", "r", "s", "t", "w"]
        .iter()
        .find(|s| !b.basis_labels().iter().any(|l| l.contains(*s)))
        .copied()
        .unwrap_or("f");
    let mut labels: Vec<String> = b.basis_labels().to_vec();
    for l in b.basis_labels() {
        if l == "1" {
            labels.push(suffix.to_string());
        } else {
            labels.push(format!("{l}{suffix}"));
        }
    }
    labels
}

fn assemble_doubled<F>(b: &Algebra, labels: Vec<String>, mut product: F) -> Algebra
where
    F: FnMut(&Element, &Element, &Element, &Element) -> (Element, Element),
{
    let m = b.dim();
    let n = 2 * m;
    let mut c = vec![0.0; n * n * n];
    let zero = DVector::zeros(m);
    for p in 0..n {
        let (x, y) = if p < m {
            (b.basis_element(p), zero.clone())
        } else {
            (zero.clone(), b.basis_element(p - m))
        };
        for q in 0..n {
            let (xp, yp) = if q < m {
                (b.basis_element(q), zero.clone())
            } else {
                (zero.clone(), b.basis_element(q - m))
            };
            let (first, second) = product(&x, &y, &xp, &yp);
            for k in 0..m {
                c[(p * n + q) * n + k] = first[k];
                c[(p * n + q) * n + (m + k)] = second[k];
            }
        }
    }
    let mut alg = Algebra::new(n, labels, c, b.tolerance()).expect("doubled tensor");
    alg.set_tolerance(b.tolerance());
    alg
}

/// Cayley-Dickson doubling with the product
/// `(x, y)(x', y') = (x x' + gamma conj(y') y, y conj(x') + y' x)`.
pub fn cayley_dickson(b: &Algebra, conj: &LinearMap, gamma: f64) -> Result<Algebra> {
    if gamma == 0.0 || !gamma.is_finite() {
        return Err(Error::InvalidParameter("gamma must be nonzero".into()));
    }
    if conj.nrows() != b.dim() || conj.ncols() != b.dim() {
        return Err(Error::DimensionMismatch { expected: b.dim(), got: conj.nrows() });
    }
    let labels = doubling_labels(b);
    let alg = assemble_doubled(b, labels, |x, y, xp, yp| {
        let first = b.mul_unchecked(x, xp) + gamma * b.mul_unchecked(&(conj * yp), y);
        let second = b.mul_unchecked(y, &(conj * xp)) + b.mul_unchecked(yp, x);
        (first, second)
    });
    Ok(alg.with_provenance(format!("cd({},{})", b.provenance().unwrap_or("?"), gamma)))
}

/// Cayley-Dickson doubling with the conjugation derived from the quadratic
/// structure.
pub fn cayley_dickson_auto(b: &Algebra, gamma: f64) -> Result<Algebra> {
    let conj = derive_conjugation(b)?;
    cayley_dickson(b, &conj, gamma)
}

/// Generalized Cayley-Dickson extension `E_{gamma,alpha,beta,delta,theta}(B)`
/// with the product
/// `(x,y)(x',y') = (x .^alpha x' + (beta/2)([x,y'] + [y,x']) + gamma conj(y') y,
///                  y conj(x') + y' x + (delta/2)[y',y] + (theta/2)[x',x])`.
pub fn gcd_extension(b: &Algebra, p: GcdParams) -> Result<Algebra> {
    let conj = derive_conjugation(b)?;
    let GcdParams { gamma, alpha, beta, delta, theta } = p;
    let mul_alpha = |x: &Element, y: &Element| -> Element {
        alpha * b.mul_unchecked(x, y) + (1.0 - alpha) * b.mul_unchecked(y, x)
    };
    let comm =
        |x: &Element, y: &Element| -> Element { b.mul_unchecked(x, y) - b.mul_unchecked(y, x) };
    let labels = doubling_labels(b);
    let alg = assemble_doubled(b, labels, |x, y, xp, yp| {
        let first = mul_alpha(x, xp)
            + 0.5 * beta * (comm(x, yp) + comm(y, xp))
            + gamma * b.mul_unchecked(&(&conj * yp), y);
        let second = b.mul_unchecked(y, &(&conj * xp))
            + b.mul_unchecked(yp, x)
            + 0.5 * delta * comm(yp, y)
            + 0.5 * theta * comm(xp, x);
        (first, second)
    });
    Ok(alg.with_provenance(format!(
        "gcd({},{},{},{},{},{})",
        b.provenance().unwrap_or("?"),
        gamma,
        p.alpha,
        p.beta,
        p.delta,
        p.theta
    )))
}

/// Flexibility transfer condition for a generalized extension of a flexible
/// Cayley algebra: `beta = gamma * theta`.
pub fn gcd_flexible_predicate(p: &GcdParams) -> bool {
    (p.beta - p.gamma * p.theta).abs() <= 1e-12 * (1.0 + (p.gamma * p.theta).abs())
}

/// Unital algebra on `K x V` with product
/// `(a + x)(b + y) = (ab + (x,y)) + (a y + b x + x wedge y)`.
pub fn build_quadratic(q: &QuadraticStructure) -> Result<Algebra> {
    let v = q.vdim;
    let n = v + 1;
    let mut labels = vec!["1".to_string()];
    for p in 0..v {
        labels.push(format!("v{}", p + 1));
    }
    let mut c = vec![0.0; n * n * n];
    c[0] = 1.0;
    for j in 1..n {
        c[j * n + j] = 1.0; // 1 e_j = e_j
        c[(j * n) * n + j] = 1.0; // e_j 1 = e_j
    }
    for p in 0..v {
        for qq in 0..v {
            let (i, j) = (p + 1, qq + 1);
            c[(i * n + j) * n] = q.form[(p, qq)];
            for k in 0..v {
                c[(i * n + j) * n + (k + 1)] = q.wedge_c(p, qq, k);
            }
        }
    }
    Algebra::new(n, labels, c, DEFAULT_TOL)
}

/// Re-expresses a quadratic algebra on the basis `{1, vbasis}` of an
/// extraction. When the original basis already had that shape the labels
/// are kept.
fn presentation_labels(a: &Algebra, ex: &crate::algebra::ExtractedQuadratic) -> Vec<String> {
    let n = a.dim();
    let mut canonical_presentation = (ex.unit.clone() - a.basis_element(0)).norm() < 1e-9;
    if canonical_presentation {
        for p in 0..n - 1 {
            if (ex.vbasis.column(p) - a.basis_element(p + 1)).norm() > 1e-9 {
                canonical_presentation = false;
                break;
            }
        }
    }
    if canonical_presentation {
        a.basis_labels().to_vec()
    } else {
        let mut labels = vec!["1".to_string()];
        for p in 0..n - 1 {
            labels.push(format!("v{}", p + 1));
        }
        labels
    }
}

/// Vector isotope `A(phi)`: keeps the bilinear form and replaces the wedge by
/// `x D y = phi^*(phi(x) wedge phi(y))`, `phi^*` the adjoint with respect to
/// the form. `phi` acts on the vector part and must be invertible.
pub fn vector_isotope(a: &Algebra, phi: &LinearMap) -> Result<Algebra> {
    let ex = a.extract_quadratic_structure()?;
    let v = ex.structure.vdim;
    if phi.nrows() != v || phi.ncols() != v {
        return Err(Error::DimensionMismatch { expected: v, got: phi.nrows() });
    }
    if linalg::inv_condition(phi) <= a.tolerance() {
        return Err(Error::SingularMap);
    }
    let gs = 0.5 * (&ex.structure.form + ex.structure.form.transpose());
    let gs_inv = gs
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::NotQuadratic("degenerate bilinear form".into()))?;
    let phi_star = &gs_inv * phi.transpose() * &gs;
    let mut wedge = vec![0.0; v * v * v];
    for p in 0..v {
        let fp: DVector<f64> = phi.column(p).into();
        for q in 0..v {
            let fq: DVector<f64> = phi.column(q).into();
            let w = &phi_star * ex.structure.wedge_of(&fp, &fq);
            for k in 0..v {
                wedge[(p * v + q) * v + k] = w[k];
            }
        }
    }
    let q = QuadraticStructure::new(v, ex.structure.form.clone(), wedge)?;
    let mut out = build_quadratic(&q)?;
    let labels = presentation_labels(a, &ex);
    out = Algebra::new(out.dim(), labels, out.tensor().to_vec(), a.tolerance())?;
    let composed = match a.isotopy_map() {
        Some(prev) => prev * phi,
        None => phi.clone(),
    };
    out.set_isotopy_map(composed);
    Ok(out.with_provenance(format!("isotope({},phi)", a.provenance().unwrap_or("?"))))
}

/// The two explicit 7x7 isotopy matrices realizing `E_{-1,delta_alpha}(H)`
/// as an octonion isotope, together with
/// `delta_alpha = sqrt(2 (1 - alpha) (2 alpha + 1)^2)`.
pub fn prop44_isotopy_matrices(alpha: f64) -> Result<(LinearMap, LinearMap, f64)> {
    if !(alpha > 0.5 && alpha <= 1.0) {
        return Err(Error::InvalidParameter("alpha must lie in (1/2, 1]".into()));
    }
    let inv = 1.0 / (2.0 * alpha - 1.0);
    let s = (1.0 - alpha * alpha).sqrt();
    // The proof overloads the symbol alpha inside the matrix; the off-block
    // coefficient is alpha' = (1 - alpha^2)^{1/2} (alpha+1)^{-1} (2 alpha-1)^{-1}.
    let alpha_prime = s / ((alpha + 1.0) * (2.0 * alpha - 1.0));
    let mut phi = DMatrix::zeros(7, 7);
    for r in 0..3 {
        phi[(r, r)] = inv;
        phi[(r, 4 + r)] = s;
        phi[(4 + r, r)] = alpha_prime;
        phi[(4 + r, 4 + r)] = alpha;
    }
    phi[(3, 3)] = 1.0;
    let beta = 2.0 / ((alpha + 1.0) * (2.0 * alpha - 1.0) * (2.0 * alpha - 1.0));
    let mut psi = DMatrix::zeros(7, 7);
    for r in 0..3 {
        psi[(r, r)] = beta.powf(-1.0 / 3.0);
    }
    for r in 3..7 {
        psi[(r, r)] = beta.powf(1.0 / 6.0);
    }
    let delta_alpha = (2.0 * (1.0 - alpha) * (2.0 * alpha + 1.0) * (2.0 * alpha + 1.0)).sqrt();
    Ok((phi, psi, delta_alpha))
}

fn table_skeleton() -> (usize, Vec<String>, Vec<f64>) {
    let n = 8;
    let labels: Vec<String> =
        ["1", "u", "y1", "z1", "y2", "z2", "y3", "z3"].iter().map(|s| s.to_string()).collect();
    let mut c = vec![0.0; n * n * n];
    c[0] = 1.0;
    for j in 1..n {
        c[j * n + j] = 1.0;
        c[(j * n) * n + j] = 1.0;
    }
    for v in 1..n {
        c[(v * n + v) * n] = -1.0;
    }
    (n, labels, c)
}

fn set_wedge(c: &mut [f64], n: usize, i: usize, j: usize, terms: &[(f64, usize)]) {
    for &(coeff, k) in terms {
        c[(i * n + j) * n + k] += coeff;
        c[(j * n + i) * n + k] -= coeff;
    }
}

/// The sixteen-parameter eight-dimensional table on the basis
/// `{1, u, y1, z1, y2, z2, y3, z3}`; every algebra it produces is a
/// noncommutative Jordan algebra.
pub fn table1(p: &Table1Params) -> Result<Algebra> {
    p.validate()?;
    let (n, labels, mut c) = table_skeleton();
    let (u, y1, z1, y2, z2, y3, z3) = (1, 2, 3, 4, 5, 6, 7);
    let t = p;
    set_wedge(&mut c, n, u, y1, &[(t.a, z1)]);
    set_wedge(&mut c, n, u, z1, &[(-t.a, y1)]);
    set_wedge(&mut c, n, u, y2, &[(t.b, z2)]);
    set_wedge(&mut c, n, u, z2, &[(-t.b, y2)]);
    set_wedge(&mut c, n, u, y3, &[(t.c, z3)]);
    set_wedge(&mut c, n, u, z3, &[(-t.c, y3)]);
    set_wedge(&mut c, n, y1, z1, &[(t.a, u)]);
    set_wedge(&mut c, n, y1, y2, &[(t.alpha, y3), (t.beta, z3)]);
    set_wedge(&mut c, n, y1, z2, &[(t.gamma, y3), (t.mu, z3)]);
    set_wedge(&mut c, n, y1, y3, &[(-t.alpha, y2), (-t.gamma, z2), (t.nu, z3)]);
    set_wedge(&mut c, n, y1, z3, &[(-t.beta, y2), (-t.mu, z2), (-t.nu, y3)]);
    set_wedge(&mut c, n, z1, y2, &[(t.pi, z2), (t.lambda, y3), (t.eta, z3)]);
    set_wedge(&mut c, n, z1, z2, &[(-t.pi, y2), (t.sigma, y3), (t.delta, z3)]);
    set_wedge(&mut c, n, z1, y3, &[(-t.lambda, y2), (-t.sigma, z2), (t.rho, z3)]);
    set_wedge(&mut c, n, z1, z3, &[(-t.eta, y2), (-t.delta, z2), (-t.rho, y3)]);
    set_wedge(&mut c, n, y2, z2, &[(t.b, u), (t.pi, z1), (t.theta, z3)]);
    set_wedge(&mut c, n, y2, y3, &[(t.alpha, y1), (t.lambda, z1)]);
    set_wedge(&mut c, n, y2, z3, &[(t.beta, y1), (t.eta, z1), (-t.theta, z2)]);
    set_wedge(&mut c, n, z2, y3, &[(t.gamma, y1), (t.sigma, z1), (t.omega, z3)]);
    set_wedge(&mut c, n, z2, z3, &[(t.mu, y1), (t.delta, z1), (t.theta, y2), (-t.omega, y3)]);
    set_wedge(&mut c, n, y3, z3, &[(t.c, u), (t.nu, y1), (t.rho, z1), (t.omega, z2)]);
    let alg = Algebra::new(n, labels, c, DEFAULT_TOL)?;
    Ok(alg.with_provenance(format!(
        "table1({},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{})",
        t.a, t.b, t.c, t.alpha, t.beta, t.gamma, t.mu, t.lambda, t.eta, t.sigma, t.delta, t.nu,
        t.pi, t.rho, t.theta, t.omega
    )))
}

/// Four-parameter family carrying a rank-6 derivation; a specialization of
/// the sixteen-parameter table. Requires `a, b, c, alpha > 0`.
pub fn table4(a: f64, b: f64, c: f64, alpha: f64) -> Result<Algebra> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidParameter("alpha must be positive".into()));
    }
    let p = Table1Params {
        a,
        b,
        c,
        alpha,
        beta: 0.0,
        gamma: 0.0,
        mu: -alpha,
        lambda: 0.0,
        eta: -alpha,
        sigma: -alpha,
        delta: 0.0,
        nu: 0.0,
        pi: 0.0,
        rho: 0.0,
        theta: 0.0,
        omega: 0.0,
    };
    Ok(table1(&p)?.with_provenance(format!("table4({a},{b},{c},{alpha})")))
}

/// Seven-parameter family with a nontrivial derivation; linear division
/// exactly when `eta < 0` and `b rho^2 < 4 c eta^2`.
pub fn table5(a: f64, b: f64, c: f64, alpha: f64, eta: f64, lambda: f64, rho: f64) -> Result<Algebra> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidParameter("alpha must be positive".into()));
    }
    let p = Table1Params {
        a,
        b,
        c,
        alpha,
        beta: 0.0,
        gamma: 0.0,
        mu: -alpha,
        lambda,
        eta,
        sigma: eta,
        delta: -lambda,
        nu: 0.0,
        pi: 0.0,
        rho,
        theta: 0.0,
        omega: 0.0,
    };
    Ok(table1(&p)?.with_provenance(format!("table5({a},{b},{c},{alpha},{eta},{lambda},{rho})")))
}

/// Five-parameter family separating algebras with nontrivial automorphisms
/// from those with derivations; linear division exactly when `alpha mu < 0`.
pub fn table7(a: f64, b: f64, c: f64, alpha: f64, mu: f64) -> Result<Algebra> {
    let p = Table1Params {
        a,
        b,
        c,
        alpha,
        beta: 0.0,
        gamma: 0.0,
        mu,
        lambda: 0.0,
        eta: mu,
        sigma: mu,
        delta: 0.0,
        nu: 0.0,
        pi: 0.0,
        rho: 0.0,
        theta: 0.0,
        omega: 0.0,
    };
    Ok(table1(&p)?.with_provenance(format!("table7({a},{b},{c},{alpha},{mu})")))
}

/// Four-dimensional quadratic algebra on `{1, x, y, z}` with negative
/// definite form and wedge relations
/// `y^z = x`, `z^x = alpha y + beta z`, `x^y = gamma z`.
pub fn osborn4(alpha: f64, beta: f64, gamma: f64) -> Result<Algebra> {
    if alpha == 0.0 || gamma == 0.0 {
        return Err(Error::InvalidParameter("alpha and gamma must be nonzero".into()));
    }
    if beta != 0.0 && beta != 1.0 {
        return Err(Error::InvalidParameter("beta must be 0 or 1".into()));
    }
    let v = 3;
    let mut wedge = vec![0.0; v * v * v];
    let mut set = |p: usize, q: usize, terms: &[(f64, usize)]| {
        for &(coeff, k) in terms {
            wedge[(p * v + q) * v + k] += coeff;
            wedge[(q * v + p) * v + k] -= coeff;
        }
    };
    // x = 0, y = 1, z = 2
    set(1, 2, &[(1.0, 0)]);
    set(2, 0, &[(alpha, 1), (beta, 2)]);
    set(0, 1, &[(gamma, 2)]);
    let q = QuadraticStructure::new(v, -DMatrix::<f64>::identity(v, v), wedge)?;
    let alg = build_quadratic(&q)?;
    let labels = vec!["1".into(), "x".into(), "y".into(), "z".into()];
    let alg = Algebra::new(4, labels, alg.tensor().to_vec(), DEFAULT_TOL)?;
    Ok(alg.with_provenance(format!("osborn4({alpha},{beta},{gamma})")))
}

/// The orthonormal frame used by the trivial-automorphism construction:
/// a rotated basis of the octonion vector space in which no coordinate
/// 3-plane is closed under the cross product.
pub fn rotated_vector_frame() -> DMatrix<f64> {
    let raw: [[f64; 7]; 7] = [
        [1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, -1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 1.0, -1.0],
    ];
    let mut m = DMatrix::zeros(7, 7);
    for (j, row) in raw.iter().enumerate() {
        let col = DVector::from_row_slice(row);
        let col = &col / col.norm();
        m.set_column(j, &col);
    }
    m
}

/// Symmetric positive definite map with the given eigenvalues on the columns
/// of `frame`.
pub fn symmetric_from_spectrum(frame: &DMatrix<f64>, eigenvalues: &[f64]) -> Result<LinearMap> {
    let n = frame.nrows();
    if eigenvalues.len() != n || frame.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, got: eigenvalues.len() });
    }
    if eigenvalues.iter().any(|l| *l <= 0.0 || !l.is_finite()) {
        return Err(Error::InvalidParameter("eigenvalues must be positive".into()));
    }
    let mut s = DMatrix::zeros(n, n);
    for (i, lam) in eigenvalues.iter().enumerate() {
        let v: DVector<f64> = frame.column(i).into();
        s += *lam * &v * v.transpose();
    }
    Ok(s)
}
