//! Structure-constant algebras, multiplication operators and identity checks.

use crate::constructions::{self, QuadraticStructure};
use crate::linalg;
use crate::rng;
use crate::{Error, Result, DEFAULT_TOL};
use nalgebra::{DMatrix, DVector};
use std::fmt;
use std::str::FromStr;

/// Coefficient vector of an element in the basis of some [`Algebra`].
pub type Element = DVector<f64>;

/// Dense square matrix acting on the underlying space of an [`Algebra`]
/// (multiplication operators, isotopy maps, derivations, automorphism
/// candidates).
pub type LinearMap = DMatrix<f64>;

/// A finite-dimensional real algebra given by its multiplication table
/// `e_i e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug)]
pub struct Algebra {
    dim: usize,
    basis_labels: Vec<String>,
    /// Row-major rank-3 tensor, index `(i * dim + j) * dim + k`.
    c: Vec<f64>,
    tolerance: f64,
    provenance: Option<String>,
    /// Vector-isotopy map attached by `constructions::vector_isotope`, kept
    /// so that classification can read off the isotopy spectrum.
    isotopy: Option<DMatrix<f64>>,
}

impl Algebra {
    pub fn new(dim: usize, basis_labels: Vec<String>, c: Vec<f64>, tolerance: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dim must be >= 1".into()));
        }
        if basis_labels.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: basis_labels.len() });
        }
        if c.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, got: c.len() });
        }
        if !c.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidParameter("structure constants must be finite".into()));
        }
        if !tolerance.is_finite() || tolerance <= 0.0 {
            return Err(Error::InvalidParameter("tolerance must be positive".into()));
        }
        Ok(Algebra { dim, basis_labels, c, tolerance, provenance: None, isotopy: None })
    }

    /// Builds the tensor from a closure `f(i, j, k)`.
    pub fn from_fn<F: FnMut(usize, usize, usize) -> f64>(
        dim: usize,
        basis_labels: Vec<String>,
        mut f: F,
    ) -> Result<Self> {
        let mut c = vec![0.0; dim * dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    c[(i * dim + j) * dim + k] = f(i, j, k);
                }
            }
        }
        Algebra::new(dim, basis_labels, c, DEFAULT_TOL)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn set_tolerance(&mut self, tol: f64) {
        self.tolerance = tol;
    }

    pub fn provenance(&self) -> Option<&str> {
        self.provenance.as_deref()
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = Some(p.into());
        self
    }

    pub fn isotopy_map(&self) -> Option<&DMatrix<f64>> {
        self.isotopy.as_ref()
    }

    pub(crate) fn set_isotopy_map(&mut self, phi: DMatrix<f64>) {
        self.isotopy = Some(phi);
    }

    /// Structure constant `c_{ijk}`, the `e_k` coefficient of `e_i e_j`.
    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn tensor(&self) -> &[f64] {
        &self.c
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut v = DVector::zeros(self.dim);
        v[i] = 1.0;
        v
    }

    /// Index of the basis label, if present.
    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.basis_labels.iter().position(|l| l == label)
    }

    fn check_len(&self, v: &Element) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: v.len() });
        }
        Ok(())
    }

    /// Product of two elements.
    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &Element, b: &Element) -> Element {
        let n = self.dim;
        let mut out = DVector::zeros(n);
        for i in 0..n {
            let ai = a[i];
            if ai == 0.0 {
                continue;
            }
            for j in 0..n {
                let s = ai * b[j];
                if s == 0.0 {
                    continue;
                }
                let base = (i * n + j) * n;
                for k in 0..n {
                    out[k] += s * self.c[base + k];
                }
            }
        }
        out
    }

    /// Product of two basis elements.
    pub fn mul_basis(&self, i: usize, j: usize) -> Element {
        let n = self.dim;
        DVector::from_fn(n, |k, _| self.c[(i * n + j) * n + k])
    }

    /// Left multiplication operator `L_x : y -> xy`; columns are `x e_j`.
    pub fn left_op(&self, x: &Element) -> LinearMap {
        let n = self.dim;
        let mut m = DMatrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                let xi = x[i];
                if xi == 0.0 {
                    continue;
                }
                let base = (i * n + j) * n;
                for k in 0..n {
                    m[(k, j)] += xi * self.c[base + k];
                }
            }
        }
        m
    }

    /// Right multiplication operator `R_x : y -> yx`; columns are `e_j x`.
    pub fn right_op(&self, x: &Element) -> LinearMap {
        let n = self.dim;
        let mut m = DMatrix::zeros(n, n);
        for j in 0..n {
            for i in 0..n {
                let xi = x[i];
                if xi == 0.0 {
                    continue;
                }
                let base = (j * n + i) * n;
                for k in 0..n {
                    m[(k, j)] += xi * self.c[base + k];
                }
            }
        }
        m
    }

    /// Commutator `[x, y] = xy - yx`.
    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element> {
        Ok(self.mul(x, y)? - self.mul(y, x)?)
    }

    /// Associator `(x, y, z) = (xy)z - x(yz)`.
    pub fn associator(&self, x: &Element, y: &Element, z: &Element) -> Result<Element> {
        let xy = self.mul(x, y)?;
        let yz = self.mul(y, z)?;
        Ok(self.mul_unchecked(&xy, z) - self.mul_unchecked(x, &yz))
    }

    /// Left powers: `x^1 = x`, `x^{n+1} = x * x^n`.
    pub fn left_power(&self, x: &Element, n: u32) -> Result<Element> {
        self.check_len(x)?;
        let mut p = x.clone();
        for _ in 1..n {
            p = self.mul_unchecked(x, &p);
        }
        Ok(p)
    }

    /// The operator `U_x = L_x (L_x + R_x) - L_{x^2}`.
    pub fn u_operator(&self, x: &Element) -> Result<LinearMap> {
        self.check_len(x)?;
        let l = self.left_op(x);
        let r = self.right_op(x);
        let x2 = self.mul_unchecked(x, x);
        let lx2 = self.left_op(&x2);
        Ok(&l * (&l + &r) - lx2)
    }

    /// The mirrored form `R_x (L_x + R_x) - R_{x^2}`; coincides with
    /// [`Algebra::u_operator`] on flexible algebras.
    pub fn u_operator_right(&self, x: &Element) -> Result<LinearMap> {
        self.check_len(x)?;
        let l = self.left_op(x);
        let r = self.right_op(x);
        let x2 = self.mul_unchecked(x, x);
        let rx2 = self.right_op(&x2);
        Ok(&r * (&l + &r) - rx2)
    }

    /// The unique two-sided unit, if the linear system `L_e = R_e = I`
    /// has a solution within tolerance.
    pub fn find_unit(&self) -> Option<Element> {
        let n = self.dim;
        // Unknown e; rows: L_e = I gives sum_i e_i c[i][j][k] = delta_jk,
        // R_e = I gives sum_j e_j c[i][j][k] = delta_ik.
        let mut m = DMatrix::zeros(2 * n * n, n);
        let mut b = DVector::zeros(2 * n * n);
        let mut row = 0;
        for j in 0..n {
            for k in 0..n {
                for i in 0..n {
                    m[(row, i)] = self.c(i, j, k);
                }
                b[row] = if j == k { 1.0 } else { 0.0 };
                row += 1;
            }
        }
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    m[(row, j)] = self.c(i, j, k);
                }
                b[row] = if i == k { 1.0 } else { 0.0 };
                row += 1;
            }
        }
        let (e, res) = linalg::lstsq(&m, &b);
        if res < self.tolerance * self.dim as f64 {
            Some(e)
        } else {
            None
        }
    }

    pub fn is_unital(&self) -> bool {
        self.find_unit().is_some()
    }

    /// Orthonormal basis (columns) of the smallest product-closed subspace
    /// containing the given elements.
    pub fn generated_subalgebra(&self, generators: &[Element]) -> Result<DMatrix<f64>> {
        if generators.is_empty() {
            return Err(Error::InvalidParameter("generator set must be nonempty".into()));
        }
        for g in generators {
            self.check_len(g)?;
        }
        let n = self.dim;
        let mut span = DMatrix::zeros(n, generators.len());
        for (j, g) in generators.iter().enumerate() {
            span.set_column(j, g);
        }
        let mut basis = linalg::column_space(&span, self.tolerance);
        loop {
            let k = basis.ncols();
            if k == 0 || k == n {
                return Ok(basis);
            }
            let mut ext = DMatrix::zeros(n, k + k * k);
            ext.view_mut((0, 0), (n, k)).copy_from(&basis);
            let mut col = k;
            for a in 0..k {
                for b in 0..k {
                    let p = self.mul_unchecked(&basis.column(a).into(), &basis.column(b).into());
                    ext.set_column(col, &p);
                    col += 1;
                }
            }
            let next = linalg::column_space(&ext, self.tolerance);
            if next.ncols() == k {
                return Ok(next);
            }
            basis = next;
        }
    }

    /// Jacobson invertibility: `U_x` computed in the symmetrization `A^+`
    /// is invertible. Requires a unit.
    pub fn j_invertible(&self, x: &Element) -> Result<bool> {
        self.check_len(x)?;
        if !self.is_unital() {
            return Err(Error::NotUnital);
        }
        let plus = constructions::mutation(self, 0.5);
        let u = plus.u_operator(x)?;
        Ok(linalg::inv_condition(&u) > self.tolerance)
    }

    /// Tensors agree entrywise within `tol`.
    pub fn entrywise_eq(&self, other: &Algebra, tol: f64) -> bool {
        self.dim == other.dim
            && self
                .c
                .iter()
                .zip(other.c.iter())
                .all(|(a, b)| (a - b).abs() <= tol)
    }

    /// Largest entrywise difference between the two tensors.
    pub fn entrywise_distance(&self, other: &Algebra) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.c
            .iter()
            .zip(other.c.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Fits `x^2 = t(x) x - n(x) 1` on the basis, verifies it on seeded
    /// samples and returns the `(V, (.,.), wedge)` presentation.
    pub fn extract_quadratic_structure(&self) -> Result<ExtractedQuadratic> {
        extract_quadratic(self)
    }

    /// The same algebra expressed on the basis given by the columns of
    /// `cols`: the new tensor satisfies `m'(e_i, e_j) = C^{-1} m(C e_i, C e_j)`.
    pub fn change_of_basis(&self, cols: &DMatrix<f64>) -> Result<Algebra> {
        let n = self.dim;
        if cols.nrows() != n || cols.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, got: cols.nrows() });
        }
        let inv = cols.clone().try_inverse().ok_or(Error::SingularMap)?;
        let mut c = vec![0.0; n * n * n];
        for i in 0..n {
            for j in 0..n {
                let p = &inv * self.mul_unchecked(&cols.column(i).into(), &cols.column(j).into());
                for k in 0..n {
                    c[(i * n + j) * n + k] = p[k];
                }
            }
        }
        let labels = (0..n).map(|i| format!("b{i}")).collect();
        let mut out = Algebra::new(n, labels, c, self.tolerance)?;
        out.provenance = self.provenance.clone();
        Ok(out)
    }

    /// Verifies `F(xy) = F(x) F(y)` on all basis pairs within tolerance.
    pub fn is_automorphism_matrix(&self, f: &LinearMap) -> bool {
        homomorphism_residual(self, self, f) <= self.tolerance
    }
}

/// Maximal residual of `F(e_i e_j) - F(e_i) F(e_j)` over all basis pairs,
/// products on the left taken in `a` and on the right in `b`.
pub fn homomorphism_residual(a: &Algebra, b: &Algebra, f: &LinearMap) -> f64 {
    let n = a.dim();
    if f.nrows() != n || f.ncols() != n || b.dim() != n {
        return f64::INFINITY;
    }
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let lhs = f * a.mul_basis(i, j);
            let rhs = b.mul_unchecked(&f.column(i).into(), &f.column(j).into());
            worst = worst.max((lhs - rhs).norm());
        }
    }
    worst
}

/// Named polynomial identities decidable by the checker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    Associative,
    Commutative,
    Anticommutative,
    Flexible,
    Alternative,
    Jordan,
    NcJordan,
    PowerAssociative,
    WeaklyAlternative,
    MoufangLeft,
    MoufangRight,
    MoufangMiddle,
}

impl Identity {
    pub const ALL: [Identity; 12] = [
        Identity::Associative,
        Identity::Commutative,
        Identity::Anticommutative,
        Identity::Flexible,
        Identity::Alternative,
        Identity::Jordan,
        Identity::NcJordan,
        Identity::PowerAssociative,
        Identity::WeaklyAlternative,
        Identity::MoufangLeft,
        Identity::MoufangRight,
        Identity::MoufangMiddle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Identity::Associative => "associative",
            Identity::Commutative => "commutative",
            Identity::Anticommutative => "anticommutative",
            Identity::Flexible => "flexible",
            Identity::Alternative => "alternative",
            Identity::Jordan => "jordan",
            Identity::NcJordan => "nc_jordan",
            Identity::PowerAssociative => "power_associative",
            Identity::WeaklyAlternative => "weakly_alternative",
            Identity::MoufangLeft => "moufang_left",
            Identity::MoufangRight => "moufang_right",
            Identity::MoufangMiddle => "moufang_middle",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .iter()
            .copied()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

/// Outcome of an identity check: either the identity holds on every probe,
/// or a witness tuple with its residual is reported.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub identity: Identity,
    pub holds: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug)]
pub struct Witness {
    pub args: Vec<Element>,
    pub residual: f64,
}

fn note_witness(worst: &mut Option<Witness>, args: Vec<Element>, residual: f64) {
    if worst.is_none() {
        *worst = Some(Witness { args, residual });
    }
}

impl Algebra {
    /// Checks a named identity. Multilinear identities (and the full
    /// linearizations of flexible/alternative) are decided exactly on basis
    /// tuples; identities that are nonlinear in a variable are probed on
    /// basis tuples plus `samples` seeded random tuples.
    pub fn check_identity(
        &self,
        which: Identity,
        samples: usize,
        seed: u64,
    ) -> Result<IdentityReport> {
        if samples < 1 {
            return Err(Error::InvalidParameter("samples must be >= 1".into()));
        }
        if which == Identity::NcJordan {
            let fl = self.check_identity(Identity::Flexible, samples, seed)?;
            if !fl.holds {
                return Ok(IdentityReport { identity: which, holds: false, witness: fl.witness });
            }
            let jo = self.check_identity(Identity::Jordan, samples, seed)?;
            return Ok(IdentityReport { identity: which, holds: jo.holds, witness: jo.witness });
        }
        let tol = self.tolerance;
        let mut worst: Option<Witness> = None;

        match which {
            Identity::Associative => {
                'outer: for i in 0..self.dim {
                    for j in 0..self.dim {
                        for k in 0..self.dim {
                            let (x, y, z) =
                                (self.basis_element(i), self.basis_element(j), self.basis_element(k));
                            let r = self.associator(&x, &y, &z)?.norm();
                            if r > tol {
                                note_witness(&mut worst, vec![x, y, z], r);
                                break 'outer;
                            }
                        }
                    }
                }
            }
            Identity::Commutative | Identity::Anticommutative => {
                let sign = if which == Identity::Commutative { -1.0 } else { 1.0 };
                'outer: for i in 0..self.dim {
                    for j in 0..self.dim {
                        let (x, y) = (self.basis_element(i), self.basis_element(j));
                        let r = (self.mul_basis(i, j) + sign * self.mul_basis(j, i)).norm();
                        if r > tol {
                            note_witness(&mut worst, vec![x, y], r);
                            break 'outer;
                        }
                    }
                }
            }
            Identity::Flexible => {
                // (x, y, x) = 0; basis pairs first for a plain witness, then
                // the linearization (x,y,z) + (z,y,x) = 0 which is exact.
                'outer: for i in 0..self.dim {
                    for j in 0..self.dim {
                        let (x, y) = (self.basis_element(i), self.basis_element(j));
                        let r = self.associator(&x, &y, &x)?.norm();
                        if r > tol {
                            note_witness(&mut worst, vec![x.clone(), y, x], r);
                            break 'outer;
                        }
                    }
                }
                if worst.is_none() {
                    'lin: for i in 0..self.dim {
                        for j in 0..self.dim {
                            for k in 0..self.dim {
                                let (x, y, z) = (
                                    self.basis_element(i),
                                    self.basis_element(j),
                                    self.basis_element(k),
                                );
                                let r = (self.associator(&x, &y, &z)?
                                    + self.associator(&z, &y, &x)?)
                                .norm();
                                if r > tol {
                                    note_witness(&mut worst, vec![x, y, z], r);
                                    break 'lin;
                                }
                            }
                        }
                    }
                }
            }
            Identity::Alternative => {
                'outer: for i in 0..self.dim {
                    for j in 0..self.dim {
                        let (x, y) = (self.basis_element(i), self.basis_element(j));
                        let rl = self.associator(&x, &x, &y)?.norm();
                        let rr = self.associator(&y, &x, &x)?.norm();
                        let r = rl.max(rr);
                        if r > tol {
                            note_witness(&mut worst, vec![x, y], r);
                            break 'outer;
                        }
                    }
                }
                if worst.is_none() {
                    // linearizations (x,y,z)+(y,x,z) and (x,y,z)+(x,z,y)
                    'lin: for i in 0..self.dim {
                        for j in 0..self.dim {
                            for k in 0..self.dim {
                                let (x, y, z) = (
                                    self.basis_element(i),
                                    self.basis_element(j),
                                    self.basis_element(k),
                                );
                                let a = self.associator(&x, &y, &z)?;
                                let rl = (&a + self.associator(&y, &x, &z)?).norm();
                                let rr = (&a + self.associator(&x, &z, &y)?).norm();
                                let r = rl.max(rr);
                                if r > tol {
                                    note_witness(&mut worst, vec![x, y, z], r);
                                    break 'lin;
                                }
                            }
                        }
                    }
                }
            }
            Identity::Jordan => {
                self.sampled_check2(samples, seed, &mut worst, |alg, x, y| {
                    let x2 = alg.mul_unchecked(x, x);
                    let xy2 = alg.mul_unchecked(&x2, y);
                    Ok((alg.mul_unchecked(&xy2, x) - alg.mul_unchecked(&x2, &alg.mul_unchecked(y, x))).norm())
                })?;
            }
            Identity::PowerAssociative => {
                for i in 0..self.dim {
                    let x = self.basis_element(i);
                    let r = self.power_assoc_residual(&x)?;
                    if r > tol {
                        note_witness(&mut worst, vec![x], r);
                        break;
                    }
                }
                if worst.is_none() {
                    let mut rng = rng::rng_from_seed(seed);
                    for _ in 0..samples {
                        let x = rng::unit_vector(&mut rng, self.dim);
                        let r = self.power_assoc_residual(&x)?;
                        if r > tol {
                            note_witness(&mut worst, vec![x], r);
                            break;
                        }
                    }
                }
            }
            Identity::WeaklyAlternative => {
                self.sampled_check2(samples, seed, &mut worst, |alg, x, y| {
                    let com = alg.mul_unchecked(x, y) - alg.mul_unchecked(y, x);
                    Ok(alg.associator(x, x, &com)?.norm())
                })?;
            }
            Identity::MoufangLeft => {
                self.sampled_check3(samples, seed, &mut worst, |alg, x, y, z| {
                    let xz = alg.mul_unchecked(x, z);
                    let lhs = alg.mul_unchecked(x, &alg.mul_unchecked(y, &xz));
                    let xyx = alg.mul_unchecked(&alg.mul_unchecked(x, y), x);
                    Ok((lhs - alg.mul_unchecked(&xyx, z)).norm())
                })?;
            }
            Identity::MoufangRight => {
                self.sampled_check3(samples, seed, &mut worst, |alg, x, y, z| {
                    let zx = alg.mul_unchecked(z, x);
                    let lhs = alg.mul_unchecked(&alg.mul_unchecked(&zx, y), x);
                    let xyx = alg.mul_unchecked(&alg.mul_unchecked(x, y), x);
                    Ok((lhs - alg.mul_unchecked(z, &xyx)).norm())
                })?;
            }
            Identity::MoufangMiddle => {
                self.sampled_check3(samples, seed, &mut worst, |alg, x, y, z| {
                    let yz = alg.mul_unchecked(y, z);
                    let lhs = alg.mul_unchecked(&alg.mul_unchecked(x, &yz), x);
                    let rhs = alg.mul_unchecked(&alg.mul_unchecked(x, y), &alg.mul_unchecked(z, x));
                    Ok((lhs - rhs).norm())
                })?;
            }
            Identity::NcJordan => unreachable!(),
        }

        Ok(IdentityReport { identity: which, holds: worst.is_none(), witness: worst })
    }

    /// Albert residual `max(|(x,x,x)|, |(x,x,x^2)|)`.
    fn power_assoc_residual(&self, x: &Element) -> Result<f64> {
        let x2 = self.mul_unchecked(x, x);
        let r1 = self.associator(x, x, x)?.norm();
        let r2 = self.associator(x, x, &x2)?.norm();
        Ok(r1.max(r2))
    }

    fn sampled_check2<F>(
        &self,
        samples: usize,
        seed: u64,
        worst: &mut Option<Witness>,
        f: F,
    ) -> Result<()>
    where
        F: Fn(&Algebra, &Element, &Element) -> Result<f64>,
    {
        let tol = self.tolerance;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let (x, y) = (self.basis_element(i), self.basis_element(j));
                let r = f(self, &x, &y)?;
                if r > tol {
                    note_witness(worst, vec![x, y], r);
                    return Ok(());
                }
            }
        }
        let mut rng = rng::rng_from_seed(seed);
        for _ in 0..samples {
            let x = rng::unit_vector(&mut rng, self.dim);
            let y = rng::unit_vector(&mut rng, self.dim);
            let r = f(self, &x, &y)?;
            if r > tol {
                note_witness(worst, vec![x, y], r);
                return Ok(());
            }
        }
        Ok(())
    }

    fn sampled_check3<F>(
        &self,
        samples: usize,
        seed: u64,
        worst: &mut Option<Witness>,
        f: F,
    ) -> Result<()>
    where
        F: Fn(&Algebra, &Element, &Element, &Element) -> Result<f64>,
    {
        let tol = self.tolerance;
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let (x, y, z) =
                        (self.basis_element(i), self.basis_element(j), self.basis_element(k));
                    let r = f(self, &x, &y, &z)?;
                    if r > tol {
                        note_witness(worst, vec![x, y, z], r);
                        return Ok(());
                    }
                }
            }
        }
        let mut rng = rng::rng_from_seed(seed);
        for _ in 0..samples {
            let x = rng::unit_vector(&mut rng, self.dim);
            let y = rng::unit_vector(&mut rng, self.dim);
            let z = rng::unit_vector(&mut rng, self.dim);
            let r = f(self, &x, &y, &z)?;
            if r > tol {
                note_witness(worst, vec![x, y, z], r);
                return Ok(());
            }
        }
        Ok(())
    }
}

/// Result of [`Algebra::extract_quadratic_structure`]: the scalar/vector
/// splitting together with the data needed to map back into the original
/// coordinates.
#[derive(Clone, Debug)]
pub struct ExtractedQuadratic {
    pub structure: QuadraticStructure,
    /// Unit element in the original coordinates.
    pub unit: Element,
    /// Columns are the vector-part basis in the original coordinates.
    pub vbasis: DMatrix<f64>,
    /// The fitted linear trace form `t`.
    pub trace_form: DVector<f64>,
}

fn extract_quadratic(a: &Algebra) -> Result<ExtractedQuadratic> {
    let n = a.dim();
    let unit = a.find_unit().ok_or(Error::NotUnital)?;
    if n == 1 {
        return Ok(ExtractedQuadratic {
            structure: QuadraticStructure::new(0, DMatrix::zeros(0, 0), vec![])?,
            unit,
            vbasis: DMatrix::zeros(1, 0),
            trace_form: DVector::from_element(1, 2.0),
        });
    }
    let tol = a.tolerance();

    // Fit t (n unknowns) and symmetric N (n(n+1)/2 unknowns) from
    // x^2 = t(x) x - n(x) 1 on the basis and on pair sums.
    let nsym = n * (n + 1) / 2;
    let sym_index = |p: usize, q: usize| -> usize {
        let (p, q) = if p <= q { (p, q) } else { (q, p) };
        p * n - p * (p + 1) / 2 + q
    };
    let mut probes: Vec<Element> = Vec::new();
    for i in 0..n {
        probes.push(a.basis_element(i));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            probes.push(a.basis_element(i) + a.basis_element(j));
        }
    }
    let rows = probes.len() * n;
    let mut m = DMatrix::zeros(rows, n + nsym);
    let mut b = DVector::zeros(rows);
    for (pi, x) in probes.iter().enumerate() {
        let x2 = a.mul_unchecked(x, x);
        for k in 0..n {
            let row = pi * n + k;
            for i in 0..n {
                m[(row, i)] = x[i] * x[k];
            }
            for p in 0..n {
                for q in p..n {
                    let coeff = if p == q { x[p] * x[p] } else { 2.0 * x[p] * x[q] };
                    m[(row, n + sym_index(p, q))] -= coeff * unit[k];
                }
            }
            b[row] = x2[k];
        }
    }
    let (sol, _res) = linalg::lstsq(&m, &b);
    let t = DVector::from_fn(n, |i, _| sol[i]);
    let nform = DMatrix::from_fn(n, n, |p, q| sol[n + sym_index(p, q)]);

    // Verify the fitted relation on seeded random samples.
    let mut rng = rng::rng_from_seed(crate::DEFAULT_SEED);
    for _ in 0..25 {
        let x = rng::unit_vector(&mut rng, n);
        let x2 = a.mul_unchecked(&x, &x);
        let tx = t.dot(&x);
        let nx = (x.transpose() * &nform * &x)[(0, 0)];
        let res = (&x2 - tx * &x + nx * &unit).norm();
        if res > tol * (1.0 + x2.norm()) * 100.0 {
            return Err(Error::NotQuadratic(format!(
                "relation x^2 = t(x) x - n(x) 1 fails with residual {res:.3e}"
            )));
        }
    }

    // V = ker t; prefer the original basis directions.
    let tnorm2 = t.norm_squared();
    if tnorm2 < tol {
        return Err(Error::NotQuadratic("trace form vanishes".into()));
    }
    let mut proj = DMatrix::zeros(n, n);
    for i in 0..n {
        let e = a.basis_element(i);
        let coeff = t.dot(&e) / tnorm2;
        proj.set_column(i, &(e - coeff * &t));
    }
    let vbasis = linalg::gram_schmidt(&proj, 1e-7);
    if vbasis.ncols() != n - 1 {
        return Err(Error::NotQuadratic(format!(
            "kernel of t has dimension {} instead of {}",
            vbasis.ncols(),
            n - 1
        )));
    }

    // t(1) = 2 in the quadratic presentation.
    let t_of_unit = t.dot(&unit);
    if (t_of_unit - 2.0).abs() > 1e-6 {
        return Err(Error::NotQuadratic(format!("t(1) = {t_of_unit}, expected 2")));
    }

    let vdim = n - 1;
    let mut form = DMatrix::zeros(vdim, vdim);
    let mut wedge = vec![0.0; vdim * vdim * vdim];
    for p in 0..vdim {
        for q in 0..vdim {
            let prod = a.mul_unchecked(&vbasis.column(p).into(), &vbasis.column(q).into());
            let s = t.dot(&prod) / 2.0;
            let w = &prod - s * &unit;
            form[(p, q)] = s;
            let mut covered = s * &unit;
            for k in 0..vdim {
                let coeff = vbasis.column(k).dot(&w);
                wedge[(p * vdim + q) * vdim + k] = coeff;
                covered += coeff * vbasis.column(k);
            }
            if (prod - covered).norm() > tol * 100.0 {
                return Err(Error::NotQuadratic(
                    "vector product leaves the scalar-plus-vector span".into(),
                ));
            }
        }
    }

    Ok(ExtractedQuadratic {
        structure: QuadraticStructure::new(vdim, form, wedge)?,
        unit,
        vbasis,
        trace_form: t,
    })
}
