//! Small dense linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};

/// Smallest singular value.
pub fn sigma_min(m: &DMatrix<f64>) -> f64 {
    m.clone().svd(false, false).singular_values.min()
}


/// `(sigma_min, right singular vector achieving it)`.
pub fn sigma_min_vector(m: &DMatrix<f64>) -> (f64, DVector<f64>) {
    let svd = m.clone().svd(false, true);
    let sv = &svd.singular_values;
    let mut imin = 0;
    for i in 1..sv.len() {
        if sv[i] < sv[imin] {
            imin = i;
        }
    }
    let vt = svd.v_t.expect("svd requested v_t");
    (sv[imin], vt.row(imin).transpose())
}

/// Orthonormal basis of the nullspace, columns are the basis vectors.
/// A singular value is treated as zero when `sigma < tol_rank * sigma_max`.
/// Also returns the full list of singular values (descending).
pub fn nullspace(m: &DMatrix<f64>, tol_rank: f64) -> (DMatrix<f64>, Vec<f64>) {
    let ncols = m.ncols();
    // The economy SVD only yields min(rows, cols) right singular vectors;
    // pad wide matrices with zero rows so v_t spans the whole domain.
    let work = if m.nrows() < ncols {
        let mut padded = DMatrix::zeros(ncols, ncols);
        padded.view_mut((0, 0), (m.nrows(), ncols)).copy_from(m);
        padded
    } else {
        m.clone()
    };
    let svd = work.svd(false, true);
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let smax = sv.first().copied().unwrap_or(0.0);
    let vt = svd.v_t.expect("svd requested v_t");
    let mut cols: Vec<DVector<f64>> = Vec::new();
    for i in 0..svd.singular_values.len() {
        if svd.singular_values[i] < tol_rank * smax.max(1e-300) {
            cols.push(vt.row(i).transpose());
        }
    }
    let k = cols.len();
    let mut out = DMatrix::zeros(ncols, k);
    for (j, c) in cols.iter().enumerate() {
        out.set_column(j, c);
    }
    (out, sv)
}

/// Least-squares solution of `m x = b`, together with the residual norm.
/// QR when the system has full column rank, SVD otherwise.
pub fn lstsq(m: &DMatrix<f64>, b: &DVector<f64>) -> (DVector<f64>, f64) {
    let qr = m.clone().qr();
    let r = qr.r();
    let diag_max = (0..r.nrows().min(r.ncols()))
        .map(|i| r[(i, i)].abs())
        .fold(0.0, f64::max);
    let full_rank = (0..r.ncols().min(r.nrows()))
        .all(|i| r[(i, i)].abs() > 1e-12 * diag_max.max(1e-300))
        && r.nrows() >= r.ncols();
    if full_rank {
        let rhs = qr.q().transpose() * b;
        if let Some(x) = r.solve_upper_triangular(&rhs) {
            let res = (m * &x - b).norm();
            return (x, res);
        }
    }
    let svd = m.clone().svd(true, true);
    let x = svd.solve(b, 1e-12).expect("svd solve");
    let res = (m * &x - b).norm();
    (x, res)
}

/// Orthonormal basis of the column span of `m`.
/// Columns with singular value `<= tol_rank * sigma_max` are discarded.
pub fn column_space(m: &DMatrix<f64>, tol_rank: f64) -> DMatrix<f64> {
    if m.ncols() == 0 {
        return DMatrix::zeros(m.nrows(), 0);
    }
    let svd = m.clone().svd(true, false);
    let smax = svd.singular_values.max().max(1e-300);
    let u = svd.u.expect("svd requested u");
    let mut keep = 0;
    for i in 0..svd.singular_values.len() {
        if svd.singular_values[i] > tol_rank * smax {
            keep += 1;
        }
    }
    let mut out = DMatrix::zeros(m.nrows(), keep);
    let mut j = 0;
    for i in 0..svd.singular_values.len() {
        if svd.singular_values[i] > tol_rank * smax {
            out.set_column(j, &u.column(i));
            j += 1;
        }
    }
    out
}

/// Inverse condition number `sigma_min / sigma_max` (zero matrix gives 0).
pub fn inv_condition(m: &DMatrix<f64>) -> f64 {
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.max();
    if smax == 0.0 {
        0.0
    } else {
        sv.min() / smax
    }
}

/// Determinant via LU.
pub fn det(m: &DMatrix<f64>) -> f64 {
    m.clone().lu().determinant()
}

/// Symmetric square root of a symmetric positive semidefinite matrix.
pub fn sym_sqrt(m: &DMatrix<f64>) -> DMatrix<f64> {
    let es = m.clone().symmetric_eigen();
    let mut d = DMatrix::zeros(m.nrows(), m.ncols());
    for i in 0..m.nrows() {
        d[(i, i)] = es.eigenvalues[i].max(0.0).sqrt();
    }
    &es.eigenvectors * d * es.eigenvectors.transpose()
}

/// Eigenvalues of a symmetric matrix, sorted ascending.
pub fn sym_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ev
}

/// Gram-Schmidt the columns of `m` in order against the already accepted
/// columns, dropping those whose remainder is below `tol`. Returns the
/// accepted orthonormal columns.
pub fn gram_schmidt(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let mut acc: Vec<DVector<f64>> = Vec::new();
    for j in 0..m.ncols() {
        let mut v: DVector<f64> = m.column(j).into();
        for q in &acc {
            let c = q.dot(&v);
            v -= q * c;
        }
        // second pass for numerical orthogonality
        for q in &acc {
            let c = q.dot(&v);
            v -= q * c;
        }
        let norm = v.norm();
        if norm > tol {
            acc.push(v / norm);
        }
    }
    let mut out = DMatrix::zeros(m.nrows(), acc.len());
    for (j, c) in acc.iter().enumerate() {
        out.set_column(j, c);
    }
    out
}
