use super::{eigh, CMatrix, EigenPair, HermMatrix, LinalgError, C64, HERM_TOL, PSD_CLAMP_TOL};
use crate::spectra::SpreadSeq;

/// Singular values below `PINV_CUTOFF · s_1` are treated as zero.
pub const PINV_CUTOFF: f64 = 1e-10;

/// Thin singular value data: `X v_j = σ_j u_j` for `j < rank`.
#[derive(Clone, Debug)]
pub struct Svd {
    /// All `cols` singular values of `X`, non-increasing.
    pub sigma: Vec<f64>,
    /// Right singular vectors as columns (`cols × cols`).
    pub v: CMatrix,
    /// Left singular vectors for the numerically non-zero values (`rows × rank`).
    pub u: CMatrix,
    pub rank: usize,
}

/// `X = U · P` with `P = (X*X)^{1/2}` and `U` a partial isometry whose initial
/// space is the range of `P`.
#[derive(Clone, Debug)]
pub struct Polar {
    pub u: CMatrix,
    pub p: HermMatrix,
}

/// Compression of `A` to the range of a projection `P`.
#[derive(Clone, Debug)]
pub struct Compression {
    /// `A_P = W* A W` where the columns of `W` are an orthonormal basis of `R(P)`.
    pub reduced: HermMatrix,
    pub basis: CMatrix,
    /// `P A P` on the full space.
    pub full: HermMatrix,
}

fn gram_eigen(x: &CMatrix) -> Result<EigenPair, LinalgError> {
    let gram = HermMatrix::symmetrized(&x.adjoint() * x);
    let e = eigh(&gram)?;
    let top = e.values.first().copied().unwrap_or(0.0);
    if let Some(&min) = e.values.last() {
        if min < -PSD_CLAMP_TOL * top.max(1.0) {
            return Err(LinalgError::NotPositive { min_eigenvalue: min });
        }
    }
    Ok(e)
}

fn column_norm(x: &CMatrix, v: &CMatrix, j: usize) -> (Vec<C64>, f64) {
    let col: Vec<C64> = (0..x.rows())
        .map(|i| (0..x.cols()).map(|k| x[(i, k)] * v[(k, j)]).sum())
        .collect();
    let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    (col, norm)
}

/// Singular value decomposition through the eigenvectors of `X*X`.
///
/// The values are recomputed as `‖X v_j‖`, which keeps absolute accuracy
/// near zero instead of taking square roots of rounded Gram eigenvalues.
pub fn svd(x: &CMatrix) -> Result<Svd, LinalgError> {
    let e = gram_eigen(x)?;
    let n = x.cols();
    let mut cols: Vec<(Vec<C64>, f64, usize)> = (0..n)
        .map(|j| {
            let (c, s) = column_norm(x, &e.vectors, j);
            (c, s, j)
        })
        .collect();
    cols.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.2.cmp(&b.2)));

    let sigma: Vec<f64> = cols.iter().map(|c| c.1).collect();
    let v = CMatrix::from_fn(n, n, |i, k| e.vectors[(i, cols[k].2)]);
    let cutoff = PINV_CUTOFF * sigma.first().copied().unwrap_or(0.0);
    let rank = sigma.iter().take_while(|&&s| s > cutoff && s > 0.0).count();
    let u = CMatrix::from_fn(x.rows(), rank, |i, k| cols[k].0[i] / cols[k].1);
    Ok(Svd { sigma, v, u, rank })
}

/// `s(X)`: `min(rows, cols)` singular values, non-increasing, with an exact
/// zero tail.
pub fn svd_values(x: &CMatrix) -> Result<SpreadSeq, LinalgError> {
    let values = if x.rows() < x.cols() {
        svd(&x.adjoint())?.sigma
    } else {
        svd(x)?.sigma
    };
    Ok(SpreadSeq::finite(values))
}

pub fn polar(x: &CMatrix) -> Result<Polar, LinalgError> {
    let d = svd(x)?;
    let n = x.cols();
    let p = CMatrix::from_fn(n, n, |i, j| {
        (0..n).map(|k| d.v[(i, k)] * d.sigma[k] * d.v[(j, k)].conj()).sum()
    });
    let u = CMatrix::from_fn(x.rows(), n, |i, j| {
        (0..d.rank).map(|k| d.u[(i, k)] * d.v[(j, k)].conj()).sum()
    });
    Ok(Polar {
        u,
        p: HermMatrix::symmetrized(p),
    })
}

/// Moore–Penrose pseudoinverse with the relative cutoff [`PINV_CUTOFF`].
pub fn pinv(b: &CMatrix) -> Result<CMatrix, LinalgError> {
    let d = svd(b)?;
    Ok(CMatrix::from_fn(b.cols(), b.rows(), |i, j| {
        (0..d.rank)
            .map(|k| d.v[(i, k)] * d.u[(j, k)].conj() / d.sigma[k])
            .sum()
    }))
}

/// Positive square root of a positive semidefinite matrix.
///
/// Eigenvalues below `PSD_CLAMP_TOL · λ_max` are rounding noise of a
/// singular matrix and map to an exact zero; their square roots would
/// otherwise show up as spurious small singular values.
pub fn psd_sqrt(h: &HermMatrix) -> Result<HermMatrix, LinalgError> {
    let e = eigh(h)?;
    let top = e.values.first().copied().unwrap_or(0.0).abs();
    if let Some(&min) = e.values.last() {
        if min < -HERM_TOL * top.max(1.0) {
            return Err(LinalgError::NotPositive { min_eigenvalue: min });
        }
    }
    let floor = PSD_CLAMP_TOL * top;
    Ok(HermMatrix::symmetrized(e.reconstruct_with(|x| {
        C64::new(if x > floor { x.sqrt() } else { 0.0 }, 0.0)
    })))
}

/// `e^{iX}` for Hermitian `X`.
pub fn unitary_exp(x: &HermMatrix) -> Result<CMatrix, LinalgError> {
    let e = eigh(x)?;
    Ok(e.reconstruct_with(|t| C64::new(t.cos(), t.sin())))
}

pub fn direct_sum(a: &HermMatrix, b: &HermMatrix) -> HermMatrix {
    let (n, m) = (a.dim(), b.dim());
    let out = CMatrix::from_fn(n + m, n + m, |i, j| {
        if i < n && j < n {
            a[(i, j)]
        } else if i >= n && j >= n {
            b[(i - n, j - n)]
        } else {
            C64::new(0.0, 0.0)
        }
    });
    HermMatrix(out)
}

/// `[[0, B], [B*, 0]]`.
pub fn offdiag_embed(b: &CMatrix) -> HermMatrix {
    let (r, c) = (b.rows(), b.cols());
    let out = CMatrix::from_fn(r + c, r + c, |i, j| {
        if i < r && j >= r {
            b[(i, j - r)]
        } else if i >= r && j < r {
            b[(j, i - r)].conj()
        } else {
            C64::new(0.0, 0.0)
        }
    });
    HermMatrix(out)
}

pub fn compress(a: &HermMatrix, p: &HermMatrix) -> Result<Compression, LinalgError> {
    if a.dim() != p.dim() {
        return Err(LinalgError::DimMismatch {
            context: format!("compress: A is {0}x{0}, P is {1}x{1}", a.dim(), p.dim()),
        });
    }
    let pm = p.as_cmatrix();
    let deviation = (&(pm * pm) - pm).frobenius_norm();
    if deviation > HERM_TOL * pm.frobenius_norm().max(1.0) {
        return Err(LinalgError::NotProjection { deviation });
    }
    let e = eigh(p)?;
    let rank = e.values.iter().filter(|&&x| x > 0.5).count();
    let basis = e.vectors.block(0, p.dim(), 0, rank);
    Ok(Compression {
        reduced: a.congruence(&basis),
        full: a.conjugate_by(pm),
        basis,
    })
}
