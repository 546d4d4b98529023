//! Dense symmetric/Hermitian eigensolvers, bound directly to the system
//! LAPACK (OpenBLAS).
//!
//! Only three routines are needed by the rest of the crate, so they are
//! declared by hand rather than through a binding crate:
//!
//! * `dsyevr` — lowest-`m` eigenpairs of a real symmetric matrix. This is
//!   the workhorse: spectra need only the first dozen levels of matrices
//!   with `n` up to a few thousand, and the RRR algorithm gets them without
//!   paying for the full decomposition.
//! * `dsyev` — full eigendecomposition, used for small matrices and as an
//!   independent second route in tests.
//! * `zheev` — eigenvalues of a complex Hermitian matrix, used to certify
//!   density-matrix positivity.
//!
//! Matrices cross the FFI boundary as flat slices. LAPACK is column-major,
//! but every input here is symmetric (or Hermitian, where only eigenvalues
//! are requested), so a row-major buffer can be handed over unchanged.
//! Returned eigenvectors land in LAPACK columns, which makes eigenvector
//! `j` the contiguous slice `z[j*n .. (j+1)*n]` of the output buffer.
//!
//! The hidden string-length arguments of the gfortran calling convention
//! are passed explicitly (as `usize` at the end of each argument list);
//! they are required by gfortran-compiled LAPACK and harmless otherwise.

use crate::error::{FluxdetError, Result};
use num_complex::Complex64;

mod ffi {
    use num_complex::Complex64;

    // Fortran: all arguments by reference; trailing usize values are the
    // hidden lengths of the character arguments, in order of appearance.
    extern "C" {
        pub fn dsyevr_(
            jobz: *const u8,
            range: *const u8,
            uplo: *const u8,
            n: *const i32,
            a: *mut f64,
            lda: *const i32,
            vl: *const f64,
            vu: *const f64,
            il: *const i32,
            iu: *const i32,
            abstol: *const f64,
            m: *mut i32,
            w: *mut f64,
            z: *mut f64,
            ldz: *const i32,
            isuppz: *mut i32,
            work: *mut f64,
            lwork: *const i32,
            iwork: *mut i32,
            liwork: *const i32,
            info: *mut i32,
            jobz_len: usize,
            range_len: usize,
            uplo_len: usize,
        );

        pub fn dsyev_(
            jobz: *const u8,
            uplo: *const u8,
            n: *const i32,
            a: *mut f64,
            lda: *const i32,
            w: *mut f64,
            work: *mut f64,
            lwork: *const i32,
            info: *mut i32,
            jobz_len: usize,
            uplo_len: usize,
        );

        pub fn zheev_(
            jobz: *const u8,
            uplo: *const u8,
            n: *const i32,
            a: *mut Complex64,
            lda: *const i32,
            w: *mut f64,
            work: *mut Complex64,
            lwork: *const i32,
            rwork: *mut f64,
            info: *mut i32,
            jobz_len: usize,
            uplo_len: usize,
        );

        pub fn openblas_set_num_threads(n: i32);
    }
}

/// Pin the number of BLAS worker threads.
///
/// Eigensolves inside parameter sweeps are parallelised at the sweep level;
/// nested BLAS threading on top of that oversubscribes the machine and makes
/// timings (never results) erratic. Call with `1` before spawning sweep
/// workers.
pub fn set_blas_threads(n: usize) {
    unsafe { ffi::openblas_set_num_threads(n.max(1).min(i32::MAX as usize) as i32) }
}

fn dim_as_i32(n: usize) -> Result<i32> {
    i32::try_from(n).map_err(|_| {
        FluxdetError::InvalidParameter(format!("matrix dimension {n} exceeds LAPACK's i32 range"))
    })
}

fn check_square(len: usize, n: usize) -> Result<()> {
    if n == 0 {
        return Err(FluxdetError::InvalidParameter(
            "matrix dimension must be nonzero".into(),
        ));
    }
    if len != n * n {
        return Err(FluxdetError::InvalidParameter(format!(
            "matrix buffer holds {len} elements, expected {n}×{n}"
        )));
    }
    Ok(())
}

/// Lowest `m` eigenpairs of a real symmetric `n×n` matrix (row-major, fully
/// populated).
///
/// Returns `(w, z)` where `w` holds the `m` smallest eigenvalues in
/// ascending order and eigenvector `j` is the contiguous, unit-norm slice
/// `z[j*n .. (j+1)*n]`. The input buffer is left untouched (LAPACK works on
/// an internal copy).
pub fn lowest_eigenpairs_sym(a: &[f64], n: usize, m: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    check_square(a.len(), n)?;
    if m == 0 || m > n {
        return Err(FluxdetError::InvalidParameter(format!(
            "requested {m} eigenpairs of an {n}×{n} matrix"
        )));
    }
    let ni = dim_as_i32(n)?;
    let mut a = a.to_vec();
    let (jobz, range, uplo) = (b'V', b'I', b'L');
    let (il, iu) = (1i32, m as i32);
    let (vl, vu) = (0.0f64, 0.0f64);
    // Smallest positive normal number: LAPACK's documented choice for the
    // most accurate eigenvalues dsyevr can deliver.
    let abstol = f64::MIN_POSITIVE;
    let mut m_found: i32 = 0;
    let mut w = vec![0.0f64; n];
    let mut z = vec![0.0f64; m * n];
    let ldz = ni;
    let mut isuppz = vec![0i32; 2 * m];
    let mut info: i32 = 0;

    // Workspace query, then the real call.
    let mut work_query = [0.0f64; 1];
    let mut iwork_query = [0i32; 1];
    let neg_one = -1i32;
    unsafe {
        ffi::dsyevr_(
            &jobz,
            &range,
            &uplo,
            &ni,
            a.as_mut_ptr(),
            &ni,
            &vl,
            &vu,
            &il,
            &iu,
            &abstol,
            &mut m_found,
            w.as_mut_ptr(),
            z.as_mut_ptr(),
            &ldz,
            isuppz.as_mut_ptr(),
            work_query.as_mut_ptr(),
            &neg_one,
            iwork_query.as_mut_ptr(),
            &neg_one,
            &mut info,
            1,
            1,
            1,
        );
    }
    if info != 0 {
        return Err(FluxdetError::Eigensolver {
            routine: "dsyevr (workspace query)",
            info,
        });
    }
    let lwork = work_query[0] as i32;
    let liwork = iwork_query[0];
    let mut work = vec![0.0f64; lwork.max(1) as usize];
    let mut iwork = vec![0i32; liwork.max(1) as usize];
    unsafe {
        ffi::dsyevr_(
            &jobz,
            &range,
            &uplo,
            &ni,
            a.as_mut_ptr(),
            &ni,
            &vl,
            &vu,
            &il,
            &iu,
            &abstol,
            &mut m_found,
            w.as_mut_ptr(),
            z.as_mut_ptr(),
            &ldz,
            isuppz.as_mut_ptr(),
            work.as_mut_ptr(),
            &lwork,
            iwork.as_mut_ptr(),
            &liwork,
            &mut info,
            1,
            1,
            1,
        );
    }
    if info != 0 {
        return Err(FluxdetError::Eigensolver {
            routine: "dsyevr",
            info,
        });
    }
    if m_found as usize != m {
        return Err(FluxdetError::Eigensolver {
            routine: "dsyevr (eigenpair count)",
            info: m_found,
        });
    }
    w.truncate(m);
    Ok((w, z))
}

/// Full eigendecomposition of a real symmetric `n×n` matrix (row-major).
///
/// Returns `(w, z)` with all `n` eigenvalues ascending and eigenvector `j`
/// contiguous at `z[j*n .. (j+1)*n]`.
pub fn eigensolve_sym_full(a: &[f64], n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    check_square(a.len(), n)?;
    let ni = dim_as_i32(n)?;
    let mut z = a.to_vec(); // dsyev overwrites the matrix with eigenvectors
    let (jobz, uplo) = (b'V', b'L');
    let mut w = vec![0.0f64; n];
    let mut info: i32 = 0;
    let mut work_query = [0.0f64; 1];
    let neg_one = -1i32;
    unsafe {
        ffi::dsyev_(
            &jobz,
            &uplo,
            &ni,
            z.as_mut_ptr(),
            &ni,
            w.as_mut_ptr(),
            work_query.as_mut_ptr(),
            &neg_one,
            &mut info,
            1,
            1,
        );
    }
    if info != 0 {
        return Err(FluxdetError::Eigensolver {
            routine: "dsyev (workspace query)",
            info,
        });
    }
    let lwork = work_query[0] as i32;
    let mut work = vec![0.0f64; lwork.max(1) as usize];
    unsafe {
        ffi::dsyev_(
            &jobz,
            &uplo,
            &ni,
            z.as_mut_ptr(),
            &ni,
            w.as_mut_ptr(),
            work.as_mut_ptr(),
            &lwork,
            &mut info,
            1,
            1,
        );
    }
    if info != 0 {
        return Err(FluxdetError::Eigensolver {
            routine: "dsyev",
            info,
        });
    }
    Ok((w, z))
}

/// Eigenvalues (ascending) of a complex Hermitian `n×n` matrix (row-major).
///
/// Only the values are computed; this is the positivity certificate for
/// density matrices. A Hermitian matrix read in the transposed (column-major)
/// order is its elementwise conjugate, which has the identical real spectrum,
/// so the row-major buffer needs no conversion.
pub fn eigenvalues_hermitian(a: &[Complex64], n: usize) -> Result<Vec<f64>> {
    check_square(a.len(), n)?;
    let ni = dim_as_i32(n)?;
    let mut a = a.to_vec();
    let (jobz, uplo) = (b'N', b'L');
    let mut w = vec![0.0f64; n];
    let mut rwork = vec![0.0f64; (3 * n).saturating_sub(2).max(1)];
    let mut info: i32 = 0;
    let mut work_query = [Complex64::new(0.0, 0.0); 1];
    let neg_one = -1i32;
    unsafe {
        ffi::zheev_(
            &jobz,
            &uplo,
            &ni,
            a.as_mut_ptr(),
            &ni,
            w.as_mut_ptr(),
            work_query.as_mut_ptr(),
            &neg_one,
            rwork.as_mut_ptr(),
            &mut info,
            1,
            1,
        );
    }
    if info != 0 {
        return Err(FluxdetError::Eigensolver {
            routine: "zheev (workspace query)",
            info,
        });
    }
    let lwork = work_query[0].re as i32;
    let mut work = vec![Complex64::new(0.0, 0.0); lwork.max(1) as usize];
    unsafe {
        ffi::zheev_(
            &jobz,
            &uplo,
            &ni,
            a.as_mut_ptr(),
            &ni,
            w.as_mut_ptr(),
            work.as_mut_ptr(),
            &lwork,
            rwork.as_mut_ptr(),
            &mut info,
            1,
            1,
        );
    }
    if info != 0 {
        return Err(FluxdetError::Eigensolver {
            routine: "zheev",
            info,
        });
    }
    Ok(w)
}
