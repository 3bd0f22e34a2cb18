# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: cyclic Jacobi eigensolver for dense complex
Hermitian matrices and the Givens-product isometry builder.

Compiled twin of ``entkit._jacobi_py``. Both lanes perform the identical
arithmetic in the identical order, so their results agree to rounding
noise; ``tests/test_kernel.py`` enforces the parity.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin, sqrt

cnp.import_array()


def jacobi_eigh(h, double off_tol=1e-14, int max_sweeps=100):
    """Diagonalize a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    h : (n, n) complex ndarray, assumed Hermitian (not re-checked here;
        ``entkit.linalg.hermitian_eig`` is the checked entry point).
    off_tol : convergence threshold on the off-diagonal Frobenius mass,
        scaled by max(1, ||h||_F).
    max_sweeps : hard cap on full cyclic sweeps.

    Returns
    -------
    (w, v) : eigenvalues ascending (float64) and eigenvector columns
        (complex128) with v[:, k] belonging to w[k].
    """
    a_arr = np.array(h, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = a_arr.shape[0]
    v_arr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] a = a_arr
    cdef double complex[:, ::1] v = v_arr

    cdef Py_ssize_t i, j, p, q, sweep
    cdef double frob, off, tol, rot_tol, r, app, aqq, mu, t, c, s, app_new, aqq_new
    cdef double complex z, w, wc, xp, xq

    frob = 0.0
    for i in range(n):
        for j in range(n):
            z = a[i, j]
            frob += z.real * z.real + z.imag * z.imag
    frob = sqrt(frob)
    tol = off_tol * (frob if frob > 1.0 else 1.0)
    # entries this far below tol cannot affect convergence; rotating on them
    # risks overflow in mu and in the phase division
    rot_tol = 1e-2 * tol / (<double> (n * n) if n > 0 else 1.0)

    sweep = 0
    while True:
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    z = a[i, j]
                    off += z.real * z.real + z.imag * z.imag
        off = sqrt(off)
        if off <= tol:
            break
        if sweep >= max_sweeps:
            raise RuntimeError(
                "jacobi_eigh: no convergence after %d sweeps (off=%g)" % (max_sweeps, off)
            )
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                z = a[p, q]
                r = sqrt(z.real * z.real + z.imag * z.imag)
                if r <= rot_tol:
                    continue
                w = z / r
                wc = w.conjugate()
                app = a[p, p].real
                aqq = a[q, q].real
                mu = (app - aqq) / (2.0 * r)
                if mu >= 0.0:
                    t = 1.0 / (mu + sqrt(mu * mu + 1.0))
                else:
                    t = -1.0 / (-mu + sqrt(mu * mu + 1.0))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c
                # A <- G+ A G with G = [[c, -s], [wc*s, wc*c]] on (p, q)
                for i in range(n):
                    xp = a[i, p]
                    xq = a[i, q]
                    a[i, p] = c * xp + s * wc * xq
                    a[i, q] = -s * xp + c * wc * xq
                for j in range(n):
                    xp = a[p, j]
                    xq = a[q, j]
                    a[p, j] = c * xp + s * w * xq
                    a[q, j] = -s * xp + c * w * xq
                app_new = c * c * app + s * s * aqq + 2.0 * s * c * r
                aqq_new = s * s * app + c * c * aqq - 2.0 * s * c * r
                a[p, p] = app_new
                a[q, q] = aqq_new
                a[p, q] = 0.0
                a[q, p] = 0.0
                for i in range(n):
                    xp = v[i, p]
                    xq = v[i, q]
                    v[i, p] = c * xp + s * wc * xq
                    v[i, q] = -s * xp + c * wc * xq

    eigvals = np.real(np.diagonal(a_arr)).copy()
    order = np.argsort(eigvals, kind="stable")
    return eigvals[order], v_arr[:, order]


def givens_isometry(int m, int r, angles):
    """First r columns of a product of complex Givens rotations on C^m.

    ``angles`` holds (theta, phase) pairs for every column pair (i, j), i < j,
    in row-major pair order; length m(m-1).
    """
    angles_arr = np.ascontiguousarray(angles, dtype=np.float64)
    u_arr = np.eye(m, dtype=np.complex128)
    cdef double[::1] ang = angles_arr
    cdef double complex[:, ::1] u = u_arr
    cdef Py_ssize_t i, j, row, idx = 0
    cdef double c, s
    cdef double complex e, ec, ci, cj
    for i in range(m - 1):
        for j in range(i + 1, m):
            c = cos(ang[idx])
            s = sin(ang[idx])
            e = cos(ang[idx + 1]) + 1j * sin(ang[idx + 1])
            idx += 2
            ec = e.conjugate()
            for row in range(m):
                ci = u[row, i]
                cj = u[row, j]
                u[row, i] = c * ci + s * e * cj
                u[row, j] = -s * ec * ci + c * cj
    return u_arr[:, :r]
