"""Pure-Python fallback of the compiled kernels (Jacobi eigensolver and the
Givens-product isometry builder).

Mirrors ``entkit._jacobi`` operation for operation (same ordering, same
arithmetic), with numpy slice updates instead of C loops. Used when the
compiled extension is unavailable or when ENTKIT_PURE_PYTHON is set.
"""

import numpy as np


def jacobi_eigh(h, off_tol=1e-14, max_sweeps=100):
    """Diagonalize a Hermitian matrix by cyclic Jacobi rotations.

    Same contract as the compiled twin: returns (eigenvalues ascending,
    eigenvector columns). Input is assumed Hermitian.
    """
    a = np.array(h, dtype=np.complex128, order="C", copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)

    frob = float(np.sqrt(np.sum(np.abs(a) ** 2)))
    tol = off_tol * max(1.0, frob)
    # entries this far below tol cannot affect convergence; rotating on them
    # risks overflow in mu and in the phase division
    rot_tol = 1e-2 * tol / (n * n if n > 0 else 1.0)

    sweep = 0
    while True:
        a2 = np.abs(a) ** 2
        np.fill_diagonal(a2, 0.0)
        off = float(np.sqrt(a2.sum()))
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
                r = abs(z)
                if r <= rot_tol:
                    continue
                w = z / r
                wc = np.conj(w)
                app = a[p, p].real
                aqq = a[q, q].real
                mu = (app - aqq) / (2.0 * r)
                if mu >= 0.0:
                    t = 1.0 / (mu + np.sqrt(mu * mu + 1.0))
                else:
                    t = -1.0 / (-mu + np.sqrt(mu * mu + 1.0))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # A <- G+ A G with G = [[c, -s], [wc*s, wc*c]] on (p, q)
                xp = a[:, p].copy()
                xq = a[:, q].copy()
                a[:, p] = c * xp + s * wc * xq
                a[:, q] = -s * xp + c * wc * xq
                xp = a[p, :].copy()
                xq = a[q, :].copy()
                a[p, :] = c * xp + s * w * xq
                a[q, :] = -s * xp + c * w * xq
                a[p, p] = c * c * app + s * s * aqq + 2.0 * s * c * r
                a[q, q] = s * s * app + c * c * aqq - 2.0 * s * c * r
                a[p, q] = 0.0
                a[q, p] = 0.0
                xp = v[:, p].copy()
                xq = v[:, q].copy()
                v[:, p] = c * xp + s * wc * xq
                v[:, q] = -s * xp + c * wc * xq

    eigvals = np.real(np.diagonal(a)).copy()
    order = np.argsort(eigvals, kind="stable")
    return eigvals[order], v[:, order]


def givens_isometry(m, r, angles):
    """First r columns of a product of complex Givens rotations on C^m.

    Same contract as the compiled twin: ``angles`` holds (theta, phase) pairs
    for every column pair (i, j), i < j, in row-major pair order.
    """
    angles = np.ascontiguousarray(angles, dtype=np.float64)
    u = np.eye(m, dtype=np.complex128)
    idx = 0
    for i in range(m - 1):
        for j in range(i + 1, m):
            c = np.cos(angles[idx])
            s = np.sin(angles[idx])
            e = np.cos(angles[idx + 1]) + 1j * np.sin(angles[idx + 1])
            idx += 2
            col_i = u[:, i].copy()
            col_j = u[:, j].copy()
            u[:, i] = c * col_i + s * e * col_j
            u[:, j] = -s * np.conj(e) * col_i + c * col_j
    return u[:, :r]
