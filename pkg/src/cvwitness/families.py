"""Covariance matrices of the named state families used throughout the package."""

import numpy as np


def two_mode_squeezed_vacuum(r):
    return squeezed_thermal_cm(np.cosh(2 * r), np.cosh(2 * r), np.sinh(2 * r))


def squeezed_thermal_cm(a, b, c):
    """Blocks a*I, b*I with coupling c*sigma_3 (x-x coupling +c, p-p coupling -c)."""
    g = np.diag([a, a, b, b]).astype(float)
    g[0, 2] = g[2, 0] = c
    g[1, 3] = g[3, 1] = -c
    return g


def symmetric_two_mode_cm(a, c1, c2):
    g = np.diag([a, a, a, a]).astype(float)
    g[0, 2] = g[2, 0] = c1
    g[1, 3] = g[3, 1] = -c2
    return g


def symmetric_squeezed_thermal(n_th, r):
    """Symmetric two-mode squeezed thermal state with thermal number n_th."""
    nu = 2.0 * n_th + 1.0
    return squeezed_thermal_cm(nu * np.cosh(2 * r), nu * np.cosh(2 * r), nu * np.sinh(2 * r))


def werner_wolf_cm(a, b, c, d, e, f):
    """Generalized Werner-Wolf 2x2-mode CM (two modes per party).

    Diagonal blocks diag(A,B,A,B) and diag(C,D,C,D); the coupling block
    couples x1-x3 with +E, x2-x4 with -E, p1-p4 and p2-p3 with -F.
    """
    g = np.zeros((8, 8))
    g[:4, :4] = np.diag([a, b, a, b])
    g[4:, 4:] = np.diag([c, d, c, d])
    cc = np.zeros((4, 4))
    cc[0, 0] = e
    cc[1, 3] = -f
    cc[2, 2] = -e
    cc[3, 1] = -f
    g[:4, 4:] = cc
    g[4:, :4] = cc.T
    return g


def symmetric_multimode_cm(n, a, b, c1, c2):
    """n-mode gamma^x (+) gamma^p: diagonals a / b, off-diagonals c1 / -c2."""
    gx = np.full((n, n), c1)
    np.fill_diagonal(gx, a)
    gp = np.full((n, n), -c2)
    np.fill_diagonal(gp, b)
    g = np.zeros((2 * n, 2 * n))
    for i in range(n):
        for j in range(n):
            g[2 * i, 2 * j] = gx[i, j]
            g[2 * i + 1, 2 * j + 1] = gp[i, j]
    return g


def ghz_cm(n, a, c):
    """GHZ-type symmetric CM: b = a + (n-2)c on the momentum diagonal."""
    return symmetric_multimode_cm(n, a, a + (n - 2) * c, c, c)


def three_mode_symmetric_cm(a, c):
    """Three-mode symmetric squeezed thermal family, b = a + c."""
    return symmetric_multimode_cm(3, a, a + c, c, c)
