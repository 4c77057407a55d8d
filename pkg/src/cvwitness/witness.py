"""Gaussian detect-operator machinery.

Houses the six-parameter detect operator, the two-fold kernel of the
characteristic-function integral equation, the fixed-point equations for
the extremal local CMs, the product-vacuum maximum Lambda, and the
determinant-ratio statistic minimized over the detect family.
"""

import enum
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import NoConvergence, NotPhysical, OptimFailure, SingularGamma2
from .symplectic import CovarianceMatrix, standard_form, symplectic_form


class PositivityMode(enum.Enum):
    """Which positivity condition a detect operator is required to satisfy."""

    OPERATOR_PSD = "gamma_psd"        # gamma_M >= 0
    QUANTUM_STATE = "quantum_state"   # gamma_M + i*sigma >= 0


@dataclass(frozen=True)
class SixParamDetect:
    """Six-parameter two-mode detect-operator CM.

    The assembled matrix couples x1-x2 with +M5 and p1-p2 with -M6.
    """

    m1: float
    m2: float
    m3: float
    m4: float
    m5: float
    m6: float
    positivity: PositivityMode

    def __post_init__(self):
        g = self.cm()
        if self.positivity is PositivityMode.OPERATOR_PSD:
            w = np.linalg.eigvalsh(g)
            if w[0] < -1e-9:
                raise NotPhysical(w[0])
        else:
            w = np.linalg.eigvalsh(g + 1j * symplectic_form(2))
            if w[0] < -1e-9:
                raise NotPhysical(w[0])

    def cm(self):
        g = np.diag([self.m1, self.m2, self.m3, self.m4]).astype(float)
        g[0, 2] = g[2, 0] = self.m5
        g[1, 3] = g[3, 1] = -self.m6
        return g

    @property
    def gamma1(self):
        return np.diag([self.m1, self.m2]).astype(float)

    @property
    def gamma2(self):
        return np.diag([self.m3, self.m4]).astype(float)

    @property
    def gamma3(self):
        return np.diag([self.m5, -self.m6]).astype(float)

    def swapped(self):
        """Interchange the two parties (M1<->M3, M2<->M4)."""
        return SixParamDetect(
            self.m3, self.m4, self.m1, self.m2, self.m5, self.m6, self.positivity
        )


@dataclass(frozen=True)
class OmegaMembership:
    residual_a: float
    residual_b: float

    @property
    def is_member(self):
        return self.residual_a < 1e-9 and self.residual_b < 1e-9


@dataclass(frozen=True)
class TwoFoldKernelCM:
    zeta: np.ndarray
    omega: np.ndarray
    gamma_2m: np.ndarray


def two_fold_kernel(gamma1, gamma2, gamma3):
    """Assemble the two-fold symmetric kernel CM from detect-operator blocks."""
    if abs(np.linalg.det(gamma2)) < 1e-12:
        raise SingularGamma2("gamma_2 block is singular")
    omega = -0.5 * gamma3 @ np.linalg.inv(gamma2) @ gamma3.T
    zeta = gamma1 + omega
    gamma_2m = np.block([[zeta, omega], [omega, zeta]])
    return TwoFoldKernelCM(zeta=zeta, omega=omega, gamma_2m=gamma_2m)


def fixed_point_AB(gamma1, gamma2, gamma3, tol=1e-12, max_iter=10000):
    """Alternating substitution for the extremal local CMs.

    Starts from gamma_B = identity; returns (gamma_A, gamma_B, iterations).
    """
    dim = gamma2.shape[0]
    gb = np.eye(dim)
    ga = gamma1 - gamma3 @ np.linalg.inv(gamma2 + gb) @ gamma3.T
    for it in range(1, max_iter + 1):
        ga_new = gamma1 - gamma3 @ np.linalg.inv(gamma2 + gb) @ gamma3.T
        gb_new = gamma2 - gamma3.T @ np.linalg.inv(gamma1 + ga_new) @ gamma3
        delta = max(np.max(np.abs(ga_new - ga)), np.max(np.abs(gb_new - gb)))
        ga, gb = ga_new, gb_new
        if delta < tol:
            return ga, gb, it
    raise NoConvergence(f"fixed point not reached after {max_iter} iterations")


def omega_residuals(d):
    """Residuals of the two membership constraints of the detect-operator set Omega."""
    ra = abs(d.m1 * d.m2 - d.m3 * d.m4)
    rb = abs((d.m1 * d.m3 - d.m5**2) * (d.m2 * d.m4 - d.m6**2) - 1.0)
    return OmegaMembership(residual_a=float(ra), residual_b=float(rb))


def detect_determinant(d, x, y):
    """det(gamma_M + diag(x, 1/x, y, 1/y)), factorized over the x and p sectors."""
    fx = (d.m1 + x) * (d.m3 + y) - d.m5**2
    fp = (d.m2 + 1.0 / x) * (d.m4 + 1.0 / y) - d.m6**2
    return fx * fp


def stationarity_residuals(d, x, y):
    """The two stationarity equations of the pre-squeeze parameters, verbatim."""
    r1 = (d.m3 + y) * (d.m2 * (d.m4 + 1.0 / y) - d.m6**2) - (1.0 / x**2) * (
        d.m4 + 1.0 / y
    ) * (d.m1 * (d.m3 + y) - d.m5**2)
    r2 = (d.m1 + x) * (d.m4 * (d.m2 + 1.0 / x) - d.m6**2) - (1.0 / y**2) * (
        d.m2 + 1.0 / x
    ) * (d.m3 * (d.m1 + x) - d.m5**2)
    return float(r1), float(r2)


def _grid_min(d, points=61):
    grid = np.logspace(-3.0, 3.0, points)
    xg, yg = np.meshgrid(grid, grid, indexing="ij")
    vals = detect_determinant(d, xg, yg)
    i, j = np.unravel_index(np.argmin(vals), vals.shape)
    return float(grid[i]), float(grid[j]), float(vals[i, j])


def _newton_refine(d, x, y, max_iter=60):
    """Safeguarded Newton on the stationarity system; falls back by halving steps."""
    val = detect_determinant(d, x, y)
    for _ in range(max_iter):
        r1, r2 = stationarity_residuals(d, x, y)
        hx = 1e-7 * max(x, 1.0)
        hy = 1e-7 * max(y, 1.0)
        j11 = (stationarity_residuals(d, x + hx, y)[0] - r1) / hx
        j12 = (stationarity_residuals(d, x, y + hy)[0] - r1) / hy
        j21 = (stationarity_residuals(d, x + hx, y)[1] - r2) / hx
        j22 = (stationarity_residuals(d, x, y + hy)[1] - r2) / hy
        det_j = j11 * j22 - j12 * j21
        if abs(det_j) < 1e-300:
            break
        dx = -(j22 * r1 - j12 * r2) / det_j
        dy = -(-j21 * r1 + j11 * r2) / det_j
        step = 1.0
        while step > 1e-6:
            xn, yn = x + step * dx, y + step * dy
            if xn > 0 and yn > 0:
                vn = detect_determinant(d, xn, yn)
                if vn <= val + 1e-15 * abs(val):
                    x, y, val = xn, yn, vn
                    break
            step *= 0.5
        else:
            break
        if abs(r1) + abs(r2) < 1e-12 * (1.0 + abs(val)):
            break
    return x, y, val


def lambda_product_vacuum(d):
    """Maximal mean of the detect operator over product states (vacuum optimum).

    Minimizes det(gamma_M + diag(x, 1/x, y, 1/y)) over x, y > 0 by grid
    initialization plus safeguarded Newton; returns (Lambda, x*, y*).
    """
    x0, y0, v0 = _grid_min(d)
    x, y, val = _newton_refine(d, x0, y0)
    if val > v0 * (1.0 + 1e-6):
        raise OptimFailure(
            f"Newton minimum {val!r} disagrees with grid minimum {v0!r}"
        )
    if val <= 0:
        raise OptimFailure("determinant minimum is not positive")
    lam = 4.0 / np.sqrt(val)
    return float(lam), float(x), float(y)


def min_detect_determinant(d):
    """min over x, y of det(gamma_M + diag(x, 1/x, y, 1/y))."""
    lam, _, _ = lambda_product_vacuum(d)
    return 16.0 / lam**2


def L_ratio(gamma, d):
    """det(gamma + gamma_M) / min_{x,y} det(diag(x,1/x,y,1/y) + gamma_M)."""
    g = gamma.entries if isinstance(gamma, CovarianceMatrix) else np.asarray(gamma, float)
    numer = float(np.linalg.det(g + d.cm()))
    denom = min_detect_determinant(d)
    return numer / denom


def _schedule_detect(m1, u):
    """Paper-structured detect operator: symmetric blocks, M5^2 = (M1+1)(M3-1)."""
    m3 = 1.0 + u * u * (m1 + 1.0)
    m5 = u * (m1 + 1.0)
    return SixParamDetect(m1, m1, m3, m3, m5, m5, PositivityMode.OPERATOR_PSD)


def minimize_L(gamma):
    """Minimize the determinant ratio over the structured detect family.

    Runs a large-parameter schedule plus the analytic infinite-parameter
    limit (b+1)/2 - c^2/(2(a-1)); returns (L, best_detect) where
    best_detect is None when the analytic limit wins.
    """
    sf = standard_form(gamma) if isinstance(gamma, CovarianceMatrix) else gamma
    a, b = (sf.a, sf.b) if sf.a >= sf.b else (sf.b, sf.a)
    c = 0.5 * (sf.c1 + sf.c2)
    best_val = np.inf
    best_d = None
    for m1 in (1e2, 1e3, 1e4):
        def ratio_of(u, m1=m1):
            try:
                return L_ratio(gamma if isinstance(gamma, CovarianceMatrix) else sf.to_cm(),
                               _schedule_detect(m1, u))
            except (OptimFailure, NotPhysical):
                return np.inf

        # u above sqrt(M1/(M1+1)) makes the x-sector block of gamma_M indefinite
        u_max = np.sqrt(m1 / (m1 + 1.0)) * (1.0 - 1e-9)
        res = minimize_scalar(ratio_of, bounds=(1e-4, u_max), method="bounded",
                              options={"xatol": 1e-6})
        if res.fun < best_val:
            best_val = float(res.fun)
            best_d = _schedule_detect(m1, float(res.x))
    if a > 1.0:
        limit = 0.5 * (b + 1.0) - c * c / (2.0 * (a - 1.0))
        if limit < best_val:
            best_val = float(limit)
            best_d = None
    return best_val, best_d
