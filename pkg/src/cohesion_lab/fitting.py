"""Least-squares fits: power-law learning curve and distance hyperbola."""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError

_NLS_MAX_ITER = 200
_NLS_STEP_TOL = 1e-10


@dataclass(frozen=True)
class FitResult:
    parameters: dict
    rss: float
    r_squared: float
    method: str


def _r_squared(y, pred):
    rss = float(((y - pred) ** 2).sum())
    tss = float(((y - y.mean()) ** 2).sum())
    return rss, (1.0 - rss / tss if tss > 0 else float("nan"))


def _as_xy(points):
    arr = np.asarray(points, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise DomainError("points must be a sequence of (x, y) pairs")
    return arr[:, 0], arr[:, 1]


def fit_power_law(points, method: str = "nls") -> FitResult:
    """Fit t = a * lam^(-b) to (lam, t) pairs.

    'loglog_ols' regresses log t on log lam; 'nls' runs damped Gauss-Newton
    in linear space from the log-log estimate (steps that would increase the
    RSS are halved, so the fit never ends worse than its initialization).
    """
    x, y = _as_xy(points)
    if x.size < 3:
        raise DomainError("fit_power_law needs at least 3 points")
    if np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("fit_power_law needs positive coordinates")
    slope, intercept = np.polyfit(np.log(x), np.log(y), 1)
    a, b = float(np.exp(intercept)), float(-slope)
    if method == "loglog_ols":
        pred = a * x ** (-b)
        rss, r2 = _r_squared(y, pred)
        return FitResult(parameters={"a": a, "b": b}, rss=rss, r_squared=r2, method=method)
    if method != "nls":
        raise DomainError(f"unknown method {method!r}")

    def rss_of(aa, bb):
        return float(((y - aa * x ** (-bb)) ** 2).sum())

    rss = rss_of(a, b)
    for iteration in range(_NLS_MAX_ITER):
        f = a * x ** (-b)
        r = y - f
        jac = np.column_stack([x ** (-b), -a * x ** (-b) * np.log(x)])
        step, *_ = np.linalg.lstsq(jac, r, rcond=None)
        scale = 1.0
        while scale > 1e-12:
            na, nb = a + scale * step[0], b + scale * step[1]
            if rss_of(na, nb) <= rss:
                break
            scale *= 0.5
        a, b = a + scale * step[0], b + scale * step[1]
        rss = rss_of(a, b)
        if float(np.abs(step).max()) * scale < _NLS_STEP_TOL:
            break
    else:
        raise ConvergenceError(
            f"power-law NLS did not converge in {_NLS_MAX_ITER} iterations",
            last_iterate={"a": a, "b": b},
        )
    pred = a * x ** (-b)
    rss, r2 = _r_squared(y, pred)
    return FitResult(parameters={"a": float(a), "b": float(b)}, rss=rss, r_squared=r2, method="nls")


def fit_line(points) -> FitResult:
    """Ordinary least squares y = alpha + beta * x (comparison baseline)."""
    x, y = _as_xy(points)
    if x.size < 2:
        raise DomainError("fit_line needs at least 2 points")
    beta, alpha = np.polyfit(x, y, 1)
    pred = alpha + beta * x
    rss, r2 = _r_squared(y, pred)
    return FitResult(
        parameters={"alpha": float(alpha), "beta": float(beta)},
        rss=rss,
        r_squared=r2,
        method="line_ols",
    )


def fit_hyperbola(points) -> FitResult:
    """Fit lam = c1 / (dbar + c2) to (dbar, lam) pairs.

    Linearized start (1/lam regressed on dbar), then Gauss-Newton polish in
    the original space; polish steps are kept only while they reduce the RSS
    and keep the pole c2 outside the data range.
    """
    x, y = _as_xy(points)
    if x.size < 3:
        raise DomainError("fit_hyperbola needs at least 3 points")
    if np.any(y <= 0):
        raise DomainError("fit_hyperbola needs positive lambda2 values")
    if np.allclose(x, x[0]):
        raise DomainError("fit_hyperbola needs varying mean distances")
    slope, intercept = np.polyfit(x, 1.0 / y, 1)
    if slope <= 0:
        raise DomainError("hyperbola fit needs 1/lambda2 increasing with distance")
    c1 = 1.0 / slope
    c2 = intercept * c1
    if (x + c2).min() <= 0:
        # linearized pole fell inside the data; restart from a bounded scan
        best = None
        for cand in np.linspace(-x.min() + 1e-3, x.max(), 2000):
            w = 1.0 / (x + cand)
            num = float(w @ y) / float(w @ w)
            rss_cand = float(((y - num * w) ** 2).sum())
            if best is None or rss_cand < best[0]:
                best = (rss_cand, num, cand)
        _, c1, c2 = best

    def rss_of(a, b):
        if (x + b).min() <= 0:
            return float("inf")
        return float(((y - a / (x + b)) ** 2).sum())

    rss = rss_of(c1, c2)
    for _ in range(_NLS_MAX_ITER):
        f = c1 / (x + c2)
        r = y - f
        jac = np.column_stack([1.0 / (x + c2), -c1 / (x + c2) ** 2])
        step, *_ = np.linalg.lstsq(jac, r, rcond=None)
        scale = 1.0
        while scale > 1e-12 and rss_of(c1 + scale * step[0], c2 + scale * step[1]) > rss:
            scale *= 0.5
        if rss_of(c1 + scale * step[0], c2 + scale * step[1]) > rss:
            break
        c1, c2 = c1 + scale * step[0], c2 + scale * step[1]
        rss = rss_of(c1, c2)
        if float(np.abs(step).max()) * scale < _NLS_STEP_TOL:
            break
    if c1 <= 0:
        raise ConvergenceError("hyperbola fit collapsed to non-positive c1", last_iterate={"c1": c1, "c2": c2})
    pred = c1 / (x + c2)
    rss, r2 = _r_squared(y, pred)
    return FitResult(
        parameters={"c1": float(c1), "c2": float(c2)},
        rss=rss,
        r_squared=r2,
        method="linearized+gauss_newton",
    )
