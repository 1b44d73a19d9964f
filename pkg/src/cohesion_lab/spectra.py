"""Laplacian variants, spectra, algebraic connectivity, bounds, trade-off metrics.

Three operators are supported for a graph with adjacency A and degree
matrix D:

* binary          L     = D - A
* row_normalized  Lrw   = I - W,  w_ij = a_ij / sum_j a_ij
* sym_normalized  Lnor  = I - D^(-1/2) A D^(-1/2)

Lrw is similar to Lnor (Lrw = D^(-1/2) Lnor D^(1/2)), so its spectrum is
computed through the symmetric form; the non-symmetric matrix never reaches
the eigensolver.
"""

import enum
import io
from dataclasses import dataclass

import numpy as np

from . import eigen
from .errors import DomainError
from .graphs import Graph, connected_components, distance_summary, is_connected, vertex_connectivity

MAX_DENSE_N = 2048
ZERO_EIGENVALUE_RTOL = 1e-8


class LaplacianKind(enum.Enum):
    BINARY = "binary"
    ROW_NORMALIZED = "rownorm"
    SYM_NORMALIZED = "symnorm"

    @classmethod
    def parse(cls, name: str) -> "LaplacianKind":
        aliases = {
            "binary": cls.BINARY,
            "rownorm": cls.ROW_NORMALIZED,
            "row_normalized": cls.ROW_NORMALIZED,
            "symnorm": cls.SYM_NORMALIZED,
            "sym_normalized": cls.SYM_NORMALIZED,
        }
        try:
            return aliases[name.lower()]
        except KeyError:
            raise DomainError(f"unknown laplacian kind {name!r}") from None


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues with orthonormal eigenvectors (columns)."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    kind: LaplacianKind = None

    @property
    def n(self) -> int:
        return self.eigenvalues.size

    @property
    def lambda2(self) -> float:
        return float(self.eigenvalues[1])

    def zero_multiplicity(self) -> int:
        scale = max(float(self.eigenvalues[-1]), 1.0)
        return int(np.sum(np.abs(self.eigenvalues) < ZERO_EIGENVALUE_RTOL * scale))


def adjacency_matrix(g: Graph, weighted: bool = True) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v, w in g.edges:
        val = w if weighted else 1.0
        a[u, v] = val
        if not g.directed:
            a[v, u] = val
    return a


def symmetrize(a: np.ndarray, policy: str = "intersection") -> np.ndarray:
    """Resolve one-directional ties: keep mutual ties only, or their union."""
    if policy == "intersection":
        return np.minimum(a, a.T)
    if policy == "union":
        return np.maximum(a, a.T)
    raise DomainError(f"unknown direction policy {policy!r}")


def laplacian(
    g: Graph,
    kind: LaplacianKind = LaplacianKind.BINARY,
    weighted: bool = True,
    direction_policy: str = "intersection",
) -> np.ndarray:
    """Build the requested Laplacian; directed inputs are symmetrized first."""
    kind = kind if isinstance(kind, LaplacianKind) else LaplacianKind.parse(kind)
    a = adjacency_matrix(g, weighted=weighted)
    if g.directed:
        a = symmetrize(a, direction_policy)
    deg = a.sum(axis=1)
    if kind is LaplacianKind.BINARY:
        return np.diag(deg) - a
    if np.any(deg <= 0):
        isolated = int(np.argmax(deg <= 0))
        raise DomainError(
            f"{kind.value} laplacian requires degree >= 1 everywhere; node {isolated} is isolated"
        )
    if kind is LaplacianKind.ROW_NORMALIZED:
        return np.eye(g.n) - a / deg[:, None]
    inv_sqrt = 1.0 / np.sqrt(deg)
    return np.eye(g.n) - (a * inv_sqrt[:, None]) * inv_sqrt[None, :]


def _symmetric_operator(g: Graph, kind: LaplacianKind, weighted=True, direction_policy="intersection"):
    """The symmetric matrix whose spectrum equals laplacian(g, kind)'s."""
    if kind is LaplacianKind.ROW_NORMALIZED:
        return laplacian(g, LaplacianKind.SYM_NORMALIZED, weighted, direction_policy)
    return laplacian(g, kind, weighted, direction_policy)


def eigen_sym(m: np.ndarray, kind: LaplacianKind = None) -> Spectrum:
    """Full eigendecomposition of a symmetric matrix (ascending order)."""
    m = np.asarray(m, dtype=float)
    if m.shape[0] > MAX_DENSE_N:
        raise DomainError(f"dense eigensolver capped at n = {MAX_DENSE_N}, got {m.shape[0]}")
    w, v = eigen.eigh(m)
    return Spectrum(eigenvalues=w, eigenvectors=v, kind=kind)


def spectrum(g: Graph, kind: LaplacianKind = LaplacianKind.BINARY, **kw) -> Spectrum:
    """Spectrum of the chosen Laplacian; row-normalized goes via the similarity."""
    kind = kind if isinstance(kind, LaplacianKind) else LaplacianKind.parse(kind)
    return eigen_sym(_symmetric_operator(g, kind, **kw), kind=kind)


def algebraic_connectivity(g: Graph, kind: LaplacianKind = LaplacianKind.BINARY, **kw) -> float:
    """Second-smallest Laplacian eigenvalue; 0 for disconnected graphs."""
    kind = kind if isinstance(kind, LaplacianKind) else LaplacianKind.parse(kind)
    m = _symmetric_operator(g, kind, **kw)
    if m.shape[0] > MAX_DENSE_N:
        raise DomainError(f"dense eigensolver capped at n = {MAX_DENSE_N}, got {m.shape[0]}")
    w = eigen.eigvalsh(m)
    lam2 = float(w[1])
    return 0.0 if abs(lam2) < ZERO_EIGENVALUE_RTOL * max(float(w[-1]), 1.0) else lam2


def fiedler_pair(g: Graph, kind: LaplacianKind = LaplacianKind.BINARY, **kw):
    """(lambda2, fiedler vector) of the chosen Laplacian.

    For the row-normalized operator the returned vector is the similarity
    image v = D^(-1/2) u of the symmetric eigenvector u, i.e. an actual
    eigenvector of the non-symmetric matrix.
    """
    kind = kind if isinstance(kind, LaplacianKind) else LaplacianKind.parse(kind)
    spec = spectrum(g, kind, **kw)
    vec = spec.eigenvectors[:, 1].copy()
    if kind is LaplacianKind.ROW_NORMALIZED:
        a = adjacency_matrix(g, weighted=kw.get("weighted", True))
        if g.directed:
            a = symmetrize(a, kw.get("direction_policy", "intersection"))
        deg = a.sum(axis=1)
        vec = vec / np.sqrt(deg)
    return spec.lambda2, vec


# ---------------------------------------------------------------------------
# analytic bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    """lambda2 of the binary Laplacian against its analytic bounds.

    satisfied maps bound name -> bool, or None where a comparison is skipped
    (kappa/k_min only apply to non-complete graphs).
    """

    lambda2: float
    eq5_bound: float
    diameter_bound: float
    kappa: int
    k_min: int
    complete: bool
    satisfied: dict


_BOUND_SLACK = 1e-9


def bound_report(g: Graph) -> BoundReport:
    """Evaluate the distance and connectivity bounds on a connected graph.

    Uses the unweighted (0/1) adjacency: the bound theory is stated for
    symmetric binary matrices.
    """
    if not is_connected(g):
        raise DomainError("bound_report requires a connected graph")
    if g.n < 2:
        raise DomainError("bound_report needs at least 2 nodes")
    lam2 = algebraic_connectivity(g, LaplacianKind.BINARY, weighted=False)
    ds = distance_summary(g)
    eq5 = 2.0 / ((g.n - 1) * ds.mean_distance - 0.5 * (g.n - 2))
    diam = 4.0 / (g.n * ds.diameter)
    kappa = vertex_connectivity(g)
    k_min = min(g.degree(u) for u in range(g.n))
    complete = g.is_complete()
    satisfied = {
        "eq5_lower": lam2 >= eq5 - _BOUND_SLACK,
        "diameter_lower": lam2 >= diam - _BOUND_SLACK,
        "kappa_upper": None if complete else lam2 <= kappa + _BOUND_SLACK,
        "kmin_upper": None if complete else (lam2 <= k_min + _BOUND_SLACK and kappa <= k_min),
    }
    return BoundReport(
        lambda2=lam2,
        eq5_bound=eq5,
        diameter_bound=diam,
        kappa=kappa,
        k_min=k_min,
        complete=complete,
        satisfied=satisfied,
    )


# ---------------------------------------------------------------------------
# propagator trade-off metrics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TradeoffMetrics:
    """Diffusion-time trade-off diagnostics of the normalized propagator.

    rho eigenvalues p_k = exp(-t lambda_k) / sum_j exp(-t lambda_j) form a
    probability distribution; entropy is their Shannon/von Neumann entropy;
    Z = Tr(exp(-L t)) / n (positive trace convention); F = -log(Z)/t measures
    communication speed; Q and V are the exact time-derivatives of entropy
    and F; eta = 1 - |Q|/V.
    """

    t: float
    partition_function: float
    entropy: float
    communication_speed: float
    entropy_rate: float
    speed_rate: float
    eta: float
    rho_eigenvalues: tuple


def tradeoff_metrics(g: Graph, kind: LaplacianKind, t: float, **kw) -> TradeoffMetrics:
    if t <= 0:
        raise DomainError("tradeoff_metrics requires t > 0")
    if not is_connected(g):
        raise DomainError("tradeoff_metrics requires a connected graph")
    kind = kind if isinstance(kind, LaplacianKind) else LaplacianKind.parse(kind)
    lam = eigen.eigvalsh(_symmetric_operator(g, kind, **kw))
    shifted = lam - lam[0]
    expw = np.exp(-t * shifted)
    s = float(expw.sum())
    p = expw / s
    # absolute trace needs the unshifted eigenvalues
    z = float(np.exp(-t * lam[0]) * s / g.n)
    entropy = float(-(p * np.log(np.where(p > 0, p, 1.0))).sum())
    f = -np.log(z) / t
    mu = float((p * lam).sum())
    var = float((p * (lam - mu) ** 2).sum())
    q = -t * var           # d entropy / dt, from entropy = t*mu + log(S)
    v = (mu - f) / t       # dF/dt, from t*F = log(n) - log(S)
    if abs(v) < 1e-12:
        raise DomainError(f"eta undefined: V = {v:.3e} vanishes at t = {t}")
    eta = 1.0 - abs(q) / v
    return TradeoffMetrics(
        t=t,
        partition_function=z,
        entropy=entropy,
        communication_speed=float(f),
        entropy_rate=float(q),
        speed_rate=float(v),
        eta=float(eta),
        rho_eigenvalues=tuple(float(x) for x in p),
    )


def component_count_spectral(g: Graph) -> int:
    """Component count as the zero-eigenvalue multiplicity of the binary Laplacian."""
    return spectrum(g, LaplacianKind.BINARY, weighted=False).zero_multiplicity()


def components_match_spectrum(g: Graph) -> bool:
    return connected_components(g)[0] == component_count_spectral(g)


# ---------------------------------------------------------------------------
# CSV export
# ---------------------------------------------------------------------------

def matrix_to_csv(m: np.ndarray, kind: LaplacianKind = None) -> str:
    buf = io.StringIO()
    label = kind.value if isinstance(kind, LaplacianKind) else (kind or "matrix")
    buf.write(f"# kind={label} n={m.shape[0]}\n")
    for row in np.asarray(m):
        buf.write(",".join(repr(float(x)) for x in row) + "\n")
    return buf.getvalue()


def spectrum_to_csv(spec: Spectrum) -> str:
    buf = io.StringIO()
    label = spec.kind.value if spec.kind else "matrix"
    buf.write(f"# kind={label} n={spec.n}\n")
    buf.write("index,eigenvalue\n")
    for i, lam in enumerate(spec.eigenvalues):
        buf.write(f"{i},{float(lam)!r}\n")
    return buf.getvalue()
