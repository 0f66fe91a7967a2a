"""Finite shadows of the representation theory of ``(GL(inf, R), O(inf))``.

The representation is the ``d``-th tensor power of the natural action,
truncated to ``R^n``.  Vectors are dense tuples of length ``n**d`` indexed
by ``d``-tuples in base ``n`` (first tensor factor most significant).

Two models of the fixed subspace ``H^alpha`` are offered:

``truncated``
    The exact joint kernel, inside ``(R^n)^{(x)d}``, of the rotation
    generators acting on coordinates ``alpha..n-1`` together with the
    reflection of the last coordinate.  For ``d = 2`` this contains the
    tail trace ``sum_{i >= alpha} e_i (x) e_i``.
``ell2``
    Only the tensors ``e_I`` with every index below ``alpha``: the vectors
    that stay fixed *and* of bounded norm as ``n`` grows.  The tail trace
    has norm ``sqrt(n - alpha)`` and drops out.

Everything is exact except :func:`spherical_phi`, which is a closed-form
floating point evaluation.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from gmpy2 import mpq

from .exact_linalg import Q, Matrix, Subspace, determinant, kernel_of_rows, matrix_inverse, zero
from .groups import FiniteSupportOperator, GroupDescriptor, GroupElement, Kind, is_pure, theta

__all__ = [
    "TruncationError",
    "TensorRep",
    "FixedData",
    "fixed_subspace",
    "rho",
    "apply_rho",
    "rho_bar",
    "RepcatReport",
    "verify_repcat",
    "repcat_min_n",
    "ThetaLimitReport",
    "theta_weak_limit_check",
    "SphericalParams",
    "spherical_phi",
    "phi_from_spectrum",
    "spectrum",
    "spherical_character_check",
    "direct_sum",
    "SPHERICAL_TOL",
    "CHARACTER_TOL",
]

SPHERICAL_TOL = 1e-9
CHARACTER_TOL = 1e-10


class TruncationError(ValueError):
    def __init__(self, message: str, min_n: int):
        super().__init__(message)
        self.min_n = min_n


@dataclass(frozen=True)
class TensorRep:
    n: int
    d: int

    def __post_init__(self):
        if self.n < 1 or self.d < 0:
            raise ValueError("need n >= 1 and d >= 0")

    @property
    def total_dim(self) -> int:
        return self.n ** self.d

    def index(self, multi: Sequence[int]) -> int:
        k = 0
        for i in multi:
            k = k * self.n + i
        return k

    def multi(self, k: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.d):
            k, r = divmod(k, self.n)
            out.append(r)
        return tuple(reversed(out))


def _generator_rows(rep: TensorRep, i: int, j: int) -> Iterable[dict]:
    """Rows of ``E_ij - E_ji`` acting as a derivation on ``rep``."""
    n, d = rep.n, rep.d
    for J in itertools.product(range(n), repeat=d):
        row = {}
        for p, jp in enumerate(J):
            if jp == i:
                src, c = j, 1
            elif jp == j:
                src, c = i, -1
            else:
                continue
            I = J[:p] + (src,) + J[p + 1:]
            k = rep.index(I)
            row[k] = row.get(k, 0) + c
        row = {k: v for k, v in row.items() if v}
        if row:
            yield row


@dataclass(frozen=True)
class FixedData:
    rep: TensorRep
    alpha: int
    subspace: Subspace
    model: str = "truncated"

    @property
    def dim(self) -> int:
        return self.subspace.dim

    @cached_property
    def gram_inverse(self) -> Matrix:
        B = self.subspace.basis
        return matrix_inverse(B @ B.T)

    @cached_property
    def projector(self) -> Matrix:
        """Exact orthogonal projection ``B^T (B B^T)^-1 B`` onto the subspace."""
        B = self.subspace.basis
        if B.rows == 0:
            return Matrix.zeros(self.rep.total_dim, self.rep.total_dim)
        return B.T @ self.gram_inverse @ B

    def coordinates(self, w: Sequence) -> tuple:
        """Coordinates of the orthogonal projection of ``w`` in the canonical basis."""
        B = self.subspace.basis
        if B.rows == 0:
            return ()
        nz = [(k, x) for k, x in enumerate(w) if x]
        bw = [sum((row[k] * x for k, x in nz), zero(Q)) for row in B.entries()]
        return self.gram_inverse.apply(bw)


_FIXED_CACHE: dict = {}


def fixed_subspace(rep: TensorRep, alpha: int, model: str = "truncated",
                   all_generators: bool = False) -> FixedData:
    """Vectors of ``rep`` fixed by every orthogonal matrix acting on coordinates ``>= alpha``.

    By default only the adjacent rotations ``E_{i,i+1} - E_{i+1,i}`` are
    imposed.  They generate the whole rotation algebra under brackets, so
    the joint kernel is the same as with every ``E_ij - E_ji``;
    ``all_generators`` imposes the full set anyway.
    """
    if not 0 <= alpha <= rep.n:
        raise ValueError(f"alpha = {alpha} outside [0, {rep.n}]")
    key = (rep, alpha, model, all_generators)
    if key in _FIXED_CACHE:
        return _FIXED_CACHE[key]
    N = rep.total_dim
    if model == "ell2":
        vecs = []
        for I in itertools.product(range(alpha), repeat=rep.d):
            v = [0] * N
            v[rep.index(I)] = 1
            vecs.append(v)
        sub = Subspace.span(vecs, N, Q)
    elif model == "truncated":
        rows: list[dict] = []
        for i in range(alpha, rep.n):
            stop = rep.n if all_generators else min(i + 2, rep.n)
            for j in range(i + 1, stop):
                rows.extend(_generator_rows(rep, i, j))
        if rep.n - alpha >= 1:
            last = rep.n - 1
            for k in range(N):
                if rep.multi(k).count(last) % 2:
                    rows.append({k: 1})
        rows = [{k: mpq(v) for k, v in r.items()} for r in rows]
        sub = kernel_of_rows(rows, N, Q)
    else:
        raise ValueError(f"unknown fixed-subspace model {model!r}")
    fd = FixedData(rep, alpha, sub, model)
    _FIXED_CACHE[key] = fd
    return fd


def _as_matrix(g, n: int) -> Matrix:
    if isinstance(g, GroupElement):
        if len(g.ops) != 1:
            raise ValueError("the harness works with single-factor elements")
        g = g.ops[0]
    if isinstance(g, FiniteSupportOperator):
        if g.support > n:
            raise TruncationError(f"support {g.support} exceeds truncation n = {n}", g.support)
        return g.padded(n)
    if g.rows > n:
        raise TruncationError(f"support {g.rows} exceeds truncation n = {n}", g.rows)
    return g.pad(n)


def apply_rho(g, rep: TensorRep, vec: Sequence) -> tuple:
    """``rho(g) vec`` computed factor by factor without forming ``rho(g)``."""
    G = _as_matrix(g, rep.n)
    n, d = rep.n, rep.d
    cols = [[(i, G[i, j]) for i in range(n) if G[i, j]] for j in range(n)]
    cur = {k: x for k, x in enumerate(vec) if x}
    for p in range(d):
        step = n ** (d - 1 - p)
        nxt: dict = {}
        for k, x in cur.items():
            digit = (k // step) % n
            base = k - digit * step
            for i, gij in cols[digit]:
                t = base + i * step
                nxt[t] = nxt.get(t, 0) + gij * x
        cur = {k: v for k, v in nxt.items() if v}
    z = zero(Q)
    return tuple(cur.get(k, z) for k in range(rep.total_dim))


def rho(g, rep: TensorRep) -> Matrix:
    """Matrix of the ``d``-th tensor power of ``g`` on ``(R^n)^{(x)d}``."""
    G = _as_matrix(g, rep.n)
    out = Matrix.identity(1, G.field)
    for _ in range(rep.d):
        out = out.kron(G)
    return out


def rho_bar(g, alpha: int, beta: int, rep: TensorRep, model: str = "truncated") -> Matrix:
    """``P^beta rho(g)`` restricted to ``H^alpha``, in the canonical bases.

    Column ``j`` holds the coordinates of ``P^beta rho(g) b_j`` where ``b_j``
    is the ``j``-th canonical basis vector of ``H^alpha``.
    """
    src = fixed_subspace(rep, alpha, model)
    dst = fixed_subspace(rep, beta, model)
    cols = [dst.coordinates(apply_rho(g, rep, b)) for b in src.subspace.vectors()]
    if not cols:
        return Matrix.zeros(dst.dim, 0)
    return Matrix(list(zip(*cols)), Q) if dst.dim else Matrix.zeros(0, len(cols))


@dataclass(frozen=True)
class RepcatReport:
    passed: bool
    n: int
    d: int
    alpha: int
    beta: int
    gamma: int
    min_n: int
    model: str
    defect: float
    dims: tuple[int, int, int]

    def __bool__(self):
        return self.passed

    def to_json(self):
        return {"identity_checked": "rho_bar(g) rho_bar(h) == rho_bar(g o h)",
                "n": self.n, "d": self.d, "alpha": self.alpha, "beta": self.beta,
                "gamma": self.gamma, "pass": self.passed, "min_n": self.min_n,
                "model": self.model, "defect": self.defect, "dims": list(self.dims)}


def repcat_min_n(g, h, gh) -> int:
    """Smallest truncation that holds ``g``, ``h``, their product and all three objects."""
    return max(g.rep.support, h.rep.support, gh.rep.support,
               g.beta[0], g.alpha[0], h.alpha[0], 1)


def verify_repcat(g, h, rep: TensorRep, model: str = "truncated") -> RepcatReport:
    """Exact check of ``rho_bar(g) rho_bar(h) = rho_bar(g o h)`` at truncation ``rep.n``.

    ``g`` and ``h`` are composable double cosets of the ``(GL_R, O)`` pair.
    Raises :class:`TruncationError` (carrying ``min_n``) when ``rep.n`` is
    too small to hold the data.
    """
    from .train import coset_compose
    pair = g.pair
    if pair.G.kind != Kind.GL_R or pair.index_arity != 1 or not is_pure(pair) or h.pair != pair:
        raise ValueError("the harness is implemented for the (GL_R, O) pair")
    gh = coset_compose(g, h)
    min_n = repcat_min_n(g, h, gh)
    if rep.n < min_n:
        raise TruncationError(f"truncation n = {rep.n} too small; need n >= {min_n}", min_n)
    gamma, beta, alpha = g.beta[0], g.alpha[0], h.alpha[0]
    lhs = rho_bar(g.rep, beta, gamma, rep, model) @ rho_bar(h.rep, alpha, beta, rep, model)
    rhs = rho_bar(gh.rep, alpha, gamma, rep, model)
    diff = lhs - rhs
    defect = diff.max_abs() if diff.rows and diff.cols else 0.0
    dims = tuple(fixed_subspace(rep, x, model).dim for x in (alpha, beta, gamma))
    return RepcatReport(lhs == rhs, rep.n, rep.d, alpha, beta, gamma, min_n, model, defect, dims)


@dataclass(frozen=True)
class ThetaLimitReport:
    n: int
    d: int
    alpha: int
    model: str
    identity_at: dict = field(default_factory=dict)
    stable_from: int | None = None
    equals_identity: bool = False

    @property
    def passed(self) -> bool:
        return self.stable_from is not None and self.equals_identity

    def to_json(self):
        return {"n": self.n, "d": self.d, "alpha": self.alpha, "model": self.model,
                "identity_at": {str(k): v for k, v in self.identity_at.items()},
                "stable_from": self.stable_from, "equals_identity": self.equals_identity,
                "pass": self.passed}


def theta_weak_limit_check(rep: TensorRep, alpha: int, m_range: Iterable[int],
                           model: str = "truncated") -> ThetaLimitReport:
    """Compress ``rho(Theta_m)`` to ``H^alpha`` for each ``m`` and compare across ``m``."""
    ms = list(m_range)
    if not ms:
        raise ValueError("empty m range")
    if alpha + 2 * max(ms) > rep.n:
        raise TruncationError(f"alpha + 2m = {alpha + 2 * max(ms)} exceeds n = {rep.n}",
                              alpha + 2 * max(ms))
    mats = {m: rho_bar(theta(alpha, m), alpha, alpha, rep, model) for m in ms}
    stable_from = None
    for m in ms:
        if all(mats[k] == mats[m] for k in ms if k >= m):
            stable_from = m
            break
    final = mats[ms[-1]]
    return ThetaLimitReport(rep.n, rep.d, alpha, model,
                            {m: mats[m].is_identity() for m in ms}, stable_from,
                            final.is_identity())


# ---------------------------------------------------------------------------
# spherical functions


@dataclass(frozen=True)
class SphericalParams:
    s: tuple[float, ...] = ()
    a: float = 0.0
    sigma: int = 0

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(float(x) for x in self.s))
        object.__setattr__(self, "a", float(self.a))
        if self.sigma not in (0, 1):
            raise ValueError("sigma must be 0 or 1")


def _core(g) -> Matrix:
    if isinstance(g, GroupElement):
        g = g.ops[0]
    if isinstance(g, FiniteSupportOperator):
        return g.core
    return g


def phi_from_spectrum(params: SphericalParams, singular_values: Sequence[float],
                      abs_det: float, det_sign: int) -> complex:
    """The spherical function expressed through singular values and the determinant."""
    value = complex(1.0, 0.0)
    if params.a:
        value *= cmath.exp(1j * params.a * math.log(abs_det))
    if params.sigma and det_sign < 0:
        value = -value
    for lam in singular_values:
        if abs(lam - 1.0) < 1e-13:
            continue
        for s in params.s:
            factor = (1 + 1j * s) / 2 * lam + (1 - 1j * s) / 2 / lam
            value *= factor ** -0.5
    # adding 0.0 turns a negative zero into a positive one
    return complex(value.real + 0.0, value.imag + 0.0)


def spectrum(g) -> tuple[np.ndarray, float, int]:
    """Singular values (float), ``|det|`` and the sign of ``det`` of the core of ``g``."""
    core = _core(g)
    if core.field != Q:
        raise ValueError("spherical functions are evaluated on real (rational) matrices")
    if core.rows == 0:
        return np.zeros(0), 1.0, 1
    det = determinant(core)
    if not det:
        raise ValueError("singular matrix")
    arr = np.array([[float(x) for x in r] for r in core.entries()], dtype=float)
    try:
        sv = np.linalg.svd(arr, compute_uv=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - numpy rarely fails here
        raise ValueError(f"singular value decomposition failed: {exc}") from exc
    if not np.all(np.isfinite(sv)) or sv.min() <= 0 or sv.max() / sv.min() > 1e12:
        raise ValueError("matrix too ill-conditioned for a reliable evaluation")
    return sv, abs(float(det)), 1 if det > 0 else -1


def spherical_phi(params: SphericalParams, g) -> complex:
    """Closed-form spherical function of ``(GL(inf, R), O(inf))`` at ``g``.

    Singular values equal to 1 contribute a factor 1 and are skipped, so
    the identity gives exactly ``1``.  The square root is the principal one.
    """
    sv, abs_det, sign = spectrum(g)
    return phi_from_spectrum(params, sv, abs_det, sign)


def direct_sum(g, h) -> FiniteSupportOperator:
    """``g`` on the first coordinates and ``h`` right after them."""
    a, b = _core(g), _core(h)
    n = a.rows + b.rows
    z = zero(Q)
    rows = [[z] * n for _ in range(n)]
    for i in range(a.rows):
        for j in range(a.rows):
            rows[i][j] = a[i, j]
    for i in range(b.rows):
        for j in range(b.rows):
            rows[a.rows + i][a.rows + j] = b[i, j]
    return FiniteSupportOperator(GroupDescriptor(Kind.GL_R), Matrix(rows, Q) if rows else Matrix.zeros(0, 0))


def spherical_character_check(params: SphericalParams, g, h, tol: float = CHARACTER_TOL) -> bool:
    """``Phi(g (+) h) == Phi(g) Phi(h)`` within ``tol``."""
    return abs(spherical_phi(params, direct_sum(g, h)) - spherical_phi(params, g) * spherical_phi(params, h)) < tol
