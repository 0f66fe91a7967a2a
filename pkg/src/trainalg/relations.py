"""Linear relations and the characteristic function of a double coset.

A relation ``a -> b`` is a subspace of ``F^b (+) F^a``, codomain coordinates
first.  The characteristic function at a point ``lam`` of the projective
line is the relation ``(q+, q-) -> (p+, p-)`` cut out by::

    (p+, lam*x) = g (q+, y)        (p-, x) = adj(g) (q-, lam*y)

for some tail vectors ``x``, ``y``.  Here ``adj(g)`` is the inverse
transpose, or the inverse conjugate transpose when the heavy subgroup
acts unitarily (so that multiplying by it from either side preserves the
relation).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from gmpy2 import mpq

from .exact_linalg import (
    Q,
    Matrix,
    Subspace,
    ShapeError,
    coordinate_project,
    kernel_of_rows,
    one,
    to_scalar,
    zero,
)

__all__ = [
    "LinearRelation",
    "ProjectivePoint",
    "LAMBDA_SAMPLES",
    "graph_of",
    "identity_relation",
    "relation_compose",
    "direct_sum",
    "chi_block",
    "char_function",
    "char_multiplicativity_check",
    "isotropy_defect",
    "chi_isotropy_defect",
    "chi_rationality_check",
]


@dataclass(frozen=True)
class ProjectivePoint:
    """Homogeneous ``(num : den)``; ``den == 0`` is the point at infinity."""

    num: object
    den: object = 1

    def __post_init__(self):
        n, d = mpq(self.num), mpq(self.den)
        if not n and not d:
            raise ValueError("(0 : 0) is not a projective point")
        # canonical representative so equal points compare equal
        if d:
            n, d = n / d, mpq(1)
        else:
            n = mpq(1)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    @classmethod
    def parse(cls, text: str) -> "ProjectivePoint":
        t = text.strip().lower()
        if t in ("inf", "infinity", "oo"):
            return cls(1, 0)
        if ":" in t:
            a, b = t.split(":")
            return cls(mpq(a), mpq(b))
        return cls(mpq(t), 1)

    @property
    def is_infinite(self) -> bool:
        return not self.den

    def __str__(self):
        return "inf" if self.is_infinite else str(self.num)

    def to_json(self):
        return [str(self.num), str(self.den)]


LAMBDA_SAMPLES: tuple[ProjectivePoint, ...] = (
    ProjectivePoint(2), ProjectivePoint(3), ProjectivePoint(mpq(5, 2)),
    ProjectivePoint(mpq(7, 3)), ProjectivePoint(-2), ProjectivePoint(1, 0),
)


@dataclass(frozen=True)
class LinearRelation:
    dom_dim: int
    cod_dim: int
    graph: Subspace

    def __post_init__(self):
        if self.graph.ambient_dim != self.dom_dim + self.cod_dim:
            raise ShapeError("graph ambient dimension must be cod_dim + dom_dim")

    @property
    def field(self) -> str:
        return self.graph.field

    @property
    def dim(self) -> int:
        return self.graph.dim

    def __eq__(self, other):
        if not isinstance(other, LinearRelation):
            return NotImplemented
        return (self.dom_dim, self.cod_dim) == (other.dom_dim, other.cod_dim) and \
            self.graph.basis == other.graph.basis

    def __hash__(self):
        return hash((self.dom_dim, self.cod_dim, self.graph.basis))

    def to_json(self):
        return {"dom": self.dom_dim, "cod": self.cod_dim, "basis": self.graph.basis.to_json()}


def graph_of(m: Matrix) -> LinearRelation:
    """Graph ``{(m x, x)}`` of a linear map."""
    vecs = []
    for j in range(m.cols):
        col = list(m.col(j))
        e = [zero(m.field)] * m.cols
        e[j] = one(m.field)
        vecs.append(col + e)
    return LinearRelation(m.cols, m.rows, Subspace.span(vecs, m.rows + m.cols, m.field))


def identity_relation(n: int, field: str = Q) -> LinearRelation:
    return graph_of(Matrix.identity(n, field))


def _annihilator_rows(s: Subspace, offset: int) -> list[dict]:
    rows = []
    for w in s.annihilator().entries():
        rows.append({offset + j: x for j, x in enumerate(w) if x})
    return rows


def relation_compose(s: LinearRelation, r: LinearRelation) -> LinearRelation:
    """``s o r``: pairs (z, x) with (y, x) in r and (z, y) in s for some y."""
    if r.cod_dim != s.dom_dim:
        raise ShapeError(f"cannot compose: {r.cod_dim} != {s.dom_dim}")
    if r.field != s.field:
        raise ShapeError("relations over different fields")
    c, b, a = s.cod_dim, s.dom_dim, r.dom_dim
    # coordinates (z | y | x): s lives on the first c+b, r on the last b+a
    cons = _annihilator_rows(s.graph, 0) + _annihilator_rows(r.graph, c)
    joint = kernel_of_rows(cons, c + b + a, s.field)
    keep = list(range(c)) + list(range(c + b, c + b + a))
    return LinearRelation(a, c, coordinate_project(joint, keep))


def direct_sum(rels: Sequence[LinearRelation]) -> LinearRelation:
    """Block-diagonal relation; coordinates are (cod_1, ..., cod_k, dom_1, ..., dom_k)."""
    if len(rels) == 1:
        return rels[0]
    field = rels[0].field
    C = sum(r.cod_dim for r in rels)
    A = sum(r.dom_dim for r in rels)
    vecs = []
    co = do = 0
    for r in rels:
        for v in r.graph.vectors():
            w = [zero(field)] * (C + A)
            w[co:co + r.cod_dim] = v[:r.cod_dim]
            w[C + do:C + do + r.dom_dim] = v[r.cod_dim:]
            vecs.append(w)
        co += r.cod_dim
        do += r.dom_dim
    return LinearRelation(A, C, Subspace.span(vecs, C + A, field))


def chi_block(g: Matrix, adj: Matrix, head_rows: Sequence[int], head_cols: Sequence[int],
              lam: ProjectivePoint) -> LinearRelation:
    """Characteristic relation of a single square matrix with a chosen head.

    Unknowns are ordered ``p+, p-, q+, q-, xi, eta``, with ``x = l1*xi``,
    ``lam*x = l0*xi`` and likewise for ``y`` and ``eta``, so the point at
    infinity needs no special case.
    """
    n = g.rows
    fld = g.field
    l0, l1 = to_scalar(lam.num, fld), to_scalar(lam.den, fld)
    hr, hc = list(head_rows), list(head_cols)
    hr_set, hc_set = set(hr), set(hc)
    tr = [i for i in range(n) if i not in hr_set]
    tc = [j for j in range(n) if j not in hc_set]
    b, a = len(hr), len(hc)
    P_PLUS, P_MINUS, Q_PLUS, Q_MINUS = 0, b, 2 * b, 2 * b + a
    XI = 2 * b + 2 * a
    ETA = XI + len(tr)
    total = ETA + len(tc)
    rpos = {i: k for k, i in enumerate(hr)}
    tpos = {i: k for k, i in enumerate(tr)}
    col_h = list(enumerate(hc))
    col_t = list(enumerate(tc))
    o = one(fld)
    rows = []
    for mat, qh, yscale, outscale_p, outscale_t in (
        (g, Q_PLUS, l1, P_PLUS, l0),
        (adj, Q_MINUS, l0, P_MINUS, l1),
    ):
        for i in range(n):
            r = {}
            gi = mat.row(i)
            for k, j in col_h:
                if gi[j]:
                    r[qh + k] = gi[j]
            if yscale:
                for k, j in col_t:
                    if gi[j]:
                        r[ETA + k] = yscale * gi[j]
            if i in rpos:
                r[outscale_p + rpos[i]] = -o
            elif outscale_t:
                r[XI + tpos[i]] = -outscale_t
            rows.append(r)
    sol = kernel_of_rows(rows, total, fld)
    return LinearRelation(2 * a, 2 * b, coordinate_project(sol, range(XI)))


def char_function(coset, lam: ProjectivePoint, rows: int | None = None) -> LinearRelation:
    """Characteristic relation ``2*alpha -> 2*beta`` of a double coset at ``lam``.

    Product pairs give the direct sum of the per-factor relations.
    """
    from .train import chi_data
    parts = [chi_block(g, adj, hr, hc, lam) for g, adj, hr, hc in chi_data(coset, rows)]
    return direct_sum(parts)


def char_multiplicativity_check(g, h, lambdas: Iterable[ProjectivePoint] = LAMBDA_SAMPLES) -> bool:
    from .train import coset_compose
    gh = coset_compose(g, h)
    for lam in lambdas:
        lhs = char_function(gh, lam)
        rhs = relation_compose(char_function(g, lam), char_function(h, lam))
        if lhs != rhs:
            return False
    return True


def isotropy_defect(rel: LinearRelation, hermitian: bool = False) -> int:
    """Number of basis pairs on which the form
    ``(p+ . p-' - p- . p+') - (q+ . q-' - q- . q+')`` fails to vanish.

    With ``hermitian`` the second argument is conjugated.  Zero means the
    relation is isotropic.  Only meaningful for a single-factor relation
    from :func:`chi_block`.
    """
    from .exact_linalg import conj
    b, a = rel.cod_dim // 2, rel.dom_dim // 2
    vecs = rel.graph.vectors()
    if hermitian:
        other = [tuple(conj(x) for x in v) for v in vecs]
    else:
        other = vecs
    bad = 0

    def form(u, v):
        s = sum(u[i] * v[b + i] - u[b + i] * v[i] for i in range(b))
        q = 2 * b
        s -= sum(u[q + i] * v[q + a + i] - u[q + a + i] * v[q + i] for i in range(a))
        return s

    for i, u in enumerate(vecs):
        for v in other[i:]:
            if form(u, v):
                bad += 1
    return bad


def chi_isotropy_defect(coset, lam: ProjectivePoint) -> int:
    """Isotropy diagnostic of the characteristic function, factor by factor."""
    from .groups import Kind
    from .train import chi_data
    heavy = coset.pair.G.maximal_heavy().simple_factors()
    total = 0
    for (g, adj, hr, hc), k in zip(chi_data(coset), heavy):
        total += isotropy_defect(chi_block(g, adj, hr, hc, lam), hermitian=k.kind == Kind.U)
    return total


def _fits_rational(xs, vs, degree, xt, vt) -> bool:
    """Does some ``P/Q`` with ``deg P, deg Q <= degree`` through ``(xs, vs)`` also pass ``(xt, vt)``?"""
    rows = []
    for x, v in zip(xs, vs):
        r = {}
        for k in range(degree + 1):
            r[k] = x ** k
            if v:
                r[degree + 1 + k] = -v * x ** k
        rows.append({k: c for k, c in r.items() if c})
    sol = kernel_of_rows(rows, 2 * degree + 2, Q)
    for vec in sol.vectors():
        for x, v in zip(xt, vt):
            p = sum(vec[k] * x ** k for k in range(degree + 1))
            q = sum(vec[degree + 1 + k] * x ** k for k in range(degree + 1))
            if p != v * q:
                return False
    return sol.dim > 0


def chi_rationality_check(coset, degree: int | None = None, extra: int = 4) -> bool | None:
    """Fit each canonical basis entry of ``chi(lam)`` by a rational function and predict more points.

    ``degree`` defaults to twice the support.  The fit uses ``2*degree + 1``
    rational points and is tested on ``extra`` further ones.  Returns None
    when the echelon pivot pattern changes across the points, since entries
    are then not a single function of ``lam``.
    """
    if coset.pair.G.field != Q:
        raise ValueError("the rationality check samples rational lambda on real pairs")
    if degree is None:
        degree = 2 * max(coset.rep.support, 1)
    n_fit = 2 * degree + 1
    pts = [mpq(k + 7, 3) for k in range(n_fit + extra)]
    rels = [char_function(coset, ProjectivePoint(p)) for p in pts]
    if len({r.graph.pivot_cols for r in rels}) > 1:
        return None
    mats = [r.graph.basis for r in rels]
    for i in range(mats[0].rows):
        for j in range(mats[0].cols):
            vs = [m[i, j] for m in mats]
            if not _fits_rational(pts[:n_fit], vs[:n_fit], degree, pts[n_fit:], vs[n_fit:]):
                return False
    return True
