"""Double cosets ``L^beta \\ G / L^alpha`` and their stabilized product.

The product of ``g`` (gamma <- beta) and ``h`` (beta <- alpha) is the class
of ``g * Theta_m * h`` where ``Theta_m`` swaps the two slot-row blocks
``[beta, beta+m)`` and ``[beta+m, beta+2m)`` of every L-factor.  Once ``m``
exceeds both supports the class no longer depends on ``m``.  The
representative returned by :func:`coset_compose` is then permuted into the
block shape ``[[AP, B, AQ], [CP, D, CQ], [R, 0, T]]`` slot by slot and
stripped of trailing identity rows.

Equality of double cosets has no closed-form test.  :func:`coset_eq`
refutes with invariants (the head corner and the characteristic function
at fixed sample points) and confirms with an explicit signed-permutation
witness when a bounded search finds one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .exact_linalg import GaussRat, Matrix, norm2, one, zero
from .groups import (
    FiniteSupportOperator,
    FactorLayout,
    GroupElement,
    Kind,
    PairDescriptor,
    embed_in_pair,
    is_member,
    is_pure,
    pair_preset,
    permutation_matrix,
    signed_permutation_matrix,
    theta_perm,
)
from .relations import (
    LAMBDA_SAMPLES,
    LinearRelation,
    ProjectivePoint,
    char_function,
)

__all__ = [
    "IndexMismatchError",
    "DoubleCoset",
    "coset_compose",
    "block_product",
    "compose_u2_interleaved",
    "involution",
    "unit",
    "unit_lambda",
    "unit_mu",
    "psi",
    "CosetInvariants",
    "coset_invariants",
    "chi_data",
    "Verdict",
    "SignedPerm",
    "Witness",
    "EqResult",
    "coset_eq",
    "find_witness",
    "apply_witness",
    "embedded_theta",
    "random_stabilizer",
    "center_witness",
    "commutativity_witness",
    "shift",
    "shifted_coset",
    "projection_pi",
    "group_to_mantle",
    "mantle_compose",
    "slot_rows",
]


class IndexMismatchError(ValueError):
    pass


def slot_rows(pair: PairDescriptor, elem: GroupElement) -> int:
    """Number of slot rows needed to cover the support of every factor."""
    return max((lay.rows_needed(op.support) for lay, op in zip(pair.layouts, elem.ops)), default=0)


def _padded(pair: PairDescriptor, elem: GroupElement, rows: int) -> list[Matrix]:
    return [op.padded(lay.size(rows)) for lay, op in zip(pair.layouts, elem.ops)]


def _from_mats(pair: PairDescriptor, mats: Sequence[Matrix]) -> GroupElement:
    return GroupElement(pair.G, tuple(FiniteSupportOperator(f, m)
                                      for f, m in zip(pair.G.simple_factors(), mats)))


@dataclass(frozen=True)
class DoubleCoset:
    """Class of ``rep`` in ``L^beta \\ G / L^alpha``; a morphism alpha -> beta."""

    pair: PairDescriptor
    beta: tuple[int, ...]
    alpha: tuple[int, ...]
    rep: GroupElement

    def __post_init__(self):
        b, a = tuple(int(x) for x in self.beta), tuple(int(x) for x in self.alpha)
        object.__setattr__(self, "beta", b)
        object.__setattr__(self, "alpha", a)
        k = self.pair.index_arity
        if len(b) != k or len(a) != k:
            raise IndexMismatchError(f"multi-indices must have {k} entries")
        if any(x < 0 for x in a + b):
            raise IndexMismatchError("multi-index entries must be non-negative")
        if self.rep.group != self.pair.G:
            raise IndexMismatchError(f"representative lies in {self.rep.group}, pair needs {self.pair.G}")

    @classmethod
    def of(cls, pair: PairDescriptor | str, beta, alpha, mats) -> "DoubleCoset":
        if isinstance(pair, str):
            pair = pair_preset(pair)
        if isinstance(beta, int):
            beta = (beta,)
        if isinstance(alpha, int):
            alpha = (alpha,)
        return cls(pair, tuple(beta), tuple(alpha), GroupElement.from_matrices(pair.G, mats))

    @property
    def rows(self) -> int:
        return max(slot_rows(self.pair, self.rep), max(self.beta), max(self.alpha))

    def matrices(self, rows: int | None = None) -> list[Matrix]:
        return _padded(self.pair, self.rep, self.rows if rows is None else max(rows, self.rows))

    def validate(self) -> None:
        if not is_member(self.rep):
            raise ValueError("representative is not an element of G")

    def to_json(self):
        return {"pair": self.pair.to_json(), "alpha": list(self.alpha), "beta": list(self.beta),
                "rep": self.rep.to_json()}

    @classmethod
    def from_json(cls, obj) -> "DoubleCoset":
        from .exact_linalg import Matrix as _M
        pair = PairDescriptor.from_json(obj.get("pair", "GL_R/O"))
        rep = obj["rep"]
        if isinstance(rep, dict):
            rep = [rep]
        mats = [_M.from_json(m) for m in rep]
        alpha, beta = obj["alpha"], obj["beta"]
        if isinstance(alpha, int):
            alpha = [alpha]
        if isinstance(beta, int):
            beta = [beta]
        return cls(pair, tuple(beta), tuple(alpha), GroupElement.from_matrices(pair.G, mats))


# ---------------------------------------------------------------------------
# composition


def _theta_perms(pair: PairDescriptor, beta: Sequence[int], m: int, rows: int) -> dict[int, list[int]]:
    out = {}
    for k, b in enumerate(beta):
        p = theta_perm(b, m)
        out[k] = p + list(range(len(p), rows))
    return out


def _normal_orders(b: int, a: int, ng: int, nh: int, m: int, rows: int):
    """Slot-row orders bringing ``g Theta_m h`` to the stabilized block shape."""
    row_main = list(range(ng)) + list(range(b + m, m + nh))
    col_main = list(range(a)) + list(range(b + m, m + ng)) + list(range(a, nh))
    used = set(row_main)
    left_rows = [r for r in range(rows) if r not in used]
    left_cols = []
    for r in left_rows:
        if ng <= r < b + m:
            left_cols.append(r + m)
        elif m + nh <= r < b + 2 * m:
            left_cols.append(r - m)
        else:
            left_cols.append(r)
    return row_main + left_rows, col_main + left_cols


def coset_compose(g: DoubleCoset, h: DoubleCoset, m: int | None = None,
                  normalize: bool = True) -> DoubleCoset:
    """``g o h`` for ``g: beta -> gamma`` and ``h: alpha -> beta``.

    ``m`` defaults to the larger of the two slot-row supports.  With
    ``normalize=False`` the raw product ``g Theta_m h`` is returned.
    """
    if g.pair != h.pair:
        raise IndexMismatchError("cosets belong to different pairs")
    if g.alpha != h.beta:
        raise IndexMismatchError(f"cannot compose: source {g.alpha} != target {h.beta}")
    pair = g.pair
    gamma, beta, alpha = g.beta, g.alpha, h.alpha
    ng = max(slot_rows(pair, g.rep), max(gamma), max(beta))
    nh = max(slot_rows(pair, h.rep), max(beta), max(alpha))
    m_min = max(ng - min(beta), nh - min(beta), 1)
    if m is None:
        m = max(ng, nh, 1)
    elif m < m_min:
        raise ValueError(f"m = {m} is below the stable range (needs m >= {m_min})")
    rows = max(beta) + 2 * m
    gm, hm = _padded(pair, g.rep, rows), _padded(pair, h.rep, rows)
    thetas = _theta_perms(pair, beta, m, rows)
    if normalize:
        orders = [_normal_orders(b, a, ng, nh, m, rows) for b, a in zip(beta, alpha)]
        row_ord = {k: o[0] for k, o in enumerate(orders)}
        col_ord = {k: o[1] for k, o in enumerate(orders)}
    out = []
    for lay, G_, H_ in zip(pair.layouts, gm, hm):
        size = lay.size(rows)
        tp = lay.global_perm(thetas, rows)
        z = G_ @ H_.sub(tp, range(size))
        if normalize:
            z = z.sub(lay.global_perm(row_ord, rows), lay.global_perm(col_ord, rows))
        out.append(z)
    return DoubleCoset(pair, gamma, alpha, _from_mats(pair, out))


def block_product(g: Matrix, h: Matrix, alpha: int, beta: int, gamma: int) -> Matrix:
    """Literal product ``[[A,B,0],[C,D,0],[0,0,1]] @ [[P,0,Q],[0,1,0],[R,0,T]]``.

    Single-slot oracle for :func:`coset_compose`; ``g`` is split after
    ``gamma`` rows and ``beta`` columns, ``h`` after ``beta`` rows and
    ``alpha`` columns.
    """
    fld = g.field
    ng = max(g.rows, gamma, beta)
    nh = max(h.rows, beta, alpha)
    gp, hp = g.pad(ng), h.pad(nh)
    n = ng + nh - beta
    z, o = zero(fld), one(fld)
    F = [[z] * n for _ in range(n)]
    S = [[z] * n for _ in range(n)]
    for i in range(ng):
        for j in range(ng):
            F[i][j] = gp[i, j]
    for t in range(nh - beta):
        F[ng + t][ng + t] = o

    def hcol(j):
        return j if j < alpha else alpha + (ng - beta) + (j - alpha)

    for i in range(beta):
        for j in range(nh):
            S[i][hcol(j)] = hp[i, j]
    for i in range(beta, ng):
        S[i][alpha + i - beta] = o
    for t in range(nh - beta):
        for j in range(nh):
            S[ng + t][hcol(j)] = hp[beta + t, j]
    return Matrix(F, fld) @ Matrix(S, fld)


def compose_u2_interleaved(g: DoubleCoset, h: DoubleCoset) -> DoubleCoset:
    """Product on ``U(2inf) / O x O`` through the explicit six-block pattern.

    Coordinates are regrouped slot by slot (all slot-0 rows, then all
    slot-1 rows), each slot gets its own padding block, the two padded
    matrices are multiplied, and the result is interleaved back.
    """
    pair = g.pair
    lays = pair.layouts
    if (len(lays) != 1 or lays[0].head or len(lays[0].slots) != 2
            or [s.source for s in lays[0].slots] != [0, 1] or pair.G.kind != Kind.U):
        raise IndexMismatchError("compose_u2_interleaved needs the U(2inf)/OxO pair")
    if h.pair != pair or g.alpha != h.beta:
        raise IndexMismatchError("cosets are not composable")
    lay = lays[0]
    gamma, beta, alpha = g.beta, g.alpha, h.alpha
    ng = max(slot_rows(pair, g.rep), max(gamma), max(beta))
    nh = max(slot_rows(pair, h.rep), max(beta), max(alpha))
    gm = g.rep.ops[0].padded(lay.size(ng))
    hm = h.rep.ops[0].padded(lay.size(nh))
    fld = gm.field
    z, o = zero(fld), one(fld)
    sizes = [ng + nh - b for b in beta]
    off = [0, sizes[0]]
    n = sum(sizes)
    F = [[z] * n for _ in range(n)]
    S = [[z] * n for _ in range(n)]
    for s in range(2):
        for i in range(ng):
            for t in range(2):
                for j in range(ng):
                    F[off[s] + i][off[t] + j] = gm[lay.coord(s, i), lay.coord(t, j)]
        for e in range(nh - beta[s]):
            F[off[s] + ng + e][off[s] + ng + e] = o

    def scol(t, j):
        a, b = alpha[t], beta[t]
        return off[t] + (j if j < a else a + (ng - b) + (j - a))

    for s in range(2):
        b = beta[s]

        def srow(i):
            return off[s] + (i if i < b else ng + (i - b))
        for i in range(nh):
            for t in range(2):
                for j in range(nh):
                    S[srow(i)][scol(t, j)] = hm[lay.coord(s, i), lay.coord(t, j)]
        for i in range(b, ng):
            S[off[s] + i][off[s] + alpha[s] + (i - b)] = o
    zb = Matrix(F, fld) @ Matrix(S, fld)
    rows = max(sizes)
    size = lay.size(rows)
    out = [[o if i == j else z for j in range(size)] for i in range(size)]
    for s in range(2):
        for r in range(sizes[s]):
            for t in range(2):
                for c in range(sizes[t]):
                    out[lay.coord(s, r)][lay.coord(t, c)] = zb[off[s] + r, off[t] + c]
    return DoubleCoset(pair, gamma, alpha, _from_mats(pair, [Matrix(out, fld)]))


def involution(g: DoubleCoset) -> DoubleCoset:
    """``g*``: the class of the inverse matrix, alpha <- beta."""
    return DoubleCoset(g.pair, g.alpha, g.beta, g.rep.inverse())


# ---------------------------------------------------------------------------
# units


def _idx(pair: PairDescriptor, x) -> tuple[int, ...]:
    if isinstance(x, int):
        x = (x,) * pair.index_arity
    return tuple(x)


def unit(pair: PairDescriptor, alpha) -> DoubleCoset:
    a = _idx(pair, alpha)
    return DoubleCoset(pair, a, a, GroupElement.identity(pair.G))


def _check_le(alpha, beta):
    if any(a > b for a, b in zip(alpha, beta)):
        raise IndexMismatchError(f"need alpha <= beta componentwise, got {alpha} and {beta}")


def unit_lambda(pair: PairDescriptor, alpha, beta) -> DoubleCoset:
    """Identity matrix viewed as a morphism alpha -> beta (alpha <= beta)."""
    a, b = _idx(pair, alpha), _idx(pair, beta)
    _check_le(a, b)
    return DoubleCoset(pair, b, a, GroupElement.identity(pair.G))


def unit_mu(pair: PairDescriptor, beta, alpha) -> DoubleCoset:
    """Identity matrix viewed as a morphism beta -> alpha (alpha <= beta)."""
    a, b = _idx(pair, alpha), _idx(pair, beta)
    _check_le(a, b)
    return DoubleCoset(pair, a, b, GroupElement.identity(pair.G))


def psi(pair: PairDescriptor, alpha, beta) -> DoubleCoset:
    """The idempotent ``lambda_{alpha,beta} o mu_{beta,alpha}`` at beta."""
    return coset_compose(unit_lambda(pair, alpha, beta), unit_mu(pair, beta, alpha))


# ---------------------------------------------------------------------------
# invariants


def chi_data(coset: DoubleCoset, rows: int | None = None):
    """Per G-factor ``(g, adj(g), head rows, head cols)`` for the characteristic function."""
    pair = coset.pair
    r = coset.rows if rows is None else max(rows, coset.rows)
    heavy = pair.G.maximal_heavy().simple_factors()
    out = []
    for lay, mat, k in zip(pair.layouts, coset.matrices(r), heavy):
        inv = mat.inverse()
        adj = inv.T if k.kind == Kind.O else inv.H
        out.append((mat, adj, lay.head_coords(coset.beta, r), lay.head_coords(coset.alpha, r)))
    return out


@dataclass(frozen=True)
class CosetInvariants:
    corner_blocks: tuple[Matrix, ...]
    chi_samples: tuple[tuple[ProjectivePoint, LinearRelation], ...]

    def to_json(self):
        return {"corner": [m.to_json() for m in self.corner_blocks],
                "chi": [{"lambda": lam.to_json(), "relation": rel.to_json()}
                        for lam, rel in self.chi_samples]}


def coset_invariants(g: DoubleCoset, rows: int | None = None,
                     lambdas: Sequence[ProjectivePoint] = LAMBDA_SAMPLES) -> CosetInvariants:
    """Head corner of every factor plus the characteristic function at ``lambdas``.

    ``rows`` only matters for pairs with coordinates that ``L`` never moves
    (those enter the corner); compare invariants at a common value.
    """
    r = g.rows if rows is None else max(rows, g.rows)
    corners = []
    for lay, mat in zip(g.pair.layouts, g.matrices(r)):
        corners.append(mat.sub(lay.head_coords(g.beta, r), lay.head_coords(g.alpha, r)))
    chis = tuple((lam, char_function(g, lam, r)) for lam in lambdas)
    return CosetInvariants(tuple(corners), chis)


# ---------------------------------------------------------------------------
# equality


class Verdict(str, enum.Enum):
    DISTINCT = "distinct"
    EQUAL_BY_INVARIANTS = "equal_by_invariants"
    EQUAL_BY_WITNESS = "equal_by_witness"


@dataclass(frozen=True)
class SignedPerm:
    """Slot-row signed permutation ``M[i, perm[i]] = signs[i]``."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    @classmethod
    def identity(cls, n: int) -> "SignedPerm":
        return cls(tuple(range(n)), (1,) * n)

    def to_json(self):
        return {"perm": list(self.perm), "signs": list(self.signs)}


@dataclass(frozen=True)
class Witness:
    """``left * a * right == b``, one signed permutation per L-factor on each side."""

    left: tuple[SignedPerm, ...]
    right: tuple[SignedPerm, ...]
    rows: int

    def to_json(self):
        return {"left": [p.to_json() for p in self.left],
                "right": [p.to_json() for p in self.right]}


@dataclass(frozen=True)
class EqResult:
    verdict: Verdict
    witness: Witness | None = None

    def to_json(self):
        out = {"verdict": self.verdict.value}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def _embed_signed(lay: FactorLayout, perms: Sequence[SignedPerm], rows: int, field: str) -> Matrix:
    gp = lay.global_perm({k: p.perm for k, p in enumerate(perms)}, rows)
    gs = lay.global_signs({k: p.signs for k, p in enumerate(perms)}, rows)
    return signed_permutation_matrix(gp, gs, field)


def apply_witness(w: Witness, a: DoubleCoset) -> list[Matrix]:
    """Matrices ``left * a * right`` on a window of ``w.rows`` slot rows."""
    out = []
    for lay, mat in zip(a.pair.layouts, a.matrices(w.rows)):
        u = _embed_signed(lay, w.left, w.rows, mat.field)
        v = _embed_signed(lay, w.right, w.rows, mat.field)
        out.append(u @ mat @ v)
    return out


def _sign_normalize(vec):
    for x in vec:
        if x:
            if isinstance(x, GaussRat):
                neg = (x.re, x.im) < (0, 0)
            else:
                neg = x < 0
            if neg:
                return tuple(-y for y in vec), -1
            return tuple(vec), 1
    return tuple(vec), 0


def find_witness(a: DoubleCoset, b: DoubleCoset, rows: int | None = None,
                 budget: int = 50_000) -> Witness | None:
    """Search signed slot-row permutations ``u`` in ``L^beta`` and ``v`` in ``L^alpha``
    with ``u a v = b`` exactly.

    Candidate row matches are narrowed by colour refinement: tail row
    groups and tail column groups of both matrices are coloured by data
    that signed permutations cannot change (head entries up to a common
    sign, entry norms) and the colours are refined against each other
    until stable.  Backtracking then runs over row assignments only; the
    column permutation is read off by hashing.  Returns ``None`` when no
    witness is found within ``budget`` search nodes.
    """
    pair = a.pair
    R = max(a.rows, b.rows) if rows is None else max(rows, a.rows, b.rows)
    lays = pair.layouts
    A = a.matrices(R)
    B = b.matrices(R)
    K = pair.index_arity
    beta, alpha = a.beta, a.alpha
    hcols = [lay.head_coords(alpha, R) for lay in lays]
    hrows = [lay.head_coords(beta, R) for lay in lays]
    rgroups = [(k, r) for k in range(K) for r in range(beta[k], R)]
    cgroups = [(k, c) for k in range(K) for c in range(alpha[k], R)]
    coords = {}

    def group(k, r):
        key = (k, r)
        if key not in coords:
            coords[key] = [(f, c) for f, lay in enumerate(lays) for c in lay.row_group(k, r)]
        return coords[key]

    def block_norms(M, rg, cg):
        return tuple(norm2(M[f].row(i)[j]) for f, i in group(*rg) for f2, j in group(*cg) if f == f2)

    def row_init(M, rg):
        head = [M[f].row(i)[j] for f, i in group(*rg) for j in hcols[f]]
        return ("r", rg[0], _sign_normalize(head)[0])

    def col_init(M, cg):
        head = [M[f].row(i)[j] for f, j in group(*cg) for i in hrows[f]]
        return ("c", cg[0], _sign_normalize(head)[0])

    ids: dict = {}

    def cid(sig):
        return ids.setdefault(sig, len(ids))

    rc = {0: {g: cid(row_init(A, g)) for g in rgroups}, 1: {g: cid(row_init(B, g)) for g in rgroups}}
    cc = {0: {g: cid(col_init(A, g)) for g in cgroups}, 1: {g: cid(col_init(B, g)) for g in cgroups}}
    norms = {0: {}, 1: {}}
    for side, M in ((0, A), (1, B)):
        for rg in rgroups:
            for cg in cgroups:
                norms[side][(rg, cg)] = block_norms(M, rg, cg)

    def ncolours():
        return len(set(rc[0].values()) | set(rc[1].values())) + len(set(cc[0].values()) | set(cc[1].values()))

    prev = -1
    while True:
        cur = ncolours()
        if cur == prev:
            break
        prev = cur
        nrc = {}
        for side in (0, 1):
            nrc[side] = {rg: cid((rc[side][rg], tuple(sorted((norms[side][(rg, cg)], cc[side][cg])
                                                            for cg in cgroups))))
                         for rg in rgroups}
        ncc = {}
        for side in (0, 1):
            ncc[side] = {cg: cid((cc[side][cg], tuple(sorted((norms[side][(rg, cg)], rc[side][rg])
                                                            for rg in rgroups))))
                         for cg in cgroups}
        rc, cc = nrc, ncc
    for side_colours in (rc, cc):
        if sorted(side_colours[0].values()) != sorted(side_colours[1].values()):
            return None

    def head_sign(M, rg):
        head = [M[f].row(i)[j] for f, i in group(*rg) for j in hcols[f]]
        return _sign_normalize(head)[1]

    sa = {g: head_sign(A, g) for g in rgroups}
    sb = {g: head_sign(B, g) for g in rgroups}
    cands = {g: sorted((h for h in rgroups if rc[1][h] == rc[0][g]), key=lambda h: (h != g, h))
             for g in rgroups}
    order = sorted(rgroups, key=lambda g: (len(cands[g]), g))
    assign: dict = {}
    used = set()
    nodes = [0]

    def try_complete():
        left = []
        for k in range(K):
            perm = list(range(R))
            signs = [1] * R
            for r in range(beta[k], R):
                (_, r2), eps = assign[(k, r)]
                perm[r2] = r
                signs[r2] = eps
            left.append(SignedPerm(tuple(perm), tuple(signs)))
        U = [_embed_signed(lay, left, R, M.field) for lay, M in zip(lays, A)]
        A1 = [u @ M for u, M in zip(U, A)]
        for f in range(len(lays)):
            for c in hcols[f]:
                if A1[f].col(c) != B[f].col(c):
                    return None

        def col_vec(M, k, c):
            return tuple(x for f, cc_ in group(k, c) for x in M[f].col(cc_))

        right = []
        for k in range(K):
            pool = {}
            for c2 in range(alpha[k], R):
                key, s2 = _sign_normalize(col_vec(B, k, c2))
                pool.setdefault(key, []).append((c2, s2))
            perm = list(range(R))
            signs = [1] * R
            for c in range(alpha[k], R):
                key, s1 = _sign_normalize(col_vec(A1, k, c))
                lst = pool.get(key)
                if not lst:
                    return None
                c2, s2 = lst.pop()
                perm[c] = c2
                signs[c] = s1 * s2
            right.append(SignedPerm(tuple(perm), tuple(signs)))
        w = Witness(tuple(left), tuple(right), R)
        return w if apply_witness(w, a) == B else None

    def rec(i):
        nodes[0] += 1
        if nodes[0] > budget:
            raise _Budget
        if i == len(order):
            return try_complete()
        g = order[i]
        for h in cands[g]:
            if h in used:
                continue
            eps_opts = (sa[g] * sb[h],) if sa[g] and sb[h] else (1, -1)
            for eps in eps_opts:
                assign[g] = (h, eps)
                used.add(h)
                res = rec(i + 1)
                if res is not None:
                    return res
                used.discard(h)
                del assign[g]
        return None

    try:
        return rec(0)
    except _Budget:
        return None


class _Budget(Exception):
    pass


def coset_eq(a: DoubleCoset, b: DoubleCoset, budget: int = 50_000) -> EqResult:
    """Three-valued equality of double cosets.

    DISTINCT is a proof (an invariant differs).  EQUAL_BY_WITNESS is a proof
    (an explicit ``u a v = b``).  EQUAL_BY_INVARIANTS means all sampled
    invariants agree but no witness was found within the budget.
    """
    if a.pair != b.pair:
        raise IndexMismatchError("cosets belong to different pairs")
    if a.alpha != b.alpha or a.beta != b.beta:
        raise IndexMismatchError("cosets have different source or target objects")
    R = max(a.rows, b.rows)
    if a.matrices(R) == b.matrices(R):
        K = a.pair.index_arity
        ident = tuple(SignedPerm.identity(R) for _ in range(K))
        return EqResult(Verdict.EQUAL_BY_WITNESS, Witness(ident, ident, R))
    if coset_invariants(a, R) != coset_invariants(b, R):
        return EqResult(Verdict.DISTINCT)
    w = find_witness(a, b, R, budget)
    if w is not None:
        return EqResult(Verdict.EQUAL_BY_WITNESS, w)
    return EqResult(Verdict.EQUAL_BY_INVARIANTS)


# ---------------------------------------------------------------------------
# witnesses from the structure theory


def random_stabilizer(pair: PairDescriptor, index, n: int, rng) -> GroupElement:
    """Image in G of a random orthogonal/unitary element of ``L`` fixing ``index``.

    Each L-factor gets a Cayley-sampled block of size ``n`` placed right
    after its first ``index[k]`` slot rows.
    """
    from .groups import random_heavy
    idx = _idx(pair, index)
    el = random_heavy(pair.L, n, rng)
    ops = []
    for f, op, b in zip(pair.L.simple_factors(), el.ops, idx):
        core = op.padded(n)
        fld = core.field
        size = b + n
        z, o = zero(fld), one(fld)
        rows = [[o if i == j else z for j in range(size)] for i in range(size)]
        for i in range(n):
            for j in range(n):
                rows[b + i][b + j] = core[i, j]
        ops.append(FiniteSupportOperator(f, Matrix(rows, fld)))
    return embed_in_pair(pair, GroupElement(pair.L, tuple(ops)))


def embedded_theta(pair: PairDescriptor, alpha, m: int) -> GroupElement:
    """Image in G of Theta_m acting past ``alpha`` in every L-factor."""
    from .groups import theta_element
    a = _idx(pair, alpha)
    return embed_in_pair(pair, theta_element(pair.L, a, m))


def _fixes_head(pair: PairDescriptor, h: GroupElement, alpha) -> bool:
    a = _idx(pair, alpha)
    r = max(slot_rows(pair, h), max(a))
    for lay, mat in zip(pair.layouts, _padded(pair, h, r)):
        o = one(mat.field)
        for c in lay.head_coords(a, r):
            if any((x != o) if j == c else bool(x) for j, x in enumerate(mat.row(c))):
                return False
            if any((x != o) if i == c else bool(x) for i, x in enumerate(mat.col(c))):
                return False
    return True


def center_witness(g: GroupElement, h: GroupElement, alpha, pair: PairDescriptor | None = None,
                   max_m: int | None = None) -> int:
    """Least ``m`` with ``g (T h T) == (T h T) g`` for ``T = Theta_m`` past ``alpha``.

    ``h`` must fix the head coordinates at ``alpha``.
    """
    pair = pair or pair_preset("GL_R/O")
    a = _idx(pair, alpha)
    if not _fixes_head(pair, h, a):
        raise ValueError("h does not fix the first alpha coordinates")
    bound = max(slot_rows(pair, g), slot_rows(pair, h), 1)
    if max_m is None:
        max_m = bound + 1
    for m in range(1, max_m + 1):
        t = embedded_theta(pair, a, m)
        c = t @ h @ t
        if g @ c == c @ g:
            return m
    raise RuntimeError(f"no m <= {max_m} makes the elements commute")


def commutativity_witness(g: DoubleCoset, h: DoubleCoset) -> GroupElement:
    """Element ``J`` of ``L`` with ``J (g o h) J^-1 = h o g`` on a pure pair at level 0."""
    pair = g.pair
    if not is_pure(pair):
        raise ValueError("commutativity witness needs a pure pair")
    zero_idx = (0,) * pair.index_arity
    for c in (g, h):
        if c.alpha != zero_idx or c.beta != zero_idx:
            raise IndexMismatchError("commutativity witness works at level 0")
    gh, hg = coset_compose(g, h), coset_compose(h, g)
    ng, nh = g.rows, h.rows
    perm = [ng + t for t in range(nh)] + list(range(ng))
    J = GroupElement(pair.L, tuple(FiniteSupportOperator(f, permutation_matrix(perm, f.field))
                                   for f in pair.L.simple_factors()))
    Je = embed_in_pair(pair, J)
    if Je @ gh.rep @ Je.inverse() != hg.rep:
        raise RuntimeError("block swap failed to conjugate g o h into h o g")
    return J


def shift(g: GroupElement, pair: PairDescriptor, beta) -> GroupElement:
    """Move every slot row ``r`` of L-factor ``k`` to ``r + beta[k]`` (pure pairs)."""
    if not is_pure(pair):
        raise ValueError("the shift is defined for pure pairs")
    b = _idx(pair, beta)
    r = slot_rows(pair, g)
    R = r + max(b)
    out = []
    for lay, mat in zip(pair.layouts, _padded(pair, g, r)):
        size = lay.size(R)
        fld = mat.field
        z, o = zero(fld), one(fld)
        new = [[o if i == j else z for j in range(size)] for i in range(size)]
        where = []
        for row in range(r):
            for k, s in enumerate(lay.slots):
                for off in range(s.width):
                    where.append((lay.coord(k, row, off), lay.coord(k, row + b[s.source], off)))
        for i, ni in where:
            for j, nj in where:
                new[ni][nj] = mat[i, j]
        out.append(Matrix(new, fld))
    return _from_mats(pair, out)


def shifted_coset(g: GroupElement, pair: PairDescriptor, beta) -> DoubleCoset:
    b = _idx(pair, beta)
    return DoubleCoset(pair, b, b, shift(g, pair, b))


def projection_pi(g: DoubleCoset, alpha) -> DoubleCoset:
    """``mu_{beta,alpha} o g o lambda_{alpha,beta}`` for ``g`` at level beta."""
    pair = g.pair
    if g.alpha != g.beta:
        raise IndexMismatchError("projection needs an endomorphism")
    a = _idx(pair, alpha)
    b = g.beta
    return coset_compose(coset_compose(unit_mu(pair, b, a), g), unit_lambda(pair, a, b))


# ---------------------------------------------------------------------------
# mantle


def _fixed_slot(lay: FactorLayout) -> int:
    for k, s in enumerate(lay.slots):
        if s.source is None:
            return k
    raise ValueError("pair has no coordinates fixed by L; not a mantle split")


def group_to_mantle(g: GroupElement, pair: PairDescriptor | None = None) -> DoubleCoset:
    """Place ``g`` on the coordinates that ``L`` never moves, as a level-0 coset."""
    pair = pair or pair_preset("mantle")
    if g.group != pair.G:
        raise IndexMismatchError(f"element of {g.group}, pair needs {pair.G}")
    out = []
    rows = g.support
    for lay, op in zip(pair.layouts, g.ops):
        k = _fixed_slot(lay)
        size = lay.size(rows)
        fld = op.field
        z, o = zero(fld), one(fld)
        new = [[o if i == j else z for j in range(size)] for i in range(size)]
        core = op.padded(rows)
        for i in range(rows):
            for j in range(rows):
                new[lay.coord(k, i)][lay.coord(k, j)] = core[i, j]
        out.append(Matrix(new, fld))
    zero_idx = (0,) * pair.index_arity
    return DoubleCoset(pair, zero_idx, zero_idx, _from_mats(pair, out))


def mantle_compose(a: DoubleCoset, b: DoubleCoset) -> DoubleCoset:
    for c in (a, b):
        for lay in c.pair.layouts:
            _fixed_slot(lay)
    return coset_compose(a, b)
