"""Finite-support elements of GL(inf), O(inf), U(inf) and their products.

An operator is stored as a square core matrix; outside the core it acts
as the identity.  Straight embeddings of a heavy subgroup ``L`` into the
maximal heavy subgroup of ``G`` are described by :class:`EmbeddingSpec`.
At computation time every embedding is flattened into a
:class:`FactorLayout`: a finite head block of coordinates that ``L``
never moves, followed by infinitely many "slot rows" interleaved round
robin.  Slot ``k`` at slot-row ``r`` occupies global coordinates
``head + r*stride + offset_k + (0..width_k-1)``.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Sequence

from .exact_linalg import (
    Q,
    QI,
    GaussRat,
    Matrix,
    SingularMatrixError,
    determinant,
    matrix_inverse,
    one,
    zero,
)

__all__ = [
    "Kind",
    "Tag",
    "INF",
    "GroupDescriptor",
    "FiniteSupportOperator",
    "GroupElement",
    "IdentityBlock",
    "TrivialHom",
    "EmbeddingSpec",
    "PairDescriptor",
    "SlotLayout",
    "FactorLayout",
    "EmbeddingError",
    "is_member",
    "theta",
    "theta_element",
    "cayley_transform",
    "cayley_sample",
    "embed_straight",
    "embed_in_pair",
    "is_pure",
    "random_gl",
    "random_element",
    "random_heavy",
    "pair_preset",
    "PAIR_PRESETS",
    "mantle_pair",
    "permutation_matrix",
    "signed_permutation_matrix",
]


class EmbeddingError(ValueError):
    pass


class Kind(str, enum.Enum):
    GL_R = "GL_R"
    GL_C = "GL_C"
    O = "O"  # noqa: E741
    U = "U"
    PRODUCT = "PRODUCT"


class Tag(str, enum.Enum):
    ID = "id"
    CONJ = "conj"
    O_TO_U = "o_to_u"
    U_TO_O2 = "u_to_o2"


INF = "inf"

_FIELD = {Kind.GL_R: Q, Kind.O: Q, Kind.GL_C: QI, Kind.U: QI}
_HEAVY = {Kind.GL_R: Kind.O, Kind.GL_C: Kind.U, Kind.O: Kind.O, Kind.U: Kind.U}


@dataclass(frozen=True)
class GroupDescriptor:
    kind: Kind
    factors: tuple["GroupDescriptor", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "factors", tuple(self.factors))
        if self.kind == Kind.PRODUCT:
            if len(self.factors) < 2:
                raise ValueError("a product group needs at least two factors")
            if any(f.kind == Kind.PRODUCT for f in self.factors):
                raise ValueError("nested products are not supported; flatten them")
        elif self.factors:
            raise ValueError(f"{self.kind.value} takes no factors")

    @classmethod
    def of(cls, *kinds) -> "GroupDescriptor":
        if len(kinds) == 1:
            return cls(Kind(kinds[0]))
        return cls(Kind.PRODUCT, tuple(cls(Kind(k)) for k in kinds))

    def simple_factors(self) -> tuple["GroupDescriptor", ...]:
        return self.factors if self.kind == Kind.PRODUCT else (self,)

    @property
    def arity(self) -> int:
        return len(self.simple_factors())

    @property
    def field(self) -> str:
        if self.kind == Kind.PRODUCT:
            raise ValueError("a product group has one field per factor")
        return _FIELD[self.kind]

    def is_heavy(self) -> bool:
        return all(f.kind in (Kind.O, Kind.U) for f in self.simple_factors())

    def maximal_heavy(self) -> "GroupDescriptor":
        fs = tuple(GroupDescriptor(_HEAVY[f.kind]) for f in self.simple_factors())
        return fs[0] if len(fs) == 1 else GroupDescriptor(Kind.PRODUCT, fs)

    def to_json(self):
        if self.kind == Kind.PRODUCT:
            return {"kind": "PRODUCT", "factors": [f.to_json() for f in self.factors]}
        return {"kind": self.kind.value}

    @classmethod
    def from_json(cls, obj) -> "GroupDescriptor":
        if isinstance(obj, str):
            return cls(Kind(obj))
        if obj["kind"] == "PRODUCT":
            return cls(Kind.PRODUCT, tuple(cls.from_json(f) for f in obj["factors"]))
        return cls(Kind(obj["kind"]))

    def __str__(self):
        if self.kind == Kind.PRODUCT:
            return "x".join(str(f) for f in self.factors)
        return self.kind.value


def _strip(core: Matrix) -> Matrix:
    n = core.rows
    o = one(core.field)
    e = core.entries()
    while n > 0:
        i = n - 1
        if e[i][i] != o:
            break
        if any(e[i][j] for j in range(n - 1)) or any(e[j][i] for j in range(n - 1)):
            break
        n -= 1
    return core if n == core.rows else core.slice(0, n, 0, n)


@dataclass(frozen=True)
class FiniteSupportOperator:
    """An operator equal to ``core`` on the first ``support`` coordinates and
    the identity beyond.  Trailing identity rows/columns are stripped, so two
    operators are equal iff their dataclass fields are equal."""

    group: GroupDescriptor
    core: Matrix

    def __post_init__(self):
        if self.group.kind == Kind.PRODUCT:
            raise ValueError("an operator belongs to a single (non-product) factor")
        core = self.core
        if not isinstance(core, Matrix):
            core = Matrix(core, self.group.field)
        if core.rows != core.cols:
            raise ValueError("operator core must be square")
        if core.field != self.group.field:
            core = core.to_field(self.group.field)
        object.__setattr__(self, "core", _strip(core))

    @property
    def support(self) -> int:
        return self.core.rows

    @property
    def field(self) -> str:
        return self.core.field

    @classmethod
    def identity(cls, group: GroupDescriptor) -> "FiniteSupportOperator":
        return cls(group, Matrix.zeros(0, 0, group.field))

    def padded(self, n: int) -> Matrix:
        return self.core.pad(max(n, self.support))

    def __matmul__(self, other: "FiniteSupportOperator") -> "FiniteSupportOperator":
        n = max(self.support, other.support)
        return FiniteSupportOperator(self.group, self.padded(n) @ other.padded(n))

    def inverse(self) -> "FiniteSupportOperator":
        return FiniteSupportOperator(self.group, matrix_inverse(self.core))

    def to_json(self):
        return {"group": self.group.to_json(), "core": self.core.to_json()}

    @classmethod
    def from_json(cls, obj) -> "FiniteSupportOperator":
        return cls(GroupDescriptor.from_json(obj["group"]), Matrix.from_json(obj["core"]))


@dataclass(frozen=True)
class GroupElement:
    """One operator per simple factor of ``group``."""

    group: GroupDescriptor
    ops: tuple[FiniteSupportOperator, ...]

    def __post_init__(self):
        ops = tuple(self.ops)
        object.__setattr__(self, "ops", ops)
        facs = self.group.simple_factors()
        if len(ops) != len(facs):
            raise ValueError(f"{self.group} needs {len(facs)} operators, got {len(ops)}")
        for op, f in zip(ops, facs):
            if op.group != f:
                raise ValueError(f"operator of {op.group} in a {f} slot")

    @classmethod
    def identity(cls, group: GroupDescriptor) -> "GroupElement":
        return cls(group, tuple(FiniteSupportOperator.identity(f) for f in group.simple_factors()))

    @classmethod
    def from_matrices(cls, group: GroupDescriptor, mats: Sequence) -> "GroupElement":
        facs = group.simple_factors()
        if isinstance(mats, Matrix):
            mats = [mats]
        return cls(group, tuple(FiniteSupportOperator(f, m if isinstance(m, Matrix) else Matrix(m, f.field))
                                for f, m in zip(facs, mats)))

    @property
    def support(self) -> int:
        return max((op.support for op in self.ops), default=0)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.group, tuple(a @ b for a, b in zip(self.ops, other.ops)))

    def inverse(self) -> "GroupElement":
        return GroupElement(self.group, tuple(a.inverse() for a in self.ops))

    def viewed_in(self, group: "GroupDescriptor") -> "GroupElement":
        """The same matrices as an element of an overgroup (e.g. O inside GL_R)."""
        return GroupElement(group, tuple(FiniteSupportOperator(f, op.core)
                                         for f, op in zip(group.simple_factors(), self.ops)))

    def to_json(self):
        return [op.core.to_json() for op in self.ops]


def is_member(op: FiniteSupportOperator | GroupElement) -> bool:
    """Exact check of the defining identity of the operator's group."""
    if isinstance(op, GroupElement):
        return all(is_member(o) for o in op.ops)
    c = op.core
    kind = op.group.kind
    if kind in (Kind.GL_R, Kind.GL_C):
        return c.rows == 0 or bool(determinant(c))
    if kind == Kind.O:
        return (c.T @ c).is_identity()
    if kind == Kind.U:
        return (c.H @ c).is_identity()
    return False


def permutation_matrix(perm: Sequence[int], field: str = Q) -> Matrix:
    """Matrix with ``M[i, perm[i]] = 1``, so ``(M @ a)[i] = a[perm[i]]``."""
    return signed_permutation_matrix(perm, [1] * len(perm), field)


def signed_permutation_matrix(perm: Sequence[int], signs: Sequence[int], field: str = Q) -> Matrix:
    n = len(perm)
    z = zero(field)
    rows = []
    for i in range(n):
        r = [z] * n
        r[perm[i]] = one(field) if signs[i] > 0 else -one(field)
        rows.append(tuple(r))
    return Matrix._make(tuple(rows), field, n)


def theta_perm(alpha: int, m: int) -> list[int]:
    """Index form of theta(alpha, m); it is an involution."""
    return (list(range(alpha)) + list(range(alpha + m, alpha + 2 * m))
            + list(range(alpha, alpha + m)))


def theta(alpha: int, m: int, group: GroupDescriptor | None = None) -> FiniteSupportOperator:
    """Block permutation fixing ``alpha`` coordinates and swapping the next two ``m``-blocks."""
    if alpha < 0 or m < 1:
        raise ValueError("theta needs alpha >= 0 and m >= 1")
    group = group or GroupDescriptor(Kind.O)
    return FiniteSupportOperator(group, permutation_matrix(theta_perm(alpha, m), group.field))


def theta_element(group: GroupDescriptor, alphas: Sequence[int], m: int) -> GroupElement:
    """Theta per factor of a (heavy) group, with one shift ``alphas[k]`` per factor."""
    facs = group.simple_factors()
    return GroupElement(group, tuple(theta(a, m, f) for f, a in zip(facs, alphas)))


# ---------------------------------------------------------------------------
# random exact elements


def cayley_transform(s: Matrix) -> Matrix:
    """``(1 - S)(1 + S)^-1``; orthogonal (unitary) for skew-symmetric (skew-Hermitian) S."""
    n = s.rows
    ident = Matrix.identity(n, s.field)
    return (ident - s) @ matrix_inverse(ident + s)


def _small_rational(rng: random.Random, height: int = 2):
    from gmpy2 import mpq
    return mpq(rng.randint(-height, height), rng.randint(1, max(1, height + 1)))


def cayley_sample(field: str, n: int, seed: int, height: int = 2) -> FiniteSupportOperator:
    """Seeded exact orthogonal (``Q``) or unitary (``Qi``) operator of support at most n."""
    if n < 1:
        raise ValueError("cayley_sample needs n >= 1")
    kind = Kind.O if field == Q else Kind.U
    nonce = 0
    while True:
        rng = random.Random(f"cayley:{field}:{n}:{seed}:{nonce}")
        z = zero(field)
        e = [[z] * n for _ in range(n)]
        for i in range(n):
            if field == QI:
                e[i][i] = GaussRat(0, _small_rational(rng, height))
            for j in range(i + 1, n):
                if field == Q:
                    x = _small_rational(rng, height)
                    e[i][j], e[j][i] = x, -x
                else:
                    x = GaussRat(_small_rational(rng, height), _small_rational(rng, height))
                    e[i][j], e[j][i] = x, -x.conjugate()
        s = Matrix(e, field)
        try:
            return FiniteSupportOperator(GroupDescriptor(kind), cayley_transform(s))
        except SingularMatrixError:
            nonce += 1


def random_gl(field: str, n: int, rng: random.Random, height: int = 2) -> Matrix:
    """Random invertible n x n matrix with small integer (Gaussian) entries."""
    while True:
        if field == Q:
            rows = [[rng.randint(-height, height) for _ in range(n)] for _ in range(n)]
        else:
            rows = [[GaussRat(rng.randint(-height, height), rng.randint(-height, height))
                     for _ in range(n)] for _ in range(n)]
        m = Matrix(rows, field)
        if determinant(m):
            return m


def random_element(group: GroupDescriptor, support: int, rng: random.Random,
                   height: int = 2) -> GroupElement:
    """Random element with every factor of support at most ``support``."""
    ops = []
    for f in group.simple_factors():
        n = rng.randint(1, support) if support > 0 else 0
        if n == 0:
            ops.append(FiniteSupportOperator.identity(f))
        elif f.kind in (Kind.GL_R, Kind.GL_C):
            ops.append(FiniteSupportOperator(f, random_gl(f.field, n, rng, height)))
        else:
            ops.append(FiniteSupportOperator(f, cayley_sample(f.field, n, rng.getrandbits(32), height).core))
    return GroupElement(group, tuple(ops))


def random_heavy(group: GroupDescriptor, n: int, rng: random.Random, height: int = 2) -> GroupElement:
    """Random element of a heavy group with every factor of support exactly ``n``
    (up to stripping)."""
    ops = []
    for f in group.simple_factors():
        ops.append(FiniteSupportOperator(f, cayley_sample(f.field, n, rng.getrandbits(32), height).core))
    return GroupElement(group, tuple(ops))


# ---------------------------------------------------------------------------
# straight embeddings


@dataclass(frozen=True)
class IdentityBlock:
    size: int | str  # a count or INF

    def __post_init__(self):
        if self.size != INF and (not isinstance(self.size, int) or self.size < 1):
            raise ValueError("identity block size must be a positive count or 'inf'")

    def to_json(self):
        return {"identity": self.size}


@dataclass(frozen=True)
class TrivialHom:
    tag: Tag
    source: int

    def __post_init__(self):
        object.__setattr__(self, "tag", Tag(self.tag))

    @property
    def width(self) -> int:
        return 2 if self.tag == Tag.U_TO_O2 else 1

    def to_json(self):
        return {"hom": self.tag.value, "source": self.source}


_TAG_TYPES = {
    Tag.ID: {(Kind.O, Kind.O), (Kind.U, Kind.U)},
    Tag.CONJ: {(Kind.U, Kind.U)},
    Tag.O_TO_U: {(Kind.O, Kind.U)},
    Tag.U_TO_O2: {(Kind.U, Kind.O)},
}


def _tau(tag: Tag, core: Matrix, target_field: str) -> Matrix:
    if tag == Tag.ID:
        return core
    if tag == Tag.CONJ:
        return core.conj()
    if tag == Tag.O_TO_U:
        return core.to_field(QI)
    if tag == Tag.U_TO_O2:
        n = core.rows
        out = [[None] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            for j in range(n):
                x = core[i, j]
                a, b = x.re, x.im
                out[2 * i][2 * j], out[2 * i][2 * j + 1] = a, -b
                out[2 * i + 1][2 * j], out[2 * i + 1][2 * j + 1] = b, a
        return Matrix._make(tuple(tuple(r) for r in out), Q, 2 * n)
    raise EmbeddingError(f"unknown tag {tag}")


@dataclass(frozen=True)
class SlotLayout:
    source: int | None  # L-factor index; None for a coordinate slot L never moves
    tag: Tag | None
    width: int


@dataclass(frozen=True)
class FactorLayout:
    """Coordinate bookkeeping for one factor of ``G``.

    ``head`` coordinates come first and are never moved by ``L``; after
    them, slot rows repeat with period ``stride``.
    """

    head: int
    slots: tuple[SlotLayout, ...]
    offsets: tuple[int, ...] = field(init=False)
    stride: int = field(init=False)

    def __post_init__(self):
        offs, acc = [], 0
        for s in self.slots:
            offs.append(acc)
            acc += s.width
        object.__setattr__(self, "offsets", tuple(offs))
        object.__setattr__(self, "stride", acc)

    def coord(self, slot: int, row: int, offset: int = 0) -> int:
        return self.head + row * self.stride + self.offsets[slot] + offset

    def size(self, rows: int) -> int:
        return self.head + rows * self.stride

    def rows_needed(self, support: int) -> int:
        """Slot rows needed to cover ``support`` global coordinates."""
        extra = support - self.head
        return 0 if extra <= 0 else -(-extra // self.stride)

    def head_coords(self, index: Sequence[int], rows: int) -> list[int]:
        """Coordinates fixed by ``L^index`` inside a window of ``rows`` slot rows."""
        out = list(range(self.head))
        for r in range(rows):
            for k, s in enumerate(self.slots):
                if s.source is None or r < index[s.source]:
                    base = self.coord(k, r)
                    out.extend(range(base, base + s.width))
        return out

    def tail_coords(self, index: Sequence[int], rows: int) -> list[int]:
        keep = set(self.head_coords(index, rows))
        return [c for c in range(self.size(rows)) if c not in keep]

    def row_group(self, source: int, row: int) -> list[int]:
        """Global coordinates carried by slot-row ``row`` of L-factor ``source``."""
        out = []
        for k, s in enumerate(self.slots):
            if s.source == source:
                base = self.coord(k, row)
                out.extend(range(base, base + s.width))
        return out

    def global_perm(self, perms: dict[int, Sequence[int]], rows: int) -> list[int]:
        """Lift slot-row permutations (one per L-factor) to a coordinate permutation.

        ``perms[k][r]`` is the old slot-row placed at new slot-row ``r``;
        the returned list has the same convention on global coordinates.
        """
        g = list(range(self.size(rows)))
        for k, s in enumerate(self.slots):
            if s.source is None or s.source not in perms:
                continue
            p = perms[s.source]
            for r in range(rows):
                for o in range(s.width):
                    g[self.coord(k, r, o)] = self.coord(k, p[r], o)
        return g

    def global_signs(self, signs: dict[int, Sequence[int]], rows: int) -> list[int]:
        out = [1] * self.size(rows)
        for k, s in enumerate(self.slots):
            if s.source is None or s.source not in signs:
                continue
            sg = signs[s.source]
            for r in range(rows):
                for o in range(s.width):
                    out[self.coord(k, r, o)] = sg[r]
        return out


@dataclass(frozen=True)
class EmbeddingSpec:
    """Straight embedding of a heavy group into a heavy target, slot by slot.

    ``slots[f]`` lists the diagonal blocks of target factor ``f``.  Finite
    identity blocks are gathered into the head of the layout; an infinite
    identity block must be the last slot and is interleaved like any other
    slot (it is infinite, so it cannot be placed after them).
    """

    source: GroupDescriptor
    target: GroupDescriptor
    slots: tuple[tuple[IdentityBlock | TrivialHom, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple(tuple(s) for s in self.slots))
        if not self.source.is_heavy() or not self.target.is_heavy():
            raise EmbeddingError("straight embeddings act between heavy groups")
        src = self.source.simple_factors()
        tgt = self.target.simple_factors()
        if len(self.slots) != len(tgt):
            raise EmbeddingError("need one slot list per target factor")
        for tf, slots in zip(tgt, self.slots):
            if not any(isinstance(s, TrivialHom) for s in slots):
                raise EmbeddingError("every target factor needs a trivial homomorphism slot")
            for i, s in enumerate(slots):
                if isinstance(s, IdentityBlock):
                    if s.size == INF and i != len(slots) - 1:
                        raise EmbeddingError("an infinite identity block must be the last slot")
                    continue
                if not 0 <= s.source < len(src):
                    raise EmbeddingError(f"slot source {s.source} out of range")
                if (src[s.source].kind, tf.kind) not in _TAG_TYPES[s.tag]:
                    raise EmbeddingError(
                        f"tag {s.tag.value} cannot map {src[s.source]} into {tf}")

    def layouts(self) -> tuple[FactorLayout, ...]:
        out = []
        for slots in self.slots:
            head = sum(s.size for s in slots if isinstance(s, IdentityBlock) and s.size != INF)
            lay = []
            for s in slots:
                if isinstance(s, TrivialHom):
                    lay.append(SlotLayout(s.source, s.tag, s.width))
                elif s.size == INF:
                    lay.append(SlotLayout(None, None, 1))
            out.append(FactorLayout(head, tuple(lay)))
        return tuple(out)

    def to_json(self):
        return {"source": self.source.to_json(), "target": self.target.to_json(),
                "slots": [[s.to_json() for s in f] for f in self.slots]}

    @classmethod
    def from_json(cls, obj) -> "EmbeddingSpec":
        def slot(o):
            if "identity" in o:
                return IdentityBlock(o["identity"])
            return TrivialHom(Tag(o["hom"]), int(o["source"]))
        return cls(GroupDescriptor.from_json(obj["source"]), GroupDescriptor.from_json(obj["target"]),
                   tuple(tuple(slot(s) for s in f) for f in obj["slots"]))


def embed_straight(spec: EmbeddingSpec, g: GroupElement) -> GroupElement:
    """Image of ``g`` (an element of ``spec.source``) in ``spec.target``."""
    if g.group != spec.source:
        raise EmbeddingError(f"element of {g.group}, embedding expects {spec.source}")
    rows = max((op.support for op in g.ops), default=0)
    ops = []
    for tf, lay in zip(spec.target.simple_factors(), spec.layouts()):
        fld = tf.field
        size = lay.size(rows)
        z, o = zero(fld), one(fld)
        e = [[o if i == j else z for j in range(size)] for i in range(size)]
        for k, s in enumerate(lay.slots):
            if s.source is None:
                continue
            img = _tau(s.tag, g.ops[s.source].padded(rows), fld)
            w = s.width
            for r in range(rows):
                for i in range(w):
                    gi = lay.coord(k, r, i)
                    for c in range(rows):
                        for j in range(w):
                            e[gi][lay.coord(k, c, j)] = img[r * w + i, c * w + j]
        ops.append(FiniteSupportOperator(tf, Matrix(e, fld)))
    return GroupElement(spec.target, tuple(ops))


def embed_in_pair(pair: "PairDescriptor", g: GroupElement) -> GroupElement:
    """Image of an element of ``L`` as an element of ``G``."""
    return embed_straight(pair.embedding, g).viewed_in(pair.G)


@dataclass(frozen=True)
class PairDescriptor:
    """A group ``G`` with a heavy subgroup ``L`` straightly embedded in the
    maximal heavy subgroup of ``G``."""

    G: GroupDescriptor
    L: GroupDescriptor
    embedding: EmbeddingSpec
    name: str = ""

    def __post_init__(self):
        if self.embedding.source != self.L:
            raise EmbeddingError("embedding source must be L")
        if self.embedding.target != self.G.maximal_heavy():
            raise EmbeddingError(f"embedding target must be {self.G.maximal_heavy()}")

    @property
    def layouts(self) -> tuple[FactorLayout, ...]:
        return self.embedding.layouts()

    @property
    def index_arity(self) -> int:
        return self.L.arity

    def to_json(self):
        if self.name and self.name in PAIR_PRESETS:
            return self.name
        return {"G": self.G.to_json(), "L": self.L.to_json(), "embedding": self.embedding.to_json()}

    @classmethod
    def from_json(cls, obj) -> "PairDescriptor":
        if isinstance(obj, str):
            return pair_preset(obj)
        return cls(GroupDescriptor.from_json(obj["G"]), GroupDescriptor.from_json(obj["L"]),
                   EmbeddingSpec.from_json(obj["embedding"]))


def is_pure(pair: PairDescriptor | EmbeddingSpec) -> bool:
    """True iff the embedding has no identity block of any size."""
    spec = pair.embedding if isinstance(pair, PairDescriptor) else pair
    return not any(isinstance(s, IdentityBlock) for f in spec.slots for s in f)


def _pair(name, g_kinds, l_kinds, slots) -> PairDescriptor:
    G = GroupDescriptor.of(*g_kinds)
    L = GroupDescriptor.of(*l_kinds)
    return PairDescriptor(G, L, EmbeddingSpec(L, G.maximal_heavy(), slots), name)


def _build_presets():
    ID, OU, CJ, UO = Tag.ID, Tag.O_TO_U, Tag.CONJ, Tag.U_TO_O2
    return {
        "GL_R/O": _pair("GL_R/O", ["GL_R"], ["O"], [[TrivialHom(ID, 0)]]),
        "GL_C/U": _pair("GL_C/U", ["GL_C"], ["U"], [[TrivialHom(ID, 0)]]),
        "U/O": _pair("U/O", ["U"], ["O"], [[TrivialHom(OU, 0)]]),
        "O/U": _pair("O/U", ["O"], ["U"], [[TrivialHom(UO, 0)]]),
        "GL_R^2/O": _pair("GL_R^2/O", ["GL_R", "GL_R"], ["O"],
                          [[TrivialHom(ID, 0)], [TrivialHom(ID, 0)]]),
        "GL_C^2/U": _pair("GL_C^2/U", ["GL_C", "GL_C"], ["U"],
                          [[TrivialHom(ID, 0)], [TrivialHom(CJ, 0)]]),
        "U(2inf)/OxO": _pair("U(2inf)/OxO", ["U"], ["O", "O"],
                             [[TrivialHom(OU, 0), TrivialHom(OU, 1)]]),
        "GL_R(3inf)/O^3": _pair("GL_R(3inf)/O^3", ["GL_R"], ["O", "O", "O"],
                                [[TrivialHom(ID, 0), TrivialHom(ID, 1), TrivialHom(ID, 2)]]),
        "GL_R(1+3inf)/O^3": _pair("GL_R(1+3inf)/O^3", ["GL_R"], ["O", "O", "O"],
                                  [[IdentityBlock(1), TrivialHom(ID, 0), TrivialHom(ID, 1),
                                    TrivialHom(ID, 2)]]),
        "mantle": _pair("mantle", ["GL_R"], ["O"], [[TrivialHom(ID, 0), IdentityBlock(INF)]]),
    }


PAIR_PRESETS: dict[str, PairDescriptor] = _build_presets()


def pair_preset(name: str) -> PairDescriptor:
    try:
        return PAIR_PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown pair {name!r}; choose from {sorted(PAIR_PRESETS)}") from None


def mantle_pair() -> PairDescriptor:
    """``(GL_R, O)`` with O acting on even coordinates only; odd coordinates are fixed."""
    return PAIR_PRESETS["mantle"]
