"""Exact dense linear algebra over Q and Q(i).

Rationals are ``gmpy2.mpq``; Gaussian rationals are :class:`GaussRat`, a
pair of ``mpq`` parts.  Every matrix carries a field tag (``"Q"`` or
``"Qi"``) and all of its entries live in that field.  Nothing here ever
rounds.

Subspaces are stored by their reduced row-echelon basis, so two
:class:`Subspace` values describing the same set of vectors compare equal
bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

__all__ = [
    "Q",
    "QI",
    "GaussRat",
    "Matrix",
    "Subspace",
    "ShapeError",
    "SingularMatrixError",
    "FieldMismatchError",
    "to_scalar",
    "parse_scalar",
    "format_scalar",
    "conj",
    "norm2",
    "rref",
    "rref_rows",
    "kernel",
    "kernel_of_rows",
    "coordinate_project",
    "subspace_equal",
    "intersect",
    "matrix_product",
    "matrix_inverse",
    "determinant",
]

Q = "Q"
QI = "Qi"


class ShapeError(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


class FieldMismatchError(TypeError):
    pass


class GaussRat:
    """Exact element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", mpq(re))
        object.__setattr__(self, "im", mpq(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @staticmethod
    def _lift(x):
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, complex):
            return GaussRat(Fraction(x.real), Fraction(x.imag))
        return GaussRat(x, 0)

    def __add__(self, other):
        o = self._lift(other)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, GaussRat):
            o = mpq(other)
            return GaussRat(self.re * o, self.im * o)
        return GaussRat(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        d = o.re * o.re + o.im * o.im
        if not d:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussRat((self.re * o.re + self.im * o.im) / d,
                        (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)) or type(other).__name__ == "mpq":
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def norm2(self):
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


_ZERO = {Q: mpq(0), QI: GaussRat(0, 0)}
_ONE = {Q: mpq(1), QI: GaussRat(1, 0)}


def zero(field: str):
    return _ZERO[field]


def one(field: str):
    return _ONE[field]


def parse_scalar(text, field: str = Q):
    """Parse ``"p/q"`` (Q) or ``"a/b+c/d*i"`` (Qi) into a field element."""
    if not isinstance(text, str):
        return to_scalar(text, field)
    s = text.replace(" ", "")
    if field == Q:
        if "i" in s:
            raise FieldMismatchError(f"imaginary scalar {text!r} in field Q")
        return mpq(s.lstrip("+"))
    if not s.endswith("i"):
        return GaussRat(mpq(s.lstrip("+")), 0)
    body = s[:-1]
    if body.endswith("*"):
        body = body[:-1]
    k = max(body.rfind("+"), body.rfind("-"))
    re_txt, im_txt = (body[:k], body[k:]) if k > 0 else ("", body)
    if im_txt in ("", "+"):
        im_part = mpq(1)
    elif im_txt == "-":
        im_part = mpq(-1)
    else:
        im_part = mpq(im_txt.lstrip("+"))
    return GaussRat(mpq(re_txt) if re_txt else mpq(0), im_part)


def format_scalar(x) -> str:
    if isinstance(x, GaussRat):
        if not x.im:
            return str(x.re)
        im = str(x.im)
        if not x.re:
            return f"{im}*i"
        sign = "" if im.startswith("-") else "+"
        return f"{x.re}{sign}{im}*i"
    return str(mpq(x))


def to_scalar(x, field: str):
    if field == Q:
        if isinstance(x, GaussRat):
            if x.im:
                raise FieldMismatchError("non-real entry in a Q matrix")
            return x.re
        if isinstance(x, str):
            return parse_scalar(x, Q)
        if isinstance(x, float):
            return mpq(Fraction(x))
        if isinstance(x, complex):
            raise FieldMismatchError("complex entry in a Q matrix")
        return mpq(x)
    if field == QI:
        if isinstance(x, str):
            return parse_scalar(x, QI)
        if isinstance(x, float):
            return GaussRat(Fraction(x), 0)
        return GaussRat._lift(x)
    raise ValueError(f"unknown field tag {field!r}")


def conj(x):
    return x.conjugate() if isinstance(x, GaussRat) else x


def norm2(x):
    return x.norm2() if isinstance(x, GaussRat) else x * x


def _field_of(x) -> str:
    return QI if isinstance(x, GaussRat) else Q


class Matrix:
    """Immutable dense matrix with exact entries from a single field."""

    __slots__ = ("field", "rows", "cols", "_e", "_hash")

    def __init__(self, entries: Sequence[Sequence], field: str | None = None,
                 cols: int | None = None, *, _trusted: bool = False):
        if _trusted:
            e = entries
        else:
            rows = [list(r) for r in entries]
            if field is None:
                field = QI if any(isinstance(x, (GaussRat, complex))
                                  for r in rows for x in r) else Q
            if field not in (Q, QI):
                raise ValueError(f"unknown field tag {field!r}")
            for r in rows:
                for x in r:
                    if field == Q and isinstance(x, GaussRat):
                        raise FieldMismatchError("Q(i) entry in a Q matrix")
                    if field == QI and type(x).__name__ == "mpq":
                        raise FieldMismatchError("Q entry in a Q(i) matrix; convert first")
            e = tuple(tuple(to_scalar(x, field) for x in r) for r in rows)
        if cols is None:
            cols = len(e[0]) if e else 0
        if any(len(r) != cols for r in e):
            raise ShapeError("ragged matrix rows")
        self.field = field or Q
        self.rows = len(e)
        self.cols = cols
        self._e = e
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def _make(cls, e, field, cols):
        return cls(e, field, cols, _trusted=True)

    @classmethod
    def from_rows(cls, rows, field: str | None = None) -> "Matrix":
        return cls(rows, field)

    @classmethod
    def identity(cls, n: int, field: str = Q) -> "Matrix":
        z, o = zero(field), one(field)
        return cls._make(tuple(tuple(o if i == j else z for j in range(n))
                               for i in range(n)), field, n)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: str = Q) -> "Matrix":
        z = zero(field)
        return cls._make(tuple((z,) * cols for _ in range(rows)), field, cols)

    @classmethod
    def diag(cls, values, field: str = Q) -> "Matrix":
        vals = [to_scalar(v, field) for v in values]
        n = len(vals)
        z = zero(field)
        return cls._make(tuple(tuple(vals[i] if i == j else z for j in range(n))
                               for i in range(n)), field, n)

    @classmethod
    def block(cls, blocks, field: str = Q) -> "Matrix":
        """Assemble a block matrix; ``None`` or ``0`` marks a zero block."""
        row_h = []
        for brow in blocks:
            h = {b.rows for b in brow if isinstance(b, Matrix)}
            if len(h) != 1:
                raise ShapeError("inconsistent block heights")
            row_h.append(h.pop())
        col_w = []
        for j in range(len(blocks[0])):
            w = {brow[j].cols for brow in blocks if isinstance(brow[j], Matrix)}
            if len(w) != 1:
                raise ShapeError("inconsistent block widths")
            col_w.append(w.pop())
        z = zero(field)
        out = []
        for bi, brow in enumerate(blocks):
            for r in range(row_h[bi]):
                line = []
                for bj, b in enumerate(brow):
                    if isinstance(b, Matrix):
                        line.extend(b._e[r])
                    else:
                        line.extend((z,) * col_w[bj])
                out.append(tuple(line))
        return cls._make(tuple(out), field, sum(col_w))

    # access -----------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def row(self, i):
        return self._e[i]

    def col(self, j):
        return tuple(r[j] for r in self._e)

    def tolist(self):
        return [list(r) for r in self._e]

    def entries(self):
        return self._e

    def sub(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        e = self._e
        return Matrix._make(tuple(tuple(e[i][j] for j in cols) for i in rows),
                            self.field, len(cols))

    def slice(self, r0, r1, c0, c1) -> "Matrix":
        return Matrix._make(tuple(r[c0:c1] for r in self._e[r0:r1]),
                            self.field, max(0, c1 - c0))

    def pad(self, n: int) -> "Matrix":
        """Embed a square matrix into the upper-left of an n x n identity."""
        if self.rows != self.cols:
            raise ShapeError("pad needs a square matrix")
        k = self.rows
        if n < k:
            raise ShapeError(f"cannot pad {k}x{k} down to {n}")
        if n == k:
            return self
        z, o = zero(self.field), one(self.field)
        out = [r + (z,) * (n - k) for r in self._e]
        for i in range(k, n):
            out.append(tuple(o if j == i else z for j in range(n)))
        return Matrix._make(tuple(out), self.field, n)

    def to_field(self, field: str) -> "Matrix":
        if field == self.field:
            return self
        return Matrix._make(tuple(tuple(to_scalar(x, field) for x in r) for r in self._e),
                            field, self.cols)

    # algebra ----------------------------------------------------------
    def _check_field(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return matrix_product(self, other)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeError("shape mismatch in addition")
        return Matrix._make(tuple(tuple(a + b for a, b in zip(r, s))
                                  for r, s in zip(self._e, other._e)), self.field, self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ShapeError("shape mismatch in subtraction")
        return Matrix._make(tuple(tuple(a - b for a, b in zip(r, s))
                                  for r, s in zip(self._e, other._e)), self.field, self.cols)

    def __neg__(self) -> "Matrix":
        return Matrix._make(tuple(tuple(-a for a in r) for r in self._e), self.field, self.cols)

    def scale(self, c) -> "Matrix":
        c = to_scalar(c, self.field)
        return Matrix._make(tuple(tuple(c * a for a in r) for r in self._e), self.field, self.cols)

    def apply(self, vec: Sequence) -> tuple:
        z = zero(self.field)
        nz = [(j, v) for j, v in enumerate(vec) if v]
        return tuple(sum((r[j] * v for j, v in nz), z) for r in self._e)

    @property
    def T(self) -> "Matrix":
        if not self.rows:
            return Matrix._make(tuple(() for _ in range(self.cols)), self.field, 0)
        return Matrix._make(tuple(zip(*self._e)), self.field, self.rows)

    def conj(self) -> "Matrix":
        if self.field == Q:
            return self
        return Matrix._make(tuple(tuple(x.conjugate() for x in r) for r in self._e),
                            self.field, self.cols)

    @property
    def H(self) -> "Matrix":
        return self.T.conj()

    def inverse(self) -> "Matrix":
        return matrix_inverse(self)

    def det(self):
        return determinant(self)

    def is_identity(self) -> bool:
        o = one(self.field)
        return self.rows == self.cols and all(
            (x == o) if i == j else (not x)
            for i, r in enumerate(self._e) for j, x in enumerate(r))

    def is_zero(self) -> bool:
        return not any(x for r in self._e for x in r)

    def kron(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        out = []
        for r in self._e:
            for s in other._e:
                out.append(tuple(a * b for a in r for b in s))
        return Matrix._make(tuple(out), self.field, self.cols * other.cols)

    def max_abs(self) -> float:
        """Largest entry modulus, as a float (for diagnostics only)."""
        best = 0.0
        for r in self._e:
            for x in r:
                v = float(norm2(x)) ** 0.5
                best = max(best, v)
        return best

    # comparison / io --------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self._e == other._e)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.rows, self.cols, self._e))
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_scalar(x) for x in r) + "]" for r in self._e)
        return f"Matrix[{self.field}]({self.rows}x{self.cols}: [{body}])"

    def to_json(self) -> dict:
        return {"field": self.field, "rows": self.rows, "cols": self.cols,
                "entries": [[format_scalar(x) for x in r] for r in self._e]}

    @classmethod
    def from_json(cls, obj) -> "Matrix":
        if isinstance(obj, list):
            return cls(obj)
        field = obj.get("field", Q)
        entries = obj["entries"]
        rows = obj.get("rows", len(entries))
        cols = obj.get("cols", len(entries[0]) if entries else 0)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ShapeError("matrix JSON dimensions do not match entries")
        e = tuple(tuple(parse_scalar(x, field) for x in r) for r in entries)
        return cls._make(e, field, cols)


# ---------------------------------------------------------------------------
# elimination


def _eliminate(rows: Iterable[dict], field: str) -> dict[int, dict]:
    """Fully reduced echelon form of sparse rows, keyed by pivot column.

    Rows are consumed one at a time and reduced against the current pivot
    rows, so memory stays bounded by the rank.
    """
    o = one(field)
    piv: dict[int, dict] = {}
    for src in rows:
        r = {k: v for k, v in src.items() if v}
        for c in [c for c in r if c in piv]:
            f = r.get(c)
            if not f:
                continue
            for k, v in piv[c].items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        if not r:
            continue
        p = min(r)
        inv = o / r[p]
        r = {k: v * inv for k, v in r.items()}
        for prow in piv.values():
            f = prow.get(p)
            if f:
                for k, v in r.items():
                    nv = prow.get(k, 0) - f * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        piv[p] = r
    return piv


def rref_rows(rows: Iterable[dict], ncols: int, field: str = Q) -> tuple[Matrix, list[int]]:
    """RREF of a matrix given as sparse ``{col: value}`` rows."""
    piv = _eliminate(rows, field)
    z = zero(field)
    pivots = sorted(piv)
    out = tuple(tuple(piv[p].get(j, z) for j in range(ncols)) for p in pivots)
    return Matrix._make(out, field, ncols), pivots


def _sparse(m: Matrix):
    for r in m.entries():
        yield {j: x for j, x in enumerate(r) if x}


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form with zero rows dropped, and its pivot columns."""
    return rref_rows(_sparse(m), m.cols, m.field)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^n held by its canonical (RREF) basis, one vector per row."""

    ambient_dim: int
    basis: Matrix
    pivot_cols: tuple[int, ...]

    @property
    def field(self) -> str:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.rows

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int, field: str = Q) -> "Subspace":
        rows = ({j: to_scalar(x, field) for j, x in enumerate(v) if x} for v in vectors)
        b, piv = rref_rows(rows, ambient_dim, field)
        return cls(ambient_dim, b, tuple(piv))

    @classmethod
    def from_matrix(cls, m: Matrix) -> "Subspace":
        b, piv = rref(m)
        return cls(m.cols, b, tuple(piv))

    @classmethod
    def zero(cls, ambient_dim: int, field: str = Q) -> "Subspace":
        return cls(ambient_dim, Matrix._make((), field, ambient_dim), ())

    @classmethod
    def full(cls, ambient_dim: int, field: str = Q) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ambient_dim, field), tuple(range(ambient_dim)))

    def vectors(self):
        return self.basis.entries()

    def contains(self, v: Sequence) -> bool:
        vv = [to_scalar(x, self.field) for x in v]
        for row, p in zip(self.basis.entries(), self.pivot_cols):
            c = vv[p]
            if c:
                vv = [a - c * b for a, b in zip(vv, row)]
        return not any(vv)

    def coordinates(self, v: Sequence) -> tuple:
        """Coordinates of ``v`` in the canonical basis (v must lie in the subspace)."""
        return tuple(v[p] for p in self.pivot_cols)

    def annihilator(self) -> Matrix:
        """Rows spanning {w : sum_i w_i v_i = 0 for every v in the subspace}."""
        return kernel(self.basis).basis

    def to_json(self) -> dict:
        return {"ambient": self.ambient_dim, "basis": self.basis.to_json()}


def kernel_of_rows(rows: Iterable[dict], ncols: int, field: str = Q) -> Subspace:
    piv = _eliminate(rows, field)
    o = one(field)
    free = [j for j in range(ncols) if j not in piv]
    vecs = []
    for f in free:
        v = {f: o}
        for p, r in piv.items():
            x = r.get(f)
            if x:
                v[p] = -x
        vecs.append(v)
    b, pv = rref_rows(vecs, ncols, field)
    return Subspace(ncols, b, tuple(pv))


def kernel(m: Matrix) -> Subspace:
    """{v : m v = 0} in canonical form."""
    return kernel_of_rows(_sparse(m), m.cols, m.field)


def coordinate_project(s: Subspace, coords: Sequence[int]) -> Subspace:
    coords = list(coords)
    if any(c < 0 or c >= s.ambient_dim for c in coords):
        raise IndexError("projection coordinate out of range")
    rows = ({k: r[c] for k, c in enumerate(coords) if r[c]} for r in s.basis.entries())
    b, piv = rref_rows(rows, len(coords), s.field)
    return Subspace(len(coords), b, tuple(piv))


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    if a.ambient_dim != b.ambient_dim:
        raise ShapeError("subspaces live in different ambient spaces")
    if a.field != b.field:
        raise FieldMismatchError("subspaces over different fields")
    return a.pivot_cols == b.pivot_cols and a.basis == b.basis


def intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ShapeError("subspaces live in different ambient spaces")
    cons = list(_sparse(a.annihilator())) + list(_sparse(b.annihilator()))
    return kernel_of_rows(cons, a.ambient_dim, a.field)


# ---------------------------------------------------------------------------
# products, inverses, determinants


def matrix_product(a: Matrix, b: Matrix) -> Matrix:
    a._check_field(b)
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    z = zero(a.field)
    bcols = list(zip(*b.entries())) if b.rows else [()] * b.cols
    if not b.rows:
        return Matrix.zeros(a.rows, b.cols, a.field)
    out = []
    for r in a.entries():
        nz = [(k, x) for k, x in enumerate(r) if x]
        out.append(tuple(sum((x * col[k] for k, x in nz), z) for col in bcols))
    return Matrix._make(tuple(out), a.field, b.cols)


def matrix_inverse(a: Matrix) -> Matrix:
    if a.rows != a.cols:
        raise ShapeError("inverse of a non-square matrix")
    n = a.rows
    o = one(a.field)
    rows = []
    for i, r in enumerate(a.entries()):
        d = {j: x for j, x in enumerate(r) if x}
        d[n + i] = o
        rows.append(d)
    piv = _eliminate(rows, a.field)
    if any(p not in piv for p in range(n)):
        raise SingularMatrixError("matrix is singular")
    z = zero(a.field)
    return Matrix._make(tuple(tuple(piv[i].get(n + j, z) for j in range(n)) for i in range(n)),
                        a.field, n)


def determinant(a: Matrix):
    """Bareiss fraction-free elimination."""
    if a.rows != a.cols:
        raise ShapeError("determinant of a non-square matrix")
    n = a.rows
    o = one(a.field)
    if n == 0:
        return o
    m = [list(r) for r in a.entries()]
    sign = 1
    prev = o
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return zero(a.field)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return m[n - 1][n - 1] * sign
