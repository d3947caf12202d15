"""Exact arithmetic over three division rings and matrices over them.

Supported rings are the rationals, prime fields F_p and the rational
quaternions.  Scalars are kept as raw payloads inside matrices and wrapped in
:class:`Scalar` at the public boundary.  A rational payload is an ``int`` when
integral and a ``gmpy2.mpq`` otherwise (so equality stays structural); a residue
is an ``int`` in [0, p); a quaternion is a 4-tuple of rational payloads.

Matrices act from the left on column vectors of right D-spaces, so the order
of factors in every product is significant.  Elimination uses the first
nonzero pivot in scan order; there is no floating point anywhere.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import repeat
from typing import Callable, Iterable, Optional, Sequence

from gmpy2 import mpq

from . import errors

RATIONALS = "rationals"
PRIME_FIELD = "prime_field"
QUATERNIONS = "rational_quaternions"
KINDS = (RATIONALS, PRIME_FIELD, QUATERNIONS)

_ZQ = 0
_OQ = 1


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


_MPQ = type(mpq(1, 2))


def _norm(x):
    """Demote an integral fraction to int; rational payloads are int or mpq."""
    if type(x) is _MPQ and x.denominator == 1:
        return int(x.numerator)
    return x


def _parse_fraction(text: str):
    text = text.strip().replace("−", "-")
    if not text:
        raise errors.ParseError("empty scalar")
    try:
        if "/" in text:
            num, den = text.split("/")
            value = mpq(int(num), int(den))
        else:
            value = int(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise errors.ParseError(f"bad rational {text!r}") from exc
    return _norm(value)


def _rational_inv(a):
    if not a:
        raise errors.ZeroInversion("inverse of zero")
    return _norm(mpq(1) / a)


def _rational_dot(row, col):
    return sum(map(operator.mul, row, col))


# quaternion payload helpers: (w, x, y, z) means w + xi + yj + zk

def _qadd(a, b):
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def _qsub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3])


def _qneg(a):
    return (-a[0], -a[1], -a[2], -a[3])


def _qmul(a, b):
    aw, ax, ay, az = a
    bw, bx, by, bz = b
    return (
        aw * bw - ax * bx - ay * by - az * bz,
        aw * bx + ax * bw + ay * bz - az * by,
        aw * by - ax * bz + ay * bw + az * bx,
        aw * bz + ax * by - ay * bx + az * bw,
    )


def _qdot(row, col):
    w = x = y = z = 0
    for (aw, ax, ay, az), (bw, bx, by, bz) in zip(row, col):
        w += aw * bw - ax * bx - ay * by - az * bz
        x += aw * bx + ax * bw + ay * bz - az * by
        y += aw * by - ax * bz + ay * bw + az * bx
        z += aw * bz + ax * by - ay * bx + az * bw
    return (w, x, y, z)


def _qinv(a):
    norm = a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]
    if not norm:
        raise errors.ZeroInversion("inverse of zero quaternion")
    norm = mpq(norm)
    return (_norm(a[0] / norm), _norm(-a[1] / norm), _norm(-a[2] / norm), _norm(-a[3] / norm))


@dataclass(frozen=True)
class RingDescriptor:
    """Identifies the active division ring D and carries its arithmetic.

    The arithmetic callables operate on raw payloads.  Two descriptors are
    equal iff kind and modulus agree.
    """

    kind: str
    modulus: Optional[int] = None

    zero: object = field(init=False, repr=False, compare=False)
    one: object = field(init=False, repr=False, compare=False)
    add: Callable = field(init=False, repr=False, compare=False)
    sub: Callable = field(init=False, repr=False, compare=False)
    neg: Callable = field(init=False, repr=False, compare=False)
    mul: Callable = field(init=False, repr=False, compare=False)
    inv: Callable = field(init=False, repr=False, compare=False)
    dot: Callable = field(init=False, repr=False, compare=False)
    # raw product of row-tuple matrices: (a, b, cols of b) -> rows
    matmul: Callable = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise errors.InvariantError(f"unknown ring kind {self.kind!r}")
        if self.kind == PRIME_FIELD:
            if self.modulus is None or not is_prime(self.modulus):
                raise errors.InvariantError(f"modulus {self.modulus!r} is not prime")
        elif self.modulus is not None:
            raise errors.InvariantError(f"{self.kind} takes no modulus")
        put = lambda name, value: object.__setattr__(self, name, value)  # noqa: E731
        if self.kind == RATIONALS:
            put("zero", 0)
            put("one", 1)
            put("add", operator.add)
            put("sub", operator.sub)
            put("neg", operator.neg)
            put("mul", operator.mul)
            put("inv", _rational_inv)
            put("dot", _rational_dot)
            put("matmul", lambda a, b, bcols: _mm(a, b, bcols, _rational_dot))
        elif self.kind == PRIME_FIELD:
            p = self.modulus

            def inv(a):
                if a == 0:
                    raise errors.ZeroInversion(f"inverse of zero mod {p}")
                return pow(a, p - 2, p)

            put("zero", 0)
            put("one", 1)
            put("add", lambda a, b: (a + b) % p)
            put("sub", lambda a, b: (a - b) % p)
            put("neg", lambda a: (-a) % p)
            put("mul", lambda a, b: (a * b) % p)
            put("inv", inv)
            dot = lambda row, col: sum(map(operator.mul, row, col)) % p  # noqa: E731
            put("dot", dot)
            put("matmul", lambda a, b, bcols: _mm(a, b, bcols, dot))
        else:
            put("zero", (_ZQ, _ZQ, _ZQ, _ZQ))
            put("one", (_OQ, _ZQ, _ZQ, _ZQ))
            put("add", _qadd)
            put("sub", _qsub)
            put("neg", _qneg)
            put("mul", _qmul)
            put("inv", _qinv)
            put("dot", _qdot)
            put("matmul", _qmm)

    @classmethod
    def rationals(cls) -> "RingDescriptor":
        return cls(RATIONALS)

    @classmethod
    def prime_field(cls, p: int) -> "RingDescriptor":
        return cls(PRIME_FIELD, p)

    @classmethod
    def quaternions(cls) -> "RingDescriptor":
        return cls(QUATERNIONS)

    def __str__(self):
        if self.kind == PRIME_FIELD:
            return f"{self.kind} {self.modulus}"
        return self.kind

    @property
    def characteristic(self) -> int:
        return self.modulus if self.kind == PRIME_FIELD else 0

    @property
    def is_commutative(self) -> bool:
        return self.kind != QUATERNIONS

    @property
    def center_degree(self) -> int:
        """Dimension of D over its center (as a vector space)."""
        return 4 if self.kind == QUATERNIONS else 1

    # -- payload conversion --------------------------------------------------

    def from_int(self, n: int):
        if self.kind == RATIONALS:
            return n
        if self.kind == PRIME_FIELD:
            return n % self.modulus
        return (n, _ZQ, _ZQ, _ZQ)

    def coerce(self, x):
        """Turn an int, Fraction, str, tuple or Scalar into a payload."""
        if isinstance(x, Scalar):
            if x.descriptor != self:
                raise errors.DescriptorMismatch(f"{x.descriptor} scalar used in {self}")
            return x.value
        if isinstance(x, str):
            return self.parse(x)
        if self.kind == RATIONALS:
            if isinstance(x, (int, Fraction, _MPQ)):
                return _norm(mpq(x))
        elif self.kind == PRIME_FIELD:
            if isinstance(x, int):
                return x % self.modulus
            if isinstance(x, (Fraction, _MPQ)):
                return (x.numerator * self.inv(x.denominator % self.modulus)) % self.modulus
        else:
            if isinstance(x, (int, Fraction, _MPQ)):
                return (_norm(mpq(x)), _ZQ, _ZQ, _ZQ)
            if isinstance(x, tuple) and len(x) == 4:
                return tuple(_norm(mpq(c)) for c in x)
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def parse(self, text: str):
        text = text.strip()
        if self.kind == PRIME_FIELD:
            try:
                return int(text.replace("−", "-")) % self.modulus
            except ValueError as exc:
                raise errors.ParseError(f"bad residue {text!r}") from exc
        if self.kind == RATIONALS:
            return _parse_fraction(text)
        if text.startswith("("):
            if not text.endswith(")"):
                raise errors.ParseError(f"unbalanced quaternion {text!r}")
            parts = text[1:-1].split(",")
            if len(parts) != 4:
                raise errors.ParseError(f"quaternion needs 4 components: {text!r}")
            return tuple(_parse_fraction(c) for c in parts)
        return (_parse_fraction(text), _ZQ, _ZQ, _ZQ)

    def format(self, value) -> str:
        if self.kind == QUATERNIONS:
            return "(" + ", ".join(str(c) for c in value) + ")"
        return str(value)

    def is_zero(self, value) -> bool:
        return value == self.zero

    # -- structure used by later modules --------------------------------------

    def central_basis(self) -> list:
        """Payloads spanning D over its center."""
        if self.kind == QUATERNIONS:
            return [
                (_OQ, _ZQ, _ZQ, _ZQ),
                (_ZQ, _OQ, _ZQ, _ZQ),
                (_ZQ, _ZQ, _OQ, _ZQ),
                (_ZQ, _ZQ, _ZQ, _OQ),
            ]
        return [self.one]

    def to_center_coords(self, value) -> tuple:
        """Coordinates of a payload over the center (Q or F_p)."""
        if self.kind == QUATERNIONS:
            return value
        return (value,)

    def from_center_coords(self, coords):
        if self.kind == QUATERNIONS:
            return tuple(coords)
        return coords[0]

    def center_descriptor(self) -> "RingDescriptor":
        """Descriptor of the center as a field (Q for quaternions)."""
        if self.kind == QUATERNIONS:
            return RingDescriptor(RATIONALS)
        return self

    def trace_class(self, value):
        """Canonical representative of ``value`` in D/[D,D].

        Traces over a noncommutative division ring are only defined modulo
        additive commutators.  For the rational quaternions [D,D] is the
        space of pure quaternions, so the class is the real part.
        """
        if self.kind == QUATERNIONS:
            return (value[0], _ZQ, _ZQ, _ZQ)
        return value

    def scalar(self, x) -> "Scalar":
        return Scalar(self, self.coerce(x))


@dataclass(frozen=True)
class Scalar:
    """An exact element of the division ring named by ``descriptor``."""

    descriptor: RingDescriptor
    value: object

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.descriptor != self.descriptor:
                raise errors.DescriptorMismatch(f"{self.descriptor} vs {other.descriptor}")
            return other.value
        return self.descriptor.coerce(other)

    def __add__(self, other):
        return Scalar(self.descriptor, self.descriptor.add(self.value, self._other(other)))

    def __radd__(self, other):
        return Scalar(self.descriptor, self.descriptor.add(self._other(other), self.value))

    def __sub__(self, other):
        return Scalar(self.descriptor, self.descriptor.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.descriptor, self.descriptor.sub(self._other(other), self.value))

    def __mul__(self, other):
        return Scalar(self.descriptor, self.descriptor.mul(self.value, self._other(other)))

    def __rmul__(self, other):
        return Scalar(self.descriptor, self.descriptor.mul(self._other(other), self.value))

    def __neg__(self):
        return Scalar(self.descriptor, self.descriptor.neg(self.value))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.descriptor == other.descriptor and self.value == other.value
        try:
            return self.value == self.descriptor.coerce(other)
        except (TypeError, errors.FendError):
            return NotImplemented

    def __hash__(self):
        return hash((self.descriptor, self.value))

    def __bool__(self):
        return not self.descriptor.is_zero(self.value)

    def __str__(self):
        return self.descriptor.format(self.value)

    def __repr__(self):
        return f"Scalar({self.descriptor}, {self})"

    def inverse(self) -> "Scalar":
        return scalar_inverse(self)


def scalar_inverse(x: Scalar) -> Scalar:
    """Two-sided inverse; raises ZeroInversion for zero."""
    return Scalar(x.descriptor, x.descriptor.inv(x.value))


def central_generating_set(d: RingDescriptor) -> list[Scalar]:
    """Scalars spanning D over its center: {1}, or {1, i, j, k} for quaternions."""
    return [Scalar(d, v) for v in d.central_basis()]


class Matrix:
    """Dense immutable matrix over a division ring.

    ``data`` is a tuple of row tuples of raw payloads.  Indexing returns
    :class:`Scalar` objects.
    """

    __slots__ = ("descriptor", "rows", "cols", "data")

    def __init__(self, descriptor: RingDescriptor, rows: int, cols: int, data):
        if rows < 0 or cols < 0:
            raise errors.ShapeMismatch("negative dimension")
        data = tuple(tuple(r) for r in data)
        if len(data) != rows or any(len(r) != cols for r in data):
            raise errors.ShapeMismatch(f"data does not have shape {rows}x{cols}")
        self.descriptor = descriptor
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def _new(cls, descriptor: RingDescriptor, rows: int, cols: int, data: tuple) -> "Matrix":
        """Trusted constructor: ``data`` must already be a tuple of row tuples."""
        m = object.__new__(cls)
        m.descriptor = descriptor
        m.rows = rows
        m.cols = cols
        m.data = data
        return m

    @classmethod
    def from_rows(cls, descriptor: RingDescriptor, rows: Sequence[Sequence], cols: Optional[int] = None) -> "Matrix":
        """Build from nested sequences of anything ``coerce`` accepts."""
        rows = list(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        data = [tuple(descriptor.coerce(x) for x in r) for r in rows]
        return cls(descriptor, len(rows), cols, data)

    @classmethod
    def zeros(cls, descriptor: RingDescriptor, rows: int, cols: int) -> "Matrix":
        z = descriptor.zero
        return cls(descriptor, rows, cols, [(z,) * cols for _ in range(rows)])

    @classmethod
    def identity(cls, descriptor: RingDescriptor, n: int) -> "Matrix":
        z, o = descriptor.zero, descriptor.one
        return cls(descriptor, n, n, [tuple(o if i == j else z for j in range(n)) for i in range(n)])

    @classmethod
    def scalar_matrix(cls, descriptor: RingDescriptor, n: int, value) -> "Matrix":
        v = descriptor.coerce(value)
        z = descriptor.zero
        return cls(descriptor, n, n, [tuple(v if i == j else z for j in range(n)) for i in range(n)])

    @classmethod
    def unit(cls, descriptor: RingDescriptor, rows: int, cols: int, i: int, j: int, value=None) -> "Matrix":
        """Matrix with ``value`` (default 1) at (i, j) and zeros elsewhere."""
        v = descriptor.one if value is None else descriptor.coerce(value)
        data = [[descriptor.zero] * cols for _ in range(rows)]
        data[i][j] = v
        return cls(descriptor, rows, cols, data)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        return Scalar(self.descriptor, self.data[i][j])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.data == other.data and self.rows == other.rows and self.cols == other.cols
                and self.descriptor == other.descriptor)

    def __hash__(self):
        return hash((self.descriptor, self.rows, self.cols, self.data))

    def __repr__(self):
        return f"Matrix({self.descriptor}, {self.rows}x{self.cols}, {format_matrix(self)})"

    def __str__(self):
        return format_matrix(self)

    def _check(self, other: "Matrix"):
        if self.descriptor is not other.descriptor and self.descriptor != other.descriptor:
            raise errors.DescriptorMismatch(f"{self.descriptor} vs {other.descriptor}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise errors.ShapeMismatch(f"{self.shape} + {other.shape}")
        add = self.descriptor.add
        return Matrix._new(self.descriptor, self.rows, self.cols,
                           tuple(tuple(map(add, r, s)) for r, s in zip(self.data, other.data)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise errors.ShapeMismatch(f"{self.shape} - {other.shape}")
        sub = self.descriptor.sub
        return Matrix._new(self.descriptor, self.rows, self.cols,
                           tuple(tuple(map(sub, r, s)) for r, s in zip(self.data, other.data)))

    def __neg__(self) -> "Matrix":
        neg = self.descriptor.neg
        return Matrix(self.descriptor, self.rows, self.cols, [tuple(map(neg, r)) for r in self.data])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def scale_right(self, c) -> "Matrix":
        """Entrywise ``m[i][j] * c``."""
        c = self.descriptor.coerce(c)
        mul = self.descriptor.mul
        return Matrix._new(self.descriptor, self.rows, self.cols,
                           tuple(tuple(mul(x, c) for x in r) for r in self.data))

    def scale_left(self, c) -> "Matrix":
        """Entrywise ``c * m[i][j]``."""
        c = self.descriptor.coerce(c)
        mul = self.descriptor.mul
        return Matrix._new(self.descriptor, self.rows, self.cols,
                           tuple(tuple(mul(c, x) for x in r) for r in self.data))

    def transpose(self) -> "Matrix":
        """Plain index transpose; not an anti-homomorphism over noncommutative D."""
        return Matrix(self.descriptor, self.cols, self.rows, list(zip(*self.data)) if self.rows else
                      [() for _ in range(self.cols)])

    def is_zero(self) -> bool:
        z = self.descriptor.zero
        return all(x == z for r in self.data for x in r)

    def flat(self) -> list:
        return [x for r in self.data for x in r]

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return Matrix(self.descriptor, r1 - r0, c1 - c0, [r[c0:c1] for r in self.data[r0:r1]])

    def row(self, i: int) -> "Matrix":
        return Matrix(self.descriptor, 1, self.cols, [self.data[i]])

    def column(self, j: int) -> "Matrix":
        return Matrix(self.descriptor, self.rows, 1, [(r[j],) for r in self.data])

    def trace_sum(self) -> Scalar:
        """Plain sum of the diagonal entries (no commutator reduction)."""
        if self.rows != self.cols:
            raise errors.ShapeMismatch("trace of non-square matrix")
        add = self.descriptor.add
        acc = self.descriptor.zero
        for i in range(self.rows):
            acc = add(acc, self.data[i][i])
        return Scalar(self.descriptor, acc)


def hstack(*blocks: Matrix) -> Matrix:
    d = blocks[0].descriptor
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise errors.ShapeMismatch("hstack with unequal row counts")
    data = [sum((b.data[i] for b in blocks), ()) for i in range(rows)]
    return Matrix(d, rows, sum(b.cols for b in blocks), data)


def vstack(*blocks: Matrix) -> Matrix:
    d = blocks[0].descriptor
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise errors.ShapeMismatch("vstack with unequal column counts")
    return Matrix(d, sum(b.rows for b in blocks), cols, [r for b in blocks for r in b.data])


def format_matrix(m: Matrix) -> str:
    """Canonical bracketed row syntax, e.g. ``[[1, 0], [0, 1]]``."""
    fmt = m.descriptor.format
    return "[" + ", ".join("[" + ", ".join(fmt(x) for x in r) + "]" for r in m.data) + "]"


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Product with factor order preserved: ``c[i][j] = sum_t a[i][t] * b[t][j]``."""
    if a.descriptor is not b.descriptor and a.descriptor != b.descriptor:
        raise errors.DescriptorMismatch(f"{a.descriptor} vs {b.descriptor}")
    if a.cols != b.rows:
        raise errors.ShapeMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return Matrix._new(a.descriptor, a.rows, b.cols, a.descriptor.matmul(a.data, b.data, b.cols))


def _mm(a: tuple, b: tuple, bcols: int, dot) -> tuple:
    """Raw product of row-tuple data; shapes are the caller's responsibility."""
    cols = list(zip(*b)) if b else [()] * bcols
    return tuple([tuple(map(dot, repeat(row), cols)) for row in a])


def _qmm(a: tuple, b: tuple, bcols: int) -> tuple:
    """_mm specialised to quaternion payloads, with the dot product inlined."""
    cols = list(zip(*b)) if b else [()] * bcols
    out = []
    for row in a:
        entries = []
        for col in cols:
            w = x = y = z = 0
            for (aw, ax, ay, az), (bw, bx, by, bz) in zip(row, col):
                w += aw * bw - ax * bx - ay * by - az * bz
                x += aw * bx + ax * bw + ay * bz - az * by
                y += aw * by - ax * bz + ay * bw + az * bx
                z += aw * bz + ax * by - ay * bx + az * bw
            entries.append((w, x, y, z))
        out.append(tuple(entries))
    return tuple(out)


def _madd(a: tuple, b: tuple, add) -> tuple:
    return tuple(tuple(map(add, r, s)) for r, s in zip(a, b))


# -- elimination --------------------------------------------------------------
#
# One routine serves both sides.  Left row operations use ``mul``; running the
# same routine on the transpose with the opposite product ``mul(b, a)`` is
# right column elimination, i.e. elimination over the opposite ring.

def _row_reduce(rows: list[list], ncols: int, d: RingDescriptor, mul) -> tuple[list[list], list[int]]:
    """Reduced row echelon form under left multiplication (w.r.t. ``mul``).

    Returns the reduced rows and the pivot columns.  Pivot choice is the first
    nonzero entry in scan order.
    """
    rows = [list(r) for r in rows]
    zero, sub, inv = d.zero, d.sub, d.inv
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != zero), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        s = inv(rows[r][c])
        rows[r] = [mul(s, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != zero:
                f = rows[i][c]
                rows[i] = [sub(x, mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def _opposite(mul):
    return lambda a, b: mul(b, a)


def row_rank(a: Matrix) -> int:
    """Dimension of the left span of the rows."""
    _, piv = _row_reduce(a.data, a.cols, a.descriptor, a.descriptor.mul)
    return len(piv)


def column_rank(a: Matrix) -> int:
    """Dimension of the right span of the columns, by right column elimination."""
    t = a.transpose()
    _, piv = _row_reduce(t.data, t.cols, a.descriptor, _opposite(a.descriptor.mul))
    return len(piv)


def mat_rank(a: Matrix) -> int:
    r = row_rank(a)
    c = column_rank(a)
    assert r == c, f"row rank {r} != column rank {c} for {a!r}"
    return r


def mat_inverse(a: Matrix) -> Matrix:
    """Gauss-Jordan inverse using left row operations only."""
    if a.rows != a.cols:
        raise errors.ShapeMismatch(f"inverse of non-square {a.shape} matrix")
    n = a.rows
    d = a.descriptor
    ident = Matrix.identity(d, n).data
    aug = [list(a.data[i]) + list(ident[i]) for i in range(n)]
    red, piv = _row_reduce(aug, n, d, d.mul)
    if piv != list(range(n)):
        raise errors.Singular(f"matrix {format_matrix(a)} is singular")
    return Matrix(d, n, n, [r[n:] for r in red])


def is_invertible(a: Matrix) -> bool:
    return a.rows == a.cols and row_rank(a) == a.rows


def _null_vector(columns: list[list], d: RingDescriptor, mul) -> Optional[list]:
    """A nonzero d with sum_i columns[i] * d_i = 0 (product order per ``mul``)."""
    t = len(columns)
    height = len(columns[0])
    rows = [[columns[i][r] for i in range(t)] for r in range(height)]
    red, piv = _row_reduce(rows, t, d, mul)
    free = next((c for c in range(t) if c not in piv), None)
    if free is None:
        return None
    coeffs = [d.zero] * t
    coeffs[free] = d.one
    for r, p in enumerate(piv):
        if p < free:
            coeffs[p] = d.neg(red[r][free])
    return coeffs


def _check_family(family: Sequence[Matrix]):
    if not family:
        raise errors.EmptyFamily("dependency of an empty family")
    first = family[0]
    for m in family[1:]:
        if m.descriptor != first.descriptor:
            raise errors.DescriptorMismatch("mixed descriptors in family")
        if m.shape != first.shape:
            raise errors.ShapeMismatch("mixed shapes in family")


def right_dependency(family: Sequence[Matrix]) -> Optional[list[Scalar]]:
    """Coefficients d, not all zero, with ``sum_i M_i * d_i = 0``, or None."""
    _check_family(family)
    d = family[0].descriptor
    if family[0].rows * family[0].cols == 0:
        return [Scalar(d, d.one)] + [Scalar(d, d.zero)] * (len(family) - 1)
    coeffs = _null_vector([m.flat() for m in family], d, d.mul)
    return None if coeffs is None else [Scalar(d, c) for c in coeffs]


def left_dependency(family: Sequence[Matrix]) -> Optional[list[Scalar]]:
    """Coefficients d, not all zero, with ``sum_i d_i * M_i = 0``, or None."""
    _check_family(family)
    d = family[0].descriptor
    if family[0].rows * family[0].cols == 0:
        return [Scalar(d, d.one)] + [Scalar(d, d.zero)] * (len(family) - 1)
    coeffs = _null_vector([m.flat() for m in family], d, _opposite(d.mul))
    return None if coeffs is None else [Scalar(d, c) for c in coeffs]


def central_dependency(family: Sequence[Matrix]) -> Optional[list[Scalar]]:
    """A dependency whose coefficients lie in the center of D.

    Central coefficients commute with everything, so they may be moved across
    a sandwiched factor.  Over commutative D this is ``right_dependency``.
    """
    _check_family(family)
    d = family[0].descriptor
    if d.is_commutative:
        return right_dependency(family)
    z = d.center_descriptor()
    cols = [[c for x in m.flat() for c in d.to_center_coords(x)] for m in family]
    if not cols[0]:
        return [Scalar(d, d.one)] + [Scalar(d, d.zero)] * (len(family) - 1)
    coeffs = _null_vector(cols, z, z.mul)
    if coeffs is None:
        return None
    return [Scalar(d, d.coerce(c)) for c in coeffs]


def combine_right(family: Sequence[Matrix], coeffs: Iterable) -> Matrix:
    """``sum_i M_i * c_i``."""
    out = None
    for m, c in zip(family, coeffs):
        term = m.scale_right(c)
        out = term if out is None else out + term
    return out


def combine_left(family: Sequence[Matrix], coeffs: Iterable) -> Matrix:
    """``sum_i c_i * M_i``."""
    out = None
    for m, c in zip(family, coeffs):
        term = m.scale_left(c)
        out = term if out is None else out + term
    return out
