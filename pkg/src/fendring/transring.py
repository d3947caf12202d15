"""The ring V (x)_D Pi of finitary maps generated by rank-one transvections.

V = D^n is a right D-space of column vectors.  A subspace Pi of V* is given
by a basis f_1..f_k, recorded as the k x n evaluation matrix F with
F[b][a] = f_b(e_a).  An element sum_{a,b} e_a (x) lambda_ab f_b is stored as
its n x k coefficient matrix Lambda; products are Lambda F Lambda', and the
element acts on V by the n x n matrix Lambda F.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from . import errors
from .exactalg import (
    Matrix, RingDescriptor, Scalar, _madd, format_matrix, left_dependency, mat_mul, mat_rank,
)
from .report import Report


@dataclass(frozen=True)
class DualSystem:
    """The pair (V, Pi) with dim V = n, dim Pi = k and evaluation matrix F."""

    descriptor: RingDescriptor
    n: int
    k: int
    F: Matrix

    def __post_init__(self):
        self._validate_shape()
        if mat_rank(self.F) != self.k:
            raise errors.InvariantError(
                f"evaluation matrix {format_matrix(self.F)} has rank < k = {self.k}")

    def _validate_shape(self):
        if self.n < 1 or self.k < 1:
            raise errors.InvariantError("n and k must be positive")
        if self.k > self.n:
            raise errors.InvariantError(f"k = {self.k} exceeds n = {self.n}")
        if self.F.descriptor != self.descriptor:
            raise errors.DescriptorMismatch("F uses a different descriptor")
        if self.F.shape != (self.k, self.n):
            raise errors.ShapeMismatch(f"F has shape {self.F.shape}, expected {(self.k, self.n)}")

    @classmethod
    def from_matrix(cls, F: Matrix) -> "DualSystem":
        return cls(F.descriptor, F.cols, F.rows, F)

    @classmethod
    def _unchecked(cls, F: Matrix) -> "DualSystem":
        """Build without the rank check (for fixtures exercising bad input)."""
        obj = object.__new__(cls)
        for name, value in (("descriptor", F.descriptor), ("n", F.cols), ("k", F.rows), ("F", F)):
            object.__setattr__(obj, name, value)
        return obj

    def element(self, rows) -> "RingElement":
        return RingElement(self, Matrix.from_rows(self.descriptor, rows, self.k))

    def zero(self) -> "RingElement":
        return RingElement(self, Matrix.zeros(self.descriptor, self.n, self.k))

    def basis_element(self, a: int, b: int, s=None) -> "RingElement":
        """e_a (x) s f_b; ``s`` defaults to 1."""
        return RingElement(self, Matrix.unit(self.descriptor, self.n, self.k, a, b, s))

    def spanning_set(self) -> list["RingElement"]:
        """e_a (x) s f_b for s in the central generating set; spans over the center."""
        return [self.basis_element(a, b, s)
                for a in range(self.n) for b in range(self.k)
                for s in self.descriptor.central_basis()]


@dataclass(frozen=True)
class RingElement:
    system: DualSystem
    L: Matrix

    def __post_init__(self):
        if self.L.shape != (self.system.n, self.system.k):
            raise errors.ShapeMismatch(
                f"coefficients of shape {self.L.shape}, expected {(self.system.n, self.system.k)}")

    def _same(self, other: "RingElement"):
        if other.system != self.system:
            raise errors.SystemMismatch("elements of different dual systems")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._same(other)
        return RingElement(self.system, self.L + other.L)

    def __sub__(self, other: "RingElement") -> "RingElement":
        self._same(other)
        return RingElement(self.system, self.L - other.L)

    def __neg__(self) -> "RingElement":
        return RingElement(self.system, -self.L)

    def __mul__(self, other: "RingElement") -> "RingElement":
        return re_multiply(self, other)

    def is_zero(self) -> bool:
        return self.L.is_zero()


@dataclass(frozen=True)
class Transvection:
    """t_{v,f}: u -> v f(u), with f = sum_b mu_b f_b (coefficients on the left)."""

    v: tuple
    mu: tuple

    @classmethod
    def of(cls, descriptor: RingDescriptor, v: Sequence, mu: Sequence) -> "Transvection":
        return cls(tuple(descriptor.scalar(x) for x in v), tuple(descriptor.scalar(x) for x in mu))

    def functional_row(self, s: DualSystem) -> Matrix:
        """The row vector of f in the coordinates of V*, i.e. mu F."""
        mu = Matrix(s.descriptor, 1, s.k, [[x.value for x in self.mu]])
        return mat_mul(mu, s.F)

    def evaluate(self, s: DualSystem, u: Sequence[Scalar]) -> Scalar:
        """f(u)."""
        col = Matrix(s.descriptor, len(u), 1, [[x.value] for x in u])
        return mat_mul(self.functional_row(s), col)[0, 0]


def transvection_to_element(t: Transvection, s: DualSystem) -> RingElement:
    if len(t.v) != s.n or len(t.mu) != s.k:
        raise errors.ShapeMismatch(f"transvection of size ({len(t.v)}, {len(t.mu)}) for n={s.n}, k={s.k}")
    mul = s.descriptor.mul
    data = [[mul(va.value, mb.value) for mb in t.mu] for va in t.v]
    return RingElement(s, Matrix(s.descriptor, s.n, s.k, data))


def re_multiply(x: RingElement, y: RingElement) -> RingElement:
    """(v (x) f)(u (x) g) = v f(u) (x) g, i.e. Lambda_x F Lambda_y."""
    x._same(y)
    return RingElement(x.system, mat_mul(x.L, mat_mul(x.system.F, y.L)))


def re_as_endomorphism(x: RingElement) -> Matrix:
    return mat_mul(x.L, x.system.F)


def re_trace(x: RingElement) -> Scalar:
    """Trace of the finitary map, as the canonical class in D/[D,D].

    Over commutative D this is the diagonal sum of Lambda F.  Over the
    quaternions the diagonal sum depends on the representation by a
    commutator, so only its real part is returned.
    """
    d = x.system.descriptor
    return Scalar(d, d.trace_class(re_as_endomorphism(x).trace_sum().value))


def trace_class(x: Scalar) -> Scalar:
    return Scalar(x.descriptor, x.descriptor.trace_class(x.value))


def is_total(s: DualSystem) -> bool:
    """True iff no nonzero vector of V is killed by all of Pi."""
    return mat_rank(s.F) == s.n


def left_kernel_vector(F: Matrix) -> Optional[list]:
    """A nonzero row w (payloads) with w F = 0, or None."""
    if F.rows == 0:
        return None
    dep = left_dependency([F.row(b) for b in range(F.rows)])
    return None if dep is None else [c.value for c in dep]


def nonzero_trace_element(s: DualSystem) -> RingElement:
    """A transvection t_{v, f_1} with f_1(v) = 1."""
    d = s.descriptor
    row = s.F.data[0]
    a = next(i for i, x in enumerate(row) if x != d.zero)
    v = [d.zero] * s.n
    v[a] = d.inv(row[a])
    mu = [d.one] + [d.zero] * (s.k - 1)
    t = Transvection(tuple(Scalar(d, x) for x in v), tuple(Scalar(d, x) for x in mu))
    return transvection_to_element(t, s)


# -- random generation ----------------------------------------------------------

def payload_pool(d: RingDescriptor) -> list:
    """The fixed small pool random entries are drawn from."""
    if d.kind == "prime_field":
        return list(range(d.modulus))
    if d.kind == "rationals":
        return list(range(-3, 4))
    return [tuple(c) for c in itertools.product((-1, 0, 1), repeat=4)]


def random_payload(d: RingDescriptor, rng: random.Random):
    return rng.choice(payload_pool(d))


def random_matrix(d: RingDescriptor, rows: int, cols: int, rng: random.Random, pool=None) -> Matrix:
    flat = rng.choices(pool or payload_pool(d), k=rows * cols)
    return Matrix._new(d, rows, cols, tuple(tuple(flat[r * cols:(r + 1) * cols]) for r in range(rows)))


def random_element(s: DualSystem, rng: random.Random) -> RingElement:
    return RingElement(s, random_matrix(s.descriptor, s.n, s.k, rng))


def random_transvection(s: DualSystem, rng: random.Random) -> Transvection:
    d = s.descriptor
    return Transvection(tuple(Scalar(d, random_payload(d, rng)) for _ in range(s.n)),
                        tuple(Scalar(d, random_payload(d, rng)) for _ in range(s.k)))


def check_ring_axioms(s: DualSystem, trials: int, seed: int = 0) -> Report:
    """Associativity, two-sided distributivity and faithfulness on random triples."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    report = Report("ring axioms", details={"trials": trials, "seed": seed})
    kernel = left_kernel_vector(s.F)
    if kernel is not None:
        d = s.descriptor
        data = [kernel] + [[d.zero] * s.k for _ in range(s.n - 1)]
        witness = RingElement(s, Matrix(d, s.n, s.k, data))
        return report.fail("faithfulness", {"element": format_matrix(witness.L),
                                            "action": format_matrix(re_as_endomorphism(witness))})
    d = s.descriptor
    mm, add, zero = d.matmul, d.add, d.zero
    n, k = s.n, s.k
    F = s.F.data
    pool = payload_pool(d)

    def draw():
        flat = rng.choices(pool, k=n * k)
        return tuple(tuple(flat[r * k:(r + 1) * k]) for r in range(n))

    for trial in range(trials):
        x, y, z = draw(), draw(), draw()
        # products associated as x (F y): k x k intermediates are the cheap side
        Fy, Fz = mm(F, y, k), mm(F, z, k)
        xy, yz, xz = mm(x, Fy, k), mm(y, Fz, k), mm(x, Fz, k)
        if mm(xy, Fz, k) != mm(x, mm(F, yz, k), k):
            return report.fail("associativity", _payload(d, trial, x, y, z))
        if mm(x, mm(F, _madd(y, z, add), k), k) != _madd(xy, xz, add):
            return report.fail("left distributivity", _payload(d, trial, x, y, z))
        if mm(_madd(x, y, add), Fz, k) != _madd(xz, yz, add):
            return report.fail("right distributivity", _payload(d, trial, x, y, z))
        if any(v != zero for row in x for v in row) and not _acts_nontrivially(x, F, d):
            return report.fail("faithfulness", _payload(d, trial, x))
    return report


def _acts_nontrivially(x: tuple, F: tuple, d: RingDescriptor) -> bool:
    """Whether x F != 0, stopping at the first nonzero entry."""
    cols = list(zip(*F))
    return any(d.dot(row, col) != d.zero for row in x for col in cols)


def _payload(d, trial, *coefficients):
    return {"trial": trial,
            "elements": [format_matrix(Matrix._new(d, len(m), len(m[0]), m)) for m in coefficients]}
