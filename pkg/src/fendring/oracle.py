"""Brute-force check of the conjugation theorem over small prime fields.

Every F_p-linear self-map of the coefficient space is enumerated, filtered to
bijective ring homomorphisms, and compared against the set of conjugation
actions Lambda -> alpha Lambda beta with beta G alpha = F.  Arithmetic here is
plain integers mod p and does not go through the baermap machinery; that
module is used only for the optional recovery cross-check.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import errors
from .exactalg import Matrix, RingDescriptor, is_prime, mat_mul, row_rank
from .baermap import recover_conjugator, sandwich_from_coefficients
from .transring import DualSystem, random_matrix, random_payload

DEFAULT_CAP = 10 ** 6


@dataclass(frozen=True)
class ScanConfig:
    p: int
    n: int
    k: int
    F: tuple
    G: tuple
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if not is_prime(self.p):
            raise errors.WrongDescriptor(f"{self.p} is not prime")
        object.__setattr__(self, "F", _int_rows(self.F, self.p, self.k, self.n, "F"))
        object.__setattr__(self, "G", _int_rows(self.G, self.p, self.k, self.n, "G"))
        if self.candidate_count > self.cap:
            raise errors.SizeGuard(
                f"{self.p}^{(self.n * self.k) ** 2} = {self.candidate_count} candidate maps exceed cap {self.cap}")

    @property
    def dim(self) -> int:
        return self.n * self.k

    @property
    def candidate_count(self) -> int:
        return self.p ** (self.dim ** 2)

    @property
    def descriptor(self) -> RingDescriptor:
        return RingDescriptor.prime_field(self.p)

    def systems(self) -> tuple[DualSystem, DualSystem]:
        d = self.descriptor
        return (DualSystem(d, self.n, self.k, Matrix.from_rows(d, self.F)),
                DualSystem(d, self.n, self.k, Matrix.from_rows(d, self.G)))


def _int_rows(M, p, rows, cols, name):
    if isinstance(M, Matrix):
        if M.descriptor.kind != "prime_field" or M.descriptor.modulus != p:
            raise errors.WrongDescriptor(f"{name} is over {M.descriptor}, expected prime_field {p}")
        M = M.data
    M = tuple(tuple(int(x) % p for x in r) for r in M)
    if len(M) != rows or any(len(r) != cols for r in M):
        raise errors.ShapeMismatch(f"{name} must be {rows}x{cols}")
    return M


@dataclass
class ScanReport:
    config: ScanConfig
    total_maps: int = 0
    homomorphisms: int = 0
    isomorphisms: list = field(default_factory=list)
    conjugation_actions: int = 0
    unrealized: list = field(default_factory=list)
    is_group: Optional[bool] = None
    recovered: Optional[int] = None

    @property
    def passed(self) -> bool:
        return (not self.unrealized and len(self.isomorphisms) == self.conjugation_actions
                and self.is_group is not False
                and (self.recovered is None or self.recovered == len(self.isomorphisms)))

    def to_dict(self) -> dict:
        cfg = self.config
        return {
            "p": cfg.p, "n": cfg.n, "k": cfg.k,
            "F": [list(r) for r in cfg.F], "G": [list(r) for r in cfg.G],
            "total_maps": self.total_maps,
            "homomorphisms": self.homomorphisms,
            "isomorphisms": len(self.isomorphisms),
            "conjugation_actions": self.conjugation_actions,
            "unrealized": [list(map(list, m)) for m in self.unrealized],
            "is_group": self.is_group,
            "recovered": self.recovered,
            "result": "PASS" if self.passed else "FAIL",
        }

    def text(self) -> str:
        cfg = self.config
        lines = [
            f"scan p={cfg.p} n={cfg.n} k={cfg.k} F={_fmt(cfg.F)} G={_fmt(cfg.G)}",
            f"candidate maps: {self.total_maps}",
            f"ring homomorphisms: {self.homomorphisms}",
            f"isomorphisms: {len(self.isomorphisms)}",
            f"conjugation actions: {self.conjugation_actions}",
            f"unrealized isomorphisms: {len(self.unrealized)}",
        ]
        if self.is_group is not None:
            lines.append(f"automorphisms form a group: {'yes' if self.is_group else 'no'}")
        if self.recovered is not None:
            lines.append(f"conjugators recovered: {self.recovered}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def _fmt(M) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in M) + "]"


# -- plain modular arithmetic -------------------------------------------------------

def _matmul(A, B, p):
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) % p for col in zip(*B)) for row in A)


def _rank(M, p) -> int:
    rows = [list(r) for r in M]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _unflatten(index: int, p: int, size: int) -> tuple:
    """Row-major digits of ``index`` in base p, most significant first."""
    digits = [0] * size
    for i in range(size - 1, -1, -1):
        index, digits[i] = divmod(index, p)
    return tuple(digits)


def _as_square(flat: tuple, N: int) -> tuple:
    return tuple(flat[r * N:(r + 1) * N] for r in range(N))


def _image(M, col, n, k):
    """Coefficient matrix (n x k) of the image of basis vector ``col``."""
    return tuple(tuple(M[a * k + b][col] for b in range(k)) for a in range(n))


def _is_hom(M, cfg: ScanConfig) -> bool:
    """Phi(E_ab F E_cd) == Phi(E_ab) G Phi(E_cd) for all basis pairs."""
    n, k, p, F, G = cfg.n, cfg.k, cfg.p, cfg.F, cfg.G
    N = n * k
    images = [_image(M, col, n, k) for col in range(N)]
    left = [_matmul(img, G, p) for img in images]
    for a in range(n):
        for b in range(k):
            x = a * k + b
            for c in range(n):
                f = F[b][c]
                for d in range(k):
                    y = c * k + d
                    # E_ab F E_cd = F[b][c] E_ad
                    lhs = tuple(tuple(f * v % p for v in row) for row in images[a * k + d])
                    if lhs != _matmul(left[x], images[y], p):
                        return False
    return True


def _scan_range(cfg: ScanConfig, start: int, stop: int) -> tuple[int, list]:
    N = cfg.dim
    homs = 0
    isos = []
    for index in range(start, stop):
        M = _as_square(_unflatten(index, cfg.p, N * N), N)
        if not _is_hom(M, cfg):
            continue
        homs += 1
        if _rank(M, cfg.p) == N:
            isos.append(M)
    return homs, isos


def _general_linear(n: int, p: int):
    for flat in itertools.product(range(p), repeat=n * n):
        M = _as_square(flat, n)
        if _rank(M, p) == n:
            yield M


def conjugation_actions(cfg: ScanConfig) -> set:
    """All distinct matrices of Lambda -> alpha Lambda beta with beta G alpha = F."""
    n, k, p = cfg.n, cfg.k, cfg.p
    actions = set()
    betas = list(_general_linear(k, p))
    for alpha in _general_linear(n, p):
        G_alpha = _matmul(cfg.G, alpha, p)
        for beta in betas:
            if _matmul(beta, G_alpha, p) != cfg.F:
                continue
            # vec index a*k + b; image of E_ab is alpha[:, a] beta[b, :]
            cols = []
            for a in range(n):
                for b in range(k):
                    cols.append([alpha[c][a] * beta[b][e] % p for c in range(n) for e in range(k)])
            actions.add(tuple(tuple(col[r] for col in cols) for r in range(n * k)))
    return actions


def _is_group(isos: list, p: int) -> bool:
    members = set(isos)
    N = len(isos[0]) if isos else 0
    ident = tuple(tuple(int(i == j) for j in range(N)) for i in range(N))
    if ident not in members:
        return False
    for a in isos:
        for b in isos:
            if _matmul(a, b, p) not in members:
                return False
    return True


def exhaustive_isomorphism_scan(cfg: ScanConfig, workers: int = 1, cross_check: bool = True) -> ScanReport:
    """Enumerate every linear map and confirm each isomorphism is a conjugation."""
    report = ScanReport(cfg, total_maps=cfg.candidate_count)
    total = cfg.candidate_count
    if workers > 1:
        bounds = [total * i // workers for i in range(workers + 1)]
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_scan_range, [cfg] * workers, bounds[:-1], bounds[1:]))
    else:
        parts = [_scan_range(cfg, 0, total)]
    for homs, isos in parts:
        report.homomorphisms += homs
        report.isomorphisms.extend(isos)

    actions = conjugation_actions(cfg)
    report.conjugation_actions = len(actions)
    report.unrealized = [M for M in report.isomorphisms if M not in actions]
    if cfg.F == cfg.G:
        report.is_group = _is_group(report.isomorphisms, cfg.p)
    if cross_check:
        report.recovered = _cross_check(cfg, report.isomorphisms)
    return report


def _cross_check(cfg: ScanConfig, isos: list) -> int:
    """Hand every isomorphism to recover_conjugator and verify the action."""
    source, target = cfg.systems()
    ok = 0
    for M in isos:
        phi = sandwich_from_coefficients(source, target, M)
        alpha, beta = recover_conjugator(phi)
        a = tuple(tuple(r) for r in alpha.data)
        b = tuple(tuple(r) for r in beta.data)
        action = []
        for i in range(cfg.n):
            for j in range(cfg.k):
                action.append([a[c][i] * b[j][e] % cfg.p for c in range(cfg.n) for e in range(cfg.k)])
        if tuple(tuple(col[r] for col in action) for r in range(cfg.dim)) == M:
            ok += 1
    return ok


def random_instance(seed: int, d: RingDescriptor, n: int, k: int):
    """Deterministic (DualSystem, alpha, beta) with rank F = k and alpha, beta invertible."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    rng = random.Random(f"{seed}:{d}:{n}:{k}")
    while True:
        F = random_matrix(d, k, n, rng)
        if row_rank(F) == k:
            break
    return DualSystem(d, n, k, F), _random_invertible(d, n, rng), _random_invertible(d, k, rng)


def _random_invertible(d: RingDescriptor, n: int, rng: random.Random) -> Matrix:
    """Product of random elementary matrices applied to the identity."""
    M = Matrix.identity(d, n)
    for _ in range(3 * n):
        E = [list(r) for r in Matrix.identity(d, n).data]
        i = rng.randrange(n)
        if n > 1 and rng.random() < 0.7:
            j = rng.choice([x for x in range(n) if x != i])
            E[i][j] = random_payload(d, rng)
        else:
            c = d.zero
            while c == d.zero:
                c = random_payload(d, rng)
            E[i][i] = c
        M = mat_mul(Matrix(d, n, n, E), M)
    return M
