import itertools

import pytest
import sympy

from fendring.exactalg import Matrix, RingDescriptor

Q = RingDescriptor.rationals()
F2 = RingDescriptor.prime_field(2)
F3 = RingDescriptor.prime_field(3)
F5 = RingDescriptor.prime_field(5)
H = RingDescriptor.quaternions()

ALL_DESCRIPTORS = [Q, F2, F3, F5, H]
DESCRIPTOR_IDS = ["Q", "F2", "F3", "F5", "H"]

ONE = (1, 0, 0, 0)
I = (0, 1, 0, 0)
J = (0, 0, 1, 0)
K = (0, 0, 0, 1)


# "criterion N: PASS|FAIL ..." lines, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture(params=ALL_DESCRIPTORS, ids=DESCRIPTOR_IDS)
def descriptor(request):
    return request.param


def mat(d, rows):
    return Matrix.from_rows(d, rows)


# -- independent rank oracles --------------------------------------------------------

def brute_rank_mod_p(rows, p):
    """log_p of the number of distinct left combinations of the rows."""
    if not rows:
        return 0
    span = set()
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        span.add(tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % p for j in range(len(rows[0]))))
    size, rank = len(span), 0
    while size > 1:
        size //= p
        rank += 1
    return rank


def _complex_block(q):
    w, x, y, z = (sympy.Rational(int(c.numerator), int(c.denominator)) if hasattr(c, "denominator")
                  else sympy.Integer(c) for c in q)
    a = w + x * sympy.I
    b = y + z * sympy.I
    return [[a, b], [-sympy.conjugate(b), sympy.conjugate(a)]]


def complex_embedding(m: Matrix) -> sympy.Matrix:
    """The faithful ring map M_n(H) -> M_2n(C) with exact Gaussian rationals."""
    out = sympy.zeros(2 * m.rows, 2 * m.cols)
    for i in range(m.rows):
        for j in range(m.cols):
            blk = _complex_block(m.data[i][j])
            for r in range(2):
                for c in range(2):
                    out[2 * i + r, 2 * j + c] = blk[r][c]
    return out


def oracle_rank(m: Matrix) -> int:
    d = m.descriptor
    if m.rows == 0 or m.cols == 0:
        return 0
    if d.kind == "prime_field":
        return brute_rank_mod_p([list(r) for r in m.data], d.modulus)
    if d.kind == "rationals":
        return sympy.Matrix([[sympy.Rational(str(x)) for x in r] for r in m.data]).rank()
    return complex_embedding(m).rank(simplify=True) // 2
