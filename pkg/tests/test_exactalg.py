import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fendring import errors
from fendring.exactalg import (
    Matrix, RingDescriptor, Scalar, central_generating_set, column_rank, combine_left,
    combine_right, format_matrix, left_dependency, mat_inverse, mat_mul, mat_rank,
    right_dependency, row_rank, scalar_inverse,
)
from fendring.transring import random_matrix

from conftest import ALL_DESCRIPTORS, DESCRIPTOR_IDS, F2, H, I, J, K, ONE, Q, mat, oracle_rank


def payloads(d):
    if d.kind == "prime_field":
        return st.integers(0, d.modulus - 1)
    rat = st.fractions(min_value=-20, max_value=20, max_denominator=12).map(Q.coerce)
    if d.kind == "rationals":
        return rat
    return st.tuples(rat, rat, rat, rat).map(d.coerce)


def scalars(d):
    return payloads(d).map(lambda v: Scalar(d, v))


def neg_q(q):
    return tuple(-c for c in q)


# -- descriptors and scalars --------------------------------------------------------

class TestDescriptor:
    def test_rejects_composite_modulus(self):
        with pytest.raises(errors.InvariantError):
            RingDescriptor.prime_field(4)

    def test_characteristic(self):
        assert Q.characteristic == 0
        assert H.characteristic == 0
        assert RingDescriptor.prime_field(7).characteristic == 7

    def test_commutativity_flag(self):
        assert [d.is_commutative for d in ALL_DESCRIPTORS] == [True, True, True, True, False]

    def test_fractions_normalise(self):
        x = Q.parse("6/-8")
        assert x == Fraction(-3, 4)
        assert Q.format(x) == "-3/4"
        assert Q.parse("4/2") == 2 and isinstance(Q.parse("4/2"), int)

    def test_prime_field_residues(self):
        assert RingDescriptor.prime_field(5).parse("-1") == 4

    def test_quaternion_format_round_trip(self):
        q = H.coerce((Fraction(1, 2), -1, 0, 3))
        assert H.parse(H.format(q)) == q

    def test_central_generating_set(self):
        assert [s.value for s in central_generating_set(Q)] == [1]
        assert [s.value for s in central_generating_set(F2)] == [1]
        assert [s.value for s in central_generating_set(H)] == [ONE, I, J, K]


class TestScalarInverse:
    def test_one(self, descriptor):
        one = descriptor.scalar(descriptor.one)
        assert scalar_inverse(one) == one

    def test_rational(self):
        assert scalar_inverse(Q.scalar(Fraction(3, 4))).value == Fraction(4, 3)

    def test_quaternion_one_plus_i(self):
        x = H.scalar((1, 1, 0, 0))
        inv = scalar_inverse(x)
        assert inv.value == (Fraction(1, 2), Fraction(-1, 2), 0, 0)
        # (1+i)(1-i)/2 expanded by hand: (1 - i^2)/2 = 1
        assert (x * inv).value == ONE

    def test_zero_raises(self, descriptor):
        with pytest.raises(errors.ZeroInversion):
            scalar_inverse(descriptor.scalar(descriptor.zero))

    @pytest.mark.parametrize("d", ALL_DESCRIPTORS, ids=DESCRIPTOR_IDS)
    @settings(max_examples=200, deadline=None)
    @given(data=st.data())
    def test_two_sided(self, d, data):
        x = data.draw(scalars(d))
        if not x:
            return
        one = d.scalar(d.one)
        assert scalar_inverse(x) * x == one
        assert x * scalar_inverse(x) == one


def test_quaternion_table():
    i, j, k = (H.scalar(q) for q in (I, J, K))
    minus_one = H.scalar(neg_q(ONE))
    assert i * i == j * j == k * k == minus_one
    assert i * j == k and j * k == i and k * i == j
    assert j * i == -k


@pytest.mark.parametrize("d", ALL_DESCRIPTORS, ids=DESCRIPTOR_IDS)
def test_scalar_field_laws_on_ten_thousand_triples(d):
    rng = random.Random(f"laws:{d}")
    pool = [d.coerce(Fraction(a, b)) for a in range(-6, 7) for b in (1, 2, 3, 5)] if d.kind == "rationals" else None
    if d.kind == "rational_quaternions":
        base = [Fraction(a, b) for a in range(-3, 4) for b in (1, 2)]
        draw = lambda: d.coerce(tuple(rng.choice(base) for _ in range(4)))
    elif pool is not None:
        draw = lambda: rng.choice(pool)
    else:
        draw = lambda: rng.randrange(d.modulus)
    add, mul = d.add, d.mul
    for _ in range(10_000):
        a, b, c = draw(), draw(), draw()
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert add(add(a, b), c) == add(a, add(b, c))
        assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
        assert mul(add(a, b), c) == add(mul(a, c), mul(b, c))


# -- matrices -----------------------------------------------------------------------

class TestMatMul:
    def test_identity(self, descriptor):
        a = random_matrix(descriptor, 3, 2, random.Random(1))
        assert mat_mul(Matrix.identity(descriptor, 3), a) == a

    def test_quaternion_units(self):
        assert mat_mul(mat(H, [[I]]), mat(H, [[J]])) == mat(H, [[K]])
        assert mat_mul(mat(H, [[J]]), mat(H, [[I]])) == mat(H, [[neg_q(K)]])

    def test_f2_shear_squares_to_identity(self):
        a = mat(F2, [[1, 1], [0, 1]])
        assert mat_mul(a, a) == Matrix.identity(F2, 2)

    def test_shape_mismatch(self):
        with pytest.raises(errors.ShapeMismatch):
            mat_mul(Matrix.zeros(Q, 2, 3), Matrix.zeros(Q, 2, 3))

    def test_descriptor_mismatch(self):
        with pytest.raises(errors.DescriptorMismatch):
            mat_mul(Matrix.identity(Q, 2), Matrix.identity(F2, 2))

    def test_associative(self, descriptor):
        rng = random.Random(7)
        for _ in range(50):
            p, q, r, s = (rng.randint(1, 4) for _ in range(4))
            a = random_matrix(descriptor, p, q, rng)
            b = random_matrix(descriptor, q, r, rng)
            c = random_matrix(descriptor, r, s, rng)
            assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))

    def test_right_scaling_commutes_with_action(self, descriptor):
        # A(v lambda) = (A v) lambda
        rng = random.Random(3)
        for _ in range(50):
            a = random_matrix(descriptor, 3, 3, rng)
            v = random_matrix(descriptor, 3, 1, rng)
            lam = random_matrix(descriptor, 1, 1, rng)[0, 0]
            assert mat_mul(a, v.scale_right(lam)) == mat_mul(a, v).scale_right(lam)


class TestInverse:
    def test_identity(self, descriptor):
        assert mat_inverse(Matrix.identity(descriptor, 3)) == Matrix.identity(descriptor, 3)

    def test_f2_shear(self):
        a = mat(F2, [[1, 1], [0, 1]])
        assert mat_inverse(a) == a

    def test_quaternion_i(self):
        assert mat_inverse(mat(H, [[I]])) == mat(H, [[neg_q(I)]])

    def test_singular(self, descriptor):
        with pytest.raises(errors.Singular):
            mat_inverse(Matrix.zeros(descriptor, 2, 2))

    def test_non_square(self):
        with pytest.raises(errors.ShapeMismatch):
            mat_inverse(Matrix.zeros(Q, 2, 3))

    def test_random_two_sided(self, descriptor):
        rng = random.Random(11)
        checked = 0
        while checked < 40:
            n = rng.randint(1, 4)
            a = random_matrix(descriptor, n, n, rng)
            try:
                inv = mat_inverse(a)
            except errors.Singular:
                assert oracle_rank(a) < n
                continue
            eye = Matrix.identity(descriptor, n)
            assert mat_mul(inv, a) == eye and mat_mul(a, inv) == eye
            checked += 1


class TestRank:
    def test_zero(self, descriptor):
        assert mat_rank(Matrix.zeros(descriptor, 3, 2)) == 0

    def test_unit_row(self, descriptor):
        assert mat_rank(mat(descriptor, [[1, 0]])) == 1

    def test_quaternion_rows_not_proportional(self):
        # j * [1, i] = [j, -k], so [[1, i], [j, k]] has independent rows
        m = mat(H, [[ONE, I], [J, K]])
        assert mat_rank(m) == 2 == oracle_rank(m)

    def test_quaternion_left_proportional_rows(self):
        m = mat(H, [[ONE, I], [J, neg_q(K)]])
        assert mat_rank(m) == 1 == oracle_rank(m)

    def test_quaternion_left_and_right_spans_differ(self):
        # [1, i] and [j, -k] are left proportional but not right proportional
        rows = [[ONE, I], [J, neg_q(K)]]
        assert row_rank(mat(H, rows)) == 1
        assert right_dependency([mat(H, [r]) for r in rows]) is None

    def test_matches_oracle(self, descriptor):
        rng = random.Random(f"rank:{descriptor}")
        for _ in range(60):
            r, c = rng.randint(1, 4), rng.randint(1, 4)
            m = random_matrix(descriptor, r, c, rng)
            # sprinkle zeros so low ranks actually occur
            data = [[x if rng.random() < 0.6 else descriptor.zero for x in row] for row in m.data]
            m = Matrix(descriptor, r, c, data)
            assert mat_rank(m) == oracle_rank(m)

    def test_row_rank_equals_column_rank(self, descriptor):
        rng = random.Random(5)
        for _ in range(100):
            m = random_matrix(descriptor, rng.randint(1, 5), rng.randint(1, 5), rng)
            assert row_rank(m) == column_rank(m)


# -- dependencies -------------------------------------------------------------------

def _is_right_witness(family, coeffs):
    return any(c for c in coeffs) and combine_right(family, coeffs).is_zero()


def _is_left_witness(family, coeffs):
    return any(c for c in coeffs) and combine_left(family, coeffs).is_zero()


class TestDependency:
    def test_duplicate_right(self, descriptor):
        a = mat(descriptor, [[1, 2], [0, 1]])
        d = right_dependency([a, a])
        assert d is not None and _is_right_witness([a, a], d)
        # proportional to (1, -1)
        assert d[0] == -d[1]

    def test_duplicate_left(self, descriptor):
        b = mat(descriptor, [[1], [1]])
        d = left_dependency([b, b])
        assert d is not None and d[0] == -d[1] and _is_left_witness([b, b], d)

    def test_identity_independent(self, descriptor):
        eye = Matrix.identity(descriptor, 2)
        assert right_dependency([eye]) is None
        assert left_dependency([eye]) is None

    def test_zero_dependent(self, descriptor):
        z = Matrix.zeros(descriptor, 2, 2)
        assert [c.value for c in left_dependency([z])] == [descriptor.one]

    def test_empty_family(self):
        with pytest.raises(errors.EmptyFamily):
            right_dependency([])

    def test_quaternion_right_witness(self):
        fam = [mat(H, [[I]]), mat(H, [[K]])]  # [i] j = [ij] = [k]
        d = right_dependency(fam)
        assert d is not None and _is_right_witness(fam, d)
        j, minus = H.scalar(J), H.scalar(neg_q(ONE))
        assert _is_right_witness(fam, [j, minus])

    def test_quaternion_left_witness(self):
        fam = [mat(H, [[I]]), mat(H, [[neg_q(K)]])]  # j [i] = [ji] = [-k]
        d = left_dependency(fam)
        assert d is not None and _is_left_witness(fam, d)
        assert _is_left_witness(fam, [H.scalar(J), H.scalar(neg_q(ONE))])

    def test_any_two_quaternion_scalars_are_dependent(self):
        # [i] k + [j] 1 = -j + j = 0
        fam = [mat(H, [[I]]), mat(H, [[J]])]
        assert _is_right_witness(fam, [H.scalar(K), H.scalar(ONE)])
        assert right_dependency(fam) is not None

    def test_sides_disagree_over_quaternions(self):
        # columns (1, i) and (j, -k): (j, -k) = j (1, i) on the left, but
        # no right multiple of (1, i) has j on top and -k below: 1 j = j, i j = k
        fam = [mat(H, [[ONE], [I]]), mat(H, [[J], [neg_q(K)]])]
        assert right_dependency(fam) is None
        d = left_dependency(fam)
        assert d is not None and _is_left_witness(fam, d)

    def test_sides_coincide_over_commutative(self):
        for d in ALL_DESCRIPTORS[:4]:
            rng = random.Random(f"sides:{d}")
            for _ in range(100):
                size = rng.randint(1, 4)
                fam = [random_matrix(d, 2, 2, rng) for _ in range(size)]
                right, left = right_dependency(fam), left_dependency(fam)
                assert (right is None) == (left is None)
                if right is not None:
                    assert right == left
                    assert _is_right_witness(fam, right) and _is_left_witness(fam, left)

    def test_random_witnesses_are_valid(self, descriptor):
        rng = random.Random(17)
        for _ in range(60):
            fam = [random_matrix(descriptor, 2, 1, rng) for _ in range(rng.randint(1, 4))]
            rd, ld = right_dependency(fam), left_dependency(fam)
            if rd is not None:
                assert _is_right_witness(fam, rd)
            if ld is not None:
                assert _is_left_witness(fam, ld)
            if len(fam) > 2:  # more vectors than dim D^2
                assert rd is not None and ld is not None


def test_format_matrix_canonical():
    assert format_matrix(mat(Q, [[Fraction(1, 2), -3]])) == "[[1/2, -3]]"
    assert format_matrix(mat(H, [[I]])) == "[[(0, 1, 0, 0)]]"
