"""Algebra maps between finitary rings in decomposed (sandwich) form.

A map Phi: V (x) Pi -> W (x) Gamma is stored as term pairs (A_i, B_i) acting on
coefficient matrices by Lambda -> sum_i A_i Lambda B_i, i.e. Phi = sum_i
alpha_i (x) beta_i.  The functions here check the homomorphism property,
reduce the decomposition to independent families, verify the orthogonality
relations B_j G A_i = delta_ij F and the trace-scaling law, and recover the
conjugating isomorphism alpha.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from . import errors
from .exactalg import (
    Matrix, Scalar, central_dependency, format_matrix, hstack, is_invertible, left_dependency,
    mat_inverse, mat_mul, mat_rank, right_dependency, vstack,
)
from .report import Report
from .transring import DualSystem, RingElement, re_as_endomorphism, re_trace


@dataclass(frozen=True)
class SandwichMap:
    source: DualSystem
    target: DualSystem
    terms: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(tuple(t) for t in self.terms))
        if self.source.descriptor != self.target.descriptor:
            raise errors.DescriptorMismatch("source and target over different rings")
        n, k = self.source.n, self.source.k
        m, l = self.target.n, self.target.k
        for A, B in self.terms:
            if A.shape != (m, n) or B.shape != (k, l):
                raise errors.ShapeMismatch(
                    f"term shapes {A.shape}, {B.shape}; expected {(m, n)}, {(k, l)}")

    @property
    def descriptor(self):
        return self.source.descriptor

    @property
    def alphas(self) -> list[Matrix]:
        return [A for A, _ in self.terms]

    @property
    def betas(self) -> list[Matrix]:
        return [B for _, B in self.terms]

    def __call__(self, x: RingElement) -> RingElement:
        return sm_apply(self, x)


class Conjugator(NamedTuple):
    alpha: Matrix
    beta: Matrix


def sm_apply(phi: SandwichMap, x: RingElement) -> RingElement:
    if x.system != phi.source:
        raise errors.SystemMismatch("element is not in the source ring of the map")
    out = Matrix.zeros(phi.descriptor, phi.target.n, phi.target.k)
    for A, B in phi.terms:
        out = out + mat_mul(mat_mul(A, x.L), B)
    return RingElement(phi.target, out)


def sm_compose(second: SandwichMap, first: SandwichMap) -> SandwichMap:
    """The map x -> second(first(x))."""
    if first.target != second.source:
        raise errors.SystemMismatch("maps are not composable")
    terms = [(mat_mul(A2, A1), mat_mul(B1, B2))
             for A1, B1 in first.terms for A2, B2 in second.terms]
    return SandwichMap(first.source, second.target, terms)


def same_action(phi: SandwichMap, psi: SandwichMap) -> bool:
    """Whether two maps agree on the spanning set of their common source."""
    if phi.source != psi.source or phi.target != psi.target:
        return False
    return all(sm_apply(phi, x) == sm_apply(psi, x) for x in phi.source.spanning_set())


def sm_is_homomorphism(phi: SandwichMap) -> Report:
    """Check Phi(xy) = Phi(x)Phi(y) on pairs of spanning elements.

    Both sides are additive in each argument and linear over the center, so
    the pairs x = e_a (x) s f_b, y = e_c (x) t f_d with s, t central
    generators suffice.  Their product is e_a (x) (s F[b][c] t) f_d, whose
    image is assembled from the images of e_a (x) u f_d by center-linearity.
    """
    report = Report("homomorphism")
    d = phi.descriptor
    src = phi.source
    gens = d.central_basis()
    images = {}
    for a in range(src.n):
        for b in range(src.k):
            for u, g in enumerate(gens):
                images[a, b, u] = sm_apply(phi, src.basis_element(a, b, g)).L
    left = {key: mat_mul(img, phi.target.F) for key, img in images.items()}
    zero = Matrix.zeros(d, phi.target.n, phi.target.k)
    F = src.F.data
    for (a, b, u), xG in left.items():
        for (c, e, v), fy in images.items():
            q = d.mul(d.mul(gens[u], F[b][c]), gens[v])
            lhs = zero
            for w, z in enumerate(d.to_center_coords(q)):
                if z:
                    lhs = lhs + images[a, e, w].scale_right(z)
            rhs = mat_mul(xG, fy)
            if lhs != rhs:
                x = src.basis_element(a, b, gens[u])
                y = src.basis_element(c, e, gens[v])
                return report.fail("product not preserved", {
                    "x": format_matrix(x.L), "y": format_matrix(y.L),
                    "phi(xy)": format_matrix(lhs), "phi(x)phi(y)": format_matrix(rhs),
                })
    return report


def coefficient_matrix(phi: SandwichMap) -> Matrix:
    """The action written over the center (Q or F_p) as an (m l c) x (n k c) matrix."""
    d = phi.descriptor
    z = d.center_descriptor()
    columns = []
    for x in phi.source.spanning_set():
        y = sm_apply(phi, x).L
        columns.append([c for v in y.flat() for c in d.to_center_coords(v)])
    height = phi.target.n * phi.target.k * d.center_degree
    rows = [[z.coerce(col[r]) for col in columns] for r in range(height)]
    return Matrix(z, height, len(columns), rows)


def sm_is_bijective(phi: SandwichMap) -> bool:
    n, k, m, l = phi.source.n, phi.source.k, phi.target.n, phi.target.k
    if n * k != m * l:
        return False
    return mat_rank(coefficient_matrix(phi)) == n * k * phi.descriptor.center_degree


def _drop_right(terms: list, coeffs: list[Scalar]) -> list:
    # sum_i A_i c_i = 0 with central c_i: A_r = sum_{i != r} A_i (-c_i / c_r)
    d = terms[0][0].descriptor
    r = max(i for i, c in enumerate(coeffs) if c)
    inv_r = d.inv(coeffs[r].value)
    _, Br = terms[r]
    out = []
    for i, (A, B) in enumerate(terms):
        if i == r:
            continue
        c = d.neg(d.mul(coeffs[i].value, inv_r))
        if c != d.zero:
            B = B + Br.scale_left(c)
        out.append((A, B))
    return out


def _drop_left(terms: list, coeffs: list[Scalar]) -> list:
    # sum_i c_i B_i = 0 with central c_i: B_r = sum_{i != r} (-c_i / c_r) B_i
    d = terms[0][0].descriptor
    r = max(i for i, c in enumerate(coeffs) if c)
    inv_r = d.inv(coeffs[r].value)
    Ar, _ = terms[r]
    out = []
    for i, (A, B) in enumerate(terms):
        if i == r:
            continue
        c = d.neg(d.mul(inv_r, coeffs[i].value))
        if c != d.zero:
            A = A + Ar.scale_right(c)
        out.append((A, B))
    return out


def sm_minimize(phi: SandwichMap) -> SandwichMap:
    """Remove dependent terms until both families are independent over the center.

    Only central coefficients can be moved across the sandwiched argument, so
    the reduction uses dependencies over the center.  Over commutative D that
    is the same as D-independence; over the quaternions check
    :func:`is_minimized` for D-independence afterwards.
    """
    terms = list(phi.terms)
    while terms:
        dep = central_dependency([A for A, _ in terms])
        if dep is not None:
            terms = _drop_right(terms, dep)
            continue
        dep = central_dependency([B for _, B in terms])
        if dep is not None:
            terms = _drop_left(terms, dep)
            continue
        break
    return SandwichMap(phi.source, phi.target, terms)


def is_minimized(phi: SandwichMap) -> bool:
    """A-family right independent and B-family left independent over D."""
    if not phi.terms:
        return True
    return right_dependency(phi.alphas) is None and left_dependency(phi.betas) is None


def _require_minimized_hom(phi: SandwichMap):
    if not is_minimized(phi):
        raise errors.PreconditionViolated("map is not in minimized form")
    hom = sm_is_homomorphism(phi)
    if not hom:
        raise errors.PreconditionViolated(f"map is not a homomorphism: {hom.counterexample}")


def orthogonality_check(phi: SandwichMap) -> Report:
    """B_j G A_i = F if i = j and 0 otherwise, for a minimized homomorphism."""
    _require_minimized_hom(phi)
    F, G = phi.source.F, phi.target.F
    zero = Matrix.zeros(phi.descriptor, F.rows, F.cols)
    report = Report("orthogonality", details={"terms": len(phi.terms)})
    for i, (Ai, _) in enumerate(phi.terms):
        GA = mat_mul(G, Ai)
        for j, (_, Bj) in enumerate(phi.terms):
            got = mat_mul(Bj, GA)
            want = F if i == j else zero
            if got != want:
                return report.fail("relation violated", {
                    "i": i, "j": j, "got": format_matrix(got), "want": format_matrix(want)})
    return report


def trace_scaling_factor(phi: SandwichMap) -> int:
    """Return c = term count after checking Tr(Phi(x)) = c Tr(x) on the spanning set."""
    _require_minimized_hom(phi)
    return _trace_factor(phi)


def _trace_factor(phi: SandwichMap) -> int:
    d = phi.descriptor
    c = len(phi.terms)
    factor = d.from_int(c)
    for x in phi.source.spanning_set():
        lhs = re_trace(sm_apply(phi, x))
        rhs = Scalar(d, d.mul(factor, re_trace(x).value))
        if lhs != rhs:
            raise errors.ScalingViolation(
                f"Tr(phi(x)) = {lhs} but {c} * Tr(x) = {rhs} for x = {format_matrix(x.L)}")
    return c


def _inverse_map(phi: SandwichMap) -> SandwichMap:
    (A, B), = phi.terms
    return SandwichMap(phi.target, phi.source, [(mat_inverse(A), mat_inverse(B))])


def recover_conjugator(phi: SandwichMap) -> Conjugator:
    """Find alpha (and beta) with Phi(x) = alpha x alpha^{-1} for every x.

    Raises NotIsomorphism for inputs that are not bijective homomorphisms and
    TheoremViolation if a verified isomorphism does not reduce to one term.
    """
    s, t = phi.source, phi.target
    if (s.n, s.k) != (t.n, t.k):
        raise errors.NotIsomorphism(
            f"dimensions differ: source (n={s.n}, k={s.k}), target (n={t.n}, k={t.k})")
    hom = sm_is_homomorphism(phi)
    if not hom:
        raise errors.NotIsomorphism(f"not a homomorphism: {hom.counterexample}")
    if not sm_is_bijective(phi):
        raise errors.NotIsomorphism("not bijective")

    reduced = sm_minimize(phi)
    if not is_minimized(reduced):
        raise errors.TheoremViolation("isomorphism has no independent decomposition")
    if len(reduced.terms) != 1:
        raise errors.TheoremViolation(
            f"isomorphism reduces to {len(reduced.terms)} terms instead of 1")
    alpha, beta = reduced.terms[0]
    if not (is_invertible(alpha) and is_invertible(beta)):
        raise errors.TheoremViolation("single-term isomorphism with singular factor")

    # reduced has the action of phi, already verified to be a homomorphism
    forward = _trace_factor(reduced)
    inverse = sm_minimize(_inverse_map(reduced))
    if not all(sm_apply(inverse, sm_apply(reduced, x)) == x for x in s.spanning_set()):
        raise errors.TheoremViolation("inverse map does not invert the isomorphism")
    backward = _trace_factor(inverse)
    if forward * backward != 1:
        raise errors.TheoremViolation(f"trace factors multiply to {forward * backward}, not 1")

    if mat_mul(mat_mul(beta, t.F), alpha) != s.F:
        raise errors.TheoremViolation("beta(f) o alpha != f")
    alpha_inv = mat_inverse(alpha)
    for x in s.spanning_set():
        conj = mat_mul(mat_mul(alpha, re_as_endomorphism(x)), alpha_inv)
        if re_as_endomorphism(sm_apply(phi, x)) != conj:
            raise errors.TheoremViolation(
                f"conjugation by alpha does not reproduce phi on {format_matrix(x.L)}")
    return Conjugator(alpha, beta)


def construct_conjugation(s: DualSystem, alpha: Matrix, beta: Matrix) -> SandwichMap:
    """The map x -> alpha x alpha^{-1}, landing in (n, k, beta^{-1} F alpha^{-1})."""
    if alpha.shape != (s.n, s.n) or beta.shape != (s.k, s.k):
        raise errors.ShapeMismatch(f"alpha must be {s.n}x{s.n} and beta {s.k}x{s.k}")
    G = mat_mul(mat_mul(mat_inverse(beta), s.F), mat_inverse(alpha))
    try:
        target = DualSystem(s.descriptor, s.n, s.k, G)
    except errors.InvariantError as exc:
        raise errors.RankLoss(str(exc)) from exc
    return SandwichMap(s, target, [(alpha, beta)])


def direct_sum_conjugations(s: DualSystem, alpha1: Matrix, alpha2: Matrix) -> SandwichMap:
    """x -> diag(alpha1 x alpha1^{-1}, alpha2 x alpha2^{-1}) into a doubled system."""
    d = s.descriptor
    n, k = s.n, s.k
    G1 = mat_mul(s.F, mat_inverse(alpha1))
    G2 = mat_mul(s.F, mat_inverse(alpha2))
    zk = Matrix.zeros(d, k, n)
    G = vstack(hstack(G1, zk), hstack(zk, G2))
    target = DualSystem(d, 2 * n, 2 * k, G)
    zn = Matrix.zeros(d, n, n)
    ik = Matrix.identity(d, k)
    zkk = Matrix.zeros(d, k, k)
    terms = [
        (vstack(alpha1, zn), hstack(ik, zkk)),
        (vstack(zn, alpha2), hstack(zkk, ik)),
    ]
    return SandwichMap(s, target, terms)


def sandwich_from_coefficients(source: DualSystem, target: DualSystem, M: Sequence[Sequence]) -> SandwichMap:
    """One term per nonzero entry of a matrix acting on vectorised coefficients.

    Row index c*l + e and column index a*k + b of ``M`` give the coefficient
    sending e_a (x) f_b to e_c (x) g_e.  Only meaningful over commutative D.
    """
    d = source.descriptor
    n, k, m, l = source.n, source.k, target.n, target.k
    terms = []
    for c in range(m):
        for e in range(l):
            for a in range(n):
                for b in range(k):
                    v = d.coerce(M[c * l + e][a * k + b])
                    if v != d.zero:
                        terms.append((Matrix.unit(d, m, n, c, a, v), Matrix.unit(d, k, l, b, e)))
    return SandwichMap(source, target, terms)
