"""Cone-membership oracles for canonical classes on A x A.

Every verdict carries a certificate that :func:`validate` can re-check
without calling the oracle that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import canring
from .canring import CanonicalClass, intersect, mul, six_coordinates, theta1, theta2, theta_ab
from .certificates import (
    ConeVerdict,
    CounterexampleVector,
    Decomposition,
    InequalityReport,
    PsdCertificate,
    Status,
)
from .exterior import GaussianRational, hermitian_coefficients
from .psd import hermitian_negative_vector, is_hermitian, psd_certificate, quadratic_value
from .simplex import feasible_point, feasible_point_float_assisted
from .unipoly import UniPoly, poly_nonneg
from .weak import weak_pairing, weak_positivity_oracle

__all__ = [
    "HermitianMatrix",
    "hermitian_matrix",
    "is_semipositive",
    "semi_inequalities",
    "poly_nonneg",
    "pair_with_divisors",
    "divisor_sextic",
    "nef_polynomials",
    "is_nef_canonical",
    "weak_positivity_oracle",
    "weak_pairing",
    "default_grid",
    "decompose_sym2",
    "psef_divisor_test",
    "psef_curve_test",
    "general_g_semi_decomposition",
    "validate",
]


@dataclass(frozen=True)
class HermitianMatrix:
    """Hermitian form on ``wedge^k C^{2g}`` in the lexicographic basis."""

    labels: tuple[tuple[int, ...], ...]
    entries: tuple[tuple[GaussianRational, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.labels)

    def rows(self) -> list[list[GaussianRational]]:
        return [list(r) for r in self.entries]

    def rational_rows(self) -> list[list[Fraction]]:
        if any(x.im for r in self.entries for x in r):
            raise ValueError("matrix has non-real entries")
        return [[x.re for x in r] for r in self.entries]

    def is_hermitian(self) -> bool:
        return is_hermitian(self.entries)


def _require_degree(x: CanonicalClass, degree: int):
    if x.degree != degree:
        raise ValueError(f"expected a class of degree {degree}, got degree {x.degree}")


def _require_g2(x: CanonicalClass):
    if x.g != 2:
        raise ValueError("this test is defined for g = 2")


def hermitian_matrix(x: CanonicalClass) -> HermitianMatrix:
    """Hermitian form on ``wedge^2 C^{2g}`` attached to a degree-2 class."""
    _require_degree(x, 2)
    labels, h = hermitian_coefficients(x.to_form(), 2)
    return HermitianMatrix(tuple(labels), tuple(tuple(r) for r in h))


def _semi_from_matrix(H: HermitianMatrix, cone: str = "semi") -> ConeVerdict:
    ok, e, which = psd_certificate(H.entries)
    if ok:
        return ConeVerdict(Status.MEMBER, cone, PsdCertificate(e, which), rule="characteristic polynomial coefficient signs")
    w = hermitian_negative_vector(H.entries)
    if w is None:
        raise ArithmeticError("PSD tests disagree")  # pragma: no cover
    value = quadratic_value(H.entries, w)
    return ConeVerdict(
        Status.NONMEMBER, cone, CounterexampleVector("hermitian", w, value),
        rule="negative Hermitian value", extra={"e": e},
    )


def is_semipositive(x: CanonicalClass) -> ConeVerdict:
    """Exact PSD decision for the Hermitian form of a degree-2 class."""
    return _semi_from_matrix(hermitian_matrix(x))


def semi_inequalities(x: CanonicalClass) -> InequalityReport:
    """The principal-minor inequalities, for g = 2 degree-2 classes."""
    _require_g2(x)
    a1, a2, a3, a4, a5, a6 = six_coordinates(x)
    s = a2 + 2 * a6
    checks = {
        "a1: a1, a2, a3 >= 0": a1 >= 0 and a2 >= 0 and a3 >= 0,
        "a2: a2 >= 2|a6|": a2 >= 2 * abs(a6),
        "a3: a1(a2+2a6) >= a4^2": a1 * s >= a4 * a4,
        "a4: a3(a2+2a6) >= a5^2": a3 * s >= a5 * a5,
        "a5: a1 a3 >= a6^2": a1 * a3 >= a6 * a6,
        "a6: (a1a3-a6^2)(a2+2a6) + 2a4a5a6 >= a3a4^2 + a1a5^2": (a1 * a3 - a6 * a6) * s + 2 * a4 * a5 * a6
        >= a3 * a4 * a4 + a1 * a5 * a5,
    }
    return InequalityReport(checks, {"a": list(six_coordinates(x))})


def pair_with_divisors(x: CanonicalClass, a, b) -> Fraction:
    """``x . theta_{a,1} . theta_{b,1}`` computed in the ring, in units of ``theta1^2 theta2^2``.

    The raw intersection number is 4 times this value (``theta1^2 theta2^2 = 4``);
    the positive rescaling is what makes it equal :func:`divisor_sextic`.
    """
    _require_g2(x)
    _require_degree(x, 2)
    unit = intersect(theta1(2), theta1(2), theta2(2), theta2(2))
    return intersect(x, theta_ab(a, 1, 2), theta_ab(b, 1, 2)) / unit


def divisor_sextic(x: CanonicalClass, a, b) -> Fraction:
    """The same pairing from its closed-form polynomial in ``(a, b)``."""
    a1, a2, a3, a4, a5, a6 = six_coordinates(x)
    a, b = Fraction(a), Fraction(b)
    return (
        a3 * a * a * b * b
        - a5 * a * b * (a + b)
        + (a2 - a6) * (a * a + b * b)
        - (a2 - 6 * a6) * a * b
        - a4 * (a + b)
        + a1
    )


def nef_polynomials(x: CanonicalClass) -> tuple[UniPoly, UniPoly, UniPoly, UniPoly]:
    """``(A, B, C, Q)`` with pairing ``= A(b) a^2 + B(b) a + C(b)`` and ``Q = 4AC - B^2``."""
    a1, a2, a3, a4, a5, a6 = six_coordinates(x)
    A = UniPoly([a2 - a6, -a5, a3])
    B = UniPoly([-a4, -(a2 - 6 * a6), -a5])
    C = UniPoly([a1, -a4, a2 - a6])
    Q = A * C * 4 - B * B
    return A, B, C, Q


def _nef_witness(x: CanonicalClass, A: UniPoly, B: UniPoly, C: UniPoly, failing: str, b0: Fraction):
    Ab, Bb, Cb = A(b0), B(b0), C(b0)
    if failing == "C":
        a = Fraction(0)
    elif failing == "A":
        a = 1 + (abs(Bb) + abs(Cb)) / abs(Ab)
    elif Ab > 0:
        a = -Bb / (2 * Ab)
    elif Ab == 0:
        a = (-Cb - 1) / Bb
    else:
        a = 1 + (abs(Bb) + abs(Cb)) / abs(Ab)
    return a, b0


def is_nef_canonical(x: CanonicalClass) -> ConeVerdict:
    """Nef test for g = 2 degree-2 classes by pairing with all ``theta_{a,1} theta_{b,1}``.

    The pairing is a quadratic in ``a`` with coefficients ``A(b), B(b),
    C(b)``; it is nonnegative for all real ``a, b`` iff ``A``, ``C`` and
    ``Q = 4AC - B^2`` are nonnegative on the line, each decided by Sturm
    sequences.
    """
    _require_g2(x)
    _require_degree(x, 2)
    a1, a2, a3, a4, a5, a6 = six_coordinates(x)
    A, B, C, Q = nef_polynomials(x)
    report_checks = {
        "e1: a1, a3 >= 0": a1 >= 0 and a3 >= 0,
        "e3: a2 >= a6": a2 >= a6,
        "e4: 4a1(a2-a6) >= a4^2": 4 * a1 * (a2 - a6) >= a4 * a4,
        "e5: 4a3(a2-a6) >= a5^2": 4 * a3 * (a2 - a6) >= a5 * a5,
    }
    transcripts = {}
    failing = None
    witness_b = None
    for name, poly in (("A", A), ("C", C), ("Q", Q)):
        ok, wit, tr = poly_nonneg(poly)
        transcripts[name] = tr
        report_checks[f"{name}(b) >= 0 for all b"] = ok
        if not ok and failing is None:
            failing, witness_b = name, wit
    report_checks["e6: Q(b) >= 0 for all b"] = report_checks.pop("Q(b) >= 0 for all b")
    report = InequalityReport(
        report_checks,
        {"A": A.to_list(), "B": B.to_list(), "C": C.to_list(), "Q": Q.to_list(),
         "transcripts": {k: v.to_dict() for k, v in transcripts.items()}},
    )
    if failing is None:
        return ConeVerdict(Status.MEMBER, "nef", report, rule="pairing with theta_{a,1} theta_{b,1} nonnegative (Sturm)")
    a, b = _nef_witness(x, A, B, C, failing, witness_b)
    value = pair_with_divisors(x, a, b)
    if value >= 0:
        raise ArithmeticError("nef witness construction failed")  # pragma: no cover
    return ConeVerdict(
        Status.NONMEMBER, "nef", CounterexampleVector("divisor-pair", [a, b], value),
        rule="negative pairing with theta_{a,1} theta_{b,1}", extra={"report": report.to_dict()},
    )


INFINITY = "inf"


def default_grid(denominator: int = 3, numerator: int = 4) -> list[Fraction]:
    """``{p/q : |p| <= numerator, 1 <= q <= denominator}``, sorted."""
    return sorted({Fraction(p, q) for q in range(1, denominator + 1) for p in range(-numerator, numerator + 1)})


def boundary_divisor(a, g: int = 2) -> CanonicalClass:
    """``theta1 + a^2 theta2 + a lambda``; ``a = "inf"`` gives ``theta2``."""
    if a == INFINITY:
        return theta2(g)
    return theta_ab(1, a, g)


def _generator_vector(a, b) -> tuple[Fraction, ...]:
    if a == INFINITY and b == INFINITY:
        return (Fraction(0), Fraction(0), Fraction(1), Fraction(0), Fraction(0), Fraction(0))
    if a == INFINITY or b == INFINITY:
        c = b if a == INFINITY else a
        return (Fraction(0), Fraction(1), c * c, Fraction(0), c, Fraction(0))
    return (Fraction(1), a * a + b * b, a * a * b * b, a + b, a * b * (a + b), a * b)


def _generators(grid: Sequence) -> list[tuple]:
    pts = list(grid) + [INFINITY]
    return [(pts[i], pts[j]) for i in range(len(pts)) for j in range(i, len(pts))]


def decompose_sym2(
    x: CanonicalClass,
    grid: Iterable | None = None,
    lp_mode: str = "exact",
    check_semi: bool = True,
) -> ConeVerdict:
    """Write ``x`` as a nonnegative combination of products of boundary divisors.

    Generators are ``(theta1 + a^2 theta2 + a lambda)(theta1 + b^2 theta2 + b
    lambda)`` over grid pairs, with ``a = inf`` standing for ``theta2``.  An
    infeasible LP gives Unknown, not NonMember; NonMember comes only from an
    exact semipositivity refutation.
    """
    _require_degree(x, 2)
    grid = default_grid() if grid is None else [Fraction(v) for v in grid]
    if not grid:
        raise ValueError("empty grid")
    if check_semi:
        semi = is_semipositive(x)
        if semi.is_nonmember:
            return ConeVerdict(Status.NONMEMBER, "sym2", semi.certificate, rule="not semipositive, so not in Sym^2 Psef^1")
    gens = _generators(grid)
    target = six_coordinates(x)
    A = [[_generator_vector(a, b)[row] for (a, b) in gens] for row in range(6)]
    if lp_mode == "exact":
        w = feasible_point(A, target)
    elif lp_mode == "float":
        w = feasible_point_float_assisted(A, target)
    else:
        raise ValueError(f"unknown lp_mode {lp_mode!r}")
    if w is None:
        return ConeVerdict(Status.UNKNOWN, "sym2", None, rule="LP infeasible on this grid", extra={"grid_size": len(grid)})
    terms = [(wj, [gen[0], gen[1]]) for wj, gen in zip(w, gens) if wj]
    return ConeVerdict(Status.MEMBER, "sym2", Decomposition(terms), rule="exact LP decomposition into products of boundary divisors")


def expand_decomposition(dec: Decomposition, g: int) -> CanonicalClass:
    """Re-expand a decomposition by ring multiplication at any ``g >= 2``."""
    total = CanonicalClass.zero(g, 2)
    for w, (a, b) in dec.terms:
        total = total + mul(boundary_divisor(a, g), boundary_divisor(b, g)) * Fraction(w)
    return total


def psef_divisor_test(x: CanonicalClass) -> ConeVerdict:
    """``a1 theta1 + a2 theta2 + a3 lambda`` is psef iff ``a1, a2 >= 0`` and ``a1 a2 >= a3^2``."""
    _require_degree(x, 1)
    a1, a2, a3 = (x.coefficient(m) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    return _quadratic_cone_verdict("psef1", (a1, a2, a3))


def _quadratic_cone_verdict(cone: str, coords) -> ConeVerdict:
    a1, a2, a3 = coords
    checks = {"a1 >= 0": a1 >= 0, "a2 >= 0": a2 >= 0, "a1 a2 >= a3^2": a1 * a2 >= a3 * a3}
    report = InequalityReport(checks, {"coordinates": list(coords)})
    if report.holds:
        extra = {"boundary": a1 * a2 == a3 * a3}
        return ConeVerdict(Status.MEMBER, cone, report, rule="a1 >= 0, a2 >= 0, a1 a2 >= a3^2", extra=extra)
    return ConeVerdict(Status.NONMEMBER, cone, report, rule="a1 >= 0, a2 >= 0, a1 a2 >= a3^2")


def curve_basis(g: int) -> list[CanonicalClass]:
    """``mu^(g-1) theta1, mu^(g-1) theta2, mu^(g-1) lambda``."""
    m = canring.mu(g) ** (g - 1)
    return [mul(m, d) for d in (theta1(g), theta2(g), canring.lam(g))]


def _solve(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Exact solve of ``mat @ x = rhs`` (possibly overdetermined); None if inconsistent."""
    rows = [list(r) + [v] for r, v in zip(mat, rhs)]
    ncols = len(mat[0])
    piv_cols = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(all(v == 0 for v in row[:-1]) and row[-1] != 0 for row in rows):
        return None
    out = [Fraction(0)] * ncols
    for i, c in enumerate(piv_cols):
        out[c] = rows[i][-1]
    return out


def curve_coordinates(x: CanonicalClass) -> tuple[Fraction, Fraction, Fraction]:
    """``(a1, a2, a3)`` with ``x = mu^(g-1)(a1 theta1 + a2 theta2 + a3 lambda)``."""
    g = x.g
    _require_degree(x, 2 * g - 1)
    basis_vecs = [b.vector() for b in curve_basis(g)]
    mat = [[basis_vecs[j][i] for j in range(3)] for i in range(len(basis_vecs[0]))]
    sol = _solve(mat, x.vector())
    if sol is None:
        raise ValueError("class is not in the span of mu^(g-1) times divisors")
    return tuple(sol)


def psef_curve_test(x: CanonicalClass) -> ConeVerdict:
    """Curve classes: the divisor inequalities read in the ``mu^(g-1)`` basis."""
    return _quadratic_cone_verdict("psef-curve", curve_coordinates(x))


def general_g_semi_decomposition(x: CanonicalClass, grid: Iterable | None = None) -> ConeVerdict:
    """Semipositivity on ``wedge^2 C^{2g}`` plus a decomposition on the same six coordinates.

    The verdict follows the exact PSD test; when the LP finds a
    decomposition it is attached and re-expanded at this ``g``.
    """
    _require_degree(x, 2)
    if x.g < 2:
        raise ValueError("g must be >= 2")
    semi = is_semipositive(x)
    if not semi.is_member:
        return ConeVerdict(semi.status, "semi-general", semi.certificate, rule=semi.rule)
    dec = decompose_sym2(x, grid, check_semi=False)
    extra = {"psd": semi.certificate.to_dict()}
    if dec.is_member:
        if expand_decomposition(dec.certificate, x.g) != x:
            raise ArithmeticError("decomposition does not re-expand")  # pragma: no cover
        return ConeVerdict(Status.MEMBER, "semi-general", dec.certificate, rule="PSD and exact decomposition", extra=extra)
    return ConeVerdict(Status.MEMBER, "semi-general", semi.certificate, rule="PSD (no decomposition on this grid)", extra=extra)


def validate(x, verdict: ConeVerdict) -> bool:
    """Re-check a verdict's certificate from scratch."""
    cert = verdict.certificate
    if verdict.status is Status.UNKNOWN:
        return True
    if isinstance(cert, PsdCertificate):
        ok, e, _ = psd_certificate(hermitian_matrix(x).entries)
        return ok and e == list(cert.e)
    if isinstance(cert, Decomposition):
        if any(Fraction(w) < 0 for w, _ in cert.terms):
            return False
        return expand_decomposition(cert, x.g) == x
    if isinstance(cert, CounterexampleVector):
        if cert.kind == "hermitian":
            value = quadratic_value(hermitian_matrix(x).entries, cert.vector)
        elif cert.kind == "divisor-pair":
            value = divisor_sextic(x, *cert.vector)
            if value != pair_with_divisors(x, *cert.vector):
                return False
        elif cert.kind == "linear-forms":
            value = weak_pairing(x, cert.vector)
        else:
            return False
        return value == cert.value and value < 0
    if isinstance(cert, InequalityReport):
        if verdict.cone in ("psef1", "psef-curve"):
            fresh = psef_divisor_test(x) if verdict.cone == "psef1" else psef_curve_test(x)
            return fresh.status is verdict.status
        if verdict.cone == "nef":
            return is_nef_canonical(x).status is verdict.status
    if cert is None and verdict.supported:
        return True
    return False
