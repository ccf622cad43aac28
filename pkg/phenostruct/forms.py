"""Identity forms Φ = 0 evaluated on metric values only.

A form receives the values of a cortege keyed by index pair, (i, j) with
i < j for one set (plus (i, i) when the diagonal is read) and (i, α) for
two sets, and returns one (value, scale) term per equation. The
normalized residual of an equation is |value| / scale.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import combinations, permutations
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from phenostruct.core import MetricSpec, eval_metric
from phenostruct.metrics import EpsNumber
from phenostruct.numeric import hadamard_bound

Values = Mapping[tuple[int, int], np.ndarray]
Term = tuple[float, float]

TINY = np.finfo(float).tiny


class FormKind(str, Enum):
    CAYLEY_MENGER = "cayley-menger"
    GRAM = "gram"
    PFAFFIAN = "pfaffian"
    SIMPLICIAL = "simplicial-determinant"
    LINEAR_COCYCLE = "linear-cocycle"
    CUSTOM_DET = "custom-determinant"
    ALTERNATION = "alternation"
    ALTERNATION_QUASIGROUP = "alternation-quasigroup"
    CANDIDATE = "candidate-determinant"


@dataclass(frozen=True)
class IdentityForm:
    kind: FormKind
    label: str
    equations: Callable[[Values], list[Term]]
    diagonal: bool = False

    def evaluate(self, values: Values) -> list[Term]:
        return self.equations(values)

    def residual(self, values: Values) -> float:
        """Largest normalized residual over the equations."""
        terms = self.evaluate(values)
        return max(abs(v) / max(scale, TINY) for v, scale in terms)

    def raw(self, values: Values) -> np.ndarray:
        return np.array([v for v, _ in self.evaluate(values)], dtype=float)


# -- helpers -----------------------------------------------------------------------

def _sym(values: Values, i: int, j: int, k: int = 0) -> float:
    """f(ij) read from the upper triangle."""
    return values[(i, j) if i < j else (j, i)][k]


def _det(matrix) -> tuple[float, float]:
    m = np.asarray(matrix, dtype=float)
    return float(np.linalg.det(m)), hadamard_bound(m)


def _d3(u: Sequence[float], v: Sequence[float], w: Sequence[float]) -> tuple[float, float]:
    """det[[u0, u1, 1], [v0, v1, 1], [w0, w1, 1]] with its Hadamard bound."""
    return _det([[u[0], u[1], 1.0], [v[0], v[1], 1.0], [w[0], w[1], 1.0]])


def _d2(u: Sequence[float], v: Sequence[float]) -> tuple[float, float]:
    return _det([[u[0], u[1]], [v[0], v[1]]])


def _alternate(first: Term, second: Term) -> Term:
    return first[0] - second[0], first[1] + second[1]


def _products(*pairs: tuple[Term, Term]) -> Term:
    """Σ ± products of two bounded factors, sign carried by the pair order."""
    value = 0.0
    scale = 0.0
    for sign, ((a, ha), (b, hb)) in pairs:
        value += sign * a * b
        scale += ha * hb
    return value, scale


def _ratio(diffs: Sequence[tuple[float, float]], dets: Sequence[tuple[float, float, bool]]) -> Term:
    """Product of difference ratios and determinant ratios with a conditioning scale.

    ``diffs`` holds (a, b) pairs entering as (a − b) and ``dets`` holds
    (value, bound, in_numerator) triples. The scale is |r|·κ where κ sums the
    relative conditioning of every factor.
    """
    value = 1.0
    kappa = 0.0
    for (a, b), up in diffs:
        d = a - b
        value = value * d if up else value / d
        kappa += (abs(a) + abs(b)) / max(abs(d), TINY)
    for det, bound, up in dets:
        value = value * det if up else value / det
        kappa += bound / max(abs(det), TINY)
    return value, abs(value) * kappa


# -- one-set forms -------------------------------------------------------------------

def cayley_menger(points: int) -> IdentityForm:
    """Bordered determinant of squared intervals of order points + 1."""

    def equations(values):
        m = np.ones((points + 1, points + 1))
        m[0, 0] = 0.0
        for i in range(points):
            m[i + 1, i + 1] = 0.0
            for j in range(i + 1, points):
                m[i + 1, j + 1] = m[j + 1, i + 1] = _sym(values, i, j)
        return [_det(m)]

    return IdentityForm(FormKind.CAYLEY_MENGER, f"cayley-menger order {points + 1}", equations)


def gram(points: int, diagonal: Optional[float] = None) -> IdentityForm:
    """Gramian of order ``points``; the diagonal holds f(ii) unless given."""

    def equations(values):
        m = np.zeros((points, points))
        for i in range(points):
            m[i, i] = values[(i, i)][0] if diagonal is None else diagonal
            for j in range(i + 1, points):
                m[i, j] = m[j, i] = _sym(values, i, j)
        return [_det(m)]

    return IdentityForm(
        FormKind.GRAM, f"gramian order {points}", equations, diagonal=diagonal is None
    )


def pfaffian(points: int, bordered: bool = False) -> IdentityForm:
    """Pfaffian of the antisymmetric matrix f(ij), optionally bordered by ones."""
    from phenostruct.numeric import pfaffian as pf

    order = points + (1 if bordered else 0)

    def equations(values):
        m = np.zeros((order, order))
        for i, j in combinations(range(points), 2):
            m[i, j] = _sym(values, i, j)
            m[j, i] = -m[i, j]
        if bordered:
            m[:points, points] = 1.0
            m[points, :points] = -1.0
        return [(pf(m), float(np.sqrt(hadamard_bound(m))))]

    return IdentityForm(FormKind.PFAFFIAN, f"pfaffian order {order}", equations)


def simplicial_plane() -> IdentityForm:
    def equations(values):
        f = lambda a, b: _sym(values, a, b)  # noqa: E731
        i, j, k, l = range(4)
        m = [
            [f(i, j) - f(j, k), f(j, k) - f(i, k), 0.0],
            [f(i, j) - f(j, l), 0.0, f(i, l) - f(j, l)],
            [0.0, f(i, k) - f(k, l), f(i, l) - f(k, l)],
        ]
        return [_det(m)]

    return IdentityForm(FormKind.SIMPLICIAL, "simplicial determinant order 3", equations)


def cocycle(components: Sequence[int]) -> IdentityForm:
    """f(ij) − f(ik) + f(jk) = 0 for each listed component."""

    def equations(values):
        terms = []
        for k in components:
            a, b, c = values[(0, 1)][k], values[(0, 2)][k], values[(1, 2)][k]
            terms.append((a - b + c, abs(a) + abs(b) + abs(c)))
        return terms

    return IdentityForm(FormKind.LINEAR_COCYCLE, f"cocycle on {tuple(components)}", equations)


def _thermal_terms(values: Values, first: int, second: int) -> list[Term]:
    p = lambda a, b: values[(a, b)][first]  # noqa: E731
    q = lambda a, b: values[(a, b)][second]  # noqa: E731
    i, j, k = 0, 1, 2
    return [
        _det([
            [0.0, -q(i, j), -q(i, k)],
            [p(i, j), 0.0, -q(j, k)],
            [p(i, k), p(j, k), 0.0],
        ]),
        _det([
            [p(i, j), p(j, k), -q(i, k)],
            [p(i, k), 0.0, -q(i, k)],
            [p(i, k), -q(i, j), -q(j, k)],
        ]),
    ]


def thermal() -> IdentityForm:
    """Two third-order determinants of the heat-like pair."""
    return IdentityForm(
        FormKind.CUSTOM_DET, "thermal determinants", lambda v: _thermal_terms(v, 0, 1)
    )


def split_thermal() -> IdentityForm:
    """Additive first component with the thermal determinants on the other two."""

    def equations(values):
        return cocycle([0]).evaluate(values) + _thermal_terms(values, 1, 2)

    return IdentityForm(FormKind.CUSTOM_DET, "cocycle + thermal determinants", equations)


def _quotient(parts: Sequence[float], den: float) -> Term:
    """Σ parts / den with the rounding scale Σ|parts|/|den| + |value|."""
    value = sum(parts) / den
    return value, sum(abs(p) for p in parts) / abs(den) + abs(value)


def thermodynamic() -> IdentityForm:
    """Temperature cocycle, work-difference cocycle and the mixed relation."""

    def equations(values):
        ij, ik, jk = values[(0, 1)], values[(0, 2)], values[(1, 2)]
        terms = cocycle([0]).evaluate(values)
        r_ij = _quotient([ij[1], -ij[2]], ij[0])
        r_ik = _quotient([ik[1], -ik[2]], ik[0])
        r_jk = _quotient([jk[1], -jk[2]], jk[0])
        terms.append((r_ij[0] - r_ik[0] + r_jk[0], r_ij[1] + r_ik[1] + r_jk[1]))
        mixed = _quotient([ij[2], -ik[2], jk[1]], jk[0])
        terms.append(_alternate(mixed, r_ik))
        return terms

    return IdentityForm(FormKind.CUSTOM_DET, "thermodynamic relations", equations)


# -- two-set forms, one component ----------------------------------------------------

def grid_additive(components: Sequence[int]) -> IdentityForm:
    """f(iα) − f(iβ) − f(jα) + f(jβ) = 0 per component."""

    def equations(values):
        terms = []
        for k in components:
            a, b, c, d = (values[key][k] for key in ((0, 0), (0, 1), (1, 0), (1, 1)))
            terms.append((a - b - c + d, abs(a) + abs(b) + abs(c) + abs(d)))
        return terms

    return IdentityForm(FormKind.LINEAR_COCYCLE, "grid alternating sum", equations)


def row_determinant(
    rows: int, cols: int, row: Callable[[list[float]], list[float]], label: str, border: bool = False
) -> IdentityForm:
    """Determinant whose i-th row is built from f(iα), f(iβ), ... of one component."""

    def equations(values):
        matrix = [row([values[(i, a)][0] for a in range(cols)]) for i in range(rows)]
        if border:
            matrix = [[0.0] + [1.0] * cols] + [[1.0] + r for r in matrix]
        return [_det(matrix)]

    return IdentityForm(FormKind.CUSTOM_DET, label, equations)


def affine_rows(points: int) -> IdentityForm:
    return row_determinant(points, points - 1, lambda r: r + [1.0], f"determinant order {points}")


def mobius_rows() -> IdentityForm:
    return row_determinant(
        4, 2, lambda r: [r[0], r[1], r[0] * r[1], 1.0], "cross-product determinant order 4"
    )


def square_rows(points: int) -> IdentityForm:
    return row_determinant(points, points, list, f"determinant order {points}")


def bordered_rows(points: int) -> IdentityForm:
    return row_determinant(
        points, points, list, f"bordered determinant order {points + 1}", border=True
    )


def candidate_rows() -> IdentityForm:
    """Fifth-order determinant proposed for a rank (5,3) structure."""
    return row_determinant(
        5,
        3,
        lambda r: [1.0, r[0], r[1], r[2], r[0] * r[1] * r[2]],
        "candidate determinant order 5",
    )


def with_kind(form: IdentityForm, kind: FormKind) -> IdentityForm:
    return IdentityForm(kind, form.label, form.equations, form.diagonal)


# -- two-set forms, two components ----------------------------------------------------

def _f(values: Values, i: int, a: int) -> np.ndarray:
    return values[(i, a)]


def scaled_product_pair() -> IdentityForm:
    """Relations of ((x+ξ)y, (x+ξ)η)."""

    def equations(values):
        F = lambda i, a, k: values[(i, a)][k]  # noqa: E731
        first = (
            (F(0, 0, 0) - F(0, 1, 0)) * F(1, 0, 0) * F(0, 0, 1),
            F(0, 0, 0) * F(1, 0, 1) * (F(1, 0, 0) - F(1, 1, 0)),
        )
        second = (
            (F(0, 0, 1) - F(1, 0, 1)) * F(0, 1, 1) * F(0, 0, 0),
            F(0, 0, 1) * F(0, 1, 0) * (F(0, 1, 1) - F(1, 1, 1)),
        )
        return [
            (first[0] - first[1], abs(first[0]) + abs(first[1])),
            (second[0] - second[1], abs(second[0]) + abs(second[1])),
        ]

    return IdentityForm(FormKind.CUSTOM_DET, "second-order determinant pair", equations)


def _column_d3(values: Values, rows: Sequence[int], k1: int, a1: int, k2: int, a2: int):
    """det[[f^k1(rα1), f^k2(rα2), 1]] over the listed rows."""
    pts = [(values[(r, a1)][k1], values[(r, a2)][k2]) for r in rows]
    return _d3(*pts)


def eps_pair(eps: float) -> IdentityForm:
    """Determinant relations of the ε-number affine structure."""

    def equations(values):
        rows = (0, 1, 2)
        d11, h11 = _column_d3(values, rows, 0, 0, 0, 1)
        d22, h22 = _column_d3(values, rows, 1, 0, 1, 1)
        d12, h12 = _column_d3(values, rows, 0, 0, 1, 1)
        d21, h21 = _column_d3(values, rows, 1, 0, 0, 1)
        return [(d11 + eps * d22, h11 + abs(eps) * h22), (d12 + d21, h12 + h21)]

    return IdentityForm(FormKind.CUSTOM_DET, f"ε-determinants (ε={eps:g})", equations)


def _power_term(values: Values, a: int, c: float) -> Term:
    pts = [(values[(r, a)][0], values[(r, a)][1]) for r in (0, 1, 2)]
    det, bound = _d3(*pts)
    delta = pts[0][0] - pts[1][0]
    denom = np.sign(delta) * abs(delta) ** (c + 1)
    return det / denom, bound / abs(delta) ** (c + 1)


def power_pair(c: float) -> IdentityForm:
    def equations(values):
        return [
            _alternate(_power_term(values, 0, c), _power_term(values, 1, c)),
            _column_d3(values, (0, 1, 2), 0, 0, 0, 1),
        ]

    return IdentityForm(FormKind.ALTERNATION, f"alternated power ratio (c={c:g})", equations)


def _log_term(values: Values, a: int) -> Term:
    f1 = [values[(r, a)][0] for r in (0, 1, 2)]
    f2 = [values[(r, a)][1] for r in (0, 1, 2)]
    det1, h1 = _d3(*zip(f1, f2))
    det2, h2 = _d3(*zip(f1, [u * u for u in f1]))
    delta = f1[0] - f1[1]
    log = np.log(abs(delta))
    cube = delta**3
    return (det1 - det2 * log) / cube, (h1 + h2 * abs(log)) / abs(cube)


def log_pair() -> IdentityForm:
    def equations(values):
        return [
            _column_d3(values, (0, 1, 2), 0, 0, 0, 1),
            _alternate(_log_term(values, 0), _log_term(values, 1)),
        ]

    return IdentityForm(FormKind.ALTERNATION, "alternated logarithmic ratio", equations)


def linear_pair() -> IdentityForm:
    """Balanced products of second-order determinants of each component."""

    def equations(values):
        def d(k, r, s):
            return _d2(
                (values[(r, 0)][k], values[(r, 1)][k]),
                (values[(s, 0)][k], values[(s, 1)][k]),
            )

        i, j, k = 0, 1, 2
        first = _products((1, (d(0, i, k), d(1, j, k))), (-1, (d(0, j, k), d(1, i, k))))
        second = _products((1, (d(0, i, j), d(1, k, j))), (-1, (d(0, k, j), d(1, i, j))))
        return [first, second]

    return IdentityForm(FormKind.ALTERNATION, "alternated determinant products", equations)


def _eps_det(matrix: list[list[EpsNumber]]) -> tuple[EpsNumber, float]:
    """Leibniz expansion over ε-numbers with the permanent of moduli as bound."""
    n = len(matrix)
    eps = matrix[0][0].eps
    total = EpsNumber(0.0, 0.0, eps)
    bound = 0.0
    for perm in permutations(range(n)):
        sign = 1
        for a in range(n):
            for b in range(a + 1, n):
                if perm[a] > perm[b]:
                    sign = -sign
        term = EpsNumber(float(sign), 0.0, eps)
        mod = 1.0
        for r, c in enumerate(perm):
            term = term * matrix[r][c]
            mod *= matrix[r][c].modulus()
        total = total + term
        bound += mod
    return total, bound


def eps_mobius(eps: float) -> IdentityForm:
    """Cross-product determinant over ε-numbers, real and imaginary parts."""

    def equations(values):
        rows = []
        for i in range(4):
            u = EpsNumber(values[(i, 0)][0], values[(i, 0)][1], eps)
            w = EpsNumber(values[(i, 1)][0], values[(i, 1)][1], eps)
            rows.append([u, w, u * w, EpsNumber(1.0, 0.0, eps)])
        det, bound = _eps_det(rows)
        return [(det.re, bound), (det.im, bound)]

    return IdentityForm(FormKind.CUSTOM_DET, f"ε-number determinant (ε={eps:g})", equations)


def _plane_det(values: Values, a: int, rows: Sequence[int]) -> tuple[float, float]:
    return _d3(*[(values[(r, a)][0], values[(r, a)][1]) for r in rows])


def mobius_pair() -> IdentityForm:
    def equations(values):
        def cross(a):
            g = lambda r: values[(r, a)][0]  # noqa: E731
            return _ratio(
                [((g(1), g(3)), True), ((g(0), g(2)), True), ((g(0), g(3)), False), ((g(1), g(2)), False)],
                [],
            )

        def mixed(a):
            g = lambda r: values[(r, a)][0]  # noqa: E731
            num, hn = _plane_det(values, a, (0, 2, 3))
            den, hd = _plane_det(values, a, (1, 2, 3))
            return _ratio(
                [((g(1), g(3)), True), ((g(0), g(3)), False)],
                [(num, hn, True), (den, hd, False)],
            )

        return [_alternate(cross(0), cross(1)), _alternate(mixed(0), mixed(1))]

    return IdentityForm(FormKind.ALTERNATION, "alternated cross ratios", equations)


def affine_pair() -> IdentityForm:
    def equations(values):
        def d(k, rows):
            return _column_d3(values, rows, k, 0, k, 1)

        i, j, k, l = range(4)
        first = _products(
            (1, (d(0, (i, k, l)), d(1, (j, k, l)))), (-1, (d(0, (j, k, l)), d(1, (i, k, l))))
        )
        second = _products(
            (1, (d(0, (i, j, k)), d(1, (i, j, l)))), (-1, (d(0, (i, j, l)), d(1, (i, j, k))))
        )
        return [first, second]

    return IdentityForm(FormKind.ALTERNATION, "alternated determinant products", equations)


def projective_pair() -> IdentityForm:
    def equations(values):
        def ratio(a, n1, n2, d1, d2):
            dets = [
                (*_plane_det(values, a, n1), True),
                (*_plane_det(values, a, n2), True),
                (*_plane_det(values, a, d1), False),
                (*_plane_det(values, a, d2), False),
            ]
            return _ratio([], dets)

        i, j, k, l, m = range(5)
        first = [ratio(a, (i, k, l), (j, k, m), (j, k, l), (i, k, m)) for a in (0, 1)]
        second = [ratio(a, (i, k, l), (j, l, m), (j, k, l), (i, l, m)) for a in (0, 1)]
        return [_alternate(*first), _alternate(*second)]

    return IdentityForm(FormKind.ALTERNATION, "alternated projective ratios", equations)


# -- quasigroup form ---------------------------------------------------------------

def quasigroup(spec: MetricSpec) -> IdentityForm:
    """R̂(αβ) f(f(iα); f(jα), f(kα), ...) = 0 with f the metric itself.

    The substituted arguments must lie in the metric's domain; a miss
    raises DomainViolation.
    """
    s = spec.s
    others = spec.dimB // s

    def equations(values):
        out = []
        for a in (0, 1):
            head = values[(0, a)]
            tail = np.concatenate([values[(r, a)] for r in range(1, others + 1)])
            out.append(eval_metric(spec, head, tail))
        g_alpha, g_beta = out
        return [
            (g_alpha[k] - g_beta[k], max(1.0, abs(g_alpha[k]) + abs(g_beta[k])))
            for k in range(s)
        ]

    return IdentityForm(
        FormKind.ALTERNATION_QUASIGROUP, f"quasigroup alternation ({spec.id})", equations
    )
