"""Metric-function library.

Each evaluator takes the two points of a pair and the parameter mapping
and returns the s components. One-set evaluators receive (i, j); two-set
evaluators receive (i, α) with the point of M first. Domain helpers build
the predicates that keep every denominator, logarithm, power and arcsin
argument away from its singular set by the configured margin.
"""

from typing import Mapping

import numpy as np

from phenostruct.utils import CONFIG

DELTA = CONFIG["sampling"]["margin"]
RATIO_CAP = CONFIG["sampling"]["ratio_cap"]

Params = Mapping[str, float]


# -- small pieces shared by several families ---------------------------------

def _arcth(t: float) -> float:
    """artanh inside the unit interval, arcoth outside it."""
    return np.arctanh(t) if abs(t) < 1.0 else np.arctanh(1.0 / t)


def _eps(coord: float, p: Params) -> float:
    return p["eps_pos"] if coord > 0 else p["eps_neg"]


def _sphere2(a, b) -> float:
    """Cosine of the angle between two points of the unit 2-sphere (x = longitude)."""
    return np.sin(a[1]) * np.sin(b[1]) * np.cos(a[0] - b[0]) + np.cos(a[1]) * np.cos(b[1])


def _hyper2(a, b) -> float:
    return np.cosh(a[1]) * np.cosh(b[1]) * np.cos(a[0] - b[0]) - np.sinh(a[1]) * np.sinh(b[1])


def _sphere3(a, b) -> float:
    return np.sin(a[2]) * np.sin(b[2]) * _sphere2(a, b) + np.cos(a[2]) * np.cos(b[2])


def det3(u, v, w) -> float:
    """det[[u0, u1, 1], [v0, v1, 1], [w0, w1, 1]]."""
    return u[0] * (v[1] - w[1]) - u[1] * (v[0] - w[0]) + (v[0] * w[1] - v[1] * w[0])


def _spherical_angles(a, b, ratio_num_a, ratio_num_b, cos_value):
    """arcsin corrections of the spherical trimetric families."""
    root = np.sqrt(1.0 - cos_value**2)
    return np.arcsin(ratio_num_b / root), np.arcsin(ratio_num_a / root)


# -- predicates ----------------------------------------------------------------

def apart(k: int = 0):
    """|a_k − b_k| ≥ δ."""
    def check(a, b, p):
        return abs(a[k] - b[k]) >= DELTA
    return check


def bounded_slope(num: int = 1, den: int = 0, cap: float = RATIO_CAP):
    """|a_den − b_den| ≥ δ and the slope of the pair stays under the cap."""
    def check(a, b, p):
        d = a[den] - b[den]
        return abs(d) >= DELTA and abs((a[num] - b[num]) / d) <= cap
    return check


def off_light_cone(a, b, p) -> bool:
    """Slope bounded and away from ±1 (the two branches of ar(c)th)."""
    d = a[0] - b[0]
    if abs(d) < DELTA:
        return False
    t = (a[1] - b[1]) / d
    return abs(abs(t) - 1.0) >= DELTA and abs(t) <= RATIO_CAP


def nonzero(k: int, margin: float = DELTA):
    def check(point, p):
        return abs(point[k]) >= margin
    return check


def both(*checks):
    def check(*args):
        return all(c(*args) for c in checks)
    return check


def sum_apart(k: int = 0, l: int = 0):
    """|a_k + b_l| ≥ δ."""
    def check(a, b, p):
        return abs(a[k] + b[l]) >= DELTA
    return check


def arcsin_safe(cos_fn, num_a_fn, num_b_fn):
    def check(a, b, p):
        c = cos_fn(a, b)
        if abs(c) > 1.0 - DELTA:
            return False
        root = np.sqrt(1.0 - c**2)
        return (
            abs(num_a_fn(a, b) / root) <= 1.0 - DELTA
            and abs(num_b_fn(a, b) / root) <= 1.0 - DELTA
        )
    return check


# -- one-set, one component ------------------------------------------------------

def line(a, b, p):
    return a[0] - b[0]


def flat(signature):
    """Squared interval of a flat space with the given ± signature."""
    sig = np.asarray(signature, dtype=float)

    def evaluate(a, b, p):
        d = a - b
        return float(np.dot(sig, d * d))

    return evaluate


def flat_special(signature):
    """Flat interval of the leading coordinates scaled by exp 2(t_i + t_j)."""
    base = flat(signature)

    def evaluate(a, b, p):
        return base(a[:-1], b[:-1], p) * np.exp(2.0 * (a[-1] + b[-1]))

    return evaluate


def sphere_2d(a, b, p):
    return _sphere2(a, b)


def lobachevsky_2d(a, b, p):
    return np.sinh(a[1]) * np.sinh(b[1]) * np.cos(a[0] - b[0]) - np.cosh(a[1]) * np.cosh(b[1])


def hyperboloid_2d(a, b, p):
    return _hyper2(a, b)


def symplectic(a, b, p):
    """x_i y_j − x_j y_i, extended pairwise in higher even dimension."""
    total = 0.0
    for k in range(0, len(a) - 1, 2):
        total += a[k] * b[k + 1] - b[k] * a[k + 1]
    return total


def symplectic_odd(a, b, p):
    return a[0] * b[1] - b[0] * a[1] + a[2] - b[2]


def simplicial(a, b, p):
    return (a[1] - b[1]) / (a[0] - b[0])


def pseudo_helmholtz(a, b, p):
    dx, dy = a[0] - b[0], a[1] - b[1]
    return (dx**2 - dy**2) * np.exp(2.0 * p["beta"] * _arcth(dy / dx))


def dual_helmholtz(a, b, p):
    dx, dy = a[0] - b[0], a[1] - b[1]
    return dx**2 * np.exp(2.0 * dy / dx)


def helmholtz(a, b, p):
    dx, dy = a[0] - b[0], a[1] - b[1]
    return (dx**2 + dy**2) * np.exp(2.0 * p["gamma"] * np.arctan(dy / dx))


def disconnected(n_flat: int):
    """((Δx)² ± ... + ε_i u_i² + ε_j u_j²)/(u_i u_j) with u the last coordinate."""

    def evaluate(a, b, p):
        num = (a[0] - b[0]) ** 2
        signs = (p["sign"], p.get("sign_last", p["sign"]))
        for k in range(1, n_flat):
            num += signs[min(k, 2) - 1] * (a[k] - b[k]) ** 2
        u, v = a[-1], b[-1]
        num += _eps(u, p) * u**2 + _eps(v, p) * v**2
        return num / (u * v)

    return evaluate


def sphere_3d(a, b, p):
    return _sphere3(a, b)


def lobachevsky_3d(a, b, p):
    return np.sinh(a[2]) * np.sinh(b[2]) * _sphere2(a, b) - np.cosh(a[2]) * np.cosh(b[2])


def hyperboloid_one_3d(a, b, p):
    return np.cosh(a[2]) * np.cosh(b[2]) * _sphere2(a, b) - np.sinh(a[2]) * np.sinh(b[2])


def hyperboloid_two_3d(a, b, p):
    return np.cosh(a[2]) * np.cosh(b[2]) * _hyper2(a, b) - np.sinh(a[2]) * np.sinh(b[2])


def simplicial_additive_3d(a, b, p):
    return simplicial(a, b, p) + a[2] + b[2]


def simplicial_multiplicative_3d(a, b, p):
    return simplicial(a, b, p) * np.exp(a[2] + b[2])


def pseudo_helmholtz_3d(a, b, p):
    return pseudo_helmholtz(a, b, p) * np.exp(2.0 * (a[2] + b[2]))


def dual_helmholtz_3d(a, b, p):
    return dual_helmholtz(a, b, p) * np.exp(2.0 * (a[2] + b[2]))


def helmholtz_3d(a, b, p):
    return helmholtz(a, b, p) * np.exp(2.0 * (a[2] + b[2]))


def sphere_4d(a, b, p):
    return np.sin(a[3]) * np.sin(b[3]) * _sphere3(a, b) + np.cos(a[3]) * np.cos(b[3])


def sphere_hyperbolic_4d(a, b, p):
    return np.cosh(a[3]) * np.cosh(b[3]) * _sphere3(a, b) - np.sinh(a[3]) * np.sinh(b[3])


def lobachevsky_4d(a, b, p):
    return np.sinh(a[3]) * np.sinh(b[3]) * _sphere3(a, b) - np.cosh(a[3]) * np.cosh(b[3])


def _inner_hyper3(a, b):
    return np.cosh(a[2]) * np.cosh(b[2]) * _sphere2(a, b) - np.sinh(a[2]) * np.sinh(b[2])


def hyperbolic_hyperbolic_4d(a, b, p):
    return np.cosh(a[3]) * np.cosh(b[3]) * _inner_hyper3(a, b) - np.sinh(a[3]) * np.sinh(b[3])


def hyperbolic_lobachevsky_4d(a, b, p):
    return np.sinh(a[3]) * np.sinh(b[3]) * _inner_hyper3(a, b) - np.cosh(a[3]) * np.cosh(b[3])


# -- one-set, several components --------------------------------------------------

def additive(a, b, p):
    return a - b


def thermal(a, b, p):
    dx = a[0] - b[0]
    return [dx * a[1], dx * b[1]]


def _tail(a, b):
    """The (x_i − x_j) z_i, (x_i − x_j) z_j pair shared by several trimetric families."""
    dx = a[0] - b[0]
    return [dx * a[2], dx * b[2]]


def tri_thermo(a, b, p):
    dx = a[0] - b[0]
    dz = a[2] - b[2]
    return [a[1] - b[1], dx * a[1] + dz, dx * b[1] + dz]


def tri_dual_helmholtz(a, b, p):
    return [dual_helmholtz(a, b, p), *_tail(a, b)]


def tri_simplicial(a, b, p):
    return [simplicial(a, b, p), *_tail(a, b)]


def tri_product(a, b, p):
    return [(a[0] - b[0]) * (a[1] - b[1]), *_tail(a, b)]


def tri_split(a, b, p):
    return [a[1] - b[1], *_tail(a, b)]


def tri_power(a, b, p):
    dx = a[0] - b[0]
    return [abs(dx) ** p["p"] / (a[1] - b[1]), *_tail(a, b)]


def tri_polar(a, b, p):
    dx, dy = a[0] - b[0], a[1] - b[1]
    angle = np.arctan(dy / dx)
    return [dx**2 + dy**2, a[2] + angle, b[2] + angle]


def tri_helmholtz(a, b, p):
    dx, dy = a[0] - b[0], a[1] - b[1]
    angle = np.arctan(dy / dx)
    return [helmholtz(a, b, p), a[2] + angle, b[2] + angle]


def _sphere_numerators(a, b):
    dx = a[0] - b[0]
    return np.sin(dx) * np.sin(a[1]), np.sin(dx) * np.sin(b[1])


def tri_sphere(a, b, p):
    c = _sphere2(a, b)
    num_a, num_b = _sphere_numerators(a, b)
    corr_b, corr_a = _spherical_angles(a, b, num_a, num_b, c)
    return [c, a[2] - corr_b, b[2] + corr_a]


def tri_cubic(a, b, p):
    dx = a[0] - b[0]
    return [dx * a[1] * b[1], a[2] + 1.0 / (dx * a[1] ** 2), b[2] - 1.0 / (dx * b[1] ** 2)]


sphere_pair_safe = arcsin_safe(
    _sphere2,
    lambda a, b: _sphere_numerators(a, b)[0],
    lambda a, b: _sphere_numerators(a, b)[1],
)


# -- four-metric families on a four-dimensional manifold ---------------------------

def _four_metric_head(a, b):
    dx, dy, dz, dt = a - b
    return dx, dy, dz, dt, a[3] + b[3]


def four_metric_1(a, b, p):
    dx, dy, dz, dt, T = _four_metric_head(a, b)
    return [dx**2 * np.exp(p["eps"] * T), dy**2 * np.exp(p["k"] * T), dz**2 * np.exp(p["l"] * T), dt]


def four_metric_2(a, b, p):
    dx, dy, dz, dt, T = _four_metric_head(a, b)
    ang = np.arctan(dy / dx)
    return [
        (dx**2 + dy**2) * np.exp(-2.0 * p["k"] * ang),
        2.0 * ang + T,
        dz**2 * np.exp(p["l"] * T),
        dt,
    ]


def four_metric_3(a, b, p):
    dx, dy, dz, dt, T = _four_metric_head(a, b)
    r = dy / dx
    return [dx**2 * np.exp(-2.0 * p["k"] * r), 2.0 * r + T, dz**2 * np.exp(p["eps"] * T), dt]


def four_metric_4(a, b, p):
    dx, dy, dz, dt, T = _four_metric_head(a, b)
    return [dx, 2.0 * dy / dx - T, dz - dy**2 / (2.0 * dx), dt]


def four_metric_5(a, b, p):
    dx, dy, dz, dt, T = _four_metric_head(a, b)
    return [dx, 2.0 * dy / dx - T, dx * np.log(abs(dz + dy + dx)) - dy, dt]


def four_metric_6(a, b, p):
    dx, dy, dz, dt, T = _four_metric_head(a, b)
    k = p["k"]
    return [dx**2 * np.exp(-2.0 * k * dy / dx), 2.0 * dy / dx - T, k * dy - dx - k**2 * dz, dt]


def four_metric_7(a, b, p):
    dx, dy, dz, dt, T = _four_metric_head(a, b)
    r = dy / dx
    return [dx**2 * np.exp(-2.0 * p["k"] * r), 2.0 * r - T, 2.0 * dz / dx - p["k"] * r**2, dt]


def four_metric_8(a, b, p):
    dx, dy, dz, dt, T = _four_metric_head(a, b)
    c = p["c"]
    return [
        (dx - a[2] * dy) ** 2 * np.exp(c * T),
        (dx - b[2] * dy) ** 2 * np.exp(c * T),
        dy**2 * np.exp(T),
        dt,
    ]


def four_metric_9(a, b, p):
    dx, dy = a[0] - b[0], a[1] - b[1]
    return [dx * np.exp(a[2]), dx * np.exp(b[2]), dy * np.exp(a[3]), dy * np.exp(b[3])]


def four_metric_10(a, b, p):
    dx, dy, dz, dt, T = _four_metric_head(a, b)
    return [
        (dx**2 + dy**2) * np.exp(a[2] + b[2]),
        2.0 * np.arctan(dy / dx) + a[3] + b[3],
        dz,
        dt,
    ]


def four_metric_11(a, b, p):
    return [*tri_sphere(a, b, p), a[3] - b[3]]


def four_metric_12(a, b, p):
    return [*tri_cubic(a, b, p), a[3] - b[3]]


def log_sum_apart(a, b, p) -> bool:
    return abs(a[0] - b[0]) >= DELTA and abs((a[0] - b[0]) + (a[1] - b[1]) + (a[2] - b[2])) >= DELTA


# -- two sets, one component --------------------------------------------------------

def sum_xi(a, b, p):
    return a[0] + b[0]


def affine_xi(a, b, p):
    return a[0] * b[0] + b[1]


def mobius_xi(a, b, p):
    return (a[0] * b[0] + b[1]) / (a[0] + b[2])


def bilinear(a, b, p):
    return float(np.dot(a, b))


def bilinear_shift(a, b, p):
    """Σ_{μ<m} x^μ ξ^μ + x^m + ξ^m."""
    return float(np.dot(a[:-1], b[:-1])) + a[-1] + b[-1]


def bilinear_tail(a, b, p):
    """Σ_{μ≤m} x^μ ξ^μ + ξ^{m+1}."""
    return float(np.dot(a, b[:-1])) + b[-1]


def cubic_negative(a, b, p):
    return a[0] * b[0] + b[0] ** 3


def rank53_candidate(a, b, p):
    x, y = a
    xi, eta, mu, nu = b
    return (x * xi + y * eta + mu) / (x * y + nu)


# -- two sets, two components, canonical -----------------------------------------

def di_additive(a, b, p):
    return [a[0] + b[0], a[1] + b[1]]


def di_multiplicative(a, b, p):
    s = a[0] + b[0]
    return [s * a[1], s * b[1]]


def di_eps(a, b, p):
    x, y = a
    xi, eta, mu, nu = b
    return [x * xi + p["eps"] * y * eta + mu, x * eta + y * xi + nu]


def di_power(a, b, p):
    x, y = a
    xi, eta, mu, nu = b
    return [x * xi + mu, x * eta + y * xi ** p["c"] + nu]


def di_log(a, b, p):
    x, y = a
    xi, eta, mu, nu = b
    return [x * xi + mu, x * eta + y * xi**2 + x**2 * xi**2 * np.log(xi) + nu]


def di_linear(a, b, p):
    x, y = a
    xi, eta, mu, nu = b
    return [x * xi + y * mu, x * eta + y * nu]


def di_eps_mobius(a, b, p):
    x, y = a
    xi, eta, mu, nu, rho, tau = b
    eps = p["eps"]
    p1 = x * xi + eps * y * eta + mu
    p2 = x * eta + y * xi + nu
    A, B = x + rho, y + tau
    q = A**2 - eps * B**2
    return [(p1 * A - eps * p2 * B) / q, (p1 * B - p2 * A) / q]


def di_mobius(a, b, p):
    x, y = a
    xi, eta, mu, nu, rho, tau = b
    return [(x * xi + mu) / (x + rho), (x * eta + y * nu + tau) / (x + rho)]


def di_affine(a, b, p):
    x, y = a
    xi, eta, mu, nu, rho, tau = b
    return [x * xi + y * mu + rho, x * eta + y * nu + tau]


def di_projective(a, b, p):
    x, y = a
    xi, eta, mu, nu, rho, tau, phi, omega = b
    den = x * phi + y + omega
    return [(x * xi + y * mu + rho) / den, (x * eta + y * nu + tau) / den]


def eps_denominator(a, b, p) -> bool:
    A, B = a[0] + b[4], a[1] + b[5]
    return abs(A**2 - p["eps"] * B**2) >= DELTA


def projective_denominator(a, b, p) -> bool:
    return abs(a[0] * b[6] + a[1] + b[7]) >= DELTA


# -- two sets, two components, quasigroup form --------------------------------------

def _pairs(b):
    return [(b[k], b[k + 1]) for k in range(0, len(b), 2)]


def dq_additive(a, b, p):
    return [a[0] - b[0], a[1] - b[1]]


def dq_multiplicative(a, b, p):
    return [(a[0] - b[0]) * b[1], a[1] / b[1]]


def dq_eps(a, b, p):
    x, y = a
    (xi, eta), (mu, nu) = _pairs(b)
    eps = p["eps"]
    q = (xi - mu) ** 2 - eps * (eta - nu) ** 2
    return [
        ((x - mu) * (xi - mu) - eps * (y - nu) * (eta - nu)) / q,
        -det3(a, (xi, eta), (mu, nu)) / q,
    ]


def dq_power(a, b, p):
    x, y = a
    (xi, eta), (mu, nu) = _pairs(b)
    d = xi - mu
    return [(x - mu) / d, -det3(a, (xi, eta), (mu, nu)) / (np.sign(d) * abs(d) ** (p["c"] + 1))]


def dq_log(a, b, p):
    x, y = a
    (xi, eta), (mu, nu) = _pairs(b)
    d = xi - mu
    vandermonde = x**2 * (xi - mu) - x * (xi**2 - mu**2) + (xi**2 * mu - mu**2 * xi)
    return [
        (x - mu) / d,
        (-det3(a, (xi, eta), (mu, nu)) - np.log(abs(d)) * vandermonde) / d**3,
    ]


def eps_gap(a, b, p) -> bool:
    return abs((b[0] - b[2]) ** 2 - p["eps"] * (b[1] - b[3]) ** 2) >= DELTA


def cross_apart(a, b, p) -> bool:
    return abs(b[0] * b[3] - b[1] * b[2]) >= DELTA


def dq_linear(a, b, p):
    x, y = a
    xi, eta, mu, nu = b
    d = xi * nu - eta * mu
    return [(x * nu - y * mu) / d, (x * eta - y * xi) / d]


class EpsNumber:
    """a + e·b with e² = ε (complex, dual or double numbers)."""

    __slots__ = ("re", "im", "eps")

    def __init__(self, re: float, im: float, eps: float):
        self.re, self.im, self.eps = re, im, eps

    def _wrap(self, other):
        if isinstance(other, EpsNumber):
            return other
        return EpsNumber(float(other), 0.0, self.eps)

    def __add__(self, other):
        other = self._wrap(other)
        return EpsNumber(self.re + other.re, self.im + other.im, self.eps)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._wrap(other)
        return EpsNumber(self.re - other.re, self.im - other.im, self.eps)

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __neg__(self):
        return EpsNumber(-self.re, -self.im, self.eps)

    def __mul__(self, other):
        other = self._wrap(other)
        return EpsNumber(
            self.re * other.re + self.eps * self.im * other.im,
            self.re * other.im + self.im * other.re,
            self.eps,
        )

    __rmul__ = __mul__

    def norm(self) -> float:
        return self.re**2 - self.eps * self.im**2

    def conjugate(self):
        return EpsNumber(self.re, -self.im, self.eps)

    def __truediv__(self, other):
        other = self._wrap(other)
        q = other.norm()
        num = self * other.conjugate()
        return EpsNumber(num.re / q, num.im / q, self.eps)

    def modulus(self) -> float:
        return abs(self.re) + abs(self.im)


def dq_eps_cross_ratio(a, b, p):
    eps = p["eps"]
    z = EpsNumber(a[0], a[1], eps)
    w, m, r = (EpsNumber(u, v, eps) for u, v in _pairs(b))
    value = (z - m) * (w - r) / ((z - r) * (w - m))
    return [value.re, value.im]


def eps_cross_ratio_safe(a, b, p) -> bool:
    eps = p["eps"]
    z = EpsNumber(a[0], a[1], eps)
    w, m, r = (EpsNumber(u, v, eps) for u, v in _pairs(b))
    return abs(((z - r) * (w - m)).norm()) >= DELTA


def dq_mobius(a, b, p):
    x, y = a
    (xi, eta), (mu, nu), (rho, tau) = _pairs(b)
    base = 1.0 / ((x - rho) * (xi - mu))
    return [
        (x - mu) * (xi - rho) * base,
        (mu - rho) * (xi - rho) * base
        * (-det3(a, (xi, eta), (mu, nu)))
        / det3((xi, eta), (mu, nu), (rho, tau)),
    ]


def dq_affine(a, b, p):
    xi_, mu_, rho_ = _pairs(b)
    d = det3(xi_, mu_, rho_)
    return [det3(a, mu_, rho_) / d, det3(a, xi_, rho_) / d]


def dq_projective(a, b, p):
    xi_, mu_, rho_, phi_ = _pairs(b)
    base = det3(a, rho_, phi_)
    return [
        det3(a, mu_, phi_) / det3(xi_, mu_, phi_) * det3(xi_, rho_, phi_) / base,
        det3(a, xi_, rho_) / det3(xi_, mu_, rho_) * det3(mu_, rho_, phi_) / base,
    ]


def dets_apart(*triples):
    """Every det3 over the listed index triples stays away from zero.

    Index 0 is the point of M, index k ≥ 1 the k-th coordinate pair of N.
    """
    def check(a, b, p):
        pts = [tuple(a)] + _pairs(b)
        return all(abs(det3(*(pts[k] for k in triple))) >= DELTA for triple in triples)
    return check


def coords_apart(*pairs):
    """Differences of first coordinates of listed points stay away from zero."""
    def check(a, b, p):
        pts = [tuple(a)] + _pairs(b)
        return all(abs(pts[u][0] - pts[v][0]) >= DELTA for u, v in pairs)
    return check


# -- two sets, three components --------------------------------------------------

def tri_two_additive(a, b, p):
    return a + b


def tri_two_heisenberg(a, b, p):
    s = a[0] + b[0]
    return [a[1] - b[1], s * a[1] + a[2] + b[2], s * b[1] + a[2] + b[2]]


def _tri_two_tail(a, b):
    s = a[0] + b[0]
    return [s * a[2], s * b[2]]


def tri_two_log(a, b, p):
    s = a[0] + b[0]
    return [s**2 * np.exp(2.0 * (a[1] + b[1]) / s), *_tri_two_tail(a, b)]


def tri_two_ratio(a, b, p):
    return [(a[0] + b[0]) / (a[1] + b[1]), *_tri_two_tail(a, b)]


def tri_two_product(a, b, p):
    return [(a[0] + b[0]) * (a[1] + b[1]), *_tri_two_tail(a, b)]


def tri_two_shift(a, b, p):
    return [a[1] + b[1], *_tri_two_tail(a, b)]


def tri_two_power(a, b, p):
    return [abs(a[0] + b[0]) ** p["p"] / (a[1] + b[1]), *_tri_two_tail(a, b)]


def tri_two_polar(a, b, p):
    s, t = a[0] + b[0], a[1] + b[1]
    angle = np.arctan(t / s)
    return [s**2 + t**2, a[2] + angle, b[2] + angle]


def tri_two_helmholtz(a, b, p):
    s, t = a[0] + b[0], a[1] + b[1]
    angle = np.arctan(t / s)
    return [(s**2 + t**2) * np.exp(2.0 * p["gamma"] * angle), a[2] + angle, b[2] + angle]


def _two_sphere_cos(a, b):
    return np.sin(a[1]) * np.sin(b[1]) * np.cos(a[0] + b[0]) + np.cos(a[1]) * np.cos(b[1])


def _two_sphere_nums(a, b):
    s = np.sin(a[0] + b[0])
    return s * np.sin(a[1]), s * np.sin(b[1])


def tri_two_sphere(a, b, p):
    c = _two_sphere_cos(a, b)
    num_a, num_b = _two_sphere_nums(a, b)
    root = np.sqrt(1.0 - c**2)
    return [c, a[2] + np.arcsin(num_b / root), b[2] + np.arcsin(num_a / root)]


two_sphere_safe = arcsin_safe(
    _two_sphere_cos,
    lambda a, b: _two_sphere_nums(a, b)[0],
    lambda a, b: _two_sphere_nums(a, b)[1],
)


def tri_two_cubic(a, b, p):
    s = a[0] + b[0]
    return [s * a[1] * b[1], a[2] + 1.0 / (s * a[1] ** 2), b[2] + 1.0 / (s * b[1] ** 2)]


# -- two sets, three components, quasigroup form -------------------------------------

def tq_additive(a, b, p):
    return a - b


def tq_heisenberg(a, b, p):
    d = a[0] - b[0]
    return [d, a[1] - b[1], d * b[1] + a[2] - b[2]]


def tq_log(a, b, p):
    d = a[0] - b[0]
    return [d * b[2], (a[1] - b[1] - d * np.log(b[2])) * b[2], a[2] / b[2]]


def tq_ratio(a, b, p):
    return [(a[0] - b[0]) * b[2], (a[1] - b[1]) * b[2], a[2] / b[2]]


def tq_product(a, b, p):
    return [(a[0] - b[0]) * b[2], (a[1] - b[1]) / b[2], a[2] / b[2]]


def tq_shift(a, b, p):
    return [(a[0] - b[0]) * b[2], a[1] - b[1], a[2] / b[2]]


def tq_power(a, b, p):
    return [(a[0] - b[0]) * b[2], (a[1] - b[1]) * b[2] ** p["p"], a[2] / b[2]]


def tq_polar(a, b, p):
    d1, d2 = a[0] - b[0], a[1] - b[1]
    c, s = np.cos(b[2]), np.sin(b[2])
    return [d1 * c - d2 * s, d1 * s + d2 * c, a[2] - b[2]]


def tq_helmholtz(a, b, p):
    d1, d2 = a[0] - b[0], a[1] - b[1]
    c, s = np.cos(b[2]), np.sin(b[2])
    scale = np.exp(-b[2])
    return [(d1 * c - d2 * s) * scale, (d1 * s + d2 * c) * scale, a[2] - b[2]]


def tq_sphere(a, b, p):
    s_b = np.sqrt(1.0 - b[0] ** 2 - b[1] ** 2 - b[2] ** 2)
    s_a = np.sqrt(1.0 - a[0] ** 2 - a[1] ** 2 - a[2] ** 2)
    return [
        a[0] * s_b - b[0] * s_a + a[1] * b[2] - a[2] * b[1],
        a[1] * s_b - b[1] * s_a + a[2] * b[0] - a[0] * b[2],
        a[2] * s_b - b[2] * s_a + a[0] * b[1] - a[1] * b[0],
    ]


def inside_unit_ball(a, b, p) -> bool:
    return (
        a[0] ** 2 + a[1] ** 2 + a[2] ** 2 <= 1.0 - DELTA
        and b[0] ** 2 + b[1] ** 2 + b[2] ** 2 <= 1.0 - DELTA
    )


def tq_cubic(a, b, p):
    d = a[0] - b[0]
    r = 1.0 - d * b[2] * b[1] ** 2
    return [d * b[1] ** 2 / r, r * a[1] / b[1], a[2] - b[2] * b[1] ** 2 / (r * a[1] ** 2)]


def cubic_quasigroup_safe(a, b, p) -> bool:
    r = 1.0 - (a[0] - b[0]) * b[2] * b[1] ** 2
    return abs(r) >= DELTA and abs(a[1]) >= DELTA and abs(b[1]) >= DELTA


def third_positive(a, b, p) -> bool:
    return a[2] >= DELTA and b[2] >= DELTA
