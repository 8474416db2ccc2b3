"""Leading coefficients of joint moments of CUE characteristic polynomials.

The public functions use the convention

    a(k, M, n1, n2) = lim N^-(k^2 + 2 M n1 + 2 (k-M) n2)
                      * E |Lambda^(n1)(1)|^(2M) |Lambda^(n2)(1)|^(2k-2M)

and ``b`` likewise with ``Z_A`` in place of ``Lambda_A``.  The three
evaluation routes are

``besselDet``
    Outer sum over partition-vector multiplicities, inner term a derivative
    of a determinant of (normalised) Bessel series.
``combinatorial``
    Same outer sum, inner term the fully expanded factorial/Vandermonde sum.
``alternate``
    Sum over bounded and exact compositions of the derivative orders, one
    block per factor of the integrand.

The evaluators underneath (``_lambda_*``, ``_z_*``) are written with the
opposite split: ``mp`` factors carry ``n2`` and ``k - mp`` carry ``n1``.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

from .combin import (
    compositions_bounded,
    compositions_exact,
    vandermonde_integer,
    weighted_partition_vectors,
)
from .exactnum import binomial, factorial, format_rational, multinomial
from .powerseries import bessel_det_derivative

__all__ = [
    "Route",
    "Family",
    "MomentSpec",
    "CoeffResult",
    "RouteDisagreement",
    "prop31_value",
    "prop32_value",
    "prop31_explicit",
    "prop32_explicit",
    "a_coeff_bessel",
    "a_coeff_combinatorial",
    "a_coeff_alt",
    "b_coeff_bessel",
    "b_coeff_combinatorial",
    "b_coeff_alt",
    "a_coeff",
    "b_coeff",
    "coeff",
    "cue_moment_constant",
]


class Route(str, enum.Enum):
    BESSEL = "besselDet"
    COMBINATORIAL = "combinatorial"
    ALTERNATE = "alternate"


class Family(str, enum.Enum):
    A = "a"  # characteristic polynomial Lambda_A
    B = "b"  # Hardy Z analogue Z_A


@dataclass(frozen=True)
class MomentSpec:
    k: int
    M: int
    n1: int
    n2: int

    def __post_init__(self):
        for name in ("k", "M", "n1", "n2"):
            if not isinstance(getattr(self, name), int):
                raise TypeError(f"{name} must be an integer")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if not 0 <= self.M <= self.k:
            raise ValueError(f"M must lie in [0, k], got M={self.M}, k={self.k}")
        if self.n1 < 0 or self.n2 < 0:
            raise ValueError("derivative orders must be non-negative")

    @property
    def exponent(self) -> int:
        """Power of ``N`` in the leading term."""
        return self.k**2 + 2 * self.M * self.n1 + 2 * (self.k - self.M) * self.n2

    def swapped(self) -> "MomentSpec":
        """The same moment with the two derivative factors relabelled."""
        return MomentSpec(self.k, self.k - self.M, self.n2, self.n1)


@dataclass(frozen=True)
class CoeffResult:
    value: Fraction
    exponent: int
    route: Route
    spec: MomentSpec
    family: Family = Family.A
    routes_checked: tuple = field(default=(), compare=False)
    seconds: float = field(default=0.0, compare=False)

    def to_record(self) -> dict:
        return {
            "k": self.spec.k,
            "M": self.spec.M,
            "n1": self.spec.n1,
            "n2": self.spec.n2,
            "family": self.family.value,
            "value": format_rational(self.value),
            "exponent": self.exponent,
            "route": self.route.value,
        }


class RouteDisagreement(RuntimeError):
    """Two evaluation routes produced different values for one coefficient."""

    def __init__(self, spec: MomentSpec, family: Family, values: dict):
        self.spec = spec
        self.family = family
        self.values = dict(values)
        shown = ", ".join(f"{r.value}={format_rational(v)}" for r, v in self.values.items())
        super().__init__(f"routes disagree for {family.value}{spec}: {shown}")


# ---------------------------------------------------------------------------
# building blocks: the inner contour integrals, normalised by N^(k^2 + sum s m_s)


def _normalise_m(m: Sequence[int]) -> tuple[int, ...]:
    m = tuple(int(x) for x in m)
    if any(x < 0 for x in m):
        raise ValueError(f"negative entry in {m}")
    while len(m) > 1 and m[-1] == 0:
        m = m[:-1]
    return m or (0,)


def _shift_distribution(k: int, m: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Row shifts ``nu_i = sum_{s>=2} s h_si`` with summed multinomial weights."""
    dist = {(0,) * k: 1}
    for s, ms in enumerate(m[1:], start=2):
        if ms == 0:
            continue
        comps = [(h, multinomial(ms, h)) for h in compositions_exact(ms, k)]
        nxt: dict[tuple[int, ...], int] = {}
        for nu, w in dist.items():
            for h, wh in comps:
                key = tuple(a + s * b for a, b in zip(nu, h))
                nxt[key] = nxt.get(key, 0) + w * wh
        dist = nxt
    return dist


def _prop_series(k: int, m: tuple[int, ...], rate: Fraction) -> Fraction:
    m1 = m[0]
    weighted = sum(s * ms for s, ms in enumerate(m[1:], start=2))
    half_power_times2 = k * k + weighted
    total = Fraction(0)
    for nu, w in _shift_distribution(k, m).items():
        total += w * bessel_det_derivative(k, nu, half_power_times2, rate, m1)
    return total


@lru_cache(maxsize=None)
def _prop31_cached(k: int, m: tuple[int, ...]) -> Fraction:
    return _prop_series(k, m, Fraction(-1, 2))


@lru_cache(maxsize=None)
def _prop32_cached(k: int, m: tuple[int, ...]) -> Fraction:
    return _prop_series(k, m, Fraction(-1))


def prop31_value(k: int, m: Sequence[int]) -> Fraction:
    """Bessel-determinant value of the ``e^{-x/2}`` building block.

    Returns the sum over row distributions of ``m_2, ..., m_n`` of
    multinomial weights times ``(d/dx)^{m_1}`` of the normalised
    ``e^{-x/2} x^{-p} det(I_{nu_i+i+j-1}(2 sqrt x))`` at ``x = 0``.
    This is the ``N``-free part of the integral with the factor
    ``(sum 1/w_l - N/2)^{m_1} prod_{s>=2} (sum 1/w_l^s)^{m_s}``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    return _prop31_cached(k, _normalise_m(m))


def prop32_value(k: int, m: Sequence[int]) -> Fraction:
    """As :func:`prop31_value` with ``e^{-x}`` (the ``sum 1/w_l - N`` integral)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return _prop32_cached(k, _normalise_m(m))


def _closed_form_sum(k: int, dist: dict[tuple[int, ...], int]) -> Fraction:
    """``sum_c w_c prod_i 1/(2k+c_i-i)! prod_{i<j} (c_j-c_i-j+i)`` with integer weights."""
    if not dist:
        return Fraction(0)
    cmax = max(max(c) for c in dist)
    top = [factorial(2 * k - i + cmax) for i in range(1, k + 1)]
    den = 1
    for t in top:
        den *= t
    total = 0
    for c, w in dist.items():
        if not w:
            continue
        vand = vandermonde_integer([ci - i for i, ci in enumerate(c, start=1)])
        if not vand:
            continue
        scale = 1
        for i, ci in enumerate(c, start=1):
            scale *= top[i - 1] // factorial(2 * k - i + ci)
        total += w * vand * scale
    return Fraction(total, den)


def _prop_explicit(k: int, m: tuple[int, ...], base: Fraction) -> Fraction:
    # base**h10 with base = -1/q is written as (-1)**h10 q**(m1-h10) / q**m1
    q = base.denominator
    if abs(base.numerator) != 1:
        raise ValueError("base must be +-1/q")
    sgn = base.numerator
    m1 = m[0]
    dist: dict[tuple[int, ...], int] = {}
    for h1 in compositions_bounded(m1, k):
        h10 = m1 - sum(h1)
        w = multinomial(m1, (h10,) + h1) * sgn**h10 * q ** (m1 - h10)
        dist[h1] = w
    for s, ms in enumerate(m[1:], start=2):
        if ms == 0:
            continue
        comps = [(h, multinomial(ms, h)) for h in compositions_exact(ms, k)]
        nxt: dict[tuple[int, ...], int] = {}
        for c, w in dist.items():
            for h, wh in comps:
                key = tuple(a + s * b for a, b in zip(c, h))
                nxt[key] = nxt.get(key, 0) + w * wh
        dist = nxt
    return _closed_form_sum(k, dist) / q**m1


def prop31_explicit(k: int, m: Sequence[int]) -> Fraction:
    """Fully expanded form of :func:`prop31_value` (weight ``(-1/2)^{m_10}``)."""
    return _prop31_explicit_cached(k, _normalise_m(m))


def prop32_explicit(k: int, m: Sequence[int]) -> Fraction:
    """Fully expanded form of :func:`prop32_value` (weight ``(-1)^{m_10}``)."""
    return _prop32_explicit_cached(k, _normalise_m(m))


@lru_cache(maxsize=None)
def _prop31_explicit_cached(k, m):
    return _prop_explicit(k, m, Fraction(-1, 2))


@lru_cache(maxsize=None)
def _prop32_explicit_cached(k, m):
    return _prop_explicit(k, m, Fraction(-1))


# ---------------------------------------------------------------------------
# outer sums over partition-vector multiplicities


def _pv_data(n: int):
    """Partition vectors of ``n`` with ``a! * prod_j j^{a_j}`` for each."""
    out = []
    for a in weighted_partition_vectors(n):
        d = 1
        for j, aj in enumerate(a, start=1):
            d *= factorial(aj) * j**aj
        out.append((a, d))
    return out


def _vec_sum(n: int, vectors, mult) -> tuple[int, ...]:
    return tuple(sum(l * a[j] for (a, _), l in zip(vectors, mult)) for j in range(n))


def _lambda_side(n: int, copies: int) -> dict[tuple[int, ...], Fraction]:
    """One derivative order of the characteristic-polynomial outer sum.

    Sums over ``l, l'`` (compositions of ``copies`` over the partition
    vectors of ``n``) and ``t``; keys are the contributions to
    ``(V_1, ..., V_n)`` with ``t`` already subtracted from ``V_1``.
    """
    pv = _pv_data(n)
    out: dict[tuple[int, ...], Fraction] = {}
    nfact = Fraction(factorial(n)) ** (2 * copies)
    if n == 0:
        return {(): nfact}
    P = len(pv)
    for l in compositions_exact(copies, P):
        wl = multinomial(copies, l)
        vl = _vec_sum(n, pv, l)
        dl = 1
        for (_, d), li in zip(pv, l):
            dl *= d**li
        for lp in compositions_exact(copies, P):
            w = wl * multinomial(copies, lp)
            vlp = _vec_sum(n, pv, lp)
            den = dl
            for (_, d), li in zip(pv, lp):
                den *= d**li
            base = nfact * w / den
            v = [x + y for x, y in zip(vl, vlp)]
            a1 = vlp[0]
            for t in range(a1 + 1):
                key = (v[0] - t,) + tuple(v[1:])
                out[key] = out.get(key, 0) + base * binomial(a1, t)
    return out


def _z_side(n: int, copies: int) -> dict[tuple[int, ...], Fraction]:
    """One derivative order of the Z-function outer sum (compositions of ``copies``)."""
    pv = _pv_data(n)
    nfact = Fraction(factorial(n)) ** copies
    if n == 0:
        return {(): nfact}
    out: dict[tuple[int, ...], Fraction] = {}
    for l in compositions_exact(copies, len(pv)):
        den = 1
        for (_, d), li in zip(pv, l):
            den *= d**li
        key = _vec_sum(n, pv, l)
        out[key] = out.get(key, 0) + nfact * multinomial(copies, l) / den
    return out


def _combine_sides(left: dict, right: dict) -> dict[tuple[int, ...], Fraction]:
    out: dict[tuple[int, ...], Fraction] = {}
    for va, wa in left.items():
        for vb, wb in right.items():
            n = max(len(va), len(vb), 1)
            va_ = va + (0,) * (n - len(va))
            vb_ = vb + (0,) * (n - len(vb))
            key = _normalise_m([x + y for x, y in zip(va_, vb_)])
            out[key] = out.get(key, 0) + wa * wb
    return out


def _outer_sign(k: int, mp: int, n1: int, n2: int) -> int:
    return -1 if ((k - mp) * n1 + mp * n2 + k * (k - 1) // 2) % 2 else 1


@lru_cache(maxsize=None)
def _lambda_outer(k, mp, n1, n2):
    return _combine_sides(_lambda_side(n1, k - mp), _lambda_side(n2, mp))


@lru_cache(maxsize=None)
def _z_outer(k, mp, n1, n2):
    return _combine_sides(_z_side(n1, 2 * (k - mp)), _z_side(n2, 2 * mp))


def _outer_eval(weights: dict, inner: Callable, k: int) -> Fraction:
    total = Fraction(0)
    for v, w in weights.items():
        if w:
            total += w * inner(k, v)
    return total


def _lambda_det(k, mp, n1, n2, inner):
    """Characteristic-polynomial moment, ``n1 >= n2``, split ``(k-mp, mp)``."""
    if n1 < n2:
        raise ValueError("the determinant routes need n1 >= n2")
    return _outer_sign(k, mp, n1, n2) * _outer_eval(_lambda_outer(k, mp, n1, n2), inner, k)


def _z_det(k, mp, n1, n2, inner):
    if n1 < n2:
        raise ValueError("the determinant routes need n1 >= n2")
    return _outer_sign(k, mp, n1, n2) * _outer_eval(_z_outer(k, mp, n1, n2), inner, k)


# ---------------------------------------------------------------------------
# composition-block route


def _convolve(dist: dict, block: list) -> dict:
    out: dict[tuple[int, ...], int] = {}
    get = out.get
    for w_vec, w in dist.items():
        for b_vec, wb in block:
            key = tuple(x + y for x, y in zip(w_vec, b_vec))
            out[key] = get(key, 0) + w * wb
    return out


def _blocks_sum(k: int, blocks: Iterable[list]) -> Fraction:
    dist = {(0,) * k: 1}
    for block in blocks:
        dist = _convolve(dist, block)
    return _closed_form_sum(k, dist)


def _lambda_block(k: int, n: int) -> list:
    # s bounded, h exact; weight (-1)^{|s|} (n!)^2 / (n-|s|)!
    agg: dict[tuple[int, ...], int] = {}
    hs = list(compositions_exact(n, k))
    for s in compositions_bounded(n, k):
        ss = sum(s)
        w = (-1) ** ss * factorial(n) ** 2 // factorial(n - ss)
        for h in hs:
            key = tuple(a + b for a, b in zip(s, h))
            agg[key] = agg.get(key, 0) + w
    return [(v, w) for v, w in agg.items() if w]


def _z_block(k: int, n: int) -> list:
    # weight n! (-1/2)^{n-|s|} / (n-|s|)!, scaled by 2^n to stay integral
    out = []
    for s in compositions_bounded(n, k):
        ss = sum(s)
        w = (-1) ** (n - ss) * 2**ss * factorial(n) // factorial(n - ss)
        out.append((s, w))
    return out


def _lambda_alt(k, mp, n1, n2) -> Fraction:
    blocks = [_lambda_block(k, n1)] * (k - mp) + [_lambda_block(k, n2)] * mp
    sign = -1 if (k * (k - 1) // 2) % 2 else 1
    return sign * _blocks_sum(k, blocks)


def _z_alt(k, mp, n1, n2) -> Fraction:
    c1, c2 = 2 * (k - mp), 2 * mp
    blocks = [_z_block(k, n1)] * c1 + [_z_block(k, n2)] * c2
    scale = Fraction(1, 2 ** (n1 * c1 + n2 * c2))
    return _outer_sign(k, mp, n1, n2) * scale * _blocks_sum(k, blocks)


# ---------------------------------------------------------------------------
# public evaluators in the (2M on n1) convention


def _as_spec(spec, *args) -> MomentSpec:
    if isinstance(spec, MomentSpec):
        return spec
    return MomentSpec(spec, *args)


def _det_route(spec: MomentSpec, evaluator, inner) -> Fraction:
    # private evaluators take the split (k-mp on n1, mp on n2) with n1 >= n2
    if spec.n1 >= spec.n2:
        return evaluator(spec.k, spec.k - spec.M, spec.n1, spec.n2, inner)
    sw = spec.swapped()
    return evaluator(sw.k, sw.k - sw.M, sw.n1, sw.n2, inner)


def _result(value, spec, route, family) -> CoeffResult:
    return CoeffResult(value=value, exponent=spec.exponent, route=route, spec=spec, family=family)


def a_coeff_bessel(spec, *args) -> CoeffResult:
    spec = _as_spec(spec, *args)
    return _result(_det_route(spec, _lambda_det, prop32_value), spec, Route.BESSEL, Family.A)


def a_coeff_combinatorial(spec, *args) -> CoeffResult:
    spec = _as_spec(spec, *args)
    return _result(_det_route(spec, _lambda_det, prop32_explicit), spec, Route.COMBINATORIAL, Family.A)


def a_coeff_alt(spec, *args) -> CoeffResult:
    spec = _as_spec(spec, *args)
    value = _lambda_alt(spec.k, spec.k - spec.M, spec.n1, spec.n2)
    return _result(value, spec, Route.ALTERNATE, Family.A)


def b_coeff_bessel(spec, *args) -> CoeffResult:
    spec = _as_spec(spec, *args)
    return _result(_det_route(spec, _z_det, prop31_value), spec, Route.BESSEL, Family.B)


def b_coeff_combinatorial(spec, *args) -> CoeffResult:
    spec = _as_spec(spec, *args)
    return _result(_det_route(spec, _z_det, prop31_explicit), spec, Route.COMBINATORIAL, Family.B)


def b_coeff_alt(spec, *args) -> CoeffResult:
    spec = _as_spec(spec, *args)
    value = _z_alt(spec.k, spec.k - spec.M, spec.n1, spec.n2)
    return _result(value, spec, Route.ALTERNATE, Family.B)


_ROUTES = {
    Family.A: {
        Route.BESSEL: a_coeff_bessel,
        Route.COMBINATORIAL: a_coeff_combinatorial,
        Route.ALTERNATE: a_coeff_alt,
    },
    Family.B: {
        Route.BESSEL: b_coeff_bessel,
        Route.COMBINATORIAL: b_coeff_combinatorial,
        Route.ALTERNATE: b_coeff_alt,
    },
}


def preferred_route(spec: MomentSpec) -> Route:
    """Cheapest route for a single evaluation.

    The composition-block route is quick for small ``k`` whatever the
    derivative orders; the determinant route wins once ``k`` grows and the
    orders stay small.
    """
    if spec.k <= 2 or max(spec.n1, spec.n2) >= 4:
        return Route.ALTERNATE
    return Route.BESSEL


def coeff(family, spec, *args, route: Optional[Route] = None, cross_check: bool = True,
          routes: Optional[Sequence[Route]] = None) -> CoeffResult:
    """Evaluate one coefficient.

    With ``cross_check`` (the default) every route in ``routes`` (all three
    unless given) is evaluated and :class:`RouteDisagreement` is raised if
    any two differ.  Otherwise only ``route`` (or the preferred one) runs.
    """
    family = Family(family)
    spec = _as_spec(spec, *args)
    table = _ROUTES[family]
    start = time.perf_counter()
    if not cross_check:
        r = Route(route) if route is not None else preferred_route(spec)
        res = table[r](spec)
        value, checked, primary = res.value, (r,), r
    else:
        chosen = [Route(r) for r in (routes or list(Route))]
        values = {r: table[r](spec).value for r in chosen}
        if len(set(values.values())) != 1:
            raise RouteDisagreement(spec, family, values)
        primary = Route(route) if route is not None else chosen[0]
        value, checked = values[chosen[0]], tuple(chosen)
    if value <= 0:
        raise ArithmeticError(f"non-positive moment coefficient {value} for {family.value}{spec}")
    return CoeffResult(value=value, exponent=spec.exponent, route=primary, spec=spec, family=family,
                       routes_checked=checked, seconds=time.perf_counter() - start)


def a_coeff(spec, *args, **kwargs) -> CoeffResult:
    return coeff(Family.A, spec, *args, **kwargs)


def b_coeff(spec, *args, **kwargs) -> CoeffResult:
    return coeff(Family.B, spec, *args, **kwargs)


def cue_moment_constant(k: int) -> Fraction:
    """``prod_{j<k} j!/(j+k)!``, the leading coefficient of ``E|Lambda(1)|^{2k}``."""
    out = Fraction(1)
    for j in range(k):
        out *= Fraction(factorial(j), factorial(j + k))
    return out
