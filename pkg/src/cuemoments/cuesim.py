"""Haar-random unitary sampling and Monte Carlo joint moments.

Samples are stored as eigenphases only.  Derivatives of
``Lambda_A(s) = prod_n (1 - s e^{-i theta_n})`` at ``s = 1`` are read off
the polynomial coefficients; the roots are multiplied in Leja order, which
keeps the partial products well scaled (a sorted or arbitrary order loses
all accuracy by ``N ~ 256``).
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .exactnum import binomial
from .momentcoeffs import Family, MomentSpec

__all__ = [
    "EigenphaseSample",
    "MCReport",
    "sample_cue",
    "sample_cue_batch",
    "haar_unitary",
    "lambda_derivative",
    "z_derivative",
    "secular_coefficients",
    "mc_moment",
    "exact_k1_second_moment",
    "exact_k1_z_second_moment",
    "substream_seed",
]

CHUNK = 512  # samples per random substream


@dataclass(frozen=True)
class EigenphaseSample:
    phases: np.ndarray

    def __post_init__(self):
        ph = np.asarray(self.phases, dtype=float)
        if ph.ndim != 1 or not np.all(np.isfinite(ph)):
            raise ValueError("phases must be a finite 1-d array")
        object.__setattr__(self, "phases", ph)

    @property
    def N(self) -> int:
        return len(self.phases)


@dataclass(frozen=True)
class MCReport:
    spec: MomentSpec
    family: str
    N: int
    samples: int
    estimate: float
    stderr: float
    seed: int

    def to_json(self) -> str:
        """JSON object with sorted keys; reals written with 17 significant digits."""
        d = asdict(self)
        d["spec"] = asdict(self.spec)
        parts = []
        for key in sorted(d):
            val = d[key]
            text = format(val, ".17g") if isinstance(val, float) else json.dumps(val, sort_keys=True)
            parts.append(f"{json.dumps(key)}: {text}")
        return "{" + ", ".join(parts) + "}"


def substream_seed(seed: int, index: int) -> np.random.SeedSequence:
    """Seed of sample chunk ``index``: ``SeedSequence(seed, spawn_key=(index,))``.

    Hashing the pair keeps chunks of neighbouring seeds independent
    (``seed + index`` would make chunk ``c + 1`` of seed ``s`` equal to
    chunk ``c`` of seed ``s + 1``).
    """
    if seed < 0 or index < 0:
        raise ValueError("seed and chunk index must be non-negative")
    return np.random.SeedSequence(seed, spawn_key=(index,))


def haar_unitary(N: int, rng: np.random.Generator, batch: Optional[int] = None) -> np.ndarray:
    """Haar unitary matrices (Ginibre -> QR -> phase fix of ``R``'s diagonal)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    shape = (N, N) if batch is None else (batch, N, N)
    z = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    return q * (d / np.abs(d))[..., None, :]


def sample_cue_batch(N: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``(count, N)`` array of eigenphases in ``[0, 2 pi)``."""
    u = haar_unitary(N, rng, batch=count)
    ev = np.linalg.eigvals(u)
    return np.mod(np.angle(ev), 2 * np.pi)


def sample_cue(N: int, rng: np.random.Generator) -> EigenphaseSample:
    return EigenphaseSample(sample_cue_batch(N, 1, rng)[0])


def _leja_order(z: np.ndarray) -> np.ndarray:
    """Leja ordering along the last axis (batched)."""
    batch, N = z.shape
    rows = np.arange(batch)
    idx = np.empty((batch, N), dtype=np.intp)
    used = np.zeros((batch, N), dtype=bool)
    first = np.zeros(batch, dtype=np.intp)
    idx[:, 0] = first
    used[rows, first] = True
    with np.errstate(divide="ignore"):
        logd = np.log(np.abs(z - z[rows, first][:, None]))
    for step in range(1, N):
        cand = np.where(used, -np.inf, logd)
        nxt = np.argmax(cand, axis=1)
        idx[:, step] = nxt
        used[rows, nxt] = True
        with np.errstate(divide="ignore"):
            logd = logd + np.log(np.abs(z - z[rows, nxt][:, None]))
    return idx


def secular_coefficients(phases: np.ndarray) -> np.ndarray:
    """Coefficients ``c_0..c_N`` of ``prod (1 - s e^{-i theta})``; batched on axis 0."""
    ph = np.atleast_2d(np.asarray(phases, dtype=float))
    z = np.exp(-1j * ph)
    batch, N = z.shape
    z = np.take_along_axis(z, _leja_order(z), axis=1)
    c = np.zeros((batch, N + 1), dtype=complex)
    c[:, 0] = 1.0
    for i in range(N):
        c[:, 1 : i + 2] = c[:, 1 : i + 2] - z[:, i : i + 1] * c[:, : i + 1]
    return c


def _falling_weights(N: int, n: int) -> np.ndarray:
    j = np.arange(N + 1, dtype=float)
    w = np.ones(N + 1)
    for r in range(n):
        w *= j - r
    return w


def _lambda_derivs(coeffs: np.ndarray, orders) -> dict[int, np.ndarray]:
    N = coeffs.shape[1] - 1
    return {n: coeffs @ _falling_weights(N, n) for n in orders}


def _z_derivs(phases: np.ndarray, coeffs: np.ndarray, orders) -> dict[int, np.ndarray]:
    N = coeffs.shape[1] - 1
    top = max(orders)
    lam = _lambda_derivs(coeffs, range(top + 1))
    # (d/ds)^m s^{-N/2} at s = 1
    f = [1.0]
    for r in range(top):
        f.append(f[-1] * (-N / 2 - r))
    prefactor = np.exp(-1j * math.pi * N / 2) * np.exp(0.5j * phases.sum(axis=1))
    out = {}
    for n in orders:
        acc = np.zeros(coeffs.shape[0], dtype=complex)
        for m in range(n + 1):
            acc = acc + binomial(n, m) * f[m] * lam[n - m]
        out[n] = prefactor * acc
    return out


def lambda_derivative(sample: EigenphaseSample, n: int) -> complex:
    """``Lambda_A^{(n)}(1)``"""
    if n < 0:
        raise ValueError("n must be >= 0")
    c = secular_coefficients(sample.phases)
    return complex(_lambda_derivs(c, [n])[n][0])


def z_derivative(sample: EigenphaseSample, n: int) -> complex:
    """``Z_A^{(n)}(1)``, with the phases exactly as stored (no reduction mod 2 pi)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    ph = np.atleast_2d(sample.phases)
    c = secular_coefficients(ph)
    return complex(_z_derivs(ph, c, [n])[n][0])


def _chunk_values(args) -> np.ndarray:
    family, spec, N, count, seed = args
    rng = np.random.default_rng(seed)
    ph = sample_cue_batch(N, count, rng)
    c = secular_coefficients(ph)
    orders = sorted({spec.n1, spec.n2})
    if family == Family.A:
        d = _lambda_derivs(c, orders)
    else:
        d = _z_derivs(ph, c, orders)
    x1 = np.abs(d[spec.n1] / float(N) ** spec.n1) ** 2
    x2 = np.abs(d[spec.n2] / float(N) ** spec.n2) ** 2
    # N-scaling split per factor to keep magnitudes moderate
    return x1**spec.M * x2 ** (spec.k - spec.M) / float(N) ** (spec.k**2)


def mc_moment(spec: MomentSpec, N: int, samples: int, seed: int, family="a",
              workers: int = 1) -> MCReport:
    """Monte Carlo estimate of the normalised joint moment.

    The sample budget is cut into fixed chunks of :data:`CHUNK` samples;
    chunk ``c`` draws from ``default_rng(substream_seed(seed, c))``.  The
    result therefore depends on ``seed`` and ``samples`` only, not on
    ``workers``.
    """
    family = Family(family)
    if samples < 2:
        raise ValueError("need at least 2 samples for a standard error")
    if N < 1:
        raise ValueError("N must be >= 1")
    jobs = []
    done = 0
    c = 0
    while done < samples:
        count = min(CHUNK, samples - done)
        jobs.append((family, spec, N, count, substream_seed(seed, c)))
        done += count
        c += 1
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_chunk_values, jobs))
    else:
        parts = [_chunk_values(j) for j in jobs]
    vals = np.concatenate(parts)
    est = float(vals.mean())
    se = float(vals.std(ddof=1) / math.sqrt(len(vals)))
    return MCReport(spec=spec, family=family.value, N=N, samples=samples, estimate=est,
                    stderr=se, seed=seed)


def exact_k1_second_moment(N: int, n: int) -> int:
    """``E|Lambda^{(n)}(1)|^2 = sum_{j=n}^N (j!/(j-n)!)^2`` (secular coefficients are orthonormal)."""
    if N < 1 or n < 0:
        raise ValueError("need N >= 1, n >= 0")
    total = 0
    for j in range(n, N + 1):
        f = 1
        for r in range(n):
            f *= j - r
        total += f * f
    return total


def exact_k1_z_second_moment(N: int, n: int) -> Fraction:
    """``E|Z^{(n)}(1)|^2`` for the Z analogue, by Leibniz plus orthonormality."""
    if N < 1 or n < 0:
        raise ValueError("need N >= 1, n >= 0")
    f = [Fraction(1)]
    for r in range(n):
        f.append(f[-1] * (Fraction(-N, 2) - r))
    total = Fraction(0)
    for j in range(N + 1):
        coef = Fraction(0)
        for m in range(n + 1):
            r = n - m
            ff = 1
            for t in range(r):
                ff *= j - t
            coef += binomial(n, m) * f[m] * ff
        total += coef * coef
    return total
