"""Batch kernels for the verification sweeps.

Each kernel has a numba loop implementation and a vectorized numpy
implementation.  ``THEODORUS_JIT=0`` in the environment (or numba being
unavailable) selects numpy; individual calls may also pass ``backend=``.
Kernels work on int64 and refuse inputs where that could overflow; the exact
scalar routines in :mod:`theodorus.numeris` and :mod:`theodorus.criterion`
have no such limit.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(func=None, **kwargs):
        if func is not None:
            return func

        def wrapper(f):
            return f

        return wrapper


def _env_flag(name: str, default: str = "1") -> bool:
    return os.environ.get(name, default).strip().lower() not in ("0", "false", "no", "off", "")


JIT_ENABLED = HAVE_NUMBA and _env_flag("THEODORUS_JIT")
DEFAULT_BACKEND = "numba" if JIT_ENABLED else "numpy"
BACKENDS = ("numba", "numpy") if HAVE_NUMBA else ("numpy",)

# sqrt via float64 is off by at most one below 2**52; keep margin.
MAX_SAFE = 1 << 50
# odd q with q*q < 2**63
MAX_SAFE_SQUARE_ROOT = 3_037_000_499

# Outcome codes shared with criterion.Outcome.
IRRATIONAL_BY_RESIDUE = 0
RATIONAL_PERFECT_SQUARE = 1
IRRATIONAL_NONSQUARE_RESIDUE_ONE = 2
INCONCLUSIVE_BY_CRITERION = 3
IRRATIONAL_BY_EVEN_REDUCTION = 4
REDUCED_TO_ODD = 5


def _backend(backend: str | None) -> str:
    backend = backend or DEFAULT_BACKEND
    if backend not in BACKENDS:
        raise ValueError(f"unknown or unavailable backend {backend!r}; have {BACKENDS}")
    return backend


def _as_int64(ns, limit: int = MAX_SAFE) -> np.ndarray:
    arr = np.ascontiguousarray(ns, dtype=np.int64)
    if arr.size and (arr.min() < 0 or arr.max() >= limit):
        raise ValueError(f"batch kernels need 0 <= n < {limit}")
    return arr


# --- integer square root ------------------------------------------------


@njit(cache=True)
def _isqrt_scalar_jit(n):
    r = np.int64(np.sqrt(np.float64(n)))
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


@njit(cache=True)
def _isqrt_jit(ns, out):
    for i in range(ns.shape[0]):
        out[i] = _isqrt_scalar_jit(ns[i])


def _isqrt_numpy(ns: np.ndarray) -> np.ndarray:
    r = np.floor(np.sqrt(ns.astype(np.float64))).astype(np.int64)
    r -= (r * r > ns).astype(np.int64)
    r += ((r + 1) * (r + 1) <= ns).astype(np.int64)
    return r


def isqrt_array(ns, backend: str | None = None) -> np.ndarray:
    """Floor square roots of a batch of non-negative integers."""
    ns = _as_int64(ns)
    if _backend(backend) == "numba":
        out = np.empty_like(ns)
        _isqrt_jit(ns, out)
        return out
    return _isqrt_numpy(ns)


# --- odd squares modulo 8 -----------------------------------------------


@njit(cache=True)
def _odd_square_counterexample_jit(lo, hi):
    q = lo if lo % 2 == 1 else lo + 1
    while q <= hi:
        if (q * q) % 8 != 1:
            return q
        q += 2
    return 0


def _odd_square_counterexample_numpy(lo: int, hi: int) -> int:
    qs = np.arange(lo | 1, hi + 1, 2, dtype=np.int64)
    bad = np.flatnonzero((qs * qs) % 8 != 1)
    return int(qs[bad[0]]) if bad.size else 0


def odd_square_counterexample(lo: int, hi: int, backend: str | None = None) -> int:
    """First odd q in [lo, hi] with q**2 mod 8 != 1, or 0 if there is none."""
    if lo < 1 or hi >= MAX_SAFE_SQUARE_ROOT:
        raise ValueError(f"batch range must satisfy 1 <= lo, hi < {MAX_SAFE_SQUARE_ROOT}")
    if hi < lo:
        return 0
    if _backend(backend) == "numba":
        return int(_odd_square_counterexample_jit(np.int64(lo), np.int64(hi)))
    return _odd_square_counterexample_numpy(lo, hi)


# --- squarefree decomposition -------------------------------------------


@njit(cache=True)
def _squarefree_jit(ns, s_out, v_out):
    for i in range(ns.shape[0]):
        rest = ns[i]
        s = 1
        v = 1
        p = 2
        while p * p * p <= rest:
            if rest % p == 0:
                e = 0
                while rest % p == 0:
                    rest //= p
                    e += 1
                for _ in range(e // 2):
                    s *= p
                if e % 2 == 1:
                    v *= p
            p += 1 if p == 2 else 2
        r = _isqrt_scalar_jit(rest)
        if r * r == rest:
            s *= r
        else:
            v *= rest
        s_out[i] = s
        v_out[i] = v


def _squarefree_numpy(ns: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    rest = ns.copy()
    s = np.ones_like(ns)
    v = np.ones_like(ns)
    p = 2
    while p * p * p <= int(rest.max(initial=0)):
        active = (p * p * p <= rest) & (rest % p == 0)
        parity = np.zeros_like(ns)
        while active.any():
            rest[active] //= p
            parity[active] ^= 1
            # every second factor of p moves into the square part
            s[active & (parity == 0)] *= p
            active = active & (rest % p == 0)
        v[parity == 1] *= p
        p += 1 if p == 2 else 2
    r = _isqrt_numpy(rest)
    square = r * r == rest
    s[square] *= r[square]
    v[~square] *= rest[~square]
    return s, v


def squarefree_array(ns, backend: str | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Batch version of ``squarefree_decompose``: arrays ``s``, ``v`` with n = s*s*v."""
    ns = _as_int64(ns)
    if ns.size and ns.min() < 1:
        raise ValueError("squarefree decomposition needs n >= 1")
    if _backend(backend) == "numba":
        s = np.empty_like(ns)
        v = np.empty_like(ns)
        _squarefree_jit(ns, s, v)
        return s, v
    return _squarefree_numpy(ns)


# --- irrationality classification ---------------------------------------


@njit(cache=True)
def _classify_jit(ns, full_oracle, codes, values):
    for i in range(ns.shape[0]):
        n = ns[i]
        u = 0
        v = n
        while v % 2 == 0:
            v //= 2
            u += 1
        if u % 2 == 1:
            codes[i] = IRRATIONAL_BY_EVEN_REDUCTION
            values[i] = 0
            continue
        mult = np.int64(1) << (u // 2)
        res = v % 8
        if res != 1:
            codes[i] = IRRATIONAL_BY_RESIDUE
            values[i] = res
            continue
        r = _isqrt_scalar_jit(v)
        if r * r == v:
            codes[i] = RATIONAL_PERFECT_SQUARE
            values[i] = r * mult
        elif full_oracle:
            codes[i] = IRRATIONAL_NONSQUARE_RESIDUE_ONE
            values[i] = 0
        else:
            codes[i] = INCONCLUSIVE_BY_CRITERION
            values[i] = 0


def _classify_numpy(ns: np.ndarray, full_oracle: bool) -> tuple[np.ndarray, np.ndarray]:
    low = ns & -ns
    u = np.log2(low.astype(np.float64)).astype(np.int64)  # exact on powers of two
    v = ns >> u
    mult = np.left_shift(np.int64(1), u // 2)
    res = v % 8
    r = _isqrt_numpy(v)
    square = r * r == v
    codes = np.where(
        square,
        RATIONAL_PERFECT_SQUARE,
        IRRATIONAL_NONSQUARE_RESIDUE_ONE if full_oracle else INCONCLUSIVE_BY_CRITERION,
    ).astype(np.int8)
    values = np.where(square, r * mult, 0)
    codes[res != 1] = IRRATIONAL_BY_RESIDUE
    values = np.where(res != 1, res, values)
    odd_u = (u % 2) == 1
    codes[odd_u] = IRRATIONAL_BY_EVEN_REDUCTION
    values[odd_u] = 0
    return codes, values.astype(np.int64)


def classify_array(
    ns, full_oracle: bool = True, backend: str | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Outcome code and evidence value (residue or root) for each n >= 1.

    Mirrors ``criterion.decide_sqrt`` with even reduction resolved; used to
    cross-check the scalar pipeline over large ranges.
    """
    ns = _as_int64(ns)
    if ns.size and ns.min() < 1:
        raise ValueError("classification needs n >= 1")
    if _backend(backend) == "numba":
        codes = np.empty(ns.shape[0], dtype=np.int8)
        values = np.empty_like(ns)
        _classify_jit(ns, full_oracle, codes, values)
        return codes, values
    return _classify_numpy(ns, full_oracle)
