"""Exact root-system data for the simple Lie algebras A, B, C, D and G2.

Weights are tuples of Dynkin labels (coordinates in the fundamental-weight
basis).  Lattice weights use ``int`` entries, points of the rational span use
``fractions.Fraction``.  The invariant form is normalized so that long roots
have squared length 2, and with that convention ``(x, coroot_i) == x[i]``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial

import numpy as np
import sympy

from .errors import DimensionMismatch, UnsupportedAlgebra, WeylCapExceeded

DEFAULT_WEYL_CAP = 10_000

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4, "G": 2}


@dataclass(frozen=True)
class AlgebraSpec:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _MIN_RANK:
            raise UnsupportedAlgebra(f"unknown family {self.family!r}", family=self.family)
        if self.rank < _MIN_RANK[self.family] or (self.family == "G" and self.rank != 2):
            raise UnsupportedAlgebra(
                f"{self.family}{self.rank} is not an admissible family/rank pair",
                family=self.family,
                rank=self.rank,
            )

    @classmethod
    def parse(cls, text: str) -> "AlgebraSpec":
        m = re.fullmatch(r"\s*([A-Za-z])\s*(\d+)\s*", str(text))
        if m is None:
            raise UnsupportedAlgebra(f"cannot parse algebra spec {text!r}", text=str(text))
        return cls(m.group(1).upper(), int(m.group(2)))

    @property
    def weyl_order(self) -> int:
        r = self.rank
        return {
            "A": factorial(r + 1),
            "B": 2**r * factorial(r),
            "C": 2**r * factorial(r),
            "D": 2 ** (r - 1) * factorial(r),
            "G": 12,
        }[self.family]

    def __str__(self):
        return f"{self.family}{self.rank}"


def cartan_matrix(spec: AlgebraSpec):
    """Rows are the Dynkin labels of the simple roots: ``A[i][j] = (alpha_i, coroot_j)``.

    Bourbaki numbering; B has the short root last, C the long root last, G2
    has alpha_1 short.
    """
    r = spec.rank
    A = [[0] * r for _ in range(r)]
    for i in range(r):
        A[i][i] = 2
    if spec.family == "G":
        return [[2, -1], [-3, 2]]
    if spec.family == "D":
        for i in range(r - 2):
            A[i][i + 1] = A[i + 1][i] = -1
        A[r - 3][r - 1] = A[r - 1][r - 3] = -1
        return A
    for i in range(r - 1):
        A[i][i + 1] = A[i + 1][i] = -1
    if spec.family == "B":
        A[r - 2][r - 1] = -2
    elif spec.family == "C":
        A[r - 1][r - 2] = -2
    return A


def _half_lengths(spec: AlgebraSpec):
    # (alpha_i, alpha_i) / 2 with long roots of squared length 2
    r = spec.rank
    half = Fraction(1, 2)
    if spec.family == "B":
        return [Fraction(1)] * (r - 1) + [half]
    if spec.family == "C":
        return [half] * (r - 1) + [Fraction(1)]
    if spec.family == "G":
        return [Fraction(1, 3), Fraction(1)]
    return [Fraction(1)] * r


def _to_fraction_matrix(m):
    return [[Fraction(int(x.p), int(x.q)) for x in row] for row in m.tolist()]


@dataclass(frozen=True)
class WeylElement:
    """Weyl group element as an integer matrix on Dynkin-label column vectors."""

    matrix: tuple
    sign: int
    length: int

    def __call__(self, x):
        return tuple(sum(a * b for a, b in zip(row, x)) for row in self.matrix)


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][l] * b[l][j] for l in range(n)) for j in range(n)) for i in range(n)
    )


@dataclass(frozen=True, eq=False)
class RootSystem:
    spec: AlgebraSpec
    cartan: tuple
    gram: tuple
    simple_roots: tuple
    positive_roots: tuple
    rho: tuple
    theta: tuple
    dual_coxeter: int
    weyl: tuple
    lattice_index: int
    half_lengths: tuple = field(repr=False)

    @property
    def rank(self) -> int:
        return self.spec.rank

    @property
    def dim(self) -> int:
        return self.rank + 2 * len(self.positive_roots)

    @cached_property
    def gram_float(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.gram])

    @cached_property
    def gram_scale(self) -> int:
        """Least common denominator of the Gram entries."""
        d = 1
        for row in self.gram:
            for x in row:
                d = d * x.denominator // _gcd(d, x.denominator)
        return d

    @cached_property
    def gram_int(self) -> tuple:
        """``gram_scale * gram`` as an integer matrix."""
        D = self.gram_scale
        return tuple(tuple(int(x * D) for x in row) for row in self.gram)

    @cached_property
    def positive_root_pairings(self) -> np.ndarray:
        """Integer rows ``p`` with ``p @ x == gram_scale * (beta, x)`` for each positive root."""
        G = np.array(self.gram_int, dtype=np.int64)
        return np.array(self.positive_roots, dtype=np.int64) @ G

    @cached_property
    def longest_element(self) -> WeylElement:
        return max(self.weyl, key=lambda w: w.length)

    def __str__(self):
        return str(self.spec)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _check_dim(rs: RootSystem, *xs):
    for x in xs:
        if len(x) != rs.rank:
            raise DimensionMismatch(
                f"expected {rs.rank} coordinates, got {len(x)}", rank=rs.rank, got=len(x)
            )


def bilinear(rs: RootSystem, x, y):
    """Invariant form ``(x, y)`` on Dynkin-label vectors, exact."""
    _check_dim(rs, x, y)
    total = Fraction(0)
    for i, xi in enumerate(x):
        if xi:
            row = rs.gram[i]
            for j, yj in enumerate(y):
                if yj:
                    total += xi * row[j] * yj
    return total


def act(rs: RootSystem, w: WeylElement, x):
    return w(x)


def lattice_index(rs: RootSystem) -> int:
    return rs.lattice_index


def root_coefficients(rs: RootSystem, x):
    """Coordinates of ``x`` in the simple-root basis (exact)."""
    inv = _cartan_inverse(rs.spec)
    r = rs.rank
    # x = A^T c  =>  c = (A^T)^{-1} x
    return tuple(sum(inv[j][i] * x[j] for j in range(r)) for i in range(r))


_CARTAN_INV_CACHE: dict = {}


def _cartan_inverse(spec):
    if spec not in _CARTAN_INV_CACHE:
        A = sympy.Matrix(cartan_matrix(spec))
        _CARTAN_INV_CACHE[spec] = _to_fraction_matrix(A.inv())
    return _CARTAN_INV_CACHE[spec]


def _weyl_closure(cartan, cap):
    r = len(cartan)
    gens = []
    for i in range(r):
        m = [[int(a == b) for b in range(r)] for a in range(r)]
        for a in range(r):
            m[a][i] -= cartan[i][a]
        gens.append(tuple(tuple(row) for row in m))
    ident = tuple(tuple(int(a == b) for b in range(r)) for a in range(r))
    seen = {ident: 0}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = _matmul(s, g)
            if h not in seen:
                seen[h] = seen[g] + 1
                if len(seen) > cap:
                    raise WeylCapExceeded(f"Weyl group exceeds cap {cap}", cap=cap)
                queue.append(h)
    return tuple(WeylElement(m, (-1) ** n, n) for m, n in seen.items())


_CACHE: dict = {}


def build_root_system(spec, weyl_cap: int = DEFAULT_WEYL_CAP) -> RootSystem:
    """Build (and cache) the root system for ``spec`` (an AlgebraSpec or "A2"-style string)."""
    if not isinstance(spec, AlgebraSpec):
        spec = AlgebraSpec.parse(spec)
    if spec.weyl_order > weyl_cap:
        raise WeylCapExceeded(
            f"|W({spec})| = {spec.weyl_order} exceeds cap {weyl_cap}",
            order=spec.weyl_order,
            cap=weyl_cap,
        )
    key = spec
    if key in _CACHE:
        return _CACHE[key]

    r = spec.rank
    A = cartan_matrix(spec)
    half = _half_lengths(spec)
    inv = _cartan_inverse(spec)
    gram = tuple(tuple(inv[j][i] * half[i] for j in range(r)) for i in range(r))

    weyl = _weyl_closure(A, weyl_cap)
    simple = tuple(tuple(row) for row in A)

    roots = set()
    for w in weyl:
        for a in simple:
            roots.add(w(a))
    positive = []
    for beta in roots:
        c = tuple(sum(inv[j][i] * beta[j] for j in range(r)) for i in range(r))
        if all(ci >= 0 for ci in c):
            positive.append((sum(c), beta))
    positive.sort(key=lambda t: (t[0], tuple(-x for x in t[1])))
    positive_roots = tuple(beta for _, beta in positive)
    theta = positive[-1][1]

    rho = tuple([1] * r)
    det = sympy.Matrix(A).det()
    index = Fraction(int(det))
    for h in half:
        index /= h
    assert index.denominator == 1

    rs = RootSystem(
        spec=spec,
        cartan=simple,
        gram=gram,
        simple_roots=simple,
        positive_roots=positive_roots,
        rho=rho,
        theta=theta,
        dual_coxeter=0,
        weyl=weyl,
        lattice_index=int(index),
        half_lengths=tuple(half),
    )
    object.__setattr__(rs, "dual_coxeter", int(1 + bilinear(rs, theta, rho)))
    _CACHE[key] = rs
    return rs


def is_dominant(x) -> bool:
    return all(c >= 0 for c in x)


def add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x):
    return tuple(c * a for a in x)


def dominant_representative(rs: RootSystem, x):
    """Reflect ``x`` into the closed dominant chamber; returns ``(dominant, parity)``."""
    x = list(x)
    parity = 1
    while True:
        for i, xi in enumerate(x):
            if xi < 0:
                alpha = rs.simple_roots[i]
                x = [a - xi * b for a, b in zip(x, alpha)]
                parity = -parity
                break
        else:
            return tuple(x), parity
