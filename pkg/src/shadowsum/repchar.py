"""Weight multiplicities, characters, Casimir values and conjugate weights."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DenominatorZero, NotDominant
from .liealg import (
    RootSystem,
    add,
    bilinear,
    dominant_representative,
    is_dominant,
    root_coefficients,
    scale,
    sub,
)


@dataclass(frozen=True, eq=False)
class WeightSystem:
    highest: tuple
    mults: dict

    @property
    def dimension(self) -> int:
        return sum(self.mults.values())

    @property
    def dominant(self) -> dict:
        return {mu: m for mu, m in self.mults.items() if is_dominant(mu)}

    def __getitem__(self, mu):
        return self.mults.get(tuple(mu), 0)


def _check_dominant(lam):
    if not is_dominant(lam) or any(int(c) != c for c in lam):
        raise NotDominant(f"{tuple(lam)} is not a dominant integral weight", weight=list(lam))


def weyl_dimension(rs: RootSystem, lam) -> int:
    lam_rho = add(lam, rs.rho)
    num = Fraction(1)
    for beta in rs.positive_roots:
        num *= bilinear(rs, lam_rho, beta) / bilinear(rs, rs.rho, beta)
    assert num.denominator == 1
    return int(num)


def _dominant_weights_below(rs: RootSystem, lam):
    # dominant weights of V(lam): saturated, reachable from lam by subtracting positive roots
    seen = {lam}
    order = [lam]
    i = 0
    while i < len(order):
        mu = order[i]
        i += 1
        for beta in rs.positive_roots:
            nu = sub(mu, beta)
            if is_dominant(nu) and nu not in seen:
                seen.add(nu)
                order.append(nu)
    return seen


def weight_multiplicities(rs: RootSystem, lam) -> WeightSystem:
    """All weights of the irreducible representation with highest weight ``lam``.

    Freudenthal's recursion over dominant weights in order of depth below
    ``lam``, expanded to full Weyl orbits.
    """
    lam = tuple(int(c) for c in lam) if is_dominant(lam) else tuple(lam)
    _check_dominant(lam)
    return _weight_multiplicities(rs, lam)


@lru_cache(maxsize=None)
def _weight_multiplicities(rs: RootSystem, lam) -> WeightSystem:
    dominant = _dominant_weights_below(rs, lam)
    lam_rho = add(lam, rs.rho)
    norm_top = bilinear(rs, lam_rho, lam_rho)

    def depth(mu):
        return sum(root_coefficients(rs, sub(lam, mu)))

    mult = {lam: 1}
    for mu in sorted(dominant, key=depth):
        if mu == lam:
            continue
        acc = Fraction(0)
        for beta in rs.positive_roots:
            j = 1
            while True:
                nu = add(mu, scale(j, beta))
                dom, _ = dominant_representative(rs, nu)
                if dom not in dominant:
                    break
                m = mult.get(dom, 0)
                if m:
                    acc += m * bilinear(rs, nu, beta)
                j += 1
        mu_rho = add(mu, rs.rho)
        denom = norm_top - bilinear(rs, mu_rho, mu_rho)
        value = 2 * acc / denom
        assert value.denominator == 1, (lam, mu, value)
        if value:
            mult[mu] = int(value)

    full = {}
    for mu, m in mult.items():
        for w in rs.weyl:
            full[w(mu)] = m
    ordered = dict(sorted(full.items(), key=lambda kv: (-sum(kv[0]), tuple(-c for c in kv[0]))))
    return WeightSystem(highest=lam, mults=ordered)


def casimir(rs: RootSystem, lam) -> Fraction:
    """Second Casimir value ``(lam, lam + 2 rho)``."""
    return bilinear(rs, lam, add(lam, scale(2, rs.rho)))


def conjugates(rs: RootSystem, lam):
    """Return ``(lam_bar, lam_star)``: ``-w0 lam`` and the rho-shifted conjugate."""
    _check_dominant(lam)
    w0 = rs.longest_element
    bar = tuple(-c for c in w0(lam))
    shifted = tuple(-c for c in w0(add(lam, rs.rho)))
    star = sub(shifted, rs.rho)
    return bar, star


def _phase_pairings(rs: RootSystem, weights, b):
    # (mu, b) for many mu at once, in floating point from exact b
    W = np.array(weights, dtype=float)
    bv = rs.gram_float @ np.array([float(x) for x in b])
    return W @ bv


def character_eval(rs: RootSystem, lam, b, method: str = "sum") -> complex:
    """``chi_lam(exp(b)) = sum_mu m_lam(mu) exp(2 pi i (mu, b))``.

    ``method="weyl"`` evaluates the Weyl quotient ``A(lam+rho)(b) / A(rho)(b)``
    instead and raises DenominatorZero where ``b`` is singular.
    """
    if method == "sum":
        ws = weight_multiplicities(rs, lam)
        mus = list(ws.mults)
        ms = np.array(list(ws.mults.values()), dtype=float)
        phases = _phase_pairings(rs, mus, b)
        val = np.sum(ms * np.exp(2j * np.pi * phases))
        return complex(val)
    if method == "weyl":
        _check_dominant(lam)
        if _singular(rs, b):
            raise DenominatorZero(f"delta({tuple(b)}) vanishes", b=[str(x) for x in b])
        return alternating_sum(rs, add(lam, rs.rho), b) / alternating_sum(rs, rs.rho, b)
    raise ValueError(f"unknown method {method!r}")


def _singular(rs: RootSystem, b) -> bool:
    # delta(b) = prod 2i sin(pi (beta, b)) vanishes iff some (beta, b) is an integer
    return any(bilinear(rs, beta, b).denominator == 1 for beta in rs.positive_roots)


def alternating_sum(rs: RootSystem, lam, b) -> complex:
    """``A(lam)(b) = sum_w sgn(w) exp(2 pi i (lam, w b))``."""
    total = 0j
    lam_vec = np.array([float(x) for x in lam]) @ rs.gram_float
    for w in rs.weyl:
        wb = np.array([float(x) for x in w(b)])
        total += w.sign * cmath.exp(2j * cmath.pi * float(lam_vec @ wb))
    return total
