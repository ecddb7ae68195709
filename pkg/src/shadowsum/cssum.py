"""Chern-Simons state sum in the torus gauge for links without double points.

The sum runs over ``alpha_0`` (a point of the scaled alcove) and one weight
``alpha_j`` of every loop's representation.  Each tuple determines a
step function ``B`` on the faces of the shadow; the summand is the product of
weight multiplicities, the regularized determinant, the framing phase and,
for vertical loops, a character value.  Nothing here uses fusion
coefficients or S-matrix ratios, so it is an independent route to ``|X_L|``.

Face values are kept scaled by ``h = k + c_G``: ``scaled[Y] = h * B(Y)`` is an
integer weight, and all wall tests are exact integer arithmetic.
"""

from __future__ import annotations

import cmath
import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import AlphaNotInSupport, BadAlpha0, InvalidField, ParseError
from .liealg import RootSystem, add, bilinear, sub
from .modular import ModularData, signed_qdim
from .qracah import _comarks, shifted_alcove_points
from .repchar import casimir, weight_multiplicities
from .shadowlink import Shadow, check_colors, empty_state_sum

THREADS_ENV = "SHADOWSUM_THREADS"


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return 1
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise ParseError(f"{THREADS_ENV} must be a positive integer, got {raw!r}", value=raw)
    return n


@dataclass(frozen=True, eq=False)
class FaceField:
    rs: RootSystem
    h: int
    alpha0: tuple
    alphas: dict
    scaled: dict  # face -> integer weight h * B(face)
    valid: bool

    @property
    def values(self) -> dict:
        """Exact face values ``B(face)`` as Fraction vectors."""
        return {f: tuple(Fraction(c, self.h) for c in x) for f, x in self.scaled.items()}

    def coloring(self) -> dict:
        """Area coloring ``phi(Y) = h * B(Y) - rho``."""
        return {f: sub(x, self.rs.rho) for f, x in self.scaled.items()}


def _shift_table(sh: Shadow):
    # shift[f][j] = 1_{R+_j}(f) - 1_{R+_j}(base)
    base = sh.base_face
    return {
        f: {j: int(sh.side[(f, j)] == 1) - int(sh.side[(base, j)] == 1) for j in sh.loops}
        for f in sh.faces
    }


def _is_regular(rs: RootSystem, x, h) -> bool:
    # x / h avoids every wall (beta, .) in Z
    D = rs.gram_scale
    vals = rs.positive_root_pairings @ np.asarray(x, dtype=np.int64)
    return bool(np.all(vals % (D * h) != 0))


def _in_open_alcove(rs: RootSystem, x, h) -> bool:
    return all(c > 0 for c in x) and sum(a * c for a, c in zip(x, _comarks(rs))) < h


def face_field(sh: Shadow, md: ModularData, alpha0, alphas) -> FaceField:
    rs = md.rs
    h = md.shifted_level
    alpha0 = tuple(alpha0)
    if not _in_open_alcove(rs, alpha0, h):
        raise BadAlpha0(
            f"alpha0 = {list(alpha0)} is not in rho + the level-{md.level} alcove",
            alpha0=list(alpha0),
        )
    if not isinstance(alphas, dict):
        alphas = dict(zip(sh.loops, alphas))
    alphas = {j: tuple(a) for j, a in alphas.items()}
    for j in sh.loops:
        ws = weight_multiplicities(rs, sh.color[j])
        if ws[alphas[j]] == 0:
            raise AlphaNotInSupport(
                f"{list(alphas[j])} is not a weight of {list(sh.color[j])}",
                loop=j,
                alpha=list(alphas[j]),
            )
    return _field(sh, rs, h, alpha0, alphas, _shift_table(sh))


def _field(sh, rs, h, alpha0, alphas, shift):
    scaled = {}
    for f in sh.faces:
        x = list(alpha0)
        for j in sh.loops:
            s = shift[f][j]
            if s:
                x = [a + s * b for a, b in zip(x, alphas[j])]
        scaled[f] = tuple(x)
    valid = all(_is_regular(rs, x, h) for x in scaled.values())
    return FaceField(rs, h, alpha0, alphas, scaled, valid)


def _sine_base(rs: RootSystem, x, h) -> float:
    # prod_beta 2 sin(pi (beta, x) / h), with (beta, x) reduced mod 2h exactly
    D = rs.gram_scale
    vals = rs.positive_root_pairings @ np.asarray(x, dtype=np.int64)
    red = np.mod(vals, 2 * D * h)
    return float(np.prod(2.0 * np.sin(np.pi * red / (D * h))))


def det_reg(sh: Shadow, field: FaceField) -> float:
    """``prod_Y prod_beta (2 sin(pi (beta, B(Y))))^chi(Y)`` with the signed base."""
    if not field.valid:
        raise InvalidField("face field is not regular", alpha0=list(field.alpha0))
    out = 1.0
    for f in sh.faces:
        out *= _sine_base(field.rs, field.scaled[f], field.h) ** sh.euler[f]
    return out


def _pairing_int(rs: RootSystem, x, y) -> int:
    G = rs.gram_int
    return sum(x[i] * G[i][j] * y[j] for i in range(len(x)) for j in range(len(y)) if x[i] and y[j])


def framing_phase(sh: Shadow, md: ModularData, field: FaceField) -> complex:
    """``prod_j exp(2 pi i w_j (alpha_j, (B(Y+_j) + B(Y-_j)) / 2))``."""
    if not field.valid:
        raise InvalidField("face field is not regular", alpha0=list(field.alpha0))
    rs = md.rs
    D, h = rs.gram_scale, field.h
    total = 0
    for j in sh.loops:
        mid = add(field.scaled[sh.plus_face[j]], field.scaled[sh.minus_face[j]])
        total += sh.winding[j] * _pairing_int(rs, field.alphas[j], mid)
    # phase = exp(pi i total / (D h)), reduced exactly
    return cmath.exp(1j * math.pi * (total % (2 * D * h)) / (D * h))


def _character_at(rs, gamma, x, h, cache):
    key = (gamma, x)
    if key not in cache:
        ws = weight_multiplicities(rs, gamma)
        D = rs.gram_scale
        G = np.array(rs.gram_int, dtype=np.int64)
        mus = np.array(list(ws.mults), dtype=np.int64)
        ms = np.array(list(ws.mults.values()), dtype=float)
        p = np.mod(mus @ G @ np.asarray(x, dtype=np.int64), D * h)
        cache[key] = complex(np.sum(ms * np.exp(2j * np.pi * p / (D * h))))
    return cache[key]


def vertical_factor(sh: Shadow, md: ModularData, field: FaceField, cache=None) -> complex:
    """``prod_vertical chi_gamma(exp(B(face)))``, by the multiplicity sum."""
    cache = {} if cache is None else cache
    out = 1 + 0j
    for f, gamma in sh.vertical:
        out *= _character_at(md.rs, tuple(gamma), field.scaled[f], field.h, cache)
    return out


def _loop_supports(md: ModularData, sh: Shadow):
    out = []
    for j in sh.loops:
        ws = weight_multiplicities(md.rs, sh.color[j])
        out.append(list(ws.mults.items()))
    return out


@lru_cache(maxsize=None)
def _caches(md: ModularData):
    # per-level memo tables: regularity and sine base keyed by scaled face value,
    # characters keyed by (color, scaled value); entries are pure functions of the key
    return {}, {}, {}


def cs_terms(sh: Shadow, md: ModularData, alpha0_list=None):
    """Yield ``(alpha0, alphas, summand)`` for every regular face field."""
    check_colors(md, sh)
    rs = md.rs
    h = md.shifted_level
    shift = _shift_table(sh)
    supports = _loop_supports(md, sh)
    if alpha0_list is None:
        alpha0_list = [add(lam, rs.rho) for lam in md.alcove]
    regular, sine, chars = _caches(md)
    for alpha0 in alpha0_list:
        for choice in itertools.product(*supports):
            alphas = {j: a for j, (a, _) in zip(sh.loops, choice)}
            field = _field_fast(sh, rs, h, alpha0, alphas, shift, regular)
            if field is None:
                continue
            mult = 1
            for _, m in choice:
                mult *= m
            det = 1.0
            for f in sh.faces:
                x = field[f]
                if x not in sine:
                    sine[x] = _sine_base(rs, x, h)
                det *= sine[x] ** sh.euler[f]
            ff = FaceField(rs, h, alpha0, alphas, field, True)
            term = mult * det * framing_phase(sh, md, ff) * vertical_factor(sh, md, ff, chars)
            yield alpha0, alphas, term


def _field_fast(sh, rs, h, alpha0, alphas, shift, regular):
    scaled = {}
    for f in sh.faces:
        x = list(alpha0)
        for j in sh.loops:
            s = shift[f][j]
            if s:
                a = alphas[j]
                x = [u + s * v for u, v in zip(x, a)]
        x = tuple(x)
        ok = regular.get(x)
        if ok is None:
            ok = regular[x] = _is_regular(rs, x, h)
        if not ok:
            return None
        scaled[f] = x
    return scaled


def _csum(values) -> complex:
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def cs_state_sum(sh: Shadow, md: ModularData, threads: int | None = None) -> complex:
    """Torus-gauge state sum ``St_CS(L)``, partitioned over ``alpha0``."""
    check_colors(md, sh)
    alpha0s = [add(lam, md.rs.rho) for lam in md.alcove]
    threads = thread_count() if threads is None else threads

    def part(a0):
        return [t for _, _, t in cs_terms(sh, md, [a0])]

    if threads > 1 and len(alpha0s) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(part, alpha0s))
    else:
        parts = [part(a0) for a0 in alpha0s]
    return _csum(t for p in parts for t in p)


def K_constant(md: ModularData) -> float:
    rs, h = md.rs, md.shifted_level
    out = 1.0
    for beta in rs.positive_roots:
        out *= 2 * math.sin(math.pi * float(bilinear(rs, beta, rs.rho)) / h)
    return out


@lru_cache(maxsize=None)
def c1_raw(md: ModularData, genus: int) -> float:
    """``C_1`` from its defining sum over ``P`` intersected with the scaled weight lattice."""
    rs, h = md.rs, md.shifted_level
    terms = []
    for lam in shifted_alcove_points(rs, md.level):
        x = add(lam, rs.rho)
        terms.append(_sine_base(rs, x, h) ** (2 - 2 * genus))
    return 1.0 / math.fsum(terms)


def constants(md: ModularData, genus: int, tol: float = 1e-9):
    """Return ``(K, C1)``; ``C1`` is checked against its raw defining sum."""
    K = K_constant(md)
    C1 = 1.0 / (K ** (2 - 2 * genus) * empty_state_sum(md, genus).real)
    raw = c1_raw(md, genus)
    if abs(C1 - raw) > tol * abs(raw):
        raise AssertionError(f"C1 mismatch: {C1} vs raw {raw}")
    return K, C1


def wlo_cs(sh: Shadow, md: ModularData) -> complex:
    """``WLO(L) = C_1 St_CS(L)`` with ``C_1`` from its raw definition."""
    return c1_raw(md, sh.genus) * cs_state_sum(sh, md)


# --------------------------------------------------------------------------
# identity checks


def extended_twist(md: ModularData, mu) -> complex:
    """``v_mu = exp(pi i C2(mu) / h) exp(-pi i c / 12)`` for any integer weight."""
    h = md.shifted_level
    return cmath.exp(1j * math.pi * float(casimir(md.rs, mu)) / h) * cmath.exp(
        -1j * math.pi * float(md.central_charge) / 12
    )


def field_identities(sh: Shadow, md: ModularData, field: FaceField) -> dict:
    """Step, determinant and framing identities for one regular field.

    Returns the exact step check and two float deviations.
    """
    phi = field.coloring()
    part_i = all(sub(phi[sh.plus_face[j]], phi[sh.minus_face[j]]) == field.alphas[j] for j in sh.loops)
    K = K_constant(md)
    rhs_ii = K ** (2 - 2 * sh.genus)
    for f in sh.faces:
        rhs_ii *= signed_qdim(md, phi[f]) ** sh.euler[f]
    lhs_ii = det_reg(sh, field)
    rhs_iii = 1 + 0j
    for f in sh.faces:
        rhs_iii *= extended_twist(md, phi[f]) ** sh.gleam[f]
    lhs_iii = framing_phase(sh, md, field)
    return {
        "i": part_i,
        "ii": abs(lhs_ii - rhs_ii) / max(1.0, abs(rhs_ii)),
        "iii": abs(lhs_iii - rhs_iii),
    }


def _box(rank, radius):
    return [tuple(v) for v in itertools.product(range(-radius, radius + 1), repeat=rank)]


def coloring_bijection(sh: Shadow, md: ModularData, radius: int | None = None) -> dict:
    """Exact enumeration of the maps ``(alpha_i) -> phi``.

    All ``alpha_0`` in a box and all ``alpha_j`` in a box are scanned.  Tuples
    whose field lies in ``P`` on every face must map bijectively onto
    alcove colorings; regular tuples must map injectively into colorings with
    values in ``Lambda cap (h t_reg - rho)``, with ``alpha`` recoverable from ``phi``.
    """
    rs, h = md.rs, md.shifted_level
    r = rs.rank
    radius = (md.level + 1) * max(1, max(rs.theta)) if radius is None else radius
    shift = _shift_table(sh)
    box0 = [x for x in _box(r, radius + 1) if all(c >= -1 for c in x)]
    boxj = _box(r, radius)
    alcove = set(md.alcove)

    images_p = set()
    images_reg = set()
    injective = True
    in_col_prime = True
    n_p = n_reg = 0
    for alpha0 in box0:
        for choice in itertools.product(boxj, repeat=len(sh.loops)):
            alphas = dict(zip(sh.loops, choice))
            field = _field(sh, rs, h, alpha0, alphas, shift)
            if not field.valid:
                continue
            phi = field.coloring()
            key = tuple(phi[f] for f in sh.faces)
            n_reg += 1
            if key in images_reg:
                injective = False
            images_reg.add(key)
            if not all(_is_regular(rs, add(v, rs.rho), h) for v in key):
                in_col_prime = False
            # recover alpha from phi
            if phi[sh.base_face] != sub(alpha0, rs.rho) or any(
                sub(phi[sh.plus_face[j]], phi[sh.minus_face[j]]) != alphas[j] for j in sh.loops
            ):
                injective = False
            if all(_in_open_alcove(rs, x, h) for x in field.scaled.values()):
                n_p += 1
                images_p.add(key)
    all_colorings = set(itertools.product(sorted(alcove), repeat=len(sh.faces)))
    onto = images_p == all_colorings
    return {
        "regular_tuples": n_reg,
        "alcove_tuples": n_p,
        "injective": injective,
        "image_in_col_prime": in_col_prime,
        "onto_alcove_colorings": onto,
        "bijective_onto_alcove": onto and n_p == len(all_colorings),
        "pass": injective and in_col_prime and onto and n_p == len(all_colorings),
    }
