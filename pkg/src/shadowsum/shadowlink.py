"""Colored links without double points in Sigma x S^1 and their shadow state sum.

Under the no-crossing and null-homology assumptions only combinatorial data
enters: faces with Euler characteristics, which side of each loop every face
lies on, and the gleams.  Two input models are accepted.  A nesting forest on
the sphere derives everything from the parent relation; an explicit model
states faces, Euler characteristics and sides directly (any genus).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import (
    ColorNotInAlcove,
    DuplicateId,
    EulerMismatch,
    ForestGenusMismatch,
    ParseError,
    SideInconsistent,
)
from .modular import ModularData
from .qracah import racah_products

ROOT_FACE = "Y0"


@dataclass(frozen=True)
class Loop:
    id: str
    color: tuple
    winding: int = 1
    inside_is_plus: bool = True
    parent: str | None = None
    plus_face: str | None = None
    minus_face: str | None = None


@dataclass(frozen=True)
class Vertical:
    at: str
    color: tuple


@dataclass(frozen=True)
class ColoredLink:
    genus: int
    loops: tuple
    model: str = "forest"
    vertical: tuple = ()
    faces: tuple = ()  # explicit model: ((id, euler), ...)
    sides: dict = field(default_factory=dict)  # explicit model: {loop: {face: +-1}}
    base_face: str | None = None
    algebra: str | None = None
    level: int | None = None


@dataclass(frozen=True, eq=False)
class Shadow:
    genus: int
    faces: tuple
    euler: dict
    base_face: str
    loops: tuple  # loop ids, in input order
    color: dict
    winding: dict
    plus_face: dict
    minus_face: dict
    side: dict  # (face, loop) -> +-1
    gleam: dict
    vertical: tuple = ()  # ((face, color), ...)

    @property
    def n_loops(self) -> int:
        return len(self.loops)

    def with_base_face(self, face) -> "Shadow":
        if face not in self.euler:
            raise ParseError(f"unknown face {face!r}", face=face)
        return Shadow(**{**self.__dict__, "base_face": face})

    def colors_used(self):
        return [self.color[j] for j in self.loops] + [c for _, c in self.vertical]


# --------------------------------------------------------------------------
# parsing


def _int_vector(value, what):
    if not isinstance(value, (list, tuple)) or not all(
        isinstance(c, int) and not isinstance(c, bool) for c in value
    ):
        raise ParseError(f"{what} must be an array of integers, got {value!r}")
    return tuple(value)


def _require(obj, key, kind, what):
    if key not in obj:
        raise ParseError(f"{what} is missing {key!r}")
    value = obj[key]
    if kind is int and (not isinstance(value, int) or isinstance(value, bool)):
        raise ParseError(f"{what}.{key} must be an integer, got {value!r}")
    if kind is bool and not isinstance(value, bool):
        raise ParseError(f"{what}.{key} must be a boolean, got {value!r}")
    return value


def parse_link(doc) -> ColoredLink:
    """Build a ColoredLink from a link document (dict or JSON text)."""
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("link document must be a JSON object")

    surface = doc.get("surface", {"genus": 0})
    if not isinstance(surface, dict):
        raise ParseError("surface must be an object")
    genus = _require(surface, "genus", int, "surface") if "genus" in surface else 0
    if genus < 0:
        raise ParseError(f"genus must be nonnegative, got {genus}")
    model = doc.get("model", "forest")
    if model not in ("forest", "explicit"):
        raise ParseError(f"model must be 'forest' or 'explicit', got {model!r}")
    if model == "forest" and genus != 0:
        raise ForestGenusMismatch(
            "the nesting-forest model describes links on the sphere only", genus=genus
        )

    raw_loops = doc.get("loops", [])
    if not isinstance(raw_loops, list):
        raise ParseError("loops must be an array")
    loops = []
    seen = set()
    for i, obj in enumerate(raw_loops):
        what = f"loops[{i}]"
        if not isinstance(obj, dict):
            raise ParseError(f"{what} must be an object")
        lid = str(_require(obj, "id", object, what))
        if lid in seen:
            raise DuplicateId(f"duplicate loop id {lid!r}", id=lid)
        seen.add(lid)
        color = _int_vector(_require(obj, "color", list, what), f"{what}.color")
        winding = _require(obj, "winding", int, what) if "winding" in obj else 1
        if model == "forest":
            inside = _require(obj, "inside_is_plus", bool, what) if "inside_is_plus" in obj else True
            parent = obj.get("parent")
            loops.append(Loop(lid, color, winding, inside, None if parent is None else str(parent)))
        else:
            plus = str(_require(obj, "plus_face", object, what))
            minus = str(_require(obj, "minus_face", object, what))
            loops.append(Loop(lid, color, winding, True, None, plus, minus))

    faces = ()
    sides = {}
    if model == "explicit":
        raw_faces = doc.get("faces")
        if not isinstance(raw_faces, list):
            raise ParseError("explicit model requires a faces array")
        fl = []
        for i, obj in enumerate(raw_faces):
            if not isinstance(obj, dict):
                raise ParseError(f"faces[{i}] must be an object")
            fid = str(_require(obj, "id", object, f"faces[{i}]"))
            if fid in {f for f, _ in fl}:
                raise DuplicateId(f"duplicate face id {fid!r}", id=fid)
            fl.append((fid, _require(obj, "euler", int, f"faces[{i}]")))
        faces = tuple(fl)
        raw_sides = doc.get("sides", {})
        if not isinstance(raw_sides, dict):
            raise ParseError("sides must be an object keyed by loop id")
        for lid, row in raw_sides.items():
            if not isinstance(row, dict):
                raise ParseError(f"sides[{lid!r}] must be an object keyed by face id")
            sides[str(lid)] = {str(f): int(v) for f, v in row.items()}
    else:
        for lp in loops:
            if lp.parent is not None and lp.parent not in seen:
                raise ParseError(f"loop {lp.id!r} has unknown parent {lp.parent!r}")
            if lp.id == ROOT_FACE:
                raise DuplicateId(f"loop id {ROOT_FACE!r} collides with the outer face id")

    raw_vertical = doc.get("vertical", [])
    if not isinstance(raw_vertical, list):
        raise ParseError("vertical must be an array")
    vertical = []
    for i, obj in enumerate(raw_vertical):
        what = f"vertical[{i}]"
        if not isinstance(obj, dict):
            raise ParseError(f"{what} must be an object")
        if "winding" in obj and obj["winding"] != 1:
            raise ParseError("vertical loops must wind once around S^1", winding=obj["winding"])
        at = str(_require(obj, "at", object, what))
        vertical.append(Vertical(at, _int_vector(_require(obj, "color", list, what), f"{what}.color")))

    level = doc.get("level")
    if level is not None and (not isinstance(level, int) or isinstance(level, bool)):
        raise ParseError(f"level must be an integer, got {level!r}")
    base = doc.get("base_face")
    return ColoredLink(
        genus=genus,
        loops=tuple(loops),
        model=model,
        vertical=tuple(vertical),
        faces=faces,
        sides=sides,
        base_face=None if base is None else str(base),
        algebra=doc.get("algebra"),
        level=level,
    )


# --------------------------------------------------------------------------
# shadow derivation


def _gleams(faces, loops, plus, minus, side, winding):
    gleam = {f: 0 for f in faces}
    for j in loops:
        for f in {plus[j], minus[j]}:
            gleam[f] += winding[j] * side[(f, j)]
    return gleam


def _forest_shadow(link: ColoredLink):
    by_id = {lp.id: lp for lp in link.loops}
    children = {lp.id: [] for lp in link.loops}
    roots = []
    for lp in link.loops:
        (children[lp.parent] if lp.parent is not None else roots).append(lp.id)

    # nesting must be acyclic
    order, stack = [], [(r, 0) for r in reversed(roots)]
    while stack:
        lid, depth = stack.pop()
        order.append(lid)
        stack.extend((c, depth + 1) for c in reversed(children[lid]))
    if len(order) != len(link.loops):
        raise ParseError("loop parent relation contains a cycle")

    faces = (ROOT_FACE,) + tuple(order)
    euler = {ROOT_FACE: 2 - len(roots)}
    for lid in order:
        euler[lid] = 1 - len(children[lid])

    def enclosing(lid):
        p = by_id[lid].parent
        return ROOT_FACE if p is None else p

    descendants = {}
    for lid in reversed(order):
        d = {lid}
        for c in children[lid]:
            d |= descendants[c]
        descendants[lid] = d

    plus, minus, side = {}, {}, {}
    for lid in order:
        lp = by_id[lid]
        inside, outside = lid, enclosing(lid)
        plus[lid], minus[lid] = (inside, outside) if lp.inside_is_plus else (outside, inside)
        for f in faces:
            in_region = f in descendants[lid]
            side[(f, lid)] = 1 if in_region == lp.inside_is_plus else -1
    return faces, euler, plus, minus, side


def derive_shadow(link: ColoredLink) -> Shadow:
    loops = tuple(lp.id for lp in link.loops)
    color = {lp.id: lp.color for lp in link.loops}
    winding = {lp.id: lp.winding for lp in link.loops}

    if link.model == "forest":
        faces, euler, plus, minus, side = _forest_shadow(link)
    else:
        faces = tuple(f for f, _ in link.faces)
        euler = dict(link.faces)
        if not faces:
            faces, euler = (ROOT_FACE,), {ROOT_FACE: 2 - 2 * link.genus}
        plus = {lp.id: lp.plus_face for lp in link.loops}
        minus = {lp.id: lp.minus_face for lp in link.loops}
        side = {}
        for j in loops:
            for f in (plus[j], minus[j]):
                if f not in euler:
                    raise ParseError(f"loop {j!r} refers to unknown face {f!r}")
            if plus[j] == minus[j]:
                raise SideInconsistent(f"loop {j!r} has the same face on both sides", loop=j)
            row = link.sides.get(j, {})
            for f in faces:
                if f not in row:
                    raise SideInconsistent(f"side of face {f!r} w.r.t. loop {j!r} missing")
                if row[f] not in (1, -1):
                    raise SideInconsistent(f"side values must be +1 or -1, got {row[f]!r}")
                side[(f, j)] = row[f]

    for j in loops:
        if side[(plus[j], j)] != 1 or side[(minus[j], j)] != -1:
            raise SideInconsistent(f"plus/minus faces of loop {j!r} contradict the side data", loop=j)
        for i in loops:
            if i != j and side[(plus[j], i)] != side[(minus[j], i)]:
                raise SideInconsistent(
                    f"faces adjacent to loop {j!r} lie on different sides of loop {i!r}",
                    loop=j,
                    other=i,
                )

    total = sum(euler.values())
    if total != 2 - 2 * link.genus:
        raise EulerMismatch(
            f"Euler characteristics sum to {total}, expected {2 - 2 * link.genus}",
            total=total,
            genus=link.genus,
        )

    gleam = _gleams(faces, loops, plus, minus, side, winding)

    vertical = []
    for v in link.vertical:
        if v.at not in euler:
            raise ParseError(f"vertical point refers to unknown face or loop {v.at!r}")
        vertical.append((v.at, v.color))

    base = link.base_face if link.base_face is not None else faces[0]
    if base not in euler:
        raise ParseError(f"unknown base face {base!r}")
    return Shadow(
        genus=link.genus,
        faces=faces,
        euler=euler,
        base_face=base,
        loops=loops,
        color=color,
        winding=winding,
        plus_face=plus,
        minus_face=minus,
        side=side,
        gleam=gleam,
        vertical=tuple(vertical),
    )


def empty_shadow(genus: int = 0, vertical=()) -> Shadow:
    return Shadow(
        genus=genus,
        faces=(ROOT_FACE,),
        euler={ROOT_FACE: 2 - 2 * genus},
        base_face=ROOT_FACE,
        loops=(),
        color={},
        winding={},
        plus_face={},
        minus_face={},
        side={},
        gleam={ROOT_FACE: 0},
        vertical=tuple((ROOT_FACE, tuple(c)) for c in vertical),
    )


def delete_loop(sh: Shadow, loop) -> Shadow:
    """Remove ``loop`` and merge its two adjacent faces into the plus face."""
    keep, gone = sh.plus_face[loop], sh.minus_face[loop]
    faces = tuple(f for f in sh.faces if f != gone)
    euler = {f: sh.euler[f] for f in faces}
    euler[keep] += sh.euler[gone]
    loops = tuple(j for j in sh.loops if j != loop)

    def relabel(f):
        return keep if f == gone else f

    plus = {j: relabel(sh.plus_face[j]) for j in loops}
    minus = {j: relabel(sh.minus_face[j]) for j in loops}
    side = {(f, j): v for (f, j), v in sh.side.items() if j != loop and f != gone}
    winding = {j: sh.winding[j] for j in loops}
    return Shadow(
        genus=sh.genus,
        faces=faces,
        euler=euler,
        base_face=relabel(sh.base_face),
        loops=loops,
        color={j: sh.color[j] for j in loops},
        winding=winding,
        plus_face=plus,
        minus_face=minus,
        side=side,
        gleam=_gleams(faces, loops, plus, minus, side, winding),
        vertical=tuple((relabel(f), c) for f, c in sh.vertical),
    )


# --------------------------------------------------------------------------
# state sum


def check_colors(md: ModularData, sh: Shadow):
    for c in sh.colors_used():
        if tuple(c) not in md.position:
            raise ColorNotInAlcove(
                f"color {list(c)} is not in the level-{md.level} alcove of {md.rs}",
                color=list(c),
                level=md.level,
            )


def _fusion_matrix(md: ModularData, gamma, fusion: str = "racah") -> np.ndarray:
    # M[a, b] = N^{alcove[b]}_{gamma, alcove[a]}  (a: plus-face color, b: minus-face color)
    if fusion == "verlinde":
        g = md.index(gamma)
        return md.fusion_tensor[list(md.star), g, :].T.copy()
    if fusion != "racah":
        raise ValueError(f"unknown fusion source {fusion!r}")
    n = len(md.alcove)
    M = np.zeros((n, n), dtype=np.int64)
    for a, lam in enumerate(md.alcove):
        for beta, m in racah_products(md, gamma, lam).items():
            M[a, md.index(beta)] = m
    return M


def face_weights(md: ModularData, sh: Shadow) -> dict:
    """Per-face, per-color factor ``dim^chi * v^gleam * prod_vertical S_{gamma a}/S_{0 a}``."""
    dims = md.qdims
    out = {}
    for f in sh.faces:
        w = dims.astype(complex) ** sh.euler[f] * md.v ** sh.gleam[f]
        for face, c in sh.vertical:
            if face == f:
                w = w * md.s[md.index(c), :] / md.s[0, :]
        out[f] = w
    return out


def shadow_terms(md: ModularData, sh: Shadow, fusion: str = "racah"):
    """Yield ``(coloring, term)`` for every coloring with nonzero fusion factor.

    ``fusion="verlinde"`` uses floating Verlinde values instead of Racah
    integers; nothing is pruned in that case.
    """
    check_colors(md, sh)
    n = len(md.alcove)
    faces = sh.faces
    pos = {f: i for i, f in enumerate(faces)}
    weights = face_weights(md, sh)
    # loop constraints become checkable once the later of its two faces is colored
    checks = [[] for _ in faces]
    for j in sh.loops:
        p, m = pos[sh.plus_face[j]], pos[sh.minus_face[j]]
        checks[max(p, m)].append((p, m, _fusion_matrix(md, sh.color[j], fusion)))

    coloring = [0] * len(faces)
    exact = fusion == "racah"

    def rec(d, acc):
        if d == len(faces):
            yield tuple(coloring), acc
            return
        w = weights[faces[d]]
        for a in range(n):
            coloring[d] = a
            factor = w[a]
            for p, m, M in checks[d]:
                nf = M[coloring[p], coloring[m]]
                if exact and not nf:
                    factor = 0
                    break
                factor = factor * nf
            if exact and factor == 0:
                continue
            yield from rec(d + 1, acc * factor)

    yield from rec(0, 1 + 0j)


def _csum(values) -> complex:
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def shadow_state_sum(md: ModularData, sh: Shadow, fusion: str = "racah") -> complex:
    """``|X_L|``: sum over face colorings of dim, twist and fusion factors."""
    return _csum(t for _, t in shadow_terms(md, sh, fusion))


@lru_cache(maxsize=None)
def empty_state_sum(md: ModularData, genus: int) -> complex:
    return shadow_state_sum(md, empty_shadow(genus))


def wlo_shadow(md: ModularData, sh: Shadow) -> complex:
    return shadow_state_sum(md, sh) / empty_state_sum(md, sh.genus)


def vertical_only_wlo(md: ModularData, colors, genus: int = 0) -> complex:
    """Closed form for vertical loops only: ``sum_lam dim^(2-2g) prod S_{gamma lam}/S_{0 lam}`` over ``|X_empty|``."""
    terms = md.qdims.astype(complex) ** (2 - 2 * genus)
    for c in colors:
        terms = terms * md.s[md.index(c), :] / md.s[0, :]
    return _csum(terms) / empty_state_sum(md, genus)
