"""The coefficient ring R = F_2[q,v]/(q^3) and finitely presented graded R-modules.

Gradings follow the ring: q has degree 1 and v has degree 4, so R has one
monomial q^(d mod 4) * v^(d div 4) in every degree d >= 0 with d mod 4 <= 2,
and nothing in degrees congruent to 3 mod 4.

A v-saturated graded ideal of R is generated by (v^i, q v^j, q^2 v^k) with
i >= j >= k >= 0; that normal form (an IdealTriple) is the canonical
representation here, with explicit monomial sets used only for validation
and display.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .errors import (
    InputError,
    InternalError,
    InvalidIdealError,
    InvalidModuleError,
    InvalidTripleError,
)
from .f2core import BitMatrix, rank


def r_dim(d: int) -> int:
    """Dimension of R in degree d."""
    return 1 if d >= 0 and d % 4 != 3 else 0


def r_dim_from(d: int, start: int) -> int:
    """Dimension of R shifted to start at ``start``, in degree d."""
    return r_dim(d - start)


@dataclass(frozen=True, order=True)
class RMonomial:
    """A monomial q^qpow * v^vpow with qpow in {0,1,2}."""

    qpow: int
    vpow: int

    def __post_init__(self) -> None:
        if self.qpow not in (0, 1, 2):
            raise InputError(f"qpow must be 0, 1 or 2, got {self.qpow}")
        if self.vpow < 0:
            raise InputError(f"vpow must be non-negative, got {self.vpow}")

    @property
    def degree(self) -> int:
        return self.qpow + 4 * self.vpow

    def times_q(self) -> Optional["RMonomial"]:
        """Multiply by q; None when the product is zero (q^3 = 0)."""
        if self.qpow == 2:
            return None
        return RMonomial(self.qpow + 1, self.vpow)

    def times_v(self) -> "RMonomial":
        return RMonomial(self.qpow, self.vpow + 1)

    def __str__(self) -> str:
        parts = []
        if self.qpow == 1:
            parts.append("q")
        elif self.qpow == 2:
            parts.append("q^2")
        if self.vpow == 1:
            parts.append("v")
        elif self.vpow > 1:
            parts.append(f"v^{self.vpow}")
        return "*".join(parts) if parts else "1"

    _PATTERN = re.compile(
        r"^(?:1|(?P<q>q(?:\^(?P<qe>[12]))?)?(?:\*?(?P<v>v(?:\^(?P<ve>\d+))?))?)$"
    )

    @classmethod
    def parse(cls, text: str) -> "RMonomial":
        s = text.strip()
        m = cls._PATTERN.match(s)
        if not m or not s:
            raise InputError(f"cannot parse monomial {text!r}")
        if s == "1":
            return cls(0, 0)
        if m.group("q") is None and m.group("v") is None:
            raise InputError(f"cannot parse monomial {text!r}")
        qpow = 0
        if m.group("q"):
            qpow = int(m.group("qe") or 1)
        vpow = 0
        if m.group("v"):
            vpow = int(m.group("ve") or 1)
        return cls(qpow, vpow)


def monomial_in_degree(d: int) -> Optional[RMonomial]:
    """The unique monomial of R in degree d, if any."""
    if r_dim(d) == 0:
        return None
    return RMonomial(d % 4, d // 4)


@dataclass(frozen=True, order=True)
class IdealTriple:
    """Exponents (i, j, k) of the generators (v^i, q v^j, q^2 v^k)."""

    i: int
    j: int
    k: int

    def __post_init__(self) -> None:
        if not (self.i >= self.j >= self.k >= 0):
            raise InvalidTripleError(
                f"ideal exponents must satisfy i >= j >= k >= 0, got "
                f"({self.i}, {self.j}, {self.k})"
            )

    def shifted(self, quat: int) -> "IdealTriple":
        return IdealTriple(self.i + quat, self.j + quat, self.k + quat)


@dataclass(frozen=True)
class AbcTriple:
    """Minimal tail degrees (a, b, c) of the three v-towers."""

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if not (self.a >= self.b >= self.c >= 0):
            raise InvalidTripleError(
                f"need a >= b >= c >= 0, got ({self.a}, {self.b}, {self.c})"
            )
        if not (self.a % 4 == self.b % 4 == self.c % 4):
            raise InvalidTripleError(
                f"a, b, c must agree mod 4, got ({self.a}, {self.b}, {self.c})"
            )


@dataclass(frozen=True)
class GradedIdeal:
    """An ideal given by an explicit monomial set, bounded in v-power.

    The set is read as the ideal's members with vpow at most the largest
    vpow occurring in the set; validity means each q-row is a tail up to
    that bound (v-saturation) and the rows are nested (closure under q).
    """

    members: frozenset[RMonomial]

    @property
    def vbound(self) -> int:
        return max((m.vpow for m in self.members), default=0)

    def row(self, qpow: int) -> set[int]:
        return {m.vpow for m in self.members if m.qpow == qpow}


def classify_ideal(j: GradedIdeal) -> IdealTriple:
    """Normal form (i, j, k) of a v-saturated graded ideal.

    Raises InvalidIdealError when the member set is not v-saturated up to
    its bound, or not closed under multiplication by q or v.
    """
    if not j.members:
        raise InvalidIdealError("empty monomial set is not v-saturated")
    bound = j.vbound
    minima = []
    for qpow in range(3):
        row = j.row(qpow)
        if not row:
            raise InvalidIdealError(
                f"not v-saturated: no members with qpow={qpow}"
            )
        lo = min(row)
        expected = set(range(lo, bound + 1))
        if row != expected:
            missing = sorted(expected - row)
            raise InvalidIdealError(
                f"not closed under v: row qpow={qpow} is missing "
                f"{RMonomial(qpow, missing[0])} below the bound v^{bound}"
            )
        minima.append(lo)
    for m in sorted(j.members):
        nxt = m.times_q()
        if nxt is not None and nxt not in j.members:
            raise InvalidIdealError(f"not closed under q: {m} present, {nxt} absent")
    i0, i1, i2 = minima
    return IdealTriple(i0, i1, i2)


def ideal_from_triple(t: IdealTriple, vmax: int | None = None) -> GradedIdeal:
    """Expand (i, j, k) into an explicit monomial set up to v^vmax."""
    if vmax is None:
        vmax = max(t.i, t.j, t.k) + 2
    if vmax < t.i:
        raise InputError(f"vmax={vmax} is below the top generator exponent {t.i}")
    members = set()
    for qpow, lo in ((0, t.i), (1, t.j), (2, t.k)):
        for b in range(lo, vmax + 1):
            members.add(RMonomial(qpow, b))
    return GradedIdeal(frozenset(members))


def abc_from_ideal(level: int, t: IdealTriple) -> AbcTriple:
    """(a, b, c) = level + 4*(i, j, k), for an ideal relative to R_[level]."""
    if level < 0:
        raise InputError(f"level must be non-negative, got {level}")
    return AbcTriple(level + 4 * t.i, level + 4 * t.j, level + 4 * t.k)


@dataclass(frozen=True, eq=False)
class FiniteRModule:
    """A graded R-module on a finite degree window, maps raising degree.

    ``qmaps[d]`` has shape pieces(d+1) x pieces(d) and ``vmaps[d]`` shape
    pieces(d+4) x pieces(d).  Maps that are zero (or have an empty source
    or target) may be omitted.  With ``tail_from = t`` the module continues
    beyond the window as the pattern of R shifted to start at t, with the
    canonical multiplication maps; the top four window degrees must already
    match that pattern so the continuation is well defined.
    """

    pieces: Mapping[int, int]
    qmaps: Mapping[int, BitMatrix] = field(default_factory=dict)
    vmaps: Mapping[int, BitMatrix] = field(default_factory=dict)
    tail_from: int | None = None

    def __post_init__(self) -> None:
        for d, n in self.pieces.items():
            if n < 0:
                raise InvalidModuleError(f"negative dimension {n} in degree {d}")
        lo, hi = self.window()
        for maps, step, name in ((self.qmaps, 1, "q"), (self.vmaps, 4, "v")):
            for d, m in maps.items():
                if m.cols != self.dim(d) or m.rows != self.dim(d + step):
                    raise InvalidModuleError(
                        f"{name}-map at degree {d} has shape {m.rows}x{m.cols}, "
                        f"expected {self.dim(d + step)}x{self.dim(d)}"
                    )
        if self.tail_from is not None and hi is not None:
            for d in range(hi - 3, hi + 1):
                if self.dim(d) != r_dim_from(d, self.tail_from):
                    raise InvalidModuleError(
                        f"window top degree {d} has dimension {self.dim(d)}; the "
                        f"declared tail from {self.tail_from} requires "
                        f"{r_dim_from(d, self.tail_from)}"
                    )

    def window(self) -> tuple[int | None, int | None]:
        """Declared degree range; zero dimensions inside it count."""
        if not self.pieces:
            return (None, None)
        return (min(self.pieces), max(self.pieces))

    def dim(self, d: int) -> int:
        lo, hi = self.window()
        if hi is not None and d > hi and self.tail_from is not None:
            return r_dim_from(d, self.tail_from)
        return self.pieces.get(d, 0)

    def qmap(self, d: int) -> BitMatrix:
        m = self.qmaps.get(d)
        if m is None:
            return BitMatrix.zeros(self.dim(d + 1), self.dim(d))
        return m

    def vmap(self, d: int) -> BitMatrix:
        m = self.vmaps.get(d)
        if m is None:
            return BitMatrix.zeros(self.dim(d + 4), self.dim(d))
        return m


def free_r_module(start: int, hi: int) -> FiniteRModule:
    """The free module R shifted to start at ``start``, windowed up to hi."""
    if hi < start + 3:
        raise InputError("window must cover at least one full period")
    pieces = {d: r_dim_from(d, start) for d in range(start, hi + 1)}
    qmaps, vmaps = _canonical_tail_maps(start, range(start, hi + 1), hi, pieces)
    return FiniteRModule(pieces, qmaps, vmaps, tail_from=start)


def _canonical_tail_maps(
    start: int, degrees: Iterable[int], hi: int, dims: Mapping[int, int]
) -> tuple[dict[int, BitMatrix], dict[int, BitMatrix]]:
    """Multiplication maps of the R-pattern from ``start`` on given degrees."""
    qmaps: dict[int, BitMatrix] = {}
    vmaps: dict[int, BitMatrix] = {}
    for d in degrees:
        res = (d - start) % 4
        if d + 1 <= hi and dims.get(d, 0) and dims.get(d + 1, 0) and res in (0, 1):
            qmaps[d] = BitMatrix.identity(1)
        if d + 4 <= hi and dims.get(d, 0) and dims.get(d + 4, 0):
            vmaps[d] = BitMatrix.identity(1)
    return qmaps, vmaps


def materialize_tail(m: FiniteRModule, extra: int) -> FiniteRModule:
    """Extend the window ``extra`` degrees upward, expanding the tail."""
    lo, hi = m.window()
    if m.tail_from is None or hi is None or extra <= 0:
        return m
    t = m.tail_from
    new_hi = hi + extra
    pieces = dict(m.pieces)
    for d in range(hi + 1, new_hi + 1):
        pieces[d] = r_dim_from(d, t)
    qmaps = dict(m.qmaps)
    vmaps = dict(m.vmaps)
    for d in range(hi - 3, new_hi + 1):
        res = (d - t) % 4
        if d not in qmaps and d + 1 <= new_hi and d + 1 > hi:
            if pieces.get(d, 0) and pieces.get(d + 1, 0) and res in (0, 1):
                qmaps[d] = BitMatrix.identity(1)
        if d not in vmaps and d + 4 <= new_hi and d + 4 > hi:
            if pieces.get(d, 0) and pieces.get(d + 4, 0):
                vmaps[d] = BitMatrix.identity(1)
    return FiniteRModule(pieces, qmaps, vmaps, tail_from=None)


def check_module_axioms(m: FiniteRModule) -> list[str]:
    """Report every degree where q^3 != 0 or q*v != v*q as composed maps.

    An empty report means the module satisfies the ring relations.
    """
    lo, hi = m.window()
    if lo is None:
        return []
    ext = materialize_tail(m, 8) if m.tail_from is not None else m
    diagnostics = []
    for d in range(lo, hi + 1):
        q3 = ext.qmap(d + 2).mul(ext.qmap(d + 1)).mul(ext.qmap(d))
        if not q3.is_zero():
            diagnostics.append(f"q^3 != 0 starting at degree {d}")
        qv = ext.vmap(d + 1).mul(ext.qmap(d))
        vq = ext.qmap(d + 4).mul(ext.vmap(d))
        if qv.data != vq.data:
            diagnostics.append(f"q*v != v*q starting at degree {d}")
    return diagnostics


def saturation_cap(m: FiniteRModule) -> int:
    lo, hi = m.window()
    width = 0 if lo is None else hi - lo + 1
    return width // 4 + 2


def _saturated_ranks(m: FiniteRModule, cap: int) -> dict[int, int]:
    """rank of the composite v^cap out of each window degree.

    This is the degreewise dimension of the intersection of the images of
    all v-powers: a class survives v-saturation exactly when the composite
    upward v-maps never kill it, and ranks of composites stabilize once
    every path has either died or entered the periodic tail.
    """
    lo, hi = m.window()
    if lo is None:
        return {}
    ext = materialize_tail(m, 4 * (cap + 2)) if m.tail_from is not None else m
    ranks: dict[int, int] = {}
    for d in range(lo, hi + 1):
        composite = BitMatrix.identity(ext.dim(d))
        rank_at_cap = None
        for step in range(cap + 1):
            composite = ext.vmap(d + 4 * step).mul(composite)
            if step == cap - 1:
                rank_at_cap = rank(composite)
        rank_past_cap = rank(composite)
        if rank_at_cap is None:
            rank_at_cap = rank_past_cap
        if rank_at_cap != rank_past_cap:
            raise InternalError(
                f"v-saturation did not stabilize at degree {d} within cap {cap}"
            )
        ranks[d] = rank_at_cap
    return ranks


def infinity_part(
    m: FiniteRModule,
) -> tuple[dict[int, int], Optional[IdealTriple]]:
    """Degreewise v-saturation of the module, plus its ideal form when visible.

    Returns the dimensions of the intersection of the images of all powers
    of v over the explicit window (beyond the window a declared tail is
    fully saturated).  When the module declares a tail origin and the
    result is degreewise at most one-dimensional, v-periodic from its first
    class in each residue, and empty in the residue with no tail, it is
    also returned as an IdealTriple relative to the tail origin.
    """
    diagnostics = check_module_axioms(m)
    if diagnostics:
        raise InvalidModuleError("; ".join(diagnostics))
    lo, hi = m.window()
    if lo is None:
        return ({}, None)
    dims = _saturated_ranks(m, saturation_cap(m))
    triple = _triple_from_dims(dims, hi, m.tail_from)
    return dims, triple


def _triple_from_dims(
    dims: Mapping[int, int], hi: int, tail_from: int | None
) -> Optional[IdealTriple]:
    if tail_from is None:
        return None
    if any(n > 1 for n in dims.values()):
        return None
    t = tail_from
    exponents = []
    for offset in (0, 1, 2):
        matching = sorted(d for d in dims if (d - t) % 4 == offset)
        first = None
        for d in matching:
            if dims[d]:
                first = d
                break
        if first is None:
            return None
        # v-periodicity: once a residue class is populated it must stay so.
        if any(dims[d] == 0 for d in matching if d > first):
            return None
        exponents.append((first - t - offset) // 4)
    if any(dims[d] for d in dims if (d - t) % 4 == 3):
        return None
    i, j, k = exponents
    if not (i >= j >= k >= 0):
        return None
    return IdealTriple(i, j, k)
