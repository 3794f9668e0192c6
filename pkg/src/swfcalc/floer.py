"""Correction terms alpha, beta, gamma, delta, mu from class or critical-point data.

All fractional invariants are exact integers counting eighths; reduction
mod 2Z is reduction of that count mod 16.  Two entry points produce an
InvariantReport:

* ``invariants(x, ctx)`` normalizes an SwfClass by approximation data
  (the dimension of the approximating slice and the spectral-flow
  quantity n, in eighths);
* ``assemble_moy(data)`` builds the equivariant Floer homology from
  critical points in already-normalized degrees via the two
  attractor-repeller exact sequences, and reads the invariants off the
  surviving localized tail.

``brieskorn(n)`` dispatches Sigma(2,3,n) to one of four preset critical
point configurations by the residue of n mod 12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

from .errors import (
    AmbiguityError,
    ContextError,
    InputError,
    InternalError,
    NotApplicableError,
)
from .f2core import BitMatrix
from .rmodule import FiniteRModule, check_module_axioms, infinity_part, r_dim_from
from .swfclass import SwfClass, Verdict


@dataclass(frozen=True, order=True)
class Eighths:
    """An exact multiple of 1/8; ``value`` counts eighths."""

    value: int

    @classmethod
    def from_units(cls, n: int) -> "Eighths":
        return cls(8 * n)

    def __neg__(self) -> "Eighths":
        return Eighths(-self.value)

    def __add__(self, other: "Eighths") -> "Eighths":
        return Eighths(self.value + other.value)

    def __sub__(self, other: "Eighths") -> "Eighths":
        return Eighths(self.value - other.value)

    def mod_two_z(self) -> "Eighths":
        """Representative of the class mod 2Z, in [0, 2)."""
        return Eighths(self.value % 16)

    def render(self) -> str:
        if self.value % 8 == 0:
            return str(self.value // 8)
        return f"{self.value}/8"


@dataclass(frozen=True)
class FloerContext:
    """Grading normalization: slice dimension and the quantity n in eighths."""

    dim_v0tau: int
    n_eighths: Eighths = Eighths(0)

    def __post_init__(self) -> None:
        if self.dim_v0tau < 0:
            raise InputError(
                f"slice dimension must be non-negative, got {self.dim_v0tau}"
            )


@dataclass(frozen=True)
class MoyData:
    """Critical points in normalized Floer degrees.

    Irreducibles come in pairs swapped by the extra symmetry; each pair
    contributes one class to the Pin(2)-theory and two to the circle
    theory.  Connecting ranks may be "auto" only when resolved by a
    shipped preset; otherwise they must be explicit.
    """

    reducible_degree: int
    irreducibles: tuple[tuple[int, int], ...]
    g_connecting_rank: int | str = "auto"
    s1_connecting_rank: int | str = "auto"

    def __post_init__(self) -> None:
        seen = set()
        for deg, pairs in self.irreducibles:
            if pairs < 0:
                raise InputError(f"pair count at degree {deg} is negative")
            if deg in seen:
                raise InputError(f"duplicate irreducible degree {deg}")
            seen.add(deg)
        for label, rank_value in (
            ("g", self.g_connecting_rank),
            ("s1", self.s1_connecting_rank),
        ):
            if isinstance(rank_value, str) and rank_value != "auto":
                raise InputError(
                    f"{label} connecting rank must be an integer or \"auto\", "
                    f"got {rank_value!r}"
                )
            if isinstance(rank_value, int) and rank_value < 0:
                raise InputError(f"{label} connecting rank is negative")

    def irr_counts(self) -> dict[int, int]:
        return {deg: pairs for deg, pairs in self.irreducibles if pairs > 0}


@dataclass(frozen=True)
class CobordismData:
    """Topological data of a candidate four-dimensional cobordism."""

    b2: int
    spin: bool = False
    negative_definite: bool = False

    def __post_init__(self) -> None:
        if self.b2 < 0:
            raise InputError(f"b2 must be non-negative, got {self.b2}")


@dataclass(frozen=True)
class InvariantReport:
    """The correction terms of one (oriented, spin) rational homology sphere.

    The report always satisfies alpha >= beta >= gamma, the common
    congruence of all three mod 2Z, and mu = (-beta) mod 2Z.  ``swfh_*``
    fields describe the homology table when it is determined: nonzero
    dimensions over an explicit degree range, plus the anchor residue of
    the periodic tail beyond it.
    """

    alpha: Eighths
    beta: Eighths
    gamma: Eighths
    delta0: Optional[Eighths]
    delta2: Optional[Eighths]
    mu: Eighths
    swfh_window: Optional[tuple[tuple[int, int], ...]]
    swfh_range: Optional[tuple[int, int]]
    swfh_tail_anchor: Optional[int]
    lambda_reference: Optional[int] = None
    provenance: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if not (self.alpha >= self.beta >= self.gamma):
            raise InternalError(
                f"invariant ordering violated: alpha={self.alpha.render()} "
                f"beta={self.beta.render()} gamma={self.gamma.render()}"
            )
        if not (
            self.alpha.value % 16 == self.beta.value % 16 == self.gamma.value % 16
        ):
            raise InternalError("alpha, beta, gamma must agree mod 2Z")
        if self.mu.value != (-self.beta.value) % 16:
            raise InternalError("mu must equal (-beta) mod 2Z")

    def delta(self, characteristic: int) -> Eighths:
        if characteristic not in (0, 2):
            raise InputError(f"characteristic must be 0 or 2, got {characteristic}")
        value = self.delta0 if characteristic == 0 else self.delta2
        if value is None:
            raise InputError(
                f"delta for characteristic {characteristic} is unavailable"
            )
        return value

    def swfh_dim(self, d: int) -> int | None:
        """Homology dimension in degree d; None when not determined."""
        if self.swfh_range is None:
            return None
        lo, hi = self.swfh_range
        if d < lo:
            return 0
        if d <= hi:
            return dict(self.swfh_window or ()).get(d, 0)
        if self.swfh_tail_anchor is None:
            return None
        return 1 if (d - self.swfh_tail_anchor) % 4 != 3 else 0


def invariants(x: SwfClass, ctx: FloerContext) -> InvariantReport:
    """Correction terms of a class under the given normalization.

    alpha = (a - dim)/2 - n and likewise for beta, gamma from b, c, and
    delta from the circle-theory minima; homology degrees are shifted by
    -dim - 2n when 2n is an integer, and left unshifted (with a note in
    the provenance) otherwise.
    """
    if ctx.dim_v0tau % 4 != x.level % 4:
        raise ContextError(
            f"slice dimension {ctx.dim_v0tau} is not congruent to level "
            f"{x.level} mod 4"
        )
    n = ctx.n_eighths
    abc = x.abc
    alpha = Eighths(4 * (abc.a - ctx.dim_v0tau) - n.value)
    beta = Eighths(4 * (abc.b - ctx.dim_v0tau) - n.value)
    gamma = Eighths(4 * (abc.c - ctx.dim_v0tau) - n.value)
    delta0 = (
        None
        if x.s1_min0 is None
        else Eighths(4 * (x.s1_min0 - ctx.dim_v0tau) - n.value)
    )
    delta2 = (
        None
        if x.s1_min2 is None
        else Eighths(4 * (x.s1_min2 - ctx.dim_v0tau) - n.value)
    )
    mu = Eighths((-beta.value) % 16)

    provenance = x.provenance + (
        f"normalization: dim_v0tau={ctx.dim_v0tau}, n={n.render()}",
    )
    if n.value % 4 == 0:
        shift = -ctx.dim_v0tau - n.value // 4
    else:
        shift = -ctx.dim_v0tau
        provenance += (
            f"degree shift by -2n = -{n.render()}*2 not applied "
            f"(non-integral); table degrees omit it",
        )
    if x.window is None:
        swfh_window = None
        swfh_range = None
        anchor = None
    else:
        swfh_window = tuple(
            (d + shift, dim) for d, dim in enumerate(x.window) if dim
        )
        swfh_range = (shift, len(x.window) - 1 + shift)
        anchor = x.level + shift
    return InvariantReport(
        alpha=alpha,
        beta=beta,
        gamma=gamma,
        delta0=delta0,
        delta2=delta2,
        mu=mu,
        swfh_window=swfh_window,
        swfh_range=swfh_range,
        swfh_tail_anchor=anchor,
        provenance=provenance,
    )


def _achievable_prefix(bottom: list[int], irr: dict[int, int]) -> int:
    """Largest rank r such that the r lowest torsion tail classes have sources."""
    r = 0
    for e in bottom:
        if irr.get(e + 1, 0) >= 1:
            r += 1
        else:
            break
    return r


def _resolve_rank(
    label: str, rank_value: int | str, bottom: list[int], irr: dict[int, int]
) -> int:
    max_rank = _achievable_prefix(bottom, irr)
    if isinstance(rank_value, str):
        raise AmbiguityError(
            f"{label} connecting rank \"auto\" is only pinned for the shipped "
            f"Brieskorn presets; rank-consistent alternatives: "
            f"{list(range(max_rank + 1))}"
        )
    if rank_value > len(bottom):
        raise InputError(
            f"{label} connecting rank {rank_value} exceeds the v-torsion of "
            f"the reducible tail ({len(bottom)} classes)"
        )
    if rank_value > max_rank:
        missing = bottom[max_rank]
        raise InputError(
            f"{label} connecting rank {rank_value} is not achievable: the tail "
            f"class in degree {missing} has no irreducible source in degree "
            f"{missing + 1}"
        )
    return rank_value


def _one_hot(rows: int, cols: int, on: bool) -> BitMatrix | None:
    """Matrix hitting the leading coordinate of source and target, or None."""
    if not on or rows == 0 or cols == 0:
        return None
    data = [0] * rows
    data[0] = 1
    return BitMatrix(rows, cols, tuple(data))


def assemble_moy(data: MoyData) -> InvariantReport:
    """Equivariant Floer homology from critical points, via exact sequences.

    The reducible contributes a periodic tail ascending from its degree;
    each irreducible pair contributes one class (two in the circle
    theory).  The connecting map of the stated rank kills the lowest tail
    classes; its image lies in the v-torsion of the tail (the bottom three
    classes, one in the circle theory), and each killed class consumes an
    irreducible in the degree right above it.  The surviving localized
    tail is recomputed from the assembled module and read off as
    invariants by the residue rules relative to the reducible degree.
    """
    r0 = data.reducible_degree
    irr = data.irr_counts()

    g_bottom = [r0, r0 + 1, r0 + 2]
    g_rank = _resolve_rank("g", data.g_connecting_rank, g_bottom, irr)
    s1_bottom = [r0]
    s1_irr = {deg: 2 * pairs for deg, pairs in irr.items()}
    s1_rank = _resolve_rank("s1", data.s1_connecting_rank, s1_bottom, s1_irr)

    killed = set(g_bottom[:g_rank])
    irr_left = dict(irr)
    for e in killed:
        irr_left[e + 1] -= 1

    lo = min([r0] + list(irr))
    hi = max(r0 + 3, max(irr, default=r0) + 4)

    def tail_dim(d: int) -> int:
        return 0 if d in killed else r_dim_from(d, r0)

    pieces = {
        d: tail_dim(d) + irr_left.get(d, 0) for d in range(lo, hi + 1)
    }
    qmaps = {}
    vmaps = {}
    for d in range(lo, hi + 1):
        res = (d - r0) % 4
        q = _one_hot(
            pieces.get(d + 1, 0),
            pieces.get(d, 0),
            bool(tail_dim(d) and tail_dim(d + 1) and res in (0, 1)),
        )
        if q is not None:
            qmaps[d] = q
        if d + 4 <= hi:
            v = _one_hot(
                pieces.get(d + 4, 0),
                pieces.get(d, 0),
                bool(tail_dim(d) and tail_dim(d + 4)),
            )
            if v is not None:
                vmaps[d] = v

    module = FiniteRModule(pieces, qmaps, vmaps, tail_from=r0)
    diagnostics = check_module_axioms(module)
    if diagnostics:
        raise InternalError(
            "assembled module violates the ring relations: " + "; ".join(diagnostics)
        )
    _, triple = infinity_part(module)
    if triple is None:
        raise InternalError("assembled module has no ideal-shaped localized tail")

    alpha = Eighths(4 * (r0 + 4 * triple.i))
    beta = Eighths(4 * (r0 + 4 * triple.j))
    gamma = Eighths(4 * (r0 + 4 * triple.k))
    delta = Eighths(4 * (r0 + 2 * s1_rank))
    mu = Eighths((-beta.value) % 16)

    swfh_window = tuple((d, n) for d, n in sorted(pieces.items()) if n)
    irr_text = ", ".join(f"{p}@{d}" for d, p in sorted(irr.items())) or "none"
    return InvariantReport(
        alpha=alpha,
        beta=beta,
        gamma=gamma,
        delta0=delta,
        delta2=delta,
        mu=mu,
        swfh_window=swfh_window,
        swfh_range=(lo, hi),
        swfh_tail_anchor=r0,
        provenance=(
            f"moy(reducible={r0}, pairs=[{irr_text}], g_rank={g_rank}, "
            f"s1_rank={s1_rank})",
        ),
    )


_FAMILIES = {
    7: "12k-5",
    11: "12k-1",
    1: "12k+1",
    5: "12k+5",
}


def brieskorn_family(n: int) -> tuple[str, int]:
    """Family label and index k of Sigma(2,3,n); n coprime to 6 required."""
    if n < 1 or math.gcd(n, 6) != 1:
        raise InputError(
            f"Brieskorn parameter n must be a positive integer coprime to 6, "
            f"got {n}"
        )
    residue = n % 12
    family = _FAMILIES[residue]
    if residue == 7:
        k = (n + 5) // 12
    elif residue == 11:
        k = (n + 1) // 12
    elif residue == 1:
        k = (n - 1) // 12
    else:
        k = (n - 5) // 12
    return family, k


def brieskorn_preset(n: int) -> tuple[MoyData, int]:
    """The preset critical-point data and Casson reference for Sigma(2,3,n)."""
    family, k = brieskorn_family(n)
    if family == "12k-5":
        data = MoyData(-2, ((-1, k),), 1, 1)
        lam = -2 * k + 1
    elif family == "12k-1":
        data = MoyData(0, ((1, k),), 1, 1)
        lam = -2 * k
    elif family == "12k+1":
        data = MoyData(0, ((-1, k),), 0, 0)
        lam = -2 * k
    else:
        data = MoyData(2, ((1, k),), 0, 0)
        lam = -2 * k - 1
    return data, lam


def brieskorn(n: int) -> InvariantReport:
    """Invariants of the Brieskorn sphere Sigma(2,3,n), gcd(n, 6) = 1.

    Oriented as the boundary of the negative-definite plumbing; n = 1 is
    the three-sphere.  The attached lambda is stored reference data, not
    computed here.
    """
    family, k = brieskorn_family(n)
    data, lam = brieskorn_preset(n)
    report = assemble_moy(data)
    return replace(
        report,
        lambda_reference=lam,
        provenance=(f"brieskorn(2,3,{n}) family {family} k={k}",)
        + report.provenance,
    )


def orientation_reverse(r: InvariantReport) -> InvariantReport:
    """Invariants of the orientation-reversed manifold.

    alpha and gamma swap with a sign, beta and delta flip sign; the
    homology table of the reverse is not determined by the invariants, so
    it is marked unavailable, and any Casson reference is dropped.
    """
    beta = -r.beta
    return InvariantReport(
        alpha=-r.gamma,
        beta=beta,
        gamma=-r.alpha,
        delta0=None if r.delta0 is None else -r.delta0,
        delta2=None if r.delta2 is None else -r.delta2,
        mu=Eighths((-beta.value) % 16),
        swfh_window=None,
        swfh_range=None,
        swfh_tail_anchor=None,
        lambda_reference=None,
        provenance=r.provenance + ("orientation_reverse",),
    )


def cobordism_check(
    r0: InvariantReport, r1: InvariantReport, c: CobordismData
) -> Verdict:
    """Test the constraints a spin cobordism from Y0 to Y1 would impose.

    With b2 = 0 the three invariants must agree; with b2 > 0 the cobordism
    must be negative definite and each invariant must grow by at least
    b2/8.  A violation certifies that no such cobordism exists.
    """
    if not c.spin:
        raise NotApplicableError("cobordism check requires a spin structure")
    named = (
        ("alpha", r0.alpha, r1.alpha),
        ("beta", r0.beta, r1.beta),
        ("gamma", r0.gamma, r1.gamma),
    )
    violations = []
    if c.b2 == 0:
        for name, v0, v1 in named:
            if v0 != v1:
                violations.append(f"{name}: {v1.render()} != {v0.render()}")
    else:
        if not c.negative_definite:
            raise NotApplicableError(
                "with b2 > 0 the check applies only to negative-definite "
                "cobordisms"
            )
        for name, v0, v1 in named:
            if v1.value < v0.value + c.b2:
                violations.append(
                    f"{name}: {v1.render()} < {v0.render()} + {c.b2}/8"
                )
    return Verdict(not violations, tuple(violations))


def two_torsion_obstruction(r: InvariantReport) -> str:
    """Obstruction to the double of a homology sphere bounding acyclically.

    For an integral homology sphere (caller-asserted), mu = 1 means the
    manifold cannot have its double homology cobordant to the three-sphere.
    """
    if r.mu.value == 8:
        return "obstructed"
    return "no obstruction from beta"
