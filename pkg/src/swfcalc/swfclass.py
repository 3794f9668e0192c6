"""Homological shadows of spaces with Pin(2)-symmetry and a fixed sphere.

A class records, for a space whose circle-fixed set is a sign-representation
sphere of dimension ``level`` with free symmetry off the fixed set:

* the image of its Borel cohomology in the v-localized theory, encoded as
  an IdealTriple relative to R shifted to start at ``level`` (equivalently
  the triple (a, b, c) of minimal tail degrees);
* a finite window of Borel cohomology dimensions, followed by the forced
  eventual pattern of R from degree a on (localization);
* the minimal surviving degree of the circle-equivariant theory under
  U-localization, over fields of characteristic 0 and 2 (``d_p``).

Spaces enter only through the constructors here: representation spheres,
unreduced suspensions of free actions described by classifying-map data,
suspension, and duality.  The restriction map to the fixed sphere computes
the localized image directly, so no equivariant chain engine is needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    DualityRangeError,
    InputError,
    LevelMismatchError,
    UnavailableError,
)
from .rmodule import (
    AbcTriple,
    IdealTriple,
    RMonomial,
    abc_from_ideal,
    monomial_in_degree,
)


@dataclass(frozen=True)
class RepDesc:
    """A real representation: rt copies of the sign line, quat of the quaternions."""

    rt: int
    quat: int

    def __post_init__(self) -> None:
        if self.rt < 0 or self.quat < 0:
            raise InputError(
                f"representation multiplicities must be non-negative, got "
                f"({self.rt}, {self.quat})"
            )

    @property
    def dim(self) -> int:
        return self.rt + 4 * self.quat

    def plus(self, other: "RepDesc") -> "RepDesc":
        return RepDesc(self.rt + other.rt, self.quat + other.quat)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a consistency check; violations name the failing parts."""

    consistent: bool
    violations: tuple[str, ...] = ()


@dataclass(frozen=True)
class SwfClass:
    """See the module docstring.

    ``window`` lists Borel cohomology dimensions in degrees 0..len-1 and is
    None for classes whose torsion is not determined (duals); dimensions
    beyond the window follow the eventual pattern from degree a on.
    """

    level: int
    ideal: IdealTriple
    window: tuple[int, ...] | None
    s1_min0: int | None
    s1_min2: int | None
    provenance: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.level < 0:
            raise InputError(f"level must be non-negative, got {self.level}")
        abc = self.abc  # validates ordering and congruence
        if self.window is not None:
            if any(n < 0 for n in self.window):
                raise InputError("negative dimension in Borel window")
            if len(self.window) < abc.a + 4:
                raise InputError(
                    "Borel window must extend at least one period past degree a"
                )

    @property
    def abc(self) -> AbcTriple:
        return abc_from_ideal(self.level, self.ideal)

    def pattern_dim(self, d: int) -> int:
        """The eventual dimension forced by localization, valid from a on."""
        return 1 if d >= self.abc.a and (d - self.level) % 4 != 3 else 0

    def borel_dim(self, d: int) -> int | None:
        """Borel cohomology dimension in degree d; None when undetermined."""
        if self.window is None:
            return self.pattern_dim(d) if d >= self.abc.a else None
        if d < 0:
            return 0
        if d < len(self.window):
            return self.window[d]
        return self.pattern_dim(d)

    @property
    def window_hi(self) -> int | None:
        return None if self.window is None else len(self.window) - 1


@dataclass(frozen=True, eq=False)
class KappaData:
    """Classifying-map data for the unreduced suspension of a free action.

    ``qdims[d]`` is the dimension of the quotient's degree-d cohomology over
    GF(2).  ``kappa`` sends each monomial of R to its image bit vector in
    that degree (missing entries, and everything beyond the top of the
    support, are zero).  ``kappa_s1[e]`` is the integer image vector of the
    e-th power of the degree-2 circle class, read over characteristic 0 or
    2; it may be omitted entirely, in which case d_p data is unavailable.
    """

    qdims: Mapping[int, int]
    kappa: Mapping[RMonomial, tuple[int, ...]]
    kappa_s1: Mapping[int, tuple[int, ...]] | None = None

    def top(self) -> int:
        """Largest degree with non-trivial quotient cohomology (-1 if none)."""
        return max((d for d, n in self.qdims.items() if n > 0), default=-1)


def rational_rank(rows: Sequence[Sequence[int | Fraction]]) -> int:
    """Rank over the rationals by exact fraction elimination."""
    work = [[Fraction(x) for x in row] for row in rows]
    if not work:
        return 0
    ncols = len(work[0])
    if any(len(row) != ncols for row in work):
        raise InputError("ragged rows in rational rank input")
    rk = 0
    for col in range(ncols):
        pivot = None
        for i in range(rk, len(work)):
            if work[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        work[rk], work[pivot] = work[pivot], work[rk]
        inv = 1 / work[rk][col]
        work[rk] = [x * inv for x in work[rk]]
        for i in range(len(work)):
            if i != rk and work[i][col] != 0:
                c = work[i][col]
                work[i] = [x - c * y for x, y in zip(work[i], work[rk])]
        rk += 1
        if rk == len(work):
            break
    return rk


def _vector_is_zero(vec: Sequence[int], characteristic: int) -> bool:
    if characteristic == 2:
        return all(x % 2 == 0 for x in vec)
    return rational_rank([list(vec)]) == 0 if vec else True


def _pattern_window(level: int, a: int, hi: int) -> tuple[int, ...]:
    return tuple(
        1 if d >= a and (d - level) % 4 != 3 else 0 for d in range(hi + 1)
    )


def from_rep_sphere(rt: int, quat: int) -> SwfClass:
    """The class of the one-point compactification of rt sign lines and quat quaternion lines."""
    rep = RepDesc(rt, quat)
    a = rep.dim
    return SwfClass(
        level=rt,
        ideal=IdealTriple(quat, quat, quat),
        window=_pattern_window(rt, a, a + 8),
        s1_min0=a,
        s1_min2=a,
        provenance=(f"rep_sphere(rt={rt}, quat={quat})",),
    )


def from_unreduced_suspension(k: KappaData) -> SwfClass:
    """Class of the unreduced suspension of a free action with quotient data k.

    The long exact sequence of the pair against the fixed two-point set
    gives, degree by degree, dim = dim ker(kappa in degree d) + dim
    coker(kappa in degree d-1), and the localized image is exactly the
    kernel of kappa as a monomial set.  That kernel must be closed under
    multiplication by q and v; if it is not, the data cannot come from an
    actual space and an error is raised.
    """
    for d, n in k.qdims.items():
        if n < 0:
            raise InputError(f"qdims[{d}] is negative")
        if d < 0 and n > 0:
            raise InputError(f"quotient cohomology in negative degree {d}")
    top = k.top()

    def image_vector(mon: RMonomial) -> tuple[int, ...]:
        vec = k.kappa.get(mon)
        want = k.qdims.get(mon.degree, 0)
        if vec is None:
            return (0,) * want
        if len(vec) != want:
            raise InputError(
                f"kappa[{mon}] has length {len(vec)}, expected {want} "
                f"(quotient dimension in degree {mon.degree})"
            )
        if any(b not in (0, 1) for b in vec):
            raise InputError(f"kappa[{mon}] must be a bit vector")
        return tuple(vec)

    def in_kernel(mon: RMonomial) -> bool:
        if mon.degree > top:
            return True
        return all(b == 0 for b in image_vector(mon))

    unit = RMonomial(0, 0)
    if k.qdims.get(0, 0) > 0 and in_kernel(unit):
        raise InputError(
            "kappa sends the unit to zero although the quotient is non-empty"
        )

    monomials = [
        RMonomial(qpow, vpow)
        for qpow in range(3)
        for vpow in range(top // 4 + 2)
        if qpow + 4 * vpow <= top
    ]
    for mon in monomials:
        if not in_kernel(mon):
            continue
        q_next = mon.times_q()
        if q_next is not None and not in_kernel(q_next):
            raise InputError(
                f"input does not come from a space: kernel of kappa is not an "
                f"ideal ({mon} maps to zero but {q_next} does not)"
            )
        if not in_kernel(mon.times_v()):
            raise InputError(
                f"input does not come from a space: kernel of kappa is not an "
                f"ideal ({mon} maps to zero but {mon.times_v()} does not)"
            )

    minima = []
    for qpow in range(3):
        b = 0
        while not in_kernel(RMonomial(qpow, b)):
            b += 1
        minima.append(b)
    ideal = IdealTriple(*minima)
    a = 4 * ideal.i

    hi = max(top + 2, a + 4)
    dims = []
    for d in range(hi + 1):
        mon = monomial_in_degree(d)
        ker_d = 1 if mon is not None and in_kernel(mon) else 0
        prev = monomial_in_degree(d - 1)
        rank_prev = 1 if prev is not None and not in_kernel(prev) else 0
        coker_prev = k.qdims.get(d - 1, 0) - rank_prev
        dims.append(ker_d + coker_prev)

    s1_min0 = s1_min2 = None
    if k.kappa_s1 is not None:
        for e, vec in k.kappa_s1.items():
            if e < 0:
                raise InputError(f"kappa_s1 index {e} is negative")
            if len(vec) != k.qdims.get(2 * e, 0):
                raise InputError(
                    f"kappa_s1[{e}] has length {len(vec)}, expected "
                    f"{k.qdims.get(2 * e, 0)} (quotient dimension in degree {2 * e})"
                )
        s1_min0 = 2 * _first_zero_power(k, characteristic=0)
        s1_min2 = 2 * _first_zero_power(k, characteristic=2)

    return SwfClass(
        level=0,
        ideal=ideal,
        window=tuple(dims),
        s1_min0=s1_min0,
        s1_min2=s1_min2,
        provenance=(f"unreduced_suspension(top={top})",),
    )


def _first_zero_power(k: KappaData, characteristic: int) -> int:
    assert k.kappa_s1 is not None
    e_max = max(k.kappa_s1.keys(), default=-1)
    for e in range(e_max + 2):
        vec = k.kappa_s1.get(e, ())
        if _vector_is_zero(vec, characteristic):
            return e
    raise InputError("kappa_s1 never vanishes")  # unreachable: missing = zero


def suspend(x: SwfClass, v: RepDesc) -> SwfClass:
    """Smash with the one-point compactification of v; shifts everything by dim v."""
    m = v.dim
    window = None if x.window is None else (0,) * m + x.window
    return SwfClass(
        level=x.level + v.rt,
        ideal=x.ideal.shifted(v.quat),
        window=window,
        s1_min0=None if x.s1_min0 is None else x.s1_min0 + m,
        s1_min2=None if x.s1_min2 is None else x.s1_min2 + m,
        provenance=x.provenance + (f"suspend(rt={v.rt}, quat={v.quat})",),
    )


def dualize(x: SwfClass, v: RepDesc) -> SwfClass:
    """The class of a dual with respect to v; involutive on (level, abc, d_p).

    Needs level <= v.rt, a(x) <= dim v, and a(x) <= level + 4*v.quat (so the
    dual's localized image is again an ideal relative to its own level).
    The dual's torsion is not determined by x alone, so the output carries
    only the eventual pattern.
    """
    m = v.dim
    abc = x.abc
    if x.level > v.rt:
        raise DualityRangeError(
            f"dual level would be negative: level {x.level} > rt {v.rt}"
        )
    if abc.a > m:
        raise DualityRangeError(
            f"dual c would be negative: a(x) = {abc.a} > dim v = {m}"
        )
    if x.ideal.i > v.quat:
        raise DualityRangeError(
            f"dual ideal exponent would be negative: need a(x) <= level + "
            f"4*quat, got a(x) = {abc.a} > {x.level + 4 * v.quat}"
        )
    level = v.rt - x.level
    ideal = IdealTriple(v.quat - x.ideal.k, v.quat - x.ideal.j, v.quat - x.ideal.i)
    s1_min0 = None if x.s1_min0 is None else m - x.s1_min0
    s1_min2 = None if x.s1_min2 is None else m - x.s1_min2
    notes = [f"dualize(rt={v.rt}, quat={v.quat}); pattern-only"]
    for tag, val in (("0", s1_min0), ("2", s1_min2)):
        if val is not None and (val - level) % 2 != 0:
            notes.append(f"d_{tag} parity differs from level (unverified)")
    return SwfClass(
        level=level,
        ideal=ideal,
        window=None,
        s1_min0=s1_min0,
        s1_min2=s1_min2,
        provenance=x.provenance + tuple(notes),
    )


@dataclass(frozen=True, eq=False)
class PeriodicGraded:
    """A fully 4-periodic graded object, given by one period of dimensions."""

    base_residue: int
    dims: tuple[int, int, int, int]

    def __post_init__(self) -> None:
        if not 0 <= self.base_residue < 4:
            raise InputError("base_residue must be reduced mod 4")

    def dim_at(self, d: int) -> int:
        return self.dims[(d - self.base_residue) % 4]

    def profile(self) -> tuple[int, int, int, int]:
        """Dimensions at absolute residues 0, 1, 2, 3."""
        return tuple(self.dim_at(r) for r in range(4))

    def shifted(self, n: int) -> "PeriodicGraded":
        return PeriodicGraded((self.base_residue + n) % 4, self.dims)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PeriodicGraded):
            return NotImplemented
        return self.profile() == other.profile()

    def __hash__(self) -> int:
        return hash(self.profile())


def tate(x: SwfClass) -> PeriodicGraded:
    """The 4-periodic localized pattern: one-dimensional except one residue.

    The gap sits in degrees congruent to level + 1 mod 4; suspension by a
    sign line shifts the pattern by one, quaternionic suspension leaves it
    fixed.
    """
    return PeriodicGraded(x.level % 4, (1, 0, 1, 1))


def coborel_from_dual(dual_dims: Mapping[int, int], m: int) -> dict[int, int]:
    """Reflect a dual's cohomology table: degree d picks up dual degree m - d."""
    out = {m - d: n for d, n in dual_dims.items() if n}
    return dict(sorted(out.items()))


def monotonicity_check(x: SwfClass, x2: SwfClass) -> Verdict:
    """Whether (a, b, c) of x are bounded by those of x2, at equal levels.

    A violated coordinate certifies that no equivariant map from x's space
    to x2's can restrict to an equivalence of fixed sets.
    """
    if x.level != x2.level:
        raise LevelMismatchError(
            f"levels differ: {x.level} vs {x2.level}; comparison requires "
            f"the same level"
        )
    violations = []
    for name, lhs, rhs in (
        ("a", x.abc.a, x2.abc.a),
        ("b", x.abc.b, x2.abc.b),
        ("c", x.abc.c, x2.abc.c),
    ):
        if lhs > rhs:
            violations.append(f"{name}: {lhs} > {rhs}")
    return Verdict(not violations, tuple(violations))


def localization_check(x: SwfClass) -> bool:
    """True iff the window matches the eventual pattern in every degree >= a.

    Degrees beyond the explicit window follow the pattern by definition, so
    only the stored window can disagree.
    """
    if x.window is None:
        return True
    a = x.abc.a
    return all(x.window[d] == x.pattern_dim(d) for d in range(a, len(x.window)))


def dp(x: SwfClass, characteristic: int) -> int:
    """Minimal surviving degree of the U-localized circle theory."""
    if characteristic not in (0, 2):
        raise InputError(
            f"characteristic must be 0 or 2, got {characteristic}"
        )
    value = x.s1_min0 if characteristic == 0 else x.s1_min2
    if value is None:
        raise UnavailableError(
            f"d_p data for characteristic {characteristic} was never populated"
        )
    return value


__all__ = [
    "KappaData",
    "PeriodicGraded",
    "RepDesc",
    "SwfClass",
    "Verdict",
    "coborel_from_dual",
    "dp",
    "dualize",
    "from_rep_sphere",
    "from_unreduced_suspension",
    "localization_check",
    "monotonicity_check",
    "rational_rank",
    "suspend",
    "tate",
]
