"""Seeded random generators for the property suites.

Everything here is driven by a caller-supplied random.Random, so seeded
runs are reproducible.  Generated objects are valid by construction:
modules are direct sums of model pieces (optionally conjugated by random
basis changes, which preserves every dimension-level quantity), and
classifying-map data is built backwards from a chosen kernel ideal.
"""

from __future__ import annotations

import random

from .f2core import BitMatrix, inverse, rank
from .floer import MoyData
from .rmodule import FiniteRModule, IdealTriple, RMonomial, r_dim_from
from .swfclass import (
    KappaData,
    RepDesc,
    SwfClass,
    dualize,
    from_rep_sphere,
    from_unreduced_suspension,
    suspend,
)


def rand_triple(rng: random.Random, vmax: int = 8) -> IdealTriple:
    i = rng.randint(0, vmax)
    j = rng.randint(0, i)
    k = rng.randint(0, j)
    return IdealTriple(i, j, k)


def _rand_invertible(rng: random.Random, n: int) -> BitMatrix:
    if n == 0:
        return BitMatrix.zeros(0, 0)
    while True:
        m = BitMatrix(n, n, tuple(rng.randrange(1 << n) for _ in range(n)))
        if rank(m) == n:
            return m


def _conjugate(rng: random.Random, module: FiniteRModule, keep_top: int) -> FiniteRModule:
    """Random basis change per degree below keep_top; isomorphic module."""
    lo, hi = module.window()
    if lo is None:
        return module
    basis = {
        d: (
            BitMatrix.identity(module.dim(d))
            if d > keep_top
            else _rand_invertible(rng, module.dim(d))
        )
        for d in range(lo, hi + 1)
    }

    def change(d: int) -> BitMatrix:
        return basis.get(d, BitMatrix.identity(module.dim(d)))

    qmaps = {}
    vmaps = {}
    for d in range(lo, hi + 1):
        if d + 1 <= hi:
            q = change(d + 1).mul(module.qmap(d)).mul(inverse(change(d)))
            if not q.is_zero():
                qmaps[d] = q
        if d + 4 <= hi:
            v = change(d + 4).mul(module.vmap(d)).mul(inverse(change(d)))
            if not v.is_zero():
                vmaps[d] = v
    return FiniteRModule(dict(module.pieces), qmaps, vmaps, module.tail_from)


def _structured_module(rng: random.Random, max_total: int) -> FiniteRModule:
    """Direct sum of a windowed free tail and small torsion pieces.

    Torsion stays at least four degrees below the window top, so the
    declared tail pattern is visible there.
    """
    start = rng.randint(-4, 4)
    hi = start + rng.randint(6, 12)
    pieces = {d: r_dim_from(d, start) for d in range(start, hi + 1)}
    qblocks: dict[int, list[tuple[int, int]]] = {}
    vblocks: dict[int, list[tuple[int, int]]] = {}

    def bump(d: int) -> int:
        pieces[d] = pieces.get(d, 0) + 1
        return pieces[d] - 1

    total = sum(pieces.values())
    for _ in range(rng.randint(0, 4)):
        if total >= max_total - 3:
            break
        kind = rng.choice(("point", "qchain", "vtower"))
        if kind == "point":
            d0 = rng.randint(start, hi - 4)
            bump(d0)
            total += 1
        elif kind == "qchain":
            length = rng.randint(2, 3)
            if hi - 4 - (length - 1) < start:
                continue
            d0 = rng.randint(start, hi - 4 - (length - 1))
            idx = [bump(d0 + t) for t in range(length)]
            for t in range(length - 1):
                qblocks.setdefault(d0 + t, []).append((idx[t], idx[t + 1]))
            total += length
        else:
            height = rng.randint(2, 3)
            if hi - 4 - 4 * (height - 1) < start:
                height = 1
            d0 = rng.randint(start, hi - 4 - 4 * (height - 1))
            idx = [bump(d0 + 4 * t) for t in range(height)]
            for t in range(height - 1):
                vblocks.setdefault(d0 + 4 * t, []).append((idx[t], idx[t + 1]))
            total += height

    # The free tail's own multiplication maps act on coordinate 0.
    for d in range(start, hi + 1):
        res = (d - start) % 4
        if res in (0, 1) and d + 1 <= hi and r_dim_from(d, start):
            qblocks.setdefault(d, []).append((0, 0))
        if d + 4 <= hi and r_dim_from(d, start) and r_dim_from(d + 4, start):
            vblocks.setdefault(d, []).append((0, 0))

    def build(blocks: dict[int, list[tuple[int, int]]], step: int) -> dict[int, BitMatrix]:
        out = {}
        for d, entries in blocks.items():
            rows = pieces.get(d + step, 0)
            data = [0] * rows
            for si, ti in entries:
                data[ti] |= 1 << si
            out[d] = BitMatrix(rows, pieces.get(d, 0), tuple(data))
        return out

    module = FiniteRModule(pieces, build(qblocks, 1), build(vblocks, 4), tail_from=start)
    return _conjugate(rng, module, keep_top=hi - 4)


def _qfree_module(rng: random.Random, max_total: int) -> FiniteRModule:
    """q acts by zero, v arbitrary; every ring relation holds automatically."""
    lo = rng.randint(-4, 4)
    hi = lo + rng.randint(3, 9)
    pieces = {}
    total = 0
    for d in range(lo, hi + 1):
        n = rng.randint(0, 3)
        if total + n > max_total:
            n = 0
        pieces[d] = n
        total += n
    vmaps = {}
    for d in range(lo, hi - 3):
        rows, cols = pieces.get(d + 4, 0), pieces.get(d, 0)
        if rows and cols:
            m = BitMatrix(rows, cols, tuple(rng.randrange(1 << cols) for _ in range(rows)))
            if not m.is_zero():
                vmaps[d] = m
    return FiniteRModule(pieces, {}, vmaps, tail_from=None)


def rand_module(rng: random.Random, max_total: int = 20) -> FiniteRModule:
    if rng.random() < 0.5:
        return _structured_module(rng, max_total)
    return _qfree_module(rng, max_total)


def rand_kappa(rng: random.Random) -> KappaData:
    """Valid classifying-map data with a prescribed kernel ideal.

    The quotient's support is kept below 4i - 1, so no torsion can appear
    at or above degree a and the constructed class matches its forced
    pattern from a on (as in every paper-style construction, where the
    quotient is small relative to the first surviving tail class).
    """
    if rng.random() < 0.05:
        return KappaData({}, {}, {})  # empty quotient: the two-point class
    i = rng.randint(1, 3)
    j = rng.randint(0, i)
    k = rng.randint(0, j)
    floor = max(
        4 * (i - 1),
        4 * j - 3 if j else 0,
        4 * k - 2 if k else 0,
        0,
    )
    top = rng.randint(floor, 4 * i - 2)

    qdims = {d: rng.randint(0, 2) for d in range(top + 1)}
    qdims[0] = max(qdims.get(0, 0), 1)

    kappa = {}
    for qpow, lo in ((0, i), (1, j), (2, k)):
        for vpow in range(lo):
            mon = RMonomial(qpow, vpow)
            qdims[mon.degree] = max(qdims.get(mon.degree, 0), 1)
            vec = [0] * qdims[mon.degree]
            vec[rng.randrange(len(vec))] = 1
            kappa[mon] = tuple(vec)

    m0 = rng.randint(0, top // 2 + 1)
    m2 = m0 if rng.random() < 0.7 else rng.randint(0, m0)
    kappa_s1 = {}
    for e in range(m0):
        deg = 2 * e
        qdims[deg] = max(qdims.get(deg, 0), 1)
        vec = [0] * qdims[deg]
        vec[rng.randrange(len(vec))] = 1 if e < m2 else 2
        kappa_s1[e] = tuple(vec)
    return KappaData(qdims, kappa, kappa_s1)


def rand_swf_class(rng: random.Random, max_ops: int = 3) -> SwfClass:
    if rng.random() < 0.5:
        x = from_rep_sphere(rng.randint(0, 3), rng.randint(0, 2))
    else:
        x = from_unreduced_suspension(rand_kappa(rng))
    for _ in range(rng.randint(0, max_ops)):
        if rng.random() < 0.7:
            x = suspend(x, RepDesc(rng.randint(0, 2), rng.randint(0, 1)))
        else:
            x = dualize(x, rand_dual_rep(rng, x))
    return x


def rand_dual_rep(rng: random.Random, x: SwfClass) -> RepDesc:
    """A representation for which dualize(x, .) satisfies its preconditions."""
    return RepDesc(x.level + rng.randint(0, 2), x.ideal.i + rng.randint(0, 2))


def rand_moy(rng: random.Random) -> MoyData:
    """Critical-point data with achievable explicit connecting ranks."""
    r0 = rng.randint(-4, 4)
    irr = []
    used = set()
    for _ in range(rng.randint(0, 2)):
        d = r0 + rng.randint(-3, 5)
        if d in used:
            continue
        used.add(d)
        irr.append((d, rng.randint(1, 3)))
    counts = dict(irr)
    g_max = 0
    for e in (r0, r0 + 1, r0 + 2):
        if counts.get(e + 1, 0) >= 1:
            g_max += 1
        else:
            break
    s1_max = 1 if counts.get(r0 + 1, 0) >= 1 else 0
    return MoyData(r0, tuple(irr), rng.randint(0, g_max), rng.randint(0, s1_max))


class _PlainMatrix:
    """Integer-list matrix with explicit shape; oracle-side arithmetic."""

    def __init__(self, rows: int, cols: int, entries: list[list[int]]):
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_bitmatrix(cls, m: BitMatrix) -> "_PlainMatrix":
        return cls(
            m.rows,
            m.cols,
            [[m.entry(r, c) for c in range(m.cols)] for r in range(m.rows)],
        )

    @classmethod
    def identity(cls, n: int) -> "_PlainMatrix":
        return cls(n, n, [[1 if r == c else 0 for c in range(n)] for r in range(n)])

    def matmul(self, other: "_PlainMatrix") -> "_PlainMatrix":
        assert self.cols == other.rows
        out = [
            [
                sum(self.entries[r][t] * other.entries[t][c] for t in range(self.cols)) % 2
                for c in range(other.cols)
            ]
            for r in range(self.rows)
        ]
        return _PlainMatrix(self.rows, other.cols, out)

    def transpose(self) -> "_PlainMatrix":
        out = [[self.entries[r][c] for r in range(self.rows)] for c in range(self.cols)]
        return _PlainMatrix(self.cols, self.rows, out)

    def image_set(self) -> set[tuple[int, ...]]:
        """All values of the map, by enumerating every input vector."""
        out = set()
        for mask in range(1 << self.cols):
            vec = [(mask >> t) & 1 for t in range(self.cols)]
            img = tuple(
                sum(self.entries[r][t] * vec[t] for t in range(self.cols)) % 2
                for r in range(self.rows)
            )
            out.add(img)
        return out


def oracle_infinity_dims(module: FiniteRModule) -> dict[int, int]:
    """Brute-force v-saturation, independent of the production route.

    Works in the dual (homological) picture: for each window degree the
    image of every power of v acting downward is enumerated as an explicit
    set of vectors, the sets are intersected, and the dimension is read off
    the size.
    """
    from .rmodule import materialize_tail

    lo, hi = module.window()
    if lo is None:
        return {}
    steps = (hi - lo + 1) // 4 + 1
    ext = (
        materialize_tail(module, 4 * (steps + 1))
        if module.tail_from is not None
        else module
    )
    result = {}
    for d in range(lo, hi + 1):
        n = ext.dim(d)
        survivors = _PlainMatrix.identity(n).image_set()
        composite = _PlainMatrix.identity(n)
        for step in range(steps):
            up = _PlainMatrix.from_bitmatrix(ext.vmap(d + 4 * step))
            composite = up.matmul(composite)
            survivors &= composite.transpose().image_set()
        result[d] = len(survivors).bit_length() - 1
    return result
