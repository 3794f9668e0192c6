"""Randomized property suites behind ``swfcalc verify`` and the test suite.

Each suite runs a fixed number of seeded random cases and collects
failure descriptions; an empty failure list means the suite passed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import floer, generators, rmodule, swfclass
from .floer import Eighths, FloerContext, MoyData
from .rmodule import abc_from_ideal, r_dim_from
from .swfclass import RepDesc


@dataclass
class SuiteResult:
    name: str
    cases: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _record(result: SuiteResult, case: int, message: str) -> None:
    if len(result.failures) < 10:
        result.failures.append(f"case {case}: {message}")


def suite_ideal_roundtrip(rng: random.Random, iters: int) -> SuiteResult:
    """classify_ideal inverts ideal_from_triple on random triples."""
    result = SuiteResult("roundtrip-ideal-triple", iters)
    for case in range(iters):
        t = generators.rand_triple(rng)
        back = rmodule.classify_ideal(rmodule.ideal_from_triple(t))
        if back != t:
            _record(result, case, f"{t} -> {back}")
    return result


def suite_infinity_oracle(rng: random.Random, iters: int) -> SuiteResult:
    """infinity_part matches brute-force image intersection; idempotence."""
    result = SuiteResult("infinity-part-oracle", iters)
    for case in range(iters):
        module = generators.rand_module(rng)
        dims, _ = rmodule.infinity_part(module)
        oracle = generators.oracle_infinity_dims(module)
        if dims != oracle:
            _record(result, case, f"dims {dims} != oracle {oracle}")
        cap = rmodule.saturation_cap(module)
        again = rmodule._saturated_ranks(module, 2 * cap)
        if dims != again:
            _record(result, case, f"saturation not idempotent: {dims} vs {again}")
    return result


def _class_constraints_ok(x: swfclass.SwfClass) -> str | None:
    abc = x.abc
    if not (abc.a >= abc.b >= abc.c >= 0):
        return f"ordering violated: {abc}"
    if not (abc.a % 4 == abc.b % 4 == abc.c % 4 == x.level % 4):
        return f"congruence violated: {abc} at level {x.level}"
    return None


def suite_swf_laws(rng: random.Random, iters: int) -> SuiteResult:
    """Suspension additivity, duality involution, class constraints,
    and cancellation of suspension against the grading normalization."""
    result = SuiteResult("swfclass-laws", iters)
    for case in range(iters):
        x = generators.rand_swf_class(rng)
        bad = _class_constraints_ok(x)
        if bad:
            _record(result, case, bad)
            continue

        v1 = RepDesc(rng.randint(0, 2), rng.randint(0, 2))
        v2 = RepDesc(rng.randint(0, 2), rng.randint(0, 2))
        two_steps = swfclass.suspend(swfclass.suspend(x, v1), v2)
        one_step = swfclass.suspend(x, v1.plus(v2))
        if two_steps != one_step:
            _record(result, case, "suspension is not additive")
        if swfclass.suspend(x, RepDesc(0, 0)) != x:
            _record(result, case, "suspension by zero changed the class")

        v = generators.rand_dual_rep(rng, x)
        dual = swfclass.dualize(x, v)
        bad = _class_constraints_ok(dual)
        if bad:
            _record(result, case, f"dual: {bad}")
        double = swfclass.dualize(dual, v)
        if (
            double.level != x.level
            or double.ideal != x.ideal
            or double.s1_min0 != x.s1_min0
            or double.s1_min2 != x.s1_min2
        ):
            _record(result, case, "double dual differs from the original")
        if swfclass.tate(swfclass.suspend(x, RepDesc(0, 1))) != swfclass.tate(x):
            _record(result, case, "quaternionic suspension moved the Tate pattern")
        if swfclass.tate(swfclass.suspend(x, RepDesc(1, 0))) != swfclass.tate(x).shifted(1):
            _record(result, case, "sign-line suspension did not shift the Tate pattern")
        if not swfclass.localization_check(x):
            _record(result, case, "constructed window deviates from the forced pattern")

        rep = RepDesc(rng.randint(0, 2), rng.randint(0, 1))
        ctx = FloerContext(x.level % 4, Eighths(rng.randint(-8, 8)))
        before = floer.invariants(x, ctx)
        after = floer.invariants(
            swfclass.suspend(x, rep),
            FloerContext(ctx.dim_v0tau + rep.dim, ctx.n_eighths),
        )
        fields = lambda r: (r.alpha, r.beta, r.gamma, r.delta0, r.delta2, r.mu)
        if fields(before) != fields(after) or before.swfh_window != after.swfh_window:
            _record(result, case, "suspension did not cancel against normalization")
    return result


def suite_preset_reports(rng: random.Random, iters: int) -> SuiteResult:
    """Congruence, ordering, reversal involution and mu on all presets."""
    ns = sorted(
        n
        for k in range(1, 11)
        for n in (12 * k - 5, 12 * k - 1, 12 * k + 1, 12 * k + 5)
    )
    result = SuiteResult("preset-reports", len(ns))
    for case, n in enumerate(ns):
        report = floer.brieskorn(n)
        # Ordering and congruences are re-checked here on the raw numbers
        # rather than trusting the report constructor.
        values = (report.alpha.value, report.beta.value, report.gamma.value)
        if not (values[0] >= values[1] >= values[2]):
            _record(result, case, f"n={n}: ordering violated {values}")
        if not (values[0] % 16 == values[1] % 16 == values[2] % 16):
            _record(result, case, f"n={n}: congruence violated {values}")
        if report.mu.value != (-values[1]) % 16:
            _record(result, case, f"n={n}: mu is not -beta mod 2Z")
        family, _ = floer.brieskorn_family(n)
        expected_mu = 8 if family in ("12k-5", "12k+5") else 0
        if report.mu.value != expected_mu:
            _record(result, case, f"n={n}: mu {report.mu.value} != {expected_mu}")
        reverse = floer.orientation_reverse(report)
        back = floer.orientation_reverse(reverse)
        if (back.alpha, back.beta, back.gamma, back.delta0, back.delta2) != (
            report.alpha,
            report.beta,
            report.gamma,
            report.delta0,
            report.delta2,
        ):
            _record(result, case, f"n={n}: double reversal changed the report")
        if not floer.cobordism_check(
            report, report, floer.CobordismData(0, spin=True)
        ).consistent:
            _record(result, case, f"n={n}: self-cobordism inconsistent")
    return result


def suite_moy_ledger(rng: random.Random, iters: int) -> SuiteResult:
    """Alternating-sum ledger and direct-sum degeneration of assemblies."""
    result = SuiteResult("moy-assembly-ledger", iters)
    for case in range(iters):
        data = generators.rand_moy(rng)
        report = floer.assemble_moy(data)
        lo, hi = report.swfh_range
        r0 = data.reducible_degree
        got = sum((-1) ** d * (report.swfh_dim(d) or 0) for d in range(lo, hi + 1))
        want = sum(
            (-1) ** d * (r_dim_from(d, r0) + dict(data.irr_counts()).get(d, 0))
            for d in range(lo, hi + 1)
        )
        if got != want:
            _record(result, case, f"alternating sum {got} != input ledger {want}")

        free = MoyData(r0, data.irreducibles, 0, 0)
        direct = floer.assemble_moy(free)
        counts = data.irr_counts()
        mismatch = [
            d
            for d in range(lo, hi + 1)
            if direct.swfh_dim(d) != r_dim_from(d, r0) + counts.get(d, 0)
        ]
        if mismatch:
            _record(result, case, f"direct sum degeneration fails at {mismatch}")
        if direct.alpha != Eighths(4 * r0) or direct.gamma != Eighths(4 * r0):
            _record(result, case, "zero-rank assembly moved the tail origin")
    return result


SUITES = (
    suite_ideal_roundtrip,
    suite_infinity_oracle,
    suite_swf_laws,
    suite_preset_reports,
    suite_moy_ledger,
)


def run_all(iters: int, seed: int) -> list[SuiteResult]:
    results = []
    for suite in SUITES:
        rng = random.Random(f"{seed}:{suite.__name__}")
        results.append(suite(rng, iters))
    return results
