"""Self-check suites behind the ``verify`` CLI subcommand.

Each suite returns a small result record; the CLI renders them as JSON and
maps any failure onto a non-zero exit code. Suites marked "sized by
--samples" draw that many random states; the rest pin their own sizes.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import _kernels
from .analysis import (
    detect_intervals,
    period_report,
    tau_to_time,
    ys_atom1_piecewise,
    ys_bell,
    ys_cavity_excited,
    ys_evolved,
)
from .dynamics import (
    AmplitudeState,
    BellState,
    CavityExcited,
    GeneralState,
    amplitude_trajectory,
    numeric_trajectory,
)
from .entanglement import (
    one_to_other,
    reduced_eigenvalues,
    schmidt_weight,
    y_from_schmidt_weight,
)
from .model import ModelParams, build_params

__all__ = [
    "SuiteResult",
    "SUITE_NAMES",
    "random_amplitude_triples",
    "run_suites",
    "summary_payload",
]


@dataclass(frozen=True)
class SuiteResult:
    """Outcome of one verification suite."""

    name: str
    passed: bool
    checks: int
    failures: int
    max_error: float
    tolerance: float
    detail: str = ""


def random_amplitude_triples(n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw n normalized complex amplitude triples (columns a0, a1, a2)."""
    raw = rng.standard_normal((n, 3)) + 1j * rng.standard_normal((n, 3))
    raw /= np.linalg.norm(raw, axis=1, keepdims=True)
    return raw


def _resonant() -> ModelParams:
    return build_params(g=1.0)


def _states_from_rows(rows: np.ndarray) -> list[AmplitudeState]:
    return [
        AmplitudeState(a0=complex(r[0]), a1=complex(r[1]), a2=complex(r[2]))
        for r in rows
    ]


def suite_normalization(samples: int, seed: int) -> SuiteResult:
    """Exact evolution keeps the norm for random states, detunings, times."""
    rng = np.random.default_rng(seed)
    rows = random_amplitude_triples(samples, rng)
    detunings = rng.uniform(-3.0, 3.0, samples)
    taus = rng.uniform(0.0, 8.0, samples)
    tol = 1e-10
    worst = 0.0
    failures = 0
    for row, delta, tau in zip(rows, detunings, taus):
        params = build_params(g=1.0, omega=0.0, omega0=delta)
        init = GeneralState(a0=complex(row[0]), a1=complex(row[1]), a2=complex(row[2]))
        t = float(tau_to_time(tau, params))
        a0, a1, a2 = amplitude_trajectory(init, params, t)
        err = abs(abs(a0) ** 2 + abs(a1) ** 2 + abs(a2) ** 2 - 1.0)
        worst = max(worst, float(err))
        failures += int(err > tol)
    return SuiteResult(
        name="normalization",
        passed=failures == 0,
        checks=samples,
        failures=int(failures),
        max_error=worst,
        tolerance=tol,
    )


def suite_closed_form(samples: int, seed: int) -> SuiteResult:
    """Closed-form curves match the exact evolution point by point."""
    del samples, seed  # spec-pinned sizes
    params = _resonant()
    tol = 1e-10
    taus = np.linspace(0.0, 4.0, 4001)
    worst = 0.0
    failures = 0

    curve = ys_evolved(CavityExcited(), params, taus)
    err = np.max(np.abs(curve - ys_cavity_excited(taus)))
    worst = max(worst, float(err))
    failures += int(err > tol)
    checks = taus.size

    for k in range(21):
        theta = 0.05 * k * math.pi
        curve = ys_evolved(BellState(theta=theta), params, taus)
        err = np.max(np.abs(curve - ys_bell(theta, taus)))
        worst = max(worst, float(err))
        failures += int(err > tol)
        checks += taus.size

    err = np.max(np.abs(ys_bell(0.0, taus) - ys_atom1_piecewise(taus)))
    worst = max(worst, float(err))
    failures += int(err > tol)
    checks += taus.size

    return SuiteResult(
        name="closed-form",
        passed=failures == 0,
        checks=checks,
        failures=failures,
        max_error=worst,
        tolerance=tol,
        detail="cavity-excited, 21 superposition angles, piecewise form",
    )


def suite_oracle(samples: int, seed: int) -> SuiteResult:
    """Closed form against fixed-step RK4 integration of the amplitude equations."""
    del samples  # spec-pinned size
    rng = np.random.default_rng(seed)
    rows = random_amplitude_triples(20, rng)
    tol = 1e-7
    worst = 0.0
    failures = 0
    checks = 0
    taus = np.linspace(0.0, 8.0, 17)
    for delta_over_g in (0.0, 0.5, 2.0):
        params = build_params(g=1.0, omega=0.0, omega0=delta_over_g)
        times = tau_to_time(taus, params)
        for row in rows:
            init = GeneralState(
                a0=complex(row[0]), a1=complex(row[1]), a2=complex(row[2])
            )
            numeric = numeric_trajectory(init, params, times)
            exact = np.stack(amplitude_trajectory(init, params, times), axis=-1)
            err = float(np.max(np.abs(numeric - exact)))
            worst = max(worst, err)
            failures += int(err > tol)
            checks += times.size
    return SuiteResult(
        name="oracle",
        passed=failures == 0,
        checks=checks,
        failures=int(failures),
        max_error=worst,
        tolerance=tol,
        detail="20 random states x detuning/g in {0, 0.5, 2}",
    )


def suite_freeze_boundaries(samples: int, seed: int) -> SuiteResult:
    """Detected interval boundaries land on the known closed-form values."""
    del samples, seed
    tol = 1e-9
    worst = 0.0
    failures = 0
    checks = 0

    intervals = detect_intervals(ys_cavity_excited, 0.0, 2.0)
    expected = [(0.0, 0.5, "Thawing"), (0.5, 1.5, "Frozen"), (1.5, 2.0, "Thawing")]
    checks += 1
    if len(intervals) != len(expected):
        failures += 1
    else:
        for got, (t0, t1, kind) in zip(intervals, expected):
            err = max(abs(got.t_start - t0), abs(got.t_end - t1))
            worst = max(worst, err)
            checks += 1
            failures += int(err > tol or got.kind != kind)

    tau_on = 2.0 * math.acos(math.sqrt(2.0) - 1.0) / math.pi
    intervals = detect_intervals(lambda t: ys_bell(0.0, t), 0.0, 2.0)
    checks += 1
    if len(intervals) != 3 or [i.kind for i in intervals] != [
        "Thawing",
        "Frozen",
        "Thawing",
    ]:
        failures += 1
    else:
        err = max(
            abs(intervals[1].t_start - tau_on), abs(intervals[1].t_end - (2.0 - tau_on))
        )
        worst = max(worst, err)
        checks += 1
        failures += int(err > tol)

    intervals = detect_intervals(lambda t: ys_bell(0.75 * math.pi, t), 0.0, 4.0)
    checks += 1
    failures += int(not (
        len(intervals) == 1
        and intervals[0].kind == "Frozen"
        and intervals[0].t_start == 0.0
        and intervals[0].t_end == 4.0
    ))

    return SuiteResult(
        name="freeze-boundaries",
        passed=failures == 0,
        checks=checks,
        failures=int(failures),
        max_error=worst,
        tolerance=tol,
    )


def suite_period_swap(samples: int, seed: int) -> SuiteResult:
    """Cycle periodicity of the measure and atom-swap anti-periodicity."""
    del samples, seed
    params = _resonant()
    tol = 1e-10
    worst = 0.0
    failures = 0
    checks = 0
    inits = [CavityExcited()] + [
        BellState(theta=f * math.pi) for f in (0.0, 0.05, 0.1, 0.25, 0.3, 0.75, 0.9)
    ]
    for init in inits:
        report = period_report(init, params, tol=tol)
        err = max(report.ys_max_error, report.swap_max_error, report.y_swap_max_error)
        worst = max(worst, err)
        checks += 3
        failures += (not report.ys_periodic) + (not report.swap_ok) + (
            not report.y_swap_ok
        )
    return SuiteResult(
        name="period-swap",
        passed=failures == 0,
        checks=checks,
        failures=int(failures),
        max_error=worst,
        tolerance=tol,
    )


def _random_measures(samples: int, seed: int):
    rng = np.random.default_rng(seed)
    rows = random_amplitude_triples(samples, rng)
    probs = np.abs(rows) ** 2
    y = _kernels.measure_batch(probs)
    return probs, y


def suite_volume(samples: int, seed: int) -> SuiteResult:
    """Each measure sits in [0, 1]; their sum stays within the shrunken bound 2."""
    tol = 1e-12
    probs, y = _random_measures(samples, seed)
    y_sum = y.sum(axis=1)
    range_err = float(
        max(np.max(-y, initial=0.0), np.max(y - 1.0, initial=0.0))
    )
    sum_err = float(np.max(y_sum - 2.0, initial=0.0))
    # saturation holds exactly when no party dominates (max p <= 1/2)
    saturated = np.abs(y_sum - 2.0) <= tol
    dominated = np.max(probs, axis=1) > 0.5 + tol
    mismatches = int(np.sum(saturated & dominated))
    worst = max(range_err, sum_err)
    failures = int(np.sum(-y > tol) + np.sum(y - 1.0 > tol) + np.sum(y_sum - 2.0 > tol))
    failures += mismatches
    return SuiteResult(
        name="volume",
        passed=failures == 0,
        checks=4 * samples,
        failures=failures,
        max_error=worst,
        tolerance=tol,
        detail="0 <= y_i <= 1, y_sum <= 2, saturation iff max p_i <= 1/2",
    )


def suite_polygon(samples: int, seed: int) -> SuiteResult:
    """No single measure exceeds the sum of the other two."""
    tol = 1e-12
    _, y = _random_measures(samples, seed)
    total = y.sum(axis=1, keepdims=True)
    slack = total - 2.0 * y  # y_j + y_k - y_i
    worst = float(np.max(-slack, initial=0.0))
    failures = int(np.sum(slack < -tol))
    return SuiteResult(
        name="polygon",
        passed=failures == 0,
        checks=3 * samples,
        failures=failures,
        max_error=worst,
        tolerance=tol,
    )


def suite_monogamy(samples: int, seed: int) -> SuiteResult:
    """Squared pairwise concurrences never exceed the one-to-other concurrence."""
    tol = 1e-12
    rng = np.random.default_rng(seed)
    probs = np.abs(random_amplitude_triples(samples, rng)) ** 2
    worst = 0.0
    failures = 0
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        slack = 4.0 * probs[:, i] * (probs[:, j] + probs[:, k])
        slack -= 4.0 * probs[:, i] * probs[:, j]
        slack -= 4.0 * probs[:, i] * probs[:, k]
        worst = max(worst, float(np.max(-slack, initial=0.0)))
        failures += int(np.sum(slack < -tol))
    return SuiteResult(
        name="monogamy",
        passed=failures == 0,
        checks=3 * samples,
        failures=failures,
        max_error=worst,
        tolerance=tol,
        detail="slack is identically zero on this manifold",
    )


def suite_ratio(samples: int, seed: int) -> SuiteResult:
    """Inside saturation the measures split in proportion to the moduli squared."""
    tol = 1e-9
    probs, y = _random_measures(samples, seed)
    y_sum = y.sum(axis=1)
    frozen = np.abs(y_sum - 2.0) <= 1e-9
    worst = 0.0
    failures = 0
    count = int(np.sum(frozen))
    if count:
        yp = y[frozen]
        pp = probs[frozen]
        for i in range(3):
            j = (i + 1) % 3
            cross = np.abs(yp[:, i] * pp[:, j] - yp[:, j] * pp[:, i])
            worst = max(worst, float(np.max(cross, initial=0.0)))
            failures += int(np.sum(cross > tol))
    return SuiteResult(
        name="ratio",
        passed=(failures == 0) and count > 0,
        checks=3 * count,
        failures=failures,
        max_error=worst,
        tolerance=tol,
        detail=f"{count} of {samples} random states saturate",
    )


def suite_measure_paths(samples: int, seed: int) -> SuiteResult:
    """Fast-path measures agree with the reduced-eigenvalue route."""
    # routing through the participation ratio squares the eigenvalue gap, so
    # states near saturation only agree to sqrt(eps); 1e-7 covers that bound
    tol = 1e-7
    rng = np.random.default_rng(seed)
    rows = random_amplitude_triples(samples, rng)
    worst = 0.0
    failures = 0
    for state in _states_from_rows(rows):
        fast = one_to_other(state).as_tuple()
        for party in range(3):
            slow = y_from_schmidt_weight(
                schmidt_weight(reduced_eigenvalues(state, party))
            )
            err = abs(fast[party] - slow)
            worst = max(worst, float(err))
            failures += int(err > tol)
    return SuiteResult(
        name="measure-paths",
        passed=failures == 0,
        checks=3 * samples,
        failures=int(failures),
        max_error=worst,
        tolerance=tol,
    )


SUITE_NAMES: dict[str, object] = {
    "normalization": suite_normalization,
    "closed-form": suite_closed_form,
    "oracle": suite_oracle,
    "freeze-boundaries": suite_freeze_boundaries,
    "period-swap": suite_period_swap,
    "volume": suite_volume,
    "polygon": suite_polygon,
    "monogamy": suite_monogamy,
    "ratio": suite_ratio,
    "measure-paths": suite_measure_paths,
}


def run_suites(names: list[str], samples: int, seed: int) -> list[SuiteResult]:
    """Run the chosen suites; unknown names raise KeyError."""
    results = []
    for name in names:
        if name not in SUITE_NAMES:
            raise KeyError(name)
        results.append(SUITE_NAMES[name](samples, seed))
    return results


def summary_payload(results: list[SuiteResult]) -> dict:
    """JSON-ready summary with per-suite counts."""
    return {
        "schema_version": 1,
        "all_passed": all(r.passed for r in results),
        "suites": [asdict(r) for r in results],
    }
