"""Built-in consistency suites backing the ``selfcheck`` CLI command.

Each suite recomputes a family of results by two routes that must agree,
or checks a proved structural property, and reports the first
counterexample it finds.  The environment variable
FOCKMOMENTS_SELFCHECK_FAULT=<suite-name> forces that suite to report a
failure; it exists so the failure path (exit code 1) can be exercised
deliberately.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction

from .fock import JacobiSequence, LadderWord, Letter, canonical_scale
from .laws import validate_moments
from .moments import (
    moment_by_tridiagonal,
    moment_by_words,
    moment_envelope,
    tridiagonal_return,
    word_matrix_element,
)
from .spectral import density_spectrum_sup

FAULT_ENV = "FOCKMOMENTS_SELFCHECK_FAULT"

# Mid-jump reading of a step CDF against the integrated state density;
# see spectral.density_spectrum_sup for why exact agreement is impossible.
DENSITY_SPECTRUM_TOL = 5e-3


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    checks: int
    counterexample: str | None = None


def _sequences() -> list[tuple[str, JacobiSequence]]:
    return [
        ("standard", JacobiSequence.standard()),
        ("q=0", JacobiSequence.q_deformed(0)),
        ("q=1/2", JacobiSequence.q_deformed(Fraction(1, 2))),
        ("q=1", JacobiSequence.q_deformed(1)),
        (
            "explicit",
            JacobiSequence.explicit(
                [Fraction(n + 1, 2) for n in range(1, 25)]
            ),
        ),
    ]


def _suite_engines(fast: bool) -> SuiteResult:
    """Word-sum and tridiagonal moments must agree identically."""
    max_n = 3 if fast else 5
    max_order = 6 if fast else 8
    scales = (1,) if fast else (1, 2)
    checks = 0
    for label, seq in _sequences():
        for n in range(max_n + 1):
            for order in range(max_order + 1):
                for s in scales:
                    a = moment_by_words(seq, n, order, scale=s)
                    b = moment_by_tridiagonal(seq, n, order, scale=s)
                    checks += 1
                    if a != b:
                        return SuiteResult(
                            "engine-equivalence",
                            False,
                            checks,
                            f"{label}, N={n}, order={order}, s={s}: "
                            f"words {a} != tridiagonal {b}",
                        )
    return SuiteResult("engine-equivalence", True, checks)


def _suite_envelope(fast: bool) -> SuiteResult:
    """Canonically scaled standard moments sit inside their envelopes."""
    seq = JacobiSequence.standard()
    max_n = 8 if fast else 16
    orders = (2, 4) if fast else (2, 4, 6, 8)
    checks = 0
    for n in range(1, max_n + 1):
        for order in orders:
            value = moment_by_tridiagonal(seq, n, order, scale=n)
            env = moment_envelope(n, order)
            checks += 1
            if not env.lower <= value <= env.upper:
                return SuiteResult(
                    "envelope-containment",
                    False,
                    checks,
                    f"N={n}, order={order}: {value} outside "
                    f"[{env.lower}, {env.upper}]",
                )
    return SuiteResult("envelope-containment", True, checks)


def _suite_odd(fast: bool) -> SuiteResult:
    """Odd diagonal walk powers and odd word sums vanish exactly.

    Uses tridiagonal_return, which takes no parity shortcut, and sums
    matrix elements over every word of each odd length.
    """
    max_n = 4 if fast else 8
    max_order = 5 if fast else 9
    checks = 0
    for label, seq in _sequences():
        for n in range(max_n + 1):
            for order in range(1, max_order + 1, 2):
                value = tridiagonal_return(seq, n, order)
                checks += 1
                if value != 0:
                    return SuiteResult(
                        "odd-vanishing",
                        False,
                        checks,
                        f"{label}, N={n}, order={order}: walk power {value}",
                    )
    # every word of odd length is orthogonal to its starting state
    lengths = (1, 3) if fast else (1, 3, 5)
    for label, seq in _sequences():
        for n in range(0, max_n + 1, 2):
            for length in lengths:
                for bits in itertools.product(
                    (Letter.ANNIHILATE, Letter.CREATE), repeat=length
                ):
                    element = word_matrix_element(seq, n, LadderWord(bits))
                    checks += 1
                    if element != 0:
                        return SuiteResult(
                            "odd-vanishing",
                            False,
                            checks,
                            f"{label}, N={n}, word "
                            f"{LadderWord(bits).to_string()}: element {element}",
                        )
    return SuiteResult("odd-vanishing", True, checks)


def _suite_hankel(fast: bool) -> SuiteResult:
    """Every produced moment sequence is positive semidefinite."""
    max_n = 3 if fast else 5
    max_order = 6 if fast else 8
    checks = 0
    for label, seq in _sequences():
        for n in range(max_n + 1):
            scales = [Fraction(1)]
            if n >= 1 and canonical_scale(seq, n) != 1:
                scales.append(canonical_scale(seq, n))
            for s in scales:
                values = [
                    moment_by_tridiagonal(seq, n, order, scale=s)
                    for order in range(max_order + 1)
                ]
                checks += 1
                if not validate_moments(values):
                    return SuiteResult(
                        "hankel-psd",
                        False,
                        checks,
                        f"{label}, N={n}, s={s}: Hankel matrix not PSD",
                    )
    return SuiteResult("hankel-psd", True, checks)


def _suite_density_spectrum(fast: bool) -> SuiteResult:
    """Spectral reconstruction matches the integrated state density."""
    cases = ((0, 96, 8000), (2, 96, 8000)) if fast else (
        (0, 128, 20000),
        (2, 128, 20000),
        (5, 128, 20000),
    )
    checks = 0
    for n, extra, panels in cases:
        sup = density_spectrum_sup(n, n + extra, panels=panels)
        checks += 1
        if sup > DENSITY_SPECTRUM_TOL:
            return SuiteResult(
                "density-spectrum",
                False,
                checks,
                f"N={n}, K={n + extra}: sup CDF distance {sup:.3e} > "
                f"{DENSITY_SPECTRUM_TOL:.0e}",
            )
    return SuiteResult("density-spectrum", True, checks)


_SUITES = (
    _suite_engines,
    _suite_envelope,
    _suite_odd,
    _suite_hankel,
    _suite_density_spectrum,
)


def run_selfcheck(fast: bool = False) -> list[SuiteResult]:
    """Run all suites and return their results in a fixed order."""
    fault = os.environ.get(FAULT_ENV, "")
    results = []
    for suite in _SUITES:
        result = suite(fast)
        if fault and result.name == fault:
            result = SuiteResult(
                result.name,
                False,
                result.checks,
                "injected fault (debug hook)",
            )
        results.append(result)
    return results
