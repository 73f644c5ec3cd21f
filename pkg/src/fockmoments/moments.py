"""Exact position moments of number states, by two independent routes.

The position observable is X = (a + a*) / sqrt(2).  Its moments in the
N-th number state are computed either by summing matrix elements of all
balanced ladder words (the combinatorial route) or by iterating a
tridiagonal one-step recurrence (the linear-algebra route).  Both are
exact over the rationals and must agree identically; keeping both is the
point, they cross-check each other.

Moments can be rescaled by a positive variance s, replacing X with
X / sqrt(s).  Under the canonical scale s = omega_N the even moments of
the standard oscillator are sandwiched between explicit rational bounds
around the arcsine moments.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .fock import (
    JacobiSequence,
    LadderWord,
    Letter,
    NumberState,
    ScaledObservable,
    as_fraction,
    canonical_scale,
    enumerate_balanced_words,
    fraction_str,
    state_index,
)
from .laws import arcsine_moment


def word_matrix_element(
    seq: JacobiSequence, state: Union[int, NumberState], word: LadderWord
) -> Fraction:
    """Exact matrix element of a ladder word in the N-th number state.

    The word acts rightmost letter first.  Annihilating the bottom level
    kills the vector, and a walk that does not return to its starting
    level is orthogonal to it; both give 0.  Otherwise every edge of the
    level graph is traversed an even number of times, so the product of
    sqrt(omega) weights collapses to a rational: the product of
    omega_k^(t_k / 2) over edge traversal counts t_k.
    """
    n = state_index(state)
    level = n
    traversals: dict[int, int] = {}
    for letter in reversed(word.letters):
        if letter is Letter.ANNIHILATE:
            if level == 0:
                return Fraction(0)
            traversals[level] = traversals.get(level, 0) + 1
            level -= 1
        else:
            traversals[level + 1] = traversals.get(level + 1, 0) + 1
            level += 1
    if level != n:
        return Fraction(0)
    value = Fraction(1)
    for k, count in traversals.items():
        if count % 2:
            raise AssertionError("returning walk crossed an edge an odd number of times")
        value *= seq.omega(k) ** (count // 2)
    return value


def moment_by_words(
    seq: JacobiSequence,
    state: Union[int, NumberState],
    order: int,
    scale: Union[int, str, Fraction] = 1,
) -> Fraction:
    """Order-n moment of X / sqrt(s) by summation over balanced words.

    X^(2m) expands into 2^(-m) times the sum of all length-2m ladder
    words; only the C(2m, m) balanced ones can contribute.  Odd orders
    have no balanced words and vanish identically.
    """
    n = state_index(state)
    s = as_fraction(scale)
    if s <= 0:
        raise ValueError(f"scale must be positive, got {s}")
    if order < 0:
        raise ValueError(f"moment order must be >= 0, got {order}")
    if order == 0:
        return Fraction(1)
    if order % 2:
        return Fraction(0)
    m = order // 2
    total = Fraction(0)
    for word in enumerate_balanced_words(m):
        total += word_matrix_element(seq, n, word)
    return total / (2 * s) ** m


def tridiagonal_return(
    seq: JacobiSequence, state: Union[int, NumberState], order: int
) -> Fraction:
    """Exact diagonal power (B^n)[N][N] of the one-step level walk.

    In the number basis X is symmetric tridiagonal with zero diagonal and
    is diagonally similar to the rational matrix B with ones above the
    diagonal and omega_k / 2 below, which has the same diagonal powers.
    Computed by n applications of B to the N-th basis vector on the
    window [max(0, N - n), N + n], which no n-step walk can leave.  No
    parity shortcut is taken: odd orders come out 0 because every
    returning walk has even length, and that cancellation is computed,
    not assumed, which lets callers verify the parity claim itself.
    """
    n = state_index(state)
    if order < 0:
        raise ValueError(f"moment order must be >= 0, got {order}")
    if order == 0:
        return Fraction(1)
    lo = max(0, n - order)
    hi = n + order
    half = {k: seq.omega(k) / 2 for k in range(max(lo, 1), hi + 1)}
    vec = [Fraction(0)] * (hi - lo + 1)
    vec[n - lo] = Fraction(1)
    for _ in range(order):
        nxt = [Fraction(0)] * (hi - lo + 1)
        for k in range(lo, hi + 1):
            acc = Fraction(0)
            if k - 1 >= lo:
                acc += half[k] * vec[k - 1 - lo]
            if k + 1 <= hi:
                acc += vec[k + 1 - lo]
            nxt[k - lo] = acc
        vec = nxt
    return vec[n - lo]


def moment_by_tridiagonal(
    seq: JacobiSequence,
    state: Union[int, NumberState],
    order: int,
    scale: Union[int, str, Fraction] = 1,
) -> Fraction:
    """Order-n moment of X / sqrt(s) by the tridiagonal recurrence.

    The moment is (B^n)[N][N] / s^(n/2); see ``tridiagonal_return``.
    Odd orders short-circuit to 0, the level walk cannot return in an
    odd number of steps.
    """
    n = state_index(state)
    s = as_fraction(scale)
    if s <= 0:
        raise ValueError(f"scale must be positive, got {s}")
    if order < 0:
        raise ValueError(f"moment order must be >= 0, got {order}")
    if order % 2:
        return Fraction(0)
    if order == 0:
        return Fraction(1)
    return tridiagonal_return(seq, n, order) / s ** (order // 2)


def observable_moment(
    observable: ScaledObservable, state: Union[int, NumberState], order: int
) -> Fraction:
    """Moment of a scaled observable, via the tridiagonal route."""
    return moment_by_tridiagonal(
        observable.jacobi, state, order, scale=observable.scale
    )


@dataclass(frozen=True)
class MomentSequence:
    """Moments 0..max_order of one scaled number-state distribution."""

    jacobi: JacobiSequence
    state: int
    scale: Fraction
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise ValueError("a moment sequence holds at least the zeroth moment")
        if self.values[0] != 1:
            raise ValueError(f"zeroth moment must be 1, got {self.values[0]}")
        for i in range(1, len(self.values), 2):
            if self.values[i] != 0:
                raise ValueError(f"odd moment {i} must vanish, got {self.values[i]}")

    @property
    def max_order(self) -> int:
        return len(self.values) - 1

    def moment(self, order: int) -> Fraction:
        if not 0 <= order <= self.max_order:
            raise ValueError(f"order {order} outside 0..{self.max_order}")
        return self.values[order]

    def to_json(self) -> dict:
        return {
            "jacobi": self.jacobi.to_json(),
            "state": self.state,
            "scale": fraction_str(self.scale),
            "moments": [fraction_str(v) for v in self.values],
        }


def moment_sequence(
    seq: JacobiSequence,
    state: Union[int, NumberState],
    max_order: int,
    scale: Union[int, str, Fraction] = 1,
) -> MomentSequence:
    """Build the moments 0..max_order of X / sqrt(s) in the N-th state."""
    n = state_index(state)
    s = as_fraction(scale)
    if max_order < 0:
        raise ValueError(f"max_order must be >= 0, got {max_order}")
    values = tuple(
        moment_by_tridiagonal(seq, n, order, scale=s)
        for order in range(max_order + 1)
    )
    return MomentSequence(jacobi=seq, state=n, scale=s, values=values)


@dataclass(frozen=True)
class MomentEnvelope:
    """Rational sandwich bounds for one canonically scaled even moment."""

    state: int
    order: int
    lower: Fraction
    upper: Fraction


def moment_envelope(state: Union[int, NumberState], order: int) -> MomentEnvelope:
    """Sandwich bounds for standard-oscillator moments at canonical scale.

    For the standard sequence at scale s = N the 2m-th moment lies in

        M_2m * N (N-1) ... (N-m+1) / N^m  <=  moment  <=
        M_2m * (N+1) (N+2) ... (N+m) / N^m

    with M_2m the arcsine moment.  Both products have m factors, so both
    bounds approach M_2m at rate O(m^2 / N).  The lower product hits a
    zero factor once m exceeds N, which keeps it a valid (if slack)
    bound.  Requires N >= 1 and an even order.
    """
    n = state_index(state)
    if n < 1:
        raise ValueError(f"envelope needs a state level >= 1, got {n}")
    if order < 0 or order % 2:
        raise ValueError(f"envelope is defined for even orders, got {order}")
    m = order // 2
    target = arcsine_moment(order)
    falling = math.prod(range(n - m + 1, n + 1))
    rising = math.prod(range(n + 1, n + m + 1))
    return MomentEnvelope(
        state=n,
        order=order,
        lower=target * Fraction(falling, n**m),
        upper=target * Fraction(rising, n**m),
    )


@dataclass(frozen=True)
class ConvergenceRow:
    """One (state, order) entry of a convergence table."""

    state: int
    order: int
    scale: Fraction
    scaled_moment: Fraction
    target: Fraction
    abs_diff: Fraction
    env_lo: Fraction | None
    env_hi: Fraction | None


CONVERGENCE_COLUMNS = (
    "N",
    "order",
    "scaled_moment",
    "target",
    "abs_diff",
    "env_lo",
    "env_hi",
)


def convergence_table(
    seq: JacobiSequence,
    states: Sequence[int],
    orders: Sequence[int],
    scale: Union[str, int, Fraction] = "canonical",
) -> list[ConvergenceRow]:
    """Scaled moments against their arcsine targets over a (N, order) grid.

    scale is either the string "canonical" (per-state s = omega_N, which
    requires every N >= 1) or one fixed positive rational applied to all
    rows.  Rows come out sorted by (N, order).  Envelope columns are
    filled for standard-sequence even orders whenever the row's scale is
    the canonical one, and left empty otherwise.
    """
    fixed: Fraction | None
    if isinstance(scale, str) and scale.strip() == "canonical":
        fixed = None
    else:
        fixed = as_fraction(scale)
        if fixed <= 0:
            raise ValueError(f"scale must be positive, got {fixed}")
    rows = []
    for n in sorted(set(int(x) for x in states)):
        s = canonical_scale(seq, n) if fixed is None else fixed
        for order in sorted(set(int(x) for x in orders)):
            if order < 0:
                raise ValueError(f"moment order must be >= 0, got {order}")
            value = moment_by_tridiagonal(seq, n, order, scale=s)
            target = arcsine_moment(order)
            env_lo = env_hi = None
            if (
                seq.kind == "standard"
                and order % 2 == 0
                and n >= 1
                and s == canonical_scale(seq, n)
            ):
                env = moment_envelope(n, order)
                env_lo, env_hi = env.lower, env.upper
            rows.append(
                ConvergenceRow(
                    state=n,
                    order=order,
                    scale=s,
                    scaled_moment=value,
                    target=target,
                    abs_diff=abs(value - target),
                    env_lo=env_lo,
                    env_hi=env_hi,
                )
            )
    return rows


def _cell(value: Fraction | None) -> str:
    return "" if value is None else fraction_str(value)


def convergence_csv(rows: Sequence[ConvergenceRow]) -> str:
    """Render a convergence table as CSV with exact rational cells."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CONVERGENCE_COLUMNS)
    for row in rows:
        writer.writerow(
            [
                str(row.state),
                str(row.order),
                fraction_str(row.scaled_moment),
                fraction_str(row.target),
                fraction_str(row.abs_diff),
                _cell(row.env_lo),
                _cell(row.env_hi),
            ]
        )
    return buf.getvalue()


def convergence_json(rows: Sequence[ConvergenceRow]) -> list[dict]:
    """Convergence rows as JSON-ready dicts with exact rational strings."""
    out = []
    for row in rows:
        out.append(
            {
                "N": row.state,
                "order": row.order,
                "scale": fraction_str(row.scale),
                "scaled_moment": fraction_str(row.scaled_moment),
                "target": fraction_str(row.target),
                "abs_diff": fraction_str(row.abs_diff),
                "env_lo": None if row.env_lo is None else fraction_str(row.env_lo),
                "env_hi": None if row.env_hi is None else fraction_str(row.env_hi),
            }
        )
    return out
