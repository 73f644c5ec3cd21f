"""Fock-space primitives: Jacobi sequences, number states, ladder words.

An interacting Fock space is described here by its Jacobi sequence
``omega_1, omega_2, ...`` of positive rationals, the squared norms of the
ladder coefficients: the annihilator maps level n to level n-1 with weight
``sqrt(omega_n)`` and the creator maps level n to level n+1 with weight
``sqrt(omega_{n+1})``.  The standard oscillator has ``omega_n = n`` and the
q-deformed oscillator has ``omega_n = 1 + q + ... + q^(n-1)``.

Everything in this module is exact: scalars are ``fractions.Fraction`` and
serialize as ``"p/q"`` strings.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from typing import Iterator, Sequence, Union

# Exact scalars are plain Fractions; the alias marks intent in signatures.
ExactScalar = Fraction

# Balanced-word enumeration is capped at this half-length m, i.e. at
# C(2m, m) = 2704156 words, to guard against combinatorial blowup.
WORD_ORDER_CAP = 12


class CapExceeded(RuntimeError):
    """A computation exceeded an explicit size cap."""


def as_fraction(value: Union[int, str, Fraction]) -> Fraction:
    """Coerce an exact rational input to a Fraction.

    Accepts ints, Fractions, and ``"p/q"`` / ``"p"`` strings.  Floats are
    rejected: their binary expansions would silently contaminate exact
    results.
    """
    if isinstance(value, bool):
        raise ValueError("expected a rational number, got a bool")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational 'p/q' string: {value!r}") from exc
    if isinstance(value, float):
        raise ValueError(
            f"floats are not exact, pass a 'p/q' string instead of {value!r}"
        )
    raise ValueError(f"cannot interpret {type(value).__name__} as a rational")


def fraction_str(value: Fraction) -> str:
    """Canonical ``"p/q"`` (or ``"p"`` for integers) form of a Fraction."""
    return str(value)


def q_integer(n: int, q: Union[int, str, Fraction]) -> Fraction:
    """The q-integer [n]_q = 1 + q + ... + q^(n-1), exactly.

    ``q`` must lie in [0, 1].  [0]_q = 0, and [n]_1 = n.
    """
    qf = as_fraction(q)
    if not 0 <= qf <= 1:
        raise ValueError(f"q must lie in [0, 1], got {qf}")
    if n < 0:
        raise ValueError(f"q-integer index must be >= 0, got {n}")
    if qf == 1:
        return Fraction(n)
    # geometric sum (1 - q^n) / (1 - q)
    return (1 - qf**n) / (1 - qf)


@dataclass(frozen=True)
class JacobiSequence:
    """A positive rational Jacobi sequence omega_1, omega_2, ...

    kind is one of:

    - ``"standard"``: omega_n = n
    - ``"q"``: omega_n = [n]_q for a rational deformation q in [0, 1]
    - ``"explicit"``: a finite list of positive rationals
    """

    kind: str
    q: Fraction | None = None
    omegas: tuple[Fraction, ...] = field(default=())

    def __post_init__(self) -> None:
        if self.kind == "standard":
            if self.q is not None or self.omegas:
                raise ValueError("standard sequences take no parameters")
        elif self.kind == "q":
            if self.q is None:
                raise ValueError("q-deformed sequences need a deformation q")
            if not 0 <= self.q <= 1:
                raise ValueError(f"q must lie in [0, 1], got {self.q}")
            if self.omegas:
                raise ValueError("q-deformed sequences take no explicit list")
        elif self.kind == "explicit":
            if self.q is not None:
                raise ValueError("explicit sequences take no deformation q")
            for i, w in enumerate(self.omegas):
                if w <= 0:
                    raise ValueError(
                        f"omega_{i + 1} must be positive, got {w}"
                    )
        else:
            raise ValueError(f"unknown Jacobi sequence kind: {self.kind!r}")

    @staticmethod
    def standard() -> "JacobiSequence":
        return JacobiSequence(kind="standard")

    @staticmethod
    def q_deformed(q: Union[int, str, Fraction]) -> "JacobiSequence":
        return JacobiSequence(kind="q", q=as_fraction(q))

    @staticmethod
    def explicit(omegas: Sequence[Union[int, str, Fraction]]) -> "JacobiSequence":
        return JacobiSequence(
            kind="explicit", omegas=tuple(as_fraction(w) for w in omegas)
        )

    def omega(self, n: int) -> Fraction:
        """The weight omega_n, for n >= 1."""
        if n < 1:
            raise ValueError(f"Jacobi weights are indexed from 1, got n={n}")
        if self.kind == "standard":
            return Fraction(n)
        if self.kind == "q":
            assert self.q is not None
            return q_integer(n, self.q)
        if n > len(self.omegas):
            raise ValueError(
                f"explicit sequence has {len(self.omegas)} weights, "
                f"omega_{n} is undefined"
            )
        return self.omegas[n - 1]

    @staticmethod
    def from_json(obj: dict) -> "JacobiSequence":
        """Build a sequence from its JSON description.

        Schema: ``{"kind": "standard"}``, ``{"kind": "q", "q": "1/2"}``, or
        ``{"kind": "explicit", "omega": ["1", "3/2", "2"]}``.  Rationals are
        strings.
        """
        if not isinstance(obj, dict):
            raise ValueError("Jacobi sequence description must be an object")
        kind = obj.get("kind")
        if kind == "standard":
            return JacobiSequence.standard()
        if kind == "q":
            if "q" not in obj:
                raise ValueError("kind 'q' requires a field 'q'")
            return JacobiSequence.q_deformed(as_fraction(obj["q"]))
        if kind == "explicit":
            if "omega" not in obj or not isinstance(obj["omega"], list):
                raise ValueError("kind 'explicit' requires a list field 'omega'")
            return JacobiSequence.explicit([as_fraction(w) for w in obj["omega"]])
        raise ValueError(f"unknown Jacobi sequence kind: {kind!r}")

    def to_json(self) -> dict:
        """JSON description, inverse of ``from_json``."""
        if self.kind == "standard":
            return {"kind": "standard"}
        if self.kind == "q":
            return {"kind": "q", "q": fraction_str(self.q)}
        return {"kind": "explicit", "omega": [fraction_str(w) for w in self.omegas]}


STANDARD = JacobiSequence.standard()


def jacobi_weight(seq: JacobiSequence, n: int) -> Fraction:
    """Convenience accessor for ``seq.omega(n)``."""
    return seq.omega(n)


def canonical_scale(seq: JacobiSequence, state: Union[int, "NumberState"]) -> Fraction:
    """The natural normalization for the number state at level N.

    For the standard oscillator this is N, for the q-deformed one the
    q-integer [N]_q; both are omega_N, the variance scale under which
    the state's position moments approach the arcsine law.  Explicit
    sequences carry no such asymptotic rule, so their canonical scale
    is 1 and callers override it when they want something else.
    """
    n = state_index(state)
    if n < 1:
        raise ValueError(f"canonical scale needs a state level >= 1, got {n}")
    if seq.kind == "explicit":
        return Fraction(1)
    return seq.omega(n)


@dataclass(frozen=True)
class NumberState:
    """The N-th number state (orthonormal basis vector at level N)."""

    index: int

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError(f"number state index must be >= 0, got {self.index}")


def state_index(state: Union[int, NumberState]) -> int:
    """Normalize an int-or-NumberState argument to a validated level."""
    n = state.index if isinstance(state, NumberState) else state
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"state must be an int or NumberState, got {state!r}")
    if n < 0:
        raise ValueError(f"number state index must be >= 0, got {n}")
    return n


@dataclass(frozen=True)
class ScaledObservable:
    """A Jacobi sequence together with a positive variance scale s.

    Represents the position observable divided by sqrt(s); its order-n
    moment is the unscaled moment divided by s^(n/2).
    """

    jacobi: JacobiSequence
    scale: Fraction

    def __post_init__(self) -> None:
        if self.scale <= 0:
            raise ValueError(f"scale must be positive, got {self.scale}")

    @staticmethod
    def canonical(
        seq: JacobiSequence, state: Union[int, NumberState]
    ) -> "ScaledObservable":
        return ScaledObservable(jacobi=seq, scale=canonical_scale(seq, state))


class Letter(IntEnum):
    """A ladder letter; annihilation sorts before creation."""

    ANNIHILATE = 0
    CREATE = 1


_LETTER_CHARS = {Letter.ANNIHILATE: "a", Letter.CREATE: "c"}
_CHAR_LETTERS = {"a": Letter.ANNIHILATE, "c": Letter.CREATE}


@dataclass(frozen=True)
class LadderWord:
    """A finite word in the ladder letters, applied rightmost letter first."""

    letters: tuple[Letter, ...]

    def __post_init__(self) -> None:
        if not self.letters:
            raise ValueError("ladder words must have length >= 1")
        for ch in self.letters:
            if not isinstance(ch, Letter):
                raise ValueError(f"not a ladder letter: {ch!r}")

    @staticmethod
    def from_string(text: str) -> "LadderWord":
        """Parse a word from 'a'/'c' characters, e.g. ``"acca"``."""
        try:
            return LadderWord(tuple(_CHAR_LETTERS[ch] for ch in text))
        except KeyError as exc:
            raise ValueError(f"word characters must be 'a' or 'c': {text!r}") from exc

    def to_string(self) -> str:
        return "".join(_LETTER_CHARS[ch] for ch in self.letters)

    def is_balanced(self) -> bool:
        """True when the word has equally many annihilators and creators."""
        ups = sum(1 for ch in self.letters if ch is Letter.CREATE)
        return 2 * ups == len(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)


def enumerate_balanced_words(m: int) -> list[LadderWord]:
    """All length-2m words with m annihilators and m creators.

    Returned in lexicographic order with ANNIHILATE < CREATE; there are
    C(2m, m) of them.  m is capped at WORD_ORDER_CAP.
    """
    if m < 1:
        raise ValueError(f"balanced words need m >= 1, got {m}")
    if m > WORD_ORDER_CAP:
        raise CapExceeded(
            f"balanced-word half-length {m} exceeds the cap {WORD_ORDER_CAP}"
        )
    words = []
    for spots in itertools.combinations(range(2 * m), m):
        letters = [Letter.CREATE] * (2 * m)
        for i in spots:
            letters[i] = Letter.ANNIHILATE
        words.append(LadderWord(tuple(letters)))
    return words
