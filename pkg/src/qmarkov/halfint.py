"""Exact half-integer arithmetic.

Spin magnitudes, magnetic quantum numbers and register outcomes are all
half-integers (..., -1, -1/2, 0, 1/2, 1, ...).  Storing twice the value
as a plain int keeps every index computation exact; floats never enter
the bookkeeping.
"""

import re
from dataclasses import dataclass
from functools import total_ordering

from .errors import InvalidArgumentError

_HALF_INT_RE = re.compile(r"([+-]?\d+)(/2)?")


@total_ordering
@dataclass(frozen=True)
class HalfInt:
    """A half-integer stored as twice its value (s=1/2 has twice=1)."""

    twice: int

    def __post_init__(self):
        if not isinstance(self.twice, int) or isinstance(self.twice, bool):
            raise InvalidArgumentError(
                f"HalfInt.twice must be an int, got {self.twice!r}"
            )

    @classmethod
    def from_int(cls, value: int) -> "HalfInt":
        return cls(2 * value)

    @classmethod
    def parse(cls, text: str) -> "HalfInt":
        """Parse an exact string form: "2", "-1", "1/2", "-3/2".

        No inner whitespace; the only accepted denominator is a literal 2.
        """
        match = _HALF_INT_RE.fullmatch(text.strip())
        if match is None:
            raise InvalidArgumentError(
                f"not a half-integer string: {text!r} (expected e.g. '2', '1/2', '-3/2')"
            )
        value = int(match.group(1))
        return cls(value if match.group(2) else 2 * value)

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_float(self) -> float:
        return self.twice / 2.0

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self.twice})"

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __add__(self, other):
        if isinstance(other, HalfInt):
            return HalfInt(self.twice + other.twice)
        if isinstance(other, int):
            return HalfInt(self.twice + 2 * other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, HalfInt):
            return HalfInt(self.twice - other.twice)
        if isinstance(other, int):
            return HalfInt(self.twice - 2 * other)
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, HalfInt):
            return self.twice < other.twice
        if isinstance(other, int):
            return self.twice < 2 * other
        return NotImplemented


def check_magnetic_number(s: HalfInt, m: HalfInt) -> None:
    """Validate that m is an allowed projection for spin s.

    Requires |m| <= s and s - m integral (same parity of the doubled
    values).
    """
    if abs(m.twice) > s.twice or (s.twice - m.twice) % 2 != 0:
        raise InvalidArgumentError(f"m={m} is not a valid projection for s={s}")


def m_values(s: HalfInt) -> tuple[HalfInt, ...]:
    """Projection labels for spin s in descending order s, s-1, ..., -s."""
    if s.twice < 0:
        raise InvalidArgumentError(f"spin must be non-negative, got s={s}")
    return tuple(HalfInt(s.twice - 2 * k) for k in range(s.twice + 1))
