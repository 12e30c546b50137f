"""Exact shifted correlations of pattern sign sequences.

Every value here is an exact rational.  The average of a(n) a(n + m)
over a residue class r mod base**level converges, and the limits obey a
one-step recursion along the digit kernel of the sequence: splitting
off the least significant digit maps the class r at shift m to the
classes feeding r at shift m floordiv base, possibly bumped by a carry.
Shift 1 values form a triangular system once classes are ordered by the
number of trailing (base - 1) digits in the class index, closed by a
single fixed point at the all-(base - 1) class.  The full correlation
at shift m is the plain average of the class-restricted values.

All restricted values carry the conventional scaling by base**level, so
the restricted value at shift 0 is exactly 1 on every class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .pattern_sets import PatternSet, PeriodicFactor, periodic_factor, _operating_level

ONE = Fraction(1)


def _trailing_top_digits(index: int, base: int, level: int) -> int:
    """How many trailing digits of the class index equal base - 1."""
    for j in range(level):
        if index % base != base - 1:
            return j
        index //= base
    return level


@dataclass
class CorrelationTable:
    """Shift-1 restricted correlations of one set at one operating length.

    entries[r] is the exact limit of base**level times the average of
    a(n) a(n + 1) over n = r mod base**level.  General shifts reduce to
    these through a memoized recursion keyed on (class, shift).
    """

    base: int
    level: int
    factor: PeriodicFactor
    entries: tuple[Fraction, ...]
    _memo: dict[tuple[int, int], Fraction] = field(
        default_factory=dict, repr=False, compare=False
    )

    @property
    def modulus(self) -> int:
        return self.base**self.level

    def restricted(self, residue: int, shift: int) -> Fraction:
        """The restricted correlation on one class at one shift."""
        modulus = self.modulus
        if not 0 <= residue < modulus:
            raise ValueError(f"residue must lie in [0, {modulus}), got {residue}")
        if shift < 0:
            raise ValueError("shift must be nonnegative")
        if shift == 0:
            return ONE
        if shift == 1:
            return self.entries[residue]
        key = (residue, shift)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        base = self.base
        hv = self.factor.values
        reduced, digit = divmod(shift, base)
        child_shift = reduced + (digit + residue % base) // base
        stride = modulus // base
        head = residue // base
        total = sum(
            self.restricted(stride * d + head, child_shift) for d in range(base)
        )
        value = Fraction(hv[residue] * hv[(residue + shift) % modulus], base) * total
        self._memo[key] = value
        return value

    def correlation(self, shift: int) -> Fraction:
        """The full correlation at one shift: the average over all classes."""
        if shift < 0:
            raise ValueError("shift must be nonnegative")
        if shift == 0:
            return ONE
        modulus = self.modulus
        return sum(self.restricted(r, shift) for r in range(modulus)) / modulus


def bootstrap(pattern_set: PatternSet, level: Union[int, None] = None) -> CorrelationTable:
    """Solve for all shift-1 restricted correlations of one pattern set.

    Classes whose index does not end in the top digit feed directly off
    the sequence ratio; classes ending in j top digits average the j - 1
    ones; the all-top-digits class wraps around the modulus and is
    solved as a one-variable fixed point.
    """
    lvl = _operating_level(pattern_set, level)
    base = pattern_set.base
    modulus = base**lvl
    h = periodic_factor(pattern_set, lvl)
    hv = h.values
    stride = modulus // base
    entries: list[Fraction] = [ONE] * modulus
    order = sorted(range(modulus - 1), key=lambda r: _trailing_top_digits(r, base, lvl))
    for r in order:
        sign = hv[r] * hv[(r + 1) % modulus]
        if _trailing_top_digits(r, base, lvl) == 0:
            entries[r] = Fraction(sign)
        else:
            head = r // base
            total = sum(entries[stride * d + head] for d in range(base))
            entries[r] = Fraction(sign, base) * total
    # The all-top-digits class appears among its own children; its
    # remaining children all have one fewer trailing top digit and are
    # already solved, leaving a linear equation in one unknown.
    wrap = hv[modulus - 1] * hv[0]
    tail = sum(entries[stride * (d + 1) - 1] for d in range(base - 1))
    entries[modulus - 1] = Fraction(wrap, 1) * tail / (base - wrap)
    return CorrelationTable(base, lvl, h, tuple(entries))


def restricted_correlation(
    pattern_set: PatternSet, residue: int, shift: int, level: Union[int, None] = None
) -> Fraction:
    """Convenience wrapper: bootstrap, then evaluate one restricted value."""
    return bootstrap(pattern_set, level).restricted(residue, shift)


def correlation(
    pattern_set: PatternSet, shift: int, level: Union[int, None] = None
) -> Fraction:
    """Convenience wrapper: bootstrap, then evaluate one full correlation.

    Callers sweeping many shifts should hold on to a bootstrap table
    instead, so the memo is shared across the sweep.
    """
    return bootstrap(pattern_set, level).correlation(shift)
