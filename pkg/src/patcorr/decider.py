"""Deciding whether every shifted correlation of a sign sequence vanishes.

The decision procedure closes a finite-dimensional space of coefficient
vectors indexed by residue classes mod K = base**level, plus one extra
class for the positive multiples of K.  A vector stored under class q
stands for a linear form in the restricted correlations of the sequence
taken along arguments in that class; its two coefficient blocks hold
the form's weights at shift offsets 0 and 1.  Consuming one input digit
rewrites a form on class q into a single child form shared by all the
classes that feed q, with signs supplied by the sequence ratio and a
carry moving weight between the two offset blocks.

The seeds encode the correlations at shifts 1 .. K.  Whenever a child
lands on the class of 0 alone, the form is evaluated there; a nonzero
value equals K times a full correlation at the shift spelled by the
digits consumed so far, so the sequence is correlated and a witness
comes out.  If instead the space closes with every such evaluation
zero, all correlations vanish: the closure then spans a shift-invariant
space of forms that vanish at 0, and such a space must be trivial.

Exact arithmetic throughout: vectors hold integers, and each element
carries an exact rational scale so evaluations stay exact while the
span tests run on primitive integer rows.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Union

from .correlation import CorrelationTable, bootstrap
from .pattern_sets import PatternSet


class InternalConsistencyError(RuntimeError):
    """A value recomputed along an independent route failed to match."""


@dataclass(frozen=True)
class BasisElement:
    """One stored form: class index, integer coefficients, scale, digit trail.

    coeffs is the flattened pair of blocks (offset 0, then offset 1),
    each of length K, so its total width is 2K.  provenance lists the
    digits consumed so far, least significant first.
    """

    residue: int
    coeffs: tuple[int, ...]
    scale: Fraction
    provenance: tuple[int, ...]


@dataclass(frozen=True)
class Decision:
    """Outcome of the closure, with the work done to reach it.

    For a correlated sequence the witness shift is the smallest shift
    with a nonzero correlation whenever that minimum does not exceed
    K * K; witness_value is the exact correlation there.  The counters
    record stored elements (seeds included) and dequeued expansions.
    """

    noncorrelated: bool
    witness_shift: Optional[int]
    witness_value: Optional[Fraction]
    elements_created: int
    expansions: int

    @property
    def verdict(self) -> str:
        return "noncorrelated" if self.noncorrelated else "correlated"

    def to_record(self) -> dict:
        record: dict = {
            "verdict": self.verdict,
            "elements_created": self.elements_created,
            "expansions": self.expansions,
        }
        if not self.noncorrelated:
            record["witness_shift"] = self.witness_shift
            value = self.witness_value
            record["witness_value"] = f"{value.numerator}/{value.denominator}"
        return record


class ResidueBasis:
    """Per-class integer row spaces kept in reduced echelon form.

    Rows are primitive (content 1, positive pivot) and each row is zero
    at every other row's pivot column, so membership in the span is a
    single reduction pass and the stored shape is canonical.
    """

    def __init__(self, classes: int, width: int):
        if classes < 1 or width < 1:
            raise ValueError("need at least one class and a positive width")
        self._width = width
        # index q in [1, classes] is a plain class; index classes is the
        # positive-multiples class, index 0 stays unused by convention
        self._rows: list[list[tuple[int, list[int]]]] = [[] for _ in range(classes + 1)]

    @property
    def width(self) -> int:
        return self._width

    def rows_in(self, residue: int) -> int:
        return len(self._rows[residue])

    @property
    def total_rows(self) -> int:
        return sum(len(rows) for rows in self._rows)

    def _reduce(self, rows: list[tuple[int, list[int]]], vector: Sequence[int]) -> list[int]:
        v = list(vector)
        for pivot, row in rows:
            c = v[pivot]
            if c:
                p = row[pivot]
                v = [p * a - c * b for a, b in zip(v, row)]
        return v

    def contains(self, residue: int, vector: Sequence[int]) -> bool:
        """Whether the vector already lies in the span stored for a class."""
        return not any(self._reduce(self._rows[residue], vector))

    def insert(self, residue: int, vector: Sequence[int]) -> bool:
        """Reduce against the class rows; store if independent.

        Returns True when the vector enlarged the span.
        """
        if len(vector) != self._width:
            raise ValueError(f"vector width {len(vector)} does not match {self._width}")
        rows = self._rows[residue]
        v = self._reduce(rows, vector)
        for j, x in enumerate(v):
            if x:
                break
        else:
            return False
        _make_primitive(v, j)
        # keep older rows zero at the new pivot
        for pos, (pivot, row) in enumerate(rows):
            c = row[j]
            if c:
                p = v[j]
                merged = [p * a - c * b for a, b in zip(row, v)]
                _make_primitive(merged, pivot)
                rows[pos] = (pivot, merged)
        rows.append((j, v))
        rows.sort(key=lambda item: item[0])
        return True


def _make_primitive(v: list[int], pivot: int) -> None:
    g = 0
    for x in v:
        if x:
            g = gcd(g, x)
    if v[pivot] < 0:
        g = -g
    if g not in (0, 1):
        for idx, x in enumerate(v):
            v[idx] = x // g


def witness_from_provenance(digits: Sequence[int], base: int) -> int:
    """The shift spelled by consumed digits, least significant first."""
    value = 0
    for d in reversed(digits):
        value = value * base + d
    return value


def evaluate_at_zero(
    coeffs: Sequence[int], scale: Fraction, table: CorrelationTable
) -> Fraction:
    """Value of a form on the class holding 0 alone.

    Restricted values at shift offset 0 are all exactly 1, so the first
    block contributes its plain sum; the second block pairs with the
    shift-1 table.
    """
    modulus = table.modulus
    total = Fraction(sum(coeffs[:modulus]))
    for r in range(modulus):
        c = coeffs[modulus + r]
        if c:
            total += c * table.entries[r]
    return scale * total


def expand_element(
    element: BasisElement, table: CorrelationTable
) -> tuple[list[BasisElement], Optional[Fraction]]:
    """One closure step: consume the least digit of the element's class.

    Returns the child elements for the nonzero target classes, in
    ascending class order, together with the form's value on the class
    of 0 when that class was reached (only classes below the base reach
    it).  All children share one coefficient vector; when the zero class
    is reached the same vector also continues on the positive-multiples
    class, because the residue class splits into the point 0 and the
    positive multiples.
    """
    base = table.base
    modulus = table.modulus
    stride = modulus // base
    hv = table.factor.values
    q = element.residue
    digit = q % base
    w = element.coeffs
    child = [0] * (2 * modulus)
    for offset in (0, 1):
        block = offset * modulus
        for r in range(modulus):
            c = w[block + r]
            if not c:
                continue
            if hv[r] * hv[(r + q + offset) % modulus] < 0:
                c = -c
            carry = (digit + offset + r % base) // base
            target = carry * modulus + r // base
            for d in range(base):
                child[target + d * stride] += c
    scale = element.scale / base
    g = 0
    for x in child:
        if x:
            g = gcd(g, x)
    if g > 1:
        child = [x // g for x in child]
        scale *= g
    provenance = element.provenance + (digit,)
    head = q // base
    targets = [stride * d + head for d in range(base)]
    point_value: Optional[Fraction] = None
    if targets[0] == 0:
        point_value = evaluate_at_zero(child, scale, table)
        # the zero part of the class splits off; what remains of the
        # class is exactly the positive multiples of the modulus
        targets = targets[1:] + [modulus]
    coeffs = tuple(child)
    children = [
        BasisElement(target, coeffs, scale, provenance) for target in targets
    ]
    return children, point_value


def decide(pattern_set: PatternSet, level: Union[int, None] = None) -> Decision:
    """Decide whether every shifted correlation of the sequence vanishes.

    Runs the closure breadth first so that witnesses surface in order of
    their digit count.  Every correlated verdict is cross-checked: the
    evaluated form value must equal K times the independently computed
    exact correlation at the witness shift, and the reported witness is
    refined to the smallest shift with a nonzero correlation (capped at
    K * K sweeps).
    """
    table = bootstrap(pattern_set, level)
    base = table.base
    modulus = table.modulus
    width = 2 * modulus
    basis = ResidueBasis(modulus, width)
    queue: deque[BasisElement] = deque()
    seed = (1,) * modulus + (0,) * modulus
    created = 0
    for t in range(1, modulus + 1):
        basis.insert(t, seed)
        queue.append(BasisElement(t, seed, Fraction(1), ()))
        created += 1
    expansions = 0
    while queue:
        element = queue.popleft()
        expansions += 1
        children, point_value = expand_element(element, table)
        if point_value is not None and point_value != 0:
            provenance = element.provenance + (element.residue % base,)
            return _correlated_decision(
                table, provenance, point_value, created, expansions
            )
        for child in children:
            if basis.insert(child.residue, child.coeffs):
                queue.append(child)
                created += 1
    capacity = 2 * modulus * (modulus + 1)
    if created > capacity:
        raise InternalConsistencyError(
            f"stored {created} elements, above the capacity bound {capacity}"
        )
    return Decision(True, None, None, created, expansions)


def _correlated_decision(
    table: CorrelationTable,
    provenance: tuple[int, ...],
    point_value: Fraction,
    created: int,
    expansions: int,
) -> Decision:
    base = table.base
    modulus = table.modulus
    shift = witness_from_provenance(provenance, base)
    expected = modulus * table.correlation(shift)
    if point_value != expected:
        raise InternalConsistencyError(
            f"form value {point_value} at shift {shift} disagrees with "
            f"{modulus} times the exact correlation {table.correlation(shift)}"
        )
    cap = min(shift, modulus * modulus)
    for m in range(1, cap + 1):
        value = table.correlation(m)
        if value != 0:
            return Decision(False, m, value, created, expansions)
    return Decision(False, shift, table.correlation(shift), created, expansions)
