"""Admissible pattern sets and the kernel structure of their sign sequences.

A pattern set A over base k is a finite set of digit words, none of
which is a block of zeros.  It defines the sign sequence

    a(n) = (-1) ** c(n)

where c(n) totals the padded occurrence counts of the members of A in
n.  Two rewrite systems bring A to canonical shape without changing the
sequence: one removes leading zeros, the other equalizes word lengths.
Both rest on the identity that the count of v equals the summed counts
of the one-digit-longer words d.v over all digits d.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Union

from .words import Word, check_base, count_in_integer, count_set, expand, value_of


class ReconstructionError(ValueError):
    """The probed sequence is not pattern counting at the requested length."""


def _sorted_words(items: Iterable[Word]) -> tuple[Word, ...]:
    return tuple(sorted(set(items), key=Word.sort_key))


@dataclass(frozen=True)
class PatternSet:
    """A finite admissible set of digit words over one base.

    Admissible means no member is empty or a block of zeros.  Words are
    stored sorted in shortlex order, so equal sets compare equal and the
    textual form is canonical.
    """

    base: int
    words: tuple[Word, ...]

    def __post_init__(self) -> None:
        check_base(self.base)
        words = _sorted_words(self.words)
        object.__setattr__(self, "words", words)
        for w in words:
            if w.base != self.base:
                raise ValueError(f"word {w} has base {w.base}, set has base {self.base}")
            if w.is_zero:
                raise ValueError(f"word {str(w)!r} is a block of zeros and is not admissible")

    @classmethod
    def of(cls, base: int, items: Iterable[Union[Word, str]]) -> "PatternSet":
        """Build a set from words or digit strings."""
        words = [w if isinstance(w, Word) else Word.parse(w, base) for w in items]
        return cls(base, tuple(words))

    @classmethod
    def parse(cls, text: str, base: int) -> "PatternSet":
        """Parse the comma-separated textual form; the empty string is the empty set."""
        text = text.strip()
        if not text:
            return cls(base, ())
        return cls.of(base, [part.strip() for part in text.split(",")])

    @classmethod
    def from_mask(cls, base: int, length: int, mask: int) -> "PatternSet":
        """Constant-length set from a bitmask indexed by word value.

        Bit v of the mask selects the length `length` word whose value
        is v.  Bit 0 would select the zero block, so it must be clear.
        """
        check_base(base)
        if length < 1:
            raise ValueError("length must be at least 1")
        total = base**length
        if not 0 <= mask < (1 << total):
            raise ValueError("mask out of range for this length")
        if mask & 1:
            raise ValueError("bit 0 selects the zero block, which is not admissible")
        table = _constant_length_words(base, length)
        words = [table[v] for v in range(1, total) if (mask >> v) & 1]
        return cls(base, tuple(words))

    def to_mask(self, length: Union[int, None] = None) -> int:
        """Bitmask of word values; requires every word to have the given length."""
        length = self.length if length is None else length
        mask = 0
        for w in self.words:
            if len(w) != length:
                raise ValueError("to_mask needs a constant-length set")
            mask |= 1 << value_of(w)
        return mask

    @property
    def length(self) -> int:
        """Length of the longest word; 1 for the empty set."""
        return max((len(w) for w in self.words), default=1)

    @property
    def size(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __contains__(self, word: Word) -> bool:
        return word in set(self.words)

    def __xor__(self, other: "PatternSet") -> "PatternSet":
        return symmetric_difference(self, other)

    def __str__(self) -> str:
        return ",".join(str(w) for w in self.words)


@dataclass(frozen=True)
class PeriodicFactor:
    """A periodic sign sequence, stored as one full period of +-1 values."""

    base: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        check_base(self.base)
        values = tuple(self.values)
        object.__setattr__(self, "values", values)
        if not values:
            raise ValueError("a periodic factor needs at least one value")
        for v in values:
            if v not in (-1, 1):
                raise ValueError(f"periodic factor values must be +-1, got {v!r}")

    @property
    def period(self) -> int:
        return len(self.values)

    def __call__(self, n: int) -> int:
        return self.values[n % len(self.values)]

    @classmethod
    def parse(cls, text: str, base: int) -> "PeriodicFactor":
        """Parse a sign string such as "+-" into one period."""
        values = []
        for ch in text:
            if ch == "+":
                values.append(1)
            elif ch == "-":
                values.append(-1)
            else:
                raise ValueError(f"invalid sign {ch!r} in factor {text!r}")
        return cls(base, tuple(values))

    def __str__(self) -> str:
        return "".join("+" if v > 0 else "-" for v in self.values)


# === the sign sequence ===


def evaluate(pattern_set: PatternSet, n: int) -> int:
    """a(n): the parity sign of the total occurrence count at n."""
    return -1 if count_set(pattern_set.words, n) & 1 else 1


def symmetric_difference(first: PatternSet, second: PatternSet) -> PatternSet:
    """Symmetric difference; the sequences multiply pointwise."""
    if first.base != second.base:
        raise ValueError("cannot combine sets over different bases")
    return PatternSet(first.base, tuple(set(first.words) ^ set(second.words)))


@lru_cache(maxsize=1 << 15)
def _occurrence_parity_bits(digits: tuple[int, ...], base: int, level: int) -> int:
    """Bit n holds the parity of the count of one word in n, for n < base**level.

    Cached per word so that sweeps over many sets sharing a word pool,
    as in a census, pay for each word only once.
    """
    word = Word(base, digits)
    bits = 0
    for n in range(base**level):
        if count_in_integer(word, n) & 1:
            bits |= 1 << n
    return bits


def _sign_table(pattern_set: PatternSet, level: int) -> list[int]:
    """a(n) for all n < base**level, via cached per-word parities."""
    parity = 0
    for w in pattern_set.words:
        parity ^= _occurrence_parity_bits(w.digits, pattern_set.base, level)
    return [-1 if (parity >> n) & 1 else 1 for n in range(pattern_set.base**level)]


@lru_cache(maxsize=None)
def _constant_length_words(base: int, length: int) -> tuple[Word, ...]:
    """All words of one length, indexed by value."""
    out = []
    for v in range(base**length):
        digits = []
        x = v
        for _ in range(length):
            x, d = divmod(x, base)
            digits.append(d)
        digits.reverse()
        out.append(Word(base, tuple(digits)))
    return tuple(out)


# === canonical forms ===


def remove_leading_zeros(pattern_set: PatternSet) -> PatternSet:
    """The unique leading-zero-free set with the same sign sequence.

    A word 0.v counts exactly as the whole layer {d.v : d digit} plus v
    counts, so toggling that layer together with v eliminates 0.v
    without touching the sequence.  The rewrite never increases word
    lengths and terminates because the weight of leading zeros drops.
    """
    base = pattern_set.base
    words = set(pattern_set.words)
    while True:
        flagged = sorted((w for w in words if w.digits[0] == 0), key=Word.sort_key)
        if not flagged:
            break
        tail = flagged[0].digits[1:]
        toggle = {Word(base, (d,) + tail) for d in range(base)}
        toggle.add(Word(base, tail))
        words ^= toggle
    return PatternSet(base, tuple(words))


def to_constant_length(pattern_set: PatternSet, length: int) -> PatternSet:
    """The unique equivalent set whose words all have the given length.

    Each step replaces one shortest word v by the layer {d.v : d digit},
    again without changing the sequence.  Leading zeros are allowed in
    the result; the zero block never appears because v is admissible.
    """
    if length < pattern_set.length:
        raise ValueError(
            f"target length {length} is below the longest word length {pattern_set.length}"
        )
    base = pattern_set.base
    words = set(pattern_set.words)
    while True:
        short = sorted((w for w in words if len(w) < length), key=Word.sort_key)
        if not short:
            break
        v = short[0]
        toggle = {Word(base, (d,) + v.digits) for d in range(base)}
        toggle.add(v)
        words ^= toggle
    return PatternSet(base, tuple(words))


def is_self_invariant(pattern_set: PatternSet) -> bool:
    """Whether a(base * n) = a(n) for all n.

    This holds exactly when the leading-zero-free form has no word
    ending in 0.
    """
    reduced = remove_leading_zeros(pattern_set)
    return all(w.digits[-1] != 0 for w in reduced.words)


def invariant_decomposition(pattern_set: PatternSet) -> tuple[PatternSet, PeriodicFactor]:
    """Split a(n) = p(n) * b(n) with b self-invariant and p periodic.

    Words ending in 0 are peeled off the leading-zero-free form: the
    difference between v.0 and the layer {v.d : d digit} plus v flips
    the sign exactly on one residue class, which is periodic.  The
    returned factor has period base ** (length - 1).
    """
    base = pattern_set.base
    level = pattern_set.length
    reduced = remove_leading_zeros(pattern_set)
    words = set(reduced.words)
    while True:
        flagged = sorted((w for w in words if w.digits[-1] == 0), key=Word.sort_key)
        if not flagged:
            break
        head = flagged[0].digits[:-1]
        toggle = {Word(base, head + (d,)) for d in range(base)}
        toggle.add(Word(base, head))
        words ^= toggle
    invariant = PatternSet(base, tuple(words))
    period = base ** (level - 1)
    values = tuple(
        evaluate(pattern_set, n) * evaluate(invariant, n) for n in range(period)
    )
    return invariant, PeriodicFactor(base, values)


# === kernel structure ===


def _operating_level(pattern_set: PatternSet, level: Union[int, None]) -> int:
    if level is None:
        return pattern_set.length
    if level < pattern_set.length:
        raise ValueError(
            f"operating length {level} is below the longest word length {pattern_set.length}"
        )
    return level


def periodic_factor(pattern_set: PatternSet, level: Union[int, None] = None) -> PeriodicFactor:
    """The ratio h(n) = a(n) / a(n floordiv base), which has period base**level.

    The sequence then satisfies a(n) = h(n mod base**level) * a(n floordiv base)
    for every n, which is the one-step recursion everything else builds on.
    """
    lvl = _operating_level(pattern_set, level)
    base = pattern_set.base
    signs = _sign_table(pattern_set, lvl)
    values = tuple(signs[n] * signs[n // base] for n in range(base**lvl))
    return PeriodicFactor(base, values)


def kernel_quotient(pattern_set: PatternSet, alpha: int, shift: int) -> PeriodicFactor:
    """The quotient a(base**alpha * n + shift) / a(n) as a periodic factor.

    The quotient has period base ** (length - 1) in n, for any alpha >= 0
    and 0 <= shift < base**alpha.
    """
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    base = pattern_set.base
    if not 0 <= shift < base**alpha:
        raise ValueError(f"shift must lie in [0, {base**alpha}), got {shift}")
    period = base ** (pattern_set.length - 1)
    step = base**alpha
    values = tuple(
        evaluate(pattern_set, step * n + shift) * evaluate(pattern_set, n)
        for n in range(period)
    )
    return PeriodicFactor(base, values)


def reconstruct_pattern_set(
    sequence: Callable[[int], int], length: int, base: int
) -> PatternSet:
    """Recover the constant-length pattern set generating a sign sequence.

    A word of the given length belongs to the result exactly when the
    sequence flips between the word's value and the value of the word
    with its last digit dropped.  The reconstruction is then checked
    against the sequence on [0, base**(length + 2)); a mismatch means no
    pattern set of this length generates the sequence.
    """
    check_base(base)
    if length < 1:
        raise ValueError("length must be at least 1")
    if sequence(0) != 1:
        raise ReconstructionError("a pattern sign sequence starts with +1 at n = 0")
    table = _constant_length_words(base, length)
    words = []
    for v in range(1, base**length):
        if sequence(v) not in (-1, 1):
            raise ReconstructionError(f"sequence value at {v} is not a sign")
        if sequence(v) == -sequence(v // base):
            words.append(table[v])
    candidate = PatternSet(base, tuple(words))
    for n in range(base ** (length + 2)):
        if evaluate(candidate, n) != sequence(n):
            raise ReconstructionError(
                f"sequence is not pattern counting at length {length}: "
                f"first mismatch at n = {n}"
            )
    return candidate
