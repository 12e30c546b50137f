"""Classification tools: censuses, the saturation test, and twists.

The census sweeps every candidate pattern set in a family through the
decision procedure and tallies the noncorrelated ones.  Saturation is
the combinatorial property behind them: windows of fixed interior agree
in exactly half of the leading digits for every pair of trailing
digits, which is the same as a family of normalized Hadamard matrices.
Twisting multiplies a sequence by a periodic sign and rebuilds the
pattern set of the product.
"""

from __future__ import annotations

import itertools
import multiprocessing
import random
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .decider import InternalConsistencyError, decide
from .pattern_sets import (
    PatternSet,
    PeriodicFactor,
    ReconstructionError,
    evaluate,
    reconstruct_pattern_set,
    remove_leading_zeros,
)
from .words import Word, check_base

SELECTIONS = ("all", "self-invariant")


# === saturation ===


def saturation_violation(
    pattern_set: PatternSet,
) -> Optional[tuple[Word, int, int]]:
    """First witness against saturation, or None when saturated.

    The set is brought to its leading-zero-free form first; that form
    must have no word ending in 0 and a longest word of length at least
    2, otherwise saturation is not defined and a ValueError comes back.
    Only words of the full length take part: a violation is an interior
    word u plus two distinct trailing digits whose full-length windows
    i.u.j agree for a number of leading digits i other than half the
    base.
    """
    reduced = remove_leading_zeros(pattern_set)
    base = reduced.base
    length = reduced.length
    if length < 2:
        raise ValueError("saturation is defined from length 2 on")
    if any(w.digits[-1] == 0 for w in reduced.words):
        raise ValueError("saturation needs a self-invariant set")
    members = {w.digits for w in reduced.words if len(w) == length}
    half, odd = divmod(base, 2)
    for u in itertools.product(range(base), repeat=length - 2):
        for first in range(base):
            for second in range(first + 1, base):
                hits = sum(
                    1
                    for i in range(base)
                    if ((i,) + u + (first,) in members)
                    != ((i,) + u + (second,) in members)
                )
                if odd or hits != half:
                    return (Word(base, u), first, second)
    return None


def is_saturated(pattern_set: PatternSet) -> bool:
    """Whether every interior window family is a normalized Hadamard matrix."""
    return saturation_violation(pattern_set) is None


# === Hadamard matrices and saturated families ===


@dataclass(frozen=True)
class HadamardMatrix:
    """A square +-1 matrix with pairwise orthogonal columns."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if n < 1:
            raise ValueError("a Hadamard matrix needs at least one row")
        for row in rows:
            if len(row) != n:
                raise ValueError("a Hadamard matrix must be square")
            for x in row:
                if x not in (-1, 1):
                    raise ValueError("entries must be +-1")
        for a in range(n):
            for b in range(a + 1, n):
                if sum(rows[i][a] * rows[i][b] for i in range(n)) != 0:
                    raise ValueError(f"columns {a} and {b} are not orthogonal")

    @property
    def dimension(self) -> int:
        return len(self.entries)

    @property
    def is_normalized(self) -> bool:
        """First row and first column all +1."""
        n = self.dimension
        return all(self.entries[0][j] == 1 for j in range(n)) and all(
            self.entries[i][0] == 1 for i in range(n)
        )


def sylvester_hadamard(order: int) -> HadamardMatrix:
    """The doubling construction; order must be a power of two."""
    if order < 1 or order & (order - 1):
        raise ValueError(f"order must be a power of two, got {order}")
    rows = [[1]]
    while len(rows) < order:
        rows = [row + row for row in rows] + [
            row + [-x for x in row] for row in rows
        ]
    return HadamardMatrix(tuple(tuple(row) for row in rows))


def saturated_family_from_hadamard(matrix: HadamardMatrix, length: int) -> PatternSet:
    """The constant-length saturated set with one matrix at every interior.

    The matrix dimension becomes the base; entry (i, j) = -1 puts the
    word i.u.j into the set for every interior u.  The matrix must be
    normalized, otherwise the set would pick up leading zeros or
    trailing zeros.
    """
    base = matrix.dimension
    check_base(base)
    if length < 2:
        raise ValueError("saturated families start at length 2")
    if not matrix.is_normalized:
        raise ValueError("the matrix must be normalized")
    words = [
        Word(base, (i,) + u + (j,))
        for u in itertools.product(range(base), repeat=length - 2)
        for i in range(base)
        for j in range(base)
        if matrix.entries[i][j] < 0
    ]
    return PatternSet(base, tuple(words))


def random_saturated_superset(length: int, rng: random.Random) -> PatternSet:
    """Random binary saturated set: the full interior layer plus extras.

    Over base 2 saturation says exactly that every word 1.u.1 of the
    full length is present; any additional shorter words that begin and
    end in 1 keep the set self-invariant and leading-zero free, hence
    saturated.
    """
    if length < 2:
        raise ValueError("saturated sets start at length 2")
    words = [
        Word(2, (1,) + u + (1,))
        for u in itertools.product(range(2), repeat=length - 2)
    ]
    pool: list[Word] = [Word(2, (1,))]
    for mid in range(length - 3 + 1):
        pool.extend(
            Word(2, (1,) + u + (1,)) for u in itertools.product(range(2), repeat=mid)
        )
    for w in pool:
        if rng.random() < 0.5:
            words.append(w)
    return PatternSet(2, tuple(words))


def random_hadamard_family(base: int, length: int, rng: random.Random) -> PatternSet:
    """Random saturated set from independent permuted doubling matrices.

    Each interior word u gets its own matrix: rows and columns of the
    doubling matrix are shuffled while row 0 and column 0 stay put, so
    every matrix stays a normalized Hadamard matrix.
    """
    check_base(base)
    if base & (base - 1):
        raise ValueError(f"base must be a power of two, got {base}")
    if length < 2:
        raise ValueError("saturated families start at length 2")
    seed = sylvester_hadamard(base).entries
    words = []
    for u in itertools.product(range(base), repeat=length - 2):
        row_order = [0] + rng.sample(range(1, base), base - 1)
        col_order = [0] + rng.sample(range(1, base), base - 1)
        for i in range(base):
            for j in range(base):
                if seed[row_order[i]][col_order[j]] < 0:
                    words.append(Word(base, (i,) + u + (j,)))
    return PatternSet(base, tuple(words))


# === censuses ===


@dataclass
class CensusReport:
    """Aggregate outcome of sweeping one candidate family.

    by_exact_length tallies the noncorrelated sets by the longest word
    length of their leading-zero-free form.  timing holds wall-clock
    statistics per verdict; it is deliberately left out of the
    structured record so that reports are bit-identical whatever the
    worker count or machine speed.
    """

    base: int
    length: int
    selection: str
    candidates: int
    noncorrelated: int
    by_exact_length: dict[int, int]
    peak_stored: int
    total_created: int
    total_expansions: int
    noncorrelated_sets: Optional[list[str]] = None
    timing: Optional[dict[str, dict[str, float]]] = field(default=None, compare=False)

    def to_record(self) -> dict:
        record: dict = {
            "base": self.base,
            "length": self.length,
            "selection": self.selection,
            "candidates": self.candidates,
            "noncorrelated": self.noncorrelated,
            "by_exact_length": {str(k): v for k, v in sorted(self.by_exact_length.items())},
            "peak_stored": self.peak_stored,
            "total_created": self.total_created,
            "total_expansions": self.total_expansions,
        }
        if self.noncorrelated_sets is not None:
            record["noncorrelated_sets"] = list(self.noncorrelated_sets)
        return record


def _census_pool(base: int, length: int, selection: str) -> list[Word]:
    """The word pool whose subsets form the candidate family."""
    if selection == "all":
        return [
            Word(base, digits)
            for digits in itertools.product(range(base), repeat=length)
            if any(digits)
        ]
    pool = [Word(base, (1,))] if length >= 1 else []
    for mid in range(length - 1):
        pool.extend(
            Word(base, (1,) + u + (1,))
            for u in itertools.product(range(base), repeat=mid)
        )
    return sorted(pool, key=Word.sort_key)


def _subset(pool: Sequence[Word], mask: int) -> list[Word]:
    return [w for b, w in enumerate(pool) if (mask >> b) & 1]


def _census_chunk(args: tuple) -> dict:
    base, length, selection, lo, hi, keep = args
    pool = _census_pool(base, length, selection)
    by_exact_length: dict[int, int] = {}
    noncorrelated = 0
    peak = 0
    total_created = 0
    total_expansions = 0
    masks: list[int] = []
    timing = {"correlated": [0, 0.0], "noncorrelated": [0, 0.0]}
    for mask in range(lo, hi):
        candidate = PatternSet(base, tuple(_subset(pool, mask)))
        started = time.perf_counter()
        decision = decide(candidate)
        elapsed = time.perf_counter() - started
        bucket = timing[decision.verdict]
        bucket[0] += 1
        bucket[1] += elapsed
        peak = max(peak, decision.elements_created)
        total_created += decision.elements_created
        total_expansions += decision.expansions
        if decision.noncorrelated:
            noncorrelated += 1
            exact = remove_leading_zeros(candidate).length
            by_exact_length[exact] = by_exact_length.get(exact, 0) + 1
            if keep:
                masks.append(mask)
    return {
        "count": hi - lo,
        "noncorrelated": noncorrelated,
        "by_exact_length": by_exact_length,
        "peak": peak,
        "created": total_created,
        "expansions": total_expansions,
        "masks": masks,
        "timing": timing,
    }


def _run_chunks(chunk_args: list[tuple], workers: int) -> list[dict]:
    if workers <= 1 or len(chunk_args) <= 1:
        return [_census_chunk(args) for args in chunk_args]
    context = multiprocessing.get_context("fork")
    with context.Pool(workers) as pool:
        return pool.map(_census_chunk, chunk_args)


def census(
    base: int,
    length: int,
    selection: str = "all",
    workers: int = 1,
    keep_sets: bool = False,
) -> CensusReport:
    """Sweep a candidate family through the decision procedure.

    selection "all" takes every subset of the nonzero words of the
    given length; "self-invariant" takes every subset of the words of
    length up to the given one that begin and end in 1.  Only base 2 is
    supported: larger bases make even modest lengths astronomically
    wide.  The merge over chunks is deterministic, so reports are
    bit-identical for any worker count.
    """
    if base != 2:
        raise ValueError("the census supports base 2 only")
    if length < 1:
        raise ValueError("length must be at least 1")
    if selection not in SELECTIONS:
        raise ValueError(f"selection must be one of {SELECTIONS}, got {selection!r}")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    pool = _census_pool(base, length, selection)
    total = 1 << len(pool)
    pieces = min(total, max(1, workers) * 4)
    bounds = [total * i // pieces for i in range(pieces + 1)]
    chunk_args = [
        (base, length, selection, bounds[i], bounds[i + 1], keep_sets)
        for i in range(pieces)
    ]
    results = _run_chunks(chunk_args, workers)
    by_exact_length: dict[int, int] = {}
    noncorrelated = 0
    peak = 0
    created = 0
    expansions = 0
    masks: list[int] = []
    timing = {"correlated": {"count": 0, "seconds": 0.0}, "noncorrelated": {"count": 0, "seconds": 0.0}}
    candidates = 0
    for result in results:
        candidates += result["count"]
        noncorrelated += result["noncorrelated"]
        for key, value in result["by_exact_length"].items():
            by_exact_length[key] = by_exact_length.get(key, 0) + value
        peak = max(peak, result["peak"])
        created += result["created"]
        expansions += result["expansions"]
        masks.extend(result["masks"])
        for verdict, (count, seconds) in result["timing"].items():
            timing[verdict]["count"] += count
            timing[verdict]["seconds"] += seconds
    names = None
    if keep_sets:
        names = [str(PatternSet(base, tuple(_subset(pool, mask)))) for mask in masks]
    return CensusReport(
        base=base,
        length=length,
        selection=selection,
        candidates=candidates,
        noncorrelated=noncorrelated,
        by_exact_length=dict(sorted(by_exact_length.items())),
        peak_stored=peak,
        total_created=created,
        total_expansions=expansions,
        noncorrelated_sets=names,
        timing=timing,
    )


# === the equivalence sweep ===


@dataclass
class EquivalenceReport:
    """Outcome of checking saturation against the decision procedure.

    Covers every self-invariant candidate up to the given length.  The
    two length-below-2 candidates (the empty set and {1}) carry no
    saturation notion; for them the sweep expects a correlated verdict,
    which keeps the equivalence exact across the whole family.
    """

    max_length: int
    candidates: int
    noncorrelated_by_length: dict[int, int]
    mismatches: list[str]
    peak_stored: int

    def to_record(self) -> dict:
        return {
            "max_length": self.max_length,
            "candidates": self.candidates,
            "noncorrelated_by_length": {
                str(k): v for k, v in sorted(self.noncorrelated_by_length.items())
            },
            "mismatches": list(self.mismatches),
            "peak_stored": self.peak_stored,
        }


def _equivalence_chunk(args: tuple) -> dict:
    max_length, lo, hi = args
    pool = _census_pool(2, max_length, "self-invariant")
    by_length: dict[int, int] = {}
    mismatches: list[str] = []
    peak = 0
    for mask in range(lo, hi):
        candidate = PatternSet(2, tuple(_subset(pool, mask)))
        if candidate.size == 0 or candidate.length < 2:
            saturated = False
        else:
            saturated = is_saturated(candidate)
        decision = decide(candidate)
        peak = max(peak, decision.elements_created)
        if decision.noncorrelated != saturated:
            mismatches.append(str(candidate))
        if decision.noncorrelated:
            exact = candidate.length
            by_length[exact] = by_length.get(exact, 0) + 1
    return {
        "count": hi - lo,
        "by_length": by_length,
        "mismatches": mismatches,
        "peak": peak,
    }


def check_theorem_c(max_length: int, workers: int = 1) -> EquivalenceReport:
    """Compare saturation with the decided verdict on every candidate.

    Sweeps all subsets of the binary words of length at most max_length
    that begin and end in 1.  Every mismatch would be a counterexample
    to the equivalence between saturation and noncorrelation on
    self-invariant sets, so the mismatch list is expected empty.
    """
    if max_length < 1:
        raise ValueError("max_length must be at least 1")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    pool = _census_pool(2, max_length, "self-invariant")
    total = 1 << len(pool)
    pieces = min(total, max(1, workers) * 4)
    bounds = [total * i // pieces for i in range(pieces + 1)]
    chunk_args = [(max_length, bounds[i], bounds[i + 1]) for i in range(pieces)]
    if workers <= 1 or len(chunk_args) <= 1:
        results = [_equivalence_chunk(args) for args in chunk_args]
    else:
        context = multiprocessing.get_context("fork")
        with context.Pool(workers) as mp_pool:
            results = mp_pool.map(_equivalence_chunk, chunk_args)
    by_length: dict[int, int] = {}
    mismatches: list[str] = []
    peak = 0
    candidates = 0
    for result in results:
        candidates += result["count"]
        for key, value in result["by_length"].items():
            by_length[key] = by_length.get(key, 0) + value
        mismatches.extend(result["mismatches"])
        peak = max(peak, result["peak"])
    return EquivalenceReport(
        max_length=max_length,
        candidates=candidates,
        noncorrelated_by_length=dict(sorted(by_length.items())),
        mismatches=mismatches,
        peak_stored=peak,
    )


# === twisting ===


def twist(pattern_set: PatternSet, factor: PeriodicFactor) -> PatternSet:
    """The pattern set generating the sequence multiplied by a periodic sign.

    The factor must start at +1 and its period must divide
    base ** (length - 1); under those conditions the product is again a
    pattern sign sequence of the same length, and the constant-length
    set generating it comes back.
    """
    base = pattern_set.base
    if factor.base != base:
        raise ValueError("factor base does not match the set")
    if factor(0) != 1:
        raise ValueError("the factor must start at +1")
    length = pattern_set.length
    span = base ** (length - 1)
    if span % factor.period != 0:
        raise ValueError(
            f"factor period {factor.period} must divide {span} at length {length}"
        )

    def twisted(n: int) -> int:
        return evaluate(pattern_set, n) * factor(n)

    try:
        return reconstruct_pattern_set(twisted, length, base)
    except ReconstructionError as exc:
        raise InternalConsistencyError(
            f"twisting left the pattern family unexpectedly: {exc}"
        ) from exc
