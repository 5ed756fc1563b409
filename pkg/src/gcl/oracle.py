"""Brute-force cross-check of the lattice laws over every generalized attribute.

The ground truth here never touches the lattice formulas: each function is
evaluated on every object row to get its object set, and intents are formed
by grouping functions with equal object sets. The structure from
:func:`gcl.lattice.build` is then compared against those groups.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .algebra import Alphabet, AttrFn, format_dnf, iter_functions
from .context import FormalContext
from .errors import CapacityError
from .lattice import GclStructure
from .masks import ExtentMask

MAX_ORACLE_WIDTH = 4
EXHAUSTIVE_PAIR_WIDTH = 3
DEFAULT_PAIRS = 100_000
MAX_REPORTED = 20

PARTITION = "partition"
BOUNDS = "bounds"
CARDINALITY = "cardinality"
IMPLICATION = "implication"
CLOSURE = "closure"
ORDER = "order"
ALL_LAWS = (PARTITION, BOUNDS, CARDINALITY, IMPLICATION, CLOSURE, ORDER)


@dataclass
class OracleReport:
    alphabet_size: int
    functions_checked: int = 0
    pairs_checked: int = 0
    pair_mode: str = ""
    seed: int | None = None
    laws: tuple[str, ...] = ()
    violations: list[tuple[str, str]] = field(default_factory=list)
    violation_counts: dict[str, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def flag(self, law: str, example: str) -> None:
        n = self.violation_counts.get(law, 0)
        self.violation_counts[law] = n + 1
        if n < MAX_REPORTED:
            self.violations.append((law, example))

    def merge(self, other: "OracleReport") -> "OracleReport":
        merged = OracleReport(
            self.alphabet_size,
            self.functions_checked + other.functions_checked,
            self.pairs_checked + other.pairs_checked,
            self.pair_mode or other.pair_mode,
            self.seed,
            tuple(dict.fromkeys(self.laws + other.laws)),
        )
        for law, example in self.violations + other.violations:
            merged.flag(law, example)
        return merged

    def as_dict(self) -> dict:
        return {
            "alphabet_size": self.alphabet_size,
            "functions_checked": self.functions_checked,
            "pairs_checked": self.pairs_checked,
            "pair_mode": self.pair_mode,
            "seed": self.seed,
            "laws": list(self.laws),
            "passed": self.passed,
            "violation_counts": dict(self.violation_counts),
            "violations": [list(v) for v in self.violations],
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2)

    def summary(self) -> str:
        lines = [
            f"alphabet size: {self.alphabet_size}",
            f"functions checked: {self.functions_checked}",
            f"pairs checked: {self.pairs_checked} ({self.pair_mode}, seed {self.seed})",
            f"laws: {', '.join(self.laws)}",
            "result: PASS" if self.passed else "result: FAIL",
        ]
        for law, example in self.violations:
            lines.append(f"  violation [{law}]: {example}")
        return "\n".join(lines)


def enumerate_mstar(alphabet: Alphabet | int) -> Iterator[AttrFn]:
    """Every generalized attribute over a small alphabet, ascending by truth table."""
    if isinstance(alphabet, int):
        alphabet = Alphabet(tuple(f"m{j}" for j in range(alphabet)))
    if alphabet.width > MAX_ORACLE_WIDTH:
        raise CapacityError(f"|M|={alphabet.width} is above the oracle bound of {MAX_ORACLE_WIDTH}")
    return iter_functions(alphabet)


def object_extent(ctx: FormalContext, mu: AttrFn) -> int:
    """``mu^R`` as a bit mask over object indices, by evaluating every row."""
    out = 0
    for i, row in enumerate(ctx.rows):
        if mu(row):
            out |= 1 << i
    return out


def _describe_objects(ctx: FormalContext, bits: int) -> str:
    return "{" + ",".join(ctx.sort_objects(ctx.object_names(bits))) + "}"


def verify(
    gcl: GclStructure,
    laws: Iterable[str] | None = None,
    *,
    seed: int = 0,
    pairs: int = DEFAULT_PAIRS,
    max_width: int = MAX_ORACLE_WIDTH,
) -> OracleReport:
    """Check the selected laws for every function and for pairs of functions.

    Pairs are exhaustive up to three attributes and uniformly sampled (with
    ``seed``) above that. Violations are collected, never raised.
    """
    laws = tuple(ALL_LAWS if laws is None else laws)
    unknown = set(laws) - set(ALL_LAWS)
    if unknown:
        raise ValueError(f"unknown laws {sorted(unknown)}")
    ctx = gcl.context
    ab = gcl.alphabet
    if ab.width > max_width:
        raise CapacityError(f"|M|={ab.width} is above the oracle bound of {max_width}")

    report = OracleReport(ab.width, seed=seed, laws=laws)
    fns = list(enumerate_mstar(ab))
    report.functions_checked = len(fns)
    extents = [object_extent(ctx, mu) for mu in fns]

    groups: dict[int, list[int]] = defaultdict(list)
    for idx, ext in enumerate(extents):
        groups[ext].append(idx)
    n_classes = len(set(ctx.rows))

    eta_cache: dict[int, AttrFn] = {}
    rho_cache: dict[int, AttrFn] = {}

    def eta(bits: int) -> AttrFn:
        if bits not in eta_cache:
            eta_cache[bits] = gcl.eta(ExtentMask(bits, gcl.n_F))
        return eta_cache[bits]

    def rho(bits: int) -> AttrFn:
        if bits not in rho_cache:
            rho_cache[bits] = gcl.rho(ExtentMask(bits, gcl.n_F))
        return rho_cache[bits]

    # class mask of each group's object set, read off the quotient
    group_mask: dict[int, int] = {}
    for ext in groups:
        group_mask[ext] = gcl.quotient.mask_of(ctx.object_names(ext)).bits

    if PARTITION in laws:
        if len(groups) != 1 << n_classes:
            report.flag(PARTITION, f"{len(groups)} distinct object sets, expected 2^{n_classes}")
        if gcl.n_F != n_classes:
            report.flag(PARTITION, f"n_F={gcl.n_F} but the rows form {n_classes} classes")
        bounds_to_masks: dict[tuple[int, int], list[int]] = defaultdict(list)
        for bits in range(1 << gcl.n_F):
            bounds_to_masks[(eta(bits).bits, rho(bits).bits)].append(bits)
        for idx, mu in enumerate(fns):
            hits = bounds_to_masks.get((gcl.closure(mu).bits, gcl.coclosure(mu).bits), [])
            expected = group_mask[extents[idx]]
            if hits != [expected]:
                report.flag(
                    PARTITION,
                    f"{format_dnf(mu)} with objects {_describe_objects(ctx, extents[idx])} "
                    f"lands in intents {[str(ExtentMask(h, gcl.n_F)) for h in hits]}",
                )
            elif gcl.extent_of(mu).bits != expected:
                report.flag(PARTITION, f"extent of {format_dnf(mu)} decoded wrongly")

    if BOUNDS in laws:
        one, zero = gcl.one_eta, gcl.zero_rho
        for ext, members in groups.items():
            lower = fns[members[0]].bits
            upper = 0
            for idx in members:
                lower &= fns[idx].bits
                upper |= fns[idx].bits
            bits = group_mask[ext]
            lo, hi = eta(bits), rho(bits)
            where = _describe_objects(ctx, ext)
            if lo.bits != lower or hi.bits != upper:
                report.flag(BOUNDS, f"intent of {where}: bounds differ from the grouped min/max")
            if hi != (lo | zero) or lo != (hi & one):
                report.flag(BOUNDS, f"intent of {where}: bound exchange fails")
            if (hi & ~lo) != zero or (~hi | lo) != one:
                report.flag(BOUNDS, f"intent of {where}: interval law fails")
            for idx in members:
                if not (lo <= fns[idx] <= hi):
                    report.flag(BOUNDS, f"{format_dnf(fns[idx])} outside its intent interval")

    if CARDINALITY in laws:
        expected_size = 1 << gcl.intent_exponent
        for ext, members in groups.items():
            if len(members) != expected_size:
                report.flag(
                    CARDINALITY,
                    f"intent of {_describe_objects(ctx, ext)} has {len(members)} members, "
                    f"expected {expected_size}",
                )

    pair_laws = [law for law in (IMPLICATION, CLOSURE, ORDER) if law in laws]
    if pair_laws:
        _check_pairs(gcl, fns, extents, group_mask, eta, pair_laws, report, seed, pairs)
    return report


def _check_pairs(gcl, fns, extents, group_mask, eta, pair_laws, report, seed, n_pairs) -> None:
    ctx = gcl.context
    n = len(fns)
    if gcl.alphabet.width <= EXHAUSTIVE_PAIR_WIDTH:
        left, right = (a.ravel() for a in np.meshgrid(np.arange(n), np.arange(n), indexing="ij"))
        report.pair_mode = "exhaustive"
    else:
        rng = np.random.default_rng(seed)
        left = rng.integers(0, n, size=n_pairs)
        right = rng.integers(0, n, size=n_pairs)
        report.pair_mode = "sampled"
    report.pairs_checked = len(left)

    # every table fits in 16 bits at this width; object sets may not fit 64 bits
    bits = np.array([f.bits for f in fns], dtype=np.int64)
    clo = np.array([gcl.closure(f).bits for f in fns], dtype=np.int64)
    coclo = np.array([gcl.coclosure(f).bits for f in fns], dtype=np.int64)
    cls = np.array([group_mask[e] for e in extents], dtype=np.int64)
    obj = np.array(extents, dtype=object)

    def sub(a, b):
        return (a & ~b) == 0

    b1, b2 = bits[left], bits[right]
    c1, c2 = cls[left], cls[right]
    # object-set inclusion computed from the raw object sets
    o1, o2 = obj[left], obj[right]
    truth_sub = np.fromiter(((x & ~y) == 0 for x, y in zip(o1, o2)), dtype=bool, count=len(left))

    def report_bad(law, mask, fmt):
        for t in np.flatnonzero(mask)[:MAX_REPORTED]:
            report.flag(law, fmt(int(left[t]), int(right[t])))
        extra = int(np.count_nonzero(mask)) - min(int(np.count_nonzero(mask)), MAX_REPORTED)
        if extra:
            report.violation_counts[law] = report.violation_counts.get(law, 0) + extra

    def pair_text(i, j):
        return f"({format_dnf(fns[i])}, {format_dnf(fns[j])})"

    if IMPLICATION in pair_laws:
        via_truth = sub(clo[left], clo[right])
        via_falsity = sub(coclo[left], coclo[right])
        report_bad(IMPLICATION, via_truth != truth_sub, lambda i, j: "1_eta test disagrees " + pair_text(i, j))
        report_bad(IMPLICATION, via_falsity != truth_sub, lambda i, j: "0_rho test disagrees " + pair_text(i, j))

    if CLOSURE in pair_laws:
        eta_table = np.array([eta(m).bits for m in range(1 << gcl.n_F)], dtype=np.int64)
        one = gcl.one_eta.bits
        join_ok = ((b1 | b2) & one) == eta_table[c1 | c2]
        meet_ok = ((b1 & b2) & one) == eta_table[c1 & c2]
        report_bad(CLOSURE, ~join_ok, lambda i, j: "sum leaves the union intent " + pair_text(i, j))
        report_bad(CLOSURE, ~meet_ok, lambda i, j: "product leaves the intersection intent " + pair_text(i, j))

    if ORDER in pair_laws and gcl.n_F == gcl.rank:
        report_bad(ORDER, sub(b1, b2) != truth_sub, lambda i, j: "order and extent inclusion disagree " + pair_text(i, j))


def random_context(
    n_objects: int,
    n_attributes: int,
    rng: np.random.Generator,
    density: float = 0.5,
) -> FormalContext:
    names = tuple("abcdefghijklmnopqrstuvwxyz"[:n_attributes])
    incidence = rng.random((n_objects, n_attributes)) < density
    return FormalContext.from_incidence([str(i + 1) for i in range(n_objects)], names, incidence)
