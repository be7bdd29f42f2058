"""Codeword/code data model, the text file format, and the built-in catalog.

A codeword is a normalized superposition of occupation vectors with rational
squared weights mu_i and signs; the amplitude of row i is sign_i * sqrt(mu_i).
Weights rather than amplitudes are stored because every cataloged weight is
rational while the amplitudes are radicals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .algebra import Radical
from .channel import PureBranch
from .fock import OccupationVector, distance, row_sum


class CodeFormatError(ValueError):
    """Malformed code file; carries the offending line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


class NormalizationError(CodeFormatError):
    pass


class StructuralError(CodeFormatError):
    pass


@dataclass(frozen=True, order=True)
class Row:
    qcs: OccupationVector
    weight: Fraction
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +-1, got {self.sign}")
        if self.weight <= 0:
            raise ValueError(f"weight must be positive, got {self.weight}")


@dataclass(frozen=True)
class Codeword:
    """Rows are kept sorted lexicographically by occupation vector."""

    rows: tuple[Row, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(sorted(self.rows)))

    @classmethod
    def make(cls, rows: Iterable[tuple[Fraction | int, OccupationVector] | Row],
             signs: Iterable[int] | None = None) -> "Codeword":
        built = []
        for r in rows:
            if isinstance(r, Row):
                built.append(r)
            else:
                w, q = r
                built.append(Row(tuple(q), Fraction(w)))
        if signs is not None:
            built = [Row(r.qcs, r.weight, s) for r, s in zip(built, signs)]
        return cls(tuple(built))

    @classmethod
    def uniform(cls, states: Iterable[OccupationVector]) -> "Codeword":
        states = [tuple(q) for q in states]
        w = Fraction(1, len(states))
        return cls(tuple(Row(q, w) for q in states))

    def modes(self) -> int:
        return len(self.rows[0].qcs)

    def weight_sum(self) -> Fraction:
        return sum((r.weight for r in self.rows), Fraction(0))

    def is_balanced(self) -> bool:
        return len({r.weight for r in self.rows}) == 1

    def support(self) -> tuple[OccupationVector, ...]:
        return tuple(r.qcs for r in self.rows)

    def row_sums(self) -> tuple[int, ...]:
        return tuple(row_sum(r.qcs) for r in self.rows)

    def amplitudes(self) -> dict[OccupationVector, Radical]:
        out: dict[OccupationVector, Radical] = {}
        for r in self.rows:
            amp = Radical.sqrt_rational(r.weight)
            if r.sign < 0:
                amp = -amp
            out[r.qcs] = out.get(r.qcs, Radical()) + amp
        return out

    def as_branch(self) -> PureBranch:
        return PureBranch.from_amplitudes(self.amplitudes())


@dataclass(frozen=True)
class Code:
    codewords: tuple[Codeword, ...]
    design_t: int
    name: str = ""

    def __post_init__(self):
        if not self.codewords:
            raise ValueError("a code needs at least one codeword")

    @property
    def m(self) -> int:
        return self.codewords[0].modes()

    @property
    def total_photons(self) -> int:
        return max(max(cw.row_sums()) for cw in self.codewords)

    @property
    def min_distance(self) -> Fraction:
        """Minimum QCS distance between distinct codewords (0 for one codeword)."""
        best: Fraction | None = None
        for i, a in enumerate(self.codewords):
            for b in self.codewords[i + 1:]:
                for u in a.support():
                    for v in b.support():
                        dd = distance(u, v)
                        if best is None or dd < best:
                            best = dd
        return best if best is not None else Fraction(0)

    @property
    def descriptor(self) -> str:
        return f"[[{self.total_photons},{self.m},{len(self.codewords)},{self.min_distance}]]"

    def is_balanced(self) -> bool:
        return all(cw.is_balanced() for cw in self.codewords)

    def has_equal_row_sums(self) -> bool:
        sums = {s for cw in self.codewords for s in cw.row_sums()}
        return len(sums) == 1

    def structural_issues(self) -> list[str]:
        """Invariant violations: bad normalization, duplicate QCS, ragged modes."""
        issues = []
        m = self.m
        for i, cw in enumerate(self.codewords):
            if cw.modes() != m:
                issues.append(f"word {i}: {cw.modes()} modes, expected {m}")
            total = cw.weight_sum()
            if total != 1:
                issues.append(f"word {i}: weights sum to {total}, not 1")
            seen: set[OccupationVector] = set()
            for r in cw.rows:
                if r.qcs in seen:
                    issues.append(f"word {i}: duplicate QCS {r.qcs}")
                seen.add(r.qcs)
        if not self.has_equal_row_sums():
            issues.append("row sums differ across QCS")
        return issues


# ---------------------------------------------------------------------------
# text format

_HEADER_RE = re.compile(
    r'^code\s+N=(\d+)\s+m=(\d+)\s+t=(\d+)\s+d=(\d+(?:/\d+)?)\s+name="([^"]*)"\s*$'
)


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_code(text: str, strict: bool = True) -> Code:
    """Parse the canonical text format into a Code.

    strict=True enforces normalization and distinct QCS per codeword; parse
    errors always carry the offending line number.
    """
    lines = text.splitlines()
    header = None
    words: list[list[Row]] = []
    header_line = 0
    for lineno, raw in enumerate(lines, start=1):
        line = _strip(raw)
        if not line:
            continue
        if header is None:
            m = _HEADER_RE.match(line)
            if not m:
                raise CodeFormatError(f"expected code header, got {line!r}", lineno)
            header = m
            header_line = lineno
            continue
        if line.startswith("word"):
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise CodeFormatError(f"bad word marker {line!r}", lineno)
            if int(parts[1]) != len(words):
                raise CodeFormatError(
                    f"word index {parts[1]}, expected {len(words)}", lineno)
            words.append([])
            continue
        if not words:
            raise CodeFormatError("row before any 'word' marker", lineno)
        tokens = line.split()
        if len(tokens) < 4 or tokens[0] not in "+-" or tokens[2] != ":":
            raise CodeFormatError(f"bad row {line!r}", lineno)
        frac = tokens[1].split("/")
        if len(frac) != 2 or not frac[0].isdigit() or not frac[1].isdigit():
            raise CodeFormatError(f"bad weight {tokens[1]!r}", lineno)
        try:
            occ = tuple(int(tok) for tok in tokens[3:])
        except ValueError:
            raise CodeFormatError(f"bad occupation numbers in {line!r}", lineno)
        if any(n < 0 for n in occ):
            raise CodeFormatError("negative occupation number", lineno)
        weight = Fraction(int(frac[0]), int(frac[1]))
        if weight <= 0:
            raise CodeFormatError(f"weight {weight} not positive", lineno)
        words[-1].append(Row(occ, weight, 1 if tokens[0] == "+" else -1))
    if header is None:
        raise CodeFormatError("empty input", len(lines) or 1)
    if not words or any(not rows for rows in words):
        raise CodeFormatError("code has an empty codeword", len(lines))
    declared_m = int(header.group(2))
    for rows in words:
        for r in rows:
            if len(r.qcs) != declared_m:
                raise CodeFormatError(
                    f"row {r.qcs} has {len(r.qcs)} modes, header says {declared_m}",
                    header_line)
    code = Code(tuple(Codeword(tuple(rows)) for rows in words),
                design_t=int(header.group(3)), name=header.group(5))
    if strict:
        for i, cw in enumerate(code.codewords):
            total = cw.weight_sum()
            if total != 1:
                raise NormalizationError(
                    f"word {i} weights sum to {total}, not 1")
            seen: set[OccupationVector] = set()
            for r in cw.rows:
                if r.qcs in seen:
                    raise StructuralError(f"word {i} repeats QCS {r.qcs}")
                seen.add(r.qcs)
    return code


def serialize_code(code: Code) -> str:
    """Canonical text form; parse(serialize(code)) == code."""
    out = [
        f'code N={code.total_photons} m={code.m} t={code.design_t} '
        f'd={code.min_distance} name="{code.name}"'
    ]
    for i, cw in enumerate(code.codewords):
        out.append(f"word {i}")
        for r in cw.rows:  # already sorted
            sign = "+" if r.sign > 0 else "-"
            occ = " ".join(str(n) for n in r.qcs)
            out.append(f"{sign} {r.weight.numerator}/{r.weight.denominator} : {occ}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# catalog of the eleven published example codes


@dataclass(frozen=True)
class CatalogEntry:
    id: int
    printed: Code
    design_t: int
    note: str = ""
    corrected: Code | None = None

    @property
    def default(self) -> Code:
        return self.corrected if self.corrected is not None else self.printed


def _uniform(name: str, t: int, *words: list[tuple[int, ...]]) -> Code:
    return Code(tuple(Codeword.uniform(w) for w in words), design_t=t, name=name)


def _weighted(name: str, t: int, *words) -> Code:
    cws = tuple(
        Codeword(tuple(Row(tuple(q), Fraction(w)) for w, q in word))
        for word in words
    )
    return Code(cws, design_t=t, name=name)


def _build_catalog() -> dict[int, CatalogEntry]:
    f = Fraction
    entries: dict[int, CatalogEntry] = {}

    entries[1] = CatalogEntry(
        1, _uniform("example-1", 1, [(4, 0), (0, 4)], [(2, 2)]), 1)

    orbit_words_2 = [
        [(0, 0, 12), (12, 0, 0), (0, 12, 0)],
        [(0, 2, 10), (10, 0, 2), (2, 10, 0)],
        [(0, 4, 8), (8, 0, 4), (4, 8, 0)],
        [(0, 6, 6), (6, 0, 6), (6, 6, 0)],
        [(0, 8, 4), (4, 0, 8), (8, 4, 0)],
        [(0, 10, 2), (2, 0, 10), (10, 2, 0)],
        [(2, 2, 8), (8, 2, 2), (2, 8, 2)],
        [(2, 4, 6), (6, 2, 4), (4, 6, 2)],
        [(2, 6, 4), (6, 4, 2), (2, 6, 4)],  # repeated QCS as published
        [(4, 4, 4)],
    ]
    printed_2 = Code(
        tuple(
            Codeword(tuple(Row(q, f(1, 3)) for q in w)) if len(w) == 3
            else Codeword.uniform(w)
            for w in orbit_words_2
        ),
        design_t=1, name="example-2-as-printed")
    corrected_2 = _uniform(
        "example-2", 1, *(orbit_words_2[:8]
                          + [[(2, 6, 4), (6, 4, 2), (4, 2, 6)]]
                          + [orbit_words_2[9]]))
    entries[2] = CatalogEntry(
        2, printed_2, 1,
        note="published form repeats QCS (2,6,4); cyclic orbit gives (4,2,6)",
        corrected=corrected_2)

    entries[3] = CatalogEntry(
        3, _uniform("example-3", 1,
                    [(6, 0, 0), (0, 6, 0), (0, 0, 6)],
                    [(4, 2, 0), (2, 0, 4), (0, 4, 2)],
                    [(2, 4, 0), (4, 0, 2), (0, 2, 4)],
                    [(2, 2, 2)]), 1)

    entries[4] = CatalogEntry(
        4, _uniform("example-4", 2,
                    [(3, 0, 6), (0, 6, 3), (6, 3, 0)],
                    [(0, 3, 6), (3, 6, 0), (6, 0, 3)]), 2)

    entries[5] = CatalogEntry(
        5, _uniform("example-5", 1,
                    [(0, 3, 2, 1), (1, 0, 3, 2), (2, 1, 0, 3), (3, 2, 1, 0)],
                    [(0, 1, 2, 3), (1, 2, 3, 0), (2, 3, 0, 1), (3, 0, 1, 2)]), 1)

    entries[6] = CatalogEntry(
        6, _uniform("example-6", 1, [(7, 0), (1, 6)], [(5, 2), (3, 4)]), 1)

    entries[7] = CatalogEntry(
        7, _weighted("example-7", 2,
                     [(f(1, 4), (9, 0)), (f(3, 4), (3, 6))],
                     [(f(1, 4), (0, 9)), (f(3, 4), (6, 3))]), 2)

    entries[8] = CatalogEntry(
        8, _weighted("example-8", 2,
                     [(f(1, 3), (0, 3, 6)), (f(1, 3), (3, 0, 6)),
                      (f(1, 3), (3, 6, 0))],
                     [(f(6, 9), (3, 3, 3)), (f(2, 9), (0, 0, 9)),
                      (f(1, 9), (0, 9, 0))]), 2)

    entries[9] = CatalogEntry(
        9, _weighted("example-9", 3,
                     [(f(1, 8), (0, 16)), (f(1, 8), (16, 0)), (f(6, 8), (8, 8))],
                     [(f(1, 2), (4, 12)), (f(1, 2), (12, 4))]), 3)

    entries[10] = CatalogEntry(
        10, _weighted("example-10-as-printed", 3,
                      [(f(1, 25), (0, 4, 16)), (f(4, 25), (4, 0, 16)),
                       (f(20, 25), (0, 20, 0))],
                      [(f(2, 5), (4, 4, 12)), (f(3, 5), (4, 8, 8))]), 3,
        note="published weights violate first-moment equality between codewords")

    # published occupations are one-fifth of the actual code; stored scaled
    entries[11] = CatalogEntry(
        11, _weighted("example-11-as-printed", 4,
                      [(f(1, 18), (0, 50)), (f(5, 9), (20, 30)),
                       (f(1, 3), (40, 10)), (f(2, 45), (45, 5))],
                      [(f(1, 18), (5, 45)), (f(1, 6), (10, 40)),
                       (f(33, 90), (25, 25)), (f(1, 3), (35, 15)),
                       (f(7, 90), (50, 0))]), 4,
        note="published first-codeword weights sum to 89/90, not 1")

    return entries


_CATALOG = _build_catalog()


def catalog_ids() -> list[int]:
    return sorted(_CATALOG)


def catalog_entry(i: int) -> CatalogEntry:
    if i not in _CATALOG:
        raise KeyError(f"no catalog code {i}; ids are 1..11")
    return _CATALOG[i]


def catalog(i: int, variant: str = "default") -> Code:
    """Fetch a cataloged code: variant 'printed', 'corrected' or 'default'.

    'default' is the corrected form when one exists (only the repaired orbit
    of example 2), otherwise the code exactly as published.
    """
    entry = catalog_entry(i)
    if variant == "printed":
        return entry.printed
    if variant == "corrected":
        if entry.corrected is None:
            raise KeyError(f"catalog code {i} has no corrected variant")
        return entry.corrected
    if variant == "default":
        return entry.default
    raise ValueError(f"unknown variant {variant!r}")
