"""Exponent matrices of quasi-cyclic LDPC codes and their text format.

A (gamma, eta)-regular QC-LDPC code of length p*eta is described compactly
by a gamma x eta matrix of circulant shifts: entry s in [0, p-1] stands for
the p x p identity cyclically shifted by s, and the marker INF stands for
the p x p zero block.

The on-disk format is line oriented::

    # optional comment lines
    gamma eta p
    s s s ... s        (gamma rows of eta entries, "inf" for a zero block)
"""

from __future__ import annotations

from dataclasses import dataclass

INF = -1  # zero-block marker; serialized as the token "inf"


class ParseError(ValueError):
    """Malformed exponent-matrix text, with 1-based line/entry location."""

    def __init__(self, message: str, line: int | None = None, entry: int | None = None):
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if entry is not None:
                loc += f", entry {entry}"
            loc += ": "
        super().__init__(loc + message)
        self.line = line
        self.entry = entry


@dataclass(frozen=True)
class ExponentMatrix:
    """gamma x eta array of CPM shifts over lifting degree p.

    Immutable after construction; all shifts are either INF or in [0, p-1].
    """

    gamma: int
    eta: int
    p: int
    shifts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.gamma < 1 or self.eta < 1:
            raise ValueError(f"need gamma >= 1 and eta >= 1, got {self.gamma} x {self.eta}")
        if self.p < 2:
            raise ValueError(f"lifting degree must be >= 2, got {self.p}")
        if len(self.shifts) != self.gamma:
            raise ValueError(f"expected {self.gamma} shift rows, got {len(self.shifts)}")
        for i, row in enumerate(self.shifts):
            if len(row) != self.eta:
                raise ValueError(f"row {i} has {len(row)} entries, expected {self.eta}")
            for j, s in enumerate(row):
                if s != INF and not 0 <= s < self.p:
                    raise ValueError(f"shift {s} at ({i},{j}) outside [0,{self.p - 1}]")

    @property
    def fully_connected(self) -> bool:
        """True when no block is the zero block."""
        return all(s != INF for row in self.shifts for s in row)

    def shift(self, i: int, j: int) -> int:
        return self.shifts[i][j]

    @property
    def n_var(self) -> int:
        return self.p * self.eta

    @property
    def n_chk(self) -> int:
        return self.p * self.gamma

    def with_shift(self, i: int, j: int, value: int) -> "ExponentMatrix":
        """Copy with one entry replaced."""
        rows = [list(r) for r in self.shifts]
        rows[i][j] = value
        return ExponentMatrix(self.gamma, self.eta, self.p, tuple(tuple(r) for r in rows))


def parse_exponent_matrix(text: str) -> ExponentMatrix:
    """Parse the text format; raises ParseError with line/entry location."""
    lines = []  # (lineno, content) with comments/blanks stripped
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        lines.append((lineno, stripped))

    if not lines:
        raise ParseError("empty input, expected a 'gamma eta p' header")

    header_line, header = lines[0]
    tokens = header.split()
    if len(tokens) != 3:
        raise ParseError(f"header must be 'gamma eta p', got {len(tokens)} tokens", header_line)
    try:
        gamma, eta, p = (int(t) for t in tokens)
    except ValueError:
        raise ParseError(f"header must be three integers, got {header!r}", header_line) from None
    if gamma < 1 or eta < 1:
        raise ParseError(f"gamma and eta must be >= 1, got {gamma} and {eta}", header_line)
    if p < 2:
        raise ParseError(f"lifting degree must be >= 2, got {p}", header_line)

    body = lines[1:]
    if len(body) != gamma:
        raise ParseError(
            f"expected {gamma} shift rows, found {len(body)}",
            body[-1][0] if body else header_line,
        )

    rows = []
    for lineno, content in body:
        tokens = content.split()
        if len(tokens) != eta:
            raise ParseError(f"expected {eta} entries, found {len(tokens)}", lineno)
        row = []
        for col, tok in enumerate(tokens, start=1):
            if tok.lower() == "inf":
                row.append(INF)
                continue
            try:
                s = int(tok)
            except ValueError:
                raise ParseError(f"entry {tok!r} is neither an integer nor 'inf'", lineno, col) from None
            if not 0 <= s < p:
                raise ParseError(f"shift {s} outside [0,{p - 1}]", lineno, col)
            row.append(s)
        rows.append(tuple(row))

    return ExponentMatrix(gamma, eta, p, tuple(rows))


def format_exponent_matrix(m: ExponentMatrix) -> str:
    """Canonical serialization; parse(format(m)) reproduces m exactly."""
    out = [f"{m.gamma} {m.eta} {m.p}"]
    for row in m.shifts:
        out.append(" ".join("inf" if s == INF else str(s) for s in row))
    return "\n".join(out) + "\n"
