"""Exact integer enumeration of Dyck paths by semilength and area.

A path of semilength n is a staircase walk of 2n steps that returns to the
diagonal without crossing it; its area is the number of complete unit
squares between the walk and the diagonal (the triangle half-cells do not
count). The row polynomial for semilength n collects the counts c[m][n] of
paths with area m; this table is the ground truth every other module is
validated against.

All coefficients are arbitrary-precision integers (Catalan growth passes
2^63 near n = 35). The row recurrence

    Z[n+1] = sum_{k=0..n} q^k * Z[k] * Z[n-k]

follows from splitting a nonempty path at its first return to the diagonal:
the inner factor of the leading arch sits one level higher, which adds one
full square per unit of its length, hence the q^k elevation factor. The
independent backtracking enumerator below is the arbiter for that
convention.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DivergenceError, DomainError, ResourceLimitError

__all__ = [
    "AreaPolynomial",
    "CoefficientTable",
    "PartitionSeriesResult",
    "build_area_polynomials",
    "brute_force_area_polynomial",
    "partition_series",
    "eval_G_truncated",
    "catalan_number",
    "table_to_csv",
    "table_to_json",
]

_BRUTE_FORCE_CAP = 14
_TABLE_CAP_FULL = 200  # ~n^3/6 wide integers; full tables past this blow the RAM budget
_TABLE_CAP_CAPPED = 2000


def catalan_number(n: int) -> int:
    """The n-th Catalan number, binomial(2n, n) / (n + 1)."""
    return math.comb(2 * n, n) // (n + 1)


@dataclass(frozen=True)
class AreaPolynomial:
    """Coefficients of one fixed-length row: coeffs[m] counts paths of area m."""

    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        expected = self.n * (self.n - 1) // 2 + 1
        if len(self.coeffs) != expected:
            raise DomainError(
                f"row {self.n} must have {expected} coefficients, got {len(self.coeffs)}"
            )

    @property
    def degree(self) -> int:
        return self.n * (self.n - 1) // 2

    def total(self) -> int:
        """Number of paths of semilength n (a Catalan number)."""
        return sum(self.coeffs)

    def evaluate(self, q: float) -> float:
        """Horner evaluation of the row polynomial at a numeric weight."""
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc


@dataclass(frozen=True)
class CoefficientTable:
    """Triangular store of the counts c[m][n] for n = 0..n_max.

    ``m_cap`` records an optional area truncation: when set, every row
    keeps only areas m <= m_cap (rows shorter than the cap are complete).
    """

    n_max: int
    rows: tuple[AreaPolynomial, ...]
    m_cap: int | None = None

    def row(self, n: int) -> AreaPolynomial:
        return self.rows[n]

    def coefficient(self, m: int, n: int) -> int:
        row = self.rows[n].coeffs
        return row[m] if m < len(row) else 0

    def column(self, m: int) -> list[int]:
        """Counts for fixed area m across all stored lengths."""
        if self.m_cap is not None and m > self.m_cap:
            raise DomainError(f"column {m} exceeds the table's area cap {self.m_cap}")
        return [self.coefficient(m, n) for n in range(self.n_max + 1)]


class _CappedRow(AreaPolynomial):
    """Row truncated at the table's area cap; skips the full-length invariant."""

    def __post_init__(self):
        pass


def _packed(poly: list[int], base_bits: int) -> int:
    acc = 0
    for c in reversed(poly):
        acc = (acc << base_bits) | c
    return acc


def _unpack(value: int, base_bits: int, length: int) -> list[int]:
    value &= (1 << (base_bits * length)) - 1
    mask = (1 << base_bits) - 1
    out = []
    for _ in range(length):
        out.append(value & mask)
        value >>= base_bits
    return out


@lru_cache(maxsize=6)
def build_area_polynomials(n_max: int, m_max: int | None = None) -> CoefficientTable:
    """Exact table of row polynomials for all semilengths up to n_max.

    Rows are produced by the first-return recurrence with the q^k elevation
    factor. The optional ``m_max`` truncates every row at that area, which
    keeps the fixed-area columns exact while making large-n tables cheap.

    The convolutions are carried out on nonnegative coefficients packed
    into single big integers (one wide digit per coefficient), so each row
    product is a single CPython bignum multiply. Results are memoized;
    the returned tables are immutable and safe to share across threads.
    """
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    cap = _TABLE_CAP_FULL if m_max is None else _TABLE_CAP_CAPPED
    if n_max > cap:
        raise ResourceLimitError(
            f"table to n = {n_max} exceeds the memory budget (cap {cap}); "
            f"pass m_max to bound the rows or lower n_max"
        )
    # Digit width: each digit of the packed convolution is a sum of at most
    # n+1 coefficient products, so 2*maxbits + log2(n+1) bits suffice. The
    # width grows with the table; when it no longer fits, repack wider.
    base_bits = 64
    max_bits = 1
    rows: list[list[int]] = [[1]]
    packed: list[int] = [_packed([1], base_bits)]
    for n in range(n_max):
        needed = 2 * max_bits + (n + 2).bit_length() + 1
        if needed > base_bits:
            base_bits = 2 * needed
            packed = [_packed(row, base_bits) for row in rows]
        # Z[n+1] = sum_k q^k Z[k] Z[n-k]; the shift by k*base_bits is the q^k.
        acc = 0
        for k in range(n + 1):
            if m_max is not None and k > m_max:
                break  # the q^k shift already pushes everything past the cap
            acc += (packed[k] * packed[n - k]) << (k * base_bits)
        length = (n + 1) * n // 2 + 1
        if m_max is not None:
            length = min(length, m_max + 1)
        coeffs = _unpack(acc, base_bits, length)
        rows.append(coeffs)
        packed.append(_packed(coeffs, base_bits))
        max_bits = max(max_bits, max(coeffs).bit_length())
    table_rows = []
    for n, coeffs in enumerate(rows):
        full_len = n * (n - 1) // 2 + 1
        if len(coeffs) == full_len:
            table_rows.append(AreaPolynomial(n=n, coeffs=tuple(coeffs)))
        else:
            table_rows.append(_CappedRow(n=n, coeffs=tuple(coeffs)))
    return CoefficientTable(n_max=n_max, rows=tuple(table_rows), m_cap=m_max)


def brute_force_area_polynomial(n: int) -> AreaPolynomial:
    """Row polynomial by exhaustive backtracking over all paths.

    Walks every admissible up/down step sequence, accumulating the running
    height sum; for a path of semilength n the number of complete squares
    is (sum of intermediate heights - n) / 2. Entirely independent of the
    recurrence-based builder, and the arbiter for the area convention.
    """
    if n < 0:
        raise DomainError("n must be >= 0")
    if n > _BRUTE_FORCE_CAP:
        raise ResourceLimitError(
            f"brute-force enumeration of {catalan_number(n)} paths at n = {n} "
            f"is past the desk-scale cap {_BRUTE_FORCE_CAP}"
        )
    counts = [0] * (n * (n - 1) // 2 + 1)
    total_steps = 2 * n

    def walk(step: int, height: int, height_sum: int):
        if step == total_steps:
            counts[(height_sum - n) // 2] += 1
            return
        remaining = total_steps - step
        if height < remaining:  # room to go up and still return
            walk(step + 1, height + 1, height_sum + height + 1)
        if height > 0:
            walk(step + 1, height - 1, height_sum + height - 1)

    if n == 0:
        counts[0] = 1
    else:
        walk(0, 0, 0)
    return AreaPolynomial(n=n, coeffs=tuple(counts))


@dataclass(frozen=True)
class PartitionSeriesResult:
    """Truncated fixed-area series sum_{n <= n_max} c[m][n] t^n."""

    m: int
    t: float
    value: float
    coefficients: tuple[int, ...]
    tail_estimate: float
    tail_ok: bool


def partition_series(table: CoefficientTable, m: int, t: float, tol: float = 1e-9) -> PartitionSeriesResult:
    """Fixed-area generating series from the exact table, truncated at n_max.

    The tail estimate is geometric from the last observed term ratios; when
    it exceeds ``tol`` relative to the partial sum the result is flagged
    rather than silently truncated.
    """
    if m < 0 or m > table.n_max * (table.n_max - 1) // 2:
        raise DomainError(f"area {m} outside the table range")
    if not (0.0 <= t < 1.0):
        raise DomainError("partition_series requires 0 <= t < 1")
    column = table.column(m)
    terms = [c * t**n for n, c in enumerate(column)]
    value = float(sum(terms))
    nonzero = [(n, abs(x)) for n, x in enumerate(terms) if x != 0.0]
    tail = 0.0
    ok = True
    if t > 0.0 and len(nonzero) >= 3:
        (n2, a2), (n1, a1) = nonzero[-2], nonzero[-1]
        ratio = (a1 / a2) ** (1.0 / (n1 - n2))
        if ratio < 1.0:
            tail = a1 * ratio / (1.0 - ratio)
        else:
            tail = float("inf")
        ok = tail <= tol * max(abs(value), 1e-300)
    return PartitionSeriesResult(
        m=m, t=t, value=value, coefficients=tuple(column), tail_estimate=tail, tail_ok=ok
    )


def eval_G_truncated(t: float, q: float, N: int, table: CoefficientTable | None = None) -> float:
    """Partial sum over lengths, sum_{n=0..N} Z_n(q) t^n.

    Requires the series to be visibly decaying at the truncation point
    (last term small against the partial sum and not growing), otherwise a
    divergence error is raised: t at or beyond the radius of convergence.
    """
    if not (0.0 < q <= 1.0):
        raise DomainError("eval_G_truncated requires q in (0, 1]")
    if t < 0.0:
        raise DomainError("t must be >= 0")
    if table is None or table.n_max < N:
        table = build_area_polynomials(N)
    terms = [table.row(n).evaluate(q) * t**n for n in range(N + 1)]
    total = float(sum(terms))
    if t > 0.0 and N >= 8:
        tail_terms = [abs(x) for x in terms[-4:]]
        growing = all(b >= a for a, b in zip(tail_terms, tail_terms[1:]))
        if growing and tail_terms[-1] > 1e-14 * abs(total):
            raise DivergenceError(
                f"length series not decaying at n = {N} (last term {tail_terms[-1]:.3e}); "
                f"t = {t!r} is at or beyond the radius of convergence",
                last_term=tail_terms[-1],
            )
    return total


# --------------------------------------------------------------------------
# Table serialization
# --------------------------------------------------------------------------

def table_to_csv(table: CoefficientTable) -> str:
    """CSV rows (n, m, c[m][n]); exact integers in decimal."""
    lines = ["n,m,c"]
    for n in range(table.n_max + 1):
        for m, c in enumerate(table.rows[n].coeffs):
            lines.append(f"{n},{m},{c}")
    return "\n".join(lines) + "\n"


def table_to_json(table: CoefficientTable) -> str:
    """JSON object with one coefficient array per row, integers as strings."""
    payload = {
        "n_max": table.n_max,
        "m_cap": table.m_cap,
        "rows": [[str(c) for c in row.coeffs] for row in table.rows],
    }
    return json.dumps(payload, indent=2) + "\n"
