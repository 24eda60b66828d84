"""Exhaustive and random generation of the graph class, plus whole-class checks.

Class members are enumerated as labeled graphs carrying the fixed Hamilton
cycle x_1 y_1 ... x_n y_n; the remaining edges form a 0/1 chord matrix with
every line summing to n/2 - 2 and zeros on the Hamilton positions (i, i)
and (i+1, i).
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Optional, Sequence

import numpy as np
from numba import njit

from . import _kernels
from .errors import TheoremViolation, UnsupportedN
from .extract import (
    F_COLS,
    F_BAND_BALANCE,
    F_ROWS,
    M_C1A,
    M_C1B,
    M_STRUCT,
    METHODS,
    N_FLAGS,
    S_NOT_HAMILTONIAN,
    S_OK,
    Method,
    extract_kernel,
    extract_structural,
    structural_flags_kernel,
    structural_search_kernel,
)
from .graph import BalancedBipartiteGraph, SignedAdjacencyMatrix, write_edge_list
from .oracle import SecondAssertion, lengths_mask_kernel, omitting_pair_kernel

log = logging.getLogger(__name__)

CLASS_CAP = 8
MATRIX_CAP = 12
CHUNK = 1 << 15


def check_class_n(n: int, allow_large: bool = False) -> None:
    if not isinstance(n, int) or n % 2 or n < 6:
        raise UnsupportedN(f"n must be even and at least 6, got {n}")
    if n > CLASS_CAP and not allow_large:
        raise UnsupportedN(f"n = {n} exceeds the class enumeration cap {CLASS_CAP}")


def _hamilton_mask(n: int, i: int) -> int:
    return (1 << i) | (1 << ((i - 1) % n))


def first_row_choices(n: int) -> list[tuple[int, ...]]:
    """Chord sets of row x_1 in enumeration order; used to partition work."""
    r = n // 2 - 2
    allowed = [j for j in range(n) if j not in (0, n - 1)]
    return list(itertools.combinations(allowed, r))


def iter_class_rows(n: int, first_row: Optional[Sequence[int]] = None) -> Iterator[tuple[int, ...]]:
    """Row masks of every class member, by row-by-row backtracking.

    Children are tried in lexicographic order of chord column sets, so the
    stream order is fixed. ``first_row`` restricts to one subtree.
    """
    r = n // 2 - 2
    allowed = [[j for j in range(n) if j != i and j != (i - 1) % n] for i in range(n)]
    # rows after i that may still take column j
    takers = [[sum(1 for k in range(i + 1, n) if j in allowed[k]) for j in range(n)] for i in range(n)]
    caps = [r] * n
    chords = [0] * n

    def rec(i):
        if i == n:
            yield tuple(chords[k] | _hamilton_mask(n, k) for k in range(n))
            return
        options = [tuple(first_row)] if (i == 0 and first_row is not None) else None
        if options is None:
            options = itertools.combinations([j for j in allowed[i] if caps[j]], r)
        for cols in options:
            for j in cols:
                caps[j] -= 1
            if all(caps[j] <= takers[i][j] for j in range(n)):
                chords[i] = sum(1 << j for j in cols)
                yield from rec(i + 1)
            for j in cols:
                caps[j] += 1

    yield from rec(0)


@dataclass
class ClassEnumeration:
    """Deterministic, re-iterable stream of canonical class members."""

    n: int

    def __iter__(self) -> Iterator[BalancedBipartiteGraph]:
        for rows in iter_class_rows(self.n):
            yield BalancedBipartiteGraph(self.n, rows)

    @property
    def count(self) -> int:
        return sum(1 for _ in iter_class_rows(self.n))


def enumerate_class(n: int, allow_large: bool = False) -> ClassEnumeration:
    check_class_n(n, allow_large)
    return ClassEnumeration(n)


def chord_allowed_matrix(n: int) -> np.ndarray:
    a = np.ones((n, n), dtype=np.int64)
    for i in range(n):
        a[i, i] = 0
        a[i, (i - 1) % n] = 0
    return a


def permanent(a: np.ndarray) -> int:
    """Ryser's inclusion-exclusion formula."""
    n = a.shape[0]
    total = 0
    for size in range(1, n + 1):
        for cols in itertools.combinations(range(n), size):
            prod = 1
            for i in range(n):
                prod *= int(a[i, list(cols)].sum())
                if not prod:
                    break
            total += (-1) ** size * prod
    return (-1) ** n * total


def count_class(n: int) -> int:
    """Number of class members by dynamic programming over column capacities."""
    r = n // 2 - 2
    allowed = chord_allowed_matrix(n)

    @lru_cache(maxsize=None)
    def ways(i: int, caps: tuple[int, ...]) -> int:
        if i == n:
            return int(not any(caps))
        cols = [j for j in range(n) if allowed[i, j] and caps[j]]
        total = 0
        for pick in itertools.combinations(cols, r):
            nxt = list(caps)
            for j in pick:
                nxt[j] -= 1
            total += ways(i + 1, tuple(nxt))
        return total

    return ways(0, (r,) * n)


def independent_count(n: int) -> tuple[int, str]:
    """Class size computed without the enumerator; permanent when chords form a matching."""
    if n // 2 - 2 == 1:
        return permanent(chord_allowed_matrix(n)), "permanent"
    return count_class(n), "capacity-dp"


def write_members(n: int, out_dir, allow_large: bool = False) -> int:
    check_class_n(n, allow_large)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    width = len(str(max(independent_count(n)[0] - 1, 0)))
    count = 0
    for g in enumerate_class(n, allow_large):
        write_edge_list(g, out / f"{count:0{width}d}.txt")
        count += 1
    return count


# ---------------------------------------------------------------- matrix census


def rebuild_from_first_row(n: int, first_row: Sequence[int]) -> SignedAdjacencyMatrix:
    """Unique sign matrix with the border pattern and a^{i+1}_{j+1} = -a^i_j on the band.

    ``first_row`` holds a^1_3 .. a^1_{n-2}.
    """
    if len(first_row) != n - 4:
        raise ValueError(f"expected {n - 4} band entries, got {len(first_row)}")
    a = np.empty((n, n), dtype=np.int8)
    for i in range(n):
        for j in range(n):
            off = (j - i) % n
            if off in (0, n - 1):
                a[i, j] = 1
            elif off in (1, n - 2):
                a[i, j] = -1
            else:
                a[i, j] = (-1) ** i * first_row[off - 2]
    return SignedAdjacencyMatrix(n, a)


@dataclass(frozen=True)
class MatrixCandidate:
    first_row: tuple[int, ...]
    matrix: SignedAdjacencyMatrix = field(repr=False)
    column_sums_ok: bool
    extraction: Optional[tuple[int, int]]  # (i0, k), None = failure
    certified: bool

    def to_json(self) -> dict:
        return {
            "first_row": list(self.first_row),
            "column_sums_ok": self.column_sums_ok,
            "extraction": (
                {"i0": self.extraction[0], "k": self.extraction[1]} if self.extraction else "failure"
            ),
            "certified": self.certified,
            "matrix": self.matrix.a.tolist(),
        }


@dataclass(frozen=True)
class MatrixCensusResult:
    n: int
    vectors_checked: int
    candidates: list
    parity_obstruction: bool

    @property
    def theorem_violations(self) -> int:
        return sum(1 for c in self.candidates if c.column_sums_ok and not c.certified)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "parity_obstruction": self.parity_obstruction,
            "vectors_checked": self.vectors_checked,
            "candidates": [c.to_json() for c in self.candidates],
            "theorem_violations": self.theorem_violations,
        }


def constrained_matrix_census(n: int, allow_large: bool = False) -> MatrixCensusResult:
    """Sweep every first row of band signs, keeping those that balance both parities.

    The sweep runs even when n is 2 mod 4, where it must come back empty.
    """
    if not isinstance(n, int) or n % 2 or n < 6:
        raise UnsupportedN(f"n must be even and at least 6, got {n}")
    if n > MATRIX_CAP and not allow_large:
        raise UnsupportedN(f"n = {n} exceeds the matrix census cap {MATRIX_CAP}")
    candidates = []
    checked = 0
    flags = np.zeros(N_FLAGS, np.int64)
    for first_row in itertools.product((1, -1), repeat=n - 4):
        checked += 1
        matrix = rebuild_from_first_row(n, first_row)
        g = matrix.to_graph()
        rows = g.array()
        structural_flags_kernel(rows, n, flags)
        if not flags[F_BAND_BALANCE]:
            continue
        lines_ok = bool(flags[F_ROWS] and flags[F_COLS])
        i0, k = structural_search_kernel(rows, n)
        extraction = (int(i0) + 1, int(k)) if k >= 0 else None
        certified = False
        if lines_ok and extraction is not None:
            report = extract_structural(g)
            certified = (report.indices["i0"], report.indices["k"]) == extraction
        candidates.append(MatrixCandidate(first_row, matrix, lines_ok, extraction, certified))
    return MatrixCensusResult(n, checked, candidates, parity_obstruction=n % 4 != 0)


# ---------------------------------------------------------------- random members


def _random_chords(n: int, r: int, rng: np.random.Generator) -> list[int]:
    allowed = [[j for j in range(n) if j != i and j != (i - 1) % n] for i in range(n)]
    takers = [[sum(1 for k in range(i + 1, n) if j in allowed[k]) for j in range(n)] for i in range(n)]
    caps = [r] * n
    chords = [0] * n

    def rec(i):
        if i == n:
            return True
        # columns that must be used now or never
        forced = [j for j in allowed[i] if caps[j] > takers[i][j]]
        if len(forced) > r:
            return False
        free = [j for j in allowed[i] if caps[j] and j not in forced]
        order = [free[t] for t in rng.permutation(len(free))]
        for rest in itertools.combinations(order, r - len(forced)):
            cols = forced + list(rest)
            for j in cols:
                caps[j] -= 1
            if all(caps[j] <= takers[i][j] for j in range(n)):
                chords[i] = sum(1 << j for j in cols)
                if rec(i + 1):
                    return True
            for j in cols:
                caps[j] += 1
        return False

    if not rec(0):  # pragma: no cover - a circulant completion always exists
        raise RuntimeError("no chord completion found")
    return chords


def random_member(n: int, seed: int) -> BalancedBipartiteGraph:
    """Canonical Hamilton cycle plus a randomized-backtracking chord matrix."""
    if not isinstance(n, int) or n % 2 or n < 6 or n > 62:
        raise UnsupportedN(f"n must be even and in 6..62, got {n}")
    rng = np.random.default_rng(seed)
    chords = _random_chords(n, n // 2 - 2, rng)
    return BalancedBipartiteGraph(n, tuple(chords[i] | _hamilton_mask(n, i) for i in range(n)))


def random_augmented(n: int, seed: int, extra: Optional[int] = None) -> BalancedBipartiteGraph:
    """A random class member with ``extra`` (default: random, at least 1) non-edges added."""
    g = random_member(n, seed)
    rng = np.random.default_rng([seed, n])
    missing = [(i, j) for i in range(n) for j in range(n) if not g.rows[i] >> j & 1]
    if extra is None:
        extra = int(rng.integers(1, len(missing) + 1))
    rows = list(g.rows)
    for t in rng.choice(len(missing), size=extra, replace=False):
        i, j = missing[t]
        rows[i] |= 1 << j
    return BalancedBipartiteGraph(n, tuple(rows))


# ---------------------------------------------------------------- verification

(
    R_MEMBER,
    R_STATUS,
    R_METHOD,
    R_A,
    R_B,
    R_C,
    R_WITNESS,
    R_OMITTED,
    R_ADJACENT,
    R_ORACLE,
    R_PAIR_X,
    R_PAIR_Y,
    R_PAIR_WITNESS,
    R_SUBSIZE,
    R_LENGTHS,
) = range(15)
N_RESULTS = 15


@njit(cache=True)
def _missing_one(seq, n, parity):
    seen = np.int64(0)
    for t in range(parity, seq.shape[0], 2):
        seen |= np.int64(1) << seq[t]
    left = ((np.int64(1) << n) - 1) & ~seen
    if left == 0 or (left & (left - 1)) != 0:
        return -1
    return _kernels.lowbit(left)


@njit(cache=True)
def verify_batch_kernel(batch, n, res):
    """Run extraction, the oracle cross-check and the pair scan on each member."""
    length = 2 * n - 2
    full = (np.int64(1) << n) - 1
    seq = np.zeros(length, np.int64)
    buf = np.zeros(length, np.int64)
    info = np.zeros(6, np.int64)
    xo = np.zeros(n, np.int64)
    yo = np.zeros(n, np.int64)
    cols_deg = np.zeros(n, np.int64)
    for m in range(batch.shape[0]):
        rows = batch[m]
        for t in range(N_RESULTS):
            res[m, t] = -1
        member = 1
        size = 0
        for j in range(n):
            cols_deg[j] = 0
        for i in range(n):
            d = _kernels.popcount(rows[i])
            size += d
            if d != n // 2 or not (rows[i] >> i) & 1 or not (rows[i] >> ((i - 1) % n)) & 1:
                member = 0
            for j in range(n):
                cols_deg[j] += (rows[i] >> j) & 1
        for j in range(n):
            if cols_deg[j] != n // 2:
                member = 0
        res[m, R_MEMBER] = member

        status = extract_kernel(rows, n, seq, info, xo, yo)
        res[m, R_STATUS] = status
        if status == S_OK:
            res[m, R_METHOD] = info[0]
            res[m, R_A] = info[1]
            res[m, R_B] = info[2]
            res[m, R_C] = info[3]
            res[m, R_WITNESS] = 1 if _kernels.check_cycle(rows, n, seq, length) else 0
            ok = _missing_one(seq, n, 0) == info[4] and _missing_one(seq, n, 1) == info[5]
            res[m, R_OMITTED] = 1 if ok else 0
            res[m, R_ADJACENT] = (rows[info[4]] >> info[5]) & 1

        found = _kernels.cycle_search(rows, n, length, full, full, buf)
        res[m, R_ORACLE] = 1 if found and _kernels.check_cycle(rows, n, buf, length) else 0

        if status == S_NOT_HAMILTONIAN:
            continue
        x, y = omitting_pair_kernel(rows, n, xo, yo)
        if x < 0:
            continue
        res[m, R_PAIR_X] = x
        res[m, R_PAIR_Y] = y
        for t in range(n - 1):
            buf[2 * t] = xo[t]
            buf[2 * t + 1] = yo[t]
        ok = (
            _kernels.check_cycle(rows, n, buf, length)
            and _missing_one(buf, n, 0) == x
            and _missing_one(buf, n, 1) == y
        )
        res[m, R_PAIR_WITNESS] = 1 if ok else 0
        res[m, R_SUBSIZE] = size - (_kernels.popcount(rows[x]) + cols_deg[y] - 1)
        res[m, R_LENGTHS] = lengths_mask_kernel(rows, n)


@dataclass
class VerificationSummary:
    n: int
    members: int = 0
    independent_count: int = 0
    count_method: str = ""
    methods: dict = field(default_factory=lambda: {m.value: 0 for m in Method})
    witnesses_certified: int = 0
    oracle_agreements: int = 0
    second_assertion: dict = field(default_factory=lambda: {o.value: 0 for o in SecondAssertion})
    pairs_found: int = 0
    size_identity_ok: int = 0
    failure_count: int = 0
    failures: list = field(default_factory=list)

    MAX_LISTED = 100

    @property
    def count_agrees(self) -> bool:
        return self.members == self.independent_count

    @property
    def ok(self) -> bool:
        return self.count_agrees and self.failure_count == 0

    def merge(self, other: "VerificationSummary") -> None:
        """Append ``other``, whose member indices continue this stream."""
        for key, v in other.methods.items():
            self.methods[key] += v
        for key, v in other.second_assertion.items():
            self.second_assertion[key] += v
        for f in other.failures:
            if len(self.failures) < self.MAX_LISTED:
                self.failures.append({**f, "member": f["member"] + self.members})
        self.members += other.members
        self.witnesses_certified += other.witnesses_certified
        self.oracle_agreements += other.oracle_agreements
        self.pairs_found += other.pairs_found
        self.size_identity_ok += other.size_identity_ok
        self.failure_count += other.failure_count

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "members": self.members,
            "independent_count": self.independent_count,
            "count_method": self.count_method,
            "count_agrees": self.count_agrees,
            "methods": dict(self.methods),
            "witnesses_certified": self.witnesses_certified,
            "oracle_agreements": self.oracle_agreements,
            "second_assertion": dict(self.second_assertion),
            "pairs_found": self.pairs_found,
            "size_identity_ok": self.size_identity_ok,
            "failure_count": self.failure_count,
            "failures": list(self.failures),
        }


def _failure_reasons(row: np.ndarray, n: int) -> list[str]:
    reasons = []
    if not row[R_MEMBER]:
        reasons.append("not-class-member")
    status = row[R_STATUS]
    if status == S_NOT_HAMILTONIAN:
        reasons.append("not-hamiltonian")
    elif status != S_OK:
        reasons.append("theorem-violation")
    else:
        if not row[R_WITNESS]:
            reasons.append("witness-invalid")
        if not row[R_OMITTED]:
            reasons.append("omitted-mismatch")
        method = row[R_METHOD]
        if method in (M_C1A, M_C1B) and not row[R_ADJACENT]:
            reasons.append("adjacency-invariant")
        if method == M_STRUCT and (row[R_ADJACENT] or n % 4):
            reasons.append("structural-invariant")
    if not row[R_ORACLE]:
        reasons.append("oracle-disagrees")
    if row[R_PAIR_X] >= 0:
        if not row[R_PAIR_WITNESS]:
            reasons.append("pair-witness-invalid")
        if row[R_SUBSIZE] != n * n // 2 - n + 1:
            reasons.append("size-identity")
        if row[R_LENGTHS] != _all_lengths(n):
            reasons.append("refuted")
    return reasons


def _all_lengths(n: int) -> int:
    return sum(1 << half for half in range(2, n + 1))


def _summarize(res: np.ndarray, n: int, summary: VerificationSummary, offset: int) -> None:
    ok = res[:, R_STATUS] == S_OK
    for code in (1, 2, 3, 4):
        summary.methods[METHODS[code].value] += int(np.count_nonzero(res[:, R_METHOD] == code))
    summary.witnesses_certified += int(np.count_nonzero(ok & (res[:, R_WITNESS] == 1)))
    summary.oracle_agreements += int(np.count_nonzero(ok & (res[:, R_ORACLE] == 1)))
    paired = res[:, R_PAIR_X] >= 0
    full = _all_lengths(n)
    summary.pairs_found += int(np.count_nonzero(paired))
    summary.size_identity_ok += int(np.count_nonzero(paired & (res[:, R_SUBSIZE] == n * n // 2 - n + 1)))
    confirmed = int(np.count_nonzero(paired & (res[:, R_LENGTHS] == full)))
    summary.second_assertion[SecondAssertion.CONFIRMED.value] += confirmed
    summary.second_assertion[SecondAssertion.REFUTED.value] += int(np.count_nonzero(paired)) - confirmed
    summary.second_assertion[SecondAssertion.INCONCLUSIVE.value] += int(np.count_nonzero(~paired))
    for m in range(res.shape[0]):
        reasons = _failure_reasons(res[m], n)
        if reasons:
            summary.failure_count += 1
            if len(summary.failures) < summary.MAX_LISTED:
                summary.failures.append({"member": offset + m, "reasons": reasons})
    summary.members += res.shape[0]


def _verify_stream(n: int, first_row=None) -> VerificationSummary:
    summary = VerificationSummary(n)
    stream = iter_class_rows(n, first_row)
    while True:
        chunk = list(itertools.islice(stream, CHUNK))
        if not chunk:
            break
        batch = np.array(chunk, dtype=np.int64)
        res = np.empty((len(chunk), N_RESULTS), dtype=np.int64)
        verify_batch_kernel(batch, n, res)
        _summarize(res, n, summary, summary.members)
        log.info("n=%d: %d members verified", n, summary.members)
    return summary


def verify_theorem(n: int, jobs: int = 1, allow_large: bool = False) -> VerificationSummary:
    """Extract, cross-check and test the second assertion on every class member.

    With ``jobs > 1`` the stream is split by the chord set of row x_1 and the
    partial summaries are merged back in stream order.
    """
    check_class_n(n, allow_large)
    total = VerificationSummary(n)
    total.independent_count, total.count_method = independent_count(n)
    if jobs <= 1:
        total.merge(_verify_stream(n))
        return total
    parts = first_row_choices(n)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_verify_stream, itertools.repeat(n), parts):
            total.merge(part)
    return total


def require_no_violation(summary: VerificationSummary) -> None:
    if summary.second_assertion[SecondAssertion.REFUTED.value] or any(
        "theorem-violation" in f["reasons"] for f in summary.failures
    ):
        raise TheoremViolation(f"counterexample among n = {summary.n} class members")
