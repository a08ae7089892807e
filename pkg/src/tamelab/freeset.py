"""Search for free (interpolation) coordinate sets in a symbol window.

A window is free on a coordinate set A at a given horizon when the
patterns observed on A + t, over the sampled shifts t, exhaust every
possible symbol assignment on A.  Freeness is downward closed: every
subset of a free set is free.  The searcher exploits this with a
level-wise sorted-prefix join, exactly like frequent-itemset mining, and
certifies results with per-pattern witness shifts that re-verify against
the window.

Coverage over the full valid shift range of a window depends only on the
gap vector of A, not its placement: translating A by c translates its
valid shift range by -c and reproduces the same pattern multiset.  For
interval pools the search therefore runs over canonical gap tuples
(first coordinate 0) and reports the leftmost placement; explicit pools
keep positioned sets but share gap evaluations through a memo table.

All claims are finite-scale: a certificate states the shift count it was
computed over, and absence of a free set means absence at that horizon.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import ArgumentError, CapacityError, DimensionError, WitnessIntegrityError
from .language import DENSE_CAP, CoordSet, patterns_on
from .sources import SeqWindow

# The quick scan covers a multiple of the candidate pattern space
# (coupon-collection scale); later epochs grow geometrically.
_QUICK_MIN = 1 << 10
_QUICK_MAX = 1 << 16
# Below this pattern-space size, candidates the quick scan leaves open are
# settled per missing pattern with packed-bit intersections, which makes
# non-coverage proofs over long horizons cheap.
_BITSET_SPACE_MAX = 64
# Row-batch size cap for the quick scan, in int32 cells.
_BATCH_CELLS = 1 << 22


@dataclass(frozen=True)
class FreeSetCertificate:
    """Coverage of a coordinate set at a stated horizon.

    ``coverage`` is exact; when it equals 1 the certificate carries one
    witness shift per pattern code, each re-verifiable with ``verify``.
    """

    coordset: CoordSet
    alphabet_size: int
    horizon: int
    coverage: Fraction
    witnesses: dict | None = None

    @property
    def is_free(self) -> bool:
        return self.coverage == 1

    @property
    def size(self) -> int:
        return self.coordset.size

    def verify(self, win: SeqWindow) -> bool:
        """Re-evaluate every stored witness against the window."""
        if self.witnesses is None:
            return True
        m = self.alphabet_size
        if self.coordset.rank == 1 and self.witnesses:
            codes = np.fromiter(self.witnesses.keys(), dtype=np.int64,
                                count=len(self.witnesses))
            shifts = np.fromiter(self.witnesses.values(), dtype=np.int64,
                                 count=len(self.witnesses))
            line, origin = win.line(), win.origin[0]
            for i, a in enumerate(self.coordset.coords):
                idx = shifts + (a - origin)
                if idx.min() < 0 or idx.max() >= line.size:
                    return False
                if not np.array_equal(line[idx], (codes // m ** i) % m):
                    return False
            return True
        for code, shift in self.witnesses.items():
            c = int(code)
            for a in self.coordset.coords:
                coord = tuple(ai + si for ai, si in zip(a, shift))
                if win.value_at(coord) != c % m:
                    return False
                c //= m
        return True

    def dump(self) -> str:
        lines = [
            "TAMELAB-CERT v1",
            f"coords = {self.coordset}",
            f"alphabet = {self.alphabet_size}",
            f"horizon = {self.horizon}",
            f"coverage = {self.coverage.numerator}/{self.coverage.denominator}",
        ]
        if self.witnesses is not None:
            for code in sorted(self.witnesses):
                lines.append(f"witness {format(code, 'x')} = {self.witnesses[code]}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class FreeSearchBudget:
    """Search limits: size cap, candidate pool, shift horizon, optional beam.

    ``pool`` is an inclusive interval (lo, hi) or an explicit coordinate
    list.  ``horizon`` caps the number of shifts sampled per candidate
    (default: all shifts valid in the window).  ``beam`` caps the free
    sets kept per level for joining; leaving it unset makes the search
    exhaustive over the downward closure.
    """

    max_size: int
    pool: tuple
    horizon: int | None = None
    beam: int | None = None

    def __post_init__(self):
        if self.max_size < 1:
            raise ArgumentError("max_size must be >= 1")
        if len(self.pool) == 0:
            raise ArgumentError("candidate pool must be nonempty")

    @classmethod
    def interval(cls, lo: int, hi: int, max_size: int, horizon: int | None = None,
                 beam: int | None = None) -> "FreeSearchBudget":
        return cls(max_size, tuple(range(lo, hi + 1)), horizon, beam)


@dataclass(frozen=True)
class SizeProfile:
    """Best candidate seen at one size level."""

    size: int
    best_coverage: Fraction
    best_set: CoordSet
    free_count: int
    min_free_diameter: int | None


@dataclass(frozen=True)
class FreeSearchResult:
    best: FreeSetCertificate | None
    profile: tuple[SizeProfile, ...]
    horizon: int
    beam_limited: bool

    @property
    def max_free_size(self) -> int:
        return self.best.size if self.best is not None else 0


def is_free(win: SeqWindow, A: CoordSet, horizon: int | None = None) -> FreeSetCertificate:
    """Exact coverage of A over (up to ``horizon``) valid shifts, with witnesses."""
    ps = patterns_on(win, A, shifts=_shift_sample(win, A, horizon), want_witness=True)
    coverage = ps.coverage
    witnesses = ps.witness if coverage == 1 else None
    return FreeSetCertificate(A, win.alphabet_size, ps.shift_count, coverage, witnesses)


def _shift_sample(win: SeqWindow, A: CoordSet, horizon: int | None):
    if horizon is None:
        return "all"
    if win.rank != 1:
        return "all"
    lo = win.origin[0] - A.coords[0]
    hi = win.origin[0] + win.extents[0] - 1 - A.coords[-1]
    return range(lo, min(hi, lo + horizon - 1) + 1)


# ---------------------------------------------------------------------------
# evaluation engine
# ---------------------------------------------------------------------------


class _GapEvaluator:
    """Exact coverage counts for gap tuples over a rank-1 symbol line.

    A gap tuple (0, g2, ..., gs) stands for any placement of the set; its
    sampled shifts are j = 0 .. T-1 with T = min(L - gs, horizon), and
    the pattern code at shift j is sum_i line[g_i + j] * m**i.
    """

    def __init__(self, line: np.ndarray, alphabet: int, horizon: int | None,
                 period: int | None = None):
        self.line = np.ascontiguousarray(line, dtype=np.uint8)
        self.m = int(alphabet)
        self.L = int(line.size)
        self.cap = int(horizon) if horizon else self.L
        self.period = int(period) if period else None
        self._eq_packed: dict[int, list[np.ndarray]] = {}
        self._ext_rows: dict[tuple, np.ndarray] = {}
        self._codes_cache: dict[tuple, np.ndarray] = {}
        self.memo: dict[tuple, int] = {}

    def shift_count(self, span: int) -> int:
        t = self.L - span
        return min(t, self.cap) if t > 0 else 0

    def scan_count(self, span: int) -> int:
        """Shifts actually scanned: a periodic line repeats its codes, so
        counts over one period equal counts over the full range."""
        t = self.shift_count(span)
        return min(t, self.period) if self.period else t

    def codes_range(self, gaps: tuple, j0: int, j1: int) -> np.ndarray:
        """Pattern codes of the gap tuple over shifts [j0, j1).

        Results are cached and must not be mutated; sibling parents reuse
        their common prefix, so per-parent cost is one slice, not len(gaps).
        """
        key = (gaps, j0, j1)
        cached = self._codes_cache.get(key)
        if cached is not None:
            return cached
        if len(gaps) > 1:
            codes = self.codes_range(gaps[:-1], j0, j1) \
                + self.line[gaps[-1] + j0: gaps[-1] + j1].astype(np.int32) \
                * (self.m ** (len(gaps) - 1))
        else:
            codes = self.line[gaps[0] + j0: gaps[0] + j1].astype(np.int32)
        if len(self._codes_cache) > 128:
            self._codes_cache.clear()
        self._codes_cache[key] = codes
        return codes

    def singleton_count(self) -> int:
        t = self.scan_count(0)
        return int(np.unique(self.line[:t]).size) if t else 0

    # -- packed bit helpers ------------------------------------------

    def _packed(self, sym: int) -> list[np.ndarray]:
        if sym not in self._eq_packed:
            eq = self.line == sym
            self._eq_packed[sym] = [np.packbits(eq[r:]) for r in range(8)]
        return self._eq_packed[sym]

    def ext_row(self, sym: int, gap: int) -> np.ndarray:
        """Packed bits of (line[gap + j] == sym) for j < shift_count(gap)."""
        key = (sym, gap)
        row = self._ext_rows.get(key)
        if row is not None:
            return row
        if len(self._ext_rows) * ((self.L + 7) >> 3) > (256 << 20):
            self._ext_rows.clear()
        t_e = self.scan_count(gap)
        packed = self._packed(sym)[gap & 7]
        need = (t_e + 7) >> 3
        row = np.zeros((self.L + 7) >> 3, dtype=np.uint8)
        avail = packed[gap >> 3: (gap >> 3) + need]
        row[: avail.size] = avail
        row[need:] = 0
        rem = t_e & 7
        if rem:
            row[need - 1] &= (0xFF << (8 - rem)) & 0xFF
        self._ext_rows[key] = row
        return row

    # -- group evaluation ----------------------------------------------

    def evaluate_extensions(self, parent: tuple, exts: list[int]) -> dict[int, int]:
        """Exact pattern counts of parent + (e,) for each extension gap e."""
        out: dict[int, int] = {}
        todo = []
        for e in exts:
            key = parent + (e,)
            if key in self.memo:
                out[e] = self.memo[key]
            elif self.shift_count(e) == 0:
                out[e] = 0
            else:
                todo.append(e)
        if not todo:
            return out
        space = self.m ** (len(parent) + 1)
        quick = min(max(16 * space, _QUICK_MIN), _QUICK_MAX)
        seen, counts = self._quick_scan(parent, todo, quick)
        open_exts = sorted(seen)
        if open_exts:
            if space <= _BITSET_SPACE_MAX:
                self._resolve_bitset(parent, seen, counts)
            else:
                self._resolve_epochs(parent, seen, counts, quick)
        for e, count in counts.items():
            self.memo[parent + (e,)] = count
            out[e] = count
        return out

    def _quick_scan(self, parent: tuple, exts: list[int], quick: int):
        """Batched scan of the first shifts; returns open seen-maps and counts."""
        m = self.m
        space_par = m ** len(parent)
        space = space_par * m
        t_par = self.scan_count(parent[-1])
        j1 = min(quick, t_par)
        pcodes = self.codes_range(parent, 0, j1)
        counts: dict[int, int] = {}
        seen: dict[int, np.ndarray] = {}
        batch = max(1, _BATCH_CELLS // j1)
        col = np.arange(j1, dtype=np.int32)
        small_space = space <= (1 << 16)
        for lo in range(0, len(exts), batch):
            rows = exts[lo: lo + batch]
            lens = np.array([min(j1, self.scan_count(e)) for e in rows],
                            dtype=np.int32)
            arr = np.zeros((len(rows), j1), dtype=np.int32)
            for i, e in enumerate(rows):
                arr[i, : lens[i]] = self.line[e: e + lens[i]]
            arr *= space_par
            arr += pcodes[None, :]
            arr[col[None, :] >= lens[:, None]] = space
            if small_space:
                arr += (np.arange(len(rows), dtype=np.int32) * (space + 1))[:, None]
                hits = np.bincount(arr.ravel(), minlength=len(rows) * (space + 1))
                hits = hits.reshape(len(rows), space + 1)[:, :space] > 0
            else:
                hits = np.zeros((len(rows), space + 1), dtype=bool)
                for i in range(len(rows)):
                    hits[i, arr[i]] = True
                hits = hits[:, :space]
            for i, e in enumerate(rows):
                n_hit = int(hits[i].sum())
                if n_hit == space or lens[i] == self.scan_count(e):
                    counts[e] = n_hit
                else:
                    seen[e] = hits[i].copy()
        return seen, counts

    def _resolve_bitset(self, parent: tuple, seen: dict, counts: dict) -> None:
        """Settle each still-missing pattern by one packed-bit intersection."""
        m = self.m
        space_par = m ** len(parent)
        t_par = self.scan_count(parent[-1])
        nbytes = (t_par + 7) >> 3
        pcodes = None
        packed: dict[int, np.ndarray] = {}
        for e, hit in seen.items():
            count = int(hit.sum())
            for code in np.nonzero(~hit)[0]:
                c_par, sym = int(code) % space_par, int(code) // space_par
                mask = packed.get(c_par)
                if mask is None:
                    if pcodes is None:
                        pcodes = self.codes_range(parent, 0, t_par)
                    mask = np.packbits(pcodes == c_par)
                    packed[c_par] = mask
                row = self.ext_row(sym, e)
                if (row[:nbytes] & mask).any():
                    count += 1
            counts[e] = count

    def _resolve_epochs(self, parent: tuple, seen: dict, counts: dict,
                        j_start: int) -> None:
        """Geometric early-exit epochs over the remaining shift range."""
        space_par = self.m ** len(parent)
        space = space_par * self.m
        t_par = self.scan_count(parent[-1])
        live = dict(seen)
        j0 = min(j_start, t_par)
        j1 = min(j0 * 4, t_par)
        while live and j0 < t_par:
            pcodes = self.codes_range(parent, j0, j1)
            for e in list(live):
                je = min(j1, self.scan_count(e))
                if je <= j0:
                    counts[e] = int(live.pop(e).sum())
                    continue
                seg = self.line[e + j0: e + je].astype(np.int32)
                seg *= space_par
                seg += pcodes[: je - j0]
                hit = live[e]
                hit[seg] = True
                if hit.all():
                    counts[e] = space
                    del live[e]
            j0, j1 = j1, min(j1 * 4, t_par)
        for e, hit in live.items():
            counts[e] = int(hit.sum())


# ---------------------------------------------------------------------------
# level-wise search
# ---------------------------------------------------------------------------


def max_free_set(win: SeqWindow, budget: FreeSearchBudget) -> FreeSearchResult:
    """Largest fully-covered coordinate set in the pool, plus a size profile.

    Level s+1 candidates are unions of level-s free sets sharing their
    first s-1 coordinates; every subset of a candidate must already be
    free (downward closure).  Without a beam the search is exhaustive
    over that closure and the result is exactly the maximum free subset
    of the pool at this horizon.  With a beam, returned certificates are
    still valid; the beam can only miss sets, never fabricate them.
    """
    if win.rank != 1:
        raise DimensionError("free-set search operates on rank-1 windows")
    m = win.alphabet_size
    if m ** budget.max_size > DENSE_CAP:
        raise CapacityError(
            f"pattern space {m}**{budget.max_size} exceeds the 2**24 cap")
    horizon = budget.horizon
    pool = tuple(sorted(set(int(p) for p in budget.pool)))
    origin, length = win.origin[0], win.extents[0]
    if pool[0] < origin or pool[-1] >= origin + length:
        raise ArgumentError("pool extends outside the window")
    interval = pool[-1] - pool[0] + 1 == len(pool)
    ev = _GapEvaluator(win.line(), m, horizon, win.meta.get("period"))
    if m ** budget.max_size > ev.shift_count(0):
        warnings.warn("shift horizon below m**max_size: top sizes cannot reach "
                      "coverage 1", stacklevel=2)

    if interval:
        levels = _search_canonical(ev, pool, budget)
    else:
        levels = _search_positioned(ev, pool, budget)

    profile = tuple(levels["profile"])
    best_coords = levels["best"]
    best = None
    if best_coords is not None:
        best = is_free(win, CoordSet.of(best_coords), horizon)
        if not best.is_free or not best.verify(win):
            raise WitnessIntegrityError(
                "search result failed re-verification against the window")
    used = ev.shift_count(0)
    return FreeSearchResult(best, profile, used, levels["beam_limited"])


def _profile_entry(size: int, stats: dict, m: int) -> SizeProfile:
    return SizeProfile(
        size=size,
        best_coverage=Fraction(stats["best_count"], m ** size),
        best_set=CoordSet.of(stats["best_set"]),
        free_count=stats["free_count"],
        min_free_diameter=stats["min_diam"],
    )


def _track(stats: dict, coords: tuple, count: int, space: int) -> None:
    if count > stats["best_count"] or (count == stats["best_count"]
                                       and coords < stats["best_set"]):
        stats["best_count"] = count
        stats["best_set"] = coords
    if count == space:
        stats["free_count"] += 1
        diam = coords[-1] - coords[0]
        if stats["min_diam"] is None or diam < stats["min_diam"]:
            stats["min_diam"] = diam


def _new_stats() -> dict:
    return {"best_count": -1, "best_set": None, "free_count": 0, "min_diam": None}


def _search_canonical(ev: _GapEvaluator, pool: tuple, budget: FreeSearchBudget) -> dict:
    """Level-wise search over canonical gap tuples for an interval pool."""
    m = ev.m
    base = pool[0]
    span = pool[-1] - pool[0]
    profile = []
    beam_limited = False
    best = None

    stats = _new_stats()
    count1 = ev.singleton_count()
    _track(stats, (base,), count1, m)
    profile.append(_profile_entry(1, stats, m))
    if count1 < m:
        return {"best": None, "profile": profile, "beam_limited": False}
    best = (base,)
    free: list[tuple] = [(0,)]

    size = 1
    while size < budget.max_size and free:
        if budget.beam is not None and len(free) > budget.beam:
            free = sorted(free)[: budget.beam]
            beam_limited = True
        # the full subset prune is sound only while the free list is complete
        free_set = set(free) if not beam_limited else None
        groups: dict[tuple, list[int]] = {}
        if size == 1:
            gaps = [g for g in range(1, span + 1) if ev.shift_count(g) > 0]
            if gaps:
                groups[(0,)] = gaps
        else:
            by_prefix: dict[tuple, list[int]] = {}
            for f in sorted(free):
                by_prefix.setdefault(f[:-1], []).append(f[-1])
            for prefix, lasts in by_prefix.items():
                for i, x in enumerate(lasts):
                    exts = [y for y in lasts[i + 1:]
                            if (free_set is None or _subsets_free(prefix + (x, y), free_set))
                            and ev.shift_count(y) > 0]
                    if exts:
                        groups[prefix + (x,)] = exts
        if not groups:
            break
        size += 1
        space = m ** size
        stats = _new_stats()
        next_free: list[tuple] = []
        for parent in sorted(groups):
            counts = ev.evaluate_extensions(parent, groups[parent])
            for e in sorted(counts):
                cand = parent + (e,)
                _track(stats, tuple(base + g for g in cand), counts[e], space)
                if counts[e] == space:
                    next_free.append(cand)
        profile.append(_profile_entry(size, stats, m))
        if next_free:
            next_free.sort()
            best = tuple(base + g for g in next_free[0])
        free = next_free
    return {"best": best, "profile": profile, "beam_limited": beam_limited}


def _subsets_free(cand: tuple, free_set: set) -> bool:
    """All size-(s-1) subsets of a canonical candidate must be free."""
    for i in range(len(cand)):
        sub = cand[:i] + cand[i + 1:]
        if sub[0] != 0:
            sub = tuple(g - sub[0] for g in sub)
        if sub not in free_set:
            return False
    return True


def _search_positioned(ev: _GapEvaluator, pool: tuple, budget: FreeSearchBudget) -> dict:
    """Level-wise search over positioned sets for an explicit pool."""
    m = ev.m
    profile = []
    beam_limited = False
    best = None

    stats = _new_stats()
    free: list[tuple] = []
    count1 = ev.singleton_count()
    for a in pool:
        _track(stats, (a,), count1, m)
        if count1 == m:
            free.append((a,))
    profile.append(_profile_entry(1, stats, m))
    if free:
        best = free[0]

    size = 1
    while size < budget.max_size and free:
        if budget.beam is not None and len(free) > budget.beam:
            free = sorted(free)[: budget.beam]
            beam_limited = True
        # the full subset prune is sound only while the free list is complete
        free_set = set(free) if not beam_limited else None
        by_prefix: dict[tuple, list[int]] = {}
        for f in sorted(free):
            by_prefix.setdefault(f[:-1], []).append(f[-1])
        size += 1
        space = m ** size
        stats = _new_stats()
        next_free: list[tuple] = []
        any_candidate = False
        for prefix, lasts in sorted(by_prefix.items()):
            for i, x in enumerate(lasts):
                parent = prefix + (x,)
                exts = [y for y in lasts[i + 1:]
                        if (free_set is None or all(
                            c in free_set
                            for c in combinations(parent + (y,), size - 1)))
                        and ev.shift_count(y - min(parent + (y,))) > 0]
                if not exts:
                    continue
                any_candidate = True
                gaps_parent = tuple(g - parent[0] for g in parent)
                counts = ev.evaluate_extensions(gaps_parent,
                                                [y - parent[0] for y in exts])
                for y in sorted(exts):
                    cand = parent + (y,)
                    count = counts[y - parent[0]]
                    _track(stats, cand, count, space)
                    if count == space:
                        next_free.append(cand)
        if not any_candidate:
            break
        profile.append(_profile_entry(size, stats, m))
        if next_free:
            next_free.sort()
            best = next_free[0]
        free = next_free
    return {"best": best, "profile": profile, "beam_limited": beam_limited}


def free_density_profile(win: SeqWindow, budget: FreeSearchBudget) -> list[tuple[int, int, float]]:
    """(size, minimal diameter of a free set found, size/span density) rows.

    The density proxy divides the size by the occupied span (diameter + 1),
    so a free set of s contiguous coordinates scores exactly 1.
    """
    result = max_free_set(win, budget)
    rows = []
    for entry in result.profile:
        if entry.free_count and entry.min_free_diameter is not None:
            diam = entry.min_free_diameter
            rows.append((entry.size, diam, entry.size / (diam + 1)))
    return rows


def brute_force_free_oracle(win: SeqWindow, pool, max_size: int = 4,
                            horizon: int = 64) -> list[CoordSet]:
    """Every free subset of the pool, by direct enumeration (tiny instances).

    Independent of the search path: pure-Python tuple sets, no shared
    evaluation code.  Caps: window length <= 64 shifts sampled per set,
    |pool| <= 8, max_size <= 4.
    """
    if max_size > 4:
        raise ArgumentError("oracle caps subset size at 4")
    pool = tuple(sorted(set(int(p) for p in pool)))
    if len(pool) > 8:
        raise ArgumentError("oracle caps the pool at 8 coordinates")
    if horizon > 64:
        raise ArgumentError("oracle caps the horizon at 64 shifts")
    line = win.line()
    origin, length = win.origin[0], win.extents[0]
    m = win.alphabet_size
    out = []
    for size in range(1, max_size + 1):
        for subset in combinations(pool, size):
            lo = origin - subset[0]
            hi = origin + length - 1 - subset[-1]
            if hi < lo:
                continue
            hi = min(hi, lo + horizon - 1)
            seen = set()
            for t in range(lo, hi + 1):
                seen.add(tuple(int(line[a + t - origin]) for a in subset))
            if len(seen) == m ** size:
                out.append(CoordSet.of(subset))
    return out
