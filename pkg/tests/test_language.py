"""Window languages: pattern sets, complexity, projections."""

import numpy as np
import pytest

from tamelab.errors import ArgumentError, CapacityError, ShiftRangeError
from tamelab.language import (
    CoordSet,
    complexity,
    count_contiguous,
    patterns_on,
    project,
)
from tamelab.sources import SeqSource, SeqWindow, materialize


def explicit(symbols, origin=0):
    arr = np.asarray(symbols, dtype=np.uint8)
    return materialize(SeqSource.explicit(SeqWindow((origin,), arr, int(arr.max()) + 1
                                                    if arr.max() >= 1 else 2, "t")),
                       (origin, origin + len(symbols)))


def brute_patterns(line, coords, shifts):
    return {tuple(int(line[a + t]) for a in coords) for t in shifts}


def test_constant_window_single_pattern():
    win = explicit([0] * 50)
    ps = patterns_on(win, CoordSet.of([0, 3, 7]))
    assert ps.count == 1 and ps.codes.tolist() == [0]


def test_de_bruijn_full_coverage():
    win = materialize(SeqSource.de_bruijn(4), (0, 30))
    ps = patterns_on(win, CoordSet.of(range(4)))
    assert ps.count == 16


def test_fibonacci_three_coordinates_exactly_four_patterns():
    win = materialize(SeqSource.fibonacci(), (0, 1001))
    ps = patterns_on(win, CoordSet.of([0, 1, 2]), want_witness=True)
    assert ps.count == 4
    # independent brute force over the same shifts
    line = win.line()
    brute = brute_patterns(line, [0, 1, 2], range(0, 998))
    assert {ps.decode(int(c)) for c in ps.codes} == brute
    # witnesses reproduce their patterns
    for code, shift in ps.witness.items():
        assert tuple(int(line[a + shift]) for a in (0, 1, 2)) == ps.decode(code)


def test_witness_is_smallest_shift():
    win = explicit([0, 1, 0, 1])
    ps = patterns_on(win, CoordSet.of([0]), want_witness=True)
    assert ps.witness == {0: 0, 1: 1}


def test_halfline_p5_exact_pattern_list():
    win = materialize(SeqSource.char_halfline(), (-1000, 1000))
    lang = complexity(win, 5)
    assert lang.counts == (2, 3, 4, 5, 6)
    ps = patterns_on(win, CoordSet.of(range(5)))
    expected = {(0, 0, 0, 0, 0), (0, 0, 0, 0, 1), (0, 0, 0, 1, 1),
                (0, 0, 1, 1, 1), (0, 1, 1, 1, 1), (1, 1, 1, 1, 1)}
    assert {ps.decode(int(c)) for c in ps.codes} == expected


def test_fibonacci_complexity_n_plus_one():
    win = materialize(SeqSource.fibonacci(), (0, 100_000))
    lang = complexity(win, 30)
    assert lang.counts == tuple(n + 1 for n in range(1, 31))
    # independent set-of-windows oracle at a few lengths
    line = win.line()
    for n in (5, 17, 30):
        brute = {line[t: t + n].tobytes() for t in range(line.size - n + 1)}
        assert len(brute) == n + 1
        assert count_contiguous(win, n) == n + 1


def test_de_bruijn_complexity_doubles():
    win = materialize(SeqSource.de_bruijn(12), (0, (1 << 12) + 12))
    lang = complexity(win, 12)
    assert lang.counts == tuple(2 ** n for n in range(1, 13))


def test_count_contiguous_row_path_matches_wide_path():
    win = materialize(SeqSource.fibonacci(), (0, 3000))
    line = win.line()
    for n in (63, 70):  # beyond the 64-bit packing limit
        brute = {line[t: t + n].tobytes() for t in range(line.size - n + 1)}
        assert count_contiguous(win, n) == len(brute)


def test_rank2_box_complexity():
    from tamelab.torus import GOLDEN, SQRT2_FRAC, SCALE, TorusPoint, RotationSpec, CutPartition
    src = SeqSource.sturmian(RotationSpec.circle(GOLDEN, SQRT2_FRAC),
                             CutPartition((0, SCALE - GOLDEN)), TorusPoint.zero())
    win = materialize(src, ((0, 30), (0, 30)))
    lang = complexity(win, 2)
    # brute force 2x2 boxes
    sym = win.symbols
    boxes = {tuple(sym[i:i + 2, j:j + 2].reshape(-1)) for i in range(29) for j in range(29)}
    assert lang.counts[1] == len(boxes)


def test_projection_identity_and_cube():
    win = materialize(SeqSource.de_bruijn(4), (0, 40))
    A = CoordSet.of([0, 1])
    full = patterns_on(win, A)
    assert np.array_equal(project(full, A).codes, full.codes)
    single = project(full, CoordSet.of([0]))
    assert single.codes.tolist() == [0, 1]


def test_projection_consistency_with_direct_computation():
    win = materialize(SeqSource.fibonacci(), (0, 5000))
    A = CoordSet.of([0, 1, 2])
    sub = CoordSet.of([0, 2])
    shifts = range(0, 4000)
    proj = project(patterns_on(win, A, shifts=shifts), sub)
    direct = patterns_on(win, sub, shifts=shifts)
    assert np.array_equal(proj.codes, direct.codes)


def test_projection_bound_by_hull_complexity():
    win = materialize(SeqSource.fibonacci(), (0, 20_000))
    lang = complexity(win, 40)
    for coords in ([0, 3], [0, 5, 11], [2, 9, 17, 30]):
        A = CoordSet.of(coords)
        assert patterns_on(win, A).count <= lang.p(A.diameter + 1)


def test_shift_invariance_subset_relations():
    win = materialize(SeqSource.fibonacci(), (-5000, 5000))
    A = CoordSet.of([0, 2, 5])
    base = set(patterns_on(win, A, shifts=range(0, 3000)).codes.tolist())
    moved = set(patterns_on(win, A, shifts=range(700, 3700)).codes.tolist())
    both = set(patterns_on(win, A, shifts=range(0, 3700)).codes.tolist())
    assert base <= both and moved <= both


def test_complexity_monotone_and_submultiplicative_on_bundled_sources():
    sources = [
        (SeqSource.fibonacci(), (0, 20_000)),
        (SeqSource.morse(), (0, 20_000)),
        (SeqSource.de_bruijn(8), (0, 4096)),
        (SeqSource.char_halfline(), (-2000, 2000)),
        (SeqSource.concat_nonnull(), (0, 10_000)),
        (SeqSource.ip_indicator(10, 5), (-10_000, 10_000)),
        (SeqSource.random(99), (0, 20_000)),
    ]
    for src, box in sources:
        counts = complexity(materialize(src, box), 12).counts
        assert all(a <= b for a, b in zip(counts, counts[1:])), src.kind
        for n in range(1, 12):
            for m in range(1, 12 - n + 1):
                assert counts[n + m - 1] <= counts[n - 1] * counts[m - 1], src.kind


def test_capacity_and_range_errors():
    win = materialize(SeqSource.de_bruijn(4), (0, 64))
    with pytest.raises(CapacityError):
        patterns_on(win, CoordSet.of(range(25)))
    with pytest.raises(ShiftRangeError):
        patterns_on(win, CoordSet.of([0, 1]), shifts=[100])
    with pytest.raises(ArgumentError):
        project(patterns_on(win, CoordSet.of([0, 1])), CoordSet.of([5]))
    with pytest.raises(ArgumentError):
        CoordSet.of([3, 3])
