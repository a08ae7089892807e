"""Evidence reports: flags, projection probes, determinism."""

import numpy as np
import pytest

from tamelab.classify import (
    ClassifyParams,
    classify,
    default_projection_families,
    probe_projection_growth,
)
from tamelab.errors import ArgumentError
from tamelab.sources import SeqSource, SeqWindow, concat_block_bounds, materialize


LIGHT_DB = ClassifyParams(horizon=1 << 17, entropy_n_max=16,
                          free_brackets=(4, 8, 12), free_max_size=12, beam=512)


def test_de_bruijn_positive_entropy_evidence():
    report = classify(SeqSource.de_bruijn(16), LIGHT_DB)
    assert report.positive_entropy_evidence
    assert report.nonnull_evidence
    assert not report.tame_consistent
    assert report.entropy_headline == pytest.approx(1.0)


def test_fibonacci_tame_consistent():
    report = classify(SeqSource.fibonacci(), ClassifyParams(horizon=100_000))
    assert report.tame_consistent
    assert not report.nonnull_evidence
    assert not report.positive_entropy_evidence
    assert report.entropy_headline < 0.01
    assert max(s for _, s in report.max_free_by_bracket) == 2


def test_halfline_tame_consistent_small_headline():
    report = classify(SeqSource.char_halfline(), ClassifyParams(horizon=2000))
    assert report.tame_consistent
    assert report.entropy_headline < 0.01


def test_concat_nonnull_but_not_positive_entropy():
    end = concat_block_bounds(10)[-1][1]
    report = classify(SeqSource.concat_nonnull(),
                      ClassifyParams(window=(0, end + 1), entropy_n_max=48,
                                     free_brackets=(4, 8, 12, 16),
                                     free_max_size=12, beam=1024))
    assert report.nonnull_evidence
    assert not report.positive_entropy_evidence
    assert not report.tame_consistent  # large free sets are present at scale


def test_flag_invariants_across_bundled_sources():
    reports = [
        classify(SeqSource.de_bruijn(10), ClassifyParams(
            horizon=4096, entropy_n_max=10, free_brackets=(4, 8), free_max_size=8,
            beam=256)),
        classify(SeqSource.fibonacci(), ClassifyParams(horizon=20_000)),
        classify(SeqSource.char_halfline(), ClassifyParams(horizon=2000)),
        classify(SeqSource.morse(), ClassifyParams(horizon=20_000)),
    ]
    for report in reports:
        if report.positive_entropy_evidence:
            assert report.nonnull_evidence
        beaten = any(s > np.log2(d + 1) + 1.0 for s, d, _ in report.density_rows)
        if report.tame_consistent:
            assert not beaten


def test_reports_are_deterministic():
    params = ClassifyParams(horizon=8192, entropy_n_max=24,
                            free_brackets=(4, 8), free_max_size=8)
    a = classify(SeqSource.morse(), params)
    b = classify(SeqSource.morse(), params)
    assert a.to_text() == b.to_text()
    assert a.to_csv_row() == b.to_csv_row()


def test_probe_constant_bounded():
    win = materialize(SeqSource.explicit(
        SeqWindow((0,), np.zeros(512, dtype=np.uint8), 2, "z")), (0, 512))
    probe = probe_projection_growth(win, range(0, 100, 2), 10, "evens")
    assert probe.growth == "bounded"
    assert set(probe.counts) == {1}


def test_probe_de_bruijn_exponential():
    win = materialize(SeqSource.de_bruijn(12), (0, 1 << 13))
    probe = probe_projection_growth(win, range(64), 12, "naturals")
    assert probe.growth == "exponential"
    assert list(probe.counts) == [2 ** (i + 1) for i in range(len(probe.counts))]


def test_probe_halfline_evens_subexponential():
    win = materialize(SeqSource.char_halfline(), (-2000, 2000))
    probe = probe_projection_growth(win, range(0, 200, 2), 12, "evens")
    assert probe.growth in ("bounded", "polynomial")
    # monotone step patterns: count grows by at most one per kept element
    assert all(b - a <= 1 for a, b in zip(probe.counts, probe.counts[1:]))


def test_probe_rejects_decreasing_family():
    win = materialize(SeqSource.morse(), (0, 64))
    with pytest.raises(ArgumentError):
        probe_projection_growth(win, [5, 3, 1], 3)


def test_default_projection_families_fit_window():
    win = materialize(SeqSource.morse(), (0, 100_000))
    fams = default_projection_families(win, 12)
    assert set(fams) == {"evens", "lacunary", "powers10"}
    lo, hi = 0, 99_999
    for coords in fams.values():
        assert all(lo <= c <= hi for c in coords)


def test_report_text_and_csv_shapes():
    report = classify(SeqSource.char_halfline(), ClassifyParams(horizon=2000))
    text = report.to_text()
    assert text.startswith("TAMELAB-REPORT v1")
    assert "flag tame_consistent = True" in text
    row = report.to_csv_row()
    assert row.count(",") == report.csv_row_header().count(",")
