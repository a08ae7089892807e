"""Command-line harness: configs, artifacts, exit codes, golden file."""

import hashlib
from pathlib import Path

from tamelab.cli import ExperimentConfig, main, run
from tamelab.presets import PRESETS

DATA = Path(__file__).parent / "data"


def run_preset(tmp_path, command, preset, extra=()):
    rc = main([command, "--preset", preset, "--out", str(tmp_path), *extra])
    return rc, tmp_path / f"{preset}-{command}"


def test_generate_matches_committed_golden_file(tmp_path):
    rc, out = run_preset(tmp_path, "generate", "fib64")
    assert rc == 0
    produced = (out / "sequence.seq").read_bytes()
    golden = (DATA / "fibonacci_64.seq").read_bytes()
    assert hashlib.sha256(produced).hexdigest() == hashlib.sha256(golden).hexdigest()


def test_config_round_trip_lossless():
    for name, text in PRESETS.items():
        cfg = ExperimentConfig.from_text(text)
        again = ExperimentConfig.from_text(cfg.to_text())
        assert cfg.sections == again.sections, name
        assert cfg.digest == again.digest


def test_manifest_lists_every_artifact(tmp_path):
    rc, out = run_preset(tmp_path, "complexity", "halfline")
    assert rc == 0
    manifest = (out / "manifest.txt").read_text().splitlines()
    listed = {line.split()[-1] for line in manifest if line.startswith("sha256 ")}
    actual = {p.name for p in out.iterdir()} - {"manifest.txt"}
    assert listed == actual
    for line in manifest:
        if line.startswith("sha256 "):
            _, digest, name = line.split()
            assert hashlib.sha256((out / name).read_bytes()).hexdigest() == digest


def test_unknown_preset_and_bad_config_exit_codes(tmp_path):
    assert main(["generate", "--preset", "nope", "--out", str(tmp_path)]) == 2
    bad = tmp_path / "bad.cfg"
    bad.write_text("[source]\nkind = warp\n\n[window]\nbox = 0:8\n")
    assert main(["generate", "--config", str(bad), "--out", str(tmp_path)]) == 2
    missing = main(["generate", "--config", str(tmp_path / "nope.cfg"),
                    "--out", str(tmp_path)])
    assert missing == 4


def test_capacity_error_exit_code(tmp_path):
    cfg = tmp_path / "big.cfg"
    cfg.write_text("[source]\nkind = morse\n\n[window]\nbox = 0:300000000\n")
    assert main(["generate", "--config", str(cfg), "--out", str(tmp_path)]) == 3


def test_range_error_exit_code(tmp_path):
    cfg = tmp_path / "r.cfg"
    cfg.write_text("[source]\nkind = morse\n\n[window]\nbox = 0:32\n\n"
                   "[seqentropy]\ncoords = 0,40\n")
    assert main(["seqentropy", "--config", str(cfg), "--out", str(tmp_path)]) == 5


def test_freeset_set_mode_certificate(tmp_path):
    rc, out = run_preset(tmp_path, "freeset", "ip10")
    assert rc == 0
    cert = (out / "certificate.txt").read_text()
    assert "coords = 10,100,1000" in cert
    assert "coverage = 1/1" in cert


def test_classify_format_csv(tmp_path):
    rc, out = run_preset(tmp_path, "classify", "halfline", ("--format", "csv"))
    assert rc == 0
    rows = (out / "report.csv").read_text().splitlines()
    assert rows[0].startswith("source,")
    assert rows[1].endswith("True")  # tame_consistent column


def test_family_orbit_report(tmp_path):
    cfg = tmp_path / "fam.cfg"
    cfg.write_text("""
[source]
kind = sturmian
alphas = golden
cuts = 0,one_minus_golden
base = 0

[window]
box = 0:2000

[family]
mode = orbit
shifts = 0:15
points = 0:999
a = 0.25
b = 0.75
max_len = 4
variation = true
cell_width = 0.05
epsilon = 0.5
""")
    rc = main(["family", "--config", str(cfg), "--out", str(tmp_path)])
    assert rc == 0
    out = next(tmp_path.glob("*-family"))
    text = (out / "independence.txt").read_text()
    assert "witness = none" in text or "witness_length" in text
    assert "variation_max" in text


def test_project_command_artifacts(tmp_path):
    cfg = tmp_path / "p.cfg"
    cfg.write_text("[source]\nkind = de_bruijn\norder = 4\n\n[window]\nbox = 0:64\n\n"
                   "[project]\ncoords = 0,1,2\nsubset = 0,2\n")
    rc = main(["project", "--config", str(cfg), "--out", str(tmp_path)])
    assert rc == 0
    out = next(tmp_path.glob("*-project"))
    full = (out / "patterns.txt").read_text()
    proj = (out / "projected.txt").read_text()
    assert "count = 8" in full
    assert "count = 4" in proj


def test_run_api_returns_exit_status(tmp_path):
    cfg = ExperimentConfig.from_preset("fib64")
    assert run("generate", cfg, tmp_path / "x") == 0
    assert run("bogus", cfg, tmp_path / "y") == 2
