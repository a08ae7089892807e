"""Command-line harness: configs, experiment execution, artifact files.

Configuration is sectioned ``key = value`` text (INI).  Every run writes
its artifacts plus a manifest listing the config digest, versions, wall
time, and a content digest per output file.  Outputs are byte-identical
for identical configs regardless of thread count; wall time lives only
in the manifest.

Exit codes: 0 success, 2 configuration error, 3 capacity error,
4 I/O error, 5 invalid argument or range, 6 unexpected failure.
"""

from __future__ import annotations

import argparse
import configparser
import hashlib
import io
import os
import sys
import time
from dataclasses import dataclass
from itertools import product
from pathlib import Path

import numpy as np

from . import __version__
from .classify import ClassifyParams, classify
from .entropy import entropy_estimate, sequence_entropy_estimate
from .errors import ArgumentError, ConfigError, DataIOError, TameLabError
from .families import (
    FunctionSample,
    GridCover,
    epsilon_ns,
    find_independent_subfamily,
    l1_lower_bound,
    orbit_family_sample,
    total_variation,
)
from .freeset import FreeSearchBudget, brute_force_free_oracle, is_free, max_free_set
from .language import CoordSet, complexity, patterns_on, project
from .presets import PRESETS
from .sources import SeqSource, materialize, read_window, write_window
from .torus import BallRegion, CutPartition, RotationSpec, TorusPoint, parse_fraction

COMMANDS = ("generate", "complexity", "freeset", "entropy", "seqentropy",
            "project", "family", "classify")

OUT_ENV = "TAMELAB_OUT"


@dataclass(frozen=True)
class ExperimentConfig:
    """Parsed sectioned key=value configuration with a stable digest."""

    sections: tuple[tuple[str, tuple[tuple[str, str], ...]], ...]

    @classmethod
    def from_text(cls, text: str) -> "ExperimentConfig":
        parser = configparser.ConfigParser()
        try:
            parser.read_string(text)
        except configparser.Error as exc:
            raise ConfigError(f"cannot parse config: {exc}") from exc
        sections = tuple(
            (name, tuple(sorted(parser.items(name))))
            for name in sorted(parser.sections()))
        return cls(sections)

    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise DataIOError(f"cannot read config {path}: {exc}") from exc
        return cls.from_text(text)

    @classmethod
    def from_preset(cls, name: str) -> "ExperimentConfig":
        if name not in PRESETS:
            raise ConfigError(f"unknown preset {name!r}; available: "
                              + ", ".join(sorted(PRESETS)))
        return cls.from_text(PRESETS[name])

    def to_text(self) -> str:
        out = io.StringIO()
        for name, items in self.sections:
            out.write(f"[{name}]\n")
            for key, value in items:
                out.write(f"{key} = {value}\n")
            out.write("\n")
        return out.getvalue()

    @property
    def digest(self) -> str:
        return hashlib.blake2b(self.to_text().encode(), digest_size=16).hexdigest()

    # -- access helpers ------------------------------------------------

    def section(self, name: str) -> dict[str, str]:
        for sec, items in self.sections:
            if sec == name:
                return dict(items)
        return {}

    def get(self, section: str, key: str, default: str | None = None) -> str | None:
        return self.section(section).get(key, default)

    def require(self, section: str, key: str) -> str:
        value = self.get(section, key)
        if value is None:
            raise ConfigError(f"missing [{section}] {key}")
        return value

    # -- typed views ---------------------------------------------------

    def source(self) -> SeqSource:
        sec = self.section("source")
        if not sec:
            raise ConfigError("missing [source] section")
        kind = sec.get("kind")
        if kind == "sturmian":
            alphas = _fraction_list(self.require("source", "alphas"))
            cuts = _fraction_list(self.require("source", "cuts"))
            base = _fraction_list(self.get("source", "base", "0"))
            return SeqSource.sturmian(RotationSpec.circle(*alphas),
                                      CutPartition(tuple(cuts)),
                                      TorusPoint(tuple(base)))
        if kind == "sphere":
            alphas = _fraction_list(self.require("source", "alphas"))
            center = _fraction_list(self.require("source", "center"))
            base = _fraction_list(self.require("source", "base"))
            radius = parse_fraction(self.require("source", "radius"))
            return SeqSource.sphere(BallRegion(TorusPoint(tuple(center)), radius),
                                    RotationSpec((TorusPoint(tuple(alphas)),)),
                                    TorusPoint(tuple(base)))
        if kind == "ip_indicator":
            return SeqSource.ip_indicator(int(self.require("source", "base")),
                                          int(self.require("source", "exponent_cap")))
        if kind == "morse":
            return SeqSource.morse()
        if kind == "concat_nonnull":
            return SeqSource.concat_nonnull()
        if kind == "char_halfline":
            return SeqSource.char_halfline()
        if kind == "de_bruijn":
            return SeqSource.de_bruijn(int(self.require("source", "order")))
        if kind == "random":
            return SeqSource.random(int(self.require("source", "seed")),
                                    int(self.get("source", "alphabet", "2")))
        if kind == "explicit":
            return SeqSource.explicit(read_window(self.require("source", "path")))
        raise ConfigError(f"unknown source kind {kind!r}")

    def window_box(self):
        box = self.get("window", "box")
        if box is None:
            raise ConfigError("missing [window] box")
        axes = []
        for axis in box.split(";"):
            lo, hi = axis.split(":")
            axes.append((int(lo), int(hi)))
        return axes[0] if len(axes) == 1 else tuple(axes)


def _fraction_list(text: str) -> list[int]:
    return [parse_fraction(tok) for tok in text.split(",")]


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",")]


def _pool_spec(text: str) -> tuple[int, ...]:
    if ":" in text:
        lo, hi = text.split(":")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(_int_list(text))


def _range_spec(text: str) -> list[int]:
    if ":" in text:
        lo, hi = text.split(":")
        return list(range(int(lo), int(hi) + 1))
    return _int_list(text)


class _Runner:
    """Executes one command, collecting artifact files and the manifest."""

    def __init__(self, config: ExperimentConfig, out_dir: Path, threads: int,
                 fmt: str):
        self.config = config
        self.out = out_dir
        self.threads = threads
        self.fmt = fmt
        self.artifacts: list[Path] = []

    def write(self, name: str, text: str) -> None:
        path = self.out / name
        try:
            path.write_text(text)
        except OSError as exc:
            raise DataIOError(f"cannot write {path}: {exc}") from exc
        self.artifacts.append(path)

    def materialized(self):
        return materialize(self.config.source(), self.config.window_box(),
                           threads=self.threads)

    # -- commands --------------------------------------------------------

    def cmd_generate(self):
        win = self.materialized()
        path = self.out / "sequence.seq"
        write_window(win, path)
        self.artifacts.append(path)
        lines = [f"cells = {win.symbols.size}", f"digest = {win.source_digest}"]
        for key in sorted(win.meta):
            lines.append(f"{key} = {win.meta[key]}")
        self.write("generate.txt", "\n".join(lines) + "\n")

    def cmd_complexity(self):
        win = self.materialized()
        n_max = int(self.config.get("complexity", "n_max", "24"))
        lang = complexity(win, n_max)
        self.write("complexity.csv", "\n".join(lang.csv_rows()) + "\n")

    def cmd_entropy(self):
        win = self.materialized()
        n_max = int(self.config.get("entropy", "n_max", "24"))
        series = entropy_estimate(win, n_max)
        rows = series.csv_rows()
        rows.append(f"headline,,{series.headline:.9f}")
        self.write("entropy.csv", "\n".join(rows) + "\n")

    def cmd_seqentropy(self):
        win = self.materialized()
        coords = _int_list(self.config.require("seqentropy", "coords"))
        series = sequence_entropy_estimate(win, coords)
        rows = series.csv_rows()
        rows.append(f"headline,,{series.headline:.9f}")
        self.write("seqentropy.csv", "\n".join(rows) + "\n")

    def cmd_freeset(self):
        win = self.materialized()
        sec = self.config.section("freeset")
        if sec.get("oracle_check", "false").lower() == "true":
            return self._freeset_oracle_check(sec)
        if "set" in sec:
            cert = is_free(win, CoordSet.of(_int_list(sec["set"])),
                           horizon=_opt_int(sec.get("horizon")))
            if not cert.verify(win):
                raise ArgumentError("certificate failed re-verification")
            self.write("certificate.txt", cert.dump())
            return
        pool = _pool_spec(sec.get("pool", "0:15"))
        budget = FreeSearchBudget(
            max_size=int(sec.get("max_size", "12")),
            pool=pool,
            horizon=_opt_int(sec.get("horizon")),
            beam=_opt_int(sec.get("beam")),
        )
        result = max_free_set(win, budget)
        rows = ["size,best_coverage,free_count,min_free_diameter,best_set"]
        for entry in result.profile:
            diam = entry.min_free_diameter
            rows.append(f"{entry.size},{entry.best_coverage},{entry.free_count},"
                        f"{'' if diam is None else diam},\"{entry.best_set}\"")
        if result.beam_limited:
            rows.append("# beam-limited: sizes may be underestimated")
        self.write("profile.csv", "\n".join(rows) + "\n")
        if result.best is not None:
            self.write("certificate.txt", result.best.dump())

    def _freeset_oracle_check(self, sec: dict[str, str]):
        instances = int(sec.get("oracle_instances", "100"))
        seed = int(self.config.get("source", "seed", "1"))
        rng = np.random.default_rng(seed)
        agree = 0
        rows = ["instance,length,pool,oracle_max,search_max,agree"]
        from .sources import SeqWindow
        for i in range(instances):
            length = int(rng.integers(16, 65))
            line = rng.integers(0, 2, length).astype(np.uint8)
            win = materialize(SeqSource.explicit(
                SeqWindow((0,), line, 2, f"oracle-{i}")), (0, length))
            pool_size = int(rng.integers(2, 9))
            pool = tuple(sorted(rng.choice(length, size=pool_size,
                                           replace=False).tolist()))
            oracle = brute_force_free_oracle(win, pool, 4, 64)
            omax = max((c.size for c in oracle), default=0)
            found = max_free_set(win, FreeSearchBudget(4, pool, horizon=64))
            ok = found.max_free_size == omax
            agree += ok
            rows.append(f"{i},{length},\"{','.join(map(str, pool))}\","
                        f"{omax},{found.max_free_size},{ok}")
        rows.append(f"# agreement {agree}/{instances}")
        self.write("oracle_report.csv", "\n".join(rows) + "\n")
        if agree != instances:
            raise ArgumentError("searcher disagreed with the brute-force oracle")

    def cmd_project(self):
        win = self.materialized()
        coords = CoordSet.of(_int_list(self.config.require("project", "coords")))
        subset = CoordSet.of(_int_list(self.config.require("project", "subset")))
        full = patterns_on(win, coords, want_witness=True)
        projected = project(full, subset)
        self.write("patterns.txt", full.dump())
        self.write("projected.txt", projected.dump())

    def cmd_family(self):
        sec = self.config.section("family")
        mode = sec.get("mode", "orbit")
        if mode == "cube":
            dim = int(sec.get("dim", "3"))
            cols = list(product([0, 1], repeat=dim))
            values = np.array([[c[i] for c in cols] for i in range(dim)],
                              dtype=float)
            fs = FunctionSample(values, labels=tuple(str(c) for c in cols))
        elif mode == "orbit":
            fs = orbit_family_sample(self.config.source(),
                                     _range_spec(sec.get("shifts", "0:63")),
                                     _range_spec(sec.get("points", "0:999")))
        else:
            raise ConfigError(f"unknown family mode {mode!r}")
        self.write("family.csv", "\n".join(fs.csv_rows()) + "\n")
        a = float(sec.get("a", "0.25"))
        b = float(sec.get("b", "0.75"))
        max_len = int(sec.get("max_len", "6"))
        witness = find_independent_subfamily(fs, a, b, max_len)
        lines = [f"rows = {fs.n_members}", f"columns = {fs.n_points}",
                 f"a = {a}", f"b = {b}", f"max_len = {max_len}"]
        if witness is None:
            lines.append(f"witness = none at depth {max_len} over {fs.n_points} columns")
        else:
            certified, empirical = l1_lower_bound(fs, witness)
            lines.append(f"witness_length = {witness.length}")
            lines.append(f"witness_members = {','.join(map(str, witness.indices))}")
            lines.append(f"l1_certified = {certified}")
            lines.append(f"l1_empirical = {empirical}")
        if "cell_width" in sec and fs.labels is not None and mode == "orbit":
            cover = GridCover.from_labels(fs.labels, float(sec["cell_width"]))
            eps = float(sec.get("epsilon", "0.5"))
            hit, cell = epsilon_ns(fs, cover, eps)
            lines.append(f"epsilon_ns eps={eps} -> {hit}"
                         + (f" cell={cell}" if hit else ""))
        if sec.get("variation", "false").lower() == "true" and fs.labels is not None:
            order = np.argsort(np.asarray(fs.labels, dtype=float))
            labels = np.asarray(fs.labels, dtype=float)[order]
            tvs = [total_variation(list(zip(labels, fs.values[i][order])))
                   for i in range(fs.n_members)]
            lines.append(f"variation_max = {max(tvs)}")
        self.write("independence.txt", "\n".join(lines) + "\n")
        if witness is not None:
            self.write("witness.txt", witness.dump())

    def cmd_classify(self):
        sec = self.config.section("classify")
        kwargs = {}
        if "window" in sec:
            lo, hi = sec["window"].split(":")
            kwargs["window"] = (int(lo), int(hi))
        else:
            kwargs["window"] = self.config.window_box()
        for key, name, conv in (("entropy_n_max", "entropy_n_max", int),
                                ("max_size", "free_max_size", int),
                                ("beam", "beam", int),
                                ("prefix", "projection_prefix", int),
                                ("density_threshold", "density_threshold", float),
                                ("entropy_threshold", "entropy_threshold", float),
                                ("free_slack", "free_slack", float)):
            if key in sec:
                kwargs[name] = conv(sec[key])
        if "brackets" in sec:
            kwargs["free_brackets"] = tuple(_int_list(sec["brackets"]))
        params = ClassifyParams(**kwargs)
        report = classify(self.config.source(), params, threads=self.threads)
        if self.fmt == "csv":
            self.write("report.csv",
                       report.csv_row_header() + "\n" + report.to_csv_row() + "\n")
        else:
            self.write("report.txt", report.to_text())


def run(command: str, config: ExperimentConfig, out_dir, threads: int = 1,
        fmt: str = "text") -> int:
    """Execute one analysis command; returns the process exit code."""
    started = time.monotonic()
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        runner = _Runner(config, out, threads, fmt)
        if command not in COMMANDS:
            raise ConfigError(f"unknown command {command!r}")
        getattr(runner, f"cmd_{command}")()
    except TameLabError as exc:
        print(f"tamelab {command}: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception as exc:  # noqa: BLE001 - the harness maps everything to codes
        print(f"tamelab {command}: unexpected failure: {exc}", file=sys.stderr)
        return 6
    wall = time.monotonic() - started
    lines = [
        "TAMELAB-MANIFEST v1",
        f"command = {command}",
        f"config = {config.digest}",
        f"package = tamelab {__version__}",
        f"python = {sys.version.split()[0]}",
        f"numpy = {np.__version__}",
        f"walltime_s = {wall:.3f}",
    ]
    for path in runner.artifacts:
        digest = hashlib.sha256(path.read_bytes()).hexdigest()
        lines.append(f"sha256 {digest}  {path.name}")
    (out / "manifest.txt").write_text("\n".join(lines) + "\n")
    return 0


def _opt_int(value: str | None) -> int | None:
    return None if value in (None, "", "none") else int(value)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="tamelab",
        description="Symbolic-coding lab: generate sequences and probe "
                    "window languages, free sets, entropy, and function families.",
        epilog="exit codes: 0 ok, 2 config error, 3 capacity, 4 I/O, "
               "5 bad argument or range, 6 unexpected failure",
    )
    parser.add_argument("command", choices=COMMANDS)
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--config", metavar="PATH", help="config file (sectioned key = value)")
    group.add_argument("--preset", metavar="NAME",
                       help="bundled preset: " + ", ".join(sorted(PRESETS)))
    parser.add_argument("--out", metavar="DIR",
                        help=f"output directory (default ${OUT_ENV} or ./tamelab-out)")
    parser.add_argument("--threads", type=int, default=1, metavar="N")
    parser.add_argument("--format", choices=("csv", "text"), default="text",
                        help="format for summary reports")
    args = parser.parse_args(argv)

    try:
        config = (ExperimentConfig.from_preset(args.preset) if args.preset
                  else ExperimentConfig.from_file(args.config))
    except TameLabError as exc:
        print(f"tamelab: {exc}", file=sys.stderr)
        return exc.exit_code

    root = args.out or os.environ.get(OUT_ENV, "tamelab-out")
    label = args.preset or config.digest[:12]
    out_dir = Path(root) / f"{label}-{args.command}"
    return run(args.command, config, out_dir, threads=args.threads,
               fmt=args.format)


if __name__ == "__main__":
    sys.exit(main())
