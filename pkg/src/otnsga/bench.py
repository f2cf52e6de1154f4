"""Seeded experiment harness: config files, multi-seed campaigns and report files.

Data files (CSV and JSON) contain no timestamps, so the same inputs always
produce the same bytes. Timing goes to a separate ``run.log``.
"""

from __future__ import annotations

import configparser
import csv
import io
import json
import math
import statistics
import warnings
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from .config import ALGORITHMS, InitParams, PruneParams, RunConfig, RunReport, VariationParams
from .nsga2 import run_nsga2
from .problems import make_problem
from .pruning import run_otnsga2

DELTA_BAND = (0.12, 0.15)
INDICATORS = ("gd", "sp", "igd")

# key -> (section of RunConfig, converter)
_KEYS = {
    "problem": (None, str),
    "algorithm": (None, str),
    "pop_size": (None, int),
    "generations": (None, int),
    "seed": (None, int),
    "front_points": (None, int),
    "p_crossover": ("variation", float),
    "p_mutation": ("variation", float),
    "eta_c": ("variation", float),
    "eta_m": ("variation", float),
    "k_clusters": ("prune", int),
    "delta": ("prune", float),
    "kmeans_max_iter": ("prune", int),
    "kmeans_tol": ("prune", float),
    "subspaces": ("init", int),
    "q_levels": ("init", int),
    "theta0": ("init", float),
}


class ConfigError(ValueError):
    """A configuration value or file could not be used; the message names the field."""


def parse_seeds(text: str) -> list[int]:
    """Seeds from "3", "0,4,7" or an inclusive range "0-9"."""
    seeds = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        try:
            lo, _, hi = part.partition("-")
            lo, hi = int(lo), int(hi or lo)
        except ValueError:
            raise ConfigError(f"seeds: cannot parse {part!r}") from None
        if hi < lo:
            raise ConfigError(f"seeds: empty range {part!r}")
        seeds.extend(range(lo, hi + 1))
    if not seeds:
        raise ConfigError("seeds: at least one seed is needed")
    return seeds


def read_config_file(path) -> dict:
    """Flat ``key = value`` file ('#' comments) as a dict of raw strings.

    A leading ``[section]`` header is tolerated but not required.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc.strerror}") from None
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"))
    parser.optionxform = str
    if not text.lstrip().startswith("["):
        text = "[run]\n" + text
    try:
        parser.read_string(text, source=str(path))
    except configparser.Error as exc:
        raise ConfigError(f"config: malformed file {path}: {exc}") from None
    values = {}
    for section in parser.sections():
        values.update(parser[section])
    return values


def parse_config(path=None, **overrides) -> RunConfig:
    """Build a fully resolved RunConfig from an optional file plus overrides.

    Overrides with value ``None`` are ignored; the rest win over the file.
    Unknown keys and bad values raise ConfigError naming the key. A delta
    outside 0.12..0.15 is accepted with a warning.
    """
    raw = read_config_file(path) if path is not None else {}
    raw.update({k: v for k, v in overrides.items() if v is not None})
    unknown = sorted(set(raw) - set(_KEYS))
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}; known keys: {', '.join(_KEYS)}")
    groups = {None: {}, "variation": {}, "prune": {}, "init": {}}
    for key, value in raw.items():
        section, conv = _KEYS[key]
        try:
            groups[section][key] = conv(str(value).strip()) if isinstance(value, str) else conv(value)
        except (TypeError, ValueError):
            raise ConfigError(f"{key}: cannot read {value!r} as {conv.__name__}") from None

    top = groups[None]
    if "problem" not in top:
        raise ConfigError("problem: no problem given")
    try:
        top["problem"] = make_problem(top["problem"]).name
    except ValueError as exc:
        raise ConfigError(f"problem: {exc}") from None
    if "algorithm" in top:
        top["algorithm"] = top["algorithm"].lower()
        if top["algorithm"] not in ALGORITHMS:
            raise ConfigError(f"algorithm: {top['algorithm']!r} is not one of {{{', '.join(ALGORITHMS)}}}")

    delta = groups["prune"].get("delta")
    if delta is not None and not DELTA_BAND[0] <= delta <= DELTA_BAND[1]:
        warnings.warn(f"delta={delta} lies outside the recommended band {DELTA_BAND[0]}-{DELTA_BAND[1]}",
                      stacklevel=2)
    try:
        return RunConfig(
            **top,
            variation=VariationParams(**groups["variation"]),
            prune=PruneParams(**groups["prune"]),
            init=InitParams(**groups["init"]),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def run_single(config: RunConfig) -> RunReport:
    """One seeded run of the configured algorithm; the stream is seeded from ``config.seed``."""
    rng = np.random.default_rng(config.seed)
    if config.algorithm == "nsga2":
        return run_nsga2(config.problem, config, rng)
    return run_otnsga2(config.problem, config, rng)


@dataclass(frozen=True)
class SummaryRow:
    problem: str
    algorithm: str
    n_runs: int
    gd_mean: float
    gd_best: float
    gd_std: float
    sp_mean: float
    sp_best: float
    sp_std: float
    igd_mean: float
    igd_best: float
    igd_std: float


@dataclass
class CampaignSummary:
    seeds: list
    rows: list = field(default_factory=list)
    failures: list = field(default_factory=list)  # (problem, algorithm, seed, message)

    def row(self, problem: str, algorithm: str) -> SummaryRow:
        for r in self.rows:
            if r.problem == problem and r.algorithm == algorithm:
                return r
        raise KeyError((problem, algorithm))

    @property
    def ok(self) -> bool:
        return not self.failures


def summarize(problem: str, algorithm: str, finals) -> SummaryRow:
    """Mean, best (minimum) and sample standard deviation of each indicator; std is 0 for one run."""
    values = {}
    for name in INDICATORS:
        v = [getattr(f, name) for f in finals]
        values[f"{name}_mean"] = math.fsum(v) / len(v)
        values[f"{name}_best"] = min(v)
        values[f"{name}_std"] = statistics.stdev(v) if len(v) > 1 else 0.0
    return SummaryRow(problem, algorithm, len(finals), **values)


def run_campaign(config: RunConfig, seeds, problems=None, algorithms=None):
    """Every (problem, algorithm, seed) combination; returns (CampaignSummary, reports).

    A failing run is recorded in ``summary.failures`` and the campaign goes on.
    """
    seeds = list(seeds)
    if not seeds:
        raise ValueError("run_campaign needs at least one seed")
    problems = [make_problem(p).name for p in (problems or [config.problem])]
    algorithms = list(algorithms or [config.algorithm])
    summary = CampaignSummary(seeds=seeds)
    reports = []
    for problem in problems:
        for algorithm in algorithms:
            finals = []
            for seed in seeds:
                cfg = replace(config, problem=problem, algorithm=algorithm, seed=seed)
                try:
                    rep = run_single(cfg)
                except Exception as exc:  # keep the campaign going, report at the end
                    summary.failures.append((problem, algorithm, seed, f"{type(exc).__name__}: {exc}"))
                    continue
                reports.append(rep)
                finals.append(rep.final)
            if finals:
                summary.rows.append(summarize(problem, algorithm, finals))
    return summary, reports


def _num(x) -> str:
    return repr(float(x))


def config_echo(config: RunConfig) -> list[str]:
    """``# key=value`` lines for every resolved config field."""
    flat = {}
    for key, value in config.to_dict().items():
        if isinstance(value, dict):
            flat.update(value)
        else:
            flat[key] = value
    return [f"# {k}={flat[k]}" for k in sorted(flat)]


def _csv_text(comments, header, rows) -> str:
    buf = io.StringIO()
    for line in comments:
        buf.write(line + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def trace_csv(report: RunReport) -> str:
    rows = [[g, *(_num(v) for v in report.trace[g])] for g in range(len(report.trace))]
    return _csv_text(config_echo(report.config), ["generation", *INDICATORS], rows)


def final_population_csv(report: RunReport) -> str:
    m = report.final_F.shape[1]
    n = report.final_X.shape[1]
    header = [f"f{i + 1}" for i in range(m)] + [f"x{i + 1}" for i in range(n)]
    rows = [[_num(v) for v in np.concatenate([f, x])] for f, x in zip(report.final_F, report.final_X)]
    return _csv_text(config_echo(report.config), header, rows)


_SUMMARY_FIELDS = [f.name for f in SummaryRow.__dataclass_fields__.values()]


def summary_csv(summary: CampaignSummary, config: RunConfig | None = None) -> str:
    comments = [f"# seeds={','.join(str(s) for s in summary.seeds)}"]
    if config is not None:
        comments += [c for c in config_echo(config) if not c.startswith(("# problem=", "# algorithm=", "# seed="))]
    for problem, algorithm, seed, msg in summary.failures:
        comments.append(f"# failed={problem}/{algorithm}/{seed}: {msg}")
    rows = []
    for r in summary.rows:
        rows.append([r.problem, r.algorithm, r.n_runs] + [_num(getattr(r, k)) for k in _SUMMARY_FIELDS[3:]])
    return _csv_text(comments, _SUMMARY_FIELDS, rows)


def read_summary_csv(path) -> CampaignSummary:
    """Parse a summary CSV written by ``write_reports`` back into a CampaignSummary."""
    lines = Path(path).read_text().splitlines()
    seeds, failures = [], []
    body = []
    for line in lines:
        if line.startswith("# seeds="):
            seeds = [int(s) for s in line[len("# seeds="):].split(",") if s]
        elif line.startswith("# failed="):
            where, msg = line[len("# failed="):].split(": ", 1)
            p, a, s = where.split("/")
            failures.append((p, a, int(s), msg))
        elif not line.startswith("#"):
            body.append(line)
    rows = []
    for rec in csv.DictReader(body):
        rows.append(SummaryRow(rec["problem"], rec["algorithm"], int(rec["n_runs"]),
                               **{k: float(rec[k]) for k in _SUMMARY_FIELDS[3:]}))
    return CampaignSummary(seeds=seeds, rows=rows, failures=failures)


def _jsonable(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def report_json(report: RunReport) -> str:
    return json.dumps(report.to_dict(), indent=1, sort_keys=True, default=_jsonable) + "\n"


def run_stem(config: RunConfig) -> str:
    return f"{config.problem.lower()}_{config.algorithm}_s{config.seed}"


def _write(path: Path, text: str) -> Path:
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from None
    return path


def write_reports(reports, summary: CampaignSummary | None, out_dir, config: RunConfig | None = None) -> list[Path]:
    """Write trace, final-population and JSON files per run, plus ``summary.csv``."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create {out}: {exc.strerror}") from None
    written = []
    for rep in reports:
        stem = run_stem(rep.config)
        written.append(_write(out / f"{stem}_trace.csv", trace_csv(rep)))
        written.append(_write(out / f"{stem}_final.csv", final_population_csv(rep)))
        written.append(_write(out / f"{stem}.json", report_json(rep)))
    if summary is not None:
        written.append(_write(out / "summary.csv", summary_csv(summary, config)))
    return written


def summary_as_dict(summary: CampaignSummary) -> dict:
    return {"seeds": list(summary.seeds), "rows": [asdict(r) for r in summary.rows],
            "failures": [list(f) for f in summary.failures]}
