"""File formats: model configs, edge lists, labeled CSVs, pixel matrices,
PGM dumps, manifests, and report CSVs.

Floats are written with 17 significant digits so files diff cleanly and
round-trip 64-bit values exactly.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .graphs import Component, LabeledGraph, UnlabeledGraph, label_to_id_map
from .model import Graphex, PixelGraphon, ZeroGraphon, ZeroStar, graphon_from_family, star_from_family

__all__ = [
    "load_model_config",
    "read_edge_list",
    "write_edge_list",
    "read_labeled_csv",
    "write_labeled_csv",
    "read_pixel",
    "write_pixel",
    "write_pgm",
    "write_manifest",
    "write_sequence_blocks",
    "write_report_csv",
]


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


# ---------------------------------------------------------------------------
# Model configs (JSON)

_CONFIG_KEYS = {"I", "S", "W", "epsilon", "seed"}


def _parse_component(spec, kind: str, base_dir: Path):
    if spec == "zero" or spec is None:
        return ZeroStar() if kind == "star" else ZeroGraphon()
    if not isinstance(spec, dict):
        raise ConfigError(f"{kind} spec must be 'zero' or an object, got {spec!r}")
    if kind == "graphon" and "pixel" in spec:
        extra = set(spec) - {"pixel"}
        if extra:
            raise ConfigError(f"unknown keys in pixel graphon spec: {sorted(extra)}")
        return read_pixel(base_dir / spec["pixel"])
    extra = set(spec) - {"family", "params"}
    if extra:
        raise ConfigError(f"unknown keys in {kind} spec: {sorted(extra)}")
    if "family" not in spec:
        raise ConfigError(f"{kind} spec needs a 'family' name")
    params = spec.get("params", [])
    if not isinstance(params, list):
        raise ConfigError(f"{kind} params must be a list of numbers")
    if kind == "star":
        return star_from_family(spec["family"], params)
    return graphon_from_family(spec["family"], params)


def load_model_config(path) -> tuple[Graphex, float | None, int | None]:
    """Parse a JSON model config into (graphex, default epsilon, default seed).

    Recognized keys: I (number), S, W (family objects, 'zero', or for W a
    {'pixel': file} reference), epsilon, seed.  Unknown keys are rejected.
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read model config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"model config {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("model config must be a JSON object")
    extra = set(doc) - _CONFIG_KEYS
    if extra:
        raise ConfigError(f"unknown model config keys: {sorted(extra)}")
    try:
        iso = float(doc.get("I", 0.0))
    except (TypeError, ValueError):
        raise ConfigError("I must be a number") from None
    star = _parse_component(doc.get("S", "zero"), "star", path.parent)
    graphon = _parse_component(doc.get("W", "zero"), "graphon", path.parent)
    epsilon = doc.get("epsilon")
    if epsilon is not None:
        epsilon = float(epsilon)
        if not epsilon > 0:
            raise ConfigError("epsilon must be positive")
    seed = doc.get("seed")
    if seed is not None:
        if not isinstance(seed, int) or seed < 0:
            raise ConfigError("seed must be a nonnegative integer")
    return Graphex(isolated_rate=iso, star=star, graphon=graphon), epsilon, seed


# ---------------------------------------------------------------------------
# Unlabeled edge lists: one "u v" pair per line, 1-based ids.


def write_edge_list(path, g: UnlabeledGraph) -> None:
    lines = [f"{u} {v}" for u, v in g.pairs]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))


def read_edge_list(path) -> UnlabeledGraph:
    pairs = []
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read edge list {path}: {exc}") from exc
    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ConfigError(f"{path}:{ln}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ConfigError(f"{path}:{ln}: vertex ids must be integers") from None
        if u < 1 or v < 1:
            raise ConfigError(f"{path}:{ln}: vertex ids must be positive")
        pairs.append((u, v))
    return UnlabeledGraph.from_pairs(np.array(pairs, dtype=np.int64).reshape(-1, 2))


# ---------------------------------------------------------------------------
# Labeled edge CSVs: header theta,theta_prime,component.


def write_labeled_csv(path, g: LabeledGraph) -> None:
    rows = ["theta,theta_prime,component"]
    rows += [
        f"{_fmt(a)},{_fmt(b)},{Component(int(c)).letter}"
        for a, b, c in zip(g.theta, g.theta_prime, g.component)
    ]
    rows.append(f"# size={_fmt(g.size)}")
    Path(path).write_text("\n".join(rows) + "\n")


def read_labeled_csv(path) -> LabeledGraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read labeled CSV {path}: {exc}") from exc
    lines = text.splitlines()
    if not lines or lines[0].strip() != "theta,theta_prime,component":
        raise ConfigError(f"{path}: missing labeled CSV header")
    theta, theta_p, comp = [], [], []
    size = None
    for ln, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith("# size="):
                size = float(line.split("=", 1)[1])
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise ConfigError(f"{path}:{ln}: expected three comma-separated fields")
        try:
            a, b = float(parts[0]), float(parts[1])
            c = Component[parts[2].strip()]
        except (ValueError, KeyError):
            raise ConfigError(f"{path}:{ln}: malformed labeled edge {line!r}") from None
        theta.append(a)
        theta_p.append(b)
        comp.append(c.value)
    if size is None:
        size = max(theta_p, default=0.0)
    return LabeledGraph.build(size, theta, theta_p, comp)


# ---------------------------------------------------------------------------
# Pixel matrices: "cellwidth=<w>" header, then comma-separated rows.


def write_pixel(path, pg: PixelGraphon) -> None:
    rows = [f"cellwidth={_fmt(pg.cell_width)}"]
    rows += [",".join(_fmt(x) for x in row) for row in pg.matrix]
    Path(path).write_text("\n".join(rows) + "\n")


def read_pixel(path) -> PixelGraphon:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read pixel file {path}: {exc}") from exc
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("cellwidth="):
        raise ConfigError(f"{path}: first line must be 'cellwidth=<value>'")
    try:
        cell_width = float(lines[0].split("=", 1)[1])
        matrix = [[float(x) for x in line.split(",")] for line in lines[1:]]
    except ValueError:
        raise ConfigError(f"{path}: malformed pixel matrix") from None
    try:
        return PixelGraphon(np.array(matrix, dtype=np.float64), cell_width)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def write_pgm(path, pg: PixelGraphon) -> None:
    """P2 grayscale dump: value 0 maps to white (255), value 1 to black (0)."""
    n = pg.n
    gray = np.rint(255.0 * (1.0 - pg.matrix)).astype(int)
    lines = ["P2", f"{n} {n}", "255"]
    lines += [" ".join(str(x) for x in row) for row in gray]
    Path(path).write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Manifests and reports


def write_manifest(path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def write_sequence_blocks(path, g: LabeledGraph) -> None:
    """Ordered edge-list blocks, one per jump; vertex ids are taken from the
    canonical labeling of the full graph so the blocks compose."""
    ids = label_to_id_map(g)
    taus = np.unique(g.theta_prime)
    lines = []
    for k, tau in enumerate(taus, start=1):
        lines.append(f"# step {k} @ tau={_fmt(tau)}")
        mask = g.theta_prime == tau
        step_pairs = sorted(
            tuple(sorted((ids[float(a)], ids[float(b)])))
            for a, b in zip(g.theta[mask], g.theta_prime[mask])
        )
        lines += [f"{u} {v}" for u, v in step_pairs]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))


_REPORT_COLUMNS = ["suite", "test", "statistic", "observed", "threshold", "pass", "replicates", "seed"]


def write_report_csv(path, reports, master_seed: int) -> None:
    rows = [",".join(_REPORT_COLUMNS)]
    for rep in reports:
        rows.append(
            ",".join(
                [
                    rep.suite,
                    rep.name,
                    rep.kind,
                    _fmt(rep.observed),
                    _fmt(rep.threshold),
                    "true" if rep.passed else "false",
                    str(rep.replicates),
                    str(master_seed),
                ]
            )
        )
    Path(path).write_text("\n".join(rows) + "\n")
