"""Deterministic on-disk caches for graphs and spectra.

Cache keys embed a format version, the level, walk primes, and the seed;
bumping CACHE_VERSION invalidates old entries.  Corrupt entries are never
trusted: validation failures log a warning and trigger recomputation.
"""

from __future__ import annotations

import json
import logging
import math
import os
from pathlib import Path

import numpy as np

from .errors import DataFormatError
from .fields import parse_element, quadratic_field
from .isograph import IsogenyGraph, build_graph
from .spectra import DEFAULT_PRIMES, EigenSystem, Form, eigensystem

log = logging.getLogger(__name__)

CACHE_VERSION = "v1"
CACHE_ENV = "HECKELAB_CACHE_DIR"


def fmt_float(x: float) -> str:
    """17 significant digits; round-trips float64 exactly."""
    return format(x, ".17g")


def default_cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV, ".heckelab-cache"))


def graph_path(cache_dir: Path, p: int, ell: int, seed: int = 0) -> Path:
    return cache_dir / f"graph_{CACHE_VERSION}_p{p}_ell{ell}_seed{seed}.json"


def spectra_path(cache_dir: Path, p: int, primes, seed: int) -> Path:
    tag = "-".join(str(q) for q in primes)
    return cache_dir / f"spectra_{CACHE_VERSION}_p{p}_primes{tag}_seed{seed}.csv"


def save_graph(graph: IsogenyGraph, cache_dir: Path, seed: int = 0) -> Path:
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = graph_path(cache_dir, graph.p, graph.ell, seed)
    payload = {
        "version": CACHE_VERSION,
        "p": graph.p,
        "ell": graph.ell,
        "vertices": [str(v) for v in graph.vertices],
        "adjacency": graph.adjacency.tolist(),
    }
    path.write_text(json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n")
    return path


def load_graph(cache_dir: Path, p: int, ell: int, seed: int = 0) -> IsogenyGraph | None:
    path = graph_path(cache_dir, p, ell, seed)
    if not path.exists():
        return None
    try:
        payload = json.loads(path.read_text())
        if payload.get("version") != CACHE_VERSION:
            raise DataFormatError("cache version mismatch")
        if payload["p"] != p or payload["ell"] != ell:
            raise DataFormatError("cache key mismatch")
        ctx = quadratic_field(p)
        vertices = [parse_element(s, ctx) for s in payload["vertices"]]
        adjacency = np.array(payload["adjacency"], dtype=np.int64)
        if adjacency.shape != (len(vertices), len(vertices)):
            raise DataFormatError("adjacency shape mismatch")
        if not np.array_equal(adjacency, adjacency.T):
            raise DataFormatError("cached adjacency not symmetric")
        if not (adjacency.sum(axis=1) == ell + 1).all():
            raise DataFormatError("cached adjacency not regular")
        return IsogenyGraph(p=p, ell=ell, vertices=vertices, adjacency=adjacency)
    except (DataFormatError, KeyError, ValueError, json.JSONDecodeError) as exc:
        log.warning("corrupt graph cache %s (%s); recomputing", path, exc)
        return None


def spectra_csv_lines(es: EigenSystem) -> list[str]:
    """Spectra table in the cache/output schema, one row per (form, prime)."""
    meta = {
        "p": es.p,
        "primes": list(es.primes),
        "seed": es.seed,
        "n_vertices": es.n_vertices,
        "trivial_residual": fmt_float(es.trivial_residual),
        "residuals": {f.id: fmt_float(f.residual) for f in es.forms},
    }
    lines = [f"# config: {json.dumps(meta, sort_keys=True)}"]
    lines.append("form_id,prime,a,lambda,theta")
    for f in es.forms:
        for q in es.primes:
            lines.append(
                f"{f.id},{q},{fmt_float(f.a[q])},{fmt_float(f.lam[q])},{fmt_float(f.theta[q])}"
            )
    return lines


def save_spectra(es: EigenSystem, cache_dir: Path) -> Path:
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = spectra_path(cache_dir, es.p, es.primes, es.seed)
    path.write_text("\n".join(spectra_csv_lines(es)) + "\n")
    return path


def load_spectra(cache_dir: Path, p: int, primes, seed: int) -> EigenSystem | None:
    path = spectra_path(cache_dir, p, primes, seed)
    if not path.exists():
        return None
    try:
        lines = path.read_text().splitlines()
        meta = None
        rows = []
        for line in lines:
            if line.startswith("# config:"):
                meta = json.loads(line[len("# config:") :])
            elif line.startswith("#") or not line.strip():
                continue
            elif line.startswith("form_id"):
                continue
            else:
                rows.append(line.split(","))
        if meta is None or meta["p"] != p or tuple(meta["primes"]) != tuple(primes):
            raise DataFormatError("spectra cache metadata mismatch")
        if meta["seed"] != seed:
            raise DataFormatError("spectra cache seed mismatch")
        by_form: dict[str, dict] = {}
        for fid, q, a, lam, theta in rows:
            rec = by_form.setdefault(fid, {"a": {}, "lam": {}, "theta": {}})
            rec["a"][int(q)] = float(a)
            rec["lam"][int(q)] = float(lam)
            rec["theta"][int(q)] = float(theta)
        residuals = meta["residuals"]
        forms = [
            Form(
                id=fid,
                level=p,
                a=rec["a"],
                lam=rec["lam"],
                theta=rec["theta"],
                residual=float(residuals[fid]),
            )
            for fid, rec in by_form.items()
        ]
        forms.sort(key=lambda f: int(f.id[1:]))
        expected = (p - 1) // 12 - 1
        if len(forms) != expected:
            raise DataFormatError("spectra cache form count mismatch")
        for f in forms:
            for q in primes:
                if abs(f.lam[q]) > 2.0 or not math.isfinite(f.a[q]):
                    raise DataFormatError("cached eigenvalue out of range")
        return EigenSystem(
            p=p,
            primes=tuple(primes),
            forms=forms,
            n_vertices=meta["n_vertices"],
            seed=seed,
            trivial_residual=float(meta["trivial_residual"]),
        )
    except (DataFormatError, KeyError, ValueError, json.JSONDecodeError) as exc:
        log.warning("corrupt spectra cache %s (%s); recomputing", path, exc)
        return None


def cached_graph(p: int, ell: int, seed: int = 0, cache_dir: Path | None = None) -> IsogenyGraph:
    cache_dir = cache_dir or default_cache_dir()
    graph = load_graph(cache_dir, p, ell, seed)
    if graph is None:
        graph = build_graph(p, ell, seed=seed)
        save_graph(graph, cache_dir, seed)
    return graph


def cached_eigensystem(
    p: int,
    primes=DEFAULT_PRIMES,
    seed: int = 0,
    cache_dir: Path | None = None,
    with_graphs: bool = False,
) -> EigenSystem:
    """Eigensystem with disk cache; primes equal to the level are dropped.

    Cached spectra do not include eigenvectors or graphs (they are not
    persisted beyond the run); pass with_graphs=True when adjacency matrices
    are needed downstream, which attaches cached graphs.
    """
    cache_dir = cache_dir or default_cache_dir()
    primes = tuple(q for q in primes if q != p)
    es = load_spectra(cache_dir, p, primes, seed)
    if es is None:
        graphs = {q: cached_graph(p, q, seed, cache_dir) for q in primes}
        es = eigensystem(p, primes=primes, seed=seed, graphs=graphs)
        save_spectra(es, cache_dir)
    if with_graphs and not es.graphs:
        es.graphs = {q: cached_graph(p, q, seed, cache_dir) for q in primes}
    return es
