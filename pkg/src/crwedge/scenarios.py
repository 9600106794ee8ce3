"""Scenario files: JSON descriptions of a manifold, an edge, wedges and
analysis parameters, plus the builtin example registry.

A scenario file has blocks

    manifold: {l, n, h: [expr, ...]}
    edge:     {spanning: [[... 2N reals], ...]}
    wedges:   [{name, tangent_cone, complement_basis?, directional_cone?,
                membership?: [expr, ...]}, ...]
    analysis: {alpha, eta_list, w0: [[re, im] per coordinate] or list of such,
               grid_size, sample_count, seed, resolution, gamma_margin,
               c, c3, c4, chart_radius, ...}

Cone blocks: {"type": "polyhedral", "normals": [...], "strict": [...]},
{"type": "sector", "e1": [...], "e2": [...], "angles": [a, b],
 "subspace": [...]}, {"type": "full"} or {"type": "generators", "rays": [...]}.
"""

import json
import os
from dataclasses import dataclass, field

import numpy as np

from .cones import WedgeSpec, cone_from_dict
from .errors import CRWedgeError, ScenarioError
from .expressions import parse
from .manifold import EdgeSpec, GraphManifold

SCENARIO_DIR_ENV = "CRWEDGE_SCENARIO_DIR"

_BUILTIN_NAMES = {
    "1.2": "ex12.json",
    "1.2-paired": "ex12_paired.json",
    "1.3": "ex13.json",
    "1.4": "ex14.json",
    "quadric": "quadric.json",
    "quadric-wedge": "quadric_wedge.json",
    "quadric-lift": "quadric_lift.json",
}

_ANALYSIS_DEFAULTS = {
    "alpha": 0.75,
    "eta_list": [0.02, 0.01, 0.005],
    "grid_size": 2048,
    "sample_count": 2000,
    "seed": 0,
    "resolution": 1440,
    "gamma_margin": 0.02,
}


def builtin_path(name):
    if name not in _BUILTIN_NAMES:
        raise ScenarioError(
            f"unknown builtin scenario {name!r}; available: "
            + ", ".join(sorted(_BUILTIN_NAMES))
        )
    return os.path.join(os.path.dirname(__file__), "scenarios", _BUILTIN_NAMES[name])


def builtin_names():
    return sorted(_BUILTIN_NAMES)


@dataclass
class Scenario:
    name: str
    description: str
    manifold: GraphManifold
    edge: EdgeSpec
    wedges: list
    analysis: dict
    raw: dict = field(repr=False, default=None)

    @property
    def wedge(self):
        return self.wedges[0]

    def w0_candidates(self):
        out = []
        for entry in self.analysis.get("w0", []):
            out.append(np.array([complex(re, im) for re, im in entry]))
        return out

    def w0_sweep(self):
        entry = self.analysis.get("w0_sweep")
        if entry is None:
            cands = self.w0_candidates()
            return cands[0] if cands else None
        return np.array([complex(re, im) for re, im in entry])


def _require(data, key, context):
    if key not in data:
        raise ScenarioError(f"scenario is missing {context} key {key!r}")
    return data[key]


def load_scenario(source):
    """Load and validate a scenario from a path, builtin name, or dict."""
    if isinstance(source, dict):
        data = source
        name_hint = data.get("name", "<dict>")
    else:
        path = str(source)
        if not os.path.exists(path):
            search = os.environ.get(SCENARIO_DIR_ENV)
            if search and os.path.exists(os.path.join(search, path)):
                path = os.path.join(search, path)
            elif source in _BUILTIN_NAMES:
                path = builtin_path(source)
            else:
                raise ScenarioError(f"scenario file {source!r} not found")
        try:
            with open(path, "r", encoding="utf-8") as handle:
                data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"scenario {path!r} is not valid JSON: {exc}")
        name_hint = data.get("name", os.path.basename(path))

    try:
        mblock = _require(data, "manifold", "top-level")
        l = int(_require(mblock, "l", "manifold"))
        n = int(_require(mblock, "n", "manifold"))
        manifold = GraphManifold.from_sources(_require(mblock, "h", "manifold"), l, n)

        eblock = _require(data, "edge", "top-level")
        edge = EdgeSpec(np.asarray(eblock["spanning"], dtype=float), l, n)

        wedges = []
        for wdata in data.get("wedges", []):
            tangent = cone_from_dict(
                _require(wdata, "tangent_cone", "wedge"), manifold.tangent_dim
            )
            comp = wdata.get("complement_basis")
            comp = np.asarray(comp, dtype=float).T if comp else None
            directional = None
            if wdata.get("directional_cone"):
                if comp is None:
                    raise ScenarioError(
                        "a directional cone needs a complement_basis"
                    )
                directional = cone_from_dict(wdata["directional_cone"], comp.shape[1])
            membership = [parse(src, l=l, n=n) for src in wdata.get("membership", [])]
            wedges.append(
                WedgeSpec(manifold, edge, tangent, comp, directional,
                          membership, name=wdata.get("name", "V"))
            )
        if not wedges:
            raise ScenarioError("scenario declares no wedges")

        analysis = dict(_ANALYSIS_DEFAULTS)
        analysis.update(data.get("analysis", {}))
        for key in ("grid_size", "sample_count", "seed", "resolution"):
            analysis[key] = int(analysis[key])
        for key in ("alpha", "gamma_margin"):
            analysis[key] = float(analysis[key])
        if analysis["alpha"] <= 0 or analysis["gamma_margin"] <= 0:
            raise ScenarioError("tolerances and alpha must be positive")
        if any(float(e) <= 0 for e in analysis["eta_list"]):
            raise ScenarioError("eta_list values must be positive")
        for entry in analysis.get("w0", []):
            if len(entry) != n:
                raise ScenarioError(
                    f"w0 candidate has {len(entry)} coordinates, expected n = {n}"
                )
    except CRWedgeError as exc:
        raise ScenarioError(f"scenario {name_hint!r}: {exc}") from exc

    return Scenario(
        name=data.get("name", name_hint),
        description=data.get("description", ""),
        manifold=manifold,
        edge=edge,
        wedges=wedges,
        analysis=analysis,
        raw=data,
    )
