"""
Octodp — Report Exporters
JSON reports, Newick tree files and the DOT incidence graph.
"""

import json
import logging
import sys
from collections.abc import Mapping
from pathlib import Path
from typing import Any

from lines.census import LineCensus
from lines.plucker import LineLabel
from tropical.trees import PhyloTree

logger = logging.getLogger(__name__)


def dumps_json(data: Any) -> str:
    """Deterministic JSON text; in-memory artefacts (keys starting with ``_``) are dropped."""
    return json.dumps(strip_private(data), indent=2, ensure_ascii=False, default=str) + "\n"


def strip_private(data: Any) -> Any:
    if isinstance(data, Mapping):
        return {k: strip_private(v) for k, v in data.items() if not str(k).startswith("_")}
    if isinstance(data, (list, tuple)):
        return [strip_private(v) for v in data]
    return data


def newick_lines(trees: Mapping[LineLabel, PhyloTree]) -> str:
    """One tree per line, prefixed by the line label."""
    return "".join(f"{label}\t{tree.newick()}\n" for label, tree in trees.items())


def schlafli_dot(census: LineCensus) -> str:
    """The 27-vertex incidence graph as an undirected DOT graph."""
    out = ["graph schlafli {", "  node [shape=circle];"]
    out += [f'  "{line.label}";' for line in census]
    for pair in sorted(census.incidence, key=sorted):
        a, b = sorted(pair)
        out.append(f'  "{a}" -- "{b}";')
    out.append("}")
    return "\n".join(out) + "\n"


def write_text(text: str, output: str | Path | None) -> None:
    """Write to a file, or to standard output when no path is given."""
    if output is None or str(output) == "-":
        sys.stdout.write(text)
        return
    path = Path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info("Report written → %s", path)
