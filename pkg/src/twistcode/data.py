"""Group-definition and character-table files, plus the bundled examples.

Group file (JSON or TOML)::

    {"name": "2I", "degree": 2, "fundamental": "chi2", "table": "2I_table.json",
     "generators": [[["z5^3", "0"], ["0", "z5^2"]], ...]}

Character-table file::

    {"class_fingerprints": [[order, size], ...],
     "irreps": [{"name": "chi1", "degree": 1, "values": ["1", ...]}, ...]}

Table columns may be in any order; they are aligned to the group's
canonical class order when loaded (see :func:`characters.align_table`).
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .characters import ClassFunction, IrrepTable, align_table, defining_character
from .cyclotomic import Cyclotomic, parse
from .errors import ParseError
from .groups import DEFAULT_GROUP_CAP, FiniteMatrixGroup, enumerate_group

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

BUNDLED = {"2I": "2I.json", "sigma360": "sigma360.json"}
ALIASES = {"2i": "2I", "binary-icosahedral": "2I", "sigma360": "sigma360", "sigma360phi": "sigma360",
           "sigma(360phi)": "sigma360", "valentiner": "sigma360"}


@dataclass
class GroupBundle:
    """A group together with its aligned irreducible table and defining character."""

    name: str
    group: FiniteMatrixGroup
    table: IrrepTable
    fundamental_name: str
    generator_matrices: list

    @property
    def f(self) -> ClassFunction:
        return defining_character(self.group)

    def irrep(self, name: str) -> ClassFunction:
        return self.table[name]

    def alignment_report(self) -> str:
        pairs = ", ".join(f"{j + 1}->{c + 1}" for j, c in enumerate(self.table.alignment))
        return (
            f"{self.name}: table columns -> classes [{pairs}]; defining rep = {self.fundamental_name}; "
            f"{self.table.alignment_candidates} consistent alignment(s)"
        )


def _line_of(text: str, needle: str) -> int | None:
    idx = text.find(needle)
    return None if idx < 0 else text.count("\n", 0, idx) + 1


def _read_structured(path: Path) -> tuple[dict, str]:
    text = path.read_text()
    try:
        if path.suffix.lower() == ".toml":
            return tomllib.loads(text), text
        return json.loads(text), text
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, str(path), exc.lineno) from exc
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(str(exc), str(path), getattr(exc, "lineno", None)) from exc


def _parse_literal(value, path: Path, text: str) -> Cyclotomic:
    try:
        return parse(value) if isinstance(value, str) else Cyclotomic.coerce(value)
    except (ParseError, TypeError) as exc:
        raise ParseError(f"bad cyclotomic literal {value!r}: {exc}", str(path), _line_of(text, str(value))) from exc


def read_group_file(path: str | Path) -> dict:
    path = Path(path)
    raw, text = _read_structured(path)
    for key in ("name", "degree", "generators"):
        if key not in raw:
            raise ParseError(f"missing key {key!r}", str(path), 1)
    gens = [[[_parse_literal(x, path, text) for x in row] for row in g] for g in raw["generators"]]
    return {
        "name": raw["name"],
        "degree": int(raw["degree"]),
        "generators": gens,
        "fundamental": raw.get("fundamental", "chi2"),
        "table": raw.get("table"),
        "path": path,
    }


def read_table_file(path: str | Path) -> dict:
    path = Path(path)
    raw, text = _read_structured(path)
    if "class_fingerprints" not in raw or "irreps" not in raw:
        raise ParseError("table needs 'class_fingerprints' and 'irreps'", str(path), 1)
    irreps = []
    for entry in raw["irreps"]:
        vals = [_parse_literal(v, path, text) for v in entry["values"]]
        irreps.append((entry["name"], vals))
        if "degree" in entry and vals and vals[0] != int(entry["degree"]):
            raise ParseError(f"degree of {entry['name']} disagrees with its identity value",
                             str(path), _line_of(text, f'"{entry["name"]}"'))
    return {"fingerprints": [tuple(fp) for fp in raw["class_fingerprints"]], "irreps": irreps}


def load_bundle(group_path: str | Path, table_path: str | Path | None = None,
                cap: int = DEFAULT_GROUP_CAP) -> GroupBundle:
    info = read_group_file(group_path)
    if table_path is None:
        if info["table"] is None:
            raise ParseError("no character table given", str(group_path))
        table_path = Path(info["path"]).parent / info["table"]
    tab = read_table_file(table_path)
    group = enumerate_group(info["generators"], cap=cap, name=info["name"])
    if group.degree != info["degree"]:
        raise ParseError(f"declared degree {info['degree']} but generators are {group.degree}x{group.degree}",
                         str(group_path))
    table = align_table(group, tab["fingerprints"], tab["irreps"], info["fundamental"])
    return GroupBundle(info["name"], group, table, info["fundamental"], info["generators"])


def canonical_name(name: str) -> str:
    key = ALIASES.get(name.lower(), name)
    if key not in BUNDLED:
        raise KeyError(f"unknown bundled group {name!r}; available: {', '.join(BUNDLED)}")
    return key


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("twistcode") / "data" / BUNDLED[canonical_name(name)]))


def load_bundled(name: str) -> GroupBundle:
    """Load ``'2I'`` or ``'sigma360'`` (cached; aliases share the cache)."""
    return _load_canonical(canonical_name(name))


@lru_cache(maxsize=None)
def _load_canonical(name: str) -> GroupBundle:
    return load_bundle(bundled_path(name))


def resolve(group: str, table: str | None = None, cap: int = DEFAULT_GROUP_CAP) -> GroupBundle:
    """A bundled name or a path to a group file."""
    p = Path(group)
    if p.suffix.lower() in (".json", ".toml") and p.exists():
        return load_bundle(p, table, cap=cap)
    if table is not None:
        return load_bundle(bundled_path(group), table, cap=cap)
    return load_bundled(group)
