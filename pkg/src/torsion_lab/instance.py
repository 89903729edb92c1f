"""Instance files: strict JSON ingestion into an ``InstanceBundle``."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from .complexes import BasedComplex
from .cover import CoverComplex, HomologySummary, PresentationMatrix, homology_summary
from .errors import ComplexError, ParseError
from .exactalg import RationalFunction
from .morse import MorseData, build_morse_complex
from .novikov import NovikovBlock
from .orbits import FixCounts, OrbitSet, fix_counts, zeta_rational

SCHEMA_VERSION = 1
KEYS = frozenset({"schema", "name", "dimension", "truncation", "complex", "morse", "orbits", "cover", "presentation", "novikov"})
DEFAULT_PRECISION = 30


def default_precision():
    raw = os.environ.get("TORSION_LAB_PRECISION")
    if raw is None:
        return DEFAULT_PRECISION
    try:
        n = int(raw)
    except ValueError:
        return DEFAULT_PRECISION
    return n if n >= 1 else DEFAULT_PRECISION


@dataclass
class InstanceBundle:
    """Everything the identity checks may need about one instance.

    ``fix`` and ``zeta`` override the orbit-derived fixed-point counts and
    rational zeta function (``fix`` is a function m -> Fix(f^m)).
    ``summary`` overrides the homology summary computed from the cover.
    """

    name: str = ""
    dimension: int | None = None
    truncation: int | None = None
    complex: BasedComplex | None = None
    morse: MorseData | None = None
    orbits: OrbitSet | None = None
    cover: CoverComplex | None = None
    presentation: PresentationMatrix | None = None
    novikov: NovikovBlock | None = None
    fix: object = None
    zeta: RationalFunction | None = None
    summary: HomologySummary | None = None
    source: str | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self):
        if self.dimension is not None:
            return self.dimension
        if self.morse is not None:
            return self.morse.dimension
        return None

    def precision(self, override=None):
        if override is not None:
            return override
        if self.truncation is not None:
            return self.truncation
        return default_precision()

    @property
    def has_orbit_data(self):
        return self.orbits is not None or (self.fix is not None and self.zeta is not None)

    def fix_counts(self, N):
        if self.fix is not None:
            return FixCounts(tuple(int(self.fix(m)) for m in range(1, N + 1)), N)
        return fix_counts(self.orbits, N)

    def zeta_rational(self):
        if self.zeta is not None:
            return self.zeta
        return zeta_rational(self.orbits)

    def morse_complex(self):
        if "morse" not in self._cache:
            self._cache["morse"] = build_morse_complex(self.morse)
        return self._cache["morse"]

    def homology_summary(self):
        if self.summary is not None:
            return self.summary
        if "summary" not in self._cache:
            self._cache["summary"] = homology_summary(self.cover)
        return self._cache["summary"]


def _int_field(data, key, minimum):
    v = data.get(key)
    if v is None:
        return None
    if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
        raise ParseError(f"{key!r} must be an integer >= {minimum}")
    return v


def parse_instance(data, source=None):
    if not isinstance(data, dict):
        raise ParseError("instance must be a JSON object")
    unknown = set(data) - KEYS
    if unknown:
        raise ParseError(f"unknown instance keys: {sorted(unknown)}")
    if data.get("schema") != SCHEMA_VERSION:
        raise ParseError(f"instance needs \"schema\": {SCHEMA_VERSION}")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise ParseError("name must be a string")
    b = InstanceBundle(
        name=name,
        dimension=_int_field(data, "dimension", 0),
        truncation=_int_field(data, "truncation", 1),
        source=source,
    )
    try:
        if "complex" in data:
            b.complex = BasedComplex.from_json(data["complex"])
        if "morse" in data:
            b.morse = MorseData.from_json(data["morse"])
        if "orbits" in data:
            b.orbits = OrbitSet.from_json(data["orbits"])
        if "cover" in data:
            b.cover = CoverComplex.from_json(data["cover"])
        if "presentation" in data:
            b.presentation = PresentationMatrix.from_json(data["presentation"])
        if "novikov" in data:
            b.novikov = NovikovBlock.from_json(data["novikov"])
    except ParseError:
        raise
    except (ComplexError, ValueError, TypeError, KeyError) as exc:
        raise ParseError(str(exc)) from exc
    if b.morse is not None and b.dimension is not None and b.morse.dimension != b.dimension:
        raise ParseError(f"morse dimension {b.morse.dimension} disagrees with instance dimension {b.dimension}")
    return b


def load_instance(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    try:
        return parse_instance(data, source=str(path))
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc
