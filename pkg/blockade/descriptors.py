"""JSON descriptor files: orbit spaces, module lists and Margaux modules.

Schemas::

    orbit space   {"points": [str], "generators": [{str: str}], "cotangent": {str: int}}
    module        {point: [int, ...]}
    module list   [module, ...]
    pair list     [[module, module], ...]
    margaux list  [{"point": [c, c], "weight": int}, ...]
                  with c = {"re": [num, den], "im": [num, den]}

Locations inside a file are reported as ``file#/json/pointer``.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, NamedTuple, Optional, Tuple, Union

from .constants import BlockadeConstants
from .errors import DescriptorError, DescriptorFormatError, WeightRankError
from .margaux import GaussianRational, MargauxPoint
from .rootsys import RootSystem, Weight
from .twistblocks import EvalModuleDescriptor, OrbitSpace

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
# root system and orbit space a module is checked against
Bound = Optional[Tuple[RootSystem, OrbitSpace]]


class LoadedJson(NamedTuple):
    """Parsed document plus the raw bytes it came from."""
    path: str
    data: Any
    raw: bytes


def read_json(path: PathLike) -> LoadedJson:
    """Read and parse a descriptor file.

    Raises:
        DescriptorFormatError: if the file is missing, too large or not JSON.
    """
    name = str(path)
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise DescriptorFormatError(f"Cannot read descriptor file: {e.strerror or e}", path=name) from e
    if len(raw) > BlockadeConstants.MAX_DESCRIPTOR_BYTES:
        raise DescriptorFormatError(
            f"Descriptor file is {len(raw)} bytes, limit is {BlockadeConstants.MAX_DESCRIPTOR_BYTES}",
            path=name)
    try:
        data = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise DescriptorFormatError(f"Malformed JSON: {e}", path=name) from e
    logger.debug(f"Loaded {len(raw)} bytes from {name}")
    return LoadedJson(name, data, raw)


def _fail(message: str, where: str) -> DescriptorFormatError:
    return DescriptorFormatError(message, path=where)


def _int(value: Any, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise _fail(f"Expected an integer, got {value!r}", where)
    return value


def weight_from_json(value: Any, where: str) -> Weight:
    if not isinstance(value, list) or not value:
        raise _fail(f"Expected a non-empty array of weight coordinates, got {value!r}", where)
    return Weight(tuple(_int(c, f"{where}/{k}") for k, c in enumerate(value)))


def orbit_space_from_json(data: Any, where: str = "#") -> OrbitSpace:
    if not isinstance(data, dict):
        raise _fail("Orbit space must be a JSON object", where)
    points = data.get("points")
    if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
        raise _fail("'points' must be an array of strings", f"{where}/points")
    generators = data.get("generators", [])
    if not isinstance(generators, list):
        raise _fail("'generators' must be an array", f"{where}/generators")
    for k, gen in enumerate(generators):
        if not isinstance(gen, dict) or not all(isinstance(v, str) for v in gen.values()):
            raise _fail("Generator must map point names to point names", f"{where}/generators/{k}")
    cotangent = data.get("cotangent")
    if not isinstance(cotangent, dict):
        raise _fail("'cotangent' must be an object", f"{where}/cotangent")
    for key, value in cotangent.items():
        _int(value, f"{where}/cotangent/{key}")
    return OrbitSpace(points, generators, cotangent)


def orbit_space_to_json(ospace: OrbitSpace) -> dict:
    return ospace.to_dict()


def module_from_json(data: Any, where: str = "#") -> EvalModuleDescriptor:
    if not isinstance(data, dict):
        raise _fail("Module descriptor must be a JSON object", where)
    assignments = {point: weight_from_json(value, f"{where}/{point}") for point, value in data.items()}
    for point, w in assignments.items():
        if not w.is_dominant():
            raise _fail(f"Weight {w} at {point!r} is not dominant", f"{where}/{point}")
    return EvalModuleDescriptor(assignments)


def bind_module(desc: EvalModuleDescriptor, rs: RootSystem, ospace: OrbitSpace,
                where: str = "#") -> EvalModuleDescriptor:
    """Check a parsed module against a root system and orbit space.

    Returns the descriptor keyed by orbit representatives.

    Raises:
        DescriptorFormatError: located at the offending point.
    """
    owners: Dict[str, str] = {}
    for point, w in desc.assignments:
        here = f"{where}/{point}"
        if point not in ospace:
            raise _fail(f"Unknown point {point!r}", here)
        try:
            rs.check_weight(w)
        except WeightRankError as e:
            raise _fail(e.message, here) from e
        rep = ospace.representative(point)
        if rep in owners:
            raise _fail(f"Points {owners[rep]!r} and {point!r} lie in the same orbit", here)
        owners[rep] = point
    return ospace.canonicalize(desc, rs)


def module_to_json(desc: EvalModuleDescriptor) -> dict:
    return {point: list(w.coords) for point, w in desc.assignments}


def modules_from_json(data: Any, where: str = "#") -> List[EvalModuleDescriptor]:
    if not isinstance(data, list):
        raise _fail("Module list must be a JSON array", where)
    return [module_from_json(item, f"{where}/{k}") for k, item in enumerate(data)]


def pairs_from_json(data: Any, where: str = "#") -> List[Tuple[EvalModuleDescriptor, EvalModuleDescriptor]]:
    if not isinstance(data, list):
        raise _fail("Pair list must be a JSON array", where)
    pairs = []
    for k, item in enumerate(data):
        if not isinstance(item, list) or len(item) != 2:
            raise _fail("Each pair must be a two-element array", f"{where}/{k}")
        pairs.append((module_from_json(item[0], f"{where}/{k}/0"),
                      module_from_json(item[1], f"{where}/{k}/1")))
    return pairs


def _complex_from_json(value: Any, where: str) -> GaussianRational:
    if not isinstance(value, dict):
        raise _fail("Complex number must be an object with 're' and 'im'", where)
    try:
        return GaussianRational.from_json(value)
    except DescriptorError as e:
        raise _fail(e.message, where) from e


def margaux_modules_from_json(data: Any, where: str = "#") -> List[Tuple[MargauxPoint, int]]:
    if not isinstance(data, list):
        raise _fail("Margaux module list must be a JSON array", where)
    modules = []
    for k, item in enumerate(data):
        here = f"{where}/{k}"
        if not isinstance(item, dict):
            raise _fail("Margaux module must be an object with 'point' and 'weight'", here)
        coords = item.get("point")
        if not isinstance(coords, list) or len(coords) != 2:
            raise _fail("'point' must be a two-element array", f"{here}/point")
        a = _complex_from_json(coords[0], f"{here}/point/0")
        b = _complex_from_json(coords[1], f"{here}/point/1")
        try:
            p = MargauxPoint(a, b)
        except DescriptorError as e:
            raise _fail(e.message, f"{here}/point") from e
        m = _int(item.get("weight"), f"{here}/weight")
        if m < 0:
            raise _fail(f"Weight {m} at {p} is not dominant", f"{here}/weight")
        modules.append((p, m))
    return modules


def _located(loaded: LoadedJson) -> str:
    return f"{loaded.path}#"


def load_orbit_space(path: PathLike) -> Tuple[OrbitSpace, LoadedJson]:
    loaded = read_json(path)
    return orbit_space_from_json(loaded.data, _located(loaded)), loaded


def load_module(path: PathLike, bind: Bound = None) -> Tuple[EvalModuleDescriptor, LoadedJson]:
    """Load one module; with ``bind=(rs, ospace)`` also check it against them."""
    loaded = read_json(path)
    desc = module_from_json(loaded.data, _located(loaded))
    if bind is not None:
        desc = bind_module(desc, *bind, _located(loaded))
    return desc, loaded


def load_modules(path: PathLike, bind: Bound = None) -> Tuple[List[EvalModuleDescriptor], LoadedJson]:
    loaded = read_json(path)
    where = _located(loaded)
    modules = modules_from_json(loaded.data, where)
    if bind is not None:
        modules = [bind_module(desc, *bind, f"{where}/{k}") for k, desc in enumerate(modules)]
    return modules, loaded


def load_pairs(path: PathLike, bind: Bound = None) -> Tuple[List[Tuple[EvalModuleDescriptor, EvalModuleDescriptor]], LoadedJson]:
    loaded = read_json(path)
    where = _located(loaded)
    pairs = pairs_from_json(loaded.data, where)
    if bind is not None:
        pairs = [
            (bind_module(E, *bind, f"{where}/{k}/0"), bind_module(F, *bind, f"{where}/{k}/1"))
            for k, (E, F) in enumerate(pairs)
        ]
    return pairs, loaded


def load_margaux_modules(path: PathLike) -> Tuple[List[Tuple[MargauxPoint, int]], LoadedJson]:
    loaded = read_json(path)
    return margaux_modules_from_json(loaded.data, _located(loaded)), loaded
