"""JSON round-trip for the library's value objects.

Floats are written with Python's shortest round-tripping repr, so
``from_json(to_json(x)) == x`` holds bit for bit. An infinite exponent is
written as the string ``"inf"``.
"""
from __future__ import annotations

import json
import math

import numpy as np

from .counterexamples import KotheExampleConfig, PettisExampleConfig
from .dunford import SimpleFunction
from .errors import MalformedInput, VMLabError
from .normed import MomentMaxResult, SpaceDescriptor
from .space import DiscreteProbabilitySpace, Partition
from .summing import LinearOperator, PietschCertificate
from .thickness import ThicknessInstance
from .variation import VectorMeasure

__all__ = ["to_json", "from_json", "dumps", "loads", "load_file",
           "space_from_json", "partition_from_json", "descriptor_from_json",
           "function_from_json", "measure_from_json", "operator_from_json",
           "certificate_from_json", "thickness_from_json"]


def _num(x):
    x = float(x)
    return "inf" if math.isinf(x) and x > 0 else x


def _float(x):
    return math.inf if x in ("inf", "Infinity") else float(x)


def _rows(a):
    return np.asarray(a, dtype=float).tolist()


def to_json(obj) -> dict | list:
    """JSON-ready representation of any supported object."""
    if isinstance(obj, DiscreteProbabilitySpace):
        return {"masses": obj.masses.tolist()}
    if isinstance(obj, Partition):
        return [list(b) for b in obj.blocks]
    if isinstance(obj, SpaceDescriptor):
        return obj.to_json()
    if isinstance(obj, SimpleFunction):
        return {"space": to_json(obj.space), "codomain": obj.codomain.to_json(),
                "values": _rows(obj.values)}
    if isinstance(obj, VectorMeasure):
        return {"space": to_json(obj.space), "codomain": obj.codomain.to_json(),
                "atom_values": _rows(obj.atom_values)}
    if isinstance(obj, LinearOperator):
        return {"domain": obj.domain.to_json(), "codomain": obj.codomain.to_json(),
                "entries": _rows(obj.entries)}
    if isinstance(obj, PietschCertificate):
        return {"p": _num(obj.p), "support": _rows(obj.support),
                "weights": _rows(obj.weights), "constant": float(obj.constant),
                "test_family": _rows(obj.test_family),
                "test_family_hash": obj.family_hash()}
    if isinstance(obj, ThicknessInstance):
        d = {"descriptor": obj.descriptor.to_json(), "gamma": _rows(obj.gamma)}
        if obj.chain is not None:
            d["chain"] = [list(s) for s in obj.chain]
        return d
    if isinstance(obj, MomentMaxResult):
        return {"value": float(obj.value), "witness": _rows(obj.witness),
                "certified": obj.certified}
    if isinstance(obj, PettisExampleConfig):
        return {"levels": int(obj.levels), "p": _num(obj.p)}
    if isinstance(obj, KotheExampleConfig):
        return {"p": _num(obj.p), "atom_masses": list(obj.atom_masses)}
    raise TypeError(f"no JSON form for {type(obj).__name__}")


def _guard(fn):
    # structural problems become MalformedInput; guard violations pass through
    def wrapped(obj, *args):
        try:
            return fn(obj, *args)
        except VMLabError:
            raise
        except (KeyError, TypeError, AttributeError, IndexError) as exc:
            raise MalformedInput(f"{fn.__name__}: {type(exc).__name__}: {exc}") from None
        except ValueError as exc:
            raise MalformedInput(f"{fn.__name__}: {exc}") from None
    wrapped.__name__ = fn.__name__
    wrapped.__doc__ = fn.__doc__
    return wrapped


@_guard
def space_from_json(obj) -> DiscreteProbabilitySpace:
    return DiscreteProbabilitySpace(obj["masses"])


@_guard
def partition_from_json(obj, n: int) -> Partition:
    return Partition([[int(i) for i in b] for b in obj], n)


@_guard
def descriptor_from_json(obj) -> SpaceDescriptor:
    return SpaceDescriptor.from_json(obj)


@_guard
def function_from_json(obj) -> SimpleFunction:
    return SimpleFunction(space_from_json(obj["space"]),
                          descriptor_from_json(obj["codomain"]), obj["values"])


@_guard
def measure_from_json(obj) -> VectorMeasure:
    return VectorMeasure(space_from_json(obj["space"]),
                         descriptor_from_json(obj["codomain"]), obj["atom_values"])


@_guard
def operator_from_json(obj) -> LinearOperator:
    return LinearOperator(descriptor_from_json(obj["domain"]),
                          descriptor_from_json(obj["codomain"]), obj["entries"])


@_guard
def certificate_from_json(obj) -> PietschCertificate:
    cert = PietschCertificate(np.array(obj["support"], dtype=float),
                              np.array(obj["weights"], dtype=float),
                              float(obj["constant"]),
                              np.array(obj["test_family"], dtype=float),
                              _float(obj["p"]))
    h = obj.get("test_family_hash")
    if h is not None and h != cert.family_hash():
        raise MalformedInput("test family does not match its recorded hash")
    return cert


@_guard
def thickness_from_json(obj) -> ThicknessInstance:
    return ThicknessInstance(descriptor_from_json(obj["descriptor"]), obj["gamma"],
                             obj.get("chain"))


@_guard
def moment_result_from_json(obj) -> MomentMaxResult:
    return MomentMaxResult(float(obj["value"]), np.array(obj["witness"], dtype=float),
                           obj["certified"])


@_guard
def pettis_config_from_json(obj) -> PettisExampleConfig:
    return PettisExampleConfig(int(obj["levels"]), _float(obj.get("p", 2.0)))


@_guard
def kothe_config_from_json(obj) -> KotheExampleConfig:
    return KotheExampleConfig(_float(obj["p"]), tuple(obj["atom_masses"]))


_READERS = {
    DiscreteProbabilitySpace: space_from_json,
    SpaceDescriptor: descriptor_from_json,
    SimpleFunction: function_from_json,
    VectorMeasure: measure_from_json,
    LinearOperator: operator_from_json,
    PietschCertificate: certificate_from_json,
    ThicknessInstance: thickness_from_json,
    MomentMaxResult: moment_result_from_json,
    PettisExampleConfig: pettis_config_from_json,
    KotheExampleConfig: kothe_config_from_json,
}


def from_json(kind: type, obj, **kwargs):
    """Inverse of :func:`to_json`. Partitions need ``n=``."""
    if kind is Partition:
        return partition_from_json(obj, kwargs["n"])
    return _READERS[kind](obj)


def dumps(obj, **kwargs) -> str:
    return json.dumps(to_json(obj), allow_nan=False, **kwargs)


def loads(kind: type, text: str, **kwargs):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None
    return from_json(kind, obj, **kwargs)


def load_file(kind: type, path, **kwargs):
    with open(path, encoding="utf-8") as fh:
        return loads(kind, fh.read(), **kwargs)
