"""JSON formats and structural validation.

Polyhedron files look like::

    {"dim": 2,
     "hrep": [{"a": [1, 0], "alpha": "3/2"}, ...],
     "vrep": {"vertices": [["0", "1/2"]], "rays": [[1, 0]], "lines": []}}

Either representation may be omitted; when both are present they must
describe the same set. Rationals are written as ``"p/q"`` strings (plain
integers are accepted on input).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .closure import CutBounds, CutFamily
from .errors import ClosureLabError, ValidationError
from .lattice import Split, UnimodularMap
from .numeric import dot, format_rational, int_gcd, is_zero, primitive_vector, to_fraction
from .polyhedra import DEFAULT_MAX_CONSTRAINTS, Polyhedron, max_dim


def max_constraints() -> int:
    return int(os.environ.get("CLOSURELAB_MAX_CONSTRAINTS", DEFAULT_MAX_CONSTRAINTS))


@dataclass
class ValidationReport:
    errors: list = field(default_factory=list)  # (json path, message)
    warnings: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def error(self, path: str, msg: str) -> None:
        self.errors.append((path, msg))

    def warn(self, path: str, msg: str) -> None:
        self.warnings.append((path, msg))

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "errors": [{"path": p, "message": m} for p, m in self.errors],
            "warnings": [{"path": p, "message": m} for p, m in self.warnings],
        }


def _join(prefix: str, key) -> str:
    if isinstance(key, int):
        return f"{prefix}[{key}]"
    return f"{prefix}.{key}" if prefix else key


def _rational(value, path: str, report: ValidationReport):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        report.error(path, f"expected an integer or a 'p/q' string, got {value!r}")
        return None
    try:
        return to_fraction(value)
    except (ValueError, ZeroDivisionError, TypeError):
        report.error(path, f"not a rational number: {value!r}")
        return None


def _vector(value, dim: int, path: str, report: ValidationReport):
    if not isinstance(value, list):
        report.error(path, "expected a list")
        return None
    if len(value) != dim:
        report.error(path, f"expected {dim} entries, got {len(value)}")
        return None
    out = [_rational(x, _join(path, i), report) for i, x in enumerate(value)]
    if any(x is None for x in out):
        return None
    return tuple(out)


def _direction(value, dim: int, path: str, report: ValidationReport):
    vec = _vector(value, dim, path, report)
    if vec is None:
        return None
    if is_zero(vec):
        report.error(path, "direction must be nonzero")
        return None
    prim = primitive_vector(vec)
    if prim != vec:
        report.warn(path, f"normalized to primitive integer vector {list(prim)}")
    return prim


def _parse_hrep(items, dim: int, path: str, report: ValidationReport):
    if not isinstance(items, list):
        report.error(path, "expected a list of constraints")
        return None
    cons = []
    for k, item in enumerate(items):
        p = _join(path, k)
        if not isinstance(item, dict) or "a" not in item or "alpha" not in item:
            report.error(p, "expected an object with keys 'a' and 'alpha'")
            continue
        a = _vector(item["a"], dim, _join(p, "a"), report)
        alpha = _rational(item["alpha"], _join(p, "alpha"), report)
        if a is None or alpha is None:
            continue
        if is_zero(a):
            report.error(_join(p, "a"), "normal must be nonzero")
            continue
        if any(x.denominator != 1 for x in a) or int_gcd(int(x) for x in a) != 1:
            report.warn(_join(p, "a"), "normal is not primitive; constraint normalized")
        cons.append((a, alpha))
    return cons


def _parse_vrep(obj, dim: int, path: str, report: ValidationReport):
    if not isinstance(obj, dict):
        report.error(path, "expected an object with 'vertices', 'rays', 'lines'")
        return None
    out = {}
    for key in ("vertices", "rays", "lines"):
        items = obj.get(key, [])
        p = _join(path, key)
        if not isinstance(items, list):
            report.error(p, "expected a list")
            out[key] = []
            continue
        parse = _vector if key == "vertices" else _direction
        vecs = [parse(x, dim, _join(p, i), report) for i, x in enumerate(items)]
        out[key] = [v for v in vecs if v is not None]
    if not out["vertices"] and (out["rays"] or out["lines"]):
        report.error(_join(path, "vertices"), "rays or lines given without any vertex")
    return out


def _cross_check(cons, vrep, path: str, report: ValidationReport) -> None:
    for k, v in enumerate(vrep["vertices"]):
        for j, (a, alpha) in enumerate(cons):
            if dot(a, v) > alpha:
                report.error(_join(_join(path, "vrep.vertices"), k), f"violates constraint hrep[{j}]")
                break
    for k, r in enumerate(vrep["rays"]):
        for j, (a, _) in enumerate(cons):
            if dot(a, r) > 0:
                report.error(_join(_join(path, "vrep.rays"), k), f"leaves constraint hrep[{j}]")
                break
    for k, l in enumerate(vrep["lines"]):
        for j, (a, _) in enumerate(cons):
            if dot(a, l) != 0:
                report.error(_join(_join(path, "vrep.lines"), k), f"not parallel to constraint hrep[{j}]")
                break


def check_polyhedron(obj, report: ValidationReport, path: str = "") -> Polyhedron | None:
    """Validate a polyhedron object, recording problems; return it if sound."""
    if not isinstance(obj, dict):
        report.error(path or "$", "expected a polyhedron object")
        return None
    dim = obj.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        report.error(_join(path, "dim"), "expected a positive integer")
        return None
    if dim > max_dim():
        report.error(_join(path, "dim"), f"dimension {dim} exceeds the limit {max_dim()} (CLOSURELAB_MAX_DIM)")
        return None
    if "hrep" not in obj and "vrep" not in obj:
        report.error(path or "$", "need at least one of 'hrep' and 'vrep'")
        return None
    n_err = len(report.errors)
    cons = _parse_hrep(obj["hrep"], dim, _join(path, "hrep"), report) if "hrep" in obj else None
    vrep = _parse_vrep(obj["vrep"], dim, _join(path, "vrep"), report) if "vrep" in obj else None
    if cons is not None and len(cons) > max_constraints():
        report.error(_join(path, "hrep"), f"{len(cons)} constraints exceed the limit {max_constraints()}")
    if len(report.errors) > n_err:
        return None
    if cons is not None and vrep is not None:
        _cross_check(cons, vrep, path, report)
        if len(report.errors) > n_err:
            return None
    P_h = Polyhedron.from_h(dim, cons) if cons is not None else None
    P_v = Polyhedron.from_v(dim, vrep["vertices"], vrep["rays"], vrep["lines"]) if vrep is not None else None
    if P_h is not None and P_v is not None and P_h != P_v:
        report.error(_join(path, "vrep"), "generators span a proper subset of the H-representation")
        return None
    P = P_h if P_h is not None else P_v
    if len(P.constraints) > max_constraints():
        report.error(path or "$", f"{len(P.constraints)} constraints exceed the limit {max_constraints()}")
        return None
    return P


def validate(obj) -> ValidationReport:
    """Validate any supported document (polyhedron, split, family, map)."""
    report = ValidationReport()
    kind = document_kind(obj)
    if kind == "polyhedron":
        check_polyhedron(obj, report)
    elif kind == "split":
        _check_split(obj, report, "")
    elif kind == "family":
        _check_family(obj, report)
    elif kind == "unimodular":
        _check_map(obj, report)
    else:
        report.error("$", "unrecognized document: expected a polyhedron, split, family or unimodular map")
    return report


def document_kind(obj) -> str | None:
    if not isinstance(obj, dict):
        return None
    if "members" in obj:
        return "family"
    if "u" in obj and "i" in obj:
        return "split"
    if "U" in obj:
        return "unimodular"
    if "dim" in obj:
        return "polyhedron"
    return None


def _check_split(obj, report: ValidationReport, path: str) -> Split | None:
    try:
        i = obj["i"]
        if isinstance(i, bool) or not isinstance(i, int):
            raise ValueError("i must be an integer")
        return Split(tuple(obj["u"]), i)
    except (ClosureLabError, ValueError, TypeError) as exc:
        report.error(path or "$", f"invalid split: {exc}")
        return None


def _check_family(obj, report: ValidationReport) -> CutFamily | None:
    members = obj.get("members")
    if not isinstance(members, list):
        report.error("members", "expected a list")
        return None
    polys = []
    for k, m in enumerate(members):
        p = _join("members", k)
        if document_kind(m) == "split":
            s = _check_split(m, report, p)
            polys.append(s.polyhedron() if s else None)
        else:
            polys.append(check_polyhedron(m, report, p))
    bounds = None
    if "bounds" in obj and obj["bounds"] is not None:
        b = obj["bounds"]
        try:
            bounds = CutBounds(*(int(b[key]) for key in ("k", "l", "m")))
        except (KeyError, TypeError, ValueError):
            report.error("bounds", "expected integers 'k', 'l', 'm'")
    if not report.ok:
        return None
    try:
        return CutFamily(tuple(polys), bounds)
    except ClosureLabError as exc:
        report.error("members", str(exc))
        return None


def _check_map(obj, report: ValidationReport) -> UnimodularMap | None:
    try:
        return UnimodularMap(tuple(tuple(r) for r in obj["U"]), tuple(obj.get("shift", [0] * len(obj["U"]))))
    except (ClosureLabError, TypeError, ValueError) as exc:
        report.error("U", str(exc))
        return None


def _raise_on(report: ValidationReport, what: str):
    if not report.ok:
        path, msg = report.errors[0]
        raise ValidationError(f"invalid {what} at {path}: {msg}")


def parse_polyhedron(obj) -> Polyhedron:
    """Parse a polyhedron or split document."""
    report = ValidationReport()
    if document_kind(obj) == "split":
        s = _check_split(obj, report, "")
        _raise_on(report, "split")
        return s.polyhedron()
    P = check_polyhedron(obj, report)
    _raise_on(report, "polyhedron")
    return P


def parse_family(obj) -> CutFamily:
    report = ValidationReport()
    if document_kind(obj) != "family":
        raise ValidationError("a family document needs a 'members' list")
    fam = _check_family(obj, report)
    _raise_on(report, "family")
    return fam


def parse_split(obj) -> Split:
    report = ValidationReport()
    s = _check_split(obj, report, "")
    _raise_on(report, "split")
    return s


def parse_unimodular(obj) -> UnimodularMap:
    report = ValidationReport()
    A = _check_map(obj, report)
    _raise_on(report, "unimodular map")
    return A


def _vec_json(v) -> list:
    return [format_rational(x) for x in v]


def _dir_json(v) -> list:
    return [int(x) for x in v]


def polyhedron_to_json(P: Polyhedron) -> dict:
    return {
        "dim": P.dim,
        "hrep": [{"a": _dir_json(a), "alpha": format_rational(alpha)} for a, alpha in P.constraints],
        "vrep": {
            "vertices": [_vec_json(v) for v in P.vertices],
            "rays": [_dir_json(r) for r in P.rays],
            "lines": [_dir_json(l) for l in P.lines],
        },
    }


def split_to_json(s: Split) -> dict:
    return {"u": list(s.u), "i": s.i}


def family_to_json(fam: CutFamily) -> dict:
    out = {"members": [polyhedron_to_json(L) for L in fam.members]}
    if fam.bounds is not None:
        out["bounds"] = {"k": fam.bounds.k, "l": fam.bounds.l, "m": fam.bounds.m}
    return out


def unimodular_to_json(A: UnimodularMap) -> dict:
    return {"U": [list(r) for r in A.U], "shift": list(A.shift)}


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_json(path) -> object:
    try:
        with open(Path(path), encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None
