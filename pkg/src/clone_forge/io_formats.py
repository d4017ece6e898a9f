"""JSON formats for signatures, finite algebras, and tabulated structures.

Serialized action tables are keyed by the comma-joined image table of each
map, listed in lexicographic enumeration order; elements are 0-based indices
into the stage carriers.  Loading validates shapes first and functoriality
second, so a file that parses but misbehaves is rejected with the offending
maps and element.
"""

from __future__ import annotations

import json
from pathlib import Path

from .checks import CheckPolicy
from .clone import FiniteAlgebra, Signature
from .fin_cat import FinMap, enumerate_maps
from .presheaf_f import TruncatedPresheaf
from .subst_algebra import TableSubstAlgebra


class SchemaError(ValueError):
    """A file parses as JSON but violates the expected schema or invariants."""


def _load_json(path) -> object:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}") from exc


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise SchemaError(message)


def load_signature(path) -> Signature:
    data = _load_json(path)
    _expect(isinstance(data, dict) and "operators" in data, f"{path}: expected an object with 'operators'")
    ops = data["operators"]
    _expect(isinstance(ops, dict), f"{path}: 'operators' must be an object")
    for name, arity in ops.items():
        _expect(isinstance(arity, int) and arity >= 0, f"{path}: bad arity for {name!r}")
    return Signature(ops)


def dump_signature(sig: Signature) -> str:
    return json.dumps({"operators": sig.operators}, indent=2) + "\n"


def load_finite_algebra(path) -> FiniteAlgebra:
    data = _load_json(path)
    _expect(
        isinstance(data, dict) and "carrier" in data and "operations" in data,
        f"{path}: expected an object with 'carrier' and 'operations'",
    )
    carrier = data["carrier"]
    _expect(isinstance(carrier, int) and carrier >= 1, f"{path}: bad carrier size")
    ops = {}
    _expect(isinstance(data["operations"], dict), f"{path}: 'operations' must be an object")
    for name, spec in data["operations"].items():
        _expect(
            isinstance(spec, dict) and "arity" in spec and "table" in spec,
            f"{path}: operation {name!r} needs 'arity' and 'table'",
        )
        arity, table = spec["arity"], spec["table"]
        _expect(isinstance(arity, int) and arity >= 0, f"{path}: bad arity for {name!r}")
        _expect(isinstance(table, list), f"{path}: bad table for {name!r}")
        ops[name] = (arity, tuple(table))
    try:
        return FiniteAlgebra(carrier, ops)
    except ValueError as exc:
        raise SchemaError(f"{path}: {exc}") from exc


def dump_finite_algebra(alg: FiniteAlgebra) -> str:
    payload = {
        "carrier": alg.carrier_size,
        "operations": {
            name: {"arity": arity, "table": list(table)}
            for name, (arity, table) in sorted(alg.operations.items())
        },
    }
    return json.dumps(payload, indent=2) + "\n"


def load_finmap(data) -> FinMap:
    _expect(
        isinstance(data, dict) and set(data) >= {"dom", "cod", "table"},
        "map object needs 'dom', 'cod', 'table'",
    )
    try:
        return FinMap(data["dom"], data["cod"], tuple(data["table"]))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc


def _table_key(f: FinMap) -> str:
    return ",".join(str(v) for v in f.table)


def _check_presheaf_functorial(P: TruncatedPresheaf, label: str) -> None:
    from .presheaf_f import check_functoriality

    report = check_functoriality(
        P, P.bound, CheckPolicy(exhaustive_threshold=10_000_000)
    )
    for check in report.checks:
        if not check.passed:
            raise SchemaError(f"{label}: {check.law} fails: {check.counterexample}")


def _parse_truncated_presheaf(data, label: str) -> TruncatedPresheaf:
    _expect(
        isinstance(data, dict) and "bound" in data and "carriers" in data and "actions" in data,
        f"{label}: expected 'bound', 'carriers', 'actions'",
    )
    bound = data["bound"]
    _expect(isinstance(bound, int) and bound >= 0, f"{label}: bad bound")
    sizes = data["carriers"]
    _expect(
        isinstance(sizes, list) and len(sizes) == bound + 1,
        f"{label}: 'carriers' must list stages 0..{bound}",
    )
    _expect(all(isinstance(s, int) and s >= 0 for s in sizes), f"{label}: bad carrier size")
    actions: dict[tuple[int, int], dict[tuple[int, ...], tuple[int, ...]]] = {}
    raw_actions = data["actions"]
    _expect(isinstance(raw_actions, dict), f"{label}: 'actions' must be an object")
    for m in range(bound + 1):
        for n in range(bound + 1):
            key = f"{m}->{n}"
            block = raw_actions.get(key)
            _expect(block is not None, f"{label}: missing action block {key!r}")
            tables = {}
            for f in enumerate_maps(m, n):
                raw = block.get(_table_key(f))
                _expect(
                    raw is not None,
                    f"{label}: block {key!r} missing map {_table_key(f)!r}",
                )
                _expect(
                    isinstance(raw, list) and len(raw) == sizes[m],
                    f"{label}: table for {key!r}/{_table_key(f)!r} has wrong length",
                )
                _expect(
                    all(isinstance(v, int) and 0 <= v < sizes[n] for v in raw),
                    f"{label}: table for {key!r}/{_table_key(f)!r} escapes the carrier",
                )
                tables[f.table] = tuple(raw)
            extra = set(block) - {_table_key(f) for f in enumerate_maps(m, n)}
            _expect(not extra, f"{label}: block {key!r} has unknown maps {sorted(extra)}")
            actions[(m, n)] = tables
    P = TruncatedPresheaf(bound, sizes, actions)
    _check_presheaf_functorial(P, label)
    return P


def load_truncated_presheaf(path) -> TruncatedPresheaf:
    return _parse_truncated_presheaf(_load_json(path), str(path))


def presheaf_payload(P: TruncatedPresheaf) -> dict:
    actions = {}
    for m in range(P.bound + 1):
        for n in range(P.bound + 1):
            actions[f"{m}->{n}"] = {
                _table_key(f): list(P.actions[(m, n)][f.table])
                for f in enumerate_maps(m, n)
            }
    return {"bound": P.bound, "carriers": list(P.carrier_sizes), "actions": actions}


def dump_truncated_presheaf(P: TruncatedPresheaf) -> str:
    return json.dumps(presheaf_payload(P), indent=2) + "\n"


def load_subst_algebra(path) -> TableSubstAlgebra:
    data = _load_json(path)
    P = _parse_truncated_presheaf(data, str(path))
    _expect(
        isinstance(data.get("s"), dict) and isinstance(data.get("v"), dict),
        f"{path}: expected 's' and 'v' tables",
    )
    s_tables = {}
    v_values = {}
    for m in range(P.bound):
        s_raw = data["s"].get(str(m))
        _expect(
            isinstance(s_raw, list),
            f"{path}: missing substitution table for stage {m}",
        )
        s_tables[m] = list(s_raw)
        v_raw = data["v"].get(str(m))
        _expect(isinstance(v_raw, int), f"{path}: missing variable for stage {m}")
        v_values[m] = v_raw
    try:
        return TableSubstAlgebra(P, s_tables, v_values, name=Path(str(path)).stem)
    except ValueError as exc:
        raise SchemaError(f"{path}: {exc}") from exc


_LOADERS = {
    "signature": load_signature,
    "finite-algebra": load_finite_algebra,
    "presheaf": load_truncated_presheaf,
    "subst-algebra": load_subst_algebra,
}


def load_and_validate(path, kind: str):
    """Load a file of the named kind, enforcing schema and invariants."""
    if kind not in _LOADERS:
        raise SchemaError(f"unknown input kind {kind!r}; have {sorted(_LOADERS)}")
    return _LOADERS[kind](path)


def subst_algebra_payload(alg: TableSubstAlgebra) -> dict:
    payload = presheaf_payload(alg.base)
    payload["s"] = {str(m): list(t) for m, t in sorted(alg.s_tables.items())}
    payload["v"] = {str(m): v for m, v in sorted(alg.v_values.items())}
    return payload


def dump_subst_algebra(alg: TableSubstAlgebra) -> str:
    return json.dumps(subst_algebra_payload(alg), indent=2) + "\n"
