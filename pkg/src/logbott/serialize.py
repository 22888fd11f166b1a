"""JSON/TOML encodings of rings, bundles, components, charts, and maps.

Conventions: rationals are serialized as "p/q" strings (plain integers
are accepted on input); polynomials as coefficient-exponent lists
``[["3/2", [2, 0]], ...]``; integration-table keys as readable monomial
strings such as ``"xi*h^2"`` (``"1"`` for the empty monomial).
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

try:
    import tomllib as _toml
except ImportError:  # Python 3.10
    import tomli as _toml

from .catalog import ExampleEntry
from .charts import ComponentChart, LogChartField, default_coords
from .chern import BundleData, InvariantPolySpec
from .localization import FixedComponent, GlobalSide
from .poly import Monomial, Poly, as_fraction
from .residues import LocalMap
from .ring import GradedClass, RingPresentation


def load_document(path: str | Path) -> dict:
    path = Path(path)
    if path.suffix.lower() == ".toml":
        with open(path, "rb") as fh:
            return _toml.load(fh)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def frac_str(value: Fraction) -> str:
    return str(value)


def poly_to_pairs(p: Poly) -> list:
    return [[frac_str(c), list(m)] for m, c in sorted(p.terms.items())]


def poly_from_pairs(variables, pairs) -> Poly:
    return Poly.from_pairs(variables, [(c, tuple(m)) for c, m in pairs])


def monomial_key(mono: Monomial, names) -> str:
    factors = [
        name if e == 1 else f"{name}^{e}" for name, e in zip(names, mono) if e
    ]
    return "*".join(factors) if factors else "1"


def parse_monomial_key(key: str, names) -> Monomial:
    exps = [0] * len(names)
    key = key.strip()
    if key != "1":
        for factor in key.split("*"):
            name, _, power = factor.partition("^")
            name = name.strip()
            if name not in names:
                raise ValueError(f"unknown generator {name!r} in monomial key {key!r}")
            exps[names.index(name)] += int(power) if power else 1
    return tuple(exps)


def ring_to_dict(ring: RingPresentation) -> dict:
    return {
        "generators": [
            {"name": n, "degree": d} for n, d in zip(ring.names, ring.degrees)
        ],
        "rules": [
            {"lead": list(lead), "rhs": [[frac_str(c), list(m)] for m, c in sorted(rhs.items())]}
            for lead, rhs in ring.rules
        ],
        "top_degree": ring.top_degree,
        "integration_table": {
            monomial_key(m, ring.names): frac_str(v)
            for m, v in sorted(ring.integration_table.items())
        },
    }


def ring_from_dict(doc: dict) -> RingPresentation:
    generators = [(g["name"], int(g["degree"])) for g in doc["generators"]]
    names = tuple(n for n, _ in generators)
    rules = [
        (tuple(rule["lead"]), {tuple(m): as_fraction(c) for c, m in rule["rhs"]})
        for rule in doc.get("rules", [])
    ]
    table = {
        parse_monomial_key(key, names): as_fraction(value)
        for key, value in doc.get("integration_table", {}).items()
    }
    return RingPresentation(
        generators=generators,
        rules=rules,
        top_degree=int(doc["top_degree"]),
        integration_table=table,
    )


def graded_class_to_pairs(x: GradedClass) -> list:
    return poly_to_pairs(x.as_poly())


def graded_class_from_pairs(ring: RingPresentation, pairs) -> GradedClass:
    return GradedClass.from_poly(ring, poly_from_pairs(ring.names, pairs))


def bundle_to_dict(bundle: BundleData) -> dict:
    return {
        "rank": bundle.rank,
        "chern": [graded_class_to_pairs(c) for c in bundle.chern],
    }


def bundle_from_dict(ring: RingPresentation, doc: dict) -> BundleData:
    chern = tuple(graded_class_from_pairs(ring, pairs) for pairs in doc["chern"])
    return BundleData(ring, int(doc["rank"]), chern)


def phi_to_json(phi: InvariantPolySpec):
    if phi.is_top:
        return "top_chern"
    return {"monomial": [[i, a] for i, a in phi.monomial]}


def phi_from_json(doc) -> InvariantPolySpec:
    if doc == "top_chern":
        return InvariantPolySpec.top_chern()
    if isinstance(doc, dict) and "monomial" in doc:
        return InvariantPolySpec.chern_monomial([(int(i), int(a)) for i, a in doc["monomial"]])
    raise ValueError(f"cannot parse invariant polynomial spec {doc!r}")


def component_to_dict(component: FixedComponent) -> dict:
    def blocks(pairs):
        return [
            {"eigenvalue": frac_str(lam), "bundle": bundle_to_dict(bundle)}
            for lam, bundle in pairs
        ]

    return {
        "name": component.name,
        "dim": component.dim_r,
        "codim": component.codim_k,
        "ring": ring_to_dict(component.ring_z),
        "k_blocks": blocks(component.k_blocks),
        "n_blocks": blocks(component.n_blocks),
        "assert_log_transversal": component.assert_log_transversal,
    }


def component_from_dict(doc: dict) -> FixedComponent:
    ring = ring_from_dict(doc["ring"])

    def blocks(items):
        return tuple(
            (as_fraction(item["eigenvalue"]), bundle_from_dict(ring, item["bundle"]))
            for item in items
        )

    return FixedComponent(
        name=doc["name"],
        dim_r=int(doc["dim"]),
        codim_k=int(doc["codim"]),
        ring_z=ring,
        k_blocks=blocks(doc.get("k_blocks", [])),
        n_blocks=blocks(doc.get("n_blocks", [])),
        assert_log_transversal=bool(doc.get("assert_log_transversal", True)),
    )


def global_to_dict(side: GlobalSide) -> dict:
    doc = {
        "ring": ring_to_dict(side.ring_x),
        "tangent": bundle_to_dict(side.tangent),
        "divisors": [graded_class_to_pairs(d) for d in side.divisor_classes],
    }
    if side.direct_log_bundle is not None:
        doc["direct_log_bundle"] = bundle_to_dict(side.direct_log_bundle)
    return doc


def global_from_dict(doc: dict) -> GlobalSide:
    ring = ring_from_dict(doc["ring"])
    direct = doc.get("direct_log_bundle")
    return GlobalSide(
        ring_x=ring,
        tangent=bundle_from_dict(ring, doc["tangent"]),
        divisor_classes=tuple(
            graded_class_from_pairs(ring, pairs) for pairs in doc.get("divisors", [])
        ),
        direct_log_bundle=bundle_from_dict(ring, direct) if direct else None,
    )


def entry_to_dict(entry: ExampleEntry) -> dict:
    return {
        "example": entry.example_id,
        "description": entry.description,
        "params": dict(entry.params),
        "global": global_to_dict(entry.global_side),
        "components": [component_to_dict(c) for c in entry.components],
        "phi": phi_to_json(entry.phi),
        "expected_global": frac_str(entry.expected_global),
        "expected_contributions": [frac_str(v) for v in entry.expected_contributions],
    }


def entry_from_dict(doc: dict) -> ExampleEntry:
    return ExampleEntry(
        example_id=doc["example"],
        description=doc.get("description", ""),
        global_side=global_from_dict(doc["global"]),
        components=tuple(component_from_dict(c) for c in doc.get("components", [])),
        phi=phi_from_json(doc["phi"]),
        expected_global=as_fraction(doc["expected_global"]),
        expected_contributions=tuple(
            as_fraction(v) for v in doc.get("expected_contributions", [])
        ),
        params=dict(doc.get("params", {})),
    )


def chart_to_dict(field: LogChartField, chart: ComponentChart | None = None) -> dict:
    doc = {
        "dim": field.dim,
        "coords": list(field.coords),
        "log_indices": sorted(field.log_indices),
        "coeffs": [poly_to_pairs(p) for p in field.coeffs],
    }
    if chart is not None:
        doc["component"] = {"normal_coords": list(chart.normal_coords)}
    return doc


def chart_from_dict(doc: dict) -> tuple[LogChartField, ComponentChart | None]:
    dim = int(doc["dim"])
    coords = tuple(doc.get("coords") or default_coords(dim))
    field = LogChartField(
        dim=dim,
        log_indices=frozenset(int(i) for i in doc.get("log_indices", [])),
        coeffs=tuple(poly_from_pairs(coords, pairs) for pairs in doc["coeffs"]),
    )
    chart = None
    if "component" in doc:
        chart = ComponentChart(
            normal_coords=tuple(int(i) for i in doc["component"]["normal_coords"])
        )
    return field, chart


def local_map_to_dict(local_map: LocalMap, test_function: Poly) -> dict:
    return {
        "codim": local_map.codim,
        "coords": list(local_map.vars),
        "maps": [poly_to_pairs(f) for f in local_map.components],
        "test_function": poly_to_pairs(test_function),
    }


def local_map_from_dict(doc: dict) -> tuple[LocalMap, Poly]:
    codim = int(doc["codim"])
    coords = tuple(doc.get("coords") or tuple(f"y{i}" for i in range(1, codim + 1)))
    components = [poly_from_pairs(coords, pairs) for pairs in doc["maps"]]
    test_function = poly_from_pairs(coords, doc.get("test_function", [["1", [0] * codim]]))
    return LocalMap(codim, components), test_function


def dump_json(doc, path: str | Path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
