#!/usr/bin/env python3
"""Regenerate data/knot_table.jsonl and tests/data/knotinfo_reference.jsonl.

Requires the `database_knotinfo` package. Only braid words are taken into the
shipped table; Jones values are recomputed by the library at load time. The
reference file keeps the published polynomials so tests can cross-check.
"""
import json
import pathlib

from database_knotinfo import link_list

root = pathlib.Path(__file__).resolve().parent.parent


def vec_to_terms(vec):
    v = json.loads(vec)
    lo = v[0]
    return {str(lo + i): c for i, c in enumerate(v[2:]) if c != 0}


def palindromic(vec):
    v = json.loads(vec)
    return v[0] == -v[1] and v[2:] == v[2:][::-1]


knots = [k for k in link_list()[1:]
         if k["crossing_number"] and 3 <= int(k["crossing_number"]) <= 9]

with open(root / "data" / "knot_table.jsonl", "w") as table, \
        open(root / "tests" / "data" / "knotinfo_reference.jsonl", "w") as ref:
    for k in knots:
        braid = json.loads(k["braid_notation"])
        table.write(json.dumps({"name": k["name"], "braid": braid}) + "\n")
        if not palindromic(k["jones_polynomial_vector"]):
            table.write(json.dumps({"name": "m" + k["name"],
                                    "braid": [-x for x in braid],
                                    "mirror_of": k["name"]}) + "\n")
        ref.write(json.dumps({
            "name": k["name"],
            "braid": braid,
            "jones_t": vec_to_terms(k["jones_polynomial_vector"]),
            "alexander_t": vec_to_terms(k["alexander_polynomial_vector"]),
            "arf": int(k["arf_invariant"]),
            "determinant": int(k["determinant"]),
        }) + "\n")
