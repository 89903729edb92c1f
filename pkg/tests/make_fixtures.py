"""Regenerate the fixture corpus.

Run ``python tests/make_fixtures.py [outdir]``; the default rewrites ``fixtures/``.
The S1 x S2 and trefoil cover blocks are the outputs of the mapping-torus and
Fox-calculus oracles in ``helpers.py``; ``test_fixtures.py`` checks that.
"""

import json
import sys
from pathlib import Path


def P(d):  # exponent -> coefficient, to the wire format
    return [[e, c] for e, c in sorted(d.items()) if c]

def mat(rows):
    return {"rows": len(rows), "cols": len(rows[0]) if rows else 0, "entries": rows}

T1 = P({0: -1, 1: 1})  # t - 1
Z = []
ONE = P({0: 1})

s1xs2_cover = {"direction": "down", "ranks": [1, 1, 1, 1],
               "differentials": [mat([[T1]]), mat([[Z]]), mat([[T1]])],
               "labels": [["v"], ["s"], ["S"], ["SxI"]]}
double_cover = {"direction": "down", "ranks": [1, 2, 2, 1],
                "differentials": [mat([[T1, Z]]), mat([[Z, Z], [Z, Z]]), mat([[T1], [Z]])]}
no_crit3 = {"dimension": 3, "critical": []}
pair_morse = {"dimension": 3, "critical": [[], ["x"], ["y"], []],
              "incidence": [{"from": "x", "to": "y", "series": P({0: 1, 1: -1})}]}
dead_morse = {"dimension": 3, "critical": [[], ["x"], ["y"], []], "incidence": []}

OUT = Path(__file__).resolve().parent.parent / "fixtures"


def write(name, obj):
    path = OUT / name
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")

def main(out=None):
    global OUT
    if out is not None:
        OUT = Path(out)
    write("s1_k1.json", {
        "schema": 1, "name": "circle, degree 1, two critical points", "dimension": 1, "truncation": 30,
        "morse": {"dimension": 1, "critical": [["x1", "x2"], ["y1", "y2"]], "incidence": [
            {"from": "x1", "to": "y1", "series": P({1: 1})},
            {"from": "x2", "to": "y1", "series": P({0: -1})},
            {"from": "x1", "to": "y2", "series": P({0: -1})},
            {"from": "x2", "to": "y2", "series": P({0: 1})}]},
        "orbits": [],
        "cover": {"direction": "down", "ranks": [1, 1], "differentials": [mat([[T1]])], "labels": [["v"], ["e"]]},
    })
    write("s1_k3_no_crit.json", {
        "schema": 1, "name": "circle, degree 3, no critical points", "dimension": 1, "truncation": 30,
        "morse": {"dimension": 1, "critical": []},
        "orbits": [{"k": 3, "sign": 1}],
        "cover": {"direction": "down", "ranks": [1, 1], "differentials": [mat([[P({0: -1, 3: 1})]])]},
    })
    write("s1xs2.json", {
        "schema": 1, "name": "S1 x S2 fibred over the circle", "dimension": 3, "truncation": 30,
        "morse": no_crit3, "orbits": [{"k": 1, "sign": 1}, {"k": 1, "sign": 1}], "cover": s1xs2_cover,
    })
    write("trefoil0.json", {
        "schema": 1, "name": "0-surgery on the trefoil (torus bundle, monodromy of order 6)", "dimension": 3, "truncation": 30,
        "morse": no_crit3,
        "orbits": [{"k": 1, "sign": 1}, {"k": 2, "sign": 1}, {"k": 3, "sign": 1}, {"k": 6, "sign": -1}],
        "cover": {"direction": "down", "ranks": [1, 3, 3, 1], "labels": [["v"], ["a", "b", "s"], ["F", "r_a", "r_b"], ["FxI"]],
                  "differentials": [
                      mat([[Z, Z, T1]]),
                      mat([[Z, T1, P({0: -1})], [Z, ONE, P({1: 1})], [Z, Z, Z]]),
                      mat([[T1], [Z], [Z]])]},
        "presentation": {"generators": ["a", "b"], "relations": mat([[T1, P({0: -1})], [ONE, P({1: 1})]])},
    })
    write("one_orbit.json", {"schema": 1, "name": "single fixed orbit", "orbits": [{"k": 1, "sign": 1}]})
    write("empty.json", {"schema": 1, "name": "no orbits", "orbits": []})
    write("mixed.json", {"schema": 1, "name": "orbits (1,+1), (2,-1)", "orbits": [{"k": 1, "sign": 1}, {"k": 2, "sign": -1}]})
    write("based_complex.json", {
        "schema": 1, "name": "length-two up complex with two admissible subsets",
        "complex": {"direction": "up", "ranks": [1, 2, 1],
                    "differentials": [mat([[ONE], [P({1: 1})]]), mat([[P({1: -1}), ONE]])]},
    })
    write("s1xs2_sw.json", {
        "schema": 1, "name": "S1 x S2, Novikov data without critical points", "dimension": 3, "truncation": 30,
        "morse": no_crit3, "orbits": [{"k": 1, "sign": 1}, {"k": 1, "sign": 1}], "cover": s1xs2_cover,
        "novikov": {"rank": 1, "weights": [1], "orbits": [{"k": 1, "sign": 1, "class": [1]}, {"k": 1, "sign": 1, "class": [1]}],
                    "path_matrix": [], "chi_sigma": 2, "precision": 30},
    })
    write("s1xs2_pair.json", {
        "schema": 1, "name": "S1 x S2 with one cancelling pair of index 1 and 2", "dimension": 3, "truncation": 30,
        "morse": pair_morse, "orbits": [{"k": 1, "sign": 1}] * 3, "cover": s1xs2_cover,
        "novikov": {"rank": 2, "weights": [1, 0],
                    "orbits": [{"k": 1, "sign": 1, "class": [1, 0]}, {"k": 1, "sign": 1, "class": [1, 0]}, {"k": 1, "sign": 1, "class": [1, 1]}],
                    "path_matrix": [[[[[0, 1], 1], [[1, 1], -1]]]], "chi_sigma": 2, "precision": 30},
    })
    write("zero_branch/zero_det.json", {
        "schema": 1, "name": "S1 x S2 # S1 x S2, path matrix with zero determinant", "dimension": 3, "truncation": 30,
        "morse": dead_morse, "orbits": [], "cover": double_cover,
        "novikov": {"rank": 2, "weights": [1, 1], "orbits": [],
                    "path_matrix": [[[[[1, 0], 1], [[0, 1], -1]]]], "chi_sigma": 2, "precision": 30},
    })
    write("asymmetric.json", {
        "schema": 1, "name": "path determinant 1 - t + t^2, off-centre",
        "novikov": {"rank": 1, "weights": [1], "orbits": [],
                    "path_matrix": [[[[[0], 1], [[1], -1], [[2], 1]]]], "chi_sigma": 0, "precision": 30},
    })
    write("negative/unsymmetric.json", {
        "schema": 1, "name": "path determinant 1 - t has no symmetric translate",
        "novikov": {"rank": 1, "weights": [1], "orbits": [],
                    "path_matrix": [[[[[0], 1], [[1], -1]]]], "chi_sigma": 0, "precision": 30},
    })
    write("negative/corrupted.json", {
        "schema": 1, "name": "S1 x S2 with one orbit sign flipped", "dimension": 3, "truncation": 30,
        "morse": no_crit3, "orbits": [{"k": 1, "sign": 1}, {"k": 1, "sign": -1}], "cover": s1xs2_cover,
    })
    write("negative/nonacyclic.json", {
        "schema": 1, "name": "Morse complex with zero differential", "dimension": 3, "truncation": 30,
        "morse": dead_morse, "orbits": [], "cover": double_cover,
    })
    write("negative/bad_key.json", {"schema": 1, "name": "unknown key", "orbits": [], "extra": 1})


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else None)
