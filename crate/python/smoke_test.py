"""Exercise the Python bindings against the fixture corpus.

Run after `pip install --no-build-isolation -e crates/python`.
"""

import json
import pathlib
import sys

import gradecat

FIX = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def cat(name):
    return gradecat.Category.from_file(FIX / f"{name}.json")


def grading(c, name):
    return gradecat.Grading.from_file(c, FIX / f"{name}.json")


def main():
    # round trip is a fixed point on the corpus
    e4 = cat("e4")
    assert e4.to_json() == (FIX / "e4.json").read_text()
    assert e4.objects == ["u", "v"]
    assert e4.validate() == []

    gz = grading(e4, "e4_gZ")
    assert gz.is_valid() and gz.is_connected()
    wg = gz.walk_group()
    assert wg["subgroup"]["free_rank"] == 1 and wg["subgroup"]["is_whole"]

    # trivial extension: E4 extends, E3 does not
    e4u = grading(cat("e4_u"), "e4_u_gZ")
    report, ext = e4u.extend_trivial(e4, ["u"])
    assert report["status"] == "extended" and ext.is_valid()
    e3 = cat("e3")
    report, ext = grading(cat("e3_u"), "e3_u_gC2").extend_trivial(e3, ["u"])
    assert report["status"] == "invalid" and ext is None
    v = report["violations"][0]
    assert (v["f"], v["g"]) == ("t", "f")

    # convexity witness
    assert cat("a3").is_convex(["x", "z"])["witness"] == {"f": "a", "g": "b"}

    # smash products and the Galois property
    kc3 = cat("kc3")
    g3 = grading(kc3, "kc3_gZ3")
    assert len(g3.smash().objects) == 3
    assert g3.verify_galois()["galois"]

    # base component of a disconnected grading
    kr = cat("kronecker")
    fam, comp = grading(kr, "kronecker_g02").base_component("a")
    assert comp.is_connected("a")

    # covering morphisms between Kronecker gradings
    m = gradecat.find_morphism(grading(kr, "kronecker_g01"), grading(kr, "kronecker_g10"))
    assert m is not None and not m["mu"]["identity"]

    # relative fundamental groups and kappa
    lim = gradecat.Diagram.from_file(FIX / "kc2_diagram.json").pi1()
    assert lim["invariant_factors"]["display"] == "Z x Z/2"
    big = gradecat.Diagram.from_file(FIX / "e4_diagram.json")
    small = gradecat.Diagram.from_file(FIX / "e4_u_diagram.json")
    k = big.kappa(["u"], small)
    assert k["injective"] is True

    # errors
    try:
        cat("malformed")
    except gradecat.GradecatError as e:
        assert "/identity/u/0/1" in str(e)
    else:
        raise AssertionError("malformed category accepted")
    try:
        gradecat.Category.from_file(FIX / "missing.json")
    except OSError:
        pass
    else:
        raise AssertionError("missing file accepted")

    print(json.dumps({"smoke_test": "ok", "pi1_kc2": lim["invariant_factors"]["display"]}))
    return 0


if __name__ == "__main__":
    sys.exit(main())
