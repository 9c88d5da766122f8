"""Smoke test for the pybuffon extension module."""

import math

import pybuffon


def main():
    ico = pybuffon.Polyhedron.from_seed("icosahedron")
    groups = ico.spectrum()
    assert [m for _, m, _ in groups] == [1, 3, 5, 3], groups
    assert abs(groups[1][0] - (5 + math.sqrt(5)) / 10) < 1e-12
    assert groups[1][2] == "(5+√5)/10"

    buffon_ico = ico.realize(2)
    report = buffon_ico.shape_report(reference=ico)
    assert report["convex"] and report["affine_match_residual"] < 1e-8, report

    pentakis = pybuffon.Polyhedron.from_seed("dodecahedron", ["kis"])
    ratios = pentakis.realize(2).pyramid_ratios()
    want = 1 - (math.sqrt(5) + math.sqrt(29 + 48 / math.sqrt(5))) / 12
    assert max(abs(r - want) for r in ratios) < 1e-6
    assert pentakis.automorphism_order() == 120

    limit, collapse_dim, _ = pybuffon.Polyhedron.from_seed("prism(6)").iterate(rng_seed=1)
    assert collapse_dim == 2

    off = ico.to_off()
    again = pybuffon.Polyhedron.from_off(off)
    assert again.coords == ico.coords and again.faces == ico.faces

    spec = pybuffon.polygon_spectrum(4)
    assert abs(spec[1] - complex(0.5, 0.5)) < 1e-15
    cos, sin = pybuffon.polygram_eigenspace(5, 2)
    assert len(cos) == len(sin) == 5

    try:
        pybuffon.Polyhedron.from_off("OFF\n1 1 0\n")
    except pybuffon.BuffonError as e:
        assert "ParseError" in str(e)
    else:
        raise AssertionError("expected a parse error")

    print("pybuffon smoke test passed:", ico, pentakis)


if __name__ == "__main__":
    main()
