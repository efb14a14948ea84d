"""Smoke test for the extalg Python module.

Build first:  maturin develop -m crates/python/Cargo.toml
"""

import json

import jsonschema

import extalg


def main():
    schema = json.loads(extalg.REPORT_SCHEMA)

    r = extalg.QuotientRing(["x", "y"], ["x^4", "x^3*y", "x^2*y^2", "x*y^3", "y^4"], max_p=5, max_deg=14)
    assert r.almost_linear() == (4, [5, 4])
    assert r.hilbert_series(5) == [1, 2, 3, 4, 0, 0]

    report = json.loads(r.verify())
    jsonschema.validate(report, schema)
    assert report["status"] == "proved (d≥4)"
    assert report["diff"]["mismatched"] == []

    mixed = extalg.QuotientRing(["x", "y"], ["x^4", "y^5"])
    assert mixed.almost_linear() is None
    rep = json.loads(mixed.verify())
    jsonschema.validate(rep, schema)
    assert rep["outcome"]["kind"] == "not_almost_linear"

    entries = extalg.predict([1, 1], [1], 4, max_p=6, max_deg=14)
    assert [(p, s) for p, s, _ in entries] == [(0, 0), (1, 1), (2, 4), (3, 5), (4, 8), (5, 9), (6, 12)]
    assert extalg.classify(entries) == "alternating(4)"
    assert extalg.congruence_ok(entries, 4)

    assert extalg.koszul_dual_dims([1, 3, 6, 10, 15], 4) == [1, 3, 3, 1, 0]
    assert extalg.en_betti(4, 5) == [5, 4]

    ex = json.loads(extalg.example("power", 4, 1, max_p=4))
    jsonschema.validate(ex, schema)
    assert ex["closed_form"]["matches_oracle"] is True

    try:
        extalg.QuotientRing(["x"], ["x^2 + z"])
    except ValueError as e:
        assert "z" in str(e)
    else:
        raise AssertionError("unknown variable accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
