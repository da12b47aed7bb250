"""Smoke test for the derivk extension module.

Build and install first:
    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/derivk-*.whl
"""

import json

import derivk


def main():
    r = derivk.Ring("fp-eps", 2)
    k = r.residue_field()
    assert k.is_field() and not r.is_field()
    assert derivk.Module(r, 2, 1).stable_hom_dim(derivk.Module(r, 0, 3)) == 3

    rep = derivk.QuiverRep(k, [1, 2, 1], [[[1], [1]], [[1, 1]]])
    assert rep.decompose() == [(0, 1), (1, 2)]

    assert derivk.ext_table(2, 1) == [[0, 0, 1], [0, 0, 0], [0, 0, 0]]

    for cert in (derivk.verify_iso1(r, 2), derivk.verify_iso2(r, 1), derivk.independence(2, 1)):
        assert cert.passed, cert.witnesses
        assert list(json.loads(cert.to_json())) == sorted(json.loads(cert.to_json()))

    code, out = derivk.run(["check-simplicial", "--max-level", "3"])
    assert code == 0, out
    print("derivk smoke test ok")


if __name__ == "__main__":
    main()
