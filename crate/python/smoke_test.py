"""Smoke test for the pynilcert extension module.

Build and run from the repository root:

    cargo build --release -p nilcert-python --features extension-module
    cp target/release/libpynilcert.so python/pynilcert.so
    python3 python/smoke_test.py
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

import pynilcert  # noqa: E402

WITNESS = """\
witness A_23 -> A_24
E_1 = t e_1 + e_2
E_2 = 2t e_3
E_3 = 2t e_2
E_4 = e_4
E_5 = e_5
end
"""


def main():
    names = pynilcert.catalog_names()
    assert len(names) == 25 and names[0] == "A_01" and names[-1] == "C5", names

    rigid = pynilcert.Algebra.from_catalog("A_01")
    dim, basis = rigid.derivations()
    assert dim == 5 and len(basis) == 5
    assert rigid.fingerprint()["dim_der"] == 5

    moved = rigid.conjugate(7)
    assert moved != rigid
    assert moved.identify() == ["A_01"]
    assert pynilcert.Algebra.parse(rigid.to_text()) == rigid

    zero = pynilcert.Algebra.parse("algebra Z\ndim 5\n")
    assert zero.identify() == ["C5"] and zero.constants() == []

    try:
        pynilcert.Algebra.parse("dim 5\ne_1 e_1 = (\n")
    except ValueError:
        pass
    else:
        raise AssertionError("parse error not raised")

    (verdict,) = pynilcert.verify_witnesses(WITNESS)
    assert verdict["status"] == "VERIFIED", verdict
    (bad,) = pynilcert.verify_witnesses(WITNESS.replace("2t e_3", "3t e_3"))
    assert bad["status"] == "LIMIT_MISMATCH"

    hasse = json.loads(pynilcert.graph(emit="json", form="hasse"))
    assert len(hasse["edges"]) == 42
    assert pynilcert.graph().startswith("digraph")

    print("pynilcert smoke test passed")


if __name__ == "__main__":
    main()
