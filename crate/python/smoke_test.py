"""Smoke test for the qpforge_py extension.

Build with `cargo build --release -p qpforge-py`, then run from the repository root:
    python3 python/smoke_test.py
The script copies target/release/libqpforge_py.so next to itself as qpforge_py.so if needed.
"""

import pathlib
import shutil
import sys

HERE = pathlib.Path(__file__).resolve().parent
ROOT = HERE.parent


def load():
    target = HERE / "qpforge_py.so"
    built = ROOT / "target" / "release" / "libqpforge_py.so"
    if built.exists() and (not target.exists() or built.stat().st_mtime > target.stat().st_mtime):
        shutil.copy(built, target)
    sys.path.insert(0, str(HERE))
    import qpforge_py

    return qpforge_py


def main():
    qf = load()
    assert qf.cases() == ["333", "2222", "442", "632"]
    assert "f13" in qf.figures()

    qp = qf.QP.case("2222", "2")
    assert (qp.vertex_count, qp.arrow_count, qp.term_count) == (6, 12, 8)
    a = qp.jacobian()
    assert a.dimension == 36
    assert sum(map(sum, a.projectives())) == 36

    h1 = qf.Algebra.figure("f1").forms().radical_generator()
    assert h1 == [1, 1, 1, 1, 1], h1
    f13 = qf.Algebra.figure("f13").forms()
    assert f13.corank == 2 and f13.non_negative

    qp442 = qf.QP.case("442")
    assert qp442.mutate([1, 1]).same_fingerprint(qp442)
    assert qf.QP.parse(qp442.mutate([2]).to_text()).mutate([2]).same_fingerprint(qp442)
    assert qp442.probe(depth=3, trials=5)["failures"] == []

    cover = qf.QP.case("333").cover(3)
    assert all(c["status"] == "pass" for c in cover["checks"])

    try:
        qf.QP.case("2222", "1")
    except qf.QpforgeError as e:
        assert "not allowed" in str(e)
    else:
        raise AssertionError("lambda = 1 accepted")

    ok, report = qf.verify("632", trials=5)
    assert ok, report
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
