#!/usr/bin/env python3
"""Smoke test for the wpl_py extension module.

Builds nothing itself: looks for the compiled cdylib under target/ (debug or
release), copies it next to a temp dir as an importable module, and runs a
few end-to-end checks.

    cargo build -p wpl-py          # or --release
    python3 python/smoke_test.py
"""

import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def locate_cdylib():
    names = ["libwpl_py.so", "libwpl_py.dylib", "wpl_py.dll"]
    candidates = []
    for profile in ("release", "debug"):
        for name in names:
            p = ROOT / "target" / profile / name
            if p.exists():
                candidates.append(p)
    if not candidates:
        sys.exit("no built wpl_py library found; run `cargo build -p wpl-py` first")
    return max(candidates, key=lambda p: p.stat().st_mtime)


def main():
    lib = locate_cdylib()
    tmp = tempfile.mkdtemp(prefix="wpl-py-")
    suffix = ".so" if lib.suffix != ".dll" else ".pyd"
    shutil.copy(lib, pathlib.Path(tmp) / f"wpl_py{suffix}")
    sys.path.insert(0, tmp)
    import wpl_py

    m = wpl_py.Model(3)

    # Picard arithmetic: omega + x1 + x2 + x3 = c, and omega is not effective
    omega = m.omega()
    x1, x2, x3 = m.element(1, 0, 0, 0), m.element(0, 1, 0, 0), m.element(0, 0, 1, 0)
    assert omega + x1 + x2 + x3 == m.canonical()
    assert omega.coords() == (1, 1, 2, -2)
    assert not omega.is_effective() and omega.dim_r() == 0
    assert m.canonical().dim_r() == 2

    # classification round trip
    e = m.classify("[0,1]")
    assert e.is_ext() and e.rank() == 2
    seg = e.segment()
    assert (seg.i, seg.j, seg.marker) == (0, 1, "full")
    o = m.classify("[0,0]-")
    assert o.is_line() and o.slope() == (0, 1)

    # the almost-split floor and self-ext vanishing
    assert wpl_py.ext_dim(e, e) == 0
    assert wpl_py.ext_dim(e, e.tau()) >= 1
    assert wpl_py.hom_dim(e, e) == 1

    # the two Ext oracles agree on a small window
    for i in range(-3, 4):
        for j in range(-3, 4):
            try:
                a = m.segment(i, j)
            except ValueError:
                a = m.segment(i, j, "+")
            for s in range(-3, 4):
                for t in range(-3, 4):
                    try:
                        b = m.segment(s, t)
                    except ValueError:
                        b = m.segment(s, t, "-")
                    x, y = m.phi_hat(a), m.phi_hat(b)
                    assert wpl_py.ext_dim(x, y) == wpl_py.ext_dim_algebraic(x, y), (
                        f"oracle mismatch at {i},{j} vs {s},{t}"
                    )

    # duality swaps segment endpoints under the default base
    d = e.dual()
    assert (d.segment().i, d.segment().j) == (1, 0)
    assert d.dual() == e

    # cover: four line bundles over a rank-2 kernel
    summands, kernel = wpl_py.cover(e)
    assert len(summands) == 4 and all(b.is_line() for b in summands)
    assert kernel.rank() == 2

    # a quick sweep through the suite runner
    checked, counterexamples = wpl_py.verify("identifications", [2, 3], "1n")
    assert checked > 0 and not counterexamples

    print(f"smoke test passed ({lib.relative_to(ROOT)})")


if __name__ == "__main__":
    main()
