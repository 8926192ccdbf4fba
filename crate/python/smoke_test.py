#!/usr/bin/env python3
"""Smoke test for the conespec_py extension module.

Builds nothing itself: expects `cargo build -p conespec-py` (debug or
release) to have produced libconespec_py.so, which it copies next to a
temp dir as an importable module. Run from anywhere:

    cargo build -p conespec-py --release
    python3 python/smoke_test.py
"""

import math
import os
import shutil
import sys
import tempfile

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def import_extension():
    candidates = [
        os.path.join(REPO, "target", profile, "libconespec_py.so")
        for profile in ("release", "debug")
    ]
    built = [p for p in candidates if os.path.exists(p)]
    if not built:
        sys.exit("libconespec_py.so not found; run `cargo build -p conespec-py` first")
    newest = max(built, key=os.path.getmtime)
    stage = tempfile.mkdtemp(prefix="conespec-py-")
    shutil.copy2(newest, os.path.join(stage, "conespec_py.so"))
    sys.path.insert(0, stage)
    import conespec_py

    return conespec_py


checks = 0


def check(label, ok, detail=""):
    global checks
    checks += 1
    if not ok:
        sys.exit(f"FAIL {label}: {detail}")
    print(f"ok {label}" + (f" ({detail})" if detail else ""))


def main():
    cs = import_extension()

    # Catalog and model construction.
    names = [row["name"] for row in cs.catalog()]
    check("catalog lists round-sphere", "round-sphere" in names, ", ".join(names))
    sphere = cs.Model.from_catalog("round-sphere")
    check("catalog model shape", sphere.n == 3 and sphere.is_closed_spindle())

    spindle = cs.Model.closed_spindle(n=4, ell=2.0)
    check("closed_spindle defaults to the round section", spindle.cap_count == 2)
    cone = cs.Model.finite_cone(n=3, ell=0.0, rho=1.0, section_radius=2.0)
    check("finite_cone builds", cone.cap_count == 1 and not cone.is_closed_spindle())

    # Model file round trip through text and disk.
    text = cone.to_text()
    reparsed = cs.Model.parse(text)
    check("model text round trip", reparsed.to_text() == text)
    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "cone.model")
        cone.save(path)
        check("model file round trip", cs.Model.load(path).to_text() == text)

    # Eigenvalue vs closed-form bound on the round sphere: lambda1 = n*ell.
    gap = cs.lambda1(sphere, cells=1200)
    check(
        "round-sphere lambda1 is n*ell",
        abs(gap["lambda1"] - 3.0) < 3e-3,
        f"lambda1 = {gap['lambda1']:.6f}",
    )
    bound = cs.gap_bound(n=3, k=2.0, kappa=1.0, ell=1.0)
    check(
        "round-sphere bound is sharp",
        abs(bound["bound"] - 3.0) < 1e-12,
        f"bound = {bound['bound']}",
    )
    report = cs.verify(sphere, cells=1200)
    check("verify chain passes", report["verdict"] == "pass", str(report["verdict"]))

    multi = cs.gap_bound_multi(3, 2.0, [(1.0, math.pi / 2, 1.0), (1.0, math.pi / 2, 1.0)])
    check(
        "two equal caps match the single-cap bound",
        abs(multi["bound"] - bound["bound"]) < 1e-12,
    )
    check("hardy-route bound is finite", cs.gap_bound_hardy(3, 2.0, [1.0], False) > 0.0)

    # Hardy form nonnegativity and the best constant.
    hardy = cs.hardy_check(cone, modes=4, cells=1500)
    check(
        "hardy form nonnegative on the flat cone",
        hardy["pass"] and hardy["binding_mode"] == 0,
        f"min_eig = {hardy['min_eig']:.3e}",
    )
    c = cs.best_constant(n=3, cells=6000, depth=1e-18)
    check(
        "best constant near (n-2)^2/4",
        c >= 0.25 - 1e-9 and abs(c - 0.25) < 0.02,
        f"estimate = {c:.6f}",
    )

    # Thresholds and admissibility.
    thr = cs.taming_thresholds(3)
    check(
        "taming radii hit their radicals",
        abs(thr["sharp"] - math.sqrt(8.0 / 5.0)) < 1e-12
        and abs(thr["natural"] - math.sqrt(8.0 / 6.0)) < 1e-12
        and abs(thr["flat"] - math.sqrt(8.0 / 7.0)) < 1e-12,
    )
    radii = {row["name"]: row["radius"] for row in cs.taming_radii()}
    check(
        "catalog taming radii agree with the estimates route",
        all(abs(radii[k] - thr[k]) < 1e-15 for k in ("sharp", "natural", "flat")),
    )
    verdict = cs.admissibility(3, 1.0, 2.0)
    check(
        "round section is admissible at the exact threshold",
        verdict["admissible"] and verdict["threshold"] == 0.625 and verdict["ketterer_ok"],
    )

    # Scalar kernel spot checks.
    check("sin_ell at ell=1 is sin", abs(cs.sin_ell(1.0, 0.7) - math.sin(0.7)) < 1e-15)
    check("comparison radius", abs(cs.comparison_radius(4.0) - math.pi / 4) < 1e-15)
    g = cs.tan_gap(0.5, 2.0, 1e-6)
    check("tan_gap stays in its band", 0.0 <= g <= (2.0 / 3.0) * 1.5, f"gap = {g:.6f}")

    # Curvature bounds: two routes and the worked weighted examples.
    warped = cs.ricci_bound_warped(
        3, cs.sin_ell(1.0, 0.4), cs.cos_ell(1.0, 0.4), -cs.sin_ell(1.0, 0.4), 1.0, 0.4
    )
    check(
        "cone and warped Ricci routes agree",
        abs(cs.ricci_bound_cone(3, 1.0, 1.0, 0.4) - warped) < 1e-10,
    )
    check(
        "weighted-space bound at the worked point",
        abs(cs.weighted_space_bound(4, 2.0, 1.0) + 2.0) < 1e-12,
    )
    check(
        "grushin riemannian example",
        abs(cs.grushin_bound(3, 1, 0.5, 2.0, "riemannian") + 0.125) < 1e-12,
    )
    gr = cs.grushin_admissibility(3, 2, 1.0)
    check("grushin admissibility agrees with recomputation", gr["discrepancy"] < 1e-12)

    # Pointwise matrix inequality: equality case and a quick fuzz run.
    eye = [[1.0, 0.0], [0.0, 1.0]]
    slack = cs.be1_slack(2.0, [0.3, -0.4], [[0.7, 0.0], [0.0, 0.7]], eye, 1.0)
    check("be1 equality case", abs(slack) < 1e-10, f"slack = {slack:.3e}")
    fuzz = cs.bochner_fuzz(count=2000, max_dim=5, seed=42)
    check(
        "fuzz finds no failures but a hypothesis violation",
        fuzz["fuzz"]["be1_failures"] == 0
        and fuzz["fuzz"]["lemma_failures"] == 0
        and fuzz["violation"]["found"],
        f"min slack = {fuzz['fuzz']['min_be1_slack_normalized']:.3e}",
    )

    # Error mapping.
    try:
        cs.Model.from_catalog("no-such-model")
        sys.exit("FAIL error mapping: expected ValueError")
    except ValueError as e:
        check("unknown catalog name raises ValueError", "round-sphere" in str(e))
    try:
        cs.gap_bound(n=3, k=2.0, kappa=0.5, ell=1.0)
        sys.exit("FAIL error mapping: expected ValueError for inadmissible kappa")
    except ValueError:
        check("inadmissible kappa raises ValueError", True)

    print(f"smoke test passed ({checks} checks)")


if __name__ == "__main__":
    main()
