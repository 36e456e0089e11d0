"""Acceptance gate: one test per top-level criterion, one printed verdict each.

Each test collects every sub-assertion failure before printing its verdict, so
a run shows the full health of a criterion rather than its first defect.
"""

import csv
import math
import time

import numpy as np
import pytest

import wellspec as ws
from wellspec.cli import main
from wellspec.oracle import extrapolated_oracle_spectrum


def _verdict(capsys, label, failures):
    with capsys.disabled():
        print(f"[{'FAIL' if failures else 'PASS'}] {label}")
    assert not failures, "\n".join(failures)


def _check(failures, ok, msg):
    if not ok:
        failures.append(msg)


def test_criterion_1_ground_state_sweep(tmp_path, capsys):
    """Ground-state energy across positions: minima, anchors, endpoints, runtime."""
    out = tmp_path / "sweep.csv"
    t0 = time.perf_counter()
    rc = main(["sweep-ground", "--f-list", "0.1,0.4,0.5", "--signs", "both",
               "--rho-steps", "199", "--out", str(out)])
    elapsed = time.perf_counter() - t0
    failures = []
    _check(failures, rc == 0, f"sweep exit code {rc}")
    _check(failures, elapsed < 10.0, f"sweep took {elapsed:.1f} s (limit 10 s)")

    data = {}
    with open(out, newline="") as fh:
        for f, sign, rho, e in list(csv.reader(fh))[1:]:
            data.setdefault((float(f), sign), {})[float(rho)] = float(e)

    for f in (0.1, 0.4, 0.5):
        att = data[(f, "attract")]
        rep = data[(f, "repel")]
        _check(failures, min(att, key=att.get) == 0.5, f"f={f}: attraction minimum not at rho=0.5")
        _check(failures, max(rep, key=rep.get) == 0.5, f"f={f}: repulsion maximum not at rho=0.5")
        endpoint = att[0.005]
        target = math.pi**2 * f * f
        _check(failures, abs(endpoint - target) <= 0.02 * target,
               f"f={f}: endpoint {endpoint:.6g} vs pi^2 f^2 = {target:.6g}")
    _check(failures, abs(data[(0.1, "attract")][0.5] + 1.0) <= 5e-3,
           f"f=0.1 minimum {data[(0.1, 'attract')][0.5]:.6g} not within 5e-3 of -1")
    _check(failures, abs(data[(0.5, "attract")][0.5]) <= 1e-8,
           f"f=0.5 at rho=0.5 is {data[(0.5, 'attract')][0.5]:.3g}, expected 0")
    _verdict(capsys, "criterion 1: ground-state sweep (minima, anchors, endpoints, runtime)", failures)


def test_criterion_2_dispersion_and_degeneracy_lifting(tmp_path, capsys):
    """Removable point at kL/pi = 5, shifted nodal floor, and the lifted pair."""
    failures = []

    out = tmp_path / "d25.csv"
    main(["dispersion-curve", "--rho", "2/5", "--kmax", "9", "--samples-per-pi", "40", "--out", str(out)])
    with open(out, newline="") as fh:
        rows = {r[0]: r for r in list(csv.reader(fh))[1:]}
    _check(failures, rows["5"][2] == "0" and rows["5"][1] != "",
           "rho=2/5 curve not finite at kL/pi=5")

    nodal_floor = ws.enumerate_nodal(ws.reduce_position(83, 200), 201.0 * math.pi)
    _check(failures, nodal_floor and round(nodal_floor[0].k / math.pi) == 200,
           "rho=0.415=83/200 lowest nodal value is not kL/pi=200")
    out2 = tmp_path / "d415.csv"
    main(["dispersion-curve", "--rho", "0.415", "--kmax", "9", "--samples-per-pi", "40", "--out", str(out2)])
    with open(out2, newline="") as fh:
        rows2 = {r[0]: r for r in list(csv.reader(fh))[1:]}
    _check(failures, rows2["5"][2] == "1", "rho=0.415 curve should have a genuine pole at kL/pi=5")

    for f, side in ((0.01, 1.0), (-0.01, -1.0)):
        spec = ws.full_spectrum(ws.DimensionlessConfig.exact(2, 5, f), 7.0 * math.pi)
        nod = [s for s in spec.entries if s.kind == ws.NODAL and round(s.k / math.pi) == 5]
        comp = [s for s in spec.entries
                if s.kind == ws.ORDINARY_POSITIVE and abs(s.k / math.pi - 5.0) < 0.5]
        _check(failures, len(nod) == 1, f"f={f}: nodal entry at kL/pi=5 missing")
        _check(failures, len(comp) == 1, f"f={f}: distinct ordinary companion missing")
        if comp:
            _check(failures, side * (comp[0].k / math.pi - 5.0) > 0.0,
                   f"f={f}: companion on the wrong side of kL/pi=5")
            _check(failures, abs(comp[0].k / math.pi - 5.0) <= 0.05,
                   f"f={f}: companion at kL/pi={comp[0].k / math.pi:.4f}, outside 5 +- 0.05")
    _verdict(capsys, "criterion 2: dispersion curve and degeneracy lifting at kL/pi = 5", failures)


ORACLE_CONFIGS = [
    ws.DimensionlessConfig.exact(1, 2, 0.15),
    ws.DimensionlessConfig.exact(2, 5, -0.01),
    ws.DimensionlessConfig.exact(3, 7, 100.0),
    ws.DimensionlessConfig.generic(1.0 / math.sqrt(2.0), -50.0),
    ws.DimensionlessConfig.generic(1.0 / math.pi, 0.25),
    ws.DimensionlessConfig.generic(0.6180339887, 30.0),
]


def test_criterion_3_oracle_equivalence(capsys):
    """Lowest 8 energies vs Richardson-extrapolated sine-basis eigenvalues."""
    failures = []
    t0 = time.perf_counter()
    for cfg in ORACLE_CONFIGS:
        exact = ws.full_spectrum(cfg, 16.0 * math.pi).energies[:8]
        extr = extrapolated_oracle_spectrum(cfg, 8, 2000)
        for i, (e, o) in enumerate(zip(exact, extr)):
            tol = max(1e-6 * abs(e), 1e-4 if abs(e) < 1.0 else 0.0)
            _check(failures, abs(o - e) <= tol,
                   f"rho={cfg.rho:.4f} f={cfg.f}: level {i} exact {e:.9g} oracle {o:.9g}")
    elapsed = time.perf_counter() - t0
    _check(failures, elapsed < 60.0, f"oracle comparison took {elapsed:.1f} s (limit 60 s)")
    _verdict(capsys, "criterion 3: oracle equivalence on 6 configs (8 levels, 1e-6 relative)", failures)


def test_criterion_4_orthonormality(capsys):
    """Gram matrix of the first 12 eigenfunctions is the identity."""
    failures = []
    for cfg in ORACLE_CONFIGS:
        states = ws.full_spectrum(cfg, 30.0 * math.pi).entries[:12]
        waves = [ws.build_wave(s, cfg) for s in states]
        g = ws.gram_matrix(waves)
        off = np.abs(g - np.diag(np.diag(g))).max()
        diag = np.abs(np.diag(g) - 1.0).max()
        _check(failures, off < 1e-9, f"rho={cfg.rho:.4f} f={cfg.f}: max off-diagonal {off:.2e}")
        _check(failures, diag < 1e-12, f"rho={cfg.rho:.4f} f={cfg.f}: max diagonal defect {diag:.2e}")
    _verdict(capsys, "criterion 4: orthonormality of the first 12 eigenfunctions", failures)


def test_criterion_5_matching_conditions(capsys):
    """Continuity and slope-jump defects for every reported eigenstate."""
    failures = []
    for cfg in ORACLE_CONFIGS:
        for s in ws.full_spectrum(cfg, 20.0 * math.pi).entries:
            cont, jump = ws.matching_defect(ws.build_wave(s, cfg), cfg)
            _check(failures, cont < 1e-10,
                   f"rho={cfg.rho:.4f} f={cfg.f} k={s.k:.4f}: continuity defect {cont:.2e}")
            _check(failures, jump < 1e-8,
                   f"rho={cfg.rho:.4f} f={cfg.f} k={s.k:.4f}: jump defect {jump:.2e}")
    _verdict(capsys, "criterion 5: junction matching conditions for all reported states", failures)


def test_criterion_6_limit_laws(capsys):
    """Weak-coupling shifts, strong-coupling ladders, binding-region boundary."""
    failures = []

    # (a) weak coupling: leading-term error within 10% at |f| = 1e4
    rho = 0.321
    for f in (1e4, -1e4):
        cfg = ws.DimensionlessConfig.generic(rho, f)
        roots = [s.k for s in ws.find_ordinary_positive(cfg, 4.0 * math.pi)]
        for n in (1, 2, 3):
            root = min(roots, key=lambda k: abs(k - n * math.pi))
            actual = root - n * math.pi
            lead = ws.weak_coupling_estimate(n, cfg) - n * math.pi
            _check(failures, abs(actual - lead) <= 0.1 * abs(lead),
                   f"weak f={f} N={n}: shift {actual:.3e} vs leading term {lead:.3e}")

    # (b) strong coupling: kappa*f -> 1 and the split-well ladders
    cfg = ws.DimensionlessConfig.generic(1.0 / math.sqrt(2.0), 1e-3)
    neg = ws.find_negative_root(cfg)
    _check(failures, neg is not None and abs(neg.k * 1e-3 - 1.0) < 2e-3,
           "strong: |kappaL*f - 1| >= 2e-3")
    est = ws.strong_coupling_estimates(cfg, 20)
    roots = [s.k for s in ws.find_ordinary_positive(cfg, 3.0 * math.pi)]
    _check(failures, len(roots) >= 2, "strong: expected at least two roots below 3 pi")
    for r in roots:
        dev = min(abs(r - e) for e in est) / math.pi
        _check(failures, dev < 5e-3, f"strong: root kL/pi={r / math.pi:.4f} off ladder by {dev:.2e}")

    # (c) existence of the negative root exactly on the binding region
    for rho_g in np.linspace(0.05, 0.95, 21):
        for f_g in np.linspace(-0.1, 0.6, 21):
            if f_g == 0.0:
                continue
            got = ws.find_negative_root(ws.DimensionlessConfig.generic(float(rho_g), float(f_g))) is not None
            expect = 0.0 < f_g < 2.0 * rho_g * (1.0 - rho_g)
            _check(failures, got == expect,
                   f"existence mismatch at rho={rho_g:.3f} f={f_g:.3f}: got {got}")
    _verdict(capsys, "criterion 6: weak/strong coupling limit laws and binding region", failures)


def test_criterion_7_symmetry_and_interleaving(capsys):
    """Mirror symmetry of the spectrum and kind alternation at the center."""
    failures = []
    rng = np.random.default_rng(2024)
    for _ in range(6):
        rho = float(rng.uniform(0.06, 0.94))
        f = float(rng.choice([0.7, -0.4, 2.5, 0.08, -12.0]))
        e1 = ws.full_spectrum(ws.DimensionlessConfig.generic(rho, f), 8.0 * math.pi).energies
        e2 = ws.full_spectrum(ws.DimensionlessConfig.generic(1.0 - rho, f), 8.0 * math.pi).energies
        _check(failures, len(e1) == len(e2), f"rho={rho:.4f} f={f}: spectra differ in length")
        for a, b in zip(e1, e2):
            _check(failures, abs(a - b) <= 1e-10 * max(1.0, abs(a)),
                   f"rho={rho:.4f} f={f}: {a:.12g} vs mirrored {b:.12g}")

    spec = ws.full_spectrum(ws.DimensionlessConfig.exact(1, 2, -0.2), 12.0 * math.pi)
    kinds = [s.kind for s in spec.entries[:10]]
    _check(failures, len(kinds) == 10, "fewer than 10 entries below the ceiling")
    for a, b in zip(kinds, kinds[1:]):
        _check(failures, a != b, f"kinds do not alternate: {kinds}")
    _verdict(capsys, "criterion 7: mirror symmetry and nodal/ordinary interleaving", failures)
