"""Acceptance suite: the quantitative behavior the package is built to
reproduce, one pass/fail line per criterion (run with ``pytest -s tests/test_acceptance.py``
to see them).

Known red: criterion 8b asserts end-pair concurrence >= 0.90 for the
alternating-hopping chain at L=8, U=0, tau_b=5; the fully converged value is
0.8903 in either RDM convention (the curve crosses 0.90 only near
tau_b ~= 5.7), so the threshold as stated cannot be met.  It is asserted
faithfully anyway; the README documents the analysis.
"""

import numpy as np
import pytest

from hubbardlde.eigensolver import ground_state
from hubbardlde.entanglement import concurrence_lower_bound
from hubbardlde.hamiltonian import build_uniform
from hubbardlde.rdm import superselection_mask, two_site_rdm
from hubbardlde.sweep import SweepConfig, run_sweep
from hubbardlde.teleport import (
    bell_family,
    channel_output,
    circuit_oracle,
    hubbard_family,
    weyl_operator,
)

from conftest import random_density, random_pure

DELTA_GRID = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99)
U_GRID = tuple(float(u) for u in range(9))


def report(criterion, ok, detail):
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'}  ({detail})")
    assert ok, f"criterion {criterion}: {detail}"


def delta_sweep(L_values, U, family, grid=DELTA_GRID):
    config = SweepConfig(
        model="alt-bonds", L_values=tuple(L_values), U_values=(U,),
        sweep="delta", grid=grid, family=family, jobs=1,
    )
    rows = run_sweep(config)
    out = {}
    for row in rows:
        assert row.status.startswith("ok"), row.status
        out.setdefault(row.L, []).append(row)
    return out


@pytest.fixture(scope="module")
def bell_delta_rows():
    """alt-bonds, U=0, Bell family, delta grid, L in {4, 6, 8}."""
    return delta_sweep((4, 6, 8), 0.0, "bell")


def test_criterion_01_two_site_analytic_energies():
    worst = 0.0
    for U in (0.0, 1.0, 4.0, 8.0):
        res = ground_state(build_uniform(2, U, (1, 1)))
        exact = (U - np.sqrt(U * U + 16.0)) / 2.0
        worst = max(worst, abs(res.energy - exact))
    report("01 two-site analytic energies", worst < 1e-10, f"max |dE| = {worst:.2e}")


def test_criterion_02_uniform_chain_concurrence():
    config = SweepConfig(model="uniform", L_values=(4, 6, 8), sweep="U",
                         grid=U_GRID, family="bell", jobs=1)
    by_L = {}
    for row in run_sweep(config):
        assert row.status == "ok", row.status
        by_L.setdefault(row.L, []).append(row.concurrence_lb)
    ok4 = max(by_L[4]) > 0.02
    ok68 = max(by_L[6]) < 0.02 and max(by_L[8]) < 0.02
    report("02 uniform-chain end concurrence", ok4 and ok68,
           f"max C: L4={max(by_L[4]):.4f}, L6={max(by_L[6]):.2e}, L8={max(by_L[8]):.2e}")


def test_criterion_03_bond_alternation_concurrence(bell_delta_rows):
    c8 = [row.concurrence_lb for row in bell_delta_rows[8]]
    saturated = c8[-1] >= 0.90
    threshold_idx = next(i for i, c in enumerate(c8) if c > 0.02)
    monotone = all(b - a > -1e-9 for a, b in zip(c8[threshold_idx:], c8[threshold_idx + 1:]))
    c6 = {}
    for delta in (0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35):
        rows = delta_sweep((6,), 0.0, "bell", grid=(delta,))
        c6[delta] = rows[6][0].concurrence_lb
    delta_t = next(d for d in sorted(c6) if c6[d] > 0.02)
    ok = saturated and monotone and 0.1 <= delta_t <= 0.3
    report("03 bond-alternation concurrence", ok,
           f"C(0.99)={c8[-1]:.4f}, monotone={monotone}, delta_T(L=6)={delta_t}")


def test_criterion_04_interacting_chain_saturates_at_singlet_value():
    rows = delta_sweep((10,), 8.0, "bell", grid=(0.99,))
    row = rows[10][0]
    ok = abs(row.concurrence_lb - 0.816) <= 0.05
    report("04 L=10 U=8 singlet saturation", ok,
           f"C = {row.concurrence_lb:.4f} (degenerate={row.degenerate})")


def test_criterion_05_halffill_probability(bell_delta_rows):
    p = [row.p_halffill for row in bell_delta_rows[8]]
    monotone = all(b - a > -1e-9 for a, b in zip(p, p[1:]))
    ok = monotone and p[-1] > 0.95
    report("05 half-filled-state probability", ok, f"P(0.99) = {p[-1]:.4f}, monotone = {monotone}")


def test_criterion_06_bell_fidelity(bell_delta_rows):
    f8 = [row.fidelity for row in bell_delta_rows[8]]
    at_saturation = abs(f8[-1] - 0.50) <= 0.05
    crossings = {}
    for L in (4, 6, 8):
        crossings[L] = any(
            row.fidelity > row.classical_threshold
            for row in bell_delta_rows[L]
            if row.delta < 0.9
        )
    ok = at_saturation and all(crossings.values())
    report("06 Bell-projector fidelity", ok,
           f"F(0.99) = {f8[-1]:.4f}, threshold crossings below 0.9: {crossings}")


def test_criterion_07_hubbard_projector_fidelity():
    rows = delta_sweep((8,), 0.0, "hubbard-adaptive", grid=(0.99,))
    f = rows[8][0].fidelity
    report("07 Hubbard-projector fidelity", f >= 0.95, f"F = {f:.4f}")


def tau_point(U, tau_b):
    config = SweepConfig(model="alt-hopping", L_values=(8,), U_values=(U,),
                         sweep="tau_b", grid=(tau_b,), family="bell", jobs=1)
    row = run_sweep(config)[0]
    assert row.status == "ok", row.status
    return row.concurrence_lb


def test_criterion_08a_weak_internal_bonds_give_no_entanglement():
    c = tau_point(0.0, 0.5)
    report("08a tau_b=0.5 concurrence", c < 0.02, f"C = {c:.2e}")


def test_criterion_08b_strong_internal_bonds_free_case():
    c = tau_point(0.0, 5.0)
    # Documented spec defect: the converged, convention-independent value is
    # 0.8903 (it crosses 0.90 only near tau_b ~= 5.7).  Asserted as stated.
    report("08b tau_b=5 concurrence (U=0)", c >= 0.90, f"C = {c:.4f}")


def test_criterion_08c_strong_internal_bonds_interacting_case():
    c = tau_point(8.0, 5.0)
    report("08c tau_b=5 concurrence (U=8)", abs(c - 0.816) <= 0.05, f"C = {c:.4f}")


def test_criterion_09_channel_identity(rng):
    worst = 1.0
    for family in (bell_family(4), hubbard_family("fixed")):
        chi = np.outer(family.base_state, family.base_state.conj())
        for _ in range(50):
            v = random_pure(rng, 4)
            res = channel_output(chi, np.outer(v, v.conj()), family)
            worst = min(worst, res.fidelity)
    report("09 channel identity", worst >= 1.0 - 1e-10, f"min fidelity = {worst:.12f}")


def test_criterion_10_circuit_oracle_equivalence(rng):
    worst = 0.0
    for trial in range(20):
        chi = random_density(rng, 16)
        rho_in = random_density(rng, 4)
        kind = ("bell", "fixed", "adaptive")[trial % 3]
        if kind == "bell":
            fam = bell_family(4)
        elif kind == "fixed":
            fam = hubbard_family("fixed")
        else:
            fam = hubbard_family("adaptive", rho_resource=chi)
        diff = np.abs(channel_output(chi, rho_in, fam).output - circuit_oracle(chi, rho_in, fam)).max()
        worst = max(worst, diff)
    report("10 circuit-oracle equivalence", worst < 1e-10, f"max deviation = {worst:.2e}")


def test_criterion_11_property_suite(rng):
    checks = {}

    for name, fam in (("bell", bell_family(4)), ("hubbard", hubbard_family("fixed"))):
        complete = fam.completeness_defect() < 1e-12
        orth = all(
            abs(np.trace(fam.projectors[a] @ fam.projectors[b]).real - (a == b)) < 1e-12
            for a in range(16) for b in range(16)
        )
        checks[f"family-{name}"] = complete and orth

    mask = superselection_mask()
    rdm_ok = True
    for L, U, delta in ((4, 0.0, 0.5), (6, 4.0, 0.7), (6, 8.0, 0.3)):
        config = SweepConfig(model="alt-bonds", L_values=(L,), U_values=(U,),
                             sweep="delta", grid=(delta,), jobs=1)
        from hubbardlde.hamiltonian import ModelSpec, build_hamiltonian

        H = build_hamiltonian(ModelSpec("alt-bonds", L, U, delta=delta))
        rho = two_site_rdm(ground_state(H), H.basis, 1, L).matrix
        rdm_ok &= np.abs(rho - rho.conj().T).max() < 1e-12
        rdm_ok &= abs(np.trace(rho).real - 1.0) < 1e-12
        rdm_ok &= np.linalg.eigvalsh(rho).min() > -1e-10
        rdm_ok &= np.abs(rho[~mask]).max() < 1e-12
    checks["rdm-axioms"] = bool(rdm_ok)

    bound_ok = True
    for _ in range(100):
        v = random_pure(rng, 16)
        rho_a = v.reshape(4, 4) @ v.reshape(4, 4).conj().T
        c2 = 2.0 * (1.0 - float(np.trace(rho_a @ rho_a).real))
        bound_ok &= concurrence_lower_bound(np.outer(v, v.conj())).tau2 <= c2 + 1e-10
    checks["bound<=exact"] = bool(bound_ok)

    weyl_ok = True
    for d in (2, 3, 4, 5):
        for n in range(d):
            for m in range(d):
                U1 = weyl_operator(d, n, m)
                weyl_ok &= np.abs(U1 @ U1.conj().T - np.eye(d)).max() < 1e-12
                for n2 in range(d):
                    for m2 in range(d):
                        tr = np.trace(U1.conj().T @ weyl_operator(d, n2, m2))
                        weyl_ok &= abs(tr - d * ((n, m) == (n2, m2))) < 1e-12
    checks["weyl"] = bool(weyl_ok)

    report("11 property suite", all(checks.values()), str(checks))


def test_criterion_12_input_state_dependence():
    grid = tuple(np.linspace(0.0, 4.0, 17))
    config = SweepConfig(model="uniform", L_values=(4,), U_values=(0.0,),
                         sweep="alpha0", grid=grid, family="bell", jobs=1)
    rows = run_sweep(config)
    f = np.array([row.fidelity for row in rows])
    peak = int(np.argmax(f))
    interior_max_near_one = 0.5 <= grid[peak] <= 1.5
    tail = f[grid.index(1.5):]
    decays = all(b - a < 1e-9 for a, b in zip(tail, tail[1:])) and f[-1] < f[peak]
    report("12 input-state dependence", interior_max_near_one and decays,
           f"argmax at alpha0 = {grid[peak]:.2f}, F(max) = {f[peak]:.4f}, F(4) = {f[-1]:.4f}")
