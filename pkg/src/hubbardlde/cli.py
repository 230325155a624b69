"""Command-line driver.

Subcommands
-----------
sweep-delta   bond-alternation sweeps of the alt-bonds chain
sweep-u       interaction sweeps at fixed geometry
sweep-tau     hopping-alternation sweeps of the alt-hopping chain
sweep-alpha   input-state sweeps alpha0 in (alpha0,1,1,1)/norm
point         single evaluation, prints every metric
selftest      dense-oracle and circuit-equivalence checks

Sweeps write UTF-8 CSV: a '#schema=1' comment line, a header naming the
columns in ResultRow order, then one row per grid point with floats printed to
12 significant digits.  Identical configs produce byte-identical files.  The
optional RDM dump (point --dump-rdm) is a 16x16 row-major text matrix, one row
per line, entries "re,im" separated by spaces, pair basis |a>|b> with
a,b in {0:empty, 1:up, 2:down, 3:double} and index 4*a+b.
"""

import argparse
import json
import sys
from dataclasses import fields

import numpy as np

from . import __version__
from .errors import DomainError
from .eigensolver import dense_spectrum, ground_state, sector_scan
from .hamiltonian import ALT_BONDS, ALT_HOPPING, UNIFORM, VARIANTS, ModelSpec, build_hamiltonian
from .oracle import dense_ground_state, dense_partial_trace, qudit_ground_state, qudit_pair_rdm
from .rdm import two_site_rdm
from .sweep import (
    FAMILIES,
    ResultRow,
    SweepConfig,
    emit_csv,
    evaluate_point,
    linear_grid,
    run_sweep,
)
from .teleport import bell_family, channel_output, circuit_oracle, hubbard_family, make_input_state


def _parse_floats(text):
    return tuple(float(x) for x in text.split(","))


def _parse_ints(text):
    return tuple(int(x) for x in text.split(","))


def _add_common(parser):
    parser.add_argument("--L", type=_parse_ints, default=None, help="chain lengths, e.g. 4,6,8")
    parser.add_argument("--U", type=_parse_floats, default=None, help="interaction values, e.g. 0,4,8")
    parser.add_argument("--alpha", type=_parse_floats, default=None,
                        help="input amplitudes before normalization, e.g. 1,1,1,1")
    parser.add_argument("--family", choices=FAMILIES, default=None)
    parser.add_argument("--sector", type=_parse_ints, default=None, metavar="NUP,NDOWN")
    parser.add_argument("--sites", type=_parse_ints, default=None, metavar="I,J",
                        help="pair to analyze (default: chain ends)")
    parser.add_argument("--out", default=None, help="CSV output path")
    parser.add_argument("--jobs", type=int, default=None,
                        help="worker processes (default: HUBBARDLDE_JOBS or 1)")
    parser.add_argument("--config", default=None, help="JSON file with SweepConfig fields; flags override")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--clamp-eps", type=float, default=None,
                        help="grids must stay this far from the decoupling limits (default 1e-3)")


def _config_from(args, **fixed):
    values = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            loaded = json.load(fh)
        known = {f.name for f in fields(SweepConfig)}
        unknown = set(loaded) - known
        if unknown:
            raise DomainError(f"unknown config keys: {sorted(unknown)}")
        values.update(loaded)
    flag_map = {
        "L": "L_values",
        "U": "U_values",
        "alpha": "alphas",
        "family": "family",
        "sector": "sector",
        "sites": "sites",
        "out": "out",
        "jobs": "jobs",
        "seed": "seed",
        "clamp_eps": "clamp_eps",
    }
    for flag, name in flag_map.items():
        val = getattr(args, flag, None)
        if val is not None:
            values[name] = val
    values.update({k: v for k, v in fixed.items() if v is not None})
    for key in ("L_values", "U_values", "grid", "alphas", "sector", "sites"):
        if key in values and values[key] is not None:
            values[key] = tuple(values[key])
    return SweepConfig(**values)


def _run_and_emit(config):
    rows = run_sweep(config)
    if config.out:
        emit_csv(rows, config.out)
        print(f"wrote {len(rows)} rows to {config.out}")
    else:
        names = [f.name for f in fields(ResultRow)]
        print(",".join(names))
        for row in rows:
            print(",".join(str(getattr(row, n)) for n in names))
    failures = [r for r in rows if r.status.startswith("error")]
    for r in failures:
        print(f"point L={r.L} U={r.U} delta={r.delta} tau_b={r.tau_b}: {r.status}", file=sys.stderr)
    return 1 if failures else 0


def _cmd_sweep_delta(args):
    grid = linear_grid(args.delta_grid) if args.delta_grid else None
    config = _config_from(args, model=ALT_BONDS, sweep="delta", grid=grid)
    return _run_and_emit(config)


def _cmd_sweep_u(args):
    grid = linear_grid(args.u_grid) if args.u_grid else None
    config = _config_from(
        args, model=args.model, sweep="U", grid=grid,
        delta=args.delta, tau_a=args.tau_a, tau_b=args.tau_b,
    )
    return _run_and_emit(config)


def _cmd_sweep_tau(args):
    grid = linear_grid(args.tau_b_grid) if args.tau_b_grid else None
    config = _config_from(args, model=ALT_HOPPING, sweep="tau_b", grid=grid, tau_a=args.tau_a)
    return _run_and_emit(config)


def _cmd_sweep_alpha(args):
    grid = linear_grid(args.alpha0_grid) if args.alpha0_grid else None
    config = _config_from(
        args, model=args.model, sweep="alpha0", grid=grid,
        delta=args.delta, tau_a=args.tau_a, tau_b=args.tau_b,
    )
    return _run_and_emit(config)


def _cmd_point(args):
    config = _config_from(
        args, model=args.model, sweep="U", grid=(args.point_u,),
        delta=args.delta, tau_a=args.tau_a, tau_b=args.tau_b,
    )
    config.validate()
    if len(config.L_values) != 1:
        raise DomainError("point evaluates a single L")
    L = config.L_values[0]
    row = evaluate_point(config, (L, None, args.point_u))
    for f in fields(ResultRow):
        print(f"{f.name} = {getattr(row, f.name)}")
    if args.scan_sectors:
        if L > 6:
            raise DomainError("sector scan is limited to L <= 6")
        model = ModelSpec(config.model, L, args.point_u, delta=config.delta,
                          tau_a=config.tau_a, tau_b=config.tau_b)
        print("sector scan (n_up, n_down) -> E0:")
        for sector, e0 in sector_scan(model):
            print(f"  ({sector[0]},{sector[1]}) -> {e0:.12g}")
    if args.dump_rdm:
        sector = config.sector if config.sector is not None else (L // 2, L // 2)
        sites = config.sites if config.sites is not None else (1, L)
        model = ModelSpec(config.model, L, args.point_u, delta=config.delta,
                          tau_a=config.tau_a, tau_b=config.tau_b)
        H = build_hamiltonian(model, sector)
        gs = ground_state(H, seed=config.seed)
        rho = two_site_rdm(gs, H.basis, *sites)
        with open(args.dump_rdm, "w", encoding="utf-8") as fh:
            fh.write(rho.to_text())
        print(f"rdm written to {args.dump_rdm}")
    return 1 if row.status.startswith("error") else 0


def _check(name, ok, detail=""):
    tag = "ok  " if ok else "FAIL"
    print(f"{tag} {name}" + (f"  ({detail})" if detail and not ok else ""))
    return bool(ok)


def _cmd_selftest(args):
    rng = np.random.default_rng(args.seed if args.seed is not None else 7)
    all_ok = True

    for U in (0.0, 1.0, 4.0, 8.0):
        H = build_hamiltonian(ModelSpec(UNIFORM, 2, U), (1, 1))
        exact = (U - np.sqrt(U * U + 16.0)) / 2.0
        e0 = dense_spectrum(H)[0]
        all_ok &= _check(f"two-site analytic energy U={U:g}", abs(e0 - exact) < 1e-10,
                         f"{e0} vs {exact}")

    cases = [
        ModelSpec(UNIFORM, 4, 4.0),
        ModelSpec(ALT_BONDS, 4, 4.0, delta=0.5),
        ModelSpec(ALT_HOPPING, 4, 4.0, tau_a=1.0, tau_b=2.0),
    ]
    for model in cases:
        dense = dense_ground_state(model)
        e_qudit, amp_qudit = qudit_ground_state(model)
        H = build_hamiltonian(model)
        gs = ground_state(H, seed=0)
        all_ok &= _check(f"sector vs dense oracle energy [{model.variant}]",
                         abs(gs.energy - dense.energy) < 1e-9
                         and abs(gs.energy - e_qudit) < 1e-9,
                         f"{gs.energy} vs {dense.energy} vs {e_qudit}")
        for pair in ((1, 4), (1, 2), (2, 3)):
            r_qudit = two_site_rdm(gs, H.basis, *pair)
            o_qudit = qudit_pair_rdm(amp_qudit, model.L, *pair)
            err_q = np.abs(r_qudit.matrix - o_qudit.matrix).max()
            all_ok &= _check(f"qudit rdm vs oracle [{model.variant} {pair}]", err_q < 1e-12,
                             f"max err {err_q:.2e}")
            r_ferm = two_site_rdm(gs, H.basis, *pair, convention="fermionic")
            o_ferm = dense_partial_trace(dense, pair)
            err_f = np.abs(r_ferm.matrix - o_ferm.matrix).max()
            all_ok &= _check(f"fermionic rdm vs oracle [{model.variant} {pair}]", err_f < 1e-12,
                             f"max err {err_f:.2e}")

    def random_density(dim):
        A = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        R = A @ A.conj().T
        return R / np.trace(R).real

    for label in FAMILIES:
        worst = 0.0
        for _ in range(20):
            chi = random_density(16)
            rho_in = random_density(4)
            if label == "bell":
                fam = bell_family(4)
            elif label == "hubbard-fixed":
                fam = hubbard_family("fixed")
            else:
                fam = hubbard_family("adaptive", rho_resource=chi)
            out = channel_output(chi, rho_in, fam).output
            worst = max(worst, float(np.abs(out - circuit_oracle(chi, rho_in, fam)).max()))
        all_ok &= _check(f"channel == circuit [{label}]", worst < 1e-10, f"max err {worst:.2e}")

    psi = make_input_state(rng.normal(size=4) + 1j * rng.normal(size=4))
    fam = bell_family(4)
    chi = np.outer(fam.base_state, fam.base_state.conj())
    res = channel_output(chi, psi.density_matrix(), fam)
    all_ok &= _check("ideal Bell teleportation", abs(res.fidelity - 1.0) < 1e-10)
    fam = hubbard_family("fixed")
    chi = np.outer(fam.base_state, fam.base_state.conj())
    res = channel_output(chi, psi.density_matrix(), fam)
    all_ok &= _check("ideal Hubbard teleportation", abs(res.fidelity - 1.0) < 1e-10)

    print("selftest:", "all checks passed" if all_ok else "FAILURES above")
    return 0 if all_ok else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hubbardlde",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep-delta", help="sweep bond alternation delta (alt-bonds model)")
    _add_common(p)
    p.add_argument("--delta-grid", metavar="START:STOP:STEPS", default=None)
    p.set_defaults(func=_cmd_sweep_delta)

    p = sub.add_parser("sweep-u", help="sweep the interaction U")
    _add_common(p)
    p.add_argument("--model", choices=VARIANTS, default=UNIFORM)
    p.add_argument("--u-grid", metavar="START:STOP:STEPS", default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--tau-a", type=float, default=None)
    p.add_argument("--tau-b", type=float, default=None)
    p.set_defaults(func=_cmd_sweep_u)

    p = sub.add_parser("sweep-tau", help="sweep tau_b (alt-hopping model)")
    _add_common(p)
    p.add_argument("--tau-a", type=float, default=None)
    p.add_argument("--tau-b-grid", metavar="START:STOP:STEPS", default=None)
    p.set_defaults(func=_cmd_sweep_tau)

    p = sub.add_parser("sweep-alpha", help="sweep alpha0 of the input state (alpha0,1,1,1)")
    _add_common(p)
    p.add_argument("--model", choices=VARIANTS, default=UNIFORM)
    p.add_argument("--alpha0-grid", metavar="START:STOP:STEPS", default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--tau-a", type=float, default=None)
    p.add_argument("--tau-b", type=float, default=None)
    p.set_defaults(func=_cmd_sweep_alpha)

    p = sub.add_parser("point", help="evaluate one parameter point and print all metrics")
    _add_common(p)
    p.add_argument("--model", choices=VARIANTS, default=UNIFORM)
    p.add_argument("--point-u", type=float, default=0.0, help="interaction U at the point")
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--tau-a", type=float, default=None)
    p.add_argument("--tau-b", type=float, default=None)
    p.add_argument("--dump-rdm", metavar="PATH", default=None,
                   help="write the pair RDM as 16x16 're,im' text rows")
    p.add_argument("--scan-sectors", action="store_true",
                   help="print E0 of every (n_up,n_down) sector (L <= 6)")
    p.set_defaults(func=_cmd_point)

    p = sub.add_parser("selftest", help="run the oracle-equivalence suite")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
