"""Command line interface.

Exit codes: 0 all checks passed, 1 a statistical check failed, 2 bad
configuration.  Subcommands cover honest runs of all three protocols,
scripted attacks, the seed-guessing reduction harness, parameter
verification, the parity-extractor verification, and a free-seed soak.
"""

from __future__ import annotations

import argparse
import secrets
import sys
from fractions import Fraction

from eprot.harness.runner import ConfigError, RunConfig, run_trials
from eprot.harness.transcript import serialize_transcript

PASS, STAT_FAIL, CONFIG_FAIL = 0, 1, 2


def _add_common(p: argparse.ArgumentParser, trials: int) -> None:
    p.add_argument("--lambda", dest="lam", type=int, default=4, help="security parameter")
    p.add_argument("--lambda-ci", dest="lam_ci", type=int, default=None, help="hash security parameter")
    p.add_argument("--alpha", type=Fraction, default=Fraction(1, 8), help="approximation parameter, e.g. 1/8")
    p.add_argument("--c", type=int, default=16, help="repetitions per group")
    p.add_argument("--t", type=int, default=2, help="number of groups")
    p.add_argument("--group-bits", type=int, default=64, help="commitment group size")
    p.add_argument("--trials", type=int, default=trials)
    p.add_argument("--seed", default=None, help="32-byte master seed (hex); random if omitted")
    p.add_argument("--adversary", default="Honest", help="Honest | NoDelete | WrongCommit | InconsistentOffsets")
    p.add_argument("--fraction", type=float, default=1.0, help="corrupted fraction for WrongCommit")
    p.add_argument("--backend", default="auto", choices=["auto", "stabilizer", "statevector"])
    p.add_argument("--json-out", default=None, help="write one transcript JSON per line to this path")
    p.add_argument("--hybrid", default=None, choices=["coherent"], help="receiver hybrid configuration")


def _config_from(args, protocol: str) -> RunConfig:
    return RunConfig(
        protocol=protocol,
        lam=args.lam,
        lam_ci=args.lam_ci if args.lam_ci is not None else args.lam,
        alpha=args.alpha,
        c=args.c,
        t=args.t,
        group_bits=args.group_bits,
        adversary=args.adversary,
        fraction=args.fraction,
        trials=args.trials,
        master_seed=args.seed or secrets.token_hex(32),
        backend=args.backend,
        hybrid=args.hybrid,
        json_out=args.json_out,
    )


def _run_protocol(args, protocol: str) -> int:
    config = _config_from(args, protocol)
    report, transcripts = run_trials(config)
    print(f"== {protocol} | adversary {config.adversary} | seed {config.master_seed[:16]}.. ==")
    print(report.summary())
    if config.json_out:
        with open(config.json_out, "wb") as fh:
            for t in transcripts:
                fh.write(serialize_transcript(t) + b"\n")
        print(f"wrote {len(transcripts)} transcripts to {config.json_out}")
    ok = True
    if config.adversary == "Honest":
        ok = report.accepts == report.trials and report.correct_outputs == report.trials
        if report.b_frequency is not None and protocol != "skeleton":
            ok = ok and report.b_frequency.passed
    elif report.analytic_check is not None:
        ok = report.analytic_check.passed
    return PASS if ok else STAT_FAIL


def cmd_attack(args) -> int:
    args.adversary = args.tag
    return _run_protocol(args, "oneshot")


def cmd_verify_params(args) -> int:
    from eprot.relations import ProtocolParams, satisfies_product_bound, sparsity

    if args.full_scale:
        alpha, c = Fraction(1, 120), 480
        lam_ci = args.lam_ci if args.lam_ci is not None else 4
        t = 180**3 * lam_ci
    else:
        alpha, c, t, lam_ci = args.alpha, args.c, args.t, args.lam_ci or args.lam
    rho = sparsity(alpha, c)
    ell = c * t
    print(f"alpha = {alpha}")
    print(f"c     = {c}")
    print(f"t     = {t}")
    print(f"ell   = {ell}")
    print(f"rho   = {rho.numerator}/{rho.denominator}")
    print(f"      ~ {float(rho):.6e}")
    rho_ok = rho < alpha
    t_ok = satisfies_product_bound(t, lam_ci, alpha, rho)
    print(f"rho < alpha:              {'yes' if rho_ok else 'NO'}")
    print(f"t >= lam_ci/(alpha-rho)^3: {'yes' if t_ok else 'NO'} (lam_ci = {lam_ci})")
    if rho_ok and t_ok:
        try:
            ProtocolParams(lam=args.lam, lam_ci=lam_ci, alpha=alpha, c=c, t=t)
        except ValueError as exc:
            print(f"parameter constraint failed: {exc}")
            return CONFIG_FAIL
    return PASS if (rho_ok and t_ok) else STAT_FAIL


def cmd_reduction(args) -> int:
    import numpy as np

    from eprot.oneshot.adversary import AdversaryStrategy, adversary_send
    from eprot.oneshot.simulators import run_exp2
    from eprot.relations import ProtocolParams
    from eprot.rng import RandomStream

    try:
        params = ProtocolParams(
            lam=args.lam, lam_ci=args.lam_ci or args.lam, alpha=args.alpha, c=args.c, t=args.t,
            group_bits=args.group_bits,
        )
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return CONFIG_FAIL
    master = RandomStream.from_seed(args.seed or secrets.token_hex(32))
    strategies = ["Honest", "NoDelete", "WrongCommit", "InconsistentOffsets"]
    counterexamples = 0
    for tag in strategies:
        ones = 0
        for i in range(args.trials):
            trng = master.child(tag, i)
            seed_bits = trng.child("force-seed").bits(params.lam)
            strategy = AdversaryStrategy(tag, args.fraction, forced_seed=seed_bits)

            def send(setup_, rng, strategy=strategy):
                return adversary_send(strategy, params, setup_, [0] * params.lam, [1] * params.lam, rng)

            res = run_exp2(params, send, trng.child("exp"), s_star=seed_bits)
            if res.output:
                ones += 1
                if not res.relation.in_relation(res.cms, res.t_subsets):
                    counterexamples += 1
        print(f"{tag:20s}: output-1 rate {ones}/{args.trials}")
    print(f"implication counterexamples: {counterexamples}")
    return PASS if counterexamples == 0 else STAT_FAIL


def cmd_xor_extractor(args) -> int:
    from eprot.oneshot.analysis import xor_extractor_exact_td
    from eprot.quantum.random_states import random_low_weight_state
    from eprot.rng import RandomStream

    rng = RandomStream.from_seed(args.seed or secrets.token_hex(32))
    worst = 0.0
    for i in range(args.trials):
        draw = rng.child("draw", i)
        n = 2 + draw.integer(3)  # measured register of 2..4 qubits
        aux = draw.integer(3)  # auxiliary register of 0..2 qubits
        state = random_low_weight_state(draw, n, aux)
        td = xor_extractor_exact_td(state, list(range(aux, aux + n)))
        worst = max(worst, td)
    print(f"{args.trials} random low-weight states: max TD from (residual x uniform bit) = {worst:.3e}")
    return PASS if worst < 1e-9 else STAT_FAIL


def cmd_soak(args) -> int:
    failures = 0
    for protocol in ("oneshot", "tworound", "skeleton"):
        args.adversary = "Honest"
        code = _run_protocol(args, protocol)
        failures += code != PASS
    for tag in ("NoDelete", "InconsistentOffsets"):
        args.adversary = tag
        code = _run_protocol(args, "oneshot")
        failures += code != PASS
    return PASS if failures == 0 else STAT_FAIL


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="eprot", description="oblivious transfer over shared EPR pairs, on a desk")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run-oneshot", help="honest or adversarial one-shot runs")
    _add_common(p, trials=100)
    p.set_defaults(fn=lambda a: _run_protocol(a, "oneshot"))

    p = sub.add_parser("run-tworound", help="honest two-round runs")
    _add_common(p, trials=100)
    p.set_defaults(fn=lambda a: _run_protocol(a, "tworound"))
    p.set_defaults(lam=8)

    p = sub.add_parser("run-skeleton", help="single-collection string-correlation runs")
    _add_common(p, trials=200)
    p.set_defaults(fn=lambda a: _run_protocol(a, "skeleton"))

    p = sub.add_parser("attack", help="run a scripted attack and report detection stats")
    p.add_argument("tag", choices=["NoDelete", "WrongCommit", "InconsistentOffsets"])
    _add_common(p, trials=400)
    p.set_defaults(fn=cmd_attack)

    p = sub.add_parser("verify-params", help="exact parameter arithmetic report")
    _add_common(p, trials=1)
    p.add_argument("--full-scale", action="store_true", help="use the headline parameterization")
    p.set_defaults(fn=cmd_verify_params)

    p = sub.add_parser("reduction", help="seed-guessing experiment + relation implication")
    _add_common(p, trials=250)
    p.set_defaults(fn=cmd_reduction, c=4, alpha=Fraction(1, 4))

    p = sub.add_parser("xor-extractor", help="exact parity-extractor verification")
    _add_common(p, trials=200)
    p.set_defaults(fn=cmd_xor_extractor)

    p = sub.add_parser("soak", help="free-seed statistical sweep")
    _add_common(p, trials=200)
    p.set_defaults(fn=cmd_soak)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return CONFIG_FAIL


if __name__ == "__main__":
    sys.exit(main())
