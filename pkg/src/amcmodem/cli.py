"""Command line front end.

Subcommands: ``ber-sweep``, ``range-sim``, ``derive-policy`` and ``synth``.
Each accepts ``--config FILE`` holding ``flag = value`` lines (flag names
without the leading dashes); explicit flags override the file.

Exit codes: 0 success, 2 invalid configuration, 3 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .amc import AmcPolicy, derive_thresholds
from .channel import PathLossModel
from .config import parse_kv
from .constellation import Scheme, build_constellation, dqpsk_encode, map_bits
from .errors import ConfigurationError, ModemError
from .harness import RangeSimSpec, SweepSpec, emit_csv, export_iq, run_ber_sweep, run_range_sim
from .link import random_bits
from .waveform import PassbandParams, synth_ask, synth_fsk, synth_psk_qam

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3

SYNTH_SCHEMES = ("ask", "fsk", "bpsk", "qpsk", "dqpsk", "qam16", "qam64")


def _count(text: str) -> int:
    """Integer that may be written as ``1e6``."""
    value = float(text)
    if value != int(value):
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    return int(value)


def _bool(text: str) -> bool:
    low = str(text).strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"{text!r} is not a boolean")


def _scheme(text: str) -> Scheme:
    try:
        return Scheme.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _common(p: argparse.ArgumentParser, out_help: str) -> None:
    p.add_argument("--config", help="flat key = value file; flags override it")
    p.add_argument("--seed", type=_count, default=0)
    p.add_argument("--out", default="-", help=out_help)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="amcmodem", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ber-sweep", help="BER versus Eb/N0 for one scheme")
    _common(p, "CSV path ('-' for stdout)")
    p.add_argument("--scheme", type=_scheme, default=Scheme.BPSK)
    p.add_argument("--ebn0-start", type=float, default=0.0)
    p.add_argument("--ebn0-stop", type=float, default=10.0)
    p.add_argument("--ebn0-step", type=float, default=1.0)
    p.add_argument("--bits", type=_count, default=1_000_000, help="bits per point")
    p.add_argument("--symbol-rate", type=float, default=1e6)
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("range-sim", help="adaptive link over a range of distances")
    _common(p, "CSV path ('-' for stdout)")
    p.add_argument("--dmin", type=float, default=1.0)
    p.add_argument("--dmax", type=float, default=100.0)
    p.add_argument("--points", type=int, default=41)
    p.add_argument("--exponent", type=float, default=PathLossModel.exponent)
    p.add_argument("--snr0", type=float, default=PathLossModel.snr0_db,
                   help="Es/N0 in dB at the reference distance")
    p.add_argument("--d0", type=float, default=PathLossModel.d0)
    p.add_argument("--target-ber", type=float, default=1e-3)
    p.add_argument("--hysteresis", type=float, default=1.0)
    p.add_argument("--symbol-rate", type=float, default=1e6)
    p.add_argument("--bits", type=_count, default=120_000, help="bits per distance")
    p.add_argument("--budget", type=_count, default=None,
                   help="bits per grid point when deriving the policy")
    p.add_argument("--policy", help="policy file from derive-policy (skips derivation)")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("derive-policy", help="Monte-Carlo AMC thresholds for a target BER")
    _common(p, "policy path ('-' for stdout)")
    p.add_argument("--target-ber", type=float, default=1e-3)
    p.add_argument("--budget", type=_count, default=None, help="bits per grid point")
    p.add_argument("--hysteresis", type=float, default=0.0)
    p.add_argument("--schemes", default="bpsk,qpsk,qam16,qam64")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("synth", help="write a passband (or baseband) waveform as IQF1")
    _common(p, "IQF1 output path")
    p.add_argument("--scheme", choices=SYNTH_SCHEMES, default="bpsk", type=str.lower)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--bits-file", help="text file of 0/1 characters")
    src.add_argument("--random-bits", type=_count, help="number of random bits")
    p.add_argument("--carrier", type=float, default=PassbandParams.carrier_frequency)
    p.add_argument("--sample-rate", type=float, default=PassbandParams.sample_rate)
    p.add_argument("--sps", type=int, default=PassbandParams.samples_per_symbol)
    p.add_argument("--f0", type=float, default=PassbandParams.fsk_frequencies[0])
    p.add_argument("--f1", type=float, default=PassbandParams.fsk_frequencies[1])
    p.add_argument("--a0", type=float, default=PassbandParams.ask_amplitudes[0])
    p.add_argument("--a1", type=float, default=PassbandParams.ask_amplitudes[1])
    p.add_argument("--reference-phase", type=float, default=0.0,
                   help="dqpsk reference phase in degrees")
    p.add_argument("--baseband", type=_bool, nargs="?", const=True, default=False,
                   help="write complex symbols instead of the passband waveform")
    return parser


def _apply_config(parser, argv):
    args = parser.parse_args(argv)
    if not args.config:
        return args
    with open(args.config, encoding="utf-8") as fh:
        kv = parse_kv(fh.read())
    sub = parser._subparsers._group_actions[0].choices[args.command]
    actions = {a.dest: a for a in sub._actions if a.dest not in ("help", "config")}
    defaults = {}
    for key, raw in kv.items():
        dest = key.replace("-", "_")
        action = actions.get(dest)
        if action is None:
            raise ConfigurationError(f"unknown option {key!r} for {args.command}")
        convert = action.type or (lambda s: s)
        try:
            value = convert(raw)
        except (argparse.ArgumentTypeError, ValueError) as exc:
            raise ConfigurationError(f"{key}: {exc}") from None
        if action.choices is not None and value not in action.choices:
            raise ConfigurationError(f"{key}: {raw!r} not in {sorted(action.choices)}")
        defaults[dest] = value
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def _write_text(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _emit(reports, out: str) -> None:
    emit_csv(reports, sys.stdout if out == "-" else out)


def _cmd_ber_sweep(args):
    if not args.ebn0_step > 0 or args.ebn0_stop < args.ebn0_start:
        raise ConfigurationError("need ebn0-step > 0 and ebn0-stop >= ebn0-start")
    n = int(math.floor((args.ebn0_stop - args.ebn0_start) / args.ebn0_step + 1e-9)) + 1
    points = [args.ebn0_start + i * args.ebn0_step for i in range(n)]
    spec = SweepSpec(args.scheme, points, args.bits, args.seed, args.symbol_rate)
    _emit(run_ber_sweep(spec, workers=args.workers), args.out)


def _cmd_range_sim(args):
    if args.points < 1 or not 0 < args.dmin <= args.dmax:
        raise ConfigurationError("need points >= 1 and 0 < dmin <= dmax")
    if args.policy:
        with open(args.policy, encoding="utf-8") as fh:
            policy = AmcPolicy.from_text(fh.read())
    else:
        policy = derive_thresholds(args.target_ber, sim_budget=args.budget, seed=args.seed,
                                   hysteresis_db=args.hysteresis, workers=args.workers)
    distances = np.geomspace(args.dmin, args.dmax, args.points) if args.points > 1 else [args.dmin]
    spec = RangeSimSpec(tuple(distances), policy,
                        PathLossModel(args.snr0, args.d0, args.exponent),
                        args.symbol_rate, args.bits, args.seed)
    _emit(run_range_sim(spec, workers=args.workers), args.out)


def _cmd_derive_policy(args):
    try:
        schemes = [Scheme.parse(s) for s in args.schemes.split(",") if s.strip()]
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from None
    policy = derive_thresholds(args.target_ber, schemes, args.budget, args.seed,
                               args.hysteresis, args.workers)
    _write_text(policy.to_text(), args.out)


def _read_bits_file(path: str) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        text = "".join(fh.read().split())
    if set(text) - {"0", "1"}:
        raise ConfigurationError(f"{path}: bits file may only contain 0 and 1")
    return np.frombuffer(text.encode(), dtype=np.uint8) - ord("0")


def _cmd_synth(args):
    if args.out == "-":
        raise ConfigurationError("synth needs --out PATH (binary output)")
    if args.bits_file:
        bits = _read_bits_file(args.bits_file)
    elif args.random_bits is not None:
        bits = random_bits(args.random_bits, args.seed)
    else:
        raise ConfigurationError("synth needs --bits-file or --random-bits")
    p = PassbandParams(args.carrier, args.sample_rate, args.sps,
                       (args.f0, args.f1), (args.a0, args.a1))
    scheme = args.scheme
    if scheme in ("ask", "fsk"):
        if args.baseband:
            raise ConfigurationError(f"{scheme} has no baseband symbol form")
        wave = synth_ask(bits, p) if scheme == "ask" else synth_fsk(bits, p)
        export_iq(wave, args.out)
        return
    if scheme == "dqpsk":
        symbols = dqpsk_encode(bits, args.reference_phase)
    else:
        symbols = map_bits(build_constellation(Scheme.parse(scheme)), bits)
    if args.baseband:
        export_iq(symbols, args.out, sample_rate=p.symbol_rate)
    else:
        export_iq(synth_psk_qam(symbols, p), args.out)


COMMANDS = {
    "ber-sweep": _cmd_ber_sweep,
    "range-sim": _cmd_range_sim,
    "derive-policy": _cmd_derive_policy,
    "synth": _cmd_synth,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        COMMANDS[args.command](args)
    except (ModemError, ValueError) as exc:
        print(f"amcmodem: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"amcmodem: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
