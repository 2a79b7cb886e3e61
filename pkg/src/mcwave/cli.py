"""Command-line front end: modulate, matrix, verify, ber.

Every command is deterministic given its full argument list (including
seeds) and emits self-describing CSV files with 17-significant-digit
floats, so reruns are byte-identical and 1e-10 comparisons survive the
round trip. Options may also come from a JSON config file (--config);
explicit flags override file values, file values override defaults.

Exit codes: 0 success / all checks pass, 1 verify-check failure,
2 invalid usage or configuration, 3 I/O failure.
"""

import argparse
import json
import sys

import numpy as np

from .errors import InvalidDimensionError, InvalidParameterError, SingularMatrixError
from .gfdm import GfdmBlock, GfdmConfig, PulseSpec, gfdm_modulate, gfdm_modulation_matrix
from .linksim import ChannelSpec, qpsk_map, run_ber
from .spectral import table1_report
from .vofdm import VofdmConfig, VofdmFrame, vofdm_modulate, vofdm_modulation_matrix

_DEFAULTS = {
    "modulate": {
        "system": "vofdm", "m": 2, "l": 4, "k": 4, "gfdm_m": 3,
        "pulse": "raised-cosine-time", "rolloff": 0.5,
        "impulse": None, "random_seed": None, "input": None,
        "output": "samples.csv",
    },
    "matrix": {
        "system": "vofdm", "m": 2, "l": 4, "k": 4, "gfdm_m": 3,
        "pulse": "raised-cosine-time", "rolloff": 0.5,
        "max_n": 1024, "output": "matrix.csv",
    },
    "verify": {
        "vofdm_m": 3, "vofdm_l": 3, "gfdm_k": 3, "gfdm_m": 3,
        "pulse": "raised-cosine-time", "rolloff": 0.5,
        "seed": 0, "tolerance": None, "output": "report.csv",
    },
    "ber": {
        "systems": "ofdm,vofdm", "snr": "0,5,10,15",
        "frames": 1000, "seed": 1, "taps": "1",
        "vofdm_m": 2, "vofdm_l": 32, "gfdm_k": 8, "gfdm_m": 5,
        "pulse": "raised-cosine-time", "rolloff": 0.3,
        "output": "ber.csv",
    },
}


def _fmt(x):
    return format(float(x), ".17g")


def _write_lines(path, lines):
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _read_complex_csv(path):
    """Read an index,re,im CSV back into a complex vector."""
    values = []
    with open(path, encoding="ascii") as fh:
        header = fh.readline().strip()
        if header != "index,re,im":
            raise InvalidParameterError(
                f"{path}: expected header 'index,re,im', got {header!r}")
        for line in fh:
            if not line.strip():
                continue
            _, re_part, im_part = line.strip().split(",")
            values.append(complex(float(re_part), float(im_part)))
    if not values:
        raise InvalidParameterError(f"{path}: no samples")
    return np.asarray(values, dtype=np.complex128)


def _parse_taps(text):
    try:
        taps = [complex(tok.strip()) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise InvalidParameterError(f"cannot parse channel taps {text!r}: {exc}")
    if not taps:
        raise InvalidParameterError("channel taps must not be empty")
    return np.asarray(taps, dtype=np.complex128)


def _effective(args, command):
    """Merge defaults <- config file <- explicit flags."""
    merged = dict(_DEFAULTS[command])
    config_path = getattr(args, "config", None)
    if config_path:
        with open(config_path, encoding="utf-8") as fh:
            file_values = json.load(fh)
        unknown = set(file_values) - set(merged)
        if unknown:
            raise InvalidParameterError(
                f"unknown config keys for {command}: {sorted(unknown)}")
        merged.update(file_values)
    for key in merged:
        cli_value = getattr(args, key, None)
        if cli_value is not None:
            merged[key] = cli_value
    return argparse.Namespace(**merged)


def _modulator_config(opts):
    if opts.system == "vofdm":
        return VofdmConfig(M=opts.m, L=opts.l)
    if opts.system == "gfdm":
        return GfdmConfig(K=opts.k, M=opts.gfdm_m,
                          pulse=PulseSpec(opts.pulse, opts.rolloff))
    raise InvalidParameterError(f"unknown system {opts.system!r}")


def _input_symbols(opts, n):
    if opts.impulse is not None:
        if not 0 <= opts.impulse < n:
            raise InvalidParameterError(
                f"impulse index {opts.impulse} out of range [0, {n})")
        d = np.zeros(n, dtype=np.complex128)
        d[opts.impulse] = 1.0
        return d
    if opts.input is not None:
        d = _read_complex_csv(opts.input)
        if d.size != n:
            raise InvalidDimensionError(
                f"{opts.input}: {d.size} samples, frame needs {n}")
        return d
    seed = opts.random_seed if opts.random_seed is not None else 0
    rng = np.random.default_rng(seed)
    return qpsk_map(rng.integers(0, 2, size=2 * n, dtype=np.uint8))


def _cmd_modulate(args):
    opts = _effective(args, "modulate")
    cfg = _modulator_config(opts)
    d = _input_symbols(opts, cfg.N)
    if opts.system == "vofdm":
        x = vofdm_modulate(VofdmFrame(cfg, d))
    else:
        x = gfdm_modulate(GfdmBlock(cfg, d.reshape((cfg.K, cfg.M), order="F")))
    lines = ["index,re,im"]
    lines += [f"{i},{_fmt(s.real)},{_fmt(s.imag)}" for i, s in enumerate(x)]
    _write_lines(opts.output, lines)
    return 0


def _cmd_matrix(args):
    opts = _effective(args, "matrix")
    cfg = _modulator_config(opts)
    if cfg.N > opts.max_n:
        raise InvalidParameterError(
            f"N={cfg.N} exceeds the export cap {opts.max_n}")
    if opts.system == "vofdm":
        matrix = vofdm_modulation_matrix(cfg)
    else:
        matrix = gfdm_modulation_matrix(cfg)
    lines = ["row,col,re,im"]
    for r in range(cfg.N):
        for c in range(cfg.N):
            entry = matrix[r, c]
            lines.append(f"{r},{c},{_fmt(entry.real)},{_fmt(entry.imag)}")
    _write_lines(opts.output, lines)
    return 0


def _cmd_verify(args):
    opts = _effective(args, "verify")
    vcfg = VofdmConfig(M=opts.vofdm_m, L=opts.vofdm_l)
    gcfg = GfdmConfig(K=opts.gfdm_k, M=opts.gfdm_m,
                      pulse=PulseSpec(opts.pulse, opts.rolloff))
    records = table1_report(vcfg, gcfg, seed=opts.seed)
    if opts.tolerance is not None:
        for record in records:
            record.tolerance = opts.tolerance
    lines = ["check_name,value,tolerance,pass"]
    all_passed = True
    for record in records:
        all_passed &= record.passed
        lines.append(f"{record.name},{_fmt(record.value)},"
                     f"{_fmt(record.tolerance)},{str(record.passed).lower()}")
    _write_lines(opts.output, lines)
    return 0 if all_passed else 1


def _cmd_ber(args):
    opts = _effective(args, "ber")
    systems = [s.strip() for s in opts.systems.split(",") if s.strip()]
    snrs = [float(s) for s in str(opts.snr).split(",") if str(s).strip()]
    channel = ChannelSpec(_parse_taps(opts.taps))
    configs = {
        "ofdm": VofdmConfig(M=1, L=opts.vofdm_m * opts.vofdm_l),
        "vofdm": VofdmConfig(M=opts.vofdm_m, L=opts.vofdm_l),
        "gfdm": GfdmConfig(K=opts.gfdm_k, M=opts.gfdm_m,
                           pulse=PulseSpec(opts.pulse, opts.rolloff)),
    }
    lines = ["system,snr_db,bits,errors,ber,seed"]
    for system in systems:
        if system not in configs:
            raise InvalidParameterError(f"unknown system {system!r}")
        for snr_db in snrs:
            result = run_ber(system, configs[system], channel, snr_db,
                             opts.frames, opts.seed)
            lines.append(f"{result.system},{_fmt(result.snr_db)},"
                         f"{result.bits_sent},{result.bit_errors},"
                         f"{_fmt(result.ber)},{result.seed}")
    _write_lines(opts.output, lines)
    return 0


def _add_geometry_options(sub):
    sub.add_argument("--system", choices=("vofdm", "gfdm"))
    sub.add_argument("--M", dest="m", type=int, help="VOFDM vector-block length")
    sub.add_argument("--L", dest="l", type=int, help="VOFDM vector-block count")
    sub.add_argument("--K", dest="k", type=int, help="GFDM subcarrier count")
    sub.add_argument("--gfdm-M", dest="gfdm_m", type=int,
                     help="GFDM subsymbol count")
    sub.add_argument("--pulse", choices=("raised-cosine-time",
                                         "rect-subsymbol", "dirichlet"))
    sub.add_argument("--rolloff", type=float)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mcwave",
        description="GFDM / vector-OFDM modulation, verification and BER tools")
    commands = parser.add_subparsers(dest="command", required=True)

    modulate = commands.add_parser("modulate", help="emit transmit samples")
    _add_geometry_options(modulate)
    modulate.add_argument("--impulse", type=int,
                          help="modulate a unit impulse at this symbol index")
    modulate.add_argument("--random-seed", dest="random_seed", type=int,
                          help="modulate seeded random QPSK symbols")
    modulate.add_argument("--input", help="CSV file (index,re,im) of symbols")
    modulate.set_defaults(run=_cmd_modulate)

    matrix = commands.add_parser("matrix", help="export a modulation matrix")
    _add_geometry_options(matrix)
    matrix.add_argument("--max-n", dest="max_n", type=int,
                        help="refuse to export matrices larger than this N")
    matrix.set_defaults(run=_cmd_matrix)

    verify = commands.add_parser(
        "verify", help="run the spectral-structure check suite")
    verify.add_argument("--vofdm-M", dest="vofdm_m", type=int)
    verify.add_argument("--vofdm-L", dest="vofdm_l", type=int)
    verify.add_argument("--gfdm-K", dest="gfdm_k", type=int)
    verify.add_argument("--gfdm-M", dest="gfdm_m", type=int)
    verify.add_argument("--pulse", choices=("raised-cosine-time",
                                            "rect-subsymbol", "dirichlet"))
    verify.add_argument("--rolloff", type=float)
    verify.add_argument("--seed", type=int)
    verify.add_argument("--tolerance", type=float,
                        help="override every check's tolerance")
    verify.set_defaults(run=_cmd_verify)

    ber = commands.add_parser("ber", help="run a BER sweep")
    ber.add_argument("--systems", help="comma-separated: ofdm,vofdm,gfdm")
    ber.add_argument("--snr", help="comma-separated SNR values in dB")
    ber.add_argument("--frames", type=int)
    ber.add_argument("--seed", type=int)
    ber.add_argument("--taps", help="comma-separated complex channel taps")
    ber.add_argument("--vofdm-M", dest="vofdm_m", type=int)
    ber.add_argument("--vofdm-L", dest="vofdm_l", type=int)
    ber.add_argument("--gfdm-K", dest="gfdm_k", type=int)
    ber.add_argument("--gfdm-M", dest="gfdm_m", type=int)
    ber.add_argument("--pulse", choices=("raised-cosine-time",
                                         "rect-subsymbol", "dirichlet"))
    ber.add_argument("--rolloff", type=float)
    ber.set_defaults(run=_cmd_ber)

    for sub in (modulate, matrix, verify, ber):
        sub.add_argument("--config", help="JSON config file; flags override it")
        sub.add_argument("--output", help="output CSV path")

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (InvalidParameterError, InvalidDimensionError,
            SingularMatrixError, json.JSONDecodeError) as exc:
        print(f"mcwave: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"mcwave: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
