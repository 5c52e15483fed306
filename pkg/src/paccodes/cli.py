"""Command-line front end.

Subcommands: encode, decode, simulate, latency, invpoly. A flat key=value
config file can seed any subcommand's flags (--config FILE, explicit flags
win); every produced artifact embeds the resolved configuration and the
package version in its header so runs are diffable.
"""

from __future__ import annotations

import argparse
import json
import subprocess
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .channel import ChannelConfig, DecoderSetup, run_bler
from .codec import (
    CodeSpec,
    bundled_profiles,
    inverse_gen_poly,
    load_profile,
    pac_encode,
    parse_gen_poly,
)
from .latency import latency_report
from .nodes import NodePolicy

__all__ = ["main", "version_string"]


def version_string() -> str:
    base = f"paccodes {__version__}"
    try:
        desc = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            cwd=Path(__file__).parent,
            capture_output=True,
            text=True,
            timeout=5,
        )
        if desc.returncode == 0 and desc.stdout.strip():
            return f"{base} ({desc.stdout.strip()})"
    except Exception:
        pass
    return base


# --------------------------------------------------------------------------
# argument handling


def _add_code_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="block length N (power of two)")
    p.add_argument("--k", type=int, help="info length K (validated against the profile)")
    p.add_argument(
        "--profile",
        required=True,
        help=f"rate-profile file or bundled name {bundled_profiles()}",
    )
    p.add_argument("--g", default="1011011", help="generator polynomial bits, g0 first")
    p.add_argument("--crc", default=None, help="optional CRC polynomial bits, MSB first")


def _add_decoder_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--decoder", choices=("sc", "scl", "sscl"), default="scl")
    p.add_argument("--list-size", type=int, default=8)
    p.add_argument("--z", type=int, default=4, help="candidates per path at rate-1/SPC nodes")
    p.add_argument("--max-node-len", type=int, default=None, help="cap on special node length")
    p.add_argument(
        "--engine",
        choices=("fast", "reference"),
        default="fast",
        help="reference = exhaustive minimum-penalty decoding (K <= 20)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="paccodes", description=__doc__)
    parser.add_argument("--version", action="version", version=version_string())
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="encode one data block")
    _add_code_flags(p)
    p.add_argument("--data", help="payload bits ('0101...') or hex ('0x2f')")
    p.add_argument("--in", dest="infile", help="file with the payload instead of --data")
    p.add_argument("--out", help="write the codeword here instead of stdout")

    p = sub.add_parser("decode", help="decode one LLR block")
    _add_code_flags(p)
    _add_decoder_flags(p)
    p.add_argument("--llr", required=True, help="file with one decimal LLR per line")
    p.add_argument("--out", help="write the data bits here instead of stdout")

    p = sub.add_parser("simulate", help="Monte Carlo BLER sweep")
    _add_code_flags(p)
    _add_decoder_flags(p)
    p.add_argument("--snr", required=True, help="SNR dB list 'a,b,c' or sweep 'start:stop:step'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-trials", type=int, default=100000)
    p.add_argument("--min-errors", type=int, default=100)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write results here instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("latency", help="cycle-count report for SCL vs SSCL")
    _add_code_flags(p)
    p.add_argument("--kappa", type=int, default=1)
    p.add_argument("--max-node-len", type=int, default=None)
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("invpoly", help="inverse generator polynomial table")
    p.add_argument("--g", required=True, help="generator polynomial bits, g0 first")
    p.add_argument("--n", type=int, required=True, help="largest node length (power of two)")
    p.add_argument("--out", help="write the table here instead of stdout")

    return parser


def _config_file_args(argv: list[str]) -> list[str]:
    """Expand --config FILE into flag assignments placed before other flags."""
    if "--config" not in argv:
        return argv
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise ValueError("--config needs a file argument")
    path = Path(argv[i + 1])
    if not path.exists():
        raise ValueError(f"config file not found: {path}")
    flags = []
    for lineno, raw in enumerate(path.read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        flags.append(f"--{key.replace('_', '-')}={value}")
    head, tail = argv[:i], argv[i + 2 :]
    # subcommand first, then config values, then explicit flags (which win)
    return head[:1] + flags + head[1:] + tail


def _parse_snr(text: str) -> list[float]:
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"--snr sweep must be start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("--snr step must be positive")
        return [round(x, 10) for x in np.arange(start, stop + step / 2, step)]
    return [float(p) for p in text.split(",") if p.strip()]


def _parse_databits(text: str, expected: int) -> np.ndarray:
    s = text.strip()
    if s.lower().startswith("0x"):
        digits = s[2:]
        bits = "".join(f"{int(ch, 16):04b}" for ch in digits)
    else:
        bits = s
    if any(ch not in "01" for ch in bits):
        raise ValueError(f"--data must be 0/1 bits or hex, got {text!r}")
    if len(bits) != expected:
        raise ValueError(f"--data carries {len(bits)} bits, the code expects {expected}")
    return np.array([int(ch) for ch in bits], dtype=np.uint8)


def _spec_from_args(args) -> CodeSpec:
    info_set = load_profile(args.profile)
    g = parse_gen_poly(args.g)
    crc = parse_gen_poly(args.crc) if getattr(args, "crc", None) else None
    n_max = max(info_set)
    if args.n is None:
        N = 1
        while N <= n_max:
            N *= 2
    else:
        N = args.n
        if N & (N - 1) or N < 1:
            raise ValueError(f"--n must be a power of two, got {N}")
        if n_max >= N:
            raise ValueError(f"profile index {n_max} does not fit --n {N}")
    spec = CodeSpec.create(N, info_set, g, crc)
    if args.k is not None and args.k != spec.K:
        raise ValueError(f"--k {args.k} does not match the profile's K={spec.K}")
    return spec


def _decoder_from_args(args) -> DecoderSetup:
    policy = NodePolicy(max_len=args.max_node_len) if args.max_node_len else None
    return DecoderSetup(
        kind="reference" if args.engine == "reference" else args.decoder,
        list_size=args.list_size,
        z=args.z,
        policy=policy,
        crc_aided=getattr(args, "crc", None) is not None,
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# `jobs` never appears in output headers: results are execution-order
# invariant, so the artifact must be byte-identical for any parallelism.
def _header_lines(args, skip=("out", "command", "infile", "jobs")) -> list[str]:
    resolved = {
        k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None
    }
    pairs = " ".join(f"{k}={v}" for k, v in resolved.items())
    return [f"# {version_string()}", f"# config: {pairs}"]


# --------------------------------------------------------------------------
# subcommands


def _cmd_encode(args) -> int:
    spec = _spec_from_args(args)
    if args.infile:
        text = Path(args.infile).read_text()
    elif args.data is not None:
        text = args.data
    else:
        raise ValueError("encode needs --data or --in")
    d = _parse_databits(text, spec.payload_len)
    c = pac_encode(d, spec)
    _emit("".join(str(b) for b in c) + "\n", args.out)
    return 0


def _read_llr_file(path: str, N: int) -> np.ndarray:
    values = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not a decimal LLR: {raw!r}") from None
    if len(values) != N:
        raise ValueError(f"--llr file holds {len(values)} values, the code needs {N}")
    return np.asarray(values, dtype=np.float64)


def _cmd_decode(args) -> int:
    spec = _spec_from_args(args)
    llr = _read_llr_file(args.llr, spec.N)
    result = _decoder_from_args(args).decode(llr, spec)
    _emit("".join(str(b) for b in result.data) + "\n", args.out)
    return 0


def _cmd_simulate(args) -> int:
    spec = _spec_from_args(args)
    decoder = _decoder_from_args(args)
    snrs = _parse_snr(args.snr)
    results = run_bler(
        spec,
        decoder,
        ChannelConfig(snr_db=snrs[0], seed=args.seed),
        snrs,
        max_trials=args.max_trials,
        min_errors=args.min_errors,
        jobs=args.jobs,
    )
    label = "reference" if decoder.kind == "reference" else args.decoder
    if args.format == "json":
        payload = {
            "version": version_string(),
            "config": {k: v for k, v in sorted(vars(args).items()) if k != "out"},
            "results": [vars(r) for r in results],
        }
        _emit(json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n", args.out)
        return 0
    lines = _header_lines(args)
    lines.append("snr_db,trials,block_errors,bler,ci_low,ci_high,decoder,L,Z,seed")
    for r in results:
        lines.append(
            f"{r.snr_db:.8g},{r.trials},{r.block_errors},{r.bler:.8g},"
            f"{r.ci_low:.8g},{r.ci_high:.8g},{label},{decoder.list_size},"
            f"{decoder.z},{args.seed}"
        )
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_latency(args) -> int:
    spec = _spec_from_args(args)
    policy = NodePolicy(max_len=args.max_node_len)
    report = latency_report(spec, policy, kappa=args.kappa)
    if args.format == "json":
        payload = {
            "version": version_string(),
            "code": {"N": spec.N, "K": spec.K, "m": spec.m},
            "config": {k: v for k, v in sorted(vars(args).items()) if k != "out"},
        }
        payload.update(report.as_dict())
        _emit(json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n", args.out)
        return 0
    lines = _header_lines(args)
    lines.append(
        f"# scl_cycles={report.scl_cycles} sscl_cycles={report.sscl_cycles} "
        f"reduction_pct={report.reduction_pct:.4g} kappa={report.kappa}"
    )
    lines.append("node_length,rate0,rep,rate1,spc")
    for length, row in report.node_stats.by_length().items():
        lines.append(f"{length},{row['rate0']},{row['rep']},{row['rate1']},{row['spc']}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_invpoly(args) -> int:
    g = parse_gen_poly(args.g)
    if g[0] != 1:
        raise ValueError("--g must start with g0 = 1")
    N = args.n
    if N < 2 or N & (N - 1):
        raise ValueError(f"--n must be a power of two >= 2, got {N}")
    alpha = inverse_gen_poly(g, N)
    lines = _header_lines(args)
    lines.append(f"# inverse generator polynomial table for g={''.join(str(b) for b in g)}")
    length = 2
    while length <= N:
        body = ",".join(str(b) for b in alpha[:length])
        lines.append(f"{length}\t({body})")
        length *= 2
    _emit("\n".join(lines) + "\n", args.out)
    return 0


_COMMANDS = {
    "encode": _cmd_encode,
    "decode": _cmd_decode,
    "simulate": _cmd_simulate,
    "latency": _cmd_latency,
    "invpoly": _cmd_invpoly,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        argv = _config_file_args(argv)
        args = _build_parser().parse_args(argv)
        return _COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
