"""Command line front end: benchmarks, scenario runs, and a guided demo."""

from __future__ import annotations

import argparse
import os
import random
import sys

from .bench import MODES, BenchConfig, render_csv, run_bench, write_csv
from .codec import point_bytes
from .group import count_ops
from .rsu import Rsu
from .sim import BASE_TIME, Scenario, run_scenario
from .system import setup_system
from .vehicle import enroll, signcrypt, validate_broadcast


class _Parser(argparse.ArgumentParser):
    # usage problems exit with status 1, runtime failures with 2
    def error(self, message: str) -> "argparse.NoReturn":
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    raw = os.environ.get("V2ISIGN_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="v2isign", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    bench = sub.add_parser("bench", help="time protocol phases and count group ops")
    bench.add_argument("--mode", required=True, choices=MODES)
    bench.add_argument("--n", type=int, nargs="+", default=[1, 10, 100],
                       help="batch sizes (vehicle counts in scenario mode)")
    bench.add_argument("--reps", type=int, default=5)
    bench.add_argument("--seed", type=int, default=None)
    bench.add_argument("--out", default=None, help="CSV path; stdout when omitted")
    bench.set_defaults(func=_cmd_bench)

    sim = sub.add_parser("sim", help="run a concurrent roadside scenario")
    sim.add_argument("--vehicles", type=int, default=10)
    sim.add_argument("--reports", type=int, default=3)
    sim.add_argument("--adversary", choices=("none", "tamper", "replay"), default="none")
    sim.add_argument("--rate", type=float, default=0.0)
    sim.add_argument("--seed", type=int, default=None)
    sim.add_argument("--max-batch", type=int, default=100)
    sim.add_argument("--window", type=float, default=0.05)
    sim.add_argument("--workers", type=int, default=None)
    sim.set_defaults(func=_cmd_sim)

    demo = sub.add_parser("demo", help="walk one message through the protocol")
    demo.add_argument("--seed", type=int, default=None)
    demo.set_defaults(func=_cmd_demo)

    return parser


def _seed_of(args: argparse.Namespace) -> int:
    return args.seed if args.seed is not None else _default_seed()


def _cmd_bench(args: argparse.Namespace) -> int:
    cfg = BenchConfig(
        mode=args.mode,
        n_values=tuple(args.n),
        repetitions=args.reps,
        seed=_seed_of(args),
    )
    rows = run_bench(cfg)
    if args.out:
        write_csv(rows, args.out)
        print(f"wrote {len(rows)} rows to {args.out}")
    else:
        sys.stdout.write(render_csv(rows))
    return 0


def _cmd_sim(args: argparse.Namespace) -> int:
    sc = Scenario(
        n_vehicles=args.vehicles,
        reports_per_vehicle=args.reports,
        batch_window=args.window,
        max_batch_size=args.max_batch,
        adversary=args.adversary,
        adversary_rate=args.rate,
        seed=_seed_of(args),
        n_workers=args.workers,
    )
    report = run_scenario(sc)
    for line in report.format_lines():
        print(line)
    return 0


def _hex(data: bytes, width: int = 12) -> str:
    text = data.hex()
    return text if len(text) <= 2 * width else text[: 2 * width] + "..."


def _cmd_demo(args: argparse.Namespace) -> int:
    seed = _seed_of(args)
    rng = random.Random(seed)
    print(f"demo seed: {seed}")

    params, kmc, tra = setup_system(rng)
    print(f"curve: {params.curve.name}")
    print(f"master public key:  {_hex(point_bytes(params.curve, params.p_pub))}")
    print(f"trace public key:   {_hex(point_bytes(params.curve, params.t_pub))}")

    rid = rng.randbytes(params.id_len)
    vkm = enroll(params, rid, tra, kmc, BASE_TIME, BASE_TIME + 86_400, rng)
    print(f"vehicle real id:    {rid.hex()}")
    print(f"pseudonym point:    {_hex(point_bytes(params.curve, vkm.pid.blind_point))}")
    print(f"pseudonym mask:     {_hex(vkm.pid.masked_id)}")

    rsu = Rsu.register(params, b"RSU-demo", kmc, rng)
    beacon = rsu.make_broadcast(BASE_TIME, rng)
    assert validate_broadcast(params, beacon, now=BASE_TIME)
    print(f"beacon nonce:       {beacon.nonce:#x}"[:40])

    payload = rng.randbytes(params.message_bytes)
    with count_ops() as sign_ops:
        msg = signcrypt(params, vkm, beacon, payload, BASE_TIME + 1, rng)
    wire = msg.to_wire(params)
    print(f"payload:            {_hex(payload)}")
    print(f"signcrypted wire:   {_hex(wire)} ({len(wire)} bytes)")
    print(f"signcrypt ops:      {sign_ops.scalar_mults} mults, "
          f"{sign_ops.hashes_h1} bind hashes, {sign_ops.hashes_h2} stream hashes")

    result = rsu.batch_verify(beacon.nonce, [msg], now=BASE_TIME + 1)
    print(f"batch verdict:      {'accept' if result.accepted else 'reject'}")
    print(f"verify ops:         {result.counters.scalar_mults} mults, "
          f"{result.counters.hashes_h1} bind hashes")
    print(f"decrypt ops:        {result.decrypt_counters.scalar_mults} mults, "
          f"{result.decrypt_counters.hashes_h2} stream hashes")
    assert result.plaintexts is not None and result.plaintexts[0] == payload
    print(f"recovered payload:  {_hex(result.plaintexts[0])}")

    traced = tra.trace(msg.pid)
    print(f"traced identity:    {traced.hex()}")
    print(f"trace matches:      {traced == rid}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse --help exits 0, usage errors 1
        code = exc.code
        return code if isinstance(code, int) else 1
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"v2isign: error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entry()
