"""Command-line interface.

Thin client over the service layer: each subcommand builds a request model,
runs it either in-process (default) or against a running service
(--server URL), and renders the response as JSON or CSV.

Exit codes: 0 success, 1 usage/input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from pydantic import ValidationError

from .service import handlers
from .service.schemas import (
    BenchRequest,
    BenchResponse,
    SampleRequest,
    SampleResponse,
    StatsRequest,
    StatsResponse,
    TransformRequest,
    TransformResponse,
    VerifyRequest,
    VerifyResponse,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2

DEFAULT_TOLERANCE = 1e-9


class CliError(Exception):
    pass


@dataclass
class RunConfig:
    """Validated knobs shared across subcommands."""

    subcommand: str
    n: int | None = None
    input_path: str | None = None
    seed: int = 0
    shots: int = 1
    output_format: str = "csv"
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if self.n is not None and self.n < 1:
            raise CliError("n must be >= 1")
        if self.shots < 1:
            raise CliError("shots must be >= 1")
        if not self.tolerance > 0:
            raise CliError("tolerance must be positive")
        if self.output_format not in ("json", "csv"):
            raise CliError(f"unknown output format {self.output_format!r}")


_ROUTES = {
    TransformRequest: ("/transform", TransformResponse),
    VerifyRequest: ("/verify", VerifyResponse),
    StatsRequest: ("/stats", StatsResponse),
    BenchRequest: ("/bench", BenchResponse),
    SampleRequest: ("/sample", SampleResponse),
}


def _dispatch(request, server: str | None):
    """Run a request locally or POST it to a remote service."""
    path, response_model = _ROUTES[type(request)]
    if server is None:
        local = {
            "/transform": handlers.transform,
            "/verify": handlers.verify,
            "/stats": handlers.stats,
            "/bench": handlers.bench,
            "/sample": handlers.sample_histogram,
        }[path]
        try:
            return local(request)
        except ValueError as exc:
            raise CliError(str(exc)) from exc
    import httpx

    try:
        resp = httpx.post(server.rstrip("/") + path, json=request.model_dump(mode="json"), timeout=600.0)
    except httpx.HTTPError as exc:
        raise CliError(f"request to {server} failed: {exc}") from exc
    if resp.status_code != 200:
        try:
            detail = resp.json().get("detail", resp.text)
        except ValueError:
            detail = resp.text
        raise CliError(f"server returned {resp.status_code}: {detail}")
    return response_model.model_validate(resp.json())


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load_vector_file(path: str) -> list[tuple[float, float]]:
    """Parse the input vector format: {"x": [[re, im], ...]} or [r, r, ...]."""
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}") from exc
    entries = doc.get("x") if isinstance(doc, dict) else doc
    if not isinstance(entries, list) or not entries:
        raise CliError(f"{path}: expected a nonempty vector under key 'x' or a top-level list")
    pairs: list[tuple[float, float]] = []
    for entry in entries:
        if isinstance(entry, (int, float)):
            pairs.append((float(entry), 0.0))
        elif isinstance(entry, list) and len(entry) == 2 and all(isinstance(v, (int, float)) for v in entry):
            pairs.append((float(entry[0]), float(entry[1])))
        else:
            raise CliError(f"{path}: entries must be numbers or [re, im] pairs, got {entry!r}")
    return pairs


def _resolve_cli_input(args) -> tuple[int | None, int | None, list[tuple[float, float]] | None]:
    x = _load_vector_file(args.input) if args.input else None
    basis = getattr(args, "basis", None)
    if x is not None and basis is not None:
        raise CliError("--input and --basis are mutually exclusive")
    return args.n, basis, x


def cmd_transform(args) -> int:
    config = RunConfig(
        subcommand="transform", n=args.n, input_path=args.input, tolerance=args.tolerance,
        output_format="json",
    )
    n, basis, x = _resolve_cli_input(args)
    response = _dispatch(TransformRequest(n=n, basis=basis, x=x), args.server)
    _emit(json.dumps(response.model_dump(), indent=2) + "\n", args.out)
    return EXIT_OK if response.max_abs_error <= config.tolerance else EXIT_VERIFICATION


def cmd_verify(args) -> int:
    config = RunConfig(
        subcommand="verify", seed=args.seed, tolerance=args.tolerance, output_format=args.format,
    )
    if not 1 <= args.n_min <= args.n_max:
        raise CliError(f"need 1 <= n-min <= n-max, got [{args.n_min}, {args.n_max}]")
    request = VerifyRequest(n_min=args.n_min, n_max=args.n_max, trials=args.trials, seed=config.seed)
    response = _dispatch(request, args.server)
    if config.output_format == "json":
        text = json.dumps(response.model_dump(), indent=2) + "\n"
    else:
        lines = ["n,m,M,alpha,trials,max_rel_error,mean_rel_error,max_mass_dev"]
        for r in response.rows:
            lines.append(
                f"{r.n},{r.m},{r.M},{r.alpha!r},{r.trials},"
                f"{r.max_rel_error!r},{r.mean_rel_error!r},{r.max_mass_dev!r}"
            )
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK if response.max_rel_error <= config.tolerance else EXIT_VERIFICATION


def cmd_stats(args) -> int:
    config = RunConfig(subcommand="stats", output_format=args.format)
    if args.fit and config.output_format != "json":
        raise CliError("--fit output is only available with --format json")
    if args.dump_circuit and len(args.n) != 1:
        raise CliError("--dump-circuit requires exactly one n")
    response = _dispatch(StatsRequest(sizes=args.n, fit=args.fit), args.server)
    if args.dump_circuit:
        from .circuits import circuit_to_json
        from .pipeline import build_plan, qba_circuit

        Path(args.dump_circuit).write_text(circuit_to_json(qba_circuit(build_plan(args.n[0])), indent=2))
    if config.output_format == "json":
        text = json.dumps(response.model_dump(), indent=2) + "\n"
    else:
        lines = ["n,m,M,diagonal_gates,qft_gates,swap_gates,total,macro_ops"]
        for r in response.rows:
            lines.append(
                f"{r.n},{r.m},{r.M},{r.diagonal_gates},{r.qft_gates},{r.swap_gates},{r.total},{r.macro_ops}"
            )
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    RunConfig(subcommand="bench", seed=args.seed)
    response = _dispatch(BenchRequest(sizes=args.sizes, repeats=args.repeats, seed=args.seed), args.server)
    lines = ["N,method,seconds"]
    for r in response.rows:
        lines.append(f"{r.N},{r.method},{r.seconds!r}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_sample(args) -> int:
    config = RunConfig(
        subcommand="sample", n=args.n, input_path=args.input, seed=args.seed, shots=args.shots,
    )
    n, basis, x = _resolve_cli_input(args)
    request = SampleRequest(n=n, basis=basis, x=x, shots=config.shots, seed=config.seed)
    response = _dispatch(request, args.server)
    lines = ["index,count,probability"]
    for r in response.rows:
        lines.append(f"{r.index},{r.count},{r.probability!r}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("qba.service.app:app", host=args.host, port=args.port)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; 2 is reserved for
    # verification failures here.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qba", description="Exact N-point DFT for arbitrary N on a simulated quantum register.")
    parser.add_argument("--server", default=None, help="base URL of a running service (default: run in-process)")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("transform", help="run one transform and compare against the oracle")
    p.add_argument("--n", type=int, default=None, help="transform length (required with --basis)")
    p.add_argument("--basis", type=int, default=None, help="basis-state index used as input")
    p.add_argument("--input", default=None, help="JSON vector file ({'x': [[re, im], ...]} or [r, ...])")
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE, help="max |y_k - reference_k| for exit 0")
    p.add_argument("--out", default=None, help="write output to a file instead of stdout")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("verify", help="sweep n and report errors vs the oracle")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="gate-count table per transform length")
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--fit", action="store_true", help="least-squares fit of total vs quadratic in m (json only)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--dump-circuit", default=None, help="also write the full circuit JSON (single n only)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bench", help="time the classical oracles over a size sweep")
    p.add_argument("--sizes", type=int, nargs="+", default=[8, 64, 256, 1024, 4096])
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("sample", help="measurement histogram of the logical register")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--basis", type=int, default=None)
    p.add_argument("--input", default=None)
    p.add_argument("--shots", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"error: invalid request: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
