"""Command-line front end: ``check``, ``certify``, ``sweep`` and ``genuineness``.

Exit codes: 0 contradiction certified (or admissible parameters found),
1 no contradiction, 2 usage error, 3 resource limit, 4 internal consistency
failure.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import asdict, dataclass
from typing import Optional

from . import __version__
from .criterion import (
    admissible_constructions,
    genuinely_ddim_check,
    genuinely_npartite_check,
)
from .errors import ConsistencyError, InvalidArgumentError, ResourceLimitError
from .ghz_core import AMP_BOUND, RESIDUAL_TOL, ConstructionParams
from .lhv_engine import LHV_BOUND, certify
from .report import ReportDocument

EXIT_OK, EXIT_NONE, EXIT_USAGE, EXIT_RESOURCE, EXIT_CONSISTENCY = 0, 1, 2, 3, 4

NO_CONSTRUCTION = "no contradiction via this construction"


@dataclass
class RunConfig:
    command: str
    parties: tuple  # (lo, hi); single values are (N, N)
    dim: tuple
    n2: Optional[int] = None
    divisor: Optional[int] = None
    tolerance: float = RESIDUAL_TOL
    lhv_bound: int = LHV_BOUND
    amp_bound: int = AMP_BOUND
    out: Optional[str] = None

    def validate(self) -> None:
        if self.command not in ("check", "certify", "sweep", "genuineness"):
            raise InvalidArgumentError(f"unknown command {self.command!r}")
        for name in ("parties", "dim"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise InvalidArgumentError(f"empty {name} range {lo}..{hi}")
        if self.command != "sweep" and (self.parties[0] != self.parties[1] or self.dim[0] != self.dim[1]):
            raise InvalidArgumentError(f"{self.command} takes a single --parties and --dim")
        if self.parties[0] < 3:
            raise InvalidArgumentError("need at least 3 parties")
        if self.dim[0] < 2:
            raise InvalidArgumentError("need local dimension >= 2")
        if self.n2 is not None and self.divisor is not None:
            raise InvalidArgumentError("--n2 and --divisor are mutually exclusive")
        if self.tolerance <= 0 or self.lhv_bound <= 0 or self.amp_bound <= 0:
            raise InvalidArgumentError("tolerance and bounds must be positive")

    @property
    def N(self) -> int:
        return self.parties[0]

    @property
    def D(self) -> int:
        return self.dim[0]

    def echo(self) -> dict:
        out = asdict(self)
        out["parties"] = list(self.parties)
        out["dim"] = list(self.dim)
        out.pop("out")
        return out


def resolve_params(config: RunConfig) -> Optional[ConstructionParams]:
    """Explicit ``--n2``/``--divisor`` wins; otherwise the criterion's choice (may be None)."""
    N, D = config.N, config.D
    if config.n2 is not None:
        if not 1 <= config.n2 <= N - 1:
            raise InvalidArgumentError(f"--n2 must lie in 1..{N - 1}")
        return ConstructionParams.from_n2(N, D, config.n2)
    if config.divisor is not None:
        g = config.divisor
        if g < 2 or D % g:
            raise InvalidArgumentError(f"--divisor {g} is not a nonunit divisor of D={D}")
        if g > N - 1:
            raise InvalidArgumentError(f"no multiple of g={g} fits in N2 <= {N - 1}")
        return ConstructionParams.from_n2(N, D, g, g=g)
    return admissible_constructions(N, D).chosen


def _genuineness_body(p: ConstructionParams, amp_bound: int) -> dict:
    npartite = genuinely_npartite_check(p, amp_bound)
    ddim = genuinely_ddim_check(p.D, 0, p.y_alpha)
    return {
        "npartite": npartite.to_dict(),
        "ddim": ddim.to_dict(),
        "genuine": npartite.genuine and ddim.positive,
    }


def run_check(config: RunConfig) -> tuple[ReportDocument, int]:
    crit = admissible_constructions(config.N, config.D)
    verdict = "admissible construction found" if crit.chosen else NO_CONSTRUCTION
    body = {"criterion": crit.to_dict(), "verdict": verdict}
    return ReportDocument("check", config.echo(), body), EXIT_OK if crit.chosen else EXIT_NONE


def run_certify(config: RunConfig) -> tuple[ReportDocument, int]:
    crit = admissible_constructions(config.N, config.D)
    p = resolve_params(config)
    body = {"criterion": crit.to_dict()}
    if p is None:
        body["verdict"] = NO_CONSTRUCTION
        body["certificate"] = None
        return ReportDocument("certify", config.echo(), body), EXIT_NONE
    cert = certify(p, config.tolerance, config.lhv_bound, config.amp_bound)
    body["certificate"] = cert.to_dict()
    body["genuineness"] = _genuineness_body(p, config.amp_bound)
    body["verdict"] = "contradiction" if cert.contradiction else "no contradiction"
    return ReportDocument("certify", config.echo(), body), EXIT_OK if cert.contradiction else EXIT_NONE


def sweep_cell(N: int, D: int, config: RunConfig) -> dict:
    crit = admissible_constructions(N, D)
    row = {"N": N, "D": D, "admissible_N2": [n2 for n2, _ in crit.admissible_N2]}
    if crit.chosen is None:
        row.update(chosen_N2=None, status="none", contradiction=False)
        return row
    row["chosen_N2"] = crit.chosen.N2
    try:
        cert = certify(crit.chosen, config.tolerance, config.lhv_bound, config.amp_bound)
    except ResourceLimitError as exc:
        row.update(status="resource-limit", contradiction=None, detail=str(exc))
        return row
    row.update(
        status="certified" if cert.lhv_search.status == "exhaustive" else "analytic-only",
        contradiction=cert.contradiction,
        max_residual=cert.quantum_max_residual,
    )
    return row


def run_sweep(config: RunConfig) -> tuple[ReportDocument, int]:
    rows = [
        sweep_cell(N, D, config)
        for N in range(config.parties[0], config.parties[1] + 1)
        for D in range(config.dim[0], config.dim[1] + 1)
    ]
    return ReportDocument("sweep", config.echo(), {"rows": rows}), EXIT_OK


def run_genuineness(config: RunConfig) -> tuple[ReportDocument, int]:
    p = resolve_params(config)
    if p is None:
        body = {"params": None, "genuineness": None, "verdict": NO_CONSTRUCTION}
        return ReportDocument("genuineness", config.echo(), body), EXIT_NONE
    g = _genuineness_body(p, config.amp_bound)
    body = {"params": p.to_dict(), "genuineness": g, "verdict": "genuine" if g["genuine"] else "not genuine"}
    return ReportDocument("genuineness", config.echo(), body), EXIT_OK if g["genuine"] else EXIT_NONE


RUNNERS = {
    "check": run_check,
    "certify": run_certify,
    "sweep": run_sweep,
    "genuineness": run_genuineness,
}


def parse_range(text: str) -> tuple[int, int]:
    """``"4"`` -> (4, 4); ``"3..5"`` -> (3, 5)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or A..B range, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ghzq", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, ranged=False):
        kind = parse_range if ranged else (lambda s: (int(s), int(s)))
        p.add_argument("--parties", type=kind, required=True, help="N" + (" or A..B" if ranged else ""))
        p.add_argument("--dim", type=kind, required=True, help="D" + (" or A..B" if ranged else ""))
        p.add_argument("--tolerance", type=float, default=RESIDUAL_TOL)
        p.add_argument("--lhv-bound", type=int, default=LHV_BOUND)
        p.add_argument("--amp-bound", type=int, default=AMP_BOUND)
        p.add_argument("--out", help="write the JSON report here instead of stdout")

    common(sub.add_parser("check", help="divisor criterion only"))
    for name, help_ in (("certify", "full certificate"), ("genuineness", "genuineness checks")):
        p = sub.add_parser(name, help=help_)
        common(p)
        choice = p.add_mutually_exclusive_group()
        choice.add_argument("--n2", type=int)
        choice.add_argument("--divisor", type=int)
    common(sub.add_parser("sweep", help="existence table over an (N, D) grid"), ranged=True)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        parties=args.parties,
        dim=args.dim,
        n2=getattr(args, "n2", None),
        divisor=getattr(args, "divisor", None),
        tolerance=args.tolerance,
        lhv_bound=args.lhv_bound,
        amp_bound=args.amp_bound,
        out=args.out,
    )


def execute(config: RunConfig) -> tuple[Optional[ReportDocument], int]:
    config.validate()
    t0 = time.perf_counter()
    doc, code = RUNNERS[config.command](config)
    doc.timing = {"elapsed_seconds": time.perf_counter() - t0}
    return doc, code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    config = config_from_args(args)
    try:
        doc, code = execute(config)
    except InvalidArgumentError as exc:
        print(f"ghzq: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"ghzq: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ConsistencyError as exc:
        print(f"ghzq: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY

    if config.out:
        doc.write(config.out)
    else:
        sys.stdout.write(doc.to_json())
    return code


if __name__ == "__main__":
    sys.exit(main())
