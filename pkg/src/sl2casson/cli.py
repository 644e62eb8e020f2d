"""Command-line front end: ``sl2casson <command> ...``.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 verification
failure, 4 size cap exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .algebra import DegenerateResultantError
from .seifert import DomainError, SeifertTuple, SumPiece, lambda_connected_sum, lambda_seifert
from .twist import (
    IndeterminateError,
    InternalConsistencyError,
    SizeCapError,
    Slope,
    TorusKnot,
    TwistKnot,
    cs_norm,
    is_admissible,
    lambda_prime,
    lambda_torus_surgery,
    lambda_twist_surgery,
    norm_degree_oracle,
)
from .verify import verify_suites

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_VERIFY, EXIT_SIZE = 0, 1, 2, 3, 4
MAX_TABLE_CELLS = 10_000
CSV_COLUMNS = ("family", "xi_or_tuple", "slope", "lambda_num", "lambda_den", "admissible", "cs_norm")


class UsageError(Exception):
    pass


class VerificationError(Exception):
    pass


@dataclass
class OutputRecord:
    """One computed value with its inputs; ``value`` is exact (or None if undefined)."""

    invariant: str
    inputs: dict[str, Any]
    value: Fraction | None
    admissibility: dict[str, Any] | None = None
    provenance: list[str] = field(default_factory=list)
    extras: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        value = None if self.value is None else {"num": self.value.numerator, "den": self.value.denominator}
        return {
            "invariant": self.invariant,
            "inputs": self.inputs,
            "value": value,
            "admissibility": self.admissibility,
            "provenance": list(self.provenance),
            "extras": self.extras,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> OutputRecord:
        v = d.get("value")
        return cls(
            invariant=d["invariant"],
            inputs=dict(d["inputs"]),
            value=None if v is None else Fraction(v["num"], v["den"]),
            admissibility=d.get("admissibility"),
            provenance=list(d.get("provenance", [])),
            extras=dict(d.get("extras", {})),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> OutputRecord:
        return cls.from_dict(json.loads(text))

    def csv_row(self) -> dict[str, Any]:
        inp = self.inputs
        if "xi" in inp:
            family, key = "twist", inp["xi"]
        elif "tuple" in inp:
            family, key = "seifert", " ".join(map(str, inp["tuple"]))
        elif "torus" in inp:
            family, key = "torus", " ".join(map(str, inp["torus"]))
        else:
            family, key = self.invariant, ""
        adm = "" if self.admissibility is None else str(self.admissibility["admissible"]).lower()
        return {
            "family": family,
            "xi_or_tuple": key,
            "slope": inp.get("slope", ""),
            "lambda_num": "" if self.value is None else self.value.numerator,
            "lambda_den": "" if self.value is None else self.value.denominator,
            "admissible": adm,
            "cs_norm": self.extras.get("cs_norm", ""),
        }

    def text(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.inputs.items())
        value = "undefined" if self.value is None else str(self.value)
        line = f"{self.invariant}({args}) = {value}"
        if self.admissibility is not None:
            line += f"  [{self.admissibility['reason']}]"
        return line


def _admissibility_dict(k: TwistKnot, s: Slope) -> dict[str, Any]:
    rep = asdict(is_admissible(k, s))
    rep["boundary_slopes"] = list(rep["boundary_slopes"])
    return rep


def _twist_record(k: TwistKnot, s: Slope, strict: bool = True) -> OutputRecord:
    adm = _admissibility_dict(k, s)
    try:
        value = lambda_twist_surgery(k, s)
    except DomainError:
        if strict:
            raise
        value = None
    prov = ["trefoil-surgery-formula"] if k.xi == 1 else ["twist-surgery-formula", "cs-norm", "corrections"]
    return OutputRecord("lambda_SL2C", {"xi": k.xi, "slope": str(s)}, value, adm, prov,
                        {"cs_norm": cs_norm(k, s)})


# -- argument parsing -----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _slope(text: str) -> Slope:
    try:
        return Slope.parse(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _xi_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi if sep else lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    if a < 1 or b < a:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return range(a, b + 1)


def _slope_grid(text: str) -> list[Slope]:
    return [_slope(part) for part in text.split(",") if part.strip()]


def _piece(text: str) -> tuple:
    # validated later so that domain errors keep their own exit code
    try:
        if text.startswith("seifert:"):
            return ("seifert", tuple(int(v) for v in text.split(":", 1)[1].split(",")))
        fields = dict(kv.split("=", 1) for kv in text.split(","))
        return ("raw", Fraction(fields["lambda"]), int(fields.get("h1z2", 1)))
    except (KeyError, ValueError):
        raise argparse.ArgumentTypeError(f"expected lambda=L,h1z2=H or seifert:a1,a2,...; got {text!r}")


def _make_piece(spec: tuple) -> SumPiece:
    if spec[0] == "seifert":
        return SumPiece.from_seifert(spec[1])
    return SumPiece(spec[1], spec[2])


def _knot(text: str) -> tuple:
    kind, _, rest = text.partition(":")
    try:
        if kind == "torus":
            p, q = (int(v) for v in rest.split(","))
            return ("torus", p, q)
        if kind == "twist":
            return ("twist", int(rest))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected torus:P,Q or twist:XI; got {text!r}")


def _make_knot(spec: tuple):
    return TorusKnot(*spec[1:]) if spec[0] == "torus" else TwistKnot(*spec[1:])


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    group = fmt.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true", help="emit JSON (JSON lines for tables)")
    group.add_argument("--csv", action="store_true", help="emit CSV with a header row")

    parser = _Parser(prog="sl2casson", description="SL(2,C) Casson invariants of Seifert spheres and knot surgeries.")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("seifert", parents=[fmt], help="invariant of Sigma(a1, ..., an)")
    p.add_argument("a", type=int, nargs="+", help="pairwise coprime multiplicities")

    p = sub.add_parser("twist", parents=[fmt], help="invariant of p/q surgery on the twist knot K_xi")
    p.add_argument("--xi", type=int, required=True)
    p.add_argument("--slope", type=_slope, required=True, help="P/Q; write negative slopes as --slope=-P/Q")

    p = sub.add_parser("torus", parents=[fmt], help="invariant of 1/n surgery on the torus knot T(p,q)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("norm", parents=[fmt], help="Culler-Shalen norm of a slope of K_xi")
    p.add_argument("--xi", type=int, required=True)
    p.add_argument("--slope", type=_slope, required=True)
    p.add_argument("--oracle", action="store_true", help="recompute by counting points on the character curve")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("connected-sum", parents=[fmt], help="invariant of a connected sum")
    p.add_argument("--piece", type=_piece, action="append", required=True,
                   help="lambda=L,h1z2=H or seifert:a1,a2,...; repeat for each summand")

    p = sub.add_parser("lambda-prime", parents=[fmt], help="stabilized 1/n surgery difference of a knot")
    p.add_argument("knot", type=_knot, help="torus:P,Q or twist:XI")

    p = sub.add_parser("admissible", parents=[fmt], help="admissibility of a slope of K_xi")
    p.add_argument("--xi", type=int, required=True)
    p.add_argument("--slope", type=_slope, required=True)

    p = sub.add_parser("table", parents=[fmt], help="invariants over a grid of twist knots and slopes")
    p.add_argument("--family", choices=["twist"], default="twist")
    p.add_argument("--xi-range", type=_xi_range, required=True, help="A..B")
    p.add_argument("--slope-grid", type=_slope_grid, required=True, help="comma separated, e.g. 1/1,-1/1,1/2")

    p = sub.add_parser("verify", help="run the self-check suites")
    p.add_argument("--suite", choices=["all", "seifert", "twist", "norm", "cohomology"], default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quiet", action="store_true", help="print only failures and per-suite summaries")
    return parser


# -- commands -------------------------------------------------------------------------


def _records(args) -> list[OutputRecord]:
    cmd = args.command
    if cmd == "seifert":
        st = SeifertTuple(args.a)
        return [OutputRecord("lambda_SL2C", {"tuple": list(st)}, lambda_seifert(st), None, ["sigma3/4"])]
    if cmd == "twist":
        return [_twist_record(TwistKnot(args.xi), args.slope)]
    if cmd == "torus":
        value = lambda_torus_surgery(args.p, args.q, args.n)
        return [OutputRecord("lambda_SL2C", {"torus": [args.p, args.q], "n": args.n}, value, None,
                             ["torus-1/n-surgery", "sigma3/4"])]
    if cmd == "norm":
        k, s = TwistKnot(args.xi), args.slope
        closed = cs_norm(k, s)
        if not args.oracle:
            return [OutputRecord("cs_norm", {"xi": k.xi, "slope": str(s)}, Fraction(closed), None, ["cs-norm"])]
        counted = norm_degree_oracle(k, s, trials=args.trials, seed=args.seed)
        rec = OutputRecord("cs_norm", {"xi": k.xi, "slope": str(s), "trials": args.trials, "seed": args.seed},
                           Fraction(counted), None, ["degree-oracle"], {"cs_norm": closed})
        if counted != closed:
            raise VerificationError(f"oracle count {counted} differs from the closed form {closed}")
        return [rec]
    if cmd == "connected-sum":
        pieces = [_make_piece(sp) for sp in args.piece]
        inputs = {"pieces": [{"lambda": str(p.lam), "h1z2": p.h1z2} for p in pieces]}
        return [OutputRecord("lambda_SL2C", inputs, lambda_connected_sum(pieces), None, ["connected-sum"])]
    if cmd == "lambda-prime":
        knot = _make_knot(args.knot)
        return [OutputRecord("lambda_prime", {"knot": str(knot)}, lambda_prime(knot), None, ["stabilized-difference"])]
    if cmd == "admissible":
        k, s = TwistKnot(args.xi), args.slope
        adm = _admissibility_dict(k, s)
        return [OutputRecord("admissible", {"xi": k.xi, "slope": str(s)}, Fraction(int(adm["admissible"])), adm,
                             ["admissibility"])]
    if cmd == "table":
        cells = len(args.xi_range) * len(args.slope_grid)
        if cells > MAX_TABLE_CELLS:
            raise SizeCapError(f"{cells} cells exceeds the cap {MAX_TABLE_CELLS}")
        return [_twist_record(TwistKnot(xi), s, strict=False) for xi in args.xi_range for s in args.slope_grid]
    raise UsageError(f"unknown command {cmd!r}")


def _emit(records: Sequence[OutputRecord], args, out) -> None:
    if args.json:
        for rec in records:
            out.write(rec.to_json() + "\n")
    elif args.csv:
        writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for rec in records:
            writer.writerow(rec.csv_row())
    else:
        for rec in records:
            out.write(rec.text() + "\n")


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command == "verify":
            results = verify_suites(args.suite, seed=args.seed, stream=out, verbose=not args.quiet)
            return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY
        _emit(_records(args), args, out)
        return EXIT_OK
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SizeCapError as exc:
        err.write(f"size cap: {exc}\n")
        return EXIT_SIZE
    except DomainError as exc:
        err.write(f"domain error: {exc}\n")
        return EXIT_DOMAIN
    except (VerificationError, IndeterminateError, DegenerateResultantError, InternalConsistencyError) as exc:
        err.write(f"verification failed: {exc}\n")
        return EXIT_VERIFY


def main() -> None:
    sys.exit(run())


def read_records(text: str) -> list[OutputRecord]:
    """Parse JSON-lines output back into records."""
    return [OutputRecord.from_json(line) for line in io.StringIO(text) if line.strip()]


if __name__ == "__main__":
    main()
