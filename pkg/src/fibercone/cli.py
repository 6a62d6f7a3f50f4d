"""Command-line front end.

Input is a small key/value file::

    field: Q
    vars: x, y
    I: x^5, x^4*y, x^3*y^3, x*y^4, y^5
    Q: indices 1, 5

``Q:`` takes either ``indices i, j`` (1-based positions in ``I``) or a list of
expressions.  Optional keys are ``mode: explicit|autocomplete``,
``cap: <power>`` or ``cap: power=<n>, socle=<m>``, and ``seed: <n>``.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .errors import FiberConeError, InputError, ParseError
from .field import field_from_spec
from .local import (DEFAULT_POWER_CAP, DEFAULT_SOCLE_CAP,
                    exact_polynomial_membership_gap, fiber_colength_rhs)
from .parse import parse_poly, split_top_level
from .pipeline import (build_presentation, find_reduction, kernel_oracle, verify_presentation)
from .poly import base_ring

SCHEMA = 1
KEYS = ("field", "vars", "I", "Q", "mode", "cap", "seed")


@dataclass
class JobSpec:
    field: str = "Q"
    vars: tuple = ()
    I: tuple = ()  # expression strings
    Q: tuple | None = None  # expression strings, or None when given by indices
    Q_indices: tuple | None = None  # 1-based
    mode: str = "explicit"
    power_cap: int = DEFAULT_POWER_CAP
    socle_cap: int = DEFAULT_SOCLE_CAP
    seed: int = 0


def _int(text: str, what: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ParseError(f"{what}: expected an integer, got {text.strip()!r}") from None


def parse_job(text: str) -> JobSpec:
    job = JobSpec()
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key, value = key.strip(), value.strip()
        if not sep or key not in KEYS:
            raise ParseError(f"line {lineno}: expected one of {', '.join(KEYS)} followed by ':'")
        if key in seen:
            raise ParseError(f"line {lineno}: duplicate key {key!r}")
        seen.add(key)
        if key == "field":
            job.field = value
        elif key == "vars":
            job.vars = tuple(v for v in value.replace(",", " ").split())
        elif key == "I":
            job.I = tuple(e.strip() for e in split_top_level(value, ","))
        elif key == "Q":
            if value.startswith("indices"):
                rest = value[len("indices"):]
                job.Q_indices = tuple(_int(k, "Q indices") for k in rest.split(",") if k.strip())
            else:
                job.Q = tuple(e.strip() for e in split_top_level(value, ","))
        elif key == "mode":
            if value not in ("explicit", "autocomplete"):
                raise ParseError(f"line {lineno}: mode must be explicit or autocomplete")
            job.mode = value
        elif key == "cap":
            for part in value.split(","):
                name, eq, num = part.partition("=")
                if not eq:
                    job.power_cap = _int(name, "cap")
                elif name.strip() == "power":
                    job.power_cap = _int(num, "cap power")
                elif name.strip() == "socle":
                    job.socle_cap = _int(num, "cap socle")
                else:
                    raise ParseError(f"line {lineno}: unknown cap {name.strip()!r}")
        elif key == "seed":
            job.seed = _int(value, "seed")
    if not job.vars:
        raise ParseError("missing 'vars:'")
    if not job.I:
        raise ParseError("missing 'I:'")
    return job


class Job:
    """A JobSpec resolved against its ring."""

    def __init__(self, spec: JobSpec):
        self.spec = spec
        self.field = field_from_spec(spec.field)
        self.ring = base_ring(list(spec.vars), self.field)
        self.I = [parse_poly(e, self.ring) for e in spec.I]

    def q_argument(self):
        spec = self.spec
        if spec.Q_indices is not None:
            if spec.mode != "explicit":
                raise InputError("Q given by indices needs mode: explicit")
            for k in spec.Q_indices:
                if not 1 <= k <= len(self.I):
                    raise InputError(f"Q index {k} out of range 1..{len(self.I)}")
            return [k - 1 for k in spec.Q_indices]
        if spec.Q is None:
            raise InputError("missing 'Q:'")
        return [parse_poly(e, self.ring) for e in spec.Q]

    def presentation(self):
        s = self.spec
        return build_presentation(self.I, self.q_argument(), s.mode, s.power_cap, s.socle_cap)


def _strs(polys) -> list[str]:
    return [str(f) for f in polys]


def _header(command: str, job: Job, pres=None) -> dict:
    out = {"schema": SCHEMA, "command": command, "field": job.field.name,
           "vars": list(job.spec.vars)}
    if pres is not None:
        out["generators"] = _strs(pres.gens)
        out["q_positions"] = [p + 1 for p in pres.qidx]
    return out


def cmd_analyze(job: Job, args) -> dict:
    pres = job.presentation()
    ladder = pres.ladder
    out = _header("analyze", job, pres)
    out.update(n=pres.n, d=pres.d, socle_bound=pres.ctx.s, r=ladder.r, u=list(ladder.u),
               rhs=fiber_colength_rhs(ladder))
    return out


def cmd_defining_ideal(job: Job, args) -> dict:
    pres = job.presentation()
    cand = pres.candidate
    out = _header("defining-ideal", job, pres)
    out["phi"] = [f"{x} -> {img}" for x, img in pres.phi_table()]
    out["r"] = cand.ladder.r
    out["min_gens"] = {str(i): [[k + 1 for k in L] for L in Ls]
                       for i, Ls in sorted(cand.selection.chosen.items())}
    out["relations"] = [z.provenance() for z in cand.relations]
    out["a_generators"] = _strs(cand.generators)
    return out


def cmd_oracle(job: Job, args) -> dict:
    pres = job.presentation()
    ker = kernel_oracle(pres)
    out = _header("oracle", job, pres)
    out["phi"] = [f"{x} -> {img}" for x, img in pres.phi_table()]
    out["kernel_generators"] = _strs(ker.gb().polys)
    return out


def cmd_verify(job: Job, args) -> dict:
    pres = job.presentation()
    rep = verify_presentation(pres, strict=True)
    out = _header("verify", job, pres)
    out.update(rep.to_dict())
    return out


def cmd_hilbert(job: Job, args) -> dict:
    pres = job.presentation()
    ladder = pres.ladder
    bound = args.degree_bound if args.degree_bound is not None else ladder.r + 2
    if bound < 0:
        raise InputError("--degree-bound must be >= 0")
    ker = kernel_oracle(pres)
    oracle = ker.hilbert_function(bound)
    local = ladder.fiber_dims(bound)
    out = _header("hilbert", job, pres)
    out.update(degree_bound=bound, oracle=oracle, local=local, agree=oracle == local)
    return out


def cmd_find_reduction(job: Job, args) -> dict:
    s = job.spec
    found = find_reduction(job.I, seed=s.seed, attempts=args.attempts,
                           power_cap=s.power_cap, socle_cap=s.socle_cap)
    pres = found.presentation
    out = _header("find-reduction", job, pres)
    out.update(seed=s.seed, attempt=found.attempt, q_generators=_strs(found.q_gens),
               coefficients=[list(row) for row in found.coefficients], r=pres.ladder.r)
    return out


def cmd_membership_gap(job: Job, args) -> dict:
    pres = job.presentation()
    i = args.power if args.power is not None else pres.ladder.r + 1
    if i < 1:
        raise InputError("--power must be >= 1")
    rep = exact_polynomial_membership_gap(pres.gens, pres.qidx, i, pres.ctx)
    out = _header("membership-gap", job, pres)
    out["power"] = i
    out["entries"] = [{"multiset": [k + 1 for k in L], "polynomial": p, "local": loc}
                      for L, p, loc in rep.entries]
    out["witnesses"] = [[k + 1 for k in L] for L in rep.witnesses]
    out["local_equality"] = all(loc for _, _, loc in rep.entries)
    out["polynomial_equality"] = all(p for _, p, _ in rep.entries)
    return out


COMMANDS = {
    "analyze": cmd_analyze,
    "defining-ideal": cmd_defining_ideal,
    "oracle": cmd_oracle,
    "verify": cmd_verify,
    "hilbert": cmd_hilbert,
    "find-reduction": cmd_find_reduction,
    "membership-gap": cmd_membership_gap,
}


def _text_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, list):
        return "[" + ", ".join(_text_value(x) for x in v) + "]"
    return str(v)


def format_text(report: dict) -> str:
    lines = []
    for key, value in report.items():
        if key == "schema":
            continue
        if isinstance(value, list) and key != "vars" and value and isinstance(value[0], (dict, str)):
            lines.append(f"{key}:")
            for item in value:
                if isinstance(item, dict):
                    lines.append("  - " + "; ".join(f"{k}={_text_value(v)}" for k, v in item.items()))
                else:
                    lines.append(f"  - {item}")
        elif isinstance(value, dict):
            lines.append(f"{key}:")
            for k, v in value.items():
                lines.append(f"  {k}: {_text_value(v)}")
        else:
            lines.append(f"{key}: {_text_value(value)}")
    return "\n".join(lines) + "\n"


def format_machine(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fibercone",
                                 description="Fiber-cone presentations of m-primary ideals.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("input", help="job file ('-' for stdin)")
    ap.add_argument("--field", help="override the field: Q or 'Fp <p>'")
    ap.add_argument("--cap-power", type=int, help=f"power cap (default {DEFAULT_POWER_CAP})")
    ap.add_argument("--cap-socle", type=int, help=f"socle cap (default {DEFAULT_SOCLE_CAP})")
    ap.add_argument("--seed", type=int, help="seed for find-reduction")
    ap.add_argument("--attempts", type=int, default=20, help="find-reduction attempts")
    ap.add_argument("--degree-bound", type=int, help="hilbert: last degree (default r+2)")
    ap.add_argument("--power", type=int, help="membership-gap: the power i (default r+1)")
    ap.add_argument("--format", choices=("text", "machine"), default="text")
    return ap


def run(command: str, spec: JobSpec, args) -> tuple[str, int]:
    """Execute one subcommand; returns (stdout text, exit code)."""
    report = COMMANDS[command](Job(spec), args)
    fmt = format_machine if args.format == "machine" else format_text
    return fmt(report), 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        spec = parse_job(text)
        if args.field is not None:
            spec.field = args.field
        if args.cap_power is not None:
            spec.power_cap = args.cap_power
        if args.cap_socle is not None:
            spec.socle_cap = args.cap_socle
        if args.seed is not None:
            spec.seed = args.seed
        out, code = run(args.command, spec, args)
    except FiberConeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
