"""Command dispatch and JSON report construction."""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass

from ..errors import EngineError, FGradeError, MethodDisagreement, PreconditionError
from ..filtergrade import (
    check_frs,
    depth_grade,
    fgrade_ext,
    fgrade_koszul,
    fgrade_prime_min,
    max_frs,
    module_dim,
)
from ..fmodule import check_bcm, check_fmodule
from ..groebner import Ideal, krull_dim
from ..homological import ext_module, koszul_homology
from ..modules import FPModule, annihilator, quotient_by_elements
from .parser import Command, ParseError, Session, parse_session

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PRECONDITION = 2
EXIT_DISAGREEMENT = 3

METHODS = ("ext", "koszul", "both", "prime-min")

# options accepted per verb
_OPTIONS = {
    "gb": (),
    "dim": (),
    "ann": (),
    "depth": (),
    "fgrade": ("method",),
    "check-frs": (),
    "max-frs": ("seed", "retries"),
    "ext": (),
    "koszul-homology": (),
    "check-fmodule": ("primes",),
    "check-bcm": (),
}


def render_number(v):
    """Integers pass through; infinities become the strings ``"infinity"``/``"-infinity"``."""
    if v == math.inf:
        return "infinity"
    if v == -math.inf or v is None:
        return "-infinity"
    return int(v)


def render_matrix(M) -> list:
    return [[str(e) for e in row] for row in M.rows()]


def render_ideal(I: Ideal) -> str:
    return str(I)


def render_module(N: FPModule) -> dict:
    return {
        "rank": N.rank,
        "presentation": render_matrix(N.presentation),
        "zero": N.is_zero(),
        "annihilator": render_ideal(annihilator(N)),
    }


@dataclass
class RunOptions:
    seed: int = 0
    timing: bool = True


class _Executor:
    def __init__(self, session: Session, options: RunOptions):
        self.s = session
        self.R = session.ring
        self.opts = options

    # -- argument resolution ----------------------------------------------------

    def _fail_arg(self, cmd, msg):
        raise PreconditionError(f"{cmd.verb}: {msg}")

    def ideal(self, cmd, arg) -> Ideal:
        if arg.kind == "list":
            return Ideal(self.R, arg.value)
        if arg.kind == "name":
            if arg.value == self.s.ring_name:
                return Ideal(self.R, [self.R.one])
            kind, obj = self.s.lookup(arg.value)
            if kind == "ideal":
                return obj
            if kind == "list":
                return Ideal(self.R, obj)
        self._fail_arg(cmd, f"{arg.text!r} is not an ideal")

    def polys(self, cmd, arg) -> list:
        if arg.kind == "list":
            return list(arg.value)
        if arg.kind == "name" and arg.value != self.s.ring_name:
            kind, obj = self.s.lookup(arg.value)
            if kind == "list":
                return list(obj)
            if kind == "ideal":
                return list(obj.gens)
        self._fail_arg(cmd, f"{arg.text!r} is not a polynomial list")

    def module(self, cmd, arg) -> FPModule:
        if arg.kind == "name":
            if arg.value == self.s.ring_name:
                return FPModule.free(self.R, 1)
            kind, obj = self.s.lookup(arg.value)
            if kind == "module":
                return obj
            if kind == "ideal":
                return FPModule.cyclic(self.R, obj.gens)
        self._fail_arg(cmd, f"{arg.text!r} is not a module")

    def integer(self, cmd, arg) -> int:
        if arg.kind != "int":
            self._fail_arg(cmd, f"{arg.text!r} is not an integer")
        return arg.value

    def _arity(self, cmd, n):
        if len(cmd.args) != n:
            self._fail_arg(cmd, f"expects {n} argument(s), got {len(cmd.args)}")

    # -- verbs -------------------------------------------------------------------

    def run(self, cmd: Command) -> dict:
        bad = set(cmd.options) - set(_OPTIONS[cmd.verb])
        if bad:
            self._fail_arg(cmd, f"unsupported option(s) {sorted(bad)}")
        handler = getattr(self, "do_" + cmd.verb.replace("-", "_"))
        return handler(cmd)

    def do_gb(self, cmd):
        self._arity(cmd, 1)
        I = self.ideal(cmd, cmd.args[0])
        return {"value": [str(g) for g in I.groebner()]}

    def do_dim(self, cmd):
        self._arity(cmd, 1)
        arg = cmd.args[0]
        if arg.kind == "name" and arg.value != self.s.ring_name and self.s.lookup(arg.value)[0] == "module":
            return {"value": render_number(module_dim(self.module(cmd, arg)))}
        return {"value": render_number(krull_dim(self.ideal(cmd, arg)))}

    def do_ann(self, cmd):
        self._arity(cmd, 1)
        I = annihilator(self.module(cmd, cmd.args[0]))
        return {"value": render_ideal(I), "generators": [str(g) for g in I.gens]}

    def do_depth(self, cmd):
        self._arity(cmd, 2)
        b = self.ideal(cmd, cmd.args[0])
        M = self.module(cmd, cmd.args[1])
        return {"value": render_number(depth_grade(b, M))}

    def do_fgrade(self, cmd):
        self._arity(cmd, 3)
        a, b = self.ideal(cmd, cmd.args[0]), self.ideal(cmd, cmd.args[1])
        M = self.module(cmd, cmd.args[2])
        method = cmd.options.get("method", "ext")
        if method not in METHODS:
            self._fail_arg(cmd, f"unknown method {method!r}; choose one of {', '.join(METHODS)}")
        if method == "prime-min":
            rep = fgrade_prime_min(a, b, M)
            out = self._report(rep)
            out["prime"] = render_ideal(rep.details["prime"]) if "prime" in rep.details else None
            return out
        if method == "koszul":
            return self._report(fgrade_koszul(a, b.gens, M))
        ext = fgrade_ext(a, b, M)
        out = self._report(ext)
        if method == "both":
            kos = fgrade_koszul(a, b.gens, M)
            agree = ext.value == kos.value
            out["method"] = "both"
            out["methods_agree"] = agree
            out["values"] = {"ext": render_number(ext.value), "koszul": render_number(kos.value)}
            if not agree:
                exc = MethodDisagreement(
                    f"ext gives {render_number(ext.value)} but koszul gives {render_number(kos.value)}"
                )
                exc.partial = out
                raise exc
        return out

    def _report(self, rep) -> dict:
        out = {"value": render_number(rep.value), "method": rep.method}
        if rep.witness_degree is not None:
            out["witness"] = {
                "degree": rep.witness_degree,
                "generator": str(rep.witness_generator) if rep.witness_generator is not None else None,
            }
        else:
            out["witness"] = None
        return out

    def do_check_frs(self, cmd):
        self._arity(cmd, 3)
        xs = self.polys(cmd, cmd.args[0])
        a = self.ideal(cmd, cmd.args[1])
        M = self.module(cmd, cmd.args[2])
        cert = check_frs(xs, a, M)
        steps = [
            {
                "index": i + 1,
                "element": str(x),
                "contained": q.contained,
                "witness": str(q.witness) if q.witness is not None else None,
            }
            for i, (x, q) in enumerate(zip(cert.sequence, cert.steps))
        ]
        fail = cert.failure_index + 1 if cert.failure_index is not None else None
        return {"valid": cert.valid, "steps": steps, "failure_index": fail}

    def do_max_frs(self, cmd):
        self._arity(cmd, 3)
        a, b = self.ideal(cmd, cmd.args[0]), self.ideal(cmd, cmd.args[1])
        M = self.module(cmd, cmd.args[2])
        seed = cmd.options.get("seed", self.opts.seed)
        retries = cmd.options.get("retries", 64)
        if not isinstance(seed, int) or not isinstance(retries, int) or retries < 0:
            self._fail_arg(cmd, "seed and retries must be nonnegative integers")
        cert = max_frs(a, b, M, seed=seed, retries=retries)
        return {
            "value": len(cert.sequence),
            "sequence": [str(x) for x in cert.sequence],
            "valid": cert.valid,
            "seed": seed,
            "retries": retries,
        }

    def do_ext(self, cmd):
        self._arity(cmd, 3)
        r = self.integer(cmd, cmd.args[0])
        b = self.ideal(cmd, cmd.args[1])
        M = self.module(cmd, cmd.args[2])
        if r < 0:
            self._fail_arg(cmd, "Ext degree must be nonnegative")
        return {"degree": r, "value": render_module(ext_module(r, b, M).module)}

    def do_koszul_homology(self, cmd):
        self._arity(cmd, 2)
        ys = self.polys(cmd, cmd.args[0])
        M = self.module(cmd, cmd.args[1])
        if not ys:
            self._fail_arg(cmd, "needs at least one element")
        return {"value": [dict(index=i, **render_module(H)) for i, H in enumerate(koszul_homology(ys, M))]}

    def do_check_fmodule(self, cmd):
        self._arity(cmd, 3)
        a, b = self.ideal(cmd, cmd.args[0]), self.ideal(cmd, cmd.args[1])
        M = self.module(cmd, cmd.args[2])
        primes = cmd.options.get("primes", "auto")
        if isinstance(primes, str) and primes not in ("auto", "all"):
            self._fail_arg(cmd, "primes must be auto, all or a list of ideals")
        rep = check_fmodule(a, b, M, primes)
        return {
            "verdict": rep.verdict,
            "provenance": rep.provenance,
            "rows": [r.as_dict() for r in rep.rows],
            "skipped": [{"prime": str(p), "reason": why} for p, why in rep.skipped],
            "necessary": rep.necessary,
            "note": rep.note,
        }

    def do_check_bcm(self, cmd):
        self._arity(cmd, 2)
        b = self.ideal(cmd, cmd.args[0])
        M = self.module(cmd, cmd.args[1])
        ok = check_bcm(b, M)
        return {
            "value": ok,
            "depth": render_number(depth_grade(b, M)),
            "dim_quotient": render_number(module_dim(quotient_by_elements(M, b.gens))),
            "dim_module": render_number(module_dim(M)),
        }


def _inputs(cmd: Command) -> dict:
    return {"args": [a.text for a in cmd.args], "options": {k: _opt_json(v) for k, v in cmd.options.items()}}


def _opt_json(v):
    if isinstance(v, list):
        return [str(x) for x in v]
    return v


def _error(exc, kind=None) -> dict:
    return {"type": kind or type(exc).__name__, "message": str(exc)}


def run(session: Session, commands: list, options: RunOptions | None = None):
    """Execute ``commands`` in order; returns ``(document, exit_code)``.

    Execution stops at the first failing command, whose entry carries a
    structured ``error`` object.
    """
    options = options or RunOptions()
    ex = _Executor(session, options)
    results = []
    code = EXIT_OK
    for cmd in commands:
        entry = {"verb": cmd.verb, "line": cmd.line, "inputs": _inputs(cmd)}
        t0 = time.perf_counter()
        try:
            entry.update(ex.run(cmd))
            entry["status"] = "ok"
        except MethodDisagreement as exc:
            entry.update(getattr(exc, "partial", {}))
            entry["status"] = "error"
            entry["error"] = _error(exc)
            code = EXIT_DISAGREEMENT
        except PreconditionError as exc:
            entry["status"] = "error"
            entry["error"] = _error(exc)
            code = EXIT_PRECONDITION
        except (EngineError, FGradeError, ValueError, ArithmeticError) as exc:
            entry["status"] = "error"
            entry["error"] = _error(exc)
            code = EXIT_ERROR
        if cmd.verb == "max-frs" and "seed" not in entry:
            entry["seed"] = cmd.options.get("seed", options.seed)
        if options.timing:
            entry["wall_time"] = round(time.perf_counter() - t0, 6)
        results.append(entry)
        if code != EXIT_OK:
            break
    doc = {
        "ring": session.ring.describe() if session.ring is not None else None,
        "seed": options.seed,
        "results": results,
        "exit_code": code,
    }
    return doc, code


def run_text(text: str, options: RunOptions | None = None):
    """Parse and run a script; parse errors give exit code 1 with an ``error`` object."""
    options = options or RunOptions()
    try:
        session, commands = parse_session(text)
    except ParseError as exc:
        return {"ring": None, "seed": options.seed, "results": [], "error": exc.as_dict(), "exit_code": 1}, 1
    return run(session, commands, options)


def dumps(doc, pretty_json=False) -> str:
    return json.dumps(doc, indent=2 if pretty_json else None, sort_keys=True, ensure_ascii=False)


def render_pretty(doc) -> str:
    """Human-readable rendering derived from the JSON document."""
    lines = []
    if doc.get("ring"):
        lines.append(f"ring {doc['ring']}")
    if "error" in doc:
        e = doc["error"]
        lines.append(f"parse error at line {e['line']}, column {e['column']}: {e['message']}")
    for r in doc["results"]:
        head = " ".join([r["verb"], *r["inputs"]["args"]])
        opts = " ".join(f"{k}={v}" for k, v in r["inputs"]["options"].items())
        if opts:
            head += " " + opts
        if r["status"] != "ok":
            lines.append(f"{head}: ERROR {r['error']['type']}: {r['error']['message']}")
            continue
        body = {k: v for k, v in r.items() if k not in ("verb", "line", "inputs", "status", "wall_time")}
        if set(body) >= {"value"} and not isinstance(body["value"], (list, dict)):
            summary = f"{body.pop('value')}"
            rest = ", ".join(f"{k}={json.dumps(v, sort_keys=True)}" for k, v in sorted(body.items()))
            lines.append(f"{head}: {summary}" + (f"  ({rest})" if rest else ""))
        else:
            lines.append(f"{head}:")
            for k, v in sorted(body.items()):
                lines.append(f"  {k}: {json.dumps(v, sort_keys=True)}")
    lines.append(f"exit code {doc['exit_code']}")
    return "\n".join(lines)
