"""Command-line front door: workspaces in, certificates out.

Usage::

    homolab <command> [key=value ...] --workspace PATH [options]

Commands operate on objects named in a workspace file (or a shipped
fixture named by its bare name, see ``homolab.workspace``).  Arguments
after the command are ``key=value`` pairs; which keys a command needs is
listed in its handler below.  Options:

``--workspace PATH``   workspace file or shipped fixture name
``--bound N``          homological truncation bound (default from the
                       workspace, else 6)
``--box SPEC``         degree box for graded commands, e.g. ``-5..5,-5..5``
``--seed S``           seed for randomized witnesses (default 0)
``--jobs J``           accepted for interface stability; evaluation is
                       sequential and output ordering is canonical either way
``--format text|structured``   human-readable lines or the full
                       certificate as indented JSON

Exit codes: 0 every check passed as asserted, 1 a certified verdict
contradicts the assertion, 2 at least one check was inconclusive at the
configured bound or box, 3 the input could not be processed.  An
``expect=`` pair (``pass``, ``fail``, ``member``, ``non-member``, ``any``)
inverts or disarms the assertion for a command; certified results matching
the expectation exit 0.

The environment variable ``HOMOLAB_MAX_DIM`` caps the dimension of any
module the CLI will load (default 512); larger requests are input errors.
"""

import argparse
import json
import os
import sys
import time

from . import certificates
from .derived import (AdjointPair, check_tilting_adjunction, ext_into_profile,
                      tor_profile, verify_adjoint_equivalence)
from .fdalg import ScalarHomFunctor, TensorFunctor
from .graded import (cech_cohomology, cm_category_membership,
                     duality_crosscheck, koszul_depth, omega_pieces,
                     relative_cm_check)
from .tiltlib import (check_wakamatsu, gen_membership, res_membership,
                      run_bbh_suite, run_foxby_suite, run_matlis_suite,
                      run_sharp_suite, run_wakamatsu_duality_suite)
from .workspace import WorkspaceError, builtin_names, load_workspace

DEFAULT_MAX_DIM = 512
DEFAULT_BOUND = 6

_SEVERITY = {"pass": 0, "fail": 1, "inconclusive": 2, "error": 3}


class CommandError(ValueError):
    """Raised when a command string cannot be carried out as written."""


def _worst(statuses):
    out = "pass"
    for st in statuses:
        if _SEVERITY[st] > _SEVERITY[out]:
            out = st
    return out


def _max_dim() -> int:
    raw = os.environ.get("HOMOLAB_MAX_DIM", "")
    try:
        return int(raw) if raw else DEFAULT_MAX_DIM
    except ValueError:
        raise CommandError(f"HOMOLAB_MAX_DIM is not an integer: {raw!r}")


def _guard_dim(dim: int, label: str) -> None:
    cap = _max_dim()
    if dim > cap:
        raise CommandError(f"{label} has dimension {dim}, above the "
                           f"HOMOLAB_MAX_DIM cap {cap}")


# ---------------------------------------------------------------------------
# argument parsing


def parse_box(text):
    """``"-5..5,-5..5"`` into a list of (lo, hi) pairs."""
    out = []
    for part in text.split(","):
        if ".." not in part:
            raise CommandError(f"box interval {part!r} must look like lo..hi")
        lo, _, hi = part.partition("..")
        try:
            out.append((int(lo), int(hi)))
        except ValueError:
            raise CommandError(f"box interval {part!r} has non-integer ends")
    return out


def _parse_command(command: str):
    tokens = command.split()
    if not tokens:
        raise CommandError("empty command")
    kv = {}
    for tok in tokens[1:]:
        if "=" not in tok:
            raise CommandError(f"argument {tok!r} is not key=value")
        key, _, val = tok.partition("=")
        kv[key] = val
    return tokens[0], kv


def _req(kv, key):
    if key not in kv:
        raise CommandError(f"command needs {key}=<value>")
    return kv[key]


def _int_arg(kv, key):
    try:
        return int(kv[key])
    except ValueError:
        raise CommandError(f"{key}= wants an integer, got {kv[key]!r}")


def _bound(ws, kv, opts):
    if "bound" in kv:
        return _int_arg(kv, "bound")
    if opts.get("bound") is not None:
        return int(opts["bound"])
    return int(ws.defaults.get("bound", DEFAULT_BOUND))


def _box(ws, kv, opts):
    if "box" in kv:
        return parse_box(kv["box"])
    if opts.get("box") is not None:
        return [(int(lo), int(hi)) for lo, hi in opts["box"]]
    if "box" in ws.defaults:
        return [(int(lo), int(hi)) for lo, hi in ws.defaults["box"]]
    raise CommandError("command needs box=lo..hi,lo..hi (no workspace default)")


def _degrees(ws, kv):
    if "degrees" in kv:
        try:
            return [int(d) for d in kv["degrees"].split(",")]
        except ValueError:
            raise CommandError(f"degrees= wants integers, got {kv['degrees']!r}")
    return [int(d) for d in ws.defaults.get("degrees", [0])]


def _expect(kv):
    raw = kv.get("expect", "pass")
    mapped = {"pass": "pass", "fail": "fail", "member": "pass",
              "non-member": "fail", "any": "any"}.get(raw)
    if mapped is None:
        raise CommandError(f"expect= wants pass, fail, member, non-member "
                           f"or any, got {raw!r}")
    return mapped


def _status(verdict, certified, expect):
    """Map a certified yes/no (or None) plus an expectation to a status."""
    if verdict is None or not certified:
        return "inconclusive"
    got = "pass" if verdict else "fail"
    if expect == "any":
        return "pass"
    return "pass" if got == expect else "fail"


# ---------------------------------------------------------------------------
# workspace object resolution


def _module(ws, name):
    M = ws.module(name)
    _guard_dim(M.dim, f"module {name!r}")
    return M


def _bimodule(ws, name):
    T = ws.bimodule(name)
    _guard_dim(T.dim, f"bimodule {name!r}")
    return T


def _algebra(ws, name):
    A = ws.algebra(name)
    _guard_dim(A.dim, f"algebra {name!r}")
    return A


def _graded(ws, name):
    M = ws.graded_module(name)
    _guard_dim(len(M.gen_degrees), f"graded module {name!r}")
    return M


def _samples(ws, kv, key="samples"):
    text = _req(kv, key)
    names = ws.sample(text) if text in ws.samples else text.split(",")
    return [_module(ws, n) for n in names]


def _opt_samples(ws, kv, key):
    if key not in kv:
        return []
    return _samples(ws, kv, key)


# heavy witness objects stay inside the engine; certificates carry the
# verdict fields only
_HEAVY_KEYS = frozenset(["tor", "ext", "unit", "counit"])


def _light(obj):
    if isinstance(obj, dict):
        return {k: _light(v) for k, v in obj.items() if k not in _HEAVY_KEYS}
    if isinstance(obj, (list, tuple)):
        return [_light(v) for v in obj]
    return obj


def _item_report(item, payload):
    """Report dict for one item; the engine's own ``status`` key (member,
    ran, certified, ...) moves to ``outcome`` so the report-level pass,
    fail, inconclusive vocabulary stays unambiguous."""
    body = dict(_light(payload))
    if "status" in body:
        body["outcome"] = body.pop("status")
    return {"item": item, **body}


# ---------------------------------------------------------------------------
# command handlers, each (ws, kv, opts) -> (reports, status)


def _profile_report(item, kind, prof, bound):
    report = {"item": item, "kind": kind, "bound": bound,
              "dims": {str(i): int(prof.dims[i]) for i in sorted(prof.dims)},
              "tail": prof.tail}
    if prof.tail == "pattern" and prof.detail is not None:
        report["tail_detail"] = [int(v) for v in prof.detail]
    return report


def _profile_status(report, prof, kv, bound):
    if "i" in kv:
        i = _int_arg(kv, "i")
        if i < 0:
            raise CommandError("i= wants a nonnegative integer")
        dim = prof.dims[i] if i <= bound else prof.implied_dim(i)
        report["i"] = i
        if dim is None:
            report["dim"] = "unknown"
            return "inconclusive"
        report["dim"] = int(dim)
    return "pass"


def _cmd_ext(ws, kv, opts):
    M = _module(ws, _req(kv, "M"))
    N = _module(ws, _req(kv, "N"))
    bound = _bound(ws, kv, opts)
    prof = ext_into_profile(ScalarHomFunctor(N), M, bound, seed=opts["seed"])
    report = _profile_report(f"ext({M.name},{N.name})", "ext", prof, bound)
    return [report], _profile_status(report, prof, kv, bound)


def _cmd_tor(ws, kv, opts):
    T = _bimodule(ws, _req(kv, "T"))
    M = _module(ws, _req(kv, "M"))
    bound = _bound(ws, kv, opts)
    prof = tor_profile(TensorFunctor(T), M, bound, seed=opts["seed"])
    report = _profile_report(f"tor({T.name},{M.name})", "tor", prof, bound)
    return [report], _profile_status(report, prof, kv, bound)


def _membership_status(memb, expect):
    if memb["status"] == "inconclusive":
        return "inconclusive"
    return _status(memb["status"] == "member", memb["certified"], expect)


def _cmd_fix(ws, kv, opts):
    T = _bimodule(ws, _req(kv, "T"))
    M = _module(ws, _req(kv, "M"))
    ell = _int_arg(kv, "ell") if "ell" in kv else _degrees(ws, kv)[0]
    bound = _bound(ws, kv, opts)
    memb = AdjointPair(T).fix_membership(M, ell, bound, seed=opts["seed"])
    report = _item_report(f"fix[{ell}]({M.name})", memb)
    return [report], _membership_status(memb, _expect(kv))


def _cmd_cofix(ws, kv, opts):
    T = _bimodule(ws, _req(kv, "T"))
    B = _module(ws, _req(kv, "M"))
    ell = _int_arg(kv, "ell") if "ell" in kv else _degrees(ws, kv)[0]
    bound = _bound(ws, kv, opts)
    memb = AdjointPair(T).cofix_membership(B, ell, bound, seed=opts["seed"])
    report = _item_report(f"cofix[{ell}]({B.name})", memb)
    return [report], _membership_status(memb, _expect(kv))


def _cmd_tilting_check(ws, kv, opts):
    T = _bimodule(ws, _req(kv, "T"))
    bound = _bound(ws, kv, opts)
    rep = check_tilting_adjunction(T, bound, seed=opts["seed"])
    report = _item_report(f"tilting({T.name})", rep)
    return [report], _status(rep["passes"], rep["certified"], _expect(kv))


def _cmd_wakamatsu_check(ws, kv, opts):
    T = _bimodule(ws, _req(kv, "T"))
    bound = _bound(ws, kv, opts)
    rep = check_wakamatsu(T, bound, seed=opts["seed"])
    report = _item_report(f"wakamatsu({T.name})", rep)
    return [report], _status(rep["passes"], rep["certified"], _expect(kv))


def _equivalence_status(rep, expect):
    uncertified = any(not e["certified"]
                      for e in rep["samples"] + rep["cosamples"])
    if uncertified and rep["all_pass"]:
        return "inconclusive"
    return _status(rep["all_pass"], True, expect)


def _cmd_equivalence(ws, kv, opts):
    T = _bimodule(ws, _req(kv, "T"))
    ell = _int_arg(kv, "ell") if "ell" in kv else _degrees(ws, kv)[0]
    bound = _bound(ws, kv, opts)
    rep = verify_adjoint_equivalence(
        T, ell, _samples(ws, kv), bound,
        cosamples=_opt_samples(ws, kv, "cosamples"), seed=opts["seed"])
    report = _item_report(f"equivalence[{ell}]({T.name})", rep)
    return [report], _equivalence_status(rep, _expect(kv))


def _suite_status(rep, expect):
    if rep["status"] == "skipped":
        return _status(False, True, expect)
    return _status(rep["all_pass"], True, expect)


def _cmd_bbh(ws, kv, opts):
    T = _bimodule(ws, _req(kv, "T"))
    bound = _bound(ws, kv, opts)
    rep = run_bbh_suite(T, _degrees(ws, kv), _samples(ws, kv), bound,
                        cosamples=_opt_samples(ws, kv, "cosamples"),
                        seed=opts["seed"])
    report = _item_report(f"bbh({T.name})", rep)
    return [report], _suite_status(rep, _expect(kv))


def _cmd_wakamatsu_duality(ws, kv, opts):
    T = _bimodule(ws, _req(kv, "T"))
    bound = _bound(ws, kv, opts)
    rep = run_wakamatsu_duality_suite(
        T, _degrees(ws, kv), _samples(ws, kv), bound,
        cosamples=_opt_samples(ws, kv, "cosamples"), seed=opts["seed"])
    report = _item_report(f"wakamatsu-duality({T.name})", rep)
    return [report], _suite_status(rep, _expect(kv))


def _cmd_foxby(ws, kv, opts):
    C = _bimodule(ws, _req(kv, "C"))
    bound = _bound(ws, kv, opts)
    rep = run_foxby_suite(C, _degrees(ws, kv), _samples(ws, kv), bound,
                          cosamples=_opt_samples(ws, kv, "cosamples"),
                          seed=opts["seed"])
    report = _item_report(f"foxby({C.name})", rep)
    return [report], _suite_status(rep, _expect(kv))


def _gen_res_status(rep, expect):
    if not rep["certified"]:
        return "inconclusive"
    return _status(rep["member"], True, expect)


def _cmd_gen(ws, kv, opts):
    M = _module(ws, _req(kv, "M"))
    X = _module(ws, _req(kv, "X"))
    d = _int_arg(kv, "d") if "d" in kv else 0
    rep = gen_membership(M, X, d, seed=opts["seed"])
    report = _item_report(f"gen[{d}]({M.name} from {X.name})", rep)
    return [report], _gen_res_status(rep, _expect(kv))


def _cmd_res(ws, kv, opts):
    M = _module(ws, _req(kv, "M"))
    X = _module(ws, _req(kv, "X"))
    d = _int_arg(kv, "d") if "d" in kv else 0
    rep = res_membership(M, X, d, seed=opts["seed"])
    report = _item_report(f"res[{d}]({M.name} from {X.name})", rep)
    return [report], _gen_res_status(rep, _expect(kv))


def _cmd_matlis(ws, kv, opts):
    R = _algebra(ws, _req(kv, "R"))
    rep = run_matlis_suite(R, _samples(ws, kv), seed=opts["seed"])
    report = _item_report(f"matlis({R.name})", rep)
    return [report], _status(rep["all_pass"], True, _expect(kv))


def _cmd_sharp(ws, kv, opts):
    R = _algebra(ws, _req(kv, "R"))
    rep = run_sharp_suite(R, _samples(ws, kv), seed=opts["seed"])
    report = _item_report(f"sharp({R.name})", rep)
    return [report], _status(rep["all_pass"], True, _expect(kv))


def _cmd_cech(ws, kv, opts):
    M = _graded(ws, _req(kv, "M"))
    a = ws.ideal(_req(kv, "a"))
    table = cech_cohomology(M, a, _box(ws, kv, opts))
    report = _item_report(f"cech({M.name},{a.name})", table.as_dict())
    return [report], "pass" if table.conclusive else "inconclusive"


def _cmd_depth(ws, kv, opts):
    M = _graded(ws, _req(kv, "M"))
    a = ws.ideal(_req(kv, "a"))
    rep = koszul_depth(a, M)
    report = _item_report(f"depth({a.name},{M.name})", rep)
    if not rep["certified"]:
        return [report], "inconclusive"
    if "value" in kv:
        want = _int_arg(kv, "value")
        ok = rep["status"] == "certified" and rep["value"] == want
        report["expected_value"] = want
        return [report], _status(ok, True, _expect(kv))
    return [report], "pass"


def _cmd_relative_cm(ws, kv, opts):
    M = _graded(ws, _req(kv, "M"))
    a = ws.ideal(_req(kv, "a"))
    rep = relative_cm_check(M, a, _box(ws, kv, opts))
    report = _item_report(f"relative-cm({M.name},{a.name})", rep.as_dict())
    if rep.verdict == "inconclusive":
        return [report], "inconclusive"
    holds = rep.verdict != "not relative Cohen-Macaulay within the box"
    return [report], _status(holds, True, _expect(kv))


def _cmd_omega(ws, kv, opts):
    a = ws.ideal(_req(kv, "a"))
    rep = omega_pieces(a, _box(ws, kv, opts))
    report = _item_report(f"omega({a.name})", rep)
    return [report], "pass"


def _cmd_duality_crosscheck(ws, kv, opts):
    M = _graded(ws, _req(kv, "M"))
    a = ws.ideal(_req(kv, "a"))
    rep = duality_crosscheck(M, a, _box(ws, kv, opts))
    report = _item_report(f"duality-crosscheck({M.name},{a.name})", rep)
    if rep["status"] != "ran":
        return [report], "inconclusive"
    return [report], _status(rep["all_zero"], True, _expect(kv))


def _cmd_cm_membership(ws, kv, opts):
    M = _graded(ws, _req(kv, "M"))
    a = ws.ideal(_req(kv, "a"))
    t = _int_arg(kv, "t")
    rep = cm_category_membership(M, a, t, _box(ws, kv, opts))
    report = _item_report(f"cm-membership[{t}]({M.name},{a.name})", rep.as_dict())
    if rep.verdict == "inconclusive":
        return [report], "inconclusive"
    return [report], _status(rep.verdict == "member", True, _expect(kv))


# every shipped fixture exercised end to end; items are sorted by key so
# two runs with one seed give byte-identical certificate bodies
_SUITE_PLAN = (
    ("r2", "tor T=k M=k i=3 bound=6"),
    ("r2", "ext M=k N=k bound=6"),
    ("r2", "wakamatsu-check T=reg bound=4"),
    ("r2", "matlis R=R2 samples=basic"),
    ("r2", "sharp R=R2 samples=basic"),
    ("r2", "foxby C=D samples=basic bound=4"),
    ("r2", "gen X=reg M=k d=0"),
    ("r2", "res M=reg X=reg d=0"),
    ("r3", "tor T=k M=k i=6 bound=6"),
    ("r3", "matlis R=R3 samples=basic"),
    ("r3", "sharp R=R3 samples=basic"),
    ("r3", "wakamatsu-check T=reg bound=4"),
    ("r3", "wakamatsu-duality T=reg samples=basic degrees=0 bound=4"),
    ("a2", "tilting-check T=T bound=4"),
    ("a2", "equivalence T=T ell=0 samples=fix bound=4"),
    ("a2", "equivalence T=T ell=1 samples=fix bound=4"),
    ("a2", "bbh T=T samples=fix degrees=0,1 bound=4"),
    ("local3", "matlis R=L3 samples=basic"),
    ("local3", "sharp R=L3 samples=basic"),
    ("poly2", "cech M=R a=x"),
    ("poly2", "cech M=R a=xy"),
    ("poly2", "cech M=Rx a=x"),
    ("poly2", "depth a=xy M=R value=2"),
    ("poly2", "depth a=x M=R value=1"),
    ("poly2", "relative-cm M=R a=x"),
    ("poly2", "relative-cm M=R a=xy"),
    ("poly2", "relative-cm M=mixed a=x box=-3..3,-3..3"),
    ("poly2", "omega a=x box=-3..3,-3..3"),
    ("poly2", "omega a=xy box=-3..3,-3..3"),
    ("poly2", "duality-crosscheck M=Rx a=x box=-3..3,-3..3"),
    ("poly2", "duality-crosscheck M=mixed a=xy box=-3..3,-3..3"),
    ("poly2", "cm-membership M=R a=x t=1"),
    ("poly2", "cm-membership M=Rx a=x t=0"),
    ("poly2", "cm-membership M=R a=x t=0 expect=non-member"),
)


def _cmd_suite_all(ws, kv, opts):
    cache = {}
    reports = []
    statuses = []
    for ws_name, cmd in _SUITE_PLAN:
        if ws_name not in cache:
            cache[ws_name] = load_workspace(ws_name)
        name, sub_kv = _parse_command(cmd)
        sub_reports, st = _HANDLERS[name](cache[ws_name], sub_kv, opts)
        reports.append({"item": f"{ws_name}/{cmd}", "status": st,
                        "reports": sub_reports})
        statuses.append(st)
    reports.sort(key=lambda r: r["item"])
    return reports, _worst(statuses)


_HANDLERS = {
    "ext": _cmd_ext,
    "tor": _cmd_tor,
    "fix": _cmd_fix,
    "cofix": _cmd_cofix,
    "tilting-check": _cmd_tilting_check,
    "wakamatsu-check": _cmd_wakamatsu_check,
    "equivalence": _cmd_equivalence,
    "bbh": _cmd_bbh,
    "wakamatsu-duality": _cmd_wakamatsu_duality,
    "foxby": _cmd_foxby,
    "gen": _cmd_gen,
    "res": _cmd_res,
    "matlis": _cmd_matlis,
    "sharp": _cmd_sharp,
    "cech": _cmd_cech,
    "depth": _cmd_depth,
    "relative-cm": _cmd_relative_cm,
    "omega": _cmd_omega,
    "duality-crosscheck": _cmd_duality_crosscheck,
    "cm-membership": _cmd_cm_membership,
    "suite-all": _cmd_suite_all,
}


# ---------------------------------------------------------------------------
# execution


def execute(workspace, command: str, *, seed: int = 0, bound=None,
            box=None, jobs: int = 1) -> dict:
    """Run one command string against a workspace; returns the certificate.

    Mathematical verdicts never raise: they land in the report statuses.
    Unusable input (unknown command, missing names, malformed values,
    unsatisfied preconditions) yields a certificate with status ``error``.
    """
    start = time.perf_counter()
    if isinstance(box, str):
        box = parse_box(box)
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    opts = {"seed": int(seed), "bound": bound, "box": box, "jobs": jobs}
    ws_name = workspace.name if workspace is not None else "builtin-corpus"
    try:
        name, kv = _parse_command(command)
        handler = _HANDLERS.get(name)
        if handler is None:
            known = ", ".join(sorted(_HANDLERS))
            raise CommandError(f"unknown command {name!r}; commands: {known}")
        if workspace is None and name != "suite-all":
            raise CommandError("this command needs --workspace")
        reports, status = handler(workspace, kv, opts)
    except (CommandError, WorkspaceError, ValueError) as exc:
        reports = [{"item": "error", "status": "error", "message": str(exc)}]
        status = "error"
    for rep in reports:
        rep.setdefault("status", status)
    counts = {}
    for rep in reports:
        st = rep.get("status", status)
        counts[st] = counts.get(st, 0) + 1
    summary = {"status": status, "items": len(reports), "counts": counts}
    cert = certificates.bundle(command, ws_name, reports, summary,
                               seed=int(seed),
                               options={"bound": bound, "box": box,
                                        "jobs": jobs})
    return certificates.finish(cert, time.perf_counter() - start)


def exit_code(cert: dict) -> int:
    return _SEVERITY[cert["summary"]["status"]]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="homolab",
        description="exact homological checks over finite fields, with "
                    "machine-readable certificates")
    parser.add_argument("command", help="command name, e.g. tor, cech, "
                                        "suite-all")
    parser.add_argument("args", nargs="*", help="key=value arguments")
    parser.add_argument("--workspace", default=None,
                        help="workspace file, or one of: "
                             + ", ".join(builtin_names()))
    parser.add_argument("--bound", type=int, default=None)
    parser.add_argument("--box", default=None)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--format", choices=("text", "structured"),
                        default="text")
    ns = parser.parse_args(argv)
    if ns.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return _SEVERITY["error"]
    ws = None
    if ns.workspace is not None:
        try:
            ws = load_workspace(ns.workspace)
        except WorkspaceError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return _SEVERITY["error"]
    elif ns.command != "suite-all":
        print("error: this command needs --workspace", file=sys.stderr)
        return _SEVERITY["error"]
    try:
        box = parse_box(ns.box) if ns.box is not None else None
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _SEVERITY["error"]
    cert = execute(ws, " ".join([ns.command] + ns.args), seed=ns.seed,
                   bound=ns.bound, box=box, jobs=ns.jobs)
    if ns.format == "structured":
        print(json.dumps(certificates.sanitize(cert), indent=2,
                         sort_keys=True))
    else:
        print(certificates.render_text(cert))
    return exit_code(cert)


if __name__ == "__main__":
    sys.exit(main())
