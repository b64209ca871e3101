"""Command-line front end.

Exit status of ``ep`` commands: 0 when the verdict matches the prediction
from the socle/character-module classification, 1 on an internal
inconsistency, 2 when the bounded search was inconclusive. Invalid input
exits with 3.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time

from . import __version__
from .cache import Cache, cached_aut_group, cached_left_ideals, cached_submodules
from .ep import (
    ALL_EXTENDABLE,
    COUNTEREXAMPLE,
    InconsistencyError,
    certify,
    classify,
    counterexample_search,
    ep_verify,
    predict,
)
from .errors import EPWBError, PreconditionError, ResourceBoundError, SpecError
from .module import build_module, is_pseudo_injective, rho_classes, socle, is_cyclic
from .ring import (
    build_ring,
    canonical_json,
    chain_levels,
    is_chain_ring,
    is_simple_artinian,
    jacobson_radical,
)
from .scenario import Scenario, build_group, load_json_arg, parse_group_spec

log = logging.getLogger("epwb")

EXIT_OK = 0
EXIT_INCONSISTENT = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# -- text rendering ------------------------------------------------------------


def render_text(report):
    lines = []

    def walk(obj, indent=0):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k in sorted(obj):
                v = obj[k]
                if isinstance(v, (dict, list)) and v and not _flat(v):
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {_fmt(v)}")
        elif isinstance(obj, list):
            for item in obj:
                if isinstance(item, (dict, list)) and not _flat(item):
                    lines.append(f"{pad}-")
                    walk(item, indent + 1)
                else:
                    lines.append(f"{pad}- {_fmt(item)}")

    walk(report)
    return "\n".join(lines) + "\n"


def _flat(v):
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x)) for x in v)


def _fmt(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    if v is None:
        return "-"
    return str(v)


def emit(report, args):
    text = render_text(report)
    if args.out:
        base, ext = os.path.splitext(args.out)
        txt_path = base + ".txt" if ext == ".json" else args.out + ".txt"
        try:
            os.makedirs(os.path.dirname(os.path.abspath(args.out)), exist_ok=True)
            with open(args.out, "w") as fh:
                fh.write(dumps(report))
            with open(txt_path, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise SpecError(f"cannot write report to {exc.filename}: {exc.strerror}") from None
    sys.stdout.write(dumps(report) if args.format == "json" else text)


# -- helpers -------------------------------------------------------------------


def _ring(args):
    spec = load_json_arg(args.ring, "ring spec")
    return spec, build_ring(spec)


def _module(args, ring):
    spec = load_json_arg(args.module, "module spec")
    return spec, build_module(ring, spec)


def _cache(args):
    return None if getattr(args, "no_cache", False) else Cache()


# -- commands --------------------------------------------------------------------


def cmd_ring_info(args):
    spec, R = _ring(args)
    key = canonical_json(R.spec)
    ideals = cached_left_ideals(R, key, _cache(args))
    report = {
        "ring": R.spec,
        "order": R.order,
        "zero": R.zero,
        "one": R.one,
        "left_ideal_count": len(ideals),
        "left_ideals": [list(I.elements) for I in ideals] if R.order <= 16 else None,
        "jacobson_radical": list(jacobson_radical(R).elements),
        "chain_ring": is_chain_ring(R),
        "simple_matrix_ring": is_simple_artinian(R),
    }
    if report["chain_ring"]:
        report["chain_levels"] = [{"ideal": list(I.elements), "representative": x}
                                  for I, x in chain_levels(R)]
    emit(report, args)
    return EXIT_OK


def cmd_module_info(args):
    rspec, R = _ring(args)
    mspec, A = _module(args, R)
    cache = _cache(args)
    key = canonical_json([R.spec, A.spec])
    G = cached_aut_group(A, key, cache)
    subs = cached_submodules(A, key, cache)
    S = socle(A)
    pi = is_pseudo_injective(A, G)
    report = {
        "ring": R.spec,
        "module": A.spec,
        "order": A.order,
        "generators": list(A.generators),
        "submodule_count": len(subs),
        "socle": list(S.elements),
        "socle_cyclic": is_cyclic(A, S),
        "rho_classes": [{"annihilator": list(I.elements), "members": list(m)}
                        for I, m in rho_classes(A)],
        "aut_order": G.order,
        "pseudo_injective": bool(pi),
    }
    if not pi:
        report["pseudo_injective_witness"] = {
            "submodule": list(pi.submodule.elements),
            "map": [list(p) for p in pi.map],
        }
    emit(report, args)
    return EXIT_OK


def cmd_classify(args):
    rspec, R = _ring(args)
    mspec, A = _module(args, R)
    G = cached_aut_group(A, canonical_json([R.spec, A.spec]), _cache(args))
    try:
        cls = classify(A, G)
    except InconsistencyError as exc:
        log.error("internal inconsistency: %s", exc)
        return EXIT_INCONSISTENT
    report = {"ring": R.spec, "module": A.spec, "classification": cls.to_json(),
              "predicted_swc_ep": cls.predicted_swc_ep}
    emit(report, args)
    return EXIT_OK


def _scenario_from_args(args, mode):
    if args.scenario:
        data = load_json_arg(args.scenario, "scenario")
        if not isinstance(data, dict):
            raise SpecError("scenario must be a JSON object")
        data = dict(data)
        if mode != "run":
            data["mode"] = mode
        if args.out is None and data.get("out"):
            args.out = data["out"]
        return Scenario.from_dict(data)
    if args.ring is None or args.module is None:
        raise SpecError("need --scenario or both --ring and --module")
    return Scenario(
        ring=load_json_arg(args.ring, "ring spec"),
        module=load_json_arg(args.module, "module spec"),
        group=parse_group_spec(args.group),
        weight=args.weight,
        n_min=args.n_min,
        n_max=args.n_max,
        gen_max=args.gen_max,
        mode="verify" if mode == "run" else mode,
    )


def cmd_ep(args):
    sc = _scenario_from_args(args, args.ep_mode)
    R, A = sc.build()
    cache = _cache(args)
    full = cached_aut_group(A, canonical_json([R.spec, A.spec]), cache)
    G = build_group(A, sc.group, full)
    try:
        cls = classify(A, full)
    except InconsistencyError as exc:
        log.error("internal inconsistency: %s", exc)
        return EXIT_INCONSISTENT
    full_group = G.order == full.order
    prediction = predict(cls, sc.weight, full_group)
    report = {
        "scenario": sc.canonical(),
        "classification": cls.to_json(),
        "group_order": G.order,
        "prediction": prediction,
    }
    started = time.perf_counter()
    if sc.mode == "certify":
        status, body = _run_certify(A, sc, args.certificates == "full")
    else:
        status, body = _run_scan(A, G, sc, args.jobs, prediction)
    report.update(body)
    report["exit_status"] = status
    log.info("finished in %.2fs", time.perf_counter() - started)
    emit(report, args)
    return status


def _run_scan(A, G, sc, jobs, prediction):
    if sc.mode == "verify":
        rep = ep_verify(A, G, sc.weight, sc.n_max, sc.gen_max, jobs, n_min=sc.n_min)
    else:
        rep = counterexample_search(A, G, sc.weight, sc.n_min, sc.n_max, sc.gen_max, jobs)
    body = {"result": rep.to_json()}
    if rep.verdict == COUNTEREXAMPLE:
        body["witness_length"] = rep.witness.source.n
        if rep.validation is not None and not rep.validation["valid"]:
            body["reason"] = "witness failed independent validation"
            return EXIT_INCONSISTENT, body
        if prediction == "holds":
            body["reason"] = "counterexample contradicts predicted extension property"
            return EXIT_INCONSISTENT, body
        body["reason"] = "counterexample found" + (
            ", as predicted" if prediction == "fails" else "")
        return EXIT_OK, body
    if rep.verdict == ALL_EXTENDABLE and prediction == "holds":
        body["reason"] = "all isometries extend within bounds, as predicted"
        return EXIT_OK, body
    body["reason"] = ("bounds exhausted without a witness; inconclusive"
                      if rep.bound_error is None else f"bound hit: {rep.bound_error}")
    return EXIT_INCONCLUSIVE, body


def _run_certify(A, sc, full):
    res = certify(A, sc.n_max, sc.gen_max, n_min=sc.n_min)
    stats = res["statistics"]
    certs = []
    for f, cert, aw in res["records"]:
        entry = {"isometry": f.to_json(), "aw_preserved": aw, "complete": cert.complete,
                 "codeword_count": len(f.source)}
        entry.update(cert.to_json(None if full else set(f.source.generators)))
        certs.append(entry)
    body = {"certify": {"method": res["method"], "statistics": stats, "certificates": certs}}
    ok = stats["agree"] == stats["isometries"] == stats["complete"]
    body["reason"] = ("every certificate completes and agrees with aw preservation" if ok
                      else "certificate and aw preservation disagree")
    return (EXIT_OK if ok else EXIT_INCONSISTENT), body


def cmd_cache_clear(args):
    cache = Cache()
    cache.clear()
    sys.stdout.write(f"cleared {cache.directory}\n")
    return EXIT_OK


# -- parser ------------------------------------------------------------------------


def _common(p, module=True):
    p.add_argument("--ring", help="ring spec as JSON or a path to a JSON file")
    if module:
        p.add_argument("--module", help="module spec as JSON or a path to a JSON file")
    p.add_argument("--out", help="write the JSON report here (text rendering next to it)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--no-cache", action="store_true", help="do not read or write the cache")


def build_parser():
    parser = _Parser(prog="epwb", description="Extension-property workbench")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ring = sub.add_parser("ring").add_subparsers(dest="action", required=True,
                                                 parser_class=_Parser)
    p = ring.add_parser("info")
    _common(p, module=False)
    p.set_defaults(func=cmd_ring_info)

    module = sub.add_parser("module").add_subparsers(dest="action", required=True,
                                                     parser_class=_Parser)
    p = module.add_parser("info")
    _common(p)
    p.set_defaults(func=cmd_module_info)

    p = sub.add_parser("classify")
    _common(p)
    p.set_defaults(func=cmd_classify)

    ep = sub.add_parser("ep").add_subparsers(dest="ep_mode", required=True, parser_class=_Parser)
    for mode in ("verify", "search", "certify", "run"):
        p = ep.add_parser(mode)
        _common(p)
        p.add_argument("--scenario", help="scenario JSON file")
        p.add_argument("--group", default="full-aut",
                       help='"full-aut", "trivial" or a JSON list of image arrays')
        p.add_argument("--weight", choices=("hamming", "swc", "aw"),
                       default="hamming" if mode == "certify" else "swc")
        p.add_argument("--n-min", type=int, default=1)
        p.add_argument("--n-max", type=int, default=6 if mode == "search" else 3)
        p.add_argument("--gen-max", type=int, default=2)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--certificates", choices=("summary", "full"), default="summary",
                       help="certify: stages for generator codewords only, or for all")
        p.set_defaults(func=cmd_ep)

    cache = sub.add_parser("cache").add_subparsers(dest="action", required=True,
                                                   parser_class=_Parser)
    p = cache.add_parser("clear")
    p.set_defaults(func=cmd_cache_clear)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except InconsistencyError as exc:
        log.error("internal inconsistency: %s", exc)
        return EXIT_INCONSISTENT
    except ResourceBoundError as exc:
        log.error("%s", exc)
        return EXIT_INCONCLUSIVE
    except (SpecError, PreconditionError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE
    except EPWBError as exc:
        log.error("%s", exc)
        return EXIT_INCONSISTENT


if __name__ == "__main__":
    sys.exit(main())
