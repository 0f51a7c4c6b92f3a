"""Command-line client for the polynomial engine and the identity harness.

Subcommands mirror the service endpoints and run against the same handlers
in process by default; ``--server URL`` switches to a running instance over
HTTP.  Reports accumulate in a JSON-lines file so ``report`` works across
invocations.  The exit code is 0 iff no recorded verdict is ``fails`` or
``conjecture-violated``.

    jackcluster compute jack_sym --label 4,2,0 --n 3 --alpha -2
    jackcluster compute macdonald_sym --label "[1,0,1]" --qt p^2,p^-1
    jackcluster verify PROP1 r=2 kappa=1,0,0 N=3
    jackcluster scan scanconfig.json
    jackcluster report --format text
    jackcluster serve --port 8321
"""

from __future__ import annotations

import argparse
import json
import sys
import time


def _parse_value(text):
    if text.startswith("["):
        from .service import parse_label
        return parse_label(text)
    if "," in text:
        return tuple(int(x) for x in text.split(",") if x != "")
    for caster in (int,):
        try:
            return caster(text)
        except ValueError:
            pass
    if text in ("true", "false"):
        return text == "true"
    return text


def _parse_case_params(pairs):
    params = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep:
            raise SystemExit(f"case parameter {pair!r} is not key=value")
        params[key] = _parse_value(value)
    return params


def _append_reports(path, reports):
    with open(path, "a", encoding="utf-8") as fh:
        for r in reports:
            fh.write(json.dumps(r) + "\n")


def _load_reports(path):
    out = []
    try:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    out.append(json.loads(line))
    except FileNotFoundError:
        pass
    return out


def _exit_code(reports):
    bad = any(r["verdict"] in ("fails", "conjecture-violated") for r in reports)
    return 1 if bad else 0


class _Remote:
    def __init__(self, base):
        import httpx
        self.base = base.rstrip("/")
        self.client = httpx.Client(timeout=None)

    def compute(self, payload):
        r = self.client.post(self.base + "/compute", json=payload)
        r.raise_for_status()
        return r.json()

    def verify(self, payload):
        r = self.client.post(self.base + "/verify", json=payload)
        r.raise_for_status()
        return r.json()

    def scan(self, payload):
        r = self.client.post(self.base + "/scan", json=payload)
        r.raise_for_status()
        return r.json()


def cmd_compute(args):
    t0 = time.perf_counter()
    if args.server:
        data = _Remote(args.server).compute({
            "family": args.family, "label": args.label, "n": args.n,
            "alpha": args.alpha, "qt": args.qt, "a": args.a})
        print(data["polynomial"].rstrip("\n"))
        print(f"# {data['parameters']}  ({data['timing_ms']:.0f} ms)",
              file=sys.stderr)
        return 0
    from .serialize import mpoly_record
    from .service import compute_poly
    poly, desc = compute_poly(args.family, args.label, args.n,
                              args.alpha, args.qt, args.a)
    print(mpoly_record(poly).rstrip("\n"))
    print(f"# {desc}  ({(time.perf_counter() - t0) * 1e3:.0f} ms)",
          file=sys.stderr)
    return 0


def cmd_verify(args):
    params = _parse_case_params(args.params)
    if args.server:
        data = _Remote(args.server).verify(
            {"identity": args.identity, "params": _jsonable(params)})
    else:
        from .service import run_verify
        data = run_verify(args.identity, params).to_dict()
    _append_reports(args.report_file, [data])
    from .service import report_text
    print(report_text([data]))
    return _exit_code([data])


def _jsonable(params):
    return {k: list(v) if isinstance(v, tuple) else v for k, v in params.items()}


def cmd_scan(args):
    with open(args.config, encoding="utf-8") as fh:
        config = json.load(fh)
    ids = config["identities"]
    ranges = config.get("ranges", {})
    budget = config.get("budget_seconds")
    halt = config.get("halt_on_violation", True)
    if args.server:
        data = _Remote(args.server).scan({
            "identities": ids, "ranges": ranges, "budget_seconds": budget,
            "halt_on_violation": halt})
        reports = data["reports"]
    else:
        from .service import run_scan

        def progress(rep):
            print(f"[{rep.verdict:>22}] {rep.case.identity} "
                  f"{rep.case.params} ({rep.timing_ms:.0f} ms)", flush=True)

        reps = run_scan(ids, ranges, budget_seconds=budget,
                        halt_on_violation=halt,
                        cache_dir=config.get("cache_dir", args.cache_dir),
                        progress=progress)
        reports = [r.to_dict() for r in reps]
    _append_reports(args.report_file, reports)
    bad = [r for r in reports if r["verdict"] in ("fails", "conjecture-violated")]
    print(f"scan finished: {len(reports)} case(s), {len(bad)} failing")
    for r in bad:
        print(f"  FAILING {r['identity']} {r['params']}: {r['detail']}")
        if r.get("witness_poly"):
            print(f"    witness: {r['witness_poly']}")
    return _exit_code(reports)


def cmd_report(args):
    reports = _load_reports(args.report_file)
    if args.format == "json":
        print(json.dumps({"reports": reports}, indent=2))
    else:
        from .service import report_text
        print(report_text(reports))
    return _exit_code(reports)


def cmd_serve(args):
    import uvicorn

    from .service import create_app
    uvicorn.run(create_app(cache_dir=args.cache_dir),
                host=args.host, port=args.port)
    return 0


def main(argv=None):
    ap = argparse.ArgumentParser(
        prog="jackcluster",
        description="exact Jack/Macdonald polynomial engine and "
                    "clustering-identity verifier")
    ap.add_argument("--server", default=None,
                    help="base URL of a running service (default: in-process)")
    ap.add_argument("--report-file", default="jackcluster-reports.jsonl")
    ap.add_argument("--cache-dir", default=None)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="build one polynomial")
    p.add_argument("family")
    p.add_argument("--label", required=True,
                   help="parts '4,2,0' or frequencies '[1,0,1,0,1]'")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--alpha", default=None, help="'generic' or a rational like -2/3")
    p.add_argument("--qt", default=None, help="'generic' or 'p^d,p^e'")
    p.add_argument("--a", default=None, help="Laguerre parameter")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify", help="run one identity case")
    p.add_argument("identity")
    p.add_argument("params", nargs="*", help="key=value case parameters")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="run a scan from a JSON config file")
    p.add_argument("config")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("report", help="print accumulated reports")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8321)
    p.set_defaults(func=cmd_serve)

    args = ap.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
