"""Thin CLI client for the verification service.

The CLI only speaks JSON to the HTTP API; by default it mounts the FastAPI
app in-process (no network), while --server points it at a running
instance.  Verbs: verify, bethe, lattice, relations, suite, plus serve to
launch the service.  Log verbosity comes from the YANGINV_LOG environment
variable only.
"""

from __future__ import annotations

import argparse
import asyncio
import sys

import httpx

from .jobs import canonical_report_text, load_job, Report

VERBS = {
    "verify": "verify-invariant",
    "bethe": "bethe-reconstruct",
    "lattice": "lattice-z",
    "relations": "functional-relations",
    "suite": "full-suite",
}


def post_job(server: str | None, payload: dict) -> httpx.Response:
    """POST a job to the service: a remote URL, or the app mounted
    in-process over an ASGI transport (no network)."""
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            return client.post("/jobs/run", json=payload)

    from .service import app

    async def _run() -> httpx.Response:
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://yanginv.local", timeout=600.0
        ) as client:
            return await client.post("/jobs/run", json=payload)

    return asyncio.run(_run())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="yanginv",
        description="exact verification of gl(n) Yangian invariants",
    )
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb, kind in VERBS.items():
        p = sub.add_parser(verb, help=f"run a {kind} job")
        p.add_argument("--job", required=True, help="YAML job description")
        p.add_argument("--out", help="write the canonical report here")
        p.add_argument(
            "--samples", type=int, help="override the sample count"
        )
        p.add_argument(
            "--max-degree", type=int, help="override the Q-degree bound"
        )
        p.add_argument("--server", help="base URL of a running service")
    serve = sub.add_parser("serve", help="launch the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8765)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.verb == "serve":
        import uvicorn

        uvicorn.run("yanginv.service:app", host=args.host, port=args.port)
        return 0
    try:
        job = load_job(args.job)
    except (OSError, ValueError) as exc:
        print(f"error: cannot load job: {exc}", file=sys.stderr)
        return 2
    expected = VERBS[args.verb]
    if job.kind != expected:
        print(
            f"error: job kind {job.kind!r} does not match verb "
            f"{args.verb!r} (expected {expected!r})",
            file=sys.stderr,
        )
        return 2
    payload = job.model_dump(exclude_none=True)
    if args.samples is not None and "samples" in type(job).model_fields:
        payload["samples"] = args.samples
    if args.max_degree is not None and "max_degree" in type(job).model_fields:
        payload["max_degree"] = args.max_degree
    response = post_job(args.server, payload)
    if response.status_code != 200:
        print(
            f"error: service returned {response.status_code}: "
            f"{response.text}",
            file=sys.stderr,
        )
        return 2
    report = Report.model_validate(response.json())
    text = canonical_report_text(report, include_timing=False)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
