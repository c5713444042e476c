#!/usr/bin/env python3
"""
MCP Server for exact q-zeta computations.

Exposes identity verification, two-one series evaluation, composition
listing, q -> 1 limit probes and single nested-sum evaluation as stdio tools.
All arithmetic is exact; rationals travel as "num/den" strings.
"""

import asyncio
import json
import sys
import time
from contextlib import redirect_stdout

from mcp.server import InitializationOptions, Server
from mcp.server.stdio import stdio_server
from mcp.types import ServerCapabilities, TextContent, Tool

import config
from identities import verify
from mhs import SumFamily, SumSpec, evaluate_sum
from series import limit_probe, two_one_eval
from strings import enumerate_compositions, index_string, parse_two_one
from utils import parse_rational, parse_rational_list, rational_json

server = Server("qzeta")


def _deadline_expired(args: dict) -> bool:
    """Cooperative timeout check for worker-thread handlers."""
    deadline = args.get("__deadline_monotonic")
    if deadline is None:
        return False
    try:
        return time.monotonic() >= float(deadline)
    except (TypeError, ValueError):
        return False


def _timed_out(name: str) -> dict:
    return {"status": "error", "message": f"Tool '{name}' timed out before finishing"}


def _digits(args: dict, default: int) -> int:
    digits = int(args.get("digits", default))
    if digits < 1:
        raise ValueError(f"digits must be >= 1, got {digits}")
    return digits


# ---------------------------------------------------------------------------
# Tool handlers
# ---------------------------------------------------------------------------

def _tool_verify_identity(args: dict) -> dict:
    q_points = parse_rational_list(args["q"], "q") if args.get("q") else None
    grid = dict(args.get("grid") or {})
    report = verify(args["identity"], grid, q_points)
    if _deadline_expired(args):
        return _timed_out("verify_identity")
    return {
        "status": "success",
        "passed": report.passed,
        "summary": report.summary(),
        "witnesses": [witness.to_json() for witness in report.witnesses],
    }


def _tool_evaluate_two_one(args: dict) -> dict:
    s = parse_two_one(args["string"])
    q = parse_rational(args["q"], "q")
    eps = args.get("eps", config.DEFAULT_EPS)
    value = two_one_eval(s, q, eps)
    return {
        "status": "success",
        "string": "" if s is None else s.to_text(),
        "q": args["q"],
        "value": value.to_json(_digits(args, config.DEFAULT_DIGITS)),
    }


def _tool_list_compositions(args: dict) -> dict:
    s = index_string(args["s"], args.get("ending", "one"))
    rows = [comp.to_dict() for comp in enumerate_compositions(s)]
    return {"status": "success", "string": s.to_text(), "count": len(rows), "compositions": rows}


def _tool_limit_probe(args: dict) -> dict:
    s = parse_two_one(args["string"])
    q_points = parse_rational_list(args["q"], "q") if args.get("q") else list(config.LIMIT_Q_POINTS)
    digits = _digits(args, config.DEFAULT_DIGITS)
    rows = []
    for q in q_points:
        if _deadline_expired(args):
            return _timed_out("limit_probe")
        rows.extend(limit_probe(s, [q], args.get("eps")))
    return {
        "status": "success",
        "string": s.to_text(),
        "rows": [row.to_json(digits) for row in rows],
    }


def _tool_evaluate_sum(args: dict) -> dict:
    sum_spec = SumSpec(SumFamily(args["family"]), int(args["n"]), tuple(args.get("s") or ()), tuple(args.get("t") or ()))
    q = parse_rational(args["q"], "q") if args.get("q") is not None else None
    value = evaluate_sum(sum_spec, q)
    return {
        "status": "success",
        "family": sum_spec.family.value,
        "n": sum_spec.n,
        "value": rational_json(value, _digits(args, config.REPORT_DIGITS)),
    }


# ---------------------------------------------------------------------------
# JSON serializer
# ---------------------------------------------------------------------------

def _json_text(payload: dict) -> str:
    try:
        return json.dumps(payload, indent=2, default=str)
    except Exception as exc:
        fallback = {
            "status": "error",
            "message": "Failed to serialize MCP tool response",
            "details": str(exc),
        }
        return json.dumps(fallback, indent=2)


# ---------------------------------------------------------------------------
# MCP tool definitions
# ---------------------------------------------------------------------------

_Q_TEXT = {"type": "string", "description": "Exact rational 0 < q < 1, e.g. '1/2' or '0.7'"}


@server.list_tools()
async def list_tools():
    return [
        Tool(
            name="verify_identity",
            description=(
                "Check one finite identity (EQ11-EQ14, CERT15/16/17/19, EQ20-EQ23, EQ26, EQ32, "
                "EQ33, EQ34) as exact rational equalities over a parameter grid. Returns counts "
                "and every failing grid point with both sides."
            ),
            inputSchema={
                "type": "object",
                "properties": {
                    "identity": {"type": "string", "description": "Identity id, e.g. 'EQ13'"},
                    "grid": {
                        "type": "object",
                        "description": "Bounds such as {'n_max': 8, 'a_max': 2}; defaults per identity",
                    },
                    "q": {"type": "string", "description": "Comma-separated q points, e.g. '1/2,2/3'"},
                },
                "required": ["identity"],
            },
        ),
        Tool(
            name="evaluate_two_one",
            description=(
                "Evaluate zeta*_q of a two-one string such as '2,2,1,2,1' through its composition "
                "strings. Returns the exact partial sum, a decimal rendering and a proven tail bound."
            ),
            inputSchema={
                "type": "object",
                "properties": {
                    "string": {"type": "string", "description": "Comma-separated 1s and 2s; '' is empty"},
                    "q": _Q_TEXT,
                    "eps": {"type": "string", "description": "Error budget, default 1e-30"},
                    "digits": {"type": "integer", "default": config.DEFAULT_DIGITS},
                },
                "required": ["string", "q"],
            },
        ),
        Tool(
            name="list_compositions",
            description="List the comma/plus composition strings (p, p~) of a two-one string in mask order.",
            inputSchema={
                "type": "object",
                "properties": {
                    "s": {"type": "array", "items": {"type": "integer"}, "description": "Run exponents"},
                    "ending": {"type": "string", "enum": ["one", "two"], "default": "one"},
                },
                "required": ["s"],
            },
        ),
        Tool(
            name="limit_probe",
            description=(
                "Evaluate a two-one string at q points approaching 1 and report the distance to its "
                "classical single-zeta value (only {2}^a,1 with a >= 1 and {2}^c are supported)."
            ),
            inputSchema={
                "type": "object",
                "properties": {
                    "string": {"type": "string"},
                    "q": {"type": "string", "description": "Comma-separated q points, default 9/10,99/100,999/1000"},
                    "eps": {"type": "string", "description": "Error budget, default 1e-12"},
                    "digits": {"type": "integer", "default": config.DEFAULT_DIGITS},
                },
                "required": ["string"],
            },
        ),
        Tool(
            name="evaluate_sum",
            description=(
                "Exact value of one finite nested sum: HStar, ScriptH, HatH, BarH (need q) or "
                "HStarClassical, HatHClassical, BarHClassical."
            ),
            inputSchema={
                "type": "object",
                "properties": {
                    "family": {"type": "string", "enum": [family.value for family in SumFamily]},
                    "n": {"type": "integer"},
                    "s": {"type": "array", "items": {"type": "integer"}},
                    "t": {"type": "array", "items": {"type": "integer"}},
                    "q": _Q_TEXT,
                    "digits": {"type": "integer", "default": config.REPORT_DIGITS},
                },
                "required": ["family", "n", "s"],
            },
        ),
    ]


# ---------------------------------------------------------------------------
# MCP tool handler
# ---------------------------------------------------------------------------

_TOOL_DISPATCH = {
    "verify_identity": _tool_verify_identity,
    "evaluate_two_one": _tool_evaluate_two_one,
    "list_compositions": _tool_list_compositions,
    "limit_probe": _tool_limit_probe,
    "evaluate_sum": _tool_evaluate_sum,
}

_TOOL_TIMEOUT = {
    "verify_identity": 300,
    "evaluate_two_one": 120,
    "list_compositions": 10,
    "limit_probe": 300,
    "evaluate_sum": 60,
}


@server.call_tool()
async def call_tool(name: str, arguments: dict):
    handler = _TOOL_DISPATCH.get(name)
    if not handler:
        result = {"status": "error", "message": f"Unknown tool: {name}"}
        return [TextContent(type="text", text=_json_text(result))]

    timeout = _TOOL_TIMEOUT.get(name, 60)
    call_args = dict(arguments or {})
    call_args["__deadline_monotonic"] = time.monotonic() + timeout
    try:
        with redirect_stdout(sys.stderr):
            result = await asyncio.wait_for(
                asyncio.to_thread(handler, call_args),
                timeout=timeout,
            )
    except asyncio.TimeoutError:
        result = {"status": "error", "message": f"Tool '{name}' timed out after {timeout}s"}
    except (KeyError, ValueError, RuntimeError) as exc:
        result = {"status": "error", "message": f"{type(exc).__name__}: {exc}"}
    except Exception as exc:
        result = {"status": "error", "message": f"Unhandled error in MCP tool '{name}': {exc}"}

    return [TextContent(type="text", text=_json_text(result))]


# ---------------------------------------------------------------------------
# Server lifecycle
# ---------------------------------------------------------------------------

async def main():
    async with stdio_server() as (read_stream, write_stream):
        await server.run(
            read_stream,
            write_stream,
            InitializationOptions(
                server_name="qzeta",
                server_version="0.1.0",
                capabilities=ServerCapabilities(tools={}),
            ),
        )


if __name__ == "__main__":
    asyncio.run(main())
