"""Canonical, reproducible certificate serialization.

A certificate bundle is a plain dict assembled from engine reports.  The
body is everything except timing; body bytes are canonical JSON with sorted
keys and fixed separators, so identical runs serialize identically and
golden files diff cleanly.  Sanitization turns numpy scalars and arrays into
plain integers and nested lists, tuples into lists, and degree-tuple dict
keys into comma-joined strings; anything unrecognized collapses to its type
name rather than a memory-addressed repr.
"""

from __future__ import annotations

import json

import numpy as np

ENGINE = {"name": "homolab", "version": "0.1.0"}


def sanitize(obj):
    """Engine output to JSON-safe structures, deterministically."""
    if isinstance(obj, dict):
        out = {}
        for k, v in obj.items():
            if isinstance(k, tuple):
                k = ",".join(str(int(c)) for c in k)
            elif isinstance(k, (np.integer, int)) and not isinstance(k, bool):
                k = str(int(k))
            elif not isinstance(k, str):
                k = str(k)
            out[k] = sanitize(v)
        return out
    if isinstance(obj, (list, tuple)):
        return [sanitize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return sanitize(obj.tolist())
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if hasattr(obj, "as_dict"):
        return sanitize(obj.as_dict())
    return f"<{type(obj).__name__}>"


def bundle(command: str, workspace: str, reports, summary, seed=None,
           options=None) -> dict:
    """Assemble the certificate body for one executed command."""
    out = {"command": command, "workspace": workspace,
           "engine": dict(ENGINE), "options": sanitize(options or {}),
           "reports": sanitize(reports), "summary": sanitize(summary)}
    if seed is not None:
        out["seed"] = int(seed)
    return out


def body_bytes(cert: dict) -> bytes:
    """Canonical bytes of the bundle with timing excluded."""
    body = {k: v for k, v in cert.items() if k != "timing"}
    return json.dumps(body, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=True).encode("ascii")


def finish(cert: dict, elapsed: float) -> dict:
    """Attach timing; it stays outside the canonical body."""
    out = dict(cert)
    out["timing"] = {"seconds": round(float(elapsed), 6)}
    return out


def render_text(cert: dict) -> str:
    """Short human-readable view of a bundle."""
    lines = [f"homolab {ENGINE['version']}  command: {cert['command']}"
             f"  workspace: {cert.get('workspace') or '-'}"]
    summary = cert.get("summary", {})
    lines.append(f"status: {summary.get('status', '?')}")
    for key, val in sorted(summary.items()):
        if key != "status":
            lines.append(f"  {key}: {val}")
    for rep in cert.get("reports", []):
        item = rep.get("item", "report")
        status = rep.get("status", "")
        extra = rep.get("message") or rep.get("verdict") or rep.get("value")
        tail = f"  {extra}" if extra is not None else ""
        lines.append(f"  [{status or 'ok'}] {item}{tail}")
    timing = cert.get("timing")
    if timing:
        lines.append(f"elapsed: {timing['seconds']}s")
    return "\n".join(lines)
