"""Line-delimited JSON subprocess protocol for external black-box objectives.

Any program can serve as the objective: it prints one handshake line
describing the search space, then answers evaluation requests one line at a
time.  Requests go to its standard input, responses come from its standard
output, and its standard error is left alone for logging.

Wire format (UTF-8, one JSON object per line):

    handshake (child -> parent):
        {"dim": D, "lower": [...], "upper": [...], "anchors": [[...], ...]}
    request   (parent -> child):
        {"id": k, "x": [...]}
    response  (child -> parent):
        {"id": k, "loss": v}

Request ids are non-negative integers starting at 0, increasing by 1, with
strict request/response alternation.  The protocol adds no semantics: a run
against a subprocess objective is bit-identical to the same run against the
equivalent in-process objective.
"""

from __future__ import annotations

import json
import logging
import os
import select
import shlex
import subprocess
import time

import numpy as np

from .core import Problem

__all__ = ["HandshakeFailed", "ProtocolError", "EvaluatorDied", "ExternalEvaluator"]

logger = logging.getLogger(__name__)

DEFAULT_TIMEOUT = 30.0


class HandshakeFailed(Exception):
    """The child did not produce a valid handshake line in time."""


class ProtocolError(Exception):
    """The child violated the request/response contract."""


class EvaluatorDied(Exception):
    """The child exited or stopped responding mid-run."""


class ExternalEvaluator:
    """Handle to one evaluator subprocess (one child per optimizer run).

    Use as a context manager, or call :meth:`close` when done::

        with ExternalEvaluator("python my_evaluator.py") as ev:
            problem = ev.handshake()
            record = run_washh(problem, config)
    """

    def __init__(self, cmd, timeout: float = DEFAULT_TIMEOUT, name: str = "external"):
        if isinstance(cmd, str):
            cmd = shlex.split(cmd)
        self.cmd = list(cmd)
        self.timeout = timeout
        self.name = name
        self.requests = 0
        self._buf = b""
        self._proc = subprocess.Popen(
            self.cmd,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            stderr=None,
        )

    # -- low-level line I/O -------------------------------------------------

    def _read_line(self, timeout: float) -> str:
        fd = self._proc.stdout.fileno()
        deadline = time.monotonic() + timeout
        while b"\n" not in self._buf:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                raise TimeoutError(f"no response from {self.cmd[0]} within {timeout:.0f}s")
            ready, _, _ = select.select([fd], [], [], remaining)
            if not ready:
                continue
            chunk = os.read(fd, 65536)
            if chunk == b"":
                raise EvaluatorDied(f"evaluator {self.cmd[0]} closed its output (exit code {self._proc.poll()})")
            self._buf += chunk
        line, _, self._buf = self._buf.partition(b"\n")
        return line.decode("utf-8")

    def _write_line(self, payload: dict) -> None:
        try:
            self._proc.stdin.write((json.dumps(payload) + "\n").encode("utf-8"))
            self._proc.stdin.flush()
        except (BrokenPipeError, OSError) as exc:
            raise EvaluatorDied(f"evaluator {self.cmd[0]} is gone: {exc}") from exc

    # -- protocol -----------------------------------------------------------

    def handshake(self) -> Problem:
        """Read the space declaration and build the corresponding problem.

        Declared anchors lying outside the bounds are clipped with a logged
        warning.  The returned problem's objective delegates to
        :meth:`evaluate_remote`.
        """
        try:
            line = self._read_line(self.timeout)
            declared = json.loads(line)
        except (TimeoutError, EvaluatorDied, json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise HandshakeFailed(f"handshake with {self.cmd[0]} failed: {exc}") from exc
        if not isinstance(declared, dict) or not {"dim", "lower", "upper"} <= declared.keys():
            raise HandshakeFailed(f"handshake line must carry dim/lower/upper, got: {line.strip()!r}")
        try:
            dim = int(declared["dim"])
            lower = np.asarray(declared["lower"], dtype=float)
            upper = np.asarray(declared["upper"], dtype=float)
            raw_anchors = [np.asarray(a, dtype=float) for a in declared.get("anchors", [])]
        except (TypeError, ValueError) as exc:
            raise HandshakeFailed(f"malformed handshake fields: {exc}") from exc
        if lower.shape != (dim,) or upper.shape != (dim,):
            raise HandshakeFailed(f"bounds must have length dim={dim}")
        anchors = []
        for a in raw_anchors:
            if a.shape != (dim,):
                raise HandshakeFailed(f"anchor of length {a.size} does not match dim={dim}")
            clipped = np.minimum(upper, np.maximum(lower, a))
            if not np.array_equal(clipped, a):
                logger.warning("anchor %s outside declared bounds; clipped to %s", a.tolist(), clipped.tolist())
            anchors.append(clipped)
        return Problem(
            dim=dim,
            lower=lower,
            upper=upper,
            objective=self.evaluate_remote,
            anchors=anchors,
            name=self.name,
        )

    def evaluate_remote(self, x) -> float:
        """Send one candidate, wait for the echoed-id response, return its loss."""
        request_id = self.requests
        self.requests += 1
        self._write_line({"id": request_id, "x": [float(v) for v in x]})
        try:
            line = self._read_line(self.timeout)
        except TimeoutError as exc:
            raise EvaluatorDied(str(exc)) from exc
        try:
            response = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ProtocolError(f"unparseable response line: {line!r}") from exc
        if not isinstance(response, dict) or "id" not in response or "loss" not in response:
            raise ProtocolError(f"response must carry id and loss, got: {line.strip()!r}")
        if response["id"] != request_id:
            raise ProtocolError(f"response id {response['id']!r} does not echo request id {request_id}")
        try:
            # Accepts JSON numbers, the nonstandard NaN/Infinity tokens, and
            # string-encoded specials like "NaN"; non-finite values are mapped
            # to +inf by the budgeted evaluator.
            return float(response["loss"])
        except (TypeError, ValueError) as exc:
            raise ProtocolError(f"loss {response['loss']!r} is not a number") from exc

    # -- lifecycle ----------------------------------------------------------

    def close(self) -> None:
        if self._proc.poll() is None:
            try:
                self._proc.stdin.close()
            except OSError:
                pass
            try:
                self._proc.wait(timeout=5.0)
            except subprocess.TimeoutExpired:
                self._proc.kill()
                self._proc.wait()
        for stream in (self._proc.stdin, self._proc.stdout):
            if stream is not None and not stream.closed:
                stream.close()

    def __enter__(self) -> "ExternalEvaluator":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()
