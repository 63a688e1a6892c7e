"""Client side of the external-forecaster bridge.

External forecasters run as child processes speaking newline-delimited JSON
over stdio: the adapter announces itself with a ``hello``, then answers each
``forecast`` request with a ``forecast_result`` (or per-request ``error``)
carrying the same ``id``, strictly one response per request, in order.
``shutdown`` ends the session.  Numbers are serialized with Python's
shortest-round-trip float repr, which preserves every bit of the double.

Framing-level misbehavior -- unparseable lines, unknown message types, id
mismatches, EOF or a hung process -- raises :class:`ProtocolError`; a
well-formed ``error`` response raises :class:`ForecastRejected` instead so
the caller can score it as a per-series failure and move on.
"""

import json
import queue
import shlex
import subprocess
import threading
from dataclasses import dataclass
from typing import Sequence


class ProtocolError(RuntimeError):
    """The adapter broke the wire protocol; the session is unusable."""


class ForecastRejected(Exception):
    """The adapter answered this request with an error message."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class BridgeInfo:
    name: str
    version: str


class BridgeClient:
    """Owns one adapter process and drives the request/response cycle."""

    def __init__(self, command: str | Sequence[str], timeout: float = 60.0):
        argv = shlex.split(command) if isinstance(command, str) else list(command)
        self.timeout = timeout
        try:
            self._proc = subprocess.Popen(
                argv,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                text=True,
                bufsize=1,
            )
        except OSError as exc:
            raise ProtocolError(f"cannot start adapter {argv[0]!r}: {exc}") from exc
        self._lines: queue.Queue = queue.Queue()
        self._reader = threading.Thread(target=self._pump, daemon=True)
        self._reader.start()
        self.info = self._read_hello()

    def _pump(self):
        # Reader thread: lets the main thread time out instead of blocking
        # forever on a wedged adapter.
        for line in self._proc.stdout:
            self._lines.put(line)
        self._lines.put(None)

    def _next_message(self) -> dict:
        try:
            line = self._lines.get(timeout=self.timeout)
        except queue.Empty:
            raise ProtocolError(f"no response within {self.timeout} s")
        if line is None:
            raise ProtocolError("adapter closed its output stream")
        try:
            msg = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ProtocolError(f"unparseable message: {line[:200]!r}") from exc
        if not isinstance(msg, dict) or not isinstance(msg.get("type"), str):
            raise ProtocolError(f"message is not an object with a type: {line[:200]!r}")
        return msg

    def _read_hello(self) -> BridgeInfo:
        msg = self._next_message()
        if msg["type"] != "hello":
            raise ProtocolError(f"expected hello, got {msg['type']!r}")
        name, version = msg.get("name"), msg.get("version")
        if not isinstance(name, str) or not isinstance(version, str):
            raise ProtocolError("hello must carry string name and version")
        return BridgeInfo(name=name, version=version)

    def _send(self, payload: dict):
        if self._proc.stdin is None or self._proc.poll() is not None:
            raise ProtocolError("adapter process has exited")
        try:
            self._proc.stdin.write(json.dumps(payload) + "\n")
            self._proc.stdin.flush()
        except (BrokenPipeError, OSError) as exc:
            raise ProtocolError(f"cannot write to adapter: {exc}") from exc

    def forecast(
        self,
        request_id: str,
        context: Sequence[float],
        horizon: int,
        sample_interval: float,
    ) -> list[float]:
        """One serial request; returns the forecast values verbatim."""
        self._send(
            {
                "type": "forecast",
                "id": request_id,
                "context": [float(v) for v in context],
                "horizon": int(horizon),
                "sample_interval": float(sample_interval),
            }
        )
        msg = self._next_message()
        kind = msg["type"]
        if kind == "error":
            if msg.get("id") != request_id:
                raise ProtocolError(
                    f"error response for id {msg.get('id')!r}, expected {request_id!r}"
                )
            reason = msg.get("reason")
            raise ForecastRejected(reason if isinstance(reason, str) else "unspecified")
        if kind != "forecast_result":
            raise ProtocolError(f"unexpected message type {kind!r}")
        if msg.get("id") != request_id:
            raise ProtocolError(
                f"result for id {msg.get('id')!r}, expected {request_id!r}"
            )
        values = msg.get("values")
        if not isinstance(values, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in values
        ):
            raise ProtocolError("forecast_result values must be a list of numbers")
        return [float(v) for v in values]

    def shutdown(self):
        """Ask the adapter to exit; escalate to kill if it lingers."""
        if self._proc.poll() is None:
            try:
                self._send({"type": "shutdown"})
            except ProtocolError:
                pass
        try:
            self._proc.wait(timeout=5.0)
        except subprocess.TimeoutExpired:
            self._proc.kill()
            self._proc.wait()
        if self._proc.stdin:
            self._proc.stdin.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.shutdown()
