import sys
import textwrap

import pytest

# One line per acceptance criterion, shown in the terminal summary so the
# results are visible without -s.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

# Adapter scripts used by the bridge, harness and CLI tests.  Each is a tiny
# stdio program speaking the line-delimited JSON protocol (or deliberately
# breaking it); they are written to disk so both argv-list and shell-string
# commands can launch them.

NAIVE_ADAPTER = """
import json, sys

print(json.dumps({"type": "hello", "name": "pynaive", "version": "1.0"}), flush=True)
for line in sys.stdin:
    msg = json.loads(line)
    if msg["type"] == "shutdown":
        break
    if msg["type"] != "forecast":
        continue
    values = [msg["context"][-1]] * msg["horizon"]
    print(json.dumps({"type": "forecast_result", "id": msg["id"], "values": values}),
          flush=True)
"""

ECHO_ADAPTER = """
import json, sys

print(json.dumps({"type": "hello", "name": "echo", "version": "0"}), flush=True)
for line in sys.stdin:
    msg = json.loads(line)
    if msg["type"] == "shutdown":
        break
    print(json.dumps({"type": "forecast_result", "id": msg["id"],
                      "values": msg["context"]}), flush=True)
"""

WRONG_HORIZON_ADAPTER = """
import json, sys

print(json.dumps({"type": "hello", "name": "offbyone", "version": "0"}), flush=True)
for line in sys.stdin:
    msg = json.loads(line)
    if msg["type"] == "shutdown":
        break
    values = [0.0] * (msg["horizon"] + 1)
    print(json.dumps({"type": "forecast_result", "id": msg["id"], "values": values}),
          flush=True)
"""

REJECTING_ADAPTER = """
import json, sys

print(json.dumps({"type": "hello", "name": "refusenik", "version": "0"}), flush=True)
for line in sys.stdin:
    msg = json.loads(line)
    if msg["type"] == "shutdown":
        break
    print(json.dumps({"type": "error", "id": msg["id"], "reason": "cannot forecast"}),
          flush=True)
"""

MALFORMED_AFTER_FIRST_ADAPTER = """
import json, sys

print(json.dumps({"type": "hello", "name": "flaky", "version": "0"}), flush=True)
served = 0
for line in sys.stdin:
    msg = json.loads(line)
    if msg["type"] == "shutdown":
        break
    if served >= 1:
        print("this is not json", flush=True)
        continue
    served += 1
    values = [msg["context"][-1]] * msg["horizon"]
    print(json.dumps({"type": "forecast_result", "id": msg["id"], "values": values}),
          flush=True)
"""

WRONG_ID_ADAPTER = """
import json, sys

print(json.dumps({"type": "hello", "name": "confused", "version": "0"}), flush=True)
for line in sys.stdin:
    msg = json.loads(line)
    if msg["type"] == "shutdown":
        break
    print(json.dumps({"type": "forecast_result", "id": "someone-else",
                      "values": [0.0] * msg["horizon"]}), flush=True)
"""

INSTANT_EXIT_ADAPTER = """
import sys
sys.exit(0)
"""

SLOW_ADAPTER = """
import json, sys, time

print(json.dumps({"type": "hello", "name": "sleepy", "version": "0"}), flush=True)
for line in sys.stdin:
    msg = json.loads(line)
    if msg["type"] == "shutdown":
        break
    time.sleep(30)
"""


@pytest.fixture
def make_adapter(tmp_path):
    """Write an adapter script; returns (argv list, shell command string)."""

    def _make(body, name="adapter.py"):
        path = tmp_path / name
        path.write_text(textwrap.dedent(body).lstrip())
        argv = [sys.executable, str(path)]
        return argv, f"{sys.executable} {path}"

    return _make
